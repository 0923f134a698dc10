use lexmorse_core::homology::{betti_mod2, reduced_betti};
use lexmorse_core::mobius::{mobius, mobius_from_morse};
use lexmorse_core::multiset::{
    build_multiset_poset, cancel_lower_of, check_puzzle_solution, classify_msi,
    hook_mobius_predicate, puzzle_search, render_bar_notation, CancelOptions, Lambda,
    MultisetLabeling, PuzzleOptions, ShiftDirection,
};
use lexmorse_core::shelling::{is_lex_shelling, shelling_matching, ShellingVerdict};
use lexmorse_core::{
    AcyclicMatching, BettiVector, Error, FacetOrder, LexAxiomReport, LexMorse, MorseVector, Poset,
};

use crate::error::CliError;
use crate::formats::{parse_facets, parse_labels, parse_poset};
use crate::report::{
    AnalyzeReport, CancelSection, CellReport, CriticalSection, FacetReport, HomologySection,
    MobiusSection, MsiReport, MultisetReport, NotUniqueReport, PairReport, PuzzleReport,
    ShellingReport, SolutionReport,
};

/// Largest `n` accepted by the multiset command.
pub const MAX_N: usize = 10;

/// Default cap on the number of faces of an order complex, empty face
/// included.
pub const DEFAULT_MAX_FACES: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_faces: u128,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_faces: DEFAULT_MAX_FACES,
        }
    }
}

impl Config {
    /// Reads `LEXMORSE_MAX_FACES`.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var("LEXMORSE_MAX_FACES") {
            Err(_) => Ok(Config::default()),
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_faces| Config { max_faces })
                .map_err(|_| {
                    CliError::Usage(format!(
                        "LEXMORSE_MAX_FACES must be a non-negative integer, got `{v}`"
                    ))
                }),
        }
    }

    fn check_faces(&self, faces: u128) -> Result<(), CliError> {
        if faces > self.max_faces {
            return Err(CliError::BoundExceeded {
                what: "order complex size".into(),
                value: faces,
                limit: self.max_faces,
            });
        }
        Ok(())
    }
}

/// A named input text.
#[derive(Clone, Copy, Debug)]
pub struct Source<'a> {
    pub name: &'a str,
    pub text: &'a str,
}

fn by_dim(get: impl Fn(isize) -> usize, top: isize) -> Vec<usize> {
    (-1..=top).map(get).collect()
}

fn morse(m: &MorseVector, top: isize) -> Vec<usize> {
    by_dim(|d| m.get(d), top)
}

fn betti(b: &BettiVector, top: isize) -> Vec<usize> {
    by_dim(|d| b.get(d), top)
}

fn cell_report(
    poset: &Poset,
    lex: &LexMorse,
    cell: usize,
    notation: bool,
) -> Result<CellReport, CliError> {
    let j = lex.fibre_of(cell);
    let facet = lex.order().facet(j);
    let mut on: Vec<(usize, usize)> = lex
        .complex()
        .face(cell)
        .vertices()
        .iter()
        .map(|&v| (facet.rank_of(v).expect("face lies on its facet"), v))
        .collect();
    on.sort();
    let notation = if notation {
        Some(render_bar_notation(poset, facet).map_err(|e| CliError::core("bar notation", e))?)
    } else {
        None
    };
    Ok(CellReport {
        facet: j + 1,
        dim: lex.complex().dim_of(cell),
        ranks: on.iter().map(|&(r, _)| r).collect(),
        elements: on.iter().map(|&(_, v)| poset.id(v).to_string()).collect(),
        notation,
    })
}

/// Checks every matching should pass; returns the failures.
fn matching_checks(matching: &AcyclicMatching, b: &BettiVector, out: &mut Vec<String>) {
    if !matching.is_acyclic() {
        out.push("matching has a directed cycle".into());
    }
    let m = matching.morse_vector();
    if m.euler() != b.euler() {
        out.push(format!(
            "euler characteristic from critical cells {} differs from homology {}",
            m.euler(),
            b.euler()
        ));
    }
    for d in -1..=matching.complex().dim() {
        if m.get(d) < b.get(d) {
            out.push(format!(
                "weak morse inequality fails in dimension {d}: {} critical cells, betti {}",
                m.get(d),
                b.get(d)
            ));
        }
    }
}

fn lex_checks(lex: &LexMorse, out: &mut Vec<String>) {
    for (j, sys) in lex.systems().iter().enumerate() {
        let expected = sys.critical_dimension();
        let found = lex.critical_face_of(j).map(|c| lex.complex().dim_of(c));
        let actual = lex
            .critical()
            .into_iter()
            .find(|&c| lex.fibre_of(c) == j)
            .map(|c| lex.complex().dim_of(c));
        if expected != found || found != actual {
            out.push(format!(
                "facet {}: critical dimension {expected:?} from the intervals, {actual:?} in the matching",
                j + 1
            ));
        }
    }
}

pub fn analyze(
    poset_src: Source,
    labels_src: Source,
    config: &Config,
) -> Result<AnalyzeReport, CliError> {
    let file = parse_poset(poset_src.text).map_err(|source| CliError::Parse {
        path: poset_src.name.to_string(),
        source,
    })?;
    let poset = file
        .build()
        .map_err(|e| CliError::build(poset_src.name, e))?;
    config.check_faces(poset.count_chains())?;
    let labeling =
        parse_labels(labels_src.text, &poset).map_err(|e| CliError::build(labels_src.name, e))?;
    let order = FacetOrder::from_labeling(&poset, &labeling)
        .map_err(|e| CliError::core("facet order", e))?;
    let axiom = order.validate_lex_axiom();
    let lex = LexMorse::build(order).map_err(|e| CliError::core("lexicographic matching", e))?;

    let top = lex.complex().dim();
    let b = reduced_betti(lex.complex());
    let b2 = betti_mod2(lex.complex());
    let m = lex.matching().morse_vector();
    let verdict = is_lex_shelling(lex.systems());
    let mobius_recursive = mobius(&poset);
    let mobius_morse = mobius_from_morse(&lex);

    let mut violations = Vec::new();
    if let LexAxiomReport::Violation { first, second, .. } = axiom {
        violations.push(format!(
            "lexicographic order axiom fails for facets {} and {}",
            first + 1,
            second + 1
        ));
    }
    matching_checks(lex.matching(), &b, &mut violations);
    lex_checks(&lex, &mut violations);
    if mobius_recursive != mobius_morse || mobius_recursive != b.euler() {
        violations.push(format!(
            "mobius values disagree: recursive {mobius_recursive}, from critical cells {mobius_morse}, euler {}",
            b.euler()
        ));
    }
    if verdict.is_shelling() && morse(&m, top) != betti(&b, top) {
        violations
            .push("order is a shelling but the morse vector differs from the betti numbers".into());
    }

    let labels = lex.order().labels();
    let facet_order = lex
        .systems()
        .iter()
        .enumerate()
        .map(|(j, sys)| FacetReport {
            index: j + 1,
            chain: lex
                .order()
                .facet(j)
                .elements()
                .iter()
                .map(|&e| poset.id(e).to_string())
                .collect(),
            labels: labels
                .map_or_else(Vec::new, |l| l[j].iter().map(ToString::to_string).collect()),
            minimal: sys.minimal.iter().map(ToString::to_string).collect(),
            truncated: sys.truncated.iter().map(ToString::to_string).collect(),
            uncovered: sys.uncovered.clone(),
            rho: sys.rho.clone(),
            critical_dim: sys.critical_dimension(),
        })
        .collect();
    let critical_cells = lex
        .critical()
        .into_iter()
        .map(|c| cell_report(&poset, &lex, c, false))
        .collect::<Result<_, _>>()?;
    let shelling_witness = match verdict {
        ShellingVerdict::Shelling => None,
        ShellingVerdict::Witness { facet, interval } => {
            Some(format!("facet {} skips {interval}", facet + 1))
        }
    };
    Ok(AnalyzeReport {
        command: "analyze",
        elements: poset.len(),
        covers: poset.cover_count(),
        faces: lex.complex().len(),
        dimension: top,
        facet_order,
        critical_cells,
        morse_vector: morse(&m, top),
        betti: betti(&b, top),
        betti_mod2: betti(&b2, top),
        mobius_recursive,
        mobius_morse,
        shelling: verdict.is_shelling(),
        shelling_witness,
        acyclic: lex.matching().is_acyclic(),
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Action {
    /// Critical cells of the lexicographic matching
    Report,
    /// Cancel every critical cell below the top dimension
    Cancel,
    /// Mobius function of the whole poset, two ways
    Mobius,
    /// Homology of the order complex
    Homology,
}

impl Action {
    fn name(self) -> &'static str {
        match self {
            Action::Report => "report",
            Action::Cancel => "cancel",
            Action::Mobius => "mobius",
            Action::Homology => "homology",
        }
    }
}

fn direction(d: ShiftDirection) -> String {
    match d {
        ShiftDirection::Out => "out".into(),
        ShiftDirection::In => "in".into(),
    }
}

fn verdict(survivors: &[CellReport]) -> String {
    let k = survivors.len();
    if k == 0 {
        return "0 surviving critical cells; collapsible".into();
    }
    let mut dims: Vec<isize> = survivors.iter().map(|c| c.dim).collect();
    dims.dedup();
    if let [d] = dims.as_slice() {
        let s = if k == 1 { "sphere" } else { "spheres" };
        format!("{k} surviving critical cells; wedge of {k} {s} of dimension {d}")
    } else {
        let dims: Vec<String> = dims.iter().map(ToString::to_string).collect();
        format!(
            "{k} surviving critical cells in dimensions {}; homotopy type not determined",
            dims.join(" ")
        )
    }
}

pub fn multiset(
    lambda: &Lambda,
    action: Action,
    force: bool,
    config: &Config,
) -> Result<MultisetReport, CliError> {
    if lambda.n() > MAX_N {
        return Err(CliError::BoundExceeded {
            what: "n".into(),
            value: lambda.n() as u128,
            limit: MAX_N as u128,
        });
    }
    if action == Action::Cancel && !lambda.is_hook() && !force {
        return Err(CliError::core(
            "cancel",
            Error::NotHookShaped(lambda.parts().to_vec()),
        ));
    }
    let poset = build_multiset_poset(lambda).map_err(|e| CliError::core("multiset poset", e))?;
    config.check_faces(poset.count_chains())?;
    let order = FacetOrder::from_labeling(&poset, &MultisetLabeling)
        .map_err(|e| CliError::core("facet order", e))?;
    let lex = LexMorse::build(order).map_err(|e| CliError::core("lexicographic matching", e))?;
    let top = lex.complex().dim();
    let b = reduced_betti(lex.complex());

    let mut report = MultisetReport {
        command: "multiset",
        action: action.name(),
        lambda: lambda.parts().to_vec(),
        n: lambda.n(),
        hook: lambda.is_hook(),
        forced: force,
        elements: poset.len(),
        facets: lex.order().len(),
        faces: lex.complex().len(),
        dimension: top,
        critical: None,
        cancel: None,
        mobius: None,
        homology: None,
        violations: Vec::new(),
    };
    matching_checks(lex.matching(), &b, &mut report.violations);
    lex_checks(&lex, &mut report.violations);

    match action {
        Action::Report => {
            let mut cells = Vec::new();
            let mut msi = Vec::new();
            for c in lex.critical() {
                let j = lex.fibre_of(c);
                cells.push(cell_report(&poset, &lex, c, true)?);
                let kinds = lex
                    .system(j)
                    .minimal
                    .iter()
                    .filter(|iv| iv.height() > 1)
                    .map(|&iv| {
                        let kind = classify_msi(&poset, &lex, j, iv)
                            .map_err(|e| CliError::core("interval type", e))?;
                        Ok(MsiReport {
                            interval: iv.to_string(),
                            kind: format!("{kind:?}").to_lowercase(),
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                msi.push(kinds);
            }
            report.critical = Some(CriticalSection {
                morse_vector: morse(&lex.matching().morse_vector(), top),
                cells,
                msi,
            });
        }
        Action::Cancel => {
            let opts = CancelOptions { force };
            let (matching, c) = cancel_lower_of(&poset, &lex, lambda.parts().to_vec(), opts)
                .map_err(|e| CliError::core("cancel", e))?;
            let cell = |id| cell_report(&poset, &lex, id, true);
            let pairs = c
                .pairs
                .iter()
                .map(|p| {
                    Ok(PairReport {
                        upper: cell(p.upper)?,
                        lower: cell(p.lower)?,
                        agreement: p.agreement,
                        direction: direction(p.direction),
                        predicted: p.predicted.map(direction),
                        paths: p.paths.min(u64::MAX as u128) as u64,
                        deleted_ranks: p.deleted_ranks.clone(),
                        inversions: p.inversions.clone(),
                        rank_preserving: p.rank_preserving,
                    })
                })
                .collect::<Result<_, CliError>>()?;
            let not_unique = c
                .not_unique
                .iter()
                .map(|&(u, l, n)| {
                    Ok(NotUniqueReport {
                        upper: cell(u)?,
                        lower: cell(l)?,
                        paths: n.min(u64::MAX as u128) as u64,
                    })
                })
                .collect::<Result<_, CliError>>()?;
            let survivors: Vec<CellReport> = c
                .survivors
                .iter()
                .map(|&s| cell(s))
                .collect::<Result<_, _>>()?;
            let concentrated = c.is_concentrated(&matching);
            matching_checks(&matching, &b, &mut report.violations);
            if lambda.is_hook() && !concentrated {
                report
                    .violations
                    .push("hook shape but surviving cells are not all in the top dimension".into());
            }
            report.cancel = Some(CancelSection {
                initial: morse(&c.initial, top),
                pairs,
                unpaired: c
                    .unpaired
                    .iter()
                    .map(|&u| cell(u))
                    .collect::<Result<_, _>>()?,
                partner_not_critical: c.partner_not_critical.iter().map(|f| f + 1).collect(),
                not_unique,
                verdict: verdict(&survivors),
                survivors,
                final_vector: morse(&c.final_vector, top),
                concentrated,
            });
        }
        Action::Mobius => {
            let recursive = mobius(&poset);
            let morse_value = mobius_from_morse(&lex);
            if recursive != morse_value {
                report.violations.push(format!(
                    "mobius values disagree: recursive {recursive}, from critical cells {morse_value}"
                ));
            }
            report.mobius = Some(MobiusSection {
                recursive,
                morse: morse_value,
                hook_predicts_zero: hook_mobius_predicate(lambda).ok(),
            });
        }
        Action::Homology => {
            report.homology = Some(HomologySection {
                f_vector: lex.complex().f_vector(),
                betti: betti(&b, top),
                betti_mod2: betti(&betti_mod2(lex.complex()), top),
                euler: b.euler(),
            });
        }
    }
    Ok(report)
}

pub fn puzzle(max_total: usize, max_parts: usize, distinct: bool) -> PuzzleReport {
    let opts = PuzzleOptions { distinct };
    let found = puzzle_search(max_total, max_parts, opts);
    let violations = found
        .iter()
        .filter_map(|s| {
            check_puzzle_solution(s, opts)
                .err()
                .map(|c| format!("solution with n = {:?} fails condition {c}", s.n))
        })
        .collect();
    PuzzleReport {
        command: "puzzle",
        max_total,
        max_parts,
        distinct,
        count: found.len(),
        solutions: found
            .into_iter()
            .map(|s| SolutionReport {
                n: s.n,
                b: s.b,
                c: s.c,
                blocks: s.blocks,
            })
            .collect(),
        violations,
    }
}

pub fn shelling(src: Source, config: &Config) -> Result<ShellingReport, CliError> {
    let file = parse_facets(src.text).map_err(|source| CliError::Parse {
        path: src.name.to_string(),
        source,
    })?;
    let faces: u128 = file
        .facets
        .iter()
        .map(|f| 1u128.checked_shl(f.len() as u32).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    config.check_faces(faces)?;
    let sm = shelling_matching(&file.facets).map_err(|e| match e {
        Error::NotAShelling(j) => CliError::Usage(format!(
            "{}: facet {} does not meet the earlier facets in a pure codimension-one complex; the order is not a shelling",
            src.name,
            j + 1
        )),
        e => CliError::core(src.name, e),
    })?;
    let complex = sm.matching.complex();
    let top = complex.dim();
    let b = reduced_betti(complex);
    let mut violations = Vec::new();
    matching_checks(&sm.matching, &b, &mut violations);
    let m = sm.matching.morse_vector();
    if morse(&m, top) != betti(&b, top) {
        violations.push("a shelling matching should be perfect but the morse vector differs from the betti numbers".into());
    }
    Ok(ShellingReport {
        command: "shelling",
        vertices: file.names.len(),
        facets: file.facets.len(),
        faces: complex.len(),
        critical_facets: sm.critical_facets.iter().map(|f| f + 1).collect(),
        morse_vector: morse(&m, top),
        betti: betti(&b, top),
        acyclic: sm.matching.is_acyclic(),
        violations,
    })
}
