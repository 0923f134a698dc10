//! Report structures and their text rendering. JSON comes from serde.

use std::fmt::Write;

use serde::Serialize;

/// One critical cell. `facet` is the 1-based position of its facet in the
/// order and `ranks` the ranks of its vertices on that facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub facet: usize,
    pub dim: isize,
    pub ranks: Vec<usize>,
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub index: usize,
    pub chain: Vec<String>,
    pub labels: Vec<String>,
    pub minimal: Vec<String>,
    pub truncated: Vec<String>,
    pub uncovered: Vec<usize>,
    pub rho: Vec<usize>,
    pub critical_dim: Option<isize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub elements: usize,
    pub covers: usize,
    pub faces: usize,
    pub dimension: isize,
    pub facet_order: Vec<FacetReport>,
    pub critical_cells: Vec<CellReport>,
    /// Indexed from dimension -1.
    pub morse_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub betti_mod2: Vec<usize>,
    pub mobius_recursive: i64,
    pub mobius_morse: i64,
    pub shelling: bool,
    pub shelling_witness: Option<String>,
    pub acyclic: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MsiReport {
    pub interval: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSection {
    pub morse_vector: Vec<usize>,
    pub cells: Vec<CellReport>,
    /// Type of each minimal skipped interval of height at least two, per cell.
    pub msi: Vec<Vec<MsiReport>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub upper: CellReport,
    pub lower: CellReport,
    pub agreement: usize,
    pub direction: String,
    pub predicted: Option<String>,
    pub paths: u64,
    pub deleted_ranks: Vec<usize>,
    pub inversions: Vec<usize>,
    pub rank_preserving: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancelSection {
    pub initial: Vec<usize>,
    pub pairs: Vec<PairReport>,
    pub unpaired: Vec<CellReport>,
    /// 1-based facets of lower cells with no critical partner.
    pub partner_not_critical: Vec<usize>,
    pub not_unique: Vec<NotUniqueReport>,
    pub survivors: Vec<CellReport>,
    pub final_vector: Vec<usize>,
    pub concentrated: bool,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotUniqueReport {
    pub upper: CellReport,
    pub lower: CellReport,
    pub paths: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusSection {
    pub recursive: i64,
    pub morse: i64,
    /// Whether `λ_1 > 3(l - 1)`, the hook criterion for `μ = 0`; absent for
    /// other shapes.
    pub hook_predicts_zero: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySection {
    pub f_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub betti_mod2: Vec<usize>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultisetReport {
    pub command: &'static str,
    pub action: &'static str,
    pub lambda: Vec<usize>,
    pub n: usize,
    pub hook: bool,
    pub forced: bool,
    pub elements: usize,
    pub facets: usize,
    pub faces: usize,
    pub dimension: isize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cancel: Option<CancelSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobius: Option<MobiusSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySection>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub n: Vec<usize>,
    pub b: Vec<Vec<usize>>,
    pub c: [usize; 2],
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuzzleReport {
    pub command: &'static str,
    pub max_total: usize,
    pub max_parts: usize,
    pub distinct: bool,
    pub count: usize,
    pub solutions: Vec<SolutionReport>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub command: &'static str,
    pub vertices: usize,
    pub facets: usize,
    pub faces: usize,
    pub critical_facets: Vec<usize>,
    pub morse_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub acyclic: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Analyze(AnalyzeReport),
    Multiset(Box<MultisetReport>),
    Puzzle(PuzzleReport),
    Shelling(ShellingReport),
}

impl Report {
    pub fn violations(&self) -> &[String] {
        match self {
            Report::Analyze(r) => &r.violations,
            Report::Multiset(r) => &r.violations,
            Report::Puzzle(r) => &r.violations,
            Report::Shelling(r) => &r.violations,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(r) => analyze_text(r, &mut out),
            Report::Multiset(r) => multiset_text(r, &mut out),
            Report::Puzzle(r) => puzzle_text(r, &mut out),
            Report::Shelling(r) => shelling_text(r, &mut out),
        }
        .expect("writing to a String");
        let violations = self.violations();
        if violations.is_empty() {
            out.push_str("consistency: pass\n");
        } else {
            out.push_str("consistency: FAIL\n");
            for v in violations {
                let _ = writeln!(out, "  {v}");
            }
        }
        out
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn or_dash(s: String) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s
    }
}

fn vector(name: &str, v: &[usize], out: &mut String) -> std::fmt::Result {
    writeln!(out, "{name} (from dim -1): {}", join(v, " "))
}

fn cell_line(c: &CellReport) -> String {
    let body = c
        .notation
        .clone()
        .unwrap_or_else(|| format!("{{{}}}", join(&c.elements, " < ")));
    format!(
        "facet {}, dim {}, ranks {}: {body}",
        c.facet,
        c.dim,
        or_dash(join(&c.ranks, " "))
    )
}

fn cell_short(c: &CellReport) -> String {
    format!(
        "facet {} dim {} ranks {}",
        c.facet,
        c.dim,
        or_dash(join(&c.ranks, " "))
    )
}

fn analyze_text(r: &AnalyzeReport, out: &mut String) -> std::fmt::Result {
    writeln!(
        out,
        "poset: {} elements, {} covers, {} facets",
        r.elements,
        r.covers,
        r.facet_order.len()
    )?;
    writeln!(
        out,
        "order complex: {} faces with the empty face, dimension {}",
        r.faces, r.dimension
    )?;
    writeln!(out, "facet order:")?;
    for f in &r.facet_order {
        writeln!(
            out,
            "  {}: {}  labels {}",
            f.index,
            join(&f.chain, " < "),
            or_dash(join(&f.labels, " "))
        )?;
        let critical = f
            .critical_dim
            .map_or("none".to_string(), |d| format!("dim {d}"));
        writeln!(
            out,
            "     I = {}  J = {}  j0 = {}  rho = {}  critical {}",
            or_dash(join(&f.minimal, " ")),
            or_dash(join(&f.truncated, " ")),
            or_dash(join(&f.uncovered, " ")),
            or_dash(join(&f.rho, " ")),
            critical
        )?;
    }
    writeln!(out, "critical cells: {}", r.critical_cells.len())?;
    for c in &r.critical_cells {
        writeln!(out, "  {}", cell_line(c))?;
    }
    vector("morse vector", &r.morse_vector, out)?;
    vector("reduced betti", &r.betti, out)?;
    vector("reduced betti mod 2", &r.betti_mod2, out)?;
    writeln!(
        out,
        "mobius: recursive {}, from critical cells {}",
        r.mobius_recursive, r.mobius_morse
    )?;
    match &r.shelling_witness {
        None => writeln!(out, "shelling: {}", r.shelling)?,
        Some(w) => writeln!(out, "shelling: {} ({w})", r.shelling)?,
    }
    writeln!(out, "acyclic: {}", r.acyclic)
}

fn multiset_text(r: &MultisetReport, out: &mut String) -> std::fmt::Result {
    let shape = if r.hook { "hook" } else { "not a hook" };
    let forced = if r.forced { ", forced" } else { "" };
    writeln!(
        out,
        "lambda: {} (n = {}, {shape}{forced})",
        join(&r.lambda, ","),
        r.n
    )?;
    writeln!(
        out,
        "poset: {} elements, {} facets; order complex: {} faces, dimension {}",
        r.elements, r.facets, r.faces, r.dimension
    )?;
    if let Some(c) = &r.critical {
        vector("morse vector", &c.morse_vector, out)?;
        writeln!(out, "critical cells: {}", c.cells.len())?;
        for (cell, msi) in c.cells.iter().zip(&c.msi) {
            writeln!(out, "  {}", cell_line(cell))?;
            for m in msi {
                writeln!(out, "    interval {}: {}", m.interval, m.kind)?;
            }
        }
    }
    if let Some(c) = &r.cancel {
        vector("initial morse vector", &c.initial, out)?;
        writeln!(out, "cancelled pairs: {}", c.pairs.len())?;
        for p in &c.pairs {
            writeln!(out, "  upper {}", cell_line(&p.upper))?;
            writeln!(out, "  lower {}", cell_line(&p.lower))?;
            writeln!(
                out,
                "    agreement {}, direction {}, predicted {}, paths {}, deleted ranks {}, inversions {}, rank preserving {}",
                p.agreement,
                p.direction,
                p.predicted.as_deref().unwrap_or("-"),
                p.paths,
                or_dash(join(&p.deleted_ranks, " ")),
                or_dash(join(&p.inversions, " ")),
                p.rank_preserving
            )?;
        }
        if !c.unpaired.is_empty() {
            writeln!(out, "unpaired lower cells: {}", c.unpaired.len())?;
            for u in &c.unpaired {
                writeln!(out, "  {}", cell_line(u))?;
            }
        }
        if !c.partner_not_critical.is_empty() {
            writeln!(
                out,
                "partner not critical for facets: {}",
                join(&c.partner_not_critical, " ")
            )?;
        }
        for n in &c.not_unique {
            writeln!(
                out,
                "not unique: {} paths from {} to {}",
                n.paths,
                cell_short(&n.upper),
                cell_short(&n.lower)
            )?;
        }
        vector("final morse vector", &c.final_vector, out)?;
        writeln!(out, "surviving cells: {}", c.survivors.len())?;
        for s in &c.survivors {
            writeln!(out, "  {}", cell_line(s))?;
        }
        writeln!(out, "{}", c.verdict)?;
    }
    if let Some(m) = &r.mobius {
        writeln!(
            out,
            "mobius: recursive {}, from critical cells {}",
            m.recursive, m.morse
        )?;
        if let Some(p) = m.hook_predicts_zero {
            writeln!(
                out,
                "hook criterion lambda_1 > 3(l - 1) predicts mu = 0: {p}"
            )?;
        }
    }
    if let Some(h) = &r.homology {
        vector("f-vector", &h.f_vector, out)?;
        vector("reduced betti", &h.betti, out)?;
        vector("reduced betti mod 2", &h.betti_mod2, out)?;
        writeln!(out, "reduced euler characteristic: {}", h.euler)?;
    }
    Ok(())
}

fn puzzle_text(r: &PuzzleReport, out: &mut String) -> std::fmt::Result {
    writeln!(
        out,
        "puzzle: total at most {}, at most {} parts, distinct {}",
        r.max_total, r.max_parts, r.distinct
    )?;
    writeln!(out, "solutions: {}", r.count)?;
    let groups = |g: &[Vec<usize>]| {
        join(
            &g.iter()
                .map(|x| format!("[{}]", join(x, " ")))
                .collect::<Vec<_>>(),
            " ",
        )
    };
    for s in &r.solutions {
        writeln!(
            out,
            "  n = {}; b = {}; c = [{}]; blocks = {}",
            join(&s.n, " "),
            groups(&s.b),
            join(&s.c, " "),
            groups(&s.blocks)
        )?;
    }
    Ok(())
}

fn shelling_text(r: &ShellingReport, out: &mut String) -> std::fmt::Result {
    writeln!(
        out,
        "complex: {} vertices, {} facets, {} faces with the empty face",
        r.vertices, r.facets, r.faces
    )?;
    writeln!(
        out,
        "critical facets: {}",
        or_dash(join(&r.critical_facets, " "))
    )?;
    vector("morse vector", &r.morse_vector, out)?;
    vector("reduced betti", &r.betti, out)?;
    writeln!(out, "acyclic: {}", r.acyclic)
}
