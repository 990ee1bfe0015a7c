//! Decide whether a skeleton and its squares determine a k-graph.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::model::{EdgeId, KGraph, Square};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    MissingSquare,
    DuplicateSquare,
    NotBijective,
    EndpointMismatch,
    HexagonFail,
    NameClash,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::MissingSquare => "MISSING_SQUARE",
            ViolationCode::DuplicateSquare => "DUPLICATE_SQUARE",
            ViolationCode::NotBijective => "NOT_BIJECTIVE",
            ViolationCode::EndpointMismatch => "ENDPOINT_MISMATCH",
            ViolationCode::HexagonFail => "HEXAGON_FAIL",
            ViolationCode::NameClash => "NAME_CLASH",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    /// Names of the offending edges (or vertices, for name clashes).
    pub edges: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, edges: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            code,
            edges,
            detail: detail.into(),
        });
    }
}

fn names(g: &KGraph, ids: &[EdgeId]) -> Vec<String> {
    ids.iter().map(|&e| g.edge(e).name.clone()).collect()
}

fn check_names(g: &KGraph, report: &mut ValidationReport) {
    let mut seen = HashSet::new();
    for v in g.vertex_names() {
        if !seen.insert(v.as_str()) {
            report.push(ViolationCode::NameClash, vec![v.clone()], "vertex declared twice");
        }
    }
    let vertices: HashSet<&str> = g.vertex_names().iter().map(String::as_str).collect();
    let mut edge_names = HashSet::new();
    for e in g.edges() {
        if !edge_names.insert(e.name.as_str()) {
            report.push(ViolationCode::NameClash, vec![e.name.clone()], "edge declared twice");
        }
        if vertices.contains(e.name.as_str()) {
            report.push(
                ViolationCode::NameClash,
                vec![e.name.clone()],
                "edge shares its name with a vertex",
            );
        }
    }
}

/// Colours and endpoints of a single square.
fn square_shape_ok(g: &KGraph, sq: &Square) -> Result<(), String> {
    let [e, f] = sq.first;
    let [f2, e2] = sq.second;
    let (ci, cj) = (g.color(e), g.color(f));
    if ci >= cj {
        return Err(format!("first side has colours ({ci},{cj}), expected i < j"));
    }
    if g.color(f2) != cj || g.color(e2) != ci {
        return Err(format!(
            "second side has colours ({},{}), expected ({cj},{ci})",
            g.color(f2),
            g.color(e2)
        ));
    }
    if g.edge(e).source != g.edge(f).range {
        return Err("first side is not composable".into());
    }
    if g.edge(f2).source != g.edge(e2).range {
        return Err("second side is not composable".into());
    }
    if g.edge(e).range != g.edge(f2).range || g.edge(f).source != g.edge(e2).source {
        return Err("sides have different range or source".into());
    }
    Ok(())
}

fn check_squares(g: &KGraph, report: &mut ValidationReport) {
    let mut by_first: HashMap<(EdgeId, EdgeId), Vec<&Square>> = HashMap::new();
    let mut by_second: HashMap<(EdgeId, EdgeId), Vec<&Square>> = HashMap::new();
    for sq in g.squares() {
        if let Err(detail) = square_shape_ok(g, sq) {
            let mut offending = sq.first.to_vec();
            offending.extend_from_slice(&sq.second);
            report.push(ViolationCode::EndpointMismatch, names(g, &offending), detail);
            continue;
        }
        by_first.entry((sq.first[0], sq.first[1])).or_default().push(sq);
        by_second.entry((sq.second[0], sq.second[1])).or_default().push(sq);
    }

    let k = g.rank();
    for e_id in 0..g.edges().len() {
        let e = EdgeId(e_id as u32);
        let ce = g.color(e);
        for cf in 1..=k {
            if cf == ce {
                continue;
            }
            for &f in g.edges_into(g.edge(e).source, cf) {
                let key = (e, f);
                let found = if ce < cf {
                    by_first.get(&key)
                } else {
                    by_second.get(&key)
                };
                match found.map(Vec::as_slice) {
                    None | Some([]) => report.push(
                        ViolationCode::MissingSquare,
                        names(g, &[e, f]),
                        "composable two-coloured path has no partner",
                    ),
                    Some([_]) => {}
                    Some(many) => {
                        // the same path repeated on the low-colour side is a
                        // duplicate; on the high-colour side the pairing is
                        // no longer injective
                        let code = if ce < cf {
                            ViolationCode::DuplicateSquare
                        } else if many.iter().all(|s| s.first == many[0].first) {
                            // identical squares listed twice: already reported
                            continue;
                        } else {
                            ViolationCode::NotBijective
                        };
                        report.push(code, names(g, &[e, f]), format!("appears in {} squares", many.len()));
                    }
                }
            }
        }
    }
}

/// For colours `i < j < l` and every composable `e·f·h` of those colours,
/// reach the order `l j i` along both routes of adjacent exchanges.
fn check_hexagons(g: &KGraph, report: &mut ValidationReport) {
    let k = g.rank();
    let sw = |x: EdgeId, y: EdgeId| g.swap(x, y).expect("squares are complete");
    for i in 1..=k {
        for j in (i + 1)..=k {
            for l in (j + 1)..=k {
                for (e_idx, edge) in g.edges().iter().enumerate() {
                    if edge.color != i {
                        continue;
                    }
                    let e = EdgeId(e_idx as u32);
                    for &f in g.edges_into(edge.source, j) {
                        for &h in g.edges_into(g.edge(f).source, l) {
                            // route one: swap (1,2), (2,3), (1,2)
                            let (f1, e1) = sw(e, f);
                            let (h1, e2) = sw(e1, h);
                            let (h2, f2) = sw(f1, h1);
                            let one = [h2, f2, e2];
                            // route two: swap (2,3), (1,2), (2,3)
                            let (h3, f3) = sw(f, h);
                            let (h4, e3) = sw(e, h3);
                            let (f4, e4) = sw(e3, f3);
                            let two = [h4, f4, e4];
                            if one != two {
                                report.push(
                                    ViolationCode::HexagonFail,
                                    names(g, &[e, f, h]),
                                    format!(
                                        "routes give {} and {}",
                                        names(g, &one).join(","),
                                        names(g, &two).join(",")
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Check names, square shapes, completeness and bijectivity of the pairing,
/// and (when the squares are otherwise sound) associativity on every
/// three-coloured path.
pub fn validate(g: &KGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_names(g, &mut report);
    check_squares(g, &mut report);
    if report.passed() {
        check_hexagons(g, &mut report);
    }
    report
}
