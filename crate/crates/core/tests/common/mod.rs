#![allow(dead_code)]

use std::collections::BTreeSet;

use ngraph::graph::{NGraph, Path};
use ngraph::ideal::{self, VertexSet};
use ngraph::MultiIndex;

pub fn mi(s: &str) -> MultiIndex {
    s.parse().unwrap()
}

/// Every subset of vertices, filtered by the two predicates.
pub fn brute_force_lattice(g: &NGraph) -> Vec<VertexSet> {
    let vs: Vec<_> = g.vertices().collect();
    assert!(vs.len() <= 16);
    let mut out: Vec<VertexSet> = (0u32..1 << vs.len())
        .map(|mask| {
            (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i])
                .collect::<VertexSet>()
        })
        .filter(|h| ideal::is_hereditary(g, h) && ideal::is_saturated(g, h))
        .collect();
    out.sort_by_key(|h| (h.len(), h.iter().collect::<Vec<_>>()));
    out
}

/// Saturation straight from the definition: no vertex outside `h` has all
/// sources of some degree `0 < n <= cap` inside `h`.
pub fn saturated_up_to(g: &NGraph, h: &VertexSet, cap: &MultiIndex) -> bool {
    g.vertices().filter(|&v| !h.contains(v)).all(|v| {
        cap.below()
            .iter()
            .filter(|n| !n.is_zero())
            .all(|n| !g.paths_from(v, n).unwrap().iter().all(|p| h.contains(p.source())))
    })
}

/// All `(a, b)` with `l a = m b` and `d(l a) = d(l) v d(m)`, found by
/// pairing every candidate extension on both sides.
pub fn brute_ghost_pairs(g: &NGraph, l: &Path, m: &Path) -> BTreeSet<(Path, Path)> {
    let q = l.degree().join(m.degree());
    let mut out = BTreeSet::new();
    if l.range() != m.range() {
        return out;
    }
    let left = g.paths_from(l.source(), &q.sub(l.degree()).unwrap()).unwrap();
    let right = g.paths_from(m.source(), &q.sub(m.degree()).unwrap()).unwrap();
    for a in &left {
        let la = g.compose(l, a).unwrap();
        for b in &right {
            if la == g.compose(m, b).unwrap() {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
pub const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

/// Golden invocations: name and arguments after the program name. `@`
/// stands for the fixture directory.
pub const CORPUS: &[(&str, &[&str])] = &[
    ("validate_e3", &["validate", "--graph", "@/e3.graph"]),
    (
        "validate_broken_hexagon",
        &["validate", "--graph", "@/broken_hexagon.graph"],
    ),
    (
        "validate_missing_edge",
        &["validate", "--graph", "@/missing_edge.graph"],
    ),
    (
        "validate_non_bijective",
        &["validate", "--graph", "@/non_bijective.graph", "--machine"],
    ),
    ("ideals_e5", &["ideals", "--graph", "@/e5.graph"]),
    ("ideals_e4_machine", &["ideals", "--graph", "@/e4.graph", "--machine"]),
    ("ideals_product", &["ideals", "--graph", "@/product_e2_e1.graph"]),
    ("closure_e4p", &["closure", "--graph", "@/e4p.graph", "--set", "w"]),
    ("quotient_e4", &["quotient", "--graph", "@/e4.graph", "--set", "v"]),
    (
        "quotient_e5_machine",
        &["quotient", "--graph", "@/e5.graph", "--set", "{v}", "--machine"],
    ),
    (
        "quotient_not_closed",
        &["quotient", "--graph", "@/e4.graph", "--set", "u"],
    ),
    ("regular_e4", &["regular", "--graph", "@/e4.graph", "--set", "v"]),
    ("regular_e5", &["regular", "--graph", "@/e5.graph", "--set", "v"]),
    (
        "regular_e5_machine",
        &["regular", "--graph", "@/e5.graph", "--set", "v", "--machine"],
    ),
    (
        "aperiodic_e2",
        &[
            "aperiodic",
            "--graph",
            "@/e2.graph",
            "--pair-cap",
            "{1:1}",
            "--bound",
            "{1:4}",
        ],
    ),
    (
        "aperiodic_e1",
        &[
            "aperiodic",
            "--graph",
            "@/e1.graph",
            "--pair-cap",
            "{1:1}",
            "--bound",
            "{1:4}",
        ],
    ),
    (
        "aperiodic_e3_machine",
        &[
            "aperiodic",
            "--graph",
            "@/e3.graph",
            "--pair-cap",
            "{1:1,2:1}",
            "--bound",
            "{1:2,2:2}",
            "--machine",
        ],
    ),
    (
        "separate_e2",
        &["separate", "--graph", "@/e2.graph", "v", "{1:1}", "--bound", "{1:3}"],
    ),
    (
        "separate_e1",
        &["separate", "--graph", "@/e1.graph", "v", "{1:1}", "--bound", "{1:4}"],
    ),
    ("kp_eval_e3", &["kp-eval", "--graph", "@/e3.graph", "S* e s f"]),
    (
        "kp_eval_e2_mod4",
        &[
            "kp-eval",
            "--graph",
            "@/e2.graph",
            "--ring",
            "mod:4",
            "2 * s a + 2 * s a + 3 * p v - s a S* a",
        ],
    ),
    (
        "kp_eval_truncated",
        &["kp-eval", "--graph", "@/e3.graph", "--truncate", "1", "s e S* e"],
    ),
    (
        "kp_eval_bad_ring",
        &["kp-eval", "--graph", "@/e2.graph", "--ring", "real", "p v"],
    ),
    (
        "kp_equal_e2",
        &["kp-equal", "--graph", "@/e2.graph", "p v", "s a S* a + s b S* b"],
    ),
    (
        "kp_equal_e2_false",
        &["kp-equal", "--graph", "@/e2.graph", "s a", "s b"],
    ),
    (
        "kp_equal_rat",
        &[
            "kp-equal",
            "--graph",
            "@/e2.graph",
            "--ring",
            "rat",
            "1/2 * p v + 1/2 * s a S* a + 1/2 * s b S* b",
            "p v",
        ],
    ),
    (
        "kp_equal_twisted",
        &["kp-equal", "--graph", "@/twisted.graph", "s a s x", "s x s b"],
    ),
    (
        "rep_check_e3",
        &["rep-check", "--graph", "@/e3.graph", "--cap", "{1:2,2:2}"],
    ),
    (
        "rep_check_matrix_e2",
        &["rep-check", "--graph", "@/e2.graph", "--cap", "{1:2}", "s a S* b"],
    ),
    ("omega_check_12", &["omega-check", "--cap", "{1:2}"]),
    (
        "omega_check_11_machine",
        &["omega-check", "--cap", "{1:1,2:1}", "--machine"],
    ),
    ("render_twisted3", &["render", "--graph", "@/twisted3.graph"]),
    (
        "render_e1_truncate3",
        &["render", "--graph", "@/e1.graph", "--truncate", "3"],
    ),
    ("unknown_command", &["frobnicate"]),
];

/// Runs one corpus entry and returns `exit N` followed by the output.
pub fn run_case(args: &[&str]) -> String {
    let mut argv = vec!["ngraph".to_string()];
    argv.extend(args.iter().map(|a| a.replace('@', FIXTURES)));
    let (code, out) = ngraph::cli::run(argv);
    format!("exit {code}\n{}", out.replace(FIXTURES, "@"))
}

/// `lambda(m, n)` found by trying every factorization `x y z = lambda` with
/// `d(x) = m` and `d(y) = n - m`, without the segment routine.
pub fn brute_segment(g: &NGraph, lambda: &Path, m: &MultiIndex, n: &MultiIndex) -> Path {
    let mid = n.sub(m).unwrap();
    let rest = lambda.degree().sub(n).unwrap();
    for x in g.paths_from(lambda.range(), m).unwrap() {
        for y in g.paths_from(x.source(), &mid).unwrap() {
            let xy = g.compose(&x, &y).unwrap();
            for z in g.paths_from(y.source(), &rest).unwrap() {
                if g.compose(&xy, &z).unwrap() == *lambda {
                    return y;
                }
            }
        }
    }
    panic!("no factorization of {}", g.render_path(lambda));
}

/// Pairs `(a, b)` with `s(a) = s(b)` and both degrees at most `cap`.
pub fn monomial_pairs(g: &NGraph, cap: &MultiIndex) -> Vec<(Path, Path)> {
    let paths = g.paths_up_to(cap).unwrap();
    let mut out = Vec::new();
    for a in &paths {
        for b in &paths {
            if a.source() == b.source() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}
