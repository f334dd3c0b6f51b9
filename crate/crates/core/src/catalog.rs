//! Small example graphs used throughout the tests and the CLI fixtures.
//!
//! | name   | shape |
//! |--------|-------|
//! | `e1`   | one vertex, one loop `f` |
//! | `e2`   | one vertex, loops `a`, `b` |
//! | `e3`   | one vertex, loops `e` (color 1) and `f` (color 2), `e f = f e` |
//! | `e4`   | loops `x` at `u`, `y` at `v`, edge `g` from `v` to `u` |
//! | `e4p`  | loop `y` at `w`, edge `g` from `w` to `v` |
//! | `e5`   | two components: loops `a`, `b` at `u` and `c`, `d` at `v` |
//! | `twisted` | one vertex, two loops in each of two colors, non-trivial squares |
//! | `twisted3` | one vertex, two loops in each of three colors |
//!
//! All of them carry a trivial tail.

use crate::graph::{parse_graph_file, parse_graph_text, NGraph};

pub const E1: &str = "\
VERTICES
v
COLORS 1
EDGES
f 1 v v
SQUARES
TAIL true
";

pub const E2: &str = "\
VERTICES
v
COLORS 1
EDGES
a 1 v v
b 1 v v
SQUARES
TAIL true
";

pub const E3: &str = "\
VERTICES
v
COLORS 2
EDGES
e 1 v v
f 2 v v
SQUARES
e f -> f e
TAIL true
";

pub const E4: &str = "\
VERTICES
u
v
COLORS 1
EDGES
g 1 v u
x 1 u u
y 1 v v
SQUARES
TAIL true
";

pub const E4P: &str = "\
VERTICES
v
w
COLORS 1
EDGES
g 1 w v
y 1 w w
SQUARES
TAIL true
";

pub const E5: &str = "\
VERTICES
u
v
COLORS 1
EDGES
a 1 u u
b 1 u u
c 1 v v
d 1 v v
SQUARES
TAIL true
";

pub const TWISTED: &str = "\
VERTICES
v
COLORS 2
EDGES
a 1 v v
b 1 v v
x 2 v v
y 2 v v
SQUARES
a x -> x b
a y -> y a
b x -> x a
b y -> y b
TAIL true
";

fn load(text: &str) -> NGraph {
    parse_graph_file(text).expect("catalog graphs are valid")
}

pub fn e1() -> NGraph {
    load(E1)
}

pub fn e2() -> NGraph {
    load(E2)
}

pub fn e3() -> NGraph {
    load(E3)
}

pub fn e4() -> NGraph {
    load(E4)
}

pub fn e4p() -> NGraph {
    load(E4P)
}

pub fn e5() -> NGraph {
    load(E5)
}

pub fn twisted() -> NGraph {
    load(TWISTED)
}

/// Three colors with loops `a0 a1`, `b0 b1`, `c0 c1`; moving a loop of a
/// higher color past one of a lower color flips the lower loop's index for
/// the color pairs (1, 2) and (2, 3).
pub fn twisted3() -> NGraph {
    load(&three_color_text(|lo, hi, i, j| match (lo, hi) {
        (1, 2) | (2, 3) => (j, i ^ 1),
        _ => (j, i),
    }))
}

/// Three colors whose squares are individually bijective but disagree on
/// 3-colored paths.
pub fn broken_hexagon() -> NGraph {
    parse_graph_text(&three_color_text(|lo, hi, i, j| match (lo, hi) {
        (2, 3) | (1, 2) => (i ^ j, i),
        _ => (j, i),
    }))
    .expect("well formed")
}

/// Single vertex, loops `a0 a1 b0 b1 c0 c1`; `square(lo, hi, i, j)` gives
/// the indices `(j', i')` with `lo_i hi_j = hi_j' lo_i'`.
fn three_color_text(square: impl Fn(u32, u32, u32, u32) -> (u32, u32)) -> String {
    let letter = |c: u32| ["a", "b", "c"][c as usize - 1];
    let mut text = String::from("VERTICES\nv\nCOLORS 3\nEDGES\n");
    for c in 1..=3 {
        for i in 0..2 {
            text.push_str(&format!("{}{i} {c} v v\n", letter(c)));
        }
    }
    text.push_str("SQUARES\n");
    for lo in 1..=3 {
        for hi in lo + 1..=3 {
            for i in 0..2 {
                for j in 0..2 {
                    let (j2, i2) = square(lo, hi, i, j);
                    text.push_str(&format!(
                        "{l}{i} {h}{j} -> {h}{j2} {l}{i2}\n",
                        l = letter(lo),
                        h = letter(hi)
                    ));
                }
            }
        }
    }
    text.push_str("TAIL true\n");
    text
}

/// The valid example graphs with their names.
pub fn all() -> Vec<(&'static str, NGraph)> {
    vec![
        ("e1", e1()),
        ("e2", e2()),
        ("e3", e3()),
        ("e4", e4()),
        ("e4p", e4p()),
        ("e5", e5()),
        ("twisted", twisted()),
        ("twisted3", twisted3()),
    ]
}
