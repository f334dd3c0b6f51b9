#![no_main]

use libfuzzer_sys::fuzz_target;
use ngraph::catalog;
use ngraph::kp::parse_expr_syntax;
use ngraph::ring::{Integers, IntegersMod, Rationals};

// Parsing and name resolution only: evaluating products of long words is
// exponential in the word length and not what this target is after.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(expr) = parse_expr_syntax(text) else { return };
    let g = catalog::e3();
    let _ = expr.resolve(&g, &Integers);
    let _ = expr.resolve(&g, &Rationals);
    let _ = expr.resolve(&g, &IntegersMod::new(4).unwrap());
});
