#![no_main]

use libfuzzer_sys::fuzz_target;
use ngraph::catalog;
use ngraph::ideal::VertexSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let g = catalog::e5();
    if let Ok(h) = VertexSet::parse(&g, text) {
        assert_eq!(VertexSet::parse(&g, &h.render(&g)).unwrap(), h);
    }
    if let Ok(p) = g.parse_path(text) {
        assert_eq!(g.parse_path(&g.render_path(&p)).unwrap(), p);
    }
});
