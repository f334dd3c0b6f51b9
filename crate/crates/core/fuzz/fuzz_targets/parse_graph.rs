#![no_main]

use libfuzzer_sys::fuzz_target;
use ngraph::graph::{parse_graph_text, render_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_text(text) {
        // rendering then parsing must give the same graph back
        let again = parse_graph_text(&render_graph(&g)).expect("rendered graph parses");
        assert_eq!(again, g);
        let _ = g.validate();
    }
});
