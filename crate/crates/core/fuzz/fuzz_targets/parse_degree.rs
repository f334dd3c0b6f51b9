#![no_main]

use libfuzzer_sys::fuzz_target;
use ngraph::{GradedDegree, MultiIndex};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<MultiIndex>() {
        assert_eq!(m.to_string().parse::<MultiIndex>().unwrap(), m);
    }
    if let Ok(d) = text.parse::<GradedDegree>() {
        assert_eq!(d.to_string().parse::<GradedDegree>().unwrap(), d);
    }
});
