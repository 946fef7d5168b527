#![no_main]

use ablgraph::edgelist::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_edge_list(text) {
        // Anything accepted must survive a write/re-parse round trip.
        let rendered = write_edge_list(&g, None);
        let reparsed = parse_edge_list(&rendered).expect("writer output parses");
        assert_eq!(reparsed, g);
    }
});
