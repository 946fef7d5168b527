#![no_main]

use ablgraph::cert::parse_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = parse_certificate(text) {
        let rendered = cert.to_string();
        let reparsed = parse_certificate(&rendered).expect("rendered certificate parses");
        assert_eq!(reparsed, cert);
    }
});
