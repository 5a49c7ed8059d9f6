//! Fuzz the line-stream ingestion path the CLI uses: arbitrary (possibly
//! non-UTF-8) input split on newlines, each line fed to the decoder. Decoded
//! graphs get a cheap workout so invariant violations surface as panics.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for line in data.split(|&b| b == b'\n') {
        let line = match line.strip_suffix(b"\r") {
            Some(rest) => rest,
            None => line,
        };
        if line.is_empty() {
            continue;
        }
        if let Ok(g) = kconn::graph6::decode(line) {
            let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            assert_eq!(degree_sum, 2 * g.edge_count(), "handshake identity broke");
            let _ = kconn::edge_connectivity(&g);
        }
    }
});
