//! Fuzz the graph6 decoder: it must never panic on arbitrary bytes, and
//! every accepted string must re-encode to exactly the input (the decoder
//! accepts nothing the encoder would not produce).

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(graph) = kconn::graph6::decode(data) {
        let encoded = kconn::graph6::encode(&graph).expect("decoded graphs fit the short form");
        assert_eq!(encoded.as_bytes(), data, "decode/encode round trip drifted");

        let back = kconn::graph6::decode(encoded.as_bytes()).expect("re-decoding must succeed");
        assert_eq!(back, graph);
    }
});
