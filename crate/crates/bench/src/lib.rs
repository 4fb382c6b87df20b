//! Shared helpers for the engine benchmarks.

use slidewin_core::automata::Alphabet;
use slidewin_core::Language;

pub fn binary_alphabet() -> Alphabet {
    Alphabet::with_default_padding(b"ab").expect("static alphabet")
}

pub fn language(pattern: &str) -> Language {
    Language::from_regex(pattern, &binary_alphabet()).expect("static pattern")
}

/// Deterministic pseudo-stream over {a, b}.
pub fn stream(len: usize) -> Vec<u8> {
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    (0..len)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            if state >> 63 == 0 {
                b'a'
            } else {
                b'b'
            }
        })
        .collect()
}
