//! Inputs shared by the benchmarks.

use frobskein_core::skein2::{Mark, SkeinElement};

/// The configuration `d,p,d,p,...` with `len` spheres.
pub fn alternating(len: usize) -> SkeinElement {
    let word: Vec<Mark> = (0..len)
        .map(|i| if i % 2 == 0 { Mark::Dot } else { Mark::Plain })
        .collect();
    SkeinElement::word(&word)
}

/// Every configuration word of exactly `len` spheres, summed with unit
/// coefficients.
pub fn all_words(len: usize) -> SkeinElement {
    let mut out = SkeinElement::zero();
    for mask in 0u32..(1 << len) {
        let word: Vec<Mark> = (0..len)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Mark::Dot
                } else {
                    Mark::Plain
                }
            })
            .collect();
        out = out
            .add(&SkeinElement::word(&word))
            .expect("same coefficient ring");
    }
    out
}
