//! Built-in named matrices used by the test corpus and the CLI. Shipping
//! them inside the library keeps the acceptance checks free of filesystem
//! fixtures.

use crate::ratmath::RatMatrix;

pub const FIXTURE_NAMES: [&str; 4] = ["sec7-3x3", "sec7-4x4-nilpotent", "ex7.3", "sec4-2x2"];

pub fn fixture(name: &str) -> Option<RatMatrix> {
    match name {
        "sec7-3x3" => Some(RatMatrix::from_integers(&[
            &[1, 1, 1],
            &[0, 0, 0],
            &[0, 0, 0],
        ])),
        "sec7-4x4-nilpotent" => Some(RatMatrix::from_integers(&[
            &[0, 1, 1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
        ])),
        "ex7.3" => Some(RatMatrix::from_integers(&[
            &[0, 0, 0, 0],
            &[1, 1, 1, 0],
            &[1, 1, 2, 0],
            &[1, 1, 1, 0],
        ])),
        "sec4-2x2" => Some(RatMatrix::from_integers(&[&[1, 1], &[0, 0]])),
        _ => None,
    }
}
