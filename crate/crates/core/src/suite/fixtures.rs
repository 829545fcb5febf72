//! Reference constants for `q = 3`, `d = 5`, `F_243 = F_3[x | x^5 = x + 1]`
//! with basis `1, x, .., x^4`, specialization parameter `alpha = 1`.

use crate::ff::Mat;

fn mat(rows: [[u32; 5]; 5]) -> Mat {
    Mat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// `a -> a^3` on `F_243`.
pub fn phi1() -> Mat {
    mat([
        [1, 0, 0, 1, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 1, 0, 1],
        [0, 1, 0, 0, 2],
        [0, 0, 0, 1, 1],
    ])
}

/// Multiplication by `x`.
pub fn theta() -> Mat {
    mat([
        [0, 0, 0, 0, 1],
        [1, 0, 0, 0, 1],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
    ])
}

/// First generator for `sigma = a -> a^3`.
pub fn b1() -> Mat {
    mat([
        [2, 1, 2, 0, 1],
        [0, 2, 2, 1, 2],
        [0, 2, 0, 0, 1],
        [0, 2, 1, 1, 2],
        [0, 1, 2, 0, 0],
    ])
}

/// First generator for `sigma = a -> a^9`.
pub fn b2() -> Mat {
    mat([
        [2, 1, 1, 1, 1],
        [0, 1, 2, 1, 1],
        [0, 1, 2, 2, 2],
        [0, 0, 1, 0, 0],
        [0, 1, 1, 1, 0],
    ])
}

/// `x^11 = x^3 - x^2 + x` in coordinates.
pub const X_POW_11: [u32; 5] = [0, 1, 2, 1, 0];

pub const OMEGA_SIZE: usize = 121;
pub const OMEGA_BAR_SIZE: usize = 242;
pub const OMEGA_HAT_SIZE: usize = 2662;
pub const OMEGA_HAT_CLASSES: [usize; 4] = [121, 1210, 1210, 121];

/// `|PGL_3(F_5)|`.
pub const PGL3_F5: usize = 372_000;

/// Family sizes `(q, d, m)`.
pub const FAMILY_SIZES: [(u64, u64, usize); 2] = [(3, 5, 2), (3, 7, 3)];
