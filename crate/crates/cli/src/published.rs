//! Published values of the constant-term comparison table.

/// Growth rate and constant `(mantissa, exponent)` of one family at one `k`.
pub struct Cell {
    pub growth: &'static str,
    pub mantissa: f64,
    pub exponent: i32,
}

/// `(k, unary height <= k, binding length <= k)`.
#[rustfmt::skip]
pub const TABLE_2: [(u64, Cell, Cell); 13] = [
    (1, Cell { growth: "2", mantissa: 2.42613, exponent: -1 }, Cell { growth: "3", mantissa: 2.1851, exponent: -1 }),
    (2, Cell { growth: "2.90867", mantissa: 5.20859, exponent: -1 }, Cell { growth: "3.82843", mantissa: 8.66674, exponent: -2 }),
    (3, Cell { growth: "3.62279", mantissa: 2.31818, exponent: -1 }, Cell { growth: "4.4641", mantissa: 2.45664, exponent: -2 }),
    (4, Cell { growth: "4.21545", mantissa: 8.38137, exponent: -2 }, Cell { growth: "5", mantissa: 5.77152, exponent: -3 }),
    (5, Cell { growth: "4.73046", mantissa: 2.65937, exponent: -2 }, Cell { growth: "5.47214", mantissa: 1.1921, exponent: -3 }),
    (6, Cell { growth: "5.19117", mantissa: 7.9582, exponent: -3 }, Cell { growth: "5.89898", mantissa: 2.23117, exponent: -4 }),
    (7, Cell { growth: "5.61139", mantissa: 2.5262, exponent: -3 }, Cell { growth: "6.2915", mantissa: 3.85385, exponent: -5 }),
    (8, Cell { growth: "6", mantissa: 9.31888, exponent: -5 }, Cell { growth: "6.65685", mantissa: 6.21966, exponent: -6 }),
    (9, Cell { growth: "6.36386", mantissa: 1.56532, exponent: -4 }, Cell { growth: "7", mantissa: 9.46315, exponent: -7 }),
    (10, Cell { growth: "6.70758", mantissa: 1.99134, exponent: -5 }, Cell { growth: "7.32456", mantissa: 1.36666, exponent: -7 }),
    (133, Cell { growth: "23.8258", mantissa: 2.16482, exponent: -152 }, Cell { growth: "24.0651", mantissa: 2.55075, exponent: -157 }),
    (134, Cell { growth: "23.9131", mantissa: 1.30921, exponent: -153 }, Cell { growth: "24.1517", mantissa: 1.06018, exponent: -158 }),
    (135, Cell { growth: "24", mantissa: 8.56995, exponent: -157 }, Cell { growth: "24.2379", mantissa: 4.3907, exponent: -160 }),
];

pub fn lookup(k: u64) -> Option<(&'static Cell, &'static Cell)> {
    TABLE_2.iter().find(|(kk, _, _)| *kk == k).map(|(_, a, b)| (a, b))
}
