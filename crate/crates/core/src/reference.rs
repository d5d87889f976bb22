//! Published face counts the constructions are checked against.

/// `f(X^n)` for `n = 1..=4`.
pub const SPHERE_PRODUCT_F: [&[u64]; 4] = [
    &[3, 3, 2],
    &[9, 27, 58, 60, 24],
    &[27, 189, 926, 2460, 3504, 2520, 720],
    &[
        81, 1215, 12130, 64860, 194280, 337680, 338400, 181440, 40320,
    ],
];

/// `f(T_n)` for `n = 1..=4`, `T_n = X^n / Sym(n)`.
pub const CPN_F: [&[u64]; 4] = [
    &[3, 3, 2],
    &[6, 15, 30, 30, 12],
    &[10, 46, 184, 440, 596, 420, 120],
    &[15, 111, 764, 3345, 8982, 14700, 14280, 7560, 1680],
];

/// `f((T_n)')` for `n = 1..=4`.
pub const CPN_DERIVED_F: [&[u64]; 4] = [
    &[8, 18, 12],
    &[93, 990, 3060, 3600, 1440],
    &[1816, 66396, 549864, 1816800, 2843520, 2116800, 604800],
    &[
        51437, 5808816, 109509744, 767035800, 2621323440, 4874990400, 5050684800, 2743372800,
        609638400,
    ],
];

pub fn sphere_product_f(n: usize) -> Option<&'static [u64]> {
    SPHERE_PRODUCT_F.get(n.checked_sub(1)?).copied()
}

pub fn cpn_f(n: usize) -> Option<&'static [u64]> {
    CPN_F.get(n.checked_sub(1)?).copied()
}

pub fn cpn_derived_f(n: usize) -> Option<&'static [u64]> {
    CPN_DERIVED_F.get(n.checked_sub(1)?).copied()
}

/// Betti numbers of `(S^2)^n`: `C(n, k)` in degree `2k`.
pub fn sphere_product_betti(n: usize) -> Vec<u64> {
    let mut out = vec![0u64; 2 * n + 1];
    let mut binom = 1u64;
    for k in 0..=n {
        out[2 * k] = binom;
        binom = binom * (n - k) as u64 / (k + 1) as u64;
    }
    out
}

/// Betti numbers of `CP^n`: one in every even degree.
pub fn cpn_betti(n: usize) -> Vec<u64> {
    (0..=2 * n).map(|k| u64::from(k % 2 == 0)).collect()
}
