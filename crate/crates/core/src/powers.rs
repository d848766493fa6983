//! Exact comparisons against fractional powers of `n`.

use std::cmp::Ordering;

fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

/// Compares `ca * a^p` with `cb * b^q`, exactly whenever both sides fit in
/// `u128`, otherwise through logarithms.
pub fn cmp_pow(ca: u64, a: u64, p: u32, cb: u64, b: u64, q: u32) -> Ordering {
    let lhs = checked_pow(a, p).and_then(|x| x.checked_mul(ca as u128));
    let rhs = checked_pow(b, q).and_then(|x| x.checked_mul(cb as u128));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => {
            let ln = |c: u64, x: u64, e: u32| {
                if c == 0 || (x == 0 && e > 0) {
                    f64::NEG_INFINITY
                } else {
                    (c as f64).ln() + e as f64 * (x as f64).ln()
                }
            };
            ln(ca, a, p).total_cmp(&ln(cb, b, q))
        }
    }
}

/// Largest `k` with `k^den <= n^num`, i.e. `floor(n^(num/den))`.
pub fn floor_pow_frac(n: u64, num: u32, den: u32) -> u64 {
    assert!(den > 0);
    let mut k = (n as f64).powf(num as f64 / den as f64).floor().max(0.0) as u64;
    while k > 0 && cmp_pow(1, k, den, 1, n, num) == Ordering::Greater {
        k -= 1;
    }
    while cmp_pow(1, k + 1, den, 1, n, num) != Ordering::Greater {
        k += 1;
    }
    k
}

/// `x < n^(num/den)` exactly.
pub fn lt_pow_frac(x: u64, n: u64, num: u32, den: u32) -> bool {
    cmp_pow(1, x, den, 1, n, num) == Ordering::Less
}
