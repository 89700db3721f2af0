//! Closed forms for the DDS crossing count `Z_k(n)` and the reference bounds
//! it is compared against. Everything is exact rational arithmetic; integral
//! results are checked, never rounded.

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

use crate::drawings::dds_page_intervals;
use crate::error::{input, Error, Result};

pub type Rational = BigRational;

fn q(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `C(n, 4)`.
pub fn binom4(n: u64) -> u64 {
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

pub(crate) fn to_u64(x: &Rational, what: &str) -> Result<u64> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Invariant(format!("{what} = {x} is not a nonnegative integer")));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Invariant(format!("{what} = {x} overflows u64")))
}

/// `f(r) = rn/2 - r^2/2 - n/2 + 1/2`: crossings between two matchings `r` apart (odd n).
pub fn f(r: u64, n: u64) -> Rational {
    let (r, n) = (r as i64, n as i64);
    frac(r * n - r * r - n + 1, 2)
}

/// `F(r, n) = -r^4/24 + n r^3/12 - n r^2/4 + 7 r^2/24 + n r/6 - r/4`,
/// equal to `sum_{l=1}^{r-1} (r - l) f(l)`.
pub fn big_f(r: u64, n: u64) -> Rational {
    let (r, n) = (q(r as i64), q(n as i64));
    let r2 = &r * &r;
    let r3 = &r2 * &r;
    let r4 = &r3 * &r;
    -r4 / q(24) + &n * r3 / q(12) - &n * &r2 / q(4) + q(7) * r2 / q(24) + &n * &r / q(6)
        - r / q(4)
}

fn check_span(i: usize, j: usize, n: usize) -> Result<()> {
    if !(i < j && j < n && 2 * (j - i) <= n) {
        return input(format!("need 0 <= i < j <= n-1 and j-i <= n/2, got i={i}, j={j}, n={n}"));
    }
    Ok(())
}

/// Crossings between `M_i` and `M_j` drawn on the same page.
pub fn cr_matchings(i: usize, j: usize, n: usize) -> Result<Rational> {
    check_span(i, j, n)?;
    let base = f((j - i) as u64, n as u64);
    Ok(match (n % 2, i % 2, j % 2) {
        (1, _, _) => base,
        (_, 1, 1) => base - frac(1, 2),
        (_, 0, 0) => base + frac(1, 2),
        _ => base,
    })
}

/// Crossings among all edges of `M_s ∪ ... ∪ M_t` drawn on one page.
pub fn cr_collection(s: usize, t: usize, n: usize) -> Result<Rational> {
    check_span(s, t, n)?;
    let base = big_f((t - s + 1) as u64, n as u64);
    let shift = frac((t - s) as i64, 4);
    Ok(match (n % 2, s % 2, t % 2) {
        (1, _, _) => base,
        (_, 0, 0) => base + shift,
        (_, 1, 1) => base - shift,
        _ => base,
    })
}

/// `Z_k(n) = (n mod k) F(n/k + 1, n) + (k - n mod k) F(n/k, n)`.
pub fn z_k(n: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return input("z_k needs k >= 1");
    }
    let val = if k == 1 {
        big_f(n, n)
    } else {
        let (p, r) = (n / k, n % k);
        q(r as i64) * big_f(p + 1, n) + q((k - r) as i64) * big_f(p, n)
    };
    to_u64(&val, &format!("Z_{k}({n})"))
}

/// `Z_k(n)` as the sum of per-page collection counts of the DDS drawing (k >= 2).
pub fn z_k_by_pages(n: usize, k: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for (s, t) in dds_page_intervals(n, k).into_iter().flatten() {
        if t > s {
            total += cr_collection(s, t, n)?;
        }
    }
    Ok(total)
}

fn series_inverse_cube(step: usize, len: usize) -> Vec<i128> {
    // 1/(1 - z^step)^3 = sum_m C(m+2, 2) z^{m step}
    let mut out = vec![0i128; len];
    let mut m = 0usize;
    while m * step < len {
        let mm = m as i128;
        out[m * step] = (mm + 1) * (mm + 2) / 2;
        m += 1;
    }
    out
}

fn mul_truncated(a: &[i128], b: &[i128]) -> Vec<i128> {
    let len = a.len();
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b[..len - i].iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients `z^0 .. z^N` of
/// `G_k(z) = z^{2k+1} ((k-2)(1-z) + 1 - z^{k+1}) / ((1-z)^3 (1-z^k)^3)`.
pub fn genfunc_coeffs(k: usize, big_n: usize) -> Result<Vec<i128>> {
    if k == 0 {
        return input("genfunc_coeffs needs k >= 1");
    }
    let len = big_n + 1;
    let mut num = vec![0i128; len];
    let shift = 2 * k + 1;
    let kk = k as i128;
    // z^{2k+1} [ (k-1) - (k-2) z - z^{k+1} ]
    for (off, c) in [(0, kk - 1), (1, -(kk - 2)), (k + 1, -1)] {
        if shift + off < len {
            num[shift + off] += c;
        }
    }
    let series = mul_truncated(&num, &series_inverse_cube(1, len));
    Ok(mul_truncated(&series, &series_inverse_cube(k, len)))
}

/// Three-case closed form of `Z_3(n)` by `n mod 3`.
pub fn z3_piecewise(n: u64) -> Result<u64> {
    if n == 0 {
        return input("z3_piecewise needs n >= 1");
    }
    let m = n as i128;
    let numer = match n % 3 {
        0 => (m - 6) * (m - 3) * m * (5 * m - 9),
        1 => (m - 4) * (m - 1) * (5 * m * m - 29 * m + 30),
        _ => (m - 2) * (m - 3) * (m - 5) * (5 * m - 4),
    };
    if numer < 0 || numer % 648 != 0 {
        return Err(Error::Invariant(format!("Z_3({n}) numerator {numer} not divisible by 648")));
    }
    Ok((numer / 648) as u64)
}

/// `Z_k(n)` for `k | n` as the explicit quartic in `n`.
pub fn zk_divisible_poly(n: u64, k: u64) -> Result<u64> {
    if k == 0 || !n.is_multiple_of(k) {
        return input(format!("zk_divisible_poly needs k | n, got n={n}, k={k}"));
    }
    let (nn, kk) = (q(n as i64), q(k as i64));
    let n2 = &nn * &nn;
    let n3 = &n2 * &nn;
    let n4 = &n3 * &nn;
    let c4 = (q(1) / (q(12) * &kk * &kk)) * (q(1) - q(1) / (q(2) * &kk));
    let val = c4 * n4 - n3 / (q(4) * &kk) + (q(7) / (q(24) * &kk) + frac(1, 6)) * n2 - nn / q(4);
    to_u64(&val, &format!("quartic Z_{k}({n})"))
}

/// `k r Z_k(kr - 1) == (kr - 4) Z_k(kr)`.
pub fn odd_even_identity(k: u64, r: u64) -> Result<bool> {
    if k == 0 || r == 0 {
        return input("odd_even_identity needs k, r >= 1");
    }
    let kr = (k * r) as i128;
    let lhs = kr * z_k(k * r - 1, k)? as i128;
    let rhs = (kr - 4) * z_k(k * r, k)? as i128;
    Ok(lhs == rhs)
}

/// `Z_2(n) = (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`.
pub fn z2_closed(n: u64) -> u64 {
    if n < 4 {
        return 0;
    }
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

/// A previously published lower bound on `nu_k(K_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorLowerBound {
    /// Coefficient `c` of `c * C(n, 4)`.
    pub ratio: Rational,
    /// `ratio * C(n, 4)` when `n` is in range, else 0.
    pub value: Rational,
    pub in_range: bool,
    /// Only the leading term is known (k = 4: an `O(n^3)` correction is dropped).
    pub leading_term_only: bool,
}

/// Leading coefficient of the prior lower bound as `n -> infinity`.
pub fn prior_lower_ratio(k: u64) -> Result<Rational> {
    if k < 3 {
        return input(format!("prior lower bound is stated for k >= 3, got {k}"));
    }
    let kk = k as i64;
    Ok(if k == 4 {
        frac(3, 119)
    } else if k.is_multiple_of(2) {
        frac(2, (3 * kk - 2) * (3 * kk - 2))
    } else {
        frac(2, (3 * kk + 1) * (3 * kk + 1))
    })
}

pub fn prior_lower_bound(k: u64, n: u64) -> Result<PriorLowerBound> {
    let ratio = prior_lower_ratio(k)?;
    let nn = n as i64;
    let kk = k as i64;
    let in_range = if k == 4 {
        true
    } else if k.is_multiple_of(2) {
        // n >= k^2/2 + 3k - 1
        2 * nn >= kk * kk + 6 * kk - 2
    } else {
        // n >= k^2 + 2k - 7/2
        2 * nn >= 2 * kk * kk + 4 * kk - 7
    };
    let value = if in_range { &ratio * q(binom4(n) as i64) } else { Rational::zero() };
    Ok(PriorLowerBound { ratio, value, in_range, leading_term_only: k == 4 })
}

/// The explicit `nu_4(K_n) >= n^4 / 952` alternative for four pages.
pub fn prior_lower_bound_k4_quartic(n: u64) -> Rational {
    let nn = q(n as i64);
    (&nn * &nn * &nn * &nn) / q(952)
}

/// `(2/k^2)(1 - 1/(2k))`: leading coefficient of both the DDS count and the prior upper bound.
pub fn dds_limit_ratio(k: u64) -> Rational {
    let kk = q(k as i64);
    (q(2) / (&kk * &kk)) * (q(1) - q(1) / (q(2) * kk))
}

/// `(2/k^2)(1 - 1/(2k)) C(n,4) + n^3 / (2k)`.
pub fn prior_upper_bound(k: u64, n: u64) -> Result<Rational> {
    if k == 0 {
        return input("prior upper bound needs k >= 1");
    }
    let nn = q(n as i64);
    Ok(dds_limit_ratio(k) * q(binom4(n) as i64) + &nn * &nn * &nn / q(2 * k as i64))
}

/// Rational to f64, for reporting only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
