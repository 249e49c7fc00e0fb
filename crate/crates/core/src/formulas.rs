//! Closed-form saturation numbers with their validity ranges.
//!
//! Every function returns a [`FormulaValue`] whose `value` is `None` when `n`
//! lies below the range where the closed form is proven. Arithmetic is exact
//! integer arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub value: Option<i64>,
    pub source: &'static str,
}

impl FormulaValue {
    fn new(source: &'static str, valid: bool, value: impl FnOnce() -> i64) -> FormulaValue {
        FormulaValue {
            value: valid.then(value),
            source,
        }
    }

    pub fn valid(&self) -> bool {
        self.value.is_some()
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

fn binom2(x: i64) -> i64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

fn path_order(k: usize) -> Result<i64> {
    if k < 3 {
        return Err(Error::OutOfDomain(format!("path order k = {k}, need k >= 3")));
    }
    if k > 120 {
        return Err(Error::OutOfDomain(format!("path order k = {k} overflows a_k")));
    }
    Ok(k as i64)
}

/// The threshold `a_k`.
pub fn a_k(k: usize) -> Result<i64> {
    let k = path_order(k)?;
    Ok(match k {
        3..=5 => k,
        _ if k % 2 == 0 => 3 * (1i64 << (k / 2 - 1)) - 2,
        _ => (1i64 << ((k - 1) / 2 + 1)) - 2,
    })
}

/// `sat(n, P_k)`.
pub fn sat_path(n: usize, k: usize) -> Result<FormulaValue> {
    let a = a_k(k)?;
    let (n, k) = (n as i64, k as i64);
    let source = "sat(n,P_k)";
    Ok(match k {
        3 => FormulaValue::new(source, n >= 3, || n / 2),
        4 => {
            let valid = if n % 2 == 0 { n >= 4 } else { n >= 5 };
            FormulaValue::new(source, valid, || if n % 2 == 0 { n / 2 } else { (n + 3) / 2 })
        }
        5 => FormulaValue::new(source, n >= 5, || ceil_div(5 * n - 4, 6)),
        _ => FormulaValue::new(source, n >= a, || n - floor_div(n, a)),
    })
}

/// `sat(n, K_1 ∨ P_k)`, valid for `n >= a_k + 1`.
pub fn sat_k1_path(n: usize, k: usize) -> Result<FormulaValue> {
    let a = a_k(k)?;
    let (n, k) = (n as i64, k as i64);
    Ok(FormulaValue::new("sat(n,K1vP_k)", n > a, || match k {
        3 => floor_div(3 * n - 3, 2),
        4 if n % 2 == 1 => (3 * n - 3) / 2,
        4 => 3 * n / 2,
        5 => ceil_div(11 * n - 15, 6),
        _ => 2 * n - 2 - floor_div(n - 1, a),
    }))
}

/// `sat(n, K_2 ∨ P_k)`, valid for `n >= a_k + 2`.
pub fn sat_k2_path(n: usize, k: usize) -> Result<FormulaValue> {
    let a = a_k(k)?;
    let (n, k) = (n as i64, k as i64);
    Ok(FormulaValue::new("sat(n,K2vP_k)", n >= a + 2, || match k {
        3 => floor_div(5 * n - 8, 2),
        4 if n % 2 == 1 => (5 * n - 5) / 2,
        4 => (5 * n - 8) / 2,
        5 => ceil_div(17 * n - 32, 6),
        _ => 3 * n - 5 - floor_div(n - 2, a),
    }))
}

/// `sat(n, K_p) = (p-2)(n-p+2) + C(p-2, 2)`, valid for `n >= p`.
pub fn sat_clique(n: usize, p: usize) -> Result<FormulaValue> {
    if p < 2 {
        return Err(Error::OutOfDomain(format!("clique order p = {p}, need p >= 2")));
    }
    let (n, p) = (n as i64, p as i64);
    Ok(FormulaValue::new("sat(n,K_p)", n >= p, || {
        (p - 2) * (n - p + 2) + binom2(p - 2)
    }))
}

/// 1 iff `p` is even and `n - p/2` is even.
pub fn theta(n: usize, p: usize) -> i64 {
    let (n, p) = (n as i64, p as i64);
    i64::from(p % 2 == 0 && (n - p / 2).rem_euclid(2) == 0)
}

/// Saturation number of the book `B_p` (`p` triangles on a common edge),
/// valid for `n >= p^3 + p`.
pub fn sat_book(n: usize, p: usize) -> Result<FormulaValue> {
    if p < 1 {
        return Err(Error::OutOfDomain("book needs p >= 1 pages".into()));
    }
    let th = theta(n, p);
    let (n, p) = (n as i64, p as i64);
    let threshold = p.checked_pow(3).map(|c| c + p).unwrap_or(i64::MAX);
    Ok(FormulaValue::new("sat(n,B_p)", n >= threshold, || {
        floor_div((p + 1) * (n - 1) - (p / 2) * ((p + 1) / 2) + th, 2)
    }))
}

/// 2 iff `n - t` is odd.
pub fn eta(n: usize, t: usize) -> i64 {
    if (n as i64 - t as i64).rem_euclid(2) == 1 {
        2
    } else {
        0
    }
}

/// Saturation number of `K_t - P_4`, valid for `n >= 7t - 18`.
pub fn sat_kt_minus_p4(n: usize, t: usize) -> Result<FormulaValue> {
    if t < 5 {
        return Err(Error::OutOfDomain(format!("K_t - P_4 needs t >= 5, got {t}")));
    }
    let e = eta(n, t);
    let (n, t) = (n as i64, t as i64);
    Ok(FormulaValue::new("sat(n,K_t-P4)", n >= 7 * t - 18, || {
        floor_div((2 * t - 7) * (n - t + 4), 2) + binom2(t - 4) + e
    }))
}

/// Saturation number of the generalized book `B_{3,2} = K_2 ∨ P_3`, valid for
/// `n >= 2048`. Only this specialization of the general book bound is provided.
pub fn sat_generalized_book_b3p2(n: usize) -> FormulaValue {
    let n = n as i64;
    FormulaValue::new("sat(n,B_3,2)", n >= 2048, || floor_div(5 * n - 8, 2))
}

/// The join construction bound `C(s,2) + s(n-s) + sat(n-s, P_k)`.
pub fn join_upper_bound(n: usize, s: usize, k: usize) -> Result<FormulaValue> {
    if s < 1 {
        return Err(Error::OutOfDomain("join bound needs s >= 1".into()));
    }
    path_order(k)?;
    let source = "sat(n,KsvP_k)<=";
    if n < s + k {
        return Ok(FormulaValue { value: None, source });
    }
    let inner = sat_path(n - s, k)?;
    let (ni, si) = (n as i64, s as i64);
    Ok(FormulaValue {
        value: inner.value.map(|v| binom2(si) + si * (ni - si) + v),
        source,
    })
}
