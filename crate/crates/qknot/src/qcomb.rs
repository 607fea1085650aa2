//! q-Pochhammer symbols with monomial arguments and memoized Gaussian
//! binomial coefficients.
//!
//! The first argument of every Pochhammer symbol the formulas need is a
//! signed power of `q` (`q`, `q^{1±N}`, `-xq` with `x = ±q^e`), so the
//! argument type is restricted to [`MonomialUnit`] and everything stays
//! univariate.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::laurent::{Coefficient, LaurentPoly};
use crate::LaurentPolynomial;

/// `s * q^e` with `s = ±1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MonomialUnit {
    pub sign: i8,
    pub exponent: i64,
}

impl MonomialUnit {
    pub fn q_pow(exponent: i64) -> Self {
        MonomialUnit { sign: 1, exponent }
    }

    pub fn neg_q_pow(exponent: i64) -> Self {
        MonomialUnit { sign: -1, exponent }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn minus_one() -> Self {
        Self::neg_q_pow(0)
    }

    /// `(s q^e)^{-1} = s q^{-e}`.
    pub fn inverse(self) -> Self {
        MonomialUnit { sign: self.sign, exponent: -self.exponent }
    }

    /// `-self * q`, the argument shape `(-xq)` of the U-functions.
    pub fn neg_times_q(self) -> Self {
        MonomialUnit { sign: -self.sign, exponent: self.exponent + 1 }
    }
}

impl std::fmt::Display for MonomialUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.sign, self.exponent) {
            (1, 0) => write!(f, "1"),
            (-1, 0) => write!(f, "-1"),
            (1, e) => write!(f, "q^{e}"),
            (_, e) => write!(f, "-q^{e}"),
        }
    }
}

/// `(a)_n = (a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)`; the empty product is 1.
pub fn pochhammer<C: Coefficient>(a: MonomialUnit, n: u32) -> LaurentPoly<C> {
    let mut acc = LaurentPoly::one();
    for k in 0..n as i64 {
        let factor = LaurentPoly::from_pairs(vec![
            (0, C::one()),
            (a.exponent + k, C::from(-(a.sign as i64))),
        ]);
        acc = &acc * &factor;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `n(n+1)/2`.
pub fn triangle(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// Signed triangle helper for exponent bookkeeping: `binom(v+1, 2)`.
pub fn tri(v: i64) -> i64 {
    debug_assert!(v >= 0);
    v * (v + 1) / 2
}

/// `binom(v, 2) = v(v-1)/2`, the exponent shape of the m=1 twist formula.
pub fn binom2(v: i64) -> i64 {
    debug_assert!(v >= 0);
    v * (v - 1) / 2
}

/// Memo table for Gaussian binomials, keyed by `(n, k)` and filled through
/// the Pascal-type recurrence (no polynomial division involved):
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub struct QBinomialTable {
    map: RwLock<HashMap<(u32, u32), Arc<LaurentPolynomial>>>,
    limit: Option<usize>,
}

impl QBinomialTable {
    pub fn new(limit: Option<usize>) -> Self {
        QBinomialTable { map: RwLock::new(HashMap::new()), limit }
    }

    /// `[n k]_q`; 0 when `k < 0`, `n < 0` or `k > n` (the convention that
    /// lets chain enumeration skip boundary cases).
    pub fn get(&self, n: i64, k: i64) -> Arc<LaurentPolynomial> {
        if k < 0 || n < 0 || k > n {
            return Arc::new(LaurentPolynomial::zero());
        }
        self.get_valid(n as u32, k as u32)
    }

    fn get_valid(&self, n: u32, k: u32) -> Arc<LaurentPolynomial> {
        // Symmetry keeps the table roughly half the size.
        let k = k.min(n - k);
        if k == 0 {
            return Arc::new(LaurentPolynomial::one());
        }
        if let Some(hit) = self.map.read().unwrap().get(&(n, k)) {
            return Arc::clone(hit);
        }
        let a = self.get_valid(n - 1, k - 1);
        let mut b = (*self.get_valid(n - 1, k)).clone();
        b.mul_monomial_assign(k as i64, false);
        b += &*a;
        let value = Arc::new(b);
        let mut map = self.map.write().unwrap();
        if self.limit.map(|cap| map.len() < cap).unwrap_or(true) {
            map.entry((n, k)).or_insert_with(|| Arc::clone(&value));
        }
        value
    }
}

static GLOBAL_TABLE: Lazy<QBinomialTable> = Lazy::new(|| {
    let limit = std::env::var("QKNOT_MEMO_LIMIT")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    QBinomialTable::new(limit)
});

/// Gaussian binomial `[n k]_q` from the shared memo table.
pub fn qbinomial(n: i64, k: i64) -> Arc<LaurentPolynomial> {
    GLOBAL_TABLE.get(n, k)
}
