//! Kontsevich-Zagier style q-series and U-series for double twist and
//! torus knots, evaluated exactly.
//!
//! Root-of-unity values live in `Z[q]/(q^N - 1)`: an identity valid at
//! every `N`th root of unity is exactly a congruence mod `q^N - 1`, so no
//! complex floating point is ever involved. The nominally infinite sums
//! truncate exactly there because `(q)_n = 0 mod q^N - 1` once `n >= N`.
//! Series-mode values are Laurent polynomials exact through `q^M`.

use crate::chains::sum_over_chains;
use crate::jones::cyclotomic_side;
use crate::qcomb::{pochhammer, qbinomial, tri, MonomialUnit};
use crate::signs::{beta, delta, epsilon, gamma};
use crate::{Error, Int, LaurentPolynomial, QuotientElement, Result};

/// Evaluation regime for the U-type series.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Exact value in `Z[q]/(q^N - 1)`; requires `x = -1`.
    RootOfUnity(u32),
    /// Power series, coefficients of `q^0 ... q^M` exact.
    Series(u32),
}

/// Result of a mode-dependent evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValue {
    Root(QuotientElement),
    Series(LaurentPolynomial),
}

impl SeriesValue {
    pub fn unwrap_root(self) -> QuotientElement {
        match self {
            SeriesValue::Root(v) => v,
            SeriesValue::Series(_) => panic!("expected a root-of-unity value"),
        }
    }

    pub fn unwrap_series(self) -> LaurentPolynomial {
        match self {
            SeriesValue::Series(v) => v,
            SeriesValue::Root(_) => panic!("expected a series value"),
        }
    }
}

fn check_mode(mode: EvalMode, x: MonomialUnit) -> Result<()> {
    match mode {
        EvalMode::RootOfUnity(n) => {
            if n == 0 {
                return Err(Error::InvalidParameter("N must be >= 1".into()));
            }
            if x != MonomialUnit::minus_one() {
                return Err(Error::InvalidParameter(format!(
                    "root-of-unity evaluation is only defined at x = -1, got x = {x}"
                )));
            }
        }
        EvalMode::Series(_) => {
            if x.exponent < 0 {
                return Err(Error::InvalidParameter(format!(
                    "series mode needs x = ±q^e with e >= 0, got x = {x}"
                )));
            }
        }
    }
    Ok(())
}

/// Outer truncation bound that loses nothing below `q^{M+1}`: the `n`th
/// term carries `q^n` times factors whose minimal exponent is at least
/// `-(e-1)^2` (only the `(-x^{-1}q)_n` factor can dip below zero, by at
/// most `e-1` factors of size at most `e-1` each).
fn series_outer_bound(order: u32, x: MonomialUnit) -> i64 {
    let slack = (x.exponent - 1).max(0);
    order as i64 + slack * slack
}

/// The generalized Kontsevich-Zagier function for parameter signs `(-,-)`,
/// in `Z[q]/(q^N - 1)`.
pub fn f_mp(m: u32, p: u32, n_colors: u32) -> Result<QuotientElement> {
    assert!(m >= 1 && p >= 1);
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    f_mp_truncated(m, p, n_colors, n_colors as i64 - 1)?.reduce_mod_qn(n_colors)
}

fn f_mp_truncated(m: u32, p: u32, _n: u32, bound: i64) -> Result<LaurentPolynomial> {
    let len = (2 * m * p - 1) as usize;
    let mut pair = vec![vec![0i64; len + 1]; len + 1];
    for i in 1..len {
        pair[i][i + 1] -= 1;
    }
    for i in 1..=len as u32 {
        if i % m == 0 {
            continue;
        }
        for j in i + 1..=len as u32 {
            pair[i as usize][j as usize] += epsilon(i, j, m)? as i64;
        }
    }
    let gamma_v: Vec<i64> = (1..len as u32).map(|i| gamma(i, m) as i64).collect();
    let mut total = sum_over_chains(len, bound, |c| {
        let at = |s: usize| c[s - 1];
        let top = at(len);
        let mut exp = -tri(top);
        let mut parity = top;
        // indexed on purpose: i, j are the formula's 1-based chain positions
        #[allow(clippy::needless_range_loop)]
        for i in 1..=len {
            let ci = at(i);
            if ci == 0 {
                continue;
            }
            for j in i + 1..=len {
                exp += pair[i][j] * ci * at(j);
            }
        }
        for i in 1..=(2 * p - 1) as i64 {
            let v = at((m as i64 * i) as usize);
            parity += v;
            exp += tri(v);
        }
        for i in 1..len {
            exp += gamma_v[i - 1] * at(i);
        }
        let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1), top as u32);
        for i in 1..len {
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, parity % 2 != 0);
        acc
    });
    total.mul_monomial_assign(1, false);
    Ok(total)
}

/// The generalized U-function for parameter signs `(+,+)`.
pub fn u_mp(m: u32, p: u32, x: MonomialUnit, mode: EvalMode) -> Result<SeriesValue> {
    assert!(m >= 1 && p >= 1);
    check_mode(mode, x)?;
    let bound = match mode {
        EvalMode::RootOfUnity(n) => n as i64 - 1,
        EvalMode::Series(order) => series_outer_bound(order, x),
    };
    let mut total = LaurentPolynomial::zero();
    for n in 0..=bound {
        let mut outer = &pochhammer::<Int>(x.neg_times_q(), n as u32)
            * &pochhammer::<Int>(x.inverse().neg_times_q(), n as u32);
        outer.mul_monomial_assign(n, false);
        let term =
            &(&outer * &cyclotomic_side(m, n, false)) * &cyclotomic_side(p, n, false);
        total = &total + &term;
    }
    Ok(match mode {
        EvalMode::RootOfUnity(n) => SeriesValue::Root(total.reduce_mod_qn(n)?),
        EvalMode::Series(order) => SeriesValue::Series(total.truncate_above(order as i64)),
    })
}

/// The `(-,+)` analogue of `f_mp`, defined only at roots of unity.
pub fn cal_f_mp(m: u32, p: u32, n_colors: u32) -> Result<QuotientElement> {
    assert!(m >= 1 && p >= 1);
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    cal_f_truncated(m, p, n_colors as i64 - 1)?.reduce_mod_qn(n_colors)
}

fn cal_f_truncated(m: u32, p: u32, bound: i64) -> Result<LaurentPolynomial> {
    let len = (2 * m * p) as usize;
    let mut pair = vec![vec![0i64; len + 1]; len + 1];
    for i in 1..=len as u32 {
        if i % m == 0 {
            continue;
        }
        for j in i + 1..=len as u32 {
            pair[i as usize][j as usize] += delta(i, j, m)? as i64;
        }
    }
    let beta_v: Vec<i64> = (1..len as u32).map(|i| beta(i, m) as i64).collect();
    Ok(sum_over_chains(len, bound, |c| {
        let at = |s: usize| c[s - 1];
        let top = at(len);
        let mut exp = -tri(top);
        let mut parity = top;
        // indexed on purpose: i, j are the formula's 1-based chain positions
        #[allow(clippy::needless_range_loop)]
        for i in 1..=len {
            let ci = at(i);
            if ci == 0 {
                continue;
            }
            for j in i + 1..=len {
                exp += pair[i][j] * ci * at(j);
            }
        }
        for i in 1..=(2 * p - 1) as i64 {
            let v = at((m as i64 * i) as usize);
            parity += v;
            exp += tri(v);
        }
        for i in 1..len {
            exp += beta_v[i - 1] * at(i);
        }
        let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1), top as u32);
        for i in 1..len {
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, parity % 2 != 0);
        acc
    }))
}

/// The `(+,-)` analogue of `u_mp`, defined only at roots of unity and only
/// at `x = -1`.
pub fn cal_u_mp(m: u32, p: u32, x: MonomialUnit, n_colors: u32) -> Result<QuotientElement> {
    assert!(m >= 1 && p >= 1);
    check_mode(EvalMode::RootOfUnity(n_colors), x)?;
    let mut total = LaurentPolynomial::zero();
    for n in 0..n_colors as i64 {
        let mut outer = &pochhammer::<Int>(x.neg_times_q(), n as u32)
            * &pochhammer::<Int>(x.inverse().neg_times_q(), n as u32);
        outer.mul_monomial_assign(-tri(n), n % 2 != 0);
        let term =
            &(&outer * &cyclotomic_side(m, n, false)) * &cyclotomic_side(p, n, true);
        total = &total + &term;
    }
    total.reduce_mod_qn(n_colors)
}

/// The torus-knot Kontsevich-Zagier function, at a root of unity.
pub fn f_t_torus(t: u32, n_colors: u32) -> Result<QuotientElement> {
    assert!(t >= 1);
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    f_t_truncated(t, n_colors as i64 - 1).reduce_mod_qn(n_colors)
}

fn f_t_truncated(t: u32, bound: i64) -> LaurentPolynomial {
    let len = t as usize;
    let mut total = sum_over_chains(len, bound, |k| {
        let at = |i: usize| k[i - 1];
        let mut exp = 0i64;
        let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1), at(len) as u32);
        for i in 1..len {
            exp += at(i) * (at(i) + 1);
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, false);
        acc
    });
    total.mul_monomial_assign(t as i64, false);
    total
}

/// The torus-knot U-function. Chains here start at 1 and use the shifted
/// binomial `[k_{i+1} + k_i - i + 2(k_1 + ... + k_{i-1}), k_{i+1} - k_i]`.
pub fn u_t_torus(t: u32, x: MonomialUnit, mode: EvalMode) -> Result<SeriesValue> {
    assert!(t >= 1);
    check_mode(mode, x)?;
    // Root mode: the term with k_t - 1 >= N dies mod q^N - 1, so k_t <= N.
    // Series mode: the monomial part q^{k_t + sum k_i^2} alone reaches
    // exponent k_t, minus the usual slack for x = q^e with e > 1, and the
    // q^{-t} prefactor shifts everything down by t.
    let top_max = match mode {
        EvalMode::RootOfUnity(n) => n as i64,
        EvalMode::Series(order) => series_outer_bound(order, x) + t as i64,
    };
    let len = t as usize;
    // shift chains by one so every entry is >= 1
    let mut total = sum_over_chains(len, top_max - 1, |c| {
        let at = |i: usize| c[i - 1] + 1;
        let top = at(len);
        let mut outer = &pochhammer::<Int>(x.neg_times_q(), (top - 1) as u32)
            * &pochhammer::<Int>(x.inverse().neg_times_q(), (top - 1) as u32);
        if outer.is_zero() {
            return outer;
        }
        let mut exp = top;
        let mut prefix = 0i64;
        for i in 1..len {
            exp += at(i) * at(i);
            outer = &outer
                * &*qbinomial(at(i + 1) + at(i) - i as i64 + 2 * prefix, at(i + 1) - at(i));
            prefix += at(i);
        }
        outer.mul_monomial_assign(exp, false);
        outer
    });
    total.mul_monomial_assign(-(t as i64), false);
    Ok(match mode {
        EvalMode::RootOfUnity(n) => SeriesValue::Root(total.reduce_mod_qn(n)?),
        EvalMode::Series(order) => SeriesValue::Series(total.truncate_above(order as i64)),
    })
}

/// The base Kontsevich-Zagier series `sum_n (q)_n` at a root of unity.
pub fn kz_f(n_colors: u32) -> Result<QuotientElement> {
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let mut total = LaurentPolynomial::zero();
    for n in 0..n_colors {
        total = &total + &pochhammer::<Int>(MonomialUnit::q_pow(1), n);
    }
    total.reduce_mod_qn(n_colors)
}

/// The base U-series `sum_n (-xq)_n (-x^{-1}q)_n q^{n+1}`; at `x = +1` its
/// coefficients count strongly unimodal sequences by weight.
pub fn u_base(x: MonomialUnit, mode: EvalMode) -> Result<SeriesValue> {
    check_mode(mode, x)?;
    let bound = match mode {
        EvalMode::RootOfUnity(n) => n as i64 - 1,
        EvalMode::Series(order) => series_outer_bound(order, x),
    };
    let mut total = LaurentPolynomial::zero();
    for n in 0..=bound {
        let mut term = &pochhammer::<Int>(x.neg_times_q(), n as u32)
            * &pochhammer::<Int>(x.inverse().neg_times_q(), n as u32);
        term.mul_monomial_assign(n + 1, false);
        total = &total + &term;
    }
    Ok(match mode {
        EvalMode::RootOfUnity(n) => SeriesValue::Root(total.reduce_mod_qn(n)?),
        EvalMode::Series(order) => SeriesValue::Series(total.truncate_above(order as i64)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_one() -> MonomialUnit {
        MonomialUnit::minus_one()
    }

    #[test]
    fn kz_small_values() {
        assert_eq!(kz_f(1).unwrap().to_string(), "[1]");
        assert_eq!(kz_f(2).unwrap().to_string(), "[2,-1]");
    }

    #[test]
    fn f_mp_base_case_is_q_times_kz() {
        for n in 1..=6u32 {
            let base = {
                let mut total = LaurentPolynomial::zero();
                for k in 0..n {
                    total = &total + &pochhammer::<Int>(MonomialUnit::q_pow(1), k);
                }
                total.mul_monomial_assign(1, false);
                total.reduce_mod_qn(n).unwrap()
            };
            assert_eq!(f_mp(1, 1, n).unwrap(), base, "N={n}");
        }
    }

    #[test]
    fn u_mp_base_case_is_u_over_q() {
        // U_{1,1}(x;q) = q^{-1} U(x;q), checked in series mode at x = -1
        // and x = +1.
        for x in [MonomialUnit::minus_one(), MonomialUnit::one()] {
            let lhs = u_mp(1, 1, x, EvalMode::Series(9)).unwrap().unwrap_series();
            let mut rhs = u_base(x, EvalMode::Series(10)).unwrap().unwrap_series();
            rhs.mul_monomial_assign(-1, false);
            assert_eq!(lhs, rhs.truncate_above(9), "x={x}");
        }
    }

    #[test]
    fn u_base_series_hand_expansion() {
        // sum (q)_n^2 q^{n+1} = q + q^2 - q^3 + ...: the q^3 coefficient
        // collects -2 from n=1 and +1 from n=2.
        let got = u_base(minus_one(), EvalMode::Series(3)).unwrap().unwrap_series();
        let expect = LaurentPolynomial::from_pairs(vec![
            (1, Int::from(1)),
            (2, Int::from(1)),
            (3, Int::from(-1)),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn classical_duality() {
        // F(1/zeta) = U(-1; zeta) as the index-reversal congruence.
        for n in 1..=8u32 {
            let f = kz_f(n).unwrap();
            let u = u_base(minus_one(), EvalMode::RootOfUnity(n))
                .unwrap()
                .unwrap_root();
            assert_eq!(f.index_reversal(), u, "N={n}");
        }
    }

    #[test]
    fn generalized_duality_small() {
        for (m, p) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for n in 1..=4u32 {
                let f = f_mp(m, p, n).unwrap();
                let u = u_mp(m, p, minus_one(), EvalMode::RootOfUnity(n))
                    .unwrap()
                    .unwrap_root();
                assert_eq!(f, u.index_reversal(), "F m={m} p={p} N={n}");
                let cf = cal_f_mp(m, p, n).unwrap();
                let cu = cal_u_mp(m, p, minus_one(), n).unwrap();
                assert_eq!(cf, cu.index_reversal(), "calF m={m} p={p} N={n}");
            }
        }
    }

    #[test]
    fn torus_base_cases() {
        for n in 1..=5u32 {
            assert_eq!(f_t_torus(1, n).unwrap(), f_mp(1, 1, n).unwrap(), "N={n}");
            assert_eq!(
                u_t_torus(1, minus_one(), EvalMode::RootOfUnity(n)).unwrap(),
                u_mp(1, 1, minus_one(), EvalMode::RootOfUnity(n)).unwrap(),
                "N={n}"
            );
        }
        let lhs = u_t_torus(1, minus_one(), EvalMode::Series(8))
            .unwrap()
            .unwrap_series();
        let rhs = u_mp(1, 1, minus_one(), EvalMode::Series(8))
            .unwrap()
            .unwrap_series();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torus_duality_small() {
        for t in 1..=3u32 {
            for n in 1..=4u32 {
                let f = f_t_torus(t, n).unwrap();
                let u = u_t_torus(t, minus_one(), EvalMode::RootOfUnity(n))
                    .unwrap()
                    .unwrap_root();
                assert_eq!(f, u.index_reversal(), "t={t} N={n}");
            }
        }
    }

    #[test]
    fn u_t_series_minimal_chain() {
        // t=2: the smallest chain k = (1,1) contributes
        // q^{-2} q^{1+1} [1+1-1+0, 0] = q^0, so the series starts at 1.
        let s = u_t_torus(2, minus_one(), EvalMode::Series(10))
            .unwrap()
            .unwrap_series();
        assert_eq!(s.coefficient(0), Int::from(1));
        assert_eq!(s.min_exponent(), Some(0));
    }

    #[test]
    fn root_mode_rejects_other_x() {
        assert!(u_mp(1, 1, MonomialUnit::one(), EvalMode::RootOfUnity(2)).is_err());
        assert!(u_base(MonomialUnit::q_pow(1), EvalMode::RootOfUnity(3)).is_err());
        assert!(cal_u_mp(1, 1, MonomialUnit::one(), 2).is_err());
        assert!(u_t_torus(2, MonomialUnit::neg_q_pow(1), EvalMode::RootOfUnity(2)).is_err());
    }

    #[test]
    fn truncation_band_is_exact() {
        // Adding one extra band beyond the documented cutoff changes nothing.
        for n in 1..=4u32 {
            let base = f_mp_truncated(2, 1, n, n as i64 - 1)
                .unwrap()
                .reduce_mod_qn(n)
                .unwrap();
            let wider = f_mp_truncated(2, 1, n, n as i64)
                .unwrap()
                .reduce_mod_qn(n)
                .unwrap();
            assert_eq!(base, wider, "f N={n}");
            let base = cal_f_truncated(1, 2, n as i64 - 1)
                .unwrap()
                .reduce_mod_qn(n)
                .unwrap();
            let wider = cal_f_truncated(1, 2, n as i64)
                .unwrap()
                .reduce_mod_qn(n)
                .unwrap();
            assert_eq!(base, wider, "calF N={n}");
            let base = f_t_truncated(2, n as i64 - 1).reduce_mod_qn(n).unwrap();
            let wider = f_t_truncated(2, n as i64).reduce_mod_qn(n).unwrap();
            assert_eq!(base, wider, "Ft N={n}");
        }
        // Series mode: widening the outer bound by one does not change the
        // reported coefficients.
        let m = 8u32;
        let narrow = u_base(MonomialUnit::one(), EvalMode::Series(m))
            .unwrap()
            .unwrap_series();
        let mut wide = LaurentPolynomial::zero();
        for n in 0..=(m as i64 + 1) {
            let x = MonomialUnit::one();
            let mut term = &pochhammer::<Int>(x.neg_times_q(), n as u32)
                * &pochhammer::<Int>(x.inverse().neg_times_q(), n as u32);
            term.mul_monomial_assign(n + 1, false);
            wide = &wide + &term;
        }
        assert_eq!(narrow, wide.truncate_above(m as i64));
    }

    #[test]
    fn trivial_n1_values() {
        assert_eq!(f_mp(2, 2, 1).unwrap().to_string(), "[1]");
        assert_eq!(cal_f_mp(2, 2, 1).unwrap().to_string(), "[1]");
        assert_eq!(f_t_torus(3, 1).unwrap().to_string(), "[1]");
    }
}
