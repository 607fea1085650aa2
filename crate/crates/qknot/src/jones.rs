//! Colored Jones polynomial evaluators for double twist knots.
//!
//! Four direct formulas: two cyclotomic expansions (parameter signs (+,+)
//! and (+,-)) and two hypergeometric nested sums (signs (-,-) and (-,+)).
//! `jones_any` routes an arbitrary sign pattern to a direct formula using
//! the symmetry `K(m,p) = K(p,m)`; the mirror relation
//! `J_N(K; 1/q) = J_N(K*; q)` ties the four together and is what the
//! verifier checks.
//!
//! All evaluators normalize the unknot to 1 and sum over chains bounded by
//! `N - 1`; higher bands vanish because `(q^{1-N})_n = 0` for `n >= N`.

use crate::chains::sum_over_chains;
use crate::qcomb::{binom2, pochhammer, qbinomial, tri, MonomialUnit};
use crate::signs::{beta, delta, epsilon, gamma};
use crate::takata::jones_takata;
use crate::{Error, Int, LaurentPolynomial, Result};

/// Knot selected on the command line or through the API.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    /// `K(m,p)`; both parameters nonzero, either sign.
    DoubleTwist { m: i64, p: i64 },
    /// Two-bridge knot `b(l,t)`; the computed value is for its mirror.
    TwoBridge { l: u32, t: u32 },
    /// Torus knot `T(2, 2t+1)`.
    Torus2 { t: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FormulaChoice {
    Auto,
    Cyclotomic,
    Theorem,
    Takata,
}

/// Sign selector for the twist-knot (`m = 1`) specializations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TwistSign {
    Pos,
    Neg,
}

/// One side of a cyclotomic expansion: the sum over inner chains
/// `0 <= c_1 <= ... <= c_{k-1} <= top` of the q-binomial ladder ending at
/// `top`, with per-entry exponent `c^2 + c` (positive form) or
/// `-c_j - c_{j+1} c_j` (negative form).
pub(crate) fn cyclotomic_side(k: u32, top: i64, negative: bool) -> LaurentPolynomial {
    if k <= 1 {
        return LaurentPolynomial::one();
    }
    let len = (k - 1) as usize;
    sum_over_chains(len, top, |c| {
        let at = |i: usize| if i <= len { c[i - 1] } else { top };
        let mut exp = 0i64;
        let mut acc = LaurentPolynomial::one();
        for i in 1..=len {
            exp += if negative {
                -at(i) - at(i + 1) * at(i)
            } else {
                at(i) * at(i) + at(i)
            };
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, false);
        acc
    })
}

/// `J_N(K(m,p); q)` for positive `m`, `p` by the cyclotomic expansion.
pub fn jones_cyclotomic_pp(m: u32, p: u32, n_colors: u32) -> LaurentPolynomial {
    assert!(m >= 1 && p >= 1 && n_colors >= 1);
    let big_n = n_colors as i64;
    let mut total = LaurentPolynomial::zero();
    for n in 0..big_n {
        let mut outer = &pochhammer::<Int>(MonomialUnit::q_pow(1 + big_n), n as u32)
            * &pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), n as u32);
        outer.mul_monomial_assign(n, false);
        let term = &(&outer * &cyclotomic_side(m, n, false))
            * &cyclotomic_side(p, n, false);
        total = &total + &term;
    }
    total
}

/// `J_N(K(m,-p); q)` for positive `m`, `p` by the cyclotomic expansion.
pub fn jones_cyclotomic_pm(m: u32, p: u32, n_colors: u32) -> LaurentPolynomial {
    assert!(m >= 1 && p >= 1 && n_colors >= 1);
    let big_n = n_colors as i64;
    let mut total = LaurentPolynomial::zero();
    for n in 0..big_n {
        let mut outer = &pochhammer::<Int>(MonomialUnit::q_pow(1 + big_n), n as u32)
            * &pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), n as u32);
        outer.mul_monomial_assign(-tri(n), n % 2 != 0);
        let term =
            &(&outer * &cyclotomic_side(m, n, false)) * &cyclotomic_side(p, n, true);
        total = &total + &term;
    }
    total
}

/// `J_N(K(-m,-p); q)` for positive `m`, `p`: the nested sum over chains of
/// length `2mp - 1` with epsilon pairwise couplings and gamma linear signs.
pub fn jones_thm1(m: u32, p: u32, n_colors: u32) -> LaurentPolynomial {
    assert!(m >= 1 && p >= 1 && n_colors >= 1);
    let len = (2 * m * p - 1) as usize;
    let big_n = n_colors as i64;

    // Fold the epsilon couplings and the adjacent -n_i n_{i+1} into one
    // upper-triangular integer matrix so the per-chain pass is a plain
    // double loop.
    let mut pair = vec![vec![0i64; len + 1]; len + 1];
    for i in 1..len {
        pair[i][i + 1] -= 1;
    }
    for i in 1..=len as u32 {
        if i % m == 0 {
            continue;
        }
        for j in i + 1..=len as u32 {
            pair[i as usize][j as usize] += epsilon(i, j, m).unwrap() as i64;
        }
    }
    let gamma_v: Vec<i64> = (1..len as u32).map(|i| gamma(i, m) as i64).collect();

    let mut total = sum_over_chains(len, big_n - 1, |c| {
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
            exp += if i % 2 == 0 { big_n * v } else { -big_n * v };
            exp += tri(v);
        }
        for i in 1..len {
            exp += gamma_v[i - 1] * at(i);
        }
        let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), top as u32);
        for i in 1..len {
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, parity % 2 != 0);
        acc
    });
    total.mul_monomial_assign(1 - big_n, false);
    total
}

/// `J_N(K(-m,p); q)` for positive `m`, `p`: chains of length `2mp` with
/// Delta pairwise couplings and beta linear signs.
pub fn jones_thm2(m: u32, p: u32, n_colors: u32) -> LaurentPolynomial {
    assert!(m >= 1 && p >= 1 && n_colors >= 1);
    let len = (2 * m * p) as usize;
    let big_n = n_colors as i64;

    let mut pair = vec![vec![0i64; len + 1]; len + 1];
    for i in 1..=len as u32 {
        if i % m == 0 {
            continue;
        }
        for j in i + 1..=len as u32 {
            pair[i as usize][j as usize] += delta(i, j, m).unwrap() as i64;
        }
    }
    let beta_v: Vec<i64> = (1..len as u32).map(|i| beta(i, m) as i64).collect();

    sum_over_chains(len, big_n - 1, |c| {
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
            exp += if i % 2 == 0 { -big_n * v } else { big_n * v };
            exp += tri(v);
        }
        for i in 1..len {
            exp += beta_v[i - 1] * at(i);
        }
        let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), top as u32);
        for i in 1..len {
            acc = &acc * &*qbinomial(at(i + 1), at(i));
        }
        acc.mul_monomial_assign(exp, parity % 2 != 0);
        acc
    })
}

/// Literal transcription of the `m = 1` twist-knot specializations.
/// `Pos` gives `J_N(K*_{p>0}; q)` and must agree with `jones_thm1(1,p,N)`;
/// `Neg` gives `J_N(K*_{p<0}; q)` and must agree with `jones_thm2(1,p,N)`.
pub fn jones_twist_m1(sign: TwistSign, p: u32, n_colors: u32) -> LaurentPolynomial {
    assert!(p >= 1 && n_colors >= 1);
    let big_n = n_colors as i64;
    match sign {
        TwistSign::Pos => {
            let len = (2 * p - 1) as usize;
            let mut total = sum_over_chains(len, big_n - 1, |c| {
                let at = |s: usize| c[s - 1];
                let top = at(len);
                let mut exp = -big_n * top;
                let mut parity = 0i64;
                for i in 1..len {
                    let v = at(i);
                    parity += v;
                    exp += if i % 2 == 0 { big_n * v } else { -big_n * v };
                    exp += binom2(v) - v * at(i + 1);
                }
                let mut acc =
                    pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), top as u32);
                for i in 1..len {
                    acc = &acc * &*qbinomial(at(i + 1), at(i));
                }
                acc.mul_monomial_assign(exp, parity % 2 != 0);
                acc
            });
            total.mul_monomial_assign(1 - big_n, false);
            total
        }
        TwistSign::Neg => {
            let len = (2 * p) as usize;
            sum_over_chains(len, big_n - 1, |c| {
                let at = |s: usize| c[s - 1];
                let top = at(len);
                let mut exp = -tri(top);
                let mut parity = top;
                for i in 1..len {
                    let v = at(i);
                    parity += v;
                    exp += if i % 2 == 0 { -big_n * v } else { big_n * v };
                    exp += tri(v);
                }
                let mut acc =
                    pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), top as u32);
                for i in 1..len {
                    acc = &acc * &*qbinomial(at(i + 1), at(i));
                }
                acc.mul_monomial_assign(exp, parity % 2 != 0);
                acc
            })
        }
    }
}

/// The two worked examples with `m > 1`, transcribed exactly as displayed
/// (independent of the sign-function machinery above).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DisplayExample {
    /// `K(-2,-2)`, chains of length 7.
    Km2m2,
    /// `K(-3,1)`, chains of length 6.
    Km3p1,
}

pub fn jones_display_example(which: DisplayExample, n_colors: u32) -> LaurentPolynomial {
    assert!(n_colors >= 1);
    let big_n = n_colors as i64;
    match which {
        DisplayExample::Km2m2 => {
            let mut total = sum_over_chains(7, big_n - 1, |c| {
                let n = |s: usize| c[s - 1];
                let parity = n(2) + n(4) + n(6) + n(7);
                let exp = big_n * (-n(2) + n(4) - n(6)) - tri(n(7))
                    + tri(n(6))
                    + tri(n(4))
                    + tri(n(2))
                    + n(1) * (n(3) - n(4) - n(5) + n(6) + n(7))
                    + n(3) * (n(5) - n(6) - n(7))
                    + n(5) * n(7)
                    - n(2) * n(3)
                    - n(4) * n(5)
                    - n(6) * n(7)
                    + n(1)
                    - n(2)
                    - n(3)
                    - n(4)
                    + n(5)
                    - n(6);
                let mut acc =
                    pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), n(7) as u32);
                for i in 1..7 {
                    acc = &acc * &*qbinomial(n(i + 1), n(i));
                }
                acc.mul_monomial_assign(exp, parity % 2 != 0);
                acc
            });
            total.mul_monomial_assign(1 - big_n, false);
            total
        }
        DisplayExample::Km3p1 => sum_over_chains(6, big_n - 1, |c| {
            let n = |s: usize| c[s - 1];
            let parity = n(3) + n(6);
            let exp = big_n * n(3) - tri(n(6)) + tri(n(3))
                + n(1) * (-n(2) + n(5) + n(6))
                + n(2) * (-n(3) + n(4) + n(5))
                - n(4) * n(5)
                - n(5) * n(6)
                + n(1)
                + n(2)
                - n(4)
                - n(5);
            let mut acc = pochhammer::<Int>(MonomialUnit::q_pow(1 - big_n), n(6) as u32);
            for i in 1..6 {
                acc = &acc * &*qbinomial(n(i + 1), n(i));
            }
            acc.mul_monomial_assign(exp, parity % 2 != 0);
            acc
        }),
    }
}

fn no_formula(formula: FormulaChoice, m: i64, p: i64) -> Error {
    Error::InvalidParameter(format!(
        "no {formula:?} formula applies to K({m},{p}); use Auto to route through \
         the swap and mirror symmetries"
    ))
}

/// Dispatcher over all sign patterns of `K(m,p)` plus the two-bridge and
/// torus variants. Routing (after normalizing with `K(m,p) = K(p,m)`):
/// `(+,+)` cyclotomic positive, `(+,-)` cyclotomic negative, `(-,-)` the
/// epsilon/gamma nested sum, `(-,+)` the Delta/beta nested sum. Takata
/// routing uses `K(-m,-p)* = b(4mp-1, 4mp-2p-1)` and
/// `K(-m,p)* = b(4mp+1, 4mp-2p+1)`.
pub fn jones_any(
    spec: &KnotSpec,
    n_colors: u32,
    formula: FormulaChoice,
) -> Result<LaurentPolynomial> {
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    match *spec {
        KnotSpec::TwoBridge { l, t } => match formula {
            FormulaChoice::Auto | FormulaChoice::Takata => jones_takata(l, t, n_colors),
            _ => Err(Error::InvalidParameter(format!(
                "two-bridge knots support only the Takata formula, not {formula:?}"
            ))),
        },
        KnotSpec::Torus2 { t } => match formula {
            FormulaChoice::Auto | FormulaChoice::Takata => {
                jones_takata(2 * t + 1, 1, n_colors)
            }
            _ => Err(Error::InvalidParameter(format!(
                "torus knots support only the Takata formula, not {formula:?}"
            ))),
        },
        KnotSpec::DoubleTwist { m, p } => {
            if m == 0 || p == 0 {
                return Err(Error::InvalidParameter(
                    "double twist parameters must be nonzero".into(),
                ));
            }
            let (am, ap) = (m.unsigned_abs() as u32, p.unsigned_abs() as u32);
            match formula {
                FormulaChoice::Auto => Ok(match (m > 0, p > 0) {
                    (true, true) => jones_cyclotomic_pp(am, ap, n_colors),
                    (true, false) => jones_cyclotomic_pm(am, ap, n_colors),
                    (false, true) => jones_thm2(am, ap, n_colors),
                    (false, false) => jones_thm1(am, ap, n_colors),
                }),
                FormulaChoice::Cyclotomic => match (m > 0, p > 0) {
                    (true, true) => Ok(jones_cyclotomic_pp(am, ap, n_colors)),
                    (true, false) => Ok(jones_cyclotomic_pm(am, ap, n_colors)),
                    // K(-m, p) = K(p, -m)
                    (false, true) => Ok(jones_cyclotomic_pm(ap, am, n_colors)),
                    (false, false) => Err(no_formula(formula, m, p)),
                },
                FormulaChoice::Theorem => match (m > 0, p > 0) {
                    (false, false) => Ok(jones_thm1(am, ap, n_colors)),
                    (false, true) => Ok(jones_thm2(am, ap, n_colors)),
                    // K(m, -p) = K(-p, m)
                    (true, false) => Ok(jones_thm2(ap, am, n_colors)),
                    (true, true) => Err(no_formula(formula, m, p)),
                },
                FormulaChoice::Takata => match (m > 0, p > 0) {
                    (false, false) => {
                        jones_takata(4 * am * ap - 1, 4 * am * ap - 2 * ap - 1, n_colors)
                    }
                    (false, true) => {
                        jones_takata(4 * am * ap + 1, 4 * am * ap - 2 * ap + 1, n_colors)
                    }
                    (true, false) => {
                        // K(m, -p) = K(-p, m): swap before the family map.
                        let (a, b) = (ap, am);
                        jones_takata(4 * a * b + 1, 4 * a * b - 2 * b + 1, n_colors)
                    }
                    (true, true) => Err(no_formula(formula, m, p)),
                },
            }
        }
    }
}
