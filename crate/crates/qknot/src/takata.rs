//! The general two-bridge formula: `J_N(b(l,t)*; q)` as a sum over chains
//! of length `p' = (l-1)/2` of `q^{a N + b1 + b2} X`.
//!
//! The exponent coefficients `a`, `b1`, `b2` are integers assembled from
//! half-sums; every halving is checked for exactness so a transcription
//! slip surfaces as an error rather than a silently wrong polynomial. The
//! factorial quotient in `X` is assembled from q-binomials, never by
//! polynomial division.

use rayon::prelude::*;

use crate::chains::enumerate_chains;
use crate::qcomb::{pochhammer, qbinomial, tri, MonomialUnit};
use crate::signs::{build_sigma_table, SigmaTable, TwoBridgeParams};
use crate::{Error, Int, LaurentPolynomial, Result};

fn half_exact(v: i64, what: &str) -> Result<i64> {
    if v % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "{what} produced the odd doubled value {v}"
        )));
    }
    Ok(v / 2)
}

/// Chain entry with the `n_s = 0` for `s <= 0` convention; `s` is 1-based.
fn entry(chain: &[i64], s: i64) -> i64 {
    if s <= 0 {
        0
    } else {
        chain[(s - 1) as usize]
    }
}

/// The coefficient of `N` in the exponent.
pub fn a_coeff(chain: &[i64], table: &SigmaTable) -> Result<i64> {
    let pp = table.p_prime();
    assert_eq!(chain.len(), pp);
    // Everything under a -1/2 prefactor, summed before halving.
    let mut doubled = 0i64;
    for j in 1..=pp {
        let mut inner = 0i64;
        for k in table.r_prime(j)..=pp {
            inner += (table.sigma_ik(k) + table.sigma_ik(pp + 1 - k)) as i64;
        }
        doubled += inner * (entry(chain, j as i64) - entry(chain, j as i64 - 1));
    }
    for j in 1..pp {
        doubled +=
            (table.sigma(j + 1) + table.sigma(pp + 1 - j)) as i64 * entry(chain, j as i64);
    }
    doubled += (table.sigma(pp) + 1) as i64 * entry(chain, pp as i64);
    let halved = half_exact(doubled, "a(n)")?;
    let sigma_sum: i64 = (1..=pp).map(|j| table.sigma(j) as i64).sum();
    Ok(-halved - sigma_sum)
}

/// The constant exponent contributions `(b1, b2)`; `b2` branches on the
/// sign of `l - 2t` (equality is impossible for odd coprime parameters).
pub fn b_coeffs(chain: &[i64], table: &SigmaTable) -> Result<(i64, i64)> {
    let pp = table.p_prime();
    assert_eq!(chain.len(), pp);
    let params = table.params();
    let (l, t) = (params.l() as i64, params.t() as i64);
    let half_lt = ((l - t) / 2) as usize;
    let n = |s: i64| entry(chain, s);
    let nik = |k: usize| n(table.i_k(k) as i64);
    let nik_prev = |k: usize| n(table.i_k(k) as i64 - 1);

    let mut b1 = -a_coeff(chain, table)?;
    for k in 1..=half_lt.min(pp) {
        b1 += (1 - table.sigma_ik(k)) as i64 / 2 * nik_prev(k);
    }
    for k in half_lt + 1..=pp {
        b1 -= nik_prev(k);
        b1 += (1 + table.sigma_ik(k)) as i64 / 2 * nik(k);
    }
    b1 -= (1 + table.sigma(pp)) as i64 * n(pp as i64);
    let mut doubled = 0i64;
    for j in 1..pp {
        doubled += (table.sigma(j + 1) - table.sigma(j)) as i64 * n(j as i64);
    }
    for k in 1..pp {
        for kp in k + 1..=pp {
            if table.i_k(k) > table.i_k(kp) {
                doubled -= (table.sigma_ik(k) - table.sigma_ik(kp)) as i64
                    * (nik(k) - nik_prev(k))
                    * (nik(kp) - nik_prev(kp));
            }
        }
    }
    b1 += half_exact(doubled, "b1(n)")?;
    for j in 1..=pp {
        let mut inner = 0i64;
        for k in 1..=table.r_prime(j) {
            inner += nik(k) - nik_prev(k);
        }
        b1 += table.sigma(j) as i64 * inner * n(j as i64 - 1);
    }

    let mut b2 = 0i64;
    if l < 2 * t {
        for k in half_lt + 1..=((t - 1) / 2) as usize {
            b2 += (1 + table.sigma_ik(k)) as i64 / 2 * nik_prev(k);
        }
    } else if l > 2 * t {
        for k in ((t + 1) / 2 + 1) as usize..=half_lt {
            b2 -= (1 + table.sigma_ik(k)) as i64 / 2 * nik_prev(k);
        }
    } else {
        return Err(Error::Inconsistent(
            "l = 2t cannot occur for odd coprime parameters".into(),
        ));
    }
    Ok((b1, b2))
}

/// The polynomial factor: sign, kappa power, the `(q)` quotient (assembled
/// as `qbinom(N-1, n_top) * (q)_{n_top} * prod_j qbinom(n_j, n_j - n_{j-1})`)
/// and the per-step tau contributions.
pub fn x_factor(chain: &[i64], table: &SigmaTable, n_colors: u32) -> LaurentPolynomial {
    let pp = table.p_prime();
    assert_eq!(chain.len(), pp);
    let big_n = n_colors as i64;
    let top = entry(chain, pp as i64);
    debug_assert!(top < big_n);
    let kappa = if table.sigma(pp) == -1 { -big_n * top } else { 0 };

    let mut acc: LaurentPolynomial =
        &*qbinomial(big_n - 1, top) * &pochhammer::<Int>(MonomialUnit::q_pow(1), top as u32);
    let mut exp = kappa;
    let mut parity = top;
    for j in 1..=pp as i64 {
        let step = entry(chain, j) - entry(chain, j - 1);
        acc = &acc * &*qbinomial(entry(chain, j), step);
        if table.sigma(j as usize) == -1 {
            parity += step;
        } else {
            exp += tri(step);
        }
    }
    acc.mul_monomial_assign(exp, parity % 2 != 0);
    acc
}

/// `J_N(b(l,t)*; q)` for coprime odd `l > t >= 1`.
pub fn jones_takata(l: u32, t: u32, n_colors: u32) -> Result<LaurentPolynomial> {
    if n_colors == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let params = TwoBridgeParams::new(l, t)?;
    let table = build_sigma_table(&params)?;
    let big_n = n_colors as i64;
    let all: Vec<Vec<i64>> = enumerate_chains(table.p_prime(), big_n - 1).collect();
    all.par_iter()
        .map(|chain| {
            let a = a_coeff(chain, &table)?;
            let (b1, b2) = b_coeffs(chain, &table)?;
            let mut term = x_factor(chain, &table, n_colors);
            term.mul_monomial_assign(a * big_n + b1 + b2, false);
            Ok(term)
        })
        .try_reduce(LaurentPolynomial::zero, |x, y| Ok(&x + &y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::{jones_thm1, jones_thm2};
    use crate::signs::TwistFamily;

    fn table_for(l: u32, t: u32) -> SigmaTable {
        build_sigma_table(&TwoBridgeParams::new(l, t).unwrap()).unwrap()
    }

    #[test]
    fn zero_chain_values() {
        for (l, t) in [(3, 1), (7, 5), (9, 7), (15, 11), (17, 13)] {
            let tab = table_for(l, t);
            let chain = vec![0i64; tab.p_prime()];
            let sigma_sum: i64 = (1..=tab.p_prime()).map(|j| tab.sigma(j) as i64).sum();
            assert_eq!(a_coeff(&chain, &tab).unwrap(), -sigma_sum);
            let (_, b2) = b_coeffs(&chain, &tab).unwrap();
            assert_eq!(b2, 0);
            assert!(x_factor(&chain, &tab, 3).is_one());
        }
    }

    #[test]
    fn x_factor_single_step() {
        // p' = 1, sigma_1 = +1, chain (1), N = 2:
        // (-1) qbinom(1,1) (q)_1 qbinom(1,1) q^{tri(1)} = -q(1-q)
        let tab = table_for(3, 1);
        assert_eq!(tab.sigma(1), 1);
        let x = x_factor(&[1], &tab, 2);
        let expect = LaurentPolynomial::from_pairs(vec![
            (1, Int::from(-1)),
            (2, Int::from(1)),
        ]);
        assert_eq!(x, expect);
    }

    #[test]
    fn left_trefoil() {
        // b(3,1)* is the left-handed trefoil, i.e. K(-1,-1).
        let got = jones_takata(3, 1, 2).unwrap();
        let expect = LaurentPolynomial::from_pairs(vec![
            (-1, Int::from(1)),
            (-3, Int::from(1)),
            (-4, Int::from(-1)),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(jones_takata(6, 1, 2).is_err());
        assert!(jones_takata(9, 3, 2).is_err());
        assert!(jones_takata(5, 5, 2).is_err());
        assert!(jones_takata(3, 1, 0).is_err());
    }

    #[test]
    fn matches_double_twist_formulas() {
        for m in 1..=2u32 {
            for p in 1..=2u32 {
                for n in 1..=3u32 {
                    let (l, t) = TwistFamily::MinusMinus.two_bridge(m, p);
                    assert_eq!(
                        jones_takata(l, t, n).unwrap(),
                        jones_thm1(m, p, n),
                        "mm m={m} p={p} N={n}"
                    );
                    let (l, t) = TwistFamily::MinusPlus.two_bridge(m, p);
                    assert_eq!(
                        jones_takata(l, t, n).unwrap(),
                        jones_thm2(m, p, n),
                        "mp m={m} p={p} N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_a_small() {
        use crate::chains::enumerate_chains;
        for m in 1..=2u32 {
            for p in 1..=2u32 {
                for n in 2..=3i64 {
                    let (l, t) = TwistFamily::MinusMinus.two_bridge(m, p);
                    let tab = table_for(l, t);
                    for chain in enumerate_chains(tab.p_prime(), n - 1) {
                        let mut expect = -1i64;
                        for j in 1..=(2 * p - 1) as i64 {
                            let v = entry(&chain, m as i64 * j);
                            expect += if j % 2 == 0 { v } else { -v };
                        }
                        // the alternating form holds for m >= 2 only; at
                        // m = 1 the exponent shifts by -n_top
                        if m == 1 {
                            expect -= entry(&chain, tab.p_prime() as i64);
                        }
                        assert_eq!(a_coeff(&chain, &tab).unwrap(), expect);
                    }
                    let (l, t) = TwistFamily::MinusPlus.two_bridge(m, p);
                    let tab = table_for(l, t);
                    for chain in enumerate_chains(tab.p_prime(), n - 1) {
                        let mut expect = 0i64;
                        for j in 1..=(2 * p - 1) as i64 {
                            let v = entry(&chain, m as i64 * j);
                            expect -= if j % 2 == 0 { v } else { -v };
                        }
                        assert_eq!(a_coeff(&chain, &tab).unwrap(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn b2_family_closed_form() {
        // For (l,t) = (8p-1, 6p-1): b2 = sum over j of n_{4j-4}, j = 2..p.
        for p in 2..=4u32 {
            let tab = table_for(8 * p - 1, 6 * p - 1);
            let pp = tab.p_prime();
            let chain: Vec<i64> = (0..pp as i64).map(|i| i / 3).collect();
            let (_, b2) = b_coeffs(&chain, &tab).unwrap();
            let expect: i64 = (2..=p as i64).map(|j| entry(&chain, 4 * j - 4)).sum();
            assert_eq!(b2, expect, "p={p}");
        }
    }

    #[test]
    fn coefficients_are_integers_everywhere() {
        // Every admissible (l,t) with l <= 17 and a spread of chains.
        for l in (3..=17u32).step_by(2) {
            for t in (1..l).step_by(2) {
                if num_integer::Integer::gcd(&l, &t) != 1 {
                    continue;
                }
                let tab = table_for(l, t);
                for chain in enumerate_chains(tab.p_prime(), 2) {
                    assert!(a_coeff(&chain, &tab).is_ok(), "l={l} t={t}");
                    assert!(b_coeffs(&chain, &tab).is_ok(), "l={l} t={t}");
                }
            }
        }
    }

    #[test]
    fn normalization() {
        for (l, t) in [(3, 1), (5, 3), (7, 5), (9, 5), (15, 11)] {
            assert!(jones_takata(l, t, 1).unwrap().is_one());
            for n in 2..=3 {
                assert_eq!(
                    jones_takata(l, t, n).unwrap().evaluate_at_one(),
                    Int::from(1)
                );
            }
        }
    }
}
