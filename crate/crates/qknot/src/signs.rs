//! Combinatorial sign and index functions: the pairwise/linear sign
//! functions of the double twist formulas, and the sigma/r/r' machinery of
//! the general two-bridge formula.
//!
//! `build_sigma_table` computes everything from the definitions and works
//! for any admissible `(l, t)`; `lemma_ik_sigma` reproduces the tables by
//! the interval algorithms valid only for the two double-twist families and
//! exists to be checked against the definitional route.

use num_integer::Integer;

use crate::{Error, Result};

fn check_pair_args(i: u32, j: u32, m: u32) -> Result<()> {
    if i == 0 || i >= j {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= i < j, got i={i}, j={j}"
        )));
    }
    if m == 0 || i.is_multiple_of(m) {
        return Err(Error::InvalidParameter(format!(
            "index i={i} must not be divisible by m={m}"
        )));
    }
    Ok(())
}

/// Pairwise sign for the `K_{(-m,-p)}` formula: +1 if `j = -i` or `-i-1`,
/// -1 if `j = i` or `i-1` (mod 2m), else 0. Requires `i < j` and `m` not
/// dividing `i`.
pub fn epsilon(i: u32, j: u32, m: u32) -> Result<i32> {
    check_pair_args(i, j, m)?;
    let period = 2 * m as i64;
    let (i, j) = (i as i64, j as i64);
    let jr = j.rem_euclid(period);
    if jr == (-i).rem_euclid(period) || jr == (-i - 1).rem_euclid(period) {
        Ok(1)
    } else if jr == i.rem_euclid(period) || jr == (i - 1).rem_euclid(period) {
        Ok(-1)
    } else {
        Ok(0)
    }
}

/// Linear sign for the `K_{(-m,-p)}` formula: +1 on residues `1..m-1`
/// (mod 2m), -1 otherwise. For m = 1 the positive residue set is empty, so
/// gamma is identically -1.
pub fn gamma(i: u32, m: u32) -> i32 {
    let r = i % (2 * m);
    if (1..m).contains(&r) {
        1
    } else {
        -1
    }
}

/// Pairwise sign for the `K_{(-m,p)}` formula: +1 if `j = -i` or `-i+1`,
/// -1 if `j = i` or `i+1` (mod 2m), else 0.
pub fn delta(i: u32, j: u32, m: u32) -> Result<i32> {
    check_pair_args(i, j, m)?;
    let period = 2 * m as i64;
    let (i, j) = (i as i64, j as i64);
    let jr = j.rem_euclid(period);
    if jr == (-i).rem_euclid(period) || jr == (-i + 1).rem_euclid(period) {
        Ok(1)
    } else if jr == i.rem_euclid(period) || jr == (i + 1).rem_euclid(period) {
        Ok(-1)
    } else {
        Ok(0)
    }
}

/// Linear sign for the `K_{(-m,p)}` formula: +1 on residues `1..m-1`,
/// -1 on `m+1..2m-1`, 0 on `0` and `m` (mod 2m).
pub fn beta(i: u32, m: u32) -> i32 {
    let r = i % (2 * m);
    if (1..m).contains(&r) {
        1
    } else if (m + 1..2 * m).contains(&r) {
        -1
    } else {
        0
    }
}

/// Coprime odd integers `l > t >= 1` classifying a two-bridge knot.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TwoBridgeParams {
    l: u32,
    t: u32,
}

impl TwoBridgeParams {
    pub fn new(l: u32, t: u32) -> Result<Self> {
        if l.is_multiple_of(2) || t.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "two-bridge parameters must both be odd, got ({l}, {t})"
            )));
        }
        if t < 1 || l <= t {
            return Err(Error::InvalidParameter(format!(
                "two-bridge parameters require l > t >= 1, got ({l}, {t})"
            )));
        }
        if l.gcd(&t) != 1 {
            return Err(Error::InvalidParameter(format!(
                "two-bridge parameters must be coprime, got ({l}, {t})"
            )));
        }
        Ok(TwoBridgeParams { l, t })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `p' = (l - 1) / 2`, the chain length of the two-bridge formula.
    pub fn p_prime(&self) -> usize {
        ((self.l - 1) / 2) as usize
    }
}

/// The sigma/r/r' data of the two-bridge setup. All vectors are logically
/// 1-indexed (`sigma(1)..sigma(p')`); `i_of_k` is the inverse of the
/// bijection `r'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTable {
    params: TwoBridgeParams,
    sigma: Vec<i32>,
    r: Vec<i64>,
    r_prime: Vec<usize>,
    i_of_k: Vec<usize>,
}

impl SigmaTable {
    pub fn params(&self) -> &TwoBridgeParams {
        &self.params
    }

    pub fn p_prime(&self) -> usize {
        self.sigma.len()
    }

    /// `sigma_j` for `1 <= j <= p'`.
    pub fn sigma(&self, j: usize) -> i32 {
        self.sigma[j - 1]
    }

    /// `r(j)`, the balanced residue of `(2j-1) t` mod `2l`.
    pub fn r(&self, j: usize) -> i64 {
        self.r[j - 1]
    }

    /// `r'(j) = (|r(j)| + 1) / 2`.
    pub fn r_prime(&self, j: usize) -> usize {
        self.r_prime[j - 1]
    }

    /// `i_k`, defined by `i_{r'(j)} = j`.
    pub fn i_k(&self, k: usize) -> usize {
        self.i_of_k[k - 1]
    }

    /// `sigma_{i_k}` as a convenience.
    pub fn sigma_ik(&self, k: usize) -> i32 {
        self.sigma(self.i_k(k))
    }
}

/// Compute the sigma table directly from the definitions. Fails only if
/// `r'` turns out not to be a bijection, which signals inadmissible
/// parameters.
pub fn build_sigma_table(params: &TwoBridgeParams) -> Result<SigmaTable> {
    let l = params.l as i64;
    let t = params.t as i64;
    let p_prime = params.p_prime();
    let mut sigma = Vec::with_capacity(p_prime);
    let mut r = Vec::with_capacity(p_prime);
    let mut r_prime = Vec::with_capacity(p_prime);
    let mut i_of_k = vec![0usize; p_prime];
    for j in 1..=p_prime as i64 {
        let value = (2 * j - 1) * t;
        let mut rj = value.rem_euclid(2 * l);
        if rj >= l {
            rj -= 2 * l;
        }
        debug_assert!(-l < rj && rj < l && rj != 0);
        sigma.push(if (value.div_euclid(l)) % 2 == 0 { 1 } else { -1 });
        r.push(rj);
        let rp = ((rj.abs() + 1) / 2) as usize;
        r_prime.push(rp);
        if rp < 1 || rp > p_prime || i_of_k[rp - 1] != 0 {
            return Err(Error::Inconsistent(format!(
                "r' is not a bijection for (l, t) = ({}, {})",
                params.l, params.t
            )));
        }
        i_of_k[rp - 1] = j as usize;
    }
    Ok(SigmaTable { params: *params, sigma, r, r_prime, i_of_k })
}

/// The two double twist families expressible as two-bridge knots.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TwistFamily {
    /// `K_{(-m,-p)}`, i.e. `(l, t) = (4mp - 1, 4mp - 2p - 1)`.
    MinusMinus,
    /// `K_{(-m,p)}`, i.e. `(l, t) = (4mp + 1, 4mp - 2p + 1)`.
    MinusPlus,
}

impl TwistFamily {
    pub fn two_bridge(self, m: u32, p: u32) -> (u32, u32) {
        match self {
            TwistFamily::MinusMinus => (4 * m * p - 1, 4 * m * p - 2 * p - 1),
            TwistFamily::MinusPlus => (4 * m * p + 1, 4 * m * p - 2 * p + 1),
        }
    }
}

/// Sigma table produced by the interval algorithms, together with the
/// alternating `sigma_{i_k}` sequence those algorithms state directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaTable {
    pub table: SigmaTable,
    /// `sigma_{i_k}` for `k = 1..p'` straight from the alternation rule.
    pub sigma_ik: Vec<i32>,
}

/// Reproduce the sigma table for the two double-twist families by the
/// residue rule and interval algorithms (rather than from the definitions).
pub fn lemma_ik_sigma(m: u32, p: u32, family: TwistFamily) -> LemmaTable {
    assert!(m >= 1 && p >= 1);
    let (l, _t) = family.two_bridge(m, p);
    let l = l as i64;
    let (mi64, pi64) = (m as i64, p as i64);
    let p_prime = ((l - 1) / 2) as usize;

    // Part (i): sigma_j from the residue class of j mod 2m.
    let sigma: Vec<i32> = (1..=p_prime as i64)
        .map(|j| {
            let r = j.rem_euclid(2 * mi64);
            if (1..=mi64).contains(&r) {
                1
            } else {
                -1
            }
        })
        .collect();

    // Parts (ii)/(iii): split 1..p' into intervals of length p (the last one
    // has length p-1 in the MinusMinus family) and evaluate the per-interval
    // formula, which shifts by +-l every second interval.
    let base = |k: i64| -> i64 {
        match family {
            TwistFamily::MinusMinus => 2 * mi64 * (pi64 - k) + mi64,
            TwistFamily::MinusPlus => 2 * mi64 * (pi64 - k) + mi64 + 1,
        }
    };
    let mut i_of_k = vec![0usize; p_prime];
    let mut sigma_ik = vec![0i32; p_prime];
    let start_sign = match family {
        TwistFamily::MinusMinus => 1,
        TwistFamily::MinusPlus => -1,
    };
    for k in 1..=p_prime as i64 {
        // interval number, 1-based; every interval has length p
        let interval = (k - 1) / pi64 + 1;
        let shift = ((interval - 1) / 2) * l;
        let value = if interval % 2 == 1 {
            base(k) + shift
        } else {
            1 - base(k) - shift
        };
        debug_assert!((1..=p_prime as i64).contains(&value));
        i_of_k[(k - 1) as usize] = value as usize;
        sigma_ik[(k - 1) as usize] = if interval % 2 == 1 {
            start_sign
        } else {
            -start_sign
        };
    }

    // Reconstruct r' as the inverse permutation and r from the sign rule
    // sigma_j = sgn(r(j)).
    let mut r_prime = vec![0usize; p_prime];
    for (k0, &j) in i_of_k.iter().enumerate() {
        r_prime[j - 1] = k0 + 1;
    }
    let r: Vec<i64> = (1..=p_prime)
        .map(|j| sigma[j - 1] as i64 * (2 * r_prime[j - 1] as i64 - 1))
        .collect();

    let (lu, tu) = family.two_bridge(m, p);
    let params = TwoBridgeParams::new(lu, tu)
        .expect("double twist family parameters are always admissible");
    LemmaTable {
        table: SigmaTable { params, sigma, r, r_prime, i_of_k },
        sigma_ik,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_display_values() {
        // Coefficients visible in the displayed K_{(-2,-2)} formula.
        assert_eq!(epsilon(1, 3, 2).unwrap(), 1);
        assert_eq!(epsilon(1, 4, 2).unwrap(), -1);
        // 2 = -1-1 mod 4; this +n_1n_2 cancels the -n_1n_2 adjacent term.
        assert_eq!(epsilon(1, 2, 2).unwrap(), 1);
        assert_eq!(epsilon(3, 5, 2).unwrap(), 1);
        assert_eq!(epsilon(3, 6, 2).unwrap(), -1);
    }

    #[test]
    fn epsilon_rejects_bad_arguments() {
        assert!(epsilon(2, 3, 2).is_err()); // m | i
        assert!(epsilon(3, 3, 2).is_err()); // i >= j
        assert!(epsilon(4, 2, 3).is_err()); // i >= j
    }

    #[test]
    fn gamma_display_values() {
        assert_eq!(gamma(1, 2), 1);
        assert_eq!(gamma(2, 2), -1);
        assert_eq!(gamma(3, 2), -1);
        assert_eq!(gamma(4, 2), -1);
        assert_eq!(gamma(5, 2), 1);
        assert_eq!(gamma(6, 2), -1);
        // m = 1: the positive residue set {1..m-1} is empty.
        for i in 1..20 {
            assert_eq!(gamma(i, 1), -1);
        }
    }

    #[test]
    fn delta_display_values() {
        // Coefficients visible in the displayed K_{(-3,1)} formula.
        assert_eq!(delta(1, 5, 3).unwrap(), 1);
        assert_eq!(delta(1, 2, 3).unwrap(), -1);
        assert_eq!(delta(1, 6, 3).unwrap(), 1);
        assert_eq!(delta(2, 3, 3).unwrap(), -1);
        assert_eq!(delta(2, 4, 3).unwrap(), 1);
        assert_eq!(delta(2, 5, 3).unwrap(), 1);
        assert_eq!(delta(4, 5, 3).unwrap(), -1);
        assert_eq!(delta(5, 6, 3).unwrap(), -1);
    }

    #[test]
    fn beta_display_values() {
        assert_eq!(beta(1, 3), 1);
        assert_eq!(beta(2, 3), 1);
        assert_eq!(beta(3, 3), 0);
        assert_eq!(beta(4, 3), -1);
        assert_eq!(beta(5, 3), -1);
        assert_eq!(beta(6, 3), 0);
    }

    #[test]
    fn epsilon_and_delta_cases_are_disjoint() {
        // The +1 and -1 congruence conditions can never fire together when
        // m does not divide i; the Result-returning classification above
        // would otherwise silently prefer +1.
        for m in 1..=5u32 {
            for p in 1..=5u32 {
                let top = 2 * m * p;
                for i in 1..top {
                    if i % m == 0 {
                        continue;
                    }
                    for j in i + 1..=top {
                        let period = 2 * m as i64;
                        let (i, j) = (i as i64, j as i64);
                        let jr = j.rem_euclid(period);
                        let plus_eps = jr == (-i).rem_euclid(period)
                            || jr == (-i - 1).rem_euclid(period);
                        let minus_eps = jr == i.rem_euclid(period)
                            || jr == (i - 1).rem_euclid(period);
                        assert!(!(plus_eps && minus_eps), "eps m={m} i={i} j={j}");
                        let plus_d = jr == (-i).rem_euclid(period)
                            || jr == (-i + 1).rem_euclid(period);
                        let minus_d = jr == i.rem_euclid(period)
                            || jr == (i + 1).rem_euclid(period);
                        assert!(!(plus_d && minus_d), "delta m={m} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_adjacent_cancellation_m2() {
        // For m = 2 the adjacent product -n_i n_{i+1} cancels against
        // eps_{i,i+1,2} = +1 for odd i, which is why the K_{(-2,-2)}
        // display has no n_i n_{i+1} term at odd i.
        for p in 1..=4u32 {
            for i in (1..2 * 2 * p - 1).step_by(2) {
                assert_eq!(epsilon(i, i + 1, 2).unwrap(), 1, "i={i}");
            }
        }
    }

    #[test]
    fn two_bridge_params_validation() {
        assert!(TwoBridgeParams::new(7, 5).is_ok());
        assert!(TwoBridgeParams::new(8, 5).is_err()); // even l
        assert!(TwoBridgeParams::new(7, 4).is_err()); // even t
        assert!(TwoBridgeParams::new(5, 5).is_err()); // l <= t
        assert!(TwoBridgeParams::new(15, 9).is_err()); // gcd 3
        assert!(TwoBridgeParams::new(15, 0).is_err());
    }

    #[test]
    fn sigma_table_7_5() {
        // (l, t) = (7, 5) is the (m, p) = (2, 1) MinusMinus family member.
        let params = TwoBridgeParams::new(7, 5).unwrap();
        let tab = build_sigma_table(&params).unwrap();
        assert_eq!(tab.p_prime(), 3);
        // sigma_j = (-1)^{floor((2j-1) 5 / 7)}: floor(5/7)=0, floor(15/7)=2,
        // floor(25/7)=3.
        assert_eq!(
            (1..=3).map(|j| tab.sigma(j)).collect::<Vec<_>>(),
            vec![1, 1, -1]
        );
        // r(j): 5, 1, -3 -> r'(j): 3, 1, 2 -> i_k = (2, 3, 1)
        assert_eq!((1..=3).map(|j| tab.r(j)).collect::<Vec<_>>(), vec![5, 1, -3]);
        assert_eq!(
            (1..=3).map(|k| tab.i_k(k)).collect::<Vec<_>>(),
            vec![2, 3, 1]
        );
    }

    #[test]
    fn sigma_residue_rule_family_8p_minus_1() {
        // (l, t) = (8p - 1, 6p - 1), m = 2: sigma_j = +1 iff j = 1, 2 mod 4.
        for p in 1..=4u32 {
            let params = TwoBridgeParams::new(8 * p - 1, 6 * p - 1).unwrap();
            let tab = build_sigma_table(&params).unwrap();
            for j in 1..=tab.p_prime() {
                let expect = if j % 4 == 1 || j % 4 == 2 { 1 } else { -1 };
                assert_eq!(tab.sigma(j), expect, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn ik_piecewise_formula_15_11() {
        // (l, t) = (15, 11) is (m, p) = (2, 2); the worked example's
        // piecewise i_k formula.
        let params = TwoBridgeParams::new(15, 11).unwrap();
        let tab = build_sigma_table(&params).unwrap();
        let p = 2usize;
        for k in 1..=tab.p_prime() {
            let expect = if k <= p {
                4 * (p - k) + 2
            } else if k <= 2 * p {
                4 * (k - p) - 1
            } else if k <= 3 * p {
                12 * p - 4 * k + 1
            } else {
                4 * k - 12 * p
            };
            assert_eq!(tab.i_k(k), expect, "k={k}");
        }
    }

    #[test]
    fn sigma_ik_intervals_m2_minus_minus() {
        // The alternating sigma_{i_k} blocks of the worked m = 2 example.
        for p in 1..=4u32 {
            let lem = lemma_ik_sigma(2, p, TwistFamily::MinusMinus);
            let p = p as usize;
            for k in 1..=lem.table.p_prime() {
                let expect = if k <= p {
                    1
                } else if k <= 2 * p {
                    -1
                } else if k <= 3 * p {
                    1
                } else {
                    -1
                };
                assert_eq!(lem.sigma_ik[k - 1], expect, "k={k}");
                assert_eq!(lem.table.sigma_ik(k), expect, "k={k}");
            }
        }
    }

    #[test]
    fn lemma_tables_match_definitions() {
        for m in 1..=5u32 {
            for p in 1..=5u32 {
                for family in [TwistFamily::MinusMinus, TwistFamily::MinusPlus] {
                    let (l, t) = family.two_bridge(m, p);
                    let params = TwoBridgeParams::new(l, t).unwrap();
                    let tab = build_sigma_table(&params).unwrap();
                    let lem = lemma_ik_sigma(m, p, family);
                    assert_eq!(lem.table, tab, "m={m} p={p} {family:?}");
                    for k in 1..=tab.p_prime() {
                        assert_eq!(
                            lem.sigma_ik[k - 1],
                            tab.sigma_ik(k),
                            "m={m} p={p} {family:?} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_sum_patterns() {
        for m in 1..=5u32 {
            for p in 1..=5u32 {
                // MinusMinus family: pattern of sigma_{i_k} + sigma_{i_{p'+1-k}}
                // and vanishing of sigma_{j+1} + sigma_{p'+1-j}.
                let tab = lemma_ik_sigma(m, p, TwistFamily::MinusMinus).table;
                let pp = tab.p_prime();
                for k in 1..=pp {
                    let s = tab.sigma_ik(k) + tab.sigma_ik(pp + 1 - k);
                    let expect = if k % (p as usize) == 0 {
                        let band = k / p as usize; // k = band * p
                        if band % 2 == 1 {
                            2
                        } else {
                            -2
                        }
                    } else {
                        0
                    };
                    assert_eq!(s, expect, "mm m={m} p={p} k={k}");
                }
                for j in 1..=pp - 1 {
                    assert_eq!(tab.sigma(j + 1) + tab.sigma(pp + 1 - j), 0);
                }

                // MinusPlus family.
                let tab = lemma_ik_sigma(m, p, TwistFamily::MinusPlus).table;
                let pp = tab.p_prime();
                for k in 1..=pp {
                    assert_eq!(tab.sigma_ik(k) + tab.sigma_ik(pp + 1 - k), 0);
                }
                for j in 1..=pp - 1 {
                    let s = tab.sigma(j + 1) + tab.sigma(pp + 1 - j);
                    let expect = if j % (2 * m as usize) == 0 {
                        2
                    } else if j % (2 * m as usize) == m as usize {
                        -2
                    } else {
                        0
                    };
                    assert_eq!(s, expect, "mp m={m} p={p} j={j}");
                }
            }
        }
    }
}
