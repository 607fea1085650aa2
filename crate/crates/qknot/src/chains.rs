//! Enumeration of weakly increasing integer tuples, the summation domain of
//! every nested-sum formula in this crate.

use rayon::prelude::*;

use crate::laurent::{Coefficient, LaurentPoly};

/// A weakly increasing tuple `0 <= n_1 <= ... <= n_k <= bound`.
pub type ChainVector = Vec<i64>;

/// Odometer-style iterator over all chains of length `k` bounded by `bound`.
/// The count is `C(bound + k, k)`. A length of 0 yields the single empty
/// chain, which lets degenerate inner sums fall out of the generic code.
pub struct Chains {
    buf: Vec<i64>,
    bound: i64,
    started: bool,
    done: bool,
}

pub fn enumerate_chains(k: usize, bound: i64) -> Chains {
    assert!(bound >= 0);
    Chains { buf: vec![0; k], bound, started: false, done: false }
}

impl Iterator for Chains {
    type Item = ChainVector;

    fn next(&mut self) -> Option<ChainVector> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.buf.clone());
        }
        // Increment the lowest slot that stays below its ceiling (the next
        // entry, or the bound for the top slot) and reset everything under it.
        let k = self.buf.len();
        for i in 0..k {
            let ceiling = if i + 1 < k { self.buf[i + 1] } else { self.bound };
            if self.buf[i] < ceiling {
                self.buf[i] += 1;
                for slot in &mut self.buf[..i] {
                    *slot = 0;
                }
                return Some(self.buf.clone());
            }
        }
        self.done = true;
        None
    }
}

/// `C(bound + k, k)`, the number of chains `enumerate_chains(k, bound)` yields.
pub fn count_chains(k: usize, bound: i64) -> u64 {
    assert!(bound >= 0);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (bound as u128 + i) / i;
    }
    acc as u64
}

/// Parallel sum of `f(chain)` over all chains of length `k` bounded by
/// `bound`. Polynomial addition is associative and commutative, so the
/// result does not depend on how rayon partitions the work.
pub(crate) fn sum_over_chains<C, F>(k: usize, bound: i64, f: F) -> LaurentPoly<C>
where
    C: Coefficient,
    F: Fn(&[i64]) -> LaurentPoly<C> + Sync + Send,
{
    let all: Vec<ChainVector> = enumerate_chains(k, bound).collect();
    all.par_iter()
        .map(|chain| f(chain))
        .reduce(LaurentPoly::zero, |a, b| &a + &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn short_enumerations() {
        let got: Vec<_> = enumerate_chains(1, 2).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2]]);
        let got: Vec<_> = enumerate_chains(2, 1).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn empty_chain() {
        let got: Vec<_> = enumerate_chains(0, 3).collect();
        assert_eq!(got, vec![Vec::<i64>::new()]);
        assert_eq!(count_chains(0, 3), 1);
    }

    #[test]
    fn count_matches_enumeration() {
        for k in 0..=5 {
            for bound in 0..=5 {
                let chains: Vec<_> = enumerate_chains(k, bound).collect();
                assert_eq!(chains.len() as u64, count_chains(k, bound));
                let distinct: HashSet<_> = chains.iter().cloned().collect();
                assert_eq!(distinct.len(), chains.len());
                for c in &chains {
                    assert!(c.windows(2).all(|w| w[0] <= w[1]));
                    assert!(c.iter().all(|&v| (0..=bound).contains(&v)));
                }
            }
        }
    }

    #[test]
    fn count_7_4() {
        assert_eq!(count_chains(7, 4), 330);
        assert_eq!(enumerate_chains(7, 4).count(), 330);
    }

    #[test]
    fn parallel_sum_is_plain_sum() {
        use crate::{Int, LaurentPolynomial};
        let f = |c: &[i64]| -> LaurentPolynomial {
            LaurentPolynomial::q_pow(c.iter().sum::<i64>())
        };
        let par = sum_over_chains(4, 3, f);
        let mut seq = LaurentPolynomial::zero();
        for c in enumerate_chains(4, 3) {
            seq = &seq + &f(&c);
        }
        assert_eq!(par, seq);
        assert_eq!(seq.evaluate_at_one(), Int::from(count_chains(4, 3)));
    }
}
