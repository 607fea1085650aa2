//! Laurent polynomials in one variable `q` and the quotient ring
//! `Z[q]/(q^N - 1)`.
//!
//! The coefficient scalar is generic; the crate root fixes it to `BigInt`
//! (`crate::LaurentPolynomial`). Canonical form never stores a zero
//! coefficient, so equality is structural equality of the term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Signed;

use crate::{Error, Result};

/// Bound for coefficient scalars: exact signed arithmetic with an embedding
/// of machine integers. Satisfied by `BigInt` and by the fixed-width signed
/// integer types (useful in tests; the public alias uses `BigInt` because
/// intermediate q-binomial products overflow fixed-width types quickly).
pub trait Coefficient:
    Signed + Clone + Eq + fmt::Display + From<i64> + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Signed + Clone + Eq + fmt::Display + From<i64> + Send + Sync + 'static
{
}

/// A Laurent polynomial: finitely supported map from integer exponents of `q`
/// to coefficients. Exponents may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `c * q^e` (the zero monomial collapses to the zero polynomial).
    pub fn monomial(exponent: i64, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn q_pow(exponent: i64) -> Self {
        Self::monomial(exponent, C::one())
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, C)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: i64) -> C {
        self.terms.get(&exponent).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Add `c * q^e`, keeping canonical form.
    pub fn add_term(&mut self, exponent: i64, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// In-place multiplication by `±q^e`.
    pub fn mul_monomial_assign(&mut self, exponent: i64, negate: bool) {
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            let c = if negate { -c } else { c };
            self.terms.insert(e + exponent, c);
        }
    }

    /// Substitute `q -> q^k`; every exponent is scaled by `k`. Rejects `k = 0`
    /// (that substitution is not a ring map on Laurent polynomials).
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "substitute_power requires a nonzero power".into(),
            ));
        }
        Ok(LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        })
    }

    /// The mirror substitution `q -> q^{-1}`.
    pub fn mirror(&self) -> Self {
        self.substitute_power(-1).expect("-1 is nonzero")
    }

    /// Sum of all coefficients, i.e. the value at `q = 1`.
    pub fn evaluate_at_one(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc = acc + c.clone();
        }
        acc
    }

    /// Image in `Z[q]/(q^N - 1)`: exponents fold into `[0, N)`, negative
    /// exponents wrapping around.
    pub fn reduce_mod_qn(&self, modulus: u32) -> Result<Quotient<C>> {
        if modulus == 0 {
            return Err(Error::InvalidParameter(
                "quotient modulus must be positive".into(),
            ));
        }
        let n = modulus as i64;
        let mut coeffs = vec![C::zero(); modulus as usize];
        for (e, c) in &self.terms {
            let idx = e.rem_euclid(n) as usize;
            coeffs[idx] = coeffs[idx].clone() + c.clone();
        }
        Ok(Quotient { coeffs })
    }

    /// Drop every term with exponent above `max_exponent`.
    pub fn truncate_above(&self, max_exponent: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e <= max_exponent)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        // Convolution product; exact, canonical output.
        let mut out = Self::zero();
        if self.terms.is_empty() || other.terms.is_empty() {
            return out;
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// JSON form: `[[exponent, "coefficient"], ...]` sorted by exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    serde_json::json!([e, c.to_string()])
                })
                .collect(),
        )
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    /// Canonical string form, terms by ascending exponent: `-q^-4+q^-3+q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.add_ref(rhs)
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.add_ref(&rhs)
    }
}

impl<C: Coefficient> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<C: Coefficient> AddAssign for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: LaurentPoly<C>) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.add_ref(&-rhs)
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.mul_ref(&rhs)
    }
}

/// Element of `Z[q]/(q^N - 1)`: a dense length-`N` coefficient vector,
/// `coeffs[e]` multiplying `q^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Quotient<C> {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Quotient { coeffs: vec![C::zero(); modulus as usize] }
    }

    pub fn one(modulus: u32) -> Self {
        let mut q = Self::zero(modulus);
        q.coeffs[0] = C::one();
        q
    }

    pub fn modulus(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The image of `q -> q^{-1}`: index reversal `e -> N - e (mod N)`.
    pub fn index_reversal(&self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![C::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - e) % n] = c.clone();
        }
        Quotient { coeffs }
    }

    /// Canonical Laurent-polynomial representative with exponents in `[0, N)`.
    pub fn to_poly(&self) -> LaurentPoly<C> {
        LaurentPoly::from_pairs(
            self.coeffs.iter().enumerate().map(|(e, c)| (e as i64, c.clone())),
        )
    }

    fn check_same_modulus(&self, other: &Self) {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "quotient moduli differ"
        );
    }
}

impl<C: Coefficient> fmt::Display for Quotient<C> {
    /// Dense list form `[c0,c1,...,c{N-1}]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<C: Coefficient> Add for &Quotient<C> {
    type Output = Quotient<C>;
    fn add(self, rhs: Self) -> Quotient<C> {
        self.check_same_modulus(rhs);
        Quotient {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<C: Coefficient> Sub for &Quotient<C> {
    type Output = Quotient<C>;
    fn sub(self, rhs: Self) -> Quotient<C> {
        self.check_same_modulus(rhs);
        Quotient {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<C: Coefficient> Mul for &Quotient<C> {
    type Output = Quotient<C>;
    fn mul(self, rhs: Self) -> Quotient<C> {
        self.check_same_modulus(rhs);
        let n = self.coeffs.len();
        let mut coeffs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let idx = (i + j) % n;
                coeffs[idx] = coeffs[idx].clone() + a.clone() * b.clone();
            }
        }
        Quotient { coeffs }
    }
}
