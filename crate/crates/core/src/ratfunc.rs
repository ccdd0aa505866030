//! Univariate polynomials over the rationals and their fraction field.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MultiPoly, Rational, VarTable};

/// Dense coefficients, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.0.len().max(other.0.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        UniPoly::new(
            (0..len)
                .map(|i| get(&self.0, i) + get(&other.0, i))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().unwrap().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - dd;
            let q = &top * &lead_inv;
            for (k, d) in divisor.0[..dd].iter().enumerate() {
                rem[shift + k] -= &q * d;
            }
            quot[shift] = q;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// From a polynomial over a one-variable table.
    pub fn from_multi(p: &MultiPoly) -> Result<UniPoly> {
        if p.table().len() > 1 {
            return Err(Error::InternalInconsistency(format!(
                "{p} is not univariate"
            )));
        }
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.degree() as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_multi(&self, table: &VarTable) -> MultiPoly {
        assert_eq!(table.len(), 1, "expected a one-variable table");
        MultiPoly::from_terms(
            table,
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::new(vec![k as u32]), c.clone())),
        )
    }
}

/// A reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::constant(Rational::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().unwrap().recip();
        RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::constant(Rational::one()),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    /// The numerator, if the denominator is one.
    pub fn as_poly(&self) -> Option<&UniPoly> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }
}

impl crate::linalg::Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::constant(<Rational as One>::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        crate::linalg::Field::add(self, &crate::linalg::Field::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!other.num.is_zero(), "division by zero");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = VarTable::new(["t"]).expect("one name");
        match self.as_poly() {
            Some(p) => write!(f, "{}", p.to_multi(&table)),
            None => write!(
                f,
                "({})/({})",
                self.num.to_multi(&table),
                self.den.to_multi(&table)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::polyring::{rat, ratio};

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let (q, r) = up(&[-1, 0, 1]).div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(up(&[-1, 0, 1]).gcd(&up(&[2, 2])), up(&[1, 1]));
        assert_eq!(up(&[1, 1]).gcd(&up(&[1])), up(&[1]));
    }

    #[test]
    fn fractions_reduce() {
        let a = RatFunc::new(up(&[-1, 0, 1]), up(&[2, 2]));
        assert_eq!(
            a.as_poly(),
            Some(&UniPoly::new(vec![ratio(-1, 2), ratio(1, 2)]))
        );
        let inv = Field::div(&RatFunc::one(), &RatFunc::from_poly(up(&[0, 1])));
        assert_eq!(
            Field::mul(&inv, &RatFunc::from_poly(up(&[0, 2]))),
            RatFunc::from_poly(up(&[2]))
        );
        assert!(Field::sub(&inv, &inv).is_zero());
    }
}
