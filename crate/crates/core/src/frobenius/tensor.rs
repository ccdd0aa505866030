use std::collections::BTreeMap;
use std::fmt;

use super::{AElement, FrobSystem};
use crate::error::{Error, Result};
use crate::polyring::MultiPoly;

/// Element of `A (x)_R A`, expanded over the basis `x^i (x) x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    sys: FrobSystem,
    terms: BTreeMap<(usize, usize), MultiPoly>,
}

impl TensorElement {
    pub fn zero(sys: &FrobSystem) -> Self {
        TensorElement {
            sys: sys.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `u (x) v`.
    pub fn pure(u: &AElement, v: &AElement) -> Result<Self> {
        u.check(v)?;
        let mut t = TensorElement::zero(u.system());
        for (i, a) in u.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    t.add_term((i, j), a * b);
                }
            }
        }
        Ok(t)
    }

    pub fn system(&self) -> &FrobSystem {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^i (x) x^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> MultiPoly {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.sys.base()))
    }

    fn add_term(&mut self, key: (usize, usize), c: MultiPoly) {
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.sys != other.sys {
            return Err(Error::SystemMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> TensorElement {
        let mut out = TensorElement::zero(&self.sys);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Exchanges the two tensor factors.
    pub fn swap(&self) -> TensorElement {
        TensorElement {
            sys: self.sys.clone(),
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((*j, *i), c.clone()))
                .collect(),
        }
    }

    /// Applies the multiplication map `a (x) b -> ab`.
    pub fn multiply_out(&self) -> AElement {
        let mut acc = AElement::zero(&self.sys);
        for ((i, j), c) in &self.terms {
            acc = &acc + &AElement::x_pow(&self.sys, i + j).scale(c);
        }
        acc
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let pw = |k: usize| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        for (n, ((i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            write!(f, "{}⊗{}", pw(*i), pw(*j))?;
        }
        Ok(())
    }
}

/// `Delta(u) = sum_i (x_i u) (x) y_i` over the dual basis.
pub fn comultiply(u: &AElement) -> TensorElement {
    let sys = u.system();
    let mut out = TensorElement::zero(sys);
    for (x, y) in sys.dual_pairs() {
        let term = TensorElement::pure(&(&x * u), &y).expect("same system");
        out = out.add(&term).expect("same system");
    }
    out
}

/// `(a (x) b)(a' (x) b') = a eps(b a') (x) b'`, extended bilinearly.
pub fn eps_tensor_mul(s: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
    if s.sys != t.sys {
        return Err(Error::SystemMismatch);
    }
    let lam = super::frobenius_matrix(&s.sys);
    let mut out = TensorElement::zero(&s.sys);
    for ((i, j), c) in &s.terms {
        for ((k, l), d) in &t.terms {
            let e = &lam[*j][*k];
            if e.is_zero() {
                continue;
            }
            out.add_term((*i, *l), &(c * d) * e);
        }
    }
    Ok(out)
}
