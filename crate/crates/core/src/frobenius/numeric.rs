//! Computations that need a fully numeric base ring: inverses, twisted
//! Frobenius forms and the CRT pushforward of the genus term.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{genus_term, AElement, FrobSystem};
use crate::error::{Error, Result};
use crate::linalg::{inverse, solve};
use crate::polyring::{MultiPoly, Rational};

fn numeric_coeffs(u: &AElement) -> Result<Vec<Rational>> {
    u.coeffs()
        .iter()
        .map(|c| c.as_constant().ok_or(Error::NotNumeric))
        .collect()
}

fn from_numbers(sys: &FrobSystem, v: &[Rational]) -> AElement {
    let coeffs = v
        .iter()
        .map(|c| MultiPoly::constant(sys.base(), c.clone()))
        .collect();
    AElement::new(sys, coeffs).expect("length n")
}

/// Solves `u v = 1` through the matrix of multiplication by `u`.
pub fn a_invert(u: &AElement) -> Result<AElement> {
    let sys = u.system();
    if !sys.is_numeric() {
        return Err(Error::NotNumeric);
    }
    let n = sys.rank();
    let mut cols = Vec::with_capacity(n);
    let mut shifted = u.clone();
    for j in 0..n {
        if j > 0 {
            shifted = shifted.mul_x();
        }
        cols.push(numeric_coeffs(&shifted)?);
    }
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let mut e0 = vec![Rational::zero(); n];
    e0[0] = Rational::one();
    let v = solve(&m, &e0).ok_or(Error::NotInvertible)?;
    Ok(from_numbers(sys, &v))
}

/// The system `(eps(d _), (x_i, d^-1 y_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedSystem {
    /// `eps_d(x^k)` for `k = 0..n`.
    pub form_values: Vec<Rational>,
    pub dual: Vec<(AElement, AElement)>,
    pub genus: AElement,
}

pub fn twist_system(sys: &FrobSystem, d: &AElement) -> Result<TwistedSystem> {
    if d.system() != sys {
        return Err(Error::SystemMismatch);
    }
    let d_inv = a_invert(d)?;
    let n = sys.rank();
    let eps_d = |u: &AElement| (d * u).epsilon().as_constant().ok_or(Error::NotNumeric);
    let form_values = (0..n)
        .map(|k| eps_d(&AElement::x_pow(sys, k)))
        .collect::<Result<Vec<_>>>()?;
    let dual: Vec<(AElement, AElement)> = sys
        .dual_pairs()
        .into_iter()
        .map(|(x, y)| (x, &d_inv * &y))
        .collect();
    for (i, (xi, _)) in dual.iter().enumerate() {
        for (j, (_, yj)) in dual.iter().enumerate() {
            let v = eps_d(&(xi * yj))?;
            if v != if i == j {
                Rational::one()
            } else {
                Rational::zero()
            } {
                return Err(Error::InternalInconsistency(
                    "twisted dual basis is not dual".into(),
                ));
            }
        }
    }
    let genus = dual
        .iter()
        .fold(AElement::zero(sys), |acc, (x, y)| &acc + &(x * y));
    if &genus * d != genus_term(sys)? {
        return Err(Error::InternalInconsistency(
            "twisted genus term times d differs from g".into(),
        ));
    }
    Ok(TwistedSystem {
        form_values,
        dual,
        genus,
    })
}

/// For `p(x) = prod (x + r_i)` with distinct rationals `r_i`, compares
/// `phi(g)` with the genus term computed in `Q^n` from the transported form
/// `eps o phi^-1`, where `phi(a) = (a(-r_1), ..., a(-r_n))`.
pub fn pushforward_genus_check(roots: &[Rational]) -> Result<bool> {
    let n = roots.len();
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    if roots.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::RootsNotDistinct);
    }
    // p(x) = prod (x + r_i); collect a_k = -e_k(r).
    let mut poly = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * r;
            next[i + 1] += c;
        }
        poly = next;
    }
    let pcoeffs: Vec<Rational> = (1..=n).map(|k| -poly[n - k].clone()).collect();
    let sys = FrobSystem::numeric(&pcoeffs)?;

    let points: Vec<Rational> = roots.iter().map(|r| -r.clone()).collect();
    let eval = |u: &AElement| -> Result<Vec<Rational>> {
        let cs = numeric_coeffs(u)?;
        Ok(points
            .iter()
            .map(|t| cs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c))
            .collect())
    };

    // phi^-1 of the idempotent e_i: solve the Vandermonde system.
    let vander: Vec<Vec<Rational>> = points
        .iter()
        .map(|t| (0..n).map(|k| num_traits::pow(t.clone(), k)).collect())
        .collect();
    let idempotents = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            solve(&vander, &e)
                .map(|v| from_numbers(&sys, &v))
                .ok_or(Error::RootsNotDistinct)
        })
        .collect::<Result<Vec<_>>>()?;
    let transported: Vec<Rational> = idempotents
        .iter()
        .map(|e| e.epsilon().as_constant().ok_or(Error::NotNumeric))
        .collect::<Result<_>>()?;

    // Gram matrix on the idempotent basis; e_i e_j = delta_ij e_i in Q^n.
    let gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        transported[i].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let gram_inv = inverse(&gram)
        .ok_or_else(|| Error::InternalInconsistency("transported form degenerate".into()))?;
    // y_j = sum_k (G^-1)_jk e_k, so g~ = sum_j e_j y_j has component j equal to (G^-1)_jj.
    let intrinsic: Vec<Rational> = (0..n).map(|j| gram_inv[j][j].clone()).collect();

    let pushed = eval(&genus_term(&sys)?)?;
    Ok(pushed == intrinsic)
}
