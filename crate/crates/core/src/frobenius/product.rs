//! Root specializations `p(x) = prod_i (x + alpha_i)^(k_i)` and the product
//! systems obtained from them by the Chinese remainder theorem.

use serde_json::{json, Value};

use super::{
    dual_basis, frobenius_matrix, genus_term, reduce_mod_p, AElement, DualBasis, FrobSystem, X,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{MultiPoly, VarTable};

fn root_table(m: usize) -> VarTable {
    VarTable::indexed("alpha", m)
}

fn check_multiplicities(mults: &[usize]) -> Result<usize> {
    let n: usize = mults.iter().sum();
    if mults.is_empty() || mults.contains(&0) || n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    Ok(n)
}

/// `(a_1, ..., a_n)` of `prod (x + alpha_i)^(k_i)` over `alpha1..alpham`.
fn coefficients_from_roots(base: &VarTable, mults: &[usize]) -> Vec<MultiPoly> {
    let xt = base.with_var(X).unwrap();
    let x = MultiPoly::var(&xt, X).unwrap();
    let mut p = MultiPoly::one(&xt);
    for (i, &k) in mults.iter().enumerate() {
        let alpha = MultiPoly::var(&xt, &base.names()[i]).unwrap();
        p = &p * &(&x + &alpha).pow(k as u32);
    }
    let n: usize = mults.iter().sum();
    let cs = p.coefficients_in(X, base).unwrap();
    (1..=n).map(|k| -&cs[n - k]).collect()
}

/// The system `Z[alpha] -> Z[alpha][x]/(prod (x + alpha_i)^(k_i))`, so that
/// `a_k = -e_k` of the root multiset.
pub fn specialize_roots(mults: &[usize]) -> Result<FrobSystem> {
    check_multiplicities(mults)?;
    let base = root_table(mults.len());
    let pcoeffs = coefficients_from_roots(&base, mults);
    FrobSystem::build(base, pcoeffs, Some(mults.to_vec()))
}

/// Whether `g^2 = 0` after specializing; `g^3` and `g^4` must agree.
pub fn check_g_square_zero(mults: &[usize]) -> Result<bool> {
    let sys = specialize_roots(mults)?;
    let g = genus_term(&sys)?;
    let g2 = &g * &g;
    let g3 = &g2 * &g;
    let g4 = &g3 * &g;
    let verdict = g2.is_zero();
    if g3.is_zero() != verdict || g4.is_zero() != verdict {
        return Err(Error::InternalInconsistency(format!(
            "powers of g disagree for multiplicities {mults:?}: g^2 {}, g^3 {}, g^4 {}",
            g2.is_zero(),
            g3.is_zero(),
            g4.is_zero()
        )));
    }
    Ok(verdict)
}

/// Element of the product ring, one component per distinct root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductElement {
    pub parts: Vec<AElement>,
}

impl ProductElement {
    pub fn mul(&self, other: &ProductElement) -> Result<ProductElement> {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(ProductElement { parts })
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(AElement::is_zero)
    }
}

/// `Z[alpha] -> prod_i Z[alpha][x]/((x + alpha_i)^(k_i))` with the local
/// sl(k_i) form on each factor.
#[derive(Clone, Debug)]
pub struct ProductSystem {
    pub multiplicities: Vec<usize>,
    pub base: VarTable,
    pub factors: Vec<FrobSystem>,
    pub local_duals: Vec<DualBasis>,
    /// Block diagonal, blocks in factor order.
    pub lambda_prime: Matrix<MultiPoly>,
    pub g_prime: ProductElement,
}

pub fn product_system(mults: &[usize]) -> Result<ProductSystem> {
    let n = check_multiplicities(mults)?;
    let base = root_table(mults.len());
    let mut factors = Vec::with_capacity(mults.len());
    for (i, &k) in mults.iter().enumerate() {
        let mut local = vec![0; mults.len()];
        local[i] = k;
        let pcoeffs = coefficients_from_roots(&base, &local);
        factors.push(FrobSystem::build(base.clone(), pcoeffs, None)?);
    }
    let mut lambda_prime = vec![vec![MultiPoly::zero(&base); n]; n];
    let mut offset = 0;
    for f in &factors {
        let block = frobenius_matrix(f);
        for (i, row) in block.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                lambda_prime[offset + i][offset + j] = v;
            }
        }
        offset += f.rank();
    }
    let local_duals = factors.iter().map(dual_basis).collect();
    let g_prime = ProductElement {
        parts: factors.iter().map(genus_term).collect::<Result<_>>()?,
    };
    Ok(ProductSystem {
        multiplicities: mults.to_vec(),
        base,
        factors,
        local_duals,
        lambda_prime,
        g_prime,
    })
}

impl ProductSystem {
    /// `a -> (a mod (x + alpha_1)^(k_1), ..., a mod (x + alpha_m)^(k_m))`.
    pub fn phi(&self, a: &AElement) -> Result<ProductElement> {
        let q = a.to_poly();
        let parts = self
            .factors
            .iter()
            .map(|f| reduce_mod_p(f, &q))
            .collect::<Result<_>>()?;
        Ok(ProductElement { parts })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "multiplicities": self.multiplicities,
            "base": self.base.names(),
            "lambda_prime": self.lambda_prime.iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "local_dual_bases": self.local_duals.iter().map(DualBasis::to_json).collect::<Vec<_>>(),
            "g_prime": self.g_prime.parts.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Checks `eps~(x^k) = eps^(phi(x^k))` for `k < n`, with `eps^` computed on
/// the product side independently of `eps~`: as the sum of the residues of
/// `u_i / p` at the roots, i.e. `sum_i eps'_i(u_i / q_i)` where
/// `q_i = p / (x + alpha_i)^(k_i)`. Denominators are cleared: with
/// `c_i = q_i(-alpha_i)` and `D_i = c_i^(k_i)`, the local element
/// `w_i = D_i / q_i` is polynomial and the identity checked is
/// `L eps~(x^k) = sum_i (L / D_i) eps'_i(w_i phi_i(x^k))`, `L = prod D_i`.
pub fn crt_map_check(mults: &[usize]) -> Result<bool> {
    let full = specialize_roots(mults)?;
    let prod = product_system(mults)?;
    let base = &prod.base;
    let m = mults.len();

    let mut scale = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (i, f) in prod.factors.iter().enumerate() {
        let k = mults[i];
        let xt = f.xtable();
        let x = MultiPoly::var(xt, X)?;
        let mut q = MultiPoly::one(xt);
        let mut c0 = MultiPoly::one(base);
        for (j, &kj) in mults.iter().enumerate() {
            if j == i {
                continue;
            }
            let aj = MultiPoly::var(xt, &base.names()[j])?;
            q = &q * &(&x + &aj).pow(kj as u32);
            let diff =
                &MultiPoly::var(base, &base.names()[j])? - &MultiPoly::var(base, &base.names()[i])?;
            c0 = &c0 * &diff.pow(kj as u32);
        }
        let q_local = reduce_mod_p(f, &q)?;
        // c0 - q is divisible by (x + alpha_i), hence nilpotent locally.
        let nil = &AElement::scalar(f, c0.clone()) - &q_local;
        let mut w = AElement::zero(f);
        let mut nil_pow = AElement::one(f);
        for r in 0..k {
            w = &w + &nil_pow.scale(&c0.pow((k - 1 - r) as u32));
            nil_pow = &nil_pow * &nil;
        }
        let d = c0.pow(k as u32);
        if &q_local * &w != AElement::scalar(f, d.clone()) {
            return Err(Error::InternalInconsistency(format!(
                "local inverse of q_{} failed",
                i + 1
            )));
        }
        scale.push(d);
        weights.push(w);
    }
    let total = scale.iter().fold(MultiPoly::one(base), |acc, d| &acc * d);

    let n = full.rank();
    let mut xk = AElement::one(&full);
    for _ in 0..n {
        let lhs = &total * &xk.epsilon();
        let image = prod.phi(&xk)?;
        let mut rhs = MultiPoly::zero(base);
        for i in 0..m {
            let others = (0..m)
                .filter(|&j| j != i)
                .fold(MultiPoly::one(base), |acc, j| &acc * &scale[j]);
            rhs = &rhs + &(&others * &(&weights[i] * &image.parts[i]).epsilon());
        }
        if lhs != rhs {
            return Ok(false);
        }
        xk = xk.mul_x();
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialize_examples() {
        let s = specialize_roots(&[1, 1]).unwrap();
        let b = s.base();
        assert_eq!(
            s.pcoeffs()[0],
            MultiPoly::parse(b, "-alpha1 - alpha2").unwrap()
        );
        assert_eq!(
            s.pcoeffs()[1],
            MultiPoly::parse(b, "-alpha1*alpha2").unwrap()
        );

        let s = specialize_roots(&[4]).unwrap();
        assert_eq!(
            s.pcoeffs()[0],
            MultiPoly::parse(s.base(), "-4*alpha1").unwrap()
        );

        let s = specialize_roots(&[2, 1]).unwrap();
        let b = s.base();
        let expect = [
            "-(2*alpha1 + alpha2)",
            "-(alpha1^2 + 2*alpha1*alpha2)",
            "-alpha1^2*alpha2",
        ];
        for (got, e) in s.pcoeffs().iter().zip(expect) {
            assert_eq!(got, &MultiPoly::parse(b, e).unwrap());
        }
        assert_eq!(specialize_roots(&[1]).unwrap_err(), Error::RankTooSmall(1));
    }

    #[test]
    fn g_square_examples() {
        assert!(check_g_square_zero(&[2, 2]).unwrap());
        assert!(!check_g_square_zero(&[1, 3]).unwrap());
        assert!(check_g_square_zero(&[2]).unwrap());
    }

    #[test]
    fn product_examples() {
        let p = product_system(&[1, 1]).unwrap();
        let b = &p.base;
        let id = vec![
            vec![MultiPoly::one(b), MultiPoly::zero(b)],
            vec![MultiPoly::zero(b), MultiPoly::one(b)],
        ];
        assert_eq!(p.lambda_prime, id);
        assert!(p.g_prime.parts.iter().all(|g| g.coeffs()[0].is_one()));

        let p = product_system(&[3]).unwrap();
        let local = frobenius_matrix(&specialize_roots(&[3]).unwrap());
        assert_eq!(p.lambda_prime, local);

        let p = product_system(&[2, 2]).unwrap();
        assert!(p.g_prime.mul(&p.g_prime).unwrap().is_zero());
        let p = product_system(&[2, 1]).unwrap();
        assert!(!p.g_prime.mul(&p.g_prime).unwrap().is_zero());
    }

    #[test]
    fn crt_examples() {
        assert!(crt_map_check(&[1, 1]).unwrap());
        assert!(crt_map_check(&[3]).unwrap());
        assert!(crt_map_check(&[2, 1]).unwrap());
    }
}
