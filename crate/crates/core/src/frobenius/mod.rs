//! Universal sl(n) Frobenius systems `R -> A = R[x]/(p(x))` with
//! `p(x) = x^n - a1 x^(n-1) - ... - an` and the form `eps(x^(n-1)) = 1`,
//! `eps(x^k) = 0` for `k < n-1`.

mod numeric;
mod product;
mod tensor;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{MultiPoly, VarTable};

pub use numeric::{a_invert, pushforward_genus_check, twist_system, TwistedSystem};
pub use product::{
    check_g_square_zero, crt_map_check, product_system, specialize_roots, ProductElement,
    ProductSystem,
};
pub use tensor::{comultiply, eps_tensor_mul, TensorElement};

/// Name of the quotient variable; always the last variable of `xtable`.
pub const X: &str = "x";

#[derive(Debug)]
struct SysData {
    n: usize,
    base: VarTable,
    xtable: VarTable,
    pcoeffs: Vec<MultiPoly>,
    roots: Option<Vec<usize>>,
    dual: Vec<(Vec<MultiPoly>, Vec<MultiPoly>)>,
}

/// A rank-n Frobenius system over `base`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct FrobSystem(Arc<SysData>);

impl PartialEq for FrobSystem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n
                && self.0.base == other.0.base
                && self.0.pcoeffs == other.0.pcoeffs)
    }
}

impl Eq for FrobSystem {}

impl FrobSystem {
    /// `Z[a1..an] -> Z[a1..an][x]/(p)` with the `a_k` as free generators.
    pub fn universal(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let base = VarTable::indexed("a", n);
        let pcoeffs = (0..n).map(|i| MultiPoly::var_at(&base, i)).collect();
        Self::build(base, pcoeffs, None)
    }

    /// System with arbitrary coefficients `(a1, ..., an)` over `base`.
    pub fn new(base: &VarTable, pcoeffs: Vec<MultiPoly>) -> Result<Self> {
        if pcoeffs.len() < 2 {
            return Err(Error::RankTooSmall(pcoeffs.len()));
        }
        Self::build(base.clone(), pcoeffs, None)
    }

    /// Fully numeric system over the rationals.
    pub fn numeric(pcoeffs: &[crate::polyring::Rational]) -> Result<Self> {
        let base = VarTable::empty();
        Self::new(
            &base,
            pcoeffs
                .iter()
                .map(|c| MultiPoly::constant(&base, c.clone()))
                .collect(),
        )
    }

    /// Rank >= 1; rank one only occurs as a factor of a product system.
    pub(crate) fn build(
        base: VarTable,
        pcoeffs: Vec<MultiPoly>,
        roots: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = pcoeffs.len();
        if base.contains(X) {
            return Err(Error::InternalInconsistency(
                "base table already contains x".into(),
            ));
        }
        let pcoeffs = pcoeffs
            .iter()
            .map(|c| c.retable(&base))
            .collect::<Result<Vec<_>>>()?;
        let xtable = base.with_var(X)?;
        let dual = closed_form_dual(&base, &pcoeffs);
        let sys = FrobSystem(Arc::new(SysData {
            n,
            base,
            xtable,
            pcoeffs,
            roots,
            dual,
        }));
        sys.check_duality()?;
        sys.check_lambda_inverse()?;
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.0.n
    }

    pub fn base(&self) -> &VarTable {
        &self.0.base
    }

    /// `base` with `x` appended.
    pub fn xtable(&self) -> &VarTable {
        &self.0.xtable
    }

    /// `(a1, ..., an)`.
    pub fn pcoeffs(&self) -> &[MultiPoly] {
        &self.0.pcoeffs
    }

    /// Root multiplicities, when the system came from [`specialize_roots`].
    pub fn root_multiplicities(&self) -> Option<&[usize]> {
        self.0.roots.as_deref()
    }

    pub fn is_numeric(&self) -> bool {
        self.0.pcoeffs.iter().all(|c| c.as_constant().is_some())
    }

    /// `p(x)` as a polynomial over `xtable`.
    pub fn p_poly(&self) -> MultiPoly {
        let xt = self.xtable();
        let x = MultiPoly::var(xt, X).unwrap();
        let n = self.rank();
        let mut p = x.pow(n as u32);
        for (k, a) in self.pcoeffs().iter().enumerate() {
            let a = a.retable(xt).unwrap();
            p = &p - &(&a * &x.pow((n - k - 1) as u32));
        }
        p
    }

    fn zero_coeff(&self) -> MultiPoly {
        MultiPoly::zero(self.base())
    }

    fn check_duality(&self) -> Result<()> {
        let pairs = self.dual_pairs();
        for (i, (xi, _)) in pairs.iter().enumerate() {
            for (j, (_, yj)) in pairs.iter().enumerate() {
                let v = (xi * yj).epsilon();
                let ok = if i == j { v.is_one() } else { v.is_zero() };
                if !ok {
                    return Err(Error::InternalInconsistency(format!(
                        "eps(x_{} y_{}) = {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_lambda_inverse(&self) -> Result<()> {
        let lam = frobenius_matrix(self);
        let inv = lambda_inverse_closed_form(self);
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.zero_coeff();
                for k in 0..n {
                    acc = &acc + &(&lam[i][k] * &inv[k][j]);
                }
                let ok = if i == j { acc.is_one() } else { acc.is_zero() };
                if !ok {
                    return Err(Error::InternalInconsistency(format!(
                        "lambda * lambda^-1 differs from the identity at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn dual_pairs(&self) -> Vec<(AElement, AElement)> {
        self.0
            .dual
            .iter()
            .map(|(a, b)| {
                (
                    AElement::raw(self, a.clone()),
                    AElement::raw(self, b.clone()),
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.rank(),
            "base": self.base().names(),
            "pcoeffs": self.pcoeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Json("missing `n`".into()))? as usize;
        let base = match v.get("base") {
            Some(Value::Array(names)) => VarTable::new(
                names
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::Json("bad `base`".into()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            )?,
            _ => VarTable::indexed("a", n),
        };
        let pcoeffs = poly_list(&v["pcoeffs"], &base)?;
        if pcoeffs.len() != n {
            return Err(Error::Json(format!(
                "expected {n} pcoeffs, got {}",
                pcoeffs.len()
            )));
        }
        FrobSystem::new(&base, pcoeffs)
    }
}

pub(crate) fn poly_list(v: &Value, table: &VarTable) -> Result<Vec<MultiPoly>> {
    v.as_array()
        .ok_or_else(|| Error::Json("expected an array of polynomial strings".into()))?
        .iter()
        .map(|s| {
            let s = s
                .as_str()
                .ok_or_else(|| Error::Json("expected a polynomial string".into()))?;
            MultiPoly::parse(table, s)
        })
        .collect()
}

/// `x_i = x^(n-i)`, `y_i = x^(i-1) - a1 x^(i-2) - ... - a_(i-1)` for `i = 1..n`.
fn closed_form_dual(
    base: &VarTable,
    pcoeffs: &[MultiPoly],
) -> Vec<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    let n = pcoeffs.len();
    let unit = |k: usize| {
        let mut v = vec![MultiPoly::zero(base); n];
        v[k] = MultiPoly::one(base);
        v
    };
    (1..=n)
        .map(|i| {
            let mut y = unit(i - 1);
            for j in 1..i {
                y[i - 1 - j] = -&pcoeffs[j - 1];
            }
            (unit(n - i), y)
        })
        .collect()
}

/// Element of `A`, stored as coefficients of `1, x, ..., x^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AElement {
    sys: FrobSystem,
    coeffs: Vec<MultiPoly>,
}

impl AElement {
    fn raw(sys: &FrobSystem, coeffs: Vec<MultiPoly>) -> Self {
        AElement {
            sys: sys.clone(),
            coeffs,
        }
    }

    pub fn new(sys: &FrobSystem, coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.len() != sys.rank() {
            return Err(Error::InternalInconsistency(format!(
                "expected {} coefficients, got {}",
                sys.rank(),
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .iter()
            .map(|c| c.retable(sys.base()))
            .collect::<Result<_>>()?;
        Ok(Self::raw(sys, coeffs))
    }

    pub fn zero(sys: &FrobSystem) -> Self {
        Self::raw(sys, vec![sys.zero_coeff(); sys.rank()])
    }

    pub fn one(sys: &FrobSystem) -> Self {
        Self::scalar(sys, MultiPoly::one(sys.base()))
    }

    pub fn scalar(sys: &FrobSystem, c: MultiPoly) -> Self {
        let mut e = Self::zero(sys);
        e.coeffs[0] = c;
        e
    }

    pub fn x(sys: &FrobSystem) -> Self {
        Self::x_pow(sys, 1)
    }

    pub fn x_pow(sys: &FrobSystem, k: usize) -> Self {
        let mut e = Self::one(sys);
        for _ in 0..k {
            e = e.mul_x();
        }
        e
    }

    /// Reduction of an arbitrary polynomial over `sys.xtable()` modulo `p(x)`.
    pub fn from_poly(sys: &FrobSystem, q: &MultiPoly) -> Result<Self> {
        reduce_mod_p(sys, q)
    }

    pub fn parse(sys: &FrobSystem, src: &str) -> Result<Self> {
        reduce_mod_p(sys, &MultiPoly::parse(sys.xtable(), src)?)
    }

    pub fn system(&self) -> &FrobSystem {
        &self.sys
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let xt = self.sys.xtable();
        let x = MultiPoly::var(xt, X).unwrap();
        let mut out = MultiPoly::zero(xt);
        let mut xp = MultiPoly::one(xt);
        for c in &self.coeffs {
            out = &out + &(&c.retable(xt).unwrap() * &xp);
            xp = &xp * &x;
        }
        out
    }

    /// The Frobenius form: coefficient of `x^(n-1)`.
    pub fn epsilon(&self) -> MultiPoly {
        self.coeffs[self.sys.rank() - 1].clone()
    }

    /// Multiplication by `x` followed by one reduction step.
    pub fn mul_x(&self) -> AElement {
        let n = self.sys.rank();
        let top = &self.coeffs[n - 1];
        let a = self.sys.pcoeffs();
        let mut out = Vec::with_capacity(n);
        out.push(top * &a[n - 1]);
        for k in 1..n {
            out.push(&self.coeffs[k - 1] + &(top * &a[n - k - 1]));
        }
        AElement::raw(&self.sys, out)
    }

    pub fn scale(&self, c: &MultiPoly) -> AElement {
        AElement::raw(&self.sys, self.coeffs.iter().map(|v| v * c).collect())
    }

    fn check(&self, other: &AElement) -> Result<()> {
        if self.sys == other.sys {
            Ok(())
        } else {
            Err(Error::SystemMismatch)
        }
    }

    pub fn add(&self, other: &AElement) -> Result<AElement> {
        self.check(other)?;
        Ok(AElement::raw(
            &self.sys,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &AElement) -> Result<AElement> {
        self.check(other)?;
        Ok(AElement::raw(
            &self.sys,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Product in `A`: `sum_j v_j (x^j u)`.
    pub fn mul(&self, other: &AElement) -> Result<AElement> {
        self.check(other)?;
        let mut acc = AElement::zero(&self.sys);
        let mut shifted = self.clone();
        for (j, c) in other.coeffs.iter().enumerate() {
            if j > 0 {
                shifted = shifted.mul_x();
            }
            if c.is_zero() {
                continue;
            }
            for (slot, s) in acc.coeffs.iter_mut().zip(&shifted.coeffs) {
                if !s.is_zero() {
                    *slot = &*slot + &(s * c);
                }
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> AElement {
        let mut out = AElement::one(&self.sys);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.sys.to_json();
        v["coeffs"] = self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .into();
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let sys = FrobSystem::from_json(v)?;
        let coeffs = poly_list(&v["coeffs"], sys.base())?;
        AElement::new(&sys, coeffs)
    }
}

/// Prints by descending power of `x`, e.g. `x^2 - a1*x - a2`.
impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        let last = self.sys.xtable().len() - 1;
        p.fmt_sorted_by(f, |a, b| {
            a.exps()[last].cmp(&b.exps()[last]).then_with(|| {
                let ra = crate::polyring::Monomial::new(a.exps()[..last].to_vec());
                let rb = crate::polyring::Monomial::new(b.exps()[..last].to_vec());
                ra.cmp(&rb)
            })
        })
    }
}

impl<'a> Add<&'a AElement> for &'a AElement {
    type Output = AElement;
    fn add(self, rhs: &'a AElement) -> AElement {
        AElement::add(self, rhs).expect("elements of different systems")
    }
}

impl<'a> Sub<&'a AElement> for &'a AElement {
    type Output = AElement;
    fn sub(self, rhs: &'a AElement) -> AElement {
        AElement::sub(self, rhs).expect("elements of different systems")
    }
}

impl<'a> Mul<&'a AElement> for &'a AElement {
    type Output = AElement;
    fn mul(self, rhs: &'a AElement) -> AElement {
        AElement::mul(self, rhs).expect("elements of different systems")
    }
}

impl Neg for &AElement {
    type Output = AElement;
    fn neg(self) -> AElement {
        AElement::raw(&self.sys, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Replaces `x^n` by `a1 x^(n-1) + ... + an` until the `x`-degree is below `n`.
pub fn reduce_mod_p(sys: &FrobSystem, q: &MultiPoly) -> Result<AElement> {
    let q = q.retable(sys.xtable())?;
    let mut cs = q.coefficients_in(X, sys.base())?;
    let n = sys.rank();
    let a = sys.pcoeffs();
    for d in (n..cs.len()).rev() {
        let top = std::mem::replace(&mut cs[d], sys.zero_coeff());
        if top.is_zero() {
            continue;
        }
        for (j, aj) in a.iter().enumerate() {
            let slot = d - (j + 1);
            cs[slot] = &cs[slot] + &(&top * aj);
        }
    }
    cs.resize(n.max(cs.len()), sys.zero_coeff());
    cs.truncate(n);
    Ok(AElement::raw(sys, cs))
}

/// `eps` evaluated on an element.
pub fn epsilon(u: &AElement) -> MultiPoly {
    u.epsilon()
}

/// `[[eps(x^(i+j-2))]]` for `i, j = 1..n`.
pub fn frobenius_matrix(sys: &FrobSystem) -> Matrix<MultiPoly> {
    let n = sys.rank();
    let mut eps_pows = Vec::with_capacity(2 * n);
    let mut xp = AElement::one(sys);
    for _ in 0..2 * n - 1 {
        eps_pows.push(xp.epsilon());
        xp = xp.mul_x();
    }
    (0..n)
        .map(|i| (0..n).map(|j| eps_pows[i + j].clone()).collect())
        .collect()
}

/// The explicit inverse of the Frobenius matrix: anti-diagonal ones, `-a_k`
/// above it along the anti-diagonals, zeros below.
pub fn lambda_inverse_closed_form(sys: &FrobSystem) -> Matrix<MultiPoly> {
    let n = sys.rank();
    let a = sys.pcoeffs();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| match (i + j).cmp(&(n + 1)) {
                    Ordering::Equal => MultiPoly::one(sys.base()),
                    Ordering::Less => -&a[n - i - j],
                    Ordering::Greater => sys.zero_coeff(),
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub pairs: Vec<(AElement, AElement)>,
}

impl fmt::Display for DualBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        f.write_str("}")
    }
}

impl DualBasis {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.pairs
                .iter()
                .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                .collect(),
        )
    }
}

/// The closed-form dual basis. Duality `eps(x_i y_j) = delta_ij` and
/// `lambda * lambda^-1 = I` are verified when the system is built.
pub fn dual_basis(sys: &FrobSystem) -> DualBasis {
    DualBasis {
        pairs: sys.dual_pairs(),
    }
}

/// `g = sum_i x_i y_i`, cross-checked against `p'(x) mod p(x)`.
pub fn genus_term(sys: &FrobSystem) -> Result<AElement> {
    let from_dual = sys
        .dual_pairs()
        .iter()
        .fold(AElement::zero(sys), |acc, (x, y)| &acc + &(x * y));
    let from_derivative = reduce_mod_p(sys, &sys.p_poly().derivative(X)?)?;
    if from_dual != from_derivative {
        return Err(Error::InternalInconsistency(format!(
            "sum x_i y_i = {from_dual} but p'(x) = {from_derivative}"
        )));
    }
    Ok(from_dual)
}

pub fn g_power(sys: &FrobSystem, i: usize) -> Result<AElement> {
    Ok(genus_term(sys)?.pow(i))
}

/// `eps(mark * g^genus)`: a closed genus-`genus` surface carrying `mark`.
pub fn closed_surface_eval(sys: &FrobSystem, genus: usize, mark: &AElement) -> Result<MultiPoly> {
    let g = g_power(sys, genus)?;
    Ok(mark.mul(&g)?.epsilon())
}
