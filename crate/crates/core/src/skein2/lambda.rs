//! Functionals detecting incompressible surfaces when every root of `p` is
//! repeated, and the linear dependence among unmarked spheres in the genus
//! family of tubed surfaces.

use super::{surface::rank2_system, SkeinElement, SphereConfig};
use crate::error::{Error, Result};
use crate::frobenius::{g_power, reduce_mod_p, specialize_roots, AElement, FrobSystem};
use crate::polyring::{MultiPoly, VarTable};

use super::Mark::{Dot as D, Plain as P};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbstractComponent {
    /// The incompressible surface `F`, marked `x^power`.
    MarkedF {
        power: u32,
    },
    Sphere(AElement),
    CompressibleTorus(AElement),
    Other,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractSurface {
    pub components: Vec<AbstractComponent>,
}

impl AbstractSurface {
    pub fn new(components: Vec<AbstractComponent>) -> Self {
        AbstractSurface { components }
    }
}

fn check_repeated(sys: &FrobSystem, root_index: usize) -> Result<()> {
    let mults = sys.root_multiplicities().ok_or(Error::RootNotRepeated(0))?;
    if let Some(i) = mults.iter().position(|&k| k < 2) {
        return Err(Error::RootNotRepeated(i + 1));
    }
    if root_index == 0 || root_index > mults.len() {
        return Err(Error::RootIndexOutOfRange(root_index));
    }
    Ok(())
}

/// `-alpha_i` in the base ring of a root specialization.
fn neg_root(sys: &FrobSystem, root_index: usize) -> Result<MultiPoly> {
    Ok(-&MultiPoly::var(sys.base(), &format!("alpha{root_index}"))?)
}

/// `(-alpha)^k prod eps(sphere marks) prod eps(torus mark g)` when the
/// surface is `F` marked `x^k` plus spheres and compressible tori; the bare
/// product without `F`; zero otherwise.
pub fn lambda_f_eval(
    s: &AbstractSurface,
    sys: &FrobSystem,
    root_index: usize,
) -> Result<MultiPoly> {
    check_repeated(sys, root_index)?;
    let g = g_power(sys, 1)?;
    let mut value = MultiPoly::one(sys.base());
    let mut f_power = None;
    for c in &s.components {
        match c {
            AbstractComponent::MarkedF { power } => {
                if f_power.replace(*power).is_some() {
                    return Ok(MultiPoly::zero(sys.base()));
                }
            }
            AbstractComponent::Sphere(m) => value = &value * &m.mul(&AElement::one(sys))?.epsilon(),
            AbstractComponent::CompressibleTorus(m) => value = &value * &m.mul(&g)?.epsilon(),
            AbstractComponent::Other => return Ok(MultiPoly::zero(sys.base())),
        }
    }
    if let Some(k) = f_power {
        value = &value * &neg_root(sys, root_index)?.pow(k);
    }
    Ok(value)
}

/// `lambda_F` extended linearly to `F` carrying an arbitrary mark.
fn lambda_on_marked_f(mark: &AElement, sys: &FrobSystem, root_index: usize) -> Result<MultiPoly> {
    let mut total = MultiPoly::zero(sys.base());
    for (k, c) in mark.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = AbstractSurface::new(vec![AbstractComponent::MarkedF { power: k as u32 }]);
        total = &total + &(c * &lambda_f_eval(&s, sys, root_index)?);
    }
    Ok(total)
}

/// Whether `lambda_F` kills the neck-cutting combination, i.e.
/// `p'(-alpha) = n(-alpha)^(n-1) - sum_j a_(n-1-j) (j+1) (-alpha)^j = 0`, and
/// respects `x^n = a1 x^(n-1) + ... + an`. The first is computed both from
/// the explicit sum and by applying `lambda_F` to `F` marked `g`.
pub fn neckcut_functional_check(mults: &[usize], root_index: usize) -> Result<bool> {
    let sys = specialize_roots(mults)?;
    check_repeated(&sys, root_index)?;
    let n = sys.rank();
    let a = sys.pcoeffs();
    let t = neg_root(&sys, root_index)?;

    let mut derivative = &MultiPoly::int(sys.base(), n as i64) * &t.pow(n as u32 - 1);
    for j in 0..=n - 2 {
        let term = &(&a[n - 2 - j] * &MultiPoly::int(sys.base(), j as i64 + 1)) * &t.pow(j as u32);
        derivative = &derivative - &term;
    }
    let via_functional = lambda_on_marked_f(&g_power(&sys, 1)?, &sys, root_index)?;

    let lhs = t.pow(n as u32);
    let rhs = (1..=n).fold(MultiPoly::zero(sys.base()), |acc, k| {
        &acc + &(&a[k - 1] * &t.pow((n - k) as u32))
    });
    let x_n = reduce_mod_p(&sys, &MultiPoly::var(sys.xtable(), "x")?.pow(n as u32))?;
    let ring_compatible = lhs == rhs && lambda_on_marked_f(&x_n, &sys, root_index)? == lhs;

    Ok(derivative.is_zero() && via_functional.is_zero() && ring_compatible)
}

/// Values of the tube closing a pair of adjacent spheres: `t_plain` when
/// both are plain, `t_dot` when one carries a dot. They enter the relations
/// `d,d = t_dot (delete both) - a2 p,p` and
/// `d,p + p,d = a1 p,p + t_plain (delete both)` over `Q[a1, a2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeParams {
    pub t_plain: MultiPoly,
    pub t_dot: MultiPoly,
}

impl TubeParams {
    /// The spheres of `S^2 x S^1`: `(0, 1)`.
    pub fn sphere() -> Self {
        let base = rank2_system().base();
        TubeParams {
            t_plain: MultiPoly::zero(base),
            t_dot: MultiPoly::one(base),
        }
    }

    /// `(eps(g^(2i)), eps(x g^(2i)))` in the rank-2 system.
    pub fn genus_family(i: usize) -> Result<Self> {
        let sys = rank2_system();
        let g = g_power(sys, 2 * i)?;
        Ok(TubeParams {
            t_plain: g.epsilon(),
            t_dot: AElement::x(sys).mul(&g)?.epsilon(),
        })
    }
}

/// Both sides of `(4 a2 + a1^2) p,p,p = 4 t_dot p` as derived by the chain
/// `a1^2 p,p,p = 2 a1 d,p,p - ... = 4 d,d,p - ... = 4 t_dot p - 4 a2 p,p,p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub lhs: SkeinElement,
    pub rhs: SkeinElement,
    pub params: TubeParams,
}

/// Undoes relation 2 on the plain pair at `pos..pos+2` of `config`: the
/// coefficient `c` must be divisible by `a1`, and `c p,p` becomes
/// `c/a1 (d,p + p,d - t_plain (delete both))`.
fn split_plain_pair(
    elt: &SkeinElement,
    config: &SphereConfig,
    pos: usize,
    params: &TubeParams,
) -> Result<SkeinElement> {
    let c = elt.coefficient(config);
    let w = config.word();
    if w.get(pos..pos + 2) != Some(&[P, P]) {
        return Err(Error::PatternMismatch(2));
    }
    let q = c
        .div_var("a1")?
        .ok_or_else(|| Error::InternalInconsistency(format!("{c} is not divisible by a1")))?;
    let mut out = elt.clone();
    out.add_term(config.clone(), -&c);
    let splice = |with: &[super::Mark]| [&w[..pos], with, &w[pos + 2..]].concat();
    out.add_word(&splice(&[D, P]), q.clone());
    out.add_word(&splice(&[P, D]), q.clone());
    out.add_word(&splice(&[]), -&(&q * &params.t_plain));
    Ok(out)
}

/// Relation 1 with tube parameters on the dot pair at `pos..pos+2`.
fn annihilate_dots(
    elt: &SkeinElement,
    config: &SphereConfig,
    pos: usize,
    params: &TubeParams,
) -> Result<SkeinElement> {
    let c = elt.coefficient(config);
    let w = config.word();
    if w.get(pos..pos + 2) != Some(&[D, D]) {
        return Err(Error::PatternMismatch(1));
    }
    let a2 = MultiPoly::var(elt.table(), "a2")?;
    let mut out = elt.clone();
    out.add_term(config.clone(), -&c);
    let splice = |with: &[super::Mark]| [&w[..pos], with, &w[pos + 2..]].concat();
    out.add_word(&splice(&[]), &c * &params.t_dot);
    out.add_word(&splice(&[P, P]), -&(&c * &a2));
    Ok(out)
}

/// Replays the chain with `params` and returns `(a1^2 + 4 a2) p,p,p`
/// against the derived right-hand side. With `t_plain = 0` the latter is
/// `4 t_dot p`.
pub fn dependence_witness(i: usize, params: &TubeParams) -> Result<DependenceWitness> {
    let expected = if i == 0 {
        TubeParams::sphere()
    } else {
        TubeParams::genus_family(i)?
    };
    let base: &VarTable = rank2_system().base();
    let params = TubeParams {
        t_plain: params.t_plain.retable(base)?,
        t_dot: params.t_dot.retable(base)?,
    };
    if params != expected {
        return Err(Error::ParamsInconsistent(format!(
            "expected t_plain = {}, t_dot = {}; got {}, {}",
            expected.t_plain, expected.t_dot, params.t_plain, params.t_dot
        )));
    }
    let poly = |s: &str| MultiPoly::parse(base, s);
    let ppp = SphereConfig::plain(3);
    let dpp = SphereConfig::parse("d,p,p")?;
    let ddp = SphereConfig::parse("d,d,p")?;

    let start = SkeinElement::term(ppp.clone(), poly("a1^2")?);
    // a1^2 p,p,p = a1 (d,p,p + p,d,p) - a1 t_plain p = 2 a1 d,p,p - a1 t_plain p
    let step = split_plain_pair(&start, &ppp, 0, &params)?;
    // 2 a1 d,p,p = 2 (d,d,p + d,p,d) - 2 t_plain d = 4 d,d,p - 2 t_plain d
    let step = split_plain_pair(&step, &dpp, 1, &params)?;
    // 4 d,d,p = 4 t_dot p - 4 a2 p,p,p
    let step = annihilate_dots(&step, &ddp, 0, &params)?;

    let shift = SkeinElement::term(ppp.clone(), poly("4*a2")?);
    let lhs = start.add(&shift)?;
    let rhs = step.add(&shift)?;
    Ok(DependenceWitness { lhs, rhs, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_sys(m: &[usize]) -> FrobSystem {
        specialize_roots(m).unwrap()
    }

    #[test]
    fn lambda_f_examples() {
        let sys = roots_sys(&[2, 2]);
        let f = AbstractComponent::MarkedF { power: 0 };
        let one = MultiPoly::one(sys.base());
        assert_eq!(
            lambda_f_eval(&AbstractSurface::new(vec![f.clone()]), &sys, 1).unwrap(),
            one
        );
        let sphere = AbstractComponent::Sphere(AElement::one(&sys));
        assert!(
            lambda_f_eval(&AbstractSurface::new(vec![f.clone(), sphere]), &sys, 1)
                .unwrap()
                .is_zero()
        );
        assert!(lambda_f_eval(
            &AbstractSurface::new(vec![AbstractComponent::Other]),
            &sys,
            2
        )
        .unwrap()
        .is_zero());
        let f2 = AbstractComponent::MarkedF { power: 2 };
        let alpha_sq = MultiPoly::parse(sys.base(), "alpha2^2").unwrap();
        assert_eq!(
            lambda_f_eval(&AbstractSurface::new(vec![f2]), &sys, 2).unwrap(),
            alpha_sq
        );
        let torus = AbstractComponent::CompressibleTorus(AElement::one(&sys));
        let four = MultiPoly::int(sys.base(), 4);
        assert_eq!(
            lambda_f_eval(&AbstractSurface::new(vec![torus]), &sys, 1).unwrap(),
            four
        );

        let bad = roots_sys(&[2, 1]);
        assert_eq!(
            lambda_f_eval(&AbstractSurface::new(vec![f.clone()]), &bad, 1).unwrap_err(),
            Error::RootNotRepeated(2)
        );
        assert_eq!(
            lambda_f_eval(&AbstractSurface::new(vec![f]), &sys, 3).unwrap_err(),
            Error::RootIndexOutOfRange(3)
        );
    }

    #[test]
    fn neckcut_examples() {
        assert!(neckcut_functional_check(&[2], 1).unwrap());
        assert!(neckcut_functional_check(&[2, 2], 1).unwrap());
        assert!(neckcut_functional_check(&[2, 2], 2).unwrap());
        assert!(neckcut_functional_check(&[2, 3], 2).unwrap());
        assert_eq!(
            neckcut_functional_check(&[1, 3], 2).unwrap_err(),
            Error::RootNotRepeated(1)
        );
    }

    #[test]
    fn witness_examples() {
        let base = rank2_system().base();
        for i in 1..=3 {
            let params = TubeParams::genus_family(i).unwrap();
            assert!(params.t_plain.is_zero());
            let disc = MultiPoly::parse(base, "a1^2 + 4*a2").unwrap();
            assert_eq!(params.t_dot, disc.pow(i as u32));
            let w = dependence_witness(i, &params).unwrap();
            assert_eq!(
                w.lhs,
                SkeinElement::term(SphereConfig::plain(3), disc.clone())
            );
            let four_t = &MultiPoly::int(base, 4) * &params.t_dot;
            assert_eq!(w.rhs, SkeinElement::term(SphereConfig::plain(1), four_t));
            // Under 4 a2 + a1^2 = 0 both sides vanish.
            let lhs =
                super::super::eliminate_a2(&w.lhs.coefficient(&SphereConfig::plain(3))).unwrap();
            let rhs =
                super::super::eliminate_a2(&w.rhs.coefficient(&SphereConfig::plain(1))).unwrap();
            assert!(lhs.is_zero() && rhs.is_zero());
        }
        let w = dependence_witness(0, &TubeParams::sphere()).unwrap();
        assert_eq!(
            w.rhs,
            SkeinElement::term(SphereConfig::plain(1), MultiPoly::int(base, 4))
        );
        assert_eq!(
            dependence_witness(1, &TubeParams::sphere())
                .unwrap_err()
                .name(),
            "ParamsInconsistent"
        );
    }
}
