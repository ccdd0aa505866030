//! Surfaces in `S^2 x S^1` described by their components, and the first
//! two reduction steps: evaluating bounding components and removing handles.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use super::{coeff_table, normalize_element, Mark, NormalForm, SkeinElement};
use crate::error::{Error, Result};
use crate::frobenius::{g_power, AElement, FrobSystem};
use crate::polyring::MultiPoly;

static RANK2: LazyLock<FrobSystem> = LazyLock::new(|| FrobSystem::universal(2).expect("rank 2"));

/// The universal rank-2 system over `Z[a1, a2]`.
pub fn rank2_system() -> &'static FrobSystem {
    &RANK2
}

/// Substitutes `a2 = -a1^2 / 4` and moves to `Q[a1]`.
pub fn eliminate_a2(p: &MultiPoly) -> Result<MultiPoly> {
    if !p.table().contains("a2") {
        return p.retable(coeff_table());
    }
    let bindings = BTreeMap::from([(
        "a2".to_string(),
        MultiPoly::parse(coeff_table(), "-1/4*a1^2")?,
    )]);
    p.subst(&bindings)?.retable(coeff_table())
}

/// A mark `c_plain + c_dot x` of the rank-2 system, as `(c_plain, c_dot)`
/// over `Q[a1]`.
pub fn reduce_mark(mark: &AElement) -> Result<(MultiPoly, MultiPoly)> {
    if mark.system().rank() != 2 {
        return Err(Error::SystemMismatch);
    }
    Ok((
        eliminate_a2(&mark.coeffs()[0])?,
        eliminate_a2(&mark.coeffs()[1])?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    UnboundingSphere,
    BoundingSphere,
    BoundingTorus,
    /// A fibred surface parallel to the unbounding spheres; it is reduced
    /// like an unbounding sphere carrying handles.
    FiberedParallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub kind: ComponentKind,
    pub genus: u32,
    pub mark: AElement,
    /// Cyclic order among the unbounding and fibred components.
    pub position: usize,
}

impl SurfaceComponent {
    pub fn new(kind: ComponentKind, genus: u32, mark: AElement, position: usize) -> Self {
        SurfaceComponent {
            kind,
            genus,
            mark,
            position,
        }
    }

    pub fn unbounding(mark: AElement, position: usize) -> Self {
        SurfaceComponent::new(ComponentKind::UnboundingSphere, 0, mark, position)
    }

    pub fn is_bounding(&self) -> bool {
        matches!(
            self.kind,
            ComponentKind::BoundingSphere | ComponentKind::BoundingTorus
        )
    }
}

/// `eps(mark g^genus)` for a component that bounds; a torus has genus at
/// least one.
pub fn evaluate_bounding(component: &SurfaceComponent) -> Result<MultiPoly> {
    let genus = match component.kind {
        ComponentKind::BoundingSphere => component.genus,
        ComponentKind::BoundingTorus => component.genus.max(1),
        _ => {
            return Err(Error::InternalInconsistency(
                "component does not bound".into(),
            ))
        }
    };
    let sys = component.mark.system();
    let value = component
        .mark
        .mul(&g_power(sys, genus as usize)?)?
        .epsilon();
    eliminate_a2(&value)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceDiagram {
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceDiagram {
    pub fn new(components: Vec<SurfaceComponent>) -> Self {
        SurfaceDiagram { components }
    }

    /// Bounding components become scalars; every other component has its
    /// handles absorbed into the mark as `g^genus`, and the marks are
    /// expanded into plain and dotted spheres.
    pub fn to_element(&self) -> Result<SkeinElement> {
        let mut scalar = MultiPoly::one(coeff_table());
        for c in self.components.iter().filter(|c| c.is_bounding()) {
            scalar = &scalar * &evaluate_bounding(c)?;
        }
        let mut spheres: Vec<&SurfaceComponent> = self
            .components
            .iter()
            .filter(|c| !c.is_bounding())
            .collect();
        spheres.sort_by_key(|c| c.position);

        let mut words: Vec<(Vec<Mark>, MultiPoly)> = vec![(Vec::new(), scalar)];
        for c in spheres {
            let sys = c.mark.system();
            let (plain, dot) = reduce_mark(&c.mark.mul(&g_power(sys, c.genus as usize)?)?)?;
            let mut next = Vec::with_capacity(words.len() * 2);
            for (w, k) in &words {
                for (mark, f) in [(Mark::Plain, &plain), (Mark::Dot, &dot)] {
                    if !f.is_zero() {
                        let mut w2 = w.clone();
                        w2.push(mark);
                        next.push((w2, k * f));
                    }
                }
            }
            words = next;
        }
        let mut out = SkeinElement::zero();
        for (w, k) in words {
            out.add_word(&w, k);
        }
        Ok(out)
    }
}

/// Normal form of `sum_i c_i S_i`; coefficients may mention `a2`.
pub fn normalize(input: &[(MultiPoly, SurfaceDiagram)]) -> Result<NormalForm> {
    let mut total = SkeinElement::zero();
    for (c, s) in input {
        total = total.add(&s.to_element()?.scale(&eliminate_a2(c)?))?;
    }
    normalize_element(&total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mark(s: &str) -> AElement {
        AElement::parse(rank2_system(), s).unwrap()
    }

    fn c(s: &str) -> MultiPoly {
        MultiPoly::parse(coeff_table(), s).unwrap()
    }

    #[test]
    fn reduce_mark_examples() {
        assert_eq!(
            reduce_mark(&mark("x^2")).unwrap(),
            (c("-1/4*a1^2"), c("a1"))
        );
        assert_eq!(reduce_mark(&mark("1")).unwrap(), (c("1"), c("0")));
        assert_eq!(
            reduce_mark(&mark("x^3")).unwrap(),
            (c("-1/4*a1^3"), c("3/4*a1^2"))
        );
    }

    #[test]
    fn bounding_examples() {
        let comp = |kind, m: &str| SurfaceComponent::new(kind, 0, mark(m), 0);
        assert!(evaluate_bounding(&comp(ComponentKind::BoundingSphere, "1"))
            .unwrap()
            .is_zero());
        assert_eq!(
            evaluate_bounding(&comp(ComponentKind::BoundingSphere, "x")).unwrap(),
            c("1")
        );
        assert_eq!(
            evaluate_bounding(&comp(ComponentKind::BoundingTorus, "1")).unwrap(),
            c("2")
        );
        assert!(evaluate_bounding(&SurfaceComponent::unbounding(mark("1"), 0)).is_err());
    }

    #[test]
    fn diagram_examples() {
        let sphere = |m: &str, pos| SurfaceComponent::unbounding(mark(m), pos);
        let one = c("1");
        let single = |comps| {
            normalize(&[(one.clone(), SurfaceDiagram::new(comps))])
                .unwrap()
                .to_string()
        };
        assert_eq!(single(vec![sphere("1", 0)]), "0");
        assert_eq!(single(vec![sphere("x", 0)]), "e");
        assert_eq!(single(vec![sphere("x", 0), sphere("1", 1)]), "(1/2*a1)·X");
        // A torus marked x evaluates to a1 and scales the rest.
        let torus = SurfaceComponent::new(ComponentKind::BoundingTorus, 1, mark("x"), 0);
        assert_eq!(single(vec![torus, sphere("x", 0)]), "(a1)·e");
        // Handles on an unbounding sphere: g^2 = a1^2 + 4 a2 vanishes.
        let handles = SurfaceComponent::new(ComponentKind::FiberedParallel, 2, mark("1"), 0);
        assert_eq!(single(vec![handles]), "0");
    }
}
