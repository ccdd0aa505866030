//! Independent normal forms by linear algebra: all configurations up to a
//! size bound, every relation instance that fits, and Gaussian elimination
//! over `Q(a1)`.

use std::collections::{BTreeMap, BTreeSet};

use super::{canonicalize, coeff_table, Mark, NormalForm, SkeinElement, SphereConfig};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, SparseRow};
use crate::polyring::{ratio, MultiPoly, Rational};
use crate::ratfunc::{RatFunc, UniPoly};

use Mark::{Dot as D, Plain as P};

/// Largest accepted `max_spheres`.
pub const MAX_SPHERES: usize = 8;

fn constant(c: Rational) -> RatFunc {
    RatFunc::from_poly(UniPoly::constant(c))
}

/// `c a1^k`.
fn a1_term(c: Rational, k: usize) -> RatFunc {
    let mut coeffs = vec![Rational::from_integer(0.into()); k + 1];
    coeffs[k] = c;
    RatFunc::from_poly(UniPoly::new(coeffs))
}

fn words_up_to(len: usize) -> Vec<Vec<Mark>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Mark>| {
                [D, P].map(|m| {
                    let mut w2 = w.clone();
                    w2.push(m);
                    w2
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn is_basis(c: &SphereConfig) -> bool {
    c.word() == [D] || (c.dots() == 0 && c.len() % 2 == 0)
}

/// The quotient of the span of configurations with at most
/// `max_spheres + 2` spheres by all relation instances among them.
#[derive(Debug, Clone)]
pub struct BruteForceOracle {
    max_spheres: usize,
    columns: BTreeMap<SphereConfig, usize>,
    configs: Vec<SphereConfig>,
    echelon: Echelon<RatFunc>,
}

impl BruteForceOracle {
    pub fn new(max_spheres: usize) -> Result<Self> {
        if max_spheres > MAX_SPHERES {
            return Err(Error::SizeBound(format!(
                "{max_spheres} spheres exceeds the limit of {MAX_SPHERES}"
            )));
        }
        let bound = max_spheres + 2;
        let all: BTreeSet<SphereConfig> =
            words_up_to(bound).iter().map(|w| canonicalize(w)).collect();
        // Non-basis columns first, so that pivots land on them.
        let (basis, other): (Vec<_>, Vec<_>) = all.into_iter().partition(is_basis);
        let mut configs: Vec<SphereConfig> = other;
        configs.sort_by_key(|c| {
            (
                std::cmp::Reverse(c.dots()),
                std::cmp::Reverse(c.len()),
                c.clone(),
            )
        });
        configs.extend(basis);
        let columns = configs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let mut oracle = BruteForceOracle {
            max_spheres,
            columns,
            configs,
            echelon: Echelon::new(),
        };

        let one = || constant(Rational::from_integer(1.into()));
        let minus_one = || constant(Rational::from_integer((-1).into()));
        let concat = |head: &[Mark], tail: &[Mark]| [head, tail].concat();
        for host in words_up_to(bound - 2) {
            oracle.relation(&[
                (concat(&[D, D], &host), one()),
                (host.clone(), minus_one()),
                (concat(&[P, P], &host), a1_term(ratio(-1, 4), 2)),
            ]);
            oracle.relation(&[
                (concat(&[D, P], &host), one()),
                (concat(&[P, D], &host), one()),
                (concat(&[P, P], &host), a1_term(ratio(-1, 1), 1)),
            ]);
            if host.len() + 3 <= bound {
                oracle.relation(&[
                    (concat(&[D, D, P], &host), one()),
                    (concat(&[P, D, D], &host), minus_one()),
                ]);
                oracle.relation(&[
                    (concat(&[D, P, P], &host), one()),
                    (concat(&[P, P, D], &host), minus_one()),
                ]);
            }
        }
        for len in 2..=bound {
            let mut w = vec![P; len];
            w[0] = D;
            oracle.relation(&[(w, one()), (vec![P; len], a1_term(ratio(-1, 2), 1))]);
        }
        if let Some(c) = oracle
            .configs
            .iter()
            .find(|c| is_basis(c) && oracle.echelon.is_pivot(oracle.columns[*c]))
        {
            return Err(Error::InternalInconsistency(format!(
                "basis configuration [{c}] is dependent"
            )));
        }
        Ok(oracle)
    }

    fn relation(&mut self, terms: &[(Vec<Mark>, RatFunc)]) {
        let mut row: SparseRow<RatFunc> = SparseRow::new();
        for (w, c) in terms {
            let col = self.columns[&canonicalize(w)];
            let entry = row.entry(col).or_insert_with(RatFunc::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                row.remove(&col);
            }
        }
        self.echelon.insert(row);
    }

    pub fn max_spheres(&self) -> usize {
        self.max_spheres
    }

    pub fn normal_form(&self, elt: &SkeinElement) -> Result<NormalForm> {
        if elt.table() != coeff_table() {
            return Err(Error::VarTableMismatch(
                elt.table().names().join(","),
                coeff_table().names().join(","),
            ));
        }
        let mut row: SparseRow<RatFunc> = SparseRow::new();
        for (c, v) in elt.terms() {
            if c.len() > self.max_spheres {
                return Err(Error::SizeBound(format!(
                    "[{c}] has more than {} spheres",
                    self.max_spheres
                )));
            }
            row.insert(self.columns[c], RatFunc::from_poly(UniPoly::from_multi(v)?));
        }
        let reduced = self.echelon.reduce(row);
        let mut nf = NormalForm::zero();
        for (col, v) in reduced {
            let c = &self.configs[col];
            if !is_basis(c) {
                return Err(Error::SizeBound(format!(
                    "[{c}] is not reduced within the bound"
                )));
            }
            let poly = v.as_poly().ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "coefficient {v} of [{c}] is not a polynomial"
                ))
            })?;
            let coeff: MultiPoly = poly.to_multi(coeff_table());
            if c.dots() == 1 {
                nf.add_e(coeff);
            } else {
                nf.add_x((c.len() / 2) as u32, coeff);
            }
        }
        Ok(nf)
    }
}

pub fn brute_force_normal_form(elt: &SkeinElement, max_spheres: usize) -> Result<NormalForm> {
    BruteForceOracle::new(max_spheres)?.normal_form(elt)
}
