//! Symmetric polynomials in `alpha1..alphan` over the monomial, elementary
//! and power-sum bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MultiPoly, Rational, VarTable};

pub fn alpha_table(n: usize) -> VarTable {
    VarTable::indexed("alpha", n)
}

pub fn elementary_table(n: usize) -> VarTable {
    VarTable::indexed("e", n)
}

/// All partitions of `total`, largest first in lexicographic order.
pub fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// A partition `lambda` with at most `nvars` parts. Ordered lexicographically
/// on the zero-padded exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    nvars: usize,
}

impl Partition {
    /// Sorts `parts` into weakly decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>, nvars: usize) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition { parts, nvars };
        if lambda.parts.len() > nvars {
            return Err(Error::TooManyParts(lambda.to_string(), nvars));
        }
        Ok(lambda)
    }

    pub fn empty(nvars: usize) -> Self {
        Partition {
            parts: Vec::new(),
            nvars,
        }
    }

    /// `(1^k)`, so that `m_(1^k) = e_k`.
    pub fn column(k: usize, nvars: usize) -> Result<Self> {
        Partition::new(vec![1; k], nvars)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn padded(&self) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(self.nvars, 0);
        v
    }

    /// Accepts `(2^1 1^3)` as printed, or plain parts such as `(2 1 1 1)`.
    pub fn parse(src: &str, nvars: usize) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let trimmed = src.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err(0, "expected a parenthesized partition"))?;
        let mut parts = Vec::new();
        for tok in inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let pos = src.find(tok).unwrap_or(0);
            let (part, mult) = match tok.split_once('^') {
                Some((p, m)) => (p, m),
                None => (tok, "1"),
            };
            let part: u32 = part.parse().map_err(|_| err(pos, "expected a part"))?;
            let mult: usize = mult
                .parse()
                .map_err(|_| err(pos, "expected a multiplicity"))?;
            parts.extend(std::iter::repeat_n(part, mult));
        }
        Partition::new(parts, nvars)
    }
}

/// Exponent notation: `(2^1 1^3)`; the empty partition prints as `()`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}^{run}")?;
            i += run;
        }
        f.write_str(")")
    }
}

/// Steps `v` to the next permutation in lexicographic order.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `m_lambda` as an explicit polynomial in `alpha1..alphan`.
pub fn monomial_expand(lambda: &Partition) -> Result<MultiPoly> {
    if lambda.len() > lambda.nvars {
        return Err(Error::TooManyParts(lambda.to_string(), lambda.nvars));
    }
    let table = alpha_table(lambda.nvars);
    let mut exps = lambda.padded();
    exps.sort_unstable();
    let mut monos = Vec::new();
    loop {
        monos.push((Monomial::new(exps.clone()), Rational::one()));
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(MultiPoly::from_terms(&table, monos))
}

/// A symmetric polynomial as a combination of the `m_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        SymPoly::monomial(Partition::empty(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        SymPoly::one(nvars).scale(&c)
    }

    /// `m_lambda`.
    pub fn monomial(lambda: Partition) -> Self {
        let nvars = lambda.nvars;
        SymPoly {
            nvars,
            terms: BTreeMap::from([(lambda, Rational::one())]),
        }
    }

    /// `e_k = m_(1^k)`; zero for `k > n`.
    pub fn elementary(k: usize, nvars: usize) -> Self {
        match Partition::column(k, nvars) {
            Ok(lambda) => SymPoly::monomial(lambda),
            Err(_) => SymPoly::zero(nvars),
        }
    }

    /// `p_k = m_(k)`.
    pub fn power_sum(k: u32, nvars: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::NotPositive("power sum degree"));
        }
        Ok(SymPoly::monomial(Partition::new(vec![k], nvars)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(
        nvars: usize,
        terms: I,
    ) -> Result<Self> {
        let mut out = SymPoly::zero(nvars);
        for (lambda, c) in terms {
            if lambda.nvars != nvars {
                return Err(Error::NvarsMismatch(nvars, lambda.nvars));
            }
            out.add_term(lambda, c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The lexicographically largest partition with nonzero coefficient.
    pub fn leading(&self) -> Option<(&Partition, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, lambda: Partition, c: Rational) {
        let entry = self.terms.entry(lambda).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, other: &SymPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::NvarsMismatch(self.nvars, other.nvars))
        }
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (lambda, c) in &other.terms {
            out.add_term(lambda.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    /// Explicit polynomial in `alpha1..alphan`.
    pub fn expand(&self) -> MultiPoly {
        let table = alpha_table(self.nvars);
        self.terms
            .iter()
            .fold(MultiPoly::zero(&table), |acc, (lambda, c)| {
                &acc + &monomial_expand(lambda).expect("partition fits").scale(c)
            })
    }
}

/// Terms in decreasing partition order, e.g. `m(2^1) - 2*m(1^2)`; the
/// empty partition prints as its bare coefficient.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (lambda, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if lambda.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "m{lambda}")?;
            } else {
                write!(f, "{mag}*m{lambda}")?;
            }
        }
        Ok(())
    }
}

/// Swaps variables `i` and `i+1` in every monomial.
fn transpose(p: &MultiPoly, i: usize) -> MultiPoly {
    MultiPoly::from_terms(
        p.table(),
        p.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.swap(i, i + 1);
            (Monomial::new(e), c.clone())
        }),
    )
}

/// The unique expansion over the `m_lambda`, by repeatedly extracting the
/// lexicographically largest exponent vector.
pub fn to_monomial_basis(p: &MultiPoly) -> Result<SymPoly> {
    let n = p.table().len();
    for i in 0..n.saturating_sub(1) {
        if &transpose(p, i) != p {
            return Err(Error::NotSymmetric);
        }
    }
    let mut rest = p.clone();
    let mut out = SymPoly::zero(n);
    while let Some((mono, c)) = rest.terms().max_by(|a, b| a.0.exps().cmp(b.0.exps())) {
        let (mono, c) = (mono.clone(), c.clone());
        let lambda = Partition::new(mono.exps().to_vec(), n)?;
        let expansion = monomial_expand(&lambda)?.scale(&c);
        let expansion = MultiPoly::from_terms(
            p.table(),
            expansion.terms().map(|(m, v)| (m.clone(), v.clone())),
        );
        rest = &rest - &expansion;
        out.add_term(lambda, c);
    }
    Ok(out)
}

pub fn sym_mul(s: &SymPoly, t: &SymPoly) -> Result<SymPoly> {
    s.check(t)?;
    to_monomial_basis(&(&s.expand() * &t.expand()))
}

/// A symmetric polynomial written as a polynomial in `e1..en`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemPoly {
    pub expression: MultiPoly,
}

impl ElemPoly {
    /// Substitutes `e_k -> m_(1^k)` and expands.
    pub fn to_alpha(&self) -> MultiPoly {
        let n = self.expression.table().len();
        let bindings: BTreeMap<String, MultiPoly> = (1..=n)
            .map(|k| {
                (
                    format!("e{k}"),
                    monomial_expand(&Partition::column(k, n).unwrap()).unwrap(),
                )
            })
            .collect();
        if bindings.is_empty() {
            return self.expression.clone();
        }
        self.expression
            .subst(&bindings)
            .expect("e-table variables are bound")
    }

    pub fn to_sym(&self) -> Result<SymPoly> {
        to_monomial_basis(&self.to_alpha())
    }
}

impl fmt::Display for ElemPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expression.fmt(f)
    }
}

/// Leading-term elimination: the lex-leading `m_lambda` is cancelled by
/// `prod_k e_k^(lambda_k - lambda_(k+1))`, whose own leading term is `m_lambda`.
pub fn to_elementary_basis(s: &SymPoly) -> Result<ElemPoly> {
    let n = s.nvars;
    let etable = elementary_table(n);
    let mut cache: HashMap<Vec<u32>, SymPoly> = HashMap::new();
    let mut rest = s.clone();
    let mut out = MultiPoly::zero(&etable);
    while let Some((lambda, c)) = rest.leading() {
        let (lambda, c) = (lambda.clone(), c.clone());
        let padded = lambda.padded();
        let exps: Vec<u32> = (0..n)
            .map(|k| padded[k] - padded.get(k + 1).copied().unwrap_or(0))
            .collect();
        let product = match cache.get(&exps) {
            Some(p) => p.clone(),
            None => {
                let mut p = SymPoly::one(n);
                for (k, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        p = sym_mul(&p, &SymPoly::elementary(k + 1, n))?;
                    }
                }
                cache.insert(exps.clone(), p.clone());
                p
            }
        };
        if product.leading().map(|(l, v)| (l, v.is_one())) != Some((&lambda, true)) {
            return Err(Error::InternalInconsistency(format!(
                "e-monomial for {lambda} has the wrong leading term"
            )));
        }
        rest = rest.sub(&product.scale(&c))?;
        out = &out + &MultiPoly::monomial(&etable, Monomial::new(exps), c);
    }
    let result = ElemPoly { expression: out };
    if result.to_alpha() != s.expand() {
        return Err(Error::InternalInconsistency(
            "elementary expansion does not round-trip".into(),
        ));
    }
    Ok(result)
}

/// The three product rules for `p_a e_b`:
/// `b = n`: `m_(a+1, 1^(n-1))`;
/// `a = 1, b < n`: `m_(2, 1^(b-1)) + (b+1) m_(1^(b+1))`;
/// `a > 1, b < n`: `m_(a+1, 1^(b-1)) + m_(a, 1^b)`.
pub fn product_identity_rhs(a: u32, b: usize, n: usize) -> Result<SymPoly> {
    if a == 0 {
        return Err(Error::NotPositive("a"));
    }
    if b == 0 || b > n {
        return Err(Error::BOutOfRange { b, n });
    }
    let hook = |head: u32, ones: usize| {
        let mut parts = vec![head];
        parts.extend(std::iter::repeat_n(1, ones));
        Partition::new(parts, n)
    };
    let one = Rational::one();
    let terms = if b == n {
        vec![(hook(a + 1, n - 1)?, one)]
    } else if a == 1 {
        vec![
            (hook(2, b - 1)?, one),
            (
                Partition::column(b + 1, n)?,
                Rational::from_integer((b as i64 + 1).into()),
            ),
        ]
    } else {
        vec![(hook(a + 1, b - 1)?, one.clone()), (hook(a, b)?, one)]
    };
    SymPoly::from_terms(n, terms)
}

pub fn verify_product_identities(a: u32, b: usize, n: usize) -> Result<bool> {
    let rhs = product_identity_rhs(a, b, n)?;
    let lhs = sym_mul(&SymPoly::power_sum(a, n)?, &SymPoly::elementary(b, n))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn part(p: &[u32], n: usize) -> Partition {
        Partition::new(p.to_vec(), n).unwrap()
    }

    fn alpha(n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(&alpha_table(n), s).unwrap()
    }

    #[test]
    fn partition_text() {
        let l = part(&[1, 2, 1, 1], 4);
        assert_eq!(l.to_string(), "(2^1 1^3)");
        assert_eq!(Partition::parse("(2^1 1^3)", 4).unwrap(), l);
        assert_eq!(Partition::parse("(2 1 1 1)", 4).unwrap(), l);
        assert_eq!(Partition::empty(3).to_string(), "()");
        assert_eq!(
            Partition::new(vec![1, 1, 1], 2).unwrap_err().name(),
            "TooManyParts"
        );
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            monomial_expand(&part(&[1], 2)).unwrap(),
            alpha(2, "alpha1 + alpha2")
        );
        assert_eq!(
            monomial_expand(&part(&[1, 1], 2)).unwrap(),
            alpha(2, "alpha1*alpha2")
        );
        let m21 = "alpha1^2*alpha2 + alpha1^2*alpha3 + alpha2^2*alpha1 + alpha2^2*alpha3 + alpha3^2*alpha1 + alpha3^2*alpha2";
        assert_eq!(monomial_expand(&part(&[2, 1], 3)).unwrap(), alpha(3, m21));
        assert_eq!(
            monomial_expand(&part(&[2, 2, 1, 1], 6))
                .unwrap()
                .num_terms(),
            90
        );
    }

    #[test]
    fn monomial_basis_examples() {
        assert_eq!(
            to_monomial_basis(&alpha(2, "alpha1 + alpha2")).unwrap(),
            SymPoly::monomial(part(&[1], 2))
        );
        let sq = to_monomial_basis(&alpha(2, "(alpha1 - alpha2)^2")).unwrap();
        let expected =
            SymPoly::from_terms(2, [(part(&[2], 2), rat(1)), (part(&[1, 1], 2), rat(-2))]).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "m(2^1) - 2*m(1^2)");
        assert_eq!(
            to_monomial_basis(&alpha(2, "alpha1")).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn mul_examples() {
        let p1e1 = sym_mul(
            &SymPoly::power_sum(1, 2).unwrap(),
            &SymPoly::elementary(1, 2),
        )
        .unwrap();
        let expected =
            SymPoly::from_terms(2, [(part(&[2], 2), rat(1)), (part(&[1, 1], 2), rat(2))]).unwrap();
        assert_eq!(p1e1, expected);
        let s = SymPoly::monomial(part(&[3, 1], 3));
        assert_eq!(sym_mul(&s, &SymPoly::one(3)).unwrap(), s);
        let p2e2 = sym_mul(
            &SymPoly::power_sum(2, 2).unwrap(),
            &SymPoly::elementary(2, 2),
        )
        .unwrap();
        assert_eq!(p2e2, SymPoly::monomial(part(&[3, 1], 2)));
        assert_eq!(
            sym_mul(&s, &SymPoly::one(2)).unwrap_err(),
            Error::NvarsMismatch(3, 2)
        );
    }

    #[test]
    fn elementary_examples() {
        let e = |n: usize, s: &str| MultiPoly::parse(&elementary_table(n), s).unwrap();
        assert_eq!(
            to_elementary_basis(&SymPoly::monomial(part(&[1], 3)))
                .unwrap()
                .expression,
            e(3, "e1")
        );
        assert_eq!(
            to_elementary_basis(&SymPoly::monomial(part(&[2], 2)))
                .unwrap()
                .expression,
            e(2, "e1^2 - 2*e2")
        );
        for n in 2..=4 {
            assert_eq!(
                to_elementary_basis(&SymPoly::monomial(part(&[1, 1], n)))
                    .unwrap()
                    .expression,
                e(n, "e2")
            );
        }
        assert_eq!(
            to_elementary_basis(&SymPoly::power_sum(3, 3).unwrap())
                .unwrap()
                .expression,
            e(3, "e1^3 - 3*e1*e2 + 3*e3")
        );
    }

    #[test]
    fn product_identity_examples() {
        assert!(verify_product_identities(3, 4, 4).unwrap());
        assert_eq!(
            product_identity_rhs(3, 4, 4).unwrap(),
            SymPoly::monomial(part(&[4, 1, 1, 1], 4))
        );
        assert!(verify_product_identities(1, 2, 4).unwrap());
        assert_eq!(
            product_identity_rhs(1, 2, 4).unwrap().to_string(),
            "m(2^1 1^1) + 3*m(1^3)"
        );
        assert!(verify_product_identities(2, 1, 3).unwrap());
        assert_eq!(
            product_identity_rhs(2, 1, 3).unwrap().to_string(),
            "m(3^1) + m(2^1 1^1)"
        );
        assert_eq!(
            verify_product_identities(1, 5, 4).unwrap_err(),
            Error::BOutOfRange { b: 5, n: 4 }
        );
    }
}
