//! Exact multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] is a sparse map from exponent vectors to reduced
//! `BigRational` coefficients, tied to a [`VarTable`] that names the
//! variables. Terms are kept in graded lexicographic order with respect to
//! the table order, which is also the printing order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Arc<[String]>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarTable {
            names: names.into(),
        })
    }

    pub fn empty() -> Self {
        VarTable {
            names: Arc::from(Vec::new()),
        }
    }

    /// `prefix1, ..., prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VarTable {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// The table with `name` appended as the last variable.
    pub fn with_var(&self, name: &str) -> Result<Self> {
        VarTable::new(
            self.names
                .iter()
                .cloned()
                .chain(std::iter::once(name.to_string())),
        )
    }

    fn same(&self, other: &VarTable) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    fn check(&self, other: &VarTable) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::VarTableMismatch(
                self.names.join(","),
                other.names.join(","),
            ))
        }
    }
}

/// Exponent vector, one entry per variable of the owning table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    table: VarTable,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(table: &VarTable) -> Self {
        MultiPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &VarTable) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &VarTable, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(table.len()), c);
        }
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn int(table: &VarTable, c: i64) -> Self {
        Self::constant(table, rat(c))
    }

    pub fn var(table: &VarTable, name: &str) -> Result<Self> {
        let idx = table
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(table, idx))
    }

    /// Variable by position; panics when out of range.
    pub fn var_at(table: &VarTable, idx: usize) -> Self {
        let mut exps = vec![0; table.len()];
        exps[idx] = 1;
        Self::monomial(table, Monomial(exps), Rational::one())
    }

    pub fn monomial(table: &VarTable, mono: Monomial, c: Rational) -> Self {
        assert_eq!(
            mono.0.len(),
            table.len(),
            "monomial length does not match table"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(table: &VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = MultiPoly::zero(table);
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                table.len(),
                "monomial length does not match table"
            );
            out.add_term(m, c);
        }
        out
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.table.check(&other.table)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.table.check(&other.table)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.table.check(&other.table)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.table));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let idx = self
            .table
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c * rat(e as i64));
        }
        Ok(out)
    }

    /// Simultaneous substitution. Every binding value must live over one
    /// common target table; unbound variables are carried over by name and
    /// must exist in that target table. With no bindings `self` is returned.
    pub fn subst(&self, bindings: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
        let mut values = bindings.values();
        let target = match values.next() {
            None => return Ok(self.clone()),
            Some(first) => first.table.clone(),
        };
        for v in values {
            target.check(&v.table)?;
        }
        for name in bindings.keys() {
            if !self.table.contains(name) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let images: Vec<Option<MultiPoly>> = self
            .table
            .names()
            .iter()
            .enumerate()
            .map(|(i, name)| {
                if let Some(v) = bindings.get(name) {
                    Ok(Some(v.clone()))
                } else if self.degree_in(i) == 0 {
                    Ok(None)
                } else {
                    MultiPoly::var(&target, name).map(Some)
                }
            })
            .collect::<Result<_>>()?;
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = images[i].as_ref().expect("bound variable");
                let p = power_cache.entry((i, e)).or_insert_with(|| image.pow(e));
                term = &term * &*p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact evaluation. Only variables that actually occur must be bound.
    pub fn eval_rational(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        for name in point.keys() {
            if !self.table.contains(name) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let values: Vec<Option<&Rational>> =
            self.table.names().iter().map(|n| point.get(n)).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[i]
                    .ok_or_else(|| Error::UnboundVariable(self.table.names()[i].clone()))?;
                term *= num_traits::pow(v.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Moves the polynomial to another table, matching variables by name.
    pub fn retable(&self, target: &VarTable) -> Result<MultiPoly> {
        if self.table.same(target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.table.len());
        for (i, name) in self.table.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i) == 0 => map.push(None),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of `var^0, var^1, ...` as polynomials over `rest`.
    pub fn coefficients_in(&self, var: &str, rest: &VarTable) -> Result<Vec<MultiPoly>> {
        let idx = self
            .table
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let deg = self.degree_in(idx) as usize;
        let mut map = Vec::with_capacity(self.table.len());
        for (i, name) in self.table.names().iter().enumerate() {
            if i == idx {
                map.push(None);
                continue;
            }
            match rest.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i) == 0 => map.push(None),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let mut out = vec![MultiPoly::zero(rest); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let mut exps = vec![0; rest.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            out[m.0[idx] as usize].add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact division by a single variable, if every term is divisible.
    pub fn div_var(&self, var: &str) -> Result<Option<MultiPoly>> {
        let idx = self
            .table
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            if m.0[idx] == 0 {
                return Ok(None);
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(Some(out))
    }

    /// Writes the polynomial with an explicit term order (largest first).
    pub fn fmt_sorted_by<F>(&self, f: &mut fmt::Formatter<'_>, mut key: F) -> fmt::Result
    where
        F: FnMut(&Monomial, &Monomial) -> Ordering,
    {
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| key(b.0, a.0));
        write_terms(f, &self.table, terms.into_iter())
    }

    pub fn parse(table: &VarTable, src: &str) -> Result<MultiPoly> {
        parse::Parser::new(table, src)?.parse_all()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, table: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&table.names()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, table: &VarTable, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Monomial, &'a Rational)>,
{
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if m.is_one() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write_monomial(f, table, m)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.table, self.terms.iter().rev())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs).expect("polynomial tables differ")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs).expect("polynomial tables differ")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs).expect("polynomial tables differ")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
    }

    pub(super) struct Parser<'a> {
        table: &'a VarTable,
        toks: Vec<(usize, Tok)>,
        pos: usize,
        len: usize,
    }

    fn err(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
        let bytes = src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i];
            let start = i;
            match ch {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'+' => out.push((start, Tok::Plus)),
                b'-' => out.push((start, Tok::Minus)),
                b'*' => out.push((start, Tok::Star)),
                b'/' => out.push((start, Tok::Slash)),
                b'^' => out.push((start, Tok::Caret)),
                b'(' => out.push((start, Tok::LParen)),
                b')' => out.push((start, Tok::RParen)),
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = src[start..i].parse().expect("digits");
                    out.push((start, Tok::Num(n)));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    out.push((start, Tok::Ident(src[start..i].to_string())));
                    continue;
                }
                _ => return Err(err(start, format!("unexpected character `{}`", ch as char))),
            }
            i += 1;
        }
        Ok(out)
    }

    impl<'a> Parser<'a> {
        pub(super) fn new(table: &'a VarTable, src: &str) -> Result<Self> {
            Ok(Parser {
                table,
                toks: lex(src)?,
                pos: 0,
                len: src.len(),
            })
        }

        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos).map(|(_, t)| t)
        }

        fn offset(&self) -> usize {
            self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
        }

        pub(super) fn parse_all(mut self) -> Result<MultiPoly> {
            if self.toks.is_empty() {
                return Err(err(0, "empty polynomial"));
            }
            let p = self.expr()?;
            if self.pos != self.toks.len() {
                return Err(err(self.offset(), "trailing input"));
            }
            Ok(p)
        }

        fn expr(&mut self) -> Result<MultiPoly> {
            let mut acc = match self.peek() {
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -self.term()?
                }
                Some(Tok::Plus) => {
                    self.pos += 1;
                    self.term()?
                }
                _ => self.term()?,
            };
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.pos += 1;
                        acc = &acc + &self.term()?;
                    }
                    Some(Tok::Minus) => {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<MultiPoly> {
            let mut acc = self.factor()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        acc = &acc * &self.factor()?;
                    }
                    Some(Tok::Slash) => {
                        self.pos += 1;
                        let at = self.offset();
                        let d = self.factor()?;
                        match d.as_constant() {
                            Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                            _ => return Err(err(at, "divisor must be a nonzero constant")),
                        }
                    }
                    Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                        acc = &acc * &self.factor()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn factor(&mut self) -> Result<MultiPoly> {
            let base = self.atom()?;
            if let Some(Tok::Caret) = self.peek() {
                self.pos += 1;
                let at = self.offset();
                match self.toks.get(self.pos) {
                    Some((_, Tok::Num(n))) => {
                        let e: u32 = n.try_into().map_err(|_| err(at, "exponent too large"))?;
                        self.pos += 1;
                        return Ok(base.pow(e));
                    }
                    _ => return Err(err(at, "expected a non-negative integer exponent")),
                }
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<MultiPoly> {
            let at = self.offset();
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) => {
                    self.pos += 1;
                    Ok(MultiPoly::constant(self.table, Rational::from_integer(n)))
                }
                Some((_, Tok::Ident(name))) => {
                    self.pos += 1;
                    MultiPoly::var(self.table, &name)
                }
                Some((_, Tok::LParen)) => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    match self.peek() {
                        Some(Tok::RParen) => {
                            self.pos += 1;
                            Ok(inner)
                        }
                        _ => Err(err(self.offset(), "expected `)`")),
                    }
                }
                Some((_, Tok::Minus)) => {
                    self.pos += 1;
                    Ok(-self.factor()?)
                }
                _ => Err(err(at, "expected a number, variable or `(`")),
            }
        }
    }
}
