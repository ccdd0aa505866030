//! The skein module `K_2(S^2 x S^1)` specialized to `4 a2 + a1^2 = 0`.
//!
//! Elements are combinations of configurations of parallel non-bounding
//! spheres, each plain or dotted. Coefficients live in `Q[a1]`, with `a2`
//! eliminated as `-a1^2 / 4`.

mod lambda;
mod oracle;
mod rewrite;
mod surface;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{MultiPoly, VarTable};

pub use lambda::{
    dependence_witness, lambda_f_eval, neckcut_functional_check, AbstractComponent,
    AbstractSurface, DependenceWitness, TubeParams,
};
pub use oracle::{brute_force_normal_form, BruteForceOracle};
pub use rewrite::{apply_relation, normalize_element, rewrite_word, sites, standard_position};
pub use surface::{
    eliminate_a2, evaluate_bounding, normalize, rank2_system, reduce_mark, ComponentKind,
    SurfaceComponent, SurfaceDiagram,
};

static COEFF_TABLE: LazyLock<VarTable> = LazyLock::new(|| VarTable::new(["a1"]).expect("one name"));

/// `Q[a1]`, the coefficient ring after eliminating `a2`.
pub fn coeff_table() -> &'static VarTable {
    &COEFF_TABLE
}

fn coeff(src: &str) -> MultiPoly {
    MultiPoly::parse(coeff_table(), src).expect("valid coefficient")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Dot,
    Plain,
}

impl Mark {
    pub fn symbol(self) -> char {
        match self {
            Mark::Dot => 'd',
            Mark::Plain => 'p',
        }
    }
}

/// Parses `d,p,p,d`; the empty string is the empty configuration.
pub fn parse_word(src: &str) -> Result<Vec<Mark>> {
    let src = src.trim();
    if src.is_empty() {
        return Ok(Vec::new());
    }
    let mut pos = 0;
    src.split(',')
        .map(|tok| {
            let here = pos;
            pos += tok.len() + 1;
            match tok.trim() {
                "d" => Ok(Mark::Dot),
                "p" => Ok(Mark::Plain),
                other => Err(Error::Parse {
                    pos: here,
                    msg: format!("expected `d` or `p`, found `{other}`"),
                }),
            }
        })
        .collect()
}

pub fn format_word(word: &[Mark]) -> String {
    word.iter()
        .map(|m| m.symbol().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A cyclic word of marks, stored as its lexicographically least rotation
/// (dot before plain).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereConfig {
    word: Vec<Mark>,
}

impl SphereConfig {
    pub fn empty() -> Self {
        SphereConfig { word: Vec::new() }
    }

    pub fn word(&self) -> &[Mark] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn dots(&self) -> usize {
        self.word.iter().filter(|&&m| m == Mark::Dot).count()
    }

    pub fn plain(len: usize) -> Self {
        SphereConfig {
            word: vec![Mark::Plain; len],
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(canonicalize(&parse_word(src)?))
    }
}

impl fmt::Display for SphereConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

/// The least rotation of `word`.
pub fn canonicalize(word: &[Mark]) -> SphereConfig {
    let n = word.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|k| word[(a + k) % n])
                .cmp((0..n).map(|k| word[(b + k) % n]))
        })
        .unwrap_or(0);
    SphereConfig {
        word: (0..n).map(|k| word[(best + k) % n]).collect(),
    }
}

/// A finite combination of configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinElement {
    table: VarTable,
    terms: BTreeMap<SphereConfig, MultiPoly>,
}

impl SkeinElement {
    /// Zero over `Q[a1]`.
    pub fn zero() -> Self {
        SkeinElement::zero_over(coeff_table())
    }

    pub fn zero_over(table: &VarTable) -> Self {
        SkeinElement {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The empty configuration.
    pub fn unit() -> Self {
        SkeinElement::config(SphereConfig::empty())
    }

    pub fn config(c: SphereConfig) -> Self {
        SkeinElement::term(c, MultiPoly::one(coeff_table()))
    }

    pub fn word(word: &[Mark]) -> Self {
        SkeinElement::config(canonicalize(word))
    }

    pub fn term(c: SphereConfig, coeff: MultiPoly) -> Self {
        let mut out = SkeinElement::zero_over(coeff.table());
        out.add_term(c, coeff);
        out
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<SphereConfig, MultiPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &SphereConfig) -> MultiPoly {
        self.terms
            .get(c)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.table))
    }

    pub fn add_term(&mut self, c: SphereConfig, coeff: MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&c) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(c, sum);
        }
    }

    pub fn add_word(&mut self, word: &[Mark], coeff: MultiPoly) {
        self.add_term(canonicalize(word), coeff);
    }

    pub fn add(&self, other: &SkeinElement) -> Result<SkeinElement> {
        if self.table != other.table {
            return Err(Error::VarTableMismatch(
                self.table.names().join(","),
                other.table.names().join(","),
            ));
        }
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SkeinElement) -> Result<SkeinElement> {
        self.add(&other.scale(&MultiPoly::int(&other.table, -1)))
    }

    pub fn scale(&self, c: &MultiPoly) -> SkeinElement {
        let mut out = SkeinElement::zero_over(&self.table);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Parses `coeff * [config] + ...`; a missing coefficient means one and
    /// `[]` is the empty configuration.
    pub fn parse(src: &str) -> Result<Self> {
        let table = coeff_table();
        let mut out = SkeinElement::zero();
        let mut rest = src;
        let mut offset = 0;
        if src.trim().is_empty() || src.trim() == "0" {
            return Ok(out);
        }
        while !rest.trim().is_empty() {
            let open = rest.find('[').ok_or_else(|| Error::Parse {
                pos: offset,
                msg: "expected `[config]`".into(),
            })?;
            let close = rest[open..]
                .find(']')
                .map(|k| open + k)
                .ok_or_else(|| Error::Parse {
                    pos: offset + open,
                    msg: "unclosed `[`".into(),
                })?;
            let mut head = rest[..open].trim();
            let mut sign = 1;
            if let Some(h) = head.strip_prefix('+') {
                head = h.trim_start();
            } else if let Some(h) = head.strip_prefix('-') {
                head = h.trim_start();
                sign = -1;
            }
            let head = head.strip_suffix('*').map(str::trim_end).unwrap_or(head);
            let c = if head.is_empty() {
                MultiPoly::one(table)
            } else {
                MultiPoly::parse(table, head)?
            };
            let config = SphereConfig::parse(&rest[open + 1..close]).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + offset + open + 1,
                    msg,
                },
                other => other,
            })?;
            out.add_term(
                config,
                c.scale(&num_rational::BigRational::from_integer(sign.into())),
            );
            offset += close + 1;
            rest = &rest[close + 1..];
        }
        Ok(out)
    }
}

fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &MultiPoly,
    body: Option<&str>,
) -> fmt::Result {
    let single_negative =
        c.num_terms() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_negative());
    let (sep, shown) = if single_negative && !first {
        (" - ", -c)
    } else {
        (if first { "" } else { " + " }, c.clone())
    };
    f.write_str(sep)?;
    let text = if shown.num_terms() > 1 {
        format!("({shown})")
    } else {
        shown.to_string()
    };
    match body {
        Some(b) if shown.is_one() => f.write_str(b),
        Some(b) => write!(f, "{text} * {b}"),
        None => f.write_str(&text),
    }
}

/// `1/2*a1 * [p,p] - [d,p]`.
impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, v)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, i == 0, v, Some(&format!("[{c}]")))?;
        }
        Ok(())
    }
}

/// `q(X) + c e` with `X^k` standing for `2k` plain spheres and `e` for a
/// single dotted sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    qx: BTreeMap<u32, MultiPoly>,
    ecoeff: MultiPoly,
}

impl Default for NormalForm {
    fn default() -> Self {
        NormalForm::zero()
    }
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm {
            qx: BTreeMap::new(),
            ecoeff: MultiPoly::zero(coeff_table()),
        }
    }

    pub fn x_pow(k: u32) -> Self {
        let mut out = NormalForm::zero();
        out.add_x(k, MultiPoly::one(coeff_table()));
        out
    }

    pub fn e() -> Self {
        let mut out = NormalForm::zero();
        out.add_e(MultiPoly::one(coeff_table()));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.qx.is_empty() && self.ecoeff.is_zero()
    }

    pub fn add_x(&mut self, k: u32, c: MultiPoly) {
        let sum = match self.qx.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.qx.insert(k, sum);
        }
    }

    pub fn add_e(&mut self, c: MultiPoly) {
        self.ecoeff = &self.ecoeff + &c;
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (k, c) in &other.qx {
            out.add_x(*k, c.clone());
        }
        out.add_e(other.ecoeff.clone());
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> NormalForm {
        let mut out = NormalForm::zero();
        for (k, v) in &self.qx {
            out.add_x(*k, v * c);
        }
        out.add_e(&self.ecoeff * c);
        out
    }

    /// Coefficients of `X^0, X^1, ...` up to the highest nonzero one.
    pub fn qx(&self) -> Vec<MultiPoly> {
        let top = self.qx.keys().next_back().map_or(0, |k| k + 1);
        (0..top).map(|k| self.lambda_k(k)).collect()
    }

    pub fn ecoeff(&self) -> &MultiPoly {
        &self.ecoeff
    }

    /// Coefficient of `X^k`.
    pub fn lambda_k(&self, k: u32) -> MultiPoly {
        self.qx
            .get(&k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(coeff_table()))
    }

    /// Coefficient of `e`.
    pub fn lambda_d(&self) -> MultiPoly {
        self.ecoeff.clone()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "qx": self.qx().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "e": self.ecoeff.to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let qx = crate::frobenius::poly_list(&v["qx"], coeff_table())?;
        let e = v["e"]
            .as_str()
            .ok_or_else(|| Error::Json("missing `e`".into()))?;
        let mut out = NormalForm::zero();
        for (k, c) in qx.into_iter().enumerate() {
            out.add_x(k as u32, c);
        }
        out.add_e(MultiPoly::parse(coeff_table(), e)?);
        Ok(out)
    }
}

/// `1 + (1/4*a1^2)·X + e`, ascending powers of `X`, then `e`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut emit =
            |f: &mut fmt::Formatter<'_>, c: &MultiPoly, gen: Option<String>| -> fmt::Result {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                match gen {
                    Some(g) if c.is_one() => f.write_str(&g),
                    Some(g) => write!(f, "({c})·{g}"),
                    None if c.is_one() => f.write_str("1"),
                    None => write!(f, "({c})"),
                }
            };
        for (k, c) in &self.qx {
            let gen = match k {
                0 => None,
                1 => Some("X".to_string()),
                k => Some(format!("X^{k}")),
            };
            emit(f, c, gen)?;
        }
        if !self.ecoeff.is_zero() {
            emit(f, &self.ecoeff, Some("e".to_string()))?;
        }
        Ok(())
    }
}

impl Zero for NormalForm {
    fn zero() -> Self {
        NormalForm::zero()
    }
    fn is_zero(&self) -> bool {
        NormalForm::is_zero(self)
    }
}

impl std::ops::Add for NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: NormalForm) -> NormalForm {
        NormalForm::add(&self, &rhs)
    }
}
