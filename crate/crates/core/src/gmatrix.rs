//! The genus-reduction matrix `G_n`: multiplication by `g` on the power
//! basis `1, x, ..., x^(n-1)` of the universal system.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::frobenius::{closed_surface_eval, genus_term, poly_list, AElement, FrobSystem};
use crate::polyring::{MultiPoly, Rational, VarTable};
use crate::symfun::{alpha_table, monomial_expand, to_monomial_basis, Partition, SymPoly};

/// `n x n` matrix over `Z[a1..an]`, row `i` holding the coefficient of `x^(i-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMatrix {
    n: usize,
    base: VarTable,
    entries: Vec<Vec<MultiPoly>>,
}

impl GMatrix {
    fn from_entries(base: &VarTable, entries: Vec<Vec<MultiPoly>>) -> Self {
        GMatrix {
            n: entries.len(),
            base: base.clone(),
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &VarTable {
        &self.base
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    pub fn identity(base: &VarTable, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MultiPoly::one(base)
                        } else {
                            MultiPoly::zero(base)
                        }
                    })
                    .collect()
            })
            .collect();
        GMatrix::from_entries(base, entries)
    }

    pub fn scale(&self, c: &MultiPoly) -> GMatrix {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|v| v * c).collect())
            .collect();
        GMatrix::from_entries(&self.base, entries)
    }

    pub fn mul(&self, other: &GMatrix) -> GMatrix {
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(MultiPoly::zero(&self.base), |acc, k| {
                            &acc + &(&self.entries[i][k] * &other.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        GMatrix::from_entries(&self.base, entries)
    }

    pub fn trace(&self) -> MultiPoly {
        (0..self.n).fold(MultiPoly::zero(&self.base), |acc, i| {
            &acc + &self.entries[i][i]
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|r| Value::Array(r.iter().map(|v| Value::String(v.to_string())).collect()))
                .collect(),
        )
    }

    /// Reads a square array of polynomial strings over `a1..an`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Json("expected an array of rows".into()))?;
        let base = VarTable::indexed("a", rows.len());
        let entries = rows
            .iter()
            .map(|r| poly_list(r, &base))
            .collect::<Result<Vec<_>>>()?;
        if entries.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Json("matrix is not square".into()));
        }
        Ok(GMatrix::from_entries(&base, entries))
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, cells: Vec<Vec<String>>) -> fmt::Result {
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for (i, row) in cells.iter().enumerate() {
        if i > 0 {
            writeln!(f)?;
        }
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        f.write_str(line.join("  ").trim_end())?;
    }
    Ok(())
}

/// Aligned text table, one row per line.
impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(
            f,
            self.entries
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        )
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::RankTooSmall(n))
    } else {
        Ok(())
    }
}

/// Built only from the recursion
/// `g_(i,1) = -i a_(n-i)` for `i < n`, `g_(n,1) = n`,
/// `g_(i,j) = a_(n-i+1) g_(n,j-1) + g_(i-1,j-1)`, `g_(1,j) = a_n g_(n,j-1)`.
pub fn g_matrix_recursive(n: usize) -> Result<GMatrix> {
    check_rank(n)?;
    let base = VarTable::indexed("a", n);
    let a = |k: usize| MultiPoly::var_at(&base, k - 1);
    let int = |v: i64| MultiPoly::int(&base, v);
    let mut g = vec![vec![MultiPoly::zero(&base); n + 1]; n + 1];
    for i in 1..n {
        g[i][1] = &int(-(i as i64)) * &a(n - i);
    }
    g[n][1] = int(n as i64);
    for j in 2..=n {
        g[1][j] = &a(n) * &g[n][j - 1];
        for i in 2..=n {
            g[i][j] = &(&a(n - i + 1) * &g[n][j - 1]) + &g[i - 1][j - 1];
        }
    }
    let entries = g
        .into_iter()
        .skip(1)
        .map(|r| r.into_iter().skip(1).collect())
        .collect();
    Ok(GMatrix::from_entries(&base, entries))
}

/// Column `j` is `x^(j-1) g` reduced mod `p(x)`.
pub fn g_matrix_operator(n: usize) -> Result<GMatrix> {
    check_rank(n)?;
    let sys = FrobSystem::universal(n)?;
    let mut col = genus_term(&sys)?;
    let mut columns = Vec::with_capacity(n);
    for _ in 0..n {
        columns.push(col.coeffs().to_vec());
        col = col.mul_x();
    }
    let entries = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
        .collect();
    Ok(GMatrix::from_entries(sys.base(), entries))
}

/// `G_n` with entries in the monomial symmetric basis of the roots, under
/// `a_k = -e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymGMatrix {
    pub n: usize,
    pub entries: Vec<Vec<SymPoly>>,
}

impl SymGMatrix {
    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &SymPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|r| Value::Array(r.iter().map(|v| Value::String(v.to_string())).collect()))
                .collect(),
        )
    }
}

impl fmt::Display for SymGMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(
            f,
            self.entries
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        )
    }
}

/// The closed pattern:
/// column 1 entry `i` is `i m_(1^(n-i))`;
/// column 2 entry `i` is `-(n-i+1) m_(1^(n-i+1))`;
/// column `j >= 3` entry `i` is `(-1)^(j-1) m_((j-1)^1 1^(n-i))`.
pub fn g_matrix_symmetric(n: usize) -> Result<SymGMatrix> {
    check_rank(n)?;
    let int = |v: i64| Rational::from_integer(v.into());
    let hook = |head: u32, ones: usize| {
        let mut parts = vec![head];
        parts.extend(std::iter::repeat_n(1, ones));
        Partition::new(parts, n)
    };
    let mut entries = vec![Vec::with_capacity(n); n];
    for (row, i) in entries.iter_mut().zip(1..=n) {
        row.push(SymPoly::monomial(Partition::column(n - i, n)?).scale(&int(i as i64)));
        row.push(
            SymPoly::monomial(Partition::column(n - i + 1, n)?).scale(&int(-((n - i + 1) as i64))),
        );
        for j in 3..=n {
            let sign = if j % 2 == 0 { -1 } else { 1 };
            row.push(SymPoly::monomial(hook(j as u32 - 1, n - i)?).scale(&int(sign)));
        }
    }
    Ok(SymGMatrix { n, entries })
}

/// Substitutes `a_k -> -e_k(alpha)` into the recursive matrix and converts
/// every entry to the monomial basis.
pub fn g_matrix_symmetric_via_substitution(n: usize) -> Result<SymGMatrix> {
    let g = g_matrix_recursive(n)?;
    let bindings: BTreeMap<String, MultiPoly> = (1..=n)
        .map(|k| {
            Ok((
                format!("a{k}"),
                -&monomial_expand(&Partition::column(k, n)?)?,
            ))
        })
        .collect::<Result<_>>()?;
    let alphas = alpha_table(n);
    let entries = g
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| to_monomial_basis(&v.subst(&bindings)?.retable(&alphas)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(SymGMatrix { n, entries })
}

/// `eps(x^k g)`, the torus marked `x^k`: entry `(n, k+1)` of `G_n`.
pub fn torus_eval(n: usize, k: usize) -> Result<MultiPoly> {
    check_rank(n)?;
    if k >= n {
        return Err(Error::MarkDegreeOutOfRange { k, n });
    }
    let entry = g_matrix_recursive(n)?.get(n, k + 1).clone();
    let sys = FrobSystem::universal(n)?;
    let direct = closed_surface_eval(&sys, 1, &AElement::x_pow(&sys, k))?;
    if direct != entry {
        return Err(Error::InternalInconsistency(format!(
            "G entry ({n}, {}) = {entry} but eps(x^{k} g) = {direct}",
            k + 1
        )));
    }
    Ok(entry)
}

/// `(G_2)^k` by repeated multiplication, checked against
/// `(a1^2 + 4 a2)^(k/2) I` for even `k` and `(a1^2 + 4 a2)^((k-1)/2) G_2` for odd `k`.
pub fn g2_power(k: u32) -> Result<GMatrix> {
    if k == 0 {
        return Err(Error::NotPositive("k"));
    }
    let g2 = g_matrix_recursive(2)?;
    let base = g2.base().clone();
    let mut power = g2.clone();
    for _ in 1..k {
        power = power.mul(&g2);
    }
    let disc = MultiPoly::parse(&base, "a1^2 + 4*a2")?;
    let closed = if k % 2 == 0 {
        GMatrix::identity(&base, 2).scale(&disc.pow(k / 2))
    } else {
        g2.scale(&disc.pow((k - 1) / 2))
    };
    if power != closed {
        return Err(Error::ClosedFormMismatch(format!("(G_2)^{k}")));
    }
    Ok(power)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, rows: &[&[&str]]) -> GMatrix {
        let base = VarTable::indexed("a", n);
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| MultiPoly::parse(&base, s).unwrap())
                    .collect()
            })
            .collect();
        GMatrix::from_entries(&base, entries)
    }

    fn g2() -> GMatrix {
        table(2, &[&["-a1", "2*a2"], &["2", "a1"]])
    }

    fn g3() -> GMatrix {
        table(
            3,
            &[
                &["-a2", "3*a3", "a1*a3"],
                &["-2*a1", "2*a2", "a1*a2 + 3*a3"],
                &["3", "a1", "a1^2 + 2*a2"],
            ],
        )
    }

    fn g4() -> GMatrix {
        table(
            4,
            &[
                &["-a3", "4*a4", "a1*a4", "a1^2*a4 + 2*a2*a4"],
                &["-2*a2", "3*a3", "a1*a3 + 4*a4", "a1^2*a3 + 2*a2*a3 + a1*a4"],
                &[
                    "-3*a1",
                    "2*a2",
                    "a1*a2 + 3*a3",
                    "a1^2*a2 + 2*a2^2 + a1*a3 + 4*a4",
                ],
                &["4", "a1", "a1^2 + 2*a2", "a1^3 + 3*a1*a2 + 3*a3"],
            ],
        )
    }

    #[test]
    fn printed_tables() {
        assert_eq!(g_matrix_recursive(2).unwrap(), g2());
        assert_eq!(g_matrix_recursive(3).unwrap(), g3());
        assert_eq!(g_matrix_recursive(4).unwrap(), g4());
        assert_eq!(g_matrix_operator(4).unwrap(), g4());
        assert_eq!(g_matrix_recursive(1).unwrap_err(), Error::RankTooSmall(1));
    }

    #[test]
    fn recursive_matches_operator() {
        for n in 2..=5 {
            assert_eq!(
                g_matrix_recursive(n).unwrap(),
                g_matrix_operator(n).unwrap()
            );
        }
    }

    #[test]
    fn symmetric_examples() {
        let s2 = g_matrix_symmetric(2).unwrap();
        assert_eq!(s2.to_string(), "m(1^1)  -2*m(1^2)\n2       -m(1^1)");
        let s4 = g_matrix_symmetric(4).unwrap();
        assert_eq!(s4.get(4, 4).to_string(), "-m(3^1)");
        let s5 = g_matrix_symmetric(5).unwrap();
        assert_eq!(s5.get(1, 3).to_string(), "m(2^1 1^4)");
        for n in 2..=4 {
            assert_eq!(
                g_matrix_symmetric(n).unwrap(),
                g_matrix_symmetric_via_substitution(n).unwrap()
            );
        }
    }

    #[test]
    fn torus_examples() {
        let b2 = VarTable::indexed("a", 2);
        assert_eq!(
            torus_eval(2, 1).unwrap(),
            MultiPoly::parse(&b2, "a1").unwrap()
        );
        assert_eq!(
            torus_eval(3, 0).unwrap(),
            MultiPoly::int(&VarTable::indexed("a", 3), 3)
        );
        let b4 = VarTable::indexed("a", 4);
        assert_eq!(
            torus_eval(4, 3).unwrap(),
            MultiPoly::parse(&b4, "a1^3 + 3*a1*a2 + 3*a3").unwrap()
        );
        assert_eq!(
            torus_eval(3, 3).unwrap_err(),
            Error::MarkDegreeOutOfRange { k: 3, n: 3 }
        );
    }

    #[test]
    fn g2_power_examples() {
        let b = VarTable::indexed("a", 2);
        let disc = MultiPoly::parse(&b, "a1^2 + 4*a2").unwrap();
        assert_eq!(g2_power(1).unwrap(), g2());
        assert_eq!(g2_power(2).unwrap(), GMatrix::identity(&b, 2).scale(&disc));
        assert_eq!(g2_power(5).unwrap(), g2().scale(&disc.pow(2)));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(g2().to_string(), "-a1  2*a2\n2    a1");
        let g = g4();
        assert_eq!(GMatrix::from_json(&g.to_json()).unwrap(), g);
    }
}
