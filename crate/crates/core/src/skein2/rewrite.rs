//! The local relations on sphere configurations and the reduction to
//! normal form.

use std::collections::{BTreeSet, VecDeque};

use super::{canonicalize, coeff, coeff_table, Mark, NormalForm, SkeinElement, SphereConfig};
use crate::error::{Error, Result};
use crate::polyring::MultiPoly;

use Mark::{Dot as D, Plain as P};

type LinearTerms = Vec<(Vec<Mark>, MultiPoly)>;

fn splice(word: &[Mark], pos: usize, width: usize, with: &[Mark]) -> Vec<Mark> {
    let mut out = word[..pos].to_vec();
    out.extend_from_slice(with);
    out.extend_from_slice(&word[pos + width..]);
    out
}

fn window(word: &[Mark], pos: usize, width: usize) -> Option<&[Mark]> {
    word.get(pos..pos + width)
}

/// Applies relation `r` at literal position `pos` of the linear word,
/// returning the right-hand side as linear words. The first entry is the
/// term that keeps the most dots.
///
/// 1. `d,d -> (delete both) + a1^2/4 p,p`
/// 2. `d,p -> -p,d + a1 p,p`
/// 3. rotation by `pos`
/// 4. `d,d,p <-> p,d,d`
/// 5. `d,p,p <-> p,p,d`
/// 6. the only dot, with at least one other sphere: `-> a1/2` times all plain
fn rewrite_linear(r: u8, word: &[Mark], pos: usize) -> Result<LinearTerms> {
    let one = || MultiPoly::one(coeff_table());
    let mismatch = Error::PatternMismatch(r);
    match r {
        1 => match window(word, pos, 2) {
            Some([D, D]) => Ok(vec![
                (splice(word, pos, 2, &[]), one()),
                (splice(word, pos, 2, &[P, P]), coeff("1/4*a1^2")),
            ]),
            _ => Err(mismatch),
        },
        2 => match window(word, pos, 2) {
            Some([D, P]) => Ok(vec![
                (splice(word, pos, 2, &[P, D]), coeff("-1")),
                (splice(word, pos, 2, &[P, P]), coeff("a1")),
            ]),
            _ => Err(mismatch),
        },
        3 if pos < word.len() => {
            let mut w = word.to_vec();
            w.rotate_left(pos);
            Ok(vec![(w, one())])
        }
        4 => match window(word, pos, 3) {
            Some([D, D, P]) => Ok(vec![(splice(word, pos, 3, &[P, D, D]), one())]),
            Some([P, D, D]) => Ok(vec![(splice(word, pos, 3, &[D, D, P]), one())]),
            _ => Err(mismatch),
        },
        5 => match window(word, pos, 3) {
            Some([D, P, P]) => Ok(vec![(splice(word, pos, 3, &[P, P, D]), one())]),
            Some([P, P, D]) => Ok(vec![(splice(word, pos, 3, &[D, P, P]), one())]),
            _ => Err(mismatch),
        },
        6 if word.len() >= 2
            && word.get(pos) == Some(&D)
            && word.iter().filter(|&&m| m == D).count() == 1 =>
        {
            Ok(vec![(vec![P; word.len()], coeff("1/2*a1"))])
        }
        _ => Err(mismatch),
    }
}

/// The right-hand side of relation `r` at `pos` of `word`, as an element.
pub fn rewrite_word(r: u8, word: &[Mark], pos: usize) -> Result<SkeinElement> {
    let mut out = SkeinElement::zero();
    for (w, c) in rewrite_linear(r, word, pos)? {
        out.add_word(&w, c);
    }
    Ok(out)
}

/// Replaces the `config` term of `elt` by its rewrite under relation `r` at
/// position `pos` of the stored word.
pub fn apply_relation(
    r: u8,
    elt: &SkeinElement,
    config: &SphereConfig,
    pos: usize,
) -> Result<SkeinElement> {
    let c = elt
        .terms()
        .get(config)
        .cloned()
        .ok_or(Error::PatternMismatch(r))?;
    let rhs = rewrite_word(r, config.word(), pos)?;
    let mut out = elt.clone();
    out.add_term(config.clone(), -&c);
    for (k, v) in rhs.terms() {
        out.add_term(k.clone(), v * &c);
    }
    Ok(out)
}

/// Every `(relation, position)` whose pattern matches the stored word.
pub fn sites(config: &SphereConfig) -> Vec<(u8, usize)> {
    let mut out = Vec::new();
    for r in 1..=6u8 {
        for pos in 0..config.len() {
            if rewrite_linear(r, config.word(), pos).is_ok() {
                out.push((r, pos));
            }
        }
    }
    out
}

/// The least configuration reachable through rotations and relations 4
/// and 5; these moves carry coefficient one, so the result is equal to the
/// input in the skein module.
pub fn standard_position(config: &SphereConfig) -> SphereConfig {
    let mut seen = BTreeSet::from([config.clone()]);
    let mut queue = VecDeque::from([config.clone()]);
    while let Some(c) = queue.pop_front() {
        let n = c.len();
        for rot in 0..n {
            let mut w = c.word().to_vec();
            w.rotate_left(rot);
            for r in [4, 5] {
                if let Ok(terms) = rewrite_linear(r, &w, 0) {
                    let next = canonicalize(&terms[0].0);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen.into_iter().next().expect("orbit contains the input")
}

/// Reduces to `q(X) + c e`. Configurations are processed in order of
/// decreasing dot count. Each is put in standard position and rotated so a
/// dot sits last; the leftmost dot is then carried right by relation 2 until
/// it meets the next dot, and the pair is removed by relation 1. Every side
/// term has fewer dots. A lone dot among plain spheres is removed by
/// relation 6, and plain configurations give `X^k` for `2k` spheres and zero
/// for an odd count.
pub fn normalize_element(elt: &SkeinElement) -> Result<NormalForm> {
    if elt.table() != coeff_table() {
        return Err(Error::VarTableMismatch(
            elt.table().names().join(","),
            coeff_table().names().join(","),
        ));
    }
    let max_dots = elt
        .terms()
        .keys()
        .map(SphereConfig::dots)
        .max()
        .unwrap_or(0);
    let mut levels = vec![SkeinElement::zero(); max_dots + 1];
    for (c, v) in elt.terms() {
        levels[c.dots()].add_term(c.clone(), v.clone());
    }
    let push = |levels: &mut Vec<SkeinElement>, word: &[Mark], c: MultiPoly| {
        let config = canonicalize(word);
        levels[config.dots()].add_term(config, c);
    };

    let mut nf = NormalForm::zero();
    for d in (0..=max_dots).rev() {
        let level = std::mem::replace(&mut levels[d], SkeinElement::zero());
        for (config, k) in level.terms() {
            let config = standard_position(config);
            let len = config.len();
            match d {
                0 => {
                    if len % 2 == 0 {
                        nf.add_x((len / 2) as u32, k.clone());
                    }
                }
                1 if len == 1 => nf.add_e(k.clone()),
                1 => {
                    let pos = config.word().iter().position(|&m| m == D).unwrap();
                    for (w, c) in rewrite_linear(6, config.word(), pos)? {
                        push(&mut levels, &w, &c * k);
                    }
                }
                _ => {
                    let mut word = config.word().to_vec();
                    let last_dot = word.iter().rposition(|&m| m == D).unwrap();
                    word.rotate_left(last_dot + 1);
                    let mut coeff = k.clone();
                    let first = word.iter().position(|&m| m == D).unwrap();
                    let next = first + 1 + word[first + 1..].iter().position(|&m| m == D).unwrap();
                    for pos in first..next - 1 {
                        let mut terms = rewrite_linear(2, &word, pos)?.into_iter();
                        let (main, sign) = terms.next().unwrap();
                        for (w, c) in terms {
                            push(&mut levels, &w, &c * &coeff);
                        }
                        word = main;
                        coeff = &coeff * &sign;
                    }
                    for (w, c) in rewrite_linear(1, &word, next - 1)? {
                        push(&mut levels, &w, &c * &coeff);
                    }
                }
            }
        }
    }
    Ok(nf)
}
