#![allow(dead_code)]

use frobskein_core::skein2::{
    apply_relation, canonicalize, coeff_table, sites, Mark, NormalForm, SkeinElement, SphereConfig,
};
use frobskein_core::MultiPoly;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn coeff(src: &str) -> MultiPoly {
    MultiPoly::parse(coeff_table(), src).unwrap()
}

pub fn words(len: usize) -> Vec<Vec<Mark>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Mark>| {
                [Mark::Dot, Mark::Plain].map(|m| {
                    let mut w2 = w.clone();
                    w2.push(m);
                    w2
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(len: usize) -> Vec<Vec<Mark>> {
    (0..=len).flat_map(words).collect()
}

/// Distinct configurations with at most `max_len` spheres and `max_dots` dots.
pub fn configs(max_len: usize, max_dots: usize) -> Vec<SphereConfig> {
    let mut out: Vec<SphereConfig> = words_up_to(max_len)
        .iter()
        .map(|w| canonicalize(w))
        .filter(|c| c.dots() <= max_dots)
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Mark> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.random_bool(0.5) {
                Mark::Dot
            } else {
                Mark::Plain
            }
        })
        .collect()
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> MultiPoly {
    let a = rng.random_range(-3..=3);
    let b = rng.random_range(-2..=2);
    let d = rng.random_range(1..=3);
    coeff(&format!("{a}/{d} + {b}*a1"))
}

pub fn random_element<R: Rng>(rng: &mut R, max_len: usize, max_terms: usize) -> SkeinElement {
    let mut e = SkeinElement::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        e.add_word(&random_word(rng, max_len), random_coeff(rng));
    }
    e
}

fn is_terminal(c: &SphereConfig) -> bool {
    c.dots() == 0 || c.word() == [Mark::Dot]
}

fn read_terminal(e: &SkeinElement) -> NormalForm {
    let mut nf = NormalForm::zero();
    for (c, v) in e.terms() {
        if c.dots() == 1 {
            nf.add_e(v.clone());
        } else if c.len() % 2 == 0 {
            nf.add_x((c.len() / 2) as u32, v.clone());
        }
    }
    nf
}

/// Smallest cyclic distance between a dot and the next dot to its right.
fn min_gap(w: &[Mark]) -> Option<usize> {
    let dots: Vec<usize> = w
        .iter()
        .enumerate()
        .filter(|(_, m)| **m == Mark::Dot)
        .map(|(i, _)| i)
        .collect();
    if dots.len() < 2 {
        return None;
    }
    (0..dots.len())
        .map(|k| {
            let (a, b) = (dots[k], dots[(k + 1) % dots.len()]);
            (b + w.len() - a - 1) % w.len()
        })
        .min()
}

/// Literal gap from the dot at `pos` to the next dot on its right.
fn literal_gap(w: &[Mark], pos: usize) -> Option<usize> {
    w[pos + 1..].iter().position(|m| *m == Mark::Dot)
}

/// Rewrites with randomly chosen terms and relation sites until only plain
/// configurations and the single dot remain. Relation 2 is used only where
/// it shortens a smallest gap between dots, and relations 4 and 5 are
/// limited to `shuffle_budget` uses so that the walk terminates.
pub fn random_rewrite<R: Rng>(
    rng: &mut R,
    start: &SkeinElement,
    shuffle_budget: usize,
) -> NormalForm {
    let mut e = start.clone();
    let mut budget = shuffle_budget;
    for _ in 0..100_000 {
        let open: Vec<&SphereConfig> = e.terms().keys().filter(|c| !is_terminal(c)).collect();
        let Some(&config) = open.choose(rng) else {
            return read_terminal(&e);
        };
        let w = config.word();
        let gap = min_gap(w);
        let moves: Vec<(u8, usize)> = sites(config)
            .into_iter()
            .filter(|&(r, pos)| match r {
                1 | 6 => true,
                2 => gap.is_some() && literal_gap(w, pos) == gap,
                4 | 5 => budget > 0,
                _ => false,
            })
            .collect();
        let &(r, pos) = moves
            .choose(rng)
            .expect("a non-terminal configuration has a reducing site");
        if matches!(r, 4 | 5) {
            budget -= 1;
        }
        e = apply_relation(r, &e, config, pos).unwrap();
    }
    panic!("rewriting did not terminate");
}

/// Left- and right-hand sides of every relation instance whose left side
/// has at most `max_len` spheres: the pattern followed by a host word.
pub fn relation_instances(max_len: usize) -> Vec<(u8, Vec<Mark>)> {
    use Mark::{Dot as D, Plain as P};
    let patterns: Vec<(u8, Vec<Mark>)> = vec![
        (1, vec![D, D]),
        (2, vec![D, P]),
        (4, vec![D, D, P]),
        (4, vec![P, D, D]),
        (5, vec![D, P, P]),
        (5, vec![P, P, D]),
    ];
    let mut out = Vec::new();
    for (r, pat) in patterns {
        for host in words_up_to(max_len - pat.len()) {
            out.push((r, [pat.clone(), host].concat()));
        }
    }
    for len in 2..=max_len {
        let mut w = vec![P; len];
        w[0] = D;
        out.push((6, w));
    }
    for w in words_up_to(max_len) {
        for pos in 0..w.len() {
            out.push((3, [&w[pos..], &w[..pos]].concat()));
        }
    }
    out
}
