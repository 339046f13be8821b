//! Test-side models of braids that do not go through the library's
//! Garside machinery.
#![allow(dead_code)]

use std::sync::Arc;

use garside::braid::{BraidGroup, Permutation};
use garside::{Element, GarsideContext};

pub type Ctx = Arc<GarsideContext<BraidGroup>>;

pub fn b(n: usize) -> Ctx {
    BraidGroup::context(n).unwrap()
}

/// Free group word over `x_1..x_n`; `k` is `x_k`, `-k` its inverse.
pub type FreeWord = Vec<i32>;

fn reduce(w: FreeWord) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|g| -g).collect()
}

/// The Artin representation of a braid word in `Aut(F_n)`, as the images of
/// the free generators. Faithful, so two words give equal images exactly
/// when they are the same braid.
pub fn artin_action(n: usize, letters: &[i64]) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (1..=n as i32).map(|k| vec![k]).collect();
    for &letter in letters {
        let i = letter.unsigned_abs() as i32;
        let sub = |g: i32| -> FreeWord {
            let (x, sign) = (g.abs(), g.signum());
            let img = if letter > 0 {
                if x == i {
                    vec![i, i + 1, -i]
                } else if x == i + 1 {
                    vec![i]
                } else {
                    vec![x]
                }
            } else if x == i {
                vec![i + 1]
            } else if x == i + 1 {
                vec![-(i + 1), i, i + 1]
            } else {
                vec![x]
            };
            if sign > 0 {
                img
            } else {
                invert(&img)
            }
        };
        for w in images.iter_mut() {
            *w = reduce(w.iter().flat_map(|&g| sub(g)).collect());
        }
    }
    images
}

/// The standard positive word of Δ in `B_n`.
pub fn delta_word(n: usize) -> Vec<i64> {
    let mut w = Vec::new();
    for top in (1..n).rev() {
        for i in 1..=top {
            w.push(i as i64);
        }
    }
    w
}

/// Signed generator word for a normal form, built from Δ's standard word and
/// the atom words of the factors.
pub fn element_word(x: &Element<BraidGroup>) -> Vec<i64> {
    let ctx = x.context();
    let n = ctx.structure().strands();
    let d = delta_word(n);
    let mut w = Vec::new();
    let p = x.inf();
    for _ in 0..p.max(0) {
        w.extend(&d);
    }
    for _ in 0..(-p).max(0) {
        w.extend(d.iter().rev().map(|g| -g));
    }
    for f in x.factors() {
        w.extend(ctx.atom_word(f).into_iter().map(|a| a.index() as i64));
    }
    w
}

pub fn same_braid(n: usize, a: &[i64], b: &[i64]) -> bool {
    artin_action(n, a) == artin_action(n, b)
}

/// The permutation of a positive word under "first a, then b" composition,
/// computed by swapping strand positions letter by letter.
pub fn word_permutation(n: usize, letters: &[usize]) -> Permutation {
    // position[k] = where the strand that started at k currently is
    let mut position: Vec<usize> = (0..n).collect();
    for &i in letters {
        for p in position.iter_mut() {
            if *p == i - 1 {
                *p = i;
            } else if *p == i {
                *p = i - 1;
            }
        }
    }
    Permutation::from_images(&position).unwrap()
}

/// All positive words of length exactly `len` in `B_n`.
pub fn positive_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (1..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    words
}

/// Number of crossings of a simple braid counted on its permutation.
pub fn crossings(p: &Permutation) -> usize {
    p.inversions()
}

/// Applies one random braid relation to a signed word, if a site exists:
/// far commutation, the braid relation in either sign, or inserting/removing
/// a cancelling pair.
pub fn rewrite_once<R: rand::Rng>(rng: &mut R, n: usize, w: &mut Vec<i64>) {
    for _ in 0..32 {
        match rng.gen_range(0..4) {
            0 if w.len() >= 2 => {
                let k = rng.gen_range(0..w.len() - 1);
                if (w[k].abs() - w[k + 1].abs()).abs() >= 2 {
                    w.swap(k, k + 1);
                    return;
                }
            }
            1 if w.len() >= 3 => {
                let k = rng.gen_range(0..w.len() - 2);
                let (a, c, d) = (w[k], w[k + 1], w[k + 2]);
                if a == d && a.signum() == c.signum() && (a.abs() - c.abs()).abs() == 1 {
                    w[k] = c;
                    w[k + 1] = a;
                    w[k + 2] = c;
                    return;
                }
            }
            2 => {
                let k = rng.gen_range(0..=w.len());
                let i = rng.gen_range(1..n as i64);
                let g = if rng.gen_bool(0.5) { i } else { -i };
                w.splice(k..k, [g, -g]);
                return;
            }
            3 if w.len() >= 2 => {
                let k = rng.gen_range(0..w.len() - 1);
                if w[k] == -w[k + 1] {
                    w.drain(k..k + 2);
                    return;
                }
            }
            _ => {}
        }
    }
}
