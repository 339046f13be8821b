//! The Artin Garside structure of the braid group `B_n`.
//!
//! Simple braids are permutation braids and are stored as permutations of the
//! strand positions. A braid word is read left to right, so the product `ab`
//! is "first `a`, then `b`": as permutations `(ab)(k) = b(a(k))`.
//!
//! With this convention `σ_i ≼ s` exactly when the strands starting at
//! positions `i` and `i+1` cross in `s`, i.e. when `s(i) > s(i+1)`, and
//! `s ≽ σ_i` exactly when the strands ending at `i` and `i+1` cross, i.e. when
//! `s⁻¹(i) > s⁻¹(i+1)`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::contract::{Atom, GarsideContext, GarsideStructure, Side};
use crate::element::{Element, Signed};
use crate::error::{GarsideError, Result};

pub const MAX_STRANDS: usize = 32;

/// A permutation of `{0, …, n-1}` stored as its image table.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    len: u8,
    images: [u8; MAX_STRANDS],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_STRANDS);
        let mut images = [0u8; MAX_STRANDS];
        for (k, v) in images.iter_mut().enumerate().take(n) {
            *v = k as u8;
        }
        Permutation {
            len: n as u8,
            images,
        }
    }

    /// The half twist `k ↦ n-1-k`.
    pub fn reversal(n: usize) -> Self {
        let mut p = Self::identity(n);
        for k in 0..n {
            p.images[k] = (n - 1 - k) as u8;
        }
        p
    }

    /// Builds a permutation from 0-based images; `None` unless it is a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_STRANDS {
            return None;
        }
        let mut seen = [false; MAX_STRANDS];
        let mut p = Self::identity(n);
        for (k, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
            p.images[k] = v as u8;
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.len()]
    }

    pub fn image(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(k, &v)| k == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        for k in 0..self.len() {
            inv.images[self.images[k] as usize] = k as u8;
        }
        inv
    }

    /// Braid-order product: first `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut out = *self;
        for k in 0..self.len() {
            out.images[k] = other.images[self.images[k] as usize];
        }
        out
    }

    /// Number of inversions, which is the crossing count of the permutation braid.
    pub fn inversions(&self) -> usize {
        let im = self.images();
        let mut count = 0;
        for i in 0..im.len() {
            for j in i + 1..im.len() {
                if im[i] > im[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn swap_positions(&self, k: usize) -> Self {
        let mut p = *self;
        p.images.swap(k, k + 1);
        p
    }

    fn swap_values(&self, v: usize) -> Self {
        let mut p = *self;
        for x in p.images[..self.len()].iter_mut() {
            if *x as usize == v {
                *x = (v + 1) as u8;
            } else if *x as usize == v + 1 {
                *x = v as u8;
            }
        }
        p
    }

    fn position_of(&self, v: usize) -> usize {
        self.images()
            .iter()
            .position(|&x| x as usize == v)
            .expect("value in range")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm(")?;
        for (k, v) in self.images().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// `B_n` with atoms `σ_1, …, σ_{n-1}` and Δ the half twist.
#[derive(Clone, Debug)]
pub struct BraidGroup {
    n: usize,
    fast_paths: bool,
}

impl BraidGroup {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_STRANDS).contains(&n) {
            return Err(GarsideError::InvalidStrandCount {
                n,
                max: MAX_STRANDS,
            });
        }
        Ok(BraidGroup {
            n,
            fast_paths: true,
        })
    }

    /// The same structure with only the required primitives; every derived
    /// operation then runs through the generic atom-division algorithms.
    pub fn without_fast_paths(n: usize) -> Result<Self> {
        Ok(BraidGroup {
            fast_paths: false,
            ..Self::new(n)?
        })
    }

    /// Builds the context for `B_n`.
    pub fn context(n: usize) -> Result<Arc<GarsideContext<BraidGroup>>> {
        GarsideContext::new(Self::new(n)?)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn generator(&self, i: usize) -> Permutation {
        Permutation::identity(self.n).swap_positions(i - 1)
    }

    /// The simple braid spelled by a positive word, if that word is simple.
    pub fn simple_from_word(&self, letters: &[usize]) -> Option<Permutation> {
        let mut p = Permutation::identity(self.n);
        for &i in letters {
            if i == 0 || i >= self.n {
                return None;
            }
            p = mul_right_atom(&p, i)?;
        }
        Some(p)
    }
}

/// `s·σ_i` if simple.
fn mul_right_atom(s: &Permutation, i: usize) -> Option<Permutation> {
    // s·σ_i adds a crossing between the strands ending at i-1 and i (0-based)
    if s.position_of(i - 1) < s.position_of(i) {
        Some(s.swap_values(i - 1))
    } else {
        None
    }
}

/// `σ_i·s` if simple.
fn mul_left_atom(s: &Permutation, i: usize) -> Option<Permutation> {
    if s.images[i - 1] < s.images[i] {
        Some(s.swap_positions(i - 1))
    } else {
        None
    }
}

impl GarsideStructure for BraidGroup {
    type Simple = Permutation;

    fn atom_count(&self) -> usize {
        self.n - 1
    }

    fn atom_name(&self, atom: Atom) -> String {
        format!("s{}", atom.index())
    }

    fn atom_simple(&self, atom: Atom) -> Permutation {
        self.generator(atom.index())
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    fn delta(&self) -> Permutation {
        Permutation::reversal(self.n)
    }

    fn divide_left(&self, atom: Atom, s: &Permutation) -> Option<Permutation> {
        let k = atom.index() - 1;
        (s.images[k] > s.images[k + 1]).then(|| s.swap_positions(k))
    }

    fn divide_right(&self, s: &Permutation, atom: Atom) -> Option<Permutation> {
        let v = atom.index() - 1;
        (s.position_of(v) > s.position_of(v + 1)).then(|| s.swap_values(v))
    }

    fn hash_simple(&self, s: &Permutation) -> u64 {
        let mut h = DefaultHasher::new();
        s.images().hash(&mut h);
        h.finish()
    }

    fn owns(&self, s: &Permutation) -> bool {
        s.len() == self.n
    }

    fn simple_count_hint(&self) -> Option<u64> {
        (1..=self.n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
    }

    fn equal_fast(&self, s: &Permutation, t: &Permutation) -> Option<bool> {
        self.fast_paths.then(|| s == t)
    }

    fn mul_atom_fast(
        &self,
        s: &Permutation,
        atom: Atom,
        side: Side,
    ) -> Option<Option<Permutation>> {
        if !self.fast_paths {
            return None;
        }
        Some(match side {
            Side::Right => mul_right_atom(s, atom.index()),
            Side::Left => mul_left_atom(s, atom.index()),
        })
    }

    fn complement_fast(&self, s: &Permutation, side: Side) -> Option<Permutation> {
        if !self.fast_paths {
            return None;
        }
        let delta = Permutation::reversal(self.n);
        let inv = s.inverse();
        Some(match side {
            // ∂(s) = s⁻¹Δ
            Side::Right => inv.then(&delta),
            // ∂⁻¹(s) = Δs⁻¹
            Side::Left => delta.then(&inv),
        })
    }
}

/// A braid word: an optional leading power of Δ followed by signed generators
/// (`i` is `σ_i`, `-i` is `σ_i⁻¹`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BraidWord {
    pub delta_power: i64,
    pub letters: Vec<i64>,
}

/// Parses `[D[^k]] i j -k …`.
///
/// Parentheses and `.` act as separators so that printed normal forms parse
/// back. Positions in errors are 1-based character columns.
pub fn parse_word(text: &str) -> Result<BraidWord> {
    let mut word = BraidWord::default();
    let mut seen_term = false;
    let mut seen_delta = false;
    for (position, token) in tokens(text) {
        let err = |message: String| GarsideError::Parse { position, message };
        if let Some(rest) = token.strip_prefix(['D', 'd']) {
            if seen_term || seen_delta {
                return Err(err("Δ power must come first and only once".into()));
            }
            seen_delta = true;
            word.delta_power = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                exp.parse::<i64>()
                    .map_err(|_| err(format!("bad exponent '{exp}'")))?
            } else {
                return Err(err(format!("unexpected token '{token}'")));
            };
        } else {
            let value: i64 = token
                .parse()
                .map_err(|_| err(format!("unexpected token '{token}'")))?;
            if value == 0 {
                return Err(err("generator index 0 is not allowed".into()));
            }
            word.letters.push(value);
            seen_term = true;
        }
    }
    Ok(word)
}

fn tokens(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (column, ch) in text.chars().enumerate() {
        if ch.is_whitespace() || matches!(ch, '(' | ')' | '.') {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = column;
            }
            current.push(ch);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

/// The element of `B_n` spelled by `word`.
pub fn element_from_word(
    ctx: &Arc<GarsideContext<BraidGroup>>,
    word: &BraidWord,
) -> Result<Element<BraidGroup>> {
    let n = ctx.structure().strands();
    let mut parts = Vec::with_capacity(word.letters.len());
    for &letter in &word.letters {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= n {
            return Err(GarsideError::GeneratorOutOfRange {
                generator: letter,
                strands: n,
            });
        }
        let g = ctx.structure().generator(i);
        parts.push(if letter > 0 {
            Signed::Pos(g)
        } else {
            Signed::Neg(g)
        });
    }
    Ok(Element::normalize(ctx, word.delta_power, &parts))
}

/// Parses and normalizes in one step.
pub fn parse_element(
    ctx: &Arc<GarsideContext<BraidGroup>>,
    text: &str,
) -> Result<Element<BraidGroup>> {
    element_from_word(ctx, &parse_word(text)?)
}

/// A positive word for a simple braid (leftmost generator of smallest index first).
pub fn simple_word(ctx: &GarsideContext<BraidGroup>, s: &Permutation) -> Vec<usize> {
    ctx.atom_word(s).into_iter().map(Atom::index).collect()
}

fn join(letters: &[usize]) -> String {
    letters
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The left normal form as `D^p (w1) (w2) …`.
pub fn word_from_element(x: &Element<BraidGroup>) -> String {
    let ctx = x.context();
    let mut out = format!("D^{}", x.inf());
    for f in x.factors() {
        out.push_str(" (");
        out.push_str(&join(&simple_word(ctx, f)));
        out.push(')');
    }
    out
}

/// A simple braid written as its positive word.
pub fn simple_to_string(ctx: &GarsideContext<BraidGroup>, s: &Permutation) -> String {
    let w = simple_word(ctx, s);
    if w.is_empty() {
        "1".into()
    } else {
        join(&w)
    }
}

/// A uniformly random word of `len` signed generators.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord {
        delta_power: 0,
        letters,
    }
}

/// A uniformly random positive word.
pub fn random_positive_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    BraidWord {
        delta_power: 0,
        letters: (0..len).map(|_| rng.gen_range(1..n as i64)).collect(),
    }
}

/// A uniformly random simple braid.
pub fn random_simple<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffle is a bijection")
}

/// A random element built from `factors` random simple factors, each inverted
/// with probability `inverse_probability`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Arc<GarsideContext<BraidGroup>>,
    factors: usize,
    inverse_probability: f64,
) -> Element<BraidGroup> {
    let n = ctx.structure().strands();
    let parts: Vec<_> = (0..factors)
        .map(|_| {
            let s = random_simple(rng, n);
            if rng.gen_bool(inverse_probability) {
                Signed::Neg(s)
            } else {
                Signed::Pos(s)
            }
        })
        .collect();
    Element::normalize(ctx, 0, &parts)
}
