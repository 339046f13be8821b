//! Group elements in left normal form `Δ^p x_1 ⋯ x_r`.
//!
//! Every element stores its left normal form. The right normal form
//! `y_1 ⋯ y_r Δ^p` is computed on first use and cached.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::contract::{GarsideContext, GarsideStructure, Side};
use crate::error::{GarsideError, Result};

/// A simple element or the inverse of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signed<S> {
    Pos(S),
    Neg(S),
}

/// A power of Δ together with a sequence of proper simple factors.
///
/// As a left normal form this reads `Δ^power · factors`, as a right normal
/// form `factors · Δ^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<S> {
    pub power: i64,
    pub factors: Vec<S>,
}

/// Working state for normalization: `Δ^p f_1 ⋯ f_k` with `f` left-weighted.
struct LeftForm<'a, G: GarsideStructure> {
    ctx: &'a GarsideContext<G>,
    p: i64,
    f: Vec<G::Simple>,
}

impl<'a, G: GarsideStructure> LeftForm<'a, G> {
    fn new(ctx: &'a GarsideContext<G>, p: i64, f: Vec<G::Simple>) -> Self {
        LeftForm { ctx, p, f }
    }

    /// Right multiplication by a simple element.
    fn push(&mut self, s: G::Simple) {
        self.f.push(s);
        let mut i = self.f.len();
        while i >= 2 {
            i -= 1;
            match self
                .ctx
                .local_sliding_changed(&self.f[i - 1], &self.f[i], Side::Left)
            {
                Some((a, b)) => {
                    self.f[i - 1] = a;
                    self.f[i] = b;
                }
                None => break,
            }
        }
        self.tidy();
    }

    /// Left multiplication by a simple element already moved past `Δ^p`.
    fn insert_front(&mut self, t: G::Simple) {
        self.f.insert(0, t);
        for i in 0..self.f.len() - 1 {
            match self
                .ctx
                .local_sliding_changed(&self.f[i], &self.f[i + 1], Side::Left)
            {
                Some((a, b)) => {
                    self.f[i] = a;
                    self.f[i + 1] = b;
                }
                None => break,
            }
        }
        self.tidy();
    }

    /// Left multiplication by a simple element: `sΔ^p = Δ^p τ^p(s)`.
    fn push_front(&mut self, s: &G::Simple) {
        let t = self.ctx.tau_power(s, self.p);
        self.insert_front(t);
    }

    /// Right multiplication by `s⁻¹ = ∂(s)Δ⁻¹`.
    fn push_inverse(&mut self, s: &G::Simple) {
        let c = self.ctx.right_complement(s);
        self.push(c);
        self.mul_delta_inverse_right();
    }

    /// Left multiplication by `s⁻¹ = Δ⁻¹∂⁻¹(s)`.
    fn push_front_inverse(&mut self, s: &G::Simple) {
        let t = self.ctx.complement_power(s, 2 * self.p - 1);
        self.insert_front(t);
        self.p -= 1;
    }

    /// `xΔ⁻¹ = Δ⁻¹τ⁻¹(x)`.
    fn mul_delta_inverse_right(&mut self) {
        for f in self.f.iter_mut() {
            *f = self.ctx.tau_inverse(f);
        }
        self.p -= 1;
    }

    /// Moves leading Δ factors into the power and drops trailing identities.
    fn tidy(&mut self) {
        let lead = self.f.iter().take_while(|s| self.ctx.is_delta(s)).count();
        if lead > 0 {
            self.f.drain(..lead);
            self.p += lead as i64;
        }
        while let Some(last) = self.f.last() {
            if self.ctx.is_trivial_simple(last) {
                self.f.pop();
            } else {
                break;
            }
        }
    }
}

/// An element of the Garside group of a context.
pub struct Element<G: GarsideStructure> {
    ctx: Arc<GarsideContext<G>>,
    inf: i64,
    factors: Vec<G::Simple>,
    right: OnceLock<NormalForm<G::Simple>>,
}

impl<G: GarsideStructure> Clone for Element<G> {
    fn clone(&self) -> Self {
        Element {
            ctx: self.ctx.clone(),
            inf: self.inf,
            factors: self.factors.clone(),
            right: self.right.clone(),
        }
    }
}

impl<G: GarsideStructure> Element<G> {
    fn from_form(ctx: &Arc<GarsideContext<G>>, form: LeftForm<'_, G>) -> Self {
        Element {
            ctx: ctx.clone(),
            inf: form.p,
            factors: form.f,
            right: OnceLock::new(),
        }
    }

    fn form(&self) -> LeftForm<'_, G> {
        LeftForm::new(&self.ctx, self.inf, self.factors.clone())
    }

    /// The left normal form of `Δ^p · parts`.
    pub fn normalize(ctx: &Arc<GarsideContext<G>>, p: i64, parts: &[Signed<G::Simple>]) -> Self {
        let mut form = LeftForm::new(ctx, p, Vec::new());
        for part in parts {
            match part {
                Signed::Pos(s) => form.push(s.clone()),
                Signed::Neg(s) => form.push_inverse(s),
            }
        }
        Self::from_form(ctx, form)
    }

    /// Like [`normalize`](Self::normalize), rejecting simples from another structure.
    pub fn try_normalize(
        ctx: &Arc<GarsideContext<G>>,
        p: i64,
        parts: &[Signed<G::Simple>],
    ) -> Result<Self> {
        for part in parts {
            let (Signed::Pos(s) | Signed::Neg(s)) = part;
            ctx.check_simple(s)?;
        }
        Ok(Self::normalize(ctx, p, parts))
    }

    pub fn identity(ctx: &Arc<GarsideContext<G>>) -> Self {
        Self::delta_power(ctx, 0)
    }

    pub fn delta_power(ctx: &Arc<GarsideContext<G>>, p: i64) -> Self {
        Element {
            ctx: ctx.clone(),
            inf: p,
            factors: Vec::new(),
            right: OnceLock::new(),
        }
    }

    pub fn from_simple(ctx: &Arc<GarsideContext<G>>, s: &G::Simple) -> Self {
        let mut form = LeftForm::new(ctx, 0, vec![s.clone()]);
        form.tidy();
        Self::from_form(ctx, form)
    }

    pub fn context(&self) -> &Arc<GarsideContext<G>> {
        &self.ctx
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// `ℓ(x)`, the number of non-Δ factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// The factors `x_1, …, x_r` of the left normal form.
    pub fn factors(&self) -> &[G::Simple] {
        &self.factors
    }

    pub fn left_normal_form(&self) -> NormalForm<G::Simple> {
        NormalForm {
            power: self.inf,
            factors: self.factors.clone(),
        }
    }

    /// The right normal form `y_1 ⋯ y_r Δ^p`.
    pub fn right_normal_form(&self) -> &NormalForm<G::Simple> {
        self.right.get_or_init(|| self.compute_right_normal_form())
    }

    fn compute_right_normal_form(&self) -> NormalForm<G::Simple> {
        let ctx = &*self.ctx;
        let mut p = self.inf;
        // Δ^p x_i = τ^{-p}(x_i) Δ^p
        let mut y: Vec<G::Simple> = Vec::with_capacity(self.factors.len());
        for x in self.factors.iter().rev() {
            y.insert(0, ctx.tau_power(x, -p));
            for i in 0..y.len() - 1 {
                match ctx.local_sliding_changed(&y[i], &y[i + 1], Side::Right) {
                    Some((a, b)) => {
                        y[i] = a;
                        y[i + 1] = b;
                    }
                    None => break,
                }
            }
        }
        let lead = y.iter().take_while(|s| ctx.is_trivial_simple(s)).count();
        y.drain(..lead);
        while y.last().is_some_and(|s| ctx.is_delta(s)) {
            y.pop();
            p += 1;
        }
        NormalForm {
            power: p,
            factors: y,
        }
    }

    /// `ι(x)`, the first non-Δ factor moved to the front: `τ^{-p}(x_1)`.
    pub fn initial_factor(&self) -> G::Simple {
        match self.factors.first() {
            Some(x1) => self.ctx.tau_power(x1, -self.inf),
            None => self.ctx.one().clone(),
        }
    }

    /// `φ(x) = x_r`, or Δ when `ℓ(x) = 0`.
    pub fn final_factor(&self) -> G::Simple {
        match self.factors.last() {
            Some(x) => x.clone(),
            None => self.ctx.delta().clone(),
        }
    }

    /// The right initial factor `τ^p(y_r)` of the right normal form.
    pub fn right_initial_factor(&self) -> G::Simple {
        let rnf = self.right_normal_form();
        match rnf.factors.last() {
            Some(y) => self.ctx.tau_power(y, rnf.power),
            None => self.ctx.one().clone(),
        }
    }

    /// The right final factor `y_1`, or Δ when `ℓ(x) = 0`.
    pub fn right_final_factor(&self) -> G::Simple {
        match self.right_normal_form().factors.first() {
            Some(y) => y.clone(),
            None => self.ctx.delta().clone(),
        }
    }

    pub fn initial(&self, side: Side) -> G::Simple {
        match side {
            Side::Left => self.initial_factor(),
            Side::Right => self.right_initial_factor(),
        }
    }

    pub fn last(&self, side: Side) -> G::Simple {
        match side {
            Side::Left => self.final_factor(),
            Side::Right => self.right_final_factor(),
        }
    }

    /// The element as a simple, if it lies in `[1, Δ]`.
    pub fn as_simple(&self) -> Option<G::Simple> {
        match (self.inf, self.factors.len()) {
            (0, 0) => Some(self.ctx.one().clone()),
            (0, 1) => Some(self.factors[0].clone()),
            (1, 0) => Some(self.ctx.delta().clone()),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        self.ctx.same_context(&other.ctx)
    }

    pub(crate) fn mul_simple(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push(s.clone());
        Self::from_form(&self.ctx, form)
    }

    pub(crate) fn simple_mul(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push_front(s);
        Self::from_form(&self.ctx, form)
    }

    pub(crate) fn mul_simple_inverse(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push_inverse(s);
        Self::from_form(&self.ctx, form)
    }

    pub(crate) fn simple_inverse_mul(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push_front_inverse(s);
        Self::from_form(&self.ctx, form)
    }

    /// `x·s`.
    pub fn mul_simple_right(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.mul_simple(s))
    }

    /// `s·x`.
    pub fn mul_simple_left(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.simple_mul(s))
    }

    /// `x·s⁻¹`.
    pub fn mul_inverse_simple_right(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.mul_simple_inverse(s))
    }

    /// `s⁻¹·x`.
    pub fn mul_inverse_simple_left(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.simple_inverse_mul(s))
    }

    /// `x^s = s⁻¹xs`.
    pub(crate) fn conj_simple(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push_front_inverse(s);
        form.push(s.clone());
        Self::from_form(&self.ctx, form)
    }

    /// `x^{s⁻¹} = sxs⁻¹`.
    pub(crate) fn conj_simple_inverse(&self, s: &G::Simple) -> Self {
        let mut form = self.form();
        form.push_front(s);
        form.push_inverse(s);
        Self::from_form(&self.ctx, form)
    }

    pub fn conjugate_by_simple(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.conj_simple(s))
    }

    pub fn conjugate_by_inverse_simple(&self, s: &G::Simple) -> Result<Self> {
        self.ctx.check_simple(s)?;
        Ok(self.conj_simple_inverse(s))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        // xΔ^q = Δ^q τ^q(x)
        let q = other.inf;
        let f = self
            .factors
            .iter()
            .map(|x| self.ctx.tau_power(x, q))
            .collect();
        let mut form = LeftForm::new(&self.ctx, self.inf + q, f);
        for y in &other.factors {
            form.push(y.clone());
        }
        Self::from_form(&self.ctx, form)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> Self {
        // x⁻¹ = Δ^{-(p+r)} ∂^{-2(p+r)+1}(x_r) ⋯ ∂^{-2(p+1)+1}(x_1)
        let p = self.inf;
        let r = self.factors.len() as i64;
        let f = self
            .factors
            .iter()
            .enumerate()
            .rev()
            .map(|(i, x)| self.ctx.complement_power(x, -2 * (p + i as i64 + 1) + 1))
            .collect();
        Element {
            ctx: self.ctx.clone(),
            inf: -(p + r),
            factors: f,
            right: OnceLock::new(),
        }
    }

    pub(crate) fn conj(&self, c: &Self) -> Self {
        match c.as_simple() {
            Some(s) => self.conj_simple(&s),
            None => c.inverse().mul(self).mul(c),
        }
    }

    /// `x^c = c⁻¹xc`.
    pub fn conjugate(&self, c: &Self) -> Result<Self> {
        self.check(c)?;
        Ok(self.conj(c))
    }

    /// `τ^k(x) = Δ^{-k}xΔ^k`.
    pub fn tau_power(&self, k: i64) -> Self {
        Element {
            ctx: self.ctx.clone(),
            inf: self.inf,
            factors: self
                .factors
                .iter()
                .map(|x| self.ctx.tau_power(x, k))
                .collect(),
            right: OnceLock::new(),
        }
    }

    /// `x ≼ y`.
    pub fn is_prefix_of(&self, y: &Self) -> Result<bool> {
        self.check(y)?;
        Ok(self.inverse().mul(y).is_positive())
    }

    /// `x ≽ y`, i.e. `y` is a suffix of `x`.
    pub fn has_suffix(&self, y: &Self) -> Result<bool> {
        self.check(y)?;
        Ok(self.mul(&y.inverse()).is_positive())
    }

    fn head(&self) -> G::Simple {
        if self.inf > 0 {
            self.ctx.delta().clone()
        } else {
            self.factors
                .first()
                .cloned()
                .unwrap_or_else(|| self.ctx.one().clone())
        }
    }

    fn tail(&self) -> G::Simple {
        let rnf = self.right_normal_form();
        if rnf.power > 0 {
            self.ctx.delta().clone()
        } else {
            rnf.factors
                .last()
                .cloned()
                .unwrap_or_else(|| self.ctx.one().clone())
        }
    }

    pub(crate) fn gcd_unchecked(&self, other: &Self, side: Side) -> Self {
        let ctx = &self.ctx;
        let m = self.inf.min(other.inf);
        match side {
            Side::Left => {
                let shift = Self::delta_power(ctx, -m);
                let mut a = shift.mul(self);
                let mut b = shift.mul(other);
                let mut d = Self::delta_power(ctx, m);
                loop {
                    let u = ctx.gcd_simple(&a.head(), &b.head(), Side::Left);
                    if ctx.is_trivial_simple(&u) {
                        return d;
                    }
                    d = d.mul_simple(&u);
                    a = a.simple_inverse_mul(&u);
                    b = b.simple_inverse_mul(&u);
                }
            }
            Side::Right => {
                let shift = Self::delta_power(ctx, -m);
                let mut a = self.mul(&shift);
                let mut b = other.mul(&shift);
                let mut d = Self::delta_power(ctx, m);
                loop {
                    let u = ctx.gcd_simple(&a.tail(), &b.tail(), Side::Right);
                    if ctx.is_trivial_simple(&u) {
                        return d;
                    }
                    d = d.simple_mul(&u);
                    a = a.mul_simple_inverse(&u);
                    b = b.mul_simple_inverse(&u);
                }
            }
        }
    }

    pub(crate) fn lcm_unchecked(&self, other: &Self, side: Side) -> Self {
        let ctx = &self.ctx;
        let m = self.sup().max(other.sup());
        let dm = Self::delta_power(ctx, m);
        match side {
            Side::Left => {
                let a = self.inverse().mul(&dm);
                let b = other.inverse().mul(&dm);
                dm.mul(&a.gcd_unchecked(&b, Side::Right).inverse())
            }
            Side::Right => {
                let a = dm.mul(&self.inverse());
                let b = dm.mul(&other.inverse());
                a.gcd_unchecked(&b, Side::Left).inverse().mul(&dm)
            }
        }
    }

    /// `x ∧ y` (`Side::Left`) or `x ∧↰ y` (`Side::Right`).
    pub fn gcd(&self, other: &Self, side: Side) -> Result<Self> {
        self.check(other)?;
        Ok(self.gcd_unchecked(other, side))
    }

    /// `x ∨ y` (`Side::Left`) or `x ∨↰ y` (`Side::Right`).
    pub fn lcm(&self, other: &Self, side: Side) -> Result<Self> {
        self.check(other)?;
        Ok(self.lcm_unchecked(other, side))
    }

    /// `1 ∨ xΔ^{-q}`, read off the right normal form of `x`.
    pub fn positive_part_shortcut(&self, q: i64) -> Self {
        if q <= self.inf {
            return self.mul(&Self::delta_power(&self.ctx, -q));
        }
        if q >= self.sup() {
            return Self::identity(&self.ctx);
        }
        let r = (self.sup() - q) as usize;
        let rnf = self.right_normal_form();
        let parts: Vec<_> = rnf.factors[..r]
            .iter()
            .map(|y| Signed::Pos(y.clone()))
            .collect();
        Self::normalize(&self.ctx, 0, &parts)
    }

    /// `1 ∨ x`.
    pub fn join_identity(&self) -> Self {
        self.positive_part_shortcut(0)
    }
}

impl<G: GarsideStructure> PartialEq for Element<G> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id() == other.ctx.id()
            && self.inf == other.inf
            && self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(s, t)| self.ctx.equal_simple(s, t))
    }
}

impl<G: GarsideStructure> Eq for Element<G> {}

impl<G: GarsideStructure> Hash for Element<G> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.id().hash(state);
        self.inf.hash(state);
        for s in &self.factors {
            self.ctx.hash_simple(s).hash(state);
        }
    }
}

impl<G: GarsideStructure> fmt::Debug for Element<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.inf)?;
        for s in &self.factors {
            write!(f, " ·")?;
            for a in self.ctx.atom_word(s) {
                write!(f, " {}", self.ctx.atom_name(a))?;
            }
        }
        Ok(())
    }
}

impl<G: GarsideStructure> std::ops::Mul for &Element<G> {
    type Output = Element<G>;

    fn mul(self, rhs: Self) -> Element<G> {
        self.multiply(rhs).expect("elements from the same context")
    }
}

/// Checks that a sequence of factors is a valid left normal form body.
pub fn is_left_weighted<G: GarsideStructure>(ctx: &GarsideContext<G>, f: &[G::Simple]) -> bool {
    f.iter()
        .all(|s| !ctx.is_delta(s) && !ctx.is_trivial_simple(s))
        && f.windows(2).all(|w| {
            ctx.is_trivial_simple(&ctx.gcd_simple(&ctx.right_complement(&w[0]), &w[1], Side::Left))
        })
}

/// Checks that a sequence of factors is a valid right normal form body.
pub fn is_right_weighted<G: GarsideStructure>(ctx: &GarsideContext<G>, f: &[G::Simple]) -> bool {
    f.iter()
        .all(|s| !ctx.is_delta(s) && !ctx.is_trivial_simple(s))
        && f.windows(2).all(|w| {
            ctx.is_trivial_simple(&ctx.gcd_simple(&w[0], &ctx.left_complement(&w[1]), Side::Right))
        })
}

impl<G: GarsideStructure> Element<G> {
    /// Builds an element from a claimed left normal form, validating it.
    pub fn from_left_normal_form(
        ctx: &Arc<GarsideContext<G>>,
        power: i64,
        factors: Vec<G::Simple>,
    ) -> Result<Self> {
        for s in &factors {
            ctx.check_simple(s)?;
        }
        if !is_left_weighted(ctx, &factors) {
            return Err(GarsideError::Precondition(
                "factors are not a left normal form".into(),
            ));
        }
        Ok(Element {
            ctx: ctx.clone(),
            inf: power,
            factors,
            right: OnceLock::new(),
        })
    }
}
