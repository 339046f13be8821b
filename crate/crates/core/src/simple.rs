//! Derived operations on simple elements, built from atom division alone.
//!
//! Whenever an atom dividing a simple element is needed, atoms are scanned in
//! index order and the first divisor is taken. The gcd-style loops restart the
//! scan at the first atom after every successful strip.

use crate::contract::{Atom, GarsideContext, GarsideStructure, Side};

impl<G: GarsideStructure> GarsideContext<G> {
    /// First atom (in index order) left-dividing `s`, with the quotient.
    pub fn first_left_atom(&self, s: &G::Simple) -> Option<(Atom, G::Simple)> {
        self.atoms()
            .iter()
            .find_map(|&a| self.div_left(a, s).map(|q| (a, q)))
    }

    /// First atom (in index order) right-dividing `s`, with the quotient.
    pub fn first_right_atom(&self, s: &G::Simple) -> Option<(Atom, G::Simple)> {
        self.atoms()
            .iter()
            .find_map(|&a| self.div_right(s, a).map(|q| (a, q)))
    }

    pub fn first_atom(&self, s: &G::Simple, side: Side) -> Option<(Atom, G::Simple)> {
        match side {
            Side::Left => self.first_left_atom(s),
            Side::Right => self.first_right_atom(s),
        }
    }

    /// `s = 1`, tested as "no atom left-divides `s`".
    pub fn is_trivial_simple(&self, s: &G::Simple) -> bool {
        !self.atoms().iter().any(|&a| self.div_left(a, s).is_some())
    }

    /// `∂(s) = s⁻¹Δ`.
    pub fn right_complement(&self, s: &G::Simple) -> G::Simple {
        if let Some(c) = self.structure().complement_fast(s, Side::Right) {
            self.count();
            return c;
        }
        let mut d = self.delta().clone();
        let mut s = s.clone();
        while let Some((a, q)) = self.first_left_atom(&s) {
            d = self
                .div_left(a, &d)
                .expect("an atom of s divides s⁻¹Δ after stripping");
            s = q;
        }
        d
    }

    /// `∂⁻¹(s) = Δs⁻¹`.
    pub fn left_complement(&self, s: &G::Simple) -> G::Simple {
        if let Some(c) = self.structure().complement_fast(s, Side::Left) {
            self.count();
            return c;
        }
        let mut d = self.delta().clone();
        let mut s = s.clone();
        while let Some((a, q)) = self.first_right_atom(&s) {
            d = self
                .div_right(&d, a)
                .expect("an atom of s divides Δs⁻¹ after stripping");
            s = q;
        }
        d
    }

    /// `∂^k(s)` for any integer `k`.
    pub fn complement_power(&self, s: &G::Simple, k: i64) -> G::Simple {
        // ∂^(2m) = τ^m and ∂^(2m+1) = τ^m ∘ ∂
        let m = k.div_euclid(2);
        if k.rem_euclid(2) == 0 {
            self.tau_power(s, m)
        } else {
            self.tau_power(&self.right_complement(s), m)
        }
    }

    /// `τ(s) = Δ⁻¹sΔ = ∂²(s)`.
    pub fn tau(&self, s: &G::Simple) -> G::Simple {
        self.right_complement(&self.right_complement(s))
    }

    /// `τ⁻¹(s) = ∂⁻²(s)`.
    pub fn tau_inverse(&self, s: &G::Simple) -> G::Simple {
        self.left_complement(&self.left_complement(s))
    }

    /// `τ^k(s) = Δ^{-k} s Δ^k`.
    pub fn tau_power(&self, s: &G::Simple, k: i64) -> G::Simple {
        let order = self.tau_order() as i64;
        let k = k.rem_euclid(order);
        if k == 0 {
            return s.clone();
        }
        // go the short way round
        if 2 * k <= order {
            (0..k).fold(s.clone(), |acc, _| self.tau(&acc))
        } else {
            (0..order - k).fold(s.clone(), |acc, _| self.tau_inverse(&acc))
        }
    }

    /// Equality of simple elements, using the structure's fast path when present.
    pub fn equal_simple(&self, s: &G::Simple, t: &G::Simple) -> bool {
        if let Some(eq) = self.structure().equal_fast(s, t) {
            self.count();
            return eq;
        }
        self.equal_simple_generic(s, t)
    }

    /// Equality by stripping common left atoms until none is left.
    pub fn equal_simple_generic(&self, s: &G::Simple, t: &G::Simple) -> bool {
        let (s, t) = self.strip_common(s.clone(), t.clone(), Side::Left, |_| {});
        self.is_trivial_simple(&s) && self.is_trivial_simple(&t)
    }

    /// Strips atoms dividing both `s` and `t` on `side`, restarting the atom
    /// scan after each strip. `on_strip` sees every stripped atom.
    fn strip_common(
        &self,
        mut s: G::Simple,
        mut t: G::Simple,
        side: Side,
        mut on_strip: impl FnMut(Atom),
    ) -> (G::Simple, G::Simple) {
        let atoms = self.atoms();
        let mut i = 0;
        while i < atoms.len() {
            let a = atoms[i];
            let divide = |x: &G::Simple| match side {
                Side::Left => self.div_left(a, x),
                Side::Right => self.div_right(x, a),
            };
            match divide(&s).zip(divide(&t)) {
                Some((qs, qt)) => {
                    s = qs;
                    t = qt;
                    on_strip(a);
                    i = 0;
                }
                None => i += 1,
            }
        }
        (s, t)
    }

    /// `s ∧ t` (`Side::Left`) or `s ∧↰ t` (`Side::Right`).
    pub fn gcd_simple(&self, s: &G::Simple, t: &G::Simple, side: Side) -> G::Simple {
        let mut d = self.delta().clone();
        match side {
            Side::Left => {
                self.strip_common(s.clone(), t.clone(), Side::Left, |a| {
                    d = self.div_left(a, &d).expect("common prefix divides Δ");
                });
                self.left_complement(&d)
            }
            Side::Right => {
                self.strip_common(s.clone(), t.clone(), Side::Right, |a| {
                    d = self.div_right(&d, a).expect("common suffix divides Δ");
                });
                self.right_complement(&d)
            }
        }
    }

    /// `s ∨ t = ∂⁻¹(∂s ∧↰ ∂t)` or `s ∨↰ t = ∂(∂⁻¹s ∧ ∂⁻¹t)`.
    pub fn lcm_simple(&self, s: &G::Simple, t: &G::Simple, side: Side) -> G::Simple {
        match side {
            Side::Left => self.left_complement(&self.gcd_simple(
                &self.right_complement(s),
                &self.right_complement(t),
                Side::Right,
            )),
            Side::Right => self.right_complement(&self.gcd_simple(
                &self.left_complement(s),
                &self.left_complement(t),
                Side::Left,
            )),
        }
    }

    /// `s ≼ t` (`Side::Left`) or `t ≽ s` (`Side::Right`).
    pub fn divides_simple(&self, s: &G::Simple, t: &G::Simple, side: Side) -> bool {
        self.equal_simple(&self.gcd_simple(s, t, side), s)
    }

    /// Local sliding of the pair `s·t`.
    ///
    /// Left: `(s·u, u⁻¹·t)` with `u = ∂(s) ∧ t`, a left-weighted pair.
    /// Right: `(s·u⁻¹, u·t)` with `u = s ∧↰ ∂⁻¹(t)`, a right-weighted pair.
    pub fn local_sliding(
        &self,
        s: &G::Simple,
        t: &G::Simple,
        side: Side,
    ) -> (G::Simple, G::Simple) {
        match side {
            Side::Left => {
                let (rest, t) =
                    self.strip_common(self.right_complement(s), t.clone(), Side::Left, |_| {});
                (self.left_complement(&rest), t)
            }
            Side::Right => {
                let (s, rest) =
                    self.strip_common(s.clone(), self.left_complement(t), Side::Right, |_| {});
                (s, self.right_complement(&rest))
            }
        }
    }

    /// Like [`local_sliding`](Self::local_sliding), but reports whether
    /// anything moved across the pair boundary.
    pub(crate) fn local_sliding_changed(
        &self,
        s: &G::Simple,
        t: &G::Simple,
        side: Side,
    ) -> Option<(G::Simple, G::Simple)> {
        let mut moved = false;
        let out = match side {
            Side::Left => {
                let (rest, t) =
                    self.strip_common(self.right_complement(s), t.clone(), Side::Left, |_| {
                        moved = true
                    });
                if !moved {
                    return None;
                }
                (self.left_complement(&rest), t)
            }
            Side::Right => {
                let (s, rest) =
                    self.strip_common(s.clone(), self.left_complement(t), Side::Right, |_| {
                        moved = true
                    });
                if !moved {
                    return None;
                }
                (s, self.right_complement(&rest))
            }
        };
        Some(out)
    }

    /// `s·a` (`Side::Right`) or `a·s` (`Side::Left`) when the product is simple.
    pub fn mul_atom_if_simple(&self, s: &G::Simple, atom: Atom, side: Side) -> Option<G::Simple> {
        if let Some(r) = self.structure().mul_atom_fast(s, atom, side) {
            self.count();
            return r;
        }
        match side {
            Side::Right => {
                let c = self.right_complement(s);
                let q = self.div_left(atom, &c)?;
                Some(self.left_complement(&q))
            }
            Side::Left => {
                let c = self.left_complement(s);
                let q = self.div_right(&c, atom)?;
                Some(self.right_complement(&q))
            }
        }
    }

    /// `‖s‖`, the number of atoms in any decomposition of `s`.
    pub fn atom_length(&self, s: &G::Simple) -> usize {
        let mut s = s.clone();
        let mut n = 0;
        while let Some((_, q)) = self.first_left_atom(&s) {
            s = q;
            n += 1;
        }
        n
    }

    /// Atoms of `s` read off by repeated left stripping, first divisor first.
    pub fn atom_word(&self, s: &G::Simple) -> Vec<Atom> {
        let mut s = s.clone();
        let mut word = Vec::new();
        while let Some((a, q)) = self.first_left_atom(&s) {
            word.push(a);
            s = q;
        }
        word
    }

    pub fn is_delta(&self, s: &G::Simple) -> bool {
        self.equal_simple(s, self.delta())
    }
}
