//! The interface a concrete Garside structure of finite type has to provide.
//!
//! A structure only needs to list its atoms, produce `1` and `Δ`, divide a
//! simple element by an atom on either side and hash simple elements. Every
//! other operation in this crate is derived from those primitives through a
//! [`GarsideContext`], which also counts primitive calls so that algorithms can
//! be measured in units of the basic operation cost.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{GarsideError, Result};

/// Which lattice order an operation refers to: prefixes (`≼`) or suffixes (`≽`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An atom, identified by its 1-based index in the context's atom list.
///
/// The index order is the tie-breaking order used when scanning atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(usize);

impl Atom {
    /// Creates an atom handle. `index` is 1-based.
    pub const fn new(index: usize) -> Self {
        Atom(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// Primitive operations of a Garside structure of finite type.
///
/// Implementations must be pure: the same inputs always produce the same
/// outputs, and `Simple` values are canonical (equal group elements have equal
/// payloads and equal hashes).
pub trait GarsideStructure: Send + Sync {
    type Simple: Clone + fmt::Debug + Send + Sync;

    /// Number of atoms, written λ.
    fn atom_count(&self) -> usize;

    fn atom_name(&self, atom: Atom) -> String {
        atom.to_string()
    }

    /// The atom as a simple element.
    fn atom_simple(&self, atom: Atom) -> Self::Simple;

    fn identity(&self) -> Self::Simple;

    fn delta(&self) -> Self::Simple;

    /// `a⁻¹s` if `a ≼ s`.
    fn divide_left(&self, atom: Atom, s: &Self::Simple) -> Option<Self::Simple>;

    /// `s·a⁻¹` if `s ≽ a`.
    fn divide_right(&self, s: &Self::Simple, atom: Atom) -> Option<Self::Simple>;

    fn hash_simple(&self, s: &Self::Simple) -> u64;

    /// Whether `s` is a well-formed simple element of this structure.
    fn owns(&self, _s: &Self::Simple) -> bool {
        true
    }

    /// Number of simple elements, when cheaply known.
    fn simple_count_hint(&self) -> Option<u64> {
        None
    }

    /// Optional fast equality. `None` selects the generic atom-stripping test.
    fn equal_fast(&self, _s: &Self::Simple, _t: &Self::Simple) -> Option<bool> {
        None
    }

    /// Optional fast `s·a` (`side = Right`) or `a·s` (`side = Left`).
    ///
    /// The outer `None` means "not provided"; `Some(None)` means the product
    /// is not simple.
    fn mul_atom_fast(
        &self,
        _s: &Self::Simple,
        _atom: Atom,
        _side: Side,
    ) -> Option<Option<Self::Simple>> {
        None
    }

    /// Optional fast complement: `∂(s)` for `Side::Right`, `∂⁻¹(s)` for `Side::Left`.
    fn complement_fast(&self, _s: &Self::Simple, _side: Side) -> Option<Self::Simple> {
        None
    }
}

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A Garside structure together with its derived metadata.
///
/// Immutable after construction apart from the primitive-call counter, which
/// is an atomic and only used for instrumentation.
pub struct GarsideContext<G: GarsideStructure> {
    structure: G,
    id: u64,
    atoms: Vec<Atom>,
    names: Vec<String>,
    one: G::Simple,
    delta: G::Simple,
    delta_length: usize,
    tau_order: usize,
    calls: AtomicU64,
}

impl<G: GarsideStructure> fmt::Debug for GarsideContext<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GarsideContext")
            .field("id", &self.id)
            .field("atoms", &self.names)
            .field("delta_length", &self.delta_length)
            .finish()
    }
}

const MAX_DELTA_LENGTH: usize = 1 << 20;

impl<G: GarsideStructure> GarsideContext<G> {
    /// Wraps a structure, computing `‖Δ‖` by repeated atom stripping and the
    /// order of `τ` on the atoms.
    pub fn new(structure: G) -> Result<Arc<Self>> {
        let lambda = structure.atom_count();
        if lambda == 0 {
            return Err(GarsideError::InvalidStructure("no atoms".into()));
        }
        let atoms: Vec<Atom> = (1..=lambda).map(Atom::new).collect();
        let names = atoms.iter().map(|&a| structure.atom_name(a)).collect();
        let one = structure.identity();
        let delta = structure.delta();
        let mut ctx = GarsideContext {
            structure,
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            atoms,
            names,
            one,
            delta,
            delta_length: 0,
            tau_order: 1,
            calls: AtomicU64::new(0),
        };

        let mut rest = ctx.delta.clone();
        let mut length = 0;
        while let Some((_, q)) = ctx.first_left_atom(&rest) {
            rest = q;
            length += 1;
            if length > MAX_DELTA_LENGTH {
                return Err(GarsideError::InvalidStructure(
                    "atom stripping of Δ does not terminate".into(),
                ));
            }
        }
        if length == 0 {
            return Err(GarsideError::InvalidStructure("Δ is trivial".into()));
        }
        ctx.delta_length = length;

        // τ permutes the atoms, so its order on them is its order on [1,Δ].
        let images: Vec<G::Simple> = ctx.atoms.iter().map(|&a| ctx.atom(a)).collect();
        let mut current = images.clone();
        let mut order = 1;
        loop {
            current = current.iter().map(|s| ctx.tau(s)).collect();
            if current
                .iter()
                .zip(&images)
                .all(|(s, t)| ctx.equal_simple(s, t))
            {
                break;
            }
            order += 1;
            if order > lambda.max(2) * 2 {
                return Err(GarsideError::InvalidStructure(
                    "conjugation by Δ does not permute the atoms".into(),
                ));
            }
        }
        ctx.tau_order = order;
        ctx.calls.store(0, Ordering::Relaxed);
        Ok(Arc::new(ctx))
    }

    pub fn structure(&self) -> &G {
        &self.structure
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// The atoms in index order.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_name(&self, atom: Atom) -> &str {
        &self.names[atom.index() - 1]
    }

    /// λ, the number of atoms.
    pub fn rank(&self) -> usize {
        self.atoms.len()
    }

    pub fn one(&self) -> &G::Simple {
        &self.one
    }

    pub fn delta(&self) -> &G::Simple {
        &self.delta
    }

    /// `‖Δ‖`, the number of atoms in any decomposition of Δ.
    pub fn delta_length(&self) -> usize {
        self.delta_length
    }

    /// Order of the automorphism `τ` (conjugation by Δ) on simple elements.
    pub fn tau_order(&self) -> usize {
        self.tau_order
    }

    pub fn atom(&self, atom: Atom) -> G::Simple {
        self.structure.atom_simple(atom)
    }

    /// Number of primitive calls made so far through this context.
    pub fn contract_calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_contract_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    #[inline]
    pub(crate) fn count(&self) {
        self.calls.fetch_add(1, Ordering::Relaxed);
    }

    fn check_atom(&self, atom: Atom) -> Result<()> {
        if atom.index() == 0 || atom.index() > self.rank() {
            return Err(GarsideError::AtomOutOfRange {
                index: atom.index(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn check_simple(&self, s: &G::Simple) -> Result<()> {
        if self.structure.owns(s) {
            Ok(())
        } else {
            Err(GarsideError::ContextMismatch)
        }
    }

    /// `a⁻¹s` when `a ≼ s`, checking that both values belong to this context.
    pub fn divide_by_atom_left(&self, atom: Atom, s: &G::Simple) -> Result<Option<G::Simple>> {
        self.check_atom(atom)?;
        self.check_simple(s)?;
        Ok(self.div_left(atom, s))
    }

    /// `s·a⁻¹` when `s ≽ a`, checking that both values belong to this context.
    pub fn divide_by_atom_right(&self, s: &G::Simple, atom: Atom) -> Result<Option<G::Simple>> {
        self.check_atom(atom)?;
        self.check_simple(s)?;
        Ok(self.div_right(s, atom))
    }

    pub fn hash_simple(&self, s: &G::Simple) -> u64 {
        self.count();
        self.structure.hash_simple(s)
    }

    #[inline]
    pub(crate) fn div_left(&self, atom: Atom, s: &G::Simple) -> Option<G::Simple> {
        self.count();
        self.structure.divide_left(atom, s)
    }

    #[inline]
    pub(crate) fn div_right(&self, s: &G::Simple, atom: Atom) -> Option<G::Simple> {
        self.count();
        self.structure.divide_right(s, atom)
    }

    pub(crate) fn same_context(&self, other: &Self) -> Result<()> {
        if self.id == other.id {
            Ok(())
        } else {
            Err(GarsideError::ContextMismatch)
        }
    }
}
