//! Preferred prefixes and suffixes, cyclic sliding, transport and pullback.

use crate::contract::{GarsideStructure, Side};
use crate::element::Element;
use crate::error::{GarsideError, Result};
use crate::FixedHashMap;

/// `𝔭(x) = ι(x) ∧ ∂(φ(x))`.
pub fn preferred_prefix<G: GarsideStructure>(x: &Element<G>) -> G::Simple {
    let ctx = x.context();
    ctx.gcd_simple(
        &x.initial_factor(),
        &ctx.right_complement(&x.final_factor()),
        Side::Left,
    )
}

/// `𝔭↰(x) = ι↰(x) ∧↰ ∂⁻¹(φ↰(x))`.
pub fn preferred_suffix<G: GarsideStructure>(x: &Element<G>) -> G::Simple {
    let ctx = x.context();
    ctx.gcd_simple(
        &x.right_initial_factor(),
        &ctx.left_complement(&x.right_final_factor()),
        Side::Right,
    )
}

/// `𝔰(x) = 𝔭(x)⁻¹ x 𝔭(x)`.
pub fn cyclic_sliding<G: GarsideStructure>(x: &Element<G>) -> Element<G> {
    x.conj_simple(&preferred_prefix(x))
}

/// `𝔰↰(x) = 𝔭↰(x) x 𝔭↰(x)⁻¹`.
pub fn cyclic_right_sliding<G: GarsideStructure>(x: &Element<G>) -> Element<G> {
    x.conj_simple_inverse(&preferred_suffix(x))
}

pub fn is_rigid<G: GarsideStructure>(x: &Element<G>) -> bool {
    x.context().is_trivial_simple(&preferred_prefix(x))
}

/// Whether `x` has the given infimum and supremum bounds.
pub fn within_bounds<G: GarsideStructure>(x: &Element<G>, inf: i64, sup: i64) -> bool {
    x.inf() >= inf && x.sup() <= sup
}

pub(crate) fn transport_unchecked<G: GarsideStructure>(
    x: &Element<G>,
    alpha: &Element<G>,
) -> Element<G> {
    transport_with(x, &preferred_prefix(x), alpha)
}

/// Transport when `𝔭(x)` is already known.
pub(crate) fn transport_with<G: GarsideStructure>(
    x: &Element<G>,
    px: &G::Simple,
    alpha: &Element<G>,
) -> Element<G> {
    let moved = x.conj(alpha);
    alpha
        .simple_inverse_mul(px)
        .mul_simple(&preferred_prefix(&moved))
}

/// `α⁽¹⁾ = 𝔭(x)⁻¹ α 𝔭(x^α)`, the conjugator from `𝔰(x)` to `𝔰(x^α)`.
pub fn transport<G: GarsideStructure>(x: &Element<G>, alpha: &Element<G>) -> Result<Element<G>> {
    x.context().same_context(alpha.context())?;
    Ok(transport_unchecked(x, alpha))
}

/// `α↰⁽¹⁾ = 𝔭↰(x^{α⁻¹}) α 𝔭↰(x)⁻¹`, the conjugator from `𝔰↰(x^{α⁻¹})` to `𝔰↰(x)`.
pub fn right_transport<G: GarsideStructure>(
    x: &Element<G>,
    alpha: &Element<G>,
) -> Result<Element<G>> {
    x.context().same_context(alpha.context())?;
    let back = x.conj(&alpha.inverse());
    Ok(alpha
        .simple_mul(&preferred_suffix(&back))
        .mul_simple_inverse(&preferred_suffix(x)))
}

pub(crate) fn pullback_unchecked<G: GarsideStructure>(
    pz: &G::Simple,
    y: &Element<G>,
    s: &Element<G>,
) -> Element<G> {
    let ys = y.conj(s);
    s.simple_mul(pz)
        .mul_simple_inverse(&preferred_suffix(&ys))
        .join_identity()
}

fn check_pullback<G: GarsideStructure>(
    z: &Element<G>,
    y: &Element<G>,
    s: &Element<G>,
) -> Result<()> {
    if cyclic_sliding(z) != *y {
        return Err(GarsideError::Precondition(
            "pullback: y is not the cyclic sliding of z".into(),
        ));
    }
    if !s.is_positive() {
        return Err(GarsideError::Precondition(
            "pullback: s is not positive".into(),
        ));
    }
    // y lies in a sliding circuit, hence in the super summit set
    if !within_bounds(&y.conj(s), y.inf(), y.sup()) {
        return Err(GarsideError::Precondition(
            "pullback: y^s is not super summit".into(),
        ));
    }
    Ok(())
}

/// The pullback `s₍₁₎ = (𝔭(z) s 𝔭↰(y^s)⁻¹) ∨ 1` of `s` at `y = 𝔰(z)`.
///
/// Preconditions are validated in debug builds only; see
/// [`pullback_step_checked`] for the always-validating form.
pub fn pullback_step<G: GarsideStructure>(
    z: &Element<G>,
    y: &Element<G>,
    s: &Element<G>,
) -> Result<Element<G>> {
    z.context().same_context(y.context())?;
    z.context().same_context(s.context())?;
    if cfg!(debug_assertions) {
        check_pullback(z, y, s)?;
    }
    Ok(pullback_unchecked(&preferred_prefix(z), y, s))
}

pub fn pullback_step_checked<G: GarsideStructure>(
    z: &Element<G>,
    y: &Element<G>,
    s: &Element<G>,
) -> Result<Element<G>> {
    z.context().same_context(y.context())?;
    z.context().same_context(s.context())?;
    check_pullback(z, y, s)?;
    Ok(pullback_unchecked(&preferred_prefix(z), y, s))
}

/// The `≼`-minimal positive `ρ` with `inf(x^ρ) ≥ inf_target` and
/// `sup(x^ρ) ≤ sup_target`.
///
/// `max_iterations` guards the loop; exceeding it is an internal invariant
/// violation, since callers only pass a bound they can prove.
pub fn minimal_sss_conjugator<G: GarsideStructure>(
    x: &Element<G>,
    inf_target: i64,
    sup_target: i64,
    max_iterations: Option<usize>,
) -> Result<Element<G>> {
    let mut rho = Element::identity(x.context());
    let mut xr = x.clone();
    let mut iterations = 0;
    while !within_bounds(&xr, inf_target, sup_target) {
        iterations += 1;
        if max_iterations.is_some_and(|m| iterations > m) {
            return Err(GarsideError::InternalInvariant(format!(
                "minimal super summit conjugator exceeded {} iterations",
                max_iterations.unwrap_or_default()
            )));
        }
        // 1 ∨ (x^ρ)⁻¹Δ^inf ∨ x^ρΔ^{-sup}
        let a = xr.inverse().positive_part_shortcut(-inf_target);
        let b = xr.positive_part_shortcut(sup_target);
        let step = a.lcm_unchecked(&b, Side::Left);
        if step.is_identity() {
            return Err(GarsideError::InternalInvariant(
                "super summit targets are unreachable".into(),
            ));
        }
        rho = rho.mul(&step);
        xr = x.conj(&rho);
    }
    Ok(rho)
}

/// The orbit of an element under cyclic sliding up to its first repetition.
#[derive(Clone, Debug)]
pub struct Trajectory<G: GarsideStructure> {
    elements: Vec<Element<G>>,
    prefixes: Vec<G::Simple>,
    entry: usize,
}

impl<G: GarsideStructure> Trajectory<G> {
    /// `𝔰⁰(x), …, 𝔰^{j-1}(x)`, all distinct.
    pub fn elements(&self) -> &[Element<G>] {
        &self.elements
    }

    /// `𝔭(𝔰^k(x))` for each listed element.
    pub fn prefixes(&self) -> &[G::Simple] {
        &self.prefixes
    }

    /// The index `i` with `𝔰^j(x) = 𝔰^i(x)`; `T` in the instrumentation.
    pub fn entry_index(&self) -> usize {
        self.entry
    }

    /// `j - i`, the length of the sliding circuit reached.
    pub fn period(&self) -> usize {
        self.elements.len() - self.entry
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The first element lying in a sliding circuit.
    pub fn entry(&self) -> &Element<G> {
        &self.elements[self.entry]
    }
}

/// Applies cyclic sliding until an element repeats.
pub fn slide_to_first_repetition<G: GarsideStructure>(x: &Element<G>) -> Trajectory<G> {
    let mut seen: FixedHashMap<Element<G>, usize> = FixedHashMap::default();
    let mut elements = Vec::new();
    let mut prefixes = Vec::new();
    let mut current = x.clone();
    loop {
        if let Some(&entry) = seen.get(&current) {
            return Trajectory {
                elements,
                prefixes,
                entry,
            };
        }
        seen.insert(current.clone(), elements.len());
        let p = preferred_prefix(&current);
        let next = current.conj_simple(&p);
        elements.push(current);
        prefixes.push(p);
        current = next;
    }
}
