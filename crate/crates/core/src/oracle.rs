//! Brute-force reference computations over the full set of simple elements.
//!
//! Everything here is exhaustive and slow, and only meant for small
//! structures. Enumeration is refused above a size limit.

use std::collections::HashMap;

use crate::contract::{GarsideContext, GarsideStructure, Side};
use crate::element::Element;
use crate::error::{GarsideError, Result};
use crate::sliding::{slide_to_first_repetition, transport, within_bounds};

/// Default cap on the number of simple elements enumerated (`|[1,Δ]|` of `B_6`).
pub const DEFAULT_SIMPLE_LIMIT: u64 = 720;

/// All simple elements, by closure of `{1}` under right multiplication by atoms.
pub fn enumerate_simples<G: GarsideStructure>(
    ctx: &GarsideContext<G>,
    limit: u64,
) -> Result<Vec<G::Simple>> {
    if let Some(count) = ctx.structure().simple_count_hint() {
        if count > limit {
            return Err(GarsideError::NotEnumerable(format!(
                "{count} simple elements exceed the limit of {limit}"
            )));
        }
    }
    let mut found: Vec<G::Simple> = vec![ctx.one().clone()];
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    buckets.insert(ctx.hash_simple(ctx.one()), vec![0]);
    let mut next = 0;
    while next < found.len() {
        let s = found[next].clone();
        next += 1;
        for &a in ctx.atoms() {
            let Some(t) = ctx.mul_atom_if_simple(&s, a, Side::Right) else {
                continue;
            };
            let h = ctx.hash_simple(&t);
            let bucket = buckets.entry(h).or_default();
            if bucket.iter().any(|&i| ctx.equal_simple(&found[i], &t)) {
                continue;
            }
            bucket.push(found.len());
            found.push(t);
            if found.len() as u64 > limit {
                return Err(GarsideError::NotEnumerable(format!(
                    "more than {limit} simple elements"
                )));
            }
        }
    }
    Ok(found)
}

/// `s ≼ t` (`Side::Left`) or `t ≽ s` (`Side::Right`), by stripping an atom
/// word of `s` from `t` one atom at a time.
pub fn divides<G: GarsideStructure>(
    ctx: &GarsideContext<G>,
    s: &G::Simple,
    t: &G::Simple,
    side: Side,
) -> bool {
    let mut rest = t.clone();
    match side {
        Side::Left => {
            for a in ctx.atom_word(s) {
                match ctx.divide_by_atom_left(a, &rest) {
                    Ok(Some(q)) => rest = q,
                    _ => return false,
                }
            }
        }
        Side::Right => {
            let mut word = Vec::new();
            let mut s = s.clone();
            while let Some((a, q)) = ctx.first_right_atom(&s) {
                word.push(a);
                s = q;
            }
            for a in word {
                match ctx.divide_by_atom_right(&rest, a) {
                    Ok(Some(q)) => rest = q,
                    _ => return false,
                }
            }
        }
    }
    true
}

fn extremal<G: GarsideStructure>(
    ctx: &GarsideContext<G>,
    candidates: Vec<G::Simple>,
    side: Side,
    greatest: bool,
) -> Result<G::Simple> {
    let best = if greatest {
        candidates.iter().max_by_key(|c| ctx.atom_length(c))
    } else {
        candidates.iter().min_by_key(|c| ctx.atom_length(c))
    }
    .cloned()
    .ok_or_else(|| GarsideError::InternalInvariant("empty candidate set".into()))?;
    let ok = candidates.iter().all(|c| {
        if greatest {
            divides(ctx, c, &best, side)
        } else {
            divides(ctx, &best, c, side)
        }
    });
    if ok {
        Ok(best)
    } else {
        Err(GarsideError::InternalInvariant(
            "candidate set has no extremal element".into(),
        ))
    }
}

/// `s ∧ t` or `s ∧↰ t`: the greatest common divisor found among all simples.
pub fn gcd_simple<G: GarsideStructure>(
    ctx: &GarsideContext<G>,
    simples: &[G::Simple],
    s: &G::Simple,
    t: &G::Simple,
    side: Side,
) -> Result<G::Simple> {
    let common: Vec<_> = simples
        .iter()
        .filter(|u| divides(ctx, u, s, side) && divides(ctx, u, t, side))
        .cloned()
        .collect();
    extremal(ctx, common, side, true)
}

/// `s ∨ t` or `s ∨↰ t`: the least common multiple found among all simples.
pub fn lcm_simple<G: GarsideStructure>(
    ctx: &GarsideContext<G>,
    simples: &[G::Simple],
    s: &G::Simple,
    t: &G::Simple,
    side: Side,
) -> Result<G::Simple> {
    let common: Vec<_> = simples
        .iter()
        .filter(|u| divides(ctx, s, u, side) && divides(ctx, t, u, side))
        .cloned()
        .collect();
    extremal(ctx, common, side, false)
}

/// Membership in the set of sliding circuits: iterated sliding returns to `v`.
pub fn in_sliding_circuit<G: GarsideStructure>(v: &Element<G>) -> bool {
    slide_to_first_repetition(v).entry_index() == 0
}

/// The `≼`-minimal simple `ρ` with `inf(x^ρ) ≥ inf` and `sup(x^ρ) ≤ sup`.
pub fn minimal_simple_conjugator<G: GarsideStructure>(
    simples: &[G::Simple],
    x: &Element<G>,
    inf: i64,
    sup: i64,
) -> Result<G::Simple> {
    let ctx = x.context();
    let good: Vec<_> = simples
        .iter()
        .filter(|s| within_bounds(&x.conjugate_by_simple(s).expect("same context"), inf, sup))
        .cloned()
        .collect();
    if good.is_empty() {
        return Err(GarsideError::NotEnumerable(
            "no simple conjugator reaches the targets".into(),
        ));
    }
    extremal(ctx, good, Side::Left, false)
}

/// The pullback of `s` at `𝔰(z)` by exhaustive search: the `≼`-minimal simple
/// `u` with `z^u` super summit and `s ≼ u⁽¹⁾`.
pub fn pullback<G: GarsideStructure>(
    simples: &[G::Simple],
    z: &Element<G>,
    s: &Element<G>,
) -> Result<G::Simple> {
    let ctx = z.context();
    let good: Vec<_> = simples
        .iter()
        .filter(|u| {
            let ue = Element::from_simple(ctx, u);
            let zu = z.conjugate_by_simple(u).expect("same context");
            within_bounds(&zu, z.inf(), z.sup())
                && s.is_prefix_of(&transport(z, &ue).expect("same context"))
                    .expect("same context")
        })
        .cloned()
        .collect();
    if good.is_empty() {
        return Err(GarsideError::NotEnumerable("pullback is not simple".into()));
    }
    extremal(ctx, good, Side::Left, false)
}

/// Indecomposable conjugators at `v ∈ SC(x)`: nontrivial simples `s` with
/// `v^s ∈ SC(x)` and no proper nontrivial prefix doing the same.
pub fn arrows<G: GarsideStructure>(simples: &[G::Simple], v: &Element<G>) -> Vec<G::Simple> {
    let ctx = v.context();
    let good: Vec<_> = simples
        .iter()
        .filter(|s| !ctx.is_trivial_simple(s))
        .filter(|s| in_sliding_circuit(&v.conjugate_by_simple(s).expect("same context")))
        .cloned()
        .collect();
    good.iter()
        .filter(|s| {
            !good
                .iter()
                .any(|t| divides(ctx, t, s, Side::Left) && !divides(ctx, s, t, Side::Left))
        })
        .cloned()
        .collect()
}
