mod common;

use std::collections::{HashSet, VecDeque};

use common::b;
use garside::braid::{element_from_word, random_simple, BraidGroup, BraidWord, Permutation};
use garside::oracle::{self, enumerate_simples};
use garside::sliding::{
    cyclic_right_sliding, cyclic_sliding, minimal_sss_conjugator, preferred_prefix,
    preferred_suffix, pullback_step, pullback_step_checked, right_transport,
    slide_to_first_repetition, transport, within_bounds,
};
use garside::{Element, Side};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = Element<BraidGroup>;

fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..n as i64, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(i, p)| if p { i } else { -i }).collect())
}

fn elem(ctx: &common::Ctx, letters: &[i64]) -> E {
    element_from_word(
        ctx,
        &BraidWord {
            delta_power: 0,
            letters: letters.to_vec(),
        },
    )
    .unwrap()
}

fn simple_elem(ctx: &common::Ctx, s: &Permutation) -> E {
    Element::from_simple(ctx, s)
}

/// An element of a sliding circuit conjugate to `x`.
fn summit(x: &E) -> E {
    slide_to_first_repetition(x).entry().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sliding_never_widens(w in word_strategy(5, 20)) {
        let ctx = b(5);
        let x = elem(&ctx, &w);
        let s = cyclic_sliding(&x);
        prop_assert!(s.inf() >= x.inf() && s.sup() <= x.sup());
        let r = cyclic_right_sliding(&x);
        prop_assert!(r.inf() >= x.inf() && r.sup() <= x.sup());
        prop_assert_eq!(s, x.conjugate_by_simple(&preferred_prefix(&x)).unwrap());
        prop_assert_eq!(r, x.conjugate_by_inverse_simple(&preferred_suffix(&x)).unwrap());
    }

    #[test]
    fn sliding_commutes_with_tau(w in word_strategy(5, 20)) {
        let ctx = b(5);
        let x = elem(&ctx, &w);
        prop_assert_eq!(cyclic_sliding(&x.tau_power(1)), cyclic_sliding(&x).tau_power(1));
        prop_assert_eq!(cyclic_right_sliding(&x.tau_power(1)), cyclic_right_sliding(&x).tau_power(1));
    }

    #[test]
    fn transport_diagram_commutes(w in word_strategy(4, 16), a in word_strategy(4, 8)) {
        let ctx = b(4);
        let x = elem(&ctx, &w);
        let alpha = elem(&ctx, &a);
        let t = transport(&x, &alpha).unwrap();
        let px = simple_elem(&ctx, &preferred_prefix(&x));
        let pxa = simple_elem(&ctx, &preferred_prefix(&x.conjugate(&alpha).unwrap()));
        prop_assert_eq!(px.multiply(&t).unwrap(), alpha.multiply(&pxa).unwrap());
        prop_assert_eq!(
            cyclic_sliding(&x).conjugate(&t).unwrap(),
            cyclic_sliding(&x.conjugate(&alpha).unwrap())
        );
        // right transport: 𝔰↰(x^{α⁻¹})^{α↰} = 𝔰↰(x)
        let rt = right_transport(&x, &alpha).unwrap();
        let back = x.conjugate(&alpha.inverse()).unwrap();
        prop_assert_eq!(cyclic_right_sliding(&back).conjugate(&rt).unwrap(), cyclic_right_sliding(&x));
    }

    #[test]
    fn transport_between_summit_elements_is_positive(
        w in word_strategy(5, 16),
        seed in any::<u64>(),
    ) {
        let ctx = b(5);
        let v = summit(&elem(&ctx, &w));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let alpha = simple_elem(&ctx, &random_simple(&mut rng, 5));
            let va = v.conjugate(&alpha).unwrap();
            if !within_bounds(&va, v.inf(), v.sup()) {
                continue;
            }
            let t = transport(&v, &alpha).unwrap();
            prop_assert!(t.is_positive());
            prop_assert!(t.as_simple().is_some());
            let rt = right_transport(&va, &alpha).unwrap();
            prop_assert!(rt.is_positive());
        }
    }

    #[test]
    fn transport_preserves_meets(w in word_strategy(4, 14), seed in any::<u64>()) {
        let ctx = b(4);
        let v = summit(&elem(&ctx, &w));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ok = |c: &E| within_bounds(&v.conjugate(c).unwrap(), v.inf(), v.sup());
        for _ in 0..8 {
            let a = simple_elem(&ctx, &random_simple(&mut rng, 4));
            let c = simple_elem(&ctx, &random_simple(&mut rng, 4));
            let m = a.gcd(&c, Side::Left).unwrap();
            if !(ok(&a) && ok(&c) && ok(&m)) {
                continue;
            }
            let ta = transport(&v, &a).unwrap();
            let tc = transport(&v, &c).unwrap();
            prop_assert_eq!(transport(&v, &m).unwrap(), ta.gcd(&tc, Side::Left).unwrap());
        }
    }

    #[test]
    fn preferred_suffix_of_slide_ends_with_prefix(w in word_strategy(5, 20)) {
        let ctx = b(5);
        let z = summit(&elem(&ctx, &w));
        let p = simple_elem(&ctx, &preferred_prefix(&z));
        let q = simple_elem(&ctx, &preferred_suffix(&cyclic_sliding(&z)));
        prop_assert!(q.has_suffix(&p).unwrap());
        let ps = simple_elem(&ctx, &preferred_suffix(&z));
        let pr = simple_elem(&ctx, &preferred_prefix(&cyclic_right_sliding(&z)));
        prop_assert!(ps.is_prefix_of(&pr).unwrap());
    }

    #[test]
    fn pullback_is_minimal_and_adjoint(w in word_strategy(4, 14), seed in any::<u64>()) {
        let ctx = b(4);
        let simples = enumerate_simples(&ctx, 720).unwrap();
        let z = summit(&elem(&ctx, &w));
        let y = cyclic_sliding(&z);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..6 {
            let s = simple_elem(&ctx, &random_simple(&mut rng, 4));
            if !within_bounds(&y.conjugate(&s).unwrap(), y.inf(), y.sup()) {
                continue;
            }
            let p = pullback_step_checked(&z, &y, &s).unwrap();
            prop_assert_eq!(pullback_step(&z, &y, &s).unwrap(), p.clone());
            prop_assert!(s.is_prefix_of(&transport(&z, &p).unwrap()).unwrap());
            let brute = oracle::pullback(&simples, &z, &s).unwrap();
            prop_assert_eq!(p.clone(), simple_elem(&ctx, &brute));
            // any witness u with z^u super summit bounds the pullback: s₍₁₎ ≼ u
            let u = simple_elem(&ctx, &random_simple(&mut rng, 4));
            if within_bounds(&z.conjugate(&u).unwrap(), z.inf(), z.sup())
                && s.is_prefix_of(&transport(&z, &u).unwrap()).unwrap()
            {
                prop_assert!(p.is_prefix_of(&u).unwrap());
            }
        }
    }

    #[test]
    fn rho_reaches_the_summit(w in word_strategy(5, 20)) {
        let ctx = b(5);
        let x = elem(&ctx, &w);
        let v = summit(&x);
        let rho = minimal_sss_conjugator(&x, v.inf(), v.sup(), None).unwrap();
        prop_assert!(rho.is_positive());
        prop_assert!(within_bounds(&x.conjugate(&rho).unwrap(), v.inf(), v.sup()));
    }
}

#[test]
fn rho_is_minimal_on_small_classes() {
    let ctx = b(3);
    let simples = enumerate_simples(&ctx, 720).unwrap();
    let mut checked = 0;
    for len in 0..=5 {
        for letters in signed_words(3, len) {
            let x = elem(&ctx, &letters);
            if x.canonical_length() > 2 {
                continue;
            }
            let v = summit(&x);
            let rho = minimal_sss_conjugator(&x, v.inf(), v.sup(), None).unwrap();
            for s in &simples {
                let se = simple_elem(&ctx, s);
                if within_bounds(&x.conjugate(&se).unwrap(), v.inf(), v.sup()) {
                    assert!(rho.is_prefix_of(&se).unwrap());
                }
            }
            if let Ok(m) = oracle::minimal_simple_conjugator(&simples, &x, v.inf(), v.sup()) {
                assert_eq!(rho, simple_elem(&ctx, &m));
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

fn signed_words(n: usize, len: usize) -> Vec<Vec<i64>> {
    let letters: Vec<i64> = (1..n as i64).flat_map(|i| [i, -i]).collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&g| {
                    let mut w = w.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    words
}

/// Smallest canonical length among conjugates reachable by simple
/// conjugations that never exceed the starting length.
fn minimal_length_by_search(x: &E, simples: &[Permutation]) -> usize {
    let limit = x.canonical_length();
    let mut seen: HashSet<E> = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    let mut best = limit;
    while let Some(v) = queue.pop_front() {
        best = best.min(v.canonical_length());
        for s in simples {
            let w = v.conjugate_by_simple(s).unwrap();
            if w.canonical_length() <= limit && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    best
}

#[test]
fn sliding_reaches_the_minimal_length() {
    let ctx = b(4);
    let simples = enumerate_simples(&ctx, 720).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 40 {
        let w = garside::braid::random_word(&mut rng, 4, 7);
        let x = element_from_word(&ctx, &w).unwrap();
        if x.canonical_length() > 4 {
            continue;
        }
        tried += 1;
        let t = slide_to_first_repetition(&x);
        assert_eq!(
            t.entry().canonical_length(),
            minimal_length_by_search(&x, &simples),
            "{x:?}"
        );
    }
}

#[test]
fn trajectory_structure() {
    let ctx = b(5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let x = garside::braid::random_element(&mut rng, &ctx, 5, 0.4);
        let t = slide_to_first_repetition(&x);
        let els = t.elements();
        let distinct: HashSet<&E> = els.iter().collect();
        assert_eq!(distinct.len(), els.len());
        for k in 0..els.len() - 1 {
            assert_eq!(cyclic_sliding(&els[k]), els[k + 1]);
        }
        assert_eq!(cyclic_sliding(els.last().unwrap()), *t.entry());
        assert_eq!(t.entry_index() + t.period(), t.len());
    }
}
