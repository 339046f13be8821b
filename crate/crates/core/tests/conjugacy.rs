mod common;

use std::collections::HashSet;

use common::{b, positive_words};
use garside::braid::BraidGroup;
use garside::braid::{
    element_from_word, parse_element, random_element, random_word, BraidWord, Permutation,
};
use garside::oracle::{self, enumerate_simples};
use garside::sliding::{cyclic_sliding, within_bounds};
use garside::{Element, Limits, Solver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = Element<BraidGroup>;

fn el(ctx: &common::Ctx, text: &str) -> E {
    parse_element(ctx, text).unwrap()
}

fn vertex_set(v: &[E]) -> HashSet<E> {
    v.iter().cloned().collect()
}

/// Exponent sum and induced permutation's cycle type: conjugacy invariants.
fn invariants(n: usize, letters: &[i64]) -> (i64, Vec<usize>) {
    let sum = letters.iter().map(|l| l.signum()).sum();
    let word: Vec<usize> = letters.iter().map(|l| l.unsigned_abs() as usize).collect();
    let perm = common::word_permutation(n, &word);
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm.image(k);
            len += 1;
        }
        if len > 0 {
            cycles.push(len);
        }
    }
    cycles.sort_unstable();
    (sum, cycles)
}

#[test]
fn delta_is_alone_in_its_class() {
    let ctx = b(3);
    let (graph, stats) = Solver::new(&ctx).enumerate_sc(&el(&ctx, "D")).unwrap();
    assert_eq!(graph.vertices(), &[el(&ctx, "D")]);
    assert_eq!(stats.sc_size, 1);
}

#[test]
fn two_letter_class() {
    let ctx = b(3);
    let (graph, _) = Solver::new(&ctx).enumerate_sc(&el(&ctx, "1 2")).unwrap();
    assert_eq!(
        vertex_set(graph.vertices()),
        vertex_set(&[el(&ctx, "1 2"), el(&ctx, "2 1")])
    );
}

#[test]
fn generator_and_inverse_are_not_conjugate() {
    let ctx = b(3);
    let r = Solver::new(&ctx)
        .solve_conjugacy(&el(&ctx, "1"), &el(&ctx, "-1"))
        .unwrap();
    assert!(!r.conjugate);
    assert!(r.witness.is_none());
}

#[test]
fn slide_to_circuit_lands_in_circuit() {
    let ctx = b(5);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let x = random_element(&mut rng, &ctx, 4, 0.5);
        let (xt, c) = solver.slide_to_circuit(&x).unwrap();
        assert_eq!(x.conjugate(&c).unwrap(), xt);
        assert!(oracle::in_sliding_circuit(&xt));
        let circuit = solver.circuit(&xt).unwrap();
        let mut v = xt.clone();
        for vertex in circuit.vertices() {
            assert_eq!(vertex.element, v);
            v = cyclic_sliding(&v);
        }
        assert_eq!(v, xt);
    }
}

#[test]
fn trivial_transport_cycle() {
    let ctx = b(4);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..30 {
        let (v, _) = solver
            .slide_to_circuit(&random_element(&mut rng, &ctx, 3, 0.5))
            .unwrap();
        let circuit = solver.circuit(&v).unwrap();
        let cycle = solver
            .transport_cycle(&circuit, &Element::identity(&ctx))
            .unwrap();
        assert_eq!(cycle.indices(), (0, 1));
        assert_eq!(cycle.period(), 1);
        assert!(cycle.periodic_part()[0].is_identity());
    }
}

#[test]
fn transport_cycles_are_periodic_and_positive() {
    let ctx = b(5);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let (v, _) = solver
            .slide_to_circuit(&random_element(&mut rng, &ctx, 4, 0.5))
            .unwrap();
        let circuit = solver.circuit(&v).unwrap();
        for u in solver.arrows_at(&circuit).unwrap() {
            let u = Element::from_simple(&ctx, &u);
            let cycle = solver.transport_cycle(&circuit, &u).unwrap();
            let (i, j) = cycle.indices();
            assert!(i < j);
            assert_eq!(cycle.sequence().len(), j);
            assert_eq!(
                circuit.transport_around(&cycle.sequence()[j - 1]).unwrap(),
                cycle.sequence()[i]
            );
            for w in cycle.sequence() {
                assert!(w.is_positive() && w.as_simple().is_some());
                assert!(oracle::in_sliding_circuit(&v.conjugate(w).unwrap()));
            }
        }
    }
}

#[test]
fn iterated_pullbacks_repeat() {
    let ctx = b(4);
    let solver = Solver::new(&ctx);
    let simples = enumerate_simples(&ctx, 720).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for _ in 0..40 {
        let (v, _) = solver
            .slide_to_circuit(&random_element(&mut rng, &ctx, 3, 0.5))
            .unwrap();
        let circuit = solver.circuit(&v).unwrap();
        for s in &simples {
            let s = Element::from_simple(&ctx, s);
            if !within_bounds(&v.conjugate(&s).unwrap(), v.inf(), v.sup()) {
                continue;
            }
            let once = circuit.pullback_around(&s);
            assert!(once.is_positive());
            let (p, i, j) = solver.iterated_pullback_indices(&circuit, &s).unwrap();
            assert!(i < j);
            let mut q = s.clone();
            for _ in 0..i {
                q = circuit.pullback_around(&q);
            }
            assert_eq!(q, p);
            assert_eq!(
                solver
                    .iterated_pullback_to_repetition(&circuit, &s)
                    .unwrap(),
                p
            );
            // the repeated value is a fixed point of the whole period
            let mut r = p.clone();
            for _ in i..j {
                r = circuit.pullback_around(&r);
            }
            assert_eq!(r, p);
            checked += 1;
        }
    }
    assert!(checked > 100);
}

fn check_arrows_against_oracle(ctx: &common::Ctx, v: &E, simples: &[Permutation]) {
    let solver = Solver::new(ctx);
    let circuit = solver.circuit(v).unwrap();
    let fast: HashSet<Permutation> = solver.arrows_at(&circuit).unwrap().into_iter().collect();
    let brute: HashSet<Permutation> = oracle::arrows(simples, v).into_iter().collect();
    assert_eq!(fast, brute, "arrows at {v:?}");
    for a in &fast {
        assert!(!ctx.is_trivial_simple(a));
        assert!(oracle::in_sliding_circuit(
            &v.conjugate_by_simple(a).unwrap()
        ));
    }
}

#[test]
fn arrows_match_brute_force_b3() {
    let ctx = b(3);
    let simples = enumerate_simples(&ctx, 720).unwrap();
    let solver = Solver::new(&ctx);
    let mut roots = HashSet::new();
    for len in 1..=6 {
        for w in positive_words(3, len) {
            for p in [-2i64, -1, 0] {
                let letters = w.iter().map(|&g| g as i64).collect();
                let x = element_from_word(
                    &ctx,
                    &BraidWord {
                        delta_power: p,
                        letters,
                    },
                )
                .unwrap();
                roots.insert(solver.slide_to_circuit(&x).unwrap().0);
            }
        }
    }
    for v in &roots {
        check_arrows_against_oracle(&ctx, v, &simples);
    }
    assert!(roots.len() > 20);
}

#[test]
fn arrows_match_brute_force_b4() {
    let ctx = b(4);
    let simples = enumerate_simples(&ctx, 720).unwrap();
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..150 {
        let x = element_from_word(&ctx, &random_word(&mut rng, 4, 10)).unwrap();
        let (v, _) = solver.slide_to_circuit(&x).unwrap();
        check_arrows_against_oracle(&ctx, &v, &simples);
    }
}

#[test]
fn graph_matches_naive_enumeration() {
    let ctx = b(4);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let x = element_from_word(&ctx, &random_word(&mut rng, 4, 9)).unwrap();
        let (graph, stats) = solver.enumerate_sc(&x).unwrap();
        let naive = solver.naive_enumerate_sc(&x).unwrap();
        assert_eq!(vertex_set(graph.vertices()), vertex_set(&naive));
        assert_eq!(stats.sc_size, naive.len());
        for (id, v) in graph.vertices().iter().enumerate() {
            assert_eq!(graph.index_of(v), Some(id));
            assert_eq!(
                graph.vertices()[0]
                    .conjugate(&graph.conjugator_to(id))
                    .unwrap(),
                *v
            );
        }
        for a in graph.arrows() {
            let w = graph.vertices()[a.source]
                .conjugate_by_simple(&a.label)
                .unwrap();
            assert_eq!(w, graph.vertices()[a.target]);
        }
    }
}

#[test]
fn graph_is_a_class_invariant() {
    let ctx = b(4);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let x = element_from_word(&ctx, &random_word(&mut rng, 4, 8)).unwrap();
        let c = element_from_word(&ctx, &random_word(&mut rng, 4, 6)).unwrap();
        let (g1, _) = solver.enumerate_sc(&x).unwrap();
        let (g2, _) = solver.enumerate_sc(&x.conjugate(&c).unwrap()).unwrap();
        let set = vertex_set(g1.vertices());
        assert_eq!(set, vertex_set(g2.vertices()));
        for v in &set {
            assert!(set.contains(&v.tau_power(1)));
        }
    }
}

#[test]
fn parallel_search_matches_sequential() {
    let ctx = b(5);
    let seq = Solver::new(&ctx);
    let par = Solver::new(&ctx).parallel(true);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let x = random_element(&mut rng, &ctx, 4, 0.5);
        let (a, _) = seq.enumerate_sc(&x).unwrap();
        let (b, _) = par.enumerate_sc(&x).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        let y = x
            .conjugate(&random_element(&mut rng, &ctx, 2, 0.5))
            .unwrap();
        let r = par.solve_conjugacy(&x, &y).unwrap();
        assert_eq!(x.conjugate(r.witness.as_ref().unwrap()).unwrap(), y);
    }
}

#[test]
fn exhaustive_b3_sweep_agrees_with_reference() {
    let ctx = b(3);
    let solver = Solver::new(&ctx);
    let mut words = Vec::new();
    for len in 0..=4 {
        for w in positive_words(3, len) {
            words.push(w.iter().map(|&g| g as i64).collect::<Vec<i64>>());
        }
    }
    let elems: Vec<E> = words
        .iter()
        .map(|w| {
            element_from_word(
                &ctx,
                &BraidWord {
                    delta_power: 0,
                    letters: w.clone(),
                },
            )
            .unwrap()
        })
        .collect();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let fast = solver.solve_conjugacy(x, y).unwrap();
            let slow = solver.naive_solve(x, y).unwrap();
            assert_eq!(fast.conjugate, slow.conjugate, "{x:?} {y:?}");
            if invariants(3, &words[i]) != invariants(3, &words[j]) {
                assert!(!fast.conjugate);
            }
            if let Some(w) = fast.witness {
                assert_eq!(x.conjugate(&w).unwrap(), *y);
            }
        }
    }
}

#[test]
fn random_pairs_agree_with_reference() {
    let ctx = b(4);
    let solver = Solver::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 0..100 {
        let wx = random_word(&mut rng, 4, 8);
        let x = element_from_word(&ctx, &wx).unwrap();
        let (y, wy) = if k % 2 == 0 {
            let c = element_from_word(&ctx, &random_word(&mut rng, 4, 6)).unwrap();
            (x.conjugate(&c).unwrap(), None)
        } else {
            let wy = random_word(&mut rng, 4, 8);
            (element_from_word(&ctx, &wy).unwrap(), Some(wy))
        };
        let fast = solver.solve_conjugacy(&x, &y).unwrap();
        let slow = solver.naive_solve(&x, &y).unwrap();
        assert_eq!(fast.conjugate, slow.conjugate);
        match wy {
            None => assert!(fast.conjugate),
            Some(wy) => {
                if invariants(4, &wx.letters) != invariants(4, &wy.letters) {
                    assert!(!fast.conjugate);
                }
            }
        }
    }
}

#[test]
fn limits_are_respected() {
    let ctx = b(7);
    let solver = Solver::new(&ctx);
    assert!(solver.naive_enumerate_sc(&el(&ctx, "1 2")).is_err());
    let roomy = Solver::new(&ctx).with_limits(Limits {
        naive_simple_limit: Some(5040),
        ..Limits::default()
    });
    assert_eq!(roomy.naive_enumerate_sc(&el(&ctx, "1")).unwrap().len(), 6);
    let other = b(4);
    assert!(solver.enumerate_sc(&el(&other, "1")).is_err());
}
