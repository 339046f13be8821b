//! Sliding circuits, the arrows of the sliding circuits graph, and the
//! conjugacy solvers built on them.

use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;

use crate::contract::{Atom, GarsideContext, GarsideStructure};
use crate::element::Element;
use crate::error::{GarsideError, Result};
use crate::oracle;
use crate::sliding::{
    minimal_sss_conjugator, preferred_suffix, pullback_unchecked, slide_to_first_repetition,
    transport_with,
};
use crate::FixedHashMap;

/// Counters observed during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Largest trajectory entry index `T` seen while sliding into a circuit.
    pub trajectory_entry: usize,
    /// Largest sliding circuit length `N` seen.
    pub circuit_length: usize,
    /// Largest `i₂` over all transport cycles, the transport-repetition distance `R`.
    pub transport_repetition: usize,
    /// Largest `j` over all iterated pullback sequences.
    pub pullback_repetition: usize,
    /// Number of vertices of the sliding circuits graph discovered.
    pub sc_size: usize,
    /// Number of arrows computed.
    pub arrows: usize,
    /// Primitive calls made through the context during the run.
    pub contract_calls: u64,
}

impl RunStats {
    fn absorb(&mut self, other: &RunStats) {
        self.trajectory_entry = self.trajectory_entry.max(other.trajectory_entry);
        self.circuit_length = self.circuit_length.max(other.circuit_length);
        self.transport_repetition = self.transport_repetition.max(other.transport_repetition);
        self.pullback_repetition = self.pullback_repetition.max(other.pullback_repetition);
    }
}

/// Iteration guards for the repetition searches.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    /// Maximal number of `N`-fold transports or pullbacks before giving up.
    /// `None` derives a guard from the number of simple elements when the
    /// structure reports it, and from the largest distance observed so far
    /// otherwise.
    pub repetition_guard: Option<usize>,
    /// Largest number of simple elements the naive solver will enumerate.
    pub naive_simple_limit: Option<u64>,
}

/// One element of a sliding circuit with its cached data.
#[derive(Clone, Debug)]
pub struct CircuitVertex<G: GarsideStructure> {
    pub element: Element<G>,
    pub prefix: G::Simple,
    pub suffix: G::Simple,
}

/// A sliding circuit `v, 𝔰(v), …, 𝔰^{N-1}(v)`.
#[derive(Clone, Debug)]
pub struct Circuit<G: GarsideStructure> {
    vertices: Vec<CircuitVertex<G>>,
}

impl<G: GarsideStructure> Circuit<G> {
    /// The circuit through `v`; fails unless `v` lies in a sliding circuit.
    pub fn new(v: &Element<G>) -> Result<Self> {
        let trajectory = slide_to_first_repetition(v);
        if trajectory.entry_index() != 0 {
            return Err(GarsideError::Precondition(
                "element does not lie in a sliding circuit".into(),
            ));
        }
        Ok(Self::from_parts(
            trajectory.elements().to_vec(),
            trajectory.prefixes().to_vec(),
        ))
    }

    fn from_parts(elements: Vec<Element<G>>, prefixes: Vec<G::Simple>) -> Self {
        let vertices = elements
            .into_iter()
            .zip(prefixes)
            .map(|(element, prefix)| {
                let suffix = preferred_suffix(&element);
                CircuitVertex {
                    element,
                    prefix,
                    suffix,
                }
            })
            .collect();
        Circuit { vertices }
    }

    pub fn base(&self) -> &Element<G> {
        &self.vertices[0].element
    }

    /// `N`, the minimal period of cyclic sliding on the base.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[CircuitVertex<G>] {
        &self.vertices
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element<G>> {
        self.vertices.iter().map(|v| &v.element)
    }

    /// `u^{(N)}`: transport once around the circuit.
    pub fn transport_around(&self, u: &Element<G>) -> Result<Element<G>> {
        let mut u = u.clone();
        for vertex in &self.vertices {
            let positive = u.is_positive();
            u = transport_with(&vertex.element, &vertex.prefix, &u);
            if positive && !u.is_positive() {
                return Err(GarsideError::InternalInvariant(
                    "transport of a positive conjugator is not positive".into(),
                ));
            }
        }
        Ok(u)
    }

    /// `s_{(N)}`: pull back once around the circuit, walking it backwards.
    pub fn pullback_around(&self, s: &Element<G>) -> Element<G> {
        let n = self.len();
        let mut s = s.clone();
        for k in 0..n {
            let y = &self.vertices[(n - k) % n];
            let z = &self.vertices[(2 * n - k - 1) % n];
            s = pullback_unchecked(&z.prefix, &y.element, &s);
        }
        s
    }
}

/// The iterated `N`-fold transports of `u` up to the first repetition.
#[derive(Clone, Debug)]
pub struct TransportCycle<G: GarsideStructure> {
    sequence: Vec<Element<G>>,
    first: usize,
    second: usize,
}

impl<G: GarsideStructure> TransportCycle<G> {
    /// `u, u^{(N)}, …, u^{((i₂-1)N)}`.
    pub fn sequence(&self) -> &[Element<G>] {
        &self.sequence
    }

    /// `(i₁, i₂)`, minimal with `u^{(i₁N)} = u^{(i₂N)}`.
    pub fn indices(&self) -> (usize, usize) {
        (self.first, self.second)
    }

    /// `F(u)`.
    pub fn periodic_part(&self) -> &[Element<G>] {
        &self.sequence[self.first..self.second]
    }

    /// `l(u) = i₂ - i₁`.
    pub fn period(&self) -> usize {
        self.second - self.first
    }
}

/// The result of a conjugacy test.
#[derive(Clone, Debug)]
pub struct ConjugacyResult<G: GarsideStructure> {
    pub conjugate: bool,
    /// `c` with `x^c = y`, present exactly when `conjugate` holds.
    pub witness: Option<Element<G>>,
    pub stats: RunStats,
}

/// An arrow `source → target` labelled by a simple conjugator.
#[derive(Clone, Debug)]
pub struct Arrow<S> {
    pub source: usize,
    pub target: usize,
    pub label: S,
}

/// The sliding circuits graph with a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct ScGraph<G: GarsideStructure> {
    vertices: Vec<Element<G>>,
    index: FixedHashMap<Element<G>, usize>,
    arrows: Vec<Arrow<G::Simple>>,
    parent: Vec<Option<(usize, G::Simple)>>,
}

impl<G: GarsideStructure> ScGraph<G> {
    fn new(root: Element<G>) -> Self {
        let mut index = FixedHashMap::default();
        index.insert(root.clone(), 0);
        ScGraph {
            vertices: vec![root],
            index,
            arrows: Vec::new(),
            parent: vec![None],
        }
    }

    fn insert(&mut self, v: Element<G>, parent: usize, label: G::Simple) -> (usize, bool) {
        if let Some(&id) = self.index.get(&v) {
            return (id, false);
        }
        let id = self.vertices.len();
        self.index.insert(v.clone(), id);
        self.vertices.push(v);
        self.parent.push(Some((parent, label)));
        (id, true)
    }

    /// Vertices in discovery order; vertex 0 is the root.
    pub fn vertices(&self) -> &[Element<G>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arrows(&self) -> &[Arrow<G::Simple>] {
        &self.arrows
    }

    pub fn index_of(&self, v: &Element<G>) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Element<G>) -> bool {
        self.index.contains_key(v)
    }

    /// Parent vertex and arrow label in the spanning tree.
    pub fn parent(&self, id: usize) -> Option<&(usize, G::Simple)> {
        self.parent[id].as_ref()
    }

    /// `c_v`, the product of arrow labels on the tree path from the root.
    pub fn conjugator_to(&self, id: usize) -> Element<G> {
        let mut labels = Vec::new();
        let mut current = id;
        while let Some((p, label)) = &self.parent[current] {
            labels.push(label.clone());
            current = *p;
        }
        let ctx = self.vertices[0].context();
        labels
            .iter()
            .rev()
            .fold(Element::identity(ctx), |c, s| c.mul_simple(s))
    }
}

/// Arrow labels at a vertex, each with the arrow's target.
type Expansion<G> = Vec<(<G as GarsideStructure>::Simple, Element<G>)>;

/// Runs the sliding-circuit algorithms on one context.
pub struct Solver<G: GarsideStructure> {
    ctx: Arc<GarsideContext<G>>,
    limits: Limits,
    parallel: bool,
}

impl<G: GarsideStructure> Solver<G> {
    pub fn new(ctx: &Arc<GarsideContext<G>>) -> Self {
        Solver {
            ctx: ctx.clone(),
            limits: Limits::default(),
            parallel: false,
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Expands each breadth-first level of the graph search in parallel.
    ///
    /// Results are merged in frontier order, so vertices, arrows and the
    /// spanning tree are identical to the sequential search.
    pub fn parallel(mut self, enabled: bool) -> Self {
        self.parallel = enabled;
        self
    }

    pub fn context(&self) -> &Arc<GarsideContext<G>> {
        &self.ctx
    }

    fn check(&self, x: &Element<G>) -> Result<()> {
        self.ctx.same_context(x.context())
    }

    fn guard(&self, observed: usize) -> usize {
        if let Some(g) = self.limits.repetition_guard {
            return g;
        }
        // every element of these sequences is simple, so some value repeats
        // within |[1,Δ]| + 1 steps
        match self.ctx.structure().simple_count_hint() {
            Some(count) => usize::try_from(count)
                .unwrap_or(usize::MAX)
                .saturating_add(1),
            None => 4 * observed + 16,
        }
    }

    /// Slides `x` into its sliding circuit: returns `x̃ ∈ SC(x)` and `c` with `x^c = x̃`.
    pub fn slide_to_circuit(&self, x: &Element<G>) -> Result<(Element<G>, Element<G>)> {
        self.check(x)?;
        let (xt, c, _) = self.slide_with_trajectory(x, &mut RunStats::default());
        Ok((xt, c))
    }

    fn slide_with_trajectory(
        &self,
        x: &Element<G>,
        stats: &mut RunStats,
    ) -> (Element<G>, Element<G>, Circuit<G>) {
        let trajectory = slide_to_first_repetition(x);
        let entry = trajectory.entry_index();
        stats.trajectory_entry = stats.trajectory_entry.max(entry);
        stats.circuit_length = stats.circuit_length.max(trajectory.period());
        // c·d⁻¹, where c is the product of all prefixes and d the product
        // over the circuit, is the product over the pre-periodic part
        let c = trajectory.prefixes()[..entry]
            .iter()
            .fold(Element::identity(&self.ctx), |c, p| c.mul_simple(p));
        let circuit = Circuit::from_parts(
            trajectory.elements()[entry..].to_vec(),
            trajectory.prefixes()[entry..].to_vec(),
        );
        (trajectory.entry().clone(), c, circuit)
    }

    /// The circuit through `v`.
    pub fn circuit(&self, v: &Element<G>) -> Result<Circuit<G>> {
        self.check(v)?;
        Circuit::new(v)
    }

    /// Iterated `N`-fold transports of `u` until the first repetition.
    pub fn transport_cycle(
        &self,
        circuit: &Circuit<G>,
        u: &Element<G>,
    ) -> Result<TransportCycle<G>> {
        self.check(u)?;
        self.transport_cycle_with(circuit, u, &mut RunStats::default())
    }

    fn transport_cycle_with(
        &self,
        circuit: &Circuit<G>,
        u: &Element<G>,
        stats: &mut RunStats,
    ) -> Result<TransportCycle<G>> {
        let guard = self.guard(stats.transport_repetition);
        let mut seen: FixedHashMap<Element<G>, usize> = FixedHashMap::default();
        let mut sequence = Vec::new();
        let mut current = u.clone();
        loop {
            if let Some(&first) = seen.get(&current) {
                let second = sequence.len();
                stats.transport_repetition = stats.transport_repetition.max(second);
                return Ok(TransportCycle {
                    sequence,
                    first,
                    second,
                });
            }
            if sequence.len() > guard {
                return Err(GarsideError::InternalInvariant(format!(
                    "no transport repetition within {guard} rounds"
                )));
            }
            seen.insert(current.clone(), sequence.len());
            let next = circuit.transport_around(&current)?;
            sequence.push(current);
            current = next;
        }
    }

    /// Iterated `N`-fold pullbacks of `s` until the first repetition, which is returned.
    pub fn iterated_pullback_to_repetition(
        &self,
        circuit: &Circuit<G>,
        s: &Element<G>,
    ) -> Result<Element<G>> {
        self.check(s)?;
        self.iterated_pullback_with(circuit, s, &mut RunStats::default())
            .map(|(s, _, _)| s)
    }

    fn iterated_pullback_with(
        &self,
        circuit: &Circuit<G>,
        s: &Element<G>,
        stats: &mut RunStats,
    ) -> Result<(Element<G>, usize, usize)> {
        let guard = self.guard(stats.pullback_repetition);
        let mut seen: FixedHashMap<Element<G>, usize> = FixedHashMap::default();
        let mut current = s.clone();
        let mut j = 0;
        loop {
            if let Some(&i) = seen.get(&current) {
                stats.pullback_repetition = stats.pullback_repetition.max(j);
                return Ok((current, i, j));
            }
            if j > guard {
                return Err(GarsideError::InternalInvariant(format!(
                    "no pullback repetition within {guard} rounds"
                )));
            }
            seen.insert(current.clone(), j);
            current = circuit.pullback_around(&current);
            j += 1;
        }
    }

    /// `(value, i, j)` for the iterated `N`-fold pullbacks of `s`:
    /// `s_{(iN)} = s_{(jN)} = value` with `j` minimal.
    pub fn iterated_pullback_indices(
        &self,
        circuit: &Circuit<G>,
        s: &Element<G>,
    ) -> Result<(Element<G>, usize, usize)> {
        self.check(s)?;
        self.iterated_pullback_with(circuit, s, &mut RunStats::default())
    }

    /// The labels of the arrows of the sliding circuits graph starting at the
    /// base of `circuit`, in order of discovery.
    pub fn arrows_at(&self, circuit: &Circuit<G>) -> Result<Vec<G::Simple>> {
        self.arrows_with(circuit, &mut RunStats::default())
    }

    fn arrows_with(&self, circuit: &Circuit<G>, stats: &mut RunStats) -> Result<Vec<G::Simple>> {
        let ctx = &*self.ctx;
        let v = circuit.base();
        let pv = &circuit.vertices()[0].prefix;
        let lambda = ctx.rank();
        let mut arrows = Vec::new();
        let mut found = vec![false; lambda + 1];
        for &a in ctx.atoms() {
            let t = a.index();
            let atom = ctx.atom(a);
            // ρ_a = a·ρ(v^a); at most ‖Δ‖ passes since ℓ(a) = 1
            let rho = minimal_sss_conjugator(
                &v.conj_simple(&atom),
                v.inf(),
                v.sup(),
                Some(ctx.delta_length()),
            )?;
            let mut s = rho.simple_mul(&atom);
            if ctx.div_left(a, pv).is_some() {
                s = self.iterated_pullback_with(circuit, &s, stats)?.0;
            }
            let cycle = self.transport_cycle_with(circuit, &s, stats)?;
            for candidate in cycle.periodic_part() {
                let c = candidate.as_simple().ok_or_else(|| {
                    GarsideError::InternalInvariant("transported conjugator is not simple".into())
                })?;
                if ctx.div_left(a, &c).is_none() {
                    continue;
                }
                let blocked = (1..=lambda)
                    .any(|k| (found[k] || k > t) && ctx.div_left(Atom::new(k), &c).is_some());
                if !blocked {
                    arrows.push(c);
                    found[t] = true;
                }
                break;
            }
        }
        Ok(arrows)
    }

    /// Arrow labels and targets at a vertex of `SC(x)`.
    fn expand(&self, v: &Element<G>, stats: &mut RunStats) -> Result<Expansion<G>> {
        let circuit = Circuit::new(v)?;
        stats.circuit_length = stats.circuit_length.max(circuit.len());
        let arrows = self.arrows_with(&circuit, stats)?;
        Ok(arrows
            .into_iter()
            .map(|s| {
                let target = v.conj_simple(&s);
                (s, target)
            })
            .collect())
    }

    fn expand_level(
        &self,
        level: &[usize],
        graph: &ScGraph<G>,
        stats: &mut RunStats,
    ) -> Result<Vec<Expansion<G>>> {
        if self.parallel && level.len() > 1 {
            let results: Vec<_> = level
                .par_iter()
                .map(|&id| {
                    let mut local = RunStats {
                        transport_repetition: stats.transport_repetition,
                        pullback_repetition: stats.pullback_repetition,
                        ..RunStats::default()
                    };
                    self.expand(&graph.vertices[id], &mut local)
                        .map(|arrows| (arrows, local))
                })
                .collect();
            let mut out = Vec::with_capacity(results.len());
            for r in results {
                let (arrows, local) = r?;
                stats.absorb(&local);
                out.push(arrows);
            }
            Ok(out)
        } else {
            level
                .iter()
                .map(|&id| self.expand(&graph.vertices[id], stats))
                .collect()
        }
    }

    /// Breadth-first search of the sliding circuits graph from `root`,
    /// stopping as soon as an arrow reaches `target`.
    fn search(
        &self,
        root: Element<G>,
        target: Option<&Element<G>>,
        stats: &mut RunStats,
    ) -> Result<(ScGraph<G>, Option<Element<G>>)> {
        let mut graph = ScGraph::new(root);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while !queue.is_empty() {
            // sequentially this is one vertex at a time; in parallel a whole level
            let level: Vec<usize> = if self.parallel {
                queue.drain(..).collect()
            } else {
                vec![queue.pop_front().expect("queue is not empty")]
            };
            let expansions = self.expand_level(&level, &graph, stats)?;
            for (&id, arrows) in level.iter().zip(expansions) {
                for (label, w) in arrows {
                    stats.arrows += 1;
                    if target.is_some_and(|y| *y == w) {
                        let c = graph.conjugator_to(id).mul_simple(&label);
                        return Ok((graph, Some(c)));
                    }
                    let (wid, new) = graph.insert(w, id, label.clone());
                    graph.arrows.push(Arrow {
                        source: id,
                        target: wid,
                        label,
                    });
                    if new {
                        queue.push_back(wid);
                    }
                }
            }
        }
        Ok((graph, None))
    }

    /// The whole sliding circuits graph of `x`, rooted at the element reached
    /// by sliding `x`.
    pub fn enumerate_sc(&self, x: &Element<G>) -> Result<(ScGraph<G>, RunStats)> {
        self.check(x)?;
        let start = self.ctx.contract_calls();
        let mut stats = RunStats::default();
        let (xt, _, _) = self.slide_with_trajectory(x, &mut stats);
        let (graph, _) = self.search(xt, None, &mut stats)?;
        stats.sc_size = graph.len();
        stats.contract_calls = self.ctx.contract_calls() - start;
        Ok((graph, stats))
    }

    /// Decides whether `x` and `y` are conjugate, with a witness when they are.
    pub fn solve_conjugacy(&self, x: &Element<G>, y: &Element<G>) -> Result<ConjugacyResult<G>> {
        self.check(x)?;
        self.check(y)?;
        let start = self.ctx.contract_calls();
        let mut stats = RunStats::default();
        let (xt, c1, _) = self.slide_with_trajectory(x, &mut stats);
        let (yt, c2, _) = self.slide_with_trajectory(y, &mut stats);
        let c_y = if xt == yt {
            stats.sc_size = 1;
            Some(Element::identity(&self.ctx))
        } else {
            let (graph, found) = self.search(xt, Some(&yt), &mut stats)?;
            stats.sc_size = graph.len();
            found
        };
        let witness = match c_y {
            Some(c) => {
                let w = c1.mul(&c).mul(&c2.inverse());
                if x.conj(&w) != *y {
                    return Err(GarsideError::InternalInvariant(
                        "conjugating element does not verify".into(),
                    ));
                }
                Some(w)
            }
            None => None,
        };
        stats.contract_calls = self.ctx.contract_calls() - start;
        Ok(ConjugacyResult {
            conjugate: witness.is_some(),
            witness,
            stats,
        })
    }

    fn naive_simples(&self) -> Result<Vec<G::Simple>> {
        let limit = self
            .limits
            .naive_simple_limit
            .unwrap_or(oracle::DEFAULT_SIMPLE_LIMIT);
        oracle::enumerate_simples(&self.ctx, limit)
    }

    /// `SC(x)` by conjugating known vertices by every simple element.
    pub fn naive_enumerate_sc(&self, x: &Element<G>) -> Result<Vec<Element<G>>> {
        self.check(x)?;
        let simples = self.naive_simples()?;
        let xt = slide_to_first_repetition(x).entry().clone();
        let (graph, _) = self.naive_search(&simples, xt, None)?;
        Ok(graph.vertices)
    }

    fn naive_search(
        &self,
        simples: &[G::Simple],
        root: Element<G>,
        target: Option<&Element<G>>,
    ) -> Result<(ScGraph<G>, Option<Element<G>>)> {
        let mut graph = ScGraph::new(root);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let v = graph.vertices[id].clone();
            for s in simples {
                let w = v.conj_simple(s);
                if target.is_some_and(|y| *y == w) {
                    let c = graph.conjugator_to(id).mul_simple(s);
                    return Ok((graph, Some(c)));
                }
                if graph.contains(&w) {
                    continue;
                }
                // w ∈ SC(x) iff its sliding trajectory returns to w
                if slide_to_first_repetition(&w).entry_index() == 0 {
                    let (wid, _) = graph.insert(w, id, s.clone());
                    queue.push_back(wid);
                }
            }
        }
        Ok((graph, None))
    }

    /// The reference solver: breadth-first search over conjugation by all
    /// simple elements, with sliding-circuit membership by iterated sliding.
    pub fn naive_solve(&self, x: &Element<G>, y: &Element<G>) -> Result<ConjugacyResult<G>> {
        self.check(x)?;
        self.check(y)?;
        let simples = self.naive_simples()?;
        let start = self.ctx.contract_calls();
        let mut stats = RunStats::default();
        let (xt, c1, _) = self.slide_with_trajectory(x, &mut stats);
        let (yt, c2, _) = self.slide_with_trajectory(y, &mut stats);
        let (graph, found) = self.naive_search(&simples, xt, Some(&yt))?;
        stats.sc_size = graph.len();
        let witness = found.map(|c| c1.mul(&c).mul(&c2.inverse()));
        if let Some(w) = &witness {
            if x.conj(w) != *y {
                return Err(GarsideError::InternalInvariant(
                    "conjugating element does not verify".into(),
                ));
            }
        }
        stats.contract_calls = self.ctx.contract_calls() - start;
        Ok(ConjugacyResult {
            conjugate: witness.is_some(),
            witness,
            stats,
        })
    }
}

/// Whether `v` lies in a sliding circuit.
pub fn in_sliding_circuit<G: GarsideStructure>(v: &Element<G>) -> bool {
    slide_to_first_repetition(v).entry_index() == 0
}
