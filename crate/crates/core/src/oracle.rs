//! Independent cross-checks for the polynomial infinite-weight detector:
//! a finite-horizon feasibility checker, exhaustive circuit enumeration, a
//! brute-force verdict for tiny instances, and a seeded net generator.
//!
//! Nothing here shares search logic with [`crate::periodic`]: circuits and
//! walk maxima are recomputed by length-bounded power iteration or explicit
//! depth-first enumeration, and horizon feasibility is restated as
//! difference constraints, so agreement between the two sides is evidence
//! rather than tautology.

use std::collections::BTreeMap;

use num::traits::Zero;
use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maxplus::TropicalMatrix;
use crate::periodic::{
    build_slice, pump_certificate, InfWeightVerdict, InfinitePathCertificate, NodeIndexMap,
    PositiveCircuitWitness, PumpablePair, SliceSpec,
};
use crate::pteg::{PTimeEventGraph, Place, Trajectory};
use crate::staticgraph::{Arc, Path, StaticGraph};
use crate::{Error, Result};

/// Largest transition count `brute_infinite_weight` accepts.
pub const BRUTE_MAX_TRANSITIONS: usize = 4;

/// Edge-visit budget shared by the exhaustive enumerators.
const ENUMERATION_STEP_LIMIT: usize = 5_000_000;

/// Rounds of explicit pumping used to vet a pumpable pair.
const PUMP_ROUNDS: usize = 3;

/// Outcome of a finite-horizon feasibility check.
///
/// `feasible` holds exactly when `blocking_circuit` is `None`: a depth-`h`
/// prefix exists iff the truncated precedence graph has no positive circuit.
#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub horizon: usize,
    pub feasible: bool,
    /// An explicit prefix satisfying every truncated constraint, when feasible.
    pub witness: Option<Trajectory>,
    /// A positive-weight circuit of the truncated graph, when infeasible.
    /// Arc shifts are level differences inside the horizon window.
    pub blocking_circuit: Option<Path>,
}

/// Decides whether the dynamics admit a trajectory prefix of `horizon`
/// levels, ignoring behaviour beyond the window.
///
/// The check builds the depth-`horizon` natural slice and runs the closure on
/// it. Without positive circuits the star applied to the all-zeros vector is
/// the least nonnegative solution, returned reshaped into a trajectory;
/// otherwise a blocking circuit is recovered by direct enumeration.
pub fn weak_feasible(
    m_minus: &TropicalMatrix,
    m_zero: &TropicalMatrix,
    m_plus: &TropicalMatrix,
    horizon: usize,
) -> Result<FeasibilityReport> {
    if horizon == 0 {
        return Err(Error::EmptyHorizon);
    }
    let graph = StaticGraph::from_matrices(m_minus, m_zero, m_plus)?;
    let n = graph.n();
    let map = NodeIndexMap::new(n, SliceSpec::Natural { depth: horizon })?;
    let slice = build_slice(&graph, &map)?;
    let closure = slice.kleene_star()?;
    if !closure.positive_circuit_nodes.is_empty() {
        let adjacency = slice_adjacency(&slice);
        let nodes =
            shortest_positive_cycle(&adjacency).ok_or_else(|| Error::InvalidCertificate {
                reason: "closure reports a positive circuit the walk search cannot find".into(),
            })?;
        let circuit = project_cycle(&map, &slice, &nodes)?;
        return Ok(FeasibilityReport {
            horizon,
            feasible: false,
            witness: None,
            blocking_circuit: Some(circuit),
        });
    }
    let star = &closure.star;
    let total = map.node_count();
    let mut rows = Vec::with_capacity(horizon);
    for level in 0..horizon {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let target = level * n + i;
            // star ⊗ all-zeros; the unit diagonal keeps every entry >= 0.
            let mut best = BigRational::zero();
            for source in 0..total {
                if let Some(w) = star.get(target, source).as_finite() {
                    if *w > best {
                        best = w.clone();
                    }
                }
            }
            row.push(best);
        }
        rows.push(row);
    }
    Ok(FeasibilityReport {
        horizon,
        feasible: true,
        witness: Some(Trajectory::new(rows)?),
        blocking_circuit: None,
    })
}

/// Finite-horizon feasibility stated directly on a net's places, with
/// arbitrary markings and no reduction step.
///
/// Each place contributes, for every level `k` it reaches inside the window,
/// a longest-path arc per bound; the nondecreasing rule adds zero-weight arcs
/// between consecutive levels. The system is feasible iff the constraint
/// graph has no positive cycle, decided here by Floyd-Warshall.
pub fn weak_feasible_net(net: &PTimeEventGraph, horizon: usize) -> Result<bool> {
    if horizon == 0 {
        return Err(Error::EmptyHorizon);
    }
    let n = net.n();
    let index = |i: usize, k: usize| (k - 1) * n + (i - 1);
    let mut arcs: Vec<(usize, usize, BigRational)> = Vec::new();
    for place in net.places() {
        for k in 1..=horizon.saturating_sub(place.marking) {
            let from = index(place.source, k);
            let to = index(place.target, k + place.marking);
            arcs.push((from, to, place.lower.clone()));
            if let Some(upper) = &place.upper {
                arcs.push((to, from, -upper));
            }
        }
    }
    for i in 1..=n {
        for k in 1..horizon {
            arcs.push((index(i, k), index(i, k + 1), BigRational::zero()));
        }
    }
    Ok(!has_positive_cycle(n * horizon, &arcs))
}

/// Longest-path Floyd-Warshall over explicit arcs; reports whether some node
/// lies on a positive-weight cycle. Exact: a positive closed walk implies a
/// positive elementary cycle, which the all-pairs pass exposes on a diagonal.
fn has_positive_cycle(count: usize, arcs: &[(usize, usize, BigRational)]) -> bool {
    let mut dist: Vec<Vec<Option<BigRational>>> = vec![vec![None; count]; count];
    for (from, to, weight) in arcs {
        let cell = &mut dist[*from][*to];
        if cell.as_ref().is_none_or(|cur| weight > cur) {
            *cell = Some(weight.clone());
        }
    }
    for mid in 0..count {
        let mid_row = dist[mid].clone();
        for row in dist.iter_mut() {
            let Some(head) = row[mid].clone() else {
                continue;
            };
            for (to, tail) in mid_row.iter().enumerate() {
                if let Some(tail) = tail {
                    let through = &head + tail;
                    if row[to].as_ref().is_none_or(|cur| through > *cur) {
                        row[to] = Some(through);
                    }
                }
            }
        }
    }
    (0..count).any(|v| dist[v][v].as_ref().is_some_and(|w| *w > BigRational::zero()))
}

/// Every elementary pseudo-circuit of the radius-`n` slice, grouped by the
/// base node and total shift it closes at.
///
/// A pseudo-circuit is a path from `(i, 0)` back to `(i, s)` whose slice
/// nodes are pairwise distinct except for the endpoints when `s = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircuitCatalog {
    groups: BTreeMap<(usize, i64), Vec<Path>>,
}

impl CircuitCatalog {
    /// Circuits closing at base `i` with total shift `s`, in discovery order.
    pub fn group(&self, base: usize, shift: i64) -> &[Path] {
        self.groups.get(&(base, shift)).map_or(&[], Vec::as_slice)
    }

    /// Best weight over the group, `None` when no circuit closes there.
    pub fn max_weight(&self, base: usize, shift: i64) -> Option<BigRational> {
        self.group(base, shift)
            .iter()
            .map(Path::weight)
            .reduce(|a, b| if b > a { b } else { a })
    }

    pub fn groups(&self) -> impl Iterator<Item = (&(usize, i64), &Vec<Path>)> {
        self.groups.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Total number of cataloged circuits across all groups.
    pub fn total(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    fn insert(&mut self, path: Path) {
        let key = (path.source(), path.shift());
        self.groups.entry(key).or_default().push(path);
    }
}

/// Exhaustively enumerates elementary pseudo-circuits of the radius-`n`
/// symmetric slice of `g`, up to `max_len` arcs each.
///
/// Enumeration is a depth-first walk from each `(i, 0)` that keeps slice
/// nodes distinct and records every return to base `i`, at any level. The
/// walk continues through recorded endpoints, so one traversal yields every
/// elementary pseudo-circuit at the base.
pub fn enumerate_pseudo_circuits(g: &StaticGraph, max_len: usize) -> Result<CircuitCatalog> {
    if max_len == 0 {
        return Err(Error::InvalidParameter {
            name: "max_len",
            reason: "must be at least 1".into(),
        });
    }
    let mut catalog = CircuitCatalog::default();
    let n = g.n();
    if n == 0 {
        return Ok(catalog);
    }
    let map = NodeIndexMap::new(n, SliceSpec::Symmetric { radius: n })?;
    let slice = build_slice(g, &map)?;
    let adjacency = slice_adjacency(&slice);
    let coords = flat_coordinates(&map)?;
    let mut steps = 0usize;
    for base in 1..=n {
        let origin = map.flat(base, 0)? - 1;
        let mut visited = vec![false; adjacency.len()];
        visited[origin] = true;
        let mut arcs = Vec::new();
        extend_pseudo_circuits(
            &adjacency,
            &coords,
            base,
            origin,
            origin,
            max_len,
            &mut visited,
            &mut arcs,
            &mut steps,
            &mut catalog,
        )?;
    }
    Ok(catalog)
}

#[allow(clippy::too_many_arguments)]
fn extend_pseudo_circuits(
    adjacency: &[Vec<(usize, BigRational)>],
    coords: &[(usize, i64)],
    base: usize,
    origin: usize,
    at: usize,
    max_len: usize,
    visited: &mut [bool],
    arcs: &mut Vec<Arc>,
    steps: &mut usize,
    catalog: &mut CircuitCatalog,
) -> Result<()> {
    if arcs.len() == max_len {
        return Ok(());
    }
    let (from_node, from_level) = coords[at];
    for (next, weight) in &adjacency[at] {
        *steps += 1;
        if *steps > ENUMERATION_STEP_LIMIT {
            return Err(Error::SizeGuard {
                what: "pseudo-circuit enumeration steps",
                found: *steps,
                limit: ENUMERATION_STEP_LIMIT,
            });
        }
        let (to_node, to_level) = coords[*next];
        let arc = Arc::new(from_node, to_node, to_level - from_level, weight.clone());
        if *next == origin {
            arcs.push(arc);
            catalog.insert(Path::new(base, arcs.clone())?);
            arcs.pop();
            continue;
        }
        if visited[*next] {
            continue;
        }
        arcs.push(arc);
        if to_node == base {
            catalog.insert(Path::new(base, arcs.clone())?);
        }
        visited[*next] = true;
        extend_pseudo_circuits(
            adjacency, coords, base, origin, *next, max_len, visited, arcs, steps, catalog,
        )?;
        visited[*next] = false;
        arcs.pop();
    }
    Ok(())
}

/// Elementary circuits of the static graph itself: closed arc sequences with
/// pairwise distinct transitions, each reported once, anchored at its
/// smallest transition.
pub fn enumerate_graph_circuits(g: &StaticGraph) -> Result<Vec<Path>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut steps = 0usize;
    for anchor in 1..=n {
        let mut visited = vec![false; n + 1];
        visited[anchor] = true;
        let mut arcs = Vec::new();
        extend_graph_circuits(g, anchor, anchor, &mut visited, &mut arcs, &mut steps, &mut out)?;
    }
    Ok(out)
}

fn extend_graph_circuits(
    g: &StaticGraph,
    anchor: usize,
    at: usize,
    visited: &mut [bool],
    arcs: &mut Vec<Arc>,
    steps: &mut usize,
    out: &mut Vec<Path>,
) -> Result<()> {
    for arc in g.arcs_from(at) {
        *steps += 1;
        if *steps > ENUMERATION_STEP_LIMIT {
            return Err(Error::SizeGuard {
                what: "graph circuit enumeration steps",
                found: *steps,
                limit: ENUMERATION_STEP_LIMIT,
            });
        }
        if arc.target == anchor {
            arcs.push(arc.clone());
            out.push(Path::new(anchor, arcs.clone())?);
            arcs.pop();
            continue;
        }
        if arc.target < anchor || visited[arc.target] {
            continue;
        }
        visited[arc.target] = true;
        arcs.push(arc.clone());
        extend_graph_circuits(g, anchor, arc.target, visited, arcs, steps, out)?;
        arcs.pop();
        visited[arc.target] = false;
    }
    Ok(())
}

/// Brute-force infinite-weight verdict for instances with at most
/// [`BRUTE_MAX_TRANSITIONS`] transitions.
///
/// Stage one looks for a positive circuit anywhere in the radius-`n` slice
/// by length-bounded walk iteration. Stage two scans pairs of
/// pseudo-circuit weights, the best per `(base, shift)` recomputed by the
/// same walk iteration, in the order `i1` ascending, `i2` ascending,
/// `s1 = 1..=n`, `s2 = -1, -2, ..., -n`, keeping pairs whose bases are
/// connected and whose combined gain `-s2*w1 + s1*w2` is positive. A found
/// pair is vetted by explicitly pumping it for [`PUMP_ROUNDS`] rounds
/// before it is returned.
pub fn brute_infinite_weight(
    m_minus: &TropicalMatrix,
    m_zero: &TropicalMatrix,
    m_plus: &TropicalMatrix,
) -> Result<InfWeightVerdict> {
    let graph = StaticGraph::from_matrices(m_minus, m_zero, m_plus)?;
    let n = graph.n();
    if n == 0 {
        return Ok(InfWeightVerdict::NoInfinitePath);
    }
    if n > BRUTE_MAX_TRANSITIONS {
        return Err(Error::SizeGuard {
            what: "brute-force transition count",
            found: n,
            limit: BRUTE_MAX_TRANSITIONS,
        });
    }
    let map = NodeIndexMap::new(n, SliceSpec::Symmetric { radius: n })?;
    let slice = build_slice(&graph, &map)?;
    let adjacency = slice_adjacency(&slice);
    if let Some(nodes) = shortest_positive_cycle(&adjacency) {
        let circuit = project_cycle(&map, &slice, &nodes)?;
        let node = nodes[0] + 1;
        let base = map.unflat(node)?;
        return Ok(InfWeightVerdict::InfiniteWeight(
            InfinitePathCertificate::PositiveCircuit(PositiveCircuitWitness {
                node,
                base,
                circuit,
            }),
        ));
    }
    let maxima = walk_maxima(&map, &adjacency, n)?;
    let reach = reachable_pairs(&graph);
    for i1 in 1..=n {
        for i2 in 1..=n {
            if !reach[i1 - 1][i2 - 1] {
                continue;
            }
            for s1 in 1..=n as i64 {
                let Some(w1) = maxima.get(&(i1, s1)).cloned() else {
                    continue;
                };
                for down in 1..=n as i64 {
                    let s2 = -down;
                    let Some(w2) = maxima.get(&(i2, s2)).cloned() else {
                        continue;
                    };
                    let gain = BigRational::from_integer(BigInt::from(down)) * &w1
                        + BigRational::from_integer(BigInt::from(s1)) * &w2;
                    if gain > BigRational::zero() {
                        let pair = PumpablePair { i1, s1, w1, i2, s2, w2 };
                        verify_pumping(&graph, &pair)?;
                        return Ok(InfWeightVerdict::InfiniteWeight(
                            InfinitePathCertificate::PumpablePair(pair),
                        ));
                    }
                }
            }
        }
    }
    Ok(InfWeightVerdict::NoInfinitePath)
}

/// Rebuilds the pair's explicit path family and checks that each extra round
/// of pumping adds exactly the advertised gain while the shift stays fixed.
fn verify_pumping(graph: &StaticGraph, pair: &PumpablePair) -> Result<()> {
    let expansion = pump_certificate(graph, pair)?;
    let base = expansion.path(0)?;
    let gain = expansion.gain_per_round();
    if gain <= BigRational::zero() {
        return Err(Error::InvalidCertificate {
            reason: format!("pump gain {gain} is not positive"),
        });
    }
    for rounds in 1..=PUMP_ROUNDS {
        let pumped = expansion.path(rounds)?;
        let expected = base.weight() + &gain * BigRational::from_integer(BigInt::from(rounds));
        if pumped.weight() != expected {
            return Err(Error::InvalidCertificate {
                reason: format!(
                    "pumping {rounds} rounds yields weight {}, expected {expected}",
                    pumped.weight()
                ),
            });
        }
        if pumped.shift() != base.shift() {
            return Err(Error::InvalidCertificate {
                reason: format!(
                    "pumping {rounds} rounds drifts the shift from {} to {}",
                    base.shift(),
                    pumped.shift()
                ),
            });
        }
    }
    Ok(())
}

/// Deterministic random net: every ordered transition pair receives a place
/// with probability `arc_density`; markings are uniform on
/// `0..=marking_max`; the lower bound is a half-integer uniform on
/// `[0, weight_range]`; the upper bound is absent with probability 1/4 and
/// otherwise the lower bound plus an independent half-integer from the same
/// range. Draws come from ChaCha8 seeded with `seed`, so equal arguments
/// rebuild the identical net.
pub fn random_instance(
    seed: u64,
    n: usize,
    arc_density: f64,
    weight_range: i64,
    marking_max: usize,
) -> Result<PTimeEventGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "need at least one transition".into(),
        });
    }
    if !(0.0..=1.0).contains(&arc_density) {
        return Err(Error::InvalidParameter {
            name: "arc_density",
            reason: format!("{arc_density} is not a probability"),
        });
    }
    if weight_range < 0 {
        return Err(Error::InvalidParameter {
            name: "weight_range",
            reason: format!("{weight_range} is negative"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = (1..=n).map(|i| format!("t{i}")).collect();
    let half = |halves: i64| BigRational::new(BigInt::from(halves), BigInt::from(2));
    let mut places = Vec::new();
    for source in 1..=n {
        for target in 1..=n {
            if !rng.gen_bool(arc_density) {
                continue;
            }
            let marking = rng.gen_range(0..=marking_max);
            let lower = half(rng.gen_range(0..=2 * weight_range));
            let upper = if rng.gen_bool(0.25) {
                None
            } else {
                Some(&lower + half(rng.gen_range(0..=2 * weight_range)))
            };
            places.push(Place::new(source, target, marking, lower, upper));
        }
    }
    PTimeEventGraph::new(names, places)
}

/// Outgoing arcs per 0-based slice node, targets ascending; the slice matrix
/// stores an arc source -> target at (row target, column source).
fn slice_adjacency(slice: &TropicalMatrix) -> Vec<Vec<(usize, BigRational)>> {
    let count = slice.rows();
    let mut adjacency = vec![Vec::new(); count];
    for (source, out) in adjacency.iter_mut().enumerate() {
        for target in 0..count {
            if let Some(w) = slice.get(target, source).as_finite() {
                out.push((target, w.clone()));
            }
        }
    }
    adjacency
}

fn flat_coordinates(map: &NodeIndexMap) -> Result<Vec<(usize, i64)>> {
    (1..=map.node_count()).map(|flat| map.unflat(flat)).collect()
}

/// Finds a positive-weight cycle by exact-length walk iteration: a shortest
/// positive closed walk cannot revisit a node (splitting it at the repeat
/// would leave a shorter positive closed walk), so scanning lengths
/// `1..=count` in order returns an elementary cycle or proves none exists.
/// Nodes come back in walk order, starting at the closing node.
fn shortest_positive_cycle(adjacency: &[Vec<(usize, BigRational)>]) -> Option<Vec<usize>> {
    let count = adjacency.len();
    let zero = BigRational::zero();
    // best[v][u]: maximum weight of a walk v -> u of the current exact length
    let mut best: Vec<Vec<Option<BigRational>>> = vec![vec![None; count]; count];
    for (v, row) in best.iter_mut().enumerate() {
        row[v] = Some(zero.clone());
    }
    for length in 1..=count {
        let mut next: Vec<Vec<Option<BigRational>>> = vec![vec![None; count]; count];
        for v in 0..count {
            for u in 0..count {
                let Some(weight) = &best[v][u] else {
                    continue;
                };
                for (to, arc_weight) in &adjacency[u] {
                    let extended = weight + arc_weight;
                    if next[v][*to].as_ref().is_none_or(|cur| extended > *cur) {
                        next[v][*to] = Some(extended);
                    }
                }
            }
        }
        best = next;
        for (v, row) in best.iter().enumerate() {
            if row[v].as_ref().is_some_and(|w| *w > zero) {
                return Some(rebuild_closed_walk(adjacency, v, length));
            }
        }
    }
    None
}

/// Replays the exact-length maxima from `start` with parent pointers and
/// backtracks the best closed walk of `length` arcs.
fn rebuild_closed_walk(
    adjacency: &[Vec<(usize, BigRational)>],
    start: usize,
    length: usize,
) -> Vec<usize> {
    let count = adjacency.len();
    let mut weights: Vec<Vec<Option<BigRational>>> = vec![vec![None; count]; length + 1];
    let mut parents: Vec<Vec<Option<usize>>> = vec![vec![None; count]; length + 1];
    weights[0][start] = Some(BigRational::zero());
    for step in 1..=length {
        for u in 0..count {
            let Some(weight) = weights[step - 1][u].clone() else {
                continue;
            };
            for (to, arc_weight) in &adjacency[u] {
                let extended = &weight + arc_weight;
                if weights[step][*to].as_ref().is_none_or(|cur| extended > *cur) {
                    weights[step][*to] = Some(extended);
                    parents[step][*to] = Some(u);
                }
            }
        }
    }
    let mut nodes = Vec::with_capacity(length);
    let mut at = start;
    for step in (1..=length).rev() {
        let parent = parents[step][at].expect("walk of this length was found");
        nodes.push(parent);
        at = parent;
    }
    nodes.reverse();
    nodes
}

/// Best walk weight from `(i, 0)` to every `(i, s)` in the slice, by walk
/// iteration up to the node count. Without positive circuits these maxima
/// are attained by elementary pseudo-circuits, so they equal the closure's
/// pseudo-circuit table.
fn walk_maxima(
    map: &NodeIndexMap,
    adjacency: &[Vec<(usize, BigRational)>],
    n: usize,
) -> Result<BTreeMap<(usize, i64), BigRational>> {
    let count = adjacency.len();
    let mut out = BTreeMap::new();
    for i in 1..=n {
        let origin = map.flat(i, 0)? - 1;
        let mut current: Vec<Option<BigRational>> = vec![None; count];
        current[origin] = Some(BigRational::zero());
        let mut overall = current.clone();
        for _ in 1..=count {
            let mut next: Vec<Option<BigRational>> = vec![None; count];
            for u in 0..count {
                let Some(weight) = &current[u] else {
                    continue;
                };
                for (to, arc_weight) in &adjacency[u] {
                    let extended = weight + arc_weight;
                    if next[*to].as_ref().is_none_or(|cur| extended > *cur) {
                        next[*to] = Some(extended);
                    }
                }
            }
            for (cell, cand) in overall.iter_mut().zip(&next) {
                if let Some(cand) = cand {
                    if cell.as_ref().is_none_or(|cur| cand > cur) {
                        *cell = Some(cand.clone());
                    }
                }
            }
            current = next;
        }
        for s in -(n as i64)..=n as i64 {
            let flat = map.flat(i, s)? - 1;
            if let Some(weight) = &overall[flat] {
                out.insert((i, s), weight.clone());
            }
        }
    }
    Ok(out)
}

/// Lifts a cycle over 0-based slice nodes back to a static-graph path whose
/// arcs carry the level differences as shifts.
fn project_cycle(
    map: &NodeIndexMap,
    slice: &TropicalMatrix,
    nodes: &[usize],
) -> Result<Path> {
    let coords: Vec<(usize, i64)> = nodes
        .iter()
        .map(|flat| map.unflat(flat + 1))
        .collect::<Result<_>>()?;
    let mut arcs = Vec::with_capacity(nodes.len());
    for at in 0..nodes.len() {
        let (from_node, from_level) = coords[at];
        let next = (at + 1) % nodes.len();
        let (to_node, to_level) = coords[next];
        let weight = slice
            .get(nodes[next], nodes[at])
            .as_finite()
            .cloned()
            .ok_or_else(|| Error::InvalidCertificate {
                reason: "cycle uses an arc missing from the slice".into(),
            })?;
        arcs.push(Arc::new(from_node, to_node, to_level - from_level, weight));
    }
    Path::new(coords[0].0, arcs)
}

/// Reflexive reachability over transitions by depth-first search,
/// `reach[i-1][j-1]` meaning `j` is reachable from `i`.
fn reachable_pairs(g: &StaticGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    (1..=n)
        .map(|from| {
            let mut seen = vec![false; n + 1];
            seen[from] = true;
            let mut stack = vec![from];
            while let Some(at) = stack.pop() {
                for arc in g.arcs_from(at) {
                    if !seen[arc.target] {
                        seen[arc.target] = true;
                        stack.push(arc.target);
                    }
                }
            }
            (1..=n).map(|to| seen[to]).collect()
        })
        .collect()
}
