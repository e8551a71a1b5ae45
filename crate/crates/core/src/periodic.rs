//! Finite slices of the level-expanded graph and the infinite-weight test.
//!
//! Replicating each node `i` of a static graph across integer levels `k`,
//! with every shift-`s` arc connecting `(i, k)` to `(j, k + s)`, produces a
//! periodic graph. The constraint system behind the graph is consistent
//! exactly when no family of paths between level-pinned node pairs has
//! unbounded weight. Unbounded weight arises in precisely two shapes, both
//! visible inside a slice spanning levels `-n ..= n`:
//!
//! * a circuit whose total shift is 0 and whose weight is positive, or
//! * a pumpable pair of pseudo-circuits: one climbing (`s1 > 0`, weight
//!   `w1`), one descending (`s2 < 0`, weight `w2`), joined by a connecting
//!   path, with `-s2*w1 + s1*w2 > 0`. Repeating the climb `-s2` times and
//!   the descent `s1` times keeps the total shift fixed while adding that
//!   positive amount to the weight on every round.
//!
//! [`detect_infinite_weight`] decides which case holds and returns a
//! checkable certificate; [`pump_certificate`] expands a pumpable pair into
//! the explicit path family.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::maxplus::{scale_finite_entries, ScaledWeight};
use crate::maxplus::{ExtendedRational, TropicalMatrix};
use crate::staticgraph::{Arc, BooleanMatrix, Path, StaticGraph};
use crate::{Error, Result};

/// Which window of levels a slice covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceSpec {
    /// Levels `-radius ..= radius`; the window the decision procedure uses.
    Symmetric { radius: usize },
    /// Levels `1 ..= depth`; the window trajectory prefixes live in.
    Natural { depth: usize },
}

/// Bijection between slice nodes `(i, k)` and flat 1-based indices.
///
/// Nodes are numbered level by level from the lowest level up, inner index
/// first: flat `1` is `(1, lowest)`, flat `2` is `(2, lowest)`, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeIndexMap {
    n: usize,
    spec: SliceSpec,
}

impl NodeIndexMap {
    pub fn new(n: usize, spec: SliceSpec) -> Result<Self> {
        let empty = n == 0
            || match spec {
                SliceSpec::Natural { depth } => depth == 0,
                SliceSpec::Symmetric { .. } => false,
            };
        if empty {
            return Err(Error::EmptySlice);
        }
        Ok(NodeIndexMap { n, spec })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> SliceSpec {
        self.spec
    }

    pub fn levels(&self) -> RangeInclusive<i64> {
        match self.spec {
            SliceSpec::Symmetric { radius } => -(radius as i64)..=radius as i64,
            SliceSpec::Natural { depth } => 1..=depth as i64,
        }
    }

    pub fn node_count(&self) -> usize {
        let levels = *self.levels().end() - *self.levels().start() + 1;
        self.n * levels as usize
    }

    pub fn contains_level(&self, k: i64) -> bool {
        self.levels().contains(&k)
    }

    pub fn flat(&self, i: usize, k: i64) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::NodeOutOfRange { node: i, n: self.n });
        }
        if !self.contains_level(k) {
            return Err(Error::LevelOutOfRange { level: k });
        }
        let offset = (k - self.levels().start()) as usize;
        Ok(i + self.n * offset)
    }

    pub fn unflat(&self, flat: usize) -> Result<(usize, i64)> {
        if flat == 0 || flat > self.node_count() {
            return Err(Error::NodeOutOfRange { node: flat, n: self.node_count() });
        }
        let i = (flat - 1) % self.n + 1;
        let offset = ((flat - 1) / self.n) as i64;
        Ok((i, self.levels().start() + offset))
    }

    /// Human-readable node name, `"(i,k)"`.
    pub fn label(&self, flat: usize) -> Result<String> {
        let (i, k) = self.unflat(flat)?;
        Ok(format!("({i},{k})"))
    }
}

/// Adjacency matrix of the slice of `g` described by `map`: every arc of
/// `g` is copied to each pair of levels it connects inside the window.
pub fn build_slice(g: &StaticGraph, map: &NodeIndexMap) -> Result<TropicalMatrix> {
    if g.n() != map.n() {
        return Err(Error::InvalidParameter {
            name: "slice map",
            reason: format!("map is over {} nodes, graph has {}", map.n(), g.n()),
        });
    }
    let count = map.node_count();
    let mut m = TropicalMatrix::all_neg_inf(count, count);
    for arc in g.arcs() {
        for k in map.levels() {
            let k_to = k + arc.shift;
            if !map.contains_level(k_to) {
                continue;
            }
            let col = map.flat(arc.source, k)? - 1;
            let row = map.flat(arc.target, k_to)? - 1;
            let v = m.get(row, col).oplus(&ExtendedRational::Finite(arc.weight.clone()));
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Maximum weights `w(i, s)` of slice paths from `(i, 0)` to `(i, s)` for
/// `s` in `-n ..= n`, read off the star of a symmetric slice of radius at
/// least `n`. Such a path projects to a closed walk at node `i` whose total
/// shift is `s`: a pseudo-circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCircuitTable {
    n: usize,
    values: BTreeMap<(usize, i64), ExtendedRational>,
}

impl PseudoCircuitTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, s: i64) -> Result<&ExtendedRational> {
        match self.values.get(&(i, s)) {
            Some(v) => Ok(v),
            None if i == 0 || i > self.n => Err(Error::NodeOutOfRange { node: i, n: self.n }),
            None => Err(Error::LevelOutOfRange { level: s }),
        }
    }

    fn value(&self, i: usize, s: i64) -> &ExtendedRational {
        &self.values[&(i, s)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, &ExtendedRational)> {
        self.values.iter().map(|(&(i, s), v)| (i, s, v))
    }
}

/// Builds the pseudo-circuit table from the star of a symmetric slice.
pub fn pseudo_circuit_table(star: &TropicalMatrix, map: &NodeIndexMap) -> Result<PseudoCircuitTable> {
    let n = map.n();
    let radius = match map.spec() {
        SliceSpec::Symmetric { radius } => radius,
        SliceSpec::Natural { .. } => {
            return Err(Error::InvalidParameter {
                name: "slice map",
                reason: "pseudo-circuit table needs a symmetric slice".into(),
            })
        }
    };
    if radius < n {
        return Err(Error::InvalidParameter {
            name: "radius",
            reason: format!("radius {radius} is below the node count {n}"),
        });
    }
    if star.rows() != map.node_count() {
        return Err(Error::InvalidParameter {
            name: "star",
            reason: format!("star is {}x{}, slice has {} nodes", star.rows(), star.cols(), map.node_count()),
        });
    }
    let mut values = BTreeMap::new();
    for i in 1..=n {
        let col = map.flat(i, 0)? - 1;
        for s in -(n as i64)..=n as i64 {
            let row = map.flat(i, s)? - 1;
            values.insert((i, s), star.get(row, col).clone());
        }
    }
    Ok(PseudoCircuitTable { n, values })
}

/// A climbing and a descending pseudo-circuit whose combination pumps
/// weight: `-s2*w1 + s1*w2 > 0` with a path from `i1` to `i2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpablePair {
    pub i1: usize,
    pub s1: i64,
    pub w1: BigRational,
    pub i2: usize,
    pub s2: i64,
    pub w2: BigRational,
}

impl PumpablePair {
    /// Weight gained per pumping round, `-s2*w1 + s1*w2`; positive by
    /// construction.
    pub fn gain(&self) -> BigRational {
        BigRational::from_integer((-self.s2).into()) * &self.w1
            + BigRational::from_integer(self.s1.into()) * &self.w2
    }
}

impl Serialize for PumpablePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PumpablePair", 7)?;
        s.serialize_field("i1", &self.i1)?;
        s.serialize_field("s1", &self.s1)?;
        s.serialize_field("w1", &ExtendedRational::Finite(self.w1.clone()).to_string())?;
        s.serialize_field("i2", &self.i2)?;
        s.serialize_field("s2", &self.s2)?;
        s.serialize_field("w2", &ExtendedRational::Finite(self.w2.clone()).to_string())?;
        s.serialize_field("gain", &ExtendedRational::Finite(self.gain()).to_string())?;
        s.end()
    }
}

/// A circuit with total shift 0 and positive weight, along with the slice
/// node it was found at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveCircuitWitness {
    /// Flat index of the slice node the circuit starts from.
    pub node: usize,
    /// The same node as `(base node, level)`.
    pub base: (usize, i64),
    /// The circuit projected back onto the static graph; shift sums to 0
    /// and the weight is positive, so repeating it pumps weight in place.
    pub circuit: Path,
}

/// Why the periodic graph carries infinite weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinitePathCertificate {
    PositiveCircuit(PositiveCircuitWitness),
    PumpablePair(PumpablePair),
}

impl Serialize for InfinitePathCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InfinitePathCertificate", 2)?;
        match self {
            InfinitePathCertificate::PositiveCircuit(w) => {
                s.serialize_field("kind", "positive_circuit")?;
                s.serialize_field("witness", w)?;
            }
            InfinitePathCertificate::PumpablePair(p) => {
                s.serialize_field("kind", "pumpable_pair")?;
                s.serialize_field("pair", p)?;
            }
        }
        s.end()
    }
}

/// Outcome of the infinite-weight decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfWeightVerdict {
    /// All path families between level-pinned node pairs have bounded
    /// weight; the underlying constraint system is consistent.
    NoInfinitePath,
    InfiniteWeight(InfinitePathCertificate),
}

impl InfWeightVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, InfWeightVerdict::InfiniteWeight(_))
    }
}

/// Verdict plus the intermediate data the scan ran on.
#[derive(Clone, Debug)]
pub struct InfiniteWeightAnalysis {
    pub verdict: InfWeightVerdict,
    /// Present when no positive circuit exists (the table is meaningless
    /// otherwise: star entries blow up to `+inf`).
    pub table: Option<PseudoCircuitTable>,
    /// Pumpable pairs in scan order: all of them when `exhaustive`, at most
    /// the first otherwise. Empty when a positive circuit was found.
    pub pairs: Vec<PumpablePair>,
}

/// Decides infinite weight for the periodic graph over `g`.
///
/// Builds the symmetric slice of radius `n`, takes its star, and either
/// extracts a positive circuit or scans pseudo-circuit pairs. The scan
/// visits `i1` ascending, then `i2` ascending, then `s1 = 1..=n`, then `s2`
/// by increasing magnitude, and keeps the first hit (all hits when
/// `exhaustive`), so certificates are deterministic.
pub fn analyze_infinite_weight(g: &StaticGraph, exhaustive: bool) -> Result<InfiniteWeightAnalysis> {
    let n = g.n();
    let map = NodeIndexMap::new(n, SliceSpec::Symmetric { radius: n })?;
    let slice = build_slice(g, &map)?;
    let sr = slice.kleene_star()?;

    if !sr.positive_circuit_nodes.is_empty() {
        let cycle = extract_positive_cycle(&slice)?;
        let witness = positive_circuit_witness(&slice, &map, cycle)?;
        return Ok(InfiniteWeightAnalysis {
            verdict: InfWeightVerdict::InfiniteWeight(InfinitePathCertificate::PositiveCircuit(
                witness,
            )),
            table: None,
            pairs: Vec::new(),
        });
    }

    let table = pseudo_circuit_table(&sr.star, &map)?;
    let hstar = g.reachability_closure();
    let pairs = scan_pumpable(&table, &hstar, exhaustive);
    let verdict = match pairs.first() {
        Some(pair) => {
            InfWeightVerdict::InfiniteWeight(InfinitePathCertificate::PumpablePair(pair.clone()))
        }
        None => InfWeightVerdict::NoInfinitePath,
    };
    Ok(InfiniteWeightAnalysis { verdict, table: Some(table), pairs })
}

pub fn detect_infinite_weight(g: &StaticGraph) -> Result<InfWeightVerdict> {
    Ok(analyze_infinite_weight(g, false)?.verdict)
}

fn scan_pumpable(
    table: &PseudoCircuitTable,
    hstar: &BooleanMatrix,
    exhaustive: bool,
) -> Vec<PumpablePair> {
    let n = table.n();
    let mut out = Vec::new();
    for i1 in 1..=n {
        for i2 in 1..=n {
            if !hstar.get(i2 - 1, i1 - 1) {
                continue;
            }
            for s1 in 1..=n as i64 {
                let Some(w1) = table.value(i1, s1).as_finite() else { continue };
                for magnitude in 1..=n as i64 {
                    let s2 = -magnitude;
                    let Some(w2) = table.value(i2, s2).as_finite() else { continue };
                    let gain = BigRational::from_integer(magnitude.into()) * w1
                        + BigRational::from_integer(s1.into()) * w2;
                    if gain.is_positive() {
                        out.push(PumpablePair {
                            i1,
                            s1,
                            w1: w1.clone(),
                            i2,
                            s2,
                            w2: w2.clone(),
                        });
                        if !exhaustive {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// The explicit path family a pumpable pair generates: round `h` is
/// `q1^(h*steps.0) connector q2^(h*steps.1)`, whose shift stays at
/// `base_shift` while the weight grows by `gain_per_round` every round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpExpansion {
    pub q1: Path,
    pub connector: Path,
    pub q2: Path,
    pub base_shift: i64,
    /// Repetitions added per round: `(-s2)` of `q1` and `s1` of `q2`.
    pub steps: (usize, usize),
}

impl PumpExpansion {
    pub fn path(&self, rounds: usize) -> Result<Path> {
        let climb = self.q1.repeat(rounds * self.steps.0)?;
        let descent = self.q2.repeat(rounds * self.steps.1)?;
        climb.concat(&self.connector)?.concat(&descent)
    }

    pub fn gain_per_round(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.steps.0)) * self.q1.weight()
            + BigRational::from_integer(BigInt::from(self.steps.1)) * self.q2.weight()
    }
}

/// Rebuilds explicit paths behind a pumpable pair and re-derives the pair
/// from scratch, rejecting any mismatch with [`Error::InvalidCertificate`].
pub fn pump_certificate(g: &StaticGraph, pair: &PumpablePair) -> Result<PumpExpansion> {
    let n = g.n();
    let reject = |reason: String| Error::InvalidCertificate { reason };
    if pair.i1 == 0 || pair.i1 > n || pair.i2 == 0 || pair.i2 > n {
        return Err(reject(format!("nodes ({}, {}) out of range 1..={n}", pair.i1, pair.i2)));
    }
    if !(1..=n as i64).contains(&pair.s1) || !(-(n as i64)..=-1).contains(&pair.s2) {
        return Err(reject(format!("shifts ({}, {}) out of range", pair.s1, pair.s2)));
    }
    if !pair.gain().is_positive() {
        return Err(reject(format!("gain {} is not positive", pair.gain())));
    }
    if !g.reachability_closure().get(pair.i2 - 1, pair.i1 - 1) {
        return Err(reject(format!("no path from {} to {}", pair.i1, pair.i2)));
    }

    let map = NodeIndexMap::new(n, SliceSpec::Symmetric { radius: n })?;
    let slice = build_slice(g, &map)?;
    let sr = slice.kleene_star()?;
    if !sr.positive_circuit_nodes.is_empty() {
        return Err(reject("graph has a positive circuit; pumping does not apply".into()));
    }
    let table = pseudo_circuit_table(&sr.star, &map)?;
    if table.value(pair.i1, pair.s1) != &ExtendedRational::Finite(pair.w1.clone()) {
        return Err(reject(format!(
            "climbing weight mismatch: table has {}, certificate claims {}",
            table.value(pair.i1, pair.s1),
            ExtendedRational::Finite(pair.w1.clone())
        )));
    }
    if table.value(pair.i2, pair.s2) != &ExtendedRational::Finite(pair.w2.clone()) {
        return Err(reject(format!(
            "descending weight mismatch: table has {}, certificate claims {}",
            table.value(pair.i2, pair.s2),
            ExtendedRational::Finite(pair.w2.clone())
        )));
    }

    let q1 = reconstruct_max_path(
        &slice,
        &map,
        &sr.star,
        map.flat(pair.i1, 0)?,
        map.flat(pair.i1, pair.s1)?,
    )?;
    let q2 = reconstruct_max_path(
        &slice,
        &map,
        &sr.star,
        map.flat(pair.i2, 0)?,
        map.flat(pair.i2, pair.s2)?,
    )?;
    let connector = shortest_hop_path(g, pair.i1, pair.i2)?;

    let consistent = q1.source() == pair.i1
        && q1.target() == pair.i1
        && q1.shift() == pair.s1
        && q1.weight() == pair.w1
        && q2.source() == pair.i2
        && q2.target() == pair.i2
        && q2.shift() == pair.s2
        && q2.weight() == pair.w2;
    if !consistent {
        return Err(reject("reconstructed pseudo-circuits disagree with the pair".into()));
    }

    Ok(PumpExpansion {
        base_shift: connector.shift(),
        steps: ((-pair.s2) as usize, pair.s1 as usize),
        q1,
        connector,
        q2,
    })
}

/// GraphViz rendering of a slice, nodes labeled `(i,k)`.
pub fn slice_to_dot(map: &NodeIndexMap, slice: &TropicalMatrix) -> Result<String> {
    if slice.rows() != map.node_count() || slice.cols() != map.node_count() {
        return Err(Error::InvalidParameter {
            name: "slice",
            reason: format!("matrix is {}x{}, map has {} nodes", slice.rows(), slice.cols(), map.node_count()),
        });
    }
    let mut out = String::from("digraph slice {\n  rankdir=LR;\n");
    for flat in 1..=map.node_count() {
        let _ = writeln!(out, "  \"{}\";", map.label(flat)?);
    }
    for (row, col, w) in slice.iter() {
        if !w.is_neg_inf() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                map.label(col + 1)?,
                map.label(row + 1)?,
                w
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

// --- certificate extraction internals ---

/// Weight of the closed walk `cycle[0] -> cycle[1] -> ... -> cycle[0]`
/// (flat 0-based nodes); `None` if some step has no arc.
fn cycle_weight(slice: &TropicalMatrix, cycle: &[usize]) -> Option<BigRational> {
    let mut total = BigRational::zero();
    for (pos, &u) in cycle.iter().enumerate() {
        let v = cycle[(pos + 1) % cycle.len()];
        total += slice.get(v, u).as_finite()?;
    }
    Some(total)
}

/// Finds a positive-weight cycle of the slice, as flat 0-based nodes in
/// forward order. Only called when the star says one exists.
fn extract_positive_cycle(slice: &TropicalMatrix) -> Result<Vec<usize>> {
    let count = slice.rows();
    let (_, scaled) = scale_finite_entries(slice)?;
    let verify =
        |cycle: &[usize]| cycle_weight(slice, cycle).is_some_and(|w| w.is_positive());

    let small: Option<Vec<(usize, usize, i64)>> = scaled
        .iter()
        .enumerate()
        .filter_map(|(idx, o)| o.as_ref().map(|w| (idx, w)))
        .map(|(idx, w)| w.to_i64().map(|w| (idx % count, idx / count, w)))
        .collect();
    if let Some(arcs) = small {
        match bellman_positive_cycle(count, &arcs, &verify) {
            BfOutcome::Cycle(c) => return Ok(c),
            BfOutcome::Overflow => {}
            BfOutcome::Stable | BfOutcome::GaveUp => {
                return Err(Error::InvalidCertificate {
                    reason: "positive circuit extraction failed".into(),
                })
            }
        }
    }

    let arcs: Vec<(usize, usize, BigInt)> = scaled
        .iter()
        .enumerate()
        .filter_map(|(idx, o)| o.as_ref().map(|w| (idx % count, idx / count, w.clone())))
        .collect();
    match bellman_positive_cycle(count, &arcs, &verify) {
        BfOutcome::Cycle(c) => Ok(c),
        _ => Err(Error::InvalidCertificate { reason: "positive circuit extraction failed".into() }),
    }
}

enum BfOutcome {
    Overflow,
    Stable,
    Cycle(Vec<usize>),
    GaveUp,
}

/// Longest-path relaxation from an implicit everywhere-zero source. Once
/// values stop stabilizing, a vertex relaxed in a late pass has a cycle in
/// its predecessor chain; candidates are checked with `verify` against the
/// exact weights, so a returned cycle is always genuinely positive.
fn bellman_positive_cycle<T: ScaledWeight>(
    count: usize,
    arcs: &[(usize, usize, T)],
    verify: &dyn Fn(&[usize]) -> bool,
) -> BfOutcome {
    if count == 0 {
        return BfOutcome::Stable;
    }
    let mut dist: Vec<T> = (0..count).map(|_| T::zero()).collect();
    let mut pred: Vec<Option<usize>> = vec![None; count];
    for pass in 1..=4 * count + 4 {
        let mut last_relaxed = None;
        for &(u, v, ref w) in arcs {
            let Some(cand) = dist[u].checked_add(w) else { return BfOutcome::Overflow };
            if cand > dist[v] {
                dist[v] = cand;
                pred[v] = Some(u);
                last_relaxed = Some(v);
            }
        }
        let Some(v) = last_relaxed else { return BfOutcome::Stable };
        if pass < count {
            continue;
        }
        if let Some(cycle) = predecessor_cycle(count, &pred, v) {
            if verify(&cycle) {
                return BfOutcome::Cycle(cycle);
            }
        }
    }
    BfOutcome::GaveUp
}

/// Walks `count` predecessor steps from `start` to land inside a cycle of
/// the predecessor chain, then collects that cycle in forward arc order,
/// rotated so the smallest flat node comes first.
fn predecessor_cycle(count: usize, pred: &[Option<usize>], start: usize) -> Option<Vec<usize>> {
    let mut y = start;
    for _ in 0..count {
        y = pred[y]?;
    }
    let mut backward = vec![y];
    let mut x = pred[y]?;
    while x != y {
        backward.push(x);
        x = pred[x]?;
        if backward.len() > count {
            return None;
        }
    }
    backward.reverse();
    backward.rotate_right(1);
    let min_pos = backward
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(pos, _)| pos)?;
    backward.rotate_left(min_pos);
    Some(backward)
}

/// Projects a closed slice walk onto the static graph.
fn positive_circuit_witness(
    slice: &TropicalMatrix,
    map: &NodeIndexMap,
    cycle: Vec<usize>,
) -> Result<PositiveCircuitWitness> {
    let node = cycle[0] + 1;
    let base = map.unflat(node)?;
    let mut closed = cycle.clone();
    closed.push(cycle[0]);
    let circuit = project_flat_walk(slice, map, &closed)?;
    if !circuit.is_circuit() || circuit.shift() != 0 || !circuit.weight().is_positive() {
        return Err(Error::InvalidCertificate {
            reason: "extracted circuit fails its own checks".into(),
        });
    }
    Ok(PositiveCircuitWitness { node, base, circuit })
}

/// Turns a sequence of flat 0-based slice nodes into a static-graph path,
/// taking each step's weight from the slice matrix.
fn project_flat_walk(slice: &TropicalMatrix, map: &NodeIndexMap, flats: &[usize]) -> Result<Path> {
    let (first, _) = map.unflat(flats[0] + 1)?;
    let mut arcs = Vec::with_capacity(flats.len().saturating_sub(1));
    for pair in flats.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let (bu, ku) = map.unflat(u + 1)?;
        let (bv, kv) = map.unflat(v + 1)?;
        let w = slice.get(v, u).as_finite().ok_or(Error::NonFiniteArcWeight)?;
        arcs.push(Arc::new(bu, bv, kv - ku, w.clone()));
    }
    Path::new(first, arcs)
}

/// Rebuilds a maximum-weight slice path `from -> to` (1-based flat nodes)
/// out of a positive-circuit-free star: breadth-first hop counts over the
/// arcs that attain the star values, then a hop-descending walk back from
/// the target choosing the smallest predecessor at every step.
fn reconstruct_max_path(
    slice: &TropicalMatrix,
    map: &NodeIndexMap,
    star: &TropicalMatrix,
    from: usize,
    to: usize,
) -> Result<Path> {
    let count = map.node_count();
    let t = from - 1;
    let m = to - 1;
    let best = |v: usize| star.get(v, t);
    if !best(m).is_finite() {
        return Err(Error::InvalidCertificate {
            reason: format!("target {} is not reachable with finite weight", map.label(to)?),
        });
    }
    let tight = |u: usize, v: usize| -> bool {
        let w = slice.get(v, u);
        w.is_finite() && best(u).is_finite() && &best(u).otimes(w) == best(v)
    };

    let mut hop: Vec<Option<usize>> = vec![None; count];
    hop[t] = Some(0);
    let mut queue = VecDeque::from([t]);
    while let Some(u) = queue.pop_front() {
        for v in 0..count {
            if hop[v].is_none() && tight(u, v) {
                hop[v] = Some(hop[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }

    let mut rev = vec![m];
    let mut cur = m;
    while cur != t {
        let h = hop[cur].ok_or_else(|| Error::InvalidCertificate {
            reason: "no tight route reaches the target".into(),
        })?;
        let prev = (0..count)
            .find(|&u| hop[u] == Some(h - 1) && tight(u, cur))
            .ok_or_else(|| Error::InvalidCertificate {
                reason: "tight chain broke during reconstruction".into(),
            })?;
        rev.push(prev);
        cur = prev;
    }
    rev.reverse();
    project_flat_walk(slice, map, &rev)
}

/// Fewest-hop static-graph path `from -> to`, empty when they coincide.
fn shortest_hop_path(g: &StaticGraph, from: usize, to: usize) -> Result<Path> {
    if from == to {
        return Ok(Path::empty(from));
    }
    let mut pred: Vec<Option<Arc>> = vec![None; g.n() + 1];
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for arc in g.arcs_from(u) {
            if arc.target != from && pred[arc.target].is_none() {
                pred[arc.target] = Some(arc.clone());
                queue.push_back(arc.target);
            }
        }
        if pred[to].is_some() {
            break;
        }
    }
    let mut arcs = Vec::new();
    let mut cur = to;
    while cur != from {
        let arc = pred[cur].clone().ok_or_else(|| Error::InvalidCertificate {
            reason: format!("no path from {from} to {to}"),
        })?;
        cur = arc.source;
        arcs.push(arc);
    }
    arcs.reverse();
    Path::new(from, arcs)
}
