//! Nets of timed transitions whose places carry an interval time window.
//!
//! A net has `n` transitions and a list of places. A place from transition
//! `i` to transition `j` with marking `m` and window `[a, b]` constrains every
//! schedule `x`: for all `k >= 1` with `k + m` inside the horizon,
//!
//! ```text
//! x_i(k) + a  <=  x_j(k + m)  <=  x_i(k) + b
//! ```
//!
//! where `x_i(k)` is the date of the `k`-th firing of transition `i`, and
//! firing dates of each transition are nondecreasing. The net is consistent
//! when one schedule satisfies every constraint at every horizon.
//!
//! The pipeline reduces the question to infinite-weight path detection:
//!
//! 1. [`PTimeEventGraph::normalize_marking`] rewrites every marking into
//!    `{0, 1}` by splitting multi-token places into unit chains.
//! 2. [`PTimeEventGraph::to_characteristic`] collects the strongest lower
//!    bounds (max-plus matrices `A0`, `A1`) and upper bounds (min-plus
//!    matrices `B0`, `B1`) per marking level.
//! 3. [`characteristic_to_m`] folds the four matrices into three max-plus
//!    matrices `M_minus`, `M_zero`, `M_plus` whose induced periodic graph has
//!    an infinite-weight path exactly when the net is inconsistent.
//! 4. [`check_matrices`] runs the detector and, in the consistent case,
//!    constructs a finite schedule prefix from a sliced closure.
//!
//! Indices are 1-based everywhere a transition or place number crosses the
//! API boundary.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::Zero;
use num::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::maxplus::{ExtendedRational, TropicalMatrix};
use crate::periodic::{
    build_slice, detect_infinite_weight, InfWeightVerdict, InfinitePathCertificate, NodeIndexMap,
    SliceSpec,
};
use crate::staticgraph::StaticGraph;
use crate::{Error, Result};

/// Default schedule prefix length used by consistency checks.
pub const DEFAULT_HORIZON: usize = 10;

/// Marking normalization refuses to materialize more chain transitions than
/// this; larger markings are almost certainly input mistakes.
const MAX_CHAIN_TRANSITIONS: usize = 4096;

/// Witness construction retries with doubled slice depth this many times in
/// total before giving up.
const WITNESS_ATTEMPTS: usize = 4;

/// One place: an arc between transitions carrying tokens and a time window.
///
/// `upper == None` means the window is unbounded above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub source: usize,
    pub target: usize,
    pub marking: usize,
    pub lower: BigRational,
    pub upper: Option<BigRational>,
}

impl Place {
    pub fn new(
        source: usize,
        target: usize,
        marking: usize,
        lower: BigRational,
        upper: Option<BigRational>,
    ) -> Self {
        Self { source, target, marking, lower, upper }
    }
}

/// A net with named transitions and interval-timed places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTimeEventGraph {
    names: Vec<String>,
    places: Vec<Place>,
}

impl PTimeEventGraph {
    /// Validates names and places. Place endpoints are 1-based transition
    /// indices; lower bounds must be nonnegative and not exceed the upper
    /// bound of the same place.
    pub fn new(transitions: Vec<String>, places: Vec<Place>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::InvalidParameter {
                name: "transitions",
                reason: "at least one transition is required".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for name in &transitions {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateTransition { name: name.clone() });
            }
        }
        let n = transitions.len();
        for (no, p) in places.iter().enumerate() {
            let place = no + 1;
            for node in [p.source, p.target] {
                if node == 0 || node > n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if p.lower < BigRational::zero() {
                return Err(Error::NegativeLowerBound { place, lower: p.lower.to_string() });
            }
            if let Some(upper) = &p.upper {
                if *upper < p.lower {
                    return Err(Error::InvalidInterval {
                        place,
                        lower: p.lower.to_string(),
                        upper: upper.to_string(),
                    });
                }
            }
        }
        Ok(Self { names: transitions, places })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// 1-based index of a transition name.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|candidate| candidate == name)
            .map(|i| i + 1)
            .ok_or_else(|| Error::UnknownTransition { name: name.to_string() })
    }

    /// Name of the 1-based transition index.
    pub fn name(&self, node: usize) -> Result<&str> {
        if node == 0 || node > self.n() {
            return Err(Error::NodeOutOfRange { node, n: self.n() });
        }
        Ok(&self.names[node - 1])
    }

    pub fn is_marking_normalized(&self) -> bool {
        self.places.iter().all(|p| p.marking <= 1)
    }

    /// Rewrites every place with marking `m >= 2` into a chain of `m` unit
    /// places through `m - 1` fresh transitions, appended after the original
    /// ones. The chain pins each fresh transition to an exact copy of an
    /// earlier firing with `[0, 0]` windows and keeps the original window on
    /// the final hop, so schedules restrict and extend between the two nets
    /// at every horizon.
    pub fn normalize_marking(&self) -> Result<Self> {
        let extra: usize = self.places.iter().map(|p| p.marking.saturating_sub(1)).sum();
        if extra == 0 {
            return Ok(self.clone());
        }
        if extra > MAX_CHAIN_TRANSITIONS {
            return Err(Error::SizeGuard {
                what: "chain transitions",
                found: extra,
                limit: MAX_CHAIN_TRANSITIONS,
            });
        }
        let mut names = self.names.clone();
        let mut taken: BTreeSet<String> = names.iter().cloned().collect();
        let mut counter = 1usize;
        let mut places = Vec::with_capacity(self.places.len() + extra);
        for p in &self.places {
            if p.marking <= 1 {
                places.push(p.clone());
                continue;
            }
            let mut prev = p.source;
            for _ in 1..p.marking {
                let name = loop {
                    let candidate = format!("u{counter}");
                    counter += 1;
                    if !taken.contains(&candidate) {
                        break candidate;
                    }
                };
                taken.insert(name.clone());
                names.push(name);
                let fresh = names.len();
                places.push(Place::new(prev, fresh, 1, BigRational::zero(), Some(BigRational::zero())));
                prev = fresh;
            }
            places.push(Place::new(prev, p.target, 1, p.lower.clone(), p.upper.clone()));
        }
        Self::new(names, places)
    }

    /// Collects the strongest bound per (source, target, marking) triple into
    /// the four characteristic matrices. Requires markings in `{0, 1}`.
    ///
    /// Parallel places merge: lower bounds by max, upper bounds by min. An
    /// empty merged window is rejected, naming the two places that clash.
    pub fn to_characteristic(&self) -> Result<CharacteristicMatrices> {
        for (no, p) in self.places.iter().enumerate() {
            if p.marking > 1 {
                return Err(Error::MarkingNotNormalized { place: no + 1, marking: p.marking });
            }
        }
        struct Window {
            lower: BigRational,
            lower_place: usize,
            upper: Option<(BigRational, usize)>,
        }
        let mut merged: BTreeMap<(usize, usize, usize), Window> = BTreeMap::new();
        for (no, p) in self.places.iter().enumerate() {
            let place = no + 1;
            match merged.entry((p.source, p.target, p.marking)) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(Window {
                        lower: p.lower.clone(),
                        lower_place: place,
                        upper: p.upper.clone().map(|u| (u, place)),
                    });
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    let window = slot.get_mut();
                    if p.lower > window.lower {
                        window.lower = p.lower.clone();
                        window.lower_place = place;
                    }
                    if let Some(upper) = &p.upper {
                        let tighter = match &window.upper {
                            Some((current, _)) => upper < current,
                            None => true,
                        };
                        if tighter {
                            window.upper = Some((upper.clone(), place));
                        }
                    }
                }
            }
        }
        for window in merged.values() {
            if let Some((upper, upper_place)) = &window.upper {
                if window.lower > *upper {
                    return Err(Error::InfeasiblePlacePair {
                        first: window.lower_place,
                        second: *upper_place,
                        lower: window.lower.to_string(),
                        upper: upper.to_string(),
                    });
                }
            }
        }
        let n = self.n();
        let mut a0 = TropicalMatrix::all_neg_inf(n, n);
        let mut a1 = TropicalMatrix::all_neg_inf(n, n);
        let mut b0 = a0.map(|_| ExtendedRational::pos_inf());
        let mut b1 = b0.clone();
        for ((source, target, marking), window) in &merged {
            let (row, col) = (target - 1, source - 1);
            let (a, b) = if *marking == 0 { (&mut a0, &mut b0) } else { (&mut a1, &mut b1) };
            a.set(row, col, ExtendedRational::Finite(window.lower.clone()));
            if let Some((upper, _)) = &window.upper {
                b.set(row, col, ExtendedRational::Finite(upper.clone()));
            }
        }
        CharacteristicMatrices::new(a0, a1, b0, b1)
    }

    /// Rebuilds a net from characteristic matrices, one place per finite
    /// lower-bound entry, with transitions named `t1..tn`.
    pub fn from_characteristic(c: &CharacteristicMatrices) -> Result<Self> {
        let n = c.n();
        let names = (1..=n).map(|i| format!("t{i}")).collect();
        let mut places = Vec::new();
        for marking in 0..=1usize {
            let (a, b) = if marking == 0 { (&c.a0, &c.b0) } else { (&c.a1, &c.b1) };
            for source in 1..=n {
                for target in 1..=n {
                    let lower = a.get(target - 1, source - 1);
                    let upper = b.get(target - 1, source - 1);
                    match (lower.as_finite(), upper) {
                        (Some(lo), up) => {
                            let up = up.as_finite().cloned();
                            places.push(Place::new(source, target, marking, lo.clone(), up));
                        }
                        (None, up) if up.is_pos_inf() => {}
                        (None, _) => {
                            return Err(Error::MalformedInput(format!(
                                "upper bound without a lower bound for arc {source} -> {target} at marking {marking}"
                            )));
                        }
                    }
                }
            }
        }
        Self::new(names, places)
    }

    /// Normalizes markings and reduces to the three-matrix form. The result
    /// is sized by the normalized net, which may have more transitions.
    pub fn reduced_matrices(&self) -> Result<(TropicalMatrix, TropicalMatrix, TropicalMatrix)> {
        let normalized = self.normalize_marking()?;
        characteristic_to_m(&normalized.to_characteristic()?)
    }

    /// Full consistency check: reduce, detect infinite-weight paths, and in
    /// the consistent case return a schedule prefix for the original
    /// transitions that satisfies every place over the horizon.
    ///
    /// Inconsistency certificates use the normalized net's transition
    /// indices; originals keep their positions, chain transitions follow.
    pub fn check_consistency(&self, horizon: usize) -> Result<ConsistencyVerdict> {
        let normalized = self.normalize_marking()?;
        let (m_minus, m_zero, m_plus) = characteristic_to_m(&normalized.to_characteristic()?)?;
        match check_matrices(&m_minus, &m_zero, &m_plus, horizon)? {
            ConsistencyVerdict::Consistent { witness } => {
                let witness = witness.project(self.n())?;
                // Chain windows are exact, so restricting a normalized
                // schedule must satisfy the original net; anything else is a
                // construction bug worth failing loudly on.
                if !self.validate_trajectory(&witness)?.is_empty() {
                    return Err(Error::WitnessConstruction {
                        depth: horizon + normalized.n() + 2,
                        attempts: 1,
                    });
                }
                Ok(ConsistencyVerdict::Consistent { witness })
            }
            inconsistent => Ok(inconsistent),
        }
    }

    /// The witness half of [`check_consistency`]; inconsistent nets yield an
    /// error instead of a certificate.
    ///
    /// [`check_consistency`]: Self::check_consistency
    pub fn witness_prefix(&self, horizon: usize) -> Result<Trajectory> {
        match self.check_consistency(horizon)? {
            ConsistencyVerdict::Consistent { witness } => Ok(witness),
            ConsistencyVerdict::Inconsistent { .. } => Err(Error::Inconsistent),
        }
    }

    /// Checks a schedule prefix against every place and the nondecreasing
    /// firing-date rule, returning all violations in deterministic order:
    /// places first (declaration order, firing index ascending, lower before
    /// upper), then nondecreasing checks (transition, then firing index).
    pub fn validate_trajectory(&self, x: &Trajectory) -> Result<Vec<Violation>> {
        if x.dim() != self.n() {
            return Err(Error::TrajectoryDimension { found: x.dim(), expected: self.n() });
        }
        let horizon = x.horizon();
        let mut out = Vec::new();
        for (no, p) in self.places.iter().enumerate() {
            for k in 1..=horizon.saturating_sub(p.marking) {
                let source = x.value(k, p.source);
                let target = x.value(k + p.marking, p.target);
                let lowest = source + &p.lower;
                if lowest > *target {
                    out.push(Violation {
                        kind: ViolationKind::LowerBound,
                        place: Some(no + 1),
                        source: p.source,
                        target: p.target,
                        marking: p.marking,
                        k,
                        lhs: lowest,
                        rhs: target.clone(),
                    });
                }
                if let Some(upper) = &p.upper {
                    let highest = source + upper;
                    if *target > highest {
                        out.push(Violation {
                            kind: ViolationKind::UpperBound,
                            place: Some(no + 1),
                            source: p.source,
                            target: p.target,
                            marking: p.marking,
                            k,
                            lhs: target.clone(),
                            rhs: highest,
                        });
                    }
                }
            }
        }
        for i in 1..=self.n() {
            for k in 1..horizon {
                let earlier = x.value(k, i);
                let later = x.value(k + 1, i);
                if earlier > later {
                    out.push(Violation {
                        kind: ViolationKind::NonDecreasing,
                        place: None,
                        source: i,
                        target: i,
                        marking: 1,
                        k,
                        lhs: earlier.clone(),
                        rhs: later.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn from_raw(raw: RawNet) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, name) in raw.transitions.iter().enumerate() {
            if index.insert(name.clone(), i + 1).is_some() {
                return Err(Error::DuplicateTransition { name: name.clone() });
            }
        }
        let mut places = Vec::with_capacity(raw.places.len());
        for (no, p) in raw.places.into_iter().enumerate() {
            let place = no + 1;
            let source =
                *index.get(&p.from).ok_or_else(|| Error::UnknownTransition { name: p.from.clone() })?;
            let target =
                *index.get(&p.to).ok_or_else(|| Error::UnknownTransition { name: p.to.clone() })?;
            let lower = match p.lower {
                ExtendedRational::Finite(v) => v,
                other => {
                    return Err(Error::MalformedInput(format!(
                        "place {place} lower bound must be finite, found {other}"
                    )));
                }
            };
            let upper = match p.upper {
                None | Some(ExtendedRational::PosInf) => None,
                Some(ExtendedRational::Finite(v)) => Some(v),
                Some(ExtendedRational::NegInf) => {
                    return Err(Error::MalformedInput(format!(
                        "place {place} upper bound must be finite or inf"
                    )));
                }
            };
            places.push(Place::new(source, target, p.marking, lower, upper));
        }
        Self::new(raw.transitions, places)
    }

    fn to_raw(&self) -> RawNet {
        RawNet {
            transitions: self.names.clone(),
            places: self
                .places
                .iter()
                .map(|p| RawPlace {
                    from: self.names[p.source - 1].clone(),
                    to: self.names[p.target - 1].clone(),
                    marking: p.marking,
                    lower: ExtendedRational::Finite(p.lower.clone()),
                    upper: p.upper.clone().map(ExtendedRational::Finite),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlace {
    from: String,
    to: String,
    marking: usize,
    lower: ExtendedRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    upper: Option<ExtendedRational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNet {
    transitions: Vec<String>,
    places: Vec<RawPlace>,
}

impl Serialize for PTimeEventGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PTimeEventGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawNet::deserialize(deserializer)?;
        PTimeEventGraph::from_raw(raw).map_err(D::Error::custom)
    }
}

/// Strongest lower bounds (`a0`, `a1`, max-plus, `-inf` = absent) and upper
/// bounds (`b0`, `b1`, min-plus, `+inf` = absent) per marking level. Entry
/// `(j - 1, i - 1)` bounds `x_j(k + marking) - x_i(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMatrices {
    pub a0: TropicalMatrix,
    pub a1: TropicalMatrix,
    pub b0: TropicalMatrix,
    pub b1: TropicalMatrix,
}

impl CharacteristicMatrices {
    pub fn new(
        a0: TropicalMatrix,
        a1: TropicalMatrix,
        b0: TropicalMatrix,
        b1: TropicalMatrix,
    ) -> Result<Self> {
        let n = a0.rows();
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "characteristic",
                reason: "matrices must be nonempty".into(),
            });
        }
        for (label, m) in [("a0", &a0), ("a1", &a1), ("b0", &b0), ("b1", &b1)] {
            if !m.is_square() || m.rows() != n {
                return Err(Error::InvalidParameter {
                    name: "characteristic",
                    reason: format!("{label} must be {n}x{n}, found {}x{}", m.rows(), m.cols()),
                });
            }
        }
        for (row, col, v) in a0.iter().chain(a1.iter()) {
            if v.is_pos_inf() {
                return Err(Error::PosInfInput { row, col });
            }
        }
        for (_, _, v) in b0.iter().chain(b1.iter()) {
            if v.is_neg_inf() {
                return Err(Error::InvalidParameter {
                    name: "characteristic",
                    reason: "upper-bound matrices cannot contain -inf".into(),
                });
            }
        }
        Ok(Self { a0, a1, b0, b1 })
    }

    pub fn n(&self) -> usize {
        self.a0.rows()
    }
}

/// Folds the four characteristic matrices into the three-matrix form. Entry
/// conventions, 0-based, with `-B` negating entrywise:
///
/// ```text
/// M_minus[i][j] = -b1[j][i]
/// M_zero[i][j]  = max(a0[i][j], -b0[j][i])
/// M_plus[i][j]  = a1[i][j], except diagonals take max(0, a1[i][i])
/// ```
///
/// A schedule satisfies the original bounds over a horizon exactly when
/// `x(k) >= M_zero x(k)`, `x(k+1) >= M_plus x(k)` and
/// `x(k) >= M_minus x(k+1)` hold componentwise in max-plus for every level
/// in range; the diagonal floor of zero carries the nondecreasing rule.
pub fn characteristic_to_m(
    c: &CharacteristicMatrices,
) -> Result<(TropicalMatrix, TropicalMatrix, TropicalMatrix)> {
    let n = c.n();
    let zero = ExtendedRational::from_integer(0);
    let mut m_minus = TropicalMatrix::all_neg_inf(n, n);
    let mut m_zero = TropicalMatrix::all_neg_inf(n, n);
    let mut m_plus = TropicalMatrix::all_neg_inf(n, n);
    for i in 0..n {
        for j in 0..n {
            m_minus.set(i, j, c.b1.get(j, i).neg());
            m_zero.set(i, j, c.a0.get(i, j).oplus(&c.b0.get(j, i).neg()));
            let plus = if i == j { c.a1.get(i, i).oplus(&zero) } else { c.a1.get(i, j).clone() };
            m_plus.set(i, j, plus);
        }
    }
    Ok((m_minus, m_zero, m_plus))
}

/// A three-matrix instance given directly, bypassing the net model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInstance {
    pub n: usize,
    #[serde(rename = "M_minus")]
    pub m_minus: TropicalMatrix,
    #[serde(rename = "M_zero")]
    pub m_zero: TropicalMatrix,
    #[serde(rename = "M_plus")]
    pub m_plus: TropicalMatrix,
}

impl MatrixInstance {
    pub fn new(
        n: usize,
        m_minus: TropicalMatrix,
        m_zero: TropicalMatrix,
        m_plus: TropicalMatrix,
    ) -> Result<Self> {
        let instance = Self { n, m_minus, m_zero, m_plus };
        instance.validate()?;
        Ok(instance)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "at least one transition is required".into(),
            });
        }
        self.to_graph().map(|_| ())
    }

    /// The periodic-graph encoding of the three matrices.
    pub fn to_graph(&self) -> Result<StaticGraph> {
        let graph = StaticGraph::from_matrices(&self.m_minus, &self.m_zero, &self.m_plus)?;
        if graph.n() != self.n {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("matrices are {m}x{m}, n says {}", self.n, m = graph.n()),
            });
        }
        Ok(graph)
    }

    pub fn check(&self, horizon: usize) -> Result<ConsistencyVerdict> {
        self.validate()?;
        check_matrices(&self.m_minus, &self.m_zero, &self.m_plus, horizon)
    }
}

/// Outcome of a consistency check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Consistent { witness: Trajectory },
    Inconsistent { certificate: InfinitePathCertificate },
}

impl ConsistencyVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyVerdict::Consistent { .. })
    }
}

impl Serialize for ConsistencyVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            ConsistencyVerdict::Consistent { witness } => {
                let mut s = serializer.serialize_struct("ConsistencyVerdict", 2)?;
                s.serialize_field("verdict", "consistent")?;
                s.serialize_field("witness", witness)?;
                s.end()
            }
            ConsistencyVerdict::Inconsistent { certificate } => {
                let mut s = serializer.serialize_struct("ConsistencyVerdict", 2)?;
                s.serialize_field("verdict", "inconsistent")?;
                s.serialize_field("certificate", certificate)?;
                s.end()
            }
        }
    }
}

/// Consistency check for the three-matrix form. Certificates index matrix
/// rows; witnesses satisfy the inequality system from [`characteristic_to_m`]
/// over the requested horizon.
pub fn check_matrices(
    m_minus: &TropicalMatrix,
    m_zero: &TropicalMatrix,
    m_plus: &TropicalMatrix,
    horizon: usize,
) -> Result<ConsistencyVerdict> {
    if horizon == 0 {
        return Err(Error::EmptyHorizon);
    }
    let graph = StaticGraph::from_matrices(m_minus, m_zero, m_plus)?;
    match detect_infinite_weight(&graph)? {
        InfWeightVerdict::InfiniteWeight(certificate) => {
            Ok(ConsistencyVerdict::Inconsistent { certificate })
        }
        InfWeightVerdict::NoInfinitePath => {
            let witness = construct_witness(m_minus, m_zero, m_plus, &graph, horizon)?;
            Ok(ConsistencyVerdict::Consistent { witness })
        }
    }
}

/// Builds a schedule prefix from the closure of a horizon slice.
///
/// With `alpha_k` a constant vector chosen so no closure entry can lift a
/// level above zero, `x(h) = max_k slice_star[h][k] + alpha_k` satisfies
/// every arc constraint inside the slice because the closure absorbs one
/// more arc application. The depth margin keeps boundary levels away from
/// the returned prefix; validation plus depth doubling covers the rest.
fn construct_witness(
    m_minus: &TropicalMatrix,
    m_zero: &TropicalMatrix,
    m_plus: &TropicalMatrix,
    graph: &StaticGraph,
    horizon: usize,
) -> Result<Trajectory> {
    let n = graph.n();
    let mut depth = horizon + n + 2;
    let mut last_depth = depth;
    for _ in 0..WITNESS_ATTEMPTS {
        last_depth = depth;
        let map = NodeIndexMap::new(n, SliceSpec::Natural { depth })?;
        let slice = build_slice(graph, &map)?;
        let star = slice.kleene_star()?.star;
        // offsets[k - 1] is the running max of all closure entries that end
        // in level 1 and start in levels <= k; subtracting it floors level 1
        // at zero regardless of which column the max comes from.
        let mut offsets = Vec::with_capacity(depth);
        let mut running = BigRational::zero();
        for k in 1..=depth {
            for row in 0..n {
                for col in (k - 1) * n..k * n {
                    if let Some(v) = star.get(row, col).as_finite() {
                        if *v > running {
                            running = v.clone();
                        }
                    }
                }
            }
            offsets.push(running.clone());
        }
        let mut rows = Vec::with_capacity(horizon);
        let mut finite = true;
        'levels: for h in 1..=horizon {
            let mut level = Vec::with_capacity(n);
            for i in 0..n {
                let mut best = ExtendedRational::neg_inf();
                for k in 1..=depth {
                    let alpha = ExtendedRational::Finite(-offsets[k - 1].clone());
                    for j in 0..n {
                        let entry = star.get((h - 1) * n + i, (k - 1) * n + j);
                        best = best.oplus(&entry.otimes(&alpha));
                    }
                }
                match best {
                    ExtendedRational::Finite(v) => level.push(v),
                    _ => {
                        finite = false;
                        break 'levels;
                    }
                }
            }
            rows.push(level);
        }
        if finite {
            let candidate = Trajectory::new(rows)?;
            if satisfies_m_form(m_minus, m_zero, m_plus, &candidate)? {
                return Ok(candidate);
            }
        }
        depth *= 2;
    }
    Err(Error::WitnessConstruction { depth: last_depth, attempts: WITNESS_ATTEMPTS })
}

/// Componentwise max-plus check of the three-matrix inequality system over
/// the trajectory's horizon.
pub fn satisfies_m_form(
    m_minus: &TropicalMatrix,
    m_zero: &TropicalMatrix,
    m_plus: &TropicalMatrix,
    x: &Trajectory,
) -> Result<bool> {
    let n = x.dim();
    for (label, m) in [("M_minus", m_minus), ("M_zero", m_zero), ("M_plus", m_plus)] {
        if !m.is_square() || m.rows() != n {
            return Err(Error::InvalidParameter {
                name: "matrices",
                reason: format!(
                    "{label} must be {n}x{n} to match the trajectory, found {}x{}",
                    m.rows(),
                    m.cols()
                ),
            });
        }
    }
    let rows: Vec<Vec<ExtendedRational>> = (1..=x.horizon()).map(|k| x.tropical_row(k)).collect();
    let dominates = |lhs: &[ExtendedRational], rhs: &[ExtendedRational]| {
        lhs.iter().zip(rhs).all(|(a, b)| &a.oplus(b) == a)
    };
    for k in 0..rows.len() {
        if !dominates(&rows[k], &m_zero.otimes_vec(&rows[k])?) {
            return Ok(false);
        }
        if k + 1 < rows.len() {
            if !dominates(&rows[k + 1], &m_plus.otimes_vec(&rows[k])?) {
                return Ok(false);
            }
            if !dominates(&rows[k], &m_minus.otimes_vec(&rows[k + 1])?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A finite schedule prefix: `value(k, i)` is the date of the `k`-th firing
/// of transition `i`, both 1-based. Serializes as rows of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    x: Vec<Vec<BigRational>>,
}

impl Trajectory {
    /// Requires at least one level and rectangular rows.
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyHorizon);
        }
        let dim = rows[0].len();
        for (no, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::RaggedRows { row: no + 1, found: row.len(), expected: dim });
            }
        }
        Ok(Self { x: rows })
    }

    pub fn horizon(&self) -> usize {
        self.x.len()
    }

    pub fn dim(&self) -> usize {
        self.x[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.x
    }

    /// 1-based access; panics outside the horizon or dimension.
    pub fn value(&self, k: usize, i: usize) -> &BigRational {
        &self.x[k - 1][i - 1]
    }

    /// Keeps the first `dim` coordinates of every level.
    pub fn project(&self, dim: usize) -> Result<Self> {
        if dim == 0 || dim > self.dim() {
            return Err(Error::TrajectoryDimension { found: self.dim(), expected: dim });
        }
        Ok(Self { x: self.x.iter().map(|row| row[..dim].to_vec()).collect() })
    }

    pub(crate) fn tropical_row(&self, k: usize) -> Vec<ExtendedRational> {
        self.x[k - 1].iter().map(|v| ExtendedRational::Finite(v.clone())).collect()
    }
}

impl Serialize for Trajectory {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.x.iter().map(|row| {
            row.iter().map(|v| ExtendedRational::Finite(v.clone())).collect::<Vec<_>>()
        }))
    }
}

impl<'de> Deserialize<'de> for Trajectory {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<ExtendedRational>>::deserialize(deserializer)?;
        let mut rows = Vec::with_capacity(raw.len());
        for row in raw {
            let mut level = Vec::with_capacity(row.len());
            for v in row {
                match v {
                    ExtendedRational::Finite(r) => level.push(r),
                    other => {
                        return Err(D::Error::custom(format!(
                            "trajectory entries must be finite, found {other}"
                        )));
                    }
                }
            }
            rows.push(level);
        }
        Trajectory::new(rows).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    LowerBound,
    UpperBound,
    NonDecreasing,
}

impl ViolationKind {
    fn as_str(self) -> &'static str {
        match self {
            ViolationKind::LowerBound => "lower_bound",
            ViolationKind::UpperBound => "upper_bound",
            ViolationKind::NonDecreasing => "non_decreasing",
        }
    }
}

/// One broken constraint, stated as `lhs <= rhs` with `lhs > rhs` observed.
/// `k` is the firing index on the source side; nondecreasing violations have
/// no place and link firings `k` and `k + 1` of one transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub place: Option<usize>,
    pub source: usize,
    pub target: usize,
    pub marking: usize,
    pub k: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl Violation {
    /// Negative exactly by the violated amount.
    pub fn slack(&self) -> BigRational {
        &self.rhs - &self.lhs
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fields = if self.place.is_some() { 9 } else { 8 };
        let mut s = serializer.serialize_struct("Violation", fields)?;
        s.serialize_field("kind", self.kind.as_str())?;
        if let Some(place) = self.place {
            s.serialize_field("place", &place)?;
        }
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        s.serialize_field("marking", &self.marking)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("lhs", &self.lhs.to_string())?;
        s.serialize_field("rhs", &self.rhs.to_string())?;
        s.serialize_field("slack", &self.slack().to_string())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::PumpablePair;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn traj(rows: Vec<Vec<i64>>) -> Trajectory {
        Trajectory::new(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
            .unwrap()
    }

    fn parse(rows: &[&str]) -> TropicalMatrix {
        TropicalMatrix::parse_rows(rows).unwrap()
    }

    /// Two machines with window `[beta, -alpha]` and `[2, 3]` self-loops and
    /// an unbounded zero-marking coupling from the first to the second.
    fn running_example(alpha: i64, beta: i64) -> PTimeEventGraph {
        PTimeEventGraph::new(
            vec!["t1".into(), "t2".into()],
            vec![
                Place::new(1, 1, 1, rat(beta), Some(rat(-alpha))),
                Place::new(2, 2, 1, rat(2), Some(rat(3))),
                Place::new(1, 2, 0, rat(0), None),
            ],
        )
        .unwrap()
    }

    #[test]
    fn characteristic_matrices_match_hand_derivation() {
        let c = running_example(-5, 4).to_characteristic().unwrap();
        assert_eq!(c.a0, parse(&[". .", "0 ."]));
        assert_eq!(c.a1, parse(&["4 .", ". 2"]));
        assert_eq!(c.b0, parse(&["inf inf", "inf inf"]));
        assert_eq!(c.b1, parse(&["5 inf", "inf 3"]));
    }

    #[test]
    fn reduction_collapses_bounds_into_three_matrices() {
        let (m_minus, m_zero, m_plus) =
            characteristic_to_m(&running_example(-5, 4).to_characteristic().unwrap()).unwrap();
        assert_eq!(m_minus, parse(&["-5 .", ". -3"]));
        assert_eq!(m_zero, parse(&[". .", "0 ."]));
        assert_eq!(m_plus, parse(&["4 .", ". 2"]));

        let (m_minus, _, m_plus) =
            characteristic_to_m(&running_example(-1, 1).to_characteristic().unwrap()).unwrap();
        assert_eq!(m_minus, parse(&["-1 .", ". -3"]));
        assert_eq!(m_plus, parse(&["1 .", ". 2"]));
    }

    #[test]
    fn construction_rejects_malformed_nets() {
        let names = || vec!["t1".into(), "t2".into()];
        let err = PTimeEventGraph::new(vec!["t1".into(), "t1".into()], vec![]).unwrap_err();
        assert!(matches!(err, Error::DuplicateTransition { .. }));

        let err = PTimeEventGraph::new(names(), vec![Place::new(1, 3, 0, rat(0), None)])
            .unwrap_err();
        assert!(matches!(err, Error::NodeOutOfRange { node: 3, n: 2 }));

        let err = PTimeEventGraph::new(names(), vec![Place::new(1, 2, 0, rat(-1), None)])
            .unwrap_err();
        assert!(matches!(err, Error::NegativeLowerBound { place: 1, .. }));

        let err =
            PTimeEventGraph::new(names(), vec![Place::new(1, 2, 1, rat(2), Some(rat(1)))])
                .unwrap_err();
        assert!(matches!(err, Error::InvalidInterval { place: 1, .. }));

        let err = PTimeEventGraph::new(vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "transitions", .. }));
    }

    #[test]
    fn net_json_round_trip_and_aliases() {
        let json = r#"{
            "transitions": ["t1", "t2"],
            "places": [
                {"from": "t1", "to": "t1", "marking": 1, "lower": "4", "upper": "5"},
                {"from": "t2", "to": "t2", "marking": 1, "lower": 2, "upper": "3"},
                {"from": "t1", "to": "t2", "marking": 0, "lower": "0", "upper": "inf"}
            ]
        }"#;
        let net: PTimeEventGraph = serde_json::from_str(json).unwrap();
        assert_eq!(net, running_example(-5, 4));

        let text = serde_json::to_string(&net).unwrap();
        assert!(!text.contains("upper\":\"inf"), "unbounded upper is omitted: {text}");
        let back: PTimeEventGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, net);

        let bad = r#"{"transitions": ["t1"], "places": [{"from": "t9", "to": "t1", "marking": 0, "lower": 0}]}"#;
        let err = serde_json::from_str::<PTimeEventGraph>(bad).unwrap_err();
        assert!(err.to_string().contains("t9"));

        let bad = r#"{"transitions": ["t1"], "places": [{"from": "t1", "to": "t1", "marking": 1, "lower": 0, "uppr": 1}]}"#;
        assert!(serde_json::from_str::<PTimeEventGraph>(bad).is_err());
    }

    #[test]
    fn normalization_replaces_markings_with_unit_chains() {
        let net = PTimeEventGraph::new(
            vec!["t1".into(), "t2".into()],
            vec![Place::new(1, 2, 3, rat(1), Some(rat(5)))],
        )
        .unwrap();
        let normal = net.normalize_marking().unwrap();
        assert_eq!(normal.names(), &["t1", "t2", "u1", "u2"]);
        assert_eq!(
            normal.places(),
            &[
                Place::new(1, 3, 1, rat(0), Some(rat(0))),
                Place::new(3, 4, 1, rat(0), Some(rat(0))),
                Place::new(4, 2, 1, rat(1), Some(rat(5))),
            ]
        );
        assert!(normal.is_marking_normalized());

        // already-normal nets come back unchanged
        let plain = running_example(-1, 1);
        assert_eq!(plain.normalize_marking().unwrap(), plain);

        // fresh names skip taken ones
        let clash = PTimeEventGraph::new(
            vec!["t1".into(), "u1".into()],
            vec![Place::new(1, 2, 3, rat(0), Some(rat(2)))],
        )
        .unwrap();
        let normal = clash.normalize_marking().unwrap();
        assert_eq!(normal.names(), &["t1", "u1", "u2", "u3"]);
        assert_eq!(normal.places()[2], Place::new(4, 2, 1, rat(0), Some(rat(2))));
    }

    #[test]
    fn normalization_guards_absurd_markings() {
        let net = PTimeEventGraph::new(
            vec!["t1".into()],
            vec![Place::new(1, 1, 5001, rat(0), None)],
        )
        .unwrap();
        let err = net.normalize_marking().unwrap_err();
        assert!(matches!(err, Error::SizeGuard { what: "chain transitions", .. }));
    }

    #[test]
    fn parallel_places_merge_to_strongest_window() {
        let net = PTimeEventGraph::new(
            vec!["t1".into(), "t2".into()],
            vec![
                Place::new(1, 2, 0, rat(1), None),
                Place::new(1, 2, 0, rat(0), Some(rat(3))),
            ],
        )
        .unwrap();
        let c = net.to_characteristic().unwrap();
        assert_eq!(c.a0.get(1, 0), &ExtendedRational::from_integer(1));
        assert_eq!(c.b0.get(1, 0), &ExtendedRational::from_integer(3));

        let clash = PTimeEventGraph::new(
            vec!["t1".into(), "t2".into()],
            vec![
                Place::new(1, 2, 0, rat(5), None),
                Place::new(1, 2, 0, rat(0), Some(rat(1))),
            ],
        )
        .unwrap();
        let err = clash.to_characteristic().unwrap_err();
        match err {
            Error::InfeasiblePlacePair { first, second, lower, upper } => {
                assert_eq!((first, second), (1, 2));
                assert_eq!((lower.as_str(), upper.as_str()), ("5", "1"));
            }
            other => panic!("expected infeasible pair, got {other}"),
        }
    }

    #[test]
    fn characteristic_round_trip_reconstructs_merged_net() {
        let c = running_example(-5, 4).to_characteristic().unwrap();
        let rebuilt = PTimeEventGraph::from_characteristic(&c).unwrap();
        assert_eq!(rebuilt.to_characteristic().unwrap(), c);
    }

    #[test]
    fn consistency_verdicts_for_running_example() {
        match running_example(-5, 4).check_consistency(DEFAULT_HORIZON).unwrap() {
            ConsistencyVerdict::Inconsistent {
                certificate: InfinitePathCertificate::PumpablePair(pair),
            } => {
                let expected = PumpablePair {
                    i1: 1,
                    s1: 1,
                    w1: rat(4),
                    i2: 2,
                    s2: -1,
                    w2: rat(-3),
                };
                assert_eq!(pair, expected);
                assert_eq!(pair.gain(), rat(1));
            }
            other => panic!("expected a pumpable pair, got {other:?}"),
        }

        let net = running_example(-1, 1);
        match net.check_consistency(DEFAULT_HORIZON).unwrap() {
            ConsistencyVerdict::Consistent { witness } => {
                assert_eq!(witness.horizon(), DEFAULT_HORIZON);
                assert_eq!(witness.dim(), 2);
                assert!(net.validate_trajectory(&witness).unwrap().is_empty());
                let (m_minus, m_zero, m_plus) = net.reduced_matrices().unwrap();
                assert!(satisfies_m_form(&m_minus, &m_zero, &m_plus, &witness).unwrap());
            }
            other => panic!("expected consistent, got {other:?}"),
        }
    }

    #[test]
    fn uniform_shift_trajectory_validates() {
        let net = running_example(-1, 1);
        let rows = (0..10).map(|k| vec![k, 2 * k]).collect();
        assert!(net.validate_trajectory(&traj(rows)).unwrap().is_empty());
    }

    #[test]
    fn trajectory_violations_carry_exact_slack() {
        // parallel windows that cannot both hold
        let net = PTimeEventGraph::new(
            vec!["t1".into()],
            vec![
                Place::new(1, 1, 1, rat(2), None),
                Place::new(1, 1, 1, rat(0), Some(rat(1))),
            ],
        )
        .unwrap();
        let violations = net.validate_trajectory(&traj(vec![vec![0], vec![1]])).unwrap();
        assert_eq!(violations.len(), 1);
        let v = &violations[0];
        assert_eq!(v.kind, ViolationKind::LowerBound);
        assert_eq!(v.place, Some(1));
        assert_eq!((v.source, v.target, v.marking, v.k), (1, 1, 1, 1));
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(2), rat(1)));
        assert_eq!(v.slack(), rat(-1));

        let upper = PTimeEventGraph::new(
            vec!["t1".into()],
            vec![Place::new(1, 1, 1, rat(0), Some(rat(1)))],
        )
        .unwrap();
        let violations = upper.validate_trajectory(&traj(vec![vec![0], vec![5]])).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::UpperBound);
        assert_eq!(violations[0].slack(), rat(-4));

        // place checks come before nondecreasing checks
        let violations = upper.validate_trajectory(&traj(vec![vec![3], vec![1]])).unwrap();
        let kinds: Vec<_> = violations.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::LowerBound, ViolationKind::NonDecreasing]);
        assert_eq!(violations[1].place, None);

        let err = upper.validate_trajectory(&traj(vec![vec![0, 0]])).unwrap_err();
        assert!(matches!(err, Error::TrajectoryDimension { found: 2, expected: 1 }));
    }

    #[test]
    fn dynamics_checks_agree_with_matrix_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for _ in 0..60 {
            let n = rng.gen_range(1..=3);
            let names = (1..=n).map(|i| format!("t{i}")).collect();
            let mut triples: Vec<(usize, usize, usize)> = (1..=n)
                .flat_map(|s| (1..=n).flat_map(move |t| [(s, t, 0), (s, t, 1)]))
                .collect();
            triples.shuffle(&mut rng);
            triples.truncate(rng.gen_range(1..=4.min(triples.len())));
            let places = triples
                .into_iter()
                .map(|(source, target, marking)| {
                    let lower = rat(rng.gen_range(0..=2));
                    let upper = if rng.gen_bool(0.5) {
                        Some(&lower + rat(rng.gen_range(0..=2)))
                    } else {
                        None
                    };
                    Place::new(source, target, marking, lower, upper)
                })
                .collect();
            let net = PTimeEventGraph::new(names, places).unwrap();
            let horizon = rng.gen_range(1..=4);
            let rows = (0..horizon)
                .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
                .collect();
            let x = traj(rows);
            let (m_minus, m_zero, m_plus) = net.reduced_matrices().unwrap();
            assert_eq!(
                net.validate_trajectory(&x).unwrap().is_empty(),
                satisfies_m_form(&m_minus, &m_zero, &m_plus, &x).unwrap(),
            );
        }
    }

    #[test]
    fn scaling_bounds_preserves_verdict_class() {
        let scale = |net: &PTimeEventGraph, num: i64, den: i64| {
            let factor = BigRational::new(num.into(), den.into());
            let places = net
                .places()
                .iter()
                .map(|p| {
                    Place::new(
                        p.source,
                        p.target,
                        p.marking,
                        &p.lower * &factor,
                        p.upper.as_ref().map(|u| u * &factor),
                    )
                })
                .collect();
            PTimeEventGraph::new(net.names().to_vec(), places).unwrap()
        };
        let stretched = scale(&running_example(-5, 4), 3, 2);
        match stretched.check_consistency(6).unwrap() {
            ConsistencyVerdict::Inconsistent {
                certificate: InfinitePathCertificate::PumpablePair(pair),
            } => assert_eq!(pair.gain(), BigRational::new(3.into(), 2.into())),
            other => panic!("expected a pumpable pair, got {other:?}"),
        }
        assert!(scale(&running_example(-1, 1), 3, 1).check_consistency(6).unwrap().is_consistent());
    }

    #[test]
    fn matrix_instance_checks_without_a_net() {
        let json = r#"{
            "n": 2,
            "M_minus": [["-1", "-inf"], ["-inf", "-3"]],
            "M_zero": [["-inf", "-inf"], ["0", "-inf"]],
            "M_plus": [["2", "-inf"], ["-inf", "2"]]
        }"#;
        let instance: MatrixInstance = serde_json::from_str(json).unwrap();
        let text = serde_json::to_string(&instance).unwrap();
        assert_eq!(serde_json::from_str::<MatrixInstance>(&text).unwrap(), instance);

        match instance.check(DEFAULT_HORIZON).unwrap() {
            ConsistencyVerdict::Inconsistent {
                certificate: InfinitePathCertificate::PositiveCircuit(witness),
            } => {
                assert_eq!(witness.circuit.shift(), 0);
                assert!(witness.circuit.weight() > BigRational::zero());
            }
            other => panic!("expected a positive circuit, got {other:?}"),
        }

        let consistent = MatrixInstance::new(
            2,
            parse(&["-1 .", ". -3"]),
            parse(&[". .", "0 ."]),
            parse(&["1 .", ". 2"]),
        )
        .unwrap();
        match consistent.check(5).unwrap() {
            ConsistencyVerdict::Consistent { witness } => {
                assert!(satisfies_m_form(
                    &consistent.m_minus,
                    &consistent.m_zero,
                    &consistent.m_plus,
                    &witness
                )
                .unwrap());
            }
            other => panic!("expected consistent, got {other:?}"),
        }

        let err = MatrixInstance::new(
            2,
            parse(&["-1 ."]),
            parse(&[". .", "0 ."]),
            parse(&["1 .", ". 2"]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonSquareMatrix { .. } | Error::DimensionMismatch { .. }));
    }

    #[test]
    fn marked_net_consistency_end_to_end() {
        let net = PTimeEventGraph::new(
            vec!["t1".into()],
            vec![Place::new(1, 1, 2, rat(2), Some(rat(3)))],
        )
        .unwrap();
        match net.check_consistency(6).unwrap() {
            ConsistencyVerdict::Consistent { witness } => {
                assert_eq!(witness.dim(), 1);
                assert!(net.validate_trajectory(&witness).unwrap().is_empty());
            }
            other => panic!("expected consistent, got {other:?}"),
        }

        let pinned = PTimeEventGraph::new(
            vec!["t1".into()],
            vec![
                Place::new(1, 1, 2, rat(2), Some(rat(3))),
                Place::new(1, 1, 1, rat(0), Some(rat(0))),
            ],
        )
        .unwrap();
        assert!(!pinned.check_consistency(6).unwrap().is_consistent());
    }

    #[test]
    fn witness_prefix_errors_on_inconsistent_nets() {
        let err = running_example(-5, 4).witness_prefix(5).unwrap_err();
        assert!(matches!(err, Error::Inconsistent));
        let err = running_example(-1, 1).check_consistency(0).unwrap_err();
        assert!(matches!(err, Error::EmptyHorizon));
    }

    #[test]
    fn trajectory_serde_is_exact() {
        let x = Trajectory::new(vec![
            vec![rat(0), BigRational::new(1.into(), 2.into())],
            vec![rat(1), rat(2)],
        ])
        .unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"[["0","1/2"],["1","2"]]"#);
        assert_eq!(serde_json::from_str::<Trajectory>(&text).unwrap(), x);

        assert!(serde_json::from_str::<Trajectory>("[[0.5]]").is_err());
        assert!(serde_json::from_str::<Trajectory>(r#"[["0"],["1","2"]]"#).is_err());
        assert!(serde_json::from_str::<Trajectory>(r#"[["inf"]]"#).is_err());
        assert!(serde_json::from_str::<Trajectory>("[]").is_err());
    }
}
