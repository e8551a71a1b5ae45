//! The static graph of a block-tridiagonal constraint system.
//!
//! Three square matrices `(M₋₁, M₀, M₊₁)` over `Q ∪ {-inf}` encode a digraph
//! on nodes `1..=n`: a finite entry `(M_s)_{ji}` is an arc from `i` to `j`
//! with shift `s` and that weight (the column indexes the source). Shifts
//! accumulate along paths; the running minimum of the prefix shift sums
//! (`lshift`) bounds how far below its start level a path dips when it is
//! embedded in the periodic graph built from these matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::maxplus::{ExtendedRational, TropicalMatrix};
use crate::{Error, Result};

/// One arc of the static graph. `source` and `target` are 1-based node ids,
/// `shift` is in `{-1, 0, +1}`, and the weight is finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub shift: i64,
    pub weight: BigRational,
}

impl Arc {
    pub fn new(source: usize, target: usize, shift: i64, weight: BigRational) -> Self {
        Arc { source, target, shift, weight }
    }
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Arc", 4)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        s.serialize_field("shift", &self.shift)?;
        s.serialize_field("weight", &ExtendedRational::Finite(self.weight.clone()).to_string())?;
        s.end()
    }
}

/// A weighted digraph on nodes `1..=n` with arc shifts in `{-1, 0, +1}`.
///
/// Arcs are kept sorted by `(source, target, shift)`; parallel arcs with the
/// same triple are collapsed to their maximum weight, which is the only one
/// a maximum-weight path could use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl StaticGraph {
    pub fn new(n: usize, arcs: Vec<Arc>) -> Result<Self> {
        let mut collapsed: BTreeMap<(usize, usize, i64), BigRational> = BTreeMap::new();
        for arc in arcs {
            for node in [arc.source, arc.target] {
                if node == 0 || node > n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if !(-1..=1).contains(&arc.shift) {
                return Err(Error::ShiftOutOfRange { shift: arc.shift });
            }
            collapsed
                .entry((arc.source, arc.target, arc.shift))
                .and_modify(|w| {
                    if arc.weight > *w {
                        *w = arc.weight.clone();
                    }
                })
                .or_insert(arc.weight);
        }
        let arcs = collapsed
            .into_iter()
            .map(|((source, target, shift), weight)| Arc { source, target, shift, weight })
            .collect();
        Ok(StaticGraph { n, arcs })
    }

    /// Reads the graph off the three matrices; finite entry `(M_s)_{ji}`
    /// becomes the arc `i -> j` with shift `s`.
    pub fn from_matrices(
        m_minus: &TropicalMatrix,
        m_zero: &TropicalMatrix,
        m_plus: &TropicalMatrix,
    ) -> Result<Self> {
        let n = m_zero.rows();
        for (m, name) in [(m_minus, "M_minus"), (m_zero, "M_zero"), (m_plus, "M_plus")] {
            if !m.is_square() {
                return Err(Error::NonSquareMatrix { rows: m.rows(), cols: m.cols() });
            }
            if m.rows() != n {
                return Err(Error::DimensionMismatch {
                    op: name,
                    left_rows: n,
                    left_cols: n,
                    right_rows: m.rows(),
                    right_cols: m.cols(),
                });
            }
        }
        let mut arcs = Vec::new();
        for (shift, m) in [(-1i64, m_minus), (0, m_zero), (1, m_plus)] {
            for (j, i, w) in m.iter() {
                match w {
                    ExtendedRational::NegInf => {}
                    ExtendedRational::PosInf => return Err(Error::PosInfInput { row: j, col: i }),
                    ExtendedRational::Finite(r) => {
                        arcs.push(Arc::new(i + 1, j + 1, shift, r.clone()));
                    }
                }
            }
        }
        Self::new(n, arcs)
    }

    /// Rebuilds the matrix triple; inverse of [`Self::from_matrices`] up to
    /// parallel-arc collapsing.
    pub fn to_matrices(&self) -> (TropicalMatrix, TropicalMatrix, TropicalMatrix) {
        let mut out = [
            TropicalMatrix::all_neg_inf(self.n, self.n),
            TropicalMatrix::all_neg_inf(self.n, self.n),
            TropicalMatrix::all_neg_inf(self.n, self.n),
        ];
        for arc in &self.arcs {
            let m = &mut out[(arc.shift + 1) as usize];
            m.set(arc.target - 1, arc.source - 1, ExtendedRational::Finite(arc.weight.clone()));
        }
        let [m_minus, m_zero, m_plus] = out;
        (m_minus, m_zero, m_plus)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arcs_from(&self, source: usize) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.source == source)
    }

    /// Reflexive-transitive reachability: entry `(i, j)` of the result is
    /// true iff some path (possibly empty) leads from node `j+1` to `i+1`.
    pub fn reachability_closure(&self) -> BooleanMatrix {
        let mut m = BooleanMatrix::identity(self.n);
        for arc in &self.arcs {
            m.set(arc.target - 1, arc.source - 1, true);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if m.get(i, k) {
                    for j in 0..self.n {
                        if m.get(k, j) {
                            m.set(i, j, true);
                        }
                    }
                }
            }
        }
        m
    }

    /// GraphViz rendering with arcs labeled `shift,weight`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph static {\n  rankdir=LR;\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{},{}\"];",
                arc.source,
                arc.target,
                arc.shift,
                ExtendedRational::Finite(arc.weight.clone())
            );
        }
        out.push_str("}\n");
        out
    }
}

/// A path in the static graph. The empty path is anchored at a node so that
/// its source and target stay defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    anchor: usize,
    arcs: Vec<Arc>,
}

impl Path {
    pub fn empty(anchor: usize) -> Self {
        Path { anchor, arcs: Vec::new() }
    }

    pub fn new(anchor: usize, arcs: Vec<Arc>) -> Result<Self> {
        let mut at = anchor;
        for (position, arc) in arcs.iter().enumerate() {
            if arc.source != at {
                return Err(Error::BrokenPath { position, found: arc.source, expected: at });
            }
            at = arc.target;
        }
        Ok(Path { anchor, arcs })
    }

    pub fn source(&self) -> usize {
        self.anchor
    }

    pub fn target(&self) -> usize {
        self.arcs.last().map_or(self.anchor, |a| a.target)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Sum of the arc shifts.
    pub fn shift(&self) -> i64 {
        self.arcs.iter().map(|a| a.shift).sum()
    }

    /// Sum of the arc weights (zero for the empty path).
    pub fn weight(&self) -> BigRational {
        self.arcs.iter().map(|a| a.weight.clone()).sum()
    }

    /// Prefix shift sums, starting with 0 for the empty prefix; `len + 1`
    /// values ending at `shift()`.
    pub fn prefix_shifts(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        let mut acc = 0;
        out.push(acc);
        for arc in &self.arcs {
            acc += arc.shift;
            out.push(acc);
        }
        out
    }

    /// Minimum prefix shift sum; never positive because the empty prefix
    /// contributes 0.
    pub fn lshift(&self) -> i64 {
        self.prefix_shifts().into_iter().min().unwrap_or(0)
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if other.source() != self.target() {
            return Err(Error::BrokenPath {
                position: self.arcs.len(),
                found: other.source(),
                expected: self.target(),
            });
        }
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().cloned());
        Ok(Path { anchor: self.anchor, arcs })
    }

    /// `k`-fold repetition of a circuit; requires `source == target`.
    pub fn repeat(&self, k: usize) -> Result<Path> {
        if self.source() != self.target() {
            return Err(Error::BrokenPath {
                position: self.arcs.len(),
                found: self.source(),
                expected: self.target(),
            });
        }
        let mut out = Path::empty(self.anchor);
        for _ in 0..k {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    /// Visited nodes, `len + 1` entries from source to target.
    pub fn nodes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        out.push(self.anchor);
        out.extend(self.arcs.iter().map(|a| a.target));
        out
    }

    pub fn is_circuit(&self) -> bool {
        self.source() == self.target()
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Path", 4)?;
        s.serialize_field("anchor", &self.anchor)?;
        s.serialize_field("arcs", &self.arcs)?;
        s.serialize_field("shift", &self.shift())?;
        s.serialize_field("weight", &ExtendedRational::Finite(self.weight()).to_string())?;
        s.end()
    }
}

/// Square boolean matrix; entry `(i, j)` true iff a path leads from node
/// `j+1` to node `i+1` (same source-in-the-column convention as
/// [`TropicalMatrix`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BooleanMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = BooleanMatrix { n, bits: vec![false; n * n] };
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: bool) {
        self.bits[row * self.n + col] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}
