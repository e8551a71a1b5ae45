use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive};

use super::{ExtendedRational, TropicalMatrix};
use crate::{Error, Result};

/// Outcome of [`kleene_star`].
///
/// `star` is `A* = A⁺ ⊕ identity` and `plus` is `A⁺`; entry `(i, j)` of
/// `plus` is the maximum weight of a nonempty path from node `j+1` to node
/// `i+1` (`+inf` when such weights are unbounded). `positive_circuit_nodes`
/// holds the 1-based nodes whose `plus` diagonal is positive; it is empty
/// exactly when `star` is free of `+inf`, and it contains every node lying
/// on a positive elementary circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarResult {
    pub star: TropicalMatrix,
    pub plus: TropicalMatrix,
    pub positive_circuit_nodes: BTreeSet<usize>,
}

impl TropicalMatrix {
    pub fn kleene_star(&self) -> Result<StarResult> {
        kleene_star(self)
    }
}

/// All-pairs maximum path weight of a square matrix over `Q ∪ {-inf}`.
///
/// Rejects `+inf` inputs. Arithmetic runs on integers after clearing the
/// common denominator, in `i64` when everything fits and in `BigInt`
/// otherwise, so results are exact for any input.
pub fn kleene_star(a: &TropicalMatrix) -> Result<StarResult> {
    if !a.is_square() {
        return Err(Error::NonSquareMatrix { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let (denom, scaled) = scale_finite_entries(a)?;

    let closed: Vec<Option<BigInt>> = match to_i64_entries(&scaled) {
        Some(mut small) => {
            if closure_in_place(n, &mut small) {
                small.into_iter().map(|o| o.map(BigInt::from)).collect()
            } else {
                // i64 overflowed somewhere; redo from the untouched input.
                let mut big = scaled.clone();
                closure_in_place(n, &mut big);
                big
            }
        }
        None => {
            let mut big = scaled.clone();
            closure_in_place(n, &mut big);
            big
        }
    };

    let positive_circuit_nodes: BTreeSet<usize> = (0..n)
        .filter(|&i| closed[i * n + i].as_ref().is_some_and(|v| v.is_positive()))
        .map(|i| i + 1)
        .collect();

    // Entry (i, j) becomes +inf iff some positive-diagonal node c closes a
    // route j -> c -> i (either leg may be empty).
    let unbounded: Option<(Vec<bool>, Vec<bool>)> = if positive_circuit_nodes.is_empty() {
        None
    } else {
        let reach = reflexive_reachability(a);
        let pos0: Vec<usize> = positive_circuit_nodes.iter().map(|&v| v - 1).collect();
        let mut from_pos = vec![false; n];
        let mut to_pos = vec![false; n];
        for v in 0..n {
            from_pos[v] = pos0.iter().any(|&p| reach.get(p, v));
            to_pos[v] = pos0.iter().any(|&p| reach.get(v, p));
        }
        Some((from_pos, to_pos))
    };

    let mut plus = TropicalMatrix::all_neg_inf(n, n);
    for i in 0..n {
        for j in 0..n {
            let marked = unbounded
                .as_ref()
                .is_some_and(|(from_pos, to_pos)| to_pos[j] && from_pos[i]);
            let value = if marked {
                ExtendedRational::pos_inf()
            } else {
                match &closed[i * n + j] {
                    Some(v) => ExtendedRational::Finite(BigRational::new(v.clone(), denom.clone())),
                    None => ExtendedRational::neg_inf(),
                }
            };
            plus.set(i, j, value);
        }
    }

    let mut star = plus.clone();
    let one = ExtendedRational::from_integer(0);
    for i in 0..n {
        let v = star.get(i, i).oplus(&one);
        star.set(i, i, v);
    }

    Ok(StarResult { star, plus, positive_circuit_nodes })
}

/// Integer weights the closure loops run on. `checked_add` returns `None`
/// only for the fixed-width implementation, which triggers the `BigInt`
/// rerun.
pub(crate) trait ScaledWeight: Clone + Ord {
    fn zero() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
}

impl ScaledWeight for i64 {
    fn zero() -> Self {
        0
    }

    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
}

impl ScaledWeight for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }

    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// Clears denominators: returns the lcm `D` of all finite denominators and
/// each finite entry as `numer * (D / denom)`. Errors on any `+inf` entry.
pub(crate) fn scale_finite_entries(
    a: &TropicalMatrix,
) -> Result<(BigInt, Vec<Option<BigInt>>)> {
    let mut denom = BigInt::from(1);
    for (row, col, v) in a.iter() {
        match v {
            ExtendedRational::PosInf => return Err(Error::PosInfInput { row, col }),
            ExtendedRational::Finite(r) => denom = denom.lcm(r.denom()),
            ExtendedRational::NegInf => {}
        }
    }
    let scaled = a
        .iter()
        .map(|(_, _, v)| {
            v.as_finite()
                .map(|r| r.numer() * (&denom / r.denom()))
        })
        .collect();
    Ok((denom, scaled))
}

fn to_i64_entries(scaled: &[Option<BigInt>]) -> Option<Vec<Option<i64>>> {
    scaled
        .iter()
        .map(|o| match o {
            None => Some(None),
            Some(v) => v.to_i64().map(Some),
        })
        .collect()
}

/// Floyd–Warshall over max-plus, in place. Returns false if an addition
/// overflowed (fixed-width weights only), leaving `d` partially updated.
fn closure_in_place<T: ScaledWeight>(n: usize, d: &mut [Option<T>]) -> bool {
    debug_assert_eq!(d.len(), n * n);
    for k in 0..n {
        let row_k: Vec<Option<T>> = d[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            let Some(ik) = d[i * n + k].clone() else { continue };
            for (j, kj) in row_k.iter().enumerate() {
                let Some(kj) = kj else { continue };
                let Some(cand) = ik.checked_add(kj) else { return false };
                let cell = &mut d[i * n + j];
                if cell.as_ref().is_none_or(|cur| cand > *cur) {
                    *cell = Some(cand);
                }
            }
        }
    }
    true
}

/// Row `u` holds the set of nodes reachable from `u` by a path of length
/// >= 0 (so `u` itself is always included).
pub(crate) struct BitGrid {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitGrid {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitGrid { n, words, bits: vec![0; n * words] }
    }

    pub(crate) fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n && col < self.n);
        self.bits[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn or_into_row(&mut self, dst: usize, src_row: &[u64]) {
        let base = dst * self.words;
        for (w, s) in self.bits[base..base + self.words].iter_mut().zip(src_row) {
            *w |= s;
        }
    }
}

/// Reflexive-transitive reachability over the finite entries of `a`
/// (entry `(v, u)` finite means an arc from `u+1` to `v+1`).
pub(crate) fn reflexive_reachability(a: &TropicalMatrix) -> BitGrid {
    let n = a.rows();
    let mut grid = BitGrid::new(n);
    for u in 0..n {
        grid.set(u, u);
    }
    for (v, u, w) in a.iter() {
        if !w.is_neg_inf() {
            grid.set(u, v);
        }
    }
    for k in 0..n {
        let row_k = grid.bits[k * grid.words..(k + 1) * grid.words].to_vec();
        for u in 0..n {
            if grid.get(u, k) {
                grid.or_into_row(u, &row_k);
            }
        }
    }
    grid
}
