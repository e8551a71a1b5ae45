use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::ExtendedRational;
use crate::{Error, Result};

/// A dense matrix over the max-plus semiring, stored row-major.
///
/// `get`/`set` take 0-based row and column. When the matrix encodes a graph,
/// the entry at row `j-1`, column `i-1` is the weight of the arc from node
/// `i` to node `j` (column indexes the source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtendedRational>,
}

impl TropicalMatrix {
    /// The `oplus`-neutral matrix: every entry `-inf`.
    pub fn all_neg_inf(rows: usize, cols: usize) -> Self {
        TropicalMatrix {
            rows,
            cols,
            entries: vec![ExtendedRational::neg_inf(); rows * cols],
        }
    }

    /// The `otimes`-neutral matrix: `0` on the diagonal, `-inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::all_neg_inf(n, n);
        for i in 0..n {
            m.set(i, i, ExtendedRational::from_integer(0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExtendedRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::RaggedRows { row: i, found: row.len(), expected: ncols });
            }
            entries.extend(row);
        }
        Ok(TropicalMatrix { rows: nrows, cols: ncols, entries })
    }

    /// Parses every cell with the rational literal grammar. Test and example
    /// convenience; `"."` is shorthand for `-inf`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let cells: Result<Vec<ExtendedRational>> = row
                .split_whitespace()
                .map(|cell| if cell == "." { Ok(ExtendedRational::neg_inf()) } else { cell.parse() })
                .collect();
            parsed.push(cells?);
        }
        Self::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &ExtendedRational {
        debug_assert!(row < self.rows && col < self.cols);
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ExtendedRational) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &ExtendedRational)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, v)| (idx / self.cols, idx % self.cols, v))
    }

    /// Entrywise maximum.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch("oplus", other));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(b))
            .collect();
        Ok(TropicalMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Tropical product: `(A ⊗ B)_{ij} = max_k (A_{ik} + B_{kj})`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch("otimes", other));
        }
        let mut out = Self::all_neg_inf(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_neg_inf() {
                    continue;
                }
                for j in 0..other.cols {
                    let cand = aik.otimes(other.get(k, j));
                    if cand > *out.get(i, j) {
                        out.set(i, j, cand);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over the semiring.
    pub fn otimes_vec(&self, v: &[ExtendedRational]) -> Result<Vec<ExtendedRational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "otimes_vec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = ExtendedRational::neg_inf();
                for (k, vk) in v.iter().enumerate() {
                    let cand = self.get(i, k).otimes(vk);
                    if cand > acc {
                        acc = cand;
                    }
                }
                acc
            })
            .collect())
    }

    /// Tropical power `A ⊗ ... ⊗ A` (`k` factors); `A⁰` is the identity.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.otimes(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::all_neg_inf(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            out.set(j, i, v.clone());
        }
        out
    }

    pub fn map(&self, f: impl Fn(&ExtendedRational) -> ExtendedRational) -> Self {
        TropicalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Copies the `rows x cols` window whose top-left corner is `(row0, col0)`.
    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        let mut out = Self::all_neg_inf(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(row0 + r, col0 + c).clone());
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<ExtendedRational>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for TropicalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.to_rows())
    }
}

impl<'de> Deserialize<'de> for TropicalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<ExtendedRational>> = Vec::deserialize(deserializer)?;
        TropicalMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> TropicalMatrix {
        TropicalMatrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn identity_is_otimes_neutral() {
        let a = m(&["1 .", "0 -3"]);
        let e = TropicalMatrix::identity(2);
        assert_eq!(a.otimes(&e).unwrap(), a);
        assert_eq!(e.otimes(&a).unwrap(), a);
    }

    #[test]
    fn all_neg_inf_is_oplus_neutral_and_otimes_absorbing() {
        let a = m(&["1 .", "0 -3"]);
        let eps = TropicalMatrix::all_neg_inf(2, 2);
        assert_eq!(a.oplus(&eps).unwrap(), a);
        assert_eq!(a.otimes(&eps).unwrap(), eps);
    }

    #[test]
    fn otimes_vec_matches_example() {
        let a = m(&["1 .", ". 2"]);
        let v = vec![ExtendedRational::from_integer(0), ExtendedRational::from_integer(0)];
        let out = a.otimes_vec(&v).unwrap();
        assert_eq!(out, vec![ExtendedRational::from_integer(1), ExtendedRational::from_integer(2)]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = m(&["1 .", "0 -3"]);
        let b = TropicalMatrix::all_neg_inf(3, 2);
        assert!(matches!(a.oplus(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.otimes(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn serde_round_trips_rows() {
        let a = m(&["1 .", "1/2 inf"]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[["1","-inf"],["1/2","inf"]]"#);
        let back: TropicalMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let mixed: TropicalMatrix = serde_json::from_str(r#"[[1, "-inf"], ["1/2", "inf"]]"#).unwrap();
        assert_eq!(mixed, a);
    }
}
