//! Distances over the extended naturals and rectangular distance matrices.

use std::fmt;
use std::ops::Add;

use crate::{Error, Result};

/// A distance value: a nonnegative integer or infinity.
///
/// Infinity is a dedicated sentinel (`u64::MAX`), not a saturating value:
/// finite additions that would reach the sentinel panic instead of silently
/// absorbing into it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dist(u64);

impl Dist {
    pub const INF: Dist = Dist(u64::MAX);
    pub const ZERO: Dist = Dist(0);

    pub fn fin(v: u64) -> Dist {
        assert!(v < u64::MAX, "finite distance out of range");
        Dist(v)
    }

    pub fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    pub fn is_fin(self) -> bool {
        !self.is_inf()
    }

    /// Finite value, if any.
    pub fn val(self) -> Option<u64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Finite value; panics on infinity.
    pub fn unwrap(self) -> u64 {
        debug_assert!(self.is_fin(), "unwrap on infinite distance");
        self.val().expect("unwrap on infinite distance")
    }
}

impl Add for Dist {
    type Output = Dist;

    /// Infinity absorbs; finite overflow panics rather than wrapping into the
    /// sentinel.
    fn add(self, rhs: Dist) -> Dist {
        if self.is_inf() || rhs.is_inf() {
            return Dist::INF;
        }
        let sum = self.0.checked_add(rhs.0).expect("distance overflow");
        Dist::fin(sum)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "INF")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rectangular matrix over distances, with vertex labels on rows and columns.
#[derive(Clone, PartialEq, Eq)]
pub struct DistMatrix {
    rows: usize,
    cols: usize,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    data: Vec<Dist>,
}

impl DistMatrix {
    /// All-infinite matrix with the given labels.
    pub fn new(row_labels: Vec<usize>, col_labels: Vec<usize>) -> DistMatrix {
        let rows = row_labels.len();
        let cols = col_labels.len();
        DistMatrix { rows, cols, row_labels, col_labels, data: vec![Dist::INF; rows * cols] }
    }

    /// Square all-infinite matrix labeled 0..n on both axes.
    pub fn square(n: usize) -> DistMatrix {
        DistMatrix::new((0..n).collect(), (0..n).collect())
    }

    /// Min-plus identity: zero diagonal, infinity elsewhere.
    pub fn identity(n: usize) -> DistMatrix {
        let mut m = DistMatrix::square(n);
        for i in 0..n {
            m.set(i, i, Dist::ZERO);
        }
        m
    }

    pub fn from_rows(row_labels: Vec<usize>, col_labels: Vec<usize>, rows: Vec<Vec<Dist>>) -> DistMatrix {
        let mut m = DistMatrix::new(row_labels, col_labels);
        assert_eq!(rows.len(), m.rows);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), m.cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Dist {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Dist) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Dist] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Dist)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| (i, j, self.get(i, j))))
    }

    /// Largest finite entry, or 0 if none.
    pub fn max_finite(&self) -> u64 {
        self.data.iter().filter_map(|d| d.val()).max().unwrap_or(0)
    }

    /// Entry-wise minimum with another matrix of identical shape.
    pub fn entrywise_min(&self, other: &DistMatrix) -> DistMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a).min(*b);
        }
        out
    }

    /// True if `self[i][j] <= other[i][j]` everywhere.
    pub fn le(&self, other: &DistMatrix) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Serialize to CSV. The first line holds column labels (first cell
    /// blank), each following line a row label and its entries, with `INF`
    /// for infinity.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for l in &self.col_labels {
            out.push(',');
            out.push_str(&l.to_string());
        }
        out.push('\n');
        for i in 0..self.rows {
            out.push_str(&self.row_labels[i].to_string());
            for j in 0..self.cols {
                out.push(',');
                out.push_str(&self.get(i, j).to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<DistMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::GraphFormat("empty csv".into()))?;
        let col_labels = header
            .split(',')
            .skip(1)
            .map(|s| s.trim().parse::<usize>().map_err(|e| Error::GraphFormat(format!("bad column label {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut row_labels = Vec::new();
        let mut rows = Vec::new();
        for line in lines {
            let mut fields = line.split(',');
            let label = fields
                .next()
                .ok_or_else(|| Error::GraphFormat("missing row label".into()))?
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::GraphFormat(format!("bad row label: {e}")))?;
            let mut row = Vec::with_capacity(col_labels.len());
            for f in fields {
                let f = f.trim();
                if f == "INF" {
                    row.push(Dist::INF);
                } else {
                    let v = f.parse::<u64>().map_err(|e| Error::GraphFormat(format!("bad entry {f:?}: {e}")))?;
                    row.push(Dist::fin(v));
                }
            }
            if row.len() != col_labels.len() {
                return Err(Error::GraphFormat(format!(
                    "row {label} has {} entries, expected {}",
                    row.len(),
                    col_labels.len()
                )));
            }
            row_labels.push(label);
            rows.push(row);
        }
        Ok(DistMatrix::from_rows(row_labels, col_labels, rows))
    }
}

impl fmt::Debug for DistMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_is_absorbing_under_add_and_identity_under_min() {
        let x = Dist::fin(5);
        assert_eq!(x + Dist::INF, Dist::INF);
        assert_eq!(Dist::INF + x, Dist::INF);
        assert_eq!(x.min(Dist::INF), x);
    }

    #[test]
    fn ordering_places_infinity_last() {
        assert!(Dist::fin(u64::MAX - 1) < Dist::INF);
        assert!(Dist::fin(3) < Dist::fin(4));
    }

    #[test]
    #[should_panic(expected = "distance overflow")]
    fn finite_overflow_is_detected() {
        let _ = Dist::fin(u64::MAX - 1) + Dist::fin(2);
    }

    #[test]
    fn csv_round_trip() {
        let m = DistMatrix::from_rows(
            vec![2, 7],
            vec![0, 1, 2],
            vec![
                vec![Dist::ZERO, Dist::fin(4), Dist::INF],
                vec![Dist::INF, Dist::fin(1), Dist::ZERO],
            ],
        );
        let back = DistMatrix::from_csv(&m.to_csv()).unwrap();
        assert_eq!(m, back);
    }
}
