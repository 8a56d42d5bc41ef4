//! Exact and approximate min-plus (distance) products.
//!
//! The exact route reduces the distance product to one integer matrix
//! product: entries a are encoded as (n+1)^(M-a), the encoded matrices are
//! multiplied exactly, and each output entry is recovered from the floor
//! base-(n+1) logarithm. The approximate route runs the scaling loop: at
//! scale k entries up to R_internal * 2^k are divided by 2^k (rounded up),
//! multiplied exactly, rescaled, and combined by entry-wise minimum. Witness
//! recovery finds an argmin index per entry either by a binary-search tree of
//! restricted products or by a direct linear scan.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bigmat::IntMatrix;
use crate::matrix::{Dist, DistMatrix};
use crate::{Error, Result};

/// Per-entry argmin index of a distance product; `None` exactly where the
/// product entry is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

const NO_WITNESS: u32 = u32::MAX;

impl WitnessMatrix {
    pub fn new(rows: usize, cols: usize) -> WitnessMatrix {
        WitnessMatrix { rows, cols, data: vec![NO_WITNESS; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        let v = self.data[i * self.cols + j];
        (v != NO_WITNESS).then_some(v as usize)
    }

    pub fn set(&mut self, i: usize, j: usize, k: Option<usize>) {
        self.data[i * self.cols + j] = match k {
            Some(k) => u32::try_from(k).expect("witness index out of range"),
            None => NO_WITNESS,
        };
    }
}

/// Parameters of the scaling loop behind the (1+1/R)-approximate product.
///
/// The loop runs with an internal denominator of 4R: at the winning scale
/// s >= 1 the optimal index satisfies max(A_ik, B_kj) > R_internal * 2^(s-1),
/// so the additive rounding error of at most 2^(s+1) stays within a 1/R
/// relative error; scale 0 is exact.
#[derive(Clone, Copy, Debug)]
pub struct ScaleParams {
    pub r: u64,
    pub r_internal: u64,
    pub m: u64,
}

impl ScaleParams {
    pub fn new(r: u64, m: u64) -> Result<ScaleParams> {
        if r < 1 {
            return Err(Error::InvalidParameter("approximation denominator R must be >= 1".into()));
        }
        let r_internal = r.checked_mul(4).ok_or_else(|| Error::InvalidParameter("R too large".into()))?;
        Ok(ScaleParams { r, r_internal, m })
    }

    /// Scale exponents 0..=K with K = max(0, ceil(log2 M) - floor(log2 R_internal)).
    fn shifts(&self) -> impl Iterator<Item = u32> {
        let k = if self.m <= self.r_internal {
            0
        } else {
            ceil_log2(self.m).saturating_sub(floor_log2(self.r_internal))
        };
        0..=k
    }
}

fn ceil_log2(v: u64) -> u32 {
    debug_assert!(v >= 1);
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

fn floor_log2(v: u64) -> u32 {
    debug_assert!(v >= 1);
    63 - v.leading_zeros()
}

/// Which argmin-recovery route to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessStrategy {
    /// Binary search over inner-index ranges using restricted integer
    /// products; the default.
    #[default]
    IndexTree,
    /// Direct per-entry scan; retained as the independent oracle.
    LinearScan,
}

fn check_inner(a: &DistMatrix, b: &DistMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch { lr: a.rows(), lc: a.cols(), rr: b.rows(), rc: b.cols() });
    }
    Ok(())
}

/// Exact distance product by definition: C_ij = min_k (A_ik + B_kj).
pub fn minplus_naive(a: &DistMatrix, b: &DistMatrix) -> Result<DistMatrix> {
    Ok(minplus_naive_with_witness(a, b)?.0)
}

/// Exact product plus the smallest argmin index per entry.
pub fn minplus_naive_with_witness(a: &DistMatrix, b: &DistMatrix) -> Result<(DistMatrix, WitnessMatrix)> {
    check_inner(a, b)?;
    let mut c = DistMatrix::new(a.row_labels().to_vec(), b.col_labels().to_vec());
    let mut w = WitnessMatrix::new(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let av = a.get(i, k);
            if av.is_inf() {
                continue;
            }
            for j in 0..b.cols() {
                let bv = b.get(k, j);
                if bv.is_inf() {
                    continue;
                }
                let cand = av + bv;
                if cand < c.get(i, j) {
                    c.set(i, j, cand);
                    w.set(i, j, Some(k));
                }
            }
        }
    }
    Ok((c, w))
}

/// Powers of the encoding base, shared between encode and decode.
struct PowerTable {
    pows: Vec<BigInt>,
}

impl PowerTable {
    fn new(base: u64, max_exp: u64) -> PowerTable {
        let base = BigInt::from(base);
        let mut pows = Vec::with_capacity(max_exp as usize + 1);
        let mut cur = BigInt::from(1u32);
        for _ in 0..=max_exp {
            pows.push(cur.clone());
            cur *= &base;
        }
        PowerTable { pows }
    }

    fn pow(&self, e: u64) -> &BigInt {
        &self.pows[e as usize]
    }

    /// Largest e with base^e <= v; requires v >= 1 and e within the table.
    fn floor_log(&self, v: &BigInt) -> u64 {
        debug_assert!(!v.is_zero());
        let (mut lo, mut hi) = (0usize, self.pows.len() - 1);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if &self.pows[mid] <= v {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo as u64
    }
}

/// Encode a distance matrix for the integer-product reduction:
/// finite a -> (inner+1)^(M-a), infinity -> 0. Finite entries must lie in
/// {0, ..., M}.
pub fn encode(a: &DistMatrix, m: u64, inner: usize) -> Result<IntMatrix> {
    let table = PowerTable::new(inner as u64 + 1, m);
    encode_with_table(a, m, &table)
}

fn encode_with_table(a: &DistMatrix, m: u64, table: &PowerTable) -> Result<IntMatrix> {
    for (_, _, d) in a.entries() {
        if let Some(v) = d.val() {
            if v > m {
                return Err(Error::EntryExceedsBound { entry: v, bound: m });
            }
        }
    }
    Ok(IntMatrix::from_fn(a.rows(), a.cols(), |i, j| match a.get(i, j).val() {
        Some(v) => table.pow(m - v).clone(),
        None => BigInt::zero(),
    }))
}

/// Decode an encoded product: 0 -> infinity, otherwise 2M - floor_log(entry).
pub fn decode(c_hat: &IntMatrix, m: u64, inner: usize) -> DistMatrix {
    let table = PowerTable::new(inner as u64 + 1, 2 * m + 1);
    decode_with_table(
        c_hat,
        m,
        &table,
        (0..c_hat.rows()).collect(),
        (0..c_hat.cols()).collect(),
    )
}

fn decode_with_table(
    c_hat: &IntMatrix,
    m: u64,
    table: &PowerTable,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
) -> DistMatrix {
    let mut c = DistMatrix::new(row_labels, col_labels);
    for i in 0..c_hat.rows() {
        for j in 0..c_hat.cols() {
            let v = c_hat.get(i, j);
            if v.is_zero() {
                continue;
            }
            let e = table.floor_log(v);
            debug_assert!(e <= 2 * m);
            c.set(i, j, Dist::fin(2 * m - e));
        }
    }
    c
}

/// Exact distance product via the integer-multiplication reduction; must
/// agree with `minplus_naive` bit-for-bit.
pub fn exact_minplus_via_mm(a: &DistMatrix, b: &DistMatrix, m: u64) -> Result<DistMatrix> {
    check_inner(a, b)?;
    let inner = a.cols();
    let table = PowerTable::new(inner as u64 + 1, 2 * m + 1);
    let a_enc = encode_with_table(a, m, &table)?;
    let b_enc = encode_with_table(b, m, &table)?;
    let c_hat = a_enc.mul(&b_enc)?;
    Ok(decode_with_table(&c_hat, m, &table, a.row_labels().to_vec(), b.col_labels().to_vec()))
}

/// Clamp-and-round one scale of the loop: entries above `cap` become
/// infinite, the rest are divided by 2^shift rounded up.
fn clamp_scale(a: &DistMatrix, shift: u32, cap: u64) -> DistMatrix {
    let mut out = DistMatrix::new(a.row_labels().to_vec(), a.col_labels().to_vec());
    for (i, j, d) in a.entries() {
        if let Some(v) = d.val() {
            if v <= cap {
                out.set(i, j, Dist::fin(v.div_ceil(1u64 << shift)));
            }
        }
    }
    out
}

fn scale_up(c: &DistMatrix, shift: u32) -> DistMatrix {
    let mut out = c.clone();
    for (i, j, d) in c.entries() {
        if let Some(v) = d.val() {
            out.set(i, j, Dist::fin(v.checked_shl(shift).expect("scale overflow")));
        }
    }
    out
}

/// (1+1/R)-approximate distance product: never underestimates, and never
/// exceeds the exact product by more than the factor 1 + 1/R.
pub fn approx_minplus(a: &DistMatrix, b: &DistMatrix, params: &ScaleParams) -> Result<DistMatrix> {
    check_inner(a, b)?;
    let mut best = DistMatrix::new(a.row_labels().to_vec(), b.col_labels().to_vec());
    for shift in params.shifts() {
        let cap = params
            .r_internal
            .checked_shl(shift)
            .ok_or_else(|| Error::InvalidParameter("scale cap overflow".into()))?;
        let a_cl = clamp_scale(a, shift, cap);
        let b_cl = clamp_scale(b, shift, cap);
        let c = exact_minplus_via_mm(&a_cl, &b_cl, params.r_internal)?;
        best = best.entrywise_min(&scale_up(&c, shift));
    }
    Ok(best)
}

/// Approximate product plus witnesses. Each output entry is the replayed sum
/// `A[i][w] + B[w][j]` of its witness, so the witness invariant holds with
/// equality; the (1+1/R) contract is preserved because the replayed sum never
/// exceeds the scaled value that selected the witness.
pub fn approx_minplus_with_witness(
    a: &DistMatrix,
    b: &DistMatrix,
    params: &ScaleParams,
    strategy: WitnessStrategy,
) -> Result<(DistMatrix, WitnessMatrix)> {
    check_inner(a, b)?;
    let (rows, cols) = (a.rows(), b.cols());
    let inner = a.cols();
    let mut best_scaled = vec![Dist::INF; rows * cols];
    let mut best_witness = WitnessMatrix::new(rows, cols);
    for shift in params.shifts() {
        let cap = params
            .r_internal
            .checked_shl(shift)
            .ok_or_else(|| Error::InvalidParameter("scale cap overflow".into()))?;
        let a_cl = clamp_scale(a, shift, cap);
        let b_cl = clamp_scale(b, shift, cap);
        let (c, w) = match strategy {
            WitnessStrategy::LinearScan => minplus_naive_with_witness(&a_cl, &b_cl)?,
            WitnessStrategy::IndexTree => {
                let table = PowerTable::new(inner as u64 + 1, 2 * params.r_internal + 1);
                let a_enc = encode_with_table(&a_cl, params.r_internal, &table)?;
                let b_enc = encode_with_table(&b_cl, params.r_internal, &table)?;
                let c_hat = a_enc.mul(&b_enc)?;
                let c = decode_with_table(
                    &c_hat,
                    params.r_internal,
                    &table,
                    a.row_labels().to_vec(),
                    b.col_labels().to_vec(),
                );
                let w = witness_index_tree(&a_enc, &b_enc, &c, params.r_internal, &table);
                (c, w)
            }
        };
        let scaled = scale_up(&c, shift);
        for i in 0..rows {
            for j in 0..cols {
                let v = scaled.get(i, j);
                if v < best_scaled[i * cols + j] {
                    best_scaled[i * cols + j] = v;
                    best_witness.set(i, j, w.get(i, j));
                }
            }
        }
    }
    let mut out = DistMatrix::new(a.row_labels().to_vec(), b.col_labels().to_vec());
    for i in 0..rows {
        for j in 0..cols {
            if let Some(k) = best_witness.get(i, j) {
                out.set(i, j, a.get(i, k) + b.get(k, j));
            }
        }
    }
    Ok((out, best_witness))
}

/// Witness recovery by binary search over inner-index ranges. Only left-child
/// range minima are materialized: descending right keeps the entry value
/// unchanged, so the comparison at every step is against a left child.
fn witness_index_tree(
    a_enc: &IntMatrix,
    b_enc: &IntMatrix,
    root: &DistMatrix,
    m: u64,
    table: &PowerTable,
) -> WitnessMatrix {
    enum Node {
        Leaf(usize),
        Internal { left_vals: DistMatrix, left: Box<Node>, right: Box<Node> },
    }

    fn build(a_enc: &IntMatrix, b_enc: &IntMatrix, m: u64, table: &PowerTable, lo: usize, hi: usize) -> Node {
        if hi - lo == 1 {
            return Node::Leaf(lo);
        }
        let mid = lo + (hi - lo) / 2;
        let c_hat = a_enc.mul_range(b_enc, lo, mid);
        let left_vals = decode_with_table(
            &c_hat,
            m,
            table,
            (0..a_enc.rows()).collect(),
            (0..b_enc.cols()).collect(),
        );
        Node::Internal {
            left_vals,
            left: Box::new(build(a_enc, b_enc, m, table, lo, mid)),
            right: Box::new(build(a_enc, b_enc, m, table, mid, hi)),
        }
    }

    fn descend(node: &Node, i: usize, j: usize, val: Dist) -> usize {
        match node {
            Node::Leaf(k) => *k,
            Node::Internal { left_vals, left, right } => {
                if left_vals.get(i, j) == val {
                    descend(left, i, j, val)
                } else {
                    descend(right, i, j, val)
                }
            }
        }
    }

    let inner = a_enc.cols();
    let mut w = WitnessMatrix::new(root.rows(), root.cols());
    if inner == 0 {
        return w;
    }
    let tree = build(a_enc, b_enc, m, table, 0, inner);
    for i in 0..root.rows() {
        for j in 0..root.cols() {
            let v = root.get(i, j);
            if v.is_fin() {
                w.set(i, j, Some(descend(&tree, i, j, v)));
            }
        }
    }
    w
}

/// Occupancy and work counters for the sparse product.
#[derive(Clone, Copy, Debug, Default)]
pub struct SparseStats {
    /// Largest number of finite entries in any row of the left matrix.
    pub max_row_finite_left: usize,
    /// Largest number of finite entries in any column of the right matrix.
    pub max_col_finite_right: usize,
    /// Number of (i,k,j) triples examined; equals
    /// sum over (i,j) of |finite(A_i*) ∩ finite(B_*j)|.
    pub candidate_pairs: u64,
}

/// Exact distance product evaluated only over finite entries; work is
/// proportional to the candidate-pair count rather than n^3.
pub fn sparse_minplus(a: &DistMatrix, b: &DistMatrix) -> Result<(DistMatrix, SparseStats)> {
    let (c, _, stats) = sparse_minplus_with_witness(a, b)?;
    Ok((c, stats))
}

pub fn sparse_minplus_with_witness(
    a: &DistMatrix,
    b: &DistMatrix,
) -> Result<(DistMatrix, WitnessMatrix, SparseStats)> {
    check_inner(a, b)?;
    let rows_a: Vec<Vec<(usize, Dist)>> = (0..a.rows())
        .map(|i| (0..a.cols()).filter_map(|k| a.get(i, k).is_fin().then(|| (k, a.get(i, k)))).collect())
        .collect();
    let rows_b: Vec<Vec<(usize, Dist)>> = (0..b.rows())
        .map(|k| (0..b.cols()).filter_map(|j| b.get(k, j).is_fin().then(|| (j, b.get(k, j)))).collect())
        .collect();

    let mut col_counts = vec![0usize; b.cols()];
    for row in &rows_b {
        for (j, _) in row {
            col_counts[*j] += 1;
        }
    }
    let mut stats = SparseStats {
        max_row_finite_left: rows_a.iter().map(Vec::len).max().unwrap_or(0),
        max_col_finite_right: col_counts.into_iter().max().unwrap_or(0),
        candidate_pairs: 0,
    };

    let mut c = DistMatrix::new(a.row_labels().to_vec(), b.col_labels().to_vec());
    let mut w = WitnessMatrix::new(a.rows(), b.cols());
    for i in 0..a.rows() {
        for &(k, av) in &rows_a[i] {
            for &(j, bv) in &rows_b[k] {
                stats.candidate_pairs += 1;
                let cand = av + bv;
                if cand < c.get(i, j) {
                    c.set(i, j, cand);
                    w.set(i, j, Some(k));
                }
            }
        }
    }
    Ok((c, w, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_dist_matrix(rng: &mut StdRng, rows: usize, cols: usize, max: u64, inf_prob: f64) -> DistMatrix {
        let mut m = DistMatrix::new((0..rows).collect(), (0..cols).collect());
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(1.0 - inf_prob) {
                    m.set(i, j, Dist::fin(rng.gen_range(1..=max)));
                }
            }
        }
        m
    }

    #[test]
    fn naive_identity_and_hand_example() {
        let a = DistMatrix::from_rows(
            vec![0, 1],
            vec![0, 1],
            vec![vec![Dist::fin(1), Dist::fin(2)], vec![Dist::fin(3), Dist::fin(4)]],
        );
        let id = DistMatrix::identity(2);
        assert_eq!(minplus_naive(&a, &id).unwrap(), a);

        let b = DistMatrix::from_rows(
            vec![0, 1],
            vec![0, 1],
            vec![vec![Dist::fin(5), Dist::fin(6)], vec![Dist::fin(7), Dist::fin(8)]],
        );
        let c = minplus_naive(&a, &b).unwrap();
        let expect = [[6, 7], [8, 9]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.get(i, j), Dist::fin(expect[i][j]));
            }
        }
    }

    #[test]
    fn naive_absorbing_infinite_row() {
        let mut a = DistMatrix::new(vec![0, 1], vec![0, 1]);
        a.set(1, 0, Dist::fin(2));
        a.set(1, 1, Dist::fin(3));
        let b = DistMatrix::identity(2);
        let c = minplus_naive(&a, &b).unwrap();
        assert!(c.get(0, 0).is_inf() && c.get(0, 1).is_inf());
        assert_eq!(c.get(1, 0), Dist::fin(2));
    }

    #[test]
    fn encode_examples() {
        // entry equal to the bound encodes to 1
        let a = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::fin(2)]]);
        assert_eq!(encode(&a, 2, 2).unwrap().get(0, 0), &BigInt::from(1));
        // infinity encodes to 0
        let a = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::INF]]);
        assert!(encode(&a, 2, 2).unwrap().get(0, 0).is_zero());
        // n=2, M=2, entry 1 -> 3
        let a = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::fin(1)]]);
        assert_eq!(encode(&a, 2, 2).unwrap().get(0, 0), &BigInt::from(3));
        // entry above the bound is rejected
        let a = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::fin(5)]]);
        assert!(matches!(encode(&a, 2, 2), Err(Error::EntryExceedsBound { .. })));
    }

    #[test]
    fn decode_zero_is_infinite() {
        let c = IntMatrix::zero(1, 1);
        assert!(decode(&c, 4, 3).get(0, 0).is_inf());
    }

    #[test]
    fn one_by_one_products_recover_sums_exhaustively() {
        for m in 0..=8u64 {
            for a_val in 0..=m {
                for b_val in 0..=m {
                    let a = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::fin(a_val)]]);
                    let b = DistMatrix::from_rows(vec![0], vec![0], vec![vec![Dist::fin(b_val)]]);
                    let c = exact_minplus_via_mm(&a, &b, m).unwrap();
                    assert_eq!(c.get(0, 0), Dist::fin(a_val + b_val));
                }
            }
        }
    }

    #[test]
    fn exact_via_mm_matches_naive_on_randoms() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let (s, n, q) = (rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8));
            let a = random_dist_matrix(&mut rng, s, n, 16, 0.2);
            let b = random_dist_matrix(&mut rng, n, q, 16, 0.2);
            assert_eq!(exact_minplus_via_mm(&a, &b, 16).unwrap(), minplus_naive(&a, &b).unwrap());
        }
    }

    #[test]
    fn exact_via_mm_all_infinite() {
        let a = DistMatrix::new(vec![0, 1], vec![0, 1, 2]);
        let b = DistMatrix::new(vec![0, 1, 2], vec![0]);
        let c = exact_minplus_via_mm(&a, &b, 4).unwrap();
        assert!(c.entries().all(|(_, _, d)| d.is_inf()));
    }

    #[test]
    fn exact_via_mm_identity_round_trip() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = random_dist_matrix(&mut rng, 4, 4, 8, 0.3);
        let id = DistMatrix::identity(4);
        assert_eq!(exact_minplus_via_mm(&a, &id, 8).unwrap(), a);
    }

    #[test]
    fn approx_single_scale_is_exact() {
        let mut rng = StdRng::seed_from_u64(5);
        let a = random_dist_matrix(&mut rng, 6, 6, 30, 0.2);
        let b = random_dist_matrix(&mut rng, 6, 6, 30, 0.2);
        // M <= R_internal forces the single exact scale
        let params = ScaleParams::new(8, 30).unwrap();
        assert!(params.r_internal >= 30);
        assert_eq!(approx_minplus(&a, &b, &params).unwrap(), minplus_naive(&a, &b).unwrap());
    }

    #[test]
    fn approx_preserves_infinities_for_any_r() {
        let mut rng = StdRng::seed_from_u64(9);
        let a = random_dist_matrix(&mut rng, 6, 6, 1 << 10, 0.4);
        let b = random_dist_matrix(&mut rng, 6, 6, 1 << 10, 0.4);
        let exact = minplus_naive(&a, &b).unwrap();
        for r in [1u64, 2, 8] {
            let params = ScaleParams::new(r, 1 << 10).unwrap();
            let c = approx_minplus(&a, &b, &params).unwrap();
            for (i, j, d) in exact.entries() {
                assert_eq!(d.is_inf(), c.get(i, j).is_inf());
            }
        }
    }

    #[test]
    fn approx_bound_holds_on_randoms() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let a = random_dist_matrix(&mut rng, 8, 8, 1 << 12, 0.15);
            let b = random_dist_matrix(&mut rng, 8, 8, 1 << 12, 0.15);
            let exact = minplus_naive(&a, &b).unwrap();
            for r in [1u64, 8, 64] {
                let params = ScaleParams::new(r, 1 << 12).unwrap();
                let c = approx_minplus(&a, &b, &params).unwrap();
                for (i, j, d) in exact.entries() {
                    let got = c.get(i, j);
                    match d.val() {
                        None => assert!(got.is_inf()),
                        Some(ex) => {
                            let g = got.unwrap();
                            assert!(g >= ex);
                            // g <= (1 + 1/r) * ex without floating point
                            assert!(g * r <= ex * r + ex, "r={r} exact={ex} got={g}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn approx_rejects_r_zero() {
        assert!(ScaleParams::new(0, 8).is_err());
    }

    #[test]
    fn witness_unique_candidate() {
        // 1xn by nx1 with a single finite inner index
        let mut a = DistMatrix::new(vec![0], vec![0, 1, 2]);
        a.set(0, 1, Dist::fin(4));
        let mut b = DistMatrix::new(vec![0, 1, 2], vec![0]);
        b.set(1, 0, Dist::fin(5));
        let params = ScaleParams::new(2, 8).unwrap();
        for strategy in [WitnessStrategy::IndexTree, WitnessStrategy::LinearScan] {
            let (c, w) = approx_minplus_with_witness(&a, &b, &params, strategy).unwrap();
            assert_eq!(w.get(0, 0), Some(1));
            assert_eq!(c.get(0, 0), Dist::fin(9));
        }
    }

    #[test]
    fn witness_self_consistency_and_route_agreement() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..15 {
            let a = random_dist_matrix(&mut rng, 8, 8, 1 << 9, 0.2);
            let b = random_dist_matrix(&mut rng, 8, 8, 1 << 9, 0.2);
            let params = ScaleParams::new(4, 1 << 9).unwrap();
            let (c_tree, w_tree) =
                approx_minplus_with_witness(&a, &b, &params, WitnessStrategy::IndexTree).unwrap();
            let (c_scan, w_scan) =
                approx_minplus_with_witness(&a, &b, &params, WitnessStrategy::LinearScan).unwrap();
            assert_eq!(c_tree, c_scan);
            assert_eq!(w_tree, w_scan);
            let exact = minplus_naive(&a, &b).unwrap();
            for (i, j, d) in c_tree.entries() {
                match w_tree.get(i, j) {
                    None => assert!(d.is_inf()),
                    Some(k) => {
                        // replaying the witness reproduces the reported entry
                        assert_eq!(a.get(i, k) + b.get(k, j), d);
                        let ex = exact.get(i, j).unwrap();
                        let got = d.unwrap();
                        assert!(got >= ex && got * params.r <= ex * params.r + ex);
                    }
                }
            }
        }
    }

    #[test]
    fn witness_all_infinite_is_none() {
        let a = DistMatrix::new(vec![0, 1], vec![0, 1]);
        let b = DistMatrix::new(vec![0, 1], vec![0, 1]);
        let params = ScaleParams::new(2, 4).unwrap();
        let (c, w) = approx_minplus_with_witness(&a, &b, &params, WitnessStrategy::IndexTree).unwrap();
        for (i, j, d) in c.entries() {
            assert!(d.is_inf());
            assert_eq!(w.get(i, j), None);
        }
    }

    #[test]
    fn sparse_dense_degenerate_matches_naive() {
        let mut rng = StdRng::seed_from_u64(23);
        let a = random_dist_matrix(&mut rng, 6, 6, 20, 0.0);
        let b = random_dist_matrix(&mut rng, 6, 6, 20, 0.0);
        let (c, _) = sparse_minplus(&a, &b).unwrap();
        assert_eq!(c, minplus_naive(&a, &b).unwrap());
    }

    #[test]
    fn sparse_diagonal_left_returns_right() {
        let mut rng = StdRng::seed_from_u64(29);
        let b = random_dist_matrix(&mut rng, 5, 5, 9, 0.3);
        let (c, _) = sparse_minplus(&DistMatrix::identity(5), &b).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn sparse_matches_naive_and_counts_candidates() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let n = 16;
            // two finite entries per row
            let mut a = DistMatrix::square(n);
            let mut b = DistMatrix::square(n);
            for i in 0..n {
                for _ in 0..2 {
                    a.set(i, rng.gen_range(0..n), Dist::fin(rng.gen_range(1..50)));
                    b.set(i, rng.gen_range(0..n), Dist::fin(rng.gen_range(1..50)));
                }
            }
            let (c, w, stats) = sparse_minplus_with_witness(&a, &b).unwrap();
            let (cn, wn) = minplus_naive_with_witness(&a, &b).unwrap();
            assert_eq!(c, cn);
            assert_eq!(w, wn);

            let mut expected_pairs = 0u64;
            for i in 0..n {
                for j in 0..n {
                    expected_pairs +=
                        (0..n).filter(|&k| a.get(i, k).is_fin() && b.get(k, j).is_fin()).count() as u64;
                }
            }
            assert_eq!(stats.candidate_pairs, expected_pairs);
            assert!(stats.candidate_pairs < (n * n * n) as u64);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn encode_decode_round_trip_matches_naive(
            seed in any::<u64>(),
            s in 1usize..4,
            n in 1usize..4,
            q in 1usize..4,
            m in 1u64..8,
        ) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_dist_matrix(&mut rng, s, n, m, 0.25);
            let b = random_dist_matrix(&mut rng, n, q, m, 0.25);
            prop_assert_eq!(exact_minplus_via_mm(&a, &b, m).unwrap(), minplus_naive(&a, &b).unwrap());
        }

        #[test]
        fn approx_never_underestimates(
            seed in any::<u64>(),
            r in 1u64..32,
        ) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_dist_matrix(&mut rng, 5, 5, 1 << 8, 0.2);
            let b = random_dist_matrix(&mut rng, 5, 5, 1 << 8, 0.2);
            let exact = minplus_naive(&a, &b).unwrap();
            let params = ScaleParams::new(r, 1 << 8).unwrap();
            let c = approx_minplus(&a, &b, &params).unwrap();
            prop_assert!(exact.le(&c));
        }
    }
}
