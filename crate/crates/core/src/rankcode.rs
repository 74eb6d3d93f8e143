//! Rank-metric predicates for matrix triples and the exact counting formulas.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gfield::{FieldCtx, Fq, MonicCubic};
use crate::mat3::{self, companion, Mat3};

pub type ExactCount = BigInt;
pub type ExactRatio = BigRational;

/// Ordered triple `(A1, A2, A3)` of 3x3 matrices. Span dimension and rank
/// distance are computed on first use and cached; equality, ordering and
/// hashing only look at the matrices.
#[derive(Debug, Clone)]
pub struct MrdTriple {
    pub a1: Mat3,
    pub a2: Mat3,
    pub a3: Mat3,
    span_dim: OnceLock<usize>,
    rank_distance: OnceLock<Option<usize>>,
}

impl MrdTriple {
    pub fn new(a1: Mat3, a2: Mat3, a3: Mat3) -> Self {
        Self {
            a1,
            a2,
            a3,
            span_dim: OnceLock::new(),
            rank_distance: OnceLock::new(),
        }
    }

    /// `(I, C_f, Z)`.
    pub fn normalized(f: &MonicCubic, z: Mat3) -> Self {
        Self::new(Mat3::IDENTITY, companion(f), z)
    }

    pub fn matrices(&self) -> [&Mat3; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    /// The cubic read off the last column of `A2`, if `A2` has companion shape.
    pub fn companion_cubic(&self) -> Option<MonicCubic> {
        let m = &self.a2.0;
        let shape = [m[0][0], m[1][0], m[2][0], m[0][1], m[1][1], m[2][1]];
        (shape == [Fq::ZERO, Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ZERO, Fq::ONE])
            .then(|| MonicCubic::new(m[0][2], m[1][2], m[2][2]))
    }

    /// True for the shape `(I, C_f, Z)` with `f` irreducible and first column
    /// of `Z` equal to `(0, 0, 1)^T`.
    pub fn is_normalized(&self, field: &FieldCtx) -> bool {
        self.a1 == Mat3::IDENTITY
            && self
                .companion_cubic()
                .is_some_and(|f| f.is_irreducible(field))
            && self.a3.column(0) == [Fq::ZERO, Fq::ZERO, Fq::ONE]
    }

    pub fn span_dim(&self, field: &FieldCtx) -> usize {
        *self.span_dim.get_or_init(|| {
            let mut rows: Vec<Vec<Fq>> = self
                .matrices()
                .iter()
                .map(|m| m.flatten().to_vec())
                .collect();
            mat3::rank_of_rows(field, &mut rows)
        })
    }

    /// Minimum rank of a nonzero element of the span.
    pub fn rank_distance(&self, field: &FieldCtx) -> Result<usize> {
        let dim = self.span_dim(field);
        if dim != 3 {
            return Err(Error::DegenerateSpan(dim));
        }
        let d = *self.rank_distance.get_or_init(|| {
            projective_points(field)
                .map(|x| mat3::rank(field, &mat3::combination(field, x, self.matrices())))
                .min()
        });
        Ok(d.expect("projective plane is nonempty"))
    }

    /// Every nonzero combination invertible (which forces span dimension 3).
    pub fn is_mrd(&self, field: &FieldCtx) -> bool {
        is_mrd_mats(field, self.matrices())
    }
}

impl PartialEq for MrdTriple {
    fn eq(&self, other: &Self) -> bool {
        (self.a1, self.a2, self.a3) == (other.a1, other.a2, other.a3)
    }
}

impl Eq for MrdTriple {}

impl Hash for MrdTriple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.a1, self.a2, self.a3).hash(state);
    }
}

impl PartialOrd for MrdTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MrdTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a1, self.a2, self.a3).cmp(&(other.a1, other.a2, other.a3))
    }
}

/// Representatives of the points of the projective plane over `F_q`:
/// `(1,*,*)`, then `(0,1,*)`, then `(0,0,1)`; `q^2 + q + 1` in total.
pub fn projective_points(field: &FieldCtx) -> impl Iterator<Item = [Fq; 3]> + '_ {
    let first = field
        .elements()
        .flat_map(move |x| field.elements().map(move |y| [Fq::ONE, x, y]));
    let second = field.elements().map(|y| [Fq::ZERO, Fq::ONE, y]);
    first
        .chain(second)
        .chain(std::iter::once([Fq::ZERO, Fq::ZERO, Fq::ONE]))
}

/// MRD test on three matrices with early exit on the first singular combination.
#[inline]
pub fn is_mrd_mats(field: &FieldCtx, mats: [&Mat3; 3]) -> bool {
    projective_points(field)
        .all(|x| !mat3::det(field, &mat3::combination(field, x, mats)).is_zero())
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow(q: u64, e: u32) -> BigInt {
    num_traits::pow(big(q), e as usize)
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> ExactCount {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= pow(q, n - i) - 1;
        den *= pow(q, k - i) - 1;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// `|GL_3(q)| = (q^3-1)(q^3-q)(q^3-q^2)`.
pub fn gl3_order(q: u64) -> ExactCount {
    (pow(q, 3) - 1) * (pow(q, 3) - q) * (pow(q, 3) - pow(q, 2))
}

/// Proportion of MRD codes among 3-dimensional subspaces of `F_q^{3x3}`,
/// given the number of normalized MRD triples `(I, C_f, Z)`.
pub fn proportion_of_mrd(q: u64, s_count: &ExactCount) -> Result<ExactRatio> {
    let q3 = pow(q, 3);
    let num = s_count
        * (big(q) - 1)
        * (&q3 - 1)
        * num_traits::pow(&q3 - q, 2)
        * num_traits::pow(&q3 - pow(q, 2), 2);
    let den = (pow(q, 7) - 1) * (pow(q, 9) - 1) * (pow(q, 9) - q);
    let ratio = BigRational::new(num, den);
    mrd_code_count(q, &ratio)?;
    Ok(ratio)
}

/// `|T_q| = [9 choose 3]_q`.
pub fn code_space_size(q: u64) -> ExactCount {
    gaussian_binomial(9, 3, q)
}

/// Absolute number of MRD codes from a proportion; fails when the product is
/// not an integer.
pub fn mrd_code_count(q: u64, ratio: &ExactRatio) -> Result<ExactCount> {
    let total = BigRational::from_integer(code_space_size(q));
    let t_hat = ratio * total;
    if !t_hat.is_integer() {
        return Err(Error::InconsistentCount(format!(
            "proportion {ratio} times |T_{q}| is not an integer"
        )));
    }
    Ok(t_hat.to_integer())
}

/// Closed-form proportion
/// `(q-1)(q^3-1)(q^3-q)^3(q^3-q^2)^2(q^3-q^2-q-1) / (3(q^7-1)(q^9-1)(q^9-q))`.
pub fn closed_form_proportion(q: u64) -> ExactRatio {
    let q3 = pow(q, 3);
    let q2 = pow(q, 2);
    let num = (big(q) - 1)
        * (&q3 - 1)
        * num_traits::pow(&q3 - q, 3)
        * num_traits::pow(&q3 - &q2, 2)
        * (&q3 - &q2 - q - 1);
    let den = 3 * (pow(q, 7) - 1) * (pow(q, 9) - 1) * (pow(q, 9) - q);
    BigRational::new(num, den)
}

/// Dense `rows x cols` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixMN {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Fq>,
}

impl MatrixMN {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fq>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn rank(&self, field: &FieldCtx) -> usize {
        let mut rows: Vec<Vec<Fq>> = self
            .entries
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .collect();
        mat3::rank_of_rows(field, &mut rows)
    }
}

impl From<&Mat3> for MatrixMN {
    fn from(m: &Mat3) -> Self {
        Self {
            rows: 3,
            cols: 3,
            entries: m.flatten().to_vec(),
        }
    }
}

/// Projective representatives of `F_q^k \ 0`: first nonzero coordinate is 1.
fn projective_vectors(field: &FieldCtx, k: usize) -> Vec<Vec<Fq>> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        for n in 0..q.pow(free as u32) {
            let mut v = vec![Fq::ZERO; k];
            v[lead] = Fq::ONE;
            let mut r = n;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = Fq((r % q) as u8);
                r /= q;
            }
            out.push(v);
        }
    }
    out
}

/// MRD test for an arbitrary `[m x n; delta]` configuration: the number of
/// matrices must meet the Singleton bound `max(m,n)(min(m,n) - delta + 1)` and
/// every nonzero combination must have rank at least `delta`.
pub fn generic_is_mrd(field: &FieldCtx, matrices: &[MatrixMN], delta: usize) -> Result<bool> {
    let Some(first) = matrices.first() else {
        return Err(Error::ShapeMismatch("empty matrix list".into()));
    };
    let (m, n) = (first.rows, first.cols);
    if let Some(bad) = matrices.iter().find(|x| (x.rows, x.cols) != (m, n)) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix in a list of {m}x{n} matrices",
            bad.rows, bad.cols
        )));
    }
    let (big_side, small_side) = (m.max(n), m.min(n));
    if delta == 0 || delta > small_side {
        return Err(Error::ShapeMismatch(format!(
            "delta {delta} outside 1..={small_side}"
        )));
    }
    let k = big_side * (small_side - delta + 1);
    if matrices.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices given, the Singleton bound needs {k}",
            matrices.len()
        )));
    }
    for coeffs in projective_vectors(field, k) {
        let mut acc = vec![Fq::ZERO; m * n];
        for (c, mat) in coeffs.iter().zip(matrices) {
            if c.is_zero() {
                continue;
            }
            for (a, &e) in acc.iter_mut().zip(&mat.entries) {
                *a = field.add(*a, field.mul(*c, e));
            }
        }
        let combo = MatrixMN {
            rows: m,
            cols: n,
            entries: acc,
        };
        if combo.rank(field) < delta {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `visit` with the reduced row echelon basis of every `k`-dimensional
/// subspace of `F_q^n`, each exactly once.
pub fn for_each_rref_basis(
    field: &FieldCtx,
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[Vec<Fq>]),
) {
    let q = field.q() as usize;
    let mut pivots = Vec::with_capacity(k);
    let mut pivot_sets = Vec::new();
    fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            cur.push(p);
            choose(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    choose(0, n, k, &mut pivots, &mut pivot_sets);

    for pivots in pivot_sets {
        // free positions: in row i, columns after pivot i that are not pivots
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..n)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut basis = vec![vec![Fq::ZERO; n]; k];
        for (i, &p) in pivots.iter().enumerate() {
            basis[i][p] = Fq::ONE;
        }
        let total = q.pow(free.len() as u32);
        for counter in 0..total {
            let mut r = counter;
            for &(i, c) in &free {
                basis[i][c] = Fq((r % q) as u8);
                r /= q;
            }
            visit(&basis);
        }
    }
}
