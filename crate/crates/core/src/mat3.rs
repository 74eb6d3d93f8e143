//! 3x3 matrices over `F_q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gfield::{FieldCtx, Fq, MonicCubic};

/// Row-major 3x3 matrix; `z(i, j)` is the entry at (1-based) position `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mat3(pub [[Fq; 3]; 3]);

pub type Vec3 = [Fq; 3];

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[Fq::ZERO; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([
        [Fq::ONE, Fq::ZERO, Fq::ZERO],
        [Fq::ZERO, Fq::ONE, Fq::ZERO],
        [Fq::ZERO, Fq::ZERO, Fq::ONE],
    ]);

    pub fn from_columns(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        let mut m = [[Fq::ZERO; 3]; 3];
        for i in 0..3 {
            m[i] = [c0[i], c1[i], c2[i]];
        }
        Mat3(m)
    }

    /// Entry `z_ij` with 1-based indices.
    #[inline]
    pub fn z(&self, i: usize, j: usize) -> Fq {
        self.0[i - 1][j - 1]
    }

    #[inline]
    pub fn column(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    /// Entries in row-major order, as a vector of `F_q^9`.
    pub fn flatten(&self) -> [Fq; 9] {
        let mut out = [Fq::ZERO; 9];
        for i in 0..3 {
            out[3 * i..3 * i + 3].copy_from_slice(&self.0[i]);
        }
        out
    }

    pub fn from_flat(v: &[Fq; 9]) -> Self {
        let mut m = [[Fq::ZERO; 3]; 3];
        for i in 0..3 {
            m[i].copy_from_slice(&v[3 * i..3 * i + 3]);
        }
        Mat3(m)
    }

    /// Matrix whose entries are given by the base-`q` digits of `n` (row-major,
    /// least significant first). Used to sweep all `q^9` matrices.
    pub fn from_counter(mut n: usize, q: usize) -> Self {
        let mut flat = [Fq::ZERO; 9];
        for e in flat.iter_mut() {
            *e = Fq((n % q) as u8);
            n /= q;
        }
        Self::from_flat(&flat)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Companion matrix of `x^3 - c x^2 - b x - a`: rows `(0,0,a)`, `(1,0,b)`, `(0,1,c)`.
pub fn companion(f: &MonicCubic) -> Mat3 {
    Mat3([
        [Fq::ZERO, Fq::ZERO, f.a],
        [Fq::ONE, Fq::ZERO, f.b],
        [Fq::ZERO, Fq::ONE, f.c],
    ])
}

pub fn add(field: &FieldCtx, x: &Mat3, y: &Mat3) -> Mat3 {
    let mut m = x.0;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = field.add(m[i][j], y.0[i][j]);
        }
    }
    Mat3(m)
}

pub fn sub(field: &FieldCtx, x: &Mat3, y: &Mat3) -> Mat3 {
    let mut m = x.0;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = field.sub(m[i][j], y.0[i][j]);
        }
    }
    Mat3(m)
}

pub fn scale(field: &FieldCtx, s: Fq, x: &Mat3) -> Mat3 {
    Mat3(x.0.map(|row| row.map(|e| field.mul(s, e))))
}

pub fn mul(field: &FieldCtx, x: &Mat3, y: &Mat3) -> Mat3 {
    let mut m = [[Fq::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Fq::ZERO;
            for k in 0..3 {
                acc = field.add(acc, field.mul(x.0[i][k], y.0[k][j]));
            }
            m[i][j] = acc;
        }
    }
    Mat3(m)
}

pub fn mul_vec(field: &FieldCtx, x: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [Fq::ZERO; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let r = &x.0[i];
        *o = field.add(
            field.add(field.mul(r[0], v[0]), field.mul(r[1], v[1])),
            field.mul(r[2], v[2]),
        );
    }
    out
}

/// `x1 A1 + x2 A2 + x3 A3`.
#[inline]
pub fn combination(field: &FieldCtx, coeffs: [Fq; 3], mats: [&Mat3; 3]) -> Mat3 {
    let mut m = [[Fq::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Fq::ZERO;
            for t in 0..3 {
                acc = field.add(acc, field.mul(coeffs[t], mats[t].0[i][j]));
            }
            m[i][j] = acc;
        }
    }
    Mat3(m)
}

/// Cofactor expansion along the first row.
#[inline]
pub fn det(field: &FieldCtx, x: &Mat3) -> Fq {
    let m = &x.0;
    let minor = |a: Fq, b: Fq, c: Fq, d: Fq| field.sub(field.mul(a, d), field.mul(b, c));
    let t0 = field.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]));
    let t1 = field.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]));
    let t2 = field.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]));
    field.add(field.sub(t0, t1), t2)
}

/// Rank of a list of equal-length rows by Gaussian elimination with
/// first-nonzero pivoting.
pub fn rank_of_rows(field: &FieldCtx, rows: &mut [Vec<Fq>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).unwrap();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(rows[r][col], inv);
            for c in col..ncols {
                let v = field.mul(factor, rows[rank][c]);
                rows[r][c] = field.sub(rows[r][c], v);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(field: &FieldCtx, x: &Mat3) -> usize {
    let mut rows: Vec<Vec<Fq>> = x.0.iter().map(|r| r.to_vec()).collect();
    rank_of_rows(field, &mut rows)
}

/// Characteristic polynomial `det(xI - A) = x^3 - c x^2 - b x - a`.
pub fn char_poly(field: &FieldCtx, x: &Mat3) -> MonicCubic {
    let m = &x.0;
    let trace = field.add(field.add(m[0][0], m[1][1]), m[2][2]);
    let pm =
        |i: usize, j: usize| field.sub(field.mul(m[i][i], m[j][j]), field.mul(m[i][j], m[j][i]));
    let e2 = field.add(field.add(pm(0, 1), pm(0, 2)), pm(1, 2));
    MonicCubic {
        a: det(field, x),
        b: field.neg(e2),
        c: trace,
    }
}

/// Inverse by the adjugate.
pub fn inverse(field: &FieldCtx, x: &Mat3) -> Result<Mat3> {
    let d = det(field, x);
    let dinv = field.inv(d).ok_or(Error::Singular)?;
    let m = &x.0;
    let mut out = [[Fq::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor C_ji
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = field.sub(
                field.mul(m[r0][c0], m[r1][c1]),
                field.mul(m[r0][c1], m[r1][c0]),
            );
            let cof = if (i + j) % 2 == 0 {
                minor
            } else {
                field.neg(minor)
            };
            out[i][j] = field.mul(cof, dinv);
        }
    }
    Ok(Mat3(out))
}

/// `S^{-1} A S`.
pub fn conjugate(field: &FieldCtx, s: &Mat3, a: &Mat3) -> Result<Mat3> {
    let s_inv = inverse(field, s)?;
    Ok(mul(field, &mul(field, &s_inv, a), s))
}

/// All invertible matrices over `F_q`, in counter order.
pub fn general_linear_group(field: &FieldCtx) -> Vec<Mat3> {
    let q = field.q() as usize;
    (0..q.pow(9))
        .map(|n| Mat3::from_counter(n, q))
        .filter(|m| !det(field, m).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    #[test]
    fn companion_examples() {
        let f2 = f(2);
        let x3 = MonicCubic::new(Fq::ZERO, Fq::ZERO, Fq::ZERO);
        let n = companion(&x3);
        assert_eq!(
            n.0,
            [
                [Fq(0), Fq(0), Fq(0)],
                [Fq(1), Fq(0), Fq(0)],
                [Fq(0), Fq(1), Fq(0)]
            ]
        );
        assert!(mul(&f2, &mul(&f2, &n, &n), &n).is_zero());

        let g = MonicCubic::new(Fq(1), Fq(1), Fq(0)); // x^3 + x + 1
        let c = companion(&g);
        assert_eq!(
            c.0,
            [
                [Fq(0), Fq(0), Fq(1)],
                [Fq(1), Fq(0), Fq(1)],
                [Fq(0), Fq(1), Fq(0)]
            ]
        );
        assert_eq!(det(&f2, &c), Fq::ONE);
        assert_eq!(rank(&f2, &c), 3);
    }

    #[test]
    fn char_poly_of_companion_roundtrips() {
        for q in [2, 3] {
            let fld = f(q);
            for a in fld.elements() {
                for b in fld.elements() {
                    for c in fld.elements() {
                        let g = MonicCubic::new(a, b, c);
                        assert_eq!(char_poly(&fld, &companion(&g)), g);
                    }
                }
            }
        }
        assert_eq!(
            char_poly(&f(5), &Mat3::ZERO),
            MonicCubic::new(Fq(0), Fq(0), Fq(0))
        );
    }

    #[test]
    fn identity_and_rank_one() {
        let f3 = f(3);
        assert_eq!(det(&f3, &Mat3::IDENTITY), Fq::ONE);
        assert_eq!(rank(&f3, &Mat3::IDENTITY), 3);
        let mut single = Mat3::ZERO;
        single.0[1][2] = Fq(2);
        assert_eq!(rank(&f3, &single), 1);
        assert_eq!(rank(&f3, &Mat3::ZERO), 0);
    }

    #[test]
    fn det_multiplicative_and_rank_exhaustive_f2() {
        let f2 = f(2);
        let all: Vec<Mat3> = (0..512).map(|n| Mat3::from_counter(n, 2)).collect();
        let mut invertible = 0;
        for x in &all {
            let d = det(&f2, x);
            assert_eq!(rank(&f2, x) == 3, !d.is_zero());
            if !d.is_zero() {
                invertible += 1;
            }
        }
        assert_eq!(invertible, 168);
        for x in all.iter().step_by(7) {
            for y in all.iter().step_by(5) {
                assert_eq!(det(&f2, &mul(&f2, x, y)), f2.mul(det(&f2, x), det(&f2, y)));
            }
        }
    }

    #[test]
    fn conjugate_rejects_singular() {
        let f2 = f(2);
        assert_eq!(
            conjugate(&f2, &Mat3::ZERO, &Mat3::IDENTITY),
            Err(Error::Singular)
        );
    }

    #[test]
    fn gl3_orders() {
        assert_eq!(general_linear_group(&f(2)).len(), 168);
        assert_eq!(general_linear_group(&f(3)).len(), 11232);
    }

    fn arb_mat(q: u64) -> impl Strategy<Value = Mat3> {
        proptest::array::uniform9(0..q as u8).prop_map(|v| Mat3::from_flat(&v.map(Fq)))
    }

    fn arb_invertible(q: u64) -> impl Strategy<Value = Mat3> {
        let fld = f(q);
        arb_mat(q).prop_filter("singular", move |m| !det(&fld, m).is_zero())
    }

    fn check_conjugation(q: u64, a: Mat3, s: Mat3) -> std::result::Result<(), TestCaseError> {
        let fld = f(q);
        let s_inv = inverse(&fld, &s).unwrap();
        prop_assert_eq!(mul(&fld, &s, &s_inv), Mat3::IDENTITY);
        let b = conjugate(&fld, &s, &a).unwrap();
        prop_assert_eq!(char_poly(&fld, &b), char_poly(&fld, &a));
        prop_assert_eq!(rank(&fld, &b), rank(&fld, &a));
        prop_assert_eq!(
            conjugate(&fld, &s, &conjugate(&fld, &s_inv, &a).unwrap()).unwrap(),
            a
        );
        prop_assert_eq!(conjugate(&fld, &Mat3::IDENTITY, &a).unwrap(), a);
        Ok(())
    }

    proptest! {
        #[test]
        fn conjugation_invariants_f3(a in arb_mat(3), s in arb_invertible(3)) {
            check_conjugation(3, a, s)?;
        }

        #[test]
        fn conjugation_invariants_f4(a in arb_mat(4), s in arb_invertible(4)) {
            check_conjugation(4, a, s)?;
        }

        #[test]
        fn conjugation_invariants_f7(a in arb_mat(7), s in arb_invertible(7)) {
            check_conjugation(7, a, s)?;
        }
    }
}
