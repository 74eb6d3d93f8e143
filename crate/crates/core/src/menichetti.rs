//! Parametrization of the normalized MRD triples by pairs `(k, kh)` of
//! elements of `F_{q^3}`.
//!
//! A pair is admissible when `1, k, phi(k, kh)` are linearly independent over
//! `F_q`. Each admissible pair yields the triple `(I, Sigma1, Sigma2)`, and two
//! admissible pairs yield the same triple exactly when they are related by a
//! simultaneous Frobenius shift, or, for `kh = k^(q^n)`, additionally by
//! swapping the roles of `k` and `kh`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::gfield::{ExtCtx, ExtElem, Fq};
use crate::mat3::Mat3;
use crate::rankcode::{ExactCount, MrdTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// `kh` is a proper Frobenius conjugate of `k`; the triple is a field.
    Field,
    /// `kh = k`, admissible only in odd characteristic.
    Commutative,
    Proper,
    Inadmissible,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Field => "field",
            ClassKind::Commutative => "commutative",
            ClassKind::Proper => "proper",
            ClassKind::Inadmissible => "inadmissible",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamPair {
    pub k: ExtElem,
    pub kh: ExtElem,
    pub admissible: bool,
    pub class_kind: ClassKind,
}

impl ParamPair {
    pub fn new(ext: &ExtCtx, k: ExtElem, kh: ExtElem) -> Self {
        let admissible = is_admissible(ext, k, kh);
        let class_kind = if !admissible {
            ClassKind::Inadmissible
        } else if conjugate_exponent(ext, k, kh).is_some() {
            ClassKind::Field
        } else if kh == k {
            ClassKind::Commutative
        } else {
            ClassKind::Proper
        };
        Self {
            k,
            kh,
            admissible,
            class_kind,
        }
    }

    pub fn phi(&self, ext: &ExtCtx) -> ExtElem {
        ext.phi(self.k, self.kh)
    }

    /// Apply `x -> x^(q^r)` to both parameters.
    pub fn shifted(&self, ext: &ExtCtx, r: u32) -> Self {
        Self {
            k: ext.frobenius(self.k, r),
            kh: ext.frobenius(self.kh, r),
            ..*self
        }
    }

    /// Every pair producing the same matrices as `self` (for `k, kh` outside
    /// `F_q`), sorted and deduplicated. At most six members.
    pub fn class_members(&self, ext: &ExtCtx) -> Vec<ParamPair> {
        let mut members: Vec<ParamPair> = (0..3).map(|r| self.shifted(ext, r)).collect();
        if let Some(n) = conjugate_exponent(ext, self.k, self.kh) {
            for r in 0..3 {
                members.push(Self {
                    k: ext.frobenius(self.k, n + r),
                    kh: ext.frobenius(self.k, r),
                    ..*self
                });
            }
        }
        members.sort();
        members.dedup();
        members
    }

    /// Smallest member of the class, comparing `(k, kh)` lexicographically.
    pub fn canonical(&self, ext: &ExtCtx) -> ParamPair {
        self.class_members(ext)[0]
    }
}

/// `Some(n)` with `n in {1, 2}` if `kh = k^(q^n)` and `k` is not in `F_q`.
fn conjugate_exponent(ext: &ExtCtx, k: ExtElem, kh: ExtElem) -> Option<u32> {
    if ext.in_base(k) {
        return None;
    }
    let [_, k1, k2] = ext.conjugates(k);
    if kh == k1 {
        Some(1)
    } else if kh == k2 {
        Some(2)
    } else {
        None
    }
}

/// `1, k, phi(k, kh)` linearly independent over `F_q`: the coordinate matrix
/// with columns `1, k, phi` is invertible. Since `1 = (1, 0, 0)`, its
/// determinant reduces to a 2x2 minor.
pub fn is_admissible(ext: &ExtCtx, k: ExtElem, kh: ExtElem) -> bool {
    let f = ext.base();
    let phi = ext.phi(k, kh);
    let d = f.sub(f.mul(k.0[1], phi.0[2]), f.mul(k.0[2], phi.0[1]));
    !d.is_zero()
}

/// `(Sigma1(k, kh), Sigma2(k, kh))`.
pub fn sigma_matrices(ext: &ExtCtx, k: ExtElem, kh: ExtElem) -> (Mat3, Mat3) {
    let f = ext.base();
    let [s1k, s2k, s3k] = ext.sigmas(k);
    let [s1h, s2h, s3h] = ext.sigmas(kh);
    let [s1p, s2p, _] = ext.sigmas(ext.mul(k, kh));
    let [_, _, s3s] = ext.sigmas(ext.add(k, kh));

    let sigma1 = Mat3([
        [Fq::ZERO, Fq::ZERO, s3k],
        [Fq::ONE, Fq::ZERO, f.neg(s2k)],
        [Fq::ZERO, Fq::ONE, s1k],
    ]);
    let z13 = f.sub(f.add(f.mul(s1k, s3h), f.mul(s1h, s3k)), s2p);
    let z33 = f.sub(f.mul(s1k, s1h), s1p);
    let sigma2 = Mat3([
        [Fq::ZERO, s3h, z13],
        [Fq::ZERO, f.neg(s2h), f.neg(s3s)],
        [Fq::ONE, s1h, z33],
    ]);
    (sigma1, sigma2)
}

pub fn triple_of(ext: &ExtCtx, p: &ParamPair) -> MrdTriple {
    let (s1, s2) = sigma_matrices(ext, p.k, p.kh);
    MrdTriple::new(Mat3::IDENTITY, s1, s2)
}

/// One canonical admissible parameter pair and its triple.
#[derive(Debug, Clone)]
pub struct ParamClass {
    pub rep: ParamPair,
    pub triple: MrdTriple,
}

/// All canonical admissible pairs with their triples, sorted by pair.
///
/// The sweep over `k` runs in parallel; each worker keeps the canonical pairs
/// for its `k`, and the merge sorts before deduplicating, so the output does
/// not depend on scheduling.
pub fn parametric_classes(ext: &ExtCtx) -> Vec<ParamClass> {
    let n = ext.order();
    let mut reps: Vec<ParamPair> = (0..n)
        .into_par_iter()
        .map(|ki| {
            let k = ext.from_index(ki);
            let mut local: Vec<ParamPair> = ext
                .elements()
                .map(|kh| ParamPair::new(ext, k, kh))
                .filter(|p| p.admissible)
                .map(|p| p.canonical(ext))
                .collect();
            local.sort();
            local.dedup();
            local
        })
        .flatten()
        .collect();
    reps.sort();
    reps.dedup();
    reps.into_iter()
        .map(|rep| ParamClass {
            rep,
            triple: triple_of(ext, &rep),
        })
        .collect()
}

/// The set of normalized MRD triples obtained from admissible pairs,
/// deduplicated on the matrices and sorted.
pub fn enumerate_s_parametric(ext: &ExtCtx) -> Vec<MrdTriple> {
    let field = ext.base();
    let mut triples: Vec<MrdTriple> = parametric_classes(ext)
        .into_iter()
        .map(|c| c.triple)
        .collect();
    triples.sort();
    triples.dedup();
    for t in &triples {
        assert!(
            t.is_normalized(field),
            "parametric triple not normalized: {:?}",
            t
        );
        assert!(t.is_mrd(field), "parametric triple not MRD: {:?}", t);
    }
    triples
}

/// Closed-form cardinalities of `S`, `S'` and `S''`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCounts {
    pub s: ExactCount,
    pub s_prime: ExactCount,
    pub s_dblprime: ExactCount,
}

pub fn count_formulas(q: u64) -> SCounts {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let base = &q3 - &q;
    let s = &base / 3 * (&q3 - &q2 - &q - 1);
    let s_prime = &base * (&q3 - &q2 - &q - 2);
    let s_dblprime = 2 * &base;
    // |S| = (|S'| + |S''|/2) / 3
    assert_eq!(3 * 2 * &s, 2 * &s_prime + &s_dblprime);
    SCounts {
        s,
        s_prime,
        s_dblprime,
    }
}

/// Raw counts from testing admissibility on every pair in `F_{q^3}^2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdmissibilitySweep {
    pub pairs: u64,
    pub admissible: u64,
    /// admissible pairs with `kh` not a proper conjugate of `k`
    pub s_prime: u64,
    /// pairs `(k, k^(q^n))`, `k` outside `F_q`, `n in {1, 2}`
    pub s_dblprime: u64,
    /// members of `S''` that fail admissibility (expected 0)
    pub s_dblprime_inadmissible: u64,
    /// admissible pairs with `k` or `kh` in `F_q` (expected 0)
    pub admissible_with_base_param: u64,
    pub commutative: u64,
}

pub fn admissibility_sweep(ext: &ExtCtx) -> AdmissibilitySweep {
    (0..ext.order())
        .into_par_iter()
        .map(|ki| {
            let k = ext.from_index(ki);
            let mut acc = AdmissibilitySweep::default();
            for kh in ext.elements() {
                let p = ParamPair::new(ext, k, kh);
                acc.pairs += 1;
                let conj = conjugate_exponent(ext, k, kh).is_some();
                if conj {
                    acc.s_dblprime += 1;
                    if !p.admissible {
                        acc.s_dblprime_inadmissible += 1;
                    }
                }
                if p.admissible {
                    acc.admissible += 1;
                    if !conj {
                        acc.s_prime += 1;
                    }
                    if ext.in_base(k) || ext.in_base(kh) {
                        acc.admissible_with_base_param += 1;
                    }
                    if p.class_kind == ClassKind::Commutative {
                        acc.commutative += 1;
                    }
                }
            }
            acc
        })
        .reduce(AdmissibilitySweep::default, |a, b| AdmissibilitySweep {
            pairs: a.pairs + b.pairs,
            admissible: a.admissible + b.admissible,
            s_prime: a.s_prime + b.s_prime,
            s_dblprime: a.s_dblprime + b.s_dblprime,
            s_dblprime_inadmissible: a.s_dblprime_inadmissible + b.s_dblprime_inadmissible,
            admissible_with_base_param: a.admissible_with_base_param + b.admissible_with_base_param,
            commutative: a.commutative + b.commutative,
        })
}

/// Determinant of a 3x3 matrix with entries in `F_{q^3}`.
pub fn det_ext(ext: &ExtCtx, m: &[[ExtElem; 3]; 3]) -> ExtElem {
    let minor = |a, b, c, d| ext.sub(ext.mul(a, d), ext.mul(b, c));
    let t0 = ext.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]));
    let t1 = ext.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]));
    let t2 = ext.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]));
    ext.add(ext.sub(t0, t1), t2)
}

/// `x1 I + x2 A2 + x3 A3` evaluated at a point of `F_{q^3}^3`.
pub fn combination_ext(ext: &ExtCtx, x: [ExtElem; 3], mats: [&Mat3; 3]) -> [[ExtElem; 3]; 3] {
    let mut out = [[ExtElem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = ExtElem::ZERO;
            for t in 0..3 {
                acc = ext.add(acc, ext.scale(mats[t].0[i][j], x[t]));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Both sides of
/// `det(x1 I + x2 Sigma1 + x3 Sigma2) = prod_i (x1 + k^(q^i) x2 + phi^(q^i) x3)`.
pub fn det_factorization_sides(
    ext: &ExtCtx,
    k: ExtElem,
    kh: ExtElem,
    x: [ExtElem; 3],
) -> (ExtElem, ExtElem) {
    let (s1, s2) = sigma_matrices(ext, k, kh);
    let lhs = det_ext(ext, &combination_ext(ext, x, [&Mat3::IDENTITY, &s1, &s2]));
    let ks = ext.conjugates(k);
    let phis = ext.conjugates(ext.phi(k, kh));
    let rhs = (0..3).fold(ExtElem::ONE, |acc, i| {
        let factor = ext.add(ext.add(x[0], ext.mul(ks[i], x[1])), ext.mul(phis[i], x[2]));
        ext.mul(acc, factor)
    });
    (lhs, rhs)
}
