//! Brute-force enumerators, the group-theoretic checks behind the reduction
//! to normalized triples, the named verification suites, and assembly of the
//! per-`q` census report.
//!
//! Every check produces a [`CheckRecord`]; a failing check is recorded, never
//! raised, so one run localizes all discrepancies.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfield::{prime_power, ExtCtx, ExtElem, FieldCtx, Fq, MinPoly, MonicCubic};
use crate::mat3::{self, companion, Mat3};
use crate::menichetti::{
    self, admissibility_sweep, count_formulas, enumerate_s_parametric, parametric_classes,
    ClassKind, ParamPair,
};
use crate::rankcode::{
    closed_form_proportion, code_space_size, for_each_rref_basis, gl3_order, is_mrd_mats,
    mrd_code_count, projective_points, proportion_of_mrd, ExactCount, ExactRatio, MrdTriple,
};
use crate::semifield::{all_vectors, SemifieldClass, SemifieldView};

/// Largest `q` for the brute-force enumeration of `S`.
pub const BRUTE_MAX_Q: u64 = 9;
/// Largest `q` brute-forced by default; up to [`BRUTE_MAX_Q`] with `long`.
pub const BRUTE_DEFAULT_MAX_Q: u64 = 5;
/// Largest `q` for the parametric enumeration (`q^6` parameter pairs).
pub const PARAMETRIC_MAX_Q: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn timed(
    name: impl Into<String>,
    check: impl FnOnce() -> std::result::Result<(), String>,
) -> CheckRecord {
    let start = Instant::now();
    let outcome = check();
    CheckRecord {
        name: name.into(),
        pass: outcome.is_ok(),
        millis: start.elapsed().as_millis() as u64,
        detail: outcome.err(),
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn unsupported(q: u64, reason: impl Into<String>) -> Error {
    Error::Unsupported {
        q,
        reason: reason.into(),
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `Z` with first column `(0, 0, z31)` and the other six entries taken from
/// the base-`q` digits of `n`, in the order `z12, z13, z22, z23, z32, z33`.
fn z_from_digits(z31: Fq, mut n: usize, q: usize) -> Mat3 {
    let mut d = [Fq::ZERO; 6];
    for slot in d.iter_mut() {
        *slot = Fq((n % q) as u8);
        n /= q;
    }
    Mat3([
        [Fq::ZERO, d[0], d[1]],
        [Fq::ZERO, d[2], d[3]],
        [z31, d[4], d[5]],
    ])
}

/// Result of the brute-force sweep over `(I, C_f, Z)` with `z11 = z21 = 0`.
#[derive(Debug, Clone)]
pub struct BruteS {
    /// normalized MRD triples (`z31 = 1`), sorted
    pub triples: Vec<MrdTriple>,
    /// MRD triples for any `z31`, i.e. `|Y-hat|`
    pub y_hat: u64,
    pub candidates: u64,
}

/// All normalized MRD triples, by testing every irreducible `f` against every
/// `Z` with `z11 = z21 = 0` (`q^7` matrices per cubic).
pub fn brute_force_s(field: &FieldCtx) -> Result<BruteS> {
    let q = field.q();
    if q > BRUTE_MAX_Q {
        return Err(unsupported(
            q,
            format!("brute-force enumeration needs q <= {BRUTE_MAX_Q}"),
        ));
    }
    let qn = q as usize;
    let inner = qn.pow(6);
    let cubics = field.irreducible_cubics();
    let mut triples = Vec::new();
    let mut y_hat = 0u64;
    for f in &cubics {
        let c = companion(f);
        // z31 outer, remaining six entries in contiguous chunks
        let per_z31: Vec<(Fq, Vec<Mat3>)> = field
            .elements()
            .map(|z31| {
                let found: Vec<Mat3> = (0..inner)
                    .into_par_iter()
                    .with_min_len(256)
                    .map(|n| z_from_digits(z31, n, qn))
                    .filter(|z| is_mrd_mats(field, [&Mat3::IDENTITY, &c, z]))
                    .collect();
                (z31, found)
            })
            .collect();
        for (z31, found) in per_z31 {
            y_hat += found.len() as u64;
            if z31 == Fq::ONE {
                triples.extend(found.into_iter().map(|z| MrdTriple::normalized(f, z)));
            }
        }
    }
    triples.sort();
    Ok(BruteS {
        triples,
        y_hat,
        candidates: (cubics.len() * qn.pow(7)) as u64,
    })
}

/// The `A` with `det(x1 I + x2 A) != 0` for all nonzero `(x1, x2)`: the
/// only possible second members of an MRD triple starting with `I`.
fn pencil_nonsingular(field: &FieldCtx) -> Vec<Mat3> {
    let q = field.q() as usize;
    let points: Vec<[Fq; 3]> = projective_points(field)
        .filter(|p| p[2].is_zero())
        .collect();
    (0..q.pow(9))
        .into_par_iter()
        .map(|n| Mat3::from_counter(n, q))
        .filter(|a| {
            points.iter().all(|p| {
                !mat3::det(
                    field,
                    &mat3::combination(field, *p, [&Mat3::IDENTITY, a, a]),
                )
                .is_zero()
            })
        })
        .collect()
}

/// Number of pairs `(A2, A3)` for which `(I, A2, A3)` is MRD.
pub fn brute_force_vhat(field: &FieldCtx) -> Result<u64> {
    let q = field.q();
    if q > 3 {
        return Err(unsupported(q, "the pair sweep is limited to q <= 3"));
    }
    let qn = q as usize;
    let seconds = pencil_nonsingular(field);
    Ok(seconds
        .par_iter()
        .map(|a2| {
            (0..qn.pow(9))
                .filter(|&n| is_mrd_mats(field, [&Mat3::IDENTITY, a2, &Mat3::from_counter(n, qn)]))
                .count() as u64
        })
        .sum())
}

/// Every pair `(A2, A3)` at `q = 2` sorted by span dimension and, for span 3,
/// by rank distance.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VhatPartition {
    pub pairs: u64,
    pub span_deficient: u64,
    /// index `d` counts span-3 triples of rank distance `d`
    pub by_distance: [u64; 4],
}

pub fn vhat_partition(field: &FieldCtx) -> Result<VhatPartition> {
    if field.q() != 2 {
        return Err(unsupported(
            field.q(),
            "the full pair partition runs at q = 2 only",
        ));
    }
    let mut out = VhatPartition::default();
    for n2 in 0..512 {
        for n3 in 0..512 {
            let t = MrdTriple::new(
                Mat3::IDENTITY,
                Mat3::from_counter(n2, 2),
                Mat3::from_counter(n3, 2),
            );
            out.pairs += 1;
            match t.rank_distance(field) {
                Ok(d) => out.by_distance[d] += 1,
                Err(_) => out.span_deficient += 1,
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceCensus {
    pub subspaces: u64,
    pub mrd: u64,
}

/// Every 3-dimensional subspace of `F_q^{3x3}`, by reduced echelon basis,
/// tested for rank distance 3. Independent of the reduction to triples.
pub fn subspace_oracle(field: &FieldCtx) -> SubspaceCensus {
    let mut subspaces = 0u64;
    let mut mrd = 0u64;
    for_each_rref_basis(field, 9, 3, |rows| {
        subspaces += 1;
        let m: [Mat3; 3] = std::array::from_fn(|i| {
            let flat: [Fq; 9] = rows[i].as_slice().try_into().expect("9 entries");
            Mat3::from_flat(&flat)
        });
        if is_mrd_mats(field, [&m[0], &m[1], &m[2]]) {
            mrd += 1;
        }
    });
    SubspaceCensus { subspaces, mrd }
}

/// `{(s | C s | C^2 s) : s != 0}`.
pub fn stabilizer_param(field: &FieldCtx, c: &Mat3) -> Vec<Mat3> {
    all_vectors(field)
        .into_iter()
        .filter(|s| *s != [Fq::ZERO; 3])
        .map(|s| {
            let cs = mat3::mul_vec(field, c, &s);
            let ccs = mat3::mul_vec(field, c, &cs);
            Mat3::from_columns(s, cs, ccs)
        })
        .collect()
}

/// `<I, C, C^2>` as a set of `q^3` matrices.
fn power_span(field: &FieldCtx, c: &Mat3) -> BTreeSet<Mat3> {
    let c2 = mat3::mul(field, c, c);
    all_vectors(field)
        .into_iter()
        .map(|x| mat3::combination(field, x, [&Mat3::IDENTITY, c, &c2]))
        .collect()
}

fn is_scalar(m: &Mat3) -> bool {
    let d = m.0[0][0];
    (0..3).all(|i| (0..3).all(|j| m.0[i][j] == if i == j { d } else { Fq::ZERO }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerCheck {
    pub brute_size: usize,
    pub param_size: usize,
    pub sets_equal: bool,
    pub param_all_invertible: bool,
}

impl StabilizerCheck {
    pub fn holds(&self, q: u64) -> bool {
        self.sets_equal && self.param_all_invertible && self.brute_size as u64 == q * q * q - 1
    }
}

/// Brute-force centralizer of `C_f` in `GL_3(q)` against the parametrized set.
pub fn verify_stabilizer(field: &FieldCtx, f: &MonicCubic) -> Result<StabilizerCheck> {
    let q = field.q();
    if q > 3 {
        return Err(unsupported(q, "the GL_3 sweep is limited to q <= 3"));
    }
    if !f.is_irreducible(field) {
        return Err(Error::Reducible(f.display(field).to_string()));
    }
    let c = companion(f);
    let brute: BTreeSet<Mat3> = mat3::general_linear_group(field)
        .into_par_iter()
        .filter(|s| mat3::mul(field, s, &c) == mat3::mul(field, &c, s))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let param = stabilizer_param(field, &c);
    let param_all_invertible = param.iter().all(|s| !mat3::det(field, s).is_zero());
    let param_set: BTreeSet<Mat3> = param.iter().copied().collect();
    Ok(StabilizerCheck {
        brute_size: brute.len(),
        param_size: param_set.len(),
        sets_equal: brute == param_set,
        param_all_invertible,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CentralizerCheck {
    pub cubics: usize,
    pub outside: u64,
    pub pairs: u64,
    /// non-scalar stabilizer elements commuting with some `X` outside the span
    pub violations: u64,
    /// every stabilizer element commutes with every `X` inside the span
    pub inside_all_commute: bool,
}

/// For `X` outside `<I, C_f, C_f^2>` and `S` in the stabilizer of `C_f`,
/// `SX = XS` forces `S` scalar.
pub fn verify_centralizer(field: &FieldCtx) -> Result<CentralizerCheck> {
    let q = field.q();
    if q > 3 {
        return Err(unsupported(q, "the centralizer sweep is limited to q <= 3"));
    }
    let qn = q as usize;
    let mut out = CentralizerCheck {
        inside_all_commute: true,
        ..Default::default()
    };
    for f in field.irreducible_cubics() {
        out.cubics += 1;
        let c = companion(&f);
        let stab = stabilizer_param(field, &c);
        let span = power_span(field, &c);
        let (outside, violations, inside_ok) = (0..qn.pow(9))
            .into_par_iter()
            .map(|n| {
                let x = Mat3::from_counter(n, qn);
                let inside = span.contains(&x);
                let mut bad = 0u64;
                let mut ok = true;
                for s in &stab {
                    let commutes = mat3::mul(field, s, &x) == mat3::mul(field, &x, s);
                    if inside {
                        ok &= commutes;
                    } else if commutes && !is_scalar(s) {
                        bad += 1;
                    }
                }
                (u64::from(!inside), bad, ok)
            })
            .reduce(|| (0, 0, true), |a, b| (a.0 + b.0, a.1 + b.1, a.2 && b.2));
        out.outside += outside;
        out.pairs += outside * stab.len() as u64;
        out.violations += violations;
        out.inside_all_commute &= inside_ok;
    }
    Ok(out)
}

/// Direct counts of the intermediate sets of the reduction, and orbit sizes
/// under simultaneous conjugation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub x: u64,
    pub x_hat: u64,
    pub x_hat1: u64,
    pub y: u64,
    pub y_hat: u64,
    /// `X-hat^(1)` members whose orbit has the wrong size
    pub bad_orbits1: u64,
    /// `X-hat^(2)` members whose orbit has the wrong size
    pub bad_orbits2: u64,
    pub orbit_union: u64,
}

pub fn verify_orbit_sizes(field: &FieldCtx) -> Result<OrbitCheck> {
    let q = field.q();
    if q != 2 {
        return Err(unsupported(q, "explicit orbits are computed at q = 2 only"));
    }
    let gl = mat3::general_linear_group(field);
    let gl_inv: Vec<Mat3> = gl
        .iter()
        .map(|s| mat3::inverse(field, s).expect("invertible"))
        .collect();
    let order = gl.len() as u64;
    let q3 = q * q * q;
    let mut out = OrbitCheck::default();
    let mut union: HashSet<(Mat3, Mat3)> = HashSet::new();
    for f in field.irreducible_cubics() {
        let c = companion(&f);
        let span3 = power_span(field, &c);
        for n in 0..(q as usize).pow(9) {
            let z = Mat3::from_counter(n, q as usize);
            let t = MrdTriple::new(Mat3::IDENTITY, c, z);
            if t.span_dim(field) != 3 {
                continue;
            }
            out.x += 1;
            let first_col_ok = z.0[0][0].is_zero() && z.0[1][0].is_zero();
            if first_col_ok {
                out.y += 1;
            }
            if !t.is_mrd(field) {
                continue;
            }
            out.x_hat += 1;
            if first_col_ok {
                out.y_hat += 1;
            }
            let orbit: HashSet<(Mat3, Mat3)> = gl
                .iter()
                .zip(&gl_inv)
                .map(|(s, si)| {
                    (
                        mat3::mul(field, &mat3::mul(field, si, &c), s),
                        mat3::mul(field, &mat3::mul(field, si, &z), s),
                    )
                })
                .collect();
            let size = orbit.len() as u64;
            if span3.contains(&z) {
                out.x_hat1 += 1;
                out.bad_orbits1 += u64::from(size != order / (q3 - 1));
            } else {
                out.bad_orbits2 += u64::from(size != order / (q - 1));
            }
            union.extend(orbit);
        }
    }
    out.orbit_union = union.len() as u64;
    Ok(out)
}

/// Expected values of [`OrbitCheck`] from the closed forms and `|S|`.
pub fn expected_orbit_check(q: u64, s: &ExactCount) -> (BTreeMap<&'static str, BigInt>, BigInt) {
    let qb = big(q);
    let q3 = big(q * q * q);
    let nf = (&q3 - &qb) / 3;
    let y_hat = (&qb - 1) * s;
    let x_hat: BigInt = &qb * &qb * &y_hat;
    let mut m = BTreeMap::new();
    m.insert("x", &nf * (num_traits::pow(qb.clone(), 9) - &qb * &qb));
    m.insert("x_hat1", &nf * (&q3 - &qb * &qb));
    m.insert("y", &nf * (num_traits::pow(qb.clone(), 7) - 1));
    m.insert("y_hat", y_hat);
    m.insert("x_hat", x_hat.clone());
    let v_hat = x_hat * (&q3 - &qb) * (&q3 - &qb * &qb);
    (m, v_hat)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub admissible: u64,
    pub groups: u64,
    pub groups_of_3: u64,
    pub groups_of_6: u64,
    /// groups whose members differ from the predicted class
    pub mismatches: u64,
}

/// Groups all admissible pairs by their matrix pair and compares each group
/// with the predicted equivalence class.
pub fn verify_param_equivalence(ext: &ExtCtx) -> Result<EquivalenceCheck> {
    let q = ext.base().q();
    if q > 4 {
        return Err(unsupported(q, "pair grouping is limited to q <= 4"));
    }
    let mut groups: BTreeMap<(Mat3, Mat3), BTreeSet<(ExtElem, ExtElem)>> = BTreeMap::new();
    let mut out = EquivalenceCheck::default();
    for k in ext.elements() {
        for kh in ext.elements() {
            if menichetti::is_admissible(ext, k, kh) {
                out.admissible += 1;
                groups
                    .entry(menichetti::sigma_matrices(ext, k, kh))
                    .or_default()
                    .insert((k, kh));
            }
        }
    }
    for members in groups.values() {
        out.groups += 1;
        match members.len() {
            3 => out.groups_of_3 += 1,
            6 => out.groups_of_6 += 1,
            _ => {}
        }
        let &(k, kh) = members.iter().next().expect("nonempty group");
        let predicted: BTreeSet<(ExtElem, ExtElem)> = ParamPair::new(ext, k, kh)
            .class_members(ext)
            .into_iter()
            .map(|p| (p.k, p.kh))
            .collect();
        out.mismatches += u64::from(&predicted != members);
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub pairs: u64,
    pub points: u64,
    pub failures: u64,
}

/// Compares `det(x1 I + x2 Sigma1 + x3 Sigma2)` with the product of the
/// conjugate linear forms. `samples = None` checks every admissible pair at
/// every point of `F_{q^3}^3`; otherwise random (pair, point) draws.
pub fn verify_det_factorization(
    ext: &ExtCtx,
    samples: Option<u64>,
    seed: u64,
) -> FactorizationCheck {
    let pairs: Vec<(ExtElem, ExtElem)> = ext
        .elements()
        .flat_map(|k| ext.elements().map(move |kh| (k, kh)))
        .filter(|&(k, kh)| menichetti::is_admissible(ext, k, kh))
        .collect();
    let mut out = FactorizationCheck {
        pairs: pairs.len() as u64,
        ..Default::default()
    };
    let mut check = |k, kh, x| {
        let (l, r) = menichetti::det_factorization_sides(ext, k, kh, x);
        out.points += 1;
        out.failures += u64::from(l != r);
    };
    match samples {
        None => {
            let n = ext.order();
            for &(k, kh) in &pairs {
                for i in 0..n * n * n {
                    let x = [
                        ext.from_index(i % n),
                        ext.from_index(i / n % n),
                        ext.from_index(i / (n * n)),
                    ];
                    check(k, kh, x);
                }
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = ext.order();
            for _ in 0..count {
                let (k, kh) = pairs[rng.gen_range(0..pairs.len())];
                let x = std::array::from_fn(|_| ext.from_index(rng.gen_range(0..n)));
                check(k, kh, x);
            }
        }
    }
    out
}

pub fn classify_all(
    field: &FieldCtx,
    triples: &[MrdTriple],
) -> Result<BTreeMap<SemifieldClass, u64>> {
    let mut counts: BTreeMap<SemifieldClass, u64> =
        SemifieldClass::ALL.iter().map(|&c| (c, 0)).collect();
    for t in triples {
        let class = SemifieldView::normalized(field, t.clone())?.classify(field)?;
        *counts.entry(class).or_default() += 1;
    }
    Ok(counts)
}

/// Fields `(q^3-q)/3`, commutative non-associative `(q^3-q)/3` in odd
/// characteristic and 0 in even, the rest proper.
pub fn expected_class_counts(q: u64) -> BTreeMap<SemifieldClass, BigInt> {
    let nf: BigInt = (big(q).pow(3) - big(q)) / 3;
    let comm = if q % 2 == 1 {
        nf.clone()
    } else {
        BigInt::from(0)
    };
    let proper = count_formulas(q).s - &nf - &comm;
    BTreeMap::from([
        (SemifieldClass::Field, nf),
        (SemifieldClass::CommutativeNonassociative, comm),
        (SemifieldClass::ProperNoncommutative, proper),
    ])
}

fn expected_class(kind: ClassKind) -> Option<SemifieldClass> {
    match kind {
        ClassKind::Field => Some(SemifieldClass::Field),
        ClassKind::Commutative => Some(SemifieldClass::CommutativeNonassociative),
        ClassKind::Proper => Some(SemifieldClass::ProperNoncommutative),
        ClassKind::Inadmissible => None,
    }
}

fn contexts(q: u64) -> Result<ExtCtx> {
    Ok(ExtCtx::new(FieldCtx::new(q)?))
}

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Sigma,
    Phi,
    Parametrization,
    Stabilizer,
    Centralizer,
    Orbits,
    Reduction,
    Semifield,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Sigma,
        Suite::Phi,
        Suite::Parametrization,
        Suite::Stabilizer,
        Suite::Centralizer,
        Suite::Orbits,
        Suite::Reduction,
        Suite::Semifield,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sigma => "sigma",
            Suite::Phi => "phi",
            Suite::Parametrization => "parametrization",
            Suite::Stabilizer => "stabilizer",
            Suite::Centralizer => "centralizer",
            Suite::Orbits => "orbits",
            Suite::Reduction => "reduction",
            Suite::Semifield => "semifield",
        }
    }

    /// Whether the suite runs at this `q`.
    pub fn supports(self, q: u64) -> bool {
        match self {
            Suite::Sigma | Suite::Phi => true,
            Suite::Parametrization | Suite::Semifield | Suite::Reduction => {
                q <= BRUTE_DEFAULT_MAX_Q
            }
            Suite::Stabilizer | Suite::Centralizer => q <= 3,
            Suite::Orbits => q == 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

pub fn run_suite(suite: Suite, q: u64, seed: u64) -> Result<Vec<CheckRecord>> {
    if !suite.supports(q) {
        return Err(unsupported(
            q,
            format!("suite '{suite}' does not run at this q"),
        ));
    }
    let ext = contexts(q)?;
    Ok(match suite {
        Suite::Sigma => sigma_suite(&ext),
        Suite::Phi => phi_suite(&ext),
        Suite::Parametrization => parametrization_suite(&ext, seed)?,
        Suite::Stabilizer => stabilizer_suite(ext.base())?,
        Suite::Centralizer => centralizer_suite(ext.base())?,
        Suite::Orbits => orbit_suite(&ext)?,
        Suite::Reduction => reduction_suite(&ext)?,
        Suite::Semifield => semifield_suite(&ext, seed)?,
    })
}

fn sigma_suite(ext: &ExtCtx) -> Vec<CheckRecord> {
    let q = ext.base().q();
    let mut out = Vec::new();
    out.push(timed(format!("sigma.expansion[q={q}]"), || {
        // (x - k)(x - k1)(x - k2) = x^3 - s1 x^2 + s2 x - s3
        for k in ext.elements() {
            let [k0, k1, k2] = ext.conjugates(k);
            let e1 = ext.add(ext.add(k0, k1), k2);
            let e2 = ext.add(ext.add(ext.mul(k0, k1), ext.mul(k0, k2)), ext.mul(k1, k2));
            let e3 = ext.mul(ext.mul(k0, k1), k2);
            for (j, e) in [e1, e2, e3].into_iter().enumerate() {
                let s = ext
                    .sigma(j + 1, k)
                    .map_err(|err| format!("sigma_{} of {k}: {err}", j + 1))?;
                if ext.embed(s) != e {
                    return Err(format!("sigma_{} mismatch at {k}", j + 1));
                }
            }
        }
        Ok(())
    }));
    out.push(timed(
        format!("sigma.fibers_are_conjugate_sets[q={q}]"),
        || {
            let mut fibers: BTreeMap<[Fq; 3], BTreeSet<ExtElem>> = BTreeMap::new();
            for k in ext.elements() {
                fibers.entry(ext.sigmas(k)).or_default().insert(k);
            }
            for members in fibers.values() {
                let k = *members.iter().next().expect("nonempty");
                let conj: BTreeSet<ExtElem> = ext.conjugates(k).into_iter().collect();
                if &conj != members {
                    return Err(format!("fiber of {k} is not its conjugate set"));
                }
            }
            Ok(())
        },
    ));
    out.push(timed(
        format!("sigma.sigma1_matches_min_poly[q={q}]"),
        || {
            let f = ext.base();
            for k in ext.elements().filter(|&k| !ext.in_base(k)) {
                let (s1, _) = menichetti::sigma_matrices(ext, k, k);
                if MinPoly::Cubic(mat3::char_poly(f, &s1)) != ext.min_poly(k) {
                    return Err(format!(
                        "char poly of Sigma1({k}) differs from the minimal polynomial"
                    ));
                }
            }
            Ok(())
        },
    ));
    out
}

fn phi_suite(ext: &ExtCtx) -> Vec<CheckRecord> {
    let q = ext.base().q();
    vec![timed(format!("phi.conjugate_gives_square[q={q}]"), || {
        for k in ext.elements() {
            let sq = ext.mul(k, k);
            for n in [1, 2] {
                if ext.phi(k, ext.frobenius(k, n)) != sq {
                    return Err(format!("phi(k, k^(q^{n})) != k^2 at k = {k}"));
                }
            }
        }
        Ok(())
    })]
}

fn admissibility_records(ext: &ExtCtx) -> Vec<CheckRecord> {
    let q = ext.base().q();
    let mut out = Vec::new();
    let sweep = admissibility_sweep(ext);
    let formulas = count_formulas(q);
    out.push(timed(
        format!("cardinality.s_prime_s_dblprime[q={q}]"),
        || {
            expect_eq("|S'|", big(sweep.s_prime), formulas.s_prime.clone())?;
            expect_eq("|S''|", big(sweep.s_dblprime), formulas.s_dblprime.clone())?;
            expect_eq(
                "inadmissible pairs in S''",
                sweep.s_dblprime_inadmissible,
                0,
            )?;
            expect_eq(
                "admissible pairs with a base-field parameter",
                sweep.admissible_with_base_param,
                0,
            )
        },
    ));
    out.push(timed(
        format!("cardinality.s_prime_empty_iff_q2[q={q}]"),
        || expect_eq("S' empty", sweep.s_prime == 0, q == 2),
    ));
    out
}

fn parametrization_suite(ext: &ExtCtx, seed: u64) -> Result<Vec<CheckRecord>> {
    let field = ext.base();
    let q = field.q();
    let mut out = Vec::new();
    let formula = count_formulas(q).s;
    let param = enumerate_s_parametric(ext);
    let brute = brute_force_s(field)?;
    out.push(timed(
        format!("parametrization.set_equality[q={q}]"),
        || {
            expect_eq("|parametric|", big(param.len() as u64), formula.clone())?;
            expect_eq("|brute|", big(brute.triples.len() as u64), formula.clone())?;
            if param != brute.triples {
                return Err("parametric and brute-force sets differ".into());
            }
            Ok(())
        },
    ));
    out.push(timed(
        format!("parametrization.frobenius_invariance[q={q}]"),
        || {
            for k in ext.elements().filter(|&k| !ext.in_base(k)) {
                for kh in ext.elements() {
                    let m = menichetti::sigma_matrices(ext, k, kh);
                    for r in [1, 2] {
                        if menichetti::sigma_matrices(
                            ext,
                            ext.frobenius(k, r),
                            ext.frobenius(kh, r),
                        ) != m
                        {
                            return Err(format!(
                                "shift by {r} changes the matrices at ({k}, {kh})"
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    ));
    if q <= 4 {
        out.push(timed(
            format!("parametrization.equivalence_classes[q={q}]"),
            || {
                let c = verify_param_equivalence(ext).map_err(|e| e.to_string())?;
                expect_eq("mismatched groups", c.mismatches, 0)?;
                expect_eq("groups", big(c.groups), formula.clone())?;
                expect_eq(
                    "groups of 6",
                    big(c.groups_of_6),
                    (big(q).pow(3) - big(q)) / 3,
                )
            },
        ));
    }
    out.push(timed(
        format!("parametrization.eigenvalue_transfer[q={q}]"),
        || {
            for k in ext.elements().filter(|&k| !ext.in_base(k)) {
                for kh in ext.elements() {
                    if !menichetti::is_admissible(ext, k, kh) {
                        continue;
                    }
                    let (_, s2) = menichetti::sigma_matrices(ext, k, kh);
                    if MinPoly::Cubic(mat3::char_poly(field, &s2)) != ext.min_poly(ext.phi(k, kh)) {
                        return Err(format!(
                            "char poly of Sigma2({k}, {kh}) is not the minimal polynomial of phi"
                        ));
                    }
                }
            }
            Ok(())
        },
    ));
    out.push(timed(
        format!("parametrization.det_factorization[q={q}]"),
        || {
            let samples = if q == 2 { None } else { Some(20_000) };
            let c = verify_det_factorization(ext, samples, seed);
            expect_eq("failures", c.failures, 0)?;
            if samples.is_some() && c.points < 10_000 {
                return Err(format!("only {} points sampled", c.points));
            }
            Ok(())
        },
    ));
    out.extend(admissibility_records(ext));
    Ok(out)
}

fn stabilizer_suite(field: &FieldCtx) -> Result<Vec<CheckRecord>> {
    let q = field.q();
    let mut out = Vec::new();
    for f in field.irreducible_cubics() {
        out.push(timed(
            format!("stabilizer[q={q}, f={}]", f.display(field)),
            || {
                let c = verify_stabilizer(field, &f).map_err(|e| e.to_string())?;
                if c.holds(q) {
                    Ok(())
                } else {
                    Err(format!("{c:?}"))
                }
            },
        ));
    }
    Ok(out)
}

fn centralizer_suite(field: &FieldCtx) -> Result<Vec<CheckRecord>> {
    let q = field.q();
    let start = Instant::now();
    let c = verify_centralizer(field)?;
    let mut rec = timed(format!("centralizer[q={q}]"), || {
        expect_eq("violations", c.violations, 0)?;
        expect_eq("inside span commutes", c.inside_all_commute, true)?;
        let per_cubic = q.pow(9) - q.pow(3);
        expect_eq(
            "matrices outside the span",
            c.outside,
            per_cubic * c.cubics as u64,
        )
    });
    rec.millis = start.elapsed().as_millis() as u64;
    Ok(vec![rec])
}

fn orbit_suite(ext: &ExtCtx) -> Result<Vec<CheckRecord>> {
    let field = ext.base();
    let q = field.q();
    let start = Instant::now();
    let s = big(brute_force_s(field)?.triples.len() as u64);
    let c = verify_orbit_sizes(field)?;
    let (expected, v_hat) = expected_orbit_check(q, &s);
    let vhat_brute = brute_force_vhat(field)?;
    let mut rec = timed(format!("orbits[q={q}]"), || {
        expect_eq("wrong orbit sizes (Z in span)", c.bad_orbits1, 0)?;
        expect_eq("wrong orbit sizes (Z outside span)", c.bad_orbits2, 0)?;
        let got = [
            ("x", c.x),
            ("x_hat1", c.x_hat1),
            ("y", c.y),
            ("y_hat", c.y_hat),
            ("x_hat", c.x_hat),
        ];
        for (name, value) in got {
            expect_eq(name, big(value), expected[name].clone())?;
        }
        expect_eq("orbit union", big(c.orbit_union), v_hat.clone())?;
        expect_eq("orbit union vs pair sweep", c.orbit_union, vhat_brute)
    });
    rec.millis = start.elapsed().as_millis() as u64;
    Ok(vec![rec])
}

fn reduction_suite(ext: &ExtCtx) -> Result<Vec<CheckRecord>> {
    let field = ext.base();
    let q = field.q();
    let mut out = Vec::new();
    let brute = brute_force_s(field)?;
    let s = big(brute.triples.len() as u64);
    let (expected, v_hat) = expected_orbit_check(q, &s);
    out.push(timed(format!("reduction.y_hat[q={q}]"), || {
        expect_eq("|Y-hat|", big(brute.y_hat), expected["y_hat"].clone())
    }));
    out.push(timed(format!("reduction.proportion[q={q}]"), || {
        let p = proportion_of_mrd(q, &s).map_err(|e| e.to_string())?;
        expect_eq("proportion", p.clone(), closed_form_proportion(q))?;
        let t_hat = mrd_code_count(q, &p).map_err(|e| e.to_string())?;
        expect_eq("t_hat vs chain", t_hat, v_hat.clone())
    }));
    if q == 2 {
        out.push(timed(format!("reduction.vhat_sweep[q={q}]"), || {
            let n = brute_force_vhat(field).map_err(|e| e.to_string())?;
            expect_eq("|V-hat|", big(n), v_hat.clone())
        }));
    }
    if q == 2 {
        out.push(timed("reduction.subspace_oracle[q=2]", || {
            let c = subspace_oracle(field);
            expect_eq("subspaces", big(c.subspaces), code_space_size(2))?;
            expect_eq("MRD subspaces", big(c.mrd), v_hat.clone())
        }));
    }
    Ok(out)
}

fn semifield_suite(ext: &ExtCtx, seed: u64) -> Result<Vec<CheckRecord>> {
    let field = ext.base();
    let q = field.q();
    let mut out = Vec::new();
    let s = enumerate_s_parametric(ext);
    let views: Vec<SemifieldView> = s
        .iter()
        .map(|t| SemifieldView::normalized(field, t.clone()))
        .collect::<Result<_>>()?;

    if q == 2 {
        out.push(timed("semifield.zero_divisors_all_pairs[q=2]", || {
            let bad = (0..512usize)
                .into_par_iter()
                .map(|n2| {
                    let a2 = Mat3::from_counter(n2, 2);
                    (0..512usize)
                        .filter(|&n3| {
                            let t = MrdTriple::new(Mat3::IDENTITY, a2, Mat3::from_counter(n3, 2));
                            let v = SemifieldView::new(field, t.clone());
                            v.has_zero_divisors_exhaustive(field) == t.is_mrd(field)
                        })
                        .count()
                })
                .sum::<usize>();
            expect_eq("disagreements", bad, 0)
        }));
    }
    out.push(timed(
        format!("semifield.zero_divisors_candidates[q={q}]"),
        || {
            // all normalized candidates with z31 = 1, MRD or not
            if q > 3 {
                return Ok(());
            }
            let qn = q as usize;
            for f in field.irreducible_cubics() {
                for n in 0..qn.pow(6) {
                    let z = z_from_digits(Fq::ONE, n, qn);
                    let v = SemifieldView::normalized(field, MrdTriple::normalized(&f, z))
                        .map_err(|e| e.to_string())?;
                    if v.has_zero_divisors_exhaustive(field) == v.triple().is_mrd(field) {
                        return Err(format!("zero divisors disagree with MRD at Z = {z}"));
                    }
                }
            }
            Ok(())
        },
    ));
    out.push(timed(
        format!("semifield.criteria_vs_exhaustive[q={q}]"),
        || {
            if q > 3 {
                return Ok(());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cubics = field.irreducible_cubics();
            let mut sample: Vec<SemifieldView> = views.clone();
            for _ in 0..64 {
                let f = cubics[rng.gen_range(0..cubics.len())];
                let z = z_from_digits(Fq::ONE, rng.gen_range(0..(q as usize).pow(6)), q as usize);
                sample.push(
                    SemifieldView::normalized(field, MrdTriple::normalized(&f, z))
                        .map_err(|e| e.to_string())?,
                );
            }
            for v in &sample {
                let comm = v.is_commutative(field).map_err(|e| e.to_string())?;
                let assoc = v.is_associative(field).map_err(|e| e.to_string())?;
                if comm != v.is_commutative_exhaustive(field) {
                    return Err(format!(
                        "commutativity criterion wrong for {:?}",
                        v.triple()
                    ));
                }
                if assoc != v.is_associative_exhaustive(field) {
                    return Err(format!(
                        "associativity criterion wrong for {:?}",
                        v.triple()
                    ));
                }
            }
            Ok(())
        },
    ));
    out.push(timed(format!("semifield.dual_triple[q={q}]"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let n = ext.order();
        for v in &views {
            let d = v.dual_triple(field).map_err(|e| e.to_string())?;
            if !d.triple().is_mrd(field) {
                return Err("dual not MRD".into());
            }
            if d.dual_triple(field).map_err(|e| e.to_string())? != *v {
                return Err("duality not involutive".into());
            }
            let ok = if q == 2 {
                (0..n * n * n).all(|i| {
                    let x = [
                        ext.from_index(i % n),
                        ext.from_index(i / n % n),
                        ext.from_index(i / (n * n)),
                    ];
                    v.structure_identity_check(ext, &x).unwrap_or(false)
                })
            } else {
                (0..64).all(|_| {
                    let x = std::array::from_fn(|_| ext.from_index(rng.gen_range(0..n)));
                    v.structure_identity_check(ext, &x).unwrap_or(false)
                })
            };
            if !ok {
                return Err(format!("structure identity fails for {:?}", v.triple()));
            }
        }
        Ok(())
    }));
    out.push(timed(format!("semifield.class_counts[q={q}]"), || {
        let got = classify_all(field, &s).map_err(|e| e.to_string())?;
        let got: BTreeMap<SemifieldClass, BigInt> =
            got.into_iter().map(|(k, v)| (k, big(v))).collect();
        expect_eq("class counts", got, expected_class_counts(q))
    }));
    out.push(timed(
        format!("semifield.class_matches_parameters[q={q}]"),
        || {
            for c in parametric_classes(ext) {
                let v = SemifieldView::normalized(field, c.triple.clone())
                    .map_err(|e| e.to_string())?;
                let class = v.classify(field).map_err(|e| e.to_string())?;
                if Some(class) != expected_class(c.rep.class_kind) {
                    return Err(format!(
                        "pair ({}, {}) is {} but classifies as {class}",
                        c.rep.k, c.rep.kh, c.rep.class_kind
                    ));
                }
            }
            Ok(())
        },
    ));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub brute: bool,
    pub parametric: bool,
    pub long: bool,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            brute: true,
            parametric: true,
            long: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub q: u64,
    pub s_brute: Option<ExactCount>,
    pub s_parametric: Option<ExactCount>,
    pub s_formula: ExactCount,
    pub s_prime: ExactCount,
    pub s_dblprime: ExactCount,
    pub t_hat: ExactCount,
    pub t_total: ExactCount,
    pub proportion: ExactRatio,
    pub class_counts: BTreeMap<SemifieldClass, ExactCount>,
    /// where `class_counts` came from: "enumeration" or "formula"
    pub class_source: &'static str,
    pub checks: Vec<CheckRecord>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Formula-only report; works for any prime power, no field tables needed.
pub fn formula_report(q: u64) -> Result<CensusReport> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let counts = count_formulas(q);
    let t_total = code_space_size(q);
    let proportion = closed_form_proportion(q);
    let t_hat = mrd_code_count(q, &proportion)?;
    let mut checks = Vec::new();
    checks.push(timed(format!("formula.proportion_via_s[q={q}]"), || {
        let p = proportion_of_mrd(q, &counts.s).map_err(|e| e.to_string())?;
        expect_eq("proportion", p, proportion.clone())
    }));
    checks.push(timed(format!("formula.chain[q={q}]"), || {
        let (_, v_hat) = expected_orbit_check(q, &counts.s);
        expect_eq("t_hat vs chain", t_hat.clone(), v_hat)?;
        expect_eq(
            "t_hat vs gl3 identity",
            t_hat.clone(),
            &counts.s * (big(q) - 1) * big(q) * big(q) * gl3_order(q) / (big(q).pow(3) - 1),
        )
    }));
    Ok(CensusReport {
        q,
        s_brute: None,
        s_parametric: None,
        s_formula: counts.s,
        s_prime: counts.s_prime,
        s_dblprime: counts.s_dblprime,
        t_hat,
        t_total,
        proportion,
        class_counts: expected_class_counts(q),
        class_source: "formula",
        checks,
    })
}

/// Full census for one `q`: formulas, then whichever enumerations the options
/// and `q` allow, with all cross-checks recorded.
pub fn census_report(q: u64, options: CensusOptions) -> Result<CensusReport> {
    let mut report = formula_report(q)?;
    let brute_cap = if options.long {
        BRUTE_MAX_Q
    } else {
        BRUTE_DEFAULT_MAX_Q
    };
    let do_brute = options.brute && q <= brute_cap;
    let do_param = options.parametric && q <= PARAMETRIC_MAX_Q;
    if options.brute && q > brute_cap && q <= BRUTE_MAX_Q {
        report.checks.push(CheckRecord {
            name: format!("census.brute_skipped[q={q}]"),
            pass: true,
            millis: 0,
            detail: None,
        });
    }
    if !do_brute && !do_param {
        return Ok(report);
    }
    if options.brute && q > BRUTE_MAX_Q && !do_param {
        return Err(unsupported(
            q,
            format!("enumeration needs q <= {PARAMETRIC_MAX_Q}"),
        ));
    }
    let ext = contexts(q)?;
    let field = ext.base();

    let mut brute = None;
    if do_brute {
        let start = Instant::now();
        let b = brute_force_s(field)?;
        let s = big(b.triples.len() as u64);
        let y_hat_expected = (big(q) - 1) * &s;
        let mut rec = timed(format!("census.brute_s[q={q}]"), || {
            expect_eq("|S| brute", s.clone(), report.s_formula.clone())?;
            expect_eq("|Y-hat| brute", big(b.y_hat), y_hat_expected)
        });
        rec.millis = start.elapsed().as_millis() as u64;
        report.checks.push(rec);
        report.s_brute = Some(s);
        brute = Some(b.triples);
    }
    let mut param = None;
    if do_param {
        let start = Instant::now();
        let p = enumerate_s_parametric(&ext);
        let s = big(p.len() as u64);
        let mut rec = timed(format!("census.parametric_s[q={q}]"), || {
            expect_eq("|S| parametric", s.clone(), report.s_formula.clone())
        });
        rec.millis = start.elapsed().as_millis() as u64;
        report.checks.push(rec);
        report.s_parametric = Some(s);
        param = Some(p);
    }
    if let (Some(b), Some(p)) = (&brute, &param) {
        report
            .checks
            .push(timed(format!("census.set_equality[q={q}]"), || {
                if b == p {
                    Ok(())
                } else {
                    Err("brute-force and parametric sets differ".into())
                }
            }));
    }

    // t_hat from the strongest available |S|
    let s_used = report
        .s_brute
        .clone()
        .or_else(|| report.s_parametric.clone())
        .expect("enumerated");
    report.checks.push(timed(
        format!("census.t_hat_from_enumeration[q={q}]"),
        || {
            let p = proportion_of_mrd(q, &s_used).map_err(|e| e.to_string())?;
            expect_eq("proportion", p.clone(), report.proportion.clone())?;
            let t_hat = mrd_code_count(q, &p).map_err(|e| e.to_string())?;
            expect_eq("t_hat", t_hat, report.t_hat.clone())
        },
    ));

    let triples = brute.as_ref().or(param.as_ref()).expect("enumerated");
    let start = Instant::now();
    let counts = classify_all(field, triples)?;
    let counts: BTreeMap<SemifieldClass, BigInt> =
        counts.into_iter().map(|(k, v)| (k, big(v))).collect();
    let mut rec = timed(format!("census.class_counts[q={q}]"), || {
        expect_eq("class counts", counts.clone(), expected_class_counts(q))
    });
    rec.millis = start.elapsed().as_millis() as u64;
    report.checks.push(rec);
    report.class_counts = counts;
    report.class_source = "enumeration";

    if do_param && q <= 5 {
        report.checks.extend(admissibility_records(&ext));
    }
    if q == 2 || (q == 3 && options.long) {
        let start = Instant::now();
        let (_, v_hat) = expected_orbit_check(q, &s_used);
        {
            let n = brute_force_vhat(field)?;
            let mut rec = timed(format!("census.vhat_sweep[q={q}]"), || {
                expect_eq("|V-hat|", big(n), v_hat.clone())?;
                expect_eq("|V-hat| vs t_hat", big(n), report.t_hat.clone())
            });
            rec.millis = start.elapsed().as_millis() as u64;
            report.checks.push(rec);
        }
    }
    if q == 2 && options.long {
        report.checks.push(timed("census.subspace_oracle[q=2]", || {
            let c = subspace_oracle(field);
            expect_eq("subspaces", big(c.subspaces), report.t_total.clone())?;
            expect_eq("MRD subspaces", big(c.mrd), report.t_hat.clone())
        }));
    }
    Ok(report)
}

/// `closed_form_proportion` strictly decreasing along `qs`.
pub fn proportion_strictly_decreasing(qs: &[u64]) -> bool {
    qs.windows(2)
        .all(|w| closed_form_proportion(w[1]) < closed_form_proportion(w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    #[test]
    fn brute_s_small() {
        let b = brute_force_s(&field(2)).unwrap();
        assert_eq!(b.triples.len(), 2);
        assert_eq!(b.candidates, 256);
        assert_eq!(b.y_hat, 2);
        let b = brute_force_s(&field(3)).unwrap();
        assert_eq!(b.triples.len(), 112);
        assert_eq!(b.candidates, 17_496);
        assert_eq!(b.y_hat, 224);
        assert!(brute_force_s(&field(11)).is_err());
    }

    #[test]
    fn vhat_q2() {
        let f = field(2);
        assert_eq!(brute_force_vhat(&f).unwrap(), 192);
        let p = vhat_partition(&f).unwrap();
        assert_eq!(p.pairs, 512 * 512);
        assert_eq!(p.span_deficient, 512 * 512 - 510 * 508);
        assert_eq!(p.by_distance[3], 192);
        assert_eq!(p.by_distance[0], 0);
        assert_eq!(
            p.span_deficient + p.by_distance.iter().sum::<u64>(),
            p.pairs
        );
    }

    #[test]
    fn stabilizer_q2() {
        let f = field(2);
        let cubic = MonicCubic::from_coeffs(&f, Fq(1), Fq(1), Fq(0));
        let c = verify_stabilizer(&f, &cubic).unwrap();
        assert_eq!(c.brute_size, 7);
        assert!(c.holds(2));
        let reducible = MonicCubic::new(Fq(0), Fq(0), Fq(0));
        assert!(matches!(
            verify_stabilizer(&f, &reducible),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn centralizer_q2() {
        let c = verify_centralizer(&field(2)).unwrap();
        assert_eq!(c.cubics, 2);
        assert_eq!(c.outside, 2 * (512 - 8));
        assert_eq!(c.violations, 0);
        assert!(c.inside_all_commute);
    }

    #[test]
    fn orbits_q2() {
        let f = field(2);
        let c = verify_orbit_sizes(&f).unwrap();
        assert_eq!((c.x, c.x_hat1, c.y), (1016, 8, 254));
        assert_eq!(c.orbit_union, 192);
        assert_eq!(c.bad_orbits1 + c.bad_orbits2, 0);
    }

    #[test]
    fn equivalence_q2() {
        let ext = ExtCtx::new(field(2));
        let c = verify_param_equivalence(&ext).unwrap();
        assert_eq!(
            (c.admissible, c.groups, c.groups_of_6, c.mismatches),
            (12, 2, 2, 0)
        );
    }

    #[test]
    fn factorization_q2() {
        let ext = ExtCtx::new(field(2));
        let c = verify_det_factorization(&ext, None, 0);
        assert_eq!(c.pairs, 12);
        assert_eq!(c.points, 12 * 512);
        assert_eq!(c.failures, 0);
    }

    #[test]
    fn expected_classes() {
        let c = expected_class_counts(3);
        assert_eq!(c[&SemifieldClass::Field], big(8));
        assert_eq!(c[&SemifieldClass::CommutativeNonassociative], big(8));
        assert_eq!(c[&SemifieldClass::ProperNoncommutative], big(96));
        let c = expected_class_counts(2);
        assert_eq!(c[&SemifieldClass::ProperNoncommutative], big(0));
    }

    #[test]
    fn proportion_trend() {
        // rises from q = 2 to q = 3, then falls
        assert!(!proportion_strictly_decreasing(&[2, 3]));
        assert!(proportion_strictly_decreasing(&[
            3, 4, 5, 7, 8, 9, 11, 13, 16
        ]));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn census_q2() {
        let r = census_report(2, CensusOptions::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.t_hat, big(192));
        assert_eq!(r.s_brute, Some(big(2)));
    }

    #[test]
    fn formula_only_large_q() {
        let r = formula_report(64).unwrap();
        assert!(r.all_pass());
        assert!(formula_report(6).is_err());
        let r = formula_report(1 << 20).unwrap();
        assert!(r.all_pass());
    }
}
