//! The algebra `x o y = (x1 A1 + x2 A2 + x3 A3) y` on `F_q^3` attached to a
//! matrix triple.
//!
//! Multiplication and the zero-divisor test work for any triple; the
//! structural criteria and the dual triple need the normalized shape
//! `(I, C_f, Z)` with `Z e1 = e3`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfield::{ExtCtx, ExtElem, FieldCtx, Fq, MonicCubic};
use crate::mat3::{self, companion, Mat3, Vec3};
use crate::rankcode::{projective_points, MrdTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemifieldClass {
    Field,
    CommutativeNonassociative,
    ProperNoncommutative,
}

impl SemifieldClass {
    pub const ALL: [SemifieldClass; 3] = [
        SemifieldClass::Field,
        SemifieldClass::CommutativeNonassociative,
        SemifieldClass::ProperNoncommutative,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SemifieldClass::Field => "field",
            SemifieldClass::CommutativeNonassociative => "commutative_nonassociative",
            SemifieldClass::ProperNoncommutative => "proper_noncommutative",
        }
    }
}

impl fmt::Display for SemifieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Every vector of `F_q^3`, first coordinate varying slowest.
pub fn all_vectors(field: &FieldCtx) -> Vec<Vec3> {
    let els: Vec<Fq> = field.elements().collect();
    let mut out = Vec::with_capacity(els.len().pow(3));
    for &x in &els {
        for &y in &els {
            for &z in &els {
                out.push([x, y, z]);
            }
        }
    }
    out
}

const E1: Vec3 = [Fq::ONE, Fq::ZERO, Fq::ZERO];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemifieldView {
    triple: MrdTriple,
    normalized: bool,
}

impl SemifieldView {
    /// View of an arbitrary triple; only [`multiply`](Self::multiply) and the
    /// zero-divisor test are available unless the triple is normalized.
    pub fn new(field: &FieldCtx, triple: MrdTriple) -> Self {
        let normalized = triple.is_normalized(field);
        Self { triple, normalized }
    }

    pub fn normalized(field: &FieldCtx, triple: MrdTriple) -> Result<Self> {
        let v = Self::new(field, triple);
        if v.normalized {
            Ok(v)
        } else {
            Err(Error::NotNormalized)
        }
    }

    /// `(I, C_f, Z)` from `f` and the last two columns of `Z`.
    pub fn from_parts(field: &FieldCtx, f: &MonicCubic, z2: Vec3, z3: Vec3) -> Result<Self> {
        let z = Mat3::from_columns([Fq::ZERO, Fq::ZERO, Fq::ONE], z2, z3);
        Self::normalized(field, MrdTriple::normalized(f, z))
    }

    pub fn triple(&self) -> &MrdTriple {
        &self.triple
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    /// `(a, b, c)` with `f = x^3 - c x^2 - b x - a`.
    pub fn f_coeffs(&self) -> Result<Vec3> {
        self.require_normalized()?;
        Ok(self.triple.a2.column(2))
    }

    pub fn f(&self) -> Result<MonicCubic> {
        let [a, b, c] = self.f_coeffs()?;
        Ok(MonicCubic::new(a, b, c))
    }

    /// `((z1, z2, z3), (z1', z2', z3'))`: the second and third columns of `Z`.
    pub fn z_cols(&self) -> Result<(Vec3, Vec3)> {
        self.require_normalized()?;
        Ok((self.triple.a3.column(1), self.triple.a3.column(2)))
    }

    /// Left multiplication matrix `M_x`.
    pub fn left_matrix(&self, field: &FieldCtx, x: &Vec3) -> Mat3 {
        mat3::combination(field, *x, self.triple.matrices())
    }

    pub fn multiply(&self, field: &FieldCtx, x: &Vec3, y: &Vec3) -> Vec3 {
        mat3::mul_vec(field, &self.left_matrix(field, x), y)
    }

    /// Some nonzero `M_x` is singular. Checked on projective representatives.
    pub fn has_zero_divisors_det(&self, field: &FieldCtx) -> bool {
        projective_points(field).any(|x| mat3::det(field, &self.left_matrix(field, &x)).is_zero())
    }

    /// Search all products of nonzero vectors for a zero.
    pub fn has_zero_divisors_exhaustive(&self, field: &FieldCtx) -> bool {
        let vs: Vec<Vec3> = all_vectors(field)
            .into_iter()
            .filter(|v| *v != [Fq::ZERO; 3])
            .collect();
        vs.iter().any(|x| {
            let m = self.left_matrix(field, x);
            vs.iter()
                .any(|y| mat3::mul_vec(field, &m, y) == [Fq::ZERO; 3])
        })
    }

    /// Products are checked exhaustively for `q <= 3` and by determinants
    /// otherwise; with debug assertions on, both are compared against the
    /// MRD test.
    pub fn has_zero_divisors(&self, field: &FieldCtx) -> bool {
        let zd = if field.q() <= 3 {
            self.has_zero_divisors_exhaustive(field)
        } else {
            self.has_zero_divisors_det(field)
        };
        debug_assert_eq!(zd, self.has_zero_divisors_det(field));
        debug_assert_eq!(zd, !self.triple.is_mrd(field));
        zd
    }

    /// `(a, b, c) = (z1, z2, z3)`.
    pub fn is_commutative(&self, field: &FieldCtx) -> Result<bool> {
        let abc = self.f_coeffs()?;
        let (z, _) = self.z_cols()?;
        let crit = abc == z;
        if field.q() <= 3 {
            debug_assert_eq!(crit, self.is_commutative_exhaustive(field));
        }
        Ok(crit)
    }

    pub fn is_commutative_exhaustive(&self, field: &FieldCtx) -> bool {
        let vs = all_vectors(field);
        vs.iter().enumerate().all(|(i, x)| {
            vs[i + 1..]
                .iter()
                .all(|y| self.multiply(field, x, y) == self.multiply(field, y, x))
        })
    }

    /// `Z = C_f^2`.
    pub fn is_associative(&self, field: &FieldCtx) -> Result<bool> {
        self.require_normalized()?;
        let c = &self.triple.a2;
        let crit = self.triple.a3 == mat3::mul(field, c, c);
        if field.q() <= 3 {
            debug_assert_eq!(crit, self.is_associative_exhaustive(field));
        }
        Ok(crit)
    }

    pub fn is_associative_exhaustive(&self, field: &FieldCtx) -> bool {
        let vs = all_vectors(field);
        let mats: Vec<Mat3> = vs.iter().map(|x| self.left_matrix(field, x)).collect();
        mats.iter().all(|mx| {
            vs.iter().enumerate().all(|(j, y)| {
                let xy = mat3::mul_vec(field, mx, y);
                let m_xy = self.left_matrix(field, &xy);
                let my = &mats[j];
                vs.iter().all(|z| {
                    mat3::mul_vec(field, &m_xy, z)
                        == mat3::mul_vec(field, mx, &mat3::mul_vec(field, my, z))
                })
            })
        })
    }

    /// `(I, C_g, Zhat)` with `C_g` the companion of `(z1, z2, z3)` and
    /// `Zhat = (e3 | (a, b, c) | (z1', z2', z3'))`: the matrices of right
    /// multiplication by `e2` and `e3`.
    pub fn dual_triple(&self, field: &FieldCtx) -> Result<SemifieldView> {
        self.require_normalized()?;
        if !self.triple.is_mrd(field) {
            return Err(Error::NotMrd);
        }
        let dual = self.dual_unchecked()?;
        let g = dual.triple.companion_cubic().expect("companion shape");
        assert!(g.is_irreducible(field), "dual cubic reducible");
        assert!(dual.triple.is_mrd(field), "dual triple not MRD");
        let back = dual.dual_unchecked()?;
        assert_eq!(back.triple, self.triple, "duality is not an involution");
        Ok(SemifieldView {
            triple: dual.triple,
            normalized: true,
        })
    }

    fn dual_unchecked(&self) -> Result<SemifieldView> {
        let abc = self.f_coeffs()?;
        let (z, zp) = self.z_cols()?;
        let g = MonicCubic::new(z[0], z[1], z[2]);
        let zhat = Mat3::from_columns([Fq::ZERO, Fq::ZERO, Fq::ONE], abc, zp);
        Ok(SemifieldView {
            triple: MrdTriple::normalized(&g, zhat),
            normalized: true,
        })
    }

    pub fn is_self_dual(&self, field: &FieldCtx) -> Result<bool> {
        Ok(self.dual_triple(field)?.triple == self.triple)
    }

    /// Checks `x1 I + x2 C_f + x3 Z = (x | C_g x | Zhat x)` entrywise at a
    /// point `x` of `F_{q^3}^3`.
    pub fn structure_identity_check(&self, ext: &ExtCtx, x: &[ExtElem; 3]) -> Result<bool> {
        let dual = self.dual_unchecked()?;
        let lhs = crate::menichetti::combination_ext(ext, *x, self.triple.matrices());
        let apply = |m: &Mat3| -> [ExtElem; 3] {
            std::array::from_fn(|i| {
                (0..3).fold(ExtElem::ZERO, |acc, t| {
                    ext.add(acc, ext.scale(m.0[i][t], x[t]))
                })
            })
        };
        let cols = [*x, apply(&dual.triple.a2), apply(&dual.triple.a3)];
        Ok((0..3).all(|i| (0..3).all(|j| lhs[i][j] == cols[j][i])))
    }

    pub fn classify(&self, field: &FieldCtx) -> Result<SemifieldClass> {
        self.require_normalized()?;
        if !self.triple.is_mrd(field) {
            return Err(Error::NotMrd);
        }
        Ok(if self.is_associative(field)? {
            debug_assert!(self.is_commutative(field)?);
            SemifieldClass::Field
        } else if self.is_commutative(field)? {
            SemifieldClass::CommutativeNonassociative
        } else {
            SemifieldClass::ProperNoncommutative
        })
    }

    /// `e1` acts as a two-sided identity on every vector.
    pub fn identity_holds(&self, field: &FieldCtx) -> bool {
        all_vectors(field)
            .iter()
            .all(|v| self.multiply(field, &E1, v) == *v && self.multiply(field, v, &E1) == *v)
    }
}

/// `(I, C_f, C_f^2)`.
pub fn field_view(field: &FieldCtx, f: &MonicCubic) -> Result<SemifieldView> {
    let c = companion(f);
    SemifieldView::normalized(field, MrdTriple::normalized(f, mat3::mul(field, &c, &c)))
}
