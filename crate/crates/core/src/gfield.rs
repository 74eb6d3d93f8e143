//! Finite fields `F_q` (q <= 64) and the cubic extension `F_{q^3}`.
//!
//! Base-field elements are small integer indices. For a prime field the index
//! is the residue; for `q = p^e` the index encodes the coefficient vector of a
//! polynomial in the generator, `sum c_i p^i`. All arithmetic goes through full
//! addition and multiplication tables, which stay below 4096 entries each.
//!
//! Extension elements are coordinate triples over the power basis `(1, t, t^2)`
//! where `t` is a root of the defining cubic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Smallest and largest supported base-field order.
pub const MIN_Q: u64 = 2;
pub const MAX_Q: u64 = 64;

/// Element of a base field, stored as its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Dense polynomials over F_p, coefficients low degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = modpow(m[dm], p - 2, p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - factor * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `n`, least significant digit as constant term.
fn monic_from_digits(n: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut rest = n;
    for _ in 0..deg {
        coeffs.push(rest % p);
        rest /= p;
    }
    coeffs.push(1);
    coeffs
}

fn is_irreducible_over_prime(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for n in 0..p.pow(d) {
            let g = monic_from_digits(n, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Arithmetic context for `F_q`.
#[derive(Clone)]
pub struct FieldCtx {
    q: usize,
    p: u64,
    e: u32,
    /// Defining polynomial over `F_p` (low degree first, monic); `None` for prime fields.
    modulus: Option<Vec<u64>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_q`. For `q = p^e` with `e > 1` the defining polynomial is the
    /// smallest irreducible monic of degree `e` when polynomials are ordered by
    /// their coefficient vectors read from the highest non-leading degree down.
    pub fn new(q: u64) -> Result<Self> {
        if !(MIN_Q..=MAX_Q).contains(&q) {
            return Err(Error::OrderOutOfRange {
                q,
                min: MIN_Q,
                max: MAX_Q,
            });
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = (e > 1).then(|| {
            (0..p.pow(e))
                .map(|n| monic_from_digits(n, e, p))
                .find(|f| is_irreducible_over_prime(f, p))
                .expect("an irreducible polynomial exists in every degree")
        });

        let qu = q as usize;
        let digits = |x: usize| -> Vec<u64> {
            let mut v = Vec::with_capacity(e as usize);
            let mut r = x as u64;
            for _ in 0..e {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let undigits =
            |v: &[u64]| -> usize { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize };

        let mut add = vec![0u8; qu * qu];
        let mut mul = vec![0u8; qu * qu];
        for x in 0..qu {
            let dx = digits(x);
            for y in 0..qu {
                let dy = digits(y);
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * qu + y] = undigits(&sum) as u8;

                let mut prod = vec![0u64; 2 * e as usize - 1];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let reduced = match &modulus {
                    Some(m) => poly_rem(&prod, m, p),
                    None => prod,
                };
                let mut padded = reduced;
                padded.resize(e as usize, 0);
                mul[x * qu + y] = undigits(&padded) as u8;
            }
        }

        let mut neg = vec![0u8; qu];
        let mut inv = vec![0u8; qu];
        for x in 0..qu {
            neg[x] = (0..qu).find(|&y| add[x * qu + y] == 0).unwrap() as u8;
            if x != 0 {
                inv[x] = (1..qu).find(|&y| mul[x * qu + y] == 1).unwrap() as u8;
            }
        }

        Ok(Self {
            q: qu,
            p,
            e,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Defining polynomial over the prime field, low degree first.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q as u8).map(Fq)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq> + Clone {
        (1..self.q as u8).map(Fq)
    }

    pub fn element(&self, index: u64) -> Result<Fq> {
        if index < self.q as u64 {
            Ok(Fq(index as u8))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                q: self.q as u64,
            })
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u8;
        Fq(r)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.index() * self.q + b.index()])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (!a.is_zero()).then(|| Fq(self.inv[a.index()]))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut acc = Fq::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All monic irreducible cubics over this field, in [`MonicCubic::cmp_in`] order.
    pub fn irreducible_cubics(&self) -> Vec<MonicCubic> {
        let mut out: Vec<MonicCubic> = self
            .elements()
            .flat_map(|a| {
                self.elements()
                    .flat_map(move |b| self.elements().map(move |c| MonicCubic { a, b, c }))
            })
            .filter(|f| f.is_irreducible(self))
            .collect();
        out.sort_by(|f, g| f.cmp_in(g, self));
        out
    }
}

/// The monic cubic `x^3 - c x^2 - b x - a`. Its companion matrix has last
/// column `(a, b, c)^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonicCubic {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
}

impl MonicCubic {
    pub fn new(a: Fq, b: Fq, c: Fq) -> Self {
        Self { a, b, c }
    }

    /// From ordinary coefficients of `x^3 + c2 x^2 + c1 x + c0`.
    pub fn from_coeffs(field: &FieldCtx, c0: Fq, c1: Fq, c2: Fq) -> Self {
        Self {
            a: field.neg(c0),
            b: field.neg(c1),
            c: field.neg(c2),
        }
    }

    /// Ordinary coefficients `[c0, c1, c2]` of `x^3 + c2 x^2 + c1 x + c0`.
    pub fn coeffs(&self, field: &FieldCtx) -> [Fq; 3] {
        [field.neg(self.a), field.neg(self.b), field.neg(self.c)]
    }

    /// Total order used for "smallest" cubics: compare the `x^2`, then `x`,
    /// then constant coefficient by element index.
    pub fn cmp_in(&self, other: &Self, field: &FieldCtx) -> Ordering {
        let [s0, s1, s2] = self.coeffs(field);
        let [o0, o1, o2] = other.coeffs(field);
        (s2, s1, s0).cmp(&(o2, o1, o0))
    }

    pub fn eval(&self, field: &FieldCtx, x: Fq) -> Fq {
        let [c0, c1, c2] = self.coeffs(field);
        let mut acc = Fq::ONE;
        for c in [c2, c1, c0] {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }

    /// A cubic is irreducible iff it has no root in the base field.
    pub fn is_irreducible(&self, field: &FieldCtx) -> bool {
        field.elements().all(|x| !self.eval(field, x).is_zero())
    }

    pub fn display(&self, field: &FieldCtx) -> impl fmt::Display {
        PolyDisplay {
            coeffs: self.coeffs(field),
        }
    }
}

struct PolyDisplay {
    coeffs: [Fq; 3],
}

impl fmt::Display for PolyDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.coeffs.len();
        write!(f, "x^{deg}")?;
        for i in (0..deg).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let coef = if c == Fq::ONE && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => write!(f, " + {c}")?,
                1 => write!(f, " + {coef}x")?,
                _ => write!(f, " + {coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Minimal polynomial over the base field of an extension element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinPoly {
    /// `x - r`
    Linear(Fq),
    Cubic(MonicCubic),
}

/// Element of `F_{q^3}` as coordinates `(x0, x1, x2)` in the basis `(1, t, t^2)`.
/// The derived order is lexicographic in `(x0, x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtElem(pub [Fq; 3]);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem([Fq::ZERO; 3]);
    pub const ONE: ExtElem = ExtElem([Fq::ONE, Fq::ZERO, Fq::ZERO]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2] = self.0;
        write!(f, "({x0},{x1},{x2})")
    }
}

/// Arithmetic context for `F_{q^3}` over a base field.
#[derive(Clone)]
pub struct ExtCtx {
    base: FieldCtx,
    modulus: MonicCubic,
    // reduction constants: t^3 = a + b t + c t^2, t^4 = r40 + r41 t + r42 t^2
    t4: [Fq; 3],
    frob: Vec<ExtElem>,
    sigmas: Vec<[Fq; 3]>,
}

impl fmt::Debug for ExtCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtCtx")
            .field("base", &self.base)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtCtx {
    /// Builds `F_{q^3}` from the smallest irreducible monic cubic over `base`.
    pub fn new(base: FieldCtx) -> Self {
        let modulus = *base
            .irreducible_cubics()
            .first()
            .expect("irreducible cubics exist over every finite field");
        Self::with_modulus(base, modulus).expect("irreducible by construction")
    }

    pub fn with_modulus(base: FieldCtx, modulus: MonicCubic) -> Result<Self> {
        if !modulus.is_irreducible(&base) {
            return Err(Error::Reducible(modulus.display(&base).to_string()));
        }
        let MonicCubic { a, b, c } = modulus;
        let t4 = [
            base.mul(c, a),
            base.add(base.mul(c, b), a),
            base.add(base.mul(c, c), b),
        ];
        let mut ctx = Self {
            base,
            modulus,
            t4,
            frob: Vec::new(),
            sigmas: Vec::new(),
        };
        let q = ctx.base.q();
        let frob: Vec<ExtElem> = ctx.elements().map(|k| ctx.pow(k, q)).collect();
        ctx.frob = frob;
        let sigmas = ctx
            .elements()
            .map(|k| {
                let (s1, s2, s3) = ctx.symmetric_functions_ext(k);
                [s1, s2, s3].map(|s| ctx.to_base(s).expect("symmetric functions lie in F_q"))
            })
            .collect();
        ctx.sigmas = sigmas;
        Ok(ctx)
    }

    #[inline]
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn modulus(&self) -> MonicCubic {
        self.modulus
    }

    /// Number of elements, `q^3`.
    pub fn order(&self) -> usize {
        let q = self.base.q;
        q * q * q
    }

    #[inline]
    pub fn index(&self, k: ExtElem) -> usize {
        let q = self.base.q;
        let [x0, x1, x2] = k.0;
        x0.index() + q * (x1.index() + q * x2.index())
    }

    #[inline]
    pub fn from_index(&self, i: usize) -> ExtElem {
        let q = self.base.q;
        ExtElem([
            Fq((i % q) as u8),
            Fq((i / q % q) as u8),
            Fq((i / (q * q)) as u8),
        ])
    }

    /// All elements in index order (x0 varies fastest).
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    /// The generator `t` of the power basis.
    pub fn generator(&self) -> ExtElem {
        ExtElem([Fq::ZERO, Fq::ONE, Fq::ZERO])
    }

    #[inline]
    pub fn embed(&self, x: Fq) -> ExtElem {
        ExtElem([x, Fq::ZERO, Fq::ZERO])
    }

    /// Returns the base-field element if `k` lies in the embedded `F_q`.
    #[inline]
    pub fn to_base(&self, k: ExtElem) -> Option<Fq> {
        let [x0, x1, x2] = k.0;
        (x1.is_zero() && x2.is_zero()).then_some(x0)
    }

    #[inline]
    pub fn in_base(&self, k: ExtElem) -> bool {
        self.to_base(k).is_some()
    }

    #[inline]
    pub fn add(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem([
            f.add(x.0[0], y.0[0]),
            f.add(x.0[1], y.0[1]),
            f.add(x.0[2], y.0[2]),
        ])
    }

    #[inline]
    pub fn neg(&self, x: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem(x.0.map(|c| f.neg(c)))
    }

    #[inline]
    pub fn sub(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn scale(&self, s: Fq, x: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem(x.0.map(|c| f.mul(s, c)))
    }

    pub fn mul(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let f = &self.base;
        let [a0, a1, a2] = x.0;
        let [b0, b1, b2] = y.0;
        let p0 = f.mul(a0, b0);
        let p1 = f.add(f.mul(a0, b1), f.mul(a1, b0));
        let p2 = f.add(f.add(f.mul(a0, b2), f.mul(a1, b1)), f.mul(a2, b0));
        let p3 = f.add(f.mul(a1, b2), f.mul(a2, b1));
        let p4 = f.mul(a2, b2);
        let MonicCubic { a, b, c } = self.modulus;
        let [r0, r1, r2] = self.t4;
        ExtElem([
            f.add(f.add(p0, f.mul(a, p3)), f.mul(r0, p4)),
            f.add(f.add(p1, f.mul(b, p3)), f.mul(r1, p4)),
            f.add(f.add(p2, f.mul(c, p3)), f.mul(r2, p4)),
        ])
    }

    pub fn pow(&self, x: ExtElem, mut e: u64) -> ExtElem {
        let mut acc = ExtElem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: ExtElem) -> Option<ExtElem> {
        (!x.is_zero()).then(|| self.pow(x, self.order() as u64 - 2))
    }

    /// `k^(q^i)`, with `i` taken mod 3.
    #[inline]
    pub fn frobenius(&self, k: ExtElem, i: u32) -> ExtElem {
        let mut r = k;
        for _ in 0..i % 3 {
            r = self.frob[self.index(r)];
        }
        r
    }

    /// The conjugate triple `(k, k^q, k^(q^2))`.
    #[inline]
    pub fn conjugates(&self, k: ExtElem) -> [ExtElem; 3] {
        let k1 = self.frob[self.index(k)];
        let k2 = self.frob[self.index(k1)];
        [k, k1, k2]
    }

    fn symmetric_functions_ext(&self, k: ExtElem) -> (ExtElem, ExtElem, ExtElem) {
        let [k0, k1, k2] = self.conjugates(k);
        let s1 = self.add(self.add(k0, k1), k2);
        let s2 = self.add(
            self.add(self.mul(k0, k1), self.mul(k0, k2)),
            self.mul(k1, k2),
        );
        let s3 = self.mul(self.mul(k0, k1), k2);
        (s1, s2, s3)
    }

    /// Elementary symmetric function `sigma_j` (j in 1..=3) of the conjugates of `k`.
    /// `sigma_1` is the trace and `sigma_3` the norm.
    pub fn sigma(&self, j: usize, k: ExtElem) -> Result<Fq> {
        let (s1, s2, s3) = self.symmetric_functions_ext(k);
        let s = match j {
            1 => s1,
            2 => s2,
            3 => s3,
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "sigma index {j} not in 1..=3"
                )))
            }
        };
        self.to_base(s).ok_or(Error::NotInBaseField)
    }

    /// `[sigma_1(k), sigma_2(k), sigma_3(k)]` from the precomputed table.
    #[inline]
    pub fn sigmas(&self, k: ExtElem) -> [Fq; 3] {
        self.sigmas[self.index(k)]
    }

    /// `(k + kh)(sigma_1(kh) - kh) - sigma_2(kh)`.
    pub fn phi(&self, k: ExtElem, kh: ExtElem) -> ExtElem {
        let [s1, s2, _] = self.sigmas(kh);
        let left = self.mul(self.add(k, kh), self.sub(self.embed(s1), kh));
        self.sub(left, self.embed(s2))
    }

    pub fn min_poly(&self, k: ExtElem) -> MinPoly {
        match self.to_base(k) {
            Some(r) => MinPoly::Linear(r),
            None => {
                let [s1, s2, s3] = self.sigmas(k);
                MinPoly::Cubic(MonicCubic {
                    a: s3,
                    b: self.base.neg(s2),
                    c: s1,
                })
            }
        }
    }

    /// Evaluates `f` at an extension element.
    pub fn eval_cubic(&self, f: &MonicCubic, x: ExtElem) -> ExtElem {
        let [c0, c1, c2] = f.coeffs(&self.base);
        let mut acc = ExtElem::ONE;
        for c in [c2, c1, c0] {
            acc = self.add(self.mul(acc, x), self.embed(c));
        }
        acc
    }

    /// Roots `(r, r^q, r^(q^2))` of an irreducible cubic, `r` the smallest root.
    pub fn cubic_roots(&self, f: &MonicCubic) -> Result<[ExtElem; 3]> {
        if !f.is_irreducible(&self.base) {
            return Err(Error::Reducible(f.display(&self.base).to_string()));
        }
        let r = self
            .elements()
            .filter(|&x| self.eval_cubic(f, x).is_zero())
            .min()
            .expect("an irreducible cubic splits in F_{q^3}");
        Ok(self.conjugates(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn build_field_rejects_bad_orders() {
        assert_eq!(FieldCtx::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(matches!(
            FieldCtx::new(1),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            FieldCtx::new(128),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn f2_is_xor() {
        let f2 = f(2);
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f2.add(Fq(a), Fq(b)), Fq(a ^ b));
                assert_eq!(f2.mul(Fq(a), Fq(b)), Fq(a & b));
            }
        }
        assert_eq!(f2.modulus(), None);
    }

    #[test]
    fn f4_uses_x2_x_1() {
        // Over F_2 the monic quadratics are x^2, x^2+1, x^2+x, x^2+x+1;
        // only the last has no root.
        let oracle: Vec<Vec<u64>> = (0..4)
            .map(|n| vec![n % 2, n / 2, 1])
            .filter(|p| (0..2).all(|x| (p[0] + p[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(oracle, vec![vec![1, 1, 1]]);
        assert_eq!(f(4).modulus(), Some(&[1u64, 1, 1][..]));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let fld = f(q);
            for a in fld.elements() {
                if let Some(ai) = fld.inv(a) {
                    assert_eq!(fld.mul(a, ai), Fq::ONE);
                }
                assert_eq!(fld.add(a, fld.neg(a)), Fq::ZERO);
                for b in fld.elements() {
                    assert_eq!(fld.add(a, b), fld.add(b, a));
                    assert_eq!(fld.mul(a, b), fld.mul(b, a));
                    for c in fld.elements() {
                        assert_eq!(
                            fld.mul(a, fld.add(b, c)),
                            fld.add(fld.mul(a, b), fld.mul(a, c))
                        );
                        assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
                        assert_eq!(fld.add(fld.add(a, b), c), fld.add(a, fld.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exist_up_to_64() {
        for q in [25, 27, 32, 49, 64] {
            let fld = f(q);
            for a in fld.nonzero() {
                assert_eq!(fld.mul(a, fld.inv(a).unwrap()), Fq::ONE);
            }
            // multiplicative group is cyclic of order q-1
            assert!(fld.nonzero().all(|a| fld.pow(a, q - 1) == Fq::ONE));
        }
    }

    #[test]
    fn f8_extension_uses_x3_x_1() {
        let ext = ExtCtx::new(f(2));
        let m = ext.modulus();
        assert_eq!(m.coeffs(ext.base()), [Fq(1), Fq(1), Fq(0)]);
        assert_eq!(ext.base().irreducible_cubics().len(), 2);
    }

    #[test]
    fn frobenius_basics() {
        for q in [2, 3, 4, 5] {
            let ext = ExtCtx::new(f(q));
            let fixed = ext.elements().filter(|&k| ext.frobenius(k, 1) == k).count();
            assert_eq!(fixed as u64, q);
            for k in ext.elements() {
                assert_eq!(ext.frobenius(k, 0), k);
                assert_eq!(ext.frobenius(ext.frobenius(k, 1), 2), k);
                assert_eq!(ext.frobenius(k, 3), k);
                if ext.in_base(k) {
                    assert_eq!(ext.frobenius(k, 1), k);
                }
            }
        }
        let ext = ExtCtx::new(f(2));
        let t = ext.generator();
        assert_eq!(ext.frobenius(t, 1), ext.mul(t, t));
    }

    #[test]
    fn sigma_of_t_over_f2() {
        let ext = ExtCtx::new(f(2));
        let t = ext.generator();
        assert_eq!(ext.sigmas(t), [Fq(0), Fq(1), Fq(1)]);
        assert_eq!(ext.sigma(1, t), Ok(Fq(0)));
        assert!(ext.sigma(4, t).is_err());
    }

    #[test]
    fn sigma_on_base_field() {
        let ext = ExtCtx::new(f(5));
        let fld = ext.base();
        for x in fld.elements() {
            let [s1, s2, s3] = ext.sigmas(ext.embed(x));
            assert_eq!(s1, fld.mul(fld.from_int(3), x));
            assert_eq!(s2, fld.mul(fld.from_int(3), fld.mul(x, x)));
            assert_eq!(s3, fld.pow(x, 3));
        }
    }

    #[test]
    fn min_poly_examples() {
        let ext = ExtCtx::new(f(2));
        assert_eq!(ext.min_poly(ExtElem::ZERO), MinPoly::Linear(Fq::ZERO));
        assert_eq!(ext.min_poly(ext.generator()), MinPoly::Cubic(ext.modulus()));
        for q in [2, 3, 4] {
            let ext = ExtCtx::new(f(q));
            for k in ext.elements() {
                assert_eq!(ext.min_poly(k), ext.min_poly(ext.frobenius(k, 1)));
            }
        }
    }

    #[test]
    fn irreducible_cubic_counts() {
        let f2 = f(2);
        let cubics = f2.irreducible_cubics();
        let shown: Vec<String> = cubics.iter().map(|c| c.display(&f2).to_string()).collect();
        assert_eq!(shown, ["x^3 + x + 1", "x^3 + x^2 + 1"]);
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            assert_eq!(
                f(q).irreducible_cubics().len() as u64,
                (q * q * q - q) / 3,
                "q={q}"
            );
        }
    }

    #[test]
    fn cubic_roots_over_f8() {
        let ext = ExtCtx::new(f(2));
        let fld = ext.base();
        let m = ext.modulus();
        let roots = ext.cubic_roots(&m).unwrap();
        let t = ext.generator();
        let t2 = ext.mul(t, t);
        let mut expected = vec![t, t2, ext.add(t2, t)];
        expected.sort();
        let mut got = roots.to_vec();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(roots[0], *expected.first().unwrap());
        let x3 = MonicCubic::new(Fq::ZERO, Fq::ZERO, Fq::ZERO);
        assert!(matches!(ext.cubic_roots(&x3), Err(Error::Reducible(_))));
        for g in fld.irreducible_cubics() {
            let r = ext.cubic_roots(&g).unwrap();
            assert_eq!(ext.min_poly(r[0]), MinPoly::Cubic(g));
        }
    }
}
