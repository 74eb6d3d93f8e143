use proptest::prelude::*;

use mrd3::gfield::{ExtCtx, ExtElem, FieldCtx, Fq};
use mrd3::mat3::{self, companion, Mat3};
use mrd3::menichetti::{self, det_factorization_sides, is_admissible, sigma_matrices, ParamPair};
use mrd3::rankcode::{closed_form_proportion, gaussian_binomial, proportion_of_mrd, MrdTriple};
use mrd3::semifield::SemifieldView;

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn ext(q: u64) -> ExtCtx {
    ExtCtx::new(FieldCtx::new(q).unwrap())
}

fn elem(e: &ExtCtx, seed: usize) -> ExtElem {
    e.from_index(seed % e.order())
}

/// First admissible pair at or after `seed` in index order.
fn admissible_from(e: &ExtCtx, seed: usize) -> (ExtElem, ExtElem) {
    let n = e.order();
    (0..n * n)
        .map(|i| (seed + i) % (n * n))
        .map(|i| (e.from_index(i / n), e.from_index(i % n)))
        .find(|&(k, kh)| is_admissible(e, k, kh))
        .expect("admissible pairs exist")
}

fn normalized_candidate(field: &FieldCtx, f_seed: usize, z_seed: usize) -> MrdTriple {
    let cubics = field.irreducible_cubics();
    let f = cubics[f_seed % cubics.len()];
    let q = field.q() as usize;
    let mut n = z_seed;
    let mut d = [Fq::ZERO; 6];
    for slot in d.iter_mut() {
        *slot = Fq((n % q) as u8);
        n /= q;
    }
    let z = Mat3([
        [Fq::ZERO, d[0], d[1]],
        [Fq::ZERO, d[2], d[3]],
        [Fq::ONE, d[4], d[5]],
    ]);
    MrdTriple::normalized(&f, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_is_a_field(qi in 0..QS.len(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let e = ext(QS[qi]);
        let (x, y, z) = (elem(&e, a), elem(&e, b), elem(&e, c));
        prop_assert_eq!(e.mul(x, y), e.mul(y, x));
        prop_assert_eq!(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
        prop_assert_eq!(e.mul(x, e.add(y, z)), e.add(e.mul(x, y), e.mul(x, z)));
        if !x.is_zero() {
            prop_assert_eq!(e.mul(x, e.inv(x).unwrap()), ExtElem::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism_of_order_3(qi in 0..QS.len(), a in any::<usize>(), b in any::<usize>()) {
        let e = ext(QS[qi]);
        let (x, y) = (elem(&e, a), elem(&e, b));
        prop_assert_eq!(e.frobenius(e.add(x, y), 1), e.add(e.frobenius(x, 1), e.frobenius(y, 1)));
        prop_assert_eq!(e.frobenius(e.mul(x, y), 1), e.mul(e.frobenius(x, 1), e.frobenius(y, 1)));
        prop_assert_eq!(e.frobenius(e.frobenius(e.frobenius(x, 1), 1), 1), x);
        prop_assert_eq!(e.sigmas(e.frobenius(x, 1)), e.sigmas(x));
    }

    #[test]
    fn phi_of_conjugate_is_square(qi in 0..QS.len(), a in any::<usize>(), n in 1u32..3) {
        let e = ext(QS[qi]);
        let k = elem(&e, a);
        prop_assert_eq!(e.phi(k, e.frobenius(k, n)), e.mul(k, k));
    }

    #[test]
    fn sigma_matrices_shift_invariant(qi in 0..QS.len(), a in any::<usize>(), b in any::<usize>(), r in 1u32..3) {
        let e = ext(QS[qi]);
        let (k, kh) = (elem(&e, a), elem(&e, b));
        prop_assert_eq!(sigma_matrices(&e, e.frobenius(k, r), e.frobenius(kh, r)), sigma_matrices(&e, k, kh));
    }

    #[test]
    fn admissible_pairs_give_normalized_mrd_triples(qi in 0..5usize, seed in any::<usize>()) {
        let e = ext(QS[qi]);
        let (k, kh) = admissible_from(&e, seed);
        let p = ParamPair::new(&e, k, kh);
        let t = menichetti::triple_of(&e, &p);
        prop_assert!(t.is_normalized(e.base()));
        prop_assert!(t.is_mrd(e.base()));
        let c = p.canonical(&e);
        prop_assert_eq!(c.canonical(&e), c);
        for m in p.class_members(&e) {
            prop_assert_eq!(sigma_matrices(&e, m.k, m.kh), sigma_matrices(&e, k, kh));
        }
    }

    #[test]
    fn determinant_factorizes(qi in 0..5usize, seed in any::<usize>(), x in any::<[usize; 3]>()) {
        let e = ext(QS[qi]);
        let (k, kh) = admissible_from(&e, seed);
        let pt = [elem(&e, x[0]), elem(&e, x[1]), elem(&e, x[2])];
        let (l, r) = det_factorization_sides(&e, k, kh, pt);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn zero_divisors_iff_not_mrd(qi in 0..4usize, fs in any::<usize>(), zs in any::<usize>()) {
        let field = FieldCtx::new(QS[qi]).unwrap();
        let t = normalized_candidate(&field, fs, zs);
        let v = SemifieldView::normalized(&field, t.clone()).unwrap();
        prop_assert_eq!(v.has_zero_divisors_det(&field), !t.is_mrd(&field));
        prop_assert!(v.identity_holds(&field));
        let e2 = [Fq::ZERO, Fq::ONE, Fq::ZERO];
        let e3 = [Fq::ZERO, Fq::ZERO, Fq::ONE];
        let witness = v.multiply(&field, &e2, &e3) == v.multiply(&field, &e3, &e2);
        prop_assert_eq!(v.is_commutative(&field).unwrap(), witness);
    }

    #[test]
    fn multiplication_is_bilinear(qi in 0..4usize, fs in any::<usize>(), zs in any::<usize>(), v3 in any::<[u8; 9]>(), s in any::<u8>()) {
        let field = FieldCtx::new(QS[qi]).unwrap();
        let q = field.q() as u8;
        let view = SemifieldView::normalized(&field, normalized_candidate(&field, fs, zs)).unwrap();
        let vec = |i: usize| -> [Fq; 3] { std::array::from_fn(|j| Fq(v3[3 * i + j] % q)) };
        let (x, y, z) = (vec(0), vec(1), vec(2));
        let s = Fq(s % q);
        let add = |u: [Fq; 3], w: [Fq; 3]| -> [Fq; 3] { std::array::from_fn(|i| field.add(u[i], w[i])) };
        let scale = |u: [Fq; 3]| -> [Fq; 3] { u.map(|c| field.mul(s, c)) };
        prop_assert_eq!(view.multiply(&field, &add(x, y), &z), add(view.multiply(&field, &x, &z), view.multiply(&field, &y, &z)));
        prop_assert_eq!(view.multiply(&field, &z, &add(x, y)), add(view.multiply(&field, &z, &x), view.multiply(&field, &z, &y)));
        prop_assert_eq!(view.multiply(&field, &scale(x), &y), scale(view.multiply(&field, &x, &y)));
        prop_assert_eq!(view.multiply(&field, &x, &scale(y)), scale(view.multiply(&field, &x, &y)));
    }

    #[test]
    fn dual_is_an_involution(qi in 0..5usize, seed in any::<usize>(), x in any::<[usize; 3]>()) {
        let e = ext(QS[qi]);
        let (k, kh) = admissible_from(&e, seed);
        let t = menichetti::triple_of(&e, &ParamPair::new(&e, k, kh));
        let v = SemifieldView::normalized(e.base(), t).unwrap();
        let d = v.dual_triple(e.base()).unwrap();
        prop_assert_eq!(d.dual_triple(e.base()).unwrap(), v.clone());
        let pt = [elem(&e, x[0]), elem(&e, x[1]), elem(&e, x[2])];
        prop_assert!(v.structure_identity_check(&e, &pt).unwrap());
    }

    #[test]
    fn field_triples_are_associative(qi in 0..QS.len(), fs in any::<usize>()) {
        let field = FieldCtx::new(QS[qi]).unwrap();
        let cubics = field.irreducible_cubics();
        let f = cubics[fs % cubics.len()];
        let c = companion(&f);
        let t = MrdTriple::normalized(&f, mat3::mul(&field, &c, &c));
        prop_assert!(t.is_mrd(&field));
        let v = SemifieldView::normalized(&field, t).unwrap();
        prop_assert!(v.is_associative(&field).unwrap());
        prop_assert!(v.is_self_dual(&field).unwrap());
    }
}

proptest! {
    #[test]
    fn proportion_routes_agree(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 101, 128, 243, 1024])) {
        let s = menichetti::count_formulas(q).s;
        prop_assert_eq!(proportion_of_mrd(q, &s).unwrap(), closed_form_proportion(q));
    }

    #[test]
    fn gaussian_binomial_symmetry(n in 0u32..10, k in 0u32..10, qi in 0..QS.len()) {
        prop_assume!(k <= n);
        let q = QS[qi];
        prop_assert_eq!(gaussian_binomial(n, k, q), gaussian_binomial(n, n - k, q));
        if k >= 1 {
            // Pascal-type recursion
            let lhs = gaussian_binomial(n + 1, k, q);
            let rhs = gaussian_binomial(n, k - 1, q) + num_bigint::BigInt::from(q).pow(k) * gaussian_binomial(n, k, q);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
