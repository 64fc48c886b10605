use proptest::prelude::*;

use schurkit::characters::{char_costandard, schur_poly};
use schurkit::closedforms::{yoneda_B, ExtPair};
use schurkit::combinatorics::{conjugate, enum_lambda_rect, hat, p_core, syt_count, Partition};
use schurkit::exactla::{Fp, Mat, Poly};
use schurkit::polymod::tensor_power_module;
use schurkit::schuralg::build_schur_algebra;

fn partition_in(n: usize, k: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=n, k).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn rect_and_label() -> impl Strategy<Value = (usize, usize, Partition)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(n, k)| (Just(n), Just(k), partition_in(n, k)))
}

fn field() -> impl Strategy<Value = Fp> {
    prop::sample::select(vec![2u32, 3, 5, 7, 101]).prop_map(|p| Fp::new(p).unwrap())
}

fn matrix() -> impl Strategy<Value = Mat> {
    (field(), 1usize..7, 1usize..7)
        .prop_flat_map(|(f, r, c)| prop::collection::vec(0..f.p(), r * c).prop_map(move |d| Mat::from_vec(f, r, c, d)))
}

proptest! {
    #[test]
    fn hat_is_an_involutive_complement((n, k, l) in rect_and_label()) {
        let h = hat(&l, n, k).unwrap();
        prop_assert_eq!(l.weight() + h.weight(), n * k);
        prop_assert_eq!(hat(&h, n, k).unwrap(), l);
    }

    #[test]
    fn conjugation_and_cores((_, _, l) in rect_and_label(), p in prop::sample::select(vec![2usize, 3, 5])) {
        prop_assert_eq!(conjugate(&conjugate(&l)), l.clone());
        let c = p_core(&l, p);
        prop_assert_eq!((l.weight() - c.weight()) % p, 0);
        prop_assert_eq!(p_core(&c, p), c);
    }

    #[test]
    fn schur_polynomials_count_tableaux((n, k, l) in rect_and_label()) {
        let s = schur_poly(&l, k);
        prop_assert!(s.is_symmetric());
        // the coefficient of x1 x2 ... xd counts standard tableaux
        if l.weight() <= k && l.weight() > 0 {
            let mut e = vec![0i32; k];
            for x in e.iter_mut().take(l.weight()) {
                *x = 1;
            }
            prop_assert_eq!(s.coef(&e) as u64, syt_count(&l));
        }
        // the costandard character on k^n is the Schur polynomial of the conjugate
        prop_assert_eq!(char_costandard(&l, n), schur_poly(&l.conjugate(), n));
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.cols(), m.cols());
        prop_assert!(m.mul(&ns).is_zero());
        let (r, piv) = m.rref();
        prop_assert_eq!(piv.len(), m.rank());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn solve_finds_preimages(m in matrix(), seed in any::<u64>()) {
        let f = m.field();
        let x: Vec<u32> = (0..m.cols()).map(|j| ((seed >> (j % 60)) as u32) % f.p()).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn extended_gcd(a in prop::collection::vec(0u32..7, 1..6), b in prop::collection::vec(0u32..7, 1..6)) {
        let f = Fp::new(7).unwrap();
        let (pa, pb) = (Poly::new(a), Poly::new(b));
        let (g, s, t) = pa.ext_gcd(f, &pb);
        // s a + t b, written as s a - (0 - t b)
        let lhs = s.mul(f, &pa).sub(f, &Poly::zero().sub(f, &t.mul(f, &pb)));
        prop_assert_eq!(lhs, g.clone());
        if !g.is_zero() {
            prop_assert!(pa.divrem(f, &g).1.is_zero());
            prop_assert!(pb.divrem(f, &g).1.is_zero());
        }
    }

    #[test]
    fn ext_ff_symmetric_and_graded_like_yoneda(n in 1usize..=5, i in 0usize..5, j in 0usize..5) {
        prop_assume!(i < n && j < n);
        let a = ExtPair::FF.table(n, i, j, 2 * n).unwrap();
        prop_assert_eq!(a.as_vec(), ExtPair::FF.table(n, j, i, 2 * n).unwrap().as_vec());
        let b = yoneda_B(n).unwrap();
        for q in 0..=2 * n {
            prop_assert_eq!(b.graded_dim(q, j, i), a.get(q));
        }
    }
}

#[test]
fn rectangle_labels_fit() {
    for n in 1..=3 {
        for k in 1..=3 {
            let total: usize = (0..=n * k).map(|d| enum_lambda_rect(d, n, k).unwrap().len()).sum();
            // lattice paths in an n x k box
            let paths = (1..=n + k).product::<usize>() / (1..=n).product::<usize>() / (1..=k).product::<usize>();
            assert_eq!(total, paths);
        }
    }
}

#[test]
fn schur_algebra_acts_faithfully_on_tensor_space() {
    for (n, d, p) in [(2, 2, 2), (2, 3, 3), (3, 2, 2), (3, 3, 3), (2, 4, 2)] {
        let a = build_schur_algebra(n, d, p).unwrap();
        let t = tensor_power_module(&a).unwrap().module;
        assert_eq!(t.dim(), n.pow(d as u32));
        t.check_relations(64, 7).unwrap();
        let f = a.field();
        let sq = t.dim() * t.dim();
        let cols: Vec<Vec<u32>> = (0..a.dim()).map(|b| t.act_full(&a.basis_elem(b)).data().to_vec()).collect();
        let m = Mat::from_cols(f, sq, &cols);
        assert_eq!(m.rank(), a.dim(), "S({n},{d}) at p = {p}");
    }
}
