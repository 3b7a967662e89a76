mod common;

use common::*;
use proptest::prelude::*;
use toric_nash::oracle::{box_points, oracle_contact};
use toric_nash::{
    contact_components, hermite_normal_form, is_minimal_in_contact_set, smith_normal_form, BigInt,
    EnumerationOptions, IntMatrix, LatticeVector, MonomialIdeal,
};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows(r.into_iter().map(|x| x.into_iter().map(BigInt::from).collect()).collect(), cols))
}

proptest! {
    #[test]
    fn hnf_is_unimodular_row_transform(a in matrix(3, 3)) {
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        let d = u.determinant();
        prop_assert!(d == BigInt::from(1) || d == BigInt::from(-1));
        for i in 0..h.rows() {
            for j in 0..i.min(h.cols()) {
                prop_assert_eq!(h.get(i, j), &BigInt::from(0));
            }
        }
    }

    #[test]
    fn snf_diagonal_divides(a in matrix(3, 3)) {
        let (d, u, w) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&w), d.clone());
        let diag: Vec<BigInt> = (0..3).map(|i| d.get(i, i).clone()).collect();
        for i in 0..2 {
            if diag[i] == BigInt::from(0) {
                prop_assert_eq!(&diag[i + 1], &BigInt::from(0));
            } else {
                prop_assert_eq!(&diag[i + 1] % &diag[i], BigInt::from(0));
            }
        }
        let det = a.determinant();
        let prod: BigInt = diag.iter().product();
        prop_assert_eq!(det.magnitude(), prod.magnitude());
    }

    #[test]
    fn dual_involution(c in pointed_cone()) {
        common::dual_involution(&c)?;
    }

    #[test]
    fn face_relint_partition(c in pointed_cone()) {
        common::face_relint_partition(&c)?;
    }

    #[test]
    fn hilbert_basis(c in pointed_cone()) {
        common::hilbert_basis(&c)?;
    }

    #[test]
    fn sigma_stability(y in pair()) {
        common::sigma_stability(&y)?;
    }

    #[test]
    fn w_antichain_domination(y in pair()) {
        common::w_antichain_domination(&y)?;
    }

    #[test]
    fn subdivision_invariants(c in pointed_cone(), pick in any::<prop::sample::Index>()) {
        common::subdivision_invariants(&c, pick)?;
    }

    #[test]
    fn y_resolution_outputs(y in pair(), seed in 0u64..50) {
        common::y_resolution_outputs(&y, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unimodular_equivariance_2d(y in pair().prop_filter("planar", |y| y.sigma().ambient_dim() == 2), a in unimodular(2)) {
        common::unimodular_equivariance(&y, &a)?;
    }

    #[test]
    fn contact_loci_match_box(c in cone2(3), gens in prop::collection::vec((0i64..=4, 0i64..=4), 1..4), n in 1u64..=4) {
        let dual = c.dual_cone();
        let hb = dual.hilbert_basis().unwrap();
        let gens: Vec<LatticeVector> = gens
            .into_iter()
            .map(|(x, y)| &hb[0].scale(&BigInt::from(x)) + &hb[hb.len() - 1].scale(&BigInt::from(y)))
            .filter(|g| !g.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let ideal = MonomialIdeal::new(c.clone(), gens).unwrap();
        let out = contact_components(&ideal, n, EnumerationOptions::default()).unwrap();
        let mut expected = oracle_contact(&ideal, n, out.levels_scanned).unwrap();
        expected.sort();
        prop_assert_eq!(&out.points, &expected);
        let nn = BigInt::from(n);
        for p in box_points(&c, 6).unwrap() {
            if ideal.order(&p) == nn {
                prop_assert_eq!(is_minimal_in_contact_set(&ideal, &nn, &p).unwrap(), out.points.contains(&p));
            }
        }
    }
}
