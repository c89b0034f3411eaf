mod common;

use cellfill::arith::q;
use cellfill::chain::Chain;
use cellfill::complex::fixtures::*;
use cellfill::filling::{fill, rho, FillProblem, RhoOptions, Ring};
use cellfill::linalg::rank_q;
use common::{brute_fill, random_complex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn boundary_of(x: &cellfill::CellComplex2, a: &[i64]) -> Vec<i64> {
    x.boundary_matrix(2).mul_vec(a)
}

#[test]
fn integer_fill_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for _ in 0..60 {
        let x = random_complex(&mut rng, 3, 5, 3, 5);
        let a0: Vec<i64> = (0..x.num_cells()).map(|_| rng.gen_range(-2..=2)).collect();
        let z = boundary_of(&x, &a0);
        let brute = brute_fill(&x.boundary_matrix(2), &z, 3).expect("a0 lies in the box");
        let r = fill(&FillProblem::new(
            &x,
            Chain::from_dense_int(1, &z),
            Ring::Integer,
        ))
        .unwrap();
        assert!(r.optimal);
        assert_eq!(r.value, q(brute), "{x}");
        compared += 1;
    }
    assert_eq!(compared, 60);
}

#[test]
fn real_fill_is_certified_and_below_integer() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let x = random_complex(&mut rng, 3, 5, 4, 6);
        let a0: Vec<i64> = (0..x.num_cells()).map(|_| rng.gen_range(-2..=2)).collect();
        let z = Chain::from_dense_int(1, &boundary_of(&x, &a0));
        let pr = FillProblem::new(&x, z.clone(), Ring::Real);
        let real = fill(&pr).unwrap();
        assert!(real.verify(&pr));
        let pi = FillProblem::new(&x, z, Ring::Integer);
        let int = fill(&pi).unwrap();
        assert!(int.verify(&pi));
        assert!(real.value <= int.value);
        assert!(int.value <= a0.iter().map(|v| q(v.abs())).sum());
    }
}

#[test]
fn closed_form_expansion_constants() {
    let opts = RhoOptions::default();
    assert_eq!(rho(&sphere(), &opts).unwrap().rho_real, Some(q(1)));
    assert_eq!(rho(&rp2(), &opts).unwrap().rho_real, Some(q(2)));
    let t = rho(&torus(), &opts).unwrap();
    assert!(t.convention_zero);
    assert_eq!(t.rho_real, Some(q(0)));
}

/// ρ_ℝ is a minimum of ‖z‖/Fill_ℝ(z): it lower-bounds every sampled boundary
/// and is attained by the reported witness.
#[test]
fn rho_real_against_sampled_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for _ in 0..40 {
        let x = random_complex(&mut rng, 3, 5, 4, 6);
        if x.betti(1) > 0 {
            continue;
        }
        let rep = rho(&x, &RhoOptions::default()).unwrap();
        let Some(r) = rep.rho_real else { continue };
        let w = rep.witness.unwrap();
        let wf = fill(&FillProblem::new(&x, w.clone(), Ring::Real)).unwrap();
        assert_eq!(w.l1_norm() / wf.value, r);
        for _ in 0..30 {
            let a: Vec<i64> = (0..x.num_cells()).map(|_| rng.gen_range(-3..=3)).collect();
            let z = Chain::from_dense_int(1, &boundary_of(&x, &a));
            if z.is_zero() {
                continue;
            }
            let f = fill(&FillProblem::new(&x, z.clone(), Ring::Real)).unwrap();
            assert!(r <= z.l1_norm() / f.value);
        }
        checked += 1;
    }
    assert!(checked >= 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squared_is_zero_and_ranks_add_up(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 4, 6, 4, 6);
        let (d1, d2) = (x.boundary_matrix(1), x.boundary_matrix(2));
        prop_assert!(d1.mul(&d2).is_zero());
        let cc = x.chain_complex();
        prop_assert_eq!(rank_q(&d1) + rank_q(&d2) + x.betti(1), x.num_edges());
        prop_assert_eq!(cc.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn real_fill_is_homogeneous(seed in any::<u64>(), k in 1i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 3, 5, 3, 5);
        let a: Vec<i64> = (0..x.num_cells()).map(|_| rng.gen_range(-2..=2)).collect();
        let z = boundary_of(&x, &a);
        let kz: Vec<i64> = z.iter().map(|v| k * v).collect();
        let f1 = fill(&FillProblem::new(&x, Chain::from_dense_int(1, &z), Ring::Real)).unwrap();
        let fk = fill(&FillProblem::new(&x, Chain::from_dense_int(1, &kz), Ring::Real)).unwrap();
        prop_assert_eq!(fk.value, f1.value * q(k));
    }
}
