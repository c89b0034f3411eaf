use cellfill::chain::Chain;
use cellfill::duality::generators::*;
use cellfill::duality::*;
use cellfill::filling::Ring;
use cellfill::linalg::rank_q;
use proptest::prelude::*;

fn rational_betti(
    counts: &[usize],
    bd: impl Fn(usize) -> Option<cellfill::IntMatrix>,
) -> Vec<usize> {
    (0..counts.len())
        .map(|d| {
            let out = bd(d).map_or(0, |m| rank_q(&m));
            let inc = bd(d + 1).map_or(0, |m| rank_q(&m));
            counts[d] - out - inc
        })
        .collect()
}

#[test]
fn dual_betti_numbers_reflect_primal_ones() {
    for t in [
        boundary_of_simplex(),
        sphere_times_circle(3),
        three_torus(3),
    ] {
        let d = dualize(&t).unwrap();
        let primal = rational_betti(&t.counts(), |p| {
            (1..=3).contains(&p).then(|| t.boundary_matrix(p))
        });
        let dual = rational_betti(&d.counts, |p| {
            (1..=3).contains(&p).then(|| d.boundary(p).clone())
        });
        let mut reflected = primal.clone();
        reflected.reverse();
        assert_eq!(dual, reflected, "{}", t.name);
        assert_eq!(primal, reflected, "{}", t.name);
    }
}

#[test]
fn every_single_sign_flip_is_detected() {
    let t = boundary_of_simplex();
    let d = dualize(&t).unwrap();
    let good = PdChainMap::new(&t, &d);
    for p in 0..4 {
        for i in 0..t.count(p) {
            let mut phi = good.clone();
            phi.flip(p, i);
            let r = verify_pd(&t, &d, &phi, 3, 0);
            assert!(!r.squares_commute && !r.ok, "flip {p}:{i} went unnoticed");
        }
    }
}

#[test]
fn text_round_trip() {
    let t = three_torus(3);
    assert_eq!(Triangulation3::parse(&t.to_text()).unwrap(), t);
}

#[test]
fn non_orientable_gluing_is_rejected() {
    // twisted S² bundle over the circle: reglue the wrap-around layer of the
    // product by a reflection of the sphere
    let base = sphere_times_circle(3);
    let swap = |v: usize| if v < 4 { [1, 0, 2, 3][v] } else { v };
    let tets: Vec<[String; 4]> = base.simplices[3]
        .iter()
        .map(|s| {
            let wraps = s.iter().any(|&v| v < 4) && s.iter().any(|&v| v >= 8);
            let img: Vec<usize> = s.iter().map(|&v| if wraps { swap(v) } else { v }).collect();
            [img[0], img[1], img[2], img[3]].map(|v| base.labels[v].clone())
        })
        .collect();
    assert!(matches!(
        Triangulation3::from_tets("flipped", &tets),
        Err(cellfill::Error::NonOrientable)
    ));
}

#[test]
fn codim2_fill_in_dual_skeleton() {
    let t = boundary_of_simplex();
    let x = dual_two_skeleton(&t, &dualize(&t).unwrap()).unwrap();
    for c in 0..x.num_cells() {
        let z = Chain::from_dense_int(1, &x.word_chain(&x.cells()[c].word));
        let int = fill_codim2(&t, Skeleton::Dual, z.clone(), Ring::Integer).unwrap();
        let real = fill_codim2(&t, Skeleton::Dual, z, Ring::Real).unwrap();
        assert_eq!(int.value, cellfill::arith::q(1));
        assert!(real.value <= int.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn lifted_product_keeps_duality(k in 2usize..6) {
        let t = sphere_times_circle(3);
        let c = lift_triangulation(&t, &circle_rep(&t, 3, k).unwrap()).unwrap();
        prop_assert_eq!(c.counts(), t.counts().map(|n| n * k));
        let d = dualize(&c).unwrap();
        let r = verify_pd(&c, &d, &PdChainMap::new(&c, &d), 10, k as u64);
        prop_assert!(r.ok);
    }
}
