use cellfill::arith::q;
use cellfill::complex::fixtures::*;
use cellfill::complex::CellComplex2;
use cellfill::covers::*;
use cellfill::filling::{rho, RhoOptions};
use cellfill::matrix::IntMatrix;
use proptest::prelude::*;

/// Cyclic-shift rep: generator `g` acts as `s ↦ s + k_g mod n`. Every relator
/// with zero exponent sum in each generator has trivial monodromy.
fn shift_rep(x: &CellComplex2, n: usize, shifts: &[usize]) -> PermRep {
    let mut rep = PermRep::identity("shift", n);
    for (e, k) in x.edges().iter().zip(shifts) {
        rep.set(&e.id, (0..n).map(|s| (s + k) % n).collect())
            .unwrap();
    }
    rep
}

fn projection_matrix(map: &[usize], mult: Option<&[usize]>, base: usize) -> IntMatrix {
    let mut p = IntMatrix::zeros(base, map.len());
    for (j, &i) in map.iter().enumerate() {
        p.set(i, j, mult.map_or(1, |m| m[j] as i64));
    }
    p
}

fn assert_chain_map(x: &CellComplex2, c: &Cover) {
    let y = &c.complex;
    let pm = &c.projection;
    for d in 1..=2 {
        let lo = projection_matrix(pm.dim(d - 1), None, x.num_cells_in(d - 1));
        let mult = (d == 2).then_some(pm.multiplicity.as_slice());
        let hi = projection_matrix(pm.dim(d), mult, x.num_cells_in(d));
        assert_eq!(lo.mul(&y.boundary_matrix(d)), x.boundary_matrix(d).mul(&hi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn genus2_shift_covers_scale(n in 1usize..7, shifts in proptest::collection::vec(0usize..7, 4)) {
        let x = genus2();
        let c = build_cover(&x, &shift_rep(&x, n, &shifts)).unwrap();
        prop_assert_eq!(c.complex.counts(), x.counts().map(|k| k * n));
        prop_assert_eq!(c.complex.euler_characteristic(), x.euler_characteristic() * n as i64);
        prop_assert!(c.projection.multiplicity.iter().all(|&m| m == 1));
        assert_chain_map(&x, &c);
        // vertex/edge incidences project onto the base
        for (e, edge) in c.complex.edges().iter().enumerate() {
            let b = &x.edges()[c.projection.edges[e]];
            prop_assert_eq!((c.projection.vertices[edge.src], c.projection.vertices[edge.dst]), (b.src, b.dst));
        }
    }

    #[test]
    fn composite_rep_matches_cover_of_cover(n in 1usize..4, a in 0usize..4, b in 0usize..4) {
        let x = torus();
        let lower = shift_rep(&x, n, &[a, b]);
        let c1 = build_cover(&x, &lower).unwrap();
        let upper = mod_p_homology_rep(&c1.complex, 2, 64).unwrap();
        let c2 = build_cover(&c1.complex, &upper).unwrap();
        let composite = lower.compose(&x, &c1, &upper).unwrap();
        let direct = build_cover(&x, &composite).unwrap();
        let vmap: Vec<usize> = (0..direct.complex.num_vertices()).collect();
        let emap: Vec<usize> = (0..direct.complex.num_edges()).collect();
        prop_assert!(is_isomorphism(&direct.complex, &c2.complex, &vmap, &emap));
    }
}

#[test]
fn genus2_mod2_cover() {
    let x = genus2();
    let c = build_cover(&x, &mod_p_homology_rep(&x, 2, DEFAULT_DEGREE_CAP).unwrap()).unwrap();
    assert_eq!(c.degree, 16);
    assert_eq!(c.complex.euler_characteristic(), -32);
    assert_eq!(c.complex.homology(1).betti, 34);
    assert_chain_map(&x, &c);
}

/// The double cover of the one-cell RP² is a sphere made of two 2-cells glued
/// along a 2-edge circle; its expansion constant is 2, not 1.
#[test]
fn rp2_double_cover_is_a_two_cell_sphere() {
    let x = rp2();
    let c = build_cover(&x, &mod_p_homology_rep(&x, 2, 16).unwrap()).unwrap();
    assert_eq!(c.complex.counts(), [2, 2, 2]);
    assert!(c.complex.homology(1).is_trivial());
    assert_eq!(c.complex.homology(2).betti, 1);
    assert_eq!(
        rho(&c.complex, &RhoOptions::default()).unwrap().rho_real,
        Some(q(2))
    );
}

#[test]
fn branched_cover_records_wrapping() {
    let x = rp2();
    let rep = PermRep::from_one_based("c3", 3, &[("a", vec![2, 3, 1])]).unwrap();
    assert!(matches!(
        build_cover(&x, &rep),
        Err(cellfill::Error::MonodromyObstruction { .. })
    ));
    let c = build_branched_cover(&x, &rep).unwrap();
    assert_eq!(c.complex.counts(), [3, 3, 1]);
    assert_eq!(c.projection.multiplicity, vec![3]);
    assert_chain_map(&x, &c);
}

#[test]
fn towers_compose_projections() {
    let (t, stop) = homology_tower(torus(), 2, 2, DEFAULT_DEGREE_CAP);
    assert!(stop.is_none());
    assert_eq!(t.degree(2).unwrap(), 16);
    let direct = t.projection(2, 0).unwrap();
    let stepwise = t
        .projection(2, 1)
        .unwrap()
        .then(&t.projection(1, 0).unwrap());
    assert_eq!(direct, stepwise);
    for level in 0..=2 {
        let s = t.summary(level).unwrap();
        assert_eq!(s.chi, 0);
        assert_eq!(s.b1, 2);
    }
}
