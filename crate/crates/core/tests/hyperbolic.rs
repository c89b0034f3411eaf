use cellfill::arith::{q, qf, Q};
use cellfill::complex::fixtures::*;
use cellfill::complex::CellComplex2;
use cellfill::hyperbolic::*;
use cellfill::subcomplex::Subcomplex;

/// Four-point δ from Floyd–Warshall distances inside the subcomplex.
fn oracle_delta(x: &CellComplex2, sub: &Subcomplex) -> Q {
    let vs: Vec<usize> = sub.vertices.iter().copied().collect();
    let n = vs.len();
    let inf = i64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
    }
    for &e in &sub.edges {
        let ed = &x.edges()[e];
        let (a, b) = (
            vs.binary_search(&ed.src).unwrap(),
            vs.binary_search(&ed.dst).unwrap(),
        );
        if a != b {
            d[a][b] = 1;
            d[b][a] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    let mut best = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let mut s = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                    s.sort_unstable();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    qf(best, 2)
}

#[test]
fn delta_matches_floyd_warshall() {
    for n in [5, 7] {
        let g = grid_torus(n);
        for r in 0..=3 {
            let ball = MetricBall::new(&g, 0, r);
            assert_eq!(
                estimate_delta(&g, &ball.sub).unwrap(),
                oracle_delta(&g, &ball.sub),
                "n={n} r={r}"
            );
        }
    }
}

#[test]
fn trees_have_zero_delta() {
    let mut x = CellComplex2::empty("tree");
    for i in 0..7 {
        x.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 1..7 {
        x.add_edge(format!("e{i}"), (i - 1) / 2, i).unwrap();
    }
    assert_eq!(estimate_delta(&x, &Subcomplex::full(&x)).unwrap(), q(0));
}

#[test]
fn geodesics_stay_close_to_themselves() {
    let g = grid_torus(7);
    let ball = MetricBall::new(&g, 0, 3);
    let delta = estimate_delta(&g, &ball.sub).unwrap();
    for &w in ball.sub.vertices.iter().take(12) {
        let path = shortest_path(&g, &ball.sub, 0, w).unwrap();
        assert!(check_divergence(&g, &ball.sub, &path, &path, &delta).unwrap());
    }
}

#[test]
fn grid_systole_is_the_grid_width() {
    let g = grid_torus(5);
    let s = find_essential_loop(&g, &[], 5).unwrap();
    assert_eq!(s.length, 5);
    assert!(verify_certificate(&g, &s, &[]));
    assert!(find_essential_loop(&g, &[], 4).is_err());
    let tube = build_tube(&g, &s);
    assert_eq!(tube.radius, 1);
    assert!(tube.sub.is_closed(&g));
}
