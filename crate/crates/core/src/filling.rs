//! ℓ¹-minimal fillings and primitives, expansion constants, and operator norms.

use crate::arith::{abs_sum, bigq, q, Q};
use crate::chain::Chain;
use crate::complex::CellComplex2;
use crate::error::{Error, Result};
use crate::ilp::{l1_ilp, l1_lp, IlpOutcome};
use crate::linalg::{independent_columns, mat_vec_q, rref, solve, to_rational};
use crate::matrix::IntMatrix;
use crate::polytope::circuits;
use crate::snf::{invariant_factors, SmithForm};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::str::FromStr;

pub const DEFAULT_NODE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Real,
    Integer,
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s {
            "real" | "r" => Ok(Ring::Real),
            "int" | "integer" | "z" => Ok(Ring::Integer),
            other => Err(Error::InvalidInput(format!("unknown ring {other:?}"))),
        }
    }
}

/// `min ‖A‖₁ subject to M A = target`, optionally restricted to a column subset.
#[derive(Debug, Clone)]
pub struct FillProblem {
    pub matrix: IntMatrix,
    pub target: Chain,
    /// Degree of the filler.
    pub degree: usize,
    pub ring: Ring,
    pub support: Option<Vec<usize>>,
    pub node_cap: usize,
}

impl FillProblem {
    /// Fill a 1-chain by 2-chains of `x`.
    pub fn new(x: &CellComplex2, target: Chain, ring: Ring) -> Self {
        FillProblem::from_matrix(x.boundary_matrix(2), target, 2, ring)
    }

    /// Primitive problem `dω = η` for a 2-cochain `η`, solved on `∂₂ᵀ`.
    pub fn coboundary(x: &CellComplex2, eta: Chain, ring: Ring) -> Self {
        FillProblem::from_matrix(x.boundary_matrix(2).transpose(), eta, 1, ring)
    }

    pub fn from_matrix(matrix: IntMatrix, target: Chain, degree: usize, ring: Ring) -> Self {
        FillProblem {
            matrix,
            target,
            degree,
            ring,
            support: None,
            node_cap: DEFAULT_NODE_CAP,
        }
    }

    pub fn with_support(mut self, cols: Vec<usize>) -> Self {
        self.support = Some(cols);
        self
    }

    pub fn with_node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    fn columns(&self) -> Vec<usize> {
        match &self.support {
            Some(s) => {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                s
            }
            None => (0..self.matrix.cols()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Dual vector `y` with `‖Mᵀy‖∞ ≤ 1` on the allowed columns and `y·z = value`.
    Lp { dual: Vec<Q> },
    /// Depth-first branch-and-bound; `exhausted` means the tree was fully explored.
    BranchAndBound {
        nodes: usize,
        root_lp_bound: Q,
        exhausted: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FillResult {
    pub filler: Chain,
    pub value: Q,
    pub ring: Ring,
    pub optimal: bool,
    pub certificate: Certificate,
}

impl FillResult {
    /// Re-checks `M·filler = target`, the value, and the certificate.
    pub fn verify(&self, p: &FillProblem) -> bool {
        let rows = p.matrix.rows();
        if self.filler.apply(&p.matrix, p.target.degree) != p.target {
            return false;
        }
        if self.value != self.filler.l1_norm() {
            return false;
        }
        let cols = p.columns();
        if self.filler.support().iter().any(|c| !cols.contains(c)) {
            return false;
        }
        match &self.certificate {
            Certificate::Lp { dual } => {
                if dual.len() != rows {
                    return false;
                }
                let z = p.target.to_dense(rows);
                let yz = dual
                    .iter()
                    .zip(&z)
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b);
                let mt = p.matrix.transpose();
                let reduced = mat_vec_q(&mt, dual);
                yz == self.value && cols.iter().all(|&c| reduced[c].abs() <= Q::one())
            }
            Certificate::BranchAndBound {
                root_lp_bound,
                exhausted,
                ..
            } => {
                self.filler.is_integral()
                    && *root_lp_bound <= self.value
                    && (*exhausted || !self.optimal)
            }
        }
    }
}

/// ℓ¹-minimal filler over the chosen ring.
pub fn fill(p: &FillProblem) -> Result<FillResult> {
    let cols = p.columns();
    let sub = p.matrix.select_columns(&cols);
    let rows = p.matrix.rows();
    if p.target.support().iter().any(|&i| i >= rows) {
        return Err(Error::InvalidInput(
            "target index outside the boundary basis".into(),
        ));
    }
    let lift = |x: Vec<Q>| {
        Chain::from_pairs(
            p.degree,
            x.into_iter().enumerate().map(|(j, v)| (cols[j], v)),
        )
    };
    match p.ring {
        Ring::Real => {
            let z = p.target.to_dense(rows);
            let sol = l1_lp(&sub, &z, &[]).ok_or(Error::NotABoundary)?;
            Ok(FillResult {
                filler: lift(sol.x),
                value: sol.value,
                ring: Ring::Real,
                optimal: true,
                certificate: Certificate::Lp { dual: sol.dual },
            })
        }
        Ring::Integer => {
            let z = p.target.to_dense_big(rows).ok_or(Error::NotABoundary)?;
            let IlpOutcome::Solved(s) = l1_ilp(&sub, &z, p.node_cap) else {
                return Err(Error::NotABoundary);
            };
            let result = FillResult {
                filler: lift(s.x.iter().map(bigq).collect()),
                value: bigq(&s.value),
                ring: Ring::Integer,
                optimal: s.exhausted,
                certificate: Certificate::BranchAndBound {
                    nodes: s.nodes,
                    root_lp_bound: s.root_bound,
                    exhausted: s.exhausted,
                },
            };
            if s.exhausted {
                Ok(result)
            } else {
                Err(Error::SearchCapExceeded {
                    cap: p.node_cap,
                    incumbent: Some(Box::new(result)),
                })
            }
        }
    }
}

/// Minimal-norm primitive `ω` with `dω = η` on `x`.
pub fn primitive(x: &CellComplex2, eta: Chain, ring: Ring) -> Result<FillResult> {
    solve_primitive(&FillProblem::coboundary(x, eta, ring))
}

/// [`fill`] on a coboundary problem, reporting `NotACoboundary` instead.
pub fn solve_primitive(p: &FillProblem) -> Result<FillResult> {
    fill(p).map_err(|e| match e {
        Error::NotABoundary => Error::NotACoboundary,
        other => other,
    })
}

/// Real fill value of a dense integer target already known to be a boundary.
fn fill_value_real(m: &IntMatrix, z: &[Q]) -> Option<Q> {
    l1_lp(m, z, &[]).map(|s| s.value)
}

fn fill_value_int(m: &IntMatrix, z: &[BigInt], cap: usize) -> Option<BigInt> {
    match l1_ilp(m, z, cap) {
        IlpOutcome::Solved(s) if s.exhausted => Some(s.value),
        _ => None,
    }
}

/// `ℓ¹ → ℓ¹` operator norm: largest column absolute sum.
pub fn l1_operator_norm(m: &IntMatrix) -> Q {
    (0..m.cols())
        .map(|j| q(m.column(j).iter().map(|x| x.abs()).sum()))
        .max()
        .unwrap_or_else(Q::zero)
}

/// `C_target ≤ (C·K + 1)·K`.
pub fn verify_transfer_inequality(c: &Q, k: &Q, c_target: &Q) -> bool {
    *c_target <= (c * k + Q::one()) * k
}

// ---- expansion constants -------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct RhoOptions {
    /// Vertex enumeration is refused when the ambient dimension exceeds this.
    pub dim_cap: usize,
    /// Largest support of integer 2-chains tried in the ρ_ℤ search.
    pub support_cap: usize,
    /// Coefficient box `[-k, k]` for the same search.
    pub box_bound: i64,
    /// Maximum number of searched 2-chains.
    pub search_budget: usize,
    pub node_cap: usize,
    pub integer: bool,
    /// `(seed, samples)`: fall back to random boundaries above the dimension cap.
    pub sampling: Option<(u64, usize)>,
    /// Upper limit on bases examined by the lattice-integrality certificate.
    pub basis_cap: usize,
}

impl Default for RhoOptions {
    fn default() -> Self {
        RhoOptions {
            dim_cap: 24,
            support_cap: 3,
            box_bound: 1,
            search_budget: 400,
            node_cap: DEFAULT_NODE_CAP,
            integer: true,
            sampling: None,
            basis_cap: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegerMethod {
    /// H₁(X;ℚ) ≠ 0.
    Convention,
    /// Every basis of `∂₂` generates its full column lattice, so real vertex
    /// fillers of integral boundaries are integral and ρ_ℤ = ρ_ℝ.
    LatticeCertificate,
    /// Minimum over circuits and a bounded chain search: an upper bound.
    SearchBound,
    NotComputed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub b1: usize,
    pub convention_zero: bool,
    /// None when there is no nonzero boundary (the infimum is over the empty set).
    pub rho_real: Option<Q>,
    pub real_exact: bool,
    pub rho_integer: Option<Q>,
    pub integer_exact: bool,
    pub integer_method: IntegerMethod,
    pub witness: Option<Chain>,
    pub integer_witness: Option<Chain>,
    /// Number of circuits (polytope vertex pairs) examined.
    pub circuits: usize,
}

fn ratio(z: &[BigInt], f: &Q) -> Q {
    bigq(&z.iter().map(|x| x.abs()).sum()) / f
}

fn det_q(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

/// Whether every nonsingular maximal minor of `m` (on a maximal independent
/// row set) has the same absolute value, i.e. every column basis generates the
/// full column lattice. None when more than `cap` column subsets would be needed.
pub fn lattice_certificate(m: &IntMatrix, cap: usize) -> Option<bool> {
    let rows = independent_columns(&m.transpose());
    let r = rows.len();
    if r == 0 {
        return Some(true);
    }
    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| m.row(i).to_vec()).collect();
    let sub = IntMatrix::from_rows(&sub);
    let d: BigInt = invariant_factors(&sub).iter().product();
    let target = bigq(&d);
    let n = m.cols();
    let mut count = 0usize;
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        count += 1;
        if count > cap {
            return None;
        }
        let minor: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                idx.iter()
                    .map(|&j| Q::from_integer(sub.get(i, j).into()))
                    .collect()
            })
            .collect();
        let det = det_q(minor).abs();
        if !det.is_zero() && det != target {
            return Some(false);
        }
        // next r-combination of 0..n
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            break;
        };
        idx[i] += 1;
        for k in i + 1..r {
            idx[k] = idx[k - 1] + 1;
        }
    }
    Some(true)
}

/// Expansion constant ρ(X) = inf ‖z‖/Fill(z) over nonzero boundaries.
pub fn rho(x: &CellComplex2, opts: &RhoOptions) -> Result<ExpansionReport> {
    let b1 = x.homology(1).betti;
    let h1_real = x.chain_complex().cohomology(1).betti;
    if b1 > 0 || h1_real > 0 {
        return Ok(ExpansionReport {
            b1,
            convention_zero: true,
            rho_real: Some(Q::zero()),
            real_exact: true,
            rho_integer: Some(Q::zero()),
            integer_exact: true,
            integer_method: IntegerMethod::Convention,
            witness: None,
            integer_witness: None,
            circuits: 0,
        });
    }
    let d2 = x.boundary_matrix(2);
    let dim = x.num_edges();
    if dim > opts.dim_cap {
        return match opts.sampling {
            Some((seed, samples)) => Ok(sampled_rho(&d2, seed, samples)),
            None => Err(Error::DimensionCapExceeded {
                dim,
                cap: opts.dim_cap,
            }),
        };
    }
    let cs = circuits(&d2);
    let mut best: Option<(Q, usize)> = None;
    for (i, c) in cs.iter().enumerate() {
        let zq: Vec<Q> = c.iter().map(bigq).collect();
        let f = fill_value_real(&d2, &zq).expect("circuits lie in the image");
        let r = ratio(c, &f);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, i));
        }
    }
    let mut report = ExpansionReport {
        b1,
        convention_zero: false,
        rho_real: best.as_ref().map(|(r, _)| r.clone()),
        real_exact: true,
        rho_integer: None,
        integer_exact: false,
        integer_method: IntegerMethod::NotComputed,
        witness: best
            .as_ref()
            .map(|(_, i)| Chain::from_dense_big(1, &cs[*i])),
        integer_witness: None,
        circuits: cs.len(),
    };
    if !opts.integer || cs.is_empty() {
        if cs.is_empty() {
            report.integer_exact = true;
            report.integer_method = IntegerMethod::LatticeCertificate;
        }
        return Ok(report);
    }
    let snf = SmithForm::new(&d2);
    if lattice_certificate(&d2, opts.basis_cap) == Some(true) {
        let (r, i) = best.clone().expect("nonempty circuits");
        let k = snf.lattice_multiplier(&cs[i]).expect("circuit in span");
        let z: Vec<BigInt> = cs[i].iter().map(|v| v * &k).collect();
        report.rho_integer = Some(r);
        report.integer_exact = true;
        report.integer_method = IntegerMethod::LatticeCertificate;
        report.integer_witness = Some(Chain::from_dense_big(1, &z));
        return Ok(report);
    }
    let (r, z) = integer_search(&d2, &snf, &cs, opts);
    report.rho_integer = r;
    report.integer_witness = z.map(|z| Chain::from_dense_big(1, &z));
    report.integer_method = IntegerMethod::SearchBound;
    Ok(report)
}

/// Upper bound on ρ_ℤ from lattice multiples of circuits plus small integer chains.
fn integer_search(
    d2: &IntMatrix,
    snf: &SmithForm,
    cs: &[Vec<BigInt>],
    opts: &RhoOptions,
) -> (Option<Q>, Option<Vec<BigInt>>) {
    let mut best: Option<(Q, Vec<BigInt>)> = None;
    let consider =
        |z: Vec<BigInt>, gen_norm: Option<BigInt>, best: &mut Option<(Q, Vec<BigInt>)>| {
            if z.iter().all(|v| v.is_zero()) {
                return;
            }
            let zn: BigInt = z.iter().map(|v| v.abs()).sum();
            if let (Some(g), Some((b, _))) = (&gen_norm, best.as_ref()) {
                if bigq(&zn) / bigq(g) >= *b {
                    return;
                }
            }
            if let Some(f) = fill_value_int(d2, &z, opts.node_cap) {
                let r = bigq(&zn) / bigq(&f);
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    *best = Some((r, z));
                }
            }
        };
    for c in cs {
        let k = snf.lattice_multiplier(c).expect("circuit in span");
        consider(c.iter().map(|v| v * &k).collect(), None, &mut best);
    }
    let n = d2.cols();
    let mut budget = opts.search_budget;
    'outer: for s in 1..=opts.support_cap.min(n) {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let vals: Vec<i64> = (-opts.box_bound..=opts.box_bound)
                .filter(|v| *v != 0)
                .collect();
            let mut digits = vec![0usize; s];
            loop {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let mut a = vec![0i64; n];
                for (t, &j) in idx.iter().enumerate() {
                    a[j] = vals[digits[t]];
                }
                let z: Vec<BigInt> = d2.mul_vec(&a).into_iter().map(BigInt::from).collect();
                let an = BigInt::from(a.iter().map(|v| v.abs()).sum::<i64>());
                consider(z, Some(an), &mut best);
                let Some(t) = (0..s).rev().find(|&t| digits[t] + 1 < vals.len()) else {
                    break;
                };
                digits[t] += 1;
                for d in digits.iter_mut().skip(t + 1) {
                    *d = 0;
                }
            }
            let Some(i) = (0..s).rev().find(|&i| idx[i] != i + n - s) else {
                break;
            };
            idx[i] += 1;
            for k in i + 1..s {
                idx[k] = idx[k - 1] + 1;
            }
        }
    }
    match best {
        Some((r, z)) => (Some(r), Some(z)),
        None => (None, None),
    }
}

fn sampled_rho(d2: &IntMatrix, seed: u64, samples: usize) -> ExpansionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Q, Vec<BigInt>)> = None;
    for _ in 0..samples {
        let a: Vec<i64> = (0..d2.cols())
            .map(|_| {
                if rng.gen_bool(0.3) {
                    rng.gen_range(-2..=2)
                } else {
                    0
                }
            })
            .collect();
        let z: Vec<BigInt> = d2.mul_vec(&a).into_iter().map(BigInt::from).collect();
        if z.iter().all(|v| v.is_zero()) {
            continue;
        }
        let zq: Vec<Q> = z.iter().map(bigq).collect();
        let f = fill_value_real(d2, &zq).expect("boundary by construction");
        let r = ratio(&z, &f);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, z));
        }
    }
    ExpansionReport {
        b1: 0,
        convention_zero: false,
        rho_real: best.as_ref().map(|(r, _)| r.clone()),
        real_exact: false,
        rho_integer: None,
        integer_exact: false,
        integer_method: IntegerMethod::NotComputed,
        witness: best.map(|(_, z)| Chain::from_dense_big(1, &z)),
        integer_witness: None,
        circuits: 0,
    }
}

// ---- cochain side ----------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    /// sup Prim_ℝ(η)/‖η‖ over nonzero coboundaries.
    pub constant_real: Q,
    /// The same supremum over integral coboundaries with integral primitives.
    pub constant_integer: Q,
    /// Reciprocals `inf ‖η‖/Prim(η)`; None when there is no nonzero coboundary.
    pub rho_real: Option<Q>,
    pub rho_integer: Option<Q>,
    pub equal: bool,
    /// Every examined integral coboundary had Prim_ℤ = Prim_ℝ, confirmed both by
    /// branch-and-bound and by rounding the real optimum.
    pub pointwise_equal: bool,
    pub witness: Option<Chain>,
    pub candidates: usize,
}

/// Rounds a real primitive `ω` of the integral coboundary `η` to an integral
/// primitive of no larger norm. Requires H¹(X;ℝ) = 0; None otherwise.
///
/// With `ω₀` any integral primitive, `ω − ω₀ = d⁰f` for a real 0-cochain `f`,
/// and `ω_s = ω₀ + d⁰⌊f + s⌋` is integral with `dω_s = η`. Averaged over
/// `s ∈ [0,1)` its norm equals `‖ω‖`, so one of the finitely many distinct
/// `ω_s` is no longer than `ω`.
pub fn round_primitive(x: &CellComplex2, eta: &[BigInt], omega: &[Q]) -> Option<Vec<BigInt>> {
    let dt = x.boundary_matrix(2).transpose();
    let omega0 = SmithForm::new(&dt).solve_integer(eta)?;
    let d0 = x.boundary_matrix(1).transpose();
    let diff: Vec<Q> = omega
        .iter()
        .zip(&omega0)
        .map(|(a, b)| a - bigq(b))
        .collect();
    let f = solve(&to_rational(&d0), &diff, d0.cols())?;
    let mut shifts = vec![Q::zero()];
    for fv in &f {
        let frac = fv - fv.floor();
        if !frac.is_zero() {
            shifts.push(Q::one() - frac);
        }
    }
    shifts.sort();
    shifts.dedup();
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    for s in shifts {
        let fl: Vec<i64> = f
            .iter()
            .map(|fv| i64::try_from((fv + &s).floor().to_integer()).expect("small potential"))
            .collect();
        let corr = d0.mul_vec(&fl);
        let cand: Vec<BigInt> = omega0
            .iter()
            .zip(&corr)
            .map(|(a, c)| a + BigInt::from(*c))
            .collect();
        let n: BigInt = cand.iter().map(|v| v.abs()).sum();
        if best.as_ref().is_none_or(|(b, _)| n < *b) {
            best = Some((n, cand));
        }
    }
    best.map(|(_, v)| v)
}

/// Compares the cochain expansion constants over ℤ and ℝ. Requires H¹(X;ℝ) = 0.
pub fn check_integral_real_agreement(
    x: &CellComplex2,
    opts: &RhoOptions,
) -> Result<AgreementReport> {
    let b = x.chain_complex().cohomology(1).betti;
    if b > 0 {
        return Err(Error::PreconditionViolated(format!(
            "first real cohomology has rank {b}"
        )));
    }
    let dt = x.boundary_matrix(2).transpose();
    let dim = dt.rows();
    if dim > opts.dim_cap {
        return Err(Error::DimensionCapExceeded {
            dim,
            cap: opts.dim_cap,
        });
    }
    let cs = circuits(&dt);
    let snf = SmithForm::new(&dt);
    let mut family: Vec<Vec<BigInt>> = cs
        .iter()
        .map(|c| {
            let k = snf.lattice_multiplier(c).expect("circuit in span");
            c.iter().map(|v| v * &k).collect()
        })
        .collect();
    // small integral coboundaries dω with ω = ±e_i ± e_j
    let n = dt.cols();
    for i in 0..n {
        for j in i..n {
            for sj in [1i64, -1] {
                let mut w = vec![0i64; n];
                w[i] += 1;
                if j != i {
                    w[j] += sj;
                } else if sj < 0 {
                    continue;
                }
                let eta: Vec<BigInt> = dt.mul_vec(&w).into_iter().map(BigInt::from).collect();
                if eta.iter().any(|v| !v.is_zero()) {
                    family.push(eta);
                }
            }
        }
    }
    let mut best_real: Option<(Q, usize)> = None;
    let mut best_int: Option<(Q, usize)> = None;
    let mut pointwise = true;
    for (idx, eta) in family.iter().enumerate() {
        let norm = bigq(&eta.iter().map(|v| v.abs()).sum());
        let eq: Vec<Q> = eta.iter().map(bigq).collect();
        let sol = l1_lp(&dt, &eq, &[]).expect("coboundary by construction");
        let real = &sol.value / &norm;
        let ilp = fill_value_int(&dt, eta, opts.node_cap);
        let rounded = round_primitive(x, eta, &sol.x);
        match (&ilp, &rounded) {
            (Some(iv), Some(rv)) => {
                let rn: BigInt = rv.iter().map(|v| v.abs()).sum();
                if bigq(iv) != sol.value || rn != *iv || dt.mul_vec_big(rv) != *eta {
                    pointwise = false;
                }
            }
            _ => pointwise = false,
        }
        let int_val = match (&ilp, &rounded) {
            (Some(iv), _) => bigq(iv),
            (None, Some(rv)) => bigq(&rv.iter().map(|v| v.abs()).sum()),
            (None, None) => continue,
        };
        let int_ratio = int_val / &norm;
        if best_real.as_ref().is_none_or(|(b, _)| real > *b) {
            best_real = Some((real, idx));
        }
        if best_int.as_ref().is_none_or(|(b, _)| int_ratio > *b) {
            best_int = Some((int_ratio, idx));
        }
    }
    // The circuits alone give the exact real supremum; the family only adds
    // further integral test points.
    let constant_real = cs
        .iter()
        .map(|c| {
            let eq: Vec<Q> = c.iter().map(bigq).collect();
            l1_lp(&dt, &eq, &[]).expect("circuit in image").value / abs_sum(eq.iter())
        })
        .max()
        .unwrap_or_else(Q::zero);
    let constant_integer = best_int
        .as_ref()
        .map(|(v, _)| v.clone())
        .unwrap_or_else(Q::zero);
    let inv = |c: &Q| if c.is_zero() { None } else { Some(c.recip()) };
    Ok(AgreementReport {
        rho_real: inv(&constant_real),
        rho_integer: inv(&constant_integer),
        equal: constant_real == constant_integer,
        pointwise_equal: pointwise,
        witness: best_int.map(|(_, i)| Chain::from_dense_big(2, &family[i])),
        candidates: family.len(),
        constant_real,
        constant_integer,
    })
}

/// Rank of `∂₂` over ℚ, exposed for bookkeeping checks.
pub fn boundary_rank(x: &CellComplex2) -> usize {
    rref(to_rational(&x.boundary_matrix(2)), x.num_cells()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qf;
    use crate::complex::fixtures::*;

    #[test]
    fn sphere_and_rp2_fills() {
        let s = sphere();
        let p = FillProblem::new(&s, Chain::from_ints(1, &[(0, 1)]), Ring::Integer);
        let r = fill(&p).unwrap();
        assert_eq!(r.value, q(1));
        assert!(r.verify(&p));
        let rp = rp2();
        let p = FillProblem::new(&rp, Chain::from_ints(1, &[(0, 2)]), Ring::Integer);
        assert_eq!(fill(&p).unwrap().value, q(1));
        let p = FillProblem::new(&rp, Chain::from_ints(1, &[(0, 1)]), Ring::Integer);
        assert_eq!(fill(&p), Err(Error::NotABoundary));
        let p = FillProblem::new(&rp, Chain::from_ints(1, &[(0, 1)]), Ring::Real);
        let r = fill(&p).unwrap();
        assert_eq!(r.value, qf(1, 2));
        assert!(r.verify(&p));
    }

    #[test]
    fn zero_target() {
        for ring in [Ring::Real, Ring::Integer] {
            let p = FillProblem::new(&torus(), Chain::zero(1), ring);
            let r = fill(&p).unwrap();
            assert!(r.filler.is_zero());
            assert_eq!(r.value, q(0));
        }
    }

    #[test]
    fn primitives_on_sphere() {
        let s = sphere();
        assert_eq!(
            primitive(&s, Chain::from_ints(2, &[(0, 1)]), Ring::Real),
            Err(Error::NotACoboundary)
        );
        let r = primitive(&s, Chain::from_ints(2, &[(0, 1), (1, -1)]), Ring::Integer).unwrap();
        assert_eq!(r.value, q(1));
        assert_eq!(r.filler, Chain::from_ints(1, &[(0, 1)]));
        assert!(primitive(&s, Chain::zero(2), Ring::Real)
            .unwrap()
            .filler
            .is_zero());
    }

    #[test]
    fn rho_closed_forms() {
        let o = RhoOptions::default();
        let s = rho(&sphere(), &o).unwrap();
        assert_eq!(s.rho_real, Some(q(1)));
        assert_eq!(s.rho_integer, Some(q(1)));
        assert!(s.integer_exact);
        let r = rho(&rp2(), &o).unwrap();
        assert_eq!(r.rho_real, Some(q(2)));
        assert_eq!(r.rho_integer, Some(q(2)));
        let t = rho(&torus(), &o).unwrap();
        assert!(t.convention_zero);
        assert_eq!(t.rho_real, Some(q(0)));
    }

    #[test]
    fn integer_rho_can_drop_below_real() {
        // Cells a² and a³ on one loop: Fill_ℝ(a) = 1/3 but Fill_ℤ(a) = 2.
        let x = CellComplex2::from_presentation(
            "mixed",
            &["a"],
            &[vec!["a", "a"], vec!["a", "a", "a"]],
        )
        .unwrap();
        let r = rho(&x, &RhoOptions::default()).unwrap();
        assert_eq!(r.rho_real, Some(q(3)));
        assert_eq!(r.integer_method, IntegerMethod::SearchBound);
        assert!(r.rho_integer.clone().unwrap() <= qf(1, 2));
        assert_eq!(lattice_certificate(&x.boundary_matrix(2), 100), Some(false));
    }

    #[test]
    fn agreement_examples() {
        let o = RhoOptions::default();
        for x in [rp2(), sphere()] {
            let a = check_integral_real_agreement(&x, &o).unwrap();
            assert!(a.equal && a.pointwise_equal);
        }
        assert!(matches!(
            check_integral_real_agreement(&torus(), &o),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn operator_norms() {
        assert_eq!(l1_operator_norm(&IntMatrix::identity(4)), q(1));
        assert_eq!(
            l1_operator_norm(&IntMatrix::from_rows(&[vec![2], vec![-3]])),
            q(5)
        );
        assert_eq!(l1_operator_norm(&rp2().boundary_matrix(2)), q(2));
        assert!(verify_transfer_inequality(&q(1), &q(1), &q(2)));
        assert!(!verify_transfer_inequality(&q(1), &q(1), &q(3)));
    }
}
