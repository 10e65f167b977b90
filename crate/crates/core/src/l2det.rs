//! The L2 side: normalized traces via fundamental-domain sums, heat traces
//! on the (q+1)-regular tree by exact return counting, the closed-form
//! normalized determinant of Laplacian + lambda_u, spectral determinants of
//! finite matrices, and the convergence harness comparing normalized cover
//! determinants against the closed form with certified girth-tail bounds.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{bigfloat_to_f64, BigFloatCtx};
use crate::cover::{integer_laplacian, CoverGraph};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::matrix::Mat;
use crate::scalar::{format_rational, ln_rational, rational_to_f64, Rational};

/// Safety factor applied to truncation tail bounds before comparisons.
const TAIL_SAFETY: f64 = 2.0;

/// Maximum heat-series truncation order accepted before the O(K^2) table
/// becomes a budget concern.
const MAX_HEAT_TERMS: usize = 4_096;

/// Exact diagonal entries delta_k = <x|Laplacian^k|x> on the
/// (q+1)-regular tree, computed by dynamic programming over the distance
/// from the root: a radial function f(j) maps under the Laplacian to
/// (q+1) f(j) - f(j-1) - q f(j+1), with the j = 0 row (q+1)(f(0) - f(1)).
#[derive(Debug, Clone)]
pub struct TreeReturnTable {
    q: usize,
    deltas: Vec<BigInt>,
}

impl TreeReturnTable {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_order(&self) -> usize {
        self.deltas.len() - 1
    }

    pub fn delta(&self, k: usize) -> &BigInt {
        &self.deltas[k]
    }
}

pub fn tree_return_counts(q: usize, max_order: usize) -> Result<TreeReturnTable> {
    if q < 1 {
        return Err(Error::UnsupportedValency {
            q,
            reason: "the tree table needs q >= 1".into(),
        });
    }
    if max_order > MAX_HEAT_TERMS {
        return Err(Error::BudgetExceeded {
            estimate: (max_order as u128).pow(2),
            budget: (MAX_HEAT_TERMS as u64).pow(2),
        });
    }
    let qi = BigInt::from(q as i64);
    let deg = BigInt::from(q as i64 + 1);
    // radial[j] is the value of Laplacian^k delta_root at distance j.
    let mut radial = vec![BigInt::from(0); max_order + 2];
    radial[0] = BigInt::from(1);
    let mut deltas = Vec::with_capacity(max_order + 1);
    deltas.push(radial[0].clone());
    for _ in 1..=max_order {
        let mut next = vec![BigInt::from(0); max_order + 2];
        next[0] = &deg * (&radial[0] - &radial[1]);
        for j in 1..=max_order {
            next[j] = &deg * &radial[j] - &radial[j - 1] - &qi * &radial[j + 1];
        }
        deltas.push(next[0].clone());
        radial = next;
    }
    Ok(TreeReturnTable { q, deltas })
}

/// Truncated heat trace value and a certified bound on the dropped tail.
#[derive(Debug, Clone, Copy)]
pub struct HeatTrace {
    pub value: f64,
    pub tail_bound: f64,
}

/// Exact partial sum n r sum_{k <= K} (-t)^k delta_k / k!.
pub(crate) fn tree_heat_partial(
    table: &TreeReturnTable,
    n: usize,
    r: usize,
    t: &BigRational,
) -> BigRational {
    let mut term = BigRational::one();
    let mut acc = BigRational::zero();
    for k in 0..=table.max_order() {
        if k > 0 {
            term = term * (-t.clone()) / BigRational::from_integer(k.into());
        }
        acc += &term * BigRational::from_integer(table.delta(k).clone());
    }
    acc * BigRational::from_integer((n * r).into())
}

/// Upper bound on sum_{k > K} x^k / k! for x >= 0, from the Lagrange
/// remainder of the exponential, with the safety factor applied.
pub(crate) fn exp_tail_bound(x: f64, truncation: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let k = truncation as f64;
    // x^{K+1} / (K+1)! e^x, computed in log space.
    let ln_term = (k + 1.0) * x.ln() - ln_factorial(truncation + 1) + x;
    ln_term.exp() * TAIL_SAFETY
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Normalized heat trace of the Laplacian on the quotient of the
/// (q+1)-regular tree: n r sum (-t)^k delta_k / k! with a certified tail
/// bound from the norm bound 2 (q+1) on the Laplacian.
pub fn gamma_heat_trace(
    q: usize,
    n: usize,
    r: usize,
    t: &BigRational,
    truncation: usize,
) -> Result<HeatTrace> {
    let table = tree_return_counts(q, truncation)?;
    let partial = tree_heat_partial(&table, n, r, t);
    let x = 2.0 * (q as f64 + 1.0) * rational_to_f64(t).abs();
    let tail = (n * r) as f64 * exp_tail_bound(x, truncation);
    Ok(HeatTrace {
        value: rational_to_f64(&partial),
        tail_bound: tail,
    })
}

/// lambda_u = q u + 1/u - q - 1.
pub fn lambda_of_u(q: usize, u: &BigRational) -> Result<BigRational> {
    if u.is_zero() {
        return Err(Error::UOutsideDomain {
            u: "0".into(),
            domain: "u != 0".into(),
        });
    }
    let qr = BigRational::from_integer((q as i64).into());
    Ok(&qr * u + u.recip() - qr - BigRational::one())
}

/// The small root u in (0, 1/q) of q u^2 - (lambda + q + 1) u + 1 = 0 for
/// lambda > 0. Exact: errors if the discriminant is not a perfect square
/// in Q (it always is for lambda = lambda_u with rational u).
pub fn u_of_lambda(q: usize, lambda: &BigRational) -> Result<BigRational> {
    if !lambda.is_positive() {
        return Err(Error::LambdaNotPositive {
            lambda: format_rational(lambda),
        });
    }
    let qr = BigRational::from_integer((q as i64).into());
    let b = lambda + &qr + BigRational::one();
    let disc = &b * &b - BigRational::from_integer((4 * q as i64).into());
    let sqrt = rational_sqrt(&disc).ok_or_else(|| Error::IrrationalResult {
        disc: format_rational(&disc),
    })?;
    Ok((b - sqrt) / (BigRational::from_integer(2.into()) * qr))
}

/// Exact square root of a nonnegative rational, if it exists.
fn rational_sqrt(v: &BigRational) -> Option<BigRational> {
    if v.is_negative() {
        return None;
    }
    let num = v.numer().sqrt();
    let den = v.denom().sqrt();
    if &(&num * &num) == v.numer() && &(&den * &den) == v.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

fn check_u_domain(q: usize, u: &BigRational) -> Result<()> {
    let upper = BigRational::new(BigInt::one(), BigInt::from(q as i64));
    if !u.is_positive() || *u >= upper {
        return Err(Error::UOutsideDomain {
            u: format_rational(u),
            domain: format!("(0, 1/{q})"),
        });
    }
    Ok(())
}

/// Closed form of the normalized determinant of Laplacian + lambda_u for
/// the trivial fundamental domain data (n vertices, stalk dimension r):
/// (1 - u^2)^{-(q-1) n r / 2} u^{-n r}.
pub fn l2det_closed(q: usize, n: usize, r: usize, u: &BigRational) -> Result<BigRational> {
    if q < 2 {
        return Err(Error::UnsupportedValency {
            q,
            reason: "the closed form requires q >= 2".into(),
        });
    }
    check_u_domain(q, u)?;
    let exp2 = (q - 1) * n * r;
    debug_assert!(exp2 % 2 == 0, "(q-1) n r is even for regular graphs");
    let one = BigRational::one();
    let base = &one - u * u;
    let mut value = BigRational::one();
    for _ in 0..exp2 / 2 {
        value = value / &base;
    }
    for _ in 0..n * r {
        value = value / u;
    }
    Ok(value)
}

/// Spectral determinant exp(sum log eigenvalue) of a self-adjoint positive
/// definite matrix. The eigenvalue route embodies the zeta-regularized
/// definition in finite dimensions; it must agree with the ordinary LU
/// determinant to 1e-10 relative.
pub fn zeta_reg_det(m: &DMatrix<f64>) -> Result<f64> {
    let asym = (m - m.transpose()).abs().max();
    if asym > 1e-9 {
        return Err(Error::NotSelfAdjoint { asymmetry: asym });
    }
    let eigen = m.clone().symmetric_eigenvalues();
    let mut log_sum = 0.0f64;
    for &lambda in eigen.iter() {
        if lambda <= 1e-10 {
            return Err(Error::NotPositiveDefinite { eigenvalue: lambda });
        }
        log_sum += lambda.ln();
    }
    Ok(log_sum.exp())
}

/// Ordinary determinant by LU with partial pivoting; the independent
/// second route for checking zeta_reg_det.
pub fn det_lu_f64(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let mut a = m.clone();
    let mut det = 1.0f64;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[(row, col)].abs() > a[(pivot, col)].abs() {
                pivot = row;
            }
        }
        if a[(pivot, col)] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        for row in col + 1..n {
            let factor = a[(row, col)] / p;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                a[(row, j)] -= factor * a[(col, j)];
            }
        }
    }
    det
}

/// The N-th root picked by the normalization that is positive on the
/// positive reals: magnitude root with principal argument divided by N.
pub fn normalized_root(value: Complex64, n: u32) -> Result<Complex64> {
    if value.norm_sqr() == 0.0 {
        return Err(Error::RootOfZero);
    }
    if n == 0 {
        return Err(Error::Parse("0th root".into()));
    }
    let magnitude = value.norm().powf(1.0 / n as f64);
    let phase = value.arg() / n as f64;
    Ok(Complex64::from_polar(magnitude, phase))
}

/// Positive N-th root of a positive rational, through the accurate log.
pub fn normalized_root_of_positive(value: &BigRational, n: usize) -> Result<f64> {
    if !value.is_positive() {
        return Err(Error::RootOfZero);
    }
    Ok((ln_rational(value)? / n as f64).exp())
}

/// Exact determinant of (Laplacian + lambda) for the trivial rank-one
/// system on a graph.
pub fn det_laplacian_plus_lambda(g: &Multigraph, lambda: &BigRational) -> BigRational {
    let n = g.vertex_count();
    let mut mat: Mat<Rational> = Mat::zeros(n, n);
    let lap = integer_laplacian(g);
    for i in 0..n {
        for j in 0..n {
            let mut v = BigRational::from_integer(lap[i][j].clone());
            if i == j {
                v += lambda;
            }
            mat.set(i, j, v);
        }
    }
    mat.determinant()
}

/// sum_{k >= start} y^k / k for 0 < y < 1, as an f64 upper bound: exact
/// rational partial sum plus the geometric remainder y^K / (K (1 - y)).
pub(crate) fn log_tail_sum(y: &BigRational, start: usize) -> f64 {
    debug_assert!(y.is_positive() && *y < BigRational::one());
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for _ in 0..start {
        power *= y;
    }
    let mut k = start;
    loop {
        let term = &power / BigRational::from_integer(k.into());
        acc += &term;
        power *= y;
        k += 1;
        if k > start + 512 || rational_to_f64(&term) < 1e-30 {
            break;
        }
    }
    let y_f = rational_to_f64(y);
    let remainder = y_f.powi(k as i32) / (k as f64 * (1.0 - y_f));
    rational_to_f64(&acc) + remainder * TAIL_SAFETY
}

/// Per-cover row of the convergence experiment.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub index: usize,
    pub girth: usize,
    pub value: f64,
    pub target: f64,
    pub error: f64,
    pub certified_bound: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub q: usize,
    pub u: BigRational,
    pub rows: Vec<ConvergenceRow>,
}

/// Size/precision policy for cover determinants: exact rational
/// elimination up to the vertex limit, high-precision float LU above it.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionConfig {
    pub exact_vertex_limit: usize,
    pub float_digits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            exact_vertex_limit: 200,
            float_digits: 60,
        }
    }
}

/// Compares det(Laplacian_j + lambda_u)^{1/index} for each cover against
/// the closed form, with a certified girth-tail bound per cover: the
/// normalized determinant differs from the target by the factor
/// Z_j(u)^{1/index}, and |log Z_j|/index is at most
/// 2 m r sum_{k >= girth_j} (q u)^k / k.
pub fn convergence_experiment(
    covers: &[CoverGraph],
    u: &BigRational,
    precision: &PrecisionConfig,
) -> Result<ConvergenceReport> {
    if covers.is_empty() {
        return Err(Error::Parse("no covers given".into()));
    }
    let base = covers[0].base().clone();
    let q = base.check_regular()?;
    if q < 2 {
        return Err(Error::UnsupportedValency {
            q,
            reason: "the convergence experiment requires q >= 2".into(),
        });
    }
    check_u_domain(q, u)?;
    let lambda = lambda_of_u(q, u)?;
    let n = base.vertex_count();
    let m = base.edge_count();
    let r = 1usize;
    let target_rat = l2det_closed(q, n, r, u)?;
    let target = (ln_rational(&target_rat)?).exp();
    let qu = BigRational::from_integer((q as i64).into()) * u;

    let mut rows = Vec::with_capacity(covers.len());
    for cover in covers {
        if cover.base().vertex_count() != n || cover.base().edge_count() != m {
            return Err(Error::SupportMismatch {
                reason: "covers must share the same base graph".into(),
            });
        }
        let total = cover.total();
        let girth = total.girth()?;
        let index = cover.index();
        let value = if total.vertex_count() <= precision.exact_vertex_limit {
            let det = det_laplacian_plus_lambda(total, &lambda);
            normalized_root_of_positive(&det, index)?
        } else {
            let mut ctx = BigFloatCtx::with_decimal_digits(precision.float_digits);
            let lap = integer_laplacian(total);
            let lam_bf = ctx.from_rational(&lambda);
            let rows_bf: Vec<Vec<_>> = lap
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| {
                            let x = ctx.from_bigint(v);
                            if i == j {
                                x.add(
                                    &lam_bf,
                                    ctx.precision_bits(),
                                    astro_float::RoundingMode::ToEven,
                                )
                            } else {
                                x
                            }
                        })
                        .collect()
                })
                .collect();
            let det = ctx.det_lu(rows_bf);
            let root = ctx.root(&det, index)?;
            bigfloat_to_f64(&root)
        };
        let eta = 2.0 * (m * r) as f64 * log_tail_sum(&qu, girth);
        let certified_bound = target * eta.exp_m1();
        rows.push(ConvergenceRow {
            index,
            girth,
            value,
            target,
            error: (value - target).abs(),
            certified_bound,
        });
    }
    Ok(ConvergenceReport {
        q,
        u: u.clone(),
        rows,
    })
}

/// Per-cover row of the normalized-zeta experiment: Z_j(u)^{1/index} with
/// the certified bound |value - 1| <= exp(eta_j) - 1.
#[derive(Debug, Clone)]
pub struct ZetaTendsRow {
    pub index: usize,
    pub girth: usize,
    pub value: f64,
    pub value_minus_one: f64,
    pub certified_bound: f64,
}

pub fn zeta_tends_to_one(covers: &[CoverGraph], u: &BigRational) -> Result<Vec<ZetaTendsRow>> {
    if covers.is_empty() {
        return Err(Error::Parse("no covers given".into()));
    }
    let base = covers[0].base().clone();
    let q = base.check_regular()?;
    check_u_domain(q, u)?;
    let m = base.edge_count();
    let qu = BigRational::from_integer((q as i64).into()) * u;
    let mut rows = Vec::with_capacity(covers.len());
    for cover in covers {
        let total = cover.total();
        let girth = total.girth()?;
        let index = cover.index();
        let ls = crate::local_system::LocalSystem::<Rational>::trivial(total.clone(), 1);
        let zeta = crate::zeta::bass_zeta(&ls)?;
        let z_at_u = zeta.eval(u);
        if !z_at_u.is_positive() {
            return Err(Error::UOutsideDomain {
                u: format_rational(u),
                domain: "Z_j(u) > 0".into(),
            });
        }
        let log_z = ln_rational(&z_at_u)?;
        let value_minus_one = (log_z / index as f64).exp_m1();
        let eta = 2.0 * m as f64 * log_tail_sum(&qu, girth);
        rows.push(ZetaTendsRow {
            index,
            girth,
            value: 1.0 + value_minus_one,
            value_minus_one,
            certified_bound: eta.exp_m1(),
        });
    }
    Ok(rows)
}

/// One evaluation of the normalized heat-trace difference bound: lhs is
/// the truncated |tr e^{-t Laplacian_j}/index - tr_normalized e^{-t
/// Laplacian_tree}| with both truncation tails added; rhs is c_j t with
/// c_j = n r sum_{k >= girth_j} (2(q+1))^k / k!.
#[derive(Debug, Clone)]
pub struct HeatDiffReport {
    pub index: usize,
    pub girth: usize,
    pub t: BigRational,
    pub lhs: f64,
    pub c_j: f64,
    pub rhs: f64,
}

pub fn heat_diff_bound(
    cover: &CoverGraph,
    t: &BigRational,
    truncation: usize,
) -> Result<HeatDiffReport> {
    let base = cover.base();
    let q = base.check_regular()?;
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::UOutsideDomain {
            u: format_rational(t),
            domain: "t in [0, 1]".into(),
        });
    }
    let n = base.vertex_count();
    let r = 1usize;
    let total = cover.total();
    let index = cover.index();
    let girth = total.girth()?;

    // Exact truncated finite-side trace sum_{k<=K} (-t)^k tr(L_j^k) / k!.
    let traces = laplacian_trace_powers(total, truncation);
    let mut term = BigRational::one();
    let mut fin = BigRational::zero();
    for (k, trace) in traces.iter().enumerate() {
        if k > 0 {
            term = term * (-t.clone()) / BigRational::from_integer(k.into());
        }
        fin += &term * BigRational::from_integer(trace.clone());
    }
    fin /= BigRational::from_integer((index as i64).into());

    let table = tree_return_counts(q, truncation)?;
    let tree = tree_heat_partial(&table, n, r, t);

    let x = 2.0 * (q as f64 + 1.0) * rational_to_f64(t);
    // Both truncated tails, added to the left side: the finite trace is
    // bounded by n_j (2(q+1))^k and the tree trace by n r (2(q+1))^k.
    let tails = 2.0 * (n * r) as f64 * exp_tail_bound(x, truncation);
    let lhs = rational_to_f64(&(&fin - &tree).abs()) + tails;

    let c_j = (n * r) as f64 * factorial_tail_sum(2 * (q + 1), girth);
    Ok(HeatDiffReport {
        index,
        girth,
        t: t.clone(),
        lhs,
        c_j,
        rhs: c_j * rational_to_f64(t),
    })
}

/// Exact traces of Laplacian powers 0..=K for the trivial rank-one system.
pub fn laplacian_trace_powers(g: &Multigraph, max_order: usize) -> Vec<BigInt> {
    let n = g.vertex_count();
    let lap = integer_laplacian(g);
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut traces = Vec::with_capacity(max_order + 1);
    traces.push(BigInt::from(n as i64));
    for _ in 1..=max_order {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if lap[k][j].is_zero() {
                        continue;
                    }
                    let prod = &power[i][k] * &lap[k][j];
                    next[i][j] += prod;
                }
            }
        }
        power = next;
        let mut tr = BigInt::zero();
        for (i, row) in power.iter().enumerate() {
            tr += &row[i];
        }
        traces.push(tr);
    }
    traces
}

/// sum_{k >= start} x^k / k! for integer x, as an f64 with the rational
/// partial sum carried until terms are negligible.
fn factorial_tail_sum(x: usize, start: usize) -> f64 {
    let xr = BigRational::from_integer((x as i64).into());
    let mut term = BigRational::one();
    for k in 1..=start {
        term = term * &xr / BigRational::from_integer(k.into());
    }
    let mut acc = BigRational::zero();
    let mut k = start;
    loop {
        acc += &term;
        k += 1;
        term = term * &xr / BigRational::from_integer(k.into());
        if k > start + 256 || (rational_to_f64(&term) < 1e-25 && k > x) {
            break;
        }
    }
    rational_to_f64(&acc) + exp_tail_bound(x as f64, k - 1)
}
