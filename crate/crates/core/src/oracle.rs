//! Independent checks: exhaustive enumeration over `Z_m` and numeric
//! evaluation of the adjacency tensor.
//!
//! Nothing here goes through the Smith normal form. The brute-force scans
//! walk `Z_m^n` in lexicographic order with an odometer; every step adds 1
//! (mod m) to one coordinate, so edge sums are updated incrementally.

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_RESIDUAL_THRESHOLD: f64 = 1e-8;
pub const DEFAULT_CAP: usize = 1_000_000;

/// `(A x^{m-1})_i = Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j`.
pub fn tensor_apply<T>(g: &UniformHypergraph, x: &[T]) -> Result<Vec<T>>
where
    T: Copy + Zero + One + std::ops::Mul<Output = T>,
{
    if x.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: x.len(),
        });
    }
    let m = g.uniformity();
    let mut out = vec![T::zero(); x.len()];
    let mut prefix = vec![T::one(); m + 1];
    for e in g.edges() {
        for (t, &v) in e.iter().enumerate() {
            prefix[t + 1] = prefix[t] * x[v - 1];
        }
        let mut suffix = T::one();
        for t in (0..m).rev() {
            let v = e[t];
            out[v - 1] = out[v - 1] + prefix[t] * suffix;
            suffix = suffix * x[v - 1];
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    pub rho: f64,
    /// Positive, normalized to maximum entry 1.
    pub perron: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Shifted power iteration `x ← (A x^{m-1} + x^{[m-1]})^{[1/(m-1)]}`.
///
/// The identity shift makes the iteration converge on hypergraphs whose
/// tensor is weakly irreducible but not primitive (hypertrees, even cycles).
/// Stops when the Collatz–Wielandt bracket `[min, max]` of
/// `(A x^{m-1})_i / x_i^{m-1}` is narrower than `tol`.
pub fn power_iteration(g: &UniformHypergraph, tol: f64, max_iter: usize) -> Result<SpectralEstimate> {
    g.require_indexable()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let n = g.vertex_count();
    let p = (g.uniformity() - 1) as i32;
    let q = 1.0 / p as f64;
    let mut x = vec![1.0f64; n];
    let mut gap = f64::INFINITY;
    for iteration in 0..=max_iter {
        let y = tensor_apply(g, &x)?;
        let powered: Vec<f64> = x.iter().map(|v| v.powi(p)).collect();
        let (lo, hi) = y
            .iter()
            .zip(&powered)
            .map(|(a, b)| a / b)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)));
        gap = hi - lo;
        if gap <= tol {
            let rho = (lo * hi).sqrt();
            let residual = y
                .iter()
                .zip(&powered)
                .map(|(a, b)| (a - rho * b).abs())
                .fold(0.0, f64::max);
            return Ok(SpectralEstimate {
                rho,
                perron: x,
                iterations: iteration,
                residual,
            });
        }
        let next: Vec<f64> = y.iter().zip(&powered).map(|(a, b)| (a + b).powf(q)).collect();
        let top = next.iter().copied().fold(0.0, f64::max);
        x = next.into_iter().map(|v| v / top).collect();
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        gap,
    })
}

#[derive(Clone, Debug)]
pub struct EigenvectorCheck {
    pub exponents: Vec<u64>,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub checks: Vec<EigenvectorCheck>,
    pub threshold: f64,
    pub max_residual: f64,
    pub pairwise_distinct: bool,
}

impl LiftOutcome {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.threshold && self.pairwise_distinct
    }
}

/// Max-norm residual of `A x^{m-1} = λ x^{[m-1]}`.
pub fn eigen_residual(g: &UniformHypergraph, x: &[Complex64], lambda: f64) -> Result<f64> {
    let p = (g.uniformity() - 1) as i32;
    let y = tensor_apply(g, x)?;
    Ok(y.iter()
        .zip(x)
        .map(|(a, v)| (a - v.powi(p) * lambda).norm())
        .fold(0.0, f64::max))
}

/// Lift each exponent vector `t` to `x_j = exp(2πi t_j / m) · perron_j` and
/// measure its residual against `rho`. Residuals must stay within
/// `10 · (est.residual + tol)`, and the lifted vectors must be pairwise
/// distinct.
pub fn lift_and_check(
    g: &UniformHypergraph,
    est: &SpectralEstimate,
    exponents: &[Vec<u64>],
    tol: f64,
) -> Result<LiftOutcome> {
    let m = g.uniformity() as u64;
    let mut checks = Vec::with_capacity(exponents.len());
    for (index, t) in exponents.iter().enumerate() {
        if t.len() != g.vertex_count() || t[0] % m != 0 || !in_kernel(g, t) {
            return Err(Error::BadExponents { index });
        }
        let vector: Vec<Complex64> = t
            .iter()
            .zip(&est.perron)
            .map(|(&tj, &pj)| Complex64::from_polar(pj, 2.0 * std::f64::consts::PI * (tj % m) as f64 / m as f64))
            .collect();
        let residual = eigen_residual(g, &vector, est.rho)?;
        checks.push(EigenvectorCheck {
            exponents: t.clone(),
            vector,
            residual,
        });
    }
    let threshold = 10.0 * (est.residual + tol);
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let min_perron = est.perron.iter().copied().fold(f64::INFINITY, f64::min);
    let separation = 1e-6 * min_perron;
    let pairwise_distinct = checks.iter().enumerate().all(|(i, a)| {
        checks[i + 1..].iter().all(|b| {
            a.vector
                .iter()
                .zip(&b.vector)
                .any(|(u, v)| (u - v).norm() > separation)
        })
    });
    Ok(LiftOutcome {
        checks,
        threshold,
        max_residual,
        pairwise_distinct,
    })
}

fn in_kernel(g: &UniformHypergraph, t: &[u64]) -> bool {
    let m = g.uniformity() as u64;
    g.edges()
        .iter()
        .all(|e| e.iter().map(|&v| t[v - 1] % m).sum::<u64>() % m == 0)
}

fn state_space(m: usize, dims: usize, cap: usize, what: &'static str) -> Result<usize> {
    let size = BigUint::from(m).pow(dims as u32);
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { what, size, cap });
    }
    Ok(size.try_into().expect("bounded by cap"))
}

/// Incremental edge-sum tracker over an odometer walk of `Z_m^{free}`,
/// where `free` lists the vertices that vary (0-based).
struct Walker<'a> {
    m: u64,
    free: &'a [usize],
    incident: &'a [Vec<usize>],
    digits: Vec<u64>,
    sums: Vec<u64>,
    hits: usize,
    target: u64,
}

impl<'a> Walker<'a> {
    fn new(g: &UniformHypergraph, free: &'a [usize], incident: &'a [Vec<usize>], target: u64, start: usize) -> Self {
        let m = g.uniformity() as u64;
        let mut digits = vec![0u64; free.len()];
        let mut rest = start;
        for d in digits.iter_mut() {
            *d = (rest % m as usize) as u64;
            rest /= m as usize;
        }
        let mut values = vec![0u64; g.vertex_count()];
        for (&v, &d) in free.iter().zip(&digits) {
            values[v] = d;
        }
        let sums: Vec<u64> = g
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| values[v - 1]).sum::<u64>() % m)
            .collect();
        let hits = sums.iter().filter(|&&s| s == target).count();
        Walker {
            m,
            free,
            incident,
            digits,
            sums,
            hits,
            target,
        }
    }

    #[inline]
    fn all_hit(&self) -> bool {
        self.hits == self.sums.len()
    }

    /// Advance to the next state (digit 0 is least significant).
    #[inline]
    fn step(&mut self) {
        for pos in 0..self.digits.len() {
            self.digits[pos] += 1;
            let wrapped = self.digits[pos] == self.m;
            if wrapped {
                self.digits[pos] = 0;
            }
            for &e in &self.incident[self.free[pos]] {
                let s = &mut self.sums[e];
                let before = *s == self.target;
                *s = (*s + 1) % self.m;
                let after = *s == self.target;
                match (before, after) {
                    (true, false) => self.hits -= 1,
                    (false, true) => self.hits += 1,
                    _ => {}
                }
            }
            if !wrapped {
                return;
            }
        }
    }
}

fn incidence_lists(g: &UniformHypergraph) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (ei, e) in g.edges().iter().enumerate() {
        for &v in e {
            incident[v - 1].push(ei);
        }
    }
    incident
}

fn ranges(total: usize, jobs: usize) -> Vec<(usize, usize)> {
    let jobs = jobs.max(1).min(total.max(1));
    let chunk = total.div_ceil(jobs);
    (0..jobs)
        .map(|j| (j * chunk, ((j + 1) * chunk).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Exhaustive count of `x ∈ Z_m^n`, `x_1 = 0`, with `In(G) x ≡ 0`.
pub fn brute_stabilizing(g: &UniformHypergraph, cap: usize) -> Result<u64> {
    brute_stabilizing_jobs(g, cap, 1)
}

/// [`brute_stabilizing`] split into `jobs` contiguous ranges run on scoped
/// threads; the result does not depend on `jobs`.
pub fn brute_stabilizing_jobs(g: &UniformHypergraph, cap: usize, jobs: usize) -> Result<u64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Trivial);
    }
    let total = state_space(g.uniformity(), n - 1, cap, "stabilizing brute force")?;
    let free: Vec<usize> = (1..n).collect();
    let incident = incidence_lists(g);
    let count_range = |(start, end): (usize, usize)| -> u64 {
        let mut w = Walker::new(g, &free, &incident, 0, start);
        let mut count = 0u64;
        for _ in start..end {
            count += w.all_hit() as u64;
            w.step();
        }
        count
    };
    let parts = ranges(total, jobs);
    if parts.len() <= 1 {
        return Ok(parts.into_iter().map(count_range).sum());
    }
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> = parts.iter().map(|&r| scope.spawn(move || count_range(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    }))
}

/// Largest `ℓ | m` admitting an `(m, ℓ)`-coloring, by exhaustive scan over
/// all `m^n` vertex maps.
pub fn brute_cyclic(g: &UniformHypergraph, cap: usize) -> Result<u64> {
    brute_cyclic_jobs(g, cap, 1)
}

pub fn brute_cyclic_jobs(g: &UniformHypergraph, cap: usize, jobs: usize) -> Result<u64> {
    let n = g.vertex_count();
    let m = g.uniformity() as u64;
    let total = state_space(g.uniformity(), n, cap, "cyclic brute force")?;
    let free: Vec<usize> = (0..n).collect();
    let incident = incidence_lists(g);
    let modulus = g.modulus();
    for &ell in modulus.divisors().iter().rev() {
        let target = (m / ell) % m;
        let found = AtomicBool::new(false);
        let scan = |(start, end): (usize, usize)| {
            let mut w = Walker::new(g, &free, &incident, target, start);
            for i in start..end {
                if w.all_hit() {
                    found.store(true, Ordering::Relaxed);
                    return;
                }
                if (i - start) % 4096 == 0 && found.load(Ordering::Relaxed) {
                    return;
                }
                w.step();
            }
        };
        let parts = ranges(total, jobs);
        if parts.len() <= 1 {
            parts.into_iter().for_each(scan);
        } else {
            std::thread::scope(|scope| {
                for &r in &parts {
                    let scan = &scan;
                    scope.spawn(move || scan(r));
                }
            });
        }
        if found.load(Ordering::Relaxed) {
            return Ok(ell);
        }
    }
    unreachable!("ell = 1 is satisfied by the zero map")
}
