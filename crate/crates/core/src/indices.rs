//! Stabilizing and cyclic indices, coloring witnesses, and the closed-form
//! predictors for coalescences, block decompositions and Cartesian products.
//!
//! For a connected `m`-uniform hypergraph with `P · In(G) · Q = diag(d_1..d_r, 0..)`
//! over `Z_m`, the stabilizing index is `m^{n-1-r} · Π d_i` and the
//! eigenvariety of the spectral radius is `⊕_{d_i ≠ 1} Z_{d_i} ⊕ (n-1-r) Z_m`.
//! The cyclic index is the largest `ℓ | m` for which `In(G) x = (m/ℓ) 1` is
//! solvable over `Z_m`.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::modring::{self, power_times_product, Modulus, ModuleDecomposition, SmithDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Snf,
    PredictedCoalescence,
    PredictedCartesian,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Snf => "snf",
            Method::PredictedCoalescence => "predicted_coalescence",
            Method::PredictedCartesian => "predicted_cartesian",
            Method::BruteForce => "brute_force",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub invariant_divisors: Vec<u64>,
    pub free_rank: usize,
    pub stabilizing_index: BigUint,
    pub cyclic_index: u64,
    pub decomposition: ModuleDecomposition,
    pub method: Method,
}

impl IndexReport {
    pub fn rank(&self) -> usize {
        self.invariant_divisors.len()
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.m as u64).expect("uniformity is at least 2")
    }

    /// `m^{free_rank} · Π d_i`, recomputed from the divisor data.
    pub fn cardinality_from_divisors(&self) -> BigUint {
        power_times_product(self.modulus(), self.free_rank, self.invariant_divisors.iter().copied())
    }

    /// Same indices and shape regardless of how they were obtained.
    pub fn agrees_with(&self, other: &IndexReport) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.k == other.k
            && self.invariant_divisors == other.invariant_divisors
            && self.free_rank == other.free_rank
            && self.stabilizing_index == other.stabilizing_index
            && self.cyclic_index == other.cyclic_index
            && self.decomposition == other.decomposition
    }

    fn from_divisors(m: usize, n: usize, k: usize, divisors: Vec<u64>, cyclic_index: u64, method: Method) -> Self {
        let modulus = Modulus::new(m as u64).expect("uniformity is at least 2");
        let free_rank = n - 1 - divisors.len();
        let stabilizing_index = power_times_product(modulus, free_rank, divisors.iter().copied());
        let decomposition = ModuleDecomposition::from_divisors(&divisors, free_rank);
        IndexReport {
            m,
            n,
            k,
            invariant_divisors: divisors,
            free_rank,
            stabilizing_index,
            cyclic_index,
            decomposition,
            method,
        }
    }
}

/// A vertex map `phi` into `Z_m` with every edge summing to `m / ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringWitness {
    pub ell: u64,
    pub phi: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicIndex {
    pub value: u64,
    pub witness: ColoringWitness,
}

fn checked_snf(g: &UniformHypergraph) -> Result<SmithDecomposition> {
    let b = g.incidence_matrix();
    let decomposition = modring::snf(&b);
    if cfg!(debug_assertions) {
        decomposition.verify(&b)?;
    }
    Ok(decomposition)
}

/// Full index report by Smith normal form: `s(G)`, `c(G)` and the module shape.
pub fn stabilizing_index(g: &UniformHypergraph) -> Result<IndexReport> {
    g.require_indexable()?;
    let decomposition = checked_snf(g)?;
    let cyclic = cyclic_from_snf(g, &decomposition)?;
    Ok(IndexReport::from_divisors(
        g.uniformity(),
        g.vertex_count(),
        g.edge_count(),
        decomposition.divisors,
        cyclic.value,
        Method::Snf,
    ))
}

/// The largest `ℓ | m` with an `(m, ℓ)`-coloring, together with one.
pub fn cyclic_index(g: &UniformHypergraph) -> Result<CyclicIndex> {
    g.require_indexable()?;
    cyclic_from_snf(g, &checked_snf(g)?)
}

fn cyclic_from_snf(g: &UniformHypergraph, decomposition: &SmithDecomposition) -> Result<CyclicIndex> {
    let modulus = g.modulus();
    for &ell in modulus.divisors().iter().rev() {
        if let Some(phi) = coloring_for(g, decomposition, ell)? {
            return Ok(CyclicIndex {
                value: ell,
                witness: ColoringWitness { ell, phi },
            });
        }
    }
    unreachable!("ell = 1 has the zero coloring")
}

fn coloring_for(g: &UniformHypergraph, decomposition: &SmithDecomposition, ell: u64) -> Result<Option<Vec<u64>>> {
    let m = g.modulus().get();
    let rhs = vec![m / ell; g.edge_count()];
    modring::solve_linear(decomposition, &g.incidence_matrix(), &rhs)
}

/// Scan divisors of `m` in the given order and return the largest one that
/// admits a coloring. Every divisor is tested, so the answer does not
/// depend on the order.
pub fn cyclic_index_scan(g: &UniformHypergraph, order: &[u64]) -> Result<u64> {
    g.require_indexable()?;
    let decomposition = checked_snf(g)?;
    let m = g.modulus().get();
    let mut best = None;
    for &ell in order {
        if ell == 0 || !m.is_multiple_of(ell) {
            return Err(Error::InvalidColoring(format!("{ell} does not divide {m}")));
        }
        if coloring_for(g, &decomposition, ell)?.is_some() {
            best = best.max(Some(ell));
        }
    }
    best.ok_or_else(|| Error::InvalidColoring("no divisor in the scan order admits a coloring".into()))
}

pub fn check_coloring(g: &UniformHypergraph, w: &ColoringWitness) -> Result<bool> {
    let m = g.modulus().get();
    if w.phi.len() != g.vertex_count() {
        return Err(Error::InvalidColoring(format!(
            "coloring has length {}, hypergraph has {} vertices",
            w.phi.len(),
            g.vertex_count()
        )));
    }
    if w.ell == 0 || !m.is_multiple_of(w.ell) {
        return Err(Error::InvalidColoring(format!("{} does not divide {m}", w.ell)));
    }
    let target = (m / w.ell) % m;
    Ok(g
        .edges()
        .iter()
        .all(|e| e.iter().map(|&v| w.phi[v - 1] % m).sum::<u64>() % m == target))
}

fn same_m(a: &IndexReport, b: &IndexReport) -> Result<()> {
    if a.m != b.m {
        return Err(Error::UniformityMismatch(a.m, b.m));
    }
    Ok(())
}

/// `s = s1 · s2`, `c = gcd(c1, c2)`; the divisor lists are merged and
/// re-normalized into a chain.
pub fn predict_coalescence(r1: &IndexReport, r2: &IndexReport) -> Result<IndexReport> {
    same_m(r1, r2)?;
    let modulus = r1.modulus();
    let mut merged = r1.invariant_divisors.clone();
    merged.extend_from_slice(&r2.invariant_divisors);
    let divisors = modring::normalize_divisor_chain(&merged, modulus);
    let mut report = IndexReport::from_divisors(
        r1.m,
        r1.n + r2.n - 1,
        r1.k + r2.k,
        divisors,
        r1.cyclic_index.gcd(&r2.cyclic_index),
        Method::PredictedCoalescence,
    );
    let product = &r1.stabilizing_index * &r2.stabilizing_index;
    debug_assert_eq!(report.stabilizing_index, product);
    report.stabilizing_index = product;
    Ok(report)
}

/// Product of block stabilizing indices and gcd of block cyclic indices.
pub fn predict_blocks(reports: &[IndexReport]) -> Result<IndexReport> {
    if reports.len() < 2 {
        return Err(Error::TooFewInputs { needed: 2, got: reports.len() });
    }
    let (first, rest) = reports.split_first().expect("non-empty");
    rest.iter().try_fold(first.clone(), |acc, r| predict_coalescence(&acc, r))
}

/// Closed form for `s(G1 □ G2)`:
/// `m^{(n1-r1)(n2-r2)-1} · Π_{i,j} gcd(d_i, d̄_j) · Π_i d_i^{n2-r2} · Π_j d̄_j^{n1-r1}`.
pub fn cartesian_stabilizing_formula(r1: &IndexReport, r2: &IndexReport) -> Result<BigUint> {
    same_m(r1, r2)?;
    let modulus = r1.modulus();
    let f1 = r1.n - r1.rank();
    let f2 = r2.n - r2.rank();
    let mut s = BigUint::from(modulus.get()).pow((f1 * f2 - 1) as u32);
    for &d in &r1.invariant_divisors {
        for &e in &r2.invariant_divisors {
            s *= d.gcd(&e);
        }
    }
    for &d in &r1.invariant_divisors {
        s *= BigUint::from(d).pow(f2 as u32);
    }
    for &e in &r2.invariant_divisors {
        s *= BigUint::from(e).pow(f1 as u32);
    }
    Ok(s)
}

/// Report for `G1 □ G2` from the factor reports. The product's divisors are
/// `gcd(d_i, d̄_j)` for every pair, each `d_i` repeated `n2 - r2` times and
/// each `d̄_j` repeated `n1 - r1` times, normalized into a chain.
pub fn predict_cartesian(r1: &IndexReport, r2: &IndexReport) -> Result<IndexReport> {
    same_m(r1, r2)?;
    let modulus = r1.modulus();
    let f1 = r1.n - r1.rank();
    let f2 = r2.n - r2.rank();
    let mut raw = Vec::new();
    for &d in &r1.invariant_divisors {
        raw.extend(r2.invariant_divisors.iter().map(|&e| d.gcd(&e)));
        raw.extend(std::iter::repeat_n(d, f2));
    }
    for &e in &r2.invariant_divisors {
        raw.extend(std::iter::repeat_n(e, f1));
    }
    let divisors = modring::normalize_divisor_chain(&raw, modulus);
    let mut report = IndexReport::from_divisors(
        r1.m,
        r1.n * r2.n,
        r1.n * r2.k + r1.k * r2.n,
        divisors,
        r1.cyclic_index.gcd(&r2.cyclic_index),
        Method::PredictedCartesian,
    );
    let closed_form = cartesian_stabilizing_formula(r1, r2)?;
    debug_assert_eq!(report.stabilizing_index, closed_form);
    report.stabilizing_index = closed_form;
    Ok(report)
}

/// `gcd` of the factor cyclic indices.
pub fn predict_cartesian_n(reports: &[IndexReport]) -> Result<u64> {
    let (first, rest) = reports
        .split_first()
        .ok_or(Error::TooFewInputs { needed: 1, got: 0 })?;
    for r in rest {
        same_m(first, r)?;
    }
    Ok(rest.iter().fold(first.cyclic_index, |acc, r| acc.gcd(&r.cyclic_index)))
}

/// Exponent vectors `t` (with `t_1 = 0`, `In(G) t ≡ 0`) parametrizing the
/// eigenvectors of the spectral radius.
pub fn eigenvector_exponents(g: &UniformHypergraph, cap: usize) -> Result<Vec<Vec<u64>>> {
    g.require_indexable()?;
    modring::enumerate_kernel(&g.incidence_matrix(), cap)
}
