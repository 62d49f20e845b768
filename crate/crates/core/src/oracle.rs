//! Numeric oracle: sample weighted realizations of a structured network and
//! test classical controllability.
//!
//! Sampling can only ever provide evidence for the necessary direction (an
//! SSC pattern must give controllable realizations). It cannot certify that a
//! pattern is not SSC.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::StructuredNetwork;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("sign violation: {0}")]
    SignViolation(String),
    #[error("missing weight for {0}")]
    MissingWeight(String),
    #[error("weight given for {0}, which is not part of the network")]
    ExtraWeight(String),
}

/// Sampling ranges for the weights of a realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRanges {
    pub coupling: (f64, f64),
    pub self_loop: (f64, f64),
    pub gain: (f64, f64),
}

impl Default for WeightRanges {
    fn default() -> Self {
        WeightRanges {
            coupling: (0.1, 10.0),
            self_loop: (-10.0, -0.1),
            gain: (0.5, 2.0),
        }
    }
}

/// Concrete weights, keyed by document labels.
///
/// Couplings are keyed by `(min label, max label)`; gains by input label.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedRealization {
    pub coupling: BTreeMap<(u32, u32), f64>,
    pub self_loop: BTreeMap<u32, f64>,
    pub gain: BTreeMap<u32, f64>,
}

impl WeightedRealization {
    /// Every coupling, self-loop and gain set to the same value.
    pub fn uniform(net: &StructuredNetwork, coupling: f64, self_loop: f64, gain: f64) -> Self {
        let mut w = WeightedRealization::default();
        for &(i, j) in net.edges() {
            w.coupling.insert((net.label(i), net.label(j)), coupling);
        }
        for &l in net.labels() {
            w.self_loop.insert(l, self_loop);
        }
        for a in net.inputs() {
            w.gain.insert(a.input, gain);
        }
        w
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedSystem {
    /// Modified Laplacian `L - S` with `L = D - A`.
    pub l_tilde: DMatrix<f64>,
    /// One column per input, in input-label order.
    pub b: DMatrix<f64>,
}

impl RealizedSystem {
    pub fn n(&self) -> usize {
        self.l_tilde.nrows()
    }
}

/// Assemble the modified Laplacian and input matrix, validating coverage and signs.
pub fn realize(
    net: &StructuredNetwork,
    weights: &WeightedRealization,
) -> Result<RealizedSystem, OracleError> {
    for &(i, j) in net.edges() {
        let key = (net.label(i), net.label(j));
        match weights.coupling.get(&key) {
            None => {
                return Err(OracleError::MissingWeight(format!(
                    "edge {}-{}",
                    key.0, key.1
                )))
            }
            Some(&w) if !(w > 0.0 && w.is_finite()) => {
                return Err(OracleError::SignViolation(format!(
                    "coupling {}-{} = {w} must be positive",
                    key.0, key.1
                )))
            }
            _ => {}
        }
    }
    for &(a, b) in weights.coupling.keys() {
        let ok = matches!((net.index_of(a), net.index_of(b)), (Some(i), Some(j)) if a < b && net.has_edge(i, j));
        if !ok {
            return Err(OracleError::ExtraWeight(format!("edge {a}-{b}")));
        }
    }
    for &l in net.labels() {
        match weights.self_loop.get(&l) {
            None => return Err(OracleError::MissingWeight(format!("self-loop {l}"))),
            Some(&w) if !(w < 0.0 && w.is_finite()) => {
                return Err(OracleError::SignViolation(format!(
                    "self-loop {l} = {w} must be negative"
                )))
            }
            _ => {}
        }
    }
    if let Some(&l) = weights
        .self_loop
        .keys()
        .find(|&&l| net.index_of(l).is_none())
    {
        return Err(OracleError::ExtraWeight(format!("self-loop {l}")));
    }
    for a in net.inputs() {
        match weights.gain.get(&a.input) {
            None => return Err(OracleError::MissingWeight(format!("gain u{}", a.input))),
            Some(&g) if g == 0.0 || !g.is_finite() => {
                return Err(OracleError::SignViolation(format!(
                    "gain u{} must be nonzero",
                    a.input
                )))
            }
            _ => {}
        }
    }
    if let Some(&u) = weights
        .gain
        .keys()
        .find(|&&u| !net.inputs().iter().any(|a| a.input == u))
    {
        return Err(OracleError::ExtraWeight(format!("gain u{u}")));
    }
    Ok(realize_unchecked(net, weights))
}

/// Assemble without any validation. Missing weights count as zero.
pub fn realize_unchecked(net: &StructuredNetwork, weights: &WeightedRealization) -> RealizedSystem {
    let n = net.n();
    let mut l = DMatrix::zeros(n, n);
    for &(i, j) in net.edges() {
        let w = weights
            .coupling
            .get(&(net.label(i), net.label(j)))
            .copied()
            .unwrap_or(0.0);
        l[(i, j)] -= w;
        l[(j, i)] -= w;
        l[(i, i)] += w;
        l[(j, j)] += w;
    }
    for i in 0..n {
        l[(i, i)] -= weights.self_loop.get(&net.label(i)).copied().unwrap_or(0.0);
    }
    let inputs = net.inputs();
    let mut b = DMatrix::zeros(n, inputs.len());
    for (col, a) in inputs.iter().enumerate() {
        b[(a.target, col)] = weights.gain.get(&a.input).copied().unwrap_or(0.0);
    }
    RealizedSystem { l_tilde: l, b }
}

fn rank_tolerance(n: usize, scale: f64) -> f64 {
    n.max(1) as f64 * f64::EPSILON * scale
}

fn spectral_norm_sym(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Whether the modified Laplacian is positive definite.
pub fn check_full_rank(sys: &RealizedSystem) -> bool {
    let n = sys.n();
    if n == 0 {
        return true;
    }
    let eig = SymmetricEigen::new(sys.l_tilde.clone());
    let max = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    min > rank_tolerance(n, max)
}

/// Numerical rank of `[B, L B, L^2 B, ...]`, built by block Arnoldi with
/// re-orthogonalised modified Gram-Schmidt.
pub fn krylov_rank(sys: &RealizedSystem) -> usize {
    let n = sys.n();
    let l_norm = spectral_norm_sym(&sys.l_tilde);
    let b_norm = if sys.b.ncols() == 0 {
        0.0
    } else {
        sys.b.clone().svd(false, false).singular_values.max()
    };
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);

    let admit = |v: DVector<f64>, scale: f64, basis: &mut Vec<DVector<f64>>| -> Option<usize> {
        if scale == 0.0 || basis.len() == n {
            return None;
        }
        let mut v = v;
        for _ in 0..2 {
            for q in basis.iter() {
                let c = q.dot(&v);
                v.axpy(-c, q, 1.0);
            }
        }
        let norm = v.norm();
        if norm <= rank_tolerance(n, scale) {
            return None;
        }
        basis.push(v / norm);
        Some(basis.len() - 1)
    };

    let mut fresh: Vec<usize> = (0..sys.b.ncols())
        .filter_map(|c| admit(sys.b.column(c).into_owned(), b_norm, &mut basis))
        .collect();
    while !fresh.is_empty() && basis.len() < n {
        let products: Vec<DVector<f64>> = fresh.iter().map(|&k| &sys.l_tilde * &basis[k]).collect();
        fresh = products
            .into_iter()
            .filter_map(|v| admit(v, l_norm, &mut basis))
            .collect();
    }
    basis.len()
}

/// Dimension of the controllable subspace from the eigen-decomposition of the
/// symmetric `L`: the sum over eigenvalue clusters of `rank(V_λ^T B)`.
pub fn eigenspace_rank(sys: &RealizedSystem) -> usize {
    let n = sys.n();
    if n == 0 || sys.b.ncols() == 0 {
        return 0;
    }
    let eig = SymmetricEigen::new(sys.l_tilde.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lambda_max = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    // eigenvalues closer than this are treated as one eigenspace
    let cluster_gap = 1e3 * rank_tolerance(n, lambda_max);
    let b_norm = sys.b.clone().svd(false, false).singular_values.max();
    let tol = rank_tolerance(n, b_norm);

    let mut total = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= cluster_gap
        {
            end += 1;
        }
        let cols: Vec<DVector<f64>> = order[start..end]
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect();
        let v = DMatrix::from_columns(&cols);
        let proj = sys.b.transpose() * v;
        total += proj
            .svd(false, false)
            .singular_values
            .iter()
            .filter(|&&s| s > tol)
            .count();
        start = end;
    }
    total
}

/// Controllability rank using the eigen-space test, which is the reference
/// method for symmetric systems. See also [`krylov_rank`].
pub fn controllability_rank(sys: &RealizedSystem) -> usize {
    eigenspace_rank(sys)
}

/// Draw one realization from `ranges`.
pub fn sample_weights<R: Rng>(
    net: &StructuredNetwork,
    ranges: &WeightRanges,
    rng: &mut R,
) -> WeightedRealization {
    let mut w = WeightedRealization::default();
    for &(i, j) in net.edges() {
        w.coupling.insert(
            (net.label(i), net.label(j)),
            rng.gen_range(ranges.coupling.0..=ranges.coupling.1),
        );
    }
    for &l in net.labels() {
        w.self_loop
            .insert(l, rng.gen_range(ranges.self_loop.0..=ranges.self_loop.1));
    }
    for a in net.inputs() {
        w.gain
            .insert(a.input, rng.gen_range(ranges.gain.0..=ranges.gain.1));
    }
    w
}

/// Per-trial generator: the seed picks the key, the trial index picks the stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSummary {
    pub trials: usize,
    /// Realizations with full rank under the eigen-space test.
    pub controllable: usize,
    /// Realizations with full rank under the Krylov test.
    pub krylov_controllable: usize,
    /// Trials where the two rank computations differ.
    pub method_disagreements: usize,
    /// Trials whose modified Laplacian was not positive definite.
    pub not_positive_definite: usize,
}

impl SampleSummary {
    pub fn fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.controllable as f64 / self.trials as f64
        }
    }
}

/// Sample `trials` realizations and count how many are controllable.
/// Deterministic for a fixed seed regardless of thread count.
pub fn sample_verdict(
    net: &StructuredNetwork,
    trials: usize,
    seed: u64,
    ranges: &WeightRanges,
) -> SampleSummary {
    let n = net.n();
    let per_trial: Vec<(bool, bool, bool)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let w = sample_weights(net, ranges, &mut rng);
            let sys = realize_unchecked(net, &w);
            (
                eigenspace_rank(&sys) == n,
                krylov_rank(&sys) == n,
                check_full_rank(&sys),
            )
        })
        .collect();
    SampleSummary {
        trials,
        controllable: per_trial.iter().filter(|r| r.0).count(),
        krylov_controllable: per_trial.iter().filter(|r| r.1).count(),
        method_disagreements: per_trial.iter().filter(|r| r.0 != r.1).count(),
        not_positive_definite: per_trial.iter().filter(|r| !r.2).count(),
    }
}
