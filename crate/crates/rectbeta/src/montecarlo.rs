//! Monte Carlo sampling of C = U1 A V1 + U2 B V2 with Haar U_i, V_i, for the two
//! matrix-backed cases theta = 1/2 (real orthogonal) and theta = 1 (complex unitary).

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::jack::{jack, SymPoly};
use crate::partitions::Partition;

/// Maximum number of Jacobi sweeps before a sample is rejected.
pub const SWEEP_BUDGET: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaCase {
    Half,
    One,
}

impl ThetaCase {
    pub fn theta(self) -> f64 {
        match self {
            ThetaCase::Half => 0.5,
            ThetaCase::One => 1.0,
        }
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// rows x cols matrix with `diag` on the main diagonal.
    pub fn rect_diag(diag: &[f64], rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// max |(Q* Q - I)_ij|.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.adjoint().mul(self);
        let mut err: f64 = 0.0;
        for i in 0..g.rows {
            for j in 0..g.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                err = err.max((g.get(i, j) - target).norm());
            }
        }
        err
    }
}

fn gaussian(case: ThetaCase, rng: &mut ChaCha8Rng) -> Complex64 {
    match case {
        ThetaCase::Half => Complex64::new(StandardNormal.sample(rng), 0.0),
        ThetaCase::One => {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
    }
}

/// Haar-distributed orthogonal (Half) or unitary (One) n x n matrix.
///
/// Gram-Schmidt on a Gaussian matrix yields the QR factor whose R has a
/// positive real diagonal, which is the phase-corrected Haar sample.
pub fn haar_factor(n: usize, case: ThetaCase, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut q = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(case, rng)).collect();
        // twice for stability
        for _ in 0..2 {
            for k in 0..j {
                let r: Complex64 = (0..n).map(|i| q.get(i, k).conj() * v[i]).sum();
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= r * q.get(i, k);
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for (i, vi) in v.iter().enumerate() {
            q.set(i, j, vi / norm);
        }
    }
    q
}

/// Squared singular values of an M x N matrix (M <= N), decreasing, by one-sided
/// Jacobi on the columns of its adjoint. `None` if the sweep budget runs out.
pub fn squared_singular_values(c: &CMatrix) -> Option<Vec<f64>> {
    let m = c.rows();
    let n = c.cols();
    // column j of C* is the conjugate of row j of C
    let mut w: Vec<Vec<Complex64>> = (0..m).map(|j| (0..n).map(|i| c.get(j, i).conj()).collect()).collect();
    let eps = 1e-15;
    let mut converged = m < 2;
    for _ in 0..SWEEP_BUDGET {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..m {
            for q in (p + 1)..m {
                let alpha: f64 = w[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|x| x.norm_sqr()).sum();
                let g: Complex64 = w[p].iter().zip(&w[q]).map(|(a, b)| a.conj() * b).sum();
                let gn = g.norm();
                if gn <= eps * (alpha * beta).sqrt() || gn == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = (g / gn).conj();
                for x in w[q].iter_mut() {
                    *x *= phase;
                }
                let zeta = (beta - alpha) / (2.0 * gn);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..n {
                    let a = w[p][i];
                    let b = w[q][i];
                    w[p][i] = a * cs - b * sn;
                    w[q][i] = a * sn + b * cs;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return None;
    }
    let mut out: Vec<f64> = w.iter().map(|col| col.iter().map(|x| x.norm_sqr()).sum()).collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Some(out)
}

/// A symmetric statistic of the squared singular values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// P_lambda(c^2; theta)
    Jack(Partition),
    /// p_k(c^2) = sum_i c_i^(2k)
    Power(usize),
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Jack(l) => write!(f, "P{l}"),
            Statistic::Power(k) => write!(f, "p{k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub m: usize,
    pub n: usize,
    pub theta_case: ThetaCase,
    /// Singular values (not squared).
    pub spectra_a: Vec<f64>,
    pub spectra_b: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl SampleConfig {
    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > self.n {
            return invalid(format!("need 1 <= M <= N, got M = {}, N = {}", self.m, self.n));
        }
        if self.samples == 0 {
            return invalid("samples must be at least 1");
        }
        if self.spectra_a.len() != self.m || self.spectra_b.len() != self.m {
            return invalid("spectra must have exactly M entries");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    pub statistic: Statistic,
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub rejected: usize,
}

impl MomentEstimate {
    /// (mean - exact) / stderr; zero-variance estimates give 0 on agreement and +-inf otherwise.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.mean - exact;
        if self.stderr > 0.0 {
            return diff / self.stderr;
        }
        if diff.abs() <= 1e-9 * exact.abs().max(1.0) {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

fn evaluators(stats: &[Statistic], m: usize, theta: f64) -> Result<Vec<SymPoly<f64>>> {
    stats
        .iter()
        .map(|s| match s {
            Statistic::Jack(l) if l.size() > 4 => invalid(format!("{l} has more than 4 boxes")),
            Statistic::Jack(l) => jack(l, &theta, m),
            Statistic::Power(k) => Ok(SymPoly::power_sum(*k, m)),
        })
        .collect()
}

/// Per-sample RNG: one ChaCha stream per sample index.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Estimates for C = U1 A V1 + U2 B V2 with arbitrary M x N matrices A and B.
pub fn sample_sum_moments_with(
    a: &CMatrix,
    b: &CMatrix,
    case: ThetaCase,
    samples: usize,
    seed: u64,
    stats: &[Statistic],
) -> Result<Vec<MomentEstimate>> {
    let (m, n) = (a.rows(), a.cols());
    if (b.rows(), b.cols()) != (m, n) || m == 0 || m > n {
        return invalid("A and B must both be M x N with 1 <= M <= N");
    }
    if samples == 0 {
        return invalid("samples must be at least 1");
    }
    let polys = evaluators(stats, m, case.theta())?;
    let values: Vec<Option<Vec<f64>>> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = sample_rng(seed, idx);
            let u1 = haar_factor(m, case, &mut rng);
            let v1 = haar_factor(n, case, &mut rng);
            let u2 = haar_factor(m, case, &mut rng);
            let v2 = haar_factor(n, case, &mut rng);
            let c = u1.mul(a).mul(&v1).add(&u2.mul(b).mul(&v2));
            let sv = squared_singular_values(&c)?;
            Some(polys.iter().map(|p| p.eval(&sv)).collect())
        })
        .collect();

    let rejected = values.iter().filter(|v| v.is_none()).count();
    let kept: Vec<&Vec<f64>> = values.iter().flatten().collect();
    let cnt = kept.len();
    let mut out = Vec::with_capacity(stats.len());
    for (s, stat) in stats.iter().enumerate() {
        let mean = kept.iter().map(|v| v[s]).sum::<f64>() / cnt as f64;
        let var = if cnt > 1 { kept.iter().map(|v| (v[s] - mean).powi(2)).sum::<f64>() / (cnt - 1) as f64 } else { 0.0 };
        out.push(MomentEstimate { statistic: stat.clone(), mean, stderr: (var / cnt as f64).sqrt(), n: cnt, rejected });
    }
    Ok(out)
}

pub fn sample_sum_moments(cfg: &SampleConfig, stats: &[Statistic]) -> Result<Vec<MomentEstimate>> {
    cfg.validate()?;
    let a = CMatrix::rect_diag(&cfg.spectra_a, cfg.m, cfg.n);
    let b = CMatrix::rect_diag(&cfg.spectra_b, cfg.m, cfg.n);
    sample_sum_moments_with(&a, &b, cfg.theta_case, cfg.samples, cfg.seed, stats)
}

/// z-score of the sampled statistic against an exact value.
pub fn verify_against_exact(cfg: &SampleConfig, stat: &Statistic, exact: f64) -> Result<(MomentEstimate, f64)> {
    let est = sample_sum_moments(cfg, std::slice::from_ref(stat))?.remove(0);
    let z = est.z_score(exact);
    Ok((est, z))
}

/// Exact value of a statistic from the Jack-moment formula, squared spectra given as rationals.
pub fn exact_statistic(
    stat: &Statistic,
    ra_sq: &[num_rational::BigRational],
    rb_sq: &[num_rational::BigRational],
    m: usize,
    n: usize,
    case: ThetaCase,
) -> Result<num_rational::BigRational> {
    use crate::rectconv::{BetaParams, ConvEngine};
    use crate::scalar::Scalar;
    let theta = match case {
        ThetaCase::Half => num_rational::BigRational::from_ratio(1, 2),
        ThetaCase::One => num_rational::BigRational::from_int(1),
    };
    let mut engine = ConvEngine::new(BetaParams::new(m, n, theta)?);
    match stat {
        Statistic::Jack(l) => engine.jack_moment(l, ra_sq, rb_sq),
        Statistic::Power(k) => engine.expectation(&SymPoly::power_sum(*k, m), ra_sq, rb_sq),
    }
}
