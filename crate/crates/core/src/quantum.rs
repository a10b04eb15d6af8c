//! The enhanced-state Hilbert space and the diagonal unitary
//! `U|s> = (-1)^(i(s)+n-) q^(j(s)+n+-2n-) |s>` whose trace is the Jones
//! polynomial at `q`, plus a classical simulation of the Hadamard test.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{build_complex, BigradedComplex};
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::homology::HomologyTable;
use crate::matrix::kernel_basis;

/// Modulus tolerance for points on the unit circle.
pub const UNIT_TOLERANCE: f64 = 1e-12;

fn check_unit(name: &str, z: Complex64) -> Result<()> {
    if (z.norm() - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnitModulus(format!("{name} = {z}")));
    }
    Ok(())
}

/// A unitary that is diagonal in the enhanced-state basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalUnitary {
    eigenvalues: Vec<Complex64>,
}

impl DiagonalUnitary {
    pub fn from_eigenvalues(eigenvalues: Vec<Complex64>) -> Result<Self> {
        for &z in &eigenvalues {
            check_unit("eigenvalue", z)?;
        }
        Ok(DiagonalUnitary { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn trace(&self) -> Complex64 {
        self.eigenvalues.iter().sum()
    }
}

fn eigenvalue(i: i32, j: i32, nm: i32, np: i32, q: Complex64) -> Complex64 {
    let sign = if (i + nm).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    q.powi(j + np - 2 * nm) * sign
}

/// `U_K` on the generators of `cx`, degree by degree.
pub fn unitary_on(cx: &BigradedComplex<i64>, d: &KnotDiagram, q: Complex64) -> Result<DiagonalUnitary> {
    check_unit("q", q)?;
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let eigenvalues = (0..cx.len())
        .flat_map(|i| cx.generators(i).iter().map(move |g| (i as i32, g.j())))
        .map(|(i, j)| eigenvalue(i, j, nm, np, q))
        .collect();
    Ok(DiagonalUnitary { eigenvalues })
}

pub fn build_unitary(d: &KnotDiagram, q: Complex64, cap: usize) -> Result<DiagonalUnitary> {
    check_unit("q", q)?;
    let cx = build_complex::<i64>(d, FrobeniusAlgebra::Khovanov, cap)?;
    unitary_on(&cx, d, q)
}

pub fn trace(u: &DiagonalUnitary) -> Complex64 {
    u.trace()
}

/// `max |(dU + Ud)_(r,c)|` over all differential blocks; `u` is indexed like
/// the generators of `cx`, degree by degree.
pub fn anticommutation_residual(cx: &BigradedComplex<i64>, u: &DiagonalUnitary) -> f64 {
    assert_eq!(u.dim(), cx.generator_count());
    let mut offset = 0;
    let mut worst: f64 = 0.0;
    for i in 0..cx.len() {
        let next = offset + cx.generators(i).len();
        for (r, c, &v) in cx.differential(i).triplets() {
            let entry = (u.eigenvalues[next + r] + u.eigenvalues[offset + c]) * v as f64;
            worst = worst.max(entry.norm());
        }
        offset = next;
    }
    worst
}

pub fn check_anticommutation(d: &KnotDiagram, q: Complex64, cap: usize) -> Result<f64> {
    let cx = build_complex::<i64>(d, FrobeniusAlgebra::Khovanov, cap)?;
    let u = unitary_on(&cx, d, q)?;
    Ok(anticommutation_residual(&cx, &u))
}

/// Largest `|d(U z)|` over a kernel basis `z` of each differential, with
/// the basis computed over `Q`.
pub fn kernel_preservation_residual(cx: &BigradedComplex<i64>, u: &DiagonalUnitary) -> f64 {
    let mut offset = 0;
    let mut worst: f64 = 0.0;
    for i in 0..cx.len() {
        let m = cx.differential(i);
        let q = m.map(|&v| num_rational::BigRational::from_integer(v.into()));
        for z in kernel_basis(&q) {
            let uz: Vec<(usize, Complex64)> = z
                .iter()
                .map(|(k, c)| {
                    let f = num_traits::ToPrimitive::to_f64(c).expect("finite");
                    (*k, u.eigenvalues[offset + k] * f)
                })
                .collect();
            let image = m.map(|&v| Complex64::new(v as f64, 0.0)).apply(&uz);
            for (_, v) in image {
                worst = worst.max(v.norm());
            }
        }
        offset += cx.generators(i).len();
    }
    worst
}

/// `Trace(U')= sum rank(i,j) t^i q^j` over a rational homology table.
pub fn homology_unitary(table: &HomologyTable, t: Complex64, q: Complex64) -> Result<Complex64> {
    check_unit("t", t)?;
    check_unit("q", q)?;
    Ok(table.entries().iter().map(|(&(i, j), e)| t.powi(i) * q.powi(j) * e.rank as f64).sum())
}

/// Estimate of `Trace(U) / dim` and its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HadamardEstimate {
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl HadamardEstimate {
    pub fn estimate(&self) -> Complex64 {
        Complex64::new(self.estimate_re, self.estimate_im)
    }
}

/// Each sample draws a basis state uniformly and runs the real and the
/// imaginary Hadamard test on it: outcome `+1` with probability
/// `(1 + Re<s|U|s>) / 2`, respectively `(1 + Im<s|U|s>) / 2`, else `-1`.
pub fn hadamard_estimate(u: &DiagonalUnitary, samples: usize, seed: u64) -> Result<HadamardEstimate> {
    if samples == 0 {
        return Err(Error::InvalidInput("the Hadamard test needs at least one sample".into()));
    }
    if u.dim() == 0 {
        return Err(Error::InvalidInput("empty Hilbert space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome = |rng: &mut ChaCha8Rng, x: f64| -> f64 {
        let p = ((1.0 + x) / 2.0).clamp(0.0, 1.0);
        if rng.gen_bool(p) {
            1.0
        } else {
            -1.0
        }
    };
    let (mut sum_re, mut sq_re, mut sum_im, mut sq_im) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let z = u.eigenvalues[rng.gen_range(0..u.dim())];
        let a = outcome(&mut rng, z.re);
        let b = outcome(&mut rng, z.im);
        sum_re += a;
        sq_re += a * a;
        sum_im += b;
        sq_im += b * b;
    }
    let n = samples as f64;
    let (m_re, m_im) = (sum_re / n, sum_im / n);
    let var = |sum_sq: f64, mean: f64| {
        if samples > 1 {
            ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        }
    };
    let stderr = ((var(sq_re, m_re) + var(sq_im, m_im)) / n).sqrt();
    Ok(HadamardEstimate { estimate_re: m_re, estimate_im: m_im, stderr, samples })
}

/// Report of the trace identity at one `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumReport {
    pub q_re: f64,
    pub q_im: f64,
    pub trace_re: f64,
    pub trace_im: f64,
    pub jones_at_q_re: f64,
    pub jones_at_q_im: f64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hadamard: Option<HadamardEstimate>,
}

pub fn quantum_report(
    d: &KnotDiagram,
    q: Complex64,
    samples: Option<usize>,
    seed: u64,
    cap: usize,
) -> Result<QuantumReport> {
    let cx = build_complex::<i64>(d, FrobeniusAlgebra::Khovanov, cap)?;
    let u = unitary_on(&cx, d, q)?;
    let tr = u.trace();
    let j = crate::bracket::jones(d, cap)?.eval(q);
    let hadamard = samples.map(|n| hadamard_estimate(&u, n, seed)).transpose()?;
    Ok(QuantumReport {
        q_re: q.re,
        q_im: q.im,
        trace_re: tr.re,
        trace_im: tr.im,
        jones_at_q_re: j.re,
        jones_at_q_im: j.im,
        residual: anticommutation_residual(&cx, &u),
        hadamard,
    })
}
