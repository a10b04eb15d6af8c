//! Lee homology over `Q` and the Rasmussen invariant.
//!
//! A generator `s` sits at filtration level `g(s) = j(s) + n+ - 2n-`; a
//! chain sits at the minimum level of its summands. `F^k`, spanned by the
//! generators with `g >= k`, is a subcomplex.
//!
//! For a knot all Lee homology lives in normalised degree 0. The image of
//! `H(F^k) -> H` there has dimension
//! `|F^k C^i| - rank(d^i on F^k) - rank(d^(i-1)) + rank(rows of d^(i-1) below k)`,
//! where `i = n-`; `s_max` is the largest `k` with a nonzero image and
//! `s_min` the largest `k` with a surjective one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{build_complex, BigradedComplex, GradingShift};
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::matrix::{kernel_basis, rank, ColumnReducer, SparseMatrix, SparseVec};
use crate::Rational;

/// Level of the zero chain.
pub const INFINITE_LEVEL: i32 = i32::MAX;

/// Lee homology with a basis of representative cycles.
#[derive(Clone, Debug)]
pub struct LeeHomology {
    /// Dimension per normalised homological degree.
    pub dims: BTreeMap<i32, usize>,
    /// Representatives per normalised degree, over that degree's generators.
    pub representatives: BTreeMap<i32, Vec<SparseVec<Rational>>>,
}

impl LeeHomology {
    pub fn dimension(&self) -> usize {
        self.dims.values().sum()
    }
}

/// A homology class with the level it is born at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredClass {
    pub degree: i32,
    pub filtration_level: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RasmussenResult {
    pub lee_dimension: usize,
    pub s_min: i32,
    pub s_max: i32,
    pub s: i32,
    /// `|s| / 2`, a lower bound for the slice genus.
    pub slice_genus_lower_bound: i32,
}

impl RasmussenResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain struct")
    }
}

pub fn lee_complex(d: &KnotDiagram, cap: usize) -> Result<BigradedComplex<Rational>> {
    let cx = build_complex::<i64>(d, FrobeniusAlgebra::Lee, cap)?;
    cx.check_d_squared()?;
    Ok(cx.map(|&v| Rational::from_integer(v.into())))
}

pub fn lee_homology(d: &KnotDiagram, cap: usize) -> Result<LeeHomology> {
    let cx = lee_complex(d, cap)?;
    let shift = cx.shift();
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for i in 0..cx.len() {
        let z = kernel_basis(cx.differential(i));
        let mut image = ColumnReducer::new();
        if i > 0 {
            let prev = cx.differential(i - 1);
            for c in 0..prev.cols() {
                image.insert(prev.column(c).to_vec());
            }
        }
        let reps: Vec<SparseVec<Rational>> = z.into_iter().filter(|v| image.insert(v.clone())).collect();
        if !reps.is_empty() {
            let ni = i as i32 + shift.homological;
            dims.insert(ni, reps.len());
            representatives.insert(ni, reps);
        }
    }
    Ok(LeeHomology { dims, representatives })
}

/// `g(v)`: minimum over the summands of `v` (generators of raw degree `i`)
/// of `j + n+ - 2n-`; [`INFINITE_LEVEL`] for `v = 0`.
pub fn filtration_level<R: crate::ring::Ring>(cx: &BigradedComplex<R>, i: usize, v: &[(usize, R)]) -> i32 {
    let shift = cx.shift();
    v.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|&(k, _)| cx.generators(i)[k].j() + shift.quantum)
        .min()
        .unwrap_or(INFINITE_LEVEL)
}

/// Level profile of degree `i`: `(k, dim image of H(F^k) -> H)` for every
/// generator level `k`, descending.
fn image_profile(cx: &BigradedComplex<Rational>, i: usize) -> (usize, Vec<(i32, usize)>) {
    let shift: GradingShift = cx.shift();
    let gens = cx.generators(i);
    let level = |k: usize| gens[k].j() + shift.quantum;
    let d_out = cx.differential(i);
    let empty = SparseMatrix::zeros(gens.len(), 0);
    let d_in = if i > 0 { cx.differential(i - 1) } else { &empty };
    let rank_in = rank(d_in);
    let dim_h = gens.len() - rank(d_out) - rank_in;
    let mut levels: Vec<i32> = (0..gens.len()).map(level).collect();
    levels.sort_unstable();
    levels.dedup();
    let all_rows: Vec<usize> = (0..d_out.rows()).collect();
    let all_cols: Vec<usize> = (0..d_in.cols()).collect();
    let mut profile = vec![];
    for &k in levels.iter().rev() {
        let above: Vec<usize> = (0..gens.len()).filter(|&s| level(s) >= k).collect();
        let below: Vec<usize> = (0..gens.len()).filter(|&s| level(s) < k).collect();
        let r_f = rank(&d_out.select(&all_rows, &above));
        let r_low = rank(&d_in.select(&below, &all_cols));
        let r = above.len() + r_low - r_f - rank_in;
        profile.push((k, r));
    }
    (dim_h, profile)
}

/// Generators of the filtration on degree-`i` homology: each basis class of
/// an adapted basis with the level it is born at.
pub fn filtered_classes(d: &KnotDiagram, cap: usize) -> Result<Vec<FilteredClass>> {
    let cx = lee_complex(d, cap)?;
    let mut out = vec![];
    for i in 0..cx.len() {
        let (_, profile) = image_profile(&cx, i);
        let mut prev = 0;
        for (k, r) in profile {
            for _ in prev..r {
                out.push(FilteredClass { degree: i as i32 + cx.shift().homological, filtration_level: k });
            }
            prev = r;
        }
    }
    Ok(out)
}

pub fn rasmussen_s(d: &KnotDiagram, cap: usize) -> Result<RasmussenResult> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot { components: d.component_count() });
    }
    let cx = lee_complex(d, cap)?;
    let i = d.n_minus();
    let (dim_h, profile) = image_profile(&cx, i);
    let lee_dimension = lee_homology(d, cap)?.dimension();
    let s_max = profile.iter().find(|&&(_, r)| r >= 1).map(|&(k, _)| k);
    let s_min = profile.iter().find(|&&(_, r)| r == dim_h).map(|&(k, _)| k);
    let (Some(s_min), Some(s_max)) = (s_min, s_max) else {
        return Err(Error::InvalidInput("Lee homology vanishes in degree 0".into()));
    };
    debug_assert!((s_min + s_max) % 2 == 0);
    let s = (s_min + s_max) / 2;
    Ok(RasmussenResult { lee_dimension, s_min, s_max, s, slice_genus_lower_bound: s.abs() / 2 })
}
