//! The bigraded chain complex of a diagram over a Frobenius algebra, and
//! the wedge-product variant `DR(K)`.
//!
//! Generators of homological degree `i` are the enhanced states with `i`
//! B-smoothings, in [`crate::resolution::enumerate_enhanced`] order. The
//! partial differential at an A-site `t` applies `m` to a merge and `Delta`
//! to a split, leaves every other loop label alone, and carries the sign
//! `(-1)^(number of B-sites with index below t)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::bracket::Poly;
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusAlgebra, FrobeniusAlgebraSpec};
use crate::matrix::SparseMatrix;
use crate::resolution::{check_cap, resolve, tier, transition_at, EnhancedState, ResolvedState, SiteTransition, TransitionKind};
use crate::ring::{sign_pow, Ring};

/// Identifier of the sign rule used by [`build_complex`].
pub const SIGN_CONVENTION: &str = "grassmann: (-1)^(#B-sites before the site)";

/// Default crossing cap for `DR(K)`, whose size is `2^c` times that of the
/// ordinary complex.
pub const DEFAULT_DR_CAP: usize = 8;

/// Shift from raw to normalised bigradings: `(i, j) -> (i + homological,
/// j + quantum)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradingShift {
    pub homological: i32,
    pub quantum: i32,
}

impl GradingShift {
    pub fn of(d: &KnotDiagram) -> Self {
        let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
        GradingShift { homological: -nm, quantum: np - 2 * nm }
    }

    pub fn apply(&self, (i, j): (i32, i32)) -> (i32, i32) {
        (i + self.homological, j + self.quantum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComplexKind {
    Khovanov,
    Lee,
    DeRham,
}

/// An enhanced state, with a set of wedge factors `dx_k` in `DR(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub state: EnhancedState,
    /// Bit `k` set means `dx_k` is present. Always 0 outside `DR(K)`.
    pub wedge: u64,
}

impl Generator {
    pub fn j(&self) -> i32 {
        self.state.j()
    }

    fn key(&self) -> (u64, u64, u64) {
        (self.state.state.resolution().bits(), self.state.labels, self.wedge)
    }
}

#[derive(Clone, Debug)]
pub struct BigradedComplex<R> {
    kind: ComplexKind,
    algebra: FrobeniusAlgebra,
    shift: GradingShift,
    generators: Vec<Vec<Generator>>,
    /// `differentials[i]: C^i -> C^(i+1)`; the last one has no rows.
    differentials: Vec<SparseMatrix<R>>,
}

impl<R: Ring> BigradedComplex<R> {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn algebra(&self) -> FrobeniusAlgebra {
        self.algebra
    }

    pub fn shift(&self) -> GradingShift {
        self.shift
    }

    /// Number of homological degrees, `0..len`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.iter().all(Vec::is_empty)
    }

    pub fn generators(&self, i: usize) -> &[Generator] {
        self.generators.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn differential(&self, i: usize) -> &SparseMatrix<R> {
        &self.differentials[i]
    }

    /// For building deliberately broken fixtures.
    pub fn differential_mut(&mut self, i: usize) -> &mut SparseMatrix<R> {
        &mut self.differentials[i]
    }

    pub fn generator_count(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// `dim C^(i,j)` in raw gradings.
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (i, gens) in self.generators.iter().enumerate() {
            for g in gens {
                *out.entry((i as i32, g.j())).or_insert(0) += 1;
            }
        }
        out
    }

    /// `sum (-1)^i q^j dim C^(i,j)`.
    pub fn euler_polynomial(&self) -> Poly {
        let mut p = Poly::zero_in('q');
        for ((i, j), n) in self.dims() {
            p.add_term(j, if i % 2 == 0 { n as i64 } else { -(n as i64) });
        }
        p
    }

    pub fn quantum_gradings(&self) -> BTreeSet<i32> {
        self.generators.iter().flatten().map(Generator::j).collect()
    }

    /// Indices in degree `i` of the generators with quantum grading `j`.
    pub fn block_indices(&self, i: usize, j: i32) -> Vec<usize> {
        self.generators(i).iter().enumerate().filter(|(_, g)| g.j() == j).map(|(k, _)| k).collect()
    }

    /// The differential from `C^(i,j)` to `C^(i+1,j)`.
    pub fn block(&self, i: usize, j: i32) -> SparseMatrix<R> {
        let cols = self.block_indices(i, j);
        let rows = self.block_indices(i + 1, j);
        self.differentials[i].select(&rows, &cols)
    }

    /// Error on the first degree where `d^(i+1) d^i != 0`.
    pub fn check_d_squared(&self) -> Result<()> {
        for i in 0..self.differentials.len().saturating_sub(1) {
            if !self.differentials[i + 1].mul(&self.differentials[i]).is_zero() {
                return Err(Error::NotAComplex { degree: i as i32 });
            }
        }
        Ok(())
    }

    /// True when every differential entry goes from `j` to some `j' >= j`,
    /// or to `j' == j` when `strict` is set.
    pub fn respects_quantum_grading(&self, strict: bool) -> bool {
        self.differentials.iter().enumerate().all(|(i, m)| {
            m.triplets().all(|(r, c, _)| {
                let (js, jt) = (self.generators[i][c].j(), self.generators[i + 1][r].j());
                if strict {
                    js == jt
                } else {
                    jt >= js
                }
            })
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> BigradedComplex<S> {
        BigradedComplex {
            kind: self.kind,
            algebra: self.algebra,
            shift: self.shift,
            generators: self.generators.clone(),
            differentials: self.differentials.iter().map(|m| m.map(&f)).collect(),
        }
    }
}

#[derive(Serialize)]
struct GeneratorJson {
    state: String,
    labels: String,
    j: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    wedge: Option<Vec<usize>>,
}

impl BigradedComplex<i64> {
    /// Generators and sparse differential triplets, for diffing.
    pub fn to_json(&self) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                let g: Vec<GeneratorJson> = gens
                    .iter()
                    .map(|g| {
                        let s = &g.state;
                        GeneratorJson {
                            state: s.state.resolution().word(),
                            labels: (0..s.state.loop_count()).map(|l| if s.is_x(l) { 'x' } else { '1' }).collect(),
                            j: g.j(),
                            wedge: (self.kind == ComplexKind::DeRham)
                                .then(|| (0..64).filter(|k| g.wedge >> k & 1 == 1).collect()),
                        }
                    })
                    .collect();
                let m = &self.differentials[i];
                let triplets: Vec<[i64; 3]> = m.triplets().map(|(r, c, &v)| [r as i64, c as i64, v]).collect();
                serde_json::json!({
                    "i": i,
                    "generators": g,
                    "differential": {"rows": m.rows(), "cols": m.cols(), "triplets": triplets},
                })
            })
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "sign_convention": SIGN_CONVENTION,
            "shift": self.shift,
            "degrees": degrees,
        })
    }
}

/// Unsigned image of the label word `labels` under the partial map of `t`.
fn partial_image<R: Ring>(spec: &FrobeniusAlgebraSpec, t: &SiteTransition, labels: u64) -> Vec<(u64, R)> {
    let bit = |l: usize| (labels >> l & 1) as usize;
    let mut base = 0u64;
    for &(from, to) in &t.carried {
        base |= (bit(from) as u64) << to;
    }
    let mut out = vec![];
    match t.kind {
        TransitionKind::Merge { from: (a, b), to } => {
            for (v, c) in spec.mul_basis::<R>(bit(a), bit(b)).into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((base | (v as u64) << to, c));
                }
            }
        }
        TransitionKind::Split { from, to: (a, b) } => {
            for (v, c) in spec.comul_basis::<R>(bit(from)).into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((base | ((v >> 1) as u64) << a | ((v & 1) as u64) << b, c));
                }
            }
        }
    }
    out
}

/// States of each tier with their outgoing transitions.
struct Cube {
    tiers: Vec<Vec<Arc<ResolvedState>>>,
    /// `moves[b][k]`: transitions out of the `k`-th state of tier `b`.
    moves: Vec<Vec<Vec<SiteTransition>>>,
}

impl Cube {
    fn new(d: &KnotDiagram) -> Self {
        let c = d.crossing_count();
        let tiers: Vec<Vec<Arc<ResolvedState>>> =
            (0..=c).map(|b| tier(c, b).map(|r| Arc::new(resolve(d, r))).collect()).collect();
        let moves = tiers
            .iter()
            .map(|states| {
                states
                    .iter()
                    .map(|s| {
                        let r = s.resolution();
                        (0..c).filter(|&k| !r.is_b(k)).map(|k| transition_at(d, s, k).0).collect()
                    })
                    .collect()
            })
            .collect();
        Cube { tiers, moves }
    }

    fn enhanced(&self, b: usize) -> impl Iterator<Item = (usize, EnhancedState)> + '_ {
        self.tiers[b].iter().enumerate().flat_map(|(k, s)| {
            let n = s.loop_count();
            assert!(n < 64, "too many loops");
            (0..1u64 << n).map(move |labels| (k, EnhancedState { state: s.clone(), labels }))
        })
    }
}

fn index_of(gens: &[Generator]) -> HashMap<(u64, u64, u64), usize> {
    gens.iter().enumerate().map(|(k, g)| (g.key(), k)).collect()
}

/// The Khovanov or Lee complex of `d`.
pub fn build_complex<R: Ring>(d: &KnotDiagram, algebra: FrobeniusAlgebra, cap: usize) -> Result<BigradedComplex<R>> {
    check_cap(d, cap)?;
    let c = d.crossing_count();
    let spec = algebra.spec();
    let cube = Cube::new(d);
    let mut generators: Vec<Vec<Generator>> = vec![];
    let mut state_of: Vec<Vec<usize>> = vec![];
    for b in 0..=c {
        let (ks, gens): (Vec<usize>, Vec<Generator>) =
            cube.enhanced(b).map(|(k, state)| (k, Generator { state, wedge: 0 })).unzip();
        generators.push(gens);
        state_of.push(ks);
    }
    let mut differentials = vec![];
    for b in 0..=c {
        let rows = generators.get(b + 1).map_or(0, Vec::len);
        if b == c {
            differentials.push(SparseMatrix::zeros(rows, generators[b].len()));
            continue;
        }
        let target_index = index_of(&generators[b + 1]);
        let mut triplets = vec![];
        for (col, g) in generators[b].iter().enumerate() {
            let res = g.state.state.resolution();
            for t in &cube.moves[b][state_of[b][col]] {
                let sign: R = sign_pow(res.b_before(t.site));
                for (labels, coeff) in partial_image::<R>(&spec, t, g.state.labels) {
                    let row = target_index[&(t.target.bits(), labels, 0)];
                    triplets.push((row, col, sign.clone() * coeff));
                }
            }
        }
        differentials.push(SparseMatrix::from_triplets(rows, generators[b].len(), triplets));
    }
    let kind = match algebra {
        FrobeniusAlgebra::Khovanov => ComplexKind::Khovanov,
        FrobeniusAlgebra::Lee => ComplexKind::Lee,
    };
    Ok(BigradedComplex { kind, algebra, shift: GradingShift::of(d), generators, differentials })
}

/// The partial differential of one site, `C^i -> C^(i+1)`, with or without
/// its sign.
pub fn site_differential<R: Ring>(
    d: &KnotDiagram,
    cx: &BigradedComplex<R>,
    i: usize,
    site: usize,
    signed: bool,
) -> SparseMatrix<R> {
    assert_ne!(cx.kind, ComplexKind::DeRham, "site maps are defined on the ordinary complex");
    let spec = cx.algebra.spec();
    let sources = cx.generators(i);
    let targets = cx.generators(i + 1);
    let target_index = index_of(targets);
    let mut cache: HashMap<u64, Option<SiteTransition>> = HashMap::new();
    let mut triplets = vec![];
    for (col, g) in sources.iter().enumerate() {
        let res = g.state.state.resolution();
        let t = cache
            .entry(res.bits())
            .or_insert_with(|| (!res.is_b(site)).then(|| transition_at(d, &g.state.state, site).0));
        let Some(t) = t else { continue };
        let sign: R = if signed { sign_pow(res.b_before(site)) } else { R::one() };
        for (labels, coeff) in partial_image::<R>(&spec, t, g.state.labels) {
            let row = target_index[&(t.target.bits(), labels, 0)];
            triplets.push((row, col, sign.clone() * coeff));
        }
    }
    SparseMatrix::from_triplets(targets.len(), sources.len(), triplets)
}

/// `DR(K)`: generators `s dx_(k1) ^ ... ^ dx_(kr)` in degree `r`, with
/// `d(s w) = sum_k d_k(s) dx_k ^ w` over unsigned partials `d_k`. No grading
/// shift is applied.
pub fn build_dr_complex<R: Ring>(d: &KnotDiagram, cap: usize) -> Result<BigradedComplex<R>> {
    check_cap(d, cap)?;
    let c = d.crossing_count();
    let spec = FrobeniusAlgebra::Khovanov.spec();
    let cube = Cube::new(d);
    // every enhanced state, with its tier and position in the tier
    let mut enhanced = vec![];
    for b in 0..=c {
        for (k, s) in cube.enhanced(b) {
            enhanced.push((b, k, s));
        }
    }
    let mut generators: Vec<Vec<Generator>> = vec![vec![]; c + 1];
    let mut origin: Vec<Vec<(usize, usize)>> = vec![vec![]; c + 1];
    for (b, k, s) in &enhanced {
        for wedge in 0..1u64 << c {
            let r = wedge.count_ones() as usize;
            generators[r].push(Generator { state: s.clone(), wedge });
            origin[r].push((*b, *k));
        }
    }
    let mut differentials = vec![];
    for r in 0..=c {
        let rows = generators.get(r + 1).map_or(0, Vec::len);
        if r == c {
            differentials.push(SparseMatrix::zeros(rows, generators[r].len()));
            continue;
        }
        let target_index = index_of(&generators[r + 1]);
        let mut triplets = vec![];
        for (col, g) in generators[r].iter().enumerate() {
            let (b, k) = origin[r][col];
            for t in &cube.moves[b][k] {
                if g.wedge >> t.site & 1 == 1 {
                    continue;
                }
                let below = (g.wedge & ((1u64 << t.site) - 1)).count_ones() as usize;
                let sign: R = sign_pow(below);
                let wedge = g.wedge | 1 << t.site;
                for (labels, coeff) in partial_image::<R>(&spec, t, g.state.labels) {
                    let row = target_index[&(t.target.bits(), labels, wedge)];
                    triplets.push((row, col, sign.clone() * coeff));
                }
            }
        }
        differentials.push(SparseMatrix::from_triplets(rows, generators[r].len(), triplets));
    }
    Ok(BigradedComplex {
        kind: ComplexKind::DeRham,
        algebra: FrobeniusAlgebra::Khovanov,
        shift: GradingShift { homological: 0, quantum: 0 },
        generators,
        differentials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket_q;
    use crate::diagram::{parse_pd, BraidWord};
    use crate::resolution::DEFAULT_CAP;

    fn trefoil() -> KnotDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    fn kh(d: &KnotDiagram) -> BigradedComplex<i64> {
        build_complex(d, FrobeniusAlgebra::Khovanov, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn unknot_complex() {
        let cx = kh(&KnotDiagram::unknot());
        assert_eq!(cx.len(), 1);
        assert_eq!(cx.generators(0).len(), 2);
        assert!(cx.differential(0).is_zero());
        let dims = cx.dims();
        assert_eq!(dims.get(&(0, 1)), Some(&1));
        assert_eq!(dims.get(&(0, -1)), Some(&1));
        let dr = build_dr_complex::<i64>(&KnotDiagram::unknot(), DEFAULT_DR_CAP).unwrap();
        assert_eq!(dr.dims(), dims);
    }

    #[test]
    fn trefoil_complex() {
        let d = trefoil();
        let cx = kh(&d);
        let counts: Vec<usize> = (0..cx.len()).map(|i| cx.generators(i).len()).collect();
        assert_eq!(counts, vec![4, 6, 12, 8]);
        assert_eq!(cx.generator_count(), 30);
        cx.check_d_squared().unwrap();
        assert!(cx.respects_quantum_grading(true));
        assert_eq!(cx.euler_polynomial(), bracket_q(&d, DEFAULT_CAP).unwrap());
        for (_, _, v) in (0..cx.len()).flat_map(|i| cx.differential(i).triplets().collect::<Vec<_>>()) {
            assert!(v.abs() == 1);
        }
    }

    #[test]
    fn merge_of_two_x_loops_is_zero() {
        let cx = kh(&trefoil());
        // AAA has two loops and every site merges them
        let xx = cx.generators(0).iter().position(|g| g.state.labels == 0b11).unwrap();
        assert!(cx.differential(0).column(xx).is_empty());
        let one_one = cx.generators(0).iter().position(|g| g.state.labels == 0).unwrap();
        assert_eq!(cx.differential(0).column(one_one).len(), 3);
    }

    #[test]
    fn lee_complex_is_filtered() {
        let d = trefoil();
        let lee = build_complex::<i64>(&d, FrobeniusAlgebra::Lee, DEFAULT_CAP).unwrap();
        lee.check_d_squared().unwrap();
        assert!(lee.respects_quantum_grading(false));
        assert!(!lee.respects_quantum_grading(true));
    }

    #[test]
    fn partials_anticommute() {
        let d = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().close();
        let cx = kh(&d);
        let c = d.crossing_count();
        for i in 0..c - 1 {
            let mut total = SparseMatrix::<i64>::zeros(cx.generators(i + 1).len(), cx.generators(i).len());
            for a in 0..c {
                total = total.add(&site_differential(&d, &cx, i, a, true));
                for b in 0..c {
                    if a == b {
                        continue;
                    }
                    let s = |k, l, signed| {
                        site_differential(&d, &cx, i + 1, l, signed).mul(&site_differential(&d, &cx, i, k, signed))
                    };
                    assert!(s(a, b, true).add(&s(b, a, true)).is_zero());
                    assert_eq!(s(a, b, false), s(b, a, false));
                }
            }
            assert_eq!(&total, cx.differential(i));
        }
    }

    #[test]
    fn dr_squares_to_zero() {
        let d = trefoil();
        let dr = build_dr_complex::<i64>(&d, DEFAULT_DR_CAP).unwrap();
        dr.check_d_squared().unwrap();
        assert_eq!(dr.generator_count(), 30 * 8);
        let kink = KnotDiagram::unknot()
            .apply(crate::diagram::Move::R1Plus, crate::diagram::Site::Kink {
                strand: crate::diagram::Strand::Loop(0),
                flipped: false,
            })
            .unwrap();
        build_dr_complex::<i64>(&kink, DEFAULT_DR_CAP).unwrap().check_d_squared().unwrap();
        assert!(matches!(
            build_dr_complex::<i64>(&BraidWord::new(2, vec![1; 9]).unwrap().close(), DEFAULT_DR_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn corrupted_sign_breaks_d_squared() {
        let mut cx = kh(&trefoil());
        let (r, c, v) = cx.differential(0).triplets().map(|(r, c, v)| (r, c, *v)).next().unwrap();
        cx.differential_mut(0).set(r, c, -v);
        assert!(matches!(cx.check_d_squared(), Err(Error::NotAComplex { degree: 0 })));
    }

    #[test]
    fn json_dump() {
        let cx = kh(&trefoil());
        let j = cx.to_json();
        assert_eq!(j["degrees"][0]["generators"].as_array().unwrap().len(), 4);
        assert_eq!(j["shift"]["quantum"], 3);
    }
}
