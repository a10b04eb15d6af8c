//! Bracket states, their loops, enhanced states and the cube of resolutions.
//!
//! At `X(a,b,c,d)` the A-smoothing joins `a-d` and `b-c`, the B-smoothing
//! joins `a-b` and `c-d`. For a positive crossing the A-smoothing is the
//! oriented one, so the all-A state of a positive diagram is its Seifert
//! state.
//!
//! Worked example: the positive kink `X(1,2,2,1)`. A joins `1-1` and `2-2`,
//! two loops; B joins `1-2` and `2-1`, one loop. The q-bracket is
//! `(q+q^-1)^2 - q(q+q^-1) = q^-1 (q+q^-1)`.

use std::fmt;
use std::sync::Arc;

use crate::diagram::{Edge, KnotDiagram};
use crate::error::{Error, Result};

/// Default crossing cap for exponential enumerations.
pub const DEFAULT_CAP: usize = 20;

pub(crate) fn check_cap(d: &KnotDiagram, cap: usize) -> Result<()> {
    if d.crossing_count() > cap {
        return Err(Error::CapExceeded { crossings: d.crossing_count(), cap });
    }
    Ok(())
}

/// A choice of smoothing per crossing; bit `k` set means B at crossing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resolution {
    bits: u64,
    len: usize,
}

impl Resolution {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        assert!(len == 64 || bits >> len == 0, "bits beyond length");
        Resolution { bits, len }
    }

    pub fn all_a(len: usize) -> Self {
        Resolution::new(0, len)
    }

    pub fn from_word(word: &str) -> Option<Self> {
        let mut bits = 0;
        for (k, ch) in word.chars().enumerate() {
            match ch {
                'A' => {}
                'B' => bits |= 1 << k,
                _ => return None,
            }
        }
        Some(Resolution::new(bits, word.chars().count()))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_b(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn b_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of B sites with index below `k`.
    pub fn b_before(&self, k: usize) -> usize {
        (self.bits & ((1u64 << k) - 1)).count_ones() as usize
    }

    pub fn flip(&self, k: usize) -> Resolution {
        Resolution::new(self.bits ^ (1 << k), self.len)
    }

    pub fn word(&self) -> String {
        (0..self.len).map(|k| if self.is_b(k) { 'B' } else { 'A' }).collect()
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// Resolutions in `(b_count, bits)` order.
pub fn resolutions(len: usize) -> impl Iterator<Item = Resolution> {
    (0..=len).flat_map(move |b| tier(len, b))
}

/// Resolutions with exactly `b` B-smoothings, in increasing bit order.
pub fn tier(len: usize, b: usize) -> impl Iterator<Item = Resolution> {
    let limit: u128 = 1u128 << len;
    let first: u128 = if b == 0 { 0 } else { (1u128 << b) - 1 };
    let mut cur = if b <= len { Some(first) } else { None };
    std::iter::from_fn(move || {
        let v = cur?;
        if v >= limit {
            return None;
        }
        cur = if v == 0 {
            None
        } else {
            // next integer with the same popcount
            let c = v & v.wrapping_neg();
            let r = v + c;
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(Resolution::new(v as u64, len))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedState {
    resolution: Resolution,
    /// Loops through edges, ordered by smallest edge; free circles follow
    /// with empty edge lists.
    loops: Vec<Vec<Edge>>,
    loop_of_edge: Vec<usize>,
}

impl ResolvedState {
    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn loops(&self) -> &[Vec<Edge>] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn loop_of(&self, e: Edge) -> usize {
        self.loop_of_edge[e as usize - 1]
    }
}

impl fmt::Display for ResolvedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word={} loops={}", self.resolution.word(), self.loop_count())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are loop minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

pub fn resolve(d: &KnotDiagram, r: Resolution) -> ResolvedState {
    assert_eq!(r.len(), d.crossing_count(), "resolution length mismatch");
    let n_edges = d.edge_count();
    let mut uf = UnionFind::new(n_edges);
    for (k, x) in d.crossings().iter().enumerate() {
        let [a, b, c, dd] = x.map(|e| e as usize - 1);
        if r.is_b(k) {
            uf.union(a, b);
            uf.union(c, dd);
        } else {
            uf.union(a, dd);
            uf.union(b, c);
        }
    }
    let mut root_index = vec![usize::MAX; n_edges];
    let mut loops: Vec<Vec<Edge>> = vec![];
    let mut loop_of_edge = vec![0; n_edges];
    for e in 0..n_edges {
        let root = uf.find(e);
        if root_index[root] == usize::MAX {
            root_index[root] = loops.len();
            loops.push(vec![]);
        }
        let li = root_index[root];
        loops[li].push(e as Edge + 1);
        loop_of_edge[e] = li;
    }
    loops.extend(std::iter::repeat_with(Vec::new).take(d.free_loops()));
    ResolvedState { resolution: r, loops, loop_of_edge }
}

/// All `2^c` states, ordered by `(b_count, bits)`.
pub fn enumerate_states(
    d: &KnotDiagram,
    cap: usize,
) -> Result<impl Iterator<Item = ResolvedState> + '_> {
    check_cap(d, cap)?;
    Ok(resolutions(d.crossing_count()).map(move |r| resolve(d, r)))
}

/// Loop labels: bit `l` set means loop `l` carries `x`, clear means `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedState {
    pub state: Arc<ResolvedState>,
    pub labels: u64,
}

impl EnhancedState {
    /// Homological grading: number of B-smoothings.
    pub fn i(&self) -> i32 {
        self.state.resolution.b_count() as i32
    }

    /// Loops labelled `1` minus loops labelled `x`.
    pub fn lambda(&self) -> i32 {
        let n = self.state.loop_count() as i32;
        let xs = self.labels.count_ones() as i32;
        n - 2 * xs
    }

    /// Quantum grading `i + lambda`.
    pub fn j(&self) -> i32 {
        self.i() + self.lambda()
    }

    pub fn is_x(&self, l: usize) -> bool {
        self.labels >> l & 1 == 1
    }
}

impl fmt::Display for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: String = (0..self.state.loop_count())
            .map(|l| if self.is_x(l) { 'x' } else { '1' })
            .collect();
        write!(f, "{}:{}", self.state.resolution.word(), labels)
    }
}

/// All enhanced states: states in `(b_count, bits)` order, then labels in
/// increasing bit order.
pub fn enumerate_enhanced(
    d: &KnotDiagram,
    cap: usize,
) -> Result<impl Iterator<Item = EnhancedState> + '_> {
    Ok(enumerate_states(d, cap)?.flat_map(|s| {
        let s = Arc::new(s);
        let n = s.loop_count();
        assert!(n < 64, "too many loops");
        (0..1u64 << n).map(move |labels| EnhancedState { state: s.clone(), labels })
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    /// Source loops `from.0` and `from.1` become target loop `to`.
    Merge { from: (usize, usize), to: usize },
    /// Source loop `from` becomes target loops `to.0` and `to.1`.
    Split { from: usize, to: (usize, usize) },
}

/// An A->B resmoothing at one site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteTransition {
    pub site: usize,
    pub target: Resolution,
    pub kind: TransitionKind,
    /// `(source loop, target loop)` for every loop the move does not touch.
    pub carried: Vec<(usize, usize)>,
}

/// The transition at A-site `site` of `source`, with the resolved target.
pub fn transition_at(
    d: &KnotDiagram,
    source: &ResolvedState,
    site: usize,
) -> (SiteTransition, ResolvedState) {
    let r = source.resolution;
    assert!(!r.is_b(site), "site {site} is already B");
    let target_res = r.flip(site);
    let target = resolve(d, target_res);
    let [a, b, c, _] = d.crossings()[site];
    let (la, lb) = (source.loop_of(a), source.loop_of(b));
    let kind = if la != lb {
        let (x, y) = if la < lb { (la, lb) } else { (lb, la) };
        TransitionKind::Merge { from: (x, y), to: target.loop_of(a) }
    } else {
        let (ta, tc) = (target.loop_of(a), target.loop_of(c));
        debug_assert_ne!(ta, tc, "planar resmoothing must split");
        let to = if ta < tc { (ta, tc) } else { (tc, ta) };
        TransitionKind::Split { from: la, to }
    };
    let edge_loops_src = source.loop_count() - d.free_loops();
    let edge_loops_tgt = target.loop_count() - d.free_loops();
    let mut carried = vec![];
    for (l, edges) in source.loops.iter().enumerate() {
        if l == la || l == lb {
            continue;
        }
        if l >= edge_loops_src {
            carried.push((l, l - edge_loops_src + edge_loops_tgt));
        } else {
            carried.push((l, target.loop_of(edges[0])));
        }
    }
    (SiteTransition { site, target: target_res, kind, carried }, target)
}

/// One transition per A-site of `r`.
pub fn transitions(d: &KnotDiagram, r: Resolution) -> Vec<SiteTransition> {
    let source = resolve(d, r);
    (0..r.len())
        .filter(|&k| !r.is_b(k))
        .map(|k| transition_at(d, &source, k).0)
        .collect()
}

/// One line per state: `word=ABB loops=2`.
pub fn debug_dump(d: &KnotDiagram, cap: usize) -> Result<String> {
    let mut out = String::new();
    for s in enumerate_states(d, cap)? {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    Ok(out)
}
