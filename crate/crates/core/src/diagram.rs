//! Knot and link diagrams in planar-diagram (PD) notation.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels in the cyclic order of
//! the diagram's rotation system, starting from the incoming under-strand.
//! The under-strand runs `a -> c`. The over-strand joins `b` and `d`; the
//! crossing is **positive** when it runs `b -> d` and negative when it runs
//! `d -> b`. Under this rule `PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]` is the
//! all-positive (right-handed) trefoil.
//!
//! Diagrams are validated and canonically renumbered on construction: edges
//! are relabelled `1..=2n` by walking each component in its orientation,
//! components taken in order of first appearance in the crossing list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod moves;
mod parse;

pub use moves::{apply_reidemeister, sites, Move, Site, Strand};

/// Edge label, always positive.
pub type Edge = u32;

/// Identifies the PD convention in reports.
pub const PD_CONVENTION: &str = "pd-rotation-from-incoming-under; positive iff over-strand b->d";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Position of an edge end: `(crossing index, slot 0..4)`.
pub type Slot = (usize, usize);

/// A directed traversal of an edge; `forward` follows the link orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: Edge,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    crossings: Vec<[Edge; 4]>,
    signs: Vec<Sign>,
    free_loops: usize,
    component_count: usize,
    /// `ends[e - 1] = [tail slot, head slot]`.
    ends: Vec<[Slot; 2]>,
}

impl KnotDiagram {
    /// `n` disjoint crossingless circles.
    pub fn unlink(n: usize) -> Self {
        KnotDiagram {
            crossings: vec![],
            signs: vec![],
            free_loops: n,
            component_count: n,
            ends: vec![],
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Validate, orient and canonically renumber a list of PD tuples.
    pub fn from_crossings(raw: &[[Edge; 4]], free_loops: usize) -> Result<Self> {
        let n = raw.len();
        let mut slots: BTreeMap<Edge, Vec<Slot>> = BTreeMap::new();
        for (k, x) in raw.iter().enumerate() {
            for (p, &e) in x.iter().enumerate() {
                if e == 0 {
                    return Err(Error::InvalidInput("edge label 0 is not allowed".into()));
                }
                slots.entry(e).or_default().push((k, p));
            }
        }
        if let Some((&edge, s)) = slots.iter().find(|(_, s)| s.len() != 2) {
            return Err(Error::EdgeMultiplicity { edge, count: s.len() });
        }

        let partner = |(k, p): Slot| -> Slot {
            let e = raw[k][p];
            let s = &slots[&e];
            if s[0] == (k, p) {
                s[1]
            } else {
                s[0]
            }
        };

        // incoming[k][p]: does the link enter crossing k through slot p?
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        for k in 0..n {
            for p in 0..4 {
                if incoming[k][p].is_some() {
                    continue;
                }
                // (enter, leave) slot pairs in walking order; enter slots are
                // incoming iff the walk follows the orientation.
                let cycle = component_cycle(raw, (k, p), &partner);
                let walk_forward = match cycle.iter().position(|&(_, q)| q % 2 == 0) {
                    Some(i) => (cycle[i].1 == 0) == (i % 2 == 0),
                    None => over_only_direction(raw, &cycle),
                };
                for (idx, &(kk, q)) in cycle.iter().enumerate() {
                    incoming[kk][q] = Some((idx % 2 == 0) == walk_forward);
                }
                for &(kk, q) in &cycle {
                    if q % 2 == 0 && incoming[kk][q] != Some(q == 0) {
                        return Err(Error::Orientation(format!(
                            "under-strand of crossing {} cannot run from slot a to slot c",
                            kk + 1
                        )));
                    }
                }
            }
        }

        // Renumber edges along components.
        let mut relabel: BTreeMap<Edge, Edge> = BTreeMap::new();
        let mut next = 1;
        for k in 0..n {
            for p in 0..4 {
                if relabel.contains_key(&raw[k][p]) {
                    continue;
                }
                // Walk forward from this edge.
                let start = raw[k][p];
                let mut e = start;
                loop {
                    relabel.insert(e, next);
                    next += 1;
                    let s = &slots[&e];
                    let head = if incoming[s[0].0][s[0].1] == Some(true) { s[0] } else { s[1] };
                    let out = (head.0, (head.1 + 2) % 4);
                    e = raw[out.0][out.1];
                    if e == start {
                        break;
                    }
                }
            }
        }

        let crossings: Vec<[Edge; 4]> = raw
            .iter()
            .map(|x| [relabel[&x[0]], relabel[&x[1]], relabel[&x[2]], relabel[&x[3]]])
            .collect();
        let signs = (0..n)
            .map(|k| if incoming[k][1] == Some(true) { Sign::Positive } else { Sign::Negative })
            .collect();
        let mut ends = vec![[(0, 0); 2]; 2 * n];
        for k in 0..n {
            for p in 0..4 {
                let e = crossings[k][p] as usize - 1;
                let head = incoming[k][p] == Some(true);
                ends[e][usize::from(head)] = (k, p);
            }
        }

        let components = count_cycles(&crossings, &ends);
        let d = KnotDiagram {
            crossings,
            signs,
            free_loops,
            component_count: components + free_loops,
            ends,
        };
        d.check_planar()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[[Edge; 4]] {
        &self.crossings
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|s| s.as_i32()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.n_minus() == 0
    }

    /// Tail slot of an edge (where it leaves a crossing).
    pub fn tail(&self, e: Edge) -> Slot {
        self.ends[e as usize - 1][0]
    }

    /// Head slot of an edge (where it enters a crossing).
    pub fn head(&self, e: Edge) -> Slot {
        self.ends[e as usize - 1][1]
    }

    pub fn edge_at(&self, (k, p): Slot) -> Edge {
        self.crossings[k][p]
    }

    /// Boundary walks of the complementary regions, face on the left.
    ///
    /// Every dart belongs to exactly one face. Faces are listed starting from
    /// their smallest dart, in order of that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n_edges = self.edge_count() as u32;
        let mut seen = BTreeSet::new();
        let mut faces = vec![];
        for e in 1..=n_edges {
            for forward in [true, false] {
                let start = Dart { edge: e, forward };
                if seen.contains(&start) {
                    continue;
                }
                let mut face = vec![];
                let mut dart = start;
                loop {
                    seen.insert(dart);
                    face.push(dart);
                    dart = self.next_face_dart(dart);
                    if dart == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Slot a dart arrives at.
    pub fn dart_end(&self, d: Dart) -> Slot {
        if d.forward {
            self.head(d.edge)
        } else {
            self.tail(d.edge)
        }
    }

    /// Slot a dart departs from.
    pub fn dart_start(&self, d: Dart) -> Slot {
        if d.forward {
            self.tail(d.edge)
        } else {
            self.head(d.edge)
        }
    }

    fn next_face_dart(&self, d: Dart) -> Dart {
        let (k, p) = self.dart_end(d);
        let q = (p + 3) % 4;
        let e = self.crossings[k][q];
        Dart { edge: e, forward: self.tail(e) == (k, q) }
    }

    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        // Connected pieces of the 4-valent graph.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for [t, h] in &self.ends {
            let a = find(&mut parent, t.0);
            let b = find(&mut parent, h.0);
            parent[a] = b;
        }
        let mut verts: BTreeMap<usize, i64> = BTreeMap::new();
        let mut face_count: BTreeMap<usize, i64> = BTreeMap::new();
        for k in 0..n {
            *verts.entry(find(&mut parent, k)).or_default() += 1;
        }
        for face in self.faces() {
            let k = self.dart_end(face[0]).0;
            *face_count.entry(find(&mut parent, k)).or_default() += 1;
        }
        for (root, v) in verts {
            let f = face_count.get(&root).copied().unwrap_or(0);
            // V - E + F = 2 with E = 2V.
            let chi = v - 2 * v + f;
            if chi != 2 {
                return Err(Error::NonPlanar(format!(
                    "a connected piece with {v} crossings has Euler characteristic {chi}"
                )));
            }
        }
        Ok(())
    }

    /// Switch every crossing.
    pub fn mirror(&self) -> KnotDiagram {
        let raw: Vec<[Edge; 4]> = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], s)| match s {
                // over-strand b -> d becomes the under-strand
                Sign::Positive => [b, c, d, a],
                Sign::Negative => [d, a, b, c],
            })
            .collect();
        KnotDiagram::from_crossings(&raw, self.free_loops)
            .expect("mirror of a valid diagram is valid")
    }

    /// Connected sum, splicing the first edge of each summand.
    pub fn connected_sum(&self, other: &KnotDiagram) -> KnotDiagram {
        if self.crossings.is_empty() && self.free_loops > 0 {
            let mut d = other.clone();
            d.free_loops += self.free_loops - 1;
            d.component_count += self.free_loops - 1;
            return d;
        }
        if other.crossings.is_empty() {
            let mut d = self.clone();
            let extra = other.free_loops.saturating_sub(1);
            d.free_loops += extra;
            d.component_count += extra;
            return d;
        }
        let offset = self.edge_count() as Edge;
        let mut raw: Vec<[Edge; 4]> = self.crossings.clone();
        raw.extend(other.crossings.iter().map(|x| x.map(|e| e + offset)));
        let e = 1;
        let f = 1 + offset;
        let (hk, hp) = self.head(e);
        let (ok, op) = other.head(1);
        let ok = ok + self.crossings.len();
        raw[hk][hp] = f;
        raw[ok][op] = e;
        KnotDiagram::from_crossings(&raw, self.free_loops + other.free_loops)
            .expect("connected sum of valid diagrams is valid")
    }

    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        let base = self.edge_count();
        parts.extend((0..self.free_loops).map(|i| format!("O({})", base + i + 1)));
        format!("PD[{}]", parts.join(","))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson::from(self)).expect("serializable")
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for KnotDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

/// Canonical JSON rendering of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub pd: String,
    pub crossings: Vec<[Edge; 4]>,
    pub signs: Vec<Sign>,
    pub free_loops: usize,
    pub components: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub writhe: i32,
}

impl From<&KnotDiagram> for DiagramJson {
    fn from(d: &KnotDiagram) -> Self {
        DiagramJson {
            pd: d.to_pd(),
            crossings: d.crossings.clone(),
            signs: d.signs.clone(),
            free_loops: d.free_loops,
            components: d.component_count,
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
            writhe: d.writhe(),
        }
    }
}

/// Walk the strand through `start`, returning `(enter, leave)` slot pairs in
/// walking order, beginning by entering at `start`.
fn component_cycle(
    raw: &[[Edge; 4]],
    start: Slot,
    partner: &dyn Fn(Slot) -> Slot,
) -> Vec<Slot> {
    let mut out = vec![];
    let mut enter = start;
    loop {
        let leave = (enter.0, (enter.1 + 2) % 4);
        out.push(enter);
        out.push(leave);
        enter = partner(leave);
        if enter == start {
            break;
        }
        debug_assert!(out.len() <= 4 * raw.len());
    }
    out
}

/// Orientation of a component that never passes under: follow the smaller
/// neighbouring label from the component's smallest edge label, falling
/// back to `b -> d` at its first crossing.
fn over_only_direction(raw: &[[Edge; 4]], cycle: &[Slot]) -> bool {
    // Edges along the walk: edge leaving slot cycle[2i+1].
    let m = cycle.len() / 2;
    let edges: Vec<Edge> = (0..m)
        .map(|i| {
            let (k, p) = cycle[2 * i + 1];
            raw[k][p]
        })
        .collect();
    if m >= 3 {
        let (imin, _) = edges.iter().enumerate().min_by_key(|(_, &e)| e).unwrap();
        let next = edges[(imin + 1) % m];
        let prev = edges[(imin + m - 1) % m];
        if next != prev {
            return next < prev;
        }
    }
    // First visited slot pair is (enter, leave); forward means entering at b.
    cycle[0].1 == 1
}

fn count_cycles(crossings: &[[Edge; 4]], ends: &[[Slot; 2]]) -> usize {
    let n_edges = ends.len();
    let mut seen = vec![false; n_edges];
    let mut count = 0;
    for start in 0..n_edges {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            let (k, p) = ends[e][1];
            e = crossings[k][(p + 2) % 4] as usize - 1;
        }
    }
    count
}

/// A braid word on `strand_count` strands; `±k` is `σ_k^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<i32>) -> Result<Self> {
        if strand_count == 0 {
            return Err(Error::Braid("strand count must be positive".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strand_count {
                return Err(Error::Braid(format!(
                    "generator {l} out of range for {strand_count} strands"
                )));
            }
        }
        Ok(BraidWord { strand_count, letters })
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Trace closure, all strands oriented downward.
    pub fn close(&self) -> KnotDiagram {
        let n = self.strand_count;
        let mut current: Vec<Edge> = (1..=n as Edge).collect();
        let mut next = n as Edge + 1;
        let mut raw = vec![];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let (in_l, in_r) = (current[i - 1], current[i]);
            let (sw, se) = (next, next + 1);
            next += 2;
            // rotation order around the crossing: NE, NW, SW, SE
            if l > 0 {
                raw.push([in_r, in_l, sw, se]);
            } else {
                raw.push([in_l, sw, se, in_r]);
            }
            current[i - 1] = sw;
            current[i] = se;
        }
        let mut free_loops = 0;
        let mut subst = BTreeMap::new();
        for (k, &c) in current.iter().enumerate() {
            let start = k as Edge + 1;
            if c == start {
                free_loops += 1;
            } else {
                subst.insert(c, start);
            }
        }
        for x in raw.iter_mut() {
            for e in x.iter_mut() {
                if let Some(&s) = subst.get(e) {
                    *e = s;
                }
            }
        }
        KnotDiagram::from_crossings(&raw, free_loops).expect("braid closures are valid diagrams")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "B[{}; {}]", self.strand_count, l.join(","))
    }
}

impl std::str::FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_braid(s)
    }
}

pub fn parse_pd(text: &str) -> Result<KnotDiagram> {
    let (raw, loops) = parse::parse_pd_tokens(text)?;
    KnotDiagram::from_crossings(&raw, loops)
}

pub fn close_braid(w: &BraidWord) -> KnotDiagram {
    w.close()
}

/// Parse either notation: `PD[...]` or `B[n; ...]`.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram> {
    let t = text.trim_start();
    if t.starts_with('B') {
        Ok(parse::parse_braid(text)?.close())
    } else {
        parse_pd(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

    #[test]
    fn trefoil_is_all_positive() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn free_circle() {
        let d = parse_pd("PD[O(1)]").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d, KnotDiagram::unknot());
    }

    #[test]
    fn repeated_labels_rejected() {
        let err = parse_pd("PD[X(1,2,3,4),X(1,2,3,4)]").unwrap_err();
        assert!(matches!(err, Error::Orientation(_) | Error::NonPlanar(_)), "{err:?}");
        let err = parse_pd("PD[X(1,1,2,3)]").unwrap_err();
        assert_eq!(err, Error::EdgeMultiplicity { edge: 2, count: 1 });
    }

    #[test]
    fn inconsistent_orientation() {
        // Both under-strands want to enter through edge 1.
        let err = parse_pd("PD[X(1,3,2,4),X(1,4,2,3)]").unwrap_err();
        assert!(matches!(err, Error::Orientation(_)), "{err:?}");
    }

    #[test]
    fn nonconsecutive_labels_are_renumbered() {
        let a = parse_pd("PD[X(10,40,20,50),X(30,60,40,10),X(50,20,60,30)]").unwrap();
        let b = parse_pd(TREFOIL).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn render_round_trip() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
        let h = BraidWord::new(2, vec![1, 1]).unwrap().close();
        assert_eq!(parse_pd(&h.to_pd()).unwrap(), h);
    }

    #[test]
    fn braid_closures() {
        let t = BraidWord::new(2, vec![1, 1, 1]).unwrap().close();
        assert_eq!((t.crossing_count(), t.n_plus(), t.n_minus()), (3, 3, 0));
        assert_eq!(t.component_count(), 1);

        let u = BraidWord::new(2, vec![]).unwrap().close();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.component_count(), 2);

        let f8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().close();
        assert_eq!((f8.crossing_count(), f8.n_plus(), f8.n_minus()), (4, 2, 2));
        assert_eq!(f8.component_count(), 1);

        let hopf = BraidWord::new(2, vec![1, 1]).unwrap().close();
        assert_eq!(hopf.component_count(), 2);

        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
    }

    #[test]
    fn mirror_exchanges_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
        assert_eq!(m.mirror(), d);
        assert_eq!(KnotDiagram::unknot().mirror(), KnotDiagram::unknot());
    }

    #[test]
    fn faces_of_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        let faces = d.faces();
        assert_eq!(faces.len(), 5);
        let mut sizes: Vec<usize> = faces.iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn non_planar_rejected() {
        // Two circles crossing once cannot be drawn in the plane.
        let err = parse_pd("PD[X(1,2,1,2)]").unwrap_err();
        assert!(matches!(err, Error::NonPlanar(_) | Error::Orientation(_)), "{err:?}");
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let t = parse_pd(TREFOIL).unwrap();
        let s = t.connected_sum(&t);
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.n_plus(), 6);
        let u = KnotDiagram::unknot().connected_sum(&t);
        assert_eq!(u, t);
    }
}
