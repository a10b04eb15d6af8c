//! Reidemeister moves on PD diagrams.
//!
//! Sites are named by edge labels of the input diagram. The generators are
//! used to manufacture pairs of diagrams of the same link for invariance
//! testing; they do not try to simplify diagrams.

use std::collections::BTreeSet;

use super::{Dart, Edge, KnotDiagram, Slot};
use crate::error::{Error, Result};

/// A strand segment: an edge between crossings, or a crossingless circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Edge(Edge),
    /// Index into the diagram's free circles, from 0.
    Loop(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    R1Plus,
    R1Minus,
    R2,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    /// R1: add a kink on the strand; `flipped` puts it on the other side.
    Kink { strand: Strand, flipped: bool },
    /// R2: push `over` across `under`. Both must bound a common region.
    Pair { over: Strand, under: Strand },
    /// R3: the triangular region bounded by this edge.
    Triangle(Edge),
}

impl KnotDiagram {
    pub fn apply(&self, mv: Move, site: Site) -> Result<KnotDiagram> {
        apply_reidemeister(self, mv, site)
    }
}

pub fn apply_reidemeister(d: &KnotDiagram, mv: Move, site: Site) -> Result<KnotDiagram> {
    match (mv, site) {
        (Move::R1Plus, Site::Kink { strand, flipped }) => kink(d, strand, true, flipped),
        (Move::R1Minus, Site::Kink { strand, flipped }) => kink(d, strand, false, flipped),
        (Move::R2, Site::Pair { over, under }) => poke(d, over, under),
        (Move::R3, Site::Triangle(e)) => slide(d, e),
        (mv, site) => Err(Error::InapplicableMove(format!("{mv:?} cannot act on {site:?}"))),
    }
}

/// Every site at which `mv` applies.
pub fn sites(d: &KnotDiagram, mv: Move) -> Vec<Site> {
    let strands: Vec<Strand> = (1..=d.edge_count() as Edge)
        .map(Strand::Edge)
        .chain((0..d.free_loops()).map(Strand::Loop))
        .collect();
    match mv {
        Move::R1Plus | Move::R1Minus => strands
            .iter()
            .flat_map(|&strand| {
                [false, true].map(move |flipped| Site::Kink { strand, flipped })
            })
            .collect(),
        Move::R2 => {
            let mut out = BTreeSet::new();
            for face in d.faces() {
                for a in &face {
                    for b in &face {
                        if a.edge != b.edge {
                            out.insert(Site::Pair {
                                over: Strand::Edge(a.edge),
                                under: Strand::Edge(b.edge),
                            });
                        }
                    }
                }
            }
            for i in 0..d.free_loops() {
                for &s in &strands {
                    if s != Strand::Loop(i) {
                        out.insert(Site::Pair { over: Strand::Loop(i), under: s });
                        out.insert(Site::Pair { over: s, under: Strand::Loop(i) });
                    }
                }
            }
            out.into_iter().collect()
        }
        Move::R3 => d
            .faces()
            .iter()
            .filter(|f| triangle(d, f).is_ok())
            .map(|f| Site::Triangle(f[0].edge))
            .collect(),
    }
}

fn max_label(d: &KnotDiagram) -> Edge {
    d.edge_count() as Edge
}

fn kink(d: &KnotDiagram, strand: Strand, positive: bool, flipped: bool) -> Result<KnotDiagram> {
    let mut raw = d.crossings().to_vec();
    let m = max_label(d);
    let mut loops = d.free_loops();
    let (e1, lp, e2) = match strand {
        Strand::Edge(e) => {
            check_edge(d, e)?;
            let (hk, hp) = d.head(e);
            raw[hk][hp] = m + 2;
            (e, m + 1, m + 2)
        }
        Strand::Loop(i) => {
            check_loop(d, i)?;
            loops -= 1;
            (m + 1, m + 2, m + 1)
        }
    };
    raw.push(match (positive, flipped) {
        (true, false) => [e1, lp, lp, e2],
        (true, true) => [lp, e1, e2, lp],
        (false, false) => [e1, e2, lp, lp],
        (false, true) => [lp, lp, e2, e1],
    });
    KnotDiagram::from_crossings(&raw, loops)
}

fn check_edge(d: &KnotDiagram, e: Edge) -> Result<()> {
    if e == 0 || e as usize > d.edge_count() {
        return Err(Error::InapplicableMove(format!("no edge {e}")));
    }
    Ok(())
}

fn check_loop(d: &KnotDiagram, i: usize) -> Result<()> {
    if i >= d.free_loops() {
        return Err(Error::InapplicableMove(format!("no free circle {i}")));
    }
    Ok(())
}

/// Walking direction of a strand along a shared region, face on the left.
fn shared_face(d: &KnotDiagram, a: Strand, b: Strand) -> Result<(bool, bool)> {
    match (a, b) {
        (Strand::Loop(_), Strand::Loop(_)) => Ok((true, true)),
        (Strand::Loop(_), Strand::Edge(f)) => Ok((true, first_dart(d, f).forward)),
        (Strand::Edge(e), Strand::Loop(_)) => Ok((first_dart(d, e).forward, true)),
        (Strand::Edge(e), Strand::Edge(f)) => {
            for face in d.faces() {
                let de = face.iter().find(|x| x.edge == e);
                let df = face.iter().find(|x| x.edge == f);
                if let (Some(de), Some(df)) = (de, df) {
                    return Ok((de.forward, df.forward));
                }
            }
            Err(Error::InapplicableMove(format!("edges {e} and {f} share no region")))
        }
    }
}

fn first_dart(d: &KnotDiagram, e: Edge) -> Dart {
    d.faces()
        .into_iter()
        .flatten()
        .find(|x| x.edge == e)
        .expect("every edge bounds a region")
}

/// R2. Geometry, with the shared region `F` in the middle: `e` is walked
/// right to left above `F` and `f` left to right below it, both with `F`
/// on the left. Pushing `e` down across `f` creates `X1` (right) and `X2`
/// (left), with rotation orders `(f3, e1, f2, e2)` and `(f2, e3, f1, e2)`
/// where pieces are numbered in walking order.
fn poke(d: &KnotDiagram, over: Strand, under: Strand) -> Result<KnotDiagram> {
    if over == under {
        return Err(Error::InapplicableMove("R2 needs two distinct strands".into()));
    }
    for s in [over, under] {
        match s {
            Strand::Edge(e) => check_edge(d, e)?,
            Strand::Loop(i) => check_loop(d, i)?,
        }
    }
    let (e_fwd, f_fwd) = shared_face(d, over, under)?;
    let m = max_label(d);
    let [e1, e2, mut e3, f1, f2, mut f3] = [m + 1, m + 2, m + 3, m + 4, m + 5, m + 6];
    let mut raw = d.crossings().to_vec();
    let mut loops = d.free_loops();

    let mut relabel = |raw: &mut Vec<[Edge; 4]>, s: Strand, fwd: bool, first: Edge, last: &mut Edge| {
        match s {
            Strand::Edge(e) => {
                let (t, h) = (d.tail(e), d.head(e));
                let (lt, lh) = if fwd { (first, *last) } else { (*last, first) };
                raw[t.0][t.1] = lt;
                raw[h.0][h.1] = lh;
            }
            Strand::Loop(_) => {
                loops -= 1;
                *last = first;
            }
        }
    };
    relabel(&mut raw, over, e_fwd, e1, &mut e3);
    relabel(&mut raw, under, f_fwd, f1, &mut f3);

    let x1 = [f3, e1, f2, e2];
    let x2 = [f2, e3, f1, e2];
    let in1 = if f_fwd { f2 } else { f3 };
    let in2 = if f_fwd { f1 } else { f2 };
    raw.push(rotate_to(x1, in1));
    raw.push(rotate_to(x2, in2));
    KnotDiagram::from_crossings(&raw, loops)
}

fn rotate_to(x: [Edge; 4], first: Edge) -> [Edge; 4] {
    let i = x.iter().position(|&e| e == first).expect("label present");
    [x[i], x[(i + 1) % 4], x[(i + 2) % 4], x[(i + 3) % 4]]
}

/// Triangle sides as `[(start slot, end slot); 3]` in walking order.
fn triangle(d: &KnotDiagram, face: &[Dart]) -> Result<[(Slot, Slot); 3]> {
    if face.len() != 3 {
        return Err(Error::InapplicableMove("region is not a triangle".into()));
    }
    let sides: Vec<(Slot, Slot)> = face.iter().map(|&x| (d.dart_start(x), d.dart_end(x))).collect();
    let ks: BTreeSet<usize> = sides.iter().map(|s| s.0 .0).collect();
    let es: BTreeSet<Edge> = face.iter().map(|x| x.edge).collect();
    if ks.len() != 3 || es.len() != 3 {
        return Err(Error::InapplicableMove("triangle touches a crossing twice".into()));
    }
    // A strand that is over at both ends of its side can slide.
    let over_both = sides.iter().any(|(s, e)| s.1 % 2 == 1 && e.1 % 2 == 1);
    if !over_both {
        return Err(Error::InapplicableMove("triangle is alternating; R3 does not apply".into()));
    }
    Ok([sides[0], sides[1], sides[2]])
}

/// R3 as a relabelling of the three triangle crossings. With sides
/// `alpha, beta, gamma` on strands `a, b, c` and vertices `ab, bc, ca`, each
/// vertex keeps its slots; the side slots take the external edge from the
/// far vertex on the same strand, and the external slots take fresh sides.
fn slide(d: &KnotDiagram, e: Edge) -> Result<KnotDiagram> {
    check_edge(d, e)?;
    let faces = d.faces();
    let mut last_err = Error::InapplicableMove(format!("edge {e} bounds no triangle"));
    for face in faces.iter().filter(|f| f.iter().any(|x| x.edge == e)) {
        match triangle(d, face) {
            Ok(sides) => return Ok(slide_triangle(d, sides)),
            Err(err) if face.len() == 3 => last_err = err,
            Err(_) => {}
        }
    }
    Err(last_err)
}

fn slide_triangle(d: &KnotDiagram, sides: [(Slot, Slot); 3]) -> KnotDiagram {
    let opp = |(k, p): Slot| (k, (p + 2) % 4);
    let mut raw = d.crossings().to_vec();
    let m = max_label(d);
    let fresh = [m + 1, m + 2, m + 3];
    // Side i runs from sides[i].0 (at vertex i-1,i) to sides[i].1 (at vertex
    // i,i+1). Its strand's external edges sit opposite those slots.
    let mut writes = vec![];
    for (i, &(s, t)) in sides.iter().enumerate() {
        let ext_s = d.edge_at(opp(s));
        let ext_t = d.edge_at(opp(t));
        writes.push((s, ext_t));
        writes.push((t, ext_s));
        writes.push((opp(s), fresh[i]));
        writes.push((opp(t), fresh[i]));
    }
    for ((k, p), label) in writes {
        raw[k][p] = label;
    }
    KnotDiagram::from_crossings(&raw, d.free_loops()).expect("R3 preserves validity")
}
