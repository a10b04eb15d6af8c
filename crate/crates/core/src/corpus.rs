//! Bundled diagrams and Reidemeister-related diagram pairs.

use crate::diagram::{parse_pd, sites, BraidWord, KnotDiagram, Move, Site, Strand};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub diagram: KnotDiagram,
}

impl CorpusEntry {
    fn new(name: &str, diagram: KnotDiagram) -> Self {
        CorpusEntry { name: name.to_string(), diagram }
    }
}

/// A diagram and a Reidemeister-move variant of it.
#[derive(Clone, Debug)]
pub struct ReidemeisterPair {
    pub name: String,
    pub original: KnotDiagram,
    pub moved: KnotDiagram,
}

fn braid(n: usize, letters: &[i32]) -> KnotDiagram {
    BraidWord::new(n, letters.to_vec()).expect("valid braid").close()
}

pub fn right_trefoil() -> KnotDiagram {
    parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").expect("valid PD")
}

fn kink(d: &KnotDiagram, mv: Move, strand: Strand, flipped: bool) -> KnotDiagram {
    d.apply(mv, Site::Kink { strand, flipped }).expect("kinks apply to every strand")
}

fn first_applicable(d: &KnotDiagram, mv: Move, skip: usize) -> KnotDiagram {
    sites(d, mv)
        .into_iter()
        .filter_map(|s| d.apply(mv, s).ok())
        .nth(skip)
        .unwrap_or_else(|| panic!("no {mv:?} site"))
}

/// The base diagrams: unknots with 0 to 2 kinks, both trefoils, the
/// figure-eight knot, the Hopf link, the 2-component unlink, `T(2,5)`,
/// `T(2,7)` and connected sums of trefoils.
pub fn small() -> Vec<CorpusEntry> {
    let u = KnotDiagram::unknot();
    let u1 = kink(&u, Move::R1Plus, Strand::Loop(0), false);
    let u2 = kink(&u1, Move::R1Minus, Strand::Edge(1), true);
    let rh = right_trefoil();
    let lh = rh.mirror();
    vec![
        CorpusEntry::new("unknot", u),
        CorpusEntry::new("unknot-1-kink", u1),
        CorpusEntry::new("unknot-2-kinks", u2),
        CorpusEntry::new("trefoil-right", rh.clone()),
        CorpusEntry::new("trefoil-left", lh.clone()),
        CorpusEntry::new("figure-eight", braid(3, &[1, -2, 1, -2])),
        CorpusEntry::new("hopf", braid(2, &[1, 1])),
        CorpusEntry::new("unlink-2", KnotDiagram::unlink(2)),
        CorpusEntry::new("torus-2-5", braid(2, &[1; 5])),
        CorpusEntry::new("torus-2-7", braid(2, &[1; 7])),
        CorpusEntry::new("trefoil-right#trefoil-right", rh.connected_sum(&rh)),
        CorpusEntry::new("trefoil-right#trefoil-left", rh.connected_sum(&lh)),
    ]
}

/// Pairs of diagrams that differ by one Reidemeister move.
pub fn reidemeister_pairs() -> Vec<ReidemeisterPair> {
    let u = KnotDiagram::unknot();
    let rh = right_trefoil();
    let lh = rh.mirror();
    let f8 = braid(3, &[1, -2, 1, -2]);
    let hopf = braid(2, &[1, 1]);
    let unlink = KnotDiagram::unlink(2);
    let t25 = braid(2, &[1; 5]);
    let rh_r2 = first_applicable(&rh, Move::R2, 0);
    // an R2 variant with a triangle to slide across
    let (rh_tri, rh_tri_r3) = sites(&rh, Move::R2)
        .into_iter()
        .filter_map(|s| rh.apply(Move::R2, s).ok())
        .find_map(|k| {
            let moved = sites(&k, Move::R3).into_iter().find_map(|s| k.apply(Move::R3, s).ok())?;
            Some((k, moved))
        })
        .expect("some R2 variant of the trefoil admits R3");
    let f8_r2 = first_applicable(&f8, Move::R2, 1);
    let pair = |name: &str, original: &KnotDiagram, moved: KnotDiagram| ReidemeisterPair {
        name: name.to_string(),
        original: original.clone(),
        moved,
    };
    vec![
        pair("unknot/R1+", &u, kink(&u, Move::R1Plus, Strand::Loop(0), false)),
        pair("unknot/R1-", &u, kink(&u, Move::R1Minus, Strand::Loop(0), true)),
        pair("trefoil-right/R1+", &rh, kink(&rh, Move::R1Plus, Strand::Edge(1), false)),
        pair("trefoil-right/R1-", &rh, kink(&rh, Move::R1Minus, Strand::Edge(2), true)),
        pair("trefoil-right/R2", &rh, rh_r2.clone()),
        pair("trefoil-right/R2/R3", &rh_tri, rh_tri_r3),
        pair("trefoil-left/R2", &lh, first_applicable(&lh, Move::R2, 2)),
        pair("figure-eight/R1-", &f8, kink(&f8, Move::R1Minus, Strand::Edge(3), false)),
        pair("figure-eight/R2", &f8, f8_r2),
        pair("hopf/R2", &hopf, first_applicable(&hopf, Move::R2, 0)),
        pair(
            "unlink-2/R2",
            &unlink,
            unlink
                .apply(Move::R2, Site::Pair { over: Strand::Loop(0), under: Strand::Loop(1) })
                .expect("two circles bound a common region"),
        ),
        pair("torus-2-5/R1+", &t25, kink(&t25, Move::R1Plus, Strand::Edge(4), true)),
    ]
}

/// Named collections: `small`, `reidemeister` (both sides of every pair)
/// and `all`, or a single entry of `small` by name.
pub fn corpus(name: &str) -> Result<Vec<CorpusEntry>> {
    let variants = || {
        reidemeister_pairs()
            .into_iter()
            .flat_map(|p| {
                [
                    CorpusEntry { name: format!("{}:before", p.name), diagram: p.original },
                    CorpusEntry { name: format!("{}:after", p.name), diagram: p.moved },
                ]
            })
            .collect::<Vec<_>>()
    };
    match name {
        "small" => Ok(small()),
        "reidemeister" => Ok(variants()),
        "all" => {
            let mut v = small();
            v.extend(variants());
            Ok(v)
        }
        other => small()
            .into_iter()
            .find(|e| e.name == other)
            .map(|e| vec![e])
            .ok_or_else(|| Error::UnknownCorpus(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let s = small();
        assert_eq!(s.len(), 12);
        for e in &s {
            assert!(e.diagram.crossing_count() <= 8, "{}", e.name);
        }
        let counts: Vec<usize> = s.iter().map(|e| e.diagram.crossing_count()).collect();
        assert_eq!(counts, vec![0, 1, 2, 3, 3, 4, 2, 0, 5, 7, 6, 6]);
        let comps: Vec<usize> = s.iter().map(|e| e.diagram.component_count()).collect();
        assert_eq!(comps, vec![1, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn pairs() {
        let p = reidemeister_pairs();
        assert!(p.len() >= 10);
        for pair in &p {
            assert!(pair.moved.crossing_count() <= 8, "{}", pair.name);
            assert_eq!(pair.original.component_count(), pair.moved.component_count(), "{}", pair.name);
            assert_ne!(pair.original, pair.moved, "{}", pair.name);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(corpus("hopf").unwrap().len(), 1);
        assert_eq!(corpus("all").unwrap().len(), 12 + 2 * reidemeister_pairs().len());
        assert!(matches!(corpus("nope"), Err(Error::UnknownCorpus(_))));
    }
}
