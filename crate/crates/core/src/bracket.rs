//! Bracket polynomial and the Jones polynomial in the `q` normalisation.
//!
//! Two routes are kept side by side and checked against each other:
//! the state/enhanced-state sums over [`crate::resolution`], and a
//! memoised skein expansion that never builds a full state.

use std::collections::HashMap;

use crate::diagram::{Edge, KnotDiagram};
use crate::error::Result;
use crate::resolution::{enumerate_enhanced, enumerate_states};

pub type Poly = crate::poly::LaurentPoly<i64>;

/// `delta = -A^2 - A^-2`.
pub fn delta() -> Poly {
    Poly::from_terms('A', [(2, -1), (-2, -1)])
}

/// `q + q^-1`, the value of a circle.
pub fn circle_q() -> Poly {
    Poly::from_terms('q', [(1, 1), (-1, 1)])
}

/// `<K> = sum_S A^(#A - #B) delta^||S||`.
pub fn bracket_a(d: &KnotDiagram, cap: usize) -> Result<Poly> {
    let c = d.crossing_count() as i32;
    let del = delta();
    let mut out = Poly::zero_in('A');
    for s in enumerate_states(d, cap)? {
        let b = s.resolution().b_count() as i32;
        let weight = Poly::monomial('A', 1, c - 2 * b);
        out = &out + &(&weight * &del.pow(s.loop_count() as u32));
    }
    Ok(out)
}

/// `<K>_q = sum_s (-1)^i(s) q^j(s)` over enhanced states.
pub fn bracket_q(d: &KnotDiagram, cap: usize) -> Result<Poly> {
    let mut out = Poly::zero_in('q');
    for s in enumerate_enhanced(d, cap)? {
        out.add_term(s.j(), if s.i() % 2 == 0 { 1 } else { -1 });
    }
    Ok(out)
}

/// Rewrite an A-bracket of a `c`-crossing diagram in `q`: multiply by
/// `A^-c`, then put `A^2 = -q^-1`.
pub fn a_to_q(p: &Poly, crossings: usize) -> Poly {
    let shifted = p.shift(-(crossings as i32));
    let mut out = Poly::zero_in('q');
    for (e, &c) in shifted.terms() {
        assert!(e % 2 == 0, "odd exponent {e} after normalisation");
        let m = e / 2;
        out.add_term(-m, if m.rem_euclid(2) == 0 { c } else { -c });
    }
    out
}

/// `J_K = (-1)^n- q^(n+ - 2n-) <K>_q`.
pub fn jones(d: &KnotDiagram, cap: usize) -> Result<Poly> {
    Ok(normalize(d, &bracket_q(d, cap)?))
}

pub(crate) fn normalize(d: &KnotDiagram, bracket: &Poly) -> Poly {
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    bracket.shift(np - 2 * nm).scale(&sign)
}

/// Skein expansion `<X> = A<A-smoothing> + A^-1<B-smoothing>`, crossing by
/// crossing, memoised on the connectivity of the still-open strands.
pub fn skein_bracket_a(d: &KnotDiagram) -> Poly {
    // last crossing touching each edge
    let mut last = vec![0usize; d.edge_count()];
    for (k, x) in d.crossings().iter().enumerate() {
        for &e in x {
            last[e as usize - 1] = k;
        }
    }
    let mut memo = HashMap::new();
    let body = expand(d, &last, 0, Vec::new(), &mut memo);
    let free = delta().pow(d.free_loops() as u32);
    &body * &free
}

/// `open` lists `(edge, class)` for edges seen once so far, sorted by edge,
/// with classes numbered by first appearance.
type Frontier = Vec<(Edge, u32)>;

fn expand(
    d: &KnotDiagram,
    last: &[usize],
    k: usize,
    open: Frontier,
    memo: &mut HashMap<(usize, Frontier), Poly>,
) -> Poly {
    if k == d.crossing_count() {
        debug_assert!(open.is_empty());
        return Poly::one_in('A');
    }
    if let Some(p) = memo.get(&(k, open.clone())) {
        return p.clone();
    }
    let [a, b, c, dd] = d.crossings()[k];
    let mut out = Poly::zero_in('A');
    for (pairs, weight) in [([(a, dd), (b, c)], 1), ([(a, b), (c, dd)], -1)] {
        let (next, closed) = glue(&open, &pairs, last, k);
        let sub = expand(d, last, k + 1, next, memo);
        let term = &Poly::monomial('A', 1, weight) * &(&sub * &delta().pow(closed));
        out = &out + &term;
    }
    memo.insert((k, open), out.clone());
    out
}

/// Join the pairs into the frontier; return the new canonical frontier and
/// the number of loops that closed.
fn glue(open: &Frontier, pairs: &[(Edge, Edge); 2], last: &[usize], k: usize) -> (Frontier, u32) {
    let mut nodes: Vec<Edge> = open.iter().map(|&(e, _)| e).collect();
    let mut parent: Vec<usize> = vec![];
    let mut class_root: HashMap<u32, usize> = HashMap::new();
    for (i, &(_, cls)) in open.iter().enumerate() {
        let root = *class_root.entry(cls).or_insert(i);
        parent.push(root);
    }
    let index = |nodes: &mut Vec<Edge>, parent: &mut Vec<usize>, e: Edge| -> usize {
        match nodes.iter().position(|&x| x == e) {
            Some(i) => i,
            None => {
                nodes.push(e);
                parent.push(parent.len());
                parent.len() - 1
            }
        }
    };
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(x, y) in pairs {
        let ix = index(&mut nodes, &mut parent, x);
        let iy = index(&mut nodes, &mut parent, y);
        let (rx, ry) = (find(&mut parent, ix), find(&mut parent, iy));
        if rx != ry {
            parent[rx] = ry;
        }
    }
    let roots: Vec<usize> = (0..nodes.len()).map(|i| find(&mut parent, i)).collect();
    let still_open: Vec<bool> = nodes.iter().map(|&e| last[e as usize - 1] > k).collect();
    let mut live_roots = std::collections::BTreeSet::new();
    let mut all_roots = std::collections::BTreeSet::new();
    for i in 0..nodes.len() {
        all_roots.insert(roots[i]);
        if still_open[i] {
            live_roots.insert(roots[i]);
        }
    }
    let closed = (all_roots.len() - live_roots.len()) as u32;
    let mut order: Vec<usize> = (0..nodes.len()).filter(|&i| still_open[i]).collect();
    order.sort_by_key(|&i| nodes[i]);
    let mut relabel: HashMap<usize, u32> = HashMap::new();
    let frontier = order
        .into_iter()
        .map(|i| {
            let next = relabel.len() as u32;
            let cls = *relabel.entry(roots[i]).or_insert(next);
            (nodes[i], cls)
        })
        .collect();
    (frontier, closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, BraidWord, Move, Site, Strand};
    use crate::resolution::DEFAULT_CAP;

    fn p(terms: &[(i32, i64)]) -> Poly {
        Poly::from_terms('q', terms.iter().copied())
    }

    fn trefoil() -> KnotDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    #[test]
    fn unknot_values() {
        let u = KnotDiagram::unknot();
        assert_eq!(bracket_a(&u, DEFAULT_CAP).unwrap(), delta());
        assert_eq!(bracket_q(&u, DEFAULT_CAP).unwrap(), circle_q());
        assert_eq!(jones(&u, DEFAULT_CAP).unwrap(), circle_q());
        assert_eq!(skein_bracket_a(&u), delta());
    }

    #[test]
    fn kinks() {
        let u = KnotDiagram::unknot();
        let pos = u.apply(Move::R1Plus, Site::Kink { strand: Strand::Loop(0), flipped: false }).unwrap();
        let neg = u.apply(Move::R1Minus, Site::Kink { strand: Strand::Loop(0), flipped: false }).unwrap();
        // <R-curl> = -A^3 <arc>
        let curl = &Poly::monomial('A', -1, 3) * &delta();
        assert_eq!(bracket_a(&pos, DEFAULT_CAP).unwrap(), curl);
        assert_eq!(bracket_a(&neg, DEFAULT_CAP).unwrap(), &Poly::monomial('A', -1, -3) * &delta());
        assert_eq!(bracket_q(&pos, DEFAULT_CAP).unwrap(), circle_q().shift(-1));
        assert_eq!(bracket_q(&neg, DEFAULT_CAP).unwrap(), circle_q().shift(2).scale(&-1));
        assert_eq!(jones(&pos, DEFAULT_CAP).unwrap(), circle_q());
        assert_eq!(jones(&neg, DEFAULT_CAP).unwrap(), circle_q());
    }

    #[test]
    fn trefoil_jones() {
        let t = trefoil();
        assert_eq!(jones(&t, DEFAULT_CAP).unwrap(), p(&[(1, 1), (3, 1), (5, 1), (9, -1)]));
        assert_eq!(
            jones(&t.mirror(), DEFAULT_CAP).unwrap(),
            p(&[(-1, 1), (-3, 1), (-5, 1), (-9, -1)])
        );
    }

    #[test]
    fn routes_agree() {
        for w in [vec![1, 1, 1], vec![1, -2, 1, -2], vec![1, 1], vec![1, 1, 1, 1, 1], vec![]] {
            let d = BraidWord::new(3, w).unwrap().close();
            let a = bracket_a(&d, DEFAULT_CAP).unwrap();
            assert_eq!(a, skein_bracket_a(&d));
            assert_eq!(a_to_q(&a, d.crossing_count()), bracket_q(&d, DEFAULT_CAP).unwrap());
        }
    }

    #[test]
    fn figure_eight_and_hopf() {
        let f8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap().close();
        assert_eq!(jones(&f8, DEFAULT_CAP).unwrap(), p(&[(-5, 1), (5, 1)]));
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap().close();
        assert_eq!(jones(&hopf, DEFAULT_CAP).unwrap(), p(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
        let unlink = KnotDiagram::unlink(2);
        assert_eq!(jones(&unlink, DEFAULT_CAP).unwrap(), &circle_q() * &circle_q());
    }
}
