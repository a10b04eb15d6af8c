//! Independent reference computations. Nothing here calls into the
//! engine's state enumeration, polynomial or linear-algebra code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use khlab::KnotDiagram;

/// Laurent polynomial as exponent -> coefficient.
pub type P = BTreeMap<i32, i64>;

pub fn p_add(a: &P, b: &P) -> P {
    let mut out = a.clone();
    for (&e, &c) in b {
        *out.entry(e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn p_mul(a: &P, b: &P) -> P {
    let mut out = P::new();
    for (&e1, &c1) in a {
        for (&e2, &c2) in b {
            *out.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn p_mono(c: i64, e: i32) -> P {
    let mut out = P::new();
    if c != 0 {
        out.insert(e, c);
    }
    out
}

pub fn p_pow(a: &P, n: usize) -> P {
    (0..n).fold(p_mono(1, 0), |acc, _| p_mul(&acc, a))
}

/// Same polynomial as the engine's, term by term.
pub fn p_of(poly: &khlab::Poly) -> P {
    poly.terms().map(|(e, &c)| (e, c)).collect()
}

/// Number of loops after smoothing crossing `k` with `choice[k]`
/// (`false` joins a-d and b-c, `true` joins a-b and c-d).
pub fn loops(d: &KnotDiagram, choice: &[bool]) -> usize {
    let n = d.edge_count();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let join = |p: &mut Vec<usize>, a: u32, b: u32| {
        let (ra, rb) = (find(p, a as usize), find(p, b as usize));
        p[ra] = rb;
    };
    for (k, x) in d.crossings().iter().enumerate() {
        let [a, b, c, dd] = *x;
        if choice[k] {
            join(&mut parent, a, b);
            join(&mut parent, c, dd);
        } else {
            join(&mut parent, a, dd);
            join(&mut parent, b, c);
        }
    }
    let mut roots: Vec<usize> = (1..=n).map(|e| find(&mut parent, e)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() + d.free_loops()
}

/// `<K>` in `A` by recursive skein expansion `<X> = A<A> + A^-1<B>`.
pub fn skein_bracket_a(d: &KnotDiagram) -> P {
    fn go(d: &KnotDiagram, choice: &mut Vec<bool>) -> P {
        if choice.len() == d.crossing_count() {
            let delta = p_add(&p_mono(-1, 2), &p_mono(-1, -2));
            return p_pow(&delta, loops(d, choice));
        }
        choice.push(false);
        let a = p_mul(&p_mono(1, 1), &go(d, choice));
        choice.pop();
        choice.push(true);
        let b = p_mul(&p_mono(1, -1), &go(d, choice));
        choice.pop();
        p_add(&a, &b)
    }
    go(d, &mut vec![])
}

/// `A^-c <K>` with `A^2 = -q^-1`.
pub fn skein_bracket_q(d: &KnotDiagram) -> P {
    let c = d.crossing_count() as i32;
    let mut out = P::new();
    for (e, coeff) in skein_bracket_a(d) {
        let e = e - c;
        assert!(e % 2 == 0);
        let m = e / 2;
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        *out.entry(-m).or_insert(0) += sign * coeff;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Determinant by fraction-free elimination.
pub fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors:
/// `d_k = gcd(k x k minors) / gcd((k-1) x (k-1) minors)`.
pub fn brute_invariants(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![];
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Homology over `Z` by brute force on dense blocks: for each `j`, the
/// matrix from degree `i` to `i+1`, using the engine's matrices only as raw
/// integer tables. Returns `(i, j) -> (rank, torsion orders)` in raw
/// gradings.
pub fn brute_homology(cx: &khlab::KhComplex) -> BTreeMap<(i32, i32), (usize, Vec<i128>)> {
    let mut js: Vec<i32> = (0..cx.len()).flat_map(|i| cx.generators(i).iter().map(|g| g.j())).collect();
    js.sort_unstable();
    js.dedup();
    let mut out = BTreeMap::new();
    for j in js {
        let idx: Vec<Vec<usize>> = (0..cx.len())
            .map(|i| (0..cx.generators(i).len()).filter(|&k| cx.generators(i)[k].j() == j).collect())
            .collect();
        let mut ranks = vec![];
        let mut tors: Vec<Vec<i128>> = vec![vec![]; cx.len() + 1];
        for i in 0..cx.len() {
            let next: &[usize] = idx.get(i + 1).map_or(&[], |v| v.as_slice());
            let dense: Vec<Vec<i128>> = next
                .iter()
                .map(|&r| idx[i].iter().map(|&c| cx.differential(i).get(r, c) as i128).collect())
                .collect();
            let inv = brute_invariants(&dense);
            ranks.push(inv.len());
            tors[i + 1] = inv.into_iter().filter(|&d| d > 1).collect();
        }
        for i in 0..cx.len() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let rank = idx[i].len() - ranks[i] - below;
            if rank > 0 || !tors[i].is_empty() {
                out.insert((i as i32, j), (rank, tors[i].clone()));
            }
        }
    }
    out
}

/// Structure constants as matrices over the tensor basis, `(1, x)` order.
pub struct Tables {
    /// 2 x 4
    pub m: Vec<Vec<i64>>,
    /// 4 x 2
    pub delta: Vec<Vec<i64>>,
    /// 1 x 2
    pub eps: Vec<Vec<i64>>,
    /// 2 x 1
    pub eta: Vec<Vec<i64>>,
}

pub fn khovanov_tables() -> Tables {
    Tables {
        m: vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]],
        delta: vec![vec![0, 0], vec![1, 0], vec![1, 0], vec![0, 1]],
        eps: vec![vec![0, 1]],
        eta: vec![vec![1], vec![0]],
    }
}

pub fn lee_tables() -> Tables {
    Tables {
        m: vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]],
        delta: vec![vec![0, 1], vec![1, 0], vec![1, 0], vec![0, 1]],
        eps: vec![vec![0, 1]],
        eta: vec![vec![1], vec![0]],
    }
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect())
        .collect()
}

pub fn kron(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![0; a[0].len() * bc]; a.len() * br];
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, &y) in brow.iter().enumerate() {
                    out[i * br + k][j * bc + l] = x * y;
                }
            }
        }
    }
    out
}

pub fn id(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}
