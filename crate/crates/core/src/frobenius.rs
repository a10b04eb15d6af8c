//! The two Frobenius algebras on `V = span{1, x}`.
//!
//! Khovanov: `x^2 = 0`, `Delta(1) = 1(x)x + x(x)1`, `Delta(x) = x(x)x`.
//! Lee: `x^2 = 1`, `Delta(x) = x(x)x + 1(x)1`, same `Delta(1)`.
//! Both have `eps(1) = 0`, `eps(x) = 1`, `eta(1) = 1`.
//!
//! Elements of `V^(x)n` are coefficient vectors of length `2^n` over the
//! tensor basis in lexicographic order, the first factor most significant;
//! basis index 0 is `1` and 1 is `x`.

use serde::{Deserialize, Serialize};

use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrobeniusAlgebra {
    Khovanov,
    Lee,
}

impl FrobeniusAlgebra {
    pub fn spec(self) -> FrobeniusAlgebraSpec {
        match self {
            FrobeniusAlgebra::Khovanov => FrobeniusAlgebraSpec {
                name: self,
                mul_table: [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
                comul_table: [[0, 1, 1, 0], [0, 0, 0, 1]],
                counit: [0, 1],
                unit: [1, 0],
            },
            FrobeniusAlgebra::Lee => FrobeniusAlgebraSpec {
                name: self,
                mul_table: [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
                comul_table: [[0, 1, 1, 0], [1, 0, 0, 1]],
                counit: [0, 1],
                unit: [1, 0],
            },
        }
    }
}

/// Structure constants over the basis `(1, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebraSpec {
    pub name: FrobeniusAlgebra,
    /// `mul_table[a][b]` is `m(a, b)` as `[coeff of 1, coeff of x]`.
    pub mul_table: [[[i64; 2]; 2]; 2],
    /// `comul_table[a]` is `Delta(a)` over `(11, 1x, x1, xx)`.
    pub comul_table: [[i64; 4]; 2],
    pub counit: [i64; 2],
    pub unit: [i64; 2],
}

/// An element of `V^(x)n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<R> {
    factors: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> AlgebraElement<R> {
    pub fn zero(factors: usize) -> Self {
        AlgebraElement { factors, coeffs: vec![R::zero(); 1 << factors] }
    }

    /// The tensor basis vector with index `basis`.
    pub fn basis(factors: usize, basis: usize) -> Self {
        let mut e = Self::zero(factors);
        e.coeffs[basis] = R::one();
        e
    }

    /// `c1 * 1 + cx * x` in `V`.
    pub fn new(c1: R, cx: R) -> Self {
        AlgebraElement { factors: 1, coeffs: vec![c1, cx] }
    }

    pub fn one() -> Self {
        Self::basis(1, 0)
    }

    pub fn x() -> Self {
        Self::basis(1, 1)
    }

    /// The scalar `c` as an element of `V^(x)0`.
    pub fn scalar(c: R) -> Self {
        AlgebraElement { factors: 0, coeffs: vec![c] }
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, basis: usize) -> &R {
        &self.coeffs[basis]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.factors + other.factors);
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                out.coeffs[a << other.factors | b] = ca.clone() * cb.clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.factors, other.factors);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        AlgebraElement { factors: self.factors, coeffs }
    }

    pub fn scale(&self, s: &R) -> Self {
        AlgebraElement { factors: self.factors, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Apply a map `V^(x)k -> V^(x)l`, given on basis vectors, to factors
    /// `pos..pos+k`.
    pub fn apply_at(&self, pos: usize, k: usize, l: usize, f: impl Fn(usize) -> Vec<R>) -> Self {
        assert!(pos + k <= self.factors);
        let after = self.factors - pos - k;
        let n = self.factors - k + l;
        let mut out = Self::zero(n);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tail = idx & ((1 << after) - 1);
            let mid = (idx >> after) & ((1 << k) - 1);
            let head = idx >> (after + k);
            for (img, v) in f(mid).into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let j = (head << (l + after)) | (img << after) | tail;
                out.coeffs[j] = out.coeffs[j].clone() + c.clone() * v;
            }
        }
        out
    }
}

fn lift<R: Ring>(v: &[i64]) -> Vec<R> {
    v.iter().map(|&c| R::from_i64(c)).collect()
}

impl FrobeniusAlgebraSpec {
    pub fn mul_basis<R: Ring>(&self, a: usize, b: usize) -> [R; 2] {
        self.mul_table[a][b].map(R::from_i64)
    }

    pub fn comul_basis<R: Ring>(&self, a: usize) -> [R; 4] {
        self.comul_table[a].map(R::from_i64)
    }

    pub fn mul<R: Ring>(&self, a: &AlgebraElement<R>, b: &AlgebraElement<R>) -> AlgebraElement<R> {
        self.m_at(&a.tensor(b), 0)
    }

    pub fn comul<R: Ring>(&self, a: &AlgebraElement<R>) -> AlgebraElement<R> {
        self.delta_at(a, 0)
    }

    pub fn counit<R: Ring>(&self, a: &AlgebraElement<R>) -> R {
        assert_eq!(a.factors(), 1);
        self.eps_at(a, 0).coeffs[0].clone()
    }

    pub fn unit<R: Ring>(&self, n: R) -> AlgebraElement<R> {
        self.eta_at(&AlgebraElement::scalar(n), 0)
    }

    /// `m` on factors `pos, pos+1`.
    pub fn m_at<R: Ring>(&self, t: &AlgebraElement<R>, pos: usize) -> AlgebraElement<R> {
        t.apply_at(pos, 2, 1, |ab| lift(&self.mul_table[ab >> 1][ab & 1]))
    }

    /// `Delta` on factor `pos`.
    pub fn delta_at<R: Ring>(&self, t: &AlgebraElement<R>, pos: usize) -> AlgebraElement<R> {
        t.apply_at(pos, 1, 2, |a| lift(&self.comul_table[a]))
    }

    /// `eps` on factor `pos`.
    pub fn eps_at<R: Ring>(&self, t: &AlgebraElement<R>, pos: usize) -> AlgebraElement<R> {
        t.apply_at(pos, 1, 0, |a| lift(&[self.counit[a]]))
    }

    /// `eta` inserted before factor `pos`.
    pub fn eta_at<R: Ring>(&self, t: &AlgebraElement<R>, pos: usize) -> AlgebraElement<R> {
        t.apply_at(pos, 0, 1, |_| lift(&self.unit))
    }

    /// `eps((m Delta)^genus (eta(1)))`: the value of a closed surface.
    pub fn closed_surface_value<R: Ring>(&self, genus: usize) -> R {
        let mut v = self.unit(R::one());
        for _ in 0..genus {
            v = self.m_at(&self.delta_at(&v, 0), 0);
        }
        self.counit(&v)
    }

    /// The pairing `<a|b> = eps(ab)`.
    pub fn pairing<R: Ring>(&self, a: &AlgebraElement<R>, b: &AlgebraElement<R>) -> R {
        self.counit(&self.mul(a, b))
    }

    fn basis_inputs<R: Ring>(n: usize) -> impl Iterator<Item = AlgebraElement<R>> {
        (0..1usize << n).map(move |b| AlgebraElement::basis(n, b))
    }

    pub fn is_associative(&self) -> bool {
        Self::basis_inputs::<i64>(3).all(|t| self.m_at(&self.m_at(&t, 0), 0) == self.m_at(&self.m_at(&t, 1), 0))
    }

    pub fn is_coassociative(&self) -> bool {
        Self::basis_inputs::<i64>(1)
            .all(|t| self.delta_at(&self.delta_at(&t, 0), 0) == self.delta_at(&self.delta_at(&t, 0), 1))
    }

    pub fn is_commutative(&self) -> bool {
        (0..2).all(|a| (0..2).all(|b| self.mul_table[a][b] == self.mul_table[b][a]))
            && (0..2).all(|a| {
                let d = self.comul_table[a];
                d[1] == d[2]
            })
    }

    /// `m(eta(1), a) = a = m(a, eta(1))`.
    pub fn satisfies_unit_laws(&self) -> bool {
        Self::basis_inputs::<i64>(1).all(|a| {
            let left = self.m_at(&self.eta_at(&a, 0), 0);
            let right = self.m_at(&self.eta_at(&a, 1), 0);
            left == a && right == a
        })
    }

    /// `sum eps(a1) a2 = a = sum a1 eps(a2)`.
    pub fn satisfies_counit_laws(&self) -> bool {
        Self::basis_inputs::<i64>(1).all(|a| {
            let d = self.delta_at(&a, 0);
            self.eps_at(&d, 0) == a && self.eps_at(&d, 1) == a
        })
    }

    /// `(1(x)m)(Delta(x)1) = Delta m = (m(x)1)(1(x)Delta)` on `V(x)V`.
    pub fn satisfies_frobenius(&self) -> bool {
        Self::basis_inputs::<i64>(2).all(|t| {
            let dm = self.delta_at(&self.m_at(&t, 0), 0);
            let left = self.m_at(&self.delta_at(&t, 0), 1);
            let right = self.m_at(&self.delta_at(&t, 1), 0);
            dm == left && dm == right
        })
    }

    /// `eps(ab) = eps(ax) eps(b) + eps(a) eps(bx)` for basis `a, b`.
    pub fn satisfies_tube_cutting(&self) -> bool {
        let x = AlgebraElement::<i64>::x();
        Self::basis_inputs::<i64>(1).all(|a| {
            Self::basis_inputs::<i64>(1).all(|b| {
                let lhs = self.pairing(&a, &b);
                let rhs = self.pairing(&a, &x) * self.counit(&b) + self.counit(&a) * self.pairing(&b, &x);
                lhs == rhs
            })
        })
    }

    /// The Gram matrix of the pairing is invertible over the integers and
    /// `<ab|c> = <a|bc>`.
    pub fn pairing_is_nondegenerate(&self) -> bool {
        let e = |a: usize, b: usize| {
            self.pairing(&AlgebraElement::<i64>::basis(1, a), &AlgebraElement::basis(1, b))
        };
        let det = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        let invariant = Self::basis_inputs::<i64>(3).all(|t| {
            // t = a(x)b(x)c
            let ab_c = self.eps_at(&self.m_at(&self.m_at(&t, 0), 0), 0);
            let a_bc = self.eps_at(&self.m_at(&self.m_at(&t, 1), 0), 0);
            ab_c == a_bc
        });
        det.abs() == 1 && invariant
    }

    /// The functional on `V^(x)4` of four spheres with pieces `i` and `j`
    /// joined by a tube: `eps(a_i a_j) prod_{k != i,j} eps(a_k)`.
    pub fn tube_functional(&self, i: usize, j: usize, a: [usize; 4]) -> i64 {
        let el = |k: usize| AlgebraElement::<i64>::basis(1, a[k]);
        let joined = self.pairing(&el(i), &el(j));
        (0..4).filter(|&k| k != i && k != j).fold(joined, |acc, k| acc * self.counit(&el(k)))
    }

    /// The same functional with the tube cut:
    /// `eps(a_i x) eps(a_j) + eps(a_i) eps(a_j x)` times the other caps.
    pub fn cut_tube_functional(&self, i: usize, j: usize, a: [usize; 4]) -> i64 {
        let x = AlgebraElement::<i64>::x();
        let dotted = |k: usize| -> i64 {
            (0..4)
                .map(|l| {
                    let el = AlgebraElement::<i64>::basis(1, a[l]);
                    if l == k {
                        self.pairing(&el, &x)
                    } else {
                        self.counit(&el)
                    }
                })
                .product()
        };
        dotted(i) + dotted(j)
    }

    /// `C12 + C34 = C13 + C24` on every basis input, both for the direct
    /// tube functionals and after cutting each tube; the two forms must
    /// also agree with each other.
    pub fn satisfies_four_tu(&self) -> bool {
        (0..16usize).all(|bits| {
            let a = [bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1];
            let c = |i, j| self.tube_functional(i, j, a);
            let cut = |i, j| self.cut_tube_functional(i, j, a);
            let direct = c(0, 1) + c(2, 3) == c(0, 2) + c(1, 3);
            let expanded = cut(0, 1) + cut(2, 3) == cut(0, 2) + cut(1, 3);
            let agree = [(0, 1), (2, 3), (0, 2), (1, 3)].iter().all(|&(i, j)| c(i, j) == cut(i, j));
            direct && expanded && agree
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = AlgebraElement<i64>;

    #[test]
    fn tables() {
        let kh = FrobeniusAlgebra::Khovanov.spec();
        let lee = FrobeniusAlgebra::Lee.spec();
        assert!(kh.mul(&E::x(), &E::x()).is_zero());
        assert_eq!(lee.mul(&E::x(), &E::x()), E::one());
        let a = E::new(3, -2);
        assert_eq!(kh.mul(&E::one(), &a), a);
        assert_eq!(kh.comul(&E::one()), E::one().tensor(&E::x()).add(&E::x().tensor(&E::one())));
        assert_eq!(kh.comul(&E::x()), E::x().tensor(&E::x()));
        assert_eq!(lee.comul(&E::x()), E::x().tensor(&E::x()).add(&E::one().tensor(&E::one())));
        assert!(kh.comul(&E::new(0, 0)).is_zero());
        assert_eq!(kh.counit(&E::one()), 0);
        assert_eq!(kh.counit(&E::x()), 1);
        assert_eq!(kh.unit(1i64), E::one());
    }

    #[test]
    fn closed_surfaces() {
        let kh = FrobeniusAlgebra::Khovanov.spec();
        assert_eq!(kh.closed_surface_value::<i64>(0), 0);
        assert_eq!(kh.closed_surface_value::<i64>(1), 2);
        assert_eq!(kh.closed_surface_value::<i64>(2), 0);
        let lee = FrobeniusAlgebra::Lee.spec();
        // m Delta (1) = 2x and m Delta (x) = 2
        assert_eq!(lee.closed_surface_value::<i64>(1), 2);
        assert_eq!(lee.closed_surface_value::<i64>(2), 0);
        assert_eq!(lee.closed_surface_value::<i64>(3), 8);
    }

    #[test]
    fn identities() {
        for alg in [FrobeniusAlgebra::Khovanov, FrobeniusAlgebra::Lee] {
            let s = alg.spec();
            assert!(s.is_associative(), "{alg:?}");
            assert!(s.is_coassociative(), "{alg:?}");
            assert!(s.is_commutative(), "{alg:?}");
            assert!(s.satisfies_unit_laws(), "{alg:?}");
            assert!(s.satisfies_counit_laws(), "{alg:?}");
            assert!(s.satisfies_frobenius(), "{alg:?}");
            assert!(s.pairing_is_nondegenerate(), "{alg:?}");
            assert!(s.satisfies_four_tu(), "{alg:?}");
        }
        assert!(FrobeniusAlgebra::Khovanov.spec().satisfies_tube_cutting());
    }

    #[test]
    fn broken_tables_are_caught() {
        let mut s = FrobeniusAlgebra::Khovanov.spec();
        s.comul_table[1] = [0, 1, 0, 1];
        assert!(!s.satisfies_frobenius());
        let mut s = FrobeniusAlgebra::Khovanov.spec();
        s.counit = [1, 1];
        assert!(!s.satisfies_counit_laws());
        assert!(!s.satisfies_tube_cutting());
    }

    #[test]
    fn apply_at_positions() {
        let kh = FrobeniusAlgebra::Khovanov.spec();
        // 1 (x) x (x) 1 -> m on the last two -> 1 (x) x
        let t = E::basis(3, 0b010);
        assert_eq!(kh.m_at(&t, 1), E::basis(2, 0b01));
        assert_eq!(kh.m_at(&t, 0), E::basis(2, 0b10));
        let d = kh.delta_at(&E::basis(2, 0b10), 0);
        assert_eq!(d, E::basis(3, 0b110));
    }
}
