//! Laurent polynomials in one and two variables with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ring::Ring;

/// `sum c_k v^k`, `k` any integer. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Serialize", deserialize = "R: Deserialize<'de>"))]
pub struct LaurentPoly<R> {
    var: char,
    terms: BTreeMap<i32, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero_in(var: char) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one_in(var: char) -> Self {
        Self::monomial(var, R::one(), 0)
    }

    pub fn monomial(var: char, c: R, exp: i32) -> Self {
        let mut p = Self::zero_in(var);
        p.add_term(exp, c);
        p
    }

    /// The variable itself.
    pub fn var(var: char) -> Self {
        Self::monomial(var, R::one(), 1)
    }

    pub fn from_terms(var: char, terms: impl IntoIterator<Item = (i32, R)>) -> Self {
        let mut p = Self::zero_in(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn variable(&self) -> char {
        self.var
    }

    pub fn add_term(&mut self, exp: i32, c: R) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(R::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &R)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, s: &R) -> Self {
        Self::from_terms(self.var, self.terms.iter().map(|(&e, c)| (e, c.clone() * s.clone())))
    }

    /// `p(v) -> p(v^k)`; `k = -1` is the mirror substitution.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.var, self.terms.iter().map(|(&e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one_in(self.var);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn with_var(&self, var: char) -> Self {
        LaurentPoly { var, terms: self.terms.clone() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.var, self.terms.iter().map(|(&e, c)| (e, f(c))))
    }
}

impl LaurentPoly<i64> {
    pub fn eval(&self, v: Complex64) -> Complex64 {
        self.terms.iter().map(|(&e, &c)| v.powi(e) * c as f64).sum()
    }

    /// JSON object keyed by exponent.
    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> =
            self.terms.iter().map(|(e, c)| (e.to_string(), (*c).into())).collect();
        serde_json::Value::Object(m)
    }
}

impl<R: Ring> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<R: Ring> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<R: Ring> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero_in(self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<R: Ring> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        self.scale(&-R::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<R: Ring> $tr for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $f(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> std::iter::Sum for LaurentPoly<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut out: Option<Self> = None;
        for p in iter {
            out = Some(match out {
                None => p,
                Some(acc) => &acc + &p,
            });
        }
        out.unwrap_or_else(|| LaurentPoly::zero_in('q'))
    }
}

/// Display helper shared by one- and two-variable polynomials.
trait DisplayCoeff {
    fn is_negative(&self) -> bool;
    fn abs_string(&self) -> String;
}

impl DisplayCoeff for i64 {
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_string(&self) -> String {
        self.unsigned_abs().to_string()
    }
}

fn render_terms<'a, C: DisplayCoeff + 'a>(
    terms: impl Iterator<Item = (String, &'a C)>,
) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs_string();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn power(var: char, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for LaurentPoly<i64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|(&e, c)| (power(self.var, e), c))))
    }
}

impl<R: fmt::Debug> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]{:?}", self.var, self.terms)
    }
}

/// Two-variable Laurent polynomial `sum c t^i q^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct PoincarePoly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl PoincarePoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t: i32, q: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((t, q)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coeff(&self, t: i32, q: i32) -> i64 {
        self.terms.get(&(t, q)).copied().unwrap_or(0)
    }

    /// Terms as `((t exponent, q exponent), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Specialise `t = -1`.
    pub fn at_t_minus_one(&self) -> LaurentPoly<i64> {
        LaurentPoly::from_terms(
            'q',
            self.terms.iter().map(|(&(t, q), &c)| (q, if t.rem_euclid(2) == 0 { c } else { -c })),
        )
    }

    pub fn eval(&self, t: Complex64, q: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(i, j), &c)| t.powi(i) * q.powi(j) * c as f64).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(t, q), &c)| serde_json::json!({"t": t, "q": q, "coeff": c}))
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // ordered by homological degree, then quantum degree
        f.write_str(&render_terms(
            self.terms.iter().map(|(&(t, q), c)| (format!("{}{}", power('t', t), power('q', q)), c)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<i64>;

    #[test]
    fn arithmetic() {
        let q = P::var('q');
        let u = &q + &q.shift(-2);
        assert_eq!(u.to_string(), "q^-1 + q");
        let sq = &u * &u;
        assert_eq!(sq.to_string(), "q^-2 + 2 + q^2");
        assert_eq!((&sq - &sq).to_string(), "0");
        assert_eq!(u.pow(0), P::one_in('q'));
        let m = P::from_terms('q', [(1, 1), (3, 1), (5, 1), (9, -1)]);
        assert_eq!(m.to_string(), "q + q^3 + q^5 - q^9");
        assert_eq!((-&m).to_string(), "-q - q^3 - q^5 + q^9");
        assert_eq!(m.substitute_power(-1).max_degree(), Some(-1));
    }

    #[test]
    fn eval_on_circle() {
        let u = P::from_terms('q', [(-1, 1), (1, 1)]);
        let z = Complex64::from_polar(1.0, 0.3);
        let v = u.eval(z);
        assert!((v.re - 2.0 * 0.3f64.cos()).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn poincare_rendering() {
        let mut p = PoincarePoly::new();
        p.add_term(0, 1, 1);
        p.add_term(0, 3, 1);
        p.add_term(2, 5, 1);
        p.add_term(3, 9, 1);
        assert_eq!(p.to_string(), "q + q^3 + t^2q^5 + t^3q^9");
        assert_eq!(p.at_t_minus_one().to_string(), "q + q^3 + q^5 - q^9");
    }
}
