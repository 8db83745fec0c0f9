//! Sparse multivariate polynomials in indexed variables `X_2, X_3, …` with
//! exact rational coefficients. Used for polynomials in free cumulants `R_i`,
//! in the functionals `S_i` and in the Goulden–Rattan quantities `C_i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::factorial;
use crate::error::{Error, Result};

/// A monomial `Π X_i^{e_i}` stored as `(index, exponent)` pairs sorted by
/// index, exponents strictly positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Monomial with one factor per entry of `indices` (a multiset).
    pub fn from_indices(indices: &[u32]) -> Self {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &i in indices {
            *counts.entry(i).or_default() += 1;
        }
        Monomial(counts.into_iter().collect())
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in exps {
            if e > 0 {
                *counts.entry(i).or_default() += e;
            }
        }
        Monomial(counts.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0.iter().find(|(i, _)| *i == index).map_or(0, |&(_, e)| e)
    }

    /// Weighted degree `Σ i·e_i` (the dilation degree for cumulants).
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(i, e)| i * e).sum()
    }

    /// Number of factors `Σ e_i`.
    pub fn factor_count(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Factor indices with multiplicity, largest first.
    pub fn indices_desc(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .0
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat_n(i, e as usize))
            .collect();
        v.reverse();
        v
    }

    /// `Π e_i!`, the factor relating a monomial coefficient to the mixed
    /// partial derivative at the origin.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &(_, e)| acc * factorial(e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Display order: higher weighted degree first, then the descending
    /// factor lists compared lexicographically, larger first.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.indices_desc().cmp(&self.indices_desc()))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct CumulantPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CumulantPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(index: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(index), BigRational::one());
        p
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Mixed partial derivative `∂/∂X_{i1} … ∂/∂X_{ir}` at the origin.
    pub fn derivative_at_zero(&self, indices: &[u32]) -> BigRational {
        let m = Monomial::from_indices(indices);
        self.coefficient(&m) * BigRational::from_integer(m.multiplicity_factorial())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CumulantPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term whose weighted degree exceeds `max_degree`.
    pub fn truncate_degree(&self, max_degree: u32) -> Self {
        CumulantPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, value: impl Fn(u32) -> BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(i, e) in m.pairs() {
                let v = value(i);
                for _ in 0..e {
                    term *= &v;
                }
            }
            total += term;
        }
        total
    }

    /// Replaces every variable `X_i` by the polynomial `image(i)`.
    pub fn substitute(&self, image: impl Fn(u32) -> CumulantPolynomial) -> Self {
        let mut cache: BTreeMap<u32, CumulantPolynomial> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for &(i, e) in m.pairs() {
                let base = cache.entry(i).or_insert_with(|| image(i));
                term = &term * &base.pow(e);
            }
            out = &out + &term;
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms in display order (see [`Monomial::display_cmp`]).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    /// Plain text such as `R7 + 35 R5 + 35 R3 R2 + 84 R3`.
    pub fn to_text(&self, var: &str) -> String {
        self.render(|first, c, m| {
            let mut s = sign_prefix(first, c);
            let abs = c.abs();
            let factors: Vec<String> = factors_of(m)
                .map(|(i, e)| {
                    if e == 1 {
                        format!("{var}{i}")
                    } else {
                        format!("{var}{i}^{e}")
                    }
                })
                .collect();
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push(' ');
                }
                s.push_str(&factors.join(" "));
            }
            s
        })
    }

    /// LaTeX such as `R_7 + 35R_5 + 35R_3R_2 + 84R_3`.
    pub fn to_latex(&self, var: &str) -> String {
        self.render(|first, c, m| {
            let mut s = sign_prefix(first, c);
            let abs = c.abs();
            let coeff = if abs.is_integer() {
                abs.to_integer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                s.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    s.push_str(&coeff);
                }
                for (i, e) in factors_of(m) {
                    let sub = if i < 10 { i.to_string() } else { format!("{{{i}}}") };
                    if e == 1 {
                        s.push_str(&format!("{var}_{sub}"));
                    } else {
                        s.push_str(&format!("{var}_{sub}^{{{e}}}"));
                    }
                }
            }
            s
        })
    }

    fn render(&self, term: impl Fn(bool, &BigRational, &Monomial) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .into_iter()
            .enumerate()
            .map(|(k, (m, c))| term(k == 0, c, m))
            .collect()
    }

    pub fn to_json(&self, variable: &str) -> PolynomialJson {
        PolynomialJson {
            variable: variable.to_string(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    exponents: m.pairs().iter().copied().collect(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let mut p = Self::zero();
        for t in &json.terms {
            let c = parse_ratio(&t.num, &t.den)?;
            p.add_term(Monomial::from_exponents(t.exponents.iter().map(|(&i, &e)| (i, e))), c);
        }
        Ok(p)
    }
}

fn sign_prefix(first: bool, c: &BigRational) -> String {
    match (first, c.is_negative()) {
        (true, false) => String::new(),
        (true, true) => "-".to_string(),
        (false, false) => " + ".to_string(),
        (false, true) => " - ".to_string(),
    }
}

/// Factors largest index first.
fn factors_of(m: &Monomial) -> impl Iterator<Item = (u32, u32)> + '_ {
    m.pairs().iter().rev().copied()
}

pub(crate) fn parse_ratio(num: &str, den: &str) -> Result<BigRational> {
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// JSON form: exponent vectors as `index → exponent` objects, coefficients as
/// decimal numerator and denominator strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variable: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: BTreeMap<u32, u32>,
    pub num: String,
    pub den: String,
}

impl fmt::Debug for CumulantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("X"))
    }
}

impl<'a> Add<&'a CumulantPolynomial> for &'a CumulantPolynomial {
    type Output = CumulantPolynomial;
    fn add(self, rhs: &CumulantPolynomial) -> CumulantPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CumulantPolynomial> for &'a CumulantPolynomial {
    type Output = CumulantPolynomial;
    fn sub(self, rhs: &CumulantPolynomial) -> CumulantPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a CumulantPolynomial> for &'a CumulantPolynomial {
    type Output = CumulantPolynomial;
    fn mul(self, rhs: &CumulantPolynomial) -> CumulantPolynomial {
        let mut out = CumulantPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CumulantPolynomial {
    type Output = CumulantPolynomial;
    fn neg(self) -> CumulantPolynomial {
        self.scale(&-BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn k6() -> CumulantPolynomial {
        CumulantPolynomial::from_terms([
            (Monomial::var(7), int(1)),
            (Monomial::var(5), int(35)),
            (Monomial::from_indices(&[3, 2]), int(35)),
            (Monomial::var(3), int(84)),
        ])
    }

    #[test]
    fn text_and_latex() {
        assert_eq!(k6().to_text("R"), "R7 + 35 R5 + 35 R3 R2 + 84 R3");
        assert_eq!(k6().to_latex("R"), "R_7 + 35R_5 + 35R_3R_2 + 84R_3");
        let sq = CumulantPolynomial::monomial(Monomial::from_indices(&[2, 2]), int(5));
        assert_eq!(sq.to_text("R"), "5 R2^2");
        assert_eq!(sq.to_latex("R"), "5R_2^{2}");
        let half = CumulantPolynomial::monomial(Monomial::var(3), BigRational::new(5.into(), 2.into()));
        assert_eq!(half.to_text("C"), "5/2 C3");
        assert_eq!(half.to_latex("C"), "\\frac{5}{2}C_3");
        assert_eq!(CumulantPolynomial::zero().to_text("R"), "0");
        let neg = &CumulantPolynomial::var(2) - &CumulantPolynomial::var(4);
        assert_eq!(neg.to_text("R"), "-R4 + R2");
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let p = &CumulantPolynomial::var(2) - &CumulantPolynomial::var(2);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn json_roundtrip() {
        let j = k6().to_json("R");
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"variable":"R","terms":[{"exponents":{"7":1},"num":"1","den":"1"}"#));
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(CumulantPolynomial::from_json(&back).unwrap(), k6());
    }

    #[test]
    fn derivative_counts_multiplicities() {
        let p = CumulantPolynomial::monomial(Monomial::from_indices(&[2, 2]), int(5));
        assert_eq!(p.derivative_at_zero(&[2, 2]), int(10));
        assert_eq!(p.derivative_at_zero(&[2]), int(0));
    }

    #[test]
    fn substitution_and_evaluation() {
        // (X2 + X3)^2 with X2 -> 1, X3 -> 2 is 9
        let s = &CumulantPolynomial::var(2) + &CumulantPolynomial::var(3);
        let sq = s.pow(2);
        assert_eq!(sq.evaluate(|i| int(i as i64 - 1)), int(9));
        let sub = sq.substitute(|i| CumulantPolynomial::constant(int(i as i64 - 1)));
        assert_eq!(sub, CumulantPolynomial::constant(int(9)));
    }
}
