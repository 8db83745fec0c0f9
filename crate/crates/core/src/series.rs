//! Exact calculus of truncated coefficient sequences attached to a compactly
//! supported probability measure: moments `M_n`, free cumulants `R_n` and the
//! functionals `S_n` (coefficients of `log(z G(z))` at infinity).
//!
//! Every conversion is order preserving: an input known up to order `N`
//! produces an output exact up to order `N`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{factorial, falling_factorial, integer_partitions};
use crate::error::{Error, Result};
use crate::poly::{parse_ratio, CumulantPolynomial, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesRole {
    Moments,
    FreeCumulants,
    SFunctionals,
}

impl fmt::Display for SeriesRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesRole::Moments => "moments",
            SeriesRole::FreeCumulants => "free-cumulants",
            SeriesRole::SFunctionals => "s-functionals",
        })
    }
}

impl FromStr for SeriesRole {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moments" => Ok(SeriesRole::Moments),
            "free-cumulants" => Ok(SeriesRole::FreeCumulants),
            "s-functionals" => Ok(SeriesRole::SFunctionals),
            other => Err(Error::Parse(format!("unknown series role {other:?}"))),
        }
    }
}

/// Coefficients `c_1..c_N` of one of the three descriptions of a measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    role: SeriesRole,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(role: SeriesRole, coeffs: Vec<BigRational>) -> Self {
        TruncatedSeries { role, coeffs }
    }

    pub fn from_integers(role: SeriesRole, coeffs: &[i64]) -> Self {
        Self::new(
            role,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    pub fn zeros(role: SeriesRole, order: usize) -> Self {
        Self::new(role, vec![BigRational::zero(); order])
    }

    pub fn role(&self) -> SeriesRole {
        self.role
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The coefficient `c_n` (1-based); zero beyond the truncation order.
    pub fn get(&self, n: usize) -> BigRational {
        if n == 0 || n > self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                required: order,
                available: self.order(),
            });
        }
        Ok(Self::new(self.role, self.coeffs[..order].to_vec()))
    }

    fn expect(&self, role: SeriesRole) -> Result<()> {
        if self.role != role {
            return Err(Error::RoleMismatch {
                expected: role,
                found: self.role,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            role: self.role,
            order: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| RationalJson {
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.order != json.coeffs.len() {
            return Err(Error::Parse(format!(
                "order {} does not match {} coefficients",
                json.order,
                json.coeffs.len()
            )));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| parse_ratio(&c.num, &c.den))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(json.role, coeffs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub role: SeriesRole,
    pub order: usize,
    pub coeffs: Vec<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

/// Coefficient ring for the composition sums, so that the same code path
/// serves numeric sequences and symbolic polynomials.
pub(crate) trait Coeff: Clone {
    fn c_zero() -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_add(&self, other: &Self) -> Self;
    fn c_mul(&self, other: &Self) -> Self;
    fn c_scale(&self, c: &BigRational) -> Self;
}

impl Coeff for BigRational {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn c_add(&self, other: &Self) -> Self {
        self + other
    }
    fn c_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn c_scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

impl Coeff for CumulantPolynomial {
    fn c_zero() -> Self {
        CumulantPolynomial::zero()
    }
    fn c_is_zero(&self) -> bool {
        CumulantPolynomial::is_zero(self)
    }
    fn c_add(&self, other: &Self) -> Self {
        self + other
    }
    fn c_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn c_scale(&self, c: &BigRational) -> Self {
        CumulantPolynomial::scale(self, c)
    }
}

/// `out_n = Σ_{l≥1} weight(n, l)/l! · Σ_{k1+…+kl=n} f_{k1}⋯f_{kl}` for
/// `n = 1..=order`, where `f[i]` holds `f_{i+1}`.
fn composition_sum<T: Coeff>(f: &[T], order: usize, weight: impl Fn(i64, u32) -> BigInt) -> Vec<T> {
    // power[n] = [x^n] f(x)^l, f without constant term
    let mut power: Vec<T> = vec![T::c_zero(); order + 1];
    let mut out: Vec<T> = vec![T::c_zero(); order];
    for l in 1..=order {
        let next: Vec<T> = if l == 1 {
            let mut p = vec![T::c_zero(); order + 1];
            p[1..].clone_from_slice(&f[..order]);
            p
        } else {
            let mut p = vec![T::c_zero(); order + 1];
            for n in l..=order {
                let mut acc = T::c_zero();
                for k in 1..=n - (l - 1) {
                    let prev = &power[n - k];
                    if prev.c_is_zero() || f[k - 1].c_is_zero() {
                        continue;
                    }
                    acc = acc.c_add(&prev.c_mul(&f[k - 1]));
                }
                p[n] = acc;
            }
            p
        };
        power = next;
        let l_fact = factorial(l as u32);
        for n in l..=order {
            if power[n].c_is_zero() {
                continue;
            }
            let w = weight(n as i64, l as u32);
            if w.is_zero() {
                continue;
            }
            let c = BigRational::new(w, l_fact.clone());
            out[n - 1] = out[n - 1].c_add(&power[n].c_scale(&c));
        }
    }
    out
}

fn moments_weight(n: i64, l: u32) -> BigInt {
    falling_factorial(n, l - 1)
}

fn s_from_r_weight(n: i64, l: u32) -> BigInt {
    falling_factorial(n - 1, l - 1)
}

fn r_from_s_weight(n: i64, l: u32) -> BigInt {
    num_traits::pow(BigInt::from(1 - n), (l - 1) as usize)
}

/// `M_n = Σ_l (1/l!) (n)_{l−1} Σ_{k1+…+kl=n} R_{k1}⋯R_{kl}`.
pub fn moments_from_free_cumulants(r: &TruncatedSeries) -> Result<TruncatedSeries> {
    r.expect(SeriesRole::FreeCumulants)?;
    let out = composition_sum(&r.coeffs, r.order(), moments_weight);
    Ok(TruncatedSeries::new(SeriesRole::Moments, out))
}

/// `S_n = Σ_l (1/l!) (n−1)_{l−1} Σ_{k1+…+kl=n} R_{k1}⋯R_{kl}`.
pub fn s_from_r(r: &TruncatedSeries) -> Result<TruncatedSeries> {
    r.expect(SeriesRole::FreeCumulants)?;
    let out = composition_sum(&r.coeffs, r.order(), s_from_r_weight);
    Ok(TruncatedSeries::new(SeriesRole::SFunctionals, out))
}

/// `R_n = Σ_l (1/l!) (1−n)^{l−1} Σ_{k1+…+kl=n} S_{k1}⋯S_{kl}`; inverse of
/// [`s_from_r`].
pub fn r_from_s(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.expect(SeriesRole::SFunctionals)?;
    let out = composition_sum(&s.coeffs, s.order(), r_from_s_weight);
    Ok(TruncatedSeries::new(SeriesRole::FreeCumulants, out))
}

/// `S_n` as polynomials in the variables `R_1..R_order` (index 1 included).
pub fn s_polynomials_in_r(order: usize) -> Vec<CumulantPolynomial> {
    let vars: Vec<CumulantPolynomial> = (1..=order as u32).map(CumulantPolynomial::var).collect();
    composition_sum(&vars, order, s_from_r_weight)
}

/// `R_n` as polynomials in the variables `S_1..S_order`.
pub fn r_polynomials_in_s(order: usize) -> Vec<CumulantPolynomial> {
    let vars: Vec<CumulantPolynomial> = (1..=order as u32).map(CumulantPolynomial::var).collect();
    composition_sum(&vars, order, r_from_s_weight)
}

/// `M_n` as polynomials in the variables `R_1..R_order`.
pub fn moment_polynomials_in_r(order: usize) -> Vec<CumulantPolynomial> {
    let vars: Vec<CumulantPolynomial> = (1..=order as u32).map(CumulantPolynomial::var).collect();
    composition_sum(&vars, order, moments_weight)
}

/// Formal power series `Σ_{n≥0} a_n w^n` truncated after `w^order`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PowerSeries(pub(crate) Vec<BigRational>);

impl PowerSeries {
    /// `1 + c_1 w + … + c_N w^N`.
    pub(crate) fn one_plus(series: &[BigRational]) -> Self {
        let mut v = Vec::with_capacity(series.len() + 1);
        v.push(BigRational::one());
        v.extend(series.iter().cloned());
        PowerSeries(v)
    }

    pub(crate) fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub(crate) fn coeff(&self, n: usize) -> BigRational {
        self.0.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.0.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub(crate) fn inverse(&self) -> PowerSeries {
        let a0 = &self.0[0];
        assert!(!a0.is_zero(), "power series with zero constant term is not invertible");
        let inv0 = a0.recip();
        let mut out = vec![BigRational::zero(); self.0.len()];
        out[0] = inv0.clone();
        for n in 1..self.0.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.0[k] * &out[n - k];
            }
            out[n] = -acc * &inv0;
        }
        PowerSeries(out)
    }

    pub(crate) fn pow(&self, e: u32) -> PowerSeries {
        let mut acc = PowerSeries({
            let mut v = vec![BigRational::zero(); self.0.len()];
            v[0] = BigRational::one();
            v
        });
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `log` of a series with constant term 1.
    pub(crate) fn log(&self) -> PowerSeries {
        assert!(self.0[0].is_one(), "log requires constant term 1");
        // (log g)' = g'/g
        let inv = self.inverse();
        let n = self.0.len();
        let deriv: Vec<BigRational> = (1..n)
            .map(|k| &self.0[k] * BigRational::from_integer(BigInt::from(k)))
            .collect();
        let mut out = vec![BigRational::zero(); n];
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            // [w^{m-1}] g'·(1/g)
            let acc: BigRational = deriv[..m].iter().zip(inv.0[..m].iter().rev()).map(|(d, i)| d * i).sum();
            *slot = acc / BigRational::from_integer(BigInt::from(m));
        }
        PowerSeries(out)
    }

    /// `exp` of a series with constant term 0.
    pub(crate) fn exp(&self) -> PowerSeries {
        assert!(self.0[0].is_zero(), "exp requires constant term 0");
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n];
        out[0] = BigRational::one();
        for m in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                acc += BigRational::from_integer(BigInt::from(j)) * &self.0[j] * &out[m - j];
            }
            out[m] = acc / BigRational::from_integer(BigInt::from(m));
        }
        PowerSeries(out)
    }
}

/// Free cumulants `R_1..R_order` from moments through Lagrange inversion:
/// `R_1 = M_1` and `R_k = −1/(k−1) · [1/z] (1/G(z))^{k−1}` for `k ≥ 2`.
///
/// `R_k` needs `M_1..M_k`, so `order` may not exceed the input order.
pub fn lagrange_free_cumulant(moments: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    moments.expect(SeriesRole::Moments)?;
    if order > moments.order() {
        return Err(Error::InsufficientOrder {
            required: order,
            available: moments.order(),
        });
    }
    // G(z) = w·g(w) with w = 1/z and g = 1 + M_1 w + M_2 w² + …, so
    // [1/z] (1/G)^{k−1} = [w^k] g^{−(k−1)}.
    let g = PowerSeries::one_plus(&moments.coeffs[..order]);
    let g_inv = g.inverse();
    let mut out = Vec::with_capacity(order);
    let mut power = g_inv.pow(0);
    for k in 1..=order {
        if k == 1 {
            out.push(moments.coeffs[0].clone());
            continue;
        }
        power = power.mul(&g_inv);
        let c = power.coeff(k);
        out.push(-c / BigRational::from_integer(BigInt::from(k as i64 - 1)));
    }
    Ok(TruncatedSeries::new(SeriesRole::FreeCumulants, out))
}

/// `S_n` as the coefficients of `log(z G(z))`.
pub fn s_from_moments(moments: &TruncatedSeries) -> Result<TruncatedSeries> {
    moments.expect(SeriesRole::Moments)?;
    let log = PowerSeries::one_plus(&moments.coeffs).log();
    Ok(TruncatedSeries::new(SeriesRole::SFunctionals, log.0[1..].to_vec()))
}

/// Moments from `G(z) = (1/z)·exp S(z)`.
pub fn moments_from_s(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.expect(SeriesRole::SFunctionals)?;
    let mut v = vec![BigRational::zero()];
    v.extend(s.coeffs.iter().cloned());
    let exp = PowerSeries(v).exp();
    Ok(TruncatedSeries::new(SeriesRole::Moments, exp.0[1..].to_vec()))
}

/// Converts between any two roles, preserving the order.
pub fn convert(series: &TruncatedSeries, to: SeriesRole) -> Result<TruncatedSeries> {
    use SeriesRole::*;
    match (series.role, to) {
        (a, b) if a == b => Ok(series.clone()),
        (FreeCumulants, Moments) => moments_from_free_cumulants(series),
        (FreeCumulants, SFunctionals) => s_from_r(series),
        (SFunctionals, FreeCumulants) => r_from_s(series),
        (SFunctionals, Moments) => moments_from_s(series),
        (Moments, FreeCumulants) => lagrange_free_cumulant(series, series.order()),
        (Moments, SFunctionals) => s_from_moments(series),
        _ => unreachable!(),
    }
}

/// `C_k = Σ_{2j2+3j3+…=k} ((j2+j3+…)!/(j2! j3! …)) Π_i ((i−1) R_i)^{j_i}`
/// for `k = 2..=order`, as polynomials in `R`.
pub fn c_from_r(order: u32) -> Vec<CumulantPolynomial> {
    (2..=order).map(c_polynomial).collect()
}

pub fn c_polynomial(k: u32) -> CumulantPolynomial {
    let mut out = CumulantPolynomial::zero();
    for parts in integer_partitions(k, 2, k) {
        let m = Monomial::from_indices(&parts);
        let total = m.factor_count();
        let mut c = BigRational::from_integer(factorial(total)) / BigRational::from_integer(m.multiplicity_factorial());
        for &(i, e) in m.pairs() {
            c *= BigRational::from_integer(num_traits::pow(BigInt::from(i - 1), e as usize));
        }
        out.add_term(m, c);
    }
    out
}

/// `R_i` for `i = 2..=max_index` expressed in the `C` variables, obtained by
/// inverting the triangular system `C_i = (i−1) R_i + (products of lower R)`.
pub fn r_in_terms_of_c(max_index: u32) -> Vec<CumulantPolynomial> {
    let mut r_in_c: Vec<CumulantPolynomial> = Vec::new();
    for i in 2..=max_index {
        let c_i = c_polynomial(i);
        let lead = c_i.coefficient(&Monomial::var(i));
        debug_assert_eq!(lead, BigRational::from_integer(BigInt::from(i - 1)));
        let mut rest = c_i.clone();
        rest.add_term(Monomial::var(i), -lead.clone());
        // rest only involves R_j with j ≤ i−2
        let rest_in_c = rest.substitute(|j| r_in_c[(j - 2) as usize].clone());
        let r_i = &CumulantPolynomial::var(i) - &rest_in_c;
        r_in_c.push(r_i.scale(&lead.recip()));
    }
    r_in_c
}

/// The Goulden–Rattan polynomial `L_k` with `Σ_k − R_{k+1} = L_k(C_2, C_3, …)`,
/// given the Kerov polynomial `K_k` in `R` variables.
pub fn goulden_rattan_l(k: u32, kerov: &CumulantPolynomial) -> CumulantPolynomial {
    let top = Monomial::var(k + 1);
    let mut sub = kerov.clone();
    sub.add_term(top, -BigRational::one());
    let max_index = sub
        .terms()
        .flat_map(|(m, _)| m.pairs().iter().map(|&(i, _)| i))
        .max()
        .unwrap_or(2);
    let table = r_in_terms_of_c(max_index.max(2));
    sub.substitute(|i| table[(i - 2) as usize].clone())
}
