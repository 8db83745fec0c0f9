//! Generalized Young diagrams in multirectangular form and the functionals
//! attached to them.
//!
//! Diagrams are drawn in the French convention: band `i` occupies
//! `y ∈ [P_{i−1}, P_i]`, `x ∈ [0, q_i]` with `P_i = p_1 + … + p_i`, and the
//! content of a point is `x − y`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{self, PowerSeries, SeriesRole, TruncatedSeries};

/// The diagram `p × q`: bands of heights `p_i` and widths `q_i`, widths
/// weakly decreasing from the bottom band up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRectangular {
    p: Vec<BigRational>,
    q: Vec<BigRational>,
}

impl MultiRectangular {
    pub fn new(p: Vec<BigRational>, q: Vec<BigRational>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} band heights but {} band widths",
                p.len(),
                q.len()
            )));
        }
        if p.iter().chain(q.iter()).any(|v| !v.is_positive()) {
            return Err(Error::InvalidDiagram("all entries must be positive".into()));
        }
        if q.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram("widths must be weakly decreasing".into()));
        }
        Ok(MultiRectangular { p, q })
    }

    /// Drops bands of zero height or width and merges neighbouring bands of
    /// equal width. Negative entries are still rejected.
    pub fn normalized(p: Vec<BigRational>, q: Vec<BigRational>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} band heights but {} band widths",
                p.len(),
                q.len()
            )));
        }
        if p.iter().chain(q.iter()).any(Signed::is_negative) {
            return Err(Error::InvalidDiagram("entries must be nonnegative".into()));
        }
        let mut np: Vec<BigRational> = Vec::new();
        let mut nq: Vec<BigRational> = Vec::new();
        for (pi, qi) in p.into_iter().zip(q) {
            if pi.is_zero() || qi.is_zero() {
                continue;
            }
            if nq.last() == Some(&qi) {
                *np.last_mut().unwrap() += pi;
            } else {
                np.push(pi);
                nq.push(qi);
            }
        }
        Self::new(np, nq)
    }

    pub fn empty() -> Self {
        MultiRectangular {
            p: Vec::new(),
            q: Vec::new(),
        }
    }

    pub fn rectangle(p: BigRational, q: BigRational) -> Result<Self> {
        Self::new(vec![p], vec![q])
    }

    pub fn p(&self) -> &[BigRational] {
        &self.p
    }

    pub fn q(&self) -> &[BigRational] {
        &self.q
    }

    pub fn bands(&self) -> usize {
        self.p.len()
    }

    pub fn area(&self) -> BigRational {
        self.p.iter().zip(&self.q).map(|(p, q)| p * q).sum()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            p: self.p.iter().map(ToString::to_string).collect(),
            q: self.q.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let parse = |s: &String| {
            BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
        };
        let p = json.p.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let q = json.q.iter().map(parse).collect::<Result<Vec<_>>>()?;
        Self::new(p, q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub p: Vec<String>,
    pub q: Vec<String>,
}

/// An integer partition, rows weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    /// Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.contains(&0) {
            return Err(Error::InvalidPartition(format!("{rows:?} has an interior zero row")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{rows:?} is not weakly decreasing")));
        }
        Ok(Partition { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=width)
            .map(|c| self.rows.iter().filter(|&&r| r >= c).count() as u32)
            .collect();
        Partition { rows }
    }

    /// Run-length encoding: a run of `m` rows of length `r` is one band `m × r`.
    pub fn to_multirectangular(&self) -> MultiRectangular {
        let mut p: Vec<BigRational> = Vec::new();
        let mut q: Vec<BigRational> = Vec::new();
        let mut i = 0;
        while i < self.rows.len() {
            let r = self.rows[i];
            let j = self.rows[i..].iter().take_while(|&&x| x == r).count();
            p.push(BigRational::from_integer(BigInt::from(j)));
            q.push(BigRational::from_integer(BigInt::from(r)));
            i += j;
        }
        MultiRectangular { p, q }
    }

    /// Contents `x − y` of the boxes (0-based column minus row).
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (y, &r) in self.rows.iter().enumerate() {
            for x in 0..r {
                out.push(x as i64 - y as i64);
            }
        }
        out
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        crate::combinat::partitions_of(n)
            .into_iter()
            .map(|rows| Partition { rows })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "({})", rows.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Partition::new(Vec::new());
        }
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad row {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

/// `S_1..S_nmax` with `S_n = (n−1) ∬ (x−y)^{n−2} dx dy` over the diagram,
/// integrated exactly band by band.
pub fn s_functionals(d: &MultiRectangular, nmax: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); nmax];
    let mut y0 = BigRational::zero();
    for (p, q) in d.p.iter().zip(&d.q) {
        let y1 = &y0 + p;
        let a = q - &y0;
        let b = q - &y1;
        let c = -&y1;
        let e = -&y0;
        let (mut pa, mut pb, mut pc, mut pe) = (a.clone(), b.clone(), c.clone(), e.clone());
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let n = i as i64 + 1;
            if n >= 2 {
                *slot += (&pa - &pb + &pc - &pe) / BigRational::from_integer(n.into());
            }
            pa *= &a;
            pb *= &b;
            pc *= &c;
            pe *= &e;
        }
        y0 = y1;
    }
    TruncatedSeries::new(SeriesRole::SFunctionals, coeffs)
}

/// Moments `M_1..M_nmax` of the transition measure, read off from
/// `G(z) = (1/z) exp S(z)`.
pub fn transition_moments(d: &MultiRectangular, nmax: usize) -> TruncatedSeries {
    series::moments_from_s(&s_functionals(d, nmax)).expect("role is s-functionals")
}

/// Free cumulants `R_1..R_nmax`; `R_1 = 0` for every diagram.
pub fn free_cumulants(d: &MultiRectangular, nmax: usize) -> TruncatedSeries {
    series::r_from_s(&s_functionals(d, nmax)).expect("role is s-functionals")
}

pub fn dilate(d: &MultiRectangular, s: &BigRational) -> Result<MultiRectangular> {
    if !s.is_positive() {
        return Err(Error::InvalidArgument(format!("dilation factor {s} must be positive")));
    }
    Ok(MultiRectangular {
        p: d.p.iter().map(|x| x * s).collect(),
        q: d.q.iter().map(|x| x * s).collect(),
    })
}

/// `Σ_k` of a (generalized) diagram by the Frobenius formula
/// `Σ_k = −(1/k) [z^{−1}] Π_{j=1..k} 1/G(z − j)`.
pub fn frobenius_character(d: &MultiRectangular, k: usize) -> BigRational {
    frobenius_from_moments(&transition_moments(d, k + 1), k).expect("moments computed to order k+1")
}

/// As [`frobenius_character`], starting from transition-measure moments
/// known to order at least `k + 1`.
pub fn frobenius_from_moments(moments: &TruncatedSeries, k: usize) -> Result<BigRational> {
    if moments.role() != SeriesRole::Moments {
        return Err(Error::RoleMismatch {
            expected: SeriesRole::Moments,
            found: moments.role(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let order = k + 1;
    if moments.order() < order {
        return Err(Error::InsufficientOrder {
            required: order,
            available: moments.order(),
        });
    }
    // With w = 1/z: 1/G(z) = h(w)/w where h = 1/g, g = Σ M_n w^n, and
    // 1/G(z − j) = F_j(w)/w with F_j(w) = (1 − jw) Σ_n h_n (w/(1 − jw))^n.
    let h = PowerSeries::one_plus(&moments.coeffs()[..order]).inverse();
    let mut product = PowerSeries::one_plus(&vec![BigRational::zero(); order]);
    for j in 1..=k {
        let jq = BigRational::from_integer(BigInt::from(j));
        // w/(1 − jw) = Σ_{m≥1} j^{m−1} w^m
        let mut shift = vec![BigRational::zero(); order + 1];
        let mut pw = BigRational::one();
        for slot in shift.iter_mut().skip(1) {
            *slot = pw.clone();
            pw *= &jq;
        }
        let shift = PowerSeries(shift);
        let mut acc = PowerSeries(vec![BigRational::zero(); order + 1]);
        let mut power = PowerSeries::one_plus(&vec![BigRational::zero(); order]);
        for n in 0..=order {
            let hn = h.coeff(n);
            if !hn.is_zero() {
                for (a, b) in acc.0.iter_mut().zip(&power.0) {
                    *a += &hn * b;
                }
            }
            power = power.mul(&shift);
        }
        let mut linear = vec![BigRational::zero(); order + 1];
        linear[0] = BigRational::one();
        linear[1] = -jq;
        let f_j = acc.mul(&PowerSeries(linear));
        product = product.mul(&f_j);
    }
    let kq = BigRational::from_integer(BigInt::from(k));
    Ok(-product.coeff(order) / kq)
}
