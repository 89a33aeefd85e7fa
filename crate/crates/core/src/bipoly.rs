//! Dense bivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A [`BiPoly`] stores its coefficients as a rectangular grid indexed by
//! `(x-degree, y-degree)`. The grid is always trimmed, so the two degree bounds
//! are tight and structural equality coincides with polynomial equality. The
//! same type carries Tutte polynomials in `(x, y)`, corank-nullity polynomials
//! in `(u, v)` and every intermediate of the linear-relation checks.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)` as an exact integer, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct BiPoly {
    // rows[i][j] is the coefficient of x^i y^j; all rows share one length.
    rows: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c.into())
    }

    pub fn monomial(i: usize, j: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![vec![BigInt::zero(); j + 1]; i + 1];
        rows[i][j] = c;
        BiPoly { rows }
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(usize, usize, BigInt)> = terms
            .into_iter()
            .map(|(i, j, c)| (i, j, c.into()))
            .collect();
        let dx = terms.iter().map(|t| t.0).max();
        let dy = terms.iter().map(|t| t.1).max();
        let (Some(dx), Some(dy)) = (dx, dy) else {
            return Self::zero();
        };
        let mut rows = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for (i, j, c) in terms {
            rows[i][j] += c;
        }
        Self::from_rows(rows)
    }

    /// Builds a polynomial from a possibly ragged coefficient grid `grid[i][j]`.
    pub fn from_grid(grid: Vec<Vec<BigInt>>) -> Self {
        let width = grid.iter().map(Vec::len).max().unwrap_or(0);
        let rows = grid
            .into_iter()
            .map(|mut r| {
                r.resize(width, BigInt::zero());
                r
            })
            .collect();
        Self::from_rows(rows)
    }

    /// Builds a polynomial from a grid of machine-sized counts.
    pub fn from_counts(grid: &[Vec<u64>]) -> Self {
        Self::from_grid(
            grid.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let mut p = BiPoly { rows };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self
            .rows
            .last()
            .is_some_and(|r| r.iter().all(Zero::is_zero))
        {
            self.rows.pop();
        }
        let width = self
            .rows
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.is_zero()))
            .max()
            .map_or(0, |j| j + 1);
        if width == 0 {
            self.rows.clear();
        }
        for r in &mut self.rows {
            r.truncate(width);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Tight x-degree bound (0 for the zero polynomial).
    pub fn dx(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Tight y-degree bound (0 for the zero polynomial).
    pub fn dy(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.rows.get(i).and_then(|r| r.get(j))
    }

    /// Coefficient of `x^i y^j`; zero when outside the grid.
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeff_ref(i, j).cloned().unwrap_or_default()
    }

    /// Coefficient lookup tolerant of negative indices, which read as zero.
    pub fn coeff_signed(&self, i: i64, j: i64) -> BigInt {
        if i < 0 || j < 0 {
            return BigInt::zero();
        }
        self.coeff(i as usize, j as usize)
    }

    /// Nonzero terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    /// The coefficient grid, `grid[i][j]`, `(dx+1) × (dy+1)` (empty when zero).
    pub fn grid(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `x^a y^b · self`.
    pub fn shift(&self, a: usize, b: usize) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let width = self.dy() + 1 + b;
        let mut rows = vec![vec![BigInt::zero(); width]; a];
        for r in &self.rows {
            let mut row = vec![BigInt::zero(); b];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        BiPoly { rows }
    }

    /// Exchanges the roles of the two variables.
    pub fn swap_xy(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (dx, dy) = (self.dx(), self.dy());
        let rows = (0..=dy)
            .map(|j| (0..=dx).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        BiPoly { rows }
    }

    /// `p(x + a, y + b)`, expanded exactly.
    pub fn translate(&self, a: i64, b: i64) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (dx, dy) = (self.dx(), self.dy());
        let a_pows = powers(a, dx);
        let b_pows = powers(b, dy);
        // substitute in x, column by column
        let mut mid = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for i in 0..=dx {
            for (j, c) in self.rows[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for k in 0..=i {
                    mid[k][j] += c * binomial(i as i64, k as i64) * &a_pows[i - k];
                }
            }
        }
        let mut out = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for (i, row) in mid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for l in 0..=j {
                    out[i][l] += c * binomial(j as i64, l as i64) * &b_pows[j - l];
                }
            }
        }
        Self::from_rows(out)
    }

    /// `((x−1)(y−1))^k`, written down from the double binomial expansion.
    pub fn cross_power(k: usize) -> BiPoly {
        let rows = (0..=k)
            .map(|i| {
                (0..=k)
                    .map(|j| {
                        sign(i + j) * binomial(k as i64, i as i64) * binomial(k as i64, j as i64)
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    /// The alternating functional
    /// `I_k(p) = Σ_{i=0..k} Σ_{j=0..k−i} (−1)^j C(k−i, j) b_{i,j}`.
    ///
    /// Coefficients beyond the degree bounds read as zero, so any `k` is valid.
    pub fn i_k(&self, k: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, row) in self.rows.iter().enumerate().take(k + 1) {
            for (j, c) in row.iter().enumerate().take(k - i + 1) {
                if c.is_zero() {
                    continue;
                }
                let term = c * binomial((k - i) as i64, j as i64);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        acc
    }

    /// `[I_0(p), …, I_n(p)]`.
    pub fn i_profile(&self, n: usize) -> Vec<BigInt> {
        (0..=n).map(|k| self.i_k(k)).collect()
    }

    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.rows.iter().rev() {
            let mut inner = BigRational::zero();
            for c in row.iter().rev() {
                inner = inner * y0 + BigRational::from_integer(c.clone());
            }
            acc = acc * x0 + inner;
        }
        acc
    }

    pub fn eval_int(&self, x0: i64, y0: i64) -> BigInt {
        self.eval(
            &BigRational::from_integer(x0.into()),
            &BigRational::from_integer(y0.into()),
        )
        .to_integer()
    }

    /// Terms sorted by total degree, then x-degree, both descending.
    fn display_order(&self) -> Vec<(usize, usize, &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        terms
    }

    /// Renders with the given variable names, e.g. `u^2 + 4*u + 6`.
    pub fn render(&self, xs: &str, ys: &str) -> String {
        let terms = self.display_order();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (i, j, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if i > 0 {
                factors.push(power_str(xs, i));
            }
            if j > 0 {
                factors.push(power_str(ys, j));
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn powers(base: i64, up_to: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(up_to + 1);
    let mut acc = BigInt::one();
    for _ in 0..=up_to {
        out.push(acc.clone());
        acc *= base;
    }
    out
}

fn power_str(var: &str, e: usize) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// Expands `S(u, v)` at `u = x − 1`, `v = y − 1`.
pub fn shifted_from_grid(s: &BiPoly) -> BiPoly {
    s.translate(-1, -1)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;

    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        if rhs.is_zero() {
            return;
        }
        let dx = self.rows.len().max(rhs.rows.len());
        let width = (self.dy().max(rhs.dy()) + 1).max(if self.is_zero() { 0 } else { 1 });
        self.rows.resize_with(dx, Vec::new);
        for r in &mut self.rows {
            r.resize(width, BigInt::zero());
        }
        for (i, r) in rhs.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                self.rows[i][j] += c;
            }
        }
        self.trim();
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let (dx, dy) = (self.dx() + rhs.dx(), self.dy() + rhs.dy());
        let mut rows = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for (i1, r1) in self.rows.iter().enumerate() {
            for (j1, c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, r2) in rhs.rows.iter().enumerate() {
                    for (j2, c2) in r2.iter().enumerate() {
                        if !c2.is_zero() {
                            rows[i1 + i2][j1 + j2] += c1 * c2;
                        }
                    }
                }
            }
        }
        BiPoly::from_rows(rows)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// Wire format: `{"terms":[{"i":..,"j":..,"c":"<decimal>"}]}`, sorted by `(i, j)`.
#[derive(Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

impl From<BiPoly> for PolyJson {
    fn from(p: BiPoly) -> Self {
        PolyJson {
            terms: p
                .terms()
                .map(|(i, j, c)| TermJson {
                    i,
                    j,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for BiPoly {
    type Error = String;

    fn try_from(p: PolyJson) -> std::result::Result<Self, String> {
        let mut terms = Vec::with_capacity(p.terms.len());
        for t in p.terms {
            let c: BigInt =
                t.c.trim()
                    .parse()
                    .map_err(|_| format!("bad coefficient `{}`", t.c))?;
            terms.push((t.i, t.j, c));
        }
        Ok(BiPoly::from_terms(terms))
    }
}

impl BiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<BiPoly> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parses the textual rendering, e.g. `x^3*y - 3*x^2*y + 2*x^2 - y`.
impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<BiPoly> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 0,
            message: format!("{msg} in polynomial `{s}`"),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                negative = true;
                rest = r;
            } else if !first {
                return Err(bad("expected `+` or `-`"));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (mut i, mut j) = (0usize, 0usize);
            let mut c = BigInt::one();
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "x" => i += exp,
                    "y" => j += exp,
                    _ => {
                        let v: BigInt = base.parse().map_err(|_| bad("bad factor"))?;
                        c *= num_traits::pow(v, exp);
                    }
                }
            }
            terms.push((i, j, if negative { -c } else { c }));
        }
        Ok(BiPoly::from_terms(terms))
    }
}
