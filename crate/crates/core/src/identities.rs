//! The affine relations among Tutte coefficients.
//!
//! For a ranked set of size `n` and rank `r`, `I_k(T) = 0` for `k < n` and
//! `I_n(T) = (−1)^{n−r}`. This module checks that statement, its matrix trace
//! form, the involution `N`, the clause list for isthmus-free matroids and the
//! simplified low-order forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::bipoly::{binomial, BiPoly};
use crate::error::{Error, Result};
use crate::ranked::RankedSet;
use crate::tutte::tutte_expansion;

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigs<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(0, …, 0, (−1)^{n−r})`, of length `n + 1`.
pub fn expected_profile(n: usize, r: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n + 1];
    v[n] = sign(n as i64 - r);
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub r: i64,
    #[serde(serialize_with = "ser_bigs")]
    pub i_values: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigs")]
    pub expected: Vec<BigInt>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brylawski: Option<BrylawskiReport>,
}

/// Checks `I_0..I_n` of the Tutte polynomial of `g`.
pub fn verify_affine(g: &RankedSet) -> IdentityReport {
    verify_affine_poly(&tutte_expansion(g), g.n(), g.full_rank() as i64)
}

/// Checks `I_0..I_n` of an explicit polynomial against size `n` and rank `r`.
pub fn verify_affine_poly(p: &BiPoly, n: usize, r: i64) -> IdentityReport {
    let i_values = p.i_profile(n);
    let expected = expected_profile(n, r);
    IdentityReport {
        n,
        r,
        pass: i_values == expected,
        i_values,
        expected,
        brylawski: None,
    }
}

/// A small dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(r: usize, c: usize) -> IntMatrix {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); c]; r],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let mut out = IntMatrix::zeros(self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.nrows().min(self.ncols()))
            .map(|i| self.rows[i][i].clone())
            .sum()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| format!("{c:>4}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `M_k`, `(r+1) × (n+1)`, entry `(s, t) = (−1)^{t+1} C(k−s+1, t−1)` (1-based),
/// and `B`, `(n+1) × (r+1)`, entry `(t, s) = b_{s−1, t−1}`.
pub fn trace_matrices(p: &BiPoly, k: usize, n: usize, r: usize) -> Result<(IntMatrix, IntMatrix)> {
    if !p.is_zero() && (p.dx() > r || p.dy() > n) {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has degrees ({}, {}) but the bounds are ({r}, {n})",
            p.dx(),
            p.dy()
        )));
    }
    let mut m = IntMatrix::zeros(r + 1, n + 1);
    for s in 1..=r + 1 {
        for t in 1..=n + 1 {
            m.rows[s - 1][t - 1] =
                sign(t as i64 + 1) * binomial(k as i64 - s as i64 + 1, t as i64 - 1);
        }
    }
    let mut b = IntMatrix::zeros(n + 1, r + 1);
    for t in 1..=n + 1 {
        for s in 1..=r + 1 {
            b.rows[t - 1][s - 1] = p.coeff(s - 1, t - 1);
        }
    }
    Ok((m, b))
}

/// `I_k(p) = tr(M_k B)`
pub fn i_k_trace(p: &BiPoly, k: usize, n: usize, r: usize) -> Result<BigInt> {
    let (m, b) = trace_matrices(p, k, n, r)?;
    Ok(m.mul(&b)?.trace())
}

/// The `n × n` lower-triangular `N_{i,j} = (−1)^{n−i+1} C(n−j, i−j)`, an
/// involution.
pub fn n_matrix(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=i {
            m.rows[i - 1][j - 1] =
                sign(n as i64 - i as i64 + 1) * binomial(n as i64 - j as i64, i as i64 - j as i64);
        }
    }
    m
}

/// Result of one clause of the isthmus-free matroid relations.
#[derive(Clone, Debug, Serialize)]
pub struct ClauseResult {
    pub clause: u8,
    pub pass: bool,
    pub failures: Vec<CoeffWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffWitness {
    /// `"b"` for a coefficient, `"I"` for an `I_k` value (then `j` is unused).
    pub what: &'static str,
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_big")]
    pub expected: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub got: BigInt,
}

impl fmt::Display for CoeffWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.what == "I" {
            write!(
                f,
                "I_{} = {} (expected {})",
                self.i, self.got, self.expected
            )
        } else {
            write!(
                f,
                "b_{{{},{}}} = {} (expected {})",
                self.i, self.j, self.got, self.expected
            )
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BrylawskiReport {
    pub isthmus_free: bool,
    pub loopless: bool,
    pub simple: bool,
    pub clauses: Vec<ClauseResult>,
    pub pass: bool,
}

/// Evaluates the six clauses on any polynomial:
///
/// 1. `b_{i,j} = 0` for `i > r`, `j > 0`
/// 2. `b_{r,0} = 1`, `b_{r,j} = 0` for `j > 0`
/// 3. `b_{r−1,0} = n − r`, `b_{r−1,j} = 0` for `j > 0`
/// 4. `b_{i,j} = 0` for `1 ≤ i ≤ r − 2`, `j ≥ n − r`
/// 5. `b_{0,n−r} = 1`, `b_{0,j} = 0` for `j > n − r`
/// 6. `I_k = 0` for `0 ≤ k ≤ n − 1`
pub fn brylawski_clauses(p: &BiPoly, n: usize, r: usize) -> Vec<ClauseResult> {
    let dx = p.dx().max(r + 1);
    let dy = p.dy().max(n + 1);
    let zero = BigInt::zero;
    let mut clauses: Vec<Vec<CoeffWitness>> = vec![Vec::new(); 6];
    let mut want = |c: usize, i: usize, j: usize, expected: BigInt| {
        let got = p.coeff(i, j);
        if got != expected {
            clauses[c - 1].push(CoeffWitness {
                what: "b",
                i,
                j,
                expected,
                got,
            });
        }
    };
    for i in r + 1..=dx {
        for j in 1..=dy {
            want(1, i, j, zero());
        }
    }
    want(2, r, 0, BigInt::one());
    for j in 1..=dy {
        want(2, r, j, zero());
    }
    if r >= 1 {
        want(3, r - 1, 0, BigInt::from(n as i64 - r as i64));
        for j in 1..=dy {
            want(3, r - 1, j, zero());
        }
    }
    if n >= r {
        for i in 1..=r.saturating_sub(2) {
            for j in n - r..=dy {
                want(4, i, j, zero());
            }
        }
        want(5, 0, n - r, BigInt::one());
        for j in n - r + 1..=dy {
            want(5, 0, j, zero());
        }
    }
    for k in 0..n {
        let v = p.i_k(k);
        if !v.is_zero() {
            clauses[5].push(CoeffWitness {
                what: "I",
                i: k,
                j: 0,
                expected: zero(),
                got: v,
            });
        }
    }
    clauses
        .into_iter()
        .enumerate()
        .map(|(c, failures)| ClauseResult {
            clause: c as u8 + 1,
            pass: failures.is_empty(),
            failures,
        })
        .collect()
}

/// Runs the clause list on a matroid, reporting the structural hypotheses.
pub fn brylawski_check(m: &RankedSet) -> Result<BrylawskiReport> {
    if let Some(w) = m.matroid_violation() {
        return Err(Error::NotAMatroid(w.describe(m.ground())));
    }
    let t = tutte_expansion(m);
    let clauses = brylawski_clauses(&t, m.n(), m.full_rank() as usize);
    let loopless = m.loops().is_empty();
    Ok(BrylawskiReport {
        isthmus_free: m.isthmuses().is_empty(),
        loopless,
        simple: loopless && m.parallel_pairs().is_empty(),
        pass: clauses.iter().all(|c| c.pass),
        clauses,
    })
}

/// `I_n(T(M)) = (−1)^{n−r}` for a matroid `M`.
pub fn k_n_identity(m: &RankedSet) -> Result<bool> {
    if let Some(w) = m.matroid_violation() {
        return Err(Error::NotAMatroid(w.describe(m.ground())));
    }
    let t = tutte_expansion(m);
    Ok(t.i_k(m.n()) == sign(m.n() as i64 - m.full_rank() as i64))
}

/// One simplified low-order relation, as labelled signed summands.
#[derive(Clone, Debug, Serialize)]
pub struct LowOrderRow {
    pub k: usize,
    pub summands: Vec<(String, String)>,
    #[serde(serialize_with = "ser_big")]
    pub total: BigInt,
}

/// The simplified `I_0..I_3`, each reduced using the lower ones:
///
/// - `b_{0,0}`
/// - `b_{0,1} − b_{1,0}`
/// - `b_{2,0} + b_{0,2} − b_{1,0} − b_{1,1}`
/// - `b_{3,0} − b_{2,1} + b_{1,2} − b_{0,3} − b_{2,0} + b_{0,2}`
pub fn low_order_identities(p: &BiPoly) -> Vec<LowOrderRow> {
    let rows: [&[(i64, usize, usize)]; 4] = [
        &[(1, 0, 0)],
        &[(1, 0, 1), (-1, 1, 0)],
        &[(1, 2, 0), (1, 0, 2), (-1, 1, 0), (-1, 1, 1)],
        &[
            (1, 3, 0),
            (-1, 2, 1),
            (1, 1, 2),
            (-1, 0, 3),
            (-1, 2, 0),
            (1, 0, 2),
        ],
    ];
    rows.iter()
        .enumerate()
        .map(|(k, terms)| {
            let mut total = BigInt::zero();
            let summands = terms
                .iter()
                .map(|&(s, i, j)| {
                    let c = p.coeff(i, j);
                    total += BigInt::from(s) * &c;
                    let label = format!("{}b_{{{i},{j}}}", if s < 0 { "-" } else { "+" });
                    (label, c.to_string())
                })
                .collect();
            LowOrderRow { k, summands, total }
        })
        .collect()
}

/// The value the clause list forces on `b_{i,j}` for an isthmus-free matroid
/// of size `n` and rank `r`, if any.
pub fn forced_coefficient(i: usize, j: usize, n: usize, r: usize) -> Option<BigInt> {
    let nr = n.checked_sub(r)?;
    if i > r && j > 0 {
        return Some(BigInt::zero());
    }
    if i == r {
        return Some(if j == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        });
    }
    if r >= 1 && i == r - 1 {
        return Some(if j == 0 {
            BigInt::from(nr)
        } else {
            BigInt::zero()
        });
    }
    if i >= 1 && i + 2 <= r && j >= nr {
        return Some(BigInt::zero());
    }
    if i == 0 && j >= nr {
        return Some(if j == nr {
            BigInt::one()
        } else {
            BigInt::zero()
        });
    }
    None
}

/// The simplified `I_2` relation with forced values substituted:
/// `b_{1,0} + b_{1,1} = forced b_{2,0} + forced b_{0,2}`.
///
/// Returns `(lhs, rhs)`; for rank 3 on 5 points the right side is 3.
pub fn simplified_matroid_i2(p: &BiPoly, n: usize, r: usize) -> (BigInt, BigInt) {
    let lhs = p.coeff(1, 0) + p.coeff(1, 1);
    let rhs = forced_coefficient(2, 0, n, r).unwrap_or_else(|| p.coeff(2, 0))
        + forced_coefficient(0, 2, n, r).unwrap_or_else(|| p.coeff(0, 2));
    (lhs, rhs)
}
