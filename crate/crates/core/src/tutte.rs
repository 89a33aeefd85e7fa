//! Corank-nullity expansion and deletion-contraction recursion.
//!
//! The recursion works on minors, which may break R1 and R2. It therefore
//! carries a normalized polynomial
//!
//! `T̃(H) = Σ_A (x−1)^{R − r(A)} (y−1)^{|A| − r(A) + Q}`
//!
//! with `R = max r(A)` and `Q = max (r(A) − |A|)`, so every exponent stays
//! nonnegative. For a ranked set `R = r(S)` and `Q = 0`, and `T̃ = T`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{shifted_from_grid, BiPoly};
use crate::error::{Error, Result};
use crate::ranked::{size, Mask, RankTable, RankedSet};

const CHUNK: usize = 1 << 12;

fn count_grid(
    t: &RankTable,
    exponents: impl Fn(Mask, i32) -> (usize, usize) + Sync,
) -> Vec<Vec<u64>> {
    let len = t.table().len();
    let mut dims = (0usize, 0usize);
    for m in 0..len as Mask {
        let (i, j) = exponents(m, t.rank(m));
        dims = (dims.0.max(i), dims.1.max(j));
    }
    let empty = || vec![vec![0u64; dims.1 + 1]; dims.0 + 1];
    (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut g = empty();
            for m in c * CHUNK..((c + 1) * CHUNK).min(len) {
                let (i, j) = exponents(m as Mask, t.rank(m as Mask));
                g[i][j] += 1;
            }
            g
        })
        .reduce(empty, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        })
}

/// `S(G; u, v) = Σ_A u^{r(S) − r(A)} v^{|A| − r(A)}`, as a polynomial in `(u, v)`.
pub fn corank_nullity(g: &RankedSet) -> BiPoly {
    let rs = g.full_rank();
    BiPoly::from_counts(&count_grid(g, |m, r| {
        ((rs - r) as usize, (size(m) - r) as usize)
    }))
}

/// `f(G; u, v) = Σ_A u^{r(S) − r(A)} v^{|A|}`
pub fn corank_cardinality(g: &RankedSet) -> BiPoly {
    let rs = g.full_rank();
    BiPoly::from_counts(&count_grid(g, |m, r| ((rs - r) as usize, size(m) as usize)))
}

/// `T(G; x, y) = S(G; x − 1, y − 1)`
pub fn tutte_expansion(g: &RankedSet) -> BiPoly {
    shifted_from_grid(&corank_nullity(g))
}

/// Which element the recursion removes next.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    /// The lowest-index remaining element.
    #[default]
    Lowest,
    /// Original ground indices by priority; the first one still present goes
    /// next. Indices missing from the list fall back to the lowest remaining.
    Priority(Vec<usize>),
}

struct Recursion {
    memo: HashMap<Vec<i32>, BiPoly>,
    priority: Vec<usize>,
    x1: BiPoly,
    y1: BiPoly,
}

fn extremes(t: &[i32]) -> (i32, i32) {
    let mut r_max = 0;
    let mut q_max = 0;
    for (m, &r) in t.iter().enumerate() {
        r_max = r_max.max(r);
        q_max = q_max.max(r - size(m as Mask));
    }
    (r_max, q_max)
}

fn drop_bit(t: &[i32], p: usize, keep_p: bool) -> Vec<i32> {
    let half = t.len() / 2;
    let low = (1usize << p) - 1;
    (0..half)
        .map(|m| {
            let e = (m & low) | ((m & !low) << 1);
            t[if keep_p { e | 1 << p } else { e }]
        })
        .collect()
}

impl Recursion {
    fn power(base: &BiPoly, e: i32) -> BiPoly {
        assert!(e >= 0, "negative exponent {e} in the recursion");
        base.pow(e as u32)
    }

    /// `T̃` of the minor with table `t` on the original elements `alive`.
    fn eval(&mut self, t: &[i32], alive: &[usize]) -> BiPoly {
        if alive.is_empty() {
            return BiPoly::one();
        }
        if let Some(p) = self.memo.get(t) {
            return p.clone();
        }
        let pos = self
            .priority
            .iter()
            .find_map(|e| alive.iter().position(|a| a == e))
            .unwrap_or(0);
        let mut rest = alive.to_vec();
        rest.remove(pos);

        let (r_g, q_g) = extremes(t);
        let re = t[1 << pos];
        let del = drop_bit(t, pos, false);
        let con: Vec<i32> = drop_bit(t, pos, true).into_iter().map(|r| r - re).collect();
        let (r_d, q_d) = extremes(&del);
        let (r_c, q_c) = extremes(&con);

        let td = self.eval(&del, &rest);
        let tc = self.eval(&con, &rest);
        let left = &(&Self::power(&self.x1, r_g - r_d) * &Self::power(&self.y1, q_g - q_d)) * &td;
        let right = &(&Self::power(&self.x1, r_g - re - r_c)
            * &Self::power(&self.y1, 1 - re + q_g - q_c))
            * &tc;
        let out = &left + &right;
        self.memo.insert(t.to_vec(), out.clone());
        out
    }
}

/// Deletion-contraction
/// `T(G) = (x−1)^{r(G) − r(G−e)} T(G−e) + (y−1)^{1 − r(e)} T(G/e)`,
/// in the normalized form described in the module docs, memoized on the exact
/// rank table of each minor.
pub fn tutte_recursion(g: &RankedSet, order: &PivotOrder) -> BiPoly {
    let priority = match order {
        PivotOrder::Lowest => Vec::new(),
        PivotOrder::Priority(p) => p.clone(),
    };
    let mut rec = Recursion {
        memo: HashMap::new(),
        priority,
        x1: "x - 1".parse().expect("literal"),
        y1: "y - 1".parse().expect("literal"),
    };
    let alive: Vec<usize> = (0..g.n()).collect();
    rec.eval(g.table(), &alive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Expansion,
    Recursion,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct TutteResult {
    pub tutte: BiPoly,
    pub s_poly: BiPoly,
    pub method: Method,
    pub cross_checked: bool,
}

/// Expansion, plus the recursion when `cross_check` is set.
pub fn compute(g: &RankedSet, cross_check: bool, order: &PivotOrder) -> Result<TutteResult> {
    let s_poly = corank_nullity(g);
    let tutte = shifted_from_grid(&s_poly);
    if cross_check && tutte_recursion(g, order) != tutte {
        return Err(Error::EngineMismatch);
    }
    Ok(TutteResult {
        tutte,
        s_poly,
        method: if cross_check {
            Method::Both
        } else {
            Method::Expansion
        },
        cross_checked: cross_check,
    })
}

/// Number of bases of a matroid, read off as `T(1, 1)`.
pub fn basis_count(t: &BiPoly) -> BigInt {
    t.eval_int(1, 1)
}
