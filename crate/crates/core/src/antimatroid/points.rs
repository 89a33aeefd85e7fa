//! Convex shelling of a finite point set: `C` is convex when no other point of
//! the set lies in its convex hull. All geometry is exact over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{antimatroid_from_feasible, ConvexFamily};
use crate::error::{Error, Result};
use crate::ranked::{elements, full_mask, size, GroundSet, Mask, RankedSet};

pub type Point = Vec<BigRational>;

#[derive(Clone, Debug)]
pub struct PointConfig {
    ground: GroundSet,
    dim: usize,
    coords: Vec<Point>,
}

impl PointConfig {
    pub fn new(labels: &[String], dim: usize, coords: Vec<Point>) -> Result<PointConfig> {
        let ground = GroundSet::new(labels.iter().cloned())?;
        if coords.len() != ground.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels but {} points",
                ground.len(),
                coords.len()
            )));
        }
        for (i, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "point `{}` has {} coordinates, expected {dim}",
                    ground.label(i),
                    c.len()
                )));
            }
            if let Some(j) = coords[..i].iter().position(|d| d == c) {
                return Err(Error::DuplicatePoint(format!(
                    "`{}` and `{}`",
                    ground.label(j),
                    ground.label(i)
                )));
            }
        }
        Ok(PointConfig {
            ground,
            dim,
            coords,
        })
    }

    pub fn from_integers(labels: &[&str], coords: &[&[i64]]) -> Result<PointConfig> {
        let dim = coords.first().map_or(0, |c| c.len());
        let pts = coords
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        PointConfig::new(&labels, dim, pts)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    fn pick(&self, m: Mask) -> Vec<Point> {
        elements(m).map(|i| self.coords[i].clone()).collect()
    }

    /// Points of `c` not in the hull of the rest of `c`.
    pub fn geometric_extreme(&self, c: Mask) -> Mask {
        elements(c)
            .filter(|&p| !hull_member(&self.coords[p], &self.pick(c & !(1 << p))))
            .fold(0, |a, p| a | 1 << p)
    }
}

/// Solves `A x = b` exactly. Returns the rank of `A` and, when the system is
/// consistent and `A` has full column rank, the solution.
fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> (usize, Option<Vec<BigRational>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let consistent = m[rank..].iter().all(|r| r[cols].is_zero());
    if !consistent || rank < cols {
        return (rank, None);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    (rank, Some(x))
}

/// Columns `[p; 1]` for the points of `t`, as a row-major matrix.
fn lifted(t: &[Point], dim: usize) -> Vec<Vec<BigRational>> {
    (0..=dim)
        .map(|row| {
            t.iter()
                .map(|p| {
                    if row < dim {
                        p[row].clone()
                    } else {
                        BigRational::one()
                    }
                })
                .collect()
        })
        .collect()
}

fn lifted_rhs(q: &[BigRational], last: BigRational) -> Vec<BigRational> {
    let mut v = q.to_vec();
    v.push(last);
    v
}

/// Barycentric coordinates of `q` over the affinely independent `t`, if `q`
/// lies in their affine span.
fn barycentric(t: &[Point], q: &[BigRational]) -> Option<Vec<BigRational>> {
    let dim = q.len();
    solve(&lifted(t, dim), &lifted_rhs(q, BigRational::one())).1
}

fn small_subsets(n: usize, max: usize) -> impl Iterator<Item = Mask> {
    (1..=full_mask(n)).filter(move |&m| size(m) as usize <= max)
}

/// True iff `q` lies in the convex hull of `c`, found by searching the
/// affinely independent subsets of size at most `d + 1`.
pub fn hull_member(q: &[BigRational], c: &[Point]) -> bool {
    let n = c.len();
    if n == 0 {
        return false;
    }
    let dim = q.len();
    for t in small_subsets(n, dim + 1) {
        let pts: Vec<Point> = elements(t).map(|i| c[i].clone()).collect();
        if let Some(l) = barycentric(&pts, q) {
            if l.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Dimension of the affine span of the points in `m`, or `None` for `m = ∅`.
pub fn affine_dimension(pc: &PointConfig, m: Mask) -> Option<usize> {
    let pts = pc.pick(m);
    let first = pts.first()?;
    let rows: Vec<Vec<BigRational>> = (0..pc.dim)
        .map(|k| pts[1..].iter().map(|p| &p[k] - &first[k]).collect())
        .collect();
    if pts.len() == 1 {
        return Some(0);
    }
    let zeros = vec![BigRational::zero(); pc.dim];
    Some(solve(&rows, &zeros).0)
}

/// Points of the set lying in the relative interior of its convex hull.
///
/// `p` qualifies when, for every other point `q`, the ray from `q` through `p`
/// stays in the hull a little past `p`; that is decided on the simplices
/// spanned by affinely independent subsets.
pub fn relative_interior_points(pc: &PointConfig) -> Mask {
    let n = pc.ground.len();
    let simplices: Vec<Vec<Point>> = small_subsets(n, pc.dim + 1)
        .map(|t| pc.pick(t))
        .filter(|pts| {
            solve(&lifted(pts, pc.dim), &vec![BigRational::zero(); pc.dim + 1]).0 == pts.len()
        })
        .collect();
    let mut out = 0;
    for p in 0..n {
        let pp = &pc.coords[p];
        let inside = (0..n).filter(|&q| q != p).all(|q| {
            let dir: Vec<BigRational> = pp.iter().zip(&pc.coords[q]).map(|(a, b)| a - b).collect();
            simplices.iter().any(|t| {
                let Some(l) = barycentric(t, pp) else {
                    return false;
                };
                if l.iter().any(Signed::is_negative) {
                    return false;
                }
                let Some(mu) = solve(&lifted(t, pc.dim), &lifted_rhs(&dir, BigRational::zero())).1
                else {
                    return false;
                };
                l.iter()
                    .zip(&mu)
                    .all(|(a, b)| a.is_positive() || !b.is_negative())
            })
        });
        if inside {
            out |= 1 << p;
        }
    }
    out
}

/// Convex sets by direct hull tests on every subset; the slow oracle.
pub fn geometric_convex_sets(pc: &PointConfig) -> Vec<Mask> {
    let full = pc.ground.full();
    (0..=full)
        .filter(|&c| {
            let pts = pc.pick(c);
            elements(full & !c).all(|q| !hull_member(&pc.coords[q], &pts))
        })
        .collect()
}

pub fn point_set(pc: &PointConfig) -> Result<(RankedSet, ConvexFamily)> {
    let full = pc.ground.full();
    // hull[m]: points of the set inside conv(m), built from simplices upward
    let mut hull = vec![0 as Mask; full as usize + 1];
    for m in 1..=full {
        let mut h = m;
        for i in elements(m) {
            h |= hull[(m & !(1 << i)) as usize];
        }
        if size(m) as usize <= pc.dim + 1 {
            let t = pc.pick(m);
            for q in elements(full & !h) {
                if let Some(l) = barycentric(&t, &pc.coords[q]) {
                    if l.iter().all(|x| !x.is_negative()) {
                        h |= 1 << q;
                    }
                }
            }
        }
        hull[m as usize] = h;
    }
    let feasible = (0..=full)
        .filter(|&c| hull[c as usize] == c)
        .map(|c| full & !c)
        .collect();
    antimatroid_from_feasible(pc.ground.clone(), feasible)
}

/// `n` distinct random integer points in dimension `dim`, labelled `a, b, …`.
/// Coordinates are small so that collinear and coplanar subsets are common.
pub fn random_points(n: usize, dim: usize, seed: u64) -> PointConfig {
    assert!(dim >= 1 && (1..=20).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span: i64 = if dim == 1 { n as i64 + 2 } else { 2 };
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(-span..=span)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let labels = GroundSet::letters(n);
    let coords = pts
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    PointConfig::new(labels.labels(), dim, coords).expect("points are distinct")
}
