//! Convex sets of antimatroids and the convex-set expansion of `T`.
//!
//! A set is convex when its complement is feasible. Convex sets are closed
//! under intersection, which gives a closure operator; an element `p` of a
//! convex set `C` is extreme when `p ∉ closure(C − p)`.

mod chordal;
mod points;
mod poset;
mod tree;

pub use chordal::{
    chordal_blocks, chordal_simplicial, clique_counts, random_chordal, ChordalGraph,
};
pub use points::{
    affine_dimension, geometric_convex_sets, hull_member, point_set, random_points,
    relative_interior_points, Point, PointConfig,
};
pub use poset::{bottlenecks, poset_double_shelling, random_poset, Poset};
pub use tree::{random_tree, tree_interior_edges, tree_pruning, Tree};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bipoly::{binomial, BiPoly};
use crate::error::{Error, Result};
use crate::identities::expected_profile;
use crate::ranked::{elements, size, FeasibleFamily, GroundSet, Mask, RankedSet};

#[derive(Clone, Debug)]
pub struct ConvexFamily {
    ground: GroundSet,
    convex: Vec<Mask>,
    is_convex: Vec<bool>,
    closure: Vec<Mask>,
}

impl ConvexFamily {
    /// Complements of `feasible`; fails unless they are intersection-closed
    /// and include the full set.
    pub(crate) fn from_feasible_masks(
        ground: GroundSet,
        feasible: &[Mask],
    ) -> Result<ConvexFamily> {
        let full = ground.full();
        let mut is_convex = vec![false; 1usize << ground.len()];
        for &f in feasible {
            is_convex[(full & !f) as usize] = true;
        }
        if !is_convex[full as usize] {
            return Err(Error::NotAntimatroid(
                "the empty set is not feasible".into(),
            ));
        }
        // closure[m] = intersection of all convex supersets of m
        let mut closure = vec![full; is_convex.len()];
        for m in (0..=full).rev() {
            let mut c = if is_convex[m as usize] { m } else { full };
            for i in elements(full & !m) {
                c &= closure[(m | 1 << i) as usize];
            }
            closure[m as usize] = c;
        }
        for m in 0..=full {
            if !is_convex[closure[m as usize] as usize] {
                return Err(Error::NotAntimatroid(format!(
                    "convex sets are not closed under intersection near {}",
                    ground.show(m)
                )));
            }
        }
        let convex = (0..=full).filter(|&m| is_convex[m as usize]).collect();
        Ok(ConvexFamily {
            ground,
            convex,
            is_convex,
            closure,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// Convex sets in increasing mask order.
    pub fn sets(&self) -> &[Mask] {
        &self.convex
    }

    pub fn len(&self) -> usize {
        self.convex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.convex.is_empty()
    }

    pub fn is_convex(&self, m: Mask) -> bool {
        self.is_convex[m as usize]
    }

    pub fn convex_closure(&self, a: Mask) -> Mask {
        self.closure[a as usize]
    }

    pub fn extreme_points(&self, c: Mask) -> Result<Mask> {
        if !self.is_convex(c) {
            return Err(Error::NotConvex(self.ground.key(c)));
        }
        Ok(self.extreme_unchecked(c))
    }

    fn extreme_unchecked(&self, c: Mask) -> Mask {
        elements(c)
            .filter(|&p| self.closure[(c & !(1 << p)) as usize] & 1 << p == 0)
            .fold(0, |acc, p| acc | 1 << p)
    }

    pub fn interior(&self, c: Mask) -> Result<Mask> {
        Ok(c & !self.extreme_points(c)?)
    }

    /// The feasible sets, as a family.
    pub fn feasible_family(&self) -> FeasibleFamily {
        let full = self.ground.full();
        FeasibleFamily::new(self.ground.clone(), self.convex.iter().map(|&c| full & !c))
            .expect("complements of convex sets are masks over the ground set")
    }

    /// Convex sets with empty interior.
    pub fn free_sets(&self) -> Vec<Mask> {
        self.convex
            .iter()
            .copied()
            .filter(|&c| self.extreme_unchecked(c) == c)
            .collect()
    }
}

/// The convex sets of an antimatroid.
pub fn convex_family(g: &RankedSet) -> Result<ConvexFamily> {
    if let Some(w) = g.antimatroid_violation() {
        return Err(Error::NotAntimatroid(w.describe(g.ground())));
    }
    let feasible: Vec<Mask> = (0..=g.full()).filter(|&m| g.rank(m) == size(m)).collect();
    ConvexFamily::from_feasible_masks(g.ground().clone(), &feasible)
}

/// Builds the ranked set of a feasible family and its convex family,
/// verifying that it is an antimatroid.
pub(crate) fn antimatroid_from_feasible(
    ground: GroundSet,
    feasible: Vec<Mask>,
) -> Result<(RankedSet, ConvexFamily)> {
    let fam = FeasibleFamily::new(ground, feasible)?;
    let g = RankedSet::from_feasible(&fam)?;
    let cf = convex_family(&g)?;
    Ok((g, cf))
}

/// One of the four antimatroid families, before building.
#[derive(Clone, Debug)]
pub enum Family {
    Tree(Tree),
    Poset(Poset),
    Chordal(ChordalGraph),
    Points(PointConfig),
}

/// What the family theorem predicts for `Σ (−1)^i i f_i` and for the
/// unique-interior alternating sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaPrediction {
    pub invariant: &'static str,
    pub value: i64,
    pub beta: i64,
    pub unique_interior: i64,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tree(_) => "tree_pruning",
            Family::Poset(_) => "poset",
            Family::Chordal(_) => "chordal",
            Family::Points(_) => "points",
        }
    }

    pub fn build(&self) -> Result<(RankedSet, ConvexFamily)> {
        match self {
            Family::Tree(t) => tree_pruning(t),
            Family::Poset(p) => poset_double_shelling(p),
            Family::Chordal(g) => chordal_simplicial(g),
            Family::Points(pc) => point_set(pc),
        }
    }

    pub fn predict(&self) -> BetaPrediction {
        match self {
            Family::Tree(t) => {
                let m = tree_interior_edges(t) as i64;
                BetaPrediction {
                    invariant: "interior edges",
                    value: m,
                    beta: m,
                    unique_interior: -m,
                }
            }
            Family::Poset(p) => {
                let b = bottlenecks(p) as i64;
                BetaPrediction {
                    invariant: "bottlenecks",
                    value: b,
                    beta: b,
                    unique_interior: -b,
                }
            }
            Family::Chordal(g) => {
                let b = chordal_blocks(g) as i64;
                BetaPrediction {
                    invariant: "blocks",
                    value: b,
                    beta: b - 1,
                    unique_interior: 1 - b,
                }
            }
            Family::Points(pc) => {
                let d = affine_dimension(pc, pc.ground().full()).unwrap_or(0) as i64;
                let int = size(relative_interior_points(pc)) as i64;
                let sign = alt(d as usize);
                BetaPrediction {
                    invariant: "relative interior points",
                    value: int,
                    beta: -sign * int,
                    unique_interior: sign * int,
                }
            }
        }
    }
}

/// `a[i][j]` counts convex sets with `i` elements, `j` of them interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ATable {
    pub a: Vec<Vec<u64>>,
    pub f: Vec<u64>,
}

impl ATable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.a.iter().flatten().sum()
    }
}

pub fn a_table(cf: &ConvexFamily) -> ATable {
    let n = cf.n();
    let mut a = vec![vec![0u64; n + 1]; n + 1];
    for &c in &cf.convex {
        let int = c & !cf.extreme_unchecked(c);
        a[size(c) as usize][size(int) as usize] += 1;
    }
    let f = a.iter().map(|r| r[0]).collect();
    ATable { a, f }
}

/// `Σ_C (x−1)^{|C|} y^{|int C|}` over all convex sets.
pub fn tutte_via_convex(cf: &ConvexFamily) -> BiPoly {
    BiPoly::from_counts(&a_table(cf).a).translate(-1, 0)
}

/// `b_{i,j} = Σ_{s=i..n} (−1)^{s−i} C(s, i) a_{s,j}`
pub fn b_from_a(at: &ATable, n: usize) -> BiPoly {
    let width = at.a.iter().map(Vec::len).max().unwrap_or(0);
    let grid = (0..=n)
        .map(|i| {
            (0..width)
                .map(|j| {
                    (i..=n)
                        .map(|s| {
                            let sign = if (s - i) % 2 == 0 { 1 } else { -1 };
                            binomial(s as i64, i as i64) * (sign * at.get(s, j) as i64)
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    BiPoly::from_grid(grid)
}

fn alt(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ (−1)^i i f_i`
pub fn beta_sum(at: &ATable) -> i64 {
    at.f.iter()
        .enumerate()
        .map(|(i, &f)| alt(i) * i as i64 * f as i64)
        .sum()
}

/// The low-order specializations of the affine relations for antimatroids.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyIdentities {
    pub n: usize,
    /// `Σ (−1)^i f_i`, zero when `n ≥ 1`
    pub euler: i64,
    /// `Σ (−1)^{i−1} i f_i` and `Σ (−1)^i a_{i,1}`, equal when `n ≥ 2`
    pub k1: (i64, i64),
    /// `Σ (−1)^i (C(i+1,2) f_i + i a_{i,1} + a_{i,2})`, zero when `n ≥ 3`
    pub k2: i64,
    /// `I_0..I_n` of the transformed coefficients
    pub general: Vec<String>,
    pub pass: bool,
}

pub fn family_identities(at: &ATable, n: usize) -> FamilyIdentities {
    let rows = n + 1;
    let euler: i64 = (0..rows).map(|i| alt(i) * at.get(i, 0) as i64).sum();
    let k1 = (
        -beta_sum(at),
        (0..rows).map(|i| alt(i) * at.get(i, 1) as i64).sum(),
    );
    let k2 = (0..rows)
        .map(|i| {
            let tri = (i * (i + 1) / 2) as i64;
            alt(i)
                * (tri * at.get(i, 0) as i64 + i as i64 * at.get(i, 1) as i64 + at.get(i, 2) as i64)
        })
        .sum();
    let profile = b_from_a(at, n).i_profile(n);
    let mut pass = profile == expected_profile(n, n as i64);
    if n >= 1 {
        pass &= euler == 0;
    }
    if n >= 2 {
        pass &= k1.0 == k1.1;
    }
    if n >= 3 {
        pass &= k2 == 0;
    }
    FamilyIdentities {
        n,
        euler,
        k1,
        k2,
        general: profile.iter().map(BigInt::to_string).collect(),
        pass,
    }
}

/// Convex sets whose interior is exactly `{p}`.
pub fn unique_interior_sets(cf: &ConvexFamily, p: usize) -> Vec<Mask> {
    cf.convex
        .iter()
        .copied()
        .filter(|&c| c & !cf.extreme_unchecked(c) == 1 << p)
        .collect()
}

/// `Σ_p Σ_{C ∈ C_p} (−1)^{|C|}`, which equals `b_{0,1}`.
pub fn unique_interior_sum(cf: &ConvexFamily) -> i64 {
    (0..cf.n())
        .flat_map(|p| unique_interior_sets(cf, p))
        .map(|c| alt(size(c) as usize))
        .sum()
}

/// `b_{0,1}` read off a polynomial, as a machine integer.
pub fn b01(p: &BiPoly) -> i64 {
    let c = p.coeff(0, 1);
    if c.is_zero() {
        0
    } else {
        i64::try_from(c).expect("small coefficient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::free_ranked_set;
    use crate::tutte::tutte_expansion;

    fn path3() -> (RankedSet, ConvexFamily) {
        let tree = Tree::new(&[("u", "v", "1"), ("v", "w", "2"), ("w", "z", "3")]).unwrap();
        tree_pruning(&tree).unwrap()
    }

    fn m(g: &GroundSet, labels: &[&str]) -> Mask {
        g.mask_of(labels.iter().copied()).unwrap()
    }

    #[test]
    fn path_convex_family() {
        let (g, cf) = path3();
        let gs = g.ground().clone();
        let mut expect: Vec<Mask> = [
            &[][..],
            &["1"],
            &["2"],
            &["3"],
            &["1", "2"],
            &["2", "3"],
            &["1", "2", "3"],
        ]
        .iter()
        .map(|s| m(&gs, s))
        .collect();
        expect.sort();
        assert_eq!(cf.sets(), &expect[..]);
        assert_eq!(cf.convex_closure(m(&gs, &["1", "3"])), gs.full());
        assert_eq!(cf.convex_closure(0), 0);
        assert_eq!(cf.extreme_points(gs.full()).unwrap(), m(&gs, &["1", "3"]));
        assert_eq!(cf.interior(gs.full()).unwrap(), m(&gs, &["2"]));
        assert_eq!(cf.interior(m(&gs, &["2"])).unwrap(), 0);
        assert!(matches!(
            cf.extreme_points(m(&gs, &["1", "3"])),
            Err(Error::NotConvex(_))
        ));
        let t = tutte_via_convex(&cf);
        assert_eq!(
            t,
            "x^3*y - 3*x^2*y + 2*x^2 + 3*x*y - x - y".parse().unwrap()
        );
        assert_eq!(t, tutte_expansion(&g));
    }

    #[test]
    fn path_a_table_and_identities() {
        let (_, cf) = path3();
        let at = a_table(&cf);
        assert_eq!(at.f, vec![1, 3, 2, 0]);
        assert_eq!(at.get(3, 1), 1);
        assert_eq!(at.total(), 7);
        let b = b_from_a(&at, 3);
        assert_eq!(b.coeff(1, 0), BigInt::from(-1));
        assert_eq!(b, tutte_via_convex(&cf));
        let id = family_identities(&at, 3);
        assert_eq!(id.euler, 0);
        assert_eq!(id.k1, (-1, -1));
        assert!(id.pass);
        let p2 = cf.ground().index_of("2").unwrap();
        assert_eq!(unique_interior_sets(&cf, p2), vec![cf.ground().full()]);
        assert!(unique_interior_sets(&cf, 0).is_empty());
        assert_eq!(unique_interior_sum(&cf), -1);
    }

    #[test]
    fn free_structure_is_all_convex() {
        let g = free_ranked_set(GroundSet::letters(3));
        let cf = convex_family(&g).unwrap();
        assert_eq!(cf.len(), 8);
        let at = a_table(&cf);
        assert_eq!(at.f, vec![1, 3, 3, 1]);
        let two = ATable {
            a: vec![vec![1], vec![2], vec![1]],
            f: vec![1, 2, 1],
        };
        assert_eq!(b_from_a(&two, 2), BiPoly::x().pow(2));
        let single = ATable {
            a: vec![vec![1]],
            f: vec![1],
        };
        assert_eq!(b_from_a(&single, 0), BiPoly::one());
        assert_eq!(
            tutte_via_convex(&convex_family(&free_ranked_set(GroundSet::letters(1))).unwrap()),
            BiPoly::x()
        );
    }

    #[test]
    fn non_antimatroid_rejected() {
        let u24 = crate::constructions::uniform_matroid(2, 4).unwrap();
        assert!(matches!(convex_family(&u24), Err(Error::NotAntimatroid(_))));
    }

    #[test]
    fn every_nonempty_convex_set_has_an_extreme_point() {
        for seed in 0..20 {
            let (_, cf) = poset_double_shelling(&random_poset(6, seed)).unwrap();
            for &c in cf.sets() {
                if c != 0 {
                    assert_ne!(cf.extreme_points(c).unwrap(), 0);
                }
            }
        }
    }
}
