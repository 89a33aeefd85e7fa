//! Double shelling of a poset: feasible sets are unions `I ∪ J` of an order
//! ideal and an order filter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{antimatroid_from_feasible, ConvexFamily};
use crate::error::{Error, Result};
use crate::ranked::{elements, GroundSet, Mask, RankedSet};

#[derive(Clone, Debug)]
pub struct Poset {
    ground: GroundSet,
    /// `below[x]` holds every `y ≤ x`, including `x`.
    below: Vec<Mask>,
    above: Vec<Mask>,
}

impl Poset {
    /// `relations` lists pairs `(lesser, greater)`; the transitive closure is
    /// taken.
    pub fn new<S: AsRef<str>>(items: &[S], relations: &[(S, S)]) -> Result<Poset> {
        let ground = GroundSet::new(items.iter().map(|s| s.as_ref().to_string()))?;
        let n = ground.len();
        let mut below: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        for (lo, hi) in relations {
            let lo = ground.index_of(lo.as_ref())?;
            let hi = ground.index_of(hi.as_ref())?;
            below[hi] |= 1 << lo;
        }
        // Warshall over bitmasks
        for k in 0..n {
            for x in 0..n {
                if below[x] & 1 << k != 0 {
                    below[x] |= below[k];
                }
            }
        }
        for x in 0..n {
            for y in elements(below[x] & !(1 << x)) {
                if below[y] & 1 << x != 0 {
                    return Err(Error::NotAPoset(format!(
                        "{} and {} lie below each other",
                        ground.label(x),
                        ground.label(y)
                    )));
                }
            }
        }
        let above = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| below[y] & 1 << x != 0)
                    .fold(0, |a, y| a | 1 << y)
            })
            .collect();
        Ok(Poset {
            ground,
            below,
            above,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] & 1 << x != 0
    }

    fn is_ideal(&self, m: Mask) -> bool {
        elements(m).all(|x| self.below[x] & !m == 0)
    }

    fn is_filter(&self, m: Mask) -> bool {
        elements(m).all(|x| self.above[x] & !m == 0)
    }

    /// Minimal and maximal elements of `c` in the induced order.
    pub fn minmax(&self, c: Mask) -> Mask {
        elements(c)
            .filter(|&x| self.below[x] & c == 1 << x || self.above[x] & c == 1 << x)
            .fold(0, |a, x| a | 1 << x)
    }
}

pub fn poset_double_shelling(p: &Poset) -> Result<(RankedSet, ConvexFamily)> {
    let full = p.ground.full();
    let ideals: Vec<Mask> = (0..=full).filter(|&m| p.is_ideal(m)).collect();
    let filters: Vec<Mask> = (0..=full).filter(|&m| p.is_filter(m)).collect();
    let mut feasible = vec![false; full as usize + 1];
    for &i in &ideals {
        for &j in &filters {
            feasible[(i | j) as usize] = true;
        }
    }
    let sets = (0..=full).filter(|&m| feasible[m as usize]).collect();
    antimatroid_from_feasible(p.ground.clone(), sets)
}

/// Elements that are neither minimal nor maximal and are comparable to every
/// element.
pub fn bottlenecks(p: &Poset) -> usize {
    let n = p.ground.len();
    let full = p.ground.full();
    (0..n)
        .filter(|&x| {
            p.below[x] != 1 << x && p.above[x] != 1 << x && p.below[x] | p.above[x] == full
        })
        .count()
}

/// A random poset on `a, b, …`: each pair `i < j` is related with probability
/// `density`, then closed transitively.
pub fn random_poset(n: usize, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.gen_range(0.15..0.6);
    let g = GroundSet::letters(n);
    let labels: Vec<String> = g.labels().to_vec();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::new(&labels, &rel).expect("index order is a linear extension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antimatroid::{
        a_table, beta_sum, tutte_via_convex, unique_interior_sets, unique_interior_sum,
    };
    use crate::tutte::tutte_expansion;

    fn chain() -> Poset {
        Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn antichain_is_free() {
        let p = Poset::new::<&str>(&["a", "b", "c"], &[]).unwrap();
        let (_, cf) = poset_double_shelling(&p).unwrap();
        assert_eq!(cf.len(), 8);
        assert_eq!(bottlenecks(&p), 0);
    }

    #[test]
    fn chain_examples() {
        let p = chain();
        let (_, cf) = poset_double_shelling(&p).unwrap();
        let g = p.ground();
        assert!(!cf.is_convex(g.mask_of(["a", "c"]).unwrap()));
        assert!(cf.is_convex(g.mask_of(["a", "b"]).unwrap()));
        assert_eq!(bottlenecks(&p), 1);
        let b = g.index_of("b").unwrap();
        assert_eq!(unique_interior_sets(&cf, b), vec![g.full()]);
        assert_eq!(unique_interior_sum(&cf), -1);
    }

    #[test]
    fn diamond_has_no_bottleneck() {
        let p = Poset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        assert_eq!(bottlenecks(&p), 0);
        assert!(p.leq(0, 3));
    }

    #[test]
    fn cycles_rejected() {
        assert!(matches!(
            Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::NotAPoset(_))
        ));
    }

    #[test]
    fn random_posets_match_theorems() {
        for seed in 0..30 {
            let p = random_poset(2 + seed as usize % 6, seed);
            let (g, cf) = poset_double_shelling(&p).unwrap();
            for &c in cf.sets() {
                assert_eq!(cf.extreme_points(c).unwrap(), p.minmax(c));
            }
            assert_eq!(tutte_via_convex(&cf), tutte_expansion(&g));
            let b = bottlenecks(&p) as i64;
            assert_eq!(beta_sum(&a_table(&cf)), b);
            assert_eq!(unique_interior_sum(&cf), -b);
        }
    }
}
