//! Duality, minors, truncation, free (co-)extension and the concrete builders.
//!
//! Minors keep the inherited ground order with the removed element dropped.
//! Deletion and contraction return [`RankTable`]: a minor of a ranked set can
//! break R1 or R2 (contracting a greedoid loop does).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ranked::{elements, expand, size, GroundSet, Mask, RankTable, RankedSet};

impl RankTable {
    /// `r*(A) = |A| + r(S − A) − r(S)`
    pub fn dual_table(&self) -> RankTable {
        let full = self.full();
        let rs = self.full_rank();
        RankTable::from_fn(self.ground().clone(), |a| {
            size(a) + self.rank(full & !a) - rs
        })
    }

    /// Restriction to `S − p`.
    pub fn delete(&self, p: usize) -> RankTable {
        assert!(p < self.n());
        RankTable::from_fn(self.ground().without(p), |a| self.rank(expand(a, p)))
    }

    /// `r(A ∪ p) − r(p)` on `S − p`.
    pub fn contract(&self, p: usize) -> RankTable {
        assert!(p < self.n());
        let rp = self.rank(1 << p);
        RankTable::from_fn(self.ground().without(p), |a| {
            self.rank(expand(a, p) | 1 << p) - rp
        })
    }

    /// Contraction computed as `(G* − p)*`.
    pub fn contract_via_duality(&self, p: usize) -> RankTable {
        self.dual_table().delete(p).dual_table()
    }

    pub fn delete_label(&self, label: &str) -> Result<RankTable> {
        Ok(self.delete(self.ground().index_of(label)?))
    }

    pub fn contract_label(&self, label: &str) -> Result<RankTable> {
        Ok(self.contract(self.ground().index_of(label)?))
    }

    /// The free extension rule, valid for any table: the new element sits at
    /// index `n`.
    fn extension_table(&self, label: &str) -> Result<RankTable> {
        let n = self.n();
        let ground = self.ground().with(label)?;
        let rs = self.full_rank();
        let p: Mask = 1 << n;
        Ok(RankTable::from_fn(ground, |a| {
            if a & p == 0 {
                self.rank(a)
            } else {
                let r = self.rank(a & !p);
                if r == rs {
                    r
                } else {
                    r + 1
                }
            }
        }))
    }
}

impl RankedSet {
    pub fn dual(&self) -> RankedSet {
        RankedSet::trusted(self.dual_table())
    }

    /// Lowers the full rank by one.
    pub fn truncate(&self) -> Result<RankedSet> {
        let rs = self.full_rank();
        if rs == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(RankedSet::trusted(RankTable::from_fn(
            self.ground().clone(),
            |a| {
                let r = self.rank(a);
                if r < rs {
                    r
                } else {
                    r - 1
                }
            },
        )))
    }

    /// `G + p`, adding `p` in general position.
    pub fn free_extension(&self, label: &str) -> Result<RankedSet> {
        Ok(RankedSet::trusted(self.extension_table(label)?))
    }

    /// `G × p = (G* + p)*`
    pub fn free_coextension(&self, label: &str) -> Result<RankedSet> {
        Ok(self.dual().free_extension(label)?.dual())
    }

    /// Sets `r(S) = n` and leaves every other rank alone.
    pub fn raise_to_full_rank(&self) -> RankedSet {
        let full = self.full();
        let n = self.n() as i32;
        RankedSet::trusted(RankTable::from_fn(self.ground().clone(), |a| {
            if a == full {
                n
            } else {
                self.rank(a)
            }
        }))
    }
}

/// `U_{r,n}` on `a, b, c, …`: `r(A) = min(|A|, r)`.
pub fn uniform_matroid(r: i64, n: i64) -> Result<RankedSet> {
    if n < 0 || r < 0 || r > n {
        return Err(Error::BadParams(format!(
            "uniform matroid needs 0 ≤ r ≤ n, got r={r}, n={n}"
        )));
    }
    if n as usize > crate::MAX_N {
        return Err(Error::TooLarge {
            n: n as usize,
            max: crate::MAX_N,
        });
    }
    let g = GroundSet::letters(n as usize);
    Ok(RankedSet::trusted(RankTable::from_fn(g, |a| {
        size(a).min(r as i32)
    })))
}

/// Every subset has full rank.
pub fn free_ranked_set(ground: GroundSet) -> RankedSet {
    RankedSet::trusted(RankTable::from_fn(ground, size))
}

/// An edge given as `(endpoint, endpoint, label)`.
pub type LabeledEdge = (String, String, String);

struct IndexedGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    ground: GroundSet,
}

fn index_graph(vertices: &[String], edges: &[LabeledEdge]) -> Result<IndexedGraph> {
    let vg = GroundSet::new(vertices.iter().cloned())
        .map_err(|e| Error::BadGraph(format!("vertex list: {e}")))?;
    let ground = GroundSet::new(edges.iter().map(|e| e.2.clone()))
        .map_err(|e| Error::BadGraph(format!("edge labels: {e}")))?;
    let idx = |v: &str| {
        vg.index_of(v)
            .map_err(|_| Error::BadGraph(format!("unknown vertex `{v}`")))
    };
    let edges = edges
        .iter()
        .map(|(u, v, _)| Ok((idx(u)?, idx(v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexedGraph {
        vertices: vertices.len(),
        edges,
        ground,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The cycle matroid: `r(A)` is the size of a spanning forest of `A`.
pub fn graphic_matroid(vertices: &[String], edges: &[LabeledEdge]) -> Result<RankedSet> {
    let g = index_graph(vertices, edges)?;
    let table = RankTable::from_fn(g.ground, |a| {
        let mut parent: Vec<usize> = (0..g.vertices).collect();
        let mut r = 0;
        for e in elements(a) {
            let (u, v) = g.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                r += 1;
            }
        }
        r
    });
    Ok(RankedSet::trusted(table))
}

/// A graph with a distinguished root vertex; edge labels form the ground set.
#[derive(Clone, Debug)]
pub struct RootedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<LabeledEdge>,
    pub root: String,
}

impl RootedGraph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)], root: &str) -> RootedGraph {
        RootedGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(u, v, l)| (u.to_string(), v.to_string(), l.to_string()))
                .collect(),
            root: root.to_string(),
        }
    }
}

/// Feasible sets are edge sets of subtrees containing the root, so `r(A)` is
/// one less than the number of vertices reachable from the root through `A`.
pub fn branching_greedoid(rg: &RootedGraph) -> Result<RankedSet> {
    let g = index_graph(&rg.vertices, &rg.edges)?;
    let root = rg
        .vertices
        .iter()
        .position(|v| *v == rg.root)
        .ok_or_else(|| Error::BadGraph(format!("root `{}` is not a vertex", rg.root)))?;
    let table = RankTable::from_fn(g.ground, |a| {
        let mut reached = vec![false; g.vertices];
        reached[root] = true;
        let mut count = 1;
        loop {
            let mut grew = false;
            for e in elements(a) {
                let (u, v) = g.edges[e];
                if reached[u] != reached[v] {
                    reached[u] = true;
                    reached[v] = true;
                    count += 1;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        count - 1
    });
    Ok(RankedSet::trusted(table))
}

/// A random ranked set on `a, b, …`: each `r(A)` uniform in `[0, |A|]`, then
/// `r(S)` raised to the maximum so that R1 holds.
///
/// Panics if `n > 12`.
pub fn random_ranked_set(n: usize, seed: u64) -> RankedSet {
    assert!(n <= 12, "random ranked sets are limited to 12 elements");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank: Vec<i32> = (0..1u32 << n)
        .map(|m| {
            if m == 0 {
                0
            } else {
                rng.gen_range(0..=size(m))
            }
        })
        .collect();
    let full = (1usize << n) - 1;
    let max = rank.iter().copied().max().unwrap_or(0);
    rank[full] = max;
    RankedSet::trusted(RankTable::from_raw(GroundSet::letters(n), rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tutte::tutte_expansion;
    use crate::BiPoly;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn same(a: &RankTable, b: &RankTable) -> bool {
        a.table() == b.table() && a.ground() == b.ground()
    }

    #[test]
    fn dual_examples() {
        let isthmus = uniform_matroid(1, 1).unwrap();
        assert_eq!(isthmus.dual().table(), &[0, 0]);
        let u24 = uniform_matroid(2, 4).unwrap();
        assert_eq!(u24.dual(), u24);
        let u14 = uniform_matroid(1, 4).unwrap();
        assert_eq!(u14.dual(), uniform_matroid(3, 4).unwrap());
        for seed in 0..50 {
            let g = random_ranked_set(5, seed);
            assert_eq!(g.dual().dual(), g);
            assert_eq!(g.dual().full_rank(), 5 - g.full_rank());
        }
    }

    #[test]
    fn dual_can_have_negative_ranks() {
        let g = RankedSet::new(GroundSet::letters(2), vec![0, 0, 0, 2]).unwrap();
        assert_eq!(g.dual().rank(1), -1);
    }

    #[test]
    fn delete_examples() {
        let u24 = uniform_matroid(2, 4).unwrap();
        let d = u24.delete(0);
        assert_eq!(d.table(), uniform_matroid(2, 3).unwrap().table());
        assert_eq!(d.ground().labels(), &["b", "c", "d"]);
        let one = uniform_matroid(1, 1).unwrap().delete(0);
        assert_eq!(one.n(), 0);
        assert!(matches!(
            u24.delete_label("z"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn contract_examples() {
        let u24 = uniform_matroid(2, 4).unwrap();
        assert_eq!(
            u24.contract(0).table(),
            uniform_matroid(1, 3).unwrap().table()
        );
        assert_eq!(uniform_matroid(1, 1).unwrap().contract(0).n(), 0);
        for seed in 0..100 {
            let g = random_ranked_set(5, seed);
            for e in 0..5 {
                assert!(same(&g.contract(e), &g.contract_via_duality(e)));
            }
        }
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(
            uniform_matroid(3, 4).unwrap().truncate().unwrap(),
            uniform_matroid(2, 4).unwrap()
        );
        assert_eq!(
            uniform_matroid(2, 2).unwrap().truncate().unwrap(),
            uniform_matroid(1, 2).unwrap()
        );
        assert_eq!(
            uniform_matroid(0, 3).unwrap().truncate().unwrap_err(),
            Error::ZeroRank
        );
    }

    #[test]
    fn free_extension_examples() {
        let u23 = uniform_matroid(2, 3).unwrap();
        assert_eq!(
            u23.free_extension("d").unwrap(),
            uniform_matroid(2, 4).unwrap()
        );
        assert!(matches!(
            u23.free_extension("a"),
            Err(Error::DuplicateElement(_))
        ));
        for seed in 0..100 {
            let g = random_ranked_set(4, seed);
            let ext = g.free_extension("p").unwrap();
            assert!(same(&ext.delete(4), &g));
            assert_eq!(ext.full_rank(), g.full_rank());
            if g.full_rank() > 0 {
                assert_eq!(ext.contract(4).full_rank(), g.full_rank() - 1);
            }
        }
    }

    #[test]
    fn free_coextension_examples() {
        let lp = uniform_matroid(0, 1).unwrap();
        let c = lp.free_coextension("p").unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.full_rank(), 1);
        assert_eq!(c.table(), &[0, 1, 1, 1]);
        for seed in 0..100 {
            let g = random_ranked_set(4, seed);
            let co = g.free_coextension("p").unwrap();
            assert!(same(&co.contract(4), &g));
            assert_eq!(co.full_rank(), g.full_rank() + 1);
            if g.full_rank() < 4 {
                assert_eq!(co.delete(4).full_rank(), g.full_rank() + 1);
            }
        }
    }

    #[test]
    fn extension_rank_claims_fail_at_the_extremes() {
        // rank 0: (G + p)/p keeps rank 0
        let loops = uniform_matroid(0, 2).unwrap();
        let ext = loops.free_extension("p").unwrap();
        assert_eq!(ext.contract(2).full_rank(), 0);
        // full rank: (G × p) − p cannot exceed n
        let free = uniform_matroid(2, 2).unwrap();
        let co = free.free_coextension("p").unwrap();
        assert_eq!(co.delete(2).full_rank(), 2);
    }

    #[test]
    fn raise_examples() {
        let u24 = uniform_matroid(2, 4).unwrap();
        let raised = u24.raise_to_full_rank();
        let diffs: Vec<Mask> = (0..16).filter(|&m| raised.rank(m) != u24.rank(m)).collect();
        assert_eq!(diffs, vec![15]);
        assert_eq!(raised.full_rank(), 4);
        let free = free_ranked_set(GroundSet::letters(3));
        assert_eq!(free.raise_to_full_rank(), free);
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(
            tutte_expansion(&uniform_matroid(2, 4).unwrap()),
            p("x^2 + 2*x + 2*y + y^2")
        );
        assert_eq!(tutte_expansion(&uniform_matroid(0, 3).unwrap()), p("y^3"));
        assert_eq!(tutte_expansion(&uniform_matroid(4, 4).unwrap()), p("x^4"));
        assert!(uniform_matroid(3, 2).is_err());
        assert!(uniform_matroid(-1, 2).is_err());
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn edges(v: &[(&str, &str, &str)]) -> Vec<LabeledEdge> {
        v.iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect()
    }

    #[test]
    fn graphic_examples() {
        let tri = graphic_matroid(
            &strings(&["1", "2", "3"]),
            &edges(&[("1", "2", "a"), ("2", "3", "b"), ("1", "3", "c")]),
        )
        .unwrap();
        assert_eq!(tri, uniform_matroid(2, 3).unwrap());
        assert_eq!(tutte_expansion(&tri), p("x^2 + x + y"));
        let path = graphic_matroid(
            &strings(&["1", "2", "3", "4"]),
            &edges(&[("1", "2", "a"), ("2", "3", "b"), ("3", "4", "c")]),
        )
        .unwrap();
        assert_eq!(tutte_expansion(&path), p("x^3"));
        let k4e = graphic_matroid(
            &strings(&["1", "2", "3", "4"]),
            &edges(&[
                ("1", "2", "a"),
                ("1", "3", "b"),
                ("2", "3", "c"),
                ("2", "4", "d"),
                ("3", "4", "e"),
            ]),
        )
        .unwrap();
        assert!(k4e.is_matroid());
        assert_eq!(
            tutte_expansion(&k4e),
            p("x^3 + 2*x^2 + 2*x*y + x + y^2 + y")
        );
        assert!(matches!(
            graphic_matroid(&strings(&["1"]), &edges(&[("1", "9", "a")])),
            Err(Error::BadGraph(_))
        ));
    }

    #[test]
    fn branching_examples() {
        let path = branching_greedoid(&RootedGraph::new(
            &["r", "u", "v"],
            &[("r", "u", "e1"), ("u", "v", "e2")],
            "r",
        ))
        .unwrap();
        assert!(path.is_greedoid());
        assert_eq!(tutte_expansion(&path), p("x^2*y - 2*x*y + x + y"));
        let one =
            branching_greedoid(&RootedGraph::new(&["r", "u"], &[("r", "u", "e")], "r")).unwrap();
        assert_eq!(tutte_expansion(&one), p("x"));
        assert!(matches!(
            branching_greedoid(&RootedGraph::new(&["r"], &[], "q")),
            Err(Error::BadGraph(_))
        ));
    }

    #[test]
    fn branching_greedoid_of_a_cycle_truncates_to_the_listed_family() {
        let rg = RootedGraph::new(
            &["r", "x", "y", "z", "w"],
            &[
                ("r", "x", "a"),
                ("r", "y", "b"),
                ("x", "z", "c"),
                ("y", "w", "d"),
                ("z", "w", "e"),
            ],
            "r",
        );
        let g = branching_greedoid(&rg).unwrap();
        assert!(g.is_greedoid());
        let t = g.truncate().unwrap();
        let gs = t.ground().clone();
        let want: Vec<Mask> = [
            vec![],
            vec!["a"],
            vec!["b"],
            vec!["a", "b"],
            vec!["a", "c"],
            vec!["b", "d"],
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "e"],
            vec!["b", "d", "e"],
        ]
        .iter()
        .map(|s| gs.mask_of(s.iter()).unwrap())
        .collect();
        let mut want = want;
        want.sort();
        assert_eq!(t.feasible_family().sets(), want.as_slice());
    }

    #[test]
    fn random_generator_is_deterministic_and_valid() {
        assert_eq!(random_ranked_set(6, 42), random_ranked_set(6, 42));
        for seed in 0..20 {
            let g = random_ranked_set(1, seed);
            assert!(g.table() == [0, 0] || g.table() == [0, 1]);
        }
        for seed in 0..1000 {
            let g = random_ranked_set(6, seed);
            assert!(RankedSet::from_table(g.table_ref().clone()).is_ok());
        }
    }
}
