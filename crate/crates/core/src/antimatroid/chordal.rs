//! Simplicial shelling of chordal graphs: feasible sets are the vertex sets
//! removable by repeatedly deleting simplicial vertices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{antimatroid_from_feasible, ConvexFamily};
use crate::error::{Error, Result};
use crate::ranked::{elements, size, GroundSet, Mask, RankedSet};

#[derive(Clone, Debug)]
pub struct ChordalGraph {
    ground: GroundSet,
    adj: Vec<Mask>,
    /// A perfect elimination ordering.
    peo: Vec<usize>,
}

impl ChordalGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<ChordalGraph> {
        let ground = GroundSet::new(vertices.iter().map(|s| s.as_ref().to_string()))?;
        let mut adj = vec![0 as Mask; ground.len()];
        for (u, v) in edges {
            let (u, v) = (ground.index_of(u.as_ref())?, ground.index_of(v.as_ref())?);
            if u == v {
                return Err(Error::BadGraph(format!("loop at `{}`", ground.label(u))));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let peo = mcs_order(&adj);
        if let Some(v) = fill_in(&adj, &peo) {
            return Err(Error::NotChordal(format!(
                "`{}` has non-adjacent later neighbours",
                ground.label(v)
            )));
        }
        Ok(ChordalGraph { ground, adj, peo })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn elimination_order(&self) -> &[usize] {
        &self.peo
    }

    pub fn neighbours(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn is_clique(&self, m: Mask) -> bool {
        elements(m).all(|v| m & !(1 << v) & !self.adj[v] == 0)
    }

    /// Vertices of `within` whose neighbourhood inside `within` is a clique.
    pub fn simplicial_in(&self, within: Mask) -> Mask {
        elements(within)
            .filter(|&v| self.is_clique(self.adj[v] & within))
            .fold(0, |a, v| a | 1 << v)
    }
}

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering exactly when the graph is chordal.
fn mcs_order(adj: &[Mask]) -> Vec<usize> {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut done: Mask = 0;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| done & 1 << v == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("an unvisited vertex remains");
        done |= 1 << v;
        visit.push(v);
        for u in elements(adj[v] & !done) {
            weight[u] += 1;
        }
    }
    visit.reverse();
    visit
}

/// First vertex whose later neighbours are not a clique.
fn fill_in(adj: &[Mask], order: &[usize]) -> Option<usize> {
    let mut later: Mask = order.iter().fold(0, |a, &v| a | 1 << v);
    for &v in order {
        later &= !(1 << v);
        let nb = adj[v] & later;
        if elements(nb).any(|u| nb & !(1 << u) & !adj[u] != 0) {
            return Some(v);
        }
    }
    None
}

pub fn chordal_simplicial(g: &ChordalGraph) -> Result<(RankedSet, ConvexFamily)> {
    let full = g.ground.full();
    let mut feasible = vec![false; full as usize + 1];
    feasible[0] = true;
    for f in 1..=full {
        feasible[f as usize] = elements(f).any(|v| {
            let before = f & !(1 << v);
            feasible[before as usize] && g.simplicial_in(full & !before) & 1 << v != 0
        });
    }
    let sets = (0..=full).filter(|&m| feasible[m as usize]).collect();
    antimatroid_from_feasible(g.ground.clone(), sets)
}

/// Number of blocks (maximal 2-connected pieces, bridges and isolated
/// vertices).
pub fn chordal_blocks(g: &ChordalGraph) -> usize {
    let n = g.ground.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = 0;
    fn dfs(
        v: usize,
        parent: Option<usize>,
        adj: &[Mask],
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        blocks: &mut usize,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for u in elements(adj[v]) {
            if disc[u] == usize::MAX {
                dfs(u, Some(v), adj, disc, low, time, blocks);
                low[v] = low[v].min(low[u]);
                if low[u] >= disc[v] {
                    *blocks += 1;
                }
            } else if Some(u) != parent {
                low[v] = low[v].min(disc[u]);
            }
        }
    }
    for v in 0..n {
        if disc[v] == usize::MAX {
            if g.adj[v] == 0 {
                blocks += 1;
                disc[v] = 0;
                continue;
            }
            dfs(v, None, &g.adj, &mut disc, &mut low, &mut time, &mut blocks);
        }
    }
    blocks
}

/// A random connected chordal graph on `a, b, …`: each new vertex is joined
/// to an existing vertex and a random clique of its neighbours, so it is
/// simplicial when added.
pub fn random_chordal(n: usize, seed: u64) -> ChordalGraph {
    assert!((1..=20).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.2..0.8);
    let mut adj = vec![0 as Mask; n];
    for i in 1..n {
        let v = rng.gen_range(0..i);
        let mut nb: Mask = 1 << v;
        let mut cand: Vec<usize> = elements(adj[v]).collect();
        cand.shuffle(&mut rng);
        for u in cand {
            if nb & !adj[u] == 0 && rng.gen_bool(p) {
                nb |= 1 << u;
            }
        }
        for u in elements(nb) {
            adj[u] |= 1 << i;
        }
        adj[i] = nb;
    }
    let ground = GroundSet::letters(n);
    let edges: Vec<(String, String)> = (0..n)
        .flat_map(|u| {
            elements(adj[u])
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
        .map(|(u, v)| (ground.label(u).to_string(), ground.label(v).to_string()))
        .collect();
    ChordalGraph::new(ground.labels(), &edges).expect("built by adding simplicial vertices")
}

/// Number of cliques of each size; the free convex sets of the shelling.
pub fn clique_counts(g: &ChordalGraph) -> Vec<u64> {
    let mut f = vec![0u64; g.ground.len() + 1];
    for m in 0..=g.ground.full() {
        if g.is_clique(m) {
            f[size(m) as usize] += 1;
        }
    }
    f
}
