//! Edge pruning of trees: convex sets are the edge sets of subtrees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{antimatroid_from_feasible, ConvexFamily};
use crate::constructions::LabeledEdge;
use crate::error::{Error, Result};
use crate::ranked::{elements, GroundSet, Mask, RankedSet};

#[derive(Clone, Debug)]
pub struct Tree {
    vertices: GroundSet,
    edges: GroundSet,
    ends: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(edges: &[(&str, &str, &str)]) -> Result<Tree> {
        let owned: Vec<LabeledEdge> = edges
            .iter()
            .map(|(u, v, l)| (u.to_string(), v.to_string(), l.to_string()))
            .collect();
        Tree::from_edges(&owned)
    }

    /// Vertices are read off the edge list in order of first appearance.
    pub fn from_edges(edges: &[LabeledEdge]) -> Result<Tree> {
        if edges.is_empty() {
            return Err(Error::NotATree("no edges".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let index = |v: &str, names: &mut Vec<String>| match names.iter().position(|x| x == v) {
            Some(i) => i,
            None => {
                names.push(v.to_string());
                names.len() - 1
            }
        };
        let mut ends = Vec::with_capacity(edges.len());
        for (u, v, _) in edges {
            if u == v {
                return Err(Error::NotATree(format!("loop at `{u}`")));
            }
            let a = index(u, &mut names);
            let b = index(v, &mut names);
            ends.push((a, b));
        }
        let edge_labels = GroundSet::new(edges.iter().map(|e| e.2.clone()))?;
        if names.len() != edges.len() + 1 {
            return Err(Error::NotATree(format!(
                "{} vertices and {} edges",
                names.len(),
                edges.len()
            )));
        }
        let tree = Tree {
            vertices: GroundSet::new(names).map_err(|e| Error::NotATree(e.to_string()))?,
            edges: edge_labels,
            ends,
        };
        if !tree.connected(tree.edges.full()) {
            return Err(Error::NotATree("not connected".into()));
        }
        Ok(tree)
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn edges(&self) -> &GroundSet {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.ends.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// True when the edges in `a` form one connected piece.
    fn connected(&self, a: Mask) -> bool {
        let Some(first) = elements(a).next() else {
            return true;
        };
        let mut seen: Mask = 1 << first;
        let mut reached = vec![false; self.vertices.len()];
        let (u, v) = self.ends[first];
        reached[u] = true;
        reached[v] = true;
        loop {
            let mut grew = false;
            for e in elements(a & !seen) {
                let (u, v) = self.ends[e];
                if reached[u] || reached[v] {
                    reached[u] = true;
                    reached[v] = true;
                    seen |= 1 << e;
                    grew = true;
                }
            }
            if !grew {
                return seen == a;
            }
        }
    }

    /// Edges of `a` with an endpoint of degree one inside `a`.
    pub fn subtree_leaf_edges(&self, a: Mask) -> Mask {
        let deg = |v: usize| {
            elements(a)
                .filter(|&e| self.ends[e].0 == v || self.ends[e].1 == v)
                .count()
        };
        elements(a)
            .filter(|&e| {
                let (u, v) = self.ends[e];
                deg(u) == 1 || deg(v) == 1
            })
            .fold(0, |acc, e| acc | 1 << e)
    }
}

pub fn tree_pruning(tree: &Tree) -> Result<(RankedSet, ConvexFamily)> {
    let full = tree.edges.full();
    let feasible = (0..=full)
        .filter(|&c| tree.connected(c))
        .map(|c| full & !c)
        .collect();
    antimatroid_from_feasible(tree.edges.clone(), feasible)
}

/// Edges whose endpoints both have degree at least two.
pub fn tree_interior_edges(tree: &Tree) -> usize {
    tree.ends
        .iter()
        .filter(|&&(u, v)| tree.degree(u) >= 2 && tree.degree(v) >= 2)
        .count()
}

/// A random tree with `m` edges labelled `a, b, …`: vertex `i` attaches to a
/// uniformly chosen earlier vertex.
pub fn random_tree(m: usize, seed: u64) -> Tree {
    assert!((1..=20).contains(&m));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = GroundSet::letters(m);
    let edges: Vec<LabeledEdge> = (1..=m)
        .map(|i| {
            let j = rng.gen_range(0..i);
            (
                format!("v{j}"),
                format!("v{i}"),
                labels.label(i - 1).to_string(),
            )
        })
        .collect();
    Tree::from_edges(&edges).expect("attachment always yields a tree")
}
