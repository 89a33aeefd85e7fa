//! JSON input kinds and the rank-table output format.

use std::str::FromStr;

use indexmap::IndexMap;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::antimatroid::{ChordalGraph, Family, PointConfig, Poset, Tree};
use crate::bipoly::{BiPoly, PolyJson, TermJson};
use crate::constructions::{
    branching_greedoid, graphic_matroid, uniform_matroid, LabeledEdge, RootedGraph,
};
use crate::error::{Error, Result};
use crate::ranked::{FeasibleFamily, GroundSet, Mask, RankTable, RankedSet, MAX_N};

/// One input file, tagged by `kind`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureSpec {
    RankTable {
        ground: Vec<String>,
        rank: IndexMap<String, i64>,
    },
    FeasibleFamily {
        ground: Vec<String>,
        feasible: Vec<Vec<String>>,
    },
    Uniform {
        r: i64,
        n: i64,
    },
    Graph {
        vertices: Vec<String>,
        edges: Vec<LabeledEdge>,
    },
    RootedGraph {
        vertices: Vec<String>,
        edges: Vec<LabeledEdge>,
        root: String,
        #[serde(default)]
        truncate: usize,
    },
    TreePruning {
        edges: Vec<LabeledEdge>,
    },
    Poset {
        elements: Vec<String>,
        #[serde(default)]
        relations: Vec<(String, String)>,
    },
    Chordal {
        vertices: Vec<String>,
        #[serde(default)]
        edges: Vec<(String, String)>,
    },
    Points {
        dim: usize,
        coords: IndexMap<String, Vec<String>>,
    },
    /// Either `terms` in the polynomial wire format or `text` such as
    /// `"x^2 + 2*x"`; `n` and `r` are needed by the identity checks.
    Polynomial {
        #[serde(default)]
        terms: Option<Vec<TermJson>>,
        #[serde(default)]
        text: Option<String>,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        r: Option<usize>,
    },
}

/// A parsed input: a ranked set (with its family when it came from one of
/// the antimatroid builders) or a bare polynomial.
#[derive(Clone, Debug)]
pub enum Loaded {
    Ranked {
        g: RankedSet,
        family: Option<Family>,
    },
    Polynomial {
        p: BiPoly,
        n: Option<usize>,
        r: Option<usize>,
    },
}

impl StructureSpec {
    pub fn from_json(s: &str) -> Result<StructureSpec> {
        Ok(serde_json::from_str(s)?)
    }

    /// Ground-set size, when it can be read off without building anything.
    pub fn declared_size(&self) -> Option<usize> {
        match self {
            StructureSpec::RankTable { ground, .. }
            | StructureSpec::FeasibleFamily { ground, .. } => Some(ground.len()),
            StructureSpec::Uniform { n, .. } => Some((*n).max(0) as usize),
            StructureSpec::Graph { edges, .. }
            | StructureSpec::RootedGraph { edges, .. }
            | StructureSpec::TreePruning { edges } => Some(edges.len()),
            StructureSpec::Poset { elements, .. } => Some(elements.len()),
            StructureSpec::Chordal { vertices, .. } => Some(vertices.len()),
            StructureSpec::Points { coords, .. } => Some(coords.len()),
            StructureSpec::Polynomial { n, .. } => *n,
        }
    }

    /// Builds the structure, refusing ground sets larger than `max_n`.
    pub fn load(self, max_n: usize) -> Result<Loaded> {
        let max_n = max_n.min(MAX_N);
        if let Some(n) = self.declared_size() {
            if n > max_n {
                return Err(Error::TooLarge { n, max: max_n });
            }
        }
        let ranked = |g: RankedSet| Loaded::Ranked { g, family: None };
        let family = |f: Family| -> Result<Loaded> {
            let (g, _) = f.build()?;
            Ok(Loaded::Ranked { g, family: Some(f) })
        };
        match self {
            StructureSpec::RankTable { ground, rank } => {
                let ground = GroundSet::new(ground)?;
                Ok(ranked(RankedSet::from_table(table_from_keys(
                    ground, &rank,
                )?)?))
            }
            StructureSpec::FeasibleFamily { ground, feasible } => {
                let fam = FeasibleFamily::from_labels(GroundSet::new(ground)?, &feasible)?;
                Ok(ranked(RankedSet::from_feasible(&fam)?))
            }
            StructureSpec::Uniform { r, n } => Ok(ranked(uniform_matroid(r, n)?)),
            StructureSpec::Graph { vertices, edges } => {
                Ok(ranked(graphic_matroid(&vertices, &edges)?))
            }
            StructureSpec::RootedGraph {
                vertices,
                edges,
                root,
                truncate,
            } => {
                let mut g = branching_greedoid(&RootedGraph {
                    vertices,
                    edges,
                    root,
                })?;
                for _ in 0..truncate {
                    g = g.truncate()?;
                }
                Ok(ranked(g))
            }
            StructureSpec::TreePruning { edges } => family(Family::Tree(Tree::from_edges(&edges)?)),
            StructureSpec::Poset {
                elements,
                relations,
            } => family(Family::Poset(Poset::new(&elements, &relations)?)),
            StructureSpec::Chordal { vertices, edges } => {
                family(Family::Chordal(ChordalGraph::new(&vertices, &edges)?))
            }
            StructureSpec::Points { dim, coords } => {
                let labels: Vec<String> = coords.keys().cloned().collect();
                let pts = coords
                    .values()
                    .map(|c| {
                        c.iter()
                            .map(|s| parse_rational(s))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                family(Family::Points(PointConfig::new(&labels, dim, pts)?))
            }
            StructureSpec::Polynomial { terms, text, n, r } => {
                let p = match (terms, text) {
                    (Some(terms), None) => {
                        BiPoly::try_from(PolyJson { terms }).map_err(|m| Error::Parse {
                            line: 0,
                            column: 0,
                            message: m,
                        })?
                    }
                    (None, Some(text)) => text.parse()?,
                    _ => {
                        return Err(Error::BadParams(
                            "a polynomial needs exactly one of `terms` and `text`".into(),
                        ))
                    }
                };
                Ok(Loaded::Polynomial { p, n, r })
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse {
        line: 0,
        column: 0,
        message: format!("bad rational `{s}`"),
    })
}

fn table_from_keys(ground: GroundSet, rank: &IndexMap<String, i64>) -> Result<RankTable> {
    let len = 1usize << ground.len();
    let mut table: Vec<Option<i64>> = vec![None; len];
    for (key, &r) in rank {
        let m = ground.parse_key(key)? as usize;
        if table[m].replace(r).is_some() {
            return Err(Error::BadParams(format!(
                "subset {{{key}}} is listed twice"
            )));
        }
    }
    if let Some(m) = table.iter().position(Option::is_none) {
        return Err(Error::BadParams(format!(
            "missing rank for subset {}",
            ground.show(m as Mask)
        )));
    }
    RankTable::new(ground, table.into_iter().map(Option::unwrap).collect())
}

/// Reads and loads a file.
pub fn load_file(path: &std::path::Path, max_n: usize) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    StructureSpec::from_json(&text)?.load(max_n)
}

#[derive(Serialize)]
struct RankTableJson<'a> {
    kind: &'static str,
    ground: &'a [String],
    rank: IndexMap<String, i32>,
}

/// `{"kind":"rank_table","ground":[..],"rank":{"":0,"a":1,..}}`, keys in
/// mask order.
pub fn rank_table_json(t: &RankTable) -> String {
    let rank = (0..=t.full())
        .map(|m| (t.ground().key(m), t.rank(m)))
        .collect();
    serde_json::to_string(&RankTableJson {
        kind: "rank_table",
        ground: t.ground().labels(),
        rank,
    })
    .expect("rank tables serialize")
}

/// A ground set and a basis family, as read by the realizability search.
#[derive(Clone, Debug, Deserialize)]
pub struct BasisSpec {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

impl BasisSpec {
    pub fn from_json(s: &str) -> Result<BasisSpec> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn compile(&self) -> Result<(GroundSet, Vec<Mask>)> {
        let g = GroundSet::new(self.ground.iter().cloned())?;
        let bases = self
            .bases
            .iter()
            .map(|b| g.mask_of(b.iter()))
            .collect::<Result<Vec<_>>>()?;
        Ok((g, bases))
    }
}
