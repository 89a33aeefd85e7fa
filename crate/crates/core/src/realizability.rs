//! Small exhaustive searches: greedoids with a prescribed basis family, and
//! labelled matroids with a prescribed Tutte polynomial.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::ranked::{elements, size, FeasibleFamily, GroundSet, Mask, RankTable, RankedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_n: usize,
    pub node_limit: u64,
    pub deterministic: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_n: 6,
            node_limit: 100_000_000,
            deterministic: true,
        }
    }
}

impl SearchBudget {
    pub fn with_node_limit(node_limit: u64) -> Self {
        SearchBudget {
            node_limit,
            ..Self::default()
        }
    }

    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::TooLarge { n, max: self.max_n });
        }
        Ok(())
    }
}

struct Counter {
    nodes: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Exhausted { nodes: self.limit });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisSearch {
    pub realizable: bool,
    #[serde(skip)]
    pub witness: Option<FeasibleFamily>,
    pub witness_sets: Option<Vec<String>>,
    /// Dead ends met during the search, first ones only.
    pub refutation: Vec<String>,
    pub nodes: u64,
}

const TRACE_LIMIT: usize = 24;

struct BasisSearcher<'a> {
    ground: &'a GroundSet,
    layers: Vec<Vec<Mask>>,
    member: Vec<bool>,
    counter: Counter,
    trace: Vec<String>,
}

impl BasisSearcher<'_> {
    fn note(&mut self, msg: impl FnOnce(&GroundSet) -> String) {
        if self.trace.len() < TRACE_LIMIT {
            let s = msg(self.ground);
            if !self.trace.contains(&s) {
                self.trace.push(s);
            }
        }
    }

    fn accessible(&self, x: Mask) -> bool {
        elements(x).any(|p| self.member[(x & !(1 << p)) as usize])
    }

    /// Augmentation from every `X` of size `j + 1` to every `Y` of size `j`.
    fn augment_failure(&self, j: usize) -> Option<(Mask, Mask)> {
        for &y in self.layers[j].iter().filter(|&&y| self.member[y as usize]) {
            for &x in self.layers[j + 1]
                .iter()
                .filter(|&&x| self.member[x as usize])
            {
                if !elements(x & !y).any(|p| self.member[(y | 1 << p) as usize]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Decides candidates of layer `j` from position `i` on.
    fn run(&mut self, j: usize, i: usize) -> Result<bool> {
        self.counter.tick()?;
        let top = self.layers.len() - 1;
        if j == top {
            return Ok(true);
        }
        if i == self.layers[j].len() {
            if let Some((x, y)) = self.augment_failure(j - 1) {
                self.note(|g| format!("{} cannot be augmented from {}", g.show(y), g.show(x)));
                return Ok(false);
            }
            if j + 1 == top {
                if let Some(&b) = self.layers[top].iter().find(|&&b| !self.accessible(b)) {
                    self.note(|g| format!("basis {} is inaccessible", g.show(b)));
                    return Ok(false);
                }
                if let Some((x, y)) = self.augment_failure(j) {
                    self.note(|g| {
                        format!("{} cannot be augmented from basis {}", g.show(y), g.show(x))
                    });
                    return Ok(false);
                }
            }
            return self.run(j + 1, 0);
        }
        let c = self.layers[j][i];
        if self.accessible(c) {
            self.member[c as usize] = true;
            let bases_ok = j + 1 != top
                || self.layers[top]
                    .iter()
                    .all(|&x| elements(x & !c).any(|p| self.member[(c | 1 << p) as usize]));
            if bases_ok {
                if self.run(j, i + 1)? {
                    return Ok(true);
                }
            } else {
                self.note(|g| format!("{} is feasible but cannot reach every basis", g.show(c)));
            }
            self.member[c as usize] = false;
        } else {
            self.note(|g| format!("{} is inaccessible", g.show(c)));
        }
        self.run(j, i + 1)
    }
}

/// Searches for a greedoid whose bases are exactly `bases`.
///
/// Every feasible set of a greedoid lies in a basis, so the candidates are
/// the subsets of the given bases.
pub fn is_greedoid_basis_family(
    ground: &GroundSet,
    bases: &[Mask],
    budget: &SearchBudget,
) -> Result<BasisSearch> {
    budget.admit(ground.len())?;
    if bases.is_empty() {
        return Err(Error::BadParams("no bases given".into()));
    }
    for (i, &a) in bases.iter().enumerate() {
        if a & !ground.full() != 0 {
            return Err(Error::BadParams(format!(
                "mask {a:#b} is outside the ground set"
            )));
        }
        for &b in &bases[i + 1..] {
            if a & b == a || a & b == b {
                return Err(Error::BadParams(format!(
                    "bases {} and {} are comparable",
                    ground.show(a),
                    ground.show(b)
                )));
            }
        }
    }
    let k = size(bases[0]) as usize;
    if let Some(&b) = bases.iter().find(|&&b| size(b) as usize != k) {
        return Ok(BasisSearch {
            realizable: false,
            witness: None,
            witness_sets: None,
            refutation: vec![format!(
                "{} and {} differ in size, but greedoid bases are equicardinal",
                ground.show(bases[0]),
                ground.show(b)
            )],
            nodes: 0,
        });
    }
    let mut candidate = vec![false; 1usize << ground.len()];
    for &b in bases {
        let mut s = b;
        loop {
            candidate[s as usize] = true;
            if s == 0 {
                break;
            }
            s = (s - 1) & b;
        }
    }
    let mut layers = vec![Vec::new(); k + 1];
    for m in 0..candidate.len() as Mask {
        if candidate[m as usize] {
            layers[size(m) as usize].push(m);
        }
    }
    let mut member = vec![false; candidate.len()];
    member[0] = true;
    for &b in bases {
        member[b as usize] = true;
    }
    let mut s = BasisSearcher {
        ground,
        layers,
        member,
        counter: Counter {
            nodes: 0,
            limit: budget.node_limit,
        },
        trace: Vec::new(),
    };
    let found = k == 0 || s.run(1, 0)?;
    let witness = found.then(|| {
        let sets = (0..s.member.len() as Mask).filter(|&m| s.member[m as usize]);
        FeasibleFamily::new(ground.clone(), sets).expect("masks are inside the ground set")
    });
    Ok(BasisSearch {
        realizable: found,
        witness_sets: witness
            .as_ref()
            .map(|w| w.sets().iter().map(|&m| ground.show(m)).collect()),
        witness,
        refutation: if found { Vec::new() } else { s.trace },
        nodes: s.counter.nodes,
    })
}

type Target<'a> = (&'a [Vec<u64>], Vec<Vec<u64>>);

/// Layered rank assignment shared by the enumerator and the polynomial search.
struct MatroidSearch<'a> {
    n: usize,
    order: Vec<Mask>,
    rank: Vec<i32>,
    max_rank: Option<i32>,
    /// target S(u, v) coefficients and running counts, indexed `[r(S)−r(A)][|A|−r(A)]`
    target: Option<Target<'a>>,
    counter: Counter,
    out: Vec<Vec<i32>>,
}

impl MatroidSearch<'_> {
    fn bounds(&self, a: Mask) -> (i32, i32) {
        let mut lo = 0;
        let mut hi = i32::MAX;
        for p in elements(a) {
            let r = self.rank[(a & !(1 << p)) as usize];
            lo = lo.max(r);
            hi = hi.min(r + 1);
        }
        (lo, hi)
    }

    fn submodular(&self, a: Mask, r: i32) -> bool {
        let ps: Vec<usize> = elements(a).collect();
        for (x, &p) in ps.iter().enumerate() {
            for &q in &ps[x + 1..] {
                let ap = self.rank[(a & !(1 << p)) as usize];
                let aq = self.rank[(a & !(1 << q)) as usize];
                let apq = self.rank[(a & !(1 << p) & !(1 << q)) as usize];
                if r + apq > ap + aq {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) -> Result<()> {
        self.counter.tick()?;
        if i == self.order.len() {
            let full = self.rank[self.rank.len() - 1];
            if self.max_rank.is_some_and(|r| r != full) {
                return Ok(());
            }
            if let Some((t, c)) = &self.target {
                let want =
                    |u: usize, v: usize| t.get(u).and_then(|row| row.get(v)).copied().unwrap_or(0);
                let exact = c
                    .iter()
                    .enumerate()
                    .all(|(u, row)| row.iter().enumerate().all(|(v, &k)| k == want(u, v)));
                if !exact {
                    return Ok(());
                }
            }
            self.out.push(self.rank.clone());
            return Ok(());
        }
        let a = self.order[i];
        let (lo, mut hi) = self.bounds(a);
        if let Some(r) = self.max_rank {
            hi = hi.min(r);
        }
        for r in lo..=hi {
            if !self.submodular(a, r) {
                continue;
            }
            let cell = self
                .max_rank
                .map(|rs| ((rs - r) as usize, (size(a) - r) as usize));
            if let (Some((t, c)), Some((u, v))) = (&mut self.target, cell) {
                let want = t.get(u).and_then(|row| row.get(v)).copied().unwrap_or(0);
                if c[u][v] + 1 > want {
                    continue;
                }
                c[u][v] += 1;
            }
            self.rank[a as usize] = r;
            let res = self.run(i + 1);
            if let (Some((_, c)), Some((u, v))) = (&mut self.target, cell) {
                c[u][v] -= 1;
            }
            res?;
        }
        self.rank[a as usize] = 0;
        Ok(())
    }
}

fn layered_order(n: usize) -> Vec<Mask> {
    let mut order: Vec<Mask> = (1..1u32 << n).collect();
    order.sort_by_key(|&m| (size(m), m));
    order
}

fn run_search(
    n: usize,
    max_rank: Option<i32>,
    target: Option<&[Vec<u64>]>,
    budget: &SearchBudget,
) -> Result<Vec<RankedSet>> {
    budget.admit(n)?;
    let mut s = MatroidSearch {
        n,
        order: layered_order(n),
        rank: vec![0; 1 << n],
        max_rank,
        target: target.map(|t| {
            let counts = vec![vec![0u64; n + 2]; n + 2];
            // the empty set contributes u^{r(S)}
            (t, counts)
        }),
        counter: Counter {
            nodes: 0,
            limit: budget.node_limit,
        },
        out: Vec::new(),
    };
    if let (Some((_, c)), Some(r)) = (&mut s.target, max_rank) {
        c[r as usize][0] += 1;
    }
    s.run(0)?;
    let ground = GroundSet::letters(s.n);
    let mut out: Vec<RankedSet> = s
        .out
        .into_iter()
        .map(|t| {
            let table = RankTable::from_fn(ground.clone(), |m| t[m as usize]);
            debug_assert!(table.is_matroid());
            RankedSet::from_table(table).expect("matroid tables satisfy the axioms")
        })
        .collect();
    out.sort_by(|a, b| a.table().cmp(b.table()));
    out.dedup();
    Ok(out)
}

/// All matroids on the labelled set `a, b, …` of size `n`, optionally of
/// rank `r`, in table order.
pub fn enumerate_matroids(
    n: usize,
    r: Option<usize>,
    budget: &SearchBudget,
) -> Result<Vec<RankedSet>> {
    run_search(n, r.map(|r| r as i32), None, budget)
}

/// All labelled matroids on `n` elements whose Tutte polynomial is `p`.
pub fn find_matroids_with_tutte(
    p: &BiPoly,
    n: usize,
    budget: &SearchBudget,
) -> Result<Vec<RankedSet>> {
    budget.admit(n)?;
    let s = p.translate(1, 1);
    // a negative corank-nullity coefficient rules out every ranked set
    let Some(grid) = s
        .grid()
        .iter()
        .map(|row| {
            row.iter()
                .map(ToPrimitive::to_u64)
                .collect::<Option<Vec<u64>>>()
        })
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(Vec::new());
    };
    let total: u64 = grid.iter().flatten().sum();
    if s.is_zero() || total != 1u64 << n {
        return Ok(Vec::new());
    }
    let r = s.dx() as i32;
    if r as usize > n {
        return Ok(Vec::new());
    }
    run_search(n, Some(r), Some(&grid), budget)
}

/// Elements `p` for which both `G − p` and `G / p` are matroids.
pub fn elements_with_matroid_minors(g: &RankedSet) -> Vec<usize> {
    (0..g.n())
        .filter(|&p| g.delete(p).is_matroid() && g.contract(p).is_matroid())
        .collect()
}
