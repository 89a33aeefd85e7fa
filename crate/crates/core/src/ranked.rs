//! Ground sets, tabulated rank functions and the classification predicates.
//!
//! Subsets are `u32` bitmasks over ground-set positions. A [`RankTable`] is any
//! integer set function with `r(∅) = 0`; minors of ranked sets live here since
//! they need not satisfy the axioms. A [`RankedSet`] is a table that passed
//! R0-R2.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Axiom, Error, Result};

pub type Mask = u32;

/// Hard cap on ground-set size; a full table then has 2^20 entries.
pub const MAX_N: usize = 20;

const RANK_LIMIT: i64 = 1 << 15;

#[inline]
pub fn size(m: Mask) -> i32 {
    m.count_ones() as i32
}

/// Iterates the positions of the set bits of `m`, lowest first.
pub fn elements(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Re-inserts a zero bit at position `i`, mapping masks over `S − p` into `S`.
#[inline]
pub(crate) fn expand(m: Mask, i: usize) -> Mask {
    let low = (1u32 << i) - 1;
    (m & low) | ((m & !low) << 1)
}

/// Drops bit `i`, the inverse of [`expand`] on masks without bit `i`.
#[cfg(test)]
pub(crate) fn compress(m: Mask, i: usize) -> Mask {
    let low = (1u32 << i) - 1;
    (m & low) | ((m >> 1) & !low)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_N {
            return Err(Error::TooLarge {
                n: labels.len(),
                max: MAX_N,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.contains(',') || l.trim() != l {
                return Err(Error::BadLabel(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// `a, b, c, …`
    pub fn letters(n: usize) -> GroundSet {
        assert!(n <= MAX_N);
        GroundSet {
            labels: (0..n)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        }
    }

    /// `1, 2, …, n`
    pub fn numbered(n: usize) -> GroundSet {
        assert!(n <= MAX_N);
        GroundSet {
            labels: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn mask_of<I, S>(&self, labels: I) -> Result<Mask>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = 0;
        for l in labels {
            m |= 1 << self.index_of(l.as_ref())?;
        }
        Ok(m)
    }

    /// Parses a comma-joined key such as `"a,c"`; the empty string is `∅`.
    pub fn parse_key(&self, key: &str) -> Result<Mask> {
        if key.trim().is_empty() {
            return Ok(0);
        }
        let mut m = 0;
        for part in key.split(',') {
            let bit = 1 << self.index_of(part.trim())?;
            if m & bit != 0 {
                return Err(Error::DuplicateElement(part.trim().to_string()));
            }
            m |= bit;
        }
        Ok(m)
    }

    /// Comma-joined labels in ground order, e.g. `a,c`.
    pub fn key(&self, m: Mask) -> String {
        elements(m)
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Set notation, e.g. `{a,c}`.
    pub fn show(&self, m: Mask) -> String {
        format!("{{{}}}", self.key(m))
    }

    pub fn without(&self, i: usize) -> GroundSet {
        let mut labels = self.labels.clone();
        labels.remove(i);
        GroundSet { labels }
    }

    pub fn with(&self, label: &str) -> Result<GroundSet> {
        if self.labels.iter().any(|l| l == label) {
            return Err(Error::DuplicateElement(label.to_string()));
        }
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        GroundSet::new(labels)
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// A reason a predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `r(A ∪ p) < r(A)`
    Decreasing {
        set: Mask,
        element: usize,
    },
    /// `r(A ∪ p) > r(A) + 1`
    UnitIncrease {
        set: Mask,
        element: usize,
    },
    /// `r(A) > |A|`
    Supercardinal {
        set: Mask,
    },
    /// `r(A ∩ B) + r(A ∪ B) > r(A) + r(B)`
    Semimodular {
        a: Mask,
        b: Mask,
    },
    /// `r(A) = r(A ∪ p) = r(A ∪ q) < r(A ∪ {p, q})`
    LocalSemimodular {
        set: Mask,
        p: usize,
        q: usize,
    },
    NotFullRank {
        rank: i32,
        n: usize,
    },
    /// Union of two feasible sets that is not feasible.
    NotUnionClosed {
        a: Mask,
        b: Mask,
    },
    /// The greedoid test failed first.
    NotGreedoid(Box<Witness>),
}

impl Witness {
    pub fn describe(&self, g: &GroundSet) -> String {
        let s = |m: Mask| g.show(m);
        match self {
            Witness::Decreasing { set, element } => {
                format!("rank drops from {} to {}", s(*set), s(*set | 1 << element))
            }
            Witness::UnitIncrease { set, element } => format!(
                "rank jumps by more than one from {} to {}",
                s(*set),
                s(*set | 1 << element)
            ),
            Witness::Supercardinal { set } => format!("rank of {} exceeds its size", s(*set)),
            Witness::Semimodular { a, b } => {
                format!("semimodularity fails for {} and {}", s(*a), s(*b))
            }
            Witness::LocalSemimodular { set, p, q } => format!(
                "local semimodularity fails at {} with {} and {}",
                s(*set),
                g.label(*p),
                g.label(*q)
            ),
            Witness::NotFullRank { rank, n } => format!("full rank {rank} is less than {n}"),
            Witness::NotUnionClosed { a, b } => format!(
                "{} and {} are feasible but their union is not",
                s(*a),
                s(*b)
            ),
            Witness::NotGreedoid(w) => format!("not a greedoid: {}", w.describe(g)),
        }
    }
}

/// A violated set-system greedoid axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    MissingEmpty,
    Inaccessible(Mask),
    /// No element of `larger − smaller` extends `smaller` to a feasible set.
    Augmentation {
        larger: Mask,
        smaller: Mask,
    },
}

impl FamilyViolation {
    pub fn describe(&self, g: &GroundSet) -> String {
        match self {
            FamilyViolation::MissingEmpty => "the empty set is not feasible".into(),
            FamilyViolation::Inaccessible(m) => format!("{} is inaccessible", g.show(*m)),
            FamilyViolation::Augmentation { larger, smaller } => format!(
                "augmentation fails for {} from {}",
                g.show(*smaller),
                g.show(*larger)
            ),
        }
    }
}

/// An explicit family of subsets, kept sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleFamily {
    ground: GroundSet,
    sets: Vec<Mask>,
}

impl FeasibleFamily {
    pub fn new(ground: GroundSet, sets: impl IntoIterator<Item = Mask>) -> Result<FeasibleFamily> {
        let full = ground.full();
        let mut sets: Vec<Mask> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|&&m| m & !full != 0) {
            return Err(Error::BadParams(format!(
                "mask {bad:#b} is outside the ground set"
            )));
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(FeasibleFamily { ground, sets })
    }

    pub fn from_labels<S: AsRef<str>>(
        ground: GroundSet,
        sets: &[Vec<S>],
    ) -> Result<FeasibleFamily> {
        let masks = sets
            .iter()
            .map(|s| ground.mask_of(s.iter()))
            .collect::<Result<Vec<_>>>()?;
        FeasibleFamily::new(ground, masks)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.sets.binary_search(&m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn membership(&self) -> Vec<bool> {
        let mut member = vec![false; 1 << self.ground.len()];
        for &m in &self.sets {
            member[m as usize] = true;
        }
        member
    }

    /// Accessibility, then augmentation; `None` when both hold.
    ///
    /// Augmentation is tested between sizes `k + 1` and `k` only, which is
    /// equivalent to the general axiom for accessible families.
    pub fn axioms_violation(&self) -> Option<FamilyViolation> {
        if !self.contains(0) {
            return Some(FamilyViolation::MissingEmpty);
        }
        let member = self.membership();
        for &f in &self.sets {
            if f != 0 && !elements(f).any(|p| member[(f & !(1 << p)) as usize]) {
                return Some(FamilyViolation::Inaccessible(f));
            }
        }
        let n = self.ground.len();
        let mut layers = vec![Vec::new(); n + 1];
        for &f in &self.sets {
            layers[size(f) as usize].push(f);
        }
        for k in 0..n {
            for &small in &layers[k] {
                for &large in &layers[k + 1] {
                    let ok = elements(large & !small).any(|x| member[(small | 1 << x) as usize]);
                    if !ok {
                        return Some(FamilyViolation::Augmentation {
                            larger: large,
                            smaller: small,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_greedoid_axioms(&self) -> bool {
        self.axioms_violation().is_none()
    }

    /// Members with no feasible proper superset.
    pub fn maximal(&self) -> Vec<Mask> {
        let n = self.ground.len();
        let member = self.membership();
        // has_sup[m]: some feasible set contains m
        let mut has_sup = member.clone();
        for p in 0..n {
            for m in (0..1usize << n).rev() {
                if m & (1 << p) == 0 && has_sup[m | 1 << p] {
                    has_sup[m] = true;
                }
            }
        }
        self.sets
            .iter()
            .copied()
            .filter(|&f| (0..n).all(|p| f & (1 << p) != 0 || !has_sup[(f | 1 << p) as usize]))
            .collect()
    }

    /// The greedoid rank `r(A) = max |X|` over feasible `X ⊆ A`.
    pub fn rank_table(&self) -> Result<RankTable> {
        if !self.contains(0) {
            return Err(Error::BadParams("the empty set must be feasible".into()));
        }
        let n = self.ground.len();
        let member = self.membership();
        let mut rank = vec![0i32; 1 << n];
        for m in 1..1usize << n {
            rank[m] = if member[m] {
                size(m as Mask)
            } else {
                elements(m as Mask)
                    .map(|p| rank[m & !(1 << p)])
                    .max()
                    .unwrap_or(0)
            };
        }
        Ok(RankTable {
            ground: self.ground.clone(),
            rank,
        })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.sets.iter().map(|&m| self.ground.show(m)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// An integer set function tabulated over all subsets, with `r(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankTable {
    ground: GroundSet,
    rank: Vec<i32>,
}

impl RankTable {
    /// Checks the table length and value range only.
    pub fn new(ground: GroundSet, rank: Vec<i64>) -> Result<RankTable> {
        let expected = 1usize << ground.len();
        if rank.len() != expected {
            return Err(Error::BadTable {
                expected,
                got: rank.len(),
            });
        }
        let rank = rank
            .into_iter()
            .map(|r| {
                if r.abs() > RANK_LIMIT {
                    Err(Error::RankOutOfRange(r))
                } else {
                    Ok(r as i32)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RankTable { ground, rank })
    }

    pub(crate) fn from_raw(ground: GroundSet, rank: Vec<i32>) -> RankTable {
        debug_assert_eq!(rank.len(), 1 << ground.len());
        RankTable { ground, rank }
    }

    pub fn from_fn(ground: GroundSet, f: impl Fn(Mask) -> i32) -> RankTable {
        let rank = (0..1u64 << ground.len()).map(|m| f(m as Mask)).collect();
        RankTable { ground, rank }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Mask {
        self.ground.full()
    }

    #[inline]
    pub fn rank(&self, m: Mask) -> i32 {
        self.rank[m as usize]
    }

    pub fn full_rank(&self) -> i32 {
        self.rank[self.full() as usize]
    }

    pub fn table(&self) -> &[i32] {
        &self.rank
    }

    pub fn into_table(self) -> Vec<i32> {
        self.rank
    }

    /// Ranks by label key, for rendering.
    pub fn by_key(&self) -> Vec<(String, i32)> {
        (0..self.rank.len())
            .map(|m| (self.ground.key(m as Mask), self.rank[m]))
            .collect()
    }

    /// The first violated ranked-set axiom in mask order.
    ///
    /// Each subset is checked for R0, then R2, then R1.
    pub fn axiom_violation(&self) -> Option<(Axiom, Mask)> {
        let rs = self.full_rank();
        for (m, &r) in self.rank.iter().enumerate() {
            let m = m as Mask;
            if m == 0 && r != 0 {
                return Some((Axiom::R0, m));
            }
            if r > size(m) {
                return Some((Axiom::R2, m));
            }
            if r > rs {
                return Some((Axiom::R1, m));
            }
        }
        None
    }

    /// Monotone, unit-increase and semimodular; `None` when all hold.
    ///
    /// Semimodularity is checked in its local form
    /// `r(X) + r(X − p − q) ≤ r(X − p) + r(X − q)`, which is equivalent to the
    /// global one for every set function.
    pub fn matroid_violation(&self) -> Option<Witness> {
        if let Some(w) = self.increase_violation(true) {
            return Some(w);
        }
        for x in 0..self.rank.len() as Mask {
            let rx = self.rank(x);
            for p in elements(x) {
                let xp = x & !(1 << p);
                for q in elements(xp) {
                    let xq = x & !(1 << q);
                    let xpq = xp & !(1 << q);
                    if rx + self.rank(xpq) > self.rank(xp) + self.rank(xq) {
                        return Some(Witness::Semimodular { a: xq, b: xp });
                    }
                }
            }
        }
        None
    }

    fn increase_violation(&self, unit: bool) -> Option<Witness> {
        let n = self.n();
        for a in 0..self.rank.len() as Mask {
            let ra = self.rank(a);
            for p in 0..n {
                if a & (1 << p) != 0 {
                    continue;
                }
                let rp = self.rank(a | 1 << p);
                if rp < ra {
                    return Some(Witness::Decreasing { set: a, element: p });
                }
                if unit && rp > ra + 1 {
                    return Some(Witness::UnitIncrease { set: a, element: p });
                }
            }
        }
        None
    }

    pub fn is_matroid(&self) -> bool {
        self.matroid_violation().is_none()
    }

    /// Increasing, subcardinal and locally semimodular; `None` when all hold.
    pub fn greedoid_violation(&self) -> Option<Witness> {
        if let Some(w) = self.increase_violation(false) {
            return Some(w);
        }
        if let Some(m) = (0..self.rank.len() as Mask).find(|&m| self.rank(m) > size(m)) {
            return Some(Witness::Supercardinal { set: m });
        }
        let n = self.n();
        for a in 0..self.rank.len() as Mask {
            let ra = self.rank(a);
            for p in 0..n {
                if a & (1 << p) != 0 || self.rank(a | 1 << p) != ra {
                    continue;
                }
                for q in p + 1..n {
                    if a & (1 << q) != 0 || self.rank(a | 1 << q) != ra {
                        continue;
                    }
                    if self.rank(a | 1 << p | 1 << q) != ra {
                        return Some(Witness::LocalSemimodular { set: a, p, q });
                    }
                }
            }
        }
        None
    }

    pub fn is_greedoid(&self) -> bool {
        self.greedoid_violation().is_none()
    }

    /// Greedoid with `r(S) = n` and a union-closed feasible family.
    pub fn antimatroid_violation(&self) -> Option<Witness> {
        if let Some(w) = self.greedoid_violation() {
            return Some(Witness::NotGreedoid(Box::new(w)));
        }
        let n = self.n();
        if self.full_rank() != n as i32 {
            return Some(Witness::NotFullRank {
                rank: self.full_rank(),
                n,
            });
        }
        // top[m] is the union of all feasible subsets of m; the family is
        // union-closed iff every top[m] is feasible.
        let feasible = |m: Mask| self.rank(m) == size(m);
        let mut top = vec![0 as Mask; self.rank.len()];
        for m in 1..self.rank.len() {
            let mm = m as Mask;
            if feasible(mm) {
                top[m] = mm;
                continue;
            }
            let mut acc: Mask = 0;
            for p in elements(mm) {
                let part = top[m & !(1 << p)];
                let joined = acc | part;
                if !feasible(joined) {
                    return Some(Witness::NotUnionClosed { a: acc, b: part });
                }
                acc = joined;
            }
            top[m] = acc;
        }
        None
    }

    pub fn is_antimatroid(&self) -> bool {
        self.antimatroid_violation().is_none()
    }

    /// `{A : r(A) = |A|}`
    pub fn feasible_family(&self) -> FeasibleFamily {
        let sets = (0..self.rank.len() as Mask)
            .filter(|&m| self.rank(m) == size(m))
            .collect();
        FeasibleFamily {
            ground: self.ground.clone(),
            sets,
        }
    }

    /// Maximal feasible sets.
    pub fn bases(&self) -> Vec<Mask> {
        self.feasible_family().maximal()
    }

    /// Elements `p` with `r(S − p) = r(S) − 1`.
    pub fn isthmuses(&self) -> Vec<usize> {
        let full = self.full();
        (0..self.n())
            .filter(|&p| self.rank(full & !(1 << p)) == self.full_rank() - 1)
            .collect()
    }

    /// Elements of rank zero.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.rank(1 << p) == 0).collect()
    }

    /// Pairs `{p, q}` of non-loops with `r({p, q}) = 1`.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if self.rank(1 << p) == 1
                    && self.rank(1 << q) == 1
                    && self.rank(1 << p | 1 << q) == 1
                {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// True when the two tables agree after matching ground sets by label.
    pub fn same_up_to_label_order(&self, other: &RankTable) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let Ok(map) = self
            .ground
            .labels()
            .iter()
            .map(|l| other.ground.index_of(l))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        (0..self.rank.len() as Mask).all(|m| {
            let image = elements(m).fold(0, |acc, i| acc | 1 << map[i]);
            self.rank(m) == other.rank(image)
        })
    }
}

/// A rank table satisfying R0 `r(∅) = 0`, R1 `r(A) ≤ r(S)` and R2 `r(A) ≤ |A|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankedSet(RankTable);

impl Deref for RankedSet {
    type Target = RankTable;

    fn deref(&self) -> &RankTable {
        &self.0
    }
}

impl RankedSet {
    pub fn new(ground: GroundSet, rank: Vec<i64>) -> Result<RankedSet> {
        RankedSet::from_table(RankTable::new(ground, rank)?)
    }

    pub fn from_table(t: RankTable) -> Result<RankedSet> {
        match t.axiom_violation() {
            None => Ok(RankedSet(t)),
            Some((axiom, m)) => Err(Error::AxiomViolation {
                axiom,
                witness: t.ground.key(m),
            }),
        }
    }

    /// Wraps a table the caller has shown to be valid.
    pub(crate) fn trusted(t: RankTable) -> RankedSet {
        debug_assert!(t.axiom_violation().is_none());
        RankedSet(t)
    }

    pub fn from_feasible(f: &FeasibleFamily) -> Result<RankedSet> {
        Ok(RankedSet::trusted(f.rank_table()?))
    }

    pub fn table_ref(&self) -> &RankTable {
        &self.0
    }

    pub fn into_inner(self) -> RankTable {
        self.0
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .by_key()
            .into_iter()
            .map(|(k, r)| format!("{{{k}}}:{r}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(n: usize, ranks: &[i64]) -> Result<RankedSet> {
        RankedSet::new(GroundSet::letters(n), ranks.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert!(table(1, &[0, 1]).is_ok());
        assert_eq!(
            table(1, &[1, 1]).unwrap_err(),
            Error::AxiomViolation {
                axiom: Axiom::R0,
                witness: String::new()
            }
        );
        assert_eq!(
            table(2, &[0, 1, 1, 0]).unwrap_err(),
            Error::AxiomViolation {
                axiom: Axiom::R1,
                witness: "a".into()
            }
        );
        assert!(matches!(
            table(2, &[0, 1, 1]),
            Err(Error::BadTable {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            table(1, &[0, 2]),
            Err(Error::AxiomViolation {
                axiom: Axiom::R2,
                ..
            })
        ));
    }

    #[test]
    fn ground_set_rules() {
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(GroundSet::new(["a,b"]), Err(Error::BadLabel(_))));
        assert!(matches!(
            GroundSet::new((0..21).map(|i| format!("e{i}"))),
            Err(Error::TooLarge { n: 21, max: 20 })
        ));
        let g = GroundSet::letters(4);
        assert_eq!(g.parse_key("c,a").unwrap(), 0b101);
        assert_eq!(g.key(0b101), "a,c");
        assert!(g.parse_key("a,a").is_err());
        assert!(g.parse_key("z").is_err());
    }

    #[test]
    fn expand_compress_roundtrip() {
        for i in 0..5 {
            for m in 0..16u32 {
                let e = expand(m, i);
                assert_eq!(e & (1 << i), 0);
                assert_eq!(compress(e, i), m);
            }
        }
    }

    fn pos_family() -> FeasibleFamily {
        let g = GroundSet::letters(4);
        let sets: Vec<Vec<&str>> = vec![
            vec![],
            vec!["a"],
            vec!["b"],
            vec!["c"],
            vec!["a", "b"],
            vec!["a", "c"],
            vec!["b", "c"],
            vec!["a", "d"],
        ];
        FeasibleFamily::from_labels(g, &sets).unwrap()
    }

    #[test]
    fn pos_family_ranks_and_classification() {
        let g = RankedSet::from_feasible(&pos_family()).unwrap();
        let gs = g.ground().clone();
        assert_eq!(g.rank(gs.mask_of(["d"]).unwrap()), 0);
        assert_eq!(g.rank(gs.mask_of(["a", "d"]).unwrap()), 2);
        assert!(g.is_greedoid());
        let w = g.matroid_violation().unwrap();
        assert_eq!(
            w,
            Witness::UnitIncrease {
                set: 0b1000,
                element: 0
            }
        );
        assert!(w.describe(&gs).contains("{d}"));
        assert!(w.describe(&gs).contains("{a,d}"));
        assert_eq!(g.feasible_family(), pos_family());
    }

    #[test]
    fn feasible_family_examples() {
        let loops = RankedSet::new(GroundSet::letters(2), vec![0; 4]).unwrap();
        assert_eq!(loops.feasible_family().sets(), &[0]);
        assert_eq!(loops.bases(), vec![0]);
        let f = FeasibleFamily::new(GroundSet::letters(3), 0..8).unwrap();
        let free = RankedSet::from_feasible(&f).unwrap();
        assert!((0..8).all(|m| free.rank(m) == size(m)));
        let two_loops = FeasibleFamily::new(GroundSet::letters(2), [0]).unwrap();
        assert_eq!(two_loops.rank_table().unwrap().table(), &[0, 0, 0, 0]);
    }

    #[test]
    fn axioms_check_examples() {
        let g = GroundSet::letters(3);
        let f = FeasibleFamily::new(g.clone(), [0, 0b011]).unwrap();
        assert_eq!(
            f.axioms_violation(),
            Some(FamilyViolation::Inaccessible(0b011))
        );
        let f = FeasibleFamily::new(g.clone(), [0, 0b001, 0b110]).unwrap();
        assert!(!f.satisfies_greedoid_axioms());
        let f = FeasibleFamily::new(g.clone(), [0, 0b001, 0b010, 0b100, 0b011]).unwrap();
        assert!(matches!(
            f.axioms_violation(),
            Some(FamilyViolation::Augmentation { .. })
        ));
        assert!(pos_family().satisfies_greedoid_axioms());
        assert_eq!(
            FeasibleFamily::new(g, [1]).unwrap().axioms_violation(),
            Some(FamilyViolation::MissingEmpty)
        );
    }

    #[test]
    fn monotonicity_violation_is_not_greedoid() {
        let t = RankTable::new(GroundSet::letters(2), vec![0, 1, 0, 0]).unwrap();
        assert!(matches!(
            t.greedoid_violation(),
            Some(Witness::Decreasing { set: 1, element: 1 })
        ));
    }

    #[test]
    fn antimatroid_examples() {
        let g = GroundSet::numbered(3);
        let sets: Vec<Vec<&str>> = vec![
            vec![],
            vec!["1"],
            vec!["3"],
            vec!["1", "2"],
            vec!["1", "3"],
            vec!["2", "3"],
            vec!["1", "2", "3"],
        ];
        let f = FeasibleFamily::from_labels(g, &sets).unwrap();
        let a = RankedSet::from_feasible(&f).unwrap();
        assert!(a.is_antimatroid());
        assert_eq!(a.feasible_family().len(), 7);
        assert!(!a.is_matroid());
        let u24 = RankedSet::new(
            GroundSet::letters(4),
            (0..16u32).map(|m| size(m).min(2) as i64).collect(),
        )
        .unwrap();
        assert!(matches!(
            u24.antimatroid_violation(),
            Some(Witness::NotFullRank { rank: 2, n: 4 })
        ));
        assert_eq!(u24.bases().len(), 6);
        // {a}, {b} feasible but {a,b} not
        let f = FeasibleFamily::new(GroundSet::letters(2), [0, 1, 2]).unwrap();
        let t = f.rank_table().unwrap();
        assert!(t.is_greedoid());
        assert!(t.antimatroid_violation().is_some());
    }

    fn brute_semimodular(t: &RankTable) -> bool {
        let len = t.table().len() as Mask;
        (0..len).all(|a| (0..len).all(|b| t.rank(a & b) + t.rank(a | b) <= t.rank(a) + t.rank(b)))
    }

    /// Random tables with unit increase, built layer by layer, so that the
    /// semimodularity test is the one being exercised.
    fn unit_increase_table(rng: &mut ChaCha8Rng, n: usize) -> RankTable {
        let mut rank = vec![0i32; 1 << n];
        let mut order: Vec<Mask> = (1..1u32 << n).collect();
        order.sort_by_key(|&m| size(m));
        for m in order {
            let lo = elements(m)
                .map(|p| rank[(m & !(1 << p)) as usize])
                .max()
                .unwrap();
            let hi = elements(m)
                .map(|p| rank[(m & !(1 << p)) as usize])
                .min()
                .unwrap()
                + 1;
            rank[m as usize] = if lo >= hi { lo } else { rng.gen_range(lo..=hi) };
        }
        RankTable::from_raw(GroundSet::letters(n), rank)
    }

    #[test]
    fn local_submodularity_matches_pairwise_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut yes, mut no) = (0, 0);
        for _ in 0..400 {
            let n = rng.gen_range(1..=5);
            let t = unit_increase_table(&mut rng, n);
            assert!(t.increase_violation(true).is_none());
            let local_ok = t.matroid_violation().is_none();
            assert_eq!(local_ok, brute_semimodular(&t), "table {t}");
            if local_ok {
                yes += 1;
            } else {
                no += 1;
            }
        }
        assert!(yes > 10 && no > 10);
    }

    #[test]
    fn matroid_implies_greedoid_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=4);
            let g = GroundSet::letters(n);
            let ranks: Vec<i64> = (0..1u32 << n)
                .map(|m| {
                    if m == 0 {
                        0
                    } else {
                        rng.gen_range(0..=size(m)) as i64
                    }
                })
                .collect();
            let t = RankTable::new(g, ranks).unwrap();
            if t.is_matroid() {
                assert!(t.is_greedoid());
            }
        }
    }

    #[test]
    fn greedoid_ranks_roundtrip_through_feasible_sets() {
        let f = pos_family();
        let g = RankedSet::from_feasible(&f).unwrap();
        let again = RankedSet::from_feasible(&g.feasible_family()).unwrap();
        assert_eq!(g, again);
        assert!(g.feasible_family().satisfies_greedoid_axioms());
    }

    #[test]
    fn isthmus_and_loop_detection() {
        let t = RankedSet::new(GroundSet::letters(2), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(t.isthmuses(), vec![0]);
        assert_eq!(t.loops(), vec![1]);
        let u12 = RankedSet::new(GroundSet::letters(2), vec![0, 1, 1, 1]).unwrap();
        assert_eq!(u12.parallel_pairs(), vec![(0, 1)]);
        assert!(u12.isthmuses().is_empty());
    }
}
