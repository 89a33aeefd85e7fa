//! The built-in registry of worked examples with frozen expected values.

use num_bigint::BigInt;
use serde::Serialize;

use crate::antimatroid::{
    a_table, point_set, tree_interior_edges, tree_pruning, tutte_via_convex, unique_interior_sets,
    unique_interior_sum, PointConfig, Tree,
};
use crate::bipoly::BiPoly;
use crate::constructions::uniform_matroid;
use crate::error::Result;
use crate::identities::{
    brylawski_check, brylawski_clauses, i_k_trace, low_order_identities, n_matrix,
    simplified_matroid_i2, verify_affine, verify_affine_poly,
};
use crate::ranked::{FeasibleFamily, GroundSet, RankedSet};
use crate::realizability::{
    elements_with_matroid_minors, find_matroids_with_tutte, is_greedoid_basis_family, SearchBudget,
};
use crate::tutte::tutte_expansion;

pub const UNIFORM_2_4: &str = "x^2 + 2*x + 2*y + y^2";
pub const UNIFORM_3_4: &str = "x^3 + x^2 + x + y";
pub const PATH_PRUNING: &str = "x^3*y - 3*x^2*y + 2*x^2 + 3*x*y - x - y";
pub const POSITIVE_GREEDOID: &str = "x^2*y + x + y + y^2";
pub const SHARED_TUTTE: &str = "x^3 + x^2*y + 2*x^2 + 2*x*y + 3*x + y^3 + 3*y^2 + 3*y";
pub const SHARED_TUTTE_SMALL: &str = "x^3 + x^2*y + x^2 + x*y + y^2 + x + y";
pub const BASIS_COMPLEMENT: &str =
    "x^3*y^3 - 3*x^2*y^3 + 2*x^2*y^2 + 3*x*y^3 - 4*x*y^2 + 3*x*y - y^3 + 3*y^2";
pub const RANK3_GRAPH: &str = "x^3 + 2*x^2 + 2*x*y + x + y^2 + y";
pub const RANK3_ROOTED: &str = "x^3*y^2 - 3*x^2*y^2 + 2*x^2*y + x^2 + 3*x*y^2 - 2*x*y + 3*x + 3*y";
pub const RANK3_ROOTED_CYCLE: &str =
    "x^3*y^3 - 3*x^2*y^3 + 2*x^2*y + 3*x*y^3 - 3*x*y + 4*x - y^3 + y^2 + 4*y";
pub const CATERPILLAR: &str =
    "x^9*y^4 - 4*x^8*y^4 + 4*x^7*y^4 + 2*x^7*y^3 + 4*x^6*y^4 - 8*x^6*y^3 \
    - 10*x^5*y^4 + 2*x^6*y^2 + 10*x^5*y^3 + 4*x^4*y^4 - 3*x^5*y^2 + 4*x^3*y^4 - 6*x^4*y^2 \
    - 10*x^3*y^3 - 4*x^2*y^4 + 4*x^4*y + 14*x^3*y^2 + 8*x^2*y^3 + x*y^4 - 8*x^3*y - 6*x^2*y^2 \
    - 2*x*y^3 + 3*x^3 - 3*x*y^2 + 2*x^2 + 8*x*y + 2*y^2 - 4*x - 4*y";
pub const SQUARE_CENTER: &str = "x^5*y - x^4*y - 4*x^3*y + 4*x^3 + 8*x^2*y - 4*x^2 - 5*x*y + x + y";

fn family(labels: &[&str], sets: &[&str]) -> RankedSet {
    let g = GroundSet::new(labels.iter().copied()).expect("fixture labels are valid");
    let masks = sets
        .iter()
        .map(|k| g.parse_key(k).expect("fixture sets use ground labels"))
        .collect::<Vec<_>>();
    let fam = FeasibleFamily::new(g, masks).expect("fixture masks fit");
    RankedSet::from_feasible(&fam).expect("fixture families contain the empty set")
}

/// Antimatroid on `{1,2,3}`: edge pruning of a path with three edges.
pub fn path_pruning() -> RankedSet {
    family(
        &["1", "2", "3"],
        &["", "1", "3", "1,2", "1,3", "2,3", "1,2,3"],
    )
}

/// A greedoid on `a..d` whose Tutte polynomial has nonnegative coefficients
/// but is not the polynomial of any matroid.
pub fn positive_greedoid() -> RankedSet {
    family(
        &["a", "b", "c", "d"],
        &["", "a", "b", "c", "a,b", "a,c", "b,c", "a,d"],
    )
}

fn pairs_and_triples(
    labels: &[&str],
    missing_pairs: &[&str],
    missing_triples: &[&str],
) -> Vec<String> {
    let n = labels.len();
    let mut out = vec![String::new()];
    out.extend(labels.iter().map(|l| l.to_string()));
    for i in 0..n {
        for j in i + 1..n {
            let k = format!("{},{}", labels[i], labels[j]);
            if !missing_pairs.contains(&k.as_str()) {
                out.push(k);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let k = format!("{},{},{}", labels[i], labels[j], labels[l]);
                if !missing_triples.contains(&k.as_str()) {
                    out.push(k);
                }
            }
        }
    }
    out
}

/// A rank-3 greedoid on `a..f` sharing its Tutte polynomial with a matroid.
pub fn shared_tutte_greedoid() -> RankedSet {
    let labels = ["a", "b", "c", "d", "e", "f"];
    let sets = pairs_and_triples(&labels, &["a,b"], &["a,b,c", "a,d,e", "b,e,f", "c,d,f"]);
    let sets: Vec<&str> = sets.iter().map(String::as_str).collect();
    family(&labels, &sets)
}

/// A rank-3 greedoid on `a..e` sharing its Tutte polynomial with a matroid.
pub fn shared_tutte_greedoid_small() -> RankedSet {
    let labels = ["a", "b", "c", "d", "e"];
    let sets = pairs_and_triples(&labels, &["a,b"], &["a,b,c", "a,b,d", "c,d,e"]);
    let sets: Vec<&str> = sets.iter().map(String::as_str).collect();
    family(&labels, &sets)
}

/// A rank-3 greedoid on `a..e` whose basis complements are not the bases of
/// any greedoid.
pub fn basis_complement_greedoid() -> RankedSet {
    family(
        &["a", "b", "c", "d", "e"],
        &[
            "", "a", "b", "a,b", "a,c", "b,d", "a,b,c", "a,b,d", "a,c,e", "b,d,e",
        ],
    )
}

/// Spine `a–b–c–d–e` with two leaves at `a`, two at `e` and one at `c`.
pub fn caterpillar() -> Tree {
    Tree::new(&[
        ("a", "b", "s1"),
        ("b", "c", "s2"),
        ("c", "d", "s3"),
        ("d", "e", "s4"),
        ("a", "a1", "l1"),
        ("a", "a2", "l2"),
        ("e", "e1", "l3"),
        ("e", "e2", "l4"),
        ("c", "c1", "l5"),
    ])
    .expect("the caterpillar is a tree")
}

/// Corners of a square and its centre `o`.
pub fn square_with_center() -> PointConfig {
    PointConfig::from_integers(
        &["a", "b", "c", "d", "o"],
        &[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1]],
    )
    .expect("distinct points")
}

fn p(s: &str) -> BiPoly {
    s.parse().expect("fixture polynomials parse")
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: detail.into(),
    }
}

fn eq_check<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Check {
    let pass = got == want;
    check(name, pass, format!("got {got}, expected {want}"))
}

/// What a fixture is about: a structure whose polynomial is computed, or a
/// printed polynomial taken as given.
#[derive(Clone, Copy)]
pub enum Subject {
    Structure(fn() -> RankedSet),
    Polynomial,
}

#[derive(Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub about: &'static str,
    pub subject: Subject,
    /// Expected Tutte polynomial, in text form.
    pub tutte: String,
    pub extra: fn(&BiPoly, Option<&RankedSet>) -> Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub about: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Fixture {
    pub fn run(&self) -> FixtureOutcome {
        let mut checks = Vec::new();
        let expected: Result<BiPoly> = self.tutte.parse();
        match (&self.subject, expected) {
            (_, Err(e)) => checks.push(check("expected polynomial parses", false, e.to_string())),
            (Subject::Structure(build), Ok(want)) => {
                let g = build();
                let got = tutte_expansion(&g);
                checks.push(check(
                    "tutte polynomial",
                    got == want,
                    format!("got {got}, expected {want}"),
                ));
                checks.extend((self.extra)(&want, Some(&g)));
            }
            (Subject::Polynomial, Ok(want)) => checks.extend((self.extra)(&want, None)),
        }
        FixtureOutcome {
            name: self.name,
            about: self.about,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

fn profile_check(g: &RankedSet, want: &[i64]) -> Check {
    let rep = verify_affine(g);
    let want: Vec<BigInt> = want.iter().map(|&v| v.into()).collect();
    let show = |v: &[BigInt]| {
        v.iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    check(
        "I_0..I_n",
        rep.pass && rep.i_values == want,
        format!("got [{}]", show(&rep.i_values)),
    )
}

fn uniform_2_4_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let bry = brylawski_check(g).map(|r| r.pass).unwrap_or(false);
    vec![
        profile_check(g, &[0, 0, 0, 0, 1]),
        check("isthmus-free clauses", bry, ""),
        eq_check(
            "trace form I_4",
            i_k_trace(t, 4, 4, 2).unwrap_or_default(),
            BigInt::from(1),
        ),
    ]
}

fn uniform_3_4_extra(_: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    vec![profile_check(
        g.expect("structure fixture"),
        &[0, 0, 0, 0, -1],
    )]
}

fn path_pruning_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let path = Tree::new(&[("u", "v", "1"), ("v", "w", "2"), ("w", "z", "3")]).expect("path");
    let (tree_g, cf) = tree_pruning(&path).expect("path pruning");
    let clauses = brylawski_clauses(t, 3, 3);
    let witness = |c: usize, i: usize, j: usize| {
        clauses[c - 1]
            .failures
            .iter()
            .find(|w| w.i == i && w.j == j)
            .map(|w| w.got.to_string())
            .unwrap_or_default()
    };
    vec![
        check("antimatroid", g.is_antimatroid(), ""),
        profile_check(g, &[0, 0, 0, 1]),
        check("same as path pruning", tree_g.table() == g.table(), ""),
        check("convex expansion", tutte_via_convex(&cf) == *t, ""),
        check(
            "clauses 2, 3, 4 fail",
            !clauses[1].pass && !clauses[2].pass && !clauses[3].pass,
            "",
        ),
        eq_check("b_{3,1}", witness(2, 3, 1), "1".into()),
        eq_check("b_{2,1}", witness(3, 2, 1), "-3".into()),
        eq_check("b_{1,1}", witness(4, 1, 1), "3".into()),
    ]
}

fn positive_greedoid_extra(_: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let a = g.ground().index_of("a").expect("a");
    let del = RankedSet::from_table(g.delete(a)).map(|d| tutte_expansion(&d));
    let con = RankedSet::from_table(g.contract(a)).map(|d| tutte_expansion(&d));
    let none = find_matroids_with_tutte(&p(POSITIVE_GREEDOID), 4, &SearchBudget::default())
        .map(|v| v.is_empty())
        .unwrap_or(false);
    vec![
        check("greedoid", g.is_greedoid(), ""),
        check("not a matroid", !g.is_matroid(), ""),
        check("T(G - a) = x^2*y", del.ok() == Some(p("x^2*y")), ""),
        check(
            "T(G / a) = x + y + y^2",
            con.ok() == Some(p("x + y + y^2")),
            "",
        ),
        check("no matroid has this polynomial", none, ""),
    ]
}

fn shared_tutte_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let found = find_matroids_with_tutte(t, 6, &SearchBudget::default());
    vec![
        check("greedoid", g.is_greedoid(), ""),
        check("not a matroid", !g.is_matroid(), ""),
        check(
            "some matroid shares the polynomial",
            found.as_ref().is_ok_and(|v| !v.is_empty()),
            format!("{} labelled matroids", found.map(|v| v.len()).unwrap_or(0)),
        ),
        check(
            "no element has both minors matroids",
            elements_with_matroid_minors(g).is_empty(),
            "",
        ),
    ]
}

fn shared_tutte_small_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let found = find_matroids_with_tutte(t, 5, &SearchBudget::default());
    vec![
        check("greedoid", g.is_greedoid(), ""),
        check("not a matroid", !g.is_matroid(), ""),
        check(
            "some matroid shares the polynomial",
            found.as_ref().is_ok_and(|v| !v.is_empty()),
            format!("{} labelled matroids", found.map(|v| v.len()).unwrap_or(0)),
        ),
    ]
}

fn basis_complement_extra(_: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let g = g.expect("structure fixture");
    let full = g.full();
    let complements: Vec<u32> = g.bases().iter().map(|&b| full & !b).collect();
    let res = is_greedoid_basis_family(g.ground(), &complements, &SearchBudget::default());
    vec![
        check("greedoid", g.is_greedoid(), ""),
        check(
            "basis complements are not greedoid bases",
            res.as_ref()
                .is_ok_and(|r| !r.realizable && !r.refutation.is_empty()),
            res.map(|r| r.refutation.join("; "))
                .unwrap_or_else(|e| e.to_string()),
        ),
    ]
}

fn low_order_extra(t: &BiPoly, _: Option<&RankedSet>) -> Vec<Check> {
    let rows = low_order_identities(t);
    let totals: Vec<String> = rows.iter().map(|r| r.total.to_string()).collect();
    vec![
        check(
            "I_0..I_3 vanish",
            rows.iter().all(|r| r.total == BigInt::from(0)),
            totals.join(","),
        ),
        check("affine relations", verify_affine_poly(t, 5, 3).pass, ""),
    ]
}

fn rank3_graph_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let (lhs, rhs) = simplified_matroid_i2(t, 5, 3);
    let mut out = low_order_extra(t, g);
    out.push(eq_check("b_{1,0} + b_{1,1} = 3", lhs, rhs));
    out
}

fn rank3_rooted_extra(t: &BiPoly, g: Option<&RankedSet>) -> Vec<Check> {
    let (lhs, rhs) = simplified_matroid_i2(t, 5, 3);
    let mut out = low_order_extra(t, g);
    out.push(check(
        "b_{1,0} + b_{1,1} = 3 fails",
        lhs != rhs,
        format!("b_{{1,0}} + b_{{1,1}} = {lhs}"),
    ));
    out
}

fn caterpillar_extra(_: &BiPoly, _: Option<&RankedSet>) -> Vec<Check> {
    let tree = caterpillar();
    let (_, cf) = tree_pruning(&tree).expect("tree");
    let at = a_table(&cf);
    let f: Vec<u64> = at.f.iter().copied().take_while(|&x| x != 0).collect();
    vec![
        check("f-vector 1,9,11,3", f == [1, 9, 11, 3], format!("{f:?}")),
        eq_check("interior edges", tree_interior_edges(&tree), 4),
        eq_check("unique-interior sum", unique_interior_sum(&cf), -4),
    ]
}

fn square_extra(_: &BiPoly, _: Option<&RankedSet>) -> Vec<Check> {
    let pc = square_with_center();
    let (g, cf) = point_set(&pc).expect("points");
    let o = pc.ground().index_of("o").expect("o");
    let sets = unique_interior_sets(&cf, o);
    let t = tutte_expansion(&g);
    vec![
        eq_check("sets with interior {o}", sets.len(), 7),
        eq_check("unique-interior sum", unique_interior_sum(&cf), 1),
        eq_check("b_{0,1}", t.coeff(0, 1), BigInt::from(1)),
    ]
}

fn n_matrix_extra(_: &BiPoly, _: Option<&RankedSet>) -> Vec<Check> {
    let col: Vec<String> = n_matrix(5)
        .column(0)
        .iter()
        .map(BigInt::to_string)
        .collect();
    vec![check(
        "first column of N for n = 5",
        col == ["-1", "4", "-6", "4", "-1"],
        col.join(","),
    )]
}

fn u24() -> RankedSet {
    uniform_matroid(2, 4).expect("valid parameters")
}

fn u34() -> RankedSet {
    uniform_matroid(3, 4).expect("valid parameters")
}

fn caterpillar_ranked() -> RankedSet {
    tree_pruning(&caterpillar()).expect("tree").0
}

fn square_ranked() -> RankedSet {
    point_set(&square_with_center()).expect("points").0
}

/// Every built-in fixture, in a fixed order.
pub fn registry() -> Vec<Fixture> {
    let f = |name, about, subject, tutte: &str, extra| Fixture {
        name,
        about,
        subject,
        tutte: tutte.to_string(),
        extra,
    };
    vec![
        f(
            "uniform_2_4",
            "uniform matroid of rank 2 on 4 points",
            Subject::Structure(u24),
            UNIFORM_2_4,
            uniform_2_4_extra,
        ),
        f(
            "uniform_3_4",
            "uniform matroid of rank 3 on 4 points",
            Subject::Structure(u34),
            UNIFORM_3_4,
            uniform_3_4_extra,
        ),
        f(
            "path_pruning",
            "edge pruning antimatroid of a three-edge path",
            Subject::Structure(path_pruning),
            PATH_PRUNING,
            path_pruning_extra,
        ),
        f(
            "positive_greedoid",
            "greedoid with a positive polynomial shared by no matroid",
            Subject::Structure(positive_greedoid),
            POSITIVE_GREEDOID,
            positive_greedoid_extra,
        ),
        f(
            "shared_tutte",
            "greedoid on six elements sharing T with a matroid",
            Subject::Structure(shared_tutte_greedoid),
            SHARED_TUTTE,
            shared_tutte_extra,
        ),
        f(
            "shared_tutte_small",
            "greedoid on five elements sharing T with a matroid",
            Subject::Structure(shared_tutte_greedoid_small),
            SHARED_TUTTE_SMALL,
            shared_tutte_small_extra,
        ),
        f(
            "basis_complement",
            "greedoid whose basis complements are not greedoid bases",
            Subject::Structure(basis_complement_greedoid),
            BASIS_COMPLEMENT,
            basis_complement_extra,
        ),
        f(
            "rank3_graph",
            "rank-3 graph on five edges",
            Subject::Polynomial,
            RANK3_GRAPH,
            rank3_graph_extra,
        ),
        f(
            "rank3_rooted",
            "rank-3 rooted graph, first variant",
            Subject::Polynomial,
            RANK3_ROOTED,
            rank3_rooted_extra,
        ),
        f(
            "rank3_rooted_cycle",
            "rank-3 rooted graph, second variant",
            Subject::Polynomial,
            RANK3_ROOTED_CYCLE,
            rank3_rooted_extra,
        ),
        f(
            "caterpillar",
            "pruning antimatroid of a nine-edge caterpillar",
            Subject::Structure(caterpillar_ranked),
            CATERPILLAR,
            caterpillar_extra,
        ),
        f(
            "square_center",
            "convex shelling of a square and its centre",
            Subject::Structure(square_ranked),
            SQUARE_CENTER,
            square_extra,
        ),
        f(
            "n_matrix",
            "the involution N for n = 5",
            Subject::Polynomial,
            "0",
            n_matrix_extra,
        ),
    ]
}

/// Runs the fixtures whose name contains `filter`.
pub fn run_fixtures(fixtures: &[Fixture], filter: Option<&str>) -> Vec<FixtureOutcome> {
    fixtures
        .iter()
        .filter(|f| filter.is_none_or(|s| f.name.contains(s)))
        .map(Fixture::run)
        .collect()
}
