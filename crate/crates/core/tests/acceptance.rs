//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tutte_core::antimatroid::{
    a_table, b01, b_from_a, beta_sum, family_identities, geometric_convex_sets, point_set,
    random_chordal, random_points, random_poset, random_tree, relative_interior_points,
    tree_interior_edges, tree_pruning, tutte_via_convex, unique_interior_sets, unique_interior_sum,
    Family,
};
use tutte_core::constructions::{random_ranked_set, uniform_matroid};
use tutte_core::fixtures::{self, Subject};
use tutte_core::identities::{
    brylawski_check, expected_profile, i_k_trace, k_n_identity, low_order_identities, n_matrix,
    simplified_matroid_i2, IntMatrix,
};
use tutte_core::ranked::size;
use tutte_core::realizability::{
    elements_with_matroid_minors, enumerate_matroids, find_matroids_with_tutte,
    is_greedoid_basis_family, SearchBudget,
};
use tutte_core::{
    binomial, corank_nullity, tutte_expansion, tutte_recursion, BiPoly, GroundSet, PivotOrder,
    RankedSet,
};

struct Outcome {
    pass: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
            info: Vec::new(),
        }
    }

    fn with_info(mut self, line: impl Into<String>) -> Outcome {
        self.info.push(line.into());
        self
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn poly(s: &str) -> BiPoly {
    s.parse().expect("constant polynomial parses")
}

fn sign(e: i64) -> BigInt {
    BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn random_poly(rng: &mut ChaCha8Rng, max_dx: usize, max_dy: usize) -> BiPoly {
    let dx = rng.gen_range(0..=max_dx);
    let dy = rng.gen_range(0..=max_dy);
    let grid = (0..=dx)
        .map(|_| {
            (0..=dy)
                .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                .collect()
        })
        .collect();
    BiPoly::from_grid(grid)
}

fn exact_fixtures() -> Outcome {
    let cases: [(&str, RankedSet, &str); 6] = [
        (
            "U_2,4",
            uniform_matroid(2, 4).unwrap(),
            fixtures::UNIFORM_2_4,
        ),
        (
            "U_3,4",
            uniform_matroid(3, 4).unwrap(),
            fixtures::UNIFORM_3_4,
        ),
        (
            "bad identity",
            fixtures::path_pruning(),
            fixtures::PATH_PRUNING,
        ),
        (
            "positive coefficients",
            fixtures::positive_greedoid(),
            fixtures::POSITIVE_GREEDOID,
        ),
        (
            "shared polynomial",
            fixtures::shared_tutte_greedoid(),
            fixtures::SHARED_TUTTE,
        ),
        (
            "basis complement",
            fixtures::basis_complement_greedoid(),
            fixtures::BASIS_COMPLEMENT,
        ),
    ];
    let start = Instant::now();
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(_, g, want)| tutte_expansion(g) != poly(want))
        .map(|(name, g, _)| format!("{name}: got {}", tutte_expansion(g)))
        .collect();
    let t = start.elapsed();
    let fast = t < Duration::from_secs(1);
    let mut o = Outcome::new(
        wrong.is_empty() && fast,
        format!("{}/6 exact, {:?}", 6 - wrong.len(), t),
    );
    for w in wrong {
        o = o.with_info(w);
    }
    o
}

fn theorem_property() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=10usize {
        for seed in 0..1000u64 {
            let g = random_ranked_set(n, (n as u64) << 32 | seed);
            let t = tutte_expansion(&g);
            if t.i_profile(n) != expected_profile(n, g.full_rank() as i64) {
                bad.push(format!("n={n} seed={seed}"));
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    let mut o = Outcome::new(
        bad.is_empty() && t < Duration::from_secs(120),
        format!("{checked} ranked sets, {} violations, {:?}", bad.len(), t),
    );
    for b in bad.into_iter().take(5) {
        o = o.with_info(b);
    }
    o
}

fn engine_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut subjects: Vec<(String, RankedSet)> = (0..500u64)
        .map(|seed| {
            let n = 1 + seed as usize % 9;
            (
                format!("random n={n} seed={seed}"),
                random_ranked_set(n, seed),
            )
        })
        .collect();
    for f in fixtures::registry() {
        if let Subject::Structure(build) = f.subject {
            subjects.push((f.name.to_string(), build()));
        }
    }
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, g) in &subjects {
        let want = tutte_expansion(g);
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            runs += 1;
            if tutte_recursion(g, &PivotOrder::Priority(perm.clone())) != want {
                bad.push(format!("{name} order {perm:?}"));
            }
        }
    }
    let mut o = Outcome::new(
        bad.is_empty(),
        format!(
            "{} structures x 3 pivot orders, {runs} runs, {} mismatches",
            subjects.len(),
            bad.len()
        ),
    );
    for b in bad.into_iter().take(5) {
        o = o.with_info(b);
    }
    o
}

fn minor_algebra() -> Outcome {
    let names = [
        "(G*)* = G",
        "T(G*)(x,y) = T(G)(y,x)",
        "r(G+p) = r(G)",
        "r(G×p) = r(G)+1",
        "r((G+p)/p) = r(G)-1",
        "r((G×p)-p) = r(G)+1",
        "(G+p)-p = G",
        "(G×p)/p = G",
        "r(A∪p)-r(p) = (G*-p)*",
    ];
    let mut fails = vec![Vec::<(usize, i32)>::new(); names.len()];
    for seed in 0..500u64 {
        let n = 1 + seed as usize % 8;
        let g = random_ranked_set(n, 7_000 + seed);
        let r = g.full_rank();
        let ext = g.free_extension("z").unwrap();
        let co = g.free_coextension("z").unwrap();
        let results = [
            g.dual().dual() == g,
            tutte_expansion(&g.dual()) == tutte_expansion(&g).swap_xy(),
            ext.full_rank() == r,
            co.full_rank() == r + 1,
            ext.contract(n).full_rank() == r - 1,
            co.delete(n).full_rank() == r + 1,
            ext.delete(n) == *g.table_ref(),
            co.contract(n) == *g.table_ref(),
            (0..n).all(|p| g.contract(p) == g.contract_via_duality(p)),
        ];
        for (k, ok) in results.iter().enumerate() {
            if !ok {
                fails[k].push((n, r));
            }
        }
    }
    let failing: Vec<usize> = (0..names.len()).filter(|&k| !fails[k].is_empty()).collect();
    let mut o = Outcome::new(
        failing.is_empty(),
        format!(
            "500 structures, {} of {} claims exact",
            names.len() - failing.len(),
            names.len()
        ),
    );
    for k in failing {
        let f = &fails[k];
        let at_zero = f.iter().filter(|&&(_, r)| r == 0).count();
        let at_full = f.iter().filter(|&&(n, r)| r as usize == n).count();
        o = o.with_info(format!(
            "{} fails on {} structures ({} with r(S)=0, {} with r(S)=n)",
            names[k],
            f.len(),
            at_zero,
            at_full
        ));
    }
    o
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failed: Vec<String> = Vec::new();

    let mut shift_x = true;
    let mut shift_y = true;
    for _ in 0..200 {
        let p = random_poly(&mut rng, 6, 6);
        for k in 0..=12usize {
            for m in 0..=k {
                shift_x &= p.shift(m, 0).i_k(k) == p.i_k(k - m);
            }
            let below: BigInt = (0..k).map(|s| p.i_k(s)).sum();
            shift_y &= p.shift(0, 1).i_k(k) == -below;
        }
    }
    if !shift_x {
        failed.push("shift in x".into());
    }
    if !shift_y {
        failed.push("shift in y".into());
    }

    let power = (0..=10usize)
        .all(|n| (0..=10usize).all(|k| BiPoly::cross_power(k).i_k(n) == BigInt::from(1)));
    if !power {
        failed.push("power lemma".into());
    }

    let binom = (0..=12i64).all(|k| {
        (0..=12i64).all(|n| {
            let mut s = BigInt::from(0);
            for i in 0..=n {
                for j in 0..=n - i {
                    s += sign(i) * binomial(n - i, j) * binomial(k, i) * binomial(k, j);
                }
            }
            s == BigInt::from(1)
        })
    });
    if !binom {
        failed.push("binomial identity".into());
    }

    let mut trace = true;
    for _ in 0..200 {
        let r = rng.gen_range(0..=6usize);
        let n = r + rng.gen_range(0..=6usize);
        let p = random_poly(&mut rng, r, n);
        for k in 0..=n {
            trace &= i_k_trace(&p, k, n, r).ok() == Some(p.i_k(k));
        }
    }
    if !trace {
        failed.push("trace form".into());
    }

    let involution = (0..=12usize).all(|n| {
        let m = n_matrix(n);
        m.mul(&m).ok() == Some(IntMatrix::identity(m.nrows()))
    });
    if !involution {
        failed.push("N·N = I".into());
    }

    let mut raise = true;
    for seed in 0..200u64 {
        let n = 1 + seed as usize % 9;
        let g = random_ranked_set(n, 9_000 + seed);
        let d = (n as i32 - g.full_rank()) as u32;
        let u = BiPoly::x().pow(d);
        let uv = (BiPoly::x() * BiPoly::y()).pow(d);
        let want = &(&u * &corank_nullity(&g)) - &uv + BiPoly::one();
        raise &= corank_nullity(&g.raise_to_full_rank()) == want;
    }
    if !raise {
        failed.push("rank-raise identity".into());
    }

    let mut o = Outcome::new(
        failed.is_empty(),
        format!("7 lemma families, {} failing", failed.len()),
    );
    for f in failed {
        o = o.with_info(format!("{f} fails"));
    }
    o
}

fn brylawski_suite() -> Outcome {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let mut total = 0;
    let mut isthmus_free = 0;
    let mut simple_free = 0;
    let mut general_bad = 0;
    let mut free_bad = Vec::new();
    let mut simple_bad = 0;
    for n in 1..=5 {
        for m in enumerate_matroids(n, None, &budget).unwrap() {
            total += 1;
            let rep = brylawski_check(&m).unwrap();
            let always = rep
                .clauses
                .iter()
                .filter(|c| c.clause == 1 || c.clause == 6)
                .all(|c| c.pass);
            if !always || !k_n_identity(&m).unwrap() {
                general_bad += 1;
            }
            if rep.isthmus_free {
                isthmus_free += 1;
                let middle: Vec<u8> = rep
                    .clauses
                    .iter()
                    .filter(|c| (2..=5).contains(&c.clause) && !c.pass)
                    .map(|c| c.clause)
                    .collect();
                if rep.simple {
                    simple_free += 1;
                    if !middle.is_empty() {
                        simple_bad += 1;
                    }
                }
                if !middle.is_empty() {
                    free_bad.push((m, middle));
                }
            }
        }
    }
    let t = start.elapsed();
    let mut o = Outcome::new(
        general_bad == 0 && free_bad.is_empty() && t < Duration::from_secs(120),
        format!(
            "{total} matroids, {isthmus_free} isthmus-free, {} fail clauses 2-5, \
             {general_bad} fail clause 1/6 or k=n, {:?}",
            free_bad.len(),
            t
        ),
    );
    if let Some((m, clauses)) = free_bad.first() {
        o = o.with_info(format!(
            "first failure: {} (T = {}) fails clauses {:?}",
            m.table_ref(),
            tutte_expansion(m),
            clauses
        ));
        let with_loops = free_bad
            .iter()
            .filter(|(m, _)| !m.loops().is_empty())
            .count();
        o = o.with_info(format!(
            "{with_loops} of the failures have loops, the rest have parallel elements"
        ));
    }
    o.with_info(format!(
        "simple isthmus-free matroids: {simple_free}, failing clauses 2-5: {simple_bad}"
    ))
}

fn antimatroid_suite() -> Outcome {
    let start = Instant::now();
    let mut instances: Vec<Family> = Vec::new();
    for seed in 0..60u64 {
        instances.push(Family::Tree(random_tree(1 + seed as usize % 9, seed)));
        instances.push(Family::Poset(random_poset(1 + seed as usize % 7, seed)));
        instances.push(Family::Chordal(random_chordal(1 + seed as usize % 8, seed)));
        instances.push(Family::Points(random_points(
            1 + seed as usize % 8,
            1 + seed as usize % 3,
            seed,
        )));
    }
    let mut bad = Vec::new();
    for (k, fam) in instances.iter().enumerate() {
        let (g, cf) = fam.build().unwrap();
        let n = g.n();
        let t = tutte_expansion(&g);
        let at = a_table(&cf);
        let pred = fam.predict();
        let ids = family_identities(&at, n);
        let checks = [
            ("convex sum", tutte_via_convex(&cf) == t),
            ("b from a", b_from_a(&at, n) == t),
            ("identities", ids.pass),
            ("beta", n < 2 || beta_sum(&at) == pred.beta),
            (
                "unique interior",
                n < 2 || unique_interior_sum(&cf) == pred.unique_interior,
            ),
        ];
        for (what, ok) in checks {
            if !ok {
                bad.push(format!("{} #{k} (n={n}): {what}", fam.name()));
            }
        }
    }
    let t = start.elapsed();
    let mut o = Outcome::new(
        bad.is_empty() && t < Duration::from_secs(180),
        format!(
            "{} instances over 4 families, {} failures, {:?}",
            instances.len(),
            bad.len(),
            t
        ),
    );
    for b in bad.into_iter().take(5) {
        o = o.with_info(b);
    }
    o
}

fn caterpillar() -> Outcome {
    let tree = fixtures::caterpillar();
    let (g, cf) = tree_pruning(&tree).unwrap();
    let at = a_table(&cf);
    let f: Vec<u64> = at.f.iter().copied().take_while(|&x| x > 0).collect();
    let m = tree_interior_edges(&tree);
    let u = unique_interior_sum(&cf);
    let poly_ok = tutte_expansion(&g) == poly(fixtures::CATERPILLAR);
    Outcome::new(
        g.n() == 9
            && f == [1, 9, 11, 3]
            && m == 4
            && u == -4
            && b01(&tutte_expansion(&g)) == -4
            && poly_ok,
        format!("f = {f:?}, interior edges {m}, unique-interior sum {u}"),
    )
}

fn square_center() -> Outcome {
    let pc = fixtures::square_with_center();
    let (g, cf) = point_set(&pc).unwrap();
    let t = tutte_expansion(&g);
    let center = pc.ground().index_of("o").unwrap();
    let via_sets: i64 = (0..cf.n())
        .flat_map(|p| unique_interior_sets(&cf, p))
        .map(|c| if size(c) % 2 == 0 { 1 } else { -1 })
        .sum();
    let int = size(relative_interior_points(&pc)) as i64;

    let mut geo = geometric_convex_sets(&pc);
    geo.sort_unstable();
    let mut ours = cf.sets().to_vec();
    ours.sort_unstable();
    let oracle: i64 = geo
        .iter()
        .filter(|&&c| size(c & !pc.geometric_extreme(c)) == 1)
        .map(|&c| if size(c) % 2 == 0 { 1 } else { -1 })
        .sum();
    let center_sets = unique_interior_sets(&cf, center).len();
    Outcome::new(
        b01(&t) == 1 && via_sets == 1 && int == 1 && oracle == 1 && geo == ours,
        format!(
            "b01 = {}, unique-interior sum {via_sets}, oracle sum {oracle}, |int| = {int}, \
             {center_sets} sets with interior {{o}}, {} convex sets agree",
            b01(&t),
            geo.len()
        ),
    )
}

fn searches() -> Outcome {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let ground = GroundSet::letters(5);
    let bases: Vec<_> = ["ac", "bd", "ce", "de"]
        .iter()
        .map(|b| ground.mask_of(b.chars().map(|c| c.to_string())).unwrap())
        .collect();
    let basis = is_greedoid_basis_family(&ground, &bases, &budget).unwrap();
    let basis_ok = !basis.realizable && !basis.refutation.is_empty();
    let none = find_matroids_with_tutte(&poly(fixtures::POSITIVE_GREEDOID), 4, &budget).unwrap();
    let some = find_matroids_with_tutte(&poly(fixtures::SHARED_TUTTE), 6, &budget).unwrap();
    let minors = elements_with_matroid_minors(&fixtures::shared_tutte_greedoid());
    let t = start.elapsed();
    Outcome::new(
        basis_ok
            && none.is_empty()
            && !some.is_empty()
            && minors.is_empty()
            && t < Duration::from_secs(600),
        format!(
            "basis family refuted: {basis_ok} ({} nodes); positive polynomial matroids: {}; \
             shared polynomial matroids: {}; elements with matroid minors: {}; {:?}",
            basis.nodes,
            none.len(),
            some.len(),
            minors.len(),
            t
        ),
    )
}

fn low_order_table() -> Outcome {
    let rows = [
        ("T(G)", fixtures::RANK3_GRAPH, true),
        ("T(G')", fixtures::RANK3_ROOTED, false),
        ("T(G'')", fixtures::RANK3_ROOTED_CYCLE, false),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, text, simplified_holds) in rows {
        let p = poly(text);
        let totals: Vec<String> = low_order_identities(&p)
            .iter()
            .map(|r| r.total.to_string())
            .collect();
        let (lhs, rhs) = simplified_matroid_i2(&p, 5, 3);
        ok &= totals.iter().all(|t| t == "0") && (lhs == rhs) == simplified_holds;
        parts.push(format!(
            "{name}: I_0..I_3 = {}, b10+b11 = {lhs}",
            totals.join(",")
        ));
    }
    Outcome::new(ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("exact polynomial fixtures", exact_fixtures),
        ("affine relations on random ranked sets", theorem_property),
        ("expansion equals recursion", engine_equivalence),
        ("duality and minor algebra", minor_algebra),
        ("lemma suite", lemma_suite),
        ("matroid basis clauses", brylawski_suite),
        ("antimatroid families", antimatroid_suite),
        ("caterpillar", caterpillar),
        ("square with centre", square_center),
        ("counterexample searches", searches),
        ("low-order table", low_order_table),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failures += 1;
        }
        println!(
            "{verdict} {:>2} {name}: {} [{:.2?}]",
            k + 1,
            o.detail,
            start.elapsed()
        );
        for line in o.info {
            println!("        {line}");
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
