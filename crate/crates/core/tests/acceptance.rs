//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use raag_core::{
    algebras_isomorphic, are_isomorphic, catalog, count_homs, cyclic, distinguish,
    isomorphism_classes, raag_algebra, raag_presentation, racg_algebra, racg_presentation,
    reconstruct, remark_extension_presentation, DistinguishOptions, FiniteGroup, Graph, GroupMode,
    Presentation, ReconstructOptions, RelationTerm, SeparationMethod, SplitMix64, Verdict,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = run();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            out.passed = false;
            out.detail += &format!("; exceeded time limit {limit:?}");
        }
    }
    (out, elapsed)
}

fn classes_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(isomorphism_classes).collect()
}

fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// Every catalog group of order at most `bound`, over all primes that have one.
fn small_groups(bound: usize) -> Vec<FiniteGroup> {
    [2u64, 3, 5, 7, 11, 13]
        .iter()
        .flat_map(|&p| catalog(p, bound).unwrap())
        .collect()
}

/// Independent oracle: checks every tuple in `q^n` against the relations.
fn brute_force_count(pres: &Presentation, q: &FiniteGroup) -> BigUint {
    let n = pres.n_generators();
    let mut x = vec![0usize; n];
    let mut count = 0u64;
    for mut code in 0..q.order().pow(n as u32) {
        for slot in x.iter_mut() {
            *slot = code % q.order();
            code /= q.order();
        }
        let ok = pres.relations().iter().all(|r| match *r {
            RelationTerm::Commutator(i, j) => q.mul(x[i], x[j]) == q.mul(x[j], x[i]),
            RelationTerm::Power(i, k) => {
                (0..k).fold(q.identity(), |acc, _| q.mul(acc, x[i])) == q.identity()
            }
            RelationTerm::CentralSquare(i) => {
                let s = q.mul(x[i], x[i]);
                x.iter().all(|&y| q.mul(s, y) == q.mul(y, s))
            }
        });
        count += ok as u64;
    }
    BigUint::from(count)
}

fn raag_round_trip() -> Outcome {
    let classes = classes_up_to(6);
    let six = classes.iter().filter(|g| g.vertex_count() == 6).count();
    let mut failures = Vec::new();
    let mut runs = 0;
    for g in &classes {
        for p in [2u64, 3] {
            let alg = raag_algebra(g, p).unwrap();
            for seed in [1u64, 2, 3] {
                runs += 1;
                let (scrambled, _) = alg.random_scramble(seed);
                match reconstruct(&scrambled, ReconstructOptions::default()) {
                    Ok(r) if are_isomorphic(&r.graph, g).is_some() => {}
                    other => failures.push(format!("{g:?} p={p} seed={seed}: {other:?}")),
                }
            }
        }
    }
    Outcome {
        passed: failures.is_empty() && six == 156,
        detail: format!(
            "{} classes ({six} on 6 vertices), {runs} reconstructions, {} failures{}",
            classes.len(),
            failures.len(),
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    }
}

fn raag_separation() -> Outcome {
    let classes = classes_up_to(5);
    let five = classes.iter().filter(|g| g.vertex_count() == 5).count();
    let mut merges = Vec::new();
    let mut pairs = 0;
    let mut pairs5 = 0;
    let opts = ReconstructOptions::default();
    for (i, g) in classes.iter().enumerate() {
        let a = raag_algebra(g, 2).unwrap();
        for (j, h) in classes.iter().enumerate().skip(i + 1) {
            pairs += 1;
            if g.vertex_count() == 5 && h.vertex_count() == 5 {
                pairs5 += 1;
            }
            let (b, _) = raag_algebra(h, 2)
                .unwrap()
                .random_scramble((i * 1000 + j) as u64);
            match algebras_isomorphic(&a, &b, opts) {
                Ok(None) => {}
                other => merges.push(format!("{g:?} vs {h:?}: {other:?}")),
            }
        }
    }
    Outcome {
        passed: merges.is_empty() && five == 34 && pairs5 == 561,
        detail: format!(
            "{pairs} pairs ({pairs5} among the {five} five-vertex classes), {} false merges",
            merges.len()
        ),
    }
}

fn racg_round_trip() -> Outcome {
    let classes = classes_up_to(5);
    let mut failures = Vec::new();
    let mut runs = 0;
    for g in &classes {
        let alg = racg_algebra(g);
        for seed in [1u64, 2, 3] {
            runs += 1;
            let (scrambled, _) = alg.random_scramble(seed);
            let sigma = scrambled.sigma_subspace().unwrap().dim();
            if sigma != g.vertex_count() {
                failures.push(format!("{g:?} seed={seed}: dim Σ = {sigma}"));
                continue;
            }
            let ok = scrambled
                .reduce_racg()
                .and_then(|r| reconstruct(&r, ReconstructOptions::default()))
                .map(|r| are_isomorphic(&r.graph, g).is_some());
            if ok != Ok(true) {
                failures.push(format!("{g:?} seed={seed}: {ok:?}"));
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "{} classes, {runs} runs, {} failures",
            classes.len(),
            failures.len()
        ),
    }
}

fn rank_equals_degree() -> Outcome {
    let mut rng = SplitMix64::new(2024);
    let mut checks = 0;
    let mut failures = 0;
    for trial in 0..200 {
        let n = 1 + rng.below(8) as usize;
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|_| rng.below(2) == 1)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        for p in [2u64, 3, 5] {
            let alg = raag_algebra(&g, p).unwrap();
            let (scrambled, change) = alg.random_scramble(trial);
            let back = change.h1().inverse().unwrap();
            for v in 0..n {
                let mut e = vec![0; n];
                e[v] = 1;
                let deg = g.degree(v).unwrap();
                // vertex dual in the original basis and in the scrambled one
                checks += 2;
                failures += (alg.cup_rank(&e).unwrap() != deg) as usize;
                failures += (scrambled.cup_rank(&back.column(v)).unwrap() != deg) as usize;
            }
        }
    }
    Outcome {
        passed: failures == 0,
        detail: format!("{checks} rank checks, {failures} mismatches"),
    }
}

fn hom_count_oracle() -> Outcome {
    let groups = small_groups(16);
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for n in 0..=3 {
        for g in labeled_graphs(n) {
            let mut pres = vec![raag_presentation(&g), racg_presentation(&g)];
            pres.extend((0..n).map(|w| remark_extension_presentation(&g, w).unwrap()));
            for pr in &pres {
                for q in &groups {
                    checks += 1;
                    let (fast, slow) = (count_homs(pr, q), brute_force_count(pr, q));
                    if fast != slow {
                        mismatches.push(format!("{pr} into {}: {fast} vs {slow}", q.name()));
                    }
                }
            }
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: format!(
            "{checks} counts against {} groups, {} mismatches",
            groups.len(),
            mismatches.len()
        ),
    }
}

fn free_product_multiplicativity() -> Outcome {
    let groups = small_groups(16);
    let mut checks = 0;
    let mut failures = 0;
    let mut graphs = 0;
    for n in 2..=5 {
        for g in labeled_graphs(n).into_iter().filter(|g| !g.is_connected()) {
            graphs += 1;
            let comps = g.components();
            for mode in [GroupMode::Raag, GroupMode::Racg] {
                let whole = mode.presentation(&g);
                for q in &groups {
                    checks += 1;
                    let product = comps
                        .iter()
                        .map(|c| count_homs(&mode.presentation(&c.graph), q))
                        .fold(BigUint::from(1u32), |acc, x| acc * x);
                    failures += (count_homs(&whole, q) != product) as usize;
                }
            }
        }
    }
    Outcome {
        passed: failures == 0 && graphs > 0,
        detail: format!(
            "{graphs} disconnected labeled graphs, {checks} comparisons, {failures} failures"
        ),
    }
}

fn remark_witness() -> Outcome {
    let z4 = cyclic(4).unwrap();
    let order4: Vec<usize> = (0..4).filter(|&x| z4.element_order(x) == 4).collect();
    let mut instances = 0;
    let mut failures = 0;
    for n in 1..=4 {
        for g in labeled_graphs(n) {
            for w in 0..n {
                instances += 1;
                let pres = remark_extension_presentation(&g, w).unwrap();
                let witnesses = order4
                    .iter()
                    .filter(|&&x| {
                        let mut images = vec![z4.identity(); n];
                        images[w] = x;
                        pres.is_satisfied(&z4, &images)
                    })
                    .count();
                let total = count_homs(&pres, &z4);
                if witnesses < 2 || total < BigUint::from(witnesses) {
                    failures += 1;
                }
            }
        }
    }
    Outcome {
        passed: failures == 0,
        detail: format!("{instances} (graph, w) instances, {failures} without an order-4 witness"),
    }
}

fn distinguish_endpoint() -> Outcome {
    let classes = classes_up_to(4);
    let mut pairs = 0;
    let mut by_count = 0;
    let mut by_cohomology = 0;
    let mut failures = Vec::new();
    for mode in [GroupMode::Raag, GroupMode::Racg] {
        let opts = DistinguishOptions {
            mode,
            p: 2,
            order_bound: 16,
            reconstruct: ReconstructOptions::default(),
        };
        for (i, g) in classes.iter().enumerate() {
            for h in &classes[i + 1..] {
                pairs += 1;
                match distinguish(g, h, opts) {
                    Ok(c) if c.verdict == Verdict::Distinct => match c.method {
                        SeparationMethod::HomCount { .. } => by_count += 1,
                        SeparationMethod::Cohomology { .. } => by_cohomology += 1,
                        SeparationMethod::Absent => {
                            failures.push(format!("{g:?} vs {h:?}: no method"))
                        }
                    },
                    other => failures.push(format!("{mode:?} {g:?} vs {h:?}: {other:?}")),
                }
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "{pairs} non-isomorphic pairs (raag and racg), {by_count} by hom count, {by_cohomology} by cohomology, {} not separated",
            failures.len()
        ),
    }
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 RAAG round-trip",
            Some(Duration::from_secs(300)),
            raag_round_trip,
        ),
        (
            "2 RAAG separation",
            Some(Duration::from_secs(120)),
            raag_separation,
        ),
        (
            "3 RACG round-trip",
            Some(Duration::from_secs(120)),
            racg_round_trip,
        ),
        ("4 rank = degree", None, rank_equals_degree),
        (
            "5 hom-count oracle",
            Some(Duration::from_secs(60)),
            hom_count_oracle,
        ),
        (
            "6 free-product multiplicativity",
            None,
            free_product_multiplicativity,
        ),
        ("7 remark witness", None, remark_witness),
        ("8 distinguish endpoint", None, distinguish_endpoint),
    ];
    let mut all = true;
    for (name, limit, run) in criteria {
        let (out, elapsed) = check(limit, run);
        all &= out.passed;
        println!(
            "[{}] criterion {name}: {} ({:.2}s)",
            if out.passed { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
