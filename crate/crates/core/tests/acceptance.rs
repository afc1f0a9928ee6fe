//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangle_core::marking::markings_for;
use tangle_core::matching::{max_vertex_weight_matching, MatchGraph};
use tangle_core::oracle::{balanced_marking_bruteforce, min_corners, random_simple_tangle};
use tangle_core::{
    build_direct, build_perfect, family_example, is_balanced, read_tangle, recognize, write_tangle,
    BalanceMode, Marking, Permutation, Tangle,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(v).unwrap()
}

fn moving(p: &Permutation) -> usize {
    p.classify()
        .values()
        .iter()
        .filter(|c| c.is_left() || c.is_right())
        .count()
}

fn direct_census() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=7 {
        let mut ok = 0;
        for p in Permutation::all(n) {
            let avoids = p.find_321().is_none();
            match build_direct(&p) {
                Ok(t) => {
                    check(avoids, || format!("{p} contains 321 but was built"))?;
                    check(
                        t.solves(&p) && t.is_direct() && t.is_simple().unwrap(),
                        || format!("direct output for {p} fails a predicate"),
                    )?;
                    check(t.corner_count().total == 2 * moving(&p), || {
                        format!("{p}: corners")
                    })?;
                    ok += 1;
                }
                Err(_) => check(!avoids, || format!("{p} avoids 321 but was rejected"))?,
            }
        }
        counts.push(ok);
    }
    check(counts == [1, 2, 5, 14, 42, 132, 429], || {
        format!("counts {counts:?}")
    })?;
    Ok(format!("counts {counts:?}"))
}

fn perfect_census() -> Outcome {
    let s6 = Permutation::all(6)
        .filter(|p| recognize(p).unwrap().is_perfect())
        .count();
    let bad7: Vec<Permutation> = Permutation::all(7)
        .filter(|p| !recognize(p).unwrap().is_perfect())
        .collect();
    check(s6 == 720 && bad7.len() == 16, || {
        format!("S6 perfect {s6}/720, S7 non-perfect {}", bad7.len())
    })?;
    Ok(format!(
        "S6 720/720 perfect, S7 {}/5040 perfect",
        5040 - bad7.len()
    ))
}

fn agree_with_oracle(p: &Permutation) -> Result<(), String> {
    let verdict = recognize(p).map_err(|e| format!("{p}: {e}"))?;
    let oracle = balanced_marking_bruteforce(p).map_err(|e| format!("{p}: {e}"))?;
    check(verdict.is_perfect() == oracle.is_some(), || {
        format!(
            "{p}: recognizer {} but oracle {}",
            verdict.is_perfect(),
            oracle.is_some()
        )
    })?;
    if let Some(m) = verdict.marking() {
        check(is_balanced(p, m, BalanceMode::Full).unwrap(), || {
            format!("{p}: unbalanced marking")
        })?;
    }
    Ok(())
}

fn recognizer_vs_oracle() -> Outcome {
    for p in Permutation::all(7) {
        agree_with_oracle(&p)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut perfect = 0;
    for _ in 0..500 {
        let n = rng.gen_range(8..=10);
        let p = random_permutation(&mut rng, n);
        agree_with_oracle(&p)?;
        perfect += usize::from(recognize(&p).unwrap().is_perfect());
    }
    Ok(format!(
        "S7 and 500 random (n 8..10, {perfect} perfect) agree"
    ))
}

fn builder_soundness() -> Outcome {
    let mut built = 0;
    for p in Permutation::all(7) {
        let Some(m) = recognize(&p).unwrap().marking().cloned() else {
            continue;
        };
        let t = build_perfect(&p).map_err(|e| format!("{p}: {e}"))?;
        let aligned = tangle_core::align(&p, &m).unwrap();
        check(t.marking == aligned, || {
            format!("{p}: builder used another marking")
        })?;
        check(
            t.tangle.solves(&p) && t.tangle.is_perfect().unwrap(),
            || format!("{p}: not perfect"),
        )?;
        let drawn = Marking::from_tangle_marking(&t.tangle.marking_of());
        check(drawn.as_ref() == Some(&aligned), || {
            format!("{p}: drawn marking differs")
        })?;
        let corners = t.tangle.corner_count();
        for (e, mark) in aligned.iter() {
            check(corners.per_path[e] == 2 * mark.len(), || {
                format!("{p}: path {e} corners")
            })?;
        }
        built += 1;
    }
    check(built == 5024, || format!("built {built}"))?;
    Ok(format!("{built} perfect tangles verified"))
}

fn corner_minimality() -> Outcome {
    let (mut perfect, mut direct) = (0, 0);
    for p in Permutation::all(5) {
        let free = min_corners(&p, false).unwrap();
        if recognize(&p).unwrap().is_perfect() {
            let built = build_perfect(&p).unwrap().tangle.corner_count().total;
            let simple = min_corners(&p, true).unwrap();
            check(built == free && free == simple, || {
                format!("{p}: built {built}, min {free}, simple min {simple}")
            })?;
            perfect += 1;
        }
        if p.find_321().is_none() {
            let built = build_direct(&p).unwrap().corner_count().total;
            check(built == free, || format!("{p}: direct {built}, min {free}"))?;
            direct += 1;
        }
    }
    Ok(format!(
        "{perfect} perfect and {direct} direct permutations of S5 minimal"
    ))
}

fn balance_modes() -> Outcome {
    let mut markings = 0;
    for p in Permutation::all(6) {
        for m in markings_for(&p) {
            let full = is_balanced(&p, &m, BalanceMode::Full).unwrap();
            let s = is_balanced(&p, &m, BalanceMode::Straight).unwrap();
            let ms = is_balanced(&p, &m, BalanceMode::MinimalStraight).unwrap();
            check(full == s && s == ms, || {
                format!("{p} {}: {full} {s} {ms}", m.to_text())
            })?;
            markings += 1;
        }
    }
    Ok(format!("{markings} markings agree in all three modes"))
}

fn named_instances() -> Outcome {
    let obstruction = Permutation::new(vec![7, 3, 2, 4, 6, 5, 1]).unwrap();
    check(!recognize(&obstruction).unwrap().is_perfect(), || {
        "[7,3,2,4,6,5,1] perfect".into()
    })?;
    check(
        balanced_marking_bruteforce(&obstruction).unwrap().is_none(),
        || "oracle marks [7,3,2,4,6,5,1]".into(),
    )?;

    let fig = Permutation::new(vec![3, 6, 1, 4, 7, 2, 5]).unwrap();
    let classes = fig.classify();
    let switchbacks: Vec<usize> = (1..=7)
        .filter(|&e| classes[e].is_left() && classes[e].is_right())
        .collect();
    check(fig.inversion_number() == 9, || "inv != 9".into())?;
    check(switchbacks == [4], || {
        format!("switchbacks {switchbacks:?}")
    })?;
    check(!recognize(&fig).unwrap().is_perfect(), || {
        "[3,6,1,4,7,2,5] perfect".into()
    })?;
    check(balanced_marking_bruteforce(&fig).unwrap().is_none(), || {
        "oracle marks fig".into()
    })?;

    let family = family_example(4).unwrap();
    check(family.find_321().is_some(), || "family avoids 321".into())?;
    check(!recognize(&family).unwrap().is_perfect(), || {
        "family perfect".into()
    })?;
    check(
        balanced_marking_bruteforce(&family).unwrap().is_none(),
        || "oracle marks family".into(),
    )?;
    Ok("three instances not perfect; n=16 corner values 56/60 out of desk scale".into())
}

fn crossing_pairs(t: &Tangle) -> BTreeSet<(usize, usize)> {
    let seq = t.permutation_sequence();
    let mut pairs = BTreeSet::new();
    for (row, before) in t.rows.iter().zip(&seq) {
        for &s in row {
            // The left element moves right, the right one moves left.
            pairs.insert((before.at(s), before.at(s + 1)));
        }
    }
    pairs
}

fn brute_force_matching(g: &MatchGraph) -> usize {
    let edges = g.edges();
    let mut best = 0;
    for mask in 0u64..1 << edges.len() {
        let mut used = BTreeSet::new();
        let mut w = 0;
        let mut ok = true;
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                ok &= used.insert(e.left) && used.insert(e.right);
                w += (g.weight(e.left) + g.weight(e.right)) as usize;
            }
        }
        if ok {
            best = best.max(w);
        }
    }
    best
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..1000 {
        let n = rng.gen_range(1..=8);
        let p = random_permutation(&mut rng, n);
        let t = random_simple_tangle(&p, k);
        check(t.is_simple().unwrap(), || {
            format!("{p}: generated tangle not simple")
        })?;
        let inversions: BTreeSet<(usize, usize)> = p.inversions().into_iter().collect();
        check(crossing_pairs(&t) == inversions, || {
            format!("{p}: crossings differ from inversions")
        })?;
    }

    let mut avoiders = 0;
    while avoiders < 500 {
        let n = rng.gen_range(1..=8);
        let p = random_permutation(&mut rng, n);
        if p.find_321().is_some() {
            continue;
        }
        avoiders += 1;
        let t = random_simple_tangle(&p, rng.gen());
        for (_, m) in t.marking_of().iter() {
            check(!(m.contains('L') && m.contains('R')), || {
                format!("{p}: path marked {m}")
            })?;
        }
    }

    for _ in 0..200 {
        let n = rng.gen_range(0..=10);
        let mut g = MatchGraph::new();
        for v in 1..=n {
            g.add_vertex(v, rng.gen_range(0..=1));
        }
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v, None);
                }
            }
        }
        let m = max_vertex_weight_matching(&g);
        let mut used = BTreeSet::new();
        for e in &m.edges {
            check(used.insert(e.left) && used.insert(e.right), || {
                "matching not disjoint".into()
            })?;
        }
        let best = brute_force_matching(&g);
        check(m.weight == best, || {
            format!("matching weight {} vs {best}", m.weight)
        })?;
    }

    let mut round_trips = 0;
    for n in 1..=7 {
        for p in Permutation::all(n) {
            let mut outputs = Vec::new();
            if let Ok(t) = build_direct(&p) {
                outputs.push(t);
            }
            if let Ok(t) = build_perfect(&p) {
                outputs.push(t.tangle);
            }
            for t in outputs {
                let back = read_tangle(&write_tangle(&t).unwrap()).unwrap();
                check(back == t, || {
                    format!("{p}: JSON round trip changed the tangle")
                })?;
                round_trips += 1;
            }
        }
    }
    Ok(format!(
        "1000 crossing checks, 500 avoider markings, 200 matchings, {round_trips} round trips"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("direct census over S1..S7", direct_census),
        ("perfect census of S6 and S7", perfect_census),
        (
            "recognizer agrees with exhaustive markings",
            recognizer_vs_oracle,
        ),
        ("perfect builder soundness on S7", builder_soundness),
        ("corner minimality on S5", corner_minimality),
        ("balance modes agree on S6", balance_modes),
        ("named instances", named_instances),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
