//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use hyperburn::bounds::theorem_suite;
use hyperburn::designs::{brute_force_automorphism_order, shipped_design, table1_row};
use hyperburn::distribution::{
    breakpoints, compute_distribution, condensed_text, k_uniform_expected_intervals, probe_points, Bound, Kind,
    RationalInterval, Value,
};
use hyperburn::generators::{gen_figure, gen_nested_chain, gen_single_edge, gen_tight_path, FIGURES};
use hyperburn::probes::{gap_profile, GapPoint};
use hyperburn::random::{random_hypergraph, RandomParams};
use hyperburn::solvers::oracle::{brute_force_burn, brute_force_lazy};
use hyperburn::solvers::{burning_number, lazy_burning_number, SearchConfig};
use hyperburn::{parse_hypergraph, serialize_hypergraph, Hypergraph, Proportion};

type Verdict = Result<String, String>;

fn p(n: u64, d: u64) -> Proportion {
    Proportion::new(n, d).unwrap()
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn exact_lazy(h: &Hypergraph, q: Proportion, cfg: &SearchConfig) -> Option<usize> {
    lazy_burning_number(h, q, cfg).ok()?.value()
}

fn exact_burn(h: &Hypergraph, q: Proportion, cfg: &SearchConfig) -> Option<usize> {
    burning_number(h, q, cfg).ok()?.value()
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    if e <= limit {
        Ok(e)
    } else {
        Err(format!("took {e:.1?}, limit {limit:?}"))
    }
}

fn table1() -> Verdict {
    let rows: [(&str, &str, Option<&str>); 5] = [
        ("fano", "1, 3, 7", Some("2, 4, 7")),
        ("fano-x2", "1, 3, 7", None),
        ("fano-x3", "1, 3, 7", None),
        ("ag23", "1, 3, 9", Some("2, 5, 9")),
        ("ag23-x2", "1, 3, 9", Some("2, 5, 9")),
    ];
    let t = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut bad = Vec::new();
    for (name, lazy, burn) in rows {
        let d = shipped_design(name).ok_or(format!("{name} not shipped"))?;
        let row = pool.install(|| table1_row(&d, &cfg(), burn.is_some())).map_err(|e| e.to_string())?;
        let got = condensed_text(&row.lazy);
        if got != lazy {
            bad.push(format!("{name} lazy {got}"));
        }
        if let (Some(want), Some(b)) = (burn, &row.burning) {
            let got = condensed_text(b);
            if got != want {
                bad.push(format!("{name} burning {got}"));
            }
        }
    }
    let e = within(t, Duration::from_secs(300))?;
    if bad.is_empty() {
        Ok(format!("5 rows exact, {e:.2?} on one thread"))
    } else {
        Err(bad.join("; "))
    }
}

fn table2() -> Verdict {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (name, want) in [("fano-x2", 21504u128), ("fano-x3", 47029248), ("ag23-x2", 1769472)] {
        let d = shipped_design(name).ok_or(format!("{name} not shipped"))?;
        let got = brute_force_automorphism_order(&d.hypergraph).map_err(|e| e.to_string())?.order;
        if got != want {
            bad.push(format!("{name} {got} != {want}"));
        }
    }
    let e = within(t, Duration::from_secs(120))?;
    if bad.is_empty() {
        Ok(format!("3 orders exact by brute force, {e:.2?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn figures() -> Verdict {
    let c = cfg();
    let fig5 = gen_figure("fig5").unwrap();
    let fig2 = gen_figure("fig2").unwrap();
    let fig4 = gen_figure("fig4").unwrap();
    let mut bad = Vec::new();
    let mut expect = |what: &str, got: Option<usize>, want: usize| {
        if got != Some(want) {
            bad.push(format!("{what} = {got:?}, want {want}"));
        }
    };
    expect("fig5 lazy 1/2", exact_lazy(&fig5, p(1, 2), &c), 5);
    expect("fig5 lazy 1/4", exact_lazy(&fig5, p(1, 4), &c), 3);
    expect("fig2 lazy 5/6", exact_lazy(&fig2, p(5, 6), &c), 8);
    expect("fig2 burn 5/6", exact_burn(&fig2, p(5, 6), &c), 8);
    for q in [p(3, 10), p(2, 5)] {
        expect(&format!("fig4 lazy {q}"), exact_lazy(&fig4, q, &c), 2);
        expect(&format!("fig4 burn {q}"), exact_burn(&fig4, q, &c), 4);
    }
    if bad.is_empty() {
        Ok("8 values exact".into())
    } else {
        Err(bad.join("; "))
    }
}

fn interval(k: usize, lo: usize, hi: usize) -> RationalInterval {
    let at = |j: usize| {
        if j == 0 {
            Bound::Zero
        } else if j >= k {
            Bound::One
        } else {
            Bound::At(p(j as u64, k as u64))
        }
    };
    RationalInterval::new(at(lo), at(hi))
}

fn single_edges() -> Verdict {
    let mut bad = Vec::new();
    for k in 2..=8 {
        let h = gen_single_edge(k).unwrap();
        // Q_j = ((j-1)/k, j/k], Q_k = ((k-1)/k, 1)
        let lazy: Vec<_> = (1..=k).map(|j| (interval(k, j - 1, j), Value::Exact(j))).collect();
        // P_2 = (0, 1/k], P_i = ((i-2)/k, (i-1)/k], P_k = ((k-2)/k, 1)
        let burn: Vec<_> = (2..=k)
            .map(|i| {
                let hi = if i == k { k } else { i - 1 };
                (interval(k, i - 2, hi), Value::Exact(i))
            })
            .collect();
        let dl = compute_distribution(&h, Kind::Lazy, &cfg()).unwrap();
        let db = compute_distribution(&h, Kind::Burning, &cfg()).unwrap();
        if dl.intervals != lazy {
            bad.push(format!("k={k} lazy {dl}"));
        }
        if db.intervals != burn {
            bad.push(format!("k={k} burning {db}"));
        }
    }
    if bad.is_empty() {
        Ok("k = 2..=8 endpoints exact".into())
    } else {
        Err(bad.join("; "))
    }
}

fn nested() -> Verdict {
    let mut bad = Vec::new();
    for n in 2..=8 {
        let d = compute_distribution(&gen_nested_chain(n).unwrap(), Kind::Lazy, &cfg()).unwrap();
        // Q_1 = (0, 1/2], Q_k = ((k-1)/k, k/(k+1)], Q_n = ((n-1)/n, 1)
        let want: Vec<_> = (1..=n)
            .map(|k| {
                let lo = if k == 1 { Bound::Zero } else { Bound::At(p(k as u64 - 1, k as u64)) };
                let hi = if k == n { Bound::One } else { Bound::At(p(k as u64, k as u64 + 1)) };
                (RationalInterval::new(lo, hi), Value::Exact(k))
            })
            .collect();
        if d.intervals != want {
            bad.push(format!("n={n}: {d}"));
        }
    }
    if bad.is_empty() {
        Ok("n = 2..=8 exact".into())
    } else {
        Err(bad.join("; "))
    }
}

/// Trial `i`: n = 2 + i mod 9, m = 1 + (i / 9) mod 8, sizes 2..=min(6, n),
/// parallel edges allowed, seed `i`.
fn random_corpus() -> Vec<Hypergraph> {
    (0..1000u64)
        .map(|i| {
            let n = 2 + (i % 9) as usize;
            let m = 1 + ((i / 9) % 8) as usize;
            random_hypergraph(&RandomParams::new(n, m, 2, n.min(6)), i).unwrap()
        })
        .collect()
}

fn oracle_points(h: &Hypergraph) -> Vec<Proportion> {
    let mut pts = breakpoints(h);
    pts.extend(probe_points(h).into_iter().map(|(_, q)| q));
    pts.sort();
    pts.dedup();
    pts
}

fn oracle(corpus: &[Hypergraph]) -> Verdict {
    let t = Instant::now();
    let c = cfg();
    let checks: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|h| {
            let mut n = 0;
            for q in oracle_points(h) {
                let (l, b) = (exact_lazy(h, q, &c), exact_burn(h, q, &c));
                let (ol, ob) = (brute_force_lazy(h, q), brute_force_burn(h, q));
                if l != Some(ol) || b != Some(ob) {
                    return Err(format!(
                        "p={q} solver ({l:?},{b:?}) oracle ({ol},{ob}) on\n{}",
                        serialize_hypergraph(h)
                    ));
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    let e = within(t, Duration::from_secs(600))?;
    let mut points = 0;
    for r in checks {
        points += r?;
    }
    Ok(format!("{} hypergraphs, {points} points, 0 mismatches, {e:.2?}", corpus.len()))
}

fn families() -> Vec<Hypergraph> {
    let mut v = Vec::new();
    for k in 2..=5 {
        for n in k..=k + 6 {
            v.push(gen_tight_path(k, n).unwrap());
        }
    }
    v.extend((2..=8).map(|n| gen_nested_chain(n).unwrap()));
    v.extend((2..=8).map(|k| gen_single_edge(k).unwrap()));
    v.extend(FIGURES.iter().map(|f| gen_figure(f).unwrap()));
    v.extend(["fano", "bibd632", "ag32-planes"].iter().map(|d| shipped_design(d).unwrap().hypergraph));
    v
}

fn theorems(corpus: &[Hypergraph]) -> Verdict {
    let all: Vec<Hypergraph> = corpus.iter().cloned().chain(families()).collect();
    let c = cfg();
    let reports: Vec<_> = all
        .par_iter()
        .map(|h| theorem_suite(h, &c).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let checked = reports.iter().filter(|r| !r.is_skipped()).count();
    match reports.iter().find(|r| r.is_violation()) {
        Some(r) => Err(format!(
            "{} violations, first {}",
            reports.iter().filter(|r| r.is_violation()).count(),
            r.to_json_line()
        )),
        None => Ok(format!("{} hypergraphs, {checked} checks, 0 violations", all.len())),
    }
}

fn k_uniform() -> Verdict {
    let c = cfg();
    let samples: Vec<(usize, Hypergraph)> = (0..200u64)
        .map(|i| {
            let k = 3 + (i % 3) as usize;
            let n = k + 1 + ((i / 3) % (10 - k as u64)) as usize;
            // at least enough edges to connect n vertices
            let m = (n - 1).div_ceil(k - 1) + 1 + ((i / 7) % 3) as usize;
            // odd trials may repeat edges; redraw until two distinct edges exist
            let params = RandomParams::new(n, m, k, k).dedup(i % 2 == 0).connected(true);
            let h = (0..)
                .map(|j| random_hypergraph(&params, i * 1000 + j).unwrap())
                .find(|h| h.distinct_edge_count() >= 2)
                .unwrap();
            (k, h)
        })
        .collect();
    let bad: Vec<String> = samples
        .par_iter()
        .flat_map_iter(|(k, h)| {
            let n = h.vertex_count();
            let want = k_uniform_expected_intervals(*k);
            [Kind::Lazy, Kind::Burning].into_iter().filter_map(move |kind| {
                let d = compute_distribution(h, kind, &c).unwrap();
                let cuts: Vec<RationalInterval> = d.intervals.iter().map(|(iv, _)| *iv).collect();
                let values: Vec<Option<usize>> = d.intervals.iter().map(|(_, v)| v.exact()).collect();
                let realized: std::collections::BTreeSet<_> = values.iter().flatten().collect();
                let ok = cuts == want
                    && values.iter().all(Option::is_some)
                    && values.last() == Some(&Some(n))
                    && (!h.is_simple() || n - realized.len() == n - k);
                (!ok).then(|| format!("{kind} k={k} {d} on\n{}", serialize_hypergraph(h)))
            })
        })
        .collect();
    let simple = samples.iter().filter(|(_, h)| h.is_simple()).count();
    match bad.first() {
        None => Ok(format!("200 samples ({simple} simple), 0 violations")),
        Some(first) => Err(format!("{} violations, first {first}", bad.len())),
    }
}

fn gap_13_4_1() -> Verdict {
    // blocks {0,1,3,9} + i mod 13, read back through the text loader
    let mut text = String::from("13 13\n");
    for i in 0..13 {
        let b: Vec<String> = [0, 1, 3, 9].iter().map(|d| ((d + i) % 13).to_string()).collect();
        text += &(b.join(" ") + "\n");
    }
    let h = parse_hypergraph(&text).map_err(|e| e.to_string())?;
    hyperburn::designs::validate_bibd(&h, 13, 4, 1).map_err(|e| e.to_string())?;
    let profile = gap_profile(&h, &cfg()).map_err(|e| e.to_string())?;
    let gaps: Vec<Option<usize>> = profile.iter().map(GapPoint::gap).collect();
    if gaps == [Some(1), Some(1), Some(2), Some(0)] {
        Ok("gaps (1,1,2,0) on the quarter intervals".into())
    } else {
        Err(format!("gaps {gaps:?}"))
    }
}

fn tight_paths() -> Verdict {
    let c = SearchConfig::default().with_budget(10_000_000);
    let mut lazies = Vec::new();
    let mut burns = Vec::new();
    for n in [4, 8, 12, 16] {
        let h = gen_tight_path(4, n).unwrap();
        lazies.push(exact_lazy(&h, p(1, 2), &c));
        burns.push(exact_burn(&h, p(1, 2), &c));
    }
    let burns: Option<Vec<usize>> = burns.into_iter().collect();
    let ok = lazies.iter().all(|&l| l == Some(2))
        && burns
            .as_ref()
            .is_some_and(|b| b.windows(2).all(|w| w[0] <= w[1]) && b[3] >= 4);
    let show = |v: &[Option<usize>]| v.iter().map(|x| x.map_or("?".into(), |x| x.to_string())).collect::<Vec<_>>().join(",");
    let text = format!(
        "n = 4,8,12,16: lazy {} burn {}",
        show(&lazies),
        burns.as_ref().map_or("unknown".into(), |b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    );
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() {
    let corpus = random_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("1 table-1 rows", Box::new(table1)),
        ("2 table-2 orders", Box::new(table2)),
        ("3 figure fixtures", Box::new(figures)),
        ("4 single-edge distributions", Box::new(single_edges)),
        ("5 nested chains", Box::new(nested)),
        ("6 oracle equivalence", Box::new(|| oracle(&corpus))),
        ("7 bound suite", Box::new(|| theorems(&corpus))),
        ("8 k-uniform structure", Box::new(k_uniform)),
        ("9 gap on (13,4,1)", Box::new(gap_13_4_1)),
        ("10 unbounded gap", Box::new(tight_paths)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
