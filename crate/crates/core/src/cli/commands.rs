use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::{FamilyKind, Mode, RunConfig};
use super::{Failure, Staged};
use crate::analysis::{
    alpha_grid, attack_experiment, default_fit_range, degeneracy_resolution, ensemble_map, ipr,
    ipr_scaling, mean_sorted_curve, power_law_fit, stability_grid, stability_sweep, summarize,
    Algorithm, AlphaGrid, IprSample, Phase, PowerLawFit, RankList, Ranker,
};
use crate::error::{Error, Result};
use crate::google::{classical_pagerank, residual, GoogleMatrix, PowerIteration};
use crate::graph::{read_graph_file, write_edge_list, write_pajek, DirectedGraph};
use crate::report::{
    fmt_f64, gnuplot_data, gnuplot_grid, gnuplot_indexed, to_json, write_file, FileStem, Table,
};
use crate::walk::SzegedyWalk;

/// Resolution of the degeneracy count reported by `rank`.
const DEGENERACY_RESOLUTION: f64 = 1e-9;

/// Collects the files a command writes into its output directory.
pub struct Output {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(dir: PathBuf) -> Self {
        Output {
            dir,
            written: Vec::new(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn text(&mut self, stem: &FileStem, suffix: &str, body: &str) -> Result<()> {
        let path = stem.file(&self.dir, suffix);
        write_file(&path, body.as_bytes())?;
        self.written.push(path);
        Ok(())
    }

    fn csv(&mut self, stem: &FileStem, suffix: &str, table: &Table) -> Result<()> {
        self.text(stem, suffix, &table.to_csv()?)
    }

    fn json<T: Serialize + ?Sized>(&mut self, stem: &FileStem, suffix: &str, value: &T) -> Result<()> {
        self.text(stem, suffix, &to_json(value)?)
    }

    pub(super) fn raw(&mut self, name: &str, body: &str) -> Result<()> {
        let path = self.dir.join(name);
        write_file(&path, body.as_bytes())?;
        self.written.push(path);
        Ok(())
    }
}

fn algorithms(mode: Mode) -> Vec<Algorithm> {
    match mode {
        Mode::Classical => vec![Algorithm::Classical],
        Mode::Quantum => vec![Algorithm::Quantum],
        Mode::Both => vec![Algorithm::Classical, Algorithm::Quantum],
    }
}

fn ranker(cfg: &RunConfig, algorithm: Algorithm) -> Ranker {
    Ranker {
        algorithm,
        alpha: cfg.alpha,
        horizon: cfg.horizon,
        tol: cfg.tol,
        max_iter: cfg.max_iter,
    }
}

fn family_tag(cfg: &RunConfig) -> &'static str {
    match cfg.family {
        FamilyKind::Sf => "sf",
        FamilyKind::Er => "er",
        FamilyKind::Hier3 => "hier3",
        FamilyKind::Outerplanar => "outerplanar",
    }
}

fn input_tag(path: &Path) -> String {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into());
    let clean: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '-' })
        .collect();
    format!("file-{clean}")
}

/// The single graph a command works on: the input file or one generated instance.
fn load_graph(cfg: &RunConfig) -> Result<(DirectedGraph, String, bool)> {
    match &cfg.input {
        Some(path) => Ok((read_graph_file(path)?, input_tag(path), false)),
        None => {
            let spec = cfg.spec()?;
            let random = spec.family.is_random();
            Ok((spec.generate()?, family_tag(cfg).to_string(), random))
        }
    }
}

fn stem(cfg: &RunConfig, source: &str, n: usize, random: bool) -> FileStem {
    let mut s = FileStem::new(cfg.command.name())
        .part(source)
        .part(format!("n{n}"));
    if cfg.command != super::config::Command::Generate {
        s = s.part(format!("a{}", cfg.alpha));
        if cfg.mode != Mode::Classical {
            s = s.part(format!("T{}", cfg.horizon));
        }
    }
    if random {
        s = s.part(format!("s{}", cfg.seed));
    }
    s
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn cmd_generate(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    let (g, source, random) = load_graph(cfg).at("build graph")?;
    let stem = stem(cfg, &source, g.node_count(), random);
    let dist = g.degree_distribution();
    let kmax = dist.in_hist.len().max(dist.out_hist.len());
    let mut table = Table::new(["k", "in_count", "out_count"]);
    let get = |h: &[usize], k: usize| h.get(k).copied().unwrap_or(0);
    for k in 0..kmax {
        table.push(vec![
            k.to_string(),
            get(&dist.in_hist, k).to_string(),
            get(&dist.out_hist, k).to_string(),
        ]);
    }
    let ks: Vec<usize> = (0..kmax).collect();
    let ins: Vec<f64> = ks.iter().map(|&k| get(&dist.in_hist, k) as f64).collect();
    let outs: Vec<f64> = ks.iter().map(|&k| get(&dist.out_hist, k) as f64).collect();
    (|| {
        out.text(&stem, ".edges", &write_edge_list(&g))?;
        out.text(&stem, ".net", &write_pajek(&g))?;
        out.csv(&stem, "_degrees.csv", &table)?;
        out.text(&stem, "_degrees.dat", &gnuplot_indexed("k in_count out_count", &ks, &[&ins, &outs]))
    })()
    .at("write output")
}

#[derive(Serialize)]
struct RankSummary {
    algorithm: Algorithm,
    top_node: usize,
    top_share: f64,
    degeneracy_resolution: usize,
    ipr: f64,
    /// Classical: `|G I - I|_1`. Quantum: `max |avg_T - avg_{T/2}|`.
    convergence: f64,
}

pub fn cmd_rank(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    let (g, source, random) = load_graph(cfg).at("load graph")?;
    let n = g.node_count();
    let stem = stem(cfg, &source, n, random);
    let gm = GoogleMatrix::from_graph(&g, cfg.alpha).at("google matrix")?;
    let algs = algorithms(cfg.mode);

    let mut columns: Vec<(Algorithm, Vec<f64>, f64)> = Vec::new();
    for &alg in &algs {
        let entry = match alg {
            Algorithm::Classical => {
                let cfg_pi = PowerIteration {
                    tol: cfg.tol,
                    max_iter: cfg.max_iter,
                };
                let v = classical_pagerank(&gm, cfg_pi).at("classical pagerank")?;
                let res = residual(&gm, v.values());
                (alg, v.into_inner(), res)
            }
            Algorithm::Quantum => {
                let avg = SzegedyWalk::new(&gm).average(cfg.horizon);
                (alg, avg.importance.into_inner(), avg.convergence)
            }
        };
        columns.push(entry);
    }

    let find = |alg: Algorithm| columns.iter().find(|c| c.0 == alg);
    let ranks: Vec<(Algorithm, RankList)> = columns
        .iter()
        .map(|(alg, v, _)| (*alg, RankList::from_importance(v)))
        .collect();
    let rank_of = |alg: Algorithm| ranks.iter().find(|r| r.0 == alg).map(|r| r.1.ranks());
    let (cl_rank, q_rank) = (rank_of(Algorithm::Classical), rank_of(Algorithm::Quantum));

    let mut table = Table::new([
        "node",
        "classical_importance",
        "quantum_importance",
        "classical_rank",
        "quantum_rank",
    ]);
    for i in 0..n {
        table.push(vec![
            i.to_string(),
            fmt_opt(find(Algorithm::Classical).map(|c| c.1[i])),
            fmt_opt(find(Algorithm::Quantum).map(|c| c.1[i])),
            cl_rank.as_ref().map(|r| r[i].to_string()).unwrap_or_default(),
            q_rank.as_ref().map(|r| r[i].to_string()).unwrap_or_default(),
        ]);
    }

    let mut summaries = Vec::new();
    for ((alg, v, conv), (_, list)) in columns.iter().zip(&ranks) {
        let (top, share) = list.entries()[0];
        summaries.push(RankSummary {
            algorithm: *alg,
            top_node: top.index(),
            top_share: share,
            degeneracy_resolution: degeneracy_resolution(list, DEGENERACY_RESOLUTION),
            ipr: ipr(v, 1).at("ipr")?.xi,
            convergence: *conv,
        });
    }
    let summary = json!({
        "nodes": n,
        "edges": g.edge_count(),
        "alpha": cfg.alpha,
        "T": cfg.horizon,
        "degeneracy_resolution_threshold": DEGENERACY_RESOLUTION,
        "algorithms": summaries,
    });

    let index: Vec<usize> = (0..n).collect();
    let cols: Vec<&[f64]> = columns.iter().map(|c| c.1.as_slice()).collect();
    let names: Vec<&str> = columns.iter().map(|c| c.0.name()).collect();

    (|| {
        out.csv(&stem, ".csv", &table)?;
        out.json(&stem, "_summary.json", &summary)?;
        out.text(
            &stem,
            "_bars.dat",
            &gnuplot_indexed(&format!("node {}", names.join(" ")), &index, &cols),
        )?;
        if cfg.export_matrix {
            out.text(&stem, "_google.txt", &gm.to_dense_text())?;
        }
        if cfg.trajectory {
            out.text(&stem, "_trajectory.csv", &SzegedyWalk::new(&gm).trajectory_csv(cfg.horizon))?;
        }
        Ok(())
    })()
    .at("write output")
}

fn phase_name(p: Phase) -> &'static str {
    match p {
        Phase::Localized => "localized",
        Phase::Intermediate => "intermediate",
        Phase::Delocalized => "delocalized",
    }
}

pub fn cmd_ipr(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    if cfg.input.is_some() || !matches!(cfg.family, FamilyKind::Sf | FamilyKind::Er) {
        return Err(Error::param("ipr scans graph sizes and needs the sf or er family")).at("configure");
    }
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::param("ipr needs at least two distinct --sizes")).at("configure");
    }
    let algs = algorithms(cfg.mode);
    let items: Vec<(usize, usize)> = (0..cfg.ensemble)
        .flat_map(|m| sizes.iter().map(move |&n| (m, n)))
        .collect();
    // xi[item][alg]
    let xi: Vec<Vec<f64>> = items
        .par_iter()
        .map(|&(m, n)| {
            let spec = cfg.spec_with_n(n)?.with_seed(cfg.seed.wrapping_add(m as u64));
            let g = spec.generate()?;
            algs.iter()
                .map(|&a| Ok(ipr(ranker(cfg, a).importance(&g)?.values(), cfg.r)?.xi))
                .collect()
        })
        .collect::<Result<_>>()
        .at("ipr evaluation")?;

    let stem = FileStem::new("ipr")
        .part(family_tag(cfg))
        .part(format!("a{}", cfg.alpha))
        .part(format!("T{}", cfg.horizon))
        .part(format!("r{}", cfg.r))
        .part(format!("s{}", cfg.seed));

    let mut samples_t = Table::new(["algorithm", "member", "seed", "n", "xi", "log_n", "log_xi"]);
    let mut fits_t = Table::new(["algorithm", "member", "seed", "slope", "intercept", "phase"]);
    let mut summary = Vec::new();
    let mut dat = Vec::new();
    for (k, &alg) in algs.iter().enumerate() {
        let mut all = Vec::new();
        let mut slopes = Vec::new();
        let mut phases = [0usize; 3];
        for m in 0..cfg.ensemble {
            let seed = cfg.seed.wrapping_add(m as u64);
            let member: Vec<IprSample> = items
                .iter()
                .zip(&xi)
                .filter(|((mm, _), _)| *mm == m)
                .map(|(&(_, n), v)| IprSample { n, xi: v[k], r: cfg.r })
                .collect();
            for s in &member {
                samples_t.push(vec![
                    alg.name().into(),
                    m.to_string(),
                    seed.to_string(),
                    s.n.to_string(),
                    fmt_f64(s.xi),
                    fmt_f64((s.n as f64).ln()),
                    fmt_f64(s.xi.ln()),
                ]);
            }
            let fit = ipr_scaling(&member).at("ipr scaling fit")?;
            phases[fit.phase as usize] += 1;
            fits_t.push(vec![
                alg.name().into(),
                m.to_string(),
                seed.to_string(),
                fmt_f64(fit.slope),
                fmt_f64(fit.intercept),
                phase_name(fit.phase).into(),
            ]);
            slopes.push(fit.slope);
            all.extend(member);
        }
        let pooled = ipr_scaling(&all).at("ipr scaling fit")?;
        let slope_stats = &summarize(&["slope".into()], &slopes.iter().map(std::slice::from_ref).collect::<Vec<_>>())[0];
        summary.push(json!({
            "algorithm": alg,
            "pooled_slope": pooled.slope,
            "pooled_intercept": pooled.intercept,
            "pooled_phase": pooled.phase,
            "slope_mean": slope_stats.mean,
            "slope_stddev": slope_stats.stddev,
            "localized": phases[Phase::Localized as usize],
            "intermediate": phases[Phase::Intermediate as usize],
            "delocalized": phases[Phase::Delocalized as usize],
        }));
        let log_n: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
        let mean_log_xi: Vec<f64> = sizes
            .iter()
            .map(|&n| {
                let v: Vec<f64> = all.iter().filter(|s| s.n == n).map(|s| s.xi.ln()).collect();
                v.iter().sum::<f64>() / v.len() as f64
            })
            .collect();
        dat.push((alg, gnuplot_data("log_n mean_log_xi", &[&log_n, &mean_log_xi])));
    }
    let summary = json!({
        "family": family_tag(cfg),
        "sizes": sizes,
        "ensemble": cfg.ensemble,
        "r": cfg.r,
        "algorithms": summary,
    });
    (|| {
        out.csv(&stem, "_samples.csv", &samples_t)?;
        out.csv(&stem, "_fits.csv", &fits_t)?;
        out.json(&stem, "_summary.json", &summary)?;
        for (alg, body) in &dat {
            out.text(&stem, &format!("_{}.dat", alg.name()), body)?;
        }
        Ok(())
    })()
    .at("write output")
}

fn matrix_table(alphas: &[f64], z: &[Vec<f64>]) -> Table {
    let mut header = vec!["alpha".to_string()];
    header.extend(alphas.iter().map(|a| fmt_f64(*a)));
    let mut t = Table::new(header);
    for (a, row) in alphas.iter().zip(z) {
        let mut r = vec![fmt_f64(*a)];
        r.extend(row.iter().map(|v| fmt_f64(*v)));
        t.push(r);
    }
    t
}

pub fn cmd_stability(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    let (g, source, random) = load_graph(cfg).at("load graph")?;
    let stem = stem(cfg, &source, g.node_count(), random).part(match cfg.grid {
        AlphaGrid::Coarse => "coarse",
        AlphaGrid::Fine => "fine",
    });
    let alphas = alpha_grid(cfg.grid);
    let sweep_alphas = alpha_grid(AlphaGrid::Fine);
    let mut summary = Vec::new();
    for alg in algorithms(cfg.mode) {
        let r = ranker(cfg, alg);
        let grid = stability_grid(&g, &alphas, &r).at("stability grid")?;
        let sweep = stability_sweep(&g, cfg.reference_alpha, &sweep_alphas, &r).at("stability sweep")?;
        let name = alg.name();
        let mut sweep_t = Table::new(["alpha", "fidelity", "distance"]);
        for i in 0..sweep.alphas.len() {
            sweep_t.push(vec![
                fmt_f64(sweep.alphas[i]),
                fmt_f64(sweep.fidelity[i]),
                fmt_f64(sweep.distance[i]),
            ]);
        }
        (|| {
            out.csv(&stem, &format!("_{name}_fidelity.csv"), &matrix_table(&alphas, &grid.fidelity))?;
            out.csv(&stem, &format!("_{name}_distance.csv"), &matrix_table(&alphas, &grid.distance))?;
            out.csv(&stem, &format!("_{name}_sweep.csv"), &sweep_t)?;
            out.text(
                &stem,
                &format!("_{name}_fidelity.dat"),
                &gnuplot_grid("alpha alpha' fidelity", &alphas, &grid.fidelity),
            )?;
            out.text(
                &stem,
                &format!("_{name}_distance.dat"),
                &gnuplot_grid("alpha alpha' distance", &alphas, &grid.distance),
            )?;
            out.text(
                &stem,
                &format!("_{name}_sweep.dat"),
                &gnuplot_data(
                    &format!("alpha fidelity distance (reference alpha {})", cfg.reference_alpha),
                    &[&sweep.alphas, &sweep.fidelity, &sweep.distance],
                ),
            )
        })()
        .at("write output")?;
        summary.push(json!({
            "algorithm": alg,
            "min_fidelity": grid.min_fidelity(),
            "max_distance": grid.max_distance(),
            "sweep_reference": sweep.reference,
            "sweep_min_fidelity": sweep.fidelity.iter().copied().fold(f64::INFINITY, f64::min),
        }));
    }
    let summary = json!({ "alphas": alphas, "algorithms": summary });
    out.json(&stem, "_summary.json", &summary).at("write output")
}

#[derive(Serialize)]
struct FitSummary {
    algorithm: Algorithm,
    fits: usize,
    failures: usize,
    beta_mean: f64,
    beta_stddev: f64,
    c_mean: f64,
    c_stddev: f64,
    residual_mean: f64,
    mean_curve_fit: PowerLawFit,
}

pub fn cmd_powerlaw(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    let algs = algorithms(cfg.mode);
    let per_graph = |g: &DirectedGraph| -> Result<Vec<Vec<f64>>> {
        algs.iter()
            .map(|&a| Ok(ranker(cfg, a).rank(g)?.importances()))
            .collect()
    };
    // (seed, curves per algorithm) for every graph
    let (runs, stem) = match &cfg.input {
        Some(_) => {
            let (g, source, _) = load_graph(cfg).at("load graph")?;
            let stem = stem(cfg, &source, g.node_count(), false);
            (vec![(cfg.seed, per_graph(&g))], stem)
        }
        None => {
            let spec = cfg.spec().at("configure")?;
            let random = spec.family.is_random();
            let stem = stem(cfg, family_tag(cfg), spec.family.node_count(), random)
                .part(format!("e{}", cfg.ensemble));
            (ensemble_map(&spec, cfg.ensemble, per_graph), stem)
        }
    };

    let range = |values: &[f64]| match (cfg.i_min, cfg.i_max) {
        (None, None) => default_fit_range(values),
        (lo, hi) => (lo.unwrap_or(1), hi.unwrap_or(values.len())),
    };
    let mut fits_t = Table::new(["seed", "algorithm", "beta", "c", "residual", "i_min", "i_max", "error"]);
    let mut summary = Vec::new();
    let mut curves_dat = Vec::new();
    let mut first_error = None;
    for (k, &alg) in algs.iter().enumerate() {
        let mut ok_fits: Vec<Vec<f64>> = Vec::new();
        let mut curves = Vec::new();
        let mut failures = 0;
        for (seed, res) in &runs {
            let outcome = res.as_ref().map_err(|e| e.to_string()).and_then(|c| {
                let v = &c[k];
                let (lo, hi) = range(v);
                let list = RankList::from_importance(v);
                power_law_fit(&list, lo, hi).map(|f| (f, v.clone())).map_err(|e| e.to_string())
            });
            match outcome {
                Ok((f, v)) => {
                    fits_t.push(vec![
                        seed.to_string(),
                        alg.name().into(),
                        fmt_f64(f.beta),
                        fmt_f64(f.c),
                        fmt_f64(f.residual),
                        f.i_min.to_string(),
                        f.i_max.to_string(),
                        String::new(),
                    ]);
                    ok_fits.push(vec![f.beta, f.c, f.residual]);
                    curves.push(v);
                }
                Err(msg) => {
                    failures += 1;
                    fits_t.push(vec![
                        seed.to_string(),
                        alg.name().into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        msg,
                    ]);
                }
            }
        }
        if ok_fits.is_empty() {
            let err = runs
                .iter()
                .find_map(|(_, r)| r.as_ref().err())
                .map(|e| e.to_string())
                .unwrap_or_else(|| "no fit succeeded".into());
            first_error.get_or_insert(err);
            continue;
        }
        let rows: Vec<&[f64]> = ok_fits.iter().map(|v| v.as_slice()).collect();
        let stats = summarize(&["beta".into(), "c".into(), "residual".into()], &rows);
        let mean = mean_sorted_curve(&curves).at("mean curve")?;
        let (lo, hi) = range(&mean);
        let mean_fit = power_law_fit(&RankList::from_importance(&mean), lo, hi).at("mean curve fit")?;
        let ranks: Vec<usize> = (1..=mean.len()).collect();
        curves_dat.push((alg, gnuplot_indexed("rank mean_importance", &ranks, &[&mean])));
        summary.push(FitSummary {
            algorithm: alg,
            fits: ok_fits.len(),
            failures,
            beta_mean: stats[0].mean,
            beta_stddev: stats[0].stddev,
            c_mean: stats[1].mean,
            c_stddev: stats[1].stddev,
            residual_mean: stats[2].mean,
            mean_curve_fit: mean_fit,
        });
    }
    if summary.is_empty() {
        let msg = first_error.unwrap_or_default();
        return Err(Error::param(format!("every fit failed: {msg}"))).at("power-law fit");
    }
    let summary = json!({ "ensemble": runs.len(), "algorithms": summary });
    (|| {
        out.csv(&stem, "_fits.csv", &fits_t)?;
        out.json(&stem, "_summary.json", &summary)?;
        for (alg, body) in &curves_dat {
            out.text(&stem, &format!("_{}_curve.dat", alg.name()), body)?;
        }
        Ok(())
    })()
    .at("write output")
}

#[derive(Serialize)]
struct AttackReport {
    algorithm: Algorithm,
    removals: Vec<usize>,
    kendall: Vec<f64>,
    stddev: Vec<f64>,
    ensemble: usize,
    failures: usize,
}

pub fn cmd_attack(cfg: &RunConfig, out: &mut Output) -> Result<(), Failure> {
    let algs = algorithms(cfg.mode);
    let per_graph = |g: &DirectedGraph| -> Result<Vec<Vec<f64>>> {
        algs.iter()
            .map(|&a| attack_experiment(g, cfg.removals, &ranker(cfg, a), cfg.selection))
            .collect()
    };
    let (runs, stem) = match &cfg.input {
        Some(_) => {
            let (g, source, _) = load_graph(cfg).at("load graph")?;
            let stem = stem(cfg, &source, g.node_count(), false);
            (vec![(cfg.seed, per_graph(&g))], stem)
        }
        None => {
            let spec = cfg.spec().at("configure")?;
            let random = spec.family.is_random();
            let stem = stem(cfg, family_tag(cfg), spec.family.node_count(), random)
                .part(format!("e{}", cfg.ensemble));
            (ensemble_map(&spec, cfg.ensemble, per_graph), stem)
        }
    };
    let ok: Vec<&Vec<Vec<f64>>> = runs.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    if ok.is_empty() {
        let (_, first) = runs.into_iter().next().expect("at least one run");
        return Err(first.expect_err("run failed")).at("attack experiment");
    }
    let failures = runs.len() - ok.len();
    let removals: Vec<usize> = (1..=cfg.removals).collect();
    let metric_names: Vec<String> = removals.iter().map(|k| format!("k{k}")).collect();

    let mut header = vec!["removals".to_string()];
    let mut reports = Vec::new();
    for (a, &alg) in algs.iter().enumerate() {
        header.push(format!("{}_mean", alg.name()));
        header.push(format!("{}_stddev", alg.name()));
        let rows: Vec<&[f64]> = ok.iter().map(|r| r[a].as_slice()).collect();
        let stats = summarize(&metric_names, &rows);
        reports.push(AttackReport {
            algorithm: alg,
            removals: removals.clone(),
            kendall: stats.iter().map(|s| s.mean).collect(),
            stddev: stats.iter().map(|s| s.stddev).collect(),
            ensemble: runs.len(),
            failures,
        });
    }
    let mut table = Table::new(header);
    for (i, k) in removals.iter().enumerate() {
        let mut row = vec![k.to_string()];
        for rep in &reports {
            row.push(fmt_f64(rep.kendall[i]));
            row.push(fmt_f64(rep.stddev[i]));
        }
        table.push(row);
    }
    let mut runs_header = vec!["seed".to_string(), "algorithm".to_string()];
    runs_header.extend(metric_names.iter().cloned());
    runs_header.push("error".into());
    let mut runs_t = Table::new(runs_header);
    for (seed, res) in &runs {
        for (a, alg) in algs.iter().enumerate() {
            let mut row = vec![seed.to_string(), alg.name().to_string()];
            match res {
                Ok(v) => {
                    row.extend(v[a].iter().map(|x| fmt_f64(*x)));
                    row.push(String::new());
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(String::new(), cfg.removals));
                    row.push(e.to_string());
                }
            }
            runs_t.push(row);
        }
    }
    (|| {
        out.csv(&stem, ".csv", &table)?;
        out.csv(&stem, "_runs.csv", &runs_t)?;
        out.json(&stem, "_summary.json", &reports)?;
        for rep in &reports {
            out.text(
                &stem,
                &format!("_{}.dat", rep.algorithm.name()),
                &gnuplot_indexed("removals mean_k stddev_k", &removals, &[&rep.kendall, &rep.stddev]),
            )?;
        }
        Ok(())
    })()
    .at("write output")
}
