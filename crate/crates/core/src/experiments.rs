//! Experiment drivers. Each one builds its instances from a base seed,
//! re-verifies every colouring it produces, and returns CSV rows together
//! with named pass/fail checks. Rows come back in instance order whatever
//! the thread count, so reruns are byte-identical (wall time is only
//! written on request).

use std::io::Write;
use std::time::Instant;

use rand::Rng;
use thiserror::Error;

use crate::dense::{alpha_estimate, dense_params, t_tone_color_dense};
use crate::exact::{exact_tau, independence_number, SearchBudget, SolveError};
use crate::graph::Graph;
use crate::par;
use crate::random::{gnp, planted_hubs, random_tree, random_tree_with_max_degree, rng, GenError};
use crate::sparse::{core_decomposition, sparse_color, structural_diagnostics, SparseError, SparseParams};
use crate::tone::{kappa, respects, tone_lower_bound, verify, ToneColoring, ToneError};
use crate::tree::{color_forest_2tone, min_greedy_palette, TreeError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Tone(#[from] ToneError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub fields: Vec<String>,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn write_csv<W: Write>(&self, out: W, timings: bool) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.header.clone();
        if timings {
            header.push("wall_ms");
        }
        w.write_record(&header)?;
        for row in &self.rows {
            if timings {
                w.write_record(row.fields.iter().cloned().chain([row.wall_ms.to_string()]))?;
            } else {
                w.write_record(&row.fields)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn check(name: impl Into<String>, passed: bool) -> Check {
    Check {
        name: name.into(),
        passed,
    }
}

/// A seed for one instance, derived from the base seed and the instance key.
pub fn instance_seed(base: u64, key: &[u64]) -> u64 {
    let mut r = rng(base, 0x1_0000_0000);
    for &k in key {
        r = rng(r.random::<u64>() ^ k, 0x1_0000_0000);
    }
    r.random()
}

fn require_valid(g: &Graph, c: &ToneColoring, what: impl FnOnce() -> String) -> Result<(), ExperimentError> {
    if verify(g, c)?.is_valid() {
        Ok(())
    } else {
        Err(ExperimentError::VerifyFailed(what()))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis())
}

fn collect<T, E>(results: Vec<Result<T, E>>) -> Result<Vec<T>, E> {
    results.into_iter().collect()
}

/// Random trees of at most `n_max` vertices: exact `τ_2`, `kappa(Δ)` and the
/// constructive palette, which should all agree.
pub fn exp_tree_formula(trials: usize, n_max: usize, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    if n_max > 12 {
        return Err(ExperimentError::TooLarge(format!("tree_formula caps n_max at 12, got {n_max}")));
    }
    let n_max = n_max.max(1);
    let lo = n_max.min(2);
    let mut draw = rng(seed, 0);
    let plan: Vec<(usize, u64)> = (0..trials).map(|_| (draw.random_range(lo..=n_max), draw.random())).collect();
    let rows = collect(par::map_slice(&plan, |&(n, tree_seed)| {
        let (row, ms) = timed(|| -> Result<(Vec<String>, bool), ExperimentError> {
            let tree = random_tree(n, tree_seed);
            let delta = tree.max_degree();
            let tau = exact_tau(&tree, 2, SearchBudget::unbounded())?.tau;
            let base = vec![n.to_string(), tree_seed.to_string(), delta.to_string(), tau.to_string()];
            if delta == 0 {
                let skipped = ["", "", "", "DomainError: max degree 0"].map(String::from);
                return Ok((base.into_iter().chain(skipped).collect(), true));
            }
            let k = kappa(delta as u64)? as usize;
            let c = color_forest_2tone(&tree)?;
            require_valid(&tree, &c, || format!("forest colouring of tree n={n} seed={tree_seed}"))?;
            let used = c.k() as usize;
            let equal = tau == k && k == used;
            let tail = [k.to_string(), used.to_string(), equal.to_string(), String::new()];
            Ok((base.into_iter().chain(tail).collect(), equal))
        });
        row.map(|(fields, ok)| (Row { fields, wall_ms: ms }, ok))
    }))?;
    let all_equal = rows.iter().all(|(_, ok)| *ok);
    Ok(ExperimentReport {
        name: "tree_formula",
        header: vec!["n", "tree_seed", "max_degree", "tau", "kappa", "k_used", "equal", "note"],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        checks: vec![check("tau = kappa = k_used on every tree", all_equal)],
    })
}

/// Exact `τ_t` against `⌈tn/α⌉` on three named graphs and `trials` random
/// graphs of at most `n_max` vertices.
pub fn exp_lower_bound(
    trials: usize,
    n_max: usize,
    t_list: &[usize],
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    if n_max > 10 {
        return Err(ExperimentError::TooLarge(format!("lower_bound caps n_max at 10, got {n_max}")));
    }
    let n_max = n_max.max(1);
    let mut instances: Vec<(String, Graph)> = vec![
        ("C5".into(), Graph::cycle(5)),
        ("K4".into(), Graph::complete(4)),
        ("E6".into(), Graph::empty(6)),
    ];
    let mut draw = rng(seed, 0);
    for i in 0..trials {
        let n = draw.random_range(1..=n_max);
        let p: f64 = draw.random_range(0.1..0.9);
        let g_seed: u64 = draw.random();
        instances.push((format!("gnp{i}:p={p:.3}:seed={g_seed}"), gnp(n, p, g_seed)));
    }
    let jobs: Vec<(usize, usize)> = (0..instances.len()).flat_map(|i| t_list.iter().map(move |&t| (i, t))).collect();
    let rows = collect(par::map_slice(&jobs, |&(i, t)| {
        let (name, g) = &instances[i];
        let (row, ms) = timed(|| -> Result<(Vec<String>, bool), ExperimentError> {
            let alpha = independence_number(g, SearchBudget::unbounded())?;
            let bound = tone_lower_bound(g.n(), t, alpha);
            let tau = exact_tau(g, t, SearchBudget::unbounded())?;
            require_valid(g, &tau.witness, || format!("exact witness for {name} at t={t}"))?;
            let holds = tau.tau >= bound;
            let fields = vec![
                name.clone(),
                g.n().to_string(),
                g.m().to_string(),
                t.to_string(),
                alpha.to_string(),
                bound.to_string(),
                tau.tau.to_string(),
                (tau.tau as i64 - bound as i64).to_string(),
                holds.to_string(),
            ];
            Ok((fields, holds))
        });
        row.map(|(fields, ok)| (Row { fields, wall_ms: ms }, ok))
    }))?;
    let all = rows.iter().all(|(_, ok)| *ok);
    Ok(ExperimentReport {
        name: "lower_bound",
        header: vec!["instance", "n", "m", "t", "alpha", "bound", "tau", "slack", "holds"],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        checks: vec![check("tau >= ceil(t*n/alpha) on every instance", all)],
    })
}

/// Regression band for the mean of `colors(t=2) / colors(t=1)` at `p = 0.5`,
/// calibrated by a pilot of 20 base seeds with 5 instances per `n` in
/// {100, 200, 400}: per-`n` means ranged over 2.000..2.088 (overall mean
/// 2.04, sd 0.023). The band is 2.04 +- 0.1, rounded outward.
pub const DENSE_RATIO_BAND: (f64, f64) = (1.95, 2.15);
/// Allowed increase of the mean ratio from one `n` to the next. In the same
/// pilot, consecutive differences had mean -0.008 and sd 0.030 (max +0.075),
/// so the ratio is flat within noise at these sizes; this is 3 sd.
pub const DENSE_RATIO_SLACK: f64 = 0.09;

/// Dense pipeline over a grid of `G(n, p)` instances: colours at tone `t`,
/// colours at tone 1 (a `χ` proxy), the `⌈tn/α̂⌉` lower estimate, and the
/// ratio. Checks validity, respecting and independence of all partitions,
/// and, when `t = 2` and `0.5` is in `p_list`, that the mean ratio at
/// `p = 0.5` stays in [`DENSE_RATIO_BAND`] and does not grow with `n`.
pub fn exp_dense_ratio(
    n_list: &[usize],
    p_list: &[f64],
    t: usize,
    seeds: usize,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    if let Some(&n) = n_list.iter().find(|&&n| n > 5000) {
        return Err(ExperimentError::TooLarge(format!("dense_ratio caps n at 5000, got {n}")));
    }
    let jobs: Vec<(usize, usize, usize)> = n_list
        .iter()
        .enumerate()
        .flat_map(|(ni, _)| (0..p_list.len()).flat_map(move |pi| (0..seeds).map(move |s| (ni, pi, s))))
        .collect();
    struct Out {
        n: usize,
        p: f64,
        ratio: f64,
        structure_ok: bool,
    }
    let rows = collect(par::map_slice(&jobs, |&(ni, pi, s)| {
        let (n, p) = (n_list[ni], p_list[pi]);
        let g_seed = instance_seed(seed, &[n as u64, pi as u64, s as u64]);
        let (row, ms) = timed(|| -> Result<(Vec<String>, Out), ExperimentError> {
            let g = gnp(n, p, g_seed);
            let params = dense_params(n.max(3), p);
            let out = t_tone_color_dense(&g, t, &params, g_seed)?;
            let one = t_tone_color_dense(&g, 1, &params, g_seed)?;
            // Only distance constraints beyond 2 can fail, and only when the
            // diameter exceeds 2; anything else is a bug.
            let mut verified = true;
            for (c, tone) in [(&out.coloring, t), (&one.coloring, 1)] {
                if out.diameter_ok {
                    require_valid(&g, c, || format!("dense colouring n={n} p={p} seed={g_seed} t={tone}"))?;
                } else {
                    verified &= verify(&g, c)?.is_valid();
                }
            }
            let independent = out.partitions.iter().all(|p| p.is_independent_in(&g));
            let mut respecting = true;
            for (i, a) in out.partitions.iter().enumerate() {
                for b in &out.partitions[i + 1..] {
                    respecting &= respects(a, b)?;
                }
            }
            let alpha_hat = alpha_estimate(&g, 64, g_seed);
            let colors_t = out.coloring.k() as usize;
            let colors_1 = one.coloring.k() as usize;
            let ratio = colors_t as f64 / colors_1 as f64;
            let fields = vec![
                n.to_string(),
                format!("{p}"),
                t.to_string(),
                g_seed.to_string(),
                colors_t.to_string(),
                colors_1.to_string(),
                alpha_hat.to_string(),
                tone_lower_bound(n, t, alpha_hat.max(1)).to_string(),
                format!("{ratio:.6}"),
                out.diameter_ok.to_string(),
                independent.to_string(),
                respecting.to_string(),
                verified.to_string(),
            ];
            let structure_ok = verified && independent && respecting;
            Ok((fields, Out { n, p, ratio, structure_ok }))
        });
        row.map(|(fields, out)| (Row { fields, wall_ms: ms }, out))
    }))?;
    let mut checks = vec![check(
        "colourings verified, partitions independent and pairwise respecting",
        rows.iter().all(|(_, o)| o.structure_ok),
    )];
    if t == 2 && p_list.contains(&0.5) {
        let means: Vec<f64> = n_list
            .iter()
            .map(|&n| {
                let rs: Vec<f64> = rows.iter().filter(|(_, o)| o.n == n && o.p == 0.5).map(|(_, o)| o.ratio).collect();
                rs.iter().sum::<f64>() / rs.len().max(1) as f64
            })
            .collect();
        let (lo, hi) = DENSE_RATIO_BAND;
        checks.push(check(
            format!("mean ratio at p=0.5 in [{lo}, {hi}]: {means:.3?}"),
            means.iter().all(|&m| (lo..=hi).contains(&m)),
        ));
        let mut sorted: Vec<(usize, f64)> = n_list.iter().copied().zip(means).collect();
        sorted.sort_by_key(|&(n, _)| n);
        checks.push(check(
            "mean ratio at p=0.5 non-increasing in n",
            sorted.windows(2).all(|w| w[1].1 <= w[0].1 + DENSE_RATIO_SLACK),
        ));
    }
    Ok(ExperimentReport {
        name: "dense_ratio",
        header: vec![
            "n",
            "p",
            "t",
            "seed",
            "colors_t",
            "colors_1",
            "alpha_hat",
            "lower_estimate",
            "ratio",
            "diameter_ok",
            "independent",
            "respecting",
            "verified",
        ],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        checks,
    })
}

/// Planted-instance shape for [`exp_sparse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Planted {
    pub hubs: usize,
    pub hub_degree: usize,
    pub spacing: usize,
}

impl Default for Planted {
    fn default() -> Self {
        Planted {
            hubs: 3,
            hub_degree: 12,
            spacing: 6,
        }
    }
}

/// The 2-tone sparse pipeline on `G(n, c/n)` and, optionally, planted-hub
/// instances. Random instances just record their outcome; planted ones must
/// succeed at `kappa(hub_degree)`.
pub fn exp_sparse(
    n_list: &[usize],
    c_list: &[f64],
    b0_override: Option<f64>,
    seeds: usize,
    planted: Option<Planted>,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    if let Some(&n) = n_list.iter().find(|&&n| n > 1_000_000) {
        return Err(ExperimentError::TooLarge(format!("sparse caps n at 10^6, got {n}")));
    }
    #[derive(Clone, Copy)]
    enum Instance {
        Gnp { n: usize, c: f64 },
        Planted(Planted),
    }
    let mut jobs = Vec::new();
    for s in 0..seeds {
        if let Some(p) = planted {
            jobs.push((Instance::Planted(p), instance_seed(seed, &[0, s as u64])));
        }
        for &n in n_list {
            for (ci, &c) in c_list.iter().enumerate() {
                jobs.push((Instance::Gnp { n, c }, instance_seed(seed, &[1, n as u64, ci as u64, s as u64])));
            }
        }
    }
    let rows = collect(par::map_slice(&jobs, |&(inst, g_seed)| {
        let (row, ms) = timed(|| -> Result<(Vec<String>, bool), ExperimentError> {
            let (name, g, params) = match inst {
                Instance::Gnp { n, c } => {
                    let g = gnp(n, (c / n as f64).min(1.0), g_seed);
                    let mut params = SparseParams::new(n, 2);
                    if let Some(b0) = b0_override {
                        params = params.with_b0(b0);
                    }
                    (format!("gnp:n={n}:c={c}"), g, params)
                }
                Instance::Planted(p) => {
                    let g = planted_hubs(p.hubs, p.hub_degree, p.spacing, g_seed)?;
                    let b0 = b0_override.unwrap_or(p.hub_degree as f64 - 2.0);
                    let params = SparseParams::new(g.n(), 2).with_b0(b0);
                    (format!("planted:hubs={}:deg={}", p.hubs, p.hub_degree), g, params)
                }
            };
            let decomp = core_decomposition(&g, &params);
            let diag = structural_diagnostics(&g, &decomp, 2);
            let out = sparse_color(&g, &params)?;
            require_valid(&g, &out.coloring, || format!("sparse colouring of {name} seed={g_seed}"))?;
            let r = &out.report;
            let outcome = if !r.h_forest {
                "structural_failure"
            } else if r.at_target() {
                "at_kappa"
            } else {
                "escalated"
            };
            let required = !matches!(inst, Instance::Planted(_)) || outcome == "at_kappa";
            let fields = vec![
                name,
                g.n().to_string(),
                g_seed.to_string(),
                format!("{:.6}", params.b0),
                r.max_degree.to_string(),
                r.target_palette.to_string(),
                r.palette.to_string(),
                outcome.to_string(),
                r.v0_size.to_string(),
                diag.p1_components.first().copied().unwrap_or(0).to_string(),
                diag.p1_holds.to_string(),
                diag.max_h_component.to_string(),
                diag.p2_holds.to_string(),
                r.h_forest.to_string(),
                r.keep_set_valid.to_string(),
                "true".to_string(),
            ];
            Ok((fields, required && r.keep_set_valid))
        });
        row.map(|(fields, ok)| (Row { fields, wall_ms: ms }, ok))
    }))?;
    let all = rows.iter().all(|(_, ok)| *ok);
    Ok(ExperimentReport {
        name: "sparse",
        header: vec![
            "instance",
            "n",
            "seed",
            "b0",
            "max_degree",
            "kappa",
            "palette",
            "outcome",
            "v0",
            "p1_max_component",
            "p1_holds",
            "max_h_component",
            "p2_holds",
            "h_forest",
            "keep_set_valid",
            "verified",
        ],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        checks: vec![check("planted instances at kappa; kept labels valid everywhere", all)],
    })
}

/// Trees of order `3Δ` (a single edge when `Δ = 1`) with maximum degree
/// exactly `Δ`, coloured by the escalating greedy.
pub fn scaling_tree(delta: usize, seed: u64) -> Result<Graph, GenError> {
    let n = if delta == 1 { 2 } else { 3 * delta };
    random_tree_with_max_degree(n, delta, seed)
}

/// The largest allowed ratio between the biggest and smallest normalized
/// palette `k / √Δ` for one `t`.
pub const SCALING_BAND_RATIO: f64 = 3.0;

/// Greedy `t`-tone palettes on random trees, normalized by `√Δ`. One tree
/// row per (t, Δ, trial), then one summary row per `t` with the band.
pub fn exp_ttone_tree_scaling(
    t_list: &[usize],
    delta_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    if let Some(&t) = t_list.iter().find(|&&t| t < 3) {
        return Err(ExperimentError::TooLarge(format!("tree_scaling needs t >= 3, got {t}")));
    }
    if let Some(&d) = delta_list.iter().find(|&&d| d == 0 || d > 400) {
        return Err(ExperimentError::TooLarge(format!("tree_scaling needs 1 <= delta <= 400, got {d}")));
    }
    let jobs: Vec<(usize, usize, usize)> = t_list
        .iter()
        .flat_map(|&t| delta_list.iter().flat_map(move |&d| (0..trials).map(move |i| (t, d, i))))
        .collect();
    let results = collect(par::map_slice(&jobs, |&(t, delta, i)| {
        let tree_seed = instance_seed(seed, &[t as u64, delta as u64, i as u64]);
        let (row, ms) = timed(|| -> Result<(Vec<String>, f64), ExperimentError> {
            let tree = scaling_tree(delta, tree_seed)?;
            let (k, c) = min_greedy_palette(&tree, t)?;
            require_valid(&tree, &c, || format!("greedy colouring t={t} delta={delta} seed={tree_seed}"))?;
            let norm = k as f64 / (delta as f64).sqrt();
            let fields = vec![
                "tree".to_string(),
                t.to_string(),
                delta.to_string(),
                i.to_string(),
                tree.n().to_string(),
                tree_seed.to_string(),
                k.to_string(),
                format!("{norm:.6}"),
                String::new(),
                String::new(),
                String::new(),
            ];
            Ok((fields, norm))
        });
        row.map(|(fields, norm)| (t, Row { fields, wall_ms: ms }, norm))
    }))?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &t in t_list {
        let norms: Vec<f64> = results.iter().filter(|r| r.0 == t).map(|r| r.2).collect();
        let lo = norms.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = norms.iter().copied().fold(0.0, f64::max);
        let ratio = hi / lo;
        rows.extend(results.iter().filter(|r| r.0 == t).map(|r| r.1.clone()));
        let mut summary: Vec<String> = vec!["summary".into(), t.to_string()];
        summary.extend(std::iter::repeat_n(String::new(), 6));
        summary.extend([format!("{lo:.6}"), format!("{hi:.6}"), format!("{ratio:.6}")]);
        rows.push(Row {
            fields: summary,
            wall_ms: 0,
        });
        checks.push(check(
            format!("t={t}: max/min of k/sqrt(delta) = {ratio:.3} <= {SCALING_BAND_RATIO}"),
            ratio <= SCALING_BAND_RATIO,
        ));
    }
    Ok(ExperimentReport {
        name: "tree_scaling",
        header: vec![
            "kind",
            "t",
            "delta",
            "trial",
            "n",
            "seed",
            "palette",
            "normalized",
            "band_min",
            "band_max",
            "band_ratio",
        ],
        rows,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field<'a>(r: &'a ExperimentReport, row: usize, col: &str) -> &'a str {
        &r.rows[row].fields[r.column(col).unwrap()]
    }

    #[test]
    fn tree_formula_examples() {
        let r = exp_tree_formula(1, 2, 0).unwrap();
        assert_eq!(field(&r, 0, "tau"), "4");
        assert_eq!(field(&r, 0, "kappa"), "4");
        assert!(r.passed());

        let r = exp_tree_formula(1, 1, 0).unwrap();
        assert!(field(&r, 0, "note").starts_with("DomainError"));
        assert!(r.passed());

        assert!(matches!(exp_tree_formula(1, 13, 0), Err(ExperimentError::TooLarge(_))));
    }

    #[test]
    fn lower_bound_named_rows() {
        let r = exp_lower_bound(0, 10, &[2], 0).unwrap();
        let rows: Vec<_> = (0..3).map(|i| (field(&r, i, "bound"), field(&r, i, "tau"))).collect();
        assert_eq!(rows[0], ("5", "5"));
        assert_eq!(rows[1].0, "8");
        assert!(rows[1].1.parse::<usize>().unwrap() >= 8);
        assert_eq!(rows[2], ("2", "2"));
        assert!(r.passed());
    }

    #[test]
    fn dense_ratio_is_one_at_t1() {
        let r = exp_dense_ratio(&[60], &[0.5], 1, 2, 3).unwrap();
        assert!(r.rows.iter().all(|row| row.fields[r.column("ratio").unwrap()] == "1.000000"));
        assert!(r.passed());
    }

    #[test]
    fn sparse_planted_row() {
        let r = exp_sparse(&[], &[], None, 1, Some(Planted::default()), 0).unwrap();
        assert_eq!(field(&r, 0, "palette"), "8");
        assert_eq!(field(&r, 0, "outcome"), "at_kappa");
        assert!(r.passed());
    }

    #[test]
    fn scaling_single_edge_needs_2t() {
        let r = exp_ttone_tree_scaling(&[3], &[1], 1, 0).unwrap();
        assert_eq!(field(&r, 0, "palette"), "6");
        assert_eq!(field(&r, 1, "kind"), "summary");
    }

    #[test]
    fn csv_is_reproducible() {
        let run = || {
            let mut buf = Vec::new();
            exp_tree_formula(5, 7, 9).unwrap().write_csv(&mut buf, false).unwrap();
            buf
        };
        assert_eq!(run(), run());
    }
}
