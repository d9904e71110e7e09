use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use so4cat::braiding::{class_report, enumerate_braidings, solve_alpha_system, BraidingParams};
use so4cat::fusion::{fusion_graph_dot, FusionRing, SimpleLabel};
use so4cat::model::{gram_rank, verify_presentation};
use so4cat::scalars::RatFunc2;
use so4cat::skein::{evaluate_with, parse, phi_scalar, random_closed_diagram, serialize, Strategy};

#[derive(Parser)]
#[command(name = "so4cat", version, about = "Exact evaluation and verification for SO(4)-type diagram categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed diagram file.
    Eval(EvalArgs),
    /// Check the defining relations in the matrix model.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Fusion ring K_{n1,n2}: simples, dimensions, graph.
    Fusion(FusionArgs),
    /// The eight braidings: Yang–Baxter, ρ(σ) = σ⁻¹, twists, distinct count.
    Braidings(BraidArgs),
    /// Rank of the Gram form on End(X^k) at q_i = e^{iπ/(n_i+1)}.
    Rank(RankArgs),
    /// Compare the evaluator with the matrix model on random diagrams.
    Fuzz(FuzzArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// q1 as `re+imi` or `root:N:k` (e^{2πik/N}).
    #[arg(long, value_parser = parse_q)]
    q1: Option<Complex64>,
    #[arg(long, value_parser = parse_q)]
    q2: Option<Complex64>,
    /// Force exact output even when q1, q2 are given.
    #[arg(long)]
    symbolic: bool,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl ParamArgs {
    /// `Some((q1, q2))` in specialized mode.
    fn point(&self) -> Result<Option<(Complex64, Complex64)>> {
        if self.symbolic {
            return Ok(None);
        }
        match (self.q1, self.q2) {
            (None, None) => Ok(None),
            (Some(a), Some(b)) => {
                if a.norm() == 0.0 || b.norm() == 0.0 {
                    bail!("q1 and q2 must be nonzero");
                }
                Ok(Some((a, b)))
            }
            _ => bail!("give both --q1 and --q2, or neither"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Smallest,
    Innermost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Smallest => Strategy::SmallestFace,
            StrategyArg::Innermost => Strategy::Innermost,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    file: PathBuf,
    /// Evaluate through the matrix model instead of the skein rules.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value = "smallest")]
    strategy: StrategyArg,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FusionArgs {
    /// Rank n1, or `inf`.
    #[arg(long, default_value = "inf", value_parser = parse_rank)]
    n1: Rank,
    #[arg(long, default_value = "inf", value_parser = parse_rank)]
    n2: Rank,
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    json: bool,
    /// Print dim Hom(X^a, X^b).
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    hom_dim: Option<Vec<usize>>,
}

#[derive(Args)]
struct BraidArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    n1: u32,
    #[arg(long)]
    n2: u32,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 8)]
    coupons: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn parse_q(s: &str) -> Result<Complex64, String> {
    if let Some(rest) = s.strip_prefix("root:") {
        let (n, k) = rest.split_once(':').ok_or("expected root:N:k")?;
        let n: u32 = n.parse().map_err(|e| format!("bad N: {e}"))?;
        let k: i64 = k.parse().map_err(|e| format!("bad k: {e}"))?;
        if n == 0 {
            return Err("N must be positive".into());
        }
        return Ok(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64));
    }
    Complex64::from_str(&s.replace(' ', "")).map_err(|e| format!("bad complex number {s:?}: {e}"))
}

/// A fusion rank; `None` is ∞.
#[derive(Clone, Copy)]
struct Rank(Option<u32>);

fn parse_rank(s: &str) -> Result<Rank, String> {
    match s {
        "inf" | "infinity" | "∞" => Ok(Rank(None)),
        _ => s.parse::<u32>().map(|n| Rank(Some(n))).map_err(|e| e.to_string()),
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn cmd_eval(a: &EvalArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let d = parse(&text)?;
    let exact: RatFunc2 = if a.oracle { phi_scalar(&d)? } else { evaluate_with(&d, a.strategy.into())? };
    match a.params.point()? {
        None => {
            if a.json {
                println!("{}", json!({ "mode": "symbolic", "value": exact.to_string() }));
            } else {
                println!("{exact}");
            }
        }
        Some((q1, q2)) => {
            let z = exact.specialize(q1, q2, a.params.tol)?;
            if a.json {
                println!("{}", json!({ "mode": "specialized", "re": z.re, "im": z.im }));
            } else {
                println!("{}", fmt_c(z));
            }
        }
    }
    Ok(true)
}

fn cmd_verify(json_out: bool) -> Result<bool> {
    let r = verify_presentation();
    if json_out {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        for c in &r.checks {
            println!("{} {:<6} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.description);
        }
    }
    Ok(r.all_pass())
}

fn cmd_fusion(a: &FusionArgs) -> Result<bool> {
    let ring = FusionRing::new(a.n1.0, a.n2.0)?;
    if let Some(v) = &a.hom_dim {
        let h = ring.hom_dim(v[0], v[1]);
        if a.json {
            println!("{}", json!({ "ring": ring.to_string(), "a": v[0], "b": v[1], "hom_dim": h.to_string() }));
        } else {
            println!("{h}");
        }
        return Ok(true);
    }
    if a.dot {
        print!("{}", fusion_graph_dot(&ring)?);
        return Ok(true);
    }
    let summary = ring.summary()?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        println!("{ring}: {} simples", summary.simples.len());
        for s in &summary.simples {
            let x = ring.tensor_with_x(SimpleLabel::new(s.i, s.j))?;
            let x: Vec<String> = x.iter().map(|t| t.to_string()).collect();
            println!("  ({},{})  dim {}  ⊗X = {}", s.i, s.j, s.dim, x.join(" + "));
        }
    }
    Ok(true)
}

fn cmd_braidings(a: &BraidArgs) -> Result<bool> {
    let reports = BraidingParams::all().par_iter().map(class_report).collect::<Result<Vec<_>, _>>()?;
    let alpha = solve_alpha_system()?;
    let mut ok = reports.iter().all(|r| r.ybe && r.inverse_fourier);
    let distinct = match a.params.point()? {
        Some((q1, q2)) => Some(enumerate_braidings(q1, q2, a.params.tol)?),
        None => None,
    };
    if let Some(d) = &distinct {
        // 8 at generic parameters; fewer only at the rank-two roots of unity
        ok &= !d.is_empty();
    }
    if a.json {
        let alpha: Vec<_> = alpha
            .iter()
            .map(|s| {
                json!({
                    "eps_p": s.eps_p, "eps_q": s.eps_q, "eps_r": s.eps_r,
                    "alpha_1_squared": s.alpha_1_squared.to_string(),
                    "alpha_1": s.alpha_1.as_ref().map(|x| x.display_with(["s1", "s2"])),
                })
            })
            .collect();
        let out = json!({
            "classes": reports,
            "alpha_solutions": alpha,
            "distinct": distinct.as_ref().map(|d| d.len()),
            "distinct_classes": distinct,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for r in &reports {
            println!(
                "{}  YBE {}  rho-inverse {}  theta_X = {}  twists ({}){}",
                r.description,
                pf(r.ybe),
                pf(r.inverse_fourier),
                r.theta_x,
                r.twists_q.join(", "),
                if r.normalized_twists { "  [normalized]" } else { "" }
            );
        }
        for s in &alpha {
            println!(
                "alpha: eps_P = {}, eps_Q = {}, eps_R = {}, alpha_1^2 = {}",
                s.eps_p, s.eps_q, s.eps_r, s.alpha_1_squared
            );
        }
        if let Some(d) = &distinct {
            println!("distinct braidings: {}", d.len());
        }
    }
    Ok(ok)
}

fn pf(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_rank(a: &RankArgs) -> Result<bool> {
    let ring = FusionRing::finite(a.n1, a.n2)?;
    let q = |n: u32| Complex64::from_polar(1.0, std::f64::consts::PI / (n as f64 + 1.0));
    let rank = gram_rank(a.k, q(a.n1), q(a.n2), a.tol)?;
    let paths = ring.hom_dim(a.k, a.k);
    if a.json {
        println!("{}", json!({ "n1": a.n1, "n2": a.n2, "k": a.k, "rank": rank, "path_pairs": paths.to_string() }));
    } else {
        println!("{rank}");
    }
    Ok(rank as u128 == paths)
}

#[derive(serde::Serialize)]
struct Trial {
    trial: u64,
    coupons: usize,
    ok: bool,
    error: Option<String>,
    diagram: Option<String>,
}

fn run_trial(seed: u64, i: u64, max: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let d = random_closed_diagram(&mut rng, max);
    let res = (|| -> Result<bool> {
        let a = evaluate_with(&d, Strategy::SmallestFace)?;
        let b = evaluate_with(&d, Strategy::Innermost)?;
        let c = phi_scalar(&d)?;
        Ok(a == c && b == c)
    })();
    let (ok, error) = match res {
        Ok(ok) => (ok, None),
        Err(e) => (false, Some(e.to_string())),
    };
    Trial { trial: i, coupons: d.coupon_count(), ok, error, diagram: (!ok).then(|| serialize(&d)) }
}

fn cmd_fuzz(a: &FuzzArgs) -> Result<bool> {
    if a.coupons == 0 {
        return Err(anyhow!("--coupons must be at least 1"));
    }
    let trials: Vec<Trial> = (0..a.trials).into_par_iter().map(|i| run_trial(a.seed, i, a.coupons)).collect();
    let bad: Vec<&Trial> = trials.iter().filter(|t| !t.ok).collect();
    if a.json {
        let out = json!({
            "seed": a.seed, "trials": a.trials, "max_coupons": a.coupons,
            "mismatches": bad.len(), "failures": bad,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for t in &bad {
            println!("trial {} ({} coupons): {}", t.trial, t.coupons, t.error.as_deref().unwrap_or("value mismatch"));
            if let Some(d) = &t.diagram {
                println!("  {d}");
            }
        }
        println!("{} trials, {} mismatches", a.trials, bad.len());
    }
    Ok(bad.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Verify { json } => cmd_verify(*json),
        Cmd::Fusion(a) => cmd_fusion(a),
        Cmd::Braidings(a) => cmd_braidings(a),
        Cmd::Rank(a) => cmd_rank(a),
        Cmd::Fuzz(a) => cmd_fuzz(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
