//! `hweight`: build modules from spec files, certify their weightings, compare
//! two modules and tabulate degree polynomials.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hweight::coherent::{
    certify_almost_coherent, deg_identity_check, deg_k, deg_linear_independence, wt_normal_form, degree_one_recognition,
};
use hweight::exactalg::{parse_rat_list, Rat};
use hweight::hmodules::{FreeHModule, ModuleSpec};
use hweight::liealg::{build_algebra, Family, LieAlgebraData, Weight};
use hweight::weightcat::{almost_equivalent, default_probes, weighting, Probe, DEFAULT_RADIUS};

#[derive(Parser)]
#[command(name = "hweight", version, about = "Exact checks for U(h)-free modules and their weightings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Output {
    /// Also write the structured report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WindowArgs {
    /// Base weight λ₀ as comma-separated rationals; seeded generic point if absent.
    #[arg(long, allow_hyphen_values = true)]
    window_base: Option<String>,
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    window_radius: i64,
    /// "default" or a comma-separated list of catalog probe names.
    #[arg(long, default_value = "default")]
    probes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a module from a spec and check its bracket relations.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Certify the weighting of a module (spec or dump) as almost coherent.
    Certify {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the trace tables of two modules on a common window.
    Compare {
        /// Given twice.
        #[arg(long, action = ArgAction::Append, required = true)]
        spec: Vec<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate deg_k over a grid of dominant weights of sl(n+1).
    Degrees {
        #[arg(long, default_value = "A")]
        family: String,
        #[arg(long)]
        n: usize,
        /// Fundamental-weight coordinates, points separated by ';'.
        /// Default: the 10 lowest dominant weights.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

struct Report {
    pass: bool,
    text: String,
    structured: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Build { spec, output } => (cmd_build(spec), output),
        Command::Certify { spec, window, output } => (cmd_certify(spec, window), output),
        Command::Compare { spec, window, output } => {
            let r = match spec.as_slice() {
                [a, b] => cmd_compare(a, b, window),
                _ => Err(anyhow::anyhow!("compare takes exactly two --spec files")),
            };
            (r, output)
        }
        Command::Degrees { family, n, grid, output } => (cmd_degrees(family, *n, grid.as_deref()), output),
    };
    match result.and_then(|r| emit(&r, output).map(|_| r.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(r: &Report, o: &Output) -> Result<()> {
    let structured = serde_json::to_string_pretty(&r.structured)? + "\n";
    if let Some(p) = &o.out {
        fs::write(p, &structured).with_context(|| format!("writing {}", p.display()))?;
    }
    let body = match o.format {
        Format::Text => &r.text,
        Format::Structured => &structured,
    };
    match io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

/// A module spec, or a dump written by `build --out`.
fn load_module(path: &Path) -> Result<FreeHModule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let v = v.get("module").cloned().unwrap_or(v);
    if v.get("action").is_some() {
        return Ok(FreeHModule::from_dump(&v)?);
    }
    Ok(ModuleSpec::parse(&v.to_string())?.build()?)
}

fn cmd_build(spec: &Path) -> Result<Report> {
    let m = load_module(spec)?;
    let r = m.validate_bracket();
    let residuals: Vec<Value> = r
        .residuals
        .iter()
        .map(|((a, b), _)| json!([m.algebra.name(*a), m.algebra.name(*b)]))
        .collect();
    let cartan: Vec<&str> = r.cartan_failures.iter().map(|&l| m.algebra.name(l)).collect();
    let text = format!(
        "module {} over {}{} rank {}\nbrackets: {} pairs, {} nonzero residuals, {} Cartan failures: {}\n",
        m.meta.constructor,
        m.algebra.family,
        m.algebra.n,
        m.rank,
        r.pairs_checked,
        r.residuals.len(),
        r.cartan_failures.len(),
        if r.pass { "pass" } else { "FAIL" }
    );
    Ok(Report {
        pass: r.pass,
        text,
        structured: json!({
            "command": "build",
            "module": m.dump(),
            "bracket": { "pass": r.pass, "pairs_checked": r.pairs_checked, "residual_pairs": residuals, "cartan_failures": cartan },
        }),
    })
}

fn window_base(g: &LieAlgebraData, w: &WindowArgs) -> Result<Weight> {
    if let Some(s) = &w.window_base {
        let v = parse_rat_list(s).map_err(|e| anyhow::anyhow!("--window-base: {e}"))?;
        if v.len() != g.cartan_dim() {
            bail!("--window-base has {} coordinates, expected {}", v.len(), g.cartan_dim());
        }
        return Ok(Weight(v));
    }
    // denominators away from 1 and 2 keep the coset off the integral and half-integral walls
    let mut rng = ChaCha8Rng::seed_from_u64(w.seed);
    let dens = [7i64, 11, 13];
    Ok(Weight(
        (0..g.cartan_dim())
            .map(|_| {
                let d = dens[rng.gen_range(0..dens.len())];
                Rat::new(rng.gen_range(1..d), d)
            })
            .collect(),
    ))
}

fn select_probes(g: &LieAlgebraData, sel: &str) -> Result<Vec<Probe>> {
    let all = default_probes(g)?;
    if sel == "default" {
        return Ok(all);
    }
    sel.split(',')
        .map(|name| {
            let name = name.trim();
            all.iter()
                .find(|p| p.name == name)
                .cloned()
                .ok_or_else(|| anyhow::anyhow!("unknown probe {name:?}; catalog: {}", catalog_names(&all)))
        })
        .collect()
}

fn catalog_names(all: &[Probe]) -> String {
    all.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn cmd_certify(spec: &Path, wa: &WindowArgs) -> Result<Report> {
    let m = load_module(spec)?;
    let g = m.algebra.clone();
    let bracket = m.validate_bracket();
    let base = window_base(&g, wa)?;
    let probes = select_probes(&g, &wa.probes)?;
    let w = weighting(&m, &base, wa.window_radius)?;
    let cert = certify_almost_coherent(&w, &probes);
    let pass = cert.pass && bracket.pass;
    let mut text = format!(
        "window base {} radius {} ({} slots)\nbrackets: {}\ndegree d = {}\n",
        base.pretty(),
        wa.window_radius,
        w.len(),
        if bracket.pass { "pass" } else { "FAIL" },
        cert.degree
    );
    for f in &cert.fits {
        let status = match (&f.poly, &f.error) {
            (_, Some(e)) => format!("no fit: {e}"),
            (Some(p), None) if f.residual_slots.is_empty() => p.to_canonical(),
            (Some(p), None) => format!("{} ({} held-out slots off)", p.to_canonical(), f.residual_slots.len()),
            (None, None) => "no fit".into(),
        };
        text.push_str(&format!("  {:<24} {status}\n", f.probe));
    }
    text.push_str(&format!(
        "exceptional slots: {}\ncertificate: {}\n",
        cert.exceptional.len(),
        if pass { "pass" } else { "FAIL" }
    ));
    let mut s = cert.to_json(&w);
    s["pass"] = json!(pass);
    s["bracket_pass"] = json!(bracket.pass);
    s["command"] = json!("certify");
    s["seed"] = json!(wa.seed);
    Ok(Report { pass, text, structured: s })
}

fn cmd_compare(a: &Path, b: &Path, wa: &WindowArgs) -> Result<Report> {
    let (ma, mb) = (load_module(a)?, load_module(b)?);
    if ma.algebra.family != mb.algebra.family || ma.algebra.n != mb.algebra.n {
        bail!("modules are over different algebras");
    }
    let g = ma.algebra.clone();
    let base = window_base(&g, wa)?;
    let probes = select_probes(&g, &wa.probes)?;
    let wa_ = weighting(&ma, &base, wa.window_radius)?;
    let wb = weighting(&mb, &base, wa.window_radius)?;
    let v = almost_equivalent(&wa_, &wb, &probes, None)?;
    let (fa, fb) = (ma.default_fingerprint()?, mb.default_fingerprint()?);
    let fp_equal = fa == fb;
    let pass = v.equivalent && fp_equal;
    let text = format!(
        "window base {} radius {}\nprobes: {}\ncompared slots: {}\nexceptional slots: {} (threshold {})\nfingerprints equal: {}\nverdict: {} (evidence on a finite window)\n",
        base.pretty(),
        wa.window_radius,
        v.probes.len(),
        v.compared_slots,
        v.exceptional.len(),
        v.threshold,
        fp_equal,
        if v.equivalent { "almost equivalent" } else { "NOT almost equivalent" }
    );
    let mut s = v.to_json(&wa_);
    s["command"] = json!("compare");
    s["fingerprints_equal"] = json!(fp_equal);
    s["pass"] = json!(pass);
    s["window"] = json!({ "base": base, "radius": wa.window_radius });
    Ok(Report { pass, text, structured: s })
}

/// The first `count` points of ℤ_{≥0}^n ordered by coordinate sum, then lexicographically.
fn default_grid(n: usize, count: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![0; n]];
    while out.len() < count {
        layer.sort();
        layer.dedup();
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|p| (0..n).map(move |i| {
                let mut q = p.clone();
                q[i] += 1;
                q
            }))
            .collect();
    }
    out.truncate(count);
    out
}

fn parse_grid(s: &str, n: usize) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|pt| {
            let v: Vec<i64> = pt.split(',').map(|x| x.trim().parse::<i64>()).collect::<std::result::Result<_, _>>()?;
            if v.len() != n {
                bail!("grid point {pt:?} has {} coordinates, expected {n}", v.len());
            }
            Ok(v)
        })
        .collect()
}

fn cmd_degrees(family: &str, n: usize, grid: Option<&str>) -> Result<Report> {
    let fam = Family::parse(family)?;
    if fam != Family::A {
        bail!("degree tables are for type A");
    }
    let g = build_algebra(fam, n)?;
    let pts = match grid {
        Some(s) => parse_grid(s, n)?,
        None => default_grid(n, 10),
    };
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    let mut text = format!("{:<16}", "lambda");
    for k in 1..=n {
        text.push_str(&format!(" {:<9}", format!("deg_{k}")));
    }
    text.push_str(" identity degree-one\n");
    let mut all_ok = true;
    for p in &pts {
        let l = g.from_fundamental_ints(p);
        let degs: Vec<Rat> = (1..=n).map(|k| deg_k(&g, &l, k)).collect::<hweight::Result<_>>()?;
        let id = deg_identity_check(&g, &l)?;
        all_ok &= id.pass;
        let class = wt_normal_form(&g, &l)?;
        // k with 𝓔𝓧𝓣(L(w_k·λ)) of degree one; they all share the central character of λ
        let deg_one: Vec<usize> = (1..=n).filter(|&k| degs[k - 1] == Rat::one()).collect();
        let recog = if deg_one.is_empty() { Vec::new() } else { degree_one_recognition(&g, &class, 1) };
        text.push_str(&format!("{:<16}", format!("{p:?}")));
        for d in &degs {
            text.push_str(&format!(" {:<9}", d.pretty()));
        }
        text.push_str(&format!(" {:<8} {:?}\n", if id.pass { "ok" } else { "FAIL" }, deg_one));
        rows.push(json!({ "lambda": p, "deg": degs, "identity": id, "degree_one_k": deg_one, "degree_one_patterns": recog }));
        weights.push(l);
    }
    let rank = if weights.len() >= n { Some(deg_linear_independence(&g, &weights)?) } else { None };
    let independent = rank == Some(n);
    text.push_str(&format!(
        "independence rank: {}\n",
        rank.map_or("n/a (too few points)".to_string(), |r| format!("{r} of {n}"))
    ));
    let pass = all_ok && (rank.is_none() || independent);
    Ok(Report {
        pass,
        text,
        structured: json!({ "command": "degrees", "family": family, "n": n, "rows": rows, "independence_rank": rank, "pass": pass }),
    })
}
