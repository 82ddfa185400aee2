//! Command-line front end: parse presentation files, dispatch computations,
//! emit tables/JSON/CSV, run the acceptance suite.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error, 3 acceptance
//! suite failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use torext::cohomology::{annihilators, u_total};
use torext::extalgebra::{ext_alg, generation_degree, GenerationVerdict};
use torext::polyring::{parse_presentation, ModulePresentation, Polynomial, RingPresentation};
use torext::resolution::{default_internal_cap, minimal_free_resolution};
use torext::serieslab::{classify, generating_series, lescot_formula_check, SeriesKind};
use torext::sigmalab::{
    bounds_report, corpus_generate, default_probe_params, sigma_probe, CorpusParams,
};

#[derive(Parser)]
#[command(name = "torext", version, about = "Graded commutative-algebra workbench over F_p")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// presentation file (char/vars/ideal plus optional module blocks)
    input: PathBuf,
    /// module name from the file; "k" and "R" always work
    #[arg(long, default_value = "k")]
    module: String,
    /// homological cutoff
    #[arg(long)]
    hdeg: Option<i64>,
    /// internal-degree cutoff
    #[arg(long)]
    ideg: Option<i64>,
    /// filtration / probe depth
    #[arg(long)]
    nmax: Option<i64>,
    /// corpus seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// override the characteristic from the file
    #[arg(long = "char")]
    chr: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal free resolution: Betti table plus differential matrices
    Resolve(Common),
    /// Betti table of a minimal free resolution
    Betti(Common),
    /// Hilbert, Poincare, and Bass series
    Series(Common),
    /// U-filtration dims U_n and the stabilized U
    Useries(Common),
    /// Annihilator spaces A_n / W^n / F^n (artinian rings)
    Annihilators(Common),
    /// Ext-algebra dims, products, and generation degree
    Extalg(Common),
    /// Syzygy Bass-series identity check
    LescotCheck {
        #[command(flatten)]
        common: Common,
        /// syzygy index n
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// comparison degree
        #[arg(long, default_value_t = 8)]
        deg: i64,
    },
    /// Ring classification flags (regular / Gorenstein / Golod evidence)
    Classify(Common),
    /// Sigma probe over a generated corpus, with bound cross-checks
    SigmaProbe {
        #[command(flatten)]
        common: Common,
        /// candidate nonzerodivisor for the descent bound
        #[arg(long)]
        nzd: Option<String>,
    },
    /// Run the acceptance suite (exit 3 on failure)
    Suite,
}

struct Report {
    title: String,
    meta: Vec<(String, String)>,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    json: serde_json::Value,
}

fn emit(r: &Report, fmt: Format) {
    match fmt {
        Format::Json => {
            let mut obj = r.json.clone();
            if let serde_json::Value::Object(ref mut map) = obj {
                for (k, v) in &r.meta {
                    map.entry(k.clone()).or_insert_with(|| json!(v));
                }
            }
            println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
        }
        Format::Csv => {
            for (k, v) in &r.meta {
                println!("# {k} = {v}");
            }
            println!("{}", r.headers.join(","));
            for row in &r.rows {
                println!("{}", row.join(","));
            }
        }
        Format::Table => {
            println!("{}", r.title);
            for (k, v) in &r.meta {
                println!("  {k}: {v}");
            }
            if r.headers.is_empty() {
                return;
            }
            let mut widths: Vec<usize> = r.headers.iter().map(|h| h.len()).collect();
            for row in &r.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:>w$}", c, w = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("  {}", line(&r.headers));
            for row in &r.rows {
                println!("  {}", line(row));
            }
        }
    }
}

enum CliError {
    Usage(String),
    Compute(torext::Error),
}

impl From<torext::Error> for CliError {
    fn from(e: torext::Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(common: &Common) -> CliResult<(Arc<RingPresentation>, ModulePresentation)> {
    let mut text = std::fs::read_to_string(&common.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", common.input.display())))?;
    if let Some(p) = common.chr {
        let mut had = false;
        let replaced: Vec<String> = text
            .lines()
            .map(|l| {
                if l.trim_start().starts_with("char") {
                    had = true;
                    format!("char {p}")
                } else {
                    l.to_string()
                }
            })
            .collect();
        text = if had { replaced.join("\n") } else { format!("char {p}\n{text}") };
    }
    let parsed = parse_presentation(&text)?;
    let module = match common.module.as_str() {
        "k" => parsed
            .modules
            .iter()
            .find(|(n, _)| n == "k")
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| ModulePresentation::residue_field(&parsed.ring)),
        "R" => parsed
            .modules
            .iter()
            .find(|(n, _)| n == "R")
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| ModulePresentation::free_rank_one(&parsed.ring)),
        name => parsed
            .modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| CliError::Usage(format!("module '{name}' not found in input")))?,
    };
    Ok((parsed.ring, module))
}

fn hdeg_of(c: &Common) -> i64 {
    c.hdeg.unwrap_or(6)
}

fn ideg_of(c: &Common, ring: &RingPresentation, m: &ModulePresentation, h: i64) -> i64 {
    c.ideg.unwrap_or_else(|| {
        default_internal_cap(ring, h) + m.row_twists.iter().max().copied().unwrap_or(0)
    })
}

fn window_meta(h: i64, j: i64) -> Vec<(String, String)> {
    vec![
        ("homological window".into(), format!("0..={h}")),
        ("internal cutoff".into(), j.to_string()),
    ]
}

fn cmd_resolve(c: &Common, with_matrices: bool) -> CliResult<Report> {
    let (ring, m) = load(c)?;
    let h = hdeg_of(c);
    let j = ideg_of(c, &ring, &m, h);
    let res = minimal_free_resolution(&m, h, j)?;
    let bt = res.betti_table()?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (&(i, jj), &b) in &bt {
        rows.push(vec![i.to_string(), jj.to_string(), b.to_string()]);
    }
    let mut meta = window_meta(h, j);
    meta.push(("module".into(), c.module.clone()));
    meta.push(("minimal".into(), res.entries_minimal().to_string()));
    if with_matrices {
        for i in (res.lo + 1)..=res.hi {
            let mat = res.diff(i);
            let rendered: Vec<String> = mat
                .iter()
                .map(|row| {
                    row.iter().map(|p| p.render(&ring.var_names)).collect::<Vec<_>>().join(", ")
                })
                .collect();
            meta.push((format!("d_{i}"), format!("[{}]", rendered.join(" | "))));
        }
    }
    Ok(Report {
        title: format!("minimal free resolution of {} (Betti table)", c.module),
        meta,
        headers: vec!["i".into(), "j".into(), "beta".into()],
        rows,
        json: res.to_json(),
    })
}

fn cmd_series(c: &Common) -> CliResult<Report> {
    let (ring, m) = load(c)?;
    let h = hdeg_of(c);
    let p = generating_series(&m, SeriesKind::Poincare, h)?;
    let b = generating_series(&m, SeriesKind::Bass, h)?;
    let hs = ring.hilbert_series(h);
    let rows: Vec<Vec<String>> = (0..=h)
        .map(|i| {
            vec![i.to_string(), hs.coeff(i).to_string(), p.coeff(i).to_string(), b.coeff(i).to_string()]
        })
        .collect();
    Ok(Report {
        title: format!("Hilbert / Poincare / Bass series for {}", c.module),
        meta: vec![("degree window".into(), format!("0..={h}"))],
        headers: vec!["i".into(), "hilbert_R".into(), "poincare".into(), "bass".into()],
        rows,
        json: json!({
            "window": h,
            "hilbert": hs,
            "poincare": p,
            "bass": b,
        }),
    })
}

fn cmd_useries(c: &Common) -> CliResult<Report> {
    let (ring, m) = load(c)?;
    let h = hdeg_of(c);
    let (default_n, _) = default_probe_params(&ring);
    let n_max = c.nmax.unwrap_or(default_n);
    let ut = u_total(&m, n_max, h)?;
    let mut rows = Vec::new();
    for u in &ut.per_n {
        for (&(i, j), &d) in &u.dims {
            rows.push(vec![u.n.to_string(), i.to_string(), j.to_string(), d.to_string()]);
        }
    }
    let per_n: Vec<serde_json::Value> = ut
        .per_n
        .iter()
        .map(|u| {
            json!({
                "n": u.n,
                "dims": u.dims.iter().map(|(&(i, j), &d)| json!([i, j, d])).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Report {
        title: format!("U-filtration of {}", c.module),
        meta: vec![
            ("homological window".into(), format!("0..={h}")),
            ("n_max".into(), n_max.to_string()),
            ("stabilized".into(), ut.stabilized.to_string()),
            ("n_star".into(), format!("{:?}", ut.n_star)),
            ("dim U".into(), ut.u.total_dim().to_string()),
        ],
        headers: vec!["n".into(), "i".into(), "j".into(), "dim U_n".into()],
        rows,
        json: json!({
            "window": h,
            "n_max": n_max,
            "stabilized": ut.stabilized,
            "n_star": ut.n_star,
            "per_n": per_n,
        }),
    })
}

fn cmd_annihilators(c: &Common) -> CliResult<Report> {
    let (ring, m) = load(c)?;
    let h = hdeg_of(c);
    let n = c.nmax.unwrap_or(2);
    let ann = annihilators(&m, n, h)?;
    let mut rows = Vec::new();
    let mut jrows = Vec::new();
    for (&(p, q), w) in &ann.w {
        rows.push(vec![
            "A/W".into(),
            p.to_string(),
            q.to_string(),
            ann.dim_a(p, q).to_string(),
            w.dim().to_string(),
        ]);
        jrows.push(json!({"kind": "AW", "p": p, "q": q, "dim_a": ann.dim_a(p, q), "dim_w": w.dim()}));
    }
    for (&(i, t), f) in &ann.f {
        rows.push(vec!["F".into(), i.to_string(), t.to_string(), String::new(), f.dim().to_string()]);
        jrows.push(json!({"kind": "F", "i": i, "t": t, "dim_f": f.dim()}));
    }
    let _ = ring;
    Ok(Report {
        title: format!("annihilator spaces of {} at n = {n}", c.module),
        meta: vec![
            ("homological window".into(), format!("0..={h}")),
            ("n".into(), n.to_string()),
        ],
        headers: vec!["kind".into(), "deg".into(), "twist".into(), "dim_a".into(), "dim".into()],
        rows,
        json: json!({"window": h, "n": n, "spaces": jrows}),
    })
}

fn cmd_extalg(c: &Common) -> CliResult<Report> {
    let (ring, _) = load(c)?;
    let h = hdeg_of(c);
    let alg = ext_alg(&ring, h)?;
    let free = ModulePresentation::free_rank_one(&ring);
    let er = torext::cohomology::ext_k(&free, h)?;
    let verdict = generation_degree(&alg, &er, h)?;
    let rows: Vec<Vec<String>> =
        (0..=h).map(|n| vec![n.to_string(), alg.dim(n).to_string()]).collect();
    let gen_str = match &verdict {
        GenerationVerdict::Generated { s } => format!("generated in degrees <= {s}"),
        GenerationVerdict::NotWithinWindow { profile } => {
            format!("not certified within window (cokernel profile {profile:?})")
        }
    };
    let table = torext::extalgebra::multiplication_table_json(&alg, h.min(3))?;
    Ok(Report {
        title: "Ext algebra E(k)".into(),
        meta: vec![
            ("homological window".into(), format!("0..={h}")),
            ("generation".into(), gen_str.clone()),
        ],
        headers: vec!["n".into(), "dim E^n(k)".into()],
        rows,
        json: json!({
            "window": h,
            "dims": (0..=h).map(|n| alg.dim(n)).collect::<Vec<_>>(),
            "generation": gen_str,
            "products": table,
        }),
    })
}

fn cmd_lescot(c: &Common, n: i64, deg: i64) -> CliResult<Report> {
    let (_, m) = load(c)?;
    let chk = lescot_formula_check(&m, n, deg)?;
    let lo = chk.left.valuation.min(chk.right.valuation).min(0);
    let hi = deg;
    let rows: Vec<Vec<String>> = (lo..=hi)
        .map(|i| {
            vec![i.to_string(), chk.left.coeff(i).to_string(), chk.right.coeff(i).to_string()]
        })
        .collect();
    Ok(Report {
        title: format!(
            "syzygy Bass-series identity for {} at n = {n}: {}",
            c.module,
            if chk.holds { "holds" } else { "FAILS" }
        ),
        meta: vec![
            ("degree window".into(), format!("{lo}..={hi}")),
            ("holds".into(), chk.holds.to_string()),
        ],
        headers: vec!["degree".into(), "left".into(), "right".into()],
        rows,
        json: serde_json::to_value(&chk).expect("serializable"),
    })
}

fn cmd_classify(c: &Common) -> CliResult<Report> {
    let (ring, _) = load(c)?;
    let h = hdeg_of(c);
    let cls = classify(&ring, h)?;
    let rows = vec![
        vec!["regular".into(), cls.regular.to_string()],
        vec![
            "gorenstein".into(),
            cls.gorenstein.map(|b| b.to_string()).unwrap_or_else(|| "unknown".into()),
        ],
        vec!["golod-evidence".into(), cls.golod_evidence.to_string()],
    ];
    Ok(Report {
        title: "ring classification".into(),
        meta: std::iter::once(("window".to_string(), h.to_string()))
            .chain(cls.notes.iter().map(|n| ("note".to_string(), n.clone())))
            .collect(),
        headers: vec!["flag".into(), "value".into()],
        rows,
        json: serde_json::to_value(&cls).expect("serializable"),
    })
}

fn cmd_sigma(c: &Common, nzd: Option<&str>) -> CliResult<Report> {
    let (ring, _) = load(c)?;
    let (default_n, default_w) = default_probe_params(&ring);
    let n_max = c.nmax.unwrap_or(default_n);
    let window = c.hdeg.unwrap_or(default_w);
    let params = CorpusParams { seed: c.seed, ..Default::default() };
    let corpus = corpus_generate(&ring, &params)?;
    let rep = sigma_probe(&corpus, n_max, window)?;
    let nzd_poly = match nzd {
        Some(s) => Some(Polynomial::parse(ring.field, &ring.var_names, s)?),
        None => None,
    };
    let bounds = bounds_report(&ring, &rep, nzd_poly.as_ref())?;
    let mut rows: Vec<Vec<String>> = rep
        .entries
        .iter()
        .map(|e| {
            vec![
                e.tag.clone(),
                e.least_n.map(|n| n.to_string()).unwrap_or_else(|| "none".into()),
                e.window.to_string(),
            ]
        })
        .collect();
    for b in &bounds.checks {
        rows.push(vec![
            format!("bound: {}", b.name),
            b.pass.map(|p| if p { "pass" } else { "FAIL" }.into()).unwrap_or_else(|| "skipped".to_string()),
            b.observed.clone(),
        ]);
    }
    Ok(Report {
        title: format!("sigma probe over {}", rep.ring),
        meta: vec![
            ("corpus size".into(), rep.entries.len().to_string()),
            ("n_max".into(), n_max.to_string()),
            ("requested window".into(), window.to_string()),
            ("seed".into(), c.seed.to_string()),
            ("evidence".into(), rep.evidence()),
        ],
        headers: vec!["entry".into(), "least_n".into(), "window".into()],
        rows,
        json: json!({
            "probe": rep.to_json(),
            "bounds": bounds.to_json(),
            "seed": c.seed,
        }),
    })
}

fn cmd_suite() -> ExitCode {
    let results = torext::suite::run_all();
    let mut ok = true;
    for r in &results {
        println!("{}", r.line());
        ok &= r.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn dispatch(cmd: &Cmd) -> CliResult<(Report, Format)> {
    match cmd {
        Cmd::Resolve(c) => Ok((cmd_resolve(c, true)?, c.format)),
        Cmd::Betti(c) => Ok((cmd_resolve(c, false)?, c.format)),
        Cmd::Series(c) => Ok((cmd_series(c)?, c.format)),
        Cmd::Useries(c) => Ok((cmd_useries(c)?, c.format)),
        Cmd::Annihilators(c) => Ok((cmd_annihilators(c)?, c.format)),
        Cmd::Extalg(c) => Ok((cmd_extalg(c)?, c.format)),
        Cmd::LescotCheck { common, n, deg } => Ok((cmd_lescot(common, *n, *deg)?, common.format)),
        Cmd::Classify(c) => Ok((cmd_classify(c)?, c.format)),
        Cmd::SigmaProbe { common, nzd } => {
            Ok((cmd_sigma(common, nzd.as_deref())?, common.format))
        }
        Cmd::Suite => unreachable!("suite handled before dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(cli.cmd, Cmd::Suite) {
        return cmd_suite();
    }
    match dispatch(&cli.cmd) {
        Ok((report, fmt)) => {
            emit(&report, fmt);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
