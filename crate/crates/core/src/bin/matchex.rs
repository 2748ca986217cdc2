//! Command-line surface: constructions, counting, the brute-force oracle,
//! verification runs, and structure parameters.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use matchex::canon::canonical_graph6;
use matchex::construct::ConstructionSpec;
use matchex::counting::{count_copies, matching_profile};
use matchex::enumerate::{ex_brute_with, for_each_graph, ExBruteOptions, ExtremalResult};
use matchex::matching::{b_param_blowup, max_matching, structure_params};
use matchex::names::parse_graph;
use matchex::theorems::{
    run_verification, TheoremId, VerificationReport, VerifyRequest, ALL_THEOREMS,
};
use matchex::{build, to_graph6, Error, Graph};

const CACHE_ENV: &str = "MATCHEX_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "matchex",
    version,
    about = "Exact workbench for matching counts and forbidden-matching extremal numbers",
    long_about = None,
    after_help = "CSV columns:\n\
      construct: label,graph6,n,edges,degree_sequence,nu\n\
      count:     h,g,count   (profile mode: g,t,count per row)\n\
      exbrute:   n,h,f,value,searched,extremal\n\
      enumerate: graph6 per row\n\
      verify:    theorem,status,n,t,k,s,r,formula,oracle,ok,note\n\
      bparam:    h,s,tau,alpha,nu,b[,blowup_b]\n\
    Counts are exact decimal strings. MATCHEX_CACHE_DIR (or --cache-dir)\n\
    caches matching profiles keyed by canonical graph6."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for verification runs
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named construction: complete/path/star/matching/cycle/
    /// turan/splith/gnkl/friendship/cliqueunion/expr with numeric args
    Construct {
        kind: String,
        args: Vec<String>,
    },
    /// Count copies of H in G, or the matching profile of G
    Count {
        /// Pattern expression (required unless --profile)
        #[arg(long)]
        h: Option<String>,
        /// Host graph expression or graph6
        #[arg(long)]
        g: String,
        /// Print the whole matching profile c_0..c_nu of G
        #[arg(long)]
        profile: bool,
        /// Cache directory for profiles (defaults to MATCHEX_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Exact ex(n, H, F) over all F-free graphs on n vertices
    Exbrute {
        n: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        f: String,
        /// Permit the expensive n = 10 search
        #[arg(long)]
        allow_n10: bool,
    },
    /// One canonical graph6 line per isomorphism class on n vertices
    Enumerate {
        n: usize,
        /// Skip graphs containing this forbidden subgraph
        #[arg(long)]
        free: Option<String>,
        #[arg(long)]
        allow_n10: bool,
    },
    /// Replay verification procedures; nonzero exit if any FAILS
    Verify {
        /// Theorem ids (default: all): PROP1_UB LEMMA2 PROP3_STRICT
        /// PROP4_I PROP4_II STAR_THM FAUDREE_SCHELP PATH_THM TAU_PROP
        /// MINDEG_PROP LIU_ZHANG B_PARAM_AGREE
        ids: Vec<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        tmax: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        f: Option<String>,
    },
    /// Vertex cover, independence and matching numbers plus b(H,s)
    Bparam {
        #[arg(long)]
        h: String,
        #[arg(long)]
        s: usize,
        /// Also run the blowup characterization with this multiplicity
        #[arg(long)]
        m: Option<usize>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidSpec(_) | Error::InvalidParams(_) | Error::MalformedEncoding(_) => 2,
        Error::SizeCap { .. } => 3,
        Error::InternalInconsistency(_) => 4,
    }
}

fn run(cli: Cli) -> matchex::Result<i32> {
    let format = cli.format;
    let out = cli.out.clone();
    match cli.cmd {
        Cmd::Construct { kind, args } => {
            let (label, graph) = construct_graph(&kind, &args)?;
            let (nu, _) = max_matching(&graph);
            let summary = ConstructOut {
                label,
                graph6: to_graph6(&graph),
                n: graph.n(),
                edges: graph.edge_count(),
                degree_sequence: graph.degree_sequence(),
                nu,
            };
            emit(format, &out, &summary, construct_table, construct_csv)?;
            Ok(0)
        }
        Cmd::Count {
            h,
            g,
            profile,
            cache_dir,
        } => {
            let host = parse_graph(&g)?;
            if profile {
                let payload = profile_with_cache(&g, &host, cache_dir)?;
                emit(format, &out, &payload, profile_table, profile_csv)?;
            } else {
                let hexpr = h.ok_or_else(|| {
                    Error::InvalidParams("--h is required unless --profile is given".into())
                })?;
                let pattern = parse_graph(&hexpr)?;
                let count = count_copies(&pattern, &host)?;
                let payload = CountOut {
                    h: hexpr,
                    g,
                    count: count.to_string(),
                };
                emit(format, &out, &payload, count_table, count_csv)?;
            }
            Ok(0)
        }
        Cmd::Exbrute {
            n,
            h,
            f,
            allow_n10,
        } => {
            let hg = parse_graph(&h)?;
            let fg = parse_graph(&f)?;
            let mut result = ex_brute_with(n, &hg, &fg, ExBruteOptions { allow_n10 })?;
            result.h_spec = h;
            result.f_spec = f;
            emit(format, &out, &result, exbrute_table, exbrute_csv)?;
            Ok(0)
        }
        Cmd::Enumerate { n, free, allow_n10 } => {
            if n > 9 && !allow_n10 {
                return Err(Error::SizeCap {
                    what: "enumeration order (pass --allow-n10 to override)",
                    limit: 9,
                    got: n,
                });
            }
            let prune = free.as_deref().map(parse_graph).transpose()?;
            let mut lines = Vec::new();
            for_each_graph(n, prune.as_ref(), |g| lines.push(to_graph6(g)))?;
            let text = match format {
                Format::Table | Format::Csv => format!("{}\n", lines.join("\n")),
                Format::Json => {
                    serde_json::to_string_pretty(&lines).expect("serializable") + "\n"
                }
            };
            write_out(&out, &text)?;
            Ok(0)
        }
        Cmd::Verify {
            ids,
            nmax,
            tmax,
            t,
            k,
            r,
            s,
            h,
            f,
        } => {
            let mut theorem_ids: Vec<TheoremId> = if ids.is_empty() {
                ALL_THEOREMS.to_vec()
            } else {
                ids.iter()
                    .map(|s| TheoremId::from_str(s))
                    .collect::<matchex::Result<_>>()?
            };
            theorem_ids.sort_by_key(|id| id.to_string());
            theorem_ids.dedup();
            let request = VerifyRequest {
                n_max: nmax,
                t_max: tmax,
                t,
                k,
                r,
                s,
                h: h.map(|expr| Ok::<_, Error>((expr.clone(), parse_graph(&expr)?)))
                    .transpose()?,
                f: f.map(|expr| Ok::<_, Error>((expr.clone(), parse_graph(&expr)?)))
                    .transpose()?,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.workers as usize)
                .build()
                .expect("thread pool");
            let results: Vec<matchex::Result<Vec<VerificationReport>>> = pool.install(|| {
                theorem_ids
                    .par_iter()
                    .map(|id| run_verification(*id, &request))
                    .collect()
            });
            let mut reports = Vec::new();
            for r in results {
                reports.extend(r?);
            }
            reports.sort_by(|a, b| {
                let ka = (
                    a.theorem.to_string(),
                    serde_json::to_string(&a.params).unwrap_or_default(),
                );
                let kb = (
                    b.theorem.to_string(),
                    serde_json::to_string(&b.params).unwrap_or_default(),
                );
                ka.cmp(&kb)
            });
            let failed = reports.iter().filter(|r| !r.passed()).count();
            emit(format, &out, &reports, verify_table, verify_csv)?;
            Ok(if failed > 0 { 1 } else { 0 })
        }
        Cmd::Bparam { h, s, m } => {
            let pattern = parse_graph(&h)?;
            let sp = structure_params(&pattern, s)?;
            let blowup_b = m.map(|m| b_param_blowup(&pattern, s, m)).transpose()?;
            let payload = BparamOut {
                h,
                s,
                tau: sp.tau,
                alpha: sp.alpha,
                nu: sp.nu,
                b: sp.b,
                blowup_b,
            };
            emit(format, &out, &payload, bparam_table, bparam_csv)?;
            Ok(0)
        }
    }
}

// ----------------------------------------------------------------------
// Construct
// ----------------------------------------------------------------------

fn construct_graph(kind: &str, args: &[String]) -> matchex::Result<(String, Graph)> {
    use ConstructionSpec::*;
    let nums: Vec<usize> = args
        .iter()
        .map(|a| {
            a.parse::<usize>()
                .map_err(|_| Error::InvalidSpec(format!("expected a number, got {a:?}")))
        })
        .collect::<matchex::Result<_>>()
        .unwrap_or_default();
    let want = |count: usize| -> matchex::Result<()> {
        if nums.len() == count && args.len() == count {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "{kind} takes {count} numeric argument(s)"
            )))
        }
    };
    let spec = match kind.to_ascii_lowercase().as_str() {
        "complete" => {
            want(1)?;
            Complete(nums[0])
        }
        "path" => {
            want(1)?;
            Path(nums[0])
        }
        "star" => {
            want(1)?;
            Star(nums[0])
        }
        "matching" => {
            want(1)?;
            Matching(nums[0])
        }
        "cycle" => {
            want(1)?;
            Cycle(nums[0])
        }
        "friendship" => {
            want(1)?;
            Friendship(nums[0])
        }
        "turan" => {
            want(2)?;
            Turan {
                n: nums[0],
                parts: nums[1],
            }
        }
        "splith" => {
            want(3)?;
            Split {
                n: nums[0],
                k: nums[1],
                a: nums[2],
            }
        }
        "gnkl" => {
            want(3)?;
            FaudreeSchelp {
                n: nums[0],
                k: nums[1],
                l: nums[2],
            }
        }
        "cliqueunion" => {
            want(3)?;
            CliqueUnion {
                a: nums[0],
                k: nums[1],
                b: nums[2],
            }
        }
        "expr" => {
            let expr = args.join(" ");
            let g = parse_graph(&expr)?;
            return Ok((expr, g));
        }
        other => {
            return Err(Error::InvalidSpec(format!(
                "unknown construction kind {other:?}"
            )))
        }
    };
    Ok((spec.to_string(), build(&spec)?))
}

#[derive(Serialize)]
struct ConstructOut {
    label: String,
    graph6: String,
    n: usize,
    edges: usize,
    degree_sequence: Vec<usize>,
    nu: usize,
}

fn construct_table(o: &ConstructOut) -> String {
    format!(
        "{}\n  graph6: {}\n  n: {}  edges: {}  nu: {}\n  degrees: {:?}\n",
        o.label, o.graph6, o.n, o.edges, o.nu, o.degree_sequence
    )
}

fn construct_csv(o: &ConstructOut) -> String {
    let degs: Vec<String> = o.degree_sequence.iter().map(|d| d.to_string()).collect();
    format!(
        "label,graph6,n,edges,degree_sequence,nu\n{},{},{},{},{},{}\n",
        csv_field(&o.label),
        csv_field(&o.graph6),
        o.n,
        o.edges,
        csv_field(&degs.join(" ")),
        o.nu
    )
}

// ----------------------------------------------------------------------
// Count
// ----------------------------------------------------------------------

#[derive(Serialize)]
struct CountOut {
    h: String,
    g: String,
    count: String,
}

fn count_table(o: &CountOut) -> String {
    format!("N({}, {}) = {}\n", o.h, o.g, o.count)
}

fn count_csv(o: &CountOut) -> String {
    format!(
        "h,g,count\n{},{},{}\n",
        csv_field(&o.h),
        csv_field(&o.g),
        o.count
    )
}

#[derive(Serialize, serde::Deserialize)]
struct ProfilePayload {
    graph6: String,
    profile: Vec<String>,
    nu: usize,
}

#[derive(Serialize)]
struct ProfileOut {
    g: String,
    #[serde(flatten)]
    payload: ProfilePayload,
}

fn profile_with_cache(
    expr: &str,
    host: &Graph,
    cache_dir: Option<PathBuf>,
) -> matchex::Result<ProfileOut> {
    let canon = canonical_graph6(host);
    let dir = cache_dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let path = dir.map(|d| {
        let mut name = String::with_capacity(canon.len() * 2);
        for b in canon.bytes() {
            name.push_str(&format!("{b:02x}"));
        }
        d.join(format!("{name}.json"))
    });
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(payload) = serde_json::from_str::<ProfilePayload>(&text) {
                if payload.graph6 == canon {
                    return Ok(ProfileOut {
                        g: expr.to_string(),
                        payload,
                    });
                }
            }
        }
    }
    let profile = matching_profile(host);
    let payload = ProfilePayload {
        graph6: canon,
        profile: profile.counts().iter().map(|c| c.to_string()).collect(),
        nu: profile.nu(),
    };
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Ok(text) = serde_json::to_string_pretty(&payload) {
            let _ = std::fs::write(p, text + "\n");
        }
    }
    Ok(ProfileOut {
        g: expr.to_string(),
        payload,
    })
}

fn profile_table(o: &ProfileOut) -> String {
    format!(
        "profile of {} (canonical {}):\n  {}\n  nu = {}\n",
        o.g,
        o.payload.graph6,
        o.payload.profile.join(", "),
        o.payload.nu
    )
}

fn profile_csv(o: &ProfileOut) -> String {
    let mut s = String::from("g,t,count\n");
    for (t, c) in o.payload.profile.iter().enumerate() {
        s.push_str(&format!("{},{t},{c}\n", csv_field(&o.g)));
    }
    s
}

// ----------------------------------------------------------------------
// Exbrute
// ----------------------------------------------------------------------

fn exbrute_table(r: &ExtremalResult) -> String {
    format!(
        "ex({}, {}, {}) = {}\n  searched {} classes\n  extremal: {}\n",
        r.n,
        r.h_spec,
        r.f_spec,
        r.value,
        r.searched,
        r.extremal.join(" ")
    )
}

fn exbrute_csv(r: &ExtremalResult) -> String {
    format!(
        "n,h,f,value,searched,extremal\n{},{},{},{},{},{}\n",
        r.n,
        csv_field(&r.h_spec),
        csv_field(&r.f_spec),
        r.value,
        r.searched,
        csv_field(&r.extremal.join(" "))
    )
}

// ----------------------------------------------------------------------
// Verify
// ----------------------------------------------------------------------

fn verify_table(reports: &Vec<VerificationReport>) -> String {
    use matchex::theorems::VerifyStatus;
    let mut s = String::new();
    for rep in reports {
        let status = match &rep.status {
            VerifyStatus::Holds => "HOLDS".to_string(),
            VerifyStatus::HoldsFrom(n0) => format!("HOLDS_FROM({n0})"),
            VerifyStatus::Fails { witness, note } => {
                format!("FAILS (witness {witness}; {note})")
            }
        };
        let params = serde_json::to_string(&rep.params).unwrap_or_default();
        s.push_str(&format!(
            "{:<16} {status:<18} {} rows  {params}\n",
            rep.theorem.to_string(),
            rep.details.len()
        ));
        for row in rep.details.iter().filter(|r| !r.ok) {
            s.push_str(&format!(
                "    row n={:?} t={:?} k={:?} s={:?}: formula {} vs oracle {}{}\n",
                row.n,
                row.t,
                row.k,
                row.s,
                row.formula,
                row.oracle,
                row.note
                    .as_deref()
                    .map(|n| format!(" ({n})"))
                    .unwrap_or_default()
            ));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    s.push_str(&format!(
        "{} report(s), {} failed\n",
        reports.len(),
        failed
    ));
    s
}

fn verify_csv(reports: &Vec<VerificationReport>) -> String {
    use matchex::theorems::VerifyStatus;
    let mut s = String::from("theorem,status,n,t,k,s,r,formula,oracle,ok,note\n");
    for rep in reports {
        let status = match &rep.status {
            VerifyStatus::Holds => "HOLDS".to_string(),
            VerifyStatus::HoldsFrom(n0) => format!("HOLDS_FROM({n0})"),
            VerifyStatus::Fails { .. } => "FAILS".to_string(),
        };
        for row in &rep.details {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                rep.theorem,
                status,
                opt(row.n),
                opt(row.t),
                opt(row.k),
                opt(row.s),
                opt(row.r),
                csv_field(&row.formula),
                csv_field(&row.oracle),
                row.ok,
                csv_field(row.note.as_deref().unwrap_or(""))
            ));
        }
    }
    s
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

// ----------------------------------------------------------------------
// Bparam
// ----------------------------------------------------------------------

#[derive(Serialize)]
struct BparamOut {
    h: String,
    s: usize,
    tau: usize,
    alpha: usize,
    nu: usize,
    b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blowup_b: Option<Option<usize>>,
}

fn bparam_table(o: &BparamOut) -> String {
    let b = o
        .b
        .map_or_else(|| "NONE (contains the matching)".to_string(), |b| b.to_string());
    let mut s = format!(
        "{} with s = {}: tau = {}, alpha = {}, nu = {}, b = {b}\n",
        o.h, o.s, o.tau, o.alpha, o.nu
    );
    if let Some(bb) = &o.blowup_b {
        let bb = bb.map_or_else(|| "NONE".to_string(), |b| b.to_string());
        s.push_str(&format!("blowup characterization: b = {bb}\n"));
    }
    s
}

fn bparam_csv(o: &BparamOut) -> String {
    let b = o.b.map_or_else(String::new, |b| b.to_string());
    match &o.blowup_b {
        None => format!(
            "h,s,tau,alpha,nu,b\n{},{},{},{},{},{b}\n",
            csv_field(&o.h),
            o.s,
            o.tau,
            o.alpha,
            o.nu
        ),
        Some(bb) => {
            let bb = bb.map_or_else(String::new, |x| x.to_string());
            format!(
                "h,s,tau,alpha,nu,b,blowup_b\n{},{},{},{},{},{b},{bb}\n",
                csv_field(&o.h),
                o.s,
                o.tau,
                o.alpha,
                o.nu
            )
        }
    }
}

// ----------------------------------------------------------------------
// Output plumbing
// ----------------------------------------------------------------------

fn emit<T: Serialize>(
    format: Format,
    out: &Option<PathBuf>,
    value: &T,
    table: impl Fn(&T) -> String,
    csv: impl Fn(&T) -> String,
) -> matchex::Result<()> {
    let text = match format {
        Format::Table => table(value),
        Format::Csv => csv(value),
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
    };
    write_out(out, &text)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> matchex::Result<()> {
    match out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidParams(format!("cannot write output: {e}")))?;
        }
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Error::InvalidParams(format!("cannot write {path:?}: {e}")))?;
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
