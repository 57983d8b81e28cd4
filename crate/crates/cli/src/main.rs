//! Command line front end: decompose signed Young permutation modules,
//! emit signed p-Kostka tables, and machine-check the classification and
//! reduction statements.
//!
//! Exit codes: 0 all checks pass, 1 a violation was found, 2 a computation
//! was left unresolved (budget or cap), 3 usage error.

use clap::{Args, Parser, Subcommand};
use skostka::combinatorics::{BiComposition, Composition, Partition};
use skostka::registry::{
    verify_example_6_1, verify_klyachko, verify_labels, verify_lemma_6_1, verify_thm_1_1,
    verify_thm_1_2, verify_thm_1_3, verify_thm_1_4, KostkaEntry, KostkaTable, Session,
    Thm13Params,
};
use skostka::rep::{end_algebra, vertex_shape_of};
use skostka::{Caps, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "skostka",
    about = "signed Young permutation modules over F_p and signed p-Kostka numbers",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Odd prime characteristic.
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Seed for all randomized searches.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Dimension cap for module decompositions.
    #[arg(long)]
    cap: Option<u64>,
    /// Registry cache directory; SKOSTKA_CACHE_DIR is honored, the flag
    /// wins.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl Common {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = self.cap {
            caps.rep_dim = c;
        }
        caps
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os("SKOSTKA_CACHE_DIR").map(PathBuf::from))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose M(alpha|beta) and print the summand labels.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Alpha as comma-separated parts, empty for the empty composition.
        #[arg(long, default_value = "")]
        alpha: String,
        /// Beta as comma-separated parts.
        #[arg(long, default_value = "")]
        beta: String,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Emit the full signed p-Kostka table of a degree.
    Kostka {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u32,
        /// brute, klyachko, or both (both aborts on any divergence).
        #[arg(long, default_value = "brute")]
        method: String,
        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Worker threads over independent shapes.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Machine-check one of the named statements.
    Verify {
        /// thm1.1, thm1.2, thm1.3, thm1.4, labels, example6.1, lemma6.1,
        /// or klyachko.
        name: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        /// Extra shapes for thm1.4, repeated, as "alpha|beta".
        #[arg(long)]
        extra: Vec<String>,
        // thm1.3 instance parameters
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        pi_tilde: Option<String>,
        #[arg(long)]
        lam: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        phi_tilde: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        k: Option<u32>,
    },
}

fn parse_comp(s: &str) -> Result<Composition, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Composition::empty());
    }
    let parts: Result<Vec<u32>, _> = s.split(',').map(|x| x.trim().parse::<u32>()).collect();
    parts
        .map(Composition::new)
        .map_err(|e| format!("bad composition {:?}: {}", s, e))
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let c = parse_comp(s)?;
    Partition::from_composition(&c).map_err(|e| e.to_string())
}

fn parse_shape(s: &str) -> Result<BiComposition, String> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| format!("shape {:?} must look like \"2,1|3\"", s))?;
    Ok(BiComposition::new(parse_comp(a)?, parse_comp(b)?))
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::Unresolved(_) | Error::DimensionCap { .. } | Error::GroupCap { .. } => {
            ExitCode::from(2)
        }
        Error::Invalid(_) | Error::SizeMismatch(_) | Error::BadPrime(_) => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn table_to_csv(table: &KostkaTable) -> String {
    let dash = |v: &[u32]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("-")
    };
    let mut out = String::from("alpha,beta,lambda,mu,mult\n");
    for e in &table.entries {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            dash(&e.alpha),
            dash(&e.beta),
            dash(&e.lambda),
            dash(&e.mu),
            e.mult
        ));
    }
    out
}

#[cfg(test)]
fn csv_to_table(p: u64, n: u32, csv: &str) -> Result<KostkaTable, String> {
    let undash = |s: &str| -> Result<Vec<u32>, String> {
        if s.is_empty() {
            return Ok(vec![]);
        }
        s.split('-')
            .map(|x| x.parse::<u32>().map_err(|e| e.to_string()))
            .collect()
    };
    let mut entries = Vec::new();
    for line in csv.lines().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(format!("bad csv row {:?}", line));
        }
        entries.push(KostkaEntry {
            alpha: undash(cols[0])?,
            beta: undash(cols[1])?,
            lambda: undash(cols[2])?,
            mu: undash(cols[3])?,
            mult: cols[4].parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
        });
    }
    Ok(KostkaTable { p, n, entries })
}

fn run_decompose(common: &Common, alpha: &str, beta: &str, format: &str) -> ExitCode {
    let shape = match (parse_comp(alpha), parse_comp(beta)) {
        (Ok(a), Ok(b)) => BiComposition::new(a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {}", e);
            return ExitCode::from(3);
        }
    };
    let mut session = match Session::new(common.p, common.caps(), common.seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_code_for(&e);
        }
    };
    let result = (|| -> skostka::Result<serde_json::Value> {
        let labeled = session.labeled_decomposition(&shape)?;
        let raw = session.decompose_shape(&shape)?;
        let mut summands = Vec::new();
        for (u, (label, dim)) in raw.iter().zip(labeled.iter()) {
            let vertex = vertex_shape_of(u)?;
            let end = end_algebra(u)?;
            summands.push(serde_json::json!({
                "label": {"lambda": label.lambda.parts(), "mu": label.mu.parts()},
                "dim": dim,
                "vertex": vertex.mults(),
                "end_dim": end.dim,
                "display": format!("{} dim {} vertex {} End dim {}", label, dim, vertex, end.dim),
            }));
        }
        Ok(serde_json::json!({
            "p": common.p,
            "alpha": shape.alpha.parts(),
            "beta": shape.beta.parts(),
            "summands": summands,
        }))
    })();
    match result {
        Ok(doc) => {
            if format == "json" {
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                let summands = doc["summands"].as_array().unwrap();
                println!(
                    "M{} over F_{}: {} summand{}",
                    shape,
                    common.p,
                    summands.len(),
                    if summands.len() == 1 { "" } else { "s" }
                );
                for s in summands {
                    println!("  {}", s["display"].as_str().unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}

fn run_kostka(common: &Common, n: u32, method: &str, format: &str, jobs: usize) -> ExitCode {
    let build = |session: &mut Session| -> skostka::Result<KostkaTable> {
        match method {
            "brute" => session.k_table(n, false),
            "both" => session.k_table(n, true),
            "klyachko" => {
                // recursion everywhere; still uses explicit decomposition
                // at the base degrees, as the recursion terminates there
                let all_labels = skostka::combinatorics::labels(n, session.p)?;
                let mut entries = Vec::new();
                for shape in skostka::combinatorics::partition_pairs(n) {
                    for label in &all_labels {
                        let mult = session.klyachko_kostka(&shape, label)?;
                        entries.push(KostkaEntry {
                            alpha: shape.alpha.parts().to_vec(),
                            beta: shape.beta.parts().to_vec(),
                            lambda: label.lambda.parts().to_vec(),
                            mu: label.mu.parts().to_vec(),
                            mult,
                        });
                    }
                }
                Ok(KostkaTable {
                    p: session.p,
                    n,
                    entries,
                })
            }
            other => Err(Error::Invalid(format!(
                "unknown method {:?}; use brute, klyachko, or both",
                other
            ))),
        }
    };

    let result = if jobs > 1 && method != "klyachko" {
        run_kostka_parallel(common, n, method == "both", jobs)
    } else {
        let mut session = match Session::new(common.p, common.caps(), common.seed) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {}", e);
                return exit_code_for(&e);
            }
        };
        if let Some(dir) = common.cache_dir() {
            let _ = skostka::cache::load_registry(&mut session, n, &dir);
        }
        let r = build(&mut session);
        if r.is_ok() {
            if let Some(dir) = common.cache_dir() {
                let _ = skostka::cache::save_registry(&session, n, &dir);
            }
        }
        r
    };
    match result {
        Ok(table) => {
            match format {
                "json" => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
                "csv" => print!("{}", table_to_csv(&table)),
                other => {
                    eprintln!("error: unknown format {:?}", other);
                    return ExitCode::from(3);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}

/// Shape-level parallelism: workers hold independent sessions over chunks
/// of the shape list; entries are merged in the canonical order.
fn run_kostka_parallel(
    common: &Common,
    n: u32,
    cross_check: bool,
    jobs: usize,
) -> skostka::Result<KostkaTable> {
    let shapes = skostka::combinatorics::partition_pairs(n);
    let all_labels = skostka::combinatorics::labels(n, common.p)?;
    let chunks: Vec<Vec<BiComposition>> = shapes
        .chunks(shapes.len().div_ceil(jobs))
        .map(|c| c.to_vec())
        .collect();
    let results: Vec<skostka::Result<Vec<KostkaEntry>>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in &chunks {
            let labels_ref = &all_labels;
            let common = common.clone();
            handles.push(scope.spawn(move || {
                let mut session = Session::new(common.p, common.caps(), common.seed)?;
                let mut entries = Vec::new();
                for shape in chunk {
                    for label in labels_ref {
                        let mult = session.signed_kostka(shape, label)?;
                        if cross_check {
                            let k = session.klyachko_kostka(shape, label)?;
                            if k != mult {
                                return Err(Error::Internal(format!(
                                    "route mismatch at [M{} : {}]: {} vs {}",
                                    shape, label, mult, k
                                )));
                            }
                        }
                        entries.push(KostkaEntry {
                            alpha: shape.alpha.parts().to_vec(),
                            beta: shape.beta.parts().to_vec(),
                            lambda: label.lambda.parts().to_vec(),
                            mu: label.mu.parts().to_vec(),
                            mult,
                        });
                    }
                }
                Ok(entries)
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut entries = Vec::new();
    for r in results {
        entries.extend(r?);
    }
    Ok(KostkaTable {
        p: common.p,
        n,
        entries,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    name: &str,
    common: &Common,
    n: Option<u32>,
    n_max: Option<u32>,
    m: Option<u32>,
    c: Option<u32>,
    m_max: Option<u32>,
    extra: &[String],
    thm13: Option<Thm13Params>,
) -> ExitCode {
    let mut session = match Session::new(common.p, common.caps(), common.seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_code_for(&e);
        }
    };
    let report = (|| -> skostka::Result<skostka::report::ReportDocument> {
        match name {
            "thm1.1" => verify_thm_1_1(&mut session, n.unwrap_or(4)),
            "thm1.2" => verify_thm_1_2(&mut session, n.unwrap_or(2)),
            "thm1.3" => {
                let params = thm13.ok_or_else(|| {
                    Error::Invalid("thm1.3 needs --lam/--mu/--phi/--alpha/--k etc.".into())
                })?;
                verify_thm_1_3(&mut session, &params)
            }
            "thm1.4" => {
                let mut extras = Vec::new();
                for s in extra {
                    extras.push(
                        parse_shape(s).map_err(Error::Invalid)?,
                    );
                }
                verify_thm_1_4(&mut session, n_max.unwrap_or(4), &extras)
            }
            "labels" => verify_labels(&mut session, n_max.unwrap_or(6)),
            "example6.1" => verify_example_6_1(&mut session, m.unwrap_or(1), c.unwrap_or(1)),
            "lemma6.1" => verify_lemma_6_1(&mut session, m_max.unwrap_or(3)),
            "klyachko" => verify_klyachko(&mut session, n.unwrap_or(3)),
            other => Err(Error::Invalid(format!(
                "unknown statement {:?}; use thm1.1, thm1.2, thm1.3, thm1.4, labels, example6.1, lemma6.1, or klyachko",
                other
            ))),
        }
    })();
    match report {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Decompose {
            common,
            alpha,
            beta,
            format,
        } => run_decompose(&common, &alpha, &beta, &format),
        Cmd::Kostka {
            common,
            n,
            method,
            format,
            jobs,
        } => run_kostka(&common, n, &method, &format, jobs.max(1)),
        Cmd::Verify {
            name,
            common,
            n,
            n_max,
            m,
            c,
            m_max,
            extra,
            pi,
            pi_tilde,
            lam,
            mu,
            phi,
            phi_tilde,
            alpha,
            beta,
            k,
        } => {
            let thm13 = if name == "thm1.3" {
                let parse = |s: &Option<String>| -> Result<Composition, String> {
                    s.as_deref().map_or(Ok(Composition::empty()), parse_comp)
                };
                let parse_part = |s: &Option<String>| -> Result<Partition, String> {
                    s.as_deref()
                        .map_or(Ok(Partition::empty()), parse_partition)
                };
                let built = (|| -> Result<Thm13Params, String> {
                    Ok(Thm13Params {
                        pi: parse(&pi)?,
                        pi_tilde: parse(&pi_tilde)?,
                        lambda: parse_part(&lam)?,
                        mu: parse_part(&mu)?,
                        phi: parse(&phi)?,
                        phi_tilde: parse(&phi_tilde)?,
                        alpha: parse_part(&alpha)?,
                        beta: parse_part(&beta)?,
                        k: k.unwrap_or(1),
                    })
                })();
                match built {
                    Ok(p) => Some(p),
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return ExitCode::from(3);
                    }
                }
            } else {
                None
            };
            run_verify(
                &name, &common, n, n_max, m, c, m_max, &extra, thm13,
            )
        }
    }
}
