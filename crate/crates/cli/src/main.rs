//! `hamnt` — build codes in Hamming graphs, compute their invariants,
//! certify neighbour transitivity, and run the named verification suites.
//!
//! Exit codes: 0 = pass, 1 = verified failure (a negative certificate or a
//! failing suite), 2 = usage, parse, or capacity error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hamnt_core::code::{
    distance_partition, is_connected, is_nt, setwise_stabilizer, Code, NtCertificate,
};
use hamnt_core::families::{all_fpa, classify, inj, perm_code, rep, rep_p_blowup, w_half};
use hamnt_core::hamming::full_wreath_elements;
use hamnt_core::perm::{all_subgroups, Permutation};
use hamnt_core::suites::{run_suite, SuiteOptions, SuiteReport};
use hamnt_core::Caps;

#[derive(Parser)]
#[command(
    name = "hamnt",
    version,
    about = "Codes in Hamming graphs: families, invariants, neighbour-transitivity certificates, verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code family and emit it in `.code` format
    Family {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Compute invariants of a code: delta, rho, cell sizes, profiles, connectivity
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Certify neighbour transitivity under the chosen ambient group
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Ambient::Diag)]
        ambient: Ambient,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite
    Verify {
        /// One of: thm-families, cor-radius, lemma-connect, thm-main2,
        /// lemma-1reg, thm-permiff, lemma-blowup, props
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        /// Run the extended grid
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
    },
    /// Enumerate every subgroup of the symmetric group on q points
    Subgroups {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Rep(m,q): the q constant words
    Rep {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inj(m,q): all repetition-free words (m < q)
    Inj {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// W([m/2],2): binary words of weight (m±1)/2 (m odd)
    Whalf {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All(pq,q): every word with each letter exactly p times
    All {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// C(T): the permutation code generated by the given permutations
    Perm {
        #[arg(long)]
        q: usize,
        /// Generators, e.g. "(0 1)(2 3); (0 1 2)" or "[1,0,2] [0,2,1]"
        #[arg(long)]
        group: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rep_p(C): repeat every word of an input code p times blockwise
    Blowup {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ambient {
    /// Diag_m(S_q) ⋊ S_m
    Diag,
    /// The full wreath product S_q^m ⋊ S_m (tiny shapes only)
    Full,
}

fn caps_from_env() -> Result<Caps, String> {
    let mut caps = Caps::default();
    if let Ok(v) = std::env::var("HAMNT_MAX_VERTICES") {
        caps.max_vertices = v
            .parse()
            .map_err(|_| format!("HAMNT_MAX_VERTICES must be an integer, got `{v}`"))?;
    }
    if let Ok(v) = std::env::var("HAMNT_MAX_GROUP") {
        caps.max_group = v
            .parse()
            .map_err(|_| format!("HAMNT_MAX_GROUP must be an integer, got `{v}`"))?;
    }
    Ok(caps)
}

/// Splits a generator list on commas, semicolons, or whitespace that sit
/// outside parentheses and brackets.
fn split_generators(s: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                current.push(ch);
            }
            ',' | ';' if depth == 0 => {
                if !current.trim().is_empty() {
                    tokens.push(current.trim().to_string());
                }
                current.clear();
            }
            c if c.is_whitespace() && depth == 0 => {
                if !current.trim().is_empty() {
                    tokens.push(current.trim().to_string());
                }
                current.clear();
            }
            c => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        tokens.push(current.trim().to_string());
    }
    tokens
}

fn emit_code(code: &Code, output: Option<PathBuf>) -> Result<(), String> {
    let text = code.to_code_string();
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_code(path: &PathBuf) -> Result<Code, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Code::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn certificate_json(
    code: &Code,
    cert: &NtCertificate,
    ambient: Ambient,
    family: Option<String>,
) -> serde_json::Value {
    serde_json::json!({
        "verdict": cert.verdict,
        "group_order": cert.group_order,
        "orbit_counts": cert.orbit_counts,
        "delta": cert.delta,
        "rho": cert.rho,
        "num_profiles": cert.num_profiles,
        "family": family,
        "code_size": code.len(),
        "m": code.m(),
        "q": code.q(),
        "ambient": match ambient { Ambient::Diag => "diag", Ambient::Full => "full" },
    })
}

fn print_report(report: &SuiteReport, json: bool) -> Result<(), String> {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).map_err(|e| e.to_string())?
        );
    } else {
        println!("suite {} ({})", report.suite, report.grid);
        for inst in &report.instances {
            println!(
                "  [{}] {} — {}",
                if inst.pass { "pass" } else { "FAIL" },
                inst.name,
                inst.detail
            );
        }
        println!(
            "{}: {} passed, {} failed in {} ms",
            report.suite, report.passed, report.failed, report.wall_ms
        );
    }
    if report.failed > 0 {
        let mut written = Vec::new();
        for (i, inst) in report.instances.iter().filter(|i| !i.pass).enumerate() {
            if let Some(ce) = &inst.counterexample {
                let path = format!("{}-counterexample-{i}.code", report.suite);
                fs::write(&path, &ce.code_text).map_err(|e| format!("{path}: {e}"))?;
                written.push(path);
            }
        }
        if !written.is_empty() {
            eprintln!("counterexamples written: {}", written.join(", "));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    let caps = caps_from_env()?;
    match cli.command {
        Command::Family { family } => {
            let (code, output) = match family {
                FamilyCmd::Rep { m, q, output } => (rep(m, q).map_err(|e| e.to_string())?, output),
                FamilyCmd::Inj { m, q, output } => (inj(m, q).map_err(|e| e.to_string())?, output),
                FamilyCmd::Whalf { m, output } => (w_half(m).map_err(|e| e.to_string())?, output),
                FamilyCmd::All { p, q, output } => {
                    (all_fpa(p, q).map_err(|e| e.to_string())?, output)
                }
                FamilyCmd::Perm { q, group, output } => {
                    let tokens = split_generators(&group);
                    if tokens.is_empty() {
                        return Err("--group needs at least one permutation".into());
                    }
                    let gens: Vec<Permutation> = tokens
                        .iter()
                        .map(|t| Permutation::parse(t, q).map_err(|e| e.to_string()))
                        .collect::<Result<_, String>>()?;
                    let t = hamnt_core::perm::PermGroup::generate(q, &gens, &caps)
                        .map_err(|e| e.to_string())?;
                    (perm_code(t.elements()).map_err(|e| e.to_string())?, output)
                }
                FamilyCmd::Blowup { p, input, output } => {
                    let base = load_code(&input)?;
                    (rep_p_blowup(&base, p).map_err(|e| e.to_string())?, output)
                }
            };
            emit_code(&code, output)?;
            Ok(true)
        }
        Command::Invariants { file, json } => {
            let code = load_code(&file)?;
            let partition = distance_partition(&code, &caps).map_err(|e| e.to_string())?;
            let delta = code.min_distance().ok();
            let connected = is_connected(&code);
            let profiles = partition.cell_num_profiles();
            if json {
                let value = serde_json::json!({
                    "m": code.m(),
                    "q": code.q(),
                    "code_size": code.len(),
                    "delta": delta,
                    "rho": partition.rho(),
                    "cell_sizes": partition.cell_sizes(),
                    "num_profiles": profiles,
                    "connected": connected,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?
                );
            } else {
                println!(
                    "code in H({},{}) with {} words",
                    code.m(),
                    code.q(),
                    code.len()
                );
                match delta {
                    Some(d) => println!("delta = {d}"),
                    None => println!("delta undefined (single word)"),
                }
                println!("rho = {}", partition.rho());
                println!("cell sizes = {:?}", partition.cell_sizes());
                for (i, cell_profiles) in profiles.iter().enumerate() {
                    let shown: Vec<String> = cell_profiles.iter().map(|p| p.to_string()).collect();
                    println!("cell {i} profiles: {}", shown.join(" "));
                }
                println!("connected: {connected}");
            }
            Ok(true)
        }
        Command::Certify {
            file,
            ambient,
            json,
        } => {
            let code = load_code(&file)?;
            let (cert, family) = match ambient {
                Ambient::Diag => {
                    let cert = hamnt_core::code::is_diagonally_nt(&code, &caps)
                        .map_err(|e| e.to_string())?;
                    let family = classify(&code, cert.verdict);
                    (cert, Some(family.to_string()))
                }
                Ambient::Full => {
                    let wreath = full_wreath_elements(code.m(), code.q(), &caps)
                        .map_err(|e| e.to_string())?;
                    let stab = setwise_stabilizer(&code, &wreath);
                    let cert = is_nt(&code, &stab, &caps).map_err(|e| e.to_string())?;
                    (cert, None)
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&certificate_json(&code, &cert, ambient, family))
                        .map_err(|e| e.to_string())?
                );
            } else {
                println!(
                    "neighbour transitive: {} (witness group order {})",
                    cert.verdict, cert.group_order
                );
                match cert.delta {
                    Some(d) => println!("delta = {d}, rho = {}", cert.rho),
                    None => println!("delta undefined, rho = {}", cert.rho),
                }
                println!("orbit counts per cell: {:?}", cert.orbit_counts);
                if let Some(f) = family {
                    println!("family: {f}");
                }
            }
            Ok(cert.verdict)
        }
        Command::Verify {
            suite,
            m,
            q,
            p,
            full,
            json,
            seed,
        } => {
            let opts = SuiteOptions {
                m,
                q,
                p,
                full,
                seed,
            };
            let report = run_suite(&suite, &caps, &opts).map_err(|e| e.to_string())?;
            print_report(&report, json)?;
            Ok(report.all_passed())
        }
        Command::Subgroups { q, json } => {
            let subs = all_subgroups(q, &caps).map_err(|e| e.to_string())?;
            if json {
                let value: Vec<serde_json::Value> = subs
                    .iter()
                    .map(|t| {
                        serde_json::json!({
                            "order": t.order(),
                            "generators": t
                                .minimal_generators()
                                .iter()
                                .map(|g| g.to_string())
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "q": q,
                        "count": subs.len(),
                        "subgroups": value,
                    }))
                    .map_err(|e| e.to_string())?
                );
            } else {
                for (i, t) in subs.iter().enumerate() {
                    let gens: Vec<String> = t
                        .minimal_generators()
                        .iter()
                        .map(|g| g.to_string())
                        .collect();
                    println!("#{i} order {} gens: {}", t.order(), gens.join(" "));
                }
                println!("{} subgroups of S_{q}", subs.len());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
