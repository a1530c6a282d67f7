use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use meanexp::groups::{ratio_to_f64, AbelianPShape};
use meanexp::oracle::class_group_structure;
use meanexp::propgroups::{
    gs_series, theo2_witnesses, zassenhaus_ranks, zassenhaus_ranks_log, GSGroupParams, ZassenhausRanks,
};
use meanexp::scenario::{parse_scenario, preset, run_scenario, Report, PRESET_NAMES};
use meanexp::towers::{critere_real_quadratic, genus_rank_bound, gs_finite_requires, gs_verdict};
use meanexp::Error;

#[derive(Parser)]
#[command(name = "meanexp", version, about = "Mean exponents of class groups in towers of number fields")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Digits after the decimal point in text output.
    #[arg(long, global = true, default_value_t = 4)]
    precision: usize,
    /// Reserved; nothing here is randomized.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mean exponent of a finite abelian p-group, e.g. `--shape p:2,exps:3,1`.
    MeanExponent {
        #[arg(long)]
        shape: String,
    },
    /// Genus-theory lower bound on the p-rank: rho - 1 - (r1 + r2 - 1 + delta).
    GenusBound {
        #[arg(long)]
        rho: i64,
        #[arg(long)]
        r1: i64,
        #[arg(long)]
        r2: i64,
        #[arg(long, default_value_t = 0)]
        delta: i64,
    },
    /// Golod-Shafarevich check: d generators, at most r relations.
    GsCheck {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// Infinitude criterion for T-split towers over a real quadratic field.
    Critere {
        #[arg(long)]
        rho: i64,
        #[arg(long)]
        t_dec: i64,
        #[arg(long)]
        t_total: i64,
    },
    /// Only the Tsfasman-Vladut part of a scenario.
    TvBound {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Full report for a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Built-in scenarios: 1..5 or `intro`.
    PaperExample {
        #[arg(required_unless_present = "all_examples")]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all_examples: bool,
    },
    /// Pro-p group growth: series, Zassenhaus ranks, witnesses.
    Propgroup {
        #[command(subcommand)]
        cmd: PropCmd,
    },
    /// Class groups of imaginary quadratic orders.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    r: u64,
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Relation degrees, comma separated; default all 2.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

impl GroupArgs {
    fn params(&self) -> meanexp::Result<GSGroupParams> {
        if self.degrees.is_empty() {
            GSGroupParams::new(self.d, self.r, self.p)
        } else {
            GSGroupParams::with_degrees(self.d, self.r, self.p, self.degrees.clone())
        }
    }
}

#[derive(Subcommand)]
enum PropCmd {
    Series {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
    },
    Ranks {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
        /// Use the logarithm/Moebius route instead of product matching.
        #[arg(long)]
        log: bool,
    },
    Witnesses {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 16)]
        levels: u32,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    ClassGroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Io(_) => 2,
        Failure::Lib(e) => match e {
            Error::Infeasible { .. } | Error::NeedsLargerEnumeration { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        },
    }
}

struct Out {
    json: bool,
    precision: usize,
}

impl Out {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
        } else {
            print!("{}", text());
        }
    }
}

fn parse_shape(s: &str) -> meanexp::Result<AbelianPShape> {
    let bad = || Error::Schema(format!("shape {s:?}: expected `p:<prime>,exps:<e1>,<e2>,...`"));
    let rest = s.strip_prefix("p:").ok_or_else(bad)?;
    let (p, exps) = rest.split_once(",exps:").ok_or_else(bad)?;
    let p = p.trim().parse::<u64>().map_err(|_| bad())?;
    let exps = if exps.trim().is_empty() {
        Vec::new()
    } else {
        exps.split(',')
            .map(|e| e.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<meanexp::Result<Vec<_>>>()?
    };
    AbelianPShape::new(p, exps)
}

fn load(path: &PathBuf) -> Result<meanexp::scenario::ScenarioFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_scenario(&text)?)
}

fn big_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn ranks_list(r: &ZassenhausRanks) -> Vec<String> {
    (1..=r.len()).filter_map(|i| r.get(i)).map(|x| x.to_string()).collect()
}

fn emit_report(out: &Out, r: &Report) {
    out.emit(&serde_json::to_value(r).expect("report serializes"), || r.to_text(out.precision));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Out { json: cli.json, precision: cli.precision };
    let pr = cli.precision;
    match cli.cmd {
        Cmd::MeanExponent { shape } => {
            let a = parse_shape(&shape)?;
            let m = a.mean_exponent();
            out.emit(
                &json!({
                    "p": a.p, "exps": a.exps, "rank": a.rank(), "order_log": a.order_log(),
                    "exponent": a.exponent(), "mean_exponent": m.to_string(),
                    "mean_exponent_f64": ratio_to_f64(m),
                }),
                || format!("{m}\n"),
            );
        }
        Cmd::GenusBound { rho, r1, r2, delta } => {
            let b = genus_rank_bound(rho, r1, r2, delta);
            out.emit(&json!({ "rank_lower_bound": b }), || format!("{b}\n"));
        }
        Cmd::GsCheck { d, r } => {
            let v = gs_verdict(d, r);
            out.emit(
                &json!({ "d": d, "r_upper": r, "finite_requires": gs_finite_requires(d), "verdict": v }),
                || format!("{v:?} (a finite quotient needs r >= {})\n", gs_finite_requires(d)),
            );
        }
        Cmd::Critere { rho, t_dec, t_total } => {
            let holds = critere_real_quadratic(rho, t_dec, t_total)?;
            out.emit(&json!({ "holds": holds }), || format!("{holds}\n"));
        }
        Cmd::TvBound { scenario } => {
            let r = run_scenario(&load(&scenario)?)?;
            let tv = &r.pinned.tv;
            out.emit(&serde_json::to_value(tv).expect("tv serializes"), || {
                format!(
                    "ell*_0 {}  alpha {:.pr$}  budget*g {:.pr$}  B <= {:.pr$}\n",
                    tv.ell_star_0, tv.alpha, tv.budget_times_g, tv.b_upper
                )
            });
        }
        Cmd::Run { scenario } => emit_report(&out, &run_scenario(&load(&scenario)?)?),
        Cmd::PaperExample { name, all_examples } => {
            if all_examples {
                let reports: Vec<meanexp::Result<Report>> = std::thread::scope(|s| {
                    let handles: Vec<_> = PRESET_NAMES
                        .iter()
                        .map(|n| s.spawn(move || run_scenario(&preset(n)?)))
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("worker panicked".into()))))
                        .collect()
                });
                let reports = reports.into_iter().collect::<meanexp::Result<Vec<_>>>()?;
                out.emit(&serde_json::to_value(&reports).expect("reports serialize"), || {
                    reports.iter().map(|r| r.to_text(pr)).collect::<Vec<_>>().join("\n")
                });
            } else {
                let name = name.expect("clap requires a name");
                emit_report(&out, &run_scenario(&preset(&name)?)?);
            }
        }
        Cmd::Propgroup { cmd } => match cmd {
            PropCmd::Series { g, n } => {
                let c = big_strings(&gs_series(&g.params()?, n)?);
                out.emit(&json!({ "c": c }), || format!("{}\n", c.join(" ")));
            }
            PropCmd::Ranks { g, n, log } => {
                let params = g.params()?;
                let ranks = if log {
                    zassenhaus_ranks_log(&params, n)?
                } else {
                    zassenhaus_ranks(&gs_series(&params, n)?, params.p, n)?
                };
                let b = ranks_list(&ranks);
                out.emit(&json!({ "b": b }), || format!("{}\n", b.join(" ")));
            }
            PropCmd::Witnesses { g, epsilon, levels } => {
                let w = theo2_witnesses(&g.params()?, epsilon, levels)?;
                out.emit(&serde_json::to_value(&w).expect("witnesses serialize"), || {
                    let mut s = format!("GS-typical: {}\n", w.gs_typical);
                    for row in &w.rows {
                        s += &format!(
                            "n={:>2} {:?} ln|G/G_n|={:.pr$} ln d(G_n/G_2n)={:.pr$} rhs={:.pr$} {}\n",
                            row.n,
                            row.regime,
                            row.ln_index_log,
                            row.ln_window_rank,
                            row.ln_rhs,
                            if row.satisfied { "ok" } else { "fails" }
                        );
                    }
                    s
                });
            }
        },
        Cmd::Oracle { cmd: OracleCmd::ClassGroup { disc } } => {
            let cg = class_group_structure(disc)?;
            let sylow: serde_json::Map<String, Value> = cg
                .sylow
                .iter()
                .map(|(p, a)| {
                    let m = a.mean_exponent();
                    (
                        p.to_string(),
                        json!({ "exps": a.exps, "mean_exponent": m.to_string(), "mean_exponent_f64": ratio_to_f64(m) }),
                    )
                })
                .collect();
            out.emit(
                &json!({ "disc": cg.disc, "h": cg.h, "ambiguous_classes": cg.ambiguous_classes, "sylow": sylow }),
                || {
                    let mut s = format!("D = {}  h = {}  ambiguous classes {}\n", cg.disc, cg.h, cg.ambiguous_classes);
                    for (p, a) in &cg.sylow {
                        s += &format!("  {p}-part {:?}  mean exponent {}\n", a.exps, a.mean_exponent());
                    }
                    s
                },
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand => 64,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand | ErrorKind::MissingSubcommand => 64,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
