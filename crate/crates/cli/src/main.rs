use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superflag::flagatlas::{build_chart, cocycle_check, enumerate_charts, orbit_charts, reduce_isotropic_chart, FlagType};
use superflag::fundfields::{acting_algebra, basis_fields, check_homomorphism, kernel_of_action, span_dimension};
use superflag::harness::{hypothesis_gate, oracle_global_fields, run_suite, OracleProblem, RunOptions, SuiteConfig};
use superflag::liesuperalg::{build_gl, build_osp, build_pisp};
use superflag::weightsbwb::{sections_report, IsotropicCase};

#[derive(Parser)]
#[command(name = "superflag", version, about = "Vector fields on flag supermanifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lie superalgebras.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Flag types and atlases.
    Flag {
        #[command(subcommand)]
        cmd: FlagCmd,
    },
    /// Fundamental vector fields.
    Fields {
        #[command(subcommand)]
        cmd: FieldsCmd,
    },
    /// Borel-Weil-Bott sections of W_0.
    Bwb {
        #[command(subcommand)]
        cmd: BwbCmd,
    },
    /// Verification suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// Global vector field oracle.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gl,
    Osp,
    Pisp,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Basis and structure constants as JSON.
    Dump {
        #[arg(value_enum)]
        kind: Kind,
        /// `m,n` for gl and osp, `n` for pisp.
        params: String,
    },
}

#[derive(Args)]
struct FlagArg {
    /// e.g. `F(2,1|2,1)`, `Fe(4,2|4,2)`, `Fo(5,3|5,2)`.
    flag: String,
}

impl FlagArg {
    fn parse(&self) -> Result<FlagType> {
        self.flag.parse().map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Subcommand)]
enum FlagCmd {
    Validate(FlagArg),
    /// Supported charts with their coordinate matrices.
    Charts(FlagArg),
    Cocycle {
        #[command(flatten)]
        flag: FlagArg,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduced isotropic charts of the swap orbit.
    Isotropy(FlagArg),
    /// Which main theorem applies.
    Gate(FlagArg),
}

#[derive(Subcommand)]
enum FieldsCmd {
    /// Fundamental fields of the basis on the first chart.
    Fundamental(FlagArg),
    Homomorphism(FlagArg),
    Kernel(FlagArg),
    Span(FlagArg),
}

#[derive(Subcommand)]
enum BwbCmd {
    Sections {
        /// `even` or `odd`.
        case: String,
        k1: usize,
        l1: usize,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    List {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    Run {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here as well.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        slow: bool,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Run {
        #[arg(long)]
        flag: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_unknowns: Option<usize>,
    },
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn config(path: &Option<PathBuf>) -> Result<SuiteConfig> {
    match path {
        None => Ok(SuiteConfig::shipped()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(SuiteConfig::parse(&text)?)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Algebra {
            cmd: AlgebraCmd::Dump { kind, params },
        } => {
            let p: Vec<usize> = params
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .context("parameters")?;
            let g = match (kind, p.as_slice()) {
                (Kind::Gl, [m, n]) => build_gl(*m, *n)?,
                (Kind::Osp, [m, n]) => build_osp(*m, *n)?,
                (Kind::Pisp, [n]) => build_pisp(*n)?,
                _ => bail!("wrong number of parameters"),
            };
            print(&g.dump()?)?;
        }
        Cmd::Flag { cmd } => match cmd {
            FlagCmd::Validate(f) => {
                let f = f.parse()?;
                let charts = enumerate_charts(&f);
                print(&json!({ "flag": f.to_string(), "type": f, "length": f.length(), "charts": charts.len() }))?;
            }
            FlagCmd::Charts(f) => {
                let f = f.parse()?;
                for i in enumerate_charts(&f) {
                    let c = build_chart(&f, &i)?;
                    println!("{i}  superdim {:?}", c.superdim());
                    for (s, z) in c.levels.iter().enumerate() {
                        println!("  Z_{} =\n{z}", s + 1);
                    }
                }
            }
            FlagCmd::Cocycle { flag, points, seed } => {
                let r = cocycle_check(&flag.parse()?, seed, points)?;
                print(&r)?;
                return Ok(r.passed());
            }
            FlagCmd::Isotropy(f) => {
                let f = f.parse()?;
                for o in orbit_charts(&f, false)? {
                    let c = reduce_isotropic_chart(&f, &o.index)?;
                    println!("{:?}\n{}", o.index, c.matrix);
                }
            }
            FlagCmd::Gate(f) => {
                let r = hypothesis_gate(&f.parse()?);
                print(&r)?;
            }
        },
        Cmd::Fields { cmd } => match cmd {
            FieldsCmd::Fundamental(f) => {
                let f = f.parse()?;
                let g = acting_algebra(&f)?;
                let i = enumerate_charts(&f).remove(0);
                let chart = build_chart(&f, &i)?;
                for (b, v) in g.basis.iter().zip(basis_fields(&g, &chart)?) {
                    println!("mu({}) = {v}", b.label);
                }
            }
            FieldsCmd::Homomorphism(f) => {
                let f = f.parse()?;
                let g = acting_algebra(&f)?;
                let r = check_homomorphism(&g, &f, &enumerate_charts(&f)[0])?;
                print(&r)?;
                return Ok(r.passed());
            }
            FieldsCmd::Kernel(f) => {
                let f = f.parse()?;
                let g = acting_algebra(&f)?;
                let k = kernel_of_action(&g, &f)?;
                println!("kernel dimension {}", k.len());
                for x in k {
                    println!("{x}");
                }
            }
            FieldsCmd::Span(f) => {
                let f = f.parse()?;
                let g = acting_algebra(&f)?;
                let (e, o) = span_dimension(&g, &f, &enumerate_charts(&f)[0])?;
                println!("({e}, {o})");
            }
        },
        Cmd::Bwb {
            cmd: BwbCmd::Sections { case, k1, l1 },
        } => {
            let case = IsotropicCase::parse(&case).ok_or_else(|| anyhow!("case must be even or odd"))?;
            let n = match case {
                IsotropicCase::Even => 2 * l1,
                IsotropicCase::Odd => k1 + l1,
            };
            print(&sections_report(case, k1, l1, n)?)?;
        }
        Cmd::Suite { cmd } => match cmd {
            SuiteCmd::List { config: path } => {
                let c = config(&path)?;
                for s in &c.suites {
                    let tag = if s.slow { " [slow]" } else { "" };
                    println!("{}{tag}: {}", s.name, s.description);
                }
            }
            SuiteCmd::Run {
                name,
                seed,
                json,
                slow,
                timing,
                config: path,
            } => {
                let c = config(&path)?;
                let report = run_suite(&name, &c, RunOptions { seed, slow, timing })?;
                let text = report.to_json();
                if let Some(p) = json {
                    std::fs::write(&p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?;
                }
                println!("{text}");
                return Ok(report.success(c.get(&name).expect("suite exists")));
            }
        },
        Cmd::Oracle {
            cmd: OracleCmd::Run {
                flag,
                degree,
                seed,
                max_unknowns,
            },
        } => {
            let f: FlagType = flag.parse().map_err(|e| anyhow!("{e}"))?;
            let mut p = OracleProblem::new(f, degree);
            p.seed = seed;
            if let Some(m) = max_unknowns {
                p.max_unknowns = m;
            }
            let o = oracle_global_fields(&p)?;
            print(&json!({
                "flag": o.flag.to_string(),
                "source": o.source.to_string(),
                "degree": o.degree_bound,
                "dims": (o.even_dim, o.odd_dim),
                "unknowns": o.unknowns,
                "lines": o.lines,
                "stability": o.stability,
                "certificate": o.certificate,
                "coverage": o.coverage,
                "fields": o.fields.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
