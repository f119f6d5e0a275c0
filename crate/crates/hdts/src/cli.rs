//! The command-line surface.  One operation per invocation; files are the
//! line-oriented documents of [`crate::textio`], `-` means stdin or stdout.
//!
//! Exit codes: 0 success or a true predicate, 1 a false predicate, 2 usage
//! or I/O problems, 3 parse errors, 4 precondition failures, 5 exhausted
//! search budgets.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::axioms::{classify_with, AxiomReport, DEFAULT_MAX_WITNESSES};
use crate::builders::{
    bare_action, boundary, csa1diff, cube, double, generator, intro, pure, wbar2, wbar2_to_cube,
    wbar3, wbar3_attach, wbar3_pushout, zx, GeneratorName,
};
use crate::cats::{
    cts_coreflection, cubification, intermediate_saturation, product, pushout, PushoutMode,
};
use crate::error::{Error, Result};
use crate::hom::{iso_search, Budget};
use crate::homotopy::{
    cocyl, cyl, has_rlp, is_fibrant, is_weq, ld_fibrant_sufficient, ModelStructure,
};
use crate::reflect::{reflect, ReflectorKind};
use crate::system::{validate, Label, TsMap, Tsys};
use crate::textio::{parse_map, parse_tsys, serialize_map, serialize_tsys};

#[derive(Parser)]
#[command(
    name = "hdts",
    version,
    about = "Finite higher-dimensional transition systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReflectArg {
    Csa2,
    Csa1Cts,
    Csa1Rts,
    LsCts,
    LsRts,
}

impl From<ReflectArg> for ReflectorKind {
    fn from(a: ReflectArg) -> ReflectorKind {
        match a {
            ReflectArg::Csa2 => ReflectorKind::Csa2,
            ReflectArg::Csa1Cts => ReflectorKind::Csa1Cts,
            ReflectArg::Csa1Rts => ReflectorKind::Csa1Rts,
            ReflectArg::LsCts => ReflectorKind::LsCts,
            ReflectArg::LsRts => ReflectorKind::LsRts,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreflectArg {
    /// Cubification: the colimit of all cubes over the input.
    Cub,
    /// The cubical coreflection: cubes and double transitions.
    Cts,
    /// Intermediate-state saturation: cubes and bare actions.
    Sat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cts,
    Rts,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    LdCts,
    LdRts,
    BlCts,
    BlRts,
}

impl From<StructureArg> for ModelStructure {
    fn from(a: StructureArg) -> ModelStructure {
        match a {
            StructureArg::LdCts => ModelStructure::LdCts,
            StructureArg::LdRts => ModelStructure::LdRts,
            StructureArg::BlCts => ModelStructure::BlCts,
            StructureArg::BlRts => ModelStructure::BlRts,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FibrantArg {
    BlCts,
    BlRts,
    Ld,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a system file and report which axioms hold.
    Check {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Cap on witnesses kept per axiom; the verdicts stay exact.
        #[arg(long, default_value_t = DEFAULT_MAX_WITNESSES)]
        max_witnesses: usize,
    },
    /// Write a named system, fixture or generator map.
    ///
    /// Systems: cube L.., pure L.., boundary L.., double L, bare-action L,
    /// zx L, intro N, csa1diff, wbar2 L, wbar3 L.  Maps (also write .dom and
    /// .cod system files next to the output): p L, p-cof L, q-of-z L, c0 L,
    /// c1 L, gamma0 L, gamma1 L, sigma L, theta L, eta L.., boundary-incl
    /// L.., pure-incl L.., wbar2-map L, wbar3-attach L, wbar3-pushout L.
    Gen {
        name: String,
        args: Vec<String>,
        #[arg(short, long)]
        out: String,
    },
    /// Apply a reflection and write the reflected system.
    Reflect {
        #[arg(value_enum)]
        kind: ReflectArg,
        file: String,
        #[arg(short, long)]
        out: String,
        /// Also write the unit map to this path.
        #[arg(long)]
        unit: Option<String>,
    },
    /// Apply a coreflection and write the coreflected system.
    Coreflect {
        #[arg(value_enum)]
        kind: CoreflectArg,
        file: String,
        #[arg(short, long)]
        out: String,
        /// Also write the counit map to this path.
        #[arg(long)]
        counit: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Write the cylinder of a cubical system.
    Cyl {
        file: String,
        #[arg(short, long)]
        out: String,
    },
    /// Write the cocylinder of a cubical system.
    Cocyl {
        file: String,
        #[arg(short, long)]
        out: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Write the binary product of two cubical systems.
    Product {
        a: String,
        b: String,
        #[arg(short, long)]
        out: String,
    },
    /// Write the pushout of two map files sharing a domain.
    Pushout {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value = "cts")]
        mode: ModeArg,
        #[arg(short, long)]
        out: String,
    },
    /// Decide whether a map is a weak equivalence (exit 0 yes, 1 no).
    Weq {
        map: String,
        #[arg(long, value_enum)]
        structure: StructureArg,
    },
    /// Decide fibrancy (exit 0 yes, 1 no or unknown).
    Fibrant {
        file: String,
        #[arg(long, value_enum)]
        structure: FibrantArg,
        /// Required with --structure ld: only the sufficient criterion is
        /// decided, the answer is true or unknown.
        #[arg(long)]
        sufficient_only: bool,
    },
    /// Search for an isomorphism between two systems (exit 0 yes, 1 no).
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide the right lifting property of P against I (exit 0 yes, 1 no).
    Rlp {
        p: String,
        i: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(path: &str, content: &str) -> Result<()> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content)?;
        Ok(())
    }
}

fn load_tsys(path: &str) -> Result<Tsys> {
    let (ts, warnings) = parse_tsys(&read_input(path)?)?;
    for w in warnings {
        eprintln!("warning: {path}: {w}");
    }
    let violations = validate(&ts);
    if !violations.is_empty() {
        return Err(Error::PreconditionFailed(format!(
            "{path} is not a well-formed system: {}",
            violations[0]
        )));
    }
    Ok(ts)
}

/// Loads a map file; relative endpoint paths resolve against the map file's
/// directory.
fn load_map(path: &str) -> Result<TsMap> {
    let text = read_input(path)?;
    let base: PathBuf = if path == "-" {
        PathBuf::from(".")
    } else {
        Path::new(path)
            .parent()
            .map(PathBuf::from)
            .unwrap_or_default()
    };
    let (map, warnings) = parse_map(&text, |p| {
        let candidate = Path::new(p);
        let resolved = if candidate.is_absolute() {
            candidate.to_path_buf()
        } else {
            base.join(candidate)
        };
        load_tsys(&resolved.to_string_lossy())
    })?;
    for w in warnings {
        eprintln!("warning: {path}: {w}");
    }
    Ok(map)
}

fn labels_of(args: &[String]) -> Vec<Label> {
    args.iter().map(|s| Label::new(s.as_str())).collect()
}

fn one_label(name: &str, args: &[String]) -> Result<Label> {
    if args.len() != 1 {
        return Err(Error::ArityMismatch(format!(
            "{name} takes exactly one label"
        )));
    }
    Ok(Label::new(args[0].as_str()))
}

enum Generated {
    System(Tsys),
    Map(TsMap),
}

fn run_gen(name: &str, args: &[String]) -> Result<Generated> {
    use Generated::{Map, System};
    Ok(match name {
        "cube" => System(cube(&labels_of(args))),
        "pure" => System(pure(&labels_of(args))),
        "boundary" => System(boundary(&labels_of(args))?),
        "double" => System(double(&one_label(name, args)?)),
        "bare-action" => System(bare_action(&one_label(name, args)?)),
        "zx" => System(zx(&one_label(name, args)?)),
        "intro" => {
            if args.len() != 1 {
                return Err(Error::ArityMismatch("intro takes one integer".into()));
            }
            let n: usize = args[0]
                .parse()
                .map_err(|_| Error::ArityMismatch("intro takes one integer".into()))?;
            System(intro(n)?)
        }
        "csa1diff" => {
            if !args.is_empty() {
                return Err(Error::ArityMismatch("csa1diff takes no arguments".into()));
            }
            System(csa1diff())
        }
        "wbar2" => System(wbar2(&one_label(name, args)?)),
        "wbar3" => System(wbar3(&one_label(name, args)?)),
        "p" => Map(generator(GeneratorName::P, &labels_of(args))?),
        "p-cof" => Map(generator(GeneratorName::PCof, &labels_of(args))?),
        "q-of-z" => Map(generator(GeneratorName::QOfZ, &labels_of(args))?),
        "c0" => Map(generator(GeneratorName::C0, &labels_of(args))?),
        "c1" => Map(generator(GeneratorName::C1, &labels_of(args))?),
        "gamma0" => Map(generator(GeneratorName::Gamma0, &labels_of(args))?),
        "gamma1" => Map(generator(GeneratorName::Gamma1, &labels_of(args))?),
        "sigma" => Map(generator(GeneratorName::Sigma, &labels_of(args))?),
        "theta" => Map(generator(GeneratorName::Theta, &labels_of(args))?),
        "eta" => Map(generator(GeneratorName::Eta, &labels_of(args))?),
        "boundary-incl" => Map(generator(GeneratorName::BoundaryIncl, &labels_of(args))?),
        "pure-incl" => Map(generator(GeneratorName::PureIncl, &labels_of(args))?),
        "wbar2-map" => Map(wbar2_to_cube(&one_label(name, args)?)),
        "wbar3-attach" => Map(wbar3_attach(&one_label(name, args)?)?),
        "wbar3-pushout" => Map(wbar3_pushout(&one_label(name, args)?)?),
        other => {
            return Err(Error::ArityMismatch(format!(
                "unknown generator name `{other}`"
            )))
        }
    })
}

/// Writes a map as three files: OUT plus OUT.dom and OUT.cod for the two
/// endpoint systems.
fn write_map_files(map: &TsMap, out: &str) -> Result<()> {
    if out == "-" {
        return Err(Error::ArityMismatch(
            "map output needs a real file path so the endpoint documents can sit next to it".into(),
        ));
    }
    let dom = format!("{out}.dom");
    let cod = format!("{out}.cod");
    write_output(&dom, &serialize_tsys(map.domain()))?;
    write_output(&cod, &serialize_tsys(map.codomain()))?;
    let dom_name = Path::new(&dom)
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or(dom.clone());
    let cod_name = Path::new(&cod)
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or(cod.clone());
    write_output(out, &serialize_map(map, &dom_name, &cod_name))
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axioms: Option<AxiomReport>,
    weak: bool,
    cubical: bool,
    regular: bool,
}

fn check_line(out: &mut String, name: &str, holds: bool, wits: Vec<String>, truncated: bool) {
    use std::fmt::Write;
    writeln!(out, "{name}: {}", if holds { "pass" } else { "fail" }).unwrap();
    for w in wits {
        writeln!(out, "  witness: {w}").unwrap();
    }
    if truncated {
        writeln!(out, "  (witness list truncated)").unwrap();
    }
}

fn check_text(report: &CheckReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "valid: {}", if report.valid { "yes" } else { "no" }).unwrap();
    for v in &report.violations {
        writeln!(out, "  violation: {v}").unwrap();
    }
    if let Some(ax) = &report.axioms {
        check_line(
            &mut out,
            "multiset",
            ax.multiset.holds,
            ax.multiset
                .witnesses
                .iter()
                .map(|w| w.to_string())
                .collect(),
            ax.multiset.truncated,
        );
        check_line(
            &mut out,
            "composition",
            ax.composition.holds,
            ax.composition
                .witnesses
                .iter()
                .map(|w| w.to_string())
                .collect(),
            ax.composition.truncated,
        );
        check_line(
            &mut out,
            "all-actions-used",
            ax.all_actions_used.holds,
            ax.all_actions_used
                .witnesses
                .iter()
                .map(|a| format!("unused action {a}"))
                .collect(),
            ax.all_actions_used.truncated,
        );
        check_line(
            &mut out,
            "intermediate-state",
            ax.intermediate_state.holds,
            ax.intermediate_state
                .witnesses
                .iter()
                .map(|w| w.to_string())
                .collect(),
            ax.intermediate_state.truncated,
        );
        check_line(
            &mut out,
            "unique-intermediate-state",
            ax.unique_intermediate_state.holds,
            ax.unique_intermediate_state
                .witnesses
                .iter()
                .map(|w| w.to_string())
                .collect(),
            ax.unique_intermediate_state.truncated,
        );
        check_line(
            &mut out,
            "csa1",
            ax.csa1.holds,
            ax.csa1.witnesses.iter().map(|w| w.to_string()).collect(),
            ax.csa1.truncated,
        );
        writeln!(
            out,
            "deterministic-labelling: {}",
            if ax.deterministic_labelling {
                "pass"
            } else {
                "fail"
            }
        )
        .unwrap();
        check_line(
            &mut out,
            "combinatorially-fibrant",
            ax.combinatorially_fibrant.holds,
            ax.combinatorially_fibrant
                .witnesses
                .iter()
                .map(|w| w.to_string())
                .collect(),
            ax.combinatorially_fibrant.truncated,
        );
    }
    writeln!(
        out,
        "classes: weak={} cubical={} regular={}",
        report.weak, report.cubical, report.regular
    )
    .unwrap();
    out
}

fn budget_of(arg: Option<u64>) -> Budget {
    arg.map(Budget::new).unwrap_or_default()
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Check {
            file,
            report,
            max_witnesses,
        } => {
            let (ts, warnings) = parse_tsys(&read_input(&file)?)?;
            for w in warnings {
                eprintln!("warning: {file}: {w}");
            }
            let violations = validate(&ts);
            let valid = violations.is_empty();
            let axioms = valid.then(|| classify_with(&ts, max_witnesses));
            let (weak, cubical, regular) = axioms
                .as_ref()
                .map(|a| (a.is_weak(), a.is_cubical(), a.is_regular()))
                .unwrap_or((false, false, false));
            let rep = CheckReport {
                valid,
                violations: violations.iter().map(|v| v.to_string()).collect(),
                axioms,
                weak,
                cubical,
                regular,
            };
            match report {
                ReportFormat::Text => print!("{}", check_text(&rep)),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&rep)?),
            }
            Ok(if valid { 0 } else { 1 })
        }
        Command::Gen { name, args, out } => {
            match run_gen(&name, &args)? {
                Generated::System(ts) => write_output(&out, &serialize_tsys(&ts))?,
                Generated::Map(map) => write_map_files(&map, &out)?,
            }
            Ok(0)
        }
        Command::Reflect {
            kind,
            file,
            out,
            unit,
        } => {
            let ts = load_tsys(&file)?;
            let res = reflect(kind.into(), &ts)?;
            write_output(&out, &serialize_tsys(&res.reflected))?;
            if let Some(unit_path) = unit {
                write_output(&unit_path, &serialize_map(&res.unit, &file, &out))?;
            }
            Ok(0)
        }
        Command::Coreflect {
            kind,
            file,
            out,
            counit,
            budget,
        } => {
            let ts = load_tsys(&file)?;
            let b = budget_of(budget);
            let (core, q) = match kind {
                CoreflectArg::Cub => cubification(&ts, b)?,
                CoreflectArg::Cts => cts_coreflection(&ts, b)?,
                CoreflectArg::Sat => intermediate_saturation(&ts, b)?,
            };
            write_output(&out, &serialize_tsys(&core))?;
            if let Some(counit_path) = counit {
                write_output(&counit_path, &serialize_map(&q, &out, &file))?;
            }
            Ok(0)
        }
        Command::Cyl { file, out } => {
            let ts = load_tsys(&file)?;
            write_output(&out, &serialize_tsys(&cyl(&ts)?.cyl))?;
            Ok(0)
        }
        Command::Cocyl { file, out, budget } => {
            let ts = load_tsys(&file)?;
            write_output(&out, &serialize_tsys(&cocyl(&ts, budget_of(budget))?.cocyl))?;
            Ok(0)
        }
        Command::Product { a, b, out } => {
            let (object, _, _) = product(&load_tsys(&a)?, &load_tsys(&b)?)?;
            write_output(&out, &serialize_tsys(&object))?;
            Ok(0)
        }
        Command::Pushout { f, g, mode, out } => {
            let fm = load_map(&f)?;
            let gm = load_map(&g)?;
            let mode = match mode {
                ModeArg::Cts => PushoutMode::WtsCts,
                ModeArg::Rts => PushoutMode::Rts,
            };
            let po = pushout(&fm, &gm, mode)?;
            write_output(&out, &serialize_tsys(&po.object))?;
            Ok(0)
        }
        Command::Weq { map, structure } => {
            let f = load_map(&map)?;
            let yes = is_weq(&f, structure.into())?;
            println!("{yes}");
            Ok(if yes { 0 } else { 1 })
        }
        Command::Fibrant {
            file,
            structure,
            sufficient_only,
        } => {
            let ts = load_tsys(&file)?;
            match structure {
                FibrantArg::Ld => {
                    if !sufficient_only {
                        eprintln!(
                            "error: fibrancy in the left-determined structures is only \
                             partially decided; pass --sufficient-only"
                        );
                        return Ok(2);
                    }
                    match ld_fibrant_sufficient(&ts) {
                        Some(true) => {
                            println!("true");
                            Ok(0)
                        }
                        _ => {
                            println!("unknown");
                            Ok(1)
                        }
                    }
                }
                FibrantArg::BlCts => {
                    let yes = is_fibrant(&ts, ModelStructure::BlCts)?;
                    println!("{yes}");
                    Ok(if yes { 0 } else { 1 })
                }
                FibrantArg::BlRts => {
                    let yes = is_fibrant(&ts, ModelStructure::BlRts)?;
                    println!("{yes}");
                    Ok(if yes { 0 } else { 1 })
                }
            }
        }
        Command::Iso { a, b, budget } => {
            let x = load_tsys(&a)?;
            let y = load_tsys(&b)?;
            match iso_search(&x, &y, budget_of(budget))? {
                Some(f) => {
                    print!("{}", serialize_map(&f, &a, &b));
                    Ok(0)
                }
                None => {
                    println!("not-isomorphic");
                    Ok(1)
                }
            }
        }
        Command::Rlp { p, i, budget } => {
            let pm = load_map(&p)?;
            let im = load_map(&i)?;
            let yes = has_rlp(&pm, &im, budget_of(budget))?;
            println!("{yes}");
            Ok(if yes { 0 } else { 1 })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnresolvedReference(_) => 3,
        Error::PreconditionFailed(_)
        | Error::InvalidMap(_)
        | Error::MalformedCone(_)
        | Error::ArityMismatch(_)
        | Error::Internal(_) => 4,
        Error::SizeLimitExceeded(_) => 5,
        Error::Io(_) => 2,
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Internal(format!("json serialization failed: {e}"))
    }
}

/// Parses the process arguments, runs one command, and returns the exit
/// code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
