//! `lk`: Legendrian front diagram toolbox.
//!
//! Exit codes: 0 on success (and for true verdicts), 1 for false verdicts,
//! 2 for input or usage errors.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use legknot::augment::{
    augmentation_to_ruling, enumerate_augmentations, linearized_homology, Augmentation,
    AugmentationWire,
};
use legknot::front::FrontDiagram;
use legknot::movie::{
    compare_homologies, duality_check, gf_homology, ruling_to_movie, validate_movie, MorseMovie,
};
use legknot::ruling::{
    enumerate_rulings, is_graded, is_normal, ruling_polynomial, Ruling, RulingFilter,
};
use legknot::splash::{splash_dga, SplashPlan, SplashedDga};
use legknot::z2::dga_check;

#[derive(Parser)]
#[command(
    name = "lk",
    version,
    about = "Legendrian knot invariants from front diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct IoOpts {
    /// Input path, or `-` for stdin.
    input: String,
    /// Treat the input as JSON instead of an event word.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the JSON result to this file as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-component Maslov potential shifts, e.g. --shifts 0,1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    shifts: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a front diagram (or a movie with --movie).
    Validate {
        #[command(flatten)]
        io: IoOpts,
        /// Validate a Morse movie (JSON) instead of a front.
        #[arg(long)]
        movie: bool,
    },
    /// Classical invariants: components, rotation numbers, tb.
    Invariants {
        #[command(flatten)]
        io: IoOpts,
    },
    /// Enumerate rulings of a front.
    Rulings {
        #[command(flatten)]
        io: IoOpts,
        /// Keep only normal rulings.
        #[arg(long)]
        normal: bool,
        /// Keep only rho-graded rulings (0 = graded, 1 = ungraded).
        #[arg(long)]
        rho: Option<i64>,
    },
    /// The rho-graded ruling polynomial.
    RulingPoly {
        #[command(flatten)]
        io: IoOpts,
        #[arg(long, default_value = "0")]
        rho: i64,
    },
    /// Emit the splashed DGA with its zone/insert manifest.
    SplashDga {
        #[command(flatten)]
        io: IoOpts,
    },
    /// Check d^2 = 0 and deg d = -1 on the splashed DGA.
    CheckD2 {
        #[command(flatten)]
        io: IoOpts,
    },
    /// Enumerate rho-graded augmentations of the splashed DGA.
    Augmentations {
        #[command(flatten)]
        io: IoOpts,
        #[arg(long, default_value = "0")]
        rho: i64,
    },
    /// Linearized homology of every rho-graded augmentation.
    Lch {
        #[command(flatten)]
        io: IoOpts,
        #[arg(long, default_value = "0")]
        rho: i64,
    },
    /// Turn an augmentation (JSON file via --aug) into a normal ruling.
    AugToRuling {
        #[command(flatten)]
        io: IoOpts,
        /// Augmentation JSON ({"values":{...},"rho":0}); `-` for stdin.
        #[arg(long)]
        aug: String,
    },
    /// Build the Morse movie of a graded normal ruling (--switches).
    RulingToMovie {
        #[command(flatten)]
        io: IoOpts,
        /// Comma-separated event indices of the switched crossings
        /// (omit for the empty switch set).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        switches: Vec<usize>,
    },
    /// Generating family homology of a movie (JSON input).
    Gfh {
        #[command(flatten)]
        io: IoOpts,
    },
    /// Compare generating family homology with linearized homology.
    Theorem53 {
        #[command(flatten)]
        io: IoOpts,
    },
    /// Check the duality relations on a dimension table.
    Duality {
        /// Dimension table JSON {"dims":{"1":1}}, inline, path, or `-`.
        input: String,
        /// Which homology the table came from (reporting only).
        #[arg(long, value_enum, default_value = "lch")]
        kind: DualityKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DualityKind {
    Lch,
    Gf,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Verdict,
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read_source(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))?)
    }
}

fn load_front(io: &IoOpts) -> Result<FrontDiagram, CliError> {
    let text = read_source(&io.input)?;
    match io.format {
        Format::Text => FrontDiagram::parse(&text).map_err(|e| CliError::Input(e.to_string())),
        Format::Json => serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string())),
    }
}

fn load_movie(input: &str) -> Result<MorseMovie, CliError> {
    let text = read_source(input)?;
    let movie: MorseMovie =
        serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
    validate_movie(&movie).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(movie)
}

/// Inline JSON, a path, or `-` for stdin.
fn read_json_arg(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_source(arg)
    }
}

fn emit<T: Serialize>(
    out: &Option<PathBuf>,
    value: &T,
    text: impl Display,
) -> Result<(), CliError> {
    println!("{text}");
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(value).expect("serializable output");
        std::fs::write(path, json)?;
    }
    Ok(())
}

fn dims_text(dims: &BTreeMap<i64, usize>) -> String {
    let body: Vec<String> = dims.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", body.join(","))
}

fn splash_of(front: &FrontDiagram, shifts: Option<&[i64]>) -> SplashedDga {
    let mu = front.maslov_potential(shifts);
    splash_dga(front, &SplashPlan::from_front(front), Some(&mu))
}

#[derive(Serialize)]
struct DimsWire {
    dims: BTreeMap<String, usize>,
}

fn dims_wire(dims: &BTreeMap<i64, usize>) -> DimsWire {
    DimsWire {
        dims: dims.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn parse_dims(text: &str) -> Result<BTreeMap<i64, usize>, CliError> {
    #[derive(serde::Deserialize)]
    struct Wire {
        dims: BTreeMap<String, usize>,
    }
    let wire: Wire = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    wire.dims
        .into_iter()
        .map(|(k, v)| {
            k.parse::<i64>()
                .map(|k| (k, v))
                .map_err(|_| CliError::Input(format!("bad degree key `{k}`")))
        })
        .collect()
}

fn ruling_text(front: &FrontDiagram, r: &Ruling, rho: i64) -> String {
    let mu = front.maslov_potential(None);
    let switches: Vec<String> = r.switches.iter().map(|s| s.to_string()).collect();
    let pairing: Vec<String> = r
        .pairing
        .iter()
        .map(|(l, rr)| format!("({l},{rr})"))
        .collect();
    format!(
        "switches={{{}}} pairing=[{}] normal={} graded(rho={rho})={}",
        switches.join(","),
        pairing.join(","),
        is_normal(front, r),
        is_graded(front, r, rho, &mu),
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { io, movie } => {
            if movie {
                let m = load_movie(&io.input)?;
                emit(
                    &io.out,
                    &m,
                    format!(
                        "valid movie: {} slices, {} events",
                        m.slices.len(),
                        m.events.len()
                    ),
                )?;
            } else {
                let f = load_front(&io)?;
                let profile: Vec<String> = f.profile().iter().map(|n| n.to_string()).collect();
                emit(
                    &io.out,
                    &f,
                    format!("valid front: {} (profile {})", f, profile.join(",")),
                )?;
            }
            Ok(())
        }
        Command::Invariants { io } => {
            let f = load_front(&io)?;
            let inv = f.classical_invariants();
            let tb = inv
                .tb
                .map_or("n/a (multi-component)".to_string(), |t| t.to_string());
            let rot: Vec<String> = inv.rotation.iter().map(|r| r.to_string()).collect();
            emit(
                &io.out,
                &inv,
                format!(
                    "components: {}\nrotation: [{}]\ntb: {tb}",
                    inv.component_count,
                    rot.join(",")
                ),
            )
        }
        Command::Rulings { io, normal, rho } => {
            let f = load_front(&io)?;
            let mu = f.maslov_potential(io.shifts.as_deref());
            let rulings = enumerate_rulings(
                &f,
                RulingFilter {
                    normal,
                    graded: rho,
                },
                Some(&mu),
            );
            let mut lines = vec![format!("{} ruling(s)", rulings.len())];
            for r in &rulings {
                lines.push(ruling_text(&f, r, rho.unwrap_or(0)));
            }
            emit(&io.out, &rulings, lines.join("\n"))
        }
        Command::RulingPoly { io, rho } => {
            let f = load_front(&io)?;
            let mu = f.maslov_potential(io.shifts.as_deref());
            let poly = ruling_polynomial(&f, rho, Some(&mu));
            emit(&io.out, &poly, format!("R^{rho}(z) = {poly}"))
        }
        Command::SplashDga { io } => {
            let f = load_front(&io)?;
            let s = splash_of(&f, io.shifts.as_deref());
            #[derive(Serialize)]
            struct Manifest<'a> {
                dga: &'a legknot::z2::Dga,
                inserts: &'a [legknot::splash::InsertKind],
                zones: Vec<ZoneWire>,
            }
            #[derive(Serialize)]
            struct ZoneWire {
                strands: usize,
                potential: Vec<i64>,
            }
            let zones = (0..=s.zone_count())
                .map(|m| ZoneWire {
                    strands: s.zone_strands(m),
                    potential: s.zone_potential(m).to_vec(),
                })
                .collect();
            let manifest = Manifest {
                dga: s.dga(),
                inserts: s.inserts(),
                zones,
            };
            emit(
                &io.out,
                &manifest,
                serde_json::to_string_pretty(&manifest).expect("serializable"),
            )
        }
        Command::CheckD2 { io } => {
            let f = load_front(&io)?;
            let s = splash_of(&f, io.shifts.as_deref());
            match dga_check(s.dga()) {
                Ok(()) => emit(
                    &io.out,
                    &true,
                    format!("d^2 = 0 and deg d = -1 on {} generators", s.dga().len()),
                ),
                Err(e) => {
                    println!("FAILED: {e}");
                    Err(CliError::Verdict)
                }
            }
        }
        Command::Augmentations { io, rho } => {
            let f = load_front(&io)?;
            let s = splash_of(&f, io.shifts.as_deref());
            let augs = enumerate_augmentations(&s, rho);
            let wires: Vec<AugmentationWire> = augs.iter().map(|a| a.to_wire(s.dga())).collect();
            let mut lines = vec![format!("{} augmentation(s) (rho={rho})", augs.len())];
            for w in &wires {
                let ones: Vec<&str> = w.values.keys().map(|k| k.as_str()).collect();
                lines.push(format!("eps=1 on {{{}}}", ones.join(",")));
            }
            emit(&io.out, &wires, lines.join("\n"))
        }
        Command::Lch { io, rho } => {
            let f = load_front(&io)?;
            let s = splash_of(&f, io.shifts.as_deref());
            let augs = enumerate_augmentations(&s, rho);
            #[derive(Serialize)]
            struct Entry {
                augmentation: AugmentationWire,
                dims: BTreeMap<String, usize>,
            }
            let mut entries = Vec::new();
            let mut lines = vec![format!("{} augmentation(s) (rho={rho})", augs.len())];
            for (i, a) in augs.iter().enumerate() {
                let dims =
                    linearized_homology(s.dga(), a).expect("enumerated augmentations verify");
                lines.push(format!("aug #{i}: {}", dims_text(&dims)));
                entries.push(Entry {
                    augmentation: a.to_wire(s.dga()),
                    dims: dims_wire(&dims).dims,
                });
            }
            emit(&io.out, &entries, lines.join("\n"))
        }
        Command::AugToRuling { io, aug } => {
            let f = load_front(&io)?;
            let s = splash_of(&f, io.shifts.as_deref());
            let wire: AugmentationWire = serde_json::from_str(&read_json_arg(&aug)?)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let aug = Augmentation::from_wire(&wire, s.dga())
                .map_err(|e| CliError::Input(e.to_string()))?;
            let ruling =
                augmentation_to_ruling(&s, &aug).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&io.out, &ruling, ruling_text(&f, &ruling, aug.rho))
        }
        Command::RulingToMovie { io, switches } => {
            let f = load_front(&io)?;
            let mu = f.maslov_potential(io.shifts.as_deref());
            let ruling = Ruling::from_switches(&f, switches.into_iter().collect())
                .map_err(|e| CliError::Input(e.to_string()))?;
            let movie =
                ruling_to_movie(&f, &ruling, &mu).map_err(|e| CliError::Input(e.to_string()))?;
            emit(
                &io.out,
                &movie,
                serde_json::to_string_pretty(&movie).expect("serializable"),
            )
        }
        Command::Gfh { io } => {
            let movie = load_movie(&io.input)?;
            let dims = gf_homology(&movie).map_err(|e| CliError::Input(e.to_string()))?;
            emit(
                &io.out,
                &dims_wire(&dims),
                format!("GH = {}", dims_text(&dims)),
            )
        }
        Command::Theorem53 { io } => {
            let movie = load_movie(&io.input)?;
            let report = compare_homologies(&movie).map_err(|e| CliError::Input(e.to_string()))?;
            let verdict = if report.equal { "EQUAL" } else { "DIFFER" };
            emit(
                &io.out,
                &report,
                format!(
                    "GH = {}; LCH = {}; {verdict}",
                    dims_text(&report.gf),
                    dims_text(&report.lch)
                ),
            )?;
            if report.equal {
                Ok(())
            } else {
                Err(CliError::Verdict)
            }
        }
        Command::Duality { input, kind, out } => {
            let dims = parse_dims(&read_json_arg(&input)?)?;
            let ok = duality_check(&dims);
            let label = match kind {
                DualityKind::Lch => "LCH",
                DualityKind::Gf => "GH",
            };
            emit(&out, &ok, format!("{label} duality: {ok}"))?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verdict)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verdict) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
