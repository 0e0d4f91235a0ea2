//! Command-line surface: wall enumeration, reflections, diffeomorphism data,
//! crossing invariants, the SVG chart, the Seiberg-Witten side computation,
//! and the hermetic fixture verifier.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::{json, Value};

use wallcross::report::{emit_json, render_figure, run_verify, FigureSpec};
use wallcross::swside::{sw_reflection_invariant, SwContext};
use wallcross::{
    chambers, crossing, lattice, ChamberPoint, Error, HomologyOrientation, Isometry, LatticeClass,
    Sign,
};

#[derive(Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Exact wall-crossing calculator on the rank-3 Lorentzian lattice"
)]
struct Cli {
    /// Emit canonical JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Homology orientation: '-' flips the base orientation sign of every
    /// wall and negates all crossing counts.
    #[arg(
        long,
        global = true,
        default_value = "+",
        allow_hyphen_values = true,
        value_name = "+|-"
    )]
    homology_orientation: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the walls with c <= c_max.
    Walls {
        #[arg(long, value_name = "N")]
        c_max: i64,
    },
    /// Reflect a lattice class in a square -1 class.
    Reflect {
        /// Reflection class: '+', '-', or 'a,b,c'.
        #[arg(long, allow_hyphen_values = true, value_name = "SIGMA")]
        sigma: String,
        /// Class to reflect, as 'a,b,c'.
        #[arg(long, allow_hyphen_values = true, value_name = "CLASS")]
        class: String,
    },
    /// Show the isometry of a reflection word with its orientation data.
    Diffeo {
        /// Word such as '-,+' or '1,1,1;-1,1,1' (first entry acts first).
        #[arg(long, allow_hyphen_values = true, value_name = "WORD")]
        word: String,
        /// Integral lift of w2 used for the beta sign.
        #[arg(
            long,
            default_value = "1,1,1",
            allow_hyphen_values = true,
            value_name = "CLASS"
        )]
        w2_lift: String,
    },
    /// Crossing report and formal invariant for a word and start point.
    Invariant {
        #[arg(long, allow_hyphen_values = true, value_name = "WORD")]
        word: String,
        /// Start point: 'poincare:u,v' or 'hyperboloid:x,y,z' (exact rationals).
        #[arg(
            long,
            default_value = "poincare:0,0",
            allow_hyphen_values = true,
            value_name = "POINT"
        )]
        start: String,
        /// Manifold symbol carrying the invariant.
        #[arg(long, default_value = "X0", value_name = "NAME")]
        symbol: String,
        #[arg(
            long,
            default_value = "1,1,1",
            allow_hyphen_values = true,
            value_name = "CLASS"
        )]
        w2_lift: String,
    },
    /// Render the chamber chart as SVG.
    Figure {
        #[arg(long, default_value_t = 3, value_name = "N")]
        c_max: i64,
        /// Poincare disk points 'u,v'; may be repeated.
        #[arg(long, allow_hyphen_values = true, value_name = "U,V")]
        point: Vec<String>,
        /// Reflection words; may be repeated.
        #[arg(long, allow_hyphen_values = true, value_name = "WORD")]
        word: Vec<String>,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        #[arg(long, default_value_t = 280)]
        disk_radius: u32,
    },
    /// Seiberg-Witten side: parity, ring, and epsilon parity.
    Sw {
        #[arg(long, value_name = "N")]
        b_plus_x: i64,
        /// Spinor norm of the diffeomorphism.
        #[arg(
            long,
            default_value = "+",
            allow_hyphen_values = true,
            value_name = "+|-"
        )]
        alpha: String,
    },
    /// Formal moduli dimension -2 p1 - 3 (1 + b+).
    Dim {
        #[arg(long, default_value_t = -1, allow_hyphen_values = true, value_name = "N")]
        p1: i64,
        #[arg(long, default_value_t = 1, value_name = "N")]
        b_plus: i64,
    },
    /// Replay the anchored fixtures; exits 0 only if every fixture passes.
    Verify {
        /// Run only fixtures whose name contains this substring.
        #[arg(long, value_name = "SUBSTR")]
        only: Option<String>,
    },
}

fn parse_sign(text: &str) -> Result<Sign, Error> {
    match text {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(Error::Parse(format!("expected '+' or '-', got '{other}'"))),
    }
}

fn parse_orientation(text: &str) -> Result<HomologyOrientation, Error> {
    Ok(match parse_sign(text)? {
        Sign::Plus => HomologyOrientation::Standard,
        Sign::Minus => HomologyOrientation::Reversed,
    })
}

fn parse_rational(text: &str) -> Result<BigRational, Error> {
    BigRational::from_str(text.trim())
        .map_err(|_| Error::Parse(format!("invalid rational '{text}'")))
}

fn parse_class(text: &str) -> Result<LatticeClass, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected a class 'a,b,c', got '{text}'"
        )));
    }
    let coord =
        |s: &str| BigInt::from_str(s).map_err(|_| Error::Parse(format!("invalid integer '{s}'")));
    Ok(LatticeClass::new(
        coord(parts[0])?,
        coord(parts[1])?,
        coord(parts[2])?,
    ))
}

fn parse_generator(token: &str) -> Result<LatticeClass, Error> {
    match token {
        "+" => Ok(LatticeClass::sigma_plus()),
        "-" => Ok(LatticeClass::sigma_minus()),
        other => parse_class(other),
    }
}

/// Word grammar: segments separated by ';'. A segment is either a
/// comma-separated run of '+'/'-' generators or one explicit triple 'a,b,c'.
fn parse_word(text: &str) -> Result<Vec<LatticeClass>, Error> {
    let mut word = Vec::new();
    for segment in text.split(';') {
        let segment = segment.trim();
        if segment.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = segment.split(',').map(str::trim).collect();
        if tokens.iter().all(|t| *t == "+" || *t == "-") {
            for token in tokens {
                word.push(parse_generator(token)?);
            }
        } else {
            word.push(parse_class(segment)?);
        }
    }
    Ok(word)
}

fn parse_start(text: &str) -> Result<ChamberPoint, Error> {
    if let Some(rest) = text.strip_prefix("poincare:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "expected 'poincare:u,v', got '{text}'"
            )));
        }
        return ChamberPoint::from_poincare(&parse_rational(parts[0])?, &parse_rational(parts[1])?);
    }
    if let Some(rest) = text.strip_prefix("hyperboloid:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected 'hyperboloid:x,y,z', got '{text}'"
            )));
        }
        return ChamberPoint::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        );
    }
    // Bare coordinates: two of them mean a Poincare point.
    let parts: Vec<&str> = text.split(',').collect();
    match parts.len() {
        2 => ChamberPoint::from_poincare(&parse_rational(parts[0])?, &parse_rational(parts[1])?),
        3 => ChamberPoint::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ),
        _ => Err(Error::Parse(format!("cannot read start point '{text}'"))),
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            println!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn matrix_lines(iso: &Isometry) -> String {
    (0..3)
        .map(|i| {
            format!(
                "  [ {:>6} {:>6} {:>6} ]",
                iso.matrix().entry(i, 0),
                iso.matrix().entry(i, 1),
                iso.matrix().entry(i, 2)
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Result<(String, u8), Box<dyn std::error::Error>> {
    let orientation = parse_orientation(&cli.homology_orientation)?;
    let text_or_json = |human: String, value: &Value| -> String {
        if cli.json {
            emit_json(value)
        } else {
            human
        }
    };

    match &cli.command {
        Command::Walls { c_max } => {
            let walls = chambers::enumerate_walls_oriented(&BigInt::from(*c_max), orientation);
            let value = Value::Array(walls.iter().map(|w| w.to_json()).collect());
            let mut human = String::new();
            for w in &walls {
                human.push_str(&format!("{}  eps {}\n", w.label(), w.eps()));
            }
            human.push_str(&format!("{} walls with c <= {c_max}", walls.len()));
            Ok((text_or_json(human, &value), 0))
        }
        Command::Reflect { sigma, class } => {
            let sigma = parse_generator(sigma)?;
            let class = parse_class(class)?;
            let image = lattice::reflect(&sigma, &class)?;
            let human = format!("{} = {}", image, image.algebraic());
            Ok((text_or_json(human, &image.to_json()), 0))
        }
        Command::Diffeo { word, w2_lift } => {
            let word = parse_word(word)?;
            let lift = parse_class(w2_lift)?;
            let iso = Isometry::from_word(&word)?;
            let beta = iso.beta(&lift)?;
            let ring = iso.ym_ring(&lift)?;
            let mut value = iso.to_json();
            let obj = value
                .as_object_mut()
                .expect("isometry serializes to an object");
            obj.insert(
                "det".to_string(),
                json!(iso.matrix().det().to_string().parse::<i64>()?),
            );
            obj.insert("alpha".to_string(), iso.alpha().to_json());
            obj.insert("beta".to_string(), beta.to_json());
            obj.insert("ring".to_string(), json!(ring.as_str()));
            obj.insert("w2_lift_image".to_string(), iso.apply(&lift).to_json());
            let human = format!(
                "{}\n  word length {}\n  det {}\n  alpha {}  beta {}  ring {}\n  lift {} -> {}",
                matrix_lines(&iso),
                iso.word().len(),
                iso.matrix().det(),
                iso.alpha(),
                beta,
                ring,
                lift.algebraic(),
                iso.apply(&lift).algebraic()
            );
            Ok((text_or_json(human, &value), 0))
        }
        Command::Invariant {
            word,
            start,
            symbol,
            w2_lift,
        } => {
            let word = parse_word(word)?;
            let lift = parse_class(w2_lift)?;
            let p0 = parse_start(start)?;
            let iso = Isometry::from_word(&word)?;
            let report = crossing::separation_crossings(&iso, &p0, orientation)?;
            let expression = crossing::one_param_invariant(&iso, &p0, symbol, &lift, orientation)?;
            let mut value = report.to_json();
            let obj = value
                .as_object_mut()
                .expect("report serializes to an object");
            obj.insert("ring".to_string(), json!(expression.ring().as_str()));
            obj.insert("expression".to_string(), expression.to_json());
            let mut human = String::new();
            for c in report.crossings() {
                human.push_str(&format!(
                    "{}  direction {}  contribution {}  doubled {:+}\n",
                    c.wall.label(),
                    c.direction,
                    c.contribution,
                    c.doubled()
                ));
            }
            human.push_str(&format!(
                "gamma . W = {}\ndoubled total = {}\nD = {}",
                report.gamma_dot_w(),
                report.doubled_total(),
                expression.pretty()
            ));
            Ok((text_or_json(human, &value), 0))
        }
        Command::Figure {
            c_max,
            point,
            word,
            width,
            height,
            disk_radius,
        } => {
            let mut points = Vec::new();
            for (i, text) in point.iter().enumerate() {
                let parts: Vec<&str> = text.split(',').collect();
                if parts.len() != 2 {
                    return Err(
                        Error::Parse(format!("expected a point 'u,v', got '{text}'")).into(),
                    );
                }
                points.push((
                    format!("p{}", i + 1),
                    parse_rational(parts[0])?,
                    parse_rational(parts[1])?,
                ));
            }
            let words = word
                .iter()
                .map(|w| parse_word(w))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = FigureSpec {
                wall_c_max: BigInt::from(*c_max),
                points,
                words,
                width: *width,
                height: *height,
                disk_radius: *disk_radius,
            };
            Ok((render_figure(&spec)?, 0))
        }
        Command::Sw { b_plus_x, alpha } => {
            let ctx = SwContext::new(*b_plus_x, parse_sign(alpha)?)?;
            let report = sw_reflection_invariant(&ctx)?;
            let human = format!(
                "parity {} (mod 2)\nring {}\nepsilon parity {}",
                report.parity, report.ring, report.epsilon_parity
            );
            Ok((text_or_json(human, &report.to_json()), 0))
        }
        Command::Dim { p1, b_plus } => {
            let dim = lattice::ym_dimension(&BigInt::from(*p1), &BigInt::from(*b_plus));
            let value =
                json!({"p1": p1, "b_plus": b_plus, "dimension": dim.to_string().parse::<i64>()?});
            Ok((text_or_json(format!("dimension {dim}"), &value), 0))
        }
        Command::Verify { only } => {
            let results = run_verify(only.as_deref());
            let failed = results.iter().filter(|r| !r.pass).count();
            let value = json!({
                "results": Value::Array(results.iter().map(|r| r.to_json()).collect()),
                "passed": results.len() - failed,
                "failed": failed,
            });
            let mut human = String::new();
            for r in &results {
                if r.pass {
                    human.push_str(&format!("ok   {}\n", r.name));
                } else {
                    human.push_str(&format!(
                        "FAIL {}\n  expected: {}\n  actual:   {}\n",
                        r.name, r.expected, r.actual
                    ));
                }
            }
            human.push_str(&format!(
                "{} passed, {} failed",
                results.len() - failed,
                failed
            ));
            Ok((text_or_json(human, &value), u8::from(failed > 0)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => {
            if let Err(e) = write_output(cli.out.as_ref(), &output) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
