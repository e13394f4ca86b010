//! Command-line census of tight contact structures on lens spaces, solid
//! tori, and thickened tori: counting, enumeration, Euler invariants, the
//! gluing checker, dividing-set combinatorics, and diagram emission.
//!
//! Output is JSON (one object per invocation, versioned with "schema": 1)
//! unless a diagram format is requested.  Exit code 0 means the computation
//! ran (an overtwisted result is an answer, not an error); exit code 2
//! means the arguments were unusable.

use clap::{Parser, Subcommand, ValueEnum};
use contact_census::contfrac;
use contact_census::diagram;
use contact_census::divsets::{self, AnnulusConfig, Arc, End, Side, TorusDividingSet};
use contact_census::farey::{self, Slope};
use contact_census::lens::{self, LensSpace};
use contact_census::slices::{self, GlueOutcome, MinimalDescriptor, Sign};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "contact-census", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Negative continued fraction of -p/q with its factorization path.
    Cf { p: i64, q: i64 },
    /// Farey tessellation arithmetic on slopes.
    Farey {
        #[command(subcommand)]
        op: FareyOp,
    },
    /// Tight structures on T^2 x I with two dividing curves per boundary.
    T2i {
        #[command(subcommand)]
        op: T2iOp,
    },
    /// Tight structures on the lens space L(p,q).
    Lens {
        #[command(subcommand)]
        op: LensOp,
    },
    /// Tight structures on the solid torus with boundary slope -p/q.
    Solidtorus {
        #[command(subcommand)]
        op: SolidOp,
    },
    /// Dividing-set combinatorics on tori, disks, and annuli.
    Divsets {
        #[command(subcommand)]
        op: DivsetsOp,
    },
    /// Static diagram emission.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
}

#[derive(Subcommand)]
enum FareyOp {
    /// Shortest factorization path between two slopes.
    Path {
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        negate: bool,
    },
    /// Do two slopes span an integral basis?
    Adjacent {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        negate: bool,
    },
    /// Slope produced by a bypass attachment.
    Bypass {
        #[arg(allow_hyphen_values = true)]
        slope: String,
        #[arg(allow_hyphen_values = true)]
        ruling: String,
        #[arg(long)]
        negate: bool,
    },
}

#[derive(Subcommand)]
enum T2iOp {
    /// Number of tight structures with boundary slopes (-p/q, -1) and
    /// phi_I = n*pi.
    Count {
        p: i64,
        q: i64,
        #[arg(short, long, default_value_t = 0)]
        n: u32,
    },
    /// All minimally twisting descriptors with their invariants.
    Enumerate { p: i64, q: i64 },
    /// Euler vector of a descriptor.
    Euler {
        /// Descriptor JSON {"cf": [...], "counts": [...]}, inline or from
        /// a file with @path, or "-" for stdin.
        #[arg(long)]
        from_json: String,
    },
    /// Tightness of a stack of basic slices.
    GlueCheck {
        /// One sign per slice, e.g. "+-+" (first, since the chain may
        /// contain hyphens).
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        /// Slope chain, outermost first.
        #[arg(allow_hyphen_values = true, num_args = 2..)]
        chain: Vec<String>,
    },
    /// Exact I-twisting of a slope chain.
    Twisting {
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        chain: Vec<String>,
    },
}

#[derive(Subcommand)]
enum LensOp {
    Count {
        p: i64,
        q: i64,
    },
    Enumerate {
        p: i64,
        q: i64,
    },
    /// Number of universally tight structures.
    UtCount {
        p: i64,
        q: i64,
    },
}

#[derive(Subcommand)]
enum SolidOp {
    Count { p: i64, q: i64 },
    Enumerate { p: i64, q: i64 },
}

#[derive(Subcommand)]
enum DivsetsOp {
    /// Nonrotative annulus configurations with 2*n0 inner and 2*n1 outer
    /// markings.
    Enumerate {
        n0: u32,
        n1: u32,
        /// Holonomy window; defaults to CONTACT_CENSUS_WINDOW or 8.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Dual template set of a configuration.
    Dual {
        /// Configuration JSON, inline, @path, or "-".
        config: String,
        #[arg(long)]
        window: Option<u32>,
    },
    /// Reflexivity (A*)* = A of a configuration.
    Reflexive {
        config: String,
        #[arg(long)]
        window: Option<u32>,
    },
    /// Disk-equivalence of two configurations with two inner markings.
    DiskEquiv { config_a: String, config_b: String },
    /// Bypass attachment on a torus dividing set.
    Bypass {
        /// Torus division number (half the number of dividing curves).
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        ruling: String,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum DiagramFormat {
    Svg,
    Dot,
}

#[derive(Subcommand)]
enum DiagramOp {
    /// The Farey tessellation to a mediant depth.
    Farey {
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Svg)]
        format: DiagramFormat,
    },
    /// Chord diagram of a disk dividing set or an annulus configuration.
    Chord {
        /// Disk: t(boundary) magnitude; renders the index-th configuration.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Annulus configuration JSON (alternative to --t).
        #[arg(long)]
        config: Option<String>,
    },
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

// Keeps every 2x2 determinant formed downstream far from i64 overflow.
const SLOPE_LIMIT: i64 = 1_000_000_000;

fn parse_slope(text: &str, negate: bool) -> Result<Slope, CliError> {
    let s: Slope = text
        .parse()
        .map_err(|_| CliError(format!("cannot parse slope '{text}'")))?;
    if s.numer().abs() > SLOPE_LIMIT || s.denom() > SLOPE_LIMIT {
        return Err(CliError(format!("slope '{text}' out of supported range")));
    }
    if negate {
        Slope::new(-s.numer(), s.denom()).map_err(|e| CliError(e.to_string()))
    } else {
        Ok(s)
    }
}

fn read_payload(text: &str) -> Result<String, CliError> {
    if text == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
        Ok(buf)
    } else if let Some(path) = text.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(text.to_string())
    }
}

fn descriptor_from_json(text: &str) -> Result<MinimalDescriptor, CliError> {
    let v: Value = serde_json::from_str(&read_payload(text)?)?;
    let coeffs = v["cf"]
        .as_array()
        .ok_or_else(|| CliError("missing 'cf' array".into()))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| CliError("bad coefficient".into())))
        .collect::<Result<Vec<i64>, _>>()?;
    let counts = v["counts"]
        .as_array()
        .ok_or_else(|| CliError("missing 'counts' array".into()))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|c| c as u32)
                .ok_or_else(|| CliError("bad count".into()))
        })
        .collect::<Result<Vec<u32>, _>>()?;
    let cf = contfrac::NegContFrac::new(coeffs)?;
    Ok(MinimalDescriptor { cf, counts })
}

fn config_to_json(c: &AnnulusConfig) -> Value {
    let arcs: Vec<Value> = c
        .arc_rows()
        .iter()
        .map(|((sa, ia), (sb, ib), w)| json!([[sa, ia], [sb, ib], w]))
        .collect();
    json!({
        "n_inner": c.n_inner(),
        "n_outer": c.n_outer(),
        "arcs": arcs,
        "essential_closed": c.essential_closed(),
    })
}

fn config_from_json(text: &str) -> Result<AnnulusConfig, CliError> {
    let v: Value = serde_json::from_str(&read_payload(text)?)?;
    let n_inner = v["n_inner"]
        .as_u64()
        .ok_or_else(|| CliError("missing n_inner".into()))? as u32;
    let n_outer = v["n_outer"]
        .as_u64()
        .ok_or_else(|| CliError("missing n_outer".into()))? as u32;
    let essential = v["essential_closed"].as_u64().unwrap_or(0) as u32;
    let mut arcs = Vec::new();
    for row in v["arcs"]
        .as_array()
        .ok_or_else(|| CliError("missing arcs".into()))?
    {
        let end = |e: &Value| -> Result<End, CliError> {
            let side = match e[0].as_u64() {
                Some(0) => Side::Inner,
                Some(1) => Side::Outer,
                _ => return Err(CliError("arc side must be 0 or 1".into())),
            };
            let idx = e[1]
                .as_u64()
                .ok_or_else(|| CliError("bad arc index".into()))? as u32;
            Ok(End::new(side, idx))
        };
        let wind = row[2]
            .as_i64()
            .ok_or_else(|| CliError("bad winding".into()))?;
        arcs.push(Arc::new(end(&row[0])?, end(&row[1])?, wind));
    }
    Ok(AnnulusConfig::new(n_inner, n_outer, arcs, essential)?)
}

fn descriptor_json(d: &MinimalDescriptor) -> Result<Value, CliError> {
    let e = slices::descriptor_euler(d)?;
    Ok(json!({
        "cf": d.cf.coeffs(),
        "counts": d.counts,
        "euler": [e.x, e.y],
        "universally_tight": slices::is_universally_tight(d),
    }))
}

fn window_default(explicit: Option<u32>) -> u32 {
    explicit
        .or_else(|| {
            std::env::var("CONTACT_CENSUS_WINDOW")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(8)
}

fn count_json(count: u128) -> Value {
    u64::try_from(count)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(count.to_string()))
}

fn guard_enumeration(count: u128) -> Result<(), CliError> {
    const MAX_ENUMERATED: u128 = 1_000_000;
    if count > MAX_ENUMERATED {
        return Err(CliError(format!(
            "{count} descriptors is too many to emit; use the count subcommand"
        )));
    }
    Ok(())
}

fn emit(v: Value) {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(1));
    if let Value::Object(map) = v {
        out.extend(map);
    }
    println!("{}", Value::Object(out));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cf { p, q } => {
            if p == q && q == 1 {
                return Err(CliError(
                    "slope -1 has no negative continued fraction".into(),
                ));
            }
            if p > SLOPE_LIMIT {
                return Err(CliError(format!("p is limited to {SLOPE_LIMIT}")));
            }
            let cf = contfrac::to_cf(p, q)?;
            let path: Vec<String> = contfrac::path_via_cf(p, q)?
                .iter()
                .map(Slope::to_string)
                .collect();
            let blocks = contfrac::block_shape(&cf);
            emit(json!({
                "p": p,
                "q": q,
                "coeffs": cf.coeffs(),
                "path": path,
                "blocks": blocks.sizes,
            }));
        }
        Command::Farey { op } => match op {
            FareyOp::Path { from, to, negate } => {
                let (a, b) = (parse_slope(&from, negate)?, parse_slope(&to, negate)?);
                let path: Vec<String> = farey::shortest_path(a, b)
                    .iter()
                    .map(Slope::to_string)
                    .collect();
                emit(json!({ "path": path }));
            }
            FareyOp::Adjacent { a, b, negate } => {
                let (a, b) = (parse_slope(&a, negate)?, parse_slope(&b, negate)?);
                emit(json!({ "adjacent": farey::farey_adjacent(a, b) }));
            }
            FareyOp::Bypass {
                slope,
                ruling,
                negate,
            } => {
                let (s, r) = (parse_slope(&slope, negate)?, parse_slope(&ruling, negate)?);
                emit(json!({ "slope": farey::bypass_slope(s, r)?.to_string() }));
            }
        },
        Command::T2i { op } => match op {
            T2iOp::Count { p, q, n } => match slices::count_t2i(p, q, n) {
                Ok(count) => emit(json!({ "count": count_json(count) })),
                Err(slices::SliceError::NonrotativeCase) => {
                    let census = divsets::nonrotative_census(1, 1)?;
                    emit(json!({
                        "result": "nonrotative",
                        "classes_mod_holonomy": census.classes.len(),
                        "note": "unquotiented, the family is a Z-torsor under holonomy",
                    }));
                }
                Err(e) => return Err(e.into()),
            },
            T2iOp::Enumerate { p, q } => {
                guard_enumeration(slices::count_minimal(p, q)?)?;
                let descs = slices::enumerate_minimal(p, q)?;
                let rows: Vec<Value> = descs
                    .iter()
                    .map(descriptor_json)
                    .collect::<Result<_, _>>()?;
                emit(json!({ "count": rows.len(), "descriptors": rows }));
            }
            T2iOp::Euler { from_json } => {
                let d = descriptor_from_json(&from_json)?;
                let e = slices::descriptor_euler(&d)?;
                emit(json!({ "euler": [e.x, e.y] }));
            }
            T2iOp::GlueCheck { signs, chain } => {
                let slopes = chain
                    .iter()
                    .map(|s| parse_slope(s, false))
                    .collect::<Result<Vec<_>, _>>()?;
                let signs = signs
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(Sign::Pos),
                        '-' => Ok(Sign::Neg),
                        other => Err(CliError(format!("bad sign '{other}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let f = slices::SliceFactorization::from_chain(&slopes, &signs)?;
                match slices::glue_check(&f)? {
                    GlueOutcome::Tight(d) => {
                        emit(json!({ "result": "tight", "descriptor": descriptor_json(&d)? }))
                    }
                    GlueOutcome::Overtwisted => emit(json!({ "result": "overtwisted" })),
                }
            }
            T2iOp::Twisting { chain } => {
                let slopes = chain
                    .iter()
                    .map(|s| parse_slope(s, false))
                    .collect::<Result<Vec<_>, _>>()?;
                let t = slices::twisting(&slopes);
                emit(json!({
                    "half_turns": t.half_turns,
                    "residual": [t.residual.0.to_string(), t.residual.1.to_string()],
                }));
            }
        },
        Command::Lens { op } => match op {
            LensOp::Count { p, q } => {
                let l = LensSpace::new(p, q)?;
                emit(json!({ "count": count_json(lens::count_lens(&l)) }));
            }
            LensOp::Enumerate { p, q } => {
                let l = LensSpace::new(p, q)?;
                guard_enumeration(lens::count_lens(&l))?;
                let rows: Vec<Value> = lens::enumerate_lens(&l)?
                    .iter()
                    .map(|d| json!({ "rotations": d.rotations }))
                    .collect();
                emit(json!({ "count": rows.len(), "descriptors": rows }));
            }
            LensOp::UtCount { p, q } => {
                let l = LensSpace::new(p, q)?;
                emit(json!({ "count": lens::universally_tight_count_lens(&l) }));
            }
        },
        Command::Solidtorus { op } => match op {
            SolidOp::Count { p, q } => {
                emit(json!({ "count": count_json(lens::count_solid_torus(p, q)?) }));
            }
            SolidOp::Enumerate { p, q } => {
                guard_enumeration(lens::count_solid_torus(p, q)?)?;
                let rows: Vec<Value> = lens::enumerate_solid_torus(p, q)?
                    .iter()
                    .map(|d| {
                        let inner = match &d.descriptor {
                            Some(md) => descriptor_json(md)?,
                            None => Value::Null,
                        };
                        Ok(json!({ "descriptor": inner, "meridian_rotation": d.meridian_rot }))
                    })
                    .collect::<Result<_, CliError>>()?;
                emit(json!({ "count": rows.len(), "descriptors": rows }));
            }
        },
        Command::Divsets { op } => match op {
            DivsetsOp::Enumerate { n0, n1, window } => {
                let window = window_default(window);
                let census = divsets::nonrotative_census(n0, n1)?;
                let set = divsets::enumerate_nonrotative(n0, n1, window)?;
                let classes: Vec<Value> = census
                    .classes
                    .iter()
                    .map(|c| {
                        json!({
                            "representative": config_to_json(&c.representative),
                            "orbit_len": c.orbit_len,
                        })
                    })
                    .collect();
                emit(json!({
                    "count_mod_holonomy": census.classes.len(),
                    "classes": classes,
                    "window": window,
                    "representatives": set.configs.iter().map(config_to_json).collect::<Vec<_>>(),
                }));
            }
            DivsetsOp::Dual { config, window } => {
                let c = config_from_json(&config)?;
                let window = window_default(window);
                let dual = divsets::dual_set(std::slice::from_ref(&c), c.n_inner(), window)?;
                emit(json!({
                    "count": dual.configs.len(),
                    "templates": dual.configs.iter().map(config_to_json).collect::<Vec<_>>(),
                }));
            }
            DivsetsOp::Reflexive { config, window } => {
                let c = config_from_json(&config)?;
                let window = window_default(window);
                emit(json!({ "reflexive": divsets::reflexive_check(&c, window)? }));
            }
            DivsetsOp::DiskEquiv { config_a, config_b } => {
                let a = config_from_json(&config_a)?;
                let b = config_from_json(&config_b)?;
                emit(json!({ "disk_equivalent": divsets::disk_equivalent(&a, &b)? }));
            }
            DivsetsOp::Bypass { n, slope, ruling } => {
                let ds = TorusDividingSet::new(n, parse_slope(&slope, false)?)?;
                let next = divsets::attach_bypass(&ds, parse_slope(&ruling, false)?)?;
                emit(json!({ "n": next.n, "slope": next.slope.to_string() }));
            }
        },
        Command::Diagram { op } => match op {
            DiagramOp::Farey { depth, format } => match format {
                DiagramFormat::Svg => print!("{}", diagram::farey_svg(depth)),
                DiagramFormat::Dot => print!("{}", diagram::farey_dot(depth)),
            },
            DiagramOp::Chord { t, index, config } => match (t, config) {
                (Some(t), None) => {
                    let configs = divsets::enumerate_disk(t)?;
                    let c = configs
                        .get(index)
                        .ok_or_else(|| CliError(format!("index {index} out of range")))?;
                    print!("{}", diagram::disk_svg(c));
                }
                (None, Some(cfg)) => {
                    let c = config_from_json(&cfg)?;
                    print!("{}", diagram::annulus_svg(&c));
                }
                _ => {
                    return Err(CliError(
                        "chord needs exactly one of --t or --config".into(),
                    ))
                }
            },
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
