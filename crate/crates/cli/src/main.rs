//! Command-line interface: exact splitting fields, coordinate rings of
//! their Galois group schemes, Frobenius data, Artin motives, and the
//! verification suites. Every subcommand prints one JSON report on stdout;
//! identical invocations print identical reports (the timing block is the
//! only nondeterministic part).

mod cache;
mod report;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use galois_core::frobenius::{algebraic_frobenius, chebotarev_sweep, splitting_type};
use galois_core::galois::{fixed_field, GaloisSubextension, Subgroup};
use galois_core::modp::is_prime_u64;
use galois_core::motives::{coaction, de_rham, gamma_comparison, motive_of, sections, EtaleScheme};
use galois_core::poly::QPoly;
use galois_core::ring::{
    build_coordinate_ring, restriction, truncated_absolute_group, CoordinateRing,
};
use galois_core::splitting::AmbientGaloisField;
use galois_core::trager::roots_of_qpoly_in;
use galois_core::verify::run_suites;
use galois_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "galois",
    version,
    about = "Exact computational Galois theory: splitting fields, group schemes, Frobenius points, Artin motives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Shared {
    /// Input polynomial, repeatable (text like "x^3 - 2" or JSON coeffs)
    #[arg(long = "poly", required = true, num_args = 1)]
    polys: Vec<String>,
    /// Cap on the ambient splitting-field degree
    #[arg(long, default_value_t = 24)]
    max_degree: usize,
    /// Directory for the ambient-field cache (default: $GALOIS_CACHE)
    #[arg(long)]
    ambient_cache: Option<PathBuf>,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pretty-print the JSON report
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a splitting field: degree, group order, classes, roots
    Split(Shared),
    /// Full automorphism group: composition table, classes, subgroups
    Group(Shared),
    /// Build the coordinate ring A(L/K) and export its Hopf structure
    CoordinateRing {
        #[command(flatten)]
        shared: Shared,
        /// Base field: the splitting subfield of this polynomial (default Q)
        #[arg(long)]
        over: Option<String>,
    },
    /// Enumerate the points of A(N/Q) over a subfield
    Points {
        #[command(flatten)]
        shared: Shared,
        /// Target subfield: splitting subfield of this polynomial (default N)
        #[arg(long)]
        over: Option<String>,
    },
    /// Tower of coordinate rings with restriction maps
    Restrict(Shared),
    /// Frobenius data at one prime or over a sweep
    Frobenius {
        #[command(flatten)]
        shared: Shared,
        /// A single rational prime
        #[arg(short = 'p', long = "prime")]
        prime: Option<u64>,
        /// A prime range "A..B" (half-open)
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Motive of a finite etale scheme with its realizations
    Motive {
        #[command(flatten)]
        shared: Shared,
        /// The scheme Spec Q[x]/(f); f must split in the ambient field
        #[arg(long)]
        scheme: String,
        /// Emit the full report (default; kept for compatibility)
        #[arg(long)]
        report: bool,
    },
    /// De Rham realization of a scheme's motive
    Dr {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        scheme: String,
    },
    /// Run the verification suites
    Check {
        /// One of exact-algebra, galois-engine, rings, frobenius, motives, all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
    },
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
        Error::NotAnEmbedding => "NotAnEmbedding",
        Error::NoEmbedding => "NoEmbedding",
        Error::RamifiedOrBadPrime(_) => "RamifiedOrBadPrime",
        Error::RamifiedInfinitePlace => "RamifiedInfinitePlace",
        Error::InconsistentDescent(_) => "InconsistentDescent",
        Error::AmbientMismatch => "AmbientMismatch",
        Error::Parse(_) => "Parse",
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Domain(e)) => {
            let obj = json!({
                "error": {
                    "code": error_code(&e),
                    "message": e.to_string(),
                }
            });
            println!("{}", serde_json::to_string(&obj).unwrap());
            std::process::exit(1);
        }
    }
}

struct Timing {
    start: Instant,
    build_ms: u128,
    compute_ms: u128,
}

impl Timing {
    fn new() -> Self {
        Timing {
            start: Instant::now(),
            build_ms: 0,
            compute_ms: 0,
        }
    }

    fn json(&self) -> Value {
        json!({
            "build_ms": self.build_ms as u64,
            "compute_ms": self.compute_ms as u64,
            "total_ms": self.start.elapsed().as_millis() as u64,
        })
    }
}

fn parse_polys(raw: &[String]) -> Result<Vec<QPoly>, CliError> {
    raw.iter()
        .map(|s| QPoly::parse(s).map_err(CliError::from))
        .collect()
}

fn cache_dir(shared: &Shared) -> Option<PathBuf> {
    shared
        .ambient_cache
        .clone()
        .or_else(|| std::env::var_os("GALOIS_CACHE").map(PathBuf::from))
}

fn emit(
    subcommand: &str,
    args_echo: Value,
    results: Value,
    timing: &Timing,
    pretty: bool,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let report = json!({
        "schema_version": "1.0",
        "command": {
            "subcommand": subcommand,
            "args": args_echo,
        },
        "results": results,
        "timing": timing.json(),
    });
    let text = if pretty {
        serde_json::to_string_pretty(&report).unwrap()
    } else {
        serde_json::to_string(&report).unwrap()
    };
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn ambient_for(shared: &Shared, polys: &[QPoly]) -> Result<Arc<AmbientGaloisField>, CliError> {
    Ok(cache::get_ambient(
        polys,
        shared.max_degree,
        cache_dir(shared).as_deref(),
    )?)
}

/// The subgroup fixing the splitting subfield of `g` inside the ambient.
fn splitting_subgroup(
    ambient: &Arc<AmbientGaloisField>,
    g: &QPoly,
) -> Result<Subgroup, CliError> {
    let sf = g.squarefree_part();
    if sf.deg0() == 0 {
        return Ok(Subgroup::whole(Arc::clone(ambient)));
    }
    let roots = roots_of_qpoly_in(&sf, ambient.field());
    if roots.len() != sf.deg0() {
        return Err(CliError::Domain(Error::NoEmbedding));
    }
    Ok(Subgroup::fixing(Arc::clone(ambient), &roots))
}

fn whole_ring_over(
    ambient: &Arc<AmbientGaloisField>,
    over: Option<&QPoly>,
) -> Result<CoordinateRing, CliError> {
    let outer = match over {
        None => Subgroup::whole(Arc::clone(ambient)),
        Some(g) => splitting_subgroup(ambient, g)?,
    };
    let ext = Arc::new(GaloisSubextension::new(
        Subgroup::trivial(Arc::clone(ambient)),
        outer,
    )?);
    Ok(build_coordinate_ring(ext)?)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Split(shared) => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let results = report::split_report(&ambient);
            emit(
                "split",
                json!({"poly": shared.polys, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Group(shared) => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let results = report::group_report(&ambient);
            emit(
                "group",
                json!({"poly": shared.polys, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::CoordinateRing { shared, over } => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let over_poly = over
                .as_deref()
                .map(QPoly::parse)
                .transpose()
                .map_err(CliError::from)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            let ring = whole_ring_over(&ambient, over_poly.as_ref())?;
            let results = report::ring_report(&ring);
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "coordinate-ring",
                json!({"poly": shared.polys, "over": over, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Points { shared, over } => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let over_poly = over
                .as_deref()
                .map(QPoly::parse)
                .transpose()
                .map_err(CliError::from)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            let ring = whole_ring_over(&ambient, None)?;
            let target = match over_poly {
                None => ring.ext().l_field().clone(),
                Some(g) => fixed_field(&splitting_subgroup(&ambient, &g)?),
            };
            let points = ring.points(&target);
            let results = report::points_report(&ring, &target, &points);
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "points",
                json!({"poly": shared.polys, "over": over, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Restrict(shared) => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let t = Instant::now();
            let tower = truncated_absolute_group(&polys, shared.max_degree)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            // Homomorphism independence: every embedding of each level into
            // a later one induces the same restriction matrix.
            let mut independent = true;
            for i in 0..tower.levels().len() {
                for j in i + 1..tower.levels().len() {
                    let src = &tower.levels()[i];
                    let dst = &tower.levels()[j];
                    let maps: Vec<_> = src
                        .ext()
                        .embeddings()
                        .iter()
                        .map(|phi| restriction(src, dst, phi))
                        .collect::<Result<_, _>>()?;
                    for m in &maps {
                        independent &= m == &maps[0];
                    }
                    independent &= tower.map(i, j) == &maps[0];
                }
            }
            let results = report::restrict_report(&tower, independent);
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "restrict",
                json!({"poly": shared.polys, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Frobenius {
            shared,
            prime,
            sweep,
        } => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            let ring = whole_ring_over(&ambient, None)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            let results = match (prime, sweep.clone()) {
                (Some(p), None) => {
                    if !is_prime_u64(p) {
                        return Err(CliError::Usage(format!("{p} is not prime")));
                    }
                    let data = algebraic_frobenius(&ring, p)?;
                    let degrees: Vec<Vec<usize>> = ambient
                        .defining_polys()
                        .iter()
                        .map(|f| splitting_type(f, p))
                        .collect::<Result<_, _>>()?;
                    report::frobenius_record(&data, &degrees)
                }
                (None, Some(range)) => {
                    let (lo, hi) = parse_range(&range)?;
                    let mut records = Vec::new();
                    let mut skipped = Vec::new();
                    for p in lo..hi {
                        if !is_prime_u64(p) {
                            continue;
                        }
                        match algebraic_frobenius(&ring, p) {
                            Ok(data) => {
                                let degrees: Vec<Vec<usize>> = ambient
                                    .defining_polys()
                                    .iter()
                                    .map(|f| splitting_type(f, p))
                                    .collect::<Result<_, _>>()
                                    .unwrap_or_default();
                                records.push(report::frobenius_record(&data, &degrees));
                            }
                            Err(_) => skipped.push(p),
                        }
                    }
                    let sweep_stats = chebotarev_sweep(&ambient, lo, hi);
                    json!({
                        "sweep": {"from": lo, "to": hi},
                        "records": records,
                        "skipped": skipped,
                        "chebotarev": report::chebotarev_json(&sweep_stats, ambient.group_order()),
                    })
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "give either --prime or --sweep, not both".into(),
                    ))
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "frobenius needs --prime P or --sweep A..B".into(),
                    ))
                }
            };
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "frobenius",
                json!({"poly": shared.polys, "prime": prime, "sweep": sweep, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Motive {
            shared,
            scheme,
            report: _,
        } => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let scheme_poly = QPoly::parse(&scheme).map_err(CliError::from)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            let x = EtaleScheme::of_polynomial(Arc::clone(&ambient), &scheme_poly)?;
            let v = motive_of(&x);
            let w = de_rham(&v);
            let ring = whole_ring_over(&ambient, None)?;
            let gamma = gamma_comparison(&x, &w);
            let coact = coaction(&v, &ring, &w)?;
            let comodule_ok = coact.verify_axioms(&ring) && coact.verify_evaluation(&v, &ring, &w);
            let over_q = sections(&v, &Subgroup::whole(Arc::clone(&ambient))).len();
            let over_n = sections(&v, &Subgroup::trivial(Arc::clone(&ambient))).len();
            let by_component: Vec<usize> = x
                .components()
                .iter()
                .map(|h| sections(&v, h).len())
                .collect();
            let results = json!({
                "dim": v.dim(),
                "orbits": x.components().len(),
                "sections_by_subfield": {
                    "Q": over_q,
                    "components": by_component,
                    "splitting_field": over_n,
                },
                "dr_dim": w.dim(),
                "gamma_iso_ok": gamma.ok(),
                "comodule_ok": comodule_ok,
                "finite_type_kernel_order": v.finite_type_level().order(),
            });
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "motive",
                json!({"poly": shared.polys, "scheme": scheme, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Dr { shared, scheme } => {
            let mut timing = Timing::new();
            let polys = parse_polys(&shared.polys)?;
            let scheme_poly = QPoly::parse(&scheme).map_err(CliError::from)?;
            let t = Instant::now();
            let ambient = ambient_for(&shared, &polys)?;
            timing.build_ms = t.elapsed().as_millis();
            let t = Instant::now();
            let x = EtaleScheme::of_polynomial(Arc::clone(&ambient), &scheme_poly)?;
            let v = motive_of(&x);
            let w = de_rham(&v);
            let gamma = gamma_comparison(&x, &w);
            let results = json!({
                "motive_dim": v.dim(),
                "dr_dim": w.dim(),
                "basis": w
                    .basis
                    .iter()
                    .map(|wv| wv.iter().map(report::coords_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "gamma_iso_ok": gamma.ok(),
                "factor_degrees": gamma
                    .factor_fields
                    .iter()
                    .map(|f| f.dim())
                    .collect::<Vec<_>>(),
            });
            timing.compute_ms = t.elapsed().as_millis();
            emit(
                "dr",
                json!({"poly": shared.polys, "scheme": scheme, "max_degree": shared.max_degree}),
                results,
                &timing,
                shared.pretty,
                shared.out.as_ref(),
            )
        }
        Command::Check {
            suite,
            max_degree,
            out,
            pretty,
        } => {
            let mut timing = Timing::new();
            let t = Instant::now();
            let results = run_suites(&suite, max_degree)?;
            timing.compute_ms = t.elapsed().as_millis();
            if pretty {
                for r in &results {
                    let status = if r.passed {
                        "PASS"
                    } else if r.warn_only {
                        "WARN"
                    } else {
                        "FAIL"
                    };
                    eprintln!("{:14} {:30} {status}", r.suite, r.name);
                }
            }
            let failed = results.iter().any(|r| !r.passed && !r.warn_only);
            emit(
                "check",
                json!({"suite": suite, "max_degree": max_degree}),
                report::check_report(&suite, &results),
                &timing,
                pretty,
                out.as_ref(),
            )?;
            if failed {
                std::process::exit(1);
            }
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let parts: Vec<&str> = s.split("..").collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("bad range `{s}`, expected A..B")));
    }
    let lo = parts[0]
        .trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("bad range start in `{s}`")))?;
    let hi = parts[1]
        .trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("bad range end in `{s}`")))?;
    if lo >= hi {
        return Err(CliError::Usage(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}
