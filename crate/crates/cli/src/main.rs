//! degenlab: decide, enumerate, and draw degeneration orders of
//! Cohen-Macaulay modules, exactly.
//!
//! Boolean commands speak through their exit status: 0 for true/success,
//! 1 for false, 2 for errors. Output is JSON on stdout (DOT for `hasse`
//! with `--format dot`).

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use degenlab_core::an::{hasse_for_class, hasse_for_rank, ANRing, RankTable};
use degenlab_core::ar::{self, ClosureBounds};
use degenlab_core::cyclic::Modulus;
use degenlab_core::expr::{parse_module, ParsedModule, RingContext};
use degenlab_core::mf::{knorrer_double, verify_mf, MFPair};
use degenlab_core::{Partition, Poly, PolyMatrix};

#[derive(Parser)]
#[command(name = "degenlab", version, about = "Degeneration orders of Cohen-Macaulay modules, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide dominance between two partitions of the same weight,
    /// e.g. `dominates "[2,1]" "[1,1,1]"`.
    Dominates {
        /// First partition, as a JSON array.
        p: String,
        /// Second partition, as a JSON array.
        q: String,
    },
    /// Decide whether the first module degenerates to the second
    /// (equivalently, reaches it by extensions).
    Degcheck {
        /// Ring k[[x]]/(x^m): a positive integer, or `inf` for k[[x]].
        #[arg(long, conflicts_with = "an")]
        modulus: Option<String>,
        /// (A_n) singularity parameters `n,d` with d even.
        #[arg(long)]
        an: Option<String>,
        /// Override the ranks of I_1..I_n (comma list, or one value for all).
        #[arg(long, requires = "an")]
        rank_table: Option<String>,
        /// The degenerating module, e.g. "R^3" or "x^3 + x".
        module_m: String,
        /// The candidate degeneration, e.g. "R + p + q".
        module_n: String,
    },
    /// Fitting exponents of a finite-length module over k[[x]].
    Fitting {
        #[arg(long, default_value = "inf")]
        modulus: String,
        /// Module expression, e.g. "x^3 + x".
        module: String,
    },
    /// Hasse diagram of degenerations: a dominance weight class
    /// (`--weight`) or (A_n) kappa classes (`--an` with `--rank` or
    /// `--class`).
    Hasse {
        /// Diagram of all partitions of this weight.
        #[arg(long, conflicts_with = "an")]
        weight: Option<u64>,
        /// (A_n) singularity parameters `n,d` with d even.
        #[arg(long)]
        an: Option<String>,
        /// All kappa classes of this rank.
        #[arg(long, requires = "an")]
        rank: Option<u64>,
        /// Only the kappa class of this module expression.
        #[arg(long, requires = "an", conflicts_with = "rank")]
        class: Option<String>,
        /// Total multiplicity bound (defaults to the rank).
        #[arg(long, requires = "an")]
        max_mult: Option<u64>,
        #[arg(long, requires = "an")]
        rank_table: Option<String>,
        /// Output format: json or dot.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Decompose a short exact sequence triple (sub, mid, quot) over
    /// k[[x]]/(x^m) into almost split sequences.
    Ardecompose {
        /// The modulus m (finite).
        #[arg(long)]
        modulus: u64,
        sub: String,
        mid: String,
        quot: String,
    },
    /// Check that the extended degeneration, extension, and AR orders
    /// coincide over k[[x]]/(x^m) at the given bounds.
    Theorem44 {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 8)]
        max_length: u64,
        /// Closure bounds `C,k`: auxiliary headroom and maximal power
        /// (default: max-length,3).
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Verify that phi and psi form a matrix factorization of f.
    Mfverify {
        /// Matrix as a JSON array of rows of polynomial strings.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        /// Target polynomial, e.g. "x^2".
        #[arg(long)]
        f: String,
    },
    /// Double a matrix factorization of f into one of f + y^2 + z^2.
    Knorrer {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        f: String,
        /// Fresh variables, two per doubling, e.g. "y,z" or "y,z,u,v".
        #[arg(long, default_value = "y,z")]
        vars: String,
        /// How many times to double.
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Variables declared invertible in the input pair.
        #[arg(long)]
        units: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CliResult = Result<bool, String>;

fn run(command: Command) -> CliResult {
    match command {
        Command::Dominates { p, q } => dominates(&p, &q),
        Command::Degcheck {
            modulus,
            an,
            rank_table,
            module_m,
            module_n,
        } => degcheck(modulus.as_deref(), an.as_deref(), rank_table.as_deref(), &module_m, &module_n),
        Command::Fitting { modulus, module } => fitting(&modulus, &module),
        Command::Hasse {
            weight,
            an,
            rank,
            class,
            max_mult,
            rank_table,
            format,
        } => hasse(weight, an.as_deref(), rank, class.as_deref(), max_mult, rank_table.as_deref(), &format),
        Command::Ardecompose {
            modulus,
            sub,
            mid,
            quot,
        } => ardecompose(modulus, &sub, &mid, &quot),
        Command::Theorem44 {
            m,
            max_length,
            bounds,
        } => theorem44(m, max_length, bounds.as_deref()),
        Command::Mfverify { phi, psi, f } => mfverify(&phi, &psi, &f),
        Command::Knorrer {
            phi,
            psi,
            f,
            vars,
            times,
            units,
        } => knorrer(&phi, &psi, &f, &vars, times, units.as_deref()),
    }
}

fn emit(value: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid partition {text:?}: {e}"))
}

fn parse_modulus(text: &str) -> Result<Modulus, String> {
    if text == "inf" {
        return Ok(Modulus::Infinite);
    }
    let m: u64 = text
        .parse()
        .map_err(|_| format!("invalid modulus {text:?}: expected a positive integer or inf"))?;
    if m == 0 {
        return Err("modulus must be >= 1".into());
    }
    Ok(Modulus::Finite(m))
}

fn parse_an_ring(text: &str, rank_table: Option<&str>) -> Result<ANRing, String> {
    let (n, d) = text
        .split_once(',')
        .ok_or_else(|| format!("invalid --an {text:?}: expected n,d"))?;
    let n: u64 = n.trim().parse().map_err(|_| format!("invalid n in --an {text:?}"))?;
    let d: u64 = d.trim().parse().map_err(|_| format!("invalid d in --an {text:?}"))?;
    let ring = match rank_table {
        None => ANRing::new(n, d),
        Some(spec) => {
            let entries: Result<Vec<u64>, _> = spec.split(',').map(|s| s.trim().parse::<u64>()).collect();
            let entries = entries.map_err(|_| format!("invalid --rank-table {spec:?}"))?;
            let ideal = match entries.len() {
                1 => vec![entries[0]; n as usize],
                len if len == n as usize => entries,
                len => {
                    return Err(format!(
                        "--rank-table needs 1 or {n} entries, got {len}"
                    ))
                }
            };
            let free = RankTable::default_for(n, d).free;
            ANRing::with_rank_table(n, d, RankTable { free, ideal })
        }
    };
    ring.map_err(|e| e.to_string())
}

fn ring_context(
    modulus: Option<&str>,
    an: Option<&str>,
    rank_table: Option<&str>,
) -> Result<RingContext, String> {
    match (modulus, an) {
        (Some(m), None) => Ok(RingContext::Cyclic(parse_modulus(m)?)),
        (None, Some(spec)) => Ok(RingContext::An(parse_an_ring(spec, rank_table)?)),
        (None, None) => Err("specify a ring with --modulus or --an".into()),
        (Some(_), Some(_)) => Err("--modulus and --an are mutually exclusive".into()),
    }
}

fn dominates(p: &str, q: &str) -> CliResult {
    let p = parse_partition(p)?;
    let q = parse_partition(q)?;
    let holds = p.dominates(&q).map_err(|e| e.to_string())?;
    emit(&serde_json::json!({ "dominates": holds }))?;
    Ok(holds)
}

fn degcheck(
    modulus: Option<&str>,
    an: Option<&str>,
    rank_table: Option<&str>,
    module_m: &str,
    module_n: &str,
) -> CliResult {
    let ctx = ring_context(modulus, an, rank_table)?;
    let left = parse_module(module_m, &ctx).map_err(|e| e.to_string())?;
    let right = parse_module(module_n, &ctx).map_err(|e| e.to_string())?;
    let leq = match (left, right) {
        (ParsedModule::Cyclic(a), ParsedModule::Cyclic(b)) => a.deg_leq(&b),
        (ParsedModule::An(a), ParsedModule::An(b)) => a.deg_leq(&b),
        _ => unreachable!("one context produces one module kind"),
    }
    .map_err(|e| e.to_string())?;
    emit(&serde_json::json!({ "leq": leq }))?;
    Ok(leq)
}

fn fitting(modulus: &str, module: &str) -> CliResult {
    let modulus = parse_modulus(modulus)?;
    let ctx = RingContext::Cyclic(modulus);
    let module = parse_module(module, &ctx)
        .map_err(|e| e.to_string())?
        .into_cyclic()
        .expect("cyclic context");
    let exponents = module.fitting_exponents().map_err(|e| e.to_string())?;
    emit(&serde_json::json!({ "exponents": exponents }))?;
    Ok(true)
}

fn hasse(
    weight: Option<u64>,
    an: Option<&str>,
    rank: Option<u64>,
    class: Option<&str>,
    max_mult: Option<u64>,
    rank_table: Option<&str>,
    format: &str,
) -> CliResult {
    match (weight, an) {
        (Some(n), None) => {
            let diagram = degenlab_core::partition::dominance_hasse(n);
            emit_diagram(&diagram, "dominance", format, None)
        }
        (None, Some(spec)) => {
            let ring = parse_an_ring(spec, rank_table)?;
            let warning = ring.ranks_experimental().then(|| {
                format!(
                    "ranks for d = {} use the unvalidated default 2^(d/2-1); \
                     the class invariant is validated only for d <= 2",
                    ring.d()
                )
            });
            let diagram = match (rank, class) {
                (Some(r), None) => {
                    let bound = max_mult.unwrap_or(r);
                    hasse_for_rank(&ring, r, bound)
                }
                (None, Some(expr)) => {
                    let module = parse_module(expr, &RingContext::An(ring.clone()))
                        .map_err(|e| e.to_string())?
                        .into_an()
                        .expect("an context");
                    let kappa = module.kappa();
                    let bound = max_mult.unwrap_or(kappa.rank);
                    hasse_for_class(&ring, kappa, bound)
                }
                _ => return Err("with --an, pass exactly one of --rank or --class".into()),
            };
            emit_diagram(&diagram, "degenerations", format, warning.as_deref())
        }
        _ => Err("pass exactly one of --weight or --an".into()),
    }
}

fn emit_diagram<T: serde::Serialize>(
    diagram: &degenlab_core::HasseDiagram<T>,
    name: &str,
    format: &str,
    warning: Option<&str>,
) -> CliResult {
    match format {
        "json" => {
            let mut value = serde_json::to_value(diagram).map_err(|e| e.to_string())?;
            if let (Some(w), Some(map)) = (warning, value.as_object_mut()) {
                map.insert("warning".into(), serde_json::Value::String(w.to_string()));
            }
            emit(&value)?;
            Ok(true)
        }
        "dot" => {
            if let Some(w) = warning {
                println!("// {w}");
            }
            print!("{}", diagram.to_dot(name));
            Ok(true)
        }
        other => Err(format!("unknown format {other:?}: expected json or dot")),
    }
}

fn ardecompose(modulus: u64, sub: &str, mid: &str, quot: &str) -> CliResult {
    let ctx = RingContext::Cyclic(Modulus::Finite(modulus));
    let parse = |text: &str| {
        parse_module(text, &ctx)
            .map_err(|e| e.to_string())
            .map(|m| m.into_cyclic().expect("cyclic context"))
    };
    let coefficients = ar::decompose_ses(&parse(sub)?, &parse(mid)?, &parse(quot)?)
        .map_err(|e| e.to_string())?;
    let as_strings: std::collections::BTreeMap<String, u64> = coefficients
        .into_iter()
        .map(|(a, c)| (a.to_string(), c))
        .collect();
    emit(&serde_json::json!({ "coefficients": as_strings }))?;
    Ok(true)
}

fn theorem44(m: u64, max_length: u64, bounds: Option<&str>) -> CliResult {
    if m == 0 {
        return Err("m must be >= 1".into());
    }
    let bounds = match bounds {
        None => ClosureBounds::defaults(max_length),
        Some(spec) => {
            let (c, k) = spec
                .split_once(',')
                .ok_or_else(|| format!("invalid --bounds {spec:?}: expected C,k"))?;
            ClosureBounds {
                aux_headroom: c.trim().parse().map_err(|_| "invalid C in --bounds".to_string())?,
                max_power: k.trim().parse().map_err(|_| "invalid k in --bounds".to_string())?,
            }
        }
    };
    let report = ar::verify_order_equivalence(m, max_length, bounds);
    emit(&report)?;
    Ok(report.equal)
}

fn mfverify(phi: &str, psi: &str, f: &str) -> CliResult {
    let phi: PolyMatrix = serde_json::from_str(phi).map_err(|e| format!("invalid --phi: {e}"))?;
    let psi: PolyMatrix = serde_json::from_str(psi).map_err(|e| format!("invalid --psi: {e}"))?;
    let f: Poly = f.parse().map_err(|e| format!("invalid --f: {e}"))?;
    let check = verify_mf(&phi, &psi, &f).map_err(|e| e.to_string())?;
    emit(&check)?;
    Ok(check.ok)
}

fn knorrer(
    phi: &str,
    psi: &str,
    f: &str,
    vars: &str,
    times: usize,
    units: Option<&str>,
) -> CliResult {
    let phi: PolyMatrix = serde_json::from_str(phi).map_err(|e| format!("invalid --phi: {e}"))?;
    let psi: PolyMatrix = serde_json::from_str(psi).map_err(|e| format!("invalid --psi: {e}"))?;
    let f: Poly = f.parse().map_err(|e| format!("invalid --f: {e}"))?;
    let units: BTreeSet<String> = units
        .map(|u| u.split(',').map(|s| s.trim().to_string()).collect())
        .unwrap_or_default();
    let names: Vec<&str> = vars.split(',').map(|s| s.trim()).collect();
    if names.len() != 2 * times {
        return Err(format!(
            "--vars needs {} names for {times} doubling(s), got {}",
            2 * times,
            names.len()
        ));
    }
    let mut pair = MFPair::new(phi, psi, f, units).map_err(|e| e.to_string())?;
    for step in 0..times {
        pair = knorrer_double(&pair, names[2 * step], names[2 * step + 1])
            .map_err(|e| e.to_string())?;
    }
    emit(&pair)?;
    Ok(true)
}
