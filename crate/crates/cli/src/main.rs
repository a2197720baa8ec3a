use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rootinv::classgroup::{class_group, toric_class_group};
use rootinv::invariants::{omega_polynomial, report, report_b_sym, veronese_structure};
use rootinv::monoid::{hilbert_basis_kernel, parse_instance, MonoidInstance, DEFAULT_FRONTIER_CAP};
use rootinv::relations::{fixture, relations_bounded, relations_equivalent, DEFAULT_FIBER_CAP};
use rootinv::selfcheck::{e6_residual_basis, selfcheck, SelfcheckOptions};
use rootinv::{Error, IntMatrix, RootSystem, RootSystemType, DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP};

const SCHEMA_VERSION: &str = "1";

/// Multiplicative invariants of root lattices.
#[derive(Parser, Debug)]
#[command(name = "rootinv", version)]
struct Cli {
    /// Largest Weyl orbit expanded into a Laurent polynomial.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
    /// Largest Weyl group enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Family letter, optionally with the rank attached (`E6`, `D`).
    family: String,
    /// Lie rank, when not attached to the family.
    rank: Option<usize>,
}

impl TypeArg {
    /// Canonical name when the type parses, the raw input otherwise.
    fn echo(&self) -> String {
        self.parse().map(|t| t.to_string()).unwrap_or_else(|_| match self.rank {
            Some(r) => format!("{} {r}", self.family),
            None => self.family.clone(),
        })
    }

    fn parse(&self) -> Result<RootSystemType, Error> {
        match self.rank {
            Some(r) => format!("{}{r}", self.family).parse(),
            None => self.family.parse(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data: roots, Cartan matrix, fundamental weights, Weyl group order.
    Info(TypeArg),
    /// Invariant algebra report.
    Invariants {
        #[command(flatten)]
        ty: TypeArg,
        /// Expand every generator as a Laurent polynomial.
        #[arg(long)]
        expand: bool,
        /// Regenerate binomial relations among the generators.
        #[arg(long)]
        relations: bool,
        /// List the cells of the Hironaka decomposition.
        #[arg(long)]
        hironaka: bool,
        /// Largest factorization degree examined for relations.
        #[arg(long, default_value_t = 4)]
        degree_bound: u32,
        /// Type B only: invariants of the symmetric group on the coordinates.
        #[arg(long)]
        symmetric: bool,
    },
    /// Hilbert basis of a kernel monoid or a congruence monoid.
    Hilbert {
        /// One kernel row, e.g. "1 2 -3".
        #[arg(long, conflicts_with = "monoid", required_unless_present = "monoid")]
        ker: Option<String>,
        /// Instance file with congruences or `ker:` rows.
        #[arg(long)]
        monoid: Option<PathBuf>,
    },
    /// Divisor class group of the invariant algebra.
    Classgroup(TypeArg),
    /// Second Veronese subring in `d` variables.
    Veronese { d: usize },
    /// Replay every reference computation.
    Selfcheck {
        /// Also enumerate W(E6) and W(E7) and scan W(E7) exhaustively.
        #[arg(long)]
        with_e7: bool,
    },
}

/// Outcome of a command: the payload and whether every verification passed.
struct Outcome {
    payload: Value,
    verified: bool,
}

fn ok(payload: Value) -> Outcome {
    Outcome { payload, verified: true }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn info(ty: RootSystemType) -> Result<Outcome, Error> {
    let rs = RootSystem::build(ty)?;
    let weights: Vec<String> = rs.fundamental_weights_alpha.iter().map(|w| w.to_string()).collect();
    let simple: Vec<String> = rs.simple_roots.iter().map(|r| r.to_string()).collect();
    let quotient = rootinv::AbelianGroupStructure::new(rs.weight_lattice_quotient());
    Ok(ok(json!({
        "root_system": ty.to_string(),
        "rank": ty.rank,
        "ambient_dimension": rs.ambient_dim,
        "root_count": rs.roots_alpha.len(),
        "weyl_group_order": ty.weyl_group_order(),
        "cartan_matrix": rs.cartan_rows(),
        "cartan_determinant": rs.cartan_determinant().to_string(),
        "simple_roots": simple,
        "fundamental_weights_alpha": weights,
        "weight_orders": rs.weight_orders(),
        "weight_lattice_quotient": quotient.to_string(),
        "note": ty.isomorphism_note(),
    })))
}

struct InvariantFlags {
    expand: bool,
    relations: bool,
    hironaka: bool,
    degree_bound: u32,
    symmetric: bool,
}

fn invariants(ty: RootSystemType, flags: &InvariantFlags, orbit_cap: usize) -> Result<Outcome, Error> {
    if flags.symmetric {
        if ty.family != rootinv::Family::B {
            return Err(Error::InvalidRank { family: ty.family.letter(), rank: ty.rank });
        }
        return Ok(ok(json!({ "report": report_b_sym(ty.rank)? })));
    }
    let mut r = report(ty)?;
    if !flags.hironaka {
        r = r.without_cells();
    }
    let mut out = serde_json::Map::new();
    let mut verified = r.closed_form_generators_agree != Some(false) && r.closed_form_monoid_agrees != Some(false);

    if flags.expand {
        let rs = RootSystem::build(ty)?;
        let mut expansions = serde_json::Map::new();
        let mut partial = None;
        for g in &r.generators {
            match omega_polynomial(&rs, &g.exponent, orbit_cap) {
                Ok(p) => {
                    expansions.insert(g.label.clone(), Value::String(p.to_string()));
                }
                Err(e @ Error::OrbitCapExceeded { .. }) => {
                    partial = Some(e.to_string());
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        out.insert("expansions".into(), Value::Object(expansions));
        if let Some(e) = partial {
            out.insert("partial".into(), json!({ "reason": e }));
        }
    }

    if flags.relations {
        let labels = r.labels();
        let rels = relations_bounded(&r.hilbert_basis, flags.degree_bound, DEFAULT_FIBER_CAP)?;
        let shown: Vec<String> = rels.iter().map(|b| b.display_with(&labels)).collect();
        out.insert("degree_bound".into(), json!(flags.degree_bound));
        out.insert("relations".into(), json!(shown));
        let reference = if ty == RootSystemType::a(2) {
            Some(("a2", r.hilbert_basis.clone(), rels.clone(), flags.degree_bound))
        } else if ty == RootSystemType::a(3) {
            Some(("a3", r.hilbert_basis.clone(), rels.clone(), flags.degree_bound))
        } else if ty == RootSystemType::e(6) {
            let w = e6_residual_basis()?;
            let bound = flags.degree_bound.min(3);
            let ours = relations_bounded(&w, bound, DEFAULT_FIBER_CAP)?;
            Some(("e6", w, ours, bound))
        } else {
            None
        };
        if let Some((name, basis, ours, bound)) = reference {
            let fx = fixture(name).expect("bundled").reindex(&basis)?;
            let eq = relations_equivalent(&ours, &fx, &basis, bound, DEFAULT_FIBER_CAP)?;
            verified &= eq;
            out.insert(
                "fixture".into(),
                json!({ "name": name, "degree_bound": bound, "reference_count": fx.len(),
                        "regenerated_count": ours.len(), "equivalent": eq }),
            );
        }
    }
    out.insert("report".into(), to_value(&r));
    Ok(Outcome { payload: Value::Object(out), verified })
}

fn hilbert(ker: Option<&str>, monoid: Option<&PathBuf>) -> Result<Outcome, Error> {
    let instance = match (ker, monoid) {
        (Some(row), _) => parse_instance(&format!("ker: {row}"))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
            parse_instance(&text)?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let basis = match &instance {
        MonoidInstance::Congruence(m) => m.hilbert_basis_box(),
        MonoidInstance::Kernel(a) => hilbert_basis_kernel(a, DEFAULT_FRONTIER_CAP)?,
    };
    let source = match &instance {
        MonoidInstance::Congruence(m) => json!({ "congruences": m.congruences(), "dimension": m.dim() }),
        MonoidInstance::Kernel(a) => json!({ "kernel": kernel_rows(a) }),
    };
    Ok(ok(json!({ "instance": source, "count": basis.len(), "basis": basis.elements })))
}

fn kernel_rows(a: &IntMatrix) -> Vec<Vec<i64>> {
    a.to_i64_rows().unwrap_or_default()
}

fn classgroup(ty: RootSystemType, group_cap: usize) -> Result<Outcome, Error> {
    let cl = class_group(ty, group_cap)?;
    let toric = toric_class_group(ty)?;
    let agrees = toric == cl.group;
    Ok(Outcome {
        payload: json!({
            "class_group": cl.group.to_string(),
            "details": cl,
            "toric_class_group": toric.to_string(),
            "cross_check": agrees,
        }),
        verified: agrees,
    })
}

fn run_selfcheck(opts: &SelfcheckOptions) -> Outcome {
    let checks = selfcheck(opts);
    for c in &checks {
        eprintln!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.criterion, c.name, c.detail);
    }
    let verified = checks.iter().all(|c| c.passed);
    Outcome { payload: json!({ "passed": verified, "checks": checks }), verified }
}

fn init_threads() {
    if let Some(n) = std::env::var("ROOTINV_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not configure {n} threads: {e}");
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_threads();
    let cli = Cli::parse();

    let (echo, result) = match &cli.command {
        Command::Info(t) => (json!({ "name": "info", "type": t.echo() }), t.parse().and_then(info)),
        Command::Invariants { ty, expand, relations, hironaka, degree_bound, symmetric } => {
            let flags = InvariantFlags {
                expand: *expand,
                relations: *relations,
                hironaka: *hironaka,
                degree_bound: *degree_bound,
                symmetric: *symmetric,
            };
            let echo = json!({ "name": "invariants", "type": ty.echo(), "expand": expand, "relations": relations,
                               "hironaka": hironaka, "degree_bound": degree_bound, "symmetric": symmetric });
            (echo, ty.parse().and_then(|t| invariants(t, &flags, cli.orbit_cap)))
        }
        Command::Hilbert { ker, monoid } => (
            json!({ "name": "hilbert", "ker": ker, "monoid": monoid }),
            hilbert(ker.as_deref(), monoid.as_ref()),
        ),
        Command::Classgroup(t) => {
            (json!({ "name": "classgroup", "type": t.echo() }), t.parse().and_then(|t| classgroup(t, cli.group_cap)))
        }
        Command::Veronese { d } => (
            json!({ "name": "veronese", "d": d }),
            veronese_structure(*d).map(|v| ok(to_value(&v))),
        ),
        Command::Selfcheck { with_e7 } => {
            let opts = SelfcheckOptions { with_e7: *with_e7, orbit_cap: cli.orbit_cap, group_cap: cli.group_cap };
            (json!({ "name": "selfcheck", "with_e7": with_e7 }), Ok(run_selfcheck(&opts)))
        }
    };

    match result {
        Ok(outcome) => {
            let doc = json!({ "schema_version": SCHEMA_VERSION, "command": echo, "payload": outcome.payload });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidRank { .. } | Error::InvalidMonoid(_) | Error::DimensionMismatch { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
