//! `pfwin` — command-line front end for the exact window-verification
//! toolkit.
//!
//! Subcommands: `cohomology`, `ext`, `window`, `mutate`, `euler`, `cy3`,
//! `monodromy`, `verify`.  Every command computes one canonical JSON
//! payload; `--json` prints it, the default prints a table rendered from
//! it.  Payloads of pure computations are cached content-addressed under
//! `$PFWIN_CACHE` (see [`cache`]); results are identical with caching on
//! or off.
//!
//! Exit codes: `0` success, `1` a requested check failed, `2` invalid
//! input, `3` word/path error.

mod cache;
mod expr;
mod output;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Number;

use pfwin_core::bwb::{cohomology_g27, p6_line_cohomology};
use pfwin_core::extcalc::{ext_g27, higher_ext_vanishes_xg, higher_ext_vanishes_xp};
use pfwin_core::klattice::{self, chi_g, chi_y};
use pfwin_core::matrix::IMat;
use pfwin_core::skms;
use pfwin_core::verify::{run_all, run_check, CHECK_NAMES};
use pfwin_core::weights::SBundle;
use pfwin_core::windows::{build_window, check_exceptionality, mutation_chain};
use pfwin_core::Error;

use cache::Cache;
use expr::{parse_bundle, parse_tuple};
use output::*;

/// JSON schema version of the CLI payloads (documented in docs/schemas.md);
/// part of every cache key alongside the core convention version.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "pfwin",
    version,
    about = "Exact verification toolkit for Grassmannian/Pfaffian window collections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a bundle on G(2,7) or of a line bundle on P^6
    Cohomology {
        /// Bundle expression: O(m) | S(m) | Sym^l S(m) | Sym^l S^v(m)
        expr: String,
        /// Space: g27 or p6
        #[arg(long, default_value = "g27")]
        space: String,
        #[arg(long)]
        json: bool,
    },
    /// Ext between two bundles: plain profile or a total-space certificate
    Ext {
        /// Source bundle expression
        e: String,
        /// Target bundle expression
        f: String,
        /// Space: g27 (Ext profile), xg or xp (vanishing certificates)
        #[arg(long, default_value = "g27")]
        space: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a window and check it
    Window {
        /// Window tuple m0,m1,m2 (negative offsets allowed: --m -1,0,0)
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Exceptionality check only (the default)
        #[arg(long)]
        check: bool,
        /// Additionally certify the Gram form and Kapranov fullness
        #[arg(long)]
        full: bool,
        /// Additionally replay the named mutation chain
        #[arg(long = "mutate-chain")]
        mutate_chain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Replay the named mutation chain with its class identities
    Mutate {
        #[arg(long)]
        json: bool,
    },
    /// Euler pairings χ of a bundle pair on the Grassmannian and on the
    /// threefold
    Euler {
        e: String,
        f: String,
        #[arg(long)]
        json: bool,
    },
    /// Report the numerical Calabi–Yau lattice
    Cy3 {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a loop/path word on the lattice
    Monodromy {
        /// Word tokens (whitespace-separated), e.g. gG g2 g1 g0 gP
        #[arg(required = true)]
        word: Vec<String>,
        /// Also audit the groupoid relations
        #[arg(long = "check-relations")]
        check_relations: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the named verification checks
    Verify {
        /// Run a single check by name (default: all twelve)
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    // Die quietly when the read end of a pipe closes (`pfwin … | head`),
    // like other line-oriented Unix tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// Print a payload: canonical JSON with `--json`, the rendered table
/// otherwise.  Both views come from the same typed value, so output is
/// identical whether the value was computed or replayed from the cache.
fn emit<T: serde::Serialize>(json: bool, out: &T, render: impl FnOnce(&T)) -> Result<(), Error> {
    if json {
        println!("{}", to_payload(out)?);
    } else {
        render(out);
    }
    Ok(())
}

fn run(command: Command) -> Result<i32, Error> {
    let cache = Cache::from_env();
    match command {
        Command::Cohomology { expr, space, json } => {
            let b = parse_bundle(&expr)?;
            let out = cmd_cohomology(&cache, &b, &space)?;
            emit(json, &out, render_cohomology)?;
            Ok(0)
        }
        Command::Ext { e, f, space, json } => {
            let e = parse_bundle(&e)?;
            let f = parse_bundle(&f)?;
            match space.as_str() {
                "g27" => emit(json, &cmd_ext_profile(&cache, &e, &f)?, render_ext)?,
                "xg" => emit(json, &cmd_ext_xg(&cache, &e, &f)?, render_xg)?,
                "xp" => emit(json, &cmd_ext_xp(&cache, &e, &f)?, render_xp)?,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown space {other:?}: expected g27, xg, or xp"
                    )))
                }
            }
            Ok(0)
        }
        Command::Window { m, check: _, full, mutate_chain, json } => {
            let tuple = parse_tuple(&m)?;
            let out = cmd_window(&cache, tuple, full, mutate_chain)?;
            emit(json, &out, render_window)?;
            Ok(if out.pass { 0 } else { 1 })
        }
        Command::Mutate { json } => {
            let out = cmd_mutate(&cache)?;
            emit(json, &out, render_mutate)?;
            Ok(if out.pass { 0 } else { 1 })
        }
        Command::Euler { e, f, json } => {
            let e = parse_bundle(&e)?;
            let f = parse_bundle(&f)?;
            let out = cmd_euler(&cache, &e, &f)?;
            emit(json, &out, render_euler)?;
            Ok(0)
        }
        Command::Cy3 { json } => {
            let out = cmd_cy3(&cache)?;
            emit(json, &out, render_cy3)?;
            Ok(if out.pass { 0 } else { 1 })
        }
        Command::Monodromy { word, check_relations, json } => {
            let text = word.join(" ");
            let out = cmd_monodromy(&cache, &text, check_relations)?;
            emit(json, &out, render_monodromy)?;
            Ok(if out.pass { 0 } else { 1 })
        }
        Command::Verify { check, json } => {
            let out = cmd_verify(&cache, check.as_deref())?;
            emit(json, &out, render_verify)?;
            if out.passed {
                Ok(0)
            } else {
                let first = out.checks.iter().find(|c| !c.passed).expect("a failed check");
                eprintln!("first failing check: {} — {}", first.name, first.details);
                Ok(1)
            }
        }
    }
}

fn degree_rows(dims: &std::collections::BTreeMap<u32, BigInt>) -> Result<Vec<DegreeDim>, Error> {
    dims.iter()
        .map(|(d, k)| Ok(DegreeDim { degree: *d, dim: num(k)? }))
        .collect()
}

/// Canonical cache arguments for the three `ext` variants.
fn ext_key(space: &str, e: &SBundle, f: &SBundle) -> String {
    format!("schema={SCHEMA_VERSION};space={space};e={},{};f={},{}", e.l, e.m, f.l, f.m)
}

fn cmd_cohomology(cache: &Cache, b: &SBundle, space: &str) -> Result<CohomologyOut, Error> {
    // Validate outside the cache so invalid inputs always exit 2.
    match space {
        "g27" => {}
        "p6" => {
            if b.l != 0 {
                return Err(Error::InvalidInput(format!(
                    "{b} does not live on P^6: only line bundles O(m) do"
                )));
            }
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown space {other:?}: expected g27 or p6"
            )))
        }
    }
    let args = format!("schema={SCHEMA_VERSION};space={space};l={};m={}", b.l, b.m);
    cache.get_or_compute("cohomology", &args, || {
        let dims = if space == "p6" { p6_line_cohomology(b.m).dims() } else { cohomology_g27(b).dims() };
        Ok(CohomologyOut {
            space: space.to_string(),
            bundle: b.into(),
            cohomology: degree_rows(&dims)?,
        })
    })
}

fn cmd_ext_profile(cache: &Cache, e: &SBundle, f: &SBundle) -> Result<ExtOut, Error> {
    cache.get_or_compute("ext", &ext_key("g27", e, f), || {
        let profile = ext_g27(e, f);
        Ok(ExtOut {
            space: "g27".to_string(),
            e: e.into(),
            f: f.into(),
            ext: degree_rows(profile.dims())?,
        })
    })
}

fn cmd_ext_xg(cache: &Cache, e: &SBundle, f: &SBundle) -> Result<XgOut, Error> {
    cache.get_or_compute("ext", &ext_key("xg", e, f), || {
        let cert = higher_ext_vanishes_xg(e, f);
        let witness = cert
            .witness
            .map(|w| {
                Ok::<_, Error>(XgWitnessDto {
                    grade: w.grade,
                    summand: (&w.summand).into(),
                    degree: w.degree,
                    dim: num(&w.dim)?,
                })
            })
            .transpose()?;
        Ok(XgOut {
            space: "xg".to_string(),
            e: e.into(),
            f: f.into(),
            vanishes: cert.vanishes,
            scanned: ScanRange { from: cert.scanned.0, to: cert.scanned.1 },
            witness,
        })
    })
}

fn cmd_ext_xp(cache: &Cache, e: &SBundle, f: &SBundle) -> Result<XpOut, Error> {
    cache.get_or_compute("ext", &ext_key("xp", e, f), || {
        let cert = higher_ext_vanishes_xp(e, f);
        let witness = cert
            .witness
            .map(|w| {
                Ok::<_, Error>(XpWitnessDto {
                    lambda: w.lambda.parts().to_vec(),
                    t: w.t,
                    p6_twist: w.p6_twist,
                    multiplicity: num(&w.multiplicity)?,
                })
            })
            .transpose()?;
        Ok(XpOut {
            space: "xp".to_string(),
            e: e.into(),
            f: f.into(),
            vanishes: cert.vanishes,
            max_relevant_cauchy_degree: cert.max_relevant_cauchy_degree,
            witness,
        })
    })
}

fn mutate_payload() -> Result<MutateOut, Error> {
    let lattice = klattice::global()?;
    let steps: Vec<MutationStepDto> = mutation_chain()?
        .into_iter()
        .map(|s| MutationStepDto {
            before: s.before,
            row: s.row,
            removed: (&s.removed).into(),
            inserted: (&s.inserted).into(),
            after: s.after,
        })
        .collect();
    let class_identities = lattice.mutation_chain_identities()?;
    let serre_identity_windows: Vec<[i64; 3]> = vec![
        [0, 0, 0],
        [-1, 0, 0],
        [-1, -1, 0],
        [-1, -1, -1],
        [-2, -1, 0],
        [6, 7, 8],
    ];
    let mut serre_ok = true;
    for tuple in &serre_identity_windows {
        let w = build_window(*tuple)?;
        let order = check_exceptionality(&w).order;
        serre_ok &= order.len() == 21 && lattice.serre_mutation_identity(&order)?;
    }
    let pass = class_identities && serre_ok;
    Ok(MutateOut { steps, class_identities, serre_identity_windows, pass })
}

fn cmd_mutate(cache: &Cache) -> Result<MutateOut, Error> {
    let args = format!("schema={SCHEMA_VERSION};chain=named");
    cache.get_or_compute("mutate", &args, mutate_payload)
}

fn cmd_window(
    cache: &Cache,
    tuple: [i64; 3],
    full: bool,
    mutate_chain: bool,
) -> Result<WindowOut, Error> {
    // Validate outside the cache so invalid tuples always exit 2.
    let w = build_window(tuple)?;
    let args = format!(
        "schema={SCHEMA_VERSION};m={},{},{};full={full};chain={mutate_chain}",
        tuple[0], tuple[1], tuple[2]
    );
    cache.get_or_compute("window", &args, || {
        let report = check_exceptionality(&w);
        let mut pass = report.verdict;
        let (mut gram_unit_triangular, mut fullness_det) = (None, None);
        if full {
            let lattice = klattice::global()?;
            let gram_ok = lattice.gram(&report.order).is_ok();
            let cert = lattice.kapranov_fullness_certificate(&w)?;
            pass &= gram_ok && cert.is_unimodular();
            gram_unit_triangular = Some(gram_ok);
            fullness_det = Some(num(&cert.det)?);
        }
        let mutation = if mutate_chain {
            let chain = mutate_payload()?;
            pass &= chain.pass;
            Some(chain)
        } else {
            None
        };
        Ok(WindowOut {
            tuple,
            generators: w.generators().iter().map(Into::into).collect(),
            exceptional: report.verdict,
            edge_count: report.edge_count,
            diagonal_order_valid: report.diagonal_order_valid,
            order: report.order.iter().map(Into::into).collect(),
            gram_unit_triangular,
            fullness_det,
            mutation_chain: mutation,
            pass,
        })
    })
}

fn cmd_euler(cache: &Cache, e: &SBundle, f: &SBundle) -> Result<EulerOut, Error> {
    let args = format!("schema={SCHEMA_VERSION};e={},{};f={},{}", e.l, e.m, f.l, f.m);
    cache.get_or_compute("euler", &args, || {
        Ok(EulerOut {
            e: e.into(),
            f: f.into(),
            chi_g: num(&chi_g(e, f))?,
            chi_y: num(&chi_y(e, f))?,
        })
    })
}

fn matrix_rows(m: &IMat) -> Result<Vec<Vec<Number>>, Error> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| num(m.get(i, j))).collect())
        .collect()
}

fn cmd_cy3(cache: &Cache) -> Result<Cy3Out, Error> {
    let args = format!("schema={SCHEMA_VERSION};report=lattice");
    cache.get_or_compute("cy3", &args, || {
        let lattice = klattice::global()?;
        let cy3 = lattice.cy3();
        let mut transvections_ok = true;
        for l in 0..=2u32 {
            let t = lattice.transvection_matrix(&SBundle::new(l, 0))?;
            transvections_ok &= cy3.preserves_pairing(&t);
        }
        let mut twists_ok = true;
        for k in [-1i64, 1] {
            let t = cy3.descend(&lattice.line_twist_matrix(k)?)?;
            twists_ok &= cy3.preserves_pairing(&t);
        }
        let invariant_factors: Result<Vec<Number>, Error> =
            cy3.invariant_factors.iter().map(num).collect();
        Ok(Cy3Out {
            rank: cy3.rank,
            invariant_factors: invariant_factors?,
            pairing: matrix_rows(&cy3.pairing)?,
            transvections_preserve_pairing: transvections_ok,
            line_twists_preserve_pairing: twists_ok,
            pass: transvections_ok && twists_ok,
        })
    })
}

fn cmd_monodromy(cache: &Cache, text: &str, check_relations: bool) -> Result<MonodromyOut, Error> {
    // Parse and reduce outside the cache so word/path errors always exit 3.
    let word = skms::Word::parse(text)?;
    let reduced = skms::reduce_path(&word)?;
    let args = format!("schema={SCHEMA_VERSION};word={text};relations={check_relations}");
    cache.get_or_compute("monodromy", &args, || {
        let rep = skms::assign_representation()?;
        let matrix = rep.evaluate(&word)?;
        let relations = if check_relations {
            let r = skms::check_relations(&rep)?;
            Some(RelationsDto {
                big_circle: r.big_circle,
                pole_decomposition: r.pole_decomposition,
                walls_unipotent: r.walls_unipotent,
                pairing_preserved: r.pairing_preserved,
                ladders_compose: r.ladders_compose,
                random_words_consistent: r.random_words_consistent,
                all_hold: r.all_hold(),
            })
        } else {
            None
        };
        let pass = relations.as_ref().map_or(true, |r| r.all_hold);
        Ok(MonodromyOut {
            word: word.to_string(),
            reduced: reduced.to_string(),
            is_identity: matrix.is_identity(),
            matrix: matrix_rows(&matrix)?,
            relations,
            pass,
        })
    })
}

fn cmd_verify(cache: &Cache, check: Option<&str>) -> Result<VerifyOut, Error> {
    let selection = match check {
        None => "all".to_string(),
        Some(name) => {
            if !CHECK_NAMES.contains(&name) {
                return Err(Error::InvalidInput(format!(
                    "unknown check {name:?}: expected one of {}",
                    CHECK_NAMES.join(", ")
                )));
            }
            name.to_string()
        }
    };
    let args = format!(
        "schema={SCHEMA_VERSION};checks={selection};tool={}",
        env!("CARGO_PKG_VERSION")
    );
    cache.get_or_compute("verify", &args, || {
        let results = match check {
            None => run_all()?,
            Some(name) => {
                let id = CHECK_NAMES.iter().position(|n| *n == name).expect("validated") + 1;
                vec![run_check(id)?]
            }
        };
        let checks: Vec<CheckDto> = results
            .into_iter()
            .map(|r| CheckDto {
                id: r.id,
                name: r.name.to_string(),
                passed: r.passed,
                details: r.details,
            })
            .collect();
        let passed = checks.iter().all(|c| c.passed);
        Ok(VerifyOut {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            convention_version: pfwin_core::CONVENTION_VERSION.to_string(),
            checks,
            passed,
        })
    })
}
