//! JSON payload types and their human-readable renderings.
//!
//! Every subcommand computes one canonical JSON payload (the struct's
//! serde serialization, integers in full precision as JSON numbers) and
//! derives everything else from it: `--json` prints the payload verbatim,
//! the default mode parses it back and renders a table.  No information
//! exists only in the prose rendering, and payloads round-trip through
//! these same types.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use pfwin_core::weights::SBundle;
use pfwin_core::Error;

/// Exact integer → JSON number (arbitrary precision).
pub fn num(x: &BigInt) -> Result<Number, Error> {
    serde_json::from_str(&x.to_string())
        .map_err(|e| Error::Inconsistency(format!("integer does not serialize: {e}")))
}

/// Serialize a payload struct canonically.
pub fn to_payload<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string(value)
        .map_err(|e| Error::Inconsistency(format!("payload does not serialize: {e}")))
}


#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDto {
    pub l: u32,
    pub m: i64,
}

impl From<&SBundle> for BundleDto {
    fn from(b: &SBundle) -> BundleDto {
        BundleDto { l: b.l, m: b.m }
    }
}

impl BundleDto {
    pub fn display(&self) -> String {
        SBundle::new(self.l, self.m).to_string()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeDim {
    pub degree: u32,
    pub dim: Number,
}

/// `cohomology` payload: fixed public schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohomologyOut {
    pub space: String,
    pub bundle: BundleDto,
    pub cohomology: Vec<DegreeDim>,
}

/// `ext` payload for the plain Grassmannian Ext profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtOut {
    pub space: String,
    pub e: BundleDto,
    pub f: BundleDto,
    pub ext: Vec<DegreeDim>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRange {
    pub from: i64,
    pub to: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XgWitnessDto {
    pub grade: i64,
    pub summand: BundleDto,
    pub degree: u32,
    pub dim: Number,
}

/// `ext --space xg` payload: vanishing certificate over the fibre grades of
/// the Grassmannian-side total space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XgOut {
    pub space: String,
    pub e: BundleDto,
    pub f: BundleDto,
    pub vanishes: bool,
    pub scanned: ScanRange,
    pub witness: Option<XgWitnessDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XpWitnessDto {
    pub lambda: Vec<u32>,
    pub t: u32,
    pub p6_twist: i64,
    pub multiplicity: Number,
}

/// `ext --space xp` payload: vanishing certificate for the rank-one chart
/// of the dual side, with the surviving invariant line as witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XpOut {
    pub space: String,
    pub e: BundleDto,
    pub f: BundleDto,
    pub vanishes: bool,
    pub max_relevant_cauchy_degree: u64,
    pub witness: Option<XpWitnessDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationStepDto {
    pub before: [i64; 3],
    pub row: u32,
    pub removed: BundleDto,
    pub inserted: BundleDto,
    pub after: [i64; 3],
}

/// `mutate` payload: the named mutation chain with its class identities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutateOut {
    pub steps: Vec<MutationStepDto>,
    pub class_identities: bool,
    pub serre_identity_windows: Vec<[i64; 3]>,
    pub pass: bool,
}

/// `window` payload.  The Gram/fullness block appears with `--full`, the
/// chain block with `--mutate-chain`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowOut {
    pub tuple: [i64; 3],
    pub generators: Vec<BundleDto>,
    pub exceptional: bool,
    pub edge_count: usize,
    pub diagonal_order_valid: bool,
    pub order: Vec<BundleDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_unit_triangular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fullness_det: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation_chain: Option<MutateOut>,
    pub pass: bool,
}

/// `euler` payload: the two Euler pairings of a bundle pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EulerOut {
    pub e: BundleDto,
    pub f: BundleDto,
    pub chi_g: Number,
    pub chi_y: Number,
}

/// `cy3` payload: the numerical Calabi–Yau lattice report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cy3Out {
    pub rank: usize,
    pub invariant_factors: Vec<Number>,
    pub pairing: Vec<Vec<Number>>,
    pub transvections_preserve_pairing: bool,
    pub line_twists_preserve_pairing: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationsDto {
    pub big_circle: bool,
    pub pole_decomposition: bool,
    pub walls_unipotent: bool,
    pub pairing_preserved: bool,
    pub ladders_compose: bool,
    pub random_words_consistent: bool,
    pub all_hold: bool,
}

/// `monodromy` payload: the evaluated word and (optionally) the relation
/// audit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromyOut {
    pub word: String,
    pub reduced: String,
    pub matrix: Vec<Vec<Number>>,
    pub is_identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsDto>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckDto {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// `verify` payload: the named checks with witnesses and the overall
/// verdict (true iff every check passed).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyOut {
    pub tool_version: String,
    pub convention_version: String,
    pub checks: Vec<CheckDto>,
    pub passed: bool,
}

fn print_degree_table(rows: &[DegreeDim]) {
    if rows.is_empty() {
        println!("  (zero)");
        return;
    }
    println!("  {:<8} {}", "degree", "dim");
    for row in rows {
        println!("  {:<8} {}", row.degree, row.dim);
    }
}

pub fn render_cohomology(out: &CohomologyOut) {
    println!("space:  {}", out.space);
    println!(
        "bundle: {}  [l = {}, m = {}]",
        out.bundle.display(),
        out.bundle.l,
        out.bundle.m
    );
    print_degree_table(&out.cohomology);
}

pub fn render_ext(out: &ExtOut) {
    println!("space: {}", out.space);
    println!("pair:  ({}, {})", out.e.display(), out.f.display());
    print_degree_table(&out.ext);
}

pub fn render_xg(out: &XgOut) {
    println!("space: total space over the Grassmannian chart");
    println!("pair:  ({}, {})", out.e.display(), out.f.display());
    println!("higher Ext vanishes: {}", out.vanishes);
    println!("certified fibre grades scanned: {}..={}", out.scanned.from, out.scanned.to);
    if let Some(w) = &out.witness {
        println!(
            "witness: grade {} summand {} degree {} dim {}",
            w.grade,
            w.summand.display(),
            w.degree,
            w.dim
        );
    }
}

pub fn render_xp(out: &XpOut) {
    println!("space: rank-one chart of the dual side");
    println!("pair:  ({}, {})", out.e.display(), out.f.display());
    println!("higher Ext vanishes: {}", out.vanishes);
    println!("max relevant Cauchy degree: {}", out.max_relevant_cauchy_degree);
    if let Some(w) = &out.witness {
        println!(
            "witness: λ = ({}), t = {}, pushes down to O_P6({}) with multiplicity {}",
            w.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            w.t,
            -w.p6_twist,
            w.multiplicity
        );
    }
}

/// The chain body, shared between `mutate` and `window --mutate-chain`
/// (only the former appends its own "overall" line).
fn render_mutate_body(out: &MutateOut) {
    println!("mutation chain:");
    for s in &out.steps {
        println!(
            "  {:?} -> {:?}  row {}: drop {}, insert {}",
            s.before,
            s.after,
            s.row,
            s.removed.display(),
            s.inserted.display()
        );
    }
    println!("per-step class identities: {}", ok_str(out.class_identities));
    let windows: Vec<String> =
        out.serre_identity_windows.iter().map(|t| format!("{t:?}")).collect();
    println!("Serre mutation identity on {}", windows.join(", "));
}

pub fn render_mutate(out: &MutateOut) {
    render_mutate_body(out);
    println!("overall: {}", ok_str(out.pass));
}

pub fn render_window(out: &WindowOut) {
    println!("window: {:?}", out.tuple);
    let gens: Vec<String> = out.generators.iter().map(BundleDto::display).collect();
    println!("generators ({}): {}", gens.len(), gens.join(", "));
    println!(
        "exceptional: {} ({} Hom edges, diagonal order valid: {})",
        ok_str(out.exceptional),
        out.edge_count,
        out.diagonal_order_valid
    );
    if let Some(gram) = out.gram_unit_triangular {
        println!("Gram unit-triangular in certified order: {}", ok_str(gram));
    }
    if let Some(det) = &out.fullness_det {
        println!("Kapranov fullness determinant: {det}");
    }
    if let Some(chain) = &out.mutation_chain {
        render_mutate_body(chain);
    }
    println!("overall: {}", ok_str(out.pass));
}

pub fn render_euler(out: &EulerOut) {
    println!("pair: ({}, {})", out.e.display(), out.f.display());
    println!("χ on the Grassmannian: {}", out.chi_g);
    println!("χ on the threefold:    {}", out.chi_y);
}

pub fn render_cy3(out: &Cy3Out) {
    println!("numerical Calabi–Yau lattice");
    println!("rank: {}", out.rank);
    let factors: Vec<String> = out.invariant_factors.iter().map(|x| x.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));
    println!("quotient pairing:");
    for row in &out.pairing {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
    println!(
        "transvections preserve pairing: {}",
        ok_str(out.transvections_preserve_pairing)
    );
    println!(
        "line twists preserve pairing:   {}",
        ok_str(out.line_twists_preserve_pairing)
    );
    println!("overall: {}", ok_str(out.pass));
}

pub fn render_monodromy(out: &MonodromyOut) {
    println!("word:    {}", out.word);
    println!("reduced: {}", out.reduced);
    println!("matrix{}:", if out.is_identity { " (identity)" } else { "" });
    for row in &out.matrix {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
    if let Some(r) = &out.relations {
        println!("relation audit:");
        println!("  big circle:             {}", ok_str(r.big_circle));
        println!("  pole decomposition:     {}", ok_str(r.pole_decomposition));
        println!("  walls unipotent:        {}", ok_str(r.walls_unipotent));
        println!("  pairing preserved:      {}", ok_str(r.pairing_preserved));
        println!("  ladders compose:        {}", ok_str(r.ladders_compose));
        println!("  random words consistent: {}", ok_str(r.random_words_consistent));
        println!("  all hold:               {}", ok_str(r.all_hold));
    }
}

pub fn render_verify(out: &VerifyOut) {
    println!(
        "verification suite (tool {} / conventions v{})",
        out.tool_version, out.convention_version
    );
    for c in &out.checks {
        println!(
            "criterion {:2} ({}): {} — {}",
            c.id,
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.details
        );
    }
    let failed = out.checks.iter().filter(|c| !c.passed).count();
    println!(
        "overall: {} ({} of {} passed)",
        ok_str(out.passed),
        out.checks.len() - failed,
        out.checks.len()
    );
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
