use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use super::output::Output;
use super::{CliError, CliResult, Context};
use crate::constructions::{family as build_family, family_sweep, Family};
use crate::derivations::{
    exp_flow, flow_group_law_holds, graded_derivation, invariant_candidates, kernel_elements,
    make_derivation, nilpotency_test, partial_degree, Derivation, DerivationJson,
    NilpotencyCertificate, Ring, RingJson, DEFAULT_NILPOTENCY_BOUND,
};
use crate::grading::{
    associated_graded_hypersurface, canonical_form_decomposition, check_appropriate,
    quasi_homogeneous_decompose, quotient_degree, russell_order, russell_relation, russell_vars,
    weight_degree, CertStatus, QuotientRing, WeightFunction, WeightJson,
};
use crate::polyring::{
    arith, divide, gcd, jacobian_det, parse_infer, parse_polynomial, parse_rational, ArithOp,
    MonomialOrder, Polynomial, VarSet,
};

#[derive(Debug, Args)]
pub(crate) struct VarsOpt {
    /// Variable names in order, separated by spaces or commas. Inferred
    /// from the inputs (order of first appearance) when omitted.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Debug, Subcommand)]
pub(crate) enum PolyCmd {
    /// Parse and print a polynomial with its JSON form.
    Parse {
        #[arg(long)]
        expr: Option<String>,
        #[command(flatten)]
        vars: VarsOpt,
    },
    Add(BinaryArgs),
    Sub(BinaryArgs),
    Mul(BinaryArgs),
    Pow {
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        vars: VarsOpt,
    },
    /// Partial derivative.
    Diff {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        var: String,
        #[command(flatten)]
        vars: VarsOpt,
    },
    /// Division with remainder by one polynomial.
    Divide {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        by: String,
        /// `lex`, `grlex` or `weighted:w1,w2,...`.
        #[arg(long, default_value = "grlex")]
        order: String,
        #[command(flatten)]
        vars: VarsOpt,
    },
    Gcd(BinaryArgs),
    /// Jacobian determinant of n polynomials in n variables.
    Jacobian {
        #[arg(long = "f", required = true, num_args = 1..)]
        fs: Vec<String>,
        #[command(flatten)]
        vars: VarsOpt,
    },
}

#[derive(Debug, Args)]
pub(crate) struct BinaryArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[command(flatten)]
    vars: VarsOpt,
}

fn split_names(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn varset(names: &str) -> CliResult<VarSet> {
    Ok(VarSet::new(split_names(names))?)
}

/// Parses every expression over one variable set.
fn parse_all(exprs: &[&str], vars: &VarsOpt) -> CliResult<Vec<Polynomial>> {
    let vs = match &vars.vars {
        Some(v) => varset(v)?,
        None => {
            let mut names: Vec<String> = Vec::new();
            for e in exprs {
                for n in parse_infer(e)?.vars().names() {
                    if !names.contains(n) {
                        names.push(n.clone());
                    }
                }
            }
            VarSet::new(names)?
        }
    };
    exprs
        .iter()
        .map(|e| Ok(parse_polynomial(e, &vs)?))
        .collect()
}

fn parse_order(s: &str) -> CliResult<MonomialOrder> {
    match s {
        "lex" => Ok(MonomialOrder::Lex),
        "grlex" => Ok(MonomialOrder::GradedLex),
        _ => match s.strip_prefix("weighted:") {
            Some(ws) => Ok(MonomialOrder::Weighted(parse_ints(ws)?)),
            None => Err(CliError::Usage(format!(
                "unknown order '{s}'; expected lex, grlex or weighted:w1,w2,..."
            ))),
        },
    }
}

pub(crate) fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("'{t}' is not an integer")))
        })
        .collect()
}

fn text(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub(crate) fn poly(cmd: &PolyCmd, ctx: &Context) -> CliResult<Output> {
    let binary = |a: &BinaryArgs, op: ArithOp| -> CliResult<Output> {
        let ps = parse_all(&[&a.a, &a.b], &a.vars)?;
        Output::json(&json!({"polynomial": text(&arith(&ps[0], &ps[1], op)?)}))
    };
    match cmd {
        PolyCmd::Parse { expr, vars } => {
            let p = match expr {
                Some(e) => parse_all(&[e], vars)?.remove(0),
                None => Polynomial::from_json_str(&ctx.primary_input(None, "polynomial")?)?,
            };
            Output::json(&json!({
                "polynomial": text(&p),
                "json": p.to_json(),
                "total_degree": p.total_degree(),
            }))
        }
        PolyCmd::Add(a) => binary(a, ArithOp::Add),
        PolyCmd::Sub(a) => binary(a, ArithOp::Sub),
        PolyCmd::Mul(a) => binary(a, ArithOp::Mul),
        PolyCmd::Pow { a, n, vars } => {
            let p = parse_all(&[a], vars)?.remove(0);
            Output::json(&json!({"polynomial": text(&p.pow(*n))}))
        }
        PolyCmd::Diff { expr, var, vars } => {
            let p = parse_all(&[expr], vars)?.remove(0);
            Output::json(&json!({"polynomial": text(&p.partial_derivative(var)?)}))
        }
        PolyCmd::Divide {
            expr,
            by,
            order,
            vars,
        } => {
            let ps = parse_all(&[expr, by], vars)?;
            let (q, r) = divide(&ps[0], &ps[1], &parse_order(order)?, ctx.budget())?;
            Output::json(&json!({"quotient": text(&q), "remainder": text(&r)}))
        }
        PolyCmd::Gcd(a) => {
            let ps = parse_all(&[&a.a, &a.b], &a.vars)?;
            Output::json(&json!({"gcd": text(&gcd(&ps[0], &ps[1])?)}))
        }
        PolyCmd::Jacobian { fs, vars } => {
            let refs: Vec<&str> = fs.iter().map(String::as_str).collect();
            let ps = parse_all(&refs, vars)?;
            Output::json(&json!({"determinant": text(&jacobian_det(&ps)?)}))
        }
    }
}

#[derive(Debug, Subcommand)]
pub(crate) enum GradeCmd {
    /// Degree of an element; in the quotient when `--relation` is given.
    Degree(GradeArgs),
    /// Quasi-homogeneous components.
    Decompose(GradeArgs),
    /// Whether the weight is appropriate for the relation `--poly`.
    Appropriate(GradeArgs),
    /// Associated graded hypersurface of the relation `--poly`.
    Graded(GradeArgs),
    /// Canonical form `a + y b + x y c` in the Russell quotient.
    Canonical(GradeArgs),
}

#[derive(Debug, Args)]
pub(crate) struct GradeArgs {
    /// The polynomial; falls back to a JSON polynomial from `--json-in`.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, default_value = "x y z t")]
    vars: String,
    /// Comma-separated integer weights, e.g. `-1,2,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    /// A weight JSON file `{"vars": [...], "weights": [...]}`.
    #[arg(long, conflicts_with = "weights")]
    weights_file: Option<PathBuf>,
    /// Relation of the quotient ring, or `russell`.
    #[arg(long)]
    relation: Option<String>,
    /// `lex`, `grlex` or `weighted:w1,...`; defaults to the Russell order
    /// for the Russell relation and to `grlex` otherwise.
    #[arg(long)]
    order: Option<String>,
}

impl GradeArgs {
    fn vars(&self) -> CliResult<VarSet> {
        if let Some(path) = &self.weights_file {
            let j: WeightJson = serde_json::from_str(&super::read_path(path)?)?;
            return Ok(VarSet::new(j.vars)?);
        }
        varset(&self.vars)
    }

    fn weight(&self, vars: &VarSet) -> CliResult<WeightFunction> {
        if let Some(path) = &self.weights_file {
            let j: WeightJson = serde_json::from_str(&super::read_path(path)?)?;
            return Ok(WeightFunction::from_json(&j)?);
        }
        match &self.weights {
            Some(w) => Ok(WeightFunction::new(vars, parse_ints(w)?)?),
            None => Err(CliError::Usage(
                "--weights or --weights-file is required".into(),
            )),
        }
    }

    fn poly(&self, vars: &VarSet, ctx: &Context) -> CliResult<Polynomial> {
        match &self.poly {
            Some(src) => Ok(parse_polynomial(src, vars)?),
            None => {
                let p = Polynomial::from_json_str(&ctx.primary_input(None, "polynomial")?)?;
                Ok(p.to_varset(vars)?)
            }
        }
    }

    fn order_for(&self, relation: &Polynomial) -> CliResult<MonomialOrder> {
        match &self.order {
            Some(o) => parse_order(o),
            None if *relation == russell_relation() => Ok(russell_order()),
            None => Ok(MonomialOrder::GradedLex),
        }
    }

    fn ring(&self, vars: &VarSet, ctx: &Context) -> CliResult<Option<QuotientRing>> {
        let Some(src) = &self.relation else {
            return Ok(None);
        };
        let rel = if src == "russell" {
            russell_relation().to_varset(vars)?
        } else {
            parse_polynomial(src, vars)?
        };
        let order = self.order_for(&rel)?;
        Ok(Some(
            QuotientRing::new(rel, order)?.with_budget(ctx.budget()),
        ))
    }
}

fn status_label(s: CertStatus) -> &'static str {
    match s {
        CertStatus::Certified => "Certified",
        CertStatus::Unverified => "Unverified",
    }
}

pub(crate) fn grade(cmd: &GradeCmd, ctx: &Context) -> CliResult<Output> {
    match cmd {
        GradeCmd::Degree(a) => {
            let vars = a.vars()?;
            let w = a.weight(&vars)?;
            let p = a.poly(&vars, ctx)?;
            let d = match a.ring(&vars, ctx)? {
                Some(q) => quotient_degree(&p, &q, &w)?,
                None => weight_degree(&p, &w)?,
            };
            Output::json(&json!({"degree": d.to_string()}))
        }
        GradeCmd::Decompose(a) => {
            let vars = a.vars()?;
            let w = a.weight(&vars)?;
            let dec = quasi_homogeneous_decompose(&a.poly(&vars, ctx)?, &w)?;
            let comps: Vec<Value> = dec
                .components
                .iter()
                .rev()
                .map(|(d, p)| json!({"degree": d, "component": text(p)}))
                .collect();
            Output::json(&json!({"principal_degree": dec.principal_degree, "components": comps}))
        }
        GradeCmd::Appropriate(a) => {
            let vars = a.vars()?;
            let w = a.weight(&vars)?;
            let verdict = check_appropriate(&a.poly(&vars, ctx)?, &w)?;
            Output::json(&json!({"verdict": verdict.label(), "reason": verdict.reason()}))
        }
        GradeCmd::Graded(a) => {
            let vars = a.vars()?;
            let w = a.weight(&vars)?;
            let p = a.poly(&vars, ctx)?;
            let g = associated_graded_hypersurface(&p, &w, &a.order_for(&p)?)?;
            Output::json(&json!({
                "relation": text(&g.relation_top),
                "status": status_label(g.status),
                "note": g.note,
            }))
        }
        GradeCmd::Canonical(a) => {
            let vars = russell_vars();
            if varset(&a.vars)? != vars {
                return Err(CliError::Usage(
                    "canonical works over the variables x y z t".into(),
                ));
            }
            let q = match a.ring(&vars, ctx)? {
                Some(q) => q,
                None => QuotientRing::new(russell_relation(), russell_order())?
                    .with_budget(ctx.budget()),
            };
            let parts = canonical_form_decomposition(&a.poly(&vars, ctx)?, &q)?;
            Output::json(&json!({
                "canonical": text(&parts.recombine()),
                "a": text(&parts.a),
                "b": text(&parts.b),
                "c": text(&parts.c),
            }))
        }
    }
}

#[derive(Debug, Subcommand)]
pub(crate) enum LndCmd {
    /// Well-definedness and the nilpotency certificate.
    Check(LndArgs),
    /// `deg_δ` of `--poly`.
    Degree(LndArgs),
    /// The exponential `exp(tδ)`, symbolic or at `--t`.
    Flow(LndArgs),
    /// Kernel elements up to `--bound` (default 3).
    Kernel(LndArgs),
    /// The induced derivation on the associated graded ring.
    Graded(LndArgs),
    /// Truncated invariants from several derivations (repeat `--images`).
    Invariants(LndArgs),
}

#[derive(Debug, Args)]
pub(crate) struct LndArgs {
    /// `C1`..`C4` (polynomial rings in x y z t), `russell`, or a ring JSON
    /// file `{"vars": [...], "relation": "...", "order": ...}`.
    #[arg(long)]
    ring: Option<String>,
    /// Derivation file: a full `{"ring", "images"}` record or a plain map
    /// of images (then `--ring` is required).
    #[arg(long, alias = "file")]
    images: Vec<PathBuf>,
    #[arg(long)]
    poly: Option<String>,
    /// Evaluate the flow at this rational parameter.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Also verify `exp(sδ) exp(tδ) = exp((s+t)δ)`.
    #[arg(long)]
    group_law: bool,
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
}

const GENERIC_VARS: [&str; 4] = ["x", "y", "z", "t"];

fn named_ring(name: &str, ctx: &Context) -> CliResult<Ring> {
    let lower = name.to_ascii_lowercase();
    if lower == "russell" || lower == "a0" {
        let q = QuotientRing::new(russell_relation(), russell_order())?.with_budget(ctx.budget());
        return Ok(Ring::Quotient(q));
    }
    if let Some(n) = lower
        .strip_prefix('c')
        .and_then(|n| n.parse::<usize>().ok())
    {
        if (1..=GENERIC_VARS.len()).contains(&n) {
            return Ok(Ring::Polynomial(VarSet::new(
                GENERIC_VARS[..n].iter().copied(),
            )?));
        }
    }
    let j: RingJson = serde_json::from_str(&super::read_path(std::path::Path::new(name))?)?;
    with_budget(j.to_ring()?, ctx)
}

fn with_budget(ring: Ring, ctx: &Context) -> CliResult<Ring> {
    Ok(match ring {
        Ring::Quotient(q) => Ring::Quotient(q.with_budget(ctx.budget())),
        r => r,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DerivationFile {
    Full(DerivationJson),
    Images(BTreeMap<String, String>),
}

fn derivation_from_text(src: &str, ring: Option<&Ring>, ctx: &Context) -> CliResult<Derivation> {
    let file: DerivationFile = serde_json::from_str(src)?;
    let (ring, images) = match (file, ring) {
        (DerivationFile::Full(j), Some(r)) => (r.clone(), j.images),
        (DerivationFile::Full(j), None) => (with_budget(j.ring.to_ring()?, ctx)?, j.images),
        (DerivationFile::Images(m), Some(r)) => (r.clone(), m),
        (DerivationFile::Images(_), None) => {
            return Err(CliError::Usage("a plain image map needs --ring".into()))
        }
    };
    let vars = ring.vars().clone();
    let parsed = images
        .iter()
        .map(|(k, v)| Ok((k.clone(), parse_polynomial(v, &vars)?)))
        .collect::<CliResult<BTreeMap<_, _>>>()?;
    Ok(make_derivation(ring, &parsed)?)
}

impl LndArgs {
    fn derivations(&self, ctx: &Context) -> CliResult<Vec<Derivation>> {
        let ring = self
            .ring
            .as_deref()
            .map(|r| named_ring(r, ctx))
            .transpose()?;
        if self.images.is_empty() {
            let src = ctx.primary_input(None, "derivation (--images)")?;
            return Ok(vec![derivation_from_text(&src, ring.as_ref(), ctx)?]);
        }
        self.images
            .iter()
            .map(|p| derivation_from_text(&super::read_path(p)?, ring.as_ref(), ctx))
            .collect()
    }

    fn single(&self, ctx: &Context) -> CliResult<Derivation> {
        let mut ds = self.derivations(ctx)?;
        if ds.len() != 1 {
            return Err(CliError::Usage(
                "this verb takes exactly one derivation".into(),
            ));
        }
        Ok(ds.remove(0))
    }
}

fn certificate_json(c: &NilpotencyCertificate) -> Value {
    match c {
        NilpotencyCertificate::NilpotentOnGenerators(o) => {
            json!({"status": "nilpotent", "orders": o})
        }
        NilpotencyCertificate::Inconclusive { bound } => {
            json!({"status": "inconclusive", "bound": bound})
        }
        NilpotencyCertificate::Disproved { variable, evidence } => {
            json!({"status": "disproved", "variable": variable, "evidence": evidence})
        }
    }
}

fn texts(ps: &[Polynomial]) -> Vec<Value> {
    ps.iter().map(text).collect()
}

pub(crate) fn lnd(cmd: &LndCmd, ctx: &Context) -> CliResult<Output> {
    match cmd {
        LndCmd::Check(a) => {
            let d = a.single(ctx)?;
            let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND)?;
            Output::json(&json!({
                "derivation": d.to_json(),
                "well_defined": true,
                "locally_nilpotent": cert.is_nilpotent(),
                "certificate": certificate_json(&cert),
            }))
        }
        LndCmd::Degree(a) => {
            let d = a.single(ctx)?;
            let src = a
                .poly
                .as_deref()
                .ok_or_else(|| CliError::Usage("--poly is required".into()))?;
            let f = parse_polynomial(src, d.vars())?;
            let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND)?;
            Output::json(&json!({"degree": partial_degree(&d, &cert, &f)?.to_string()}))
        }
        LndCmd::Flow(a) => {
            let d = a.single(ctx)?;
            let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND)?;
            let flow = exp_flow(&d, &cert)?;
            let mut out = json!({"vars": d.vars().names()});
            match &a.t {
                Some(t) => {
                    let value = parse_rational(t)?;
                    out["t"] = Value::String(value.to_string());
                    out["images"] = Value::Array(texts(&flow.at(&value)?));
                }
                None => {
                    out["param"] = Value::String(flow.param().to_string());
                    out["images"] = Value::Array(texts(flow.images()));
                }
            }
            if a.group_law {
                out["group_law"] = Value::Bool(flow_group_law_holds(&d, &cert)?);
            }
            Output::json(&out)
        }
        LndCmd::Kernel(a) => {
            let d = a.single(ctx)?;
            let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND)?;
            let bound = a.bound.unwrap_or(3);
            let ks = kernel_elements(&d, &cert, bound)?;
            Output::json(&json!({"bound": bound, "elements": texts(&ks)}))
        }
        LndCmd::Graded(a) => {
            let d = a.single(ctx)?;
            let ws = a
                .weights
                .as_deref()
                .ok_or_else(|| CliError::Usage("--weights is required".into()))?;
            let w = WeightFunction::new(d.vars(), parse_ints(ws)?)?;
            let g = graded_derivation(&d, &w)?;
            Output::json(&json!({
                "shift": g.shift,
                "graded_relation": text(&g.graded.relation_top),
                "vars": d.vars().names(),
                "images": texts(g.derivation.images()),
            }))
        }
        LndCmd::Invariants(a) => {
            let ds = a.derivations(ctx)?;
            let bound = a.bound.unwrap_or(2);
            let c = invariant_candidates(&ds, bound)?;
            Output::json(&json!({
                "bound": c.degree_bound,
                "ml_upper_bound": texts(&c.ml_upper_bound),
                "dk_lower_bound": texts(&c.dk_lower_bound),
            }))
        }
    }
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub(crate) struct FamilyArgs {
    /// Build every member listed in a JSON array, e.g.
    /// `[{"family": "tdp", "k": 3, "l": 2}]`.
    #[arg(long, value_name = "FILE")]
    sweep: Option<PathBuf>,
    #[command(subcommand)]
    member: Option<FamilyCmd>,
}

#[derive(Debug, Subcommand)]
pub(crate) enum FamilyCmd {
    Tdp {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    TdpGeneral {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        m: u32,
    },
    KorasRussell {
        /// The exponents `s1,s2,s3`.
        #[arg(long)]
        s: String,
    },
    Brieskorn {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s: u32,
    },
    Danielewski {
        #[arg(long)]
        n: u32,
    },
    MlSuspension {
        #[arg(long)]
        poly: String,
    },
    SathayeWright {
        /// Polynomial in x, y.
        #[arg(long)]
        f: String,
        /// Polynomial in x, y.
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: u32,
    },
}

/// One entry of a sweep file.
#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
enum FamilySpec {
    Tdp { k: u32, l: u32 },
    TdpGeneral { k: u32, l: u32, s: u32, m: u32 },
    KorasRussell { s: [u32; 3] },
    Brieskorn { k: u32, l: u32, s: u32 },
    Danielewski { n: u32 },
    MlSuspension { poly: String },
    SathayeWright { f: String, g: String, n: u32 },
}

fn xy() -> VarSet {
    VarSet::new(["x", "y"]).expect("distinct names")
}

fn koras_russell(s: [u32; 3]) -> Family {
    Family::KorasRussell {
        s1: s[0],
        s2: s[1],
        s3: s[2],
    }
}

impl FamilySpec {
    fn to_family(&self) -> CliResult<Family> {
        Ok(match self {
            &FamilySpec::Tdp { k, l } => Family::Tdp { k, l },
            &FamilySpec::TdpGeneral { k, l, s, m } => Family::TdpGeneral { k, l, s, m },
            &FamilySpec::KorasRussell { s } => koras_russell(s),
            &FamilySpec::Brieskorn { k, l, s } => Family::Brieskorn { k, l, s },
            &FamilySpec::Danielewski { n } => Family::Danielewski { n },
            FamilySpec::MlSuspension { poly } => Family::MlSuspension {
                p: parse_infer(poly)?,
            },
            FamilySpec::SathayeWright { f, g, n } => Family::SathayeWright {
                f: parse_polynomial(f, &xy())?,
                g: parse_polynomial(g, &xy())?,
                n: *n,
            },
        })
    }
}

impl FamilyCmd {
    fn to_family(&self) -> CliResult<Family> {
        Ok(match self {
            &FamilyCmd::Tdp { k, l } => Family::Tdp { k, l },
            &FamilyCmd::TdpGeneral { k, l, s, m } => Family::TdpGeneral { k, l, s, m },
            FamilyCmd::KorasRussell { s } => {
                let xs = parse_ints(s)?;
                let s: [u32; 3] = xs
                    .iter()
                    .map(|&x| u32::try_from(x).ok())
                    .collect::<Option<Vec<u32>>>()
                    .and_then(|v| v.try_into().ok())
                    .ok_or_else(|| {
                        CliError::Usage("--s takes three non-negative integers".into())
                    })?;
                koras_russell(s)
            }
            &FamilyCmd::Brieskorn { k, l, s } => Family::Brieskorn { k, l, s },
            &FamilyCmd::Danielewski { n } => Family::Danielewski { n },
            FamilyCmd::MlSuspension { poly } => Family::MlSuspension {
                p: parse_infer(poly)?,
            },
            FamilyCmd::SathayeWright { f, g, n } => Family::SathayeWright {
                f: parse_polynomial(f, &xy())?,
                g: parse_polynomial(g, &xy())?,
                n: *n,
            },
        })
    }
}

/// A single member exits 1 on failure; a sweep reports failures per entry
/// and exits 1 if any entry failed.
pub(crate) fn family(args: &FamilyArgs, ctx: &Context) -> CliResult<(Output, i32)> {
    if let Some(cmd) = &args.member {
        let h = build_family(&cmd.to_family()?)?;
        return Ok((Output::json(&h.to_json())?, 0));
    }
    let src = ctx.primary_input(args.sweep.as_deref(), "family member or --sweep file")?;
    let specs: Vec<FamilySpec> = serde_json::from_str(&src)?;
    let members = specs
        .iter()
        .map(FamilySpec::to_family)
        .collect::<CliResult<Vec<_>>>()?;
    let results = family_sweep(&members);
    let mut failed = false;
    let records: Vec<Value> = members
        .iter()
        .zip(results)
        .map(|(m, r)| match r {
            Ok(h) => serde_json::to_value(h.to_json()).expect("serializable"),
            Err(e) => {
                failed = true;
                json!({"family": m.name(), "error": e.to_string()})
            }
        })
        .collect();
    Ok((Output::json(&records)?, i32::from(failed)))
}

#[cfg(test)]
mod tests {
    use super::super::run;

    fn call(args: &[&str]) -> (i32, serde_json::Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("exotic").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        let v = serde_json::from_slice(&out).unwrap_or(serde_json::Value::Null);
        (code, v)
    }

    #[test]
    fn poly_verbs() {
        let (c, v) = call(&["poly", "mul", "--a", "x + 1", "--b", "x - 1"]);
        assert_eq!(c, 0);
        assert_eq!(v["polynomial"], "x^2 - 1");
        let (_, v) = call(&["poly", "divide", "--expr", "x^2 - 1", "--by", "x + 1"]);
        assert_eq!(v["quotient"], "x - 1");
        assert_eq!(v["remainder"], "0");
        let (_, v) = call(&["poly", "jacobian", "--f", "x + y^2", "--f", "y"]);
        assert_eq!(v["determinant"], "1");
        assert_eq!(call(&["poly", "add", "--a", "x +", "--b", "1"]).0, 1);
    }

    #[test]
    fn grade_verbs() {
        let russell = "x + x^2*y + z^2 + t^3";
        let (_, v) = call(&[
            "grade",
            "graded",
            "--poly",
            russell,
            "--weights",
            "-1,2,0,0",
        ]);
        assert_eq!(v["status"], "Certified");
        let (_, v) = call(&["grade", "canonical", "--poly", "x^2*y"]);
        assert_eq!(v["a"], "-t^3 - z^2 - x");
        let (_, v) = call(&[
            "grade",
            "degree",
            "--poly",
            "x^2*y",
            "--weights",
            "-1,2,0,0",
            "--relation",
            "russell",
        ]);
        assert_eq!(v["degree"], "0");
    }

    #[test]
    fn family_member_and_bad_params() {
        let (c, v) = call(&["family", "koras-russell", "--s", "1,2,3"]);
        assert_eq!(c, 0);
        assert_eq!(v["provenance"]["construction"], "koras-russell");
        assert_eq!(call(&["family", "tdp", "--k", "0", "--l", "2"]).0, 1);
    }
}
