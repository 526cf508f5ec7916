use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::algebra::parse_ints;
use super::output::Output;
use super::{read_path, CliError, CliResult, Context};
use crate::dualgraph::{
    ample_support_divisor, ramanujam_verdict, resolution_chain, tdp_contractibility,
    xt_certificate, xt_matrix, BlowUpSite, IntersectionMatrix, WeightedGraph, XtVerdict,
};
use crate::fpgroups::{
    abelianization, bezout_alpha, homology_sphere_check, named_presentation, smith_normal_form_i64,
    triangle_classification, xt_exponent, NamedPresentation, Presentation,
};
use crate::smithhom::{
    barycentric_subdivide, is_prime, orbit_complex, sample_instance, transfer_check,
    verify_smith_sequences, ActionJson, ChainComplex, Coefficients, ComplexJson, CyclicAction,
    SimplicialComplex,
};

#[derive(Debug, Args)]
pub(crate) struct GraphFile {
    /// Graph JSON `{"vertices": [{"id", "w"}], "edges": [[a, b]]}`.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GraphFile {
    fn load(&self, ctx: &Context) -> CliResult<WeightedGraph> {
        let src = ctx.primary_input(self.file.as_deref(), "graph (--file)")?;
        Ok(WeightedGraph::from_json_str(&src)?)
    }
}

#[derive(Debug, Subcommand)]
pub(crate) enum GraphCmd {
    /// Blow up a point on a component or a double point.
    Blowup {
        #[command(flatten)]
        input: GraphFile,
        #[arg(long, conflicts_with = "edge", required_unless_present = "edge")]
        vertex: Option<String>,
        /// Two adjacent ids, `a,b`.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Contract a (-1)-vertex of valence at most 2.
    Contract {
        #[command(flatten)]
        input: GraphFile,
        #[arg(long)]
        vertex: String,
    },
    /// Contract until no vertex is contractible.
    Minimal(GraphFile),
    /// Linearity verdict on the minimal model.
    Ramanujam(GraphFile),
    /// Resolution chain of the pencil `x^m / y^n`.
    Chain {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Determinant of the intersection matrix.
    Det(GraphFile),
    /// Unimodularity of the multiplicity matrix from eight entries
    /// `m00,n00,m10,n10,m01,n01,m11,n11`.
    Xt {
        #[arg(long)]
        entries: String,
    },
    /// The contractibility condition `|m1 n2 + m2 n1 - m1 m2| = 1`.
    Tdp {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long)]
        n2: u64,
    },
    /// Search for a full-support divisor positive on every component.
    Ample {
        #[command(flatten)]
        input: GraphFile,
        /// Seed coefficients, one per vertex.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Graphviz output.
    Dot(GraphFile),
}

impl GraphCmd {
    pub fn produces_graph(&self) -> bool {
        matches!(
            self,
            GraphCmd::Blowup { .. }
                | GraphCmd::Contract { .. }
                | GraphCmd::Minimal(_)
                | GraphCmd::Chain { .. }
                | GraphCmd::Dot(_)
        )
    }
}

fn graph_output(g: &WeightedGraph, extra: Value, ctx: &Context) -> CliResult<Output> {
    if ctx.dot {
        return Ok(Output::Dot(g.to_dot()));
    }
    let mut v = json!({"graph": g.to_json()});
    if let Value::Object(m) = extra {
        for (k, x) in m {
            v[k] = x;
        }
    }
    Output::json(&v)
}

fn xt_entries(s: &str) -> CliResult<[[i64; 4]; 4]> {
    let e = parse_ints(s)?;
    if e.len() != 8 {
        return Err(CliError::Usage(format!(
            "expected 8 entries, got {}",
            e.len()
        )));
    }
    Ok(xt_matrix(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]))
}

pub(crate) fn graph(cmd: &GraphCmd, ctx: &Context) -> CliResult<Output> {
    match cmd {
        GraphCmd::Blowup {
            input,
            vertex,
            edge,
        } => {
            let g = input.load(ctx)?;
            let site = match (vertex, edge) {
                (Some(v), _) => BlowUpSite::Vertex(v.clone()),
                (None, Some(e)) => match e.split_once(',') {
                    Some((a, b)) => BlowUpSite::Edge(a.trim().into(), b.trim().into()),
                    None => return Err(CliError::Usage("--edge takes 'a,b'".into())),
                },
                (None, None) => unreachable!("clap requires one of --vertex, --edge"),
            };
            let (h, id) = g.blow_up(&site)?;
            graph_output(&h, json!({"new_vertex": id}), ctx)
        }
        GraphCmd::Contract { input, vertex } => {
            let g = input.load(ctx)?.contract(vertex)?;
            graph_output(&g, json!({}), ctx)
        }
        GraphCmd::Minimal(input) => {
            let (g, log) = input.load(ctx)?.minimalize();
            graph_output(&g, json!({"contracted": log}), ctx)
        }
        GraphCmd::Ramanujam(input) => {
            Output::json(&json!({"verdict": ramanujam_verdict(&input.load(ctx)?)}))
        }
        GraphCmd::Chain { m, n } => {
            let c = resolution_chain(*m, *n)?;
            let det = c.graph.intersection_matrix().determinant();
            let mult: serde_json::Map<String, Value> = c
                .multiplicities
                .iter()
                .map(|(v, (a, b))| (v.clone(), json!([a, b])))
                .collect();
            graph_output(
                &c.graph,
                json!({"multiplicities": mult, "trace": c.trace, "determinant": det.to_string()}),
                ctx,
            )
        }
        GraphCmd::Det(input) => {
            let q = input.load(ctx)?.intersection_matrix();
            Output::json(&json!({
                "basis": q.basis,
                "matrix": q.entries,
                "determinant": q.determinant().to_string(),
            }))
        }
        GraphCmd::Xt { entries } => {
            let (verdict, det) = match xt_certificate(&xt_entries(entries)?)? {
                XtVerdict::Acyclic(d) => ("Acyclic", d),
                XtVerdict::NotUnimodular(d) => ("NotUnimodular", d),
            };
            Output::json(&json!({"verdict": verdict, "determinant": det.to_string()}))
        }
        GraphCmd::Tdp { m1, n1, m2, n2 } => {
            Output::json(&json!({"contractible": tdp_contractibility(*m1, *n1, *m2, *n2)}))
        }
        GraphCmd::Ample { input, h } => {
            let q: IntersectionMatrix = input.load(ctx)?.intersection_matrix();
            Output::json(&json!({"outcome": ample_support_divisor(&q, &parse_ints(h)?)?}))
        }
        GraphCmd::Dot(input) => Ok(Output::Dot(input.load(ctx)?.to_dot())),
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum NamedKind {
    Bkl,
    Bkls,
    Gkls,
    Tkls,
    B3quot,
    Xtquot,
}

#[derive(Debug, Args)]
pub(crate) struct Triple {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    s: u32,
}

#[derive(Debug, Subcommand)]
pub(crate) enum GroupCmd {
    /// Abelianization of a presentation `{"gens": [...], "rels": [[...]]}`.
    Abel {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Smith normal form of an integer matrix given as JSON rows.
    Snf {
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// A named presentation and its abelianization.
    Named {
        #[arg(long, value_enum)]
        which: NamedKind,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Eight multiplicities for `xtquot`.
        #[arg(long)]
        entries: Option<String>,
    },
    /// Finite, Nilpotent or ContainsF2 by comparing 1/k + 1/l + 1/s with 1.
    Triangle(Triple),
    /// Whether k, l, s are pairwise coprime.
    Sphere(Triple),
    /// The exponent of the abelianized group of a multiplicity matrix.
    Xt {
        #[arg(long)]
        entries: String,
    },
    /// `p, q` with `kp + lq = 1` and the word `a^q b^p`.
    Bezout {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
    },
}

fn need(v: Option<u32>, name: &str) -> CliResult<u32> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this presentation")))
}

pub(crate) fn group(cmd: &GroupCmd, ctx: &Context) -> CliResult<Output> {
    match cmd {
        GroupCmd::Abel { file } => {
            let p =
                Presentation::from_json_str(&ctx.primary_input(file.as_deref(), "presentation")?)?;
            Output::json(&abelianization(&p).to_json())
        }
        GroupCmd::Snf { matrix, file } => {
            let src = match matrix {
                Some(m) => m.clone(),
                None => ctx.primary_input(file.as_deref(), "matrix")?,
            };
            let rows: Vec<Vec<i64>> = serde_json::from_str(&src)?;
            if rows.iter().any(|r| r.len() != rows[0].len()) {
                return Err(CliError::Domain(
                    "matrix rows have different lengths".into(),
                ));
            }
            let f = smith_normal_form_i64(&rows);
            let strs = |m: &[Vec<num_bigint::BigInt>]| -> Vec<Vec<String>> {
                m.iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect()
            };
            Output::json(&json!({
                "invariant_factors": f.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "rank": f.rank(),
                "s": strs(&f.s),
                "u": strs(&f.u),
                "v": strs(&f.v),
            }))
        }
        GroupCmd::Named {
            which,
            k,
            l,
            s,
            entries,
        } => {
            let named = match which {
                NamedKind::Bkl => NamedPresentation::Bkl {
                    k: need(*k, "k")?,
                    l: need(*l, "l")?,
                },
                NamedKind::Bkls => NamedPresentation::Bkls {
                    k: need(*k, "k")?,
                    l: need(*l, "l")?,
                    s: need(*s, "s")?,
                },
                NamedKind::Gkls => NamedPresentation::Gkls {
                    k: need(*k, "k")?,
                    l: need(*l, "l")?,
                    s: need(*s, "s")?,
                },
                NamedKind::Tkls => NamedPresentation::Tkls {
                    k: need(*k, "k")?,
                    l: need(*l, "l")?,
                    s: need(*s, "s")?,
                },
                NamedKind::B3quot => NamedPresentation::B3Quot { s: need(*s, "s")? },
                NamedKind::Xtquot => {
                    let e = entries.as_deref().ok_or_else(|| {
                        CliError::Usage("--entries is required for xtquot".into())
                    })?;
                    NamedPresentation::XtQuot { t: xt_entries(e)? }
                }
            };
            let p = named_presentation(&named)?;
            let words: Vec<String> = p.relators.iter().map(|w| p.word_to_string(w)).collect();
            Output::json(&json!({
                "presentation": p,
                "relators": words,
                "abelianization": abelianization(&p).to_json(),
            }))
        }
        GroupCmd::Triangle(t) => Output::json(&triangle_classification(t.k, t.l, t.s)?),
        GroupCmd::Sphere(t) => {
            Output::json(&json!({"homology_sphere": homology_sphere_check(t.k, t.l, t.s)?}))
        }
        GroupCmd::Xt { entries } => {
            Output::json(&json!({"exponent": xt_exponent(&xt_entries(entries)?)?.to_string()}))
        }
        GroupCmd::Bezout { k, l } => {
            let (p, q, word) = bezout_alpha(*k, *l)?;
            Output::json(&json!({"p": p, "q": q, "word": word}))
        }
    }
}

#[derive(Debug, Args)]
pub(crate) struct SmithInput {
    /// Complex JSON `{"simplices": [[...], ...]}`.
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Action JSON `{"order": p, "perm": {...}}`.
    #[arg(long)]
    action: Option<PathBuf>,
    /// A built-in example: disc3, sphere3, hexagon3, disc5, sphere5, decagon5.
    #[arg(long, conflicts_with_all = ["complex", "action"])]
    instance: Option<String>,
}

impl SmithInput {
    fn complex(&self, ctx: &Context) -> CliResult<SimplicialComplex> {
        if let Some(name) = &self.instance {
            return Ok(sample_instance(name)?.complex);
        }
        let j: ComplexJson =
            serde_json::from_str(&ctx.primary_input(self.complex.as_deref(), "complex")?)?;
        Ok(SimplicialComplex::from_json(&j)?)
    }

    fn with_action(&self, ctx: &Context) -> CliResult<(SimplicialComplex, CyclicAction)> {
        if let Some(name) = &self.instance {
            let inst = sample_instance(name)?;
            return Ok((inst.complex, inst.action));
        }
        let k = self.complex(ctx)?;
        let path = self
            .action
            .as_deref()
            .ok_or_else(|| CliError::Usage("--action or --instance is required".into()))?;
        let j: ActionJson = serde_json::from_str(&read_path(path)?)?;
        let a = CyclicAction::from_json(&k, &j)?;
        Ok((k, a))
    }
}

#[derive(Debug, Subcommand)]
pub(crate) enum SmithCmd {
    /// Simplicial homology over Z or Z/p.
    Homology {
        #[command(flatten)]
        input: SmithInput,
        /// `Z` or a prime.
        #[arg(long, default_value = "Z")]
        coeffs: String,
    },
    /// The orbit complex of a regular action.
    Orbit(SmithInput),
    /// Transfer identities over Z/q, with q prime and coprime to the order.
    Transfer {
        #[command(flatten)]
        input: SmithInput,
        #[arg(long)]
        q: u64,
    },
    /// The Smith exact sequences, operator identities and acyclicity check.
    Sequences(SmithInput),
    /// Barycentric subdivision with the induced action.
    Subdivide(SmithInput),
}

fn coefficients(s: &str) -> CliResult<Coefficients> {
    if s.eq_ignore_ascii_case("z") {
        return Ok(Coefficients::Integers);
    }
    match s.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(Coefficients::Mod(p)),
        _ => Err(CliError::Usage(format!(
            "--coeffs takes Z or a prime, got '{s}'"
        ))),
    }
}

pub(crate) fn smith(cmd: &SmithCmd, ctx: &Context) -> CliResult<Output> {
    match cmd {
        SmithCmd::Homology { input, coeffs } => {
            let k = input.complex(ctx)?;
            let c = ChainComplex::from_simplicial(&k, coefficients(coeffs)?);
            let h: Vec<String> = c.homology().iter().map(ToString::to_string).collect();
            Output::json(&json!({
                "coefficients": coeffs,
                "homology": h,
                "euler_characteristic": c.euler_characteristic(),
            }))
        }
        SmithCmd::Orbit(input) => {
            let (k, a) = input.with_action(ctx)?;
            Output::json(&orbit_complex(&k, &a)?.to_json(&k))
        }
        SmithCmd::Transfer { input, q } => {
            let (k, a) = input.with_action(ctx)?;
            let r = transfer_check(&k, &a, *q)?;
            let mut v = serde_json::to_value(&r)?;
            v["all_hold"] = Value::Bool(r.all_hold());
            Output::json(&v)
        }
        SmithCmd::Sequences(input) => {
            let (k, a) = input.with_action(ctx)?;
            let r = verify_smith_sequences(&k, &a)?;
            let mut v = serde_json::to_value(&r)?;
            v["all_exact"] = Value::Bool(r.all_exact());
            v["all_hold"] = Value::Bool(r.all_hold());
            Output::json(&v)
        }
        SmithCmd::Subdivide(input) => {
            let (k, a) = input.with_action(ctx)?;
            let (k2, a2) = barycentric_subdivide(&k, &a)?;
            Output::json(&json!({"complex": k2.to_json(), "action": a2.to_json(&k2)}))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::run;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("exotic").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap())
    }

    fn json(args: &[&str]) -> serde_json::Value {
        let (code, out) = call(args);
        assert_eq!(code, 0, "{args:?}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn group_verbs() {
        let path = std::env::temp_dir().join(format!("exotic-cyclic-{}.json", std::process::id()));
        std::fs::write(&path, r#"{"gens": ["a"], "rels": [[1, 1, 1, 1, 1, 1]]}"#).unwrap();
        let v = json(&["group", "abel", "--file", path.to_str().unwrap()]);
        assert_eq!(v["text"], "Z/6");
        let v = json(&[
            "group", "named", "--which", "gkls", "--k", "2", "--l", "3", "--s", "5",
        ]);
        assert_eq!(v["abelianization"]["text"], "0");
        let v = json(&["group", "sphere", "--k", "2", "--l", "3", "--s", "5"]);
        assert_eq!(v["homology_sphere"], true);
    }

    #[test]
    fn numbers_are_strings() {
        let v = json(&["group", "bezout", "--k", "3", "--l", "2"]);
        assert_eq!(v["p"], "1");
        assert_eq!(v["q"], "-1");
        let v = json(&["group", "snf", "--matrix", "[[2,4],[6,8]]"]);
        assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
    }

    #[test]
    fn smith_instances() {
        let v = json(&["smith", "sequences", "--instance", "disc3"]);
        assert_eq!(v["all_hold"], true);
        let v = json(&[
            "smith",
            "homology",
            "--instance",
            "sphere3",
            "--coeffs",
            "3",
        ]);
        assert_eq!(v["homology"][2], "Z/3");
        assert_eq!(
            call(&["smith", "homology", "--instance", "disc3", "--coeffs", "4"]).0,
            2
        );
    }

    #[test]
    fn graph_chain() {
        let v = json(&["graph", "chain", "--m", "3", "--n", "2"]);
        assert_eq!(
            v["determinant"].as_str().unwrap().trim_start_matches('-'),
            "1"
        );
        let v = json(&[
            "graph", "tdp", "--m1", "2", "--n1", "1", "--m2", "3", "--n2", "2",
        ]);
        assert_eq!(v["contractible"], true);
    }
}
