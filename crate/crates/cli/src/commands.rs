//! One function per subcommand. Each returns the pieces of a report; the
//! caller adds the command echo, parameters and timings.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use ucat::exact::{exact_ucat, exact_ucat_strong, min_tree_cover, strong_ucat_leq, ucat_leq, Budget, UcatResult};
use ucat::gadgets::{coloring_gadget, two_trees_decision, two_trees_instance, verify_reduction, vertex_cover_gadget, Answer, GadgetKind};
use ucat::io::{decomposition_json, gadget_json, instance_json, read_instance, subset_json, violation_json, witness_json, InstanceFile};
use ucat::oracles::{chromatic_decision, chromatic_number, min_vertex_cover};
use ucat::tree_solver::{ucat_infinity_tree, ucat_p_tree};
use ucat::unimodality::{is_strong_decomposition, is_unimodal, Unimodality};
use ucat::{Error, Graph};

use crate::CliError;

/// What a command produced.
pub struct Outcome {
    pub result: Value,
    pub certificates: Value,
    pub warnings: Vec<String>,
    /// Command-specific parameters echoed into the report.
    pub parameters: Map<String, Value>,
    /// Plain-text rendering for the terminal.
    pub human: String,
    /// Set when the command ran but its answer is a failure (a reduction
    /// disagreement).
    pub failed: bool,
    /// Print this document instead of a report.
    pub raw: Option<Value>,
}

impl Outcome {
    fn new(result: Value, human: String) -> Self {
        Outcome {
            result,
            certificates: json!({}),
            warnings: Vec::new(),
            parameters: Map::new(),
            human,
            failed: false,
            raw: None,
        }
    }
}

fn load(path: &Path) -> Result<InstanceFile, CliError> {
    read_instance(path).map_err(CliError::from)
}

pub fn check(path: &Path) -> Result<Outcome, CliError> {
    let file = load(path)?;
    let verdict = is_unimodal(&file.graph, &file.function)?;
    Ok(match verdict {
        Unimodality::Unimodal { root } => {
            Outcome::new(json!({"unimodal": true, "mode": root}), format!("unimodal (mode {})", file.graph.label(root)))
        }
        Unimodality::NotUnimodal(w) => {
            let detail = witness_json(&w)["detail"].clone();
            let human = format!("not unimodal: {} {}", w.kind(), detail);
            Outcome::new(json!({"unimodal": false, "witness": w.kind(), "detail": detail}), human)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Tree solver on trees, exact solver otherwise.
    Auto,
    Tree,
    Exact,
}

/// Exponent `p`: a positive integer or `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    Finite(u32),
    Infinity,
}

impl std::str::FromStr for Power {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "infinity" => Ok(Power::Infinity),
            _ => match s.parse::<u32>() {
                Ok(p) if p >= 1 => Ok(Power::Finite(p)),
                _ => Err(format!("expected a positive integer or `inf`, got `{s}`")),
            },
        }
    }
}

impl Power {
    fn json(self) -> Value {
        match self {
            Power::Finite(p) => json!(p),
            Power::Infinity => json!("inf"),
        }
    }
}

pub struct DecomposeArgs {
    pub method: Method,
    pub p: Power,
    pub k: Option<usize>,
    pub refine: usize,
    pub strong: bool,
}

pub fn decompose(path: &Path, args: &DecomposeArgs, budget: &Budget) -> Result<Outcome, CliError> {
    let file = load(path)?;
    let method = match args.method {
        Method::Auto if file.graph.is_tree() => Method::Tree,
        Method::Auto => Method::Exact,
        m => m,
    };
    let mut out = match method {
        Method::Tree => decompose_tree(&file, args)?,
        _ => decompose_exact(&file, args, budget)?,
    };
    out.parameters.insert("method".into(), json!(if method == Method::Tree { "tree" } else { "exact" }));
    out.parameters.insert("p".into(), args.p.json());
    out.parameters.insert("k".into(), json!(args.k));
    out.parameters.insert("refinement".into(), json!(args.refine));
    out.parameters.insert("strong".into(), json!(args.strong));
    Ok(out)
}

fn decompose_tree(file: &InstanceFile, args: &DecomposeArgs) -> Result<Outcome, CliError> {
    let g = &file.graph;
    if !g.is_tree() {
        return Err(CliError::Input("graph is not a tree; use --method exact for general graphs".into()));
    }
    if args.refine > 0 {
        return Err(CliError::Input("--refine applies to --method exact only".into()));
    }
    let p = match args.p {
        Power::Infinity => {
            let value = ucat_infinity_tree(g, &file.function)?;
            let mut out = Outcome::new(json!({"value": value}), format!("ucat^inf = {value} (local maxima)"));
            if let Some(k) = args.k {
                out.result["holds"] = json!(value <= k);
            }
            return Ok(out);
        }
        Power::Finite(p) => p,
    };
    let d = ucat_p_tree(g, &file.function, p)?;
    let value = d.len();
    let mut result = json!({"value": value});
    let mut human = format!("ucat^{p} = {value}\n");
    if let Some(k) = args.k {
        result["holds"] = json!(value <= k);
        let _ = writeln!(human, "ucat^{p} <= {k}: {}", value <= k);
    }
    let mut certificates = json!({"decomposition": decomposition_json(&d)});
    if args.strong {
        let verdict = is_strong_decomposition(g, &d.functions())?;
        result["strong"] = json!(verdict.is_strong());
        if let Some(v) = &verdict.violation {
            certificates["strong_violation"] = violation_json(v);
        }
        let _ = writeln!(human, "strong: {}", verdict.is_strong());
    }
    human.push_str(&components_text(g, &d));
    let mut out = Outcome::new(result, human);
    out.certificates = certificates;
    Ok(out)
}

fn decompose_exact(file: &InstanceFile, args: &DecomposeArgs, budget: &Budget) -> Result<Outcome, CliError> {
    let (g, f) = (&file.graph, &file.function);
    let Power::Finite(p) = args.p else {
        return Err(CliError::Input("p = inf is only supported by --method tree".into()));
    };
    if args.strong && args.refine > 0 {
        return Err(CliError::Input("--strong works on the unrefined graph; drop --refine".into()));
    }
    let fp = f.pow(p);
    let solved: Option<UcatResult> = match (args.strong, args.k) {
        (false, None) => Some(exact_ucat(g, f, p, args.refine, budget)?),
        (true, None) => Some(exact_ucat_strong(g, f, p, budget)?),
        (false, Some(k)) => ucat_leq(g, &fp, k, args.refine, budget)?,
        (true, Some(k)) => strong_ucat_leq(g, &fp, k, budget)?,
    };
    let label = if args.strong { format!("ucat_s^{p}") } else { format!("ucat^{p}") };
    let Some(res) = solved else {
        let k = args.k.expect("only bounded searches can come back empty");
        let mut out = Outcome::new(json!({"holds": false}), format!("{label} <= {k}: false"));
        if args.strong {
            out.warnings.push("no strong decomposition found among sampled extreme points".into());
        }
        return Ok(out);
    };
    let mut result = json!({
        "value": res.value,
        "strong": res.strong,
        "complete": res.complete,
        "refinement": res.refinement,
    });
    if args.strong {
        result["strong_raised"] = json!(res.strong_raised);
    }
    let mut human = match args.k {
        Some(k) => {
            result["holds"] = json!(true);
            format!("{label} <= {k}: true (witness with {} components)\n", res.value)
        }
        None => format!("{label} = {}\n", res.value),
    };
    let mut certificates = json!({"decomposition": decomposition_json(&res.certificate)});
    if res.refinement > 0 {
        certificates["refined_instance"] = instance_json(None, &res.graph, &res.function);
    }
    human.push_str(&components_text(&res.graph, &res.certificate));
    let mut out = Outcome::new(result, human);
    out.certificates = certificates;
    out.warnings = res.warnings;
    Ok(out)
}

fn components_text(g: &Graph, d: &ucat::Decomposition) -> String {
    let mut s = String::new();
    for (i, c) in d.components.iter().enumerate() {
        let values: Vec<String> = c.values.values().iter().map(ucat::format_rational).collect();
        let _ = writeln!(s, "  component {i}: mode {} values [{}]", g.label(c.root), values.join(", "));
    }
    s
}

pub fn gadget(kind: GadgetKind, path: &Path, k: Option<usize>) -> Result<Outcome, CliError> {
    let file = load(path)?;
    let inst = match kind {
        GadgetKind::ColoringApex => coloring_gadget(&file.graph, k.unwrap_or(3))?,
        GadgetKind::VertexCover => vertex_cover_gadget(&file.graph),
        GadgetKind::TwoTrees => two_trees_instance(&file.graph),
    };
    let doc = gadget_json(&inst);
    let human = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    let mut out = Outcome::new(json!({"vertices": inst.graph.vertex_count(), "edges": inst.graph.edge_count()}), human);
    out.raw = Some(doc);
    Ok(out)
}

fn answer_json(a: Answer) -> Value {
    match a {
        Answer::Holds(b) => json!(b),
        Answer::Count(c) => json!(c),
    }
}

pub fn verify(kind: GadgetKind, path: &Path, k: Option<usize>, budget: &Budget) -> Result<Outcome, CliError> {
    let file = load(path)?;
    let report = verify_reduction(kind, &file.graph, k, budget)?;
    let result = json!({
        "kind": kind,
        "lhs_label": report.lhs_label,
        "lhs": answer_json(report.lhs),
        "rhs_label": report.rhs_label,
        "rhs": answer_json(report.rhs),
        "agree": report.agree,
    });
    let human = format!(
        "{}: {}\n{}: {}\n{}",
        report.lhs_label,
        answer_json(report.lhs),
        report.rhs_label,
        answer_json(report.rhs),
        if report.agree { "agree" } else { "DISAGREE" }
    );
    let mut certificates = json!({"gadget": gadget_json(&report.instance)});
    if let Some(o) = &report.oracle {
        certificates["oracle"] = serde_json::to_value(o).expect("oracle answers serialize");
    }
    if let Some(t) = &report.two_trees {
        certificates["two_trees"] = json!(t.parts.as_ref().map(|(a, b)| [subset_json(a), subset_json(b)]));
    }
    if let Some(d) = &report.decomposition {
        certificates["decomposition"] = decomposition_json(d);
    }
    let mut out = Outcome::new(result, human);
    out.certificates = certificates;
    out.failed = !report.agree;
    if let Some(k) = k {
        out.parameters.insert("k".into(), json!(k));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleProblem {
    /// Minimum vertex cover.
    #[value(alias = "vertex-cover")]
    Vc,
    /// Chromatic number.
    Chromatic,
    /// Whether a proper coloring with `--k` colors exists.
    Coloring,
    /// Whether the vertices split into two induced trees.
    TwoTrees,
}

pub fn oracle(problem: OracleProblem, path: &Path, k: Option<usize>, overlap: bool) -> Result<Outcome, CliError> {
    let g = load(path)?.graph;
    let answer = match problem {
        OracleProblem::Vc => min_vertex_cover(&g)?,
        OracleProblem::Chromatic => chromatic_number(&g)?,
        OracleProblem::Coloring => {
            let k = k.ok_or_else(|| CliError::Input("oracle coloring needs --k".into()))?;
            chromatic_decision(&g, k)?
        }
        OracleProblem::TwoTrees => {
            let t = two_trees_decision(&g, !overlap)?;
            let parts = t.parts.as_ref().map(|(a, b)| [subset_json(a), subset_json(b)]);
            let mut out = Outcome::new(json!({"value": t.holds}), t.holds.to_string());
            out.certificates = json!({"parts": parts});
            out.parameters.insert("disjoint".into(), json!(!overlap));
            return Ok(out);
        }
    };
    let value = serde_json::to_value(answer.value).expect("oracle values serialize");
    let mut out = Outcome::new(json!({"value": value}), value.to_string());
    out.certificates = json!({"witness": answer.witness});
    if let Some(k) = k {
        out.parameters.insert("k".into(), json!(k));
    }
    Ok(out)
}

pub fn tree_cover(path: &Path, budget: &Budget) -> Result<Outcome, CliError> {
    let g = load(path)?.graph;
    let cover = min_tree_cover(&g, budget)?;
    let sets: Vec<Value> = cover.sets.iter().map(subset_json).collect();
    let human = format!("open-star tree cover = {}\n  trees: {}", cover.size, Value::Array(sets.clone()));
    let mut out = Outcome::new(json!({"value": cover.size}), human);
    out.certificates = json!({"trees": sets});
    Ok(out)
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}
