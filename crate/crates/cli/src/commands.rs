use mpg_core::base_module::{analyze_module, EndpointPathFamily};
use mpg_core::ce_ops::{apply, Operator, Site};
use mpg_core::coloring::{enumerate_colorings, Color};
use mpg_core::embedding::VertexId;
use mpg_core::generator::{generate, ubcmpg_scan, GenerateOptions, LevelStats};
use mpg_core::kempe::kempe_class;
use mpg_core::kempe::kempe_partition;
use mpg_core::transform::{
    borodin_config_scan, find_wernicke_config, replay, transform_with, DecycleMethod, TraceStep, TransformOptions,
    TransformTrace,
};
use mpg_core::ubcycle::{classify_ubcmpg, ColoringClass, UbType};
use mpg_core::{validate_mpg, Coloring, Cycle, Error, PlaneGraph, Result, SmpgView};
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// A command's result. `alarm` turns a completed run into exit code 3.
pub struct Outcome {
    pub value: Value,
    pub alarm: Option<String>,
}

fn ok<T: Serialize>(v: T) -> Result<Outcome> {
    Ok(Outcome {
        value: serde_json::to_value(v)?,
        alarm: None,
    })
}

pub fn read_graph(path: &Path) -> Result<PlaneGraph> {
    PlaneGraph::parse_rot(&fs::read_to_string(path)?)
}

fn one_based(vs: &[VertexId]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn cycles(cs: &[Cycle]) -> Vec<Vec<usize>> {
    cs.iter().map(|c| one_based(&c.vertices)).collect()
}

#[derive(Serialize)]
struct ValidateOut {
    n: usize,
    edges: usize,
    faces: usize,
    is_simple: bool,
    is_mpg: bool,
    min_degree: usize,
    max_degree: usize,
}

pub fn validate(path: &Path) -> Result<Outcome> {
    let g = read_graph(path)?;
    let c = validate_mpg(&g);
    ok(ValidateOut {
        n: g.n(),
        edges: g.edge_count(),
        faces: g.face_count(),
        is_simple: g.is_simple(),
        is_mpg: c.is_mpg,
        min_degree: c.min_degree,
        max_degree: c.max_degree,
    })
}

#[derive(Serialize)]
struct ColoringsOut {
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    colorings: Option<Vec<Vec<Color>>>,
}

pub fn colorings(path: &Path, all: bool) -> Result<Outcome> {
    let g = read_graph(path)?;
    let cs = enumerate_colorings(&g)?;
    ok(ColoringsOut {
        count: cs.len(),
        colorings: all.then(|| cs.into_iter().map(|c| c.0).collect()),
    })
}

/// Text form of `colorings`: the count, then one coloring per line.
pub fn colorings_text(v: &Value) -> String {
    let mut s = format!("{}\n", v["count"]);
    if let Some(cs) = v["colorings"].as_array() {
        for c in cs {
            let words: Vec<String> = c.as_array().unwrap().iter().map(|x| x.to_string()).collect();
            s.push_str(&words.join(" "));
            s.push('\n');
        }
    }
    s
}

#[derive(Serialize)]
struct ClassOut {
    size: usize,
    bichromatic_cycles: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<Vec<Color>>>,
}

#[derive(Serialize)]
struct KempeOut {
    colorings: usize,
    classes: Vec<ClassOut>,
    is_kempe: bool,
}

pub fn kempe_classes(path: &Path, members: bool) -> Result<Outcome> {
    let g = read_graph(path)?;
    let parts = kempe_partition(&g)?;
    let mut classes = Vec::new();
    for p in &parts {
        let k = kempe_class(&g, &p[0])?;
        classes.push(ClassOut {
            size: p.len(),
            bichromatic_cycles: k.cycle_set.len(),
            members: members.then(|| p.iter().map(|c| c.0.clone()).collect()),
        });
    }
    ok(KempeOut {
        colorings: parts.iter().map(Vec::len).sum(),
        is_kempe: parts.len() <= 1,
        classes,
    })
}

#[derive(Serialize)]
struct UbCycleOut {
    pair: [Color; 2],
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct UbColoringOut {
    coloring: Vec<Color>,
    class: ColoringClass,
    kempe_class: usize,
    ub_cycles: Vec<UbCycleOut>,
}

#[derive(Serialize)]
struct UbcOut {
    #[serde(rename = "type")]
    kind: UbType,
    ubc_count: usize,
    tree_count: usize,
    cyclic_count: usize,
    colorings: Vec<UbColoringOut>,
}

pub fn ubc(path: &Path) -> Result<Outcome> {
    let g = read_graph(path)?;
    let r = classify_ubcmpg(&g)?;
    ok(UbcOut {
        kind: r.kind,
        ubc_count: r.ubc_count,
        tree_count: r.tree_count,
        cyclic_count: r.cyclic_count,
        colorings: r
            .colorings
            .into_iter()
            .map(|c| UbColoringOut {
                coloring: c.coloring.0,
                class: c.class,
                kempe_class: c.kempe_class,
                ub_cycles: c
                    .ub_cycles
                    .iter()
                    .map(|b| UbCycleOut {
                        pair: [b.pair.0, b.pair.1],
                        vertices: one_based(&b.cycle.vertices),
                    })
                    .collect(),
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct FamilyOut {
    anchors: [usize; 2],
    colors: [Color; 2],
    paths: Vec<Vec<usize>>,
}

fn family(f: &EndpointPathFamily) -> FamilyOut {
    FamilyOut {
        anchors: [f.anchors.0 + 1, f.anchors.1 + 1],
        colors: [f.colors.0, f.colors.1],
        paths: f.paths.iter().map(|p| one_based(p)).collect(),
    }
}

#[derive(Serialize)]
struct ModulePathsOut {
    coloring: Vec<Color>,
    families: Vec<FamilyOut>,
}

#[derive(Serialize)]
struct BaseModuleOut {
    corners: Vec<usize>,
    is_4_base_module: bool,
    shared_pair: Option<mpg_core::base_module::SharedPair>,
    module_type: mpg_core::base_module::ModuleKind,
    path_type: mpg_core::base_module::PathKind,
    witness_f0: Option<Vec<Color>>,
    module_paths: Vec<ModulePathsOut>,
    class_cycles: Vec<Vec<usize>>,
    ub_cycles: Vec<Vec<usize>>,
    shells: Vec<Vec<usize>>,
    mate_bound: usize,
}

pub fn base_module(path: &Path, mate_bound: usize) -> Result<Outcome> {
    let s = SmpgView::new(read_graph(path)?)?;
    let r = analyze_module(&s, mate_bound)?;
    ok(BaseModuleOut {
        corners: one_based(&r.corners),
        is_4_base_module: r.is_4_base_module,
        shared_pair: r.shared_pair,
        module_type: r.kind,
        path_type: r.path_kind,
        witness_f0: r.witness_f0.map(|c| c.0),
        module_paths: r
            .module_paths
            .iter()
            .map(|m| ModulePathsOut {
                coloring: m.coloring.0.clone(),
                families: m.families.iter().map(family).collect(),
            })
            .collect(),
        class_cycles: cycles(&r.class_cycles),
        ub_cycles: cycles(&r.ub_cycles),
        shells: cycles(&r.shells),
        mate_bound: r.mate_bound,
    })
}

#[derive(Serialize)]
struct ApplyOut {
    operator: String,
    site: Vec<usize>,
    order_before: usize,
    order_after: usize,
    new_vertices: Vec<usize>,
    contracted: Option<[usize; 2]>,
    vertex_map: Vec<Option<usize>>,
    coloring: Option<Vec<Option<Color>>>,
    pending: Vec<usize>,
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rot: Option<String>,
}

fn parse_site(text: &str) -> Result<Vec<VertexId>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| match w.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::InvalidSite(format!("bad vertex `{w}` (vertices are 1-based)"))),
        })
        .collect()
}

pub fn apply_op(op: &str, site: &str, path: &Path, coloring: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let g = read_graph(path)?;
    let op = Operator::from_name(op).ok_or_else(|| Error::InvalidSite(format!("unknown operator `{op}`")))?;
    let site = Site::from_vertices(op, &parse_site(site)?)?;
    let f = match coloring {
        Some(p) => Some(Coloring::parse(&fs::read_to_string(p)?, g.n())?),
        None => None,
    };
    let a = apply(&g, f.as_ref(), op, &site)?;
    let rot = a.after.to_rot_string();
    if let Some(p) = out {
        fs::write(p, &rot)?;
    }
    ok(ApplyOut {
        operator: op.name().into(),
        site: one_based(&site.vertices()),
        order_before: a.before.n(),
        order_after: a.after.n(),
        new_vertices: one_based(&a.new_vertices),
        contracted: a.contracted.map(|(x, y)| [x + 1, y + 1]),
        vertex_map: a.vertex_map.iter().map(|v| v.map(|v| v + 1)).collect(),
        pending: a
            .after_coloring
            .as_ref()
            .map(|c| one_based(&c.pending()))
            .unwrap_or_default(),
        coloring: a.after_coloring.map(|c| c.0),
        out: out.map(|p| p.display().to_string()),
        rot: out.is_none().then_some(rot),
    })
}

#[derive(Serialize)]
struct ConfigOut {
    kind: u8,
    v2: usize,
    rim: Vec<usize>,
}

#[derive(Serialize)]
struct TransformOut {
    config: ConfigOut,
    base: &'static str,
    steps: Vec<&'static str>,
    decycle_method: Option<DecycleMethod>,
    coloring: Vec<Color>,
    proper: bool,
    replayed: bool,
    trace: Option<String>,
}

fn step_kind(s: &TraceStep) -> &'static str {
    match s {
        TraceStep::ConfigFound { .. } => "config_found",
        TraceStep::Kchange { .. } => "kchange",
        TraceStep::Extend { .. } => "extend",
        TraceStep::E4wo { .. } => "e4wo",
        TraceStep::ModuleExtracted { .. } => "module_extracted",
        TraceStep::Decycle { .. } => "decycle",
        TraceStep::C4wo { .. } => "c4wo",
    }
}

fn summarize(g: &PlaneGraph, trace: &TransformTrace, f: &Coloring, replayed: bool, path: Option<&Path>) -> Result<TransformOut> {
    let cfg = find_wernicke_config(g)?;
    Ok(TransformOut {
        config: ConfigOut {
            kind: cfg.kind,
            v2: cfg.v2 + 1,
            rim: one_based(&cfg.rim),
        },
        base: match trace.base {
            mpg_core::transform::BaseColoring::Recursion { .. } => "recursion",
            mpg_core::transform::BaseColoring::Backtracking { .. } => "backtracking",
            mpg_core::transform::BaseColoring::Search { .. } => "search",
        },
        steps: trace.steps.iter().map(step_kind).collect(),
        decycle_method: trace.steps.iter().find_map(|s| match s {
            TraceStep::Decycle { method, .. } => Some(*method),
            _ => None,
        }),
        coloring: f.0.clone(),
        proper: f.is_proper(g),
        replayed,
        trace: path.map(|p| p.display().to_string()),
    })
}

pub fn transform(path: &Path, trace_out: Option<&Path>, force_module: bool) -> Result<Outcome> {
    let g = read_graph(path)?;
    let (f, trace) = transform_with(&g, TransformOptions { force_module })?;
    let replayed = replay(&trace)? == f;
    if !replayed {
        return Err(Error::Alarm("trace does not reproduce the coloring".into()));
    }
    if let Some(p) = trace_out {
        fs::write(p, serde_json::to_string_pretty(&trace)?)?;
    }
    ok(summarize(&g, &trace, &f, replayed, trace_out)?)
}

pub fn transform_replay(path: &Path) -> Result<Outcome> {
    let trace: TransformTrace = serde_json::from_str(&fs::read_to_string(path)?)?;
    let f = replay(&trace)?;
    let g = PlaneGraph::parse_rot(&trace.input)?;
    ok(summarize(&g, &trace, &f, true, Some(path))?)
}

#[derive(Serialize)]
struct StatsFile<'a> {
    max_order: usize,
    min_degree: Option<usize>,
    max_parallel_excess: usize,
    complete: bool,
    levels: &'a [LevelStats],
    files: Vec<String>,
}

#[derive(Serialize)]
struct GenerateOut {
    max_order: usize,
    min_degree: Option<usize>,
    complete: bool,
    counts: BTreeMap<usize, usize>,
    total: usize,
    out: String,
}

pub fn generate_cmd(max_order: usize, min_degree: Option<usize>, excess: usize, out: &Path) -> Result<Outcome> {
    let mut opts = GenerateOptions::new(max_order);
    opts.min_degree = min_degree;
    opts.max_parallel_excess = excess;
    let run = generate(&opts)?;
    fs::create_dir_all(out)?;
    let mut files = Vec::new();
    for (i, g) in run.all().enumerate() {
        let name = format!("{:06}_n{:02}.rot", i + 1, g.n());
        fs::write(out.join(&name), g.to_rot_string())?;
        files.push(name);
    }
    let stats = StatsFile {
        max_order,
        min_degree,
        max_parallel_excess: excess,
        complete: run.complete,
        levels: &run.stats,
        files,
    };
    fs::write(out.join("stats.json"), serde_json::to_string_pretty(&stats)?)?;
    let counts: BTreeMap<usize, usize> = run.emitted.iter().map(|(&n, v)| (n, v.len())).collect();
    ok(GenerateOut {
        max_order,
        min_degree,
        complete: run.complete,
        total: counts.values().sum(),
        counts,
        out: out.display().to_string(),
    })
}

#[derive(Serialize, Default)]
struct OrderScan {
    order: usize,
    graphs: usize,
    pure: usize,
    tree: usize,
    cycle: usize,
    hybrid: usize,
}

#[derive(Serialize, Default)]
struct DegreeFiveScan {
    graphs: usize,
    wernicke_misses: usize,
    borodin_misses: usize,
    config_55: usize,
    config_56: usize,
}

#[derive(Serialize)]
struct ScanOut {
    max_order: usize,
    min_degree: usize,
    complete: bool,
    orders: Vec<OrderScan>,
    ubcmpgs: usize,
    pure_total: usize,
    /// UB-cycles through a vertex of degree below 5.
    low_degree_ub_cycles: usize,
    min_degree_five: DegreeFiveScan,
}

/// UBCMPG types per order, UB-cycle degree check, and the configuration
/// checks on the minimum-degree-5 members.
pub fn scan(max_order: usize, min_degree: usize) -> Result<Outcome> {
    if min_degree < 4 {
        return Err(Error::Precondition("scan needs --min-degree at least 4".into()));
    }
    let run = generate(&GenerateOptions::new(max_order).min_degree(min_degree))?;
    let mut orders: BTreeMap<usize, OrderScan> = BTreeMap::new();
    for (&n, gs) in &run.emitted {
        if !gs.is_empty() {
            orders.insert(
                n,
                OrderScan {
                    order: n,
                    graphs: gs.len(),
                    ..Default::default()
                },
            );
        }
    }
    let found = ubcmpg_scan(&run)?;
    let mut low = 0;
    for (g, r) in &found {
        let o = orders.get_mut(&g.n()).expect("order present");
        match r.kind {
            UbType::Pure => o.pure += 1,
            UbType::Tree => o.tree += 1,
            UbType::Cycle => o.cycle += 1,
            UbType::Hybrid => o.hybrid += 1,
            UbType::NotUbcmpg => {}
        }
        for c in &r.colorings {
            low += c
                .ub_cycles
                .iter()
                .filter(|b| b.cycle.vertices.iter().any(|&v| g.degree(v) < 5))
                .count();
        }
    }
    let mut five = DegreeFiveScan::default();
    for g in run.all().filter(|g| g.min_degree() == 5) {
        five.graphs += 1;
        match find_wernicke_config(g) {
            Ok(c) if c.kind == 55 => five.config_55 += 1,
            Ok(_) => five.config_56 += 1,
            Err(e) if e.is_alarm() => five.wernicke_misses += 1,
            Err(e) => return Err(e),
        }
        if borodin_config_scan(g)?.is_empty() {
            five.borodin_misses += 1;
        }
    }
    let mut alarms = Vec::new();
    if low > 0 {
        alarms.push(format!("{low} UB-cycles pass through a vertex of degree below 5"));
    }
    if five.wernicke_misses > 0 {
        alarms.push(format!("{} graphs without a 55- or 56-configuration", five.wernicke_misses));
    }
    if five.borodin_misses > 0 {
        alarms.push(format!("{} graphs without a 555/556/557/566 face", five.borodin_misses));
    }
    let out = ScanOut {
        max_order,
        min_degree,
        complete: run.complete,
        ubcmpgs: found.len(),
        pure_total: orders.values().map(|o| o.pure).sum(),
        orders: orders.into_values().collect(),
        low_degree_ub_cycles: low,
        min_degree_five: five,
    };
    Ok(Outcome {
        value: serde_json::to_value(out)?,
        alarm: (!alarms.is_empty()).then(|| alarms.join("; ")),
    })
}
