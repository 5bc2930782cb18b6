use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use atoro_core::curves::exception_kind;
use atoro_core::enumerate::{
    enumerate_recombinations, recombine_in, resume, write_checkpoint, Catalogue, EnumerationStore, GluingChoice,
    DEFAULT_LIMIT,
};
use atoro_core::planar_code::write_planar_code;
use atoro_core::surgery::split_with_move;
use atoro_core::{
    apply_surgery, atoroidal_predecessors, canonical_code, decompose, find_nontrivial_curve, is_atoroidal,
    is_irreducible, legal_surgeries, reassemble, simple_vertices, Chirality, DecompositionTree,
    PlaneMap, SplitMove, SurgeryMove,
};

use crate::input::{load_maps, load_one, read_text};
use crate::render::{crossing_count, layout, to_svg};
use crate::{ChiralityArg, CliError, Command, Format, Mode};

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify { input, format } => classify(&input, format),
        Command::Enumerate { max_crossings, mode, chirality, out, resume, format } => {
            enumerate(max_crossings, mode, chirality, out.as_deref(), resume.as_deref(), format)
        }
        Command::Decompose { input, reassemble, out, format } => cmd_decompose(&input, reassemble, out.as_deref(), format),
        Command::Surgery { input, list, apply, split, simple, predecessors, out, format } => {
            let action = match (list, apply, split, simple, predecessors) {
                (true, None, None, false, false) => SurgeryAction::List,
                (false, Some(m), None, false, false) => SurgeryAction::Apply(m),
                (false, None, Some(v), false, false) => SurgeryAction::Split(v),
                (false, None, None, true, false) => SurgeryAction::Simple,
                (false, None, None, false, true) => SurgeryAction::Predecessors,
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --list, --apply, --split, --simple, --predecessors".into(),
                    ))
                }
            };
            surgery(&input, action, out.as_deref(), format)
        }
        Command::Recombine { first, first_vertex, second, second_vertex, rotation, reflected, mode, out, format } => {
            let choice = GluingChoice { rotation, reflected };
            cmd_recombine(&first, first_vertex, &second, second_vertex, choice, mode, out.as_deref(), format)
        }
        Command::Render { input, out } => render(&input, out.as_deref()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_svg(format: Format) -> Result<(), CliError> {
    if format == Format::Svg {
        return Err(CliError::Usage("--format svg is only supported by `render`".into()));
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn code_of(g: &PlaneMap) -> Option<String> {
    canonical_code(g, Chirality::ModReflection).ok().map(|c| c.to_hex())
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub vertices: usize,
    pub free_loops: usize,
    pub connected: bool,
    pub irreducible: bool,
    pub atoroidal: bool,
    pub hyperbolic: bool,
    pub exception: Option<&'static str>,
    /// Face size to number of faces.
    pub face_vector: BTreeMap<usize, usize>,
    pub witness: Option<WitnessReport>,
    pub code: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CrossingReport {
    pub edge: usize,
    pub rank: usize,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub degree: usize,
    pub curve: String,
    pub crossings: Vec<CrossingReport>,
    /// Face entered after each crossing.
    pub faces: Vec<usize>,
}

pub fn classify_report(g: &PlaneMap) -> ClassifyReport {
    let connected = g.is_connected();
    let irreducible = is_irreducible(g);
    let atoroidal = irreducible && is_atoroidal(g);
    let exception = if atoroidal { exception_kind(g) } else { None };
    let fv = g.face_vector();
    let witness = find_nontrivial_curve(g, 4).map(|(n, c)| WitnessReport {
        degree: n,
        curve: c.display(g).to_string(),
        crossings: c.crossings(g).into_iter().map(|(edge, rank)| CrossingReport { edge, rank }).collect(),
        faces: c.passages(g),
    });
    ClassifyReport {
        vertices: g.vertex_count(),
        free_loops: g.free_loops(),
        connected,
        irreducible,
        atoroidal,
        hyperbolic: atoroidal && exception.is_none(),
        exception: exception.map(|k| k.name()),
        face_vector: (1..=g.dart_count()).filter(|&s| fv.get(s) > 0).map(|s| (s, fv.get(s))).collect(),
        witness,
        code: code_of(g),
    }
}

fn classify_text(r: &ClassifyReport) -> String {
    let mut s = String::new();
    writeln!(s, "vertices: {}, free loops: {}", r.vertices, r.free_loops).unwrap();
    let hyp = match r.exception {
        Some(name) => format!("no (exception: {name})"),
        None => yes_no(r.hyperbolic).to_string(),
    };
    writeln!(
        s,
        "connected: {}, irreducible: {}, atoroidal: {}, hyperbolic: {hyp}",
        yes_no(r.connected),
        yes_no(r.irreducible),
        yes_no(r.atoroidal)
    )
    .unwrap();
    let fv: Vec<String> = r.face_vector.iter().map(|(k, n)| format!("{k}:{n}")).collect();
    writeln!(s, "faces: {}", if fv.is_empty() { "-".into() } else { fv.join(" ") }).unwrap();
    match &r.witness {
        Some(w) => writeln!(s, "witness: {}", w.curve).unwrap(),
        None => writeln!(s, "witness: none").unwrap(),
    }
    writeln!(s, "code: {}", r.code.as_deref().unwrap_or("-")).unwrap();
    s
}

fn classify(input: &Path, format: Format) -> Result<(), CliError> {
    no_svg(format)?;
    let maps = load_maps(input)?;
    let reports: Vec<ClassifyReport> = maps.iter().map(classify_report).collect();
    let text = match format {
        Format::Json => json(&reports),
        _ => reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let head = if reports.len() > 1 { format!("# graph {i}\n") } else { String::new() };
                head + &classify_text(r)
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&text, None)
}

#[derive(Debug, Serialize)]
pub struct LevelReport {
    pub vertices: usize,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub mode: &'static str,
    pub chirality: &'static str,
    pub max_crossings: usize,
    pub levels: Vec<LevelReport>,
    pub total: usize,
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Atoroidal => "atoroidal",
        Mode::BasicPolyhedra => "basic-polyhedra",
        Mode::PrimeProjections => "prime-projections",
    }
}

fn catalogue(m: Mode) -> Option<Catalogue> {
    match m {
        Mode::Atoroidal => None,
        Mode::BasicPolyhedra => Some(Catalogue::BasicPolyhedra),
        Mode::PrimeProjections => Some(Catalogue::PrimeProjections),
    }
}

fn build_store(
    max_v: usize,
    chirality: Option<ChiralityArg>,
    resume_from: Option<&Path>,
) -> Result<EnumerationStore, CliError> {
    match resume_from {
        Some(p) => {
            let store = resume(&read_text(p)?, max_v, DEFAULT_LIMIT)?;
            if let Some(c) = chirality {
                if Chirality::from(c) != store.chirality {
                    return Err(CliError::Usage(format!(
                        "checkpoint uses {}, but --chirality {} was given",
                        store.chirality.as_str(),
                        Chirality::from(c).as_str()
                    )));
                }
            }
            Ok(store)
        }
        None => {
            let mut store = EnumerationStore::new(chirality.map_or(Chirality::ModReflection, Chirality::from));
            store.extend_to(max_v, DEFAULT_LIMIT)?;
            Ok(store)
        }
    }
}

fn enumerate(
    max_v: usize,
    mode: Mode,
    chirality: Option<ChiralityArg>,
    out: Option<&Path>,
    resume_from: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    no_svg(format)?;
    let store = build_store(max_v, chirality, resume_from)?;
    let (levels, file) = match catalogue(mode) {
        None => (store.level_counts(), write_checkpoint(&store)),
        Some(cat) => {
            let codes = enumerate_recombinations(&store, max_v, cat);
            let mut counts = vec![0; max_v + 1];
            let mut file = String::new();
            for c in &codes {
                counts[c.vertex_count()] += 1;
                writeln!(file, "{c}").unwrap();
            }
            (counts.into_iter().enumerate().collect(), file)
        }
    };
    if let Some(p) = out {
        emit(&file, Some(p))?;
    }
    let report = EnumerateReport {
        mode: mode_name(mode),
        chirality: store.chirality.as_str(),
        max_crossings: max_v,
        total: levels.iter().map(|&(_, n)| n).sum(),
        levels: levels.into_iter().map(|(vertices, count)| LevelReport { vertices, count }).collect(),
    };
    let text = match format {
        Format::Json => json(&report),
        _ => {
            let mut s = format!("{:>3}  {:>8}\n", "V", "count");
            for l in &report.levels {
                writeln!(s, "{:>3}  {:>8}", l.vertices, l.count).unwrap();
            }
            writeln!(s, "total {:>8}", report.total).unwrap();
            s
        }
    };
    emit(&text, None)
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TreeReport {
    Leaf {
        vertices: usize,
        free_loops: usize,
        exception: Option<&'static str>,
        code: Option<String>,
        planar_code: String,
    },
    Cut {
        degree: usize,
        curve: String,
        left: Box<TreeReport>,
        right: Box<TreeReport>,
    },
}

fn tree_report(t: &DecompositionTree) -> TreeReport {
    match t {
        DecompositionTree::Leaf(g) => TreeReport::Leaf {
            vertices: g.vertex_count(),
            free_loops: g.free_loops(),
            exception: exception_kind(g).map(|k| k.name()),
            code: code_of(g),
            planar_code: write_planar_code(g),
        },
        DecompositionTree::Cut { curve, gluing, left, right } => TreeReport::Cut {
            degree: gluing.degree,
            curve: curve.to_token_string(),
            left: Box::new(tree_report(left)),
            right: Box::new(tree_report(right)),
        },
    }
}

fn cmd_decompose(input: &Path, reassemble_tree: bool, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    no_svg(format)?;
    if reassemble_tree {
        let tree = DecompositionTree::from_text(&read_text(input)?)?;
        let g = reassemble(&tree)?;
        let text = match format {
            Format::Json => json(&classify_report(&g)),
            _ => write_planar_code(&g),
        };
        return emit(&text, out);
    }
    let g = load_one(input)?;
    let tree = decompose(&g);
    let text = match format {
        Format::Json => json(&tree_report(&tree)),
        _ => tree.to_text(),
    };
    emit(&text, out)
}

enum SurgeryAction {
    List,
    Apply(String),
    Split(usize),
    Simple,
    Predecessors,
}

#[derive(Debug, Serialize)]
pub struct GraphReport {
    pub planar_code: String,
    pub code: Option<String>,
}

fn graph_report(g: &PlaneMap) -> GraphReport {
    GraphReport { planar_code: write_planar_code(g), code: code_of(g) }
}

#[derive(Debug, Serialize)]
pub struct SplitReport {
    pub split: String,
    /// The surgery on the result that restores the input.
    pub inverse: String,
    pub result: GraphReport,
}

#[derive(Debug, Serialize)]
pub struct SimpleReport {
    pub vertex: usize,
    pub triangle: usize,
}

fn surgery(input: &Path, action: SurgeryAction, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    no_svg(format)?;
    let g = load_one(input)?;
    let is_json = format == Format::Json;
    let text = match action {
        SurgeryAction::List => {
            let moves: Vec<String> = legal_surgeries(&g).iter().map(SurgeryMove::to_string).collect();
            if is_json {
                json(&moves)
            } else {
                moves.iter().map(|m| format!("{m}\n")).collect()
            }
        }
        SurgeryAction::Apply(s) => {
            let m = SurgeryMove::parse(&s)
                .ok_or_else(|| CliError::Usage(format!("cannot parse move {s:?}; expected `surgery f<face> e<edge> <e1> <e2>`")))?;
            let h = apply_surgery(&g, &m)?;
            if is_json {
                json(&graph_report(&h))
            } else {
                write_planar_code(&h)
            }
        }
        SurgeryAction::Split(v) => {
            let s = SplitMove { vertex: v };
            let (h, back) = split_with_move(&g, &s)?;
            if is_json {
                json(&SplitReport { split: s.to_string(), inverse: back.to_string(), result: graph_report(&h) })
            } else {
                format!("# inverse: {back}\n{}", write_planar_code(&h))
            }
        }
        SurgeryAction::Simple => {
            let list: Vec<SimpleReport> =
                simple_vertices(&g).into_iter().map(|(vertex, triangle)| SimpleReport { vertex, triangle }).collect();
            if is_json {
                json(&list)
            } else {
                list.iter().map(|r| format!("v{} f{}\n", r.vertex, r.triangle)).collect()
            }
        }
        SurgeryAction::Predecessors => {
            let preds = atoroidal_predecessors(&g);
            if is_json {
                let list: Vec<SplitReport> = preds
                    .iter()
                    .map(|(s, h)| {
                        let (_, back) = split_with_move(&g, s).expect("listed splits are valid");
                        SplitReport { split: s.to_string(), inverse: back.to_string(), result: graph_report(h) }
                    })
                    .collect();
                json(&list)
            } else {
                preds
                    .iter()
                    .map(|(s, h)| format!("# {s}\n{}", write_planar_code(h)))
                    .collect()
            }
        }
    };
    emit(&text, out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_recombine(
    first: &Path,
    v1: usize,
    second: &Path,
    v2: usize,
    choice: GluingChoice,
    mode: Mode,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    no_svg(format)?;
    let g1 = load_one(first)?;
    let g2 = load_one(second)?;
    let cat = catalogue(mode).ok_or_else(|| {
        CliError::Usage("recombine needs --mode basic-polyhedra or prime-projections".into())
    })?;
    let h = recombine_in(cat, &g1, v1, &g2, v2, choice)?;
    let text = match format {
        Format::Json => json(&graph_report(&h)),
        _ => write_planar_code(&h),
    };
    emit(&text, out)
}

fn svg_targets(out: Option<&Path>, n: usize) -> Result<Vec<Option<PathBuf>>, CliError> {
    match out {
        None => Ok(vec![None; n]),
        Some(p) if n == 1 && !p.is_dir() => Ok(vec![Some(p.to_path_buf())]),
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            Ok((0..n).map(|i| Some(dir.join(format!("graph{i:04}.svg")))).collect())
        }
    }
}

fn render(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let maps = load_maps(input)?;
    let targets = svg_targets(out, maps.len())?;
    for (i, (g, target)) in maps.iter().zip(targets).enumerate() {
        let l = layout(g);
        let crossings = crossing_count(&l);
        if crossings > 0 {
            eprintln!("atoro: warning: drawing of graph {i} has {crossings} edge crossings");
        }
        let title = code_of(g).map_or_else(|| format!("graph {i}"), |c| format!("graph {i} {c}"));
        emit(&to_svg(&l, &title), target.as_deref())?;
    }
    Ok(())
}

