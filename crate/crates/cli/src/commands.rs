use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::time::Instant;

use metdim::edgelist::{parse_edge_list, write_edge_list, EdgeListError};
use metdim::exact::ExactError;
use metdim::families::{
    self, formula_dimension, generate, parse_family_spec, table_conflicts, table_deviations, witness_set, Family,
    FamilyError, TableReading, TheoremKind,
};
use metdim::ilp::{self, ModelError, ModelKind, SolveError};
use metdim::resolvers::{self, forced_pairs, strong_lower_bound};
use metdim::{exact_dimension, Graph, VariantKind, VertexSet};
use serde::Serialize;
use thiserror::Error;

use crate::report::{self, ClosedForm, DimReport, FamilyReport, SolveReport, TableCheck};
use crate::{DimArgs, FamilyArgs, Format, Method, ModelArgs, Source, VerifyArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    InputError = 1,
    Exhausted = 2,
    TheoremFailed = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    EdgeList { path: String, source: EdgeListError },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("format {0} is not available for this command")]
    Format(&'static str),
    #[error("no 0/1 model for the {0} variant (use local or fault-tolerant)")]
    NoModel(VariantKind),
    #[error("solvers disagree: exact {exact}, ilp {ilp}")]
    Mismatch { exact: usize, ilp: usize },
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Table => "table",
        Format::Lp => "lp",
        Format::Edges => "edges",
    }
}

fn load(source: &Source) -> Result<Graph, CliError> {
    if let Some(spec) = &source.family {
        let (family, n) = parse_family_spec(spec)?;
        return Ok(generate(family, n)?.graph().clone());
    }
    let path = source.input.as_ref().expect("clap requires one source");
    let shown = path.display().to_string();
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| CliError::Io { path: shown.clone(), source })?;
        buf
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?
    };
    let g = parse_edge_list(&text).map_err(|source| CliError::EdgeList { path: shown.clone(), source })?;
    let stem = path.file_stem().map_or("stdin".into(), |s| s.to_string_lossy().into_owned());
    Ok(g.with_name(if stem == "-" { "stdin".into() } else { stem }))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
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

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn model_for(g: &Graph, kind: ModelKind) -> Result<ilp::BinaryProgram, CliError> {
    let dm = g.distances();
    Ok(match kind {
        ModelKind::Ftmd => ilp::build_ftmd_model(g, dm)?,
        _ => ilp::build_lmd_model(g, dm)?,
    })
}

pub fn dim(args: DimArgs) -> Result<Status, CliError> {
    if matches!(args.format, Format::Lp | Format::Edges) {
        return Err(CliError::Format(format_name(args.format)));
    }
    let g = load(&args.source)?;
    let budget = args.budget.budget();
    let start = Instant::now();
    let kind = args.variant;
    let mut rep = DimReport {
        graph: g.name().to_owned(),
        n: g.n(),
        m: g.m(),
        variant: kind.to_string(),
        status: "optimal",
        method: match args.method {
            Method::Exact => "exact",
            Method::Ilp => "ilp",
            Method::Both => "both",
        },
        value: None,
        exact_value: None,
        ilp_value: None,
        witness: VertexSet::default(),
        witness_labels: Vec::new(),
        lower_bound: None,
        upper_bound: None,
        search: None,
        ilp_nodes: None,
        elapsed_ms: 0,
    };
    let mut status = Status::Ok;

    if matches!(args.method, Method::Exact | Method::Both) {
        match exact_dimension(&g, kind, &budget) {
            Ok(sol) => {
                rep.exact_value = Some(sol.value());
                rep.value = Some(sol.value());
                rep.search = Some(sol.stats);
                rep.witness = sol.certificate.set;
            }
            Err(ExactError::BudgetExhausted { lower, upper }) => {
                rep.status = "budget-exhausted";
                rep.lower_bound = Some(lower);
                rep.upper_bound = upper;
                status = Status::Exhausted;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if matches!(args.method, Method::Ilp | Method::Both) && status == Status::Ok {
        let model_kind = match kind {
            VariantKind::Local => ModelKind::Lmd,
            VariantKind::FaultTolerant => ModelKind::Ftmd,
            other => return Err(CliError::NoModel(other)),
        };
        let bp = model_for(&g, model_kind)?;
        match ilp::solve_binary_program(&bp, &budget) {
            Ok(sol) => {
                let value = sol.value as usize;
                rep.ilp_value = Some(value);
                rep.ilp_nodes = Some(sol.nodes);
                if rep.value.is_none() {
                    rep.value = Some(value);
                    rep.witness = bp.selected_vertices(&sol.assignment);
                }
            }
            Err(SolveError::BudgetExhausted { incumbent }) => {
                rep.status = "budget-exhausted";
                rep.upper_bound = incumbent.map(|s| s.value as usize);
                status = Status::Exhausted;
            }
            Err(e) => return Err(e.into()),
        }
    }
    rep.witness_labels = report::labels(&g, &rep.witness);
    rep.elapsed_ms = elapsed_ms(start);
    let text = match args.format {
        Format::Json => json(&rep),
        _ => rep.table(),
    };
    emit(&args.output, &text)?;
    if let (Some(exact), Some(ilp)) = (rep.exact_value, rep.ilp_value) {
        if exact != ilp {
            return Err(CliError::Mismatch { exact, ilp });
        }
    }
    Ok(status)
}

pub fn model(args: ModelArgs) -> Result<Status, CliError> {
    if !matches!(args.format, Format::Lp | Format::Json) {
        return Err(CliError::Format(format_name(args.format)));
    }
    let g = load(&args.source)?;
    let bp = model_for(&g, args.variant)?;
    let text = match args.format {
        Format::Json => json(&bp),
        _ => ilp::export_lp(&bp),
    };
    if !args.solve {
        emit(&args.output, &text)?;
        return Ok(Status::Ok);
    }
    if args.output.is_some() {
        emit(&args.output, &text)?;
    }
    let budget = args.budget.budget();
    let start = Instant::now();
    let sol = match ilp::solve_binary_program(&bp, &budget) {
        Ok(sol) => sol,
        Err(SolveError::BudgetExhausted { incumbent }) => {
            let bound = incumbent.map_or("none".into(), |s| s.value.to_string());
            eprintln!("budget exhausted; best value found: {bound}");
            return Ok(Status::Exhausted);
        }
        Err(e) => return Err(e.into()),
    };
    let set = bp.selected_vertices(&sol.assignment);
    let exact_value = if args.compare {
        let kind = match args.variant {
            ModelKind::Ftmd => VariantKind::FaultTolerant,
            _ => VariantKind::Local,
        };
        Some(exact_dimension(&g, kind, &budget)?.value())
    } else {
        None
    };
    let rep = SolveReport {
        graph: g.name().to_owned(),
        model: args.variant.to_string(),
        variables: bp.num_vars(),
        constraints: bp.num_constraints(),
        value: sol.value as usize,
        set_labels: report::labels(&g, &set),
        set,
        exact_value,
        ilp_nodes: sol.nodes,
        elapsed_ms: elapsed_ms(start),
    };
    print!(
        "{}",
        match args.format {
            Format::Json => json(&rep),
            _ => rep.table(),
        }
    );
    if let Some(exact) = exact_value {
        if exact != rep.value {
            return Err(CliError::Mismatch { exact, ilp: rep.value });
        }
    }
    Ok(Status::Ok)
}

fn closed_form(g: &Graph, family: Family, n: usize, kind: TheoremKind) -> Result<ClosedForm, CliError> {
    let witness = witness_set(family, n, kind)?;
    let witness_valid = resolvers::verify(g, kind.into(), &witness).is_ok_and(|c| c.is_valid());
    Ok(ClosedForm {
        formula: formula_dimension(family, n, kind),
        witness_labels: report::labels(g, &witness),
        witness,
        witness_valid,
    })
}

pub fn family(args: FamilyArgs) -> Result<Status, CliError> {
    let (family, n) = parse_family_spec(&args.family)?;
    let inst = generate(family, n)?;
    let g = inst.graph();
    if args.format == Format::Edges {
        emit(&args.output, &write_edge_list(g))?;
        return Ok(Status::Ok);
    }
    if args.format == Format::Lp {
        return Err(CliError::Format("lp"));
    }
    let tables = args.tables.then(|| {
        let literal = table_deviations(&inst, TableReading::Literal);
        let corrected = table_deviations(&inst, TableReading::Corrected);
        match (literal, corrected) {
            (Ok(literal), Ok(corrected)) => TableCheck {
                unavailable: None,
                literal_deviations: literal,
                corrected_deviations: corrected,
                conflicts: if family == Family::U && n % 2 == 0 {
                    table_conflicts(n).unwrap_or_default()
                } else {
                    Vec::new()
                },
            },
            (Err(e), _) | (_, Err(e)) => TableCheck {
                unavailable: Some(e.to_string()),
                literal_deviations: Vec::new(),
                corrected_deviations: Vec::new(),
                conflicts: Vec::new(),
            },
        }
    });
    let rep = FamilyReport {
        graph: g.name().to_owned(),
        vertices: g.n(),
        edges: g.m(),
        diameter: g.distances().diameter(),
        bipartite: g.is_bipartite(),
        local: closed_form(g, family, n, TheoremKind::Local)?,
        strong: closed_form(g, family, n, TheoremKind::Strong)?,
        strong_lower_bound: strong_lower_bound(&forced_pairs(g.distances(), g)),
        tables,
    };
    let text = match args.format {
        Format::Json => json(&rep),
        _ => rep.table(),
    };
    emit(&args.output, &text)?;
    Ok(Status::Ok)
}

pub fn verify(args: VerifyArgs) -> Result<Status, CliError> {
    if !matches!(args.format, Format::Json | Format::Table) {
        return Err(CliError::Format(format_name(args.format)));
    }
    let (a, b) = args.range;
    let rep = families::verify_theorem(args.family, args.variant, a..=b, &args.budget.budget())?;
    let family = args.family;
    let labels = |n: usize, set: &VertexSet| match generate(family, n) {
        Ok(inst) => format!("{{{}}}", report::labels(inst.graph(), set).join(", ")),
        Err(_) => set.to_string(),
    };
    let text = match args.format {
        Format::Json => json(&rep),
        _ => report::theorem_table(&rep, &labels),
    };
    emit(&args.output, &text)?;
    Ok(if rep.all_hold() { Status::Ok } else { Status::TheoremFailed })
}
