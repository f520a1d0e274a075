//! Pipeline orchestration: validate, construct the lift, build the
//! braiding, verify everything, and emit the requested artifacts.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde_json::{Map, Value};

use rlift::braiding::{braiding_from_lift, check_braiding_axioms, wx_second_order};
use rlift::liftengine::{check_lift_axioms, construct_lift_with, qt_defect, LiftOptions};
use rlift::{AxiomReport, Bialgebra, Context, EngineError};

use crate::output::{audit_to_json, element_to_json, operator_to_json, report_to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AXIOM: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Emit {
    Lift,
    Braiding,
    Report,
    Audit,
}

impl Emit {
    pub fn parse(s: &str) -> Result<Emit, String> {
        match s {
            "lift" => Ok(Emit::Lift),
            "braiding" => Ok(Emit::Braiding),
            "report" => Ok(Emit::Report),
            "audit" => Ok(Emit::Audit),
            other => Err(format!(
                "unknown emit target {other:?} (expected lift, braiding, report or audit)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub input_path: PathBuf,
    pub degree: usize,
    pub emit: BTreeSet<Emit>,
    pub skip_validation: bool,
    pub out: Option<PathBuf>,
    pub seed_check: Option<u64>,
}

impl JobConfig {
    pub fn new(input_path: PathBuf) -> Self {
        Self {
            input_path,
            degree: 4,
            emit: [Emit::Lift, Emit::Report].into_iter().collect(),
            skip_validation: false,
            out: None,
            seed_check: None,
        }
    }
}

pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
}

fn engine_error_exit(e: &EngineError) -> i32 {
    match e {
        EngineError::Shape(_) => EXIT_INPUT,
        EngineError::Validation(_) | EngineError::StarOperand(_) | EngineError::ExpShift => {
            EXIT_AXIOM
        }
        EngineError::CochainDegree(_)
        | EngineError::CocycleCondition(_)
        | EngineError::InconsistentSystem
        | EngineError::CrossCheck(_)
        | EngineError::Invariant(_) => EXIT_INTERNAL,
    }
}

fn error_document(stage: &str, message: &str, report: Option<&AxiomReport>) -> Value {
    let mut doc = Map::new();
    let mut err = Map::new();
    err.insert("stage".into(), Value::from(stage));
    err.insert("message".into(), Value::from(message));
    doc.insert("error".into(), Value::Object(err));
    if let Some(rep) = report {
        doc.insert("report".into(), report_to_json(rep));
    }
    Value::Object(doc)
}

/// Execute the pipeline on a parsed input. Every stage failure produces a
/// structured document naming the failing axiom or residual, plus the
/// appropriate exit code.
pub fn run(config: &JobConfig, bialgebra: Bialgebra) -> Outcome {
    let mut report = AxiomReport::new();

    if !config.skip_validation {
        let gate = bialgebra.validate();
        report.extend_from(gate.report());
        if !report.pass() {
            return Outcome {
                exit_code: EXIT_AXIOM,
                document: error_document(
                    "validation",
                    "input fails the quasitriangular bialgebra gate",
                    Some(&report),
                ),
            };
        }
    }

    let ctx = match Context::build(bialgebra, config.degree) {
        Ok(ctx) => ctx,
        Err(e) => {
            return Outcome {
                exit_code: engine_error_exit(&e),
                document: error_document("context", &e.to_string(), Some(&report)),
            }
        }
    };

    let lift = match construct_lift_with(
        &ctx,
        &LiftOptions {
            keep_trail: config.emit.contains(&Emit::Audit),
            ..LiftOptions::default()
        },
    ) {
        Ok(lift) => lift,
        Err(e) => {
            return Outcome {
                exit_code: engine_error_exit(&e),
                document: error_document("construct_lift", &e.to_string(), Some(&report)),
            }
        }
    };

    report.extend_from(check_lift_axioms(&ctx, &lift.rho));
    match qt_defect(&ctx, &lift.rho) {
        Ok(psi) => report.push("lift.qt_defect", psi.len()),
        Err(_) => report.push_flag("lift.qt_defect", false),
    }

    let braiding = if report.pass() {
        match braiding_from_lift(&ctx, &lift.rho) {
            Ok(b) => {
                report.extend_from(check_braiding_axioms(&ctx, &b));
                // second-order agreement with the dressing expansion
                let wx = wx_second_order(ctx.bialgebra());
                let d = ctx.dim();
                let mut mismatches = 0usize;
                for p in 0..d {
                    for q in 0..d {
                        if b.mixed_block(p, q) != *wx.pair(p, q) {
                            mismatches += 1;
                        }
                    }
                }
                report.push("braiding.wx_second_order_agreement", mismatches);
                Some(b)
            }
            Err(e) => {
                return Outcome {
                    exit_code: engine_error_exit(&e),
                    document: error_document("braiding", &e.to_string(), Some(&report)),
                }
            }
        }
    } else {
        None
    };

    if let Some(seed) = config.seed_check {
        match construct_lift_with(
            &ctx,
            &LiftOptions {
                keep_trail: false,
                perturb_seed: Some(seed),
                pivot_seed: Some(seed.rotate_left(17)),
            },
        ) {
            Ok(alt) => report.push(
                "uniqueness.section_perturbation",
                alt.rho.sub(&lift.rho).len(),
            ),
            Err(e) => {
                return Outcome {
                    exit_code: engine_error_exit(&e),
                    document: error_document("seed_check", &e.to_string(), Some(&report)),
                }
            }
        }
    }

    let mut doc = Map::new();
    let mut meta = Map::new();
    meta.insert("dim".into(), Value::from(ctx.dim() as u64));
    meta.insert("degree".into(), Value::from(ctx.cap() as u64));
    meta.insert(
        "basis".into(),
        Value::Array(
            ctx.bialgebra()
                .basis_names
                .iter()
                .map(|s| Value::from(s.clone()))
                .collect(),
        ),
    );
    doc.insert("meta".into(), Value::Object(meta));
    if config.emit.contains(&Emit::Lift) {
        doc.insert("lift".into(), element_to_json(&lift.rho));
    }
    if config.emit.contains(&Emit::Braiding) {
        if let Some(b) = &braiding {
            doc.insert(
                "braiding".into(),
                operator_to_json(b.operator(), &ctx.basis(2)),
            );
        }
    }
    if config.emit.contains(&Emit::Report) {
        doc.insert("report".into(), report_to_json(&report));
    }
    if config.emit.contains(&Emit::Audit) {
        doc.insert("audit".into(), audit_to_json(&lift.trail));
    }

    Outcome {
        exit_code: if report.pass() { EXIT_OK } else { EXIT_AXIOM },
        document: Value::Object(doc),
    }
}
