//! End-to-end runs behind the command-line tool, and their JSON reports.

use serde::Serialize;
use thiserror::Error;

use crate::ccc::{curry, eval_map, exponential, lawvere_survey, FinMap, FinSetObj, LawvereSurvey, SURVEY_LIMIT};
use crate::henkin::lindenbaum::no_model_error;
use crate::henkin::{
    build_term_model, extend_translation, henkin_expand, lindenbaum_complete, lindenbaum_complete_guided, map_term_model, CompletedTheory,
    CompletionError, HenkinExpansion, OpTable, PredTable, TermModel, TermModelMapError,
};
use crate::modelfind::{check_model, find_model, induced_hom, pullback, FiniteModel, InducedHomError, ModelCheck, ModelError, ModelHom};
use crate::nattrans::{
    build_eta, check_canonical_representation, check_homomorphism, check_inverse_homomorphism, check_lawvere_square, check_naturality,
    exit_code, invert_eta, CheckReport, EtaComponent, EtaError, InversionError,
};
use crate::syntax::Theory;
use crate::translation::{ObligationFailure, TheoryTranslation};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::Args)]
pub struct PipelineConfig {
    /// Depth of the ground terms making up the term model.
    #[arg(long, default_value_t = 3)]
    pub term_depth: usize,
    #[arg(long, default_value_t = 1)]
    pub henkin_rounds: usize,
    /// Node budget for existential sentences considered for witnesses.
    #[arg(long, default_value_t = 7)]
    pub formula_budget: usize,
    /// Node budget for sentences decided by completion; 0 disables it.
    #[arg(long, default_value_t = 7)]
    pub sentence_budget: usize,
    /// Tableau step budget per proof attempt.
    #[arg(long, default_value_t = 2000)]
    pub proof_budget: usize,
    #[arg(long, default_value_t = 4, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub max_model_size: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            term_depth: 3,
            henkin_rounds: 1,
            formula_budget: 7,
            sentence_budget: 7,
            proof_budget: 2000,
            max_model_size: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("out of desk scale: no model of size at most {max_model_size}")]
    OutOfDeskScale { max_model_size: usize },
    #[error("inconsistent: the tableau refutes the axioms")]
    Inconsistent,
    #[error(transparent)]
    Completion(CompletionError),
    #[error(transparent)]
    Eta(#[from] EtaError),
}

impl From<CompletionError> for PipelineError {
    fn from(e: CompletionError) -> Self {
        match e {
            CompletionError::Inconsistent => PipelineError::Inconsistent,
            CompletionError::OutOfDeskScale { max_model_size } => PipelineError::OutOfDeskScale { max_model_size },
            other => PipelineError::Completion(other),
        }
    }
}

/// Everything built for one theory.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub completed: CompletedTheory,
    pub term_model: TermModel,
    pub model: FiniteModel,
    pub eta: EtaComponent,
    pub inverse: Result<Vec<usize>, InversionError>,
    pub checks: Vec<CheckReport>,
}

impl PipelineRun {
    pub fn expansion(&self) -> &HenkinExpansion {
        &self.completed.expansion
    }
}

/// Fails fast when the base theory has no model within the bound.
fn require_small_model(t: &Theory, cfg: &PipelineConfig) -> Result<(), PipelineError> {
    match find_model(t, cfg.max_model_size) {
        Ok(_) => Ok(()),
        Err(_) => Err(no_model_error(t, cfg.max_model_size, cfg.proof_budget).into()),
    }
}

pub fn run_pipeline(t: &Theory, cfg: &PipelineConfig) -> Result<PipelineRun, PipelineError> {
    require_small_model(t, cfg)?;
    let e = henkin_expand(t, cfg.henkin_rounds, cfg.formula_budget, cfg.proof_budget, cfg.max_model_size);
    let c = lindenbaum_complete(&e, cfg.sentence_budget, cfg.max_model_size, cfg.proof_budget)?;
    finish(c, cfg)
}

/// Term model, canonical model, and every check on the comparison map.
fn finish(completed: CompletedTheory, cfg: &PipelineConfig) -> Result<PipelineRun, PipelineError> {
    let term_model = build_term_model(&completed, cfg.term_depth);
    let model = completed.witness_model.clone();
    let eta = build_eta(&term_model, &model)?;
    let inverse = invert_eta(&eta);
    let mut checks = vec![model_check(&model, &completed.theory()), eta.well_defined.clone()];
    checks.push(check_homomorphism(&eta));
    checks.push(check_canonical_representation(&term_model, &model));
    checks.push(match &inverse {
        Ok(_) => CheckReport::from_witnesses("invertibility", Vec::new(), 1.0),
        Err(err) => CheckReport::from_witnesses("invertibility", err.witnesses(), 1.0),
    });
    checks.push(match &inverse {
        Ok(inv) => check_inverse_homomorphism(&eta, inv),
        Err(_) => CheckReport::skipped("inverse_homomorphism", "no inverse"),
    });
    checks.push(check_lawvere_square(&term_model, &model, &eta));
    Ok(PipelineRun {
        completed,
        term_model,
        model,
        eta,
        inverse,
        checks,
    })
}

fn model_check(m: &FiniteModel, t: &Theory) -> CheckReport {
    let witnesses = match check_model(m, t) {
        Ok(ModelCheck::Pass) => Vec::new(),
        Ok(ModelCheck::Counterexample(c)) => {
            let mut w = vec![c.axiom];
            w.extend(c.assignment.iter().map(|(v, x)| format!("{v}={x}")));
            vec![w]
        }
        Err(e) => vec![vec![e.to_string()]],
    };
    CheckReport::from_witnesses("model", witnesses, 1.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NaturalityError {
    #[error("{side} theory: {error}")]
    Pipeline { side: &'static str, error: PipelineError },
    #[error("obligation fails: {} translates to {} ({})", .0.axiom, .0.translated, .0.verdict)]
    Obligation(ObligationFailure),
    #[error(transparent)]
    TermModelMap(#[from] TermModelMapError),
    #[error("target model does not pull back: {0}")]
    Pullback(ModelError),
    #[error(transparent)]
    InducedHom(#[from] InducedHomError),
}

#[derive(Clone, Debug)]
pub struct NaturalityRun {
    pub source: PipelineRun,
    pub target: PipelineRun,
    /// `phi` extended to the source's witness constants.
    pub extended: TheoryTranslation,
    pub f_map: Vec<usize>,
    pub g_map: ModelHom,
    pub square: CheckReport,
}

/// Runs the target pipeline, then completes the source along the target's
/// canonical model pulled back through `phi`, so that both sides decide the
/// translated sentences alike. Checks the square on the results.
pub fn run_naturality(phi: &TheoryTranslation, cfg: &PipelineConfig) -> Result<NaturalityRun, NaturalityError> {
    let target = run_pipeline(&phi.target, cfg).map_err(|error| NaturalityError::Pipeline { side: "target", error })?;
    phi.discharge_obligations(cfg.proof_budget).map_err(NaturalityError::Obligation)?;
    let e = henkin_expand(&phi.source, cfg.henkin_rounds, cfg.formula_budget, cfg.proof_budget, cfg.max_model_size);
    let extended = extend_translation(phi, &e, target.expansion())?;
    let guide = pullback(&target.model, &extended).map_err(NaturalityError::Pullback)?;
    let source_side = |error: PipelineError| NaturalityError::Pipeline { side: "source", error };
    let completed = lindenbaum_complete_guided(&e, cfg.sentence_budget, &guide).map_err(|e| source_side(e.into()))?;
    let source = finish(completed, cfg).map_err(source_side)?;
    let f_map = map_term_model(phi, &source.term_model, &target.term_model, cfg.proof_budget)?;
    let g_map = induced_hom(&extended, &source.model, &target.model, source.term_model.universe())?;
    let square = check_naturality(phi, &source.eta, &target.eta, &f_map, &g_map);
    Ok(NaturalityRun {
        source,
        target,
        extended,
        f_map,
        g_map,
        square,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSummary {
    pub sentence: String,
    pub constant: String,
    pub fresh: bool,
    pub round: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub members: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermModelSummary {
    pub depth: usize,
    pub universe_size: usize,
    pub saturation_complete: bool,
    pub op_coverage: f64,
    pub classes: Vec<ClassSummary>,
    pub op_tables: Vec<OpTable>,
    pub pred_tables: Vec<PredTable>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub witnesses: Vec<WitnessSummary>,
    pub decided: usize,
    pub decided_positive: usize,
    pub residual_unknowns: Vec<String>,
    pub term_model: TermModelSummary,
    pub canonical_model: FiniteModel,
    pub eta: Vec<usize>,
    pub eta_inverse: Option<Vec<usize>>,
}

impl RunSummary {
    pub fn new(run: &PipelineRun) -> RunSummary {
        let tm = &run.term_model;
        RunSummary {
            witnesses: run
                .expansion()
                .witnesses
                .iter()
                .map(|w| WitnessSummary {
                    sentence: w.sentence.to_string(),
                    constant: w.constant.clone(),
                    fresh: w.fresh,
                    round: w.round,
                })
                .collect(),
            decided: run.completed.decided.len(),
            decided_positive: run.completed.positive_count(),
            residual_unknowns: run.completed.residual_unknowns.iter().map(|s| s.to_string()).collect(),
            term_model: TermModelSummary {
                depth: tm.term_depth,
                universe_size: tm.universe().len(),
                saturation_complete: tm.saturation_complete,
                op_coverage: tm.op_coverage(),
                classes: tm
                    .partition
                    .classes()
                    .iter()
                    .enumerate()
                    .map(|(c, members)| ClassSummary {
                        representative: tm.representative(c).to_string(),
                        members: members.len(),
                    })
                    .collect(),
                op_tables: tm.op_tables.clone(),
                pred_tables: tm.pred_tables.clone(),
            },
            canonical_model: run.model.clone(),
            eta: run.eta.map.clone(),
            eta_inverse: run.inverse.as_ref().ok().cloned(),
        }
    }
}

fn status_of(code: i32) -> &'static str {
    match code {
        0 => "pass",
        2 => "fail",
        _ => "skipped",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub schema: u32,
    pub command: &'static str,
    pub theory: String,
    pub config: PipelineConfig,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<RunSummary>,
    pub checks: Vec<CheckReport>,
    #[serde(skip)]
    pub exit_code: i32,
}

pub fn cmd_pipeline(t: &Theory, cfg: &PipelineConfig) -> PipelineReport {
    let mut report = PipelineReport {
        schema: SCHEMA,
        command: "pipeline",
        theory: t.name.clone(),
        config: *cfg,
        status: String::new(),
        detail: None,
        run: None,
        checks: Vec::new(),
        exit_code: 0,
    };
    match run_pipeline(t, cfg) {
        Ok(run) => {
            report.exit_code = exit_code(&run.checks);
            report.status = status_of(report.exit_code).into();
            report.run = Some(RunSummary::new(&run));
            report.checks = run.checks;
        }
        Err(e) => {
            let (status, code) = match &e {
                PipelineError::OutOfDeskScale { .. } => ("out of desk scale", 3),
                PipelineError::Inconsistent => ("inconsistent", 2),
                _ => ("error", 2),
            };
            report.status = status.into();
            report.exit_code = code;
            report.detail = Some(e.to_string());
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NaturalityReport {
    pub schema: u32,
    pub command: &'static str,
    pub translation: String,
    pub source: String,
    pub target: String,
    pub config: PipelineConfig,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_run: Option<RunSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_run: Option<RunSummary>,
    /// `F(phi)` on classes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_map: Option<Vec<usize>>,
    /// `G(phi)` on elements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_map: Option<Vec<usize>>,
    pub checks: Vec<CheckReport>,
    #[serde(skip)]
    pub exit_code: i32,
}

pub fn cmd_naturality(phi: &TheoryTranslation, cfg: &PipelineConfig) -> NaturalityReport {
    let mut report = NaturalityReport {
        schema: SCHEMA,
        command: "naturality",
        translation: phi.name.clone(),
        source: phi.source.name.clone(),
        target: phi.target.name.clone(),
        config: *cfg,
        status: String::new(),
        detail: None,
        source_run: None,
        target_run: None,
        f_map: None,
        g_map: None,
        checks: Vec::new(),
        exit_code: 0,
    };
    match run_naturality(phi, cfg) {
        Ok(run) => {
            report.checks = vec![run.square];
            report.exit_code = exit_code(&report.checks);
            report.status = status_of(report.exit_code).into();
            report.source_run = Some(RunSummary::new(&run.source));
            report.target_run = Some(RunSummary::new(&run.target));
            report.f_map = Some(run.f_map);
            report.g_map = Some(run.g_map.map);
        }
        Err(e) => {
            let (status, code) = match &e {
                NaturalityError::Pipeline {
                    error: PipelineError::OutOfDeskScale { .. },
                    ..
                } => ("out of desk scale", 3),
                NaturalityError::Obligation(_) => ("obligation failure", 2),
                _ => ("fail", 2),
            };
            report.status = status.into();
            report.exit_code = code;
            report.detail = Some(e.to_string());
        }
    }
    report
}

/// Largest object size accepted by `cmd_lawvere`.
pub const LAWVERE_SIZE_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("sizes {x} and {y} exceed the cap of {LAWVERE_SIZE_CAP}")]
pub struct SizeCapError {
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawvereReport {
    pub schema: u32,
    pub command: &'static str,
    pub status: String,
    pub survey: LawvereSurvey,
    pub checks: Vec<CheckReport>,
    #[serde(skip)]
    pub exit_code: i32,
}

/// Currying against evaluation for every `g: x * x -> y` (up to
/// `SURVEY_LIMIT`), then the fixed-point survey.
pub fn cmd_lawvere(x: usize, y: usize) -> Result<LawvereReport, SizeCapError> {
    if x > LAWVERE_SIZE_CAP || y > LAWVERE_SIZE_CAP {
        return Err(SizeCapError { x, y });
    }
    let (xo, yo) = (FinSetObj::new(x), FinSetObj::new(y));
    let ev = eval_map(xo, yo);
    let mut witnesses = Vec::new();
    let total = exponential(xo.product(xo), yo).size;
    let checked = total.min(SURVEY_LIMIT);
    for g in FinMap::all(xo.product(xo), yo).take(checked) {
        let transpose = curry(&g, xo, xo).expect("shapes agree");
        let round_trip = transpose.times(&FinMap::identity(xo)).then(&ev).expect("shapes agree");
        if round_trip != g {
            witnesses.push(vec![format!("{:?}", g.table), format!("{:?}", round_trip.table)]);
        }
    }
    let universal = CheckReport::from_witnesses("universal_property", witnesses, checked as f64 / total.max(1) as f64);
    let survey = lawvere_survey(xo, yo);
    let coverage = if survey.exhaustive { 1.0 } else { 0.0 };
    let cantor = if y >= 2 {
        let w = if survey.point_surjective > 0 {
            vec![vec![format!("{} point-surjective maps", survey.point_surjective)]]
        } else {
            Vec::new()
        };
        CheckReport::from_witnesses("cantor", w, coverage)
    } else {
        CheckReport::skipped("cantor", "fewer than two truth values")
    };
    let expected = survey.point_surjective * y.pow(y as u32);
    let fixed = CheckReport::from_witnesses(
        "fixed_points",
        if survey.fixed_points_verified == expected {
            Vec::new()
        } else {
            vec![vec![survey.fixed_points_verified.to_string(), expected.to_string()]]
        },
        coverage,
    );
    let checks = vec![universal, cantor, fixed];
    let code = match exit_code(&checks) {
        3 => 0,
        c => c,
    };
    Ok(LawvereReport {
        schema: SCHEMA,
        command: "lawvere",
        status: status_of(code).into(),
        survey,
        checks,
        exit_code: code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z2_pipeline_passes() {
        let r = cmd_pipeline(&fixtures::z2(), &PipelineConfig::default());
        assert_eq!(r.status, "pass", "{:?}", r.checks);
        let run = r.run.unwrap();
        assert_eq!(run.term_model.classes.len(), 2);
        assert_eq!(run.canonical_model.size, 2);
        assert_eq!(run.eta_inverse, Some(vec![0, 1]));
    }

    #[test]
    fn zf_stub_is_out_of_desk_scale() {
        let r = cmd_pipeline(&fixtures::zf_stub(), &PipelineConfig::default());
        assert_eq!(r.status, "out of desk scale");
        assert_eq!(r.exit_code, 3);
        assert!(r.run.is_none());
    }

    #[test]
    fn contradiction_is_inconsistent() {
        let t = crate::parse::parse_theory("theory Bad\nconst c\naxiom ~(c = c)\n").unwrap();
        let r = cmd_pipeline(&t, &PipelineConfig::default());
        assert_eq!((r.status.as_str(), r.exit_code), ("inconsistent", 2));
    }

    #[test]
    fn broken_translation_reports_its_obligation() {
        let r = cmd_naturality(&fixtures::z2_to_monoid(), &PipelineConfig::default());
        assert_eq!(r.status, "obligation failure");
        assert!(r.detail.unwrap().contains("mul(a,a) = e"));
    }

    #[test]
    fn lawvere_cap_and_small_cases() {
        assert_eq!(cmd_lawvere(9, 9), Err(SizeCapError { x: 9, y: 9 }));
        let r = cmd_lawvere(1, 1).unwrap();
        assert_eq!(r.survey.point_surjective, 1);
        assert_eq!(r.exit_code, 0);
        let r = cmd_lawvere(2, 2).unwrap();
        assert_eq!(r.survey.point_surjective, 0);
        assert!(r.survey.cantor_witness.is_some());
        assert_eq!(r.exit_code, 0);
    }
}
