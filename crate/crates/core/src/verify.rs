//! Small-dimension cross-checks: structured bases against their closed-form
//! counts and against the completion oracle, and multi-seed augmentation
//! from every feasible point against brute force.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graver::{build_basis, counts, hilbert_basis_cycles, predicted_cardinality, realize_matrix, BasisOptions};
use crate::graver::{ConstraintKind, GraverBasis};
use crate::oracle::{brute_force_solve, enumerate_feasible, pottier_graver, PottierBudget};
use crate::problems::{generate_instance, GeneratorConfig, ProblemClass};
use crate::solver::{is_locally_optimal, solve_from_seeds, NumericMode, SolverConfig};

/// Supplies the basis under test for a constraint kind.
pub type BasisProvider<'a> = &'a dyn Fn(&ConstraintKind) -> Result<GraverBasis>;

/// The production basis builder with default options.
pub fn structured_basis(kind: &ConstraintKind) -> Result<GraverBasis> {
    build_basis(kind, &BasisOptions::default())
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest flat dimension `n·k` checked against the oracles.
    pub max_dim: usize,
    /// Random instances per class and shape in the exhaustive-seed check.
    pub instances: usize,
    pub rng_seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_dim: 12,
            instances: 3,
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Formula,
    Oracle,
    Exhaustive,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Formula => "formula",
            Self::Oracle => "oracle",
            Self::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub subject: String,
    pub n: usize,
    pub k: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    /// One line per check followed by a per-kind tally.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<11} {:<24} {:>3} {:>3}  {:<6} {}\n",
            "check", "subject", "n", "k", "result", "detail"
        );
        for o in &self.outcomes {
            let status = if o.passed { "ok" } else { "FAIL" };
            out += &format!(
                "{:<11} {:<24} {:>3} {:>3}  {:<6} {}\n",
                o.check, o.subject, o.n, o.k, status, o.detail
            );
        }
        for check in [CheckKind::Formula, CheckKind::Oracle, CheckKind::Exhaustive] {
            let (total, ok) = self
                .outcomes
                .iter()
                .filter(|o| o.check == check)
                .fold((0, 0), |(t, p), o| (t + 1, p + usize::from(o.passed)));
            out += &format!("{check}: {ok}/{total} passed\n");
        }
        out
    }
}

fn kind_name(kind: &ConstraintKind) -> &'static str {
    match kind {
        ConstraintKind::Cardinality { .. } => "cardinality",
        ConstraintKind::BrickCardinality { .. } => "brick_cardinality",
        ConstraintKind::CoordinateCardinality { .. } => "coordinate_cardinality",
        ConstraintKind::Assignment { .. } => "assignment",
        ConstraintKind::Explicit { .. } => "explicit",
    }
}

fn structured_kinds(n: usize, k: usize) -> Vec<ConstraintKind> {
    let mut kinds = Vec::new();
    if k == 1 {
        kinds.push(ConstraintKind::Cardinality { n });
    }
    kinds.extend([
        ConstraintKind::BrickCardinality { n, k },
        ConstraintKind::CoordinateCardinality { n, k },
        ConstraintKind::Assignment { n, k },
    ]);
    kinds
}

fn outcome(
    check: CheckKind,
    subject: impl Into<String>,
    n: usize,
    k: usize,
    r: Result<(bool, String)>,
) -> CheckOutcome {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome {
        check,
        subject: subject.into(),
        n,
        k,
        passed,
        detail,
    }
}

/// Closed-form counts against enumerated bases for `2 ≤ n, k ≤ 6`. With
/// `max_dim < 12` only shapes with `n·k ≤ max_dim` are kept.
pub fn formula_checks(max_dim: usize, provider: BasisProvider) -> Vec<CheckOutcome> {
    let keep = |n: usize, k: usize| max_dim >= 12 || n * k <= max_dim;
    let mut out = Vec::new();
    for k in (2..=6).filter(|&k| keep(1, k)) {
        out.push(outcome(
            CheckKind::Formula,
            "hilbert_cycles",
            1,
            k,
            (|| {
                let got = hilbert_basis_cycles(k)?.len() as u128;
                let want = counts::hilbert_cycles_count(k).unwrap_or(0);
                Ok((got == want, format!("{got} enumerated, {want} predicted")))
            })(),
        ));
    }
    let mut kinds: Vec<ConstraintKind> = (2..=6)
        .filter(|&n| keep(n, 1))
        .map(|n| ConstraintKind::Cardinality { n })
        .collect();
    for n in 2..=6 {
        for k in (2..=6).filter(|&k| keep(n, k)) {
            kinds.extend(structured_kinds(n, k));
        }
    }
    for kind in kinds {
        let (n, k) = kind.shape().unwrap_or((kind.dim(), 1));
        out.push(outcome(
            CheckKind::Formula,
            kind_name(&kind),
            n,
            k,
            (|| {
                let got = provider(&kind)?.len() as u128;
                let want = predicted_cardinality(&kind).unwrap_or(0);
                Ok((got == want, format!("{got} enumerated, {want} predicted")))
            })(),
        ));
    }
    out
}

/// Structured basis against the completion oracle on the realized matrix,
/// as sets of sign-canonical vectors, for every shape with `n·k ≤ max_dim`.
pub fn oracle_checks(max_dim: usize, provider: BasisProvider) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for n in 1..=max_dim {
        for k in 1..=max_dim / n {
            for kind in structured_kinds(n, k) {
                let (nn, kk) = kind.shape().unwrap_or((kind.dim(), 1));
                out.push(outcome(
                    CheckKind::Oracle,
                    kind_name(&kind),
                    nn,
                    kk,
                    (|| {
                        let ours = provider(&kind)?.to_set();
                        let reference = pottier_graver(&realize_matrix(&kind)?, &PottierBudget::default())?.to_set();
                        let missing = reference.difference(&ours).count();
                        let extra = ours.difference(&reference).count();
                        Ok((
                            missing == 0 && extra == 0,
                            format!("{} elements, {missing} missing, {extra} extra", reference.len()),
                        ))
                    })(),
                ));
            }
        }
    }
    out
}

fn exhaustive_shapes(class: ProblemClass, max_dim: usize) -> Vec<(usize, usize)> {
    let shapes: &[(usize, usize)] = match class {
        ProblemClass::Cbqp => &[(4, 1), (8, 1), (12, 1)],
        _ => &[(2, 2), (3, 2), (3, 3), (4, 3)],
    };
    shapes.iter().copied().filter(|&(n, k)| n * k <= max_dim).collect()
}

/// Augments every feasible point of random nonconvex instances and compares
/// the result with brute force: same optimum, same set of optimal points,
/// and every terminal locally optimal.
pub fn exhaustive_checks(options: &VerifyOptions, provider: BasisProvider) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.rng_seed);
    let config = SolverConfig {
        mode: NumericMode::Exact,
        ..Default::default()
    };
    let mut out = Vec::new();
    for class in ProblemClass::STRUCTURED {
        for (n, k) in exhaustive_shapes(class, options.max_dim) {
            let mut result = Ok((true, String::new()));
            let mut solved = 0;
            for _ in 0..options.instances {
                let step = (|| -> Result<Option<String>> {
                    let inst = generate_instance(&mut rng, class, n, k, &GeneratorConfig::default())?;
                    let basis = provider(inst.kind())?;
                    let brute = brute_force_solve(&inst)?;
                    let seeds = enumerate_feasible(&inst)?;
                    let report = solve_from_seeds(&inst, &basis, &seeds, &config)?;
                    if report.best.terminal_f != brute.best_f {
                        return Ok(Some(format!(
                            "best {} vs brute force {}",
                            report.best.terminal_f, brute.best_f
                        )));
                    }
                    let ours: BTreeSet<_> = report.best_solutions.iter().cloned().collect();
                    let theirs: BTreeSet<_> = brute.optima.iter().cloned().collect();
                    if ours != theirs {
                        return Ok(Some(format!("{} optima reported, {} exist", ours.len(), theirs.len())));
                    }
                    for r in &report.all_terminals {
                        if !is_locally_optimal(&inst, &basis, &r.terminal_x)? {
                            return Ok(Some(format!("seed {} stopped at an improvable point", r.seed_index)));
                        }
                    }
                    Ok(None)
                })();
                match step {
                    Ok(None) => solved += 1,
                    Ok(Some(why)) => {
                        result = Ok((false, why));
                        break;
                    }
                    Err(e) => {
                        result = Err(e);
                        break;
                    }
                }
            }
            if let Ok((true, detail)) = &mut result {
                *detail = format!("{solved} instances match brute force");
            }
            out.push(outcome(CheckKind::Exhaustive, class.name(), n, k, result));
        }
    }
    out
}

/// Runs every check family against `provider`.
pub fn run_verification(options: &VerifyOptions, provider: BasisProvider) -> VerifyReport {
    let mut outcomes = formula_checks(options.max_dim, provider);
    outcomes.extend(oracle_checks(options.max_dim, provider));
    outcomes.extend(exhaustive_checks(options, provider));
    VerifyReport { outcomes }
}
