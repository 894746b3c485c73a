//! Solve reports, landscape classification and the results file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::augment::AugmentationResult;
use crate::problems::{Exact, Scalar};

/// Coarse shape of the objective landscape as seen from the seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LandscapeClass {
    /// Every seed terminated at the same value.
    ConvexLike,
    /// Few terminal values and most seeds reach the best one.
    EasyNonconvex,
    HardNonconvex,
}

impl LandscapeClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::ConvexLike => "convex-like",
            Self::EasyNonconvex => "easy-nonconvex",
            Self::HardNonconvex => "hard-nonconvex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeThresholds {
    /// Most distinct terminal values an easy landscape may have.
    pub max_distinct: usize,
    /// Least fraction of seeds that must reach the best value.
    pub min_best_share: f64,
}

impl Default for LandscapeThresholds {
    fn default() -> Self {
        Self {
            max_distinct: 5,
            min_best_share: 0.5,
        }
    }
}

/// Classifies a histogram of terminal values (value → seed count).
pub fn classify_histogram(histogram: &BTreeMap<Exact, usize>, thresholds: &LandscapeThresholds) -> LandscapeClass {
    let total: usize = histogram.values().sum();
    let best = histogram.values().next().copied().unwrap_or(0);
    if histogram.len() <= 1 {
        LandscapeClass::ConvexLike
    } else if histogram.len() <= thresholds.max_distinct && best as f64 >= thresholds.min_best_share * total as f64 {
        LandscapeClass::EasyNonconvex
    } else {
        LandscapeClass::HardNonconvex
    }
}

pub fn classify_landscape(report: &SolveReport, thresholds: &LandscapeThresholds) -> LandscapeClass {
    classify_histogram(&report.distinct_terminal_values, thresholds)
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub instance: String,
    /// The lowest-index seed among those reaching the best value.
    pub best: AugmentationResult,
    /// One entry per seed, ordered by seed index.
    pub all_terminals: Vec<AugmentationResult>,
    pub distinct_terminal_values: BTreeMap<Exact, usize>,
    pub landscape_class: LandscapeClass,
    /// Distinct points attaining the best value, in order of first seed.
    pub best_solutions: Vec<Vec<i64>>,
    pub basis_size: usize,
    pub basis_truncated: bool,
    pub sampler_assisted: bool,
}

impl SolveReport {
    pub(crate) fn assemble(
        instance: &str,
        all_terminals: Vec<AugmentationResult>,
        basis_size: usize,
        basis_truncated: bool,
        thresholds: &LandscapeThresholds,
    ) -> Option<Self> {
        let mut histogram = BTreeMap::new();
        for r in &all_terminals {
            *histogram.entry(r.terminal_f).or_insert(0) += 1;
        }
        let best_f = *histogram.keys().next()?;
        let best = all_terminals.iter().find(|r| r.terminal_f == best_f)?.clone();
        let mut best_solutions: Vec<Vec<i64>> = Vec::new();
        for r in all_terminals.iter().filter(|r| r.terminal_f == best_f) {
            if !best_solutions.contains(&r.terminal_x) {
                best_solutions.push(r.terminal_x.clone());
            }
        }
        Some(Self {
            instance: instance.to_string(),
            best,
            sampler_assisted: all_terminals.iter().any(|r| r.sampler_assisted),
            landscape_class: classify_histogram(&histogram, thresholds),
            distinct_terminal_values: histogram,
            best_solutions,
            all_terminals,
            basis_size,
            basis_truncated,
        })
    }

    pub fn seed_count(&self) -> usize {
        self.all_terminals.len()
    }

    pub fn best_share(&self) -> f64 {
        let at_best = self.distinct_terminal_values.values().next().copied().unwrap_or(0);
        at_best as f64 / self.seed_count().max(1) as f64
    }
}

/// Formats exact values as `p` or `p/q`.
pub fn format_exact(v: &Exact) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) mod exact_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Exact, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_exact(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exact, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Exact>().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminalValueCount {
    #[serde(with = "exact_serde")]
    pub value: Exact,
    pub value_f64: f64,
    pub count: usize,
}

/// Per-instance results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsFile {
    pub name: String,
    #[serde(with = "exact_serde")]
    pub best_objective: Exact,
    pub best_objective_f64: f64,
    pub best_x: Vec<i64>,
    pub degenerate_optima: Vec<Vec<i64>>,
    pub seed_count: usize,
    pub terminal_values: Vec<TerminalValueCount>,
    pub path_lengths: Vec<usize>,
    pub landscape_class: LandscapeClass,
    pub basis_size: usize,
    pub basis_truncated: bool,
    pub sampler_assisted: bool,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<Vec<i64>>>,
}

impl ResultsFile {
    pub fn from_report(report: &SolveReport, wall_ms: f64, seeds: Option<Vec<Vec<i64>>>) -> Self {
        Self {
            name: report.instance.clone(),
            best_objective: report.best.terminal_f,
            best_objective_f64: report.best.terminal_f.to_f64(),
            best_x: report.best.terminal_x.clone(),
            degenerate_optima: report.best_solutions.clone(),
            seed_count: report.seed_count(),
            terminal_values: report
                .distinct_terminal_values
                .iter()
                .map(|(v, &count)| TerminalValueCount {
                    value: *v,
                    value_f64: v.to_f64(),
                    count,
                })
                .collect(),
            path_lengths: report.all_terminals.iter().map(|r| r.steps).collect(),
            landscape_class: report.landscape_class,
            basis_size: report.basis_size,
            basis_truncated: report.basis_truncated,
            sampler_assisted: report.sampler_assisted,
            wall_ms,
            seeds,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(pairs: &[(i128, usize)]) -> BTreeMap<Exact, usize> {
        pairs.iter().map(|&(v, c)| (Exact::from_integer(v), c)).collect()
    }

    #[test]
    fn single_value_is_convex_like() {
        assert_eq!(
            classify_histogram(&hist(&[(-4, 50)]), &Default::default()),
            LandscapeClass::ConvexLike
        );
    }

    #[test]
    fn few_values_with_majority_is_easy() {
        let h = hist(&[(-10, 8), (-5, 1), (0, 1)]);
        assert_eq!(
            classify_histogram(&h, &Default::default()),
            LandscapeClass::EasyNonconvex
        );
    }

    #[test]
    fn many_values_is_hard() {
        let pairs: Vec<(i128, usize)> = (0..20).map(|v| (v, if v == 0 { 2 } else { 1 })).collect();
        let h = hist(&pairs);
        assert_eq!(h.values().sum::<usize>(), 21);
        assert_eq!(
            classify_histogram(&h, &Default::default()),
            LandscapeClass::HardNonconvex
        );
    }

    #[test]
    fn few_values_with_minority_is_hard() {
        let h = hist(&[(-10, 1), (-5, 5), (0, 4)]);
        assert_eq!(
            classify_histogram(&h, &Default::default()),
            LandscapeClass::HardNonconvex
        );
    }

    #[test]
    fn exact_formatting() {
        assert_eq!(format_exact(&Exact::new(6, 4)), "3/2");
        assert_eq!(format_exact(&Exact::from_integer(-7)), "-7");
    }
}
