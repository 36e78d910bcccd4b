//! Primed Matsubara sums Σ′ (m = 0 at half weight) with deterministic reduction.

use rayon::prelude::*;

use super::{QuadratureSettings, SumDiagnostics};
use crate::error::{CasimirError, Result};

/// Neumaier's variant of Kahan compensated summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Unweighted terms `term(0), term(1), …` up to the truncation point.
#[derive(Debug, Clone)]
pub struct MatsubaraTerms<T> {
    pub terms: Vec<T>,
    pub diagnostics: SumDiagnostics,
}

/// Weight of term `m` in a primed sum.
pub(crate) fn prime_weight(m: usize) -> f64 {
    if m == 0 {
        0.5
    } else {
        1.0
    }
}

const FIRST_CHUNK: usize = 16;
const MAX_CHUNK: usize = 1024;

/// Evaluates terms until three consecutive weighted terms each fall below
/// `rel_tol/10` of the running total, the index is past `knee_index`, and the
/// geometric estimate of the remaining tail is below the same threshold.
///
/// Terms are computed in parallel chunks; the stopping scan runs serially in
/// ascending `m`, so the returned prefix never depends on scheduling.
/// `measure` maps a term to the scalar used by the stopping rule.
pub fn evaluate_matsubara_terms<T, F, M>(
    term: F,
    measure: M,
    settings: &QuadratureSettings,
    knee_index: usize,
) -> Result<MatsubaraTerms<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
    M: Fn(&T) -> f64,
{
    let threshold = settings.rel_tol / 10.0;
    let m_max = settings.matsubara_m_max;
    let mut terms: Vec<T> = Vec::new();
    let mut running = CompensatedSum::new();
    let mut weighted: Vec<f64> = Vec::new();
    let mut small_run = 0usize;
    let mut chunk = FIRST_CHUNK;

    while terms.len() < m_max {
        let start = terms.len();
        let end = (start + chunk).min(m_max);
        let batch: Vec<Result<T>> = (start..end).into_par_iter().map(&term).collect();
        for (offset, t) in batch.into_iter().enumerate() {
            let m = start + offset;
            let t = t?;
            let w = prime_weight(m) * measure(&t);
            running.add(w);
            weighted.push(w);
            terms.push(t);
            let total = running.value();
            if w.abs() <= threshold * total.abs() {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if small_run >= 3 && m >= knee_index && tail_negligible(&weighted, threshold * total.abs()) {
                let diagnostics = diagnose(&weighted, total);
                return Ok(MatsubaraTerms { terms, diagnostics });
            }
        }
        chunk = (chunk * 2).min(MAX_CHUNK);
    }

    let total = running.value();
    Err(CasimirError::SumConvergence {
        partial: total,
        diagnostics: diagnose(&weighted, total),
    })
}

/// Geometric tail estimate from the last two weighted terms is within `limit`.
/// Dense sums (small Matsubara spacing) have many tiny terms whose combined
/// tail is not small, so per-term smallness alone is not sufficient.
fn tail_negligible(weighted: &[f64], limit: f64) -> bool {
    let n = weighted.len();
    if n < 2 {
        return false;
    }
    let (prev, last) = (weighted[n - 2].abs(), weighted[n - 1].abs());
    if last == 0.0 {
        return true;
    }
    if prev == 0.0 || last >= prev {
        return false;
    }
    let ratio = last / prev;
    last * ratio / (1.0 - ratio) <= limit
}

fn diagnose(weighted: &[f64], total: f64) -> SumDiagnostics {
    let n = weighted.len();
    let last = weighted.last().copied().unwrap_or(0.0).abs();
    let last_term_fraction = if total != 0.0 { last / total.abs() } else { 0.0 };
    let truncation_estimate = if n >= 2 && weighted[n - 2] != 0.0 {
        let ratio = (weighted[n - 1] / weighted[n - 2]).abs();
        if ratio < 1.0 {
            last * ratio / (1.0 - ratio)
        } else {
            last
        }
    } else {
        last
    };
    SumDiagnostics {
        terms_used: n,
        last_term_fraction,
        truncation_estimate,
    }
}

/// ½·term(0) + Σ_{m≥1} term(m).
pub fn matsubara_sum<F>(term: F, settings: &QuadratureSettings) -> Result<(f64, SumDiagnostics)>
where
    F: Fn(usize) -> f64 + Sync,
{
    let out = evaluate_matsubara_terms(|m| Ok(term(m)), |t| *t, settings, 0)?;
    let total: CompensatedSum = out
        .terms
        .iter()
        .enumerate()
        .map(|(m, t)| prime_weight(m) * t)
        .collect();
    Ok((total.value(), out.diagnostics))
}
