//! Discriminant scans: class numbers over a range of quadratic fields, with the
//! fixed-point roots α attached to every class-number-one field.
//!
//! Work is spread over a rayon pool of `jobs` threads; rows are merged in scan
//! order (`-3, -4, -7, …` for imaginary fields, `5, 8, 12, …` for real ones), so
//! the output does not depend on the worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exp_solver::{
    alpha_complex_case, alpha_real_case, BranchPairing, CaseTag, FixedPointReport, UnitInput,
};
use crate::quadratic_fields::{
    class_number, class_number_narrow, fundamental_unit, is_fundamental_discriminant, radicand,
    roots_of_unity, FundamentalUnit, RootsOfUnity,
};
use crate::ComplexValue;

/// Two α values closer than this count as the same root.
pub const ALPHA_SEPARATION_THRESHOLD: f64 = 1e-9;
/// Two torsion units closer than this count as the same unit.
pub const UNIT_MATCH_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanOptions {
    pub branch: i64,
    /// Logarithm branch for torsion units. With the principal branch ε = 1 has
    /// `log ε = 0` and is skipped.
    pub log_branch: i64,
    pub pairing: BranchPairing,
    /// Real fields attach `ε, ε², …, ε^N` for `N = real_unit_powers`.
    pub real_unit_powers: u32,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            branch: 0,
            log_branch: 0,
            pairing: BranchPairing::ConjugateBranch,
            real_unit_powers: 1,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum UnitData {
    Torsion(RootsOfUnity),
    Fundamental(FundamentalUnit),
}

/// A root α together with the unit it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttachedAlpha {
    pub unit: String,
    /// Float value of the unit when it fits.
    pub epsilon: Option<ComplexValue>,
    pub norm: i64,
    pub report: FixedPointReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    #[serde(rename = "D")]
    pub discriminant: i64,
    pub d: i64,
    pub h: u64,
    pub unit: UnitData,
    /// Nonempty exactly when `h = 1`.
    pub alpha_reports: Vec<AttachedAlpha>,
    pub case_tag: CaseTag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveySummary {
    pub range: (i64, i64),
    pub count_h1: usize,
    pub rows: Vec<SurveyRow>,
    pub distinct_alpha_count: usize,
    /// Smallest distance between distinct α values; `None` with fewer than two.
    pub min_alpha_separation: Option<f64>,
    /// Distinct torsion units over the class-number-one imaginary fields,
    /// ordered by argument in `[0, 2π)`.
    pub distinct_units: Vec<ComplexValue>,
}

/// One output line of the stable row schema (JSON and CSV share the columns).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatRecord {
    #[serde(rename = "D")]
    pub discriminant: i64,
    pub d: i64,
    pub h: u64,
    pub unit: String,
    pub norm: i64,
    pub regulator: f64,
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub residual_defining: Option<f64>,
    pub residual_split_1: Option<f64>,
    pub residual_split_2: Option<f64>,
    pub residual_sum_equation: Option<f64>,
    pub branch: Option<i64>,
    pub log_branch: Option<i64>,
}

pub const FLAT_COLUMNS: [&str; 14] = [
    "D",
    "d",
    "h",
    "unit",
    "norm",
    "regulator",
    "alpha_re",
    "alpha_im",
    "residual_defining",
    "residual_split_1",
    "residual_split_2",
    "residual_sum_equation",
    "branch",
    "log_branch",
];

impl SurveyRow {
    fn unit_label(&self) -> String {
        match &self.unit {
            UnitData::Torsion(r) => format!("mu_{}", r.n),
            UnitData::Fundamental(u) => u.to_string(),
        }
    }

    fn unit_norm_and_regulator(&self) -> (i64, f64) {
        match &self.unit {
            UnitData::Torsion(_) => (1, 0.0),
            UnitData::Fundamental(u) => (u.norm, u.regulator),
        }
    }

    /// One record per attached α, or a single record without α.
    pub fn flat_records(&self) -> Vec<FlatRecord> {
        let (norm, regulator) = self.unit_norm_and_regulator();
        if self.alpha_reports.is_empty() {
            return vec![FlatRecord {
                discriminant: self.discriminant,
                d: self.d,
                h: self.h,
                unit: self.unit_label(),
                norm,
                regulator,
                alpha_re: None,
                alpha_im: None,
                residual_defining: None,
                residual_split_1: None,
                residual_split_2: None,
                residual_sum_equation: None,
                branch: None,
                log_branch: None,
            }];
        }
        self.alpha_reports
            .iter()
            .map(|att| {
                let r = &att.report;
                FlatRecord {
                    discriminant: self.discriminant,
                    d: self.d,
                    h: self.h,
                    unit: att.unit.clone(),
                    norm: att.norm,
                    regulator: r.log_epsilon.re,
                    alpha_re: Some(r.alpha.re),
                    alpha_im: Some(r.alpha.im),
                    residual_defining: Some(r.residual_defining),
                    residual_split_1: r.residual_split_1,
                    residual_split_2: r.residual_split_2,
                    residual_sum_equation: Some(r.residual_sum_equation),
                    branch: Some(r.branch.0),
                    log_branch: Some(r.conventions.log_branch),
                }
            })
            .collect()
    }
}

/// Serializable view of a summary; rows use the flat schema.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryView {
    pub range: (i64, i64),
    pub field_count: usize,
    pub count_h1: usize,
    pub distinct_alpha_count: usize,
    pub min_alpha_separation: Option<f64>,
    pub distinct_units: Vec<ComplexValue>,
    pub rows: Vec<FlatRecord>,
}

impl SurveySummary {
    pub fn flat_records(&self) -> Vec<FlatRecord> {
        self.rows.iter().flat_map(SurveyRow::flat_records).collect()
    }

    pub fn view(&self) -> SummaryView {
        SummaryView {
            range: self.range,
            field_count: self.rows.len(),
            count_h1: self.count_h1,
            distinct_alpha_count: self.distinct_alpha_count,
            min_alpha_separation: self.min_alpha_separation,
            distinct_units: self.distinct_units.clone(),
            rows: self.flat_records(),
        }
    }

    /// Discriminants of the class-number-one rows, in scan order.
    pub fn h1_discriminants(&self) -> Vec<i64> {
        self.rows
            .iter()
            .filter(|r| r.h == 1)
            .map(|r| r.discriminant)
            .collect()
    }
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn imaginary_row(disc: i64, opts: &ScanOptions) -> Result<SurveyRow> {
    let h = class_number(disc)?;
    let roots = roots_of_unity(disc)?;
    let mut alpha_reports = Vec::new();
    if h == 1 {
        for (eps, label) in roots.elements.iter().zip(roots.labels()) {
            let u = UnitInput::complex(*eps, opts.log_branch)?;
            if u.log_epsilon().norm() == 0.0 {
                continue;
            }
            let report = alpha_complex_case(&u, opts.branch, 0.0)?;
            alpha_reports.push(AttachedAlpha {
                unit: label.to_string(),
                epsilon: Some(*eps),
                norm: 1,
                report,
            });
        }
    }
    Ok(SurveyRow {
        discriminant: disc,
        d: radicand(disc),
        h,
        unit: UnitData::Torsion(roots),
        alpha_reports,
        case_tag: CaseTag::ComplexCase,
    })
}

fn real_row(disc: i64, opts: &ScanOptions) -> Result<SurveyRow> {
    let unit = fundamental_unit(radicand(disc))?;
    let narrow = class_number_narrow(disc)?;
    let h = if unit.norm == -1 { narrow } else { narrow / 2 };
    let mut alpha_reports = Vec::new();
    if h == 1 {
        for n in 1..=opts.real_unit_powers.max(1) {
            let u = UnitInput::real_from_log(f64::from(n) * unit.regulator)?;
            let report = alpha_real_case(&u, opts.branch, opts.pairing)?;
            let label = if n == 1 {
                unit.to_string()
            } else {
                format!("({unit})^{n}")
            };
            alpha_reports.push(AttachedAlpha {
                unit: label,
                epsilon: u.epsilon(),
                norm: unit.norm.pow(n),
                report,
            });
        }
    }
    Ok(SurveyRow {
        discriminant: disc,
        d: radicand(disc),
        h,
        unit: UnitData::Fundamental(unit),
        alpha_reports,
        case_tag: CaseTag::RealCase,
    })
}

fn summarize(range: (i64, i64), rows: Vec<SurveyRow>) -> SurveySummary {
    let count_h1 = rows.iter().filter(|r| r.h == 1).count();
    let alphas: Vec<ComplexValue> = rows
        .iter()
        .flat_map(|r| r.alpha_reports.iter().map(|a| a.report.alpha))
        .collect();
    let distinct = dedup_within(&alphas, ALPHA_SEPARATION_THRESHOLD);
    let min_alpha_separation = min_pairwise_distance(&distinct);

    let mut units: Vec<ComplexValue> = rows
        .iter()
        .filter(|r| r.h == 1)
        .filter_map(|r| match &r.unit {
            UnitData::Torsion(t) => Some(t.elements.iter().copied()),
            UnitData::Fundamental(_) => None,
        })
        .flatten()
        .collect();
    units = dedup_within(&units, UNIT_MATCH_TOLERANCE);
    units.sort_by(|a, b| positive_arg(*a).total_cmp(&positive_arg(*b)));

    SurveySummary {
        range,
        count_h1,
        distinct_alpha_count: distinct.len(),
        min_alpha_separation,
        distinct_units: units,
        rows,
    }
}

fn positive_arg(z: ComplexValue) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Keep the first of every cluster of values within `tol` of an earlier one.
pub fn dedup_within(values: &[ComplexValue], tol: f64) -> Vec<ComplexValue> {
    let mut out: Vec<ComplexValue> = Vec::new();
    for &v in values {
        if out.iter().all(|u| (u - v).norm() > tol) {
            out.push(v);
        }
    }
    out
}

pub fn min_pairwise_distance(values: &[ComplexValue]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (p, a) in values.iter().enumerate() {
        for b in &values[p + 1..] {
            let dist = (a - b).norm();
            best = Some(best.map_or(dist, |m| m.min(dist)));
        }
    }
    best
}

fn collect_rows(
    discs: Vec<i64>,
    opts: &ScanOptions,
    row: fn(i64, &ScanOptions) -> Result<SurveyRow>,
) -> Result<Vec<SurveyRow>> {
    run_pool(opts.jobs, || {
        discs
            .par_iter()
            .map(|&disc| row(disc, opts))
            .collect::<Result<Vec<_>>>()
    })
}

/// Scan fundamental discriminants `D ∈ [-limit, -3]`.
pub fn scan_imaginary(limit: u64, opts: &ScanOptions) -> Result<SurveySummary> {
    let limit = i64::try_from(limit).map_err(|_| Error::OutOfRange(i64::MAX))?;
    let discs: Vec<i64> = (3..=limit)
        .map(|n| -n)
        .filter(|&disc| is_fundamental_discriminant(disc))
        .collect();
    let rows = collect_rows(discs, opts, imaginary_row)?;
    Ok(summarize((-limit, -3), rows))
}

/// Scan fundamental discriminants `D ∈ [5, limit]`.
pub fn scan_real(limit: u64, opts: &ScanOptions) -> Result<SurveySummary> {
    let limit = i64::try_from(limit).map_err(|_| Error::OutOfRange(i64::MAX))?;
    let discs: Vec<i64> = (5..=limit)
        .filter(|&disc| is_fundamental_discriminant(disc))
        .collect();
    let rows = collect_rows(discs, opts, real_row)?;
    Ok(summarize((5, limit), rows))
}

/// One line per (field, unit, branch) with α attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableLine {
    #[serde(rename = "D")]
    pub discriminant: i64,
    pub d: i64,
    pub unit: String,
    pub epsilon_re: Option<f64>,
    pub epsilon_im: Option<f64>,
    pub log_eps_re: f64,
    pub log_eps_im: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub residual_defining: f64,
    pub residual_split_1: Option<f64>,
    pub residual_split_2: Option<f64>,
    pub residual_sum_equation: f64,
    pub branch: i64,
    pub log_branch: i64,
    /// Distance to the nearest other α in the table.
    pub nearest_alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceTable {
    pub lines: Vec<TableLine>,
    pub attached_count: usize,
    pub distinct_alpha_count: usize,
    pub min_alpha_separation: Option<f64>,
}

/// Tabulate every attached α of `rows` with its residuals and separation
/// statistics.
pub fn correspondence_table(rows: &[SurveyRow]) -> CorrespondenceTable {
    let attached: Vec<(&SurveyRow, &AttachedAlpha)> = rows
        .iter()
        .flat_map(|r| r.alpha_reports.iter().map(move |a| (r, a)))
        .collect();
    let alphas: Vec<ComplexValue> = attached.iter().map(|(_, a)| a.report.alpha).collect();
    let lines = attached
        .iter()
        .enumerate()
        .map(|(idx, (row, att))| {
            let r = &att.report;
            let nearest_alpha = alphas
                .iter()
                .enumerate()
                .filter(|(other, _)| *other != idx)
                .map(|(_, a)| (a - r.alpha).norm())
                .reduce(f64::min);
            TableLine {
                discriminant: row.discriminant,
                d: row.d,
                unit: att.unit.clone(),
                epsilon_re: att.epsilon.map(|e| e.re),
                epsilon_im: att.epsilon.map(|e| e.im),
                log_eps_re: r.log_epsilon.re,
                log_eps_im: r.log_epsilon.im,
                alpha_re: r.alpha.re,
                alpha_im: r.alpha.im,
                residual_defining: r.residual_defining,
                residual_split_1: r.residual_split_1,
                residual_split_2: r.residual_split_2,
                residual_sum_equation: r.residual_sum_equation,
                branch: r.branch.0,
                log_branch: r.conventions.log_branch,
                nearest_alpha,
            }
        })
        .collect();
    let distinct = dedup_within(&alphas, ALPHA_SEPARATION_THRESHOLD);
    CorrespondenceTable {
        lines,
        attached_count: alphas.len(),
        distinct_alpha_count: distinct.len(),
        min_alpha_separation: min_pairwise_distance(&distinct),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_limit_10() {
        let s = scan_imaginary(10, &ScanOptions::default()).unwrap();
        assert_eq!(s.h1_discriminants(), vec![-3, -4, -7, -8]);
        let radicands: Vec<i64> = s.rows.iter().filter(|r| r.h == 1).map(|r| r.d).collect();
        assert_eq!(radicands, vec![-3, -1, -7, -2]);
    }

    #[test]
    fn imaginary_limit_2_is_empty() {
        let s = scan_imaginary(2, &ScanOptions::default()).unwrap();
        assert!(s.rows.is_empty());
        assert_eq!(s.count_h1, 0);
        assert_eq!(s.distinct_alpha_count, 0);
        assert_eq!(s.min_alpha_separation, None);
    }

    #[test]
    fn real_limit_5_and_4() {
        let s = scan_real(5, &ScanOptions::default()).unwrap();
        assert_eq!(s.rows.len(), 1);
        let row = &s.rows[0];
        assert_eq!((row.d, row.h), (5, 1));
        assert!(row.alpha_reports[0].report.alpha.im.abs() <= 1e-12);
        assert!(scan_real(4, &ScanOptions::default())
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn alphas_only_on_class_number_one() {
        let s = scan_imaginary(100, &ScanOptions::default()).unwrap();
        for row in &s.rows {
            assert_eq!(
                row.h == 1,
                !row.alpha_reports.is_empty(),
                "D = {}",
                row.discriminant
            );
            assert_eq!(row.case_tag, CaseTag::ComplexCase);
        }
    }

    #[test]
    fn shifted_log_branch_keeps_unit_one() {
        let opts = ScanOptions {
            log_branch: 1,
            ..ScanOptions::default()
        };
        let s = scan_imaginary(4, &opts).unwrap();
        // D = -3 and D = -4: all 6 + 4 units attach.
        let attached: usize = s.rows.iter().map(|r| r.alpha_reports.len()).sum();
        assert_eq!(attached, 10);
    }

    #[test]
    fn unit_powers() {
        let opts = ScanOptions {
            real_unit_powers: 3,
            ..ScanOptions::default()
        };
        let s = scan_real(8, &opts).unwrap();
        for row in &s.rows {
            assert_eq!(row.alpha_reports.len(), 3);
        }
        let row = &s.rows[0];
        assert_eq!(row.alpha_reports[2].unit, "((1+1*sqrt(5))/2)^3");
        assert_eq!(row.alpha_reports[1].norm, 1);
    }

    #[test]
    fn empty_table() {
        let t = correspondence_table(&[]);
        assert!(t.lines.is_empty());
        assert_eq!((t.attached_count, t.distinct_alpha_count), (0, 0));
    }

    #[test]
    fn flat_records_without_alpha() {
        let s = scan_imaginary(23, &ScanOptions::default()).unwrap();
        let row = s.rows.iter().find(|r| r.discriminant == -23).unwrap();
        let recs = row.flat_records();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].h, 3);
        assert_eq!(recs[0].alpha_re, None);
        assert_eq!(recs[0].unit, "mu_2");
    }
}
