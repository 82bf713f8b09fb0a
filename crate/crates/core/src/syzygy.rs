//! Syzygy order of the equivariant cohomology from the B-complex reports,
//! and Hilbert series of the cohomology of the Atiyah–Bredon complex.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bcomplex::{
    b_cohomology, e1_page, face_cohomology, from_abstract, AbstractBData, BError, FaceReport,
    FiltrationPage,
};
use crate::corners::{check_nice, face_lattice, restrict, CornerError, CornerModel, FaceLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error(transparent)]
    Corner(#[from] CornerError),
    #[error(transparent)]
    B(#[from] BError),
}

/// Position on the scale `0, 1, …, n−1, free`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyzygyOrder {
    Order(usize),
    Free,
}

impl SyzygyOrder {
    /// Largest `j` with a `j`-th syzygy; free counts as `n`.
    pub fn level(self, n: usize) -> usize {
        match self {
            SyzygyOrder::Order(j) => j,
            SyzygyOrder::Free => n,
        }
    }

    pub fn verdict(self) -> String {
        match self {
            SyzygyOrder::Free => "free (equivariantly formal)".to_string(),
            SyzygyOrder::Order(0) => "syzygy order 0 (not equivariantly formal)".to_string(),
            SyzygyOrder::Order(1) => "syzygy order 1 (torsion-free, not free)".to_string(),
            SyzygyOrder::Order(j) => format!("syzygy order {j} (not free)"),
        }
    }
}

impl fmt::Display for SyzygyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyzygyOrder::Order(j) => write!(f, "{j}"),
            SyzygyOrder::Free => write!(f, "free"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyReport {
    pub order: SyzygyOrder,
    pub n: usize,
    pub per_face: Vec<FaceReport>,
    /// Faces attaining the minimum of `rank P − m(P)`; empty when free.
    pub witnesses: Vec<usize>,
}

pub fn syzygy_order(reports: &[FaceReport], n: usize) -> SyzygyReport {
    let gaps: Vec<(usize, usize)> = reports
        .iter()
        .filter(|r| r.obstruction > 0)
        .map(|r| (r.face, r.rank.saturating_sub(r.obstruction)))
        .collect();
    let best = gaps.iter().map(|g| g.1).min();
    let (order, witnesses) = match best {
        Some(j) if j < n => (
            SyzygyOrder::Order(j),
            gaps.iter().filter(|g| g.1 == j).map(|g| g.0).collect(),
        ),
        _ => (SyzygyOrder::Free, Vec::new()),
    };
    SyzygyReport {
        order,
        n,
        per_face: reports.to_vec(),
        witnesses,
    }
}

pub fn formality(report: &SyzygyReport) -> bool {
    report.order == SyzygyOrder::Free
}

/// The criterion for a `j`-th syzygy, checked face by face:
/// `h^{i,·}(P) = 0` for every `i > max(rank P − j, 0)`.
pub fn is_jth_syzygy(reports: &[FaceReport], j: usize) -> bool {
    reports.iter().all(|r| {
        let floor = r.rank.saturating_sub(j);
        (floor + 1..=r.rank).all(|i| r.h.get(i).is_none_or(Vec::is_empty))
    })
}

/// `numerator / (1 − t)^denominator_exponent`, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub index: usize,
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
    /// Coefficients of `t^0 … t^D`.
    pub coefficients: Vec<i64>,
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_string(&self.numerator);
        match self.denominator_exponent {
            0 => write!(f, "{num}"),
            e => {
                let den = if e == 1 { "(1-t)".to_string() } else { format!("(1-t)^{e}") };
                if self.numerator.iter().filter(|&&c| c != 0).count() > 1 {
                    write!(f, "({num})/{den}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
        }
    }
}

fn poly_string(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if mag != 1 || k == 0 {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn trim_poly(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Multiplies by `(1 − t)`.
fn times_one_minus_t(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + 1] -= c;
    }
    out
}

/// Divides by `(1 − t)` when the remainder vanishes.
fn div_one_minus_t(p: &[i64]) -> Option<Vec<i64>> {
    if p.iter().sum::<i64>() != 0 {
        return None;
    }
    // prefix sums give the quotient
    let mut acc = 0;
    let q: Vec<i64> = p
        .iter()
        .map(|&c| {
            acc += c;
            acc
        })
        .collect();
    Some(trim_poly(q))
}

/// Power series of `p / (1 − t)^e` up to degree `d`.
pub fn expand(p: &[i64], e: usize, d: usize) -> Vec<i64> {
    let mut c: Vec<i64> = (0..=d).map(|k| p.get(k).copied().unwrap_or(0)).collect();
    for _ in 0..e {
        for k in 1..c.len() {
            c[k] += c[k - 1];
        }
    }
    c
}

/// Hilbert series of `H^i` of the Atiyah–Bredon complex: a class of `h^{i,q}(P)`
/// sits in degree `i + q` and carries the factor `t^{c}/(1 − t)^{c}`, `c = n − rank P`.
pub fn ab_hilbert_series(reports: &[FaceReport], n: usize, i: usize, d: usize) -> HilbertSeries {
    let e = reports.iter().map(|r| n.saturating_sub(r.rank)).max().unwrap_or(0);
    let mut num: Vec<i64> = Vec::new();
    for r in reports {
        let c = n.saturating_sub(r.rank);
        for (q, &h) in r.h.get(i).map_or(&[][..], Vec::as_slice).iter().enumerate() {
            if h == 0 {
                continue;
            }
            let mut term = vec![0i64; i + q + c + 1];
            term[i + q + c] = h as i64;
            for _ in c..e {
                term = times_one_minus_t(&term);
            }
            if num.len() < term.len() {
                num.resize(term.len(), 0);
            }
            for (k, v) in term.into_iter().enumerate() {
                num[k] += v;
            }
        }
    }
    let mut num = trim_poly(num);
    let mut e = if num.is_empty() { 0 } else { e };
    while e > 0 {
        match div_one_minus_t(&num) {
            Some(q) => {
                num = q;
                e -= 1;
            }
            None => break,
        }
    }
    HilbertSeries {
        index: i,
        coefficients: expand(&num, e, d),
        numerator: num,
        denominator_exponent: e,
    }
}

/// Everything the pipeline computes for a geometric model.
#[derive(Clone, Debug)]
pub struct ModelAnalysis {
    pub lattice: FaceLattice,
    /// `dim H^k(Q, ∂Q)` for every face.
    pub face_dims: Vec<Vec<usize>>,
    pub pages: Vec<FiltrationPage>,
    pub syzygy: SyzygyReport,
}

/// Face lattice, niceness, per-face pages and B-cohomology, and the order.
pub fn analyze_model(model: &CornerModel) -> Result<ModelAnalysis, SyzygyError> {
    let violations = crate::corners::validate(model);
    if !violations.is_empty() {
        return Err(CornerError::ValidationFailed(violations).into());
    }
    let lattice = face_lattice(model)?;
    check_nice(&lattice)?;
    let cohomology = face_cohomology(model, &lattice);
    let face_dims = cohomology
        .iter()
        .map(|bs| {
            let mut d: Vec<usize> = bs.iter().map(|b| b.dim()).collect();
            while d.last() == Some(&0) {
                d.pop();
            }
            d
        })
        .collect();
    let pages = (0..lattice.faces.len())
        .map(|p| e1_page(model, &lattice, &cohomology, p))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = pages.iter().map(b_cohomology).collect::<Result<Vec<_>, _>>()?;
    let syzygy = syzygy_order(&reports, model.n());
    Ok(ModelAnalysis {
        lattice,
        face_dims,
        pages,
        syzygy,
    })
}

/// One row of the restriction audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRow {
    pub face: usize,
    pub name: String,
    pub rank: usize,
    pub order: SyzygyOrder,
    pub violation: bool,
}

fn audit_row(face: usize, name: &str, rank: usize, order: SyzygyOrder, global: usize) -> RestrictionRow {
    RestrictionRow {
        face,
        name: name.to_string(),
        rank,
        order,
        // a free module over the smaller ring only certifies level n'
        violation: order.level(rank) < global.min(rank),
    }
}

/// Reruns the pipeline on every face of positive rank, viewed as a model of its own.
pub fn restriction_monotonicity_check(
    model: &CornerModel,
    analysis: &ModelAnalysis,
) -> Result<Vec<RestrictionRow>, SyzygyError> {
    let global = analysis.syzygy.order.level(model.n());
    let mut rows = Vec::new();
    for face in analysis.lattice.faces.iter().filter(|f| f.rank > 0) {
        let sub = restrict(model, &analysis.lattice, face.id)?;
        let sub_analysis = analyze_model(&sub)?;
        rows.push(audit_row(face.id, &face.name, face.rank, sub_analysis.syzygy.order, global));
    }
    Ok(rows)
}

/// Abstract version: a face's data is the sub-poset below it with `n' = rank P`.
pub fn abstract_restriction_check(data: &AbstractBData) -> Result<Vec<RestrictionRow>, SyzygyError> {
    let whole = from_abstract(data)?;
    let global = syzygy_order(&whole.reports, data.n).order.level(data.n);
    let lat = &whole.lattice;
    let mut rows = Vec::new();
    for p in (0..lat.names.len()).filter(|&p| lat.ranks[p] > 0) {
        let keep = |name: &String| lat.names.iter().position(|x| x == name).is_some_and(|q| lat.is_below(q, p));
        let sub = AbstractBData {
            n: lat.ranks[p],
            faces: data
                .faces
                .iter()
                .filter(|f| keep(&f.name))
                .map(|f| {
                    let mut f = f.clone();
                    f.contains.retain(|c| keep(c));
                    f
                })
                .collect(),
            d1: data
                .d1
                .iter()
                .filter(|b| keep(&b.from) && keep(&b.to))
                .cloned()
                .collect(),
        };
        let sub = from_abstract(&sub)?;
        let order = syzygy_order(&sub.reports, lat.ranks[p]).order;
        rows.push(audit_row(p, &lat.names[p], lat.ranks[p], order, global));
    }
    Ok(rows)
}
