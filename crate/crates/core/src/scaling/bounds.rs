use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Spec;

/// Scaling regime of a parameter point.
///
/// `SharpFoldFull` names the intermediate sharp-fold construction whose energy
/// shares the `alpha^{1/3}` law of `SharpFoldPartial`; the min/max bound never
/// distinguishes the two, so it is not emitted by [`upper_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeLabel {
    Elastic,
    SharpFoldPartial,
    SharpFoldFull,
    LocalizedFull,
    TotalDelam,
    SmallAngleTotal,
}

impl RegimeLabel {
    pub const ALL: [RegimeLabel; 6] = [
        RegimeLabel::Elastic,
        RegimeLabel::SharpFoldPartial,
        RegimeLabel::SharpFoldFull,
        RegimeLabel::LocalizedFull,
        RegimeLabel::TotalDelam,
        RegimeLabel::SmallAngleTotal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::Elastic => "elastic",
            RegimeLabel::SharpFoldPartial => "sharp-fold-partial",
            RegimeLabel::SharpFoldFull => "sharp-fold-full",
            RegimeLabel::LocalizedFull => "localized-full",
            RegimeLabel::TotalDelam => "total-delam",
            RegimeLabel::SmallAngleTotal => "small-angle-total",
        }
    }

    /// Identifier of the bound monomial that governs this regime.
    pub fn formula(self) -> &'static str {
        match self {
            RegimeLabel::Elastic => "a^2 h^3 / L",
            RegimeLabel::SharpFoldPartial | RegimeLabel::SharpFoldFull => "a^(1/3) g^(2/3) h^(4/3)",
            RegimeLabel::LocalizedFull => "a g^(1/2) h^(3/2) N^(-1/2)",
            RegimeLabel::TotalDelam => "a^2 h^3 / (L N^2)",
            RegimeLabel::SmallAngleTotal => "a h^4 / (L^2 N^2)",
        }
    }

    /// Exponents of the governing monomial in `(alpha, gamma, h, L, N)`.
    pub fn exponents(self) -> [f64; 5] {
        match self {
            RegimeLabel::Elastic => [2.0, 0.0, 3.0, -1.0, 0.0],
            RegimeLabel::SharpFoldPartial | RegimeLabel::SharpFoldFull => [1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, 0.0, 0.0],
            RegimeLabel::LocalizedFull => [1.0, 0.5, 1.5, 0.0, -0.5],
            RegimeLabel::TotalDelam => [2.0, 0.0, 3.0, -1.0, -2.0],
            RegimeLabel::SmallAngleTotal => [1.0, 0.0, 4.0, -2.0, -2.0],
        }
    }

    pub fn is_delaminated(self) -> bool {
        self != RegimeLabel::Elastic
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        RegimeLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == norm || format!("{l:?}").to_ascii_lowercase() == norm.replace('-', ""))
            .ok_or_else(|| Error::Domain(format!("unknown regime '{s}'")))
    }
}

/// The five monomials of the upper bound at `(spec, alpha)`, unit constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchValues {
    pub elastic: f64,
    pub sharp_fold: f64,
    pub localized_full: f64,
    pub small_angle_total: f64,
    pub total_delam: f64,
}

struct Monomial {
    label: RegimeLabel,
    coeff: f64,
    power: f64,
}

fn monomials(spec: &Spec) -> [Monomial; 5] {
    let (h, l, n, g) = (spec.h, spec.l, spec.n as f64, spec.gamma);
    [
        Monomial { label: RegimeLabel::Elastic, coeff: h.powi(3) / l, power: 2.0 },
        Monomial {
            label: RegimeLabel::SharpFoldPartial,
            coeff: g.powf(2.0 / 3.0) * h.powf(4.0 / 3.0),
            power: 1.0 / 3.0,
        },
        Monomial { label: RegimeLabel::SmallAngleTotal, coeff: h.powi(4) / (l * l * n * n), power: 1.0 },
        Monomial { label: RegimeLabel::LocalizedFull, coeff: g.sqrt() * h.powf(1.5) / n.sqrt(), power: 1.0 },
        Monomial { label: RegimeLabel::TotalDelam, coeff: h.powi(3) / (l * n * n), power: 2.0 },
    ]
}

pub fn branch_values(spec: &Spec, alpha: f64) -> BranchValues {
    let v: Vec<f64> = monomials(spec).iter().map(|m| m.coeff * alpha.powf(m.power)).collect();
    BranchValues { elastic: v[0], sharp_fold: v[1], small_angle_total: v[2], localized_full: v[3], total_delam: v[4] }
}

fn check_inputs(spec: &Spec, alpha: f64) -> Result<()> {
    spec.validate().map_err(|e| Error::Precondition(e.to_string()))?;
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(Error::Precondition(format!("alpha = {alpha} outside (0, pi/2]")));
    }
    Ok(())
}

fn classify(spec: &Spec, alpha: f64) -> (f64, RegimeLabel) {
    let ms = monomials(spec);
    let elastic = ms[0].coeff * alpha.powi(2);
    // delaminated branches are listed by increasing alpha-rank; later ones win ties
    let mut best = (f64::NEG_INFINITY, RegimeLabel::SharpFoldPartial);
    for m in &ms[1..] {
        let v = m.coeff * alpha.powf(m.power);
        if v >= best.0 {
            best = (v, m.label);
        }
    }
    if elastic < best.0 {
        (elastic, RegimeLabel::Elastic)
    } else {
        best
    }
}

/// `min{a^2h^3/L, max{a^(1/3)g^(2/3)h^(4/3), a g^(1/2)h^(3/2)/N^(1/2), a h^4/(L^2N^2), a^2h^3/(LN^2)}}`
/// with the achieving branch. At exact ties the higher-alpha regime is reported,
/// matching half-open regime intervals `[lo, hi)`.
pub fn upper_bound(spec: &Spec, alpha: f64) -> Result<(f64, RegimeLabel)> {
    check_inputs(spec, alpha)?;
    Ok(classify(spec, alpha))
}

/// Conditional floor `min{a^2h^3/L, a g^(1/2)h^(3/2)/N^(1/2) + a^2h^3/(LN^2), a^2h^2/N}`
/// for competitors delaminating along at most `n_assumed - 1` interfaces;
/// `n_assumed = 1` leaves only the elastic branch.
pub fn lower_bound(spec: &Spec, alpha: f64, n_assumed: usize) -> Result<f64> {
    check_inputs(spec, alpha)?;
    if n_assumed == 0 {
        return Err(Error::Precondition("n_assumed must be at least 1".into()));
    }
    let (h, l, n, g) = (spec.h, spec.l, spec.n as f64, spec.gamma);
    let elastic = alpha * alpha * h.powi(3) / l;
    if n_assumed == 1 {
        return Ok(elastic);
    }
    let mixed = alpha * g.sqrt() * h.powf(1.5) / n.sqrt() + alpha * alpha * h.powi(3) / (l * n * n);
    let plies = alpha * alpha * h * h / n;
    Ok(elastic.min(mixed).min(plies))
}

/// Named regime thresholds of the sorted case table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Elastic / sharp-fold crossing `g^(2/5) L^(3/5) / h`.
    pub alpha1: f64,
    /// Sharp-fold / localized crossing `g^(1/4) N^(3/4) / h^(1/4)`.
    pub alpha2: f64,
    /// Localized / total crossing `g^(1/2) L N^(3/2) / h^(3/2)`.
    pub alpha3: f64,
    /// Elastic / localized crossing `g^(1/2) L N^(-1/2) / h^(3/2)` (table without the sharp fold).
    pub alpha_el_lf: f64,
}

pub fn thresholds(spec: &Spec) -> Thresholds {
    let (h, l, n, g) = (spec.h, spec.l, spec.n as f64, spec.gamma);
    Thresholds {
        alpha1: g.powf(0.4) * l.powf(0.6) / h,
        alpha2: g.powf(0.25) * n.powf(0.75) / h.powf(0.25),
        alpha3: g.sqrt() * l * n.powf(1.5) / h.powf(1.5),
        alpha_el_lf: g.sqrt() * l / (n.sqrt() * h.powf(1.5)),
    }
}

/// Which of the two closed-form case tables applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTable {
    /// `g L^4 < h^5 N^5`: elastic, sharp fold, localized, total.
    WithSharpFold,
    /// `g L^4 >= h^5 N^5`: elastic, localized, total.
    WithoutSharpFold,
}

pub fn case_table(spec: &Spec) -> CaseTable {
    if spec.gamma * spec.l.powi(4) < spec.h.powi(5) * (spec.n as f64).powi(5) {
        CaseTable::WithSharpFold
    } else {
        CaseTable::WithoutSharpFold
    }
}

/// The three gate inequalities of the main case table:
/// `h > g N^3`, `h^5 N^5 > g L^4`, `h^5 < g L^4 N^3`.
pub fn in_main_case(spec: &Spec) -> bool {
    let (h, l, n, g) = (spec.h, spec.l, spec.n as f64, spec.gamma);
    h > g * n.powi(3) && h.powi(5) * n.powi(5) > g * l.powi(4) && h.powi(5) < g * l.powi(4) * n.powi(3)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeInterval {
    pub lo: f64,
    pub hi: f64,
    pub label: RegimeLabel,
    pub formula: String,
}

/// Piecewise decomposition of the upper bound over `alpha in (0, pi/2]`.
///
/// Computed from all pairwise crossings of the five monomials, so it reproduces
/// both closed-form case tables where they apply and stays exact outside them.
pub fn sorted_regimes(spec: &Spec) -> Vec<RegimeInterval> {
    let ms = monomials(spec);
    let mut cuts = Vec::new();
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if a.power != b.power {
                let x = (b.coeff / a.coeff).powf(1.0 / (a.power - b.power));
                if x > 0.0 && x < FRAC_PI_2 && x.is_finite() {
                    cuts.push(x);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![0.0];
    edges.extend(cuts);
    edges.push(FRAC_PI_2);
    let mut out: Vec<RegimeInterval> = Vec::new();
    for w in edges.windows(2) {
        let mid = if w[0] == 0.0 { 0.5 * w[1] } else { (w[0] * w[1]).sqrt() };
        let label = classify(spec, mid).1;
        match out.last_mut() {
            Some(last) if last.label == label => last.hi = w[1],
            _ => out.push(RegimeInterval { lo: w[0], hi: w[1], label, formula: label.formula().to_string() }),
        }
    }
    out
}

/// Half-width `ell` of the delaminated zone predicted by the regime analysis:
/// `0`, `a^(1/3) g^(-1/3) h^(4/3) / N`, `a g^(-1/2) h^(3/2) N^(-3/2)` or `L`.
///
/// Defined only in the main case table with `h >= g N^3`.
pub fn optimal_delam_length(spec: &Spec, alpha: f64) -> Result<f64> {
    check_inputs(spec, alpha)?;
    let (h, l, n, g) = (spec.h, spec.l, spec.n as f64, spec.gamma);
    if case_table(spec) != CaseTable::WithSharpFold || h < g * n.powi(3) {
        return Err(Error::Precondition("delamination-length law needs g L^4 < h^5 N^5 and h >= g N^3".into()));
    }
    let t = thresholds(spec);
    Ok(if alpha < t.alpha1 {
        0.0
    } else if alpha < t.alpha2 {
        alpha.cbrt() * g.powf(-1.0 / 3.0) * h.powf(4.0 / 3.0) / n
    } else if alpha < t.alpha3 {
        alpha / g.sqrt() * h.powf(1.5) / n.powf(1.5)
    } else {
        l
    })
}
