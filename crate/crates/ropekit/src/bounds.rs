//! Ropelength lower bounds evaluated from an invariant record.
//!
//! Each formula is exposed on its own and through [`best_bound`], which
//! applies every formula whose inputs are present and reports the best
//! value per component with provenance.

use crate::invariants::LinkInvariants;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundError {
    #[error("Peri(n) is only known exactly for n <= 6; n = {0} is an open problem")]
    PeriUnknown(usize),
    #[error("a nontrivial component must have parallel overcrossing number >= 2, got {0}")]
    PovTooSmall(u32),
}

/// Minimum length of a plane curve enclosing `n` disjoint unit disks.
/// Known exactly for `n <= 6`; larger `n` is refused.
pub fn peri(n: usize) -> Result<f64, BoundError> {
    match n {
        1 => Ok(2.0 * PI),
        2..=5 => Ok(2.0 * PI + 2.0 * n as f64),
        6 => Ok(2.0 * PI + 8.0 + 2.0 * 3f64.sqrt()),
        _ => Err(BoundError::PeriUnknown(n)),
    }
}

/// Optional stand-in for `n >= 7`, behind an explicit opt-in: the perimeter
/// of the disk of equal area, `2*pi + 2*pi*sqrt(n)`. Strictly weaker than
/// the true (unknown) value; never used unless asked for.
pub fn peri_area_proxy(n: usize) -> f64 {
    2.0 * PI + 2.0 * PI * (n as f64).sqrt()
}

/// Length bound for a component linked to `n` sublinks: `2*pi + Peri(n)`.
pub fn bound_linked_sublinks(n: usize) -> Result<f64, BoundError> {
    if n == 0 {
        return Ok(0.0);
    }
    Ok(2.0 * PI + peri(n)?)
}

/// Length bound from total linking number: `2*pi + 2*pi*sqrt(lk)`.
pub fn bound_linking(total_lk: u32) -> f64 {
    if total_lk == 0 {
        0.0
    } else {
        2.0 * PI * (1.0 + (total_lk as f64).sqrt())
    }
}

/// Length bound from the parallel overcrossing number of a nontrivial knot:
/// `4*pi + 2*pi*sqrt(pov)`.
pub fn bound_pov(pov: u32, nontrivial: bool) -> Result<f64, BoundError> {
    if !nontrivial {
        return Ok(0.0);
    }
    if pov < 2 {
        return Err(BoundError::PovTooSmall(pov));
    }
    Ok(4.0 * PI + 2.0 * PI * (pov as f64).sqrt())
}

/// Length bound from the asymptotic crossing number:
/// `2*pi + 2*pi*sqrt(ac)`, improved to `4*pi + 2*pi*sqrt(ac)` for knotted
/// components. Returns 0 for an unconstrained unknotted component.
pub fn bound_ac(ac: f64, knotted: bool) -> f64 {
    if ac <= 0.0 && !knotted {
        return 0.0;
    }
    let base = if knotted { 4.0 * PI } else { 2.0 * PI };
    base + 2.0 * PI * ac.max(0.0).sqrt()
}

/// Length bound from genus for a knotted component:
/// `2*pi*(2 + sqrt(2*genus - 1))`.
pub fn bound_genus(genus: u32, knotted: bool) -> f64 {
    if genus == 0 || !knotted {
        return 0.0;
    }
    2.0 * PI * (2.0 + (2.0 * genus as f64 - 1.0).sqrt())
}

/// Length bound from the minimal Thurston norm: `2*pi*(1 + sqrt(chi))`.
pub fn bound_chi(chi_minus: u32) -> f64 {
    if chi_minus == 0 {
        return 0.0;
    }
    2.0 * PI * (1.0 + (chi_minus as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WritheBound {
    /// Cone-surface flux estimate: `2*pi*sqrt(|Wr|)`.
    Cone,
    /// Buck--Simon estimate: `4*pi*sqrt(|Wr|)`.
    BuckSimon,
}

/// Length bound from writhe.
pub fn bound_writhe(wr: f64, variant: WritheBound) -> f64 {
    let root = wr.abs().sqrt();
    match variant {
        WritheBound::Cone => 2.0 * PI * root,
        WritheBound::BuckSimon => 4.0 * PI * root,
    }
}

/// Whole-link asymptotic bound from diagram crossing number:
/// `(4*pi*n/11)^(3/4)`.
pub fn bound_crossing_asymptotic(n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        (4.0 * PI * n as f64 / 11.0).powf(0.75)
    }
}

/// Identifier of the formula behind a reported bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaId {
    LinkedSublinks,
    TotalLinking,
    ParallelOvercrossing,
    AsymptoticCrossing,
    Genus,
    ThurstonNorm,
    WritheCone,
    WritheBuckSimon,
    None,
}

impl FormulaId {
    /// Human-readable formula, for report provenance.
    pub fn formula(&self) -> &'static str {
        match self {
            FormulaId::LinkedSublinks => "2*pi + Peri(n)",
            FormulaId::TotalLinking => "2*pi + 2*pi*sqrt(Lk)",
            FormulaId::ParallelOvercrossing => "4*pi + 2*pi*sqrt(pov)",
            FormulaId::AsymptoticCrossing => "2*pi or 4*pi + 2*pi*sqrt(ac)",
            FormulaId::Genus => "2*pi*(2 + sqrt(2*genus - 1))",
            FormulaId::ThurstonNorm => "2*pi*(1 + sqrt(chi_minus))",
            FormulaId::WritheCone => "2*pi*sqrt(|Wr|)",
            FormulaId::WritheBuckSimon => "4*pi*sqrt(|Wr|)",
            FormulaId::None => "no applicable formula",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentBound {
    pub component: usize,
    pub best_value: f64,
    pub best_formula: FormulaId,
    /// Every formula that applied, with its value and the inputs used.
    pub candidates: Vec<BoundCandidate>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCandidate {
    pub formula: FormulaId,
    pub value: f64,
    pub inputs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub per_component: Vec<ComponentBound>,
    /// Sum of per-component maxima.
    pub total_lower_bound: f64,
    /// Whole-link crossing-number bound, reported separately when the
    /// crossing number was supplied (it does not decompose per component).
    pub crossing_asymptotic: Option<f64>,
}

/// Evaluate every applicable bound for each component and aggregate.
pub fn best_bound(inv: &LinkInvariants) -> Result<BoundReport, BoundError> {
    let ncomp = inv.num_components;
    let mut per_component = Vec::with_capacity(ncomp);
    for i in 0..ncomp {
        let mut cands: Vec<BoundCandidate> = Vec::new();
        let sup = inv.supplied_for(i);
        let knotted = sup.map_or(false, |s| s.nontrivial_knot);

        if let Some(n) = sup.and_then(|s| s.linked_partition_count) {
            cands.push(BoundCandidate {
                formula: FormulaId::LinkedSublinks,
                value: bound_linked_sublinks(n as usize)?,
                inputs: format!("n = {n}"),
            });
        }
        let lk_total = inv.total_abs_linking(i);
        if lk_total > 0 {
            cands.push(BoundCandidate {
                formula: FormulaId::TotalLinking,
                value: bound_linking(lk_total),
                inputs: format!("|Lk| total = {lk_total}"),
            });
        }
        // pov may be supplied directly or implied by the bridge number
        let pov_eff = match (sup.and_then(|s| s.pov), sup.and_then(|s| s.bridge)) {
            (Some(p), Some(b)) => Some(p.max(b)),
            (Some(p), None) => Some(p),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        };
        if let Some(pov) = pov_eff {
            if knotted {
                cands.push(BoundCandidate {
                    formula: FormulaId::ParallelOvercrossing,
                    value: bound_pov(pov.max(2), true)?,
                    inputs: format!("pov >= {}", pov.max(2)),
                });
            }
        }
        if let Some(ac) = sup.and_then(|s| s.ac) {
            cands.push(BoundCandidate {
                formula: FormulaId::AsymptoticCrossing,
                value: bound_ac(ac, knotted),
                inputs: format!("ac = {ac}, knotted = {knotted}"),
            });
        }
        if let Some(g) = sup.and_then(|s| s.genus) {
            if knotted && g > 0 {
                cands.push(BoundCandidate {
                    formula: FormulaId::Genus,
                    value: bound_genus(g, true),
                    inputs: format!("genus = {g}"),
                });
            }
        }
        if let Some(chi) = sup.and_then(|s| s.chi_minus) {
            if chi > 0 {
                cands.push(BoundCandidate {
                    formula: FormulaId::ThurstonNorm,
                    value: bound_chi(chi),
                    inputs: format!("chi_minus = {chi}"),
                });
            }
        }
        if let Some(wr) = inv.writhe_for(i) {
            if wr.abs() > 0.0 {
                cands.push(BoundCandidate {
                    formula: FormulaId::WritheBuckSimon,
                    value: bound_writhe(wr, WritheBound::BuckSimon),
                    inputs: format!("Wr = {wr:.6}"),
                });
            }
        }
        let (best_value, best_formula) = cands
            .iter()
            .map(|c| (c.value, c.formula))
            .fold((0.0, FormulaId::None), |acc, c| if c.0 > acc.0 { c } else { acc });
        per_component.push(ComponentBound {
            component: i,
            best_value,
            best_formula,
            candidates: cands,
        });
    }
    let total = per_component.iter().map(|c| c.best_value).sum();
    let crossing = inv
        .link_crossing_number()
        .map(|n| bound_crossing_asymptotic(n as usize));
    Ok(BoundReport {
        per_component,
        total_lower_bound: total,
        crossing_asymptotic: crossing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn peri_table() {
        assert_relative_eq!(peri(1).unwrap(), 2.0 * PI);
        assert_relative_eq!(peri(2).unwrap(), 2.0 * PI + 4.0);
        assert_relative_eq!(peri(3).unwrap(), 2.0 * PI + 6.0);
        assert_relative_eq!(peri(4).unwrap(), 2.0 * PI + 8.0);
        assert_relative_eq!(peri(5).unwrap(), 2.0 * PI + 10.0);
        assert_relative_eq!(peri(6).unwrap(), 2.0 * PI + 2.0 * (4.0 + 3f64.sqrt()));
        assert!((peri(6).unwrap() - 17.7474).abs() < 1e-3);
        assert_eq!(peri(7), Err(BoundError::PeriUnknown(7)));
    }

    #[test]
    fn linked_sublink_bounds() {
        assert_relative_eq!(bound_linked_sublinks(0).unwrap(), 0.0);
        assert_relative_eq!(bound_linked_sublinks(1).unwrap(), 4.0 * PI);
        assert!((bound_linked_sublinks(1).unwrap() - 12.566).abs() < 1e-3);
        assert_relative_eq!(bound_linked_sublinks(2).unwrap(), 4.0 * PI + 4.0);
    }

    #[test]
    fn linking_bounds() {
        assert_relative_eq!(bound_linking(0), 0.0);
        assert_relative_eq!(bound_linking(1), 4.0 * PI);
        let two = bound_linking(2);
        assert!((two - 15.17).abs() < 0.01);
        assert!((2.0 * two - 4.0 * PI * (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((2.0 * two - 30.34).abs() < 0.01);
    }

    #[test]
    fn pov_bounds() {
        assert_relative_eq!(bound_pov(5, false).unwrap(), 0.0);
        let p2 = bound_pov(2, true).unwrap();
        assert!((p2 - 21.45).abs() < 0.01);
        assert_relative_eq!(p2, 2.0 * PI * (2.0 + 2f64.sqrt()), epsilon = 1e-12);
        let p3 = bound_pov(3, true).unwrap();
        assert!((p3 - 23.45).abs() < 0.01);
        assert_eq!(bound_pov(1, true), Err(BoundError::PovTooSmall(1)));
    }

    #[test]
    fn ac_and_genus_bounds() {
        let borr = bound_ac(2.0, false);
        assert!((borr - 15.17).abs() < 0.01);
        assert!((3.0 * borr - 45.51).abs() < 0.02);
        assert_relative_eq!(bound_ac(1.0, true), 6.0 * PI, epsilon = 1e-12);
        assert_relative_eq!(bound_genus(1, true), 6.0 * PI, epsilon = 1e-12);
        assert!((bound_genus(1, true) - 18.85).abs() < 0.01);
        assert_relative_eq!(bound_genus(0, true), 0.0);
        assert_relative_eq!(bound_chi(5), 2.0 * PI * (1.0 + 5f64.sqrt()), epsilon = 1e-12);
        // ac(2g-1) with g = 1 matches the genus form
        assert_relative_eq!(bound_ac(1.0, true), bound_genus(1, true), epsilon = 1e-12);
    }

    #[test]
    fn writhe_bounds() {
        assert_relative_eq!(bound_writhe(0.0, WritheBound::Cone), 0.0);
        assert_relative_eq!(bound_writhe(4.0, WritheBound::Cone), 4.0 * PI, epsilon = 1e-12);
        assert_relative_eq!(bound_writhe(4.0, WritheBound::BuckSimon), 8.0 * PI, epsilon = 1e-12);
        for wr in [0.0, 0.3, 1.0, 2.5, 9.0] {
            assert!(bound_writhe(wr, WritheBound::BuckSimon) >= bound_writhe(wr, WritheBound::Cone));
        }
    }

    #[test]
    fn crossing_asymptotic() {
        assert_relative_eq!(bound_crossing_asymptotic(0), 0.0);
        let three = bound_crossing_asymptotic(3);
        assert!((three - (12.0 * PI / 11.0).powf(0.75)).abs() < 1e-12);
        assert!((three - 2.52).abs() < 0.01);
    }

    #[test]
    fn monotone_in_arguments() {
        let mut prev = 0.0;
        for n in 1..=6 {
            let v = bound_linked_sublinks(n).unwrap();
            assert!(v > prev);
            prev = v;
        }
        for (f, g) in [(1u32, 2u32), (2, 3), (3, 9)] {
            assert!(bound_linking(f) < bound_linking(g));
            assert!(bound_pov(f.max(2), true).unwrap() <= bound_pov(g.max(2), true).unwrap());
            assert!(bound_genus(f, true) < bound_genus(g, true));
            assert!(bound_chi(f) < bound_chi(g));
        }
        // dominance: ac bound is at least the linking bound for knotted components
        for lk in 1..5u32 {
            assert!(bound_ac(lk as f64, true) >= bound_linking(lk));
        }
        // any nontrivial knot has the 2*pi*(2 + sqrt(2)) floor
        assert!(bound_pov(2, true).unwrap() >= 2.0 * PI * (2.0 + 2f64.sqrt()) - 1e-12);
    }
}
