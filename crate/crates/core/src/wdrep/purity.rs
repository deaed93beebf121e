use std::collections::BTreeMap;

use num_rational::Rational64;

use super::WDRep;
use crate::error::{Error, Result};
use crate::irred::constituents_of;
use crate::scalar::Scalar;

/// Outcome of the purity test. `is_pure` iff `violations` is empty iff
/// `weight` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub is_pure: bool,
    pub weight: Option<i64>,
    pub violations: Vec<PurityViolation>,
}

/// A constituent of `gr_i` whose weight is not `w + i` for the reference
/// weight `w` (or is not an integer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityViolation {
    pub grading: i64,
    /// The `phi^f`-eigenvalue labelling the offending constituent.
    pub eigenvalue: Scalar,
    pub observed_weight: Rational64,
}

impl WDRep {
    /// Checks that every constituent of `gr_i` has weight `w + i` for one
    /// integer `w`.
    ///
    /// When the weights disagree, the reference `w` is the integral candidate
    /// carried by the most dimensions (smallest on ties) and every other
    /// constituent is reported.
    pub fn purity(&self) -> Result<PurityReport> {
        let fil = self.monodromy_filtration()?;
        let mut entries = Vec::new();
        for g in &fil.gradings {
            let cs = constituents_of(self.ctx(), self.n(), &g.tame, &g.frobenius)?;
            for (ir, mult) in cs.iter() {
                let k = ir.alpha().weil_weight().ok_or(Error::EigenvalueOutsideClass)?;
                let u = Rational64::new(k, ir.orbit_size() as i64);
                entries.push((g.k, ir.alpha().clone(), u, ir.orbit_size() * mult));
            }
        }
        let mut support: BTreeMap<i64, usize> = BTreeMap::new();
        for (i, _, u, dim) in &entries {
            let implied = u - Rational64::from_integer(*i);
            if implied.is_integer() {
                *support.entry(implied.to_integer()).or_default() += dim;
            }
        }
        let reference = support.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(w, _)| *w);
        let violations: Vec<PurityViolation> = entries
            .into_iter()
            .filter(|(i, _, u, _)| reference.is_none_or(|w| *u != Rational64::from_integer(w + i)))
            .map(|(grading, eigenvalue, observed_weight, _)| PurityViolation { grading, eigenvalue, observed_weight })
            .collect();
        let is_pure = violations.is_empty();
        Ok(PurityReport { is_pure, weight: if is_pure { reference } else { None }, violations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldCtx;

    #[test]
    fn trivial_weight_zero() {
        let e = FieldCtx::new(1, 2).unwrap();
        let rep = WDRep::trivial(&e, 1).purity().unwrap();
        assert_eq!(rep, PurityReport { is_pure: true, weight: Some(0), violations: vec![] });
    }

    #[test]
    fn sp_trivial_weights() {
        let e = FieldCtx::new(1, 3).unwrap();
        for t in 1..=4 {
            let r = WDRep::sp(t, &WDRep::trivial(&e, 1)).unwrap();
            assert_eq!(r.purity().unwrap().weight, Some(1 - t as i64));
        }
    }

    #[test]
    fn sp2_plus_trivial_is_mixed() {
        let e = FieldCtx::new(1, 2).unwrap();
        let triv = WDRep::trivial(&e, 1);
        let r = WDRep::sp(2, &triv).unwrap().direct_sum(&triv).unwrap();
        let rep = r.purity().unwrap();
        assert!(!rep.is_pure);
        assert_eq!(rep.weight, None);
        // Sp_2 carries two dimensions at w = -1; the extra line at gr_0 is off
        assert_eq!(
            rep.violations,
            vec![PurityViolation { grading: 0, eigenvalue: e.one(), observed_weight: Rational64::from_integer(0) }]
        );
    }

    #[test]
    fn twist_shifts_weight() {
        let e = FieldCtx::new(1, 2).unwrap();
        let r = WDRep::sp(2, &WDRep::trivial(&e, 1)).unwrap();
        assert_eq!(r.twist_psi(5).purity().unwrap().weight, Some(4));
    }

    #[test]
    fn half_integral_weight_is_violation() {
        // f = 2 irreducible with alpha = s: weight 1/2
        let e = FieldCtx::new(3, 2).unwrap();
        let ir = crate::irred::InducedIrrep::new(&e, 3, 1, e.s()).unwrap();
        let rep = ir.to_rep().purity().unwrap();
        assert!(!rep.is_pure);
        assert_eq!(rep.violations[0].observed_weight, Rational64::new(1, 2));
    }
}
