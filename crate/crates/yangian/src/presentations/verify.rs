//! Hopf-axiom verification on a constructed presentation.
//!
//! Every check produces an exact residual; a check passes iff the residual
//! normal-orders to zero. Failures carry the printed residual so reports can
//! show what broke.

use super::{HopfPresentation, PresKind};
use crate::ncalg::{AlgError, GenId, NCPoly, TensorPoly};
use crate::scalar::ParamId;

/// Mode windows for the individual checks.
#[derive(Clone, Copy, Debug)]
pub struct VerifyBounds {
    /// Jacobi residuals on all generator triples with mode sum below this.
    pub jacobi_mode_sum: u8,
    /// Coproduct homomorphy on relation instances with modes below this.
    pub relation_max_mode: u8,
    /// Coassociativity and counit axioms on generators with modes below this.
    pub coalgebra_max_mode: u8,
}

impl VerifyBounds {
    /// The convention used by the command-line driver: `max_mode = m` checks
    /// Jacobi triples with mode sum `<= m + 1` and coalgebra data `<= m - 1`.
    pub fn for_max_mode(m: u8) -> VerifyBounds {
        VerifyBounds {
            jacobi_mode_sum: m + 1,
            relation_max_mode: m.saturating_sub(1),
            coalgebra_max_mode: m.saturating_sub(1),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct HopfCheck {
    pub name: String,
    pub passed: bool,
    pub residual: Option<String>,
}

impl HopfCheck {
    fn pass(name: impl Into<String>) -> HopfCheck {
        HopfCheck {
            name: name.into(),
            passed: true,
            residual: None,
        }
    }

    fn from_residual(name: impl Into<String>, residual: &NCPoly) -> HopfCheck {
        if residual.is_zero() {
            HopfCheck::pass(name)
        } else {
            HopfCheck {
                name: name.into(),
                passed: false,
                residual: Some(residual.to_string()),
            }
        }
    }

    fn from_tensor_residual(name: impl Into<String>, residual: &TensorPoly) -> HopfCheck {
        if residual.is_zero() {
            HopfCheck::pass(name)
        } else {
            HopfCheck {
                name: name.into(),
                passed: false,
                residual: Some(residual.to_string()),
            }
        }
    }
}

/// Run the full Hopf suite: Jacobi consistency of the table, the defining
/// relations themselves, coproduct homomorphy, coassociativity, and the
/// counit axioms. For the boundary presentation the first-order co-Lie
/// divisibility by `p` is appended.
pub fn verify_hopf(
    pres: &HopfPresentation,
    bounds: VerifyBounds,
) -> Result<Vec<HopfCheck>, AlgError> {
    let mut checks = Vec::new();
    checks.extend(jacobi_checks(pres, bounds.jacobi_mode_sum)?);
    checks.extend(relation_checks(pres, bounds.relation_max_mode)?);
    checks.extend(homomorphy_checks(pres, bounds.relation_max_mode)?);
    checks.extend(coassociativity_checks(pres, bounds.coalgebra_max_mode)?);
    checks.extend(counit_checks(pres, bounds.coalgebra_max_mode)?);
    if pres.kind == PresKind::Boundary {
        checks.extend(colie_divisibility_checks(pres, bounds.coalgebra_max_mode));
    }
    Ok(checks)
}

/// Jacobi residual `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]` over the table; the
/// local consistency test for the rewriting system.
pub fn jacobi_checks(
    pres: &HopfPresentation,
    max_mode_sum: u8,
) -> Result<Vec<HopfCheck>, AlgError> {
    let gens = pres.generators(max_mode_sum);
    let table = &pres.table;
    let mut checks = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate().skip(i) {
            for &c in gens.iter().skip(j) {
                let sum = u32::from(a.mode) + u32::from(b.mode) + u32::from(c.mode);
                if sum > u32::from(max_mode_sum) {
                    continue;
                }
                let r = jacobi_residual(a, b, c, table)?;
                checks.push(HopfCheck::from_residual(format!("jacobi({a},{b},{c})"), &r));
            }
        }
    }
    Ok(checks)
}

fn jacobi_residual(
    a: GenId,
    b: GenId,
    c: GenId,
    table: &crate::ncalg::CommTable,
) -> Result<NCPoly, AlgError> {
    let pa = NCPoly::gen(a);
    let pb = NCPoly::gen(b);
    let pc = NCPoly::gen(c);
    let bc = crate::ncalg::commutator(&pb, &pc, table)?;
    let ca = crate::ncalg::commutator(&pc, &pa, table)?;
    let ab = crate::ncalg::commutator(&pa, &pb, table)?;
    let t1 = crate::ncalg::commutator(&pa, &bc, table)?;
    let t2 = crate::ncalg::commutator(&pb, &ca, table)?;
    let t3 = crate::ncalg::commutator(&pc, &ab, table)?;
    Ok(t1.add(&t2).add(&t3))
}

/// The defining relation instances, straightened against the table.
pub fn relation_checks(pres: &HopfPresentation, max_mode: u8) -> Result<Vec<HopfCheck>, AlgError> {
    let mut checks = Vec::new();
    for rel in pres.defining_relations(max_mode) {
        let residual = pres.table.normal_order(&rel.lhs.sub(&rel.rhs))?;
        checks.push(HopfCheck::from_residual(
            format!("relation {}", rel.label),
            &residual,
        ));
    }
    Ok(checks)
}

/// The coproduct extends each relation: `D(lhs) - D(rhs)` straightens to
/// zero in the two-fold tensor algebra.
pub fn homomorphy_checks(
    pres: &HopfPresentation,
    max_mode: u8,
) -> Result<Vec<HopfCheck>, AlgError> {
    let mut checks = Vec::new();
    for rel in pres.defining_relations(max_mode) {
        let lhs = apply_coproduct(pres, &rel.lhs)?;
        let rhs = apply_coproduct(pres, &rel.rhs)?;
        checks.push(HopfCheck::from_tensor_residual(
            format!("coproduct respects {}", rel.label),
            &lhs.sub(&rhs),
        ));
    }
    Ok(checks)
}

/// Extend the coproduct multiplicatively over a raw polynomial.
pub fn apply_coproduct(pres: &HopfPresentation, x: &NCPoly) -> Result<TensorPoly, AlgError> {
    let mut out = TensorPoly::zero(2);
    for (w, c) in x.terms() {
        let mut acc = TensorPoly::unit(2);
        for g in &w.0 {
            acc = acc.mul(pres.coproduct(*g)?, &pres.table)?;
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}

/// `(D (x) id) D(g) = (id (x) D) D(g)` for every generator in range.
pub fn coassociativity_checks(
    pres: &HopfPresentation,
    max_mode: u8,
) -> Result<Vec<HopfCheck>, AlgError> {
    let mut checks = Vec::new();
    for g in pres.generators(max_mode) {
        let d = pres.coproduct(g)?;
        let left = d.coproduct_on_leg(0, &pres.coproducts, &pres.table)?;
        let right = d.coproduct_on_leg(1, &pres.coproducts, &pres.table)?;
        checks.push(HopfCheck::from_tensor_residual(
            format!("coassociativity {g}"),
            &left.sub(&right),
        ));
    }
    Ok(checks)
}

/// `(eps (x) id) D(g) = g = (id (x) eps) D(g)`, plus the algebra-map sanity
/// condition that no table entry carries a constant term.
pub fn counit_checks(pres: &HopfPresentation, max_mode: u8) -> Result<Vec<HopfCheck>, AlgError> {
    let mut checks = Vec::new();
    for g in pres.generators(max_mode) {
        let d = pres.coproduct(g)?;
        let left = d.counit_on_leg(0).sub(&NCPoly::gen(g));
        let right = d.counit_on_leg(1).sub(&NCPoly::gen(g));
        checks.push(HopfCheck::from_residual(format!("counit left {g}"), &left));
        checks.push(HopfCheck::from_residual(
            format!("counit right {g}"),
            &right,
        ));
    }
    let mut bad = Vec::new();
    for ((a, b), v) in pres.table.iter() {
        if !v.constant_term().is_zero() {
            bad.push(format!("[{a},{b}]"));
        }
    }
    checks.push(if bad.is_empty() {
        HopfCheck::pass("counit is an algebra map")
    } else {
        HopfCheck {
            name: "counit is an algebra map".into(),
            passed: false,
            residual: Some(bad.join(", ")),
        }
    });
    Ok(checks)
}

/// First-order co-Lie structure: `(D - D^op)(g)` divisible by `p` for every
/// generator of the boundary presentation.
pub fn colie_divisibility_checks(pres: &HopfPresentation, max_mode: u8) -> Vec<HopfCheck> {
    let mut checks = Vec::new();
    for g in pres.generators(max_mode) {
        let d = match pres.coproduct(g) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let diff = d.sub(&d.flip());
        let ok = diff
            .terms()
            .all(|(_, c)| c.divisible_by_param(ParamId::P, 1));
        checks.push(HopfCheck {
            name: format!("(D - D^op)({g}) divisible by p"),
            passed: ok,
            residual: if ok { None } else { Some(diff.to_string()) },
        });
    }
    checks
}

/// Convenience: every check passed.
pub fn all_pass(checks: &[HopfCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Convenience used by negative-control tests.
pub fn first_failure(checks: &[HopfCheck]) -> Option<&HopfCheck> {
    checks.iter().find(|c| !c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{e, NCPoly};
    use crate::presentations::build_y_sl2;

    #[test]
    fn small_hopf_suite_passes() {
        let pres = build_y_sl2(4).unwrap();
        let checks = verify_hopf(
            &pres,
            VerifyBounds {
                jacobi_mode_sum: 3,
                relation_max_mode: 2,
                coalgebra_max_mode: 2,
            },
        )
        .unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.passed, "failed: {} ({:?})", c.name, c.residual);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut pres = build_y_sl2(3).unwrap();
        pres.table.corrupt_entry(e(1), e(0), NCPoly::zero());
        let checks = verify_hopf(
            &pres,
            VerifyBounds {
                jacobi_mode_sum: 3,
                relation_max_mode: 1,
                coalgebra_max_mode: 1,
            },
        )
        .unwrap();
        let failure = first_failure(&checks);
        assert!(failure.is_some(), "corruption not detected");
        assert!(failure.unwrap().residual.is_some());
    }

    #[test]
    fn counit_example() {
        // (eps (x) id) D(e_1) = e_1.
        let pres = build_y_sl2(2).unwrap();
        let d = pres.coproduct(e(1)).unwrap();
        assert_eq!(d.counit_on_leg(0), NCPoly::gen(e(1)));
    }

    #[test]
    fn homomorphy_detects_wrong_coproduct() {
        let mut pres = build_y_sl2(2).unwrap();
        // Break D(e_1) by dropping its nonprimitive tail.
        pres.coproducts
            .insert(e(1), crate::ncalg::TensorPoly::primitive(e(1)));
        let checks = homomorphy_checks(&pres, 1).unwrap();
        assert!(checks.iter().any(|c| !c.passed));
    }
}
