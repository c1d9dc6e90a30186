//! Hopf-ideal verification and the factor presentation obtained by sending
//! the central `h'` family to zero. In the quotient the multiplications are
//! classical: both ladders collapse to `[h_k, x_l] = +-4p x_{k+l}` and
//! `[e_k, f_l] = 0`, while the first raising mode of `h` keeps the single
//! nontrivial coproduct term `-4p f_0 (x) e_0`.

use std::collections::BTreeMap;

use super::{comm_raw, pp, HopfPresentation, PresKind, Relation};
use crate::ncalg::{e, f, h, AlgError, CommTable, Family, GenId, NCPoly};
use crate::scalar::Scalar;

/// Result of checking that a set of generator families spans a Hopf ideal.
#[derive(Clone, Debug)]
pub struct IdealReport {
    pub is_ideal: bool,
    pub failures: Vec<String>,
}

/// Check the two-sided-ideal and coideal conditions for the span of the
/// given families: every bracket `[x, j]` must land back in the ideal, the
/// coproduct of an ideal generator must vanish once ideal generators are set
/// to zero on both legs, and the counit kills ideal generators by
/// construction.
pub fn verify_hopf_ideal(pres: &HopfPresentation, ideal: &[Family]) -> IdealReport {
    let mut failures = Vec::new();
    let in_ideal = |w: &crate::ncalg::Word| w.0.iter().any(|g| ideal.contains(&g.family));
    for ((a, b), v) in pres.table.iter() {
        let a_in = ideal.contains(&a.family);
        let b_in = ideal.contains(&b.family);
        if !a_in && !b_in {
            continue;
        }
        for (w, c) in v.terms() {
            if !in_ideal(w) {
                failures.push(format!("[{a},{b}] escapes the ideal: {c}*{w}"));
            }
        }
    }
    for (g, d) in &pres.coproducts {
        if !ideal.contains(&g.family) {
            continue;
        }
        let mut outside = d.clone();
        for fam in ideal {
            outside = outside.without_family(*fam);
        }
        if !outside.is_zero() {
            failures.push(format!(
                "D({g}) has a component outside J(x)Y + Y(x)J: {outside}"
            ));
        }
    }
    IdealReport {
        is_ideal: failures.is_empty(),
        failures,
    }
}

/// Quotient the boundary presentation by the ideal generated by the `h'`
/// family. The ideal property is verified first; the resulting table and
/// coproducts are asserted against their closed forms.
pub fn build_factor(boundary: &HopfPresentation) -> Result<HopfPresentation, AlgError> {
    assert_eq!(
        boundary.kind,
        PresKind::Boundary,
        "quotient starts from the boundary"
    );
    let report = verify_hopf_ideal(boundary, &[Family::Hp]);
    assert!(
        report.is_ideal,
        "h' does not span a Hopf ideal: {:?}",
        report.failures
    );

    let families = vec![Family::F, Family::H, Family::E];
    let cap = boundary.table.cap();
    let mut table = CommTable::new(&families, cap);
    for ((a, b), v) in boundary.table.iter() {
        if a.family == Family::Hp || b.family == Family::Hp {
            continue;
        }
        table.insert_commutator(*a, *b, v.without_family(Family::Hp))?;
    }
    debug_assert!(table.is_complete());

    let mut coproducts = BTreeMap::new();
    for (g, d) in &boundary.coproducts {
        if g.family == Family::Hp {
            continue;
        }
        coproducts.insert(*g, d.without_family(Family::Hp));
    }

    let pres = HopfPresentation {
        name: "factor".into(),
        kind: PresKind::FactorC,
        families,
        mode_bound: boundary.mode_bound,
        table,
        coproducts,
    };
    let deviations = factor_closed_form_deviations(&pres, pres.mode_bound)?;
    assert!(
        deviations.is_empty(),
        "quotient deviates from the closed form: {deviations:?}"
    );
    Ok(pres)
}

/// Compare the quotient table and coproducts with their closed forms:
/// `[h_k, e_l] = 4p e_{k+l}`, `[h_k, f_l] = -4p f_{k+l}`, everything else
/// zero; coproducts trivial except on the `h` family, whose mode-k value
/// carries `-4p sum f_a (x) e_b` over `a + b = k - 1`.
pub fn factor_closed_form_deviations(
    pres: &HopfPresentation,
    max_mode: u8,
) -> Result<Vec<String>, AlgError> {
    let p = pp();
    let mut bad = Vec::new();
    for k in 0..=max_mode {
        for l in 0..=max_mode {
            if u16::from(k) + u16::from(l) > u16::from(pres.table.cap()) {
                continue;
            }
            let he = pres.table.bracket(h(k), e(l))?;
            if he != NCPoly::gen(e(k + l)).scale(&p.mul(&Scalar::int(4))) {
                bad.push(format!("[h{k}, e{l}] = {he}"));
            }
            let hf = pres.table.bracket(h(k), f(l))?;
            if hf != NCPoly::gen(f(k + l)).scale(&p.mul(&Scalar::int(-4))) {
                bad.push(format!("[h{k}, f{l}] = {hf}"));
            }
            if !pres.table.bracket(e(k), f(l))?.is_zero() {
                bad.push(format!("[e{k}, f{l}] nonzero"));
            }
            if k > l {
                for (fa, tag) in [(e as fn(u8) -> GenId, "e"), (f, "f"), (h, "h")] {
                    if !pres.table.bracket(fa(k), fa(l))?.is_zero() {
                        bad.push(format!("[{tag}{k}, {tag}{l}] nonzero"));
                    }
                }
            }
        }
    }
    for g in pres.generators(max_mode) {
        let d = pres.coproduct(g)?;
        let mut expect = crate::ncalg::TensorPoly::primitive(g);
        if g.family == Family::H {
            for a in 0..g.mode {
                let b = g.mode - 1 - a;
                expect = expect.add(
                    &crate::ncalg::TensorPoly::pair(&NCPoly::gen(f(a)), &NCPoly::gen(e(b)))
                        .scale(&p.mul(&Scalar::int(-4))),
                );
            }
        }
        if *d != expect {
            bad.push(format!("D({g}) = {d}"));
        }
    }
    Ok(bad)
}

/// Relation instances of the factor presentation with modes `<= m`, in the
/// classical (undeformed) form.
pub(crate) fn factor_relations(m: u8) -> Vec<Relation> {
    let p = pp();
    let mut rels = Vec::new();
    for k in 0..=m {
        for l in 0..k {
            rels.push(Relation {
                label: format!("[h{k},h{l}] = 0"),
                lhs: comm_raw(h(k), h(l)),
                rhs: NCPoly::zero(),
            });
        }
    }
    for k in 0..=m {
        for l in 0..=m {
            rels.push(Relation {
                label: format!("[e{k},f{l}] = 0"),
                lhs: comm_raw(e(k), f(l)),
                rhs: NCPoly::zero(),
            });
        }
    }
    for l in 0..=m {
        rels.push(Relation {
            label: format!("[h0,e{l}] = 4p e{l}"),
            lhs: comm_raw(h(0), e(l)),
            rhs: NCPoly::gen(e(l)).scale(&p.mul(&Scalar::int(4))),
        });
        rels.push(Relation {
            label: format!("[h0,f{l}] = -4p f{l}"),
            lhs: comm_raw(h(0), f(l)),
            rhs: NCPoly::gen(f(l)).scale(&p.mul(&Scalar::int(-4))),
        });
    }
    for k in 0..m {
        for l in 0..m {
            for (fa, fb) in [
                (h as fn(u8) -> GenId, e as fn(u8) -> GenId),
                (h, f),
                (e, e),
                (f, f),
            ] {
                rels.push(Relation {
                    label: format!("[{},{}] = [{},{}]", fa(k + 1), fb(l), fa(k), fb(l + 1)),
                    lhs: comm_raw(fa(k + 1), fb(l)),
                    rhs: comm_raw(fa(k), fb(l + 1)),
                });
            }
        }
    }
    rels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::TensorPoly;
    use crate::presentations::{build_boundary, build_y_sl2};
    use crate::scalar::Scalar;

    #[test]
    fn hp_family_is_a_hopf_ideal() {
        let boundary = build_boundary(3).unwrap();
        let report = verify_hopf_ideal(&boundary, &[Family::Hp]);
        assert!(report.is_ideal, "{:?}", report.failures);
    }

    #[test]
    fn e_family_is_not_an_ideal_at_the_boundary() {
        // Oracle: [e_k, f_l] = (p/2) h'_{k+l} lies outside the span of e.
        let boundary = build_boundary(2).unwrap();
        let report = verify_hopf_ideal(&boundary, &[Family::E]);
        assert!(!report.is_ideal);
    }

    #[test]
    fn h_family_is_not_an_ideal_upstairs() {
        // Oracle: [h_0, e_l] = 2 e_l escapes the span of h.
        let pres = build_y_sl2(2).unwrap();
        let report = verify_hopf_ideal(&pres, &[Family::H]);
        assert!(!report.is_ideal);
    }

    #[test]
    fn quotient_closed_form_examples() {
        let factor = build_factor(&build_boundary(3).unwrap()).unwrap();
        assert!(factor.table.bracket(e(1), f(2)).unwrap().is_zero());
        // Oracle: iterating [h_{k+1}, e_l] = [h_k, e_{l+1}] down to the
        // mode-0 action gives [h_2, e_1] = [h_0, e_3] = 4p e_3.
        let mut l = 1u8;
        for _ in 0..2 {
            l += 1;
        }
        let expect = NCPoly::gen(e(l)).scale(&pp().mul(&Scalar::int(4)));
        assert_eq!(factor.table.bracket(h(2), e(1)).unwrap(), expect);
    }

    #[test]
    fn quotient_coproducts() {
        let factor = build_factor(&build_boundary(2).unwrap()).unwrap();
        // Primitive e, f and h_0.
        for g in [e(0), e(1), e(2), f(0), f(1), f(2), h(0)] {
            assert_eq!(factor.coproducts[&g], TensorPoly::primitive(g), "{g}");
        }
        // D(h_1) = prim - 4p f_0 (x) e_0.
        let expect = TensorPoly::primitive(h(1)).add(
            &TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(e(0)))
                .scale(&pp().mul(&Scalar::int(-4))),
        );
        assert_eq!(factor.coproducts[&h(1)], expect);
        // D(h_2) = prim - 4p (f_0 (x) e_1 + f_1 (x) e_0).
        let expect2 = TensorPoly::primitive(h(2))
            .add(
                &TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(e(1)))
                    .scale(&pp().mul(&Scalar::int(-4))),
            )
            .add(
                &TensorPoly::pair(&NCPoly::gen(f(1)), &NCPoly::gen(e(0)))
                    .scale(&pp().mul(&Scalar::int(-4))),
            );
        assert_eq!(factor.coproducts[&h(2)], expect2);
    }
}
