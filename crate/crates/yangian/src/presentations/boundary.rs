//! The boundary presentation: the deformation over the cotangent-bundle
//! algebra of the two-dimensional Borel subalgebra. The `h'` family is
//! central on `e` and `f`, the raising/lowering ladders carry weight `p^2`,
//! and `[e_k, f_l]` lands in the `h'` family.

use std::collections::BTreeMap;

use super::{
    anti_raw, comm_raw, derive_ladder, derive_same_family, insert_zero_pairs, pp, HopfPresentation,
    PresKind, Relation,
};
use crate::ncalg::{e, f, h, hp, AlgError, CommTable, Family, GenId, NCPoly, TensorPoly, Word};
use crate::scalar::Scalar;

/// Build the boundary presentation with coproducts for modes `<= n`.
pub fn build_boundary(n: u8) -> Result<HopfPresentation, AlgError> {
    assert!(n >= 1, "mode bound must be at least 1");
    let cap = 2 * n;
    let families = vec![Family::F, Family::Hp, Family::H, Family::E];
    let mut table = CommTable::new(&families, cap);
    let p = pp();
    let p2 = p.mul(&p);

    insert_zero_pairs(&mut table, Family::H, Family::H)?;
    insert_zero_pairs(&mut table, Family::Hp, Family::Hp)?;
    insert_zero_pairs(&mut table, Family::H, Family::Hp)?;
    insert_zero_pairs(&mut table, Family::Hp, Family::E)?;
    insert_zero_pairs(&mut table, Family::Hp, Family::F)?;
    // [e_k, f_l] = (p/2) h'_{k+l}
    for k in 0..=cap {
        for l in 0..=(cap - k) {
            let rhs = NCPoly::gen(hp(k + l)).scale(&p.mul(&Scalar::rational(1, 2)));
            table.insert_commutator(e(k), f(l), rhs)?;
        }
    }
    derive_ladder(
        &mut table,
        Family::H,
        Family::E,
        |l| NCPoly::gen(e(l)).scale(&p.mul(&Scalar::int(4))),
        &p2,
        Family::Hp,
    )?;
    derive_ladder(
        &mut table,
        Family::H,
        Family::F,
        |l| NCPoly::gen(f(l)).scale(&p.mul(&Scalar::int(-4))),
        &p2.neg(),
        Family::Hp,
    )?;
    derive_same_family(&mut table, Family::E, &Scalar::zero())?;
    derive_same_family(&mut table, Family::F, &Scalar::zero())?;
    debug_assert!(table.is_complete());

    let mut coproducts = BTreeMap::new();
    for g in [e(0), f(0), h(0), hp(0)] {
        coproducts.insert(g, TensorPoly::primitive(g));
    }
    let half_p = p.mul(&Scalar::rational(1, 2));
    coproducts.insert(
        e(1),
        TensorPoly::primitive(e(1))
            .add(&TensorPoly::pair(&NCPoly::gen(hp(0)), &NCPoly::gen(e(0))).scale(&half_p)),
    );
    coproducts.insert(
        f(1),
        TensorPoly::primitive(f(1))
            .add(&TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(hp(0))).scale(&half_p)),
    );
    // Raising: e_{l+1} = (1/(4p)) ([h_1, e_l] - p^2 {h'_0, e_l}); mirrored
    // for f. The h' modes come from [e_k, f_0] = (p/2) h'_k; the h modes
    // follow the closed current form (they are not bracket-generated here).
    let d_h1 = boundary_h_coproduct(1);
    coproducts.insert(h(1), d_h1.clone());
    coproducts.insert(
        hp(1),
        coproducts[&e(1)]
            .commutator(&coproducts[&f(0)], &table)?
            .scale(&Scalar::int(2).div(&p).unwrap()),
    );
    let quarter_p_inv = Scalar::one().div(&p.mul(&Scalar::int(4))).unwrap();
    for k in 1..n {
        let d_ek = &coproducts[&e(k)];
        let d_fk = &coproducts[&f(k)];
        let d_hp0 = &coproducts[&hp(0)];
        let d_ek1 = d_h1
            .commutator(d_ek, &table)?
            .sub(&d_hp0.anticommutator(d_ek, &table)?.scale(&p2))
            .scale(&quarter_p_inv);
        let d_fk1 = d_h1
            .commutator(d_fk, &table)?
            .add(&d_hp0.anticommutator(d_fk, &table)?.scale(&p2))
            .scale(&quarter_p_inv.neg());
        coproducts.insert(e(k + 1), d_ek1);
        coproducts.insert(f(k + 1), d_fk1);
        coproducts.insert(
            hp(k + 1),
            coproducts[&e(k + 1)]
                .commutator(&coproducts[&f(0)], &table)?
                .scale(&Scalar::int(2).div(&p).unwrap()),
        );
        coproducts.insert(h(k + 1), boundary_h_coproduct(k + 1));
    }

    Ok(HopfPresentation {
        name: "boundary".into(),
        kind: PresKind::Boundary,
        families,
        mode_bound: n,
        table,
        coproducts,
    })
}

/// Mode coefficient of the closed current form of the `h`-family coproduct:
/// primitive part, `(p/2)` cross terms with `h'`, and the `-4p f(..) (x) (..)e`
/// block expanded to mode level.
fn boundary_h_coproduct(k: u8) -> TensorPoly {
    let p = pp();
    let half_p = p.mul(&Scalar::rational(1, 2));
    let mut d = TensorPoly::primitive(h(k));
    for a in 0..k {
        let b = k - 1 - a;
        d = d.add(&TensorPoly::pair(&NCPoly::gen(hp(a)), &NCPoly::gen(h(b))).scale(&half_p));
        d = d.add(&TensorPoly::pair(&NCPoly::gen(h(a)), &NCPoly::gen(hp(b))).scale(&half_p));
        d = d.add(
            &TensorPoly::pair(&NCPoly::gen(f(a)), &NCPoly::gen(e(b)))
                .scale(&p.mul(&Scalar::int(-4))),
        );
    }
    if k >= 2 {
        let c2 = p.mul(&p).mul(&Scalar::int(-2));
        for a in 0..=(k - 2) {
            for b in 0..=(k - 2 - a) {
                let c = k - 2 - a - b;
                let fa_hpb = NCPoly::term(Word(vec![f(a), hp(b)]), Scalar::one());
                let hpb_ec = NCPoly::term(Word(vec![hp(b), e(c)]), Scalar::one());
                d = d.add(&TensorPoly::pair(&fa_hpb, &NCPoly::gen(e(c))).scale(&c2));
                d = d.add(&TensorPoly::pair(&NCPoly::gen(f(a)), &hpb_ec).scale(&c2));
            }
        }
    }
    if k >= 3 {
        let c3 = pp().pow(3).unwrap().neg();
        for a in 0..=(k - 3) {
            for b in 0..=(k - 3 - a) {
                for c in 0..=(k - 3 - a - b) {
                    let dd = k - 3 - a - b - c;
                    let left = NCPoly::term(Word(vec![f(a), hp(b)]), Scalar::one());
                    let right = NCPoly::term(Word(vec![hp(c), e(dd)]), Scalar::one());
                    d = d.add(&TensorPoly::pair(&left, &right).scale(&c3));
                }
            }
        }
    }
    d
}

/// Relation instances of the boundary presentation with modes `<= m`.
pub(crate) fn boundary_relations(m: u8) -> Vec<Relation> {
    let p = pp();
    let p2 = p.mul(&p);
    let mut rels = Vec::new();
    type GenCtor = fn(u8) -> GenId;
    let zero_pairs: [(GenCtor, GenCtor, &str); 3] =
        [(h, h, "h,h"), (hp, hp, "hp,hp"), (h, hp, "h,hp")];
    for (fa, fb, label) in zero_pairs {
        for k in 0..=m {
            for l in 0..=m {
                let (a, b) = (fa(k), fb(l));
                if a <= b {
                    continue;
                }
                rels.push(Relation {
                    label: format!("[{a},{b}] = 0 ({label})"),
                    lhs: comm_raw(a, b),
                    rhs: NCPoly::zero(),
                });
            }
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
        rels.push(Relation {
            label: format!("[hp0,e{l}] = 0"),
            lhs: comm_raw(hp(0), e(l)),
            rhs: NCPoly::zero(),
        });
        rels.push(Relation {
            label: format!("[hp0,f{l}] = 0"),
            lhs: comm_raw(hp(0), f(l)),
            rhs: NCPoly::zero(),
        });
    }
    for k in 0..=m {
        for l in 0..=m {
            if k + l <= m {
                rels.push(Relation {
                    label: format!("[e{k},f{l}] = (p/2) hp{}", k + l),
                    lhs: comm_raw(e(k), f(l)),
                    rhs: NCPoly::gen(hp(k + l)).scale(&p.mul(&Scalar::rational(1, 2))),
                });
            }
        }
    }
    for k in 0..m {
        for l in 0..m {
            rels.push(Relation {
                label: format!("[h{},e{l}] - [h{k},e{}] = p^2{{hp{k},e{l}}}", k + 1, l + 1),
                lhs: comm_raw(h(k + 1), e(l)).sub(&comm_raw(h(k), e(l + 1))),
                rhs: anti_raw(hp(k), e(l)).scale(&p2),
            });
            rels.push(Relation {
                label: format!("[h{},f{l}] - [h{k},f{}] = -p^2{{hp{k},f{l}}}", k + 1, l + 1),
                lhs: comm_raw(h(k + 1), f(l)).sub(&comm_raw(h(k), f(l + 1))),
                rhs: anti_raw(hp(k), f(l)).scale(&p2.neg()),
            });
            for (fa, fb, tag) in [
                (hp as fn(u8) -> GenId, e as fn(u8) -> GenId, "hp,e"),
                (hp, f, "hp,f"),
                (e, e, "e,e"),
                (f, f, "f,f"),
            ] {
                rels.push(Relation {
                    label: format!(
                        "[{},{}] - [{},{}] = 0 ({tag})",
                        fa(k + 1),
                        fb(l),
                        fa(k),
                        fb(l + 1)
                    ),
                    lhs: comm_raw(fa(k + 1), fb(l)).sub(&comm_raw(fa(k), fb(l + 1))),
                    rhs: NCPoly::zero(),
                });
            }
        }
    }
    rels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_the_boundary_structure() {
        let pres = build_boundary(3).unwrap();
        let p = pp();
        // h' is central on e.
        for k in 0..=3u8 {
            for l in 0..=3u8 {
                assert_eq!(pres.table.bracket(hp(k), e(l)).unwrap(), NCPoly::zero());
            }
        }
        // [e_0, f_0] = (p/2) h'_0
        assert_eq!(
            pres.table.bracket(e(0), f(0)).unwrap(),
            NCPoly::gen(hp(0)).scale(&p.mul(&Scalar::rational(1, 2)))
        );
        // [h_1, e_0] = 4p e_1 + 2p^2 h'_0 e_0
        let expect = NCPoly::gen(e(1))
            .scale(&p.mul(&Scalar::int(4)))
            .add(&NCPoly::word_of(&[hp(0), e(0)]).scale(&p.mul(&p).mul(&Scalar::int(2))));
        assert_eq!(pres.table.bracket(h(1), e(0)).unwrap(), expect);
        // e-family and f-family are commutative at the boundary.
        assert_eq!(pres.table.bracket(e(2), e(0)).unwrap(), NCPoly::zero());
        assert_eq!(pres.table.bracket(f(3), f(1)).unwrap(), NCPoly::zero());
    }

    #[test]
    fn mode_one_coproducts() {
        let pres = build_boundary(2).unwrap();
        let p = pp();
        let half_p = p.mul(&Scalar::rational(1, 2));
        // D(h'_1) = prim + (p/2) h'_0 (x) h'_0
        let expect = TensorPoly::primitive(hp(1))
            .add(&TensorPoly::pair(&NCPoly::gen(hp(0)), &NCPoly::gen(hp(0))).scale(&half_p));
        assert_eq!(pres.coproducts[&hp(1)], expect);
        // D(h_1) contains -4p f_0 (x) e_0
        let d_h1 = &pres.coproducts[&h(1)];
        let fe = Word(vec![f(0)]);
        let e0 = Word(vec![e(0)]);
        let coeff = d_h1
            .terms()
            .find(|(legs, _)| legs[0] == fe && legs[1] == e0)
            .map(|(_, c)| c.clone())
            .unwrap();
        assert_eq!(coeff, p.mul(&Scalar::int(-4)));
    }

    #[test]
    fn raised_e_coproduct_matches_the_current_form() {
        // The recursion must reproduce
        // D(e_2) = prim + (p/2)(h'_0 (x) e_1 + h'_1 (x) e_0).
        let pres = build_boundary(2).unwrap();
        let half_p = pp().mul(&Scalar::rational(1, 2));
        let expect = TensorPoly::primitive(e(2))
            .add(&TensorPoly::pair(&NCPoly::gen(hp(0)), &NCPoly::gen(e(1))).scale(&half_p))
            .add(&TensorPoly::pair(&NCPoly::gen(hp(1)), &NCPoly::gen(e(0))).scale(&half_p));
        assert_eq!(pres.coproducts[&e(2)], expect);
    }

    #[test]
    fn dual_generator_coproducts_are_symmetric_under_p() {
        // Every (D - D^op) difference is divisible by p.
        let pres = build_boundary(2).unwrap();
        for (g, d) in &pres.coproducts {
            let diff = d.sub(&d.flip());
            for (_, c) in diff.terms() {
                assert!(
                    c.divisible_by_param(crate::scalar::ParamId::P, 1),
                    "difference for {g} not divisible by p: {c}"
                );
            }
        }
    }
}
