//! Hopf presentations: the deformed sl(2) mode algebra, its boundary limit
//! over the cotangent-bundle algebra, and the factor algebra, together with
//! coproduct derivation and the verification suites.
//!
//! Tables are derived, not enumerated: the low-mode brackets are seeded and
//! the recursive relations are solved upward in the first index, with
//! same-family base entries fixed by antisymmetry. The derived coproducts of
//! higher modes follow the fixed path `h` via `[e, f]`, `e`/`f` via the
//! bracket with the first raising mode.

mod boundary;
mod gf;
mod limit;
mod molev;
mod quotient;
mod verify;

pub use boundary::build_boundary;
pub use gf::{check_gf_identities, GfCheck};
pub use limit::{parametrize_and_limit, LimitReport, RelationLimit, StratumFate};
pub use molev::check_molev_coproduct;
pub use quotient::{build_factor, factor_closed_form_deviations, verify_hopf_ideal, IdealReport};
pub use verify::{all_pass, first_failure, verify_hopf, HopfCheck, VerifyBounds};

use std::collections::BTreeMap;

use crate::ncalg::{
    anticommutator, e, f, h, AlgError, CommTable, Family, GenId, NCPoly, TensorPoly,
};
use crate::scalar::{ParamId, Scalar};

/// Which presentation a value was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresKind {
    /// Deformed sl(2) mode algebra.
    YSl2,
    /// Boundary algebra over the cotangent bundle of the Borel subalgebra.
    Boundary,
    /// Factor algebra over the contracted composition `[e, f] = 0`.
    FactorC,
}

/// One defining relation instance, kept as raw (unstraightened) polynomials
/// so coproduct homomorphy can be tested honestly.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
}

/// Generators, commutator table, and coproducts of one Hopf presentation.
/// The counit sends every generator to zero and the unit to one.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub name: String,
    pub kind: PresKind,
    pub families: Vec<Family>,
    /// Modes `0..=mode_bound` carry coproducts.
    pub mode_bound: u8,
    /// Table capacity is `2 * mode_bound` so bracket right-hand sides fit.
    pub table: CommTable,
    pub coproducts: BTreeMap<GenId, TensorPoly>,
}

impl HopfPresentation {
    pub fn generators(&self, max_mode: u8) -> Vec<GenId> {
        let mut gens = Vec::new();
        for &fam in &self.families {
            for mode in 0..=max_mode {
                gens.push(GenId::new(fam, mode));
            }
        }
        gens.sort();
        gens
    }

    pub fn coproduct(&self, g: GenId) -> Result<&TensorPoly, AlgError> {
        self.coproducts
            .get(&g)
            .ok_or(AlgError::MissingEntry { a: g, b: g })
    }

    /// All defining relation instances whose generator modes stay `<= max_mode`.
    pub fn defining_relations(&self, max_mode: u8) -> Vec<Relation> {
        match self.kind {
            PresKind::YSl2 => ysl2_relations(max_mode),
            PresKind::Boundary => boundary::boundary_relations(max_mode),
            PresKind::FactorC => quotient::factor_relations(max_mode),
        }
    }

    /// Deterministic textual dump of the table and coproducts.
    pub fn dump(&self) -> String {
        let mut out = format!("presentation {}\n", self.name);
        out.push_str(&format!(
            "mode bound {} (table capacity {})\n",
            self.mode_bound,
            self.table.cap()
        ));
        out.push_str("commutators:\n");
        out.push_str(&self.table.dump());
        out.push_str("coproducts:\n");
        for (g, d) in &self.coproducts {
            out.push_str(&format!("D({g}) = {d}\n"));
        }
        out
    }
}

pub(crate) fn hbar() -> Scalar {
    Scalar::param(ParamId::HBAR)
}

pub(crate) fn pp() -> Scalar {
    Scalar::param(ParamId::P)
}

/// Raw commutator `a b - b a` as an unstraightened polynomial.
pub(crate) fn comm_raw(a: GenId, b: GenId) -> NCPoly {
    NCPoly::word_of(&[a, b]).sub(&NCPoly::word_of(&[b, a]))
}

/// Raw anticommutator `a b + b a`.
pub(crate) fn anti_raw(a: GenId, b: GenId) -> NCPoly {
    NCPoly::word_of(&[a, b]).add(&NCPoly::word_of(&[b, a]))
}

/// Build the deformed sl(2) presentation with coproducts for modes `<= n`.
pub fn build_y_sl2(n: u8) -> Result<HopfPresentation, AlgError> {
    assert!(n >= 1, "mode bound must be at least 1");
    let cap = 2 * n;
    let families = vec![Family::F, Family::H, Family::E];
    let mut table = CommTable::new(&families, cap);

    insert_zero_pairs(&mut table, Family::H, Family::H)?;
    // [e_k, f_l] = h_{k+l}
    for k in 0..=cap {
        for l in 0..=(cap - k) {
            table.insert_commutator(e(k), f(l), NCPoly::gen(h(k + l)))?;
        }
    }
    // [h_0, x_l] = +-2 x_l, then the recursive ladder with weight hbar.
    derive_ladder(
        &mut table,
        Family::H,
        Family::E,
        |l| NCPoly::gen(e(l)).scale(&Scalar::int(2)),
        &hbar(),
        Family::H,
    )?;
    derive_ladder(
        &mut table,
        Family::H,
        Family::F,
        |l| NCPoly::gen(f(l)).scale(&Scalar::int(-2)),
        &hbar().neg(),
        Family::H,
    )?;
    derive_same_family(&mut table, Family::E, &hbar())?;
    derive_same_family(&mut table, Family::F, &hbar().neg())?;
    debug_assert!(table.is_complete());

    // Coproducts: modes 0 primitive; the two seeded mode-1 values; the rest
    // derived through the table.
    let mut coproducts = BTreeMap::new();
    for g in [e(0), f(0), h(0)] {
        coproducts.insert(g, TensorPoly::primitive(g));
    }
    let d_e1 = TensorPoly::primitive(e(1))
        .add(&TensorPoly::pair(&NCPoly::gen(h(0)), &NCPoly::gen(e(0))).scale(&hbar()));
    let d_f1 = TensorPoly::primitive(f(1))
        .add(&TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(h(0))).scale(&hbar()));
    coproducts.insert(e(1), d_e1);
    coproducts.insert(f(1), d_f1);
    derive_higher_coproducts(
        &mut coproducts,
        &table,
        n,
        // e_{k+1} = (1/2)([h_1, e_k] - hbar {h_0, e_k})
        &|d_h1: &TensorPoly, d_x: &TensorPoly, d_h0: &TensorPoly, table: &CommTable| {
            Ok(d_h1
                .commutator(d_x, table)?
                .sub(&d_h0.anticommutator(d_x, table)?.scale(&hbar()))
                .scale(&Scalar::rational(1, 2)))
        },
        // f_{k+1} = -(1/2)([h_1, f_k] + hbar {h_0, f_k})
        &|d_h1: &TensorPoly, d_x: &TensorPoly, d_h0: &TensorPoly, table: &CommTable| {
            Ok(d_h1
                .commutator(d_x, table)?
                .add(&d_h0.anticommutator(d_x, table)?.scale(&hbar()))
                .scale(&Scalar::rational(-1, 2)))
        },
        // h_k = [e_k, f_0]
        &|d_ek: &TensorPoly, d_f0: &TensorPoly, table: &CommTable| d_ek.commutator(d_f0, table),
    )?;

    Ok(HopfPresentation {
        name: "y_sl2".into(),
        kind: PresKind::YSl2,
        families,
        mode_bound: n,
        table,
        coproducts,
    })
}

/// Shared derivation loop for the coproducts of modes `2..=n`.
#[allow(clippy::type_complexity)]
fn derive_higher_coproducts(
    coproducts: &mut BTreeMap<GenId, TensorPoly>,
    table: &CommTable,
    n: u8,
    raise_e: &dyn Fn(
        &TensorPoly,
        &TensorPoly,
        &TensorPoly,
        &CommTable,
    ) -> Result<TensorPoly, AlgError>,
    raise_f: &dyn Fn(
        &TensorPoly,
        &TensorPoly,
        &TensorPoly,
        &CommTable,
    ) -> Result<TensorPoly, AlgError>,
    make_h: &dyn Fn(&TensorPoly, &TensorPoly, &CommTable) -> Result<TensorPoly, AlgError>,
) -> Result<(), AlgError> {
    let d_h0 = coproducts[&h(0)].clone();
    let d_f0 = coproducts[&f(0)].clone();
    let d_h1 = make_h(&coproducts[&e(1)].clone(), &d_f0, table)?;
    coproducts.insert(h(1), d_h1.clone());
    for k in 1..n {
        let d_ek1 = raise_e(&d_h1, &coproducts[&e(k)], &d_h0, table)?;
        let d_fk1 = raise_f(&d_h1, &coproducts[&f(k)], &d_h0, table)?;
        let d_hk1 = make_h(&d_ek1, &d_f0, table)?;
        coproducts.insert(e(k + 1), d_ek1);
        coproducts.insert(f(k + 1), d_fk1);
        coproducts.insert(h(k + 1), d_hk1);
    }
    Ok(())
}

/// Insert zero for every cross pair of two (possibly equal) families.
pub(crate) fn insert_zero_pairs(
    table: &mut CommTable,
    fam_a: Family,
    fam_b: Family,
) -> Result<(), AlgError> {
    let cap = table.cap();
    for k in 0..=cap {
        for l in 0..=(cap - k) {
            let (a, b) = (GenId::new(fam_a, k), GenId::new(fam_b, l));
            if a == b || (fam_a == fam_b && a < b) {
                continue;
            }
            table.insert_commutator(a, b, NCPoly::zero())?;
        }
    }
    Ok(())
}

/// Derive `[A_k, B_l]` for a Cartan-like family `A` acting on `B`, from the
/// mode-0 action and the ladder `[A_{k+1}, B_l] = [A_k, B_{l+1}] + c {C_k, B_l}`.
pub(crate) fn derive_ladder(
    table: &mut CommTable,
    fam_a: Family,
    fam_b: Family,
    base: impl Fn(u8) -> NCPoly,
    coeff: &Scalar,
    fam_c: Family,
) -> Result<(), AlgError> {
    let cap = table.cap();
    for l in 0..=cap {
        table.insert_commutator(GenId::new(fam_a, 0), GenId::new(fam_b, l), base(l))?;
    }
    for k in 0..cap {
        for l in 0..=(cap - k - 1) {
            let prev = table.bracket(GenId::new(fam_a, k), GenId::new(fam_b, l + 1))?;
            let anti = anticommutator(
                &NCPoly::gen(GenId::new(fam_c, k)),
                &NCPoly::gen(GenId::new(fam_b, l)),
                table,
            )?;
            let value = prev.add(&anti.scale(coeff));
            table.insert_commutator(GenId::new(fam_a, k + 1), GenId::new(fam_b, l), value)?;
        }
    }
    Ok(())
}

/// Derive all same-family brackets from antisymmetry and the ladder
/// `[X_{k+1}, X_l] = [X_k, X_{l+1}] + c {X_k, X_l}`; the gap-one base is the
/// antisymmetry-solved `[X_{l+1}, X_l] = c X_l^2`.
pub(crate) fn derive_same_family(
    table: &mut CommTable,
    fam: Family,
    coeff: &Scalar,
) -> Result<(), AlgError> {
    let cap = table.cap();
    for l in 0..=cap {
        if 2 * u16::from(l) + 1 > u16::from(cap) {
            break;
        }
        let sq = NCPoly::word_of(&[GenId::new(fam, l), GenId::new(fam, l)]).scale(coeff);
        table.insert_commutator(GenId::new(fam, l + 1), GenId::new(fam, l), sq)?;
    }
    for gap in 2..=u16::from(cap) {
        for l in 0..=cap {
            let k = u16::from(l) + gap;
            if k + u16::from(l) > u16::from(cap) {
                break;
            }
            let hi = GenId::new(fam, k as u8);
            let lo = GenId::new(fam, l);
            let prev = table.bracket(GenId::new(fam, (k - 1) as u8), GenId::new(fam, l + 1))?;
            let anti = anticommutator(
                &NCPoly::gen(GenId::new(fam, (k - 1) as u8)),
                &NCPoly::gen(lo),
                table,
            )?;
            table.insert_commutator(hi, lo, prev.add(&anti.scale(coeff)))?;
        }
    }
    Ok(())
}

/// Relation instances of the deformed sl(2) algebra with modes `<= m`.
fn ysl2_relations(m: u8) -> Vec<Relation> {
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
            if k + l <= m {
                rels.push(Relation {
                    label: format!("[e{k},f{l}] = h{}", k + l),
                    lhs: comm_raw(e(k), f(l)),
                    rhs: NCPoly::gen(h(k + l)),
                });
            }
        }
    }
    for l in 0..=m {
        rels.push(Relation {
            label: format!("[h0,e{l}] = 2e{l}"),
            lhs: comm_raw(h(0), e(l)),
            rhs: NCPoly::gen(e(l)).scale(&Scalar::int(2)),
        });
        rels.push(Relation {
            label: format!("[h0,f{l}] = -2f{l}"),
            lhs: comm_raw(h(0), f(l)),
            rhs: NCPoly::gen(f(l)).scale(&Scalar::int(-2)),
        });
    }
    for k in 0..m {
        for l in 0..m {
            rels.push(Relation {
                label: format!("[h{},e{l}] - [h{k},e{}] = hbar{{h{k},e{l}}}", k + 1, l + 1),
                lhs: comm_raw(h(k + 1), e(l)).sub(&comm_raw(h(k), e(l + 1))),
                rhs: anti_raw(h(k), e(l)).scale(&hbar()),
            });
            rels.push(Relation {
                label: format!("[h{},f{l}] - [h{k},f{}] = -hbar{{h{k},f{l}}}", k + 1, l + 1),
                lhs: comm_raw(h(k + 1), f(l)).sub(&comm_raw(h(k), f(l + 1))),
                rhs: anti_raw(h(k), f(l)).scale(&hbar().neg()),
            });
            rels.push(Relation {
                label: format!("[e{},e{l}] - [e{k},e{}] = hbar{{e{k},e{l}}}", k + 1, l + 1),
                lhs: comm_raw(e(k + 1), e(l)).sub(&comm_raw(e(k), e(l + 1))),
                rhs: anti_raw(e(k), e(l)).scale(&hbar()),
            });
            rels.push(Relation {
                label: format!("[f{},f{l}] - [f{k},f{}] = -hbar{{f{k},f{l}}}", k + 1, l + 1),
                lhs: comm_raw(f(k + 1), f(l)).sub(&comm_raw(f(k), f(l + 1))),
                rhs: anti_raw(f(k), f(l)).scale(&hbar().neg()),
            });
        }
    }
    rels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{commutator, Word};

    #[test]
    fn seeded_entries() {
        let pres = build_y_sl2(3).unwrap();
        // [e_0, f_1] = h_1
        assert_eq!(pres.table.bracket(e(0), f(1)).unwrap(), NCPoly::gen(h(1)));
        // [h_3, h_1] = 0
        assert_eq!(pres.table.bracket(h(3), h(1)).unwrap(), NCPoly::zero());
        // [h_0, e_2] = 2 e_2
        assert_eq!(
            pres.table.bracket(h(0), e(2)).unwrap(),
            NCPoly::gen(e(2)).scale(&Scalar::int(2))
        );
    }

    #[test]
    fn same_family_base_from_antisymmetry() {
        // Oracle: the k = l = 0 instance of the e-family ladder plus
        // antisymmetry give 2[e_1, e_0] = 2 hbar e_0^2.
        let pres = build_y_sl2(2).unwrap();
        let expect = NCPoly::word_of(&[e(0), e(0)]).scale(&hbar());
        assert_eq!(pres.table.bracket(e(1), e(0)).unwrap(), expect);
        assert_eq!(pres.table.bracket(e(0), e(1)).unwrap(), expect.neg());
    }

    #[test]
    fn normal_order_examples() {
        let pres = build_y_sl2(2).unwrap();
        // e0 f1 -> f1 e0 + h1
        let x = NCPoly::word_of(&[e(0), f(1)]);
        let mut expect = NCPoly::word_of(&[f(1), e(0)]);
        expect.add_term(Word::single(h(1)), Scalar::one());
        assert_eq!(pres.table.normal_order(&x).unwrap(), expect);
        // h3 h1 -> h1 h3
        let pres3 = build_y_sl2(3).unwrap();
        let x = NCPoly::word_of(&[h(3), h(1)]);
        assert_eq!(
            pres3.table.normal_order(&x).unwrap(),
            NCPoly::word_of(&[h(1), h(3)])
        );
        // e1 e0 -> e0 e1 + hbar e0 e0
        let x = NCPoly::word_of(&[e(1), e(0)]);
        let expect =
            NCPoly::word_of(&[e(0), e(1)]).add(&NCPoly::word_of(&[e(0), e(0)]).scale(&hbar()));
        assert_eq!(pres.table.normal_order(&x).unwrap(), expect);
    }

    #[test]
    fn commutator_examples() {
        let pres = build_y_sl2(3).unwrap();
        let t = &pres.table;
        assert_eq!(
            commutator(&NCPoly::gen(e(0)), &NCPoly::gen(f(0)), t).unwrap(),
            NCPoly::gen(h(0))
        );
        assert_eq!(
            commutator(&NCPoly::gen(h(0)), &NCPoly::gen(h(5)), t).unwrap(),
            NCPoly::zero()
        );
        assert_eq!(
            commutator(&NCPoly::gen(h(0)), &NCPoly::gen(e(2)), t).unwrap(),
            NCPoly::gen(e(2)).scale(&Scalar::int(2))
        );
    }

    #[test]
    fn mode_one_coproducts_are_the_seeded_values() {
        let pres = build_y_sl2(2).unwrap();
        let d_e1 = pres.coproduct(e(1)).unwrap();
        let expect = TensorPoly::primitive(e(1))
            .add(&TensorPoly::pair(&NCPoly::gen(h(0)), &NCPoly::gen(e(0))).scale(&hbar()));
        assert_eq!(d_e1, &expect);
        // Cocommutativity fails precisely at mode 1.
        assert_eq!(pres.coproducts[&e(0)], pres.coproducts[&e(0)].flip());
        assert_ne!(*d_e1, d_e1.flip());
    }

    #[test]
    fn derived_h1_coproduct() {
        // Oracle: expand [D(e_1), D(f_0)] by hand:
        // h1 (x) 1 + 1 (x) h1 + hbar h0 (x) h0 - 2 hbar f0 (x) e0.
        let pres = build_y_sl2(2).unwrap();
        let mut expect = TensorPoly::primitive(h(1));
        expect =
            expect.add(&TensorPoly::pair(&NCPoly::gen(h(0)), &NCPoly::gen(h(0))).scale(&hbar()));
        expect = expect.add(
            &TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(e(0)))
                .scale(&hbar().mul(&Scalar::int(-2))),
        );
        assert_eq!(pres.coproducts[&h(1)], expect);
    }

    #[test]
    fn both_h1_routes_agree() {
        // D([e_1, f_0]) and D([e_0, f_1]) must produce the same D(h_1).
        let pres = build_y_sl2(2).unwrap();
        let via_e1 = pres.coproducts[&e(1)]
            .commutator(&pres.coproducts[&f(0)], &pres.table)
            .unwrap();
        let via_f1 = pres.coproducts[&e(0)]
            .commutator(&pres.coproducts[&f(1)], &pres.table)
            .unwrap();
        assert_eq!(via_e1, via_f1);
        assert_eq!(via_e1, pres.coproducts[&h(1)]);
    }

    #[test]
    fn table_is_complete_for_pair_sums_within_capacity() {
        let pres = build_y_sl2(2).unwrap();
        assert!(pres.table.is_complete());
    }
}
