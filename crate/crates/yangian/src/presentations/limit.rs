//! The two-parameter family and its restricted limit.
//!
//! Each defining relation is transported by the dual substitution
//! `e_k -> e_k/p`, `f_k -> f_k/t`, `h_k -> (h_k/p + h'_k/t)/2` with the
//! deformation parameter rescaled to `p t`, the second Cartan copy `h'`
//! entering through the unfactorized double. The transported relation is
//! split into strata by the order in `t`; a cut selects the finite stratum,
//! every stratum below the cut must consist of brackets alone (each one a
//! resolved constraint, forced to vanish at the limit), and the finite
//! stratum must hold in the boundary presentation. The rescaling exponents
//! are inferred per relation, not assumed, and reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{build_boundary, HopfPresentation};
use crate::ncalg::{anticommutator, e, f, h, hp, AlgError, Family, GenId, NCPoly};
use crate::scalar::{ParamId, Scalar};

/// A formal linear / bracket / anticommutator symbol over the generators.
/// Relations of the family are linear combinations of these, which is what
/// makes the stratum bookkeeping finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormalTerm {
    Com(GenId, GenId),
    Anti(GenId, GenId),
    Lin(GenId),
}

impl fmt::Display for FormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalTerm::Com(a, b) => write!(f, "[{a},{b}]"),
            FormalTerm::Anti(a, b) => write!(f, "{{{a},{b}}}"),
            FormalTerm::Lin(g) => write!(f, "{g}"),
        }
    }
}

/// Scalar combination of formal terms; always kept with canonical keys
/// (bracket arguments ordered, diagonal brackets dropped).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FormalRel {
    pub label: String,
    terms: BTreeMap<FormalTerm, Scalar>,
}

impl FormalRel {
    fn new(label: impl Into<String>) -> FormalRel {
        FormalRel {
            label: label.into(),
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, term: FormalTerm, coeff: Scalar) {
        let (term, coeff) = match term {
            FormalTerm::Com(a, b) => {
                if a == b {
                    return;
                } else if a > b {
                    (FormalTerm::Com(a, b), coeff)
                } else {
                    (FormalTerm::Com(b, a), coeff.neg())
                }
            }
            FormalTerm::Anti(a, b) => {
                if a >= b {
                    (FormalTerm::Anti(a, b), coeff)
                } else {
                    (FormalTerm::Anti(b, a), coeff)
                }
            }
            lin => (lin, coeff),
        };
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                let sum = en.get().add(&coeff);
                if sum.is_zero() {
                    en.remove();
                } else {
                    *en.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalTerm, &Scalar)> {
        self.terms.iter()
    }

    /// Proportionality with a fixed ratio; used by the duality check.
    fn proportional_to(&self, other: &FormalRel) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let mut ratio: Option<Scalar> = None;
        for ((ta, ca), (tb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ta != tb {
                return false;
            }
            let r = match ca.div(cb) {
                Ok(r) => r,
                Err(_) => return false,
            };
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => {
                    if *r0 != r {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn display_stratum(terms: &[(FormalTerm, Scalar)]) -> String {
    let mut out = String::new();
    for (i, (t, c)) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        if c.is_one() {
            out.push_str(&t.to_string());
        } else {
            out.push_str(&format!("({c})*{t}"));
        }
    }
    out
}

/// How one stratum of a transported relation fares at the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumFate {
    /// Below the cut: killed by declaring its brackets of order `t`.
    Divergent,
    /// The stratum surviving at `t -> 0`.
    Finite,
    /// Above the cut: vanishes with a positive power of `t`.
    Vanishing,
}

/// Classification of one transported relation.
#[derive(Clone, Debug)]
pub struct RelationLimit {
    pub label: String,
    /// Inferred rescaling: the relation was multiplied by `p^a t^b` to make
    /// the strata polynomial, and the finite stratum sits at `t^cut`.
    pub p_clear: u32,
    pub t_shift: i64,
    pub cut: i64,
    pub strata: BTreeMap<i64, (StratumFate, String)>,
    pub constraints: Vec<(GenId, GenId)>,
    pub finite_matches_boundary: bool,
    /// Set when no admissible cut validated against the boundary.
    pub failed: Option<String>,
}

/// Full report of the restricted limit.
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub relations: Vec<RelationLimit>,
    /// Deduplicated brackets forced to vanish by divergence cancellation.
    pub resolved_constraints: Vec<(GenId, GenId)>,
    /// All resolved constraints assert centrality of `h'` on `e` and `f`.
    pub constraints_are_centrality: bool,
    /// The transported relation set is closed (up to scalar multiples) under
    /// the family exchange that mirrors the opposite-parameter limit.
    pub duality_consistent: bool,
}

impl LimitReport {
    pub fn all_pass(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.failed.is_none() && r.finite_matches_boundary)
            && self.constraints_are_centrality
            && self.duality_consistent
    }
}

/// Transport every defining relation with modes `<= m` through the dual
/// substitution, classify the strata, and validate the finite parts against
/// the boundary presentation.
pub fn parametrize_and_limit(m: u8) -> Result<LimitReport, AlgError> {
    let boundary = build_boundary(m)?;
    parametrize_and_limit_against(m, &boundary)
}

/// As `parametrize_and_limit`, validating against a caller-supplied boundary
/// presentation (exposed for negative-control tests).
pub fn parametrize_and_limit_against(
    m: u8,
    boundary: &HopfPresentation,
) -> Result<LimitReport, AlgError> {
    let originals = family_relations(m);
    let transported: Vec<FormalRel> = originals.iter().map(transport).collect();

    let mut relations = Vec::new();
    let mut resolved: BTreeSet<(GenId, GenId)> = BTreeSet::new();
    for rel in &transported {
        let classified = classify(rel, boundary)?;
        for c in &classified.constraints {
            resolved.insert(*c);
        }
        relations.push(classified);
    }

    let constraints_are_centrality = resolved.iter().all(|(a, b)| {
        let pairs_hp_with_root = |x: &GenId, y: &GenId| {
            x.family == Family::Hp && (y.family == Family::E || y.family == Family::F)
        };
        pairs_hp_with_root(a, b) || pairs_hp_with_root(b, a)
    });

    // Family-exchange consistency: the mirrored relation set coincides with
    // the original up to scalar multiples, so the opposite-parameter limit
    // carries the same content with the roles of the two Borel halves
    // exchanged.
    let duality_consistent = transported.iter().all(|r| {
        let image = exchange(r);
        transported.iter().any(|s| image.proportional_to(s))
    });

    Ok(LimitReport {
        relations,
        resolved_constraints: resolved.into_iter().collect(),
        constraints_are_centrality,
        duality_consistent,
    })
}

/// The defining relations as formal combinations, with modes `<= m`.
fn family_relations(m: u8) -> Vec<FormalRel> {
    let hbar = Scalar::param(ParamId::HBAR);
    let mut rels = Vec::new();
    for k in 0..=m {
        for l in 0..k {
            let mut r = FormalRel::new(format!("[h{k},h{l}] = 0"));
            r.add(FormalTerm::Com(h(k), h(l)), Scalar::one());
            rels.push(r);
        }
    }
    for k in 0..=m {
        for l in 0..=m {
            if k + l > m {
                continue;
            }
            let mut r = FormalRel::new(format!("[e{k},f{l}] = h{}", k + l));
            r.add(FormalTerm::Com(e(k), f(l)), Scalar::one());
            r.add(FormalTerm::Lin(h(k + l)), Scalar::int(-1));
            rels.push(r);
        }
    }
    for l in 0..=m {
        let mut r = FormalRel::new(format!("[h0,e{l}] = 2e{l}"));
        r.add(FormalTerm::Com(h(0), e(l)), Scalar::one());
        r.add(FormalTerm::Lin(e(l)), Scalar::int(-2));
        rels.push(r);
        let mut r = FormalRel::new(format!("[h0,f{l}] = -2f{l}"));
        r.add(FormalTerm::Com(h(0), f(l)), Scalar::one());
        r.add(FormalTerm::Lin(f(l)), Scalar::int(2));
        rels.push(r);
    }
    for k in 0..m {
        for l in 0..m {
            let mut r = FormalRel::new(format!(
                "[h{},e{l}] - [h{k},e{}] = hbar{{h{k},e{l}}}",
                k + 1,
                l + 1
            ));
            r.add(FormalTerm::Com(h(k + 1), e(l)), Scalar::one());
            r.add(FormalTerm::Com(h(k), e(l + 1)), Scalar::int(-1));
            r.add(FormalTerm::Anti(h(k), e(l)), hbar.neg());
            rels.push(r);
            let mut r = FormalRel::new(format!(
                "[h{},f{l}] - [h{k},f{}] = -hbar{{h{k},f{l}}}",
                k + 1,
                l + 1
            ));
            r.add(FormalTerm::Com(h(k + 1), f(l)), Scalar::one());
            r.add(FormalTerm::Com(h(k), f(l + 1)), Scalar::int(-1));
            r.add(FormalTerm::Anti(h(k), f(l)), hbar.clone());
            rels.push(r);
            if k >= l {
                let mut r = FormalRel::new(format!(
                    "[e{},e{l}] - [e{k},e{}] = hbar{{e{k},e{l}}}",
                    k + 1,
                    l + 1
                ));
                r.add(FormalTerm::Com(e(k + 1), e(l)), Scalar::one());
                r.add(FormalTerm::Com(e(k), e(l + 1)), Scalar::int(-1));
                r.add(FormalTerm::Anti(e(k), e(l)), hbar.neg());
                rels.push(r);
                let mut r = FormalRel::new(format!(
                    "[f{},f{l}] - [f{k},f{}] = -hbar{{f{k},f{l}}}",
                    k + 1,
                    l + 1
                ));
                r.add(FormalTerm::Com(f(k + 1), f(l)), Scalar::one());
                r.add(FormalTerm::Com(f(k), f(l + 1)), Scalar::int(-1));
                r.add(FormalTerm::Anti(f(k), f(l)), hbar.clone());
                rels.push(r);
            }
        }
    }
    rels
}

/// Image of one generator under the dual substitution.
fn substitute_gen(g: GenId) -> Vec<(GenId, Scalar)> {
    let p = Scalar::param(ParamId::P);
    let t = Scalar::param(ParamId::T);
    match g.family {
        Family::E => vec![(g, p.inv().unwrap())],
        Family::F => vec![(g, t.inv().unwrap())],
        Family::H => vec![
            (h(g.mode), Scalar::int(2).mul(&p).inv().unwrap()),
            (hp(g.mode), Scalar::int(2).mul(&t).inv().unwrap()),
        ],
        Family::Hp => panic!("the source presentation has no h' family"),
    }
}

/// Transport a relation through the substitution, rescaling the deformation
/// parameter to `p t`.
fn transport(rel: &FormalRel) -> FormalRel {
    let pt = Scalar::param(ParamId::P).mul(&Scalar::param(ParamId::T));
    let mut out = FormalRel::new(rel.label.clone());
    for (term, coeff) in rel.terms() {
        let coeff = coeff
            .substitute(ParamId::HBAR, &pt)
            .expect("deformation parameter rescaling");
        match term {
            FormalTerm::Lin(g) => {
                for (g2, c2) in substitute_gen(*g) {
                    out.add(FormalTerm::Lin(g2), coeff.mul(&c2));
                }
            }
            FormalTerm::Com(a, b) => {
                for (a2, ca) in substitute_gen(*a) {
                    for (b2, cb) in substitute_gen(*b) {
                        out.add(FormalTerm::Com(a2, b2), coeff.mul(&ca).mul(&cb));
                    }
                }
            }
            FormalTerm::Anti(a, b) => {
                for (a2, ca) in substitute_gen(*a) {
                    for (b2, cb) in substitute_gen(*b) {
                        out.add(FormalTerm::Anti(a2, b2), coeff.mul(&ca).mul(&cb));
                    }
                }
            }
        }
    }
    out
}

/// The family exchange mirroring the opposite-parameter limit:
/// `e -> f`, `f -> -e`, `h -> -h'`, `h' -> h`, `p -> t`, `t -> -p`.
/// The sign twists come from composing the Chevalley-type involution
/// (which also flips the deformation parameter) with the substitution.
fn exchange(rel: &FormalRel) -> FormalRel {
    let swap_gen = |g: GenId| -> (GenId, Scalar) {
        match g.family {
            Family::E => (f(g.mode), Scalar::one()),
            Family::F => (e(g.mode), Scalar::int(-1)),
            Family::H => (hp(g.mode), Scalar::int(-1)),
            Family::Hp => (h(g.mode), Scalar::one()),
        }
    };
    let swap_scalar = |c: &Scalar| -> Scalar {
        // p -> t, t -> -p via a temporary slot.
        let tmp = Scalar::param(ParamId::W);
        c.substitute(ParamId::P, &tmp)
            .and_then(|c| c.substitute(ParamId::T, &Scalar::param(ParamId::P).neg()))
            .and_then(|c| c.substitute(ParamId::W, &Scalar::param(ParamId::T)))
            .expect("parameter exchange")
    };
    let mut out = FormalRel::new(format!("exchange({})", rel.label));
    for (term, coeff) in rel.terms() {
        let c = swap_scalar(coeff);
        match term {
            FormalTerm::Lin(g) => {
                let (g2, s) = swap_gen(*g);
                out.add(FormalTerm::Lin(g2), c.mul(&s));
            }
            FormalTerm::Com(a, b) => {
                let (a2, sa) = swap_gen(*a);
                let (b2, sb) = swap_gen(*b);
                out.add(FormalTerm::Com(a2, b2), c.mul(&sa).mul(&sb));
            }
            FormalTerm::Anti(a, b) => {
                let (a2, sa) = swap_gen(*a);
                let (b2, sb) = swap_gen(*b);
                out.add(FormalTerm::Anti(a2, b2), c.mul(&sa).mul(&sb));
            }
        }
    }
    out
}

/// Evaluate a stratum inside the boundary presentation.
fn stratum_residual(
    terms: &[(FormalTerm, Scalar)],
    boundary: &HopfPresentation,
) -> Result<NCPoly, AlgError> {
    let table = &boundary.table;
    let mut acc = NCPoly::zero();
    for (term, coeff) in terms {
        let value = match term {
            FormalTerm::Lin(g) => NCPoly::gen(*g),
            FormalTerm::Com(a, b) => table.bracket(*a, *b)?,
            FormalTerm::Anti(a, b) => anticommutator(&NCPoly::gen(*a), &NCPoly::gen(*b), table)?,
        };
        acc = acc.add(&value.scale(coeff));
    }
    table.normal_order(&acc)
}

/// Scale out the common integer content and fix the overall sign so the
/// reported strata are canonical.
fn normalize_strata(strata: &mut BTreeMap<i64, Vec<(FormalTerm, Scalar)>>) {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for parts in strata.values() {
        for (_, c) in parts {
            let (a, b) = c.rational_content();
            num_gcd = crate::scalar::gcd_int(&num_gcd, &a);
            let g = crate::scalar::gcd_int(&den_lcm, &b);
            den_lcm = &den_lcm / &g * &b;
        }
    }
    if num_gcd.is_zero() {
        return;
    }
    let mut factor = Scalar::from_polys(
        crate::scalar::Poly::from_bigint(den_lcm),
        crate::scalar::Poly::from_bigint(num_gcd),
    )
    .expect("nonzero content");
    let lead_sign = strata
        .values()
        .next()
        .and_then(|parts| parts.first())
        .map(|(_, c)| c.leading_sign())
        .unwrap_or(1);
    if lead_sign < 0 {
        factor = factor.neg();
    }
    for parts in strata.values_mut() {
        for (_, c) in parts.iter_mut() {
            *c = c.mul(&factor);
        }
    }
}

/// Split a transported relation into polynomial strata in `t` and choose the
/// cut. Preference order among cuts that validate against the boundary:
/// a finite stratum with linear or anticommutator content, then the fewest
/// constraints, then the smallest cut.
fn classify(rel: &FormalRel, boundary: &HopfPresentation) -> Result<RelationLimit, AlgError> {
    // Strata by t-order, then a shift making the lowest stratum zero and a
    // p-power clearing denominators.
    let mut strata: BTreeMap<i64, Vec<(FormalTerm, Scalar)>> = BTreeMap::new();
    for (term, coeff) in rel.terms() {
        for (ord, c) in coeff.strata(ParamId::T).expect("monomial t-denominators") {
            strata.entry(ord).or_default().push((*term, c));
        }
    }
    let t_shift = -strata.keys().next().copied().unwrap_or(0);
    let mut p_clear: u32 = 0;
    for parts in strata.values() {
        for (_, c) in parts {
            if let Some(ord) = c.order_at_zero(ParamId::P) {
                if ord < 0 {
                    p_clear = p_clear.max((-ord) as u32);
                }
            }
        }
    }
    let p_pow = Scalar::param(ParamId::P)
        .pow(p_clear as i32)
        .expect("positive power");
    let mut strata: BTreeMap<i64, Vec<(FormalTerm, Scalar)>> = strata
        .into_iter()
        .map(|(ord, parts)| {
            (
                ord + t_shift,
                parts.into_iter().map(|(t, c)| (t, c.mul(&p_pow))).collect(),
            )
        })
        .collect();
    normalize_strata(&mut strata);

    // Candidate cuts.
    struct Candidate {
        cut: i64,
        constraints: Vec<(GenId, GenId)>,
        has_inhomogeneous: bool,
    }
    let mut valid: Vec<Candidate> = Vec::new();
    let max_cut = strata.keys().next_back().copied().unwrap_or(0);
    'cuts: for cut in 0..=max_cut {
        let Some(finite) = strata.get(&cut) else {
            continue;
        };
        let mut constraints = Vec::new();
        for (ord, parts) in strata.range(..cut) {
            let _ = ord;
            for (term, _) in parts {
                match term {
                    FormalTerm::Com(a, b) => constraints.push((*a, *b)),
                    _ => continue 'cuts,
                }
            }
        }
        // Constraints must be exact zeroes of the boundary table.
        for (a, b) in &constraints {
            if !boundary.table.bracket(*a, *b)?.is_zero() {
                continue 'cuts;
            }
        }
        if !stratum_residual(finite, boundary)?.is_zero() {
            continue 'cuts;
        }
        let has_inhomogeneous = finite
            .iter()
            .any(|(t, _)| !matches!(t, FormalTerm::Com(_, _)));
        valid.push(Candidate {
            cut,
            constraints,
            has_inhomogeneous,
        });
    }
    valid.sort_by_key(|c| {
        (
            std::cmp::Reverse(c.has_inhomogeneous),
            c.constraints.len(),
            c.cut,
        )
    });

    let mut out = RelationLimit {
        label: rel.label.clone(),
        p_clear,
        t_shift,
        cut: 0,
        strata: BTreeMap::new(),
        constraints: Vec::new(),
        finite_matches_boundary: false,
        failed: None,
    };
    match valid.into_iter().next() {
        None => {
            out.failed = Some("no admissible cut validates against the boundary".into());
            for (ord, parts) in &strata {
                out.strata
                    .insert(*ord, (StratumFate::Vanishing, display_stratum(parts)));
            }
        }
        Some(best) => {
            out.cut = best.cut;
            out.constraints = best.constraints;
            out.finite_matches_boundary = true;
            for (ord, parts) in &strata {
                let fate = match ord.cmp(&best.cut) {
                    std::cmp::Ordering::Less => StratumFate::Divergent,
                    std::cmp::Ordering::Equal => StratumFate::Finite,
                    std::cmp::Ordering::Greater => StratumFate::Vanishing,
                };
                out.strata.insert(*ord, (fate, display_stratum(parts)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(report: &'a LimitReport, label: &str) -> &'a RelationLimit {
        report
            .relations
            .iter()
            .find(|r| r.label == label)
            .unwrap_or_else(|| panic!("relation {label} not classified"))
    }

    #[test]
    fn ef_relation_decomposition() {
        // [e_0, f_0] transports to [e_0, f_0] = (t h_0 + p h'_0)/2 with the
        // h'-half finite and the h-half vanishing.
        let report = parametrize_and_limit(2).unwrap();
        let rel = find(&report, "[e0,f0] = h0");
        assert!(rel.failed.is_none());
        assert_eq!(rel.cut, 0);
        assert!(rel.constraints.is_empty());
        let (fate0, text0) = &rel.strata[&0];
        assert_eq!(*fate0, StratumFate::Finite);
        assert!(text0.contains("[e0,f0]"), "{text0}");
        assert!(text0.contains("hp0"), "{text0}");
        let (fate1, text1) = &rel.strata[&1];
        assert_eq!(*fate1, StratumFate::Vanishing);
        assert!(text1.contains("h0"), "{text1}");
    }

    #[test]
    fn mode_zero_action_keeps_divergence_as_constraint() {
        let report = parametrize_and_limit(2).unwrap();
        let rel = find(&report, "[h0,e1] = 2e1");
        assert!(rel.failed.is_none());
        assert_eq!(rel.cut, 1);
        assert_eq!(rel.constraints, vec![(e(1), hp(0))]);
        let (fate, _) = &rel.strata[&0];
        assert_eq!(*fate, StratumFate::Divergent);
        let (fate_fin, text_fin) = &rel.strata[&1];
        assert_eq!(*fate_fin, StratumFate::Finite);
        // finite part reads [e_1, h_0] + 4p e_1 = 0, i.e. [h_0, e_1] = 4p e_1
        assert!(text_fin.contains("[e1,h0]"), "{text_fin}");
        assert!(text_fin.contains("(4*p)*e1"), "{text_fin}");
    }

    #[test]
    fn ladder_relation_finite_part_is_the_weighted_anticommutator() {
        let report = parametrize_and_limit(2).unwrap();
        let rel = find(&report, "[h1,e0] - [h0,e1] = hbar{h0,e0}");
        assert!(rel.failed.is_none());
        assert_eq!(rel.cut, 1);
        let (_, text) = &rel.strata[&1];
        assert!(
            text.contains("{e0,hp0}") || text.contains("{hp0,e0}"),
            "{text}"
        );
        assert!(text.contains("p^2"), "{text}");
    }

    #[test]
    fn pure_cartan_relation_needs_no_constraint() {
        let report = parametrize_and_limit(2).unwrap();
        let rel = find(&report, "[h1,h0] = 0");
        assert!(rel.failed.is_none());
        assert_eq!(rel.cut, 0);
        assert!(rel.constraints.is_empty());
    }

    #[test]
    fn constraints_are_exactly_centrality_and_duality_closes() {
        let report = parametrize_and_limit(2).unwrap();
        assert!(report.constraints_are_centrality);
        assert!(report.duality_consistent);
        assert!(report.all_pass());
        // The e-side base constraints are present.
        assert!(report.resolved_constraints.contains(&(e(1), hp(0))));
        // And the f-side ones.
        assert!(report
            .resolved_constraints
            .iter()
            .any(|(a, _)| a.family == Family::Hp));
    }

    #[test]
    fn corrupted_boundary_fails_validation() {
        let mut boundary = build_boundary(2).unwrap();
        boundary.table.corrupt_entry(e(0), f(0), NCPoly::zero());
        let report = parametrize_and_limit_against(2, &boundary).unwrap();
        assert!(!report.all_pass());
    }
}
