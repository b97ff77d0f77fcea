//! The class function β for odd p-groups of rank 3 with cyclic center, and
//! its verification subgroup by subgroup.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::isotropy::{center_sphere_family, isotropy_of_product};
use super::report::{Check, VerificationReport};
use super::{ConstructionError, Result};
use crate::character::{
    decompose, induce, is_strictly_fpf, is_top_rank_fpf, restrict, ClassFunction, Cyclotomic, Rational,
};
use crate::group::{
    all_subgroups, center, centralizer, classify_subgroup, elementary_abelian_rank, subgroup_closure, valid_qs,
    BitSet, Classification, Embedded, Group, SubgroupRecord,
};

/// The normal series 1 < Z(G) < Q < C_G(Q) < G used by β.
struct Series {
    p: usize,
    z: SubgroupRecord,
    q: SubgroupRecord,
    c: SubgroupRecord,
}

fn series(g: &Group, q: &SubgroupRecord) -> Result<Series> {
    let p = g
        .p_group_prime()
        .filter(|&p| p > 2)
        .ok_or_else(|| ConstructionError::PreconditionFailed(format!("{} is not an odd p-group", g.label())))?;
    let z = center(g);
    if !(z.is_subgroup_of(q) && q.order == p * p && q.is_elementary_abelian && q.is_normal) {
        return Err(ConstructionError::PreconditionFailed("Q is not a normal (p,p) subgroup containing Z(G)".into()));
    }
    let c = centralizer(g, &q.generators);
    Ok(Series { p, z, q: q.clone(), c })
}

fn int(n: i128) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

/// β(1) = (p²−p)|G|; 0 on Z(G)∖1; −p|G| on Q∖Z(G); 0 on C_G(Q)∖Q; −|G| on
/// elements of order p outside C_G(Q); 0 elsewhere.
pub fn beta_rank3(g: &Group, q: &SubgroupRecord) -> Result<ClassFunction> {
    let s = series(g, q)?;
    let (p, n) = (s.p as i128, g.order() as i128);
    let value = |x: usize| -> i128 {
        if x == 0 {
            (p * p - p) * n
        } else if s.z.contains(x) {
            0
        } else if s.q.contains(x) {
            -p * n
        } else if s.c.contains(x) {
            0
        } else if g.element_order(x) == s.p {
            -n
        } else {
            0
        }
    };
    let cl = g.classes();
    for c in 0..cl.len() {
        let v = value(cl.representatives[c]);
        if let Some(&x) = cl.members(c).iter().find(|&&x| value(x) != v) {
            return Err(ConstructionError::PreconditionFailed(format!("β is not constant on the class of {x}")));
        }
    }
    Ok(ClassFunction::from_fn(g, |x| int(value(x))))
}

/// Adds 1 to β on the least noncentral class of elements of order p
/// outside C_G(Q). Used as a negative control.
pub fn corrupt_beta(g: &Group, q: &SubgroupRecord, beta: &ClassFunction) -> Result<(ClassFunction, usize)> {
    let s = series(g, q)?;
    let cl = g.classes();
    let class = (0..cl.len())
        .find(|&c| {
            let x = cl.representatives[c];
            !s.c.contains(x) && g.element_order(x) == s.p
        })
        .ok_or_else(|| ConstructionError::PreconditionFailed("no element of order p outside C_G(Q)".into()))?;
    let mut values = beta.values().to_vec();
    values[class] = &values[class] + &int(1);
    Ok((ClassFunction::new(g, values), class))
}

/// Which case formula produced a predicted restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaCase {
    /// H ∩ Q ≠ 1: induced from K = H ∩ Q.
    MeetsQ,
    /// H ∩ Q = 1, H ≤ C_G(Q): a multiple of the regular character.
    CyclicInCentralizer,
    /// |H| = p, H ∩ C_G(Q) = 1.
    OrderPOutsideCentralizer,
    /// H cyclic of order > p, not in C_G(Q); not among the listed cases, but
    /// β|_H is again a multiple of the regular character.
    CyclicMeetingCentralizer,
    /// Abelian of type (p, p^{n−1}), H ∩ Q = 1.
    AbelianMaximalCyclic,
    /// H ≅ M(p^n), H ∩ Q = 1.
    Modular,
}

#[derive(Debug, Clone)]
pub struct CaseFormula {
    pub case: BetaCase,
    pub embedding: Embedded,
    pub character: ClassFunction,
}

fn witness_of(h: &SubgroupRecord) -> Vec<usize> {
    h.generators.clone()
}

/// The function on a subgroup that is `a` at the identity and `b` on every
/// other element of `support` (and 0 off it).
/// `a` at 1, `b` on the rest of `support` (indexed in G), 0 elsewhere.
/// `inner` is nested in `outer`, which is embedded in G.
fn spike(inner: &Embedded, outer: &Embedded, a: i128, b: i128, support: &BitSet) -> ClassFunction {
    ClassFunction::from_fn(&inner.group, |x| {
        if x == 0 {
            int(a)
        } else if support.contains(outer.to_parent(inner.to_parent(x))) {
            int(b)
        } else {
            int(0)
        }
    })
}

fn lines_outside(g: &Group, h: &SubgroupRecord, c: &SubgroupRecord, p: usize) -> Vec<BitSet> {
    let mut lines: Vec<BitSet> = Vec::new();
    for x in h.elements() {
        if g.element_order(x) == p && !c.contains(x) {
            let l = subgroup_closure(g, &[x]);
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    lines.sort();
    lines
}

/// Builds the predicted character β|_H from the matching case formula.
pub fn beta_rank3_case_formula(g: &Group, q: &SubgroupRecord, h: &SubgroupRecord) -> Result<CaseFormula> {
    let s = series(g, q)?;
    if !h.meets_trivially(&s.z) {
        return Err(ConstructionError::PreconditionFailed("H meets Z(G) nontrivially".into()));
    }
    let (p, n) = (s.p as i128, g.order() as i128);
    let hn = h.order as i128;
    let emb = Embedded::of_record(g, h);
    let no_case = |reason: &str| ConstructionError::NoCaseMatches { subgroup: witness_of(h), reason: reason.into() };
    let regular_multiple = |case| {
        let f = ClassFunction::regular(&emb.group).scale(Rational::new((p * p - p) * n, hn));
        Ok(CaseFormula { case, embedding: emb.clone(), character: f })
    };

    if !h.meets_trivially(&s.q) {
        let k = h.members.intersection(&s.q.members);
        let kemb = emb.restrict_to(&k);
        let phi = spike(&kemb, &emb, p - 1, -1, &k);
        let ind = induce(&phi, &kemb)?;
        let factor = Rational::new(p * n * p, hn);
        return Ok(CaseFormula { case: BetaCase::MeetsQ, embedding: emb.clone(), character: ind.scale(factor) });
    }
    if h.is_subgroup_of(&s.c) {
        if !h.is_cyclic(g) {
            return Err(no_case("H ≤ C_G(Q), H ∩ Q = 1 but H is not cyclic"));
        }
        return regular_multiple(BetaCase::CyclicInCentralizer);
    }
    if h.is_cyclic(g) {
        if h.order == s.p {
            let all = h.members.clone();
            let phi = spike(&Embedded::whole(&emb.group), &emb, p * p * p - p * p, -p, &all);
            return Ok(CaseFormula {
                case: BetaCase::OrderPOutsideCentralizer,
                embedding: emb.clone(),
                character: phi.scale(Rational::new(n, p)),
            });
        }
        return regular_multiple(BetaCase::CyclicMeetingCentralizer);
    }
    match classify_subgroup(g, q, h)? {
        Classification::AbelianMaximalCyclic { .. } => {
            let mut phi = ClassFunction::zero(&emb.group);
            for line in lines_outside(g, h, &s.c, s.p) {
                let lemb = emb.restrict_to(&line);
                let phi_l = spike(&lemb, &emb, p - 1, -1, &line);
                phi = phi.add(&induce(&phi_l, &lemb)?);
            }
            Ok(CaseFormula {
                case: BetaCase::AbelianMaximalCyclic,
                embedding: emb.clone(),
                character: phi.scale(Rational::new(p * n, hn)),
            })
        }
        Classification::ModularM { .. } => {
            let omega: Vec<usize> = h.elements().filter(|&x| g.element_order(x) == s.p).collect();
            let nset = subgroup_closure(g, &omega);
            if nset.count() != s.p * s.p {
                return Err(no_case("Ω_1(H) is not of order p²"));
            }
            let y = omega.iter().copied().filter(|&x| !s.c.contains(x)).min().ok_or_else(|| no_case("Ω_1(H) ≤ C_G(Q)"))?;
            let yline = subgroup_closure(g, &[y]);
            let nemb = emb.restrict_to(&nset);
            let index = hn / (p * p);
            let phi = spike(&nemb, &emb, p - 1, -1, &yline).scale(Rational::new(p * n, index));
            Ok(CaseFormula { case: BetaCase::Modular, embedding: emb.clone(), character: induce(&phi, &nemb)? })
        }
        other => Err(no_case(&format!("classified as {other:?} but not covered by any case"))),
    }
}

fn values_json(f: &ClassFunction) -> Vec<String> {
    f.values().iter().map(ToString::to_string).collect()
}

/// Verifies β against every subgroup meeting the center trivially.
pub fn verify_rank3(g: &Group, sweep_all_q: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    check_rank3(g)?;
    let z = center(g);
    let rz = z_rank(g, &z);
    if rz >= 2 {
        let mut report = easy_branch(g, rz)?;
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let qs = valid_qs(g)?;
    let qs = if sweep_all_q { qs } else { qs.into_iter().take(1).collect() };
    let mut report = VerificationReport::new("beta_rank3", g.label());
    report.param("p", g.p_group_prime());
    report.param("order", g.order());
    report.param("sweep_all_q", sweep_all_q);
    report.param("q_count", qs.len());
    for (qi, q) in qs.iter().enumerate() {
        let beta = beta_rank3(g, q)?;
        let sub = verify_rank3_with_beta(g, q, &beta)?;
        let prefix = if sweep_all_q { format!("Q#{qi} ") } else { String::new() };
        for mut c in sub.checks {
            c.subject = format!("{prefix}{}", c.subject);
            report.push(c);
        }
        report.param(&format!("q{qi}_generators"), &q.generators);
    }
    report.conclusion = if report.passed() {
        "β restricts to a character on every subgroup meeting Z(G) trivially, every case formula matches, and every rank-2 elementary abelian such subgroup has zero fixed subspace".into()
    } else {
        format!("{} check(s) failed", report.count(super::Status::Fail))
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

fn z_rank(g: &Group, z: &SubgroupRecord) -> usize {
    let zemb = Embedded::of_record(g, z);
    elementary_abelian_rank(&zemb.group)
}

fn check_rank3(g: &Group) -> Result<usize> {
    let p = g
        .p_group_prime()
        .filter(|&p| p > 2)
        .ok_or_else(|| ConstructionError::PreconditionFailed(format!("{} is not an odd p-group", g.label())))?;
    let rk = elementary_abelian_rank(g);
    if rk != 3 {
        return Err(ConstructionError::PreconditionFailed(format!("rk(G) = {rk}, expected 3")));
    }
    Ok(p)
}

/// rk(Z(G)) ≥ 2: two spheres induced from a free action of a rank-2
/// subgroup of the center; every isotropy subgroup must then be cyclic.
fn easy_branch(g: &Group, rz: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("beta_rank3", g.label());
    report.param("branch", "center_rank_at_least_2");
    report.param("center_rank", rz);
    let model = center_sphere_family(g)?;
    let factors: Vec<ClassFunction> = model.factors.iter().take(2).cloned().collect();
    let two = isotropy_of_product(g, &factors)?;
    let lattice = all_subgroups(g)?;
    report.param("factor_degrees", two.factors.iter().map(|f| f.degree().to_string()).collect::<Vec<_>>());
    for &cid in &two.isotropy {
        let h = &lattice.records()[lattice.classes()[cid][0]];
        let cyclic = h.is_cyclic(g);
        report.push(
            Check::from_bool(cyclic, "cyclic_isotropy", format!("class {cid}"), json!({ "generators": h.generators }), format!("order {}", h.order))
                .with_class(cid),
        );
    }
    report.conclusion = if report.passed() {
        "two linear spheres induced from the center give cyclic isotropy".into()
    } else {
        "a non-cyclic isotropy subgroup remains".into()
    };
    Ok(report)
}

/// Runs the subgroup checks for a given class function in place of β.
pub fn verify_rank3_with_beta(g: &Group, q: &SubgroupRecord, beta: &ClassFunction) -> Result<VerificationReport> {
    let s = series(g, q)?;
    let mut report = VerificationReport::new("beta_rank3", g.label());
    let index_ok = g.order() / s.c.order == s.p;
    report.push(Check::from_bool(
        index_ok,
        "centralizer_index",
        "Q",
        json!({ "q": q.generators, "index": g.order() / s.c.order }),
        format!("[G:C_G(Q)] = {}", g.order() / s.c.order),
    ));
    let lattice = all_subgroups(g)?;
    let targets: Vec<usize> =
        (0..lattice.len()).filter(|&i| lattice.records()[i].meets_trivially(&s.z)).collect();
    report.param("subgroups_checked", targets.len());
    let per: Vec<Vec<Check>> =
        targets.par_iter().map(|&i| check_subgroup(g, q, beta, i, &lattice.records()[i])).collect();
    for cs in per {
        for c in cs {
            report.push(c);
        }
    }
    Ok(report)
}

fn check_subgroup(g: &Group, q: &SubgroupRecord, beta: &ClassFunction, index: usize, h: &SubgroupRecord) -> Vec<Check> {
    let subject = format!("H#{index}");
    let cid = h.class_id;
    let mut out = Vec::new();
    let err = |name: &str, e: String| Check::fail(name, subject.clone(), json!({ "generators": h.generators, "error": e }), "error").with_class(cid);

    match classify_subgroup(g, q, h) {
        Ok(tag) => out.push(Check::pass("classification", subject.clone(), format!("{tag:?}")).with_class(cid)),
        Err(e) => out.push(err("classification", e.to_string())),
    }

    let emb = Embedded::of_record(g, h);
    let res = match restrict(beta, &emb) {
        Ok(r) => r,
        Err(e) => {
            out.push(err("character", e.to_string()));
            return out;
        }
    };
    match decompose(&res) {
        Ok(d) => {
            let c = match &d.witness {
                None => Check::pass("character", subject.clone(), "all multiplicities are non-negative integers"),
                Some((i, m)) => Check::fail(
                    "character",
                    subject.clone(),
                    json!({ "generators": h.generators, "irreducible": i, "multiplicity": m.to_string() }),
                    format!("multiplicity {m} on irreducible {i}"),
                ),
            };
            out.push(c.with_class(cid));
        }
        Err(e) => out.push(err("character", e.to_string())),
    }

    match beta_rank3_case_formula(g, q, h) {
        Ok(f) => {
            // Both embeddings are built from the same member set, so their classes agree.
            let predicted = ClassFunction::new(res.group(), f.character.values().to_vec());
            let c = if predicted == res {
                Check::pass("case_formula", subject.clone(), format!("{:?}", f.case))
            } else {
                let class = (0..res.values().len()).find(|&i| res.values()[i] != predicted.values()[i]).unwrap_or(0);
                Check::fail(
                    "case_formula",
                    subject.clone(),
                    json!({ "generators": h.generators, "case": f.case, "class": class,
                            "restriction": values_json(&res), "formula": values_json(&predicted) }),
                    format!("{:?} differs from β|_H", f.case),
                )
            };
            out.push(c.with_class(cid));
        }
        Err(e) => out.push(err("case_formula", e.to_string())),
    }

    if h.is_elementary_abelian && h.rank == 2 {
        match is_top_rank_fpf(&res, 2) {
            Ok(v) => out.push(
                Check::from_bool(v.holds, "top_rank_fpf", subject.clone(), json!({ "generators": h.generators, "fixed": v.witness, "dimension": v.fixed_dimension }), "H-fixed subspace of β|_H")
                    .with_class(cid),
            ),
            Err(e) => out.push(err("top_rank_fpf", e.to_string())),
        }
        if let Ok(v) = is_strictly_fpf(&res) {
            if !v.holds {
                out.push(
                    Check::observation(
                        "strict_fpf",
                        subject.clone(),
                        json!({ "generators": h.generators, "element_subgroup": v.witness, "dimension": v.fixed_dimension }),
                        "some nonidentity element fixes a vector; only the top-rank condition is needed for rank reduction",
                    )
                    .with_class(cid),
                );
            }
        }
    }
    out
}
