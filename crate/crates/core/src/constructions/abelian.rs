//! The class function for abelian isotropy and its comparison with the
//! induced characters η.

use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use super::isotropy::{check_family, Provenance, RepresentationFamily, SphereActionModel};
use super::report::{Check, VerificationReport};
use super::{ConstructionError, Result};
use crate::character::{
    decompose, induce, is_top_rank_fpf, reduced_regular, restrict, ClassFunction, Cyclotomic, Rational,
};
use crate::group::{abelian, center, elementary_abelian_rank, subgroup_closure, BitSet, Embedded, Group, SubgroupRecord};

/// |G|(p^r − 1) at the identity, −|G| on elements of order p, 0 elsewhere.
pub fn beta_abelian(g: &Group, r: usize) -> Result<ClassFunction> {
    let p = g
        .p_group_prime()
        .ok_or_else(|| ConstructionError::PreconditionFailed(format!("{} is not a nontrivial p-group", g.label())))?;
    let n = g.order() as i128;
    let top = n * ((p as i128).pow(r as u32) - 1);
    Ok(ClassFunction::from_fn(g, |x| {
        Cyclotomic::from_int(if x == 0 {
            top
        } else if g.element_order(x) == p {
            -n
        } else {
            0
        })
    }))
}

/// η = |G||A_p|/|A| · Ind_{A_p}^A (ρ_0 ∘ f), where A_p = Ω_1(A), f embeds A_p
/// in (ℤ/p)^r by sending the least-index basis to the standard basis, and
/// ρ_0 is the reduced regular character.
pub fn eta(g: &Group, a: &SubgroupRecord, r: usize) -> Result<(Embedded, ClassFunction)> {
    let subgroup = a.generators.clone();
    if !a.is_abelian {
        return Err(ConstructionError::NonAbelianIsotropy { subgroup });
    }
    let p = g
        .p_group_prime()
        .ok_or_else(|| ConstructionError::PreconditionFailed("not a p-group".into()))?;
    let ap_elems: Vec<usize> = a.elements().filter(|&x| x == 0 || g.element_order(x) == p).collect();
    let ap = BitSet::from_indices(g.order(), ap_elems.iter().copied());
    let mut basis = Vec::new();
    let mut span = BitSet::from_indices(g.order(), [0]);
    for &x in &ap_elems {
        if !span.contains(x) {
            basis.push(x);
            span = subgroup_closure(g, &basis);
        }
    }
    if basis.len() > r {
        return Err(ConstructionError::RankExceedsTarget { subgroup, rank: basis.len(), target: r });
    }
    let target = Arc::new(abelian(&vec![p; r])?);
    let rho0 = reduced_regular(&target);
    // f(Π b_i^{c_i}) = Σ c_i e_i, in the mixed-radix indexing of abelian().
    let mut image = vec![usize::MAX; g.order()];
    let k = basis.len();
    for code in 0..p.pow(k as u32) {
        let mut x = 0;
        let mut idx = 0;
        let mut rem = code;
        for (i, &b) in basis.iter().enumerate() {
            let c = rem % p;
            rem /= p;
            x = g.mul(x, g.pow(b, c));
            idx += c * p.pow((r - 1 - i) as u32);
        }
        image[x] = idx;
    }
    let aemb = Embedded::of_record(g, a);
    let apemb = aemb.restrict_to(&ap);
    let rho = ClassFunction::from_fn(&apemb.group, |x| rho0.at(image[aemb.to_parent(apemb.to_parent(x))]).clone());
    let factor = Rational::new((g.order() * ap_elems.len()) as i128, a.order as i128);
    let eta = induce(&rho, &apemb)?.scale(factor);
    Ok((aemb, eta))
}

/// Verifies, for every abelian isotropy subgroup A of the model, that
/// β|_A = η(A) is a character, and that A ≅ (ℤ/p)^r gets a multiple of
/// the reduced regular character with zero fixed space.
pub fn verify_abelian(g: &Group, model: &SphereActionModel, r: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("beta_abelian", g.label());
    let beta = beta_abelian(g, r)?;
    let rk = elementary_abelian_rank(g);
    let zrk = elementary_abelian_rank(&Embedded::of_record(g, &center(g)).group);
    report.param("rank", r);
    report.param("rk_g", rk);
    report.param("rk_center", zrk);
    report.param("rk_x", model.rk_x);
    report.param("factor_dims", &model.dims);
    report.push(Check::from_bool(
        model.rk_x + zrk == rk,
        "rank_formula",
        "X",
        json!({ "rk_x": model.rk_x, "rk_g": rk, "rk_center": zrk }),
        format!("rk_X = {} = rk(G) − rk(Z(G)) = {} − {}", model.rk_x, rk, zrk),
    ));
    let p = g.p_group_prime().expect("beta_abelian checked this");
    for (&cid, a) in model.isotropy.iter().zip(model.isotropy_representatives()) {
        let subject = format!("class {cid}");
        let gens = json!({ "generators": a.generators, "order": a.order });
        match eta(g, &a, r) {
            Err(ConstructionError::NonAbelianIsotropy { subgroup }) => {
                report.push(Check::fail("abelian_isotropy", subject, json!({ "generators": subgroup }), "isotropy subgroup is not abelian").with_class(cid));
            }
            Err(ConstructionError::RankExceedsTarget { subgroup, rank, target }) => {
                report.push(Check::fail("isotropy_rank", subject, json!({ "generators": subgroup, "rank": rank, "target": target }), "rank of Ω_1(A) exceeds the target").with_class(cid));
            }
            Err(e) => return Err(e),
            Ok((emb, eta)) => {
                report.push(Check::pass("abelian_isotropy", subject.clone(), format!("order {}", a.order)).with_class(cid));
                let res = restrict(&beta, &emb)?;
                let same = res.values() == eta.values();
                report.push(Check::from_bool(same, "eta_matches_beta", subject.clone(), gens.clone(), "β|_A = η(A)").with_class(cid));
                let d = decompose(&eta)?;
                report.push(
                    Check::from_bool(d.is_character, "character", subject.clone(), json!({ "generators": a.generators, "witness": d.witness.as_ref().map(|(i, m)| (i, m.to_string())) }), "η(A) is a character")
                        .with_class(cid),
                );
                if a.is_elementary_abelian && a.rank == r && a.order == p.pow(r as u32) {
                    let expected = reduced_regular(&emb.group).scale_int(g.order() as i128);
                    report.push(
                        Check::from_bool(res == expected, "reduced_regular_multiple", subject.clone(), gens.clone(), "β|_A = |G| · reduced regular")
                            .with_class(cid),
                    );
                    let v = is_top_rank_fpf(&res, r)?;
                    report.push(
                        Check::from_bool(v.holds, "top_rank_fpf", subject.clone(), json!({ "generators": a.generators, "dimension": v.fixed_dimension }), "A fixes no vector")
                            .with_class(cid),
                    );
                }
            }
        }
    }
    if model.all_isotropy_abelian() {
        let fam = RepresentationFamily::from_global(model, &beta, Provenance::BetaAbelian)?;
        let fr = check_family(g, model, &fam, r)?;
        for mut c in fr.checks {
            c.name = format!("family_{}", c.name);
            report.push(c);
        }
    }
    report.conclusion = if report.passed() {
        "every abelian isotropy subgroup receives a character, free in top rank".into()
    } else {
        format!("{} check(s) failed", report.count(super::Status::Fail))
    };
    report.elapsed = start.elapsed();
    Ok(report)
}
