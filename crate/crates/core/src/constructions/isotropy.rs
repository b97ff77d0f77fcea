//! Isotropy of products of linear spheres, and families of representations
//! assigned to isotropy subgroups.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use super::report::{Check, VerificationReport};
use super::{ConstructionError, Result};
use crate::character::{
    character_table, decompose, dimension_function, induce, is_top_rank_fpf, restrict, ClassFunction, DimensionFunction,
};
use crate::group::{all_subgroups, center, elementary_abelian_rank, Embedded, Group, SubgroupRecord};

/// The product of the unit spheres S(V_1) × … × S(V_k) of characters of G,
/// with its isotropy subgroups (as subgroup conjugacy classes).
#[derive(Debug, Clone)]
pub struct SphereActionModel {
    pub group: Group,
    pub factors: Vec<ClassFunction>,
    /// Subgroup class ids realised as full stabilizers, increasing.
    pub isotropy: Vec<usize>,
    pub rk_x: usize,
    /// Real sphere dimensions 2·deg(χ_i) − 1.
    pub dims: Vec<u64>,
}

impl SphereActionModel {
    /// One representative record per isotropy class.
    pub fn isotropy_representatives(&self) -> Vec<SubgroupRecord> {
        let l = all_subgroups(&self.group).expect("lattice exists for a constructed model");
        self.isotropy.iter().map(|&c| l.records()[l.classes()[c][0]].clone()).collect()
    }

    pub fn all_isotropy_abelian(&self) -> bool {
        self.isotropy_representatives().iter().all(|h| h.is_abelian)
    }
}

/// H is an isotropy subgroup iff every factor has a nonzero H-fixed space and
/// every minimal overgroup K loses dimension in some factor.
pub fn isotropy_of_product(g: &Group, chars: &[ClassFunction]) -> Result<SphereActionModel> {
    let dfs: Vec<DimensionFunction> = chars.iter().map(dimension_function).collect::<std::result::Result<_, _>>()?;
    let lattice = all_subgroups(g)?;
    let mut isotropy = Vec::new();
    for (cid, class) in lattice.classes().iter().enumerate() {
        let h = &lattice.records()[class[0]];
        if !dfs.iter().all(|d| d.n_class(cid) > 0) {
            continue;
        }
        let strict = lattice.minimal_overgroups(h).into_iter().all(|k| {
            let kc = lattice.records()[k].class_id;
            dfs.iter().any(|d| d.n_class(kc) < d.n_class(cid))
        });
        if strict {
            isotropy.push(cid);
        }
    }
    let rk_x = isotropy.iter().map(|&c| lattice.records()[lattice.classes()[c][0]].rank).max().unwrap_or(0);
    let dims = chars.iter().map(|c| 2 * c.degree().as_integer().unwrap_or(0) as u64 - 1).collect();
    Ok(SphereActionModel { group: g.clone(), factors: chars.to_vec(), isotropy, rk_x, dims })
}

/// rk(Z(G)) characters induced from linear characters of the center whose
/// kernels meet trivially, so the center acts freely on the product.
pub fn center_sphere_family(g: &Group) -> Result<SphereActionModel> {
    let z = center(g);
    let zemb = Embedded::of_record(g, &z);
    let k = elementary_abelian_rank(&zemb.group);
    let table = character_table(&zemb.group)?;
    let irr = table.irreducibles(&zemb.group);
    let kernels: Vec<Vec<usize>> = irr
        .iter()
        .map(|l| (0..zemb.group.order()).filter(|&x| l.at(x).as_integer() == Some(1)).collect())
        .collect();
    let n = zemb.group.order();
    let chosen = combinations(irr.len(), k, 1).into_iter().find(|combo| {
        (1..n).all(|x| combo.iter().any(|&i| !kernels[i].contains(&x)))
    });
    let chosen = chosen.ok_or_else(|| {
        ConstructionError::NoSuitableCharacters(format!("no {k} linear characters of Z(G) with trivial joint kernel"))
    })?;
    let factors = chosen
        .iter()
        .map(|&i| induce(&irr[i], &zemb))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    isotropy_of_product(g, &factors)
}

/// All increasing k-subsets of `from..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize, from: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(from, n, k, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BetaRank3,
    BetaAbelian,
    Explicit,
}

/// A character assigned to the representative of each isotropy class.
#[derive(Debug, Clone)]
pub struct RepresentationFamily {
    pub group: Group,
    pub assignment: BTreeMap<usize, (Embedded, ClassFunction)>,
    pub provenance: Provenance,
}

impl RepresentationFamily {
    pub fn new(group: &Group, provenance: Provenance) -> Self {
        RepresentationFamily { group: group.clone(), assignment: BTreeMap::new(), provenance }
    }

    /// Restricts one class function of G to every isotropy representative.
    pub fn from_global(model: &SphereActionModel, f: &ClassFunction, provenance: Provenance) -> Result<Self> {
        let mut fam = Self::new(&model.group, provenance);
        for (cid, h) in model.isotropy.iter().zip(model.isotropy_representatives()) {
            let emb = Embedded::of_record(&model.group, &h);
            let r = restrict(f, &emb)?;
            fam.assignment.insert(*cid, (emb, r));
        }
        Ok(fam)
    }

    /// Replaces the character on one class (it must live on the class
    /// representative's embedding).
    pub fn assign(&mut self, class_id: usize, embedding: Embedded, f: ClassFunction) {
        self.assignment.insert(class_id, (embedding, f));
    }
}

/// Checks restriction-compatibility over all conjugate inclusions and
/// top-rank fixed-point-freeness on isotropy subgroups of rank rk_X.
pub fn check_family(
    g: &Group,
    model: &SphereActionModel,
    family: &RepresentationFamily,
    r: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let lattice = all_subgroups(g)?;
    let mut report = VerificationReport::new("representation_family", g.label());
    report.param("provenance", family.provenance);
    report.param("target_rank", r);
    report.param("rk_x", model.rk_x);
    for &cid in &model.isotropy {
        if !family.assignment.contains_key(&cid) {
            return Err(ConstructionError::MissingAssignment(cid));
        }
    }
    for &cid in &model.isotropy {
        let (_, f) = &family.assignment[&cid];
        let d = decompose(f)?;
        report.push(
            Check::from_bool(d.is_character, "character", format!("class {cid}"), json!({ "class": cid, "witness": d.witness.as_ref().map(|(i, m)| (i, m.to_string())) }), "assigned class function is a character")
                .with_class(cid),
        );
    }
    for &sigma in &model.isotropy {
        let (semb, sf) = &family.assignment[&sigma];
        let srep = &lattice.records()[lattice.classes()[sigma][0]];
        for &tau in &model.isotropy {
            let (temb, tf) = &family.assignment[&tau];
            let trep = &lattice.records()[lattice.classes()[tau][0]];
            if trep.order > srep.order {
                continue;
            }
            for &ti in &lattice.classes()[tau] {
                let t = &lattice.records()[ti];
                if !t.is_subgroup_of(srep) {
                    continue;
                }
                // t = c · trep · c^{-1}
                let c = (0..g.order())
                    .find(|&c| trep.elements().all(|y| t.contains(g.conj(c, y))))
                    .expect("subgroups in one class are conjugate");
                let cinv = g.inv(c);
                let bad = t.elements().find(|&x| {
                    let lhs = sf.at(semb.local(x).unwrap());
                    let rhs = tf.at(temb.local(g.conj(cinv, x)).unwrap());
                    lhs != rhs
                });
                let subject = format!("class {tau} ≤ class {sigma}");
                report.push(
                    Check::from_bool(
                        bad.is_none(),
                        "restriction_compatible",
                        subject,
                        json!({ "sigma": sigma, "tau": tau, "conjugator": c, "element": bad }),
                        format!("conjugate H#{ti} of the class-{tau} representative"),
                    )
                    .with_class(sigma),
                );
            }
        }
    }
    for &cid in &model.isotropy {
        let rep = &lattice.records()[lattice.classes()[cid][0]];
        if rep.rank != model.rk_x {
            continue;
        }
        let (_, f) = &family.assignment[&cid];
        let v = is_top_rank_fpf(f, r)?;
        report.push(
            Check::from_bool(v.holds, "top_rank_fpf", format!("class {cid}"), json!({ "class": cid, "subgroup": v.witness, "dimension": v.fixed_dimension }), format!("rank-{r} elementary abelian subgroups fix no vector"))
                .with_class(cid),
        );
    }
    report.conclusion = if report.passed() {
        "hypotheses of the rank-reduction step hold: isotropy rank can be lowered to rk_X − 1".into()
    } else {
        "family hypotheses fail".into()
    };
    report.elapsed = start.elapsed();
    Ok(report)
}
