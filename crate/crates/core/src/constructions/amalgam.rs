//! Effective characters of the extraspecial group of order p³ and the
//! dimension-function obstruction for the amalgam of two copies along ℤ/p.

use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use super::report::{Check, VerificationReport};
use super::{ConstructionError, Result};
use crate::character::{character_table, ClassFunction, Cyclotomic};
use crate::group::{all_subgroups, center, extraspecial, subgroup_closure, Group};

#[derive(Debug, Clone)]
pub struct EffectiveCharacter {
    /// Multiplicity of each irreducible, in table order.
    pub multiplicities: Vec<u64>,
    pub degree: u64,
    pub character: ClassFunction,
}

fn require_extraspecial_p3(e: &Group) -> Result<usize> {
    let bad = || ConstructionError::BadGroup(format!("{} is not extraspecial of order p³ and exponent p", e.label()));
    let p = e.p_group_prime().ok_or_else(bad)?;
    if e.order() != p * p * p || e.exponent() != p || center(e).order != p || e.is_abelian() {
        return Err(bad());
    }
    Ok(p)
}

/// Non-negative integer combinations of irreducibles of degree ≤ `bound`
/// whose restriction to every rank-2 elementary abelian subgroup has no
/// trivial constituent (isotropy rank ≤ 1).
pub fn effective_characters(e: &Group, bound: u64) -> Result<Vec<EffectiveCharacter>> {
    require_extraspecial_p3(e)?;
    let table = character_table(e)?;
    let irr = table.irreducibles(e);
    let lattice = all_subgroups(e)?;
    let rank2: Vec<_> = lattice.class_representatives().into_iter().filter(|h| h.is_elementary_abelian && h.rank == 2).collect();
    let admissible: Vec<usize> = (0..irr.len())
        .filter(|&i| rank2.iter().all(|h| irr[i].fixed_dimension(&h.members).is_zero()))
        .collect();
    let degrees = table.degrees();
    let mut out = Vec::new();
    let mut m = vec![0u64; admissible.len()];
    enumerate(&admissible, degrees, bound, 0, 0, &mut m, &mut |m, deg| {
        let mut full = vec![0u64; irr.len()];
        let mut chi = ClassFunction::zero(e);
        for (slot, &i) in admissible.iter().enumerate() {
            full[i] = m[slot];
            if m[slot] > 0 {
                chi = chi.add(&irr[i].scale_int(m[slot] as i128));
            }
        }
        out.push(EffectiveCharacter { multiplicities: full, degree: deg, character: chi });
    });
    Ok(out)
}

fn enumerate(
    admissible: &[usize],
    degrees: &[u64],
    bound: u64,
    slot: usize,
    deg: u64,
    m: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64], u64),
) {
    if slot == admissible.len() {
        if deg > 0 {
            emit(m, deg);
        }
        return;
    }
    let d = degrees[admissible[slot]];
    let mut k = 0;
    while deg + k * d <= bound {
        m[slot] = k;
        enumerate(admissible, degrees, bound, slot + 1, deg + k * d, m, emit);
        k += 1;
    }
    m[slot] = 0;
}

/// Compares the dimension functions of effective characters of two copies
/// of E on the amalgamated ℤ/p, central in the first copy and noncentral in
/// the second.
pub fn amalgam_obstruction(p: usize, bound: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    if p.is_multiple_of(2) {
        return Err(ConstructionError::PreconditionFailed("p must be odd".into()));
    }
    let e: Group = Arc::new(extraspecial(p, 3, p)?);
    let e2: Group = Arc::new(extraspecial(p, 3, p)?);
    let mut report = VerificationReport::new("amalgam_obstruction", format!("{} *_Z/{p} {}", e.label(), e2.label()));
    report.param("p", p);
    report.param("degree_bound", bound);
    let z = center(&e);
    let z2 = center(&e2);
    let x = (1..e2.order()).find(|&x| !z2.contains(x)).expect("nonabelian");
    let glued = subgroup_closure(&e2, &[x]);
    report.param("glued_in_first", z.generators.clone());
    report.param("glued_in_second", glued.iter().collect::<Vec<_>>());

    // Structural dichotomy, for every irreducible of E.
    let table = character_table(&e)?;
    let lattice = all_subgroups(&e)?;
    let rank2: Vec<_> = lattice.class_representatives().into_iter().filter(|h| h.is_elementary_abelian && h.rank == 2).collect();
    for (i, alpha) in table.irreducibles(&e).iter().enumerate() {
        let effective = rank2.iter().all(|h| alpha.fixed_dimension(&h.members).is_zero());
        if !effective {
            continue;
        }
        let d = table.degrees()[i] as i128;
        let vanishes = (0..e.order()).all(|y| z.contains(y) || alpha.at(y).is_zero());
        let scalar_on_center = z.elements().skip(1).all(|y| {
            let v = alpha.at(y).div_rational(d.into());
            (1..p as u32).any(|k| v == Cyclotomic::root_of_unity(p as u32, k))
        });
        report.push(Check::from_bool(
            vanishes && scalar_on_center && d == p as i128,
            "effective_irreducible_shape",
            format!("irreducible {i}"),
            json!({ "irreducible": i, "degree": d }),
            "degree p, vanishes outside Z(E), equal to m·ζ_p on Z(E)∖1",
        ));
    }

    let eff1 = effective_characters(&e, bound)?;
    let eff2 = effective_characters(&e2, bound)?;
    let faithful: Vec<usize> = (0..table.len()).filter(|&i| table.degrees()[i] == p as u64).collect();
    let combos_ok = eff1.iter().all(|c| (0..c.multiplicities.len()).all(|i| c.multiplicities[i] == 0 || faithful.contains(&i)));
    report.push(Check::from_bool(
        combos_ok && faithful.len() == p - 1,
        "faithful_combinations",
        "E",
        json!({ "faithful": faithful }),
        format!("{} effective characters, all combinations of the {} degree-p irreducibles", eff1.len(), faithful.len()),
    ));

    let n1: Vec<Cyclotomic> = eff1.iter().map(|c| c.character.fixed_dimension(&z.members)).collect();
    let n2: Vec<Cyclotomic> = eff2.iter().map(|c| c.character.fixed_dimension(&glued)).collect();
    let bad1 = n1.iter().position(|n| !n.is_zero());
    report.push(Check::from_bool(
        bad1.is_none(),
        "central_side_fixed_dimension",
        "Z(E)",
        json!({ "character": bad1.map(|i| &eff1[i].multiplicities) }),
        "every effective character of E has zero Z(E)-fixed space",
    ));
    let bad2 = n2
        .iter()
        .zip(&eff2)
        .position(|(n, c)| n.as_integer() != Some(c.degree as i128 / p as i128) || c.degree % p as u64 != 0 || c.degree < p as u64);
    report.push(Check::from_bool(
        bad2.is_none(),
        "noncentral_side_fixed_dimension",
        "f(Z/p)",
        json!({ "character": bad2.map(|i| &eff2[i].multiplicities) }),
        "every effective character of E' has fixed dimension deg/p ≥ 1 on the glued subgroup",
    ));

    let mut agreements = Vec::new();
    for (i, a) in eff1.iter().enumerate() {
        for (j, b) in eff2.iter().enumerate() {
            if a.degree == b.degree && n1[i] == n2[j] {
                agreements.push((i, j));
            }
        }
    }
    report.param("effective_first", eff1.len());
    report.param("effective_second", eff2.len());
    report.param("pairs_compared", eff1.len() * eff2.len());
    report.push(Check::from_bool(
        agreements.is_empty(),
        "agreement_set_empty",
        "pairs",
        json!({ "first_agreement": agreements.first().map(|&(i, j)| (&eff1[i].multiplicities, &eff2[j].multiplicities)) }),
        format!("{} pairs compared, {} agree", eff1.len() * eff2.len(), agreements.len()),
    ));
    report.conclusion = if report.passed() {
        "obstruction confirmed: no effective characters of the two vertex groups have matching dimension functions on the amalgamated subgroup".into()
    } else {
        "obstruction not confirmed".into()
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_characters_are_faithful_combinations() {
        let e: Group = Arc::new(extraspecial(3, 3, 3).unwrap());
        let eff = effective_characters(&e, 9).unwrap();
        // m1 + m2 ≤ 3 with (m1, m2) ≠ 0
        assert_eq!(eff.len(), 9);
        assert!(eff.iter().all(|c| c.degree % 3 == 0));
    }

    #[test]
    fn obstruction_for_p3() {
        let r = amalgam_obstruction(3, 18).unwrap();
        assert!(r.passed(), "{:?}", r.failures().next());
    }

    #[test]
    fn rejects_non_extraspecial() {
        let g: Group = Arc::new(crate::group::modular(3, 3).unwrap());
        assert!(matches!(effective_characters(&g, 9), Err(ConstructionError::BadGroup(_))));
    }
}
