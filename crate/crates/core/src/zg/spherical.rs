//! Search for cohomology classes whose truncated complexes tensor to an
//! algebraic model of a free action on a product of spheres.

use serde::Serialize;

use super::cocycle::{build_c_zeta, surjective_cocycles, Cocycle};
use super::complex::{tensor_complexes, AbelianGroup, GChainComplex};
use super::lattice::GLattice;
use super::resolution::free_resolution;
use super::tate::{projectivity_certificate, ProjectivityCertificate};
use super::Result;
use crate::group::{all_subgroups, Group, SubgroupRecord};

#[derive(Debug, Clone)]
pub struct SphericalCertificate {
    pub n: usize,
    pub r: usize,
    pub cocycles: Vec<Cocycle>,
    pub complex: GChainComplex,
    pub homology: Vec<AbelianGroup>,
    pub subgroups: Vec<SubgroupRecord>,
    pub projectivity: ProjectivityCertificate,
}

#[derive(Debug, Clone)]
pub enum SphericalSearch {
    Found(Box<SphericalCertificate>),
    Exhausted { candidates: usize, tuples_tried: usize },
}

#[derive(Debug, Clone, Serialize)]
struct Summary<'a> {
    n: usize,
    r: usize,
    cocycles: &'a [Cocycle],
    ranks: Vec<usize>,
    homology: Vec<String>,
}

impl SphericalCertificate {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(Summary {
            n: self.n,
            r: self.r,
            cocycles: &self.cocycles,
            ranks: self.complex.ranks(),
            homology: self.homology.iter().map(ToString::to_string).collect(),
        })
        .expect("serializable")
    }
}

/// Homology of a product of r spheres of dimension d.
pub fn sphere_product_homology(d: usize, r: usize) -> Vec<AbelianGroup> {
    let mut ranks = vec![0usize; r * d + 1];
    let mut binom = 1usize;
    for k in 0..=r {
        ranks[k * d] += binom;
        binom = binom * (r - k) / (k + 1);
    }
    ranks.into_iter().map(AbelianGroup::free).collect()
}

fn tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Searches increasing r-tuples of non-trivial surjective cocycles on Ω̂ⁿℤ
/// (entries bounded by B) for one whose tensored C_ζ complexes have the
/// homology of (S^{n−1})^r and consist of modules projective over every
/// subgroup of rank ≤ r (up to conjugacy).
pub fn find_spherical_classes(g: &Group, n: usize, r: usize, bound: i128) -> Result<SphericalSearch> {
    let subgroups: Vec<SubgroupRecord> =
        all_subgroups(g)?.class_representatives().into_iter().filter(|h| h.rank <= r).cloned().collect();
    let expected = sphere_product_homology(n.saturating_sub(1), r);
    let candidates: Vec<Cocycle> = if r == 0 {
        Vec::new()
    } else {
        let res = free_resolution(g, n - 1)?;
        let all = surjective_cocycles(&res, n, bound)?;
        let cs: Vec<Cocycle> = all.into_iter().filter(|c| !c.is_coboundary).collect();
        let mut tried = 0;
        for t in tuples(cs.len(), r) {
            tried += 1;
            let mut complex: Option<GChainComplex> = None;
            for &i in &t {
                let cz = build_c_zeta(&res, n, &cs[i].values)?;
                complex = Some(match complex {
                    None => cz,
                    Some(c) => tensor_complexes(&c, &cz),
                });
            }
            let complex = complex.expect("r ≥ 1");
            let homology = complex.homology();
            if homology != expected {
                continue;
            }
            let projectivity = projectivity_certificate(&complex, &subgroups);
            if projectivity.all_projective {
                let cocycles = t.iter().map(|&i| cs[i].clone()).collect();
                return Ok(SphericalSearch::Found(Box::new(SphericalCertificate {
                    n,
                    r,
                    cocycles,
                    complex,
                    homology,
                    subgroups,
                    projectivity,
                })));
            }
        }
        return Ok(SphericalSearch::Exhausted { candidates: cs.len(), tuples_tried: tried });
    };
    let complex = GChainComplex::concentrated(GLattice::trivial(g, 1));
    let homology = complex.homology();
    let projectivity = projectivity_certificate(&complex, &subgroups);
    if projectivity.all_projective {
        Ok(SphericalSearch::Found(Box::new(SphericalCertificate {
            n,
            r,
            cocycles: candidates,
            complex,
            homology,
            subgroups,
            projectivity,
        })))
    } else {
        Ok(SphericalSearch::Exhausted { candidates: 0, tuples_tried: 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian;
    use std::sync::Arc;

    #[test]
    fn sphere_homology_patterns() {
        let s = |v: &[usize]| v.iter().map(|&k| AbelianGroup::free(k)).collect::<Vec<_>>();
        assert_eq!(sphere_product_homology(1, 2), s(&[1, 2, 1]));
        assert_eq!(sphere_product_homology(2, 2), s(&[1, 0, 2, 0, 1]));
        assert_eq!(sphere_product_homology(0, 2), s(&[4]));
        assert_eq!(sphere_product_homology(3, 0), s(&[1]));
    }

    #[test]
    fn circle_for_cyclic_group() {
        let g: Group = Arc::new(abelian(&[3]).unwrap());
        match find_spherical_classes(&g, 2, 1, 1).unwrap() {
            SphericalSearch::Found(c) => {
                assert_eq!(c.homology, sphere_product_homology(1, 1));
                assert_eq!(c.subgroups.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torus_for_rank_two() {
        let g: Group = Arc::new(abelian(&[3, 3]).unwrap());
        match find_spherical_classes(&g, 2, 2, 1).unwrap() {
            SphericalSearch::Found(c) => {
                assert_eq!(c.homology, sphere_product_homology(1, 2));
                assert_eq!(c.subgroups.len(), 6);
                assert!(c.projectivity.all_projective);
                assert_eq!(c.projectivity.reports.len(), 18);
            }
            other => panic!("{other:?}"),
        }
    }
}
