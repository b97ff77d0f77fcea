//! Property suites, each returning a one-line summary or the first failure.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grpcert::character::{character_table, induce, inner_product, restrict, Cyclotomic};
use grpcert::group::{all_subgroups, Embedded, Group};
use grpcert::zg::matrix::smith;
use grpcert::zg::{
    build_c_zeta, cocycle_class, find_spherical_classes, free_resolution, surjective_cocycles, tate_01,
    tensor_complexes, AbelianGroup, GChainComplex, GLattice, IntMatrix, SphericalSearch,
};

use super::*;

pub type Outcome = Result<String, String>;

fn c(n: i128) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

/// Row and column orthogonality weighted by class sizes, on every small
/// catalog group.
pub fn orthogonality() -> Outcome {
    let mut tables = 0;
    for spec in SMALL_CATALOG {
        let g = group(spec);
        let t = character_table(&g).map_err(|e| format!("{spec}: {e}"))?;
        let cl = g.classes();
        let k = cl.len();
        if t.len() != k {
            return Err(format!("{spec}: {} characters for {k} classes", t.len()));
        }
        for i in 0..k {
            if !(g.order() as u64).is_multiple_of(t.degrees()[i]) {
                return Err(format!("{spec}: degree {} does not divide |G|", t.degrees()[i]));
            }
            for j in 0..k {
                let mut acc = Cyclotomic::zero();
                for cc in 0..k {
                    acc += &(&(&t.row(i)[cc] * &t.row(j)[cc].conj()) * &c(cl.class_sizes[cc] as i128));
                }
                if acc != c(if i == j { g.order() as i128 } else { 0 }) {
                    return Err(format!("{spec}: rows {i}, {j} give {acc}"));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                let mut acc = Cyclotomic::zero();
                for i in 0..k {
                    acc += &(&t.row(i)[a] * &t.row(i)[b].conj());
                }
                let want = if a == b { centralizer_order(&g, &[cl.representatives[a]]) as i128 } else { 0 };
                if acc != c(want) {
                    return Err(format!("{spec}: columns {a}, {b} give {acc}, expected {want}"));
                }
            }
        }
        tables += 1;
    }
    Ok(format!("{tables} character tables satisfy both orthogonality relations"))
}

/// The subgroup lattice against joins of single elements, including the
/// normal, abelian and rank flags.
pub fn subgroup_oracle() -> Outcome {
    let mut groups = 0;
    let mut total = 0;
    for spec in SMALL_CATALOG {
        let g = group(spec);
        let lattice = all_subgroups(&g).map_err(|e| format!("{spec}: {e}"))?;
        let oracle = brute_force_subgroups(&g);
        let ours: HashSet<Vec<usize>> = lattice.records().iter().map(|h| bitset_elements(&h.members)).collect();
        if ours.len() != lattice.len() {
            return Err(format!("{spec}: duplicate subgroups in the lattice"));
        }
        if ours != oracle {
            return Err(format!("{spec}: {} subgroups, oracle finds {}", ours.len(), oracle.len()));
        }
        for h in lattice.records() {
            let els = bitset_elements(&h.members);
            let set: BTreeSet<usize> = els.iter().copied().collect();
            let normal = (0..g.order()).all(|x| els.iter().all(|&y| set.contains(&g.conj(x, y))));
            let abelian = els.iter().all(|&a| els.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            if normal != h.is_normal || abelian != h.is_abelian || els.len() != h.order {
                return Err(format!("{spec}: flags disagree on subgroup {:?}", h.generators));
            }
            if naive_closure(&g, &h.generators).len() != h.order {
                return Err(format!("{spec}: recorded generators do not generate"));
            }
        }
        groups += 1;
        total += oracle.len();
    }
    Ok(format!("{groups} groups, {total} subgroups, identical to the join-closure oracle"))
}

fn random_triple_groups() -> Vec<Group> {
    ["cyclic:9", "abelian:3,3", "extraspecial:3:3:3", "modular:3:3", "extraspecial:5:3:5", "product:extraspecial:3:3:3*cyclic:3", "abelian:2,2"]
        .iter()
        .map(|s| group(s))
        .collect()
}

/// ⟨Ind φ, χ⟩_G = ⟨φ, Res χ⟩_H on random triples, with induction also
/// compared against the element-by-element formula.
pub fn frobenius(triples: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let groups = random_triple_groups();
    for trial in 0..triples {
        let g = groups.choose(&mut rng).unwrap();
        let lattice = all_subgroups(g).map_err(|e| e.to_string())?;
        let h = &lattice.records()[rng.gen_range(0..lattice.len())];
        let emb = Embedded::of_record(g, h);
        let th = character_table(&emb.group).map_err(|e| e.to_string())?;
        let tg = character_table(g).map_err(|e| e.to_string())?;
        let phi = th.irreducible(&emb.group, rng.gen_range(0..th.len()));
        let chi = tg.irreducible(g, rng.gen_range(0..tg.len()));

        let ind = induce(&phi, &emb).map_err(|e| e.to_string())?;
        let members: BTreeSet<usize> = bitset_elements(&h.members).into_iter().collect();
        let naive = naive_induce(g, &members, |x| phi.at(emb.local(x).unwrap()).clone());
        if (0..g.order()).any(|x| *ind.at(x) != naive[x]) {
            return Err(format!("trial {trial}: induction disagrees with the element formula on {} < {}", h.order, g.label()));
        }
        let lhs = elementwise_inner(g, |x| naive[x].clone(), |x| chi.at(x).clone());
        let res = restrict(&chi, &emb).map_err(|e| e.to_string())?;
        let rhs = elementwise_inner(&emb.group, |x| phi.at(x).clone(), |x| chi.at(emb.to_parent(x)).clone());
        if lhs != rhs || inner_product(&ind, &chi) != lhs || inner_product(&phi, &res) != rhs {
            return Err(format!("trial {trial}: ⟨Ind φ, χ⟩ = {lhs} but ⟨φ, Res χ⟩ = {rhs}"));
        }
        if lhs.as_integer().is_none_or(|n| n < 0) {
            return Err(format!("trial {trial}: multiplicity {lhs} is not a non-negative integer"));
        }
    }
    Ok(format!("{triples} random (φ, χ, H) triples satisfy Frobenius reciprocity"))
}

/// Ind_K^G = Ind_H^G ∘ Ind_K^H on sampled chains K ≤ H ≤ G.
pub fn induction_in_stages(chains: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = random_triple_groups();
    let mut done = 0;
    while done < chains {
        let g = groups.choose(&mut rng).unwrap();
        let lattice = all_subgroups(g).map_err(|e| e.to_string())?;
        let h = &lattice.records()[rng.gen_range(0..lattice.len())];
        let inside: Vec<_> = lattice.records().iter().filter(|k| k.is_subgroup_of(h)).collect();
        let k = inside.choose(&mut rng).unwrap();
        let hemb = Embedded::of_record(g, h);
        let kemb = Embedded::of_record(g, k);
        let k_in_h = hemb.restrict_to(&k.members);
        let tk = character_table(&kemb.group).map_err(|e| e.to_string())?;
        let i = rng.gen_range(0..tk.len());
        let phi = tk.irreducible(&kemb.group, i);
        let phi_local = tk.irreducible(&k_in_h.group, i);
        let direct = induce(&phi, &kemb).map_err(|e| e.to_string())?;
        let staged = induce(&induce(&phi_local, &k_in_h).map_err(|e| e.to_string())?, &hemb).map_err(|e| e.to_string())?;
        if direct.values() != staged.values() {
            return Err(format!("{}: stages disagree for |K| = {}, |H| = {}", g.label(), k.order, h.order));
        }
        done += 1;
    }
    Ok(format!("{chains} chains K ≤ H ≤ G induce identically in stages"))
}

/// A permutation lattice is projective over H iff no nonidentity element of
/// H fixes a basis vector. Returns None when some matrix is not a
/// permutation matrix.
fn permutation_truth(m: &GLattice, h: &[usize]) -> Option<bool> {
    let mut free = true;
    for &x in h {
        let a = m.matrix_of(x);
        for j in 0..m.rank {
            let col: Vec<i128> = (0..m.rank).map(|i| a.get(i, j)).collect();
            if col.iter().filter(|&&v| v == 1).count() != 1 || col.iter().any(|&v| v != 0 && v != 1) {
                return None;
            }
            if x != 0 && col[j] == 1 {
                free = false;
            }
        }
    }
    Some(free)
}

/// The Tate verdict against ground truth on labelled lattices: permutation
/// lattices (cosets, regular, trivial, sums, tensors), judged by point
/// stabilizers, and augmentation ideals, which are projective only over 1.
pub fn tate_oracle() -> Outcome {
    let mut lattices = 0;
    let mut verdicts = 0;
    for spec in ["cyclic:3", "cyclic:9", "cyclic:5", "abelian:2,2", "abelian:3,3", "extraspecial:3:3:3", "modular:3:3"] {
        let g = group(spec);
        let lattice = all_subgroups(&g).map_err(|e| e.to_string())?;
        let reps = lattice.class_representatives();
        let mut labelled: Vec<(String, GLattice, Option<bool>)> = Vec::new();
        for k in &reps {
            labelled.push((format!("Z[G/<{:?}>]", k.generators), GLattice::permutation(&g, k), None));
        }
        labelled.push(("Z".into(), GLattice::trivial(&g, 1), None));
        labelled.push(("Z^2".into(), GLattice::trivial(&g, 2), None));
        labelled.push(("Z[G]".into(), GLattice::regular(&g), None));
        if g.order() <= 9 {
            labelled.push(("Z[G]^2".into(), GLattice::direct_sum(&[GLattice::regular(&g), GLattice::regular(&g)]), None));
        }
        let small: Vec<_> = reps.iter().filter(|k| k.order > 1 && k.order < g.order()).take(2).collect();
        if let [a, b] = small[..] {
            let pa = GLattice::permutation(&g, a);
            let pb = GLattice::permutation(&g, b);
            labelled.push(("sum".into(), GLattice::direct_sum(&[pa.clone(), pb.clone()]), None));
            labelled.push(("tensor".into(), pa.tensor(&pb), None));
            labelled.push(("regular+trivial".into(), GLattice::direct_sum(&[GLattice::regular(&g), GLattice::trivial(&g, 1)]), None));
        }
        labelled.push(("I_G".into(), GLattice::augmentation_ideal(&g), Some(true)));
        for (name, m, is_aug) in &labelled {
            m.validate().map_err(|e| format!("{spec} {name}: {e}"))?;
            for h in &reps {
                let els = bitset_elements(&h.members);
                let truth = match is_aug {
                    Some(_) => h.order == 1,
                    None => permutation_truth(m, &els).ok_or_else(|| format!("{spec} {name}: not a permutation lattice"))?,
                };
                let t = tate_01(h, m);
                if t.projective != truth {
                    return Err(format!("{spec} {name} over <{:?}>: verdict {} but truth {truth} ({:?}, {:?})", h.generators, t.projective, t.h_minus1, t.h_zero));
                }
                if name == "Z" && h.order > 1 && t.h_zero != vec![h.order as i128] {
                    return Err(format!("{spec}: Ĥ⁰(H, Z) = {:?}, expected Z/{}", t.h_zero, h.order));
                }
                verdicts += 1;
            }
            lattices += 1;
        }
    }
    if lattices < 50 {
        return Err(format!("only {lattices} labelled lattices"));
    }
    Ok(format!("{lattices} labelled lattices, {verdicts} Tate verdicts agree with ground truth"))
}

fn c_zeta_family() -> Result<Vec<(String, GChainComplex)>, String> {
    let mut out = Vec::new();
    for (spec, n) in [("cyclic:3", 2), ("cyclic:3", 4), ("cyclic:9", 2), ("cyclic:5", 2), ("abelian:3,3", 2), ("abelian:2,2", 2)] {
        let g = group(spec);
        let res = free_resolution(&g, n).map_err(|e| e.to_string())?;
        for z in surjective_cocycles(&res, n, 1).map_err(|e| e.to_string())? {
            let cz = build_c_zeta(&res, n, &z.values).map_err(|e| format!("{spec} n={n}: {e}"))?;
            out.push((format!("C_ζ {spec} n={n} {:?}", z.values), cz));
        }
    }
    Ok(out)
}

fn graded_tensor(a: &[AbelianGroup], b: &[AbelianGroup]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.free_rank * y.free_rank;
        }
    }
    out
}

/// d∘d = 0 and equivariance under every element on resolutions, C_ζ, their
/// tensor products and spherical certificates; C_ζ homology is ℤ in the
/// two end degrees; Künneth holds on C_ζ products.
pub fn complexes() -> Outcome {
    let mut checked = 0;
    for (spec, len) in [("cyclic:3", 4), ("cyclic:9", 3), ("cyclic:5", 3), ("abelian:2,2", 3), ("abelian:3,3", 3), ("abelian:3,9", 2), ("abelian:3,3,3", 2)] {
        let g = group(spec);
        let res = free_resolution(&g, len).map_err(|e| e.to_string())?;
        check_complex_elementwise(&res.complex).map_err(|e| format!("resolution {spec}: {e}"))?;
        // exactness over ℚ: rank ε + rank d_1 = rank P_0, rank d_i + rank d_{i+1} = rank P_i
        let mut maps = vec![res.augmentation.clone()];
        maps.extend(res.complex.boundaries.iter().cloned());
        for i in 0..len {
            if rational_rank(&maps[i]) + rational_rank(&maps[i + 1]) != res.complex.modules[i].rank {
                return Err(format!("resolution {spec} is not exact at degree {i} over Q"));
            }
        }
        checked += 1;
    }
    let family = c_zeta_family()?;
    for (name, cz) in &family {
        check_complex_elementwise(cz).map_err(|e| format!("{name}: {e}"))?;
        let h = cz.homology();
        let top = cz.top_degree();
        for (i, hi) in h.iter().enumerate() {
            let want = if i == 0 || i == top { AbelianGroup::free(1) } else { AbelianGroup::free(0) };
            if *hi != want {
                return Err(format!("{name}: H_{i} = {hi}"));
            }
        }
        checked += 1;
    }
    for (na, a) in &family {
        for (nb, b) in &family {
            if !std::sync::Arc::ptr_eq(&a.modules[0].group, &b.modules[0].group) || a.modules[0].group.order() > 9 {
                continue;
            }
            let t = tensor_complexes(a, b);
            check_complex_elementwise(&t).map_err(|e| format!("{na} ⊗ {nb}: {e}"))?;
            let h = t.homology();
            let want = graded_tensor(&a.homology(), &b.homology());
            let got: Vec<usize> = h.iter().map(|x| x.free_rank).collect();
            if got != want || h.iter().any(|x| !x.torsion.is_empty()) {
                return Err(format!("{na} ⊗ {nb}: Künneth predicts {want:?}, homology {h:?}"));
            }
            checked += 1;
        }
    }
    for (spec, n, r) in [("cyclic:3", 2, 1), ("abelian:3,3", 2, 2)] {
        let g = group(spec);
        if let SphericalSearch::Found(cert) = find_spherical_classes(&g, n, r, 1).map_err(|e| e.to_string())? {
            check_complex_elementwise(&cert.complex).map_err(|e| format!("certificate {spec}: {e}"))?;
            checked += 1;
        } else {
            return Err(format!("no certificate for {spec}"));
        }
    }
    Ok(format!("{checked} complexes: d∘d = 0, equivariant under every element, homology and Künneth as predicted"))
}

/// Künneth with torsion over the trivial group: multiplication-by-a and
/// multiplication-by-b complexes.
pub fn kunneth_with_torsion() -> Outcome {
    let g = group("cyclic:1");
    let z = GLattice::trivial(&g, 1);
    let mult = |a: i128| GChainComplex::new(vec![z.clone(), z.clone()], vec![IntMatrix::from_rows(&[vec![a]])]).unwrap();
    let gcd = |a: i128, b: i128| num_integer::Integer::gcd(&a, &b);
    for a in 1..=6 {
        for b in 1..=6 {
            let h = tensor_complexes(&mult(a), &mult(b)).homology();
            let g0 = gcd(a, b);
            let expect = [(0usize, vec![g0]), (0, vec![g0]), (0, vec![])];
            for (k, (free, tors)) in expect.iter().enumerate() {
                let tors: Vec<i128> = tors.iter().copied().filter(|&t| t > 1).collect();
                if primary_parts(h[k].free_rank, &h[k].torsion) != primary_parts(*free, &tors) {
                    return Err(format!("Z/{a} ⊗ Z/{b}: H_{k} = {}", h[k]));
                }
            }
        }
    }
    Ok("H(Z/a ⊗ Z/b) = (Z/gcd, Z/gcd, 0) for a, b ≤ 6".into())
}

/// The two classes inflated from the factors of (ℤ/3)² appear among the
/// degree-2 cocycle classes found with bound 1.
pub fn inflations() -> Outcome {
    let g = group("abelian:3,3");
    let res = free_resolution(&g, 3).map_err(|e| e.to_string())?;
    let found = surjective_cocycles(&res, 2, 1).map_err(|e| e.to_string())?;
    let keys: HashSet<Vec<i128>> = found.iter().filter(|z| !z.is_coboundary).map(|z| z.class_key.clone()).collect();
    let d1 = res.complex.boundary(1);
    let d2 = res.complex.boundary(2);
    let d3 = res.complex.boundary(3);
    let basis = grpcert::zg::matrix::kernel(d1);
    let n = g.order();
    // y with d_2 y = basis, through the Smith form of d_2
    let s = smith(d2);
    let ub = s.u.mul(&basis);
    let mut y_hat = IntMatrix::zeros(d2.cols(), basis.cols());
    for (i, &d) in s.diagonal.iter().enumerate() {
        for j in 0..basis.cols() {
            if ub.get(i, j) % d != 0 {
                return Err("syzygy basis is not in the image of d_2".into());
            }
            y_hat.set(i, j, ub.get(i, j) / d);
        }
    }
    let y = s.v.mul(&y_hat);
    if d2.mul(&y) != basis {
        return Err("lifting through d_2 failed".into());
    }
    for target in [vec![2, 0], vec![0, 2]] {
        let slot = res.summands[2].iter().position(|c| *c == target).ok_or("summand missing")?;
        let f = IntMatrix::from_fn(1, d2.cols(), |_, j| (j / n == slot) as i128);
        if !f.mul(d3).is_zero() {
            return Err(format!("inflation {target:?} is not a cocycle"));
        }
        let zeta: Vec<i128> = (0..basis.cols()).map(|j| f.mul(&y).get(0, j)).collect();
        let key = cocycle_class(&res, 2, &zeta).map_err(|e| e.to_string())?;
        if key.iter().all(|&v| v == 0) {
            return Err(format!("inflation {target:?} is a coboundary"));
        }
        if !keys.contains(&key) {
            return Err(format!("inflation {target:?} (class {key:?}) is missing from {} classes", keys.len()));
        }
    }
    Ok(format!("both inflated classes appear among {} nontrivial classes", keys.len()))
}
