use super::{is_prime, FiniteGroup, GroupError, Result, DEFAULT_PERMUTATION_CAP};

/// Validates a square table, relocates its identity to index 0 and returns the group.
pub fn group_from_cayley_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::BadSpec("empty Cayley table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::BadSpec(format!("row {i} has length {} (expected {n})", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&c| c >= n) {
            return Err(GroupError::BadSpec(format!("entry {bad} in row {i} is out of range")));
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| GroupError::NotAGroup { reason: "no two-sided identity".into(), witness: vec![] })?;
    // swap labels e <-> 0
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut flat = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
        }
    }
    for a in 0..n {
        if !flat[a * n..(a + 1) * n].contains(&0) {
            return Err(GroupError::NotAGroup { reason: "no inverse".into(), witness: vec![relabel(a)] });
        }
    }
    let g = FiniteGroup::from_table_unchecked(n, flat, format!("cayley({n})"));
    g.validate()?;
    Ok(g)
}

/// Closes permutation generators (images of `0..degree`) under composition,
/// with the default order cap.
pub fn group_from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    group_from_permutations_with_cap(degree, generators, DEFAULT_PERMUTATION_CAP)
}

pub fn group_from_permutations_with_cap(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    for (i, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        if g.len() != degree {
            return Err(GroupError::BadSpec(format!("generator {i} has {} images (degree {degree})", g.len())));
        }
        for &x in g {
            if x >= degree || seen[x] {
                return Err(GroupError::BadSpec(format!("generator {i} is not a bijection")));
            }
            seen[x] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    // (p * q)(x) = p(q(x))
    let compose = |p: &Vec<usize>, q: &Vec<usize>| q.iter().map(|&x| p[x]).collect::<Vec<_>>();
    let (mut g, elems) =
        FiniteGroup::from_closure(id, generators, compose, format!("perm({degree})"), cap)?;
    g.permutations = Some(elems);
    Ok(g)
}

/// Direct product of cyclic groups of the given orders; elements are indexed
/// in mixed radix with the first factor most significant.
pub fn abelian(orders: &[usize]) -> Result<FiniteGroup> {
    if orders.contains(&0) {
        return Err(GroupError::BadSpec("cyclic factor of order 0".into()));
    }
    let n: usize = orders.iter().product();
    let coords: Vec<Vec<usize>> = (0..n).map(|i| decode(i, orders)).collect();
    let mut table = vec![0u32; n * n];
    let mut buf = vec![0; orders.len()];
    for a in 0..n {
        for b in 0..n {
            for k in 0..orders.len() {
                buf[k] = (coords[a][k] + coords[b][k]) % orders[k];
            }
            table[a * n + b] = encode(&buf, orders) as u32;
        }
    }
    let label = if orders.len() == 1 {
        format!("cyclic({})", orders[0])
    } else {
        format!("abelian({})", join(orders))
    };
    let mut g = FiniteGroup::from_table_unchecked(n, table, label);
    g.set_cyclic_coords(orders.to_vec(), coords);
    Ok(g)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    abelian(&[n])
}

/// Heisenberg group of order p^{2m+1}: triples (x, y, z) with x, y in F_p^m,
/// z in F_p and (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x.y').
pub fn heisenberg(p: usize, m: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || m == 0 {
        return Err(GroupError::BadSpec(format!("heisenberg needs a prime p and m >= 1 (got {p}, {m})")));
    }
    let radix = vec![p; 2 * m + 1];
    let n = p.pow(2 * m as u32 + 1);
    let coords: Vec<Vec<usize>> = (0..n).map(|i| decode(i, &radix)).collect();
    let mut table = vec![0u32; n * n];
    let mut buf = vec![0; 2 * m + 1];
    for a in 0..n {
        let ca = &coords[a];
        for b in 0..n {
            let cb = &coords[b];
            let mut dot = 0;
            for k in 0..2 * m {
                buf[k] = (ca[k] + cb[k]) % p;
            }
            for k in 0..m {
                dot += ca[k] * cb[m + k];
            }
            buf[2 * m] = (ca[2 * m] + cb[2 * m] + dot) % p;
            table[a * n + b] = encode(&buf, &radix) as u32;
        }
    }
    Ok(FiniteGroup::from_table_unchecked(n, table, format!("extraspecial({p},{},{p})", 2 * m + 1)))
}

/// Extraspecial group of order p^{order_exp} (order_exp = 2m+1) and exponent
/// `exp` in {p, p^2}, p odd.
pub fn extraspecial(p: usize, order_exp: usize, exp: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || p == 2 {
        return Err(GroupError::BadSpec(format!("extraspecial groups are built for odd primes only (got {p})")));
    }
    if order_exp < 3 || order_exp.is_multiple_of(2) {
        return Err(GroupError::BadSpec(format!(
            "extraspecial order exponent must be odd and >= 3 (got {order_exp})"
        )));
    }
    let m = (order_exp - 1) / 2;
    if exp == p {
        heisenberg(p, m)
    } else if exp == p * p {
        let mut g = modular(p, 3)?;
        for _ in 1..m {
            let h = heisenberg(p, 1)?;
            g = central_product(&g, &h)?;
        }
        Ok(g.with_label(format!("extraspecial({p},{order_exp},{exp})")))
    } else {
        Err(GroupError::BadSpec(format!("extraspecial exponent must be p or p^2 (got {exp})")))
    }
}

/// The modular group M(p^n) = <x, y | x^{p^{n-1}} = y^p = 1, y^{-1} x y = x^{1+p^{n-2}}>.
pub fn modular(p: usize, n: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || n < 3 {
        return Err(GroupError::BadSpec(format!("M(p,n) needs a prime p and n >= 3 (got {p}, {n})")));
    }
    let big = p.pow(n as u32 - 1);
    let k = 1 + p.pow(n as u32 - 2);
    // y x y^{-1} = x^{k'} with k' = k^{-1} mod p^{n-1}
    let kinv = (1..big).find(|&t| (t * k) % big == 1).expect("k is a unit");
    let mut kpow = vec![1usize; p];
    for j in 1..p {
        kpow[j] = kpow[j - 1] * kinv % big;
    }
    // element x^i y^j at index i*p + j
    let order = big * p;
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let (i1, j1) = (a / p, a % p);
        for b in 0..order {
            let (i2, j2) = (b / p, b % p);
            let i = (i1 + i2 * kpow[j1]) % big;
            let j = (j1 + j2) % p;
            table[a * order + b] = (i * p + j) as u32;
        }
    }
    Ok(FiniteGroup::from_table_unchecked(order, table, format!("M({p},{n})")))
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
        }
    }
    let mut g = FiniteGroup::from_table_unchecked(n, table, format!("({}) x ({})", a.label(), b.label()));
    if let (Some((ma, ca)), Some((mb, cb))) = (a.cyclic_coords(), b.cyclic_coords()) {
        let moduli: Vec<usize> = ma.iter().chain(mb).copied().collect();
        let coords = (0..n).map(|x| ca[x / nb].iter().chain(&cb[x % nb]).copied().collect()).collect();
        g.set_cyclic_coords(moduli, coords);
    }
    Ok(g)
}

/// Central product identifying the least-index central element of prime order
/// in `a` with the inverse of the least-index central element of the same
/// order in `b`.
pub fn central_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let za = least_central_prime_order(a)
        .ok_or_else(|| GroupError::BadSpec(format!("{} has no central element of prime order", a.label())))?;
    let p = a.element_order(za);
    let zb = (1..b.order())
        .find(|&x| b.element_order(x) == p && is_central(b, x))
        .ok_or_else(|| GroupError::BadSpec(format!("{} has no central element of order {p}", b.label())))?;
    central_product_identifying(a, b, za, zb)
}

/// Quotient of `a x b` by the central subgroup generated by `(za, zb^{-1})`.
pub fn central_product_identifying(a: &FiniteGroup, b: &FiniteGroup, za: usize, zb: usize) -> Result<FiniteGroup> {
    if !is_central(a, za) || !is_central(b, zb) || a.element_order(za) != b.element_order(zb) {
        return Err(GroupError::BadSpec("identified elements must be central of equal order".into()));
    }
    let prod = direct_product(a, b)?;
    let nb = b.order();
    let w = za * nb + b.inv(zb);
    let k = a.element_order(za);
    let kernel: Vec<usize> = (0..k).map(|i| prod.pow(w, i)).collect();
    let n = prod.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            for &c in &kernel {
                coset[prod.mul(x, c)] = reps.len();
            }
            reps.push(x);
        }
    }
    let m = reps.len();
    let mut table = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = coset[prod.mul(reps[i], reps[j])] as u32;
        }
    }
    Ok(FiniteGroup::from_table_unchecked(m, table, format!("({}) o ({})", a.label(), b.label())))
}

fn is_central(g: &FiniteGroup, x: usize) -> bool {
    g.generators().iter().all(|&s| g.mul(s, x) == g.mul(x, s))
}

fn least_central_prime_order(g: &FiniteGroup) -> Option<usize> {
    (1..g.order()).find(|&x| is_prime(g.element_order(x)) && is_central(g, x))
}

fn decode(mut i: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        out[k] = i % radix[k];
        i /= radix[k];
    }
    out
}

fn encode(c: &[usize], radix: &[usize]) -> usize {
    c.iter().zip(radix).fold(0, |acc, (&x, &r)| acc * r + x)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}
