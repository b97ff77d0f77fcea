use super::{abelian, central_product, direct_product, extraspecial, modular, FiniteGroup, Result};

/// A catalog expression for a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSpec {
    Abelian(Vec<usize>),
    Cyclic(usize),
    /// p, order exponent 2m+1, group exponent (p or p^2).
    Extraspecial { p: usize, order_exp: usize, exp: usize },
    /// M(p^n).
    Modular { p: usize, n: usize },
    DirectProduct(Box<CatalogSpec>, Box<CatalogSpec>),
    CentralProduct(Box<CatalogSpec>, Box<CatalogSpec>),
}

pub fn catalog_group(spec: &CatalogSpec) -> Result<FiniteGroup> {
    match spec {
        CatalogSpec::Abelian(d) => abelian(d),
        CatalogSpec::Cyclic(n) => abelian(&[*n]),
        CatalogSpec::Extraspecial { p, order_exp, exp } => extraspecial(*p, *order_exp, *exp),
        CatalogSpec::Modular { p, n } => modular(*p, *n),
        CatalogSpec::DirectProduct(a, b) => direct_product(&catalog_group(a)?, &catalog_group(b)?),
        CatalogSpec::CentralProduct(a, b) => central_product(&catalog_group(a)?, &catalog_group(b)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, elementary_abelian_rank};

    #[test]
    fn catalog_examples() {
        let e = catalog_group(&CatalogSpec::Extraspecial { p: 3, order_exp: 3, exp: 3 }).unwrap();
        assert_eq!((e.order(), center(&e).order, e.exponent()), (27, 3, 3));

        let m = catalog_group(&CatalogSpec::Modular { p: 3, n: 3 }).unwrap();
        assert_eq!((m.order(), m.exponent()), (27, 9));
        assert!((0..27).any(|x| m.element_order(x) == 9));

        let a = catalog_group(&CatalogSpec::Abelian(vec![3, 3])).unwrap();
        assert_eq!(elementary_abelian_rank(&a), 2);

        let cp = catalog_group(&CatalogSpec::CentralProduct(
            Box::new(CatalogSpec::Extraspecial { p: 3, order_exp: 3, exp: 3 }),
            Box::new(CatalogSpec::Extraspecial { p: 3, order_exp: 3, exp: 3 }),
        ))
        .unwrap();
        assert_eq!(cp.order(), 243);
        assert_eq!(center(&cp).order, 3);
        assert_eq!(elementary_abelian_rank(&cp), 3);
    }
}
