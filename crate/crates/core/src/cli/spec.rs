//! The `--group` grammar.
//!
//! ```text
//! spec := atom | "(" spec ")"
//!       | "product:" spec "*" spec | "centralproduct:" spec "*" spec
//! atom := "cayley:" path | "perm:" path | "extraspecial:" p ":" e ":" x
//!       | "modular:" p ":" n | "abelian:" d ("," d)* | "cyclic:" n
//! ```

use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;

use crate::group::{
    abelian, central_product, direct_product, extraspecial, group_from_cayley_table, group_from_permutations_with_cap,
    modular, FiniteGroup,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cayley(PathBuf),
    Perm(PathBuf),
    Extraspecial { p: usize, order_exp: usize, exp: usize },
    Modular { p: usize, n: usize },
    Abelian(Vec<usize>),
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    CentralProduct(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group spec error at position {position}: {message}")]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError { position, message: message.into() })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// Text up to the next `*`, `)`, or the end.
    fn atom_body(&mut self) -> &'a str {
        let end = self.rest().find(['*', ')']).unwrap_or(self.rest().len());
        let body = &self.rest()[..end];
        self.pos += end;
        body
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        if self.eat("(") {
            let inner = self.spec()?;
            if !self.eat(")") {
                return err(self.pos, "expected ')'");
            }
            return Ok(inner);
        }
        let start = self.pos;
        let Some(colon) = self.rest().find(':') else {
            return err(start, format!("expected '<kind>:' but found {:?}", self.rest()));
        };
        let head = &self.rest()[..colon];
        self.pos += colon + 1;
        match head {
            "product" | "centralproduct" => {
                let a = self.spec()?;
                if !self.eat("*") {
                    return err(self.pos, "expected '*' between the factors");
                }
                let b = self.spec()?;
                Ok(if head == "product" {
                    GroupSpec::Product(Box::new(a), Box::new(b))
                } else {
                    GroupSpec::CentralProduct(Box::new(a), Box::new(b))
                })
            }
            "cayley" | "perm" => {
                let body_start = self.pos;
                let path = self.atom_body();
                if path.is_empty() {
                    return err(body_start, "empty path");
                }
                Ok(if head == "cayley" { GroupSpec::Cayley(path.into()) } else { GroupSpec::Perm(path.into()) })
            }
            "extraspecial" | "modular" | "abelian" | "cyclic" => {
                let body_start = self.pos;
                let body = self.atom_body();
                let sep = if head == "abelian" { ',' } else { ':' };
                let mut nums = Vec::new();
                let mut off = body_start;
                for part in body.split(sep) {
                    match part.parse::<usize>() {
                        Ok(v) => nums.push(v),
                        Err(_) => return err(off, format!("expected a non-negative integer, found {part:?}")),
                    }
                    off += part.len() + 1;
                }
                let want = match head {
                    "extraspecial" => Some(3),
                    "modular" => Some(2),
                    "cyclic" => Some(1),
                    _ => None,
                };
                if let Some(w) = want {
                    if nums.len() != w {
                        return err(body_start, format!("{head} takes {w} parameter(s), found {}", nums.len()));
                    }
                }
                Ok(match head {
                    "extraspecial" => GroupSpec::Extraspecial { p: nums[0], order_exp: nums[1], exp: nums[2] },
                    "modular" => GroupSpec::Modular { p: nums[0], n: nums[1] },
                    "cyclic" => GroupSpec::Cyclic(nums[0]),
                    _ => GroupSpec::Abelian(nums),
                })
            }
            other => err(start, format!("unknown group kind {other:?}")),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        if p.pos != s.len() {
            return err(p.pos, format!("unexpected trailing input {:?}", p.rest()));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, s: &GroupSpec| match s {
            GroupSpec::Product(..) | GroupSpec::CentralProduct(..) => write!(f, "({s})"),
            _ => write!(f, "{s}"),
        };
        match self {
            GroupSpec::Cayley(p) => write!(f, "cayley:{}", p.display()),
            GroupSpec::Perm(p) => write!(f, "perm:{}", p.display()),
            GroupSpec::Extraspecial { p, order_exp, exp } => write!(f, "extraspecial:{p}:{order_exp}:{exp}"),
            GroupSpec::Modular { p, n } => write!(f, "modular:{p}:{n}"),
            GroupSpec::Abelian(d) => {
                let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Product(a, b) | GroupSpec::CentralProduct(a, b) => {
                let head = if matches!(self, GroupSpec::Product(..)) { "product" } else { "centralproduct" };
                write!(f, "{head}:")?;
                factor(f, a)?;
                write!(f, "*")?;
                factor(f, b)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableJson {
    Nested(Vec<Vec<usize>>),
    Flat(Vec<usize>),
}

#[derive(Deserialize)]
struct CayleyFile {
    order: usize,
    table: TableJson,
}

#[derive(Deserialize)]
struct PermFile {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, BuildError> {
    let text = std::fs::read_to_string(path).map_err(|source| BuildError::Io { path: path.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| BuildError::Json { path: path.clone(), source })
}

impl GroupSpec {
    /// Builds the group; `cap` bounds permutation closures and the final order.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, BuildError> {
        let g = match self {
            GroupSpec::Cayley(path) => {
                let file: CayleyFile = read_json(path)?;
                let rows = match file.table {
                    TableJson::Nested(rows) => rows,
                    TableJson::Flat(flat) => {
                        if flat.len() != file.order * file.order {
                            return Err(BuildError::Invalid(format!("flat table has {} entries, expected {}", flat.len(), file.order * file.order)));
                        }
                        flat.chunks(file.order.max(1)).map(<[usize]>::to_vec).collect()
                    }
                };
                if rows.len() != file.order {
                    return Err(BuildError::Invalid(format!("table has {} rows, order is {}", rows.len(), file.order)));
                }
                group_from_cayley_table(&rows)?
            }
            GroupSpec::Perm(path) => {
                let file: PermFile = read_json(path)?;
                group_from_permutations_with_cap(file.degree, &file.generators, cap)?
            }
            GroupSpec::Extraspecial { p, order_exp, exp } => extraspecial(*p, *order_exp, *exp)?,
            GroupSpec::Modular { p, n } => modular(*p, *n)?,
            GroupSpec::Abelian(d) => abelian(d)?,
            GroupSpec::Cyclic(n) => abelian(&[*n])?,
            GroupSpec::Product(a, b) => direct_product(&a.build(cap)?, &b.build(cap)?)?,
            GroupSpec::CentralProduct(a, b) => central_product(&a.build(cap)?, &b.build(cap)?)?,
        };
        if g.order() > cap {
            return Err(BuildError::Invalid(format!("group order {} exceeds the cap {cap}", g.order())));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "extraspecial:3:5:3",
            "modular:3:4",
            "abelian:3,3,9",
            "cyclic:5",
            "product:abelian:3*extraspecial:3:3:3",
            "centralproduct:extraspecial:3:3:3*extraspecial:3:3:9",
            "product:(product:cyclic:3*cyclic:3)*(centralproduct:modular:3:3*extraspecial:3:3:3)",
            "perm:/tmp/g.json",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = "bogus:1".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.position, 0);
        let e = "extraspecial:3:x:3".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.position, 15);
        let e = "product:cyclic:3".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.position, 16);
        let e = "modular:3".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.position, 8);
    }

    #[test]
    fn left_nested_products_parse_without_parentheses() {
        let s: GroupSpec = "product:product:cyclic:3*cyclic:3*cyclic:3".parse().unwrap();
        let g = s.build(10_000).unwrap();
        assert_eq!(g.order(), 27);
    }
}
