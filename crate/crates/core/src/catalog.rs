//! Standard presentations and the van Kampen combinators.
//!
//! `free_product` and `amalgamated_product` build presentations of
//! unions of spaces glued at a point or along a subspace; `attach_cells`
//! adds cells of a given dimension. Injectivity of the maps in an
//! amalgamation is not checked.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("word {index} uses generators outside its presentation")]
    ForeignWord { index: usize },
    #[error("cells must have dimension at least 2, got {0}")]
    InvalidDimension(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    /// Free group of rank `n`.
    Free(usize),
    /// `< a | a^m >`.
    Cyclic(u64),
    /// Closed orientable surface of genus `g`.
    SurfaceOrientable(usize),
    /// Closed nonorientable surface with `g` cross-caps.
    SurfaceNonorientable(usize),
    /// `< a, b | a^m = b^n >`, the complement of the `(m, n)` torus knot.
    TorusKnot(u64, u64),
    /// `Z/2 * Z/2`.
    InfiniteDihedral,
    /// `Z/2 * Z/3`, isomorphic to `PSL(2, Z)`.
    Modular,
}

fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (b'a'..).take(n).map(|c| (c as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn exponent(v: u64) -> Result<i64, CatalogError> {
    i64::try_from(v).map_err(|_| CatalogError::InvalidParameter(format!("exponent {v} too large")))
}

pub fn standard(name: Standard) -> Result<Presentation, CatalogError> {
    let positive = |v: u64, what: &str| {
        if v == 0 {
            Err(CatalogError::InvalidParameter(format!("{what} must be positive")))
        } else {
            Ok(())
        }
    };
    let p = match name {
        Standard::Free(n) => {
            positive(n as u64, "rank")?;
            Presentation::free(letter_names(n))
        }
        Standard::Cyclic(m) => {
            positive(m, "order")?;
            Presentation::new(["a"], vec![Word::power(0, exponent(m)?)])
        }
        Standard::SurfaceOrientable(g) => {
            positive(g as u64, "genus")?;
            let names = (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]);
            let mut r = Word::identity();
            for i in 0..g {
                let (a, b) = (Word::generator(2 * i), Word::generator(2 * i + 1));
                r = r * a.clone() * b.clone() * a.inverse() * b.inverse();
            }
            Presentation::new(names, vec![r])
        }
        Standard::SurfaceNonorientable(g) => {
            positive(g as u64, "genus")?;
            let names = (1..=g).map(|i| format!("a{i}"));
            let r = Word::from_syllables((0..g).map(|i| (i, 2))).expect("small exponents");
            Presentation::new(names, vec![r])
        }
        Standard::TorusKnot(m, n) => {
            positive(m, "m")?;
            positive(n, "n")?;
            Presentation::new(["a", "b"], vec![Word::power(0, exponent(m)?) * Word::power(1, -exponent(n)?)])
        }
        Standard::InfiniteDihedral => Presentation::new(["a", "b"], vec![Word::power(0, 2), Word::power(1, 2)]),
        Standard::Modular => Presentation::new(["a", "b"], vec![Word::power(0, 2), Word::power(1, 3)]),
    };
    Ok(p.expect("catalog presentations are well formed"))
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Standard::Free(n) => write!(f, "@free:{n}"),
            Standard::Cyclic(m) => write!(f, "@cyclic:{m}"),
            Standard::SurfaceOrientable(g) => write!(f, "@surface:{g}"),
            Standard::SurfaceNonorientable(g) => write!(f, "@nonorientable:{g}"),
            Standard::TorusKnot(m, n) => write!(f, "@knot:{m},{n}"),
            Standard::InfiniteDihedral => f.write_str("@dihedral_inf"),
            Standard::Modular => f.write_str("@modular"),
        }
    }
}

/// Parses shorthands such as `@surface:2`, `@knot:2,3`, `@dihedral_inf`.
impl FromStr for Standard {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().strip_prefix('@').ok_or_else(|| CatalogError::UnknownName(s.to_string()))?;
        let (name, args) = match body.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (body, None),
        };
        let nums = |want: usize| -> Result<Vec<u64>, CatalogError> {
            let args = args.ok_or_else(|| CatalogError::InvalidParameter(format!("{name} needs {want} parameter(s)")))?;
            let v: Vec<u64> = args
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| CatalogError::InvalidParameter(format!("bad number {x:?}"))))
                .collect::<Result<_, _>>()?;
            if v.len() != want {
                return Err(CatalogError::InvalidParameter(format!("{name} needs {want} parameter(s)")));
            }
            Ok(v)
        };
        let none = || {
            if args.is_some() {
                Err(CatalogError::InvalidParameter(format!("{name} takes no parameters")))
            } else {
                Ok(())
            }
        };
        let to_usize = |v: u64| usize::try_from(v).map_err(|_| CatalogError::InvalidParameter(v.to_string()));
        match name {
            "free" => Ok(Standard::Free(to_usize(nums(1)?[0])?)),
            "cyclic" => Ok(Standard::Cyclic(nums(1)?[0])),
            "surface" => Ok(Standard::SurfaceOrientable(to_usize(nums(1)?[0])?)),
            "nonorientable" => Ok(Standard::SurfaceNonorientable(to_usize(nums(1)?[0])?)),
            "knot" => {
                let v = nums(2)?;
                Ok(Standard::TorusKnot(v[0], v[1]))
            }
            "dihedral_inf" => none().map(|_| Standard::InfiniteDihedral),
            "modular" => none().map(|_| Standard::Modular),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

// Generator names for a product; clashing names get `_1` / `_2` suffixes.
fn product_names(p1: &Presentation, p2: &Presentation) -> Vec<String> {
    let n1: HashSet<&str> = p1.generator_names().iter().map(String::as_str).collect();
    let n2: HashSet<&str> = p2.generator_names().iter().map(String::as_str).collect();
    let rename = |names: &[String], other: &HashSet<&str>, suffix: &str| -> Vec<String> {
        names
            .iter()
            .map(|n| if other.contains(n.as_str()) { format!("{n}{suffix}") } else { n.clone() })
            .collect()
    };
    let mut names = rename(p1.generator_names(), &n2, "_1");
    names.extend(rename(p2.generator_names(), &n1, "_2"));
    // A suffixed name can still collide with an existing one (`a_1` in both
    // inputs); keep suffixing until all names are distinct.
    let mut seen = HashSet::new();
    for name in names.iter_mut() {
        while !seen.insert(name.clone()) {
            name.push('_');
        }
    }
    names
}

/// `p1 * p2`: disjoint union of generators and relators.
pub fn free_product(p1: &Presentation, p2: &Presentation) -> Presentation {
    let offset = p1.num_generators();
    let relators = p1.relators().iter().cloned().chain(p2.relators().iter().map(|r| r.shifted(offset))).collect();
    Presentation::new(product_names(p1, p2), relators).expect("disjoint generators")
}

/// `p1 *_A p2`: the free product plus a relator `u v^-1` for each pair
/// `(u, v)` identifying a word of `p1` with a word of `p2`.
pub fn amalgamated_product(
    p1: &Presentation,
    p2: &Presentation,
    pairs: &[(Word, Word)],
) -> Result<Presentation, CatalogError> {
    let offset = p1.num_generators();
    let mut relators: Vec<Word> = p1.relators().iter().cloned().chain(p2.relators().iter().map(|r| r.shifted(offset))).collect();
    for (index, (u, v)) in pairs.iter().enumerate() {
        if !p1.contains_word(u) || !p2.contains_word(v) {
            return Err(CatalogError::ForeignWord { index });
        }
        relators.push(u * &v.shifted(offset).inverse());
    }
    Ok(Presentation::new(product_names(p1, p2), relators).expect("disjoint generators"))
}

/// Attaches one `dim`-cell along each loop. Only 2-cells change the
/// fundamental group; higher cells leave the presentation unchanged.
pub fn attach_cells(p: &Presentation, loops: &[Word], dim: u32) -> Result<Presentation, CatalogError> {
    if dim < 2 {
        return Err(CatalogError::InvalidDimension(dim));
    }
    if let Some(index) = loops.iter().position(|w| !p.contains_word(w)) {
        return Err(CatalogError::ForeignWord { index });
    }
    if dim > 2 {
        return Ok(p.clone());
    }
    let relators = p.relators().iter().chain(loops).cloned().collect();
    Ok(Presentation::new(p.generator_names().to_vec(), relators).expect("same generators"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn parse(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn standard_presentations() {
        assert_eq!(standard(Standard::SurfaceOrientable(1)).unwrap().to_string(), "< a1, b1 | a1 b1 a1^-1 b1^-1 >");
        assert!(standard(Standard::SurfaceOrientable(1)).unwrap().is_relabeling_of(&parse("<a,b|a b a^-1 b^-1>")));
        assert_eq!(standard(Standard::TorusKnot(2, 3)).unwrap(), parse("<a,b|a^2 b^-3>"));
        assert_eq!(standard(Standard::Cyclic(1)).unwrap(), parse("<a|a>"));
        assert_eq!(standard(Standard::SurfaceNonorientable(3)).unwrap(), parse("<a1,a2,a3|a1^2 a2^2 a3^2>"));
        assert_eq!(standard(Standard::InfiniteDihedral).unwrap(), parse("<a,b|a^2,b^2>"));
        assert_eq!(standard(Standard::Modular).unwrap(), parse("<a,b|a^2,b^3>"));
        assert_eq!(standard(Standard::Free(2)).unwrap(), parse("<a,b|>"));
        assert_eq!(standard(Standard::Free(30)).unwrap().generator_names()[29], "x30");
        assert!(matches!(standard(Standard::Cyclic(0)), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!(standard(Standard::TorusKnot(2, 0)), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!(standard(Standard::Free(0)), Err(CatalogError::InvalidParameter(_))));
    }

    #[test]
    fn shorthands_round_trip() {
        for s in ["@free:3", "@cyclic:5", "@surface:2", "@nonorientable:3", "@knot:2,3", "@dihedral_inf", "@modular"] {
            let parsed: Standard = s.parse().unwrap();
            assert_eq!(parsed.to_string(), s);
        }
        assert!(matches!("@knot:2".parse::<Standard>(), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!("@modular:1".parse::<Standard>(), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!("@nope".parse::<Standard>(), Err(CatalogError::UnknownName(_))));
        assert!(matches!("surface:2".parse::<Standard>(), Err(CatalogError::UnknownName(_))));
    }

    #[test]
    fn free_products() {
        let c2 = standard(Standard::Cyclic(2)).unwrap();
        let c3 = standard(Standard::Cyclic(3)).unwrap();
        let d = free_product(&c2, &c2);
        assert_eq!(d.generator_names(), ["a_1", "a_2"]);
        assert!(d.is_relabeling_of(&standard(Standard::InfiniteDihedral).unwrap()));
        assert!(free_product(&c2, &c3).is_relabeling_of(&standard(Standard::Modular).unwrap()));
        let z = standard(Standard::Free(1)).unwrap();
        assert!(free_product(&z, &z).is_relabeling_of(&standard(Standard::Free(2)).unwrap()));
        let x = parse("<a, a_1|>");
        assert_eq!(free_product(&x, &parse("<a|>")).generator_names(), ["a_1", "a_1_", "a_2"]);
    }

    #[test]
    fn amalgams() {
        let za = parse("<a|>");
        let zb = parse("<b|>");
        let g = amalgamated_product(&za, &zb, &[(Word::power(0, 2), Word::power(0, 3))]).unwrap();
        assert_eq!(g, standard(Standard::TorusKnot(2, 3)).unwrap());
        assert_eq!(amalgamated_product(&za, &zb, &[]).unwrap(), free_product(&za, &zb));
        assert_eq!(
            amalgamated_product(&za, &zb, &[(Word::generator(1), Word::identity())]),
            Err(CatalogError::ForeignWord { index: 0 })
        );
    }

    #[test]
    fn cell_attachment() {
        let z = standard(Standard::Free(1)).unwrap();
        assert_eq!(attach_cells(&z, &[Word::power(0, 2)], 2).unwrap(), standard(Standard::Cyclic(2)).unwrap());
        let m2 = standard(Standard::SurfaceOrientable(2)).unwrap();
        assert_eq!(attach_cells(&m2, &[Word::generator(0)], 3).unwrap(), m2);
        assert_eq!(attach_cells(&m2, &[], 1), Err(CatalogError::InvalidDimension(1)));
        let f4 = Presentation::free(["a1", "b1", "a2", "b2"]).unwrap();
        assert_eq!(attach_cells(&f4, m2.relators(), 2).unwrap(), m2);
    }
}
