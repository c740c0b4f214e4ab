//! Named varieties. Most are one or more identities in the term syntax of
//! [`crate::term`]; a few are conjunctions of other entries, and the
//! G-loop property has a dedicated checker.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::table::LoopTable;
use crate::term::Identity;

#[derive(Clone, Debug)]
pub enum Checker {
    /// All identities must hold.
    Identities(Vec<Identity>),
    /// All listed catalog entries must hold.
    Conjunction(Vec<&'static str>),
    /// Isomorphic to every principal isotope.
    GLoop,
}

#[derive(Clone, Debug)]
pub struct VarietyCatalogEntry {
    pub id: &'static str,
    /// Short description of the defining condition.
    pub anchor: &'static str,
    pub checker: Checker,
}

impl VarietyCatalogEntry {
    /// Number of quantified variables of the widest defining identity.
    pub fn arity(&self) -> usize {
        match &self.checker {
            Checker::Identities(ids) => ids.iter().map(Identity::arity).max().unwrap_or(0),
            Checker::Conjunction(parts) => parts.iter().map(|p| lookup(p).map_or(0, |e| e.arity())).max().unwrap_or(0),
            Checker::GLoop => 2,
        }
    }

    pub fn is_equational(&self) -> bool {
        !matches!(self.checker, Checker::GLoop)
    }
}

const ALIASES: &[(&str, &str)] = &[
    ("assoc", "associative"),
    ("osborn", "osborn-1"),
    ("buch", "buchsteiner"),
    ("comm", "commutative"),
    ("generalized-moufang", "gen-moufang"),
];

const RAW: &[(&str, &str, &[&str])] = &[
    ("associative", "associative law", &["(x*y)*z = x*(y*z)"]),
    ("commutative", "commutative law", &["x*y = y*x"]),
    ("lip", "left inverse property", &["x^l*(x*y) = y"]),
    ("rip", "right inverse property", &["(y*x)*x^r = y"]),
    ("lap", "left alternative property", &["x*(x*y) = (x*x)*y"]),
    ("rap", "right alternative property", &["(y*x)*x = y*(x*x)"]),
    ("flx", "flexible law", &["(x*y)*x = x*(y*x)"]),
    ("lc", "left central identity", &["x*(x*(y*z)) = (x*(x*y))*z"]),
    ("rc", "right central identity", &["((z*y)*x)*x = z*((y*x)*x)"]),
    ("c", "central identity", &["((y*x)*x)*z = y*(x*(x*z))"]),
    ("moufang", "Moufang identity", &["(x*y)*(z*x) = x*((y*z)*x)"]),
    ("lbol", "left Bol identity (standard form)", &["x*(y*(x*z)) = (x*(y*x))*z"]),
    ("rbol", "right Bol identity (standard form)", &["((z*x)*y)*x = z*((x*y)*x)"]),
    ("lcc", "T_x is a right pseudoautomorphism with companion x", &["x*(y*z) = ((x*y)/x)*(x*z)"]),
    ("rcc", "T_x^-1 is a left pseudoautomorphism with companion x", &["(z*y)*x = (z*x)*(x\\(y*x))"]),
    ("buchsteiner", "Buchsteiner law", &["x\\((x*y)*z) = (y*(z*x))/x"]),
    ("osborn-1", "Osborn identity, alpha_x = R_x^-1 L_x R_x", &["((x*(y*x))/x)*(z*x) = x*((y*z)*x)"]),
    ("osborn-2", "Osborn identity, alpha_x = L_x R_x R_{x^l}", &["(x*((y*x^l)*x))*(z*x) = x*((y*z)*x)"]),
    ("osborn-3", "Osborn identity, alpha_x = L_{x^l}^-1", &["(x^l\\y)*(z*x) = x*((y*z)*x)"]),
    ("osborn-4", "mirror of osborn-1", &["(x*y)*(x\\((x*z)*x)) = (x*(y*z))*x"]),
    ("osborn-5", "mirror of osborn-2", &["(x*y)*((x*(x^r*z))*x) = (x*(y*z))*x"]),
    ("osborn-6", "mirror of osborn-3", &["(x*y)*(z/x^r) = (x*(y*z))*x"]),
    ("osborn-7", "Osborn identity in Buchsteiner shape", &["x^l\\((x^l*y)*z) = (y*(z*x))/x"]),
    ("osborn-8", "mirror of osborn-7", &["x\\((x*y)*z) = (y*(z*x^r))/x^r"]),
    ("wip", "weak inverse property", &["x*((y*x)^r) = y^r"]),
    ("aaip", "antiautomorphic inverse property", &["x^l = x^r", "(x*y)^r = y^r*x^r"]),
    ("cip", "crossed inverse property", &["(x*y)*x^r = y"]),
    (
        "vd",
        "T_x left and T_x^-1 right pseudoautomorphisms with companion x",
        &["(x*((x*y)/x))*((x*z)/x) = x*((x*(y*z))/x)", "(x\\(y*x))*((x\\(z*x))*x) = (x\\((y*z)*x))*x"],
    ),
    ("gen-moufang", "WIP Osborn identity", &["x*((y*z)*x) = ((y^l*x^l)^r)*(z*x)"]),
    (
        "left-a",
        "left inner mappings are automorphisms",
        &["(x*y)\\(x*(y*(z*u))) = ((x*y)\\(x*(y*z)))*((x*y)\\(x*(y*u)))"],
    ),
    (
        "right-a",
        "right inner mappings are automorphisms",
        &["(((z*u)*y)*x)/(y*x) = (((z*y)*x)/(y*x))*(((u*y)*x)/(y*x))"],
    ),
    (
        "nuclear-squares",
        "every square is nuclear",
        &["(x*x)*(y*z) = ((x*x)*y)*z", "y*((x*x)*z) = (y*(x*x))*z", "(y*z)*(x*x) = y*(z*(x*x))"],
    ),
    ("jaiyeola", "delta_x = (L_x^2, L_{x^l} L_x, L_x^2) is an autotopism", &["(x*(x*y))*(x^l*(x*z)) = x*(x*(y*z))"]),
];

const CONJUNCTIONS: &[(&str, &str, &[&str])] = &[
    ("ip", "inverse property", &["lip", "rip"]),
    ("ap", "alternative property", &["lap", "rap"]),
    ("cc", "conjugacy closed", &["lcc", "rcc"]),
    ("extra", "Moufang with nuclear squares", &["moufang", "nuclear-squares"]),
];

fn build() -> Vec<VarietyCatalogEntry> {
    let mut out: Vec<VarietyCatalogEntry> = RAW
        .iter()
        .map(|&(id, anchor, texts)| VarietyCatalogEntry {
            id,
            anchor,
            checker: Checker::Identities(
                texts.iter().map(|t| Identity::parse(t).expect("catalog identity parses")).collect(),
            ),
        })
        .collect();
    out.extend(CONJUNCTIONS.iter().map(|&(id, anchor, parts)| VarietyCatalogEntry {
        id,
        anchor,
        checker: Checker::Conjunction(parts.to_vec()),
    }));
    out.push(VarietyCatalogEntry {
        id: "g-loop",
        anchor: "isomorphic to all principal isotopes",
        checker: Checker::GLoop,
    });
    out
}

/// Every catalog entry, in a fixed order.
pub fn catalog() -> &'static [VarietyCatalogEntry] {
    static CATALOG: OnceLock<Vec<VarietyCatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Resolves aliases and is case-insensitive.
pub fn lookup(id: &str) -> Result<&'static VarietyCatalogEntry> {
    let lower = id.trim().to_ascii_lowercase();
    let key = ALIASES.iter().find(|(a, _)| *a == lower).map_or(lower.as_str(), |(_, t)| t);
    catalog().iter().find(|e| e.id == key).ok_or_else(|| Error::UnknownVariety(id.to_string()))
}

/// All identities defining `id`, conjunctions flattened. Empty for the
/// non-equational G-loop entry.
pub fn identities_for(id: &str) -> Result<Vec<Identity>> {
    let entry = lookup(id)?;
    Ok(match &entry.checker {
        Checker::Identities(ids) => ids.clone(),
        Checker::Conjunction(parts) => {
            let mut all = Vec::new();
            for p in parts {
                all.extend(identities_for(p)?);
            }
            all
        }
        Checker::GLoop => Vec::new(),
    })
}

/// Exhaustive check of a catalog entry.
pub fn check_variety(q: &LoopTable, id: &str) -> Result<bool> {
    let entry = lookup(id)?;
    match &entry.checker {
        Checker::Identities(ids) => Ok(ids.iter().all(|i| i.holds_in(q))),
        Checker::Conjunction(parts) => {
            for p in parts {
                if !check_variety(q, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Checker::GLoop => super::autotopism::is_g_loop(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_resolvable() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
        for (alias, target) in ALIASES {
            assert_eq!(lookup(alias).unwrap().id, *target);
        }
        assert_eq!(lookup("Moufang").unwrap().id, "moufang");
        assert!(matches!(lookup("nope"), Err(Error::UnknownVariety(_))));
    }

    #[test]
    fn groups_satisfy_every_equational_entry() {
        let s3 = LoopTable::dihedral(3).unwrap();
        for e in catalog() {
            let expect = !matches!(e.id, "commutative" | "cip");
            if e.is_equational() && expect {
                assert!(check_variety(&s3, e.id).unwrap(), "{}", e.id);
            }
        }
        assert!(!check_variety(&s3, "commutative").unwrap());
        assert!(!check_variety(&s3, "cip").unwrap());
    }

    #[test]
    fn arities() {
        assert_eq!(lookup("lip").unwrap().arity(), 2);
        assert_eq!(lookup("left-a").unwrap().arity(), 4);
        assert_eq!(lookup("cc").unwrap().arity(), 3);
        assert_eq!(identities_for("extra").unwrap().len(), 4);
        assert!(identities_for("g-loop").unwrap().is_empty());
    }
}
