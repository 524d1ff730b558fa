//! TOML presentation files.
//!
//! ```toml
//! [space]
//! id = "p2"
//! dim = 2
//!
//! [group]
//! name = "SL3"
//! generators = [{ name = "c2", degree = 4 }, { name = "c3", degree = 6 }]
//!
//! [borel]
//! generators = [{ name = "b1", degree = 2 }, { name = "b2", degree = 4 }]
//!
//! [xring]
//! generators = [{ name = "c", degree = 2 }]
//! relations = ["c^3"]
//!
//! [beta]
//! c2 = "b2 - b1^2"
//! c3 = "-b1*b2"
//!
//! [alpha]
//! b1 = "c"
//! b2 = "c^2"
//!
//! [cotangent]
//! classes = ["1", "-3*b1", "2*b1^2 + b2"]
//!
//! [integrate]
//! "c^2" = "1"
//!
//! [[cycles]]
//! name = "P0"
//! dim = 0
//! pd = "c^2"
//!
//! [[bundles]]
//! name = "O"
//! c1 = "d*b1"
//! jet = "d >= 1"
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{rational, Exponents, Generator, OrderKind, Polynomial, Rational, Ring, RingMorphism, RingPresentation, TermOrder};
use crate::error::{Error, Result};

use super::{validate_presentation, GroupPresentation, HomologyCycle, LineBundleSpec, SpacePresentation};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    space: SpaceSection,
    group: GroupSection,
    borel: RingSection,
    xring: RingSection,
    beta: BTreeMap<String, String>,
    alpha: BTreeMap<String, String>,
    cotangent: CotangentSection,
    integrate: BTreeMap<String, toml::Value>,
    #[serde(default)]
    cycles: Vec<CycleEntry>,
    #[serde(default)]
    bundles: Vec<BundleEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceSection {
    id: String,
    dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSection {
    name: String,
    generators: Vec<Generator>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSection {
    generators: Vec<Generator>,
    #[serde(default)]
    relations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CotangentSection {
    classes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleEntry {
    name: String,
    dim: u32,
    pd: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleEntry {
    name: String,
    c1: String,
    #[serde(default = "always")]
    jet: String,
}

fn always() -> String {
    "true".to_string()
}

fn ring(label: &str, section: &RingSection, kind: OrderKind) -> Result<Ring> {
    let tmp = RingPresentation::free(label, section.generators.clone(), kind)?;
    let rels = section.relations.iter().map(|r| tmp.parse(r)).collect::<Result<Vec<_>>>()?;
    RingPresentation::new(label, section.generators.clone(), rels, TermOrder::new(kind, section.generators.len()))
}

fn images(what: &str, source: &Ring, target: &Ring, table: &BTreeMap<String, String>) -> Result<RingMorphism> {
    for name in table.keys() {
        if source.index_of(name).is_none() {
            return Err(Error::Config(format!("[{what}]: {name} is not a generator of the source ring")));
        }
    }
    let imgs = source
        .names()
        .iter()
        .map(|g| match table.get(g) {
            Some(s) => target.parse(s),
            None => Err(Error::Config(format!("[{what}]: no image for generator {g}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    RingMorphism::unchecked(source.clone(), target.clone(), imgs)
}

fn rational_value(key: &str, v: &toml::Value) -> Result<Rational> {
    match v {
        toml::Value::Integer(i) => Ok(rational::int(*i)),
        toml::Value::String(s) => rational::parse(s).ok_or_else(|| Error::Config(format!("[integrate]: bad rational {s:?} for {key}"))),
        other => Err(Error::Config(format!("[integrate]: value for {key} must be an integer or a \"p/q\" string, got {other}"))),
    }
}

fn monomial_key(x: &Ring, key: &str) -> Result<Exponents> {
    let p = x.parse(key)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) if *c == rational::int(1) => Ok(e.clone()),
        _ => Err(Error::Config(format!("[integrate]: key {key:?} is not a monomial"))),
    }
}

/// Builds a presentation without running the invariant checks.
pub fn parse_presentation_unchecked(text: &str) -> Result<SpacePresentation> {
    let cfg: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let kind = match &cfg.space.order {
        Some(o) => o.parse::<OrderKind>().map_err(|_| Error::Config(format!("unknown term order {o:?}")))?,
        None => OrderKind::Grevlex,
    };
    let bg = RingPresentation::free("BG", cfg.group.generators.clone(), kind)?;
    let group = GroupPresentation::new(&cfg.group.name, bg.clone())?;
    let borel = ring("Borel", &cfg.borel, kind)?;
    let x = ring("H(X)", &cfg.xring, kind)?;
    let beta = images("beta", &bg, &borel, &cfg.beta)?;
    let alpha = images("alpha", &borel, &x, &cfg.alpha)?;
    let cotangent = cfg.cotangent.classes.iter().map(|s| borel.parse(s)).collect::<Result<Vec<_>>>()?;
    let mut table = Vec::new();
    for (k, v) in &cfg.integrate {
        table.push((monomial_key(&x, k)?, rational_value(k, v)?));
    }
    let cycles = cfg
        .cycles
        .iter()
        .map(|c| Ok(HomologyCycle { name: c.name.clone(), complex_dim: c.dim, pd_class: x.parse(&c.pd)? }))
        .collect::<Result<Vec<_>>>()?;
    let bundles = cfg.bundles.iter().map(|b| LineBundleSpec::new(&b.name, &b.c1, &b.jet)).collect::<Result<Vec<_>>>()?;
    Ok(SpacePresentation::assemble(&cfg.space.id, None, group, cfg.space.dim, borel, x, beta, alpha, cotangent, table, cycles, bundles))
}

/// Parses and validates; any violated invariant is an error.
pub fn parse_presentation(text: &str) -> Result<SpacePresentation> {
    let s = parse_presentation_unchecked(text)?;
    let v = validate_presentation(&s);
    if v.is_empty() {
        Ok(s)
    } else {
        Err(Error::Validation(v))
    }
}

pub fn load_presentation(path: &Path) -> Result<SpacePresentation> {
    let text = std::fs::read_to_string(path)?;
    parse_presentation(&text)
}

fn section(r: &RingPresentation) -> RingSection {
    RingSection { generators: r.generators().to_vec(), relations: r.relations().iter().map(|p| r.format(p)).collect() }
}

fn table(f: &RingMorphism) -> BTreeMap<String, String> {
    f.source().names().iter().zip(f.images()).map(|(n, p)| (n.clone(), f.target().format(p))).collect()
}

/// Renders a presentation in the config format; `parse_presentation` reads it back.
pub fn to_toml(s: &SpacePresentation) -> String {
    let fmt = |p: &Polynomial| s.borel.format(p);
    let cfg = ConfigFile {
        space: SpaceSection {
            id: s.id.clone(),
            dim: s.dim_x,
            order: (s.order() != OrderKind::Grevlex).then(|| s.order().name().to_string()),
        },
        group: GroupSection { name: s.group.name.clone(), generators: s.group.bg_ring.generators().to_vec() },
        borel: section(&s.borel),
        xring: section(&s.x_ring),
        beta: table(&s.beta),
        alpha: table(&s.alpha),
        cotangent: CotangentSection { classes: s.cotangent_chern.iter().map(fmt).collect() },
        integrate: s
            .integrate_table
            .iter()
            .map(|(e, v)| (s.x_ring.format_monomial(e), toml::Value::String(rational::format(v))))
            .collect(),
        cycles: s.cycles.iter().map(|c| CycleEntry { name: c.name.clone(), dim: c.complex_dim, pd: s.x_ring.format(&c.pd_class) }).collect(),
        bundles: s
            .bundles
            .iter()
            .map(|b| BundleEntry { name: b.name.clone(), c1: b.c1_source().to_string(), jet: b.jet_source().to_string() })
            .collect(),
    };
    toml::to_string(&cfg).expect("presentation serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::projective_space;

    const P2: &str = include_str!("../../configs/p2.toml");

    #[test]
    fn shipped_p2_loads_clean() {
        let s = parse_presentation(P2).unwrap();
        assert_eq!(s.dim_x, 2);
        assert!(validate_presentation(&s).is_empty());
        let b = projective_space(2).unwrap();
        assert_eq!(s.cotangent_chern, b.cotangent_chern);
    }

    #[test]
    fn round_trip_builtin() {
        let b = projective_space(3).unwrap();
        let s = parse_presentation(&to_toml(&b)).unwrap();
        assert_eq!(to_toml(&s), to_toml(&b));
        assert_eq!(s.content_hash(), parse_presentation(&to_toml(&b)).unwrap().content_hash());
    }

    #[test]
    fn wrong_degree_beta_is_reported() {
        let bad = P2.replace("c2 = \"b2 - b1^2\"", "c2 = \"b1^3\"");
        assert_ne!(bad, P2);
        let s = parse_presentation_unchecked(&bad).unwrap();
        let v = validate_presentation(&s);
        assert!(v.iter().any(|x| x.kind == "degree-mismatch"), "{v:?}");
        assert!(matches!(parse_presentation(&bad), Err(Error::Validation(_))));
    }

    #[test]
    fn zero_integration_is_pairing_singular() {
        let bad = P2.replace("\"c^2\" = \"1\"", "\"c^2\" = \"0\"");
        assert_ne!(bad, P2);
        let v = validate_presentation(&parse_presentation_unchecked(&bad).unwrap());
        assert!(v.iter().any(|x| x.kind == "pairing-singular"), "{v:?}");
    }

    #[test]
    fn malformed_polynomial_is_parse_error() {
        let bad = P2.replace("c2 = \"b2 - b1^2\"", "c2 = \"b2 - * b1\"");
        assert!(matches!(parse_presentation(&bad), Err(Error::Parse { .. })));
        assert!(matches!(parse_presentation("not toml ["), Err(Error::Config(_))));
    }
}
