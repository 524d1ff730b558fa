//! Graded ring homomorphisms between presented rings.

use crate::error::{Error, Result};

use super::poly::Polynomial;
use super::ring::Ring;

#[derive(Clone, Debug)]
pub struct RingMorphism {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl RingMorphism {
    /// Builds and validates: images must preserve degree and kill source relations.
    pub fn new(source: Ring, target: Ring, images: Vec<Polynomial>) -> Result<Self> {
        let f = Self::unchecked(source, target, images)?;
        let v = f.violations();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Malformed(v.join("; ")))
        }
    }

    /// Builds without the degree and relation checks (shape is still checked).
    pub fn unchecked(source: Ring, target: Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Malformed(format!(
                "morphism {} -> {}: {} images for {} generators",
                source.label(),
                target.label(),
                images.len(),
                source.nvars()
            )));
        }
        for p in &images {
            target.check_member(p)?;
        }
        Ok(RingMorphism { source, target, images })
    }

    pub fn from_strings(source: Ring, target: Ring, images: &[(&str, String)]) -> Result<Self> {
        let mut out = vec![None; source.nvars()];
        for (name, s) in images {
            let i = source.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            out[i] = Some(target.parse(s)?);
        }
        let images = out
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::Malformed(format!("no image for generator {}", source.names()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    /// Human-readable list of violated morphism invariants.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, g) in self.source.generators().iter().enumerate() {
            let img = &self.images[i];
            match self.target.degree(img) {
                Some(d) if d == g.degree || img.is_zero() => {}
                Some(d) => out.push(format!(
                    "degree mismatch: {} -> {}: image of {} has degree {d}, expected {}",
                    self.source.label(),
                    self.target.label(),
                    g.name,
                    g.degree
                )),
                None => out.push(format!("image of {} is inhomogeneous", g.name)),
            }
        }
        for r in self.source.relations() {
            let img = self.apply_unchecked(r);
            if !img.is_zero() {
                out.push(format!(
                    "relation {} maps to nonzero {} in {}",
                    self.source.format(r),
                    self.target.format(&img),
                    self.target.label()
                ));
            }
        }
        out
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Polynomial> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.source.check_member(p)?;
        Ok(self.apply_unchecked(p))
    }

    fn apply_unchecked(&self, p: &Polynomial) -> Polynomial {
        let q = p.substitute(&self.images, self.target.nvars());
        self.target.normal_form(&q)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMorphism) -> Result<RingMorphism> {
        if self.target.content_hash() != other.source.content_hash() {
            return Err(Error::Malformed("composition of non-matching morphisms".into()));
        }
        let images = self.images.iter().map(|p| other.apply_unchecked(p)).collect();
        Self::unchecked(self.source.clone(), other.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::OrderKind;
    use crate::algebra::ring::{Generator, RingPresentation};

    #[test]
    fn beta_on_p1() {
        let bg = RingPresentation::free("bg", vec![Generator::new("c2", 4)], OrderKind::Grevlex).unwrap();
        let borel = RingPresentation::free("borel", vec![Generator::new("b1", 2)], OrderKind::Grevlex).unwrap();
        let beta = RingMorphism::from_strings(bg.clone(), borel.clone(), &[("c2", "-b1^2".into())]).unwrap();
        assert_eq!(beta.apply(&bg.var("c2")).unwrap(), borel.parse("-b1^2").unwrap());
        assert_eq!(beta.apply(&bg.one()).unwrap(), borel.one());
    }

    #[test]
    fn rejects_degree_mismatch_and_relations() {
        let bg = RingPresentation::free("bg", vec![Generator::new("c2", 4)], OrderKind::Grevlex).unwrap();
        let borel = RingPresentation::free("borel", vec![Generator::new("b1", 2)], OrderKind::Grevlex).unwrap();
        assert!(RingMorphism::from_strings(bg.clone(), borel.clone(), &[("c2", "b1^3".into())]).is_err());

        let gens = vec![Generator::new("h", 2)];
        let tmp = RingPresentation::free("x", gens.clone(), OrderKind::Grevlex).unwrap();
        let x = RingPresentation::new("x", gens, vec![tmp.parse("h^2").unwrap()], crate::algebra::order::TermOrder::new(OrderKind::Grevlex, 1)).unwrap();
        // Q[h]/(h^2) -> Q[b1] with h -> b1 does not kill h^2
        assert!(RingMorphism::from_strings(x.clone(), borel.clone(), &[("h", "b1".into())]).is_err());
        // the other direction is fine
        assert!(RingMorphism::from_strings(borel.clone(), x.clone(), &[("b1", "h".into())]).is_ok());
    }

    #[test]
    fn wrong_ring_is_malformed() {
        let a = RingPresentation::free("a", vec![Generator::new("u", 2)], OrderKind::Grevlex).unwrap();
        let b = RingPresentation::free("b", vec![Generator::new("v", 2), Generator::new("w", 2)], OrderKind::Grevlex).unwrap();
        let f = RingMorphism::from_strings(a, b.clone(), &[("u", "v".into())]).unwrap();
        assert!(matches!(f.apply(&b.var("v")), Err(Error::Malformed(_))));
    }
}
