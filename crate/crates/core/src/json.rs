//! JSON interchange forms for polynomials, elements, subalgebras and automorphisms.
//!
//! Exponent vectors are listed in variable order; `dir` is 1-based.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::autgroup::AlgebraAut;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::subalg::Subalgebra;
use crate::truncpoly::{PolyRing, TruncPoly};
use crate::witt::{WittAlgebra, WittElement};

pub const SCHEMA: &str = "witt-borel/1";

fn is_one(e: &u32) -> bool {
    *e == 1
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub c: Scalar,
    pub exp: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub p: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub e: u32,
    pub n: usize,
    pub terms: Vec<PolyTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTerm {
    pub c: Scalar,
    pub exp: Vec<u32>,
    pub dir: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub p: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub e: u32,
    pub n: usize,
    pub terms: Vec<ElementTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub p: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub e: u32,
    pub n: usize,
    pub basis: Vec<ElementDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub images: Vec<PolyDoc>,
}

/// Parses JSON, reporting the path of the offending field on failure.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Parse(format!("{}: {}", e.path(), e.inner())))
}

fn check_schema(schema: &Option<String>) -> Result<()> {
    match schema {
        Some(s) if s != SCHEMA => Err(Error::Parse(format!("schema: unsupported version {s:?}, expected {SCHEMA:?}"))),
        _ => Ok(()),
    }
}

/// Builds `A(n)` over `GF(p^e)` for a document header.
pub fn ring_for(p: u32, e: u32, n: usize) -> Result<PolyRing> {
    PolyRing::new(&Field::new(p, e)?, n)
}

fn check_header(ring: &PolyRing, p: u32, e: u32, n: usize, path: &str) -> Result<()> {
    let f = ring.field();
    if f.characteristic() != p || f.degree() != e || ring.n() != n {
        return Err(Error::Mismatch(format!(
            "{path}: (p, e, n) = ({p}, {e}, {n}) but expected ({}, {}, {})",
            f.characteristic(),
            f.degree(),
            ring.n()
        )));
    }
    Ok(())
}

fn check_coeff(ring: &PolyRing, c: Scalar, path: &str) -> Result<()> {
    if !ring.field().contains(c) {
        return Err(Error::InvalidParameter(format!("{path}.c: {c} is not an element of GF({})", ring.field().order())));
    }
    Ok(())
}

fn header(f: &Field) -> (u32, u32) {
    (f.characteristic(), f.degree())
}

impl PolyDoc {
    pub fn from_poly(f: &TruncPoly) -> Self {
        let ring = f.ring();
        let (p, e) = header(ring.field());
        let terms = f.terms().map(|(a, c)| PolyTerm { c, exp: a.to_vec() }).collect();
        PolyDoc { schema: None, p, e, n: ring.n(), terms }
    }

    /// Decodes into `ring`, or into a fresh ring when none is given.
    pub fn to_poly(&self, ring: Option<&PolyRing>) -> Result<TruncPoly> {
        self.to_poly_at(ring, "")
    }

    fn to_poly_at(&self, ring: Option<&PolyRing>, path: &str) -> Result<TruncPoly> {
        check_schema(&self.schema)?;
        let ring = match ring {
            Some(r) => {
                check_header(r, self.p, self.e, self.n, if path.is_empty() { "." } else { path })?;
                r.clone()
            }
            None => ring_for(self.p, self.e, self.n)?,
        };
        let f = ring.field().clone();
        let mut out = ring.zero();
        for (t, term) in self.terms.iter().enumerate() {
            let at = format!("{path}.terms[{t}]");
            check_coeff(&ring, term.c, &at)?;
            let idx = ring.index(&term.exp).map_err(|e| Error::InvalidParameter(format!("{at}.exp: {}", e.message())))?;
            let cur = out.coeffs()[idx];
            out.coeffs_mut()[idx] = f.add(cur, term.c);
        }
        Ok(out)
    }
}

impl ElementDoc {
    pub fn from_element(d: &WittElement) -> Self {
        let alg = d.algebra();
        let (p, e) = header(alg.field());
        let terms = d.terms().map(|(a, dir, c)| ElementTerm { c, exp: a.to_vec(), dir: dir + 1 }).collect();
        ElementDoc { schema: None, p, e, n: alg.n(), terms }
    }

    pub fn to_element(&self, alg: Option<&WittAlgebra>) -> Result<WittElement> {
        self.to_element_at(alg, "")
    }

    fn to_element_at(&self, alg: Option<&WittAlgebra>, path: &str) -> Result<WittElement> {
        check_schema(&self.schema)?;
        let alg = match alg {
            Some(a) => {
                check_header(a.ring(), self.p, self.e, self.n, if path.is_empty() { "." } else { path })?;
                a.clone()
            }
            None => WittAlgebra::from_ring(&ring_for(self.p, self.e, self.n)?),
        };
        let ring = alg.ring().clone();
        let f = alg.field().clone();
        let mut c = vec![0; alg.dim()];
        for (t, term) in self.terms.iter().enumerate() {
            let at = format!("{path}.terms[{t}]");
            check_coeff(&ring, term.c, &at)?;
            if term.dir == 0 || term.dir > alg.n() {
                return Err(Error::InvalidParameter(format!("{at}.dir: {} outside 1..={}", term.dir, alg.n())));
            }
            let idx = ring.index(&term.exp).map_err(|e| Error::InvalidParameter(format!("{at}.exp: {}", e.message())))?;
            let k = alg.coord(term.dir - 1, idx);
            c[k] = f.add(c[k], term.c);
        }
        alg.from_coeffs(c)
    }
}

impl SubalgebraDoc {
    /// Uses the reduced echelon basis, so equal subalgebras give equal documents.
    pub fn from_subalgebra(s: &Subalgebra) -> Self {
        let alg = s.algebra();
        let (p, e) = header(alg.field());
        let basis = s.basis().iter().map(ElementDoc::from_element).collect();
        SubalgebraDoc { schema: None, p, e, n: alg.n(), basis }
    }

    /// The span of the listed elements; closure under the bracket is not checked here.
    pub fn to_subalgebra(&self, alg: Option<&WittAlgebra>) -> Result<Subalgebra> {
        check_schema(&self.schema)?;
        let alg = match alg {
            Some(a) => {
                check_header(a.ring(), self.p, self.e, self.n, ".")?;
                a.clone()
            }
            None => WittAlgebra::from_ring(&ring_for(self.p, self.e, self.n)?),
        };
        let elems = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_element_at(Some(&alg), &format!(".basis[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subalgebra::span(&alg, &elems))
    }
}

impl AutDoc {
    pub fn from_aut(a: &AlgebraAut) -> Self {
        AutDoc { schema: None, images: a.images().iter().map(PolyDoc::from_poly).collect() }
    }

    pub fn to_aut(&self, ring: Option<&PolyRing>) -> Result<AlgebraAut> {
        check_schema(&self.schema)?;
        let first = self.images.first().ok_or_else(|| Error::Parse(".images: empty".into()))?;
        let ring = match ring {
            Some(r) => r.clone(),
            None => ring_for(first.p, first.e, first.n)?,
        };
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_poly_at(Some(&ring), &format!(".images[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        AlgebraAut::new(images)
    }
}

/// Serializes with the schema tag as the first key.
pub fn to_tagged<T: Serialize>(value: &T) -> serde_json::Value {
    let v = serde_json::to_value(value).expect("serializable");
    match v {
        serde_json::Value::Object(map) => {
            let mut out = serde_json::Map::new();
            out.insert("schema".into(), SCHEMA.into());
            out.extend(map.into_iter().filter(|(k, _)| k != "schema"));
            serde_json::Value::Object(out)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_forms() {
        let p: PolyDoc = parse(r#"{"p":5,"n":2,"terms":[{"c":3,"exp":[1,0]}]}"#).unwrap();
        let f = p.to_poly(None).unwrap();
        assert_eq!(f, f.ring().var(0).scale(3));
        let e: ElementDoc = parse(r#"{"p":5,"n":2,"terms":[{"c":3,"exp":[1,0],"dir":2}]}"#).unwrap();
        let d = e.to_element(None).unwrap();
        assert_eq!(d.to_string(), "3*x1*d2");
        assert_eq!(ElementDoc::from_element(&d), e);
    }

    #[test]
    fn errors_carry_paths() {
        let err = parse::<ElementDoc>(r#"{"p":5,"n":2,"terms":[{"c":3,"exp":[1,0],"dir":"x"}]}"#).unwrap_err();
        assert!(err.to_string().contains("terms[0].dir"), "{err}");
        let e: ElementDoc = parse(r#"{"p":5,"n":2,"terms":[{"c":3,"exp":[1,0],"dir":1},{"c":1,"exp":[5,0],"dir":1}]}"#).unwrap();
        let err = e.to_element(None).unwrap_err();
        assert!(err.to_string().contains(".terms[1].exp"), "{err}");
        let s: SubalgebraDoc = parse(r#"{"p":5,"n":2,"basis":[{"p":5,"n":1,"terms":[]}]}"#).unwrap();
        assert!(s.to_subalgebra(None).unwrap_err().to_string().contains(".basis[0]"));
        assert!(parse::<AutDoc>(r#"{"schema":"witt-borel/9","images":[]}"#).unwrap().to_aut(None).is_err());
    }

    #[test]
    fn round_trips() {
        let alg = WittAlgebra::new(&Field::prime(5).unwrap(), 2).unwrap();
        let b = crate::standard::borel(&alg, 1).unwrap();
        let doc = SubalgebraDoc::from_subalgebra(&b);
        let text = serde_json::to_string(&to_tagged(&doc)).unwrap();
        assert!(text.starts_with(r#"{"schema":"witt-borel/1""#));
        let back: SubalgebraDoc = parse(&text).unwrap();
        assert_eq!(back.to_subalgebra(Some(&alg)).unwrap(), b);
        let a = crate::autgroup::theta(alg.ring(), 2).unwrap();
        let back: AutDoc = parse(&serde_json::to_string(&AutDoc::from_aut(&a)).unwrap()).unwrap();
        assert_eq!(back.to_aut(None).unwrap(), a);
    }
}
