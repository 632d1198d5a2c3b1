use std::collections::BTreeMap;

use num_traits::Zero;

use crate::affine::AffineFn;
use crate::complex::{GeoComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};
use crate::Rat;

/// A map that is affine on every simplex of `domain`, determined by the
/// images of the domain's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    domain: GeoComplex,
    images: BTreeMap<RPoint, RPoint>,
    codim: usize,
}

impl PLMap {
    pub fn new(domain: GeoComplex, images: BTreeMap<RPoint, RPoint>) -> Result<Self> {
        let verts = domain.vertices();
        if verts.is_empty() {
            return Err(Error::Empty("map domain has no vertices"));
        }
        if images.len() != verts.len() || verts.iter().any(|v| !images.contains_key(v)) {
            return Err(Error::Incompatible(
                "vertex images must be given exactly for the domain vertices".into(),
            ));
        }
        let codim = images.values().next().expect("nonempty").dim();
        if let Some(bad) = images.values().find(|p| p.dim() != codim) {
            return Err(Error::DimensionMismatch {
                expected: codim,
                found: bad.dim(),
            });
        }
        Ok(PLMap {
            domain,
            images,
            codim,
        })
    }

    /// Builds the images from a function on the domain vertices.
    pub fn from_fn(domain: GeoComplex, f: impl Fn(&RPoint) -> RPoint) -> Result<Self> {
        let images = domain.vertices().into_iter().map(|v| {
            let img = f(&v);
            (v, img)
        });
        PLMap::new(domain.clone(), images.collect())
    }

    pub fn from_fn_fallible(domain: GeoComplex, f: impl Fn(&RPoint) -> Result<RPoint>) -> Result<Self> {
        let images = domain
            .vertices()
            .into_iter()
            .map(|v| {
                let img = f(&v)?;
                Ok((v, img))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        PLMap::new(domain, images)
    }

    pub fn identity(domain: GeoComplex) -> Self {
        PLMap::from_fn(domain, RPoint::clone).expect("identity images are total")
    }

    pub fn constant(domain: GeoComplex, value: RPoint) -> Self {
        PLMap::from_fn(domain, |_| value.clone()).expect("constant images are total")
    }

    pub fn domain(&self) -> &GeoComplex {
        &self.domain
    }

    pub fn images(&self) -> &BTreeMap<RPoint, RPoint> {
        &self.images
    }

    pub fn image_of_vertex(&self, v: &RPoint) -> Option<&RPoint> {
        self.images.get(v)
    }

    pub fn target_dim(&self) -> usize {
        self.codim
    }

    /// Barycentric interpolation inside the carrier of `p`.
    pub fn eval(&self, p: &RPoint) -> Result<RPoint> {
        let carrier = self
            .domain
            .carrier(p)
            .ok_or_else(|| Error::PointNotInSupport(p.to_string()))?;
        let weights = carrier.barycentric(p).expect("carrier contains the point");
        Ok(RPoint::combination(
            carrier.vertices().iter().map(|v| &self.images[v]),
            &weights,
        ))
    }

    /// Domain simplex containing `s`, found as the carrier of its barycenter.
    pub(crate) fn simplex_containing(&self, s: &GeoSimplex) -> Result<GeoSimplex> {
        self.domain
            .carrier(&s.barycenter())
            .filter(|d| s.vertices().iter().all(|v| d.contains(v)))
            .ok_or_else(|| Error::Incompatible(format!("{s} is not inside one simplex of the map domain")))
    }

    /// Component functionals of the map on the ambient space, agreeing with
    /// the map on `s`.
    pub(crate) fn affine_on(&self, s: &GeoSimplex) -> Result<Vec<AffineFn>> {
        let d = self.simplex_containing(s)?;
        let frame = d.frame();
        let n = d.ambient_dim();
        let comps = (0..self.codim)
            .map(|k| {
                let mut f = AffineFn {
                    coeffs: vec![Rat::zero(); n],
                    constant: Rat::zero(),
                };
                for (lam, v) in frame.barycentric.iter().zip(d.vertices()) {
                    let y = &self.images[v].coords()[k];
                    if y.is_zero() {
                        continue;
                    }
                    for (c, a) in f.coeffs.iter_mut().zip(&lam.coeffs) {
                        *c += a * y;
                    }
                    f.constant += &lam.constant * y;
                }
                f
            })
            .collect();
        Ok(comps)
    }

    /// Same map on a finer domain triangulation.
    pub fn with_domain(&self, domain: GeoComplex) -> Result<PLMap> {
        PLMap::from_fn_fallible(domain, |v| self.eval(v))
    }

    /// Images of the vertices of `s`, in vertex order.
    pub(crate) fn simplex_images(&self, s: &GeoSimplex) -> Vec<RPoint> {
        s.vertices().iter().map(|v| self.images[v].clone()).collect()
    }
}
