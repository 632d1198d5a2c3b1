//! Affine functionals `x -> a.x + c` on `Q^n`.

use num_traits::{One, Zero};

use crate::complex::RPoint;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct AffineFn {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl AffineFn {
    pub fn eval(&self, p: &RPoint) -> Rat {
        self.coeffs
            .iter()
            .zip(p.coords())
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scaled so the first nonzero coefficient is one; identifies the
    /// hyperplane `f = 0` up to sign.
    pub fn normalized_hyperplane(&self) -> Option<AffineFn> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.clone();
        Some(self.scaled(&lead.recip()))
    }

    pub fn scaled(&self, k: &Rat) -> AffineFn {
        AffineFn {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn add(&self, other: &AffineFn) -> AffineFn {
        AffineFn {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn negated(&self) -> AffineFn {
        self.scaled(&-Rat::one())
    }

    /// `self ∘ map`, where `map` lists the component functionals of an
    /// affine map into the domain of `self`.
    pub fn compose(&self, map: &[AffineFn]) -> AffineFn {
        let n = map.first().map(|m| m.coeffs.len()).unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); n];
        let mut constant = self.constant.clone();
        for (a, comp) in self.coeffs.iter().zip(map) {
            if a.is_zero() {
                continue;
            }
            for (c, x) in coeffs.iter_mut().zip(&comp.coeffs) {
                *c += a * x;
            }
            constant += a * &comp.constant;
        }
        AffineFn { coeffs, constant }
    }
}
