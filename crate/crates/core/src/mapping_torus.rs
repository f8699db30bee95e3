//! Cohomology of the mapping torus `Y = Σ × [0,1] / (x,1) ~ (phi(x),0)`
//! through the Wang sequence
//!
//! ```text
//! H^0(Σ) → H^1(Y) → H^1(Σ) --(phi^*-1)--> H^1(Σ) --mu--> H^2(Y) → H^2(Σ)
//! ```
//!
//! `H^1(Y)` is spanned by the base class `theta` and lifts of the
//! `phi^*`-invariant classes; `H^2(Y)` by the fiber volume class `Omega` and
//! the image of `mu`, which is `coker(phi^* - 1)` wedged with `theta`.
//! All ranks are rational; the Smith form of `phi^* - 1` is kept as a
//! torsion diagnostic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SmithForm};
use crate::surface::{bundle_monodromy, compose_word, invariant_subspace, Generator, MonodromyMatrix, TwistWord};

/// Label for a dual-basis class `alpha_i` / `beta_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualGenerator(pub Generator);

impl fmt::Display for DualGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Generator::A(i) => write!(f, "alpha{i}"),
            Generator::B(i) => write!(f, "beta{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTorus {
    word: TwistWord,
    monodromy: MonodromyMatrix,
}

impl MappingTorus {
    pub fn new(word: TwistWord) -> Result<Self> {
        let monodromy = compose_word(&word)?;
        Ok(Self { word, monodromy })
    }

    /// Mapping torus of the bundle-manifold monodromy with parameters `(d, k, g)`.
    pub fn for_bundle(d: u32, k: u32, g: u32) -> Result<Self> {
        Self::new(bundle_monodromy(d, k, g)?)
    }

    pub fn genus(&self) -> u32 {
        self.word.genus
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    pub fn monodromy(&self) -> &MonodromyMatrix {
        &self.monodromy
    }
}

/// A basis class of `H^1(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum H1Generator {
    /// Pullback of the circle's volume form.
    Theta,
    /// Lift of an invariant class of `H^1(Σ)`, normalised to vanish on the
    /// section through a fixed point.
    Lift(Vec<i64>),
}

/// A basis class `[x ∧ theta]` of `im(mu)`, with `x` a representative in
/// `H^1(Σ)` of a class in `coker(phi^* - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MuClass {
    pub representative: Vec<i64>,
    pub label: Option<DualGenerator>,
}

impl fmt::Display for MuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(l) => write!(f, "[{l}^theta]"),
            None => write!(f, "[{:?}^theta]", self.representative),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WangData {
    pub genus: u32,
    pub b1: usize,
    pub b2: usize,
    /// Saturated basis of `ker(phi^* - 1)` in `H^1(Σ)` coordinates.
    pub invariant_basis: Vec<Vec<i64>>,
    /// `theta` followed by the lifts of `invariant_basis`.
    pub h1_basis: Vec<H1Generator>,
    /// Basis of `im(mu)`; the `H^2(Y)` basis is `Omega` followed by these.
    pub mu_image_basis: Vec<MuClass>,
    /// Smith form of `phi^* - 1`.
    pub smith: SmithForm,
}

impl WangData {
    /// Torsion subgroup orders of `coker(phi^* - 1)`.
    pub fn torsion(&self) -> Vec<i64> {
        self.smith.torsion()
    }

    /// Restriction of each `H^2(Y)` basis class to a fiber, as a multiple of
    /// the fiber's volume class.
    pub fn fiber_restrictions(&self) -> Vec<i64> {
        let mut r = vec![0; self.b2];
        r[0] = 1;
        r
    }

    /// Restriction of an `H^2(Y)` class (coefficients over
    /// `Omega, mu_image_basis...`) to the fiber.
    pub fn restriction_to_fiber(&self, class: &[i64]) -> Result<i64> {
        if class.len() != self.b2 {
            return Err(Error::LengthMismatch {
                expected: self.b2,
                found: class.len(),
            });
        }
        Ok(class.iter().zip(self.fiber_restrictions()).map(|(&c, r)| c * r).sum())
    }

    /// Index into `mu_image_basis` of the class labelled `label`.
    pub fn mu_index(&self, label: DualGenerator) -> Option<usize> {
        self.mu_image_basis.iter().position(|c| c.label == Some(label))
    }
}

/// Runs the Wang sequence for `y`.
pub fn wang_cohomology(y: &MappingTorus) -> Result<WangData> {
    let g = y.genus();
    let n = 2 * g as usize;
    let m = y.monodromy();
    let shifted = m.matrix().minus_identity()?;

    let invariant_basis = invariant_subspace(m)?;
    let mu_image_basis = mu_image(&shifted)?;
    if mu_image_basis.len() != invariant_basis.len() {
        return Err(Error::Consistency(alloc::format!(
            "rank-nullity violated: ker has rank {}, coker has rank {}",
            invariant_basis.len(),
            mu_image_basis.len()
        )));
    }
    let smith = shifted.smith_form()?;
    if smith.cokernel_free_rank() != mu_image_basis.len() {
        return Err(Error::Consistency("Smith form rank disagrees with elimination".into()));
    }

    let mut h1_basis = vec![H1Generator::Theta];
    h1_basis.extend(invariant_basis.iter().cloned().map(H1Generator::Lift));
    let b1 = 1 + invariant_basis.len();
    let b2 = 1 + mu_image_basis.len();
    debug_assert!(b1 <= n + 1);
    Ok(WangData {
        genus: g,
        b1,
        b2,
        invariant_basis,
        h1_basis,
        mu_image_basis,
        smith,
    })
}

/// Basis for `coker(phi^* - 1) ⊗ Q`, chosen greedily among the standard
/// dual-basis vectors `alpha_1, beta_1, ...` so that each class carries a
/// label whenever possible.
fn mu_image(shifted: &IntMatrix) -> Result<Vec<MuClass>> {
    let n = shifted.nrows();
    let mut columns: Vec<Vec<i64>> = (0..shifted.ncols()).map(|j| shifted.column(j)).collect();
    let mut rank = IntMatrix::from_columns(n, &columns)?.rank()?;
    let mut out = Vec::new();
    for slot in 0..n {
        let mut e = vec![0; n];
        e[slot] = 1;
        columns.push(e.clone());
        let r = IntMatrix::from_columns(n, &columns)?.rank()?;
        if r > rank {
            rank = r;
            out.push(MuClass {
                representative: e,
                label: Some(DualGenerator(Generator::from_slot(slot))),
            });
        } else {
            columns.pop();
        }
    }
    Ok(out)
}

/// The sublattice of `H^2(Y)` restricting to zero on the fiber.
pub fn mu_image_basis(y: &MappingTorus) -> Result<Vec<MuClass>> {
    Ok(wang_cohomology(y)?.mu_image_basis)
}
