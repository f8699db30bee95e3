//! First (co)homology of a closed genus-g surface and the action of Dehn
//! twist words on it.
//!
//! Coordinates are always in the ordered symplectic basis
//! `a_1, b_1, ..., a_g, b_g` for `H_1` and the dual basis
//! `alpha_1, beta_1, ..., alpha_g, beta_g` for `H^1`, so index `2(i-1)` is
//! the `a_i`/`alpha_i` slot and `2(i-1) + 1` the `b_i`/`beta_i` slot.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{content, IntMatrix};

/// One of the standard generators `a_i` or `b_i` (1-based handle index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Generator {
    A(u32),
    B(u32),
}

impl Generator {
    pub fn handle(self) -> u32 {
        match self {
            Generator::A(i) | Generator::B(i) => i,
        }
    }

    /// Coordinate slot in the interleaved basis.
    pub fn slot(self) -> usize {
        match self {
            Generator::A(i) => 2 * (i as usize - 1),
            Generator::B(i) => 2 * (i as usize - 1) + 1,
        }
    }

    pub fn from_slot(slot: usize) -> Self {
        let handle = (slot / 2 + 1) as u32;
        if slot % 2 == 0 {
            Generator::A(handle)
        } else {
            Generator::B(handle)
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::B(i) => write!(f, "b{i}"),
        }
    }
}

/// The standard symplectic basis of a genus-g surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticBasis {
    genus: u32,
}

impl SymplecticBasis {
    pub fn new(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn labels(&self) -> Vec<Generator> {
        (0..self.rank()).map(Generator::from_slot).collect()
    }

    pub fn intersection_form(&self) -> IntMatrix {
        let mut j = IntMatrix::zeros(self.rank(), self.rank());
        for h in 0..self.genus as usize {
            j[(2 * h, 2 * h + 1)] = 1;
            j[(2 * h + 1, 2 * h)] = -1;
        }
        j
    }
}

/// The block-diagonal intersection form with `a_i . b_i = 1`.
///
/// The dual basis carries the same matrix as its cup-product pairing
/// (`alpha_i ∪ beta_i = 1` on the fundamental class), so this is also the
/// form preserved by every cohomology action.
pub fn intersection_form(genus: u32) -> Result<IntMatrix> {
    Ok(SymplecticBasis::new(genus)?.intersection_form())
}

/// An integral class in `H_1` written in the interleaved basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyClass(Vec<i64>);

impl HomologyClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Self(coefficients)
    }

    pub fn generator(g: Generator, genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if g.handle() == 0 || g.handle() > genus {
            return Err(Error::LengthMismatch {
                expected: 2 * genus as usize,
                found: g.slot() + 1,
            });
        }
        let mut v = vec![0; 2 * genus as usize];
        v[g.slot()] = 1;
        Ok(Self(v))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_primitive(&self) -> bool {
        content(&self.0) == 1
    }

    /// If this class is a single standard generator, return it.
    pub fn as_generator(&self) -> Option<Generator> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &x)| x != 0);
        match (nz.next(), nz.next()) {
            (Some((slot, 1)), None) => Some(Generator::from_slot(slot)),
            _ => None,
        }
    }

    fn check(&self, genus: u32) -> Result<()> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let expected = 2 * genus as usize;
        if self.0.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: self.0.len(),
            });
        }
        let gcd = content(&self.0);
        if gcd != 1 {
            return Err(Error::NotPrimitive { gcd });
        }
        Ok(())
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.as_generator() {
            return write!(f, "{g}");
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A Dehn twist `T_curve^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwistLetter {
    pub curve: HomologyClass,
    pub exponent: i64,
}

impl TwistLetter {
    pub fn new(curve: HomologyClass, exponent: i64) -> Self {
        Self { curve, exponent }
    }

    pub fn along(g: Generator, exponent: i64, genus: u32) -> Result<Self> {
        Ok(Self::new(HomologyClass::generator(g, genus)?, exponent))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.curve.clone(), -self.exponent)
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            1 => write!(f, "T[{}]", self.curve),
            e => write!(f, "T[{}]^{e}", self.curve),
        }
    }
}

/// A word in Dehn twists. Letters are written left to right and act on
/// the left, so the rightmost letter is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwistWord {
    pub genus: u32,
    pub letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn new(genus: u32, letters: Vec<TwistLetter>) -> Result<Self> {
        let word = Self { genus, letters };
        word.validate()?;
        Ok(word)
    }

    pub fn empty(genus: u32) -> Result<Self> {
        Self::new(genus, Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::ZeroGenus);
        }
        for l in &self.letters {
            if l.exponent == 0 {
                return Err(Error::ZeroExponent);
            }
            l.curve.check(self.genus)?;
        }
        Ok(())
    }

    /// The formal inverse: reversed letters with negated exponents.
    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            letters: self.letters.iter().rev().map(TwistLetter::inverse).collect(),
        }
    }

    /// `self` followed on the left by `other`, i.e. the word `other · self`.
    pub fn then(&self, other: &TwistWord) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::Dimension);
        }
        let mut letters = other.letters.clone();
        letters.extend(self.letters.iter().cloned());
        Ok(Self {
            genus: self.genus,
            letters,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generator-level form of the word, if every curve is a basis curve.
    pub fn as_generators(&self) -> Option<Vec<(Generator, i64)>> {
        self.letters
            .iter()
            .map(|l| l.curve.as_generator().map(|g| (g, l.exponent)))
            .collect()
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The pullback action `phi^*` on `H^1(Σ; Z)` in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonodromyMatrix {
    genus: u32,
    entries: IntMatrix,
}

impl MonodromyMatrix {
    pub fn identity(genus: u32) -> Result<Self> {
        let basis = SymplecticBasis::new(genus)?;
        Ok(Self {
            genus,
            entries: IntMatrix::identity(basis.rank()),
        })
    }

    /// Wraps a matrix after checking it is symplectic with determinant 1.
    pub fn from_matrix(genus: u32, entries: IntMatrix) -> Result<Self> {
        let m = Self { genus, entries };
        let n = 2 * genus as usize;
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if m.entries.nrows() != n || m.entries.ncols() != n {
            return Err(Error::Dimension);
        }
        if !m.is_symplectic()? || m.entries.det()? != 1 {
            return Err(Error::Consistency("matrix is not in Sp(2g, Z)".into()));
        }
        Ok(m)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.entries
    }

    /// `M^T J M == J` for the cup-product pairing `J` on `H^1`.
    pub fn is_symplectic(&self) -> Result<bool> {
        let j = intersection_form(self.genus)?;
        let lhs = self
            .entries
            .transpose()
            .checked_mul(&j)?
            .checked_mul(&self.entries)?;
        Ok(lhs == j)
    }

    /// With `self = phi^*` and `other = f^*`, returns `(phi ∘ f)^* = f^* ∘ phi^*`.
    pub fn compose(&self, other: &MonodromyMatrix) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::Dimension);
        }
        Ok(Self {
            genus: self.genus,
            entries: other.entries.checked_mul(&self.entries)?,
        })
    }

    /// Inverse via the symplectic identity `M^{-1} = -J M^T J`.
    pub fn inverse(&self) -> Result<Self> {
        let j = intersection_form(self.genus)?;
        let inv = j.checked_mul(&self.entries.transpose())?.checked_mul(&j)?;
        let neg = IntMatrix::zeros(inv.nrows(), inv.ncols()).checked_sub(&inv)?;
        Ok(Self {
            genus: self.genus,
            entries: neg,
        })
    }

    /// The pushforward `phi_*` on `H_1`, the transpose of the pullback under
    /// the evaluation pairing `<phi^* x, c> = <x, phi_* c>`.
    pub fn homology_action(&self) -> IntMatrix {
        self.entries.transpose()
    }

    pub fn apply(&self, class: &[i64]) -> Result<Vec<i64>> {
        self.entries.mul_vec(class)
    }
}

/// Pullback action of `T_c^exponent` on `H^1`.
///
/// On homology the twist is the transvection `x ↦ x + (c·x) c`; the
/// pullback is its transpose, `I - n J c c^T`. With this sign a positive
/// twist along `a_i` sends `alpha_i ↦ alpha_i + beta_i` and fixes `beta_i`.
pub fn twist_transvection(curve: &HomologyClass, exponent: i64, genus: u32) -> Result<MonodromyMatrix> {
    if exponent == 0 {
        return Err(Error::ZeroExponent);
    }
    curve.check(genus)?;
    let j = intersection_form(genus)?;
    let c = curve.coefficients();
    let jc = j.mul_vec(c)?;
    let n = c.len();
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for s in 0..n {
            let term = i128::from(exponent) * i128::from(jc[r]) * i128::from(c[s]);
            let v = i128::from(m[(r, s)]) - term;
            m[(r, s)] = i64::try_from(v).map_err(|_| Error::Overflow)?;
        }
    }
    Ok(MonodromyMatrix { genus, entries: m })
}

/// The cohomology action of a whole word. For `phi = L_1 ∘ ... ∘ L_n`,
/// `phi^* = L_n^* ∘ ... ∘ L_1^*`.
pub fn compose_word(word: &TwistWord) -> Result<MonodromyMatrix> {
    word.validate()?;
    let mut acc = MonodromyMatrix::identity(word.genus)?;
    for letter in &word.letters {
        let t = twist_transvection(&letter.curve, letter.exponent, word.genus)?;
        // acc is (L_1 ∘ ... ∘ L_{i-1})^*, so L_i^* multiplies on the left.
        acc.entries = t.entries.checked_mul(&acc.entries)?;
    }
    Ok(acc)
}

/// The monodromy of the bundle manifolds:
/// `(T_{b_g} T_{a_g}^{-1}) ... (T_{b_{k+1}} T_{a_{k+1}}^{-1}) · T_{a_d} ... T_{a_1}`.
///
/// Handles `1..=d` get one positive twist along `a_i`, handles `d+1..=k`
/// are untouched and handles above `k` get the hyperbolic pair.
pub fn bundle_monodromy(d: u32, k: u32, g: u32) -> Result<TwistWord> {
    if g == 0 || d > k || k > g {
        return Err(Error::ParameterOrder { d, k, g });
    }
    let mut letters = Vec::new();
    for i in (k + 1..=g).rev() {
        letters.push(TwistLetter::along(Generator::B(i), 1, g)?);
        letters.push(TwistLetter::along(Generator::A(i), -1, g)?);
    }
    for i in (1..=d).rev() {
        letters.push(TwistLetter::along(Generator::A(i), 1, g)?);
    }
    TwistWord::new(g, letters)
}

/// Saturated integral basis of `ker(M - I)`, in Hermite normal form.
pub fn invariant_subspace(m: &MonodromyMatrix) -> Result<Vec<Vec<i64>>> {
    m.matrix().minus_identity()?.integer_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32, g: u32) -> HomologyClass {
        HomologyClass::generator(Generator::A(i), g).unwrap()
    }

    fn b(i: u32, g: u32) -> HomologyClass {
        HomologyClass::generator(Generator::B(i), g).unwrap()
    }

    #[test]
    fn intersection_form_small_genus() {
        let j1 = intersection_form(1).unwrap();
        assert_eq!(j1, IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap());
        let j2 = intersection_form(2).unwrap();
        let expected =
            IntMatrix::from_rows(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]).unwrap();
        assert_eq!(j2, expected);
        let sq = j2.checked_mul(&j2).unwrap();
        let minus_id = IntMatrix::zeros(4, 4).checked_sub(&IntMatrix::identity(4)).unwrap();
        assert_eq!(sq, minus_id);
        assert_eq!(j2.det().unwrap(), 1);
        assert!(j2.is_skew_symmetric());
    }

    #[test]
    fn zero_genus_rejected() {
        assert_eq!(intersection_form(0), Err(Error::ZeroGenus));
        assert_eq!(bundle_monodromy(0, 0, 0), Err(Error::ParameterOrder { d: 0, k: 0, g: 0 }));
    }

    #[test]
    fn twist_along_a_matches_expected_action() {
        let t = twist_transvection(&a(1, 1), 1, 1).unwrap();
        // alpha -> alpha + beta, beta -> beta (columns are images).
        assert_eq!(t.apply(&[1, 0]).unwrap(), vec![1, 1]);
        assert_eq!(t.apply(&[0, 1]).unwrap(), vec![0, 1]);
        // Homology side: b -> a + b.
        assert_eq!(t.homology_action().mul_vec(&[0, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn twist_inverse_cancels() {
        let w = TwistWord::new(1, vec![TwistLetter::new(a(1, 1), -1), TwistLetter::new(a(1, 1), 1)]).unwrap();
        assert_eq!(compose_word(&w).unwrap(), MonodromyMatrix::identity(1).unwrap());
    }

    #[test]
    fn non_primitive_curve_rejected() {
        let c = HomologyClass::new(vec![2, 0]);
        assert_eq!(twist_transvection(&c, 1, 1), Err(Error::NotPrimitive { gcd: 2 }));
        assert_eq!(twist_transvection(&a(1, 1), 0, 1), Err(Error::ZeroExponent));
        let short = HomologyClass::new(vec![1, 0]);
        assert!(matches!(
            twist_transvection(&short, 1, 2),
            Err(Error::LengthMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn bundle_monodromy_words() {
        let w = bundle_monodromy(1, 1, 2).unwrap();
        assert_eq!(
            w.as_generators().unwrap(),
            vec![(Generator::B(2), 1), (Generator::A(2), -1), (Generator::A(1), 1)]
        );
        let w = bundle_monodromy(2, 3, 4).unwrap();
        assert_eq!(
            w.as_generators().unwrap(),
            vec![
                (Generator::B(4), 1),
                (Generator::A(4), -1),
                (Generator::A(2), 1),
                (Generator::A(1), 1)
            ]
        );
        assert!(bundle_monodromy(3, 3, 3).unwrap().as_generators().unwrap().len() == 3);
        assert!(bundle_monodromy(0, 5, 5).unwrap().is_empty());
        assert!(bundle_monodromy(2, 1, 3).is_err());
        assert!(bundle_monodromy(1, 4, 3).is_err());
    }

    #[test]
    fn identity_fixes_everything() {
        let id = MonodromyMatrix::identity(2).unwrap();
        assert_eq!(invariant_subspace(&id).unwrap().len(), 4);
    }

    #[test]
    fn hyperbolic_block_has_no_fixed_vectors() {
        let m = compose_word(&bundle_monodromy(0, 0, 2).unwrap()).unwrap();
        assert!(invariant_subspace(&m).unwrap().is_empty());
    }

    #[test]
    fn inverse_via_symplectic_identity() {
        let m = compose_word(&bundle_monodromy(1, 1, 3).unwrap()).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), MonodromyMatrix::identity(3).unwrap());
    }

    #[test]
    fn generator_display_and_slots() {
        assert_eq!(Generator::from_slot(0), Generator::A(1));
        assert_eq!(Generator::from_slot(3), Generator::B(2));
        assert_eq!(Generator::B(2).slot(), 3);
        assert_eq!(alloc::format!("{}", b(2, 2)), "b2");
    }
}
