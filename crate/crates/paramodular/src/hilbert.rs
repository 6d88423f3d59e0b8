//! Real-quadratic arithmetic and the embedding of Hilbert modular groups
//! into the paramodular group.
//!
//! Scalars are elements `a + b·√t` of a real quadratic field (`t`
//! squarefree, `t ≥ 2`) with exact rational parts.  A fixed base-change
//! matrix `R` turns a pair of Galois-conjugate Möbius actions on two
//! half-planes into a single 4×4 rational symplectic action on the Siegel
//! space, and the maps here construct that embedding, decompose matrices
//! back through it, and verify the geometric identities it satisfies
//! (image plane, equivariance, Riemann form).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::humbert::{component_count, humbert_equation};
use crate::{Error, Result};
use crate::mat::{rat, ratq, QMat};
use crate::numtheory::is_squarefree;
use crate::orthogonal::LatticeVector;
use crate::symplectic::{gamma_t_contains, moebius, SiegelPoint, SymplecticSimilitude};
use crate::gaussian::Gaussian;

fn check_field_discriminant(t: i64) -> Result<()> {
    if t < 2 || !is_squarefree(t) {
        return Err(Error::InvalidArgument(format!(
            "real quadratic arithmetic needs a squarefree t ≥ 2, got {t}"
        )));
    }
    Ok(())
}

/// An element `a + b·√t` of the real quadratic field of discriminant
/// parameter `t` (squarefree, `t ≥ 2`), with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    t: i64,
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, t: i64) -> Self {
        check_field_discriminant(t).expect("QuadScalar::new");
        QuadScalar { a, b, t }
    }

    pub fn from_i64(a: i64, b: i64, t: i64) -> Self {
        QuadScalar::new(rat(a), rat(b), t)
    }

    /// A purely rational element `r + 0·√t`.
    pub fn rational(r: BigRational, t: i64) -> Self {
        QuadScalar::new(r, BigRational::zero(), t)
    }

    pub fn zero(t: i64) -> Self {
        QuadScalar::rational(BigRational::zero(), t)
    }

    pub fn one(t: i64) -> Self {
        QuadScalar::rational(BigRational::one(), t)
    }

    /// The generator `√t` itself.
    pub fn sqrt_t(t: i64) -> Self {
        QuadScalar::new(BigRational::zero(), BigRational::one(), t)
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// The rational part (coefficient of 1).
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// The irrational part (coefficient of `√t`).
    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Whether the element lies in the ground field (no `√t` part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a − b·√t`.
    pub fn galois(&self) -> QuadScalar {
        QuadScalar { a: self.a.clone(), b: -self.b.clone(), t: self.t }
    }

    /// The field norm `a² − t·b²`.
    pub fn norm(&self) -> BigRational {
        &(&self.a * &self.a) - &(&rat(self.t) * &(&self.b * &self.b))
    }

    /// The field trace `2a`.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// Sign of the element under the embedding sending `√t` to the
    /// positive real root.  Because `√t` is irrational, a nonzero element
    /// never vanishes under either embedding, so the mixed-sign case can
    /// be decided by comparing `a²` with `t·b²`.
    pub fn is_positive(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if !self.a.is_negative() && !self.b.is_negative() {
            return true;
        }
        if !self.a.is_positive() && !self.b.is_positive() {
            return false;
        }
        let norm = self.norm();
        debug_assert!(!norm.is_zero(), "a² = t·b² is impossible for rational parts");
        if self.a.is_positive() {
            norm.is_positive()
        } else {
            norm.is_negative()
        }
    }

    /// Sign under the other real embedding (`√t` negative).
    pub fn galois_is_positive(&self) -> bool {
        self.galois().is_positive()
    }

    /// The multiplicative inverse `(a − b√t)/(a² − t·b²)`.
    pub fn inverse(&self) -> Result<QuadScalar> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let n = self.norm();
        debug_assert!(!n.is_zero());
        let conj = self.galois();
        Ok(QuadScalar { a: &conj.a / &n, b: &conj.b / &n, t: self.t })
    }

    pub fn scale(&self, r: &BigRational) -> QuadScalar {
        QuadScalar { a: &self.a * r, b: &self.b * r, t: self.t }
    }
}

fn same_field(x: &QuadScalar, y: &QuadScalar) {
    assert_eq!(x.t, y.t, "mixed real quadratic fields");
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        same_field(self, rhs);
        QuadScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, t: self.t }
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        same_field(self, rhs);
        QuadScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, t: self.t }
    }
}

impl Mul for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        same_field(self, rhs);
        let tt = rat(self.t);
        QuadScalar {
            a: &(&self.a * &rhs.a) + &(&tt * &(&self.b * &rhs.b)),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
            t: self.t,
        }
    }
}

impl Div for &QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: &QuadScalar) -> QuadScalar {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a.clone(), b: -self.b.clone(), t: self.t }
    }
}

/// The orders of the real quadratic field that appear as entry
/// constraints of embedded matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// The maximal order: `ℤ[(1+√t)/2]` when `t ≡ 1 (mod 4)`, `ℤ[√t]` otherwise.
    Maximal,
    /// The subring `ℤ + √t·ℤ` (index two in the maximal order when `t ≡ 1 (mod 4)`).
    IntegerSpan,
    /// The module `½ℤ + ½√t·ℤ`.
    HalfIntegerSpan,
    /// The module `2ℤ + 2√t·ℤ`.
    DoubleIntegerSpan,
}

/// Membership of an exact scalar in one of the standard orders/modules.
pub fn order_contains(x: &QuadScalar, order: OrderKind) -> bool {
    let (a, b) = (&x.a, &x.b);
    match order {
        OrderKind::Maximal => {
            if x.t.rem_euclid(4) == 1 {
                (b + b).is_integer() && (a - b).is_integer()
            } else {
                a.is_integer() && b.is_integer()
            }
        }
        OrderKind::IntegerSpan => a.is_integer() && b.is_integer(),
        OrderKind::HalfIntegerSpan => (a + a).is_integer() && (b + b).is_integer(),
        OrderKind::DoubleIntegerSpan => {
            let half = ratq(1, 2);
            (a * &half).is_integer() && (b * &half).is_integer()
        }
    }
}

/// A 2×2 matrix with entries in a fixed real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMat2 {
    pub e: [[QuadScalar; 2]; 2],
}

impl QuadMat2 {
    pub fn new(a: QuadScalar, b: QuadScalar, c: QuadScalar, d: QuadScalar) -> Self {
        assert!(a.t == b.t && a.t == c.t && a.t == d.t, "mixed real quadratic fields");
        QuadMat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity(t: i64) -> Self {
        QuadMat2::new(QuadScalar::one(t), QuadScalar::zero(t), QuadScalar::zero(t), QuadScalar::one(t))
    }

    pub fn t(&self) -> i64 {
        self.e[0][0].t
    }

    pub fn matmul(&self, rhs: &QuadMat2) -> QuadMat2 {
        let mut out = QuadMat2::identity(self.t());
        for i in 0..2 {
            for j in 0..2 {
                let x = &(&self.e[i][0] * &rhs.e[0][j]) + &(&self.e[i][1] * &rhs.e[1][j]);
                out.e[i][j] = x;
            }
        }
        out
    }

    pub fn det(&self) -> QuadScalar {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn transpose(&self) -> QuadMat2 {
        QuadMat2::new(
            self.e[0][0].clone(),
            self.e[1][0].clone(),
            self.e[0][1].clone(),
            self.e[1][1].clone(),
        )
    }

    /// Entrywise Galois conjugation.
    pub fn galois(&self) -> QuadMat2 {
        QuadMat2::new(
            self.e[0][0].galois(),
            self.e[0][1].galois(),
            self.e[1][0].galois(),
            self.e[1][1].galois(),
        )
    }

    pub fn inverse(&self) -> Result<QuadMat2> {
        let det = self.det();
        let inv = det.inverse().map_err(|_| Error::SingularMatrix)?;
        Ok(QuadMat2::new(
            &self.e[1][1] * &inv,
            &(-&self.e[0][1]) * &inv,
            &(-&self.e[1][0]) * &inv,
            &self.e[0][0] * &inv,
        ))
    }

    /// Whether every entry lies in the ground field.
    pub fn is_rational(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_rational())
    }

    /// The rational 2×2 matrix, if all entries are rational.
    pub fn to_qmat(&self) -> Result<QMat> {
        if !self.is_rational() {
            return Err(Error::InvalidArgument("matrix has irrational entries".into()));
        }
        Ok(QMat::from_fn(2, 2, |i, j| self.e[i][j].rational_part().clone()))
    }

    /// Lifts a rational 2×2 matrix into the field.
    pub fn from_qmat(m: &QMat, t: i64) -> QuadMat2 {
        assert!(m.rows() == 2 && m.cols() == 2, "expected a 2×2 block");
        QuadMat2::new(
            QuadScalar::rational(m.at(0, 0).clone(), t),
            QuadScalar::rational(m.at(0, 1).clone(), t),
            QuadScalar::rational(m.at(1, 0).clone(), t),
            QuadScalar::rational(m.at(1, 1).clone(), t),
        )
    }

    fn diag(x: &QuadScalar, y: &QuadScalar) -> QuadMat2 {
        QuadMat2::new(x.clone(), QuadScalar::zero(x.t), QuadScalar::zero(x.t), y.clone())
    }
}

/// An element `re + im·i` with real-quadratic components: the exact model
/// of a point of the product of half-planes attached to the two real
/// embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiComplexScalar {
    pub re: QuadScalar,
    pub im: QuadScalar,
}

impl BiComplexScalar {
    pub fn new(re: QuadScalar, im: QuadScalar) -> Self {
        same_field(&re, &im);
        BiComplexScalar { re, im }
    }

    pub fn from_quad(re: QuadScalar) -> Self {
        let im = QuadScalar::zero(re.t());
        BiComplexScalar { re, im }
    }

    pub fn zero(t: i64) -> Self {
        BiComplexScalar::from_quad(QuadScalar::zero(t))
    }

    pub fn one(t: i64) -> Self {
        BiComplexScalar::from_quad(QuadScalar::one(t))
    }

    pub fn t(&self) -> i64 {
        self.re.t()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugation: negates the imaginary component.
    pub fn complex_conj(&self) -> BiComplexScalar {
        BiComplexScalar { re: self.re.clone(), im: -&self.im }
    }

    /// Galois conjugation applied to both components.
    pub fn galois(&self) -> BiComplexScalar {
        BiComplexScalar { re: self.re.galois(), im: self.im.galois() }
    }

    /// `re² + im²`: a real-quadratic scalar that vanishes only at zero,
    /// because both components are real under every embedding.
    pub fn square_modulus(&self) -> QuadScalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Result<BiComplexScalar> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let n = self.square_modulus().inverse()?;
        let conj = self.complex_conj();
        Ok(BiComplexScalar { re: &conj.re * &n, im: &conj.im * &n })
    }
}

impl Add for &BiComplexScalar {
    type Output = BiComplexScalar;
    fn add(self, rhs: &BiComplexScalar) -> BiComplexScalar {
        BiComplexScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &BiComplexScalar {
    type Output = BiComplexScalar;
    fn sub(self, rhs: &BiComplexScalar) -> BiComplexScalar {
        BiComplexScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &BiComplexScalar {
    type Output = BiComplexScalar;
    fn mul(self, rhs: &BiComplexScalar) -> BiComplexScalar {
        BiComplexScalar {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div for &BiComplexScalar {
    type Output = BiComplexScalar;
    fn div(self, rhs: &BiComplexScalar) -> BiComplexScalar {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &BiComplexScalar {
    type Output = BiComplexScalar;
    fn neg(self) -> BiComplexScalar {
        BiComplexScalar { re: -&self.re, im: -&self.im }
    }
}

/// Whether `(z₁, z₂)` is a valid point of the product domain: the first
/// coordinate must have positive imaginary part under the embedding with
/// `√t > 0`, the second under the Galois embedding.
pub fn is_valid_point(z1: &BiComplexScalar, z2: &BiComplexScalar) -> bool {
    z1.t() == z2.t() && z1.im.is_positive() && z2.im.galois_is_positive()
}

/// The three shapes of the base-change matrix `R`, indexed by the
/// polarization (`4t` or `t`) and the congruence class of `t` mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RVariant {
    /// Polarization `4t`, `t ≡ 1 (mod 4)`: rows `(1, t+√t)` and `(1, t−√t)`.
    FourTOneMod4,
    /// Polarization `t`, `t ≡ 1 (mod 4)`: rows `(1, (t+√t)/2)` and `(1, (t−√t)/2)`.
    TOneMod4,
    /// Polarization `4t`, `t ≢ 1 (mod 4)`: rows `(1, √t)` and `(1, −√t)`.
    FourTOther,
}

impl RVariant {
    pub fn all() -> [RVariant; 3] {
        [RVariant::FourTOneMod4, RVariant::TOneMod4, RVariant::FourTOther]
    }

    /// Whether the variant is defined for this `t`.
    pub fn admits(&self, t: i64) -> bool {
        match self {
            RVariant::FourTOneMod4 | RVariant::TOneMod4 => t.rem_euclid(4) == 1,
            RVariant::FourTOther => t.rem_euclid(4) != 1,
        }
    }
}

/// The base-change matrix `R` of the requested variant.  Its rows list
/// `1` together with the two Galois conjugates of the module generator.
pub fn r_matrix(t: i64, variant: RVariant) -> Result<QuadMat2> {
    check_field_discriminant(t)?;
    if !variant.admits(t) {
        return Err(Error::InvalidArgument(format!(
            "variant {variant:?} needs t {} 1 (mod 4), got t = {t}",
            if variant == RVariant::FourTOther { "≢" } else { "≡" }
        )));
    }
    let one = QuadScalar::one(t);
    let rho = match variant {
        RVariant::FourTOneMod4 => QuadScalar::from_i64(t, 1, t),
        RVariant::TOneMod4 => QuadScalar::new(ratq(t, 2), ratq(1, 2), t),
        RVariant::FourTOther => QuadScalar::sqrt_t(t),
    };
    Ok(QuadMat2::new(one.clone(), rho.clone(), one, rho.galois()))
}

/// The order constraints on the four entries `(a, b, c, d)` of a matrix
/// in the embedded group, in row-major order.
pub fn order_quadruple(variant: RVariant) -> [OrderKind; 4] {
    match variant {
        RVariant::TOneMod4 => [OrderKind::Maximal; 4],
        RVariant::FourTOneMod4 | RVariant::FourTOther => [
            OrderKind::IntegerSpan,
            OrderKind::HalfIntegerSpan,
            OrderKind::DoubleIntegerSpan,
            OrderKind::IntegerSpan,
        ],
    }
}

/// Whether a 2×2 field matrix belongs to the embedded group: determinant
/// one and each entry inside the order prescribed by the variant.
pub fn group_contains(g: &QuadMat2, variant: RVariant) -> bool {
    let orders = order_quadruple(variant);
    let entries = [&g.e[0][0], &g.e[0][1], &g.e[1][0], &g.e[1][1]];
    g.det().is_one() && entries.iter().zip(orders.iter()).all(|(x, o)| order_contains(x, *o))
}

fn rational_block(m: &QuadMat2, what: &str) -> QMat {
    m.to_qmat().unwrap_or_else(|_| panic!("{what}: conjugation by R must produce rational blocks"))
}

/// Embeds a determinant-one matrix over the field as a 4×4 rational
/// symplectic matrix: the two Galois-conjugate copies of each entry are
/// placed on a diagonal and conjugated with `R`, block by block:
/// `A = ᵗR·d(a,a′)·ᵗR⁻¹`, `B = ᵗR·d(b,b′)·R`, `C = R⁻¹·d(c,c′)·ᵗR⁻¹`,
/// `D = R⁻¹·d(d,d′)·R`.
pub fn psi_hat_embed(g: &QuadMat2, variant: RVariant) -> Result<SymplecticSimilitude> {
    let t = g.t();
    let r = r_matrix(t, variant)?;
    if !g.det().is_one() {
        return Err(Error::InvalidArgument(
            "only determinant-one matrices embed with multiplier one".into(),
        ));
    }
    let tr = r.transpose();
    let tr_inv = tr.inverse()?;
    let r_inv = r.inverse()?;
    let gal = g.galois();
    let da = QuadMat2::diag(&g.e[0][0], &gal.e[0][0]);
    let db = QuadMat2::diag(&g.e[0][1], &gal.e[0][1]);
    let dc = QuadMat2::diag(&g.e[1][0], &gal.e[1][0]);
    let dd = QuadMat2::diag(&g.e[1][1], &gal.e[1][1]);
    let a = rational_block(&tr.matmul(&da).matmul(&tr_inv), "A block");
    let b = rational_block(&tr.matmul(&db).matmul(&r), "B block");
    let c = rational_block(&r_inv.matmul(&dc).matmul(&tr_inv), "C block");
    let d = rational_block(&r_inv.matmul(&dd).matmul(&r), "D block");
    let m = QMat::from_blocks_2x2(&a, &b, &c, &d);
    let sim = SymplecticSimilitude::new(m, BigRational::one());
    debug_assert!(sim.is_symplectic_similitude());
    Ok(sim)
}

/// The result of reading a 4×4 matrix back through the block structure
/// of the embedding.
#[derive(Clone, Debug)]
pub struct DecomposeReport {
    /// The recovered 2×2 matrix over the field.
    pub matrix: QuadMat2,
    pub det_is_one: bool,
    /// Order membership of the entries `(a, b, c, d)`.
    pub memberships: [bool; 4],
    /// Determinant one and all memberships: equivalent to the 4×4 matrix
    /// lying in the paramodular group.
    pub group_member: bool,
}

/// Decomposes a 4×4 rational matrix through the embedding: undoes the
/// `R`-conjugation of each block and requires the results to be diagonal
/// with Galois-conjugate entries.  Matrices outside the image family are
/// rejected.
pub fn psi_hat_decompose(m: &QMat, t: i64, variant: RVariant) -> Result<DecomposeReport> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::DimensionMismatch("the embedding produces 4×4 matrices".into()));
    }
    let r = r_matrix(t, variant)?;
    let tr = r.transpose();
    let tr_inv = tr.inverse()?;
    let r_inv = r.inverse()?;
    let lift = |r0: usize, c0: usize| QuadMat2::from_qmat(&m.block(r0, c0, 2, 2), t);
    // Undo each block's conjugation: A = ᵗR·d·ᵗR⁻¹, B = ᵗR·d·R,
    // C = R⁻¹·d·ᵗR⁻¹, D = R⁻¹·d·R.
    let na = tr_inv.matmul(&lift(0, 0)).matmul(&tr);
    let nb = tr_inv.matmul(&lift(0, 2)).matmul(&r_inv);
    let nc = r.matmul(&lift(2, 0)).matmul(&tr);
    let nd = r.matmul(&lift(2, 2)).matmul(&r_inv);
    let mut entries = Vec::with_capacity(4);
    for n in [&na, &nb, &nc, &nd] {
        if !n.e[0][1].is_zero() || !n.e[1][0].is_zero() {
            return Err(Error::InvalidArgument(
                "the matrix does not block-diagonalize through R".into(),
            ));
        }
        if n.e[1][1] != n.e[0][0].galois() {
            return Err(Error::InvalidArgument(
                "the diagonal entries are not Galois conjugates".into(),
            ));
        }
        entries.push(n.e[0][0].clone());
    }
    let g = QuadMat2::new(entries[0].clone(), entries[1].clone(), entries[2].clone(), entries[3].clone());
    let det_is_one = g.det().is_one();
    let orders = order_quadruple(variant);
    let flat = [&g.e[0][0], &g.e[0][1], &g.e[1][0], &g.e[1][1]];
    let mut memberships = [false; 4];
    for (i, (x, o)) in flat.iter().zip(orders.iter()).enumerate() {
        memberships[i] = order_contains(x, *o);
    }
    let group_member = det_is_one && memberships.iter().all(|&m| m);
    Ok(DecomposeReport { matrix: g, det_is_one, memberships, group_member })
}

/// The block-diagonal involution `S = diag(ᵗR·J·ᵗR⁻¹, R⁻¹·J·R)` with
/// `J = [[0,1],[1,0]]`: a rational paramodular matrix that swaps the two
/// half-plane coordinates of the embedded surface.
pub fn swap_involution_matrix(t: i64, variant: RVariant) -> Result<SymplecticSimilitude> {
    let r = r_matrix(t, variant)?;
    let j2 = QuadMat2::new(
        QuadScalar::zero(t),
        QuadScalar::one(t),
        QuadScalar::one(t),
        QuadScalar::zero(t),
    );
    let tr = r.transpose();
    let p = rational_block(&tr.matmul(&j2).matmul(&tr.inverse()?), "upper swap block");
    let q = rational_block(&r.inverse()?.matmul(&j2).matmul(&r), "lower swap block");
    let zero = QMat::from_i64(&[&[0, 0], &[0, 0]]);
    let m = QMat::from_blocks_2x2(&p, &zero, &zero, &q);
    let sim = SymplecticSimilitude::new(m, BigRational::one());
    assert!(sim.is_symplectic_similitude(), "the swap involution must be symplectic");
    assert_eq!(
        sim.product(&sim).matrix(),
        &QMat::identity(4),
        "the swap matrix must square to the identity"
    );
    Ok(sim)
}

/// Coefficients `(k₁, k₂, k₃)` of the linear relation
/// `k₁τ₁ + k₂τ₂ + k₃τ₃ = 0` cutting out the image of the embedding,
/// normalized so that the associated dual lattice vector is primitive.
pub fn image_coefficients(t: i64, variant: RVariant) -> Result<(BigRational, BigRational, BigRational)> {
    r_matrix(t, variant)?;
    Ok(match variant {
        RVariant::FourTOneMod4 => (rat(-(t * t - t)), rat(2 * t), rat(-1)),
        RVariant::TOneMod4 => (ratq(-(t * t - t), 4), rat(t), rat(-1)),
        RVariant::FourTOther => (rat(t), BigRational::zero(), rat(-1)),
    })
}

/// Whether the plane with the given coefficients contains the image of
/// the period map: with `τ = ᵗR·diag(z₁,z₂)·R` one has
/// `τ₁ = z₁ + z₂`, `τ₂ = ρz₁ + ρ′z₂`, `τ₃ = ρ²z₁ + ρ′²z₂`, so the plane
/// contains the image for all `z` exactly when `k₁ + k₂ρ + k₃ρ² = 0`
/// and the Galois-conjugate relation both hold.
pub fn image_relation_holds(
    t: i64,
    variant: RVariant,
    coeffs: &(BigRational, BigRational, BigRational),
) -> Result<bool> {
    let r = r_matrix(t, variant)?;
    let (k1, k2, k3) = coeffs;
    for rho in [&r.e[0][1], &r.e[1][1]] {
        let value = &(&QuadScalar::rational(k1.clone(), t)
            + &rho.scale(k2))
            + &(rho * rho).scale(k3);
        if !value.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The image plane of one embedding, matched against the Humbert-surface
/// machinery: the plane coefficients, the primitive dual lattice vector
/// cutting out the same divisor, and its discriminant.
#[derive(Clone, Debug)]
pub struct ImageIdentityReport {
    pub t: i64,
    pub coefficients: (BigRational, BigRational, BigRational),
    /// The plane really contains the image of the period map.
    pub relation_holds: bool,
    /// The primitive dual vector orthogonal to the image plane.
    pub vector: LatticeVector,
    pub discriminant: i64,
    /// `4t` for the two polarization-`4t` variants, `t` otherwise.
    pub expected_discriminant: i64,
    pub components: i64,
    pub holds: bool,
}

/// Verifies that the embedded surface is the Humbert surface of the
/// predicted discriminant: `4t` for the polarization-`4t` variants and
/// `t` for the odd one.
pub fn humbert_image_identity(t: i64, variant: RVariant) -> Result<ImageIdentityReport> {
    let coefficients = image_coefficients(t, variant)?;
    let relation_holds = image_relation_holds(t, variant, &coefficients)?;
    let (k1, k2, k3) = &coefficients;
    // The plane k₁τ₁ + k₂τ₂ + k₃τ₃ = 0 is the quadric-pairing locus of
    // the dual vector (0, k₁/t, −k₂/2t, k₃, 0); scale it primitive.
    let slots = [k1 / &rat(t), k2.clone(), k3.clone()];
    let mut lcm = num_bigint::BigInt::one();
    for s in &slots {
        lcm = lcm.lcm(s.denom());
    }
    let mut ints: Vec<num_bigint::BigInt> =
        slots.iter().map(|s| (s * &BigRational::from(lcm.clone())).to_integer()).collect();
    let mut gcd = num_bigint::BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    assert!(!gcd.is_zero(), "the image plane has nonzero coefficients");
    for v in &mut ints {
        *v = &*v / &gcd;
    }
    let coords = vec![
        BigRational::zero(),
        BigRational::from(ints[0].clone()),
        -BigRational::from(ints[1].clone()) / rat(2 * t),
        BigRational::from(ints[2].clone()),
        BigRational::zero(),
    ];
    let vector = LatticeVector::new(t, coords);
    let component = humbert_equation(&vector)?;
    let discriminant = component.discriminant;
    let expected_discriminant = match variant {
        RVariant::TOneMod4 => t,
        _ => 4 * t,
    };
    let components = component_count(t, discriminant);
    let holds = relation_holds && discriminant == expected_discriminant && components >= 1;
    Ok(ImageIdentityReport {
        t,
        coefficients,
        relation_holds,
        vector,
        discriminant,
        expected_discriminant,
        components,
        holds,
    })
}

/// The outcome of transporting the standard plane `{tτ₁ = τ₃}` with the
/// shear `X`.
#[derive(Clone, Debug)]
pub struct PlaneTransportReport {
    pub t: i64,
    pub matrix: SymplecticSimilitude,
    /// `X` lies in the paramodular group.
    pub in_group: bool,
    /// Every transported sample point satisfies the image-plane relation
    /// of the polarization-`4t` embedding.
    pub plane_maps: bool,
    pub holds: bool,
}

/// Checks that the integral shear `X` (unipotent, lower-left entry `t`)
/// carries the plane `{tτ₁ = τ₃}` onto the image plane
/// `{2tτ₂ = (t²−t)τ₁ + τ₃}` of the polarization-`4t` embedding, so the
/// two Humbert models differ by a group element.
pub fn plane_transport_check(t: i64) -> Result<PlaneTransportReport> {
    check_field_discriminant(t)?;
    if t.rem_euclid(4) != 1 {
        return Err(Error::InvalidArgument(
            "the plane transport compares the t ≡ 1 (mod 4) models".into(),
        ));
    }
    let x = SymplecticSimilitude::from_i64(&[
        &[1, 0, 0, 0],
        &[t, 1, 0, 0],
        &[0, 0, 1, -t],
        &[0, 0, 0, 1],
    ]);
    let in_group = gamma_t_contains(&x, t);
    let (k1, k2, k3) = image_coefficients(t, RVariant::FourTOneMod4)?;
    let samples = [
        (Gaussian::from_i64_pair(0, 1), Gaussian::from_i64_pair(0, 0)),
        (Gaussian::from_i64_pair(1, 1), Gaussian::from_i64_pair(2, 0)),
        (Gaussian::from_i64_pair(-2, 3), Gaussian::from_i64_pair(1, 1)),
        (Gaussian::new(ratq(1, 3), rat(2)), Gaussian::new(ratq(-1, 7), ratq(1, 2))),
        (Gaussian::from_i64_pair(0, 5), Gaussian::from_i64_pair(-3, 2)),
    ];
    let mut plane_maps = true;
    for (tau1, tau2) in samples {
        let tau3 = &tau1 * &Gaussian::from_i64(t);
        let z = SiegelPoint::new(tau1, tau2, tau3);
        let w = moebius(&x, &z)?;
        let value = &(&(&w.tau1 * &Gaussian::from_rational(k1.clone()))
            + &(&w.tau2 * &Gaussian::from_rational(k2.clone())))
            + &(&w.tau3 * &Gaussian::from_rational(k3.clone()));
        if !value.is_zero() {
            plane_maps = false;
            break;
        }
    }
    let holds = in_group && plane_maps;
    Ok(PlaneTransportReport { t, matrix: x, in_group, plane_maps, holds })
}

/// A private 2×2 matrix over the bicomplex scalars, enough for Möbius
/// arithmetic on period matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BMat2 {
    e: [[BiComplexScalar; 2]; 2],
}

impl BMat2 {
    fn new(e: [[BiComplexScalar; 2]; 2]) -> Self {
        BMat2 { e }
    }

    fn from_quadmat(m: &QuadMat2) -> Self {
        BMat2::new([
            [
                BiComplexScalar::from_quad(m.e[0][0].clone()),
                BiComplexScalar::from_quad(m.e[0][1].clone()),
            ],
            [
                BiComplexScalar::from_quad(m.e[1][0].clone()),
                BiComplexScalar::from_quad(m.e[1][1].clone()),
            ],
        ])
    }

    fn from_qmat(m: &QMat, t: i64) -> Self {
        BMat2::from_quadmat(&QuadMat2::from_qmat(m, t))
    }

    fn diag(x: &BiComplexScalar, y: &BiComplexScalar) -> Self {
        let zero = BiComplexScalar::zero(x.t());
        BMat2::new([[x.clone(), zero.clone()], [zero, y.clone()]])
    }

    fn matmul(&self, rhs: &BMat2) -> BMat2 {
        let t = self.e[0][0].t();
        let mut out = BMat2::diag(&BiComplexScalar::zero(t), &BiComplexScalar::zero(t));
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = &(&self.e[i][0] * &rhs.e[0][j]) + &(&self.e[i][1] * &rhs.e[1][j]);
            }
        }
        out
    }

    fn add(&self, rhs: &BMat2) -> BMat2 {
        BMat2::new([
            [&self.e[0][0] + &rhs.e[0][0], &self.e[0][1] + &rhs.e[0][1]],
            [&self.e[1][0] + &rhs.e[1][0], &self.e[1][1] + &rhs.e[1][1]],
        ])
    }

    fn det(&self) -> BiComplexScalar {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    fn inverse(&self) -> Result<BMat2> {
        let det = self.det();
        let inv = det.inverse().map_err(|_| Error::SingularMatrix)?;
        Ok(BMat2::new([
            [&self.e[1][1] * &inv, &(-&self.e[0][1]) * &inv],
            [&(-&self.e[1][0]) * &inv, &self.e[0][0] * &inv],
        ]))
    }
}

/// The symmetric period matrix `ᵗR·diag(z₁, z₂)·R`.
fn period_matrix(z1: &BiComplexScalar, z2: &BiComplexScalar, r: &QuadMat2) -> BMat2 {
    let tr = BMat2::from_quadmat(&r.transpose());
    let rb = BMat2::from_quadmat(r);
    tr.matmul(&BMat2::diag(z1, z2)).matmul(&rb)
}

fn scalar_moebius(
    a: &QuadScalar,
    b: &QuadScalar,
    c: &QuadScalar,
    d: &QuadScalar,
    z: &BiComplexScalar,
) -> Result<BiComplexScalar> {
    let lift = |q: &QuadScalar| BiComplexScalar::from_quad(q.clone());
    let num = &(&lift(a) * z) + &lift(b);
    let den = &(&lift(c) * z) + &lift(d);
    if den.is_zero() {
        return Err(Error::InvalidArgument("Möbius denominator vanishes".into()));
    }
    Ok(&num / &den)
}

/// Verifies the equivariance of the period map: acting on `(z₁, z₂)` by
/// the field matrix and its Galois conjugate, then forming the period
/// matrix, agrees with the symplectic action of the embedded 4×4 matrix
/// on the period matrix of the original point.
pub fn equivariance_check(
    g: &QuadMat2,
    z1: &BiComplexScalar,
    z2: &BiComplexScalar,
    variant: RVariant,
) -> Result<bool> {
    let t = g.t();
    if !is_valid_point(z1, z2) {
        return Err(Error::InvalidArgument(
            "the point must lie in the product of half-planes".into(),
        ));
    }
    let r = r_matrix(t, variant)?;
    let m = psi_hat_embed(g, variant)?;
    let gal = g.galois();
    let w1 = scalar_moebius(&g.e[0][0], &g.e[0][1], &g.e[1][0], &g.e[1][1], z1)?;
    let w2 = scalar_moebius(&gal.e[0][0], &gal.e[0][1], &gal.e[1][0], &gal.e[1][1], z2)?;
    let lhs = period_matrix(&w1, &w2, &r);
    let phi = period_matrix(z1, z2, &r);
    let (a, b, c, d) = m.blocks();
    let num = BMat2::from_qmat(&a, t).matmul(&phi).add(&BMat2::from_qmat(&b, t));
    let den = BMat2::from_qmat(&c, t).matmul(&phi).add(&BMat2::from_qmat(&d, t));
    let rhs = num.matmul(&den.inverse()?);
    Ok(lhs == rhs)
}

/// The alternating Gram matrix the embedded abelian surfaces must carry:
/// the standard polarization form of type `(1, t)`.
pub fn w_t_form(t: i64) -> QMat {
    QMat::from_i64(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, t],
        &[-1, 0, 0, 0],
        &[0, -t, 0, 0],
    ])
}

/// Computes the Gram matrix of the Riemann form
/// `E(x, y) = Im(x₁·ȳ₁)/Im z₁ + Im(x₂·ȳ₂)/Im z₂` on the period lattice
/// of the variant, evaluated at an exact point `(z₁, z₂)`.  Each term is
/// a field scalar; their sum must be rational, and the resulting matrix
/// is the polarization form `w_t_form(t)` independently of the point.
pub fn riemann_gram_check(
    t: i64,
    variant: RVariant,
    z1: &BiComplexScalar,
    z2: &BiComplexScalar,
) -> Result<QMat> {
    r_matrix(t, variant)?;
    if z1.t() != t || z2.t() != t {
        return Err(Error::InvalidArgument("point and lattice live over different fields".into()));
    }
    if !is_valid_point(z1, z2) {
        return Err(Error::InvalidArgument(
            "the point must lie in the product of half-planes".into(),
        ));
    }
    let quad = |x: QuadScalar| BiComplexScalar::from_quad(x);
    let half = ratq(1, 2);
    let sqrt = QuadScalar::sqrt_t(t);
    let omega = QuadScalar::new(half.clone(), half.clone(), t);
    let basis: [(BiComplexScalar, BiComplexScalar); 4] = match variant {
        RVariant::TOneMod4 => {
            let eta = QuadScalar::new(ratq(t, 2), ratq(1, 2), t);
            [
                (z1.clone(), z2.clone()),
                (&quad(eta.clone()) * z1, &quad(eta.galois()) * z2),
                (quad(omega.galois()), quad(omega.clone())),
                (quad(sqrt.clone()), quad(sqrt.galois())),
            ]
        }
        RVariant::FourTOneMod4 => {
            let two_eta = QuadScalar::from_i64(t, 1, t);
            [
                (z1.clone(), z2.clone()),
                (&quad(two_eta.clone()) * z1, &quad(two_eta.galois()) * z2),
                (quad(omega.galois()), quad(omega.clone())),
                (quad(sqrt.scale(&half)), quad(sqrt.galois().scale(&half))),
            ]
        }
        RVariant::FourTOther => [
            (z1.clone(), z2.clone()),
            (&quad(sqrt.clone()) * z1, &quad(sqrt.galois()) * z2),
            (
                quad(QuadScalar::rational(half.clone(), t)),
                quad(QuadScalar::rational(half.clone(), t)),
            ),
            (quad(sqrt.scale(&half)), quad(sqrt.galois().scale(&half))),
        ],
    };
    let im_part = |x: &BiComplexScalar, y: &BiComplexScalar| -> QuadScalar {
        (x * &y.complex_conj()).im
    };
    let y1_inv = z1.im.inverse()?;
    let y2_inv = z2.im.inverse()?;
    let gram = QMat::from_fn(4, 4, |i, j| {
        let (xi, yi) = (&basis[i], &basis[j]);
        let term1 = &im_part(&xi.0, &yi.0) * &y1_inv;
        let term2 = &im_part(&xi.1, &yi.1) * &y2_inv;
        let total = &term1 + &term2;
        assert!(
            total.is_rational(),
            "the two embedding contributions must sum to a rational number"
        );
        total.rational_part().clone()
    });
    debug_assert!(gram.is_skew_symmetric());
    Ok(gram)
}

fn random_order_element(kind: OrderKind, t: i64, rng: &mut ChaCha8Rng) -> QuadScalar {
    let m = rng.gen_range(-3..=3i64);
    let n = rng.gen_range(-3..=3i64);
    match kind {
        OrderKind::Maximal => {
            if t.rem_euclid(4) == 1 {
                QuadScalar::new(ratq(2 * m + n, 2), ratq(n, 2), t)
            } else {
                QuadScalar::from_i64(m, n, t)
            }
        }
        OrderKind::IntegerSpan => QuadScalar::from_i64(m, n, t),
        OrderKind::HalfIntegerSpan => QuadScalar::new(ratq(m, 2), ratq(n, 2), t),
        OrderKind::DoubleIntegerSpan => QuadScalar::from_i64(2 * m, 2 * n, t),
    }
}

/// Draws random words in the elementary generators of the embedded
/// group: upper translations by the `b`-slot module, lower translations
/// by the `c`-slot module, and an occasional global sign.
pub fn sample_embedding_group(
    t: i64,
    variant: RVariant,
    seed: u64,
    count: usize,
) -> Result<Vec<QuadMat2>> {
    r_matrix(t, variant)?;
    let orders = order_quadruple(variant);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x41_17));
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut g = QuadMat2::identity(t);
        let steps = rng.gen_range(3..=6usize);
        for _ in 0..steps {
            let step = if rng.gen_bool(0.5) {
                let beta = random_order_element(orders[1], t, &mut rng);
                QuadMat2::new(QuadScalar::one(t), beta, QuadScalar::zero(t), QuadScalar::one(t))
            } else {
                let gamma = random_order_element(orders[2], t, &mut rng);
                QuadMat2::new(QuadScalar::one(t), QuadScalar::zero(t), gamma, QuadScalar::one(t))
            };
            g = g.matmul(&step);
        }
        if rng.gen_bool(0.25) {
            g = QuadMat2::new(-&g.e[0][0], -&g.e[0][1], -&g.e[1][0], -&g.e[1][1]);
        }
        debug_assert!(group_contains(&g, variant), "sampled words must stay in the group");
        out.push(g);
    }
    Ok(out)
}

/// Draws a point of the product domain: the first imaginary part is
/// positive with `√t > 0`, the second under the Galois embedding.
pub fn sample_hilbert_point(t: i64, seed: u64) -> (BiComplexScalar, BiComplexScalar) {
    check_field_discriminant(t).expect("sample_hilbert_point");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x4B_0D));
    let floor = t.sqrt() + 1;
    let mut coord = |_: usize| {
        let re = QuadScalar::new(
            ratq(rng.gen_range(-8..=8i64), rng.gen_range(1..=3i64)),
            ratq(rng.gen_range(-2..=2i64), rng.gen_range(1..=2i64)),
            t,
        );
        let im = QuadScalar::new(
            rat(floor + rng.gen_range(0..=4i64)),
            rat(rng.gen_range(-1..=1i64)),
            t,
        );
        debug_assert!(im.is_positive() && im.galois_is_positive());
        BiComplexScalar::new(re, im)
    };
    let z1 = coord(0);
    let z2 = coord(1);
    debug_assert!(is_valid_point(&z1, &z2));
    (z1, z2)
}
