//! Exact 4×4 symplectic similitude arithmetic.
//!
//! Elements of the paramodular group `Γ_t`, its conjugate `Γ̂_t` and the
//! extension `Γ_t*` are represented radical-free: a pair `(m, μ)` of an exact
//! rational matrix and a positive rational multiplier stands for the real
//! matrix `m/√μ`. The scalar `√μ` never materializes; every group relation is
//! restated multiplicatively.

use crate::gaussian::{GMat2, Gaussian};
use crate::mat::{big, rat, ratq, QMat};
use crate::numtheory::{is_unitary_divisor, unitary_divisors};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The symplectic form `J` used throughout: `+1` at positions (0,2) and
/// (1,3), `−1` at (2,0) and (3,1).
pub fn j_form() -> QMat {
    QMat::from_i64(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, 0, 0, 0],
        &[0, -1, 0, 0],
    ])
}

/// The conjugator `C_t = diag(1, t⁻¹, 1, t)` between `Γ_t` and `Γ̂_t`.
pub fn c_t_matrix(t: i64) -> QMat {
    QMat::diag(&[rat(1), ratq(1, t), rat(1), rat(t)])
}

/// The square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// A symplectic similitude stored radical-free: the pair represents the real
/// matrix `m/√μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSimilitude {
    m: QMat,
    mu: BigRational,
}

impl SymplecticSimilitude {
    /// Wraps a 4×4 matrix with a positive multiplier. Panics on shape or sign
    /// violations; similitude-ness itself is checked by
    /// [`Self::is_symplectic_similitude`], not at construction.
    pub fn new(m: QMat, mu: BigRational) -> Self {
        assert!(m.rows() == 4 && m.cols() == 4, "similitude matrix must be 4×4");
        assert!(mu.is_positive(), "similitude multiplier must be positive");
        SymplecticSimilitude { m, mu }
    }

    /// An `Sp₄(ℚ)` element (multiplier 1).
    pub fn from_matrix(m: QMat) -> Self {
        SymplecticSimilitude::new(m, BigRational::one())
    }

    /// Integral shortcut constructor with multiplier 1.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        SymplecticSimilitude::from_matrix(QMat::from_i64(rows))
    }

    pub fn identity() -> Self {
        SymplecticSimilitude::from_matrix(QMat::identity(4))
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    pub fn multiplier(&self) -> &BigRational {
        &self.mu
    }

    /// Whether `m·J·ᵗm = μ·J` holds exactly.
    pub fn is_symplectic_similitude(&self) -> bool {
        let j = j_form();
        let lhs = &(&self.m * &j) * &self.m.transpose();
        lhs == j.scale(&self.mu)
    }

    /// Group product: `(m₁, μ₁)·(m₂, μ₂) = (m₁m₂, μ₁μ₂)`.
    pub fn product(&self, other: &SymplecticSimilitude) -> SymplecticSimilitude {
        SymplecticSimilitude::new(&self.m * &other.m, &self.mu * &other.mu)
    }

    /// Group inverse: `(m, μ)⁻¹ = (μ·m⁻¹, μ)`, since `(μm⁻¹)/√μ = √μ·m⁻¹`.
    pub fn inverse(&self) -> Result<SymplecticSimilitude> {
        let inv = self.m.inverse().ok_or(Error::SingularMatrix)?;
        Ok(SymplecticSimilitude::new(inv.scale(&self.mu), self.mu.clone()))
    }

    /// Rescales to multiplier 1 when `μ` is the square of a rational; returns
    /// `None` otherwise. The represented real matrix is unchanged.
    pub fn normalize(&self) -> Option<SymplecticSimilitude> {
        let s = rational_sqrt(&self.mu)?;
        Some(SymplecticSimilitude::new(self.m.scale(&s.recip()), BigRational::one()))
    }

    /// The four 2×2 blocks `(A, B, C, D)` of the matrix.
    pub fn blocks(&self) -> (QMat, QMat, QMat, QMat) {
        (
            self.m.block(0, 0, 2, 2),
            self.m.block(0, 2, 2, 2),
            self.m.block(2, 0, 2, 2),
            self.m.block(2, 2, 2, 2),
        )
    }
}

/// Index pairs of the ordered bivector basis
/// `(e₁∧e₂, e₁∧e₃, e₁∧e₄, e₂∧e₃, e₂∧e₄, e₃∧e₄)` (0-indexed pairs).
pub const WEDGE_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The induced map of `g` on bivectors: column `(i,j)` holds the coordinates
/// of `(g·e_i) ∧ (g·e_j)`.
pub fn wedge_square(g: &QMat) -> QMat {
    assert!(g.rows() == 4 && g.cols() == 4, "wedge_square: need a 4×4 matrix");
    QMat::from_fn(6, 6, |row, col| {
        let (k, l) = WEDGE_BASIS[row];
        let (i, j) = WEDGE_BASIS[col];
        g.at(k, i) * g.at(l, j) - g.at(l, i) * g.at(k, j)
    })
}

/// Gram matrix of the wedge pairing `(X, Y)` defined by
/// `X ∧ Y = (X, Y)·e₁∧e₂∧e₃∧e₄`, in the [`WEDGE_BASIS`] order.
pub fn wedge_pairing_matrix() -> QMat {
    QMat::from_i64(&[
        &[0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, -1, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, -1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
    ])
}

/// Coordinates of a skew-symmetric 4×4 matrix in the [`WEDGE_BASIS`] order.
pub fn skew_to_wedge_coords(x: &QMat) -> Result<Vec<BigRational>> {
    if !x.is_skew_symmetric() {
        return Err(Error::InvalidArgument("matrix is not skew-symmetric".into()));
    }
    Ok(WEDGE_BASIS.iter().map(|&(i, j)| x.at(i, j).clone()).collect())
}

/// The skew matrix with the given [`WEDGE_BASIS`] coordinates.
pub fn wedge_coords_to_skew(v: &[BigRational]) -> QMat {
    assert_eq!(v.len(), 6, "wedge coordinates have length 6");
    let mut m = QMat::zero(4, 4);
    for (idx, &(i, j)) in WEDGE_BASIS.iter().enumerate() {
        m.set(i, j, v[idx].clone());
        m.set(j, i, -v[idx].clone());
    }
    m
}

/// Pfaffian of a skew-symmetric 4×4 matrix:
/// `Pf = x₁₂x₃₄ − x₁₃x₂₄ + x₁₄x₂₃`. Satisfies `(X, X) = 2·Pf(X)` for the
/// wedge pairing and `Pf(MXᵗM) = Pf(X)·det M`.
pub fn pfaffian(x: &QMat) -> Result<BigRational> {
    if !x.is_skew_symmetric() {
        return Err(Error::InvalidArgument("pfaffian needs a skew-symmetric matrix".into()));
    }
    Ok(x.at(0, 1) * x.at(2, 3) - x.at(0, 2) * x.at(1, 3) + x.at(0, 3) * x.at(1, 2))
}

fn is_multiple_of(v: &BigRational, n: i64) -> bool {
    (v / rat(n)).is_integer()
}

/// Membership in the paramodular group `Γ_t`: multiplier 1, symplectic, and
/// the integrality pattern — all entries integers except entry (3,1) which
/// lies in `t⁻¹ℤ`, with entries (0,3), (1,0), (1,2), (1,3), (2,3) divisible
/// by `t`.
pub fn gamma_t_contains(g: &SymplecticSimilitude, t: i64) -> bool {
    assert!(t >= 1, "gamma_t_contains: t must be positive");
    if !g.multiplier().is_one() || !g.is_symplectic_similitude() {
        return false;
    }
    let m = g.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let v = m.at(i, j);
            let ok = match (i, j) {
                (3, 1) => is_multiple_of(&(v * rat(t)), 1),
                (0, 3) | (1, 0) | (1, 2) | (1, 3) | (2, 3) => is_multiple_of(v, t),
                _ => v.is_integer(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Membership in `Γ̂_t = C_t·Γ_t·C_t⁻¹`: the row pattern
/// `(ℤ, tℤ, ℤ, ℤ) / (ℤ, ℤ, ℤ, t⁻¹ℤ) / (ℤ, tℤ, ℤ, ℤ) / (tℤ, tℤ, tℤ, ℤ)`
/// plus the symplectic condition; verified both directly and through the
/// conjugation equivalence.
pub fn gamma_hat_contains(g: &SymplecticSimilitude, t: i64) -> bool {
    assert!(t >= 1, "gamma_hat_contains: t must be positive");
    let pattern_ok = g.multiplier().is_one() && g.is_symplectic_similitude() && {
        let m = g.matrix();
        let mut ok = true;
        'outer: for i in 0..4 {
            for j in 0..4 {
                let v = m.at(i, j);
                let entry_ok = match (i, j) {
                    (1, 3) => is_multiple_of(&(v * rat(t)), 1),
                    (0, 1) | (2, 1) | (3, 0) | (3, 1) | (3, 2) => is_multiple_of(v, t),
                    _ => v.is_integer(),
                };
                if !entry_ok {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };
    // Cross-check against the defining conjugation.
    let c = c_t_matrix(t);
    let c_inv = c.inverse().expect("C_t is invertible");
    let conj = SymplecticSimilitude::new(&(&c_inv * g.matrix()) * &c, g.multiplier().clone());
    let conj_ok = gamma_t_contains(&conj, t);
    debug_assert_eq!(pattern_ok, conj_ok, "Γ̂_t pattern and conjugation disagree");
    pattern_ok && conj_ok
}

/// The canonical Bézout pair `(x, y)` with `x·d − y·t_d = 1`:
/// `x = d⁻¹ mod t_d` in `[0, t_d)` (so `x = 0` when `t_d = 1`) and
/// `y = (xd − 1)/t_d`.
pub fn euclid_xy(t: i64, d: i64) -> Result<(i64, i64)> {
    if !is_unitary_divisor(t, d) {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    let x = (0..td).find(|&x| (x * d).rem_euclid(td) == 1 % td).unwrap_or(0);
    let y = (x * d - 1) / td;
    debug_assert_eq!(x * d - y * td, 1, "Bézout identity failed");
    Ok((x, y))
}

/// The coset representative `Ṽ_d` with multiplier `d`:
/// rows `(dx, −1, 0, 0), (−yt, d, 0, 0), (0, 0, d, yt), (0, 0, 1, dx)` with
/// the canonical `(x, y)` from [`euclid_xy`].
pub fn make_vtilde(t: i64, d: i64) -> Result<SymplecticSimilitude> {
    let (x, y) = euclid_xy(t, d)?;
    let m = QMat::from_i64(&[
        &[d * x, -1, 0, 0],
        &[-y * t, d, 0, 0],
        &[0, 0, d, y * t],
        &[0, 0, 1, d * x],
    ]);
    Ok(SymplecticSimilitude::new(m, rat(d)))
}

/// The distinguished representative of the hat-side coset `V̂_t`: the matrix
/// with rows `(0, t, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, t, 0)` and
/// multiplier `t`. Its square is `t·E₄`, which normalizes to the identity.
pub fn vhat_t_matrix(t: i64) -> SymplecticSimilitude {
    let m = QMat::from_i64(&[
        &[0, t, 0, 0],
        &[1, 0, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, t, 0],
    ]);
    SymplecticSimilitude::new(m, rat(t))
}

/// Locates `g` in the extension `Γ_t*`: returns the unique unitary divisor
/// `d` with `g·V_d⁻¹ ∈ Γ_t`, or `None` if no coset matches.
pub fn gamma_star_contains(g: &SymplecticSimilitude, t: i64) -> Option<i64> {
    let mut found = None;
    for d in unitary_divisors(t) {
        let ratio = g.multiplier() / rat(d);
        let Some(s) = rational_sqrt(&ratio) else { continue };
        if s.is_zero() {
            continue;
        }
        let vt = make_vtilde(t, d).expect("unitary divisor");
        let Some(vt_inv) = vt.matrix().inverse() else { continue };
        let candidate = (g.matrix() * &vt_inv).scale(&s.recip());
        if gamma_t_contains(&SymplecticSimilitude::from_matrix(candidate), t) {
            assert!(
                found.is_none(),
                "coset representatives are unique; found both V_{:?} and V_{d}",
                found
            );
            found = Some(d);
        }
    }
    found
}

/// A point of the degree-2 Siegel upper half-space with exact
/// Gaussian-rational coordinates `τ₁, τ₂, τ₃` (the symmetric matrix
/// `[[τ₁, τ₂], [τ₂, τ₃]]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelPoint {
    pub tau1: Gaussian,
    pub tau2: Gaussian,
    pub tau3: Gaussian,
}

impl SiegelPoint {
    pub fn new(tau1: Gaussian, tau2: Gaussian, tau3: Gaussian) -> Self {
        SiegelPoint { tau1, tau2, tau3 }
    }

    /// Whether the imaginary part is positive definite:
    /// `Im τ₁ > 0` and `Im τ₁·Im τ₃ − (Im τ₂)² > 0`.
    pub fn is_in_domain(&self) -> bool {
        let (y1, y2, y3) = (&self.tau1.im, &self.tau2.im, &self.tau3.im);
        y1.is_positive() && (y1 * y3 - y2 * y2).is_positive()
    }

    /// The point as a symmetric 2×2 complex matrix.
    pub fn to_gmat2(&self) -> GMat2 {
        GMat2::new(
            self.tau1.clone(),
            self.tau2.clone(),
            self.tau2.clone(),
            self.tau3.clone(),
        )
    }

    fn from_gmat2(m: &GMat2) -> Self {
        assert!(m.is_symmetric(), "Siegel point matrix must be symmetric");
        SiegelPoint::new(m.at(0, 0).clone(), m.at(0, 1).clone(), m.at(1, 1).clone())
    }
}

fn qmat_to_gmat2(m: &QMat) -> GMat2 {
    assert!(m.rows() == 2 && m.cols() == 2);
    GMat2::new(
        Gaussian::from_rational(m.at(0, 0).clone()),
        Gaussian::from_rational(m.at(0, 1).clone()),
        Gaussian::from_rational(m.at(1, 0).clone()),
        Gaussian::from_rational(m.at(1, 1).clone()),
    )
}

fn gmat2_add(a: &GMat2, b: &GMat2) -> GMat2 {
    GMat2::new(
        a.at(0, 0) + b.at(0, 0),
        a.at(0, 1) + b.at(0, 1),
        a.at(1, 0) + b.at(1, 0),
        a.at(1, 1) + b.at(1, 1),
    )
}

/// Fractional-linear action `τ ↦ (Aτ + B)(Cτ + D)⁻¹`. The multiplier cancels
/// in the quotient, so the blocks of `m` act directly.
pub fn moebius(g: &SymplecticSimilitude, z: &SiegelPoint) -> Result<SiegelPoint> {
    let (a, b, c, d) = g.blocks();
    let zm = z.to_gmat2();
    let num = gmat2_add(&qmat_to_gmat2(&a).matmul(&zm), &qmat_to_gmat2(&b));
    let den = gmat2_add(&qmat_to_gmat2(&c).matmul(&zm), &qmat_to_gmat2(&d));
    if den.det().is_zero() {
        return Err(Error::InvalidArgument("Cτ + D is singular at this point".into()));
    }
    let image = num.matmul(&den.inv());
    if !image.is_symmetric() {
        return Err(Error::NotSimilitude(
            "Möbius image is not symmetric; input is not a symplectic similitude".into(),
        ));
    }
    Ok(SiegelPoint::from_gmat2(&image))
}

/// The closed-form `V_d` action on `τ`: the 2×2 triple product
/// `(x, −1; −y·t_d, d) · (dτ₁, τ₂; τ₂, τ₃/d) · (x, −y·t_d; −1, d)`.
/// Rational in `τ` — no radicals appear.
pub fn vd_tau_action(t: i64, d: i64, z: &SiegelPoint) -> Result<SiegelPoint> {
    let (x, y) = euclid_xy(t, d)?;
    let td = t / d;
    let left = qmat_to_gmat2(&QMat::from_i64(&[&[x, -1], &[-y * td, d]]));
    let right = qmat_to_gmat2(&QMat::from_i64(&[&[x, -y * td], &[-1, d]]));
    let dr = rat(d);
    let middle = GMat2::new(
        Gaussian::new(&z.tau1.re * &dr, &z.tau1.im * &dr),
        z.tau2.clone(),
        z.tau2.clone(),
        Gaussian::new(&z.tau3.re / &dr, &z.tau3.im / &dr),
    );
    let product = left.matmul(&middle).matmul(&right);
    Ok(SiegelPoint::from_gmat2(&product))
}

/// Deterministic pseudorandom element of `Γ_t`: a product of `length` factors
/// drawn from the structured families (symmetric upper/lower translations
/// respecting the entry pattern, paired diagonal blocks, `−E₄`, and the
/// unipotent `X` family). The output always passes [`gamma_t_contains`].
pub fn sample_gamma_t(t: i64, seed: u64, length: usize) -> SymplecticSimilitude {
    assert!(t >= 1, "sample_gamma_t: t must be positive");
    assert!(length >= 1, "sample_gamma_t: length must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = SymplecticSimilitude::identity();
    for _ in 0..length {
        let factor = match rng.gen_range(0..5u8) {
            0 => {
                // Upper translation [[I, B], [0, I]] with symmetric B whose
                // off-diagonal and lower-right entries are multiples of t.
                let b11 = rng.gen_range(-3..=3i64);
                let b12 = t * rng.gen_range(-2..=2i64);
                let b22 = t * rng.gen_range(-2..=2i64);
                SymplecticSimilitude::from_i64(&[
                    &[1, 0, b11, b12],
                    &[0, 1, b12, b22],
                    &[0, 0, 1, 0],
                    &[0, 0, 0, 1],
                ])
            }
            1 => {
                // Lower translation [[I, 0], [C, I]] with symmetric C whose
                // lower-right entry ranges over t⁻¹ℤ.
                let c11 = rat(rng.gen_range(-3..=3i64));
                let c12 = rat(rng.gen_range(-3..=3i64));
                let c22 = ratq(rng.gen_range(-2..=2i64), t);
                let mut m = QMat::identity(4);
                m.set(2, 0, c11.clone());
                m.set(2, 1, c12.clone());
                m.set(3, 0, c12);
                m.set(3, 1, c22);
                SymplecticSimilitude::from_matrix(m)
            }
            2 => {
                // diag(A, ᵗA⁻¹) with A a short product of the elementary
                // matrices [[1, n], [0, 1]] and [[1, 0], [tm, 1]].
                let mut a = QMat::identity(2);
                for _ in 0..rng.gen_range(1..=3u8) {
                    let e = if rng.gen_bool(0.5) {
                        QMat::from_i64(&[&[1, rng.gen_range(-2..=2i64)], &[0, 1]])
                    } else {
                        QMat::from_i64(&[&[1, 0], &[t * rng.gen_range(-2..=2i64), 1]])
                    };
                    a = &a * &e;
                }
                let a_inv_t = a.inverse().expect("unimodular").transpose();
                let zero = QMat::zero(2, 2);
                SymplecticSimilitude::from_matrix(QMat::from_blocks_2x2(&a, &zero, &zero, &a_inv_t))
            }
            3 => SymplecticSimilitude::from_matrix(QMat::identity(4).scale(&rat(-1))),
            _ => {
                // The unipotent X family: unit diagonal, ft below the
                // leading entry, −ft in the upper-right of the D block.
                let f = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                SymplecticSimilitude::from_i64(&[
                    &[1, 0, 0, 0],
                    &[f * t, 1, 0, 0],
                    &[0, 0, 1, -f * t],
                    &[0, 0, 0, 1],
                ])
            }
        };
        acc = acc.product(&factor);
    }
    debug_assert!(gamma_t_contains(&acc, t), "sampled element escaped Γ_t");
    acc
}

/// Deterministic pseudorandom Siegel point with exact Gaussian-rational
/// coordinates, guaranteed inside the domain (`Im` positive definite with a
/// margin: `Im τ₁, Im τ₃ ≥ 1`, `|Im τ₂| ≤ 1/2`).
pub fn sample_siegel_point(seed: u64) -> SiegelPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5EA1));
    let mut small = |den: i64| ratq(rng.gen_range(-6..=6i64), den);
    let x1 = small(3);
    let x2 = small(4);
    let x3 = small(3);
    let y1 = rat(1) + small(7).abs();
    let y2 = ratq(1, 2) * small(6) / rat(6);
    let y3 = rat(1) + small(5).abs();
    let z = SiegelPoint::new(
        Gaussian::new(x1, y1),
        Gaussian::new(x2, y2),
        Gaussian::new(x3, y3),
    );
    debug_assert!(z.is_in_domain());
    z
}

/// Scales a rational matrix into a `BigInt` matrix content pair — helper for
/// pattern diagnostics (returns the least common denominator).
pub fn common_denominator(m: &QMat) -> BigInt {
    let mut lcm = big(1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            lcm = num_integer::Integer::lcm(&lcm, m.at(i, j).denom());
        }
    }
    lcm
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat4() -> impl Strategy<Value = QMat> {
        proptest::collection::vec(-4i64..=4, 16)
            .prop_map(|v| QMat::from_fn(4, 4, |i, j| rat(v[4 * i + j])))
    }

    #[test]
    fn wedge_square_of_identity() {
        assert_eq!(wedge_square(&QMat::identity(4)), QMat::identity(6));
    }

    #[test]
    fn wedge_square_of_diagonal() {
        let d = wedge_square(&QMat::diag_i64(&[2, 3, 5, 7]));
        assert_eq!(d, QMat::diag_i64(&[6, 10, 14, 15, 21, 35]));
    }

    #[test]
    fn pfaffian_of_wt_form() {
        // Skew matrix with entries (0,2) = 1, (1,3) = t: the bivector
        // e₁∧e₃ + t·e₂∧e₄. The standard formula gives −t, consistent with
        // (X, X) = 2·Pf(X) under the wedge pairing.
        for t in [1i64, 2, 5, 12] {
            let mut x = QMat::zero(4, 4);
            x.set(0, 2, rat(1));
            x.set(2, 0, rat(-1));
            x.set(1, 3, rat(t));
            x.set(3, 1, rat(-t));
            assert_eq!(pfaffian(&x).unwrap(), rat(-t));
            let coords = skew_to_wedge_coords(&x).unwrap();
            let pairing = wedge_pairing_matrix();
            let v = QMat::new(6, 1, coords);
            let self_pairing = (&v.transpose() * &(&pairing * &v)).at(0, 0).clone();
            assert_eq!(self_pairing, rat(-2 * t));
        }
        assert_eq!(pfaffian(&QMat::zero(4, 4)).unwrap(), rat(0));
        assert!(pfaffian(&QMat::identity(4)).is_err());
    }

    #[test]
    fn gamma_t_contains_examples() {
        for t in [1i64, 2, 6, 12] {
            assert!(gamma_t_contains(&SymplecticSimilitude::identity(), t));
            let upper = SymplecticSimilitude::from_i64(&[
                &[1, 0, 1, t],
                &[0, 1, t, t],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ]);
            assert!(gamma_t_contains(&upper, t), "upper translation at t={t}");
            let x = SymplecticSimilitude::from_i64(&[
                &[1, 0, 0, 0],
                &[t, 1, 0, 0],
                &[0, 0, 1, -t],
                &[0, 0, 0, 1],
            ]);
            assert!(gamma_t_contains(&x, t), "X matrix at t={t}");
        }
        // A symplectic matrix violating the pattern: B₂₂ not divisible by t.
        let bad = SymplecticSimilitude::from_i64(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert!(bad.is_symplectic_similitude());
        assert!(!gamma_t_contains(&bad, 2));
    }

    #[test]
    fn euclid_xy_examples() {
        assert_eq!(euclid_xy(6, 1).unwrap(), (1, 0));
        assert_eq!(euclid_xy(6, 6).unwrap(), (0, -1));
        assert_eq!(euclid_xy(6, 2).unwrap(), (2, 1));
        assert_eq!(euclid_xy(6, 3).unwrap(), (1, 1));
        for t in 1..=60i64 {
            for d in unitary_divisors(t) {
                let (x, y) = euclid_xy(t, d).unwrap();
                assert_eq!(x * d - y * (t / d), 1);
                assert!(x >= 0 && x < (t / d).max(1));
            }
        }
    }

    #[test]
    fn make_vtilde_examples() {
        let v = make_vtilde(6, 2).unwrap();
        assert_eq!(
            v.matrix(),
            &QMat::from_i64(&[&[4, -1, 0, 0], &[-6, 2, 0, 0], &[0, 0, 2, 6], &[0, 0, 1, 4]])
        );
        assert_eq!(v.multiplier(), &rat(2));
        assert!(v.is_symplectic_similitude());
        // d = 1 gives the trivial coset: the representative is a (possibly
        // nontrivial) element of Γ_t itself.
        let v1 = make_vtilde(6, 1).unwrap();
        assert!(v1.multiplier().is_one());
        assert!(gamma_t_contains(&v1, 6));
        // Ṽ_t lands in the same coset as the antidiagonal display matrix.
        for t in [2i64, 3, 5, 6, 12] {
            let vt = make_vtilde(t, t).unwrap();
            let display = SymplecticSimilitude::new(
                QMat::from_i64(&[&[0, 1, 0, 0], &[t, 0, 0, 0], &[0, 0, 0, t], &[0, 0, 1, 0]]),
                rat(t),
            );
            assert!(display.is_symplectic_similitude());
            let quotient = vt.product(&display.inverse().unwrap());
            let normalized = quotient.normalize().expect("multiplier t² is a square");
            assert!(gamma_t_contains(&normalized, t), "coset mismatch at t={t}");
        }
    }

    #[test]
    fn vtilde_squares_into_gamma_t() {
        for t in [1i64, 2, 6, 10, 12, 30] {
            for d in unitary_divisors(t) {
                let v = make_vtilde(t, d).unwrap();
                assert!(v.is_symplectic_similitude(), "Ṽ_{d} at t={t}");
                let sq = v.product(&v);
                let normalized = sq.normalize().expect("μ = d² is a square");
                assert!(gamma_t_contains(&normalized, t), "Ṽ_{d}² ∉ d·Γ_t at t={t}");
            }
        }
    }

    #[test]
    fn vtilde_conjugation_preserves_gamma_t() {
        for t in [2i64, 6, 12] {
            for d in unitary_divisors(t) {
                let v = make_vtilde(t, d).unwrap();
                for seed in 0..5u64 {
                    let g = sample_gamma_t(t, seed, 4);
                    let conj = v.product(&g).product(&v);
                    let normalized = conj.normalize().expect("μ = d² is a square");
                    assert!(
                        gamma_t_contains(&normalized, t),
                        "Ṽ_{d}·g·Ṽ_{d} ∉ d·Γ_t at t={t}, seed={seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn alternative_euclid_choice_gives_same_coset() {
        for t in [6i64, 10, 12, 30] {
            for d in unitary_divisors(t) {
                let td = t / d;
                let (x, y) = euclid_xy(t, d).unwrap();
                // Shift the Bézout pair: (x + t_d, y + d) also solves it.
                let (x2, y2) = (x + td, y + d);
                assert_eq!(x2 * d - y2 * td, 1);
                let alt = SymplecticSimilitude::new(
                    QMat::from_i64(&[
                        &[d * x2, -1, 0, 0],
                        &[-y2 * t, d, 0, 0],
                        &[0, 0, d, y2 * t],
                        &[0, 0, 1, d * x2],
                    ]),
                    rat(d),
                );
                assert!(alt.is_symplectic_similitude());
                let v = make_vtilde(t, d).unwrap();
                let q = alt.product(&v.inverse().unwrap()).normalize().unwrap();
                assert!(gamma_t_contains(&q, t), "coset differs at t={t}, d={d}");
            }
        }
    }

    #[test]
    fn gamma_hat_examples() {
        for t in [1i64, 2, 6, 12] {
            assert!(gamma_hat_contains(&SymplecticSimilitude::identity(), t));
            let c = c_t_matrix(t);
            let c_inv = c.inverse().unwrap();
            for seed in 0..8u64 {
                let g = sample_gamma_t(t, seed, 5);
                let hat = SymplecticSimilitude::from_matrix(&(&c * g.matrix()) * &c_inv);
                assert!(gamma_hat_contains(&hat, t), "conjugated sample at t={t}, seed={seed}");
            }
        }
        // V̂_t itself is not in Γ̂_t (multiplier t), but its square normalizes
        // to the identity, which is.
        let t = 6;
        let vhat = vhat_t_matrix(t);
        assert!(vhat.is_symplectic_similitude());
        assert!(!gamma_hat_contains(&vhat, t));
        let sq = vhat.product(&vhat);
        assert_eq!(sq.matrix(), &QMat::identity(4).scale(&rat(t)));
        let normalized = sq.normalize().unwrap();
        assert_eq!(normalized.matrix(), &QMat::identity(4));
        assert!(gamma_hat_contains(&normalized, t));
    }

    #[test]
    fn vhat_t_moebius_swaps_corners() {
        let t = 7i64;
        let z = sample_siegel_point(11);
        let image = moebius(&vhat_t_matrix(t), &z).unwrap();
        let tr = rat(t);
        assert_eq!(image.tau1, Gaussian::new(&z.tau3.re * &tr, &z.tau3.im * &tr));
        assert_eq!(image.tau2, z.tau2);
        assert_eq!(image.tau3, Gaussian::new(&z.tau1.re / &tr, &z.tau1.im / &tr));
    }

    #[test]
    fn gamma_star_locates_cosets() {
        for t in [2i64, 6, 10, 12] {
            for seed in 0..3u64 {
                let g = sample_gamma_t(t, seed, 4);
                assert_eq!(gamma_star_contains(&g, t), Some(1));
            }
            for d in unitary_divisors(t) {
                let v = make_vtilde(t, d).unwrap();
                assert_eq!(gamma_star_contains(&v, t), Some(d), "t={t}");
                // A product g·Ṽ_d also sits in the V_d coset.
                let g = sample_gamma_t(t, 99, 3);
                let gv = g.product(&v);
                assert_eq!(gamma_star_contains(&gv, t), Some(d), "t={t} (product)");
            }
            // A non-member: similitude with non-square multiplier ratio to
            // every unitary divisor (e.g. μ = 2 when 2 ∤ t or μ irrationally
            // placed) — use diag(1,1,μ,μ) with μ = 5t+3, coprime square-free.
            let mu = 5 * t + 3;
            let odd = SymplecticSimilitude::new(
                QMat::diag_i64(&[1, 1, mu, mu]),
                rat(mu),
            );
            assert!(odd.is_symplectic_similitude());
            if unitary_divisors(t).iter().all(|&d| {
                rational_sqrt(&(rat(mu) / rat(d))).is_none()
            }) {
                assert_eq!(gamma_star_contains(&odd, t), None);
            }
        }
    }

    #[test]
    fn moebius_identity_and_translation() {
        let z = sample_siegel_point(3);
        assert_eq!(moebius(&SymplecticSimilitude::identity(), &z).unwrap(), z);
        let t = 4i64;
        let b = QMat::from_i64(&[&[2, t], &[t, 3 * t]]);
        let g = SymplecticSimilitude::from_matrix(QMat::from_blocks_2x2(
            &QMat::identity(2),
            &b,
            &QMat::zero(2, 2),
            &QMat::identity(2),
        ));
        let image = moebius(&g, &z).unwrap();
        assert_eq!(image.tau1, &z.tau1 + &Gaussian::from_i64(2));
        assert_eq!(image.tau2, &z.tau2 + &Gaussian::from_i64(t));
        assert_eq!(image.tau3, &z.tau3 + &Gaussian::from_i64(3 * t));
    }

    #[test]
    fn vd_closed_form_matches_moebius() {
        for t in [2i64, 6, 10, 12, 15] {
            for d in unitary_divisors(t) {
                let v = make_vtilde(t, d).unwrap();
                for seed in 0..10u64 {
                    let z = sample_siegel_point(seed);
                    let lhs = vd_tau_action(t, d, &z).unwrap();
                    let rhs = moebius(&v, &z).unwrap();
                    assert_eq!(lhs, rhs, "t={t}, d={d}, seed={seed}");
                }
            }
        }
    }

    #[test]
    fn sampled_elements_are_members_and_deterministic() {
        for t in 1..=12i64 {
            for seed in 0..10u64 {
                let g = sample_gamma_t(t, seed, 6);
                assert!(gamma_t_contains(&g, t));
                assert_eq!(g, sample_gamma_t(t, seed, 6), "determinism at t={t}");
            }
        }
        assert_ne!(
            sample_gamma_t(6, 1, 6).matrix(),
            sample_gamma_t(6, 2, 6).matrix(),
            "different seeds should give different elements"
        );
    }

    #[test]
    fn siegel_samples_live_in_domain() {
        for seed in 0..50u64 {
            assert!(sample_siegel_point(seed).is_in_domain());
        }
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&ratq(9, 4)), Some(ratq(3, 2)));
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
        assert_eq!(rational_sqrt(&ratq(50, 2)), Some(rat(5)));
    }

    proptest! {
        #[test]
        fn wedge_square_is_functorial(a in arb_mat4(), b in arb_mat4()) {
            prop_assert_eq!(wedge_square(&(&a * &b)), &wedge_square(&a) * &wedge_square(&b));
        }

        #[test]
        fn wedge_square_matches_matrix_action(a in arb_mat4(), coords in proptest::collection::vec(-5i64..=5, 6)) {
            let v: Vec<BigRational> = coords.iter().map(|&c| rat(c)).collect();
            let x = wedge_coords_to_skew(&v);
            let transported = &(&a * &x) * &a.transpose();
            let lhs = skew_to_wedge_coords(&transported).unwrap();
            let rhs = wedge_square(&a).matvec(&v);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pfaffian_transforms_by_determinant(a in arb_mat4(), coords in proptest::collection::vec(-5i64..=5, 6)) {
            let v: Vec<BigRational> = coords.iter().map(|&c| rat(c)).collect();
            let x = wedge_coords_to_skew(&v);
            let transported = &(&a * &x) * &a.transpose();
            prop_assert_eq!(
                pfaffian(&transported).unwrap(),
                pfaffian(&x).unwrap() * a.det()
            );
        }

        #[test]
        fn pairing_doubles_pfaffian(coords in proptest::collection::vec(-5i64..=5, 6)) {
            let v: Vec<BigRational> = coords.iter().map(|&c| rat(c)).collect();
            let x = wedge_coords_to_skew(&v);
            let vm = QMat::new(6, 1, v);
            let pairing = (&vm.transpose() * &(&wedge_pairing_matrix() * &vm)).at(0, 0).clone();
            prop_assert_eq!(pairing, pfaffian(&x).unwrap() * rat(2));
        }
    }
}
