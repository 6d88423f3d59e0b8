//! The orthogonal side of the correspondence: the rank-5 lattice of
//! signature (3,2), the homomorphism taking symplectic similitudes to its
//! isometries, the discriminant-group character, the projective quadric
//! model of the Siegel space, reflections, and involution classification.

use crate::gaussian::Gaussian;
use crate::mat::{rat, ratq, QMat};
use crate::symplectic::{euclid_xy, wedge_square, SiegelPoint, SymplecticSimilitude};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Gram matrix `S_t` of the rank-5 lattice: two antidiagonal `−1` pairs
/// around a middle entry `2t`. Signature (3,2), determinant `2t`.
pub fn gram_st(t: i64) -> QMat {
    assert!(t >= 1, "gram_st: t must be positive");
    QMat::from_i64(&[
        &[0, 0, 0, 0, -1],
        &[0, 0, 0, -1, 0],
        &[0, 0, 2 * t, 0, 0],
        &[0, -1, 0, 0, 0],
        &[-1, 0, 0, 0, 0],
    ])
}

/// The diagonal twist `diag(1, 1, 1, t)` conjugating the similitude group
/// into the stabilizer of the invariant bivector.
pub fn i_t_matrix(t: i64) -> QMat {
    QMat::diag_i64(&[1, 1, 1, t])
}

/// Basis-change matrix on bivectors: columns are the five lattice basis
/// vectors followed by the invariant bivector, all in wedge coordinates
/// `(e₁∧e₂, e₁∧e₃, e₁∧e₄, e₂∧e₃, e₂∧e₄, e₃∧e₄)`.
pub fn basis_change_p(t: i64) -> QMat {
    QMat::from_i64(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 1],
        &[0, 0, 0, -1, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[0, 0, -t, 0, 0, t],
        &[0, 0, 0, 0, -1, 0],
    ])
}

/// The homomorphism from symplectic similitudes to isometries of the
/// rank-5 lattice: twist by `diag(1,1,1,t)`, take the induced map on
/// bivectors divided by the multiplier, and restrict to the orthogonal
/// complement of the invariant bivector. Kernel `{±1}`.
pub fn psi_map(g: &SymplecticSimilitude, t: i64) -> Result<QMat> {
    if !g.is_symplectic_similitude() {
        return Err(Error::NotSimilitude(
            "input does not satisfy m·J·ᵗm = μ·J".into(),
        ));
    }
    let it = i_t_matrix(t);
    let it_inv = it.inverse().expect("diagonal twist is invertible");
    let twisted = &(&it * g.matrix()) * &it_inv;
    let m6 = wedge_square(&twisted).scale(&g.multiplier().recip());
    let p = basis_change_p(t);
    let p_inv = p.inverse().expect("basis change is invertible");
    let conj = &(&p_inv * &m6) * &p;
    // The invariant bivector is fixed exactly, so the last row and column
    // are the unit vector; anything else contradicts the similitude check.
    for k in 0..6 {
        let expect = if k == 5 { rat(1) } else { rat(0) };
        assert_eq!(conj.at(5, k), &expect, "invariant bivector not fixed (row)");
        assert_eq!(conj.at(k, 5), &expect, "invariant bivector not fixed (col)");
    }
    Ok(conj.block(0, 0, 5, 5))
}

/// Closed-form image of the coset representative `V_d` under [`psi_map`]:
/// the block `1 ⊕ [[d, −2yt, y²t_d], [−1, dx + t_d y, −xy], [t_d, −2tx, x²d]] ⊕ 1`
/// with the canonical Bézout pair `(x, y)`.
pub fn vd_orthogonal_matrix(t: i64, d: i64) -> Result<QMat> {
    let (x, y) = euclid_xy(t, d)?;
    let td = t / d;
    Ok(QMat::from_i64(&[
        &[1, 0, 0, 0, 0],
        &[0, d, -2 * y * t, y * y * td, 0],
        &[0, -1, d * x + td * y, -x * y, 0],
        &[0, td, -2 * t * x, x * x * d, 0],
        &[0, 0, 0, 0, 1],
    ]))
}

/// Whether `ᵗo·S_t·o = S_t` holds exactly (no integrality requirement).
pub fn is_isometry(o: &QMat, t: i64) -> bool {
    o.rows() == 5 && o.cols() == 5 && {
        let s = gram_st(t);
        &(&o.transpose() * &s) * o == s
    }
}

/// The character of an integral isometry on the discriminant group
/// (cyclic of order `2t`, generated by the middle dual vector): the unique
/// `ξ ∈ [0, 2t)` with `o(e₃/2t) ≡ ξ·e₃/2t`. Always satisfies `ξ² ≡ 1 mod 4t`.
pub fn disc_action(o: &QMat, t: i64) -> Result<i64> {
    if o.rows() != 5 || o.cols() != 5 || !o.is_integral() {
        return Err(Error::InvalidArgument(
            "discriminant action needs an integral 5×5 isometry".into(),
        ));
    }
    if !is_isometry(o, t) {
        return Err(Error::InvalidArgument(
            "matrix does not preserve the quadratic form".into(),
        ));
    }
    let two_t = BigInt::from(2 * t);
    for i in [0usize, 1, 3, 4] {
        // Automatic for integral isometries (the image of a dual vector is
        // a dual vector), so a violation means corrupted input.
        if !(o.at(i, 2).to_integer() % &two_t).is_zero() {
            return Err(Error::InvalidArgument(
                "middle dual vector does not map into the discriminant group".into(),
            ));
        }
    }
    let xi_big = ((o.at(2, 2).to_integer() % &two_t) + &two_t) % &two_t;
    let xi = xi_big.to_i64().expect("residue fits in i64");
    assert_eq!(
        (xi as i128 * xi as i128 - 1).rem_euclid(4 * t as i128),
        0,
        "discriminant character must square to 1"
    );
    Ok(xi)
}

/// Coordinates of a Siegel point on the projective quadric cut out by the
/// rank-5 form: `((τ₂² − τ₁τ₃)/t, τ₃/t, τ₂/t, τ₁, 1)`. The image is
/// isotropic and lies in the plus component for points of the domain.
pub fn siegel_to_quadric(z: &SiegelPoint, t: i64) -> Vec<Gaussian> {
    assert!(t >= 1, "siegel_to_quadric: t must be positive");
    let inv_t = Gaussian::from_rational(ratq(1, t));
    let q = &(&z.tau2 * &z.tau2) - &(&z.tau1 * &z.tau3);
    vec![
        &q * &inv_t,
        &z.tau3 * &inv_t,
        &z.tau2 * &inv_t,
        z.tau1.clone(),
        Gaussian::one(),
    ]
}

/// The quadratic form `ᵗZ·S_t·Z` evaluated on a complex 5-vector.
pub fn quadric_value(z: &[Gaussian], t: i64) -> Gaussian {
    assert_eq!(z.len(), 5, "quadric points have 5 coordinates");
    let s = gram_st(t);
    let mut acc = Gaussian::zero();
    for i in 0..5 {
        for j in 0..5 {
            let coeff = s.at(i, j);
            if !coeff.is_zero() {
                acc = &acc + &(&(&z[i] * &z[j]) * &Gaussian::from_rational(coeff.clone()));
            }
        }
    }
    acc
}

/// Applies a rational 5×5 matrix to a complex 5-vector.
pub fn apply_to_quadric(o: &QMat, z: &[Gaussian]) -> Vec<Gaussian> {
    assert!(o.rows() == 5 && o.cols() == 5 && z.len() == 5);
    (0..5)
        .map(|i| {
            let mut acc = Gaussian::zero();
            for j in 0..5 {
                let coeff = o.at(i, j);
                if !coeff.is_zero() {
                    acc = &acc + &(&z[j] * &Gaussian::from_rational(coeff.clone()));
                }
            }
            acc
        })
        .collect()
}

/// Projective equality of nonzero complex 5-vectors: all 2×2 minors vanish.
pub fn projectively_equal(a: &[Gaussian], b: &[Gaussian]) -> bool {
    if a.len() != 5 || b.len() != 5 {
        return false;
    }
    if a.iter().all(Gaussian::is_zero) || b.iter().all(Gaussian::is_zero) {
        return false;
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            if !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Which of the two components of the quadric domain a point lies in:
/// normalize the last coordinate to 1 and test the sign of the imaginary
/// part of coordinate 3. Errors on points at infinity (last coordinate 0).
pub fn in_plus_component(z: &[Gaussian]) -> Result<bool> {
    if z.len() != 5 {
        return Err(Error::DimensionMismatch("quadric points have 5 coordinates".into()));
    }
    if z[4].is_zero() {
        return Err(Error::InvalidArgument(
            "point at infinity: last coordinate vanishes".into(),
        ));
    }
    let w = &z[3] / &z[4];
    Ok(w.im.is_positive())
}

/// A vector of the rank-5 quadratic space over ℚ, tagged with its `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    t: i64,
    coords: Vec<BigRational>,
}

impl LatticeVector {
    pub fn new(t: i64, coords: Vec<BigRational>) -> Self {
        assert!(t >= 1, "LatticeVector: t must be positive");
        assert_eq!(coords.len(), 5, "lattice vectors have 5 coordinates");
        LatticeVector { t, coords }
    }

    pub fn from_i64(t: i64, coords: &[i64]) -> Self {
        LatticeVector::new(t, coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The value `ᵗv·S_t·v` (twice the quadratic form).
    pub fn norm(&self) -> BigRational {
        self.inner(self)
    }

    pub fn inner(&self, other: &LatticeVector) -> BigRational {
        assert_eq!(self.t, other.t, "vectors live in different lattices");
        let sv = gram_st(self.t).matvec(&other.coords);
        self.coords
            .iter()
            .zip(sv.iter())
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integral, nonzero, and with coordinate gcd 1.
    pub fn is_primitive(&self) -> bool {
        if !self.is_integral() || self.coords.iter().all(|c| c.is_zero()) {
            return false;
        }
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = num_integer::Integer::gcd(&g, &c.to_integer());
        }
        g == BigInt::from(1)
    }

    /// The divisor of an integral vector: the positive generator of the
    /// ideal of its pairings with the lattice, i.e. the gcd of the entries
    /// of `S_t·v`.
    pub fn divisor(&self) -> Result<i64> {
        if !self.is_integral() || self.coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidArgument(
                "divisor is defined for nonzero integral vectors".into(),
            ));
        }
        let sv = gram_st(self.t).matvec(&self.coords);
        let mut g = BigInt::zero();
        for c in &sv {
            g = num_integer::Integer::gcd(&g, &c.to_integer());
        }
        Ok(g.to_i64().expect("divisor fits in i64"))
    }
}

/// The reflection `σ_v = 1 − (2/v²)·v·ᵗ(S_t v)` in a non-isotropic vector.
/// Always an isometry of determinant −1; integral on the lattice exactly
/// when `v²` divides `2·div(v)` (for integral `v`).
pub fn reflection(v: &LatticeVector) -> Result<QMat> {
    let n = v.norm();
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "reflection in an isotropic vector is undefined".into(),
        ));
    }
    let sv = gram_st(v.t()).matvec(v.coords());
    let factor = rat(2) / n;
    let mut m = QMat::identity(5);
    for i in 0..5 {
        for j in 0..5 {
            let delta = &factor * &v.coords()[i] * &sv[j];
            m.set(i, j, m.at(i, j) - delta);
        }
    }
    Ok(m)
}

/// Eigenvalue shape of a proper involutive isometry of the rank-5 form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionType {
    /// Eigenvalues `{1, 1, 1, −1, −1}` (trace 1).
    Rotation,
    /// Eigenvalues `{1, −1, −1, −1, −1}` (trace −3).
    ReflectionType,
}

/// Classifies a proper (determinant 1) involutive isometry by its trace.
/// The central elements `±1` (trace ±5) carry no type and are rejected.
pub fn involution_classify(o: &QMat, t: i64) -> Result<InvolutionType> {
    if !is_isometry(o, t) {
        return Err(Error::InvalidArgument("not an isometry of the form".into()));
    }
    if o.det() != rat(1) {
        return Err(Error::InvalidArgument(
            "classification applies to proper isometries (determinant 1)".into(),
        ));
    }
    if o * o != QMat::identity(5) {
        return Err(Error::InvalidArgument("matrix is not an involution".into()));
    }
    let tr = o.trace();
    if tr == rat(1) {
        Ok(InvolutionType::Rotation)
    } else if tr == rat(-3) {
        Ok(InvolutionType::ReflectionType)
    } else {
        Err(Error::InvalidArgument(format!(
            "central involution (trace {tr}) has no type"
        )))
    }
}

/// Gram matrix of the negative-definite E₈ lattice: the negated Cartan
/// matrix with node numbering 0–6 along the chain and node 7 attached to
/// node 4 (arm lengths 4, 2, 1 from the branch point). Determinant 1.
pub fn e8_gram() -> QMat {
    let edges = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    QMat::from_fn(8, 8, |i, j| {
        if i == j {
            rat(-2)
        } else if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
            rat(1)
        } else {
            rat(0)
        }
    })
}

/// Gram matrix of the rank-22 unimodular lattice: three hyperbolic planes
/// followed by two copies of negative-definite E₈. Signature (3, 19).
pub fn k3_gram() -> QMat {
    let e8 = e8_gram();
    QMat::from_fn(22, 22, |i, j| {
        if i < 6 && j < 6 {
            if i / 2 == j / 2 && i != j {
                return rat(1);
            }
            rat(0)
        } else if (6..14).contains(&i) && (6..14).contains(&j) {
            e8.at(i - 6, j - 6).clone()
        } else if (14..22).contains(&i) && (14..22).contains(&j) {
            e8.at(i - 14, j - 14).clone()
        } else {
            rat(0)
        }
    })
}

/// Outcome of embedding the degree-`2t` polarization into the rank-22
/// lattice and computing the orthogonal complement of
/// `⟨polarization⟩ ⊕ E₈(−1) ⊕ E₈(−1)`.
#[derive(Clone, Debug)]
pub struct ComplementReport {
    /// Self-pairing of the polarization vector (always `2t`).
    pub polarization_norm: BigRational,
    /// Gram matrix of the 5-element complement basis.
    pub complement_gram: QMat,
    /// Whether the complement basis spans the full rational kernel of the
    /// pairing against the embedded sublattice.
    pub complement_is_full: bool,
    /// Whether a permutation of the complement basis realizes exactly the
    /// negated rank-5 Gram matrix `−S_t`.
    pub matches_minus_gram: bool,
}

/// Embeds the degree-`2t` polarization as `e₄ + t·e₅` in the third
/// hyperbolic plane of the rank-22 lattice and verifies that the orthogonal
/// complement of `⟨polarization⟩ ⊕ E₈(−1) ⊕ E₈(−1)` is isometric to the
/// rank-5 lattice with its form negated.
pub fn complement_check(t: i64) -> ComplementReport {
    assert!(t >= 1);
    let g = k3_gram();
    let unit = |k: usize| -> Vec<BigRational> {
        (0..22).map(|i| if i == k { rat(1) } else { rat(0) }).collect()
    };
    let mut pol = unit(4);
    pol[5] = rat(t);
    // Sublattice: the polarization plus both E₈ factors.
    let mut sub: Vec<Vec<BigRational>> = vec![pol.clone()];
    for k in 6..22 {
        sub.push(unit(k));
    }
    // Pairing matrix rows: x ↦ ᵗm·G·x for each sublattice basis vector m.
    let pairing = QMat::from_fn(17, 22, |r, c| {
        let gm = g.matvec(&sub[r]);
        gm[c].clone()
    });
    // Complement basis: the first two hyperbolic planes and e₄ − t·e₅.
    let mut last = unit(4);
    last[5] = rat(-t);
    let comp: Vec<Vec<BigRational>> = vec![unit(0), unit(1), unit(2), unit(3), last];
    let in_kernel = comp
        .iter()
        .all(|c| pairing.matvec(c).iter().all(|x| x.is_zero()));
    let kernel_dim = pairing.kernel().len();
    let complement_is_full = in_kernel && kernel_dim == 5;

    let c_mat = QMat::from_fn(22, 5, |i, j| comp[j][i].clone());
    let comp_gram = &(&c_mat.transpose() * &g) * &c_mat;
    // Reorder as (c₀, c₂, c₄, c₃, c₁) and compare with −S_t.
    let perm = [0usize, 2, 4, 3, 1];
    let permuted = QMat::from_fn(5, 5, |i, j| comp_gram.at(perm[i], perm[j]).clone());
    let target = gram_st(t).scale(&rat(-1));
    let matches_minus_gram = permuted == target;

    let pol_norm = {
        let gp = g.matvec(&pol);
        pol.iter()
            .zip(gp.iter())
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    };
    ComplementReport {
        polarization_norm: pol_norm,
        complement_gram: comp_gram,
        complement_is_full,
        matches_minus_gram,
    }
}
