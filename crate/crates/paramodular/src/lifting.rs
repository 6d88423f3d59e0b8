//! Lift-coefficient arithmetic: the divisor-sum formula producing degree-2
//! Fourier coefficients from an index-`t` coefficient table, the 2×2 index
//! transformation attached to each unitary divisor, synthetic eigen-tables,
//! and the coefficient-level verification of the eigenvalue identity.

use crate::jacobi::{CoefficientKey, CoefficientTable, EigenCharacter};
use crate::mat::{rat, ratq, QMat};
use crate::numtheory::{divisors, gcd, is_unitary_divisor, unitary_divisors, xi_element};
use crate::symplectic::euclid_xy;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An index of a degree-2 Fourier coefficient: the half-integral matrix
/// `N = [[n, l/2], [l/2, m·t]]`. Positive definiteness (relative to `t`)
/// means `n > 0`, `m > 0`, and `4nmt − l² > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LiftIndex {
    pub n: i64,
    pub l: i64,
    pub m: i64,
}

impl LiftIndex {
    pub fn new(n: i64, l: i64, m: i64) -> Self {
        LiftIndex { n, l, m }
    }

    /// Validating constructor relative to the index `t`.
    pub fn checked(t: i64, n: i64, l: i64, m: i64) -> Result<Self> {
        let idx = LiftIndex { n, l, m };
        if !idx.is_positive_definite(t) {
            return Err(Error::InvalidArgument(format!(
                "index (n,l,m)=({n},{l},{m}) is not positive definite for t={t}"
            )));
        }
        Ok(idx)
    }

    /// `4nmt − l²`, four times the determinant of `N`.
    pub fn disc(&self, t: i64) -> i64 {
        4 * self.n * self.m * t - self.l * self.l
    }

    pub fn is_positive_definite(&self, t: i64) -> bool {
        self.n > 0 && self.m > 0 && self.disc(t) > 0
    }

    /// `gcd(n, l, m)` (positive).
    pub fn content(&self) -> i64 {
        gcd(gcd(self.n, self.l), self.m)
    }
}

/// The transformation matrix `Ã_d = [[d, t], [y, dx]]` with the canonical
/// Bézout pair `(x, y)`; satisfies `Ã_d·A_d = d·1` for
/// `A_d = [[dx, −t], [−y, d]]`.
pub fn atilde_matrix(t: i64, d: i64) -> Result<QMat> {
    let (x, y) = euclid_xy(t, d)?;
    Ok(QMat::from_i64(&[&[d, t], &[y, d * x]]))
}

/// The companion matrix `A_d = [[dx, −t], [−y, d]]` (determinant `d`).
pub fn a_matrix(t: i64, d: i64) -> Result<QMat> {
    let (x, y) = euclid_xy(t, d)?;
    Ok(QMat::from_i64(&[&[d * x, -t], &[-y, d]]))
}

/// The index transformation `Ñ = d⁻¹·ᵗÃ_d·N·Ã_d` in coordinates:
/// `ñ = dn + yl + y²t_d m`, `l̃ = (dx + y t_d)l + 2t(n + xym)`,
/// `m̃ = t_d n + xl + dx²m`. Preserves integrality, positive definiteness,
/// the determinant, and the content gcd; on keys it realizes `l ↦ ξ_d·l`.
pub fn transform_index(t: i64, d: i64, idx: &LiftIndex) -> Result<LiftIndex> {
    let (x, y) = euclid_xy(t, d)?;
    let td = t / d;
    let (n, l, m) = (idx.n, idx.l, idx.m);
    let out = LiftIndex {
        n: d * n + y * l + y * y * td * m,
        l: (d * x + y * td) * l + 2 * t * (n + x * y * m),
        m: td * n + x * l + d * x * x * m,
    };
    debug_assert_eq!(out.disc(t), idx.disc(t), "determinant must be preserved");
    debug_assert_eq!(out.content(), idx.content(), "content must be preserved");
    Ok(out)
}

/// The degree-2 lift coefficient at `N`:
/// `b(N) = Σ_{a | (n,l,m)} a^{k−1}·f(nm/a², l/a)`, reading `f` through the
/// `(disc, residue)` key. Only weight `k = 3` is supported. Absent keys
/// count as zero exactly when the table declares completeness at or above
/// their discriminant; otherwise the lookup is a range error.
pub fn lift_coefficient(table: &CoefficientTable, idx: &LiftIndex, k: i64) -> Result<BigRational> {
    if k != 3 {
        return Err(Error::InvalidArgument(format!(
            "the trace and lift formulas cover weight 3 only, got k={k}"
        )));
    }
    let t = table.t();
    if !idx.is_positive_definite(t) {
        return Err(Error::InvalidArgument(format!(
            "lift index (n,l,m)=({},{},{}) is not positive definite for t={t}",
            idx.n, idx.l, idx.m
        )));
    }
    let mut total = BigRational::zero();
    for a in divisors(idx.content()) {
        let key = CoefficientKey::from_nl(t, idx.n * idx.m / (a * a), idx.l / a)?;
        let value = match table.lookup(&key) {
            Some(v) => v.clone(),
            None => match table.complete_below() {
                Some(d_max) if key.disc <= d_max => BigRational::zero(),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "key (D={}, l={}) is outside the table's declared support",
                        key.disc, key.residue
                    )))
                }
            },
        };
        total += rat(a * a) * value;
    }
    Ok(total)
}

/// Deterministic pseudorandom coefficient table with the exact eigenvalue
/// symmetry `W_d·table = ε(ξ_d)·table` for every unitary divisor: values are
/// drawn once per involution orbit of keys with discriminant ≤ `d_max` and
/// propagated with the character's signs; orbits on which the symmetry is
/// self-contradictory (a fixed residue with sign −1) are zeroed. The result
/// declares completeness below `d_max`.
pub fn synth_eigen_table(
    t: i64,
    eps: &EigenCharacter,
    seed: u64,
    d_max: i64,
) -> Result<CoefficientTable> {
    if eps.t() != t {
        return Err(Error::InvalidArgument(format!(
            "character belongs to t={}, not t={t}",
            eps.t()
        )));
    }
    if eps.eval_on_divisor(t)? != -1 {
        return Err(Error::InvalidArgument(
            "eigen-tables require ε(ξ_t) = −1 (the lift-relevant characters)".into(),
        ));
    }
    if d_max < 4 * t {
        return Err(Error::InvalidArgument(format!(
            "completeness bound {d_max} is below the smallest useful value 4t = {}",
            4 * t
        )));
    }
    let divisor_signs: Vec<(i64, i64, i64)> = unitary_divisors(t)
        .into_iter()
        .map(|d| {
            let xi = xi_element(t, d).expect("unitary divisor").value;
            let sign = eps.eval_on_divisor(d).expect("unitary divisor");
            (d, xi, sign)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = CoefficientTable::new(t).with_completeness(d_max);
    for l in 0..(2 * t) {
        // Canonical orbit representatives: the smallest residue in the orbit.
        let orbit_min = divisor_signs
            .iter()
            .map(|&(_, xi, _)| (l as i128 * xi as i128).rem_euclid(2 * t as i128) as i64)
            .min()
            .expect("at least the trivial divisor");
        if orbit_min < l {
            continue;
        }
        let conflicted = divisor_signs
            .iter()
            .any(|&(_, xi, sign)| (l as i128 * xi as i128).rem_euclid(2 * t as i128) as i64 == l && sign == -1);
        let mut disc = {
            let r = (4 * t - (l * l) % (4 * t)) % (4 * t);
            if r == 0 {
                4 * t
            } else {
                r
            }
        };
        while disc <= d_max {
            let num = rng.gen_range(-12i64..=12);
            let den = rng.gen_range(1i64..=4);
            let value = if conflicted { BigRational::zero() } else { ratq(num, den) };
            for &(_, xi, sign) in &divisor_signs {
                let residue = (l as i128 * xi as i128).rem_euclid(2 * t as i128) as i64;
                let key = CoefficientKey::new(t, disc, residue)?;
                table.insert(key, value.clone() * rat(sign))?;
            }
            disc += 4 * t;
        }
    }
    Ok(table)
}

/// Outcome of checking the eigenvalue identity
/// `b(Ñ) = ε(ξ_d)·b(N)` over a grid of lift indices.
#[derive(Clone, Debug)]
pub struct LiftIdentityReport {
    pub t: i64,
    pub d: i64,
    pub bound: i64,
    /// Indices inside the table's declared support that were checked.
    pub indices_checked: usize,
    /// Indices skipped because a needed key would exceed the support bound.
    pub indices_skipped: usize,
    pub holds: bool,
    /// First failing index with the two sides of the identity.
    pub counterexample: Option<(LiftIndex, BigRational, BigRational)>,
}

/// Verifies the coefficient identity `b(transform(N)) = ε(ξ_d)·b(N)` for
/// every positive-definite `N` with `max(n, |l|, m) ≤ bound` whose keys lie
/// inside the table's declared support, in lexicographic order.
pub fn verify_lift_identity(
    table: &CoefficientTable,
    eps: &EigenCharacter,
    d: i64,
    bound: i64,
) -> Result<LiftIdentityReport> {
    let t = table.t();
    if eps.t() != t {
        return Err(Error::InvalidArgument(format!(
            "character belongs to t={}, not t={t}",
            eps.t()
        )));
    }
    if !is_unitary_divisor(t, d) {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("bound must be ≥ 1, got {bound}")));
    }
    let support = table.complete_below().unwrap_or(0);
    let sign = rat(eps.eval_on_divisor(d)?);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut counterexample = None;
    'outer: for n in 1..=bound {
        for l in -bound..=bound {
            for m in 1..=bound {
                let idx = LiftIndex::new(n, l, m);
                if !idx.is_positive_definite(t) {
                    continue;
                }
                if idx.disc(t) > support {
                    skipped += 1;
                    continue;
                }
                let lhs = lift_coefficient(table, &transform_index(t, d, &idx)?, 3)?;
                let rhs = &sign * &lift_coefficient(table, &idx, 3)?;
                checked += 1;
                if lhs != rhs {
                    counterexample = Some((idx, lhs, rhs));
                    break 'outer;
                }
            }
        }
    }
    Ok(LiftIdentityReport {
        t,
        d,
        bound,
        indices_checked: checked,
        indices_skipped: skipped,
        holds: counterexample.is_none(),
        counterexample,
    })
}
