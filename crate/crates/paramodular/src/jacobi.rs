//! Weight-3 Jacobi cusp form combinatorics: the coefficient-key action of
//! the Eichler–Zagier involutions `W_d`, the exact trace formulas, signed
//! eigenspace dimensions, and the vanishing scans over the index `t`.

use crate::mat::{rat, ratq};
use crate::numtheory::{
    class_number_h1, class_number_hn, divisors, factorize, gcd, is_unitary_divisor,
    kronecker_symbol, moebius_mu, nu, square_part, unitary_divisors, xi_element,
};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// The prime-power unitary divisors `p^a || t`, ascending (empty for t = 1).
pub fn prime_power_divisors(t: i64) -> Vec<i64> {
    assert!(t >= 1, "prime_power_divisors: t must be positive");
    let mut out: Vec<i64> = factorize(t).into_iter().map(|(p, a)| p.pow(a)).collect();
    out.sort_unstable();
    out
}

/// A character of the involution group: one sign per prime-power unitary
/// divisor of `t`. Its value on the coset of `V_d` is the product of the
/// signs at the prime powers dividing `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCharacter {
    t: i64,
    signs: BTreeMap<i64, i64>,
}

impl EigenCharacter {
    /// Builds a character from a full sign assignment. The keys must be
    /// exactly the prime-power unitary divisors of `t`, the values ±1.
    pub fn new(t: i64, signs: BTreeMap<i64, i64>) -> Result<Self> {
        let expected = prime_power_divisors(t);
        let keys: Vec<i64> = signs.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidArgument(format!(
                "character keys {keys:?} must be the prime-power unitary divisors {expected:?} of t={t}"
            )));
        }
        if signs.values().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("character signs must be ±1".into()));
        }
        Ok(EigenCharacter { t, signs })
    }

    /// The all-plus (trivial) character.
    pub fn trivial(t: i64) -> Self {
        let signs = prime_power_divisors(t).into_iter().map(|q| (q, 1)).collect();
        EigenCharacter { t, signs }
    }

    /// A character specified by the set of prime-power divisors carrying −1.
    pub fn from_minus_set(t: i64, minus: &[i64]) -> Result<Self> {
        let mut signs: BTreeMap<i64, i64> =
            prime_power_divisors(t).into_iter().map(|q| (q, 1)).collect();
        for q in minus {
            match signs.get_mut(q) {
                Some(slot) => *slot = -1,
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "{q} is not a prime-power unitary divisor of {t}"
                    )))
                }
            }
        }
        Ok(EigenCharacter { t, signs })
    }

    /// All `2^ν(t)` characters, in binary-subset order over the ascending
    /// prime powers (the trivial character first).
    pub fn all_characters(t: i64) -> Vec<Self> {
        let keys = prime_power_divisors(t);
        let n = keys.len();
        (0..(1u32 << n))
            .map(|mask| {
                let signs = keys
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| (q, if mask & (1 << i) != 0 { -1 } else { 1 }))
                    .collect();
                EigenCharacter { t, signs }
            })
            .collect()
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// Sign pairs `(prime power, ±1)` in ascending key order.
    pub fn signs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.signs.iter().map(|(&q, &s)| (q, s))
    }

    /// The prime powers carrying −1, ascending.
    pub fn minus_keys(&self) -> Vec<i64> {
        self.signs
            .iter()
            .filter_map(|(&q, &s)| (s == -1).then_some(q))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.values().all(|&s| s == 1)
    }

    /// The character value `ε(ξ_d)` on the coset of a unitary divisor.
    pub fn eval_on_divisor(&self, d: i64) -> Result<i64> {
        if !is_unitary_divisor(self.t, d) {
            return Err(Error::NotUnitaryDivisor { d, t: self.t });
        }
        Ok(self
            .signs
            .iter()
            .filter(|&(&q, _)| d % q == 0)
            .map(|(_, &s)| s)
            .product())
    }

    /// Compact pattern like `4:+,7:-` for report rows.
    pub fn pattern(&self) -> String {
        if self.signs.is_empty() {
            return "trivial".to_string();
        }
        self.signs
            .iter()
            .map(|(q, s)| format!("{q}:{}", if *s == 1 { '+' } else { '-' }))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A Fourier coefficient key for index-`t` forms: the discriminant
/// `D = 4nt − l²` and the residue `l mod 2t`. Cusp support requires `D > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoefficientKey {
    pub disc: i64,
    pub residue: i64,
}

impl CoefficientKey {
    /// Validating constructor: `disc > 0`, residue normalized mod `2t`, and
    /// the congruence `disc ≡ −residue² mod 4t`.
    pub fn new(t: i64, disc: i64, residue: i64) -> Result<Self> {
        assert!(t >= 1, "CoefficientKey: t must be positive");
        if disc <= 0 {
            return Err(Error::InvalidArgument(format!(
                "cusp-form keys need positive discriminant, got {disc}"
            )));
        }
        let residue = residue.rem_euclid(2 * t);
        if (disc + residue * residue).rem_euclid(4 * t) != 0 {
            return Err(Error::InvalidArgument(format!(
                "discriminant {disc} is not ≡ −{residue}² mod 4t (t={t})"
            )));
        }
        Ok(CoefficientKey { disc, residue })
    }

    /// The key of the index pair `(n, l)`: discriminant `4nt − l²`.
    pub fn from_nl(t: i64, n: i64, l: i64) -> Result<Self> {
        CoefficientKey::new(t, 4 * n * t - l * l, l)
    }

    pub fn is_valid(&self, t: i64) -> bool {
        self.disc > 0
            && (0..2 * t).contains(&self.residue)
            && (self.disc + self.residue * self.residue) % (4 * t) == 0
    }
}

/// A finitely supported map from coefficient keys to exact rationals for a
/// fixed index `t` and weight 3. Zero values are never stored. A table may
/// declare itself *complete below* a discriminant bound, meaning every
/// absent key with `disc` at most that bound is genuinely zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    t: i64,
    weight: i64,
    complete_below: Option<i64>,
    values: BTreeMap<CoefficientKey, BigRational>,
}

impl CoefficientTable {
    pub fn new(t: i64) -> Self {
        assert!(t >= 1, "CoefficientTable: t must be positive");
        CoefficientTable { t, weight: 3, complete_below: None, values: BTreeMap::new() }
    }

    /// Declares that every absent key with discriminant ≤ `d_max` is zero.
    pub fn with_completeness(mut self, d_max: i64) -> Self {
        assert!(d_max >= 1, "completeness bound must be positive");
        self.complete_below = Some(d_max);
        self
    }

    /// The completeness bound, if declared.
    pub fn complete_below(&self) -> Option<i64> {
        self.complete_below
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoefficientKey, &BigRational)> {
        self.values.iter()
    }

    pub fn insert(&mut self, key: CoefficientKey, value: BigRational) -> Result<()> {
        if !key.is_valid(self.t) {
            return Err(Error::InvalidArgument(format!(
                "key (D={}, l={}) is invalid for t={}",
                key.disc, key.residue, self.t
            )));
        }
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    /// The stored value, defaulting to zero off the support.
    pub fn get(&self, key: &CoefficientKey) -> BigRational {
        self.values.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The stored value, or `None` when the key is absent from the support.
    pub fn lookup(&self, key: &CoefficientKey) -> Option<&BigRational> {
        self.values.get(key)
    }

    /// Coefficient of the index pair `(n, l)`.
    pub fn coefficient_nl(&self, n: i64, l: i64) -> Result<BigRational> {
        Ok(self.get(&CoefficientKey::from_nl(self.t, n, l)?))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let values = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.values.iter().map(|(k, v)| (*k, v * s)).collect()
        };
        CoefficientTable {
            t: self.t,
            weight: self.weight,
            complete_below: self.complete_below,
            values,
        }
    }

    pub fn add(&self, other: &CoefficientTable) -> Result<Self> {
        if self.t != other.t {
            return Err(Error::DimensionMismatch(format!(
                "cannot add tables of different index ({} vs {})",
                self.t, other.t
            )));
        }
        let mut out = self.clone();
        // The sum is only guaranteed complete where both summands are.
        out.complete_below = match (self.complete_below, other.complete_below) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        for (k, v) in &other.values {
            let sum = out.get(k) + v;
            out.insert(*k, sum)?;
        }
        Ok(out)
    }
}

/// The action of `W_d` on coefficient keys: `(D, l) ↦ (D, ξ_d·l mod 2t)`.
/// This is the unique residue with `l′ ≡ −l mod 2d` and `l′ ≡ l mod 2t/d`.
pub fn wd_key_map(t: i64, d: i64, key: &CoefficientKey) -> Result<CoefficientKey> {
    if !key.is_valid(t) {
        return Err(Error::InvalidArgument(format!(
            "key (D={}, l={}) is invalid for t={t}",
            key.disc, key.residue
        )));
    }
    let xi = xi_element(t, d)?.value;
    let mapped = (key.residue as i128 * xi as i128).rem_euclid(2 * t as i128) as i64;
    debug_assert_eq!((mapped + key.residue).rem_euclid(2 * d), 0, "l′ ≡ −l mod 2d");
    debug_assert_eq!((mapped - key.residue).rem_euclid(2 * (t / d)), 0, "l′ ≡ l mod 2t_d");
    CoefficientKey::new(t, key.disc, mapped)
}

/// Pulls a table back along the `W_d` key action (an involution, so pulling
/// back and pushing forward agree).
pub fn apply_wd(table: &CoefficientTable, d: i64) -> Result<CoefficientTable> {
    let t = table.t();
    let mut out = CoefficientTable::new(t);
    // Key discriminants are preserved, so completeness carries over.
    out.complete_below = table.complete_below;
    for (key, value) in table.iter() {
        out.insert(wd_key_map(t, d, key)?, value.clone())?;
    }
    Ok(out)
}

/// The eigenspace projector `2^{−ν} Σ_d ε(ξ_d)·W_d` applied to a table.
pub fn project_eigenspace(table: &CoefficientTable, eps: &EigenCharacter) -> Result<CoefficientTable> {
    let t = table.t();
    if eps.t() != t {
        return Err(Error::DimensionMismatch(format!(
            "character index {} does not match table index {t}",
            eps.t()
        )));
    }
    let mut acc = CoefficientTable::new(t);
    for d in unitary_divisors(t) {
        let sign = rat(eps.eval_on_divisor(d)?);
        acc = acc.add(&apply_wd(table, d)?.scale(&sign))?;
    }
    Ok(acc.scale(&ratq(1, 1i64 << nu(t))))
}

/// `Ĥ_n(e) = Σ_{f² | e} μ(f)·H_n(−4e/f²)`: the Möbius-smoothed column of
/// twisted class numbers entering the trace formula.
fn smoothed_class_number(n: i64, e: i64) -> BigRational {
    let mut total = BigRational::zero();
    let mut f = 1i64;
    while f * f <= e {
        if e % (f * f) == 0 {
            let mu = moebius_mu(f);
            if mu != 0 {
                total += rat(i64::from(mu)) * class_number_hn(n, -4 * e / (f * f)).into_rational();
            }
        }
        f += 1;
    }
    total
}

fn indicator(cond: bool) -> i64 {
    i64::from(cond)
}

/// Trace of `W_d` on the weight-3 index-`t` cusp space, by the exact
/// class-number formula. At `d = 1` this is the dimension of the space.
/// A non-integral result would be an implementation fault and panics.
pub fn trace_wd_full(t: i64, d: i64) -> Result<i64> {
    if t < 1 {
        return Err(Error::InvalidArgument(format!("index t must be positive, got {t}")));
    }
    if !is_unitary_divisor(t, d) {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    let hn = |n: i64, delta: i64| class_number_hn(n, delta).into_rational();

    let mut total = BigRational::zero();
    for e in divisors(d) {
        total += smoothed_class_number(td, e);
    }
    for e in divisors(td) {
        total -= smoothed_class_number(d, e);
    }
    total *= ratq(1, 4);

    total += ratq(3, 2) * (hn(d, 0) - hn(td, 0));
    total += ratq(1, 2)
        * (rat(indicator(td % 2 == 0)) * hn(d, -4) - rat(indicator(d % 2 == 0)) * hn(td, -4));
    total += rat(indicator(td % 3 == 0)) * hn(d, -3) - rat(indicator(d % 3 == 0)) * hn(td, -3);

    let qd = square_part(d);
    let qtd = square_part(td);
    total += ratq(1, 4) * rat(gcd(qtd, 2) * qd - gcd(qd, 2) * qtd);

    assert!(
        total.is_integer(),
        "trace formula must produce an integer, got {total} at (t, d) = ({t}, {d})"
    );
    Ok(total.to_integer().to_i64().expect("trace fits in i64"))
}

/// The simplified trace formula valid for square-free `t` coprime to 6:
/// `¼(Σ_{e|d}(−4e/t_d)H₁(−4e) − Σ_{e|t_d}(−4e/d)H₁(−4e)) + (t_d − d)/8`.
pub fn trace_wd_squarefree(t: i64, d: i64) -> Result<i64> {
    if t < 1 || !crate::numtheory::is_squarefree(t) || gcd(t, 6) != 1 {
        return Err(Error::InvalidArgument(format!(
            "square-free trace formula needs square-free t coprime to 6, got t={t}"
        )));
    }
    if !is_unitary_divisor(t, d) {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    let mut total = BigRational::zero();
    for e in divisors(d) {
        total += rat(i64::from(kronecker_symbol(-4 * e, td))) * class_number_h1(-4 * e).into_rational();
    }
    for e in divisors(td) {
        total -= rat(i64::from(kronecker_symbol(-4 * e, d))) * class_number_h1(-4 * e).into_rational();
    }
    total *= ratq(1, 4);
    total += ratq(td - d, 8);
    assert!(
        total.is_integer(),
        "square-free trace must be an integer, got {total} at (t, d) = ({t}, {d})"
    );
    Ok(total.to_integer().to_i64().expect("trace fits in i64"))
}

/// Dimension of the `ε`-eigenspace: `2^{−ν(t)} Σ_{d||t} ε(ξ_d)·tr(W_d)`.
/// The result is guaranteed by the theory to be a nonnegative integer;
/// anything else panics as an implementation fault.
pub fn dim_eigenspace(t: i64, eps: &EigenCharacter) -> Result<i64> {
    if eps.t() != t {
        return Err(Error::InvalidArgument(format!(
            "character belongs to t={}, not t={t}",
            eps.t()
        )));
    }
    let mut total = BigRational::zero();
    for d in unitary_divisors(t) {
        total += rat(eps.eval_on_divisor(d)?) * rat(trace_wd_full(t, d)?);
    }
    total *= ratq(1, 1i64 << nu(t));
    assert!(
        total.is_integer() && !total.is_negative(),
        "eigenspace dimension must be a nonnegative integer, got {total} at t={t}, ε={}",
        eps.pattern()
    );
    Ok(total.to_integer().to_i64().expect("dimension fits in i64"))
}

/// All characters of index `t` with their eigenspace dimensions, reusing one
/// trace evaluation per unitary divisor.
pub fn dimension_table(t: i64) -> Result<Vec<(EigenCharacter, i64)>> {
    let divs = unitary_divisors(t);
    let traces: Vec<i64> = divs
        .iter()
        .map(|&d| trace_wd_full(t, d))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for eps in EigenCharacter::all_characters(t) {
        let mut total = BigRational::zero();
        for (&d, &tr) in divs.iter().zip(traces.iter()) {
            total += rat(eps.eval_on_divisor(d)?) * rat(tr);
        }
        total *= ratq(1, 1i64 << nu(t));
        assert!(
            total.is_integer() && !total.is_negative(),
            "eigenspace dimension must be a nonnegative integer, got {total} at t={t}, ε={}",
            eps.pattern()
        );
        out.push((eps, total.to_integer().to_i64().expect("dimension fits in i64")));
    }
    Ok(out)
}

/// A vanishing eigenspace found by [`trivial_eigenspace_scan`]: two prime
/// factors, character odd on the full involution (exactly one minus sign),
/// dimension zero.
#[derive(Clone, Debug)]
pub struct VanishingPair {
    pub t: i64,
    pub character: EigenCharacter,
}

/// Result of scanning indices `1..=max_t` for zero-dimensional spaces.
#[derive(Clone, Debug)]
pub struct TrivialScanReport {
    pub max_t: i64,
    /// Indices whose full weight-3 cusp space is zero.
    pub zero_dimension_t: Vec<i64>,
    /// Pairs `(t, ε)` with `ν(t) = 2`, `ε(ξ_t) = −1`, a nonzero full
    /// space, and eigenspace dimension zero.
    pub vanishing_pairs: Vec<VanishingPair>,
}

/// Scans all indices up to `max_t` for (a) zero-dimensional full cusp
/// spaces and (b) vanishing signed eigenspaces with two prime factors and
/// `ε(ξ_t) = −1` inside a nonzero full space — the pairs where the
/// eigenspace vanishes for a reason beyond the vanishing of the whole
/// space.
pub fn trivial_eigenspace_scan(max_t: i64) -> Result<TrivialScanReport> {
    if max_t < 1 {
        return Err(Error::InvalidArgument(format!("max_t must be ≥ 1, got {max_t}")));
    }
    let mut zero_dimension_t = Vec::new();
    let mut vanishing_pairs = Vec::new();
    for t in 1..=max_t {
        let total = trace_wd_full(t, 1)?;
        if total == 0 {
            zero_dimension_t.push(t);
        }
        if nu(t) == 2 && total > 0 {
            for (eps, dim) in dimension_table(t)? {
                if dim == 0 && eps.eval_on_divisor(t)? == -1 {
                    vanishing_pairs.push(VanishingPair { t, character: eps });
                }
            }
        }
    }
    vanishing_pairs.sort_by_key(|p| (p.t, p.character.minus_keys()));
    Ok(TrivialScanReport { max_t, zero_dimension_t, vanishing_pairs })
}
