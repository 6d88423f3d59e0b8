//! Elementary exact number theory.
//!
//! Unitary divisors, the sign group `Ξ(t)` of residues whose square is
//! `1 mod 4t`, quadratic-residue solvability, Kronecker symbols, square
//! parts, and Hurwitz–Kronecker class numbers `H_1` and their twisted
//! generalization `H_n`.

use crate::mat::{rat, ratq};
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Greatest common divisor on `i64`, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending prime order. Panics unless `n >= 1`.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    assert!(n >= 1, "factorize: argument must be positive, got {n}");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime factors ν(t).
pub fn nu(t: i64) -> u32 {
    factorize(t).len() as u32
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: i64) -> Vec<i64> {
    assert!(n >= 1, "divisors: argument must be positive, got {n}");
    let mut out = vec![1i64];
    for (p, e) in factorize(n) {
        let snapshot = out.clone();
        let mut pk = 1i64;
        for _ in 0..e {
            pk *= p;
            for d in &snapshot {
                out.push(d * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether `n` has no repeated prime factor.
pub fn is_squarefree(n: i64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// The Möbius function μ(n).
pub fn moebius_mu(n: i64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All unitary divisors of `t` (divisors `d` with `gcd(d, t/d) = 1`),
/// ascending. There are exactly `2^ν(t)` of them.
pub fn unitary_divisors(t: i64) -> Vec<i64> {
    assert!(t >= 1, "unitary_divisors: argument must be positive, got {t}");
    let mut out = vec![1i64];
    for (p, e) in factorize(t) {
        let pe = p.pow(e);
        let snapshot = out.clone();
        for d in snapshot {
            out.push(d * pe);
        }
    }
    out.sort_unstable();
    out
}

/// Whether `d` is a unitary divisor of `t`.
pub fn is_unitary_divisor(t: i64, d: i64) -> bool {
    t >= 1 && d >= 1 && t % d == 0 && gcd(d, t / d) == 1
}

/// An element of `Ξ(t)`: a residue `value mod 2t` with `value² ≡ 1 mod 4t`,
/// tagged with the unitary divisor `d` it belongs to (`value ≡ −1 mod 2d`,
/// `value ≡ +1 mod 2(t/d)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XiElement {
    pub t: i64,
    pub d: i64,
    /// Normalized to the range `[0, 2t)`.
    pub value: i64,
}

/// The unique residue `ξ_d mod 2t` with `ξ_d ≡ −1 mod 2d` and
/// `ξ_d ≡ +1 mod 2t_d`, where `t_d = t/d`. Rejects non-unitary `d`.
pub fn xi_element(t: i64, d: i64) -> Result<XiElement> {
    if t < 1 {
        return Err(Error::InvalidArgument(format!("index t must be positive, got {t}")));
    }
    if !is_unitary_divisor(t, d) {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    // 2t is small at desk scale; solve the two congruences by direct scan.
    for value in 0..(2 * t) {
        if (value + 1) % (2 * d) == 0 && (value - 1).rem_euclid(2 * td) == 0 {
            debug_assert_eq!(
                ((i128::from(value) * i128::from(value)) - 1).rem_euclid(i128::from(4 * t)),
                0,
                "xi_element: square not 1 mod 4t"
            );
            return Ok(XiElement { t, d, value });
        }
    }
    unreachable!("xi_element: CRT solution always exists for unitary divisors")
}

/// The full group `Ξ(t) = {ξ mod 2t : ξ² ≡ 1 mod 4t}`, listed ascending by
/// residue. Every element arises as `xi_element(t, d)` for a unique unitary
/// divisor `d`.
pub fn xi_group(t: i64) -> Vec<XiElement> {
    let mut out: Vec<XiElement> = unitary_divisors(t)
        .into_iter()
        .map(|d| xi_element(t, d).expect("unitary divisor"))
        .collect();
    out.sort_by_key(|x| x.value);
    out
}

/// Whether `x² ≡ a mod m` has a solution, decided by direct enumeration.
pub fn qr_solvable(a: i64, m: i64) -> bool {
    assert!(m >= 1, "qr_solvable: modulus must be positive, got {m}");
    let target = a.rem_euclid(m);
    (0..m).any(|x| (i128::from(x) * i128::from(x) - i128::from(target)).rem_euclid(i128::from(m)) == 0)
}

/// The Kronecker symbol `(a/b)`, the standard multiplicative extension of the
/// Jacobi/Legendre symbol to all integer `b` (with `(a/0)` nonzero only for
/// `a = ±1`, and `(a/2)` determined by `a mod 8`).
pub fn kronecker_symbol(mut a: i64, mut b: i64) -> i32 {
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    // Split off the even part of b; each factor of 2 contributes (a/2).
    let mut twos = 0u32;
    while b % 2 == 0 {
        b /= 2;
        twos += 1;
    }
    let mut k: i32 = if twos % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1, // a is odd here, so 3 or 5
        }
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // Jacobi loop on odd positive b via quadratic reciprocity.
    loop {
        a = a.rem_euclid(b);
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 && matches!(b % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && b % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut b);
        if b == 1 {
            return k;
        }
    }
}

/// `Q(n)`: the greatest integer whose square divides `n`.
pub fn square_part(n: i64) -> i64 {
    assert!(n >= 1, "square_part: argument must be positive, got {n}");
    factorize(n).into_iter().map(|(p, e)| p.pow(e / 2)).product()
}

/// A class-number value: an exact rational whose twelvefold is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNumberValue {
    value: BigRational,
}

impl ClassNumberValue {
    fn new(value: BigRational) -> Self {
        let twelve_times = &value * rat(12);
        assert!(
            twelve_times.is_integer(),
            "class number denominator must divide 12, got {value}"
        );
        ClassNumberValue { value }
    }

    /// The value as an exact rational.
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// Consumes the wrapper and yields the rational.
    pub fn into_rational(self) -> BigRational {
        self.value
    }
}

/// The Hurwitz–Kronecker class number `H₁(Δ)` as an exact rational:
/// `−1/12` at `Δ = 0`; for `Δ < 0` with `Δ ≡ 0, 1 mod 4` the number of
/// SL₂(ℤ)-classes of positive definite integral binary quadratic forms of
/// discriminant `Δ`, counting multiples of `x² + y²` with weight `1/2` and
/// multiples of `x² + xy + y²` with weight `1/3`; `0` otherwise.
pub fn class_number_h1(delta: i64) -> ClassNumberValue {
    ClassNumberValue::new(h1_rational(delta))
}

fn h1_rational(delta: i64) -> BigRational {
    if delta == 0 {
        return ratq(-1, 12);
    }
    if delta > 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return BigRational::zero();
    }
    // Enumerate reduced forms (a, b, c): b² − 4ac = Δ, |b| ≤ a ≤ c,
    // and b ≥ 0 whenever |b| = a or a = c. Reduction forces 3b² ≤ 4ac − ...,
    // i.e. a ≤ sqrt(|Δ|/3).
    let mut total = BigRational::zero();
    let mut a = 1i64;
    while 3 * a * a <= -delta {
        for b in -a..=a {
            if (b * b - delta) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - delta) / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            let weight = if b == 0 && a == c {
                ratq(1, 2)
            } else if b == a && a == c {
                ratq(1, 3)
            } else {
                rat(1)
            };
            total += weight;
        }
        a += 1;
    }
    total
}

/// The twisted class number `H_n(Δ)`. For `n = 1` this is `H₁`. For `n ≥ 2`
/// write `gcd(n, Δ) = a²b` with `b` square-free (taking `gcd(n, 0) = n`);
/// the value is `a²b · (Δ/(a²b²) | n/(a²b)) · H₁(Δ/(a²b²))` when `a²b²`
/// divides `Δ`, and `0` otherwise. In particular `H_n(0) = −n/12`.
pub fn class_number_hn(n: i64, delta: i64) -> ClassNumberValue {
    assert!(n >= 1, "class_number_hn: n must be positive, got {n}");
    if n == 1 {
        return class_number_h1(delta);
    }
    let g = if delta == 0 { n } else { gcd(n, delta) };
    let a = square_part(g);
    let b = g / (a * a);
    let ab2 = a * a * b * b;
    if delta % ab2 != 0 {
        return ClassNumberValue::new(BigRational::zero());
    }
    let reduced = delta / ab2;
    let sym = kronecker_symbol(reduced, n / (a * a * b));
    let value = rat(a * a * b) * rat(i64::from(sym)) * h1_rational(reduced);
    ClassNumberValue::new(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unitary_divisor_examples() {
        assert_eq!(unitary_divisors(1), vec![1]);
        assert_eq!(unitary_divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(unitary_divisors(12), vec![1, 3, 4, 12]);
        assert_eq!(unitary_divisors(36), vec![1, 4, 9, 36]);
    }

    #[test]
    fn unitary_divisor_count_is_two_to_nu() {
        for t in 1..=200 {
            assert_eq!(unitary_divisors(t).len(), 1usize << nu(t));
        }
    }

    #[test]
    fn xi_element_examples() {
        assert_eq!(xi_element(6, 2).unwrap().value, 7);
        assert_eq!(xi_element(6, 3).unwrap().value, 5);
        for t in [1, 2, 5, 12, 30] {
            assert_eq!(xi_element(t, t).unwrap().value, (2 * t - 1) % (2 * t));
        }
        assert!(matches!(
            xi_element(12, 2),
            Err(Error::NotUnitaryDivisor { d: 2, t: 12 })
        ));
    }

    #[test]
    fn xi_group_examples_and_brute_force() {
        let values = |t: i64| -> Vec<i64> { xi_group(t).iter().map(|x| x.value).collect() };
        assert_eq!(values(6), vec![1, 5, 7, 11]);
        assert_eq!(values(10), vec![1, 9, 11, 19]);
        assert_eq!(values(1), vec![1]);
        for t in 1..=60i64 {
            let brute: Vec<i64> = (0..2 * t)
                .filter(|&x| (i128::from(x) * i128::from(x) - 1).rem_euclid(i128::from(4 * t)) == 0)
                .collect();
            assert_eq!(values(t), brute, "xi_group mismatch at t={t}");
        }
    }

    #[test]
    fn xi_group_is_closed_under_multiplication() {
        for t in 1..=40i64 {
            let values: Vec<i64> = xi_group(t).iter().map(|x| x.value).collect();
            for &x in &values {
                for &y in &values {
                    let prod = (x * y).rem_euclid(2 * t);
                    assert!(values.contains(&prod), "t={t}: {x}*{y}={prod} escapes Ξ(t)");
                }
            }
        }
    }

    #[test]
    fn xi_is_multiplicative_over_coprime_unitary_divisors() {
        for t in 1..=100i64 {
            let uds = unitary_divisors(t);
            for &d in &uds {
                for &e in &uds {
                    if gcd(d, e) != 1 {
                        continue;
                    }
                    let xd = xi_element(t, d).unwrap().value;
                    let xe = xi_element(t, e).unwrap().value;
                    let xde = xi_element(t, d * e).unwrap().value;
                    assert_eq!((xd * xe).rem_euclid(2 * t), xde, "t={t}, d={d}, e={e}");
                }
            }
        }
    }

    #[test]
    fn qr_solvable_examples() {
        for m in 1..=30 {
            assert!(qr_solvable(1, m));
        }
        assert!(qr_solvable(5, 4));
        assert!(!qr_solvable(3, 4));
        // Jacobi symbol (2/15) is +1, yet 2 is not a square mod 15; the
        // solvability reading and the symbol reading genuinely differ here.
        assert!(!qr_solvable(2, 15));
        assert_eq!(kronecker_symbol(2, 15), 1);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-4, 11), -1);
        assert_eq!(kronecker_symbol(-4, 13), 1);
        for a in -20..=20 {
            assert_eq!(kronecker_symbol(a, 1), 1);
        }
        assert_eq!(kronecker_symbol(0, 1), 1);
        assert_eq!(kronecker_symbol(0, -1), 1);
        assert_eq!(kronecker_symbol(0, 7), 0);
        assert_eq!(kronecker_symbol(6, 2), 0);
        assert_eq!(kronecker_symbol(7, 2), 1);
        assert_eq!(kronecker_symbol(3, 2), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion_at_odd_primes() {
        let primes = [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
        for &p in &primes {
            for a in -30..=30i64 {
                let euler = {
                    let mut pow = 1i64;
                    let mut base = a.rem_euclid(p);
                    let mut e = (p - 1) / 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            pow = pow * base % p;
                        }
                        base = base * base % p;
                        e >>= 1;
                    }
                    if pow == p - 1 {
                        -1
                    } else {
                        i32::try_from(pow).unwrap()
                    }
                };
                assert_eq!(kronecker_symbol(a, p), euler, "a={a}, p={p}");
            }
        }
    }

    #[test]
    fn square_part_examples() {
        assert_eq!(square_part(36), 6);
        assert_eq!(square_part(12), 2);
        assert_eq!(square_part(1), 1);
        for n in [2, 3, 5, 6, 7, 10, 11, 13, 30, 105] {
            assert_eq!(square_part(n), 1, "square-free n={n}");
        }
        assert_eq!(square_part(48), 4);
        assert_eq!(square_part(200), 10);
    }

    #[test]
    fn class_number_h1_frozen_table() {
        // (|Δ|, 12·H₁(−|Δ|)) — values verified against the reduced-form
        // enumeration worked out by hand.
        let table: [(i64, i64); 25] = [
            (0, -1),
            (3, 4),
            (4, 6),
            (8, 12),
            (12, 16),
            (16, 18),
            (20, 24),
            (24, 24),
            (28, 24),
            (32, 36),
            (36, 30),
            (40, 24),
            (44, 48),
            (48, 40),
            (52, 24),
            (56, 48),
            (60, 48),
            (64, 42),
            (72, 36),
            (96, 72),
            (100, 30),
            (112, 48),
            (120, 48),
            (144, 90),
            (200, 84),
        ];
        for (abs_delta, twelve_h) in table {
            let h = class_number_h1(-abs_delta);
            assert_eq!(
                h.value() * rat(12),
                rat(twelve_h),
                "H₁(−{abs_delta}) mismatch"
            );
        }
    }

    #[test]
    fn class_number_h1_vanishes_off_support() {
        for delta in 1..=50 {
            assert!(class_number_h1(delta).value().is_zero());
        }
        for delta in [-1, -2, -5, -6, -9, -10, -13, -14, -21, -22] {
            assert!(
                class_number_h1(delta).value().is_zero(),
                "Δ={delta} ≡ 2,3 mod 4 must give 0"
            );
        }
    }

    #[test]
    fn class_number_hn_examples() {
        for n in 1..=50 {
            assert_eq!(class_number_hn(n, 0).value(), &ratq(-n, 12), "H_n(0)");
        }
        assert!(class_number_hn(4, -4).value().is_zero(), "H₄(−4) = 0");
        // H₁₁(−44): gcd = 11 = a²b with a=1, b=11; 121 | −44 fails → 0.
        assert!(class_number_hn(11, -44).value().is_zero());
        // H₁₃(−4): gcd(13,−4)=1 → (−4|13)·H₁(−4) = +1/2.
        assert_eq!(class_number_hn(13, -4).value(), &ratq(1, 2));
        // H₁₁(−4): (−4|11) = −1 → −1/2.
        assert_eq!(class_number_hn(11, -4).value(), &ratq(-1, 2));
    }

    proptest! {
        #[test]
        fn twelve_hn_is_integral(n in 1i64..=60, delta in -240i64..=10) {
            let v = class_number_hn(n, delta);
            prop_assert!((v.value() * rat(12)).is_integer());
        }

        #[test]
        fn square_part_is_maximal(n in 1i64..=10_000) {
            let q = square_part(n);
            prop_assert_eq!(n % (q * q), 0);
            prop_assert_eq!(square_part(n / (q * q)), 1);
        }

        #[test]
        fn kronecker_is_multiplicative_in_the_denominator(
            a in -40i64..=40, b in 1i64..=60, c in 1i64..=60
        ) {
            prop_assert_eq!(
                kronecker_symbol(a, b * c),
                kronecker_symbol(a, b) * kronecker_symbol(a, c)
            );
        }

        #[test]
        fn qr_solvable_never_contradicts_legendre(a in -50i64..=50) {
            // For odd primes p not dividing a, solvability is equivalent to
            // the Legendre symbol being +1.
            for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
                if a % p == 0 {
                    continue;
                }
                prop_assert_eq!(
                    qr_solvable(a, p),
                    kronecker_symbol(a, p) == 1,
                    "a={}, p={}", a, p
                );
            }
        }

        #[test]
        fn divisors_multiply_to_n(n in 1i64..=500) {
            for d in divisors(n) {
                prop_assert_eq!(n % d, 0);
            }
            let uds = unitary_divisors(n);
            for &d in &uds {
                prop_assert_eq!(gcd(d, n / d), 1);
            }
        }

        #[test]
        fn moebius_mu_matches_squarefree(n in 1i64..=500) {
            if !is_squarefree(n) {
                prop_assert_eq!(moebius_mu(n), 0);
            } else {
                prop_assert_eq!(moebius_mu(n).abs(), 1);
            }
        }
    }
}
