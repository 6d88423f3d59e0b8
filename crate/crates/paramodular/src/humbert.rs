//! Humbert surfaces and the ramification classification: component counts,
//! the surface equation attached to a dual lattice vector, the closed-form
//! ramification discriminants per coset, a brute-force reflection survey
//! that re-derives them from lattice geometry, explicit involution
//! witnesses, and the distinguished curve-type involution family.

use crate::mat::{rat, ratq, QMat};
use crate::numtheory::{divisors, gcd, is_squarefree, qr_solvable, unitary_divisors, xi_element, xi_group};
use crate::orthogonal::{
    disc_action, involution_classify, reflection, InvolutionType, LatticeVector,
};
use crate::symplectic::{gamma_star_contains, SymplecticSimilitude};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::collections::{BTreeMap, BTreeSet};

/// One irreducible Humbert-surface component: the defining dual vector, its
/// discriminant `Δ = 2t·norm(ℓ)`, and the coefficient quintuple
/// `(te, ta, b, c, f)` of the equation
/// `(τ₂² − τ₁τ₃)f + cτ₃ + bτ₂ + (ta)τ₁ + (te) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HumbertComponent {
    pub ell: LatticeVector,
    pub discriminant: i64,
    pub equation: (i64, i64, i64, i64, i64),
}

/// Number of irreducible components of the discriminant-`Δ` Humbert
/// surface: `#{b mod 2t : b² ≡ Δ mod 4t}` by direct enumeration.
pub fn component_count(t: i64, delta: i64) -> i64 {
    assert!(t >= 1, "component_count: t must be positive");
    assert!(delta >= 1, "component_count: discriminant must be positive");
    let mut count = 0;
    for b in 0..2 * t {
        if (b as i128 * b as i128 - delta as i128).rem_euclid(4 * t as i128) == 0 {
            count += 1;
        }
    }
    count
}

/// Reads the surface equation off a primitive positive-norm vector of the
/// dual lattice, `ℓ = ᵗ(e, a, −b/2t, c, f)` with `e, a, b, c, f` integral.
pub fn humbert_equation(ell: &LatticeVector) -> Result<HumbertComponent> {
    let t = ell.t();
    let coords = ell.coords();
    let b_rat = -rat(2 * t) * &coords[2];
    let mut parts: Vec<BigRational> = vec![
        coords[0].clone(),
        coords[1].clone(),
        b_rat,
        coords[3].clone(),
        coords[4].clone(),
    ];
    if parts.iter().any(|p| !p.is_integer()) {
        return Err(Error::InvalidArgument(
            "vector is not in the dual lattice (entries e, a, −b/2t, c, f)".into(),
        ));
    }
    let ints: Vec<i64> = parts
        .drain(..)
        .map(|p| p.to_integer().to_i64().expect("coordinate fits in i64"))
        .collect();
    let (e, a, b, c, f) = (ints[0], ints[1], ints[2], ints[3], ints[4]);
    if gcd(gcd(gcd(gcd(e, a), b), c), f) != 1 {
        return Err(Error::InvalidArgument(
            "vector is not primitive in the dual lattice".into(),
        ));
    }
    let norm = ell.norm();
    if !norm.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "Humbert components need positive norm, got {norm}"
        )));
    }
    let delta = b * b - 4 * f * (t * e) - 4 * c * (t * a);
    assert_eq!(
        rat(delta),
        rat(2 * t) * &norm,
        "discriminant must equal 2t·norm"
    );
    assert!(
        delta.rem_euclid(4) == 0 || delta.rem_euclid(4) == 1,
        "discriminants are ≡ 0 or 1 mod 4"
    );
    Ok(HumbertComponent {
        ell: ell.clone(),
        discriminant: delta,
        equation: (t * e, t * a, b, c, f),
    })
}

/// Per-coset slice of a ramification report: the discriminants of the
/// Humbert surfaces attached to the coset of `V_d`, with (for surveys) one
/// witness vector and a survivor count per discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationEntry {
    pub d: i64,
    pub discriminants: BTreeSet<i64>,
    pub witnesses: BTreeMap<i64, LatticeVector>,
    pub counts: BTreeMap<i64, usize>,
}

impl RamificationEntry {
    fn empty(d: i64) -> Self {
        RamificationEntry {
            d,
            discriminants: BTreeSet::new(),
            witnesses: BTreeMap::new(),
            counts: BTreeMap::new(),
        }
    }
}

/// Ramification data for one index `t`, entry per coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub t: i64,
    pub entries: Vec<RamificationEntry>,
}

impl RamificationReport {
    pub fn entry_for(&self, d: i64) -> Option<&RamificationEntry> {
        self.entries.iter().find(|e| e.d == d)
    }

    /// The discriminant set of the coset `V_d` (empty when absent).
    pub fn discriminants_for(&self, d: i64) -> BTreeSet<i64> {
        self.entry_for(d)
            .map(|e| e.discriminants.clone())
            .unwrap_or_default()
    }

    /// Same index and the same discriminant set on every coset (entries
    /// missing on one side count as empty).
    pub fn agrees_with(&self, other: &RamificationReport) -> bool {
        if self.t != other.t {
            return false;
        }
        let mut ds: BTreeSet<i64> = self.entries.iter().map(|e| e.d).collect();
        ds.extend(other.entries.iter().map(|e| e.d));
        ds.iter()
            .all(|&d| self.discriminants_for(d) == other.discriminants_for(d))
    }
}

/// Closed-form ramification discriminants of the coset `V_d` for
/// square-free `t`: `{4d, d}` when `d` is a square mod `4t_d`, `{4d}` when
/// it is a square mod `t_d` only, and nothing otherwise.
pub fn ramification_divisor(t: i64, d: i64) -> Result<BTreeSet<i64>> {
    if t < 1 || !is_squarefree(t) {
        return Err(Error::InvalidArgument(format!(
            "the closed-form classification requires square-free t, got {t}"
        )));
    }
    if d < 1 || t % d != 0 {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    let mut out = BTreeSet::new();
    if qr_solvable(d, 4 * td) {
        out.insert(4 * d);
        out.insert(d);
    } else if qr_solvable(d, td) {
        out.insert(4 * d);
    }
    Ok(out)
}

/// The full closed-form report over the cosets with `d > 1`, i.e. the
/// branch data away from the inner subgroup. Verifies that the orbit
/// invariants (dual norm, discriminant) of all emitted surfaces are
/// pairwise distinct.
pub fn ramification_total(t: i64) -> Result<RamificationReport> {
    if t < 1 || !is_squarefree(t) {
        return Err(Error::InvalidArgument(format!(
            "the closed-form classification requires square-free t, got {t}"
        )));
    }
    let mut entries = Vec::new();
    let mut invariants: Vec<(BigRational, i64)> = Vec::new();
    for d in divisors(t) {
        if d == 1 {
            continue;
        }
        let td = t / d;
        let mut entry = RamificationEntry::empty(d);
        if qr_solvable(d, td) {
            entry.discriminants.insert(4 * d);
            invariants.push((ratq(2, td), 4 * d));
        }
        if d % 2 == 1 && qr_solvable(d, 4 * td) {
            entry.discriminants.insert(d);
            invariants.push((ratq(1, 2 * td), d));
        }
        debug_assert_eq!(entry.discriminants, ramification_divisor(t, d)?);
        entries.push(entry);
    }
    for i in 0..invariants.len() {
        for j in i + 1..invariants.len() {
            assert_ne!(
                invariants[i].0, invariants[j].0,
                "dual norms of distinct reflection orbits must differ"
            );
            assert_ne!(
                invariants[i].1, invariants[j].1,
                "emitted discriminants must be pairwise distinct"
            );
        }
    }
    Ok(RamificationReport { t, entries })
}

fn div_floor_i64(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_floor(&a, &b)
}

fn div_ceil_i64(a: i64, b: i64) -> i64 {
    -num_integer::Integer::div_floor(&-a, &b)
}

/// Brute-force oracle: enumerates primitive `ℓ = (0, a, b, c, 0)` with
/// `|a|, |b|, |c| ≤ bound` whose reflection is integral (`ℓ² | 2·div(ℓ)`),
/// locates the coset of `−σ_ℓ` through its discriminant action
/// `ξ(ℓ) = (4t/ℓ²)·b² − 1`, and aggregates the Humbert discriminants
/// `2t·ℓ²/div(ℓ)²` per coset. Sign-opposite vectors (same reflection) are
/// counted once.
pub fn reflection_survey(t: i64, bound: i64) -> Result<RamificationReport> {
    assert!(t >= 1, "reflection_survey: t must be positive");
    assert!(bound >= 1, "reflection_survey: bound must be positive");
    let xi_to_d: BTreeMap<i64, i64> = xi_group(t).into_iter().map(|x| (x.value, x.d)).collect();
    let mut entries: BTreeMap<i64, RamificationEntry> = unitary_divisors(t)
        .into_iter()
        .map(|d| (d, RamificationEntry::empty(d)))
        .collect();
    // Survivors satisfy ℓ² | 4t, so 2tb² ≤ 4t + 2ac ≤ 4t + 2·bound² caps b.
    let bmax = {
        use num_integer::Roots;
        bound.min(((2 * t + bound * bound) / t).sqrt() + 1)
    };
    for a in -bound..=bound {
        for b in -bmax..=bmax {
            // 0 < ℓ² = 2tb² − 2ac ≤ 4t pins ac into [tb² − 2t, tb² − 1].
            let (clo, chi) = if a == 0 {
                (-bound, bound)
            } else {
                let lo = t * b * b - 2 * t;
                let hi = t * b * b - 1;
                let (x, y) = if a > 0 {
                    (div_ceil_i64(lo, a), div_floor_i64(hi, a))
                } else {
                    (div_ceil_i64(hi, a), div_floor_i64(lo, a))
                };
                (x.max(-bound), y.min(bound))
            };
            for c in clo..=chi {
                // One vector per reflection: first nonzero coordinate > 0.
                let lead = [a, b, c].into_iter().find(|&x| x != 0);
                match lead {
                    None => continue,
                    Some(x) if x < 0 => continue,
                    Some(_) => {}
                }
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                let norm = 2 * t * b * b - 2 * a * c;
                if norm <= 0 || norm > 4 * t || 4 * t % norm != 0 {
                    continue;
                }
                let div = gcd(gcd(a, c), 2 * t * b).abs();
                if (2 * div) % norm != 0 {
                    continue;
                }
                let lv = LatticeVector::from_i64(t, &[0, a, b, c, 0]);
                debug_assert_eq!(lv.norm(), rat(norm));
                debug_assert_eq!(lv.divisor().unwrap(), div);
                let xi = ((4 * t / norm) * b * b - 1).rem_euclid(2 * t);
                let d = *xi_to_d.get(&xi).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "reflection coset ξ={xi} lies outside the ξ-group of t={t}"
                    ))
                })?;
                let delta = 2 * t * norm / (div * div);
                assert_eq!(2 * t * norm % (div * div), 0, "Δ is integral");
                let sigma = reflection(&lv)?;
                assert!(sigma.is_integral(), "survivors have integral reflections");
                assert_eq!(
                    disc_action(&-&sigma, t)?,
                    xi,
                    "ξ formula must match the discriminant action of −σ"
                );
                let entry = entries.get_mut(&d).expect("coset entry exists");
                entry.discriminants.insert(delta);
                entry.witnesses.entry(delta).or_insert(lv);
                *entry.counts.entry(delta).or_insert(0) += 1;
            }
        }
    }
    Ok(RamificationReport {
        t,
        entries: entries.into_values().collect(),
    })
}

/// Explicit witness for one extra involution over the coset `V_d`: the
/// generating tuple, the primitive reflection vector, and its matrix.
#[derive(Clone, Debug)]
pub struct InvolutionWitness {
    pub d: i64,
    pub discriminant: i64,
    pub tuple: (i64, i64, i64),
    pub vector: LatticeVector,
    pub sigma: QMat,
}

/// Searches the smallest tuple (by max-norm shells, then lexicographic
/// order) solving `equation(a, b, c) = 1` whose scaled vector
/// `(0, s·a, b, s·c, 0)` is primitive with divisor exactly `s`.
fn witness_search(
    t: i64,
    scale: i64,
    eq: impl Fn(i64, i64, i64) -> i64,
) -> Result<((i64, i64, i64), LatticeVector)> {
    let cap = 4 * t * t + 8;
    for r in 0..=cap {
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    if a.abs().max(b.abs()).max(c.abs()) != r || eq(a, b, c) != 1 {
                        continue;
                    }
                    let lv = LatticeVector::from_i64(t, &[0, scale * a, b, scale * c, 0]);
                    if !lv.is_primitive() || lv.divisor()? != scale {
                        continue;
                    }
                    return Ok(((a, b, c), lv));
                }
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no witness tuple with coordinates ≤ {cap} (t={t}, scale={scale})"
    )))
}

/// The one or two extra involutions over the coset `V_d` (square-free `t`,
/// `d` a square mod `t_d`): a discriminant-`4d` witness from
/// `db² − t_d·ac = 1`, plus a discriminant-`d` witness from
/// `db² − 4t_d·ac = 1` exactly when `d` is also a square mod `4t_d`.
pub fn involution_reps(t: i64, d: i64) -> Result<Vec<InvolutionWitness>> {
    if t < 1 || !is_squarefree(t) {
        return Err(Error::InvalidArgument(format!(
            "involution witnesses require square-free t, got {t}"
        )));
    }
    if d < 1 || t % d != 0 {
        return Err(Error::NotUnitaryDivisor { d, t });
    }
    let td = t / d;
    if !qr_solvable(d, td) {
        return Err(Error::InvalidArgument(format!(
            "coset V_{d} carries no extra involutions: {d} is not a square mod {td}"
        )));
    }
    let xi = xi_element(t, d)?.value;
    let mut searches = vec![(td, 4 * d, Box::new(move |a: i64, b: i64, c: i64| d * b * b - td * a * c) as Box<dyn Fn(i64, i64, i64) -> i64>)];
    if qr_solvable(d, 4 * td) {
        searches.push((
            2 * td,
            d,
            Box::new(move |a: i64, b: i64, c: i64| d * b * b - 4 * td * a * c),
        ));
    }
    let mut out = Vec::new();
    for (scale, delta, eq) in searches {
        let (tuple, lv) = witness_search(t, scale, eq)?;
        let norm = lv.norm();
        assert_eq!(norm, rat(2 * td), "witness vectors have norm 2t_d");
        assert_eq!(
            rat(delta),
            rat(2 * t) * norm / rat(scale * scale),
            "witness discriminant"
        );
        let sigma = reflection(&lv)?;
        assert!(sigma.is_integral(), "witness reflections are integral");
        assert_eq!(disc_action(&-&sigma, t)?, xi, "witness lands in the V_{d} coset");
        out.push(InvolutionWitness {
            d,
            discriminant: delta,
            tuple,
            vector: lv,
            sigma,
        });
    }
    Ok(out)
}

/// Analysis record of one member of the distinguished curve-type family.
#[derive(Clone, Debug)]
pub struct BraschReport {
    pub t: i64,
    pub f: i64,
    /// The multiplier-`t` similitude `√t·N`.
    pub matrix: SymplecticSimilitude,
    /// Whether `(√t·N)² = −t·1` (equivalently `N² = −1`).
    pub squares_to_minus_identity: bool,
    /// Coset located in the degree-2 extension, expected `Some(t)`.
    pub coset: Option<i64>,
    /// Eigenvalue type of the induced orthogonal involution.
    pub involution: InvolutionType,
}

/// Builds the order-4 element whose square is the center, for `t ≡ 1 mod 4`
/// and a free parameter `f ≥ 1`, and classifies the involution it induces
/// on the rank-5 form (rotation type: the fixed locus is a curve, not a
/// divisor).
pub fn brasch_matrix(t: i64, f: i64) -> Result<BraschReport> {
    if t.rem_euclid(4) != 1 {
        return Err(Error::InvalidArgument(format!(
            "the curve-type family needs t ≡ 1 mod 4, got {t}"
        )));
    }
    if f < 1 {
        return Err(Error::InvalidArgument(format!("parameter f must be ≥ 1, got {f}")));
    }
    let c = -f * f * t - 1;
    let m = QMat::from_i64(&[
        &[-f * t, 1, 0, f * t],
        &[c * t, 0, f * t, f * f * t * t],
        &[c * t, 0, f * t, -c * t],
        &[0, 1, -1, 0],
    ]);
    let sim = SymplecticSimilitude::new(m.clone(), rat(t));
    if !sim.is_symplectic_similitude() {
        return Err(Error::NotSimilitude(format!(
            "the curve-family matrix at (t, f) = ({t}, {f}) is not a multiplier-{t} similitude"
        )));
    }
    let squares = &m * &m == QMat::identity(4).scale(&rat(-t));
    let coset = gamma_star_contains(&sim, t);
    let psi = crate::orthogonal::psi_map(&sim, t)?;
    let involution = involution_classify(&psi, t)?;
    Ok(BraschReport {
        t,
        f,
        matrix: sim,
        squares_to_minus_identity: squares,
        coset,
        involution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn component_count_examples() {
        assert_eq!(component_count(1, 1), 1);
        assert_eq!(component_count(3, 12), 1);
        assert_eq!(component_count(5, 5), 1);
        // Counts match a direct enumeration of square roots.
        for t in 1..=8i64 {
            for delta in 1..=4 * t {
                let brute = (0..2 * t)
                    .filter(|&b| (b * b - delta).rem_euclid(4 * t) == 0)
                    .count() as i64;
                assert_eq!(component_count(t, delta), brute);
            }
        }
    }

    #[test]
    fn equation_of_a_reduced_vector() {
        let t = 3;
        let (a, b, c) = (1, 2, -1);
        let ell = LatticeVector::new(
            t,
            vec![rat(0), rat(a), ratq(-b, 2 * t), rat(c), rat(0)],
        );
        let comp = humbert_equation(&ell).unwrap();
        assert_eq!(comp.equation, (0, t * a, b, c, 0));
        assert_eq!(comp.discriminant, b * b - 4 * t * a * c);
        assert_eq!(comp.discriminant, 16);
    }

    #[test]
    fn equation_of_a_full_quintuple() {
        let t = 5;
        // ℓ = ᵗ(−1, 0, −1/2t, 0, 1): Δ = 1 + 4t.
        let ell = LatticeVector::new(
            t,
            vec![rat(-1), rat(0), ratq(-1, 2 * t), rat(0), rat(1)],
        );
        let comp = humbert_equation(&ell).unwrap();
        assert_eq!(comp.discriminant, 4 * t + 1);
        assert_eq!(comp.equation, (-t, 0, 1, 0, 1));
        assert_eq!(rat(comp.discriminant), rat(2 * t) * ell.norm());
    }

    #[test]
    fn equation_rejections() {
        let t = 4;
        // Nonpositive norm.
        let isotropic = LatticeVector::from_i64(t, &[1, 0, 0, 0, 0]);
        assert!(humbert_equation(&isotropic).is_err());
        let negative = LatticeVector::from_i64(t, &[1, 0, 0, 0, 1]);
        assert!(humbert_equation(&negative).is_err());
        // Not in the dual lattice: middle denominator must divide 2t.
        let outside = LatticeVector::new(
            t,
            vec![rat(0), rat(1), ratq(1, 3 * t), rat(1), rat(0)],
        );
        assert!(humbert_equation(&outside).is_err());
        // Non-primitive multiples are rejected.
        let doubled = LatticeVector::from_i64(t, &[0, 2, 0, -2, 0]);
        assert!(humbert_equation(&doubled).is_err());
    }

    #[test]
    fn closed_form_examples() {
        // d = t: both surfaces iff t ≡ 1 mod 4.
        for t in [5i64, 13, 17, 29] {
            let ds = ramification_divisor(t, t).unwrap();
            assert_eq!(ds, BTreeSet::from([4 * t, t]), "t={t}");
        }
        for t in [2i64, 3, 6, 7, 11] {
            let ds = ramification_divisor(t, t).unwrap();
            assert_eq!(ds, BTreeSet::from([4 * t]), "t={t}");
        }
        // d = 1 always yields both (the inner reflections).
        for t in [1i64, 2, 5, 6, 30] {
            assert_eq!(ramification_divisor(t, 1).unwrap(), BTreeSet::from([4, 1]));
        }
        assert_eq!(ramification_divisor(6, 2).unwrap(), BTreeSet::new());
        assert_eq!(ramification_divisor(6, 3).unwrap(), BTreeSet::from([12]));
        assert!(ramification_divisor(4, 1).is_err(), "square-free only");
        assert!(ramification_divisor(6, 4).is_err(), "divisors only");
    }

    #[test]
    fn total_report_shape() {
        let report = ramification_total(15).unwrap();
        assert_eq!(report.discriminants_for(3), BTreeSet::new());
        assert_eq!(report.discriminants_for(5), BTreeSet::new());
        assert_eq!(report.discriminants_for(15), BTreeSet::from([60]));
        assert!(report.entry_for(1).is_none(), "inner coset excluded");

        let report5 = ramification_total(5).unwrap();
        assert_eq!(report5.discriminants_for(5), BTreeSet::from([20, 5]));
    }

    #[test]
    fn survey_matches_closed_form_small() {
        for t in [2i64, 3, 5, 6, 7, 10] {
            let survey = reflection_survey(t, 10 * t).unwrap();
            for d in divisors(t) {
                assert_eq!(
                    survey.discriminants_for(d),
                    ramification_divisor(t, d).unwrap(),
                    "t={t}, d={d}"
                );
            }
        }
    }

    #[test]
    fn survey_buckets_for_t6() {
        let survey = reflection_survey(6, 60).unwrap();
        assert_eq!(survey.discriminants_for(1), BTreeSet::from([1, 4]));
        assert_eq!(survey.discriminants_for(2), BTreeSet::new());
        assert_eq!(survey.discriminants_for(3), BTreeSet::from([12]));
        assert_eq!(survey.discriminants_for(6), BTreeSet::from([24]));
    }

    #[test]
    fn survey_witnesses_are_reflective() {
        let t = 10;
        let survey = reflection_survey(t, 10 * t).unwrap();
        let mut seen = 0;
        for entry in &survey.entries {
            let xi = xi_element(t, entry.d).unwrap().value;
            for (delta, lv) in &entry.witnesses {
                let sigma = reflection(lv).unwrap();
                assert!(sigma.is_integral());
                assert_eq!(&sigma * &sigma, QMat::identity(5));
                assert_eq!(disc_action(&-&sigma, t).unwrap(), xi);
                let div = lv.divisor().unwrap();
                let norm = lv.norm();
                assert_eq!(rat(*delta), rat(2 * t) * norm / rat(div * div));
                assert!(component_count(t, *delta) >= 1);
                seen += 1;
            }
        }
        assert!(seen >= 3, "the survey must produce witnesses");
    }

    #[test]
    fn emitted_discriminants_have_components() {
        for t in [2i64, 3, 5, 6, 7, 10] {
            for d in divisors(t) {
                for delta in ramification_divisor(t, d).unwrap() {
                    assert!(component_count(t, delta) >= 1, "t={t}, Δ={delta}");
                }
            }
        }
    }

    #[test]
    fn involution_witnesses_for_t5() {
        let reps = involution_reps(5, 5).unwrap();
        assert_eq!(reps.len(), 2, "t ≡ 1 mod 4 carries both surfaces");
        assert_eq!(reps[0].discriminant, 20);
        assert_eq!(reps[1].discriminant, 5);
        let (a, b, c) = reps[0].tuple;
        assert_eq!(5 * b * b - a * c, 1);
        let (a, b, c) = reps[1].tuple;
        assert_eq!(5 * b * b - 4 * a * c, 1);
    }

    #[test]
    fn involution_witness_counts() {
        // One representative when d is a square mod t_d but not mod 4t_d.
        for t in [2i64, 3, 7, 11] {
            let reps = involution_reps(t, t).unwrap();
            assert_eq!(reps.len(), 1, "t={t}");
            assert_eq!(reps[0].discriminant, 4 * t);
        }
        assert_eq!(involution_reps(6, 3).unwrap().len(), 1);
        assert!(involution_reps(6, 2).is_err(), "no solutions mod 3");
        assert!(involution_reps(12, 3).is_err(), "square-free only");
    }

    #[test]
    fn involution_witnesses_are_valid() {
        for t in [2i64, 3, 5, 6, 10, 13, 15] {
            for d in divisors(t) {
                if !qr_solvable(d, t / d) {
                    continue;
                }
                let reps = involution_reps(t, d).unwrap();
                let deltas: BTreeSet<i64> =
                    reps.iter().map(|w| w.discriminant).collect();
                assert_eq!(
                    deltas,
                    ramification_divisor(t, d).unwrap(),
                    "witness discriminants match the classification (t={t}, d={d})"
                );
                let xi = xi_element(t, d).unwrap().value;
                for w in &reps {
                    assert!(w.vector.is_primitive());
                    assert!(w.sigma.is_integral());
                    assert_eq!(&w.sigma * &w.sigma, QMat::identity(5));
                    assert_eq!(w.sigma.det(), rat(-1));
                    assert_eq!(disc_action(&-&w.sigma, t).unwrap(), xi);
                    assert_eq!(
                        involution_classify(&-&w.sigma, t).unwrap(),
                        InvolutionType::ReflectionType
                    );
                }
            }
        }
    }

    #[test]
    fn curve_family_members() {
        for t in [5i64, 13] {
            for f in 1..=2 {
                let report = brasch_matrix(t, f).unwrap();
                assert!(report.squares_to_minus_identity, "t={t}, f={f}");
                assert_eq!(report.coset, Some(t));
                assert_eq!(report.involution, InvolutionType::Rotation);
            }
        }
        assert!(brasch_matrix(6, 1).is_err());
        assert!(brasch_matrix(7, 1).is_err());
        assert!(brasch_matrix(5, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn discriminants_are_zero_or_one_mod_four(
            t in 1i64..8,
            e in -3i64..4,
            a in -3i64..4,
            b in -6i64..7,
            c in -3i64..4,
            f in -3i64..4,
        ) {
            let ell = LatticeVector::new(
                t,
                vec![rat(e), rat(a), ratq(-b, 2 * t), rat(c), rat(f)],
            );
            if let Ok(comp) = humbert_equation(&ell) {
                prop_assert!(comp.discriminant > 0);
                prop_assert!(comp.discriminant % 4 == 0 || comp.discriminant % 4 == 1);
                prop_assert_eq!(rat(comp.discriminant), rat(2 * t) * ell.norm());
            }
        }

        #[test]
        fn survey_is_monotone_in_the_bound(t in 1i64..7) {
            let small = reflection_survey(t, 4 * t).unwrap();
            let large = reflection_survey(t, 8 * t).unwrap();
            for entry in &small.entries {
                let bigger = large.discriminants_for(entry.d);
                prop_assert!(entry.discriminants.is_subset(&bigger));
            }
        }
    }
}
