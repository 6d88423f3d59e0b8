//! Builders for the plain data commands: each maps library output onto a
//! [`RunReport`] table with a fixed, deterministic row order.

use paramodular::humbert::{
    component_count, humbert_equation, involution_reps, ramification_divisor, ramification_total,
    reflection_survey,
};
use paramodular::jacobi::{dimension_table, trace_wd_full, trivial_eigenspace_scan};
use paramodular::mat::{rat, ratq};
use paramodular::numtheory::{unitary_divisors, xi_element, xi_group};
use paramodular::orthogonal::LatticeVector;
use paramodular::{Error, Result};

use crate::report::{Cell, Payload, RamificationRow, RunReport, Verdict};

/// `xi <t>`: the order of the residue group and the table of `ξ_d`.
pub fn xi_report(t: i64) -> Result<RunReport> {
    xi_element(t, 1)?;
    let order = xi_group(t).len();
    let mut ds = unitary_divisors(t);
    ds.sort_unstable();
    let rows = ds
        .into_iter()
        .map(|d| Ok(vec![Cell::Int(d), Cell::Int(xi_element(t, d)?.value)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(RunReport::table(
        "xi",
        vec![("t", Cell::Int(t)), ("order", Cell::UInt(order as u64))],
        vec!["d", "xi"],
        rows,
        Vec::new(),
    ))
}

/// `dims <t>`: traces of the divisor involutions, then the eigenspace
/// dimension of every character.
pub fn dims_report(t: i64) -> Result<RunReport> {
    let mut ds = unitary_divisors(t);
    ds.sort_unstable();
    let mut rows = Vec::new();
    for d in ds {
        rows.push(vec![
            Cell::str("trace"),
            Cell::Int(d),
            Cell::Null,
            Cell::Int(trace_wd_full(t, d)?),
        ]);
    }
    for (eps, dim) in dimension_table(t)? {
        rows.push(vec![Cell::str("dimension"), Cell::Null, Cell::str(eps.pattern()), Cell::Int(dim)]);
    }
    Ok(RunReport::table(
        "dims",
        vec![("t", Cell::Int(t))],
        vec!["kind", "d", "pattern", "value"],
        rows,
        Vec::new(),
    ))
}

/// `scan-trivial --max-t <T>`: indices with zero-dimensional full spaces
/// and the sign characters whose eigenspace vanishes for a finer reason.
pub fn scan_report(max_t: i64) -> Result<RunReport> {
    let report = trivial_eigenspace_scan(max_t)?;
    let mut rows = Vec::new();
    for &t in &report.zero_dimension_t {
        rows.push(vec![Cell::str("zero-dimension"), Cell::Int(t), Cell::Null]);
    }
    for pair in &report.vanishing_pairs {
        rows.push(vec![
            Cell::str("vanishing-pair"),
            Cell::Int(pair.t),
            Cell::str(pair.character.pattern()),
        ]);
    }
    Ok(RunReport::table(
        "scan-trivial",
        vec![
            ("max_t", Cell::Int(max_t)),
            ("zero_count", Cell::UInt(report.zero_dimension_t.len() as u64)),
            ("pair_count", Cell::UInt(report.vanishing_pairs.len() as u64)),
        ],
        vec!["kind", "t", "character"],
        rows,
        Vec::new(),
    ))
}

/// `humbert <t> --delta <Δ>`: the component count and one representative
/// equation per component, enumerated by the residue `b` ascending.
pub fn humbert_report(t: i64, delta: i64) -> Result<RunReport> {
    if t < 1 {
        return Err(Error::InvalidArgument(format!("index t must be positive, got {t}")));
    }
    if delta < 1 {
        return Err(Error::InvalidArgument(format!(
            "the surface discriminant must be positive, got {delta}"
        )));
    }
    let components = component_count(t, delta);
    let mut rows = Vec::new();
    for b in 0..2 * t {
        if (i128::from(b) * i128::from(b) - i128::from(delta)).rem_euclid(i128::from(4 * t)) != 0 {
            continue;
        }
        let a = (b * b - delta) / (4 * t);
        let ell = LatticeVector::new(t, vec![rat(0), rat(a), ratq(-b, 2 * t), rat(1), rat(0)]);
        let component = humbert_equation(&ell)?;
        let (te, ta, eq_b, c, f) = component.equation;
        rows.push(vec![
            Cell::Int(b),
            Cell::Int(te),
            Cell::Int(ta),
            Cell::Int(c),
            Cell::Int(f),
            Cell::Int(component.discriminant),
            Cell::str(equation_string(te, ta, eq_b, c, f)),
        ]);
    }
    debug_assert_eq!(rows.len() as i64, components, "one representative per component");
    Ok(RunReport::table(
        "humbert",
        vec![
            ("t", Cell::Int(t)),
            ("delta", Cell::Int(delta)),
            ("components", Cell::Int(components)),
        ],
        vec!["b", "te", "ta", "c", "f", "discriminant", "equation"],
        rows,
        Vec::new(),
    ))
}

/// Renders `f·(τ₂²−τ₁τ₃) + c·τ₃ + b·τ₂ + (ta)·τ₁ + (te) = 0` with zero
/// terms dropped and unit coefficients elided.
fn equation_string(te: i64, ta: i64, b: i64, c: i64, f: i64) -> String {
    let terms: [(i64, Option<&str>); 5] = [
        (f, Some("(tau2^2 - tau1*tau3)")),
        (c, Some("tau3")),
        (b, Some("tau2")),
        (ta, Some("tau1")),
        (te, None),
    ];
    let mut out = String::new();
    for (coeff, var) in terms {
        if coeff == 0 {
            continue;
        }
        if out.is_empty() {
            if coeff < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if coeff < 0 { " - " } else { " + " });
        }
        let magnitude = coeff.unsigned_abs();
        match var {
            Some(v) if magnitude == 1 => out.push_str(v),
            Some(v) => out.push_str(&format!("{magnitude}*{v}")),
            None => out.push_str(&magnitude.to_string()),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

/// `ramification <t> [--d <d>] [--oracle]`: the closed-form discriminants
/// per coset with explicit reflection witnesses, optionally cross-checked
/// against the brute-force survey.
pub fn ramification_report(
    t: i64,
    d_filter: Option<i64>,
    oracle: bool,
    bound_override: Option<i64>,
) -> Result<RunReport> {
    let ds: Vec<i64> = match d_filter {
        Some(d) => {
            ramification_divisor(t, d)?;
            vec![d]
        }
        None => ramification_total(t)?.entries.iter().map(|e| e.d).collect(),
    };
    let mut entries = Vec::new();
    for &d in &ds {
        let discriminants: Vec<i64> = ramification_divisor(t, d)?.into_iter().collect();
        let mut witnesses = Vec::new();
        if !discriminants.is_empty() {
            for w in involution_reps(t, d)? {
                witnesses.push((w.discriminant, w.vector.coords().to_vec()));
            }
            witnesses.sort_by_key(|(delta, _)| *delta);
        }
        entries.push(RamificationRow { d, discriminants, witnesses });
    }

    let bound = bound_override.unwrap_or(10 * t);
    let mut verdicts = Vec::new();
    let mut oracle_consistent = None;
    if oracle {
        let survey = reflection_survey(t, bound)?;
        let compared: Vec<i64> = match d_filter {
            Some(d) => vec![d],
            None => {
                let mut all = unitary_divisors(t);
                all.sort_unstable();
                all
            }
        };
        let mut witness = None;
        for &d in &compared {
            let formula = ramification_divisor(t, d)?;
            let surveyed = survey.discriminants_for(d);
            if formula != surveyed {
                witness = Some(format!(
                    "coset d = {d}: closed form {formula:?}, survey at bound {bound} {surveyed:?}"
                ));
                break;
            }
        }
        let verdict = Verdict::new("oracle-agreement", compared.len() as u64, witness);
        oracle_consistent = Some(verdict.pass);
        verdicts.push(verdict);
    }

    Ok(RunReport {
        command: "ramification",
        parameters: vec![
            ("t", Cell::Int(t)),
            ("d", d_filter.map_or(Cell::Null, Cell::Int)),
            ("oracle", Cell::Bool(oracle)),
            ("bound", if oracle { Cell::Int(bound) } else { Cell::Null }),
        ],
        payload: Payload::Ramification { t, entries, oracle_consistent },
        verdicts,
    })
}
