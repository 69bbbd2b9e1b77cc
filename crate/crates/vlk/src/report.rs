//! Serializable invariant reports.
//!
//! These records define the stable JSON shapes emitted by the command-line
//! front end and by the C ABI: every polynomial is rendered either as a
//! sorted term array `(exponents..., coefficient-as-decimal-string)` or as
//! its canonical one-line string form, so consumers never have to parse
//! free-form algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alexander::{
    alexander_matrix, alexander_polynomial, alexander_polynomial_mod_p, ideal_generators, wirtinger,
};
use crate::conway::{z_normalized, z_polynomial, z_prime};
use crate::diagram::DiagramCode;
use crate::laurent::LaurentError;

/// Two-variable invariant record for one diagram.
///
/// Term arrays list `(x-exponent, y-exponent, coefficient)` sorted by
/// exponent pair; `eval_x1` lists `(y-exponent, coefficient)`. Coefficients
/// are decimal strings so arbitrarily large values survive JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ConwayReport {
    pub writhe: i64,
    pub components: usize,
    pub conway: Vec<(i64, i64, String)>,
    pub conway_normalized: Vec<(i64, i64, String)>,
    pub conway_tform: Vec<(i64, i64, String)>,
    pub eval_x1: Vec<(i64, String)>,
    pub vanishes_y_eq_minus_x: bool,
    pub vanishes_y_eq_minus_1: bool,
}

/// Build the two-variable invariant record for a diagram.
pub fn conway_report(code: &DiagramCode) -> ConwayReport {
    let z = z_polynomial(code);
    ConwayReport {
        writhe: code.writhe(),
        components: code.components().count(),
        conway: z.to_term_array(),
        conway_normalized: z_normalized(&z).to_term_array(),
        conway_tform: z_prime(code).to_term_array(),
        eval_x1: z.eval_x_1().to_term_array(),
        vanishes_y_eq_minus_x: z.eval_y_minus_x().is_zero(),
        vanishes_y_eq_minus_1: z.eval_y_minus_1().is_zero(),
    }
}

/// One-variable (arc-presentation) invariant record for one diagram.
///
/// `relators` lists each relator word as `(generator index, ±1)` letters;
/// `matrix`, `ideal`, `alexander`, and the modular refinements use the
/// canonical string form of one-variable Laurent polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct AlexanderReport {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i8)>>,
    pub matrix: Vec<Vec<String>>,
    pub ideal: Vec<String>,
    pub alexander: String,
    pub alex_mod_p: BTreeMap<String, String>,
}

/// Build the one-variable invariant record, refining the gcd modulo each of
/// the given primes. Fails only if a modulus is not a prime in range.
pub fn alexander_report(
    code: &DiagramCode,
    primes: &[u64],
) -> Result<AlexanderReport, LaurentError> {
    let pres = wirtinger(code);
    let m = alexander_matrix(code);
    let ideal = ideal_generators(code);
    let mut alex_mod_p = BTreeMap::new();
    for &p in primes {
        let g = alexander_polynomial_mod_p(code, p)?;
        alex_mod_p.insert(p.to_string(), g.to_canonical_with("t"));
    }
    Ok(AlexanderReport {
        generators: pres.generators.iter().map(|g| g.to_string()).collect(),
        relators: pres.relators,
        matrix: m
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_canonical_with("t")).collect())
            .collect(),
        ideal: ideal.iter().map(|g| g.to_canonical_with("t")).collect(),
        alexander: alexander_polynomial(code).to_canonical_with("t"),
        alex_mod_p,
    })
}
