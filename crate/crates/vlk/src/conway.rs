//! Two-variable determinant polynomial of a diagram code.
//!
//! Each classical crossing contributes a 2x2 block over the Laurent ring
//! Z[x^±1, y^±1], indexed by the crossing's two *local strand slots* (called
//! `L` and `R` below). The diagram's wiring contributes a permutation matrix
//! `P` connecting out-slots to in-slots, and the polynomial is
//!
//! ```text
//! Z(code) = (-1)^writhe * det(M - P)
//! ```
//!
//! where `M` is the block-diagonal matrix of local blocks. `Z` is invariant
//! under all oriented Reidemeister moves except the first, which multiplies
//! it by a unit monomial; [`z_normalized`] quotients that unit away and is a
//! genuine invariant of the virtual link. A one-variable specialization
//! obtained by `x = t^2` and a writhe correction ([`z_prime`]) satisfies a
//! Conway-style skein relation, checked exactly by [`skein_residual`].

use crate::diagram::{CodeError, DiagramCode, PassRole, Sign};
use crate::laurent::{LPoly1, LPoly2, RingMatrix};

/// The two local strand slots at a crossing, in matrix order `L` then `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    L,
    R,
}

impl Slot {
    fn index(self) -> usize {
        match self {
            Slot::L => 0,
            Slot::R => 1,
        }
    }
}

/// Which local slot a strand *enters* on: at a positive crossing the over
/// strand comes in on `L` and the under strand on `R`; a negative crossing
/// swaps them. A strand always exits on the opposite slot from the one it
/// entered.
pub fn in_slot(sign: Sign, role: PassRole) -> Slot {
    match (sign, role) {
        (Sign::Pos, PassRole::Over) | (Sign::Neg, PassRole::Under) => Slot::L,
        (Sign::Pos, PassRole::Under) | (Sign::Neg, PassRole::Over) => Slot::R,
    }
}

pub fn out_slot(sign: Sign, role: PassRole) -> Slot {
    match in_slot(sign, role) {
        Slot::L => Slot::R,
        Slot::R => Slot::L,
    }
}

/// Local 2x2 block of a crossing, rows and columns ordered `L`, `R`:
///
/// ```text
/// positive: [ 1-x   -y  ]      negative: [ 0       -x^-1 y ]
///           [ -x/y   0  ]                [ -y^-1   1-x^-1  ]
/// ```
pub fn local_block(sign: Sign) -> [[LPoly2; 2]; 2] {
    let m = |ex: i64, ey: i64, c: i64| LPoly2::monomial(ex, ey, c);
    match sign {
        Sign::Pos => [
            [&LPoly2::one() - &m(1, 0, 1), m(0, 1, -1)],
            [m(1, -1, -1), LPoly2::zero()],
        ],
        Sign::Neg => [
            [LPoly2::zero(), m(-1, 1, -1)],
            [m(0, -1, -1), &LPoly2::one() - &m(-1, 0, 1)],
        ],
    }
}

/// Assembles `M - P` for the code: a `2n x 2n` matrix whose row `2i + s` is
/// out-slot `s` of crossing `i` and whose column `2j + s'` is in-slot `s'`
/// of crossing `j`.
pub fn conway_matrix(code: &DiagramCode) -> RingMatrix {
    let n = code.n_crossings();
    let mut m = RingMatrix::zero(2 * n);
    for (i, c) in code.crossings().iter().enumerate() {
        let block = local_block(c.sign);
        #[allow(clippy::needless_range_loop)] // r,s index both block and matrix offsets
        for r in 0..2 {
            for s in 0..2 {
                m.set(2 * i + r, 2 * i + s, block[r][s].clone());
            }
        }
    }
    let heads = code.edge_heads();
    for (i, c) in code.crossings().iter().enumerate() {
        for role in [PassRole::Over, PassRole::Under] {
            let edge = c.pass_out(role);
            let head = heads[edge];
            let row = 2 * i + out_slot(c.sign, role).index();
            let head_sign = code.crossings()[head.crossing].sign;
            let col = 2 * head.crossing + in_slot(head_sign, head.role).index();
            let entry = m.at(row, col) - &LPoly2::one();
            m.set(row, col, entry);
        }
    }
    m
}

/// The polynomial `(-1)^w det(M - P)`. Any code with no classical crossing,
/// or with at least one free loop, is split and gets 0.
pub fn z_polynomial(code: &DiagramCode) -> LPoly2 {
    if code.n_crossings() == 0 || !code.free_loops().is_empty() {
        return LPoly2::zero();
    }
    let det = conway_matrix(code).determinant();
    if code.writhe().rem_euclid(2) == 1 {
        -&det
    } else {
        det
    }
}

/// Clears the unit-monomial ambiguity left by first Reidemeister moves:
/// divides by `x^N` where `N` is the smallest `x`-exponent present, so the
/// result has `x`-valuation 0. Zero stays zero.
pub fn z_normalized(z: &LPoly2) -> LPoly2 {
    match z.lowest_x_exponent() {
        Some(n) => z.mul_unit_monomial(-n, 0),
        None => LPoly2::zero(),
    }
}

/// One-variable-style specialization `t^{-w} Z(t^2, y)`, returned as a
/// two-variable polynomial read in the variables `(t, y)`.
pub fn z_prime(code: &DiagramCode) -> LPoly2 {
    let z = z_polynomial(code).substitute_x_t2();
    z.mul_unit_monomial(-code.writhe(), 0)
}

/// The three codes differing only at crossing `i`: with a positive crossing,
/// with a negative one, and with the crossing smoothed along orientation.
#[derive(Debug, Clone)]
pub struct SkeinTriple {
    pub positive: DiagramCode,
    pub negative: DiagramCode,
    pub smoothed: DiagramCode,
}

pub fn skein_triple(code: &DiagramCode, i: usize) -> Result<SkeinTriple, CodeError> {
    let smoothed = code.smooth_crossing(i)?;
    let switched = code.switch_crossing(i)?;
    let (positive, negative) = match code.crossings()[i].sign {
        Sign::Pos => (code.clone(), switched),
        Sign::Neg => (switched, code.clone()),
    };
    Ok(SkeinTriple {
        positive,
        negative,
        smoothed,
    })
}

/// Exact defect of the skein relation at crossing `i`:
///
/// ```text
/// Z'(positive) - Z'(negative) - (t - t^-1) Z'(smoothed)
/// ```
///
/// in the variables `(t, y)`. This is identically zero for every code and
/// every crossing; the function exists so tests and the CLI can verify that
/// rather than assume it. (The bracket's sign is pinned by the worked
/// two-crossing example: with `Z'` of the one-crossing smoothing equal to
/// `t + t^-1 y + t y^-1 + t^-1` and the switched diagram's polynomial
/// vanishing, only `t - t^-1` balances the identity.)
pub fn skein_residual(code: &DiagramCode, i: usize) -> Result<LPoly2, CodeError> {
    let triple = skein_triple(code, i)?;
    let zp = z_prime(&triple.positive);
    let zm = z_prime(&triple.negative);
    let z0 = z_prime(&triple.smoothed);
    let bracket = &LPoly2::monomial(1, 0, 1) - &LPoly2::monomial(-1, 0, 1);
    Ok(&(&zp - &zm) - &(&bracket * &z0))
}

/// `Z` evaluated at `x = 1`, as a polynomial in `y`. Unchanged by switching
/// any subset of crossings, so it only sees the underlying flat diagram.
pub fn switch_profile(code: &DiagramCode) -> LPoly1 {
    z_polynomial(code).eval_x_1()
}

/// `Z` with `y := -x` (a polynomial in `x`); identically zero.
pub fn eval_y_minus_x(z: &LPoly2) -> LPoly1 {
    z.eval_y_minus_x()
}

/// `Z` with `y := -1` (a polynomial in `x`); identically zero.
pub fn eval_y_minus_1(z: &LPoly2) -> LPoly1 {
    z.eval_y_minus_1()
}

/// Per-crossing unit factor contributed by a first Reidemeister move, keyed
/// by the kink's shape: `over_first` means the strand crosses over itself
/// before crossing under (the kink edge runs from the over-out slot to the
/// under-in slot).
pub fn kink_factor(sign: Sign, over_first: bool) -> LPoly2 {
    match (sign, over_first) {
        (Sign::Pos, true) => LPoly2::constant(-1),
        (Sign::Pos, false) => LPoly2::monomial(1, 0, -1),
        (Sign::Neg, true) => LPoly2::constant(-1),
        (Sign::Neg, false) => LPoly2::monomial(-1, 0, -1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_vld;
    use crate::fixtures;

    fn poly(terms: &[(i64, i64, i64)]) -> LPoly2 {
        LPoly2::from_terms(terms.iter().copied())
    }

    #[test]
    fn vt_matrix_is_the_expected_one() {
        let m = conway_matrix(&fixtures::vt());
        let expect = [
            [
                poly(&[(0, 0, 1), (1, 0, -1)]),
                poly(&[(0, 1, -1)]),
                poly(&[]),
                poly(&[(0, 0, -1)]),
            ],
            [
                poly(&[(1, -1, -1)]),
                poly(&[]),
                poly(&[(0, 0, -1)]),
                poly(&[]),
            ],
            [
                poly(&[(0, 0, -1)]),
                poly(&[]),
                poly(&[(0, 0, 1), (1, 0, -1)]),
                poly(&[(0, 1, -1)]),
            ],
            [
                poly(&[]),
                poly(&[(0, 0, -1)]),
                poly(&[(1, -1, -1)]),
                poly(&[]),
            ],
        ];
        #[allow(clippy::needless_range_loop)] // r,c index both m and expect
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m.at(r, c), &expect[r][c], "entry ({r},{c})");
            }
        }
        // Same determinant through the elimination path and the expansion
        // oracle.
        assert_eq!(m.determinant(), m.determinant_oracle());
    }

    #[test]
    fn z_of_vt() {
        let z = z_polynomial(&fixtures::vt());
        let expect = poly(&[
            (2, 0, 1),
            (2, -1, 1),
            (1, 1, 1),
            (1, -1, -1),
            (0, 1, -1),
            (0, 0, -1),
        ]);
        assert_eq!(z, expect);
        assert_eq!(
            z.to_string(),
            "-1 + -1*y + -1*x*y^-1 + 1*x*y + 1*x^2*y^-1 + 1*x^2"
        );
        // Already has x-valuation 0.
        assert_eq!(z_normalized(&z), z);
    }

    #[test]
    fn z_of_vh() {
        let z = z_polynomial(&fixtures::vh());
        assert_eq!(z, poly(&[(1, 0, 1), (0, 1, 1), (1, -1, 1), (0, 0, 1)]));
    }

    #[test]
    fn classical_codes_vanish() {
        for code in [
            fixtures::kink(),
            fixtures::tref(),
            fixtures::hopf(),
            fixtures::r2pair(),
            fixtures::fig8(),
        ] {
            assert!(
                z_polynomial(&code).is_zero(),
                "{}",
                crate::serialize_vld(&code)
            );
        }
    }

    #[test]
    fn disjoint_union_multiplies_z() {
        // A crossing-free circle factor kills the polynomial...
        let circle = parse_vld("O u1\n").unwrap();
        assert!(z_polynomial(&circle).is_zero());
        let vt_plus_circle = fixtures::vt().disjoint_union(&circle);
        assert!(z_polynomial(&vt_plus_circle).is_zero());
        // ...and in general the polynomial of a union is the exact product.
        let zvt = z_polynomial(&fixtures::vt());
        let vt_sq = fixtures::vt().disjoint_union(&fixtures::vt());
        assert_eq!(z_polynomial(&vt_sq), &zvt * &zvt);
        let vt_vh = fixtures::vt().disjoint_union(&fixtures::vh());
        assert_eq!(z_polynomial(&vt_vh), &zvt * &z_polynomial(&fixtures::vh()));
    }

    #[test]
    fn normalization_fixes_x_valuation() {
        for code in fixtures::all() {
            let z = z_polynomial(&code);
            let n = z_normalized(&z);
            if z.is_zero() {
                assert!(n.is_zero());
            } else {
                assert_eq!(n.lowest_x_exponent(), Some(0));
            }
        }
        // Mirroring the virtual trefoil moves all x-exponents negative.
        let zm = z_polynomial(&fixtures::vt().mirror());
        assert_eq!(zm.lowest_x_exponent(), Some(-2));
        assert_eq!(z_normalized(&zm).lowest_x_exponent(), Some(0));
    }

    #[test]
    fn skein_residual_vanishes_on_fixture_crossings() {
        for code in fixtures::all() {
            for i in 0..code.n_crossings() {
                let r = skein_residual(&code, i).unwrap();
                assert!(
                    r.is_zero(),
                    "crossing {i} of {}",
                    crate::serialize_vld(&code)
                );
            }
        }
        assert!(skein_residual(&fixtures::vt(), 9).is_err());
    }

    #[test]
    fn skein_triple_orients_by_sign() {
        let vt = fixtures::vt();
        let t = skein_triple(&vt, 0).unwrap();
        assert_eq!(t.positive, vt);
        assert_eq!(t.negative.crossings()[0].sign, Sign::Neg);
        let neg = vt.switch_crossing(0).unwrap();
        let t2 = skein_triple(&neg, 0).unwrap();
        assert_eq!(t2.negative, neg);
        assert_eq!(t2.positive, vt);
        assert_eq!(t2.smoothed, t.smoothed);
    }

    #[test]
    fn x_one_profile_ignores_switches() {
        let vh = fixtures::vh();
        let profile = switch_profile(&vh);
        assert_eq!(
            profile.to_term_array(),
            vec![
                (-1, "1".to_string()),
                (0, "2".to_string()),
                (1, "1".to_string())
            ]
        );
        assert_eq!(switch_profile(&vh.switch_crossing(0).unwrap()), profile);
        let vt = fixtures::vt();
        let p = switch_profile(&vt);
        for i in 0..2 {
            assert_eq!(switch_profile(&vt.switch_crossing(i).unwrap()), p);
        }
    }

    #[test]
    fn vanishing_specializations() {
        for code in fixtures::all() {
            let z = z_polynomial(&code);
            assert!(eval_y_minus_x(&z).is_zero());
            assert!(eval_y_minus_1(&z).is_zero());
        }
    }

    #[test]
    fn block_determinants_are_unit_monomials() {
        for sign in [Sign::Pos, Sign::Neg] {
            let b = local_block(sign);
            let det = &(&b[0][0] * &b[1][1]) - &(&b[0][1] * &b[1][0]);
            let expect = match sign {
                Sign::Pos => LPoly2::monomial(1, 0, -1),
                Sign::Neg => LPoly2::monomial(-1, 0, -1),
            };
            assert_eq!(det, expect);
        }
    }

    #[test]
    fn z_prime_of_vh() {
        // t^{-1} Z(t^2, y) = t + t^{-1} y + t y^{-1} + t^{-1}.
        let zp = z_prime(&fixtures::vh());
        assert_eq!(zp, poly(&[(1, 0, 1), (-1, 1, 1), (1, -1, 1), (-1, 0, 1)]));
    }
}
