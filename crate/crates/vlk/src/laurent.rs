//! Laurent polynomial arithmetic over arbitrary-precision integers, plus the
//! determinant and gcd machinery the invariants are built on.
//!
//! Two types carry all of it: [`LPoly2`] (two variables, used for the
//! determinant polynomial in `x`, `y`) and [`LPoly1`] (one variable, used for
//! Alexander data in `t` and for evaluation images). Coefficients are
//! `num_bigint::BigInt`; exponents are `i64` and may be negative.
//!
//! Canonical text form, shared by both types: terms ascending by exponent
//! (lexicographic on `(ex, ey)` for two variables), each printed as
//! `c*x^a*y^b` with zero exponents omitted and exponent one printed without
//! the `^`, joined by ` + `. The zero polynomial prints `0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),
}

fn fmt_term(out: &mut String, coeff: &BigInt, vars: &[(&str, i64)], first: bool) {
    if !first {
        out.push_str(" + ");
    }
    out.push_str(&coeff.to_string());
    for &(name, e) in vars {
        if e == 0 {
            continue;
        }
        out.push('*');
        out.push_str(name);
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

// ---- two-variable Laurent polynomials ----

/// Laurent polynomial in two variables with `BigInt` coefficients.
///
/// The map holds only nonzero coefficients, keyed by `(ex, ey)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LPoly2 {
    pub fn zero() -> Self {
        LPoly2::default()
    }

    pub fn one() -> Self {
        LPoly2::monomial(0, 0, 1)
    }

    pub fn constant(c: i64) -> Self {
        LPoly2::monomial(0, 0, c)
    }

    /// `c * x^ex * y^ey`
    pub fn monomial(ex: i64, ey: i64, c: i64) -> Self {
        Self::monomial_big(ex, ey, BigInt::from(c))
    }

    pub fn monomial_big(ex: i64, ey: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ex, ey), c);
        }
        LPoly2 { terms }
    }

    pub fn var_x() -> Self {
        LPoly2::monomial(1, 0, 1)
    }

    pub fn var_y() -> Self {
        LPoly2::monomial(0, 1, 1)
    }

    /// Builds from `(ex, ey, coeff)` triples; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, i64)>>(iter: I) -> Self {
        let mut p = LPoly2::zero();
        for (ex, ey, c) in iter {
            p.add_term(ex, ey, &BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, ex: i64, ey: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ex, ey)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ex, ey));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.terms.iter().map(|(&(ex, ey), c)| (ex, ey, c))
    }

    pub fn coeff(&self, ex: i64, ey: i64) -> BigInt {
        self.terms
            .get(&(ex, ey))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Reads a `y`-free polynomial back into the one-variable ring
    /// (`x` becomes `t`); `None` if any term carries a `y`-exponent.
    pub fn restrict_x(&self) -> Option<LPoly1> {
        let mut out = LPoly1::zero();
        for (&(ex, ey), c) in &self.terms {
            if ey != 0 {
                return None;
            }
            out.add_term(ex, c);
        }
        Some(out)
    }

    /// Smallest `x`-exponent over all terms; `None` for the zero polynomial.
    pub fn lowest_x_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|&(ex, _)| ex).min()
    }

    /// Multiplies by the unit `x^dx * y^dy` (an exponent shift).
    pub fn mul_unit_monomial(&self, dx: i64, dy: i64) -> LPoly2 {
        let terms = self
            .terms
            .iter()
            .map(|(&(ex, ey), c)| ((ex + dx, ey + dy), c.clone()))
            .collect();
        LPoly2 { terms }
    }

    /// Exact division; panics if `self` is not a multiple of `d`.
    ///
    /// Used by fraction-free elimination, where exactness is an invariant of
    /// the algorithm rather than of the inputs.
    pub fn div_exact(&self, d: &LPoly2) -> LPoly2 {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return LPoly2::zero();
        }
        let (dex, dc) = {
            let (&e, c) = d.terms.iter().next_back().expect("nonzero divisor");
            (e, c.clone())
        };
        let mut rem = self.clone();
        let mut quot = LPoly2::zero();
        while let Some((&re, rc)) = rem.terms.iter().next_back() {
            let (q, r) = rc.div_rem(&dc);
            assert!(
                r.is_zero(),
                "non-exact division in fraction-free elimination"
            );
            let qe = (re.0 - dex.0, re.1 - dex.1);
            let qterm = LPoly2::monomial_big(qe.0, qe.1, q);
            rem -= &(&qterm * d);
            quot += &qterm;
        }
        quot
    }

    /// Substitutes `x := t^2`, doubling every `x`-exponent. The result reads
    /// the first variable as `t`.
    pub fn substitute_x_t2(&self) -> LPoly2 {
        let terms = self
            .terms
            .iter()
            .map(|(&(ex, ey), c)| ((2 * ex, ey), c.clone()))
            .collect();
        LPoly2 { terms }
    }

    /// Evaluation at `y := -x`, collapsing to one variable in `x`.
    pub fn eval_y_minus_x(&self) -> LPoly1 {
        let mut p = LPoly1::zero();
        for (ex, ey, c) in self.terms() {
            let mut v = c.clone();
            if ey % 2 != 0 {
                v = -v;
            }
            p.add_term(ex + ey, &v);
        }
        p
    }

    /// Evaluation at `y := -1`, collapsing to one variable in `x`.
    pub fn eval_y_minus_1(&self) -> LPoly1 {
        let mut p = LPoly1::zero();
        for (ex, ey, c) in self.terms() {
            let mut v = c.clone();
            if ey % 2 != 0 {
                v = -v;
            }
            p.add_term(ex, &v);
        }
        p
    }

    /// Evaluation at `x := 1`, collapsing to one variable in `y`.
    pub fn eval_x_1(&self) -> LPoly1 {
        let mut p = LPoly1::zero();
        for (_, ey, c) in self.terms() {
            p.add_term(ey, c);
        }
        p
    }

    /// Canonical string with caller-chosen variable names.
    pub fn to_canonical_with(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(ex, ey), c)) in self.terms.iter().enumerate() {
            fmt_term(&mut out, c, &[(vx, ex), (vy, ey)], i == 0);
        }
        out
    }

    /// Term list for JSON output: `[ex, ey, coeff-as-decimal-string]`,
    /// sorted ascending by `(ex, ey)`.
    pub fn to_term_array(&self) -> Vec<(i64, i64, String)> {
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| (ex, ey, c.to_string()))
            .collect()
    }
}

impl fmt::Display for LPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_with("x", "y"))
    }
}

// ---- Add ----

impl Add for &LPoly2 {
    type Output = LPoly2;
    fn add(self, rhs: &LPoly2) -> LPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LPoly2> for LPoly2 {
    fn add_assign(&mut self, rhs: &LPoly2) {
        for (&(ex, ey), c) in &rhs.terms {
            self.add_term(ex, ey, c);
        }
    }
}

impl Add for LPoly2 {
    type Output = LPoly2;
    fn add(mut self, rhs: LPoly2) -> LPoly2 {
        self += &rhs;
        self
    }
}

// ---- Sub ----

impl Sub for &LPoly2 {
    type Output = LPoly2;
    fn sub(self, rhs: &LPoly2) -> LPoly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LPoly2> for LPoly2 {
    fn sub_assign(&mut self, rhs: &LPoly2) {
        for (&(ex, ey), c) in &rhs.terms {
            let neg = -c.clone();
            self.add_term(ex, ey, &neg);
        }
    }
}

impl Sub for LPoly2 {
    type Output = LPoly2;
    fn sub(mut self, rhs: LPoly2) -> LPoly2 {
        self -= &rhs;
        self
    }
}

// ---- Mul ----

impl Mul for &LPoly2 {
    type Output = LPoly2;
    fn mul(self, rhs: &LPoly2) -> LPoly2 {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                let key = (ax + bx, ay + by);
                let entry = terms.entry(key).or_insert_with(BigInt::zero);
                *entry += ac * bc;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LPoly2 { terms }
    }
}

impl Mul for LPoly2 {
    type Output = LPoly2;
    fn mul(self, rhs: LPoly2) -> LPoly2 {
        &self * &rhs
    }
}

impl MulAssign<&LPoly2> for LPoly2 {
    fn mul_assign(&mut self, rhs: &LPoly2) {
        *self = &*self * rhs;
    }
}

impl Neg for &LPoly2 {
    type Output = LPoly2;
    fn neg(self) -> LPoly2 {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect();
        LPoly2 { terms }
    }
}

impl Neg for LPoly2 {
    type Output = LPoly2;
    fn neg(self) -> LPoly2 {
        -&self
    }
}

// ---- one-variable Laurent polynomials ----

/// Laurent polynomial in one variable (`t` unless a caller renames it).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LPoly1 {
    terms: BTreeMap<i64, BigInt>,
}

impl LPoly1 {
    pub fn zero() -> Self {
        LPoly1::default()
    }

    pub fn one() -> Self {
        LPoly1::monomial(0, 1)
    }

    pub fn constant(c: i64) -> Self {
        LPoly1::monomial(0, c)
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        Self::monomial_big(e, BigInt::from(c))
    }

    pub fn monomial_big(e: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LPoly1 { terms }
    }

    pub fn var_t() -> Self {
        LPoly1::monomial(1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = LPoly1::zero();
        for (e, c) in iter {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn mul_unit_monomial(&self, de: i64) -> LPoly1 {
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| (e + de, c.clone()))
            .collect();
        LPoly1 { terms }
    }

    /// Views this polynomial inside the two-variable ring, sending `t` to
    /// `x`. Inverse of [`LPoly2::restrict_x`].
    pub fn embed_x(&self) -> LPoly2 {
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| ((e, 0), c.clone()))
            .collect();
        LPoly2 { terms }
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Unit normalization: shift so the constant term is nonzero, then flip
    /// signs if needed so the leading coefficient is positive. Zero stays zero.
    pub fn normalize_units(&self) -> LPoly1 {
        if self.is_zero() {
            return LPoly1::zero();
        }
        let low = self.lowest_exponent().unwrap();
        let mut p = self.mul_unit_monomial(-low);
        let lead = p.terms.values().next_back().unwrap();
        if lead.is_negative() {
            p = -&p;
        }
        p
    }

    pub fn to_canonical_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            fmt_term(&mut out, c, &[(var, e)], i == 0);
        }
        out
    }

    pub fn to_term_array(&self) -> Vec<(i64, String)> {
        self.terms
            .iter()
            .map(|(&e, c)| (e, c.to_string()))
            .collect()
    }
}

impl fmt::Display for LPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_with("t"))
    }
}

impl Add for &LPoly1 {
    type Output = LPoly1;
    fn add(self, rhs: &LPoly1) -> LPoly1 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LPoly1 {
    type Output = LPoly1;
    fn sub(self, rhs: &LPoly1) -> LPoly1 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            let neg = -c.clone();
            out.add_term(e, &neg);
        }
        out
    }
}

impl Mul for &LPoly1 {
    type Output = LPoly1;
    fn mul(self, rhs: &LPoly1) -> LPoly1 {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&ae, ac) in &self.terms {
            for (&be, bc) in &rhs.terms {
                let entry = terms.entry(ae + be).or_insert_with(BigInt::zero);
                *entry += ac * bc;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LPoly1 { terms }
    }
}

impl Neg for &LPoly1 {
    type Output = LPoly1;
    fn neg(self) -> LPoly1 {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect();
        LPoly1 { terms }
    }
}

// ---- matrices and determinants ----

/// Dense square matrix over [`LPoly2`], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    n: usize,
    entries: Vec<LPoly2>,
}

impl RingMatrix {
    pub fn zero(n: usize) -> Self {
        RingMatrix {
            n,
            entries: vec![LPoly2::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LPoly2>>) -> Self {
        let n = rows.len();
        for row in &rows {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        RingMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &LPoly2 {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LPoly2) {
        self.entries[i * self.n + j] = p;
    }

    /// Determinant by fraction-free Bareiss elimination.
    ///
    /// Rows are first scaled by unit monomials so every entry lies in the
    /// plain polynomial ring; the scaling product is divided back out of the
    /// result at the end. Pivots are chosen over all remaining rows and
    /// columns, preferring the sparsest position, with swaps tracked in the
    /// sign.
    pub fn determinant(&self) -> LPoly2 {
        let n = self.n;
        if n == 0 {
            return LPoly2::one();
        }
        // Scale each row into Z[x,y], remembering the total shift.
        let mut a: Vec<Vec<LPoly2>> = Vec::with_capacity(n);
        let mut shift_x = 0i64;
        let mut shift_y = 0i64;
        for i in 0..n {
            let row: Vec<&LPoly2> = (0..n).map(|j| self.at(i, j)).collect();
            let mut min_x = 0i64;
            let mut min_y = 0i64;
            for p in &row {
                for (ex, ey, _) in p.terms() {
                    min_x = min_x.min(ex);
                    min_y = min_y.min(ey);
                }
            }
            shift_x -= min_x;
            shift_y -= min_y;
            a.push(
                row.iter()
                    .map(|p| p.mul_unit_monomial(-min_x, -min_y))
                    .collect(),
            );
        }

        let mut sign = 1i64;
        let mut prev = LPoly2::one();
        for k in 0..n {
            // Sparsest nonzero pivot in the remaining block.
            let mut pivot: Option<(usize, usize, usize)> = None;
            #[allow(clippy::needless_range_loop)] // i indexes rows of the k-trimmed block
            for i in k..n {
                let row_nnz = (k..n).filter(|&j| !a[i][j].is_zero()).count();
                if row_nnz == 0 {
                    continue;
                }
                for j in k..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let col_nnz = (k..n).filter(|&r| !a[r][j].is_zero()).count();
                    let cost = row_nnz * col_nnz;
                    if pivot.is_none_or(|(_, _, best)| cost < best) {
                        pivot = Some((i, j, cost));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some((i, j, _)) => (i, j),
                None => return LPoly2::zero(),
            };
            if pi != k {
                a.swap(pi, k);
                sign = -sign;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev);
                }
                a[i][k] = LPoly2::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = a[n - 1][n - 1].mul_unit_monomial(-shift_x, -shift_y);
        if sign < 0 {
            det = -det;
        }
        det
    }

    /// Independent determinant for cross-checking: Laplace expansion along
    /// rows, memoized over column subsets. Limited to 16 columns.
    pub fn determinant_oracle(&self) -> LPoly2 {
        let n = self.n;
        assert!(n <= 16, "oracle determinant supports sizes up to 16");
        if n == 0 {
            return LPoly2::one();
        }
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut memo: HashMap<u32, LPoly2> = HashMap::new();
        memo.insert(0, LPoly2::one());
        self.oracle_rec(full, &mut memo)
    }

    fn oracle_rec(&self, cols: u32, memo: &mut HashMap<u32, LPoly2>) -> LPoly2 {
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let k = cols.count_ones() as usize;
        let row = k - 1; // expand along the last of the first k rows
        let mut acc = LPoly2::zero();
        let mut parity = 0u32;
        for j in 0..self.n {
            let bit = 1u32 << j;
            if cols & bit == 0 {
                continue;
            }
            let entry = self.at(row, j);
            if !entry.is_zero() {
                let sub = self.oracle_rec(cols & !bit, memo);
                let prod = entry * &sub;
                if (k as u32 - 1 + parity).is_multiple_of(2) {
                    acc += &prod;
                } else {
                    acc -= &prod;
                }
            }
            parity += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

// ---- integral gcd in one variable ----

/// Dense nonneg-exponent view: coefficients ascending from degree 0,
/// constant term nonzero (inputs are shifted by their valuation first).
fn to_dense(p: &LPoly1) -> Vec<BigInt> {
    let shifted = match p.lowest_exponent() {
        Some(low) => p.mul_unit_monomial(-low),
        None => return Vec::new(),
    };
    let deg = shifted.highest_exponent().unwrap();
    let mut v = vec![BigInt::zero(); deg as usize + 1];
    for (e, c) in shifted.terms() {
        v[e as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigInt]) -> LPoly1 {
    let mut p = LPoly1::zero();
    for (e, c) in v.iter().enumerate() {
        p.add_term(e as i64, c);
    }
    p
}

fn dense_deg(v: &[BigInt]) -> usize {
    debug_assert!(!v.is_empty() && !v.last().unwrap().is_zero());
    v.len() - 1
}

fn dense_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|a| a / &c).collect()
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) * a  mod  b`.
/// Every interior division is exact; this is what keeps the subresultant
/// sequence integral.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = dense_deg(a);
    let db = dense_deg(b);
    debug_assert!(da >= db);
    let lc_b = &b[db];
    let factor = lc_b.pow((da - db + 1) as u32);
    let mut r: Vec<BigInt> = a.iter().map(|c| c * &factor).collect();
    for k in (db..=da).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (q, rr) = r[k].div_rem(lc_b);
        debug_assert!(rr.is_zero(), "pseudo-division step must divide exactly");
        for j in 0..=db {
            let sub = &q * &b[j];
            r[k - db + j] -= sub;
        }
    }
    dense_trim(r)
}

/// gcd of two dense integer polynomials via the subresultant remainder
/// sequence, contents handled separately.
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let cont = content(a).gcd(&content(b));
    let mut r0 = primitive_part(a);
    let mut r1 = primitive_part(b);
    if dense_deg(&r0) < dense_deg(&r1) {
        std::mem::swap(&mut r0, &mut r1);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let d = dense_deg(&r0) - dense_deg(&r1);
        let rem = pseudo_rem(&r0, &r1);
        if rem.is_empty() {
            break;
        }
        if dense_deg(&rem) == 0 {
            r1 = vec![BigInt::one()];
            break;
        }
        let divisor = &g * h.pow(d as u32);
        let next: Vec<BigInt> = rem
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&divisor);
                debug_assert!(r.is_zero(), "subresultant division must be exact");
                q
            })
            .collect();
        r0 = r1;
        r1 = next;
        g = r0[dense_deg(&r0)].clone();
        h = if d == 0 {
            h
        } else {
            let num = g.pow(d as u32);
            let den = h.pow(d as u32 - 1);
            &num / &den
        };
    }
    let mut out = primitive_part(&r1);
    for c in out.iter_mut() {
        *c *= &cont;
    }
    out
}

/// gcd of a family of one-variable Laurent polynomials over the integers,
/// unit-normalized (nonzero constant term, positive leading coefficient).
/// The empty family and the all-zero family give 0.
pub fn gcd_1var(ps: &[LPoly1]) -> LPoly1 {
    let mut acc: Vec<BigInt> = Vec::new();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        let d = to_dense(p);
        acc = dense_gcd(&acc, &d);
        if dense_deg(&acc) == 0 && acc[0].is_one() {
            break;
        }
    }
    from_dense(&acc).normalize_units()
}

// ---- modular arithmetic in F_p[t] ----

fn check_modulus(p: u64) -> Result<(), LaurentError> {
    if !(2..1 << 31).contains(&p) {
        return Err(LaurentError::ModulusOutOfRange(p));
    }
    let mut d = 2u64;
    while d <= 0xFFFF && d * d <= p {
        if p.is_multiple_of(d) {
            return Err(LaurentError::NonPrimeModulus(p));
        }
        d += 1;
    }
    Ok(())
}

/// Coefficient-wise reduction into `[0, p)`. `p` must be prime.
pub fn reduce_mod_p(poly: &LPoly1, p: u64) -> Result<LPoly1, LaurentError> {
    check_modulus(p)?;
    let m = BigInt::from(p);
    let mut out = LPoly1::zero();
    for (e, c) in poly.terms() {
        let r = ((c % &m) + &m) % &m;
        out.add_term(e, &r);
    }
    Ok(out)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv_lb = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let q = (r[dr] as u128 * inv_lb as u128 % p as u128) as u64;
        for j in 0..=db {
            let sub = (q as u128 * b[j] as u128 % p as u128) as u64;
            r[dr - db + j] = (r[dr - db + j] + p - sub) % p;
        }
        // the leading coefficient is now exactly zero
        fp_trim(&mut r);
    }
    r
}

/// Monic gcd of a family in `F_p[t]`, after shifting each member by its
/// `t`-valuation. Members that vanish mod `p` are skipped; if everything
/// vanishes the gcd is 0.
pub fn gcd_mod_p(ps: &[LPoly1], p: u64) -> Result<LPoly1, LaurentError> {
    check_modulus(p)?;
    let m = BigInt::from(p);
    let mut acc: Vec<u64> = Vec::new();
    for poly in ps {
        let mut v: Vec<u64> = Vec::new();
        if let Some(low) = poly.lowest_exponent() {
            let deg = poly.highest_exponent().unwrap() - low;
            v = vec![0; deg as usize + 1];
            for (e, c) in poly.terms() {
                let r = ((c % &m) + &m) % &m;
                v[(e - low) as usize] = r
                    .to_string()
                    .parse::<u64>()
                    .expect("reduced coeff fits u64");
            }
        }
        fp_trim(&mut v);
        if v.is_empty() {
            continue;
        }
        // strip t-valuation mod p
        let vmin = v.iter().position(|&c| c != 0).unwrap();
        v.drain(..vmin);
        if acc.is_empty() {
            acc = v;
            continue;
        }
        // Euclid; fp_rem returns its first argument unchanged when its
        // degree is already below the divisor's, which swaps the pair.
        let (mut r0, mut r1) = (acc, v);
        while !r1.is_empty() {
            let r = fp_rem(&r0, &r1, p);
            r0 = r1;
            r1 = r;
        }
        acc = r0;
        if acc.len() == 1 {
            acc[0] = 1;
            break;
        }
    }
    if acc.is_empty() {
        return Ok(LPoly1::zero());
    }
    // monic normalization
    let inv = mod_pow(*acc.last().unwrap(), p - 2, p);
    let mut out = LPoly1::zero();
    for (e, &c) in acc.iter().enumerate() {
        let v = (c as u128 * inv as u128 % p as u128) as u64;
        out.add_term(e as i64, &BigInt::from(v));
    }
    Ok(out)
}
