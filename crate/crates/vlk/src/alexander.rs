//! Wirtinger presentation and Fox-calculus Alexander invariants.
//!
//! Generators are *arcs*: maximal runs of edges a strand traverses between
//! consecutive under-passes. Every classical crossing contributes one
//! relator conjugating the incoming under-arc into the outgoing one by the
//! over-arc. Free derivatives of the relators, abelianized by sending every
//! generator to `t`, fill the Alexander matrix; the polynomial is the gcd of
//! its maximal minors, computed exactly over `Z[t^{±1}]` with optional
//! mod-`p` refinements for non-principal ideals.

use std::collections::BTreeMap;

use crate::conway::SkeinTriple;
use crate::diagram::{DiagramCode, EdgeLabel, PassRole};
use crate::laurent::{gcd_1var, gcd_mod_p, LPoly1, LaurentError, RingMatrix};

/// The arc partition of a code's strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arcs {
    /// One representative per arc -- its lexicographically smallest edge or
    /// free-loop label -- in sorted order.
    pub generators: Vec<EdgeLabel>,
    /// Index into `generators` for every edge and free-loop label.
    pub arc_of: BTreeMap<EdgeLabel, usize>,
}

/// A relator as written: `(generator index, exponent)` letters, exponents
/// restricted to `±1`.
pub type Word = Vec<(usize, i8)>;

/// Group presentation read off a diagram: one generator per arc, one
/// relator per classical crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<EdgeLabel>,
    pub relators: Vec<Word>,
}

/// Relator-by-generator matrix of abelianized Fox derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexMatrix {
    /// `relator count` rows by `generator count` columns.
    pub rows: Vec<Vec<LPoly1>>,
    pub n_generators: usize,
}

/// Partitions the strands into arcs: edges joined whenever one passes over
/// a crossing into the next, so runs break exactly at under-passes. A
/// component that never goes under (a closed over-circle or a free loop)
/// forms a single arc.
pub fn arcs(code: &DiagramCode) -> Arcs {
    let mut labels: Vec<EdgeLabel> = code.edge_labels().into_iter().collect();
    labels.extend(code.free_loops().iter().cloned());
    labels.sort();
    let index: BTreeMap<&EdgeLabel, usize> =
        labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    // Union-find over label indices; over-passes merge in-edge with out-edge.
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for c in code.crossings() {
        let a = index[c.pass_in(PassRole::Over)];
        let b = index[c.pass_out(PassRole::Over)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        // Keep the smaller index as the root so each class is represented
        // by its lexicographically least label.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
    let mut generators = Vec::new();
    let mut class_to_gen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc_of = BTreeMap::new();
    for i in 0..labels.len() {
        let root = find(&mut parent, i);
        let gen = *class_to_gen.entry(root).or_insert_with(|| {
            generators.push(labels[root].clone());
            generators.len() - 1
        });
        arc_of.insert(labels[i].clone(), gen);
    }
    Arcs { generators, arc_of }
}

/// Reads off the group presentation: at each crossing the outgoing
/// under-arc `c` equals the incoming under-arc `a` conjugated by the
/// over-arc `b`, with the conjugation direction set by the crossing sign.
/// The stored relator is `c b^e a^{-1} b^{-e}` with `e = +1` at positive
/// crossings.
pub fn wirtinger(code: &DiagramCode) -> Presentation {
    let arcs = arcs(code);
    let mut relators = Vec::with_capacity(code.n_crossings());
    for c in code.crossings() {
        let a = arcs.arc_of[c.pass_in(PassRole::Under)];
        let out = arcs.arc_of[c.pass_out(PassRole::Under)];
        let b = arcs.arc_of[c.pass_in(PassRole::Over)];
        let e = c.sign.as_i64() as i8;
        relators.push(vec![(out, 1), (b, e), (a, -1), (b, -e)]);
    }
    Presentation {
        generators: arcs.generators,
        relators,
    }
}

/// Abelianized free derivative of `word` with respect to generator `g`,
/// under the morphism sending every generator to `t`: product rule
/// `d(uv) = du + phi(u) dv` with `d(g) = 1` and `d(g^{-1}) = -t^{-1}`.
pub fn fox_derivative(word: &Word, g: usize) -> LPoly1 {
    let mut out = LPoly1::zero();
    let mut prefix = 0i64; // exponent of t in phi(prefix)
    for &(gen, exp) in word {
        if exp >= 0 {
            if gen == g {
                out = &out + &LPoly1::monomial(prefix, 1);
            }
            prefix += 1;
        } else {
            prefix -= 1;
            if gen == g {
                out = &out - &LPoly1::monomial(prefix, 1);
            }
        }
    }
    out
}

/// Fox-derivative matrix of the Wirtinger presentation: one row per
/// relator, one column per generator.
pub fn alexander_matrix(code: &DiagramCode) -> AlexMatrix {
    let pres = wirtinger(code);
    let n = pres.generators.len();
    let rows = pres
        .relators
        .iter()
        .map(|w| (0..n).map(|g| fox_derivative(w, g)).collect())
        .collect();
    AlexMatrix {
        rows,
        n_generators: n,
    }
}

/// Lexicographic k-subsets of 0..n.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        if k == 0 || (i == 0 && cur[0] == n - k) {
            return out;
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn minor(m: &AlexMatrix, rows: &[usize], cols: &[usize]) -> LPoly1 {
    let k = rows.len();
    let mut sq = RingMatrix::zero(k);
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            sq.set(i, j, m.rows[r][c].embed_x());
        }
    }
    sq.determinant()
        .restrict_x()
        .expect("one-variable entries stay one-variable")
}

/// All maximal minors defining the Alexander ideal: with `n` generators,
/// every `(n-1) x (n-1)` determinant over row and column subsets. The empty
/// (0 x 0) minor is 1, and fewer relators than `n-1` leaves nothing to take
/// (so the gcd downstream is 0).
pub fn ideal_generators(code: &DiagramCode) -> Vec<LPoly1> {
    let m = alexander_matrix(code);
    let n = m.n_generators;
    if n == 0 {
        return vec![LPoly1::constant(1)];
    }
    let k = n - 1;
    let mut out = Vec::new();
    for rows in subsets(m.rows.len(), k) {
        for cols in subsets(n, k) {
            out.push(minor(&m, &rows, &cols));
        }
    }
    out
}

/// Greatest common divisor of the ideal generators, unit-normalized to a
/// nonzero constant term and positive leading coefficient. Zero when the
/// ideal has no generators or all generators vanish.
pub fn alexander_polynomial(code: &DiagramCode) -> LPoly1 {
    gcd_1var(&ideal_generators(code))
}

/// Monic gcd of the ideal generators over `F_p`. Distinguishes codes whose
/// integral gcd collapses to 1 while the ideal stays proper mod `p`.
pub fn alexander_polynomial_mod_p(code: &DiagramCode, p: u64) -> Result<LPoly1, LaurentError> {
    gcd_mod_p(&ideal_generators(code), p)
}

/// Tests whether the three Alexander polynomials of a skein triple can be
/// unit-normalized (`±t^k`, `|k| <= k_range`) to satisfy
/// `A_plus - A_minus = (t - 1) A_smoothed` exactly. The positive term's
/// unit is pinned to `+1` since common rescaling preserves the equation.
pub fn check_classical_alexander_skein(triple: &SkeinTriple, k_range: i64) -> bool {
    let a_pos = alexander_polynomial(&triple.positive);
    let a_neg = alexander_polynomial(&triple.negative);
    let a_smo = alexander_polynomial(&triple.smoothed);
    let bracket = LPoly1::from_terms([(1, 1), (0, -1)]);
    let rhs_base = &bracket * &a_smo;
    for e_neg in [1i64, -1] {
        for k_neg in -k_range..=k_range {
            let neg = a_neg.mul_unit_monomial(k_neg);
            let neg = if e_neg < 0 { -&neg } else { neg };
            let lhs = &a_pos - &neg;
            for e_smo in [1i64, -1] {
                for k_smo in -k_range..=k_range {
                    let rhs = rhs_base.mul_unit_monomial(k_smo);
                    let rhs = if e_smo < 0 { -&rhs } else { rhs };
                    if lhs == rhs {
                        return true;
                    }
                }
            }
        }
    }
    false
}
