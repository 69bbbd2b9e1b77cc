//! Combinatorial codes for virtual link diagrams.
//!
//! A diagram is stored as its classical-crossing code: each crossing records
//! its sign and the four incident edge labels (over-strand in/out, under-strand
//! in/out). Virtual crossings are never represented -- they are an artifact of
//! drawing the code in the plane, not of the code itself. Closed components
//! that meet no classical crossing at all are kept as bare `free_loops`.
//!
//! The text format ("VLD") is line-based:
//!
//! ```text
//! # comment to end of line
//! X + e4 e1 e2 e3     (crossing: sign, over_in, over_out, under_in, under_out)
//! O u1                (free loop)
//! ```
//!
//! Signed Gauss codes for single-component diagrams (`O1+U2+O2+U1+`) can be
//! ingested as well; see [`parse_gauss`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::rng::Lcg64;

/// Edge or free-loop label: nonempty ASCII from `[A-Za-z0-9_-]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel(String);

impl EdgeLabel {
    pub fn new(s: &str) -> Result<Self, CodeError> {
        if s.is_empty()
            || !s
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
        {
            return Err(CodeError::BadLabel(s.to_string()));
        }
        Ok(EdgeLabel(s.to_string()))
    }

    /// Internal constructor for labels derived from already-validated ones.
    pub(crate) fn raw(s: String) -> Self {
        debug_assert!(EdgeLabel::new(&s).is_ok());
        EdgeLabel(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PassRole {
    Over,
    Under,
}

impl PassRole {
    pub fn other(self) -> PassRole {
        match self {
            PassRole::Over => PassRole::Under,
            PassRole::Under => PassRole::Over,
        }
    }
}

/// One pass of a strand through a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrandPass {
    pub crossing: usize,
    pub role: PassRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    pub over_in: EdgeLabel,
    pub over_out: EdgeLabel,
    pub under_in: EdgeLabel,
    pub under_out: EdgeLabel,
}

impl Crossing {
    pub fn new(
        sign: Sign,
        over_in: EdgeLabel,
        over_out: EdgeLabel,
        under_in: EdgeLabel,
        under_out: EdgeLabel,
    ) -> Self {
        Crossing {
            sign,
            over_in,
            over_out,
            under_in,
            under_out,
        }
    }

    pub fn pass_in(&self, role: PassRole) -> &EdgeLabel {
        match role {
            PassRole::Over => &self.over_in,
            PassRole::Under => &self.under_in,
        }
    }

    pub fn pass_out(&self, role: PassRole) -> &EdgeLabel {
        match role {
            PassRole::Over => &self.over_out,
            PassRole::Under => &self.under_out,
        }
    }

    pub(crate) fn set_pass_in(&mut self, role: PassRole, label: EdgeLabel) {
        match role {
            PassRole::Over => self.over_in = label,
            PassRole::Under => self.under_in = label,
        }
    }

    pub(crate) fn set_pass_out(&mut self, role: PassRole, label: EdgeLabel) {
        match role {
            PassRole::Over => self.over_out = label,
            PassRole::Under => self.under_out = label,
        }
    }
}

/// Classical-crossing code of a virtual link diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiagramCode {
    pub(crate) crossings: Vec<Crossing>,
    pub(crate) free_loops: BTreeSet<EdgeLabel>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("label {0:?} is not a valid token (nonempty, [A-Za-z0-9_-])")]
    BadLabel(String),
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("no edge or loop named {0:?}")]
    UnknownEdge(String),
    #[error("sequence is not a permutation of 0..{0}")]
    BadPermutation(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, col {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("empty input: a diagram needs at least one crossing or free loop")]
    Empty,
    #[error("inconsistent code: {0}")]
    Invalid(String),
}

/// A way a code can fail to be a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `label` occurs `count` times as an `*_in` slot (must be exactly 1).
    HeadCount { label: EdgeLabel, count: usize },
    /// `label` occurs `count` times as an `*_out` slot (must be exactly 1).
    TailCount { label: EdgeLabel, count: usize },
    /// A free-loop label also occurs on a crossing.
    LoopClash { label: EdgeLabel },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HeadCount { label, count } => {
                write!(
                    f,
                    "edge {label} enters a crossing {count} times (expected 1)"
                )
            }
            Violation::TailCount { label, count } => {
                write!(
                    f,
                    "edge {label} leaves a crossing {count} times (expected 1)"
                )
            }
            Violation::LoopClash { label } => {
                write!(f, "free loop {label} shares its label with a crossing edge")
            }
        }
    }
}

/// Connected components of a code: closed strand walks plus bare loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Each walk lists its edges in traversal order, starting from the
    /// lexicographically smallest edge; walks are sorted by that first edge.
    pub closed: Vec<Vec<EdgeLabel>>,
    pub free_loops: Vec<EdgeLabel>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.closed.len() + self.free_loops.len()
    }
}

impl DiagramCode {
    pub fn from_parts(crossings: Vec<Crossing>, free_loops: BTreeSet<EdgeLabel>) -> Self {
        DiagramCode {
            crossings,
            free_loops,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &BTreeSet<EdgeLabel> {
        &self.free_loops
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    /// All edge labels used by crossings (each appears once as head, once as
    /// tail when the code is valid).
    pub fn edge_labels(&self) -> BTreeSet<EdgeLabel> {
        let mut out = BTreeSet::new();
        for c in &self.crossings {
            out.insert(c.over_in.clone());
            out.insert(c.over_out.clone());
            out.insert(c.under_in.clone());
            out.insert(c.under_out.clone());
        }
        out
    }

    /// Map from edge label to the pass it enters (its head).
    pub fn edge_heads(&self) -> HashMap<EdgeLabel, StrandPass> {
        let mut m = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            m.insert(
                c.over_in.clone(),
                StrandPass {
                    crossing: i,
                    role: PassRole::Over,
                },
            );
            m.insert(
                c.under_in.clone(),
                StrandPass {
                    crossing: i,
                    role: PassRole::Under,
                },
            );
        }
        m
    }

    /// Map from edge label to the pass it leaves (its tail).
    pub fn edge_tails(&self) -> HashMap<EdgeLabel, StrandPass> {
        let mut m = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            m.insert(
                c.over_out.clone(),
                StrandPass {
                    crossing: i,
                    role: PassRole::Over,
                },
            );
            m.insert(
                c.under_out.clone(),
                StrandPass {
                    crossing: i,
                    role: PassRole::Under,
                },
            );
        }
        m
    }

    /// Structural checks. An empty list means the code is a diagram.
    pub fn validate(&self) -> Vec<Violation> {
        let mut heads: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
        let mut tails: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
        for c in &self.crossings {
            *heads.entry(&c.over_in).or_default() += 1;
            *heads.entry(&c.under_in).or_default() += 1;
            *tails.entry(&c.over_out).or_default() += 1;
            *tails.entry(&c.under_out).or_default() += 1;
        }
        let mut out = Vec::new();
        let labels: BTreeSet<&EdgeLabel> = heads.keys().chain(tails.keys()).copied().collect();
        for label in labels {
            let h = heads.get(label).copied().unwrap_or(0);
            let t = tails.get(label).copied().unwrap_or(0);
            if h != 1 {
                out.push(Violation::HeadCount {
                    label: label.clone(),
                    count: h,
                });
            }
            if t != 1 {
                out.push(Violation::TailCount {
                    label: label.clone(),
                    count: t,
                });
            }
        }
        for l in &self.free_loops {
            if heads.contains_key(l) || tails.contains_key(l) {
                out.push(Violation::LoopClash { label: l.clone() });
            }
        }
        out
    }

    /// Walks the strand starting at `start`, returning `(edge, head pass)`
    /// pairs in traversal order until the walk closes.
    pub fn walk_from(&self, start: &EdgeLabel) -> Vec<(EdgeLabel, StrandPass)> {
        let heads = self.edge_heads();
        let mut out = Vec::new();
        let mut e = start.clone();
        loop {
            let pass = heads[&e];
            out.push((e, pass));
            e = self.crossings[pass.crossing].pass_out(pass.role).clone();
            if &e == start {
                break;
            }
        }
        out
    }

    /// Connected components; deterministic ordering by smallest edge label.
    pub fn components(&self) -> Components {
        let mut remaining = self.edge_labels();
        let mut closed = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let walk = self.walk_from(&start);
            let edges: Vec<EdgeLabel> = walk.into_iter().map(|(e, _)| e).collect();
            for e in &edges {
                remaining.remove(e);
            }
            closed.push(edges);
        }
        closed.sort_by(|a, b| a[0].cmp(&b[0]));
        Components {
            closed,
            free_loops: self.free_loops.iter().cloned().collect(),
        }
    }

    /// Exchanges over and under strands at every crossing and negates all
    /// signs.
    pub fn mirror(&self) -> DiagramCode {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign.flip(),
                over_in: c.under_in.clone(),
                over_out: c.under_out.clone(),
                under_in: c.over_in.clone(),
                under_out: c.over_out.clone(),
            })
            .collect();
        DiagramCode {
            crossings,
            free_loops: self.free_loops.clone(),
        }
    }

    /// Reverses the orientation of every component: each pass swaps its in
    /// and out edges. Signs are unchanged.
    pub fn inverse(&self) -> DiagramCode {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign,
                over_in: c.over_out.clone(),
                over_out: c.over_in.clone(),
                under_in: c.under_out.clone(),
                under_out: c.under_in.clone(),
            })
            .collect();
        DiagramCode {
            crossings,
            free_loops: self.free_loops.clone(),
        }
    }

    /// Switches one crossing (over strand becomes under and vice versa,
    /// sign negated).
    pub fn switch_crossing(&self, i: usize) -> Result<DiagramCode, CodeError> {
        if i >= self.crossings.len() {
            return Err(CodeError::CrossingIndex(i));
        }
        let mut out = self.clone();
        let c = &self.crossings[i];
        out.crossings[i] = Crossing {
            sign: c.sign.flip(),
            over_in: c.under_in.clone(),
            over_out: c.under_out.clone(),
            under_in: c.over_in.clone(),
            under_out: c.over_out.clone(),
        };
        Ok(out)
    }

    /// Oriented smoothing: the crossing is deleted and the strands reconnect
    /// without crossing (over-in continues to under-out, under-in to
    /// over-out).
    pub fn smooth_crossing(&self, i: usize) -> Result<DiagramCode, CodeError> {
        if i >= self.crossings.len() {
            return Err(CodeError::CrossingIndex(i));
        }
        Ok(self.delete_crossings(&BTreeMap::from([(i, ThroughStyle::Crossed)])))
    }

    /// Replaces the classical crossing with a virtual one, which in this
    /// representation simply deletes it: each strand passes straight through.
    pub fn virtualize_crossing(&self, i: usize) -> Result<DiagramCode, CodeError> {
        if i >= self.crossings.len() {
            return Err(CodeError::CrossingIndex(i));
        }
        Ok(self.delete_crossings(&BTreeMap::from([(i, ThroughStyle::Straight)])))
    }

    /// Deletes a set of crossings, reconnecting the strands through each
    /// deleted crossing per its [`ThroughStyle`]. Runs of edges merge into a
    /// single edge keeping the lexicographically smallest label; runs that
    /// close up become free loops.
    pub(crate) fn delete_crossings(&self, victims: &BTreeMap<usize, ThroughStyle>) -> DiagramCode {
        let heads = self.edge_heads();
        let tails = self.edge_tails();
        // Successor of an edge through a deleted crossing, if any.
        let next = |e: &EdgeLabel| -> Option<EdgeLabel> {
            let pass = heads[e];
            victims.get(&pass.crossing).map(|style| {
                let out_role = style.out_role(pass.role);
                self.crossings[pass.crossing].pass_out(out_role).clone()
            })
        };
        let has_pred = |e: &EdgeLabel| -> bool {
            let pass = tails[e];
            victims.contains_key(&pass.crossing)
        };

        let mut rename: HashMap<EdgeLabel, EdgeLabel> = HashMap::new();
        let mut new_loops: BTreeSet<EdgeLabel> = BTreeSet::new();
        let mut seen: BTreeSet<EdgeLabel> = BTreeSet::new();
        for start in self.edge_labels() {
            if seen.contains(&start) {
                continue;
            }
            // Only begin at a chain head or inside a cycle.
            if has_pred(&start) {
                // Walk backwards to decide: if we come back to `start`, it is
                // a cycle and we take it now; otherwise skip (the true head
                // will pick it up).
                let mut e = start.clone();
                let mut cycle = false;
                loop {
                    let pass = tails[&e];
                    if !victims.contains_key(&pass.crossing) {
                        break;
                    }
                    let style = victims[&pass.crossing];
                    let in_role = style.in_role(pass.role);
                    e = self.crossings[pass.crossing].pass_in(in_role).clone();
                    if e == start {
                        cycle = true;
                        break;
                    }
                }
                if !cycle {
                    continue;
                }
                // Collect the cycle.
                let mut members = vec![start.clone()];
                let mut e = next(&start).expect("cycle edge continues");
                while e != start {
                    members.push(e.clone());
                    e = next(&e).expect("cycle edge continues");
                }
                let min = members.iter().min().unwrap().clone();
                for m in members {
                    seen.insert(m);
                }
                new_loops.insert(min);
                continue;
            }
            // Chain starting outside the deleted set.
            let mut members = vec![start.clone()];
            let mut e = start.clone();
            while let Some(n) = next(&e) {
                members.push(n.clone());
                e = n;
            }
            let min = members.iter().min().unwrap().clone();
            for m in &members {
                seen.insert(m.clone());
                rename.insert(m.clone(), min.clone());
            }
        }

        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !victims.contains_key(i))
            .map(|(_, c)| Crossing {
                sign: c.sign,
                over_in: rename[&c.over_in].clone(),
                over_out: rename[&c.over_out].clone(),
                under_in: rename[&c.under_in].clone(),
                under_out: rename[&c.under_out].clone(),
            })
            .collect();
        let mut free_loops = self.free_loops.clone();
        free_loops.extend(new_loops);
        DiagramCode {
            crossings,
            free_loops,
        }
    }

    /// Permutes the crossing list: entry `i` of the result is crossing
    /// `perm[i]` of the input.
    pub fn reorder_crossings(&self, perm: &[usize]) -> Result<DiagramCode, CodeError> {
        let n = self.crossings.len();
        if perm.len() != n {
            return Err(CodeError::BadPermutation(n));
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || hit[p] {
                return Err(CodeError::BadPermutation(n));
            }
            hit[p] = true;
        }
        let crossings = perm.iter().map(|&p| self.crossings[p].clone()).collect();
        Ok(DiagramCode {
            crossings,
            free_loops: self.free_loops.clone(),
        })
    }

    fn all_labels(&self) -> BTreeSet<EdgeLabel> {
        let mut s = self.edge_labels();
        s.extend(self.free_loops.iter().cloned());
        s
    }

    /// Renames `other`'s labels away from this code's, deterministically:
    /// a clashing label gets the first fresh `label_2`, `label_3`, ...
    fn rename_apart(&self, other: &DiagramCode) -> (DiagramCode, HashMap<EdgeLabel, EdgeLabel>) {
        let mine = self.all_labels();
        let theirs = other.all_labels();
        let mut taken: BTreeSet<EdgeLabel> = mine.union(&theirs).cloned().collect();
        let mut map: HashMap<EdgeLabel, EdgeLabel> = HashMap::new();
        for label in &theirs {
            if !mine.contains(label) {
                map.insert(label.clone(), label.clone());
                continue;
            }
            let mut k = 2usize;
            let fresh = loop {
                let candidate = EdgeLabel::raw(format!("{label}_{k}"));
                if !taken.contains(&candidate) {
                    break candidate;
                }
                k += 1;
            };
            taken.insert(fresh.clone());
            map.insert(label.clone(), fresh);
        }
        let crossings = other
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign,
                over_in: map[&c.over_in].clone(),
                over_out: map[&c.over_out].clone(),
                under_in: map[&c.under_in].clone(),
                under_out: map[&c.under_out].clone(),
            })
            .collect();
        let free_loops = other.free_loops.iter().map(|l| map[l].clone()).collect();
        (
            DiagramCode {
                crossings,
                free_loops,
            },
            map,
        )
    }

    /// Side-by-side union; labels of `other` are renamed on collision.
    pub fn disjoint_union(&self, other: &DiagramCode) -> DiagramCode {
        let (renamed, _) = self.rename_apart(other);
        let mut crossings = self.crossings.clone();
        crossings.extend(renamed.crossings);
        let mut free_loops = self.free_loops.clone();
        free_loops.extend(renamed.free_loops);
        DiagramCode {
            crossings,
            free_loops,
        }
    }

    /// Connected sum along one edge (or free loop) of each side: both are
    /// cut and the four ends are rejoined head-to-tail, respecting
    /// orientation. `other`'s labels are renamed on collision first.
    pub fn connected_sum(
        &self,
        mine: &EdgeLabel,
        other: &DiagramCode,
        theirs: &EdgeLabel,
    ) -> Result<DiagramCode, CodeError> {
        let my_edges = self.edge_labels();
        let my_is_loop = self.free_loops.contains(mine);
        if !my_is_loop && !my_edges.contains(mine) {
            return Err(CodeError::UnknownEdge(mine.to_string()));
        }
        let their_is_loop = other.free_loops.contains(theirs);
        if !their_is_loop && !other.edge_labels().contains(theirs) {
            return Err(CodeError::UnknownEdge(theirs.to_string()));
        }
        let (renamed, map) = self.rename_apart(other);
        let theirs = map.get(theirs).cloned().unwrap_or_else(|| theirs.clone());

        let mut crossings = self.crossings.clone();
        let my_offset_heads = self.edge_heads();
        let their_heads = renamed.edge_heads();
        let offset = crossings.len();
        crossings.extend(renamed.crossings.iter().cloned());
        let mut free_loops: BTreeSet<EdgeLabel> = self.free_loops.clone();
        free_loops.extend(renamed.free_loops.iter().cloned());

        match (my_is_loop, their_is_loop) {
            (false, false) => {
                // Cross-wire the two heads: my edge now ends where theirs
                // ended and vice versa.
                let my_head = my_offset_heads[mine];
                let their_head = their_heads[&theirs];
                crossings[offset + their_head.crossing].set_pass_in(their_head.role, mine.clone());
                crossings[my_head.crossing].set_pass_in(my_head.role, theirs.clone());
            }
            (false, true) => {
                // Splicing a bare circle into an edge changes nothing else.
                free_loops.remove(&theirs);
            }
            (true, false) => {
                free_loops.remove(mine);
            }
            (true, true) => {
                // Two circles fuse into one.
                free_loops.remove(mine);
                free_loops.remove(&theirs);
                free_loops.insert(mine.clone().min(theirs));
            }
        }
        Ok(DiagramCode {
            crossings,
            free_loops,
        })
    }
}

/// How strands reconnect through a deleted crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ThroughStyle {
    /// Each strand keeps its own role: over-in to over-out, under-in to
    /// under-out (virtualization, first Reidemeister removal).
    Straight,
    /// Strands trade: over-in to under-out, under-in to over-out (oriented
    /// smoothing).
    Crossed,
}

impl ThroughStyle {
    fn out_role(self, in_role: PassRole) -> PassRole {
        match self {
            ThroughStyle::Straight => in_role,
            ThroughStyle::Crossed => in_role.other(),
        }
    }

    fn in_role(self, out_role: PassRole) -> PassRole {
        match self {
            ThroughStyle::Straight => out_role,
            ThroughStyle::Crossed => out_role.other(),
        }
    }
}

// ---- text formats ----

fn tokens_with_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses the VLD text format and validates the result.
pub fn parse_vld(text: &str) -> Result<DiagramCode, ParseError> {
    let mut crossings = Vec::new();
    let mut free_loops = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let toks = tokens_with_cols(content);
        if toks.is_empty() {
            continue;
        }
        let syntax = |col: usize, msg: String| ParseError::Syntax { line, col, msg };
        match toks[0].1 {
            "X" => {
                if toks.len() != 6 {
                    return Err(syntax(
                        toks[0].0,
                        format!("crossing line needs 6 fields, got {}", toks.len()),
                    ));
                }
                let sign = match toks[1].1 {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    other => {
                        return Err(syntax(
                            toks[1].0,
                            format!("bad sign {other:?}, want + or -"),
                        ))
                    }
                };
                let mut labels = Vec::with_capacity(4);
                for &(col, tok) in &toks[2..6] {
                    match EdgeLabel::new(tok) {
                        Ok(l) => labels.push(l),
                        Err(_) => return Err(syntax(col, format!("bad edge label {tok:?}"))),
                    }
                }
                let under_out = labels.pop().unwrap();
                let under_in = labels.pop().unwrap();
                let over_out = labels.pop().unwrap();
                let over_in = labels.pop().unwrap();
                crossings.push(Crossing::new(sign, over_in, over_out, under_in, under_out));
            }
            "O" => {
                if toks.len() != 2 {
                    return Err(syntax(
                        toks[0].0,
                        format!("free-loop line needs 2 fields, got {}", toks.len()),
                    ));
                }
                let label = EdgeLabel::new(toks[1].1)
                    .map_err(|_| syntax(toks[1].0, format!("bad loop label {:?}", toks[1].1)))?;
                if !free_loops.insert(label.clone()) {
                    return Err(syntax(toks[1].0, format!("duplicate free loop {label}")));
                }
            }
            other => {
                return Err(syntax(toks[0].0, format!("unknown record type {other:?}")));
            }
        }
    }
    if crossings.is_empty() && free_loops.is_empty() {
        return Err(ParseError::Empty);
    }
    let code = DiagramCode {
        crossings,
        free_loops,
    };
    let violations = code.validate();
    if !violations.is_empty() {
        let msg = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(ParseError::Invalid(msg));
    }
    Ok(code)
}

/// Serializes to the VLD text format: crossing lines in order, then free
/// loops sorted by label. `parse_vld` round-trips this exactly.
pub fn serialize_vld(code: &DiagramCode) -> String {
    let mut out = String::new();
    for c in &code.crossings {
        out.push_str(&format!(
            "X {} {} {} {} {}\n",
            c.sign.as_char(),
            c.over_in,
            c.over_out,
            c.under_in,
            c.under_out
        ));
    }
    for l in &code.free_loops {
        out.push_str(&format!("O {l}\n"));
    }
    out
}

/// Parses a signed Gauss code for a single closed component, e.g.
/// `O1+U2+O2+U1+`. Each crossing number must appear exactly once as `O` and
/// once as `U`, with the same sign on both tokens. Traversal edges are
/// labeled `g1..gm` in reading order (edge `gi` runs from token `i` to token
/// `i+1`, wrapping at the end); crossings come out sorted by their number.
pub fn parse_gauss(text: &str) -> Result<DiagramCode, ParseError> {
    struct Token {
        over: bool,
        number: usize,
        sign: Sign,
    }
    let mut toks: Vec<Token> = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((i, ch)) = it.next() {
        let col = i + 1;
        if ch.is_whitespace() {
            continue;
        }
        let over = match ch {
            'O' => true,
            'U' => false,
            other => {
                return Err(ParseError::Syntax {
                    line: 1,
                    col,
                    msg: format!("expected O or U, found {other:?}"),
                })
            }
        };
        let mut number = 0usize;
        let mut digits = 0;
        while let Some(&(_, d)) = it.peek() {
            if let Some(v) = d.to_digit(10) {
                number = number * 10 + v as usize;
                digits += 1;
                it.next();
            } else {
                break;
            }
        }
        if digits == 0 {
            return Err(ParseError::Syntax {
                line: 1,
                col,
                msg: "crossing number missing".to_string(),
            });
        }
        let sign = match it.next() {
            Some((_, '+')) => Sign::Pos,
            Some((_, '-')) => Sign::Neg,
            _ => {
                return Err(ParseError::Syntax {
                    line: 1,
                    col,
                    msg: "crossing sign missing (+ or -)".to_string(),
                })
            }
        };
        toks.push(Token { over, number, sign });
    }
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let m = toks.len();
    let edge = |i: usize| EdgeLabel::raw(format!("g{}", i % m + 1));
    // For token at position i (0-based): incoming edge g_i (wrapping), outgoing g_{i+1}.
    let mut by_number: BTreeMap<usize, (Option<usize>, Option<usize>, Sign)> = BTreeMap::new();
    for (i, t) in toks.iter().enumerate() {
        let entry = by_number.entry(t.number).or_insert((None, None, t.sign));
        let slot = if t.over { &mut entry.0 } else { &mut entry.1 };
        if slot.is_some() {
            return Err(ParseError::Invalid(format!(
                "crossing {} repeats its {} token",
                t.number,
                if t.over { "O" } else { "U" }
            )));
        }
        *slot = Some(i);
        if entry.2 != t.sign {
            return Err(ParseError::Invalid(format!(
                "crossing {} has mismatched signs on O and U",
                t.number
            )));
        }
    }
    let mut crossings = Vec::new();
    for (number, (o, u, sign)) in &by_number {
        let (o, u) = match (o, u) {
            (Some(o), Some(u)) => (*o, *u),
            _ => {
                return Err(ParseError::Invalid(format!(
                    "crossing {number} needs exactly one O and one U token"
                )))
            }
        };
        let prev = |i: usize| edge((i + m - 1) % m);
        crossings.push(Crossing::new(*sign, prev(o), edge(o), prev(u), edge(u)));
    }
    let code = DiagramCode {
        crossings,
        free_loops: BTreeSet::new(),
    };
    debug_assert!(code.validate().is_empty());
    Ok(code)
}

/// Seeded random code: `n` crossings with coin-flipped signs and a uniformly
/// shuffled wiring of the `2n` out-slots onto the `2n` in-slots.
///
/// The construction is pinned so results never change: draw one coin per
/// crossing in index order (odd draw = negative); then Fisher-Yates shuffle
/// (see [`crate::rng`]) the identity map on slot indices `0..2n`, where slot
/// `2i` is crossing `i`'s over slot and `2i+1` its under slot. Edge `e{k+1}`
/// runs from out-slot `k` to in-slot `perm[k]`.
pub fn random_code(n: usize, seed: u64) -> DiagramCode {
    let mut rng = Lcg64::new(seed);
    let signs: Vec<Sign> = (0..n)
        .map(|_| {
            if rng.next_u32() & 1 == 1 {
                Sign::Neg
            } else {
                Sign::Pos
            }
        })
        .collect();
    let mut perm: Vec<usize> = (0..2 * n).collect();
    rng.shuffle(&mut perm);
    let mut crossings: Vec<Crossing> = signs
        .iter()
        .map(|&sign| {
            Crossing::new(
                sign,
                EdgeLabel::raw("tmp".into()),
                EdgeLabel::raw("tmp".into()),
                EdgeLabel::raw("tmp".into()),
                EdgeLabel::raw("tmp".into()),
            )
        })
        .collect();
    for (k, &target) in perm.iter().enumerate() {
        let label = EdgeLabel::raw(format!("e{}", k + 1));
        let out_role = if k % 2 == 0 {
            PassRole::Over
        } else {
            PassRole::Under
        };
        crossings[k / 2].set_pass_out(out_role, label.clone());
        let in_role = if target % 2 == 0 {
            PassRole::Over
        } else {
            PassRole::Under
        };
        crossings[target / 2].set_pass_in(in_role, label);
    }
    let code = DiagramCode {
        crossings,
        free_loops: BTreeSet::new(),
    };
    debug_assert!(code.validate().is_empty());
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lab(s: &str) -> EdgeLabel {
        EdgeLabel::new(s).unwrap()
    }

    #[test]
    fn parse_vt_and_round_trip() {
        let vt = fixtures::vt();
        assert_eq!(vt.n_crossings(), 2);
        assert_eq!(vt.writhe(), 2);
        let text = serialize_vld(&vt);
        assert_eq!(parse_vld(&text).unwrap(), vt);
    }

    #[test]
    fn parse_errors() {
        let e = parse_vld("X + e4 e1 e2 e3\nX + e1 e2").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, .. }), "{e}");
        let e = parse_vld("Y + a b c d\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 1,
                    col: 1,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_vld("X % a b c d\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 1,
                    col: 3,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_vld("").unwrap_err();
        assert_eq!(e, ParseError::Empty);
        let e = parse_vld("# only a comment\n\n").unwrap_err();
        assert_eq!(e, ParseError::Empty);
        // b appears twice as under_in
        let e = parse_vld("X + a a b b\nX + c c b d\n").unwrap_err();
        assert!(matches!(e, ParseError::Invalid(_)), "{e}");
        let e = parse_vld("X + a,b c d e\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { col: 5, .. }), "{e}");
    }

    #[test]
    fn free_loop_lines() {
        let code = parse_vld("O u1\nX + a a b b\n").unwrap();
        assert_eq!(code.free_loops().len(), 1);
        assert!(serialize_vld(&code).contains("O u1\n"));
        let e = parse_vld("O u1\nO u1\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, .. }), "{e}");
        // loop label clashing with an edge label
        let e = parse_vld("X + a a b b\nO a\n").unwrap_err();
        assert!(matches!(e, ParseError::Invalid(_)), "{e}");
    }

    #[test]
    fn gauss_vt_matches_fixture() {
        let from_gauss = parse_gauss("O1+O2+U1+U2+").unwrap();
        // Same wiring as the VT fixture, with g-labels instead of e-labels.
        let vt = fixtures::vt();
        assert_eq!(from_gauss.n_crossings(), vt.n_crossings());
        let text = serialize_vld(&from_gauss);
        assert_eq!(text, "X + g4 g1 g2 g3\nX + g1 g2 g3 g4\n");
    }

    #[test]
    fn gauss_kink() {
        let kink = parse_gauss("O1+U1+").unwrap();
        assert_eq!(serialize_vld(&kink), "X + g2 g1 g1 g2\n");
    }

    #[test]
    fn gauss_errors() {
        assert!(matches!(parse_gauss(""), Err(ParseError::Empty)));
        assert!(matches!(parse_gauss("O1+U2+"), Err(ParseError::Invalid(_))));
        assert!(matches!(parse_gauss("O1+U1-"), Err(ParseError::Invalid(_))));
        assert!(matches!(parse_gauss("O1+O1+"), Err(ParseError::Invalid(_))));
        assert!(matches!(parse_gauss("Q1+"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_gauss("O+"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_gauss("O1"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn components_of_fixtures() {
        let vt = fixtures::vt();
        let c = vt.components();
        assert_eq!(c.count(), 1);
        assert_eq!(
            c.closed[0],
            vec![lab("e1"), lab("e2"), lab("e3"), lab("e4")]
        );
        let vh = fixtures::vh();
        assert_eq!(vh.components().count(), 2);
        let hopf = fixtures::hopf();
        assert_eq!(hopf.components().count(), 2);
        let tref = fixtures::tref();
        assert_eq!(tref.components().count(), 1);
    }

    #[test]
    fn mirror_and_inverse_are_involutions() {
        for code in fixtures::all() {
            assert_eq!(code.mirror().mirror(), code);
            assert_eq!(code.inverse().inverse(), code);
            assert_eq!(code.mirror().writhe(), -code.writhe());
        }
    }

    #[test]
    fn switching_every_crossing_is_mirror() {
        let vt = fixtures::vt();
        let mut acc = vt.clone();
        for i in 0..vt.n_crossings() {
            acc = acc.switch_crossing(i).unwrap();
        }
        assert_eq!(acc, vt.mirror());
        assert!(vt.switch_crossing(99).is_err());
    }

    #[test]
    fn smooth_kink_gives_two_circles() {
        let kink = fixtures::kink();
        let smoothed = kink.smooth_crossing(0).unwrap();
        assert_eq!(smoothed.n_crossings(), 0);
        assert_eq!(smoothed.free_loops().len(), 2);
        assert_eq!(smoothed.components().count(), 2);
    }

    #[test]
    fn smooth_vh_gives_one_circle() {
        let vh = fixtures::vh();
        let smoothed = vh.smooth_crossing(0).unwrap();
        assert_eq!(smoothed.n_crossings(), 0);
        assert_eq!(smoothed.free_loops().len(), 1);
        assert_eq!(smoothed.components().count(), 1);
    }

    #[test]
    fn virtualize_vh_gives_two_circles() {
        let vh = fixtures::vh();
        let v = vh.virtualize_crossing(0).unwrap();
        assert_eq!(v.n_crossings(), 0);
        assert_eq!(v.components().count(), 2);
    }

    #[test]
    fn smooth_on_vt_keeps_one_crossing() {
        let vt = fixtures::vt();
        let s = vt.smooth_crossing(0).unwrap();
        assert_eq!(s.n_crossings(), 1);
        assert!(s.validate().is_empty());
        assert!(vt.smooth_crossing(7).is_err());
    }

    #[test]
    fn disjoint_union_renames_collisions() {
        let vh = fixtures::vh();
        let u = vh.disjoint_union(&vh);
        assert_eq!(u.n_crossings(), 2);
        assert!(u.validate().is_empty());
        let labels = u.all_labels();
        assert!(labels.contains(&lab("a_2")) && labels.contains(&lab("b_2")));
    }

    #[test]
    fn connected_sum_with_circle_is_identity_shaped() {
        let vt = fixtures::vt();
        let circle = parse_vld("O u1\n").unwrap();
        let sum = vt.connected_sum(&lab("e1"), &circle, &lab("u1")).unwrap();
        assert_eq!(sum.n_crossings(), vt.n_crossings());
        assert_eq!(sum.free_loops().len(), 0);
        assert!(sum.validate().is_empty());
        let bad = vt.connected_sum(&lab("zz"), &circle, &lab("u1"));
        assert!(matches!(bad, Err(CodeError::UnknownEdge(_))));
    }

    #[test]
    fn connected_sum_of_two_kinks() {
        let kink = fixtures::kink();
        let sum = kink.connected_sum(&lab("e1"), &kink, &lab("e1")).unwrap();
        assert_eq!(sum.n_crossings(), 2);
        assert!(sum.validate().is_empty());
        assert_eq!(sum.components().count(), 1);
    }

    #[test]
    fn reorder_crossings_checks_permutation() {
        let vt = fixtures::vt();
        let swapped = vt.reorder_crossings(&[1, 0]).unwrap();
        assert_eq!(swapped.crossings()[0], vt.crossings()[1]);
        assert_eq!(swapped.reorder_crossings(&[1, 0]).unwrap(), vt);
        assert!(vt.reorder_crossings(&[0, 0]).is_err());
        assert!(vt.reorder_crossings(&[0]).is_err());
        assert!(vt.reorder_crossings(&[0, 2]).is_err());
    }

    #[test]
    fn random_codes_are_valid_and_reproducible() {
        for n in 1..=6 {
            for seed in 0..8 {
                let a = random_code(n, seed);
                assert!(a.validate().is_empty(), "n={n} seed={seed}");
                assert_eq!(a, random_code(n, seed));
                assert_eq!(a.n_crossings(), n);
            }
        }
        assert_ne!(random_code(4, 1), random_code(4, 2));
    }

    #[test]
    fn random_one_crossing_is_kink_or_hopf_wiring() {
        for seed in 0..32 {
            let c = random_code(1, seed);
            let x = &c.crossings()[0];
            let kink_like = x.over_out == x.under_in && x.under_out == x.over_in;
            let hopf_like = x.over_out == x.over_in && x.under_out == x.under_in;
            assert!(kink_like || hopf_like, "seed {seed}: {}", serialize_vld(&c));
        }
    }

    #[test]
    fn validate_reports_each_violation() {
        // label b enters crossings twice, label d leaves one but never enters
        let code = DiagramCode::from_parts(
            vec![
                Crossing::new(Sign::Pos, lab("a"), lab("a"), lab("b"), lab("c")),
                Crossing::new(Sign::Pos, lab("c"), lab("b"), lab("b"), lab("d")),
            ],
            BTreeSet::from([lab("a")]),
        );
        let v = code.validate();
        assert!(v.contains(&Violation::HeadCount {
            label: lab("b"),
            count: 2
        }));
        assert!(v.contains(&Violation::HeadCount {
            label: lab("d"),
            count: 0
        }));
        assert!(v.contains(&Violation::LoopClash { label: lab("a") }));
    }

    #[test]
    fn bad_labels_rejected() {
        assert!(EdgeLabel::new("").is_err());
        assert!(EdgeLabel::new("a b").is_err());
        assert!(EdgeLabel::new("café").is_err());
        assert!(EdgeLabel::new("e4-x_Y7").is_ok());
    }
}
