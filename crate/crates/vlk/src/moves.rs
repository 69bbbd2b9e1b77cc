//! Oriented Reidemeister moves I, II, III on diagram codes.
//!
//! Purely virtual moves (detour moves) do not change a crossing code at all,
//! so the three classical moves generate every deformation this
//! representation can see. A move instance is described by a [`MoveSite`];
//! sites can be enumerated deterministically, applied (with full pattern
//! re-validation), serialized to a line-based log, and chained into seeded
//! random walks for invariance testing.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{Crossing, DiagramCode, EdgeLabel, PassRole, Sign, ThroughStyle};
use crate::rng::Lcg64;

/// The four kink shapes a first Reidemeister move can insert: a sign and
/// whether the strand crosses over itself first (`over_first`: the kink edge
/// runs from the over-out slot back into the under-in slot) or under first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct R1Variant {
    pub sign: Sign,
    pub over_first: bool,
}

impl R1Variant {
    pub const ALL: [R1Variant; 4] = [
        R1Variant {
            sign: Sign::Pos,
            over_first: true,
        },
        R1Variant {
            sign: Sign::Pos,
            over_first: false,
        },
        R1Variant {
            sign: Sign::Neg,
            over_first: true,
        },
        R1Variant {
            sign: Sign::Neg,
            over_first: false,
        },
    ];

    pub fn token(self) -> &'static str {
        match (self.sign, self.over_first) {
            (Sign::Pos, true) => "pos_over_first",
            (Sign::Pos, false) => "pos_under_first",
            (Sign::Neg, true) => "neg_over_first",
            (Sign::Neg, false) => "neg_under_first",
        }
    }

    pub fn from_token(s: &str) -> Option<R1Variant> {
        R1Variant::ALL.into_iter().find(|v| v.token() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1_add",
            MoveKind::R1Remove => "R1_remove",
            MoveKind::R2Add => "R2_add",
            MoveKind::R2Remove => "R2_remove",
            MoveKind::R3 => "R3",
        }
    }
}

/// One concrete move instance.
///
/// `R2Add` threads the `over` strand across the `under` strand (each an edge
/// or free-loop label; they may coincide for a self-poke): `parallel` means
/// the under strand visits the two new crossings in the same order as the
/// over strand, and `first_sign` is the sign of the first new crossing (the
/// second gets the opposite). `R3` slides the strand that is over at
/// crossings `u` and `v` across the third crossing `w`; `diverging` selects
/// the pattern where the three inner edges point away from it instead of
/// toward it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSite {
    R1Add {
        strand: EdgeLabel,
        variant: R1Variant,
    },
    R1Remove {
        crossing: usize,
    },
    R2Add {
        over: EdgeLabel,
        under: EdgeLabel,
        parallel: bool,
        first_sign: Sign,
    },
    R2Remove {
        first: usize,
        second: usize,
    },
    R3 {
        u: usize,
        v: usize,
        w: usize,
        diverging: bool,
    },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    /// One line of the move-log format, without the trailing newline.
    pub fn to_log_line(&self) -> String {
        match self {
            MoveSite::R1Add { strand, variant } => {
                format!("MOVE R1_add {strand} {}", variant.token())
            }
            MoveSite::R1Remove { crossing } => format!("MOVE R1_remove {crossing}"),
            MoveSite::R2Add {
                over,
                under,
                parallel,
                first_sign,
            } => format!(
                "MOVE R2_add {over} {under} {} {}",
                if *parallel {
                    "parallel"
                } else {
                    "antiparallel"
                },
                first_sign.as_char()
            ),
            MoveSite::R2Remove { first, second } => format!("MOVE R2_remove {first} {second}"),
            MoveSite::R3 { u, v, w, diverging } => format!(
                "MOVE R3 {u} {v} {w} {}",
                if *diverging {
                    "diverging"
                } else {
                    "converging"
                }
            ),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("no edge or loop named {0:?}")]
    UnknownStrand(String),
    #[error("not an applicable site: {0}")]
    NotASite(String),
    #[error("move log line {line}: {msg}")]
    BadLog { line: usize, msg: String },
}

fn strand_labels(code: &DiagramCode) -> BTreeSet<EdgeLabel> {
    let mut s = code.edge_labels();
    s.extend(code.free_loops().iter().cloned());
    s
}

fn fresh_label(taken: &mut BTreeSet<EdgeLabel>) -> EdgeLabel {
    for k in 1usize.. {
        let candidate = EdgeLabel::raw(format!("m{k}"));
        if !taken.contains(&candidate) {
            taken.insert(candidate.clone());
            return candidate;
        }
    }
    unreachable!()
}

fn placeholder_crossing(sign: Sign) -> Crossing {
    let t = || EdgeLabel::raw("m0".into());
    Crossing::new(sign, t(), t(), t(), t())
}

/// Cuts the strand carrying `label` (an edge, or a free loop) and threads it
/// through `visits` -- in/out slot pairs of freshly appended crossings --
/// creating fresh `m`-labeled edges between consecutive visits. For an edge,
/// the label keeps its tail and the final fresh edge takes over its old head
/// slot (searched among the first `n_old` crossings); for a loop, the label
/// itself becomes the closing edge from the last visit back to the first.
fn thread_strand(
    crossings: &mut [Crossing],
    free_loops: &mut BTreeSet<EdgeLabel>,
    taken: &mut BTreeSet<EdgeLabel>,
    n_old: usize,
    label: &EdgeLabel,
    visits: &[(usize, PassRole)],
) -> Result<(), MoveError> {
    let first = visits[0];
    let last = *visits.last().expect("at least one visit");
    let was_loop = free_loops.remove(label);
    let old_head = if was_loop {
        None
    } else {
        let mut found = None;
        'search: for (i, c) in crossings[..n_old].iter().enumerate() {
            for role in [PassRole::Over, PassRole::Under] {
                if c.pass_in(role) == label {
                    found = Some((i, role));
                    break 'search;
                }
            }
        }
        match found {
            Some(h) => Some(h),
            None => return Err(MoveError::UnknownStrand(label.to_string())),
        }
    };
    crossings[first.0].set_pass_in(first.1, label.clone());
    for k in 0..visits.len() - 1 {
        let m = fresh_label(taken);
        crossings[visits[k].0].set_pass_out(visits[k].1, m.clone());
        crossings[visits[k + 1].0].set_pass_in(visits[k + 1].1, m);
    }
    match old_head {
        None => {
            // Loop: close the circle with the original label.
            crossings[last.0].set_pass_out(last.1, label.clone());
        }
        Some((hc, hrole)) => {
            let f = fresh_label(taken);
            crossings[last.0].set_pass_out(last.1, f.clone());
            crossings[hc].set_pass_in(hrole, f);
        }
    }
    Ok(())
}

/// Everything the R3 rewiring needs, read off a matched triangle.
struct R3Match {
    p: EdgeLabel,
    q: EdgeLabel,
    r: EdgeLabel,
    a_in: EdgeLabel,
    a_out: EdgeLabel,
    b_in: EdgeLabel,
    b_out: EdgeLabel,
    c_in: EdgeLabel,
    c_out: EdgeLabel,
    /// Role of the `q`-strand at crossing `w` (the `r`-strand takes the other).
    x_role: PassRole,
}

/// Matches the oriented triangle pattern at crossings `(u, v, w)`.
///
/// Converging: edges `p: v.over_out -> u.over_in`, `q: w -> u.under_in`,
/// `r: w -> v.under_in`. Diverging is the mirror-in-time pattern with all
/// three inner edges leaving instead of entering. The triangle is only a
/// legal slide when the signs fit: `u` and `v` share a sign `s`, and `w` has
/// sign `s` exactly when the `q`-strand passes over at `w`.
fn match_r3(
    code: &DiagramCode,
    u: usize,
    v: usize,
    w: usize,
    diverging: bool,
) -> Result<R3Match, MoveError> {
    let n = code.n_crossings();
    for &i in &[u, v, w] {
        if i >= n {
            return Err(MoveError::CrossingIndex(i));
        }
    }
    if u == v || u == w || v == w {
        return Err(MoveError::NotASite(
            "R3 needs three distinct crossings".into(),
        ));
    }
    let cs = code.crossings();
    let (cu, cv, cw) = (&cs[u], &cs[v], &cs[w]);
    let role_of_w_edge = |edge: &EdgeLabel, end_in: bool| -> Option<PassRole> {
        for role in [PassRole::Over, PassRole::Under] {
            let slot = if end_in {
                cw.pass_in(role)
            } else {
                cw.pass_out(role)
            };
            if slot == edge {
                return Some(role);
            }
        }
        None
    };
    let (p, q, r, x_role) = if !diverging {
        let p = cv.over_out.clone();
        if cu.over_in != p {
            return Err(MoveError::NotASite(
                "over strand does not run v -> u".into(),
            ));
        }
        let q = cu.under_in.clone();
        let x_role = role_of_w_edge(&q, false)
            .ok_or_else(|| MoveError::NotASite("u's under edge does not come from w".into()))?;
        let r = cv.under_in.clone();
        let y_role = role_of_w_edge(&r, false)
            .ok_or_else(|| MoveError::NotASite("v's under edge does not come from w".into()))?;
        if y_role == x_role {
            return Err(MoveError::NotASite(
                "both inner edges leave w on the same strand".into(),
            ));
        }
        (p, q, r, x_role)
    } else {
        let p = cu.over_out.clone();
        if cv.over_in != p {
            return Err(MoveError::NotASite(
                "over strand does not run u -> v".into(),
            ));
        }
        let q = cu.under_out.clone();
        let x_role = role_of_w_edge(&q, true)
            .ok_or_else(|| MoveError::NotASite("u's under edge does not enter w".into()))?;
        let r = cv.under_out.clone();
        let y_role = role_of_w_edge(&r, true)
            .ok_or_else(|| MoveError::NotASite("v's under edge does not enter w".into()))?;
        if y_role == x_role {
            return Err(MoveError::NotASite(
                "both inner edges enter w on the same strand".into(),
            ));
        }
        (p, q, r, x_role)
    };
    if cu.sign != cv.sign {
        return Err(MoveError::NotASite("u and v must share a sign".into()));
    }
    let want_w = if x_role == PassRole::Over {
        cu.sign
    } else {
        cu.sign.flip()
    };
    if cw.sign != want_w {
        return Err(MoveError::NotASite(
            "w's sign does not fit the over/under pattern".into(),
        ));
    }
    let y_role = x_role.other();
    let m = if !diverging {
        R3Match {
            a_in: cv.over_in.clone(),
            a_out: cu.over_out.clone(),
            b_in: cw.pass_in(x_role).clone(),
            b_out: cu.under_out.clone(),
            c_in: cw.pass_in(y_role).clone(),
            c_out: cv.under_out.clone(),
            p,
            q,
            r,
            x_role,
        }
    } else {
        R3Match {
            a_in: cu.over_in.clone(),
            a_out: cv.over_out.clone(),
            b_in: cu.under_in.clone(),
            b_out: cw.pass_out(x_role).clone(),
            c_in: cv.under_in.clone(),
            c_out: cw.pass_out(y_role).clone(),
            p,
            q,
            r,
            x_role,
        }
    };
    Ok(m)
}

/// Applies a move, re-validating that `site` matches the code.
pub fn apply_move(code: &DiagramCode, site: &MoveSite) -> Result<DiagramCode, MoveError> {
    let result = match site {
        MoveSite::R1Add { strand, variant } => {
            let labels = strand_labels(code);
            if !labels.contains(strand) {
                return Err(MoveError::UnknownStrand(strand.to_string()));
            }
            let mut crossings = code.crossings().to_vec();
            let mut loops = code.free_loops().clone();
            let mut taken = labels;
            let n = crossings.len();
            crossings.push(placeholder_crossing(variant.sign));
            let visits = if variant.over_first {
                [(n, PassRole::Over), (n, PassRole::Under)]
            } else {
                [(n, PassRole::Under), (n, PassRole::Over)]
            };
            thread_strand(&mut crossings, &mut loops, &mut taken, n, strand, &visits)?;
            DiagramCode::from_parts(crossings, loops)
        }
        MoveSite::R1Remove { crossing } => {
            let i = *crossing;
            if i >= code.n_crossings() {
                return Err(MoveError::CrossingIndex(i));
            }
            let c = &code.crossings()[i];
            if c.over_out != c.under_in && c.under_out != c.over_in {
                return Err(MoveError::NotASite(format!(
                    "crossing {i} is not a kink (its passes share no edge)"
                )));
            }
            code.delete_crossings(&std::collections::BTreeMap::from([(
                i,
                ThroughStyle::Straight,
            )]))
        }
        MoveSite::R2Add {
            over,
            under,
            parallel,
            first_sign,
        } => {
            let labels = strand_labels(code);
            for s in [over, under] {
                if !labels.contains(s) {
                    return Err(MoveError::UnknownStrand(s.to_string()));
                }
            }
            let mut crossings = code.crossings().to_vec();
            let mut loops = code.free_loops().clone();
            let mut taken = labels;
            let n = crossings.len();
            crossings.push(placeholder_crossing(*first_sign));
            crossings.push(placeholder_crossing(first_sign.flip()));
            let (o, u) = (PassRole::Over, PassRole::Under);
            if over == under {
                let visits: [(usize, PassRole); 4] = if *parallel {
                    [(n, o), (n + 1, o), (n, u), (n + 1, u)]
                } else {
                    [(n, o), (n + 1, o), (n + 1, u), (n, u)]
                };
                thread_strand(&mut crossings, &mut loops, &mut taken, n, over, &visits)?;
            } else {
                thread_strand(
                    &mut crossings,
                    &mut loops,
                    &mut taken,
                    n,
                    over,
                    &[(n, o), (n + 1, o)],
                )?;
                let under_visits = if *parallel {
                    [(n, u), (n + 1, u)]
                } else {
                    [(n + 1, u), (n, u)]
                };
                thread_strand(
                    &mut crossings,
                    &mut loops,
                    &mut taken,
                    n,
                    under,
                    &under_visits,
                )?;
            }
            DiagramCode::from_parts(crossings, loops)
        }
        MoveSite::R2Remove { first, second } => {
            let (i, j) = (*first, *second);
            let n = code.n_crossings();
            if i >= n {
                return Err(MoveError::CrossingIndex(i));
            }
            if j >= n {
                return Err(MoveError::CrossingIndex(j));
            }
            if i == j {
                return Err(MoveError::NotASite(
                    "R2 removal needs two distinct crossings".into(),
                ));
            }
            let (c, d) = (&code.crossings()[i], &code.crossings()[j]);
            if c.sign != d.sign.flip() {
                return Err(MoveError::NotASite(
                    "clasp crossings must have opposite signs".into(),
                ));
            }
            if c.over_out != d.over_in {
                return Err(MoveError::NotASite(
                    "over strand does not run directly from first to second".into(),
                ));
            }
            if c.under_out != d.under_in && d.under_out != c.under_in {
                return Err(MoveError::NotASite(
                    "under strand does not connect the pair directly".into(),
                ));
            }
            code.delete_crossings(&std::collections::BTreeMap::from([
                (i, ThroughStyle::Straight),
                (j, ThroughStyle::Straight),
            ]))
        }
        MoveSite::R3 { u, v, w, diverging } => {
            let m = match_r3(code, *u, *v, *w, *diverging)?;
            let mut crossings = code.crossings().to_vec();
            let y_role = m.x_role.other();
            if !*diverging {
                crossings[*u].over_in = m.a_in;
                crossings[*u].over_out = m.p.clone();
                crossings[*u].under_in = m.b_in;
                crossings[*u].under_out = m.q.clone();
                crossings[*v].over_in = m.p;
                crossings[*v].over_out = m.a_out;
                crossings[*v].under_in = m.c_in;
                crossings[*v].under_out = m.r.clone();
                crossings[*w].set_pass_in(m.x_role, m.q);
                crossings[*w].set_pass_out(m.x_role, m.b_out);
                crossings[*w].set_pass_in(y_role, m.r);
                crossings[*w].set_pass_out(y_role, m.c_out);
            } else {
                crossings[*u].over_in = m.p.clone();
                crossings[*u].over_out = m.a_out;
                crossings[*u].under_in = m.q.clone();
                crossings[*u].under_out = m.b_out;
                crossings[*v].over_in = m.a_in;
                crossings[*v].over_out = m.p;
                crossings[*v].under_in = m.r.clone();
                crossings[*v].under_out = m.c_out;
                crossings[*w].set_pass_in(m.x_role, m.b_in);
                crossings[*w].set_pass_out(m.x_role, m.q);
                crossings[*w].set_pass_in(y_role, m.c_in);
                crossings[*w].set_pass_out(y_role, m.r);
            }
            DiagramCode::from_parts(crossings, code.free_loops().clone())
        }
    };
    debug_assert!(
        result.validate().is_empty(),
        "move produced an invalid code"
    );
    Ok(result)
}

/// Complete, deterministically ordered list of applicable sites of one kind.
pub fn enumerate_sites(code: &DiagramCode, kind: MoveKind) -> Vec<MoveSite> {
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Add => {
            for strand in strand_labels(code) {
                for variant in R1Variant::ALL {
                    out.push(MoveSite::R1Add {
                        strand: strand.clone(),
                        variant,
                    });
                }
            }
        }
        MoveKind::R1Remove => {
            for (i, c) in code.crossings().iter().enumerate() {
                if c.over_out == c.under_in || c.under_out == c.over_in {
                    out.push(MoveSite::R1Remove { crossing: i });
                }
            }
        }
        MoveKind::R2Add => {
            let labels = strand_labels(code);
            for over in &labels {
                for under in &labels {
                    for parallel in [true, false] {
                        for first_sign in [Sign::Pos, Sign::Neg] {
                            out.push(MoveSite::R2Add {
                                over: over.clone(),
                                under: under.clone(),
                                parallel,
                                first_sign,
                            });
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove => {
            let n = code.n_crossings();
            for i in 0..n {
                for j in 0..n {
                    let site = MoveSite::R2Remove {
                        first: i,
                        second: j,
                    };
                    if i != j && apply_move(code, &site).is_ok() {
                        out.push(site);
                    }
                }
            }
        }
        MoveKind::R3 => {
            let n = code.n_crossings();
            for u in 0..n {
                for v in 0..n {
                    for w in 0..n {
                        for diverging in [false, true] {
                            if match_r3(code, u, v, w, diverging).is_ok() {
                                out.push(MoveSite::R3 { u, v, w, diverging });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Serializes a move sequence, one `MOVE ...` line each.
pub fn log_to_string(log: &[MoveSite]) -> String {
    let mut s = String::new();
    for site in log {
        s.push_str(&site.to_log_line());
        s.push('\n');
    }
    s
}

/// Parses the move-log format produced by [`log_to_string`].
pub fn parse_move_log(text: &str) -> Result<Vec<MoveSite>, MoveError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let bad = |msg: &str| MoveError::BadLog {
            line,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks[0] != "MOVE" {
            return Err(bad("expected line to start with MOVE"));
        }
        let index = |s: &str| s.parse::<usize>().map_err(|_| bad("bad crossing index"));
        let label = |s: &str| EdgeLabel::new(s).map_err(|_| bad("bad edge label"));
        let site = match (toks.get(1).copied(), toks.len()) {
            (Some("R1_add"), 4) => MoveSite::R1Add {
                strand: label(toks[2])?,
                variant: R1Variant::from_token(toks[3]).ok_or_else(|| bad("bad R1 variant"))?,
            },
            (Some("R1_remove"), 3) => MoveSite::R1Remove {
                crossing: index(toks[2])?,
            },
            (Some("R2_add"), 6) => MoveSite::R2Add {
                over: label(toks[2])?,
                under: label(toks[3])?,
                parallel: match toks[4] {
                    "parallel" => true,
                    "antiparallel" => false,
                    _ => return Err(bad("expected parallel or antiparallel")),
                },
                first_sign: match toks[5] {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    _ => return Err(bad("expected + or -")),
                },
            },
            (Some("R2_remove"), 4) => MoveSite::R2Remove {
                first: index(toks[2])?,
                second: index(toks[3])?,
            },
            (Some("R3"), 6) => MoveSite::R3 {
                u: index(toks[2])?,
                v: index(toks[3])?,
                w: index(toks[4])?,
                diverging: match toks[5] {
                    "converging" => false,
                    "diverging" => true,
                    _ => return Err(bad("expected converging or diverging")),
                },
            },
            _ => return Err(bad("unrecognized move line")),
        };
        out.push(site);
    }
    Ok(out)
}

/// Outcome of a random walk: the deformed code and the moves that produced
/// it, in order.
#[derive(Debug, Clone)]
pub struct WalkResult {
    pub code: DiagramCode,
    pub log: Vec<MoveSite>,
}

/// Seeded random walk with the default crossing budget (input + 16).
pub fn random_walk(code: &DiagramCode, steps: usize, seed: u64) -> WalkResult {
    random_walk_capped(code, steps, seed, code.n_crossings() + 16)
}

/// Seeded random walk: each step draws a move kind uniformly, redraws (up to
/// 16 times) when the kind has no applicable site or would exceed
/// `max_crossings`, then applies a uniformly chosen site of that kind. Steps
/// whose redraws are exhausted are skipped, so the log may be shorter than
/// `steps`.
pub fn random_walk_capped(
    code: &DiagramCode,
    steps: usize,
    seed: u64,
    max_crossings: usize,
) -> WalkResult {
    let mut rng = Lcg64::new(seed);
    let mut current = code.clone();
    let mut log = Vec::new();
    for _ in 0..steps {
        for _retry in 0..16 {
            let kind = MoveKind::ALL[rng.below(MoveKind::ALL.len())];
            let n = current.n_crossings();
            let over_budget = match kind {
                MoveKind::R1Add => n + 1 > max_crossings,
                MoveKind::R2Add => n + 2 > max_crossings,
                _ => false,
            };
            if over_budget {
                continue;
            }
            let sites = enumerate_sites(&current, kind);
            if sites.is_empty() {
                continue;
            }
            let site = sites[rng.below(sites.len())].clone();
            current = apply_move(&current, &site).expect("enumerated site must apply");
            log.push(site);
            break;
        }
    }
    WalkResult { code: current, log }
}
