//! Named example diagrams shared by tests, docs, and the CLI docs.
//!
//! The raw `.vld` sources live in `fixtures/` at the crate root so the CLI
//! integration tests can feed the same bytes through the binary.

use crate::diagram::{parse_vld, DiagramCode};

pub const VT_VLD: &str = include_str!("../fixtures/vt.vld");
pub const VH_VLD: &str = include_str!("../fixtures/vh.vld");
pub const KINK_VLD: &str = include_str!("../fixtures/kink.vld");
pub const TREF_VLD: &str = include_str!("../fixtures/tref.vld");
pub const HOPF_VLD: &str = include_str!("../fixtures/hopf.vld");
pub const R2PAIR_VLD: &str = include_str!("../fixtures/r2pair.vld");
pub const FIG8_VLD: &str = include_str!("../fixtures/fig8.vld");

/// Gauss-code sources for the single-component classical fixtures; tests pin
/// that converting these reproduces the corresponding `.vld` files.
pub const TREF_GAUSS: &str = "O1+U2+O3+U1+O2+U3+";
pub const FIG8_GAUSS: &str = "O1+U2-O3-U1+O4+U3-O2-U4+";

/// Two-crossing virtual trefoil pattern (one component, writhe 2).
pub fn vt() -> DiagramCode {
    parse_vld(VT_VLD).expect("fixture parses")
}

/// One-crossing virtual Hopf pattern (two components, writhe 1).
pub fn vh() -> DiagramCode {
    parse_vld(VH_VLD).expect("fixture parses")
}

/// Unknot with a single positive kink.
pub fn kink() -> DiagramCode {
    parse_vld(KINK_VLD).expect("fixture parses")
}

/// Classical right-handed trefoil.
pub fn tref() -> DiagramCode {
    parse_vld(TREF_VLD).expect("fixture parses")
}

/// Classical positive Hopf link.
pub fn hopf() -> DiagramCode {
    parse_vld(HOPF_VLD).expect("fixture parses")
}

/// Two-component unlink drawn with one removable clasp.
pub fn r2pair() -> DiagramCode {
    parse_vld(R2PAIR_VLD).expect("fixture parses")
}

/// Classical figure-eight knot.
pub fn fig8() -> DiagramCode {
    parse_vld(FIG8_VLD).expect("fixture parses")
}

/// All fixtures, for sweep-style tests.
pub fn all() -> Vec<DiagramCode> {
    vec![vt(), vh(), kink(), tref(), hopf(), r2pair(), fig8()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gauss;

    #[test]
    fn gauss_sources_match_vld_files() {
        assert_eq!(parse_gauss(TREF_GAUSS).unwrap(), tref());
        assert_eq!(parse_gauss(FIG8_GAUSS).unwrap(), fig8());
    }

    #[test]
    fn fixtures_are_valid() {
        for code in all() {
            assert!(code.validate().is_empty());
        }
    }
}
