//! The shared example systems shipped with the crate, compiled in from the
//! `fixtures/` directory. Tests, examples and the benchmark harness all load
//! them through these helpers.

use crate::io::{parse_lts, parse_pn};
use crate::lts::Lts;
use crate::petri::PetriNet;

macro_rules! lts_fixture {
    ($name:ident, $file:literal) => {
        pub fn $name() -> Lts {
            parse_lts(include_str!(concat!("../fixtures/", $file))).expect("fixture parses")
        }
    };
}

lts_fixture!(chain_a, "chain_a.lts");
lts_fixture!(chain_bb, "chain_bb.lts");
lts_fixture!(grid6, "grid6.lts");
lts_fixture!(abc2, "abc2.lts");
lts_fixture!(def2, "def2.lts");
lts_fixture!(gh2, "gh2.lts");
lts_fixture!(fig9_ts3, "fig9_ts3.lts");
lts_fixture!(fig9_ts4, "fig9_ts4.lts");
lts_fixture!(aabb, "aabb.lts");
lts_fixture!(cycles4, "cycles4.lts");
lts_fixture!(bigfix, "bigfix.lts");
lts_fixture!(seqdiamond, "seqdiamond.lts");
lts_fixture!(fig7_left, "fig7left.lts");
lts_fixture!(fig7_right, "fig7right.lts");
lts_fixture!(fig15, "fig15.lts");
lts_fixture!(ts21, "ts21.lts");
lts_fixture!(unsolvable2, "unsolvable2.lts");

/// The published net solution of [`ts21`].
pub fn net21() -> PetriNet {
    parse_pn(include_str!("../fixtures/net21.pn")).expect("fixture parses")
}
