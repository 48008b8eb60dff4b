//! Small example categories shipped with the crate, used by tests, benches
//! and the acceptance suite.

use crate::dsl::{load_model, Model};
use crate::relcat::RelCat;

pub const PT: &str = include_str!("../fixtures/pt.spec");
pub const ARR: &str = include_str!("../fixtures/arr.spec");
pub const WEQ: &str = include_str!("../fixtures/weq.spec");
pub const PARA: &str = include_str!("../fixtures/para.spec");
pub const ISO: &str = include_str!("../fixtures/iso.spec");
pub const CYLFIX: &str = include_str!("../fixtures/cylfix.spec");
pub const IDEMFIX: &str = include_str!("../fixtures/idemfix.spec");
pub const CHAIN: &str = include_str!("../fixtures/chain.spec");
pub const PT_ARR: &str = include_str!("../fixtures/pt_arr.spec");

/// Every fixture by file stem.
pub const ALL: &[(&str, &str)] = &[
    ("pt", PT),
    ("arr", ARR),
    ("weq", WEQ),
    ("para", PARA),
    ("iso", ISO),
    ("cylfix", CYLFIX),
    ("idemfix", IDEMFIX),
    ("chain", CHAIN),
    ("pt_arr", PT_ARR),
];

fn load(text: &str) -> Model {
    load_model(text).expect("bundled fixture loads")
}

fn rel(text: &str) -> RelCat {
    load(text).rel.as_ref().clone()
}

pub fn pt() -> RelCat {
    rel(PT)
}

pub fn arr() -> RelCat {
    rel(ARR)
}

pub fn weq() -> RelCat {
    rel(WEQ)
}

pub fn para() -> RelCat {
    rel(PARA)
}

pub fn iso() -> RelCat {
    rel(ISO)
}

pub fn cylfix() -> RelCat {
    rel(CYLFIX)
}

pub fn idemfix() -> RelCat {
    rel(IDEMFIX)
}

pub fn chain() -> RelCat {
    rel(CHAIN)
}

pub fn cylfix_spec() -> Model {
    load(CYLFIX)
}

pub fn idemfix_spec() -> Model {
    load(IDEMFIX)
}

pub fn chain_spec() -> Model {
    load(CHAIN)
}

pub fn pt_arr_spec() -> Model {
    load(PT_ARR)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for (name, text) in ALL {
            assert!(load_model(text).is_ok(), "{name}");
        }
    }
}
