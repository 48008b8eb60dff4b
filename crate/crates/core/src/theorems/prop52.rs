//! The `L`-equivalences are the maps orthogonal to every `L`-local object,
//! checked on `π₀`.
//!
//! When `L(g)` is a weak equivalence, `g^*: π₀ map(B, LZ) → π₀ map(A, LZ)`
//! must be a bijection. When it is not, some local object `LZ'` should see
//! `g^*` fail to be a bijection; finding one confirms the converse, finding
//! none proves nothing since higher homotopy is invisible here.

use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{MorId, ObjId};
use crate::relcat::{validate_idempotent, IdempotentData, IdempotentVerdict, RelCat};
use crate::theorems::{pi0_precompose, Pi0Map, TheoremError, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct Prop52Report {
    pub map: String,
    pub object: String,
    pub local_object: String,
    /// Whether `L(g)` is a weak equivalence.
    pub l_equivalence: bool,
    /// `g^*` into `LZ`.
    pub forward: Pi0Map,
    /// `g^*` into every local object, when `L(g)` is not a weak equivalence.
    pub converse: Vec<Pi0Map>,
    pub verdict: Verdict,
    pub note: String,
}

pub fn prop52(
    rel: &Arc<RelCat>,
    d: &IdempotentData,
    g: MorId,
    z: ObjId,
    bound: usize,
    max_stage: usize,
) -> Result<Prop52Report, TheoremError> {
    let c = rel.cat();
    if let IdempotentVerdict::Fail { object, reason } = validate_idempotent(rel, d, bound)? {
        return Err(TheoremError::Input(format!(
            "{} is not a homotopy idempotent at {object}: {reason}",
            d.name
        )));
    }
    let l = &d.functor;
    let lz = l.obj(z);
    let l_equivalence = rel.is_weq(l.mor(g));
    let forward = pi0_precompose(rel, g, lz, bound, max_stage)?;
    let mut converse = Vec::new();
    let (verdict, note) = if l_equivalence {
        match forward.bijective {
            Some(true) => (Verdict::Pass, "g^* is a bijection on components".to_string()),
            Some(false) => (
                Verdict::Fail,
                format!("L({}) is a weak equivalence but g^* is not a bijection", c.mor_name(g)),
            ),
            None => (Verdict::Unknown, forward.note.clone()),
        }
    } else {
        let mut locals: Vec<ObjId> = c.object_ids().map(|o| l.obj(o)).collect();
        locals.sort();
        locals.dedup();
        for o in locals {
            converse.push(pi0_precompose(rel, g, o, bound, max_stage)?);
        }
        match converse.iter().position(|m| m.bijective == Some(false)) {
            Some(k) => (
                Verdict::Pass,
                format!(
                    "L({}) is not a weak equivalence and g^* into {} is not a bijection",
                    c.mor_name(g),
                    converse[k].source
                ),
            ),
            None => (
                Verdict::Unknown,
                format!(
                    "L({}) is not a weak equivalence but every local object sees a bijection on components",
                    c.mor_name(g)
                ),
            ),
        }
    };
    Ok(Prop52Report {
        map: c.mor_name(g).to_string(),
        object: c.obj_name(z).to_string(),
        local_object: c.obj_name(lz).to_string(),
        l_equivalence,
        forward,
        converse,
        verdict,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unit_is_an_equivalence() {
        let m = fixtures::idemfix_spec();
        let d = &m.idempotents["I"];
        let c = m.rel.cat();
        let (w, x) = (c.morphism("w").unwrap(), c.object("X").unwrap());
        let r = prop52(&m.rel, d, w, x, 6, 5).unwrap();
        assert!(r.l_equivalence);
        assert_eq!(r.verdict, Verdict::Pass);
        let id = c.id(x);
        assert_eq!(prop52(&m.rel, d, id, x, 6, 5).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn shift_does_not_invert_the_first_arrow() {
        let m = fixtures::chain_spec();
        let d = &m.idempotents["S"];
        let c = m.rel.cat();
        let (f, z) = (c.morphism("f").unwrap(), c.object("Z").unwrap());
        let r = prop52(&m.rel, d, f, z, 6, 5);
        // The shift is not a homotopy idempotent, so it is refused.
        assert!(r.is_err());
    }

    #[test]
    fn identity_idempotent_sees_a_non_bijection() {
        let text = "category ARR\nobject X Y\narrow f : X -> Y\n\
            functor L { obj X => X\n obj Y => Y\n arr f => f }\n\
            nat ell : Id => L { at X : id_X; at Y : id_Y }\n\
            idem I { functor L ell ell }\n";
        let m = crate::dsl::load_model(text).unwrap();
        let c = m.rel.cat();
        let (f, y) = (c.morphism("f").unwrap(), c.object("Y").unwrap());
        let r = prop52(&m.rel, &m.idempotents["I"], f, y, 6, 5).unwrap();
        assert!(!r.l_equivalence);
        assert_eq!(r.converse.len(), 2);
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
