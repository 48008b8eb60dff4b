//! The map `f^*: π₀ map(B,Y) → π₀ map(A,Y)` for `f: A → B`, decided by the
//! word oracle when both hom-sets saturate, else by the stage towers when
//! both stabilize.

use std::sync::Arc;

use serde::Serialize;

use crate::category::Functor;
use crate::fincat::{MorId, ObjId};
use crate::hammock::{induced_precompose, pi0_stage, pi0_tower, HammockStage, TowerVerdict, ZigZag};
use crate::oracle::{localize_hom, Saturation, Word};
use crate::relcat::RelCat;
use crate::theorems::TheoremError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pi0Method {
    Oracle,
    Tower,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi0Map {
    pub map: String,
    pub source: String,
    pub target: String,
    pub method: Option<Pi0Method>,
    pub source_classes: Vec<String>,
    pub target_classes: Vec<String>,
    /// Index in `target_classes` of the image of each source class.
    pub images: Vec<usize>,
    /// `None` when neither method is conclusive.
    pub bijective: Option<bool>,
    pub note: String,
}

fn is_bijection(images: &[usize], target_len: usize) -> bool {
    let mut seen = images.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == images.len() && images.len() == target_len
}

pub fn pi0_precompose(
    rel: &Arc<RelCat>,
    f: MorId,
    y: ObjId,
    bound: usize,
    max_stage: usize,
) -> Result<Pi0Map, TheoremError> {
    let c = rel.cat();
    let (a, b) = (c.source(f), c.target(f));
    let mut out = Pi0Map {
        map: format!("{}^*", c.mor_name(f)),
        source: format!("[{}, {}]", c.obj_name(b), c.obj_name(y)),
        target: format!("[{}, {}]", c.obj_name(a), c.obj_name(y)),
        method: None,
        source_classes: Vec::new(),
        target_classes: Vec::new(),
        images: Vec::new(),
        bijective: None,
        note: String::new(),
    };
    let (from_b, rep_b) = localize_hom(rel, b, y, bound);
    let (from_a, rep_a) = localize_hom(rel, a, y, bound);
    if rep_b.verdict == Saturation::Saturated && rep_a.verdict == Saturation::Saturated {
        let prefix = Word::plain(c, f);
        let images: Option<Vec<usize>> = from_b
            .representatives()
            .iter()
            .map(|(u, _)| {
                let w = prefix.then(u).ok()?;
                from_a.class_position(rel, &w)
            })
            .collect();
        if let Some(images) = images {
            out.method = Some(Pi0Method::Oracle);
            out.bijective = Some(is_bijection(&images, rep_a.classes.len()));
            out.images = images;
            out.source_classes = rep_b.classes;
            out.target_classes = rep_a.classes;
            return Ok(out);
        }
        out.note = "an image word could not be placed within the bound; ".into();
    } else {
        out.note = "hom-sets did not saturate; ".into();
    }

    if max_stage < 3 || max_stage % 2 == 0 {
        out.note.push_str("no tower fallback");
        return Ok(out);
    }
    let tb = pi0_tower(rel, b, y, max_stage, false)?;
    let ta = pi0_tower(rel, a, y, max_stage, false)?;
    if tb.verdict != TowerVerdict::Stable || ta.verdict != TowerVerdict::Stable {
        out.note.push_str("towers did not stabilize");
        return Ok(out);
    }
    // Both towers are stable, so stage max−2 of the source and stage max of
    // the target already compute π₀ of the colimits.
    let lower = HammockStage::new(rel, b, y, max_stage - 2)?;
    let pull = induced_precompose(rel, f, y, max_stage - 2)?;
    let src_blocks = pi0_stage(&lower);
    let tgt_blocks = pi0_stage(pull.target_stage());
    let block_of = |z: &ZigZag| tgt_blocks.iter().position(|blk| blk.binary_search(z).is_ok());
    let images: Vec<usize> = src_blocks
        .iter()
        .map(|blk| block_of(&pull.map_obj(&blk[0])).expect("image lies in the target stage"))
        .collect();
    let show = |blocks: &[Vec<ZigZag>]| -> Vec<String> {
        blocks.iter().map(|blk| blk[0].show(c)).collect()
    };
    out.method = Some(Pi0Method::Tower);
    out.bijective = Some(is_bijection(&images, tgt_blocks.len()));
    out.images = images;
    out.source_classes = show(&src_blocks);
    out.target_classes = show(&tgt_blocks);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn precomposing_with_the_unit() {
        let rel = Arc::new(fixtures::idemfix());
        let c = rel.cat();
        let (w, y) = (c.morphism("w").unwrap(), c.object("Y").unwrap());
        let m = pi0_precompose(&rel, w, y, 6, 7).unwrap();
        assert_eq!(m.method, Some(Pi0Method::Oracle));
        assert_eq!(m.bijective, Some(true));
        assert_eq!((m.source_classes.len(), m.target_classes.len()), (1, 1));
    }

    #[test]
    fn arrow_is_not_inverted() {
        let rel = Arc::new(fixtures::arr());
        let c = rel.cat();
        let (f, y) = (c.morphism("f").unwrap(), c.object("Y").unwrap());
        let m = pi0_precompose(&rel, f, y, 6, 7).unwrap();
        assert_eq!(m.bijective, Some(true));
        let x = c.object("X").unwrap();
        let m = pi0_precompose(&rel, f, x, 6, 7).unwrap();
        // [Y, X] is empty while [X, X] has the identity.
        assert_eq!(m.bijective, Some(false));
    }

    #[test]
    fn parallel_pair_is_unknown() {
        let rel = Arc::new(fixtures::para());
        let c = rel.cat();
        let f = c.morphism("f").unwrap();
        let m = pi0_precompose(&rel, f, c.object("A").unwrap(), 5, 5).unwrap();
        assert_eq!(m.bijective, None);
    }
}
