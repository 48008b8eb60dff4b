//! The inclusions `incl_i: L_n(X,Y) → L_{n+2}(X,Y)` inserting identities at
//! `C_i` are all homotopic.
//!
//! Adjacent inclusions are joined by a single transformation whose
//! verticals are identities except `d_i` at positions `i+1` and `i+2`. It
//! runs `incl_i ⇒ incl_{i+1}` when `d_i` points forward (odd `i`) and
//! `incl_{i+1} ⇒ incl_i` when it points backward (even `i`). A certificate
//! from `incl_i` to `incl_j` chains `|i − j|` such steps.

use std::sync::Arc;

use crate::category::Functor;
use crate::fincat::{MorId, ObjId};
use crate::hammock::{stage_inclusion, HammockStage, Ladder, Position, StageFunctor};
use crate::homcert::{Certificate, Direction, StageCertificate, Step};
use crate::natural::NatTrans;
use crate::relcat::RelCat;
use crate::theorems::TheoremError;

/// The transformation between `incl_i` and `incl_{i+1}` in its natural
/// direction, with the direction to read it from `incl_i`.
fn adjacent(
    stage: &HammockStage,
    incl: &[StageFunctor],
    i: usize,
) -> (Direction, NatTrans<StageFunctor>) {
    let c = stage.cat();
    let forward = i % 2 == 1;
    let (from, to) = if forward {
        (&incl[i], &incl[i + 1])
    } else {
        (&incl[i + 1], &incl[i])
    };
    let nat = NatTrans::from_fn(
        stage.exec(),
        &format!("incl_{i}~incl_{}", i + 1),
        from,
        to,
        |z| {
            let source = from.map_obj(z);
            let mut verticals: Vec<MorId> =
                source.objects(c).into_iter().map(|o| c.id(o)).collect();
            verticals[i + 1] = z.arrows[i];
            verticals[i + 2] = z.arrows[i];
            Ladder {
                source,
                target: to.map_obj(z),
                verticals,
            }
        },
    );
    let direction = if forward {
        Direction::Forward
    } else {
        Direction::Backward
    };
    (direction, nat)
}

/// All inclusions out of `L_n(X,Y)`, indexed by position.
pub fn inclusions(stage: &HammockStage) -> Result<Vec<StageFunctor>, TheoremError> {
    (0..=stage.stage())
        .map(|i| Ok(stage_inclusion(stage, Position::FromStart(i))?))
        .collect()
}

/// A certificate `incl_i ≃ incl_j` of length `|i − j|`.
pub fn rmk33(
    rel: &Arc<RelCat>,
    x: ObjId,
    y: ObjId,
    n: usize,
    i: usize,
    j: usize,
) -> Result<StageCertificate, TheoremError> {
    let stage = HammockStage::new(rel, x, y, n)?;
    rmk33_on(&stage, i, j)
}

pub fn rmk33_on(stage: &HammockStage, i: usize, j: usize) -> Result<StageCertificate, TheoremError> {
    let n = stage.stage();
    if i > n || j > n {
        return Err(TheoremError::Input(format!(
            "positions {i} and {j} must be at most {n}"
        )));
    }
    let incl = inclusions(stage)?;
    let mut steps = Vec::new();
    if i < j {
        for k in i..j {
            let (direction, nat) = adjacent(stage, &incl, k);
            steps.push(Step { direction, nat });
        }
    } else {
        for k in (j..i).rev() {
            let (direction, nat) = adjacent(stage, &incl, k);
            let direction = match direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            };
            steps.push(Step { direction, nat });
        }
    }
    Ok(Certificate {
        start: incl[i].clone(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use crate::fixtures;

    #[test]
    fn every_pair_on_small_fixtures() {
        for rel in [fixtures::arr(), fixtures::weq(), fixtures::iso(), fixtures::idemfix()] {
            let rel = Arc::new(rel);
            for x in rel.cat().object_ids() {
                for y in rel.cat().object_ids() {
                    for n in [1, 3] {
                        let stage = HammockStage::new(&rel, x, y, n).unwrap();
                        let incl = inclusions(&stage).unwrap();
                        for i in 0..=n {
                            for j in 0..=n {
                                let cert = rmk33_on(&stage, i, j).unwrap();
                                assert_eq!(cert.len(), i.abs_diff(j));
                                cert.verify_between(&incl[i], &incl[j]).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn directions_alternate() {
        let rel = Arc::new(fixtures::weq());
        let x = rel.cat().object("X").unwrap();
        let cert = rmk33(&rel, x, x, 3, 0, 3).unwrap();
        assert_eq!(
            cert.shape(),
            [Direction::Backward, Direction::Forward, Direction::Backward]
        );
        let back = rmk33(&rel, x, x, 3, 3, 0).unwrap();
        assert_eq!(back.shape(), cert.reversed().shape());
        assert!(rmk33(&rel, x, x, 3, 0, 4).is_err());
    }

    #[test]
    fn identity_verticals_do_not_suffice() {
        let rel = Arc::new(fixtures::arr());
        let (x, y) = (rel.cat().object("X").unwrap(), rel.cat().object("Y").unwrap());
        let stage = HammockStage::new(&rel, x, y, 3).unwrap();
        let mut cert = rmk33_on(&stage, 1, 2).unwrap();
        assert!(!stage.objects().is_empty());
        for l in cert.steps[0].nat.components.values_mut() {
            let c = stage.cat();
            l.verticals = l.source.objects(c).into_iter().map(|o| c.id(o)).collect();
        }
        assert!(cert.verify().is_err());
    }
}
