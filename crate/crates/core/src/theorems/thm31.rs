//! Left homotopic maps induce homotopic maps on hammock stages.
//!
//! For `H: Cyl(A) → B` with `H∘i0 = f` and `H∘i1 = g`, the functors
//! `f_*, g_*: L_n(X,A) → L_{n+2}(X,B)` are joined through
//! `H̃ = (− ← Cyl(A) → B ← B)`:
//!
//! ```text
//!   f_*  ⇒  H̃  ⇐  g_*
//! ```
//!
//! with verticals the identity except `i0` (resp. `i1`) at `C_n`.

use std::sync::Arc;

use crate::category::Functor;
use crate::fincat::{MorId, ObjId};
use crate::hammock::{
    induced_postcompose, HammockStage, Ladder, Position, StageFunctor, StageStep, ZigZag,
};
use crate::homcert::{Certificate, Direction, Step};
use crate::natural::NatTrans;
use crate::relcat::{LeftHomotopyData, RelCat};
use crate::theorems::{odd_stages, StageWitness, StageWitnessFamily, TheoremError};

/// `z ↦ z · (A ←p Cyl(A) →H B ←id B)`
pub fn cylinder_functor(
    rel: &Arc<RelCat>,
    h: &LeftHomotopyData,
    source: &HammockStage,
) -> Result<StageFunctor, TheoremError> {
    let c = rel.cat();
    let b = h.target(c);
    Ok(StageFunctor::new(
        &format!("{}~", h.name),
        source,
        vec![StageStep::Append(ZigZag::new(vec![
            h.cylinder.p,
            h.homotopy,
            c.id(b),
        ]))],
    )?)
}

fn ends_with(
    from: &StageFunctor,
    to: &StageFunctor,
    name: &str,
    at_end: MorId,
) -> NatTrans<StageFunctor> {
    let stage = from.source_stage();
    let c = stage.cat();
    NatTrans::from_fn(stage.exec(), name, from, to, |z| {
        let n = z.stage();
        let source = from.map_obj(z);
        let target = to.map_obj(z);
        let objects = source.objects(c);
        let mut verticals: Vec<MorId> = objects[..n].iter().map(|o| c.id(*o)).collect();
        verticals.push(at_end);
        verticals.extend(objects[n + 1..].iter().map(|o| c.id(*o)));
        Ladder {
            source,
            target,
            verticals,
        }
    })
}

/// The certificate `f_* ≃ g_*` at stage `n`. The homotopy is assumed
/// valid; see [`thm31`] for the checked entry point.
pub fn thm31_stage(
    rel: &Arc<RelCat>,
    h: &LeftHomotopyData,
    x: ObjId,
    n: usize,
) -> Result<StageWitness, TheoremError> {
    let f_star = induced_postcompose(rel, h.f, x, n)?;
    let g_star = induced_postcompose(rel, h.g, x, n)?;
    let tilde = cylinder_functor(rel, h, f_star.source_stage())?;
    let phi = ends_with(&f_star, &tilde, "phi", h.cylinder.i0);
    let psi = ends_with(&g_star, &tilde, "psi", h.cylinder.i1);
    let certificate = Certificate {
        start: f_star.clone(),
        steps: vec![
            Step {
                direction: Direction::Forward,
                nat: phi,
            },
            Step {
                direction: Direction::Backward,
                nat: psi,
            },
        ],
    };
    Ok(StageWitness {
        stage: n,
        from: f_star,
        to: g_star,
        certificate,
    })
}

/// Certificates `f_* ≃ g_*` on `L_n(X, A)` for every odd `n ≤ n_max`.
pub fn thm31(
    rel: &Arc<RelCat>,
    h: &LeftHomotopyData,
    x: ObjId,
    n_max: usize,
) -> Result<StageWitnessFamily, TheoremError> {
    h.validate(rel)?;
    let stages = odd_stages(n_max)?
        .into_iter()
        .map(|n| thm31_stage(rel, h, x, n))
        .collect::<Result<_, _>>()?;
    Ok(StageWitnessFamily {
        name: format!("{}_* ~ {}_*", rel.cat().mor_name(h.f), rel.cat().mor_name(h.g)),
        source_inclusion: Position::FromStart(0),
        target_inclusion: Position::FromStart(0),
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use crate::fixtures;
    use crate::homcert::{certificate_to_wire, CertError, WireContext};
    use crate::natural::{check_nat_trans_with, NatViolation};
    use crate::exec::Exec;

    fn cylfix() -> (Arc<RelCat>, LeftHomotopyData) {
        let m = fixtures::cylfix_spec();
        let h = m.homotopy("H").unwrap().clone();
        (m.category("CYLFIX").unwrap().clone(), h)
    }

    #[test]
    fn family_verifies_up_to_stage_five() {
        let (rel, h) = cylfix();
        for x in rel.cat().object_ids() {
            let fam = thm31(&rel, &h, x, 5).unwrap();
            let report = fam.verify();
            assert!(report.passed(), "{:?}", report.first_error());
            assert_eq!(report.compatibility.len(), 2);
        }
    }

    #[test]
    fn fast_and_generic_naturality_agree() {
        let (rel, h) = cylfix();
        let a = rel.cat().object("A").unwrap();
        let w = thm31_stage(&rel, &h, a, 3).unwrap();
        for step in &w.certificate.steps {
            let fast = StageFunctor::verify_natural(Exec::Sequential, &step.nat);
            let generic = check_nat_trans_with(Exec::Sequential, &step.nat);
            assert_eq!(fast.is_ok(), generic.is_ok());
            assert!(fast.is_ok());
        }
        let mut bad = w.certificate.steps[0].nat.clone();
        let z = bad.source.source_stage().zigzags()[0].clone();
        let l = bad.components.get_mut(&z).unwrap();
        l.verticals[z.stage()] = h.cylinder.i1;
        let fast = StageFunctor::verify_natural(Exec::Sequential, &bad);
        let generic = check_nat_trans_with(Exec::Sequential, &bad);
        assert!(fast.is_err() && generic.is_err());
        assert!(matches!(
            fast,
            Err(NatViolation::Square { column: Some(_), .. }) | Err(NatViolation::ComponentType { .. })
        ));
    }

    #[test]
    fn wrong_end_vertical_is_rejected() {
        let (rel, h) = cylfix();
        let a = rel.cat().object("A").unwrap();
        let mut w = thm31_stage(&rel, &h, a, 1).unwrap();
        let nat = &mut w.certificate.steps[1].nat;
        for l in nat.components.values_mut() {
            l.verticals[1] = h.cylinder.i0;
        }
        assert!(matches!(
            w.certificate.verify(),
            Err(CertError::Natural { index: 1, .. })
        ));
    }

    #[test]
    fn wire_reverification() {
        let (rel, h) = cylfix();
        let a = rel.cat().object("A").unwrap();
        let fam = thm31(&rel, &h, a, 3).unwrap();
        let text = serde_json::to_string(&fam.to_wire()).unwrap();
        let back = serde_json::from_str(&text).unwrap();
        let ctx = WireContext::new([rel.clone()]);
        let rebuilt = StageWitnessFamily::from_wire(&ctx, &back).unwrap();
        assert!(rebuilt.verify().passed());
        let single = certificate_to_wire(&fam.stages[0].certificate);
        assert_eq!(single.steps.len(), 2);
    }

    #[test]
    fn stage_sizes_match_the_functors() {
        let (rel, h) = cylfix();
        let a = rel.cat().object("A").unwrap();
        let w = thm31_stage(&rel, &h, a, 1).unwrap();
        assert_eq!(w.from.target_stage().stage(), 3);
        assert!(w.from.source_stage().objects().len() > 0);
    }
}
