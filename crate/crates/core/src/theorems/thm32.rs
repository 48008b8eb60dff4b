//! A natural transformation `η: F ⇒ G` of homotopical functors gives a
//! natural transformation between the two composites
//!
//! ```text
//!   L_n(X,Y) → L_n(FX,FY) → L_{n+2}(FX,GY) → L_{n+4}(FX,GY)   (η_Y)_*, then incl at 0
//!   L_n(X,Y) → L_n(GX,GY) → L_{n+2}(FX,GY) → L_{n+4}(FX,GY)   (η_X)^*, then incl at the end
//! ```
//!
//! with verticals `η_{C_k}` in the middle and identities on the padding.

use std::sync::Arc;

use crate::category::{Category, Functor};
use crate::fincat::{FunctorData, MorId, ObjId};
use crate::hammock::{
    arrow_zigzag, HammockStage, Ladder, Position, RelFunctor, StageFunctor, StageStep, ZigZag,
};
use crate::homcert::{Certificate, Direction};
use crate::natural::{NatTrans, NatTransData};
use crate::relcat::RelCat;
use crate::theorems::{odd_stages, StageWitness, StageWitnessFamily, TheoremError};

fn rel_functor(f: &FunctorData, target: &Arc<RelCat>) -> StageStep {
    StageStep::Apply(RelFunctor {
        functor: Arc::new(f.clone()),
        target: target.clone(),
    })
}

/// The two composites at stage `n` and the transformation between them.
pub fn thm32_stage(
    source: &Arc<RelCat>,
    target: &Arc<RelCat>,
    eta: &NatTransData,
    x: ObjId,
    y: ObjId,
    n: usize,
) -> Result<StageWitness, TheoremError> {
    let c = target.cat();
    let (f, g) = (&eta.source, &eta.target);
    let eta_at = |o: ObjId| eta.components[&o];
    let stage = HammockStage::new(source, x, y, n)?;
    let top = StageFunctor::new(
        &format!("incl_0 . {}_* . L{}", c.mor_name(eta_at(y)), f.name),
        &stage,
        vec![
            rel_functor(f, target),
            StageStep::Append(arrow_zigzag(c, eta_at(y))),
            StageStep::Insert(Position::FromStart(0)),
        ],
    )?;
    let bottom = StageFunctor::new(
        &format!("incl_end . {}^* . L{}", c.mor_name(eta_at(x)), g.name),
        &stage,
        vec![
            rel_functor(g, target),
            StageStep::Prepend(arrow_zigzag(c, eta_at(x))),
            StageStep::Insert(Position::FromEnd(0)),
        ],
    )?;
    let d = source.cat();
    let nat = NatTrans::from_fn(stage.exec(), &eta.name, &top, &bottom, |z| {
        let (fx, gy) = (f.obj(x), g.obj(y));
        let mut verticals: Vec<MorId> = vec![c.id(fx), c.id(fx)];
        verticals.extend(z.objects(d).into_iter().map(eta_at));
        verticals.extend([c.id(gy), c.id(gy)]);
        Ladder {
            source: top.map_obj(z),
            target: bottom.map_obj(z),
            verticals,
        }
    });
    Ok(StageWitness {
        stage: n,
        from: top,
        to: bottom,
        certificate: Certificate::single(Direction::Forward, nat),
    })
}

/// Certificates for every odd `n ≤ n_max`; the family moves up by
/// inserting at `C_0` on the source and at `C_2` on the target.
pub fn thm32(
    source: &Arc<RelCat>,
    target: &Arc<RelCat>,
    eta: &NatTransData,
    x: ObjId,
    y: ObjId,
    n_max: usize,
) -> Result<StageWitnessFamily, TheoremError> {
    for (which, f) in [("source", &eta.source), ("target", &eta.target)] {
        if f.source.as_ref() != source.cat() || f.target.as_ref() != target.cat() {
            return Err(TheoremError::Input(format!(
                "{which} functor {} of {} has the wrong categories",
                f.name, eta.name
            )));
        }
    }
    let stages = odd_stages(n_max)?
        .into_iter()
        .map(|n| thm32_stage(source, target, eta, x, y, n))
        .collect::<Result<_, _>>()?;
    Ok(StageWitnessFamily {
        name: format!("{} on L({},{})", eta.name, source.cat().obj_name(x), source.cat().obj_name(y)),
        source_inclusion: Position::FromStart(0),
        target_inclusion: Position::FromStart(2),
        stages,
    })
}

/// The two displayed zig-zags, written out arrow by arrow:
///
/// ```text
///   FX ← FX → FX ← FC_1 … FC_n → GY ← GY
///   FX ← FX → GX ← GC_1 … GC_n → GY ← GY
/// ```
pub fn displayed(c_source: &RelCat, c_target: &RelCat, eta: &NatTransData, z: &ZigZag) -> (ZigZag, ZigZag) {
    let (d, c) = (c_source.cat(), c_target.cat());
    let (f, g) = (&eta.source, &eta.target);
    let (x, y) = (z.start(d), z.end(d));
    let (fx, gy) = (f.obj(x), g.obj(y));
    let mut top = vec![c.id(fx), c.id(fx)];
    top.extend(z.arrows.iter().map(|m| f.mor(*m)));
    top.extend([eta.components[&y], c.id(gy)]);
    let mut bottom = vec![c.id(fx), eta.components[&x]];
    bottom.extend(z.arrows.iter().map(|m| g.mor(*m)));
    bottom.extend([c.id(gy), c.id(gy)]);
    (ZigZag::new(top), ZigZag::new(bottom))
}

/// Compares the constructed functors with [`displayed`] on every zig-zag.
pub fn check_displayed(
    w: &StageWitness,
    source: &RelCat,
    target: &RelCat,
    eta: &NatTransData,
) -> Result<(), String> {
    let stage = w.from.source_stage();
    for z in stage.objects().iter() {
        let (top, bottom) = displayed(source, target, eta, z);
        for (name, f, expected) in [("top", &w.from, top), ("bottom", &w.to, bottom)] {
            let found = f.map_obj(z);
            if found != expected {
                let t = w.from.target_stage();
                return Err(format!(
                    "{name} row at {}: built {}, expected {}",
                    stage.show_obj(z),
                    t.show_obj(&found),
                    t.show_obj(&expected)
                ));
            }
        }
    }
    Ok(())
}
