//! Functors between hammock stages built from a few elementary steps.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Category, Composable, Functor};
use crate::exec::Exec;
use crate::fincat::{FinCat, FunctorData, MorId, ObjId};
use crate::hammock::stage::HammockStage;
use crate::hammock::zigzag::{Ladder, ZigZag, ZigZagError};
use crate::natural::{check_components_with, NatTrans, NatViolation};
use crate::relcat::RelCat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Position {
    FromStart(usize),
    FromEnd(usize),
}

impl Position {
    pub fn resolve(self, stage: usize) -> Option<usize> {
        match self {
            Position::FromStart(i) => (i <= stage).then_some(i),
            Position::FromEnd(i) => stage.checked_sub(i),
        }
    }
}

/// A functor between base categories together with both sides' weak
/// equivalences.
#[derive(Clone, Debug)]
pub struct RelFunctor {
    pub functor: Arc<FunctorData>,
    pub target: Arc<RelCat>,
}

#[derive(Clone, Debug)]
pub enum StageStep {
    /// Two identity arrows at `C_i`.
    Insert(Position),
    /// Concatenate a fixed zig-zag in front.
    Prepend(ZigZag),
    /// Concatenate a fixed zig-zag at the end.
    Append(ZigZag),
    /// Apply a weak-equivalence-preserving functor arrow by arrow.
    Apply(RelFunctor),
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum MapError {
    #[error("{0} is not a weak equivalence")]
    NotWeq(String),
    #[error("{0}")]
    ZigZag(#[from] ZigZagError),
    #[error("fixed zig-zag does not meet the stage endpoint {0}")]
    Endpoint(String),
    #[error("functor {0} does not start at the current category")]
    Source(String),
    #[error("functor {functor} does not preserve weak equivalences: {morphism}")]
    NotHomotopical { functor: String, morphism: String },
    #[error("cannot compose {0} after {1}: stages differ")]
    Compose(String, String),
}

/// Origin of one vertical of an image ladder, see
/// [`StageFunctor::vertical_plan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Source {
        position: usize,
        table: Option<Arc<[MorId]>>,
    },
    Fixed(ObjId),
}

impl Slot {
    pub fn eval(&self, c: &FinCat, verticals: &[MorId]) -> MorId {
        match self {
            Slot::Fixed(o) => c.id(*o),
            Slot::Source { position, table } => {
                let v = verticals[*position];
                table.as_ref().map_or(v, |t| t[v.index()])
            }
        }
    }
}

/// A functor `L_n(X,Y) → L_m(X',Y')` given as a sequence of steps.
#[derive(Clone, Debug)]
pub struct StageFunctor {
    pub name: String,
    source: HammockStage,
    target: HammockStage,
    steps: Arc<[StageStep]>,
}

impl StageFunctor {
    /// Computes the target stage from the steps and checks every fixed datum.
    pub fn new(
        name: &str,
        source: &HammockStage,
        steps: Vec<StageStep>,
    ) -> Result<StageFunctor, MapError> {
        let mut rel = source.rel().clone();
        let (mut from, mut to, mut stage) = (source.from(), source.to(), source.stage());
        for step in &steps {
            let c = rel.cat();
            match step {
                StageStep::Insert(p) => {
                    p.resolve(stage).ok_or(ZigZagError::Position {
                        position: match p {
                            Position::FromStart(i) | Position::FromEnd(i) => *i,
                        },
                        stage,
                    })?;
                    stage += 2;
                }
                StageStep::Prepend(u) => {
                    u.check(&rel)?;
                    if u.end(c) != from {
                        return Err(MapError::Endpoint(c.obj_name(from).to_string()));
                    }
                    from = u.start(c);
                    stage += u.stage() - 1;
                }
                StageStep::Append(u) => {
                    u.check(&rel)?;
                    if u.start(c) != to {
                        return Err(MapError::Endpoint(c.obj_name(to).to_string()));
                    }
                    to = u.end(c);
                    stage += u.stage() - 1;
                }
                StageStep::Apply(f) => {
                    if f.functor.source.as_ref() != c {
                        return Err(MapError::Source(f.functor.name.clone()));
                    }
                    for m in rel.weq_ids() {
                        if !f.target.is_weq(f.functor.mor(m)) {
                            return Err(MapError::NotHomotopical {
                                functor: f.functor.name.clone(),
                                morphism: c.mor_name(m).to_string(),
                            });
                        }
                    }
                    from = f.functor.obj(from);
                    to = f.functor.obj(to);
                    rel = f.target.clone();
                }
            }
        }
        let target = HammockStage::with_exec(source.exec(), &rel, from, to, stage)?;
        Ok(StageFunctor {
            name: name.to_string(),
            source: source.clone(),
            target,
            steps: steps.into(),
        })
    }

    pub fn identity(stage: &HammockStage) -> StageFunctor {
        StageFunctor::new("id", stage, Vec::new()).expect("no steps")
    }

    pub fn steps(&self) -> &[StageStep] {
        &self.steps
    }

    pub fn source_stage(&self) -> &HammockStage {
        &self.source
    }

    pub fn target_stage(&self) -> &HammockStage {
        &self.target
    }

    pub fn renamed(&self, name: &str) -> StageFunctor {
        StageFunctor {
            name: name.to_string(),
            ..self.clone()
        }
    }

    fn apply_zigzag(&self, z: &ZigZag) -> ZigZag {
        let mut rel: &Arc<RelCat> = self.source.rel();
        let mut z = z.clone();
        for step in self.steps.iter() {
            let c = rel.cat();
            z = match step {
                StageStep::Insert(p) => {
                    let i = p.resolve(z.stage()).expect("checked at construction");
                    z.insert_identities(c, i).expect("position in range")
                }
                StageStep::Prepend(u) => u.concat(c, &z).expect("endpoints checked"),
                StageStep::Append(u) => z.concat(c, u).expect("endpoints checked"),
                StageStep::Apply(f) => {
                    rel = &f.target;
                    z.map(|d| f.functor.mor(d))
                }
            };
        }
        z
    }

    /// Where each vertical of an image ladder comes from: a vertical of the
    /// source ladder pushed through the applied functors, or an identity
    /// on a fixed object. Every ladder image is determined by this plan and
    /// the images of its endpoints.
    pub fn vertical_plan(&self) -> Vec<Slot> {
        let mut rel: &Arc<RelCat> = self.source.rel();
        let mut slots: Vec<Slot> = (0..=self.source.stage())
            .map(|position| Slot::Source {
                position,
                table: None,
            })
            .collect();
        for step in self.steps.iter() {
            let c: &FinCat = rel.cat();
            slots = match step {
                StageStep::Insert(p) => {
                    let i = p.resolve(slots.len() - 1).expect("checked at construction");
                    let mut v = slots[..=i].to_vec();
                    v.extend([slots[i].clone(), slots[i].clone()]);
                    v.extend_from_slice(&slots[i + 1..]);
                    v
                }
                StageStep::Prepend(u) => {
                    let objs = u.objects(c);
                    let mut v: Vec<Slot> = objs[..objs.len() - 1]
                        .iter()
                        .map(|o| Slot::Fixed(*o))
                        .collect();
                    v.extend_from_slice(&slots[1..]);
                    v
                }
                StageStep::Append(u) => {
                    let objs = u.objects(c);
                    let mut v = slots[..slots.len() - 1].to_vec();
                    v.extend(objs[1..].iter().map(|o| Slot::Fixed(*o)));
                    v
                }
                StageStep::Apply(f) => {
                    rel = &f.target;
                    let fd = &f.functor;
                    slots
                        .into_iter()
                        .map(|slot| match slot {
                            Slot::Fixed(o) => Slot::Fixed(fd.obj(o)),
                            Slot::Source { position, table } => Slot::Source {
                                position,
                                table: Some(match table {
                                    None => fd.mor_map.clone().into(),
                                    Some(t) => t.iter().map(|m| fd.mor(*m)).collect(),
                                }),
                            },
                        })
                        .collect()
                }
            };
        }
        slots
    }

    fn apply_ladder(&self, l: &Ladder) -> Ladder {
        let mut rel: &Arc<RelCat> = self.source.rel();
        let mut verticals = l.verticals.clone();
        for step in self.steps.iter() {
            let c: &FinCat = rel.cat();
            verticals = match step {
                StageStep::Insert(p) => {
                    let n = verticals.len() - 1;
                    let i = p.resolve(n).expect("checked at construction");
                    let mut v = Vec::with_capacity(n + 3);
                    v.extend_from_slice(&verticals[..=i]);
                    v.extend([verticals[i], verticals[i]]);
                    v.extend_from_slice(&verticals[i + 1..]);
                    v
                }
                StageStep::Prepend(u) => {
                    let objs = u.objects(c);
                    let mut v: Vec<MorId> =
                        objs[..objs.len() - 1].iter().map(|o| c.id(*o)).collect();
                    v.extend_from_slice(&verticals[1..]);
                    v
                }
                StageStep::Append(u) => {
                    let objs = u.objects(c);
                    let mut v = verticals[..verticals.len() - 1].to_vec();
                    v.extend(objs[1..].iter().map(|o| c.id(*o)));
                    v
                }
                StageStep::Apply(f) => {
                    rel = &f.target;
                    verticals.iter().map(|v| f.functor.mor(*v)).collect()
                }
            };
        }
        Ladder {
            source: self.apply_zigzag(&l.source),
            target: self.apply_zigzag(&l.target),
            verticals,
        }
    }
}

impl Functor for StageFunctor {
    type Source = HammockStage;
    type Target = HammockStage;

    fn source(&self) -> &HammockStage {
        &self.source
    }

    fn target(&self) -> &HammockStage {
        &self.target
    }

    fn map_obj(&self, a: &ZigZag) -> ZigZag {
        self.apply_zigzag(a)
    }

    fn map_mor(&self, m: &Ladder) -> Ladder {
        self.apply_ladder(m)
    }

    fn label(&self) -> String {
        self.name.clone()
    }

    fn verify_natural(exec: Exec, eta: &NatTrans<StageFunctor>) -> Result<(), NatViolation> {
        Self::verify_natural_all(exec, &[eta]).map_err(|(_, v)| v)
    }

    /// Squares are compared vertical by vertical through the plans of both
    /// functors, streaming the source ladders once for all transformations
    /// without building images.
    fn verify_natural_all(
        exec: Exec,
        etas: &[&NatTrans<StageFunctor>],
    ) -> Result<(), (usize, NatViolation)> {
        let Some(first) = etas.first() else {
            return Ok(());
        };
        let src = &first.source.source;
        if etas.iter().any(|e| !e.source.source.same_category(src)) {
            for (i, eta) in etas.iter().enumerate() {
                Self::verify_natural_all(exec, &[eta]).map_err(|(_, v)| (i, v))?;
            }
            return Ok(());
        }
        struct Prepared<'a> {
            pf: Vec<Slot>,
            pg: Vec<Slot>,
            dense: Vec<&'a Ladder>,
        }
        let mut prepared = Vec::with_capacity(etas.len());
        for (i, eta) in etas.iter().enumerate() {
            check_components_with(exec, eta).map_err(|v| (i, v))?;
            prepared.push(Prepared {
                pf: eta.source.vertical_plan(),
                pg: eta.target.vertical_plan(),
                dense: src.zigzags().iter().map(|z| &eta.components[z]).collect(),
            });
        }
        src.try_for_each_ladder_indexed(exec, |i, l, j| {
            for (index, (p, eta)) in prepared.iter().zip(etas).enumerate() {
                let c = eta.source.target.cat();
                let (eta_a, eta_b) = (p.dense[i], p.dense[j]);
                let failing = p.pf.iter().zip(&p.pg).enumerate().position(|(k, (sf, sg))| {
                    let left = c.comp(sg.eval(c, &l.verticals), eta_a.verticals[k]);
                    left.is_none() || left != c.comp(eta_b.verticals[k], sf.eval(c, &l.verticals))
                });
                let Some(column) = failing else {
                    continue;
                };
                let (f, g) = (&eta.source, &eta.target);
                let tgt = &f.target;
                let left = tgt.compose(&g.map_mor(l), eta_a);
                let right = tgt.compose(eta_b, &f.map_mor(l));
                let show = |x: &Option<Ladder>| {
                    x.as_ref()
                        .map_or_else(|| "undefined".into(), |x| tgt.show_mor(x))
                };
                return Err((
                    index,
                    NatViolation::Square {
                        morphism: src.show_mor(l),
                        column: Some(column),
                        left: show(&left),
                        right: show(&right),
                    },
                ));
            }
            Ok(())
        })
    }

    /// Equal plans decide agreement on ladders once the zig-zag images
    /// agree; otherwise ladders are compared one by one.
    fn verify_agree(exec: Exec, a: &StageFunctor, b: &StageFunctor) -> Result<(), String> {
        if !a.source.same_category(&b.source) {
            return Err(format!("{} and {} have different sources", a.name, b.name));
        }
        if !a.target.same_category(&b.target) {
            return Err(format!("{} and {} have different targets", a.name, b.name));
        }
        let (src, tgt) = (&a.source, &a.target);
        exec.try_each(&src.zigzags(), |z| {
            let (az, bz) = (a.map_obj(z), b.map_obj(z));
            if az != bz {
                return Err(format!(
                    "on object {}: {} gives {}, {} gives {}",
                    src.show_obj(z),
                    a.name,
                    tgt.show_obj(&az),
                    b.name,
                    tgt.show_obj(&bz)
                ));
            }
            Ok(())
        })?;
        let (pa, pb) = (a.vertical_plan(), b.vertical_plan());
        if pa == pb {
            return Ok(());
        }
        let c = tgt.cat();
        src.try_for_each_morphism(exec, |l| {
            if pa
                .iter()
                .zip(&pb)
                .all(|(x, y)| x.eval(c, &l.verticals) == y.eval(c, &l.verticals))
            {
                return Ok(());
            }
            Err(format!(
                "on morphism {}: {} gives {}, {} gives {}",
                src.show_mor(l),
                a.name,
                tgt.show_mor(&a.map_mor(l)),
                b.name,
                tgt.show_mor(&b.map_mor(l))
            ))
        })
    }
}

impl Composable for StageFunctor {
    fn then(&self, next: &StageFunctor) -> Result<StageFunctor, String> {
        if !self.target.same_category(&next.source) {
            return Err(MapError::Compose(next.name.clone(), self.name.clone()).to_string());
        }
        let mut steps = self.steps.to_vec();
        steps.extend(next.steps.iter().cloned());
        Ok(StageFunctor {
            name: format!("{} . {}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            steps: steps.into(),
        })
    }
}

/// `A ←id A →f B ←id B`
pub fn arrow_zigzag(c: &FinCat, f: MorId) -> ZigZag {
    ZigZag::new(vec![c.id(c.source(f)), f, c.id(c.target(f))])
}

/// `f^*: L_n(B,Y) → L_{n+2}(A,Y)`, prefixing `A ←id A →f B`.
pub fn induced_precompose(
    rel: &Arc<RelCat>,
    f: MorId,
    y: ObjId,
    n: usize,
) -> Result<StageFunctor, MapError> {
    let c = rel.cat();
    let source = HammockStage::new(rel, c.target(f), y, n)?;
    StageFunctor::new(
        &format!("{}^*", c.mor_name(f)),
        &source,
        vec![StageStep::Prepend(arrow_zigzag(c, f))],
    )
}

/// `f_*: L_n(X,A) → L_{n+2}(X,B)`, suffixing `A →f B ←id B`.
pub fn induced_postcompose(
    rel: &Arc<RelCat>,
    f: MorId,
    x: ObjId,
    n: usize,
) -> Result<StageFunctor, MapError> {
    let c = rel.cat();
    let source = HammockStage::new(rel, x, c.source(f), n)?;
    StageFunctor::new(
        &format!("{}_*", c.mor_name(f)),
        &source,
        vec![StageStep::Append(arrow_zigzag(c, f))],
    )
}

/// For a weak equivalence `f: A → B`, `L_n(A,Y) → L_{n+2}(B,Y)` prefixing
/// `B ←f A →id A`.
pub fn weq_reverse(
    rel: &Arc<RelCat>,
    f: MorId,
    y: ObjId,
    n: usize,
) -> Result<StageFunctor, MapError> {
    let c = rel.cat();
    if !rel.is_weq(f) {
        return Err(MapError::NotWeq(c.mor_name(f).to_string()));
    }
    let a = c.source(f);
    let source = HammockStage::new(rel, a, y, n)?;
    StageFunctor::new(
        &format!("{}^-1", c.mor_name(f)),
        &source,
        vec![StageStep::Prepend(ZigZag::new(vec![f, c.id(a), c.id(a)]))],
    )
}

/// `L_n(X,Y) → L_{n+2}(X,Y)` inserting two identities at `C_i`.
pub fn stage_inclusion(stage: &HammockStage, position: Position) -> Result<StageFunctor, MapError> {
    let label = match position {
        Position::FromStart(i) => format!("incl_{i}"),
        Position::FromEnd(i) => format!("incl_end-{i}"),
    };
    StageFunctor::new(&label, stage, vec![StageStep::Insert(position)])
}

/// `L^H F: L_n(X,Y) → L_n(FX,FY)`.
pub fn apply_functor(
    stage: &HammockStage,
    f: &Arc<FunctorData>,
    target: &Arc<RelCat>,
) -> Result<StageFunctor, MapError> {
    StageFunctor::new(
        &format!("L{}", f.name),
        stage,
        vec![StageStep::Apply(RelFunctor {
            functor: f.clone(),
            target: target.clone(),
        })],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_equivalence, check_functor, connected_components, functors_agree};
    use crate::fixtures;

    fn shared(r: RelCat) -> Arc<RelCat> {
        Arc::new(r)
    }

    #[test]
    fn induced_maps_are_functors() {
        let para = shared(fixtures::para());
        let c = para.cat();
        let (a, b) = (c.object("A").unwrap(), c.object("B").unwrap());
        let f = c.morphism("f").unwrap();
        for n in [1, 3, 5] {
            check_functor(&induced_precompose(&para, f, b, n).unwrap()).unwrap();
            check_functor(&induced_postcompose(&para, f, a, n).unwrap()).unwrap();
            check_functor(&weq_reverse(&para, c.morphism("w").unwrap(), b, n).unwrap()).unwrap();
        }
        assert!(matches!(
            weq_reverse(&para, f, b, 1),
            Err(MapError::NotWeq(_))
        ));
    }

    #[test]
    fn weq_examples() {
        let weq = shared(fixtures::weq());
        let c = weq.cat();
        let (x, y) = (c.object("X").unwrap(), c.object("Y").unwrap());
        let w = c.morphism("w").unwrap();

        let pre = induced_precompose(&weq, w, x, 1).unwrap();
        assert_eq!(pre.source().zigzags().len(), 1);
        let image = pre.map_obj(&pre.source().zigzags()[0]);
        assert_eq!(image.show(c), "X <-id_X- X -w-> Y <-w- X");
        assert!(pre.target().has_object(&image));

        let post = induced_postcompose(&weq, w, x, 3).unwrap();
        let images: std::collections::BTreeSet<_> = post
            .source()
            .zigzags()
            .iter()
            .map(|z| post.map_obj(z))
            .collect();
        assert_eq!(images.len(), 2);
        check_functor(&post).unwrap();

        let rev = weq_reverse(&weq, w, y, 3).unwrap();
        check_functor(&rev).unwrap();
        let back = induced_precompose(&weq, w, y, 5).unwrap();
        let round = rev.then(&back).unwrap();
        assert_eq!(round.target().stage(), 7);
        check_functor(&round).unwrap();
    }

    #[test]
    fn precompose_with_identity_is_an_inclusion() {
        let arr = shared(fixtures::arr());
        let c = arr.cat();
        let (x, y) = (c.object("X").unwrap(), c.object("Y").unwrap());
        let pre = induced_precompose(&arr, c.id(x), y, 3).unwrap();
        let incl = stage_inclusion(pre.source(), Position::FromStart(0)).unwrap();
        functors_agree(&pre, &incl.renamed(&pre.name)).unwrap();
        // Not an equivalence of categories: the longer stage has zig-zags
        // with no isomorphic image. It is a bijection on components.
        assert!(!check_equivalence(&incl).equivalence);
        let small = connected_components(incl.source());
        let large = connected_components(incl.target());
        assert_eq!(small.len(), large.len());
        let mut hit: Vec<usize> = small
            .iter()
            .map(|b| {
                large
                    .iter()
                    .position(|l| l.contains(&incl.map_obj(&b[0])))
                    .unwrap()
            })
            .collect();
        hit.sort();
        hit.dedup();
        assert_eq!(hit.len(), large.len());
    }
}
