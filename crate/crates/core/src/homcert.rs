//! Homotopy certificates: zig-zags of natural transformations
//! `F₀ ⇒ F₁ ⇐ F₂ ⇒ …`, checked step by step.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Category, Composable, Functor};
use crate::exec::Exec;
use crate::fincat::{FunctorData, MorId, ObjId};
use crate::hammock::{HammockStage, Ladder, Position, RelFunctor, StageFunctor, StageStep, ZigZag};
use crate::natural::{NatTrans, NatViolation};
use crate::relcat::RelCat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug)]
pub struct Step<F: Functor> {
    pub direction: Direction,
    pub nat: NatTrans<F>,
}

impl<F: Functor> Step<F> {
    /// The functor this step starts from when reading the certificate left
    /// to right.
    pub fn from(&self) -> &F {
        match self.direction {
            Direction::Forward => &self.nat.source,
            Direction::Backward => &self.nat.target,
        }
    }

    pub fn to(&self) -> &F {
        match self.direction {
            Direction::Forward => &self.nat.target,
            Direction::Backward => &self.nat.source,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate<F: Functor> {
    pub start: F,
    pub steps: Vec<Step<F>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum CertError {
    #[error("step {index}: {violation}")]
    Natural {
        index: usize,
        violation: NatViolation,
    },
    #[error("step {index} does not start where the previous one ends: {detail}")]
    Chain { index: usize, detail: String },
    #[error("certificate ends at the wrong functor: {0}")]
    Endpoint(String),
    #[error("cannot whisker: {0}")]
    Whisker(String),
}

impl<F: Functor> Certificate<F> {
    /// The empty certificate `F ≃ F`.
    pub fn empty(f: &F) -> Self {
        Certificate {
            start: f.clone(),
            steps: Vec::new(),
        }
    }

    pub fn single(direction: Direction, nat: NatTrans<F>) -> Self {
        let start = match direction {
            Direction::Forward => nat.source.clone(),
            Direction::Backward => nat.target.clone(),
        };
        Certificate {
            start,
            steps: vec![Step { direction, nat }],
        }
    }

    pub fn end(&self) -> &F {
        self.steps.last().map_or(&self.start, |s| s.to())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn shape(&self) -> Vec<Direction> {
        self.steps.iter().map(|s| s.direction).collect()
    }

    /// Every step natural, consecutive steps meeting at extensionally equal
    /// functors.
    pub fn verify(&self) -> Result<(), CertError> {
        self.verify_with(Exec::default())
    }

    pub fn verify_with(&self, exec: Exec) -> Result<(), CertError> {
        let mut at = &self.start;
        for (index, step) in self.steps.iter().enumerate() {
            F::verify_agree(exec, at, step.from())
                .map_err(|detail| CertError::Chain { index, detail })?;
            at = step.to();
        }
        let nats: Vec<&NatTrans<F>> = self.steps.iter().map(|s| &s.nat).collect();
        F::verify_natural_all(exec, &nats)
            .map_err(|(index, violation)| CertError::Natural { index, violation })
    }

    /// Verifies and additionally checks both endpoints.
    pub fn verify_between(&self, from: &F, to: &F) -> Result<(), CertError> {
        let exec = Exec::default();
        F::verify_agree(exec, &self.start, from).map_err(CertError::Endpoint)?;
        self.verify_with(exec)?;
        F::verify_agree(exec, self.end(), to).map_err(CertError::Endpoint)
    }

    pub fn compose(&self, next: &Certificate<F>) -> Result<Certificate<F>, CertError> {
        F::verify_agree(Exec::default(), self.end(), &next.start).map_err(CertError::Endpoint)?;
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(Certificate {
            start: self.start.clone(),
            steps,
        })
    }

    pub fn reversed(&self) -> Certificate<F> {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                direction: match s.direction {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                },
                nat: s.nat.clone(),
            })
            .collect();
        Certificate {
            start: self.end().clone(),
            steps,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Apply the functor before: `F∘K ⇒ G∘K`.
    Pre,
    /// Apply the functor after: `K∘F ⇒ K∘G`.
    Post,
}

impl<F> Certificate<F>
where
    F: Composable<Source = <F as Functor>::Target>,
    F::Target: Category,
{
    /// Transports the certificate along `k` on the given side.
    pub fn whisker(&self, k: &F, side: Side) -> Result<Certificate<F>, CertError> {
        let compose = |f: &F| match side {
            Side::Pre => k.then(f),
            Side::Post => f.then(k),
        };
        let start = compose(&self.start).map_err(CertError::Whisker)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let source = compose(&s.nat.source).map_err(CertError::Whisker)?;
            let target = compose(&s.nat.target).map_err(CertError::Whisker)?;
            let components = match side {
                Side::Post => s
                    .nat
                    .components
                    .iter()
                    .map(|(a, m)| (a.clone(), k.map_mor(m)))
                    .collect(),
                Side::Pre => {
                    let mut out = BTreeMap::new();
                    for b in k.source().objects().iter() {
                        let kb = k.map_obj(b);
                        let m = s.nat.components.get(&kb).ok_or_else(|| {
                            CertError::Whisker(format!(
                                "no component at {}",
                                s.nat.source.source().show_obj(&kb)
                            ))
                        })?;
                        out.insert(b.clone(), m.clone());
                    }
                    out
                }
            };
            steps.push(Step {
                direction: s.direction,
                nat: NatTrans {
                    name: format!("{}{}", s.nat.name, k.label()),
                    source,
                    target,
                    components,
                },
            });
        }
        Ok(Certificate { start, steps })
    }
}

pub type StageCertificate = Certificate<StageFunctor>;

/// Name-based form of a stage functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireStage {
    pub category: String,
    pub from: String,
    pub to: String,
    pub stage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireFunctorTable {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WireStep {
    InsertFromStart(usize),
    InsertFromEnd(usize),
    Prepend(Vec<String>),
    Append(Vec<String>),
    Apply(WireFunctorTable),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireFunctor {
    pub name: String,
    pub source: WireStage,
    pub steps: Vec<WireStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireComponent {
    pub zigzag: Vec<String>,
    pub target: Vec<String>,
    pub verticals: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireNatStep {
    pub direction: Direction,
    pub name: String,
    pub source: WireFunctor,
    pub target: WireFunctor,
    pub components: Vec<WireComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCertificate {
    pub start: WireFunctor,
    pub steps: Vec<WireNatStep>,
}

fn names(c: &crate::fincat::FinCat, ms: &[MorId]) -> Vec<String> {
    ms.iter().map(|m| c.mor_name(*m).to_string()).collect()
}

fn wire_stage(s: &HammockStage) -> WireStage {
    let c = s.cat();
    WireStage {
        category: c.name().to_string(),
        from: c.obj_name(s.from()).to_string(),
        to: c.obj_name(s.to()).to_string(),
        stage: s.stage(),
    }
}

pub fn functor_to_wire(f: &StageFunctor) -> WireFunctor {
    let mut rel = f.source_stage().rel().clone();
    let mut steps = Vec::new();
    for s in f.steps() {
        let c = rel.cat();
        steps.push(match s {
            StageStep::Insert(Position::FromStart(i)) => WireStep::InsertFromStart(*i),
            StageStep::Insert(Position::FromEnd(i)) => WireStep::InsertFromEnd(*i),
            StageStep::Prepend(u) => WireStep::Prepend(names(c, &u.arrows)),
            StageStep::Append(u) => WireStep::Append(names(c, &u.arrows)),
            StageStep::Apply(g) => {
                let t = g.target.cat();
                let fd = &g.functor;
                let table = WireFunctorTable {
                    name: fd.name.clone(),
                    source: c.name().to_string(),
                    target: t.name().to_string(),
                    objects: c
                        .object_ids()
                        .map(|o| (c.obj_name(o).to_string(), t.obj_name(fd.obj(o)).to_string()))
                        .collect(),
                    arrows: c
                        .morphism_ids()
                        .map(|m| (c.mor_name(m).to_string(), t.mor_name(fd.mor(m)).to_string()))
                        .collect(),
                };
                rel = g.target.clone();
                WireStep::Apply(table)
            }
        });
    }
    WireFunctor {
        name: f.name.clone(),
        source: wire_stage(f.source_stage()),
        steps,
    }
}

pub fn certificate_to_wire(cert: &StageCertificate) -> WireCertificate {
    let steps = cert
        .steps
        .iter()
        .map(|s| {
            let src = s.nat.source.source_stage().cat();
            let tgt = s.nat.source.target_stage().cat();
            WireNatStep {
                direction: s.direction,
                name: s.nat.name.clone(),
                source: functor_to_wire(&s.nat.source),
                target: functor_to_wire(&s.nat.target),
                components: s
                    .nat
                    .components
                    .iter()
                    .map(|(z, l)| WireComponent {
                        zigzag: names(src, &z.arrows),
                        target: names(tgt, &l.target.arrows),
                        verticals: names(tgt, &l.verticals),
                    })
                    .collect(),
            }
        })
        .collect();
    WireCertificate {
        start: functor_to_wire(&cert.start),
        steps,
    }
}

/// Categories by name, used to resolve serialized certificates.
#[derive(Clone, Debug, Default)]
pub struct WireContext {
    pub categories: BTreeMap<String, Arc<RelCat>>,
}

impl WireContext {
    pub fn new(cats: impl IntoIterator<Item = Arc<RelCat>>) -> WireContext {
        WireContext {
            categories: cats
                .into_iter()
                .map(|r| (r.name().to_string(), r))
                .collect(),
        }
    }

    fn category(&self, name: &str) -> Result<&Arc<RelCat>, String> {
        self.categories
            .get(name)
            .ok_or_else(|| format!("unknown category {name}"))
    }

    fn object(&self, r: &RelCat, name: &str) -> Result<ObjId, String> {
        r.cat()
            .object(name)
            .ok_or_else(|| format!("unknown object {name} in {}", r.name()))
    }

    fn morphisms(&self, r: &RelCat, ms: &[String]) -> Result<Vec<MorId>, String> {
        ms.iter()
            .map(|m| {
                r.cat()
                    .morphism(m)
                    .ok_or_else(|| format!("unknown morphism {m} in {}", r.name()))
            })
            .collect()
    }

    pub fn functor(&self, w: &WireFunctor) -> Result<StageFunctor, String> {
        let rel = self.category(&w.source.category)?;
        let from = self.object(rel, &w.source.from)?;
        let to = self.object(rel, &w.source.to)?;
        let stage = HammockStage::new(rel, from, to, w.source.stage).map_err(|e| e.to_string())?;
        let mut current = rel.clone();
        let mut steps = Vec::new();
        for s in &w.steps {
            steps.push(match s {
                WireStep::InsertFromStart(i) => StageStep::Insert(Position::FromStart(*i)),
                WireStep::InsertFromEnd(i) => StageStep::Insert(Position::FromEnd(*i)),
                WireStep::Prepend(a) => {
                    StageStep::Prepend(ZigZag::new(self.morphisms(&current, a)?))
                }
                WireStep::Append(a) => StageStep::Append(ZigZag::new(self.morphisms(&current, a)?)),
                WireStep::Apply(t) => {
                    let target = self.category(&t.target)?.clone();
                    let functor = FunctorData::from_names(
                        &t.name,
                        current.cat_arc(),
                        target.cat_arc(),
                        &t.objects,
                        &t.arrows,
                    )
                    .map_err(|e| e.to_string())?;
                    current = target.clone();
                    StageStep::Apply(RelFunctor {
                        functor: Arc::new(functor),
                        target,
                    })
                }
            });
        }
        StageFunctor::new(&w.name, &stage, steps).map_err(|e| e.to_string())
    }

    pub fn certificate(&self, w: &WireCertificate) -> Result<StageCertificate, String> {
        let start = self.functor(&w.start)?;
        let mut steps = Vec::new();
        for s in &w.steps {
            let source = self.functor(&s.source)?;
            let target = self.functor(&s.target)?;
            let src_rel = source.source_stage().rel().clone();
            let tgt_rel = source.target_stage().rel().clone();
            let mut components = BTreeMap::new();
            for comp in &s.components {
                let z = ZigZag::new(self.morphisms(&src_rel, &comp.zigzag)?);
                let ladder = Ladder {
                    source: source.map_obj(&z),
                    target: ZigZag::new(self.morphisms(&tgt_rel, &comp.target)?),
                    verticals: self.morphisms(&tgt_rel, &comp.verticals)?,
                };
                components.insert(z, ladder);
            }
            steps.push(Step {
                direction: s.direction,
                nat: NatTrans {
                    name: s.name.clone(),
                    source,
                    target,
                    components,
                },
            });
        }
        Ok(Certificate { start, steps })
    }
}
