//! Maps into local objects for a homotopy idempotent `(L, ℓ)`.
//!
//! Part 1: with `h: L_n(LX, LLY) → L_{n+2}(X, LY)`,
//! `z ↦ (X ← X →ℓ_X LX) · z · (LLY ←ℓ_{LY} LY)`, the composite `h ∘ L^H L`
//! is homotopic to the inclusion on `L_n(X, LY)`, and `L^H L ∘ h` is
//! homotopic to the inclusion on `L_n(LX, LLY)` through the zig-zag
//!
//! ```text
//!   LX ← LX → LX ← C_1 … C_{n-1} ← LLY → LLY ← LLY
//!   LX ← Cyl → LLX ← LC_1 … LC_{n-1} ← Cyl' → LLY ← LLY
//!   LX ← LX → LLX ← LC_1 … LC_{n-1} ← LLY → LLY ← LLY
//! ```
//!
//! built from the homotopies `Lℓ ≃ ℓL` at `X` (on `Cyl`) and at `LY` (on
//! `Cyl'`). The backward arrow out of `Cyl'` must be a weak equivalence.
//!
//! Part 2: `ℓ_X^*: π₀ map(LX, LY) → π₀ map(X, LY)` is a bijection.

use std::sync::Arc;

use serde::Serialize;

use crate::category::Functor;
use crate::fincat::{MorId, ObjId};
use crate::hammock::{HammockStage, Ladder, Position, RelFunctor, StageFunctor, StageStep, ZigZag};
use crate::homcert::{Certificate, Direction, Step};
use crate::natural::NatTrans;
use crate::relcat::{IdempotentData, LeftHomotopyData, RelCat};
use crate::theorems::{
    odd_stages, pi0_precompose, thm32::thm32, FamilyReport, Pi0Map, StageWitness, StageWitnessFamily,
    TheoremError, Verdict,
};

struct Setup {
    rel: Arc<RelCat>,
    apply: StageStep,
    ell: Vec<MorId>,
    x: ObjId,
    lx: ObjId,
    ly: ObjId,
    lly: ObjId,
    /// Relates `Lℓ_X` (at `i0`) to `ℓ_{LX}` (at `i1`).
    h: LeftHomotopyData,
    /// Same at `LY`.
    h2: LeftHomotopyData,
}

impl Setup {
    fn new(rel: &Arc<RelCat>, d: &IdempotentData, x: ObjId, y: ObjId) -> Result<Setup, TheoremError> {
        let c = rel.cat();
        let l = &d.functor;
        let ell: Vec<MorId> = c.object_ids().map(|o| d.ell.components[&o]).collect();
        let (lx, ly) = (l.obj(x), l.obj(y));
        let h = d.witness(rel, x)?.realize(c, d.pair(x).0);
        let h2 = d.witness(rel, ly)?.realize(c, d.pair(ly).0);
        Ok(Setup {
            rel: rel.clone(),
            apply: StageStep::Apply(RelFunctor {
                functor: Arc::new(l.clone()),
                target: rel.clone(),
            }),
            ell,
            x,
            lx,
            ly,
            lly: l.obj(ly),
            h,
            h2,
        })
    }

    fn ell(&self, o: ObjId) -> MorId {
        self.ell[o.index()]
    }

    /// The steps of `h` on `L_n(LX, LLY)`.
    fn h_steps(&self) -> Vec<StageStep> {
        let c = self.rel.cat();
        vec![
            StageStep::Append(ZigZag::new(vec![self.ell(self.ly)])),
            StageStep::Prepend(ZigZag::new(vec![c.id(self.x), self.ell(self.x), c.id(self.lx)])),
        ]
    }

    fn h(&self, n: usize) -> Result<StageFunctor, TheoremError> {
        let stage = HammockStage::new(&self.rel, self.lx, self.lly, n)?;
        Ok(StageFunctor::new("h", &stage, self.h_steps())?)
    }

    /// `incl_0 ≃ h ∘ L` on `L_n(X, LY)`.
    fn first(&self, n: usize) -> Result<StageWitness, TheoremError> {
        let c = self.rel.cat();
        let stage = HammockStage::new(&self.rel, self.x, self.ly, n)?;
        let from = StageFunctor::new("incl_0", &stage, vec![StageStep::Insert(Position::FromStart(0))])?;
        let mut steps = vec![self.apply.clone()];
        steps.extend(self.h_steps());
        let to = StageFunctor::new("h . L", &stage, steps)?;
        let nat = NatTrans::from_fn(stage.exec(), "ell", &from, &to, |z| {
            let objects = z.objects(c);
            let mut verticals = vec![c.id(self.x), c.id(self.x)];
            verticals.extend(objects[..n].iter().map(|o| self.ell(*o)));
            verticals.push(c.id(self.ly));
            Ladder {
                source: from.map_obj(z),
                target: to.map_obj(z),
                verticals,
            }
        });
        Ok(StageWitness {
            stage: n,
            certificate: Certificate::single(Direction::Forward, nat),
            from,
            to,
        })
    }

    /// `incl_end ∘ incl_0 ≃ incl_end ∘ L ∘ h` on `L_n(LX, LLY)`.
    fn second(&self, n: usize) -> Result<StageWitness, TheoremError> {
        let c = self.rel.cat();
        let stage = HammockStage::new(&self.rel, self.lx, self.lly, n)?;
        let top = StageFunctor::new(
            "incl_end . incl_0",
            &stage,
            vec![
                StageStep::Insert(Position::FromStart(0)),
                StageStep::Insert(Position::FromEnd(0)),
            ],
        )?;
        let (h, h2) = (&self.h, &self.h2);
        let llx = c.target(h.homotopy);
        let middle = StageFunctor::new(
            "H~",
            &stage,
            vec![
                self.apply.clone(),
                StageStep::Prepend(ZigZag::new(vec![h.cylinder.p, h.homotopy, c.id(llx)])),
                StageStep::Append(ZigZag::new(vec![
                    h2.homotopy,
                    h2.cylinder.p,
                    c.id(self.lly),
                ])),
            ],
        )?;
        let mut steps = self.h_steps();
        steps.extend([self.apply.clone(), StageStep::Insert(Position::FromEnd(0))]);
        let bottom = StageFunctor::new("incl_end . L . h", &stage, steps)?;
        let padded = |first: MorId, inner: &dyn Fn(ObjId) -> MorId, last: MorId, z: &ZigZag| {
            let objects = z.objects(c);
            let mut verticals = vec![c.id(self.lx), first];
            verticals.extend(objects[..n].iter().map(|o| inner(*o)));
            verticals.extend([last, c.id(self.lly), c.id(self.lly)]);
            verticals
        };
        let down = NatTrans::from_fn(stage.exec(), "ell~", &top, &middle, |z| Ladder {
            source: top.map_obj(z),
            target: middle.map_obj(z),
            verticals: padded(h.cylinder.i1, &|o| self.ell(o), h2.cylinder.i1, z),
        });
        let up = NatTrans::from_fn(stage.exec(), "i0~", &bottom, &middle, |z| {
            let l = |o: ObjId| c.id(c.target(self.ell(o)));
            Ladder {
                source: bottom.map_obj(z),
                target: middle.map_obj(z),
                verticals: padded(h.cylinder.i0, &l, h2.cylinder.i0, z),
            }
        });
        Ok(StageWitness {
            stage: n,
            certificate: Certificate {
                start: top.clone(),
                steps: vec![
                    Step {
                        direction: Direction::Forward,
                        nat: down,
                    },
                    Step {
                        direction: Direction::Backward,
                        nat: up,
                    },
                ],
            },
            from: top,
            to: bottom,
        })
    }
}

/// The two families and the maps `h` for every odd stage.
#[derive(Clone, Debug)]
pub struct Part1 {
    pub h: Vec<StageFunctor>,
    pub first: StageWitnessFamily,
    pub second: StageWitnessFamily,
}

pub fn lemma53_part1(
    rel: &Arc<RelCat>,
    d: &IdempotentData,
    x: ObjId,
    y: ObjId,
    n_max: usize,
) -> Result<Part1, TheoremError> {
    let s = Setup::new(rel, d, x, y)?;
    let c = rel.cat();
    if !rel.is_weq(s.h2.homotopy) {
        return Err(TheoremError::Input(format!(
            "the homotopy {} at {} must be a weak equivalence",
            c.mor_name(s.h2.homotopy),
            c.obj_name(s.ly)
        )));
    }
    let stages = odd_stages(n_max)?;
    let family = |name: &str, build: &dyn Fn(usize) -> Result<StageWitness, TheoremError>| {
        Ok::<_, TheoremError>(StageWitnessFamily {
            name: name.to_string(),
            source_inclusion: Position::FromStart(0),
            target_inclusion: Position::FromStart(2),
            stages: stages.iter().map(|n| build(*n)).collect::<Result<_, _>>()?,
        })
    };
    Ok(Part1 {
        h: stages.iter().map(|n| s.h(*n)).collect::<Result<_, _>>()?,
        first: family("h . L ~ incl", &|n| s.first(n))?,
        second: family("L . h ~ incl", &|n| s.second(n))?,
    })
}

/// Name of the square at column `k` of the second certificate at stage `n`.
pub fn second_column_label(n: usize, k: usize) -> &'static str {
    match k {
        0 | 1 => "H square",
        k if k == n + 1 || k == n + 2 => "H' square",
        k if k > n + 2 => "padding square",
        _ => "ell square",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Part2 {
    pub certificates: FamilyReport,
    pub pi0: Pi0Map,
    pub verdict: Verdict,
}

/// Certificates relating `(ℓ_{LY})_*`-style and `ℓ_X^*`-style maps on
/// `L(X, LY)`, then the decision on `π₀`.
pub fn lemma53_part2(
    rel: &Arc<RelCat>,
    d: &IdempotentData,
    x: ObjId,
    y: ObjId,
    n_max: usize,
    bound: usize,
) -> Result<Part2, TheoremError> {
    let ly = d.functor.obj(y);
    let certificates = thm32(rel, rel, &d.ell, x, ly, n_max)?.verify();
    let pi0 = pi0_precompose(rel, d.ell.components[&x], ly, bound, n_max)?;
    let mut verdict = match pi0.bijective {
        Some(b) => Verdict::from_bool(b),
        None => Verdict::Unknown,
    };
    if !certificates.passed() {
        verdict = Verdict::Fail;
    }
    Ok(Part2 {
        certificates,
        pi0,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn idemfix() -> (Arc<RelCat>, IdempotentData) {
        let m = fixtures::idemfix_spec();
        (
            m.category("IDEMFIX").unwrap().clone(),
            m.idempotent("I").unwrap().clone(),
        )
    }

    #[test]
    fn part1_on_the_reflection() {
        let (rel, d) = idemfix();
        for x in rel.cat().object_ids() {
            for y in rel.cat().object_ids() {
                let p = lemma53_part1(&rel, &d, x, y, 5).unwrap();
                assert_eq!(p.h.len(), 3);
                for fam in [&p.first, &p.second] {
                    let r = fam.verify();
                    assert!(r.passed(), "{}: {:?}", fam.name, r.first_error());
                }
            }
        }
    }

    #[test]
    fn part1_on_the_chain() {
        let m = fixtures::chain_spec();
        let rel = m.category("CHAIN").unwrap().clone();
        let d = m.idempotent("S").unwrap();
        let c = rel.cat();
        let x0 = c.object("X").unwrap();
        // ell at L(X) = Y is g, which is not invertible, so h is undefined.
        assert!(matches!(
            lemma53_part1(&rel, d, x0, x0, 1),
            Err(TheoremError::Map(_))
        ));
        for x in c.object_ids() {
            for y in ["Y", "Z"].map(|o| c.object(o).unwrap()) {
                let p = lemma53_part1(&rel, d, x, y, 5).unwrap();
                for fam in [&p.first, &p.second] {
                    let r = fam.verify();
                    assert!(r.passed(), "{}: {:?}", fam.name, r.first_error());
                }
            }
        }
    }

    #[test]
    fn tampered_cylinder_column_is_named() {
        let (rel, d) = idemfix();
        let c = rel.cat();
        let (x, y) = (c.object("X").unwrap(), c.object("Y").unwrap());
        let mut p = lemma53_part1(&rel, &d, x, y, 3).unwrap();
        let w = &mut p.second.stages[1];
        let n = w.stage;
        let nat = &mut w.certificate.steps[0].nat;
        for l in nat.components.values_mut() {
            l.verticals[n + 2] = c.morphism("w").unwrap();
        }
        let report = p.second.verify();
        assert!(report.stages[0].error.is_none());
        let bad = &report.stages[1];
        assert!(bad.error.as_deref().unwrap().starts_with("step 0"));
        assert_eq!(second_column_label(n, bad.column.unwrap()), "H' square");
    }

    #[test]
    fn part2_on_the_reflection() {
        let (rel, d) = idemfix();
        let c = rel.cat();
        for y in c.object_ids() {
            let p = lemma53_part2(&rel, &d, c.object("X").unwrap(), y, 5, 6).unwrap();
            assert!(p.certificates.passed());
            assert_eq!(p.verdict, Verdict::Pass);
            assert_eq!(p.pi0.source_classes.len(), 1);
        }
    }
}
