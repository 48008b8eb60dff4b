//! A homotopy algebra `(Q, a)` over a monad `T` makes `map(Z, Q)` a
//! homotopy retract of `map(TZ, Q)`, naturally in `Z`.
//!
//! ```text
//!   i_Z = a_* ∘ LT : L_n(Z,Q) → L_n(TZ,TQ) → L_{n+2}(TZ,Q)
//!   r_Z = η_Z^*    : L_n(TZ,Q) → L_{n+2}(Z,Q)
//! ```
//!
//! For each end `Z` of `f: A → B` this checks the two squares relating
//! `i` and `r` to the unit, builds a certificate `r∘i ≃ incl`, and then
//! checks that `i` and `r` commute with `f^*` and `(Tf)^*`.

use std::sync::Arc;

use serde::Serialize;

use crate::category::Functor;
use crate::exec::Exec;
use crate::fincat::{MorId, ObjId};
use crate::hammock::{
    arrow_zigzag, stage_inclusion, HammockStage, Ladder, Position, RelFunctor, StageFunctor,
    StageStep, ZigZag,
};
use crate::homcert::{Certificate, Direction, Side, StageCertificate, Step};
use crate::natural::NatTrans;
use crate::relcat::{validate_hoalgebra, HoAlgebraData, RelCat};
use crate::theorems::thm31::thm31_stage;
use crate::theorems::thm32::thm32;
use crate::theorems::{odd_stages, FamilyReport, StageCheck, StageWitness, TheoremError, Verdict};

/// A square checked at one stage, either on the nose or by a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct SquareCheck {
    pub name: String,
    pub stage: usize,
    pub strict: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HoalgComponent {
    pub object: String,
    /// `(η_Q)_* ≃ η_Z^* ∘ LT` as maps into `L_{n+4}(Z, TQ)`.
    pub unit_square: FamilyReport,
    /// `η_Z^* ∘ a_* = a_* ∘ η_Z^*`.
    pub action_square: Vec<SquareCheck>,
    /// `r ∘ i ≃ incl`.
    pub retract: Vec<StageCheck>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct HoalgReport {
    pub algebra: String,
    pub map: String,
    pub components: Vec<HoalgComponent>,
    pub compatibility: Vec<SquareCheck>,
    pub verdict: Verdict,
}

struct Setup<'a> {
    rel: &'a Arc<RelCat>,
    alg: &'a HoAlgebraData,
    apply: StageStep,
}

impl Setup<'_> {
    fn eta(&self, o: ObjId) -> MorId {
        self.alg.monad.eta.components[&o]
    }

    fn t(&self, o: ObjId) -> ObjId {
        self.alg.monad.functor.obj(o)
    }

    fn arrow(&self, m: MorId) -> ZigZag {
        arrow_zigzag(self.rel.cat(), m)
    }

    fn functor(
        &self,
        name: &str,
        stage: &HammockStage,
        steps: Vec<StageStep>,
    ) -> Result<StageFunctor, TheoremError> {
        Ok(StageFunctor::new(name, stage, steps)?)
    }

    /// `r_Z ∘ i_Z`, padded at `C_{end-2}` to land in `L_{n+6}(Z,Q)`.
    fn retraction(&self, stage: &HammockStage, z: ObjId) -> Result<StageFunctor, TheoremError> {
        self.functor(
            "incl . r . i",
            stage,
            vec![
                self.apply.clone(),
                StageStep::Append(self.arrow(self.alg.action)),
                StageStep::Prepend(self.arrow(self.eta(z))),
                StageStep::Insert(Position::FromEnd(2)),
            ],
        )
    }

    /// `r_Z ∘ i_Z ≃ incl_0 ∘ incl_end ∘ incl_end` on `L_n(Z,Q)`.
    fn retract_stage(&self, z: ObjId, n: usize) -> Result<StageWitness, TheoremError> {
        let c = self.rel.cat();
        let (a, q) = (self.alg.action, self.alg.carrier);
        let unit = self.alg.unit_composite(c);

        // a_* ∘ B ⇐ a_* ∘ T, from the unit square.
        let square = crate::theorems::thm32::thm32_stage(
            self.rel,
            self.rel,
            &self.alg.monad.eta,
            z,
            q,
            n,
        )?;
        let a_star = self.functor(
            "a_*",
            square.from.target_stage(),
            vec![StageStep::Append(self.arrow(a))],
        )?;
        let first = square
            .certificate
            .whisker(&a_star, Side::Post)
            .map_err(|e| TheoremError::Input(e.to_string()))?
            .reversed();

        // a_* ∘ (η_Q)_* ⇒ incl_end ∘ (aη)_*, verticals a where TQ sits.
        let stage = square.from.source_stage().clone();
        let push = self.functor(
            "a_* . eta_*",
            &stage,
            vec![
                StageStep::Append(self.arrow(self.eta(q))),
                StageStep::Append(self.arrow(a)),
            ],
        )?;
        let unit_end = self.functor(
            "incl_end . (a eta)_*",
            &stage,
            vec![
                StageStep::Append(self.arrow(unit)),
                StageStep::Insert(Position::FromEnd(0)),
            ],
        )?;
        let nat = NatTrans::from_fn(stage.exec(), "a", &push, &unit_end, |zz| {
            let source = push.map_obj(zz);
            let mut verticals: Vec<MorId> = source.objects(c)[..n]
                .iter()
                .map(|o| c.id(*o))
                .collect();
            verticals.extend([c.id(q), a, a, c.id(q), c.id(q)]);
            Ladder {
                source,
                target: unit_end.map_obj(zz),
                verticals,
            }
        });
        let incl_0 = stage_inclusion(push.target_stage(), Position::FromStart(0))?;
        let second = Certificate::single(Direction::Forward, nat)
            .whisker(&incl_0, Side::Post)
            .map_err(|e| TheoremError::Input(e.to_string()))?;

        // (aη)_* ≃ id_*, pushed into L_{n+6}.
        let homotopy = self.alg.unit.realize(c, unit);
        let third = thm31_stage(self.rel, &homotopy, z, n)?;
        let pad = self.functor(
            "incl_0 . incl_end",
            third.from.target_stage(),
            vec![
                StageStep::Insert(Position::FromEnd(0)),
                StageStep::Insert(Position::FromStart(0)),
            ],
        )?;
        let third = third
            .certificate
            .whisker(&pad, Side::Post)
            .map_err(|e| TheoremError::Input(e.to_string()))?;

        let steps: Vec<Step<StageFunctor>> = first
            .steps
            .into_iter()
            .chain(second.steps)
            .chain(third.steps)
            .collect();
        let certificate: StageCertificate = Certificate {
            start: first.start,
            steps,
        };
        let to = self.functor(
            "incl_0 . incl_end . incl_end",
            &stage,
            vec![
                StageStep::Insert(Position::FromEnd(0)),
                StageStep::Insert(Position::FromEnd(0)),
                StageStep::Insert(Position::FromStart(0)),
            ],
        )?;
        Ok(StageWitness {
            stage: n,
            from: self.retraction(&stage, z)?,
            to,
            certificate,
        })
    }

    /// `η_Z^* ∘ a_* = a_* ∘ η_Z^*` on `L_n(TZ, TQ)`.
    fn action_square(&self, z: ObjId, n: usize) -> Result<SquareCheck, TheoremError> {
        let (tz, tq) = (self.t(z), self.t(self.alg.carrier));
        let stage = HammockStage::new(self.rel, tz, tq, n)?;
        let pre = StageStep::Prepend(self.arrow(self.eta(z)));
        let post = StageStep::Append(self.arrow(self.alg.action));
        let lhs = self.functor("eta^* . a_*", &stage, vec![post.clone(), pre.clone()])?;
        let rhs = self.functor("a_* . eta^*", &stage, vec![pre, post])?;
        Ok(SquareCheck {
            name: format!("action square at {}", self.rel.cat().obj_name(z)),
            stage: n,
            strict: true,
            error: StageFunctor::verify_agree(Exec::default(), &lhs, &rhs).err(),
        })
    }

    /// `i_A ∘ f^* = (Tf)^* ∘ i_B` on `L_n(B, Q)`.
    fn i_square(&self, f: MorId, n: usize) -> Result<SquareCheck, TheoremError> {
        let c = self.rel.cat();
        let stage = HammockStage::new(self.rel, c.target(f), self.alg.carrier, n)?;
        let act = StageStep::Append(self.arrow(self.alg.action));
        let lhs = self.functor(
            "i . f^*",
            &stage,
            vec![StageStep::Prepend(self.arrow(f)), self.apply.clone(), act.clone()],
        )?;
        let tf = self.alg.monad.functor.mor(f);
        let rhs = self.functor(
            "(Tf)^* . i",
            &stage,
            vec![self.apply.clone(), act, StageStep::Prepend(self.arrow(tf))],
        )?;
        Ok(SquareCheck {
            name: "i square".into(),
            stage: n,
            strict: true,
            error: StageFunctor::verify_agree(Exec::default(), &lhs, &rhs).err(),
        })
    }

    /// `r_A ∘ (Tf)^* ⇒ incl_2 ∘ (η_B f)^* ⇐ f^* ∘ r_B` on `L_n(TB, Q)`.
    fn r_square(&self, f: MorId, n: usize) -> Result<SquareCheck, TheoremError> {
        let c = self.rel.cat();
        let (a, b) = (c.source(f), c.target(f));
        let tf = self.alg.monad.functor.mor(f);
        let stage = HammockStage::new(self.rel, self.t(b), self.alg.carrier, n)?;
        let lhs = self.functor(
            "r . (Tf)^*",
            &stage,
            vec![
                StageStep::Prepend(self.arrow(tf)),
                StageStep::Prepend(self.arrow(self.eta(a))),
            ],
        )?;
        let rhs = self.functor(
            "f^* . r",
            &stage,
            vec![
                StageStep::Prepend(self.arrow(self.eta(b))),
                StageStep::Prepend(self.arrow(f)),
            ],
        )?;
        let joint = self.functor(
            "incl_2 . (eta f)^*",
            &stage,
            vec![
                StageStep::Prepend(self.arrow(c.then(f, self.eta(b)))),
                StageStep::Insert(Position::FromStart(2)),
            ],
        )?;
        let with = |from: &StageFunctor, m: MorId, name: &str| {
            NatTrans::from_fn(stage.exec(), name, from, &joint, |z| {
                let source = from.map_obj(z);
                let objects = source.objects(c);
                let mut verticals = vec![c.id(a), c.id(a), m, m];
                verticals.extend(objects[4..].iter().map(|o| c.id(*o)));
                Ladder {
                    source,
                    target: joint.map_obj(z),
                    verticals,
                }
            })
        };
        let certificate = Certificate {
            start: lhs.clone(),
            steps: vec![
                Step {
                    direction: Direction::Forward,
                    nat: with(&lhs, tf, "Tf"),
                },
                Step {
                    direction: Direction::Backward,
                    nat: with(&rhs, self.eta(b), "eta"),
                },
            ],
        };
        Ok(SquareCheck {
            name: "r square".into(),
            stage: n,
            strict: false,
            error: certificate
                .verify_between(&lhs, &rhs)
                .err()
                .map(|e| e.to_string()),
        })
    }
}

fn verdict_of(checks: &[SquareCheck]) -> Verdict {
    Verdict::from_bool(checks.iter().all(|s| s.error.is_none()))
}

/// Checks the retract at both ends of `f` and its naturality along `f`, on
/// every odd stage up to `n_max`.
pub fn hoalg(
    rel: &Arc<RelCat>,
    alg: &HoAlgebraData,
    f: MorId,
    n_max: usize,
) -> Result<HoalgReport, TheoremError> {
    validate_hoalgebra(rel, alg)?;
    let c = rel.cat();
    if f.index() >= c.morphism_count() {
        return Err(TheoremError::Input("unknown morphism".into()));
    }
    let stages = odd_stages(n_max)?;
    let s = Setup {
        rel,
        alg,
        apply: StageStep::Apply(RelFunctor {
            functor: Arc::new(alg.monad.functor.clone()),
            target: rel.clone(),
        }),
    };
    let mut components = Vec::new();
    for z in [c.source(f), c.target(f)] {
        let unit_square = thm32(rel, rel, &alg.monad.eta, z, alg.carrier, n_max)?.verify();
        let action_square = stages
            .iter()
            .map(|&n| s.action_square(z, n))
            .collect::<Result<Vec<_>, _>>()?;
        let retract: Vec<StageCheck> = stages
            .iter()
            .map(|&n| Ok(s.retract_stage(z, n)?.check()))
            .collect::<Result<_, TheoremError>>()?;
        let verdict = Verdict::from_bool(unit_square.passed())
            .and(verdict_of(&action_square))
            .and(Verdict::from_bool(retract.iter().all(|r| r.error.is_none())));
        components.push(HoalgComponent {
            object: c.obj_name(z).to_string(),
            unit_square,
            action_square,
            retract,
            verdict,
        });
    }
    let mut compatibility = Vec::new();
    for &n in &stages {
        compatibility.push(s.i_square(f, n)?);
        compatibility.push(s.r_square(f, n)?);
    }
    let verdict = components
        .iter()
        .fold(verdict_of(&compatibility), |v, k| v.and(k.verdict));
    Ok(HoalgReport {
        algebra: alg.name.clone(),
        map: c.mor_name(f).to_string(),
        components,
        compatibility,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn reflection_algebra_along_the_unit() {
        let m = fixtures::idemfix_spec();
        let alg = &m.algebras["A"];
        let w = m.rel.cat().morphism("w").unwrap();
        let report = hoalg(&m.rel, alg, w, 5).unwrap();
        for k in &report.components {
            assert!(k.unit_square.passed(), "{:?}", k.unit_square.first_error());
            for r in &k.retract {
                assert_eq!(r.error, None, "{} stage {}", k.object, r.stage);
            }
        }
        for sq in &report.compatibility {
            assert_eq!(sq.error, None, "{} at {}", sq.name, sq.stage);
        }
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.components.len(), 2);
    }

    #[test]
    fn wrong_action_is_rejected() {
        let m = fixtures::idemfix_spec();
        let mut alg = m.algebras["A"].clone();
        let c = m.rel.cat();
        alg.action = c.morphism("w").unwrap();
        assert!(hoalg(&m.rel, &alg, alg.action, 3).is_err());
    }

    #[test]
    fn identity_verticals_break_the_retract() {
        let m = fixtures::idemfix_spec();
        let alg = &m.algebras["A"];
        let c = m.rel.cat();
        let s = Setup {
            rel: &m.rel,
            alg,
            apply: StageStep::Apply(RelFunctor {
                functor: Arc::new(alg.monad.functor.clone()),
                target: m.rel.clone(),
            }),
        };
        let x = c.object("X").unwrap();
        let mut w = s.retract_stage(x, 3).unwrap();
        assert_eq!(w.check().error, None);
        for l in w.certificate.steps[0].nat.components.values_mut() {
            l.verticals = l.source.objects(c).into_iter().map(|o| c.id(o)).collect();
        }
        assert!(w.check().error.is_some());
    }
}
