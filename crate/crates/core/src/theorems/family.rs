//! A certificate per odd stage, together with the check that the
//! certificates at consecutive stages are related by the stage inclusions.

use serde::{Deserialize, Serialize};

use crate::category::{Category, Functor};
use crate::exec::Exec;
use crate::hammock::{stage_inclusion, Position, StageFunctor};
use crate::natural::{NatTrans, NatViolation};
use crate::homcert::{
    certificate_to_wire, functor_to_wire, CertError, Direction, StageCertificate, WireCertificate,
    WireContext, WireFunctor,
};

/// A certificate at one stage with the functors it must join.
#[derive(Clone, Debug)]
pub struct StageWitness {
    pub stage: usize,
    pub from: StageFunctor,
    pub to: StageFunctor,
    pub certificate: StageCertificate,
}

/// Certificates for every odd stage up to a bound. Moving one stage up,
/// sources are included at `source_inclusion` and targets at
/// `target_inclusion`.
#[derive(Clone, Debug)]
pub struct StageWitnessFamily {
    pub name: String,
    pub source_inclusion: Position,
    pub target_inclusion: Position,
    pub stages: Vec<StageWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageCheck {
    pub stage: usize,
    pub source: String,
    pub target: String,
    pub zigzags: usize,
    pub shape: Vec<Direction>,
    pub error: Option<String>,
    /// Column of the first offending square or vertical, when known.
    pub column: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatCheck {
    pub from_stage: usize,
    pub to_stage: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub stages: Vec<StageCheck>,
    pub compatibility: Vec<CompatCheck>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.error.is_none())
            && self.compatibility.iter().all(|c| c.error.is_none())
    }

    /// The first failure, prefixed by the stage it occurred at.
    pub fn first_error(&self) -> Option<String> {
        let stage = self.stages.iter().find_map(|s| {
            s.error
                .as_ref()
                .map(|e| format!("stage {}: {e}", s.stage))
        });
        stage.or_else(|| {
            self.compatibility.iter().find_map(|c| {
                c.error
                    .as_ref()
                    .map(|e| format!("stages {} to {}: {e}", c.from_stage, c.to_stage))
            })
        })
    }
}

impl StageWitness {
    pub fn verify(&self) -> Result<(), CertError> {
        self.certificate.verify_between(&self.from, &self.to)
    }

    /// The column a verification error points at.
    pub fn column_of(&self, e: &CertError) -> Option<usize> {
        match e {
            CertError::Natural {
                violation: NatViolation::Square { column, .. },
                ..
            } => *column,
            CertError::Natural { index, .. } => bad_column(&self.certificate.steps[*index].nat),
            _ => None,
        }
    }

    pub fn check(&self) -> StageCheck {
        let error = self.verify().err();
        StageCheck {
            stage: self.stage,
            source: self.from.source_stage().label(),
            target: self.from.target_stage().label(),
            zigzags: self.from.source_stage().zigzags().len(),
            shape: self.certificate.shape(),
            column: error.as_ref().and_then(|e| self.column_of(e)),
            error: error.map(|e| e.to_string()),
        }
    }

    /// The functors the certificate passes through, in order.
    fn functors(&self) -> Vec<&StageFunctor> {
        let mut out = vec![&self.certificate.start];
        out.extend(self.certificate.steps.iter().map(|s| s.to()));
        out
    }
}

impl StageWitnessFamily {
    pub fn verify(&self) -> FamilyReport {
        self.verify_with(Exec::default())
    }

    pub fn verify_with(&self, exec: Exec) -> FamilyReport {
        let stages = self
            .stages
            .iter()
            .map(StageWitness::check)
            .collect();
        let compatibility = self
            .stages
            .windows(2)
            .map(|pair| CompatCheck {
                from_stage: pair[0].stage,
                to_stage: pair[1].stage,
                error: compatible(
                    exec,
                    &pair[0],
                    &pair[1],
                    self.source_inclusion,
                    self.target_inclusion,
                )
                .err(),
            })
            .collect();
        FamilyReport {
            name: self.name.clone(),
            stages,
            compatibility,
        }
    }

    pub fn to_wire(&self) -> WireFamily {
        WireFamily {
            name: self.name.clone(),
            source_inclusion: self.source_inclusion,
            target_inclusion: self.target_inclusion,
            stages: self
                .stages
                .iter()
                .map(|w| WireStageWitness {
                    stage: w.stage,
                    from: functor_to_wire(&w.from),
                    to: functor_to_wire(&w.to),
                    certificate: certificate_to_wire(&w.certificate),
                })
                .collect(),
        }
    }

    pub fn from_wire(ctx: &WireContext, w: &WireFamily) -> Result<StageWitnessFamily, String> {
        let stages = w
            .stages
            .iter()
            .map(|s| {
                Ok(StageWitness {
                    stage: s.stage,
                    from: ctx.functor(&s.from)?,
                    to: ctx.functor(&s.to)?,
                    certificate: ctx.certificate(&s.certificate)?,
                })
            })
            .collect::<Result<_, String>>()?;
        Ok(StageWitnessFamily {
            name: w.name.clone(),
            source_inclusion: w.source_inclusion,
            target_inclusion: w.target_inclusion,
            stages,
        })
    }
}

/// First column at which some component is mistyped or is not itself a
/// ladder.
pub fn bad_column(nat: &NatTrans<StageFunctor>) -> Option<usize> {
    let c = nat.source.target_stage().cat();
    nat.components.values().find_map(|l| {
        let (s, t) = (l.source.objects(c), l.target.objects(c));
        if l.verticals.len() != s.len() || s.len() != t.len() {
            return None;
        }
        l.verticals
            .iter()
            .enumerate()
            .position(|(k, v)| c.source(*v) != s[k] || c.target(*v) != t[k])
            .or_else(|| l.first_bad_square(c))
    })
}

/// Objectwise and componentwise comparison of the certificate at stage
/// `n + 2` with the one at stage `n` transported along the inclusions.
fn compatible(
    exec: Exec,
    lo: &StageWitness,
    hi: &StageWitness,
    source_at: Position,
    target_at: Position,
) -> Result<(), String> {
    if lo.certificate.shape() != hi.certificate.shape() {
        return Err("certificates have different shapes".into());
    }
    let src = lo.from.source_stage();
    let incl_s = stage_inclusion(src, source_at).map_err(|e| e.to_string())?;
    let incl_t = stage_inclusion(lo.from.target_stage(), target_at).map_err(|e| e.to_string())?;
    if !incl_s
        .target_stage()
        .same_category(hi.from.source_stage())
    {
        return Err("source stages are not consecutive".into());
    }
    if !incl_t
        .target_stage()
        .same_category(hi.from.target_stage())
    {
        return Err("target stages are not consecutive".into());
    }
    let tgt = hi.from.target_stage();
    let (lo_fs, hi_fs) = (lo.functors(), hi.functors());
    exec.try_each(&src.zigzags(), |z| {
        let up = incl_s.map_obj(z);
        for (i, (f, g)) in lo_fs.iter().zip(&hi_fs).enumerate() {
            let (a, b) = (g.map_obj(&up), incl_t.map_obj(&f.map_obj(z)));
            if a != b {
                return Err(format!(
                    "functor {i} at {}: {} vs {}",
                    src.show_obj(z),
                    tgt.show_obj(&a),
                    tgt.show_obj(&b)
                ));
            }
        }
        for (i, (s, t)) in lo
            .certificate
            .steps
            .iter()
            .zip(&hi.certificate.steps)
            .enumerate()
        {
            let expected = incl_t.map_mor(&s.nat.components[z]);
            match t.nat.components.get(&up) {
                Some(found) if *found == expected => {}
                found => {
                    let column = found.and_then(|l| {
                        l.verticals
                            .iter()
                            .zip(&expected.verticals)
                            .position(|(a, b)| a != b)
                    });
                    return Err(format!(
                        "step {i} at zig-zag {}{}: {} vs {}",
                        src.show_obj(z),
                        column.map_or_else(String::new, |k| format!(", column {k}")),
                        found.map_or_else(|| "missing".into(), |l| tgt.show_mor(l)),
                        tgt.show_mor(&expected)
                    ));
                }
            }
        }
        Ok(())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireStageWitness {
    pub stage: usize,
    pub from: WireFunctor,
    pub to: WireFunctor,
    pub certificate: WireCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireFamily {
    pub name: String,
    pub source_inclusion: Position,
    pub target_inclusion: Position,
    pub stages: Vec<WireStageWitness>,
}
