//! Categories with weak equivalences and the homotopical data attached to
//! them: cylinders, left homotopies, monads, homotopy algebras and homotopy
//! idempotent functors.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::category::{check_functor, functors_agree, Composable};
use crate::fincat::{FinCat, FunctorData, MorId, ObjId};
use crate::natural::{check_nat_trans, NatTransData, NatViolation};
use crate::oracle::{self, Equality, Word};

/// A finite category together with a composition-closed class of weak
/// equivalences containing every identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelCat {
    cat: Arc<FinCat>,
    weq: Vec<bool>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum RelCatError {
    #[error("unknown morphism {0} in the weak equivalences")]
    UnknownMorphism(String),
    #[error("identity {0} is not a weak equivalence")]
    MissingIdentity(String),
    #[error("weak equivalences are not closed under composition: {outer} . {inner} = {composite} is missing")]
    NotClosed {
        outer: String,
        inner: String,
        composite: String,
    },
}

impl RelCat {
    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn cat_arc(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn name(&self) -> &str {
        self.cat.name()
    }

    pub fn is_weq(&self, m: MorId) -> bool {
        self.weq[m.index()]
    }

    pub fn weq_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        self.cat.morphism_ids().filter(|m| self.is_weq(*m))
    }

    pub fn weq_names(&self) -> Vec<String> {
        self.weq_ids()
            .map(|m| self.cat.mor_name(m).to_string())
            .collect()
    }
}

pub fn validate_relcat(cat: Arc<FinCat>, weq: &[MorId]) -> Result<RelCat, RelCatError> {
    let mut mask = vec![false; cat.morphism_count()];
    for m in weq {
        if m.index() >= mask.len() {
            return Err(RelCatError::UnknownMorphism(format!("#{}", m.0)));
        }
        mask[m.index()] = true;
    }
    for o in cat.object_ids() {
        if !mask[cat.id(o).index()] {
            return Err(RelCatError::MissingIdentity(
                cat.mor_name(cat.id(o)).to_string(),
            ));
        }
    }
    for g in cat.morphism_ids().filter(|m| mask[m.index()]) {
        for f in cat.into_obj(cat.source(g)) {
            if !mask[f.index()] {
                continue;
            }
            let h = cat.then(*f, g);
            if !mask[h.index()] {
                return Err(RelCatError::NotClosed {
                    outer: cat.mor_name(g).to_string(),
                    inner: cat.mor_name(*f).to_string(),
                    composite: cat.mor_name(h).to_string(),
                });
            }
        }
    }
    Ok(RelCat { cat, weq: mask })
}

/// Like [`validate_relcat`], by morphism name.
pub fn validate_relcat_names(cat: Arc<FinCat>, weq: &[&str]) -> Result<RelCat, RelCatError> {
    let ids = weq
        .iter()
        .map(|n| {
            cat.morphism(n)
                .ok_or_else(|| RelCatError::UnknownMorphism(n.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_relcat(cat, &ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoOfThreeCounterexample {
    pub outer: String,
    pub inner: String,
    pub composite: String,
    pub not_weq: String,
}

/// Two-out-of-three over every composable pair.
pub fn check_two_out_of_three(r: &RelCat) -> Result<(), TwoOfThreeCounterexample> {
    let c = r.cat();
    for g in c.morphism_ids() {
        for f in c.into_obj(c.source(g)) {
            let h = c.then(*f, g);
            let flags = [r.is_weq(*f), r.is_weq(g), r.is_weq(h)];
            if flags.iter().filter(|b| **b).count() == 2 {
                let missing = [*f, g, h][flags.iter().position(|b| !*b).expect("one is missing")];
                return Err(TwoOfThreeCounterexample {
                    outer: c.mor_name(g).to_string(),
                    inner: c.mor_name(*f).to_string(),
                    composite: c.mor_name(h).to_string(),
                    not_weq: c.mor_name(missing).to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum HomotopyError {
    #[error("{what} has the wrong source or target")]
    Typing { what: String },
    #[error("{morphism} is not a weak equivalence")]
    NotWeq { morphism: String },
    #[error("equation {equation} fails: left side is {found}")]
    Equation { equation: String, found: String },
    #[error("{0}")]
    Functor(String),
    #[error("{name}: {violation}")]
    Natural {
        name: String,
        violation: NatViolation,
    },
    #[error("{law} fails at {object}")]
    Law { law: String, object: String },
    #[error("no witness for {object}")]
    MissingWitness { object: String },
}

/// `i0, i1: A → Cyl(A)` and `p: Cyl(A) → A` with `p∘i0 = p∘i1 = id_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderData {
    pub base: ObjId,
    pub cylinder: ObjId,
    pub i0: MorId,
    pub i1: MorId,
    pub p: MorId,
}

impl CylinderData {
    /// `Cyl(A) = A` with every structure map the identity.
    pub fn degenerate(c: &FinCat, a: ObjId) -> CylinderData {
        let id = c.id(a);
        CylinderData {
            base: a,
            cylinder: a,
            i0: id,
            i1: id,
            p: id,
        }
    }

    pub fn validate(&self, r: &RelCat) -> Result<(), HomotopyError> {
        let c = r.cat();
        let typed = |m: MorId, s: ObjId, t: ObjId, what: &str| {
            if c.source(m) == s && c.target(m) == t {
                Ok(())
            } else {
                Err(HomotopyError::Typing {
                    what: format!("{what} = {}", c.mor_name(m)),
                })
            }
        };
        typed(self.i0, self.base, self.cylinder, "i0")?;
        typed(self.i1, self.base, self.cylinder, "i1")?;
        typed(self.p, self.cylinder, self.base, "p")?;
        for m in [self.i0, self.i1, self.p] {
            if !r.is_weq(m) {
                return Err(HomotopyError::NotWeq {
                    morphism: c.mor_name(m).to_string(),
                });
            }
        }
        let id = c.id(self.base);
        for (i, name) in [(self.i0, "p . i0"), (self.i1, "p . i1")] {
            let found = c.then(i, self.p);
            if found != id {
                return Err(HomotopyError::Equation {
                    equation: format!("{name} = {}", c.mor_name(id)),
                    found: c.mor_name(found).to_string(),
                });
            }
        }
        Ok(())
    }
}

/// `H: Cyl(A) → B` with `H∘i0 = f` and `H∘i1 = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftHomotopyData {
    pub name: String,
    pub cylinder: CylinderData,
    pub f: MorId,
    pub g: MorId,
    pub homotopy: MorId,
}

impl LeftHomotopyData {
    /// The constant homotopy on `f` through the degenerate cylinder.
    pub fn constant(c: &FinCat, f: MorId) -> LeftHomotopyData {
        LeftHomotopyData {
            name: format!("const_{}", c.mor_name(f)),
            cylinder: CylinderData::degenerate(c, c.source(f)),
            f,
            g: f,
            homotopy: f,
        }
    }

    pub fn target(&self, c: &FinCat) -> ObjId {
        c.target(self.homotopy)
    }

    pub fn validate(&self, r: &RelCat) -> Result<(), HomotopyError> {
        self.cylinder.validate(r)?;
        let c = r.cat();
        let a = self.cylinder.base;
        let b = c.target(self.homotopy);
        if c.source(self.homotopy) != self.cylinder.cylinder {
            return Err(HomotopyError::Typing {
                what: format!("H = {}", c.mor_name(self.homotopy)),
            });
        }
        for (m, what) in [(self.f, "f"), (self.g, "g")] {
            if c.source(m) != a || c.target(m) != b {
                return Err(HomotopyError::Typing {
                    what: format!("{what} = {}", c.mor_name(m)),
                });
            }
        }
        for (i, end, name) in [
            (self.cylinder.i0, self.f, "H . i0"),
            (self.cylinder.i1, self.g, "H . i1"),
        ] {
            let found = c.then(i, self.homotopy);
            if found != end {
                return Err(HomotopyError::Equation {
                    equation: format!("{name} = {}", c.mor_name(end)),
                    found: c.mor_name(found).to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Evidence that two parallel morphisms are homotopic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyWitness {
    Strict,
    Homotopy(LeftHomotopyData),
}

impl HomotopyWitness {
    /// Checks that the witness relates `lhs` (at `i0`) to `rhs` (at `i1`).
    pub fn validate_between(
        &self,
        r: &RelCat,
        lhs: MorId,
        rhs: MorId,
        label: &str,
    ) -> Result<(), HomotopyError> {
        let c = r.cat();
        match self {
            HomotopyWitness::Strict => {
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(HomotopyError::Equation {
                        equation: format!("{label}: {} = {}", c.mor_name(lhs), c.mor_name(rhs)),
                        found: c.mor_name(lhs).to_string(),
                    })
                }
            }
            HomotopyWitness::Homotopy(h) => {
                h.validate(r)?;
                if h.f != lhs || h.g != rhs {
                    return Err(HomotopyError::Equation {
                        equation: format!(
                            "{label}: {} relates {} and {}",
                            h.name,
                            c.mor_name(lhs),
                            c.mor_name(rhs)
                        ),
                        found: format!("{} and {}", c.mor_name(h.f), c.mor_name(h.g)),
                    });
                }
                Ok(())
            }
        }
    }

    /// The witness as left homotopy data, realizing STRICT by the degenerate
    /// cylinder.
    pub fn realize(&self, c: &FinCat, lhs: MorId) -> LeftHomotopyData {
        match self {
            HomotopyWitness::Strict => LeftHomotopyData::constant(c, lhs),
            HomotopyWitness::Homotopy(h) => h.clone(),
        }
    }
}

fn natural(eta: &NatTransData) -> Result<(), HomotopyError> {
    check_nat_trans(eta).map_err(|violation| HomotopyError::Natural {
        name: eta.name.clone(),
        violation,
    })
}

fn endofunctor(r: &RelCat, f: &FunctorData) -> Result<(), HomotopyError> {
    if !f.source.same_category_as(r.cat()) || !f.target.same_category_as(r.cat()) {
        return Err(HomotopyError::Functor(format!(
            "{} is not an endofunctor of {}",
            f.name,
            r.name()
        )));
    }
    check_functor(f).map_err(|v| HomotopyError::Functor(format!("{}: {v}", f.name)))
}

trait SameAs {
    fn same_category_as(&self, other: &FinCat) -> bool;
}

impl SameAs for Arc<FinCat> {
    fn same_category_as(&self, other: &FinCat) -> bool {
        std::ptr::eq(self.as_ref(), other) || self.as_ref() == other
    }
}

/// Checks that `f` sends weak equivalences to weak equivalences.
pub fn preserves_weq(r: &RelCat, f: &FunctorData) -> Result<(), HomotopyError> {
    for m in r.weq_ids() {
        if !r.is_weq(f.mor(m)) {
            return Err(HomotopyError::NotWeq {
                morphism: format!(
                    "{}({}) = {}",
                    f.name,
                    r.cat().mor_name(m),
                    r.cat().mor_name(f.mor(m))
                ),
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MonadData {
    pub name: String,
    pub functor: FunctorData,
    pub eta: NatTransData,
    pub mu: NatTransData,
}

pub fn validate_monad(r: &RelCat, m: &MonadData) -> Result<(), HomotopyError> {
    let c = r.cat();
    let t = &m.functor;
    endofunctor(r, t)?;
    let id = FunctorData::identity(r.cat_arc());
    let tt = t.then(t).map_err(HomotopyError::Functor)?;
    let same = |a: &FunctorData, b: &FunctorData, what: &str| {
        functors_agree(a, b).map_err(|e| HomotopyError::Functor(format!("{what}: {e}")))
    };
    same(&m.eta.source, &id, "source of eta must be the identity")?;
    same(&m.eta.target, t, "target of eta must be T")?;
    same(&m.mu.source, &tt, "source of mu must be TT")?;
    same(&m.mu.target, t, "target of mu must be T")?;
    natural(&m.eta)?;
    natural(&m.mu)?;
    for x in c.object_ids() {
        let tx = t.obj(x);
        let mu_x = m.mu.components[&x];
        let law = |name: &str, lhs: MorId, rhs: MorId| {
            if lhs == rhs {
                Ok(())
            } else {
                Err(HomotopyError::Law {
                    law: name.to_string(),
                    object: c.obj_name(x).to_string(),
                })
            }
        };
        law(
            "mu . T(mu) = mu . mu_T",
            c.then(t.mor(mu_x), mu_x),
            c.then(m.mu.components[&tx], mu_x),
        )?;
        law(
            "mu . T(eta) = id",
            c.then(t.mor(m.eta.components[&x]), mu_x),
            c.id(tx),
        )?;
        law(
            "mu . eta_T = id",
            c.then(m.eta.components[&tx], mu_x),
            c.id(tx),
        )?;
    }
    Ok(())
}

/// An object with an action `a: TX → X` satisfying the algebra laws up to the
/// given witnesses: `a∘η_X ≃ id_X` and `a∘μ_X ≃ a∘T(a)`.
#[derive(Clone, Debug)]
pub struct HoAlgebraData {
    pub name: String,
    pub monad: MonadData,
    pub carrier: ObjId,
    pub action: MorId,
    pub unit: HomotopyWitness,
    pub assoc: HomotopyWitness,
}

impl HoAlgebraData {
    /// `a∘η_X`
    pub fn unit_composite(&self, c: &FinCat) -> MorId {
        c.then(self.monad.eta.components[&self.carrier], self.action)
    }
}

pub fn validate_hoalgebra(r: &RelCat, alg: &HoAlgebraData) -> Result<(), HomotopyError> {
    validate_monad(r, &alg.monad)?;
    let c = r.cat();
    let t = &alg.monad.functor;
    let x = alg.carrier;
    if c.source(alg.action) != t.obj(x) || c.target(alg.action) != x {
        return Err(HomotopyError::Typing {
            what: format!("action {}", c.mor_name(alg.action)),
        });
    }
    alg.unit
        .validate_between(r, alg.unit_composite(c), c.id(x), "unit")?;
    let left = c.then(alg.monad.mu.components[&x], alg.action);
    let right = c.then(t.mor(alg.action), alg.action);
    alg.assoc.validate_between(r, left, right, "associativity")
}

/// An endofunctor `L` with `ℓ: Id ⇒ L`, plus for some objects `Z` a witness
/// that `Lℓ_Z ≃ ℓ_{LZ}` (a homotopy on a cylinder of `LZ`).
#[derive(Clone, Debug)]
pub struct IdempotentData {
    pub name: String,
    pub functor: FunctorData,
    pub ell: NatTransData,
    pub homotopies: BTreeMap<ObjId, HomotopyWitness>,
}

impl IdempotentData {
    /// `(Lℓ_Z, ℓ_{LZ})`
    pub fn pair(&self, z: ObjId) -> (MorId, MorId) {
        let l = &self.functor;
        (
            l.mor(self.ell.components[&z]),
            self.ell.components[&l.obj(z)],
        )
    }

    /// The witness attached to `z`, validated; STRICT is implied when the two
    /// morphisms coincide and no witness was given.
    pub fn witness(&self, r: &RelCat, z: ObjId) -> Result<HomotopyWitness, HomotopyError> {
        let (a, b) = self.pair(z);
        match self.homotopies.get(&z) {
            Some(w) => {
                w.validate_between(
                    r,
                    a,
                    b,
                    &format!("L(ell) vs ell_L at {}", r.cat().obj_name(z)),
                )?;
                Ok(w.clone())
            }
            None if a == b => Ok(HomotopyWitness::Strict),
            None => Err(HomotopyError::MissingWitness {
                object: r.cat().obj_name(z).to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdempotentVerdict {
    Pass,
    Fail { object: String, reason: String },
    Unknown { object: String },
}

/// Structural checks (functor, naturality, weak equivalences) are exact;
/// equality of `Lℓ_X` and `ℓ_{LX}` in the localization uses the table, a
/// declared homotopy, or the bounded word oracle.
pub fn validate_idempotent(
    r: &RelCat,
    d: &IdempotentData,
    bound: usize,
) -> Result<IdempotentVerdict, HomotopyError> {
    let c = r.cat();
    let l = &d.functor;
    endofunctor(r, l)?;
    let id = FunctorData::identity(r.cat_arc());
    functors_agree(&d.ell.source, &id)
        .map_err(|e| HomotopyError::Functor(format!("source of ell: {e}")))?;
    functors_agree(&d.ell.target, l)
        .map_err(|e| HomotopyError::Functor(format!("target of ell: {e}")))?;
    natural(&d.ell)?;
    for m in r.weq_ids() {
        if !r.is_weq(l.mor(m)) {
            return Ok(IdempotentVerdict::Fail {
                object: c.obj_name(c.source(m)).to_string(),
                reason: format!(
                    "L({}) = {} is not a weak equivalence",
                    c.mor_name(m),
                    c.mor_name(l.mor(m))
                ),
            });
        }
    }
    let mut unknown = None;
    for x in c.object_ids() {
        let (a, b) = d.pair(x);
        for (m, what) in [(a, "L(ell)"), (b, "ell_L")] {
            if !r.is_weq(m) {
                return Ok(IdempotentVerdict::Fail {
                    object: c.obj_name(x).to_string(),
                    reason: format!("{what} = {} is not a weak equivalence", c.mor_name(m)),
                });
            }
        }
        if a == b {
            continue;
        }
        if let Some(w) = d.homotopies.get(&x) {
            w.validate_between(r, a, b, &format!("L(ell) vs ell_L at {}", c.obj_name(x)))?;
            continue;
        }
        match oracle::equal_in_localization(r, &Word::plain(c, a), &Word::plain(c, b), bound) {
            Ok(Equality::Yes) => {}
            Ok(Equality::NoAtBound) => {
                return Ok(IdempotentVerdict::Fail {
                    object: c.obj_name(x).to_string(),
                    reason: format!(
                        "{} and {} differ in the localization",
                        c.mor_name(a),
                        c.mor_name(b)
                    ),
                })
            }
            Ok(Equality::Unknown) | Err(_) => {
                unknown.get_or_insert_with(|| c.obj_name(x).to_string());
            }
        }
    }
    Ok(match unknown {
        Some(object) => IdempotentVerdict::Unknown { object },
        None => IdempotentVerdict::Pass,
    })
}
