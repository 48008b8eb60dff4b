//! Resolution of a parsed spec file into categories and their payloads.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::dsl::ast::{CategorySection, Mode, Name, Payload, SpecFile, WitnessRef};
use crate::dsl::lexer::{Pos, SyntaxError};
use crate::dsl::parser::parse_spec;
use crate::fincat::{
    free_acyclic, validate_category, FinCat, FunctorData, MorId, ObjId, RawArrow, RawCategory,
    RawComposite, RawGraph,
};
use crate::natural::NatTransData;
use crate::relcat::{
    validate_relcat_names, CylinderData, HoAlgebraData, HomotopyWitness, IdempotentData,
    LeftHomotopyData, MonadData, RelCat,
};

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
#[error("{pos}: {message}")]
pub struct LoadError {
    pub pos: Pos,
    pub message: String,
}

impl From<SyntaxError> for LoadError {
    fn from(e: SyntaxError) -> Self {
        LoadError {
            pos: e.pos,
            message: e.message,
        }
    }
}

fn err<T>(name: &Name, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError {
        pos: name.pos,
        message: message.into(),
    })
}

/// A loaded spec file. `rel` is the first category; payloads are looked up
/// by name across all categories.
#[derive(Clone, Debug)]
pub struct Model {
    pub rel: Arc<RelCat>,
    pub categories: Vec<Arc<RelCat>>,
    pub functors: BTreeMap<String, FunctorData>,
    pub nats: BTreeMap<String, NatTransData>,
    /// Keyed by (category, base object).
    pub cylinders: BTreeMap<(String, String), CylinderData>,
    pub homotopies: BTreeMap<String, LeftHomotopyData>,
    pub monads: BTreeMap<String, MonadData>,
    pub algebras: BTreeMap<String, HoAlgebraData>,
    pub idempotents: BTreeMap<String, IdempotentData>,
    /// Category each named payload was declared in.
    pub owner: BTreeMap<String, String>,
}

impl Model {
    pub fn category(&self, name: &str) -> Option<&Arc<RelCat>> {
        self.categories.iter().find(|c| c.name() == name)
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorData> {
        self.functors.get(name)
    }

    pub fn nat(&self, name: &str) -> Option<&NatTransData> {
        self.nats.get(name)
    }

    pub fn homotopy(&self, name: &str) -> Option<&LeftHomotopyData> {
        self.homotopies.get(name)
    }

    pub fn monad(&self, name: &str) -> Option<&MonadData> {
        self.monads.get(name)
    }

    pub fn algebra(&self, name: &str) -> Option<&HoAlgebraData> {
        self.algebras.get(name)
    }

    pub fn idempotent(&self, name: &str) -> Option<&IdempotentData> {
        self.idempotents.get(name)
    }

    /// The category a named payload lives in.
    pub fn owner_of(&self, name: &str) -> Option<&Arc<RelCat>> {
        self.owner.get(name).and_then(|c| self.category(c))
    }
}

pub fn load_model(text: &str) -> Result<Model, LoadError> {
    let spec = parse_spec(text)?;
    resolve(&spec)
}

/// Best position for an error mentioning `needle`: its first occurrence in
/// the section, else the section header.
fn locate(section: &CategorySection, needle: &str) -> Name {
    let mut names = section.objects.iter().chain(&section.weq);
    let hit = names
        .find(|n| n.text == needle)
        .or_else(|| {
            section
                .arrows
                .iter()
                .flat_map(|a| [&a.name, &a.source, &a.target])
                .find(|n| n.text == needle)
        })
        .or_else(|| {
            section
                .composites
                .iter()
                .flat_map(|k| [&k.outer, &k.inner, &k.result])
                .find(|n| n.text == needle)
        });
    hit.unwrap_or(&section.name).clone()
}

fn build_category(section: &CategorySection) -> Result<RelCat, LoadError> {
    let arrows: Vec<RawArrow> = section
        .arrows
        .iter()
        .map(|a| RawArrow {
            name: a.name.text.clone(),
            source: a.source.text.clone(),
            target: a.target.text.clone(),
        })
        .collect();
    let objects: Vec<String> = section.objects.iter().map(|o| o.text.clone()).collect();
    let cat = match section.mode {
        Mode::Table => validate_category(&RawCategory {
            name: section.name.text.clone(),
            objects,
            arrows,
            composites: section
                .composites
                .iter()
                .map(|k| RawComposite {
                    outer: k.outer.text.clone(),
                    inner: k.inner.text.clone(),
                    result: k.result.text.clone(),
                })
                .collect(),
        }),
        Mode::FreeAcyclic => {
            if let Some(k) = section.composites.first() {
                return err(
                    &k.outer,
                    "composites are derived in free-acyclic mode and may not be listed",
                );
            }
            free_acyclic(&RawGraph {
                name: section.name.text.clone(),
                vertices: objects,
                edges: arrows,
            })
        }
    };
    let cat = match cat {
        Ok(c) => Arc::new(c),
        Err(e) => {
            let msg = e.to_string();
            // Point at the first declared name the message mentions.
            let at = section
                .arrows
                .iter()
                .map(|a| &a.name)
                .chain(&section.objects)
                .find(|n| msg.contains(n.text.as_str()))
                .cloned()
                .unwrap_or_else(|| section.name.clone());
            return err(&at, msg);
        }
    };
    let mut weq: Vec<String> = cat
        .object_ids()
        .map(|o| cat.mor_name(cat.id(o)).to_string())
        .collect();
    for w in &section.weq {
        if cat.morphism(&w.text).is_none() {
            return err(w, format!("unknown morphism '{}' in weq", w.text));
        }
        weq.push(w.text.clone());
    }
    let names: Vec<&str> = weq.iter().map(String::as_str).collect();
    validate_relcat_names(cat, &names).map_err(|e| {
        let msg = e.to_string();
        let first = section
            .weq
            .iter()
            .find(|n| msg.contains(n.text.as_str()))
            .cloned()
            .unwrap_or_else(|| locate(section, ""));
        LoadError {
            pos: first.pos,
            message: msg,
        }
    })
}

struct Resolver {
    model: Model,
}

impl Resolver {
    fn cat_named(&self, n: &Name) -> Result<Arc<RelCat>, LoadError> {
        match self.model.category(&n.text) {
            Some(c) => Ok(c.clone()),
            None => err(n, format!("unknown category '{}'", n.text)),
        }
    }

    fn claim(&mut self, n: &Name, cat: &RelCat) -> Result<(), LoadError> {
        if self.model.owner.contains_key(&n.text) || n.text == "Id" {
            return err(n, format!("name '{}' is already declared", n.text));
        }
        self.model
            .owner
            .insert(n.text.clone(), cat.name().to_string());
        Ok(())
    }

    fn object(&self, cat: &FinCat, n: &Name) -> Result<ObjId, LoadError> {
        match cat.object(&n.text) {
            Some(o) => Ok(o),
            None => err(n, format!("unknown object '{}' in {}", n.text, cat.name())),
        }
    }

    fn morphism(&self, cat: &FinCat, n: &Name) -> Result<MorId, LoadError> {
        match cat.morphism(&n.text) {
            Some(m) => Ok(m),
            None => err(
                n,
                format!("unknown morphism '{}' in {}", n.text, cat.name()),
            ),
        }
    }

    /// A functor by name; `Id` is the identity of `default`.
    fn functor(&self, n: &Name, default: &RelCat) -> Result<FunctorData, LoadError> {
        if n.text == "Id" {
            return Ok(FunctorData::identity(default.cat_arc()));
        }
        match self.model.functors.get(&n.text) {
            Some(f) => Ok(f.clone()),
            None => err(n, format!("unknown functor '{}'", n.text)),
        }
    }

    fn nat(&self, n: &Name) -> Result<NatTransData, LoadError> {
        match self.model.nats.get(&n.text) {
            Some(t) => Ok(t.clone()),
            None => err(n, format!("unknown natural transformation '{}'", n.text)),
        }
    }

    fn witness(&self, w: &WitnessRef) -> Result<HomotopyWitness, LoadError> {
        match w {
            WitnessRef::Strict => Ok(HomotopyWitness::Strict),
            WitnessRef::Homotopy(n) => match self.model.homotopies.get(&n.text) {
                Some(h) => Ok(HomotopyWitness::Homotopy(h.clone())),
                None => err(n, format!("unknown homotopy '{}'", n.text)),
            },
        }
    }

    fn payload(&mut self, rel: &Arc<RelCat>, p: &Payload) -> Result<(), LoadError> {
        let cat = rel.cat();
        match p {
            Payload::Functor {
                name,
                signature,
                objects,
                arrows,
            } => {
                let (src, tgt) = match signature {
                    Some((a, b)) => (self.cat_named(a)?, self.cat_named(b)?),
                    None => (rel.clone(), rel.clone()),
                };
                let pairs = |v: &[(Name, Name)]| -> Vec<(String, String)> {
                    v.iter()
                        .map(|(a, b)| (a.text.clone(), b.text.clone()))
                        .collect()
                };
                let f = FunctorData::from_names(
                    &name.text,
                    src.cat_arc(),
                    tgt.cat_arc(),
                    &pairs(objects),
                    &pairs(arrows),
                )
                .or_else(|e| err(name, e.to_string()))?;
                self.claim(name, rel)?;
                self.model.functors.insert(name.text.clone(), f);
            }
            Payload::Nat {
                name,
                source,
                target,
                components,
            } => {
                // `Id` takes the category of the other side.
                let anchor = if source.text == "Id" { target } else { source };
                let probe = self.functor(anchor, rel)?;
                let home = self
                    .model
                    .categories
                    .iter()
                    .find(|c| c.cat() == probe.source.as_ref())
                    .cloned()
                    .unwrap_or_else(|| rel.clone());
                let s = self.functor(source, &home)?;
                let t = self.functor(target, &home)?;
                if s.source != t.source || s.target != t.target {
                    return err(
                        name,
                        format!(
                            "{} and {} have different source or target",
                            source.text, target.text
                        ),
                    );
                }
                let mut map = BTreeMap::new();
                for (a, m) in components {
                    let a_id = self.object(&s.source, a)?;
                    let m_id = self.morphism(&s.target, m)?;
                    if map.insert(a_id, m_id).is_some() {
                        return err(a, format!("component at '{}' given twice", a.text));
                    }
                }
                for o in s.source.object_ids() {
                    if !map.contains_key(&o) {
                        return err(
                            name,
                            format!("{}: no component at {}", name.text, s.source.obj_name(o)),
                        );
                    }
                }
                self.claim(name, rel)?;
                self.model.nats.insert(
                    name.text.clone(),
                    NatTransData {
                        name: name.text.clone(),
                        source: s,
                        target: t,
                        components: map,
                    },
                );
            }
            Payload::Cylinder {
                base,
                object,
                i0,
                i1,
                p,
            } => {
                let cyl = CylinderData {
                    base: self.object(cat, base)?,
                    cylinder: self.object(cat, object)?,
                    i0: self.morphism(cat, i0)?,
                    i1: self.morphism(cat, i1)?,
                    p: self.morphism(cat, p)?,
                };
                cyl.validate(rel)
                    .or_else(|e| err(base, format!("cylinder on {}: {e}", base.text)))?;
                let key = (rel.name().to_string(), base.text.clone());
                if self.model.cylinders.insert(key, cyl).is_some() {
                    return err(base, format!("cylinder on '{}' declared twice", base.text));
                }
            }
            Payload::LHomotopy {
                name,
                cylinder,
                f,
                g,
                via,
            } => {
                let key = (rel.name().to_string(), cylinder.text.clone());
                let cyl = match self.model.cylinders.get(&key) {
                    Some(c) => c.clone(),
                    None => {
                        return err(
                            cylinder,
                            format!("no cylinder declared on '{}'", cylinder.text),
                        )
                    }
                };
                let h = LeftHomotopyData {
                    name: name.text.clone(),
                    cylinder: cyl,
                    f: self.morphism(cat, f)?,
                    g: self.morphism(cat, g)?,
                    homotopy: self.morphism(cat, via)?,
                };
                h.validate(rel)
                    .or_else(|e| err(name, format!("{}: {e}", name.text)))?;
                self.claim(name, rel)?;
                self.model.homotopies.insert(name.text.clone(), h);
            }
            Payload::Monad {
                name,
                functor,
                eta,
                mu,
            } => {
                let m = MonadData {
                    name: name.text.clone(),
                    functor: self.functor(functor, rel)?,
                    eta: self.nat(eta)?,
                    mu: self.nat(mu)?,
                };
                self.claim(name, rel)?;
                self.model.monads.insert(name.text.clone(), m);
            }
            Payload::Algebra {
                name,
                monad,
                object,
                action,
                unit,
                assoc,
            } => {
                let m = match self.model.monads.get(&monad.text) {
                    Some(m) => m.clone(),
                    None => return err(monad, format!("unknown monad '{}'", monad.text)),
                };
                let a = HoAlgebraData {
                    name: name.text.clone(),
                    monad: m,
                    carrier: self.object(cat, object)?,
                    action: self.morphism(cat, action)?,
                    unit: self.witness(unit)?,
                    assoc: self.witness(assoc)?,
                };
                self.claim(name, rel)?;
                self.model.algebras.insert(name.text.clone(), a);
            }
            Payload::Idem {
                name,
                functor,
                ell,
                witnesses,
            } => {
                let mut homotopies = BTreeMap::new();
                for (z, w) in witnesses {
                    let z_id = self.object(cat, z)?;
                    if homotopies.insert(z_id, self.witness(w)?).is_some() {
                        return err(z, format!("witness at '{}' given twice", z.text));
                    }
                }
                let d = IdempotentData {
                    name: name.text.clone(),
                    functor: self.functor(functor, rel)?,
                    ell: self.nat(ell)?,
                    homotopies,
                };
                self.claim(name, rel)?;
                self.model.idempotents.insert(name.text.clone(), d);
            }
        }
        Ok(())
    }
}

/// Builds every category, then resolves payloads in file order. Identities
/// are always weak equivalences; the declared class must be closed under
/// composition. Laws (functoriality, naturality, monad laws) are checked
/// by the `validate` command, not here.
pub fn resolve(spec: &SpecFile) -> Result<Model, LoadError> {
    let mut categories: Vec<Arc<RelCat>> = Vec::new();
    for section in &spec.categories {
        if categories.iter().any(|c| c.name() == section.name.text) {
            return err(
                &section.name,
                format!("category '{}' declared twice", section.name.text),
            );
        }
        categories.push(Arc::new(build_category(section)?));
    }
    let mut r = Resolver {
        model: Model {
            rel: categories[0].clone(),
            categories: categories.clone(),
            functors: BTreeMap::new(),
            nats: BTreeMap::new(),
            cylinders: BTreeMap::new(),
            homotopies: BTreeMap::new(),
            monads: BTreeMap::new(),
            algebras: BTreeMap::new(),
            idempotents: BTreeMap::new(),
            owner: BTreeMap::new(),
        },
    };
    for (section, rel) in spec.categories.iter().zip(&categories) {
        for p in &section.payloads {
            r.payload(rel, p)?;
        }
    }
    Ok(r.model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_are_added_to_weq() {
        let m = load_model("category C\nobject X Y\narrow f : X -> Y\n").unwrap();
        assert_eq!(m.rel.weq_names(), ["id_X", "id_Y"]);
    }

    #[test]
    fn unresolved_names_are_positioned() {
        let e = load_model("category C\nobject X\nweq g\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 5 });
        let e = load_model("category C\nobject X\nfunctor F { obj X => Z }\n").unwrap_err();
        assert_eq!(e.pos.line, 3);
        let e = load_model("category C\nobject X\nnat n : Id => G { at X : id_X }\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 15 });
    }

    #[test]
    fn weq_must_be_closed() {
        let text = "category C\nmode free-acyclic\nobject X Y Z\narrow f : X -> Y\narrow g : Y -> Z\nweq f g\n";
        let e = load_model(text).unwrap_err();
        assert!(e.message.contains("closed"), "{e}");
    }
}
