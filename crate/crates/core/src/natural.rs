//! Natural transformations between functors of any representation.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::category::{Category, Functor, MorOf, ObjOf};
use crate::exec::Exec;
use crate::fincat::FunctorData;

/// `η: source ⇒ target`, given by one component per object of the shared
/// source category.
pub struct NatTrans<F: Functor> {
    pub name: String,
    pub source: F,
    pub target: F,
    pub components: BTreeMap<ObjOf<F::Source>, MorOf<F::Target>>,
}

impl<F: Functor> Clone for NatTrans<F> {
    fn clone(&self) -> Self {
        NatTrans {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.clone(),
        }
    }
}

impl<F: Functor> std::fmt::Debug for NatTrans<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NatTrans")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("components", &self.components)
            .finish()
    }
}

pub type NatTransData = NatTrans<FunctorData>;

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum NatViolation {
    #[error("{source_functor} and {target_functor} do not share source and target categories")]
    Mismatch {
        source_functor: String,
        target_functor: String,
    },
    #[error("no component at {object}")]
    MissingComponent { object: String },
    #[error("component at {object} is {component}, expected a morphism {expected_dom} -> {expected_cod}")]
    ComponentType {
        object: String,
        component: String,
        expected_dom: String,
        expected_cod: String,
    },
    #[error("naturality square for {morphism} does not commute{}: {left} vs {right}", column_note(.column))]
    Square {
        morphism: String,
        /// First failing column, when the components have columns.
        column: Option<usize>,
        left: String,
        right: String,
    },
}

fn column_note(column: &Option<usize>) -> String {
    column.map_or_else(String::new, |k| format!(" in column {k}"))
}

impl<F: Functor> NatTrans<F> {
    pub fn component(&self, a: &ObjOf<F::Source>) -> Option<&MorOf<F::Target>> {
        self.components.get(a)
    }

    /// The identity transformation on `f`.
    pub fn identity(f: &F) -> Self {
        let components = f
            .source()
            .objects()
            .iter()
            .map(|a| (a.clone(), f.target().identity(&f.map_obj(a))))
            .collect();
        NatTrans {
            name: format!("id_{}", f.label()),
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    /// Builds the transformation from a component rule evaluated on every
    /// object of the source category.
    pub fn from_fn(
        exec: Exec,
        name: &str,
        source: &F,
        target: &F,
        component: impl Fn(&ObjOf<F::Source>) -> MorOf<F::Target> + Sync + Send,
    ) -> Self {
        let objects = source.source().objects();
        let values = exec.map(&objects, |a| (a.clone(), component(a)));
        NatTrans {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            components: values.into_iter().collect(),
        }
    }
}

pub fn check_nat_trans<F: Functor>(eta: &NatTrans<F>) -> Result<(), NatViolation> {
    check_nat_trans_with(Exec::default(), eta)
}

/// The part of [`check_nat_trans_with`] that does not look at morphisms:
/// matching categories and one well-typed component per object.
pub fn check_components_with<F: Functor>(
    exec: Exec,
    eta: &NatTrans<F>,
) -> Result<(), NatViolation> {
    let (f, g) = (&eta.source, &eta.target);
    if !f.source().same_category(g.source()) || !f.target().same_category(g.target()) {
        return Err(NatViolation::Mismatch {
            source_functor: f.label(),
            target_functor: g.label(),
        });
    }
    let src = f.source();
    let tgt = f.target();
    exec.try_each(&src.objects(), |a| {
        let c = eta
            .components
            .get(a)
            .ok_or_else(|| NatViolation::MissingComponent {
                object: src.show_obj(a),
            })?;
        let (fa, ga) = (f.map_obj(a), g.map_obj(a));
        if !tgt.has_morphism(c) || tgt.dom(c) != fa || tgt.cod(c) != ga {
            return Err(NatViolation::ComponentType {
                object: src.show_obj(a),
                component: tgt.show_mor(c),
                expected_dom: tgt.show_obj(&fa),
                expected_cod: tgt.show_obj(&ga),
            });
        }
        Ok(())
    })
}

/// Checks component typing on every object, then every naturality square
/// `G(f) ∘ η_a = η_b ∘ F(f)`.
pub fn check_nat_trans_with<F: Functor>(exec: Exec, eta: &NatTrans<F>) -> Result<(), NatViolation> {
    check_components_with(exec, eta)?;
    let (f, g) = (&eta.source, &eta.target);
    let src = f.source();
    let tgt = f.target();
    src.try_for_each_morphism(exec, |m| {
        let (a, b) = (src.dom(m), src.cod(m));
        let left = tgt.compose(&g.map_mor(m), &eta.components[&a]);
        let right = tgt.compose(&eta.components[&b], &f.map_mor(m));
        if left.is_none() || left != right {
            let show = |x: &Option<MorOf<F::Target>>| {
                x.as_ref()
                    .map_or_else(|| "undefined".into(), |x| tgt.show_mor(x))
            };
            return Err(NatViolation::Square {
                morphism: src.show_mor(m),
                column: None,
                left: show(&left),
                right: show(&right),
            });
        }
        Ok(())
    })
}

/// Vertical composite `θ ∘ η` of `η: F ⇒ G` and `θ: G ⇒ H`.
pub fn vertical<F: Functor>(eta: &NatTrans<F>, theta: &NatTrans<F>) -> Option<NatTrans<F>> {
    let tgt = eta.source.target();
    let mut components = BTreeMap::new();
    for (a, e) in &eta.components {
        let t = theta.components.get(a)?;
        components.insert(a.clone(), tgt.compose(t, e)?);
    }
    Some(NatTrans {
        name: format!("{}{}", theta.name, eta.name),
        source: eta.source.clone(),
        target: theta.target.clone(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, RawArrow, RawCategory};
    use std::sync::Arc;

    fn weq_cat() -> Arc<crate::fincat::FinCat> {
        Arc::new(
            validate_category(&RawCategory {
                name: "WEQ".into(),
                objects: vec!["X".into(), "Y".into()],
                arrows: vec![RawArrow {
                    name: "w".into(),
                    source: "X".into(),
                    target: "Y".into(),
                }],
                composites: vec![],
            })
            .unwrap(),
        )
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn collapse(c: &Arc<crate::fincat::FinCat>) -> FunctorData {
        FunctorData::from_names(
            "L",
            c,
            c,
            &pairs(&[("X", "Y"), ("Y", "Y")]),
            &pairs(&[("w", "id_Y")]),
        )
        .unwrap()
    }

    #[test]
    fn identity_transformation_is_natural() {
        let c = weq_cat();
        let l = collapse(&c);
        check_nat_trans(&NatTrans::identity(&l)).unwrap();
    }

    #[test]
    fn unit_of_the_collapse() {
        let c = weq_cat();
        let l = collapse(&c);
        let id = FunctorData::identity(&c);
        let x = c.object("X").unwrap();
        let y = c.object("Y").unwrap();
        let mut components = BTreeMap::new();
        components.insert(x, c.morphism("w").unwrap());
        components.insert(y, c.id(y));
        let ell = NatTrans {
            name: "ell".into(),
            source: id.clone(),
            target: l.clone(),
            components: components.clone(),
        };
        check_nat_trans(&ell).unwrap();

        components.insert(y, c.morphism("w").unwrap());
        let bad = NatTrans { components, ..ell };
        assert!(matches!(
            check_nat_trans(&bad),
            Err(NatViolation::ComponentType { object, .. }) if object == "Y"
        ));
    }
}
