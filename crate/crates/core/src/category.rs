//! Abstract finite categories and functors, and the exhaustive checks that
//! apply to every concrete representation (enumerated tables as well as the
//! generated hammock stage categories).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::natural::{check_nat_trans_with, NatTrans, NatViolation};
use crate::unionfind::UnionFind;

pub trait Category: Sync {
    type Obj: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    /// All objects, in canonical order.
    fn objects(&self) -> Arc<[Self::Obj]>;
    /// All morphisms, in canonical order.
    fn morphisms(&self) -> Arc<[Self::Mor]>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn dom(&self, m: &Self::Mor) -> Self::Obj;
    fn cod(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`, defined exactly when `cod(f) = dom(g)`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn has_object(&self, a: &Self::Obj) -> bool;
    fn has_morphism(&self, m: &Self::Mor) -> bool;
    fn same_category(&self, other: &Self) -> bool;
    fn show_obj(&self, a: &Self::Obj) -> String;
    fn show_mor(&self, m: &Self::Mor) -> String;

    /// Visits every morphism, stopping at the first error. The default walks
    /// [`Category::morphisms`]; large categories may stream instead.
    fn try_for_each_morphism<E, V>(&self, exec: Exec, visit: V) -> Result<(), E>
    where
        E: Send,
        V: Fn(&Self::Mor) -> Result<(), E> + Sync + Send,
    {
        exec.try_each(&self.morphisms(), visit)
    }
}

pub type ObjOf<C> = <C as Category>::Obj;
pub type MorOf<C> = <C as Category>::Mor;

pub trait Functor: Clone + Debug + Send + Sync {
    type Source: Category;
    type Target: Category;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn map_obj(&self, a: &ObjOf<Self::Source>) -> ObjOf<Self::Target>;
    fn map_mor(&self, m: &MorOf<Self::Source>) -> MorOf<Self::Target>;
    fn label(&self) -> String;

    /// Checks a transformation between two functors of this kind. The
    /// default is the exhaustive square check; representations with more
    /// structure may decide the same question faster.
    fn verify_natural(exec: Exec, eta: &NatTrans<Self>) -> Result<(), NatViolation> {
        check_nat_trans_with(exec, eta)
    }

    /// Several transformations at once; the error carries the index of the
    /// failing one. Representations that share work across transformations
    /// with a common source may override this.
    fn verify_natural_all(exec: Exec, etas: &[&NatTrans<Self>]) -> Result<(), (usize, NatViolation)> {
        for (i, eta) in etas.iter().enumerate() {
            Self::verify_natural(exec, eta).map_err(|v| (i, v))?;
        }
        Ok(())
    }

    /// Extensional equality, as [`functors_agree_with`].
    fn verify_agree(exec: Exec, a: &Self, b: &Self) -> Result<(), String> {
        functors_agree_with(exec, a, b)
    }
}

/// Functors that can be composed with functors of the same representation.
pub trait Composable: Functor + Sized {
    /// `next ∘ self`.
    fn then(&self, next: &Self) -> Result<Self, String>;
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum FunctorViolation {
    #[error("object {object} is sent to {image}, which is not an object of the target")]
    ObjectOutside { object: String, image: String },
    #[error("morphism {morphism} is sent to {image}, which is not a morphism of the target")]
    MorphismOutside { morphism: String, image: String },
    #[error("morphism {morphism} is sent to {image}, expected a morphism {expected_dom} -> {expected_cod}")]
    EndpointMismatch {
        morphism: String,
        image: String,
        expected_dom: String,
        expected_cod: String,
    },
    #[error("identity of {object} is sent to {image}, not an identity")]
    Identity { object: String, image: String },
    #[error("composite {outer} . {inner} is not preserved: F(g.f) = {composite_image}, F(g).F(f) = {composed_images}")]
    Composition {
        outer: String,
        inner: String,
        composite_image: String,
        composed_images: String,
    },
}

/// Exhaustively checks the functor laws.
pub fn check_functor<F: Functor>(f: &F) -> Result<(), FunctorViolation> {
    check_functor_with(Exec::default(), f)
}

pub fn check_functor_with<F: Functor>(exec: Exec, f: &F) -> Result<(), FunctorViolation> {
    let src = f.source();
    let tgt = f.target();
    let objects = src.objects();
    exec.try_each(&objects, |a| {
        let fa = f.map_obj(a);
        if !tgt.has_object(&fa) {
            return Err(FunctorViolation::ObjectOutside {
                object: src.show_obj(a),
                image: tgt.show_obj(&fa),
            });
        }
        let fid = f.map_mor(&src.identity(a));
        if fid != tgt.identity(&fa) {
            return Err(FunctorViolation::Identity {
                object: src.show_obj(a),
                image: tgt.show_mor(&fid),
            });
        }
        Ok(())
    })?;

    src.try_for_each_morphism(exec, |m| {
        let fm = f.map_mor(m);
        if !tgt.has_morphism(&fm) {
            return Err(FunctorViolation::MorphismOutside {
                morphism: src.show_mor(m),
                image: tgt.show_mor(&fm),
            });
        }
        let (fa, fb) = (f.map_obj(&src.dom(m)), f.map_obj(&src.cod(m)));
        if tgt.dom(&fm) != fa || tgt.cod(&fm) != fb {
            return Err(FunctorViolation::EndpointMismatch {
                morphism: src.show_mor(m),
                image: tgt.show_mor(&fm),
                expected_dom: tgt.show_obj(&fa),
                expected_cod: tgt.show_obj(&fb),
            });
        }
        Ok(())
    })?;

    let morphisms = src.morphisms();
    let by_dom = group_by_dom(src, &morphisms);
    exec.try_each(&morphisms, |inner| {
        let Some(outs) = by_dom.get(&src.cod(inner)) else {
            return Ok(());
        };
        let f_inner = f.map_mor(inner);
        for outer in outs {
            let composite = src
                .compose(outer, inner)
                .expect("composable pair in a validated category");
            let lhs = f.map_mor(&composite);
            let rhs = tgt.compose(&f.map_mor(outer), &f_inner);
            if rhs.as_ref() != Some(&lhs) {
                return Err(FunctorViolation::Composition {
                    outer: src.show_mor(outer),
                    inner: src.show_mor(inner),
                    composite_image: tgt.show_mor(&lhs),
                    composed_images: rhs.map_or_else(|| "undefined".into(), |m| tgt.show_mor(&m)),
                });
            }
        }
        Ok(())
    })
}

fn group_by_dom<C: Category>(c: &C, morphisms: &[C::Mor]) -> BTreeMap<C::Obj, Vec<C::Mor>> {
    let mut map: BTreeMap<C::Obj, Vec<C::Mor>> = BTreeMap::new();
    for m in morphisms {
        map.entry(c.dom(m)).or_default().push(m.clone());
    }
    map
}

/// Extensional comparison of two functors on every object and morphism of
/// their (shared) source.
pub fn functors_agree<F: Functor>(a: &F, b: &F) -> Result<(), String> {
    functors_agree_with(Exec::default(), a, b)
}

pub fn functors_agree_with<F: Functor>(exec: Exec, a: &F, b: &F) -> Result<(), String> {
    if !a.source().same_category(b.source()) {
        return Err(format!(
            "{} and {} have different sources",
            a.label(),
            b.label()
        ));
    }
    if !a.target().same_category(b.target()) {
        return Err(format!(
            "{} and {} have different targets",
            a.label(),
            b.label()
        ));
    }
    let src = a.source();
    let tgt = a.target();
    exec.try_each(&src.objects(), |x| {
        let (ax, bx) = (a.map_obj(x), b.map_obj(x));
        if ax != bx {
            return Err(format!(
                "on object {}: {} gives {}, {} gives {}",
                src.show_obj(x),
                a.label(),
                tgt.show_obj(&ax),
                b.label(),
                tgt.show_obj(&bx)
            ));
        }
        Ok(())
    })?;
    src.try_for_each_morphism(exec, |m| {
        let (am, bm) = (a.map_mor(m), b.map_mor(m));
        if am != bm {
            return Err(format!(
                "on morphism {}: {} gives {}, {} gives {}",
                src.show_mor(m),
                a.label(),
                tgt.show_mor(&am),
                b.label(),
                tgt.show_mor(&bm)
            ));
        }
        Ok(())
    })
}

/// Objects grouped by the equivalence relation generated by "there is a
/// morphism between". Each block is sorted, blocks are ordered by their least
/// element.
pub fn connected_components<C: Category>(c: &C) -> Vec<Vec<C::Obj>> {
    let objects = c.objects();
    let index: BTreeMap<&C::Obj, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut uf = UnionFind::new(objects.len());
    for m in c.morphisms().iter() {
        uf.union(index[&c.dom(m)], index[&c.cod(m)]);
    }
    let mut blocks: BTreeMap<usize, Vec<C::Obj>> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        blocks.entry(uf.find(i)).or_default().push(o.clone());
    }
    let mut out: Vec<Vec<C::Obj>> = blocks.into_values().collect();
    for b in &mut out {
        b.sort();
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub target_object: String,
    pub source_object: String,
    /// `F(source_object) -> target_object`
    pub iso: String,
    pub inverse: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EquivalenceCounterexample {
    NotEssentiallySurjective {
        object: String,
    },
    HomNotBijective {
        source: String,
        target: String,
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalence: bool,
    pub iso_witnesses: Vec<IsoWitness>,
    pub hom_sets_checked: usize,
    pub counterexample: Option<EquivalenceCounterexample>,
}

/// Decides whether `f` is an equivalence of categories: essential
/// surjectivity first (every target object is isomorphic to an image), then
/// bijectivity on every hom-set.
pub fn check_equivalence<F: Functor>(f: &F) -> EquivalenceReport {
    let src = f.source();
    let tgt = f.target();
    let src_objects = src.objects();
    let mut witnesses = Vec::new();
    for d in tgt.objects().iter() {
        match find_iso_to_image(f, d) {
            Some((c, iso, inv)) => witnesses.push(IsoWitness {
                target_object: tgt.show_obj(d),
                source_object: src.show_obj(&c),
                iso: tgt.show_mor(&iso),
                inverse: tgt.show_mor(&inv),
            }),
            None => {
                return EquivalenceReport {
                    equivalence: false,
                    iso_witnesses: witnesses,
                    hom_sets_checked: 0,
                    counterexample: Some(EquivalenceCounterexample::NotEssentiallySurjective {
                        object: tgt.show_obj(d),
                    }),
                }
            }
        }
    }
    let mut checked = 0;
    for a in src_objects.iter() {
        for b in src_objects.iter() {
            checked += 1;
            let hom = src.hom(a, b);
            let mut images: Vec<_> = hom.iter().map(|m| f.map_mor(m)).collect();
            images.sort();
            let injective = images.windows(2).all(|w| w[0] != w[1]);
            let target_hom = tgt.hom(&f.map_obj(a), &f.map_obj(b));
            let surjective = target_hom.iter().all(|m| images.binary_search(m).is_ok());
            if !injective || !surjective {
                let detail = if !injective {
                    "two morphisms share an image".to_string()
                } else {
                    format!(
                        "|hom| = {} but |hom of images| = {}",
                        hom.len(),
                        target_hom.len()
                    )
                };
                return EquivalenceReport {
                    equivalence: false,
                    iso_witnesses: witnesses,
                    hom_sets_checked: checked,
                    counterexample: Some(EquivalenceCounterexample::HomNotBijective {
                        source: src.show_obj(a),
                        target: src.show_obj(b),
                        detail,
                    }),
                };
            }
        }
    }
    EquivalenceReport {
        equivalence: true,
        iso_witnesses: witnesses,
        hom_sets_checked: checked,
        counterexample: None,
    }
}

fn find_iso_to_image<F: Functor>(
    f: &F,
    d: &ObjOf<F::Target>,
) -> Option<(ObjOf<F::Source>, MorOf<F::Target>, MorOf<F::Target>)> {
    let tgt = f.target();
    for c in f.source().objects().iter() {
        let fc = f.map_obj(c);
        for iso in tgt.hom(&fc, d) {
            for inv in tgt.hom(d, &fc) {
                if tgt.compose(&iso, &inv) == Some(tgt.identity(d))
                    && tgt.compose(&inv, &iso) == Some(tgt.identity(&fc))
                {
                    return Some((c.clone(), iso, inv));
                }
            }
        }
    }
    None
}

/// Checks associativity and the identity laws over every composable pair and
/// triple.
pub fn check_category_laws<C: Category>(c: &C) -> Result<(), String> {
    let morphisms = c.morphisms();
    let by_dom = group_by_dom(c, &morphisms);
    for f in morphisms.iter() {
        let (a, b) = (c.dom(f), c.cod(f));
        if c.compose(&c.identity(&b), f).as_ref() != Some(f) {
            return Err(format!("left identity fails at {}", c.show_mor(f)));
        }
        if c.compose(f, &c.identity(&a)).as_ref() != Some(f) {
            return Err(format!("right identity fails at {}", c.show_mor(f)));
        }
    }
    Exec::default().try_each(&morphisms, |f| {
        let Some(gs) = by_dom.get(&c.cod(f)) else {
            return Ok(());
        };
        for g in gs {
            let gf = c.compose(g, f).ok_or_else(|| {
                format!("missing composite {} . {}", c.show_mor(g), c.show_mor(f))
            })?;
            let Some(hs) = by_dom.get(&c.cod(g)) else {
                continue;
            };
            for h in hs {
                let hg = c.compose(h, g).ok_or_else(|| {
                    format!("missing composite {} . {}", c.show_mor(h), c.show_mor(g))
                })?;
                if c.compose(&hg, f) != c.compose(h, &gf) {
                    return Err(format!(
                        "associativity fails at ({}, {}, {})",
                        c.show_mor(h),
                        c.show_mor(g),
                        c.show_mor(f)
                    ));
                }
            }
        }
        Ok(())
    })
}
