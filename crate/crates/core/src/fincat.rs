//! Finite categories given by total enumeration, free categories on finite
//! acyclic graphs, and table-backed functors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{Category, Composable, Functor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Name of the implicit identity morphism on an object.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// `outer . inner = result`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub outer: String,
    pub inner: String,
    pub result: String,
}

/// A category described by its tables. Identities `id_<object>` are implicit;
/// every composite of two non-identity arrows must be listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<RawArrow>,
    pub composites: Vec<RawComposite>,
}

/// A finite directed multigraph; the free category on it is finite when it is
/// acyclic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<RawArrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum CategoryError {
    #[error("duplicate object {0}")]
    DuplicateObject(String),
    #[error("duplicate morphism {0}")]
    DuplicateMorphism(String),
    #[error("arrow {0} uses a reserved identity name")]
    ReservedIdentityName(String),
    #[error("unknown object {object} referenced by {context}")]
    UnknownObject { object: String, context: String },
    #[error("unknown morphism {morphism} referenced by {context}")]
    UnknownMorphism { morphism: String, context: String },
    #[error("{outer} . {inner} is listed but the pair is not composable")]
    NotComposable { outer: String, inner: String },
    #[error("{outer} . {inner} is listed twice with different results {first} and {second}")]
    ConflictingComposite {
        outer: String,
        inner: String,
        first: String,
        second: String,
    },
    #[error("{side:?} identity law fails for ({outer}, {inner}): composite is {found}")]
    IdentityLaw {
        side: Side,
        outer: String,
        inner: String,
        found: String,
    },
    #[error("composite {outer} . {inner} = {result} has the wrong source or target")]
    CompositeType {
        outer: String,
        inner: String,
        result: String,
    },
    #[error("missing composite {outer} . {inner}")]
    MissingComposite { outer: String, inner: String },
    #[error("associativity fails for ({h}, {g}, {f}): ({h} . {g}) . {f} = {left} but {h} . ({g} . {f}) = {right}")]
    Associativity {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },
    #[error("graph has a cycle through edges {0:?}")]
    Cycle(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// A validated finite category. Objects and morphisms are numbered in
/// lexicographic order of their names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<MorId>,
    is_identity: Vec<bool>,
    comp: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
    into: Vec<Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
}

impl FinCat {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn obj_name(&self, o: ObjId) -> &str {
        &self.objects[o.index()]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.morphisms[m.index()].name
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m.index()].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m.index()].target
    }

    pub fn id(&self, o: ObjId) -> MorId {
        self.identities[o.index()]
    }

    pub fn is_id(&self, m: MorId) -> bool {
        self.is_identity[m.index()]
    }

    /// `g ∘ f`
    pub fn comp(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g.index() * self.morphisms.len() + f.index()]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn then(&self, f: MorId, g: MorId) -> MorId {
        self.comp(g, f).unwrap_or_else(|| {
            panic!(
                "{} . {} is not composable in {}",
                self.mor_name(g),
                self.mor_name(f),
                self.name
            )
        })
    }

    pub fn homset(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.index() * self.objects.len() + b.index()]
    }

    /// Morphisms with the given target.
    pub fn into_obj(&self, b: ObjId) -> &[MorId] {
        &self.into[b.index()]
    }

    /// Morphisms with the given source.
    pub fn out_of(&self, a: ObjId) -> &[MorId] {
        &self.out[a.index()]
    }

    /// The table description this category was (or could have been) built from.
    pub fn to_raw(&self) -> RawCategory {
        let arrows = self
            .morphism_ids()
            .filter(|m| !self.is_id(*m))
            .map(|m| RawArrow {
                name: self.mor_name(m).to_string(),
                source: self.obj_name(self.source(m)).to_string(),
                target: self.obj_name(self.target(m)).to_string(),
            })
            .collect();
        let mut composites = Vec::new();
        for g in self.morphism_ids().filter(|m| !self.is_id(*m)) {
            for f in self.morphism_ids().filter(|m| !self.is_id(*m)) {
                if let Some(h) = self.comp(g, f) {
                    composites.push(RawComposite {
                        outer: self.mor_name(g).to_string(),
                        inner: self.mor_name(f).to_string(),
                        result: self.mor_name(h).to_string(),
                    });
                }
            }
        }
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows,
            composites,
        }
    }

    pub fn renamed(&self, name: &str) -> FinCat {
        FinCat {
            name: name.to_string(),
            ..self.clone()
        }
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} morphisms)",
            self.name,
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

impl Category for FinCat {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Arc<[ObjId]> {
        self.object_ids().collect()
    }

    fn morphisms(&self) -> Arc<[MorId]> {
        self.morphism_ids().collect()
    }

    fn hom(&self, a: &ObjId, b: &ObjId) -> Vec<MorId> {
        self.homset(*a, *b).to_vec()
    }

    fn dom(&self, m: &MorId) -> ObjId {
        self.source(*m)
    }

    fn cod(&self, m: &MorId) -> ObjId {
        self.target(*m)
    }

    fn identity(&self, a: &ObjId) -> MorId {
        self.id(*a)
    }

    fn compose(&self, g: &MorId, f: &MorId) -> Option<MorId> {
        self.comp(*g, *f)
    }

    fn has_object(&self, a: &ObjId) -> bool {
        a.index() < self.objects.len()
    }

    fn has_morphism(&self, m: &MorId) -> bool {
        m.index() < self.morphisms.len()
    }

    fn same_category(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    fn show_obj(&self, a: &ObjId) -> String {
        self.objects
            .get(a.index())
            .cloned()
            .unwrap_or_else(|| format!("<object #{}>", a.0))
    }

    fn show_mor(&self, m: &MorId) -> String {
        self.morphisms
            .get(m.index())
            .map(|i| i.name.clone())
            .unwrap_or_else(|| format!("<morphism #{}>", m.0))
    }
}

/// Validates a table description: identity laws first, then typing and
/// totality of the composition table, then associativity. Violations are
/// reported for the lexicographically first offending pair or triple.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut object_set = BTreeSet::new();
    for o in &raw.objects {
        if !object_set.insert(o.clone()) {
            return Err(CategoryError::DuplicateObject(o.clone()));
        }
    }
    let objects: Vec<String> = object_set.into_iter().collect();
    let obj_index: BTreeMap<String, ObjId> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.clone(), ObjId(i as u32)))
        .collect();

    let identity_names: BTreeMap<String, ObjId> = objects
        .iter()
        .map(|o| (identity_name(o), obj_index[o]))
        .collect();

    let mut infos: BTreeMap<String, (ObjId, ObjId, bool)> = BTreeMap::new();
    for (name, o) in &identity_names {
        infos.insert(name.clone(), (*o, *o, true));
    }
    for a in &raw.arrows {
        if identity_names.contains_key(&a.name) {
            return Err(CategoryError::ReservedIdentityName(a.name.clone()));
        }
        let lookup = |o: &str| {
            obj_index
                .get(o)
                .copied()
                .ok_or_else(|| CategoryError::UnknownObject {
                    object: o.to_string(),
                    context: format!("arrow {}", a.name),
                })
        };
        let (s, t) = (lookup(&a.source)?, lookup(&a.target)?);
        if infos.insert(a.name.clone(), (s, t, false)).is_some() {
            return Err(CategoryError::DuplicateMorphism(a.name.clone()));
        }
    }

    let morphisms: Vec<MorphismInfo> = infos
        .iter()
        .map(|(name, (s, t, _))| MorphismInfo {
            name: name.clone(),
            source: *s,
            target: *t,
        })
        .collect();
    let is_identity: Vec<bool> = infos.values().map(|(_, _, id)| *id).collect();
    let mor_index: BTreeMap<String, MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.clone(), MorId(i as u32)))
        .collect();
    let identities: Vec<MorId> = objects
        .iter()
        .map(|o| mor_index[&identity_name(o)])
        .collect();
    let n = morphisms.len();
    let src = |m: MorId| morphisms[m.index()].source;
    let tgt = |m: MorId| morphisms[m.index()].target;
    let name = |m: MorId| morphisms[m.index()].name.clone();

    let mut comp: Vec<Option<MorId>> = vec![None; n * n];
    for c in &raw.composites {
        let lookup = |m: &str| {
            mor_index
                .get(m)
                .copied()
                .ok_or_else(|| CategoryError::UnknownMorphism {
                    morphism: m.to_string(),
                    context: format!("composite {} . {}", c.outer, c.inner),
                })
        };
        let (g, f, h) = (lookup(&c.outer)?, lookup(&c.inner)?, lookup(&c.result)?);
        if tgt(f) != src(g) {
            return Err(CategoryError::NotComposable {
                outer: c.outer.clone(),
                inner: c.inner.clone(),
            });
        }
        let slot = &mut comp[g.index() * n + f.index()];
        match slot {
            Some(prev) if *prev != h => {
                return Err(CategoryError::ConflictingComposite {
                    outer: c.outer.clone(),
                    inner: c.inner.clone(),
                    first: name(*prev),
                    second: name(h),
                })
            }
            _ => *slot = Some(h),
        }
    }
    // Implicit identity composites, unless overridden by an explicit entry.
    for i in 0..n {
        let f = MorId(i as u32);
        let left = identities[tgt(f).index()];
        let right = identities[src(f).index()];
        comp[left.index() * n + i].get_or_insert(f);
        comp[i * n + right.index()].get_or_insert(f);
    }

    for i in 0..n {
        let f = MorId(i as u32);
        let left = identities[tgt(f).index()];
        let right = identities[src(f).index()];
        let l = comp[left.index() * n + i].expect("filled above");
        if l != f {
            return Err(CategoryError::IdentityLaw {
                side: Side::Left,
                outer: name(left),
                inner: name(f),
                found: name(l),
            });
        }
        let r = comp[i * n + right.index()].expect("filled above");
        if r != f {
            return Err(CategoryError::IdentityLaw {
                side: Side::Right,
                outer: name(f),
                inner: name(right),
                found: name(r),
            });
        }
    }

    for gi in 0..n {
        for fi in 0..n {
            let (g, f) = (MorId(gi as u32), MorId(fi as u32));
            if tgt(f) != src(g) {
                continue;
            }
            match comp[gi * n + fi] {
                None => {
                    return Err(CategoryError::MissingComposite {
                        outer: name(g),
                        inner: name(f),
                    })
                }
                Some(h) if src(h) != src(f) || tgt(h) != tgt(g) => {
                    return Err(CategoryError::CompositeType {
                        outer: name(g),
                        inner: name(f),
                        result: name(h),
                    })
                }
                _ => {}
            }
        }
    }

    let o = objects.len();
    let mut hom = vec![Vec::new(); o * o];
    let mut into = vec![Vec::new(); o];
    let mut out = vec![Vec::new(); o];
    for (i, m) in morphisms.iter().enumerate() {
        let id = MorId(i as u32);
        hom[m.source.index() * o + m.target.index()].push(id);
        into[m.target.index()].push(id);
        out[m.source.index()].push(id);
    }

    // Associativity over every composable triple h . g . f, in name order.
    for fi in 0..n {
        let f = MorId(fi as u32);
        for &g in &out[tgt(f).index()] {
            let gf = comp[g.index() * n + fi].expect("table is total");
            for &h in &out[tgt(g).index()] {
                let hg = comp[h.index() * n + g.index()].expect("table is total");
                let left = comp[hg.index() * n + fi].expect("table is total");
                let right = comp[h.index() * n + gf.index()].expect("table is total");
                if left != right {
                    return Err(CategoryError::Associativity {
                        h: name(h),
                        g: name(g),
                        f: name(f),
                        left: name(left),
                        right: name(right),
                    });
                }
            }
        }
    }

    Ok(FinCat {
        name: raw.name.clone(),
        objects,
        morphisms,
        identities,
        is_identity,
        comp,
        hom,
        into,
        out,
        obj_index,
        mor_index,
    })
}

/// Name of a composite path, in composition order: the path `f` then `g`
/// is named `g.f`.
pub fn path_name(edges_in_path_order: &[&str]) -> String {
    let mut parts: Vec<&str> = edges_in_path_order.to_vec();
    parts.reverse();
    parts.join(".")
}

/// The free category on a finite acyclic multigraph: morphisms are paths,
/// composition is concatenation.
pub fn free_acyclic(graph: &RawGraph) -> Result<FinCat, CategoryError> {
    let vertex_set: BTreeSet<&String> = graph.vertices.iter().collect();
    if vertex_set.len() != graph.vertices.len() {
        let mut seen = BTreeSet::new();
        let dup = graph
            .vertices
            .iter()
            .find(|v| !seen.insert(*v))
            .expect("duplicate exists");
        return Err(CategoryError::DuplicateObject(dup.clone()));
    }
    for e in &graph.edges {
        for v in [&e.source, &e.target] {
            if !vertex_set.contains(v) {
                return Err(CategoryError::UnknownObject {
                    object: v.clone(),
                    context: format!("edge {}", e.name),
                });
            }
        }
    }
    if let Some(cycle) = find_cycle(graph) {
        return Err(CategoryError::Cycle(cycle));
    }

    // All nonempty paths, as edge-index sequences in path order.
    let mut paths: Vec<Vec<usize>> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, _)| vec![i])
        .collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = &graph.edges[*p.last().expect("nonempty")].target;
            for (i, e) in graph.edges.iter().enumerate() {
                if &e.source == end {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }

    let name_of = |p: &[usize]| {
        let names: Vec<&str> = p.iter().map(|i| graph.edges[*i].name.as_str()).collect();
        path_name(&names)
    };
    let arrows: Vec<RawArrow> = paths
        .iter()
        .map(|p| RawArrow {
            name: name_of(p),
            source: graph.edges[p[0]].source.clone(),
            target: graph.edges[*p.last().expect("nonempty")].target.clone(),
        })
        .collect();
    let mut composites = Vec::new();
    for inner in &paths {
        for outer in &paths {
            let end = &graph.edges[*inner.last().expect("nonempty")].target;
            if &graph.edges[outer[0]].source == end {
                let mut whole = inner.clone();
                whole.extend(outer);
                composites.push(RawComposite {
                    outer: name_of(outer),
                    inner: name_of(inner),
                    result: name_of(&whole),
                });
            }
        }
    }
    validate_category(&RawCategory {
        name: graph.name.clone(),
        objects: graph.vertices.clone(),
        arrows,
        composites,
    })
}

fn find_cycle(graph: &RawGraph) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let index: BTreeMap<&str, usize> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut marks = vec![Mark::New; graph.vertices.len()];
    let mut stack_edges: Vec<usize> = Vec::new();

    fn visit(
        v: usize,
        graph: &RawGraph,
        index: &BTreeMap<&str, usize>,
        marks: &mut [Mark],
        stack_edges: &mut Vec<usize>,
    ) -> Option<Vec<String>> {
        marks[v] = Mark::Active;
        for (i, e) in graph.edges.iter().enumerate() {
            if index[e.source.as_str()] != v {
                continue;
            }
            let w = index[e.target.as_str()];
            stack_edges.push(i);
            match marks[w] {
                Mark::Active => {
                    let start = stack_edges
                        .iter()
                        .position(|ei| index[graph.edges[*ei].source.as_str()] == w)
                        .expect("cycle start is on the stack");
                    return Some(
                        stack_edges[start..]
                            .iter()
                            .map(|ei| graph.edges[*ei].name.clone())
                            .collect(),
                    );
                }
                Mark::New => {
                    if let Some(c) = visit(w, graph, index, marks, stack_edges) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
            stack_edges.pop();
        }
        marks[v] = Mark::Done;
        None
    }

    for v in 0..graph.vertices.len() {
        if marks[v] == Mark::New {
            if let Some(c) = visit(v, graph, &index, &mut marks, &mut stack_edges) {
                return Some(c);
            }
        }
    }
    None
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FunctorDataError {
    #[error("functor {functor}: unknown name {name}")]
    Unknown { functor: String, name: String },
    #[error("functor {functor}: object {object} is not mapped")]
    UnmappedObject { functor: String, object: String },
    #[error("functor {functor}: morphism {morphism} is not mapped")]
    UnmappedMorphism { functor: String, morphism: String },
    #[error("functor {functor}: {name} is mapped twice")]
    Duplicate { functor: String, name: String },
}

/// A functor between finite categories, stored as its object and morphism
/// tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub name: String,
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl FunctorData {
    pub fn identity(cat: &Arc<FinCat>) -> FunctorData {
        FunctorData {
            name: "Id".into(),
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.object_ids().collect(),
            mor_map: cat.morphism_ids().collect(),
        }
    }

    /// Builds a functor from name pairs. Identities default to identities;
    /// other unmapped morphisms are derived from listed composites of mapped
    /// ones when possible.
    pub fn from_names(
        name: &str,
        source: &Arc<FinCat>,
        target: &Arc<FinCat>,
        objects: &[(String, String)],
        arrows: &[(String, String)],
    ) -> Result<FunctorData, FunctorDataError> {
        let unknown = |n: &str| FunctorDataError::Unknown {
            functor: name.to_string(),
            name: n.to_string(),
        };
        let mut obj_map: Vec<Option<ObjId>> = vec![None; source.object_count()];
        for (a, b) in objects {
            let a_id = source.object(a).ok_or_else(|| unknown(a))?;
            let b_id = target.object(b).ok_or_else(|| unknown(b))?;
            if obj_map[a_id.index()].replace(b_id).is_some() {
                return Err(FunctorDataError::Duplicate {
                    functor: name.to_string(),
                    name: a.clone(),
                });
            }
        }
        let obj_map: Vec<ObjId> = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| FunctorDataError::UnmappedObject {
                    functor: name.to_string(),
                    object: source.obj_name(ObjId(i as u32)).to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        let mut mor_map: Vec<Option<MorId>> = vec![None; source.morphism_count()];
        for (f, g) in arrows {
            let f_id = source.morphism(f).ok_or_else(|| unknown(f))?;
            let g_id = target.morphism(g).ok_or_else(|| unknown(g))?;
            if mor_map[f_id.index()].replace(g_id).is_some() {
                return Err(FunctorDataError::Duplicate {
                    functor: name.to_string(),
                    name: f.clone(),
                });
            }
        }
        for o in source.object_ids() {
            let slot = &mut mor_map[source.id(o).index()];
            if slot.is_none() {
                *slot = Some(target.id(obj_map[o.index()]));
            }
        }
        // Fill composites of mapped morphisms until nothing changes.
        loop {
            let mut changed = false;
            for g in source.morphism_ids() {
                for f in source.morphism_ids() {
                    let Some(h) = source.comp(g, f) else { continue };
                    if mor_map[h.index()].is_some() {
                        continue;
                    }
                    if let (Some(fg), Some(ff)) = (mor_map[g.index()], mor_map[f.index()]) {
                        if let Some(img) = target.comp(fg, ff) {
                            mor_map[h.index()] = Some(img);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| FunctorDataError::UnmappedMorphism {
                    functor: name.to_string(),
                    morphism: source.mor_name(MorId(i as u32)).to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(FunctorData {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            obj_map,
            mor_map,
        })
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.index()]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.index()]
    }

    pub fn is_endofunctor(&self) -> bool {
        self.source.same_category(&self.target)
    }

    /// Table equality (same categories, same maps), ignoring names.
    pub fn same_maps(&self, other: &FunctorData) -> bool {
        self.source.same_category(&other.source)
            && self.target.same_category(&other.target)
            && self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
    }
}

impl Functor for FunctorData {
    type Source = FinCat;
    type Target = FinCat;

    fn source(&self) -> &FinCat {
        &self.source
    }

    fn target(&self) -> &FinCat {
        &self.target
    }

    fn map_obj(&self, a: &ObjId) -> ObjId {
        self.obj(*a)
    }

    fn map_mor(&self, m: &MorId) -> MorId {
        self.mor(*m)
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

impl Composable for FunctorData {
    fn then(&self, next: &FunctorData) -> Result<FunctorData, String> {
        if !self.target.same_category(&next.source) {
            return Err(format!(
                "cannot compose {} after {}: categories differ",
                next.name, self.name
            ));
        }
        Ok(FunctorData {
            name: format!("{}{}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|o| next.obj(*o)).collect(),
            mor_map: self.mor_map.iter().map(|m| next.mor(*m)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_category_laws, check_functor, connected_components};

    fn arrow(name: &str, s: &str, t: &str) -> RawArrow {
        RawArrow {
            name: name.into(),
            source: s.into(),
            target: t.into(),
        }
    }

    fn arr() -> RawCategory {
        RawCategory {
            name: "ARR".into(),
            objects: vec!["X".into(), "Y".into()],
            arrows: vec![arrow("f", "X", "Y")],
            composites: vec![],
        }
    }

    #[test]
    fn terminal_category() {
        let pt = validate_category(&RawCategory {
            name: "PT".into(),
            objects: vec!["P".into()],
            ..Default::default()
        })
        .unwrap();
        assert_eq!(pt.object_count(), 1);
        assert_eq!(pt.morphism_count(), 1);
        assert_eq!(connected_components(&pt).len(), 1);
    }

    #[test]
    fn walking_arrow() {
        let c = validate_category(&arr()).unwrap();
        assert_eq!(c.morphism_count(), 3);
        let f = c.morphism("f").unwrap();
        let x = c.object("X").unwrap();
        assert_eq!(c.comp(f, c.id(x)), Some(f));
        check_category_laws(&c).unwrap();
    }

    #[test]
    fn injected_identity_violation_names_the_pair() {
        let mut raw = arr();
        raw.composites.push(RawComposite {
            outer: "f".into(),
            inner: "id_X".into(),
            result: "id_Y".into(),
        });
        let err = validate_category(&raw).unwrap_err();
        assert_eq!(
            err,
            CategoryError::IdentityLaw {
                side: Side::Right,
                outer: "f".into(),
                inner: "id_X".into(),
                found: "id_Y".into(),
            }
        );
    }

    #[test]
    fn missing_composite_is_reported() {
        let raw = RawCategory {
            name: "C".into(),
            objects: vec!["X".into(), "Y".into(), "Z".into()],
            arrows: vec![arrow("f", "X", "Y"), arrow("g", "Y", "Z")],
            composites: vec![],
        };
        assert_eq!(
            validate_category(&raw).unwrap_err(),
            CategoryError::MissingComposite {
                outer: "g".into(),
                inner: "f".into()
            }
        );
    }

    #[test]
    fn associativity_failure_names_the_triple() {
        // Two endomorphisms e, u on X with e.e = e, u.e = u, e.u = e, u.u = e:
        // (u.u).e = e.e = e but u.(u.e) = u.u = e ... pick a table that breaks.
        let raw = RawCategory {
            name: "C".into(),
            objects: vec!["X".into()],
            arrows: vec![arrow("a", "X", "X"), arrow("b", "X", "X")],
            composites: vec![
                RawComposite {
                    outer: "a".into(),
                    inner: "a".into(),
                    result: "a".into(),
                },
                RawComposite {
                    outer: "a".into(),
                    inner: "b".into(),
                    result: "b".into(),
                },
                RawComposite {
                    outer: "b".into(),
                    inner: "a".into(),
                    result: "a".into(),
                },
                RawComposite {
                    outer: "b".into(),
                    inner: "b".into(),
                    result: "a".into(),
                },
            ],
        };
        match validate_category(&raw).unwrap_err() {
            CategoryError::Associativity { .. } => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn free_on_a_chain_has_six_morphisms() {
        let g = RawGraph {
            name: "CHAIN".into(),
            vertices: vec!["X".into(), "Y".into(), "Z".into()],
            edges: vec![arrow("f", "X", "Y"), arrow("g", "Y", "Z")],
        };
        let c = free_acyclic(&g).unwrap();
        assert_eq!(c.morphism_count(), 6);
        let gf = c.morphism("g.f").unwrap();
        assert_eq!(
            c.comp(c.morphism("g").unwrap(), c.morphism("f").unwrap()),
            Some(gf)
        );
        check_category_laws(&c).unwrap();
    }

    #[test]
    fn free_on_single_vertex_is_terminal() {
        let g = RawGraph {
            name: "PT".into(),
            vertices: vec!["P".into()],
            edges: vec![],
        };
        assert_eq!(free_acyclic(&g).unwrap().morphism_count(), 1);
    }

    #[test]
    fn cycles_are_rejected_by_name() {
        let g = RawGraph {
            name: "LOOP".into(),
            vertices: vec!["X".into(), "Y".into()],
            edges: vec![arrow("f", "X", "Y"), arrow("g", "Y", "X")],
        };
        assert_eq!(
            free_acyclic(&g).unwrap_err(),
            CategoryError::Cycle(vec!["f".into(), "g".into()])
        );
        let s = RawGraph {
            name: "SELF".into(),
            vertices: vec!["X".into()],
            edges: vec![arrow("e", "X", "X")],
        };
        assert_eq!(
            free_acyclic(&s).unwrap_err(),
            CategoryError::Cycle(vec!["e".into()])
        );
    }

    #[test]
    fn functor_from_generators_fills_composites() {
        let g = RawGraph {
            name: "CHAIN".into(),
            vertices: vec!["X".into(), "Y".into(), "Z".into()],
            edges: vec![arrow("f", "X", "Y"), arrow("g", "Y", "Z")],
        };
        let c = Arc::new(free_acyclic(&g).unwrap());
        let s = |a: &str, b: &str| (a.to_string(), b.to_string());
        let shift = FunctorData::from_names(
            "L",
            &c,
            &c,
            &[s("X", "Y"), s("Y", "Z"), s("Z", "Z")],
            &[s("f", "g"), s("g", "id_Z")],
        )
        .unwrap();
        assert_eq!(c.mor_name(shift.mor(c.morphism("g.f").unwrap())), "g");
        check_functor(&shift).unwrap();
    }

    #[test]
    fn raw_round_trip() {
        let g = RawGraph {
            name: "CHAIN".into(),
            vertices: vec!["X".into(), "Y".into(), "Z".into()],
            edges: vec![arrow("f", "X", "Y"), arrow("g", "Y", "Z")],
        };
        let c = free_acyclic(&g).unwrap();
        assert_eq!(validate_category(&c.to_raw()).unwrap(), c);
    }
}
