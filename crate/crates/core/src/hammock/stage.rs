use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::category::Category;
use crate::exec::Exec;
use crate::fincat::{
    validate_category, CategoryError, FinCat, ObjId, RawArrow, RawCategory, RawComposite,
};
use crate::hammock::zigzag::{
    enumerate_zigzags_with, for_each_ladder_from, for_each_ladder_indexed, ladders_from, Ladder,
    ZigZag, ZigZagError,
};
use crate::relcat::RelCat;

/// The stage-`n` hammock category: zig-zags from `X` to `Y` and ladders
/// between them. Objects and morphisms are enumerated lazily and cached.
#[derive(Clone)]
pub struct HammockStage(Arc<Inner>);

struct Inner {
    rel: Arc<RelCat>,
    from: ObjId,
    to: ObjId,
    stage: usize,
    exec: Exec,
    objects: OnceLock<Arc<[ZigZag]>>,
    morphisms: OnceLock<Arc<[Ladder]>>,
}

impl fmt::Debug for HammockStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl HammockStage {
    pub fn new(
        rel: &Arc<RelCat>,
        from: ObjId,
        to: ObjId,
        stage: usize,
    ) -> Result<HammockStage, ZigZagError> {
        HammockStage::with_exec(Exec::default(), rel, from, to, stage)
    }

    pub fn with_exec(
        exec: Exec,
        rel: &Arc<RelCat>,
        from: ObjId,
        to: ObjId,
        stage: usize,
    ) -> Result<HammockStage, ZigZagError> {
        if stage % 2 == 0 {
            return Err(ZigZagError::EvenStage(stage));
        }
        Ok(HammockStage(Arc::new(Inner {
            rel: rel.clone(),
            from,
            to,
            stage,
            exec,
            objects: OnceLock::new(),
            morphisms: OnceLock::new(),
        })))
    }

    pub fn rel(&self) -> &Arc<RelCat> {
        &self.0.rel
    }

    pub fn cat(&self) -> &FinCat {
        self.0.rel.cat()
    }

    pub fn from(&self) -> ObjId {
        self.0.from
    }

    pub fn to(&self) -> ObjId {
        self.0.to
    }

    pub fn stage(&self) -> usize {
        self.0.stage
    }

    pub fn exec(&self) -> Exec {
        self.0.exec
    }

    /// `L_n(X,Y)` in the notation of the reports.
    pub fn label(&self) -> String {
        let c = self.cat();
        format!(
            "L_{}({},{})",
            self.0.stage,
            c.obj_name(self.0.from),
            c.obj_name(self.0.to)
        )
    }

    pub fn zigzags(&self) -> Arc<[ZigZag]> {
        self.0
            .objects
            .get_or_init(|| {
                enumerate_zigzags_with(
                    self.0.exec,
                    &self.0.rel,
                    self.0.from,
                    self.0.to,
                    self.0.stage,
                )
                .expect("stage parity checked at construction")
                .into()
            })
            .clone()
    }

    pub fn ladders(&self) -> Arc<[Ladder]> {
        self.0
            .morphisms
            .get_or_init(|| {
                let zs = self.zigzags();
                let rel = &self.0.rel;
                self.0
                    .exec
                    .flat_map(&zs, |z| ladders_from(rel, z, None))
                    .into()
            })
            .clone()
    }

    pub fn ladders_out_of(&self, z: &ZigZag) -> Vec<Ladder> {
        ladders_from(&self.0.rel, z, None)
    }

    /// Streams every ladder with the indices of its source and target in
    /// [`HammockStage::zigzags`].
    pub fn try_for_each_ladder_indexed<E, V>(&self, exec: Exec, visit: V) -> Result<(), E>
    where
        E: Send,
        V: Fn(usize, &Ladder, usize) -> Result<(), E> + Sync + Send,
    {
        let zs = self.zigzags();
        let indices: Vec<usize> = (0..zs.len()).collect();
        exec.try_each(&indices, |&i| {
            for_each_ladder_indexed(&self.0.rel, &zs[i], &zs, &mut |l, j| visit(i, l, j))
        })
    }

    /// Materializes the stage as a validated table category. Zig-zags are
    /// named `z0, z1, …` in enumeration order and ladders `l0, l1, …`.
    pub fn to_fincat(&self) -> Result<FinCat, CategoryError> {
        let zs = self.zigzags();
        let ladders = self.ladders();
        let c = self.cat();
        let zname = |z: &ZigZag| format!("z{}", zs.binary_search(z).expect("enumerated zig-zag"));
        let mut names = Vec::with_capacity(ladders.len());
        let mut arrows = Vec::new();
        let mut counter = 0;
        for l in ladders.iter() {
            if l.source == l.target && l.verticals.iter().all(|v| c.is_id(*v)) {
                names.push(format!("id_{}", zname(&l.source)));
            } else {
                let name = format!("l{counter}");
                counter += 1;
                arrows.push(RawArrow {
                    name: name.clone(),
                    source: zname(&l.source),
                    target: zname(&l.target),
                });
                names.push(name);
            }
        }
        let mut composites = Vec::new();
        for (i, f) in ladders.iter().enumerate() {
            if names[i].starts_with("id_") {
                continue;
            }
            for (j, g) in ladders.iter().enumerate() {
                if names[j].starts_with("id_") || g.source != f.target {
                    continue;
                }
                let h = f.then(c, g).expect("composable");
                let k = ladders
                    .binary_search(&h)
                    .map_err(|_| CategoryError::MissingComposite {
                        outer: names[j].clone(),
                        inner: names[i].clone(),
                    })?;
                composites.push(RawComposite {
                    outer: names[j].clone(),
                    inner: names[i].clone(),
                    result: names[k].clone(),
                });
            }
        }
        validate_category(&RawCategory {
            name: self.label(),
            objects: (0..zs.len()).map(|i| format!("z{i}")).collect(),
            arrows,
            composites,
        })
    }
}

impl Category for HammockStage {
    type Obj = ZigZag;
    type Mor = Ladder;

    fn objects(&self) -> Arc<[ZigZag]> {
        self.zigzags()
    }

    fn morphisms(&self) -> Arc<[Ladder]> {
        self.ladders()
    }

    fn hom(&self, a: &ZigZag, b: &ZigZag) -> Vec<Ladder> {
        ladders_from(&self.0.rel, a, Some(b))
    }

    fn dom(&self, m: &Ladder) -> ZigZag {
        m.source.clone()
    }

    fn cod(&self, m: &Ladder) -> ZigZag {
        m.target.clone()
    }

    fn identity(&self, a: &ZigZag) -> Ladder {
        Ladder::identity(self.cat(), a)
    }

    fn compose(&self, g: &Ladder, f: &Ladder) -> Option<Ladder> {
        f.then(self.cat(), g)
    }

    /// Streams ladders zig-zag by zig-zag unless they are already
    /// materialized; large stages never hold every ladder in memory.
    fn try_for_each_morphism<E, V>(&self, exec: Exec, visit: V) -> Result<(), E>
    where
        E: Send,
        V: Fn(&Ladder) -> Result<(), E> + Sync + Send,
    {
        if let Some(all) = self.0.morphisms.get() {
            return exec.try_each(all, visit);
        }
        let rel = &self.0.rel;
        exec.try_each(&self.zigzags(), |z| {
            for_each_ladder_from(rel, z, None, &mut |l| visit(l))
        })
    }

    fn has_object(&self, a: &ZigZag) -> bool {
        a.check_in(&self.0.rel, self.0.from, self.0.to, self.0.stage)
            .is_ok()
    }

    fn has_morphism(&self, m: &Ladder) -> bool {
        self.has_object(&m.source) && self.has_object(&m.target) && m.check(self.cat()).is_ok()
    }

    fn same_category(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.from == other.0.from
                && self.0.to == other.0.to
                && self.0.stage == other.0.stage
                && (Arc::ptr_eq(&self.0.rel, &other.0.rel) || self.0.rel == other.0.rel))
    }

    fn show_obj(&self, a: &ZigZag) -> String {
        if a.arrows
            .iter()
            .all(|d| d.index() < self.cat().morphism_count())
            && !a.arrows.is_empty()
        {
            a.show(self.cat())
        } else {
            format!("{:?}", a.arrows)
        }
    }

    fn show_mor(&self, m: &Ladder) -> String {
        let c = self.cat();
        if m.verticals.iter().all(|v| v.index() < c.morphism_count()) {
            format!(
                "[{}] : {} => {}",
                m.names(c).join(", "),
                self.show_obj(&m.source),
                self.show_obj(&m.target)
            )
        } else {
            format!("{:?}", m.verticals)
        }
    }
}
