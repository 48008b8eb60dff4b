//! Algebraic laws on randomly generated finite categories.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use hammock::exec::Exec;
use hammock::fincat::{free_acyclic, FinCat, MorId, ObjId, RawArrow, RawGraph};
use hammock::hammock::{pi0_tower, HammockStage, TowerVerdict, ZigZag};
use hammock::oracle::{localize_hom, Closure, Saturation};
use hammock::relcat::{validate_relcat, RelCat};

fn graph(objects: usize, edges: &[(usize, usize)]) -> RawGraph {
    let vertices: Vec<String> = (0..objects).map(|i| format!("O{i}")).collect();
    let edges = edges
        .iter()
        .map(|&(a, b)| (a % objects, b % objects))
        .filter(|(a, b)| a != b)
        .enumerate()
        .map(|(k, (a, b))| RawArrow {
            name: format!("e{k}"),
            source: vertices[a.min(b)].clone(),
            target: vertices[a.max(b)].clone(),
        })
        .collect();
    RawGraph {
        name: "G".into(),
        vertices,
        edges,
    }
}

/// Free categories on acyclic graphs, at most twelve morphisms.
fn small_cat() -> impl Strategy<Value = FinCat> {
    (1usize..=4, prop::collection::vec((0usize..4, 0usize..4), 0..6))
        .prop_map(|(n, e)| free_acyclic(&graph(n, &e)).expect("acyclic"))
        .prop_filter("at most twelve morphisms", |c| c.morphism_count() <= 12)
}

fn close(c: &FinCat, seed: &BTreeSet<MorId>) -> Vec<MorId> {
    let mut w: BTreeSet<MorId> = seed.iter().copied().chain(c.object_ids().map(|o| c.id(o))).collect();
    loop {
        let next: BTreeSet<MorId> = w
            .iter()
            .flat_map(|&f| w.iter().filter_map(move |&g| c.comp(g, f)))
            .chain(w.iter().copied())
            .collect();
        if next == w {
            return w.into_iter().collect();
        }
        w = next;
    }
}

/// A free category with a composition-closed class chosen by `mask`.
fn small_relcat() -> impl Strategy<Value = Arc<RelCat>> {
    (small_cat(), prop::collection::vec(any::<bool>(), 12)).prop_map(|(c, mask)| {
        let seed = c.morphism_ids().filter(|m| mask[m.index()]).collect();
        let weq = close(&c, &seed);
        Arc::new(validate_relcat(Arc::new(c), &weq).expect("closed class"))
    })
}

fn ends(c: &FinCat) -> Vec<(ObjId, ObjId)> {
    c.object_ids()
        .flat_map(|x| c.object_ids().map(move |y| (x, y)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_and_unital(c in small_cat()) {
        for f in c.morphism_ids() {
            prop_assert_eq!(c.then(c.id(c.source(f)), f), f);
            prop_assert_eq!(c.then(f, c.id(c.target(f))), f);
            for &g in c.out_of(c.target(f)) {
                for &h in c.out_of(c.target(g)) {
                    prop_assert_eq!(c.then(c.then(f, g), h), c.then(f, c.then(g, h)));
                }
            }
        }
    }

    #[test]
    fn concatenation_is_associative_and_unital(r in small_relcat(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let c = r.cat();
        let pool: Vec<ZigZag> = ends(c)
            .into_iter()
            .flat_map(|(x, y)| HammockStage::new(&r, x, y, 1).unwrap().zigzags().to_vec())
            .collect();
        prop_assume!(!pool.is_empty());
        let u = picks[0].get(&pool).clone();
        let after = |z: &ZigZag, i: &prop::sample::Index| {
            let next: Vec<&ZigZag> = pool.iter().filter(|v| v.start(c) == z.end(c)).collect();
            (!next.is_empty()).then(|| (*i.get(&next)).clone())
        };
        let v = after(&u, &picks[1]).unwrap();
        let w = after(&v, &picks[2]).unwrap();
        let uv = u.concat(c, &v).unwrap();
        let vw = v.concat(c, &w).unwrap();
        prop_assert_eq!(uv.concat(c, &w).unwrap(), u.concat(c, &vw).unwrap());
        prop_assert_eq!(uv.stage(), u.stage() + v.stage() - 1);
        let left = ZigZag::identity(c, u.start(c), 1);
        let right = ZigZag::identity(c, u.end(c), 1);
        prop_assert_eq!(&left.concat(c, &u).unwrap(), &u);
        prop_assert_eq!(&u.concat(c, &right).unwrap(), &u);
    }

    #[test]
    fn ladders_compose_within_the_stage(r in small_relcat()) {
        let c = r.cat();
        for (x, y) in ends(c) {
            let s = HammockStage::new(&r, x, y, 1).unwrap();
            let ladders = s.ladders();
            let all: BTreeSet<_> = ladders.iter().cloned().collect();
            for l in ladders.iter() {
                prop_assert!(l.check(c).is_ok());
                for m in s.ladders_out_of(&l.target) {
                    let lm = l.then(c, &m).expect("composable");
                    prop_assert!(all.contains(&lm));
                }
            }
        }
    }

    #[test]
    fn strategies_agree(r in small_relcat()) {
        let c = r.cat();
        for (x, y) in ends(c) {
            let seq = HammockStage::with_exec(Exec::Sequential, &r, x, y, 3).unwrap();
            let par = HammockStage::with_exec(Exec::Parallel, &r, x, y, 3).unwrap();
            prop_assert_eq!(seq.zigzags(), par.zigzags());
            prop_assert_eq!(seq.ladders(), par.ladders());
            let a = Closure::compute_with(Exec::Sequential, &r, x, y, 5);
            let b = Closure::compute_with(Exec::Parallel, &r, x, y, 5);
            prop_assert_eq!(a.class_count(), b.class_count());
            prop_assert_eq!(a.representatives(), b.representatives());
        }
    }

    #[test]
    fn identities_only_localize_to_the_category(c in small_cat()) {
        let ids: Vec<MorId> = c.object_ids().map(|o| c.id(o)).collect();
        let r = Arc::new(validate_relcat(Arc::new(c), &ids).unwrap());
        let c = r.cat();
        for (x, y) in ends(c) {
            let hom = c.homset(x, y).len();
            let (_, h) = localize_hom(&r, x, y, 4);
            prop_assert_eq!(h.verdict, Saturation::Saturated);
            prop_assert_eq!(h.classes.len(), hom);
            let t = pi0_tower(&r, x, y, 7, false).unwrap();
            prop_assert_eq!(t.verdict, TowerVerdict::Stable);
            prop_assert_eq!(t.value, Some(hom));
        }
    }

    #[test]
    fn tower_agrees_with_the_oracle_when_both_settle(r in small_relcat()) {
        let c = r.cat();
        for (x, y) in ends(c) {
            let t = pi0_tower(&r, x, y, 7, false).unwrap();
            let (_, h) = localize_hom(&r, x, y, 6);
            if t.verdict == TowerVerdict::Stable && h.verdict == Saturation::Saturated {
                prop_assert_eq!(t.value, Some(h.classes.len()));
            }
        }
    }
}
