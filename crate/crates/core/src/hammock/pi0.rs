use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::ObjId;
use crate::hammock::stage::HammockStage;
use crate::hammock::zigzag::{ZigZag, ZigZagError};
use crate::relcat::RelCat;
use crate::unionfind::UnionFind;

/// Connected components of a stage category, computed from the ladders out
/// of each zig-zag. Blocks are sorted and ordered by their least zig-zag.
pub fn pi0_stage(stage: &HammockStage) -> Vec<Vec<ZigZag>> {
    let zs = stage.zigzags();
    let targets: Vec<Vec<usize>> = stage.exec().map(&zs, |z| {
        let mut t: Vec<usize> = stage
            .ladders_out_of(z)
            .iter()
            .map(|l| {
                zs.binary_search(&l.target)
                    .expect("target is an enumerated zig-zag")
            })
            .collect();
        t.dedup();
        t
    });
    let mut uf = UnionFind::new(zs.len());
    for (i, ts) in targets.iter().enumerate() {
        for &j in ts {
            uf.union(i, j);
        }
    }
    let mut blocks: HashMap<usize, Vec<ZigZag>> = HashMap::new();
    for (i, z) in zs.iter().enumerate() {
        blocks.entry(uf.find(i)).or_default().push(z.clone());
    }
    let mut out: Vec<Vec<ZigZag>> = blocks.into_values().collect();
    out.sort();
    out
}

fn block_of(blocks: &[Vec<ZigZag>], z: &ZigZag) -> Option<usize> {
    blocks.iter().position(|b| b.binary_search(z).is_ok())
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerStage {
    pub stage: usize,
    pub zigzags: usize,
    pub components: usize,
    /// Component index at the next stage for each component here, along the
    /// inclusion inserting identities at `C_1`.
    pub map_to_next: Option<Vec<usize>>,
    pub bijective_to_next: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerVerdict {
    Stable,
    Inconclusive,
}

impl fmt::Display for TowerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerVerdict::Stable => "STABLE",
            TowerVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub from: String,
    pub to: String,
    pub max_stage: usize,
    pub assume_model: bool,
    pub stages: Vec<TowerStage>,
    pub verdict: TowerVerdict,
    /// The component count taken as π₀ of the colimit: the last stage when
    /// stable, stage 3 under the model-category assumption, otherwise none.
    pub value: Option<usize>,
}

/// π₀ of every odd stage up to `n_max` with the maps between consecutive
/// stages. STABLE requires the last two maps to be bijections.
pub fn pi0_tower(
    rel: &Arc<RelCat>,
    x: ObjId,
    y: ObjId,
    n_max: usize,
    assume_model: bool,
) -> Result<TowerReport, ZigZagError> {
    if n_max % 2 == 0 {
        return Err(ZigZagError::EvenStage(n_max));
    }
    let c = rel.cat();
    let stages: Vec<HammockStage> = (1..=n_max)
        .step_by(2)
        .map(|n| HammockStage::new(rel, x, y, n))
        .collect::<Result<_, _>>()?;
    let blocks: Vec<Vec<Vec<ZigZag>>> = stages.iter().map(pi0_stage).collect();
    let mut report_stages = Vec::new();
    for (k, s) in stages.iter().enumerate() {
        let (map, bijective) = match blocks.get(k + 1) {
            Some(next) => {
                let map: Vec<usize> = blocks[k]
                    .iter()
                    .map(|b| {
                        let up = b[0].insert_identities(c, 1).expect("position 1 exists");
                        block_of(next, &up).expect("inclusion lands in the next stage")
                    })
                    .collect();
                let mut seen = map.clone();
                seen.sort();
                seen.dedup();
                let bij = seen.len() == map.len() && map.len() == next.len();
                (Some(map), Some(bij))
            }
            None => (None, None),
        };
        report_stages.push(TowerStage {
            stage: s.stage(),
            zigzags: s.zigzags().len(),
            components: blocks[k].len(),
            map_to_next: map,
            bijective_to_next: bijective,
        });
    }
    let maps: Vec<bool> = report_stages
        .iter()
        .filter_map(|s| s.bijective_to_next)
        .collect();
    let verdict = if maps.len() >= 2 && maps[maps.len() - 2..].iter().all(|b| *b) {
        TowerVerdict::Stable
    } else {
        TowerVerdict::Inconclusive
    };
    let value = if assume_model {
        report_stages
            .iter()
            .find(|s| s.stage == 3)
            .map(|s| s.components)
    } else if verdict == TowerVerdict::Stable {
        report_stages.last().map(|s| s.components)
    } else {
        None
    };
    Ok(TowerReport {
        from: c.obj_name(x).to_string(),
        to: c.obj_name(y).to_string(),
        max_stage: n_max,
        assume_model,
        stages: report_stages,
        verdict,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tower(r: RelCat, x: &str, y: &str, n: usize) -> TowerReport {
        let r = Arc::new(r);
        let (x, y) = (r.cat().object(x).unwrap(), r.cat().object(y).unwrap());
        pi0_tower(&r, x, y, n, false).unwrap()
    }

    fn sizes(t: &TowerReport) -> Vec<usize> {
        t.stages.iter().map(|s| s.components).collect()
    }

    #[test]
    fn walking_arrow_tower() {
        let t = tower(fixtures::arr(), "X", "Y", 7);
        assert_eq!(sizes(&t), [0, 1, 1, 1]);
        assert_eq!(t.verdict, TowerVerdict::Stable);
        assert_eq!(t.value, Some(1));
    }

    #[test]
    fn weak_equivalence_towers() {
        let t = tower(fixtures::weq(), "Y", "X", 5);
        assert_eq!(sizes(&t), [1, 1, 1]);
        assert_eq!(t.verdict, TowerVerdict::Stable);
        let t = tower(fixtures::weq(), "X", "X", 5);
        assert_eq!(sizes(&t), [1, 1, 1]);
        assert_eq!(t.verdict, TowerVerdict::Stable);
    }

    #[test]
    fn parallel_pair_grows() {
        let t = tower(fixtures::para(), "B", "A", 7);
        let s = sizes(&t);
        assert!(s.windows(2).skip(1).all(|w| w[1] > w[0]), "{s:?}");
        assert_eq!(t.verdict, TowerVerdict::Inconclusive);
        assert_eq!(t.value, None);

        let r = Arc::new(fixtures::para());
        let (a, b) = (r.cat().object("A").unwrap(), r.cat().object("B").unwrap());
        assert_eq!(pi0_stage(&HammockStage::new(&r, a, b, 3).unwrap()).len(), 2);
        let assumed = pi0_tower(&r, b, a, 5, true).unwrap();
        assert_eq!(assumed.value, Some(assumed.stages[1].components));
    }
}
