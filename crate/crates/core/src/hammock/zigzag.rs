use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::fincat::{FinCat, MorId, ObjId};
use crate::relcat::RelCat;

/// A zig-zag `C_0 ← C_1 → C_2 ← … → C_{n-1} ← C_n` stored as its arrows.
/// Arrow `d_k` points backward (`C_{k+1} → C_k`, a weak equivalence) when
/// `k` is even and forward (`C_k → C_{k+1}`) when `k` is odd, so `n` is odd.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZigZag {
    pub arrows: Vec<MorId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum ZigZagError {
    #[error("stage {0} is not odd")]
    EvenStage(usize),
    #[error("expected {expected} arrows, found {found}")]
    Length { expected: usize, found: usize },
    #[error("arrows {0} and {1} do not meet at a common object")]
    Chain(usize, usize),
    #[error("backward arrow {index} ({name}) is not a weak equivalence")]
    NotWeq { index: usize, name: String },
    #[error("zig-zag runs from {found_from} to {found_to}, expected {from} to {to}")]
    Endpoints {
        from: String,
        to: String,
        found_from: String,
        found_to: String,
    },
    #[error("position {position} is out of range for stage {stage}")]
    Position { position: usize, stage: usize },
}

impl ZigZag {
    pub fn new(arrows: Vec<MorId>) -> ZigZag {
        ZigZag { arrows }
    }

    /// The zig-zag of identities on `x`.
    pub fn identity(c: &FinCat, x: ObjId, n: usize) -> ZigZag {
        ZigZag {
            arrows: vec![c.id(x); n],
        }
    }

    pub fn stage(&self) -> usize {
        self.arrows.len()
    }

    /// `C_k` for `0 ≤ k ≤ n`.
    pub fn object(&self, c: &FinCat, k: usize) -> ObjId {
        if k == self.arrows.len() {
            return c.source(self.arrows[k - 1]);
        }
        let d = self.arrows[k];
        if k % 2 == 0 {
            c.target(d)
        } else {
            c.source(d)
        }
    }

    pub fn objects(&self, c: &FinCat) -> Vec<ObjId> {
        (0..=self.arrows.len()).map(|k| self.object(c, k)).collect()
    }

    pub fn start(&self, c: &FinCat) -> ObjId {
        self.object(c, 0)
    }

    pub fn end(&self, c: &FinCat) -> ObjId {
        self.object(c, self.arrows.len())
    }

    /// Checks parity, chaining and weak-equivalence conditions.
    pub fn check(&self, r: &RelCat) -> Result<(), ZigZagError> {
        let c = r.cat();
        let n = self.arrows.len();
        if n % 2 == 0 {
            return Err(ZigZagError::EvenStage(n));
        }
        for (k, d) in self.arrows.iter().enumerate() {
            if k % 2 == 0 && !r.is_weq(*d) {
                return Err(ZigZagError::NotWeq {
                    index: k,
                    name: c.mor_name(*d).to_string(),
                });
            }
        }
        for k in 0..n - 1 {
            let (d, e) = (self.arrows[k], self.arrows[k + 1]);
            // C_{k+1} as seen from d_k and from d_{k+1}.
            let left = if k % 2 == 0 { c.source(d) } else { c.target(d) };
            let right = if k % 2 == 0 { c.source(e) } else { c.target(e) };
            if left != right {
                return Err(ZigZagError::Chain(k, k + 1));
            }
        }
        Ok(())
    }

    pub fn check_in(&self, r: &RelCat, x: ObjId, y: ObjId, n: usize) -> Result<(), ZigZagError> {
        if self.arrows.len() != n {
            return Err(ZigZagError::Length {
                expected: n,
                found: self.arrows.len(),
            });
        }
        self.check(r)?;
        let c = r.cat();
        let (a, b) = (self.start(c), self.end(c));
        if a != x || b != y {
            return Err(ZigZagError::Endpoints {
                from: c.obj_name(x).to_string(),
                to: c.obj_name(y).to_string(),
                found_from: c.obj_name(a).to_string(),
                found_to: c.obj_name(b).to_string(),
            });
        }
        Ok(())
    }

    /// Two identity arrows inserted at `C_i`.
    pub fn insert_identities(&self, c: &FinCat, i: usize) -> Result<ZigZag, ZigZagError> {
        let n = self.arrows.len();
        if i > n {
            return Err(ZigZagError::Position {
                position: i,
                stage: n,
            });
        }
        let id = c.id(self.object(c, i));
        let mut arrows = Vec::with_capacity(n + 2);
        arrows.extend_from_slice(&self.arrows[..i]);
        arrows.extend([id, id]);
        arrows.extend_from_slice(&self.arrows[i..]);
        Ok(ZigZag { arrows })
    }

    /// Concatenation; the two backward arrows meeting at the shared endpoint
    /// are composed into one.
    pub fn concat(&self, c: &FinCat, next: &ZigZag) -> Result<ZigZag, ZigZagError> {
        let (n, m) = (self.arrows.len(), next.arrows.len());
        if self.end(c) != next.start(c) {
            return Err(ZigZagError::Endpoints {
                from: c.obj_name(self.end(c)).to_string(),
                to: c.obj_name(self.end(c)).to_string(),
                found_from: c.obj_name(next.start(c)).to_string(),
                found_to: c.obj_name(next.end(c)).to_string(),
            });
        }
        let mut arrows = Vec::with_capacity(n + m - 1);
        arrows.extend_from_slice(&self.arrows[..n - 1]);
        arrows.push(c.then(next.arrows[0], self.arrows[n - 1]));
        arrows.extend_from_slice(&next.arrows[1..]);
        Ok(ZigZag { arrows })
    }

    /// Image under a functor, arrow by arrow.
    pub fn map(&self, f: impl Fn(MorId) -> MorId) -> ZigZag {
        ZigZag {
            arrows: self.arrows.iter().map(|d| f(*d)).collect(),
        }
    }

    /// `X <-a- C1 -b-> C2 <-c- Y`
    pub fn show(&self, c: &FinCat) -> String {
        let mut s = c.obj_name(self.object(c, 0)).to_string();
        for (k, d) in self.arrows.iter().enumerate() {
            let next = c.obj_name(self.object(c, k + 1));
            if k % 2 == 0 {
                s.push_str(&format!(" <-{}- {next}", c.mor_name(*d)));
            } else {
                s.push_str(&format!(" -{}-> {next}", c.mor_name(*d)));
            }
        }
        s
    }

    pub fn names(&self, c: &FinCat) -> Vec<String> {
        self.arrows
            .iter()
            .map(|d| c.mor_name(*d).to_string())
            .collect()
    }
}

/// A morphism of zig-zags: vertical arrows `v_k: C_k → C'_k` for
/// `0 ≤ k ≤ n` with `v_0`, `v_n` identities and every square commuting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ladder {
    pub source: ZigZag,
    pub target: ZigZag,
    pub verticals: Vec<MorId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum LadderError {
    #[error("source and target have different stages")]
    Stage,
    #[error("expected {expected} verticals, found {found}")]
    Length { expected: usize, found: usize },
    #[error("vertical {0} has the wrong source or target")]
    Typing(usize),
    #[error("end vertical {0} is not an identity")]
    Ends(usize),
    #[error("square {0} does not commute")]
    Square(usize),
}

impl Ladder {
    pub fn identity(c: &FinCat, z: &ZigZag) -> Ladder {
        Ladder {
            source: z.clone(),
            target: z.clone(),
            verticals: z.objects(c).into_iter().map(|o| c.id(o)).collect(),
        }
    }

    pub fn stage(&self) -> usize {
        self.source.stage()
    }

    /// `self` followed by `next`, componentwise.
    pub fn then(&self, c: &FinCat, next: &Ladder) -> Option<Ladder> {
        if self.target != next.source {
            return None;
        }
        Some(Ladder {
            source: self.source.clone(),
            target: next.target.clone(),
            verticals: self
                .verticals
                .iter()
                .zip(&next.verticals)
                .map(|(v, w)| c.then(*v, *w))
                .collect(),
        })
    }

    /// Typing, end conditions and all squares; the zig-zags themselves are
    /// not re-checked.
    pub fn check(&self, c: &FinCat) -> Result<(), LadderError> {
        let n = self.source.stage();
        if self.target.stage() != n {
            return Err(LadderError::Stage);
        }
        if self.verticals.len() != n + 1 {
            return Err(LadderError::Length {
                expected: n + 1,
                found: self.verticals.len(),
            });
        }
        for (k, v) in self.verticals.iter().enumerate() {
            if c.source(*v) != self.source.object(c, k) || c.target(*v) != self.target.object(c, k)
            {
                return Err(LadderError::Typing(k));
            }
        }
        for k in [0, n] {
            if !c.is_id(self.verticals[k]) {
                return Err(LadderError::Ends(k));
            }
        }
        match self.first_bad_square(c) {
            Some(k) => Err(LadderError::Square(k)),
            None => Ok(()),
        }
    }

    /// Index of the first square that fails to commute, assuming typing.
    pub fn first_bad_square(&self, c: &FinCat) -> Option<usize> {
        let (d, e, v) = (&self.source.arrows, &self.target.arrows, &self.verticals);
        (0..d.len()).find(|&k| !square_commutes(c, k, d[k], e[k], v[k], v[k + 1]))
    }

    pub fn names(&self, c: &FinCat) -> Vec<String> {
        self.verticals
            .iter()
            .map(|v| c.mor_name(*v).to_string())
            .collect()
    }
}

/// Square `k` between arrows `d` (top) and `e` (bottom) with verticals
/// `vk: C_k → C'_k` and `vk1: C_{k+1} → C'_{k+1}`.
pub fn square_commutes(c: &FinCat, k: usize, d: MorId, e: MorId, vk: MorId, vk1: MorId) -> bool {
    if k % 2 == 0 {
        // d: C_{k+1} → C_k, e: C'_{k+1} → C'_k
        c.comp(vk, d).is_some() && c.comp(vk, d) == c.comp(e, vk1)
    } else {
        // d: C_k → C_{k+1}, e: C'_k → C'_{k+1}
        c.comp(vk1, d).is_some() && c.comp(vk1, d) == c.comp(e, vk)
    }
}

/// Arrow choices by position parity: backward weak equivalences into an
/// object, forward morphisms out of it.
struct Moves {
    backward: Vec<Vec<MorId>>,
    forward: Vec<Vec<MorId>>,
}

impl Moves {
    fn new(r: &RelCat) -> Moves {
        let c = r.cat();
        let backward = c
            .object_ids()
            .map(|o| {
                c.into_obj(o)
                    .iter()
                    .copied()
                    .filter(|m| r.is_weq(*m))
                    .collect()
            })
            .collect();
        let forward = c.object_ids().map(|o| c.out_of(o).to_vec()).collect();
        Moves { backward, forward }
    }

    /// Arrows usable at position `k` from `C_k = o`, with the next object.
    fn at<'a>(
        &'a self,
        c: &'a FinCat,
        k: usize,
        o: ObjId,
    ) -> impl Iterator<Item = (MorId, ObjId)> + 'a {
        let (list, backward) = if k % 2 == 0 {
            (&self.backward[o.index()], true)
        } else {
            (&self.forward[o.index()], false)
        };
        list.iter()
            .map(move |d| (*d, if backward { c.source(*d) } else { c.target(*d) }))
    }
}

/// `alive[k][o]`: a zig-zag can be completed from `C_k = o` to `C_n = y`.
fn completions(r: &RelCat, moves: &Moves, y: ObjId, n: usize) -> Vec<Vec<bool>> {
    let c = r.cat();
    let mut alive = vec![vec![false; c.object_count()]; n + 1];
    alive[n][y.index()] = true;
    for k in (0..n).rev() {
        for o in c.object_ids() {
            alive[k][o.index()] = moves
                .at(c, k, o)
                .any(|(_, next)| alive[k + 1][next.index()]);
        }
    }
    alive
}

/// All stage-`n` zig-zags from `x` to `y`, in lexicographic order of arrows.
pub fn enumerate_zigzags(
    r: &RelCat,
    x: ObjId,
    y: ObjId,
    n: usize,
) -> Result<Vec<ZigZag>, ZigZagError> {
    enumerate_zigzags_with(Exec::default(), r, x, y, n)
}

pub fn enumerate_zigzags_with(
    exec: Exec,
    r: &RelCat,
    x: ObjId,
    y: ObjId,
    n: usize,
) -> Result<Vec<ZigZag>, ZigZagError> {
    if n % 2 == 0 {
        return Err(ZigZagError::EvenStage(n));
    }
    let c = r.cat();
    let moves = Moves::new(r);
    let alive = completions(r, &moves, y, n);
    if !alive[0][x.index()] {
        return Ok(Vec::new());
    }
    let firsts: Vec<(MorId, ObjId)> = moves
        .at(c, 0, x)
        .filter(|(_, next)| alive[1][next.index()])
        .collect();

    fn extend(
        c: &FinCat,
        moves: &Moves,
        alive: &[Vec<bool>],
        prefix: &mut Vec<MorId>,
        at: ObjId,
        out: &mut Vec<ZigZag>,
    ) {
        let k = prefix.len();
        if k == alive.len() - 1 {
            out.push(ZigZag::new(prefix.clone()));
            return;
        }
        for (d, next) in moves.at(c, k, at) {
            if alive[k + 1][next.index()] {
                prefix.push(d);
                extend(c, moves, alive, prefix, next, out);
                prefix.pop();
            }
        }
    }

    Ok(exec.flat_map(&firsts, |(d, next)| {
        let mut out = Vec::new();
        let mut prefix = vec![*d];
        extend(c, &moves, &alive, &mut prefix, *next, &mut out);
        out
    }))
}

/// Ladders out of `z` into zig-zags ending at the same endpoint, optionally
/// with a fixed target. Results are sorted.
pub fn ladders_from(r: &RelCat, z: &ZigZag, target: Option<&ZigZag>) -> Vec<Ladder> {
    let mut out = Vec::new();
    let _ = for_each_ladder_from::<()>(r, z, target, &mut |l| {
        out.push(l.clone());
        Ok(())
    });
    out.sort();
    out
}

/// Visits the ladders out of `z` (as in [`ladders_from`]) in search order
/// through one reused buffer, stopping at the first error.
pub fn for_each_ladder_from<E>(
    r: &RelCat,
    z: &ZigZag,
    target: Option<&ZigZag>,
    visit: &mut dyn FnMut(&Ladder) -> Result<(), E>,
) -> Result<(), E> {
    walk_ladders(r, z, target, None, &mut |l, _| visit(l))
}

/// Like [`for_each_ladder_from`] over all targets, also passing the index
/// of each target in `sorted`, which must hold every zig-zag of the stage
/// in order.
pub fn for_each_ladder_indexed<E>(
    r: &RelCat,
    z: &ZigZag,
    sorted: &[ZigZag],
    visit: &mut dyn FnMut(&Ladder, usize) -> Result<(), E>,
) -> Result<(), E> {
    walk_ladders(r, z, None, Some(sorted), visit)
}

struct Walk<'a> {
    c: &'a FinCat,
    moves: &'a Moves,
    alive: &'a [Vec<bool>],
    objs: &'a [ObjId],
    target: Option<&'a ZigZag>,
    sorted: Option<&'a [ZigZag]>,
}

type Visit<'v, E> = dyn FnMut(&Ladder, usize) -> Result<(), E> + 'v;

fn walk_ladders<E>(
    r: &RelCat,
    z: &ZigZag,
    target: Option<&ZigZag>,
    sorted: Option<&[ZigZag]>,
    visit: &mut Visit<'_, E>,
) -> Result<(), E> {
    let c = r.cat();
    let n = z.stage();
    if target.is_some_and(|t| t.stage() != n) {
        return Ok(());
    }
    let moves = Moves::new(r);
    let alive = completions(r, &moves, z.end(c), n);
    let objs = z.objects(c);
    let mut ladder = Ladder {
        source: z.clone(),
        target: ZigZag::new(Vec::with_capacity(n)),
        verticals: Vec::with_capacity(n + 1),
    };
    ladder.verticals.push(c.id(objs[0]));
    let walk = Walk {
        c,
        moves: &moves,
        alive: &alive,
        objs: &objs,
        target,
        sorted,
    };
    let range = (0, sorted.map_or(0, <[ZigZag]>::len));
    descend(&walk, visit, &mut ladder, objs[0], range)
}

fn descend<E>(
    w: &Walk<'_>,
    visit: &mut Visit<'_, E>,
    ladder: &mut Ladder,
    at: ObjId,
    range: (usize, usize),
) -> Result<(), E> {
    let k = ladder.target.arrows.len();
    if k == ladder.source.stage() {
        return visit(ladder, range.0);
    }
    match w.target {
        Some(t) => {
            let e = t.arrows[k];
            let next = if k % 2 == 0 { w.c.source(e) } else { w.c.target(e) };
            branch(w, visit, ladder, e, next, range)
        }
        None => {
            for (e, next) in w.moves.at(w.c, k, at) {
                branch(w, visit, ladder, e, next, range)?;
            }
            Ok(())
        }
    }
}

/// Extends the target by `e` and tries every vertical making square `k`
/// commute.
fn branch<E>(
    w: &Walk<'_>,
    visit: &mut Visit<'_, E>,
    ladder: &mut Ladder,
    e: MorId,
    next: ObjId,
    range: (usize, usize),
) -> Result<(), E> {
    let c = w.c;
    let k = ladder.target.arrows.len();
    let n = ladder.source.stage();
    if !w.alive[k + 1][next.index()] {
        return Ok(());
    }
    let range = match w.sorted {
        Some(s) => {
            let sub = &s[range.0..range.1];
            let lo = range.0 + sub.partition_point(|z| z.arrows[k] < e);
            let hi = range.0 + sub.partition_point(|z| z.arrows[k] <= e);
            if lo == hi {
                return Ok(());
            }
            (lo, hi)
        }
        None => range,
    };
    let (vk, d) = (ladder.verticals[k], ladder.source.arrows[k]);
    // The last vertical is the identity on the shared endpoint.
    let id_next = [c.id(next)];
    let verticals_next = if k + 1 == n {
        &id_next[..]
    } else {
        c.homset(w.objs[k + 1], next)
    };
    for &vk1 in verticals_next {
        if square_commutes(c, k, d, e, vk, vk1) {
            ladder.target.arrows.push(e);
            ladder.verticals.push(vk1);
            let res = descend(w, visit, ladder, next, range);
            ladder.verticals.pop();
            ladder.target.arrows.pop();
            res?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn obj(r: &RelCat, n: &str) -> ObjId {
        r.cat().object(n).unwrap()
    }

    #[test]
    fn counts_on_small_fixtures() {
        let pt = fixtures::pt();
        let p = obj(&pt, "P");
        for n in [1, 3, 5, 7] {
            assert_eq!(enumerate_zigzags(&pt, p, p, n).unwrap().len(), 1);
        }
        let arr = fixtures::arr();
        let zs = enumerate_zigzags(&arr, obj(&arr, "X"), obj(&arr, "Y"), 3).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].show(arr.cat()), "X <-id_X- X -f-> Y <-id_Y- Y");
        let weq = fixtures::weq();
        let x = obj(&weq, "X");
        assert_eq!(enumerate_zigzags(&weq, x, x, 3).unwrap().len(), 2);
        assert_eq!(
            enumerate_zigzags(&weq, x, x, 2),
            Err(ZigZagError::EvenStage(2))
        );
    }

    #[test]
    fn inclusion_and_concatenation() {
        let arr = fixtures::arr();
        let c = arr.cat();
        let z = &enumerate_zigzags(&arr, obj(&arr, "X"), obj(&arr, "Y"), 3).unwrap()[0];
        let up = z.insert_identities(c, 1).unwrap();
        assert_eq!(
            up.show(c),
            "X <-id_X- X -id_X-> X <-id_X- X -f-> Y <-id_Y- Y"
        );
        up.check(&arr).unwrap();
        assert!(z.insert_identities(c, 4).is_err());

        let chain = fixtures::chain();
        let c = chain.cat();
        let (x, y, zo) = (obj(&chain, "X"), obj(&chain, "Y"), obj(&chain, "Z"));
        let f = &enumerate_zigzags(&chain, x, y, 3).unwrap()[0];
        let g = &enumerate_zigzags(&chain, y, zo, 3).unwrap()[0];
        let fg = f.concat(c, g).unwrap();
        assert_eq!(fg.names(c), ["id_X", "f", "id_Y", "g", "id_Z"]);
        let unit = ZigZag::identity(c, zo, 1);
        assert_eq!(fg.concat(c, &unit).unwrap(), fg);
    }

    #[test]
    fn ladders_on_weq_and_para() {
        let weq = fixtures::weq();
        let x = obj(&weq, "X");
        let zs = enumerate_zigzags(&weq, x, x, 3).unwrap();
        let mut non_identity = 0;
        for z in &zs {
            for l in ladders_from(&weq, z, None) {
                l.check(weq.cat()).unwrap();
                if l.source != l.target {
                    non_identity += 1;
                    assert_eq!(l.names(weq.cat()), ["id_X", "id_X", "w", "id_X"]);
                }
            }
        }
        assert_eq!(non_identity, 1);

        let para = fixtures::para();
        let zs = enumerate_zigzags(&para, obj(&para, "A"), obj(&para, "B"), 3).unwrap();
        assert_eq!(zs.len(), 2);
        for z in &zs {
            assert_eq!(ladders_from(&para, z, None).len(), 1);
        }
    }
}
