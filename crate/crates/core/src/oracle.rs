//! Brute-force localization: hom-sets of `C[W⁻¹]` as classes of words in
//! morphisms and formal inverses of weak equivalences, up to a length bound.
//!
//! All words from `X` to `Y` of length at most the bound are generated and
//! merged with their one-step reducts:
//!
//! * two adjacent plain letters are replaced by their composite,
//! * `w` followed by `w⁻¹` (or `w⁻¹` followed by `w`) is deleted,
//! * two adjacent inverse letters are replaced by the inverse of the
//!   composite (sound because weak equivalences are composition-closed),
//! * identity letters never occur (they are deleted on input).
//!
//! Every reduct is shorter than the word it comes from, so processing words
//! by increasing length yields, after length `k`, exactly the congruence
//! restricted to words of length at most `k`. The verdict is SATURATED when
//! the class maps for the last two length increments are bijections.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::fincat::{FinCat, MorId, ObjId};
use crate::relcat::RelCat;
use crate::unionfind::UnionFind;

/// Hard cap on the number of words kept; the bound is lowered to fit.
pub const MAX_UNIVERSE: usize = 1_500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    Plain(MorId),
    Inverse(MorId),
}

impl Letter {
    fn code(self) -> u32 {
        match self {
            Letter::Plain(m) => 2 * m.0,
            Letter::Inverse(m) => 2 * m.0 + 1,
        }
    }

    fn decode(code: u32) -> Letter {
        if code % 2 == 0 {
            Letter::Plain(MorId(code / 2))
        } else {
            Letter::Inverse(MorId(code / 2))
        }
    }

    pub fn start(self, c: &FinCat) -> ObjId {
        match self {
            Letter::Plain(m) => c.source(m),
            Letter::Inverse(m) => c.target(m),
        }
    }

    pub fn end(self, c: &FinCat) -> ObjId {
        match self {
            Letter::Plain(m) => c.target(m),
            Letter::Inverse(m) => c.source(m),
        }
    }

    pub fn show(self, c: &FinCat) -> String {
        match self {
            Letter::Plain(m) => c.mor_name(m).to_string(),
            Letter::Inverse(m) => format!("{}^-1", c.mor_name(m)),
        }
    }
}

/// A composable string of letters, stored in path order (the first letter
/// is applied first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word {
    pub from: ObjId,
    pub to: ObjId,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum WordError {
    #[error("letters do not chain at position {0}")]
    NotComposable(usize),
    #[error("{0} is not a weak equivalence and cannot be inverted")]
    NotInvertible(String),
    #[error("words have different endpoints")]
    EndpointMismatch,
}

impl Word {
    pub fn empty(x: ObjId) -> Word {
        Word {
            from: x,
            to: x,
            letters: Vec::new(),
        }
    }

    /// The one-letter word of `m` (empty when `m` is an identity).
    pub fn plain(c: &FinCat, m: MorId) -> Word {
        Word {
            from: c.source(m),
            to: c.target(m),
            letters: if c.is_id(m) {
                Vec::new()
            } else {
                vec![Letter::Plain(m)]
            },
        }
    }

    /// Checks chaining and invertibility, and deletes identity letters.
    pub fn new(r: &RelCat, from: ObjId, letters: &[Letter]) -> Result<Word, WordError> {
        let c = r.cat();
        let mut at = from;
        let mut kept = Vec::new();
        for (i, l) in letters.iter().enumerate() {
            if l.start(c) != at {
                return Err(WordError::NotComposable(i));
            }
            if let Letter::Inverse(w) = l {
                if !r.is_weq(*w) {
                    return Err(WordError::NotInvertible(c.mor_name(*w).to_string()));
                }
            }
            at = l.end(c);
            let m = match l {
                Letter::Plain(m) | Letter::Inverse(m) => *m,
            };
            if !c.is_id(m) {
                kept.push(*l);
            }
        }
        Ok(Word {
            from,
            to: at,
            letters: kept,
        })
    }

    /// Parses a word written in composition order, e.g. `w^-1 . f`; `id_X`
    /// (or any identity) stands for the empty word.
    pub fn parse(r: &RelCat, text: &str) -> Result<Word, String> {
        let c = r.cat();
        let mut letters = Vec::new();
        for part in text.split('.').map(str::trim).rev() {
            if part.is_empty() {
                return Err(format!("empty letter in word {text:?}"));
            }
            let (name, inverse) = match part.strip_suffix("^-1") {
                Some(n) => (n.trim(), true),
                None => (part, false),
            };
            let m = c
                .morphism(name)
                .ok_or_else(|| format!("unknown morphism {name}"))?;
            letters.push(if inverse {
                Letter::Inverse(m)
            } else {
                Letter::Plain(m)
            });
        }
        let from = letters[0].start(c);
        Word::new(r, from, &letters).map_err(|e| e.to_string())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Composition-order display: `w^-1 . f`, or `id_X` for the empty word.
    pub fn show(&self, c: &FinCat) -> String {
        if self.letters.is_empty() {
            return c.mor_name(c.id(self.from)).to_string();
        }
        let parts: Vec<String> = self.letters.iter().rev().map(|l| l.show(c)).collect();
        parts.join(" . ")
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Word) -> Result<Word, WordError> {
        if self.to != next.from {
            return Err(WordError::EndpointMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend(&next.letters);
        Ok(Word {
            from: self.from,
            to: next.to,
            letters,
        })
    }

    fn codes(&self) -> Box<[u32]> {
        self.letters.iter().map(|l| l.code()).collect()
    }

    fn from_codes(from: ObjId, to: ObjId, codes: &[u32]) -> Word {
        Word {
            from,
            to,
            letters: codes.iter().map(|c| Letter::decode(*c)).collect(),
        }
    }
}

/// All one-step reducts of a word given by letter codes.
fn reducts(r: &RelCat, codes: &[u32]) -> Vec<Box<[u32]>> {
    let c = r.cat();
    let mut out = Vec::new();
    for i in 0..codes.len().saturating_sub(1) {
        let replacement: Option<Vec<u32>> =
            match (Letter::decode(codes[i]), Letter::decode(codes[i + 1])) {
                (Letter::Plain(a), Letter::Plain(b)) => {
                    let h = c.then(a, b);
                    Some(if c.is_id(h) {
                        vec![]
                    } else {
                        vec![Letter::Plain(h).code()]
                    })
                }
                (Letter::Plain(a), Letter::Inverse(b)) | (Letter::Inverse(a), Letter::Plain(b))
                    if a == b =>
                {
                    Some(vec![])
                }
                (Letter::Inverse(a), Letter::Inverse(b)) => {
                    // a⁻¹ then b⁻¹ is (a∘b)⁻¹.
                    let h = c.then(b, a);
                    Some(if c.is_id(h) {
                        vec![]
                    } else {
                        vec![Letter::Inverse(h).code()]
                    })
                }
                _ => None,
            };
        if let Some(rep) = replacement {
            let mut w = Vec::with_capacity(codes.len() - 1);
            w.extend_from_slice(&codes[..i]);
            w.extend(rep);
            w.extend_from_slice(&codes[i + 2..]);
            out.push(w.into_boxed_slice());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Saturation {
    Saturated,
    Unknown,
}

impl fmt::Display for Saturation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Saturation::Saturated => "SATURATED",
            Saturation::Unknown => "UNKNOWN",
        })
    }
}

/// The closed word universe for one hom-set.
#[derive(Clone, Debug)]
pub struct Closure {
    pub from: ObjId,
    pub to: ObjId,
    pub requested_bound: usize,
    pub bound: usize,
    words: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, usize>,
    reduct_edges: Vec<Vec<usize>>,
    roots: Vec<usize>,
    /// Class count among words of length ≤ k, for k = 0..=bound.
    pub counts: Vec<usize>,
    /// Whether the class map from length k−1 to length k is a bijection.
    pub bijective: Vec<bool>,
    pub saturation: Saturation,
}

/// Objects from which `y` is reachable by a letter path of exactly `r`
/// letters, for each `r ≤ bound`.
fn reachability(r: &RelCat, letters: &[Letter], y: ObjId, bound: usize) -> Vec<Vec<bool>> {
    let c = r.cat();
    let n = c.object_count();
    let mut reach = vec![vec![false; n]; bound + 1];
    reach[0][y.index()] = true;
    for k in 1..=bound {
        for l in letters {
            if reach[k - 1][l.end(c).index()] {
                reach[k][l.start(c).index()] = true;
            }
        }
    }
    reach
}

fn alphabet(r: &RelCat) -> Vec<Letter> {
    let c = r.cat();
    let mut letters = Vec::new();
    for m in c.morphism_ids().filter(|m| !c.is_id(*m)) {
        letters.push(Letter::Plain(m));
        if r.is_weq(m) {
            letters.push(Letter::Inverse(m));
        }
    }
    letters
}

impl Closure {
    pub fn compute(r: &RelCat, x: ObjId, y: ObjId, bound: usize) -> Closure {
        Closure::compute_with(Exec::default(), r, x, y, bound)
    }

    pub fn compute_with(exec: Exec, r: &RelCat, x: ObjId, y: ObjId, bound: usize) -> Closure {
        let c = r.cat();
        let letters = alphabet(r);
        let reach = reachability(r, &letters, y, bound);
        let useful = |o: ObjId, len: usize| (0..=bound - len).any(|k| reach[k][o.index()]);

        // Levels of prefixes from x, kept only while y stays reachable.
        let mut levels: Vec<Vec<Box<[u32]>>> = Vec::new();
        let mut prefixes: Vec<(Box<[u32]>, ObjId)> = vec![(Box::new([]), x)];
        let mut total = 0usize;
        let mut effective = bound;
        for len in 0..=bound {
            let ending: Vec<Box<[u32]>> = prefixes
                .iter()
                .filter(|(_, o)| *o == y)
                .map(|(w, _)| w.clone())
                .collect();
            if total + ending.len() > MAX_UNIVERSE || prefixes.len() > MAX_UNIVERSE {
                effective = len.saturating_sub(1);
                break;
            }
            total += ending.len();
            levels.push(ending);
            if len == bound {
                break;
            }
            let next: Vec<(Box<[u32]>, ObjId)> = exec.flat_map(&prefixes, |(w, o)| {
                letters
                    .iter()
                    .filter(|l| l.start(c) == *o && useful(l.end(c), len + 1))
                    .map(|l| {
                        let mut v = w.to_vec();
                        v.push(l.code());
                        (v.into_boxed_slice(), l.end(c))
                    })
                    .collect()
            });
            prefixes = next;
        }
        levels.truncate(effective + 1);

        let mut words: Vec<Box<[u32]>> = Vec::with_capacity(total);
        let mut index = HashMap::with_capacity(total);
        for level in &levels {
            let mut sorted = level.clone();
            sorted.sort();
            for w in sorted {
                index.insert(w.clone(), words.len());
                words.push(w);
            }
        }

        let edges: Vec<Vec<usize>> = exec.map(&words, |w| {
            reducts(r, w)
                .into_iter()
                .filter_map(|red| index.get(&red).copied())
                .collect()
        });

        let mut uf = UnionFind::new(words.len());
        let mut counts = Vec::new();
        let mut bijective = Vec::new();
        let mut start = 0;
        for (k, level) in levels.iter().enumerate() {
            let end = start + level.len();
            let old_roots: HashSet<usize> = (0..start).map(|i| uf.find(i)).collect();
            for i in start..end {
                for &j in &edges[i] {
                    uf.union(i, j);
                }
            }
            let old_images: HashSet<usize> = old_roots.iter().map(|r0| uf.find(*r0)).collect();
            let all_roots: HashSet<usize> = (0..end).map(|i| uf.find(i)).collect();
            let injective = old_images.len() == old_roots.len();
            let surjective = all_roots.len() == old_images.len();
            counts.push(all_roots.len());
            bijective.push(k > 0 && injective && surjective);
            start = end;
        }

        let saturation = if effective >= 2 && bijective[effective] && bijective[effective - 1] {
            Saturation::Saturated
        } else {
            Saturation::Unknown
        };
        let roots = (0..words.len()).map(|i| uf.find(i)).collect();
        Closure {
            from: x,
            to: y,
            requested_bound: bound,
            bound: effective,
            words,
            index,
            reduct_edges: edges,
            roots,
            counts,
            bijective,
            saturation,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.words.len()
    }

    pub fn class_count(&self) -> usize {
        self.counts.last().copied().unwrap_or(0)
    }

    fn word(&self, i: usize) -> Word {
        Word::from_codes(self.from, self.to, &self.words[i])
    }

    /// One representative per class (shortlex least), classes ordered by
    /// their representatives.
    pub fn representatives(&self) -> Vec<(Word, usize)> {
        let mut best: HashMap<usize, (usize, usize)> = HashMap::new();
        for (i, root) in self.roots.iter().enumerate() {
            let e = best.entry(*root).or_insert((i, 0));
            e.1 += 1;
            // Words are stored in shortlex order, so the first is least.
        }
        let mut reps: Vec<(usize, usize)> = best.into_values().collect();
        reps.sort();
        reps.into_iter()
            .map(|(i, size)| (self.word(i), size))
            .collect()
    }

    /// Applies reducts greedily (leftmost first) until none applies.
    pub fn greedy_reduce(r: &RelCat, w: &Word) -> Word {
        let mut codes = w.codes();
        while let Some(next) = reducts(r, &codes).into_iter().next() {
            codes = next;
        }
        Word::from_codes(w.from, w.to, &codes)
    }

    /// Class index (the root word id) of `w`, reducing first if it is longer
    /// than the bound.
    pub fn class_of(&self, r: &RelCat, w: &Word) -> Option<usize> {
        if w.from != self.from || w.to != self.to {
            return None;
        }
        let codes = if w.len() > self.bound {
            Closure::greedy_reduce(r, w).codes()
        } else {
            w.codes()
        };
        self.index.get(&codes).map(|i| self.roots[*i])
    }

    /// Position of the class of `w` in [`Closure::representatives`].
    pub fn class_position(&self, r: &RelCat, w: &Word) -> Option<usize> {
        let root = self.class_of(r, w)?;
        let reps = self.representatives();
        reps.iter()
            .position(|(rep, _)| self.index.get(&rep.codes()).map(|i| self.roots[*i]) == Some(root))
    }

    /// A chain of one-step rewrites (in either direction) joining two words of
    /// the same class.
    pub fn trace(&self, u: &Word, v: &Word) -> Option<Vec<Word>> {
        let (&a, &b) = (self.index.get(&u.codes())?, self.index.get(&v.codes())?);
        if self.roots[a] != self.roots[b] {
            return None;
        }
        let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); self.words.len()];
        for (i, es) in self.reduct_edges.iter().enumerate() {
            for &j in es {
                adjacent[i].push(j);
                adjacent[j].push(i);
            }
        }
        let mut prev = vec![usize::MAX; self.words.len()];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(i) = queue.pop_front() {
            if i == b {
                break;
            }
            for &j in &adjacent[i] {
                if prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        let mut path = vec![b];
        while *path.last().expect("nonempty") != a {
            path.push(prev[*path.last().expect("nonempty")]);
        }
        path.reverse();
        Some(path.into_iter().map(|i| self.word(i)).collect())
    }
}

/// Independent check of a rewrite chain: consecutive words must differ by
/// one relation of the localization applied at one position.
pub fn replay_trace(r: &RelCat, chain: &[Word]) -> Result<(), String> {
    let c = r.cat();
    for (k, pair) in chain.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        if long.from != short.from || long.to != short.to {
            return Err(format!("step {k}: endpoints differ"));
        }
        let ok = (0..long.len().saturating_sub(1)).any(|i| {
            if long.letters[..i] != short.letters[..i.min(short.len())] {
                return false;
            }
            let tail_long = &long.letters[i + 2..];
            let removed = long.len() - short.len();
            if short.len() < tail_long.len()
                || short.letters[short.len() - tail_long.len()..] != *tail_long
            {
                return false;
            }
            let middle = &short.letters[i..short.len() - tail_long.len()];
            relation_holds(r, c, long.letters[i], long.letters[i + 1], middle)
                && (removed == 1 || removed == 2)
        });
        if !ok {
            return Err(format!(
                "step {k}: {} and {} are not related by one rewrite",
                a.show(c),
                b.show(c)
            ));
        }
    }
    Ok(())
}

/// Whether the two-letter segment `x` then `y` equals `middle` in the
/// localization by one defining relation.
fn relation_holds(r: &RelCat, c: &FinCat, x: Letter, y: Letter, middle: &[Letter]) -> bool {
    let identity_or = |h: MorId, l: Letter| {
        if c.is_id(h) {
            middle.is_empty()
        } else {
            middle == [l]
        }
    };
    match (x, y) {
        (Letter::Plain(a), Letter::Plain(b)) => c
            .comp(b, a)
            .is_some_and(|h| identity_or(h, Letter::Plain(h))),
        (Letter::Plain(a), Letter::Inverse(b)) | (Letter::Inverse(a), Letter::Plain(b)) => {
            a == b && r.is_weq(a) && middle.is_empty()
        }
        (Letter::Inverse(a), Letter::Inverse(b)) => {
            r.is_weq(a)
                && r.is_weq(b)
                && c.comp(a, b)
                    .is_some_and(|h| identity_or(h, Letter::Inverse(h)))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub from: String,
    pub to: String,
    pub requested_bound: usize,
    pub bound: usize,
    pub universe: usize,
    pub classes: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub counts_by_length: Vec<usize>,
    pub verdict: Saturation,
}

pub fn localize_hom(r: &RelCat, x: ObjId, y: ObjId, bound: usize) -> (Closure, HomReport) {
    let closure = Closure::compute(r, x, y, bound.max(1));
    let c = r.cat();
    let reps = closure.representatives();
    let report = HomReport {
        from: c.obj_name(x).to_string(),
        to: c.obj_name(y).to_string(),
        requested_bound: bound,
        bound: closure.bound,
        universe: closure.universe_size(),
        classes: reps.iter().map(|(w, _)| w.show(c)).collect(),
        class_sizes: reps.iter().map(|(_, s)| *s).collect(),
        counts_by_length: closure.counts.clone(),
        verdict: closure.saturation,
    };
    (closure, report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Equality {
    Yes,
    NoAtBound,
    Unknown,
}

impl fmt::Display for Equality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equality::Yes => "yes",
            Equality::NoAtBound => "no-at-bound",
            Equality::Unknown => "UNKNOWN",
        })
    }
}

pub fn equal_in_localization(
    r: &RelCat,
    u: &Word,
    v: &Word,
    bound: usize,
) -> Result<Equality, WordError> {
    if u.from != v.from || u.to != v.to {
        return Err(WordError::EndpointMismatch);
    }
    if u == v {
        return Ok(Equality::Yes);
    }
    let bound = bound.max(u.len()).max(v.len()).max(1);
    let closure = Closure::compute(r, u.from, u.to, bound);
    Ok(match (closure.class_of(r, u), closure.class_of(r, v)) {
        (Some(a), Some(b)) if a == b => Equality::Yes,
        (Some(_), Some(_)) if closure.saturation == Saturation::Saturated => Equality::NoAtBound,
        _ => Equality::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn obj(r: &RelCat, n: &str) -> ObjId {
        r.cat().object(n).unwrap()
    }

    #[test]
    fn walking_arrow_has_one_class() {
        let r = fixtures::arr();
        let (_, rep) = localize_hom(&r, obj(&r, "X"), obj(&r, "Y"), 6);
        assert_eq!(rep.classes, ["f"]);
        assert_eq!(rep.verdict, Saturation::Saturated);
    }

    #[test]
    fn inverse_of_the_weak_equivalence() {
        let r = fixtures::weq();
        let (_, rep) = localize_hom(&r, obj(&r, "Y"), obj(&r, "X"), 6);
        assert_eq!(rep.classes, ["w^-1"]);
        assert_eq!(rep.verdict, Saturation::Saturated);
        let (_, rep) = localize_hom(&r, obj(&r, "X"), obj(&r, "X"), 8);
        assert_eq!(rep.classes, ["id_X"]);
        assert_eq!(rep.verdict, Saturation::Saturated);
    }

    #[test]
    fn parallel_pair_never_saturates() {
        let r = fixtures::para();
        let (_, rep) = localize_hom(&r, obj(&r, "A"), obj(&r, "A"), 6);
        assert!(rep.classes.len() >= 4, "{:?}", rep.classes);
        assert_eq!(rep.verdict, Saturation::Unknown);
        let (_, rep) = localize_hom(&r, obj(&r, "A"), obj(&r, "B"), 6);
        assert_eq!(rep.verdict, Saturation::Unknown);
        assert!(rep.classes.contains(&"f . w^-1 . f".to_string()));
    }

    #[test]
    fn equality_verdicts() {
        let r = fixtures::weq();
        let x = obj(&r, "X");
        let ww = Word::parse(&r, "w^-1 . w").unwrap();
        assert_eq!(
            equal_in_localization(&r, &ww, &Word::empty(x), 4).unwrap(),
            Equality::Yes
        );

        let a = fixtures::arr();
        let f = Word::parse(&a, "f").unwrap();
        assert_eq!(equal_in_localization(&a, &f, &f, 1).unwrap(), Equality::Yes);

        let p = fixtures::para();
        let pf = Word::parse(&p, "f").unwrap();
        let pw = Word::parse(&p, "w").unwrap();
        assert_eq!(
            equal_in_localization(&p, &pf, &pw, 6).unwrap(),
            Equality::Unknown
        );

        let iso = fixtures::iso();
        let s = Word::parse(&iso, "s").unwrap();
        let t_inv = Word::parse(&iso, "t^-1").unwrap();
        assert_eq!(
            equal_in_localization(&iso, &s, &t_inv, 6).unwrap(),
            Equality::Yes
        );
        assert_eq!(
            equal_in_localization(&iso, &s, &Word::empty(obj(&iso, "X")), 6),
            Err(WordError::EndpointMismatch)
        );
    }

    #[test]
    fn traces_replay() {
        let r = fixtures::iso();
        let (closure, _) = localize_hom(&r, obj(&r, "X"), obj(&r, "Y"), 5);
        let u = Word::parse(&r, "s . t . s").unwrap();
        let v = Word::parse(&r, "t^-1").unwrap();
        let chain = closure.trace(&u, &v).unwrap();
        assert_eq!(chain.first(), Some(&u));
        assert_eq!(chain.last(), Some(&v));
        replay_trace(&r, &chain).unwrap();
        let bogus = vec![u.clone(), Word::parse(&r, "s . s^-1 . s").unwrap()];
        assert!(replay_trace(&r, &bogus).is_err());
    }

    #[test]
    fn strategies_agree() {
        let r = fixtures::cylfix();
        let a = obj(&r, "A");
        let b = obj(&r, "B");
        let s = Closure::compute_with(Exec::Sequential, &r, a, b, 4);
        let p = Closure::compute_with(Exec::Parallel, &r, a, b, 4);
        assert_eq!(s.representatives(), p.representatives());
        assert_eq!(s.counts, p.counts);
    }
}
