//! Finite labeled posets stored as Hasse diagrams with strict/weak edges.
//!
//! Elements are the ids `1..=n`. A poset optionally carries a labeling
//! `ω`, a bijection from elements onto `1..=n`; a cover `a ≺ b` is weak
//! when `ω(a) < ω(b)` and strict otherwise. When no labeling is stored the
//! edge kinds alone describe the poset, and [`LabeledPoset::realize_labeling`]
//! produces a labeling that reproduces them.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest supported element count (relations are stored as `u64` bit rows).
pub const MAX_ELEMENTS: usize = 64;

pub type Mask = u64;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask as 0-based indices.
pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Weak,
    Strict,
}

impl EdgeKind {
    pub fn flip(self) -> Self {
        match self {
            EdgeKind::Weak => EdgeKind::Strict,
            EdgeKind::Strict => EdgeKind::Weak,
        }
    }

    /// Kind of the edge `lower ≺ upper` under a labeling.
    pub fn from_labels(lower_label: usize, upper_label: usize) -> Self {
        if lower_label < upper_label {
            EdgeKind::Weak
        } else {
            EdgeKind::Strict
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Weak => "weak",
            EdgeKind::Strict => "strict",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Hasse-diagram edge `lower ≺ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub kind: EdgeKind,
}

impl Cover {
    pub fn new(lower: usize, upper: usize, kind: EdgeKind) -> Self {
        Cover { lower, upper, kind }
    }

    pub fn weak(lower: usize, upper: usize) -> Self {
        Cover::new(lower, upper, EdgeKind::Weak)
    }

    pub fn strict(lower: usize, upper: usize) -> Self {
        Cover::new(lower, upper, EdgeKind::Strict)
    }
}

/// The set of label pairs `(a, b)` with `a <_P b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LessThanSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl LessThanSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        LessThanSet { pairs: pairs.into_iter().collect() }
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_superset(&self, other: &LessThanSet) -> bool {
        self.pairs.is_superset(&other.pairs)
    }

    /// First pair of `other` (in sorted order) missing from `self`.
    pub fn first_missing(&self, other: &LessThanSet) -> Option<(usize, usize)> {
        other.pairs.difference(&self.pairs).next().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }
}

/// A finite poset given by its Hasse diagram with strict/weak edges and an
/// optional labeling.
#[derive(Clone, Debug)]
pub struct LabeledPoset {
    n: usize,
    covers: Vec<Cover>,
    labels: Option<Vec<usize>>,
    // below[i]: elements strictly below element i+1, as 0-based bits.
    below: Vec<Mask>,
    above: Vec<Mask>,
}

impl PartialEq for LabeledPoset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.covers == other.covers && self.labels == other.labels
    }
}

impl Eq for LabeledPoset {}

impl Hash for LabeledPoset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.covers.hash(state);
        self.labels.hash(state);
    }
}

fn check_id(id: usize, n: usize) -> Result<()> {
    if id == 0 || id > n {
        Err(Error::ElementOutOfRange { id, n })
    } else {
        Ok(())
    }
}

fn check_labels(labels: &[usize], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::InvalidLabels { n });
    }
    let mut seen = vec![false; n];
    for &l in labels {
        if l == 0 || l > n || seen[l - 1] {
            return Err(Error::InvalidLabels { n });
        }
        seen[l - 1] = true;
    }
    Ok(())
}

/// Strict-below masks of the transitive closure of `edges` (0-based pairs).
/// Fails with the offending element (1-based) if the edges contain a cycle.
pub(crate) fn closure_below(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Vec<Mask>, usize> {
    let mut preds = vec![0 as Mask; n];
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in edges {
        if preds[b] & bit(a) == 0 {
            preds[b] |= bit(a);
            indeg[b] += 1;
            succ[a].push(b);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
        return Err(stuck + 1);
    }
    let mut below = vec![0 as Mask; n];
    for &v in &order {
        let mut m = preds[v];
        for p in bits(preds[v]) {
            m |= below[p];
        }
        below[v] = m;
    }
    Ok(below)
}

fn transpose(below: &[Mask]) -> Vec<Mask> {
    let n = below.len();
    let mut above = vec![0 as Mask; n];
    for (b, &m) in below.iter().enumerate() {
        for a in bits(m) {
            above[a] |= bit(b);
        }
    }
    above
}

impl LabeledPoset {
    /// Builds a poset from its cover edges.
    ///
    /// The edges must form a transitively reduced acyclic digraph. With
    /// `labels` present every edge kind must agree with the labeling;
    /// without them the assignment must be free of bad cycles.
    pub fn new(n: usize, covers: impl IntoIterator<Item = Cover>, labels: Option<Vec<usize>>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n, max: MAX_ELEMENTS });
        }
        let mut covers: Vec<Cover> = covers.into_iter().collect();
        covers.sort();
        let mut pairs = BTreeSet::new();
        for c in &covers {
            check_id(c.lower, n)?;
            check_id(c.upper, n)?;
            if c.lower == c.upper {
                return Err(Error::SelfLoop { lower: c.lower, upper: c.upper });
            }
            let key = (c.lower.min(c.upper), c.lower.max(c.upper));
            if !pairs.insert(key) {
                return Err(Error::DuplicateEdge { lower: c.lower, upper: c.upper });
            }
        }
        let edges: Vec<(usize, usize)> = covers.iter().map(|c| (c.lower - 1, c.upper - 1)).collect();
        let below = closure_below(n, &edges).map_err(|element| Error::Cycle { element })?;
        let above = transpose(&below);
        for c in &covers {
            let (a, b) = (c.lower - 1, c.upper - 1);
            if above[a] & below[b] != 0 {
                return Err(Error::RedundantEdge { lower: c.lower, upper: c.upper });
            }
        }
        if let Some(ls) = &labels {
            check_labels(ls, n)?;
            for c in &covers {
                if EdgeKind::from_labels(ls[c.lower - 1], ls[c.upper - 1]) != c.kind {
                    return Err(Error::LabelMismatch(*c));
                }
            }
        }
        let poset = LabeledPoset { n, covers, labels, below, above };
        if poset.labels.is_none() && EdgeDiagram::from_poset(&poset).has_bad_cycle() {
            return Err(Error::BadCycle);
        }
        Ok(poset)
    }

    /// Builds the labeled poset generated by the element relations
    /// `(a, b)` meaning `a < b`; redundant pairs are allowed and the edge
    /// kinds follow from `labels`.
    pub fn from_relations(
        n: usize,
        relations: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n, max: MAX_ELEMENTS });
        }
        check_labels(&labels, n)?;
        let mut edges = Vec::new();
        for (a, b) in relations {
            check_id(a, n)?;
            check_id(b, n)?;
            if a == b {
                return Err(Error::SelfLoop { lower: a, upper: b });
            }
            edges.push((a - 1, b - 1));
        }
        let below = closure_below(n, &edges).map_err(|element| Error::Cycle { element })?;
        Ok(Self::from_closure(below, labels))
    }

    /// Builds a poset from a transitively closed strict-below table
    /// (0-based bit rows) and a labeling.
    pub(crate) fn from_closure(below: Vec<Mask>, labels: Vec<usize>) -> Self {
        let n = below.len();
        let above = transpose(&below);
        let mut covers = Vec::new();
        for b in 0..n {
            for a in bits(below[b]) {
                if above[a] & below[b] == 0 {
                    covers.push(Cover::new(a + 1, b + 1, EdgeKind::from_labels(labels[a], labels[b])));
                }
            }
        }
        covers.sort();
        LabeledPoset { n, covers, labels: Some(labels), below, above }
    }

    /// Naturally labeled poset (identity labels) from element relations.
    pub fn natural(n: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let p = Self::from_relations(n, relations, (1..=n).collect())?;
        if !p.is_naturally_labeled() {
            return Err(Error::InvalidLabels { n });
        }
        Ok(p)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_closure(vec![0; n], (1..=n).collect())
    }

    /// The chain `1 ≺ 2 ≺ … ≺ n` with every edge of the given kind.
    pub fn chain(n: usize, kind: EdgeKind) -> Self {
        let covers = (1..n).map(|i| Cover::new(i, i + 1, kind));
        Self::new(n, covers, None).expect("a chain is always a valid poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, element: usize) -> Option<usize> {
        self.labels.as_ref().map(|ls| ls[element - 1])
    }

    pub fn element_with_label(&self, label: usize) -> Result<usize> {
        let ls = self.labels.as_ref().ok_or(Error::MissingLabels)?;
        ls.iter().position(|&l| l == label).map(|i| i + 1).ok_or(Error::UnknownLabel(label))
    }

    /// Drops the labeling, keeping only the edge kinds.
    pub fn without_labels(&self) -> Self {
        LabeledPoset { labels: None, ..self.clone() }
    }

    /// Replaces the labeling; fails if it disagrees with an edge kind.
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<Self> {
        Self::new(self.n, self.covers.iter().copied(), Some(labels))
    }

    pub(crate) fn below_masks(&self) -> &[Mask] {
        &self.below
    }

    /// `a ≤_P b`.
    pub fn leq(&self, a: usize, b: usize) -> Result<bool> {
        check_id(a, self.n)?;
        check_id(b, self.n)?;
        Ok(a == b || self.below[b - 1] & bit(a - 1) != 0)
    }

    /// `a <_P b`.
    pub fn lt(&self, a: usize, b: usize) -> Result<bool> {
        check_id(a, self.n)?;
        check_id(b, self.n)?;
        Ok(self.below[b - 1] & bit(a - 1) != 0)
    }

    pub fn comparable(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.leq(a, b)? || self.leq(b, a)?)
    }

    /// Kind of the cover `a ≺ b`, if it is one.
    pub fn cover_kind(&self, a: usize, b: usize) -> Option<EdgeKind> {
        self.covers.iter().find(|c| c.lower == a && c.upper == b).map(|c| c.kind)
    }

    pub fn lower_covers(&self, element: usize) -> impl Iterator<Item = &Cover> + '_ {
        self.covers.iter().filter(move |c| c.upper == element)
    }

    pub fn upper_covers(&self, element: usize) -> impl Iterator<Item = &Cover> + '_ {
        self.covers.iter().filter(move |c| c.lower == element)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (1..=self.n).filter(|&e| self.below[e - 1] == 0).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (1..=self.n).filter(|&e| self.above[e - 1] == 0).collect()
    }

    /// All covers weak.
    pub fn is_naturally_labeled(&self) -> bool {
        self.covers.iter().all(|c| c.kind == EdgeKind::Weak)
    }

    pub fn is_all_strict(&self) -> bool {
        self.covers.iter().all(|c| c.kind == EdgeKind::Strict)
    }

    /// Elements in an order compatible with the poset (smallest id first
    /// among the available ones).
    pub fn topological_order(&self) -> Vec<usize> {
        let mut placed: Mask = 0;
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let next = (0..self.n).find(|&i| placed & bit(i) == 0 && self.below[i] & !placed == 0).expect("acyclic");
            placed |= bit(next);
            order.push(next + 1);
        }
        order
    }

    /// The less-than set `{(ω(a), ω(b)) : a <_P b}`.
    pub fn less_than_set(&self) -> Result<LessThanSet> {
        let ls = self.labels.as_ref().ok_or(Error::MissingLabels)?;
        let mut pairs = BTreeSet::new();
        for b in 0..self.n {
            for a in bits(self.below[b]) {
                pairs.insert((ls[a], ls[b]));
            }
        }
        Ok(LessThanSet { pairs })
    }

    /// A labeling reproducing the edge kinds: the natural labeling of the
    /// order generated by orienting weak edges up and strict edges down.
    pub fn realize_labeling(&self) -> Result<Self> {
        let labels = EdgeDiagram::from_poset(self).realize_labeling()?;
        Ok(LabeledPoset { labels: Some(labels), ..self.clone() })
    }

    /// `self` if it already carries labels, otherwise a realized copy.
    pub fn ensure_labels(&self) -> Self {
        if self.labels.is_some() {
            self.clone()
        } else {
            self.realize_labeling().expect("posets without labels are checked for bad cycles on construction")
        }
    }

    /// Maximum strict-edge count, weak-edge count and length (edge count)
    /// over all maximal chains.
    pub fn maximal_chain_edge_stats(&self) -> ChainStats {
        let mut best = vec![(0usize, 0usize, 0usize); self.n];
        for e in self.topological_order() {
            let mut cur = (0, 0, 0);
            for c in self.lower_covers(e) {
                let (s, w, l) = best[c.lower - 1];
                let (ds, dw) = match c.kind {
                    EdgeKind::Strict => (1, 0),
                    EdgeKind::Weak => (0, 1),
                };
                cur.0 = cur.0.max(s + ds);
                cur.1 = cur.1.max(w + dw);
                cur.2 = cur.2.max(l + 1);
            }
            best[e - 1] = cur;
        }
        let mut stats = ChainStats::default();
        for e in self.maximal_elements() {
            let (s, w, l) = best[e - 1];
            stats.max_strict = stats.max_strict.max(s);
            stats.max_weak = stats.max_weak.max(w);
            stats.max_length = stats.max_length.max(l);
        }
        stats
    }

    /// The covers of the subposet induced on `elements`, renumbered
    /// `1..=k` in the given order.
    pub fn induced(&self, elements: &[usize]) -> Result<Self> {
        let k = elements.len();
        let mut below = vec![0 as Mask; k];
        for (j, &b) in elements.iter().enumerate() {
            check_id(b, self.n)?;
            for (i, &a) in elements.iter().enumerate() {
                if self.below[b - 1] & bit(a - 1) != 0 {
                    below[j] |= bit(i);
                }
            }
        }
        let ls = self.ensure_labels();
        let ls = ls.labels.as_ref().unwrap();
        let mut sorted: Vec<usize> = elements.iter().map(|&e| ls[e - 1]).collect();
        sorted.sort_unstable();
        let labels = elements.iter().map(|&e| sorted.binary_search(&ls[e - 1]).unwrap() + 1).collect();
        Ok(Self::from_closure(below, labels))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChainStats {
    pub max_strict: usize,
    pub max_weak: usize,
    pub max_length: usize,
}

/// A Hasse diagram possibly extended by redundant edges, each tagged
/// strict or weak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDiagram {
    pub n: usize,
    pub edges: Vec<Cover>,
}

impl EdgeDiagram {
    pub fn from_poset(p: &LabeledPoset) -> Self {
        EdgeDiagram { n: p.n, edges: p.covers.clone() }
    }

    pub fn with_edge(mut self, edge: Cover) -> Self {
        self.edges.push(edge);
        self
    }

    // Weak edges point up, strict edges point down.
    fn orientation(&self) -> Vec<Mask> {
        let mut out = vec![0 as Mask; self.n];
        for c in &self.edges {
            let (a, b) = (c.lower - 1, c.upper - 1);
            match c.kind {
                EdgeKind::Weak => out[a] |= bit(b),
                EdgeKind::Strict => out[b] |= bit(a),
            }
        }
        out
    }

    /// True iff the oriented digraph has a directed cycle.
    pub fn has_bad_cycle(&self) -> bool {
        self.topological_labels().is_none()
    }

    fn topological_labels(&self) -> Option<Vec<usize>> {
        let out = self.orientation();
        let mut indeg = vec![0usize; self.n];
        for m in &out {
            for j in bits(*m) {
                indeg[j] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut labels = vec![0usize; self.n];
        let mut next = 1;
        while let Some(Reverse(v)) = heap.pop() {
            labels[v] = next;
            next += 1;
            for w in bits(out[v]) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        (next == self.n + 1).then_some(labels)
    }

    /// A labeling consistent with every edge of the diagram, or
    /// [`Error::BadCycle`].
    pub fn realize_labeling(&self) -> Result<Vec<usize>> {
        self.topological_labels().ok_or(Error::BadCycle)
    }
}

/// True iff the strict/weak assignment of `diagram` has a bad cycle.
pub fn has_bad_cycle(diagram: &EdgeDiagram) -> bool {
    diagram.has_bad_cycle()
}

type Signature = ([usize; 4], u32, u32);

fn signature(x: &LabeledPoset, e: usize) -> Signature {
    let mut s = [0usize; 4];
    for c in x.lower_covers(e) {
        s[c.kind as usize] += 1;
    }
    for c in x.upper_covers(e) {
        s[2 + c.kind as usize] += 1;
    }
    (s, x.below[e - 1].count_ones(), x.above[e - 1].count_ones())
}

/// Brute-force test for an isomorphism preserving covers and edge kinds
/// (labels are ignored).
pub fn is_isomorphic(p: &LabeledPoset, q: &LabeledPoset) -> Result<bool> {
    const CAP: usize = 10;
    if p.n != q.n || p.covers.len() != q.covers.len() {
        return Ok(false);
    }
    if p.n > CAP {
        return Err(Error::SizeCap { what: "isomorphism search", n: p.n, cap: CAP });
    }
    let sp: Vec<Signature> = (1..=p.n).map(|e| signature(p, e)).collect();
    let sq: Vec<Signature> = (1..=q.n).map(|e| signature(q, e)).collect();
    let (mut a, mut b) = (sp.clone(), sq.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }

    struct Search<'a> {
        p: &'a LabeledPoset,
        q: &'a LabeledPoset,
        sp: Vec<Signature>,
        sq: Vec<Signature>,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, i: usize, cand: usize) -> bool {
            (1..i).all(|j| {
                let x = self.map[j];
                self.p.cover_kind(j, i) == self.q.cover_kind(x, cand)
                    && self.p.cover_kind(i, j) == self.q.cover_kind(cand, x)
                    && self.p.lt(i, j).unwrap() == self.q.lt(cand, x).unwrap()
                    && self.p.lt(j, i).unwrap() == self.q.lt(x, cand).unwrap()
            })
        }

        fn extend(&mut self, i: usize) -> bool {
            if i > self.p.n {
                return true;
            }
            for cand in 1..=self.q.n {
                if self.used[cand] || self.sp[i - 1] != self.sq[cand - 1] || !self.consistent(i, cand) {
                    continue;
                }
                self.map[i] = cand;
                self.used[cand] = true;
                if self.extend(i + 1) {
                    return true;
                }
                self.used[cand] = false;
            }
            false
        }
    }

    let mut search = Search { p, q, sp, sq, map: vec![0; p.n + 1], used: vec![false; q.n + 1] };
    Ok(search.extend(1))
}
