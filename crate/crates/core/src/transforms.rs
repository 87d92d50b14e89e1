//! Operations on Hasse diagrams: redundancy-before-deletion (plain and
//! generalized), cover deletion, poset assembly and splitting a poset along
//! an incomparable pair.

use crate::error::{Error, Result};
use crate::poset::{bit, bits, Cover, EdgeDiagram, EdgeKind, LabeledPoset, LessThanSet, Mask};

fn same_size(p: &LabeledPoset, q: &LabeledPoset) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch { left: p.len(), right: q.len() });
    }
    Ok(())
}

/// True iff `q` is obtained from `p` by adding redundant edges and deleting
/// edges, equivalently `S_<(p) ⊇ S_<(q)`, equivalently `L(p) ⊆ L(q)`.
pub fn is_rbd_reachable(p: &LabeledPoset, q: &LabeledPoset) -> Result<bool> {
    same_size(p, q)?;
    Ok(p.less_than_set()?.is_superset(&q.less_than_set()?))
}

/// Evidence for an RBD verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RbdCertificate {
    /// Label pairs whose removal, in order, turns `S_<(p)` into `S_<(q)`;
    /// each is a cover relation at the moment it is removed.
    Reachable { deletions: Vec<(usize, usize)> },
    /// A relation of `q` that `p` lacks.
    Unreachable { missing: (usize, usize) },
}

/// Decides RBD reachability and returns a deletion sequence or a missing
/// relation. Among the deletable covers the largest label pair goes first.
pub fn rbd_certificate(p: &LabeledPoset, q: &LabeledPoset) -> Result<RbdCertificate> {
    same_size(p, q)?;
    let sp = p.less_than_set()?;
    let sq = q.less_than_set()?;
    if let Some(missing) = sp.first_missing(&sq) {
        return Ok(RbdCertificate::Unreachable { missing });
    }
    let mut current = p.clone();
    let mut deletions = Vec::new();
    loop {
        let next = current
            .covers()
            .iter()
            .map(|c| (current.label(c.lower).unwrap(), current.label(c.upper).unwrap()))
            .filter(|&(a, b)| !sq.contains(a, b))
            .max();
        let Some((a, b)) = next else { break };
        current = delete_cover(&current, a, b)?;
        deletions.push((a, b));
    }
    debug_assert_eq!(current.less_than_set()?, sq);
    Ok(RbdCertificate::Reachable { deletions })
}

/// Removes the relation `a < b` (given by labels) from the less-than set.
/// This yields a poset exactly when `a < b` is a cover relation.
pub fn delete_cover(p: &LabeledPoset, a: usize, b: usize) -> Result<LabeledPoset> {
    let ea = p.element_with_label(a)?;
    let eb = p.element_with_label(b)?;
    if !p.lt(ea, eb)? {
        return Err(Error::NotARelation { lower: a, upper: b });
    }
    if p.cover_kind(ea, eb).is_none() {
        return Err(Error::NotACover { lower: a, upper: b });
    }
    let mut below = p.below_masks().to_vec();
    below[eb - 1] &= !bit(ea - 1);
    Ok(LabeledPoset::from_closure(below, p.labels().unwrap().to_vec()))
}

/// Searches the consistent relabelings `ω'` of `p` (labelings with the same
/// strict and weak edges) for one with `S_<(p, ω') ⊇ S_<(q)`. Returns the
/// relabeling, indexed by element, or `None`.
pub fn is_grbd_reachable(p: &LabeledPoset, q: &LabeledPoset) -> Result<Option<Vec<usize>>> {
    is_grbd_reachable_with_cap(p, q, RELABELING_CAP)
}

/// Default size limit for the consistent-relabeling search.
pub const RELABELING_CAP: usize = 10;

pub fn is_grbd_reachable_with_cap(p: &LabeledPoset, q: &LabeledPoset, cap: usize) -> Result<Option<Vec<usize>>> {
    same_size(p, q)?;
    let n = p.len();
    if n > cap {
        return Err(Error::SizeCap { what: "consistent relabeling search", n, cap });
    }
    // A consistent labeling assigns 1, 2, … along a topological order of the
    // digraph with weak edges up and strict edges down.
    let d = EdgeDiagram::from_poset(p);
    if d.has_bad_cycle() {
        return Err(Error::BadCycle);
    }
    let mut must_precede = vec![0 as Mask; n];
    for c in &d.edges {
        let (lo, hi) = (c.lower - 1, c.upper - 1);
        match c.kind {
            EdgeKind::Weak => must_precede[hi] |= bit(lo),
            EdgeKind::Strict => must_precede[lo] |= bit(hi),
        }
    }
    let q = q.ensure_labels();
    let sq = q.less_than_set()?;
    // required[l - 1]: labels that must be below label l in p
    let mut required_below = vec![0 as Mask; n];
    let mut required_above = vec![0 as Mask; n];
    for (a, b) in sq.iter() {
        required_below[b - 1] |= bit(a - 1);
        required_above[a - 1] |= bit(b - 1);
    }
    let mut search = Relabel {
        n,
        below: p.below_masks(),
        must_precede,
        required_below,
        required_above,
        element_of_label: Vec::with_capacity(n),
        placed: 0,
    };
    Ok(search.run().then(|| {
        let mut labels = vec![0; n];
        for (l, &e) in search.element_of_label.iter().enumerate() {
            labels[e] = l + 1;
        }
        labels
    }))
}

struct Relabel<'a> {
    n: usize,
    below: &'a [Mask],
    must_precede: Vec<Mask>,
    required_below: Vec<Mask>,
    required_above: Vec<Mask>,
    element_of_label: Vec<usize>,
    placed: Mask,
}

impl Relabel<'_> {
    // Can element `e` take the next label given the relations q demands
    // between it and the already labeled elements?
    fn fits(&self, e: usize) -> bool {
        let l = self.element_of_label.len();
        // pairs involving labels not yet assigned are checked when the
        // other endpoint is placed
        let placed = self.placed_labels();
        bits(self.required_below[l] & placed).all(|a| self.below[e] & bit(self.element_of_label[a]) != 0)
            && bits(self.required_above[l] & placed).all(|b| self.below[self.element_of_label[b]] & bit(e) != 0)
    }

    fn placed_labels(&self) -> Mask {
        crate::poset::full_mask(self.element_of_label.len())
    }

    fn run(&mut self) -> bool {
        if self.element_of_label.len() == self.n {
            return true;
        }
        for e in 0..self.n {
            if self.placed & bit(e) != 0 || self.must_precede[e] & !self.placed != 0 || !self.fits(e) {
                continue;
            }
            self.placed |= bit(e);
            self.element_of_label.push(e);
            if self.run() {
                return true;
            }
            self.element_of_label.pop();
            self.placed &= !bit(e);
        }
        false
    }
}

/// A framework poset and one component per framework label: component `k`
/// replaces the framework element labeled `k + 1`.
#[derive(Clone, Debug)]
pub struct AssemblyInput {
    pub framework: LabeledPoset,
    pub components: Vec<LabeledPoset>,
}

/// An assembled poset with its inherited labeling. Element `e` carries the
/// pair `pairs[e - 1] = (framework label, component label)`; elements are
/// numbered by the lexicographic rank of their pairs, which is also their
/// integer label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssembledPoset {
    pub poset: LabeledPoset,
    pub pairs: Vec<(usize, usize)>,
}

impl AssembledPoset {
    /// Converts an extension given by integer labels back to pairs.
    pub fn as_pairs(&self, extension: &[usize]) -> Vec<(usize, usize)> {
        extension.iter().map(|&l| self.pairs[l - 1]).collect()
    }
}

pub fn assemble(input: &AssemblyInput) -> Result<AssembledPoset> {
    let framework = input.framework.ensure_labels();
    let m = framework.len();
    if input.components.len() != m {
        return Err(Error::ComponentCount { expected: m, found: input.components.len() });
    }
    let comps: Vec<LabeledPoset> = input.components.iter().map(LabeledPoset::ensure_labels).collect();
    let total: usize = comps.iter().map(LabeledPoset::len).sum();
    if total > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooManyElements { n: total, max: crate::poset::MAX_ELEMENTS });
    }
    let mut pairs = Vec::with_capacity(total);
    let mut offset = vec![0; m + 1];
    for (k, c) in comps.iter().enumerate() {
        offset[k + 1] = offset[k] + c.len();
        pairs.extend((1..=c.len()).map(|l| (k + 1, l)));
    }
    let fw_less = framework.less_than_set()?;
    let mut below = vec![0 as Mask; total];
    for (idx, &(k, l)) in pairs.iter().enumerate() {
        for (jdx, &(j, a)) in pairs.iter().enumerate() {
            let less = if j != k {
                fw_less.contains(j, k)
            } else {
                let c = &comps[k - 1];
                c.lt(c.element_with_label(a)?, c.element_with_label(l)?)?
            };
            if less {
                below[idx] |= bit(jdx);
            }
        }
    }
    let poset = LabeledPoset::from_closure(below, (1..=total).collect());
    Ok(AssembledPoset { poset, pairs })
}

/// One side of [`split_on_incomparable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitBranch {
    Feasible(LabeledPoset),
    /// The added edge closes a bad cycle.
    Infeasible,
}

impl SplitBranch {
    pub fn poset(&self) -> Option<&LabeledPoset> {
        match self {
            SplitBranch::Feasible(p) => Some(p),
            SplitBranch::Infeasible => None,
        }
    }
}

/// The (P,ω)-partitions of `p` split by comparing the values at the
/// incomparable elements `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// `f(x) ≥ f(y)`: a weak edge `y ≺ x` is added.
    pub ge: SplitBranch,
    /// `f(x) < f(y)`: a strict edge `x ≺ y` is added.
    pub lt: SplitBranch,
}

pub fn split_on_incomparable(p: &LabeledPoset, x: usize, y: usize) -> Result<Split> {
    if p.comparable(x, y)? {
        return Err(Error::NotIncomparable { x, y });
    }
    Ok(Split { ge: branch(p, Cover::weak(y, x))?, lt: branch(p, Cover::strict(x, y))? })
}

fn branch(p: &LabeledPoset, edge: Cover) -> Result<SplitBranch> {
    // Old covers stay in the diagram even when the new edge makes them
    // redundant, so their kinds still constrain the labeling.
    let d = EdgeDiagram::from_poset(p).with_edge(edge);
    let labels = match d.realize_labeling() {
        Ok(l) => l,
        Err(Error::BadCycle) => return Ok(SplitBranch::Infeasible),
        Err(e) => return Err(e),
    };
    let relations = d.edges.iter().map(|c| (c.lower, c.upper));
    Ok(SplitBranch::Feasible(LabeledPoset::from_relations(p.len(), relations, labels)?))
}

/// Less-than set of `p` under an explicit relabeling.
pub fn less_than_set_under(p: &LabeledPoset, labels: &[usize]) -> Result<LessThanSet> {
    p.with_labels(labels.to_vec())?.less_than_set()
}
