//! Structural invariants that give necessary conditions for comparisons:
//! the bar and star involutions, jump sequences, Greene shapes and
//! convex-subposet unions.

use std::fmt;

use crate::enumerator::{enumerator_m_with, EnumConfig};
use crate::error::{Error, Result};
use crate::poset::{bit, bits, Cover, EdgeKind, LabeledPoset, Mask};
use crate::qsym::{Composition, QSymExpr};

/// Swaps strict and weak edges; labels `ω` become `n + 1 - ω`.
pub fn bar(p: &LabeledPoset) -> LabeledPoset {
    let n = p.len();
    let covers = p.covers().iter().map(|c| Cover::new(c.lower, c.upper, c.kind.flip()));
    let labels = p.labels().map(|ls| ls.iter().map(|&l| n + 1 - l).collect());
    LabeledPoset::new(n, covers, labels).expect("bar of a valid poset is valid")
}

/// Order dual with edge kinds preserved; element ids are kept and labels
/// `ω` become `n + 1 - ω`.
pub fn star(p: &LabeledPoset) -> LabeledPoset {
    let n = p.len();
    let covers = p.covers().iter().map(|c| Cover::new(c.upper, c.lower, c.kind));
    let labels = p.labels().map(|ls| ls.iter().map(|&l| n + 1 - l).collect());
    LabeledPoset::new(n, covers, labels).expect("star of a valid poset is valid")
}

/// Per-element jump: the maximum number of strict edges on a saturated
/// chain from the element down to a minimal element.
pub fn jumps(p: &LabeledPoset) -> Vec<usize> {
    let mut jump = vec![0usize; p.len()];
    for e in p.topological_order() {
        jump[e - 1] =
            p.lower_covers(e).map(|c| jump[c.lower - 1] + usize::from(c.kind == EdgeKind::Strict)).max().unwrap_or(0);
    }
    jump
}

/// `(j_0, …, j_k)` where `j_i` counts the elements of jump `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JumpSequence {
    pub counts: Vec<usize>,
}

impl JumpSequence {
    /// The sequence as a composition (every entry is positive, since an
    /// element of jump `i` sits above elements of every smaller jump).
    pub fn as_composition(&self) -> Composition {
        Composition::new(self.counts.clone()).expect("jump counts are positive")
    }
}

impl fmt::Display for JumpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_composition(), f)
    }
}

pub fn jump_sequence(p: &LabeledPoset) -> JumpSequence {
    let js = jumps(p);
    let k = js.iter().copied().max().map_or(0, |m| m + 1);
    let mut counts = vec![0; k];
    for j in js {
        counts[j] += 1;
    }
    JumpSequence { counts }
}

/// Default size limit for the exhaustive Greene-shape search.
pub const GREENE_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GreeneShapes {
    pub chain_shape: Vec<usize>,
    pub antichain_shape: Vec<usize>,
}

pub fn greene_shapes(p: &LabeledPoset) -> Result<GreeneShapes> {
    greene_shapes_with_cap(p, GREENE_CAP)
}

/// Greene shapes by trying every subset: a subset is a union of `k` chains
/// iff its minimum chain cover has at most `k` chains, and a union of `k`
/// antichains iff its longest chain has at most `k` elements.
pub fn greene_shapes_with_cap(p: &LabeledPoset, cap: usize) -> Result<GreeneShapes> {
    let n = p.len();
    if n > cap {
        return Err(Error::SizeCap { what: "Greene shape search", n, cap });
    }
    let below = p.below_masks();
    // best_chain[k] = c_k, best_antichain[k] = a_k
    let mut best_chain = vec![0usize; n + 1];
    let mut best_antichain = vec![0usize; n + 1];
    for s in 0..(1u64 << n) {
        let size = s.count_ones() as usize;
        let width = min_chain_cover(below, s);
        let height = longest_chain(below, s);
        best_chain[width] = best_chain[width].max(size);
        best_antichain[height] = best_antichain[height].max(size);
    }
    for k in 1..=n {
        best_chain[k] = best_chain[k].max(best_chain[k - 1]);
        best_antichain[k] = best_antichain[k].max(best_antichain[k - 1]);
    }
    Ok(GreeneShapes { chain_shape: differences(&best_chain), antichain_shape: differences(&best_antichain) })
}

fn differences(c: &[usize]) -> Vec<usize> {
    c.windows(2).map(|w| w[1] - w[0]).filter(|&d| d > 0).collect()
}

// |S| minus a maximum matching in the comparability graph a -> b, a < b.
fn min_chain_cover(below: &[Mask], s: Mask) -> usize {
    fn augment(u: usize, s: Mask, above: &dyn Fn(usize) -> Mask, seen: &mut Mask, mate: &mut [Option<usize>]) -> bool {
        for v in bits(above(u) & s) {
            if *seen & bit(v) != 0 {
                continue;
            }
            *seen |= bit(v);
            if mate[v].is_none() || augment(mate[v].unwrap(), s, above, seen, mate) {
                mate[v] = Some(u);
                return true;
            }
        }
        false
    }
    let n = below.len();
    let above = |u: usize| -> Mask { (0..n).filter(|&v| below[v] & bit(u) != 0).fold(0, |m, v| m | bit(v)) };
    let mut mate = vec![None; n];
    let mut matched = 0;
    for u in bits(s) {
        let mut seen = 0;
        if augment(u, s, &above, &mut seen, &mut mate) {
            matched += 1;
        }
    }
    s.count_ones() as usize - matched
}

// Number of elements in a longest chain inside S.
fn longest_chain(below: &[Mask], s: Mask) -> usize {
    let mut len = vec![0usize; below.len()];
    let mut best = 0;
    // ids are not necessarily a linear extension, so settle elements in
    // order of how many elements lie below them
    let mut order: Vec<usize> = bits(s).collect();
    order.sort_by_key(|&e| below[e].count_ones());
    for e in order {
        len[e] = 1 + bits(below[e] & s).map(|a| len[a]).max().unwrap_or(0);
        best = best.max(len[e]);
    }
    best
}

/// Conjugate (transpose) of a partition.
pub fn conjugate(partition: &[usize]) -> Vec<usize> {
    let first = partition.first().copied().unwrap_or(0);
    (1..=first).map(|i| partition.iter().filter(|&&p| p >= i).count()).collect()
}

/// Dominance of partitions (or compositions) of possibly different
/// lengths, comparing prefix sums with zero padding.
pub fn partition_dominated(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// For each `i = 1..=n`, the largest sum of `i` parts of a composition in
/// the support of `m`.
pub fn convex_union_profile(m: &QSymExpr) -> Vec<usize> {
    let n = m.degree();
    (1..=n).map(|i| m.support().iter().map(|a| a.largest_parts_sum(i)).max().unwrap_or(0)).collect()
}

/// Maximum size of a union of `i` weak convex subposets, read off the
/// M-support.
pub fn max_weak_convex_union(p: &LabeledPoset, i: usize) -> Result<usize> {
    max_weak_convex_union_with(p, i, &EnumConfig::default())
}

pub fn max_weak_convex_union_with(p: &LabeledPoset, i: usize, cfg: &EnumConfig) -> Result<usize> {
    let m = enumerator_m_with(p, cfg)?;
    Ok(m.support().iter().map(|a| a.largest_parts_sum(i)).max().unwrap_or(0))
}

/// Maximum size of a union of `i` strict convex subposets (weak ones of the
/// bar poset).
pub fn max_strict_convex_union(p: &LabeledPoset, i: usize) -> Result<usize> {
    max_weak_convex_union(&bar(p), i)
}

/// Brute-force check that `s` (0-based mask) is convex in `p`.
pub fn is_convex(p: &LabeledPoset, s: Mask) -> bool {
    let below = p.below_masks();
    (0..p.len()).all(|y| {
        s & bit(y) != 0 || {
            let lower = below[y] & s;
            let upper = (0..p.len()).filter(|&z| s & bit(z) != 0 && below[z] & bit(y) != 0).count();
            lower == 0 || upper == 0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_isomorphic;

    // a1 ≺ a3 weak, a2 ≺ a3 strict, a3 ≺ a4 weak
    fn mixed_poset() -> LabeledPoset {
        LabeledPoset::new(4, [Cover::weak(1, 3), Cover::strict(2, 3), Cover::weak(3, 4)], None).unwrap()
    }

    #[test]
    fn involutions_of_mixed_poset() {
        let p = mixed_poset();
        let b = bar(&p);
        assert_eq!(b.covers(), &[Cover::strict(1, 3), Cover::weak(2, 3), Cover::strict(3, 4)]);
        let s = star(&p);
        let expected = LabeledPoset::new(4, [Cover::weak(1, 2), Cover::weak(2, 4), Cover::strict(2, 3)], None).unwrap();
        assert!(is_isomorphic(&s, &expected).unwrap());
        assert_eq!(bar(&bar(&p)), p);
        assert_eq!(star(&star(&p)), p);
        assert_eq!(bar(&star(&p)), star(&bar(&p)));
        let labeled = p.realize_labeling().unwrap();
        assert_eq!(bar(&star(&labeled)), star(&bar(&labeled)));
        assert!(bar(&LabeledPoset::chain(3, EdgeKind::Weak)).is_all_strict());
    }

    #[test]
    fn jump_sequences() {
        let nat = LabeledPoset::natural(4, [(1, 2), (1, 3)]).unwrap();
        assert_eq!(jump_sequence(&nat).counts, vec![4]);
        let s = LabeledPoset::chain(3, EdgeKind::Strict);
        assert_eq!(jump_sequence(&s).counts, vec![1, 1, 1]);
        assert_eq!(jump_sequence(&LabeledPoset::antichain(0)).counts, Vec::<usize>::new());
    }

    #[test]
    fn greene_shapes_small() {
        let c = greene_shapes(&LabeledPoset::chain(4, EdgeKind::Weak)).unwrap();
        assert_eq!((c.chain_shape, c.antichain_shape), (vec![4], vec![1, 1, 1, 1]));
        let a = greene_shapes(&LabeledPoset::antichain(4)).unwrap();
        assert_eq!((a.chain_shape, a.antichain_shape), (vec![1, 1, 1, 1], vec![4]));
        // 1<2<4<6, 3<4, 2<5
        let p = LabeledPoset::natural(6, [(1, 2), (2, 4), (4, 6), (3, 4), (2, 5)]).unwrap();
        let g = greene_shapes(&p).unwrap();
        assert_eq!(g.chain_shape, vec![4, 2]);
        assert_eq!(g.antichain_shape, vec![2, 2, 1, 1]);
        assert_eq!(conjugate(&g.chain_shape), g.antichain_shape);
        assert!(greene_shapes_with_cap(&p, 5).is_err());
    }

    #[test]
    fn conjugates_and_dominance() {
        assert_eq!(conjugate(&[4, 2]), vec![2, 2, 1, 1]);
        assert_eq!(conjugate(&[]), Vec::<usize>::new());
        assert!(partition_dominated(&[2, 2], &[3, 1]));
        assert!(!partition_dominated(&[3, 1], &[2, 2]));
        assert!(partition_dominated(&[1, 1, 1], &[3]));
    }

    #[test]
    fn convex_unions() {
        // the worked example
        let p =
            LabeledPoset::new(4, [Cover::weak(1, 3), Cover::weak(3, 4), Cover::strict(3, 2)], Some(vec![1, 2, 3, 4]))
                .unwrap();
        assert_eq!(max_weak_convex_union(&p, 1).unwrap(), 3);
        let nat = LabeledPoset::natural(5, [(1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(max_weak_convex_union(&nat, 1).unwrap(), 5);
        let s = bar(&nat);
        assert_eq!(max_weak_convex_union(&s, 5).unwrap(), 5);
        // element 5 is isolated, so {3,4,5} is the largest antichain
        assert_eq!(max_strict_convex_union(&nat, 1).unwrap(), 3);
        assert!(is_convex(&nat, 0b00111));
        assert!(!is_convex(&nat, 0b00101));
    }
}
