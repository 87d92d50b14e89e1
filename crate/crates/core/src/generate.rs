//! Exhaustive and random generation of labeled posets for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poset::{bit, bits, full_mask, is_isomorphic, Cover, EdgeKind, LabeledPoset, Mask};
use crate::transforms::delete_cover;

/// Largest `n` for which [`all_posets`] will run (130023 posets at 6).
pub const ALL_POSETS_CAP: usize = 6;

/// Every partial order on the labels `1..=n`, each as a poset whose element
/// `i` carries label `i`.  Since a labeled poset is determined up to
/// isomorphism by the order it induces on its labels, this lists every
/// labeled poset of size `n` exactly once — in particular every strict/weak
/// assignment on every unlabeled poset.
pub fn all_posets(n: usize) -> Result<Vec<LabeledPoset>> {
    if n > ALL_POSETS_CAP {
        return Err(Error::SizeCap { what: "exhaustive generation", n, cap: ALL_POSETS_CAP });
    }
    Ok(closures(n, false).into_iter().map(|below| LabeledPoset::from_closure(below, (1..=n).collect())).collect())
}

/// The naturally labeled posets on `1..=n`: orders in which `i < j` forces
/// `i` to precede `j` numerically.
pub fn natural_posets(n: usize) -> Result<Vec<LabeledPoset>> {
    if n > ALL_POSETS_CAP + 1 {
        return Err(Error::SizeCap { what: "exhaustive generation", n, cap: ALL_POSETS_CAP + 1 });
    }
    Ok(closures(n, true).into_iter().map(|below| LabeledPoset::from_closure(below, (1..=n).collect())).collect())
}

/// Strict-below tables of all orders on `0..n`, grown one element at a time:
/// the new element picks a down-closed set below it and an up-closed set
/// above it with everything in the first below everything in the second.
fn closures(n: usize, natural: bool) -> Vec<Vec<Mask>> {
    let mut layer: Vec<Vec<Mask>> = vec![Vec::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for below in &layer {
            let above = transpose(below);
            let ups: Vec<Mask> = if natural { vec![0] } else { closed_sets(&above, m) };
            for down in closed_sets(below, m) {
                for &up in &ups {
                    if down & up != 0 {
                        continue;
                    }
                    // transitivity needs d < u already for every d in down, u in up
                    if bits(down).any(|d| up & !above[d] != 0) {
                        continue;
                    }
                    let mut nb = below.clone();
                    for u in bits(up) {
                        nb[u] |= bit(m);
                    }
                    nb.push(down);
                    next.push(nb);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Subsets of `0..m` closed under `rel` (each member's `rel`-set included).
fn closed_sets(rel: &[Mask], m: usize) -> Vec<Mask> {
    (0..=full_mask(m)).filter(|&s| bits(s).all(|x| rel[x] & !s == 0)).collect()
}

fn transpose(below: &[Mask]) -> Vec<Mask> {
    let n = below.len();
    let mut above = vec![0; n];
    for (b, &row) in below.iter().enumerate() {
        for a in bits(row) {
            above[a] |= bit(b);
        }
    }
    above
}

/// A random labeled poset: each pair is related along a random linear
/// order with probability `density`, then closed; labels are a uniformly
/// random permutation.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<LabeledPoset> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rels.push((order[i], order[j]));
            }
        }
    }
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    LabeledPoset::from_relations(n, rels, labels)
}

/// A random naturally labeled poset: relations only go upward in label.
pub fn random_natural_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<LabeledPoset> {
    let rels: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
    LabeledPoset::natural(n, rels)
}

/// Deletes up to `steps` randomly chosen cover relations from `p`.  Each
/// deletion only enlarges the set of linear extensions, so the result `q`
/// satisfies `L(p) ⊆ L(q)`.
pub fn random_rbd_descendant<R: Rng + ?Sized>(rng: &mut R, p: &LabeledPoset, steps: usize) -> Result<LabeledPoset> {
    let mut q = p.ensure_labels();
    for _ in 0..steps {
        let Some(c) = q.covers().choose(rng).copied() else { break };
        let (a, b) = (q.label(c.lower).unwrap(), q.label(c.upper).unwrap());
        q = delete_cover(&q, a, b)?;
    }
    Ok(q)
}

/// Keeps one representative per isomorphism class (edge kinds respected).
pub fn dedupe_isomorphic(posets: Vec<LabeledPoset>) -> Result<Vec<LabeledPoset>> {
    let mut reps: Vec<(Vec<usize>, LabeledPoset)> = Vec::new();
    for p in posets {
        let key = invariant_key(&p);
        let mut seen = false;
        for (k, r) in &reps {
            if *k == key && is_isomorphic(r, &p)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push((key, p));
        }
    }
    Ok(reps.into_iter().map(|(_, p)| p).collect())
}

fn invariant_key(p: &LabeledPoset) -> Vec<usize> {
    let mut degrees: Vec<usize> = (1..=p.len())
        .map(|e| {
            let kinds = |it: &mut dyn Iterator<Item = &Cover>| {
                it.fold((0, 0), |(w, s), c| match c.kind {
                    EdgeKind::Weak => (w + 1, s),
                    EdgeKind::Strict => (w, s + 1),
                })
            };
            let (dw, ds) = kinds(&mut p.lower_covers(e));
            let (uw, us) = kinds(&mut p.upper_covers(e));
            ((dw * 16 + ds) * 16 + uw) * 16 + us
        })
        .collect();
    degrees.sort_unstable();
    degrees.insert(0, p.len());
    degrees
}
