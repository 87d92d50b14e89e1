//! Linear extensions and the two expansions of the (P,ω)-partition
//! enumerator.
//!
//! The F expansion is computed from linear extensions (a DP over downsets
//! that tracks descent sets), the M expansion by counting (P,ω)-partitions
//! level by level. The two routes share no code beyond the poset itself,
//! so comparing them through the F→M change of basis is a strong check.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{bit, bits, full_mask, EdgeKind, LabeledPoset, Mask};
use crate::qsym::{descent_composition, Basis, Composition, QSymExpr};

/// Size limits for the exact expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub f_cap: usize,
    pub m_cap: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { f_cap: 14, m_cap: 12 }
    }
}

/// Streams the linear extensions of a poset as label sequences, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct LinearExtensions {
    n: usize,
    below: Vec<Mask>,
    // element (0-based) carrying label i+1
    by_label: Vec<usize>,
    prefix: Vec<usize>,
    placed: Mask,
    started: bool,
    done: bool,
}

impl LinearExtensions {
    pub fn new(p: &LabeledPoset) -> Self {
        let p = p.ensure_labels();
        let labels = p.labels().unwrap();
        let mut by_label = vec![0; labels.len()];
        for (e, &l) in labels.iter().enumerate() {
            by_label[l - 1] = e;
        }
        LinearExtensions {
            n: p.len(),
            below: p.below_masks().to_vec(),
            by_label,
            prefix: Vec::with_capacity(p.len()),
            placed: 0,
            started: false,
            done: false,
        }
    }

    // Smallest label above `after` whose element can be placed next.
    fn next_available(&self, after: usize) -> Option<usize> {
        (after..self.n).find(|&l| {
            let e = self.by_label[l];
            self.placed & bit(e) == 0 && self.below[e] & !self.placed == 0
        })
    }

    fn push(&mut self, l: usize) {
        self.placed |= bit(self.by_label[l]);
        self.prefix.push(l);
    }

    fn complete(&mut self) {
        while self.prefix.len() < self.n {
            let l = self.next_available(0).expect("a poset always has a minimal element");
            self.push(l);
        }
    }
}

impl Iterator for LinearExtensions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete();
        } else {
            loop {
                let Some(l) = self.prefix.pop() else {
                    self.done = true;
                    return None;
                };
                self.placed &= !bit(self.by_label[l]);
                if let Some(next) = self.next_available(l + 1) {
                    self.push(next);
                    self.complete();
                    break;
                }
            }
        }
        Some(self.prefix.iter().map(|&l| l + 1).collect())
    }
}

/// All linear extensions of `p` as permutations of its labels (realizing a
/// labeling first if `p` has none).
pub fn linear_extensions(p: &LabeledPoset) -> LinearExtensions {
    LinearExtensions::new(p)
}

/// `|L(P,ω)|` by a DP over downsets.
pub fn count_linear_extensions(p: &LabeledPoset) -> BigUint {
    let n = p.len();
    let below = p.below_masks();
    let mut layer: HashMap<Mask, BigUint> = HashMap::from([(0, BigUint::one())]);
    for _ in 0..n {
        let mut next: HashMap<Mask, BigUint> = HashMap::with_capacity(layer.len());
        for (d, c) in &layer {
            for e in bits(full_mask(n) & !d) {
                if below[e] & !d == 0 {
                    *next.entry(d | bit(e)).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        layer = next;
    }
    layer.into_values().next().unwrap_or_else(BigUint::one)
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { what, n, cap })
    } else {
        Ok(())
    }
}

fn add_count(slot: &mut u128, c: u128) -> Result<()> {
    *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
    Ok(())
}

fn expr_from_masks(basis: Basis, n: usize, counts: HashMap<Mask, u128>) -> QSymExpr {
    let mut e = QSymExpr::zero(basis, n);
    for (m, c) in counts {
        e.add_term(Composition::from_descent_mask(m, n), BigInt::from(c)).expect("descent masks stay inside [n-1]");
    }
    e
}

/// `K_{(P,ω)}` in the F basis: one `F_{Des(π)}` per linear extension `π`.
pub fn enumerator_f(p: &LabeledPoset) -> Result<QSymExpr> {
    enumerator_f_with(p, &EnumConfig::default())
}

pub fn enumerator_f_with(p: &LabeledPoset, cfg: &EnumConfig) -> Result<QSymExpr> {
    let n = p.len();
    check_cap("F-expansion", n, cfg.f_cap)?;
    let p = p.ensure_labels();
    let labels = p.labels().unwrap();
    let below = p.below_masks();
    if n == 0 {
        return QSymExpr::from_terms(Basis::F, 0, [(Composition::default(), 1)]);
    }

    // (downset, label of the last placed element) -> descent mask -> count
    type Layer = HashMap<(Mask, usize), HashMap<Mask, u128>>;
    let mut layer: Layer = HashMap::new();
    for e in (0..n).filter(|&e| below[e] == 0) {
        layer.insert((bit(e), labels[e]), HashMap::from([(0, 1)]));
    }
    for placed in 1..n {
        let mut next: Layer = HashMap::with_capacity(layer.len());
        for ((d, last), descents) in &layer {
            for e in bits(full_mask(n) & !d) {
                if below[e] & !d != 0 {
                    continue;
                }
                let extra = if *last > labels[e] { bit(placed - 1) } else { 0 };
                let slot = next.entry((d | bit(e), labels[e])).or_default();
                for (m, c) in descents {
                    add_count(slot.entry(m | extra).or_insert(0), *c)?;
                }
            }
        }
        layer = next;
    }
    let mut total: HashMap<Mask, u128> = HashMap::new();
    for descents in layer.into_values() {
        for (m, c) in descents {
            add_count(total.entry(m).or_insert(0), c)?;
        }
    }
    Ok(expr_from_masks(Basis::F, n, total))
}

/// The F expansion accumulated directly from the streamed linear extensions.
/// Exponential in `n`; used as a cross-check and for small inputs.
pub fn enumerator_f_by_extensions(p: &LabeledPoset) -> Result<QSymExpr> {
    let n = p.len();
    let mut e = QSymExpr::zero(Basis::F, n);
    for ext in linear_extensions(p) {
        e.add_term(descent_composition(&ext)?, BigInt::one())?;
    }
    Ok(e)
}

/// `K_{(P,ω)}` in the M basis: the coefficient of `M_α` counts the
/// (P,ω)-partitions `f` onto `[k]` with `|f⁻¹(i)| = α_i`.
pub fn enumerator_m(p: &LabeledPoset) -> Result<QSymExpr> {
    enumerator_m_with(p, &EnumConfig::default())
}

pub fn enumerator_m_with(p: &LabeledPoset, cfg: &EnumConfig) -> Result<QSymExpr> {
    let n = p.len();
    check_cap("M-expansion", n, cfg.m_cap)?;
    if n == 0 {
        return QSymExpr::from_terms(Basis::M, 0, [(Composition::default(), 1)]);
    }
    let mut strict_below = vec![0 as Mask; n];
    for c in p.covers() {
        if c.kind == EdgeKind::Strict {
            strict_below[c.upper - 1] |= bit(c.lower - 1);
        }
    }
    let mut counter = LevelCounter { n, below: p.below_masks(), strict_below, memo: HashMap::new() };
    let root = counter.count(0)?;
    Ok(expr_from_masks(Basis::M, n, root))
}

// A (P,ω)-partition onto [k] is a chain of downsets ∅ ⊂ D1 ⊂ … ⊂ Dk = P
// whose levels contain no strict cover. `count(D)` returns, for the elements
// outside the downset D, the number of such chains keyed by the descent
// mask of their level-size composition.
struct LevelCounter<'a> {
    n: usize,
    below: &'a [Mask],
    strict_below: Vec<Mask>,
    memo: HashMap<Mask, HashMap<Mask, u128>>,
}

impl LevelCounter<'_> {
    fn count(&mut self, d: Mask) -> Result<HashMap<Mask, u128>> {
        let full = full_mask(self.n);
        if d == full {
            return Ok(HashMap::from([(0, 1)]));
        }
        if let Some(hit) = self.memo.get(&d) {
            return Ok(hit.clone());
        }
        let rest = full & !d;
        let remaining = rest.count_ones() as usize;
        let mut out: HashMap<Mask, u128> = HashMap::new();
        let mut x = rest;
        while x != 0 {
            if self.is_level(d, x) {
                let size = x.count_ones() as usize;
                let tail = self.count(d | x)?;
                let head = if size < remaining { bit(size - 1) } else { 0 };
                for (m, c) in tail {
                    add_count(out.entry((m << size) | head).or_insert(0), c)?;
                }
            }
            x = (x - 1) & rest;
        }
        self.memo.insert(d, out.clone());
        Ok(out)
    }

    fn is_level(&self, d: Mask, x: Mask) -> bool {
        let top = d | x;
        bits(x).all(|e| self.below[e] & !top == 0 && self.strict_below[e] & x == 0)
    }
}
