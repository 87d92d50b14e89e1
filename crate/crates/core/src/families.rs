//! The two fully characterized classes: naturally labeled posets of chain
//! Greene shape `(k,1)`, and mixed-spine caterpillars.  Both are encoded by
//! where their non-spine elements sit relative to a spine numbered `1..k`
//! bottom-up, with `0` and `k+1` as sentinels.

use std::fmt;

use rayon::prelude::*;

use crate::enumerator::{enumerator_f_with, enumerator_m_with, EnumConfig};
use crate::error::{Error, Result};
use crate::invariants::{bar, greene_shapes};
use crate::poset::{Cover, EdgeKind, LabeledPoset};
use crate::qsym::QSymExpr;

pub type Interval = (usize, usize);

/// Largest family `f_positivity_poset` will compare pairwise.
pub const FAMILY_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    GreeneK1,
    Caterpillar,
}

/// Where a non-spine element sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalType {
    /// below the spine only: `[0,b]`
    I,
    /// above the spine only: `[a,k+1]`
    II,
    /// between two spine elements: `[a,b]`
    III,
    /// disconnected: `[0,k+1]`
    IV,
}

pub fn interval_type(k: usize, (a, b): Interval) -> IntervalType {
    match (a == 0, b == k + 1) {
        (true, true) => IntervalType::IV,
        (true, false) => IntervalType::I,
        (false, true) => IntervalType::II,
        (false, false) => IntervalType::III,
    }
}

fn interval_contains(outer: Interval, inner: Interval) -> bool {
    outer.0 <= inner.0 && inner.1 <= outer.1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalEncoding {
    pub kind: FamilyKind,
    /// spine length
    pub k: usize,
    /// a single interval for `GreeneK1`, a sorted list for `Caterpillar`
    pub intervals: Vec<Interval>,
    /// kinds of the `k-1` spine covers, bottom-up
    pub spine_kinds: Vec<EdgeKind>,
}

impl IntervalEncoding {
    pub fn greene_k1(k: usize, a: usize, b: usize) -> Result<Self> {
        let enc = IntervalEncoding {
            kind: FamilyKind::GreeneK1,
            k,
            intervals: vec![(a, b)],
            spine_kinds: vec![EdgeKind::Weak; k.saturating_sub(1)],
        };
        enc.validate()?;
        Ok(enc)
    }

    /// Builds a caterpillar encoding; the interval list is sorted for you.
    pub fn caterpillar(k: usize, mut intervals: Vec<Interval>, spine_kinds: Vec<EdgeKind>) -> Result<Self> {
        intervals.sort_unstable();
        let enc = IntervalEncoding { kind: FamilyKind::Caterpillar, k, intervals, spine_kinds };
        enc.validate()?;
        Ok(enc)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidEncoding(msg));
        let k = self.k;
        if k == 0 {
            return bad("the spine must have at least one element".into());
        }
        if self.spine_kinds.len() != k - 1 {
            return bad(format!("expected {} spine edge kinds, got {}", k - 1, self.spine_kinds.len()));
        }
        for &(a, b) in &self.intervals {
            if !(a < b && b <= k + 1) {
                return bad(format!("[{a},{b}] is not an interval inside [0,{}]", k + 1));
            }
            // A gap of one would make the extra element part of a longer chain.
            if b - a < 2 {
                return bad(format!("[{a},{b}] would extend the spine"));
            }
        }
        match self.kind {
            FamilyKind::GreeneK1 => {
                if self.intervals.len() != 1 {
                    return bad("a Greene-(k,1) encoding has exactly one interval".into());
                }
                if self.spine_kinds.iter().any(|&e| e != EdgeKind::Weak) {
                    return bad("Greene-(k,1) posets are naturally labeled".into());
                }
            }
            FamilyKind::Caterpillar => {
                if let Some(&(a, b)) = self.intervals.iter().find(|&&iv| interval_type(k, iv) == IntervalType::III) {
                    return bad(format!("[{a},{b}] attaches a leaf by two edges"));
                }
                if self.intervals.windows(2).any(|w| w[0] > w[1]) {
                    return bad("interval list is not sorted".into());
                }
            }
        }
        Ok(())
    }

    pub fn leaves(&self) -> usize {
        self.intervals.len()
    }

    pub fn size(&self) -> usize {
        self.k + self.intervals.len()
    }

    /// Componentwise interval containment, the combinatorial side of both
    /// classification theorems.
    pub fn contained_in(&self, other: &IntervalEncoding) -> bool {
        self.k == other.k
            && self.intervals.len() == other.intervals.len()
            && self.intervals.iter().zip(&other.intervals).all(|(&p, &q)| interval_contains(q, p))
    }

    pub fn type_counts(&self) -> TypeCounts {
        let mut t = TypeCounts::default();
        for &iv in &self.intervals {
            match interval_type(self.k, iv) {
                IntervalType::I => t.i += 1,
                IntervalType::II => t.ii += 1,
                IntervalType::III => t.iii += 1,
                IntervalType::IV => t.iv += 1,
            }
        }
        t
    }

    /// Intervals as `a,b` separated by spaces, as used for graph labels.
    pub fn short_label(&self) -> String {
        self.intervals.iter().map(|(a, b)| format!("{a},{b}")).collect::<Vec<_>>().join(" ")
    }

    /// The canonical poset: spine `1..k`, extra elements `k+1..`, every
    /// spine-to-leaf edge weak, labels a realized linear extension.
    pub fn decode(&self) -> Result<LabeledPoset> {
        self.validate()?;
        let k = self.k;
        let mut covers: Vec<Cover> = (1..k).map(|i| Cover::new(i, i + 1, self.spine_kinds[i - 1])).collect();
        for (j, &(a, b)) in self.intervals.iter().enumerate() {
            let e = k + 1 + j;
            if a >= 1 {
                covers.push(Cover::weak(a, e));
            }
            if b <= k {
                covers.push(Cover::weak(e, b));
            }
        }
        LabeledPoset::new(self.size(), covers, None)?.realize_labeling()
    }
}

impl fmt::Display for IntervalEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self.intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect::<Vec<_>>().join(",");
        match self.kind {
            FamilyKind::GreeneK1 => write!(f, "{list}"),
            FamilyKind::Caterpillar => {
                let spine: String = self
                    .spine_kinds
                    .iter()
                    .map(|e| match e {
                        EdgeKind::Weak => 'w',
                        EdgeKind::Strict => 's',
                    })
                    .collect();
                write!(f, "({list}) spine={}", if spine.is_empty() { "-" } else { &spine })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeCounts {
    pub i: usize,
    pub ii: usize,
    pub iii: usize,
    pub iv: usize,
}

/// The interval of a naturally labeled poset whose chain Greene shape is
/// `(k,1)`.  When several elements could serve as the extra element the
/// choices are isomorphic, so the encoding is well defined.
pub fn encode_greene_k1(p: &LabeledPoset) -> Result<IntervalEncoding> {
    if !p.is_naturally_labeled() {
        return Err(Error::InvalidEncoding("poset is not naturally labeled".into()));
    }
    let shape = greene_shapes(p)?.chain_shape;
    if shape.len() != 2 || shape[1] != 1 {
        return Err(Error::WrongShape(shape));
    }
    let n = p.len();
    let k = n - 1;
    let comparable = |x: usize, y: usize| p.comparable(x, y).unwrap_or(false);
    let extra = (1..=n)
        .find(|&e| (1..=n).filter(|&x| x != e).all(|x| (x + 1..=n).filter(|&y| y != e).all(|y| comparable(x, y))))
        .ok_or_else(|| Error::WrongShape(shape.clone()))?;
    let spine = (1..=n).filter(|&x| x != extra);
    let below = spine.clone().filter(|&x| p.lt(x, extra).unwrap_or(false)).count();
    let above = spine.filter(|&x| p.lt(extra, x).unwrap_or(false)).count();
    IntervalEncoding::greene_k1(k, below, k + 1 - above)
}

pub fn decode_greene_k1(enc: &IntervalEncoding) -> Result<LabeledPoset> {
    if enc.kind != FamilyKind::GreeneK1 {
        return Err(Error::InvalidEncoding("not a Greene-(k,1) encoding".into()));
    }
    enc.decode()
}

pub fn decode_caterpillar(enc: &IntervalEncoding) -> Result<LabeledPoset> {
    if enc.kind != FamilyKind::Caterpillar {
        return Err(Error::InvalidEncoding("not a caterpillar encoding".into()));
    }
    enc.decode()
}

/// Every Greene-(k,1) encoding, sorted by interval.
pub fn greene_k1_family(k: usize) -> Vec<IntervalEncoding> {
    let mut out = Vec::new();
    for a in 0..=k + 1 {
        for b in a + 2..=k + 1 {
            out.extend(IntervalEncoding::greene_k1(k, a, b));
        }
    }
    out
}

/// Intervals a caterpillar leaf may have on a spine of length `k`.
pub fn caterpillar_intervals(k: usize) -> Vec<Interval> {
    let mut out: Vec<Interval> = (2..=k).map(|b| (0, b)).collect();
    out.push((0, k + 1));
    out.extend((1..k).map(|a| (a, k + 1)));
    out.sort_unstable();
    out
}

/// Every caterpillar with the given spine and exactly `leaves` leaves.
pub fn caterpillar_family(k: usize, spine_kinds: &[EdgeKind], leaves: usize) -> Result<Vec<IntervalEncoding>> {
    let choices = caterpillar_intervals(k);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(leaves);
    fn rec(
        choices: &[Interval],
        start: usize,
        left: usize,
        current: &mut Vec<Interval>,
        emit: &mut dyn FnMut(&[Interval]),
    ) {
        if left == 0 {
            emit(current);
            return;
        }
        for i in start..choices.len() {
            current.push(choices[i]);
            rec(choices, i, left - 1, current, emit);
            current.pop();
        }
    }
    let mut err = None;
    rec(&choices, 0, leaves, &mut current, &mut |ivs| match IntervalEncoding::caterpillar(
        k,
        ivs.to_vec(),
        spine_kinds.to_vec(),
    ) {
        Ok(enc) => out.push(enc),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// All `2^(k-1)` spine patterns, weak-first.
pub fn spine_patterns(k: usize) -> Vec<Vec<EdgeKind>> {
    let edges = k.saturating_sub(1);
    (0..1usize << edges)
        .map(|m| (0..edges).map(|i| if m >> i & 1 == 1 { EdgeKind::Strict } else { EdgeKind::Weak }).collect())
        .collect()
}

/// Enumerators of a family member and of its bar, computed once so that
/// pairwise checks are cheap.
#[derive(Clone, Debug)]
pub struct MemberData {
    pub encoding: IntervalEncoding,
    pub poset: LabeledPoset,
    pub f: QSymExpr,
    pub m: QSymExpr,
    pub bar_m: QSymExpr,
}

impl MemberData {
    pub fn new(encoding: &IntervalEncoding, cfg: &EnumConfig) -> Result<Self> {
        let poset = encoding.decode()?;
        Ok(MemberData {
            f: enumerator_f_with(&poset, cfg)?,
            m: enumerator_m_with(&poset, cfg)?,
            bar_m: enumerator_m_with(&bar(&poset), cfg)?,
            encoding: encoding.clone(),
            poset,
        })
    }
}

fn dominates(small: &QSymExpr, big: &QSymExpr) -> bool {
    big.sub(small).map(|d| d.is_nonneg()).unwrap_or(false)
}

fn support_within(small: &QSymExpr, big: &QSymExpr) -> bool {
    small.support().is_subset(&big.support())
}

/// The six conditions of the Greene-(k,1) classification, each evaluated
/// on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K1Report {
    pub f_positive: bool,
    pub f_support_contained: bool,
    pub m_positive: bool,
    pub bar_m_positive: bool,
    pub bar_m_support_contained: bool,
    pub interval_contained: bool,
}

impl K1Report {
    pub fn conditions(&self) -> [bool; 6] {
        [
            self.f_positive,
            self.f_support_contained,
            self.m_positive,
            self.bar_m_positive,
            self.bar_m_support_contained,
            self.interval_contained,
        ]
    }

    pub fn agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&x| x == c[0])
    }
}

impl fmt::Display for K1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["F-positive", "F-support", "M-positive", "bar M-positive", "bar M-support", "interval"];
        for (name, v) in names.iter().zip(self.conditions()) {
            writeln!(f, "{name}: {v}")?;
        }
        write!(f, "agree: {}", self.agree())
    }
}

pub fn k1_report(p: &MemberData, q: &MemberData) -> K1Report {
    K1Report {
        f_positive: dominates(&p.f, &q.f),
        f_support_contained: support_within(&p.f, &q.f),
        m_positive: dominates(&p.m, &q.m),
        bar_m_positive: dominates(&p.bar_m, &q.bar_m),
        bar_m_support_contained: support_within(&p.bar_m, &q.bar_m),
        interval_contained: p.encoding.contained_in(&q.encoding),
    }
}

/// Checks the Greene-(k,1) classification on a pair of posets.
pub fn check_thm_k1(p: &LabeledPoset, q: &LabeledPoset) -> Result<K1Report> {
    let (ep, eq) = (encode_greene_k1(p)?, encode_greene_k1(q)?);
    if ep.k != eq.k {
        return Err(Error::SizeMismatch { left: p.len(), right: q.len() });
    }
    let cfg = EnumConfig::default();
    // Work with the given posets rather than the canonical decodings.
    let data = |enc: IntervalEncoding, poset: &LabeledPoset| -> Result<MemberData> {
        Ok(MemberData {
            f: enumerator_f_with(poset, &cfg)?,
            m: enumerator_m_with(poset, &cfg)?,
            bar_m: enumerator_m_with(&bar(poset), &cfg)?,
            encoding: enc,
            poset: poset.clone(),
        })
    };
    Ok(k1_report(&data(ep, p)?, &data(eq, q)?))
}

/// The caterpillar classification on one pair, plus the type-count
/// necessary condition and, for all-weak spines, the bar M-conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarReport {
    pub f_positive: bool,
    pub f_support_contained: bool,
    pub intervals_contained: bool,
    pub p_types: TypeCounts,
    pub q_types: TypeCounts,
    /// `p^I + p^IV <= q^I + q^IV`
    pub lower_count_ok: bool,
    /// `p^II + p^IV <= q^II + q^IV`
    pub upper_count_ok: bool,
    /// `(bar P <=_M bar Q, supp_M(bar P) ⊆ supp_M(bar Q))`, all-weak spines only
    pub bar_m: Option<(bool, bool)>,
}

impl CaterpillarReport {
    pub fn agree(&self) -> bool {
        self.f_positive == self.intervals_contained && self.f_support_contained == self.intervals_contained
    }

    /// The type counts are necessary for F-support containment.
    pub fn type_counts_consistent(&self) -> bool {
        !self.f_support_contained || (self.lower_count_ok && self.upper_count_ok)
    }

    pub fn bar_m_agrees(&self) -> bool {
        self.bar_m.is_none_or(|(pos, supp)| pos == self.intervals_contained && supp == self.intervals_contained)
    }

    pub fn holds(&self) -> bool {
        self.agree() && self.type_counts_consistent() && self.bar_m_agrees()
    }

    /// Which type-count inequality fails, if any.
    pub fn type_count_witness(&self) -> Option<String> {
        let (p, q) = (self.p_types, self.q_types);
        if !self.lower_count_ok {
            Some(format!("p^I + p^IV <= q^I + q^IV violated: {} > {}", p.i + p.iv, q.i + q.iv))
        } else if !self.upper_count_ok {
            Some(format!("p^II + p^IV <= q^II + q^IV violated: {} > {}", p.ii + p.iv, q.ii + q.iv))
        } else {
            None
        }
    }
}

impl fmt::Display for CaterpillarReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F-positive: {}", self.f_positive)?;
        writeln!(f, "F-support: {}", self.f_support_contained)?;
        writeln!(f, "intervals: {}", self.intervals_contained)?;
        if let Some(w) = self.type_count_witness() {
            writeln!(f, "type counts: {w}")?;
        }
        if let Some((pos, supp)) = self.bar_m {
            writeln!(f, "bar M-positive: {pos}")?;
            writeln!(f, "bar M-support: {supp}")?;
        }
        write!(f, "agree: {}", self.holds())
    }
}

pub fn caterpillar_report(p: &MemberData, q: &MemberData) -> Result<CaterpillarReport> {
    let (ep, eq) = (&p.encoding, &q.encoding);
    if ep.k != eq.k || ep.spine_kinds != eq.spine_kinds || ep.leaves() != eq.leaves() {
        return Err(Error::SpineMismatch);
    }
    let (pt, qt) = (ep.type_counts(), eq.type_counts());
    let all_weak = ep.spine_kinds.iter().all(|&e| e == EdgeKind::Weak);
    Ok(CaterpillarReport {
        f_positive: dominates(&p.f, &q.f),
        f_support_contained: support_within(&p.f, &q.f),
        intervals_contained: ep.contained_in(eq),
        p_types: pt,
        q_types: qt,
        lower_count_ok: pt.i + pt.iv <= qt.i + qt.iv,
        upper_count_ok: pt.ii + pt.iv <= qt.ii + qt.iv,
        bar_m: all_weak.then(|| (dominates(&p.bar_m, &q.bar_m), support_within(&p.bar_m, &q.bar_m))),
    })
}

pub fn check_thm_caterpillar(p: &IntervalEncoding, q: &IntervalEncoding) -> Result<CaterpillarReport> {
    if p.kind != FamilyKind::Caterpillar || q.kind != FamilyKind::Caterpillar {
        return Err(Error::InvalidEncoding("not a caterpillar encoding".into()));
    }
    let cfg = EnumConfig::default();
    caterpillar_report(&MemberData::new(p, &cfg)?, &MemberData::new(q, &cfg)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    GreeneK1 { k: usize },
    Caterpillar { spine_kinds: Vec<EdgeKind>, leaves: usize },
}

impl Family {
    pub fn members(&self) -> Result<Vec<IntervalEncoding>> {
        match self {
            Family::GreeneK1 { k } => Ok(greene_k1_family(*k)),
            Family::Caterpillar { spine_kinds, leaves } => {
                caterpillar_family(spine_kinds.len() + 1, spine_kinds, *leaves)
            }
        }
    }
}

/// A family ordered by `<=_F`.  Node `i` is `nodes[i]`; each cover `(i, j)`
/// says `nodes[i] <_F nodes[j]` with nothing in between.
#[derive(Clone, Debug)]
pub struct FPositivityPoset {
    pub nodes: Vec<IntervalEncoding>,
    pub covers: Vec<(usize, usize)>,
}

pub fn f_positivity_poset(family: &Family) -> Result<FPositivityPoset> {
    let nodes = family.members()?;
    let n = nodes.len();
    if n > FAMILY_CAP {
        return Err(Error::SizeCap { what: "family", n, cap: FAMILY_CAP });
    }
    let lt: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && nodes[i].contained_in(&nodes[j])).collect()).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && !(0..n).any(|m| lt[i][m] && lt[m][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(FPositivityPoset { nodes, covers })
}

impl FPositivityPoset {
    /// Compares the containment order with `<=_F` computed from full
    /// expansions, returning every ordered pair where they disagree.
    pub fn validate(&self, cfg: &EnumConfig) -> Result<Vec<(usize, usize)>> {
        let fs: Vec<QSymExpr> =
            self.nodes.par_iter().map(|e| enumerator_f_with(&e.decode()?, cfg)).collect::<Result<_>>()?;
        let n = self.nodes.len();
        Ok((0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.nodes[i].contained_in(&self.nodes[j]) != dominates(&fs[i], &fs[j]))
            .collect())
    }

    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers.iter().map(|&(i, j)| (self.nodes[i].short_label(), self.nodes[j].short_label())).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fpositivity {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", node.short_label()));
        }
        for (i, j) in &self.covers {
            out.push_str(&format!("  n{i} -> n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}
