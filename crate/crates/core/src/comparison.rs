//! Deciding the positivity and containment relations between two labeled
//! posets, and the battery of necessary conditions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::enumerator::{count_linear_extensions, enumerator_f_with, EnumConfig};
use crate::error::Result;
use crate::invariants::{
    bar, convex_union_profile, greene_shapes, jump_sequence, partition_dominated, star, GreeneShapes,
};
use crate::poset::{ChainStats, EdgeKind, LabeledPoset, LessThanSet};
use crate::qsym::{dominance_leq, Composition, QSymExpr};

/// The relations between `P` and `Q` that a report decides, ordered from
/// strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    LinExtContained,
    FPositive,
    MPositive,
    FSupportContained,
    MSupportContained,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::LinExtContained => "L-contained",
            Relation::FPositive => "F-positive",
            Relation::MPositive => "M-positive",
            Relation::FSupportContained => "F-support",
            Relation::MSupportContained => "M-support",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which support containment the battery targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BatteryMode {
    FSupport,
    MSupport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The condition only applies to a restricted class of inputs.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One necessary condition, the relation it is necessary for, and its
/// verdict on a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub name: &'static str,
    pub necessary_for: Relation,
    pub status: Status,
    pub witness: Option<String>,
}

impl ConditionOutcome {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Everything about a single labeled poset that comparisons need, computed
/// once so that exhaustive all-pairs runs stay cheap.
#[derive(Clone, Debug)]
pub struct Profile {
    pub poset: LabeledPoset,
    pub f: QSymExpr,
    pub m: QSymExpr,
    pub f_support: BTreeSet<Composition>,
    pub m_support: BTreeSet<Composition>,
    pub linear_extension_count: BigUint,
    pub less_than: LessThanSet,
    /// jump sequences of P, P*, bar P and (bar P)*
    pub jump: Composition,
    pub star_jump: Composition,
    pub bar_jump: Composition,
    pub bar_star_jump: Composition,
    pub chain_stats: ChainStats,
    /// index i - 1 holds the largest union of i weak (strict) convex subposets
    pub weak_convex: Vec<usize>,
    pub strict_convex: Vec<usize>,
    /// Greene shapes, for naturally labeled posets only
    pub greene: Option<GreeneShapes>,
}

impl Profile {
    pub fn new(p: &LabeledPoset) -> Result<Self> {
        Self::with_config(p, &EnumConfig::default())
    }

    pub fn with_config(p: &LabeledPoset, cfg: &EnumConfig) -> Result<Self> {
        let poset = p.ensure_labels();
        let f = enumerator_f_with(&poset, cfg)?;
        let m = f.f_to_m()?;
        let b = bar(&poset);
        let bar_m = enumerator_f_with(&b, cfg)?.f_to_m()?;
        let greene = if poset.is_naturally_labeled() { Some(greene_shapes(&poset)?) } else { None };
        Ok(Profile {
            f_support: f.support(),
            m_support: m.support(),
            linear_extension_count: count_linear_extensions(&poset),
            less_than: poset.less_than_set()?,
            jump: jump_sequence(&poset).as_composition(),
            star_jump: jump_sequence(&star(&poset)).as_composition(),
            bar_jump: jump_sequence(&b).as_composition(),
            bar_star_jump: jump_sequence(&star(&b)).as_composition(),
            chain_stats: poset.maximal_chain_edge_stats(),
            weak_convex: convex_union_profile(&m),
            strict_convex: convex_union_profile(&bar_m),
            greene,
            f,
            m,
            poset,
        })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

/// Verdicts on the five relations for `P` versus `Q`, plus the battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub size_match: bool,
    pub lin_ext_contained: bool,
    pub f_positive: bool,
    pub m_positive: bool,
    pub f_support_contained: bool,
    pub m_support_contained: bool,
    pub mode: BatteryMode,
    pub necessary_battery: Vec<ConditionOutcome>,
    /// `K_Q - K_P` in the F basis, when the sizes agree
    pub f_difference: Option<QSymExpr>,
}

impl ComparisonReport {
    pub fn holds(&self, r: Relation) -> bool {
        match r {
            Relation::LinExtContained => self.lin_ext_contained,
            Relation::FPositive => self.f_positive,
            Relation::MPositive => self.m_positive,
            Relation::FSupportContained => self.f_support_contained,
            Relation::MSupportContained => self.m_support_contained,
        }
    }

    /// The implications L ⊆ ⇒ ≤_F ⇒ ≤_M ⇒ M-support, and
    /// ≤_F ⇒ F-support ⇒ M-support.
    pub fn implications_hold(&self) -> bool {
        let imp = |a: bool, b: bool| !a || b;
        imp(self.lin_ext_contained, self.f_positive)
            && imp(self.f_positive, self.m_positive)
            && imp(self.m_positive, self.m_support_contained)
            && imp(self.f_positive, self.f_support_contained)
            && imp(self.f_support_contained, self.m_support_contained)
    }

    pub fn battery_passed(&self) -> bool {
        self.necessary_battery.iter().all(ConditionOutcome::passed)
    }

    /// Battery conditions that fail although the relation they are
    /// necessary for holds; always empty for a sound battery.
    pub fn unsound_conditions(&self) -> Vec<&ConditionOutcome> {
        self.necessary_battery.iter().filter(|c| c.status == Status::Fail && self.holds(c.necessary_for)).collect()
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SIZE-MATCH: {}", self.size_match)?;
        writeln!(f, "L-CONTAINED: {}", self.lin_ext_contained)?;
        writeln!(f, "F-POSITIVE: {}", self.f_positive)?;
        writeln!(f, "M-POSITIVE: {}", self.m_positive)?;
        writeln!(f, "F-SUPPORT-CONTAINED: {}", self.f_support_contained)?;
        writeln!(f, "M-SUPPORT-CONTAINED: {}", self.m_support_contained)?;
        if let Some(d) = &self.f_difference {
            writeln!(f, "K_Q - K_P = {d}")?;
        }
        let mode = match self.mode {
            BatteryMode::FSupport => "F-support",
            BatteryMode::MSupport => "M-support",
        };
        writeln!(f, "battery ({mode}):")?;
        for c in &self.necessary_battery {
            write!(f, "{} {:<26} [{}]", c.status, c.name, c.necessary_for)?;
            if let Some(w) = &c.witness {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Compares `p` with `q`, running the F-support battery.
pub fn compare(p: &LabeledPoset, q: &LabeledPoset) -> Result<ComparisonReport> {
    compare_with(p, q, BatteryMode::FSupport, &EnumConfig::default())
}

pub fn compare_with(
    p: &LabeledPoset,
    q: &LabeledPoset,
    mode: BatteryMode,
    cfg: &EnumConfig,
) -> Result<ComparisonReport> {
    if p.len() != q.len() {
        return Ok(size_mismatch_report(p.len(), q.len(), mode));
    }
    Ok(compare_profiles(&Profile::with_config(p, cfg)?, &Profile::with_config(q, cfg)?, mode))
}

fn size_mismatch_report(np: usize, nq: usize, mode: BatteryMode) -> ComparisonReport {
    ComparisonReport {
        size_match: false,
        lin_ext_contained: false,
        f_positive: false,
        m_positive: false,
        f_support_contained: false,
        m_support_contained: false,
        mode,
        necessary_battery: vec![ConditionOutcome {
            name: "size",
            necessary_for: Relation::MSupportContained,
            status: Status::Fail,
            witness: Some(format!("|P| = {np}, |Q| = {nq}")),
        }],
        f_difference: None,
    }
}

pub fn compare_profiles(p: &Profile, q: &Profile, mode: BatteryMode) -> ComparisonReport {
    if p.len() != q.len() {
        return size_mismatch_report(p.len(), q.len(), mode);
    }
    let f_difference = q.f.sub(&p.f).expect("same degree and basis");
    let m_difference = q.m.sub(&p.m).expect("same degree and basis");
    ComparisonReport {
        size_match: true,
        lin_ext_contained: p.less_than.is_superset(&q.less_than),
        f_positive: f_difference.is_nonneg(),
        m_positive: m_difference.is_nonneg(),
        f_support_contained: p.f_support.is_subset(&q.f_support),
        m_support_contained: p.m_support.is_subset(&q.m_support),
        mode,
        necessary_battery: battery(p, q, mode),
        f_difference: Some(f_difference),
    }
}

/// The necessary conditions for the mode's support containment (plus the
/// linear-extension count, which needs M-positivity), evaluated on `p`
/// versus `q`.
pub fn necessary_battery(p: &LabeledPoset, q: &LabeledPoset, mode: BatteryMode) -> Result<Vec<ConditionOutcome>> {
    if p.len() != q.len() {
        return Ok(size_mismatch_report(p.len(), q.len(), mode).necessary_battery);
    }
    Ok(battery(&Profile::new(p)?, &Profile::new(q)?, mode))
}

struct Battery {
    out: Vec<ConditionOutcome>,
}

impl Battery {
    fn push(&mut self, name: &'static str, necessary_for: Relation, witness: Option<String>) {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.out.push(ConditionOutcome { name, necessary_for, status, witness });
    }

    fn skip(&mut self, name: &'static str, necessary_for: Relation, why: &str) {
        self.out.push(ConditionOutcome { name, necessary_for, status: Status::Skip, witness: Some(why.to_string()) });
    }
}

fn jump_check(p: &Composition, q: &Composition) -> Option<String> {
    let ok = dominance_leq(p, q).expect("same size");
    (!ok).then(|| format!("{p} is not dominated by {q}"))
}

fn all_kind_check(p: &LabeledPoset, q: &LabeledPoset, kind: EdgeKind) -> Option<String> {
    let all = |x: &LabeledPoset| x.covers().iter().all(|c| c.kind == kind);
    if !all(p) || all(q) {
        return None;
    }
    let c = q.covers().iter().find(|c| c.kind != kind).unwrap();
    Some(format!("Q has the {} edge {} -> {}", c.kind, c.lower, c.upper))
}

fn convex_check(p: &[usize], q: &[usize]) -> Option<String> {
    let i = p.iter().zip(q).position(|(a, b)| a > b)?;
    Some(format!("i = {}: {} > {}", i + 1, p[i], q[i]))
}

fn battery(p: &Profile, q: &Profile, mode: BatteryMode) -> Vec<ConditionOutcome> {
    use Relation::*;
    let f_mode = mode == BatteryMode::FSupport;
    let mut b = Battery { out: Vec::new() };
    b.push("size", MSupportContained, None);
    if !f_mode {
        let (lp, lq) = (&p.linear_extension_count, &q.linear_extension_count);
        b.push("linear-extension-count", MPositive, (lp > lq).then(|| format!("|L(P)| = {lp} > |L(Q)| = {lq}")));
    }
    b.push("all-weak", MSupportContained, all_kind_check(&p.poset, &q.poset, EdgeKind::Weak));
    if f_mode {
        b.push("all-strict", FSupportContained, all_kind_check(&p.poset, &q.poset, EdgeKind::Strict));
    }
    b.push("jump", MSupportContained, jump_check(&p.jump, &q.jump));
    b.push("star-jump", MSupportContained, jump_check(&p.star_jump, &q.star_jump));
    if f_mode {
        b.push("bar-jump", FSupportContained, jump_check(&p.bar_jump, &q.bar_jump));
        b.push("bar-star-jump", FSupportContained, jump_check(&p.bar_star_jump, &q.bar_star_jump));
    }
    let (sp, sq) = (p.chain_stats, q.chain_stats);
    b.push(
        "max-strict-chain-edges",
        MSupportContained,
        (sp.max_strict < sq.max_strict).then(|| format!("{} < {}", sp.max_strict, sq.max_strict)),
    );
    if f_mode {
        b.push(
            "max-weak-chain-edges",
            FSupportContained,
            (sp.max_weak < sq.max_weak).then(|| format!("{} < {}", sp.max_weak, sq.max_weak)),
        );
    }
    b.push("weak-convex-unions", MSupportContained, convex_check(&p.weak_convex, &q.weak_convex));
    if f_mode {
        b.push("strict-convex-unions", FSupportContained, convex_check(&p.strict_convex, &q.strict_convex));
        match (&p.greene, &q.greene) {
            (Some(gp), Some(gq)) => {
                b.push(
                    "antichain-greene-dominance",
                    FSupportContained,
                    (!partition_dominated(&gp.antichain_shape, &gq.antichain_shape))
                        .then(|| format!("{:?} is not dominated by {:?}", gp.antichain_shape, gq.antichain_shape)),
                );
                b.push(
                    "chain-greene-dominance",
                    FSupportContained,
                    (!partition_dominated(&gq.chain_shape, &gp.chain_shape))
                        .then(|| format!("{:?} does not dominate {:?}", gp.chain_shape, gq.chain_shape)),
                );
            }
            _ => {
                b.skip("antichain-greene-dominance", FSupportContained, "needs naturally labeled P and Q");
                b.skip("chain-greene-dominance", FSupportContained, "needs naturally labeled P and Q");
            }
        }
    }
    b.out
}
