//! Property suites run by `posetq verify`.  Each suite checks a theorem on
//! every instance up to a size bound (or on seeded random instances) and
//! reports counterexamples as parseable poset stanzas.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::comparison::{compare_profiles, BatteryMode, Profile};
use crate::enumerator::{enumerator_f, enumerator_f_by_extensions, enumerator_m, linear_extensions, EnumConfig};
use crate::error::{Error, Result};
use crate::families::{
    caterpillar_family, caterpillar_report, encode_greene_k1, greene_k1_family, k1_report, spine_patterns, MemberData,
};
use crate::generate::{all_posets, random_poset, random_rbd_descendant};
use crate::poset::{EdgeKind, LabeledPoset};
use crate::qsym::QSymExpr;
use crate::text::write_poset;
use crate::transforms::{assemble, delete_cover, rbd_certificate, AssemblyInput, RbdCertificate};

/// Counterexamples kept per run; the failure count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// six-way classification of Greene shape (k,1)
    K1,
    /// three-way classification of mixed-spine caterpillars
    Caterpillar,
    /// S_< containment versus materialized linear-extension containment
    Rbd,
    /// assembly preserves linear-extension containment
    AssemblyL,
    /// assembly with L-contained frameworks preserves F-positivity
    AssemblyF,
    /// F-expansion, M-expansion and F-to-M conversion agree
    Oracle,
    /// soundness of the necessary-condition battery and the implication diagram
    Battery,
    /// counterexample search: supp_F(P) ⊆ supp_F(Q) but P has shorter maximal chains
    LongestChain,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::K1,
        Theorem::Caterpillar,
        Theorem::Rbd,
        Theorem::AssemblyL,
        Theorem::AssemblyF,
        Theorem::Oracle,
        Theorem::Battery,
        Theorem::LongestChain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::K1 => "k1",
            Theorem::Caterpillar => "caterpillar",
            Theorem::Rbd => "rbd",
            Theorem::AssemblyL => "assembly-l",
            Theorem::AssemblyF => "assembly-f",
            Theorem::Oracle => "oracle",
            Theorem::Battery => "battery",
            Theorem::LongestChain => "longest-chain",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Theorem::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Theorem::ALL.iter().map(|t| t.as_str()).collect();
            format!("unknown theorem `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Size bounds; `None` picks the suite's default.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub max_k: Option<usize>,
    pub max_leaves: Option<usize>,
    pub max_n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// caterpillar suite: skip spines with strict edges, where the
    /// classification is known to fail
    pub weak_spines_only: bool,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub description: String,
    pub posets: Vec<(String, LabeledPoset)>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.description.lines() {
            writeln!(f, "# {line}")?;
        }
        for (name, p) in &self.posets {
            write!(f, "{}", write_poset(name, p))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifySummary {
    pub theorem: Theorem,
    pub instances: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// One `key=value` line for scripts.
    pub fn machine_line(&self) -> String {
        format!(
            "summary theorem={} instances={} failures={} seconds={:.3}",
            self.theorem,
            self.instances,
            self.failures,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Thread-safe tally shared by the workers of one run.
struct Tally {
    instances: AtomicU64,
    failures: AtomicU64,
    kept: Mutex<Vec<Counterexample>>,
}

impl Tally {
    fn new() -> Self {
        Tally { instances: AtomicU64::new(0), failures: AtomicU64::new(0), kept: Mutex::new(Vec::new()) }
    }

    fn pass(&self, count: u64) {
        self.instances.fetch_add(count, Ordering::Relaxed);
    }

    fn fail(&self, make: impl FnOnce() -> Counterexample) {
        self.instances.fetch_add(1, Ordering::Relaxed);
        self.failures.fetch_add(1, Ordering::Relaxed);
        let mut kept = self.kept.lock().unwrap();
        if kept.len() < KEPT_FAILURES {
            kept.push(make());
        }
    }

    fn check(&self, ok: bool, make: impl FnOnce() -> Counterexample) {
        if ok {
            self.pass(1)
        } else {
            self.fail(make)
        }
    }

    fn finish(self, theorem: Theorem, start: Instant) -> VerifySummary {
        let mut counterexamples = self.kept.into_inner().unwrap();
        counterexamples.sort_by(|a, b| a.description.cmp(&b.description));
        VerifySummary {
            theorem,
            instances: self.instances.into_inner(),
            failures: self.failures.into_inner(),
            counterexamples,
            elapsed: start.elapsed(),
        }
    }
}

fn pair(description: String, p: &LabeledPoset, q: &LabeledPoset) -> Counterexample {
    Counterexample { description, posets: vec![("P".into(), p.clone()), ("Q".into(), q.clone())] }
}

/// Runs one suite; `progress` receives a line per stage.
pub fn run(theorem: Theorem, opts: &VerifyOptions, progress: &(dyn Fn(&str) + Sync)) -> Result<VerifySummary> {
    let start = Instant::now();
    let tally = Tally::new();
    match theorem {
        Theorem::K1 => k1(opts.max_k.unwrap_or(6), &tally, progress)?,
        Theorem::Caterpillar => {
            let (k, l) = (opts.max_k.unwrap_or(4), opts.max_leaves.unwrap_or(2));
            caterpillar(k, l, opts.weak_spines_only, &tally, progress)?
        }
        Theorem::Rbd => rbd(opts.max_n.unwrap_or(5), opts.trials.unwrap_or(10_000), opts.seed, &tally, progress)?,
        Theorem::AssemblyL => assembly(false, opts.trials.unwrap_or(500), opts.seed, &tally, progress)?,
        Theorem::AssemblyF => assembly(true, opts.trials.unwrap_or(500), opts.seed, &tally, progress)?,
        Theorem::Oracle => oracle(opts.max_n.unwrap_or(5), opts.trials.unwrap_or(500), opts.seed, &tally, progress)?,
        Theorem::Battery => battery(opts.max_n.unwrap_or(4), &tally, progress)?,
        Theorem::LongestChain => longest_chain(opts.max_n.unwrap_or(5), &tally, progress)?,
    }
    Ok(tally.finish(theorem, start))
}

fn k1(max_k: usize, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    let cfg = EnumConfig::default();
    for k in 1..=max_k {
        let members: Vec<MemberData> =
            greene_k1_family(k).par_iter().map(|e| MemberData::new(e, &cfg)).collect::<Result<_>>()?;
        progress(&format!("k={k}: {} posets, {} pairs", members.len(), members.len().pow(2)));
        for m in &members {
            let back = encode_greene_k1(&m.poset)?;
            tally.check(back == m.encoding, || Counterexample {
                description: format!("encoding {} decodes to a poset encoded as {back}", m.encoding),
                posets: vec![("P".into(), m.poset.clone())],
            });
        }
        members.par_iter().for_each(|p| {
            for q in &members {
                let r = k1_report(p, q);
                tally.check(r.agree(), || {
                    pair(format!("I(P)={} I(Q)={}\n{}", p.encoding, q.encoding, r), &p.poset, &q.poset)
                });
            }
        });
    }
    Ok(())
}

fn caterpillar(
    max_k: usize,
    max_leaves: usize,
    weak_only: bool,
    tally: &Tally,
    progress: &(dyn Fn(&str) + Sync),
) -> Result<()> {
    let cfg = EnumConfig::default();
    for k in 1..=max_k {
        for kinds in spine_patterns(k) {
            if weak_only && kinds.contains(&EdgeKind::Strict) {
                continue;
            }
            let spine: String = kinds.iter().map(|e| if *e == EdgeKind::Weak { 'w' } else { 's' }).collect();
            for leaves in 0..=max_leaves {
                let fam = caterpillar_family(k, &kinds, leaves)?;
                let members: Vec<MemberData> =
                    fam.par_iter().map(|e| MemberData::new(e, &cfg)).collect::<Result<_>>()?;
                progress(&format!("k={k} spine={spine} leaves={leaves}: {} posets", members.len()));
                let errors: Vec<Error> = members
                    .par_iter()
                    .flat_map_iter(|p| {
                        members.iter().filter_map(move |q| match caterpillar_report(p, q) {
                            Ok(r) => {
                                tally.check(r.holds(), || {
                                    pair(format!("I(P)={} I(Q)={}\n{}", p.encoding, q.encoding, r), &p.poset, &q.poset)
                                });
                                None
                            }
                            Err(e) => Some(e),
                        })
                    })
                    .collect();
                if let Some(e) = errors.into_iter().next() {
                    return Err(e);
                }
            }
        }
    }
    Ok(())
}

type Extensions = HashSet<Vec<usize>>;

fn extension_set(p: &LabeledPoset) -> Extensions {
    linear_extensions(p).collect()
}

fn rbd_pair(p: &LabeledPoset, lp: &Extensions, q: &LabeledPoset, lq: &Extensions, tally: &Tally) -> Result<()> {
    let materialized = lp.is_subset(lq);
    let cert = rbd_certificate(p, q)?;
    let ok = match &cert {
        RbdCertificate::Reachable { deletions } => {
            // replaying the deletions must land exactly on S_<(q)
            let mut cur = p.clone();
            for &(a, b) in deletions {
                cur = delete_cover(&cur, a, b)?;
            }
            materialized && cur.less_than_set()? == q.less_than_set()?
        }
        RbdCertificate::Unreachable { .. } => !materialized,
    };
    tally.check(ok, || pair(format!("L(P) ⊆ L(Q) is {materialized} but the certificate is {cert:?}"), p, q));
    Ok(())
}

fn rbd(max_n: usize, trials: usize, seed: u64, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    for n in 1..=max_n.min(4) {
        let posets = all_posets(n)?;
        let exts: Vec<Extensions> = posets.par_iter().map(extension_set).collect();
        progress(&format!("n={n}: {} labeled posets, all pairs", posets.len()));
        posets
            .par_iter()
            .zip(&exts)
            .try_for_each(|(p, lp)| posets.iter().zip(&exts).try_for_each(|(q, lq)| rbd_pair(p, lp, q, lq, tally)))?;
    }
    for n in 5..=max_n {
        progress(&format!("n={n}: {trials} random pairs"));
        (0..trials).into_par_iter().try_for_each(|t| {
            let mut rng = StdRng::seed_from_u64(seed ^ (n as u64) << 32 ^ t as u64);
            let p = random_poset_in(&mut rng, n, 0.1..0.7)?;
            // a third each: unrelated, RBD-related, and RBD-related then perturbed
            let q = match t % 3 {
                0 => random_poset_in(&mut rng, n, 0.1..0.7)?,
                1 => {
                    let steps = rng.gen_range(0..3);
                    random_rbd_descendant(&mut rng, &p, steps)?
                }
                _ => {
                    let d = random_rbd_descendant(&mut rng, &p, 1)?;
                    let extra = random_poset(&mut rng, n, 0.2)?;
                    let rels = d.less_than_set()?.iter().chain(extra.less_than_set()?.iter()).collect::<Vec<_>>();
                    let labels: Vec<usize> = (1..=n).collect();
                    match LabeledPoset::from_relations(n, rels, labels) {
                        Ok(q) => q,
                        Err(_) => d,
                    }
                }
            };
            rbd_pair(&p, &extension_set(&p), &q, &extension_set(&q), tally)
        })?;
    }
    Ok(())
}

fn random_poset_in(rng: &mut StdRng, n: usize, density: std::ops::Range<f64>) -> Result<LabeledPoset> {
    let d = rng.gen_range(density);
    random_poset(rng, n, d)
}

fn dominates(small: &QSymExpr, big: &QSymExpr) -> bool {
    big.sub(small).map(|d| d.is_nonneg()).unwrap_or(false)
}

/// A random pair `P_r, Q_r` of the same size with `P_r <=_F Q_r`: either an
/// RBD pair or a filtered random pair.
fn component_pair(rng: &mut StdRng, need_f_only: bool) -> Result<(LabeledPoset, LabeledPoset)> {
    let n = rng.gen_range(1..=3);
    let p = random_poset_in(rng, n, 0.2..0.9)?;
    if need_f_only && rng.gen_bool(0.5) {
        let fp = enumerator_f(&p)?;
        for _ in 0..20 {
            let q = random_poset_in(rng, n, 0.0..0.9)?;
            if dominates(&fp, &enumerator_f(&q)?) {
                return Ok((p, q));
            }
        }
    }
    let steps = rng.gen_range(0..=2);
    Ok((p.clone(), random_rbd_descendant(rng, &p, steps)?))
}

fn assembly(f_version: bool, trials: usize, seed: u64, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    progress(&format!("{trials} random assemblies"));
    (0..trials).into_par_iter().try_for_each(|t| {
        let mut rng = StdRng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ t as u64);
        let m = rng.gen_range(1..=3);
        let fp = random_poset_in(&mut rng, m, 0.2..0.9)?;
        let steps = rng.gen_range(0..=2);
        let fq = random_rbd_descendant(&mut rng, &fp, steps)?;
        let (pc, qc): (Vec<_>, Vec<_>) =
            (0..m).map(|_| component_pair(&mut rng, f_version)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        let ap = assemble(&AssemblyInput { framework: fp.clone(), components: pc.clone() })?.poset;
        let aq = assemble(&AssemblyInput { framework: fq.clone(), components: qc.clone() })?.poset;
        let ok = if f_version {
            dominates(&enumerator_f(&ap)?, &enumerator_f(&aq)?)
        } else {
            extension_set(&ap).is_subset(&extension_set(&aq))
        };
        tally.check(ok, || {
            let mut posets = vec![("framework-P".to_string(), fp), ("framework-Q".to_string(), fq)];
            for (i, (p, q)) in pc.into_iter().zip(qc).enumerate() {
                posets.push((format!("component-P{}", i + 1), p));
                posets.push((format!("component-Q{}", i + 1), q));
            }
            posets.push(("assembled-P".into(), ap));
            posets.push(("assembled-Q".into(), aq));
            let what = if f_version { "P <=_F Q" } else { "L(P) ⊆ L(Q)" };
            Counterexample { description: format!("assembled pair violates {what}"), posets }
        });
        Ok(())
    })
}

fn oracle_one(p: &LabeledPoset, tally: &Tally) -> Result<()> {
    let f = enumerator_f(p)?;
    let ok = f.f_to_m()? == enumerator_m(p)? && f == enumerator_f_by_extensions(p)?;
    tally.check(ok, || Counterexample {
        description: "F-expansion, M-expansion and linear-extension descents disagree".into(),
        posets: vec![("P".into(), p.clone())],
    });
    Ok(())
}

fn oracle(max_n: usize, trials: usize, seed: u64, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    for n in 0..=max_n.min(crate::generate::ALL_POSETS_CAP) {
        let posets = all_posets(n)?;
        progress(&format!("n={n}: {} labeled posets", posets.len()));
        posets.par_iter().try_for_each(|p| oracle_one(p, tally))?;
    }
    progress(&format!("{trials} random posets with n<=9"));
    (0..trials).into_par_iter().try_for_each(|t| {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x0a0a_0000 ^ t as u64);
        let n = rng.gen_range(1..=9);
        oracle_one(&random_poset_in(&mut rng, n, 0.1..0.6)?, tally)
    })
}

fn battery(max_n: usize, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    for n in 1..=max_n {
        let posets = all_posets(n)?;
        let profiles: Vec<Profile> = posets.par_iter().map(Profile::new).collect::<Result<_>>()?;
        progress(&format!("n={n}: {} labeled posets, all pairs, both modes", posets.len()));
        let keys: Vec<(u128, u128, u64)> = profiles.iter().map(fast_key).collect();
        profiles.par_iter().zip(&keys).for_each(|(p, &(pf, pm, pl))| {
            for (q, &(qf, qm, ql)) in profiles.iter().zip(&keys) {
                // Fast path: with neither support contained nor L(P) ⊆ L(Q), every
                // relation is false (positive coefficients force a positivity
                // failure outside the support), so no condition can be unsound
                // and every implication holds vacuously.
                if pm & !qm != 0 && pf & !qf != 0 && ql & !pl != 0 {
                    tally.pass(2);
                    continue;
                }
                for mode in [BatteryMode::FSupport, BatteryMode::MSupport] {
                    let r = compare_profiles(p, q, mode);
                    let ok = r.implications_hold() && r.unsound_conditions().is_empty();
                    tally.check(ok, || pair(format!("battery or implication failure\n{r}"), &p.poset, &q.poset));
                }
            }
        });
    }
    Ok(())
}

/// F- and M-supports as descent-mask bitsets and the less-than set as a
/// pair bitset, for the cheap pre-filter of the battery suite.
fn fast_key(p: &Profile) -> (u128, u128, u64) {
    let n = p.len();
    let lt = p.less_than.iter().fold(0u64, |acc, (a, b)| acc | 1u64 << ((a - 1) * n + b - 1));
    (support_bits(&p.f), support_bits(&p.m), lt)
}

/// F-support as a bitset indexed by descent mask; fine up to size 8.
fn support_bits(f: &QSymExpr) -> u128 {
    f.support().iter().fold(0u128, |acc, c| acc | 1u128 << (c.descent_mask() as u32))
}

/// Groups posets by (F-support, longest chain) and compares the distinct
/// groups, so the search stays feasible for all labeled posets of size 6.
fn longest_chain(max_n: usize, tally: &Tally, progress: &(dyn Fn(&str) + Sync)) -> Result<()> {
    for n in 1..=max_n.min(crate::generate::ALL_POSETS_CAP) {
        let posets = all_posets(n)?;
        let keyed: Vec<(u128, usize)> = posets
            .par_iter()
            .map(|p| Ok((support_bits(&enumerator_f(p)?), p.maximal_chain_edge_stats().max_length)))
            .collect::<Result<_>>()?;
        let mut groups: HashMap<(u128, usize), usize> = HashMap::new();
        for (i, key) in keyed.iter().enumerate() {
            groups.entry(*key).or_insert(i);
        }
        let reps: Vec<((u128, usize), usize)> = groups.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        progress(&format!("n={n}: {} posets in {} (support, height) classes", posets.len(), reps.len()));
        reps.par_iter().for_each(|&((sp, hp), ip)| {
            for &((sq, hq), iq) in &reps {
                let contained = sp & !sq == 0;
                tally.check(!contained || hp >= hq, || {
                    pair(
                        format!("supp_F(P) ⊆ supp_F(Q) but the longest chain of P has {hp} edges and of Q {hq}"),
                        &posets[ip],
                        &posets[iq],
                    )
                });
            }
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(_: &str) {}

    #[test]
    fn small_runs_pass() {
        let opts = VerifyOptions {
            max_k: Some(3),
            max_leaves: Some(1),
            max_n: Some(3),
            trials: Some(30),
            seed: 1,
            weak_spines_only: true,
        };
        for t in Theorem::ALL {
            let s = run(t, &opts, &quiet).unwrap();
            assert!(s.passed(), "{t}: {:?}", s.counterexamples.first().map(|c| c.to_string()));
            assert!(s.instances > 0, "{t}");
        }
    }

    #[test]
    fn caterpillar_suite_finds_strict_spine_failures() {
        let opts = VerifyOptions { max_k: Some(2), max_leaves: Some(1), ..Default::default() };
        let s = run(Theorem::Caterpillar, &opts, &quiet).unwrap();
        assert_eq!(s.failures, 2);
        assert!(s.counterexamples[0].description.starts_with("I(P)=([0,2]) spine=s I(Q)=([1,3]) spine=s"));
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.as_str().parse::<Theorem>().unwrap(), t);
        }
        assert!("k2".parse::<Theorem>().is_err());
    }

    #[test]
    fn counterexample_is_parseable() {
        let p = LabeledPoset::chain(2, crate::poset::EdgeKind::Strict);
        let c = pair("a\nb".into(), &p, &p);
        let parsed = crate::text::parse_posets(&c.to_string()).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].poset, p);
    }
}
