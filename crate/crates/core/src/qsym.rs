//! Compositions and sparse quasisymmetric expressions in the monomial (M)
//! and fundamental (F) bases.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::{bit, bits, Mask};

/// An ordered sequence of positive parts.
///
/// Compositions order first by number of parts and then lexicographically,
/// which fixes the order of terms in rendered expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<usize>);

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The set `S(α)` of proper partial sums.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`Composition::descent_set`] for compositions of `n`.
    pub fn from_descent_set(set: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::InvalidComposition(format!("{bad} is not in [1, {}]", n.saturating_sub(1))));
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &i in set {
            parts.push(i - prev);
            prev = i;
        }
        if n > 0 {
            parts.push(n - prev);
        }
        Ok(Composition(parts))
    }

    /// Descent set as a mask with bit `i - 1` standing for `i`.
    pub(crate) fn descent_mask(&self) -> Mask {
        let mut acc = 0;
        let mut m = 0;
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            m |= bit(acc - 1);
        }
        m
    }

    pub(crate) fn from_descent_mask(mask: Mask, n: usize) -> Self {
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut prev = 0;
        for i in bits(mask) {
            parts.push(i + 1 - prev);
            prev = i + 1;
        }
        if n > 0 {
            parts.push(n - prev);
        }
        Composition(parts)
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// The composition whose descent set is the complement of ours in
    /// `[n-1]`.
    pub fn complement(&self) -> Self {
        let n = self.size();
        if n == 0 {
            return self.clone();
        }
        let all = crate::poset::full_mask(n - 1);
        Self::from_descent_mask(all & !self.descent_mask(), n)
    }

    /// Dominance order: every prefix sum of `self` is at most the
    /// corresponding prefix sum of `other`, padding with zeros.
    pub fn dominated_by(&self, other: &Composition) -> Result<bool> {
        dominance_leq(self, other)
    }

    /// Sum of the `i` largest parts.
    pub fn largest_parts_sum(&self, i: usize) -> usize {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p.iter().take(i).sum()
    }

    /// All compositions of `n` in the canonical order.
    pub fn all(n: usize) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition(Vec::new())];
        }
        let mut out: Vec<Composition> = (0..1u64 << (n - 1)).map(|m| Self::from_descent_mask(m, n)).collect();
        out.sort();
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl From<&[usize]> for Composition {
    /// Panics on a zero part; intended for literals.
    fn from(parts: &[usize]) -> Self {
        Composition::new(parts.to_vec()).expect("composition parts must be positive")
    }
}

impl<const N: usize> From<[usize; N]> for Composition {
    fn from(parts: [usize; N]) -> Self {
        Composition::from(&parts[..])
    }
}

/// Composition of `n` recording the descents of a sequence of distinct,
/// totally ordered tokens.
pub fn descent_composition<T: Ord>(seq: &[T]) -> Result<Composition> {
    for i in 0..seq.len() {
        for j in 0..i {
            if seq[i] == seq[j] {
                return Err(Error::DuplicateToken(i + 1));
            }
        }
    }
    let mut parts = Vec::new();
    let mut run = 0;
    for (i, t) in seq.iter().enumerate() {
        run += 1;
        if i + 1 < seq.len() && *t > seq[i + 1] {
            parts.push(run);
            run = 0;
        }
    }
    if run > 0 {
        parts.push(run);
    }
    Ok(Composition(parts))
}

/// `S(α)` as a set.
pub fn subset_of(c: &Composition) -> BTreeSet<usize> {
    c.descent_set()
}

/// The composition of `n` with `S(α) = set`.
pub fn composition_of(set: &BTreeSet<usize>, n: usize) -> Result<Composition> {
    Composition::from_descent_set(set, n)
}

pub fn dominance_leq(a: &Composition, b: &Composition) -> Result<bool> {
    if a.size() != b.size() {
        return Err(Error::DegreeMismatch { left: a.size(), right: b.size() });
    }
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.0.get(i).copied().unwrap_or(0);
        sb += b.0.get(i).copied().unwrap_or(0);
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    F,
    M,
}

impl Basis {
    pub fn symbol(self) -> char {
        match self {
            Basis::F => 'F',
            Basis::M => 'M',
        }
    }
}

/// A homogeneous quasisymmetric function of degree `n`, stored as a sparse
/// map from compositions to nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymExpr {
    basis: Basis,
    n: usize,
    coeffs: BTreeMap<Composition, BigInt>,
}

impl QSymExpr {
    pub fn zero(basis: Basis, n: usize) -> Self {
        QSymExpr { basis, n, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<C: Into<BigInt>>(
        basis: Basis,
        n: usize,
        terms: impl IntoIterator<Item = (Composition, C)>,
    ) -> Result<Self> {
        let mut e = Self::zero(basis, n);
        for (c, k) in terms {
            e.add_term(c, k.into())?;
        }
        Ok(e)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, c: Composition, k: BigInt) -> Result<()> {
        if c.size() != self.n {
            return Err(Error::DegreeMismatch { left: self.n, right: c.size() });
        }
        if k.is_zero() {
            return Ok(());
        }
        let entry = self.coeffs.entry(c);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn coefficient(&self, c: &Composition) -> BigInt {
        self.coeffs.get(c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Composition> {
        self.coeffs.keys().cloned().collect()
    }

    /// Every stored coefficient is positive (the zero expression counts).
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|k| k.is_positive())
    }

    fn check_compatible(&self, other: &QSymExpr) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis.symbol(), found: other.basis.symbol() });
        }
        if self.n != other.n {
            return Err(Error::DegreeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &QSymExpr) -> Result<QSymExpr> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, k) in &other.coeffs {
            out.add_term(c.clone(), k.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSymExpr) -> Result<QSymExpr> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, k) in &other.coeffs {
            out.add_term(c.clone(), -k.clone())?;
        }
        Ok(out)
    }

    /// Applies a degree-preserving map to every composition.
    pub fn map_compositions(&self, f: impl Fn(&Composition) -> Composition) -> QSymExpr {
        let mut out = Self::zero(self.basis, self.n);
        for (c, k) in &self.coeffs {
            out.add_term(f(c), k.clone()).expect("map must preserve the degree");
        }
        out
    }

    /// Expands an F-basis expression in the M basis, using
    /// `F_α = Σ_{S(α) ⊆ T ⊆ [n-1]} M_T`.
    pub fn f_to_m(&self) -> Result<QSymExpr> {
        if self.basis != Basis::F {
            return Err(Error::BasisMismatch { expected: 'F', found: self.basis.symbol() });
        }
        let mut acc: BTreeMap<Mask, BigInt> = BTreeMap::new();
        let full = if self.n == 0 { 0 } else { crate::poset::full_mask(self.n - 1) };
        for (c, k) in &self.coeffs {
            let s = c.descent_mask();
            let free = full & !s;
            // all subsets of `free`, including the empty one
            let mut sub = free;
            loop {
                *acc.entry(s | sub).or_insert_with(BigInt::zero) += k;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        let mut out = Self::zero(Basis::M, self.n);
        for (m, k) in acc {
            out.add_term(Composition::from_descent_mask(m, self.n), k)?;
        }
        Ok(out)
    }
}

impl fmt::Display for QSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, k)) in self.coeffs.iter().enumerate() {
            let mag = k.abs();
            if i == 0 {
                if k.is_negative() {
                    f.write_str("-")?;
                }
            } else if k.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}{}", self.basis.symbol(), c)?;
        }
        Ok(())
    }
}

impl FromStr for QSymExpr {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g.
    /// `F[2,2] + 2*F[1,3] - M[...]`. The bare string `0` parses as the zero
    /// expression of degree 0 in the F basis.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { line: 1, msg };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero(Basis::F, 0));
        }
        if compact.is_empty() {
            return Err(err("empty expression".into()));
        }
        let mut terms = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i32;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err(format!("expected '+' or '-' at offset {pos}")));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = BigInt::one();
            if pos > start {
                coeff = compact[start..pos].parse().map_err(|_| err("bad coefficient".into()))?;
                if bytes.get(pos) != Some(&b'*') {
                    return Err(err(format!("expected '*' after coefficient at offset {pos}")));
                }
                pos += 1;
            }
            let basis = match bytes.get(pos) {
                Some(b'F') => Basis::F,
                Some(b'M') => Basis::M,
                _ => return Err(err(format!("expected basis symbol F or M at offset {pos}"))),
            };
            pos += 1;
            if bytes.get(pos) != Some(&b'[') {
                return Err(err(format!("expected '[' at offset {pos}")));
            }
            let close =
                compact[pos..].find(']').map(|i| pos + i).ok_or_else(|| err("unterminated composition".into()))?;
            let inner = &compact[pos + 1..close];
            let parts = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad part '{t}'"))))
                    .collect::<Result<Vec<_>>>()?
            };
            let comp = Composition::new(parts).map_err(|e| err(e.to_string()))?;
            pos = close + 1;
            terms.push((basis, comp, coeff * sign));
        }
        let (basis, n) = (terms[0].0, terms[0].1.size());
        let mut e = Self::zero(basis, n);
        for (b, c, k) in terms {
            if b != basis {
                return Err(err("mixed bases in one expression".into()));
            }
            e.add_term(c, k).map_err(|x| err(x.to_string()))?;
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn descent_compositions() {
        assert_eq!(descent_composition(&[1, 3, 2, 4]).unwrap(), c(&[2, 2]));
        assert_eq!(descent_composition(&[1, 2, 3, 4, 5]).unwrap(), c(&[5]));
        let pairs = [(1, 4), (1, 1), (3, 1), (1, 3), (3, 3), (1, 2), (3, 2), (3, 4), (2, 3), (2, 4), (2, 1), (2, 2)];
        assert_eq!(descent_composition(&pairs).unwrap(), c(&[1, 2, 2, 3, 2, 2]));
        assert_eq!(descent_composition(&[1, 2, 1]), Err(Error::DuplicateToken(3)));
        assert_eq!(descent_composition::<u8>(&[]).unwrap(), Composition::default());
    }

    #[test]
    fn subsets_and_compositions() {
        assert_eq!(subset_of(&c(&[2, 2])), BTreeSet::from([2]));
        assert!(subset_of(&c(&[5])).is_empty());
        assert_eq!(subset_of(&c(&[1, 1, 1, 1])), BTreeSet::from([1, 2, 3]));
        assert!(composition_of(&BTreeSet::from([4]), 4).is_err());
        assert!(composition_of(&BTreeSet::from([0]), 4).is_err());
        for n in 0..=10 {
            for comp in Composition::all(n) {
                assert_eq!(composition_of(&subset_of(&comp), n).unwrap(), comp);
                assert_eq!(Composition::from_descent_mask(comp.descent_mask(), n), comp);
            }
        }
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&c(&[2, 2]), &c(&[3, 1])).unwrap());
        assert!(!dominance_leq(&c(&[3, 1]), &c(&[2, 2])).unwrap());
        assert!(dominance_leq(&c(&[3, 1]), &c(&[3, 1])).unwrap());
        assert!(dominance_leq(&c(&[1, 1, 2]), &c(&[2, 2])).unwrap());
        assert!(dominance_leq(&c(&[2, 1]), &c(&[1])).is_err());
    }

    #[test]
    fn ordering_is_graded_then_lexicographic() {
        let all = Composition::all(4);
        let shown: Vec<String> = all.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["[4]", "[1,3]", "[2,2]", "[3,1]", "[1,1,2]", "[1,2,1]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn example_expansion() {
        let f: QSymExpr = "F[2,2] + F[3,1]".parse().unwrap();
        let m = f.f_to_m().unwrap();
        let expected: QSymExpr = "M[2,2] + M[3,1] + M[1,1,2] + M[1,2,1] + 2*M[2,1,1] + 2*M[1,1,1,1]".parse().unwrap();
        assert_eq!(m, expected);
        assert_eq!(
            m.support(),
            [c(&[2, 2]), c(&[3, 1]), c(&[1, 1, 2]), c(&[1, 2, 1]), c(&[2, 1, 1]), c(&[1, 1, 1, 1])].into()
        );
        assert!(m.f_to_m().is_err());
    }

    #[test]
    fn single_f_expansions() {
        for n in 1..=6 {
            let top = QSymExpr::from_terms(Basis::F, n, [(c(&[n]), 1)]).unwrap().f_to_m().unwrap();
            assert_eq!(top.support().len(), 1 << (n - 1));
            assert!(top.terms().all(|(_, k)| k.is_one()));
            let ones = vec![1; n];
            let bottom = QSymExpr::from_terms(Basis::F, n, [(c(&ones), 1)]).unwrap().f_to_m().unwrap();
            assert_eq!(bottom, QSymExpr::from_terms(Basis::M, n, [(c(&ones), 1)]).unwrap());
        }
    }

    #[test]
    fn subtraction_and_nonnegativity() {
        let e: QSymExpr = "F[2,2] + F[3,1]".parse().unwrap();
        let z = e.sub(&e).unwrap();
        assert!(z.is_zero() && z.is_nonneg());
        assert_eq!(z.to_string(), "0");
        let d = e.sub(&"F[2,2]".parse().unwrap()).unwrap();
        assert_eq!(d.to_string(), "F[3,1]");
        assert!(d.is_nonneg());
        let neg = "F[2,2]".parse::<QSymExpr>().unwrap().sub(&e).unwrap();
        assert_eq!(neg.to_string(), "-F[3,1]");
        assert!(!neg.is_nonneg());
        assert!(e.sub(&"M[4]".parse().unwrap()).is_err());
        assert!(e.sub(&"F[3]".parse().unwrap()).is_err());
    }

    #[test]
    fn rendering_and_parsing() {
        let e: QSymExpr = "-3*F[1,2] + F[3] + 12*F[2,1]".parse().unwrap();
        assert_eq!(e.to_string(), "F[3] - 3*F[1,2] + 12*F[2,1]");
        assert!("F[2,0]".parse::<QSymExpr>().is_err());
        assert!("F[2,1] + M[3]".parse::<QSymExpr>().is_err());
        assert!("F[2,1] + F[2]".parse::<QSymExpr>().is_err());
        assert!("2F[3]".parse::<QSymExpr>().is_err());
        assert!("".parse::<QSymExpr>().is_err());
    }

    #[test]
    fn dominance_maximum_of_a_single_f_is_itself() {
        for n in 1..=7 {
            for a in Composition::all(n) {
                let m = QSymExpr::from_terms(Basis::F, n, [(a.clone(), 1)]).unwrap().f_to_m().unwrap();
                assert!(m.coefficient(&a).is_one());
                for b in m.support() {
                    if b != a {
                        assert!(dominance_leq(&b, &a).unwrap() && !dominance_leq(&a, &b).unwrap());
                    }
                }
            }
        }
    }

    fn expr_strategy(n: usize) -> impl Strategy<Value = QSymExpr> {
        let comps = Composition::all(n);
        prop::collection::vec((0..comps.len(), -5i64..6), 0..8).prop_map(move |terms| {
            QSymExpr::from_terms(Basis::F, n, terms.into_iter().map(|(i, k)| (comps[i].clone(), k))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn f_to_m_is_linear((a, b) in (1usize..7).prop_flat_map(|n| (expr_strategy(n), expr_strategy(n)))) {
            let lhs = a.add(&b).unwrap().f_to_m().unwrap();
            let rhs = a.f_to_m().unwrap().add(&b.f_to_m().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_parse_round_trip(e in expr_strategy(5)) {
            if !e.is_zero() {
                prop_assert_eq!(e.to_string().parse::<QSymExpr>().unwrap(), e);
            }
        }
    }
}
