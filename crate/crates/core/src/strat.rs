//! Strong idempotents, idempotent stratifications and the gendo-symmetric,
//! Auslander-Gorenstein and ortho-symmetric tests.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Rat;
use crate::homology::{corner_modules, ext, dominant_dimension, global_dimension, injective_dimension, resolve, syzygy_period, tensor_homology, ext_vanishes};
use crate::invariants::{is_symmetric, simple_count};
use crate::linalg::{is_zero_vec, kernel_basis, Mat, Vector};
use crate::mirror::{find_bimodule_iso, Mirror};
use crate::module::{cover, is_module_iso, is_summand, syzygy_n, Module, Ring};
use crate::verdict::{Check, Dim, Verdict};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongReason {
    /// `e = 0` or `AeA = A`.
    Trivial,
    LeftProjective,
    RightProjective,
    /// `eA` has finite projective dimension over `eAe` and all Tor vanishes.
    FiniteTor,
    /// The syzygies of `eA` repeat and Tor vanishes over a full period.
    PeriodicTor,
}

impl StrongReason {
    pub fn name(&self) -> &'static str {
        match self {
            StrongReason::Trivial => "trivial",
            StrongReason::LeftProjective => "left-projective",
            StrongReason::RightProjective => "right-projective",
            StrongReason::FiniteTor => "finite-Tor",
            StrongReason::PeriodicTor => "periodic-Tor-closure",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongIdem {
    CertifiedStrong(StrongReason),
    /// `AeA` is `n`-idempotent; higher degrees were not examined.
    NIdempotentUpTo(usize),
    /// `AeA` is `(n − 1)`-idempotent but not `n`-idempotent.
    RefutedAt { n: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct StrongIdemVerdict {
    pub e: Vector,
    pub verdict: StrongIdem,
    /// `dim Tor_i^{eAe}(Ae, eA)` for the degrees computed (degree 0 first).
    pub tor: Vec<usize>,
    pub ideal_dim: usize,
}

impl StrongIdemVerdict {
    pub fn is_strong(&self) -> bool {
        matches!(self.verdict, StrongIdem::CertifiedStrong(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, StrongIdem::RefutedAt { .. })
    }

    /// Whether `AeA` is known to be `n`-idempotent.
    pub fn is_n_idempotent(&self, n: usize) -> Verdict<()> {
        match &self.verdict {
            StrongIdem::CertifiedStrong(_) => Verdict::Certified(()),
            StrongIdem::NIdempotentUpTo(m) if *m >= n => Verdict::Certified(()),
            StrongIdem::NIdempotentUpTo(m) => Verdict::UnknownBeyond(*m),
            StrongIdem::RefutedAt { n: r, reason } if *r <= n => Verdict::refuted_at(*r, reason.clone()),
            StrongIdem::RefutedAt { .. } => Verdict::Certified(()),
        }
    }
}

fn is_trivial(a: &Algebra, e: &[Rat]) -> Option<usize> {
    let ideal = a.ideal(&[e.to_vec()]);
    if is_zero_vec(e) || ideal.dim() == a.dim() {
        Some(ideal.dim())
    } else {
        None
    }
}

/// Reads the Tor table: the multiplication map is bijective when `Tor_0`
/// has the dimension of `AeA`, and `AeA` is `(i + 2)`-idempotent when in
/// addition `Tor_1, …, Tor_i` vanish.
fn read_tor(tor: &[usize], ideal_dim: usize) -> core::result::Result<usize, (usize, String)> {
    if tor[0] != ideal_dim {
        return Err((2, format!("Ae⊗eA has dimension {} but AeA has dimension {}", tor[0], ideal_dim)));
    }
    for (i, d) in tor.iter().enumerate().skip(1) {
        if *d != 0 {
            return Err((i + 2, format!("dim Tor_{} = {}", i, d)));
        }
    }
    Ok(tor.len() + 1)
}

/// Whether `AeA` is `n`-idempotent.
pub fn n_idempotent(a: &Algebra, e: &[Rat], n: usize) -> Result<StrongIdemVerdict> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if let Some(d) = is_trivial(a, e) {
        return Ok(StrongIdemVerdict { e: e.to_vec(), verdict: StrongIdem::CertifiedStrong(StrongReason::Trivial), tor: Vec::new(), ideal_dim: d });
    }
    let ideal_dim = a.ideal(&[e.to_vec()]).dim();
    if n == 1 {
        // AeA ∋ e, so (AeA)² = AeA
        return Ok(StrongIdemVerdict { e: e.to_vec(), verdict: StrongIdem::NIdempotentUpTo(1), tor: Vec::new(), ideal_dim });
    }
    let (right, left) = corner_modules(a, e)?;
    let tor = tensor_homology(&resolve(&left, n - 1)?, &right, n - 2)?;
    let verdict = match read_tor(&tor, ideal_dim) {
        Ok(_) => StrongIdem::NIdempotentUpTo(n),
        Err((m, reason)) => StrongIdem::RefutedAt { n: m, reason },
    };
    Ok(StrongIdemVerdict { e: e.to_vec(), verdict, tor, ideal_dim })
}

/// Tries one-sided projectivity of `AeA`, then a finite or periodic
/// resolution of `eA` over `eAe`, then the Tor table up to `cap`.
pub fn strong_idempotent(a: &Algebra, e: &[Rat], cap: usize, trials: usize, seed: u64) -> Result<StrongIdemVerdict> {
    if let Some(d) = is_trivial(a, e) {
        return Ok(StrongIdemVerdict { e: e.to_vec(), verdict: StrongIdem::CertifiedStrong(StrongReason::Trivial), tor: Vec::new(), ideal_dim: d });
    }
    let ideal = a.ideal(&[e.to_vec()]);
    let ideal_dim = ideal.dim();
    if let Ok(ring) = Ring::new(a.clone()) {
        if Module::regular(&ring).restrict_to(&ideal).is_projective()? {
            return Ok(StrongIdemVerdict { e: e.to_vec(), verdict: StrongIdem::CertifiedStrong(StrongReason::LeftProjective), tor: Vec::new(), ideal_dim });
        }
        let op = ring.opposite()?;
        if Module::regular(&op).restrict_to(&ideal).is_projective()? {
            return Ok(StrongIdemVerdict { e: e.to_vec(), verdict: StrongIdem::CertifiedStrong(StrongReason::RightProjective), tor: Vec::new(), ideal_dim });
        }
    }
    let (right, left) = corner_modules(a, e)?;
    let res = resolve(&left, cap + 1)?;
    let tor = tensor_homology(&res, &right, cap)?;
    let verdict = match read_tor(&tor, ideal_dim) {
        Err((m, reason)) => StrongIdem::RefutedAt { n: m, reason },
        Ok(_) => {
            if res.pd().is_some_and(|d| d <= cap) {
                StrongIdem::CertifiedStrong(StrongReason::FiniteTor)
            } else if matches!(syzygy_period(&res, trials, seed)?, Some((_, q)) if q <= cap) {
                // Tor_i for i > p repeats with period q − p
                StrongIdem::CertifiedStrong(StrongReason::PeriodicTor)
            } else {
                StrongIdem::NIdempotentUpTo(cap + 2)
            }
        }
    };
    Ok(StrongIdemVerdict { e: e.to_vec(), verdict, tor, ideal_dim })
}

/// `gAg / gAfAg` for family subsets `f ⊂ g`, with the family of the result
/// labelled by the original indices of `g ∖ f`.
pub fn subquotient(a: &Algebra, g: &[usize], f: &[usize]) -> Result<(Algebra, Vec<usize>)> {
    let gv = a.family_sum(g);
    let c = a.corner(&gv)?;
    let fam = c.family.clone().ok_or_else(|| Error::Precondition("g is not a family sum".into()))?;
    if f.is_empty() {
        return Ok((c.algebra, fam));
    }
    let fv = c.space.coords_unchecked(&a.family_sum(f));
    let ideal = c.algebra.ideal(&[fv]);
    let q = c.algebra.quotient(&ideal, &format!("{}/(f)", c.algebra.provenance))?;
    let labels: Vec<usize> = q.family_source.iter().map(|i| fam[*i]).collect();
    let mut rest: Vec<usize> = g.iter().copied().filter(|i| !f.contains(i)).collect();
    rest.sort_unstable();
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted != rest {
        return Err(Error::verification("subquotient", "family members of g ∖ f did not survive the quotient"));
    }
    Ok((q.algebra, labels))
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// A stratification witness: family subsets `e₀, …, e_n` with the verdict of
/// each step `e_{≤i}` in `e_{≤(i+1)} A e_{≤(i+1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub parts: Vec<Vec<usize>>,
}

impl Stratification {
    pub fn len(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.parts.len() <= 1
    }
}

#[derive(Clone, Debug)]
pub struct StratifiedDimension {
    pub lo: usize,
    pub hi: usize,
    pub simples: usize,
    /// Chain realizing `lo`.
    pub witness: Stratification,
    /// Number of subquotient states visited.
    pub states: usize,
}

impl StratifiedDimension {
    pub fn ratio(&self) -> (Rat, Rat) {
        let n = self.simples as i64;
        (Rat::new(self.lo as i64, n), Rat::new(self.hi as i64, n))
    }
}

#[derive(Clone, Debug)]
struct Node {
    lo: usize,
    hi: usize,
    chain: Vec<u32>,
}

struct Search<'a> {
    a: &'a Algebra,
    cap: usize,
    trials: usize,
    seed: u64,
    memo: BTreeMap<(u32, u32), Node>,
}

impl Search<'_> {
    fn node(&mut self, g: u32, f: u32) -> Result<Node> {
        if let Some(n) = self.memo.get(&(g, f)) {
            return Ok(n.clone());
        }
        let free = g & !f;
        let mut best = Node { lo: 0, hi: 0, chain: vec![free] };
        let count = free.count_ones();
        if count > 1 {
            let (b, labels) = subquotient(self.a, &bits(g), &bits(f))?;
            let pos: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
            // nonempty proper subsets of the free part
            let mut sub = (free - 1) & free;
            while sub != 0 {
                let e = b.family_sum(&bits(sub).iter().map(|i| pos[i]).collect::<Vec<_>>());
                let v = strong_idempotent(&b, &e, self.cap, self.trials, self.seed)?;
                let certified = v.is_strong();
                let possible = certified || matches!(v.verdict, StrongIdem::NIdempotentUpTo(_));
                if possible {
                    let left = self.node(sub | f, f)?;
                    let right = self.node(g, f | sub)?;
                    let hi = left.hi + right.hi + 1;
                    best.hi = best.hi.max(hi);
                    if certified {
                        let lo = left.lo + right.lo + 1;
                        if lo > best.lo {
                            best.lo = lo;
                            best.chain = left.chain.iter().chain(&right.chain).copied().collect();
                        }
                    }
                }
                sub = (sub - 1) & free;
            }
        }
        best.hi = best.hi.min(count as usize - 1).max(best.lo);
        self.memo.insert((g, f), best.clone());
        Ok(best)
    }
}

/// First degree `i ≤ max` at which `Ext^i_{A/AeA}(S, T)` and `Ext^i_A(S, T)`
/// differ in dimension for simple `A/AeA`-modules `S, T`; `AeA` is then not
/// `i`-idempotent. `None` when they agree up to `max`.
pub fn ext_comparison_degree(a: &Algebra, e: &[Rat], max: usize) -> Result<Option<usize>> {
    let ideal = a.ideal(&[e.to_vec()]);
    if ideal.dim() == a.dim() {
        return Ok(None);
    }
    let q = a.quotient(&ideal, "A/AeA")?;
    let ring_a = Ring::new(a.clone())?;
    let ring_q = Ring::new(q.algebra.clone())?;
    let n = ring_q.vertices();
    let mut first: Option<usize> = None;
    for x in 0..n {
        for y in 0..n {
            let over_q = ext(&Module::simple(&ring_q, x), &Module::simple(&ring_q, y), max)?;
            let over_a = ext(&Module::simple(&ring_a, q.family_source[x]), &Module::simple(&ring_a, q.family_source[y]), max)?;
            if let Some(i) = (1..=max).find(|i| over_q.get(*i) != over_a.get(*i)) {
                first = Some(first.map_or(i, |f| f.min(i)));
            }
        }
    }
    Ok(first)
}

/// Default limit on the number of simples for the exhaustive search.
pub const SD_LIMIT: usize = 12;

/// Stratified dimension as a certified interval, by exhaustive recursion
/// over subquotients `gAg/gAfAg` indexed by family subsets.
pub fn stratified_dimension(a: &Algebra, cap: usize, trials: usize, seed: u64, limit: usize) -> Result<StratifiedDimension> {
    let n = a.idems.len();
    if n > limit.min(31) {
        return Err(Error::Limit(format!("{} simples exceed the search limit {}", n, limit)));
    }
    if a.family_sum(&(0..n).collect::<Vec<_>>()) != a.unit {
        return Err(Error::Precondition("the family does not sum to the unit".into()));
    }
    let simples = simple_count(a)?;
    if simples != n {
        return Err(Error::Precondition("the family is not primitive".into()));
    }
    let mut s = Search { a, cap, trials, seed, memo: BTreeMap::new() };
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let root = s.node(all, 0)?;
    Ok(StratifiedDimension {
        lo: root.lo,
        hi: root.hi,
        simples,
        witness: Stratification { parts: root.chain.iter().map(|m| bits(*m)).collect() },
        states: s.memo.len(),
    })
}

/// Re-verifies a stratification witness against conditions (a) and (b).
pub fn check_stratification(a: &Algebra, s: &Stratification, cap: usize, trials: usize, seed: u64) -> Result<bool> {
    let all: Vec<usize> = s.parts.iter().flatten().copied().collect();
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() || sorted != (0..a.idems.len()).collect::<Vec<_>>() {
        return Ok(false);
    }
    let mut prefix: Vec<usize> = Vec::new();
    for i in 0..s.parts.len().saturating_sub(1) {
        prefix.extend(&s.parts[i]);
        let mut next = prefix.clone();
        next.extend(&s.parts[i + 1]);
        let ideal = a.ideal(&[a.family_sum(&prefix)]);
        let bigger = a.ideal(&[a.family_sum(&next)]);
        if bigger.dim() <= ideal.dim() {
            return Ok(false);
        }
        let (b, labels) = subquotient(a, &next, &[])?;
        let pos: Vec<usize> = prefix.iter().map(|v| labels.iter().position(|l| l == v).unwrap()).collect();
        if !strong_idempotent(&b, &b.family_sum(&pos), cap, trials, seed)?.is_strong() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A certified gendo-symmetric structure.
#[derive(Clone, Debug)]
pub struct GendoWitness {
    /// Family members `w` with `Aε_w` projective-injective.
    pub subset: Vec<usize>,
    pub e: Vector,
    /// `ι_e`: the functional on `A` giving `eA ≅ D(Ae)`.
    pub iota: Vector,
    pub dominant: Dim,
}

/// Decides whether `A` is gendo-symmetric through the idempotent carrying
/// the projective-injective summands.
pub fn gendo_symmetric(a: &Algebra, cap: usize, trials: usize, seed: u64) -> Result<Verdict<GendoWitness>> {
    let ring = Ring::new(a.clone())?;
    let op = ring.opposite()?;
    let mut subset = Vec::new();
    for i in 0..ring.vertices() {
        let inj = Module::injective(&ring, &op, i)?;
        let c = cover(&inj)?;
        if c.vertices.len() == 1 && c.projective_dim() == inj.dim {
            subset.push(c.vertices[0]);
        }
    }
    subset.sort_unstable();
    subset.dedup();
    if subset.is_empty() {
        return Ok(Verdict::refuted("no indecomposable projective module is injective"));
    }
    let e = a.family_sum(&subset);
    if !is_faithful(a, &e) {
        return Ok(Verdict::refuted("the projective-injective module Ae is not faithful"));
    }
    let dm = dominant_dimension(&ring, cap)?;
    match dm.at_least(2) {
        Verdict::Certified(()) => {}
        Verdict::Refuted(r) => return Ok(Verdict::Refuted(r)),
        Verdict::UnknownBeyond(c) => return Ok(Verdict::UnknownBeyond(c)),
    }
    match find_bimodule_iso(a, &e, trials, seed)? {
        Verdict::Certified(iota) => Ok(Verdict::Certified(GendoWitness { subset, e, iota, dominant: dm.lower_bound() })),
        Verdict::Refuted(r) => Ok(Verdict::Refuted(r)),
        Verdict::UnknownBeyond(c) => Ok(Verdict::UnknownBeyond(c)),
    }
}

/// `x·Ae = 0` only for `x = 0`.
pub fn is_faithful(a: &Algebra, e: &[Rat]) -> bool {
    let ae = a.sandwich(&a.unit, e);
    let mut rows = Vec::new();
    for y in &ae.basis {
        rows.extend(a.right_matrix(y).row_vecs());
    }
    kernel_basis(a.field, &Mat::from_rows(a.dim(), &rows)).is_empty()
}

/// `id(_AA) ≤ n + 1 ≤ dm(A)`.
pub fn minimal_auslander_gorenstein(ring: &Arc<Ring>, n: usize, cap: usize) -> Result<Verdict<()>> {
    let id = injective_dimension(ring, cap)?;
    match id {
        Verdict::Certified(d) if d > n + 1 => return Ok(Verdict::refuted_at(d, format!("id(A) = {} > {}", d, n + 1))),
        Verdict::Certified(_) => {}
        Verdict::Refuted(r) => return Ok(Verdict::Refuted(r)),
        Verdict::UnknownBeyond(c) => return Ok(Verdict::UnknownBeyond(c)),
    }
    Ok(dominant_dimension(ring, cap)?.at_least(n + 1))
}

/// `gd(A) ≤ n + 1 ≤ dm(A)`.
pub fn n_auslander(ring: &Arc<Ring>, n: usize, cap: usize, trials: usize, seed: u64) -> Result<Verdict<()>> {
    match global_dimension(ring, cap, trials, seed)? {
        Verdict::Certified(Dim::Finite(d)) if d <= n + 1 => {}
        Verdict::Certified(d) => return Ok(Verdict::refuted(format!("gd(A) = {} > {}", d, n + 1))),
        Verdict::Refuted(r) => return Ok(Verdict::Refuted(r)),
        Verdict::UnknownBeyond(c) => return Ok(Verdict::UnknownBeyond(c)),
    }
    Ok(dominant_dimension(ring, cap)?.at_least(n + 1))
}

/// `Λ ⊕ N` is `m`-ortho-symmetric: `N` is `m`-rigid and `Ω^{m+2}(N) ≅ N`.
pub fn ortho_symmetric(n: &Module, m: usize, trials: usize, seed: u64) -> Result<Verdict<()>> {
    let ring = &n.ring;
    if !is_symmetric(&ring.alg, trials, seed).is_certified() {
        return Err(Error::Precondition("the algebra is not certified symmetric".into()));
    }
    for i in 0..ring.vertices() {
        if is_summand(&Module::projective(ring, i), n)? {
            return Err(Error::Precondition(format!("N has the projective summand P{}", i)));
        }
    }
    match ext_vanishes(n, n, m)? {
        Verdict::Certified(()) => {}
        other => return Ok(other),
    }
    let om = syzygy_n(n, m + 2)?;
    Ok(match is_module_iso(&om, n, trials, seed)? {
        Verdict::Certified(_) => Verdict::Certified(()),
        Verdict::Refuted(r) => Verdict::refuted_at(m + 2, format!("Ω^{}(N) is not isomorphic to N: {}", m + 2, r.reason)),
        Verdict::UnknownBeyond(c) => Verdict::UnknownBeyond(c),
    })
}

/// `I` and `J` of a mirror are 2-idempotent, and `I` is `(n + 2)`-idempotent
/// exactly when `Tor_i^{eAe}(Ae, eA) = 0` for `1 ≤ i ≤ n`.
pub fn idempotent_ideal_checks(m: &Mirror, n: usize) -> Result<Vec<Check>> {
    let r = &m.algebra;
    let ebar = m.ebar.as_ref().ok_or_else(|| Error::Precondition("ē needs an invertible level".into()))?;
    let e_r = m.embed_a(&m.tensor.e);
    let j_gen = r.sub(&e_r, ebar);
    let mut out = Vec::new();
    for (name, g) in [("I", ebar.clone()), ("J", j_gen)] {
        let v = n_idempotent(r, &g, 2)?;
        out.push(Check::new(format!("{} is 2-idempotent", name), v.is_n_idempotent(2).is_certified(), format!("{:?}", v.verdict)));
    }
    let (tor_a, _) = crate::homology::tor_corner(&m.source, &m.tensor.e, n)?;
    for j in 1..=n {
        let lhs = n_idempotent(r, ebar, j + 2)?.is_n_idempotent(j + 2).is_certified();
        let rhs = tor_a[1..=j].iter().all(|d| *d == 0);
        out.push(Check::new(format!("I is {}-idempotent iff Tor_1..{} vanish", j + 2, j), lhs == rhs, format!("{} vs {}", lhs, rhs)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::dual_numbers;
    use crate::mirror::mirror_at;
    use crate::mirror::tests::f2;
    use crate::module::tests::{a2_pres, dual_ring, ring_of};
    use crate::rewrite::algebra_of;

    fn a2() -> Algebra {
        algebra_of(&a2_pres(), 20).unwrap().1.algebra
    }

    #[test]
    fn strong_on_a2() {
        let a = a2();
        let v = strong_idempotent(&a, &a.idems[1], 5, 10, 0).unwrap();
        assert_eq!(v.verdict, StrongIdem::CertifiedStrong(StrongReason::LeftProjective));
        assert!(strong_idempotent(&a, &a.unit, 5, 10, 0).unwrap().verdict == StrongIdem::CertifiedStrong(StrongReason::Trivial));
        assert_eq!(n_idempotent(&a, &a.idems[0], 4).unwrap().verdict, StrongIdem::NIdempotentUpTo(4));
    }

    #[test]
    fn sd_small_cases() {
        let d = stratified_dimension(&dual_numbers(), 5, 10, 0, SD_LIMIT).unwrap();
        assert_eq!((d.lo, d.hi), (0, 0));
        let h = stratified_dimension(&a2(), 5, 10, 0, SD_LIMIT).unwrap();
        assert_eq!((h.lo, h.hi), (1, 1));
        assert_eq!(h.ratio(), (Rat::new(1, 2), Rat::new(1, 2)));
        assert!(check_stratification(&a2(), &h.witness, 5, 10, 0).unwrap());
        let dd = dual_numbers().direct_product(&dual_numbers()).unwrap();
        let p = stratified_dimension(&dd, 5, 10, 0, SD_LIMIT).unwrap();
        assert_eq!((p.lo, p.hi), (1, 1));
    }

    #[test]
    fn sd_of_split_semisimple() {
        let k = crate::field::Field::Rationals;
        let one = Algebra::new(k, vec!["1".into()], vec![vec![(0, Rat::ONE)]], vec![Rat::ONE], vec![vec![Rat::ONE]], "k").unwrap();
        let k3 = one.direct_product(&one).unwrap().direct_product(&one).unwrap();
        let s = stratified_dimension(&k3, 5, 10, 0, SD_LIMIT).unwrap();
        assert_eq!((s.lo, s.hi), (2, 2));
        assert_eq!(s.ratio().0, Rat::new(2, 3));
    }

    #[test]
    fn mirror_ideal_i_is_exactly_two_idempotent() {
        let a = f2();
        let m = mirror_at(&a, &a.idems[0]).unwrap();
        let ebar = m.ebar.clone().unwrap();
        let v = n_idempotent(&m.algebra, &ebar, 2).unwrap();
        assert_eq!(v.verdict, StrongIdem::NIdempotentUpTo(2));
        let v = strong_idempotent(&m.algebra, &ebar, 4, 10, 0).unwrap();
        assert!(matches!(v.verdict, StrongIdem::RefutedAt { n: 3, .. }), "{:?}", v.verdict);
        for c in idempotent_ideal_checks(&m, 3).unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(ext_comparison_degree(&m.algebra, &ebar, 5).unwrap(), Some(3));
        let j = m.algebra.sub(&m.embed_a(&m.tensor.e), &ebar);
        assert_eq!(ext_comparison_degree(&m.algebra, &j, 5).unwrap(), Some(3));
        assert_eq!(ext_comparison_degree(&a2(), &a2().idems[1], 5).unwrap(), None);
    }

    #[test]
    fn corner_inherits_strong() {
        // e strong in A and e ≤ f ⇒ e strong in fAf
        let a = algebra_of(&crate::rewrite::tests::example1(), 20).unwrap().1.algebra;
        let n = a.idems.len();
        for em in 1u32..(1 << n) - 1 {
            let e = a.family_sum(&bits(em));
            if !strong_idempotent(&a, &e, 4, 10, 0).unwrap().is_strong() {
                continue;
            }
            for extra in 0..n {
                let fm = em | 1 << extra;
                let (b, labels) = subquotient(&a, &bits(fm), &[]).unwrap();
                let pos: Vec<usize> = bits(em).iter().map(|v| labels.iter().position(|l| l == v).unwrap()).collect();
                assert!(strong_idempotent(&b, &b.family_sum(&pos), 4, 10, 0).unwrap().is_strong());
            }
        }
    }

    #[test]
    fn gendo() {
        let a = f2();
        let w = gendo_symmetric(&a, 6, 20, 0).unwrap();
        let w = w.certified().expect("F2 is gendo-symmetric");
        assert_eq!(w.subset, vec![0]);
        assert!(gendo_symmetric(&a2(), 6, 20, 0).unwrap().is_refuted());
        let d = gendo_symmetric(&dual_numbers(), 6, 20, 0).unwrap();
        assert_eq!(d.certified().unwrap().subset, vec![0]);
    }

    #[test]
    fn auslander_conditions() {
        let f = Ring::new(f2()).unwrap();
        assert!(n_auslander(&f, 1, 6, 10, 0).unwrap().is_certified());
        assert!(n_auslander(&f, 2, 6, 10, 0).unwrap().is_refuted());
        assert!(minimal_auslander_gorenstein(&f, 1, 6).unwrap().is_certified());
        let d = dual_ring();
        assert!(minimal_auslander_gorenstein(&d, 3, 6).unwrap().is_certified());
        assert!(n_auslander(&d, 0, 6, 10, 0).unwrap().is_refuted());
    }

    #[test]
    fn ortho() {
        let r = dual_ring();
        let s = Module::simple(&r, 0);
        assert!(ortho_symmetric(&s, 0, 10, 0).unwrap().is_certified());
        assert!(ortho_symmetric(&s, 1, 10, 0).unwrap().is_refuted());
        assert!(ortho_symmetric(&Module::regular(&r), 0, 10, 0).is_err());
        let _ = ring_of;
    }
}
