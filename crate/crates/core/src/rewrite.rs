//! Noncommutative rewriting for path algebras with relations.
//!
//! Paths are ordered degree-lexicographically by arrow declaration order.
//! Completion resolves overlaps up to a degree cap; the system is declared
//! complete only if every overlap resolved and the set of irreducible paths
//! is finite below the cap.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::{unit_vec, zero_vec, Sparse, Subspace, Vector};
use crate::quiver::{combo_add, Combo, Path, Presentation, Quiver};
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Rules beyond this count abort completion as incomplete.
const MAX_RULES: usize = 50_000;
/// Irreducible paths beyond this count abort enumeration as incomplete.
const MAX_NORMAL_PATHS: usize = 200_000;

/// A rewrite rule `lhs → rhs` with `rhs` strictly below `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Path,
    pub rhs: Combo,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub field: Field,
    pub quiver: Quiver,
    pub rules: Vec<Rule>,
    pub complete: bool,
    pub degree_cap: usize,
    /// Why the system is incomplete.
    pub reason: Option<String>,
    index: BTreeMap<Vec<usize>, usize>,
    lengths: BTreeSet<usize>,
    normal: Vec<Path>,
}

struct RuleSet<'q> {
    k: Field,
    q: &'q Quiver,
    rules: Vec<Option<Rule>>,
    index: BTreeMap<Vec<usize>, usize>,
    lengths: BTreeMap<usize, usize>,
}

impl<'q> RuleSet<'q> {
    fn new(k: Field, q: &'q Quiver) -> Self {
        RuleSet { k, q, rules: Vec::new(), index: BTreeMap::new(), lengths: BTreeMap::new() }
    }

    fn find(&self, p: &Path) -> Option<(usize, usize)> {
        find_match(&self.index, self.lengths.keys().copied(), p)
    }

    fn reduce(&self, combo: Combo) -> Combo {
        reduce_with(self.k, self.q, combo, |p| self.find(p).map(|(i, r)| (i, self.rules[r].as_ref().unwrap())))
    }

    fn insert(&mut self, rule: Rule) -> usize {
        let id = self.rules.len();
        self.index.insert(rule.lhs.arrows.clone(), id);
        *self.lengths.entry(rule.lhs.len()).or_insert(0) += 1;
        self.rules.push(Some(rule));
        id
    }

    fn remove(&mut self, id: usize) -> Rule {
        let r = self.rules[id].take().unwrap();
        self.index.remove(&r.lhs.arrows);
        let l = r.lhs.len();
        let c = self.lengths.get_mut(&l).unwrap();
        *c -= 1;
        if *c == 0 {
            self.lengths.remove(&l);
        }
        r
    }

    fn live(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules.iter().enumerate().filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }
}

fn find_match<I: Iterator<Item = usize>>(index: &BTreeMap<Vec<usize>, usize>, lengths: I, p: &Path) -> Option<(usize, usize)> {
    let w = &p.arrows;
    for l in lengths {
        if l > w.len() {
            break;
        }
        for i in 0..=w.len() - l {
            if let Some(r) = index.get(&w[i..i + l]) {
                return Some((i, *r));
            }
        }
    }
    None
}

fn reduce_with<'a, F: Fn(&Path) -> Option<(usize, &'a Rule)>>(k: Field, q: &Quiver, combo: Combo, find: F) -> Combo {
    let mut work = combo;
    let mut out = Combo::new();
    while let Some((p, c)) = work.pop_last() {
        match find(&p) {
            Some((i, rule)) => {
                let u = p.slice(q, 0, i);
                let v = p.slice(q, i + rule.lhs.len(), p.len());
                for (t, d) in &rule.rhs {
                    let w = u.concat(t).and_then(|x| x.concat(&v)).expect("rule terms share endpoints");
                    combo_add(k, &mut work, w, &k.mul(&c, d));
                }
            }
            None => {
                out.insert(p, c);
            }
        }
    }
    out
}

/// Multiplies every path of a combination on the left by `u` and on the right by `v`.
fn sandwich(k: Field, u: &Path, c: &Combo, v: &Path) -> Combo {
    let mut out = Combo::new();
    for (p, a) in c {
        let w = u.concat(p).and_then(|x| x.concat(v)).expect("overlap paths compose");
        combo_add(k, &mut out, w, a);
    }
    out
}

fn rule_combo(k: Field, r: &Rule) -> Combo {
    let mut c = Combo::new();
    c.insert(r.lhs.clone(), Rat::ONE);
    for (p, a) in &r.rhs {
        combo_add(k, &mut c, p.clone(), &k.neg(a));
    }
    c
}

/// S-polynomials for overlaps where a proper suffix of `f.lhs` is a prefix of `g.lhs`.
fn overlaps(k: Field, q: &Quiver, f: &Rule, g: &Rule, cap: usize, truncated: &mut bool) -> Vec<Combo> {
    let u = &f.lhs.arrows;
    let v = &g.lhs.arrows;
    let mut out = Vec::new();
    for len in 1..u.len().min(v.len()) {
        if u[u.len() - len..] != v[..len] {
            continue;
        }
        if u.len() + v.len() - len > cap {
            *truncated = true;
            continue;
        }
        let v_tail = g.lhs.slice(q, len, v.len());
        let u_head = f.lhs.slice(q, 0, u.len() - len);
        let trivial_l = q.trivial(f.lhs.source);
        let trivial_r = q.trivial(g.lhs.target);
        // f·v_tail − u_head·g, where f and g are written as lhs − rhs
        let mut s = sandwich(k, &trivial_l, &rule_combo(k, f), &v_tail);
        for (p, a) in sandwich(k, &u_head, &rule_combo(k, g), &trivial_r) {
            combo_add(k, &mut s, p, &k.neg(&a));
        }
        out.push(s);
    }
    out
}

/// Runs overlap completion on the relations of `pres`.
pub fn complete_rewrite(pres: &Presentation, degree_cap: usize) -> RewriteSystem {
    let k = pres.field;
    let q = &pres.quiver;
    let mut rs = RuleSet::new(k, q);
    let mut reason: Option<String> = None;
    let max_rel = pres.relations.iter().flat_map(|r| r.terms.iter().map(|(_, p)| p.len())).max().unwrap_or(0);
    if degree_cap < max_rel {
        reason = Some(format!("degree cap {} is below the relation degree {}", degree_cap, max_rel));
    }
    let mut pending: VecDeque<Combo> = pres.relations.iter().map(|r| r.combo(k)).collect();
    let mut truncated = false;
    'outer: while reason.is_none() {
        while let Some(f) = pending.pop_front() {
            let r = rs.reduce(f);
            let (lead, lc) = match r.last_key_value() {
                Some((p, c)) => (p.clone(), c.clone()),
                None => continue,
            };
            if lead.len() >= degree_cap {
                reason = Some(format!("a rule of degree {} reaches the degree cap", lead.len()));
                break 'outer;
            }
            let inv = k.inv(&lc).expect("nonzero leading coefficient");
            let mut rhs = Combo::new();
            for (p, c) in r.iter() {
                if *p != lead {
                    combo_add(k, &mut rhs, p.clone(), &k.neg(&k.mul(c, &inv)));
                }
            }
            let rule = Rule { lhs: lead, rhs };
            // rules whose left side contains the new one are re-queued
            let divisible: Vec<usize> = rs
                .live()
                .filter(|(_, old)| contains_subword(&old.lhs.arrows, &rule.lhs.arrows))
                .map(|(i, _)| i)
                .collect();
            for i in divisible {
                let old = rs.remove(i);
                pending.push_back(rule_combo(k, &old));
            }
            let id = rs.insert(rule);
            let new = rs.rules[id].clone().unwrap();
            let mut fresh = Vec::new();
            for (_, g) in rs.live() {
                fresh.extend(overlaps(k, q, &new, g, degree_cap, &mut truncated));
                if g.lhs != new.lhs {
                    fresh.extend(overlaps(k, q, g, &new, degree_cap, &mut truncated));
                }
            }
            pending.extend(fresh);
            if rs.index.len() > MAX_RULES {
                reason = Some(format!("more than {} rules", MAX_RULES));
                break 'outer;
            }
        }
        // tail-reduce, then confirm that every overlap resolves
        let ids: Vec<usize> = rs.live().map(|(i, _)| i).collect();
        for i in &ids {
            let rhs = rs.rules[*i].as_ref().unwrap().rhs.clone();
            let red = rs.reduce(rhs);
            rs.rules[*i].as_mut().unwrap().rhs = red;
        }
        let live: Vec<Rule> = rs.live().map(|(_, r)| r.clone()).collect();
        for f in &live {
            for g in &live {
                for s in overlaps(k, q, f, g, degree_cap, &mut truncated) {
                    let red = rs.reduce(s);
                    if !red.is_empty() {
                        pending.push_back(red);
                    }
                }
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    if reason.is_none() && truncated {
        reason = Some(format!("overlaps beyond degree {} were not resolved", degree_cap));
    }
    let mut rules: Vec<Rule> = rs.live().map(|(_, r)| r.clone()).collect();
    rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    let index: BTreeMap<Vec<usize>, usize> = rules.iter().enumerate().map(|(i, r)| (r.lhs.arrows.clone(), i)).collect();
    let lengths: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
    let mut sys = RewriteSystem {
        field: k,
        quiver: q.clone(),
        rules,
        complete: false,
        degree_cap,
        reason,
        index,
        lengths,
        normal: Vec::new(),
    };
    if sys.reason.is_none() {
        match sys.enumerate_normal() {
            Ok(paths) => {
                sys.normal = paths;
                sys.complete = true;
            }
            Err(why) => sys.reason = Some(why),
        }
    }
    sys
}

fn contains_subword(w: &[usize], u: &[usize]) -> bool {
    u.len() <= w.len() && w.windows(u.len()).any(|x| x == u)
}

impl RewriteSystem {
    fn find(&self, p: &Path) -> Option<(usize, usize)> {
        find_match(&self.index, self.lengths.iter().copied(), p)
    }

    pub fn is_reducible(&self, p: &Path) -> bool {
        self.find(p).is_some()
    }

    fn ensure_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::Incomplete(self.reason.clone().unwrap_or_else(|| "rewriting system is not complete".into())))
        }
    }

    /// Canonical representative of a combination modulo the relations.
    pub fn normal_form(&self, combo: &Combo) -> Result<Combo> {
        self.ensure_complete()?;
        Ok(self.reduce(combo.clone()))
    }

    fn reduce(&self, combo: Combo) -> Combo {
        reduce_with(self.field, &self.quiver, combo, |p| self.find(p).map(|(i, r)| (i, &self.rules[r])))
    }

    pub fn normal_form_path(&self, p: &Path) -> Result<Combo> {
        let mut c = Combo::new();
        c.insert(p.clone(), Rat::ONE);
        self.normal_form(&c)
    }

    /// Irreducible paths, in path order (trivial paths first).
    pub fn normal_paths(&self) -> Result<&[Path]> {
        self.ensure_complete()?;
        Ok(&self.normal)
    }

    fn enumerate_normal(&self) -> core::result::Result<Vec<Path>, String> {
        let q = &self.quiver;
        let mut all: Vec<Path> = (0..q.vertices.len()).map(|v| q.trivial(v)).collect();
        let mut level: Vec<Path> = all.clone();
        let mut len = 0;
        while !level.is_empty() {
            if len >= self.degree_cap {
                return Err(format!("irreducible paths of length {} exist (infinite dimension or cap too small)", len));
            }
            let mut next = Vec::new();
            for p in &level {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source != p.target {
                        continue;
                    }
                    let mut w = p.clone();
                    w.arrows.push(ai);
                    w.target = a.target;
                    if !self.suffix_reducible(&w.arrows) {
                        next.push(w);
                    }
                }
            }
            len += 1;
            all.extend(next.iter().cloned());
            if all.len() > MAX_NORMAL_PATHS {
                return Err(format!("more than {} irreducible paths", MAX_NORMAL_PATHS));
            }
            level = next;
        }
        all.sort();
        Ok(all)
    }

    fn suffix_reducible(&self, w: &[usize]) -> bool {
        self.lengths.iter().any(|l| *l <= w.len() && self.index.contains_key(&w[w.len() - l..]))
    }

    /// Dimension of the quotient algebra.
    pub fn dimension(&self) -> Result<usize> {
        Ok(self.normal_paths()?.len())
    }
}

/// Algebra of a complete rewriting system together with the path basis.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub algebra: Algebra,
    pub basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
    /// Index of the trivial path of each vertex.
    pub vertex_index: Vec<usize>,
}

impl PathAlgebra {
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Coordinates of a normal-form combination.
    pub fn vector(&self, c: &Combo) -> Vector {
        let mut v = zero_vec(self.basis.len());
        for (p, a) in c {
            v[self.index[p]] = a.clone();
        }
        v
    }

    /// Coordinates of an arbitrary path.
    pub fn path_vector(&self, rs: &RewriteSystem, p: &Path) -> Result<Vector> {
        Ok(self.vector(&rs.normal_form_path(p)?))
    }

    pub fn vertex(&self, v: usize) -> Vector {
        unit_vec(self.basis.len(), self.vertex_index[v])
    }
}

/// Multiplication table of the quotient algebra on its basis of normal paths.
pub fn structure_constants(rs: &RewriteSystem, provenance: &str) -> Result<PathAlgebra> {
    let k = rs.field;
    let basis = rs.normal_paths()?.to_vec();
    let n = basis.len();
    let index: BTreeMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut table: Vec<Sparse> = Vec::with_capacity(n * n);
    for p in &basis {
        for q in &basis {
            let t = match p.concat(q) {
                None => Vec::new(),
                Some(w) => {
                    let mut s: Sparse = rs.normal_form_path(&w)?.into_iter().map(|(x, c)| (index[&x], c)).collect();
                    s.sort_by_key(|(i, _)| *i);
                    s
                }
            };
            table.push(t);
        }
    }
    let nv = rs.quiver.vertices.len();
    let vertex_index: Vec<usize> = (0..nv).map(|v| index[&rs.quiver.trivial(v)]).collect();
    let mut unit = zero_vec(n);
    for i in &vertex_index {
        unit[*i] = Rat::ONE;
    }
    let idems: Vec<Vector> = vertex_index.iter().map(|i| unit_vec(n, *i)).collect();
    let labels = basis.iter().map(|p| rs.quiver.path_name(p)).collect();
    let mut algebra = Algebra::new(k, labels, table, unit, idems, provenance)?;
    let arrow_ideal: Vec<Vector> = (0..n).filter(|i| !basis[*i].is_trivial()).map(|i| unit_vec(n, i)).collect();
    if is_nilpotent(&algebra, &arrow_ideal) {
        algebra.radical_hint = Some(arrow_ideal);
    }
    Ok(PathAlgebra { algebra, basis, index, vertex_index })
}

/// Whether the ideal spanned by `j` is nilpotent.
pub fn is_nilpotent(a: &Algebra, j: &[Vector]) -> bool {
    let mut power = Subspace::span(a.field, a.dim(), j);
    loop {
        if power.dim() == 0 {
            return true;
        }
        let next = a.product_space(&power.basis, j);
        if next.dim() >= power.dim() {
            return false;
        }
        power = next;
    }
}

/// Builds the algebra of a presentation, failing when completion does not certify.
pub fn algebra_of(pres: &Presentation, degree_cap: usize) -> Result<(RewriteSystem, PathAlgebra)> {
    pres.validate()?;
    let rs = complete_rewrite(pres, degree_cap);
    let pa = structure_constants(&rs, "kQ/<rho>")?;
    Ok((rs, pa))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quiver::Relation;
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn rel(q: &Quiver, terms: &[(i64, &[&str])]) -> Relation {
        Relation {
            terms: terms
                .iter()
                .map(|(c, names)| {
                    let ids: Vec<usize> = names.iter().map(|n| q.arrow(n).unwrap()).collect();
                    (Rat::int(*c), q.path(&ids).unwrap())
                })
                .collect(),
        }
    }

    pub fn example1() -> Presentation {
        let mut q = Quiver::new();
        for v in ["1", "2", "3", "4", "5"] {
            q.add_vertex(v).unwrap();
        }
        for (a, s, t) in [
            ("alpha", "1", "2"),
            ("beta", "1", "2"),
            ("gamma", "2", "3"),
            ("delta", "4", "1"),
            ("sigma", "4", "5"),
            ("tau", "2", "5"),
            ("theta", "5", "3"),
            ("eta", "5", "5"),
        ] {
            q.add_arrow(a, s, t).unwrap();
        }
        let mut p = Presentation::new(Field::Rationals, q.clone());
        p.relations = vec![
            rel(&q, &[(1, &["eta", "eta"])]),
            rel(&q, &[(1, &["sigma", "eta"])]),
            rel(&q, &[(1, &["tau", "eta"])]),
            rel(&q, &[(1, &["alpha", "gamma"])]),
            rel(&q, &[(1, &["delta", "beta", "tau"])]),
            rel(&q, &[(1, &["beta", "gamma"]), (-1, &["beta", "tau", "theta"])]),
        ];
        p.idempotents = vec![("e".into(), vec![3, 4])];
        p
    }

    pub fn dual_numbers_pres() -> Presentation {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_arrow("x", "1", "1").unwrap();
        let mut p = Presentation::new(Field::Rationals, q.clone());
        p.relations = vec![rel(&q, &[(1, &["x", "x"])])];
        p
    }

    /// Dimension of kQ/(⟨ρ⟩ + J^{N+1}) by brute force over all paths of length ≤ N.
    pub fn truncated_dimension(pres: &Presentation, n: usize) -> usize {
        let k = pres.field;
        let q = &pres.quiver;
        let mut paths: Vec<Path> = (0..q.vertices.len()).map(|v| q.trivial(v)).collect();
        let mut level = paths.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &level {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target {
                        next.push(p.concat(&q.arrow_path(ai)).unwrap());
                    }
                }
            }
            paths.extend(next.iter().cloned());
            level = next;
        }
        let index: BTreeMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut span = crate::linalg::Echelon::new(k, paths.len());
        for r in &pres.relations {
            let c = r.combo(k);
            for u in &paths {
                for v in &paths {
                    let mut s: Sparse = Vec::new();
                    for (p, a) in &c {
                        if let Some(w) = u.concat(p).and_then(|x| x.concat(v)) {
                            if w.len() <= n {
                                s.push((index[&w], a.clone()));
                            }
                        }
                    }
                    s.sort_by_key(|(i, _)| *i);
                    if !s.is_empty() {
                        span.insert(&s);
                    }
                }
            }
        }
        paths.len() - span.rank()
    }

    #[test]
    fn dual_numbers() {
        let rs = complete_rewrite(&dual_numbers_pres(), 5);
        assert!(rs.complete);
        assert_eq!(rs.rules.len(), 1);
        assert!(rs.rules[0].rhs.is_empty());
        assert_eq!(rs.dimension().unwrap(), 2);
        let pa = structure_constants(&rs, "test").unwrap();
        pa.algebra.check_associative().unwrap();
        assert!(pa.algebra.radical_hint.is_some());
    }

    #[test]
    fn free_loop_is_incomplete() {
        let mut p = dual_numbers_pres();
        p.relations.clear();
        let rs = complete_rewrite(&p, 5);
        assert!(!rs.complete);
        assert!(rs.normal_form(&Combo::new()).is_err());
        assert!(structure_constants(&rs, "x").is_err());
    }

    #[test]
    fn a2_path_algebra() {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2").unwrap();
        let (_, pa) = algebra_of(&Presentation::new(Field::Rationals, q), 10).unwrap();
        assert_eq!(pa.algebra.labels, vec!["e_1", "e_2", "a"]);
        let a = pa.algebra.basis(2);
        assert_eq!(pa.algebra.mul(&pa.vertex(0), &a), a);
        assert_eq!(pa.algebra.mul(&a, &pa.vertex(1)), a);
        assert!(pa.algebra.mul(&a, &pa.vertex(0)).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn example1_matches_oracle() {
        let pres = example1();
        let (rs, pa) = algebra_of(&pres, 12).unwrap();
        assert!(rs.complete);
        let d = pa.algebra.dim();
        let o6 = truncated_dimension(&pres, 6);
        let o7 = truncated_dimension(&pres, 7);
        assert_eq!(o6, o7);
        assert_eq!(d, o6);
        assert_eq!(d, 24);
        pa.algebra.check_associative().unwrap();
        // βγ and βτθ have the same normal form
        let q = &pres.quiver;
        let bg = q.path(&[1, 2]).unwrap();
        let btt = q.path(&[1, 5, 6]).unwrap();
        assert_eq!(rs.normal_form_path(&bg).unwrap(), rs.normal_form_path(&btt).unwrap());
    }

    #[test]
    fn example1_order_stable() {
        let pres = example1();
        let n = pres.quiver.arrows.len();
        let perm: Vec<usize> = (0..n).rev().collect();
        let p2 = pres.permute_arrows(&perm).unwrap();
        let (_, a) = algebra_of(&pres, 12).unwrap();
        let (_, b) = algebra_of(&p2, 12).unwrap();
        assert_eq!(a.algebra.dim(), b.algebra.dim());
    }

    #[test]
    fn completion_adds_overlap_rules() {
        // a.b = a.c with b.d = 0 forces a.c.d = 0
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("c", "2", "3").unwrap();
        q.add_arrow("b", "2", "3").unwrap();
        q.add_arrow("d", "3", "3").unwrap();
        let mut p = Presentation::new(Field::Rationals, q.clone());
        p.relations = vec![rel(&q, &[(1, &["a", "b"]), (-1, &["a", "c"])]), rel(&q, &[(1, &["b", "d"])]), rel(&q, &[(1, &["d", "d"])])];
        let rs = complete_rewrite(&p, 10);
        assert!(rs.complete);
        let acd = q.path(&[0, 1, 3]).unwrap();
        assert!(rs.normal_form_path(&acd).unwrap().is_empty());
        assert_eq!(rs.dimension().unwrap(), truncated_dimension(&p, 6));
    }
}
