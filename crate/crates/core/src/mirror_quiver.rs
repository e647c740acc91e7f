//! Quiver and relations of the mirror-reflective algebra `R(A, e)` for
//! `e = Σ_{i∈V₀} e_i`, and the isomorphism with the direct construction.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::invariants::central_idempotents;
use crate::linalg::{Mat, Vector};
use crate::mirror::{is_algebra_map, lift_homomorphism, mirror_at, Mirror};
use crate::quiver::{combo_add, Combo, Path, Presentation, Quiver, Relation};
use crate::rewrite::{algebra_of, complete_rewrite, PathAlgebra, RewriteSystem};
use crate::verdict::Check;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Marker appended to the names of barred vertices and arrows.
pub const BAR: &str = "'";

/// `k(Δ, ψ)` together with the bookkeeping relating `Δ` to `Q`.
#[derive(Clone, Debug)]
pub struct MirrorPresentation {
    pub source: Presentation,
    /// `V₀`, sorted.
    pub v0: Vec<usize>,
    /// `Δ` with relations `ψ₁ ∪ ψ₂ ∪ ψ₃ ∪ ψ₄`, in that order.
    pub presentation: Presentation,
    pub psi: [Vec<Relation>; 4],
    /// Index in `Δ` of `v̄` for each vertex `v` of `Q` (`v` itself on `Q′`).
    pub vertex_bar: Vec<usize>,
    /// Index in `Δ` of `ᾱ` for each arrow `α` of `Q`.
    pub arrow_bar: Vec<usize>,
    /// Longest `p ∈ 𝒫(Q′)` used in `ψ₁`.
    pub path_bound: usize,
}

fn fresh_name(q: &Quiver, base: &str) -> String {
    let mut name = format!("{}{}", base, BAR);
    while q.vertex(&name).is_some() || q.arrow(&name).is_some() {
        name.push_str(BAR);
    }
    name
}

/// Builds `Δ` and `ψ`. Paths `p ∈ 𝒫(Q′)` in `ψ₁` are enumerated up to the
/// longest normal path of `A` when its completion succeeds within
/// `degree_cap`, and up to `degree_cap` otherwise.
pub fn mirror_quiver(pres: &Presentation, v0: &[usize], degree_cap: usize) -> Result<MirrorPresentation> {
    pres.validate()?;
    let q = &pres.quiver;
    let nv = q.vertices.len();
    if v0.is_empty() {
        return Err(Error::Precondition("V₀ is empty; the mirror at e = 0 is not defined".into()));
    }
    if let Some(v) = v0.iter().find(|v| **v >= nv) {
        return Err(Error::Input(format!("vertex index {} out of range", v)));
    }
    let v0: Vec<usize> = v0.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let in_v0 = |v: usize| v0.binary_search(&v).is_ok();
    let mut delta = q.clone();
    let mut vertex_bar: Vec<usize> = (0..nv).collect();
    for &v in &v0 {
        let name = fresh_name(&delta, &q.vertices[v]);
        vertex_bar[v] = delta.add_vertex(&name)?;
    }
    let mut arrow_bar: Vec<usize> = (0..q.arrows.len()).collect();
    for (i, a) in q.arrows.iter().enumerate() {
        if in_v0(a.source) || in_v0(a.target) {
            let name = fresh_name(&delta, &a.name);
            let s = delta.vertices[vertex_bar[a.source]].clone();
            let t = delta.vertices[vertex_bar[a.target]].clone();
            arrow_bar[i] = delta.add_arrow(&name, &s, &t)?;
        }
    }
    let path_bound = match complete_rewrite(pres, degree_cap).normal_paths() {
        Ok(ps) => ps.iter().map(|p| p.len()).max().unwrap_or(0),
        Err(_) => degree_cap,
    };
    let mut mp = MirrorPresentation {
        source: pres.clone(),
        v0,
        presentation: Presentation::new(pres.field, delta),
        psi: [Vec::new(), Vec::new(), Vec::new(), Vec::new()],
        vertex_bar,
        arrow_bar,
        path_bound,
    };
    // ψ₁: ā p b and a p b̄
    let mut psi1 = Vec::new();
    let inner = |a: usize| !mp.in_v0(q.arrows[a].source) && !mp.in_v0(q.arrows[a].target);
    for (ai, a) in q.arrows.iter().enumerate() {
        if !mp.in_v0(a.source) || mp.in_v0(a.target) {
            continue;
        }
        for p in q_prime_paths(q, a.target, path_bound, &inner) {
            for (bi, b) in q.arrows.iter().enumerate() {
                if b.source != p.target || !mp.in_v0(b.target) {
                    continue;
                }
                let mut barred_a = vec![mp.arrow_bar[ai]];
                barred_a.extend(&p.arrows);
                barred_a.push(bi);
                let mut barred_b = vec![ai];
                barred_b.extend(&p.arrows);
                barred_b.push(mp.arrow_bar[bi]);
                for arrows in [barred_a, barred_b] {
                    let path = mp.delta().path(&arrows).ok_or_else(|| Error::Input("mixed path does not compose".into()))?;
                    psi1.push(Relation { terms: vec![(Rat::ONE, path)] });
                }
            }
        }
    }
    let mut psi2 = Vec::new();
    let mut psi3 = Vec::new();
    let mut psi4 = Vec::new();
    for sigma in &pres.relations {
        let (s, t) = (sigma.terms[0].1.source, sigma.terms[0].1.target);
        if mp.in_v0(s) || mp.in_v0(t) {
            psi2.push(sigma.clone());
            psi3.push(Relation { terms: sigma.terms.iter().map(|(c, p)| (c.clone(), mp.bar_path(p))).collect() });
        } else if let Some(r) = combo_relation(&mp.plus().sigma_plus(sigma)) {
            psi4.push(r);
        }
    }
    mp.presentation.relations = psi1.iter().chain(&psi2).chain(&psi3).chain(&psi4).cloned().collect();
    mp.psi = [psi1, psi2, psi3, psi4];
    let mut idems: Vec<(String, Vec<usize>)> = Vec::new();
    for (name, vs) in &pres.idempotents {
        let mut img: Vec<usize> = vs.clone();
        img.extend(vs.iter().filter(|v| mp.in_v0(**v)).map(|v| mp.vertex_bar[*v]));
        idems.push((name.clone(), img));
    }
    let mut ebar = String::from("ebar");
    while idems.iter().any(|(n, _)| *n == ebar) {
        ebar.push_str(BAR);
    }
    idems.push((ebar, mp.v0.iter().map(|v| mp.vertex_bar[*v]).collect()));
    mp.presentation.idempotents = idems;
    mp.presentation.validate()?;
    Ok(mp)
}

/// Paths of `Q′` starting at `v` (trivial path included) of length at most `bound`.
fn q_prime_paths(q: &Quiver, v: usize, bound: usize, inner: &dyn Fn(usize) -> bool) -> Vec<Path> {
    let mut out = Vec::new();
    let mut level = vec![q.trivial(v)];
    let mut len = 0;
    while !level.is_empty() {
        let mut next = Vec::new();
        for p in &level {
            if len < bound {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target && inner(ai) {
                        next.push(p.concat(&q.arrow_path(ai)).unwrap());
                    }
                }
            }
        }
        out.extend(level);
        level = next;
        len += 1;
    }
    out
}

fn combo_relation(c: &Combo) -> Option<Relation> {
    if c.is_empty() {
        None
    } else {
        Some(Relation { terms: c.iter().map(|(p, a)| (a.clone(), p.clone())).collect() })
    }
}

impl MirrorPresentation {
    pub fn delta(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn in_v0(&self, v: usize) -> bool {
        self.v0.binary_search(&v).is_ok()
    }

    /// Whether a path of `Q` lies in `Q′` (trivial paths included).
    pub fn in_q_prime(&self, p: &Path) -> bool {
        let q = &self.source.quiver;
        if p.is_trivial() {
            return !self.in_v0(p.source);
        }
        p.arrows.iter().all(|a| !self.in_v0(q.arrows[*a].source) && !self.in_v0(q.arrows[*a].target))
    }

    /// The copy `p̄` in `Δ` of a path of `Q`.
    pub fn bar_path(&self, p: &Path) -> Path {
        Path { source: self.vertex_bar[p.source], target: self.vertex_bar[p.target], arrows: p.arrows.iter().map(|a| self.arrow_bar[*a]).collect() }
    }

    pub fn plus(&self) -> PlusMap<'_> {
        PlusMap { m: self }
    }

    /// The involution of `Δ` exchanging `i ↔ ī` and `α ↔ ᾱ`.
    pub fn swap_path(&self, p: &Path) -> Path {
        let n0 = self.source.quiver.vertices.len();
        let n1 = self.source.quiver.arrows.len();
        let sv = |v: usize| {
            if v < n0 {
                self.vertex_bar[v]
            } else {
                self.vertex_bar.iter().position(|b| *b == v).unwrap()
            }
        };
        let sa = |a: usize| {
            if a < n1 {
                self.arrow_bar[a]
            } else {
                self.arrow_bar.iter().position(|b| *b == a).unwrap()
            }
        };
        Path { source: sv(p.source), target: sv(p.target), arrows: p.arrows.iter().map(|a| sa(*a)).collect() }
    }

    /// `ρ⁺` split into endpoint components, together with `ψ₁`.
    pub fn psi_prime(&self) -> Vec<Relation> {
        let plus = self.plus();
        let mut out = self.psi[0].clone();
        for sigma in &self.source.relations {
            let img = plus.relation(sigma);
            let mut ends: Vec<(usize, usize)> = img.keys().map(|p| (p.source, p.target)).collect();
            ends.sort_unstable();
            ends.dedup();
            for (s, t) in ends {
                let part: Combo = img.iter().filter(|(p, _)| p.source == s && p.target == t).map(|(p, c)| (p.clone(), c.clone())).collect();
                out.extend(combo_relation(&part));
            }
        }
        out
    }
}

/// The algebra map `(−)⁺: kQ → kΔ` on paths and relations.
#[derive(Clone, Copy, Debug)]
pub struct PlusMap<'a> {
    m: &'a MirrorPresentation,
}

impl PlusMap<'_> {
    fn field(&self) -> Field {
        self.m.source.field
    }

    pub fn vertex(&self, v: usize) -> Combo {
        let d = self.m.delta();
        let mut c = Combo::new();
        c.insert(d.trivial(v), Rat::ONE);
        if self.m.in_v0(v) {
            c.insert(d.trivial(self.m.vertex_bar[v]), Rat::ONE);
        }
        c
    }

    pub fn arrow(&self, a: usize) -> Combo {
        let d = self.m.delta();
        let mut c = Combo::new();
        c.insert(d.arrow_path(a), Rat::ONE);
        if self.m.arrow_bar[a] != a {
            c.insert(d.arrow_path(self.m.arrow_bar[a]), Rat::ONE);
        }
        c
    }

    pub fn path(&self, p: &Path) -> Combo {
        if p.is_trivial() {
            return self.vertex(p.source);
        }
        let k = self.field();
        let mut acc = self.arrow(p.arrows[0]);
        for a in &p.arrows[1..] {
            let step = self.arrow(*a);
            let mut next = Combo::new();
            for (x, c) in &acc {
                for (y, d) in &step {
                    if let Some(z) = x.concat(y) {
                        combo_add(k, &mut next, z, &k.mul(c, d));
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// `σ⁺ = Σ a_i p_i⁺`.
    pub fn relation(&self, sigma: &Relation) -> Combo {
        let k = self.field();
        let mut out = Combo::new();
        for (a, p) in &sigma.terms {
            for (x, c) in self.path(p) {
                combo_add(k, &mut out, x, &k.mul(a, &c));
            }
        }
        out
    }

    /// `σ₊ = σ + Σ_{p_i ∉ 𝒫(Q′)} a_i p̄_i`.
    pub fn sigma_plus(&self, sigma: &Relation) -> Combo {
        let k = self.field();
        let mut out = Combo::new();
        for (a, p) in &sigma.terms {
            combo_add(k, &mut out, p.clone(), a);
            if !self.m.in_q_prime(p) {
                combo_add(k, &mut out, self.m.bar_path(p), a);
            }
        }
        out
    }
}

/// The isomorphism `θ: R(A, e) → k(Δ, ψ)` and its verification.
#[derive(Clone, Debug)]
pub struct ThetaCertificate {
    pub presentation: MirrorPresentation,
    pub mirror: Mirror,
    pub quiver_algebra: PathAlgebra,
    pub theta: Mat,
    pub inverse: Mat,
    pub checks: Vec<Check>,
}

impl ThetaCertificate {
    pub fn certified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn combo_vector(rs: &RewriteSystem, pa: &PathAlgebra, c: &Combo) -> Result<Vector> {
    Ok(pa.vector(&rs.normal_form(c)?))
}

pub fn certify_theta(pres: &Presentation, v0: &[usize], degree_cap: usize) -> Result<ThetaCertificate> {
    let k = pres.field;
    let mp = mirror_quiver(pres, v0, degree_cap)?;
    let (_, pa) = algebra_of(pres, degree_cap)?;
    let (rs, ps) = algebra_of(&mp.presentation, degree_cap)?;
    let a = &pa.algebra;
    let s = &ps.algebra;
    let e = a.family_sum(&mp.v0);
    let m = mirror_at(a, &e)?;
    let r = &m.algebra;
    let plus = mp.plus();
    let mut checks = Vec::new();
    checks.push(Check::new("dim k(Δ,ψ) = dim A + dim T", s.dim() == a.dim() + m.tensor.dim(), format!("{} vs {} + {}", s.dim(), a.dim(), m.tensor.dim())));
    if s.dim() != r.dim() {
        return Err(Error::verification("θ", format!("dim k(Δ,ψ) = {} but dim R(A,e) = {}", s.dim(), r.dim())));
    }
    // μ: A → k(Δ,ψ)
    let mu_cols: Vec<Vector> = pa.basis.iter().map(|p| combo_vector(&rs, &ps, &plus.path(p))).collect::<Result<_>>()?;
    let mu = Mat::from_cols(s.dim(), &mu_cols);
    let mut x = s.zero();
    for v in &mp.v0 {
        x = s.add(&x, &ps.vertex(mp.vertex_bar[*v]));
    }
    let theta = lift_homomorphism(&m, s, &mu, &x)?;
    checks.push(Check::new("θ is an algebra map", true, String::new()));
    checks.push(Check::new("θ is bijective", theta.rank(k) == r.dim(), format!("rank {}", theta.rank(k))));
    // γ: kΔ → R on generators
    let ebar_i = |i: usize| m.embed_t(&m.tensor.tensor(k, &a.idems[i], &a.idems[i]));
    let q = &pres.quiver;
    let n0 = q.vertices.len();
    let n1 = q.arrows.len();
    let d = mp.delta();
    let vertex_img: Vec<Vector> = (0..d.vertices.len())
        .map(|t| {
            if t < n0 {
                let et = m.embed_a(&a.idems[t]);
                if mp.in_v0(t) { r.sub(&et, &ebar_i(t)) } else { et }
            } else {
                ebar_i(mp.vertex_bar.iter().position(|b| *b == t).unwrap())
            }
        })
        .collect();
    let arrow_img: Vec<Vector> = (0..d.arrows.len())
        .map(|j| -> Result<Vector> {
            let (orig, barred) = if j < n1 { (j, false) } else { (mp.arrow_bar.iter().position(|b| *b == j).unwrap(), true) };
            let ar = &q.arrows[orig];
            let alpha = m.embed_a(&combo_vector_a(&pa, &q.arrow_path(orig))?);
            let side = if mp.in_v0(ar.target) { r.mul(&alpha, &ebar_i(ar.target)) } else if mp.in_v0(ar.source) { r.mul(&ebar_i(ar.source), &alpha) } else { return Ok(alpha) };
            Ok(if barred { side } else { r.sub(&alpha, &side) })
        })
        .collect::<Result<_>>()?;
    let gamma_path = |p: &Path| {
        let mut acc = vertex_img[p.source].clone();
        for a in &p.arrows {
            acc = r.mul(&acc, &arrow_img[*a]);
        }
        acc
    };
    let pi = Mat::from_cols(r.dim(), &ps.basis.iter().map(gamma_path).collect::<Vec<_>>());
    checks.push(Check::new("πθ = Id_R", pi.mul(k, &theta) == Mat::identity(r.dim()), String::new()));
    checks.push(Check::new("θπ = Id", theta.mul(k, &pi) == Mat::identity(s.dim()), String::new()));
    checks.push(Check::new("π is an algebra map", is_algebra_map(s, r, &pi), String::new()));
    let relations_killed = mp.presentation.relations.iter().all(|rel| {
        let mut img = r.zero();
        for (c, p) in &rel.terms {
            img = r.add(&img, &r.scale(c, &gamma_path(p)));
        }
        crate::linalg::is_zero_vec(&img)
    });
    checks.push(Check::new("γ kills ψ", relations_killed, String::new()));
    // bar swap on Δ corresponds to φ on R
    let swap_cols: Vec<Vector> = ps
        .basis
        .iter()
        .map(|p| {
            let mut c = Combo::new();
            c.insert(mp.swap_path(p), Rat::ONE);
            combo_vector(&rs, &ps, &c)
        })
        .collect::<Result<_>>()?;
    let swap = Mat::from_cols(s.dim(), &swap_cols);
    checks.push(Check::new("θφ = swap θ", theta.mul(k, &m.phi) == swap.mul(k, &theta), String::new()));
    // ⟨ψ′⟩ = ⟨ψ⟩
    let mut alt = mp.presentation.clone();
    alt.relations = mp.psi_prime();
    let alt_rs = complete_rewrite(&alt, degree_cap);
    let same = match alt_rs.dimension() {
        Ok(dim) => {
            dim == s.dim()
                && mp.presentation.relations.iter().all(|rel| alt_rs.normal_form(&rel.combo(k)).map(|c| c.is_empty()).unwrap_or(false))
                && alt.relations.iter().all(|rel| rs.normal_form(&rel.combo(k)).map(|c| c.is_empty()).unwrap_or(false))
        }
        Err(_) => false,
    };
    checks.push(Check::new("<ψ′> = <ψ>", same, String::new()));
    let (br, bs) = (central_idempotents(r)?.count(), central_idempotents(s)?.count());
    checks.push(Check::new("block counts agree", br == bs, format!("{} blocks", br)));
    Ok(ThetaCertificate { presentation: mp, mirror: m, quiver_algebra: ps, theta, inverse: pi, checks })
}

fn combo_vector_a(pa: &PathAlgebra, p: &Path) -> Result<Vector> {
    pa.index_of(p)
        .map(|i| crate::linalg::unit_vec(pa.basis.len(), i))
        .ok_or_else(|| Error::verification("θ", "an arrow is not a basis path"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::a2_pres;
    use crate::rewrite::tests::example1;

    fn names(q: &Quiver, r: &Relation) -> Vec<(Rat, String)> {
        r.terms.iter().map(|(c, p)| (c.clone(), q.path_name(p))).collect()
    }

    #[test]
    fn example1_shape() {
        let mp = mirror_quiver(&example1(), &[3, 4], 20).unwrap();
        let d = mp.delta();
        assert_eq!(d.vertices.len(), 7);
        assert_eq!(d.arrows.len(), 13);
        assert_eq!(d.vertices[5..], ["4'", "5'"]);
        let psi1: BTreeSet<String> = mp.psi[0].iter().map(|r| d.path_name(&r.terms[0].1)).collect();
        let expect: BTreeSet<String> = ["delta'.beta.tau", "delta.beta.tau'", "delta'.alpha.tau", "delta.alpha.tau'"].iter().map(|s| String::from(*s)).collect();
        assert_eq!(psi1, expect);
        assert_eq!(mp.psi[1].len(), 4);
        assert_eq!(mp.psi[2].len(), 4);
        let psi4: Vec<_> = mp.psi[3].iter().map(|r| names(d, r)).collect();
        assert!(psi4.contains(&vec![(Rat::ONE, "alpha.gamma".into())]));
        let mut want = vec![(Rat::ONE, String::from("beta.gamma")), (Rat::int(-1), "beta.tau.theta".into()), (Rat::int(-1), "beta.tau'.theta'".into())];
        want.sort();
        let found = psi4.into_iter().map(|mut v| { v.sort(); v }).any(|v| v == want);
        assert!(found);
    }

    #[test]
    fn plus_images() {
        let mp = mirror_quiver(&example1(), &[3, 4], 20).unwrap();
        let d = mp.delta();
        let plus = mp.plus();
        assert_eq!(plus.vertex(0).len(), 1);
        let delta = plus.arrow(d.arrow("delta").unwrap());
        let got: Vec<String> = delta.keys().map(|p| d.path_name(p)).collect();
        assert_eq!(got, ["delta", "delta'"]);
    }

    #[test]
    fn isolated_vertex() {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        let p = Presentation::new(Field::Rationals, q);
        let c = certify_theta(&p, &[0], 10).unwrap();
        assert!(c.certified());
        assert_eq!(c.presentation.delta().vertices.len(), 2);
        assert_eq!(c.mirror.algebra.dim(), 2);
        assert_eq!(central_idempotents(&c.mirror.algebra).unwrap().count(), 2);
    }

    #[test]
    fn a2_theta() {
        let c = certify_theta(&a2_pres(), &[1], 10).unwrap();
        assert!(c.presentation.psi.iter().all(|p| p.is_empty()));
        assert_eq!(c.quiver_algebra.algebra.dim(), 5);
        for ch in &c.checks {
            assert!(ch.passed, "{}: {}", ch.name, ch.detail);
        }
    }

    #[test]
    fn example1_theta() {
        let c = certify_theta(&example1(), &[3, 4], 20).unwrap();
        for ch in &c.checks {
            assert!(ch.passed, "{}: {}", ch.name, ch.detail);
        }
    }

    #[test]
    fn empty_v0_rejected() {
        assert!(mirror_quiver(&example1(), &[], 20).is_err());
    }
}
