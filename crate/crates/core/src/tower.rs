//! The tower of mirror-reflective and gendo-symmetric algebras
//! `Aₙ, Rₙ, Bₙ, Sₙ`, Morita context algebras, and the level reports.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Rat;
use crate::homology::{dominant_dimension, global_dimension, DominantDimension};
use crate::invariants::{is_symmetric, simple_count};
use crate::linalg::{is_zero_vec, Mat, Quotient, Subspace, Vector};
use crate::mirror::{mirror_at, Mirror, ReducedMirror};
use crate::module::{end_algebra, is_module_iso, is_summand, EndAlgebra, Module, Ring};
use crate::strat::{gendo_symmetric, n_auslander, stratified_dimension};
use crate::verdict::{Check, Dim, Finding, Verdict};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

/// Default bound on the dimension of any algebra built by the tower.
pub const DEFAULT_BUDGET: usize = 400;

/// One level `n` of the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub n: usize,
    pub a: Algebra,
    /// `eₙ` as a subset of the family of `Aₙ`.
    pub e: Vec<usize>,
    /// `Rₙ = R(Aₙ, eₙ)`; its ideals are `Iₙ` and `Jₙ`.
    pub r: Mirror,
    pub b: Algebra,
    pub f: Vec<usize>,
    /// `R(Bₙ, fₙ)`, whose reduced part is `Sₙ`.
    pub s_mirror: Mirror,
    pub s: ReducedMirror,
    /// Certificate that `(1 − fₙ)Bₙ(1 − fₙ) ≅ (1 − fₙ₋₁)Bₙ₋₁(1 − fₙ₋₁)`.
    pub corner_iso: Option<Check>,
    /// Whether `(1 − fₙ₋₁)Bₙ₋₁(1 − fₙ₋₁)` over `Sₙ₋₁` has no projective summand.
    pub no_projective_summand: Option<Check>,
}

impl TowerLevel {
    /// `Kₙ = I ∩ Sₙ` in the coordinates of `Sₙ`.
    pub fn k_ideal(&self) -> Subspace {
        self.reduced_ideal(&self.s_mirror.ideal_i)
    }

    /// `Lₙ = J ∩ Sₙ` in the coordinates of `Sₙ`.
    pub fn l_ideal(&self) -> Subspace {
        self.reduced_ideal(&self.s_mirror.ideal_j)
    }

    fn reduced_ideal(&self, ideal: &Subspace) -> Subspace {
        let k = self.b.field;
        let c = &self.s.corner;
        let cap = ideal.intersect(k, &c.space);
        Subspace::span(k, c.algebra.dim(), &cap.basis.iter().map(|v| c.space.coords_unchecked(v)).collect::<Vec<_>>())
    }
}

/// A tower built up to some level, with the data of the seed.
#[derive(Clone, Debug)]
pub struct Tower {
    pub levels: Vec<TowerLevel>,
    /// `Λ = eAe`.
    pub lambda: Algebra,
    /// `B₀ = (1 − e)A(1 − e)`.
    pub b0: Algebra,
    /// Why construction stopped before the requested level, if it did.
    pub stopped: Option<String>,
}

impl Tower {
    pub fn seed(&self) -> &TowerLevel {
        &self.levels[0]
    }
}

fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

/// The subspace `space` of `alg` as a left module over `ring`, which acts
/// through the algebra map `map: ring → alg` (images as columns).
fn pulled_module(ring: &Arc<Ring>, alg: &Algebra, map: &Mat, space: &Subspace, label: &str) -> Result<Module> {
    let k = alg.field;
    let mut action = Vec::with_capacity(ring.alg.dim());
    for b in 0..ring.alg.dim() {
        let x = map.col(b);
        let mut cols = Vec::with_capacity(space.dim());
        for v in &space.basis {
            let c = space
                .coords(k, &alg.mul(&x, v))
                .ok_or_else(|| Error::verification("pulled-back module", format!("{} is not stable", label)))?;
            cols.push(c);
        }
        action.push(Mat::from_cols(space.dim(), &cols));
    }
    Module::new(ring, space.dim(), action, label)
}

/// `End_X(X ⊕ ⊕_j left·src·ε_j)` over the ring `X` acting through `map`,
/// with `X` split into its indecomposable projectives.
struct EndStep {
    eb: EndAlgebra,
    /// Number of projective summands (the new distinguished family members).
    projectives: usize,
    /// Column spaces `left·src·ε_j` kept as summands, with `j`.
    columns: Vec<(usize, Subspace)>,
}

fn end_step(ring: &Arc<Ring>, src: &Algebra, map: &Mat, left: &[Rat], columns: &[usize], trials: usize, seed: u64, prov: &str) -> Result<EndStep> {
    let mut parts: Vec<Module> = (0..ring.vertices()).map(|i| Module::projective(ring, i)).collect();
    let projectives = parts.len();
    let mut kept = Vec::new();
    for &j in columns {
        let space = src.sandwich(left, &src.idems[j]);
        if space.dim() == 0 {
            continue;
        }
        let m = pulled_module(ring, src, map, &space, &format!("col{}", j))?;
        let mut duplicate = false;
        for p in &parts {
            if p.dim == m.dim && p.dim_vector() == m.dim_vector() && is_module_iso(p, &m, trials, seed)?.is_certified() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            parts.push(m);
            kept.push((j, space));
        }
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let eb = end_algebra(ring, &refs, prov)?;
    Ok(EndStep { eb, projectives, columns: kept })
}

/// Right multiplication by `(1 − f)B(1 − f)` on the column summands of the
/// next level, certified to be an algebra isomorphism onto the corner.
fn corner_certificate(b: &Algebra, f: &[usize], step: &EndStep) -> Result<Check> {
    let k = b.field;
    let one_minus_f = b.sub(&b.unit, &b.family_sum(f));
    let c = b.sandwich(&one_minus_f, &one_minus_f);
    let eb = &step.eb;
    let total = eb.module.dim;
    let mut images: Vec<Vector> = Vec::with_capacity(c.dim());
    for x in &c.basis {
        let mut rho = Mat::zeros(total, total);
        for (t, (_, vt)) in step.columns.iter().enumerate() {
            let off = eb.offsets[step.projectives + t];
            for (col, w) in vt.basis.iter().enumerate() {
                let y = b.mul(w, x);
                for (u, (ju, vu)) in step.columns.iter().enumerate() {
                    let piece = b.mul(&y, &b.idems[*ju]);
                    if is_zero_vec(&piece) {
                        continue;
                    }
                    let cs = vu.coords(k, &piece).ok_or_else(|| Error::verification("corner isomorphism", "product leaves the column summands"))?;
                    let off_u = eb.offsets[step.projectives + u];
                    for (row, v) in cs.into_iter().enumerate() {
                        rho.set(off_u + row, off + col, v);
                    }
                }
            }
        }
        let v = eb.hom.coords(k, &rho).ok_or_else(|| Error::verification("corner isomorphism", "right multiplication is not a homomorphism"))?;
        images.push(v);
    }
    let next = &eb.algebra;
    let mut multiplicative = true;
    'outer: for (i, x) in c.basis.iter().enumerate() {
        for (j, y) in c.basis.iter().enumerate() {
            let xy = c.coords(k, &b.mul(x, y)).unwrap();
            let lhs = xy.iter().zip(&images).fold(next.zero(), |acc, (a, v)| next.add(&acc, &next.scale(a, v)));
            if lhs != next.mul(&images[i], &images[j]) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let img = Subspace::span(k, next.dim(), &images);
    let g: Vec<usize> = (step.projectives..next.idems.len()).collect();
    let g_sum = next.family_sum(&g);
    let target = next.sandwich(&g_sum, &g_sum);
    let onto = img.dim() == c.dim() && img.dim() == target.dim() && target.contains_space(k, &img);
    Ok(Check::new(
        "(1-f)B(1-f) ≅ B₀",
        multiplicative && onto,
        format!("dim {} mapped onto a corner of dim {}", c.dim(), target.dim()),
    ))
}

fn level(n: usize, a: Algebra, e: Vec<usize>, b: Algebra, f: Vec<usize>) -> Result<TowerLevel> {
    let r = mirror_at(&a, &a.family_sum(&e))?;
    if r.ebar.is_none() {
        return Err(Error::verification("mirror", "ē is undefined"));
    }
    let s_mirror = if n == 1 { r.clone() } else { mirror_at(&b, &b.family_sum(&f))? };
    let s = s_mirror.reduced()?;
    Ok(TowerLevel { n, a, e, r, b, f, s_mirror, s, corner_iso: None, no_projective_summand: None })
}

/// Builds `A₁ = B₁ = A`, `e₁ = f₁ = e` and the mirrors of the first level.
pub fn tower_seed(a: &Algebra, e: &[usize]) -> Result<TowerLevel> {
    let mut e = e.to_vec();
    e.sort_unstable();
    e.dedup();
    if e.iter().any(|i| *i >= a.idems.len()) {
        return Err(Error::Input("idempotent index out of range".into()));
    }
    if e.is_empty() {
        return Err(Error::Precondition("the tower needs a nonzero idempotent".into()));
    }
    let ev = a.family_sum(&e);
    if a.ideal(&[ev]).dim() == a.dim() {
        return Err(Error::Precondition(
            "Ae is a generator (AeA = A): the mirror splits as a product and the tower degenerates".into(),
        ));
    }
    level(1, a.clone(), e.clone(), a.clone(), e)
}

/// `Aₙ₊₁ = End_{Rₙ}(Rₙ ⊕ Aₙ(1 − eₙ))` and
/// `Bₙ₊₁ = End_{Sₙ}(Sₙ ⊕ (1 − fₙ)Bₙ(1 − fₙ))`, then their mirrors.
pub fn tower_step(l: &TowerLevel, trials: usize, seed: u64) -> Result<TowerLevel> {
    let n = l.n;
    let ring_r = Ring::new(l.r.algebra.clone())?;
    let cols_a = complement(l.a.idems.len(), &l.e);
    let step_a = end_step(&ring_r, &l.a, &l.r.pi1, &l.a.unit, &cols_a, trials, seed, &format!("A{}", n + 1))?;
    let ring_s = Ring::new(l.s.algebra().clone())?;
    let one_minus_f = l.b.sub(&l.b.unit, &l.b.family_sum(&l.f));
    let cols_b = complement(l.b.idems.len(), &l.f);
    let step_b = end_step(&ring_s, &l.b, &l.s.pi1, &one_minus_f, &cols_b, trials, seed, &format!("B{}", n + 1))?;
    let corner = corner_certificate(&l.b, &l.f, &step_b)?;
    if !corner.passed {
        return Err(Error::verification("corner isomorphism", corner.detail));
    }
    let no_proj = no_projective_summand(&ring_s, &step_b, step_b.columns.is_empty())?;
    let e_next: Vec<usize> = (0..step_a.projectives).collect();
    let f_next: Vec<usize> = (0..step_b.projectives).collect();
    let mut next = level(n + 1, step_a.eb.algebra, e_next, step_b.eb.algebra, f_next)?;
    next.corner_iso = Some(corner);
    next.no_projective_summand = Some(no_proj);
    Ok(next)
}

fn no_projective_summand(ring: &Arc<Ring>, step: &EndStep, empty: bool) -> Result<Check> {
    if empty {
        return Ok(Check::new("B₀ has no projective summand over S", true, "B₀ = 0"));
    }
    let eb = &step.eb;
    let lo = eb.offsets[step.projectives];
    let hi = eb.module.dim;
    let mut basis = Vec::new();
    for i in lo..hi {
        basis.push(crate::linalg::unit_vec(hi, i));
    }
    let m = eb.module.restrict_to(&Subspace::span(ring.field(), hi, &basis));
    let mut found = None;
    for i in 0..ring.vertices() {
        if is_summand(&Module::projective(ring, i), &m)? {
            found = Some(i);
            break;
        }
    }
    Ok(Check::new(
        "B₀ has no projective summand over S",
        found.is_none(),
        match found {
            Some(i) => format!("P{} is a summand", i),
            None => format!("checked {} projectives", ring.vertices()),
        },
    ))
}

/// Builds the tower up to `levels`, stopping early when an algebra would
/// exceed `budget` in dimension.
pub fn build_tower(a: &Algebra, e: &[usize], levels: usize, budget: usize, trials: usize, seed: u64) -> Result<Tower> {
    let first = tower_seed(a, e)?;
    let ev = a.family_sum(&first.e);
    let lambda = a.corner(&ev)?.algebra;
    let one_minus_e = a.sub(&a.unit, &ev);
    let b0 = a.corner(&one_minus_e)?.algebra;
    let mut t = Tower { levels: vec![first], lambda, b0, stopped: None };
    while t.levels.len() < levels {
        let last = t.levels.last().unwrap();
        let predicted = last.r.algebra.dim() + last.a.dim();
        if last.r.algebra.dim() > budget || predicted > budget {
            t.stopped = Some(format!("level {} would exceed the dimension budget {}", last.n + 1, budget));
            break;
        }
        let next = tower_step(last, trials, seed)?;
        if next.r.algebra.dim() > budget {
            t.stopped = Some(format!("R{} has dimension {} > budget {}", next.n, next.r.algebra.dim(), budget));
            t.levels.push(next);
            break;
        }
        t.levels.push(next);
    }
    Ok(t)
}

/// Which Morita context algebra: `M_l = [[R, I], [R/J, R/J]]` or
/// `M_r = [[R, R/I], [J, R/I]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
enum Piece {
    Sub(Subspace),
    Quot(Quotient),
}

impl Piece {
    fn dim(&self) -> usize {
        match self {
            Piece::Sub(s) => s.dim(),
            Piece::Quot(q) => q.dim(),
        }
    }

    fn lift(&self, r: &Algebra, x: &[Rat]) -> Vector {
        match self {
            Piece::Sub(s) => s.combine(r.field, x),
            Piece::Quot(q) => q.lift(x),
        }
    }

    fn reduce(&self, r: &Algebra, v: &[Rat]) -> Result<Vector> {
        match self {
            Piece::Sub(s) => s.coords(r.field, v).ok_or_else(|| Error::verification("Morita context", "product leaves the ideal")),
            Piece::Quot(q) => Ok(q.project(r.field, v)),
        }
    }
}

/// A Morita context algebra built from an algebra and two ideals with `IJ = 0`.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    pub side: Side,
    pub algebra: Algebra,
    /// `[[0, 0], [0, 1]]`: `e` for `M_l`, `f` for `M_r`.
    pub corner: Vector,
    /// `dim` of the four blocks, row by row.
    pub blocks: [usize; 4],
    /// Family members forming a basic subfamily (one per isoclass).
    pub basic: Vec<usize>,
}

/// `M_l(R, I, J)` or `M_r(R, I, J)` as a structure-constant algebra.
pub fn morita_context(r: &Algebra, i: &Subspace, j: &Subspace, side: Side) -> Result<MoritaContext> {
    let k = r.field;
    let n = r.dim();
    if r.product_space(&i.basis, &j.basis).dim() != 0 {
        return Err(Error::Precondition("IJ ≠ 0".into()));
    }
    for (name, s) in [("I", i), ("J", j)] {
        let id = r.ideal(&s.basis);
        if id.dim() != s.dim() {
            return Err(Error::Precondition(format!("{} is not a two-sided ideal", name)));
        }
    }
    let full = Piece::Sub(Subspace::full(n));
    let pieces: [Piece; 4] = match side {
        Side::Left => {
            let q = Quotient::new(j.clone());
            [full, Piece::Sub(i.clone()), Piece::Quot(q.clone()), Piece::Quot(q)]
        }
        Side::Right => {
            let q = Quotient::new(i.clone());
            [full, Piece::Quot(q.clone()), Piece::Sub(j.clone()), Piece::Quot(q)]
        }
    };
    let dims = [pieces[0].dim(), pieces[1].dim(), pieces[2].dim(), pieces[3].dim()];
    let mut offsets = [0usize; 5];
    for b in 0..4 {
        offsets[b + 1] = offsets[b] + dims[b];
    }
    let d = offsets[4];
    let block_of = |x: usize| (0..4).find(|b| x < offsets[b + 1]).unwrap();
    let mut table = Vec::with_capacity(d * d);
    for x in 0..d {
        let bx = block_of(x);
        let (rx, cx) = (bx / 2, bx % 2);
        let lx = pieces[bx].lift(r, &crate::linalg::unit_vec(dims[bx], x - offsets[bx]));
        for y in 0..d {
            let by = block_of(y);
            let (ry, cy) = (by / 2, by % 2);
            let mut out = vec![Rat::ZERO; d];
            if cx == ry {
                let ly = pieces[by].lift(r, &crate::linalg::unit_vec(dims[by], y - offsets[by]));
                let target = rx * 2 + cy;
                let prod = pieces[target].reduce(r, &r.mul(&lx, &ly))?;
                for (t, v) in prod.into_iter().enumerate() {
                    out[offsets[target] + t] = v;
                }
            }
            table.push(crate::linalg::to_sparse(&out));
        }
    }
    let embed = |b: usize, v: Vector| {
        let mut w = vec![Rat::ZERO; d];
        for (t, c) in v.into_iter().enumerate() {
            w[offsets[b] + t] = c;
        }
        w
    };
    let top_unit = embed(0, r.unit.clone());
    let bottom_unit = embed(3, pieces[3].reduce(r, &r.unit)?);
    let unit: Vector = top_unit.iter().zip(&bottom_unit).map(|(a, b)| k.add(a, b)).collect();
    let labels = (0..d)
        .map(|x| {
            let b = block_of(x);
            format!("m{}{}_{}", b / 2 + 1, b % 2 + 1, x - offsets[b])
        })
        .collect();
    // Candidate family: top-left family of R, bottom-right family of the
    // quotient; isomorphic pairs are dropped so that the family is basic.
    let table_alg = Algebra::new(k, labels, table, unit.clone(), vec![unit], "morita")?;
    let mut candidates: Vec<Vector> = r.idems.iter().map(|e| embed(0, e.clone())).collect();
    for e in &r.idems {
        let p = pieces[3].reduce(r, e)?;
        if !is_zero_vec(&p) {
            candidates.push(embed(3, p));
        }
    }
    let mut basic = Vec::new();
    for (t, c) in candidates.iter().enumerate() {
        let cc = table_alg.sandwich(c, c).dim();
        let iso = basic.iter().any(|u: &usize| {
            let x = &candidates[*u];
            let xy = table_alg.sandwich(x, c);
            let yx = table_alg.sandwich(c, x);
            table_alg.product_space(&xy.basis, &yx.basis).dim() == table_alg.sandwich(x, x).dim()
                && table_alg.product_space(&yx.basis, &xy.basis).dim() == cc
        });
        if !iso {
            basic.push(t);
        }
    }
    let tag = match side {
        Side::Left => "M_l",
        Side::Right => "M_r",
    };
    let algebra = rebuild(&table_alg, candidates, &format!("{}({})", tag, r.provenance))?;
    algebra.check_associative()?;
    Ok(MoritaContext { side, algebra, corner: bottom_unit, blocks: dims, basic })
}

fn rebuild(a: &Algebra, idems: Vec<Vector>, prov: &str) -> Result<Algebra> {
    let d = a.dim();
    let table = (0..d * d).map(|t| a.basis_product(t / d, t % d).clone()).collect();
    Algebra::new(a.field, a.labels.clone(), table, a.unit.clone(), idems, prov)
}

impl MoritaContext {
    /// The context ideal `AeA` (left form) or `BfB` (right form).
    pub fn ideal(&self) -> Subspace {
        self.algebra.ideal(core::slice::from_ref(&self.corner))
    }

    /// `_A AeA` (left form) or `BfB_B` (right form) is projective, tested
    /// over the basic algebra `xAx` on the module `x·AeA`.
    pub fn ideal_is_projective(&self) -> Result<bool> {
        let alg = match self.side {
            Side::Left => self.algebra.clone(),
            Side::Right => self.algebra.opposite(),
        };
        let k = alg.field;
        let ideal = alg.ideal(core::slice::from_ref(&self.corner));
        let x = alg.family_sum(&self.basic);
        let c = alg.corner(&x)?;
        let ring = Ring::new(c.algebra.clone())?;
        let xn = Subspace::span(k, alg.dim(), &ideal.basis.iter().map(|v| alg.mul(&x, v)).collect::<Vec<_>>());
        let embed = Mat::from_cols(alg.dim(), &c.space.basis);
        pulled_module(&ring, &alg, &embed, &xn, "x·ideal")?.is_projective()
    }
}

/// Bounds and options for the level reports.
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub cap: usize,
    pub trials: usize,
    pub seed: u64,
    /// Stratified dimensions are computed only up to this many simples.
    pub sd_limit: usize,
    /// Build the Morita context algebras of each level.
    pub morita: bool,
}

impl Default for ReportOptions {
    fn default() -> ReportOptions {
        ReportOptions { cap: 20, trials: 8, seed: 0, sd_limit: 4, morita: true }
    }
}

/// Dimensions and simple counts of one level, with its findings.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub n: usize,
    /// `dim` of `Aₙ, Rₙ, Bₙ, Sₙ`.
    pub dims: [usize; 4],
    /// `#` of `Aₙ, Rₙ, Bₙ, Sₙ`.
    pub simples: [usize; 4],
    pub dm_a: Dim,
    pub dm_b: Dim,
    pub gd_a: Verdict<Dim>,
    pub gd_b: Verdict<Dim>,
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    pub levels: Vec<LevelReport>,
    pub stopped: Option<String>,
}

impl TowerReport {
    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.levels.iter().flat_map(|l| l.findings.iter())
    }
}

fn bound_finding(name: String, value: &Verdict<Dim>, bound: Option<usize>, cap: usize) -> Finding {
    match (value, bound) {
        (_, None) => Finding::new(name, Verdict::UnknownBeyond(cap), "the bound is not known"),
        (Verdict::Certified(Dim::Finite(v)), Some(b)) => Finding::exact(name, *v <= b, format!("{} ≤ {}", v, b)),
        (Verdict::Certified(Dim::Infinite), Some(b)) => Finding::exact(name, false, format!("inf > {}", b)),
        (Verdict::Refuted(r), _) => Finding::new(name, Verdict::Refuted(r.clone()), r.reason.clone()),
        (Verdict::UnknownBeyond(c), Some(b)) => Finding::new(name, Verdict::UnknownBeyond(*c), format!("bound {}", b)),
    }
}

fn finite(v: &Verdict<Dim>) -> Option<usize> {
    match v {
        Verdict::Certified(Dim::Finite(d)) => Some(*d),
        _ => None,
    }
}

fn unit_verdict<T>(v: Verdict<T>) -> Verdict<()> {
    v.map(|_| ())
}

fn morita_findings(l: &TowerLevel) -> Result<Vec<Finding>> {
    let ml = morita_context(&l.r.algebra, &l.r.ideal_i, &l.r.ideal_j, Side::Left)?;
    let cm = simple_count(&ml.algebra)?;
    let qi = simple_count(&l.r.algebra.quotient(&l.r.ideal_i, "R/I")?.algebra)?;
    let qj = simple_count(&l.r.algebra.quotient(&l.r.ideal_j, "R/J")?.algebra)?;
    Ok(vec![
        Finding::exact("#(M_l(R,I,J)) = #(R/I) + #(R/J)", cm == qi + qj, format!("{} vs {} + {}", cm, qi, qj)),
        Finding::exact("AeA is left projective in M_l(R,I,J)", ml.ideal_is_projective()?, format!("dim M_l = {}", ml.algebra.dim())),
    ])
}

/// Runs the counting, symmetry, gendo, dominant and global dimension,
/// stratification and Morita context checks at every level.
pub fn tower_report(t: &Tower, o: &ReportOptions) -> Result<TowerReport> {
    let seed_level = t.seed();
    let n_lambda = simple_count(&t.lambda)?;
    let n_a = simple_count(&seed_level.a)?;
    let n_b0 = if t.b0.dim() == 0 { 0 } else { simple_count(&t.b0)? };
    let mut out: Vec<LevelReport> = Vec::new();
    let mut prev_dm: Option<(DominantDimension, DominantDimension)> = None;
    let mut auslander: Option<usize> = None;
    for l in &t.levels {
        let n = l.n;
        let mut fs = Vec::new();
        let simples = [simple_count(&l.a)?, simple_count(&l.r.algebra)?, simple_count(&l.b)?, simple_count(l.s.algebra())?];
        let dims = [l.a.dim(), l.r.algebra.dim(), l.b.dim(), l.s.algebra().dim()];
        let want_r = n_lambda + ((1usize << n) - 1) * n_a;
        fs.push(Finding::exact("#(R_n) = #(Λ) + (2^n-1)#(A)", simples[1] == want_r, format!("{} vs {}", simples[1], want_r)));
        let want_s = n_lambda + n * n_b0;
        fs.push(Finding::exact("#(S_n) = #(Λ) + n#(B₀)", simples[3] == want_s, format!("{} vs {}", simples[3], want_s)));
        fs.push(Finding::new("R_n is symmetric", unit_verdict(is_symmetric(&l.r.algebra, o.trials, o.seed)), format!("dim {}", dims[1])));
        fs.push(Finding::new("S_n is symmetric", unit_verdict(is_symmetric(l.s.algebra(), o.trials, o.seed)), format!("dim {}", dims[3])));
        fs.push(Finding::new("A_n is gendo-symmetric", unit_verdict(gendo_symmetric(&l.a, o.cap, o.trials, o.seed)?), String::new()));
        fs.push(Finding::new("B_n is gendo-symmetric", unit_verdict(gendo_symmetric(&l.b, o.cap, o.trials, o.seed)?), String::new()));
        if let Some(c) = &l.corner_iso {
            fs.push(c.clone().into());
        }
        if let Some(c) = &l.no_projective_summand {
            fs.push(c.clone().into());
        }
        let ring_a = Ring::new(l.a.clone())?;
        let ring_b = Ring::new(l.b.clone())?;
        let dm_a = dominant_dimension(&ring_a, o.cap)?;
        let dm_b = dominant_dimension(&ring_b, o.cap)?;
        if let Some((pa, pb)) = &prev_dm {
            for (name, prev, cur) in [("dm(A_n) ≥ dm(A_{n-1}) + 2", pa, &dm_a), ("dm(B_n) ≥ dm(B_{n-1}) + 2", pb, &dm_b)] {
                let f = match (&prev.verdict, prev.lower_bound()) {
                    (Verdict::Certified(d), _) => Finding::new(name, cur.at_least(d + 2), format!("dm(level {}) = {}, now ≥ {}", n - 1, d, cur.lower_bound())),
                    (_, Dim::Finite(lb)) => Finding::new(name, cur.at_least(lb + 2), format!("dm(level {}) ≥ {}, now ≥ {}", n - 1, lb, cur.lower_bound())),
                    (_, Dim::Infinite) => Finding::new(name, Verdict::UnknownBeyond(o.cap), "dm of the previous level is not bounded"),
                };
                fs.push(f);
            }
        }
        let gd_a = global_dimension(&ring_a, o.cap, o.trials, o.seed)?;
        let gd_b = global_dimension(&ring_b, o.cap, o.trials, o.seed)?;
        if n >= 2 {
            let gd_base = finite(&out[0].gd_a);
            let gd_b0 = if t.b0.dim() == 0 {
                Some(0)
            } else {
                finite(&global_dimension(&Ring::new(t.b0.clone())?, o.cap, o.trials, o.seed)?)
            };
            let m = n - 1;
            let bound_a = gd_base.map(|g| (1usize << m) * g + (1usize << (m + 1)) - 2);
            fs.push(bound_finding(format!("gd(A_{}) ≤ 2^{}·gd(A) + 2^{} - 2", n, m, m + 1), &gd_a, bound_a, o.cap));
            let bound_b = match (gd_base, gd_b0) {
                (Some(g), Some(g0)) => Some(g + m * (g0 + 2)),
                _ => None,
            };
            fs.push(bound_finding(format!("gd(B_{}) ≤ gd(A) + {}(gd(B₀) + 2)", n, m), &gd_b, bound_b, o.cap));
            let prev = &out[n - 2];
            let mono = match (finite(&prev.gd_a), &gd_a) {
                (Some(p), Verdict::Certified(Dim::Finite(c))) => Finding::exact("gd(A_{n-1}) ≤ gd(A_n)", p <= *c, format!("{} ≤ {}", p, c)),
                (Some(_), Verdict::Certified(Dim::Infinite)) => Finding::exact("gd(A_{n-1}) ≤ gd(A_n)", true, "gd(A_n) = inf"),
                _ => Finding::new("gd(A_{n-1}) ≤ gd(A_n)", Verdict::UnknownBeyond(o.cap), String::new()),
            };
            fs.push(mono);
            if let Some(k) = auslander {
                let next = 2 * k + 3;
                fs.push(Finding::new(format!("A_{} is {}-Auslander", n, next), n_auslander(&ring_a, next, o.cap, o.trials, o.seed)?, String::new()));
                auslander = Some(next);
            }
        } else if let (Some(g), Verdict::Certified(d)) = (finite(&gd_a), &dm_a.verdict) {
            if g >= 1 && g <= *d {
                auslander = Some(g - 1);
                fs.push(Finding::exact(format!("A is {}-Auslander", g - 1), true, format!("gd = {}, dm = {}", g, d)));
            }
        }
        // stratified dimensions against the counting bounds
        if simples[1] <= o.sd_limit {
            let sd = stratified_dimension(&l.r.algebra, o.cap, o.trials, o.seed, o.sd_limit)?;
            let bound = want_r - 1;
            fs.push(Finding::exact("sd(R_n) ≤ #(eAe) + (2^n-1)#(A) - 1", sd.hi <= bound, format!("sd ∈ [{}, {}], bound {}", sd.lo, sd.hi, bound)));
        }
        if simples[3] <= o.sd_limit {
            let sd = stratified_dimension(l.s.algebra(), o.cap, o.trials, o.seed, o.sd_limit)?;
            let bound = want_s.saturating_sub(1);
            fs.push(Finding::exact("sd(S_n) ≤ #(eAe) + n#(B₀) - 1", sd.hi <= bound, format!("sd ∈ [{}, {}], bound {}", sd.lo, sd.hi, bound)));
        }
        if n == 1 {
            let detail = match dm_a.lower_bound() {
                Dim::Infinite => String::from("dm(A) = ∞ is not certified by a bounded search"),
                Dim::Finite(d) => format!("dm(A) ≥ {} only; the lower bound on sd(R_n) is conditional", d),
            };
            fs.push(Finding::new("sd(eAe) + (2^n-1)(sd(A)+1) ≤ sd(R_n)", Verdict::UnknownBeyond(o.cap), detail));
        }
        if o.morita {
            match morita_findings(l) {
                Ok(v) => fs.extend(v),
                Err(Error::Unsupported(m)) => fs.push(Finding::new("Morita context M_l(R,I,J)", Verdict::UnknownBeyond(0), m)),
                Err(e) => return Err(e),
            }
        }
        out.push(LevelReport { n, dims, simples, dm_a: dm_a.lower_bound(), dm_b: dm_b.lower_bound(), gd_a, gd_b, findings: fs });
        prev_dm = Some((dm_a, dm_b));
    }
    // the simple count of A_{n+1} matches the Morita context of level n
    for i in 1..out.len() {
        let (prev, cur) = (&out[i - 1], &out[i]);
        let want = 2 * prev.simples[0];
        let f = Finding::exact("#(A_n) = 2#(A_{n-1})", cur.simples[0] == want, format!("{} vs {}", cur.simples[0], want));
        out[i].findings.push(f);
        let want_b = n_b0 + out[i - 1].simples[2];
        let f = Finding::exact("#(B_n) = #(B₀) + #(B_{n-1})", out[i].simples[2] == want_b, format!("{} vs {}", out[i].simples[2], want_b));
        out[i].findings.push(f);
    }
    Ok(TowerReport { levels: out, stopped: t.stopped.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::tests::f2;

    #[test]
    fn f2_tower_dims() {
        let a = f2();
        let t = build_tower(&a, &[0], 3, DEFAULT_BUDGET, 8, 0).unwrap();
        assert_eq!(t.levels.len(), 3);
        let dims: Vec<[usize; 4]> = t.levels.iter().map(|l| [l.a.dim(), l.r.algebra.dim(), l.b.dim(), l.s.algebra().dim()]).collect();
        assert_eq!(dims[1][0], 15);
        assert_eq!(dims[1][1], 30);
        assert_eq!(dims[2][0], 37);
        assert_eq!([dims[0][3], dims[1][2], dims[1][3], dims[2][2], dims[2][3]], [6, 9, 10, 13, 14]);
        for l in &t.levels[1..] {
            assert!(l.corner_iso.as_ref().unwrap().passed);
            assert!(l.no_projective_summand.as_ref().unwrap().passed);
        }
    }

    #[test]
    fn f2_report_levels_two() {
        let a = f2();
        let t = build_tower(&a, &[0], 2, DEFAULT_BUDGET, 8, 0).unwrap();
        let o = ReportOptions { cap: 8, ..ReportOptions::default() };
        let rep = tower_report(&t, &o).unwrap();
        for l in &rep.levels {
            for f in &l.findings {
                std::println!("level {}: {} [{}] {}", l.n, f.name, f.verdict.state(), f.detail);
            }
        }
        assert_eq!(rep.levels[0].simples, [2, 3, 2, 2]);
        assert_eq!(rep.levels[1].simples, [4, 7, 3, 3]);
        for f in rep.findings() {
            assert!(!f.verdict.is_refuted(), "{}: {}", f.name, f.detail);
        }
        assert!(rep.findings().any(|f| f.name == "A_2 is 5-Auslander" && f.verdict.is_certified()));
    }

    #[test]
    fn morita_contexts() {
        let a = f2();
        let zero = Subspace::zero(a.dim());
        let m = morita_context(&a, &zero, &zero, Side::Left).unwrap();
        assert_eq!(m.algebra.dim(), 3 * a.dim());
        let t = tower_seed(&a, &[0]).unwrap();
        let ml = morita_context(&t.r.algebra, &t.r.ideal_i, &t.r.ideal_j, Side::Left).unwrap();
        let want = t.r.algebra.dim() + t.r.ideal_i.dim() + 2 * (t.r.algebra.dim() - t.r.ideal_j.dim());
        assert_eq!(ml.algebra.dim(), want);
        assert_eq!(simple_count(&ml.algebra).unwrap(), 4);
        assert!(ml.ideal_is_projective().unwrap());
        let mr = morita_context(&t.r.algebra, &t.r.ideal_i, &t.r.ideal_j, Side::Right).unwrap();
        assert!(mr.ideal_is_projective().unwrap());
        assert!(morita_context(&t.r.algebra, &t.r.ideal_i, &t.r.ideal_i, Side::Left).is_err());
    }

    #[test]
    fn generator_seed_rejected() {
        let a = f2();
        let err = tower_seed(&a, &[0, 1]).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("generator")));
    }
}
