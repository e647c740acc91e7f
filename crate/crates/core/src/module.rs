//! Finite-dimensional left modules over basic split algebras.
//!
//! Homomorphisms are written on the right of their arguments, so `f` then `g`
//! is the composite `fg`; as matrices acting on columns this is `G·F`.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::invariants::radical;
use crate::linalg::{
    axpy, is_zero_vec, kernel_basis, solve_columns, solve_homogeneous, to_sparse, unit_vec, zero_vec, Echelon, Mat,
    Quotient, Sparse, Subspace, Vector,
};
use crate::sample;
use crate::verdict::Verdict;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An algebra whose family is a complete set of primitive, pairwise
/// non-isomorphic idempotents with split tops, with the data needed for
/// projective covers.
#[derive(Debug)]
pub struct Ring {
    pub alg: Algebra,
    pub rad: Subspace,
    /// Elements of `ε_i rad ε_j` spanning `rad/rad²`.
    pub radgens: Vec<Vector>,
    /// Family members followed by `radgens`; they generate the algebra.
    pub gens: Vec<Vector>,
    /// `Aε_i` as a subspace of `A`.
    pub proj_space: Vec<Subspace>,
    proj_action: Vec<Vec<Mat>>,
}

impl Ring {
    pub fn new(alg: Algebra) -> Result<Arc<Ring>> {
        let rad = radical(&alg)?;
        Ring::with_radical(alg, rad)
    }

    pub fn with_radical(alg: Algebra, rad: Subspace) -> Result<Arc<Ring>> {
        let k = alg.field;
        let q = alg.quotient(&rad, "top")?;
        if q.family_source.len() != alg.idems.len() {
            return Err(Error::Precondition("a family idempotent lies in the radical".into()));
        }
        let s = &q.algebra;
        if s.dim() != s.idems.len() {
            return Err(Error::Precondition(format!(
                "family is not basic and split: dim A/rad = {} but the family has {} members",
                s.dim(),
                s.idems.len()
            )));
        }
        for (i, x) in s.idems.iter().enumerate() {
            for (j, y) in s.idems.iter().enumerate() {
                if s.sandwich(x, y).dim() != usize::from(i == j) {
                    return Err(Error::Precondition("family is not basic and split".into()));
                }
            }
        }
        let rad2 = alg.product_space(&rad.basis, &rad.basis);
        let mut radgens = Vec::new();
        for x in &alg.idems {
            for y in &alg.idems {
                let mut e = Echelon::new(k, alg.dim());
                for r in &rad2.basis {
                    e.insert_dense(&alg.mul3(x, r, y));
                }
                for r in &rad.basis {
                    let v = alg.mul3(x, r, y);
                    if e.insert_dense(&v) {
                        radgens.push(v);
                    }
                }
            }
        }
        let mut gens = alg.idems.clone();
        gens.extend(radgens.iter().cloned());
        let proj_space: Vec<Subspace> = alg.idems.iter().map(|e| alg.sandwich(&alg.unit, e)).collect();
        let proj_action = proj_space
            .iter()
            .map(|sp| {
                (0..alg.dim())
                    .map(|b| {
                        let bv = alg.basis(b);
                        let cols: Vec<Vector> = sp.basis.iter().map(|p| sp.coords_unchecked(&alg.mul(&bv, p))).collect();
                        Mat::from_cols(sp.dim(), &cols)
                    })
                    .collect()
            })
            .collect();
        Ok(Arc::new(Ring { alg, rad, radgens, gens, proj_space, proj_action }))
    }

    /// The ring of the opposite algebra (right modules).
    pub fn opposite(&self) -> Result<Arc<Ring>> {
        Ring::with_radical(self.alg.opposite(), self.rad.clone())
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn vertices(&self) -> usize {
        self.alg.idems.len()
    }
}

/// A left module: one action matrix per basis element of the algebra.
#[derive(Clone)]
pub struct Module {
    pub ring: Arc<Ring>,
    pub dim: usize,
    pub action: Vec<Mat>,
    pub label: String,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({}, dim {})", self.label, self.dim)
    }
}

impl Module {
    pub fn new(ring: &Arc<Ring>, dim: usize, action: Vec<Mat>, label: &str) -> Result<Module> {
        if action.len() != ring.alg.dim() || action.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::Input(format!("action matrices do not match module dimension {}", dim)));
        }
        Ok(Module { ring: ring.clone(), dim, action, label: label.into() })
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn zero(ring: &Arc<Ring>) -> Module {
        Module { ring: ring.clone(), dim: 0, action: vec![Mat::zeros(0, 0); ring.alg.dim()], label: "0".into() }
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[Rat]) -> Mat {
        let k = self.field();
        let mut m = Mat::zeros(self.dim, self.dim);
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.axpy(k, c, &self.action[b]);
            }
        }
        m
    }

    pub fn act_vec(&self, x: &[Rat], v: &[Rat]) -> Vector {
        let k = self.field();
        let mut out = zero_vec(self.dim);
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                axpy(k, &mut out, c, &self.action[b].mul_vec(k, v));
            }
        }
        out
    }

    /// `ε_i M`.
    pub fn vertex_space(&self, i: usize) -> Subspace {
        let e = self.act(&self.ring.alg.idems[i]);
        Subspace::span(self.field(), self.dim, &e.col_vecs())
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.ring.vertices()).map(|i| self.vertex_space(i).dim()).collect()
    }

    /// Checks that the matrices define a unital representation.
    pub fn check(&self) -> Result<()> {
        let a = &self.ring.alg;
        let k = a.field;
        if self.act(&a.unit) != Mat::identity(self.dim) {
            return Err(Error::verification("module", "unit does not act as the identity"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(k, &self.action[j]);
                let rhs = self.act(&crate::linalg::to_dense(a.dim(), a.basis_product(i, j)));
                if lhs != rhs {
                    return Err(Error::verification("module", format!("action of {}·{} is not multiplicative", a.labels[i], a.labels[j])));
                }
            }
        }
        Ok(())
    }

    pub fn regular(ring: &Arc<Ring>) -> Module {
        let a = &ring.alg;
        let action = (0..a.dim()).map(|b| a.left_matrix(&a.basis(b))).collect();
        Module { ring: ring.clone(), dim: a.dim(), action, label: "A".into() }
    }

    /// `Aε_i`, with the echelon basis of `ring.proj_space[i]`.
    pub fn projective(ring: &Arc<Ring>, i: usize) -> Module {
        Module { ring: ring.clone(), dim: ring.proj_space[i].dim(), action: ring.proj_action[i].clone(), label: format!("P{}", i) }
    }

    /// The simple top of `Aε_i`.
    pub fn simple(ring: &Arc<Ring>, i: usize) -> Module {
        let p = Module::projective(ring, i);
        let r = p.radical();
        let mut s = p.quotient(&r).0;
        s.label = format!("S{}", i);
        s
    }

    /// `D(ε_i A)`, given the ring of the opposite algebra.
    pub fn injective(ring: &Arc<Ring>, op: &Arc<Ring>, i: usize) -> Result<Module> {
        let mut m = Module::projective(op, i).dual(ring)?;
        m.label = format!("I{}", i);
        Ok(m)
    }

    pub fn direct_sum(ring: &Arc<Ring>, parts: &[&Module]) -> Module {
        let n = ring.alg.dim();
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..n).map(|b| Mat::block_diag(&parts.iter().map(|m| &m.action[b]).collect::<Vec<_>>())).collect();
        let label = parts.iter().map(|m| m.label.as_str()).collect::<Vec<_>>().join("+");
        Module { ring: ring.clone(), dim, action, label }
    }

    /// Submodule generated by the given vectors.
    pub fn submodule(&self, vs: &[Vector]) -> Subspace {
        let k = self.field();
        let mut e = Echelon::new(k, self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for v in vs {
            if e.insert_dense(v) {
                queue.push(v.clone());
            }
        }
        let gens: Vec<Mat> = self.ring.gens.iter().map(|g| self.act(g)).collect();
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.mul_vec(k, &v);
                if e.insert_dense(&w) {
                    queue.push(w);
                }
            }
        }
        Subspace::from_echelon(&e)
    }

    /// `rad M`, spanned by `r·m` for `r` in the radical.
    pub fn radical(&self) -> Subspace {
        let k = self.field();
        let mut e = Echelon::new(k, self.dim);
        for r in &self.ring.rad.basis {
            let m = self.act(r);
            for j in 0..self.dim {
                e.insert_dense(&m.col(j));
            }
        }
        Subspace::from_echelon(&e)
    }

    /// The submodule carried by `sub`, in the echelon basis of `sub`.
    pub fn restrict_to(&self, sub: &Subspace) -> Module {
        let k = self.field();
        let basis = sub.basis_mat();
        let action = self
            .action
            .iter()
            .map(|m| {
                let img = m.mul(k, &basis);
                let cols: Vec<Vector> = (0..sub.dim()).map(|j| sub.coords_unchecked(&img.col(j))).collect();
                Mat::from_cols(sub.dim(), &cols)
            })
            .collect();
        Module { ring: self.ring.clone(), dim: sub.dim(), action, label: format!("sub({})", self.label) }
    }

    /// `M / sub` with the underlying vector-space quotient.
    pub fn quotient(&self, sub: &Subspace) -> (Module, Quotient) {
        let k = self.field();
        let q = Quotient::new(sub.clone());
        let proj = q.projection(k);
        let sec = q.section();
        let action = self.action.iter().map(|m| proj.mul(k, &m.mul(k, &sec))).collect();
        (Module { ring: self.ring.clone(), dim: q.dim(), action, label: format!("quot({})", self.label) }, q)
    }

    /// `D(M) = Hom_k(M, k)` over the opposite ring `target`.
    pub fn dual(&self, target: &Arc<Ring>) -> Result<Module> {
        if target.alg.dim() != self.ring.alg.dim() {
            return Err(Error::Input("dual: target ring has a different dimension".into()));
        }
        let action = self.action.iter().map(|m| m.transpose()).collect();
        Ok(Module { ring: target.clone(), dim: self.dim, action, label: format!("D({})", self.label) })
    }

    /// Restriction of scalars along an algebra map `R → A` given by the
    /// images (as columns) of the basis of `R`.
    pub fn pullback(&self, r: &Arc<Ring>, map: &Mat) -> Result<Module> {
        if map.cols != r.alg.dim() || map.rows != self.ring.alg.dim() {
            return Err(Error::Input("pullback: map has the wrong shape".into()));
        }
        let action = (0..map.cols).map(|j| self.act(&map.col(j))).collect();
        Ok(Module { ring: r.clone(), dim: self.dim, action, label: self.label.clone() })
    }

    pub fn is_projective(&self) -> Result<bool> {
        Ok(cover(self)?.projective_dim() == self.dim)
    }
}

/// A projective cover `P → M` with `P = ⊕ Aε_{v_t}` in flat coordinates.
#[derive(Clone, Debug)]
pub struct Cover {
    pub vertices: Vec<usize>,
    /// Top generators `m_t ∈ ε_{v_t} M`.
    pub gens: Vec<Vector>,
    /// `P → M`, columns indexed by the flat basis of `P`.
    pub map: Mat,
    /// A right inverse `M → P` of `map`.
    pub section: Mat,
    pub offsets: Vec<usize>,
}

impl Cover {
    pub fn projective_dim(&self) -> usize {
        self.map.cols
    }
}

/// Offsets of the summands of `⊕ Aε_{v_t}`, with the total dimension last.
pub fn flat_offsets(ring: &Ring, vertices: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for v in vertices {
        off.push(off.last().unwrap() + ring.proj_space[*v].dim());
    }
    off
}

/// Splits a flat vector of `⊕ Aε_{v_t}` into its components in `A`.
pub fn flat_components(ring: &Ring, vertices: &[usize], v: &[Rat]) -> Vec<Vector> {
    let off = flat_offsets(ring, vertices);
    vertices.iter().enumerate().map(|(t, w)| ring.proj_space[*w].combine(ring.field(), &v[off[t]..off[t + 1]])).collect()
}

/// The projective module `⊕ Aε_{v_t}`.
pub fn free_module(ring: &Arc<Ring>, vertices: &[usize]) -> Module {
    let parts: Vec<Module> = vertices.iter().map(|v| Module::projective(ring, *v)).collect();
    let refs: Vec<&Module> = parts.iter().collect();
    let mut m = Module::direct_sum(ring, &refs);
    if vertices.is_empty() {
        m = Module::zero(ring);
    }
    m
}

/// Top generators of `M`, grouped by vertex.
pub fn top_generators(m: &Module) -> (Vec<usize>, Vec<Vector>) {
    let k = m.field();
    let rad = m.radical();
    let mut vertices = Vec::new();
    let mut gens = Vec::new();
    for i in 0..m.ring.vertices() {
        let e = m.act(&m.ring.alg.idems[i]);
        let mut ech = Echelon::new(k, m.dim);
        for r in &rad.basis {
            ech.insert_dense(&e.mul_vec(k, r));
        }
        for j in 0..m.dim {
            let c = e.col(j);
            if ech.insert_dense(&c) {
                vertices.push(i);
                gens.push(c);
            }
        }
    }
    (vertices, gens)
}

pub fn cover(m: &Module) -> Result<Cover> {
    let k = m.field();
    let ring = &m.ring;
    let (vertices, gens) = top_generators(m);
    let offsets = flat_offsets(ring, &vertices);
    let mut cols: Vec<Vector> = Vec::with_capacity(*offsets.last().unwrap());
    for (t, v) in vertices.iter().enumerate() {
        // a·m_t for the basis a of Aε_v
        let images: Vec<Vector> = m.action.iter().map(|a| a.mul_vec(k, &gens[t])).collect();
        for p in &ring.proj_space[*v].basis {
            let mut c = zero_vec(m.dim);
            for (b, x) in p.iter().enumerate() {
                axpy(k, &mut c, x, &images[b]);
            }
            cols.push(c);
        }
    }
    let map = Mat::from_cols(m.dim, &cols);
    let section = solve_columns(k, &map, &Mat::identity(m.dim))
        .map_err(|e| Error::verification("projective cover", format!("{}", e)))?
        .ok_or_else(|| Error::verification("projective cover", "cover map is not surjective"))?;
    Ok(Cover { vertices, gens, map, section, offsets })
}

/// The first syzygy as a submodule of the cover, with its embedding.
pub fn syzygy(m: &Module) -> Result<(Module, Subspace, Cover)> {
    let c = cover(m)?;
    let p = free_module(&m.ring, &c.vertices);
    let ker = Subspace::span(m.field(), p.dim, &kernel_basis(m.field(), &c.map));
    let mut om = p.restrict_to(&ker);
    om.label = format!("Ω({})", m.label);
    Ok((om, ker, c))
}

/// `Ωⁿ(M)`.
pub fn syzygy_n(m: &Module, n: usize) -> Result<Module> {
    let mut cur = m.clone();
    for _ in 0..n {
        cur = syzygy(&cur)?.0;
    }
    Ok(cur)
}

/// A basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub mats: Vec<Mat>,
    /// Generators of the source; a map is determined by their images.
    pub source_gens: Vec<Vector>,
    /// Images of the generators under each basis map, concatenated.
    images: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    fn image_vector(&self, k: Field, f: &Mat) -> Vector {
        let mut v = Vec::new();
        for g in &self.source_gens {
            v.extend(f.mul_vec(k, g));
        }
        v
    }

    /// Coordinates of a homomorphism in the basis `mats`.
    pub fn coords(&self, k: Field, f: &Mat) -> Option<Vector> {
        self.images.coords(k, &self.image_vector(k, f))
    }
}

pub fn hom(m: &Module, n: &Module) -> Result<HomSpace> {
    let k = m.field();
    let ring = &m.ring;
    if m.dim == 0 || n.dim == 0 {
        return Ok(HomSpace { mats: Vec::new(), source_gens: Vec::new(), images: Subspace::zero(0) });
    }
    let c = cover(m)?;
    let r = c.vertices.len();
    let blocks: Vec<Subspace> = c.vertices.iter().map(|v| n.vertex_space(*v)).collect();
    let mut yoff = vec![0];
    for b in &blocks {
        yoff.push(yoff.last().unwrap() + b.dim());
    }
    let ny = yoff[r];
    // x[t][j] = (p_tj acting on N) · B_t
    let mut x: Vec<Vec<Mat>> = Vec::with_capacity(r);
    for (t, v) in c.vertices.iter().enumerate() {
        let bt = blocks[t].basis_mat();
        let acted: Vec<Mat> = n.action.iter().map(|a| a.mul(k, &bt)).collect();
        let mut row = Vec::new();
        for p in &ring.proj_space[*v].basis {
            let mut s = Mat::zeros(n.dim, bt.cols);
            for (b, xb) in p.iter().enumerate() {
                if !xb.is_zero() {
                    s.axpy(k, xb, &acted[b]);
                }
            }
            row.push(s);
        }
        x.push(row);
    }
    let ker = kernel_basis(k, &c.map);
    let mut eqs: Vec<Sparse> = Vec::new();
    for kv in &ker {
        let mut rows = vec![zero_vec(ny); n.dim];
        for t in 0..r {
            for (j, xm) in x[t].iter().enumerate() {
                let coef = &kv[c.offsets[t] + j];
                if coef.is_zero() {
                    continue;
                }
                for (i, row) in rows.iter_mut().enumerate() {
                    axpy(k, &mut row[yoff[t]..yoff[t + 1]], coef, xm.row(i));
                }
            }
        }
        eqs.extend(rows.into_iter().map(|r| to_sparse(&r)).filter(|r| !r.is_empty()));
    }
    let sols = solve_homogeneous(k, ny, eqs);
    // images of the generators, then the full matrices
    let mut image_vecs = Vec::new();
    for y in &sols {
        let mut v = Vec::new();
        for t in 0..r {
            v.extend(blocks[t].combine(k, &y[yoff[t]..yoff[t + 1]]));
        }
        image_vecs.push(v);
    }
    let images = Subspace::span(k, r * n.dim, &image_vecs);
    let mats = images
        .basis
        .iter()
        .map(|img| {
            let mut cols = Vec::with_capacity(c.projective_dim());
            for (t, v) in c.vertices.iter().enumerate() {
                let nt = &img[t * n.dim..(t + 1) * n.dim];
                let acted: Vec<Vector> = n.action.iter().map(|a| a.mul_vec(k, nt)).collect();
                for p in &ring.proj_space[*v].basis {
                    let mut col = zero_vec(n.dim);
                    for (b, xb) in p.iter().enumerate() {
                        axpy(k, &mut col, xb, &acted[b]);
                    }
                    cols.push(col);
                }
            }
            Mat::from_cols(n.dim, &cols).mul(k, &c.section)
        })
        .collect();
    Ok(HomSpace { mats, source_gens: c.gens, images })
}

/// Checks that `f` intertwines the actions on the generators of the algebra.
pub fn is_homomorphism(m: &Module, n: &Module, f: &Mat) -> bool {
    let k = m.field();
    m.ring.gens.iter().all(|g| f.mul(k, &m.act(g)) == n.act(g).mul(k, f))
}

/// Isomorphism test with an exact witness.
pub fn is_module_iso(m: &Module, n: &Module, trials: usize, seed: u64) -> Result<Verdict<Mat>> {
    let k = m.field();
    if m.dim != n.dim {
        return Ok(Verdict::refuted(format!("dimensions differ: {} vs {}", m.dim, n.dim)));
    }
    if m.dim == 0 {
        return Ok(Verdict::Certified(Mat::zeros(0, 0)));
    }
    if m.dim_vector() != n.dim_vector() {
        return Ok(Verdict::refuted("dimension vectors differ"));
    }
    let (tm, _) = top_generators(m);
    let (tn, _) = top_generators(n);
    if tm != tn {
        return Ok(Verdict::refuted("tops differ"));
    }
    let h = hom(m, n)?;
    let hmm = hom(m, m)?;
    let hnm = hom(n, m)?;
    if h.dim() != hmm.dim() || hnm.dim() != hmm.dim() {
        return Ok(Verdict::refuted("Hom dimensions differ"));
    }
    let mut rng = sample::rng(seed);
    for t in 0..trials.max(1) {
        let f = if t == 0 && h.dim() == 1 {
            h.mats[0].clone()
        } else {
            let mut f = Mat::zeros(n.dim, m.dim);
            for b in &h.mats {
                f.axpy(k, &sample::scalar(k, &mut rng), b);
            }
            f
        };
        if f.rank(k) == m.dim {
            return Ok(Verdict::Certified(f));
        }
    }
    Ok(Verdict::UnknownBeyond(trials))
}

/// Whether the indecomposable `x` is a direct summand of `m`: the identity of
/// `x` must lie in the span of the composites `x → m → x`.
pub fn is_summand(x: &Module, m: &Module) -> Result<bool> {
    let k = x.field();
    if x.dim == 0 {
        return Ok(true);
    }
    let f = hom(x, m)?;
    let g = hom(m, x)?;
    let n = x.dim * x.dim;
    let mut e = Echelon::new(k, n);
    for a in &f.mats {
        for b in &g.mats {
            e.insert_dense(b.mul(k, a).entries());
            if e.rank() == n {
                break;
            }
        }
    }
    Ok(e.contains(Mat::identity(x.dim).entries()))
}

/// `End_A(M)` for `M = ⊕ parts`, with the summand projections as family.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Algebra,
    pub module: Module,
    pub hom: HomSpace,
    /// Start of each summand in the coordinates of `module`.
    pub offsets: Vec<usize>,
}

/// Builds the endomorphism algebra of a direct sum; multiplication is
/// composition with maps on the right (`xy` means `x` then `y`).
pub fn end_algebra(ring: &Arc<Ring>, parts: &[&Module], provenance: &str) -> Result<EndAlgebra> {
    let k = ring.field();
    let m = Module::direct_sum(ring, parts);
    let h = hom(&m, &m)?;
    let d = h.dim();
    let mut offsets = vec![0];
    for p in parts {
        offsets.push(offsets.last().unwrap() + p.dim);
    }
    let coords = |f: &Mat| h.coords(k, f).ok_or_else(|| Error::verification("endomorphism algebra", "composite is not a homomorphism"));
    let mut table: Vec<Sparse> = Vec::with_capacity(d * d);
    for x in &h.mats {
        for y in &h.mats {
            table.push(to_sparse(&coords(&y.mul(k, x))?));
        }
    }
    let unit = coords(&Mat::identity(m.dim))?;
    let mut idems = Vec::new();
    for i in 0..parts.len() {
        let mut p = Mat::zeros(m.dim, m.dim);
        for j in offsets[i]..offsets[i + 1] {
            p.set(j, j, Rat::ONE);
        }
        idems.push(coords(&p)?);
    }
    let labels = (0..d).map(|i| format!("f{}", i)).collect();
    let mut algebra = Algebra::new(k, labels, table, unit, idems, provenance)?;
    if let Some(rad) = local_radical(k, &h, &offsets) {
        if is_nilpotent_ideal(&algebra, &rad) {
            algebra.radical_hint = Some(rad);
        }
    }
    Ok(EndAlgebra { algebra, module: m, hom: h, offsets })
}

/// When every diagonal block of every basis map is a scalar plus a nilpotent
/// (the summands are indecomposable), the radical of a basic endomorphism
/// algebra is the kernel of the block eigenvalues.
fn local_radical(k: Field, h: &HomSpace, offsets: &[usize]) -> Option<Vec<Vector>> {
    let parts = offsets.len() - 1;
    let mut rows = Vec::with_capacity(parts);
    for i in 0..parts {
        let (lo, hi) = (offsets[i], offsets[i + 1]);
        let mut row = Vec::with_capacity(h.dim());
        for f in &h.mats {
            let mut b = Mat::zeros(hi - lo, hi - lo);
            for r in lo..hi {
                for c in lo..hi {
                    b.set(r - lo, c - lo, f.get(r, c).clone());
                }
            }
            row.push(block_eigenvalue(k, &b)?);
        }
        rows.push(row);
    }
    let m = Mat::from_rows(h.dim(), &rows);
    Some(kernel_basis(k, &m))
}

fn is_nilpotent_ideal(a: &Algebra, h: &[Vector]) -> bool {
    let k = a.field;
    let space = Subspace::span(k, a.dim(), h);
    for i in 0..a.dim() {
        let b = a.basis(i);
        for x in &space.basis {
            if !space.contains(k, &a.mul(&b, x)) || !space.contains(k, &a.mul(x, &b)) {
                return false;
            }
        }
    }
    let mut power = space.clone();
    while power.dim() > 0 {
        let next = a.product_space(&power.basis, &space.basis);
        if next.dim() == power.dim() {
            return false;
        }
        power = next;
    }
    true
}

fn mat_pow(k: Field, m: &Mat, mut e: u64) -> Mat {
    let mut acc = Mat::identity(m.rows);
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(k, &base);
        }
        base = base.mul(k, &base);
        e >>= 1;
    }
    acc
}

/// The unique eigenvalue `λ` of `b` with `b − λ` nilpotent, if there is one.
fn block_eigenvalue(k: Field, b: &Mat) -> Option<Rat> {
    let d = b.rows;
    let lambda = match k {
        Field::Rationals => k.div(&(0..d).fold(Rat::ZERO, |acc, i| k.add(&acc, b.get(i, i))), &k.int(d as i64))?,
        Field::Prime(p) => {
            // b^(p^m) = λ^(p^m) = λ once p^m ≥ d
            let mut q = b.clone();
            let mut pow = 1u64;
            while pow < d as u64 {
                q = mat_pow(k, &q, p as u64);
                pow *= p as u64;
            }
            q.get(0, 0).clone()
        }
    };
    let mut n = b.sub(k, &Mat::identity(d).scale(k, &lambda));
    let mut pow = 1;
    while pow < d {
        n = n.mul(k, &n);
        pow *= 2;
    }
    if n.is_zero() {
        Some(lambda)
    } else {
        None
    }
}

/// A representation of a free algebra: a space with a list of operators.
/// Bimodules are handled as such representations (left and right actions of
/// generators side by side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpRep {
    pub dim: usize,
    pub ops: Vec<Mat>,
}

/// Maps `F` with `F·X_g = Y_g·F` for every operator index `g`.
pub fn hom_ops(k: Field, x: &OpRep, y: &OpRep) -> Result<Vec<Mat>> {
    if x.ops.len() != y.ops.len() {
        return Err(Error::Input("representations have different operator counts".into()));
    }
    let (dx, dy) = (x.dim, y.dim);
    let n = dx * dy;
    let mut eqs: Vec<Sparse> = Vec::new();
    for (xg, yg) in x.ops.iter().zip(&y.ops) {
        for i in 0..dy {
            for j in 0..dx {
                // Σ_l F_il X[l,j] − Σ_l Y[i,l] F_lj
                let mut row = zero_vec(n);
                for l in 0..dx {
                    let c = xg.get(l, j);
                    if !c.is_zero() {
                        row[i * dx + l] = k.add(&row[i * dx + l], c);
                    }
                }
                for l in 0..dy {
                    let c = yg.get(i, l);
                    if !c.is_zero() {
                        row[l * dx + j] = k.sub(&row[l * dx + j], c);
                    }
                }
                let s = to_sparse(&row);
                if !s.is_empty() {
                    eqs.push(s);
                }
            }
        }
    }
    let sols = solve_homogeneous(k, n, eqs);
    Ok(sols.into_iter().map(|v| Mat::from_rows(dx, &v.chunks(dx.max(1)).map(|c| c.to_vec()).collect::<Vec<_>>())).collect())
}

/// Isomorphism test between operator representations.
pub fn iso_ops(k: Field, x: &OpRep, y: &OpRep, trials: usize, seed: u64) -> Result<Verdict<Mat>> {
    if x.dim != y.dim {
        return Ok(Verdict::refuted(format!("dimensions differ: {} vs {}", x.dim, y.dim)));
    }
    if x.dim == 0 {
        return Ok(Verdict::Certified(Mat::zeros(0, 0)));
    }
    let hs = hom_ops(k, x, y)?;
    if hs.is_empty() {
        return Ok(Verdict::refuted("no nonzero homomorphism"));
    }
    let back = hom_ops(k, y, x)?;
    if back.len() != hs.len() {
        return Ok(Verdict::refuted("Hom dimensions differ"));
    }
    let mut rng = sample::rng(seed);
    for t in 0..trials.max(1) {
        let f = if t == 0 && hs.len() == 1 {
            hs[0].clone()
        } else {
            let mut f = Mat::zeros(y.dim, x.dim);
            for b in &hs {
                f.axpy(k, &sample::scalar(k, &mut rng), b);
            }
            f
        };
        if f.rank(k) == x.dim {
            return Ok(Verdict::Certified(f));
        }
    }
    Ok(Verdict::UnknownBeyond(trials))
}

/// Unit vector helper for modules.
pub fn basis_vector(m: &Module, i: usize) -> Vector {
    unit_vec(m.dim, i)
}

/// Whether `v` is zero in `M`.
pub fn is_zero_element(v: &[Rat]) -> bool {
    is_zero_vec(v)
}
