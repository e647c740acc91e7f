//! Extension algebras `A ⊕ M`, the corner tensor `Ae ⊗_{eAe} eA` and the
//! mirror-reflective algebras built from it.

use crate::algebra::{check_central_in_corner, Algebra, Corner};
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::invariants::{center, central_idempotents, check_symmetrizing, gram, radical, simple_count, symmetric_functionals, SymmetrizingData};
use crate::linalg::{axpy, is_zero_vec, kernel_basis, solve, to_sparse, unit_vec, zero_vec, Mat, Quotient, Sparse, Subspace, Vector};
use crate::sample;
use crate::verdict::{Check, Verdict};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// A bimodule `M` over `A` with a bimodule map `α: M ⊗_A M → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMult {
    pub dim: usize,
    /// `left[b]`: action of the basis element `b` on the left.
    pub left: Vec<Mat>,
    /// `right[b]`: column `i` holds `m_i · b`.
    pub right: Vec<Mat>,
    /// `alpha[i * dim + j] = (m_i ⊗ m_j)α`.
    pub alpha: Vec<Vector>,
}

impl BimoduleMult {
    /// The square-zero case `α = 0`.
    pub fn square_zero(dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> BimoduleMult {
        BimoduleMult { dim, left, right, alpha: vec![zero_vec(dim); dim * dim] }
    }

    pub fn mult(&self, k: Field, x: &[Rat], y: &[Rat]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    axpy(k, &mut out, &k.mul(a, b), &self.alpha[i * self.dim + j]);
                }
            }
        }
        out
    }

    fn act(&self, k: Field, mats: &[Mat], x: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.axpy(k, c, &mats[b]);
            }
        }
        m
    }

    /// Bimodule axioms, balancing and bilinearity of `α`, and the associative
    /// law `((x⊗y)α ⊗ z)α = (x ⊗ (y⊗z)α)α`, all on basis elements.
    pub fn check(&self, a: &Algebra) -> Result<()> {
        let k = a.field;
        let n = a.dim();
        let d = self.dim;
        if self.left.len() != n || self.right.len() != n || self.alpha.len() != d * d {
            return Err(Error::Input("bimodule data does not match the algebra".into()));
        }
        let id = Mat::identity(d);
        if self.act(k, &self.left, &a.unit) != id || self.act(k, &self.right, &a.unit) != id {
            return Err(Error::verification("bimodule", "unit does not act as the identity"));
        }
        for b in 0..n {
            for c in 0..n {
                let bc = crate::linalg::to_dense(n, a.basis_product(b, c));
                if self.left[b].mul(k, &self.left[c]) != self.act(k, &self.left, &bc) {
                    return Err(Error::verification("bimodule", format!("left action of {}·{}", a.labels[b], a.labels[c])));
                }
                if self.right[c].mul(k, &self.right[b]) != self.act(k, &self.right, &bc) {
                    return Err(Error::verification("bimodule", format!("right action of {}·{}", a.labels[b], a.labels[c])));
                }
                if self.left[b].mul(k, &self.right[c]) != self.right[c].mul(k, &self.left[b]) {
                    return Err(Error::verification("bimodule", "left and right actions do not commute"));
                }
            }
        }
        for i in 0..d {
            let mi = unit_vec(d, i);
            for j in 0..d {
                let mj = unit_vec(d, j);
                let p = &self.alpha[i * d + j];
                for b in 0..n {
                    let balanced = self.mult(k, &self.right[b].col(i), &mj) == self.mult(k, &mi, &self.left[b].col(j));
                    let left = self.mult(k, &self.left[b].col(i), &mj) == self.left[b].mul_vec(k, p);
                    let right = self.mult(k, &mi, &self.right[b].col(j)) == self.right[b].mul_vec(k, p);
                    if !(balanced && left && right) {
                        return Err(Error::verification("bimodule product", format!("α is not a balanced bimodule map at (m{}, m{}, {})", i, j, a.labels[b])));
                    }
                }
                for l in 0..d {
                    let ml = unit_vec(d, l);
                    if self.mult(k, p, &ml) != self.mult(k, &mi, &self.alpha[j * d + l]) {
                        return Err(Error::verification("associative law", format!("fails on the triple (m{}, m{}, m{})", i, j, l)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The algebra `A ⊕ M` with `(a, m)(b, n) = (ab, an + mb + (m⊗n)α)`.
///
/// Basis: the basis of `A` followed by the basis of `M`; the family of `A`
/// is kept.
pub fn extension_algebra(a: &Algebra, bm: &BimoduleMult, labels: Option<Vec<String>>, provenance: &str) -> Result<Algebra> {
    bm.check(a)?;
    let n = a.dim();
    let d = bm.dim;
    let embed = |v: &[Rat]| {
        let mut w = v.to_vec();
        w.extend(zero_vec(d));
        w
    };
    let mut all_labels = a.labels.clone();
    all_labels.extend(labels.unwrap_or_else(|| (0..d).map(|i| format!("m{}", i)).collect()));
    let mut table: Vec<Sparse> = Vec::with_capacity((n + d) * (n + d));
    for i in 0..n + d {
        for j in 0..n + d {
            let t: Sparse = match (i < n, j < n) {
                (true, true) => a.basis_product(i, j).clone(),
                (true, false) => shift(to_sparse(&bm.left[i].col(j - n)), n),
                (false, true) => shift(to_sparse(&bm.right[j].col(i - n)), n),
                (false, false) => shift(to_sparse(&bm.alpha[(i - n) * d + (j - n)]), n),
            };
            table.push(t);
        }
    }
    let idems = a.idems.iter().map(|e| embed(e)).collect();
    let r = Algebra::new(a.field, all_labels, table, embed(&a.unit), idems, provenance)?;
    r.check_associative()?;
    Ok(r)
}

fn shift(s: Sparse, by: usize) -> Sparse {
    s.into_iter().map(|(i, c)| (i + by, c)).collect()
}

/// `T = Ae ⊗_Λ eA` for `Λ = eAe`, with the product `ω_λ`.
#[derive(Clone, Debug)]
pub struct CornerTensor {
    pub e: Vector,
    pub lambda: Vector,
    pub corner: Corner,
    pub ae: Subspace,
    pub ea: Subspace,
    pub quotient: Quotient,
    /// Each basis element of `T` is the pure tensor `ae[i] ⊗ ea[j]`.
    pub pairs: Vec<(usize, usize)>,
    pub bimodule: BimoduleMult,
}

impl CornerTensor {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// `x ⊗ y` in the coordinates of `T`, for `x ∈ Ae` and `y ∈ eA` given in `A`.
    pub fn tensor(&self, k: Field, x: &[Rat], y: &[Rat]) -> Vector {
        let cx = self.ae.coords_unchecked(x);
        let cy = self.ea.coords_unchecked(y);
        self.tensor_coords(k, &cx, &cy)
    }

    fn tensor_coords(&self, k: Field, cx: &[Rat], cy: &[Rat]) -> Vector {
        let q = self.ea.dim();
        let mut v = zero_vec(self.ae.dim() * q);
        for (i, a) in cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in cy.iter().enumerate() {
                if !b.is_zero() {
                    v[i * q + j] = k.mul(a, b);
                }
            }
        }
        self.quotient.project(k, &v)
    }

    /// The pure tensor lifting the basis element `s`, as elements of `A`.
    pub fn factors(&self, s: usize) -> (&Vector, &Vector) {
        let (i, j) = self.pairs[s];
        (&self.ae.basis[i], &self.ea.basis[j])
    }

    /// `Σ x λ' y` over the terms of `t`, for a level `λ'`.
    pub fn multiply_out(&self, a: &Algebra, t: &[Rat], level: &[Rat]) -> Vector {
        let k = a.field;
        let mut out = a.zero();
        for (s, c) in t.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (x, y) = self.factors(s);
            axpy(k, &mut out, c, &a.mul3(x, level, y));
        }
        out
    }

    /// `ω_μ` on basis elements: `(x⊗y)(x'⊗y') = x ⊗ μyx'y'`.
    pub fn omega(&self, a: &Algebra, level: &[Rat], s: usize, t: usize) -> Vector {
        let (x, y) = self.factors(s);
        let (x2, y2) = self.factors(t);
        let inner = a.mul(&a.mul3(level, y, x2), y2);
        self.tensor(a.field, x, &inner)
    }
}

pub fn corner_tensor(a: &Algebra, e: &[Rat], lambda: &[Rat]) -> Result<CornerTensor> {
    let k = a.field;
    if is_zero_vec(e) {
        return Err(Error::Precondition("the idempotent is zero".into()));
    }
    let corner = a.corner(e)?;
    check_central_in_corner(a, e, lambda)?;
    let ae = a.sandwich(&a.unit, e);
    let ea = a.sandwich(e, &a.unit);
    let (p, q) = (ae.dim(), ea.dim());
    let mut rels: Vec<Sparse> = Vec::new();
    for l in &corner.space.basis {
        let xl: Vec<Vector> = ae.basis.iter().map(|x| ae.coords_unchecked(&a.mul(x, l))).collect();
        let ly: Vec<Vector> = ea.basis.iter().map(|y| ea.coords_unchecked(&a.mul(l, y))).collect();
        for i in 0..p {
            for j in 0..q {
                let mut v = zero_vec(p * q);
                for (i2, c) in xl[i].iter().enumerate() {
                    if !c.is_zero() {
                        v[i2 * q + j] = k.add(&v[i2 * q + j], c);
                    }
                }
                for (j2, c) in ly[j].iter().enumerate() {
                    if !c.is_zero() {
                        v[i * q + j2] = k.sub(&v[i * q + j2], c);
                    }
                }
                let s = to_sparse(&v);
                if !s.is_empty() {
                    rels.push(s);
                }
            }
        }
    }
    let quotient = Quotient::new(Subspace::span_sparse(k, p * q, &rels));
    let pairs: Vec<(usize, usize)> = quotient.free.iter().map(|f| (f / q, f % q)).collect();
    let mut ct = CornerTensor {
        e: e.to_vec(),
        lambda: lambda.to_vec(),
        corner,
        ae,
        ea,
        quotient,
        pairs,
        bimodule: BimoduleMult::square_zero(0, Vec::new(), Vec::new()),
    };
    let d = ct.dim();
    let n = a.dim();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for b in 0..n {
        let bv = a.basis(b);
        let lc: Vec<Vector> = (0..d).map(|s| { let (x, y) = ct.factors(s); ct.tensor(k, &a.mul(&bv, x), y) }).collect();
        let rc: Vec<Vector> = (0..d).map(|s| { let (x, y) = ct.factors(s); ct.tensor(k, x, &a.mul(y, &bv)) }).collect();
        left.push(Mat::from_cols(d, &lc));
        right.push(Mat::from_cols(d, &rc));
    }
    let mut alpha = Vec::with_capacity(d * d);
    for s in 0..d {
        for t in 0..d {
            let w = ct.omega(a, lambda, s, t);
            // the other side of the balanced tensor: x y x' λ ⊗ y'
            let (x, y) = ct.factors(s);
            let (x2, y2) = ct.factors(t);
            let w2 = ct.tensor(k, &a.mul(&a.mul3(x, y, x2), lambda), y2);
            if w != w2 {
                return Err(Error::verification("corner tensor product", format!("the two expressions of the product of basis elements {} and {} differ", s, t)));
            }
            alpha.push(w);
        }
    }
    ct.bimodule = BimoduleMult { dim: d, left, right, alpha };
    Ok(ct)
}

/// The mirror-reflective algebra `R(A, e, λ) = A ⊕ T` with its structure maps.
#[derive(Clone, Debug)]
pub struct Mirror {
    pub source: Algebra,
    pub tensor: CornerTensor,
    /// `R`; basis of `A` followed by the basis of `T`.
    pub algebra: Algebra,
    /// Indices of the family members of `A` summing to `e`.
    pub subset: Vec<usize>,
    /// `ē` (`e ⊗ μ` with `μλ = e`), when `λ` is invertible in `eAe`.
    pub ebar: Option<Vector>,
    /// `e₀ = (1 − e) + ē`.
    pub e0: Option<Vector>,
    /// `π₁: R → A`, `(a, t) ↦ a` (matrix acting on columns).
    pub pi1: Mat,
    /// `π₂: R → A`, `(a, x⊗y) ↦ a + xλy`.
    pub pi2: Mat,
    /// `φ: (a, t) ↦ (a + π₂(t), −t)`.
    pub phi: Mat,
    pub ideal_i: Subspace,
    pub ideal_j: Subspace,
}

impl Mirror {
    pub fn n(&self) -> usize {
        self.source.dim()
    }

    pub fn embed_a(&self, a: &[Rat]) -> Vector {
        let mut v = a.to_vec();
        v.extend(zero_vec(self.tensor.dim()));
        v
    }

    pub fn embed_t(&self, t: &[Rat]) -> Vector {
        let mut v = zero_vec(self.n());
        v.extend_from_slice(t);
        v
    }
}

/// Inverse of `λ` in the corner algebra, when it exists.
fn corner_inverse(a: &Algebra, c: &Corner, e: &[Rat], lambda: &[Rat]) -> Option<Vector> {
    let k = a.field;
    let l = c.space.coords_unchecked(lambda);
    let m = c.algebra.left_matrix(&l);
    let mu = solve(k, &m, &c.algebra.unit).ok().flatten()?;
    let mu_a = c.embed(k, &mu);
    if a.mul(&mu_a, lambda) == e {
        Some(mu_a)
    } else {
        None
    }
}

pub fn mirror_reflective(a: &Algebra, e: &[Rat], lambda: &[Rat]) -> Result<Mirror> {
    let k = a.field;
    let subset = a
        .family_subset(e)
        .ok_or_else(|| Error::Precondition("the idempotent must be a sum of members of the chosen family".into()))?;
    let ct = corner_tensor(a, e, lambda)?;
    let n = a.dim();
    let d = ct.dim();
    let labels: Vec<String> = (0..d)
        .map(|s| {
            let (x, y) = ct.factors(s);
            format!("{}⊗{}", a.describe(x), a.describe(y))
        })
        .collect();
    let mut r = extension_algebra(a, &ct.bimodule, Some(labels), &format!("mirror({})", a.provenance))?;
    let embed_a = |v: &[Rat]| {
        let mut w = v.to_vec();
        w.extend(zero_vec(d));
        w
    };
    let embed_t = |t: &[Rat]| {
        let mut w = zero_vec(n);
        w.extend_from_slice(t);
        w
    };
    let mu = corner_inverse(a, &ct.corner, e, lambda);
    let mut ebar = None;
    let mut e0 = None;
    if let Some(mu) = &mu {
        let mut idems = Vec::new();
        let mut barred = Vec::new();
        let mut eb = zero_vec(n + d);
        for (i, f) in a.idems.iter().enumerate() {
            if subset.contains(&i) {
                let b = embed_t(&ct.tensor(k, f, &a.mul(mu, f)));
                idems.push(crate::linalg::vec_sub(k, &embed_a(f), &b));
                axpy(k, &mut eb, &Rat::ONE, &b);
                barred.push(b);
            } else {
                idems.push(embed_a(f));
            }
        }
        idems.extend(barred);
        r = Algebra::new(k, r.labels.clone(), (0..(n + d) * (n + d)).map(|i| r.basis_product(i / (n + d), i % (n + d)).clone()).collect(), r.unit.clone(), idems, &r.provenance)?;
        let one_minus_e = crate::linalg::vec_sub(k, &r.unit, &embed_a(e));
        e0 = Some(crate::linalg::vec_add(k, &one_minus_e, &eb));
        ebar = Some(eb);
    }
    // π₁, π₂ and φ
    let mut pi1 = Mat::zeros(n, n + d);
    let mut pi2 = Mat::zeros(n, n + d);
    for i in 0..n {
        pi1.set(i, i, Rat::ONE);
        pi2.set(i, i, Rat::ONE);
    }
    for s in 0..d {
        let img = ct.multiply_out(a, &unit_vec(d, s), lambda);
        for (i, c) in img.into_iter().enumerate() {
            pi2.set(i, n + s, c);
        }
    }
    let mut phi = Mat::zeros(n + d, n + d);
    for i in 0..n + d {
        if i < n {
            phi.set(i, i, Rat::ONE);
        } else {
            for j in 0..n {
                phi.set(j, i, pi2.get(j, i).clone());
            }
            phi.set(i, i, k.neg(&Rat::ONE));
        }
    }
    let ideal_i = Subspace::span(k, n + d, &(0..d).map(|s| unit_vec(n + d, n + s)).collect::<Vec<_>>());
    let ideal_j = Subspace::span(k, n + d, &kernel_basis(k, &pi2));
    // rad R = rad A ⊕ {t : π₂(t) ∈ rad A}
    if let Ok(rad) = radical(a) {
        let mut hint: Vec<Vector> = rad.basis.iter().map(|v| embed_a(v)).collect();
        let q = Quotient::new(rad.clone());
        let proj = q.projection(k);
        let mut tmat = Mat::zeros(n, d);
        for s in 0..d {
            for i in 0..n {
                tmat.set(i, s, pi2.get(i, n + s).clone());
            }
        }
        for t in kernel_basis(k, &proj.mul(k, &tmat)) {
            hint.push(embed_t(&t));
        }
        r.radical_hint = Some(Subspace::span(k, n + d, &hint).basis);
    }
    Ok(Mirror { source: a.clone(), tensor: ct, algebra: r, subset, ebar, e0, pi1, pi2, phi, ideal_i, ideal_j })
}

/// `R(A, e) = R(A, e, e)`.
pub fn mirror_at(a: &Algebra, e: &[Rat]) -> Result<Mirror> {
    mirror_reflective(a, e, e)
}

fn same_space(k: Field, x: &Subspace, y: &Subspace) -> bool {
    x.dim() == y.dim() && x.contains_space(k, y)
}

pub(crate) fn is_algebra_map(src: &Algebra, dst: &Algebra, m: &Mat) -> bool {
    let k = src.field;
    let n = src.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.mul_vec(k, &crate::linalg::to_dense(n, src.basis_product(i, j)));
            if lhs != dst.mul(&m.col(i), &m.col(j)) {
                return false;
            }
        }
    }
    m.mul_vec(k, &src.unit) == dst.unit
}

impl Mirror {
    /// The structural identities relating `R`, `A`, `ē`, `I`, `J`, `φ`, `π₁`, `π₂`.
    pub fn property_suite(&self) -> Result<Vec<Check>> {
        let a = &self.source;
        let r = &self.algebra;
        let k = a.field;
        let n = a.dim();
        let d = self.tensor.dim();
        let mut out = Vec::new();
        let ebar = self.ebar.as_ref().ok_or_else(|| Error::Precondition("the level is not invertible in eAe; ē is undefined".into()))?;
        let e_r = self.embed_a(&self.tensor.e);
        let i_gen = r.ideal(core::slice::from_ref(ebar));
        out.push(Check::new("I = RēR", same_space(k, &i_gen, &self.ideal_i), format!("dim I = {}, dim RēR = {}", self.ideal_i.dim(), i_gen.dim())));
        let j_gen = r.ideal(&[r.sub(&e_r, ebar)]);
        out.push(Check::new("J = R(e-ē)R", same_space(k, &j_gen, &self.ideal_j), format!("dim J = {}, dim R(e-ē)R = {}", self.ideal_j.dim(), j_gen.dim())));
        let ij = r.product_space(&self.ideal_i.basis, &self.ideal_j.basis);
        let ji = r.product_space(&self.ideal_j.basis, &self.ideal_i.basis);
        out.push(Check::new("IJ = 0", ij.dim() == 0, format!("dim IJ = {}", ij.dim())));
        out.push(Check::new("JI = 0", ji.dim() == 0, format!("dim JI = {}", ji.dim())));
        let sum = self.ideal_i.sum(k, &self.ideal_j);
        let rer = r.ideal(core::slice::from_ref(&e_r));
        out.push(Check::new("I + J = ReR", same_space(k, &sum, &rer), format!("dim(I + J) = {}, dim ReR = {}", sum.dim(), rer.dim())));
        let e0 = self.e0.as_ref().unwrap();
        let s_space = r.sandwich(e0, e0);
        let one_minus_e = a.sub(&a.unit, &self.tensor.e);
        let b0 = a.sandwich(&one_minus_e, &one_minus_e);
        let mut expect: Vec<Vector> = b0.basis.iter().map(|v| self.embed_a(v)).collect();
        expect.extend(self.ideal_i.basis.iter().cloned());
        let expect = Subspace::span(k, n + d, &expect);
        out.push(Check::new("S = e0Re0", same_space(k, &s_space, &expect), format!("dim e0Re0 = {}, dim (1-e)A(1-e) + dim T = {}", s_space.dim(), expect.dim())));
        let phi2 = self.phi.mul(k, &self.phi);
        out.push(Check::new("φ² = Id", phi2 == Mat::identity(n + d), String::new()));
        out.push(Check::new("φ is an algebra map", is_algebra_map(r, r, &self.phi), String::new()));
        out.push(Check::new("π₂ = φπ₁", self.pi1.mul(k, &self.phi) == self.pi2, String::new()));
        out.push(Check::new("π₁ is an algebra map", is_algebra_map(r, a, &self.pi1), String::new()));
        out.push(Check::new("π₂ is an algebra map", is_algebra_map(r, a, &self.pi2), String::new()));
        out.push(Check::new("R/I ≅ A", r.dim() - self.ideal_i.dim() == n && self.pi1.rank(k) == n, format!("dim R/I = {}", r.dim() - self.ideal_i.dim())));
        // π₂ restricted to Rē, ēR, ēRē
        let e = &self.tensor.e;
        for (name, rs, as_) in [
            ("π₂: Rē → Ae bijective", r.sandwich(&r.unit, ebar), a.sandwich(&a.unit, e)),
            ("π₂: ēR → eA bijective", r.sandwich(ebar, &r.unit), a.sandwich(e, &a.unit)),
            ("π₂: ēRē → eAe bijective", r.sandwich(ebar, ebar), a.sandwich(e, e)),
        ] {
            let img: Vec<Vector> = rs.basis.iter().map(|v| self.pi2.mul_vec(k, v)).collect();
            let img = Subspace::span(k, n, &img);
            out.push(Check::new(name, rs.dim() == as_.dim() && same_space(k, &img, &as_), format!("dims {} and {}", rs.dim(), as_.dim())));
        }
        let (ca, cr, cl) = (simple_count(a)?, simple_count(r)?, simple_count(&self.tensor.corner.algebra)?);
        out.push(Check::new("#(R) = #(A) + #(eAe)", cr == ca + cl, format!("{} = {} + {}", cr, ca, cl)));
        // J = Ann of I on the right when eA is faithful on the right
        if right_faithful(a, &self.tensor.ea) {
            let ann = right_annihilator(r, &self.ideal_i);
            out.push(Check::new("J = Ann(I) (eA faithful)", same_space(k, &ann, &self.ideal_j), format!("dim Ann = {}", ann.dim())));
        }
        let red = self.reduced()?;
        out.extend(red.checks(self)?);
        Ok(out)
    }

    /// Whether `Ae` is a generator (`AeA = A`).
    pub fn is_generator_case(&self) -> bool {
        self.source.ideal(core::slice::from_ref(&self.tensor.e)).dim() == self.source.dim()
    }

    /// Block count of `R` against the indecomposability criterion, for
    /// indecomposable `A`.
    pub fn block_check(&self) -> Result<Option<Check>> {
        if central_idempotents(&self.source)?.count() != 1 {
            return Ok(None);
        }
        let blocks = central_idempotents(&self.algebra)?.count();
        let expected = if self.is_generator_case() { 2 } else { 1 };
        Ok(Some(Check::new("blocks of R", blocks == expected, format!("{} blocks, expected {}", blocks, expected))))
    }

    pub fn reduced(&self) -> Result<ReducedMirror> {
        let k = self.source.field;
        let e0 = self.e0.as_ref().ok_or_else(|| Error::Precondition("e0 needs an invertible level".into()))?;
        let corner = self.algebra.corner(e0)?;
        let embed = Mat::from_cols(self.algebra.dim(), &corner.space.basis);
        let pi1 = self.pi1.mul(k, &embed);
        let pi2 = self.pi2.mul(k, &embed);
        Ok(ReducedMirror { corner, pi1, pi2 })
    }
}

/// `S(A, e) = e₀Re₀` with `π₁′: S → (1 − e)A(1 − e)` and `π₂′: S → A`
/// (both as matrices into `A`).
#[derive(Clone, Debug)]
pub struct ReducedMirror {
    pub corner: Corner,
    pub pi1: Mat,
    pub pi2: Mat,
}

impl ReducedMirror {
    pub fn algebra(&self) -> &Algebra {
        &self.corner.algebra
    }

    fn checks(&self, m: &Mirror) -> Result<Vec<Check>> {
        let k = m.source.field;
        let s = self.algebra();
        let embed = |v: &Vector| self.corner.embed(k, v);
        let ker1 = Subspace::span(k, m.algebra.dim(), &kernel_basis(k, &self.pi1).iter().map(embed).collect::<Vec<_>>());
        let ker2 = Subspace::span(k, m.algebra.dim(), &kernel_basis(k, &self.pi2).iter().map(embed).collect::<Vec<_>>());
        let j_cap_s = m.ideal_j.intersect(k, &self.corner.space);
        Ok(vec![
            Check::new("Ker π₁′ = I", same_space(k, &ker1, &m.ideal_i), format!("dim Ker π₁′ = {}", ker1.dim())),
            Check::new("Ker π₂′ = J ∩ S", same_space(k, &ker2, &j_cap_s), format!("dim Ker π₂′ = {}", ker2.dim())),
            Check::new("π₂′ is surjective", self.pi2.rank(k) == m.source.dim(), String::new()),
            Check::new("S is an algebra", s.check_associative().is_ok(), format!("dim S = {}", s.dim())),
        ])
    }
}

fn right_faithful(a: &Algebra, ea: &Subspace) -> bool {
    // {x : eA·x = 0} = 0
    let k = a.field;
    let n = a.dim();
    let mut rows = Vec::new();
    for y in &ea.basis {
        rows.extend(a.left_matrix(y).row_vecs());
    }
    kernel_basis(k, &Mat::from_rows(n, &rows)).is_empty()
}

fn right_annihilator(r: &Algebra, ideal: &Subspace) -> Subspace {
    let k = r.field;
    let n = r.dim();
    let mut rows = Vec::new();
    for y in &ideal.basis {
        rows.extend(r.left_matrix(y).row_vecs());
    }
    Subspace::span(k, n, &kernel_basis(k, &Mat::from_rows(n, &rows)))
}

/// The unique algebra map `R → Γ` extending `α: A → Γ` and sending `ē` to `x`.
pub fn lift_homomorphism(m: &Mirror, gamma: &Algebra, alpha: &Mat, x: &[Rat]) -> Result<Mat> {
    let a = &m.source;
    let k = a.field;
    if m.ebar.is_none() || m.tensor.lambda != m.tensor.e {
        return Err(Error::Precondition("lifting is defined for the level λ = e".into()));
    }
    if !is_algebra_map(a, gamma, alpha) {
        return Err(Error::Precondition("α is not an algebra map".into()));
    }
    let ea = alpha.mul_vec(k, &m.tensor.e);
    if gamma.mul3(&ea, x, &ea) != x {
        return Err(Error::Precondition("x does not lie in (e)α Γ (e)α".into()));
    }
    if !gamma.is_idempotent(x) {
        return Err(Error::Precondition("x is not idempotent".into()));
    }
    for l in &m.tensor.corner.space.basis {
        if !gamma.commutes(x, &alpha.mul_vec(k, l)) {
            return Err(Error::Precondition(format!("x does not commute with the image of {}", a.describe(l))));
        }
    }
    let n = a.dim();
    let d = m.tensor.dim();
    let mut cols: Vec<Vector> = (0..n).map(|i| alpha.col(i)).collect();
    for s in 0..d {
        let (p, q) = m.tensor.factors(s);
        cols.push(gamma.mul3(&alpha.mul_vec(k, p), x, &alpha.mul_vec(k, q)));
    }
    let lift = Mat::from_cols(gamma.dim(), &cols);
    if !is_algebra_map(&m.algebra, gamma, &lift) {
        return Err(Error::verification("lifted homomorphism", "extension is not multiplicative"));
    }
    Ok(lift)
}

/// Searches for an isomorphism `ι: eA → D(Ae)` of bimodules.
///
/// Such maps are right multiplications by `ι_e`, a functional on `eAe`
/// with `ι_e(λw) = ι_e(wλ)`; the map is bijective exactly when the pairing
/// `(y, x) ↦ ι_e(yx)` on `eA × Ae` is nondegenerate. Returns `ι_e` as a
/// functional on `A` (vanishing off `eAe`).
pub fn find_bimodule_iso(a: &Algebra, e: &[Rat], trials: usize, seed: u64) -> Result<Verdict<Vector>> {
    let k = a.field;
    let c = a.corner(e)?;
    let ae = a.sandwich(&a.unit, e);
    let ea = a.sandwich(e, &a.unit);
    if ae.dim() != ea.dim() {
        return Ok(Verdict::refuted(format!("dim eA = {} but dim Ae = {}", ea.dim(), ae.dim())));
    }
    let fs = symmetric_functionals(&c.algebra);
    if fs.is_empty() {
        return Ok(Verdict::refuted("eAe has no symmetric functional"));
    }
    // products y·x in corner coordinates
    let prods: Vec<Vec<Vector>> = ea.basis.iter().map(|y| ae.basis.iter().map(|x| c.space.coords_unchecked(&a.mul(y, x))).collect()).collect();
    let pairing = |f: &[Rat]| {
        let rows: Vec<Vector> = prods.iter().map(|row| row.iter().map(|p| crate::linalg::dot(k, f, p)).collect()).collect();
        Mat::from_rows(ae.dim(), &rows)
    };
    let mut rng = sample::rng(seed);
    for t in 0..fs.len() + trials {
        let f: Vector = if t < fs.len() {
            fs[t].clone()
        } else {
            let mut f = zero_vec(c.algebra.dim());
            for g in &fs {
                axpy(k, &mut f, &sample::scalar(k, &mut rng), g);
            }
            f
        };
        if pairing(&f).rank(k) == ae.dim() {
            // as a functional on A: b ↦ f(e b e)
            let on_a: Vector = (0..a.dim()).map(|b| crate::linalg::dot(k, &f, &c.compress(a, e, &a.basis(b)))).collect();
            return Ok(Verdict::Certified(on_a));
        }
    }
    Ok(Verdict::UnknownBeyond(trials))
}

/// The form `χ(a + Σ x⊗y) = Σ ι_e(yx)` on `R(A, e, λ)`, checked symmetric and
/// nondegenerate.
pub fn symmetrizing_form(m: &Mirror, iota_e: &[Rat]) -> Result<SymmetrizingData> {
    let a = &m.source;
    let k = a.field;
    let mut chi = zero_vec(m.n());
    for s in 0..m.tensor.dim() {
        let (x, y) = m.tensor.factors(s);
        chi.push(crate::linalg::dot(k, iota_e, &a.mul(y, x)));
    }
    let data = SymmetrizingData { gram: gram(&m.algebra, &chi), functional: chi };
    check_symmetrizing(&m.algebra, &data)?;
    Ok(data)
}

/// `A ⋉_λ D(A)` and the isomorphism `γ̄ = (Id, γ)` from `R(A, e, λ)`.
#[derive(Clone, Debug)]
pub struct TwistedTrivialExtension {
    pub algebra: Algebra,
    /// `γ̄` as a matrix on the bases of `R` and `A ⊕ D(A)`.
    pub gamma_bar: Mat,
    /// The central element `λ′` of `A` with `eλ′e = λ`.
    pub lambda_prime: Vector,
}

pub fn trivial_extension_compare(m: &Mirror, iota_e: &[Rat]) -> Result<TwistedTrivialExtension> {
    let a = &m.source;
    let k = a.field;
    let n = a.dim();
    let d = m.tensor.dim();
    let e = &m.tensor.e;
    // γ(x⊗y)(a′) = ι_e(y a′ x)
    let gamma_cols: Vec<Vector> = (0..d)
        .map(|s| {
            let (x, y) = m.tensor.factors(s);
            (0..n).map(|b| crate::linalg::dot(k, iota_e, &a.mul3(y, &a.basis(b), x))).collect()
        })
        .collect();
    let gamma = Mat::from_cols(n, &gamma_cols);
    if d != n || gamma.rank(k) != n {
        return Err(Error::Precondition("γ: Ae ⊗ eA → D(A) is not bijective".into()));
    }
    let gamma_inv = crate::linalg::inverse(k, &gamma).ok_or_else(|| Error::verification("γ", "inverse failed"))?;
    // λ′ ∈ Z(A) with eλ′e = λ
    let z = center(a);
    let images: Vec<Vector> = z.basis.iter().map(|v| a.mul3(e, v, e)).collect();
    let coeffs = solve(k, &Mat::from_cols(n, &images), &m.tensor.lambda)
        .map_err(|err| Error::verification("λ′", format!("{}", err)))?
        .ok_or_else(|| Error::Precondition("no central element of A restricts to λ".into()))?;
    let lambda_prime = z.combine(k, &coeffs);
    // D(A) as a bimodule in the dual basis: (a·f)(z) = f(za), (f·a)(z) = f(az)
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for b in 0..n {
        let mut l = Mat::zeros(n, n);
        let mut r = Mat::zeros(n, n);
        for dd in 0..n {
            for (c, v) in a.basis_product(dd, b) {
                l.set(dd, *c, v.clone());
            }
            for (c, v) in a.basis_product(b, dd) {
                r.set(dd, *c, v.clone());
            }
        }
        left.push(l);
        right.push(r);
    }
    let e_level = m.tensor.e.clone();
    let mut alpha = Vec::with_capacity(n * n);
    let lp_right = {
        let mut mm = Mat::zeros(n, n);
        for (b, c) in lambda_prime.iter().enumerate() {
            if !c.is_zero() {
                mm.axpy(k, c, &right[b]);
            }
        }
        mm
    };
    let pre: Vec<Vector> = (0..n).map(|f| gamma_inv.col(f)).collect();
    for f in 0..n {
        for g in 0..n {
            // (γ⁻¹f ⊗ γ⁻¹g) ω_e γ, then ·λ′
            let mut t = zero_vec(d);
            for (s, cs) in pre[f].iter().enumerate() {
                if cs.is_zero() {
                    continue;
                }
                for (u, cu) in pre[g].iter().enumerate() {
                    if !cu.is_zero() {
                        axpy(k, &mut t, &k.mul(cs, cu), &m.tensor.omega(a, &e_level, s, u));
                    }
                }
            }
            alpha.push(lp_right.mul_vec(k, &gamma.mul_vec(k, &t)));
        }
    }
    let bm = BimoduleMult { dim: n, left, right, alpha };
    let labels = (0..n).map(|b| format!("{}*", a.labels[b])).collect();
    let te = extension_algebra(a, &bm, Some(labels), &format!("twisted trivial extension({})", a.provenance))?;
    let mut gb = Mat::zeros(2 * n, n + d);
    for i in 0..n {
        gb.set(i, i, Rat::ONE);
    }
    for s in 0..d {
        for i in 0..n {
            gb.set(n + i, n + s, gamma.get(i, s).clone());
        }
    }
    let r = &m.algebra;
    let rr = Algebra::new(k, r.labels.clone(), (0..r.dim() * r.dim()).map(|i| r.basis_product(i / r.dim(), i % r.dim()).clone()).collect(), r.unit.clone(), vec![r.unit.clone()], "")?;
    let tt = Algebra::new(k, te.labels.clone(), (0..te.dim() * te.dim()).map(|i| te.basis_product(i / te.dim(), i % te.dim()).clone()).collect(), te.unit.clone(), vec![te.unit.clone()], "")?;
    if !is_algebra_map(&rr, &tt, &gb) {
        return Err(Error::verification("γ̄", "not multiplicative"));
    }
    Ok(TwistedTrivialExtension { algebra: te, gamma_bar: gb, lambda_prime })
}
