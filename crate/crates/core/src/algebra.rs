//! Finite-dimensional algebras given by structure constants.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::{
    axpy, is_zero_vec, to_sparse, unit_vec, vec_add, vec_sub, zero_vec, Mat, Quotient, Sparse, Subspace, Vector,
};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// An associative unital algebra with a chosen complete family of orthogonal
/// idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub labels: Vec<String>,
    table: Vec<Sparse>,
    pub unit: Vector,
    pub idems: Vec<Vector>,
    pub provenance: String,
    /// Basis of the Jacobson radical when it is known from the construction.
    pub radical_hint: Option<Vec<Vector>>,
}

impl Algebra {
    /// Builds an algebra from the products of basis pairs (`table[i*n+j]`).
    ///
    /// Checks the unit and the idempotent family; associativity is checked
    /// separately by [`Algebra::check_associative`].
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Sparse>,
        unit: Vector,
        idems: Vec<Vector>,
        provenance: &str,
    ) -> Result<Algebra> {
        let n = labels.len();
        if table.len() != n * n || unit.len() != n || idems.iter().any(|e| e.len() != n) {
            return Err(Error::Input(format!("structure table does not match dimension {}", n)));
        }
        let a = Algebra { field, labels, table, unit, idems, provenance: provenance.into(), radical_hint: None };
        a.check_unit()?;
        a.check_family()?;
        Ok(a)
    }

    /// Builds an algebra from a product function on basis indices.
    pub fn from_fn<F: FnMut(usize, usize) -> Vector>(
        field: Field,
        labels: Vec<String>,
        mut f: F,
        unit: Vector,
        idems: Vec<Vector>,
        provenance: &str,
    ) -> Result<Algebra> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(to_sparse(&f(i, j)));
            }
        }
        Algebra::new(field, labels, table, unit, idems, provenance)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vector {
        let k = self.field;
        let n = self.dim();
        let mut out = zero_vec(n);
        let ys: Vec<(usize, &Rat)> = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in &ys {
                let c = k.mul(xi, yj);
                for (l, t) in &self.table[i * n + j] {
                    out[*l] = k.mul_add(&out[*l], &c, t);
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vector {
        self.mul(&self.mul(x, y), z)
    }

    pub fn add(&self, x: &[Rat], y: &[Rat]) -> Vector {
        vec_add(self.field, x, y)
    }

    pub fn sub(&self, x: &[Rat], y: &[Rat]) -> Vector {
        vec_sub(self.field, x, y)
    }

    pub fn scale(&self, c: &Rat, x: &[Rat]) -> Vector {
        x.iter().map(|v| self.field.mul(c, v)).collect()
    }

    /// Matrix of `v ↦ x·v`.
    pub fn left_matrix(&self, x: &[Rat]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &self.basis(j))).collect();
        Mat::from_cols(n, &cols)
    }

    /// Matrix of `v ↦ v·x`.
    pub fn right_matrix(&self, x: &[Rat]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&self.basis(j), x)).collect();
        Mat::from_cols(n, &cols)
    }

    pub fn is_idempotent(&self, e: &[Rat]) -> bool {
        self.mul(e, e) == e
    }

    pub fn commutes(&self, x: &[Rat], y: &[Rat]) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_central(&self, z: &[Rat]) -> bool {
        (0..self.dim()).all(|i| self.commutes(z, &self.basis(i)))
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::verification("unit", format!("unit fails on basis element {}", self.labels[i])));
            }
        }
        Ok(())
    }

    fn check_family(&self) -> Result<()> {
        let mut s = self.zero();
        for (i, e) in self.idems.iter().enumerate() {
            if is_zero_vec(e) || !self.is_idempotent(e) {
                return Err(Error::verification("idempotent family", format!("member {} is not a nonzero idempotent", i)));
            }
            for (j, f) in self.idems.iter().enumerate() {
                if i != j && !is_zero_vec(&self.mul(e, f)) {
                    return Err(Error::verification("idempotent family", format!("members {} and {} are not orthogonal", i, j)));
                }
            }
            s = self.add(&s, e);
        }
        if s != self.unit {
            return Err(Error::verification("idempotent family", "members do not sum to the unit"));
        }
        Ok(())
    }

    /// Exhaustive associativity check on basis triples; reports the first failure.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                if ij.is_empty() {
                    // (b_i b_j) b_l = 0, so b_i (b_j b_l) must vanish too
                    for l in 0..n {
                        let r = self.mul(&self.basis(i), &sparse_dense(n, self.basis_product(j, l)));
                        if !is_zero_vec(&r) {
                            return Err(self.assoc_error(i, j, l));
                        }
                    }
                    continue;
                }
                let ijv = sparse_dense(n, ij);
                for l in 0..n {
                    let left = self.mul(&ijv, &self.basis(l));
                    let right = self.mul(&self.basis(i), &sparse_dense(n, self.basis_product(j, l)));
                    if left != right {
                        return Err(self.assoc_error(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    fn assoc_error(&self, i: usize, j: usize, l: usize) -> Error {
        Error::verification(
            "associativity",
            format!("({}·{})·{} ≠ {}·({}·{})", self.labels[i], self.labels[j], self.labels[l], self.labels[i], self.labels[j], self.labels[l]),
        )
    }

    /// Subspace spanned by products `x·y` for `x ∈ X`, `y ∈ Y`.
    pub fn product_space(&self, xs: &[Vector], ys: &[Vector]) -> Subspace {
        let mut vs = Vec::new();
        for x in xs {
            for y in ys {
                vs.push(self.mul(x, y));
            }
        }
        Subspace::span(self.field, self.dim(), &vs)
    }

    /// `x A y` as a subspace.
    pub fn sandwich(&self, x: &[Rat], y: &[Rat]) -> Subspace {
        let vs: Vec<Vector> = (0..self.dim()).map(|i| self.mul3(x, &self.basis(i), y)).collect();
        Subspace::span(self.field, self.dim(), &vs)
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal(&self, gens: &[Vector]) -> Subspace {
        let n = self.dim();
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..n {
                let bg = self.mul(&self.basis(i), g);
                for j in 0..n {
                    vs.push(self.mul(&bg, &self.basis(j)));
                }
            }
        }
        Subspace::span(self.field, n, &vs)
    }

    /// Largest two-sided ideal contained in the subspace `w`.
    pub fn largest_ideal_in(&self, w: &Subspace) -> Subspace {
        let k = self.field;
        let n = self.dim();
        let mut u = w.clone();
        loop {
            if u.dim() == 0 {
                return u;
            }
            let q = Quotient::new(u.clone());
            // x = Σ c_l u_l must satisfy b_i x, x b_i ∈ U for every basis b_i
            let mut rows: Vec<Vector> = Vec::new();
            for i in 0..n {
                let b = self.basis(i);
                let left: Vec<Vector> = u.basis.iter().map(|x| q.project(k, &self.mul(&b, x))).collect();
                let right: Vec<Vector> = u.basis.iter().map(|x| q.project(k, &self.mul(x, &b))).collect();
                for m in [left, right] {
                    for r in 0..q.dim() {
                        rows.push(m.iter().map(|col| col[r].clone()).collect());
                    }
                }
            }
            let mat = Mat::from_rows(u.dim(), &rows);
            let ker = crate::linalg::kernel_basis(k, &mat);
            if ker.len() == u.dim() {
                return u;
            }
            let vs: Vec<Vector> = ker.iter().map(|c| u.combine(k, c)).collect();
            u = Subspace::span(k, n, &vs);
        }
    }

    /// The algebra with reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
            idems: self.idems.clone(),
            provenance: format!("opposite({})", self.provenance),
            radical_hint: self.radical_hint.clone(),
        }
    }

    /// Direct product `A × B` with basis `A ⊔ B`.
    pub fn direct_product(&self, b: &Algebra) -> Result<Algebra> {
        if self.field != b.field {
            return Err(Error::Input("direct product of algebras over different fields".into()));
        }
        let (n, m) = (self.dim(), b.dim());
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({},0)", l)).collect();
        labels.extend(b.labels.iter().map(|l| format!("(0,{})", l)));
        let mut table = Vec::with_capacity((n + m) * (n + m));
        for i in 0..n + m {
            for j in 0..n + m {
                let t = if i < n && j < n {
                    self.table[i * n + j].clone()
                } else if i >= n && j >= n {
                    b.table[(i - n) * m + (j - n)].iter().map(|(l, c)| (l + n, c.clone())).collect()
                } else {
                    Vec::new()
                };
                table.push(t);
            }
        }
        let embed_a = |v: &Vector| {
            let mut w = v.clone();
            w.extend(zero_vec(m));
            w
        };
        let embed_b = |v: &Vector| {
            let mut w = zero_vec(n);
            w.extend(v.iter().cloned());
            w
        };
        let mut unit = embed_a(&self.unit);
        axpy(self.field, &mut unit, &Rat::ONE, &embed_b(&b.unit));
        let mut idems: Vec<Vector> = self.idems.iter().map(embed_a).collect();
        idems.extend(b.idems.iter().map(embed_b));
        let mut out = Algebra::new(self.field, labels, table, unit, idems, &format!("product({}, {})", self.provenance, b.provenance))?;
        if let (Some(ra), Some(rb)) = (&self.radical_hint, &b.radical_hint) {
            let mut r: Vec<Vector> = ra.iter().map(embed_a).collect();
            r.extend(rb.iter().map(embed_b));
            out.radical_hint = Some(r);
        }
        Ok(out)
    }

    /// The subalgebra carried by `space` with the given unit, re-expressed in
    /// the echelon basis of `space`.
    pub fn restrict(&self, space: &Subspace, unit: &[Rat], idems: &[Vector], provenance: &str) -> Result<Algebra> {
        let k = self.field;
        let d = space.dim();
        let mut table = Vec::with_capacity(d * d);
        for x in &space.basis {
            for y in &space.basis {
                let p = self.mul(x, y);
                let c = space
                    .coords(k, &p)
                    .ok_or_else(|| Error::verification("subalgebra closure", "product leaves the subspace"))?;
                table.push(to_sparse(&c));
            }
        }
        let coords = |v: &[Rat]| space.coords(k, v).ok_or_else(|| Error::verification("subalgebra", "element outside subspace"));
        let unit_c = coords(unit)?;
        let idems_c = idems.iter().map(|e| coords(e)).collect::<Result<Vec<_>>>()?;
        let labels = space.basis.iter().map(|v| self.describe(v)).collect();
        Algebra::new(k, labels, table, unit_c, idems_c, provenance)
    }

    /// Human-readable label of an element.
    pub fn describe(&self, v: &[Rat]) -> String {
        let mut s = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(if c.signum() < 0 && self.field == Field::Rationals { " - " } else { " + " });
            } else if c.signum() < 0 && self.field == Field::Rationals {
                s.push('-');
            }
            let a = if self.field == Field::Rationals && c.signum() < 0 { c.neg() } else { c.clone() };
            if a.is_one() {
                s.push_str(&self.labels[i]);
            } else {
                s.push_str(&format!("{}*{}", a, self.labels[i]));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Decomposition of `e` as a sum of family members, when it is one.
    pub fn family_subset(&self, e: &[Rat]) -> Option<Vec<usize>> {
        let mut sub = Vec::new();
        let mut s = self.zero();
        for (i, f) in self.idems.iter().enumerate() {
            if self.mul(e, f) == *f {
                sub.push(i);
                s = self.add(&s, f);
            }
        }
        if s.as_slice() == e {
            Some(sub)
        } else {
            None
        }
    }

    /// Sum of the family members with the given indices.
    pub fn family_sum(&self, subset: &[usize]) -> Vector {
        let mut s = self.zero();
        for i in subset {
            axpy(self.field, &mut s, &Rat::ONE, &self.idems[*i]);
        }
        s
    }

    /// Quotient `A/I` by a two-sided ideal.
    pub fn quotient(&self, ideal: &Subspace, provenance: &str) -> Result<QuotientAlgebra> {
        let k = self.field;
        let q = Quotient::new(ideal.clone());
        let d = q.dim();
        let lifts: Vec<Vector> = (0..d).map(|i| q.lift(&unit_vec(d, i))).collect();
        let mut table = Vec::with_capacity(d * d);
        for x in &lifts {
            for y in &lifts {
                table.push(to_sparse(&q.project(k, &self.mul(x, y))));
            }
        }
        let unit = q.project(k, &self.unit);
        let mut idems = Vec::new();
        let mut source_of = Vec::new();
        for (i, e) in self.idems.iter().enumerate() {
            let p = q.project(k, e);
            if !is_zero_vec(&p) {
                idems.push(p);
                source_of.push(i);
            }
        }
        let labels = q.free.iter().map(|i| self.labels[*i].clone()).collect();
        let mut alg = Algebra::new(k, labels, table, unit, idems, provenance)?;
        if let Some(r) = &self.radical_hint {
            let img: Vec<Vector> = r.iter().map(|v| q.project(k, v)).collect();
            let s = Subspace::span(k, d, &img);
            alg.radical_hint = Some(s.basis);
        }
        Ok(QuotientAlgebra { algebra: alg, quotient: q, family_source: source_of })
    }

    /// The corner algebra `eAe`.
    pub fn corner(&self, e: &[Rat]) -> Result<Corner> {
        let k = self.field;
        if !self.is_idempotent(e) {
            return Err(Error::Precondition("element is not idempotent".into()));
        }
        if is_zero_vec(e) {
            return Err(Error::Precondition("corner at the zero idempotent".into()));
        }
        let space = self.sandwich(e, e);
        let subset = self.family_subset(e);
        let idems: Vec<Vector> = match &subset {
            Some(s) => s.iter().map(|i| self.idems[*i].clone()).collect(),
            None => alloc::vec![e.to_vec()],
        };
        let mut alg = self.restrict(&space, e, &idems, &format!("corner({})", self.provenance))?;
        if let Some(r) = &self.radical_hint {
            let img: Vec<Vector> = r.iter().map(|v| self.mul3(e, v, e)).collect();
            let s = Subspace::span(k, self.dim(), &img);
            alg.radical_hint = Some(s.basis.iter().map(|v| space.coords_unchecked(v)).collect());
        }
        let c = Corner { algebra: alg, space, family: subset };
        c.check_embedding(self)?;
        Ok(c)
    }
}

fn sparse_dense(n: usize, s: &Sparse) -> Vector {
    crate::linalg::to_dense(n, s)
}

/// Quotient algebra with the underlying vector-space quotient.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Algebra,
    pub quotient: Quotient,
    /// Index in the ambient family of each surviving family member.
    pub family_source: Vec<usize>,
}

/// The corner `eAe` with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    /// `eAe` as a subspace of `A`; its echelon basis is the corner basis.
    pub space: Subspace,
    /// Indices of the ambient family members summing to `e`, when they do.
    pub family: Option<Vec<usize>>,
}

impl Corner {
    pub fn embed(&self, k: Field, x: &[Rat]) -> Vector {
        self.space.combine(k, x)
    }

    /// `x ↦ exe` followed by coordinates in the corner.
    pub fn compress(&self, ambient: &Algebra, e: &[Rat], x: &[Rat]) -> Vector {
        self.space.coords_unchecked(&ambient.mul3(e, x, e))
    }

    fn check_embedding(&self, ambient: &Algebra) -> Result<()> {
        let k = ambient.field;
        let n = self.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.embed(k, &self.algebra.mul(&self.algebra.basis(i), &self.algebra.basis(j)));
                let rhs = ambient.mul(&self.space.basis[i], &self.space.basis[j]);
                if lhs != rhs {
                    return Err(Error::verification("corner embedding", "embedding is not multiplicative"));
                }
            }
        }
        Ok(())
    }
}

/// Checks that `lambda` lies in the centre of `eAe` (and in `eAe`).
pub fn check_central_in_corner(a: &Algebra, e: &[Rat], lambda: &[Rat]) -> Result<()> {
    if a.mul(lambda, e) != lambda || a.mul(e, lambda) != lambda {
        return Err(Error::Precondition("level element does not satisfy λe = eλ = λ".into()));
    }
    let corner = a.sandwich(e, e);
    for b in &corner.basis {
        if !a.commutes(lambda, b) {
            return Err(Error::Precondition(format!("level element does not commute with {}", a.describe(b))));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    pub fn dual_numbers() -> Algebra {
        // basis 1, x with x² = 0
        let q = Field::Rationals;
        Algebra::from_fn(
            q,
            vec!["1".to_string(), "x".to_string()],
            |i, j| match (i, j) {
                (0, 0) => vec![Rat::ONE, Rat::ZERO],
                (0, 1) | (1, 0) => vec![Rat::ZERO, Rat::ONE],
                _ => vec![Rat::ZERO, Rat::ZERO],
            },
            vec![Rat::ONE, Rat::ZERO],
            vec![vec![Rat::ONE, Rat::ZERO]],
            "dual numbers",
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_are_associative_and_commutative() {
        let a = dual_numbers();
        a.check_associative().unwrap();
        assert_eq!(a.opposite().mul(&a.basis(1), &a.basis(0)), a.mul(&a.basis(1), &a.basis(0)));
        assert!(a.is_central(&a.basis(1)));
    }

    #[test]
    fn product_and_corner() {
        let a = dual_numbers();
        let p = a.direct_product(&a).unwrap();
        assert_eq!(p.dim(), 4);
        p.check_associative().unwrap();
        let c = p.corner(&p.idems[0]).unwrap();
        assert_eq!(c.algebra.dim(), 2);
        let full = a.corner(&a.unit).unwrap();
        assert_eq!(full.algebra.dim(), 2);
    }

    #[test]
    fn bad_unit_rejected() {
        let q = Field::Rationals;
        let r = Algebra::from_fn(q, vec!["a".into()], |_, _| vec![Rat::ZERO], vec![Rat::ONE], vec![vec![Rat::ONE]], "bad");
        assert!(r.is_err());
    }

    #[test]
    fn largest_ideal_in_commutators_of_commutative_algebra_is_zero() {
        let a = dual_numbers();
        let w = Subspace::zero(2);
        assert_eq!(a.largest_ideal_in(&w).dim(), 0);
        let x = Subspace::span(a.field, 2, &[a.basis(1)]);
        assert_eq!(a.largest_ideal_in(&x).dim(), 1);
    }
}
