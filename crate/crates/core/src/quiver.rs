//! Quivers, paths and presentations by relations.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex(name).is_some() || self.arrow(name).is_some() {
            return Err(Error::Input(format!("duplicate name '{}'", name)));
        }
        self.vertices.push(name.into());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.vertex(name).is_some() || self.arrow(name).is_some() {
            return Err(Error::Input(format!("duplicate name '{}'", name)));
        }
        let s = self.vertex(source).ok_or_else(|| Error::Input(format!("unknown vertex '{}'", source)))?;
        let t = self.vertex(target).ok_or_else(|| Error::Input(format!("unknown vertex '{}'", target)))?;
        self.arrows.push(Arrow { name: name.into(), source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Checks uniqueness of names and arrow endpoints.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for n in self.vertices.iter().chain(self.arrows.iter().map(|a| &a.name)) {
            if seen.insert(n.as_str(), ()).is_some() {
                return Err(Error::Input(format!("duplicate name '{}'", n)));
            }
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Input(format!("arrow '{}' has an undeclared endpoint", a.name)));
            }
        }
        Ok(())
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { source: ar.source, target: ar.target, arrows: alloc::vec![a] }
    }

    /// Path through the given arrows, if they compose.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let first = arrows.first()?;
        let mut p = self.arrow_path(*first);
        for a in &arrows[1..] {
            p = p.concat(&self.arrow_path(*a))?;
        }
        Some(p)
    }

    /// Dotted name of a path (`a.b.c`, or `e_v` for trivial paths).
    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().map(|a| self.arrows[*a].name.as_str()).collect();
        names.join(".")
    }
}

/// A path in a quiver, composed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    /// Subpath on arrows `[i, j)`; only meaningful for `i < j`.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> Path {
        if i == j {
            let v = if i == 0 { self.source } else { q.arrows[self.arrows[i - 1]].target };
            return q.trivial(v);
        }
        Path {
            source: q.arrows[self.arrows[i]].source,
            target: q.arrows[self.arrows[j - 1]].target,
            arrows: self.arrows[i..j].to_vec(),
        }
    }
}

/// Degree-lexicographic order: length first, then arrow indices, then
/// endpoints (which only matter for trivial paths).
impl Ord for Path {
    fn cmp(&self, other: &Path) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Path) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of paths, keyed in path order (leading term last).
pub type Combo = BTreeMap<Path, Rat>;

/// Adds `c·p` to a combination, dropping zero coefficients.
pub fn combo_add(k: Field, combo: &mut Combo, p: Path, c: &Rat) {
    if c.is_zero() {
        return;
    }
    match combo.get_mut(&p) {
        Some(v) => {
            let s = k.add(v, c);
            if s.is_zero() {
                combo.remove(&p);
            } else {
                *v = s;
            }
        }
        None => {
            combo.insert(p, c.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rat, Path)>,
}

impl Relation {
    /// Merged combination with zero terms removed.
    pub fn combo(&self, k: Field) -> Combo {
        let mut c = Combo::new();
        for (a, p) in &self.terms {
            combo_add(k, &mut c, p.clone(), a);
        }
        c
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let first = self.terms.first().ok_or_else(|| Error::Input("empty relation".into()))?;
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(Error::Input(format!("relation term '{}' has length < 2", q.path_name(p))));
            }
            if q.path(&p.arrows).as_ref() != Some(p) {
                return Err(Error::Input(format!("relation term '{}' is not a path", q.path_name(p))));
            }
            if p.source != first.1.source || p.target != first.1.target {
                return Err(Error::Input("relation terms have different endpoints".into()));
            }
        }
        Ok(())
    }
}

/// A field, a quiver, relations and named vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub idempotents: Vec<(String, Vec<usize>)>,
}

impl Presentation {
    pub fn new(field: Field, quiver: Quiver) -> Presentation {
        Presentation { field, quiver, relations: Vec::new(), idempotents: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        self.quiver.validate()?;
        for r in &self.relations {
            r.validate(&self.quiver)?;
            for (c, _) in &r.terms {
                if !self.field.is_canonical(c) {
                    return Err(Error::Input(format!("coefficient {} is not reduced for field {}", c, self.field.name())));
                }
            }
        }
        for (name, vs) in &self.idempotents {
            if vs.iter().any(|v| *v >= self.quiver.vertices.len()) {
                return Err(Error::Input(format!("idempotent '{}' uses an undeclared vertex", name)));
            }
            let mut s = vs.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != vs.len() {
                return Err(Error::Input(format!("idempotent '{}' repeats a vertex", name)));
            }
        }
        Ok(())
    }

    pub fn idempotent(&self, name: &str) -> Option<&[usize]> {
        self.idempotents.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    /// The same presentation with arrows renumbered by `perm` (new index of
    /// old arrow `i` is `perm[i]`).
    pub fn permute_arrows(&self, perm: &[usize]) -> Result<Presentation> {
        let n = self.quiver.arrows.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if perm.len() != n || check.iter().enumerate().any(|(i, v)| i != *v) {
            return Err(Error::Input("not a permutation of the arrows".into()));
        }
        let mut arrows = self.quiver.arrows.clone();
        for (i, a) in self.quiver.arrows.iter().enumerate() {
            arrows[perm[i]] = a.clone();
        }
        let quiver = Quiver { vertices: self.quiver.vertices.clone(), arrows };
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), Path { source: p.source, target: p.target, arrows: p.arrows.iter().map(|a| perm[*a]).collect() }))
                    .collect(),
            })
            .collect();
        Ok(Presentation { field: self.field, quiver, relations, idempotents: self.idempotents.clone() })
    }
}
