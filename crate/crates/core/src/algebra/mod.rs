//! Bigraded vector spaces, finite bicomplexes and degree-truncated free
//! graded-commutative algebras with the two anticommuting differentials.

mod element;
mod finite;
mod free;
mod monomial;
pub mod span;

use std::fmt;

pub use element::Element;
pub use finite::FiniteBicomplex;
pub use free::{FreeCbba, Generator, RawPoly};
pub use monomial::Monomial;

use crate::error::Error;
use crate::linalg::SparseVec;
use crate::Result;

/// A (p,q) bidegree. Ordered by total degree first so that iteration over a
/// bidegree-keyed map walks antidiagonals in sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn total(&self) -> i64 {
        self.p + self.q
    }

    pub fn parity(&self) -> u8 {
        (self.total().rem_euclid(2)) as u8
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    pub fn add(&self, other: Bidegree) -> Bidegree {
        Bidegree::new(self.p + other.p, self.q + other.q)
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bidegree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.p).cmp(&(other.total(), other.p))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl fmt::Debug for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Which differential to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Diff {
    Del,
    Delbar,
    D,
    DelDelbar,
}

/// A validated algebra: either a finite bicomplex (optionally with a
/// multiplication table) or a truncated free cbba. Both expose one element
/// interface: elements are linear combinations of "atoms" (basis elements or
/// monomials), and all queries after construction are read-only.
#[derive(Clone, Debug)]
pub enum Algebra {
    Finite(FiniteBicomplex),
    Free(FreeCbba),
}

impl Algebra {
    pub fn name(&self) -> &str {
        match self {
            Algebra::Finite(b) => &b.name,
            Algebra::Free(a) => &a.name,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Algebra::Free(_))
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Algebra::Finite(b) => b.basis.len(),
            Algebra::Free(a) => a.atoms.len(),
        }
    }

    pub fn atom_bidegree(&self, id: usize) -> Bidegree {
        match self {
            Algebra::Finite(b) => b.basis[id].1,
            Algebra::Free(a) => a.atom_bidegree[id],
        }
    }

    pub fn atom_label(&self, id: usize) -> String {
        match self {
            Algebra::Finite(b) => b.basis[id].0.clone(),
            Algebra::Free(a) => a.atoms[id].display(&a.generators),
        }
    }

    /// Atom ids at one bidegree, in the canonical order.
    pub fn atoms_at(&self, bd: Bidegree) -> &[usize] {
        static EMPTY: [usize; 0] = [];
        let map = match self {
            Algebra::Finite(b) => &b.by_bidegree,
            Algebra::Free(a) => &a.by_bidegree,
        };
        map.get(&bd).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn dim_at(&self, bd: Bidegree) -> usize {
        self.atoms_at(bd).len()
    }

    /// All bidegrees carrying atoms, ascending by (total, p).
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let map = match self {
            Algebra::Finite(b) => &b.by_bidegree,
            Algebra::Free(a) => &a.by_bidegree,
        };
        map.keys().copied().collect()
    }

    /// Atoms on the antidiagonal of total degree `k`, ordered by p.
    pub fn antidiagonal_atoms(&self, k: i64) -> Vec<usize> {
        let mut out = Vec::new();
        for bd in self.bidegrees() {
            if bd.total() == k {
                out.extend_from_slice(self.atoms_at(bd));
            }
        }
        out
    }

    pub fn max_total_degree(&self) -> i64 {
        self.bidegrees().last().map(|b| b.total()).unwrap_or(0)
    }

    /// Truncation bound for free algebras; finite bicomplexes are complete
    /// and report the largest degree present.
    pub fn truncation(&self) -> i64 {
        match self {
            Algebra::Finite(_) => self.max_total_degree(),
            Algebra::Free(a) => a.truncation,
        }
    }

    /// Degrees above the truncation are invisible for free algebras.
    pub fn is_truncated(&self) -> bool {
        self.is_free()
    }

    pub fn sd_target(&self) -> Option<i64> {
        match self {
            Algebra::Finite(b) => b.sd_target,
            Algebra::Free(a) => a.sd_target,
        }
    }

    pub fn unit_atom(&self) -> Option<usize> {
        match self {
            Algebra::Finite(b) => b.unit,
            Algebra::Free(a) => Some(a.unit_atom),
        }
    }

    pub fn has_multiplication(&self) -> bool {
        match self {
            Algebra::Finite(b) => b.mult.is_some(),
            Algebra::Free(_) => true,
        }
    }

    /// Differential image of one atom. `None` marks an image that would leave
    /// the truncation window.
    pub fn del_atom(&self, id: usize) -> Option<&Element> {
        match self {
            Algebra::Finite(b) => Some(&b.del[id]),
            Algebra::Free(a) => a.del_atoms[id].as_ref(),
        }
    }

    pub fn delbar_atom(&self, id: usize) -> Option<&Element> {
        match self {
            Algebra::Finite(b) => Some(&b.delbar[id]),
            Algebra::Free(a) => a.delbar_atoms[id].as_ref(),
        }
    }

    pub fn mul_atoms(&self, i: usize, j: usize) -> Result<Element> {
        match self {
            Algebra::Finite(b) => b.mul_atoms(i, j),
            Algebra::Free(a) => a.mul_atoms(i, j),
        }
    }

    /// Apply a differential to an element; exact Leibniz extension.
    pub fn apply_diff(&self, e: &Element, which: Diff) -> Result<Element> {
        match which {
            Diff::Del => self.diff_by(e, true),
            Diff::Delbar => self.diff_by(e, false),
            Diff::D => {
                let mut out = self.diff_by(e, true)?;
                out.add_assign(&self.diff_by(e, false)?);
                Ok(out)
            }
            Diff::DelDelbar => {
                let inner = self.diff_by(e, false)?;
                self.diff_by(&inner, true)
            }
        }
    }

    fn diff_by(&self, e: &Element, del: bool) -> Result<Element> {
        let mut out = Element::zero();
        for (&id, c) in &e.terms {
            let img = if del {
                self.del_atom(id)
            } else {
                self.delbar_atom(id)
            };
            match img {
                Some(img) => out.add_scaled(c, img),
                None => {
                    return Err(Error::TruncationOverflow(self.truncation()));
                }
            }
        }
        Ok(out)
    }

    pub fn del(&self, e: &Element) -> Result<Element> {
        self.apply_diff(e, Diff::Del)
    }

    pub fn delbar(&self, e: &Element) -> Result<Element> {
        self.apply_diff(e, Diff::Delbar)
    }

    pub fn d(&self, e: &Element) -> Result<Element> {
        self.apply_diff(e, Diff::D)
    }

    pub fn ddbar(&self, e: &Element) -> Result<Element> {
        self.apply_diff(e, Diff::DelDelbar)
    }

    /// Koszul-signed product in canonical form.
    pub fn mul(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (&i, a) in &u.terms {
            for (&j, b) in &v.terms {
                let prod = self.mul_atoms(i, j)?;
                out.add_scaled(&a.mul(b), &prod);
            }
        }
        Ok(out)
    }

    /// The homogeneous bidegree of an element, if it has one.
    pub fn element_bidegree(&self, e: &Element) -> Option<Bidegree> {
        let mut bd = None;
        for &id in e.terms.keys() {
            let b = self.atom_bidegree(id);
            match bd {
                None => bd = Some(b),
                Some(prev) if prev != b => return None,
                _ => {}
            }
        }
        bd
    }

    /// Component of an element in one bidegree.
    pub fn component(&self, e: &Element, bd: Bidegree) -> Element {
        let terms = e
            .terms
            .iter()
            .filter(|(&id, _)| self.atom_bidegree(id) == bd)
            .map(|(&id, c)| (id, c.clone()))
            .collect();
        Element { terms }
    }

    /// Bidegrees occurring in an element, sorted.
    pub fn element_bidegrees(&self, e: &Element) -> Vec<Bidegree> {
        let mut bds: Vec<Bidegree> = e
            .terms
            .keys()
            .map(|&id| self.atom_bidegree(id))
            .collect();
        bds.sort();
        bds.dedup();
        bds
    }

    /// Coordinates of an element relative to an explicit atom list. Returns
    /// `None` if the element involves atoms outside the list.
    pub fn coords_in(&self, atom_ids: &[usize], e: &Element) -> Option<SparseVec> {
        let pos: std::collections::BTreeMap<usize, usize> = atom_ids
            .iter()
            .enumerate()
            .map(|(idx, &id)| (id, idx))
            .collect();
        let mut v = SparseVec::new();
        for (&id, c) in &e.terms {
            match pos.get(&id) {
                Some(&idx) => {
                    v.insert(idx, c.clone());
                }
                None => return None,
            }
        }
        Some(v)
    }

    pub fn element_from_coords(&self, atom_ids: &[usize], v: &SparseVec) -> Element {
        let mut e = Element::zero();
        for (&idx, c) in v {
            e.terms.insert(atom_ids[idx], c.clone());
        }
        e
    }

    /// One-atom element.
    pub fn atom_element(&self, id: usize) -> Element {
        Element::atom(id)
    }

    pub fn display_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&id, c) in &e.terms {
            let label = self.atom_label(id);
            let cs = c.to_string();
            let part = if label == "1" {
                cs
            } else if cs == "1" {
                label
            } else if cs == "-1" {
                format!("-{label}")
            } else if cs.contains('+') || (cs.rfind('-').map_or(false, |i| i > 0)) {
                format!("({cs}) * {label}")
            } else {
                format!("{cs} * {label}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    pub fn finite(&self) -> Option<&FiniteBicomplex> {
        match self {
            Algebra::Finite(b) => Some(b),
            _ => None,
        }
    }

    pub fn free(&self) -> Option<&FreeCbba> {
        match self {
            Algebra::Free(a) => Some(a),
            _ => None,
        }
    }
}
