//! Linear combinations of atoms (monomials or finite-basis elements).

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// An algebra element: atom id -> nonzero coefficient. Elements are owned by
/// the algebra they were produced from; all arithmetic that needs structure
/// (products, differentials) goes through that algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    pub terms: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn atom(id: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, Scalar::one());
        Element { terms }
    }

    pub fn from_terms(terms: Vec<(usize, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (id, c) in terms {
            e.add_term(id, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, id: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&id) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&id);
                }
            }
            None => {
                self.terms.insert(id, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (&id, c) in &other.terms {
            self.add_term(id, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (&id, c) in &other.terms {
            self.add_term(id, -c);
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (&id, s) in &other.terms {
            self.add_term(id, c.mul(s));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut e = Element::zero();
        e.add_scaled(c, self);
        e
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(other);
        e
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.sub_assign(other);
        e
    }

    pub fn neg(&self) -> Element {
        self.scaled(&-Scalar::one())
    }
}
