//! Finite bicomplexes: explicit basis per bidegree with del/delbar images,
//! optionally carrying a multiplication table (finite-kind cbbas such as
//! cohomology rings).

use std::collections::BTreeMap;

use super::element::Element;
use super::Bidegree;
use crate::error::Error;
use crate::Result;

#[derive(Clone, Debug)]
pub struct FiniteBicomplex {
    pub name: String,
    pub basis: Vec<(String, Bidegree)>,
    pub del: Vec<Element>,
    pub delbar: Vec<Element>,
    pub mult: Option<BTreeMap<(usize, usize), Element>>,
    pub unit: Option<usize>,
    pub by_bidegree: BTreeMap<Bidegree, Vec<usize>>,
    pub sd_target: Option<i64>,
}

impl FiniteBicomplex {
    pub fn new(
        name: String,
        basis: Vec<(String, Bidegree)>,
        del: Vec<Element>,
        delbar: Vec<Element>,
        mult: Option<BTreeMap<(usize, usize), Element>>,
        sd_target: Option<i64>,
    ) -> Result<Self> {
        let n = basis.len();
        assert_eq!(del.len(), n);
        assert_eq!(delbar.len(), n);
        let mut names = std::collections::BTreeSet::new();
        for (label, _) in &basis {
            if !names.insert(label.clone()) {
                return Err(Error::GradingViolation(format!(
                    "duplicate basis label {label}"
                )));
            }
        }
        let mut by_bidegree: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, (_, bd)) in basis.iter().enumerate() {
            by_bidegree.entry(*bd).or_default().push(i);
        }
        let mut cx = FiniteBicomplex {
            name,
            basis,
            del,
            delbar,
            mult,
            unit: None,
            by_bidegree,
            sd_target,
        };
        cx.check_grading()?;
        cx.check_squares()?;
        if cx.mult.is_some() {
            cx.find_unit()?;
            cx.check_commutativity()?;
            cx.check_associativity()?;
            cx.check_leibniz()?;
        }
        Ok(cx)
    }

    fn element_homogeneous_at(&self, e: &Element, bd: Bidegree) -> bool {
        e.terms.keys().all(|&id| self.basis[id].1 == bd)
    }

    fn check_grading(&self) -> Result<()> {
        for (i, (label, bd)) in self.basis.iter().enumerate() {
            if !self.element_homogeneous_at(&self.del[i], bd.add(Bidegree::new(1, 0))) {
                return Err(Error::GradingViolation(format!(
                    "del {label} is not concentrated in bidegree {}",
                    bd.add(Bidegree::new(1, 0))
                )));
            }
            if !self.element_homogeneous_at(&self.delbar[i], bd.add(Bidegree::new(0, 1))) {
                return Err(Error::GradingViolation(format!(
                    "delbar {label} is not concentrated in bidegree {}",
                    bd.add(Bidegree::new(0, 1))
                )));
            }
        }
        if let Some(mult) = &self.mult {
            for (&(i, j), e) in mult {
                let want = self.basis[i].1.add(self.basis[j].1);
                if !self.element_homogeneous_at(e, want) {
                    return Err(Error::GradingViolation(format!(
                        "{} * {} is not concentrated in bidegree {want}",
                        self.basis[i].0, self.basis[j].0
                    )));
                }
            }
        }
        Ok(())
    }

    fn apply(&self, images: &[Element], e: &Element) -> Element {
        let mut out = Element::zero();
        for (&id, c) in &e.terms {
            out.add_scaled(c, &images[id]);
        }
        out
    }

    fn check_squares(&self) -> Result<()> {
        for (i, (label, _)) in self.basis.iter().enumerate() {
            if !self.apply(&self.del, &self.del[i]).is_zero() {
                return Err(Error::NonSquareZero(format!("del del {label} is nonzero")));
            }
            if !self.apply(&self.delbar, &self.delbar[i]).is_zero() {
                return Err(Error::NonSquareZero(format!(
                    "delbar delbar {label} is nonzero"
                )));
            }
            let mut anti = self.apply(&self.del, &self.delbar[i]);
            anti.add_assign(&self.apply(&self.delbar, &self.del[i]));
            if !anti.is_zero() {
                return Err(Error::NonSquareZero(format!(
                    "del delbar {label} + delbar del {label} is nonzero"
                )));
            }
        }
        Ok(())
    }

    pub fn mul_atoms(&self, i: usize, j: usize) -> Result<Element> {
        match &self.mult {
            Some(table) => Ok(table.get(&(i, j)).cloned().unwrap_or_else(Element::zero)),
            None => Err(Error::Unsupported(format!(
                "bicomplex {} carries no multiplication",
                self.name
            ))),
        }
    }

    fn mul_elements(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (&i, a) in &u.terms {
            for (&j, b) in &v.terms {
                out.add_scaled(&a.mul(b), &self.mul_atoms(i, j)?);
            }
        }
        Ok(out)
    }

    fn find_unit(&mut self) -> Result<()> {
        let candidates: Vec<usize> = self
            .by_bidegree
            .get(&Bidegree::new(0, 0))
            .cloned()
            .unwrap_or_default();
        for u in candidates {
            let ue = Element::atom(u);
            let mut ok = true;
            for i in 0..self.basis.len() {
                let e = Element::atom(i);
                if self.mul_elements(&ue, &e)? != e || self.mul_elements(&e, &ue)? != e {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.unit = Some(u);
                return Ok(());
            }
        }
        Err(Error::GradingViolation(format!(
            "multiplication table of {} has no unit in bidegree (0,0)",
            self.name
        )))
    }

    fn check_commutativity(&self) -> Result<()> {
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_atoms(i, j)?;
                let ji = self.mul_atoms(j, i)?;
                let sign_flip = self.basis[i].1.is_odd() && self.basis[j].1.is_odd();
                let expect = if sign_flip { ji.neg() } else { ji };
                if ij != expect {
                    return Err(Error::GradingViolation(format!(
                        "{} * {} violates graded commutativity",
                        self.basis[i].0, self.basis[j].0
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_atoms(i, j)?;
                for k in 0..n {
                    let jk = self.mul_atoms(j, k)?;
                    let left = self.mul_elements(&ij, &Element::atom(k))?;
                    let right = self.mul_elements(&Element::atom(i), &jk)?;
                    if left != right {
                        return Err(Error::GradingViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].0, self.basis[j].0, self.basis[k].0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> Result<()> {
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul_atoms(i, j)?;
                for (images, which) in [(&self.del, "del"), (&self.delbar, "delbar")] {
                    let lhs = self.apply(images, &prod);
                    let mut rhs = self.mul_elements(&images[i], &Element::atom(j))?;
                    let signed = if self.basis[i].1.is_odd() {
                        images[j].neg()
                    } else {
                        images[j].clone()
                    };
                    rhs.add_assign(&self.mul_elements(&Element::atom(i), &signed)?);
                    if lhs != rhs {
                        return Err(Error::LeibnizViolation(format!(
                            "{which}({} * {}) differs from the Leibniz expansion",
                            self.basis[i].0, self.basis[j].0
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfix::{dot, projective_ring, square};

    #[test]
    fn dot_and_square_validate() {
        assert_eq!(dot(0, 0).atom_count(), 1);
        assert_eq!(square(0, 0).atom_count(), 4);
    }

    #[test]
    fn flipped_sign_square_rejected() {
        let err = FiniteBicomplex::new(
            "bad-square".into(),
            vec![
                ("a".into(), Bidegree::new(0, 0)),
                ("da".into(), Bidegree::new(1, 0)),
                ("ba".into(), Bidegree::new(0, 1)),
                ("w".into(), Bidegree::new(1, 1)),
            ],
            vec![
                Element::atom(1),
                Element::zero(),
                Element::atom(3), // sign not flipped: del delbar = delbar del
                Element::zero(),
            ],
            vec![
                Element::atom(2),
                Element::atom(3),
                Element::zero(),
                Element::zero(),
            ],
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonSquareZero(_)));
    }

    #[test]
    fn grading_violation_detected() {
        let err = FiniteBicomplex::new(
            "bad-grading".into(),
            vec![
                ("a".into(), Bidegree::new(0, 0)),
                ("b".into(), Bidegree::new(2, 0)),
            ],
            vec![Element::atom(1), Element::zero()],
            vec![Element::zero(), Element::zero()],
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GradingViolation(_)));
    }

    #[test]
    fn ring_unit_found() {
        let r = projective_ring(2);
        assert_eq!(r.finite().unwrap().unit, Some(0));
    }

    #[test]
    fn leibniz_violation_detected() {
        // x closed, y with del y = z, table says x*y = w with del w = 0,
        // while the Leibniz expansion gives del(x*y) = x*z = u != 0.
        let mut mult = BTreeMap::new();
        mult.insert((0, 0), Element::atom(0));
        for i in 1..6 {
            mult.insert((0, i), Element::atom(i));
            mult.insert((i, 0), Element::atom(i));
        }
        mult.insert((1, 2), Element::atom(4));
        mult.insert((2, 1), Element::atom(4));
        mult.insert((1, 3), Element::atom(5));
        mult.insert((3, 1), Element::atom(5));
        let err = FiniteBicomplex::new(
            "bad-leibniz".into(),
            vec![
                ("one".into(), Bidegree::new(0, 0)),
                ("x".into(), Bidegree::new(1, 1)),
                ("y".into(), Bidegree::new(1, 1)),
                ("z".into(), Bidegree::new(2, 1)),
                ("w".into(), Bidegree::new(2, 2)),
                ("u".into(), Bidegree::new(3, 2)),
            ],
            vec![
                Element::zero(),
                Element::zero(),
                Element::atom(3),
                Element::zero(),
                Element::zero(),
                Element::zero(),
            ],
            vec![Element::zero(); 6],
            Some(mult),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::LeibnizViolation(_)));
    }
}
