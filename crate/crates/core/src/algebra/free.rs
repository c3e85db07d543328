//! Degree-truncated free graded-commutative bigraded algebras with assigned
//! differentials, extended everywhere by the Leibniz rule.

use std::collections::{BTreeMap, HashMap};

use super::element::Element;
use super::monomial::Monomial;
use super::Bidegree;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub bidegree: Bidegree,
}

/// A polynomial over explicit monomials, used before atom ids exist.
pub type RawPoly = Vec<(Monomial, Scalar)>;

pub type PolyMap = BTreeMap<Monomial, Scalar>;

fn poly_add_term(poly: &mut PolyMap, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match poly.get_mut(&m) {
        Some(e) => {
            *e += &c;
            if e.is_zero() {
                poly.remove(&m);
            }
        }
        None => {
            poly.insert(m, c);
        }
    }
}

/// The validated free cbba, truncated at total degree `truncation`. Monomial
/// bases per bidegree are enumerated once at construction; afterwards all
/// queries are read-only.
#[derive(Clone, Debug)]
pub struct FreeCbba {
    pub name: String,
    pub generators: Vec<Generator>,
    pub del_assign: Vec<PolyMap>,
    pub delbar_assign: Vec<PolyMap>,
    pub truncation: i64,
    pub sd_target: Option<i64>,
    pub atoms: Vec<Monomial>,
    pub atom_bidegree: Vec<Bidegree>,
    pub index: HashMap<Monomial, usize>,
    pub by_bidegree: BTreeMap<Bidegree, Vec<usize>>,
    pub del_atoms: Vec<Option<Element>>,
    pub delbar_atoms: Vec<Option<Element>>,
    pub unit_atom: usize,
    /// Im(del delbar) contained in the decomposables, generator by generator.
    pub minimal: bool,
}

impl FreeCbba {
    pub fn new(
        name: String,
        generators: Vec<Generator>,
        del_raw: Vec<RawPoly>,
        delbar_raw: Vec<RawPoly>,
        truncation: i64,
        sd_target: Option<i64>,
    ) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::TruncationTooSmall(format!(
                "truncation {truncation} < 1"
            )));
        }
        let ngens = generators.len();
        assert_eq!(del_raw.len(), ngens);
        assert_eq!(delbar_raw.len(), ngens);
        let mut names = std::collections::BTreeSet::new();
        for g in &generators {
            if g.bidegree.total() < 1 {
                return Err(Error::GradingViolation(format!(
                    "generator {} has total degree {} < 1 (algebra must be connected)",
                    g.name,
                    g.bidegree.total()
                )));
            }
            if !names.insert(g.name.clone()) {
                return Err(Error::GradingViolation(format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }

        let del_assign = Self::canonicalize_assignments(&generators, del_raw, "del")?;
        let delbar_assign = Self::canonicalize_assignments(&generators, delbar_raw, "delbar")?;

        // Grading of the assignments.
        for (j, g) in generators.iter().enumerate() {
            for (which, shift, poly) in [
                ("del", Bidegree::new(1, 0), &del_assign[j]),
                ("delbar", Bidegree::new(0, 1), &delbar_assign[j]),
            ] {
                let want = g.bidegree.add(shift);
                for m in poly.keys() {
                    let got = m.bidegree(&generators);
                    if got != want {
                        return Err(Error::GradingViolation(format!(
                            "{} {} contains monomial {} of bidegree {}, expected {}",
                            which,
                            g.name,
                            m.display(&generators),
                            got,
                            want
                        )));
                    }
                    if got.total() > truncation {
                        return Err(Error::InsufficientTruncation(format!(
                            "{} {} lies in degree {} beyond truncation {}",
                            which,
                            g.name,
                            got.total(),
                            truncation
                        )));
                    }
                }
            }
        }

        Self::check_nilpotent_order(&generators, &del_assign, &delbar_assign)?;

        let mut alg = FreeCbba {
            name,
            generators,
            del_assign,
            delbar_assign,
            truncation,
            sd_target,
            atoms: Vec::new(),
            atom_bidegree: Vec::new(),
            index: HashMap::new(),
            by_bidegree: BTreeMap::new(),
            del_atoms: Vec::new(),
            delbar_atoms: Vec::new(),
            unit_atom: 0,
            minimal: true,
        };
        alg.check_squares_symbolically()?;
        alg.enumerate_atoms();
        alg.compute_atom_images();
        alg.minimal = alg.compute_minimality();
        Ok(alg)
    }

    fn canonicalize_assignments(
        gens: &[Generator],
        raw: Vec<RawPoly>,
        which: &str,
    ) -> Result<Vec<PolyMap>> {
        let mut out = Vec::with_capacity(raw.len());
        for (j, poly) in raw.into_iter().enumerate() {
            let mut map = PolyMap::new();
            for (m, c) in poly {
                // Reject written-out terms that vanish identically: a squared
                // odd generator in an assignment is a grading slip, not a
                // zero summand.
                for &(g, e) in &m.0 {
                    if gens[g].bidegree.is_odd() && e > 1 {
                        return Err(Error::GradingViolation(format!(
                            "{} {} contains {} which vanishes identically (odd generator squared)",
                            which,
                            gens[j].name,
                            m.display(gens)
                        )));
                    }
                }
                poly_add_term(&mut map, m, c);
            }
            out.push(map);
        }
        Ok(out)
    }

    /// dx_j must lie in the subalgebra on strictly earlier generators of
    /// degree at most |x_j|, on generators of lower total degree, plus a
    /// linear part in degree |x_j|+1.
    fn check_nilpotent_order(
        gens: &[Generator],
        del: &[PolyMap],
        delbar: &[PolyMap],
    ) -> Result<()> {
        for (j, g) in gens.iter().enumerate() {
            let k = g.bidegree.total();
            for (which, poly) in [("del", &del[j]), ("delbar", &delbar[j])] {
                for m in poly.keys() {
                    let linear_next =
                        m.0.len() == 1 && m.0[0].1 == 1 && gens[m.0[0].0].bidegree.total() == k + 1;
                    if linear_next {
                        continue;
                    }
                    let ok = m.0.iter().all(|&(gi, _)| {
                        let d = gens[gi].bidegree.total();
                        d < k || (d == k && gi < j)
                    });
                    if !ok {
                        return Err(Error::NonNilpotentOrder(format!(
                            "{} {} = ... + {} refers to generators not preceding {}",
                            which,
                            g.name,
                            m.display(gens),
                            g.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Symbolic Leibniz differential on explicit polynomials; not subject to
    /// the truncation, so the square-zero axioms can be checked exactly on
    /// every generator.
    fn diff_poly(&self, poly: &PolyMap, del: bool) -> PolyMap {
        let assigns = if del {
            &self.del_assign
        } else {
            &self.delbar_assign
        };
        let mut out = PolyMap::new();
        for (m, c) in poly {
            let factors = m.factors();
            for t in 0..factors.len() {
                let mut prefix = Monomial::one();
                let mut sign = 1i32;
                let mut prefix_deg = 0i64;
                for &f in &factors[..t] {
                    let (pm, s) = prefix
                        .mul(&Monomial::generator(f), &self.generators)
                        .expect("prefix rebuild cannot vanish");
                    prefix = pm;
                    sign *= s;
                    prefix_deg += self.generators[f].bidegree.total();
                }
                if prefix_deg % 2 != 0 {
                    sign = -sign;
                }
                let mut suffix = Monomial::one();
                for &f in &factors[t + 1..] {
                    let (sm, s) = suffix
                        .mul(&Monomial::generator(f), &self.generators)
                        .expect("suffix rebuild cannot vanish");
                    suffix = sm;
                    sign *= s;
                }
                for (am, ac) in &assigns[factors[t]] {
                    let Some((pm, s1)) = prefix.mul(am, &self.generators) else {
                        continue;
                    };
                    let Some((fm, s2)) = pm.mul(&suffix, &self.generators) else {
                        continue;
                    };
                    let total_sign = sign * s1 * s2;
                    let mut coeff = c.mul(ac);
                    if total_sign < 0 {
                        coeff = -coeff;
                    }
                    poly_add_term(&mut out, fm, coeff);
                }
            }
        }
        out
    }

    fn check_squares_symbolically(&self) -> Result<()> {
        for (j, g) in self.generators.iter().enumerate() {
            let gp: PolyMap = [(Monomial::generator(j), Scalar::one())].into_iter().collect();
            let del = self.diff_poly(&gp, true);
            let delbar = self.diff_poly(&gp, false);
            let dd = self.diff_poly(&del, true);
            if !dd.is_empty() {
                return Err(Error::NonSquareZero(format!(
                    "del del {} is nonzero",
                    g.name
                )));
            }
            let bb = self.diff_poly(&delbar, false);
            if !bb.is_empty() {
                return Err(Error::NonSquareZero(format!(
                    "delbar delbar {} is nonzero",
                    g.name
                )));
            }
            let mut anti = self.diff_poly(&delbar, true);
            for (m, c) in self.diff_poly(&del, false) {
                poly_add_term(&mut anti, m, c);
            }
            if !anti.is_empty() {
                return Err(Error::NonSquareZero(format!(
                    "del delbar {} + delbar del {} is nonzero",
                    g.name, g.name
                )));
            }
        }
        Ok(())
    }

    fn enumerate_atoms(&mut self) {
        let mut all: Vec<Monomial> = Vec::new();
        let mut stack: Vec<(usize, Monomial, i64)> = vec![(0, Monomial::one(), 0)];
        while let Some((gi, m, deg)) = stack.pop() {
            if gi == self.generators.len() {
                all.push(m);
                continue;
            }
            let gdeg = self.generators[gi].bidegree.total();
            let max_e = if self.generators[gi].bidegree.is_odd() {
                1
            } else {
                ((self.truncation - deg) / gdeg).max(0)
            };
            for e in 0..=max_e {
                let extra = gdeg * e;
                if deg + extra > self.truncation {
                    break;
                }
                let mut mm = m.clone();
                if e > 0 {
                    mm.0.push((gi, e as u32));
                }
                stack.push((gi + 1, mm, deg + extra));
            }
        }
        let ngens = self.generators.len();
        all.sort_by(|a, b| {
            let ka = (a.bidegree(&self.generators), a.order_key(ngens));
            let kb = (b.bidegree(&self.generators), b.order_key(ngens));
            ka.cmp(&kb)
        });
        for (id, m) in all.into_iter().enumerate() {
            let bd = m.bidegree(&self.generators);
            self.index.insert(m.clone(), id);
            self.by_bidegree.entry(bd).or_default().push(id);
            self.atom_bidegree.push(bd);
            self.atoms.push(m);
        }
        self.unit_atom = self.index[&Monomial::one()];
    }

    fn poly_to_element(&self, poly: &PolyMap) -> Option<Element> {
        let mut e = Element::zero();
        for (m, c) in poly {
            match self.index.get(m) {
                Some(&id) => e.add_term(id, c.clone()),
                None => return None,
            }
        }
        Some(e)
    }

    fn compute_atom_images(&mut self) {
        for id in 0..self.atoms.len() {
            let gp: PolyMap = [(self.atoms[id].clone(), Scalar::one())]
                .into_iter()
                .collect();
            let del = self.diff_poly(&gp, true);
            let delbar = self.diff_poly(&gp, false);
            self.del_atoms.push(self.poly_to_element(&del));
            self.delbar_atoms.push(self.poly_to_element(&delbar));
        }
    }

    fn compute_minimality(&self) -> bool {
        self.generators.iter().enumerate().all(|(j, _)| {
            let gp: PolyMap = [(Monomial::generator(j), Scalar::one())].into_iter().collect();
            let dd = self.diff_poly(&self.diff_poly(&gp, false), true);
            dd.keys().all(|m| m.is_decomposable())
        })
    }

    pub fn is_simply_connected(&self) -> bool {
        self.generators.iter().all(|g| g.bidegree.total() >= 2)
    }

    /// Atom id of the `j`-th generator.
    pub fn generator_atom(&self, j: usize) -> usize {
        self.index[&Monomial::generator(j)]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Differential image of an atom as an explicit polynomial, not subject
    /// to the truncation window. Kernel computations at the window boundary
    /// need these phantom coordinates: an image that leaves the window is
    /// nonzero even though it has no atom representation.
    pub fn symbolic_image(&self, atom: usize, which: super::Diff) -> PolyMap {
        let gp: PolyMap = [(self.atoms[atom].clone(), Scalar::one())]
            .into_iter()
            .collect();
        match which {
            super::Diff::Del => self.diff_poly(&gp, true),
            super::Diff::Delbar => self.diff_poly(&gp, false),
            super::Diff::D => {
                let mut out = self.diff_poly(&gp, true);
                for (m, c) in self.diff_poly(&gp, false) {
                    poly_add_term(&mut out, m, c);
                }
                out
            }
            super::Diff::DelDelbar => self.diff_poly(&self.diff_poly(&gp, false), true),
        }
    }

    pub fn mul_atoms(&self, i: usize, j: usize) -> Result<Element> {
        let Some((m, sign)) = self.atoms[i].mul(&self.atoms[j], &self.generators) else {
            return Ok(Element::zero());
        };
        let bd = m.bidegree(&self.generators);
        if bd.total() > self.truncation {
            return Err(Error::TruncationOverflow(self.truncation));
        }
        let id = self.index[&m];
        let c = if sign < 0 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        let mut e = Element::zero();
        e.add_term(id, c);
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::testfix::{cp1_model, gen, polynomial_algebra};

    #[test]
    fn single_closed_generator_is_valid() {
        let a = polynomial_algebra(6);
        assert_eq!(a.dim_at(Bidegree::new(2, 2)), 1);
        assert_eq!(a.dim_at(Bidegree::new(1, 0)), 0);
        assert_eq!(a.dim_at(Bidegree::new(3, 3)), 1);
    }

    #[test]
    fn odd_square_in_assignment_rejected() {
        let m = Monomial(vec![(0, 2)]);
        let err = FreeCbba::new(
            "bad".into(),
            vec![gen("a", 1, 0)],
            vec![vec![(m, Scalar::one())]],
            vec![vec![]],
            4,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GradingViolation(_)));
    }

    #[test]
    fn flipped_anticommutation_rejected() {
        // del a = ap, delbar a = aq, del aq = w, delbar ap = w: then
        // del delbar a + delbar del a = 2w != 0.
        let err = FreeCbba::new(
            "bad".into(),
            vec![gen("a", 1, 1), gen("ap", 2, 1), gen("aq", 1, 2), gen("w", 2, 2)],
            vec![
                vec![(Monomial::generator(1), Scalar::one())],
                vec![],
                vec![(Monomial::generator(3), Scalar::one())],
                vec![],
            ],
            vec![
                vec![(Monomial::generator(2), Scalar::one())],
                vec![(Monomial::generator(3), Scalar::one())],
                vec![],
                vec![],
            ],
            5,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonSquareZero(_)));
    }

    #[test]
    fn koszul_signs_on_products() {
        let a = Algebra::Free(
            FreeCbba::new(
                "ab".into(),
                vec![gen("a", 1, 0), gen("b", 0, 1)],
                vec![vec![], vec![]],
                vec![vec![], vec![]],
                4,
                None,
            )
            .unwrap(),
        );
        let free = a.free().unwrap();
        let ea = a.atom_element(free.generator_atom(0));
        let eb = a.atom_element(free.generator_atom(1));
        let ab = a.mul(&ea, &eb).unwrap();
        let ba = a.mul(&eb, &ea).unwrap();
        assert_eq!(ab.neg(), ba);
        assert!(a.mul(&ea, &ea).unwrap().is_zero());
    }

    #[test]
    fn even_generator_commutes_and_squares() {
        let a = polynomial_algebra(4);
        let free = a.free().unwrap();
        let x = a.atom_element(free.generator_atom(0));
        let xx = a.mul(&x, &x).unwrap();
        assert!(!xx.is_zero());
        assert_eq!(a.element_bidegree(&xx), Some(Bidegree::new(2, 2)));
    }

    #[test]
    fn truncation_overflow_on_product() {
        let a = polynomial_algebra(2);
        let free = a.free().unwrap();
        let x = a.atom_element(free.generator_atom(0));
        assert!(matches!(
            a.mul(&x, &x),
            Err(Error::TruncationOverflow(2))
        ));
    }

    #[test]
    fn monomial_count_matches_generating_function() {
        // Generating function: even generator of degree d contributes
        // 1/(1-t^d), odd contributes (1+t^d). Coefficients counted by brute
        // force series multiplication.
        let gens = vec![gen("x", 1, 1), gen("a", 2, 1), gen("b", 1, 2), gen("y", 2, 2)];
        let trunc = 9i64;
        let alg = Algebra::Free(
            FreeCbba::new(
                "gf".into(),
                gens.clone(),
                vec![vec![]; 4],
                vec![vec![]; 4],
                trunc,
                None,
            )
            .unwrap(),
        );
        let n = trunc as usize;
        let mut series = vec![0i64; n + 1];
        series[0] = 1;
        for g in &gens {
            let d = g.bidegree.total() as usize;
            let mut next = vec![0i64; n + 1];
            if g.bidegree.is_odd() {
                for i in 0..=n {
                    next[i] += series[i];
                    if i >= d {
                        next[i] += series[i - d];
                    }
                }
            } else {
                for i in 0..=n {
                    let mut acc = 0;
                    let mut j = 0;
                    while d * j <= i {
                        acc += series[i - d * j];
                        j += 1;
                    }
                    next[i] = acc;
                }
            }
            series = next;
        }
        for k in 0..=n {
            let count: usize = alg
                .bidegrees()
                .into_iter()
                .filter(|bd| bd.total() == k as i64)
                .map(|bd| alg.dim_at(bd))
                .sum();
            assert_eq!(count as i64, series[k], "degree {k}");
        }
    }

    #[test]
    fn leibniz_on_products() {
        // d(u*v) = du*v + (-1)^{|u|} u*dv checked on the cp1-style model,
        // truncated high enough that d of a degree-4 product stays visible.
        let alg = crate::testfix::cp1_model_truncated(6);
        let free = alg.free().unwrap();
        let r = alg.atom_element(free.generator_atom(1));
        let x = alg.atom_element(free.generator_atom(0));
        let rx = alg.mul(&r, &x).unwrap();
        let left = alg.d(&rx).unwrap();
        let mut right = alg.mul(&alg.d(&r).unwrap(), &x).unwrap();
        right.add_assign(&alg.mul(&r, &alg.d(&x).unwrap()).unwrap());
        assert_eq!(left, right);
    }

    #[test]
    fn anticommutation_on_elements() {
        let alg = cp1_model();
        let free = alg.free().unwrap();
        let r = alg.atom_element(free.generator_atom(1));
        // delbar(del r) = -del(delbar r) = -x*x
        let dr = alg.del(&r).unwrap();
        let bd = alg.delbar(&dr).unwrap();
        let db = alg.delbar(&r).unwrap();
        let mut sum = alg.del(&db).unwrap();
        sum.add_assign(&bd);
        assert!(sum.is_zero());
        let xx = alg
            .mul(
                &alg.atom_element(free.generator_atom(0)),
                &alg.atom_element(free.generator_atom(0)),
            )
            .unwrap();
        assert_eq!(alg.del(&db).unwrap(), xx);
    }

    #[test]
    fn double_application_vanishes_everywhere() {
        let alg = cp1_model();
        for id in 0..alg.atom_count() {
            if alg.atom_bidegree(id).total() > alg.truncation() - 2 {
                continue;
            }
            let e = alg.atom_element(id);
            assert!(alg.del(&alg.del(&e).unwrap()).unwrap().is_zero());
            assert!(alg.delbar(&alg.delbar(&e).unwrap()).unwrap().is_zero());
            let mut anti = alg.del(&alg.delbar(&e).unwrap()).unwrap();
            anti.add_assign(&alg.delbar(&alg.del(&e).unwrap()).unwrap());
            assert!(anti.is_zero());
        }
    }

    #[test]
    fn nilpotent_order_enforced() {
        // del a refers to a later generator of the same degree: rejected.
        let err = FreeCbba::new(
            "bad-order".into(),
            vec![gen("a", 1, 1), gen("b", 2, 1), gen("c", 1, 1)],
            vec![
                vec![(Monomial::generator(1), Scalar::one())],
                vec![],
                vec![(Monomial::generator(1), Scalar::one())],
            ],
            vec![vec![], vec![], vec![]],
            4,
            None,
        );
        // del a = b is the allowed linear degree-3 part; but del c = b is
        // also linear degree 3, so this one is fine. Use a decomposable
        // reference to a later generator instead.
        assert!(err.is_ok());
        let ab = Monomial(vec![(0, 1), (1, 1)]);
        let err2 = FreeCbba::new(
            "bad-order2".into(),
            vec![gen("a", 1, 0), gen("b", 1, 0)],
            vec![
                vec![(ab, Scalar::one())], // del a = a*b refers to later b
                vec![],
            ],
            vec![vec![], vec![]],
            4,
            None,
        )
        .unwrap_err();
        assert!(matches!(err2, Error::NonNilpotentOrder(_)));
    }
}
