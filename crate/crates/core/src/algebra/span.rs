//! Bigraded span families: per-bidegree subspaces of an algebra, used for
//! generated sub-cbbas and ideal slices.

use std::collections::BTreeMap;

use super::{Algebra, Bidegree, Diff, Element};
use crate::error::Error;
use crate::linalg::Subspace;
use crate::Result;

/// A bidegree-indexed family of subspaces. Coordinates at each bidegree are
/// relative to `Algebra::atoms_at`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanFamily {
    pub slices: BTreeMap<Bidegree, Subspace>,
}

impl SpanFamily {
    pub fn empty() -> Self {
        SpanFamily {
            slices: BTreeMap::new(),
        }
    }

    /// The full algebra as a family.
    pub fn full(alg: &Algebra) -> Self {
        let mut slices = BTreeMap::new();
        for bd in alg.bidegrees() {
            slices.insert(bd, Subspace::full(alg.dim_at(bd)));
        }
        SpanFamily { slices }
    }

    pub fn slice(&self, alg: &Algebra, bd: Bidegree) -> Subspace {
        self.slices
            .get(&bd)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(alg.dim_at(bd)))
    }

    pub fn dim(&self, bd: Bidegree) -> usize {
        self.slices.get(&bd).map(|s| s.dim()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(|s| s.dim()).sum()
    }

    /// Insert a bidegree-homogeneous element into its slice. Returns true if
    /// the slice grew.
    pub fn insert(&mut self, alg: &Algebra, e: &Element) -> bool {
        if e.is_zero() {
            return false;
        }
        let bd = alg
            .element_bidegree(e)
            .expect("span family elements must be bidegree-homogeneous");
        let atoms = alg.atoms_at(bd);
        let coords = alg
            .coords_in(atoms, e)
            .expect("element coordinates within its bidegree");
        let slice = self
            .slices
            .entry(bd)
            .or_insert_with(|| Subspace::zero(atoms.len()));
        if slice.contains(&coords) {
            return false;
        }
        let mut vs = slice.basis.clone();
        vs.push(coords);
        *slice = Subspace::span(atoms.len(), &vs);
        true
    }

    /// Membership of a (possibly mixed) element: every bidegree component
    /// must lie in its slice.
    pub fn contains(&self, alg: &Algebra, e: &Element) -> bool {
        for bd in alg.element_bidegrees(e) {
            let comp = alg.component(e, bd);
            let coords = alg
                .coords_in(alg.atoms_at(bd), &comp)
                .expect("component coordinates");
            let slice = self.slice(alg, bd);
            if !slice.contains(&coords) {
                return false;
            }
        }
        true
    }

    /// Basis elements of one slice, as algebra elements.
    pub fn slice_elements(&self, alg: &Algebra, bd: Bidegree) -> Vec<Element> {
        let atoms = alg.atoms_at(bd);
        self.slice(alg, bd)
            .basis
            .iter()
            .map(|v| alg.element_from_coords(atoms, v))
            .collect()
    }

    pub fn bidegrees(&self) -> Vec<Bidegree> {
        self.slices
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(bd, _)| *bd)
            .collect()
    }
}

/// Differential closure of a generator set: for each pure-bidegree element,
/// the element itself plus its del, delbar and deldelbar images.
fn close_under_diffs(alg: &Algebra, gens: &[Element]) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for g in gens {
        for which in [Diff::Del, Diff::Delbar, Diff::DelDelbar] {
            let img = alg.apply_diff(g, which).map_err(|_| {
                Error::InsufficientTruncation(format!(
                    "differential image of a generator of degree {} exceeds truncation {}",
                    alg.element_bidegrees(g)
                        .first()
                        .map(|b| b.total())
                        .unwrap_or(0),
                    alg.truncation()
                ))
            })?;
            if !img.is_zero() {
                out.push(img);
            }
        }
        out.push(g.clone());
    }
    Ok(out)
}

/// The smallest unital subalgebra of `alg` containing the given elements and,
/// when `with_diffs` is set, their differential images — i.e. the smallest
/// sub-cbba. Slices are reported up to the truncation; products that would
/// leave the window are dropped.
pub fn generated_subalgebra(
    alg: &Algebra,
    gens: &[Element],
    with_diffs: bool,
) -> Result<SpanFamily> {
    for g in gens {
        if alg.element_bidegree(g).is_none() && !g.is_zero() {
            return Err(Error::Unsupported(
                "subalgebra generators must be bidegree-homogeneous".into(),
            ));
        }
    }
    let mut seeds: Vec<Element> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if with_diffs {
        seeds = close_under_diffs(alg, &seeds)?;
    }
    // Mixed-degree differential images cannot occur: generators are pure and
    // del/delbar are homogeneous.
    let mut family = SpanFamily::empty();
    if let Some(u) = alg.unit_atom() {
        family.insert(alg, &alg.atom_element(u));
    }
    let mut queue: Vec<Element> = Vec::new();
    for s in &seeds {
        if family.insert(alg, s) {
            queue.push(s.clone());
        }
    }
    let trunc = alg.truncation();
    while let Some(u) = queue.pop() {
        let udeg = alg.element_bidegree(&u).map(|b| b.total()).unwrap_or(0);
        for g in &seeds {
            let gdeg = alg.element_bidegree(g).map(|b| b.total()).unwrap_or(0);
            if alg.is_truncated() && udeg + gdeg > trunc {
                continue;
            }
            let prod = alg.mul(&u, g)?;
            if family.insert(alg, &prod) {
                queue.push(prod);
            }
        }
    }
    Ok(family)
}

/// The sub-cbba generated by all generators of total degree <= s of a free
/// algebra; contained in the span of monomials of generator-degree <= s+1.
pub fn generated_sub_cbba(alg: &Algebra, s: i64) -> Result<SpanFamily> {
    let free = alg.free().ok_or_else(|| {
        Error::Unsupported("generated sub-cbba needs a free algebra".into())
    })?;
    if s >= alg.truncation() {
        return Err(Error::InsufficientTruncation(format!(
            "generator degree bound {s} must stay below truncation {}",
            alg.truncation()
        )));
    }
    let gens: Vec<Element> = free
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.bidegree.total() <= s)
        .map(|(j, _)| alg.atom_element(free.generator_atom(j)))
        .collect();
    generated_subalgebra(alg, &gens, true)
}

/// Which image of an ideal generator a spanning term came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenVariant {
    Id,
    Del,
    Delbar,
    DelDelbar,
}

/// One spanning term of an ideal: `value = variant(gen) * multiplier`.
#[derive(Clone, Debug)]
pub struct IdealTerm {
    pub gen: usize,
    pub variant: GenVariant,
    pub multiplier: Element,
    pub value: Element,
}

/// An ideal presented by its per-bidegree spans plus the spanning terms with
/// provenance (needed by the eta rewriting).
#[derive(Clone, Debug)]
pub struct IdealSlices {
    pub family: SpanFamily,
    pub terms: Vec<IdealTerm>,
}

/// Span of `{variant(g) * m}` for the given generators and all multiplier
/// basis elements of `ambient` (a span family; pass `SpanFamily::full` for
/// the whole algebra). Products beyond the truncation are dropped.
pub fn ideal_span(
    alg: &Algebra,
    gens: &[Element],
    ambient: &SpanFamily,
    with_diffs: bool,
) -> Result<IdealSlices> {
    let mut expanded: Vec<(usize, GenVariant, Element)> = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        expanded.push((gi, GenVariant::Id, g.clone()));
        if with_diffs {
            for (variant, which) in [
                (GenVariant::Del, Diff::Del),
                (GenVariant::Delbar, Diff::Delbar),
                (GenVariant::DelDelbar, Diff::DelDelbar),
            ] {
                let img = alg.apply_diff(g, which).map_err(|_| {
                    Error::InsufficientTruncation(
                        "ideal generator differential exceeds truncation".into(),
                    )
                })?;
                if !img.is_zero() {
                    expanded.push((gi, variant, img));
                }
            }
        }
    }
    let trunc = alg.truncation();
    let mut family = SpanFamily::empty();
    let mut terms = Vec::new();
    for (gi, variant, val) in &expanded {
        let vdeg = alg
            .element_bidegree(val)
            .map(|b| b.total())
            .unwrap_or(0);
        for (&bd, _) in &ambient.slices {
            if alg.is_truncated() && vdeg + bd.total() > trunc {
                continue;
            }
            for m in ambient.slice_elements(alg, bd) {
                let prod = alg.mul(val, &m)?;
                if prod.is_zero() {
                    continue;
                }
                let grew = family.insert(alg, &prod);
                if grew {
                    terms.push(IdealTerm {
                        gen: *gi,
                        variant: *variant,
                        multiplier: m,
                        value: prod,
                    });
                }
            }
        }
    }
    Ok(IdealSlices { family, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::testfix::{cp1_model, polynomial_algebra};

    #[test]
    fn full_algebra_generated_by_its_single_degree_2_generator() {
        let alg = polynomial_algebra(6);
        let fam = generated_sub_cbba(&alg, 2).unwrap();
        let full = SpanFamily::full(&alg);
        assert_eq!(fam, full);
    }

    #[test]
    fn degree_one_bound_on_simply_connected_gives_scalars() {
        let alg = cp1_model();
        let fam = generated_sub_cbba(&alg, 1).unwrap();
        assert_eq!(fam.total_dim(), 1);
        assert_eq!(fam.dim(Bidegree::new(0, 0)), 1);
    }

    #[test]
    fn cp1_sub_cbba_contains_formal_copies() {
        let alg = cp1_model();
        let free = alg.free().unwrap();
        let fam = generated_sub_cbba(&alg, 2).unwrap();
        // del r and delbar r have generator degree 3 but lie in the closure.
        let rp = alg.atom_element(free.generator_atom(2));
        let rq = alg.atom_element(free.generator_atom(3));
        assert!(fam.contains(&alg, &rp));
        assert!(fam.contains(&alg, &rq));
        let xx = alg
            .mul(
                &alg.atom_element(free.generator_atom(0)),
                &alg.atom_element(free.generator_atom(0)),
            )
            .unwrap();
        assert!(fam.contains(&alg, &xx));
    }

    #[test]
    fn generated_span_respects_generator_degree_bound() {
        // Every slice of C(Lambda V^{<=s}) sits inside the span of monomials
        // of generator-degree <= s+1.
        let alg = cp1_model();
        let free = alg.free().unwrap();
        let fam = generated_sub_cbba(&alg, 2).unwrap();
        for bd in fam.bidegrees() {
            for e in fam.slice_elements(&alg, bd) {
                for &atom in e.terms.keys() {
                    let mono = &free.atoms[atom];
                    let ok = mono
                        .0
                        .iter()
                        .all(|&(g, _)| free.generators[g].bidegree.total() <= 3);
                    assert!(ok);
                }
            }
        }
    }

    #[test]
    fn ideal_span_examples() {
        let alg = cp1_model();
        let free = alg.free().unwrap();
        // Empty generator set: zero ideal.
        let empty = ideal_span(&alg, &[], &SpanFamily::full(&alg), true).unwrap();
        assert_eq!(empty.family.total_dim(), 0);

        // N = {x} in Lambda(x): slice at (2,2) is spanned by x*x.
        let x = alg.atom_element(free.generator_atom(0));
        let ideal = ideal_span(&alg, &[x], &SpanFamily::full(&alg), false).unwrap();
        assert_eq!(ideal.family.dim(Bidegree::new(2, 2)), 2); // x*x and x*r
        assert_eq!(ideal.family.dim(Bidegree::new(1, 1)), 1); // x itself

        // N = {r} with differential closure at (2,2): del delbar r = x*x,
        // r*x and r*r (r has even total degree, so its square survives).
        let r = alg.atom_element(free.generator_atom(1));
        let ideal_r = ideal_span(&alg, &[r], &SpanFamily::full(&alg), true).unwrap();
        assert_eq!(ideal_r.family.dim(Bidegree::new(2, 2)), 3);
        let xx = Monomial(vec![(0, 2)]);
        let xx_el = alg.atom_element(free.index[&xx]);
        assert!(ideal_r.family.contains(&alg, &xx_el));
    }

    #[test]
    fn pure_power_ideal_in_polynomial_algebra() {
        let alg = polynomial_algebra(4);
        let free = alg.free().unwrap();
        let x = alg.atom_element(free.generator_atom(0));
        let ideal = ideal_span(&alg, &[x], &SpanFamily::full(&alg), false).unwrap();
        assert_eq!(ideal.family.dim(Bidegree::new(2, 2)), 1);
        assert_eq!(ideal.family.dim(Bidegree::new(0, 0)), 0);
    }
}
