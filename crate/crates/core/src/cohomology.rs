//! Dolbeault, Bott-Chern, Aeppli and de Rham cohomology of a validated
//! algebra, plus the Serre-duality pairing check. All quotients are exact
//! subspace computations; representatives are picked greedily from RREF
//! bases so identical inputs yield identical class lists.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Bidegree, Diff, Element};
use crate::error::Error;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::scalar::Scalar;
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CohomologyKind {
    BottChern,
    Aeppli,
    Dolbeault,
    AntiDolbeault,
    DeRham,
}

impl CohomologyKind {
    pub fn label(&self) -> &'static str {
        match self {
            CohomologyKind::BottChern => "bc",
            CohomologyKind::Aeppli => "a",
            CohomologyKind::Dolbeault => "dolbeault",
            CohomologyKind::AntiDolbeault => "anti-dolbeault",
            CohomologyKind::DeRham => "derham",
        }
    }
}

/// One cohomology space: dimension plus chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub kind: CohomologyKind,
    pub bidegree: Option<Bidegree>,
    pub total_degree: i64,
    pub dim: usize,
    pub classes: Vec<Element>,
}

/// Matrix of a differential from the given source atoms into the given
/// target atoms. Errors when an image falls outside the truncation window.
pub fn diff_matrix(
    alg: &Algebra,
    source: &[usize],
    target: &[usize],
    which: Diff,
) -> Result<SparseMatrix> {
    let mut m = SparseMatrix::zero(target.len(), source.len());
    for (j, &id) in source.iter().enumerate() {
        let img = alg.apply_diff(&alg.atom_element(id), which).map_err(|_| {
            Error::InsufficientTruncation(format!(
                "image of {} under {:?} exceeds truncation {}",
                alg.atom_label(id),
                which,
                alg.truncation()
            ))
        })?;
        let coords = alg.coords_in(target, &img).ok_or_else(|| {
            Error::InsufficientTruncation(format!(
                "image of {} leaves the expected bidegrees",
                alg.atom_label(id)
            ))
        })?;
        for (i, c) in coords {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

fn column_span(m: &SparseMatrix) -> Subspace {
    let rows: Vec<SparseVec> = (0..m.cols)
        .map(|j| {
            let mut col = SparseVec::new();
            for (i, row) in m.data.iter().enumerate() {
                if let Some(c) = row.get(&j) {
                    col.insert(i, c.clone());
                }
            }
            col
        })
        .collect();
    Subspace::span(m.rows, &rows)
}

fn diff_shift(which: Diff) -> Bidegree {
    match which {
        Diff::Del => Bidegree::new(1, 0),
        Diff::Delbar => Bidegree::new(0, 1),
        Diff::DelDelbar => Bidegree::new(1, 1),
        Diff::D => panic!("the total differential has no pure shift"),
    }
}

/// Matrix of a differential over the given source atoms, with rows indexed
/// by whatever the images hit — including phantom monomials beyond the
/// truncation window. Only meaningful for kernel computations, where the
/// row indexing is irrelevant as long as it is consistent.
pub fn kernel_matrix(alg: &Algebra, source: &[usize], which: Diff) -> SparseMatrix {
    match alg {
        Algebra::Finite(_) => {
            let mut m = SparseMatrix::zero(alg.atom_count(), source.len());
            for (j, &id) in source.iter().enumerate() {
                let img = alg
                    .apply_diff(&alg.atom_element(id), which)
                    .expect("finite differentials never overflow");
                for (&i, c) in &img.terms {
                    m.set(i, j, c.clone());
                }
            }
            m
        }
        Algebra::Free(free) => {
            let images: Vec<_> = source
                .iter()
                .map(|&id| free.symbolic_image(id, which))
                .collect();
            let mut dict: std::collections::BTreeMap<&crate::algebra::Monomial, usize> =
                std::collections::BTreeMap::new();
            for img in &images {
                for m in img.keys() {
                    let next = dict.len();
                    dict.entry(m).or_insert(next);
                }
            }
            let mut m = SparseMatrix::zero(dict.len(), source.len());
            for (j, img) in images.iter().enumerate() {
                for (mono, c) in img {
                    m.set(dict[mono], j, c.clone());
                }
            }
            m
        }
    }
}

/// Kernel of a differential on one bidegree, as a subspace of that bidegree.
pub fn kernel_at(alg: &Algebra, bd: Bidegree, which: Diff) -> Result<Subspace> {
    let source = alg.atoms_at(bd).to_vec();
    let m = kernel_matrix(alg, &source, which);
    Ok(Subspace::span(source.len(), &m.kernel()))
}

/// Image of a differential into one bidegree.
pub fn image_at(alg: &Algebra, bd: Bidegree, which: Diff) -> Result<Subspace> {
    let shift = diff_shift(which);
    let source_bd = Bidegree::new(bd.p - shift.p, bd.q - shift.q);
    let source = alg.atoms_at(source_bd).to_vec();
    let target = alg.atoms_at(bd).to_vec();
    let m = diff_matrix(alg, &source, &target, which)?;
    Ok(column_span(&m))
}

/// Image of the total differential d inside the antidiagonal of total degree
/// `k`, over `antidiagonal_atoms(k)`. Mixed bidegrees are essential here:
/// d-exactness couples the components of an antidiagonal.
pub fn d_image_at_degree(alg: &Algebra, k: i64) -> Result<Subspace> {
    let source = alg.antidiagonal_atoms(k - 1);
    let target = alg.antidiagonal_atoms(k);
    let m = diff_matrix(alg, &source, &target, Diff::D)?;
    Ok(column_span(&m))
}

/// Kernel of d on the antidiagonal of total degree `k`.
pub fn d_kernel_at_degree(alg: &Algebra, k: i64) -> Result<Subspace> {
    let source = alg.antidiagonal_atoms(k);
    let m = kernel_matrix(alg, &source, Diff::D);
    Ok(Subspace::span(source.len(), &m.kernel()))
}

/// ker del and ker delbar simultaneously at one bidegree.
pub fn both_closed_at(alg: &Algebra, bd: Bidegree) -> Result<Subspace> {
    let kd = kernel_at(alg, bd, Diff::Del)?;
    let kb = kernel_at(alg, bd, Diff::Delbar)?;
    kd.intersect(&kb)
}

/// Im del + Im delbar at one bidegree.
pub fn exact_sum_at(alg: &Algebra, bd: Bidegree) -> Result<Subspace> {
    let i1 = image_at(alg, bd, Diff::Del)?;
    let i2 = image_at(alg, bd, Diff::Delbar)?;
    i1.sum(&i2)
}

/// Cohomology of one kind at a bidegree. De Rham cohomology lives on total
/// degrees; use `de_rham_cohomology`.
pub fn cohomology(alg: &Algebra, kind: CohomologyKind, bd: Bidegree) -> Result<CohomologySpace> {
    assert!(
        kind != CohomologyKind::DeRham,
        "use de_rham_cohomology for total degrees"
    );
    let atoms = alg.atoms_at(bd).to_vec();
    let (cocycles, exact) = match kind {
        CohomologyKind::BottChern => (
            both_closed_at(alg, bd)?,
            image_at(alg, bd, Diff::DelDelbar)?,
        ),
        CohomologyKind::Aeppli => (kernel_at(alg, bd, Diff::DelDelbar)?, exact_sum_at(alg, bd)?),
        CohomologyKind::Dolbeault => (
            kernel_at(alg, bd, Diff::Delbar)?,
            image_at(alg, bd, Diff::Delbar)?,
        ),
        CohomologyKind::AntiDolbeault => {
            (kernel_at(alg, bd, Diff::Del)?, image_at(alg, bd, Diff::Del)?)
        }
        CohomologyKind::DeRham => unreachable!(),
    };
    debug_assert!(cocycles.contains_subspace(&exact));
    let reps = cocycles.quotient_reps(&exact)?;
    let classes: Vec<Element> = reps
        .iter()
        .map(|v| alg.element_from_coords(&atoms, v))
        .collect();
    Ok(CohomologySpace {
        kind,
        bidegree: Some(bd),
        total_degree: bd.total(),
        dim: classes.len(),
        classes,
    })
}

/// De Rham cohomology of the total complex at a total degree. Capped one
/// below the truncation so the exactness subspace is complete.
pub fn de_rham_cohomology(alg: &Algebra, k: i64) -> Result<CohomologySpace> {
    if alg.is_truncated() && k > alg.truncation() - 1 {
        return Err(Error::InsufficientTruncation(format!(
            "de Rham degree {k} exceeds the cap {}",
            alg.truncation() - 1
        )));
    }
    let atoms = alg.antidiagonal_atoms(k);
    let z = d_kernel_at_degree(alg, k)?;
    let b = d_image_at_degree(alg, k)?;
    debug_assert!(z.contains_subspace(&b));
    let reps = z.quotient_reps(&b)?;
    let classes: Vec<Element> = reps
        .iter()
        .map(|v| alg.element_from_coords(&atoms, v))
        .collect();
    Ok(CohomologySpace {
        kind: CohomologyKind::DeRham,
        bidegree: None,
        total_degree: k,
        dim: classes.len(),
        classes,
    })
}

/// Dimensions at every bidegree where the computation fits inside the
/// truncation window; bidegrees that do not fit are omitted.
pub fn dimension_table(alg: &Algebra, kind: CohomologyKind) -> BTreeMap<Bidegree, usize> {
    let mut out = BTreeMap::new();
    for bd in alg.bidegrees() {
        if let Ok(space) = cohomology(alg, kind, bd) {
            out.insert(bd, space.dim);
        }
    }
    out
}

/// Express an element's class in quotient coordinates: solve
/// `elem = sum_i lambda_i reps_i + e` with `e` in the exactness subspace.
pub fn express_in_quotient(
    alg: &Algebra,
    elem: &Element,
    bd: Bidegree,
    reps: &[Element],
    exact: &Subspace,
) -> Result<Vec<Scalar>> {
    let atoms = alg.atoms_at(bd).to_vec();
    let n = atoms.len();
    let cols = reps.len() + exact.dim();
    let mut m = SparseMatrix::zero(n, cols);
    for (j, r) in reps.iter().enumerate() {
        let coords = alg
            .coords_in(&atoms, r)
            .ok_or_else(|| Error::DimensionMismatch("representative outside bidegree".into()))?;
        for (i, c) in coords {
            m.set(i, j, c);
        }
    }
    for (j, b) in exact.basis.iter().enumerate() {
        for (&i, c) in b {
            m.set(i, reps.len() + j, c.clone());
        }
    }
    let rhs = alg
        .coords_in(&atoms, elem)
        .ok_or_else(|| Error::DimensionMismatch("element outside bidegree".into()))?;
    let sol = m
        .solve(&rhs)?
        .ok_or_else(|| Error::NoSolution("element is not in the asserted span".into()))?;
    Ok((0..reps.len())
        .map(|j| sol.get(&j).cloned().unwrap_or_else(Scalar::zero))
        .collect())
}

/// One pairing cell: the matrix of H_BC^{p,q} x H_A^{n-p,n-q} -> H_A^{n,n}
/// against the chosen omega generator.
#[derive(Clone, Debug)]
pub struct PairingCell {
    pub bidegree: Bidegree,
    pub bc_dim: usize,
    pub a_dim: usize,
    pub matrix: Vec<Vec<Scalar>>,
    pub perfect: bool,
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub n: i64,
    pub vanishing_ok: bool,
    pub vanishing_failures: Vec<(Bidegree, &'static str)>,
    /// Bidegrees whose vanishing could not be computed inside the truncation
    /// window (free algebras only); recorded, not asserted.
    pub vanishing_skipped: Vec<Bidegree>,
    pub top_aeppli_dim: usize,
    pub omega: Option<Element>,
    pub cells: Vec<PairingCell>,
    pub verdict: bool,
    pub first_failure: Option<(Bidegree, String)>,
    pub witness: Option<Element>,
}

/// Verify the Serre-duality conditions: degree-wise finiteness (automatic
/// here), vanishing outside the [0,n] x [0,n] bidegree box, a line in top
/// Aeppli degree, and perfect multiplication pairings cell by cell.
pub fn pairing_check(alg: &Algebra, n: i64) -> Result<PairingReport> {
    if !alg.has_multiplication() {
        return Err(Error::Unsupported(
            "pairing check needs a multiplication".into(),
        ));
    }
    let mut report = PairingReport {
        n,
        vanishing_ok: true,
        vanishing_failures: Vec::new(),
        vanishing_skipped: Vec::new(),
        top_aeppli_dim: 0,
        omega: None,
        cells: Vec::new(),
        verdict: true,
        first_failure: None,
        witness: None,
    };
    fn fail(report: &mut PairingReport, bd: Bidegree, why: String) {
        report.verdict = false;
        if report.first_failure.is_none() {
            report.first_failure = Some((bd, why));
        }
    }

    // (ii) vanishing outside the box, where computable.
    for bd in alg.bidegrees() {
        let outside = bd.p < 0 || bd.q < 0 || bd.p > n || bd.q > n;
        if !outside {
            continue;
        }
        let mut checked_any = false;
        for kind in [CohomologyKind::BottChern, CohomologyKind::Aeppli] {
            if let Ok(space) = cohomology(alg, kind, bd) {
                checked_any = true;
                if space.dim != 0 {
                    report.vanishing_ok = false;
                    report.vanishing_failures.push((
                        bd,
                        match kind {
                            CohomologyKind::BottChern => "bc",
                            _ => "a",
                        },
                    ));
                    if report.witness.is_none() {
                        report.witness = Some(space.classes[0].clone());
                    }
                    fail(&mut report, bd, format!("{} nonzero outside box", kind.label()));
                }
            }
        }
        if !checked_any {
            report.vanishing_skipped.push(bd);
        }
    }

    // H_A^{n,n} must be a line; its first representative is the omega class.
    let top = Bidegree::new(n, n);
    let top_a = cohomology(alg, CohomologyKind::Aeppli, top)?;
    report.top_aeppli_dim = top_a.dim;
    if top_a.dim != 1 {
        fail(
            &mut report,
            top,
            format!("H_A^(n,n) has dimension {} instead of 1", top_a.dim),
        );
        return Ok(report);
    }
    let omega = top_a.classes[0].clone();
    report.omega = Some(omega.clone());
    let exact_top = exact_sum_at(alg, top)?;

    // (iii) each pairing matrix square and invertible.
    for p in 0..=n {
        for q in 0..=n {
            let bd = Bidegree::new(p, q);
            let dual = Bidegree::new(n - p, n - q);
            let bc = cohomology(alg, CohomologyKind::BottChern, bd)?;
            let ae = cohomology(alg, CohomologyKind::Aeppli, dual)?;
            if bc.dim == 0 && ae.dim == 0 {
                continue;
            }
            let mut cell = PairingCell {
                bidegree: bd,
                bc_dim: bc.dim,
                a_dim: ae.dim,
                matrix: Vec::new(),
                perfect: false,
            };
            if bc.dim != ae.dim {
                fail(
                    &mut report,
                    bd,
                    format!("pairing matrix is {}x{}, not square", bc.dim, ae.dim),
                );
                if report.witness.is_none() {
                    let side = if bc.dim > ae.dim { &bc } else { &ae };
                    report.witness = Some(side.classes[0].clone());
                }
                report.cells.push(cell);
                continue;
            }
            let mut matrix = Vec::new();
            for u in &bc.classes {
                let mut row = Vec::new();
                for v in &ae.classes {
                    let prod = alg.mul(u, v)?;
                    let lambda = express_in_quotient(
                        alg,
                        &prod,
                        top,
                        std::slice::from_ref(&omega),
                        &exact_top,
                    )?;
                    row.push(lambda[0].clone());
                }
                matrix.push(row);
            }
            let mut m = SparseMatrix::zero(bc.dim, ae.dim);
            for (i, row) in matrix.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    m.set(i, j, c.clone());
                }
            }
            let invertible = m.rank() == bc.dim;
            cell.matrix = matrix;
            cell.perfect = invertible;
            if !invertible {
                // A kernel vector of the transposed matrix combines BC
                // classes into one that pairs to zero with everything.
                let kern = m.transpose().kernel();
                if let Some(kv) = kern.first() {
                    let mut w = Element::zero();
                    for (&i, c) in kv {
                        w.add_scaled(c, &bc.classes[i]);
                    }
                    if report.witness.is_none() {
                        report.witness = Some(w);
                    }
                }
                fail(&mut report, bd, "pairing matrix singular".into());
            }
            report.cells.push(cell);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfix::*;

    #[test]
    fn dot_has_one_class_everywhere() {
        let alg = dot(1, 1);
        let bd = Bidegree::new(1, 1);
        for kind in [
            CohomologyKind::BottChern,
            CohomologyKind::Aeppli,
            CohomologyKind::Dolbeault,
            CohomologyKind::AntiDolbeault,
        ] {
            let space = cohomology(&alg, kind, bd).unwrap();
            assert_eq!(space.dim, 1, "{kind:?}");
        }
        assert_eq!(de_rham_cohomology(&alg, 2).unwrap().dim, 1);
    }

    #[test]
    fn square_is_acyclic_for_bc_and_aeppli() {
        let alg = square(0, 0);
        for bd in alg.bidegrees() {
            assert_eq!(
                cohomology(&alg, CohomologyKind::BottChern, bd).unwrap().dim,
                0,
                "bc at {bd}"
            );
            assert_eq!(
                cohomology(&alg, CohomologyKind::Aeppli, bd).unwrap().dim,
                0,
                "aeppli at {bd}"
            );
        }
    }

    #[test]
    fn projective_plane_ring_cohomology() {
        let alg = projective_ring(2);
        for p in 0..=2 {
            let bd = Bidegree::new(p, p);
            assert_eq!(
                cohomology(&alg, CohomologyKind::BottChern, bd).unwrap().dim,
                1
            );
        }
        assert_eq!(
            cohomology(&alg, CohomologyKind::BottChern, Bidegree::new(1, 0))
                .unwrap()
                .dim,
            0
        );
    }

    #[test]
    fn cp1_model_matches_projective_line() {
        // x*x = deldelbar r is exact, so the model's cohomology is the
        // projective line ring: one class at (0,0) and one at (1,1).
        let alg = cp1_model();
        let expect = [
            (Bidegree::new(0, 0), 1),
            (Bidegree::new(1, 1), 1),
            (Bidegree::new(2, 2), 0),
            (Bidegree::new(2, 1), 0),
            (Bidegree::new(1, 2), 0),
        ];
        for (bd, d) in expect {
            let got = cohomology(&alg, CohomologyKind::BottChern, bd).unwrap().dim;
            assert_eq!(got, d, "bc at {bd}");
            let got_a = cohomology(&alg, CohomologyKind::Aeppli, bd).unwrap().dim;
            assert_eq!(got_a, d, "aeppli at {bd}");
        }
    }

    #[test]
    fn euler_characteristic_consistency() {
        for alg in [dot(0, 0), square(0, 0), zigzag2(1, 0), projective_ring(2)] {
            let mut chi_dr = 0i64;
            let mut chi_dim = 0i64;
            let max = alg.max_total_degree();
            for k in 0..=max {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                chi_dr += sign * de_rham_cohomology(&alg, k).unwrap().dim as i64;
                let dim_k: usize = alg
                    .bidegrees()
                    .into_iter()
                    .filter(|b| b.total() == k)
                    .map(|b| alg.dim_at(b))
                    .sum();
                chi_dim += sign * dim_k as i64;
            }
            assert_eq!(chi_dr, chi_dim, "{}", alg.name());
        }
    }

    #[test]
    fn pairing_on_projective_line_ring() {
        let report = pairing_check(&projective_ring(1), 1).unwrap();
        assert!(report.verdict);
        assert_eq!(report.top_aeppli_dim, 1);
        assert!(report.cells.iter().all(|c| c.perfect));
    }

    #[test]
    fn pairing_fails_on_acyclic_complex() {
        // A square with a unit adjoined: H_A^{1,1} = 0, not a line.
        use crate::algebra::FiniteBicomplex;
        use std::collections::BTreeMap as Map;
        let base = square(1, 0);
        let fin = base.finite().unwrap();
        let mut basis = vec![("one".to_string(), Bidegree::new(0, 0))];
        basis.extend(fin.basis.iter().cloned());
        let shift = |e: &Element| {
            let mut out = Element::zero();
            for (&i, c) in &e.terms {
                out.add_term(i + 1, c.clone());
            }
            out
        };
        let mut del = vec![Element::zero()];
        del.extend(fin.del.iter().map(&shift));
        let mut delbar = vec![Element::zero()];
        delbar.extend(fin.delbar.iter().map(&shift));
        let mut mult = Map::new();
        for i in 0..basis.len() {
            mult.insert((0, i), Element::atom(i));
            mult.insert((i, 0), Element::atom(i));
        }
        let alg = Algebra::Finite(
            FiniteBicomplex::new("square-unital".into(), basis, del, delbar, Some(mult), None)
                .unwrap(),
        );
        let report = pairing_check(&alg, 1).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.top_aeppli_dim, 0);
    }

    #[test]
    fn pairing_fails_on_overlong_ring() {
        // cp2 ring checked against n = 1: H_BC^{2,2} != 0 violates vanishing.
        let report = pairing_check(&projective_ring(2), 1).unwrap();
        assert!(!report.verdict);
        assert!(!report.vanishing_ok);
        assert!(report
            .vanishing_failures
            .iter()
            .any(|(bd, _)| *bd == Bidegree::new(2, 2)));
    }

    #[test]
    fn pairing_matrix_of_zero_differential_ring_is_multiplication() {
        let alg = projective_ring(2);
        let report = pairing_check(&alg, 2).unwrap();
        assert!(report.verdict);
        for cell in &report.cells {
            assert_eq!(cell.matrix.len(), 1);
            assert!(cell.matrix[0][0].is_one(), "cell at {}", cell.bidegree);
        }
    }
}
