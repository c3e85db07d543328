//! Decomposition of finite bicomplexes into dots, squares and zigzags.
//!
//! Squares are split off one at a time by an explicit projection (the
//! functional dual to a chosen deldelbar-image vector), which leaves a
//! complex with deldelbar = 0. On that reduction every indecomposable is a
//! zigzag supported on two adjacent antidiagonals, and the staircase of each
//! antidiagonal pair is an A_n-quiver representation whose interval
//! multiplicities are exact rank data: mult(I) is computed from the
//! generalized ranks of I and its one-node extensions by inclusion-exclusion.
//! Dot counts come from the closed-form quotient
//! (ker del ∩ ker delbar) / (ker del ∩ ker delbar ∩ (Im del + Im delbar)).

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Bidegree, Diff};
use crate::cohomology::{both_closed_at, exact_sum_at, image_at, kernel_at};
use crate::error::Error;
use crate::linalg::{add_scaled, SparseMatrix, SparseVec, Subspace};
use crate::scalar::Scalar;
use crate::Result;

/// One indecomposable shape.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Shape {
    Dot(Bidegree),
    /// Anchored at the corner `a` with spots a, del a, delbar a, deldelbar a.
    Square(Bidegree),
    /// Spots in staircase order (ascending p, alternating antidiagonals).
    Zigzag(Vec<Bidegree>),
}

impl Shape {
    pub fn spots(&self) -> Vec<Bidegree> {
        match self {
            Shape::Dot(bd) => vec![*bd],
            Shape::Square(bd) => vec![
                *bd,
                Bidegree::new(bd.p + 1, bd.q),
                Bidegree::new(bd.p, bd.q + 1),
                Bidegree::new(bd.p + 1, bd.q + 1),
            ],
            Shape::Zigzag(spots) => spots.clone(),
        }
    }

    pub fn word(&self) -> String {
        match self {
            Shape::Dot(bd) => format!("dot {bd}"),
            Shape::Square(bd) => format!("square {bd}"),
            Shape::Zigzag(spots) => {
                let parts: Vec<String> = spots.iter().map(|b| b.to_string()).collect();
                format!("zigzag {}", parts.join("-"))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZigzagDecomposition {
    /// Shape -> multiplicity, deterministically ordered.
    pub shapes: Vec<(Shape, usize)>,
}

impl ZigzagDecomposition {
    pub fn only_dots_and_squares(&self) -> bool {
        self.shapes
            .iter()
            .all(|(s, _)| matches!(s, Shape::Dot(_) | Shape::Square(_)))
    }

    pub fn multiplicity(&self, shape: &Shape) -> usize {
        self.shapes
            .iter()
            .find(|(s, _)| s == shape)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Total dimension the inventory contributes at one bidegree.
    pub fn dim_at(&self, bd: Bidegree) -> usize {
        self.shapes
            .iter()
            .map(|(s, m)| m * s.spots().iter().filter(|b| **b == bd).count())
            .sum()
    }

    /// Bott-Chern dimension the inventory predicts at one bidegree: dots
    /// count there, a square counts at its closed corner, a zigzag counts
    /// its targets (local maxima of total degree).
    pub fn predicted_bc_dim(&self, bd: Bidegree) -> usize {
        self.shapes
            .iter()
            .map(|(s, m)| {
                let c = match s {
                    Shape::Dot(b) => usize::from(*b == bd),
                    Shape::Square(b) => {
                        usize::from(Bidegree::new(b.p + 1, b.q + 1) == bd)
                    }
                    Shape::Zigzag(spots) => {
                        let top = spots.iter().map(|b| b.total()).max().unwrap();
                        spots.iter().filter(|b| b.total() == top && **b == bd).count()
                    }
                };
                m * c
            })
            .sum()
    }

    /// Aeppli dimension the inventory predicts: dots count, a square counts
    /// at its open corner, a zigzag counts its sources (local minima).
    pub fn predicted_a_dim(&self, bd: Bidegree) -> usize {
        self.shapes
            .iter()
            .map(|(s, m)| {
                let c = match s {
                    Shape::Dot(b) => usize::from(*b == bd),
                    Shape::Square(b) => usize::from(*b == bd),
                    Shape::Zigzag(spots) => {
                        let bottom = spots.iter().map(|b| b.total()).min().unwrap();
                        spots
                            .iter()
                            .filter(|b| b.total() == bottom && **b == bd)
                            .count()
                    }
                };
                m * c
            })
            .sum()
    }
}

/// A working copy of a bicomplex during square peeling: differentials as
/// basis-indexed sparse images, basis vectors abstract.
#[derive(Clone)]
struct Reduced {
    bidegrees: Vec<Bidegree>,
    del: Vec<SparseVec>,
    delbar: Vec<SparseVec>,
    by_bd: BTreeMap<Bidegree, Vec<usize>>,
}

impl Reduced {
    fn from_algebra(alg: &Algebra) -> Result<Self> {
        let n = alg.atom_count();
        let mut bidegrees = Vec::with_capacity(n);
        let mut del = Vec::with_capacity(n);
        let mut delbar = Vec::with_capacity(n);
        for id in 0..n {
            bidegrees.push(alg.atom_bidegree(id));
            let d = alg
                .del_atom(id)
                .ok_or_else(|| Error::Unsupported("truncated differential".into()))?;
            let b = alg
                .delbar_atom(id)
                .ok_or_else(|| Error::Unsupported("truncated differential".into()))?;
            del.push(d.terms.iter().map(|(&i, c)| (i, c.clone())).collect());
            delbar.push(b.terms.iter().map(|(&i, c)| (i, c.clone())).collect());
        }
        let mut by_bd: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, bd) in bidegrees.iter().enumerate() {
            by_bd.entry(*bd).or_default().push(i);
        }
        Ok(Reduced {
            bidegrees,
            del,
            delbar,
            by_bd,
        })
    }

    fn dim(&self) -> usize {
        self.bidegrees.len()
    }

    fn at(&self, bd: Bidegree) -> &[usize] {
        static EMPTY: [usize; 0] = [];
        self.by_bd.get(&bd).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    fn apply(&self, images: &[SparseVec], v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            add_scaled(&mut out, c, &images[i]);
        }
        out
    }

    /// deldelbar image of a basis vector.
    fn ddbar_vec(&self, v: &SparseVec) -> SparseVec {
        self.apply(&self.del, &self.apply(&self.delbar, v))
    }

    /// Find a basis vector with nonzero deldelbar, scanning bidegrees
    /// lexicographically. Returns (bidegree, vector in current coordinates).
    fn find_square_corner(&self) -> Option<(Bidegree, SparseVec)> {
        for (&bd, ids) in &self.by_bd {
            for &i in ids {
                let mut v = SparseVec::new();
                v.insert(i, Scalar::one());
                if !self.ddbar_vec(&v).is_empty() {
                    return Some((bd, v));
                }
            }
        }
        None
    }

    /// Split off the square generated by `a` (whose deldelbar is nonzero)
    /// and return the complement complex.
    fn peel_square(&self, a: &SparseVec) -> Reduced {
        let w = self.ddbar_vec(a);
        let (&j0, w0) = w.iter().next().expect("nonzero corner image");
        let w0_inv = w0.inv();
        // lambda(v) = v[j0] / w[j0]; the square's projection kernel per
        // bidegree is the kernel of one functional built from lambda.
        let corner = self.index_bd(a);
        let spots = [
            corner,
            Bidegree::new(corner.p + 1, corner.q),
            Bidegree::new(corner.p, corner.q + 1),
            Bidegree::new(corner.p + 1, corner.q + 1),
        ];
        // functional per spot: coefficient row over the spot's basis ids.
        let mut keep: Vec<SparseVec> = Vec::new(); // new basis vectors in old coords
        let mut keep_bd: Vec<Bidegree> = Vec::new();
        for (&bd, ids) in &self.by_bd {
            let functional: Option<Vec<Scalar>> = if bd == spots[0] {
                Some(
                    ids.iter()
                        .map(|&i| {
                            let mut v = SparseVec::new();
                            v.insert(i, Scalar::one());
                            let img = self.ddbar_vec(&v);
                            img.get(&j0).cloned().unwrap_or_else(Scalar::zero)
                        })
                        .collect(),
                )
            } else if bd == spots[1] {
                Some(
                    ids.iter()
                        .map(|&i| {
                            self.delbar[i]
                                .get(&j0)
                                .cloned()
                                .unwrap_or_else(Scalar::zero)
                        })
                        .collect(),
                )
            } else if bd == spots[2] {
                Some(
                    ids.iter()
                        .map(|&i| self.del[i].get(&j0).cloned().unwrap_or_else(Scalar::zero))
                        .collect(),
                )
            } else if bd == spots[3] {
                Some(
                    ids.iter()
                        .map(|&i| {
                            if i == j0 {
                                Scalar::one()
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect(),
                )
            } else {
                None
            };
            match functional {
                None => {
                    for &i in ids {
                        let mut v = SparseVec::new();
                        v.insert(i, Scalar::one());
                        keep.push(v);
                        keep_bd.push(bd);
                    }
                }
                Some(row) => {
                    let mut m = SparseMatrix::zero(1, ids.len());
                    for (c, s) in row.iter().enumerate() {
                        m.set(0, c, s.mul(&w0_inv));
                    }
                    for kv in m.kernel() {
                        let mut v = SparseVec::new();
                        for (&local, c) in &kv {
                            v.insert(ids[local], c.clone());
                        }
                        keep.push(v);
                        keep_bd.push(bd);
                    }
                }
            }
        }
        // Express old-coordinate images in the kept basis.
        let pos_by_bd: BTreeMap<Bidegree, Vec<usize>> = {
            let mut m: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
            for (idx, bd) in keep_bd.iter().enumerate() {
                m.entry(*bd).or_default().push(idx);
            }
            m
        };
        let express = |target_bd: Bidegree, v: &SparseVec| -> SparseVec {
            if v.is_empty() {
                return SparseVec::new();
            }
            let cols: Vec<usize> = pos_by_bd.get(&target_bd).cloned().unwrap_or_default();
            // Solve keep-matrix * x = v over the old coordinates.
            let old_ids: Vec<usize> = self.at(target_bd).to_vec();
            let old_pos: BTreeMap<usize, usize> =
                old_ids.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let mut m = SparseMatrix::zero(old_ids.len(), cols.len());
            for (cidx, &kidx) in cols.iter().enumerate() {
                for (&oid, c) in &keep[kidx] {
                    m.set(old_pos[&oid], cidx, c.clone());
                }
            }
            let rhs: SparseVec = v
                .iter()
                .map(|(&oid, c)| (old_pos[&oid], c.clone()))
                .collect();
            let sol = m
                .solve(&rhs)
                .expect("dimensions fixed")
                .expect("projection image stays in the complement");
            sol.into_iter().map(|(cidx, c)| (cols[cidx], c)).collect()
        };
        let mut del = Vec::with_capacity(keep.len());
        let mut delbar = Vec::with_capacity(keep.len());
        for (idx, v) in keep.iter().enumerate() {
            let bd = keep_bd[idx];
            let dv = self.apply(&self.del, v);
            let bv = self.apply(&self.delbar, v);
            del.push(express(Bidegree::new(bd.p + 1, bd.q), &dv));
            delbar.push(express(Bidegree::new(bd.p, bd.q + 1), &bv));
        }
        let mut by_bd: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, bd) in keep_bd.iter().enumerate() {
            by_bd.entry(*bd).or_default().push(i);
        }
        Reduced {
            bidegrees: keep_bd,
            del,
            delbar,
            by_bd,
        }
    }

    fn index_bd(&self, v: &SparseVec) -> Bidegree {
        let (&i, _) = v.iter().next().expect("nonzero vector");
        self.bidegrees[i]
    }
}

/// Nodes of the staircase carrying antidiagonals k (sources) and k+1
/// (targets): ..., T_p, S_p, T_{p+1}, S_{p+1}, ...
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    /// Source S_p at bidegree (p, k-p).
    S(i64),
    /// Target T_p at bidegree (p, k+1-p).
    T(i64),
}

struct Staircase<'a> {
    complex: &'a Reduced,
    k: i64,
    nodes: Vec<Node>,
}

impl<'a> Staircase<'a> {
    fn new(complex: &'a Reduced, k: i64) -> Self {
        let mut ps: Vec<i64> = Vec::new();
        for (&bd, ids) in &complex.by_bd {
            if ids.is_empty() {
                continue;
            }
            if bd.total() == k || bd.total() == k + 1 {
                ps.push(bd.p);
            }
        }
        let (pmin, pmax) = match (ps.iter().min(), ps.iter().max()) {
            (Some(&a), Some(&b)) => (a - 1, b + 1),
            _ => (0, -1),
        };
        let mut nodes = Vec::new();
        for p in pmin..=pmax {
            nodes.push(Node::T(p));
            nodes.push(Node::S(p));
        }
        nodes.push(Node::T(pmax + 1));
        Staircase { complex, k, nodes }
    }

    fn node_bidegree(&self, n: Node) -> Bidegree {
        match n {
            Node::S(p) => Bidegree::new(p, self.k - p),
            Node::T(p) => Bidegree::new(p, self.k + 1 - p),
        }
    }

    fn node_ids(&self, n: Node) -> &[usize] {
        self.complex.at(self.node_bidegree(n))
    }

    fn node_dim(&self, n: Node) -> usize {
        self.node_ids(n).len()
    }

    /// Generalized rank of the interval nodes[i..=j]: the rank of the
    /// canonical map lim -> colim of the restricted diagram. On a direct
    /// sum of interval modules this counts the summands containing the
    /// interval.
    fn generalized_rank(&self, i: usize, j: usize) -> usize {
        let interval = &self.nodes[i..=j];
        let sources: Vec<i64> = interval
            .iter()
            .filter_map(|n| match n {
                Node::S(p) => Some(*p),
                _ => None,
            })
            .collect();
        let targets: Vec<i64> = interval
            .iter()
            .filter_map(|n| match n {
                Node::T(p) => Some(*p),
                _ => None,
            })
            .collect();
        if sources.is_empty() {
            // single target node
            return self.node_dim(interval[0]);
        }
        if targets.is_empty() {
            return self.node_dim(interval[0]);
        }
        // Coordinates of lim: concatenation of source spaces subject to the
        // interior-target compatibility constraints.
        let mut s_offset: BTreeMap<i64, usize> = BTreeMap::new();
        let mut s_total = 0usize;
        for &p in &sources {
            s_offset.insert(p, s_total);
            s_total += self.node_dim(Node::S(p));
        }
        let interior: Vec<i64> = targets
            .iter()
            .copied()
            .filter(|&p| sources.contains(&(p - 1)) && sources.contains(&p))
            .collect();
        let mut t_offset: BTreeMap<i64, usize> = BTreeMap::new();
        let mut t_rows = 0usize;
        for &p in &interior {
            t_offset.insert(p, t_rows);
            t_rows += self.node_dim(Node::T(p));
        }
        // Constraint matrix Phi: del(x_{S_{p-1}}) - delbar(x_{S_p}) at T_p.
        let mut phi = SparseMatrix::zero(t_rows, s_total);
        for &p in &interior {
            let t_ids = self.node_ids(Node::T(p)).to_vec();
            let t_pos: BTreeMap<usize, usize> =
                t_ids.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let row0 = t_offset[&p];
            // del from S_{p-1}
            for (c, &sid) in self.node_ids(Node::S(p - 1)).iter().enumerate() {
                for (tid, coef) in &self.complex.del[sid] {
                    if let Some(&r) = t_pos.get(tid) {
                        phi.set(row0 + r, s_offset[&(p - 1)] + c, coef.clone());
                    }
                }
            }
            // minus delbar from S_p
            for (c, &sid) in self.node_ids(Node::S(p)).iter().enumerate() {
                for (tid, coef) in &self.complex.delbar[sid] {
                    if let Some(&r) = t_pos.get(tid) {
                        let mut cur = phi.get(row0 + r, s_offset[&p] + c);
                        cur -= coef;
                        phi.set(row0 + r, s_offset[&p] + c, cur);
                    }
                }
            }
        }
        let lim_basis = phi.kernel();
        if lim_basis.is_empty() {
            return 0;
        }
        // Colim: direct sum of target spaces modulo the relations from
        // sources with both neighbours inside the interval.
        let mut ct_offset: BTreeMap<i64, usize> = BTreeMap::new();
        let mut ct_total = 0usize;
        for &p in &targets {
            ct_offset.insert(p, ct_total);
            ct_total += self.node_dim(Node::T(p));
        }
        let mut relations: Vec<SparseVec> = Vec::new();
        for &p in &sources {
            let left_in = targets.contains(&p);
            let right_in = targets.contains(&(p + 1));
            if !(left_in && right_in) {
                continue;
            }
            for &sid in self.node_ids(Node::S(p)) {
                let mut rel = SparseVec::new();
                let t_ids_l = self.node_ids(Node::T(p)).to_vec();
                let lpos: BTreeMap<usize, usize> =
                    t_ids_l.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                for (tid, coef) in &self.complex.delbar[sid] {
                    if let Some(&r) = lpos.get(tid) {
                        rel.insert(ct_offset[&p] + r, coef.clone());
                    }
                }
                let t_ids_r = self.node_ids(Node::T(p + 1)).to_vec();
                let rpos: BTreeMap<usize, usize> =
                    t_ids_r.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                for (tid, coef) in &self.complex.del[sid] {
                    if let Some(&r) = rpos.get(tid) {
                        let mut cur = rel.get(&(ct_offset[&(p + 1)] + r)).cloned().unwrap_or_else(Scalar::zero);
                        cur -= coef;
                        if cur.is_zero() {
                            rel.remove(&(ct_offset[&(p + 1)] + r));
                        } else {
                            rel.insert(ct_offset[&(p + 1)] + r, cur);
                        }
                    }
                }
                if !rel.is_empty() {
                    relations.push(rel);
                }
            }
        }
        let rel_space = Subspace::span(ct_total, &relations);
        // Map each lim basis vector to the colimit through the leftmost
        // target of the interval.
        let lt = *targets.iter().min().unwrap();
        let images: Vec<SparseVec> = lim_basis
            .iter()
            .map(|x| {
                // value at T_lt comes from whichever neighbour source exists
                let (src_p, use_del) = if sources.contains(&(lt - 1)) {
                    (lt - 1, true)
                } else {
                    (lt, false)
                };
                let mut out = SparseVec::new();
                let t_ids = self.node_ids(Node::T(lt)).to_vec();
                let tpos: BTreeMap<usize, usize> =
                    t_ids.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                for (c, &sid) in self.node_ids(Node::S(src_p)).iter().enumerate() {
                    let coeff = x.get(&(s_offset[&src_p] + c)).cloned();
                    let Some(coeff) = coeff else { continue };
                    let img = if use_del {
                        &self.complex.del[sid]
                    } else {
                        &self.complex.delbar[sid]
                    };
                    for (tid, coef) in img {
                        if let Some(&r) = tpos.get(tid) {
                            let slot = ct_offset[&lt] + r;
                            let mut cur = out.get(&slot).cloned().unwrap_or_else(Scalar::zero);
                            cur += &coeff.mul(coef);
                            if cur.is_zero() {
                                out.remove(&slot);
                            } else {
                                out.insert(slot, cur);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let mut all = rel_space.basis.clone();
        all.extend(images);
        Subspace::span(ct_total, &all).dim() - rel_space.dim()
    }

    /// Interval multiplicities by inclusion-exclusion over one-node
    /// extensions (spaces beyond the padded range are zero).
    fn interval_multiplicities(&self) -> Vec<(Vec<Node>, usize)> {
        let n = self.nodes.len();
        let mut gr = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i..n {
                gr[i][j] = self.generalized_rank(i, j);
            }
        }
        let grx = |i: isize, j: isize| -> usize {
            if i < 0 || j >= n as isize {
                return 0;
            }
            gr[i as usize][j as usize]
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let m = grx(i as isize, j as isize) as i64
                    - grx(i as isize - 1, j as isize) as i64
                    - grx(i as isize, j as isize + 1) as i64
                    + grx(i as isize - 1, j as isize + 1) as i64;
                debug_assert!(m >= 0, "negative interval multiplicity");
                if m > 0 {
                    out.push((self.nodes[i..=j].to_vec(), m as usize));
                }
            }
        }
        out
    }
}

/// Decompose a finite bicomplex into dots, squares and zigzags. Free-kind
/// input is rejected: the truncation does not determine the decomposition of
/// the full complex.
pub fn zigzag_decompose(alg: &Algebra) -> Result<ZigzagDecomposition> {
    if alg.is_free() {
        return Err(Error::Unsupported(
            "zigzag decomposition is defined for finite bicomplexes only".into(),
        ));
    }
    let mut shapes: BTreeMap<Shape, usize> = BTreeMap::new();

    // Dots: closed-form quotient on the original complex.
    for bd in alg.bidegrees() {
        let closed = both_closed_at(alg, bd)?;
        let exact = exact_sum_at(alg, bd)?;
        let inter = closed.intersect(&exact)?;
        let dots = closed.dim() - inter.dim();
        if dots > 0 {
            shapes.insert(Shape::Dot(bd), dots);
        }
    }

    // Squares: rank of deldelbar per corner bidegree.
    for bd in alg.bidegrees() {
        let img = image_at(
            alg,
            Bidegree::new(bd.p + 1, bd.q + 1),
            Diff::DelDelbar,
        )?;
        if img.dim() > 0 {
            shapes.insert(Shape::Square(bd), img.dim());
        }
    }

    // Zigzags: peel squares, then read staircase intervals.
    let mut reduced = Reduced::from_algebra(alg)?;
    while let Some((_, a)) = reduced.find_square_corner() {
        reduced = reduced.peel_square(&a);
    }
    let degrees: Vec<i64> = {
        let mut ks: Vec<i64> = reduced
            .by_bd
            .iter()
            .filter(|(_, ids)| !ids.is_empty())
            .map(|(bd, _)| bd.total())
            .collect();
        ks.sort();
        ks.dedup();
        ks
    };
    for &k in &degrees {
        let st = Staircase::new(&reduced, k);
        for (nodes, mult) in st.interval_multiplicities() {
            if nodes.len() < 2 {
                continue; // singletons are dots of this or another pair
            }
            let spots: Vec<Bidegree> = nodes.iter().map(|&n| st.node_bidegree(n)).collect();
            *shapes.entry(Shape::Zigzag(spots)).or_insert(0) += mult;
        }
    }

    let decomposition = ZigzagDecomposition {
        shapes: shapes.into_iter().collect(),
    };
    // Multiplicities must reproduce every bidegree dimension exactly.
    for bd in alg.bidegrees() {
        if decomposition.dim_at(bd) != alg.dim_at(bd) {
            return Err(Error::InternalContradiction(format!(
                "shape inventory misses bidegree {bd}: {} vs {}",
                decomposition.dim_at(bd),
                alg.dim_at(bd)
            )));
        }
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, FiniteBicomplex};
    use crate::testfix::*;

    #[test]
    fn dot_decomposes_to_one_dot() {
        let d = zigzag_decompose(&dot(1, 1)).unwrap();
        assert_eq!(d.shapes, vec![(Shape::Dot(Bidegree::new(1, 1)), 1)]);
    }

    #[test]
    fn square_decomposes_to_one_square() {
        let d = zigzag_decompose(&square(0, 0)).unwrap();
        assert_eq!(d.shapes, vec![(Shape::Square(Bidegree::new(0, 0)), 1)]);
    }

    #[test]
    fn length_two_zigzag() {
        let d = zigzag_decompose(&zigzag2(1, 0)).unwrap();
        assert_eq!(d.shapes.len(), 1);
        match &d.shapes[0].0 {
            Shape::Zigzag(spots) => {
                assert_eq!(spots.len(), 2);
                assert!(spots.contains(&Bidegree::new(1, 0)));
                assert!(spots.contains(&Bidegree::new(1, 1)));
            }
            other => panic!("expected zigzag, got {other:?}"),
        }
        assert_eq!(d.shapes[0].1, 1);
    }

    #[test]
    fn wedge_zigzag_of_length_three() {
        // x at (1,1) with del x and delbar x independent targets.
        let alg = Algebra::Finite(
            FiniteBicomplex::new(
                "wedge".into(),
                vec![
                    ("x".into(), Bidegree::new(1, 1)),
                    ("u".into(), Bidegree::new(2, 1)),
                    ("v".into(), Bidegree::new(1, 2)),
                ],
                vec![Element::atom(1), Element::zero(), Element::zero()],
                vec![Element::atom(2), Element::zero(), Element::zero()],
                None,
                None,
            )
            .unwrap(),
        );
        let d = zigzag_decompose(&alg).unwrap();
        assert_eq!(d.shapes.len(), 1);
        match &d.shapes[0].0 {
            Shape::Zigzag(spots) => assert_eq!(spots.len(), 3),
            other => panic!("expected zigzag, got {other:?}"),
        }
    }

    #[test]
    fn free_input_rejected() {
        assert!(zigzag_decompose(&cp1_model()).is_err());
    }

    #[test]
    fn disjoint_sum_of_shapes_recovered() {
        // dot (0,0) + square (1,0) + zigzag a(2,0)->(2,1).
        let alg = Algebra::Finite(
            FiniteBicomplex::new(
                "mix".into(),
                vec![
                    ("d".into(), Bidegree::new(0, 0)),
                    ("a".into(), Bidegree::new(1, 0)),
                    ("da".into(), Bidegree::new(2, 0)),
                    ("ba".into(), Bidegree::new(1, 1)),
                    ("w".into(), Bidegree::new(2, 1)),
                    ("z".into(), Bidegree::new(2, 0)),
                    ("dz".into(), Bidegree::new(2, 1)),
                ],
                vec![
                    Element::zero(),
                    Element::atom(2),
                    Element::zero(),
                    Element::from_terms(vec![(4, -crate::scalar::Scalar::one())]),
                    Element::zero(),
                    Element::zero(),
                    Element::zero(),
                ],
                vec![
                    Element::zero(),
                    Element::atom(3),
                    Element::atom(4),
                    Element::zero(),
                    Element::zero(),
                    Element::atom(6),
                    Element::zero(),
                ],
                None,
                None,
            )
            .unwrap(),
        );
        let d = zigzag_decompose(&alg).unwrap();
        assert_eq!(d.multiplicity(&Shape::Dot(Bidegree::new(0, 0))), 1);
        assert_eq!(d.multiplicity(&Shape::Square(Bidegree::new(1, 0))), 1);
        // Spots are listed in staircase node order: the target of the
        // delbar arrow precedes its source within the same p column.
        let zig = Shape::Zigzag(vec![Bidegree::new(2, 1), Bidegree::new(2, 0)]);
        assert_eq!(d.multiplicity(&zig), 1);
        assert_eq!(d.shapes.iter().map(|(_, m)| m).sum::<usize>(), 3);
    }
}
