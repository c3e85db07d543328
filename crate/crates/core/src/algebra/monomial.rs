//! Canonical monomials over an ordered generator list, with Koszul signs.

use super::free::Generator;
use super::Bidegree;

/// A monomial: sorted `(generator index, exponent)` pairs, exponents >= 1,
/// odd generators never above exponent 1. The empty monomial is the unit.
/// The derived order is only used as a map key; the semantic order within a
/// bidegree is `order_key`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(idx: usize) -> Self {
        Monomial(vec![(idx, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bidegree(&self, gens: &[Generator]) -> Bidegree {
        let mut p = 0;
        let mut q = 0;
        for &(g, e) in &self.0 {
            p += gens[g].bidegree.p * e as i64;
            q += gens[g].bidegree.q * e as i64;
        }
        Bidegree::new(p, q)
    }

    pub fn factor_count(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// True when the monomial is a product of two positive-degree monomials.
    pub fn is_decomposable(&self) -> bool {
        self.factor_count() >= 2
    }

    /// Factor list with repetition, ascending generator index.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            for _ in 0..e {
                out.push(g);
            }
        }
        out
    }

    /// Deterministic order within a bidegree: exponent vectors compared
    /// lexicographically in generator declaration order, larger first
    /// (so x*x precedes x*y precedes y*y).
    pub fn order_key(&self, ngens: usize) -> Vec<i64> {
        let mut key = vec![0i64; ngens];
        for &(g, e) in &self.0 {
            key[g] = -(e as i64);
        }
        key
    }

    /// Koszul-signed product. Returns `None` when the product vanishes
    /// (a repeated odd generator).
    pub fn mul(&self, other: &Monomial, gens: &[Generator]) -> Option<(Monomial, i32)> {
        // Odd factors of `other` jumped over odd factors of `self` during
        // canonical reordering; count those transpositions.
        let odd1: Vec<usize> = self
            .0
            .iter()
            .filter(|&&(g, _)| gens[g].bidegree.is_odd())
            .map(|&(g, _)| g)
            .collect();
        let odd2: Vec<usize> = other
            .0
            .iter()
            .filter(|&&(g, _)| gens[g].bidegree.is_odd())
            .map(|&(g, _)| g)
            .collect();
        for g in &odd2 {
            if odd1.contains(g) {
                return None;
            }
        }
        let mut inversions = 0usize;
        for a in &odd1 {
            for b in &odd2 {
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut exps: std::collections::BTreeMap<usize, u32> = self.0.iter().copied().collect();
        for &(g, e) in &other.0 {
            *exps.entry(g).or_insert(0) += e;
        }
        let m = Monomial(exps.into_iter().collect());
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((m, sign))
    }

    pub fn display(&self, gens: &[Generator]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &(g, e) in &self.0 {
            for _ in 0..e {
                parts.push(gens[g].name.clone());
            }
        }
        parts.join("*")
    }
}
