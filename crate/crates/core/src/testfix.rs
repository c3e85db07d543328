//! Shared in-crate test fixtures. The shipping corpus (`corpus` module)
//! defines the same objects through the presentation format; unit tests use
//! these programmatic constructions so the two paths cross-check each other.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Bidegree, Element, FiniteBicomplex, FreeCbba, Generator, Monomial};
use crate::scalar::Scalar;

pub fn gen(name: &str, p: i64, q: i64) -> Generator {
    Generator {
        name: name.to_string(),
        bidegree: Bidegree::new(p, q),
    }
}

/// Lambda(x) on one closed (1,1) generator.
pub fn polynomial_algebra(trunc: i64) -> Algebra {
    Algebra::Free(
        FreeCbba::new(
            "poly".into(),
            vec![gen("x", 1, 1)],
            vec![vec![]],
            vec![vec![]],
            trunc,
            None,
        )
        .unwrap(),
    )
}

/// The cp1 minimal model: x,r of bidegree (1,1), del r = rp, delbar r = rq,
/// del rq = x*x, delbar rp = -x*x; truncation 4, Serre-duality target 1.
pub fn cp1_model() -> Algebra {
    cp1_model_truncated(4)
}

pub fn cp1_model_truncated(trunc: i64) -> Algebra {
    let xx = Monomial(vec![(0, 2)]);
    Algebra::Free(
        FreeCbba::new(
            "cp1-model".into(),
            vec![
                gen("x", 1, 1),
                gen("r", 1, 1),
                gen("rp", 2, 1),
                gen("rq", 1, 2),
            ],
            vec![
                vec![],
                vec![(Monomial::generator(2), Scalar::one())],
                vec![],
                vec![(xx.clone(), Scalar::one())],
            ],
            vec![
                vec![],
                vec![(Monomial::generator(3), Scalar::one())],
                vec![(xx, -Scalar::one())],
                vec![],
            ],
            trunc,
            Some(1),
        )
        .unwrap(),
    )
}

/// One closed element.
pub fn dot(p: i64, q: i64) -> Algebra {
    Algebra::Finite(
        FiniteBicomplex::new(
            "dot".into(),
            vec![("e".into(), Bidegree::new(p, q))],
            vec![Element::zero()],
            vec![Element::zero()],
            None,
            None,
        )
        .unwrap(),
    )
}

/// a, del a, delbar a, del delbar a with the anticommutation sign.
pub fn square(p: i64, q: i64) -> Algebra {
    Algebra::Finite(
        FiniteBicomplex::new(
            "square".into(),
            vec![
                ("a".into(), Bidegree::new(p, q)),
                ("da".into(), Bidegree::new(p + 1, q)),
                ("ba".into(), Bidegree::new(p, q + 1)),
                ("w".into(), Bidegree::new(p + 1, q + 1)),
            ],
            vec![
                Element::atom(1),
                Element::zero(),
                Element::from_terms(vec![(3, -Scalar::one())]),
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
        .unwrap(),
    )
}

/// a at (p,q) with delbar a = b at (p,q+1): a length-2 zigzag.
pub fn zigzag2(p: i64, q: i64) -> Algebra {
    Algebra::Finite(
        FiniteBicomplex::new(
            "zigzag2".into(),
            vec![
                ("a".into(), Bidegree::new(p, q)),
                ("b".into(), Bidegree::new(p, q + 1)),
            ],
            vec![Element::zero(), Element::zero()],
            vec![Element::atom(1), Element::zero()],
            None,
            None,
        )
        .unwrap(),
    )
}

/// C[x]/(x^{n+1}) with zero differentials, x in bidegree (1,1), n-SD target.
pub fn projective_ring(n: usize) -> Algebra {
    let mut basis = Vec::new();
    for k in 0..=n {
        let label = if k == 0 {
            "one".to_string()
        } else if k == 1 {
            "x".to_string()
        } else {
            format!("x{k}")
        };
        basis.push((label, Bidegree::new(k as i64, k as i64)));
    }
    let mut mult = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n {
            if i + j <= n {
                mult.insert((i, j), Element::atom(i + j));
            }
        }
    }
    Algebra::Finite(
        FiniteBicomplex::new(
            format!("cp{n}-ring"),
            basis,
            vec![Element::zero(); n + 1],
            vec![Element::zero(); n + 1],
            Some(mult),
            Some(n as i64),
        )
        .unwrap(),
    )
}

/// Iwasawa-style negative control: odd generators a,b,c at (1,0) and
/// conjugates at (0,1), with del c = -a*b and delbar cb = -ab*bb.
pub fn iwasawa_style() -> Algebra {
    let gens = vec![
        gen("a", 1, 0),
        gen("b", 1, 0),
        gen("c", 1, 0),
        gen("ab", 0, 1),
        gen("bb", 0, 1),
        gen("cb", 0, 1),
    ];
    let m_ab = Monomial(vec![(0, 1), (1, 1)]);
    let m_abbb = Monomial(vec![(3, 1), (4, 1)]);
    let mut del = vec![vec![]; 6];
    let mut delbar = vec![vec![]; 6];
    del[2] = vec![(m_ab, -Scalar::one())];
    delbar[5] = vec![(m_abbb, -Scalar::one())];
    Algebra::Free(FreeCbba::new("iwasawa-style".into(), gens, del, delbar, 5, None).unwrap())
}
