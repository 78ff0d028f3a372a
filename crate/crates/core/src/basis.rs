//! Monomial bases of `P_{p,q}` and exact matrices of linear maps between them.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{BiPoly, ExactComplex, Monomial, MultiIndex};

/// Ordered monomial basis of `P_{p,q}` on `C^n`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    p: u32,
    q: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.p, self.q) == (other.n, other.p, other.q) && self.len() == other.len()
    }
}

impl MonomialBasis {
    pub fn new(n: usize, p: u32, q: u32) -> Self {
        let alphas = MultiIndex::all_of_degree(n, p);
        let betas = MultiIndex::all_of_degree(n, q);
        let monomials: Vec<Monomial> = alphas
            .iter()
            .flat_map(|a| betas.iter().map(move |b| Monomial::new(a.clone(), b.clone())))
            .collect();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { n, p, q, monomials, index }
    }

    /// Basis of `P_{p,q}` with signed degrees; empty when either is negative.
    pub fn new_signed(n: usize, p: i64, q: i64) -> Self {
        if p < 0 || q < 0 {
            return Self {
                n,
                p: p.max(0) as u32,
                q: q.max(0) as u32,
                monomials: Vec::new(),
                index: HashMap::new(),
            };
        }
        Self::new(n, p as u32, q as u32)
    }

    /// `dim P_{p,q} = C(p+n−1, n−1) · C(q+n−1, n−1)`.
    pub fn expected_dim(n: usize, p: u32, q: u32) -> usize {
        binom(p as usize + n - 1, n - 1) * binom(q as usize + n - 1, n - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn element(&self, i: usize) -> BiPoly {
        BiPoly::monomial(self.n, self.monomials[i].clone(), ExactComplex::one())
    }

    /// Coordinates of `p`; fails if `p` has a term outside this basis.
    pub fn coordinates(&self, p: &BiPoly) -> Result<Vec<ExactComplex>> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: p.n() });
        }
        let mut v = vec![ExactComplex::zero(); self.len()];
        for (m, c) in p.terms() {
            let i = self.position(m).ok_or(Error::BidegreeMismatch {
                left: (self.p, self.q),
                right: m.bidegree(),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn polynomial(&self, coords: &[ExactComplex]) -> BiPoly {
        assert_eq!(coords.len(), self.len());
        BiPoly::from_terms(
            self.n,
            self.monomials.iter().cloned().zip(coords.iter().cloned()),
        )
        .expect("basis monomials have length n")
    }
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Exact matrix of a linear map `P_{domain} → P_{codomain}`; column `j` is
/// the image of the `j`-th domain monomial.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub domain: MonomialBasis,
    pub codomain: MonomialBasis,
    pub matrix: Matrix,
}

impl OperatorMatrix {
    pub fn build(
        domain: MonomialBasis,
        codomain: MonomialBasis,
        mut op: impl FnMut(&BiPoly) -> Result<BiPoly>,
    ) -> Result<Self> {
        let columns = (0..domain.len())
            .map(|j| {
                let image = op(&domain.element(j))?;
                codomain.coordinates(&image)
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_columns(codomain.len(), &columns);
        Ok(Self { domain, codomain, matrix })
    }

    /// Applies the matrix to a polynomial of the domain space.
    pub fn apply(&self, p: &BiPoly) -> Result<BiPoly> {
        let x = self.domain.coordinates(p)?;
        Ok(self.codomain.polynomial(&self.matrix.mul_vec(&x)))
    }

    /// Kernel as polynomials of the domain space.
    pub fn kernel(&self) -> Vec<BiPoly> {
        self.matrix.kernel().iter().map(|v| self.domain.polynomial(v)).collect()
    }
}

#[derive(Serialize)]
struct BasisJson<'a> {
    n: usize,
    bidegree: [u32; 2],
    monomials: Vec<[&'a [u32]; 2]>,
}

impl Serialize for MonomialBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasisJson {
            n: self.n,
            bidegree: [self.p, self.q],
            monomials: self.monomials.iter().map(|m| [m.alpha.entries(), m.beta.entries()]).collect(),
        }
        .serialize(s)
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OperatorMatrix", 3)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("codomain", &self.codomain)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_and_order() {
        for n in 1..=3 {
            for p in 0..=3 {
                for q in 0..=3 {
                    let b = MonomialBasis::new(n, p, q);
                    assert_eq!(b.len(), MonomialBasis::expected_dim(n, p, q));
                    assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
        let b = MonomialBasis::new(2, 1, 1);
        let names: Vec<_> = b.monomials().iter().map(|m| (m.alpha.entries().to_vec(), m.beta.entries().to_vec())).collect();
        assert_eq!(
            names,
            vec![
                (vec![1, 0], vec![1, 0]),
                (vec![1, 0], vec![0, 1]),
                (vec![0, 1], vec![1, 0]),
                (vec![0, 1], vec![0, 1])
            ]
        );
    }

    #[test]
    fn negative_degrees_give_empty_basis() {
        assert!(MonomialBasis::new_signed(2, -1, 0).is_empty());
    }
}
