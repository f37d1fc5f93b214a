//! Krull-Remak-Schmidt decomposition by Fitting splitting, and randomized
//! isomorphism tests.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{charpoly, Field, Matrix, Polynomial, Scalar};

use super::hom::{hom_basis, local_quotient_dim, HomBasis};
use super::Representation;

/// Random endomorphisms tried before a module that is not certified
/// indecomposable is reported as stalled.
pub const FITTING_RETRIES: usize = 20;

/// Random homomorphisms tried when looking for an isomorphism witness.
pub const ISO_TRIALS: usize = 8;

/// Coefficients of random Hom-space elements are drawn from `[-9, 9]`.
const COEFF_BOUND: i64 = 9;

pub(crate) fn random_coeffs<R: Rng + ?Sized>(rng: &mut R, k: usize, sparse: bool) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..k)
            .map(|_| {
                if sparse && rng.gen_range(0..3) != 0 {
                    0
                } else {
                    rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)
                }
            })
            .collect();
        if k == 0 || c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

pub(crate) fn random_element<R: Rng + ?Sized>(hom: &HomBasis, rng: &mut R, sparse: bool) -> Vec<Matrix> {
    let field = hom.source.field();
    let coeffs: Vec<Scalar> = random_coeffs(rng, hom.dim(), sparse)
        .into_iter()
        .map(|c| field.from_i64(c))
        .collect();
    hom.combine(&coeffs)
}

/// Indecomposable summands whose direct sum is isomorphic to `m`.
///
/// A random endomorphism `phi` is drawn; if its characteristic polynomial
/// has pairwise coprime factors `f_1, ..., f_r` with `r >= 2`, the module
/// splits as the direct sum of the generalized kernels `ker f_j(phi)^d`
/// and each piece is decomposed in turn. Pieces with a local endomorphism
/// ring are final. Over a prime field the local test is unavailable and a
/// piece that resists [`FITTING_RETRIES`] draws is accepted as is.
pub fn krs_decompose<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<Vec<Representation>> {
    let mut done = Vec::new();
    let mut todo = vec![m.clone()];
    while let Some(x) = todo.pop() {
        if x.is_zero() {
            continue;
        }
        match fitting_split(&x, rng)? {
            Some(parts) => todo.extend(parts.into_iter().rev()),
            None => done.push(x),
        }
    }
    Ok(done)
}

/// `None` when `m` is (certified or, over a prime field, presumed)
/// indecomposable.
fn fitting_split<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<Option<Vec<Representation>>> {
    let end = hom_basis(m, m)?;
    if end.dim() == 1 {
        return Ok(None);
    }
    let certified = m.field() == Field::Rationals;
    if certified && local_quotient_dim(&end) == 1 {
        return Ok(None);
    }
    for attempt in 0..FITTING_RETRIES {
        let phi = random_element(&end, rng, attempt % 2 == 1);
        if let Some(parts) = split_along(m, &phi) {
            return Ok(Some(parts));
        }
    }
    if certified {
        Err(Error::SplittingStalled {
            tries: FITTING_RETRIES,
            dim: m.total_dim(),
        })
    } else {
        Ok(None)
    }
}

fn split_along(m: &Representation, phi: &[Matrix]) -> Option<Vec<Representation>> {
    let field = m.field();
    let total = phi
        .iter()
        .filter(|p| p.rows() > 0)
        .fold(Polynomial::one(field), |acc, p| acc.mul(&charpoly(p)));
    let factors = total.coprime_split();
    if factors.len() < 2 {
        return None;
    }
    let parts = factors
        .iter()
        .map(|f| {
            let bases: Vec<(Matrix, Vec<usize>)> = phi
                .iter()
                .map(|p| {
                    let d = p.rows();
                    let a = f.eval_matrix(p).pow(d);
                    let kernel = a.left_kernel_basis();
                    let ech = Matrix::from_rows(field, d, kernel).echelon();
                    (ech.reduced, ech.pivots)
                })
                .collect();
            m.restrict(&bases)
        })
        .collect();
    Some(parts)
}

/// Outcome of a randomized isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// A Hom-dimension invariant differs.
    NonIsomorphic,
    /// Vertex-wise invertible homomorphism `source -> target`.
    Isomorphic(Vec<Matrix>),
    /// Invariants agree but no invertible element was drawn.
    NoWitness { trials: usize },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

pub fn is_isomorphic<R: Rng + ?Sized>(
    m: &Representation,
    n: &Representation,
    rng: &mut R,
    trials: usize,
) -> Result<IsoVerdict> {
    m.require_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NonIsomorphic);
    }
    let field = m.field();
    if m == n {
        let id = (0..m.dims().len())
            .map(|i| Matrix::identity(field, m.dim(i)))
            .collect();
        return Ok(IsoVerdict::Isomorphic(id));
    }
    let mn = hom_basis(m, n)?;
    let nm = hom_basis(n, m)?;
    let mm = hom_basis(m, m)?;
    if mn.dim() != nm.dim() || mn.dim() != mm.dim() {
        return Ok(IsoVerdict::NonIsomorphic);
    }
    for _ in 0..trials {
        let f = random_element(&mn, rng, false);
        if f.iter().all(Matrix::is_invertible) {
            return Ok(IsoVerdict::Isomorphic(f));
        }
    }
    Ok(IsoVerdict::NoWitness { trials })
}
