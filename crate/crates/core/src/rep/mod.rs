//! Modules as matrix tuples.
//!
//! Conventions: vectors are rows and arrows act on the right, so the matrix
//! of an arrow `b : s -> e` has shape `d_s x d_e` and a path `b1 b2 ... bl`
//! acts by the product `M_b1 M_b2 ... M_bl`. A homomorphism `f : M -> N` is
//! a tuple of `d^M_i x d^N_i` matrices with `M_b f_e = f_s N_b`.

mod hom;
mod krs;

use std::sync::Arc;

pub use hom::{dim_hom, endo_radical_dim, hom_basis, is_indecomposable, orbit_dim, HomBasis};
pub use krs::{is_isomorphic, krs_decompose, IsoVerdict, FITTING_RETRIES, ISO_TRIALS};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{AlgebraKind, AlgebraPresentation, DimVector};

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<AlgebraPresentation>,
    field: Field,
    dims: DimVector,
    mats: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other)
            && self.field == other.field
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl Representation {
    /// Checks matrix shapes against the dimension vector. Relations are not
    /// checked here; see [`Representation::check_relations`].
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        field: Field,
        dims: DimVector,
        mats: Vec<Matrix>,
    ) -> Result<Representation> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector {dims} for {} vertices",
                algebra.vertex_count()
            )));
        }
        if mats.len() != algebra.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                algebra.arrows().len()
            )));
        }
        for (m, a) in mats.iter().zip(algebra.arrows()) {
            let want = (dims[a.source] as usize, dims[a.target] as usize);
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} has shape {:?}, expected {:?}",
                    a.id,
                    m.shape(),
                    want
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("arrow {} over {}", a.id, m.field())));
            }
        }
        Ok(Representation {
            algebra,
            field,
            dims,
            mats,
        })
    }

    /// Like [`Representation::new`] but also requires every relation to hold.
    pub fn checked(
        algebra: Arc<AlgebraPresentation>,
        field: Field,
        dims: DimVector,
        mats: Vec<Matrix>,
    ) -> Result<Representation> {
        let m = Representation::new(algebra, field, dims, mats)?;
        if !m.check_relations() {
            return Err(Error::Input("matrices violate the algebra's relations".into()));
        }
        Ok(m)
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>, field: Field) -> Representation {
        let n = algebra.vertex_count();
        Representation::with_zero_maps(algebra, field, DimVector::zero(n))
    }

    pub fn with_zero_maps(algebra: Arc<AlgebraPresentation>, field: Field, dims: DimVector) -> Representation {
        let mats = algebra
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.source] as usize, dims[a.target] as usize))
            .collect();
        Representation {
            algebra,
            field,
            dims,
            mats,
        }
    }

    /// The simple module at vertex `i` (0-based).
    pub fn simple(algebra: Arc<AlgebraPresentation>, field: Field, i: usize) -> Representation {
        let n = algebra.vertex_count();
        Representation::with_zero_maps(algebra, field, DimVector::unit(n, i))
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex] as usize
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub(crate) fn require_compatible(&self, other: &Representation) -> Result<()> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch("modules over different algebras".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "modules over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    /// True iff every relation evaluates to the zero matrix.
    pub fn check_relations(&self) -> bool {
        self.algebra
            .relations
            .iter()
            .all(|r| self.algebra.eval_relation(r, &self.mats, &self.dims, self.field).is_zero())
    }

    /// Block-diagonal direct sum; `self` occupies the leading coordinates.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.require_compatible(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            field: self.field,
            dims: &self.dims + &other.dims,
            mats,
        })
    }

    pub fn direct_sum_all<'a>(
        algebra: Arc<AlgebraPresentation>,
        field: Field,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Result<Representation> {
        parts
            .into_iter()
            .try_fold(Representation::zero(algebra, field), |acc, p| acc.direct_sum(p))
    }

    /// Restriction of a preprojective module to the arrows of the base
    /// quiver (the projection to path-algebra modules). Path-algebra modules
    /// are returned unchanged.
    pub fn forward_part(&self) -> Representation {
        match self.algebra.kind {
            AlgebraKind::Path => self.clone(),
            AlgebraKind::Preprojective => {
                let alg = Arc::new(AlgebraPresentation::path_algebra(self.algebra.base.clone()));
                let m = self.algebra.forward_arrow_count();
                Representation {
                    algebra: alg,
                    field: self.field,
                    dims: self.dims.clone(),
                    mats: self.mats[..m].to_vec(),
                }
            }
        }
    }

    /// Restriction to a submodule spanned vertex-wise by the rows of
    /// `bases` (each in reduced row echelon form with the given pivots).
    pub(crate) fn restrict(&self, bases: &[(Matrix, Vec<usize>)]) -> Representation {
        let dims = DimVector(bases.iter().map(|(b, _)| b.rows() as u64).collect());
        let mats = self
            .algebra
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                let (bs, _) = &bases[a.source];
                let (be, pivots) = &bases[a.target];
                let image = bs.mul(m);
                let rows: Vec<usize> = (0..image.rows()).collect();
                let r = image.submatrix(&rows, pivots);
                debug_assert_eq!(r.mul(be), image, "subspace is not a submodule");
                r
            })
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            field: self.field,
            dims,
            mats,
        }
    }

    /// Change of basis `g . M = (g_s M_b g_e^{-1})` by invertible `g_i`.
    pub fn transform(&self, g: &[Matrix]) -> Result<Representation> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|x| x.inverse().ok_or_else(|| Error::Input("singular base change".into())))
            .collect::<Result<_>>()?;
        let mats = self
            .algebra
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| g[a.source].mul(m).mul(&inv[a.target]))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            field: self.field,
            dims: self.dims.clone(),
            mats,
        })
    }

    /// Reduces a rational module into another field.
    pub fn to_field(&self, field: Field) -> Result<Representation> {
        if field == self.field {
            return Ok(self.clone());
        }
        if self.field != Field::Rationals {
            return Err(Error::FieldMismatch(format!("cannot convert from {}", self.field)));
        }
        let mats = self
            .mats
            .iter()
            .map(|m| {
                Matrix::from_rows(
                    field,
                    m.cols(),
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| field.from_rational(x.as_rational().unwrap())).collect())
                        .collect(),
                )
            })
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            field,
            dims: self.dims.clone(),
            mats,
        })
    }

    /// Same matrices viewed over an equal presentation held elsewhere.
    pub(crate) fn rebind(&self, algebra: Arc<AlgebraPresentation>) -> Representation {
        debug_assert!(self.algebra.quiver == algebra.quiver);
        Representation {
            algebra,
            field: self.field,
            dims: self.dims.clone(),
            mats: self.mats.clone(),
        }
    }

    /// Replaces the matrix of one arrow; shape must match.
    pub fn with_arrow(&self, arrow: usize, m: Matrix) -> Result<Representation> {
        let mut mats = self.mats.clone();
        mats[arrow] = m;
        Representation::new(self.algebra.clone(), self.field, self.dims.clone(), mats)
    }

    /// Action of an arrow on a basis element, as a coordinate row.
    pub fn act(&self, arrow: usize, basis_index: usize) -> Vec<Scalar> {
        self.mats[arrow].row(basis_index).to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DynkinType, Quiver};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    fn lambda_a2() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::preprojective(Quiver::dynkin(DynkinType::A(2)).unwrap()).unwrap())
    }

    fn one() -> Matrix {
        Matrix::identity(Q, 1)
    }

    fn zero() -> Matrix {
        Matrix::zeros(Q, 1, 1)
    }

    /// S1, S2, B (a1 acts), B' (abar1 acts).
    fn a2_indecomposables() -> Vec<Representation> {
        let alg = lambda_a2();
        vec![
            Representation::simple(alg.clone(), Q, 0),
            Representation::simple(alg.clone(), Q, 1),
            Representation::checked(alg.clone(), Q, DimVector(vec![1, 1]), vec![one(), zero()]).unwrap(),
            Representation::checked(alg, Q, DimVector(vec![1, 1]), vec![zero(), one()]).unwrap(),
        ]
    }

    #[test]
    fn hom_dimensions_on_lambda_a2() {
        let [s1, _s2, b, bp] = <[Representation; 4]>::try_from(a2_indecomposables()).unwrap();
        assert_eq!(dim_hom(&s1, &s1).unwrap(), 1);
        assert_eq!(dim_hom(&b, &bp).unwrap(), 1);
        assert_eq!(dim_hom(&bp, &b).unwrap(), 1);
        let m2 = b.direct_sum(&bp).unwrap();
        assert_eq!(dim_hom(&m2, &m2).unwrap(), 4);
        assert_eq!(endo_radical_dim(&m2).unwrap(), 2);
    }

    #[test]
    fn hom_basis_elements_intertwine() {
        let mods = a2_indecomposables();
        for m in &mods {
            for n in &mods {
                let h = hom_basis(m, n).unwrap();
                assert!(h.basis.iter().all(|f| h.is_homomorphism(f)));
            }
        }
    }

    #[test]
    fn a2_modules_are_indecomposable_and_sums_are_not() {
        let mods = a2_indecomposables();
        for m in &mods {
            assert!(is_indecomposable(m).unwrap());
        }
        let s = mods[0].direct_sum(&mods[1]).unwrap();
        assert!(!is_indecomposable(&s).unwrap());
        let z = Representation::zero(lambda_a2(), Q);
        assert!(matches!(is_indecomposable(&z), Err(Error::ZeroModule)));
    }

    #[test]
    fn orbit_dimension_is_group_minus_stabilizer() {
        let mods = a2_indecomposables();
        // GL_1 x GL_1 acting on B, stabilizer is the scalars
        assert_eq!(orbit_dim(&mods[2]).unwrap(), 1);
        assert_eq!(orbit_dim(&mods[0]).unwrap(), 0);
    }

    #[test]
    fn krs_recovers_summands() {
        let mods = a2_indecomposables();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sum = Representation::direct_sum_all(lambda_a2(), Q, [&mods[2], &mods[0], &mods[2], &mods[3]]).unwrap();
        let g = vec![
            Matrix::from_i64(Q, &[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 2], &[0, 0, 1, 1]]),
            Matrix::from_i64(Q, &[&[2, 1, 1], &[1, 1, 0], &[0, 1, 1]]),
        ];
        let twisted = sum.transform(&g).unwrap();
        let parts = krs_decompose(&twisted, &mut rng).unwrap();
        assert_eq!(parts.len(), 4);
        let mut count = [0usize; 4];
        for p in &parts {
            assert!(is_indecomposable(p).unwrap());
            let k = mods
                .iter()
                .position(|m| is_isomorphic(p, m, &mut rng, ISO_TRIALS).unwrap().is_isomorphic())
                .expect("summand matches a known indecomposable");
            count[k] += 1;
        }
        assert_eq!(count, [1, 0, 2, 1]);
    }

    #[test]
    fn isomorphism_witness_and_invariants() {
        let mods = a2_indecomposables();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = vec![Matrix::from_i64(Q, &[&[5]]), Matrix::from_i64(Q, &[&[-2]])];
        let b2 = mods[2].transform(&g).unwrap();
        match is_isomorphic(&mods[2], &b2, &mut rng, ISO_TRIALS).unwrap() {
            IsoVerdict::Isomorphic(f) => assert!(hom::is_homomorphism(&mods[2], &b2, &f)),
            v => panic!("expected a witness, got {v:?}"),
        }
        assert!(!is_isomorphic(&mods[2], &mods[3], &mut rng, ISO_TRIALS)
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn relations_are_enforced() {
        let alg = lambda_a2();
        let both = Representation::checked(alg, Q, DimVector(vec![1, 1]), vec![one(), one()]);
        assert!(both.is_err());
    }

    #[test]
    fn prime_field_is_not_certified() {
        let p = Field::prime(2_147_483_647).unwrap();
        let s = Representation::simple(lambda_a2(), p, 0);
        assert!(matches!(is_indecomposable(&s), Err(Error::NotCertified)));
        assert_eq!(dim_hom(&s, &s).unwrap(), 1);
    }
}
