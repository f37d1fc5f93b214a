//! Irreducible components `C_alpha` of nilpotent varieties: the fiber of
//! the forgetful map over `M_alpha`, generic points and generic invariants.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::leibniz_system;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{AlgebraKind, AlgebraPresentation};
use crate::rep::{dim_hom, is_indecomposable, orbit_dim, Representation};
use crate::roots::{ComponentLabel, RootSystem};

/// Default number of generic samples.
pub const DEFAULT_SAMPLES: usize = 5;

/// Fiber coordinates over the rationals are drawn from `[-20, 20]`.
const FIBER_BOUND: i64 = 20;

/// Independent stream `index` of the master `seed`.
pub fn rng_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Linear space of reversed-arrow tuples completing a path-algebra module
/// to a module over the preprojective algebra.
#[derive(Clone, Debug)]
pub struct FiberSpace {
    pub base: Representation,
    pub algebra: Arc<AlgebraPresentation>,
    /// Each element has one matrix per reversed arrow.
    pub basis: Vec<Vec<Matrix>>,
}

impl FiberSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The module with forward part `base` and reversed part `coords . basis`.
    pub fn point(&self, coeffs: &[Scalar]) -> Representation {
        let field = self.base.field();
        let m = self.base.mats().len();
        let arrows = self.algebra.arrows();
        let mut back: Vec<Matrix> = arrows[m..]
            .iter()
            .map(|a| Matrix::zeros(field, self.base.dim(a.source), self.base.dim(a.target)))
            .collect();
        for (c, x) in coeffs.iter().zip(&self.basis) {
            for (o, xb) in back.iter_mut().zip(x) {
                *o = o.add_scaled(c, xb);
            }
        }
        let mut mats = self.base.mats().to_vec();
        mats.extend(back);
        Representation::new(self.algebra.clone(), field, self.base.dims().clone(), mats)
            .expect("fiber point shapes")
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Representation {
        let field = self.base.field();
        let coeffs: Vec<Scalar> = (0..self.dim())
            .map(|_| match field {
                Field::Rationals => field.from_i64(rng.gen_range(-FIBER_BOUND..=FIBER_BOUND)),
                Field::Prime(p) => field.from_bigint(&rng.gen_range(0..p).into()),
            })
            .collect();
        self.point(&coeffs)
    }
}

/// Solves the preprojective relations for the reversed arrows with the
/// forward matrices of `mf` frozen. Each relation term contains exactly one
/// reversed arrow, so the system is linear.
pub fn fiber_basis(mf: &Representation, preprojective: &Arc<AlgebraPresentation>) -> Result<FiberSpace> {
    if preprojective.kind != AlgebraKind::Preprojective || mf.algebra().kind != AlgebraKind::Path {
        return Err(Error::AlgebraMismatch("fiber needs a path-algebra module and a preprojective algebra".into()));
    }
    if mf.algebra().quiver != preprojective.base {
        return Err(Error::AlgebraMismatch("module is not over the base quiver".into()));
    }
    let field = mf.field();
    let m = mf.mats().len();
    let mut known = mf.mats().to_vec();
    for a in &preprojective.arrows()[m..] {
        known.push(Matrix::zeros(field, mf.dim(a.source), mf.dim(a.target)));
    }
    let (sys, offsets) = leibniz_system(preprojective, field, mf.dims(), mf.dims(), &known, &known, &|b| b >= m);
    let arrows = preprojective.arrows();
    let basis = sys
        .solution_basis()
        .iter()
        .map(|v| {
            (m..arrows.len())
                .map(|b| {
                    let a = &arrows[b];
                    let o = offsets[b].unwrap();
                    let (r, c) = (mf.dim(a.source), mf.dim(a.target));
                    Matrix::from_rows(field, c, (0..r).map(|i| v[o + i * c..o + (i + 1) * c].to_vec()).collect())
                })
                .collect()
        })
        .collect();
    Ok(FiberSpace {
        base: mf.clone(),
        algebra: preprojective.clone(),
        basis,
    })
}

/// A point of `C_alpha`: `M_alpha` with a random point of its fiber.
#[derive(Clone, Debug)]
pub struct GenericSample {
    pub module: Representation,
    pub label: ComponentLabel,
    pub seed: u64,
    pub stream: u64,
    pub field: Field,
}

/// Generic point of `C_alpha` drawn from stream `stream` of `seed`.
pub fn sample_component_point(
    rs: &RootSystem,
    alpha: &ComponentLabel,
    field: Field,
    seed: u64,
    stream: u64,
) -> Result<GenericSample> {
    let mf = rs.build_m_alpha(alpha, field)?;
    let fiber = fiber_basis(&mf, rs.preprojective_algebra())?;
    let mut rng = rng_stream(seed, stream);
    Ok(GenericSample {
        module: fiber.random_point(&mut rng),
        label: alpha.clone(),
        seed,
        stream,
        field,
    })
}

/// `samples` independent points of `C_alpha` on streams `first..`.
pub fn sample_many(
    rs: &RootSystem,
    alpha: &ComponentLabel,
    field: Field,
    seed: u64,
    first: u64,
    samples: usize,
) -> Result<Vec<GenericSample>> {
    (0..samples as u64)
        .map(|k| sample_component_point(rs, alpha, field, seed, first + k))
        .collect()
}

/// Every component of the nilpotent variety of dimension vector `d` has
/// the dimension of the representation space of the base quiver.
pub fn component_dim(rs: &RootSystem, alpha: &ComponentLabel) -> u64 {
    rs.quiver().rep_space_dim(&alpha.dim_vector(rs))
}

/// `dim C_alpha` minus the largest sampled orbit dimension.
pub fn mu_g(rs: &RootSystem, alpha: &ComponentLabel, field: Field, samples: usize, seed: u64) -> Result<u64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample".into()));
    }
    let mut best = 0;
    for s in sample_many(rs, alpha, field, seed, 0, samples)? {
        best = best.max(orbit_dim(&s.module)? as u64);
    }
    Ok(component_dim(rs, alpha) - best)
}

/// Sample with the smallest endomorphism ring among `samples` draws.
pub fn most_generic_sample(
    rs: &RootSystem,
    alpha: &ComponentLabel,
    field: Field,
    samples: usize,
    seed: u64,
) -> Result<GenericSample> {
    let mut best: Option<(usize, GenericSample)> = None;
    for s in sample_many(rs, alpha, field, seed, 0, samples.max(1))? {
        let e = dim_hom(&s.module, &s.module)?;
        if best.as_ref().map_or(true, |(b, _)| e < *b) {
            best = Some((e, s));
        }
    }
    Ok(best.unwrap().1)
}

/// Whether the generic point of `C_alpha` is indecomposable.
pub fn component_is_indecomposable(
    rs: &RootSystem,
    alpha: &ComponentLabel,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ZeroModule);
    }
    let s = most_generic_sample(rs, alpha, Field::Rationals, samples, seed)?;
    is_indecomposable(&s.module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DynkinType;
    use crate::rep::dim_hom;

    const Q: Field = Field::Rationals;

    fn a2() -> RootSystem {
        RootSystem::of_type(DynkinType::A(2)).unwrap()
    }

    #[test]
    fn rigid_root_has_trivial_fiber() {
        let rs = RootSystem::of_type(DynkinType::A(5)).unwrap();
        let m = rs.root_module(1, Q).unwrap();
        assert_eq!(fiber_basis(&m, rs.preprojective_algebra()).unwrap().dim(), 0);
    }

    #[test]
    fn fiber_over_semisimple_a2() {
        let rs = a2();
        let alpha = rs.interval_label(&[(1, 1), (2, 2)]).unwrap();
        let mf = rs.build_m_alpha(&alpha, Q).unwrap();
        let fiber = fiber_basis(&mf, rs.preprojective_algebra()).unwrap();
        assert_eq!(fiber.dim(), 1);
        assert!(fiber.point(&[Q.from_i64(4)]).check_relations());
    }

    #[test]
    fn fiber_dimension_law_on_d4() {
        let rs = RootSystem::of_type(DynkinType::D(4)).unwrap();
        for idx in [vec![0, 1], vec![2, 2, 5], vec![11, 3], vec![4, 7, 9]] {
            let alpha = rs.label_of(&idx);
            let mf = rs.build_m_alpha(&alpha, Q).unwrap();
            let d = mf.dims().clone();
            let end = dim_hom(&mf, &mf).unwrap() as i64;
            let euler = rs.quiver().euler_form(&d, &d).unwrap();
            let fiber = fiber_basis(&mf, rs.preprojective_algebra()).unwrap();
            assert_eq!(fiber.dim() as i64, end - euler, "{alpha}");
        }
    }

    #[test]
    fn samples_satisfy_relations_and_keep_their_label() {
        let rs = RootSystem::of_type(DynkinType::A(3)).unwrap();
        let alpha = rs.label_of(&[0, 3, 5]);
        let mut rng = rng_stream(1, 0);
        for s in sample_many(&rs, &alpha, Q, 9, 0, 3).unwrap() {
            assert!(s.module.check_relations());
            assert_eq!(rs.gabriel_label(&s.module, &mut rng).unwrap(), alpha);
        }
    }

    #[test]
    fn a2_semisimple_label_is_an_indecomposable_component() {
        let rs = a2();
        let alpha = rs.interval_label(&[(1, 1), (2, 2)]).unwrap();
        assert!(component_is_indecomposable(&rs, &alpha, DEFAULT_SAMPLES, 3).unwrap());
        assert_eq!(component_dim(&rs, &alpha), 1);
        assert_eq!(mu_g(&rs, &alpha, Q, DEFAULT_SAMPLES, 3).unwrap(), 0);
    }

    #[test]
    fn single_roots_have_dense_orbits() {
        let rs = RootSystem::of_type(DynkinType::A(3)).unwrap();
        for i in 0..rs.len() {
            assert_eq!(mu_g(&rs, &rs.unit_label(i), Q, 2, 0).unwrap(), 0);
        }
    }

    #[test]
    fn prime_field_sampling() {
        let rs = a2();
        let p = Field::prime(2_147_483_647).unwrap();
        let alpha = rs.interval_label(&[(1, 1), (2, 2)]).unwrap();
        let s = sample_component_point(&rs, &alpha, p, 5, 0).unwrap();
        assert!(s.module.check_relations());
        assert_eq!(s.module.field(), p);
    }
}
