//! Hom spaces, endomorphism radicals and Krull-Schmidt decomposition over
//! the preprojective algebra of A2.

use std::sync::Arc;

use preproj::components::rng_stream;
use preproj::linalg::{Field, Matrix};
use preproj::quiver::{AlgebraPresentation, DimVector, DynkinType, Quiver};
use preproj::rep::{
    dim_hom, endo_radical_dim, is_indecomposable, is_isomorphic, krs_decompose, Representation, ISO_TRIALS,
};

fn main() -> preproj::Result<()> {
    let q = Field::Rationals;
    let alg = Arc::new(AlgebraPresentation::preprojective(Quiver::dynkin(DynkinType::A(2))?)?);
    let one = Matrix::identity(q, 1);
    let zero = Matrix::zeros(q, 1, 1);
    let dims = DimVector(vec![1, 1]);
    // a acts in B, abar acts in B'
    let b = Representation::checked(alg.clone(), q, dims.clone(), vec![one.clone(), zero.clone()])?;
    let bp = Representation::checked(alg.clone(), q, dims, vec![zero, one])?;
    let s1 = Representation::simple(alg.clone(), q, 0);

    println!("dim Hom(B, B') = {}, dim Hom(B', B) = {}", dim_hom(&b, &bp)?, dim_hom(&bp, &b)?);
    let m = Representation::direct_sum_all(alg, q, [&b, &s1, &b, &bp])?;
    println!("End(B+S1+B+B') has dim {} and radical dim {}", dim_hom(&m, &m)?, endo_radical_dim(&m)?);

    // hide the block structure with a change of basis
    let g = vec![
        Matrix::from_i64(q, &[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 2], &[0, 0, 1, 1]]),
        Matrix::from_i64(q, &[&[2, 1, 1], &[1, 1, 0], &[0, 1, 1]]),
    ];
    let twisted = m.transform(&g)?;
    let mut rng = rng_stream(5, 0);
    for p in krs_decompose(&twisted, &mut rng)? {
        let name = if is_isomorphic(&p, &b, &mut rng, ISO_TRIALS)?.is_isomorphic() {
            "B"
        } else if is_isomorphic(&p, &bp, &mut rng, ISO_TRIALS)?.is_isomorphic() {
            "B'"
        } else {
            "S1"
        };
        println!("summand {name}: dims {}, indecomposable {}", p.dims(), is_indecomposable(&p)?);
    }
    Ok(())
}
