use crate::error::{Error, Result};
use crate::linalg::{Field, LinearSystem, Matrix, Scalar};
use crate::quiver::gl_dim;

use super::Representation;

/// A basis of `Hom(source, target)`; each element is one matrix per vertex.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Vec<Matrix>>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum coeffs[j] * basis[j]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Matrix> {
        let field = self.source.field();
        let mut out: Vec<Matrix> = (0..self.source.dims().len())
            .map(|i| Matrix::zeros(field, self.source.dim(i), self.target.dim(i)))
            .collect();
        for (c, f) in coeffs.iter().zip(&self.basis) {
            for (o, fi) in out.iter_mut().zip(f) {
                *o = o.add_scaled(c, fi);
            }
        }
        out
    }

    /// Re-checks the intertwiner equations for one tuple.
    pub fn is_homomorphism(&self, f: &[Matrix]) -> bool {
        is_homomorphism(&self.source, &self.target, f)
    }
}

pub(crate) fn is_homomorphism(m: &Representation, n: &Representation, f: &[Matrix]) -> bool {
    m.algebra()
        .arrows()
        .iter()
        .enumerate()
        .all(|(b, a)| m.mat(b).mul(&f[a.target]) == f[a.source].mul(n.mat(b)))
}

/// Offsets of the vertex blocks `f_i` (row-major, `rows[i] x cols[i]`) in a
/// flat unknown vector.
pub(crate) fn block_offsets(rows: &[usize], cols: &[usize]) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(rows.len());
    let mut total = 0;
    for (r, c) in rows.iter().zip(cols) {
        offs.push(total);
        total += r * c;
    }
    (offs, total)
}

pub(crate) fn unflatten(field: Field, v: &[Scalar], rows: &[usize], cols: &[usize], offs: &[usize]) -> Vec<Matrix> {
    rows.iter()
        .zip(cols)
        .zip(offs)
        .map(|((&r, &c), &o)| {
            Matrix::from_rows(
                field,
                c,
                (0..r).map(|i| v[o + i * c..o + (i + 1) * c].to_vec()).collect(),
            )
        })
        .collect()
}

/// Solves `M_b f_e - f_s N_b = 0` for all arrows `b`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomBasis> {
    m.require_compatible(n)?;
    let field = m.field();
    let nv = m.dims().len();
    let rows: Vec<usize> = (0..nv).map(|i| m.dim(i)).collect();
    let cols: Vec<usize> = (0..nv).map(|i| n.dim(i)).collect();
    let (offs, total) = block_offsets(&rows, &cols);
    let mut sys = LinearSystem::new(field, total);
    for (b, a) in m.algebra().arrows().iter().enumerate() {
        let (s, e) = (a.source, a.target);
        let mb = m.mat(b);
        let nb = n.mat(b);
        for r in 0..rows[s] {
            for c in 0..cols[e] {
                let mut eq = Vec::new();
                // (M_b f_e)[r, c] = sum_k M_b[r, k] f_e[k, c]
                for k in 0..rows[e] {
                    let x = mb.get(r, k);
                    if !x.is_zero() {
                        eq.push((offs[e] + k * cols[e] + c, x.clone()));
                    }
                }
                // (f_s N_b)[r, c] = sum_k f_s[r, k] N_b[k, c]
                for k in 0..cols[s] {
                    let y = nb.get(k, c);
                    if !y.is_zero() {
                        eq.push((offs[s] + r * cols[s] + k, -y));
                    }
                }
                sys.push(eq);
            }
        }
    }
    let basis = sys
        .solution_basis()
        .iter()
        .map(|v| unflatten(field, v, &rows, &cols, &offs))
        .collect();
    Ok(HomBasis {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

pub fn dim_hom(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_basis(m, n)?.dim())
}

/// `dim GL(d) - dim End(m)`.
pub fn orbit_dim(m: &Representation) -> Result<usize> {
    let end = dim_hom(m, m)?;
    Ok(gl_dim(m.dims()) as usize - end)
}

/// Rank of the trace form `(f, g) -> tr(f g)` on `End(m)`.
fn trace_form_rank(end: &HomBasis) -> usize {
    let field = end.source.field();
    let k = end.dim();
    let mut gram = Matrix::zeros(field, k, k);
    for i in 0..k {
        for j in i..k {
            let t = end.basis[i]
                .iter()
                .zip(&end.basis[j])
                .fold(field.zero(), |acc, (f, g)| &acc + &f.mul(g).trace());
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.rank()
}

/// Dimension of the Jacobson radical of `End(m)`: in characteristic zero
/// this is the kernel of the trace form.
pub fn endo_radical_dim(m: &Representation) -> Result<usize> {
    if m.field() != Field::Rationals {
        return Err(Error::NotCertified);
    }
    let end = hom_basis(m, m)?;
    Ok(end.dim() - trace_form_rank(&end))
}

/// Local endomorphism ring test: `End(m) / rad` is one-dimensional.
///
/// The quotient dimension does not change under extension of scalars in
/// characteristic zero, so a `true` answer certifies indecomposability over
/// the algebraic closure as well.
pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if m.field() != Field::Rationals {
        return Err(Error::NotCertified);
    }
    let end = hom_basis(m, m)?;
    Ok(end.dim() == 1 || trace_form_rank(&end) == 1)
}

pub(crate) fn local_quotient_dim(end: &HomBasis) -> usize {
    if end.dim() <= 1 {
        end.dim()
    } else {
        trace_form_rank(end)
    }
}
