use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// Homogeneous linear system assembled row by row from sparse entries.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<Vec<Scalar>>,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> LinearSystem {
        LinearSystem {
            field,
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Adds the equation `sum coeff * x[idx] = 0`; repeated indices accumulate.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut row = vec![self.field.zero(); self.unknowns];
        let mut nonzero = false;
        for (i, c) in entries {
            if c.is_zero() {
                continue;
            }
            row[i] = &row[i] + &c;
            nonzero = true;
        }
        if nonzero && row.iter().any(|x| !x.is_zero()) {
            self.rows.push(row);
        }
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.unknowns, self.rows.clone())
    }

    pub fn solution_basis(&self) -> Vec<Vec<Scalar>> {
        self.matrix().kernel_basis()
    }
}
