use crate::error::{Error, Result};

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn from_parts(
        rows: usize,
        cols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if indptr.len() != rows + 1 || indptr[0] != 0 {
            return Err(Error::Input("row pointer has the wrong shape".into()));
        }
        if indices.len() != values.len() || *indptr.last().unwrap() != values.len() {
            return Err(Error::Input("index and value arrays disagree".into()));
        }
        if indptr.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Input("row pointer must be nondecreasing".into()));
        }
        if indices.iter().any(|&j| j >= cols) {
            return Err(Error::Input("column index out of range".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("matrix entries must be finite".into()));
        }
        Ok(Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::from_parts(n, n, (0..=n).collect(), (0..n).collect(), diag.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `out ← A·x`
    pub fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(out.len(), self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            let (lo, hi) = (self.indptr[i], self.indptr[i + 1]);
            let mut acc = 0.0;
            for p in lo..hi {
                acc += self.values[p] * x[self.indices[p]];
            }
            *o = acc;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        self.matvec_into(x, &mut out);
        out
    }

    /// Adds `t` to every diagonal entry, inserting missing ones.
    pub fn add_diagonal(&self, t: f64) -> Self {
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::with_capacity(self.nnz() + self.rows);
        let mut values = Vec::with_capacity(self.nnz() + self.rows);
        indptr.push(0);
        for i in 0..self.rows {
            let mut seen = false;
            for p in self.indptr[i]..self.indptr[i + 1] {
                let j = self.indices[p];
                if j == i {
                    seen = true;
                    values.push(self.values[p] + t);
                } else {
                    if !seen && j > i && i < self.cols {
                        seen = true;
                        indices.push(i);
                        values.push(t);
                    }
                    values.push(self.values[p]);
                }
                indices.push(j);
            }
            if !seen && i < self.cols {
                indices.push(i);
                values.push(t);
            }
            indptr.push(values.len());
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            indptr,
            indices,
            values,
        }
    }

    /// `(i, j, a_ij)` for every stored entry, row by row.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            (self.indptr[i]..self.indptr[i + 1]).map(move |p| (i, self.indices[p], self.values[p]))
        })
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.triplets()
            .all(|(i, j, v)| (self.get(j, i) - v).abs() <= tol * v.abs().max(1.0))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = (self.indptr[i], self.indptr[i + 1]);
        self.indices[lo..hi]
            .iter()
            .position(|&c| c == j)
            .map_or(0.0, |p| self.values[lo + p])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CsrMatrix {
        // [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
        CsrMatrix::from_parts(
            3,
            3,
            vec![0, 2, 5, 7],
            vec![0, 1, 0, 1, 2, 1, 2],
            vec![2.0, -1.0, -1.0, 2.0, -1.0, -1.0, 2.0],
        )
        .unwrap()
    }

    #[test]
    fn matvec_matches_dense_product() {
        let a = small();
        assert_eq!(a.matvec(&[1.0, 2.0, 3.0]), vec![0.0, 0.0, 4.0]);
        assert!(a.is_symmetric(0.0));
        assert_eq!(a.get(0, 2), 0.0);
    }

    #[test]
    fn diagonal_shift_keeps_structure() {
        let a = small().add_diagonal(0.5);
        assert_eq!(a.nnz(), 7);
        assert_eq!(a.matvec(&[1.0, 0.0, 0.0]), vec![2.5, -1.0, 0.0]);

        // Missing diagonal entries are inserted in column order.
        let b = CsrMatrix::from_parts(2, 2, vec![0, 1, 2], vec![1, 0], vec![3.0, 3.0]).unwrap();
        let shifted = b.add_diagonal(1.0);
        assert_eq!(shifted.get(0, 0), 1.0);
        assert_eq!(shifted.get(1, 1), 1.0);
        assert_eq!(shifted.get(0, 1), 3.0);
        assert_eq!(shifted.matvec(&[1.0, 2.0]), vec![7.0, 5.0]);
    }

    #[test]
    fn malformed_parts_are_rejected() {
        assert!(CsrMatrix::from_parts(2, 2, vec![0, 1], vec![0], vec![1.0]).is_err());
        assert!(CsrMatrix::from_parts(1, 1, vec![0, 1], vec![3], vec![1.0]).is_err());
        assert!(CsrMatrix::from_parts(1, 1, vec![0, 1], vec![0], vec![f64::NAN]).is_err());
    }
}
