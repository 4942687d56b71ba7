use crate::error::{Error, Result};
use crate::vector::dot;

/// Dense `rows×cols` matrix stored column by column, so each data vector
/// `a_i` is a contiguous slice.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ColumnMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.data[i * self.rows..(i + 1) * self.rows]
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    /// `out ← A·w`
    pub fn matvec_into(&self, w: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (i, &wi) in w.iter().enumerate() {
            if wi == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.column(i)) {
                *o += wi * a;
            }
        }
    }

    /// `Aᵀx`
    pub fn transpose_matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.cols).map(|i| dot(self.column(i), x)).collect()
    }
}

/// `AᵀA` as a dense symmetric `cols×cols` matrix.
pub fn gram(a: &ColumnMatrix) -> ColumnMatrix {
    let n = a.cols();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v = dot(a.column(i), a.column(j));
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    ColumnMatrix {
        rows: n,
        cols: n,
        data,
    }
}
