//! Reference arithmetic for the acceptance suite, written directly against
//! structure-constant tables so it shares no code with the library.

use nalgebra::DMatrix;

/// Products straight from the structure constants.
pub struct Oracle {
    pub n: usize,
    pub table: Vec<Vec<Vec<f64>>>,
    pub one: Vec<f64>,
}

impl Oracle {
    /// `table[i][j]` holds the coordinates of `v_i * v_j`.
    pub fn new(table: Vec<Vec<Vec<f64>>>, one: Vec<f64>) -> Oracle {
        Oracle { n: one.len(), table, one }
    }

    pub fn mul(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (xi, row) in x.iter().zip(&self.table) {
            for (yj, col) in y.iter().zip(row) {
                let s = xi * yj;
                if s != 0.0 {
                    for (o, c) in out.iter_mut().zip(col) {
                        *o += s * c;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[f64], k: usize) -> Vec<f64> {
        (0..k).fold(self.one.clone(), |acc, _| self.mul(&acc, x))
    }

    /// Column `j` is `x * v_j`.
    pub fn regrep(&self, x: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let mut vj = vec![0.0; self.n];
            vj[j] = 1.0;
            for (k, v) in self.mul(x, &vj).into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
