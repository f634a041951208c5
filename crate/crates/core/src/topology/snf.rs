use std::fmt;

use serde::{Deserialize, Serialize};

use super::TopologyError;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, TopologyError> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self[(i, k)] as i128 * rhs[(k, j)] as i128;
                }
                out[(i, j)] = i64::try_from(acc).map_err(|_| TopologyError::Overflow)?;
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<i64, TopologyError> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                        .ok_or(TopologyError::Overflow)?;
                    a[i][j] = v / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| TopologyError::Overflow)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// `u * m * v = d` with `d` diagonal, nonnegative, each entry dividing the
/// next, and `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }
}

/// Row-major `i128` scratch matrix for elimination.
struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl Grid {
    fn from_matrix(m: &IntMatrix) -> Self {
        Grid {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data.iter().map(|&x| x as i128).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Grid {
            rows: n,
            cols: n,
            data,
        }
    }

    fn at(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn to_matrix(&self) -> Result<IntMatrix, TopologyError> {
        let data = self
            .data
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| TopologyError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: i128) -> Result<(), TopologyError> {
        for j in 0..self.cols {
            let v = factor
                .checked_mul(self.at(src, j))
                .and_then(|x| x.checked_add(self.at(dst, j)))
                .ok_or(TopologyError::Overflow)?;
            self.data[dst * self.cols + j] = v;
        }
        Ok(())
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: i128) -> Result<(), TopologyError> {
        for i in 0..self.rows {
            let v = factor
                .checked_mul(self.at(i, src))
                .and_then(|x| x.checked_add(self.at(i, dst)))
                .ok_or(TopologyError::Overflow)?;
            self.data[i * self.cols + dst] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), TopologyError> {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = x.checked_neg().ok_or(TopologyError::Overflow)?;
        }
        Ok(())
    }
}

/// Nearest-integer quotient, so remainders are at most half the pivot.
fn nearest_quotient(a: i128, p: i128) -> i128 {
    let q = a.div_euclid(p);
    let r = a.rem_euclid(p);
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// Diagonalizes `d` in place, mirroring row operations into `u` and column
/// operations into `v` when given.
fn eliminate(d: &mut Grid, mut uv: Option<(&mut Grid, &mut Grid)>) -> Result<(), TopologyError> {
    let (rows, cols) = (d.rows, d.cols);
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| d.at(i, j) != 0)
                .min_by_key(|&(i, j)| d.at(i, j).unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Ok(());
            };
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            if let Some((u, v)) = uv.as_mut() {
                u.swap_rows(t, pi);
                v.swap_cols(t, pj);
            }

            let p = d.at(t, t);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = nearest_quotient(d.at(i, t), p);
                if q != 0 {
                    d.add_row(i, t, -q)?;
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_row(i, t, -q)?;
                    }
                }
                dirty |= d.at(i, t) != 0;
            }
            for j in t + 1..cols {
                let q = nearest_quotient(d.at(t, j), p);
                if q != 0 {
                    d.add_col(j, t, -q)?;
                    if let Some((_, v)) = uv.as_mut() {
                        v.add_col(j, t, -q)?;
                    }
                }
                dirty |= d.at(t, j) != 0;
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d.at(i, j) % p != 0));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, 1)?;
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_row(t, i, 1)?;
                    }
                }
                None => break,
            }
        }
        if d.at(t, t) < 0 {
            d.negate_row(t)?;
            if let Some((u, _)) = uv.as_mut() {
                u.negate_row(t)?;
            }
        }
    }
    Ok(())
}

/// Smith normal form by repeated pivoting on the smallest nonzero entry.
///
/// Fails with [`TopologyError::Overflow`] when an entry of `d`, `u` or `v`
/// does not fit in an `i64`. The transforms of dense matrices grow much
/// faster than the diagonal; [`smith_diagonal`] avoids them.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, TopologyError> {
    let mut d = Grid::from_matrix(m);
    let mut u = Grid::identity(m.rows());
    let mut v = Grid::identity(m.cols());
    eliminate(&mut d, Some((&mut u, &mut v)))?;
    Ok(SmithForm {
        d: d.to_matrix()?,
        u: u.to_matrix()?,
        v: v.to_matrix()?,
    })
}

/// Diagonal of the Smith normal form, without the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Result<Vec<i64>, TopologyError> {
    let mut d = Grid::from_matrix(m);
    eliminate(&mut d, None)?;
    (0..m.rows().min(m.cols()))
        .map(|i| i64::try_from(d.at(i, i)).map_err(|_| TopologyError::Overflow))
        .collect()
}
