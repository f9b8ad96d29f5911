use std::collections::BTreeMap;

use super::{ExactError, Ring};

/// Sparse vector: `(index, value)` pairs, sorted by index, no explicit zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Exact matrix stored column by column.
///
/// A differential `C → C'` is stored with one column per basis element of
/// `C`, so `cols()` is the domain dimension and `rows()` the codomain one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> ExactMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); cols],
        }
    }

    /// Builds from sorted sparse columns; entries must be nonzero and in range.
    pub fn from_columns(rows: usize, data: Vec<SparseVec<E>>) -> Self {
        for col in &data {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(r, _)| *r < rows));
        }
        ExactMatrix {
            rows,
            cols: data.len(),
            data,
        }
    }

    /// Builds from a row-major dense array, dropping zeros.
    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, rows: &[Vec<E>]) -> Result<Self, ExactError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ExactError::Malformed("ragged dense matrix".into()));
        }
        let mut data = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !ring.is_zero(e) {
                    data[j].push((i, e.clone()));
                }
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_i64<R: Ring<Elem = E>>(ring: &R, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<E>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::from_dense(ring, &dense).expect("rectangular literal")
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        ExactMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, ring.one())]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec<E> {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        self.data[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .ok()
            .map(|k| &self.data[j][k].1)
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut out = vec![vec![ring.zero(); self.cols]; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, e) in col {
                out[*i][j] = e.clone();
            }
        }
        out
    }

    /// Row-major sparse rows.
    pub fn to_rows(&self) -> Vec<SparseVec<E>> {
        let mut out = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, e) in col {
                out[*i].push((j, e.clone()));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data: self.to_rows(),
        }
    }

    /// `self · rhs`
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let data = rhs
            .data
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, E> = BTreeMap::new();
                for (k, c) in col {
                    for (i, a) in &self.data[*k] {
                        let slot = acc.entry(*i).or_insert_with(|| ring.zero());
                        ring.add_mul_assign(slot, a, c);
                    }
                }
                acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect()
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Applies the matrix to a sparse vector in the domain.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &SparseVec<E>) -> SparseVec<E> {
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (k, c) in v {
            for (i, a) in &self.data[*k] {
                let slot = acc.entry(*i).or_insert_with(|| ring.zero());
                ring.add_mul_assign(slot, a, c);
            }
        }
        acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect()
    }

    pub fn negate<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|c| c.iter().map(|(i, e)| (*i, ring.neg(e))).collect())
                .collect(),
        }
    }
}

/// `a + c·b` on sorted sparse vectors.
pub fn axpy<R: Ring>(ring: &R, a: &SparseVec<R::Elem>, c: &R::Elem, b: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, ring.mul(c, &b[j].1)));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            ring.add_mul_assign(&mut v, c, &b[j].1);
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
