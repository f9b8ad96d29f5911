//! Dense kernels used on small residual blocks: Bareiss rank, Smith normal
//! form with transforms, saturated integer kernels, and field kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Ring;

pub type DenseInt = Vec<Vec<BigInt>>;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut a: DenseInt) -> usize {
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let m = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..m {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..n {
            if a[i][col].is_zero() && a[rank][col] == prev {
                // row unaffected apart from the exact division by `prev`
                continue;
            }
            for j in col + 1..m {
                let t = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                debug_assert!((&t % &prev).is_zero());
                a[i][j] = t / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

fn identity(n: usize) -> DenseInt {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn mat_mul(a: &DenseInt, b: &DenseInt) -> DenseInt {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !brow[j].is_zero() {
                    out[i][j] += &a[i][l] * &brow[j];
                }
            }
        }
    }
    out
}

/// Smith normal form `U·A·V = D` of an `n × m` integer matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: DenseInt,
    pub d: DenseInt,
    pub v: DenseInt,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Recomputes `U·A·V` and compares with `D`.
    pub fn verify(&self, a: &DenseInt) -> bool {
        let n = a.len();
        if n == 0 {
            return true;
        }
        if mat_mul(&mat_mul(&self.u, a), &self.v) != self.d {
            return false;
        }
        let r = self.invariant_factors.len();
        let diag_ok = (0..n).all(|i| {
            (0..self.d[i].len()).all(|j| {
                let e = &self.d[i][j];
                if i == j && i < r {
                    *e == self.invariant_factors[i]
                } else {
                    e.is_zero()
                }
            })
        });
        let chain_ok = self
            .invariant_factors
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero());
        diag_ok && chain_ok && self.invariant_factors.iter().all(|f| f.is_positive())
    }
}

fn swap_rows(a: &mut DenseInt, u: &mut DenseInt, i: usize, j: usize) {
    a.swap(i, j);
    u.swap(i, j);
}

fn swap_cols(a: &mut DenseInt, v: &mut DenseInt, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i -= q·row_t
fn sub_row(a: &mut DenseInt, u: &mut DenseInt, i: usize, t: usize, q: &BigInt) {
    for mat in [a, u] {
        let src = mat[t].clone();
        for (x, s) in mat[i].iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *x -= q * s;
            }
        }
    }
}

/// col_j -= q·col_t
fn sub_col(a: &mut DenseInt, v: &mut DenseInt, j: usize, t: usize, q: &BigInt) {
    for mat in [a, v] {
        for row in mat.iter_mut() {
            if !row[t].is_zero() {
                let s = q * &row[t];
                row[j] -= s;
            }
        }
    }
}

pub fn smith_form(a: &DenseInt) -> SmithForm {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(n);
    let mut v = identity(m);
    let mut t = 0;
    while t < n.min(m) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut d, &mut u, t, bi);
        swap_cols(&mut d, &mut v, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..n {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    sub_row(&mut d, &mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..m {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    sub_col(&mut d, &mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // bring the smallest remainder on the cross to the pivot
                let mut best = (t, t);
                for i in t + 1..n {
                    if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..m {
                    if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_rows(&mut d, &mut u, t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut d, &mut v, t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut d, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let invariant_factors = (0..n.min(m))
        .map(|i| d[i][i].clone())
        .take_while(|e| !e.is_zero())
        .collect();
    SmithForm {
        u,
        d,
        v,
        invariant_factors,
    }
}

/// A saturated basis of the kernel of `a` (vectors of length `cols`).
pub fn integer_kernel(a: &DenseInt, cols: usize) -> Vec<Vec<BigInt>> {
    let mut a = a.clone();
    let mut v = identity(cols);
    let mut k = 0;
    for i in 0..a.len() {
        if k == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..cols {
                if !a[i][j].is_zero() && best.is_none_or(|b| a[i][j].abs() < a[i][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut v, k, b);
            let mut done = true;
            for j in k + 1..cols {
                if !a[i][j].is_zero() {
                    let q = a[i][j].div_floor(&a[i][k]);
                    sub_col(&mut a, &mut v, j, k, &q);
                    if !a[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }
    (k..cols).map(|j| v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Rank and kernel basis over a field by reduced row echelon form.
pub fn field_rank_and_kernel<R: Ring>(ring: &R, a: &[Vec<R::Elem>], cols: usize) -> (usize, Vec<Vec<R::Elem>>) {
    let mut m: Vec<Vec<R::Elem>> = a.to_vec();
    let n = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == n {
            break;
        }
        let Some(p) = (row..n).find(|&i| !ring.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = ring.inverse(&m[row][col]).expect("field");
        for x in m[row].iter_mut() {
            *x = ring.mul(&inv, x);
        }
        for i in 0..n {
            if i != row && !ring.is_zero(&m[i][col]) {
                let f = ring.neg(&m[i][col]);
                let src = m[row].clone();
                for (x, s) in m[i].iter_mut().zip(src.iter()) {
                    ring.add_mul_assign(x, &f, s);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut vec = vec![ring.zero(); cols];
        vec[free] = ring.one();
        for (r, &pc) in pivots.iter().enumerate() {
            vec[pc] = ring.neg(&m[r][free]);
        }
        kernel.push(vec);
    }
    (rank, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> DenseInt {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss_rank(int(&[&[1, 1, 1], &[-1, 1, 1], &[-1, -1, -1]])), 2);
        assert_eq!(bareiss_rank(int(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(int(&[&[0, 2, 4], &[0, 1, 2], &[3, 0, 1]])), 2);
    }

    #[test]
    fn smith_examples() {
        let a = int(&[&[2, 4], &[6, 8]]);
        let s = smith_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2 4) over Z is spanned by (2,-1), not (4,-2)
        let k = integer_kernel(&int(&[&[2, 4]]), 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] * 2 + &v[1] * 4, BigInt::zero());
        let g = v[0].gcd(&v[1]);
        assert!(g.is_one());
    }
}
