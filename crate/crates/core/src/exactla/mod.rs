//! Exact linear algebra over ℚ, 𝔽_p and ℤ.

mod dense;
mod elim;
mod group;
mod matrix;
mod ring;

pub use dense::{bareiss_rank, field_rank_and_kernel, integer_kernel, smith_form, DenseInt, SmithForm};
pub use elim::{choose_any_unit, choose_plus_minus_one, Eliminator};
pub use group::GroupDescriptor;
pub use matrix::{axpy, ExactMatrix, SparseVec};
pub use ring::{is_prime, Integers, PrimeField, Rationals, Ring, RingSpec, RingVisitor};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("unknown ring `{0}` (expected Q, Z or F<p>)")]
    UnknownRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {left:?} times {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("chain condition violated: d_out·d_in has {nonzero} nonzero entries")]
    ChainCondition { nonzero: usize },
    #[error("{op} is only available over Z, not over {ring}")]
    UnsupportedRing { op: &'static str, ring: RingSpec },
    #[error("invariant factor {0} does not fit in 64 bits")]
    TorsionOverflow(String),
}

fn integral_rows<R: Ring>(ring: &R, rows: &[SparseVec<R::Elem>]) -> (DenseInt, usize) {
    // compress the columns that actually occur
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let pos = |c: usize| cols.binary_search(&c).unwrap();
    let dense = rows
        .iter()
        .map(|r| {
            let qs: Vec<_> = r
                .iter()
                .map(|(c, e)| (pos(*c), ring.to_rational(e).expect("Z or Q entry")))
                .collect();
            let lcm = qs.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
            let mut out = vec![BigInt::zero(); cols.len()];
            for (c, q) in qs {
                out[c] = (q * num_rational::BigRational::from_integer(lcm.clone())).to_integer();
            }
            out
        })
        .collect();
    (dense, cols.len())
}

fn sparse_phase<'r, R: Ring>(ring: &'r R, m: &ExactMatrix<R::Elem>) -> Eliminator<'r, R> {
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&j| m.column(j).len());
    let mut el = Eliminator::new(ring);
    if ring.is_field() && ring.spec() != RingSpec::Rationals {
        let choose = choose_any_unit(ring);
        for j in order {
            el.insert(m.column(j), &choose);
        }
    } else {
        let choose = choose_plus_minus_one(ring);
        for j in order {
            el.insert(m.column(j), &choose);
        }
        el.finish(&choose);
    }
    el
}

/// Rank over the ring's fraction field.
pub fn rank<R: Ring>(ring: &R, m: &ExactMatrix<R::Elem>) -> usize {
    let el = sparse_phase(ring, m);
    let residual = el.residual();
    if residual.is_empty() {
        return el.rank();
    }
    // 𝔽_p leaves no residual; ℤ and ℚ finish with Bareiss on the dense rest.
    let (dense, _) = integral_rows(ring, residual);
    el.rank() + bareiss_rank(dense)
}

/// Nonzero invariant factors of an integer matrix (all of them, including 1s).
pub fn invariant_factors<R: Ring>(ring: &R, m: &ExactMatrix<R::Elem>) -> Result<Vec<BigInt>, ExactError> {
    if ring.spec() != RingSpec::Integers {
        return Err(ExactError::UnsupportedRing {
            op: "smith normal form",
            ring: ring.spec(),
        });
    }
    let el = sparse_phase(ring, m);
    let mut out = vec![BigInt::one(); el.rank()];
    if !el.residual().is_empty() {
        let (dense, _) = integral_rows(ring, el.residual());
        let snf = smith_form(&dense);
        assert!(snf.verify(&dense), "Smith form transforms failed verification");
        out.extend(snf.invariant_factors);
    }
    Ok(out)
}

/// Smith normal form invariant factors `d₁ | d₂ | …` of an integer matrix.
///
/// The dense core is reduced with explicit unimodular transforms that are
/// re-multiplied and checked before returning.
pub fn smith_normal_form<R: Ring>(ring: &R, m: &ExactMatrix<R::Elem>) -> Result<Vec<BigInt>, ExactError> {
    invariant_factors(ring, m)
}

/// Rank and a kernel basis (saturated over ℤ) of `m` acting on column vectors.
pub fn rank_and_kernel<R: Ring>(ring: &R, m: &ExactMatrix<R::Elem>) -> (usize, Vec<Vec<R::Elem>>) {
    let dense = m.to_dense(ring);
    if ring.spec() == RingSpec::Integers {
        let ints: DenseInt = dense
            .iter()
            .map(|r| r.iter().map(|e| ring.to_rational(e).unwrap().to_integer()).collect())
            .collect();
        let kernel = integer_kernel(&ints, m.cols());
        let k = kernel
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|x| ring.from_rational(&num_rational::BigRational::from_integer(x)).unwrap())
                    .collect()
            })
            .collect::<Vec<_>>();
        (m.cols() - k.len(), k)
    } else {
        field_rank_and_kernel(ring, &dense, m.cols())
    }
}

/// `ker(d_out) / im(d_in)` for `C_prev --d_in--> C --d_out--> C_next`.
///
/// The chain condition is always verified first.
pub fn homology_at<R: Ring>(
    ring: &R,
    d_in: &ExactMatrix<R::Elem>,
    d_out: &ExactMatrix<R::Elem>,
) -> Result<GroupDescriptor, ExactError> {
    if d_in.rows() != d_out.cols() {
        return Err(ExactError::DimensionMismatch {
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    let composite = d_out.mul(ring, d_in)?;
    if !composite.is_zero() {
        return Err(ExactError::ChainCondition {
            nonzero: composite.nnz(),
        });
    }
    let dim = d_in.rows();
    let rank_out = rank(ring, d_out);
    if ring.spec() == RingSpec::Integers {
        let factors = invariant_factors(ring, d_in)?;
        let mut torsion = Vec::new();
        for f in factors.iter().filter(|f| !f.is_one()) {
            torsion.push(f.to_u64().ok_or_else(|| ExactError::TorsionOverflow(f.to_string()))?);
        }
        Ok(GroupDescriptor::new(dim - rank_out - factors.len(), torsion))
    } else {
        let rank_in = rank(ring, d_in);
        Ok(GroupDescriptor::free(dim - rank_out - rank_in))
    }
}
