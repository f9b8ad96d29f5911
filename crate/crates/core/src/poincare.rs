//! Poincaré duality algebras: validation, diagonal classes, Euler
//! characteristic, the suspension `Sℋ`, and the built-in examples.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{Ring, RingSpec};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoincareError {
    #[error("cannot parse algebra spec `{0}`")]
    Parse(String),
    #[error("manifold dimension {0} is below the supported minimum of 4")]
    Dimension(usize),
    #[error("malformed algebra: {0}")]
    Structure(String),
    #[error("algebra is not a Poincaré algebra over {ring}: {violations}")]
    Invalid { ring: RingSpec, violations: String },
    #[error("structure constants are not defined over {0}")]
    NotRepresentable(RingSpec),
    #[error("pairing is not invertible over {0}")]
    PairingDegenerate(RingSpec),
    #[error("the suspension needs an even dimension, got {0}")]
    OddSuspension(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

/// Where a basis element of `Sℋ` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuspensionOrigin {
    /// `a ∈ ℋ^{≤d−2}`
    Plain(usize),
    /// `ā` for `a ∈ ℋ^{≥2}`
    Barred(usize),
}

/// Sparse linear combination of basis indices.
pub type Combination = Vec<(usize, Rational)>;

/// A finite graded-commutative algebra with an orientation functional.
///
/// Basis element 0 is always the unit. `products[i][j]` is `aᵢ·aⱼ` in the
/// basis; the functional is `ε(a_top) = 1` and zero on other basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareAlgebra {
    name: String,
    dim: usize,
    basis: Vec<BasisElement>,
    products: Vec<Vec<Combination>>,
    top: usize,
    origin: Option<Vec<SuspensionOrigin>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionTooSmall(usize),
    DegreeOutOfRange { name: String, degree: usize },
    ExtraDegreeZero(String),
    DegreeOne(String),
    Inhomogeneous { left: String, right: String },
    NotCommutative { left: String, right: String },
    NotAssociative { a: String, b: String, c: String },
    TopClassDegree { name: String, degree: usize },
    TopNotOneDimensional(usize),
    NotRepresentable(RingSpec),
    PairingDegenerate(RingSpec),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionTooSmall(d) => write!(f, "dimension {d} < 4"),
            Violation::DegreeOutOfRange { name, degree } => {
                write!(f, "`{name}` has degree {degree} outside 0..=d")
            }
            Violation::ExtraDegreeZero(n) => write!(f, "degree-0 part is not spanned by 1 (`{n}`)"),
            Violation::DegreeOne(n) => write!(f, "`{n}` lies in degree 1 (not simply connected)"),
            Violation::Inhomogeneous { left, right } => {
                write!(f, "`{left}·{right}` is not homogeneous of the expected degree")
            }
            Violation::NotCommutative { left, right } => {
                write!(f, "`{left}·{right}` violates graded commutativity")
            }
            Violation::NotAssociative { a, b, c } => write!(f, "`({a}·{b})·{c} ≠ {a}·({b}·{c})`"),
            Violation::TopClassDegree { name, degree } => {
                write!(f, "orientation class `{name}` has degree {degree}, not d (pairing degenerate)")
            }
            Violation::TopNotOneDimensional(n) => write!(f, "top degree has dimension {n}"),
            Violation::NotRepresentable(r) => write!(f, "structure constants not defined over {r}"),
            Violation::PairingDegenerate(r) => write!(f, "pairing ε(aᵢaⱼ) is not invertible over {r}"),
        }
    }
}

/// Result of [`PoincareAlgebra::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self, ring: RingSpec) -> Result<(), PoincareError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(PoincareError::Invalid {
                ring,
                violations: self
                    .violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            })
        }
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn koszul(a: usize, b: usize) -> bool {
    a % 2 == 1 && b % 2 == 1
}

fn add_into(acc: &mut Combination, idx: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    if let Some(slot) = acc.iter_mut().find(|(i, _)| *i == idx) {
        slot.1 += c;
    } else {
        acc.push((idx, c));
    }
    acc.retain(|(_, c)| !c.is_zero());
    acc.sort_by_key(|(i, _)| *i);
}

impl PoincareAlgebra {
    /// Assembles an algebra from a basis (without the unit), structure
    /// constants between non-unit basis elements, and an orientation class
    /// with `ε(top) = epsilon`. The top class is rescaled so that `ε = 1`.
    ///
    /// Only well-formedness is checked here; see [`Self::validate`].
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        generators: Vec<BasisElement>,
        products: Vec<(usize, usize, Combination)>,
        top: usize,
        epsilon: Rational,
    ) -> Result<Self, PoincareError> {
        let mut basis = vec![BasisElement {
            name: "1".into(),
            degree: 0,
        }];
        for g in generators {
            if g.name == "1" || g.name.is_empty() || basis.iter().any(|b| b.name == g.name) {
                return Err(PoincareError::Structure(format!("bad or duplicate basis name `{}`", g.name)));
            }
            if g.name.contains(|c: char| c == '_' || c.is_whitespace()) {
                return Err(PoincareError::Structure(format!("basis name `{}` may not contain `_` or spaces", g.name)));
            }
            basis.push(g);
        }
        let n = basis.len();
        if top >= n {
            return Err(PoincareError::Structure("orientation class out of range".into()));
        }
        if epsilon.is_zero() {
            return Err(PoincareError::Structure("orientation value must be nonzero".into()));
        }
        let mut table = vec![vec![Combination::new(); n]; n];
        for i in 0..n {
            table[0][i] = vec![(i, q(1))];
            table[i][0] = vec![(i, q(1))];
        }
        for (i, j, comb) in products {
            if i == 0 || j == 0 {
                if comb != table[i][j] {
                    return Err(PoincareError::Structure("products with the unit are implicit".into()));
                }
                continue;
            }
            if i >= n || j >= n || comb.iter().any(|(k, _)| *k >= n) {
                return Err(PoincareError::Structure("product index out of range".into()));
            }
            let mut acc = Combination::new();
            for (k, c) in comb {
                add_into(&mut acc, k, c);
            }
            table[i][j] = acc;
        }
        let mut alg = PoincareAlgebra {
            name: name.into(),
            dim,
            basis,
            products: table,
            top,
            origin: None,
        };
        if !epsilon.is_one() && top != 0 {
            alg.rescale_top(&epsilon);
        }
        Ok(alg)
    }

    /// Replace the top class `ω` by `ω/v`, where `v = ε(ω)`.
    fn rescale_top(&mut self, v: &Rational) {
        let t = self.top;
        let n = self.basis.len();
        for i in 1..n {
            for j in 1..n {
                let mut f = Rational::one();
                if i == t {
                    f /= v;
                }
                if j == t {
                    f /= v;
                }
                for (k, c) in self.products[i][j].iter_mut() {
                    *c *= &f;
                    if *k == t {
                        *c *= v;
                    }
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn product(&self, i: usize, j: usize) -> &Combination {
        &self.products[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// For a suspension, the provenance of each basis element.
    pub fn suspension_origin(&self) -> Option<&[SuspensionOrigin]> {
        self.origin.as_deref()
    }

    /// Non-unit structure constants, for serialization.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, &Combination)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 1..n {
            for j in 1..n {
                if !self.products[i][j].is_empty() {
                    out.push((i, j, &self.products[i][j]));
                }
            }
        }
        out
    }

    /// `ε(x)` for a combination.
    pub fn epsilon(&self, x: &Combination) -> Rational {
        x.iter()
            .filter(|(k, _)| *k == self.top)
            .map(|(_, c)| c.clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn multiply(&self, x: &Combination, y: &Combination) -> Combination {
        let mut acc = Combination::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.products[*i][*j] {
                    add_into(&mut acc, *k, a * b * c);
                }
            }
        }
        acc
    }

    /// `ε(aᵢ·aⱼ)` over ℚ.
    pub fn pairing_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.epsilon(&self.products[i][j])).collect())
            .collect()
    }

    /// `Σ (−1)^i dim ℋ^i`
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|b| if b.degree % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Checks unit, degrees, homogeneity, graded commutativity,
    /// associativity, the top class and nondegeneracy of the pairing over `ring`.
    pub fn validate(&self, ring: RingSpec) -> ValidationReport {
        let mut v = Vec::new();
        let d = self.dim;
        let n = self.len();
        let name = |i: usize| self.basis[i].name.clone();
        if d < 4 {
            v.push(Violation::DimensionTooSmall(d));
        }
        for (i, b) in self.basis.iter().enumerate() {
            if b.degree > d {
                v.push(Violation::DegreeOutOfRange {
                    name: b.name.clone(),
                    degree: b.degree,
                });
            }
            if i > 0 && b.degree == 0 {
                v.push(Violation::ExtraDegreeZero(b.name.clone()));
            }
            if b.degree == 1 {
                v.push(Violation::DegreeOne(b.name.clone()));
            }
        }
        for i in 1..n {
            for j in 1..n {
                let deg = self.degree(i) + self.degree(j);
                if self.products[i][j].iter().any(|(k, _)| self.degree(*k) != deg) {
                    v.push(Violation::Inhomogeneous {
                        left: name(i),
                        right: name(j),
                    });
                }
                if j >= i {
                    let sign = if koszul(self.degree(i), self.degree(j)) { -1 } else { 1 };
                    let swapped: Combination = self.products[j][i]
                        .iter()
                        .map(|(k, c)| (*k, c * q(sign)))
                        .collect();
                    if swapped != self.products[i][j] {
                        v.push(Violation::NotCommutative {
                            left: name(i),
                            right: name(j),
                        });
                    }
                }
            }
        }
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    let ab = self.multiply(&vec![(a, q(1))], &vec![(b, q(1))]);
                    let bc = self.multiply(&vec![(b, q(1))], &vec![(c, q(1))]);
                    let l = self.multiply(&ab, &vec![(c, q(1))]);
                    let r = self.multiply(&vec![(a, q(1))], &bc);
                    if l != r {
                        v.push(Violation::NotAssociative {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                        });
                    }
                }
            }
        }
        if self.degree(self.top) != d {
            v.push(Violation::TopClassDegree {
                name: name(self.top),
                degree: self.degree(self.top),
            });
        }
        let top_dim = self.basis.iter().filter(|b| b.degree == d).count();
        if top_dim != 1 {
            v.push(Violation::TopNotOneDimensional(top_dim));
        }
        let constants = self.products.iter().flatten().flatten();
        if !constants.into_iter().all(|(_, c)| representable(ring, c)) {
            v.push(Violation::NotRepresentable(ring));
        }
        if !self.pairing_invertible_over(ring) {
            v.push(Violation::PairingDegenerate(ring));
        }
        ValidationReport { violations: v }
    }

    fn pairing_invertible_over(&self, ring: RingSpec) -> bool {
        let Some(det) = determinant(&self.pairing_matrix()) else {
            return false;
        };
        if det.is_zero() {
            return false;
        }
        match ring {
            RingSpec::Rationals => true,
            RingSpec::Integers => det.abs().is_one(),
            RingSpec::PrimeField(p) => {
                let p = BigInt::from(p);
                !(det.numer() % &p).is_zero() && !(det.denom() % &p).is_zero()
            }
        }
    }

    /// Inverse of the pairing matrix over ℚ, if it exists.
    pub fn inverse_pairing(&self) -> Option<Vec<Vec<Rational>>> {
        invert(&self.pairing_matrix())
    }

    /// Structure constants transported into `ring`.
    pub fn over<R: Ring>(&self, ring: &R) -> Result<CoeffAlgebra<R>, PoincareError> {
        let n = self.len();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.products[i][j] {
                    let e = ring
                        .from_rational(c)
                        .ok_or(PoincareError::NotRepresentable(ring.spec()))?;
                    if !ring.is_zero(&e) {
                        mult[i][j].push((*k, e));
                    }
                }
            }
        }
        Ok(CoeffAlgebra {
            dim: self.dim,
            names: self.basis.iter().map(|b| b.name.clone()).collect(),
            degrees: self.basis.iter().map(|b| b.degree).collect(),
            mult,
            top: self.top,
        })
    }

    /// The diagonal class `Δ = Σ (−1)^{|aⱼ|} b_{ji} aᵢ ⊗ aⱼ` with `b` the
    /// inverse of the pairing matrix.
    pub fn diagonal_class<R: Ring>(&self, ring: &R) -> Result<TensorClass<R>, PoincareError> {
        let inv = self
            .inverse_pairing()
            .ok_or(PoincareError::PairingDegenerate(ring.spec()))?;
        let n = self.len();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let b = &inv[j][i];
                if b.is_zero() {
                    continue;
                }
                let c = if self.degree(j) % 2 == 1 { -b } else { b.clone() };
                let e = ring
                    .from_rational(&c)
                    .ok_or(PoincareError::PairingDegenerate(ring.spec()))?;
                if !ring.is_zero(&e) {
                    terms.push((vec![i, j], e));
                }
            }
        }
        Ok(TensorClass { arity: 2, terms })
    }

    /// `ε(μ(Δ))` in `ring`.
    pub fn euler_char<R: Ring>(&self, ring: &R) -> Result<R::Elem, PoincareError> {
        let delta = self.diagonal_class(ring)?;
        let alg = self.over(ring)?;
        let mut acc = ring.zero();
        for (idx, c) in &delta.terms {
            for (k, e) in &alg.mult[idx[0]][idx[1]] {
                if *k == self.top {
                    ring.add_mul_assign(&mut acc, c, e);
                }
            }
        }
        Ok(acc)
    }

    /// `Sℋ = ℋ^{≤d−2} ⊕ ℋ^{≥2}[d−1]`, a Poincaré algebra of dimension `2d−1`.
    pub fn suspend(&self) -> Result<PoincareAlgebra, PoincareError> {
        let d = self.dim;
        if d % 2 == 1 {
            return Err(PoincareError::OddSuspension(d));
        }
        let mut origin = vec![SuspensionOrigin::Plain(0)];
        let mut basis = vec![self.basis[0].clone()];
        let mut plain_of = vec![None; self.len()];
        let mut barred_of = vec![None; self.len()];
        plain_of[0] = Some(0);
        for (i, b) in self.basis.iter().enumerate().skip(1) {
            if b.degree + 2 <= d {
                plain_of[i] = Some(basis.len());
                origin.push(SuspensionOrigin::Plain(i));
                basis.push(b.clone());
            }
        }
        for (i, b) in self.basis.iter().enumerate() {
            if b.degree >= 2 {
                barred_of[i] = Some(basis.len());
                origin.push(SuspensionOrigin::Barred(i));
                basis.push(BasisElement {
                    name: format!("{}bar", b.name),
                    degree: b.degree + d - 1,
                });
            }
        }
        let n = basis.len();
        let mut products = vec![vec![Combination::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let comb = match (origin[x], origin[y]) {
                    (SuspensionOrigin::Plain(a), SuspensionOrigin::Plain(b)) => self.products[a][b]
                        .iter()
                        .filter_map(|(k, c)| plain_of[*k].map(|kk| (kk, c.clone())))
                        .collect(),
                    (SuspensionOrigin::Plain(a), SuspensionOrigin::Barred(b)) => self.products[a][b]
                        .iter()
                        .map(|(k, c)| (barred_of[*k].expect("degree ≥ 2"), c.clone()))
                        .collect(),
                    (SuspensionOrigin::Barred(a), SuspensionOrigin::Plain(b)) => {
                        let negative = koszul(basis[x].degree, basis[y].degree);
                        self.products[b][a]
                            .iter()
                            .map(|(k, c)| {
                                let c = if negative { -c } else { c.clone() };
                                (barred_of[*k].expect("degree ≥ 2"), c)
                            })
                            .collect()
                    }
                    (SuspensionOrigin::Barred(_), SuspensionOrigin::Barred(_)) => Combination::new(),
                };
                products[x][y] = comb;
            }
        }
        let top = barred_of[self.top].ok_or_else(|| PoincareError::Structure("top class missing".into()))?;
        Ok(PoincareAlgebra {
            name: format!("S({})", self.name),
            dim: 2 * d - 1,
            basis,
            products,
            top,
            origin: Some(origin),
        })
    }

    /// Algebra from a symmetric integer intersection form: `d = 4`, basis
    /// `1, e1..eb, w` with `eᵢ·eⱼ = Qᵢⱼ w`.
    pub fn from_intersection_form(qm: &[Vec<i64>]) -> Result<PoincareAlgebra, PoincareError> {
        let b = qm.len();
        if qm.iter().any(|r| r.len() != b) {
            return Err(PoincareError::Structure("intersection matrix must be square".into()));
        }
        for i in 0..b {
            for j in 0..b {
                if qm[i][j] != qm[j][i] {
                    return Err(PoincareError::Structure("intersection matrix must be symmetric".into()));
                }
            }
        }
        let as_q: Vec<Vec<Rational>> = qm.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        if b > 0 && determinant(&as_q).is_none_or(|d| d.is_zero()) {
            return Err(PoincareError::Structure("intersection matrix is singular".into()));
        }
        let mut gens: Vec<BasisElement> = (1..=b)
            .map(|i| BasisElement {
                name: format!("e{i}"),
                degree: 2,
            })
            .collect();
        gens.push(BasisElement {
            name: "w".into(),
            degree: 4,
        });
        let top = b + 1;
        let mut products = Vec::new();
        for i in 0..b {
            for j in 0..b {
                if qm[i][j] != 0 {
                    products.push((i + 1, j + 1, vec![(top, q(qm[i][j]))]));
                }
            }
        }
        let name = format!(
            "four_manifold:[{}]",
            qm.iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(",")
        );
        PoincareAlgebra::new(name, 4, gens, products, top, q(1))
    }

    pub fn sphere(d: usize) -> Result<PoincareAlgebra, PoincareError> {
        if d < 4 {
            return Err(PoincareError::Dimension(d));
        }
        PoincareAlgebra::new(
            format!("sphere:{d}"),
            d,
            vec![BasisElement {
                name: "x".into(),
                degree: d,
            }],
            vec![],
            1,
            q(1),
        )
    }

    /// `H*(S^k) ⊗ H*(S^l)` with Koszul signs and `ε(ab) = 1`.
    pub fn product_spheres(k: usize, l: usize) -> Result<PoincareAlgebra, PoincareError> {
        if k < 2 || l < 2 {
            return Err(PoincareError::Structure("sphere factors must have dimension ≥ 2".into()));
        }
        if k + l < 4 {
            return Err(PoincareError::Dimension(k + l));
        }
        let sign = if koszul(k, l) { -1 } else { 1 };
        PoincareAlgebra::new(
            format!("product_spheres:{k},{l}"),
            k + l,
            vec![
                BasisElement {
                    name: "a".into(),
                    degree: k,
                },
                BasisElement {
                    name: "b".into(),
                    degree: l,
                },
                BasisElement {
                    name: "ab".into(),
                    degree: k + l,
                },
            ],
            vec![(1, 2, vec![(3, q(1))]), (2, 1, vec![(3, q(sign))])],
            3,
            q(1),
        )
    }

    /// `sphere:d`, `product_spheres:k,l` or `four_manifold:[[..],..]`.
    pub fn builtin(spec: &str) -> Result<PoincareAlgebra, PoincareError> {
        let err = || PoincareError::Parse(spec.to_string());
        let (kind, args) = spec.trim().split_once(':').ok_or_else(err)?;
        let nums = |s: &str| -> Result<Vec<usize>, PoincareError> {
            s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| err())).collect()
        };
        match kind.trim() {
            "sphere" => {
                let v = nums(args)?;
                if v.len() != 1 {
                    return Err(err());
                }
                PoincareAlgebra::sphere(v[0])
            }
            "product_spheres" => {
                let v = nums(args)?;
                if v.len() != 2 {
                    return Err(err());
                }
                PoincareAlgebra::product_spheres(v[0], v[1])
            }
            "four_manifold" => PoincareAlgebra::from_intersection_form(&parse_int_matrix(args).ok_or_else(err)?),
            _ => Err(err()),
        }
    }
}

/// Parses `[[1,0],[0,1]]`.
pub fn parse_int_matrix(s: &str) -> Option<Vec<Vec<i64>>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let inner = inner.strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split("],[")
        .map(|row| {
            if row.is_empty() {
                Some(Vec::new())
            } else {
                row.split(',').map(|x| x.parse::<i64>().ok()).collect()
            }
        })
        .collect()
}

/// Determinant over ℚ by Gaussian elimination (`None` for non-square input).
pub fn determinant(m: &[Vec<Rational>]) -> Option<Rational> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(det)
}

/// Inverse over ℚ by Gauss–Jordan.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let src = a[c].clone();
                for (x, s) in a[i].iter_mut().zip(src.iter()) {
                    *x -= &f * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Structure constants of a graded algebra with entries in a concrete ring.
#[derive(Clone, Debug)]
pub struct CoeffAlgebra<R: Ring> {
    pub dim: usize,
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub mult: Vec<Vec<Vec<(usize, R::Elem)>>>,
    pub top: usize,
}

impl<R: Ring> CoeffAlgebra<R> {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// A homogeneous element of `ℋ^{⊗n}` in the tensor basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClass<R: Ring> {
    pub arity: usize,
    pub terms: Vec<(Vec<usize>, R::Elem)>,
}

impl<R: Ring> TensorClass<R> {
    /// Koszul-signed factor swap of an arity-2 class.
    pub fn swap(&self, ring: &R, degrees: &[usize]) -> TensorClass<R> {
        assert_eq!(self.arity, 2);
        let mut terms: Vec<(Vec<usize>, R::Elem)> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let negative = koszul(degrees[idx[0]], degrees[idx[1]]);
                let c = if negative { ring.neg(c) } else { c.clone() };
                (vec![idx[1], idx[0]], c)
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        TensorClass { arity: 2, terms }
    }

    pub fn normalized(&self) -> TensorClass<R> {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        TensorClass {
            arity: self.arity,
            terms,
        }
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> TensorClass<R> {
        TensorClass {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(i, e)| (i.clone(), ring.mul(c, e)))
                .filter(|(_, e)| !ring.is_zero(e))
                .collect(),
        }
    }

    pub fn render(&self, ring: &R, names: &[String]) -> String {
        self.normalized()
            .terms
            .iter()
            .map(|(idx, c)| {
                let body = idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("⊗");
                format!("{}·{}", ring.render(c), body)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Whether a rational constant has an image in `ring`.
pub fn representable(ring: RingSpec, x: &Rational) -> bool {
    match ring {
        RingSpec::Rationals => true,
        RingSpec::Integers => x.is_integer(),
        RingSpec::PrimeField(p) => !(x.denom() % BigInt::from(p)).is_zero(),
    }
}
