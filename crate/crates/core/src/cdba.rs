//! The presented algebras `A_ℋ(n)` (Euler characteristic zero) and
//! `B_ℋ(n)` (Euler characteristic invertible, even dimension).
//!
//! Elements are linear combinations of normal-form monomials. A monomial is
//! a coefficient basis element per vertex, a set of `y` generators (flavor
//! A) and `g`/`h` edge sets. The quotient is computed per multidegree and
//! per *support* (the set of vertices a monomial touches): the ideal is
//! generated by support-homogeneous relations, so the piece with support
//! `S` is the relabelled full-support piece on `|S|` vertices, which is
//! built once by exact elimination and cached.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactla::{rank, Eliminator, ExactMatrix, Ring, RingSpec, SparseVec};
use crate::graphs::{enumerate_graphs, pair_index, pair_of, Graph, GraphFilter, IndexMap};
use crate::poincare::{PoincareAlgebra, PoincareError, SuspensionOrigin};

pub const MAX_ARITY: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    A,
    B,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::A => "A",
            Flavor::B => "B",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdbaError {
    #[error("flavor {flavor} needs χ {need} in {ring}, but χ = {chi}")]
    Flavor {
        flavor: Flavor,
        need: &'static str,
        chi: String,
        ring: RingSpec,
    },
    #[error("flavor B needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
    #[error("quotient in multidegree (vertices {m}, ⋆ = -{r}, * = {q}) is not a free module over Z")]
    NotFree { m: usize, r: usize, q: usize },
    #[error("at most {MAX_ARITY} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("coefficient algebra has {0} basis elements; at most 255 are supported")]
    CoefficientBasisTooLarge(usize),
    #[error("no sign makes the relation (x̄_i − x̄_j)g_ij ± x_i h_ij closed under ∂ for x̄ = {0}")]
    MixedRelation(String),
    #[error("slice (vertices {m}, ⋆ = -{r}, * = {q}): builder found dimension {built}, oracle {oracle}")]
    OracleMismatch {
        m: usize,
        r: usize,
        q: usize,
        built: usize,
        oracle: usize,
    },
}

/// One generator occurrence in an ordered product.
///
/// Edge factors may be given in either orientation; `Coef` with basis 0 is
/// the unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Coef { v: u8, basis: u8 },
    Y(u8),
    G(u8, u8),
    H(u8, u8),
}

/// A free monomial in canonical form. Its sign convention is the factor
/// order: coefficients by vertex, then `y` ascending, then `g` and `h`
/// edges in lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    m: u8,
    coef: [u8; MAX_ARITY],
    y: u16,
    g: u128,
    h: u128,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Monomial(m={}, coef={:?}, y={:#b}, g={:?}, h={:?})",
            self.m,
            &self.coef[..self.m as usize],
            self.y,
            self.g_graph().edges().collect::<Vec<_>>(),
            self.h_graph().edges().collect::<Vec<_>>()
        )
    }
}

impl Monomial {
    pub fn unit(m: usize) -> Monomial {
        assert!(m <= MAX_ARITY);
        Monomial {
            m: m as u8,
            coef: [0; MAX_ARITY],
            y: 0,
            g: 0,
            h: 0,
        }
    }

    pub fn arity(&self) -> usize {
        self.m as usize
    }

    pub fn coefficient(&self, v: usize) -> usize {
        self.coef[v] as usize
    }

    pub fn y_mask(&self) -> u16 {
        self.y
    }

    pub fn g_graph(&self) -> Graph {
        Graph::from_bits(self.arity(), self.g)
    }

    pub fn h_graph(&self) -> Graph {
        Graph::from_bits(self.arity(), self.h)
    }

    /// `g` and `h` edges together.
    pub fn edge_graph(&self) -> Graph {
        Graph::from_bits(self.arity(), self.g | self.h)
    }

    pub fn edge_count(&self) -> usize {
        (self.g.count_ones() + self.h.count_ones()) as usize
    }

    /// Vertices carrying a positive-degree coefficient, a `y` or an edge end.
    pub fn support(&self) -> u32 {
        let mut s = self.y as u32 | self.edge_graph().endpoint_mask();
        for v in 0..self.arity() {
            if self.coef[v] != 0 {
                s |= 1 << v;
            }
        }
        s
    }

    /// Canonical ordered factor list.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out = Vec::new();
        for v in 0..self.arity() {
            if self.coef[v] != 0 {
                out.push(Factor::Coef {
                    v: v as u8,
                    basis: self.coef[v],
                });
            }
        }
        for v in 0..self.arity() {
            if self.y >> v & 1 == 1 {
                out.push(Factor::Y(v as u8));
            }
        }
        for (a, b) in self.g_graph().edges() {
            out.push(Factor::G(a as u8, b as u8));
        }
        for (a, b) in self.h_graph().edges() {
            out.push(Factor::H(a as u8, b as u8));
        }
        out
    }
}

/// A linear combination of normal-form monomials on a fixed number of
/// vertices, sorted by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<E> {
    pub arity: usize,
    pub terms: Vec<(Monomial, E)>,
}

impl<E> Element<E> {
    pub fn zero(arity: usize) -> Self {
        Element {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

type FreeComb<E> = Vec<(Monomial, E)>;

/// Where a full-support monomial lands in the quotient.
#[derive(Clone, Debug)]
enum Coord<E> {
    Basis(usize),
    Combination(SparseVec<E>),
}

/// The full-support piece of one multidegree on vertices `0..m`.
#[derive(Debug)]
pub struct FullSlice<R: Ring> {
    pub m: usize,
    pub r: usize,
    pub q: usize,
    basis: Vec<Monomial>,
    coords: HashMap<Monomial, Coord<R::Elem>>,
    free_monomials: usize,
}

impl<R: Ring> FullSlice<R> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn free_monomials(&self) -> usize {
        self.free_monomials
    }

    /// Quotient coordinates of a free monomial of this slice.
    pub fn coordinates(&self, mono: &Monomial, ring: &R) -> SparseVec<R::Elem> {
        match self.coords.get(mono) {
            Some(Coord::Basis(i)) => vec![(*i, ring.one())],
            Some(Coord::Combination(v)) => v.clone(),
            None => panic!("monomial {mono:?} missing from slice ({}, {}, {})", self.m, self.r, self.q),
        }
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        match self.coords.get(mono) {
            Some(Coord::Basis(i)) => Some(*i),
            _ => None,
        }
    }
}

/// One multidegree of `A_ℋ(n)` or `B_ℋ(n)`: the direct sum of the
/// relabelled full-support pieces over all supports.
#[derive(Debug)]
pub struct AlgebraSlice<R: Ring> {
    pub n: usize,
    pub r: usize,
    pub q: usize,
    pub pieces: Vec<(u32, Arc<FullSlice<R>>)>,
    pub basis: Vec<Monomial>,
}

impl<R: Ring> AlgebraSlice<R> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
struct Relation<E> {
    r: usize,
    q: usize,
    support: u32,
    common_edges: u128,
    terms: Vec<(Monomial, E)>,
}

#[derive(Clone, Copy, Debug)]
struct VertexOption {
    degree: usize,
    coef: u8,
    y: bool,
}

type SliceCell<R> = Arc<OnceLock<Result<Arc<FullSlice<R>>, CdbaError>>>;

/// `A_ℋ` or `B_ℋ` over a concrete ring, with a shared slice cache.
pub struct Cdba<R: Ring> {
    ring: R,
    flavor: Flavor,
    d: usize,
    names: Vec<String>,
    degrees: Vec<usize>,
    odd: Vec<bool>,
    mult: Vec<Vec<Vec<(usize, R::Elem)>>>,
    y_odd: bool,
    g_odd: bool,
    h_odd: bool,
    g_swap_negates: bool,
    h_swap_negates: bool,
    g_degree: usize,
    h_degree: usize,
    options: Vec<VertexOption>,
    cover_min: usize,
    option_max: usize,
    delta_g: Vec<(usize, usize, R::Elem)>,
    delta_h: Vec<(usize, usize, R::Elem)>,
    /// flavor A: positive-degree basis; flavor B: unbarred positive-degree basis
    plain_positive: Vec<usize>,
    /// flavor B: (ā, b if |b| ≤ d−2)
    /// each barred basis element, with its unbarred partner and whether the
    /// `h` term enters the mixed relation with a minus sign
    barred: Vec<(usize, Option<(usize, bool)>)>,
    cache: DashMap<(usize, usize, usize), SliceCell<R>>,
    shuffle: Option<u64>,
}

impl<R: Ring> fmt::Debug for Cdba<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cdba")
            .field("flavor", &self.flavor)
            .field("ring", &self.ring.spec())
            .field("d", &self.d)
            .field("basis", &self.names)
            .finish()
    }
}

fn add_term<E, R: Ring<Elem = E>>(ring: &R, acc: &mut HashMap<Monomial, E>, mono: Monomial, c: E) {
    use std::collections::hash_map::Entry;
    match acc.entry(mono) {
        Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &c);
            if ring.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            if !ring.is_zero(&c) {
                v.insert(c);
            }
        }
    }
}

fn sorted<E>(acc: HashMap<Monomial, E>) -> Vec<(Monomial, E)> {
    let mut v: Vec<_> = acc.into_iter().collect();
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    v
}

impl<R: Ring> Cdba<R> {
    /// Builds the flavor's generator data; checks the Euler characteristic
    /// condition in `ring`.
    pub fn new(alg: &PoincareAlgebra, ring: R, flavor: Flavor) -> Result<Cdba<R>, CdbaError> {
        let d = alg.dim();
        let chi = alg.euler_char(&ring)?;
        let spec = ring.spec();
        match flavor {
            Flavor::A if !ring.is_zero(&chi) => {
                return Err(CdbaError::Flavor {
                    flavor,
                    need: "= 0",
                    chi: ring.render(&chi),
                    ring: spec,
                })
            }
            Flavor::B if d % 2 == 1 => return Err(CdbaError::OddDimension(d)),
            Flavor::B if !ring.is_unit(&chi) => {
                return Err(CdbaError::Flavor {
                    flavor,
                    need: "invertible",
                    chi: ring.render(&chi),
                    ring: spec,
                })
            }
            _ => {}
        }
        let delta = alg.diagonal_class(&ring)?;
        let (coeff, delta_g, delta_h, plain_positive, barred) = match flavor {
            Flavor::A => {
                let coeff = alg.over(&ring)?;
                let dg = delta.terms.iter().map(|(i, c)| (i[0], i[1], c.clone())).collect();
                let plain = (1..alg.len()).filter(|&i| alg.degree(i) > 0).collect();
                (coeff, dg, Vec::new(), plain, Vec::new())
            }
            Flavor::B => {
                let sh = alg.suspend()?;
                let origin = sh.suspension_origin().expect("suspension").to_vec();
                let mut plain_of = vec![None; alg.len()];
                let mut barred = Vec::new();
                for (k, o) in origin.iter().enumerate() {
                    if let SuspensionOrigin::Plain(i) = o {
                        plain_of[*i] = Some(k);
                    }
                }
                for (k, o) in origin.iter().enumerate() {
                    if let SuspensionOrigin::Barred(i) = o {
                        barred.push((k, plain_of[*i].map(|p| (p, false))));
                    }
                }
                let dg = delta
                    .terms
                    .iter()
                    .filter_map(|(i, c)| Some((plain_of[i[0]]?, plain_of[i[1]]?, c.clone())))
                    .collect();
                let dh = sh
                    .diagonal_class(&ring)?
                    .terms
                    .into_iter()
                    .map(|(i, c)| (i[0], i[1], c))
                    .collect();
                let plain = origin
                    .iter()
                    .enumerate()
                    .filter(|(k, o)| matches!(o, SuspensionOrigin::Plain(_)) && sh.degree(*k) > 0)
                    .map(|(k, _)| k)
                    .collect();
                (sh.over(&ring)?, dg, dh, plain, barred)
            }
        };
        if coeff.len() > 255 {
            return Err(CdbaError::CoefficientBasisTooLarge(coeff.len()));
        }
        let degrees = coeff.degrees.clone();
        let mut options = Vec::new();
        for (c, &deg) in degrees.iter().enumerate() {
            options.push(VertexOption {
                degree: deg,
                coef: c as u8,
                y: false,
            });
            if flavor == Flavor::A {
                options.push(VertexOption {
                    degree: deg + d - 1,
                    coef: c as u8,
                    y: true,
                });
            }
        }
        options.sort_by_key(|o| (o.degree, o.coef, o.y));
        let cover_min = options.iter().map(|o| o.degree).filter(|&x| x > 0).min().unwrap_or(usize::MAX);
        let option_max = options.iter().map(|o| o.degree).max().unwrap_or(0);
        let mut cdba = Cdba {
            flavor,
            d,
            names: coeff.names.clone(),
            odd: degrees.iter().map(|x| x % 2 == 1).collect(),
            degrees,
            mult: coeff.mult,
            y_odd: (d - 1) % 2 == 1,
            g_odd: (d - 1) % 2 == 1,
            h_odd: false,
            g_swap_negates: flavor == Flavor::A && d % 2 == 1,
            h_swap_negates: true,
            g_degree: d,
            h_degree: 2 * d - 1,
            options,
            cover_min,
            option_max,
            delta_g,
            delta_h,
            plain_positive,
            barred,
            cache: DashMap::new(),
            shuffle: None,
            ring,
        };
        cdba.orient_mixed_relations()?;
        Ok(cdba)
    }

    /// Fixes the sign of the `h` term in `(x̄_i − x̄_j)g_ij ± x_i h_ij` so
    /// that `∂` of the relation vanishes: both differentials land in
    /// coefficient-only monomials, where no relation is involved yet.
    fn orient_mixed_relations(&mut self) -> Result<(), CdbaError> {
        let ring = self.ring.clone();
        let d_of = |c: &Self, fs: &[Factor], negate: bool, acc: &mut HashMap<Monomial, R::Elem>| {
            for (mono, e) in c.normalize(2, fs, negate) {
                for (m, f) in c.differential_free(&mono) {
                    add_term(&ring, acc, m, ring.mul(&e, &f));
                }
            }
        };
        for k in 0..self.barred.len() {
            let (bar, Some((plain, _))) = self.barred[k] else { continue };
            let coef = |v: u8, basis: usize| Factor::Coef { v, basis: basis as u8 };
            let mut g_part = HashMap::new();
            d_of(self, &[coef(0, bar), Factor::G(0, 1)], false, &mut g_part);
            d_of(self, &[coef(1, bar), Factor::G(0, 1)], true, &mut g_part);
            let mut h_part = HashMap::new();
            d_of(self, &[coef(0, plain), Factor::H(0, 1)], false, &mut h_part);
            let vanishes = |negate: bool| {
                let mut sum = g_part.clone();
                for (m, e) in &h_part {
                    add_term(&ring, &mut sum, *m, if negate { ring.neg(e) } else { e.clone() });
                }
                sum.values().all(|e| ring.is_zero(e))
            };
            let negative = if vanishes(false) {
                false
            } else if vanishes(true) {
                true
            } else {
                return Err(CdbaError::MixedRelation(self.names[bar].clone()));
            };
            self.barred[k].1 = Some((plain, negative));
        }
        Ok(())
    }

    /// Randomizes monomial and relation order during slice construction
    /// (quotient bases change, homology must not).
    pub fn with_shuffle(mut self, seed: u64) -> Self {
        self.shuffle = Some(seed);
        self
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn coefficient_names(&self) -> &[String] {
        &self.names
    }

    pub fn coefficient_degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Smallest internal degree that covers a vertex without an edge.
    pub fn cover_degree(&self) -> usize {
        self.cover_min
    }

    /// `(−⋆, *)` of a monomial.
    pub fn bidegree(&self, mono: &Monomial) -> (usize, usize) {
        let mut q = 0;
        for v in 0..mono.arity() {
            q += self.degrees[mono.coef[v] as usize];
        }
        q += mono.y.count_ones() as usize * (self.d - 1);
        q += mono.g.count_ones() as usize * self.g_degree + mono.h.count_ones() as usize * self.h_degree;
        (mono.edge_count(), q)
    }

    /// Total degree `* + ⋆` modulo 2.
    pub fn parity(&self, mono: &Monomial) -> bool {
        let (r, q) = self.bidegree(mono);
        (q + r) % 2 == 1
    }

    fn coef_mul(&self, comb: &[(usize, R::Elem)], b: usize) -> Vec<(usize, R::Elem)> {
        let ring = &self.ring;
        let mut acc: Vec<(usize, R::Elem)> = Vec::new();
        for (k, c) in comb {
            for (t, e) in &self.mult[*k][b] {
                let v = ring.mul(c, e);
                match acc.iter_mut().find(|(i, _)| i == t) {
                    Some(slot) => slot.1 = ring.add(&slot.1, &v),
                    None => acc.push((*t, v)),
                }
            }
        }
        acc.retain(|(_, e)| !ring.is_zero(e));
        acc
    }

    /// The sign routine: the ordered product of `factors` on `m` vertices,
    /// expanded into canonical monomials.
    pub fn normalize(&self, m: usize, factors: &[Factor], negative: bool) -> FreeComb<R::Elem> {
        let ring = &self.ring;
        let mut neg = negative;
        let mut items: Vec<(u32, bool, Factor)> = Vec::with_capacity(factors.len());
        for &f in factors {
            match f {
                Factor::Coef { v, basis } => {
                    debug_assert!((v as usize) < m);
                    if basis != 0 {
                        items.push((v as u32, self.odd[basis as usize], f));
                    }
                }
                Factor::Y(v) => {
                    debug_assert!(self.flavor == Flavor::A && (v as usize) < m);
                    items.push((1 << 16 | v as u32, self.y_odd, f));
                }
                Factor::G(a, b) | Factor::H(a, b) => {
                    if a == b {
                        return Vec::new();
                    }
                    let is_g = matches!(f, Factor::G(..));
                    let (lo, hi) = (a.min(b), a.max(b));
                    if a > b && if is_g { self.g_swap_negates } else { self.h_swap_negates } {
                        neg = !neg;
                    }
                    let idx = pair_index(lo as usize, hi as usize) as u32;
                    if is_g {
                        items.push((2 << 16 | idx, self.g_odd, Factor::G(lo, hi)));
                    } else {
                        debug_assert!(self.flavor == Flavor::B);
                        items.push((3 << 16 | idx, self.h_odd, Factor::H(lo, hi)));
                    }
                }
            }
        }
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && items[j - 1].0 > items[j].0 {
                if items[j - 1].1 && items[j].1 {
                    neg = !neg;
                }
                items.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut mono = Monomial::unit(m);
        let mut combos: Vec<(usize, Vec<(usize, R::Elem)>)> = Vec::new();
        let mut k = 0;
        while k < items.len() {
            let (key, _, f) = items[k];
            match f {
                Factor::Coef { v, basis } => {
                    let mut comb = vec![(basis as usize, ring.one())];
                    let mut t = k + 1;
                    while t < items.len() && items[t].0 == key {
                        let Factor::Coef { basis: b2, .. } = items[t].2 else { unreachable!() };
                        comb = self.coef_mul(&comb, b2 as usize);
                        if comb.is_empty() {
                            return Vec::new();
                        }
                        t += 1;
                    }
                    combos.push((v as usize, comb));
                    k = t;
                    continue;
                }
                Factor::Y(v) => {
                    if mono.y >> v & 1 == 1 {
                        return Vec::new();
                    }
                    mono.y |= 1 << v;
                }
                Factor::G(a, b) | Factor::H(a, b) => {
                    let bit = 1u128 << pair_index(a as usize, b as usize);
                    if (mono.g | mono.h) & bit != 0 {
                        return Vec::new();
                    }
                    if matches!(f, Factor::G(..)) {
                        mono.g |= bit;
                    } else {
                        mono.h |= bit;
                    }
                }
            }
            k += 1;
        }
        let mut out = vec![(mono, ring.sign(neg))];
        for (v, comb) in combos {
            let mut next = Vec::with_capacity(out.len() * comb.len());
            for (mo, c) in &out {
                for (b, e) in &comb {
                    let mut m2 = *mo;
                    m2.coef[v] = *b as u8;
                    next.push((m2, ring.mul(c, e)));
                }
            }
            out = next;
        }
        out
    }

    // ---------------------------------------------------------------- slices

    fn vertex_options(&self) -> &[VertexOption] {
        &self.options
    }

    /// All free monomials on `m` vertices of multidegree `(−r, q)` whose
    /// support contains `need` and with no edge in `forbidden`.
    fn enumerate(&self, m: usize, r: usize, q: usize, need: u32, forbidden: u128) -> Vec<Monomial> {
        let mut out = Vec::new();
        if r * self.g_degree > q {
            return out;
        }
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .filter(|&(a, b)| forbidden >> pair_index(a, b) & 1 == 0)
            .collect();
        let slack = (q - r * self.g_degree) / self.cover_min.max(1);
        let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(r);
        self.enumerate_edges(m, r, q, need, slack, &pairs, 0, 0, &mut chosen, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_edges(
        &self,
        m: usize,
        r: usize,
        q: usize,
        need: u32,
        slack: usize,
        pairs: &[(usize, usize)],
        start: usize,
        covered: u32,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Monomial>,
    ) {
        let remaining = r - chosen.len();
        let uncovered = (need & !covered).count_ones() as usize;
        if uncovered > 2 * remaining + slack {
            return;
        }
        if remaining == 0 {
            let labelings: u32 = match self.flavor {
                Flavor::A => 1,
                Flavor::B => 1 << r,
            };
            for lab in 0..labelings {
                let mut mono = Monomial::unit(m);
                let mut deg = 0;
                for (t, &(a, b)) in chosen.iter().enumerate() {
                    let bit = 1u128 << pair_index(a, b);
                    if lab >> t & 1 == 1 {
                        mono.h |= bit;
                        deg += self.h_degree;
                    } else {
                        mono.g |= bit;
                        deg += self.g_degree;
                    }
                }
                if deg > q {
                    continue;
                }
                self.assign_vertices(m, 0, q - deg, need & !covered, &mut mono, out);
            }
            return;
        }
        for k in start..pairs.len() {
            if pairs.len() - k < remaining {
                break;
            }
            let (a, b) = pairs[k];
            chosen.push((a, b));
            self.enumerate_edges(m, r, q, need, slack, pairs, k + 1, covered | 1 << a | 1 << b, chosen, out);
            chosen.pop();
        }
    }

    fn assign_vertices(&self, m: usize, v: usize, budget: usize, need: u32, mono: &mut Monomial, out: &mut Vec<Monomial>) {
        if v == m {
            if budget == 0 {
                out.push(*mono);
            }
            return;
        }
        let rest_need = (need >> (v + 1)).count_ones() as usize;
        if budget > (m - v) * self.option_max {
            return;
        }
        let must_cover = need >> v & 1 == 1;
        for opt in self.vertex_options() {
            if opt.degree > budget {
                break;
            }
            if must_cover && opt.degree == 0 {
                continue;
            }
            let left = budget - opt.degree;
            if rest_need > 0 && left < rest_need * self.cover_min {
                continue;
            }
            mono.coef[v] = opt.coef;
            if opt.y {
                mono.y |= 1 << v;
            }
            self.assign_vertices(m, v + 1, left, need, mono, out);
            mono.coef[v] = 0;
            mono.y &= !(1 << v);
        }
    }

    fn relation(&self, m: usize, raw: Vec<(Vec<Factor>, bool)>) -> Option<Relation<R::Elem>> {
        let ring = &self.ring;
        let mut acc = HashMap::new();
        for (factors, neg) in raw {
            for (mono, c) in self.normalize(m, &factors, neg) {
                add_term(ring, &mut acc, mono, c);
            }
        }
        let terms = sorted(acc);
        let first = terms.first()?.0;
        let (r, q) = self.bidegree(&first);
        let support = terms.iter().fold(0, |s, (mo, _)| s | mo.support());
        let common_edges = terms.iter().fold(u128::MAX, |s, (mo, _)| s & (mo.g | mo.h));
        Some(Relation {
            r,
            q,
            support,
            common_edges,
            terms,
        })
    }

    /// Ideal generators with support inside `0..m`. With `all_orders`, every
    /// ordered choice of indices is emitted (redundantly).
    fn relations(&self, m: usize, all_orders: bool) -> Vec<Relation<R::Elem>> {
        use Factor::{Coef, G, H};
        let c = |v: usize, b: usize| Coef {
            v: v as u8,
            basis: b as u8,
        };
        let e = |a: usize, b: usize| (a as u8, b as u8);
        let mut raw: Vec<Vec<(Vec<Factor>, bool)>> = Vec::new();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| if all_orders { i != j } else { i < j })
            .collect();
        let triples: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| i != j && j != k && i != k && (all_orders || (i < j && j < k)))
            .collect();
        let three_term = |mk: &dyn Fn(u8, u8) -> Factor, i: usize, j: usize, k: usize| {
            let (ij, jk, ki) = (e(i, j), e(j, k), e(k, i));
            vec![
                (vec![mk(ij.0, ij.1), mk(jk.0, jk.1)], false),
                (vec![mk(jk.0, jk.1), mk(ki.0, ki.1)], false),
                (vec![mk(ki.0, ki.1), mk(ij.0, ij.1)], false),
            ]
        };
        match self.flavor {
            Flavor::A => {
                for &(i, j) in &pairs {
                    for &a in &self.plain_positive {
                        raw.push(vec![(vec![c(i, a), G(i as u8, j as u8)], false), (vec![c(j, a), G(i as u8, j as u8)], true)]);
                    }
                }
                for &(i, j, k) in &triples {
                    raw.push(three_term(&|a, b| G(a, b), i, j, k));
                }
            }
            Flavor::B => {
                let all_pairs: Vec<(usize, usize)> = (0..m)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j)
                    .collect();
                for &(i, j) in &pairs {
                    let (gi, gj) = (i as u8, j as u8);
                    for &a in &self.plain_positive {
                        raw.push(vec![(vec![c(i, a), G(gi, gj)], false), (vec![c(j, a), G(gi, gj)], true)]);
                        raw.push(vec![(vec![c(i, a), H(gi, gj)], false), (vec![c(j, a), H(gi, gj)], true)]);
                    }
                    for &(bar, _) in &self.barred {
                        raw.push(vec![(vec![c(i, bar), H(gi, gj)], false), (vec![c(j, bar), H(gi, gj)], true)]);
                    }
                }
                // not symmetric in (i, j) by itself: emit both orders always
                for &(i, j) in &all_pairs {
                    let (gi, gj) = (i as u8, j as u8);
                    for &(bar, plain) in &self.barred {
                        let mut rel = vec![(vec![c(i, bar), G(gi, gj)], false), (vec![c(j, bar), G(gi, gj)], true)];
                        if let Some((b, negative)) = plain {
                            rel.push((vec![c(i, b), H(gi, gj)], negative));
                        }
                        raw.push(rel);
                    }
                }
                for &(i, j, k) in &triples {
                    raw.push(three_term(&|a, b| G(a, b), i, j, k));
                    raw.push(three_term(&|a, b| H(a, b), i, j, k));
                }
                let ordered: Vec<(usize, usize, usize)> = (0..m)
                    .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
                    .filter(|&(i, j, k)| i != j && j != k && i != k)
                    .collect();
                for &(i, j, k) in &ordered {
                    let (i, j, k) = (i as u8, j as u8, k as u8);
                    // (h_ij + h_ki) g_jk − (h_ij + h_jk) g_ki
                    raw.push(vec![
                        (vec![H(i, j), G(j, k)], false),
                        (vec![H(k, i), G(j, k)], false),
                        (vec![H(i, j), G(k, i)], true),
                        (vec![H(j, k), G(k, i)], true),
                    ]);
                }
            }
        }
        raw.into_iter().filter_map(|r| self.relation(m, r)).collect()
    }

    fn pivot_key(&self, mono: &Monomial) -> (u32, u32) {
        let mut larger = [0u32; MAX_ARITY];
        for (_, j) in mono.edge_graph().edges() {
            larger[j] += 1;
        }
        let nondist = larger.iter().map(|&c| c.saturating_sub(1)).sum();
        let weight = (0..mono.arity())
            .map(|v| (v as u32 + 1) * self.degrees[mono.coef[v] as usize] as u32)
            .sum();
        (nondist, weight)
    }

    fn build_full(&self, m: usize, r: usize, q: usize) -> Result<FullSlice<R>, CdbaError> {
        let ring = &self.ring;
        let all: u32 = if m == 0 { 0 } else { (1u32 << m) - 1 };
        let mut monos = self.enumerate(m, r, q, all, 0);
        let mut rng = self
            .shuffle
            .map(|s| ChaCha8Rng::seed_from_u64(s ^ (m as u64) << 40 ^ (r as u64) << 20 ^ q as u64));
        if let Some(rng) = rng.as_mut() {
            monos.shuffle(rng);
        }
        let col: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let keys: Vec<(u32, u32, usize)> = monos
            .iter()
            .enumerate()
            .map(|(i, mo)| {
                let (a, b) = self.pivot_key(mo);
                (a, b, i)
            })
            .collect();
        let choose = |row: &SparseVec<R::Elem>| {
            row.iter()
                .enumerate()
                .filter(|(_, (_, e))| ring.is_unit(e))
                .max_by_key(|(_, (c, _))| keys[*c])
                .map(|(k, _)| k)
        };
        let mut el = Eliminator::new(ring);
        let mut rels: Vec<_> = if monos.is_empty() {
            Vec::new()
        } else {
            self.relations(m, false).into_iter().filter(|rel| rel.r <= r && rel.q <= q).collect()
        };
        if let Some(rng) = rng.as_mut() {
            rels.shuffle(rng);
        }
        for rel in &rels {
            let need = all & !rel.support;
            for mu in self.enumerate(m, r - rel.r, q - rel.q, need, rel.common_edges) {
                let mf = mu.factors();
                let mut acc: HashMap<usize, R::Elem> = HashMap::new();
                for (t, c) in &rel.terms {
                    let mut fs = mf.clone();
                    fs.extend(t.factors());
                    for (mono, e) in self.normalize(m, &fs, false) {
                        let j = *col.get(&mono).expect("relation product outside the slice");
                        let v = ring.mul(c, &e);
                        let slot = acc.entry(j).or_insert_with(|| ring.zero());
                        *slot = ring.add(slot, &v);
                    }
                }
                let mut row: SparseVec<R::Elem> = acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect();
                row.sort_unstable_by_key(|(c, _)| *c);
                el.insert(&row, &choose);
            }
        }
        if el.finish(&choose) > 0 {
            return Err(CdbaError::NotFree { m, r, q });
        }
        el.back_substitute();
        let mut basis_index = vec![usize::MAX; monos.len()];
        let mut basis = Vec::new();
        let mut free_cols: Vec<usize> = (0..monos.len()).filter(|&c| !el.is_pivot(c)).collect();
        free_cols.sort_by(|&a, &b| monos[a].cmp(&monos[b]));
        for c in free_cols {
            basis_index[c] = basis.len();
            basis.push(monos[c]);
        }
        let mut coords = HashMap::with_capacity(monos.len());
        for (c, mono) in monos.iter().enumerate() {
            if basis_index[c] != usize::MAX {
                coords.insert(*mono, Coord::Basis(basis_index[c]));
            } else {
                let row = el.pivot_row(c).expect("pivot");
                let mut v: SparseVec<R::Elem> = row
                    .iter()
                    .filter(|(j, _)| *j != c)
                    .map(|(j, e)| (basis_index[*j], ring.neg(e)))
                    .collect();
                v.sort_unstable_by_key(|(i, _)| *i);
                coords.insert(*mono, Coord::Combination(v));
            }
        }
        Ok(FullSlice {
            m,
            r,
            q,
            basis,
            coords,
            free_monomials: monos.len(),
        })
    }

    /// The cached full-support piece on vertices `0..m`.
    pub fn full_slice(&self, m: usize, r: usize, q: usize) -> Result<Arc<FullSlice<R>>, CdbaError> {
        if m > MAX_ARITY {
            return Err(CdbaError::TooManyVertices(m));
        }
        let cell = self.cache.entry((m, r, q)).or_default().clone();
        cell.get_or_init(|| self.build_full(m, r, q).map(Arc::new)).clone()
    }

    /// Number of cached slices.
    pub fn cached_slices(&self) -> usize {
        self.cache.len()
    }

    /// The multidegree `(−r, q)` of the algebra on `n` vertices.
    pub fn build_slice(&self, n: usize, r: usize, q: usize) -> Result<AlgebraSlice<R>, CdbaError> {
        let mut pieces = Vec::new();
        let mut basis = Vec::new();
        for s in 0u32..(1u32 << n) {
            let verts: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
            let full = self.full_slice(verts.len(), r, q)?;
            if full.dim() == 0 {
                continue;
            }
            let up = IndexMap::general(verts.clone(), n);
            for b in full.basis() {
                basis.push(relabel_monomial(b, &up));
            }
            pieces.push((s, full));
        }
        basis.sort();
        Ok(AlgebraSlice { n, r, q, pieces, basis })
    }

    // -------------------------------------------------------------- elements

    /// Reduces a free combination on `m` vertices to normal form.
    pub fn reduce(&self, m: usize, free: FreeComb<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        let ring = &self.ring;
        let mut acc = HashMap::new();
        for (mono, c) in free {
            if ring.is_zero(&c) {
                continue;
            }
            let s = mono.support();
            let verts: Vec<usize> = (0..m).filter(|v| s >> v & 1 == 1).collect();
            let mut down = vec![0; m];
            for (k, &v) in verts.iter().enumerate() {
                down[v] = k;
            }
            let compressed = relabel_monomial(&mono, &IndexMap::general(down, verts.len().max(1)));
            let compressed = Monomial {
                m: verts.len() as u8,
                ..compressed
            };
            let (r, q) = self.bidegree(&mono);
            let full = self.full_slice(verts.len(), r, q)?;
            let up = IndexMap::general(verts.clone(), m);
            for (i, e) in full.coordinates(&compressed, ring) {
                let b = relabel_monomial(&full.basis()[i], &up);
                add_term(ring, &mut acc, b, ring.mul(&c, &e));
            }
        }
        Ok(Element {
            arity: m,
            terms: sorted(acc),
        })
    }

    /// The normal form of an ordered product of generators.
    pub fn element(&self, m: usize, factors: &[Factor]) -> Result<Element<R::Elem>, CdbaError> {
        let free = self.normalize(m, factors, false);
        self.reduce(m, free)
    }

    pub fn add(&self, x: &Element<R::Elem>, y: &Element<R::Elem>) -> Element<R::Elem> {
        self.combine(x, y, false)
    }

    pub fn sub(&self, x: &Element<R::Elem>, y: &Element<R::Elem>) -> Element<R::Elem> {
        self.combine(x, y, true)
    }

    fn combine(&self, x: &Element<R::Elem>, y: &Element<R::Elem>, negate: bool) -> Element<R::Elem> {
        assert_eq!(x.arity, y.arity);
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in &x.terms {
            add_term(ring, &mut acc, *m, c.clone());
        }
        for (m, c) in &y.terms {
            add_term(ring, &mut acc, *m, if negate { ring.neg(c) } else { c.clone() });
        }
        Element {
            arity: x.arity,
            terms: sorted(acc),
        }
    }

    pub fn scale(&self, c: &R::Elem, x: &Element<R::Elem>) -> Element<R::Elem> {
        let ring = &self.ring;
        Element {
            arity: x.arity,
            terms: x
                .terms
                .iter()
                .map(|(m, e)| (*m, ring.mul(c, e)))
                .filter(|(_, e)| !ring.is_zero(e))
                .collect(),
        }
    }

    pub fn multiply(&self, x: &Element<R::Elem>, y: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        assert_eq!(x.arity, y.arity);
        let ring = &self.ring;
        let mut free = Vec::new();
        for (a, ca) in &x.terms {
            let fa = a.factors();
            for (b, cb) in &y.terms {
                let mut fs = fa.clone();
                fs.extend(b.factors());
                let c = ring.mul(ca, cb);
                for (mono, e) in self.normalize(x.arity, &fs, false) {
                    free.push((mono, ring.mul(&c, &e)));
                }
            }
        }
        self.reduce(x.arity, free)
    }

    /// `∂` of a single monomial as a free combination (Leibniz rule).
    pub fn differential_free(&self, mono: &Monomial) -> FreeComb<R::Elem> {
        let ring = &self.ring;
        let m = mono.arity();
        let fs = mono.factors();
        let mut out = Vec::new();
        let mut sign_before = false;
        for (t, f) in fs.iter().enumerate() {
            let (delta, a, b) = match *f {
                Factor::G(a, b) => (&self.delta_g, a, b),
                Factor::H(a, b) => (&self.delta_h, a, b),
                _ => {
                    sign_before ^= self.factor_odd(f);
                    continue;
                }
            };
            for (x, y, c) in delta {
                let mut new = fs[..t].to_vec();
                new.push(Factor::Coef { v: a, basis: *x as u8 });
                new.push(Factor::Coef { v: b, basis: *y as u8 });
                new.extend_from_slice(&fs[t + 1..]);
                for (mo, e) in self.normalize(m, &new, sign_before) {
                    out.push((mo, ring.mul(c, &e)));
                }
            }
            sign_before ^= self.factor_odd(f);
        }
        out
    }

    fn factor_odd(&self, f: &Factor) -> bool {
        match f {
            Factor::Coef { basis, .. } => self.odd[*basis as usize],
            Factor::Y(_) => self.y_odd,
            Factor::G(..) => self.g_odd,
            Factor::H(..) => self.h_odd,
        }
    }

    pub fn differential(&self, x: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        let ring = &self.ring;
        let mut free = Vec::new();
        for (mono, c) in &x.terms {
            for (mo, e) in self.differential_free(mono) {
                free.push((mo, ring.mul(c, &e)));
            }
        }
        self.reduce(x.arity, free)
    }

    /// The algebra map induced by a vertex map, on one monomial.
    pub fn map_free(&self, f: &IndexMap, mono: &Monomial) -> FreeComb<R::Elem> {
        let fs: Vec<Factor> = mono
            .factors()
            .into_iter()
            .map(|x| match x {
                Factor::Coef { v, basis } => Factor::Coef {
                    v: f.apply(v as usize) as u8,
                    basis,
                },
                Factor::Y(v) => Factor::Y(f.apply(v as usize) as u8),
                Factor::G(a, b) => Factor::G(f.apply(a as usize) as u8, f.apply(b as usize) as u8),
                Factor::H(a, b) => Factor::H(f.apply(a as usize) as u8, f.apply(b as usize) as u8),
            })
            .collect();
        self.normalize(f.target, &fs, false)
    }

    pub fn map_vertices(&self, f: &IndexMap, x: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        assert_eq!(f.source(), x.arity);
        let ring = &self.ring;
        let mut free = Vec::new();
        for (mono, c) in &x.terms {
            for (mo, e) in self.map_free(f, mono) {
                free.push((mo, ring.mul(c, &e)));
            }
        }
        self.reduce(f.target, free)
    }

    /// Face `d_i` on an element with vertices `0..=n`.
    pub fn face(&self, i: usize, x: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        self.map_vertices(&IndexMap::face(i, x.arity - 1), x)
    }

    /// Degeneracy `s_i` on an element with vertices `0..=n`.
    pub fn degeneracy(&self, i: usize, x: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        self.map_vertices(&IndexMap::degeneracy(i, x.arity - 1), x)
    }

    /// `x^σ` for a permutation `sigma` (`j ↦ sigma[j]`): generators at `j`
    /// move to `σ⁻¹(j)`.
    pub fn act(&self, sigma: &[usize], x: &Element<R::Elem>) -> Result<Element<R::Elem>, CdbaError> {
        let tau = IndexMap::permutation(sigma.to_vec()).inverse_permutation();
        self.map_vertices(&tau, x)
    }

    /// Human-readable name such as `b_1a_2y_0g_12`.
    pub fn label(&self, mono: &Monomial) -> String {
        let wide = mono.arity() > 10;
        let sub = |v: usize| if wide { format!("{{{v}}}") } else { v.to_string() };
        let pair = |a: usize, b: usize| if wide { format!("{{{a},{b}}}") } else { format!("{a}{b}") };
        let mut s = String::new();
        for v in 0..mono.arity() {
            if mono.coef[v] != 0 {
                s.push_str(&format!("{}_{}", self.names[mono.coef[v] as usize], sub(v)));
            }
        }
        for v in 0..mono.arity() {
            if mono.y >> v & 1 == 1 {
                s.push_str(&format!("y_{}", sub(v)));
            }
        }
        for (a, b) in mono.g_graph().edges() {
            s.push_str(&format!("g_{}", pair(a, b)));
        }
        for (a, b) in mono.h_graph().edges() {
            s.push_str(&format!("h_{}", pair(a, b)));
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn render(&self, x: &Element<R::Elem>) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(m, c)| format!("{}·{}", self.ring.render(c), self.label(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    // ---------------------------------------------------------------- oracle

    /// Independent dimension of the multidegree `(−r, q)` on `n ≤ 4`
    /// vertices: brute-force monomials, every ordered form of every relation
    /// times every cofactor, and a dense rank.
    pub fn oracle_slice_dimension(&self, n: usize, r: usize, q: usize) -> Result<usize, CdbaError> {
        assert!(n <= 4, "the oracle is limited to four vertices");
        let ring = &self.ring;
        let monos = self.brute_monomials(n, r, q);
        if monos.is_empty() {
            return Ok(0);
        }
        let col: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut columns: Vec<SparseVec<R::Elem>> = Vec::new();
        for rel in self.relations(n, true) {
            if rel.r > r || rel.q > q {
                continue;
            }
            for mu in self.brute_monomials(n, r - rel.r, q - rel.q) {
                let mut acc: HashMap<usize, R::Elem> = HashMap::new();
                for (t, c) in &rel.terms {
                    let mut fs = t.factors();
                    fs.extend(mu.factors());
                    for (mono, e) in self.normalize(n, &fs, false) {
                        let v = ring.mul(c, &e);
                        let slot = acc.entry(col[&mono]).or_insert_with(|| ring.zero());
                        *slot = ring.add(slot, &v);
                    }
                }
                let mut v: SparseVec<R::Elem> = acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect();
                v.sort_unstable_by_key(|(c, _)| *c);
                if !v.is_empty() {
                    columns.push(v);
                }
            }
        }
        let mat = ExactMatrix::from_columns(monos.len(), columns);
        Ok(monos.len() - rank(ring, &mat))
    }

    /// Every free monomial by exhaustive choice of each generator.
    fn brute_monomials(&self, n: usize, r: usize, q: usize) -> Vec<Monomial> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        let labels: usize = if self.flavor == Flavor::B { 3 } else { 2 };
        let total = labels.pow(pairs.len() as u32);
        for code in 0..total {
            let mut mono = Monomial::unit(n);
            let mut x = code;
            for &(a, b) in &pairs {
                match x % labels {
                    1 => mono.g |= 1u128 << pair_index(a, b),
                    2 => mono.h |= 1u128 << pair_index(a, b),
                    _ => {}
                }
                x /= labels;
            }
            if mono.edge_count() != r {
                continue;
            }
            let ys: u16 = if self.flavor == Flavor::A { 1 << n } else { 1 };
            for y in 0..ys {
                let ncoef = self.names.len();
                for code in 0..ncoef.pow(n as u32) {
                    let mut mo = mono;
                    mo.y = y;
                    let mut x = code;
                    for v in 0..n {
                        mo.coef[v] = (x % ncoef) as u8;
                        x /= ncoef;
                    }
                    if self.bidegree(&mo) == (r, q) {
                        out.push(mo);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Dimension predicted by the distinguished-forest basis: a coefficient
    /// per component, independent `y`s per vertex (flavor A) or a `g`/`h`
    /// label per edge (flavor B).
    pub fn closed_form_dimension(&self, n: usize, r: usize, q: usize) -> usize {
        if n == 0 {
            return usize::from(r == 0 && q == 0);
        }
        let mut total = 0;
        for forest in enumerate_graphs(n, r, GraphFilter::Distinguished) {
            let comps = forest.components().len();
            // generating function in the internal degree
            let mut poly = vec![0usize; q + 1];
            poly[0] = 1;
            let mul = |poly: &Vec<usize>, factor: &[(usize, usize)]| {
                let mut out = vec![0usize; q + 1];
                for (deg, &c) in poly.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &(fd, fc) in factor {
                        if deg + fd <= q {
                            out[deg + fd] += c * fc;
                        }
                    }
                }
                out
            };
            let coef: Vec<(usize, usize)> = self.degrees.iter().map(|&x| (x, 1)).collect();
            for _ in 0..comps {
                poly = mul(&poly, &coef);
            }
            match self.flavor {
                Flavor::A => {
                    for _ in 0..n {
                        poly = mul(&poly, &[(0, 1), (self.d - 1, 1)]);
                    }
                    for _ in 0..r {
                        poly = mul(&poly, &[(self.g_degree, 1)]);
                    }
                }
                Flavor::B => {
                    for _ in 0..r {
                        poly = mul(&poly, &[(self.g_degree, 1), (self.h_degree, 1)]);
                    }
                }
            }
            total += poly[q];
        }
        total
    }

    /// Compares the builder with the oracle (and the closed form) on every
    /// multidegree with `n ≤ max_n` and `* ≤ max_q`.
    pub fn cross_check(&self, max_n: usize, max_q: usize) -> Result<usize, CdbaError> {
        let mut checked = 0;
        for n in 0..=max_n {
            for r in 0..=n.saturating_sub(1).max(0) * n / 2 {
                for q in 0..=max_q {
                    let built = self.build_slice(n, r, q)?.dim();
                    let oracle = self.oracle_slice_dimension(n, r, q)?;
                    let closed = self.closed_form_dimension(n, r, q);
                    if built != oracle || built != closed {
                        return Err(CdbaError::OracleMismatch {
                            m: n,
                            r,
                            q,
                            built,
                            oracle: if built != oracle { oracle } else { closed },
                        });
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}

/// Relabels a monomial along an injective vertex map (no signs arise for
/// monotone maps).
fn relabel_monomial(mono: &Monomial, f: &IndexMap) -> Monomial {
    let mut out = Monomial::unit(f.target);
    for v in 0..mono.arity() {
        if mono.coef[v] != 0 {
            out.coef[f.apply(v)] = mono.coef[v];
        }
        if mono.y >> v & 1 == 1 {
            out.y |= 1 << f.apply(v);
        }
    }
    let mv = |bits: u128| {
        let mut o = 0u128;
        let mut b = bits;
        while b != 0 {
            let k = b.trailing_zeros() as usize;
            b &= b - 1;
            let (x, y) = pair_of(k);
            let (fx, fy) = (f.apply(x), f.apply(y));
            debug_assert!(fx < fy, "relabelling must be monotone");
            o |= 1u128 << pair_index(fx, fy);
        }
        o
    };
    out.g = mv(mono.g);
    out.h = mv(mono.h);
    out
}
