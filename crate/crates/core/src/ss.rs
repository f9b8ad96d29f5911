//! The E1 page as the normalized simplicial complex of `A_ℋ` / `B_ℋ`, its
//! total differential, the E2 page, positional stability, and the
//! four-manifold criterion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cdba::{Cdba, CdbaError, Element, Flavor, Monomial};
use crate::exactla::{homology_at, rank, rank_and_kernel, ExactError, ExactMatrix, GroupDescriptor, Ring, RingSpec, SparseVec};
use crate::graphs::IndexMap;
use crate::poincare::{PoincareAlgebra, PoincareError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsError {
    #[error(transparent)]
    Algebra(#[from] CdbaError),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
    #[error("at bidegree ({p}, {q}): {source}")]
    Linear { p: i64, q: usize, source: ExactError },
    #[error("chain condition violated at bidegree ({p}, {q}): td∘td has {nonzero} nonzero entries")]
    ChainCondition { p: i64, q: usize, nonzero: usize },
    #[error("the E2 page is not finite in each total degree for this algebra (dimension {dim}, minimal cover degree {cover})")]
    Unbounded { dim: usize, cover: usize },
    #[error("simplicial degree {0} needs more vertices than supported")]
    TooDeep(usize),
    #[error("four-manifold report: {0}")]
    FourManifold(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl SsError {
    fn at(p: i64, q: usize, e: ExactError) -> SsError {
        match e {
            ExactError::ChainCondition { nonzero } => SsError::ChainCondition { p, q, nonzero },
            source => SsError::Linear { p, q, source },
        }
    }
}

/// `A` when `χ = 0` in `R`, `B` when `χ` is a unit and `d` is even.
pub fn select_flavor<R: Ring>(alg: &PoincareAlgebra, ring: &R) -> Result<Flavor, CdbaError> {
    let chi = alg.euler_char(ring)?;
    if ring.is_zero(&chi) {
        Ok(Flavor::A)
    } else if ring.is_unit(&chi) && alg.dim() % 2 == 0 {
        Ok(Flavor::B)
    } else if ring.is_unit(&chi) {
        Err(CdbaError::OddDimension(alg.dim()))
    } else {
        Err(CdbaError::Flavor {
            flavor: Flavor::B,
            need: "zero or invertible",
            chi: ring.render(&chi),
            ring: ring.spec(),
        })
    }
}

/// Sign placed on the simplicial part of the total differential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// `td = ∂ + (−1)^⋆ Σ(−1)^i d_i`
    #[default]
    Internal,
    /// `td = (−1)^• ∂ + Σ(−1)^i d_i`
    Simplicial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Entry {
    /// simplicial degree `•` (the monomial lives on vertices `0..=n`)
    pub n: usize,
    pub monomial: Monomial,
    pub label: String,
}

/// Labeled basis of `E1^{p,q} = ⊕_{⋆−•=p} NA_•^{⋆,q}`.
#[derive(Clone, Debug)]
pub struct E1Slice {
    pub p: i64,
    pub q: usize,
    pub entries: Vec<E1Entry>,
    index: HashMap<(usize, Monomial), usize>,
}

impl E1Slice {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn index_of(&self, n: usize, mono: &Monomial) -> Option<usize> {
        self.index.get(&(n, *mono)).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }
}

/// `td : E1^{p,q} → E1^{p+1,q}`; columns are domain elements.
#[derive(Clone, Debug)]
pub struct TdMatrix<E> {
    pub domain: E1Slice,
    pub codomain: E1Slice,
    pub matrix: ExactMatrix<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub ring: RingSpec,
    pub max_degree: usize,
    /// nonzero entries only; absent bidegrees are zero within the bound
    pub entries: BTreeMap<(i64, usize), GroupDescriptor>,
}

impl E2Page {
    pub fn get(&self, p: i64, q: usize) -> GroupDescriptor {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero entries sorted by total degree, then `p`.
    pub fn rows(&self) -> Vec<((i64, usize), &GroupDescriptor)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, g)| (*k, g)).collect();
        v.sort_by_key(|((p, q), _)| (*p + *q as i64, *p));
        v
    }

    pub fn total_degree(&self, t: i64) -> Vec<((i64, usize), &GroupDescriptor)> {
        self.rows().into_iter().filter(|((p, q), _)| p + *q as i64 == t).collect()
    }

    /// `p<TAB>q<TAB>group` lines, omitting the unit entry at `(0, 0)`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for ((p, q), g) in self.rows() {
            if (p, q) == (0, 0) {
                continue;
            }
            s.push_str(&format!("{p}\t{q}\t{}\n", g.render(self.ring)));
        }
        s
    }

    /// The field table implied by this integral table (universal
    /// coefficients); valid for total degrees below `max_degree`.
    pub fn predict_mod_p(&self, p: u64, max_degree: usize) -> BTreeMap<(i64, usize), GroupDescriptor> {
        let mut out = BTreeMap::new();
        let mut keys: Vec<(i64, usize)> = self.entries.keys().copied().collect();
        // Tor terms land one column to the left
        keys.extend(self.entries.keys().map(|&(a, b)| (a - 1, b)));
        keys.sort();
        keys.dedup();
        for (a, b) in keys {
            if a + b as i64 > max_degree as i64 {
                continue;
            }
            let dim = self.get(a, b).mod_p_dimension(p, &self.get(a + 1, b));
            if dim > 0 {
                out.insert((a, b), GroupDescriptor::free(dim));
            }
        }
        out
    }

    /// The rational table implied by this integral table.
    pub fn predict_rational(&self) -> BTreeMap<(i64, usize), GroupDescriptor> {
        self.entries
            .iter()
            .filter(|(_, g)| g.free_rank > 0)
            .map(|(k, g)| (*k, GroupDescriptor::free(g.free_rank)))
            .collect()
    }
}

/// Whether a homology class representative survives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassStatus {
    pub is_cycle: bool,
    pub is_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// every possible `d_r` (r ≥ 2) into or out of the entry has a zero end
    Stable,
    /// some `d_r` may hit or leave the entry; lists the nonzero ends
    Unstable(Vec<(i64, usize)>),
    /// a potential end lies beyond the computed range
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityEntry {
    pub p: i64,
    pub q: usize,
    pub group: GroupDescriptor,
    pub verdict: Verdict,
    /// the space is known to have no cohomology in this total degree
    pub must_die: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: usize,
    /// the E2 entries in this total degree
    pub entries: Vec<(i64, usize)>,
    /// `Some(H^degree)` when every entry is stable (and, over ℤ, there is
    /// no extension problem)
    pub certified: Option<GroupDescriptor>,
    /// more than one nonzero entry shares this total degree
    pub collision: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub ring: RingSpec,
    pub max_degree: usize,
    pub entries: Vec<StabilityEntry>,
    pub degrees: Vec<DegreeSummary>,
    pub connectivity: Option<usize>,
}

impl StabilityReport {
    pub fn certified(&self, degree: usize) -> Option<&GroupDescriptor> {
        self.degrees.iter().find(|d| d.degree == degree)?.certified.as_ref()
    }

    pub fn must_die_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .entries
            .iter()
            .filter(|e| e.must_die)
            .map(|e| (e.p + e.q as i64) as usize)
            .collect();
        v.dedup();
        v
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let verdict = match &e.verdict {
                Verdict::Stable => "stable".to_string(),
                Verdict::Unstable(ends) => format!(
                    "unstable ({})",
                    ends.iter().map(|(p, q)| format!("({p},{q})")).collect::<Vec<_>>().join(" ")
                ),
                Verdict::Inconclusive => "inconclusive".to_string(),
            };
            s.push_str(&format!(
                "({},{})\t{}\t{}{}\n",
                e.p,
                e.q,
                e.group.render(self.ring),
                verdict,
                if e.must_die { "\tmust die" } else { "" }
            ));
        }
        for d in &self.degrees {
            let lhs = format!("H^{}", d.degree);
            match &d.certified {
                Some(g) => s.push_str(&format!("{lhs} = {}", g.render(self.ring))),
                None => s.push_str(&format!("{lhs} not certified")),
            }
            if d.collision {
                s.push_str("\t(bidegree collision)");
            }
            s.push('\n');
        }
        s
    }
}

/// Connectivity known independently of the spectral sequence: for an odd
/// sphere `S^d` with `d ≥ 5` the embedding space is `(d−2)`-connected.
pub fn known_connectivity(alg: &PoincareAlgebra) -> Option<usize> {
    let d = alg.dim();
    let sphere = alg.len() == 2 && alg.degree(1) == d;
    (sphere && d % 2 == 1 && d >= 5).then_some(d - 2)
}

#[derive(Clone, Debug)]
pub struct FourManifoldReport {
    pub b2: usize,
    pub domain_labels: Vec<String>,
    pub codomain_labels: Vec<String>,
    /// `α` as rendered entries, rows = codomain
    pub alpha: Vec<Vec<String>>,
    pub kernel: Vec<Vec<String>>,
    /// `pr₂(Δ) + 2g₀₁` in domain coordinates
    pub quotient_class: Vec<String>,
    pub class_in_kernel: bool,
    pub e2_m1_2: GroupDescriptor,
    pub e2_m2_4: GroupDescriptor,
    /// `(E2^{−1,2}, E2^{−2,4})` from the full machinery, when a flavor applies
    pub machinery: Option<(GroupDescriptor, GroupDescriptor)>,
    pub antisymmetric_injective: bool,
    /// the ring is not 𝔽₂, or the inverse intersection form has a nonzero
    /// diagonal entry
    pub inverse_diagonal: bool,
    pub satisfied: bool,
}

impl FourManifoldReport {
    pub fn render(&self, ring: RingSpec) -> String {
        let mut s = String::new();
        s.push_str(&format!("dim H^2: {}\n", self.b2));
        s.push_str(&format!("alpha\t{}\n", self.domain_labels.join("\t")));
        for (label, row) in self.codomain_labels.iter().zip(&self.alpha) {
            s.push_str(&format!("{label}\t{}\n", row.join("\t")));
        }
        s.push_str(&format!("kernel dimension: {}\n", self.kernel.len()));
        for v in &self.kernel {
            s.push_str(&format!("  [{}]\n", v.join(", ")));
        }
        s.push_str(&format!("quotient class: [{}]\n", self.quotient_class.join(", ")));
        s.push_str(&format!("E2(-1,2): {}\n", self.e2_m1_2.render(ring)));
        s.push_str(&format!("E2(-2,4): {}\n", self.e2_m2_4.render(ring)));
        if let Some((a, b)) = &self.machinery {
            s.push_str(&format!("machinery E2(-1,2): {}\n", a.render(ring)));
            s.push_str(&format!("machinery E2(-2,4): {}\n", b.render(ring)));
        }
        s.push_str(&format!("antisymmetric classes injective: {}\n", self.antisymmetric_injective));
        s.push_str(&format!("inverse form diagonal condition: {}\n", self.inverse_diagonal));
        s.push_str(&format!(
            "criterion: {}\n",
            if self.satisfied { "satisfied" } else { "fails" }
        ));
        s
    }
}

/// The spectral-sequence engine for one algebra over one ring.
pub struct Engine<R: Ring> {
    alg: PoincareAlgebra,
    cdba: Cdba<R>,
    sign: SignConvention,
    threads: Option<usize>,
}

impl<R: Ring> fmt::Debug for Engine<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("algebra", &self.alg.name())
            .field("cdba", &self.cdba)
            .field("sign", &self.sign)
            .finish()
    }
}

impl<R: Ring> Engine<R> {
    pub fn new(alg: &PoincareAlgebra, ring: R) -> Result<Engine<R>, SsError> {
        let flavor = select_flavor(alg, &ring)?;
        Self::with_flavor(alg, ring, flavor)
    }

    pub fn with_flavor(alg: &PoincareAlgebra, ring: R, flavor: Flavor) -> Result<Engine<R>, SsError> {
        Ok(Engine {
            alg: alg.clone(),
            cdba: Cdba::new(alg, ring, flavor)?,
            sign: SignConvention::default(),
            threads: None,
        })
    }

    pub fn with_sign(mut self, sign: SignConvention) -> Self {
        self.sign = sign;
        self
    }

    /// Worker count for table computations (default: rayon's global pool).
    pub fn with_threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    /// Randomized enumeration order inside slice construction.
    pub fn with_shuffle(mut self, seed: u64) -> Self {
        self.cdba = self.cdba.with_shuffle(seed);
        self
    }

    pub fn cdba(&self) -> &Cdba<R> {
        &self.cdba
    }

    pub fn algebra(&self) -> &PoincareAlgebra {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        self.cdba.ring()
    }

    pub fn flavor(&self) -> Flavor {
        self.cdba.flavor()
    }

    /// Largest `−p` with a possibly nonzero `E1^{p,q}`: each of the `•`
    /// normalized vertices needs an edge end or a positive-degree factor.
    pub fn depth_bound(&self, q: usize) -> usize {
        let d = self.alg.dim();
        let c = self.cdba.cover_degree();
        (0..=q / d).map(|r| 3 * r + (q - d * r) / c).max().unwrap_or(0)
    }

    /// Largest `q` with a possibly nonzero entry of total degree ≤ `t`.
    pub fn q_limit(&self, t: usize) -> Result<usize, SsError> {
        let d = self.alg.dim();
        let c = self.cdba.cover_degree();
        if d <= 3 || c <= 1 || c == usize::MAX {
            if c == usize::MAX {
                // only the unit: nothing beyond q = 0
                return Ok(0);
            }
            return Err(SsError::Unbounded { dim: d, cover: c });
        }
        // depth_bound(q) ≤ q·max(1/c, 3/d), so q − depth_bound(q) > t beyond these
        Ok((t * c / (c - 1)).max(t * d / (d - 3)))
    }

    /// `E1^{p,q}` with its labeled basis.
    pub fn e1_slice(&self, p: i64, q: usize) -> Result<E1Slice, SsError> {
        let mut entries = Vec::new();
        if p <= 0 {
            let depth = (-p) as usize;
            for n in 0..=depth {
                let r = depth - n;
                if n > 0 && n > 2 * r + q.saturating_sub(r * self.alg.dim()) / self.cdba.cover_degree().max(1) {
                    continue;
                }
                if n + 1 > crate::cdba::MAX_ARITY {
                    return Err(SsError::TooDeep(n));
                }
                let mut monos = Vec::new();
                let full = self.cdba.full_slice(n + 1, r, q)?;
                monos.extend(full.basis().iter().copied());
                if n > 0 {
                    let shifted = self.cdba.full_slice(n, r, q)?;
                    let up = IndexMap::general((1..=n).collect(), n + 1);
                    monos.extend(shifted.basis().iter().map(|m| relabel(m, &up, &self.cdba)));
                }
                monos.sort();
                for m in monos {
                    entries.push(E1Entry {
                        n,
                        label: self.cdba.label(&m),
                        monomial: m,
                    });
                }
            }
        }
        let index = entries.iter().enumerate().map(|(i, e)| ((e.n, e.monomial), i)).collect();
        Ok(E1Slice { p, q, entries, index })
    }

    fn required(n: usize) -> u32 {
        // vertices 1..=n
        ((1u32 << (n + 1)) - 1) & !1
    }

    /// `td` applied to one normalized basis monomial, as coordinates in the
    /// codomain slice.
    fn td_column(&self, entry: &E1Entry, r: usize, codomain: &E1Slice) -> Result<SparseVec<R::Elem>, SsError> {
        let ring = self.ring();
        let n = entry.n;
        let mut acc: HashMap<usize, R::Elem> = HashMap::new();
        let mut push = |out: Element<R::Elem>, deg: usize, sign: bool| -> Result<(), SsError> {
            for (m, c) in out.terms {
                let i = codomain.index_of(deg, &m).unwrap_or_else(|| {
                    panic!(
                        "td image {} lies outside E1({}, {})",
                        self.cdba.label(&m),
                        codomain.p,
                        codomain.q
                    )
                });
                let c = if sign { ring.neg(&c) } else { c };
                let slot = acc.entry(i).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &c);
            }
            Ok(())
        };
        // internal differential
        if r > 0 {
            let need = Self::required(n);
            let free: Vec<_> = self
                .cdba
                .differential_free(&entry.monomial)
                .into_iter()
                .filter(|(m, _)| m.support() & need == need)
                .collect();
            let out = self.cdba.reduce(n + 1, free)?;
            let sign = self.sign == SignConvention::Simplicial && n % 2 == 1;
            push(out, n, sign)?;
        }
        // simplicial differential
        if n > 0 {
            let need = Self::required(n - 1);
            let base = self.sign == SignConvention::Internal && r % 2 == 1;
            for i in 0..=n {
                let face = IndexMap::face(i, n);
                let free: Vec<_> = self
                    .cdba
                    .map_free(&face, &entry.monomial)
                    .into_iter()
                    .filter(|(m, _)| m.support() & need == need)
                    .collect();
                let out = self.cdba.reduce(n, free)?;
                push(out, n - 1, base ^ (i % 2 == 1))?;
            }
        }
        let mut col: SparseVec<R::Elem> = acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect();
        col.sort_unstable_by_key(|(i, _)| *i);
        Ok(col)
    }

    /// The total differential out of `E1^{p,q}`.
    pub fn assemble_td(&self, p: i64, q: usize) -> Result<TdMatrix<R::Elem>, SsError> {
        let domain = self.e1_slice(p, q)?;
        let codomain = self.e1_slice(p + 1, q)?;
        let mut cols = Vec::with_capacity(domain.dim());
        for e in &domain.entries {
            let r = (-p) as usize - e.n;
            cols.push(self.td_column(e, r, &codomain)?);
        }
        let matrix = ExactMatrix::from_columns(codomain.dim(), cols);
        Ok(TdMatrix {
            domain,
            codomain,
            matrix,
        })
    }

    fn homology(&self, p: i64, q: usize, d_in: &TdMatrix<R::Elem>, d_out: &TdMatrix<R::Elem>) -> Result<GroupDescriptor, SsError> {
        homology_at(self.ring(), &d_in.matrix, &d_out.matrix).map_err(|e| SsError::at(p, q, e))
    }

    pub fn e2_group(&self, p: i64, q: usize) -> Result<GroupDescriptor, SsError> {
        let d_in = self.assemble_td(p - 1, q)?;
        let d_out = self.assemble_td(p, q)?;
        self.homology(p, q, &d_in, &d_out)
    }

    fn run_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, SsError> {
        match self.threads {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| SsError::Pool(e.to_string()))?;
                Ok(pool.install(f))
            }
            None => Ok(f()),
        }
    }

    /// All E2 entries of total degree ≤ `t`.
    pub fn e2_table(&self, t: usize) -> Result<E2Page, SsError> {
        let qmax = self.q_limit(t)?;
        let mut cells = Vec::new();
        for q in 0..=qmax {
            let depth = self.depth_bound(q) as i64;
            let hi = (t as i64 - q as i64).min(0);
            let mut p = -depth - 1;
            while p <= hi {
                cells.push((p, q));
                p += 1;
            }
        }
        let ring = self.ring().spec();
        let entries = self.run_pool(|| -> Result<_, SsError> {
            let tds: HashMap<(i64, usize), TdMatrix<R::Elem>> = cells
                .par_iter()
                .map(|&(p, q)| Ok(((p, q), self.assemble_td(p, q)?)))
                .collect::<Result<_, SsError>>()?;
            let groups: Vec<((i64, usize), GroupDescriptor)> = cells
                .par_iter()
                .filter(|(p, q)| *p + *q as i64 <= t as i64 && tds.contains_key(&(p - 1, *q)))
                .map(|&(p, q)| Ok(((p, q), self.homology(p, q, &tds[&(p - 1, q)], &tds[&(p, q)])?)))
                .collect::<Result<_, SsError>>()?;
            Ok(groups.into_iter().filter(|(_, g)| !g.is_zero()).collect())
        })??;
        Ok(E2Page {
            ring,
            max_degree: t,
            entries,
        })
    }

    /// Positional `E2 = E∞` analysis for total degrees ≤ `t` (the table is
    /// computed one degree further).
    pub fn stability_report(&self, t: usize) -> Result<StabilityReport, SsError> {
        let page = self.e2_table(t + 1)?;
        Ok(stability_from_page(&page, t, known_connectivity(&self.alg)))
    }

    /// Expresses an element on `n + 1` vertices in the basis of `E1^{p,q}`
    /// (after projecting to the normalized part).
    pub fn e1_vector(&self, slice: &E1Slice, x: &Element<R::Elem>) -> Result<SparseVec<R::Elem>, SsError> {
        let n = x.arity - 1;
        let need = Self::required(n);
        let free: Vec<_> = x.terms.iter().filter(|(m, _)| m.support() & need == need).cloned().collect();
        let red = self.cdba.reduce(x.arity, free)?;
        let mut v: SparseVec<R::Elem> = red
            .terms
            .into_iter()
            .map(|(m, c)| {
                let i = slice.index_of(n, &m).ok_or_else(|| {
                    SsError::FourManifold(format!("{} is not in E1({}, {})", self.cdba.label(&m), slice.p, slice.q))
                })?;
                Ok((i, c))
            })
            .collect::<Result<_, SsError>>()?;
        v.sort_unstable_by_key(|(i, _)| *i);
        Ok(v)
    }

    /// Tests a representative of `E2^{p,q}` (over a field ring).
    pub fn class_status(&self, p: i64, q: usize, x: &Element<R::Elem>) -> Result<ClassStatus, SsError> {
        let ring = self.ring();
        let d_out = self.assemble_td(p, q)?;
        let d_in = self.assemble_td(p - 1, q)?;
        let v = self.e1_vector(&d_out.domain, x)?;
        let is_cycle = d_out.matrix.apply(ring, &v).is_empty();
        let base = rank(ring, &d_in.matrix);
        let mut cols = d_in.matrix.columns().to_vec();
        cols.push(v);
        let ext = ExactMatrix::from_columns(d_in.matrix.rows(), cols);
        let is_boundary = rank(ring, &ext) == base;
        Ok(ClassStatus { is_cycle, is_boundary })
    }

    /// The four-manifold report (`d = 4`, ring a field).
    pub fn four_manifold(alg: &PoincareAlgebra, ring: R) -> Result<FourManifoldReport, SsError> {
        four_manifold_report(alg, ring)
    }
}

fn relabel<R: Ring>(m: &Monomial, f: &IndexMap, cdba: &Cdba<R>) -> Monomial {
    // monotone relabelling never produces a sign; reuse the algebra map
    let out = cdba.map_free(f, m);
    debug_assert_eq!(out.len(), 1);
    out[0].0
}

/// Stability analysis of a computed page for total degrees ≤ `t`.
pub fn stability_from_page(page: &E2Page, t: usize, connectivity: Option<usize>) -> StabilityReport {
    let limit = page.max_degree as i64;
    let nonzero = |p: i64, q: i64| q >= 0 && p <= 0 && page.entries.contains_key(&(p, q as usize));
    let mut entries = Vec::new();
    for ((p, q), g) in page.rows() {
        let total = p + q as i64;
        if total > t as i64 || (p, q) == (0, 0) {
            continue;
        }
        let qi = q as i64;
        let mut ends = Vec::new();
        let mut inconclusive = total + 1 > limit;
        // targets (p + r, q − r + 1)
        for r in 2..=(-p).max(0) {
            if nonzero(p + r, qi - r + 1) {
                ends.push((p + r, (qi - r + 1) as usize));
            }
        }
        // sources (p − r, q + r − 1): every nonzero entry of total degree
        // total − 1 is in the table, so scanning it suffices
        if total - 1 > limit {
            inconclusive = true;
        }
        for ((a, b), _) in page.total_degree(total - 1) {
            let r = p - a;
            if r >= 2 && b as i64 == qi + r - 1 {
                ends.push((a, b));
            }
        }
        let verdict = if !ends.is_empty() {
            Verdict::Unstable(ends)
        } else if inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Stable
        };
        let must_die = connectivity.is_some_and(|c| total >= 1 && total as usize <= c);
        entries.push(StabilityEntry {
            p,
            q,
            group: g.clone(),
            verdict,
            must_die,
        });
    }
    let mut degrees = Vec::new();
    for deg in 1..=t {
        let here: Vec<&StabilityEntry> = entries.iter().filter(|e| e.p + e.q as i64 == deg as i64).collect();
        let collision = here.len() > 1;
        let all_stable = here.iter().all(|e| e.verdict == Verdict::Stable);
        let certified = if !all_stable || total_degree_inconclusive(page, deg) {
            None
        } else if page.ring.is_field() {
            Some(here.iter().fold(GroupDescriptor::zero(), |acc, e| acc.sum(&e.group)))
        } else if here.len() <= 1 {
            Some(here.first().map(|e| e.group.clone()).unwrap_or_default())
        } else if here.iter().all(|e| e.group.torsion.is_empty()) {
            // free filtration quotients split
            Some(here.iter().fold(GroupDescriptor::zero(), |acc, e| acc.sum(&e.group)))
        } else {
            None
        };
        degrees.push(DegreeSummary {
            degree: deg,
            entries: here.iter().map(|e| (e.p, e.q)).collect(),
            certified,
            collision,
        });
    }
    StabilityReport {
        ring: page.ring,
        max_degree: t,
        entries,
        degrees,
        connectivity,
    }
}

fn total_degree_inconclusive(page: &E2Page, deg: usize) -> bool {
    deg + 1 > page.max_degree
}

/// `α : (ℋ²)^{⊗2} ⊕ 𝕜g₀₁ → (ℋ²)^{⊗2} ⊕ ℋ⁴/χℋ⁴` and the resulting criterion.
pub fn four_manifold_report<R: Ring>(alg: &PoincareAlgebra, ring: R) -> Result<FourManifoldReport, SsError> {
    if alg.dim() != 4 {
        return Err(SsError::FourManifold(format!("dimension {} is not 4", alg.dim())));
    }
    if !ring.is_field() {
        return Err(SsError::FourManifold(format!("{} is not a field", ring.spec())));
    }
    let two: Vec<usize> = (0..alg.len()).filter(|&i| alg.degree(i) == 2).collect();
    let b2 = two.len();
    if b2 == 0 {
        return Err(SsError::FourManifold(
            "H^2 = 0; this case is covered by the simply connected sphere results, not by the criterion".into(),
        ));
    }
    let top = alg.top();
    let names: Vec<String> = alg.basis().iter().map(|b| b.name.clone()).collect();
    let chi = alg.euler_char(&ring)?;
    let with_top = ring.is_zero(&chi);
    let pos = |i: usize, j: usize| i * b2 + j;
    let mut domain_labels = Vec::new();
    for &i in &two {
        for &j in &two {
            domain_labels.push(format!("{}⊗{}", names[i], names[j]));
        }
    }
    let mut codomain_labels = domain_labels.clone();
    domain_labels.push("g01".into());
    if with_top {
        codomain_labels.push(names[top].clone());
    }
    let rows = codomain_labels.len();
    let coef = |c: &crate::poincare::Rational| ring.from_rational(c).ok_or(PoincareError::NotRepresentable(ring.spec()));
    let mut cols: Vec<SparseVec<R::Elem>> = Vec::new();
    for (a, &i) in two.iter().enumerate() {
        for (b, &j) in two.iter().enumerate() {
            let mut col: HashMap<usize, R::Elem> = HashMap::new();
            let mut add = |k: usize, e: R::Elem| {
                let slot = col.entry(k).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &e);
            };
            add(pos(a, b), ring.from_i64(-1));
            add(pos(b, a), ring.from_i64(-1));
            if with_top {
                for (k, c) in alg.product(i, j) {
                    if *k == top {
                        add(rows - 1, coef(c)?);
                    }
                }
            }
            cols.push(sparse(&ring, col));
        }
    }
    let delta = alg.diagonal_class(&ring)?;
    let index_of_two = |x: usize| two.iter().position(|&y| y == x);
    let mut pr1: HashMap<usize, R::Elem> = HashMap::new();
    let mut pr2: HashMap<usize, R::Elem> = HashMap::new();
    let mut diagonal_nonzero = false;
    for (idx, c) in &delta.terms {
        match (index_of_two(idx[0]), index_of_two(idx[1])) {
            (Some(a), Some(b)) => {
                pr1.insert(pos(a, b), c.clone());
                pr2.insert(pos(a, b), c.clone());
                if a == b && !ring.is_zero(c) {
                    diagonal_nonzero = true;
                }
            }
            _ if idx[0] == 0 && idx[1] == top && with_top => {
                pr1.insert(rows - 1, c.clone());
            }
            _ => {}
        }
    }
    cols.push(sparse(&ring, pr1));
    let alpha = ExactMatrix::from_columns(rows, cols);
    let (_, kernel) = rank_and_kernel(&ring, &alpha);
    let g01 = b2 * b2;
    pr2.insert(g01, ring.from_i64(2));
    let class = sparse(&ring, pr2);
    let class_in_kernel = alpha.apply(&ring, &class).is_empty();
    if !class_in_kernel {
        return Err(SsError::FourManifold("pr2(Δ) + 2g01 is not in the kernel of α".into()));
    }
    let class_nonzero = !class.is_empty();
    let e2_m2_4 = GroupDescriptor::free(kernel.len() - usize::from(class_nonzero));
    let e2_m1_2 = GroupDescriptor::free(b2);
    // antisymmetric classes stay independent modulo the quotient class
    let mut anti: Vec<SparseVec<R::Elem>> = Vec::new();
    for a in 0..b2 {
        for b in a + 1..b2 {
            anti.push(vec![(pos(a, b), ring.one()), (pos(b, a), ring.from_i64(-1))]);
        }
    }
    let n_anti = anti.len();
    let mut with_class = anti.clone();
    with_class.push(class.clone());
    let antisymmetric_injective = rank(&ring, &ExactMatrix::from_columns(g01 + 1, with_class)) == n_anti + usize::from(class_nonzero);
    let inverse_diagonal = ring.spec() != RingSpec::PrimeField(2) || diagonal_nonzero;
    let machinery = match select_flavor(alg, &ring) {
        Ok(flavor) => {
            let engine = Engine::with_flavor(alg, ring.clone(), flavor)?;
            Some((engine.e2_group(-1, 2)?, engine.e2_group(-2, 4)?))
        }
        Err(_) => None,
    };
    let dense = alpha.to_dense(&ring);
    Ok(FourManifoldReport {
        b2,
        domain_labels,
        codomain_labels,
        alpha: dense.iter().map(|r| r.iter().map(|e| ring.render(e)).collect()).collect(),
        kernel: kernel.iter().map(|v| v.iter().map(|e| ring.render(e)).collect()).collect(),
        quotient_class: (0..=g01)
            .map(|i| {
                class
                    .iter()
                    .find(|(j, _)| *j == i)
                    .map(|(_, e)| ring.render(e))
                    .unwrap_or_else(|| "0".into())
            })
            .collect(),
        class_in_kernel,
        e2_m1_2,
        e2_m2_4,
        machinery,
        antisymmetric_injective,
        inverse_diagonal,
        satisfied: antisymmetric_injective && inverse_diagonal,
    })
}

fn sparse<R: Ring>(ring: &R, map: HashMap<usize, R::Elem>) -> SparseVec<R::Elem> {
    let mut v: SparseVec<R::Elem> = map.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}
