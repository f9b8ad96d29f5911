//! Labelled graphs on at most 16 vertices: components, forests,
//! distinguished graphs, push-forward along index maps and edge signs.
//!
//! Vertices are numbered from 0. Edge `(i, j)` with `i < j` occupies bit
//! [`pair_index`]`(i, j)`, and bit order equals lexicographic pair order.

use std::fmt;

pub const MAX_VERTICES: usize = 16;

/// Position of the pair `i < j` in lexicographic order over 16 vertices.
pub const fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < MAX_VERTICES);
    i * (2 * MAX_VERTICES - 1 - i) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_of(index: usize) -> (usize, usize) {
    PAIRS[index]
}

const PAIRS: [(usize, usize); MAX_VERTICES * (MAX_VERTICES - 1) / 2] = {
    let mut out = [(0, 0); MAX_VERTICES * (MAX_VERTICES - 1) / 2];
    let mut i = 0;
    let mut k = 0;
    while i < MAX_VERTICES {
        let mut j = i + 1;
        while j < MAX_VERTICES {
            out[k] = (i, j);
            k += 1;
            j += 1;
        }
        i += 1;
    }
    out
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: u128,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFilter {
    All,
    Forest,
    Distinguished,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        Graph { n, edges: 0 }
    }

    /// Builds a graph from unordered pairs; panics on loops or out-of-range vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            assert!(a != b && a < n && b < n, "bad edge ({a},{b}) on {n} vertices");
            g.edges |= 1u128 << pair_index(a.min(b), a.max(b));
        }
        g
    }

    /// Graph from an edge bitset in [`pair_index`] layout.
    pub fn from_bits(n: usize, bits: u128) -> Graph {
        let g = Graph { n, edges: bits };
        debug_assert!(g.edges().all(|(_, j)| j < n), "edge outside {n} vertices");
        g
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.edges >> pair_index(i.min(j), i.max(j)) & 1 == 1
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut bits = self.edges;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(PAIRS[k])
        })
    }

    /// Connected components, each sorted, ordered by minimal vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (a, b) in self.edges() {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(v);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.components().len() + self.edge_count() == self.n
    }

    /// Every vertex is the larger endpoint of at most one edge.
    pub fn is_distinguished(&self) -> bool {
        let mut seen = 0u32;
        for (_, j) in self.edges() {
            if seen >> j & 1 == 1 {
                return false;
            }
            seen |= 1 << j;
        }
        true
    }

    pub fn passes(&self, filter: GraphFilter) -> bool {
        match filter {
            GraphFilter::All => true,
            GraphFilter::Forest => self.is_forest(),
            GraphFilter::Distinguished => self.is_distinguished(),
        }
    }

    /// Vertices touched by an edge, as a bitmask.
    pub fn endpoint_mask(&self) -> u32 {
        self.edges().fold(0, |m, (a, b)| m | 1 << a | 1 << b)
    }
}

/// All graphs on `n` vertices with `r` edges passing `filter`, in
/// lexicographic order of their edge lists.
pub fn enumerate_graphs(n: usize, r: usize, filter: GraphFilter) -> Vec<Graph> {
    assert!(n >= 1 && n <= MAX_VERTICES);
    let pairs: Vec<usize> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| pair_index(i, j)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(
        pairs: &[usize],
        start: usize,
        r: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        filter: GraphFilter,
        out: &mut Vec<Graph>,
    ) {
        if chosen.len() == r {
            let g = Graph {
                n,
                edges: chosen.iter().fold(0u128, |m, &k| m | 1u128 << k),
            };
            if g.passes(filter) {
                out.push(g);
            }
            return;
        }
        for k in start..pairs.len() {
            if pairs.len() - k < r - chosen.len() {
                break;
            }
            chosen.push(pairs[k]);
            rec(pairs, k + 1, r, n, chosen, filter, out);
            chosen.pop();
        }
    }
    rec(&pairs, 0, r, n, &mut chosen, filter, &mut out);
    out
}

/// What kind of map an [`IndexMap`] is (informational only).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMapKind {
    Face(usize),
    Degeneracy(usize),
    Permutation,
    General,
}

/// A map `{0..source} → {0..target}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    pub kind: IndexMapKind,
    pub map: Vec<usize>,
    pub target: usize,
}

impl IndexMap {
    pub fn general(map: Vec<usize>, target: usize) -> IndexMap {
        assert!(map.iter().all(|&v| v < target));
        IndexMap {
            kind: IndexMapKind::General,
            map,
            target,
        }
    }

    /// Face `d_i` on `n + 1` indices `0..=n`: merges `i` and `i + 1` for
    /// `i < n`; `d_n` first rotates `n` to the front and merges it with 0.
    pub fn face(i: usize, n: usize) -> IndexMap {
        assert!(i <= n && n >= 1);
        let map = (0..=n)
            .map(|j| {
                if i == n {
                    if j == n {
                        0
                    } else {
                        j
                    }
                } else if j <= i {
                    j
                } else {
                    j - 1
                }
            })
            .collect();
        IndexMap {
            kind: IndexMapKind::Face(i),
            map,
            target: n,
        }
    }

    /// Degeneracy `s_i` on `n + 1` indices: skips index `i + 1`.
    pub fn degeneracy(i: usize, n: usize) -> IndexMap {
        assert!(i <= n);
        let map = (0..=n).map(|j| if j <= i { j } else { j + 1 }).collect();
        IndexMap {
            kind: IndexMapKind::Degeneracy(i),
            map,
            target: n + 2,
        }
    }

    /// Relabelling `j ↦ perm[j]`.
    pub fn permutation(perm: Vec<usize>) -> IndexMap {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        IndexMap {
            kind: IndexMapKind::Permutation,
            map: perm,
            target: n,
        }
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &IndexMap) -> IndexMap {
        assert_eq!(self.target, other.source());
        IndexMap::general(self.map.iter().map(|&v| other.map[v]).collect(), other.target)
    }

    pub fn inverse_permutation(&self) -> IndexMap {
        let mut inv = vec![0; self.map.len()];
        for (j, &p) in self.map.iter().enumerate() {
            inv[p] = j;
        }
        IndexMap::permutation(inv)
    }
}

/// Some edge of the graph became a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collapse;

/// `E(f(G)) = {(f(i), f(j))}`; a loop yields [`Collapse`].
pub fn push_graph(f: &IndexMap, g: &Graph) -> Result<Graph, Collapse> {
    assert_eq!(f.source(), g.n);
    let mut out = Graph::empty(f.target);
    for (a, b) in g.edges() {
        let (x, y) = (f.apply(a), f.apply(b));
        if x == y {
            return Err(Collapse);
        }
        out.edges |= 1u128 << pair_index(x.min(y), x.max(y));
    }
    Ok(out)
}

/// Sign of the permutation induced on lexicographically ordered edge lists
/// by relabelling with the permutation `sigma`.
pub fn sigma_sign(sigma: &IndexMap, g: &Graph) -> i8 {
    let images: Vec<usize> = g
        .edges()
        .map(|(a, b)| {
            let (x, y) = (sigma.apply(a), sigma.apply(b));
            pair_index(x.min(y), x.max(y))
        })
        .collect();
    let mut inversions = 0;
    for s in 0..images.len() {
        for t in s + 1..images.len() {
            if images[s] > images[t] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
