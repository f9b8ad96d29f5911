use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use super::matrix::SparseVec;
use super::Ring;

/// Incremental sparse row echelon form with unit pivots.
///
/// Rows are reduced against existing pivots in creation order: a pivot row
/// only ever contains pivot columns created after it, so one heap-ordered
/// sweep clears every pivot column. Rows whose reduction has no acceptable
/// pivot are parked in a residual list and retried by [`Eliminator::finish`].
#[derive(Debug)]
pub struct Eliminator<'r, R: Ring> {
    ring: &'r R,
    pivot_col: Vec<usize>,
    rows: Vec<SparseVec<R::Elem>>,
    id_of_col: HashMap<usize, usize>,
    residual: Vec<SparseVec<R::Elem>>,
}

impl<'r, R: Ring> Eliminator<'r, R> {
    pub fn new(ring: &'r R) -> Self {
        Eliminator {
            ring,
            pivot_col: Vec::new(),
            rows: Vec::new(),
            id_of_col: HashMap::new(),
            residual: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.id_of_col.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec<R::Elem>> {
        self.id_of_col.get(&col).map(|&id| &self.rows[id])
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_col
    }

    pub fn residual(&self) -> &[SparseVec<R::Elem>] {
        &self.residual
    }

    pub fn take_residual(&mut self) -> Vec<SparseVec<R::Elem>> {
        std::mem::take(&mut self.residual)
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: &SparseVec<R::Elem>) -> SparseVec<R::Elem> {
        if self.rows.is_empty() || row.is_empty() {
            return row.clone();
        }
        let ring = self.ring;
        let mut acc: HashMap<usize, R::Elem> = row.iter().cloned().collect();
        let mut heap = BinaryHeap::new();
        for (c, _) in row {
            if let Some(&id) = self.id_of_col.get(c) {
                heap.push(Reverse(id));
            }
        }
        while let Some(Reverse(id)) = heap.pop() {
            let c = self.pivot_col[id];
            let Some(v) = acc.remove(&c) else { continue };
            let f = ring.neg(&v);
            for (col, e) in &self.rows[id] {
                if *col == c {
                    continue;
                }
                match acc.entry(*col) {
                    Entry::Occupied(mut o) => {
                        ring.add_mul_assign(o.get_mut(), &f, e);
                        if ring.is_zero(o.get()) {
                            o.remove();
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(ring.mul(&f, e));
                        if let Some(&nid) = self.id_of_col.get(col) {
                            heap.push(Reverse(nid));
                        }
                    }
                }
            }
        }
        let mut out: SparseVec<R::Elem> = acc.into_iter().collect();
        out.sort_unstable_by_key(|(c, _)| *c);
        out
    }

    /// Reduces `row` and, if `choose` names a unit entry of the result, makes
    /// it a new pivot. Returns `true` when the rank grew.
    pub fn insert<F>(&mut self, row: &SparseVec<R::Elem>, choose: &F) -> bool
    where
        F: Fn(&SparseVec<R::Elem>) -> Option<usize>,
    {
        let reduced = self.reduce(row);
        self.place(reduced, choose)
    }

    fn place<F>(&mut self, reduced: SparseVec<R::Elem>, choose: &F) -> bool
    where
        F: Fn(&SparseVec<R::Elem>) -> Option<usize>,
    {
        if reduced.is_empty() {
            return false;
        }
        match choose(&reduced) {
            Some(k) => {
                let (col, lead) = reduced[k].clone();
                let inv = self
                    .ring
                    .inverse(&lead)
                    .expect("pivot chooser must return a unit entry");
                let normalized = if self.ring.is_one(&inv) {
                    reduced
                } else {
                    reduced
                        .into_iter()
                        .map(|(c, e)| (c, self.ring.mul(&inv, &e)))
                        .collect()
                };
                let id = self.rows.len();
                self.pivot_col.push(col);
                self.rows.push(normalized);
                self.id_of_col.insert(col, id);
                true
            }
            None => {
                self.residual.push(reduced);
                false
            }
        }
    }

    /// Retries parked rows until no new pivot appears; returns the number of
    /// rows still without a unit pivot.
    pub fn finish<F>(&mut self, choose: &F) -> usize
    where
        F: Fn(&SparseVec<R::Elem>) -> Option<usize>,
    {
        loop {
            let parked = std::mem::take(&mut self.residual);
            let before = self.rows.len();
            for row in parked {
                let reduced = self.reduce(&row);
                self.place(reduced, choose);
            }
            if self.rows.len() == before {
                break;
            }
        }
        let cleaned: Vec<_> = std::mem::take(&mut self.residual)
            .into_iter()
            .map(|r| self.reduce(&r))
            .filter(|r| !r.is_empty())
            .collect();
        self.residual = cleaned;
        self.residual.len()
    }

    /// Makes every pivot row free of all other pivot columns (reduced echelon form).
    pub fn back_substitute(&mut self) {
        for id in (0..self.rows.len()).rev() {
            let c = self.pivot_col[id];
            let rest: SparseVec<R::Elem> = self.rows[id]
                .iter()
                .filter(|(col, _)| *col != c)
                .cloned()
                .collect();
            let mut reduced = self.reduce(&rest);
            let pos = reduced.partition_point(|(col, _)| *col < c);
            reduced.insert(pos, (c, self.ring.one()));
            self.rows[id] = reduced;
        }
    }

    /// Adds an externally computed pivot row (already free of other pivot
    /// columns' leading entries, with a unit at `col`).
    pub fn force_pivot(&mut self, row: SparseVec<R::Elem>, col: usize) {
        let choose = |r: &SparseVec<R::Elem>| r.iter().position(|(c, _)| *c == col);
        let reduced = self.reduce(&row);
        let ok = self.place(reduced, &choose);
        debug_assert!(ok);
    }
}

/// Pivot on the first entry equal to ±1 (integral elimination without growth).
pub fn choose_plus_minus_one<R: Ring>(ring: &R) -> impl Fn(&SparseVec<R::Elem>) -> Option<usize> + '_ {
    move |row| {
        let one = ring.one();
        let m1 = ring.neg(&one);
        let mut best: Option<usize> = None;
        for (k, (_, e)) in row.iter().enumerate() {
            if *e == one || *e == m1 {
                best = Some(k);
                break;
            }
        }
        best
    }
}

/// Pivot on the first unit entry.
pub fn choose_any_unit<R: Ring>(ring: &R) -> impl Fn(&SparseVec<R::Elem>) -> Option<usize> + '_ {
    move |row| row.iter().position(|(_, e)| ring.is_unit(e))
}
