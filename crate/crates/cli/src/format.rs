//! Byte-deterministic text formats.

use cechss::exactla::rank;
use cechss::{E2Page, E1Slice, Ring, TdMatrix};

/// `p<TAB>q<TAB>group` for every nonzero entry, sorted by `(p+q, p)`.
pub fn table(page: &E2Page) -> String {
    page.to_tsv()
}

/// Comment lines `#<TAB>p<TAB>q<TAB>label label …` listing the E1 basis
/// behind every nonzero entry of the table.
pub fn label_block(page: &E2Page, slices: &[E1Slice]) -> String {
    let mut s = String::new();
    for ((p, q), _) in page.rows() {
        if (p, q) == (0, 0) {
            continue;
        }
        if let Some(slice) = slices.iter().find(|x| (x.p, x.q) == (p, q)) {
            s.push_str(&format!("#\t{p}\t{q}\t{}\n", slice.labels().join(" ")));
        }
    }
    s
}

/// The matrix of `td` out of one bidegree: the header row holds the
/// codomain labels, each following row is one domain element and its image
/// coefficients. A closing comment records the rank.
pub fn td_dump<R: Ring>(ring: &R, td: &TdMatrix<R::Elem>) -> String {
    let mut s = format!("({},{})", td.domain.p, td.domain.q);
    for label in td.codomain.labels() {
        s.push('\t');
        s.push_str(&label);
    }
    s.push('\n');
    for (j, e) in td.domain.entries.iter().enumerate() {
        s.push_str(&e.label);
        for i in 0..td.codomain.dim() {
            s.push('\t');
            match td.matrix.get(i, j) {
                Some(c) => s.push_str(&ring.render(c)),
                None => s.push('0'),
            }
        }
        s.push('\n');
    }
    s.push_str(&format!("# rank {}\n", rank(ring, &td.matrix)));
    s
}
