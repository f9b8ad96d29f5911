//! Fixtures shared by the benchmarks.

use cechss::{PoincareAlgebra, RingSpec};

/// One table computation: an algebra, a ring and a total degree.
pub struct TableCase {
    pub name: &'static str,
    pub algebra: &'static str,
    pub ring: RingSpec,
    pub max_degree: usize,
}

impl TableCase {
    pub fn algebra(&self) -> PoincareAlgebra {
        PoincareAlgebra::builtin(self.algebra).expect("built-in algebra")
    }
}

/// Tables that finish in well under a second each.
pub const TABLES: &[TableCase] = &[
    TableCase {
        name: "sphere5_q_t9",
        algebra: "sphere:5",
        ring: RingSpec::Rationals,
        max_degree: 9,
    },
    TableCase {
        name: "sphere6_f3_t11",
        algebra: "sphere:6",
        ring: RingSpec::PrimeField(3),
        max_degree: 11,
    },
    TableCase {
        name: "sphere7_q_t13",
        algebra: "sphere:7",
        ring: RingSpec::Rationals,
        max_degree: 13,
    },
    TableCase {
        name: "product_13_8_z_t34",
        algebra: "product_spheres:13,8",
        ring: RingSpec::Integers,
        max_degree: 34,
    },
];
