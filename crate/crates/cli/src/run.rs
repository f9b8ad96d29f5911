//! Command execution and the mapping from failures to exit codes.

use std::fs;

use cechss::exactla::ExactError;
use cechss::graphs::enumerate_graphs;
use cechss::ss::known_connectivity;
use cechss::{
    four_manifold_report, stability_from_page, CdbaError, E2Page, Engine, GraphFilter, PoincareAlgebra, PoincareError,
    PrimeField, Rationals, Ring, RingSpec, RingVisitor, SsError,
};
use thiserror::Error;

use crate::algebra_file::{AlgebraFile, AlgebraFileError};
use crate::config::{AlgebraSource, Command, RunConfig};
use crate::format;

/// Name of the environment variable capping the worker pool.
pub const THREADS_ENV: &str = "CECHSS_THREADS";

#[derive(Debug, Error)]
pub enum RunError {
    /// bad input: arguments, algebra files, non-Poincaré algebras
    #[error("{0}")]
    Validation(String),
    /// well-formed input outside what the engine handles
    #[error("{0}")]
    Unsupported(String),
    /// a computed chain condition or cross-check failed
    #[error("{0}")]
    Internal(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 1,
            RunError::Unsupported(_) => 2,
            RunError::Internal(_) => 3,
        }
    }
}

impl From<PoincareError> for RunError {
    fn from(e: PoincareError) -> Self {
        match e {
            PoincareError::NotRepresentable(_) | PoincareError::PairingDegenerate(_) => {
                RunError::Unsupported(e.to_string())
            }
            _ => RunError::Validation(e.to_string()),
        }
    }
}

impl From<CdbaError> for RunError {
    fn from(e: CdbaError) -> Self {
        match e {
            CdbaError::Poincare(p) => p.into(),
            CdbaError::MixedRelation(_) | CdbaError::OracleMismatch { .. } => RunError::Internal(e.to_string()),
            _ => RunError::Unsupported(e.to_string()),
        }
    }
}

impl From<SsError> for RunError {
    fn from(e: SsError) -> Self {
        match e {
            SsError::Algebra(c) => c.into(),
            SsError::Poincare(p) => p.into(),
            SsError::Unbounded { .. } | SsError::TooDeep(_) | SsError::FourManifold(_) => {
                RunError::Unsupported(e.to_string())
            }
            SsError::Linear {
                source: ExactError::TorsionOverflow(_) | ExactError::UnsupportedRing { .. },
                ..
            } => RunError::Unsupported(e.to_string()),
            _ => RunError::Internal(e.to_string()),
        }
    }
}

impl From<AlgebraFileError> for RunError {
    fn from(e: AlgebraFileError) -> Self {
        match e {
            AlgebraFileError::Algebra(p) => p.into(),
            _ => RunError::Validation(e.to_string()),
        }
    }
}

pub fn load_algebra(source: &AlgebraSource) -> Result<PoincareAlgebra, RunError> {
    match source {
        AlgebraSource::Builtin(spec) => Ok(PoincareAlgebra::builtin(spec)?),
        AlgebraSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| RunError::Validation(format!("cannot read {}: {e}", path.display())))?;
            AlgebraFile::parse(&text)
                .and_then(|f| f.to_algebra())
                .map_err(|e| match RunError::from(e) {
                    RunError::Validation(m) => RunError::Validation(format!("{}: {m}", path.display())),
                    other => other,
                })
        }
    }
}

/// Worker count for the engine: one thread unless `parallel` is set, in
/// which case the environment cap (if any) applies.
pub fn worker_count(parallel: bool) -> Result<Option<usize>, RunError> {
    let cap = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| RunError::Validation(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?,
        ),
        Err(_) => None,
    };
    Ok(if parallel { cap } else { Some(1) })
}

/// Executes a configuration and returns the text it produces.
pub fn run(config: &RunConfig) -> Result<String, RunError> {
    if config.command == Command::Selftest {
        return selftest(config);
    }
    let source = config
        .algebra
        .as_ref()
        .ok_or_else(|| RunError::Validation("an algebra is required".into()))?;
    let alg = load_algebra(source)?;
    alg.validate(config.ring).into_result(config.ring)?;
    let threads = worker_count(config.parallel)?;
    config.ring.visit(Dispatch {
        config,
        alg: &alg,
        threads,
    })
}

struct Dispatch<'a> {
    config: &'a RunConfig,
    alg: &'a PoincareAlgebra,
    threads: Option<usize>,
}

impl RingVisitor for Dispatch<'_> {
    type Output = Result<String, RunError>;

    fn visit<R: Ring>(self, ring: R) -> Self::Output {
        let config = self.config;
        match config.command {
            Command::FourManifold => return Ok(four_manifold_report(self.alg, ring)?.render(config.ring)),
            Command::Selftest => unreachable!("handled before dispatch"),
            _ => {}
        }
        let engine = Engine::new(self.alg, ring)?.with_threads(self.threads);
        match config.command {
            Command::E2 { stability } => {
                let t = config.max_degree;
                let page = engine.e2_table(if stability { t + 1 } else { t })?;
                let shown = E2Page {
                    ring: page.ring,
                    max_degree: t,
                    entries: page
                        .entries
                        .iter()
                        .filter(|((p, q), _)| p + *q as i64 <= t as i64)
                        .map(|(k, g)| (*k, g.clone()))
                        .collect(),
                };
                let mut out = format::table(&shown);
                if config.emit_labels {
                    let slices = shown
                        .rows()
                        .into_iter()
                        .map(|((p, q), _)| engine.e1_slice(p, q))
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push_str(&format::label_block(&shown, &slices));
                }
                if stability {
                    let report = stability_from_page(&page, t, known_connectivity(self.alg));
                    out.push('\n');
                    out.push_str(&report.render());
                }
                Ok(out)
            }
            Command::D1 => {
                let (p, q) = config
                    .bidegree
                    .ok_or_else(|| RunError::Validation("d1 needs --bidegree".into()))?;
                let td = engine.assemble_td(p, q)?;
                Ok(format::td_dump(engine.ring(), &td))
            }
            Command::Oracle { max_vertices } => {
                let max_q = 3 * self.alg.dim();
                let slices = engine.cdba().cross_check(max_vertices, max_q)?;
                Ok(format!(
                    "all slices agree ({slices} slices, at most {max_vertices} vertices, * ≤ {max_q})\n"
                ))
            }
            Command::FourManifold | Command::Selftest => unreachable!("handled above"),
        }
    }
}

/// Betti numbers of the configuration space of `n` points in `ℝ^d`
/// (`d ≥ 3`), indexed by the number of edges: the coefficients of
/// `∏_{j<n} (1 + j·t)`.
fn configuration_betti(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for j in 1..n as u64 {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += j * c;
        }
        poly = next;
    }
    poly
}

struct Check<'a> {
    config: &'a RunConfig,
    alg: &'a PoincareAlgebra,
}

impl RingVisitor for Check<'_> {
    type Output = Result<Vec<String>, RunError>;

    fn visit<R: Ring>(self, ring: R) -> Self::Output {
        let name = format!("{} over {}", self.alg.name(), self.config.ring);
        let mut lines = Vec::new();
        self.alg.validate(self.config.ring).into_result(self.config.ring)?;
        lines.push(format!("ok\t{name}\tPoincaré duality"));
        let engine = Engine::new(self.alg, ring)?.with_threads(Some(1));
        let d = self.alg.dim();
        let slices = engine.cdba().cross_check(3, 3 * d)?;
        lines.push(format!("ok\t{name}\tslice dimensions agree with brute force ({slices} slices)"));
        // dimension 4 grows quickly with the degree
        let t = if d > 4 { d + 2 } else { d };
        let page = engine.e2_table(t)?;
        lines.push(format!(
            "ok\t{name}\ttd∘td = 0 through total degree {t} ({} nonzero entries)",
            page.entries.len()
        ));
        Ok(lines)
    }
}

fn selftest(config: &RunConfig) -> Result<String, RunError> {
    let mut out = String::new();
    for n in 1..=7 {
        let betti = configuration_betti(n);
        for (r, b) in betti.iter().enumerate() {
            let count = enumerate_graphs(n, r, GraphFilter::Distinguished).len() as u64;
            if count != *b {
                return Err(RunError::Internal(format!(
                    "{count} distinguished forests with {r} edges on {n} vertices, expected {b}"
                )));
            }
        }
    }
    out.push_str("ok\tdistinguished forests count the cohomology of configuration spaces (n ≤ 7)\n");
    let cases: Vec<(PoincareAlgebra, RingSpec)> = match &config.algebra {
        Some(source) => vec![(load_algebra(source)?, config.ring)],
        None => vec![
            (PoincareAlgebra::builtin("sphere:5")?, Rationals.spec()),
            (PoincareAlgebra::builtin("sphere:6")?, PrimeField::new(3).spec()),
            (PoincareAlgebra::builtin("product_spheres:13,8")?, RingSpec::Integers),
            (PoincareAlgebra::builtin("four_manifold:[[1,0],[0,1]]")?, PrimeField::new(2).spec()),
        ],
    };
    for (alg, ring) in &cases {
        let local = RunConfig {
            ring: *ring,
            ..config.clone()
        };
        for line in ring.visit(Check {
            config: &local,
            alg,
        })? {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out.push_str("selftest passed\n");
    Ok(out)
}
