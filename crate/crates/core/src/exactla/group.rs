use std::fmt;

use super::RingSpec;

/// Isomorphism type of a finitely generated module over the active ring:
/// `R^free_rank ⊕ ⨁ R/mᵢ` with `m₁ | m₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group `{0}`")]
pub struct GroupParseError(pub String);

impl GroupDescriptor {
    pub fn new(free_rank: usize, mut torsion: Vec<u64>) -> Self {
        torsion.sort_unstable();
        debug_assert!(torsion.iter().all(|&m| m > 1));
        debug_assert!(torsion.windows(2).all(|w| w[1] % w[0] == 0));
        GroupDescriptor { free_rank, torsion }
    }

    pub fn free(rank: usize) -> Self {
        GroupDescriptor {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Dimension after tensoring with 𝔽_p plus the Tor term from the next
    /// group: the universal-coefficient prediction for a field computation.
    pub fn mod_p_dimension(&self, p: u64, next: &GroupDescriptor) -> usize {
        let here = self.torsion.iter().filter(|&&m| m % p == 0).count();
        let there = next.torsion.iter().filter(|&&m| m % p == 0).count();
        self.free_rank + here + there
    }

    /// Direct sum.
    pub fn sum(&self, other: &GroupDescriptor) -> GroupDescriptor {
        // Only used on fields or torsion-free data; keep torsion lists merged.
        let mut t = self.torsion.clone();
        t.extend(&other.torsion);
        t.sort_unstable();
        GroupDescriptor {
            free_rank: self.free_rank + other.free_rank,
            torsion: t,
        }
    }

    /// Canonical text: `0`, `k^r` over fields, `Z^r` or `Z^r + Z/m1 + …` over ℤ.
    pub fn render(&self, ring: RingSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if ring.is_field() {
            return format!("k^{}", self.free_rank);
        }
        let mut s = format!("Z^{}", self.free_rank);
        for m in &self.torsion {
            s.push_str(&format!(" + Z/{m}"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GroupParseError> {
        let err = || GroupParseError(text.to_string());
        let t = text.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut parts = t.split('+').map(str::trim);
        let head = parts.next().ok_or_else(err)?;
        let rank = head
            .strip_prefix("k^")
            .or_else(|| head.strip_prefix("Z^"))
            .ok_or_else(err)?
            .parse::<usize>()
            .map_err(|_| err())?;
        let field = head.starts_with('k');
        let mut torsion = Vec::new();
        for p in parts {
            if field {
                return Err(err());
            }
            let m = p
                .strip_prefix("Z/")
                .ok_or_else(err)?
                .parse::<u64>()
                .map_err(|_| err())?;
            if m < 2 {
                return Err(err());
            }
            torsion.push(m);
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(err());
        }
        Ok(GroupDescriptor {
            free_rank: rank,
            torsion,
        })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RingSpec::Integers))
    }
}
