//! Standard regular graph families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{cartesian_product, RegularGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    /// `K_{k,k}`
    CompleteBipartite(usize),
    Petersen,
    RandomRegular {
        n: usize,
        degree: usize,
        seed: u64,
    },
    Torus {
        n: usize,
        dim: usize,
    },
}

impl Family {
    pub fn generate(self) -> Result<RegularGraph> {
        match self {
            Family::Cycle(n) => cycle(n),
            Family::Complete(n) => complete(n),
            Family::CompleteBipartite(k) => complete_bipartite(k),
            Family::Petersen => petersen(),
            Family::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
            Family::Torus { n, dim } => torus(n, dim),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// `cycle(1)` is a single loop, `cycle(2)` a double edge.
pub fn cycle(n: usize) -> Result<RegularGraph> {
    if n == 0 {
        return Err(invalid("cycle needs n >= 1"));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    RegularGraph::new(n, edges, 1)
}

pub fn complete(n: usize) -> Result<RegularGraph> {
    // K_2 has degree 1, i.e. q = 0
    if n < 3 {
        return Err(invalid("complete graph needs n >= 3"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    RegularGraph::new(n, edges, (n - 2) as u64)
}

pub fn complete_bipartite(k: usize) -> Result<RegularGraph> {
    if k < 2 {
        return Err(invalid("complete bipartite K_{k,k} needs k >= 2"));
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            edges.push((i, k + j));
        }
    }
    RegularGraph::new(2 * k, edges, (k - 1) as u64)
}

pub fn petersen() -> Result<RegularGraph> {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    RegularGraph::new(10, edges, 2)
}

/// Configuration model: shuffle `n·degree` stubs and pair them in order.
/// Loops and multi-edges are kept.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<RegularGraph> {
    if n == 0 || degree < 2 {
        return Err(invalid("random regular graph needs n >= 1 and degree >= 2"));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(invalid("n * degree must be even"));
    }
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    stubs.shuffle(&mut rng);
    let edges = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    RegularGraph::new(n, edges, (degree - 1) as u64)
}

/// `D`-fold Cartesian power of `cycle(n)`.
pub fn torus(n: usize, dim: usize) -> Result<RegularGraph> {
    if n < 3 {
        return Err(invalid("torus needs side n >= 3"));
    }
    if dim < 1 {
        return Err(invalid("torus needs dimension >= 1"));
    }
    let c = cycle(n)?;
    let mut g = c.clone();
    for _ in 1..dim {
        g = cartesian_product(&g, &c)?;
    }
    Ok(g)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(k) => write!(f, "complete_bipartite:{k}"),
            Family::Petersen => write!(f, "petersen"),
            Family::RandomRegular { n, degree, seed } => {
                write!(f, "random_regular:{n},{degree},{seed}")
            }
            Family::Torus { n, dim } => write!(f, "torus:{n},{dim}"),
        }
    }
}

/// Parses `name[:a,b,...]`, e.g. `cycle:5`, `torus:4,2`,
/// `random_regular:10,3` (seed defaults to 0, or `random_regular:10,3,7`).
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (s.trim(), ""),
        };
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad family argument {a:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{name} takes {k} argument(s), got {}",
                    nums.len()
                )))
            }
        };
        match name {
            "cycle" => arity(1).map(|_| Family::Cycle(nums[0])),
            "complete" => arity(1).map(|_| Family::Complete(nums[0])),
            "complete_bipartite" => arity(1).map(|_| Family::CompleteBipartite(nums[0])),
            "petersen" => arity(0).map(|_| Family::Petersen),
            "torus" => arity(2).map(|_| Family::Torus {
                n: nums[0],
                dim: nums[1],
            }),
            "random_regular" => match nums.len() {
                2 | 3 => Ok(Family::RandomRegular {
                    n: nums[0],
                    degree: nums[1],
                    seed: nums.get(2).copied().unwrap_or(0) as u64,
                }),
                k => Err(Error::Parse(format!(
                    "random_regular takes 2 or 3 arguments, got {k}"
                ))),
            },
            other => Err(Error::Parse(format!(
                "unknown family {other:?}; expected one of cycle, complete, \
                 complete_bipartite, petersen, random_regular, torus"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let g = cycle(5).unwrap();
        assert_eq!((g.n(), g.q()), (5, 1));
        let g = petersen().unwrap();
        assert_eq!((g.n(), g.q(), g.edges().len()), (10, 2, 15));
        let g = torus(4, 2).unwrap();
        assert_eq!((g.n(), g.degree()), (16, 4));
        let g = complete_bipartite(3).unwrap();
        assert!(g.is_bipartite());
    }

    #[test]
    fn invalid_parameters() {
        assert!(complete(2).is_err());
        assert!(torus(2, 2).is_err());
        assert!(random_regular(5, 3, 0).is_err());
    }

    #[test]
    fn random_regular_is_deterministic() {
        let a = random_regular(20, 3, 42).unwrap();
        let b = random_regular(20, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.q(), 2);
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "cycle:5",
            "petersen",
            "torus:4,2",
            "random_regular:10,3,7",
            "complete:4",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("dodecahedron".parse::<Family>().is_err());
    }

    #[test]
    fn torus_matches_explicit_product() {
        let c = cycle(4).unwrap();
        let p = cartesian_product(&c, &c).unwrap();
        assert_eq!(p.int_adjacency(), torus(4, 2).unwrap().int_adjacency());
    }
}
