//! Ring specification strings: `zmod:6`, `mat:2:gf3`, `prod(zmod:2,zmod:3)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Z/nZ with the identity involution.
    Zmod(u64),
    /// k x k matrices over GF(p) with the transpose involution.
    Mat { size: usize, prime: u64 },
    /// Componentwise product of two rings.
    Prod(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    /// Number of elements, saturating on overflow.
    pub fn cardinality(&self) -> u128 {
        match self {
            RingSpec::Zmod(n) => *n as u128,
            RingSpec::Mat { size, prime } => {
                let mut c: u128 = 1;
                for _ in 0..size * size {
                    c = c.saturating_mul(*prime as u128);
                }
                c
            }
            RingSpec::Prod(l, r) => l.cardinality().saturating_mul(r.cardinality()),
        }
    }

    /// The rings exercised by `verify --all` when no ring is named.
    pub fn default_suite() -> Vec<RingSpec> {
        let mut suite: Vec<RingSpec> = [2, 3, 4, 5, 6, 8, 9, 12].into_iter().map(RingSpec::Zmod).collect();
        suite.push(RingSpec::Mat { size: 2, prime: 2 });
        suite.push(RingSpec::Mat { size: 2, prime: 3 });
        suite
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "zmod:{n}"),
            RingSpec::Mat { size, prime } => write!(f, "mat:{size}:gf{prime}"),
            RingSpec::Prod(l, r) => write!(f, "prod({l},{r})"),
        }
    }
}

fn bad(src: &str, why: impl fmt::Display) -> Error {
    Error::Parse(format!("bad ring spec `{src}`: {why}"))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(src: &str) -> Result<RingSpec> {
        let s = src.trim();
        if let Some(inner) = s.strip_prefix("prod(").and_then(|t| t.strip_suffix(')')) {
            let mut depth = 0usize;
            let split = inner.char_indices().find_map(|(i, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => return Some(i),
                    _ => {}
                }
                None
            });
            let i = split.ok_or_else(|| bad(src, "prod needs two comma-separated factors"))?;
            let left: RingSpec = inner[..i].parse()?;
            let right: RingSpec = inner[i + 1..].parse()?;
            return Ok(RingSpec::Prod(Box::new(left), Box::new(right)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["zmod", n] => {
                let n: u64 = n.parse().map_err(|_| bad(src, "modulus is not an integer"))?;
                if n < 2 {
                    return Err(bad(src, "modulus must be at least 2"));
                }
                Ok(RingSpec::Zmod(n))
            }
            ["mat", k, field] => {
                let size: usize = k.parse().map_err(|_| bad(src, "size is not an integer"))?;
                let prime: u64 = field
                    .strip_prefix("gf")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| bad(src, "field must look like gfP"))?;
                if size == 0 {
                    return Err(bad(src, "size must be positive"));
                }
                if !is_prime(prime) {
                    return Err(bad(src, format!("{prime} is not prime")));
                }
                Ok(RingSpec::Mat { size, prime })
            }
            _ => Err(bad(src, "expected zmod:N, mat:K:gfP or prod(A,B)")),
        }
    }
}
