//! Schläfli symbols for the hyperbolic Platonic tessellation types.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchlafliError {
    #[error("{{{0},{1}}} is not a Platonic solid")]
    NotPlatonic(u32, u32),
    #[error("{{{0},{1},{2}}} is not a hyperbolic Platonic tessellation type")]
    NotHyperbolic(u32, u32, u32),
}

/// A symbol `{p,q,r}`: `p`-gonal faces, `q` faces around each solid vertex,
/// `r` solids around each tessellation edge.
///
/// Only the seven hyperbolic types are representable: the cusped ones
/// `{3,3,6}`, `{3,4,4}`, `{4,3,6}`, `{5,3,6}` (ideal solid vertices, vertex
/// link Euclidean) and the closed ones `{4,3,5}`, `{3,5,3}`, `{5,3,5}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchlafliType {
    p: u32,
    q: u32,
    r: u32,
}

const CUSPED: [(u32, u32, u32); 4] = [(3, 3, 6), (3, 4, 4), (4, 3, 6), (5, 3, 6)];
const CLOSED: [(u32, u32, u32); 3] = [(4, 3, 5), (3, 5, 3), (5, 3, 5)];

impl SchlafliType {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self, SchlafliError> {
        let platonic = matches!((p, q), (3, 3) | (3, 4) | (4, 3) | (3, 5) | (5, 3));
        if !platonic {
            return Err(SchlafliError::NotPlatonic(p, q));
        }
        if !CUSPED.contains(&(p, q, r)) && !CLOSED.contains(&(p, q, r)) {
            return Err(SchlafliError::NotHyperbolic(p, q, r));
        }
        Ok(SchlafliType { p, q, r })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Vertex links `{q,r}` are Euclidean exactly for the four cusped types.
    pub fn is_cusped(&self) -> bool {
        CUSPED.contains(&(self.p, self.q, self.r))
    }

    pub fn is_closed(&self) -> bool {
        !self.is_cusped()
    }

    /// `{3,5,3}` and `{5,3,5}`: the dual of a tessellation is of the same type.
    pub fn is_self_dual_type(&self) -> bool {
        self.p == self.r && self.q == 3 || (self.p, self.q, self.r) == (3, 5, 3)
    }

    /// The reversed symbol `{r,q,p}`. Not necessarily a census type.
    pub fn reversed(&self) -> (u32, u32, u32) {
        (self.r, self.q, self.p)
    }

    /// Number of simplices in the barycentric subdivision of one solid:
    /// `8pq / (2p + 2q - pq)`, i.e. 24, 48, 48, 120, 120.
    pub fn simplices_per_solid(&self) -> usize {
        let (p, q) = (self.p as usize, self.q as usize);
        8 * p * q / (2 * p + 2 * q - p * q)
    }

    /// Short solid name used in census identifiers.
    pub fn solid_name(&self) -> &'static str {
        match (self.p, self.q) {
            (3, 3) => "tet",
            (3, 4) => "oct",
            (4, 3) => "cube",
            (3, 5) => "ico",
            (5, 3) => "dode",
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.p, self.q, self.r)
    }
}

impl fmt::Debug for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_types() {
        for (p, q, r) in CUSPED {
            let s = SchlafliType::new(p, q, r).unwrap();
            assert!(s.is_cusped());
        }
        for (p, q, r) in CLOSED {
            let s = SchlafliType::new(p, q, r).unwrap();
            assert!(s.is_closed());
        }
    }

    #[test]
    fn invalid_types() {
        assert_eq!(
            SchlafliType::new(6, 3, 4),
            Err(SchlafliError::NotPlatonic(6, 3))
        );
        assert_eq!(
            SchlafliType::new(3, 3, 7),
            Err(SchlafliError::NotHyperbolic(3, 3, 7))
        );
        assert_eq!(
            SchlafliType::new(5, 3, 4),
            Err(SchlafliError::NotHyperbolic(5, 3, 4))
        );
    }

    #[test]
    fn simplex_counts() {
        let n = |p, q, r| SchlafliType::new(p, q, r).unwrap().simplices_per_solid();
        assert_eq!(n(3, 3, 6), 24);
        assert_eq!(n(3, 4, 4), 48);
        assert_eq!(n(4, 3, 6), 48);
        assert_eq!(n(3, 5, 3), 120);
        assert_eq!(n(5, 3, 6), 120);
    }

    #[test]
    fn self_dual_types() {
        assert!(SchlafliType::new(3, 5, 3).unwrap().is_self_dual_type());
        assert!(SchlafliType::new(5, 3, 5).unwrap().is_self_dual_type());
        assert!(!SchlafliType::new(4, 3, 5).unwrap().is_self_dual_type());
        assert!(!SchlafliType::new(3, 3, 6).unwrap().is_self_dual_type());
    }
}
