//! The 3-ary n-cube and its edge-isoperimetric profile.
//!
//! Vertices are n-digit ternary words `(x_{n-1}, ..., x_0)` labeled by their
//! value `Σ x_i·3^i`, so label order is lexicographic order. Two words are
//! adjacent iff they differ in exactly one position: in base 3 every pair of
//! distinct digits differs by ±1 mod 3, so each coordinate factor is a
//! triangle.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};

/// Largest dimension built by default (729 vertices).
pub const DEFAULT_MAX_DIMENSION: u32 = 6;

/// Default vertex budget for the exhaustive induced-edge oracle.
pub const DEFAULT_ISO_BRUTE_FORCE_BUDGET: usize = 12;

pub fn pow3(n: u32) -> u64 {
    3u64.pow(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryWord {
    n: u32,
    label: u64,
}

impl TernaryWord {
    pub fn from_label(n: u32, label: u64) -> Result<Self> {
        if n == 0 || n > 40 {
            return Err(Error::Domain {
                n,
                reason: "word length must be in 1..=40".into(),
            });
        }
        if label >= pow3(n) {
            return Err(Error::OutOfRange {
                k: label,
                n,
                reason: format!("label must be below 3^{n}"),
            });
        }
        Ok(TernaryWord { n, label })
    }

    /// Digits most-significant first, `(x_{n-1}, ..., x_0)`.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let n = digits.len() as u32;
        let mut label = 0u64;
        for &d in digits {
            if d > 2 {
                return Err(Error::Parse(format!("ternary digit {d} out of range")));
            }
            label = label * 3 + d as u64;
        }
        Self::from_label(n, label)
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn label(self) -> u64 {
        self.label
    }

    /// Digits most-significant first.
    pub fn digits(self) -> Vec<u8> {
        let mut out = vec![0u8; self.n as usize];
        let mut rest = self.label;
        for slot in out.iter_mut().rev() {
            *slot = (rest % 3) as u8;
            rest /= 3;
        }
        out
    }

    /// Digit `x_i` (position 0 is least significant).
    pub fn digit(self, i: u32) -> u8 {
        ((self.label / pow3(i)) % 3) as u8
    }

    /// Number of positions where the two words differ.
    pub fn hamming(self, other: TernaryWord) -> u32 {
        (0..self.n.max(other.n))
            .filter(|&i| self.digit(i) != other.digit(i))
            .count() as u32
    }
}

/// Maps every digit `x` to `2 - x`. An automorphism of the cube.
pub fn digit_complement(w: TernaryWord) -> TernaryWord {
    let digits: Vec<u8> = w.digits().into_iter().map(|d| 2 - d).collect();
    TernaryWord::from_digits(&digits).expect("complemented digits stay ternary")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCube {
    n: u32,
    graph: LabeledGraph,
}

pub fn build_qcube(n: u32) -> Result<QCube> {
    QCube::with_max_dimension(n, DEFAULT_MAX_DIMENSION)
}

impl QCube {
    pub fn with_max_dimension(n: u32, max_dimension: u32) -> Result<Self> {
        if n == 0 || n > max_dimension {
            return Err(Error::Domain {
                n,
                reason: format!("3-ary n-cube needs 1 <= n <= {max_dimension}"),
            });
        }
        let size = pow3(n) as usize;
        let mut edges = Vec::with_capacity(n as usize * size);
        for u in 0..size {
            let mut place = 1usize;
            for _ in 0..n {
                let d = (u / place) % 3;
                // only raise digits so each edge is emitted once
                for bigger in d + 1..3 {
                    edges.push(Edge::new(u, u + (bigger - d) * place));
                }
                place *= 3;
            }
        }
        let roles = (0..size).map(|v| {
            let w = TernaryWord::from_label(n, v as u64).expect("in range");
            let mut tag = String::from("digit-tuple:");
            for d in w.digits() {
                let _ = write!(tag, "{d}");
            }
            (v, tag)
        });
        let graph = LabeledGraph::new(size, edges)?.with_roles(roles)?;
        Ok(QCube { n, graph })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn word(&self, label: usize) -> TernaryWord {
        TernaryWord::from_label(self.n, label as u64).expect("label of this cube")
    }
}

/// Exponents `k_1 >= k_2 >= ... >= k_r` with `Σ 3^{k_i} = k`, read off the
/// base-3 digits of `k` (digit `d` at position `p` contributes `d` copies of
/// `p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryDecomposition {
    pub k: u64,
    pub exponents: Vec<u32>,
}

pub fn ternary_decompose(k: u64) -> TernaryDecomposition {
    let mut exponents = Vec::new();
    let mut rest = k;
    let mut p = 0u32;
    while rest > 0 {
        for _ in 0..rest % 3 {
            exponents.push(p);
        }
        rest /= 3;
        p += 1;
    }
    exponents.reverse();
    TernaryDecomposition { k, exponents }
}

/// Maximum number of edges induced by `k` vertices of the n-cube:
/// `Σ_i (k_i + (i-1))·3^{k_i}` over the ternary decomposition of `k`.
pub fn iso_closed_form(k: u64, n: u32) -> Result<u64> {
    if n == 0 || n > 40 {
        return Err(Error::Domain {
            n,
            reason: "dimension must be in 1..=40".into(),
        });
    }
    if k == 0 || k > pow3(n) {
        return Err(Error::OutOfRange {
            k,
            n,
            reason: format!("need 1 <= k <= 3^{n}"),
        });
    }
    let decomposition = ternary_decompose(k);
    if let Some(&top) = decomposition.exponents.first() {
        if top > n {
            return Err(Error::OutOfRange {
                k,
                n,
                reason: format!("exponent {top} exceeds n"),
            });
        }
    }
    Ok(decomposition
        .exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| (e as u64 + i as u64) * pow3(e))
        .sum())
}

/// Edges of the cube with both endpoints among the first `k` labels.
pub fn lex_prefix_induced(q: &QCube, k: usize) -> Result<u64> {
    if k == 0 || k > q.vertex_count() {
        return Err(Error::OutOfRange {
            k: k as u64,
            n: q.n(),
            reason: "need 1 <= k <= 3^n".into(),
        });
    }
    // edges are sorted by (lo, hi) with lo < hi
    Ok(q.graph().edges().iter().filter(|e| e.hi() < k).count() as u64)
}

/// Exact maximum induced-edge count over all `k`-subsets.
///
/// Refuses cubes larger than `budget` vertices.
pub fn brute_force_iso(q: &QCube, k: usize, budget: usize) -> Result<u64> {
    let size = q.vertex_count();
    if size > budget.min(63) {
        return Err(Error::BudgetExceeded {
            vertices: size,
            budget,
            hint: "use lex_prefix_induced for larger cubes",
        });
    }
    if k == 0 || k > size {
        return Err(Error::OutOfRange {
            k: k as u64,
            n: q.n(),
            reason: "need 1 <= k <= 3^n".into(),
        });
    }
    let adj: Vec<u64> = (0..size)
        .map(|v| q.graph().neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let full = 1u64 << size;
    let mut best = 0u32;
    let mut mask = (1u64 << k) - 1;
    while mask < full {
        let mut twice = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            twice += (adj[v] & mask).count_ones();
            rest &= rest - 1;
        }
        best = best.max(twice / 2);
        // next mask with the same popcount
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
    Ok(best as u64)
}

/// `I(1..=3^n)` and its first differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoProfile {
    pub n: u32,
    pub induced: Vec<u64>,
    pub delta: Vec<u64>,
}

pub fn iso_profile(n: u32) -> Result<IsoProfile> {
    if n == 0 || n > DEFAULT_MAX_DIMENSION {
        return Err(Error::Domain {
            n,
            reason: format!("profile needs 1 <= n <= {DEFAULT_MAX_DIMENSION}"),
        });
    }
    let induced = (1..=pow3(n))
        .map(|k| iso_closed_form(k, n))
        .collect::<Result<Vec<_>>>()?;
    let mut delta = Vec::with_capacity(induced.len());
    let mut prev = 0;
    for (i, &v) in induced.iter().enumerate() {
        delta.push(if i == 0 { 0 } else { v - prev });
        prev = v;
    }
    Ok(IsoProfile { n, induced, delta })
}

impl IsoProfile {
    /// `I(k)` for 1-based `k`.
    pub fn at(&self, k: usize) -> u64 {
        self.induced[k - 1]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,I,delta\n");
        for (i, (v, d)) in self.induced.iter().zip(&self.delta).enumerate() {
            let _ = writeln!(out, "{},{},{}", i + 1, v, d);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, cartesian_product};

    #[test]
    fn small_cubes() {
        let q1 = build_qcube(1).unwrap();
        assert_eq!(q1.graph().edges().len(), 3);
        assert_eq!(q1.graph().vertex_count(), 3);
        let q2 = build_qcube(2).unwrap();
        assert_eq!(q2.graph().edge_count(), 18);
        assert!((0..9).all(|v| q2.graph().degree(v) == 4));
        assert_eq!(q2.graph().role(5), Some("digit-tuple:12"));
    }

    #[test]
    fn dimension_bounds() {
        assert!(matches!(build_qcube(0), Err(Error::Domain { .. })));
        assert!(matches!(build_qcube(7), Err(Error::Domain { .. })));
        assert!(QCube::with_max_dimension(7, 7).is_ok());
    }

    #[test]
    fn q3_equals_iterated_product() {
        let c3 = build_graph(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = cartesian_product(&c3, &cartesian_product(&c3, &c3).unwrap()).unwrap();
        let q3 = build_qcube(3).unwrap();
        assert_eq!(q3.graph().edges(), p.edges());
        assert_eq!(q3.graph().vertex_count(), 27);
        assert_eq!(q3.graph().edge_count(), 81);
    }

    #[test]
    fn adjacency_is_single_digit_difference() {
        let q = build_qcube(3).unwrap();
        for u in 0..27 {
            for v in 0..27 {
                let one_digit = q.word(u).hamming(q.word(v)) == 1;
                assert_eq!(q.graph().has_edge(u, v), one_digit, "({u},{v})");
            }
        }
    }

    #[test]
    fn decompositions() {
        assert_eq!(ternary_decompose(8).exponents, vec![1, 1, 0, 0]);
        assert_eq!(ternary_decompose(9).exponents, vec![2]);
        assert_eq!(ternary_decompose(13).exponents, vec![2, 1, 0]);
        for k in 1..=500u64 {
            let d = ternary_decompose(k);
            assert_eq!(d.exponents.iter().map(|&e| pow3(e)).sum::<u64>(), k);
            assert!(d.exponents.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(iso_closed_form(2, 2).unwrap(), 1);
        assert_eq!(iso_closed_form(9, 2).unwrap(), 18);
        assert_eq!(iso_closed_form(13, 3).unwrap(), 26);
        assert_eq!(iso_closed_form(12, 3).unwrap(), 24);
        assert!(matches!(iso_closed_form(0, 2), Err(Error::OutOfRange { .. })));
        assert!(matches!(iso_closed_form(10, 2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn lex_prefix_counts() {
        let q2 = build_qcube(2).unwrap();
        assert_eq!(lex_prefix_induced(&q2, 3).unwrap(), 3);
        assert_eq!(lex_prefix_induced(&q2, 1).unwrap(), 0);
        let q3 = build_qcube(3).unwrap();
        assert_eq!(lex_prefix_induced(&q3, 12).unwrap(), 24);
        assert!(lex_prefix_induced(&q3, 0).is_err());
        assert!(lex_prefix_induced(&q3, 28).is_err());
    }

    #[test]
    fn brute_force_values_and_refusal() {
        let q1 = build_qcube(1).unwrap();
        assert_eq!(brute_force_iso(&q1, 2, 12).unwrap(), 1);
        let q2 = build_qcube(2).unwrap();
        assert_eq!(brute_force_iso(&q2, 4, 12).unwrap(), 4);
        assert_eq!(brute_force_iso(&q2, 6, 12).unwrap(), 9);
        assert_eq!(brute_force_iso(&q2, 9, 12).unwrap(), 18);
        let q3 = build_qcube(3).unwrap();
        assert!(matches!(
            brute_force_iso(&q3, 4, DEFAULT_ISO_BRUTE_FORCE_BUDGET),
            Err(Error::BudgetExceeded { vertices: 27, .. })
        ));
    }

    #[test]
    fn profiles() {
        assert_eq!(iso_profile(2).unwrap().delta, vec![0, 1, 2, 1, 2, 3, 2, 3, 4]);
        assert_eq!(iso_profile(1).unwrap().delta, vec![0, 1, 2]);
        assert_eq!(iso_profile(3).unwrap().at(27), 81);
        let csv = iso_profile(1).unwrap().to_csv();
        assert_eq!(csv, "k,I,delta\n1,0,0\n2,1,1\n3,3,2\n");
    }

    #[test]
    fn complement() {
        let w = |n, l| TernaryWord::from_label(n, l).unwrap();
        assert_eq!(digit_complement(w(2, 0)).label(), 8);
        assert_eq!(digit_complement(w(2, 4)).label(), 4);
        assert_eq!(digit_complement(w(3, 5)).label(), 21);
    }

    #[test]
    fn word_round_trip() {
        let w = TernaryWord::from_digits(&[0, 1, 2]).unwrap();
        assert_eq!(w.label(), 5);
        assert_eq!(w.digits(), vec![0, 1, 2]);
        assert_eq!(w.digit(0), 2);
        assert!(TernaryWord::from_digits(&[3]).is_err());
        assert!(TernaryWord::from_label(2, 9).is_err());
    }
}
