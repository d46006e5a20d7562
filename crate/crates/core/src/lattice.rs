//! The lattice of cycles of a validated plumbing graph.

use std::ops::Deref;

use num_rational::BigRational;

use crate::cycle::{Cycle, CycleError, RationalCycle};
use crate::graph::{IntersectionMatrix, PlumbingGraph};
use crate::linalg;

const OVERFLOW: &str = "intersection pairing exceeds the 64-bit range";

/// A plumbing graph known to be a tree with negative definite intersection
/// form, together with its canonical cycle.
///
/// Only [`PlumbingGraph::validate`] constructs this type.
#[derive(Debug, Clone)]
pub struct Lattice {
    graph: PlumbingGraph,
    matrix: IntersectionMatrix,
    canonical: Vec<BigRational>,
    // (K, E_i) = -E_i^2 - 2, the right-hand side of the adjunction equations
    canonical_pairings: Vec<i64>,
}

impl Lattice {
    pub(crate) fn new(graph: PlumbingGraph) -> Self {
        let matrix = graph.intersection_matrix();
        let canonical_pairings: Vec<i64> = graph
            .euler_numbers()
            .iter()
            .map(|&e| (-e).checked_sub(2).expect("Euler number out of range"))
            .collect();
        let rows: Vec<Vec<BigRational>> = (0..matrix.size())
            .map(|i| {
                matrix
                    .row(i)
                    .iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let rhs: Vec<BigRational> = canonical_pairings
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        let canonical = linalg::solve(&rows, &rhs)
            .expect("negative definite intersection matrix is invertible");
        Lattice {
            graph,
            matrix,
            canonical,
            canonical_pairings,
        }
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn matrix(&self) -> &IntersectionMatrix {
        &self.matrix
    }

    pub fn into_graph(self) -> PlumbingGraph {
        self.graph
    }

    pub fn zero(&self) -> Cycle<'_> {
        Cycle::from_raw(self, vec![0; self.len()])
    }

    /// The reduced cycle `E = Σ E_i`.
    pub fn reduced(&self) -> Cycle<'_> {
        Cycle::from_raw(self, vec![1; self.len()])
    }

    /// The generator `E_i`.
    pub fn basis(&self, i: usize) -> Cycle<'_> {
        let mut coeffs = vec![0; self.len()];
        coeffs[i] = 1;
        Cycle::from_raw(self, coeffs)
    }

    pub fn cycle(&self, coeffs: Vec<i64>) -> Result<Cycle<'_>, CycleError> {
        if coeffs.len() != self.len() {
            return Err(CycleError::Length {
                expected: self.len(),
                found: coeffs.len(),
            });
        }
        Ok(Cycle::from_raw(self, coeffs))
    }

    /// Parses a cycle literal such as `a=2,b=3`; omitted vertices are 0.
    pub fn parse_cycle(&self, literal: &str) -> Result<Cycle<'_>, CycleError> {
        Cycle::parse(self, literal)
    }

    /// The canonical cycle `K`, the solution of `(K + E_i, E_i) + 2 = 0`.
    pub fn canonical_cycle(&self) -> RationalCycle<'_> {
        RationalCycle::from_raw(self, self.canonical.clone())
    }

    /// `(a, b)` for raw coefficient vectors, using the sparse tree structure.
    pub(crate) fn pair_raw(&self, a: &[i64], b: &[i64]) -> i64 {
        let g = &self.graph;
        let mut acc: i128 = 0;
        for (i, &e) in g.euler_numbers().iter().enumerate() {
            let term = (e as i128 * a[i] as i128).checked_mul(b[i] as i128);
            acc = term.and_then(|t| acc.checked_add(t)).expect(OVERFLOW);
        }
        for &(i, j) in g.edges() {
            let term = a[i] as i128 * b[j] as i128 + a[j] as i128 * b[i] as i128;
            acc = acc.checked_add(term).expect(OVERFLOW);
        }
        i64::try_from(acc).expect(OVERFLOW)
    }

    /// `(a, E_i)`.
    pub(crate) fn pair_vertex_raw(&self, a: &[i64], i: usize) -> i64 {
        let g = &self.graph;
        let mut acc = g.euler(i) as i128 * a[i] as i128;
        for &j in g.neighbors(i) {
            acc += a[j] as i128;
        }
        i64::try_from(acc).expect(OVERFLOW)
    }

    /// `(a, K)`, from the adjunction equations.
    pub(crate) fn pair_canonical_raw(&self, a: &[i64]) -> i64 {
        let acc: i128 = a
            .iter()
            .zip(&self.canonical_pairings)
            .map(|(&m, &k)| m as i128 * k as i128)
            .sum();
        i64::try_from(acc).expect("canonical pairing exceeds the 64-bit range")
    }

    /// `χ(a) = -(a, a + K) / 2` for an integral cycle.
    pub(crate) fn euler_char_raw(&self, a: &[i64]) -> i64 {
        let twice = self.pair_raw(a, a) as i128 + self.pair_canonical_raw(a) as i128;
        assert!(
            twice % 2 == 0,
            "(D, D + K) is odd for an integral cycle; the canonical data is corrupt"
        );
        i64::try_from(-twice / 2).expect("Euler characteristic exceeds the 64-bit range")
    }

    /// `χ(-a)`.
    pub(crate) fn euler_char_neg_raw(&self, a: &[i64]) -> i64 {
        let twice = self.pair_raw(a, a) as i128 - self.pair_canonical_raw(a) as i128;
        assert!(twice % 2 == 0, "(D, D - K) is odd for an integral cycle");
        i64::try_from(-twice / 2).expect("Euler characteristic exceeds the 64-bit range")
    }
}

impl Deref for Lattice {
    type Target = PlumbingGraph;

    fn deref(&self) -> &PlumbingGraph {
        &self.graph
    }
}
