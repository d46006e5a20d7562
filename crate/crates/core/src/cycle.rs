//! Integral and rational cycles `D = Σ m_i E_i`, the intersection pairing,
//! supports and the Euler characteristic `χ(D) = -(D, D + K)/2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("cycles belong to different graphs")]
    GraphMismatch,
    #[error("cycle has {found} coefficients, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error("malformed cycle literal: {0}")]
    Literal(String),
    #[error("unknown vertex `{0}` in cycle literal")]
    UnknownVertex(String),
    #[error("cycle {0} has a negative coefficient")]
    NegativeCoefficient(String),
    #[error("cycle {0} is not anti-nef")]
    NotAntinef(String),
    #[error("the zero cycle has no open book")]
    Zero,
    #[error("enumeration bound must be positive, got {0}")]
    InvalidBound(i64),
}

/// An integral cycle of a validated graph.
#[derive(Clone)]
pub struct Cycle<'a> {
    lattice: &'a Lattice,
    coeffs: Vec<i64>,
}

impl<'a> Cycle<'a> {
    pub(crate) fn from_raw(lattice: &'a Lattice, coeffs: Vec<i64>) -> Self {
        debug_assert_eq!(coeffs.len(), lattice.len());
        Cycle { lattice, coeffs }
    }

    pub(crate) fn parse(lattice: &'a Lattice, literal: &str) -> Result<Self, CycleError> {
        let mut coeffs = vec![0i64; lattice.len()];
        let mut seen = vec![false; lattice.len()];
        let literal = literal.trim();
        if literal.is_empty() {
            return Ok(Cycle { lattice, coeffs });
        }
        for entry in literal.split(',') {
            let (name, value) = entry.split_once('=').ok_or_else(|| {
                CycleError::Literal(format!("expected `name=int`, found `{entry}`"))
            })?;
            let (name, value) = (name.trim(), value.trim());
            let idx = lattice
                .index_of(name)
                .ok_or_else(|| CycleError::UnknownVertex(name.to_string()))?;
            if seen[idx] {
                return Err(CycleError::Literal(format!("vertex `{name}` given twice")));
            }
            seen[idx] = true;
            coeffs[idx] = value
                .parse()
                .map_err(|_| CycleError::Literal(format!("invalid coefficient `{value}`")))?;
        }
        Ok(Cycle { lattice, coeffs })
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&m| m == 0)
    }

    /// `D ≥ 0`.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&m| m >= 0)
    }

    fn same_graph(&self, other: &Cycle<'_>) -> Result<(), CycleError> {
        if std::ptr::eq(self.lattice, other.lattice) {
            Ok(())
        } else {
            Err(CycleError::GraphMismatch)
        }
    }

    pub fn pair(&self, other: &Cycle<'_>) -> Result<i64, CycleError> {
        self.same_graph(other)?;
        Ok(self.lattice.pair_raw(&self.coeffs, &other.coeffs))
    }

    /// `(D, E_i)`.
    pub fn pair_vertex(&self, i: usize) -> i64 {
        self.lattice.pair_vertex_raw(&self.coeffs, i)
    }

    /// `D²`.
    pub fn self_intersection(&self) -> i64 {
        self.lattice.pair_raw(&self.coeffs, &self.coeffs)
    }

    /// The componentwise partial order.
    pub fn leq(&self, other: &Cycle<'_>) -> Result<bool, CycleError> {
        self.same_graph(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b))
    }

    pub fn try_add(&self, other: &Cycle<'_>) -> Result<Cycle<'a>, CycleError> {
        self.same_graph(other)?;
        Ok(self.zip_with(other, |a, b| {
            a.checked_add(b).expect("coefficient overflow")
        }))
    }

    pub fn try_sub(&self, other: &Cycle<'_>) -> Result<Cycle<'a>, CycleError> {
        self.same_graph(other)?;
        Ok(self.zip_with(other, |a, b| {
            a.checked_sub(b).expect("coefficient overflow")
        }))
    }

    fn zip_with(&self, other: &Cycle<'_>, f: impl Fn(i64, i64) -> i64) -> Cycle<'a> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Cycle::from_raw(self.lattice, coeffs)
    }

    pub fn scale(&self, k: i64) -> Cycle<'a> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&m| m.checked_mul(k).expect("coefficient overflow"))
            .collect();
        Cycle::from_raw(self.lattice, coeffs)
    }

    pub fn negated(&self) -> Cycle<'a> {
        self.scale(-1)
    }

    /// `Z + E_i`.
    pub fn plus_vertex(&self, i: usize) -> Cycle<'a> {
        let mut coeffs = self.coeffs.clone();
        coeffs[i] += 1;
        Cycle::from_raw(self.lattice, coeffs)
    }

    /// `|D|`, the vertices with nonzero coefficient, in declaration order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }

    pub fn support_names(&self) -> Vec<&'a str> {
        self.support()
            .into_iter()
            .map(|i| self.lattice.name(i))
            .collect()
    }

    /// The reduced cycle `Σ_{i ∈ |D|} E_i`.
    pub fn reduced_support(&self) -> Cycle<'a> {
        let coeffs = self.coeffs.iter().map(|&m| i64::from(m != 0)).collect();
        Cycle::from_raw(self.lattice, coeffs)
    }

    /// `#(D)`: connected components of the support; zero for `D = 0`.
    pub fn component_count(&self) -> usize {
        let mask: Vec<bool> = self.coeffs.iter().map(|&m| m != 0).collect();
        self.lattice.components_within(&mask)
    }

    /// `χ(D)` through the integral adjunction data `(K, E_i) = -E_i² - 2`.
    pub fn euler_char(&self) -> i64 {
        self.lattice.euler_char_raw(&self.coeffs)
    }

    pub fn to_rational(&self) -> RationalCycle<'a> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&m| BigRational::from_integer(m.into()))
            .collect();
        RationalCycle::from_raw(self.lattice, coeffs)
    }

    /// `χ(D)` evaluated with the solved rational canonical cycle. Panics if
    /// the result is not an integer, which would mean `K` is wrong.
    pub fn euler_char_via_canonical(&self) -> BigInt {
        let chi = self.to_rational().euler_char();
        assert!(
            chi.is_integer(),
            "χ of an integral cycle is not an integer: {chi}"
        );
        chi.to_integer()
    }

    /// Lexicographic comparison of coefficient vectors.
    pub fn lex_cmp(&self, other: &Cycle<'_>) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl PartialEq for Cycle<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lattice, other.lattice) && self.coeffs == other.coeffs
    }
}

impl Eq for Cycle<'_> {}

impl fmt::Debug for Cycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle({self})")
    }
}

/// Renders the cycle literal `a=1,b=2` listing every vertex.
impl fmt::Display for Cycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_literal(f, self.lattice, &self.coeffs)
    }
}

fn write_literal<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    lattice: &Lattice,
    coeffs: &[T],
) -> fmt::Result {
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}={}", lattice.name(i), c)?;
    }
    Ok(())
}

/// Serializes as `{name: coefficient}` in vertex order.
impl Serialize for Cycle<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            map.serialize_entry(self.lattice.name(i), c)?;
        }
        map.end()
    }
}

/// A cycle with rational coefficients, in lowest terms.
#[derive(Clone)]
pub struct RationalCycle<'a> {
    lattice: &'a Lattice,
    coeffs: Vec<BigRational>,
}

impl<'a> RationalCycle<'a> {
    pub(crate) fn from_raw(lattice: &'a Lattice, coeffs: Vec<BigRational>) -> Self {
        RationalCycle { lattice, coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn pair(&self, other: &RationalCycle<'_>) -> Result<BigRational, CycleError> {
        if !std::ptr::eq(self.lattice, other.lattice) {
            return Err(CycleError::GraphMismatch);
        }
        let g = self.lattice.graph();
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut acc = BigRational::zero();
        for (i, &e) in g.euler_numbers().iter().enumerate() {
            acc += &a[i] * &b[i] * BigRational::from_integer(e.into());
        }
        for &(i, j) in g.edges() {
            acc += &a[i] * &b[j] + &a[j] * &b[i];
        }
        Ok(acc)
    }

    pub fn add(&self, other: &RationalCycle<'_>) -> Result<RationalCycle<'a>, CycleError> {
        if !std::ptr::eq(self.lattice, other.lattice) {
            return Err(CycleError::GraphMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RationalCycle::from_raw(self.lattice, coeffs))
    }

    /// `χ(D) = -(D, D + K)/2` with the rational canonical cycle.
    pub fn euler_char(&self) -> BigRational {
        let k = self.lattice.canonical_cycle();
        let shifted = self.add(&k).expect("same lattice");
        let twice = self.pair(&shifted).expect("same lattice");
        -twice / BigRational::from_integer(2.into())
    }

    /// Twice `χ`, i.e. `-(D, D + K)`; an even integer for integral `D`.
    pub fn twice_euler_char(&self) -> BigRational {
        self.euler_char() * BigRational::from_integer(2.into())
    }
}

impl PartialEq for RationalCycle<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lattice, other.lattice) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for RationalCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalCycle({self})")
    }
}

/// Renders `a=-1/3,b=0`; integers print without a denominator.
impl fmt::Display for RationalCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_literal(f, self.lattice, &self.coeffs)
    }
}

/// Serializes as `{name: "p/q"}` in vertex order.
impl Serialize for RationalCycle<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            map.serialize_entry(self.lattice.name(i), &c.to_string())?;
        }
        map.end()
    }
}

/// true iff an exact rational is an even integer.
pub fn is_even_integer(x: &BigRational) -> bool {
    x.is_integer() && x.to_integer().is_even()
}
