//! Numerical invariants of the Milnor open book attached to an anti-nef
//! cycle `Z`, their formal ("virtual") extensions to all effective cycles,
//! and the invariants of the canonical contact structure.
//!
//! For `Z` nonzero anti-nef:
//!
//! * binding number `β(Z) = -(Z, E)`, split over vertices as `k_i = -(Z, E_i)`;
//! * page genus `g(Z) = 1 + (Z, E) + χ(-Z)`;
//! * Milnor number `μ(Z) = 1 + (Z, E) + 2χ(-Z) = 2g(Z) - 1 + β(Z)`.
//!
//! For arbitrary `D ≥ 0` the virtual genus is `#(D) + (D, |D|) + χ(-D)`,
//! where `#(D)` counts connected components of the support, and the virtual
//! Milnor number is `g(D) + χ(-D)`.

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::cone::{self, is_antinef};
use crate::cycle::{Cycle, CycleError};
use crate::lattice::Lattice;

fn require_open_book(z: &Cycle<'_>) -> Result<(), CycleError> {
    if z.is_zero() {
        return Err(CycleError::Zero);
    }
    if !is_antinef(z) {
        return Err(CycleError::NotAntinef(z.to_string()));
    }
    Ok(())
}

fn require_effective(d: &Cycle<'_>) -> Result<(), CycleError> {
    if d.is_effective() {
        Ok(())
    } else {
        Err(CycleError::NegativeCoefficient(d.to_string()))
    }
}

fn pair_reduced(lattice: &Lattice, coeffs: &[i64]) -> i64 {
    (0..lattice.len())
        .map(|i| lattice.pair_vertex_raw(coeffs, i))
        .sum()
}

/// `β(Z) = -(Z, E)`.
pub fn binding_count(z: &Cycle<'_>) -> Result<i64, CycleError> {
    require_open_book(z)?;
    let beta = -pair_reduced(z.lattice(), z.coefficients());
    assert!(beta >= 1, "binding number {beta} < 1 for anti-nef {z}");
    Ok(beta)
}

/// `k_i = -(Z, E_i)`, the binding components meeting `E_i`.
pub fn binding_vector(z: &Cycle<'_>) -> Result<Vec<i64>, CycleError> {
    require_open_book(z)?;
    Ok((0..z.lattice().len()).map(|i| -z.pair_vertex(i)).collect())
}

pub fn ob_genus(z: &Cycle<'_>) -> Result<i64, CycleError> {
    require_open_book(z)?;
    let l = z.lattice();
    let g = 1 + pair_reduced(l, z.coefficients()) + l.euler_char_neg_raw(z.coefficients());
    assert!(g >= 0, "page genus {g} < 0 for anti-nef {z}");
    Ok(g)
}

pub fn milnor_number(z: &Cycle<'_>) -> Result<i64, CycleError> {
    require_open_book(z)?;
    let l = z.lattice();
    let mu = 1 + pair_reduced(l, z.coefficients()) + 2 * l.euler_char_neg_raw(z.coefficients());
    assert!(mu >= 0, "Milnor number {mu} < 0 for anti-nef {z}");
    Ok(mu)
}

pub(crate) fn virtual_genus_raw(lattice: &Lattice, coeffs: &[i64]) -> i64 {
    let mask: Vec<bool> = coeffs.iter().map(|&m| m != 0).collect();
    let components = lattice.components_within(&mask) as i64;
    let support: Vec<i64> = mask.iter().map(|&b| i64::from(b)).collect();
    components + lattice.pair_raw(coeffs, &support) + lattice.euler_char_neg_raw(coeffs)
}

pub fn virtual_genus(d: &Cycle<'_>) -> Result<i64, CycleError> {
    require_effective(d)?;
    Ok(virtual_genus_raw(d.lattice(), d.coefficients()))
}

pub fn virtual_milnor(d: &Cycle<'_>) -> Result<i64, CycleError> {
    require_effective(d)?;
    let l = d.lattice();
    Ok(virtual_genus_raw(l, d.coefficients()) + l.euler_char_neg_raw(d.coefficients()))
}

/// A'Campo's formula `1 - μ = Σ_i (2 - ν_i - k_i) m_i`.
pub fn acampo_check(z: &Cycle<'_>) -> Result<bool, CycleError> {
    let (lhs, rhs) = acampo_sides(z)?;
    Ok(lhs == rhs)
}

/// Both sides `(1 - μ(Z), Σ_i (2 - ν_i - k_i) m_i)` of A'Campo's formula.
pub fn acampo_sides(z: &Cycle<'_>) -> Result<(i64, i64), CycleError> {
    let mu = milnor_number(z)?;
    let k = binding_vector(z)?;
    let g = z.lattice().graph();
    let rhs = (0..g.len())
        .map(|i| (2 - g.valence_at(i) as i64 - k[i]) * z.coefficient(i))
        .sum();
    Ok((1 - mu, rhs))
}

/// `g(Z) ≥ 1 - χ(Z)`.
pub fn genus_lower_bound_check(z: &Cycle<'_>) -> Result<bool, CycleError> {
    Ok(ob_genus(z)? >= 1 - z.euler_char())
}

/// All invariants of the open book of one anti-nef cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookReport<'a> {
    pub cycle: Cycle<'a>,
    pub antinef: bool,
    pub beta: i64,
    pub genus: i64,
    pub milnor: i64,
    pub chi_minus: i64,
    pub binding_vector: Vec<i64>,
}

impl<'a> OpenBookReport<'a> {
    pub fn new(z: &Cycle<'a>) -> Result<Self, CycleError> {
        let report = OpenBookReport {
            cycle: z.clone(),
            antinef: true,
            beta: binding_count(z)?,
            genus: ob_genus(z)?,
            milnor: milnor_number(z)?,
            chi_minus: z.negated().euler_char(),
            binding_vector: binding_vector(z)?,
        };
        debug_assert_eq!(report.milnor, 2 * report.genus - 1 + report.beta);
        debug_assert_eq!(report.milnor, report.genus + report.chi_minus);
        Ok(report)
    }
}

struct VertexValues<'r, 'a>(&'r Cycle<'a>, &'r [i64]);

impl Serialize for VertexValues<'_, '_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let lattice = self.0.lattice();
        let mut map = serializer.serialize_map(Some(self.1.len()))?;
        for (i, v) in self.1.iter().enumerate() {
            map.serialize_entry(lattice.name(i), v)?;
        }
        map.end()
    }
}

impl Serialize for OpenBookReport<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OpenBookReport", 7)?;
        s.serialize_field("cycle", &self.cycle)?;
        s.serialize_field("antinef", &self.antinef)?;
        s.serialize_field("beta", &self.beta)?;
        s.serialize_field("genus", &self.genus)?;
        s.serialize_field("milnor", &self.milnor)?;
        s.serialize_field("chi_minus", &self.chi_minus)?;
        s.serialize_field(
            "binding_vector",
            &VertexValues(&self.cycle, &self.binding_vector),
        )?;
        s.end()
    }
}

/// Support genus, binding number and norm of the canonical contact
/// structure, restricted to Milnor open books.
#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct ContactReport<'a> {
    pub sg: i64,
    pub bn: i64,
    pub norm: i64,
    /// `χ(Z_min) = 1`
    pub rational: bool,
    /// `Z_min = E`
    pub minimal: bool,
    pub zmin: Cycle<'a>,
}

pub fn contact_invariants(lattice: &Lattice) -> ContactReport<'_> {
    let zmin = cone::compute_zmin(lattice);
    let sg = ob_genus(&zmin).expect("Z_min is anti-nef");
    let bn = binding_count(&zmin).expect("Z_min is anti-nef");
    let norm = milnor_number(&zmin).expect("Z_min is anti-nef") - 1;
    ContactReport {
        sg,
        bn,
        norm,
        rational: zmin.euler_char() == 1,
        minimal: zmin == lattice.reduced(),
        zmin,
    }
}

/// Minimizers of `μ` and `β` on the genus-`a` stratum within a bound.
#[derive(Debug, Clone)]
pub struct StratumMinimizers<'a> {
    pub genus: i64,
    pub bound: i64,
    pub stratum: Vec<Cycle<'a>>,
    pub min_milnor: i64,
    pub min_beta: i64,
    pub milnor_argmin: Vec<Cycle<'a>>,
    pub beta_argmin: Vec<Cycle<'a>>,
}

impl StratumMinimizers<'_> {
    pub fn argmins_agree(&self) -> bool {
        self.milnor_argmin == self.beta_argmin
    }
}

/// `Ok(None)` when the stratum has no element within the bound.
pub fn stratum_minimizers(
    lattice: &Lattice,
    bound: i64,
    genus: i64,
) -> Result<Option<StratumMinimizers<'_>>, CycleError> {
    let stratum = cone::genus_stratum(lattice, bound, genus)?;
    if stratum.is_empty() {
        return Ok(None);
    }
    let invariants: Vec<(i64, i64)> = stratum
        .iter()
        .map(|z| Ok((milnor_number(z)?, binding_count(z)?)))
        .collect::<Result<_, CycleError>>()?;
    let min_milnor = invariants.iter().map(|p| p.0).min().expect("nonempty");
    let min_beta = invariants.iter().map(|p| p.1).min().expect("nonempty");
    let pick = |keep: &dyn Fn(&(i64, i64)) -> bool| {
        stratum
            .iter()
            .zip(&invariants)
            .filter(|(_, inv)| keep(inv))
            .map(|(z, _)| z.clone())
            .collect::<Vec<_>>()
    };
    let milnor_argmin = pick(&|inv| inv.0 == min_milnor);
    let beta_argmin = pick(&|inv| inv.1 == min_beta);
    Ok(Some(StratumMinimizers {
        genus,
        bound,
        stratum,
        min_milnor,
        min_beta,
        milnor_argmin,
        beta_argmin,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PlumbingGraph;

    fn lattice(text: &str) -> Lattice {
        PlumbingGraph::parse(text).unwrap().validate().unwrap()
    }

    const E8: &str = "vertex c -2\nvertex a1 -2\nvertex b1 -2\nvertex b2 -2\n\
        vertex d1 -2\nvertex d2 -2\nvertex d3 -2\nvertex d4 -2\n\
        edge c a1\nedge c b1\nedge b1 b2\nedge c d1\nedge d1 d2\nedge d2 d3\nedge d3 d4\n";
    const A3: &str = "vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c";

    #[test]
    fn binding_numbers() {
        let a1 = lattice("vertex a -2");
        assert_eq!(binding_count(&a1.reduced()), Ok(2));
        assert_eq!(binding_vector(&a1.reduced()), Ok(vec![2]));
        let v3 = lattice("vertex a -3");
        assert_eq!(binding_count(&v3.reduced()), Ok(3));
        let a3 = lattice(A3);
        assert_eq!(binding_vector(&a3.reduced()), Ok(vec![1, 0, 1]));
        let e8 = lattice(E8);
        let z = cone::compute_zmin(&e8);
        assert_eq!(e8.reduced().pair(&z), Ok(-1));
        assert_eq!(binding_count(&z), Ok(1));
        assert_eq!(binding_vector(&z), Ok(vec![0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn genera_and_milnor_numbers() {
        let a1 = lattice("vertex a -2");
        assert_eq!(ob_genus(&a1.reduced()), Ok(0));
        assert_eq!(milnor_number(&a1.reduced()), Ok(1));
        let v3 = lattice("vertex a -3");
        assert_eq!(ob_genus(&v3.reduced()), Ok(0));
        assert_eq!(milnor_number(&v3.reduced()), Ok(2));
        let e8 = lattice(E8);
        let z = cone::compute_zmin(&e8);
        assert_eq!(ob_genus(&z), Ok(1));
        assert_eq!(milnor_number(&z), Ok(2));
        assert_eq!(virtual_genus(&z), Ok(1));
        assert_eq!(virtual_milnor(&z), Ok(2));
    }

    #[test]
    fn virtual_invariants() {
        let a3 = lattice(A3);
        assert_eq!(virtual_genus(&a3.zero()), Ok(0));
        assert_eq!(virtual_milnor(&a3.zero()), Ok(0));
        let d = a3.cycle(vec![1, 0, 1]).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.pair(&d), Ok(-4));
        assert_eq!(d.negated().euler_char(), 2);
        assert_eq!(virtual_genus(&d), Ok(0));
        assert_eq!(virtual_milnor(&d), Ok(2));
        let neg = a3.cycle(vec![1, -1, 0]).unwrap();
        assert!(matches!(
            virtual_genus(&neg),
            Err(CycleError::NegativeCoefficient(_))
        ));
    }

    #[test]
    fn rejects_non_open_book_cycles() {
        let e8 = lattice(E8);
        assert!(matches!(
            ob_genus(&e8.reduced()),
            Err(CycleError::NotAntinef(_))
        ));
        assert_eq!(binding_count(&e8.zero()), Err(CycleError::Zero));
        assert!(OpenBookReport::new(&e8.reduced()).is_err());
    }

    #[test]
    fn acampo_formula() {
        let e8 = lattice(E8);
        let z = cone::compute_zmin(&e8);
        assert_eq!(acampo_sides(&z), Ok((-1, -1)));
        let a1 = lattice("vertex a -2");
        assert_eq!(acampo_sides(&a1.reduced()), Ok((0, 0)));
        let a3 = lattice(A3);
        assert_eq!(acampo_sides(&a3.reduced()), Ok((0, 0)));
        assert_eq!(acampo_check(&z), Ok(true));
    }

    #[test]
    fn lower_bound() {
        for text in ["vertex a -2", "vertex a -3", E8] {
            let l = lattice(text);
            assert_eq!(genus_lower_bound_check(&cone::compute_zmin(&l)), Ok(true));
        }
    }

    #[test]
    fn contact_reports() {
        let a1 = lattice("vertex a -2");
        let c = contact_invariants(&a1);
        assert_eq!(
            (c.sg, c.bn, c.norm, c.rational, c.minimal),
            (0, 2, 0, true, true)
        );
        let e8 = lattice(E8);
        let c = contact_invariants(&e8);
        assert_eq!(
            (c.sg, c.bn, c.norm, c.rational, c.minimal),
            (1, 1, 1, true, false)
        );
        assert_eq!(c.zmin.self_intersection(), -2);
        let v3 = lattice("vertex a -3");
        let c = contact_invariants(&v3);
        assert_eq!(
            (c.sg, c.bn, c.norm, c.rational, c.minimal),
            (0, 3, 1, true, true)
        );
        assert_eq!(c.norm - c.bn, 2 * c.sg - 2);
    }

    #[test]
    fn report_json() {
        let a3 = lattice(A3);
        let r = OpenBookReport::new(&a3.reduced()).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"cycle":{"a":1,"b":1,"c":1},"antinef":true,"beta":2,"genus":0,"milnor":1,"chi_minus":1,"binding_vector":{"a":1,"b":0,"c":1}}"#
        );
        let e8 = lattice(E8);
        let json = serde_json::to_string(&contact_invariants(&e8)).unwrap();
        assert!(json.starts_with(
            r#"{"sg":1,"bn":1,"norm":1,"rational":true,"minimal":false,"zmin":{"c":6,"#
        ));
    }

    #[test]
    fn a1_stratum_minimizers() {
        let a1 = lattice("vertex a -2");
        let e = a1.reduced();
        let s = stratum_minimizers(&a1, 3, 0).unwrap().unwrap();
        assert_eq!(s.milnor_argmin, vec![e.clone()]);
        assert!(s.argmins_agree());
        let s = stratum_minimizers(&a1, 3, 1).unwrap().unwrap();
        assert_eq!(s.beta_argmin, vec![e.scale(2)]);
        assert!(s.argmins_agree());
        assert!(stratum_minimizers(&a1, 3, 2).unwrap().is_none());
    }

    #[test]
    fn zmin_minimizes_its_stratum() {
        let e8 = lattice(E8);
        let z = cone::compute_zmin(&e8);
        let s = stratum_minimizers(&e8, 6, 1).unwrap().unwrap();
        assert!(s.milnor_argmin.contains(&z));
        assert!(s.beta_argmin.contains(&z));
        assert_eq!(s.min_milnor, milnor_number(&z).unwrap());
        assert_eq!(s.min_beta, binding_count(&z).unwrap());
    }
}
