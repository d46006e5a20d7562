//! Exhaustive bounded verification of the identities and inequalities
//! satisfied by open-book invariants.
//!
//! Every quantifier ranges over cycles with all coefficients in
//! `[0, bound]`, scanned in lexicographic order; the first violation found
//! in that order is the one reported. The statements checked here are
//! theorems, so a failing property means the implementation is wrong.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::cone::{self, for_each_in_box, TieBreak};
use crate::cycle::{is_even_integer, Cycle};
use crate::lattice::Lattice;
use crate::open_book;

/// Boxes larger than this need an explicit override in the CLI.
pub const INSTANCE_LIMIT: u64 = 10_000_000;

/// Hard cap on the precomputed table.
const TABLE_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("verification bound must be positive, got {0}")]
    InvalidBound(i64),
    #[error("box of {0} cycles is too large to scan")]
    TooLarge(u64),
}

/// The offending cycles and both sides of the violated relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(serialize_with = "serialize_labelled")]
    pub cycles: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

fn serialize_labelled<S: Serializer>(
    cycles: &[(String, String)],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(cycles.len()))?;
    for (label, literal) in cycles {
        map.serialize_entry(label, literal)?;
    }
    map.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub name: String,
    pub instances: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub graph: String,
    pub bound: i64,
    pub properties: Vec<PropertyRecord>,
    pub seconds: f64,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(|p| p.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyRecord> {
        self.properties.iter().filter(|p| !p.ok)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyRecord> {
        self.properties.iter().find(|p| p.name == name)
    }
}

struct Check {
    name: &'static str,
    instances: u64,
    counterexample: Option<Counterexample>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            instances: 0,
            counterexample: None,
        }
    }

    fn test(&mut self, holds: bool, witness: impl FnOnce() -> Counterexample) {
        self.instances += 1;
        if !holds && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> PropertyRecord {
        PropertyRecord {
            name: self.name.to_string(),
            instances: self.instances,
            ok: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

fn witness(
    cycles: &[(&str, &Cycle<'_>)],
    lhs: impl ToString,
    rhs: impl ToString,
) -> Counterexample {
    Counterexample {
        cycles: cycles
            .iter()
            .map(|(label, c)| (label.to_string(), c.to_string()))
            .collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

#[derive(Debug, Clone, Copy)]
struct BoxEntry {
    chi: i64,
    chi_neg: i64,
    square: i64,
    virtual_genus: i64,
}

impl BoxEntry {
    fn virtual_milnor(&self) -> i64 {
        self.virtual_genus + self.chi_neg
    }
}

/// Per-cycle data for the whole box `[0, bound]^n`, indexed by lexicographic
/// rank. Ranks are additive: `rank(A + B) = rank(A) + rank(B)` whenever
/// `A + B` stays in the box.
struct Context<'a> {
    lattice: &'a Lattice,
    bound: i64,
    strides: Vec<usize>,
    table: Vec<BoxEntry>,
    cone: Vec<Cycle<'a>>,
    zmin: Cycle<'a>,
}

impl<'a> Context<'a> {
    fn new(lattice: &'a Lattice, bound: i64) -> Result<Self, VerifyError> {
        if bound <= 0 {
            return Err(VerifyError::InvalidBound(bound));
        }
        let n = lattice.len();
        let size = cone::box_size(n, bound);
        if size > TABLE_LIMIT {
            return Err(VerifyError::TooLarge(size));
        }
        let radix = (bound + 1) as usize;
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radix;
        }
        let mut table = Vec::with_capacity(size as usize);
        for_each_in_box(&vec![bound; n], |v| {
            table.push(BoxEntry {
                chi: lattice.euler_char_raw(v),
                chi_neg: lattice.euler_char_neg_raw(v),
                square: lattice.pair_raw(v, v),
                virtual_genus: open_book::virtual_genus_raw(lattice, v),
            });
        });
        let cone = cone::enumerate_cone(lattice, bound)
            .expect("bound checked")
            .elements;
        Ok(Context {
            lattice,
            bound,
            strides,
            table,
            cone,
            zmin: cone::compute_zmin(lattice),
        })
    }

    fn rank(&self, v: &[i64]) -> usize {
        v.iter()
            .zip(&self.strides)
            .map(|(&m, &s)| m as usize * s)
            .sum()
    }

    fn cycle(&self, v: &[i64]) -> Cycle<'a> {
        self.lattice.cycle(v.to_vec()).expect("length matches")
    }

    /// Visits every point of the box with its rank.
    fn for_each(&self, mut f: impl FnMut(&[i64], usize)) {
        let mut rank = 0;
        for_each_in_box(&vec![self.bound; self.lattice.len()], |v| {
            f(v, rank);
            rank += 1;
        });
    }

    /// Cone elements, followed by `Z_min` when it lies outside the box.
    fn open_book_cycles(&self) -> Vec<Cycle<'a>> {
        let mut out = self.cone.clone();
        if !out.contains(&self.zmin) {
            out.push(self.zmin.clone());
        }
        out
    }

    fn cone_properties(&self) -> Vec<PropertyRecord> {
        let reduced = self.lattice.reduced();
        let mut positive = Check::new("cone_elements_at_least_reduced");
        let mut below = Check::new("zmin_below_cone_elements");
        for z in &self.cone {
            positive.test(reduced.leq(z).unwrap(), || witness(&[("Z", z)], "E", z));
            below.test(self.zmin.leq(z).unwrap(), || {
                witness(&[("Z", z)], &self.zmin, z)
            });
        }

        let mut antinef = Check::new("zmin_antinef");
        antinef.test(cone::is_antinef(&self.zmin), || {
            let worst = (0..self.lattice.len())
                .map(|i| self.zmin.pair_vertex(i))
                .max()
                .unwrap_or(0);
            witness(&[("Z_min", &self.zmin)], worst, 0)
        });

        let mut tie = Check::new("zmin_tiebreak_independent");
        let other = cone::compute_zmin_with(self.lattice, TieBreak::HighestIndex);
        tie.test(other == self.zmin, || {
            witness(
                &[("lowest", &self.zmin), ("highest", &other)],
                &self.zmin,
                &other,
            )
        });

        let mut semigroup = Check::new("cone_semigroup");
        for (i, a) in self.cone.iter().enumerate() {
            for b in &self.cone[i..] {
                let sum = a.try_add(b).unwrap();
                semigroup.test(cone::is_antinef(&sum), || {
                    witness(&[("A", a), ("B", b)], "A+B not anti-nef", "anti-nef")
                });
            }
        }
        vec![
            positive.finish(),
            antinef.finish(),
            below.finish(),
            tie.finish(),
            semigroup.finish(),
        ]
    }

    fn positivity(&self) -> PropertyRecord {
        let mut check = Check::new("virtual_genus_nonnegative");
        self.for_each(|v, r| {
            let g = self.table[r].virtual_genus;
            check.test(g >= 0, || witness(&[("D", &self.cycle(v))], g, 0));
        });
        check.finish()
    }

    /// `value(Z + D) ≥ base(Z)` for cone elements `Z` and `D ≥ 0` with
    /// `Z + D` in the box, plus the comparable-pair form on the cone.
    fn monotone(
        &self,
        names: [&'static str; 3],
        base: impl Fn(&Cycle<'a>) -> i64,
        value: impl Fn(&BoxEntry) -> i64,
        virtual_value: impl Fn(&Lattice, &[i64]) -> i64,
    ) -> Vec<PropertyRecord> {
        let mut theorem = Check::new(names[0]);
        for z in &self.cone {
            let z_rank = self.rank(z.coefficients());
            let z_value = base(z);
            let room: Vec<i64> = z.coefficients().iter().map(|&m| self.bound - m).collect();
            for_each_in_box(&room, |d| {
                let sum = value(&self.table[z_rank + self.rank(d)]);
                theorem.test(sum >= z_value, || {
                    witness(&[("Z", z), ("D", &self.cycle(d))], sum, z_value)
                });
            });
        }

        let mut corollary = Check::new(names[1]);
        let values: Vec<i64> = self.cone.iter().map(&base).collect();
        for (i, z1) in self.cone.iter().enumerate() {
            for (j, z2) in self.cone.iter().enumerate() {
                if i != j && z1.leq(z2).unwrap() {
                    corollary.test(values[i] <= values[j], || {
                        witness(&[("Z1", z1), ("Z2", z2)], values[i], values[j])
                    });
                }
            }
        }

        let mut above = Check::new(names[2]);
        let zmin_value = base(&self.zmin);
        let mut shifted = vec![0i64; self.lattice.len()];
        self.for_each(|d, _| {
            for (s, (&z, &m)) in shifted
                .iter_mut()
                .zip(self.zmin.coefficients().iter().zip(d))
            {
                *s = z + m;
            }
            let v = virtual_value(self.lattice, &shifted);
            above.test(v >= zmin_value, || {
                witness(
                    &[("Z_min", &self.zmin), ("D", &self.cycle(d))],
                    v,
                    zmin_value,
                )
            });
        });
        vec![theorem.finish(), corollary.finish(), above.finish()]
    }

    fn genus_monotone(&self) -> Vec<PropertyRecord> {
        self.monotone(
            [
                "genus_monotone",
                "genus_monotone_on_cone",
                "genus_monotone_above_zmin",
            ],
            |z| open_book::ob_genus(z).expect("anti-nef"),
            |e| e.virtual_genus,
            open_book::virtual_genus_raw,
        )
    }

    fn mu_theorem(&self) -> Vec<PropertyRecord> {
        let mut chi_neg = Check::new("chi_minus_nonnegative");
        let mut mu_ge_g = Check::new("virtual_milnor_ge_virtual_genus");
        self.for_each(|v, r| {
            let e = self.table[r];
            chi_neg.test(e.chi_neg >= 0, || {
                witness(&[("D", &self.cycle(v))], e.chi_neg, 0)
            });
            let (mu, g) = (e.virtual_milnor(), e.virtual_genus);
            mu_ge_g.test(mu >= g && g >= 0, || {
                witness(
                    &[("D", &self.cycle(v))],
                    format!("mu={mu}"),
                    format!("g={g}"),
                )
            });
        });
        let mut out = vec![chi_neg.finish(), mu_ge_g.finish()];
        out.extend(self.monotone(
            [
                "milnor_monotone",
                "milnor_monotone_on_cone",
                "milnor_monotone_above_zmin",
            ],
            |z| open_book::milnor_number(z).expect("anti-nef"),
            BoxEntry::virtual_milnor,
            |l, v| open_book::virtual_genus_raw(l, v) + l.euler_char_neg_raw(v),
        ));
        out
    }

    fn identities(&self) -> Vec<PropertyRecord> {
        let mut eq1 = Check::new("milnor_genus_binding");
        let mut genus_chi = Check::new("milnor_genus_chi");
        let mut extends = Check::new("virtual_invariants_extend");
        let mut acampo = Check::new("acampo_formula");
        let mut binding = Check::new("binding_vector_sum");
        let mut lower = Check::new("genus_lower_bound");
        for z in self.open_book_cycles() {
            let zs = [("Z", &z)];
            let beta = open_book::binding_count(&z).expect("anti-nef");
            let genus = open_book::ob_genus(&z).expect("anti-nef");
            let mu = open_book::milnor_number(&z).expect("anti-nef");
            let chi_neg = z.negated().euler_char();
            eq1.test(mu == 2 * genus - 1 + beta, || {
                witness(&zs, mu, 2 * genus - 1 + beta)
            });
            genus_chi.test(mu == genus + chi_neg, || witness(&zs, mu, genus + chi_neg));
            let vg = open_book::virtual_genus(&z).unwrap();
            let vm = open_book::virtual_milnor(&z).unwrap();
            extends.test(vg == genus && vm == mu, || {
                witness(&zs, format!("g={vg},mu={vm}"), format!("g={genus},mu={mu}"))
            });
            let (lhs, rhs) = open_book::acampo_sides(&z).expect("anti-nef");
            acampo.test(lhs == rhs, || witness(&zs, lhs, rhs));
            let k = open_book::binding_vector(&z).expect("anti-nef");
            let total: i64 = k.iter().sum();
            binding.test(
                total == beta && beta >= 1 && k.iter().all(|&x| x >= 0),
                || witness(&zs, total, beta),
            );
            let bound = 1 - z.euler_char();
            lower.test(genus >= bound, || witness(&zs, genus, bound));
        }

        let mut reflection = Check::new("chi_reflection");
        let mut integrality = Check::new("chi_integral_via_canonical");
        self.for_each(|v, r| {
            let e = self.table[r];
            let sum = e.chi_neg + e.chi + e.square;
            reflection.test(sum == 0, || witness(&[("D", &self.cycle(v))], sum, 0));
            let d = self.cycle(v);
            let twice = d.to_rational().twice_euler_char();
            let holds = is_even_integer(&twice) && twice.to_integer() == (2 * e.chi).into();
            integrality.test(holds, || witness(&[("D", &d)], &twice, 2 * e.chi));
        });

        let mut additivity = Check::new("chi_additivity");
        self.for_each(|a, ra| {
            let room: Vec<i64> = a.iter().map(|&m| self.bound - m).collect();
            let chi_a = self.table[ra].chi;
            for_each_in_box(&room, |b| {
                let rb = self.rank(b);
                let lhs = self.table[ra + rb].chi;
                let rhs = chi_a + self.table[rb].chi - self.lattice.pair_raw(a, b);
                additivity.test(lhs == rhs, || {
                    witness(&[("A", &self.cycle(a)), ("B", &self.cycle(b))], lhs, rhs)
                });
            });
        });

        let mut adjunction = Check::new("canonical_cycle_equations");
        let k = self.lattice.canonical_cycle();
        for i in 0..self.lattice.len() {
            let ei = self.lattice.basis(i);
            let er = ei.to_rational();
            let value =
                k.pair(&er).unwrap() + er.pair(&er).unwrap() + BigRational::from_integer(2.into());
            adjunction.test(value.is_zero(), || witness(&[("E_i", &ei)], &value, 0));
        }

        let contact = open_book::contact_invariants(self.lattice);
        let zs = [("Z_min", &contact.zmin)];
        let mut relation = Check::new("contact_norm_relation");
        relation.test(contact.norm - contact.bn == 2 * contact.sg - 2, || {
            witness(&zs, contact.norm - contact.bn, 2 * contact.sg - 2)
        });
        let mut minimal = Check::new("minimal_rational_genus_zero");
        minimal.test(
            !(contact.minimal && contact.rational) || contact.sg == 0,
            || witness(&zs, contact.sg, 0),
        );

        vec![
            eq1.finish(),
            genus_chi.finish(),
            extends.finish(),
            acampo.finish(),
            binding.finish(),
            lower.finish(),
            reflection.finish(),
            additivity.finish(),
            integrality.finish(),
            adjunction.finish(),
            relation.finish(),
            minimal.finish(),
        ]
    }
}

/// Fundamental-cycle invariants: `Z ≥ E` on the cone, `Z_min` anti-nef and
/// below every cone element, tie-break independence, closure under sums.
pub fn verify_cone(lattice: &Lattice, bound: i64) -> Result<Vec<PropertyRecord>, VerifyError> {
    Ok(Context::new(lattice, bound)?.cone_properties())
}

/// Virtual genus is nonnegative on every `0 ≤ D ≤ bound·E`.
pub fn verify_positivity(lattice: &Lattice, bound: i64) -> Result<PropertyRecord, VerifyError> {
    Ok(Context::new(lattice, bound)?.positivity())
}

pub fn verify_genus_monotone(
    lattice: &Lattice,
    bound: i64,
) -> Result<Vec<PropertyRecord>, VerifyError> {
    Ok(Context::new(lattice, bound)?.genus_monotone())
}

/// `χ(-D) ≥ 0`, `μ(D) ≥ g(D) ≥ 0` and monotonicity of `μ`.
pub fn verify_mu_theorem(
    lattice: &Lattice,
    bound: i64,
) -> Result<Vec<PropertyRecord>, VerifyError> {
    Ok(Context::new(lattice, bound)?.mu_theorem())
}

pub fn verify_identities(
    lattice: &Lattice,
    bound: i64,
) -> Result<Vec<PropertyRecord>, VerifyError> {
    Ok(Context::new(lattice, bound)?.identities())
}

pub fn run_suite(
    lattice: &Lattice,
    graph_id: &str,
    bound: i64,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let ctx = Context::new(lattice, bound)?;
    let mut properties = ctx.cone_properties();
    properties.push(ctx.positivity());
    properties.extend(ctx.genus_monotone());
    properties.extend(ctx.mu_theorem());
    properties.extend(ctx.identities());
    Ok(VerificationReport {
        graph: graph_id.to_string(),
        bound,
        properties,
        seconds: start.elapsed().as_secs_f64(),
    })
}
