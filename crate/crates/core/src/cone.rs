//! The Lipman cone of anti-nef cycles, the fundamental cycle and bounded
//! enumerations of the cone.

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::cycle::{Cycle, CycleError};
use crate::lattice::Lattice;
use crate::open_book;

/// `(D, E_i) ≤ 0` for every vertex `i`.
pub fn is_antinef(d: &Cycle<'_>) -> bool {
    is_antinef_raw(d.lattice(), d.coefficients())
}

pub(crate) fn is_antinef_raw(lattice: &Lattice, coeffs: &[i64]) -> bool {
    (0..lattice.len()).all(|i| lattice.pair_vertex_raw(coeffs, i) <= 0)
}

/// Which qualifying vertex Laufer's algorithm bumps when several do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    LowestIndex,
    HighestIndex,
}

/// The fundamental cycle `Z_min` by Laufer's algorithm, lowest-index
/// tie-breaking.
pub fn compute_zmin(lattice: &Lattice) -> Cycle<'_> {
    compute_zmin_with(lattice, TieBreak::LowestIndex)
}

/// Starts at `E` and adds `E_i` while some `(Z, E_i) > 0`. Negative
/// definiteness bounds the walk by `Z_min`, so the loop terminates.
pub fn compute_zmin_with(lattice: &Lattice, tie_break: TieBreak) -> Cycle<'_> {
    let n = lattice.len();
    let mut z = vec![1i64; n];
    loop {
        let positive = |&i: &usize| lattice.pair_vertex_raw(&z, i) > 0;
        let pick = match tie_break {
            TieBreak::LowestIndex => (0..n).find(positive),
            TieBreak::HighestIndex => (0..n).rev().find(positive),
        };
        match pick {
            Some(i) => z[i] += 1,
            None => break,
        }
    }
    lattice.cycle(z).expect("length matches")
}

/// Visits every integer vector `0 ≤ v ≤ upper` in lexicographic order.
pub(crate) fn for_each_in_box(upper: &[i64], mut f: impl FnMut(&[i64])) {
    if upper.iter().any(|&u| u < 0) {
        return;
    }
    let n = upper.len();
    let mut cur = vec![0i64; n];
    loop {
        f(&cur);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if cur[k] < upper[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Number of points of the box `[0, bound]^n`, saturating.
pub fn box_size(n: usize, bound: i64) -> u64 {
    let side = u64::try_from(bound.max(-1) + 1).unwrap_or(0);
    (0..n).fold(1u64, |acc, _| acc.saturating_mul(side))
}

fn check_bound(bound: i64) -> Result<(), CycleError> {
    if bound <= 0 {
        Err(CycleError::InvalidBound(bound))
    } else {
        Ok(())
    }
}

/// Nonzero anti-nef cycles with every coefficient in `[0, bound]`, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct ConeEnumeration<'a> {
    pub bound: i64,
    pub elements: Vec<Cycle<'a>>,
}

impl<'a> ConeEnumeration<'a> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cycle<'a>> {
        self.elements.iter()
    }
}

#[derive(DeriveSerialize)]
struct ConeEntry<'c, 'a> {
    coefficients: &'c Cycle<'a>,
    antinef: bool,
}

impl Serialize for ConeEnumeration<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.elements.len()))?;
        for c in &self.elements {
            seq.serialize_element(&ConeEntry {
                coefficients: c,
                antinef: true,
            })?;
        }
        seq.end()
    }
}

pub fn enumerate_cone(lattice: &Lattice, bound: i64) -> Result<ConeEnumeration<'_>, CycleError> {
    check_bound(bound)?;
    let mut elements = Vec::new();
    for_each_in_box(&vec![bound; lattice.len()], |v| {
        if v.iter().any(|&m| m != 0) && is_antinef_raw(lattice, v) {
            elements.push(Cycle::from_raw(lattice, v.to_vec()));
        }
    });
    Ok(ConeEnumeration { bound, elements })
}

/// Cone elements within the bound whose open-book genus is `genus`. This is
/// only the part of the stratum inside `[0, bound]^n`.
pub fn genus_stratum(
    lattice: &Lattice,
    bound: i64,
    genus: i64,
) -> Result<Vec<Cycle<'_>>, CycleError> {
    let cone = enumerate_cone(lattice, bound)?;
    Ok(cone
        .elements
        .into_iter()
        .filter(|z| open_book::ob_genus(z).expect("cone elements are anti-nef") == genus)
        .collect())
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
    const E8_ZMIN: [i64; 8] = [6, 3, 4, 2, 5, 4, 3, 2];
    const A3: &str = "vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c";

    #[test]
    fn antinef_membership() {
        let a1 = lattice("vertex a -2");
        for m in 0..5 {
            assert!(is_antinef(&a1.reduced().scale(m)));
        }
        let e8 = lattice(E8);
        assert!(!is_antinef(&e8.reduced()));
        assert_eq!(e8.reduced().pair_vertex(0), 1);
        let z = e8.cycle(E8_ZMIN.to_vec()).unwrap();
        assert!(is_antinef(&z));
        let pairings: Vec<i64> = (0..8).map(|i| z.pair_vertex(i)).collect();
        assert_eq!(pairings, vec![0, 0, 0, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn laufer_on_small_graphs() {
        let a1 = lattice("vertex a -2");
        assert_eq!(compute_zmin(&a1), a1.reduced());
        let a3 = lattice(A3);
        assert_eq!(compute_zmin(&a3).coefficients(), &[1, 1, 1]);
        let e8 = lattice(E8);
        assert_eq!(compute_zmin(&e8).coefficients(), &E8_ZMIN);
        assert_eq!(
            compute_zmin_with(&e8, TieBreak::HighestIndex).coefficients(),
            &E8_ZMIN
        );
    }

    #[test]
    fn e8_zmin_matches_brute_force() {
        // componentwise-minimal anti-nef cycle among 0 < D ≤ 6E, using the
        // dense matrix directly
        let e8 = lattice(E8);
        let m = e8.matrix().to_rows();
        let mut found: Vec<Vec<i64>> = Vec::new();
        for_each_in_box(&[6; 8], |v| {
            if v.iter().all(|&x| x == 0) {
                return;
            }
            let antinef = (0..8).all(|i| (0..8).map(|j| m[i][j] * v[j]).sum::<i64>() <= 0);
            if antinef {
                found.push(v.to_vec());
            }
        });
        let minimal: Vec<&Vec<i64>> = found
            .iter()
            .filter(|v| {
                found
                    .iter()
                    .all(|w| v.iter().zip(w.iter()).all(|(a, b)| a <= b))
            })
            .collect();
        assert_eq!(minimal, vec![&E8_ZMIN.to_vec()]);
    }

    #[test]
    fn enumerations() {
        let a1 = lattice("vertex a -2");
        let cone = enumerate_cone(&a1, 5).unwrap();
        let coeffs: Vec<i64> = cone.iter().map(|c| c.coefficient(0)).collect();
        assert_eq!(coeffs, vec![1, 2, 3, 4, 5]);

        assert!(enumerate_cone(&lattice(E8), 5).unwrap().is_empty());

        let a3 = lattice(A3);
        let cone = enumerate_cone(&a3, 1).unwrap();
        assert_eq!(cone.len(), 1);
        assert_eq!(cone.elements[0].coefficients(), &[1, 1, 1]);

        assert_eq!(
            enumerate_cone(&a1, 0).unwrap_err(),
            CycleError::InvalidBound(0)
        );
        assert!(genus_stratum(&a1, -1, 0).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_positive() {
        let a3 = lattice(A3);
        let cone = enumerate_cone(&a3, 3).unwrap();
        assert!(cone
            .elements
            .windows(2)
            .all(|w| w[0].lex_cmp(&w[1]).is_lt()));
        let zmin = compute_zmin(&a3);
        for z in cone.iter() {
            assert!(a3.reduced().leq(z).unwrap());
            assert!(zmin.leq(z).unwrap());
        }
    }

    #[test]
    fn a1_strata() {
        let a1 = lattice("vertex a -2");
        let e = a1.reduced();
        assert_eq!(genus_stratum(&a1, 3, 0).unwrap(), vec![e.clone()]);
        assert_eq!(genus_stratum(&a1, 3, 1).unwrap(), vec![e.scale(2)]);
        assert_eq!(genus_stratum(&a1, 3, 4).unwrap(), vec![e.scale(3)]);
        assert!(genus_stratum(&a1, 3, -1).unwrap().is_empty());
    }

    #[test]
    fn box_scan_order() {
        let mut seen = Vec::new();
        for_each_in_box(&[1, 2], |v| seen.push(v.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
        assert_eq!(box_size(8, 2), 6561);
        assert_eq!(box_size(100, 9), u64::MAX);
    }

    #[test]
    fn json_shape() {
        let a1 = lattice("vertex a -2");
        let cone = enumerate_cone(&a1, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&cone).unwrap(),
            r#"[{"coefficients":{"a":1},"antinef":true},{"coefficients":{"a":2},"antinef":true}]"#
        );
    }
}
