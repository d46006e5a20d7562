#![allow(dead_code)]

use std::path::PathBuf;

use plumbing::{Lattice, PlumbingGraph};

pub const ADE: [&str; 10] = ["a1", "a2", "a3", "a4", "a5", "d4", "d5", "e6", "e7", "e8"];
pub const NON_RATIONAL: [&str; 2] = ["brieskorn_2_3_7", "star_2_3333"];

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(format!("{name}.graph"))
}

pub fn graph(name: &str) -> PlumbingGraph {
    let text = std::fs::read_to_string(data(name)).expect("corpus file");
    PlumbingGraph::parse(&text).expect("corpus file parses")
}

pub fn lattice(name: &str) -> Lattice {
    graph(name).validate().expect("corpus graph is valid")
}

/// ADE graphs, the single (-3)-curve and the two non-rational stars.
pub fn corpus() -> Vec<&'static str> {
    let mut names: Vec<&str> = ADE.to_vec();
    names.push("v3");
    names.extend(NON_RATIONAL);
    names
}

/// Componentwise-minimal nonzero anti-nef cycle among `0 ≤ D ≤ cap·E`,
/// computed from the dense intersection matrix. `None` if the box holds no
/// anti-nef cycle or no single minimal one.
pub fn brute_force_zmin(lattice: &Lattice, cap: i64) -> Option<Vec<i64>> {
    let m = lattice.matrix().to_rows();
    let n = m.len();
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; n];
    'scan: loop {
        if cur.iter().any(|&x| x != 0)
            && (0..n).all(|i| (0..n).map(|j| m[i][j] * cur[j]).sum::<i64>() <= 0)
        {
            found.push(cur.clone());
        }
        for k in (0..n).rev() {
            if cur[k] < cap {
                cur[k] += 1;
                continue 'scan;
            }
            cur[k] = 0;
        }
        break;
    }
    found
        .iter()
        .find(|v| found.iter().all(|w| v.iter().zip(w).all(|(a, b)| a <= b)))
        .cloned()
}
