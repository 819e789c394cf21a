#![allow(dead_code)]

use std::collections::BTreeSet;

use nl_dichromate::digraph::{matroid_from_digraph, Digraph};
use nl_dichromate::exact::RatMatrix;
use nl_dichromate::om::RealizedOM;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn om(cols: usize, rows: &[&[i64]]) -> RealizedOM {
    RealizedOM::from_rat_matrix(&RatMatrix::from_i64_rows(cols, rows).unwrap()).unwrap()
}

pub fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, arcs.to_vec()).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Loop-free digraphs on `vertices` vertices without parallel arcs
/// (antiparallel pairs allowed) and at most `max_arcs` arcs, one per
/// isomorphism class. Smaller vertex counts appear as isolated vertices.
pub fn simple_digraphs(vertices: usize, max_arcs: usize) -> Vec<Digraph> {
    let slots: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|t| (0..vertices).filter(move |&h| h != t).map(move |h| (t, h)))
        .collect();
    let perms = permutations(vertices);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << slots.len() {
        if mask.count_ones() as usize > max_arcs {
            continue;
        }
        let arcs: Vec<(usize, usize)> = (0..slots.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| slots[i])
            .collect();
        let canonical = perms
            .iter()
            .map(|p| {
                let mut a: Vec<(usize, usize)> = arcs.iter().map(|&(t, h)| (p[t], p[h])).collect();
                a.sort();
                a
            })
            .min()
            .unwrap();
        if seen.insert(canonical.clone()) {
            out.push(digraph(vertices, &canonical));
        }
    }
    out
}

/// Small digraphs with self-loops and parallel arcs.
pub fn multi_digraphs() -> Vec<Digraph> {
    vec![
        digraph(1, &[(0, 0)]),
        digraph(2, &[(0, 1), (0, 1)]),
        digraph(2, &[(0, 1), (1, 0), (0, 1)]),
        digraph(2, &[(0, 1), (1, 1)]),
        digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]),
        digraph(3, &[(0, 1), (0, 1), (1, 2), (2, 1), (2, 0)]),
        digraph(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2), (2, 2)]),
    ]
}

/// Named test matroids with at most six elements: every graphic matroid
/// from [`simple_digraphs`]`(4, 6)` and [`multi_digraphs`], plus a few
/// matrices that are not graphic.
pub fn matroid_suite() -> Vec<(String, RealizedOM)> {
    let mut suite = vec![
        (
            "identity I_3".to_string(),
            om(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ),
        ("coloop".to_string(), om(1, &[&[1]])),
        ("digon".to_string(), om(2, &[&[1, -1]])),
        ("loop".to_string(), om(1, &[&[0]])),
        (
            "empty".to_string(),
            RealizedOM::from_rat_matrix(&RatMatrix::zeros(0, 0)).unwrap(),
        ),
        ("U(2,4)".to_string(), om(4, &[&[1, 0, 1, 1], &[0, 1, 1, 2]])),
        (
            "U(3,6)".to_string(),
            om(
                6,
                &[
                    &[1, 0, 0, 1, 1, 1],
                    &[0, 1, 0, 1, 2, 3],
                    &[0, 0, 1, 1, 4, 9],
                ],
            ),
        ),
        (
            "rank 2 with loop and parallels".to_string(),
            om(5, &[&[1, 0, 2, 0, -1], &[0, 1, 0, 0, 3]]),
        ),
        (
            "U(2,3) mixed signs".to_string(),
            om(3, &[&[2, 0, -3], &[0, 5, 7]]),
        ),
    ];
    for d in simple_digraphs(4, 6).into_iter().chain(multi_digraphs()) {
        let name = format!("digraph {:?}", d.arcs());
        suite.push((name, matroid_from_digraph(&d).unwrap()));
    }
    suite
}

/// Random digraphs with 1 to 4 vertices and 0 to 6 arcs, parallel arcs
/// allowed, from a fixed seed.
pub fn random_digraphs(seed: u64, count: usize, allow_loops: bool) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            // a single vertex only carries loops
            let m = if n == 1 && !allow_loops {
                0
            } else {
                rng.gen_range(0..=6)
            };
            let arcs = (0..m)
                .map(|_| loop {
                    let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    if allow_loops || t != h {
                        break (t, h);
                    }
                })
                .collect::<Vec<_>>();
            digraph(n, &arcs)
        })
        .collect()
}
