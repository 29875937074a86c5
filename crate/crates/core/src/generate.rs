//! Graph generators: Turán graphs, named families, seeded random models,
//! and exhaustive labeled enumeration at desk scale.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{upper_triangle_pairs, Graph};
use crate::Result;

/// Retry cap for the pairing-model regular sampler.
pub const REGULAR_RETRY_CAP: usize = 10_000;

/// Labeled enumeration ceiling: 2^21 graphs at n = 7.
pub const ENUMERATE_MAX_N: usize = 7;

/// Balanced complete multipartite (Turán) graph T(n, w): w parts of size
/// ceil(n/w) or floor(n/w), edges exactly between distinct parts.
pub fn gen_turan(n: usize, w: usize) -> Result<Graph> {
    if w < 1 || w > n {
        return Err(Error::InvalidPartCount { n, w });
    }
    // vertex v belongs to part v % w; parts 0..n%w get the extra vertex
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if i % w != j % w {
                g.set_edge(i, j);
            }
        }
    }
    g.recount_edges();
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Empty,
    Petersen,
}

/// Standard named constructions. `n` is ignored for the Petersen graph.
pub fn gen_named(family: Family, n: usize) -> Result<Graph> {
    match family {
        Family::Path => Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        Family::Cycle => {
            if n < 3 {
                return Err(Error::CycleTooSmall(n));
            }
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((n - 1, 0));
            Graph::from_edges(n, &edges)
        }
        Family::Complete => gen_turan(n.max(1), n.max(1)),
        Family::Empty => Graph::empty(n),
        Family::Petersen => {
            // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
                edges.push((i, i + 5));
            }
            Graph::from_edges(10, &edges)
        }
    }
}

/// Uniform simple d-regular graph via the configuration model: pair degree
/// stubs uniformly, reject the whole pairing on any loop or multi-edge.
/// Deterministic for fixed (n, d, seed).
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n * d % 2 != 0 || d >= n {
        return Err(Error::InfeasibleDegree { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    'attempt: for _ in 0..REGULAR_RETRY_CAP {
        stubs.shuffle(&mut rng);
        let mut g = Graph::empty(n)?;
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || g.has_edge(a, b) {
                continue 'attempt;
            }
            g.set_edge(a, b);
        }
        g.recount_edges();
        return Ok(g);
    }
    Err(Error::RetryBudgetExhausted(REGULAR_RETRY_CAP))
}

/// Erdős–Rényi G(n, p): each unordered pair included independently with
/// probability p. Deterministic for fixed (n, p, seed).
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                g.set_edge(i, j);
            }
        }
    }
    g.recount_edges();
    Ok(g)
}

/// All 2^(n(n-1)/2) labeled simple graphs on n vertices, in lexicographic
/// order of the upper-triangle bit string. No isomorphism reduction.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << bits).map(move |mask| labeled_graph(n, bits, mask)))
}

/// Number of graphs `enumerate_labeled(n)` yields.
pub fn enumerate_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

fn labeled_graph(n: usize, bits: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("n <= 7");
    for (k, (i, j)) in upper_triangle_pairs(n).enumerate() {
        // bit 0 of the string is the most significant bit of the counter
        if mask >> (bits - 1 - k) & 1 == 1 {
            g.set_edge(i, j);
        }
    }
    g.recount_edges();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_6_3_is_octahedron() {
        let g = gen_turan(6, 3).unwrap();
        assert_eq!(g.m(), 12);
        assert_eq!(g.stats().regular_degree, Some(4)); // n - n/w
    }

    #[test]
    fn turan_degenerate_and_unbalanced() {
        assert!(gen_turan(5, 5).unwrap().is_complete());
        let k32 = gen_turan(5, 2).unwrap();
        assert_eq!(k32.m(), 6);
        assert_eq!(k32.stats().regular_degree, None);
        assert!(matches!(gen_turan(5, 0), Err(Error::InvalidPartCount { .. })));
        assert!(matches!(gen_turan(5, 6), Err(Error::InvalidPartCount { .. })));
    }

    #[test]
    fn turan_part_sizes_balanced() {
        for n in 1..=12 {
            for w in 1..=n {
                let g = gen_turan(n, w).unwrap();
                // complement components are the parts
                let parts = g.complement().stats().components;
                assert_eq!(parts.len(), w.min(n));
                for part in &parts {
                    assert!(part.len() == n / w || part.len() == n.div_ceil(w));
                }
            }
        }
    }

    #[test]
    fn named_families() {
        assert_eq!(gen_named(Family::Path, 5).unwrap().m(), 4);
        assert_eq!(gen_named(Family::Cycle, 5).unwrap().m(), 5);
        assert_eq!(gen_named(Family::Complete, 4).unwrap().m(), 6);
        assert!(matches!(gen_named(Family::Cycle, 2), Err(Error::CycleTooSmall(2))));
        let pet = gen_named(Family::Petersen, 0).unwrap();
        assert_eq!((pet.n(), pet.m()), (10, 15));
        assert_eq!(pet.stats().regular_degree, Some(3));
    }

    #[test]
    fn random_regular_degrees() {
        let g = gen_random_regular(8, 3, 1).unwrap();
        assert_eq!(g.stats().regular_degree, Some(3));
        assert!(matches!(
            gen_random_regular(5, 3, 1),
            Err(Error::InfeasibleDegree { .. })
        ));
        assert!(gen_random_regular(6, 5, 1).unwrap().is_complete());
        // determinism
        assert_eq!(
            gen_random_regular(20, 4, 7).unwrap(),
            gen_random_regular(20, 4, 7).unwrap()
        );
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gen_gnp(10, 0.0, 3).unwrap().m(), 0);
        assert!(gen_gnp(10, 1.0, 3).unwrap().is_complete());
        assert_eq!(gen_gnp(50, 0.5, 11).unwrap(), gen_gnp(50, 0.5, 11).unwrap());
        assert!(matches!(gen_gnp(10, 1.5, 3), Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled(1).unwrap().count(), 1);
        assert!(matches!(enumerate_labeled(8), Err(Error::TooLarge(8))));

        // binomial edge-count profile at n = 5
        let mut by_edges = [0u64; 11];
        for g in enumerate_labeled(5).unwrap() {
            by_edges[g.m()] += 1;
        }
        let binom = [1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1];
        assert_eq!(by_edges, binom);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let mut seen = std::collections::HashSet::new();
        for g in enumerate_labeled(4).unwrap() {
            assert!(seen.insert(crate::graph6::to_graph6(&g)));
        }
        assert_eq!(seen.len(), 64);
    }
}
