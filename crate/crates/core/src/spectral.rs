//! Dense symmetric eigendecomposition (cyclic Jacobi) and the quadratic-form
//! primitives used by the inequality engine.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;

/// Full eigendecomposition of an adjacency matrix.
///
/// Eigenvalues are sorted descending and paired with orthonormal
/// eigenvectors. The sign convention fixes each eigenvector so that its
/// first coordinate of largest absolute value is non-negative; ties in
/// eigenvalue order are broken by eigenvector lexicographic order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    /// max_i of the infinity norm of A v_i - mu_i v_i at convergence.
    pub residual: f64,
}

impl Spectrum {
    pub fn mu1(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn mu2(&self) -> f64 {
        self.eigenvalues[1]
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }
}

const SWEEP_CAP: usize = 100;

/// Cyclic Jacobi on the dense adjacency matrix. Converged when the
/// off-diagonal Frobenius norm drops below 1e-12 * (1 + ||A||_F).
pub fn eigendecompose(g: &Graph) -> Result<Spectrum> {
    let n = g.n();
    assert!(n >= 1, "eigendecompose requires n >= 1");
    let mut a = adjacency_dense(g);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm_a = (2.0 * g.m() as f64).sqrt();
    let threshold = 1e-12 * (1.0 + norm_a);

    let mut converged = false;
    for _ in 0..SWEEP_CAP {
        if off_diagonal_norm(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > threshold {
        return Err(Error::ConvergenceFailure);
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut vec_k: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            apply_sign_convention(&mut vec_k);
            (a[k * n + k], vec_k)
        })
        .collect();
    pairs.sort_by(|x, y| {
        y.0.partial_cmp(&x.0)
            .unwrap()
            .then_with(|| x.1.partial_cmp(&y.1).unwrap())
    });

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let eigenvectors: Vec<Vec<f64>> = pairs.into_iter().map(|p| p.1).collect();
    let residual = eigen_residual(g, &eigenvalues, &eigenvectors);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

fn adjacency_dense(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for (i, j) in g.edges() {
        a[i * n + j] = 1.0;
        a[j * n + i] = 1.0;
    }
    a
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    let app = a[p * n + p];
    let aqq = a[q * n + q];
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for i in 0..n {
        if i != p && i != q {
            let aip = a[i * n + p];
            let aiq = a[i * n + q];
            a[i * n + p] = aip - s * (aiq + tau * aip);
            a[i * n + q] = aiq + s * (aip - tau * aiq);
            a[p * n + i] = a[i * n + p];
            a[q * n + i] = a[i * n + q];
        }
    }
    for i in 0..n {
        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = vip - s * (viq + tau * vip);
        v[i * n + q] = viq + s * (vip - tau * viq);
    }
}

fn apply_sign_convention(v: &mut [f64]) {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn eigen_residual(g: &Graph, values: &[f64], vectors: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (mu, vec) in values.iter().zip(vectors) {
        for i in 0..g.n() {
            let av: f64 = g.neighbors(i).map(|j| vec[j]).sum();
            worst = worst.max((av - mu * vec[i]).abs());
        }
    }
    worst
}

/// Elementwise (Hadamard) product of two equal-length vectors.
pub fn hadamard(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    if x.len() != y.len() {
        return Err(Error::VectorLengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).collect())
}

/// Quadratic form x^T ((r-1)/r J - A) x, computed without materializing J
/// via x^T J x = (sum x_i)^2.
pub fn kg_quadratic_form(g: &Graph, r: f64, x: &[f64]) -> Result<f64> {
    kg_bilinear_form(g, r, x, x)
}

/// Bilinear form x^T ((r-1)/r J - A) y.
pub fn kg_bilinear_form(g: &Graph, r: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if r <= 1.0 || r.is_nan() {
        return Err(Error::InvalidR(r));
    }
    if x.len() != g.n() {
        return Err(Error::VectorLengthMismatch(x.len(), g.n()));
    }
    if y.len() != g.n() {
        return Err(Error::VectorLengthMismatch(y.len(), g.n()));
    }
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let mut xay = 0.0;
    for (i, j) in g.edges() {
        xay += x[i] * y[j] + x[j] * y[i];
    }
    Ok((r - 1.0) / r * sx * sy - xay)
}

/// The rank-two split X = mu1 v1 v1^T + mu2 v2 v2^T, Y = A - X, both stored
/// densely (row-major n x n).
#[derive(Clone, Debug)]
pub struct RankTwoSplit {
    pub n: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl RankTwoSplit {
    pub fn x_at(&self, i: usize, j: usize) -> f64 {
        self.x[i * self.n + j]
    }

    pub fn y_at(&self, i: usize, j: usize) -> f64 {
        self.y[i * self.n + j]
    }
}

pub fn rank_two_split(spec: &Spectrum, g: &Graph) -> RankTwoSplit {
    let n = g.n();
    assert!(n >= 2, "rank_two_split requires n >= 2");
    assert_eq!(spec.n(), n);
    let (mu1, mu2) = (spec.mu1(), spec.mu2());
    let (v1, v2) = (&spec.eigenvectors[0], &spec.eigenvectors[1]);
    let mut x = vec![0.0; n * n];
    let mut y = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let xij = mu1 * v1[i] * v1[j] + mu2 * v2[i] * v2[j];
            x[i * n + j] = xij;
            y[i * n + j] = g.has_edge(i, j) as u8 as f64 - xij;
        }
    }
    RankTwoSplit { n, x, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{self, Family};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    /// Characteristic polynomial coefficients via Faddeev-LeVerrier;
    /// independent desk-scale oracle for small n.
    fn char_poly(g: &Graph) -> Vec<f64> {
        let n = g.n();
        let a = adjacency_dense(g);
        let mut m = vec![0.0; n * n];
        let mut coeffs = vec![1.0]; // leading coefficient of lambda^n
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{k-1} I
            let mut next = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += a[i * n + l] * m[l * n + j];
                    }
                    next[i * n + j] = s;
                }
            }
            let c_prev = *coeffs.last().unwrap();
            for i in 0..n {
                next[i * n + i] += c_prev;
            }
            let mut trace_am = 0.0;
            for i in 0..n {
                for l in 0..n {
                    trace_am += a[i * n + l] * next[l * n + i];
                }
            }
            coeffs.push(-trace_am / k as f64);
            m = next;
        }
        coeffs
    }

    fn eval_poly(coeffs: &[f64], lambda: f64) -> f64 {
        coeffs.iter().fold(0.0, |acc, &c| acc * lambda + c)
    }

    #[test]
    fn complete_graph_spectrum() {
        let g = generate::gen_named(Family::Complete, 4).unwrap();
        let s = eigendecompose(&g).unwrap();
        let expect = [3.0, -1.0, -1.0, -1.0];
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            close(*got, want, 1e-10);
        }
    }

    #[test]
    fn path3_spectrum() {
        let g = generate::gen_named(Family::Path, 3).unwrap();
        let s = eigendecompose(&g).unwrap();
        close(s.eigenvalues[0], 2f64.sqrt(), 1e-10);
        close(s.eigenvalues[1], 0.0, 1e-10);
        close(s.eigenvalues[2], -(2f64.sqrt()), 1e-10);
    }

    #[test]
    fn c5_spectrum_closed_form() {
        let g = generate::gen_named(Family::Cycle, 5).unwrap();
        let s = eigendecompose(&g).unwrap();
        let phi = (5f64.sqrt() - 1.0) / 2.0; // 2 cos(2 pi / 5)
        let expect = [2.0, phi, phi, -phi - 1.0, -phi - 1.0];
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            close(*got, want, 1e-9);
        }
        // cross-check every eigenvalue against the characteristic polynomial
        let coeffs = char_poly(&g);
        for &mu in &s.eigenvalues {
            close(eval_poly(&coeffs, mu), 0.0, 1e-8);
        }
    }

    #[test]
    fn petersen_spectrum_multiplicities() {
        let g = generate::gen_named(Family::Petersen, 0).unwrap();
        let s = eigendecompose(&g).unwrap();
        close(s.eigenvalues[0], 3.0, 1e-9);
        for k in 1..=5 {
            close(s.eigenvalues[k], 1.0, 1e-9);
        }
        for k in 6..=9 {
            close(s.eigenvalues[k], -2.0, 1e-9);
        }
        let coeffs = char_poly(&g);
        for &mu in &s.eigenvalues {
            close(eval_poly(&coeffs, mu), 0.0, 1e-6);
        }
    }

    #[test]
    fn spectrum_invariants_random() {
        for seed in 0..20 {
            let n = 2 + (seed as usize * 5) % 40;
            let g = generate::gen_gnp(n, 0.5, seed).unwrap();
            let s = eigendecompose(&g).unwrap();
            let trace: f64 = s.eigenvalues.iter().sum();
            close(trace, 0.0, 1e-8 * n as f64);
            let frob: f64 = s.eigenvalues.iter().map(|x| x * x).sum();
            close(frob, 2.0 * g.m() as f64, 1e-6 * (2.0 * g.m() as f64).max(1.0));
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = s.eigenvectors[i]
                        .iter()
                        .zip(&s.eigenvectors[j])
                        .map(|(a, b)| a * b)
                        .sum();
                    let delta = (i == j) as u8 as f64;
                    close(dot, delta, 1e-8);
                }
            }
            assert!(s.residual <= 1e-8 * s.mu1().max(1.0));
        }
    }

    #[test]
    fn disjoint_union_spectrum_is_multiset_union() {
        let a = generate::gen_named(Family::Cycle, 5).unwrap();
        let b = generate::gen_named(Family::Path, 4).unwrap();
        let u = a.disjoint_union(&b);
        let mut merged: Vec<f64> = eigendecompose(&a)
            .unwrap()
            .eigenvalues
            .into_iter()
            .chain(eigendecompose(&b).unwrap().eigenvalues)
            .collect();
        merged.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let su = eigendecompose(&u).unwrap();
        for (got, want) in su.eigenvalues.iter().zip(merged) {
            close(*got, want, 1e-7);
        }
    }

    #[test]
    fn mu2_nonnegative_for_non_complete() {
        for seed in 0..30 {
            let g = generate::gen_gnp(8, 0.6, seed).unwrap();
            if g.is_complete() {
                continue;
            }
            let s = eigendecompose(&g).unwrap();
            assert!(s.mu2() >= -1e-8, "mu2 = {}", s.mu2());
        }
    }

    #[test]
    fn perron_vector_one_signed_when_connected() {
        let g = generate::gen_named(Family::Petersen, 0).unwrap();
        let s = eigendecompose(&g).unwrap();
        assert!(s.eigenvectors[0].iter().all(|&x| x > 0.0));
    }

    #[test]
    fn regular_graph_top_eigenpair() {
        let g = generate::gen_random_regular(12, 4, 3).unwrap();
        if g.stats().is_connected() {
            let s = eigendecompose(&g).unwrap();
            close(s.mu1(), 4.0, 1e-8);
            let unit = 1.0 / (12f64).sqrt();
            for &x in &s.eigenvectors[0] {
                close(x, unit, 1e-6);
            }
        }
    }

    #[test]
    fn hadamard_basics() {
        assert_eq!(hadamard(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), vec![3.0, 8.0]);
        let x = [1.5, -2.0, 0.25];
        assert_eq!(hadamard(&x, &[1.0; 3]).unwrap(), x.to_vec());
        assert!(hadamard(&x, &x).unwrap().iter().all(|&v| v >= 0.0));
        assert!(matches!(
            hadamard(&[1.0], &[1.0, 2.0]),
            Err(Error::VectorLengthMismatch(1, 2))
        ));
    }

    #[test]
    fn kg_form_values() {
        let c5 = generate::gen_named(Family::Cycle, 5).unwrap();
        let ones = vec![1.0; 5];
        close(kg_quadratic_form(&c5, 2.0, &ones).unwrap(), 2.5, 1e-12);

        let k3 = generate::gen_named(Family::Complete, 3).unwrap();
        close(kg_quadratic_form(&k3, 3.0, &vec![1.0; 3]).unwrap(), 0.0, 1e-12);

        close(kg_quadratic_form(&c5, 2.0, &vec![0.0; 5]).unwrap(), 0.0, 0.0);
        assert!(matches!(
            kg_quadratic_form(&c5, 1.0, &ones),
            Err(Error::InvalidR(_))
        ));
    }

    #[test]
    fn kg_form_matches_dense_construction() {
        // spot-check against an explicit dense K_G = ((r-1)/r) J - A
        let mut rng_state = 88u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (rng_state >> 33) as f64 / (1u64 << 31) as f64 - 0.5
        };
        for seed in 0..5 {
            let n = 5 + 3 * seed as usize;
            let g = generate::gen_gnp(n, 0.5, seed).unwrap();
            let r = 2.5;
            let x: Vec<f64> = (0..n).map(|_| next()).collect();
            let mut dense = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let kij = (r - 1.0) / r - g.has_edge(i, j) as u8 as f64;
                    dense += x[i] * kij * x[j];
                }
            }
            close(kg_quadratic_form(&g, r, &x).unwrap(), dense, 1e-9 * n as f64);
        }
    }

    #[test]
    fn rank_two_split_k2() {
        let g = generate::gen_named(Family::Complete, 2).unwrap();
        let s = eigendecompose(&g).unwrap();
        let split = rank_two_split(&s, &g);
        // mu1 = 1, mu2 = -1: X exhausts A, Y = 0
        for i in 0..2 {
            for j in 0..2 {
                let aij = g.has_edge(i, j) as u8 as f64;
                close(split.x_at(i, j), aij, 1e-10);
                close(split.y_at(i, j), 0.0, 1e-10);
            }
        }
    }

    #[test]
    fn rank_two_split_invariants() {
        for seed in 0..10 {
            let n = 4 + (seed as usize) % 10;
            let g = generate::gen_gnp(n, 0.5, 100 + seed).unwrap();
            let s = eigendecompose(&g).unwrap();
            let split = rank_two_split(&s, &g);
            let two_m = 2.0 * g.m() as f64;
            let mut inner = 0.0;
            let mut frob_x = 0.0;
            let mut frob_y = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let aij = g.has_edge(i, j) as u8 as f64;
                    close(split.x_at(i, j) + split.y_at(i, j), aij, 1e-8);
                    inner += split.x_at(i, j) * split.y_at(i, j);
                    frob_x += split.x_at(i, j) * split.x_at(i, j);
                    frob_y += split.y_at(i, j) * split.y_at(i, j);
                    if !g.has_edge(i, j) && i != j {
                        close(split.y_at(i, j), -split.x_at(i, j), 1e-10);
                    }
                }
            }
            let scale = two_m.max(1.0);
            close(inner, 0.0, 1e-6 * scale);
            let top = s.mu1() * s.mu1() + s.mu2() * s.mu2();
            close(frob_x, top, 1e-6 * (s.mu1() * s.mu1()).max(1.0));
            close(frob_y, two_m - top, 1e-6 * scale);
        }
    }
}
