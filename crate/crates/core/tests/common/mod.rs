//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's numerical code.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use fockwave::linalg::CMatrix;
use fockwave::packet::{PacketDescriptor, Shape};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut StdRng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Unitary from Gram-Schmidt on the columns of a random matrix.
pub fn random_unitary(rng: &mut StdRng, n: usize) -> CMatrix {
    let a = random_matrix(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| a[(i, j)]).collect();
        for q in &cols {
            let proj: Complex64 = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Gram matrix of `n` random normalized vectors in `dim` dimensions: a
/// Hermitian, unit-diagonal matrix, positive definite when `dim >= n`.
pub fn random_overlap(rng: &mut StdRng, n: usize, dim: usize) -> CMatrix {
    let vecs: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            let v: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.into_iter().map(|z| z / norm).collect()
        })
        .collect();
    CMatrix::from_fn(n, n, |i, j| {
        vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a.conj() * b).sum()
    })
}

/// Permanent by summing over every permutation.
pub fn permanent_by_permutations(m: &CMatrix) -> Complex64 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::default();
    permute(&mut perm, 0, &mut |p| {
        total += p.iter().enumerate().map(|(i, &j)| m[(i, j)]).product::<Complex64>();
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Output amplitudes of a Fock basis input, obtained by sending each photon
/// to every output level independently (`d^n` paths) and collecting paths by
/// the resulting occupation. `u[(out, in)]` maps input level to output level.
pub fn brute_force_amplitudes(u: &CMatrix, input: &[u32]) -> HashMap<Vec<u32>, Complex64> {
    let d = input.len();
    let photons: Vec<usize> = input
        .iter()
        .enumerate()
        .flat_map(|(j, &n)| std::iter::repeat_n(j, n as usize))
        .collect();
    let n = photons.len();
    let mut paths: HashMap<Vec<u32>, Complex64> = HashMap::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut occ = vec![0u32; d];
        let mut amp = c(1.0, 0.0);
        for (p, &out) in choice.iter().enumerate() {
            occ[out] += 1;
            amp *= u[(out, photons[p])];
        }
        *paths.entry(occ).or_default() += amp;
        // odometer over d^n choices
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < d {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let in_fact: f64 = input.iter().map(|&k| factorial(k)).product();
    paths
        .into_iter()
        .map(|(occ, a)| {
            let out_fact: f64 = occ.iter().map(|&k| factorial(k)).product();
            let amp = a * (out_fact / in_fact).sqrt();
            (occ, amp)
        })
        .collect()
}

/// Time-domain wavepacket `K(t) e^{−iω(t−t₀)}`.
pub fn wavefunction(shape: Shape, p: &PacketDescriptor, t: f64) -> Complex64 {
    let envelope = match shape {
        Shape::Gaussian => (p.w * p.w / PI).powf(0.25) * (-(t - p.t).powi(2) * p.w * p.w / 2.0).exp(),
        Shape::Exponential if t >= p.t => (2.0 / p.w).sqrt() * (-(t - p.t) / p.w).exp(),
        Shape::Exponential => 0.0,
    };
    Complex64::from_polar(envelope, -p.f * (t - p.t))
}

/// `⟨a|b⟩ = ∫ conj(ψₐ) ψ_b dt` by composite Simpson over the support.
pub fn overlap_quadrature(shape: Shape, a: &PacketDescriptor, b: &PacketDescriptor) -> Complex64 {
    let (lo, hi) = match shape {
        Shape::Gaussian => {
            let reach = 14.0 / a.w.min(b.w);
            (a.t.min(b.t) - reach, a.t.max(b.t) + reach)
        }
        Shape::Exponential => {
            let start = a.t.max(b.t);
            (start, start + 45.0 / (1.0 / a.w + 1.0 / b.w))
        }
    };
    let n = 40_000;
    let h = (hi - lo) / n as f64;
    let f = |t: f64| wavefunction(shape, a, t).conj() * wavefunction(shape, b, t);
    let mut sum = f(lo) + f(hi);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += f(lo + k as f64 * h) * w;
    }
    sum * h / 3.0
}

/// Equal-width, equal-frequency Gaussian overlap written out by hand.
pub fn gaussian_equal_width(ti: f64, tj: f64, omega: f64, dw: f64) -> Complex64 {
    Complex64::from_polar((-(ti - tj).powi(2) * dw * dw / 4.0).exp(), (tj - ti) * omega)
}

/// Balanced beamsplitter coincidence for two photons with overlap magnitude
/// `e^{−dt²Δω²/4}`.
pub fn hom_coincidence(dt: f64, dw: f64) -> f64 {
    (1.0 - (-dt * dt * dw * dw / 2.0).exp()) / 2.0
}

/// Heralded two-photon density matrix of entanglement swapping when the
/// interfering photons overlap with `|S|² = p`, on the basis
/// `HH, HV, VH, VV` of the outer channels.
pub fn swap_density(p: f64) -> [[f64; 4]; 4] {
    let norm = 2.0 * (2.0 - p);
    let diag = (1.0 - p) / norm;
    let mid = 1.0 / norm;
    let off = -p / norm;
    [
        [diag, 0.0, 0.0, 0.0],
        [0.0, mid, off, 0.0],
        [0.0, off, mid, 0.0],
        [0.0, 0.0, 0.0, diag],
    ]
}
