//! Random matrices, states and channels for property tests and Monte-Carlo
//! soundness checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::{Channel, KrausForm};
use crate::linalg::{hermitian_function, tensor, BipartiteDims, ComplexMatrix};

/// Entries i.i.d. standard complex normal.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(n, n, rng).hermitian_part()
}

/// exp(iH) for a random Hermitian generator H.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let h = hermitian(n, rng);
    hermitian_function(&h, |l| Complex64::new(0.0, l).exp()).expect("generator is Hermitian")
}

pub fn product_unitary<R: Rng + ?Sized>(dims: BipartiteDims, rng: &mut R) -> ComplexMatrix {
    tensor(&unitary(dims.d_a(), rng), &unitary(dims.d_b(), rng))
}

/// Full-rank density operator G G†/tr(G G†).
pub fn density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, n, rng);
    let p = &g * &g.adjoint();
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

pub fn pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let v = ginibre(n, 1, rng).column(0);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// CPTP map with `n_kraus` Kraus operators K_i = G_i T^{-1/2}, T = Σ G_i†G_i.
pub fn channel<R: Rng + ?Sized>(
    in_dims: BipartiteDims,
    out_dims: BipartiteDims,
    n_kraus: usize,
    rng: &mut R,
) -> Channel {
    let (d1, d2) = (in_dims.total(), out_dims.total());
    let gs: Vec<ComplexMatrix> = (0..n_kraus).map(|_| ginibre(d2, d1, rng)).collect();
    let mut t = ComplexMatrix::zeros(d1, d1);
    for g in &gs {
        t = &t + &(&g.adjoint() * g);
    }
    let t_inv_sqrt = hermitian_function(&t, |l| Complex64::new(1.0 / l.sqrt(), 0.0)).expect("T is Hermitian");
    let ops = gs.iter().map(|g| g * &t_inv_sqrt).collect();
    Channel::from_kraus(&KrausForm::new(vec![1.0; n_kraus], ops), in_dims, out_dims).expect("shapes match")
}

/// Kraus operators √p_i U_i of a random mixture of `k` unitaries.
pub fn unitary_mixture<R: Rng + ?Sized>(dims: BipartiteDims, k: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|p| unitary(dims.total(), rng).scale_real((p / total).sqrt())).collect()
}

/// Hermiticity-preserving map with a random Hermitian Choi matrix.
pub fn hp_map<R: Rng + ?Sized>(in_dims: BipartiteDims, out_dims: BipartiteDims, rng: &mut R) -> Channel {
    let side = in_dims.total() * out_dims.total();
    Channel::from_choi(hermitian(side, rng), in_dims, out_dims).expect("side matches dims")
}

/// Real symplectic 2n×2n matrix (row-major, (x₁, p₁, …) order) built as a
/// product of random phase rotations, squeezers with |log gain| ≤ `max_squeeze`,
/// and beam splitters.
pub fn symplectic<R: Rng + ?Sized>(n_modes: usize, max_squeeze: f64, rng: &mut R) -> Vec<f64> {
    let d = 2 * n_modes;
    let mut s: Vec<f64> = (0..d * d).map(|k| if k / d == k % d { 1.0 } else { 0.0 }).collect();
    // left-multiply S by a matrix acting on rows (i, j) only
    let apply = |s: &mut Vec<f64>, i: usize, j: usize, m: [f64; 4]| {
        for c in 0..d {
            let (u, v) = (s[i * d + c], s[j * d + c]);
            s[i * d + c] = m[0] * u + m[1] * v;
            s[j * d + c] = m[2] * u + m[3] * v;
        }
    };
    for _ in 0..3 {
        for k in 0..n_modes {
            let (sn, cs) = rng.random_range(0.0..std::f64::consts::TAU).sin_cos();
            apply(&mut s, 2 * k, 2 * k + 1, [cs, sn, -sn, cs]);
            let g = rng.random_range(-max_squeeze..=max_squeeze).exp();
            apply(&mut s, 2 * k, 2 * k + 1, [g, 0.0, 0.0, 1.0 / g]);
        }
        for k in 1..n_modes {
            let j = rng.random_range(0..k);
            let (sn, cs) = rng.random_range(0.0..std::f64::consts::TAU).sin_cos();
            apply(&mut s, 2 * j, 2 * k, [cs, sn, -sn, cs]);
            apply(&mut s, 2 * j + 1, 2 * k + 1, [cs, sn, -sn, cs]);
        }
    }
    s
}
