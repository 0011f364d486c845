//! Dense numerical kernels shared by all other modules.
//!
//! Everything here operates on plain `ndarray` matrices: complex
//! Hermitian/unitary eigendecompositions, the matrix exponential and the
//! principal logarithm of a unitary, operator norms, partial traces over
//! qudit chains, local-operator embedding, positive-semidefinite square
//! roots, and the von Neumann entropy.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! - Sites are numbered `1..=n` and site 1 is the **most significant**
//!   factor in the Kronecker ordering, so the state index of a chain
//!   `(i_1, ..., i_n)` is `i_1·d^(n-1) + ... + i_n`.
//! - Principal eigenphases live in `(-π, π]`; ties at ±π resolve to +π.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Eigh, Inverse, Norm, QR, SVD, UPLO};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::policy::Tolerances;

/// Dense complex matrix.
pub type CMat = Array2<C64>;
/// Dense complex vector.
pub type CVec = Array1<C64>;
/// Dense real matrix.
pub type RMat = Array2<f64>;

/// Errors from the dense kernels.
#[derive(Debug, Error)]
pub enum DenseError {
    #[error("matrix is not hermitian (deviation {deviation:.3e} exceeds {allowed:.3e})")]
    NonHermitian { deviation: f64, allowed: f64 },
    #[error("matrix is not unitary (op_norm(U†U - I) = {deviation:.3e})")]
    NonUnitary { deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },
    #[error("operator is not a density matrix: {reason}")]
    NotAState { reason: String },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("site index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix norm estimate {norm:.3e} exceeds the safe range {cap:.3e} for the exponential")]
    Overflow { norm: f64, cap: f64 },
    #[error("eigensolver failed to converge: {0}")]
    NoConvergence(String),
}

type Result<T> = std::result::Result<T, DenseError>;

/// Complex identity matrix of dimension `dim`.
pub fn identity(dim: usize) -> CMat {
    Array2::eye(dim).mapv(|x: f64| C64::new(x, 0.0))
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

/// Largest absolute entry.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Max-abs entry of `A - A†`.
pub fn hermitian_deviation(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Hermitian part `(A + A†)/2`.
pub fn herm_part(a: &CMat) -> CMat {
    (a + &dagger(a)).mapv(|z| 0.5 * z)
}

fn ensure_square(a: &CMat, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(DenseError::DimensionMismatch {
            context: format!("{what}: expected square matrix, got {}x{}", a.nrows(), a.ncols()),
        });
    }
    Ok(a.nrows())
}

fn ensure_hermitian(a: &CMat, tol: &Tolerances) -> Result<()> {
    let dev = hermitian_deviation(a);
    let scale = max_abs(a).max(1e-300);
    let allowed = tol.hermitian_rel * scale;
    if dev > allowed {
        return Err(DenseError::NonHermitian { deviation: dev, allowed });
    }
    Ok(())
}

/// Operator-norm distance of `U` from unitarity, `‖U†U - I‖`.
pub fn unitarity_deviation(u: &CMat) -> f64 {
    let d = u.nrows();
    let gram = dagger(u).dot(u) - identity(d);
    op_norm(&gram)
}

fn ensure_unitary(u: &CMat, tol: &Tolerances) -> Result<()> {
    let dev = unitarity_deviation(u);
    if dev > tol.unitary {
        return Err(DenseError::NonUnitary { deviation: dev });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary matrix of
/// eigenvectors (as columns), so `A = V diag(λ) V†`.
pub fn hermitian_eig(a: &CMat, tol: &Tolerances) -> Result<(Array1<f64>, CMat)> {
    ensure_square(a, "hermitian_eig")?;
    ensure_hermitian(a, tol)?;
    a.eigh(UPLO::Lower)
        .map_err(|e| DenseError::NoConvergence(e.to_string()))
}

/// Largest singular value.
///
/// Defined for any rectangular matrix; NaN/Inf entries are the caller's
/// responsibility. Panics only if the LAPACK SVD driver itself fails.
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let (_, sv, _) = a.svd(false, false).expect("LAPACK svd failed");
    sv.iter().copied().fold(0.0, f64::max)
}

/// Largest singular value of a real matrix.
pub fn op_norm_real(a: &RMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let (_, sv, _) = a.svd(false, false).expect("LAPACK svd failed");
    sv.iter().copied().fold(0.0, f64::max)
}

/// One-norm (maximum absolute column sum), used to pick the exponential
/// scaling exponent.
fn one_norm(a: &CMat) -> f64 {
    let mut best = 0.0f64;
    for col in a.columns() {
        best = best.max(col.iter().map(|z| z.norm()).sum());
    }
    best
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const PADE13_THETA: f64 = 5.371920351148152;

/// Matrix exponential `e^A` by scaling-and-squaring with a degree-13
/// Padé approximant.
pub fn mat_exp(a: &CMat, tol: &Tolerances) -> Result<CMat> {
    let d = ensure_square(a, "mat_exp")?;
    let eta = one_norm(a);
    if !eta.is_finite() || eta > tol.exp_norm_cap {
        return Err(DenseError::Overflow { norm: eta, cap: tol.exp_norm_cap });
    }
    let s = if eta > PADE13_THETA {
        (eta / PADE13_THETA).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / C64::new(2f64.powi(s as i32), 0.0));

    let a2 = scaled.dot(&scaled);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let eye = identity(d);
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let u_inner = a6.mapv(|z| z * b(13)) + a4.mapv(|z| z * b(11)) + a2.mapv(|z| z * b(9));
    let u_poly = a6.dot(&u_inner)
        + a6.mapv(|z| z * b(7))
        + a4.mapv(|z| z * b(5))
        + a2.mapv(|z| z * b(3))
        + eye.mapv(|z| z * b(1));
    let u = scaled.dot(&u_poly);

    let v_inner = a6.mapv(|z| z * b(12)) + a4.mapv(|z| z * b(10)) + a2.mapv(|z| z * b(8));
    let v = a6.dot(&v_inner)
        + a6.mapv(|z| z * b(6))
        + a4.mapv(|z| z * b(4))
        + a2.mapv(|z| z * b(2))
        + eye.mapv(|z| z * b(0));

    let denom = &v - &u;
    let denom_inv = denom
        .inv()
        .map_err(|e| DenseError::NoConvergence(format!("Padé denominator solve: {e}")))?;
    let mut r = denom_inv.dot(&(&v + &u));
    for _ in 0..s {
        r = r.dot(&r);
    }
    Ok(r)
}

/// Matrix exponential of a real matrix.
pub fn mat_exp_real(a: &RMat, tol: &Tolerances) -> Result<RMat> {
    let ac = a.mapv(|x| C64::new(x, 0.0));
    let r = mat_exp(&ac, tol)?;
    Ok(r.mapv(|z| z.re))
}

/// Exponential `e^{-itH}` of a Hermitian matrix through its
/// eigendecomposition; exactly unitary up to roundoff.
pub fn exp_i_hermitian(h: &CMat, t: f64, tol: &Tolerances) -> Result<CMat> {
    let (vals, vecs) = hermitian_eig(h, tol)?;
    let phases: CVec = vals.mapv(|lam| (-C64::i() * lam * t).exp());
    // V diag(e^{-iλt}) V†
    let mut scaled = vecs.clone();
    for (mut col, p) in scaled.columns_mut().into_iter().zip(phases.iter()) {
        col.mapv_inplace(|z| z * p);
    }
    Ok(scaled.dot(&dagger(&vecs)))
}

/// Map a phase to the principal branch `(-π, π]`, resolving ties at ±π to +π.
fn principal_phase(theta: f64, tie: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut t = theta.rem_euclid(two_pi);
    if t > std::f64::consts::PI {
        t -= two_pi;
    }
    if t.abs() > std::f64::consts::PI - tie {
        t = std::f64::consts::PI;
    }
    t
}

/// Principal eigenphases of a unitary: the `θ_k` with `U = e^{-iH}`,
/// `H = V diag(θ) V†`, each in `(-π, π]`. Sorted ascending.
pub fn unitary_eigenphases(u: &CMat, tol: &Tolerances) -> Result<Vec<f64>> {
    ensure_square(u, "unitary_eigenphases")?;
    ensure_unitary(u, tol)?;
    let (vals, _) = u
        .eig()
        .map_err(|e| DenseError::NoConvergence(e.to_string()))?;
    let mut phases: Vec<f64> = vals
        .iter()
        .map(|lam| principal_phase(-lam.arg(), tol.phase_tie))
        .collect();
    phases.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(phases)
}

/// Principal Hermitian generator of a unitary: the `H = H†` with
/// `e^{-iH} = U` and every eigenvalue of `H` in `(-π, π]`.
///
/// The eigenvectors returned by the general eigensolver are orthonormalized
/// within clusters of nearly-degenerate eigenvalues, which is what makes the
/// reconstruction stable for unitaries like SWAP with repeated eigenvalues.
pub fn principal_log_unitary(u: &CMat, tol: &Tolerances) -> Result<CMat> {
    let d = ensure_square(u, "principal_log_unitary")?;
    ensure_unitary(u, tol)?;
    let (vals, vecs) = u
        .eig()
        .map_err(|e| DenseError::NoConvergence(e.to_string()))?;

    // Sort eigenpairs by phase, then cluster eigenvalues that coincide up
    // to roundoff. Within a cluster any orthonormal basis of the span
    // works, so a thin QR repairs the non-orthogonality zgeev may return.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| vals[i].arg().partial_cmp(&vals[j].arg()).unwrap());

    let cluster_tol = 1e-7;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match clusters.last_mut() {
            Some(c) if (vals[c[0]] - vals[idx]).norm() <= cluster_tol => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }
    // Phases wrap: eigenvalues near -1 may appear at both ends of the sort.
    if clusters.len() > 1 {
        let first = clusters.first().unwrap()[0];
        let last = clusters.last().unwrap()[0];
        if (vals[first] - vals[last]).norm() <= cluster_tol {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }

    let mut h = Array2::<C64>::zeros((d, d));
    for cluster in &clusters {
        let m = cluster.len();
        let mut block = Array2::<C64>::zeros((d, m));
        for (c, &idx) in cluster.iter().enumerate() {
            block.column_mut(c).assign(&vecs.column(idx));
        }
        let q = if m > 1 {
            let (q, _r) = block
                .qr()
                .map_err(|e| DenseError::NoConvergence(e.to_string()))?;
            q
        } else {
            let norm = block.column(0).norm_l2();
            block.mapv(|z| z / norm)
        };
        let theta = principal_phase(-vals[cluster[0]].arg(), tol.phase_tie);
        let contribution = q.dot(&dagger(&q));
        h = h + contribution.mapv(|z| z * theta);
    }
    let h = herm_part(&h);

    let residual = op_norm(&(mat_exp(&h.mapv(|z| -C64::i() * z), tol)? - u));
    if residual > tol.log_unitary_residual {
        return Err(DenseError::NoConvergence(format!(
            "principal log residual {residual:.3e} exceeds {:.3e}",
            tol.log_unitary_residual
        )));
    }
    Ok(h)
}

/// Partial trace of a density operator on a qudit chain.
///
/// `dims` lists the local dimension of each site (site 1 first and most
/// significant); `keep` lists the 1-based site indices to retain. The output
/// is ordered by ascending kept site index.
pub fn partial_trace(rho: &CMat, dims: &[usize], keep: &[usize]) -> Result<CMat> {
    let d_total: usize = dims.iter().product();
    let n = dims.len();
    if rho.nrows() != d_total || rho.ncols() != d_total {
        return Err(DenseError::DimensionMismatch {
            context: format!(
                "partial_trace: operator is {}x{} but local dims give {}",
                rho.nrows(),
                rho.ncols(),
                d_total
            ),
        });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(DenseError::DimensionMismatch {
            context: "partial_trace: keep set contains duplicates".into(),
        });
    }
    for &site in &kept {
        if site == 0 || site > n {
            return Err(DenseError::IndexOutOfRange { index: site, n });
        }
    }
    let traced: Vec<usize> = (1..=n).filter(|s| !kept.contains(s)).collect();

    // site 1 most significant
    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let offsets = |sites: &[usize]| -> Vec<usize> {
        let ds: Vec<usize> = sites.iter().map(|&s| dims[s - 1]).collect();
        let total: usize = ds.iter().product();
        let mut out = Vec::with_capacity(total);
        for mut flat in 0..total {
            let mut off = 0usize;
            for (pos, &s) in sites.iter().enumerate().rev() {
                let digit = flat % ds[pos];
                flat /= ds[pos];
                off += digit * stride[s - 1];
            }
            out.push(off);
        }
        out
    };
    let kept_off = offsets(&kept);
    let traced_off = offsets(&traced);

    let dk = kept_off.len();
    let mut out = Array2::<C64>::zeros((dk, dk));
    for (i, &oi) in kept_off.iter().enumerate() {
        for (j, &oj) in kept_off.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &ot in &traced_off {
                acc += rho[(oi + ot, oj + ot)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Von Neumann entropy `-Σ λ ln λ` of a density operator, natural log.
///
/// Eigenvalues below the clip threshold contribute exactly zero.
pub fn von_neumann_entropy(rho: &CMat, tol: &Tolerances) -> Result<f64> {
    ensure_square(rho, "von_neumann_entropy")?;
    let trace: C64 = rho.diag().sum();
    if (trace.re - 1.0).abs() > tol.state_trace || trace.im.abs() > tol.state_trace {
        return Err(DenseError::NotAState {
            reason: format!("trace {trace} differs from 1"),
        });
    }
    let (vals, _) = hermitian_eig(rho, tol).map_err(|e| match e {
        DenseError::NonHermitian { deviation, .. } => DenseError::NotAState {
            reason: format!("not hermitian (deviation {deviation:.3e})"),
        },
        other => other,
    })?;
    let scale = vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if let Some(&min) = vals.iter().min_by(|a, b| a.partial_cmp(b).unwrap()) {
        if min < -tol.psd_rel * scale.max(1.0) {
            return Err(DenseError::NotAState {
                reason: format!("negative eigenvalue {min:.3e}"),
            });
        }
    }
    Ok(entropy_from_spectrum(vals.iter().copied(), tol))
}

/// Entropy of a probability spectrum with the `0 ln 0 = 0` convention.
pub fn entropy_from_spectrum<I: IntoIterator<Item = f64>>(spectrum: I, tol: &Tolerances) -> f64 {
    spectrum
        .into_iter()
        .filter(|&p| p > tol.entropy_clip)
        .map(|p| -p * p.ln())
        .sum()
}

/// Embed a two-site operator into an `n`-site chain of local dimension `d`.
///
/// `op` is `d²×d²` with its first tensor factor acting on site `sites.0` and
/// its second on site `sites.1` (1-based, any distinct pair, not necessarily
/// adjacent or ordered).
pub fn embed_local(op: &CMat, sites: (usize, usize), n: usize, d: usize) -> Result<CMat> {
    let (k, l) = sites;
    if k == 0 || k > n {
        return Err(DenseError::IndexOutOfRange { index: k, n });
    }
    if l == 0 || l > n {
        return Err(DenseError::IndexOutOfRange { index: l, n });
    }
    if k == l {
        return Err(DenseError::DimensionMismatch {
            context: "embed_local: sites must be distinct".into(),
        });
    }
    if op.nrows() != d * d || op.ncols() != d * d {
        return Err(DenseError::DimensionMismatch {
            context: format!("embed_local: operator is {}x{}, expected {}x{}", op.nrows(), op.ncols(), d * d, d * d),
        });
    }
    let dim: usize = d.pow(n as u32);
    let mut stride = vec![1usize; n];
    for i in (0..n - 1).rev() {
        stride[i] = stride[i + 1] * d;
    }
    let sk = stride[k - 1];
    let sl = stride[l - 1];

    let rest: Vec<usize> = (1..=n).filter(|&s| s != k && s != l).collect();
    let rest_dim: usize = d.pow(rest.len() as u32);
    let mut rest_off = Vec::with_capacity(rest_dim);
    for mut flat in 0..rest_dim {
        let mut off = 0usize;
        for &s in rest.iter().rev() {
            off += (flat % d) * stride[s - 1];
            flat /= d;
        }
        rest_off.push(off);
    }

    let mut out = Array2::<C64>::zeros((dim, dim));
    for &base in &rest_off {
        for a1 in 0..d {
            for a2 in 0..d {
                let row = base + a1 * sk + a2 * sl;
                let op_row = a1 * d + a2;
                for b1 in 0..d {
                    for b2 in 0..d {
                        let col = base + b1 * sk + b2 * sl;
                        let v = op[(op_row, b1 * d + b2)];
                        if v != C64::new(0.0, 0.0) {
                            out[(row, col)] = v;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Positive-semidefinite square root `B` with `B² = A`.
pub fn psd_sqrt(a: &CMat, tol: &Tolerances) -> Result<CMat> {
    let (vals, vecs) = hermitian_eig(a, tol)?;
    let scale = vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if let Some(&min) = vals.iter().min_by(|x, y| x.partial_cmp(y).unwrap()) {
        if min < -tol.psd_rel * scale.max(1.0) {
            return Err(DenseError::NotPsd { min_eig: min });
        }
    }
    let roots: Array1<f64> = vals.mapv(|v| v.max(0.0).sqrt());
    let mut scaled = vecs.clone();
    for (mut col, r) in scaled.columns_mut().into_iter().zip(roots.iter()) {
        col.mapv_inplace(|z| z * r);
    }
    Ok(scaled.dot(&dagger(&vecs)))
}
