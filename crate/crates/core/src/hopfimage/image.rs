use std::sync::Arc;

use num_traits::Zero;

use crate::cnum::{inverse, nullspace, nullspace_floor, svd, vec, Matrix, Subspace, Tolerance};
use crate::error::{precondition, Error, Result};
use crate::fqg::{FiniteQuantumGroup, FqgReport};
use crate::scalar::{Real, C};
use crate::staralg::{check_star_hom, HomReport, StarAlgebra, StarHom};

/// Consecutive non-shrinking steps after which the kernel method stops.
pub const KERNEL_WINDOW: usize = 3;
/// Hard cap on the kernel-intersection depth.
pub const KERNEL_MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// `⋂_{n≤N} ker Λ_n` until the dimension is stable for [`KERNEL_WINDOW`] steps.
    Kernel,
    /// Largest ideal and coideal inside `ker Λ`, by a fixed-point iteration.
    #[default]
    Coideal,
    /// Both, failing on disagreement.
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel" => Ok(Self::Kernel),
            "coideal" => Ok(Self::Coideal),
            "both" => Ok(Self::Both),
            other => Err(Error::Argument(format!("unknown method {other:?} (kernel, coideal, both)"))),
        }
    }
}

/// Residuals certifying a Hopf image.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageReport<T: Real> {
    /// `max ‖(1 − P_J)(e_a j)‖, ‖(1 − P_J)(j e_a)‖`
    pub ideal: T,
    /// `‖(π ⊗ π)Δ(J)‖_max`
    pub coideal: T,
    /// `‖θ ∘ π − Λ‖_max`
    pub factorization: T,
    pub pi_hom: HomReport<T>,
    pub theta_hom: HomReport<T>,
    pub pi_surjective: bool,
    pub quotient: FqgReport<T>,
}

impl<T: Real> ImageReport<T> {
    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        let slack = T::lit(10.0) * tol.eps_eq;
        self.ideal <= slack
            && self.coideal <= slack
            && self.factorization <= slack
            && self.pi_hom.max() <= slack
            && self.theta_hom.max() <= slack
            && self.pi_surjective
            && self.quotient.passes(&Tolerance { eps_eq: slack, ..*tol })
    }
}

#[derive(Clone, Debug)]
pub struct HopfImageResult<T: Real> {
    pub j: Subspace<T>,
    pub quotient: FiniteQuantumGroup<T>,
    pub pi: StarHom<T>,
    pub theta: StarHom<T>,
    /// Depth at which the kernel intersection reached its final dimension (kernel method only).
    pub n_stabilized: Option<usize>,
    /// Fixed-point rounds of the coideal method.
    pub coideal_rounds: Option<usize>,
    pub method: Method,
    pub report: ImageReport<T>,
}

impl<T: Real> HopfImageResult<T> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// Column `p` is `Σ_{a,b} Δ_{ab,p} x_a ⊗ y_b`: the matrix of `(X ⊗ Y) ∘ Δ`.
pub fn tensor_through_delta<T: Real>(q: &FiniteQuantumGroup<T>, x: &Matrix<T>, y: &Matrix<T>) -> Matrix<T> {
    let n = q.dim();
    let (rx, ry) = (x.rows(), y.rows());
    let xc: Vec<Vec<C<T>>> = (0..n).map(|a| x.column(a)).collect();
    let yc: Vec<Vec<C<T>>> = (0..n).map(|b| y.column(b)).collect();
    let mut out = Matrix::zeros(rx * ry, n);
    for p in 0..n {
        let mut col = vec![C::zero(); rx * ry];
        for &(ab, z) in q.delta_column(p) {
            vec::axpy(&mut col, z, &vec::kron(&xc[ab / n], &yc[ab % n]));
        }
        out.set_column(p, &col);
    }
    out
}

/// `Λ_n = Λ^{⊗n} ∘ Δ^{(n)}` as a map into `B^{⊗n}`.
pub fn lambda_n<T: Real>(q: &FiniteQuantumGroup<T>, l: &StarHom<T>, n: usize) -> Result<StarHom<T>> {
    if n == 0 {
        return Err(Error::Argument("lambda_n needs n >= 1".into()));
    }
    check_source(q, l)?;
    let mut m = l.matrix.clone();
    for _ in 1..n {
        m = tensor_through_delta(q, &m, &l.matrix);
    }
    StarHom::new(q.alg().clone(), Arc::new(l.target.tensor_power(n)), m)
}

fn check_source<T: Real>(q: &FiniteQuantumGroup<T>, l: &StarHom<T>) -> Result<()> {
    if l.source.dim() != q.dim() {
        return Err(Error::Shape(format!("map starts at dimension {}, quantum group has {}", l.source.dim(), q.dim())));
    }
    Ok(())
}

/// Rows spanning the row space of `m`, scaled by the singular values; at least one row.
fn compress<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Matrix<T> {
    let n = m.cols();
    if m.rows() == 0 || m.norm_max() == T::zero() {
        return Matrix::zeros(1, n);
    }
    let d = svd(m);
    let r = d.rank(tol.eps_rank).max(1);
    Matrix::from_fn(r, n, |i, j| d.v[(j, i)].conj() * d.s[i])
}

/// `J` by cumulative kernel intersection; returns the subspace and the stabilization depth.
pub fn kernel_ideal<T: Real>(q: &FiniteQuantumGroup<T>, l: &StarHom<T>, tol: &Tolerance<T>) -> Result<(Subspace<T>, usize)> {
    let lc = compress(&l.matrix, tol);
    let mut layer = lc.clone();
    let mut stack = lc.clone();
    let mut dims = vec![nullspace(&stack, tol).dim()];
    let mut steady = 0;
    for depth in 2..=KERNEL_MAX_DEPTH {
        layer = compress(&tensor_through_delta(q, &layer, &lc), tol);
        stack = compress(&stack.vstack(&layer)?, tol);
        let d = nullspace(&stack, tol).dim();
        steady = if d == *dims.last().expect("non-empty") { steady + 1 } else { 0 };
        dims.push(d);
        if steady >= KERNEL_WINDOW || d == 0 {
            let final_dim = d;
            let reached = dims.iter().position(|&x| x == final_dim).expect("present") + 1;
            debug_assert!(depth >= reached);
            return Ok((nullspace(&stack, tol), reached));
        }
    }
    Err(Error::Convergence { iterations: KERNEL_MAX_DEPTH, residual: f64::NAN })
}

/// Largest subspace of `ker Λ` that is a two-sided ideal with `Δ(K) ⊆ K ⊗ A + A ⊗ K`.
pub fn coideal_ideal<T: Real>(q: &FiniteQuantumGroup<T>, l: &StarHom<T>, tol: &Tolerance<T>) -> Result<(Subspace<T>, usize)> {
    let n = q.dim();
    let alg = q.alg();
    let mut k = nullspace(&l.matrix, tol);
    let mut rounds = 0;
    while k.dim() > 0 {
        rounds += 1;
        let bk = k.basis().clone();
        let w = k.complement().basis().clone();
        let (kd, r) = (bk.cols(), w.cols());
        if r == 0 {
            // K = A can only happen for the zero map, which is not unital
            break;
        }
        let wh = w.adjoint();
        let wt = w.conj();
        let mut blocks = Vec::new();
        let mut dcond = Matrix::zeros(r * r, kd);
        for y in 0..kd {
            let d = q.coproduct(&bk.column(y));
            let dm = Matrix::from_vec(n, n, d)?;
            let proj = (&(&wh * &dm) * &wt).into_data();
            dcond.set_column(y, &proj);
        }
        blocks.push(dcond);
        for a in 0..n {
            let ea = alg.basis_vector(a);
            let mut left = Matrix::zeros(n, kd);
            let mut right = Matrix::zeros(n, kd);
            for y in 0..kd {
                let x = bk.column(y);
                left.set_column(y, &alg.mul(&ea, &x));
                right.set_column(y, &alg.mul(&x, &ea));
            }
            blocks.push(&wh * &left);
            blocks.push(&wh * &right);
        }
        let m = Matrix::vstack_all(kd, &blocks)?;
        // the blocks are O(1) by construction; an exactly satisfied system is rounding noise
        let sub = nullspace_floor(&m, tol);
        if sub.dim() == kd {
            break;
        }
        k = if sub.dim() == 0 { Subspace::zero(n) } else { Subspace::from_orthonormal(&bk * sub.basis()) };
    }
    Ok((k, rounds))
}

/// Quotient Hopf algebra `A / J` on the `h`-orthogonal complement of `J`, with `π` and `θ`.
pub fn quotient_by<T: Real>(
    q: &FiniteQuantumGroup<T>,
    l: &StarHom<T>,
    j: &Subspace<T>,
    tol: &Tolerance<T>,
) -> Result<(FiniteQuantumGroup<T>, StarHom<T>, StarHom<T>)> {
    let n = q.dim();
    let alg = q.alg();
    let y = if j.dim() == 0 {
        Matrix::identity(n)
    } else {
        let gram = q.haar().gram(alg);
        nullspace(&(&j.basis().adjoint() * &gram), tol).basis().clone()
    };
    let s = y.cols();
    if s + j.dim() != n {
        return Err(Error::Internal(format!("complement of J has dimension {s}, expected {}", n - j.dim())));
    }
    let full = if j.dim() == 0 { y.clone() } else { y.hstack(j.basis())? };
    let inv = inverse(&full, tol.eps_rank).ok_or_else(|| Error::Internal("J and its complement are not independent".into()))?;
    let pi = Matrix::from_fn(s, n, |r, c| inv[(r, c)]);
    let ycols: Vec<Vec<C<T>>> = (0..s).map(|k| y.column(k)).collect();
    let mut mult = vec![vec![vec![C::zero(); s]; s]; s];
    for a in 0..s {
        for b in 0..s {
            let prod = pi.apply(&alg.mul(&ycols[a], &ycols[b]));
            for (p, z) in prod.into_iter().enumerate() {
                mult[p][a][b] = z;
            }
        }
    }
    let unit = pi.apply(alg.unit());
    let mut invm = Matrix::zeros(s, s);
    for (jj, yj) in ycols.iter().enumerate() {
        invm.set_column(jj, &pi.apply(&alg.star(yj)));
    }
    let qalg = Arc::new(StarAlgebra::from_structure(&mult, unit, &invm, &loose(tol))?);
    let pit = pi.transpose();
    let mut delta = Matrix::zeros(s * s, s);
    for (k, yk) in ycols.iter().enumerate() {
        let dm = Matrix::from_vec(n, n, q.coproduct(yk))?;
        delta.set_column(k, &(&(&pi * &dm) * &pit).into_data());
    }
    let counit: Vec<C<T>> = ycols.iter().map(|yk| q.counit_functional().eval(yk)).collect();
    let antipode = &(&pi * q.antipode()) * &y;
    let provisional = FiniteQuantumGroup::new(qalg.clone(), delta, counit, antipode, crate::fqg::Functional::new(vec![C::zero(); s]))?;
    let quotient = provisional.with_solved_haar(tol)?;
    let pi_hom = StarHom::new(alg.clone(), qalg.clone(), pi)?;
    let theta = StarHom::new(qalg, l.target.clone(), &l.matrix * &y)?;
    Ok((quotient, pi_hom, theta))
}

fn loose<T: Real>(tol: &Tolerance<T>) -> Tolerance<T> {
    Tolerance { eps_eq: tol.eps_eq * T::lit(10.0), ..*tol }
}

/// The Hopf image of `Λ: A → B`: the largest quotient through which `Λ` factors.
pub fn hopf_image<T: Real>(q: &FiniteQuantumGroup<T>, l: &StarHom<T>, method: Method, tol: &Tolerance<T>) -> Result<HopfImageResult<T>> {
    check_source(q, l)?;
    let hr = check_star_hom(l);
    if !hr.passes(tol) {
        return Err(precondition(format!("map is not a unital *-homomorphism: {hr:?}")));
    }
    let (j, n_stabilized, coideal_rounds) = match method {
        Method::Kernel => {
            let (j, n) = kernel_ideal(q, l, tol)?;
            (j, Some(n), None)
        }
        Method::Coideal => {
            let (j, r) = coideal_ideal(q, l, tol)?;
            (j, None, Some(r))
        }
        Method::Both => {
            let (kern, coid) = std::thread::scope(|s| {
                let kh = s.spawn(|| kernel_ideal(q, l, tol));
                let ch = s.spawn(|| coideal_ideal(q, l, tol));
                (kh.join().expect("kernel thread"), ch.join().expect("coideal thread"))
            });
            let ((jk, n), (jc, r)) = (kern?, coid?);
            if jk.dim() != jc.dim() || jk.span_distance(&jc) > tol.eps_eq.sqrt() {
                return Err(Error::Internal(format!(
                    "kernel method gives dim J = {} (depth {n}), coideal method gives dim J = {}",
                    jk.dim(),
                    jc.dim()
                )));
            }
            (jc, Some(n), Some(r))
        }
    };
    let (quotient, pi, theta) = quotient_by(q, l, &j, tol)?;
    let report = certify(q, l, &j, &quotient, &pi, &theta, tol);
    Ok(HopfImageResult { j, quotient, pi, theta, n_stabilized, coideal_rounds, method, report })
}

fn certify<T: Real>(
    q: &FiniteQuantumGroup<T>,
    l: &StarHom<T>,
    j: &Subspace<T>,
    quotient: &FiniteQuantumGroup<T>,
    pi: &StarHom<T>,
    theta: &StarHom<T>,
    tol: &Tolerance<T>,
) -> ImageReport<T> {
    let n = q.dim();
    let alg = q.alg();
    let mut ideal = T::zero();
    let mut coideal = T::zero();
    let pit = pi.matrix.transpose();
    for x in j.vectors() {
        for a in 0..n {
            let ea = alg.basis_vector(a);
            ideal = ideal.max(j.residual(&alg.mul(&ea, &x))).max(j.residual(&alg.mul(&x, &ea)));
        }
        let dm = Matrix::from_vec(n, n, q.coproduct(&x)).expect("n x n");
        coideal = coideal.max((&(&pi.matrix * &dm) * &pit).norm_max());
    }
    let factorization = (&theta.matrix * &pi.matrix).max_diff(&l.matrix);
    ImageReport {
        ideal,
        coideal,
        factorization,
        pi_hom: check_star_hom(pi),
        theta_hom: check_star_hom(theta),
        pi_surjective: pi.is_surjective(tol),
        quotient: quotient.check(tol),
    }
}
