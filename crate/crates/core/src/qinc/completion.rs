use itertools::Itertools;

use super::rep::{IncreasingSequenceRep, MagicUnitaryRep};
use crate::cnum::{Matrix, Tolerance};
use crate::error::{argument, precondition, Error, Result};
use crate::grouporacle::{closure, Permutation};
use crate::scalar::Real;

/// The `d = 1` representation of a strictly increasing 1-based sequence:
/// `v_ij = 1` iff `seq[j] = i`.
pub fn classical_rep<T: Real>(seq: &[usize], n: usize) -> Result<IncreasingSequenceRep<T>> {
    let k = seq.len();
    if k == 0 || k > n {
        return Err(argument(format!("sequence length {k} must lie in 1..={n}")));
    }
    if seq.iter().any(|&s| s == 0 || s > n) {
        return Err(argument(format!("sequence {seq:?} has values outside 1..={n}")));
    }
    if seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(argument(format!("sequence {seq:?} is not strictly increasing")));
    }
    let v = (0..n * k)
        .map(|ij| {
            let x = if seq[ij % k] == ij / k + 1 { 1.0 } else { 0.0 };
            Matrix::from_real(&[&[x]])
        })
        .collect();
    IncreasingSequenceRep::new(n, k, 1, v)
}

/// All increasing sequences of length `k` in `1..=n`, lexicographically, with their representations.
pub fn enumerate<T: Real>(k: usize, n: usize) -> Result<Vec<(Vec<usize>, IncreasingSequenceRep<T>)>> {
    if k == 0 || k > n {
        return Err(argument(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    (1..=n)
        .combinations(k)
        .map(|seq| {
            let rep = classical_rep(&seq, n)?;
            Ok((seq, rep))
        })
        .collect()
}

/// The completion `γ` to an `n × n` magic unitary.
///
/// Uses the sentinels `v_00 = 𝟙` and `v_i0 = v_0i = v_{i,k+1} = 0` (1-based) and fills
/// column `k + m` by `p_{p+m, k+m} = Σ_{i=0}^{m+p−1} (v_{ip} − v_{i+1,p+1})`, zero elsewhere.
pub fn complete<T: Real>(rep: &IncreasingSequenceRep<T>, tol: &Tolerance<T>) -> Result<MagicUnitaryRep<T>> {
    let report = rep.validate();
    if !report.passes(tol) {
        return Err(precondition(format!("representation violates the increasing-sequence relations: {report:?}")));
    }
    let (n, k, d) = (rep.n(), rep.k(), rep.d());
    let zero = Matrix::zeros(d, d);
    let id = Matrix::identity(d);
    // 1-based access with the boundary conventions
    let v = |i: usize, j: usize| -> &Matrix<T> {
        match (i, j) {
            (0, 0) => &id,
            (0, _) | (_, 0) => &zero,
            (_, j) if j == k + 1 => &zero,
            (i, j) => rep.v(i - 1, j - 1),
        }
    };
    let mut p: Vec<Option<Matrix<T>>> = vec![None; n * n];
    let mut set = |i: usize, j: usize, x: Matrix<T>| -> Result<()> {
        let slot = &mut p[(i - 1) * n + (j - 1)];
        if slot.is_some() {
            return Err(Error::Internal(format!("completion assigns p_({i},{j}) twice")));
        }
        *slot = Some(x);
        Ok(())
    };
    for i in 1..=n {
        for j in 1..=k {
            set(i, j, v(i, j).clone())?;
        }
    }
    for m in 1..=n - k {
        for i in (1..m).chain(m + k + 1..=n) {
            set(i, k + m, zero.clone())?;
        }
        for q in 0..=k {
            let mut acc = zero.clone();
            for i in 0..m + q {
                acc = &(&acc + v(i, q)) - v(i + 1, q + 1);
            }
            set(q + m, k + m, acc)?;
        }
    }
    let entries = p
        .into_iter()
        .enumerate()
        .map(|(ij, x)| x.ok_or_else(|| Error::Internal(format!("completion leaves p_({},{}) unset", ij / n + 1, ij % n + 1))))
        .collect::<Result<Vec<_>>>()?;
    let out = MagicUnitaryRep::with_blocks(n, d, entries, rep.blocks().to_vec())?;
    let check = out.validate();
    // guard against formula misapplication
    if check.max() > tol.eps_eq * T::lit(10.0) {
        return Err(Error::Internal(format!("completed matrix is not a magic unitary: {check:?}")));
    }
    Ok(out)
}

/// Result of completing every classical increasing sequence of length 2 in `1..=4`.
#[derive(Clone, Debug, PartialEq)]
pub struct S4Check {
    pub sequences: Vec<Vec<usize>>,
    pub permutations: Vec<Permutation>,
    pub order: usize,
    pub is_s4: bool,
}

/// Completes the six classical sequences for `k = 2, n = 4` and closes the resulting permutations.
pub fn s4_generation_check() -> S4Check {
    let tol = Tolerance::<f64>::default();
    let reps = enumerate::<f64>(2, 4).expect("2 <= 4");
    let mut sequences = Vec::new();
    let mut permutations = Vec::new();
    for (seq, rep) in reps {
        let u = complete(&rep, &tol).expect("classical reps complete");
        permutations.push(u.to_permutation(&tol).expect("d = 1 completion is a permutation matrix"));
        sequences.push(seq);
    }
    let order = closure(&permutations).expect("non-empty").order();
    S4Check { sequences, permutations, order, is_s4: order == 24 }
}

/// `n = 4, k = 2` representation from two pairs of projections:
/// `v21 = p1, v31 = p2, v22 = q1, v32 = q2, v11 = 𝟙 − p1 − p2, v42 = 𝟙 − q1 − q2`.
pub fn free_pair_rep<T: Real>(
    p1: &Matrix<T>,
    p2: &Matrix<T>,
    q1: &Matrix<T>,
    q2: &Matrix<T>,
    tol: &Tolerance<T>,
) -> Result<IncreasingSequenceRep<T>> {
    let d = p1.rows();
    for (name, x) in [("p1", p1), ("p2", p2), ("q1", q1), ("q2", q2)] {
        if x.shape() != (d, d) {
            return Err(argument(format!("{name} must be {d}x{d}")));
        }
        let r = (x * x).max_diff(x).max(x.max_diff(&x.adjoint()));
        if r > tol.eps_eq {
            return Err(precondition(format!("{name} is not an orthogonal projection (residual {:e})", r.to_f64().unwrap_or(f64::NAN))));
        }
    }
    let relations = [("p1 p2 = 0", p1, p2), ("q1 q2 = 0", q1, q2), ("p1 q1 = 0", p1, q1), ("p2 q2 = 0", p2, q2), ("q1 p2 = 0", q1, p2)];
    let failing: Vec<&str> = relations.iter().filter(|(_, a, b)| (*a * *b).norm_max() > tol.eps_eq).map(|(name, _, _)| *name).collect();
    if !failing.is_empty() {
        return Err(precondition(format!("relations violated: {}", failing.join(", "))));
    }
    let id = Matrix::identity(d);
    let zero = Matrix::zeros(d, d);
    let v11 = &(&id - p1) - p2;
    let v42 = &(&id - q1) - q2;
    // rows i = 1..4, columns j = 1, 2
    let v = vec![v11, zero.clone(), p1.clone(), q1.clone(), p2.clone(), q2.clone(), zero, v42];
    IncreasingSequenceRep::new(4, 2, d, v)
}

/// `p1 = [[1,0],[0,0]]`, `q2 = [[t,s],[s,1−t]]` with `s = √(t(1−t))`, `p2 = q1 = 0`.
pub fn standard_free_pair<T: Real>(t: T) -> Result<[Matrix<T>; 4]> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(argument("t must lie in [0, 1]"));
    }
    let s = (t * (T::one() - t)).sqrt();
    let re = |x: T| num_complex::Complex::new(x, T::zero());
    let p1 = Matrix::from_rows(&[vec![re(T::one()), re(T::zero())], vec![re(T::zero()), re(T::zero())]])?;
    let q2 = Matrix::from_rows(&[vec![re(t), re(s)], vec![re(s), re(T::one() - t)]])?;
    Ok([p1, Matrix::zeros(2, 2), Matrix::zeros(2, 2), q2])
}

/// The 4 × 4 magic unitary written directly in terms of `p1, p2, q1, q2`.
pub fn displayed_completion<T: Real>(p1: &Matrix<T>, p2: &Matrix<T>, q1: &Matrix<T>, q2: &Matrix<T>) -> Result<MagicUnitaryRep<T>> {
    let d = p1.rows();
    let id = Matrix::identity(d);
    let z = Matrix::zeros(d, d);
    let one_p = &(&id - p1) - p2;
    let entries = vec![
        one_p.clone(),
        z.clone(),
        p1 + p2,
        z.clone(),
        p1.clone(),
        q1.clone(),
        &one_p - q1,
        p2.clone(),
        p2.clone(),
        q2.clone(),
        q1.clone(),
        &(&(&id - p2) - q1) - q2,
        z.clone(),
        &(&id - q1) - q2,
        z,
        q1 + q2,
    ];
    MagicUnitaryRep::new(4, d, entries)
}
