//! Independent reference implementations used only by tests.
//!
//! Nothing here calls into the library's eigensolver or its measurement
//! formulas; dense linear algebra comes from nalgebra.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, Matrix2, Matrix4};
use rand::Rng;
use thermodiscord::qcorr::XState;

pub type C = Complex<f64>;

// ---------------------------------------------------------------- states

/// Random valid X state; about a third have `r22 = r33`.
pub fn random_x_state<R: Rng>(rng: &mut R) -> XState<f64> {
    loop {
        let mut p: Vec<f64> = (0..4).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
        if rng.gen_bool(0.33) {
            let m = 0.5 * (p[1] + p[2]);
            p[1] = m;
            p[2] = m;
        }
        let s: f64 = p.iter().sum();
        for v in &mut p {
            *v /= s;
        }
        let r14 = rng.gen_range(-1.0..1.0) * (p[0] * p[3]).sqrt();
        let r23 = rng.gen_range(-1.0..1.0) * (p[1] * p[2]).sqrt();
        if let Ok(x) = XState::new(p[0], p[1], p[2], p[3], r14, r23) {
            return x;
        }
    }
}

/// Random pure X state `a|00> + b|11>` or `a|01> + b|10>` with real amplitudes.
pub fn random_pure_x_state<R: Rng>(rng: &mut R) -> XState<f64> {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (a, b) = (t.cos(), t.sin());
    if rng.gen_bool(0.5) {
        XState::new(a * a, 0.0, 0.0, b * b, a * b, 0.0).unwrap()
    } else {
        XState::new(0.0, a * a, b * b, 0.0, 0.0, a * b).unwrap()
    }
}

// ------------------------------------------------ conditional entropy oracle

fn dense(state: &XState<f64>) -> Matrix4<C> {
    let m = state.to_matrix();
    Matrix4::from_fn(|i, j| C::new(m[i][j], 0.0))
}

fn projector(theta: f64, phi: f64, sign: f64) -> Matrix2<C> {
    let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
    Matrix2::new(
        C::new(0.5 * (1.0 + sign * n[2]), 0.0),
        C::new(0.5 * sign * n[0], -0.5 * sign * n[1]),
        C::new(0.5 * sign * n[0], 0.5 * sign * n[1]),
        C::new(0.5 * (1.0 - sign * n[2]), 0.0),
    )
}

fn kron(a: &Matrix2<C>, b: &Matrix2<C>) -> Matrix4<C> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

fn entropy2(m: &Matrix2<C>) -> f64 {
    let tr = (m[(0, 0)] + m[(1, 1)]).re;
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
        .iter()
        .map(|&l| if l > 1e-300 { -l * l.log2() } else { 0.0 })
        .sum()
}

/// Conditional entropy of A after measuring B along `(theta, phi)`, from
/// explicit 4x4 complex matrices and a partial trace.
pub fn conditional_entropy_dense(state: &XState<f64>, theta: f64, phi: f64) -> f64 {
    let rho = dense(state);
    let id = Matrix2::<C>::identity();
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let p = kron(&id, &projector(theta, phi, sign));
        let post = p * rho * p;
        let reduced = Matrix2::from_fn(|a, a2| post[(2 * a, 2 * a2)] + post[(2 * a + 1, 2 * a2 + 1)]);
        let prob = (reduced[(0, 0)] + reduced[(1, 1)]).re;
        if prob > 1e-14 {
            total += prob * entropy2(&(reduced / C::new(prob, 0.0)));
        }
    }
    total
}

/// Brute-force minimum over a `n_theta x n_phi` grid of the closed square
/// `[0, pi] x [0, 2 pi]`.
pub fn brute_min_conditional_entropy(state: &XState<f64>, n_theta: usize, n_phi: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..n_theta {
        let t = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let p = std::f64::consts::TAU * j as f64 / (n_phi - 1) as f64;
            best = best.min(conditional_entropy_dense(state, t, p));
        }
    }
    best
}

/// Entropy of the dense density matrix.
pub fn entropy_dense(state: &XState<f64>) -> f64 {
    let m = state.to_matrix();
    let r = DMatrix::from_fn(4, 4, |i, j| m[i][j]);
    jacobi_eigenvalues(&r)
        .iter()
        .map(|&l| if l > 1e-300 { -l * l.log2() } else { 0.0 })
        .sum()
}

// ------------------------------------------------------------ spin chains

/// Thermal expectations of real symmetric operators, from the matrix
/// exponential of the Hamiltonian (no eigenvectors involved).
pub struct Thermal {
    rho: DMatrix<f64>,
}

impl Thermal {
    pub fn new(h: &DMatrix<f64>, kt: f64) -> Self {
        let n = h.nrows();
        let shift = jacobi_eigenvalues_lower_bound(h);
        let a = (h - DMatrix::identity(n, n) * shift) * (-1.0 / kt);
        let mut rho = a.exp();
        let z = rho.trace();
        rho /= z;
        Self { rho }
    }

    pub fn expect(&self, op: &DMatrix<f64>) -> f64 {
        self.rho.component_mul(&op.transpose()).sum()
    }
}

/// Smallest eigenvalue, to within the accuracy needed for an overflow guard.
fn jacobi_eigenvalues_lower_bound(h: &DMatrix<f64>) -> f64 {
    // power iteration on (c I - H) converges to the lowest level
    let n = h.nrows();
    let c = (0..n)
        .map(|i| (0..n).map(|j| h[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shifted = DMatrix::identity(n, n) * c - h;
    let mut v = nalgebra::DVector::from_fn(n, |i, _| 1.0 + 0.01 * i as f64);
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w = &shifted * &v;
        lambda = v.dot(&w) / v.dot(&v);
        v = w.normalize();
    }
    c - lambda
}

/// Eigenvalues of a small real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    jacobi(m).0
}

/// Cyclic Jacobi: eigenvalues and the orthogonal matrix of eigenvectors
/// (columns), unsorted.
pub fn jacobi(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.abs().max().max(1e-300);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[(p, q)] == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// Pauli string on `l` spins; bit `i` of a basis index is site `i` (1 = up).
/// `ops[i]` is one of `'x'`, `'y'`, `'z'`; sites not listed are identity.
/// Only strings with an even number of `'y'` (hence real) are supported.
pub fn pauli_string(l: usize, ops: &[(usize, char)]) -> DMatrix<f64> {
    let n = 1usize << l;
    let ny = ops.iter().filter(|o| o.1 == 'y').count();
    assert!(ny % 2 == 0, "odd number of Y factors is not real");
    let mut m = DMatrix::zeros(n, n);
    for s in 0..n {
        let mut t = s;
        // amplitude as i^k * sign
        let mut sign = 1.0;
        let mut ipow = 0;
        for &(site, o) in ops {
            let up = (s >> site) & 1 == 1;
            match o {
                'x' => t ^= 1 << site,
                'y' => {
                    // Y|up> = i|down>, Y|down> = -i|up>
                    t ^= 1 << site;
                    ipow += 1;
                    if !up {
                        sign = -sign;
                    }
                }
                'z' => {
                    if !up {
                        sign = -sign;
                    }
                }
                _ => panic!("bad Pauli {o}"),
            }
        }
        let phase = match ipow % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => unreachable!(),
        };
        m[(t, s)] += sign * phase;
    }
    m
}

/// Full-space XXZ ring Hamiltonian.
pub fn xxz_hamiltonian(l: usize, delta: f64, h: f64, j: f64) -> DMatrix<f64> {
    let n = 1usize << l;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..l {
        let k = (i + 1) % l;
        m += pauli_string(l, &[(i, 'x'), (k, 'x')]) * j;
        m += pauli_string(l, &[(i, 'y'), (k, 'y')]) * j;
        m += pauli_string(l, &[(i, 'z'), (k, 'z')]) * (j * delta);
        m -= pauli_string(l, &[(i, 'z')]) * (h / 2.0);
    }
    m
}

/// `(sz, szz, sxx)` on sites 0 and 1 by full diagonalization.
pub fn xxz_brute(l: usize, delta: f64, h: f64, j: f64, kt: f64) -> (f64, f64, f64) {
    let th = Thermal::new(&xxz_hamiltonian(l, delta, h, j), kt);
    (
        th.expect(&pauli_string(l, &[(0, 'z')])),
        th.expect(&pauli_string(l, &[(0, 'z'), (1, 'z')])),
        th.expect(&pauli_string(l, &[(0, 'x'), (1, 'x')])),
    )
}

/// Full-space XY ring Hamiltonian
/// `-(lambda/2) sum [(1+gamma) XX + (1-gamma) YY] - sum Z`.
pub fn xy_hamiltonian(l: usize, lambda: f64, gamma: f64) -> DMatrix<f64> {
    let n = 1usize << l;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..l {
        let k = (i + 1) % l;
        m -= pauli_string(l, &[(i, 'x'), (k, 'x')]) * (lambda * (1.0 + gamma) / 2.0);
        m -= pauli_string(l, &[(i, 'y'), (k, 'y')]) * (lambda * (1.0 - gamma) / 2.0);
        m -= pauli_string(l, &[(i, 'z')]);
    }
    m
}

/// `(sz, sxx, syy, szz)` between sites 0 and k, by full diagonalization at
/// temperature `t` of [`xy_hamiltonian`].
pub fn xy_dense(l: usize, lambda: f64, gamma: f64, t: f64, k: usize) -> [f64; 4] {
    let th = Thermal::new(&xy_hamiltonian(l, lambda, gamma), t);
    [
        th.expect(&pauli_string(l, &[(0, 'z')])),
        th.expect(&pauli_string(l, &[(0, 'x'), (k, 'x')])),
        th.expect(&pauli_string(l, &[(0, 'y'), (k, 'y')])),
        th.expect(&pauli_string(l, &[(0, 'z'), (k, 'z')])),
    ]
}

// ------------------------------------------------ free-fermion XY ring

/// Pfaffian of a real antisymmetric matrix by Gaussian elimination with pivoting.
pub fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut m = a.clone();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest entry in column k below row k
        let mut p = k + 1;
        for r in (k + 2)..n {
            if m[(r, k)].abs() > m[(p, k)].abs() {
                p = r;
            }
        }
        if p != k + 1 {
            m.swap_rows(k + 1, p);
            m.swap_columns(k + 1, p);
            pf = -pf;
        }
        let piv = m[(k + 1, k)];
        if piv == 0.0 {
            return 0.0;
        }
        pf *= -piv;
        // eliminate rows/cols k+2.. using row/col k+1 and k
        for r in (k + 2)..n {
            let f = m[(r, k)] / piv;
            if f != 0.0 {
                for c in 0..n {
                    let v = m[(k + 1, c)];
                    m[(r, c)] -= f * v;
                }
                for c in 0..n {
                    let v = m[(c, k + 1)];
                    m[(c, r)] -= f * v;
                }
            }
        }
        k += 2;
    }
    pf
}

struct Ensemble {
    /// `log` of the trace and its sign.
    log_trace: f64,
    sign: f64,
    /// `<a_m a_n>` divided by `i`, for `m != n`.
    pair: DMatrix<f64>,
}

fn fermion_ensemble(w: &DMatrix<f64>, beta: f64, twisted: bool) -> Ensemble {
    let wtw = w.transpose() * w;
    let (values, vectors) = jacobi(&wtw);
    let mut eps: Vec<f64> = values.iter().map(|&m| m.max(0.0).sqrt()).collect();
    eps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // each single-particle energy appears twice
    let modes: Vec<f64> = eps.iter().step_by(2).copied().collect();
    let mut log_trace = 0.0;
    for &x in &modes {
        let y = beta * x / 2.0;
        // log(2 cosh y) or log(2 sinh y)
        log_trace += y + if twisted { (-(-2.0 * y).exp_m1()).ln() } else { (1.0 + (-2.0 * y).exp()).ln() };
    }
    let sign = if twisted { pfaffian(w).signum() } else { 1.0 };
    let phi: Vec<f64> = values
        .iter()
        .map(|&m| {
            let s = m.max(0.0).sqrt();
            let y = beta * s / 2.0;
            if twisted {
                1.0 / (s * y.tanh())
            } else if s < 1e-300 {
                beta / 2.0
            } else {
                y.tanh() / s
            }
        })
        .collect();
    let f = &vectors * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(phi)) * vectors.transpose();
    let pair = w * f;
    Ensemble {
        log_trace,
        sign,
        pair,
    }
}

/// `W` for the parity-`q` sector of the ring.
fn xy_majorana_w(l: usize, lambda: f64, gamma: f64, q: f64) -> DMatrix<f64> {
    let n = 2 * l;
    let mut w = DMatrix::zeros(n, n);
    let mut add = |m: usize, k: usize, c: f64| {
        w[(m, k)] += 2.0 * c;
        w[(k, m)] -= 2.0 * c;
    };
    for j in 0..l {
        add(2 * j, 2 * j + 1, 1.0);
        let boundary = j == l - 1;
        let f = if boundary { -q } else { 1.0 };
        add((2 * j + 1) % n, (2 * j + 2) % n, f * lambda * (1.0 + gamma) / 2.0);
        add(2 * j, (2 * j + 3) % n, -f * lambda * (1.0 - gamma) / 2.0);
    }
    w
}

/// Expectation of `coef * a_{m_0} a_{m_1} ...` (ascending, even count) in
/// an ensemble, where `coef = i^ipow`; returns the real part.
fn string_expectation(ens: &Ensemble, idx: &[usize], ipow: usize) -> f64 {
    let n = idx.len();
    let r = DMatrix::from_fn(n, n, |a, b| if a == b { 0.0 } else { ens.pair[(idx[a], idx[b])] });
    // <a a> = i * r, Pf(i r) = i^(n/2) Pf(r)
    let total = ipow + n / 2;
    let pf = pfaffian(&r);
    match total % 4 {
        0 => pf,
        2 => -pf,
        _ => 0.0,
    }
}

/// `(sz, sxx, syy, szz)` between sites 0 and `k` of the periodic ring of
/// [`xy_hamiltonian`] at temperature `t`, exactly, via Jordan-Wigner fermions
/// in both parity sectors. Requires no exact zero modes.
pub fn xy_free_fermion(l: usize, lambda: f64, gamma: f64, t: f64, k: usize) -> [f64; 4] {
    assert!(k >= 1 && 2 * k < l);
    let beta = 1.0 / t;
    // Majorana strings: (indices, power of i in the prefactor)
    let z: (Vec<usize>, usize) = (vec![0, 1], 3); // -i a0 a1
    let xx: (Vec<usize>, usize) = ((1..=2 * k).collect(), (3 * k) % 4); // (-i)^k
    let mut yy_idx = vec![0];
    yy_idx.extend(2..2 * k);
    yy_idx.push(2 * k + 1);
    let yy: (Vec<usize>, usize) = (yy_idx, (2 + 3 * k) % 4); // -(-i)^k
    let zz: (Vec<usize>, usize) = (vec![0, 1, 2 * k, 2 * k + 1], 2); // -1
    let ops = [z, xx, yy, zz];

    let mut parts = Vec::new();
    for q in [1.0, -1.0] {
        let w = xy_majorana_w(l, lambda, gamma, q);
        for twisted in [false, true] {
            let ens = fermion_ensemble(&w, beta, twisted);
            let coef = if twisted { q } else { 1.0 };
            parts.push((ens, coef));
        }
    }
    let lmax = parts.iter().map(|p| p.0.log_trace).fold(f64::MIN, f64::max);
    let mut den = 0.0;
    let mut num = [0.0; 4];
    for (ens, coef) in &parts {
        let zw = coef * ens.sign * (ens.log_trace - lmax).exp();
        den += zw;
        for (o, (idx, ip)) in ops.iter().enumerate() {
            num[o] += zw * string_expectation(ens, idx, *ip);
        }
    }
    num.map(|v| v / den)
}
