//! Dense linear-algebra oracles, independent of the symplectic machinery.
//!
//! Qubit `q` is bit `q` of a basis-state index.

#![allow(dead_code)]

use num_complex::Complex64;
use surfgrow::{Circuit, Gate, PauliOperator};

pub const TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn i_pow(e: u8) -> Complex64 {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(e % 4) as usize]
}

/// Single-qubit input states used by the equivalence checks.
pub fn ket_zero() -> [Complex64; 2] {
    [c(1.0, 0.0), c(0.0, 0.0)]
}

pub fn ket_one() -> [Complex64; 2] {
    [c(0.0, 0.0), c(1.0, 0.0)]
}

pub fn ket_plus() -> [Complex64; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [c(h, 0.0), c(h, 0.0)]
}

#[derive(Debug, Clone)]
pub struct StateVector {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    /// `|psi>` on `input`, `|0>` everywhere else.
    pub fn product(n: usize, input: usize, psi: [Complex64; 2]) -> Self {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = psi[0];
        amps[1 << input] = psi[1];
        Self { n, amps }
    }

    fn bit(k: usize, q: usize) -> bool {
        (k >> q) & 1 == 1
    }

    /// Reduced single-qubit state of `q`, if `q` is unentangled.
    fn factor_out(&self, q: usize) -> Option<([Complex64; 2], Vec<Complex64>)> {
        let half = 1 << (self.n - 1);
        let squeeze = |k: usize| (k & ((1 << q) - 1)) | ((k >> (q + 1)) << q);
        let mut branches = [vec![c(0.0, 0.0); half], vec![c(0.0, 0.0); half]];
        for (k, a) in self.amps.iter().enumerate() {
            branches[Self::bit(k, q) as usize][squeeze(k)] = *a;
        }
        let norm = |v: &[Complex64]| v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let (n0, n1) = (norm(&branches[0]), norm(&branches[1]));
        let rest = if n0 > n1 { &branches[0] } else { &branches[1] };
        let rn = norm(rest);
        let rest: Vec<Complex64> = rest.iter().map(|a| a / rn).collect();
        // Each branch must be a multiple of the same rest state.
        let coeff =
            |b: &[Complex64]| -> Complex64 { rest.iter().zip(b).map(|(r, a)| r.conj() * a).sum() };
        let (a0, a1) = (coeff(&branches[0]), coeff(&branches[1]));
        for (b, a) in [(&branches[0], a0), (&branches[1], a1)] {
            let err: f64 = b
                .iter()
                .zip(&rest)
                .map(|(x, r)| (x - a * r).norm_sqr())
                .sum();
            if err.sqrt() > TOL {
                return None;
            }
        }
        Some(([a0, a1], rest))
    }

    /// Replaces qubit `q` with `new`. Panics if `q` is entangled with the rest.
    fn reset(&mut self, q: usize, new: [Complex64; 2]) {
        let (_, rest) = self
            .factor_out(q)
            .unwrap_or_else(|| panic!("reset of entangled qubit {q}"));
        let unsqueeze =
            |k: usize, b: usize| (k & ((1 << q) - 1)) | (b << q) | ((k >> q) << (q + 1));
        let mut amps = vec![c(0.0, 0.0); 1 << self.n];
        for (k, r) in rest.iter().enumerate() {
            amps[unsqueeze(k, 0)] = new[0] * r;
            amps[unsqueeze(k, 1)] = new[1] * r;
        }
        self.amps = amps;
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::ResetZ(q) => self.reset(q, ket_zero()),
            Gate::ResetX(q) => self.reset(q, ket_plus()),
            Gate::Cx { control, target } => {
                for k in 0..self.amps.len() {
                    if Self::bit(k, control) && !Self::bit(k, target) {
                        self.amps.swap(k, k | (1 << target));
                    }
                }
            }
            Gate::SDag(q) => {
                for (k, a) in self.amps.iter_mut().enumerate() {
                    if Self::bit(k, q) {
                        *a *= c(0.0, -1.0);
                    }
                }
            }
        }
    }

    pub fn run(circuit: &Circuit, psi: [Complex64; 2]) -> Self {
        let input = circuit.input_qubit().expect("circuit has an input qubit");
        let mut s = Self::product(circuit.n(), input, psi);
        for (_, g) in circuit.gates() {
            s.apply(g);
        }
        s
    }

    pub fn apply_pauli(&self, p: &PauliOperator) -> Vec<Complex64> {
        let (xm, zm, y) = masks(p);
        let global = i_pow(p.phase().exponent() + (y % 4) as u8);
        let mut out = vec![c(0.0, 0.0); self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let sign = if (k & zm).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[k ^ xm] = global * a * sign;
        }
        out
    }

    /// `P|psi> = |psi>` up to `TOL` in every amplitude.
    pub fn stabilized_by(&self, p: &PauliOperator) -> bool {
        self.apply_pauli(p)
            .iter()
            .zip(&self.amps)
            .all(|(a, b)| (a - b).norm() < TOL)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// X mask, Z mask and Y count of `p` as plain integers.
fn masks(p: &PauliOperator) -> (usize, usize, u32) {
    let mut xm = 0;
    let mut zm = 0;
    for q in 0..p.n() {
        if p.x_mask().get(q) {
            xm |= 1 << q;
        }
        if p.z_mask().get(q) {
            zm |= 1 << q;
        }
    }
    (xm, zm, (xm & zm).count_ones())
}

pub type Matrix = Vec<Vec<Complex64>>;

/// Dense `2^n × 2^n` matrix of `p`, phase included.
pub fn pauli_matrix(p: &PauliOperator) -> Matrix {
    let dim = 1 << p.n();
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for k in 0..dim {
        let mut e = vec![c(0.0, 0.0); dim];
        e[k] = c(1.0, 0.0);
        let col = StateVector { n: p.n(), amps: e }.apply_pauli(p);
        for (r, v) in col.into_iter().enumerate() {
            m[r][k] = v;
        }
    }
    m
}

/// Dense matrix of a unitary gate on `n` qubits.
pub fn gate_matrix(gate: &Gate, n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for k in 0..dim {
        let mut e = vec![c(0.0, 0.0); dim];
        e[k] = c(1.0, 0.0);
        let mut s = StateVector { n, amps: e };
        s.apply(gate);
        for (r, v) in s.amps.into_iter().enumerate() {
            m[r][k] = v;
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = vec![vec![c(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Matrix) -> Matrix {
    let dim = a.len();
    (0..dim)
        .map(|i| (0..dim).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < TOL)
}
