//! Spin-0 (5×5) and spin-1 (10×10) DKP beta-matrix representations.
//!
//! Everything here is exact integer arithmetic. Matrices are stored row-major
//! with 0-based row/column indices; the Lorentz label μ runs over 0..=3 with
//! μ = 0 the time component. The metric is g = diag(1, −1, −1, −1).
//!
//! Component layout follows the usual block forms: for spin 0 the spinor is
//! (ψ₁, …, ψ₅) with β⁰ acting on the first two components, and for spin 1 it
//! is (ψ₁ | ψ₂ ψ₃ ψ₄ | ψ₅ ψ₆ ψ₇ | ψ₈ ψ₉ ψ₁₀) in blocks of sizes 1, 3, 3, 3.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Minkowski metric diagonal, g^{μμ}.
pub const METRIC: [i64; 4] = [1, -1, -1, -1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Spin0,
    Spin1,
}

impl Spin {
    pub fn dim(self) -> usize {
        match self {
            Spin::Spin0 => 5,
            Spin::Spin1 => 10,
        }
    }

    pub fn label(self) -> u8 {
        match self {
            Spin::Spin0 => 0,
            Spin::Spin1 => 1,
        }
    }

    pub fn from_label(label: u8) -> Option<Spin> {
        match label {
            0 => Some(Spin::Spin0),
            1 => Some(Spin::Spin1),
            _ => None,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_diag(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Exact division of every entry; `None` if some entry is not a multiple.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if k == 0 || self.data.iter().any(|v| v % k != 0) {
            return None;
        }
        Some(IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v / k).collect(),
        })
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// {A, B} = AB + BA
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// [A, B] = AB − BA
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        self.scale(-1)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// The four β^μ of one spin sector together with η⁰, the projector P and
/// the charge-conjugation matrix C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaRepresentation {
    pub spin: Spin,
    pub dim: usize,
    pub beta: [IntMatrix; 4],
    pub eta0: IntMatrix,
    pub projector: IntMatrix,
    /// C = η⁰η¹η²η³ (phase +1). Anticommutes with every β^μ.
    pub conjugator: IntMatrix,
}

impl BetaRepresentation {
    /// η^μ = 2β^μβ^μ − g^{μμ}.
    pub fn eta(&self, mu: usize) -> IntMatrix {
        let b2 = &self.beta[mu] * &self.beta[mu];
        &b2.scale(2) - &IntMatrix::identity(self.dim).scale(METRIC[mu])
    }

    /// The two-factor product η⁰η¹. It anticommutes with β⁰ and β¹ only,
    /// which is all the one-dimensional (x-axis) problem needs.
    pub fn planar_conjugator(&self) -> IntMatrix {
        &self.eta(0) * &self.eta(1)
    }

    /// β^μβ_μ = Σ_μ g_{μμ} β^μβ^μ.
    pub fn beta_square_contracted(&self) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.dim);
        for (b, g) in self.beta.iter().zip(METRIC) {
            acc = &acc + &(b * b).scale(g);
        }
        acc
    }

    /// [P, β^μ]
    pub fn nonminimal_vertex(&self, mu: usize) -> IntMatrix {
        self.projector.commutator(&self.beta[mu])
    }
}

/// Levi-Civita symbol with 0-based indices.
fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn spin0_betas() -> [IntMatrix; 4] {
    let mut beta0 = IntMatrix::zeros(5);
    // θ block
    beta0.set(0, 1, 1);
    beta0.set(1, 0, 1);

    let spatial = |i: usize| {
        // ρ_i is 2×3 with a single −1 at (0, i); β^i = [[0, ρ_i], [−ρ_iᵀ, 0]].
        let mut b = IntMatrix::zeros(5);
        b.set(0, 2 + i, -1);
        b.set(2 + i, 0, 1);
        b
    };
    [beta0, spatial(0), spatial(1), spatial(2)]
}

fn spin1_betas() -> [IntMatrix; 4] {
    // Blocks: scalar row 0, A = 1..=3, B = 4..=6, C = 7..=9.
    let mut beta0 = IntMatrix::zeros(10);
    for j in 0..3 {
        beta0.set(1 + j, 4 + j, 1);
        beta0.set(4 + j, 1 + j, 1);
    }

    let spatial = |i: usize| {
        let mut b = IntMatrix::zeros(10);
        // e_i in the B columns of row 0, −e_iᵀ in column 0 of the B rows.
        b.set(0, 4 + i, 1);
        b.set(4 + i, 0, -1);
        // −i s_i with (s_i)_{jk} = −i ε_{ijk} is the real matrix −ε_{ijk}.
        for j in 0..3 {
            for k in 0..3 {
                let v = -levi_civita(i, j, k);
                if v != 0 {
                    b.set(1 + j, 7 + k, v);
                    b.set(7 + j, 1 + k, v);
                }
            }
        }
        b
    };
    [beta0, spatial(0), spatial(1), spatial(2)]
}

/// Expected diagonal of the projector in each sector.
pub fn projector_diagonal(spin: Spin) -> Vec<i64> {
    match spin {
        Spin::Spin0 => vec![1, 0, 0, 0, 0],
        Spin::Spin1 => vec![1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    }
}

pub fn build_representation(spin: Spin) -> BetaRepresentation {
    let beta = match spin {
        Spin::Spin0 => spin0_betas(),
        Spin::Spin1 => spin1_betas(),
    };
    let dim = spin.dim();
    let id = IntMatrix::identity(dim);
    let eta0 = &(&beta[0] * &beta[0]).scale(2) - &id;

    let mut rep = BetaRepresentation {
        spin,
        dim,
        beta,
        eta0,
        projector: IntMatrix::zeros(dim),
        conjugator: IntMatrix::zeros(dim),
    };

    let bb = rep.beta_square_contracted();
    let projector = match spin {
        Spin::Spin0 => (&bb - &id)
            .div_exact(3)
            .expect("spin-0 β^μβ_μ − 1 is divisible by 3"),
        Spin::Spin1 => &bb - &id.scale(2),
    };
    assert_eq!(
        projector,
        IntMatrix::from_diag(&projector_diagonal(spin)),
        "projector does not match its diagonal form"
    );
    rep.projector = projector;

    let mut c = IntMatrix::identity(dim);
    for mu in 0..4 {
        c = &c * &rep.eta(mu);
    }
    rep.conjugator = c;
    rep
}

/// β^μβ^νβ^λ + β^λβ^νβ^μ − g^{μν}β^λ − g^{λν}β^μ
pub fn algebra_residual(rep: &BetaRepresentation, mu: usize, nu: usize, lambda: usize) -> IntMatrix {
    let b = &rep.beta;
    let lhs = &(&(&b[mu] * &b[nu]) * &b[lambda]) + &(&(&b[lambda] * &b[nu]) * &b[mu]);
    let g_mu_nu = if mu == nu { METRIC[mu] } else { 0 };
    let g_lambda_nu = if lambda == nu { METRIC[lambda] } else { 0 };
    let rhs = &b[lambda].scale(g_mu_nu) + &b[mu].scale(g_lambda_nu);
    &lhs - &rhs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub max_residual: i64,
    pub failing_triples: Vec<(usize, usize, usize)>,
    pub triples_checked: usize,
}

pub fn verify_algebra(rep: &BetaRepresentation) -> AlgebraReport {
    let mut max_residual = 0;
    let mut failing_triples = Vec::new();
    let mut triples_checked = 0;
    for mu in 0..4 {
        for nu in 0..4 {
            for lambda in 0..4 {
                let r = algebra_residual(rep, mu, nu, lambda).max_abs();
                triples_checked += 1;
                if r != 0 {
                    failing_triples.push((mu, nu, lambda));
                }
                max_residual = max_residual.max(r);
            }
        }
    }
    AlgebraReport {
        max_residual,
        failing_triples,
        triples_checked,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub anticommute_beta: bool,
    pub anticommute_commutator: bool,
    /// Per-μ result of {C, β^μ} = 0.
    pub beta_per_mu: [bool; 4],
    /// Per-μ result of {C, [P, β^μ]} = 0.
    pub commutator_per_mu: [bool; 4],
    /// Per-μ result of {η⁰η¹, β^μ} = 0 for the planar two-factor form.
    pub planar_beta_per_mu: [bool; 4],
}

pub fn verify_conjugation(rep: &BetaRepresentation) -> ConjugationReport {
    let c = &rep.conjugator;
    let planar = rep.planar_conjugator();
    let mut beta_per_mu = [false; 4];
    let mut commutator_per_mu = [false; 4];
    let mut planar_beta_per_mu = [false; 4];
    for mu in 0..4 {
        beta_per_mu[mu] = c.anticommutator(&rep.beta[mu]).is_zero();
        commutator_per_mu[mu] = c.anticommutator(&rep.nonminimal_vertex(mu)).is_zero();
        planar_beta_per_mu[mu] = planar.anticommutator(&rep.beta[mu]).is_zero();
    }
    ConjugationReport {
        anticommute_beta: beta_per_mu.iter().all(|&b| b),
        anticommute_commutator: commutator_per_mu.iter().all(|&b| b),
        beta_per_mu,
        commutator_per_mu,
        planar_beta_per_mu,
    }
}

/// P² = P, P = Pᵀ (entries are real) and P has the expected diagonal form.
pub fn projector_ok(rep: &BetaRepresentation) -> bool {
    let p = &rep.projector;
    &(p * p) == p
        && &p.transpose() == p
        && *p == IntMatrix::from_diag(&projector_diagonal(rep.spin))
}
