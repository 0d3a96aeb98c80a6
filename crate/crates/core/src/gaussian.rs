//! Zero-mean two-mode Gaussian states, represented by their variance matrices.
//!
//! All matrices use the quadrature ordering `(η_i, η_r, ξ_i, ξ_r)`: imaginary
//! then real part of the displacement argument of mode `a`, followed by the
//! same pair for mode `b`. Units are vacuum-normalised, so the vacuum state
//! has the identity as its variance matrix and every symplectic eigenvalue of
//! a physical state is at least 1.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};

use crate::error::{finite, nonnegative, positive, Error, Result};

/// Slack applied to the uncertainty bound `ν ≥ 1`.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// Symplectic form for one mode in the `(imaginary, real)` ordering.
fn single_mode_form() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Block-diagonal symplectic form `J ⊕ J`.
pub fn symplectic_form() -> Matrix4<f64> {
    let j = single_mode_form();
    let mut omega = Matrix4::zeros();
    omega.fixed_view_mut::<2, 2>(0, 0).copy_from(&j);
    omega.fixed_view_mut::<2, 2>(2, 2).copy_from(&j);
    omega
}

/// 4×4 real symmetric variance matrix of a two-mode Gaussian state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceMatrix(Matrix4<f64>);

impl VarianceMatrix {
    /// Wraps `m` after checking that every entry is finite and that it is
    /// exactly symmetric.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        for value in m.iter() {
            finite("variance matrix entry", *value)?;
        }
        for row in 0..4 {
            for col in (row + 1)..4 {
                if m[(row, col)] != m[(col, row)] {
                    return Err(Error::Asymmetric { row, col });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    /// Caller guarantees symmetry and finiteness.
    pub(crate) fn from_symmetric(m: Matrix4<f64>) -> Self {
        debug_assert!(m == m.transpose());
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// `a ⊕ b`: mode `a` in the upper-left block, mode `b` lower-right, no correlations.
    pub fn direct_sum(a: &SingleModeVariance, b: &SingleModeVariance) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a.matrix());
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(b.matrix());
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, value) in row.iter_mut().enumerate() {
                *value = self.0[(i, j)];
            }
        }
        rows
    }

    /// Local block of mode `a`.
    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Local block of mode `b`.
    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Inter-mode correlation block (upper-right).
    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Affine combination `s·self + e·other`; used by the beam-splitter channel.
    pub(crate) fn blend(&self, s: f64, other: &Self, e: f64) -> Self {
        Self(self.0 * s + other.0 * e)
    }

    /// Squared symplectic spectrum, ascending, each value appearing twice.
    ///
    /// The eigenvalues of `-(ΩV)²` are the squared symplectic eigenvalues.
    /// With `V = LLᵀ` that operator is similar to the symmetric matrix
    /// `Lᵀ Ωᵀ V Ω L`, which a symmetric eigensolver handles stably.
    /// Returns `None` when `V` is not positive definite.
    pub fn squared_symplectic_spectrum(&self) -> Option<[f64; 4]> {
        let chol = self.0.cholesky()?;
        let l = chol.l();
        let omega = symplectic_form();
        let m = l.transpose() * omega.transpose() * self.0 * omega * l;
        let m = (m + m.transpose()) * 0.5;
        let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        Some([ev[0], ev[1], ev[2], ev[3]])
    }

    /// The two symplectic eigenvalues `[ν₋, ν₊]`, or `None` if `V` is not positive definite.
    pub fn symplectic_eigenvalues(&self) -> Option<[f64; 2]> {
        let sq = self.squared_symplectic_spectrum()?;
        let lo = (0.5 * (sq[0] + sq[1])).max(0.0).sqrt();
        let hi = (0.5 * (sq[2] + sq[3])).max(0.0).sqrt();
        Some([lo, hi])
    }

    /// Smallest symplectic eigenvalue, `0.0` when `V` is not positive definite.
    pub fn min_symplectic_eigenvalue(&self) -> f64 {
        self.symplectic_eigenvalues().map_or(0.0, |nu| nu[0])
    }

    pub fn is_physical(&self) -> bool {
        is_physical(self)
    }

    /// Fails with [`Error::Unphysical`] unless the uncertainty bound holds.
    pub fn require_physical(&self) -> Result<()> {
        let min_nu = self.min_symplectic_eigenvalue();
        if min_nu >= 1.0 - PHYSICAL_TOL {
            Ok(())
        } else {
            Err(Error::Unphysical { min_nu })
        }
    }
}

/// 2×2 variance matrix `[[a₋, b], [b, a₊]]` of one squeezed thermal reservoir mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleModeVariance(Matrix2<f64>);

impl SingleModeVariance {
    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn a_minus(&self) -> f64 {
        self.0[(0, 0)]
    }

    pub fn a_plus(&self) -> f64 {
        self.0[(1, 1)]
    }

    pub fn b(&self) -> f64 {
        self.0[(0, 1)]
    }

    pub fn determinant(&self) -> f64 {
        self.a_minus() * self.a_plus() - self.b() * self.b()
    }
}

/// Squeezing of the initial two-mode squeezed vacuum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeSqueezedSpec {
    s_c: f64,
}

impl TwoModeSqueezedSpec {
    pub fn new(s_c: f64) -> Result<Self> {
        Ok(Self {
            s_c: nonnegative("s_c", s_c)?,
        })
    }

    pub fn s_c(&self) -> f64 {
        self.s_c
    }

    /// `μ = cosh 2s_c`
    pub fn mu(&self) -> f64 {
        (2.0 * self.s_c).cosh()
    }

    /// `λ = sinh 2s_c`
    pub fn lambda(&self) -> f64 {
        (2.0 * self.s_c).sinh()
    }
}

/// One squeezed thermal reservoir mode: thermal occupation `n̄` squeezed by
/// `ζ_e = s_e·exp(iφ_e)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvironmentModeSpec {
    n_bar: f64,
    s_e: f64,
    phi_e: f64,
}

impl EnvironmentModeSpec {
    /// `phi_e` is reduced into `[0, 2π)`.
    pub fn new(n_bar: f64, s_e: f64, phi_e: f64) -> Result<Self> {
        let n_bar = nonnegative("n_bar", n_bar)?;
        let s_e = nonnegative("s_e", s_e)?;
        let phi_e = finite("phi_e", phi_e)?.rem_euclid(std::f64::consts::TAU);
        // rem_euclid may round up to exactly TAU for tiny negative inputs
        let phi_e = if phi_e >= std::f64::consts::TAU { 0.0 } else { phi_e };
        Ok(Self { n_bar, s_e, phi_e })
    }

    /// Phase-insensitive thermal bath.
    pub fn thermal(n_bar: f64) -> Result<Self> {
        Self::new(n_bar, 0.0, 0.0)
    }

    pub fn vacuum() -> Self {
        Self {
            n_bar: 0.0,
            s_e: 0.0,
            phi_e: 0.0,
        }
    }

    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }

    pub fn s_e(&self) -> f64 {
        self.s_e
    }

    pub fn phi_e(&self) -> f64 {
        self.phi_e
    }

    /// `ñ = 2n̄ + 1`
    pub fn n_tilde(&self) -> f64 {
        2.0 * self.n_bar + 1.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.n_bar == 0.0 && self.s_e == 0.0
    }
}

/// Two-mode squeezed vacuum: `μ𝟙` on the diagonal blocks, `−λσ_z` off the diagonal.
pub fn tmss_variance(spec: &TwoModeSqueezedSpec) -> VarianceMatrix {
    let mu = spec.mu();
    let lambda = spec.lambda();
    #[rustfmt::skip]
    let m = Matrix4::new(
        mu,      0.0,    -lambda, 0.0,
        0.0,     mu,     0.0,     lambda,
        -lambda, 0.0,    mu,      0.0,
        0.0,     lambda, 0.0,     mu,
    );
    VarianceMatrix::from_symmetric(m)
}

/// Variance matrix of a squeezed thermal state in `(η_i, η_r)`.
pub fn squeezed_thermal_variance(env: &EnvironmentModeSpec) -> SingleModeVariance {
    let nt = env.n_tilde();
    let (ch, sh) = ((2.0 * env.s_e).cosh(), (2.0 * env.s_e).sinh());
    let a_minus = nt * (ch - env.phi_e.cos() * sh);
    let a_plus = nt * (ch + env.phi_e.cos() * sh);
    let b = nt * env.phi_e.sin() * sh;
    SingleModeVariance(Matrix2::new(a_minus, b, b, a_plus))
}

/// Mean photon number `n̄ cosh 2s_e + sinh² s_e` of a reservoir mode.
pub fn mean_excitation(env: &EnvironmentModeSpec) -> f64 {
    env.n_bar * (2.0 * env.s_e).cosh() + env.s_e.sinh().powi(2)
}

/// Weyl characteristic function `exp(−½ zᵀVz)` of a zero-mean Gaussian state.
pub fn eval_characteristic(v: &VarianceMatrix, z: [f64; 4]) -> f64 {
    let z = nalgebra::Vector4::from(z);
    (-0.5 * z.dot(&(v.matrix() * z))).exp()
}

/// True iff both symplectic eigenvalues are at least `1 − PHYSICAL_TOL`.
pub fn is_physical(v: &VarianceMatrix) -> bool {
    v.require_physical().is_ok()
}

/// Symmetric block parameters after local squeezing has equalised the diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricBlockForm {
    pub n: f64,
    pub c: f64,
    pub c_prime: f64,
}

impl SymmetricBlockForm {
    /// `(|c| + |c′|)/2`
    pub fn c_mean(&self) -> f64 {
        0.5 * (self.c.abs() + self.c_prime.abs())
    }

    /// `(|c| − |c′|)/2`
    pub fn c_diff(&self) -> f64 {
        0.5 * (self.c.abs() - self.c_prime.abs())
    }

    /// `(n − |c|)(n − |c′|)`; the state is separable iff this is at least 1.
    pub fn lemma_product(&self) -> f64 {
        (self.n - self.c.abs()) * (self.n - self.c_prime.abs())
    }

    /// Simon's functional written as the product of its two factors in `c_m`, `c_d`.
    pub fn factored_simon(&self) -> f64 {
        let (n, cm, cd) = (self.n, self.c_mean(), self.c_diff());
        let k = 1.0 + cd * cd;
        ((n - cm).powi(2) - k) * ((n + cm).powi(2) - k)
    }

    /// The reduced matrix, with `c` on the `η_i`/`ξ_i` pair and `c′` on `η_r`/`ξ_r`.
    pub fn to_variance(&self) -> Result<VarianceMatrix> {
        let (n, c, cp) = (self.n, self.c, self.c_prime);
        VarianceMatrix::from_rows([
            [n, 0.0, c, 0.0],
            [0.0, n, 0.0, cp],
            [c, 0.0, n, 0.0],
            [0.0, cp, 0.0, n],
        ])
    }
}

/// Local squeezing that maps the diagonal `(n1, n2)` form onto equal diagonals.
///
/// `n = √(n1·n2)`, `c = c1·√(n2/n1)`, `c′ = c2·√(n1/n2)`. The uncertainty
/// principle requires `n ≥ 1`.
pub fn reduce_to_symmetric(n1: f64, n2: f64, c1: f64, c2: f64) -> Result<SymmetricBlockForm> {
    let n1 = positive("n1", n1)?;
    let n2 = positive("n2", n2)?;
    finite("c1", c1)?;
    finite("c2", c2)?;
    let n = (n1 * n2).sqrt();
    if n < 1.0 - PHYSICAL_TOL {
        return Err(Error::Unphysical { min_nu: n });
    }
    Ok(SymmetricBlockForm {
        n,
        c: c1 * (n2 / n1).sqrt(),
        c_prime: c2 * (n1 / n2).sqrt(),
    })
}
