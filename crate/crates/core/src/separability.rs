//! Separability of two-mode Gaussian states.
//!
//! The main test is Simon's functional
//!
//! ```text
//! δ = (det A − 1)(det B − 1) + (|det C| − 1)² − 1 − Tr[A σ_y C σ_y B σ_y Cᵀ σ_y]
//! ```
//!
//! for `V = [[A, C], [Cᵀ, B]]`: the state is separable iff `δ ≥ 0`. The
//! module also carries the closed forms that hold for the diagonal-block
//! matrices produced by zero-phase reservoirs, and an independent check
//! through the symplectic spectrum of the partially transposed matrix.

use nalgebra::{Matrix2, Matrix4};

use crate::decoherence::{evolve, ChannelScenario, ChannelTime};
use crate::error::{finite, positive, Error, Result};
use crate::gaussian::{EnvironmentModeSpec, TwoModeSqueezedSpec, VarianceMatrix};

/// `|δ|` below this is treated as the separable boundary.
pub const SEPARABILITY_TOL: f64 = 1e-9;

/// Bisection stops once `|δ|` drops below this...
pub const ROOT_DELTA_TOL: f64 = 1e-10;
/// ...or the bracket on `r²` is narrower than this.
pub const ROOT_WIDTH_TOL: f64 = 1e-12;

/// `σ_y M σ_y` for real `M`, which is the adjugate of `M`.
fn sigma_y_conjugate(m: &Matrix2<f64>) -> Matrix2<f64> {
    Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

fn simon_functional(v: &VarianceMatrix) -> f64 {
    let (a, b, c) = (v.block_a(), v.block_b(), v.block_c());
    let trace = (a * sigma_y_conjugate(&c) * b * sigma_y_conjugate(&c.transpose())).trace();
    (a.determinant() - 1.0) * (b.determinant() - 1.0) + (c.determinant().abs() - 1.0).powi(2)
        - 1.0
        - trace
}

/// Simon's functional `δ`; rejects unphysical matrices.
pub fn simon_delta(v: &VarianceMatrix) -> Result<f64> {
    v.require_physical()?;
    Ok(simon_functional(v))
}

/// Smallest symplectic eigenvalue of the partially transposed matrix `ΛVΛ`,
/// where `Λ` flips the sign of `ξ_r`. Values below 1 signal entanglement.
///
/// Uses the two-mode invariants only: `ν̃²` solves `x² − Δ̃x + det V = 0` with
/// `Δ̃ = det A + det B + 2 det C` taken on `ΛVΛ`.
pub fn ppt_oracle(v: &VarianceMatrix) -> Result<f64> {
    v.require_physical()?;
    let flip = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    let pt = flip * v.matrix() * flip;
    let a = pt.fixed_view::<2, 2>(0, 0).determinant();
    let b = pt.fixed_view::<2, 2>(2, 2).determinant();
    let c = pt.fixed_view::<2, 2>(0, 2).determinant();
    let invariant = a + b + 2.0 * c;
    let det = pt.determinant();
    let disc = (invariant * invariant - 4.0 * det).max(0.0);
    // smaller root, in the cancellation-free form det / larger root
    let larger = 0.5 * (invariant + disc.sqrt());
    let smaller = if larger > 0.0 { det / larger } else { 0.0 };
    Ok(smaller.max(0.0).sqrt())
}

/// Outcome of the full separability check on one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparabilityVerdict {
    pub delta: f64,
    pub separable: bool,
    pub oracle_nu: f64,
}

pub fn verdict(v: &VarianceMatrix) -> Result<SeparabilityVerdict> {
    let delta = simon_delta(v)?;
    Ok(SeparabilityVerdict {
        delta,
        separable: delta >= -SEPARABILITY_TOL,
        oracle_nu: ppt_oracle(v)?,
    })
}

/// `δ` for the diagonal-block matrix with local diagonals `(n1, n2)`, `(m1, m2)`
/// and correlations `c1`, `c2` of equal magnitude.
pub fn block_delta(n1: f64, n2: f64, m1: f64, m2: f64, c1: f64, c2: f64) -> Result<f64> {
    for (name, x) in [("n1", n1), ("n2", n2), ("m1", m1), ("m2", m2), ("c1", c1), ("c2", c2)] {
        finite(name, x)?;
    }
    let (a1, a2) = (c1.abs(), c2.abs());
    if (a1 - a2).abs() > 1e-9 * a1.max(a2).max(1e-300) {
        return Err(Error::UnequalCorrelations { c1: a1, c2: a2 });
    }
    let csq = a1 * a2;
    Ok((csq - 1.0).powi(2) - csq * (n1 * m1 + n2 * m2) + (n1 * n2 - 1.0) * (m1 * m2 - 1.0) - 1.0)
}

/// The two sides of Simon's inequality for identical reservoirs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimonSides {
    /// Phase-independent side.
    pub lhs: f64,
    /// Phase-dependent trace side.
    pub rhs: f64,
}

impl SimonSides {
    pub fn delta(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Closed-form sides of Simon's inequality when both modes see `env`.
pub fn symmetric_lhs_rhs(
    spec: &TwoModeSqueezedSpec,
    env: &EnvironmentModeSpec,
    time: ChannelTime,
) -> SimonSides {
    let (mu, lam) = (spec.mu(), spec.lambda());
    let nt = env.n_tilde();
    let (r2, t2) = (time.r_squared(), time.t_squared());
    let (t4, r4) = (t2 * t2, r2 * r2);
    let ch = (2.0 * env.s_e()).cosh();
    let sh = (2.0 * env.s_e()).sinh();
    let lam2 = lam * lam;

    let det_a = t4 * mu * mu + r4 * nt * nt + 2.0 * r2 * t2 * mu * nt * ch;
    let lhs = (det_a - 1.0).powi(2) + (lam2 * t4 - 1.0).powi(2) - 1.0;
    let rhs = 2.0 * lam2 * mu * t4 * t2 * (mu * t2 + 2.0 * nt * r2 * ch)
        + 2.0 * lam2 * t4 * r4 * nt * nt * (ch * ch + (2.0 * env.phi_e()).cos() * sh * sh);
    SimonSides { lhs, rhs }
}

/// Separable iff `(n1 − |c1|)(n2 − |c2|) ≥ 1` for matrices with `A = B = diag(n1, n2)`
/// and `C = diag(c1, c2)`.
pub fn lemma1_separable(n1: f64, n2: f64, c1: f64, c2: f64) -> Result<bool> {
    positive("n1", n1)?;
    positive("n2", n2)?;
    finite("c1", c1)?;
    finite("c2", c2)?;
    Ok((n1 - c1.abs()) * (n2 - c2.abs()) >= 1.0 - SEPARABILITY_TOL)
}

/// `(t²e^{−2s_c} + r²ñe^{2s_e})(t²e^{−2s_c} + r²ñe^{−2s_e})` for identical
/// zero-phase reservoirs.
pub fn symmetric_closed_form_product(
    spec: &TwoModeSqueezedSpec,
    env: &EnvironmentModeSpec,
    time: ChannelTime,
) -> Result<f64> {
    if env.phi_e() != 0.0 {
        return Err(Error::Restriction("closed form needs zero reservoir phase"));
    }
    let (r2, t2) = (time.r_squared(), time.t_squared());
    let base = t2 * (-2.0 * spec.s_c()).exp();
    let nt = env.n_tilde();
    Ok((base + r2 * nt * (2.0 * env.s_e()).exp()) * (base + r2 * nt * (-2.0 * env.s_e()).exp()))
}

pub fn symmetric_closed_form_separable(
    spec: &TwoModeSqueezedSpec,
    env: &EnvironmentModeSpec,
    time: ChannelTime,
) -> Result<bool> {
    Ok(symmetric_closed_form_product(spec, env, time)? >= 1.0 - SEPARABILITY_TOL)
}

/// `E(r²) = (μñ − 1)(ñ − μ)r⁴ + (μ²ñ − 2μ + ñ)r²`
pub fn e_factor(r2: f64, mu: f64, n_tilde: f64) -> f64 {
    (mu * n_tilde - 1.0) * (n_tilde - mu) * r2 * r2
        + (mu * mu * n_tilde - 2.0 * mu + n_tilde) * r2
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonotonicityGap {
    /// `δ(s_e1, s_e2 = 0) − δ(s_e1 = s_e2 = 0)`
    pub gap: f64,
    /// The sign-determining factor `E`.
    pub e: f64,
}

/// How much squeezing the first reservoir mode raises `δ` over the thermal case.
///
/// Requires zero phases, equal `n̄`, and an unsqueezed second reservoir.
pub fn monotonicity_gap(
    spec: &TwoModeSqueezedSpec,
    env_a: &EnvironmentModeSpec,
    env_b: &EnvironmentModeSpec,
    time: ChannelTime,
) -> Result<MonotonicityGap> {
    ChannelScenario::new(*spec, *env_a, *env_b).check_restricted()?;
    if env_b.s_e() != 0.0 {
        return Err(Error::Restriction("second reservoir must be unsqueezed"));
    }
    let nt = env_a.n_tilde();
    let (r2, t2) = (time.r_squared(), time.t_squared());
    let e = e_factor(r2, spec.mu(), nt);
    let gap = 4.0 * r2 * t2 * nt * env_a.s_e().sinh().powi(2) * e;
    Ok(MonotonicityGap { gap, e })
}

/// Entanglement lifetime of a scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lifetime {
    /// The state turns separable at normalised time `r`.
    Separates(f64),
    /// Entangled for every `r < 1`.
    NeverSeparable,
    /// Separable already at `r = 0`.
    InitiallySeparable,
}

impl Lifetime {
    pub fn r(&self) -> Option<f64> {
        match self {
            Lifetime::Separates(r) => Some(*r),
            _ => None,
        }
    }
}

/// `δ` of the scenario's evolved state at `r²`.
pub fn delta_at(scenario: &ChannelScenario, r2: f64) -> Result<f64> {
    simon_delta(&evolve(scenario, ChannelTime::from_r_squared(r2)?))
}

/// Locates the normalised time at which `δ` crosses zero, by bisection on `r² ∈ [0, 1]`.
pub fn separation_time(scenario: &ChannelScenario) -> Result<Lifetime> {
    let d0 = delta_at(scenario, 0.0)?;
    if d0 >= -SEPARABILITY_TOL {
        return Ok(Lifetime::InitiallySeparable);
    }
    // a pure-loss channel only reaches δ = 0 at r = 1
    if scenario.is_vacuum_environment() {
        return Ok(Lifetime::NeverSeparable);
    }
    if delta_at(scenario, 1.0)? < 0.0 {
        return Ok(Lifetime::NeverSeparable);
    }

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let root = loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo < ROOT_WIDTH_TOL {
            break mid;
        }
        let d = delta_at(scenario, mid)?;
        if d.abs() < ROOT_DELTA_TOL {
            break mid;
        }
        if d < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    };
    if root > 1.0 - SEPARABILITY_TOL {
        return Ok(Lifetime::NeverSeparable);
    }
    Ok(Lifetime::Separates(root.sqrt()))
}
