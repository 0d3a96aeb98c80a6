//! Beam-splitter model of decoherence in independent per-mode Gaussian reservoirs.
//!
//! A system mode coupled at rate `γ` for time `τ` ends up as the mixture
//! `t²·V_s + r²·(R_a ⊕ R_b)` with `r = √(1 − e^{−γτ})` and `t = √(1 − r²)`.
//! Both modes share one coupling rate, so both see the same `r`.

use crate::error::{nonnegative, Error, Result};
use crate::gaussian::{
    squeezed_thermal_variance, tmss_variance, EnvironmentModeSpec, TwoModeSqueezedSpec,
    VarianceMatrix,
};

/// Normalised dimensionless interaction time `r ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ChannelTime {
    r: f64,
}

impl ChannelTime {
    pub fn new(r: f64) -> Result<Self> {
        let r = nonnegative("r", r)?;
        if r > 1.0 {
            return Err(Error::OutOfRange {
                name: "r",
                value: r,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self { r })
    }

    /// Time given by `r² ∈ [0, 1]`.
    pub fn from_r_squared(r2: f64) -> Result<Self> {
        let r2 = nonnegative("r^2", r2)?;
        if r2 > 1.0 {
            return Err(Error::OutOfRange {
                name: "r^2",
                value: r2,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self { r: r2.sqrt() })
    }

    /// Infinite-time limit, where the reservoir has replaced the system.
    pub fn thermalized() -> Self {
        Self { r: 1.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_squared(&self) -> f64 {
        self.r * self.r
    }

    /// `t² = 1 − r²`
    pub fn t_squared(&self) -> f64 {
        1.0 - self.r * self.r
    }

    pub fn t(&self) -> f64 {
        self.t_squared().sqrt()
    }
}

/// `r = √(1 − exp(−γτ))`.
///
/// `γ = +∞` is accepted as the full-thermalisation limit and yields `r = 1`
/// for any `τ > 0`.
pub fn normalized_time(gamma: f64, tau: f64) -> Result<ChannelTime> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(if gamma.is_nan() {
            Error::NonFinite { name: "gamma", value: gamma }
        } else {
            Error::Negative { name: "gamma", value: gamma }
        });
    }
    let tau = nonnegative("tau", tau)?;
    if gamma == 0.0 || tau == 0.0 {
        return Ok(ChannelTime { r: 0.0 });
    }
    // -expm1(-x) = 1 - e^{-x}, accurate for small γτ
    let r2 = -(-gamma * tau).exp_m1();
    Ok(ChannelTime { r: r2.clamp(0.0, 1.0).sqrt() })
}

/// Initial two-mode squeezed state plus the reservoir seen by each mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelScenario {
    pub system: TwoModeSqueezedSpec,
    pub env_a: EnvironmentModeSpec,
    pub env_b: EnvironmentModeSpec,
}

impl ChannelScenario {
    pub fn new(
        system: TwoModeSqueezedSpec,
        env_a: EnvironmentModeSpec,
        env_b: EnvironmentModeSpec,
    ) -> Self {
        Self { system, env_a, env_b }
    }

    /// Both modes decohere into identically prepared reservoirs.
    pub fn symmetric(system: TwoModeSqueezedSpec, env: EnvironmentModeSpec) -> Self {
        Self::new(system, env, env)
    }

    pub fn is_symmetric(&self) -> bool {
        self.env_a == self.env_b
    }

    /// Both reservoirs unexcited and unsqueezed.
    pub fn is_vacuum_environment(&self) -> bool {
        self.env_a.is_vacuum() && self.env_b.is_vacuum()
    }

    /// Checks the asymmetric-squeezing restriction: zero squeezing phases
    /// and equal thermal occupation on both reservoirs.
    pub fn check_restricted(&self) -> Result<()> {
        if self.env_a.phi_e() != 0.0 || self.env_b.phi_e() != 0.0 {
            return Err(Error::Restriction("reservoir squeezing phases must be zero"));
        }
        if self.env_a.n_bar() != self.env_b.n_bar() {
            return Err(Error::Restriction("reservoirs must share the same n_bar"));
        }
        Ok(())
    }

    pub fn initial_variance(&self) -> VarianceMatrix {
        tmss_variance(&self.system)
    }

    /// `R_a ⊕ R_b`
    pub fn environment_variance(&self) -> VarianceMatrix {
        VarianceMatrix::direct_sum(
            &squeezed_thermal_variance(&self.env_a),
            &squeezed_thermal_variance(&self.env_b),
        )
    }
}

/// Variance matrix of the scenario's system after time `time`.
pub fn evolve(scenario: &ChannelScenario, time: ChannelTime) -> VarianceMatrix {
    evolve_from(&scenario.initial_variance(), scenario, time)
}

/// Passes an arbitrary system state `system` through the scenario's reservoirs.
pub fn evolve_from(
    system: &VarianceMatrix,
    scenario: &ChannelScenario,
    time: ChannelTime,
) -> VarianceMatrix {
    system.blend(time.t_squared(), &scenario.environment_variance(), time.r_squared())
}
