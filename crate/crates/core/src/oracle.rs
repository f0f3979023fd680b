//! Fixed-step RK4 integration of the raw trajectory ODEs, used as an
//! independent check on the closed forms.

use crate::error::{Error, Result};
use crate::frenet::C3Curve;
use crate::magnetic::ClosedFormCurve;

pub const DEFAULT_STEP: f64 = 1e-3;

/// Upper bound on the number of steps of a single integration.
pub const MAX_STEPS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub step: f64,
    pub s_start: f64,
    pub s_end: f64,
}

impl IntegratorConfig {
    pub fn new(s_start: f64, s_end: f64) -> Self {
        Self { step: DEFAULT_STEP, s_start, s_end }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidConfig(format!("step must be positive, got {}", self.step)));
        }
        if !(self.s_start.is_finite() && self.s_end.is_finite() && self.s_end > self.s_start) {
            return Err(Error::InvalidConfig(format!(
                "interval [{}, {}] is empty or non-finite",
                self.s_start, self.s_end
            )));
        }
        if (self.s_end - self.s_start) / self.step > MAX_STEPS {
            return Err(Error::InvalidConfig(format!(
                "{} steps requested, limit is {MAX_STEPS:e}",
                (self.s_end - self.s_start) / self.step
            )));
        }
        Ok(())
    }

    /// Grid `s_start + k·step`, closed by `s_end`; the last step is shortened
    /// when the interval is not a whole number of steps.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.s_end - self.s_start;
        let ratio = span / self.step;
        // snap ratios like 3141.9999999999995 instead of leaving a sliver step
        let whole = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) {
            ratio.round() as usize
        } else {
            ratio.floor() as usize + 1
        };
        let mut grid: Vec<f64> = (0..whole).map(|k| self.s_start + k as f64 * self.step).collect();
        grid.push(self.s_end);
        grid
    }
}

/// Trajectory sampled on a grid. `states[k]` belongs to `grid[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<const N: usize> {
    pub grid: Vec<f64>,
    pub states: Vec<[f64; N]>,
}

impl<const N: usize> SampledCurve<N> {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[f64; N])> {
        Some((*self.grid.last()?, self.states.last()?))
    }
}

fn axpy<const N: usize>(x: &[f64; N], a: f64, d: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| x[i] + a * d[i])
}

/// Classic fourth-order Runge-Kutta with a fixed step.
///
/// State updates use compensated summation so that rounding does not swamp
/// the O(h⁴) truncation error over long runs.
pub fn integrate<const N: usize, F>(rhs: F, initial: [f64; N], cfg: &IntegratorConfig) -> Result<SampledCurve<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    cfg.validate()?;
    if initial.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteState { s: cfg.s_start });
    }
    let grid = cfg.grid();
    let mut states = Vec::with_capacity(grid.len());
    let mut y = initial;
    let mut carry = [0.0; N];
    states.push(y);

    for pair in grid.windows(2) {
        let (s, h) = (pair[0], pair[1] - pair[0]);
        let k1 = rhs(s, &y);
        let k2 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k1));
        let k3 = rhs(s + 0.5 * h, &axpy(&y, 0.5 * h, &k2));
        let k4 = rhs(s + h, &axpy(&y, h, &k3));
        for i in 0..N {
            let inc = h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) - carry[i];
            let next = y[i] + inc;
            carry[i] = (next - y[i]) - inc;
            y[i] = next;
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { s: pair[1] });
        }
        states.push(y);
    }
    Ok(SampledCurve { grid, states })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Components {
    /// `y` and `z` only.
    #[default]
    Position,
    /// Every component of the sampled state.
    FullState,
}

/// Chebyshev distance between a sampled trajectory and a closed form.
///
/// Sampled states use the layout `(y, z, ẏ, ż[, ÿ, z̈])`.
pub fn max_deviation<const N: usize>(
    closed: &ClosedFormCurve,
    sampled: &SampledCurve<N>,
    components: Components,
) -> Result<f64> {
    assert!(N <= 6, "state dimension {N} exceeds the closed-form state");
    let (min, max) = closed.domain();
    let count = match components {
        Components::Position => N.min(2),
        Components::FullState => N,
    };
    let mut worst: f64 = 0.0;
    for (&s, state) in sampled.grid.iter().zip(&sampled.states) {
        if !(s >= min && s <= max) {
            return Err(Error::DomainMismatch { s, min, max });
        }
        let exact = closed.state(s);
        for i in 0..count {
            worst = worst.max((state[i] - exact[i]).abs());
        }
    }
    Ok(worst)
}
