//! Fixed-step RK4 integration of the geodesic equations.
//!
//! The state is `(α, β, γ, x, y, z)` with
//!
//! ```text
//! α' = −2γβ   β' = 2γα   γ' = 0
//! x' = α      y' = β     z' = γ − αy + βx
//! ```
//!
//! This works directly from the connection, independently of the closed form
//! in [`crate::geodesic`], and is used to cross-check it.

use crate::error::{ensure, HeisError, Result};
use crate::geodesic::{GeodesicSample, GeodesicSpec};
use crate::group::HeisPoint;
use crate::metric::FrameVector;

pub type State = [f64; 6];

pub fn geodesic_rhs(s: &State) -> State {
    let [a, b, g, x, y, _] = *s;
    [-2.0 * g * b, 2.0 * g * a, 0.0, a, b, g - a * y + b * x]
}

pub fn rk4_step(s: &State, h: f64) -> State {
    let axpy = |k: &State, f: f64| -> State {
        let mut out = *s;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += f * ki;
        }
        out
    };
    let k1 = geodesic_rhs(s);
    let k2 = geodesic_rhs(&axpy(&k1, h / 2.0));
    let k3 = geodesic_rhs(&axpy(&k2, h / 2.0));
    let k4 = geodesic_rhs(&axpy(&k3, h));
    let mut out = *s;
    for i in 0..6 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn to_sample(s: f64, st: &State) -> GeodesicSample {
    GeodesicSample::new(
        s,
        HeisPoint::new(st[3], st[4], st[5]),
        FrameVector::new(st[0], st[1], st[2]),
    )
}

/// Integrates from `spec.base` over `[0, s_max]` in `n_steps` equal steps and
/// returns all `n_steps + 1` samples.
pub fn integrate_geodesic(spec: &GeodesicSpec, s_max: f64, n_steps: usize) -> Result<Vec<GeodesicSample>> {
    ensure(n_steps >= 1, || "n_steps must be at least 1".into())?;
    ensure(s_max > 0.0 && s_max.is_finite(), || {
        format!("s_max must be positive and finite, got {s_max}")
    })?;
    let v = spec.initial_velocity();
    let b = spec.base();
    let mut state: State = [v.a, v.b, v.c, b.x, b.y, b.z];
    let h = s_max / n_steps as f64;
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(to_sample(0.0, &state));
    for i in 1..=n_steps {
        state = rk4_step(&state, h);
        let s = if i == n_steps { s_max } else { i as f64 * h };
        if state.iter().any(|c| !c.is_finite()) {
            return Err(HeisError::NonFiniteState { s });
        }
        out.push(to_sample(s, &state));
    }
    Ok(out)
}
