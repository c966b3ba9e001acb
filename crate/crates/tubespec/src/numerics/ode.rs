//! Fixed-step classical Runge-Kutta integration.

use super::NumericsError;

/// Time points and the state recorded at each of them.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory is never empty")
    }
}

/// One classical fourth-order Runge-Kutta step of size `h` at time `t`.
/// `f(t, y, dy)` writes the derivative of `y` into `dy`.
pub fn rk4_step<F>(f: &F, t: f64, y: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(f64, &[f64], &mut [f64]) + ?Sized,
{
    let n = y.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    f(t, y, &mut k1);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    f(t + 0.5 * h, &tmp, &mut k2);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    f(t + 0.5 * h, &tmp, &mut k3);
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    f(t + h, &tmp, &mut k4);

    (0..n)
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Integrate y' = f(t, y) over `interval` with `steps` uniform RK4 steps,
/// recording the full trajectory. Aborts with the blow-up position if the
/// state stops being finite.
pub fn ode_rk4<F>(
    f: &F,
    y0: &[f64],
    interval: (f64, f64),
    steps: usize,
) -> Result<Trajectory, NumericsError>
where
    F: Fn(f64, &[f64], &mut [f64]) + ?Sized,
{
    if steps < 16 {
        return Err(NumericsError::TooFewSteps(steps));
    }
    let (t0, t1) = interval;
    let h = (t1 - t0) / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(y0.to_vec());
    let mut y = y0.to_vec();
    for s in 0..steps {
        let t = t0 + s as f64 * h;
        y = rk4_step(f, t, &y, h);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::BlowUp { t: t + h });
        }
        times.push(t0 + (s + 1) as f64 * h);
        states.push(y.clone());
    }
    Ok(Trajectory { times, states })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_stays_constant() {
        let traj = ode_rk4(&|_t: f64, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0, &[1.0], (0.0, 1.0), 16).unwrap();
        assert!(traj.states.iter().all(|s| s[0] == 1.0));
    }

    #[test]
    fn exponential_growth_hits_e() {
        let traj = ode_rk4(
            &|_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0],
            &[1.0],
            (0.0, 1.0),
            1000,
        )
        .unwrap();
        assert!((traj.last()[0] - std::f64::consts::E).abs() < 1e-8);
    }

    #[test]
    fn riccati_scalar_closed_form() {
        // y' = -y^2, y(0) = 1 has y(t) = 1/(1+t)
        let traj = ode_rk4(
            &|_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = -y[0] * y[0],
            &[1.0],
            (0.0, 1.0),
            1000,
        )
        .unwrap();
        assert!((traj.last()[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn blow_up_reports_position() {
        // y' = y^2, y(0)=1 blows up at t = 1
        let res = ode_rk4(
            &|_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0] * y[0],
            &[1.0],
            (0.0, 2.0),
            64,
        );
        match res {
            Err(NumericsError::BlowUp { t }) => assert!(t > 0.9 && t < 1.5),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn too_few_steps_rejected() {
        assert!(ode_rk4(&|_t: f64, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0, &[0.0], (0.0, 1.0), 8).is_err());
    }
}
