//! Double-precision first pass over a candidate's convergents.

use super::Candidate;

/// Convergents simulated per candidate.
pub const PRESCREEN_TERMS: usize = 256;
const GAP_LIMIT: usize = 16;
const RESCALE: f64 = 1e150;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Prescreen {
    /// `b(depth) = 0`: the fraction is finite and its value the convergent
    /// of that depth.
    Terminating {
        depth: usize,
    },
    /// Converged to double precision.
    Fast {
        value: f64,
    },
    /// Still moving but contracting; `value` is extrapolated.
    Slow {
        value: f64,
    },
    Unconverged,
    Undefined,
}

impl Prescreen {
    /// Value and relative tolerance for the table lookup.
    pub fn estimate(&self) -> Option<(f64, f64)> {
        match *self {
            Prescreen::Fast { value } => Some((value, 1e-9)),
            Prescreen::Slow { value } => Some((value, 1e-6)),
            _ => None,
        }
    }

    pub fn converged(&self) -> bool {
        matches!(
            self,
            Prescreen::Terminating { .. } | Prescreen::Fast { .. } | Prescreen::Slow { .. }
        )
    }
}

/// `x(m) = p(m)/q(m)` for `m = 0..=PRESCREEN_TERMS`, NaN where `q(m) = 0`.
fn float_convergents(c: &Candidate) -> Option<Vec<f64>> {
    let (mut p0, mut q0) = (1.0f64, 0.0f64);
    let (mut p1, mut q1) = (c.eval_a(1) as f64, 1.0f64);
    let mut xs = Vec::with_capacity(PRESCREEN_TERMS + 1);
    xs.push(p1);
    let mut gaps = 0;
    for k in 1..=PRESCREEN_TERMS as i64 {
        let a = c.eval_a(k + 1) as f64;
        let b = c.eval_b(k) as f64;
        let p = a * p1 + b * p0;
        let q = a * q1 + b * q0;
        (p0, q0, p1, q1) = (p1, q1, p, q);
        let big = p1.abs().max(q1.abs());
        if big > RESCALE {
            (p0, q0, p1, q1) = (p0 / big, q0 / big, p1 / big, q1 / big);
        }
        if q1 == 0.0 {
            gaps += 1;
            if gaps > GAP_LIMIT {
                return None;
            }
            xs.push(f64::NAN);
        } else {
            xs.push(p1 / q1);
        }
    }
    Some(xs)
}

/// Neville extrapolation to `1/m = 0`.
fn extrapolate(ms: &[f64], xs: &[f64]) -> f64 {
    let mut t = xs.to_vec();
    let n = t.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let (hi, hj) = (1.0 / ms[i], 1.0 / ms[i - j]);
            t[i] = (hj * t[i] - hi * t[i - 1]) / (hj - hi);
        }
    }
    t[n - 1]
}

pub fn prescreen(c: &Candidate) -> Prescreen {
    if let Some(n) = (1..=PRESCREEN_TERMS as i64).find(|&n| c.eval_b(n) == 0) {
        return Prescreen::Terminating { depth: n as usize };
    }
    let Some(xs) = float_convergents(c) else {
        return Prescreen::Undefined;
    };
    let n = PRESCREEN_TERMS;
    let (x, x_same, x_half, x_quarter) = (xs[n], xs[n - 2], xs[n / 2], xs[n / 4]);
    if ![x, x_same, x_half, x_quarter].iter().all(|v| v.is_finite()) {
        return Prescreen::Unconverged;
    }
    let s = x.abs().max(1.0);
    let (d_same, d_far, d_prev) = ((x - x_same).abs(), (x - x_half).abs(), (x_half - x_quarter).abs());
    if d_same <= 1e-12 * s && d_far <= 1e-12 * s {
        return Prescreen::Fast { value: x };
    }
    if d_prev > 0.0 && d_far < 0.6 * d_prev && d_same < d_far {
        let ms: Vec<f64> = (1..=8).map(|i| (32 * i) as f64).collect();
        let pts: Vec<f64> = (1..=8).map(|i| xs[32 * i]).collect();
        if pts.iter().all(|v| v.is_finite()) {
            let value = extrapolate(&ms, &pts);
            if value.is_finite() {
                return Prescreen::Slow { value };
            }
        }
    }
    Prescreen::Unconverged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(a: &[i64], b: &[i64]) -> Candidate {
        Candidate {
            index: 0,
            a: a.to_vec(),
            b: b.to_vec(),
        }
    }

    #[test]
    fn anchors_are_fast() {
        let e = std::f64::consts::E;
        match prescreen(&cand(&[3, 1], &[0, -1])) {
            Prescreen::Fast { value } => assert!((value - e / (e - 2.0)).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let pi = std::f64::consts::PI;
        match prescreen(&cand(&[0, 3], &[0, 1, -2])) {
            Prescreen::Fast { value } => assert!((value - 4.0 / (3.0 * pi - 8.0)).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn terminating_and_divergent() {
        assert_eq!(prescreen(&cand(&[1], &[-3, 1])), Prescreen::Terminating { depth: 3 });
        assert_eq!(prescreen(&cand(&[1], &[-2])), Prescreen::Unconverged);
    }

    #[test]
    fn slow_is_extrapolated() {
        // [(n-1)^2 + n^2 : -n^4] = 6/pi^2 with error of order 1/m
        let six_over_pi2 = 6.0 / std::f64::consts::PI.powi(2);
        match prescreen(&cand(&[1, -2, 2], &[0, 0, 0, 0, -1])) {
            Prescreen::Slow { value } => assert!((value - six_over_pi2).abs() < 1e-7, "{value}"),
            other => panic!("{other:?}"),
        }
    }
}
