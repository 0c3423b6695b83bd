//! Fuzzy numbers used to build quantitative quantifiers.

use std::fmt;

use crate::error::{Error, Result};

/// A membership function on the reals, used either on absolute counts or on
/// proportions in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyNumber {
    /// `T_{a,b,c,d}`. A `None` shoulder stands for `-∞` (left) or `+∞`
    /// (right), so the number stays at 1 on that side.
    Trapezoid {
        a: Option<f64>,
        b: f64,
        c: f64,
        d: Option<f64>,
    },
    /// Quadratic step `S_{α,γ}` rising from 0 at `alpha` to 1 at `gamma`.
    SmoothStep { alpha: f64, gamma: f64 },
    /// 1 for every strictly positive proportion.
    Exists,
    /// 1 only at proportion 1.
    Forall,
    Constant(f64),
    /// Crisp `x ≥ threshold`.
    AtLeast(f64),
    /// Crisp `x ≤ threshold`.
    AtMost(f64),
    /// Piecewise-linear through `(x, y)` knots, flat outside the knot range.
    Sampled(Vec<(f64, f64)>),
}

impl FuzzyNumber {
    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        FuzzyNumber::trapezoid_open(Some(a), b, c, Some(d))
    }

    pub fn trapezoid_open(a: Option<f64>, b: f64, c: f64, d: Option<f64>) -> Result<Self> {
        let all = [a.unwrap_or(b), b, c, d.unwrap_or(c)];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidFuzzyNumber(
                "trapezoid parameters must be finite; use open shoulders for infinities".into(),
            ));
        }
        if !(all[0] <= all[1] && all[1] <= all[2] && all[2] <= all[3]) {
            return Err(Error::InvalidFuzzyNumber(format!(
                "trapezoid needs a <= b <= c <= d, got {all:?}"
            )));
        }
        Ok(FuzzyNumber::Trapezoid { a, b, c, d })
    }

    pub fn smooth_step(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && gamma.is_finite() && alpha < gamma) {
            return Err(Error::InvalidFuzzyNumber(format!(
                "smooth step needs finite alpha < gamma, got ({alpha}, {gamma})"
            )));
        }
        Ok(FuzzyNumber::SmoothStep { alpha, gamma })
    }

    pub fn constant(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidFuzzyNumber(format!(
                "constant {value} is outside [0, 1]"
            )));
        }
        Ok(FuzzyNumber::Constant(value))
    }

    pub fn at_least(threshold: f64) -> Result<Self> {
        check_finite(threshold)?;
        Ok(FuzzyNumber::AtLeast(threshold))
    }

    pub fn at_most(threshold: f64) -> Result<Self> {
        check_finite(threshold)?;
        Ok(FuzzyNumber::AtMost(threshold))
    }

    /// Knots must have strictly increasing `x` and `y` in `[0, 1]`.
    pub fn sampled(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidFuzzyNumber("sampled number needs knots".into()));
        }
        for w in knots.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::InvalidFuzzyNumber(
                    "sampled knots must have strictly increasing x".into(),
                ));
            }
        }
        for &(x, y) in &knots {
            check_finite(x)?;
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidFuzzyNumber(format!(
                    "sampled value {y} is outside [0, 1]"
                )));
            }
        }
        Ok(FuzzyNumber::Sampled(knots))
    }

    /// Evaluates the number, rejecting non-finite input and, for the
    /// existential and universal numbers, input outside `[0, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::DomainViolation { x });
        }
        if matches!(self, FuzzyNumber::Exists | FuzzyNumber::Forall) && !(0.0..=1.0).contains(&x) {
            return Err(Error::DomainViolation { x });
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation for inputs already known to be in the domain.
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            FuzzyNumber::Trapezoid { a, b, c, d } => {
                if let Some(a) = a {
                    if x <= a {
                        return 0.0;
                    }
                }
                if x <= b {
                    return match a {
                        Some(a) => (x - a) / (b - a),
                        None => 1.0,
                    };
                }
                if x <= c {
                    return 1.0;
                }
                match d {
                    None => 1.0,
                    Some(d) if x <= d => 1.0 - (x - c) / (d - c),
                    Some(_) => 0.0,
                }
            }
            FuzzyNumber::SmoothStep { alpha, gamma } => {
                let width = gamma - alpha;
                if x <= alpha {
                    0.0
                } else if x <= (alpha + gamma) / 2.0 {
                    let t = (x - alpha) / width;
                    2.0 * t * t
                } else if x <= gamma {
                    let t = (x - gamma) / width;
                    1.0 - 2.0 * t * t
                } else {
                    1.0
                }
            }
            FuzzyNumber::Exists => indicator(x > 0.0),
            FuzzyNumber::Forall => indicator(x >= 1.0),
            FuzzyNumber::Constant(v) => v,
            FuzzyNumber::AtLeast(t) => indicator(x >= t),
            FuzzyNumber::AtMost(t) => indicator(x <= t),
            FuzzyNumber::Sampled(ref knots) => interpolate(knots, x),
        }
    }

    /// Whether the membership function is continuous on the reals.
    pub fn is_continuous(&self) -> bool {
        match *self {
            FuzzyNumber::Trapezoid { a, b, c, d } => {
                a.is_none_or(|a| a < b) && d.is_none_or(|d| c < d)
            }
            FuzzyNumber::SmoothStep { .. }
            | FuzzyNumber::Constant(_)
            | FuzzyNumber::Sampled(_) => true,
            FuzzyNumber::Exists
            | FuzzyNumber::Forall
            | FuzzyNumber::AtLeast(_)
            | FuzzyNumber::AtMost(_) => false,
        }
    }
}

fn check_finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidFuzzyNumber(format!("parameter {v} is not finite")))
    }
}

#[inline]
fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn interpolate(knots: &[(f64, f64)], x: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if x <= first.0 {
        return first.1;
    }
    if x >= last.0 {
        return last.1;
    }
    let i = knots.partition_point(|&(kx, _)| kx <= x);
    let (x0, y0) = knots[i - 1];
    let (x1, y1) = knots[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

impl fmt::Display for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn shoulder(v: Option<f64>, inf: &str) -> String {
            v.map_or_else(|| inf.to_string(), |v| v.to_string())
        }
        match self {
            FuzzyNumber::Trapezoid { a, b, c, d } => write!(
                f,
                "T[{},{},{},{}]",
                shoulder(*a, "-inf"),
                b,
                c,
                shoulder(*d, "inf")
            ),
            FuzzyNumber::SmoothStep { alpha, gamma } => write!(f, "S[{alpha},{gamma}]"),
            FuzzyNumber::Exists => write!(f, "exists"),
            FuzzyNumber::Forall => write!(f, "forall"),
            FuzzyNumber::Constant(v) => write!(f, "constant({v})"),
            FuzzyNumber::AtLeast(t) => write!(f, "at_least({t})"),
            FuzzyNumber::AtMost(t) => write!(f, "at_most({t})"),
            FuzzyNumber::Sampled(k) => write!(f, "sampled({} knots)", k.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_step_at_sixty_percent() {
        let s = FuzzyNumber::smooth_step(0.5, 0.8).unwrap();
        assert!((s.eval(0.6).unwrap() - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn smooth_step_endpoints_and_midpoint() {
        let s = FuzzyNumber::smooth_step(0.3, 0.6).unwrap();
        assert_eq!(s.value(0.3), 0.0);
        assert_eq!(s.value(0.6), 1.0);
        assert!((s.value(0.45) - 0.5).abs() < 1e-15);
        assert!((s.value(0.5) - 7.0 / 9.0).abs() < 1e-12);
        assert_eq!(s.value(-3.0), 0.0);
        assert_eq!(s.value(3.0), 1.0);
    }

    #[test]
    fn trapezoid_pieces() {
        let t = FuzzyNumber::trapezoid(2.0, 4.0, 6.0, 8.0).unwrap();
        assert_eq!(t.value(5.0), 1.0);
        assert_eq!(t.value(2.0), 0.0);
        assert_eq!(t.value(3.0), 0.5);
        assert_eq!(t.value(7.0), 0.5);
        assert_eq!(t.value(8.0), 0.0);
        assert_eq!(t.value(9.0), 0.0);
    }

    #[test]
    fn open_shoulders() {
        let low = FuzzyNumber::trapezoid_open(None, 0.0, 0.2, Some(0.4)).unwrap();
        assert_eq!(low.value(-5.0), 1.0);
        assert_eq!(low.value(0.0), 1.0);
        assert!((low.value(0.3) - 0.5).abs() < 1e-12);
        assert_eq!(low.value(0.5), 0.0);
        let high = FuzzyNumber::trapezoid_open(Some(0.6), 0.8, 1.0, None).unwrap();
        assert_eq!(high.value(0.5), 0.0);
        assert_eq!(high.value(1.0), 1.0);
        assert_eq!(high.value(7.0), 1.0);
        assert!(low.is_continuous() && high.is_continuous());
    }

    #[test]
    fn invalid_parameters() {
        assert!(FuzzyNumber::trapezoid(1.0, 0.0, 2.0, 3.0).is_err());
        assert!(FuzzyNumber::trapezoid(0.0, 1.0, 2.0, f64::INFINITY).is_err());
        assert!(FuzzyNumber::smooth_step(0.5, 0.5).is_err());
        assert!(FuzzyNumber::constant(1.5).is_err());
        assert!(FuzzyNumber::sampled(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
    }

    #[test]
    fn crisp_steps() {
        assert_eq!(FuzzyNumber::Exists.value(0.0), 0.0);
        assert_eq!(FuzzyNumber::Exists.value(0.01), 1.0);
        assert_eq!(FuzzyNumber::Forall.value(0.99), 0.0);
        assert_eq!(FuzzyNumber::Forall.value(1.0), 1.0);
        assert_eq!(FuzzyNumber::AtLeast(0.8).value(4.0 / 5.0), 1.0);
        assert_eq!(FuzzyNumber::AtLeast(0.8).value(0.6), 0.0);
        assert!(FuzzyNumber::Exists.eval(1.5).is_err());
        assert!(!FuzzyNumber::AtLeast(0.8).is_continuous());
        assert!(!FuzzyNumber::trapezoid(0.5, 0.5, 1.0, 1.0)
            .unwrap()
            .is_continuous());
    }

    #[test]
    fn domain_violation() {
        let s = FuzzyNumber::smooth_step(0.0, 1.0).unwrap();
        assert!(matches!(s.eval(f64::NAN), Err(Error::DomainViolation { .. })));
        assert!(s.eval(f64::INFINITY).is_err());
    }

    #[test]
    fn sampled_interpolates() {
        let n = FuzzyNumber::sampled(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.5)]).unwrap();
        assert_eq!(n.value(0.25), 0.5);
        assert_eq!(n.value(0.75), 0.75);
        assert_eq!(n.value(2.0), 0.5);
        assert_eq!(n.value(-1.0), 0.0);
    }
}
