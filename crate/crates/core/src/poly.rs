//! Real polynomials and a largest-real-root finder that cannot skip a root:
//! roots are isolated between consecutive critical points (found
//! recursively from the derivative), where the polynomial is monotone.

/// Polynomial with coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// Absolute bisection tolerance for roots.
pub const ROOT_TOL: f64 = 1e-10;

impl Polynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    /// Sum of `c·r^e` terms; exponents may repeat.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut coeffs = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0.0);
            }
            coeffs[e] += c;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Rounding-error bound for [`eval`](Self::eval) at `x`.
    pub fn eval_noise(&self, x: f64) -> f64 {
        let ax = x.abs();
        let mag = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * ax + c.abs());
        64.0 * f64::EPSILON * mag * (self.coeffs.len() as f64)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * e as f64)
                .collect(),
        )
    }

    /// Cauchy bound: every real root lies in `[-B, B]`.
    pub fn cauchy_bound(&self) -> f64 {
        let lead = self.leading().abs();
        1.0 + self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0, f64::max)
    }

    /// Real roots in ascending order, isolated between critical points and
    /// refined by bisection to [`ROOT_TOL`]. Critical points where the value
    /// is indistinguishable from zero are reported as (even-multiplicity)
    /// roots. A constant polynomial has no roots.
    pub fn real_roots(&self) -> Vec<f64> {
        match self.degree() {
            0 => Vec::new(),
            1 => vec![-self.coeffs[0] / self.coeffs[1]],
            _ => {
                let bound = self.cauchy_bound();
                let mut points = vec![-bound];
                points.extend(
                    self.derivative()
                        .real_roots()
                        .into_iter()
                        .filter(|c| c.abs() < bound),
                );
                points.push(bound);
                let mut roots = Vec::new();
                for (idx, w) in points.windows(2).enumerate() {
                    let (a, b) = (w[0], w[1]);
                    // a monotone piece starting at a zero-valued critical
                    // point has no other root
                    let candidate = if idx > 0 && self.eval(a).abs() <= self.eval_noise(a) {
                        Some(a)
                    } else {
                        self.bisect(a, b)
                    };
                    if let Some(r) = candidate {
                        if roots.last().is_none_or(|&last| r > last + ROOT_TOL) {
                            roots.push(r);
                        }
                    }
                }
                roots
            }
        }
    }

    /// Largest real root, if any.
    pub fn largest_real_root(&self) -> Option<f64> {
        self.real_roots().last().copied()
    }

    /// Root of a polynomial that is monotone on `[a, b]`, if the endpoint
    /// values differ in sign.
    fn bisect(&self, mut a: f64, mut b: f64) -> Option<f64> {
        let mut fa = self.eval(a);
        let fb = self.eval(b);
        if fa == 0.0 {
            return Some(a);
        }
        if fb == 0.0 {
            return Some(b);
        }
        if fa.signum() == fb.signum() {
            return None;
        }
        for _ in 0..200 {
            if b - a <= ROOT_TOL * 0.5 {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return Some(mid);
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        Some(0.5 * (a + b))
    }
}
