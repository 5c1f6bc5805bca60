//! The nine-function link battery used by the index-coefficient experiments,
//! plus linear links for oracle checks.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkFn {
    /// One of the nine fixed nonlinear links, indexed 1..=9.
    Battery { index: u8 },
    /// f(u) = slope * u; the mean link derivative is then the slope itself.
    Linear { slope: f64 },
}

impl LinkFn {
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            LinkFn::Linear { slope } => slope * u,
            LinkFn::Battery { index } => match index {
                1 => 4.0 * u * (5.0 * u).cos().powi(2),
                2 => 4.0 * u * (5.0 * u).sin().powi(2),
                3 => -5.0 * u / (2.0 + u.sin()),
                4 => 4.0 * u + u.exp() / (1.0 + u.exp()),
                5 => 2.0 * u + (-u * u / 7.0).exp(),
                6 => -u + 5.0 * (8.0 * u).cos(),
                7 => u + 4.0 * (7.0 * u).sin(),
                8 => -u + (1.5 * u * u).cos(),
                9 => -2.0 * u + 4.0 * (0.5 * u * u).sin(),
                _ => panic!("battery link index must be 1..=9, got {index}"),
            },
        }
    }

    /// The full battery f1..f9 in order.
    pub fn battery() -> Vec<LinkFn> {
        (1..=9).map(|index| LinkFn::Battery { index }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn battery_spot_values() {
        let f = LinkFn::battery();
        // f4(0) = 0 + e^0 / (1 + e^0) = 1/2.
        assert_abs_diff_eq!(f[3].eval(0.0), 0.5, epsilon = 1e-15);
        // f1(0) = 0, f2(0) = 0, f5(0) = 1, f6(0) = 5.
        assert_eq!(f[0].eval(0.0), 0.0);
        assert_eq!(f[1].eval(0.0), 0.0);
        assert_abs_diff_eq!(f[4].eval(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f[5].eval(0.0), 5.0, epsilon = 1e-15);
        // f1 + f2 = 4x (cos^2 + sin^2 = 1).
        let x = 0.73;
        assert_abs_diff_eq!(f[0].eval(x) + f[1].eval(x), 4.0 * x, epsilon = 1e-12);
        // f3(pi/2) for a hand value: -5 (pi/2) / (2 + 1).
        let u = std::f64::consts::FRAC_PI_2;
        assert_abs_diff_eq!(f[2].eval(u), -5.0 * u / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_link() {
        let f = LinkFn::Linear { slope: -1.5 };
        assert_eq!(f.eval(2.0), -3.0);
    }
}
