//! Built-in unitary families used by the worked examples and sweeps.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{BipartiteDims, ComplexMatrix};

/// Identity on C^n with a real rotation by `t` in the (i, j) plane:
/// U_ii = U_jj = cos t, U_ij = sin t, U_ji = −sin t.
pub fn givens(n: usize, i: usize, j: usize, t: f64) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(n);
    let (s, c) = t.sin_cos();
    u[(i, i)] = Complex64::new(c, 0.0);
    u[(j, j)] = Complex64::new(c, 0.0);
    u[(i, j)] = Complex64::new(s, 0.0);
    u[(j, i)] = Complex64::new(-s, 0.0);
    u
}

pub fn cnot() -> ComplexMatrix {
    Family::GenCnot.unitary(0.0, PI / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// 2⊗2 block rotation diag(R(α), R(β)).
    Rot22,
    /// 2⊗2 controlled operation diag(R(α), reflection(β)); CNOT at (0, π/2).
    GenCnot,
    /// 2⊗3 product of rotations on basis pairs (3,4) by β and (4,5) by α.
    Rot23,
    /// 3⊗3 product of rotations on basis pairs (6,7) by β and (7,8) by α.
    Rot33,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Rot22, Family::GenCnot, Family::Rot23, Family::Rot33];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rot22 => "rot22",
            Family::GenCnot => "gencnot",
            Family::Rot23 => "rot23",
            Family::Rot33 => "rot33",
        }
    }

    pub fn dims(self) -> BipartiteDims {
        let (a, b) = match self {
            Family::Rot22 | Family::GenCnot => (2, 2),
            Family::Rot23 => (2, 3),
            Family::Rot33 => (3, 3),
        };
        BipartiteDims::new(a, b).expect("positive dims")
    }

    pub fn unitary(self, alpha: f64, beta: f64) -> ComplexMatrix {
        match self {
            Family::Rot22 => &givens(4, 0, 1, alpha) * &givens(4, 2, 3, beta),
            Family::GenCnot => {
                let mut u = givens(4, 0, 1, alpha);
                let (s, c) = beta.sin_cos();
                u[(2, 2)] = Complex64::new(c, 0.0);
                u[(2, 3)] = Complex64::new(s, 0.0);
                u[(3, 2)] = Complex64::new(s, 0.0);
                u[(3, 3)] = Complex64::new(-c, 0.0);
                u
            }
            Family::Rot23 => &givens(6, 3, 4, beta) * &givens(6, 4, 5, alpha),
            Family::Rot33 => &givens(9, 6, 7, beta) * &givens(9, 7, 8, alpha),
        }
    }

    pub fn channel(self, alpha: f64, beta: f64) -> Channel {
        Channel::unitary(&self.unitary(alpha, beta), self.dims()).expect("family dims match the unitary")
    }

    /// Known closed-form saturating inputs, where one exists. States are
    /// (cos θ₁|0⟩ + e^{iφ₁} sin θ₁|1⟩) ⊗ (cos θ₂|0⟩ + e^{iφ₂} sin θ₂|1⟩).
    pub fn known_solutions(self) -> Option<&'static str> {
        match self {
            Family::Rot22 => Some("theta_1 = pi/4 + n*pi/2, and theta_2 = m*pi/2 or phi_2 = p*pi (n, m, p integers)"),
            Family::GenCnot => Some(
                "theta_2 = arctan(tan(alpha + beta)/cos(phi_2))/2 and theta_1 = pi/4 + n*pi/2; \
                 CNOT: (|0>+|1>)|0>/sqrt(2)",
            ),
            Family::Rot23 => Some(
                "at alpha = 2pi/3, beta = 0: cos(2 theta_1) = 0 and sin^2(phi) cos^2(theta_2) = 1/3, \
                 e.g. (|0>+|1>)(|0>+sqrt(2)|2>)/sqrt(6)",
            ),
            Family::Rot33 => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two unitaries whose convex mixture separates the joint and convex
/// splits: S₁ at (α, β) = (π/3, π/5) and S₂ at (π/4, π/3).
pub fn mixture_pair(family: Family) -> (Channel, Channel) {
    (family.channel(PI / 3.0, PI / 5.0), family.channel(PI / 4.0, PI / 3.0))
}
