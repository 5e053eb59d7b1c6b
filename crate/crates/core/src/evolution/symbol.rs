use num::complex::Complex64;

use super::EvolutionError;
use crate::stable_dist::StableIndex;

/// The evolution operator `∂t F = S(∂x) F`, named by its symbol `S(ik)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SymbolSpec {
    /// `S = 1 - √(1 - 2ik)`.
    SqrtDrift,
    /// `S = 1 - √(1 + k²)`.
    RelHeat,
    /// `S = 1 - √(1 + αk² - iβk)`.
    GenAb { alpha: f64, beta: f64 },
    /// `S = 1 - (1 - (ik)^μ)^{l/k}` on the principal branch.
    GenLk { idx: StableIndex, mu: u32 },
}

impl SymbolSpec {
    pub fn validate(&self) -> Result<(), EvolutionError> {
        match *self {
            Self::GenAb { alpha, beta } if !(alpha >= 0.0) || !beta.is_finite() || !alpha.is_finite() => {
                Err(EvolutionError::Domain(format!("need alpha >= 0 and finite beta, got alpha={alpha}, beta={beta}")))
            }
            Self::GenLk { mu: 0, .. } => Err(EvolutionError::Domain("mu must be positive".into())),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SqrtDrift => "sqrt_drift",
            Self::RelHeat => "rel_heat",
            Self::GenAb { .. } => "gen_ab",
            Self::GenLk { .. } => "gen_lk",
        }
    }

    /// `S(ik)`. Fails when the base of the fractional power lies on the
    /// negative real axis, where the principal branch is discontinuous.
    pub fn eval(&self, k: f64) -> Result<Complex64, EvolutionError> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match *self {
            Self::SqrtDrift => one - Complex64::new(1.0, -2.0 * k).sqrt(),
            Self::RelHeat => one - (1.0 + k * k).sqrt(),
            Self::GenAb { alpha, beta } => one - Complex64::new(1.0 + alpha * k * k, -beta * k).sqrt(),
            Self::GenLk { idx, mu } => {
                let w = one - ik_power(k, mu);
                if w.im == 0.0 && w.re < 0.0 {
                    return Err(EvolutionError::BranchCut { k });
                }
                one - w.powf(idx.alpha())
            }
        })
    }
}

/// `(ik)^μ` with the power of `i` taken exactly.
fn ik_power(k: f64, mu: u32) -> Complex64 {
    let m = k.powi(mu as i32);
    match mu % 4 {
        0 => Complex64::new(m, 0.0),
        1 => Complex64::new(0.0, m),
        2 => Complex64::new(-m, 0.0),
        _ => Complex64::new(0.0, -m),
    }
}
