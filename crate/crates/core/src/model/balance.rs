use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// How the per-district load window [Φ_l, Φ_u] is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BalanceSpec<T = Rational> {
    /// Bounds given directly.
    Explicit { lower: T, upper: T },
    /// ((1-τ)·b̄, (1+τ)·b̄) with τ ≥ 0.
    Additive { tau: T },
    /// (τ·b̄, b̄/τ) with τ in (0, 1].
    Multiplicative { tau: T },
}

/// A resolved load window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T = Rational> {
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> Bounds<T> {
    pub fn contains(&self, load: T) -> bool {
        self.lower.approx_le(load) && load.approx_le(self.upper)
    }

    pub fn is_integral(&self) -> bool {
        self.lower.is_integral() && self.upper.is_integral()
    }
}

impl<T: Scalar> BalanceSpec<T> {
    pub fn explicit(lower: T, upper: T) -> Self {
        BalanceSpec::Explicit { lower, upper }
    }

    pub fn convert<U: Scalar>(&self) -> BalanceSpec<U> {
        let c = |v: T| U::from_rational(v.to_rational());
        match *self {
            BalanceSpec::Explicit { lower, upper } => {
                BalanceSpec::Explicit { lower: c(lower), upper: c(upper) }
            }
            BalanceSpec::Additive { tau } => BalanceSpec::Additive { tau: c(tau) },
            BalanceSpec::Multiplicative { tau } => BalanceSpec::Multiplicative { tau: c(tau) },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BalanceSpec::Explicit { lower, upper } => {
                if lower < T::zero() || upper < T::zero() {
                    return Err(Error::InvalidBalance(format!(
                        "explicit bounds must be non-negative, got ({lower}, {upper})"
                    )));
                }
            }
            BalanceSpec::Additive { tau } => {
                if tau < T::zero() {
                    return Err(Error::InvalidBalance(format!(
                        "additive tolerance must be >= 0, got {tau}"
                    )));
                }
            }
            BalanceSpec::Multiplicative { tau } => {
                if tau <= T::zero() || tau > T::one() {
                    return Err(Error::InvalidBalance(format!(
                        "multiplicative tolerance must lie in (0, 1], got {tau}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Resolves a balance specification into a load window.
///
/// `integral` rounds the window inwards to (⌈Φ_l⌉, ⌊Φ_u⌋), which is exact
/// whenever every district load is an integer (unit weights, 0/1 allocation).
/// A negative additive lower bound is clamped to zero.
pub fn resolve_bounds<T: Scalar>(
    balance: &BalanceSpec<T>,
    total_weight: T,
    districts: usize,
    integral: bool,
) -> Result<Bounds<T>> {
    balance.validate()?;
    if districts == 0 {
        return Err(Error::InvalidInstance("district count must be positive".into()));
    }
    let average = total_weight / T::from_int(districts as i64);
    let (lower, upper) = match *balance {
        BalanceSpec::Explicit { lower, upper } => (lower, upper),
        BalanceSpec::Additive { tau } => (
            ((T::one() - tau) * average).max_of(T::zero()),
            (T::one() + tau) * average,
        ),
        BalanceSpec::Multiplicative { tau } => (tau * average, average / tau),
    };
    let (lower, upper) = if integral {
        (lower.snap().ceil(), upper.snap().floor())
    } else {
        (lower, upper)
    };
    if upper < lower && !lower.approx_eq(upper) {
        return Err(Error::InfeasibleBounds { lower: lower.to_string(), upper: upper.to_string() });
    }
    Ok(Bounds { lower, upper })
}
