//! Dictionary between the Hardy-Sobolev parameters (γ, s) and the weighted
//! interpolation-inequality parameters (a, b, q) for
//! (∫ |x|^{-bq} |u|^q)^{2/q} ≤ C ∫ |x|^{-2a} |∇u|².

use crate::{ParamError};

/// Parameter triple of the weighted inequality, tied to a dimension through
/// its validity constraints: a < (n-2)/2, 0 ≤ b - a ≤ 1 and
/// q = 2n/(n - 2 + 2(b - a)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CknParams {
    pub a: f64,
    pub b: f64,
    pub q: f64,
}

impl CknParams {
    /// Validate the triple against dimension n.
    pub fn validate(&self, n: usize) -> Result<(), ParamError> {
        if n < 3 {
            return Err(ParamError::DimensionTooSmall { n });
        }
        let half = (n as f64 - 2.0) / 2.0;
        if self.a.is_nan() || self.a >= half {
            return Err(ParamError::InvalidCkn(format!(
                "a = {} must lie below (n-2)/2 = {half}",
                self.a
            )));
        }
        let d = self.b - self.a;
        if !(0.0..=1.0).contains(&d) {
            return Err(ParamError::InvalidCkn(format!(
                "b - a = {d} outside [0, 1]"
            )));
        }
        let q = 2.0 * n as f64 / (n as f64 - 2.0 + 2.0 * d);
        if (q - self.q).abs() > 1e-10 * q {
            return Err(ParamError::InvalidCkn(format!(
                "q = {} inconsistent with 2n/(n-2+2(b-a)) = {q}",
                self.q
            )));
        }
        Ok(())
    }

    /// Construct with q derived from (a, b).
    pub fn from_ab(a: f64, b: f64, n: usize) -> Result<Self, ParamError> {
        let q = 2.0 * n as f64 / (n as f64 - 2.0 + 2.0 * (b - a));
        let p = CknParams { a, b, q };
        p.validate(n)?;
        Ok(p)
    }
}

/// Map (a, b, q) to (γ, s, 2*(s)): γ = a(n-2-a), s = (b-a)·q.
///
/// The exponent q always equals 2*(s) when the triple is valid, so the third
/// component is redundant but returned for convenience.
pub fn ckn_to_hardy(ckn: &CknParams, n: usize) -> Result<(f64, f64, f64), ParamError> {
    ckn.validate(n)?;
    let gamma = ckn.a * (n as f64 - 2.0 - ckn.a);
    let s = (ckn.b - ckn.a) * ckn.q;
    Ok((gamma, s, ckn.q))
}

/// Inverse dictionary: γ ↦ a via the smaller root of a(n-2-a) = γ,
/// namely a = (n-2)/2 - √((n-2)²/4 - γ), then b = a + s(n-2)/(2(n-s)).
///
/// Fails when γ ≥ (n-2)²/4: beyond the interior-singularity Hardy constant
/// the map a ↦ a(n-2-a) has no admissible real pre-image, which is exactly
/// the regime where the boundary singularity carries more coercivity than
/// any power weight |x|^{-2a} can encode.
pub fn hardy_to_ckn(n: usize, gamma: f64, s: f64) -> Result<CknParams, ParamError> {
    if n < 3 {
        return Err(ParamError::DimensionTooSmall { n });
    }
    if !(0.0..=2.0).contains(&s) {
        return Err(ParamError::SOutOfRange {
            s,
            max_inclusive: 2.0,
        });
    }
    let half = (n as f64 - 2.0) / 2.0;
    let disc = half * half - gamma;
    if disc.is_nan() || disc <= 0.0 {
        return Err(ParamError::NoCknRepresentation {
            gamma,
            threshold: half * half,
        });
    }
    let a = half - disc.sqrt();
    let b = a + s * (n as f64 - 2.0) / (2.0 * (n as f64 - s));
    CknParams::from_ab(a, b, n)
}
