//! Univariate samplers for the synthetic cluster models.
//!
//! Noncentral variates are composed from primitive draws:
//! χ²'(df, λ) = χ²(df-1) + (Z + √λ)² for df >= 1,
//! t'(df, ν) = (Z + ν) / √(χ²(df)/df),
//! F'(v1, v2, λ) = (χ²'(v1, λ)/v1) / (χ²(v2)/v2),
//! NBeta(v1, v2, λ) = X / (X + Y) with X ~ χ²'(2·v1, λ), Y ~ χ²(2·v2).

use rand::Rng;
use rand_distr::{Distribution, Exp, Gamma, Normal, StandardNormal, Uniform, Weibull};

use crate::error::{Error, Result};

/// A univariate distribution, parameterized as in the model definitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampler {
    /// Mean and standard deviation.
    Normal { mean: f64, sd: f64 },
    Uniform { a: f64, b: f64 },
    /// Degrees of freedom and noncentrality.
    NoncentralT { df: f64, ncp: f64 },
    NoncentralChiSq { df: f64, ncp: f64 },
    NoncentralF { df1: f64, df2: f64, ncp: f64 },
    /// Shape and rate.
    Gamma { shape: f64, rate: f64 },
    Weibull { shape: f64, scale: f64 },
    Exponential { rate: f64 },
    /// Type-I noncentral Beta with shapes v1, v2 and noncentrality lambda.
    NoncentralBeta { v1: f64, v2: f64, lambda: f64 },
    /// Extended skew-normal with location, scale, shape and hidden-mean
    /// parameters.
    SkewNormal { location: f64, scale: f64, shape: f64, tau: f64 },
}

impl Sampler {
    pub fn validate(&self) -> Result<()> {
        use Sampler::*;
        let ok = match *self {
            Normal { sd, .. } => sd > 0.0,
            Uniform { a, b } => a < b,
            NoncentralT { df, .. } => df > 0.0,
            NoncentralChiSq { df, ncp } => df >= 1.0 && ncp >= 0.0,
            NoncentralF { df1, df2, ncp } => df1 >= 1.0 && df2 > 0.0 && ncp >= 0.0,
            Gamma { shape, rate } => shape > 0.0 && rate > 0.0,
            Weibull { shape, scale } => shape > 0.0 && scale > 0.0,
            Exponential { rate } => rate > 0.0,
            NoncentralBeta { v1, v2, lambda } => v1 > 0.0 && v2 > 0.0 && lambda >= 0.0,
            SkewNormal { scale, .. } => scale > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("distribution parameter outside its domain"))
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Sampler::Normal { mean, sd } => Normal::new(mean, sd).unwrap().sample(rng),
            Sampler::Uniform { a, b } => Uniform::new(a, b).unwrap().sample(rng),
            Sampler::NoncentralT { df, ncp } => {
                let z: f64 = StandardNormal.sample(rng);
                (z + ncp) / libm::sqrt(chi_squared(df, rng) / df)
            }
            Sampler::NoncentralChiSq { df, ncp } => noncentral_chi_squared(df, ncp, rng),
            Sampler::NoncentralF { df1, df2, ncp } => {
                let num = noncentral_chi_squared(df1, ncp, rng) / df1;
                let den = chi_squared(df2, rng) / df2;
                num / den
            }
            Sampler::Gamma { shape, rate } => {
                Gamma::new(shape, 1.0 / rate).unwrap().sample(rng)
            }
            Sampler::Weibull { shape, scale } => {
                Weibull::new(scale, shape).unwrap().sample(rng)
            }
            Sampler::Exponential { rate } => Exp::new(rate).unwrap().sample(rng),
            Sampler::NoncentralBeta { v1, v2, lambda } => {
                let x = noncentral_chi_squared(2.0 * v1, lambda, rng);
                let y = chi_squared(2.0 * v2, rng);
                x / (x + y)
            }
            Sampler::SkewNormal { location, scale, shape, tau } => {
                location + scale * standard_extended_skew_normal(shape, tau, rng)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<alloc::vec::Vec<f64>> {
        self.validate()?;
        Ok((0..count).map(|_| self.draw(rng)).collect())
    }
}

fn chi_squared<R: Rng + ?Sized>(df: f64, rng: &mut R) -> f64 {
    Gamma::new(df / 2.0, 2.0).unwrap().sample(rng)
}

fn noncentral_chi_squared<R: Rng + ?Sized>(df: f64, ncp: f64, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    let shifted = z + libm::sqrt(ncp);
    let central = if df > 1.0 { chi_squared(df - 1.0, rng) } else { 0.0 };
    central + shifted * shifted
}

/// Standard extended skew-normal SN(0, 1, shape, tau): with
/// δ = shape/√(1+shape²), Z = δ·T + √(1-δ²)·U where U ~ N(0,1) and T is a
/// standard normal truncated to T > -tau.
fn standard_extended_skew_normal<R: Rng + ?Sized>(shape: f64, tau: f64, rng: &mut R) -> f64 {
    let delta = shape / libm::sqrt(1.0 + shape * shape);
    let t = loop {
        let t: f64 = StandardNormal.sample(rng);
        if t > -tau {
            break t;
        }
    };
    let u: f64 = StandardNormal.sample(rng);
    delta * t + libm::sqrt(1.0 - delta * delta) * u
}
