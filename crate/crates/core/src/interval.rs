//! Closed intervals of `f64` with outward rounding.
//!
//! Every arithmetic result is computed in round-to-nearest and then widened by
//! one ulp on each side, which encloses the exact result. `exp`, `ln` and `erf`
//! are built from these operations with explicit truncation bounds, so no
//! libm routine is trusted.

use std::f64::consts::{E, PI};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_finite() { x.next_down() } else { x }
}

fn up(x: f64) -> f64 {
    if x.is_finite() { x.next_up() } else { x }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(domain("Interval::new", format!("invalid endpoints [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// The exact double `x`.
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Encloses the decimal constant whose correctly rounded value is `x`.
    pub fn decimal(x: f64) -> Self {
        Self { lo: down(x), hi: up(x) }
    }

    fn widen(lo: f64, hi: f64) -> Self {
        Self { lo: down(lo), hi: up(hi) }
    }

    pub fn pi() -> Self {
        Self::decimal(PI)
    }

    pub fn e() -> Self {
        Self::decimal(E)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }

    pub fn max(&self, other: &Self) -> Self {
        Self { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Self { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        let lo = if a.lo == 0.0 { 0.0 } else { down(a.lo * a.lo).max(0.0) };
        Self { lo, hi: up(a.hi * a.hi) }
    }

    /// `self^n` by binary powering.
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = Interval::point(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Result<Self> {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            return Err(domain("Interval::recip", format!("[{}, {}] contains zero", self.lo, self.hi)));
        }
        Ok(Self::widen(1.0 / self.hi, 1.0 / self.lo))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(*self * other.recip()?)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo < 0.0 {
            return Err(domain("Interval::sqrt", format!("negative lower endpoint {}", self.lo)));
        }
        Ok(Self { lo: down(self.lo.sqrt()).max(0.0), hi: up(self.hi.sqrt()) })
    }

    pub fn exp(&self) -> Result<Self> {
        Ok(Self { lo: exp_enclose(self.lo)?.lo, hi: exp_enclose(self.hi)?.hi })
    }

    pub fn ln(&self) -> Result<Self> {
        if !(self.lo > 0.0) {
            return Err(domain("Interval::ln", format!("nonpositive lower endpoint {}", self.lo)));
        }
        Ok(Self { lo: ln_lower(self.lo)?, hi: ln_upper(self.hi)? })
    }

    /// `self^y = exp(y ln self)` for a positive base.
    pub fn pow(&self, y: &Self) -> Result<Self> {
        (*y * self.ln()?).exp()
    }

    pub fn erf(&self) -> Result<Self> {
        Ok(Self { lo: erf_enclose(self.lo)?.lo, hi: erf_enclose(self.hi)?.hi })
    }

    /// `Φ(t) = (1 + erf(t/√2))/2`.
    pub fn cdf(&self) -> Result<Self> {
        let s = Self::point(2.0).sqrt()?;
        Ok((Self::point(1.0) + self.div(&s)?.erf()?) * Self::point(0.5))
    }

    /// `γ₁(z) = exp(−z²/2)/√(2π)`.
    pub fn pdf(&self) -> Result<Self> {
        let e = (-(self.sqr() * Self::point(0.5))).exp()?;
        e.div(&(Self::point(2.0) * Self::pi()).sqrt()?)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        if o.lo == 0.0 && o.hi == 0.0 {
            return self;
        }
        Interval::widen(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::widen(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi)
    }
}

const EXP_TERMS: u32 = 24;

/// Enclosure of `e^x` for one double: `e^n · e^r` with `n = round(x)`, `e^n`
/// by binary powering of an enclosure of `e`, and `e^r` by its Taylor series
/// with a remainder bound.
fn exp_enclose(x: f64) -> Result<Interval> {
    if x.is_nan() || x > 700.0 {
        return Err(domain("Interval::exp", format!("argument {x} out of range")));
    }
    if x == 0.0 {
        return Ok(Interval::point(1.0));
    }
    if x < -700.0 {
        // e^{-700} ≈ 9.9e-305.
        return Ok(Interval { lo: 0.0, hi: 1e-300 });
    }
    let n = x.round();
    // x − n is exact for |x| ≤ 700.
    let yi = Interval::point(x - n);
    let mut sum = Interval::point(1.0);
    let mut term = Interval::point(1.0);
    for n in 1..=if x == n { 0 } else { EXP_TERMS } {
        term = (term * yi).div(&Interval::point(n as f64))?;
        sum = sum + term;
    }
    if x != n {
        // Σ_{k>N} |r|^k/k! ≤ 2|r|^{N+1}/(N+1)! ≤ 2·2^{-25}/25! < 1e-32.
        sum = sum + Interval { lo: -1e-32, hi: 1e-32 };
    }
    let en = Interval::e().powi(n.abs() as u32);
    if n < 0.0 {
        sum.div(&en)
    } else {
        Ok(sum * en)
    }
}

fn ln_bracket(x: f64, want_lower: bool) -> Result<f64> {
    let guess = x.ln();
    let mut step = (guess.abs() * f64::EPSILON).max(f64::MIN_POSITIVE);
    let mut y = guess;
    for _ in 0..200 {
        let e = exp_enclose(y)?;
        if want_lower && e.hi <= x || !want_lower && e.lo >= x {
            return Ok(y);
        }
        y = if want_lower { y - step } else { y + step };
        step *= 2.0;
    }
    Err(domain("Interval::ln", format!("could not bracket ln({x})")))
}

fn ln_lower(x: f64) -> Result<f64> {
    ln_bracket(x, true)
}

fn ln_upper(x: f64) -> Result<f64> {
    ln_bracket(x, false)
}

/// `erf(x) = (2/√π) Σ (−1)ⁿ x^{2n+1}/(n!(2n+1))` for `|x| ≤ 2`, with the
/// alternating-series remainder bound once the terms decrease.
fn erf_enclose(x: f64) -> Result<Interval> {
    if !(x.abs() <= 2.0) {
        return Err(domain("Interval::erf", format!("|x| must be <= 2, got {x}")));
    }
    let xi = Interval::point(x);
    let neg_x2 = -xi.sqr();
    let mut term = xi;
    let mut sum = xi;
    let mut n = 0u32;
    loop {
        n += 1;
        term = (term * neg_x2).div(&Interval::point(n as f64))?;
        let contrib = term.div(&Interval::point((2 * n + 1) as f64))?;
        sum = sum + contrib;
        if n as f64 > x * x + 1.0 && contrib.abs().hi < 1e-40 {
            let next = contrib.abs().hi * x * x / (n + 1) as f64 * 2.0;
            sum = sum + Interval { lo: -next, hi: next };
            break;
        }
        if n > 400 {
            return Err(domain("Interval::erf", "series did not converge"));
        }
    }
    let scale = Interval::point(2.0).div(&Interval::pi().sqrt()?)?;
    Ok(scale * sum)
}
