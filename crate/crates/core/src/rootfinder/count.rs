//! Argument-principle zero counting on rectangles.

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::smatrix::jost;
use crate::{Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Axis-aligned rectangle in the `k` plane for one channel and coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRegion {
    pub lower_left: C64,
    pub upper_right: C64,
    pub channel: Channel,
    pub coupling: ComplexCoupling,
}

impl CountRegion {
    pub fn new(lower_left: C64, upper_right: C64, channel: Channel, coupling: ComplexCoupling) -> Result<Self> {
        if !(upper_right.re > lower_left.re && upper_right.im > lower_left.im) {
            return Err(Error::InvalidArgument("count region corners are not ordered"));
        }
        Ok(Self {
            lower_left,
            upper_right,
            channel,
            coupling,
        })
    }

    /// Square of half-side `half` centred on `center`.
    pub fn square(center: C64, half: f64, channel: Channel, coupling: ComplexCoupling) -> Self {
        let d = C64::new(half, half);
        Self {
            lower_left: center - d,
            upper_right: center + d,
            channel,
            coupling,
        }
    }

    pub fn contains(&self, k: C64) -> bool {
        k.re > self.lower_left.re
            && k.re < self.upper_right.re
            && k.im > self.lower_left.im
            && k.im < self.upper_right.im
    }

    /// The rectangle grown by `amount` on every side.
    pub fn grown(&self, amount: f64) -> Self {
        let d = C64::new(amount, amount);
        Self {
            lower_left: self.lower_left - d,
            upper_right: self.upper_right + d,
            ..*self
        }
    }

    fn corners(&self) -> [C64; 4] {
        let (a, b) = (self.lower_left, self.upper_right);
        [a, C64::new(b.re, a.im), b, C64::new(a.re, b.im)]
    }
}

/// Closest approach to a zero, as a Newton-distance, allowed on the contour.
const EDGE_CLEARANCE: f64 = 1e-6;
const MAX_DEPTH: u32 = 48;
const INITIAL_PIECE: f64 = 0.02;

struct Contour<'a> {
    region: &'a CountRegion,
    spec: &'a PotentialSpec,
}

impl Contour<'_> {
    fn eval(&self, z: C64) -> Result<C64> {
        let j = jost(self.region.channel, z, self.region.coupling, self.spec);
        if j.newton_distance() < EDGE_CLEARANCE || !j.value.is_finite() {
            return Err(Error::EdgeTooClose { near: z });
        }
        Ok(j.value)
    }

    /// Change of `arg D` from `z0` to `z1`, bisecting until every piece
    /// turns by less than π/2 and the halves agree with the whole.
    fn segment(&self, z0: C64, d0: C64, z1: C64, d1: C64, depth: u32) -> Result<f64> {
        let zm = (z0 + z1) * 0.5;
        let dm = self.eval(zm)?;
        let whole = (d1 / d0).arg();
        let left = (dm / d0).arg();
        let right = (d1 / dm).arg();
        let consistent = (left + right - whole).abs() < 1e-9;
        if left.abs() < FRAC_PI_2 && right.abs() < FRAC_PI_2 && consistent {
            return Ok(left + right);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::EdgeTooClose { near: zm });
        }
        Ok(self.segment(z0, d0, zm, dm, depth + 1)? + self.segment(zm, dm, z1, d1, depth + 1)?)
    }

    fn winding(&self) -> Result<f64> {
        let corners = self.region.corners();
        let mut total = 0.0;
        for i in 0..4 {
            let (a, b) = (corners[i], corners[(i + 1) % 4]);
            let pieces = ((b - a).norm() / INITIAL_PIECE).ceil().max(1.0) as usize;
            let mut z0 = a;
            let mut d0 = self.eval(z0)?;
            for p in 1..=pieces {
                let z1 = a + (b - a) * (p as f64 / pieces as f64);
                let d1 = self.eval(z1)?;
                total += self.segment(z0, d0, z1, d1, 0)?;
                z0 = z1;
                d0 = d1;
            }
        }
        Ok(total / (2.0 * PI))
    }
}

/// Number of zeros of the region's reduced denominator inside the
/// rectangle, with multiplicity.
pub fn count_zeros(region: &CountRegion, spec: &PotentialSpec) -> Result<u32> {
    let turns = Contour { region, spec }.winding()?;
    let n = turns.round();
    if (turns - n).abs() > 0.1 || n < 0.0 {
        return Err(Error::EdgeTooClose {
            near: region.lower_left,
        });
    }
    Ok(n as u32)
}

/// [`count_zeros`], growing the rectangle by `step` after each contour that
/// passes too close to a zero. Returns the count and the rectangle used.
pub fn count_zeros_nudged(
    region: &CountRegion,
    spec: &PotentialSpec,
    step: f64,
    attempts: usize,
) -> Result<(u32, CountRegion)> {
    let mut current = *region;
    let mut last = Error::EdgeTooClose {
        near: region.lower_left,
    };
    for _ in 0..attempts.max(1) {
        match count_zeros(&current, spec) {
            Ok(n) => return Ok((n, current)),
            Err(e @ Error::EdgeTooClose { .. }) => {
                last = e;
                current = current.grown(step);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}
