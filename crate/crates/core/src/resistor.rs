//! Y ↔ Δ resistor equivalence and the power bookkeeping behind the
//! scaled-current pattern (p², y q², z r²).
//!
//! ```text
//! Ra = R2 + R3 + R2 R3 / R1,  Rb = R1 + R3 + R1 R3 / R2,  Rc = R1 + R2 + R1 R2 / R3
//! P  = p² R1 + q² R2 + r² R3,  r = q − p
//! ```

use crate::{Error, Result};

/// Star network; legs 1, 2, 3 carry currents p, q, r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YNetwork {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// Triangle network equivalent to a star.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaNetwork {
    pub ra: f64,
    pub rb: f64,
    pub rc: f64,
}

fn positive(vals: [(&str, f64); 3]) -> Result<()> {
    for (name, v) in vals {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidInput(format!("resistance {name} = {v} must be positive")));
        }
    }
    Ok(())
}

impl YNetwork {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        positive([("R1", r1), ("R2", r2), ("R3", r3)])?;
        Ok(YNetwork { r1, r2, r3 })
    }
}

impl DeltaNetwork {
    pub fn new(ra: f64, rb: f64, rc: f64) -> Result<Self> {
        positive([("Ra", ra), ("Rb", rb), ("Rc", rc)])?;
        Ok(DeltaNetwork { ra, rb, rc })
    }
}

/// Leg currents with r = q − p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegCurrents {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl LegCurrents {
    /// Currents p and q, with r fixed by conservation.
    pub fn conserved(p: f64, q: f64) -> Self {
        LegCurrents { p, q, r: q - p }
    }

    /// Three given currents; conservation is checked to 1e−12 of the largest.
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        let c = LegCurrents { p, q, r };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        let expected = self.q - self.p;
        let scale = self.p.abs().max(self.q.abs()).max(self.r.abs());
        if !(self.p.is_finite() && self.q.is_finite() && self.r.is_finite())
            || (self.r - expected).abs() > 1e-12 * scale
        {
            return Err(Error::Conservation { r: self.r, expected });
        }
        Ok(())
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        LegCurrents { p: lambda * self.p, q: lambda * self.q, r: lambda * self.r }
    }
}

pub fn y_to_delta(y: YNetwork) -> Result<DeltaNetwork> {
    let YNetwork { r1, r2, r3 } = YNetwork::new(y.r1, y.r2, y.r3)?;
    DeltaNetwork::new(r2 + r3 + r2 * r3 / r1, r1 + r3 + r1 * r3 / r2, r1 + r2 + r1 * r2 / r3)
}

pub fn delta_to_y(d: DeltaNetwork) -> Result<YNetwork> {
    let DeltaNetwork { ra, rb, rc } = DeltaNetwork::new(d.ra, d.rb, d.rc)?;
    let s = ra + rb + rc;
    YNetwork::new(rb * rc / s, ra * rc / s, ra * rb / s)
}

/// Power dissipated in the star: p² R1 + q² R2 + r² R3.
pub fn y_power(y: YNetwork, i: LegCurrents) -> Result<f64> {
    YNetwork::new(y.r1, y.r2, y.r3)?;
    i.check()?;
    Ok(i.p * i.p * y.r1 + i.q * i.q * y.r2 + i.r * i.r * y.r3)
}

/// x = r²/p², y = q²/p², z = x/y and the identities relating them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRatios {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Largest deviation among y − x/z, z − x/y and yz/x − 1, relative.
    pub consistency: f64,
}

pub fn power_ratio_system(i: LegCurrents) -> Result<PowerRatios> {
    i.check()?;
    if i.p == 0.0 || i.q == 0.0 || i.r == 0.0 {
        return Err(Error::InvalidInput(format!(
            "all three currents must be nonzero, got p = {}, q = {}, r = {}",
            i.p, i.q, i.r
        )));
    }
    let p2 = i.p * i.p;
    let x = i.r * i.r / p2;
    let y = i.q * i.q / p2;
    let z = x / y;
    let consistency = [((y - x / z) / y).abs(), ((z - x / y) / z).abs(), (y * z / x - 1.0).abs()]
        .into_iter()
        .fold(0.0, f64::max);
    Ok(PowerRatios { x, y, z, consistency })
}

/// Both sides of the scaled-current power identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCurrentReport {
    pub ratios: PowerRatios,
    /// p_a² = (yz/x) p², q_a² = y q², r_a² = z r².
    pub pa2: f64,
    pub qa2: f64,
    pub ra2: f64,
    /// R_{1,a} = R2 R3 / R1, R_{2,a} = R2, R_{3,a} = R3.
    pub resistances: [f64; 3],
    /// I_a² R_a = p_a² R_{1,a} + q_a² R_{2,a} + r_a² R_{3,a}.
    pub power: f64,
    /// I_a² implied by that identity with R_a from the Δ network.
    pub ia2: f64,
    /// (p_a²/p², q_a²/q², r_a²/r²); the closed form's three term weights.
    pub pattern: [f64; 3],
}

pub fn scaled_current_check(y: YNetwork, i: LegCurrents) -> Result<ScaledCurrentReport> {
    let ratios = power_ratio_system(i)?;
    let d = y_to_delta(y)?;
    let (p2, q2, r2) = (i.p * i.p, i.q * i.q, i.r * i.r);
    let pa2 = ratios.y * ratios.z / ratios.x * p2;
    let qa2 = ratios.y * q2;
    let ra2 = ratios.z * r2;
    let resistances = [y.r2 * y.r3 / y.r1, y.r2, y.r3];
    let power = pa2 * resistances[0] + qa2 * resistances[1] + ra2 * resistances[2];
    Ok(ScaledCurrentReport {
        ratios,
        pa2,
        qa2,
        ra2,
        resistances,
        power,
        ia2: power / d.ra,
        pattern: [pa2 / p2, qa2 / q2, ra2 / r2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn star_to_triangle_goldens() {
        let d = y_to_delta(YNetwork::new(1.0, 2.0, 3.0).unwrap()).unwrap();
        assert_eq!(d.ra, 11.0);
        assert_eq!(d.rb, 5.5);
        assert_relative_eq!(d.rc, 11.0 / 3.0, max_relative = 1e-15);
        let s = y_to_delta(YNetwork::new(4.0, 4.0, 4.0).unwrap()).unwrap();
        assert_eq!((s.ra, s.rb, s.rc), (12.0, 12.0, 12.0));
    }

    #[test]
    fn triangle_to_star() {
        let y = delta_to_y(DeltaNetwork::new(3.0, 3.0, 3.0).unwrap()).unwrap();
        assert_eq!((y.r1, y.r2, y.r3), (1.0, 1.0, 1.0));
        let back = delta_to_y(y_to_delta(YNetwork::new(1.0, 2.0, 3.0).unwrap()).unwrap()).unwrap();
        assert_relative_eq!(back.r1, 1.0, max_relative = 1e-12);
        assert_relative_eq!(back.r2, 2.0, max_relative = 1e-12);
        assert_relative_eq!(back.r3, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn tiny_leg_survives_the_round_trip() {
        let y = YNetwork::new(1e-9, 2.0, 3.0).unwrap();
        let d = y_to_delta(y).unwrap();
        assert!(d.ra > 1e9);
        let back = delta_to_y(d).unwrap();
        assert_relative_eq!(back.r1, 1e-9, max_relative = 1e-9);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(YNetwork::new(0.0, 1.0, 1.0).is_err());
        assert!(y_to_delta(YNetwork { r1: -1.0, r2: 1.0, r3: 1.0 }).is_err());
        assert!(DeltaNetwork::new(1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn power_cases() {
        let unit = YNetwork::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(y_power(unit, LegCurrents::new(1.0, 2.0, 1.0).unwrap()).unwrap(), 6.0);
        let y = YNetwork::new(2.0, 5.0, 7.0).unwrap();
        assert_eq!(y_power(y, LegCurrents::conserved(3.0, 3.0)).unwrap(), 9.0 * 7.0);
        let i = LegCurrents::conserved(0.3, 1.1);
        assert_relative_eq!(
            y_power(y, i.scaled(3.0)).unwrap(),
            9.0 * y_power(y, i).unwrap(),
            max_relative = 1e-14
        );
        assert!(matches!(LegCurrents::new(1.0, 2.0, 2.0), Err(Error::Conservation { .. })));
    }

    #[test]
    fn ratio_system() {
        let r = power_ratio_system(LegCurrents::new(1.0, 2.0, 1.0).unwrap()).unwrap();
        assert_eq!((r.x, r.y, r.z), (1.0, 4.0, 0.25));
        assert!(r.consistency < 1e-15);
        assert!(power_ratio_system(LegCurrents::conserved(1.0, 1.0)).is_err());
    }

    #[test]
    fn scaled_currents_for_a_symmetric_star() {
        // p = 1, q = 2, r = 1: x = 1, y = 4, z = 1/4; p_a² = 1, q_a² = 16, r_a² = 1/4
        let rep = scaled_current_check(YNetwork::new(1.0, 1.0, 1.0).unwrap(), LegCurrents::conserved(1.0, 2.0)).unwrap();
        assert_eq!(rep.pa2, 1.0);
        assert_eq!(rep.qa2, 16.0);
        assert_eq!(rep.ra2, 0.25);
        assert_eq!(rep.power, 17.25);
        assert_eq!(rep.ia2, 17.25 / 3.0);
        assert_eq!(rep.pattern, [1.0, 4.0, 0.25]);
    }
}
