use super::{is_nonpositive_integer, Result, SpecialError};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx), exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let t = PI * (x - 0.5 * n);
    match (n as i64).rem_euclid(4) {
        0 => t.sin(),
        1 => t.cos(),
        2 => -t.sin(),
        _ => -t.cos(),
    }
}

/// cos(πx), exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos(z: f64) -> f64 {
    // z >= 0.5
    let z = z - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+1/2) does not overflow before e^-t is applied
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc
}

/// Γ(z) on the real line.
pub fn gamma(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(SpecialError::InvalidParameter("gamma of NaN".into()));
    }
    if is_nonpositive_integer(z) {
        return Err(SpecialError::Pole { function: "gamma", arg: z });
    }
    if z == z.round() && z <= 30.0 {
        // exact factorials
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if z < 0.5 {
        let s = sin_pi(z);
        Ok(PI / (s * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// 1/Γ(z), zero at the poles of Γ.
pub fn rgamma(z: f64) -> f64 {
    if is_nonpositive_integer(z) {
        return 0.0;
    }
    if z < 0.5 {
        sin_pi(z) * lanczos(1.0 - z) / PI
    } else {
        // gamma cannot fail here
        1.0 / gamma(z).unwrap_or(f64::INFINITY)
    }
}

/// Rising factorial (a)_n = a (a+1) … (a+n−1), by direct product.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}
