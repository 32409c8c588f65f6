//! Flag parsing helpers for complex-valued inputs.
//!
//! A complex value is written "re" or "re,im". Coefficient lists separate
//! entries with ';' ("1;0,1" is [1, i]). The exponent triple also accepts
//! the bare form "a0,a1,a2" with three real components.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(
            re.parse::<f64>().with_context(|| format!("bad real part {re:?}"))?,
            0.0,
        )),
        [re, im] => Ok(Complex64::new(
            re.parse::<f64>().with_context(|| format!("bad real part {re:?}"))?,
            im.parse::<f64>().with_context(|| format!("bad imaginary part {im:?}"))?,
        )),
        _ => bail!("expected \"re\" or \"re,im\", got {s:?}"),
    }
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(';').map(parse_complex).collect()
}

/// The (a0, a1, a2) exponent triple: ';'-separated pairs, or three bare
/// reals, or six bare numbers read as three (re, im) pairs.
pub fn parse_expo(s: &str) -> Result<[Complex64; 3]> {
    let values: Vec<Complex64> = if s.contains(';') {
        parse_complex_list(s)?
    } else {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.len() {
            3 => parts
                .iter()
                .map(|p| {
                    Ok(Complex64::new(
                        p.parse::<f64>().with_context(|| format!("bad component {p:?}"))?,
                        0.0,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
            6 => parts
                .chunks(2)
                .map(|c| {
                    Ok(Complex64::new(
                        c[0].parse::<f64>().with_context(|| format!("bad component {:?}", c[0]))?,
                        c[1].parse::<f64>().with_context(|| format!("bad component {:?}", c[1]))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
            _ => bail!("exponent triple needs 3 components (or 6 numbers), got {s:?}"),
        }
    };
    if values.len() != 3 {
        bail!("exponent triple needs exactly 3 components, got {}", values.len());
    }
    Ok([values[0], values[1], values[2]])
}

pub fn parse_pnorm(s: &str) -> Result<fockops::PNorm> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
        return Ok(fockops::PNorm::Infinity);
    }
    let p: f64 = t.parse().with_context(|| format!("bad exponent {s:?}"))?;
    if p < 1.0 {
        bail!("exponent must be at least 1, got {p}");
    }
    Ok(fockops::PNorm::Finite(p))
}

/// Comma-separated positive integers ("10,20,40").
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("bad integer {p:?}")))
        .collect()
}
