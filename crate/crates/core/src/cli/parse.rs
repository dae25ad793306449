//! Argument value grammars.

use std::f64::consts::PI;

use crate::extensions::{ExtensionU2, HalflineExtension};

/// Distance from the unit sphere that raw `m` quadruples may have.
pub const RAW_SPHERE_TOLERANCE: f64 = 1e-6;

/// Reals, with `inf`, `pi`, `2pi`, `pi/2`, `3pi/4` and their negatives.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.as_str()),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().map_err(|_| format!("malformed number '{s}'"))?),
        None => (body, 1.0),
    };
    let factor = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.parse::<f64>().map_err(|_| format!("malformed number '{s}'"))?,
        None => return Err(format!("malformed number '{s}'")),
    };
    Ok(sign * factor * PI / den)
}

pub fn finite_real(s: &str) -> Result<f64, String> {
    let x = real(s)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn positive_real(s: &str) -> Result<f64, String> {
    let x = finite_real(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("'{s}' must be positive"))
    }
}

/// A boundary parameter that may be `inf`.
pub fn lambda(s: &str) -> Result<HalflineExtension, String> {
    let x = real(s)?;
    if x.is_nan() {
        Err(format!("'{s}' is not a number"))
    } else if x.is_infinite() {
        Ok(HalflineExtension::Infinite)
    } else {
        Ok(HalflineExtension::Finite(x))
    }
}

/// Comma-separated values of one flag.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

pub fn lambda_list(s: &str) -> Result<List<HalflineExtension>, String> {
    s.split(',').map(lambda).collect::<Result<_, _>>().map(List)
}

pub fn positive_list(s: &str) -> Result<List<f64>, String> {
    s.split(',').map(positive_real).collect::<Result<_, _>>().map(List)
}

/// `A:B` with `A ≤ B`.
pub fn index_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got '{s}'"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("malformed range start in '{s}'"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("malformed range end in '{s}'"))?;
    if a > b {
        return Err(format!("empty range '{s}'"));
    }
    Ok((a, b))
}

/// `dirichlet | neumann | periodic | antiperiodic | quasiperiodic:<θ>` or
/// `psi=<real>,m=(<m0>,<m1>,<m2>,<m3>)`.
pub fn extension(s: &str) -> Result<ExtensionU2, String> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    match t.as_str() {
        "dirichlet" => return Ok(ExtensionU2::dirichlet()),
        "neumann" => return Ok(ExtensionU2::neumann()),
        "periodic" => return Ok(ExtensionU2::periodic()),
        "antiperiodic" => return Ok(ExtensionU2::antiperiodic()),
        _ => {}
    }
    for prefix in ["quasiperiodic:", "quasi_periodic:", "quasi-periodic:"] {
        if let Some(theta) = t.strip_prefix(prefix) {
            return Ok(ExtensionU2::quasi_periodic(finite_real(theta)?));
        }
    }
    let rest = t
        .strip_prefix("psi=")
        .ok_or_else(|| format!("unknown extension '{s}'"))?;
    let (psi, m) = rest
        .split_once(",m=")
        .ok_or_else(|| format!("expected psi=<real>,m=(m0,m1,m2,m3), got '{s}'"))?;
    let psi = finite_real(psi)?;
    let inner = m
        .strip_prefix('(')
        .and_then(|m| m.strip_suffix(')'))
        .ok_or_else(|| format!("m must be parenthesised in '{s}'"))?;
    let q = inner
        .split(',')
        .map(finite_real)
        .collect::<Result<Vec<f64>, String>>()?;
    let q: [f64; 4] = q.try_into().map_err(|_| format!("m needs four components in '{s}'"))?;
    let norm2: f64 = q.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > RAW_SPHERE_TOLERANCE {
        return Err(format!("|m|² = {norm2} is not within {RAW_SPHERE_TOLERANCE:e} of 1"));
    }
    let n = norm2.sqrt();
    ExtensionU2::new(psi, q[0] / n, q[1] / n, q[2] / n, q[3] / n).map_err(|e| e.to_string())
}
