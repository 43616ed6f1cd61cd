//! Complex amplitudes and their text form.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Coefficients with magnitude below this are dropped from sparse maps.
pub const DROP_TOLERANCE: f64 = 1e-12;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn negligible(c: C64) -> bool {
    c.norm() < DROP_TOLERANCE
}

/// `i^k` for any integer power, exact.
pub fn i_pow(k: i64) -> C64 {
    match k.rem_euclid(4) {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

fn clean(x: f64) -> f64 {
    // avoid printing "-0"
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Formats as `(<re>,<im>)` using the shortest round-trip representation.
pub fn format_complex(c: C64) -> String {
    format!("({},{})", clean(c.re), clean(c.im))
}

/// Parses `(<re>,<im>)`, whitespace-insensitive. `line` is used for error reporting.
pub fn parse_complex(text: &str, line: usize) -> Result<C64> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(line, format!("expected `(<re>,<im>)`, found `{t}`")))?;
    let (re, im) = inner
        .split_once(',')
        .ok_or_else(|| Error::parse(line, format!("missing `,` in amplitude `{t}`")))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad real part `{}`", re.trim())))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad imaginary part `{}`", im.trim())))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::parse(line, "amplitude must be finite"));
    }
    Ok(C64::new(re, im))
}

/// Splits a term line `<amplitude> : <body>` after stripping comments.
/// Returns `None` for blank or comment-only lines.
pub(crate) fn split_term_line(raw: &str, line: usize) -> Result<Option<(C64, &str)>> {
    let content = match raw.find('#') {
        Some(pos) => &raw[..pos],
        None => raw,
    };
    if content.trim().is_empty() {
        return Ok(None);
    }
    let close = content
        .find(')')
        .ok_or_else(|| Error::parse(line, "expected `(<re>,<im>) : ...`"))?;
    let amp = parse_complex(&content[..=close], line)?;
    let rest = content[close + 1..].trim_start();
    let body = rest
        .strip_prefix(':')
        .ok_or_else(|| Error::parse(line, "expected `:` after amplitude"))?;
    Ok(Some((amp, body.trim())))
}
