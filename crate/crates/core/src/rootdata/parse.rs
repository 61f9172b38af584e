use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weightlat::parse_ratio;

use super::{build_algebra, Alpha, AlgebraDatum, Family};

/// Parses `gl(m|n)`, `sl(m|n)`, `osp(M|2n)`, `D(2,1;p/q)`, `F(4)`, `G(3)`.
pub fn parse_algebra(text: &str) -> Result<AlgebraDatum> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("unrecognised algebra {text:?}"));
    let inner = |prefix: &str| -> Option<String> {
        s.strip_prefix(prefix)?.strip_suffix(')').map(str::to_string)
    };
    let pair = |body: String| -> Result<(usize, usize)> {
        let (a, b) = body.split_once('|').ok_or_else(bad)?;
        Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
    };
    if let Some(body) = inner("gl(") {
        let (m, n) = pair(body)?;
        return build_algebra(Family::Gl, m, n, None);
    }
    if let Some(body) = inner("sl(") {
        let (m, n) = pair(body)?;
        return build_algebra(Family::Sl, m, n, None);
    }
    if let Some(body) = inner("osp(") {
        let (big_m, two_n) = pair(body)?;
        if two_n % 2 != 0 {
            return Err(Error::InvalidAlgebra(format!("osp({big_m}|{two_n}) needs an even symplectic part")));
        }
        let n = two_n / 2;
        return match big_m {
            m if m % 2 == 1 => build_algebra(Family::OspB, (m - 1) / 2, n, None),
            2 => build_algebra(Family::OspC, 1, n, None),
            m => build_algebra(Family::OspD, m / 2, n, None),
        };
    }
    if let Some(body) = inner("D(2,1;").or_else(|| inner("D(2,1,")) {
        let a = parse_ratio(&body)
            .map_err(|_| Error::InvalidAlgebra(format!("alpha must be rational, got {body:?}")))?;
        return build_algebra(Family::D21a, 3, 0, Some(Alpha::Rational(a)));
    }
    match s.as_str() {
        "F(4)" | "F4" => build_algebra(Family::F4, 3, 1, None),
        "G(3)" | "G3" => build_algebra(Family::G3, 2, 1, None),
        _ => Err(bad()),
    }
}

/// Parses a linear combination of `e<i>` and `d<j>`, optionally prefixed by a
/// rational factor applying to a parenthesised group: `1/2(e1+e2+e3-d1)`.
pub fn parse_basis_vector(s: &str, m: usize, n: usize) -> Result<(Vec<Ratio<i64>>, Vec<Ratio<i64>>)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| Error::Parse(format!("{msg} in root {s:?}"));
    let (factor, body) = match s.find('(') {
        Some(open) => {
            let body = s[open + 1..].strip_suffix(')').ok_or_else(|| bad("unbalanced parenthesis"))?;
            let pre = s[..open].trim_end_matches('*');
            let f = if pre.is_empty() { Ratio::from_integer(1) } else { parse_ratio(pre)? };
            (f, body.to_string())
        }
        None => (Ratio::from_integer(1), s.clone()),
    };
    let mut eps = vec![Ratio::zero(); m];
    let mut delta = vec![Ratio::zero(); n];
    let bytes = body.as_bytes();
    let mut i = 0;
    let mut any = false;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if any {
            return Err(bad("expected + or -"));
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let coef = if start == i { Ratio::from_integer(1) } else { parse_ratio(&body[start..i])? };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let kind = *bytes.get(i).ok_or_else(|| bad("missing basis vector"))?;
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let idx: usize = body[start..i].parse().map_err(|_| bad("missing index"))?;
        let slot = match kind {
            b'e' if (1..=m).contains(&idx) => &mut eps[idx - 1],
            b'd' if (1..=n).contains(&idx) => &mut delta[idx - 1],
            _ => return Err(bad("basis vector out of range")),
        };
        *slot += coef * sign * factor;
        any = true;
    }
    if !any {
        return Err(bad("empty"));
    }
    Ok((eps, delta))
}
