//! Command-line value parsers.

use num_complex::Complex64;

/// `"a,b"` as `a + ib`. A single number is read as a real point.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("bad number {p:?} in {s:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected \"re,im\", got {s:?}")),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("non-finite point {s:?}"));
    }
    Ok(z)
}

/// `"a,b"` as a pair of finite reals.
pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = parse_list(s)?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two numbers, got {s:?}")),
    }
}

/// Comma-separated finite reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                Ok(x) => Err(format!("non-finite value {x} in {s:?}")),
                Err(e) => Err(format!("bad number {p:?} in {s:?}: {e}")),
            }
        })
        .collect()
}

/// `"j,a,b"`: ray index and radii.
pub fn parse_segment(s: &str) -> Result<(usize, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [j, a, b] = parts.as_slice() else {
        return Err(format!("expected \"ray,a,b\", got {s:?}"));
    };
    let j = j.parse::<usize>().map_err(|e| format!("bad ray index {j:?}: {e}"))?;
    let (a, b) = parse_pair(&format!("{a},{b}"))?;
    Ok((j, a, b))
}
