//! Argument grammars: integer lists `0..7,40,200` and real ranges `a:b`.

/// Comma-separated integers and inclusive `a..b` spans.
pub fn parse_int_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty item in list '{spec}'"));
        }
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| format!("bad integer '{a}' in '{part}'"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("bad integer '{b}' in '{part}'"))?;
            if a > b {
                return Err(format!("descending span '{part}'"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer '{part}'"))?);
        }
    }
    Ok(out)
}

/// `a:b` sampled at `samples` equally spaced points including both ends,
/// or a single value.
pub fn parse_real_range(spec: &str, samples: usize) -> Result<Vec<f64>, String> {
    let real = |s: &str| -> Result<f64, String> {
        let v: f64 = s.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite number '{s}'"))
        }
    };
    match spec.split_once(':') {
        None => Ok(vec![real(spec)?]),
        Some((a, b)) => {
            let (a, b) = (real(a)?, real(b)?);
            if !(a <= b) {
                return Err(format!("range '{spec}' must have start <= end"));
            }
            match samples {
                0 => Err("samples must be >= 1".into()),
                1 => Ok(vec![a]),
                _ => Ok((0..samples).map(|i| a + (b - a) * i as f64 / (samples - 1) as f64).collect()),
            }
        }
    }
}
