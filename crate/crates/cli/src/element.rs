//! `--omega` / `--rho` values: a named element or a coordinate vector.

use hopf_cyclic::linalg::{parse_rational, Scalar, SparseVec};

use crate::CliError;

/// `"1"` is the unit, `"e3"` the third basis vector, any name in `named`
/// its element, and `"[1, 0, 1/2]"` or `"1,0,1/2"` a coordinate vector.
pub fn parse_element(
    s: &str,
    dim: usize,
    unit: &SparseVec,
    named: &[(&str, SparseVec)],
) -> Result<SparseVec, CliError> {
    let s = s.trim();
    if s == "1" {
        return Ok(unit.clone());
    }
    if let Some((_, v)) = named.iter().find(|(n, _)| *n == s) {
        return Ok(v.clone());
    }
    if let Some(i) = s.strip_prefix('e').and_then(|r| r.parse::<usize>().ok()) {
        if i >= dim {
            return Err(CliError::Usage(format!("basis index {i} out of range (dimension {dim})")));
        }
        return Ok(SparseVec::unit(i));
    }
    let body = s.trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = body.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.len() != dim {
        return Err(CliError::Usage(format!(
            "`{s}` is neither a known element nor a vector of {dim} coordinates"
        )));
    }
    let vals = parts
        .iter()
        .map(|p| {
            parse_rational(p.trim_matches('"'))
                .map(Scalar::from_rational)
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SparseVec::from_dense(&vals))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_syntax() {
        let unit = SparseVec::from_dense(&[Scalar::one(), Scalar::zero()]);
        let named = [("g", SparseVec::unit(1))];
        assert_eq!(parse_element("1", 2, &unit, &named).unwrap(), unit);
        assert_eq!(parse_element("g", 2, &unit, &named).unwrap(), SparseVec::unit(1));
        assert_eq!(parse_element("e1", 2, &unit, &named).unwrap(), SparseVec::unit(1));
        let v = parse_element("[1/2, -3]", 2, &unit, &named).unwrap();
        assert_eq!(v.get(0), Scalar::from_frac(1, 2));
        assert_eq!(v.get(1), Scalar::from_int(-3));
        assert!(parse_element("e5", 2, &unit, &named).is_err());
        assert!(parse_element("1,2,3", 2, &unit, &named).is_err());
    }
}
