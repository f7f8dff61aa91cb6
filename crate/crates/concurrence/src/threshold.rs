use qcorr_linalg::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-12;

/// Locate the parameter where `detector(family(p))` stops being positive.
///
/// Exactly one endpoint of `bracket` must give a positive value. The result
/// lies within `BISECTION_TOL` of the boundary between the two regions.
pub fn threshold_solver<S, F, D>(family: F, detector: D, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<S>,
    D: Fn(&S) -> Result<f64>,
{
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let positive = |p: f64| -> Result<bool> { Ok(detector(&family(p)?)? > 0.0) };
    let lo_pos = positive(lo)?;
    if lo_pos == positive(hi)? {
        return Err(Error::Domain(format!("detector does not change sign on [{lo}, {hi}]")));
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if positive(mid)? == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_crossing() {
        let p = threshold_solver(|p| Ok(p), |&p: &f64| Ok(0.3 - p), (0.0, 1.0)).unwrap();
        assert!((p - 0.3).abs() < 1e-11);
        assert!(threshold_solver(|p| Ok(p), |&p: &f64| Ok(p + 1.0), (0.0, 1.0)).is_err());
    }
}
