use super::GeomError;

/// Reid–Tai criterion for `1/r (a_1, a_2, a_3)`: terminal iff
/// `sum_i (j * a_i mod r) > r` for every `j = 1, ..., r - 1`.
pub fn reid_tai_terminal(r: u32, weights: &[i64]) -> Result<bool, GeomError> {
    if weights.len() != 3 {
        return Err(GeomError::ReidTaiArity(weights.len()));
    }
    if r == 0 {
        return Err(GeomError::Ambient("group order must be positive".into()));
    }
    let r = r as i64;
    let a: Vec<i64> = weights.iter().map(|w| w.rem_euclid(r)).collect();
    if let Some(i) = a.iter().position(|&x| x == 0) {
        return Err(GeomError::ReidTaiZeroWeight(i));
    }
    Ok((1..r).all(|j| a.iter().map(|&x| (j * x) % r).sum::<i64>() > r))
}
