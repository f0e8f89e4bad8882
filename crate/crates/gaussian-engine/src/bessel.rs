/// `J_0(x), ..., J_max_order(x)` for `x >= 0` by Miller's downward recurrence,
/// normalized with `J_0 + 2 sum_k J_2k = 1`.
pub fn bessel_j_table(max_order: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0 && x.is_finite(), "argument must be finite and non-negative");
    let mut out = vec![0.0; max_order + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let top = max_order.max(x.ceil() as usize);
    let mut start = top + 40 + (60.0 * top as f64).sqrt() as usize;
    start += start % 2;

    let mut values = vec![0.0; start + 2];
    values[start] = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let next = 2.0 * k as f64 / x * values[k] - values[k + 1];
        values[k - 1] = next;
        if next.abs() > 1e250 {
            for v in values[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
            norm *= 1e-250;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * values[k - 1];
        }
    }
    norm += values[0];
    for (o, v) in out.iter_mut().zip(values.iter()) {
        *o = v / norm;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_argument_values() {
        let j = bessel_j_table(3, 1.0);
        assert!((j[0] - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((j[1] - 0.440_050_585_744_933_5).abs() < 1e-14);
        assert!((j[2] - 0.114_903_484_931_900_5).abs() < 1e-14);
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_j_table(2, 0.0), vec![1.0, 0.0, 0.0]);
    }
}
