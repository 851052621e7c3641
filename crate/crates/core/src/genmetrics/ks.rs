use alloc::vec::Vec;

use super::GenMetricsError;

const SERIES_TERMS: u32 = 100;

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Two-sample Kolmogorov–Smirnov statistic D = sup |F_a − F_b|.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64, GenMetricsError> {
    if a.is_empty() || b.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let a = sorted(a);
    let b = sorted(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        // Step past every copy of the smallest remaining value on both sides.
        let x = if a[i].total_cmp(&b[j]).is_le() { a[i] } else { b[j] };
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Survival function of the Kolmogorov distribution, P(K > λ).
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Complementary series converges fast for small λ.
        let pi = core::f64::consts::PI;
        let mut cdf = 0.0;
        for k in 1..=SERIES_TERMS {
            let m = f64::from(2 * k - 1);
            cdf += libm::exp(-m * m * pi * pi / (8.0 * lambda * lambda));
        }
        cdf *= libm::sqrt(2.0 * pi) / lambda;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let mut sf = 0.0;
    for k in 1..=SERIES_TERMS {
        let kf = f64::from(k);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sf += sign * libm::exp(-2.0 * kf * kf * lambda * lambda);
    }
    (2.0 * sf).clamp(0.0, 1.0)
}

/// Asymptotic p-value for D with Stephens' small-sample correction.
pub fn ks_pvalue(d: f64, na: usize, nb: usize) -> f64 {
    let en = libm::sqrt((na * nb) as f64 / (na + nb) as f64);
    kolmogorov_sf((en + 0.12 + 0.11 / en) * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistic_cases() {
        assert_eq!(ks_statistic(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_statistic(&[1.0, 2.0], &[5.0, 6.0, 7.0]).unwrap(), 1.0);
        let d = ks_statistic(&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0]).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-15);
        assert!(ks_statistic(&[], &[1.0]).is_err());
    }

    #[test]
    fn kolmogorov_values() {
        // Reference values of the Kolmogorov survival function.
        assert!((kolmogorov_sf(1.0) - 0.26999967).abs() < 1e-7);
        assert!((kolmogorov_sf(0.5) - 0.96394524).abs() < 1e-7);
        assert!((kolmogorov_sf(1.5) - 0.02221795).abs() < 1e-7);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
        // Both branches agree where they meet.
        let lo = 1.18 - 1e-9;
        let direct: f64 = 2.0 * (1..=100).map(|k: i32| {
            let s = if k % 2 == 1 { 1.0 } else { -1.0 };
            s * libm::exp(-2.0 * f64::from(k * k) * lo * lo)
        }).sum::<f64>();
        assert!((kolmogorov_sf(lo) - direct).abs() < 1e-12);
        assert!(ks_pvalue(0.0, 10, 10) == 1.0);
    }
}
