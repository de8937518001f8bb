//! Scalar special functions shared by the solvers: gamma, Legendre
//! polynomials (plain and associated), Gauss-Legendre rules and
//! log-factorials.

use std::f64::consts::PI;

/// Lanczos coefficients (g = 7, n = 9), same set as the GNU Scientific
/// Library. Relative accuracy of `ln_gamma` with these is ~1e-14 over the
/// range used here.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of |Γ(x)| together with the sign of Γ(x).
///
/// Returns `None` at the poles x = 0, -1, -2, ...
pub fn ln_gamma_sign(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x == x.floor() {
        return None;
    }
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
        let (ln_g, sign) = ln_gamma_sign(1.0 - x)?;
        let s = sin_pi(x);
        let ln = PI.ln() - s.abs().ln() - ln_g;
        return Some((ln, s.signum() * sign));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let ln = 0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln();
    Some((ln, 1.0))
}

/// sin(πx) computed from the reduced argument so that it is exact at
/// integers and accurate for large |x|.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * r).sin()
}

/// Γ(x); `None` at poles.
pub fn gamma(x: f64) -> Option<f64> {
    let (ln, sign) = ln_gamma_sign(x)?;
    Some(sign * ln.exp())
}

/// Ratio Γ(a)/Γ(b), formed in log space so large arguments do not overflow.
/// `None` when Γ(a) has a pole; returns 0 when Γ(b) has one.
pub fn gamma_ratio(a: f64, b: f64) -> Option<f64> {
    let (ln_a, sign_a) = ln_gamma_sign(a)?;
    match ln_gamma_sign(b) {
        None => Some(0.0),
        Some((ln_b, sign_b)) => Some(sign_a * sign_b * (ln_a - ln_b).exp()),
    }
}

/// P_0(x) .. P_kmax(x) by the three-term recurrence.
pub fn legendre_table(x: f64, k_max: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(k_max + 1);
    p.push(1.0);
    if k_max == 0 {
        return p;
    }
    p.push(x);
    for k in 1..k_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0);
        p.push(next);
    }
    p
}

/// Single Legendre polynomial P_k(x).
pub fn legendre(k: usize, x: f64) -> f64 {
    *legendre_table(x, k).last().unwrap()
}

/// Associated Legendre P_l^m(cos θ) for m ≥ 0, with the Condon-Shortley
/// phase. Used by the spherical-harmonic reconstruction of densities.
pub fn assoc_legendre(l: usize, m: usize, x: f64) -> f64 {
    assert!(m <= l, "assoc_legendre requires m <= l");
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let mut pmm = 1.0;
    if m > 0 {
        let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
        let mut fact = 1.0;
        for _ in 0..m {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut pmmp1 = x * (2.0 * mf + 1.0) * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        pll = ((2.0 * llf - 1.0) * x * pmmp1 - (llf + mf - 1.0) * pmm) / (llf - mf);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let p = legendre_table(x, n);
            let pn = p[n];
            dp = n as f64 * (x * p[n] - p[n - 1]) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// ln(k!) table of length `n + 1`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(0.0);
    for k in 1..=n {
        t.push(t[k - 1] + (k as f64).ln());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_matches_reference_values() {
        // Γ(1/2) = √π, Γ(1) = 1, Γ(5) = 24
        assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma(1.0).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-13);
        // Γ(1/4) and Γ(3/4), to published precision
        assert_relative_eq!(
            gamma(0.25).unwrap(),
            3.625_609_908_221_908_3,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gamma(0.75).unwrap(),
            1.225_416_702_465_177_6,
            max_relative = 1e-13
        );
    }

    #[test]
    fn gamma_reflection_negative_arguments() {
        // Γ(-1/2) = -2√π, Γ(-3/2) = 4√π/3
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(
            gamma(-1.5).unwrap(),
            4.0 * PI.sqrt() / 3.0,
            max_relative = 1e-12
        );
        assert!(gamma(0.0).is_none());
        assert!(gamma(-3.0).is_none());
    }

    #[test]
    fn gamma_recurrence_holds_over_solver_range() {
        // Γ(x+1) = x Γ(x) scanned across the |E| < 50 window used by the
        // transcendental-equation solver.
        let mut x = -24.9_f64;
        while x < 25.0 {
            if (x - x.round()).abs() > 1e-3 && (x + 1.0 - (x + 1.0).round()).abs() > 1e-3 {
                let lhs = gamma(x + 1.0).unwrap();
                let rhs = x * gamma(x).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
            x += 0.1;
        }
    }

    #[test]
    fn legendre_recurrence_and_special_points() {
        assert_relative_eq!(legendre(4, 1.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(legendre(3, -1.0), -1.0, max_relative = 1e-14);
        // P_2(x) = (3x^2 - 1)/2
        assert_relative_eq!(legendre(2, 0.3), 0.5 * (3.0 * 0.09 - 1.0), max_relative = 1e-14);
        // odd polynomials vanish at 0
        assert_eq!(legendre(5, 0.0), 0.0);
    }

    #[test]
    fn assoc_legendre_reference_values() {
        // P_1^1 = -sinθ, P_2^1 = -3x sinθ, P_2^2 = 3(1-x²)
        let x = 0.4_f64;
        let s = (1.0 - x * x).sqrt();
        assert_relative_eq!(assoc_legendre(1, 1, x), -s, max_relative = 1e-13);
        assert_relative_eq!(assoc_legendre(2, 1, x), -3.0 * x * s, max_relative = 1e-13);
        assert_relative_eq!(assoc_legendre(2, 2, x), 3.0 * (1.0 - x * x), max_relative = 1e-13);
        assert_relative_eq!(assoc_legendre(3, 0, x), legendre(3, x), max_relative = 1e-13);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(12);
        // degree 23 is integrated exactly; ∫ x^8 = 2/9, ∫ x^22 = 2/23
        let s8: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(8)).sum();
        let s22: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(22)).sum();
        assert_relative_eq!(s8, 2.0 / 9.0, max_relative = 1e-13);
        assert_relative_eq!(s22, 2.0 / 23.0, max_relative = 1e-12);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn ln_factorials_table() {
        let t = ln_factorials(10);
        assert_relative_eq!(t[10], (3_628_800.0_f64).ln(), max_relative = 1e-14);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[1], 0.0);
    }
}
