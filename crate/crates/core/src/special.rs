//! Special functions: gamma, incomplete gamma (including negative parameter),
//! error functions, and the normal quantile.
//!
//! Everything here is hand-rolled on purpose: the incomplete gamma is needed
//! for *negative* parameter (upper tail of Pareto transforms), which the usual
//! statistics crates do not expose, and the crate core must stay `no_std`.
//! Target accuracy is ~1e-12 relative for `gamma` and ~1e-10 for the
//! incomplete variants over the parameter ranges used by the library.

#[allow(unused_imports)]
use num_traits::Float;

pub const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
const PI: f64 = core::f64::consts::PI;
const MAX_ITER: usize = 400;

// Lanczos approximation, g = 7, 9 terms. Good to ~15 significant digits on
// the real line away from the poles.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

fn lanczos_gamma(z: f64) -> f64 {
    // valid for z >= 0.5
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z - 1.0 + i as f64);
    }
    let t = z + LANCZOS_G - 0.5;
    (2.0 * PI).sqrt() * t.powf(z - 0.5) * (-t).exp() * acc
}

/// Gamma function on the real line. Returns NaN at the poles `0, -1, -2, ...`.
pub fn gamma(z: f64) -> f64 {
    if z < 0.5 {
        if z == z.floor() {
            return f64::NAN;
        }
        // reflection: Γ(z) Γ(1-z) = π / sin(πz)
        PI / ((PI * z).sin() * gamma(1.0 - z))
    } else {
        lanczos_gamma(z)
    }
}

/// Natural log of Γ(z) for z > 0.
pub fn log_gamma(z: f64) -> f64 {
    assert!(z > 0.0, "log_gamma requires z > 0");
    if z < 0.5 {
        return (PI / (PI * z).sin()).ln() - log_gamma(1.0 - z);
    }
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z - 1.0 + i as f64);
    }
    let t = z + LANCZOS_G - 0.5;
    0.5 * (2.0 * PI).ln() + (z - 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x) by power series.
/// Converges quickly for x < a + 1; we only call it with x < 1.5.
fn lower_regularized_series(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (a * x.ln() - x - log_gamma(a)).exp()
}

/// Continued fraction for the scaled upper incomplete gamma,
/// `Γ(a, x) = e^{-x} x^a · cf(a, x)`. Converges for x ≥ 1.5 with any real
/// a ≤ 1, including negative a (modified Lentz).
fn upper_cf_scaled(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Upper incomplete gamma Γ(a, x) for x > 0 and real a of modest size
/// (here: |a| ≤ 2, the range the tail transforms need).
///
/// Negative non-integer a is reached by the downward recurrence
/// `Γ(a-1, x) = (Γ(a, x) - x^{a-1} e^{-x}) / (a - 1)` from a lifted
/// parameter in (0, 1]; for x ≥ 1.5 the continued fraction is evaluated
/// at (a, x) directly, which avoids the recurrence cancellation entirely.
/// Nonpositive-integer a is rejected with NaN on the recurrence path.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> f64 {
    if x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return if a > 0.0 { gamma(a) } else { f64::INFINITY };
    }
    if x >= 1.5 {
        return (a * x.ln() - x).exp() * upper_cf_scaled(a, x);
    }
    if a <= 0.0 && a == a.floor() {
        return f64::NAN;
    }
    let lift = if a > 0.0 { 0 } else { (-a).floor() as u32 + 1 };
    let mut aa = a + lift as f64;
    let mut g = gamma(aa) * (1.0 - lower_regularized_series(aa, x));
    let ex = (-x).exp();
    for _ in 0..lift {
        aa -= 1.0;
        g = (g - x.powf(aa) * ex) / aa;
    }
    g
}

/// Regularized lower incomplete gamma P(a, x) for a > 0, x ≥ 0.
pub fn lower_regularized(a: f64, x: f64) -> f64 {
    assert!(a > 0.0);
    if x <= 0.0 {
        return 0.0;
    }
    if x < 1.5 || x < a + 1.0 {
        // For large a the series still converges when x < a + 1.
        lower_regularized_series(a, x)
    } else {
        1.0 - (a * x.ln() - x - log_gamma(a)).exp() * upper_cf_scaled(a, x)
    }
}

pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let v = if x * x < 1.5 {
        lower_regularized_series(0.5, x * x)
    } else {
        1.0 - erfc(x.abs())
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    let x2 = x * x;
    if x2 >= 1.5 {
        // Γ(1/2, x²) / √π
        (0.5 * x2.ln() - x2).exp() * upper_cf_scaled(0.5, x2) / SQRT_PI
    } else {
        1.0 - erf(x)
    }
}

/// Scaled complementary error function `e^{x²} erfc(x)`, stable for large x.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    let x2 = x * x;
    if x2 >= 1.5 {
        x * upper_cf_scaled(0.5, x2) / SQRT_PI
    } else {
        x2.exp() * erfc(x)
    }
}

// Acklam's rational approximation for the normal quantile (|error| < 1.2e-9),
// polished below by two Newton steps against the erfc-based CDF.
const ACKLAM_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ACKLAM_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ACKLAM_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ACKLAM_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / core::f64::consts::SQRT_2)
}

/// Standard normal quantile Φ⁻¹(p) for p in (0, 1).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile requires p in (0,1)");
    let (a, b, c, d) = (ACKLAM_A, ACKLAM_B, ACKLAM_C, ACKLAM_D);
    let p_low = 0.02425;
    let mut x = if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    };
    for _ in 0..2 {
        let pdf = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        if pdf == 0.0 {
            break;
        }
        x -= (normal_cdf(x) - p) / pdf;
    }
    x
}
