//! Symbolic rendering of amplitudes, matrix entries, and ket labels.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Values that render as a symbol instead of a decimal pair.
const SYMBOLS: &[(f64, f64, &str)] = &[
    (1.0, 0.0, "1"),
    (-1.0, 0.0, "-1"),
    (0.0, 1.0, "i"),
    (0.0, -1.0, "-i"),
    (0.5, 0.0, "1/2"),
    (-0.5, 0.0, "-1/2"),
    (0.0, 0.5, "i/2"),
    (0.0, -0.5, "-i/2"),
    (FRAC_1_SQRT_2, 0.0, "1/\u{221a}2"),
    (-FRAC_1_SQRT_2, 0.0, "-1/\u{221a}2"),
];

/// Renders a state coefficient: a symbol when within `eps` of
/// {0, ±1, ±i, ±1/2, ±i/2, ±1/√2}, otherwise a fixed six-decimal complex pair.
pub fn format_coefficient(z: Complex64, eps: f64) -> String {
    for &(re, im, sym) in SYMBOLS {
        if (z.re - re).abs() <= eps && (z.im - im).abs() <= eps {
            return sym.to_string();
        }
    }
    format!("({:.6}{:+.6}i)", z.re, z.im)
}

/// Base-36 digit character (0-9 then a-z).
pub fn digit_char(d: usize) -> char {
    char::from_digit(d as u32, 36).expect("digit below 36")
}

pub fn digit_value(c: char) -> Option<usize> {
    c.to_digit(36).map(|d| d as usize)
}

/// Renders a matrix entry symbolically when it is within `eps` of a Gaussian
/// integer or of a Gaussian integer divided by √radix; falls back to decimals.
pub fn format_entry(z: Complex64, radix: usize, eps: f64) -> String {
    if let Some(s) = gaussian_symbol(z, eps, "") {
        return s;
    }
    let scale = (radix as f64).sqrt();
    let denom = perfect_square_root(radix)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("\u{221a}{radix}"));
    if let Some(s) = gaussian_symbol(z * scale, eps * scale, &format!("/{denom}")) {
        return s;
    }
    format!("({:.6}{:+.6}i)", z.re, z.im)
}

fn perfect_square_root(n: usize) -> Option<usize> {
    let s = (n as f64).sqrt().round() as usize;
    (s * s == n).then_some(s)
}

/// Formats `z` as `p + qi` over an optional denominator suffix when both
/// components are within `eps` of integers.
fn gaussian_symbol(z: Complex64, eps: f64, denom: &str) -> Option<String> {
    let p = z.re.round();
    let q = z.im.round();
    if (z.re - p).abs() > eps || (z.im - q).abs() > eps {
        return None;
    }
    let (p, q) = (p as i64, q as i64);
    let im_part = |q: i64| match q {
        1 => "i".to_string(),
        -1 => "-i".to_string(),
        _ => format!("{q}i"),
    };
    Some(match (p, q) {
        (0, 0) => "0".to_string(),
        (p, 0) => format!("{p}{denom}"),
        (0, q) => format!("{}{denom}", im_part(q)),
        (p, q) if q < 0 => format!("({p}{}){denom}", im_part(q)),
        (p, q) => format!("({p}+{}){denom}", im_part(q)),
    })
}

/// Joins rendered terms into a sum, folding leading minus signs into the
/// separator: `a - b + c` rather than `a + -b + c`.
pub fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(term);
        }
    }
    out
}
