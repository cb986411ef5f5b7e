//! Number formatting shared by the CSV and Markdown writers.

/// C-style `%.17g`: enough digits for a binary64 round trip, trailing zeros
/// dropped.
pub fn format_g17(v: f64) -> String {
    format_g(v, 17)
}

fn format_g(v: f64, precision: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", precision - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= precision as i32 {
        format!("{}e{}{:02}", strip_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (precision as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Three significant digits in scientific notation, e.g. `1.49e-06`.
pub fn format_sci3(v: f64) -> String {
    if !v.is_finite() {
        return format_g17(v);
    }
    let sci = format!("{v:.2e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// `2^-k` when ε is a power of two with a short exponent, else the decimal.
pub fn epsilon_label(eps: f64) -> String {
    let e = eps.log2();
    for decimals in 0..=3 {
        let rounded: f64 = format!("{e:.decimals$}").parse().expect("finite");
        if 2f64.powf(rounded) == eps {
            return format!("2^{rounded:.decimals$}");
        }
    }
    format_g17(eps)
}
