//! Fixed-precision float rendering shared by the CSV, JSON and table emitters.

/// Significant digits of every emitted float.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style rendering: fixed notation for exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros trimmed. Non-finite values render
/// as `nan`, `inf` and `-inf`.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Round once in scientific form so the exponent reflects carries.
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mantissa = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits, for JSON output.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        sig(x).parse().unwrap_or(x)
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_like_printf_g() {
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(1.0), "1");
        assert_eq!(sig(-2.5), "-2.5");
        assert_eq!(sig(0.649166418921071), "0.649166418921");
        assert_eq!(sig(1234567.891234567), "1234567.89123");
        assert_eq!(sig(1e-7), "1e-07");
        assert_eq!(sig(6.02214076e23), "6.02214076e+23");
        assert_eq!(sig(999999999999.9), "1e+12");
        assert_eq!(sig(0.000123456789012345), "0.000123456789012");
        assert_eq!(sig(f64::NAN), "nan");
        assert_eq!(sig(f64::NEG_INFINITY), "-inf");
    }

    proptest! {
        #[test]
        fn rendering_keeps_twelve_digits(x in -1e30f64..1e30) {
            let back: f64 = sig(x).parse().unwrap();
            let tol = x.abs() * 1e-11;
            prop_assert!((back - x).abs() <= tol);
            prop_assert_eq!(round_sig(back), back);
        }
    }
}
