// Copyright 2026 The sg-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Fixed-precision decimal rendering shared by every output format.

/// Significant digits written to CSV and JSON outputs.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Renders `x` as a plain decimal rounded to 12 significant digits, with
/// trailing zeros removed (`0.5`, `0.933012701892`, `-12`, `0`).
///
/// The rounding is Rust's correctly rounded scientific formatting, so the
/// output is identical on every platform.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let mut out = String::with_capacity(digits.len() + 8);
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// `x` rounded to the value [`format_sig`] writes.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format_sig(x)
        .parse()
        .expect("format_sig emits valid decimals")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(-12.0), "-12");
        assert_eq!(format_sig(0.933_012_701_892_219_3), "0.933012701892");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(0.000_123_456_789_012_34), "0.000123456789012");
        assert_eq!(format_sig(123_456_789_012_345.0), "123456789012000");
        assert_eq!(format_sig(0.999_999_999_999_9), "1");
        assert_eq!(format_sig(std::f64::consts::PI), "3.14159265359");
    }

    proptest! {
        #[test]
        fn round_sig_is_idempotent_and_close(x in -1.0e6f64..1.0e6) {
            let r = round_sig(x);
            prop_assert_eq!(round_sig(r), r);
            prop_assert_eq!(format_sig(r), format_sig(x));
            prop_assert!((r - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }
}
