//! Report rendering: JSON with every IEEE double written at 17 significant
//! digits (lossless round-trip, byte-identical for identical inputs), and a
//! `%g`-style significant-digit formatter for plain and CSV output.

use serde::Serialize;
use serde_json::Value;

/// Renders a double in scientific notation with 17 significant digits.
///
/// 17 digits are always enough to round-trip an IEEE double exactly, so
/// two reports agree byte-for-byte exactly when their numbers agree
/// bit-for-bit.
pub fn format_sci17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Formats to `sig` significant digits, trimming trailing zeros, switching
/// to scientific notation for extreme magnitudes (the C `%g` behaviour).
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = sci
        .split_once('e')
        .expect("LowerExp output always contains an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    if exponent < -4 || exponent >= sig as i32 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}

/// Serializes any value to pretty JSON with 17-significant-digit doubles.
///
/// Integer-typed fields (seeds, sample counts) stay integers; every f64
/// goes through [`format_sci17`]. Object keys come out in the alphabetical
/// order `serde_json` gives them, so the byte stream is deterministic.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let tree = serde_json::to_value(value).expect("report types contain no non-serializable data");
    let mut out = String::new();
    write_value(&tree, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                let x = n.as_f64().expect("JSON numbers are u64, i64 or f64");
                out.push_str(&format_sci17(x));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(indent + 1, out);
                write_value(item, indent + 1, out);
            }
            out.push('\n');
            push_indent(indent, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(indent + 1, out);
                out.push_str(&serde_json::to_string(key).expect("keys always serialize"));
                out.push_str(": ");
                write_value(item, indent + 1, out);
            }
            out.push('\n');
            push_indent(indent, out);
            out.push('}');
        }
    }
}

fn push_indent(indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci17_round_trips_doubles() {
        for x in [
            0.0,
            0.5,
            -0.75,
            1.0 / 3.0,
            std::f64::consts::PI,
            1.7976931348623157e308,
            5e-324,
            -2.2250738585072014e-308,
        ] {
            let s = format_sci17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s} -> {back}");
        }
    }

    #[test]
    fn sci17_is_valid_json_number_syntax() {
        assert_eq!(format_sci17(0.5), "5.0000000000000000e-1");
        assert_eq!(format_sci17(1.25), "1.2500000000000000e0");
    }

    #[test]
    fn format_sig_matches_expected_renderings() {
        assert_eq!(format_sig(1.25, 6), "1.25");
        assert_eq!(format_sig(-0.75, 6), "-0.75");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(0.5, 6), "0.5");
        assert_eq!(format_sig(8.377580409572782, 6), "8.37758");
        assert_eq!(format_sig(25.0 / 6.0, 6), "4.16667");
        assert_eq!(format_sig(2.0, 6), "2");
        assert_eq!(format_sig(1.0e-7, 6), "1e-7");
        assert_eq!(format_sig(3.5e9, 6), "3.5e9");
        assert_eq!(format_sig(0.6, 3), "0.6");
    }

    #[test]
    fn json_renders_floats_ints_and_strings() {
        #[derive(Serialize)]
        struct Sample {
            name: String,
            seed: u64,
            value: f64,
            flags: Vec<bool>,
        }
        let s = Sample {
            name: "a \"quoted\" name".to_string(),
            seed: 42,
            value: 0.5,
            flags: vec![true, false],
        };
        let json = to_json(&s);
        assert!(json.contains("\"seed\": 42"), "{json}");
        assert!(json.contains("5.0000000000000000e-1"), "{json}");
        assert!(json.contains("a \\\"quoted\\\" name"), "{json}");
        // and it parses back
        let parsed: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["value"].as_f64(), Some(0.5));
        assert_eq!(parsed["seed"].as_u64(), Some(42));
    }

    #[test]
    fn json_output_is_deterministic() {
        #[derive(Serialize)]
        struct Nested {
            b: f64,
            a: Vec<f64>,
        }
        let v = Nested { b: 1.0 / 3.0, a: vec![0.1, 0.2] };
        assert_eq!(to_json(&v), to_json(&v));
    }
}
