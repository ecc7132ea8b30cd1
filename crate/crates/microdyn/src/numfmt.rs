//! Round-trippable text formatting for f64 values.
//!
//! All data files use scientific notation with 17 significant digits, which
//! is enough to reproduce any finite f64 bit-exactly on parse.

/// Format with full round-trip precision, e.g. `1.0000000000000000e0`.
pub fn format_full(value: f64) -> String {
    format!("{value:.16e}")
}

/// Inverse of [`format_full`]; also accepts any plain f64 literal.
pub fn parse_full(text: &str) -> Option<f64> {
    text.trim().parse::<f64>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_exactly() {
        let values = [
            0.0,
            -0.0,
            1.0,
            -1.5,
            std::f64::consts::PI,
            1.054e-34,
            f64::MIN_POSITIVE,
            2.225_073_858_507_201e-308, // largest subnormal neighborhood
            f64::MAX,
            -123.456e78,
        ];
        for v in values {
            let s = format_full(v);
            let back = parse_full(&s).unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "roundtrip failed for {s}");
        }
    }

    #[test]
    fn format_uses_scientific_notation() {
        assert_eq!(format_full(1.0), "1.0000000000000000e0");
        let s = format_full(-2.5e-3);
        let (mantissa, exponent) = s.split_once('e').unwrap();
        assert_eq!(exponent, "-3");
        assert_eq!(mantissa.split_once('.').unwrap().1.len(), 16);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_full("not a number"), None);
        assert_eq!(parse_full(""), None);
        assert_eq!(parse_full("1.25e-4"), Some(1.25e-4));
    }
}
