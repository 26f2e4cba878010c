//! Shared formatting for CSV reports.
//!
//! All report writers use the same dialect: comma separation, `.` decimal
//! point, one header row, `#`-prefixed metadata lines, integers printed
//! exactly and reals with 17 significant digits (enough to round-trip f64).

/// 17 significant digits; `inf`/`nan` spelled out.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A small deterministic CSV builder.
#[derive(Debug, Default, Clone)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new() -> Self {
        Csv::default()
    }

    pub fn comment(&mut self, line: &str) {
        self.out.push_str("# ");
        self.out.push_str(line);
        self.out.push('\n');
    }

    pub fn header(&mut self, cols: &[&str]) {
        self.out.push_str(&cols.join(","));
        self.out.push('\n');
    }

    pub fn row(&mut self, fields: &[String]) {
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for x in [0.25, 1.0 / 3.0, 1e-300, 2.171_472_409_516_258e-1, -7.5e12] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }
}
