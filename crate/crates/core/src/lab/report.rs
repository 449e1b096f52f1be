use serde::Serialize;

/// Both sides of one inequality evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs_without_constant: f64,
    /// `lhs / rhs`; `None` marks a degenerate `0/0` evaluation.
    pub ratio: Option<f64>,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs > 0.0 {
            Some(lhs / rhs)
        } else if lhs == 0.0 {
            None
        } else {
            Some(f64::INFINITY)
        };
        Self {
            name: name.into(),
            lhs,
            rhs_without_constant: rhs,
            ratio,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.ratio.is_none()
    }
}

/// Ratio statistics over an ensemble; degenerate members are counted apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub count: usize,
    pub degenerate: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl EnsembleStats {
    pub fn from_ratios(ratios: impl IntoIterator<Item = Option<f64>>) -> Self {
        let mut vals = Vec::new();
        let mut degenerate = 0;
        for r in ratios {
            match r {
                Some(v) => vals.push(v),
                None => degenerate += 1,
            }
        }
        vals.sort_by(|a, b| a.total_cmp(b));
        let count = vals.len();
        let (min, median, max) = if count == 0 {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            let median = if count % 2 == 1 {
                vals[count / 2]
            } else {
                0.5 * (vals[count / 2 - 1] + vals[count / 2])
            };
            (vals[0], median, vals[count - 1])
        };
        Self {
            count,
            degenerate,
            min,
            median,
            max,
        }
    }

    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a InequalityReport>) -> Self {
        Self::from_ratios(reports.into_iter().map(|r| r.ratio))
    }

    /// Every non-degenerate ratio finite and at least one present.
    pub fn all_finite(&self) -> bool {
        self.count > 0 && self.max.is_finite() && self.min.is_finite()
    }

    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_and_infinite_ratios() {
        assert!(InequalityReport::new("a", 0.0, 0.0).is_degenerate());
        assert_eq!(InequalityReport::new("a", 1.0, 0.0).ratio, Some(f64::INFINITY));
        assert_eq!(InequalityReport::new("a", 1.0, 4.0).ratio, Some(0.25));
    }

    #[test]
    fn stats_median() {
        let s = EnsembleStats::from_ratios([Some(3.0), None, Some(1.0), Some(2.0), Some(10.0)]);
        assert_eq!((s.count, s.degenerate), (4, 1));
        assert_eq!((s.min, s.median, s.max), (1.0, 2.5, 10.0));
    }
}
