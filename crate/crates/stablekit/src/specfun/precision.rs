//! Working-precision selection for cancellation-heavy series.

use std::sync::OnceLock;

/// Environment variable that raises the automatic floor to double-double.
pub const EXTENDED_PRECISION_ENV: &str = "STABLEKIT_EXTENDED_PRECISION";

/// Upper limit on automatically chosen multiprecision widths.
pub const MAX_AUTO_BITS: u32 = 8192;

/// Requested arithmetic for series summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    /// Native f64 with compensated summation.
    Double,
    /// Software double-double (~106 bits).
    DoubleDouble,
    /// Multiprecision with the given number of mantissa bits.
    Multi(u32),
    /// Smallest of the above that absorbs the scanned cancellation.
    #[default]
    Auto,
    /// As `Auto`, but gives up rather than exceed the given width.
    AutoUpTo(u32),
}

/// Concrete arithmetic a series will be summed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    F64,
    DoubleDouble,
    Multi(u32),
}

impl Tier {
    pub fn bits(self) -> u32 {
        match self {
            Tier::F64 => 53,
            Tier::DoubleDouble => 104,
            Tier::Multi(b) => b,
        }
    }
}

fn extended_from_env() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| {
        std::env::var(EXTENDED_PRECISION_ENV)
            .map(|v| v == "1" || v.eq_ignore_ascii_case("true"))
            .unwrap_or(false)
    })
}

impl Precision {
    /// Picks a tier given log2 of (peak term / tolerance) and the term count.
    ///
    /// Returns `None` when Auto would need more than [`MAX_AUTO_BITS`].
    pub fn resolve(self, log2_cancellation: f64, n_terms: usize) -> Option<Tier> {
        let need = log2_cancellation.max(0.0) + (n_terms.max(1) as f64).log2() + 8.0;
        match self {
            Precision::Double => Some(Tier::F64),
            Precision::DoubleDouble => Some(Tier::DoubleDouble),
            Precision::Multi(bits) => Some(Tier::Multi(bits.max(128))),
            Precision::AutoUpTo(cap) => {
                let tier = Precision::Auto.resolve(log2_cancellation, n_terms)?;
                (tier.bits() <= cap).then_some(tier)
            }
            Precision::Auto => {
                if need <= 50.0 && !extended_from_env() {
                    Some(Tier::F64)
                } else if need <= 100.0 {
                    Some(Tier::DoubleDouble)
                } else if need + 64.0 <= MAX_AUTO_BITS as f64 {
                    Some(Tier::Multi((need + 64.0).ceil() as u32))
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_tiers_pass_through() {
        assert_eq!(Precision::Double.resolve(500.0, 10), Some(Tier::F64));
        assert_eq!(Precision::Multi(300).resolve(0.0, 1), Some(Tier::Multi(300)));
    }

    #[test]
    fn auto_escalates_with_cancellation() {
        assert_eq!(Precision::Auto.resolve(300.0, 100), Some(Tier::Multi(379)));
        assert_eq!(Precision::Auto.resolve(80.0, 100), Some(Tier::DoubleDouble));
        assert_eq!(Precision::Auto.resolve(1e5, 100), None);
    }

    #[test]
    fn capped_auto_stops_at_the_cap() {
        assert_eq!(Precision::AutoUpTo(512).resolve(80.0, 100), Some(Tier::DoubleDouble));
        assert_eq!(Precision::AutoUpTo(512).resolve(600.0, 100), None);
    }
}
