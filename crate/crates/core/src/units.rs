//! Unit conversions used at the I/O edges: dB <-> linear magnitude and
//! dBm <-> watts. Internally everything is volts, amps, watts, and Hz.

use crate::error::{Error, Result};

/// Units understood by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// Magnitude in decibels (20·log10 of a voltage-wave ratio).
    Db,
    /// Linear magnitude (dimensionless ratio).
    LinearMag,
    /// Power in dB relative to 1 mW.
    Dbm,
    /// Power in watts.
    Watts,
}

/// Converts between dB and linear magnitude, or between dBm and watts.
///
/// Only those two pairs are supported; mixing a magnitude unit with a
/// power unit is an error, as is taking the log of a non-positive value.
pub fn convert(x: f64, from: Unit, to: Unit) -> Result<f64> {
    use Unit::*;
    match (from, to) {
        (Db, Db) | (LinearMag, LinearMag) | (Dbm, Dbm) | (Watts, Watts) => Ok(x),
        (LinearMag, Db) => mag_to_db(x),
        (Db, LinearMag) => Ok(db_to_mag(x)),
        (Watts, Dbm) => watts_to_dbm(x),
        (Dbm, Watts) => Ok(dbm_to_watts(x)),
        _ => Err(Error::Invalid(format!(
            "unsupported unit conversion {from:?} -> {to:?}"
        ))),
    }
}

/// 20·log10(x); errors on non-positive magnitude.
pub fn mag_to_db(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Invalid(format!("log of non-positive magnitude {x}")));
    }
    Ok(20.0 * x.log10())
}

/// Inverse of [`mag_to_db`].
pub fn db_to_mag(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// 10·log10(P / 1 mW); errors on non-positive power.
pub fn watts_to_dbm(w: f64) -> Result<f64> {
    if w <= 0.0 {
        return Err(Error::Invalid(format!("log of non-positive power {w} W")));
    }
    Ok(10.0 * (w / 1e-3).log10())
}

/// Inverse of [`watts_to_dbm`].
pub fn dbm_to_watts(dbm: f64) -> f64 {
    1e-3 * 10f64.powf(dbm / 10.0)
}

/// 10·log10 of a power ratio; errors on non-positive ratio.
pub fn power_ratio_db(r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::Invalid(format!("log of non-positive ratio {r}")));
    }
    Ok(10.0 * r.log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dbm_definitions() {
        assert_relative_eq!(dbm_to_watts(0.0), 1e-3);
        assert_relative_eq!(dbm_to_watts(20.0), 100e-3);
        assert_relative_eq!(watts_to_dbm(1e-3).unwrap(), 0.0);
    }

    #[test]
    fn magnitude_db() {
        assert_relative_eq!(mag_to_db(10.0).unwrap(), 20.0);
        assert_relative_eq!(db_to_mag(-6.0205999132796239), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn log_of_nonpositive_rejected() {
        assert!(mag_to_db(0.0).is_err());
        assert!(watts_to_dbm(-1.0).is_err());
        assert!(convert(0.0, Unit::Watts, Unit::Dbm).is_err());
    }

    #[test]
    fn unsupported_pairs_rejected() {
        assert!(convert(1.0, Unit::Db, Unit::Watts).is_err());
        assert!(convert(1.0, Unit::Dbm, Unit::LinearMag).is_err());
    }

    #[test]
    fn round_trips() {
        for x in [1e-6, 0.5, 1.0, 3.0, 1e3] {
            assert_relative_eq!(db_to_mag(mag_to_db(x).unwrap()), x, max_relative = 1e-12);
            assert_relative_eq!(
                dbm_to_watts(watts_to_dbm(x).unwrap()),
                x,
                max_relative = 1e-12
            );
        }
    }
}
