//! Frequency-indexed complex multi-port networks: representation
//! conversions (S/Z/Y/ABCD), cascading, renormalization, passivity and
//! reciprocity checks, and the Rollett stability criterion.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::units::mag_to_db;

type CMat = DMatrix<Complex64>;

/// Matrix representation carried by an [`NPortNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    S,
    Z,
    Y,
    /// Chain matrix; 2-ports only.
    Abcd,
}

/// An N-port network: one N x N complex matrix per grid frequency, a
/// representation tag, and a real reference impedance.
#[derive(Debug, Clone)]
pub struct NPortNetwork {
    grid: FrequencyGrid,
    ports: usize,
    z_ref: f64,
    repr: Representation,
    data: Vec<CMat>,
}

/// Condition-number threshold above which a conversion refuses to invert.
const COND_LIMIT: f64 = 1e12;

fn inv_checked(m: &CMat, freq: f64, what: &str) -> Result<CMat> {
    let inv = m.clone().try_inverse().ok_or(Error::Singular {
        freq_hz: freq,
        context: what.to_string(),
    })?;
    // crude condition estimate: ||A||_inf * ||A^-1||_inf
    let norm = |a: &CMat| {
        (0..a.nrows())
            .map(|i| (0..a.ncols()).map(|j| a[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    if norm(m) * norm(&inv) > COND_LIMIT {
        return Err(Error::Singular {
            freq_hz: freq,
            context: format!("{what} (condition estimate > {COND_LIMIT:.0e})"),
        });
    }
    Ok(inv)
}

impl NPortNetwork {
    /// Builds a network, checking that every matrix is N x N, the port
    /// count matches the grid length, and the reference impedance is
    /// positive. ABCD is only allowed for 2-ports.
    pub fn new(
        grid: FrequencyGrid,
        z_ref: f64,
        repr: Representation,
        data: Vec<CMat>,
    ) -> Result<Self> {
        if z_ref <= 0.0 || !z_ref.is_finite() {
            return Err(Error::Invalid(format!("reference impedance {z_ref} <= 0")));
        }
        if data.len() != grid.len() {
            return Err(Error::Invalid(format!(
                "{} matrices for {} grid points",
                data.len(),
                grid.len()
            )));
        }
        let ports = data.first().map(|m| m.nrows()).unwrap_or(0);
        if ports == 0 {
            return Err(Error::Invalid("network needs at least one port".into()));
        }
        for m in &data {
            if m.nrows() != ports || m.ncols() != ports {
                return Err(Error::Invalid(format!(
                    "matrix dimensions {}x{} do not match port count {ports}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if repr == Representation::Abcd && ports != 2 {
            return Err(Error::Invalid(format!(
                "ABCD representation requires 2 ports, got {ports}"
            )));
        }
        Ok(Self {
            grid,
            ports,
            z_ref,
            repr,
            data,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }
    pub fn ports(&self) -> usize {
        self.ports
    }
    pub fn z_ref(&self) -> f64 {
        self.z_ref
    }
    pub fn representation(&self) -> Representation {
        self.repr
    }
    /// The matrix at grid index `k`.
    pub fn at(&self, k: usize) -> &CMat {
        &self.data[k]
    }
    pub fn matrices(&self) -> &[CMat] {
        &self.data
    }

    /// Entry (i, j) across the grid (0-based port indices).
    pub fn param(&self, i: usize, j: usize) -> Vec<Complex64> {
        self.data.iter().map(|m| m[(i, j)]).collect()
    }

    /// |entry (i, j)| in dB across the grid.
    pub fn param_db(&self, i: usize, j: usize) -> Result<Vec<f64>> {
        self.data
            .iter()
            .map(|m| mag_to_db(m[(i, j)].norm()))
            .collect()
    }

    fn require(&self, repr: Representation, what: &str) -> Result<()> {
        if self.repr != repr {
            return Err(Error::Invalid(format!(
                "{what} requires {repr:?} representation, network is {:?}",
                self.repr
            )));
        }
        Ok(())
    }

    /// Converts the network to `target` representation. The grid and
    /// reference impedance are unchanged; round trips return the input
    /// within numerical tolerance.
    ///
    /// S is the hub representation; ABCD uses direct S<->ABCD formulas so
    /// that networks without a Z matrix (e.g. an ideal through) still
    /// convert.
    pub fn convert(&self, target: Representation) -> Result<Self> {
        if target == Representation::Abcd && self.ports != 2 {
            return Err(Error::Invalid(format!(
                "ABCD conversion requires 2 ports, got {}",
                self.ports
            )));
        }
        if target == self.repr {
            return Ok(self.clone());
        }
        let z0 = Complex64::new(self.z_ref, 0.0);
        let eye = CMat::identity(self.ports, self.ports);
        let mut out = Vec::with_capacity(self.data.len());
        for (k, m) in self.data.iter().enumerate() {
            let f = self.grid.points()[k];
            let s = match self.repr {
                Representation::S => m.clone(),
                Representation::Z => {
                    let zpz = m + &eye * z0;
                    (m - &eye * z0) * inv_checked(&zpz, f, "Z -> S")?
                }
                Representation::Y => {
                    let ipy = &eye + m * z0;
                    (&eye - m * z0) * inv_checked(&ipy, f, "Y -> S")?
                }
                Representation::Abcd => abcd_to_s(m, self.z_ref, f)?,
            };
            let converted = match target {
                Representation::S => s,
                Representation::Z => {
                    let ims = &eye - &s;
                    (&eye + &s) * inv_checked(&ims, f, "S -> Z")? * z0
                }
                Representation::Y => {
                    let ips = &eye + &s;
                    ((&eye - &s) * inv_checked(&ips, f, "S -> Y")?) / z0
                }
                Representation::Abcd => s_to_abcd(&s, self.z_ref, f)?,
            };
            out.push(converted);
        }
        NPortNetwork::new(self.grid.clone(), self.z_ref, target, out)
    }

    /// Cascades two 2-port networks (`self` followed by `other`) via the
    /// ABCD chain product. Grids and reference impedances must match.
    /// Returns the result in S representation.
    pub fn cascade(&self, other: &NPortNetwork) -> Result<NPortNetwork> {
        if self.ports != 2 || other.ports != 2 {
            return Err(Error::Invalid(format!(
                "cascade requires 2-ports, got {} and {}",
                self.ports, other.ports
            )));
        }
        if self.grid != other.grid {
            return Err(Error::Invalid("cascade requires identical grids".into()));
        }
        if (self.z_ref - other.z_ref).abs() > 1e-12 * self.z_ref {
            return Err(Error::Invalid(
                "cascade requires identical reference impedances".into(),
            ));
        }
        let a = self.convert(Representation::Abcd)?;
        let b = other.convert(Representation::Abcd)?;
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| x * y)
            .collect::<Vec<_>>();
        NPortNetwork::new(self.grid.clone(), self.z_ref, Representation::Abcd, data)?
            .convert(Representation::S)
    }

    /// Re-references the S-parameters to `new_z_ref` without changing the
    /// physical network: S' = (S - rho·I)(I - rho·S)^-1 with
    /// rho = (z_new - z_old)/(z_new + z_old).
    pub fn renormalize(&self, new_z_ref: f64) -> Result<NPortNetwork> {
        if new_z_ref <= 0.0 || !new_z_ref.is_finite() {
            return Err(Error::Invalid(format!(
                "non-positive reference impedance {new_z_ref}"
            )));
        }
        let s = self.convert(Representation::S)?;
        let rho = (new_z_ref - self.z_ref) / (new_z_ref + self.z_ref);
        let rho = Complex64::new(rho, 0.0);
        let eye = CMat::identity(self.ports, self.ports);
        let mut out = Vec::with_capacity(s.data.len());
        for (k, m) in s.data.iter().enumerate() {
            let f = self.grid.points()[k];
            let denom = &eye - m * rho;
            let inv = inv_checked(&denom, f, "renormalize")?;
            out.push((m - &eye * rho) * inv);
        }
        let mut net = NPortNetwork::new(self.grid.clone(), new_z_ref, Representation::S, out)?;
        net.z_ref = new_z_ref;
        Ok(net)
    }
}

/// Direct ABCD -> S conversion (used so that networks without a Z matrix,
/// e.g. an ideal through, still convert).
pub fn abcd_to_s(m: &CMat, z_ref: f64, f: f64) -> Result<CMat> {
    let z0 = Complex64::new(z_ref, 0.0);
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let den = a + b / z0 + c * z0 + d;
    if den.norm() < 1e-300 {
        return Err(Error::Singular {
            freq_hz: f,
            context: "ABCD -> S".into(),
        });
    }
    let det = a * d - b * c;
    let two = Complex64::new(2.0, 0.0);
    Ok(CMat::from_row_slice(
        2,
        2,
        &[
            (a + b / z0 - c * z0 - d) / den,
            two * det / den,
            two / den,
            (-a + b / z0 - c * z0 + d) / den,
        ],
    ))
}

/// Direct S -> ABCD conversion for 2-ports at a uniform real reference.
pub fn s_to_abcd(s: &CMat, z_ref: f64, f: f64) -> Result<CMat> {
    let z0 = Complex64::new(z_ref, 0.0);
    let (s11, s12, s21, s22) = (s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)]);
    if s21.norm() < 1e-300 {
        return Err(Error::Singular {
            freq_hz: f,
            context: "S -> ABCD with S21 = 0".into(),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let den = two * s21;
    Ok(CMat::from_row_slice(
        2,
        2,
        &[
            ((one + s11) * (one - s22) + s12 * s21) / den,
            z0 * ((one + s11) * (one + s22) - s12 * s21) / den,
            ((one - s11) * (one - s22) - s12 * s21) / (den * z0),
            ((one - s11) * (one + s22) + s12 * s21) / den,
        ],
    ))
}

/// Structural flags reported by [`check_linear`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearFlags {
    pub reciprocal: bool,
    pub passive: bool,
    pub lossless: bool,
}

/// Checks reciprocity (max |S - S^T| <= tol), passivity (largest singular
/// value of S <= 1 + tol at every frequency), and losslessness
/// (max |S^H S - I| entry <= tol). Requires S representation.
pub fn check_linear(net: &NPortNetwork, tol: f64) -> Result<LinearFlags> {
    net.require(Representation::S, "check_linear")?;
    let mut reciprocal = true;
    let mut passive = true;
    let mut lossless = true;
    let eye = CMat::identity(net.ports(), net.ports());
    for m in net.matrices() {
        for i in 0..net.ports() {
            for j in 0..net.ports() {
                if (m[(i, j)] - m[(j, i)]).norm() > tol {
                    reciprocal = false;
                }
            }
        }
        let svd = m.clone().svd(false, false);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if smax > 1.0 + tol {
            passive = false;
        }
        let gram = m.adjoint() * m - &eye;
        if gram.iter().map(|c| c.norm()).fold(0.0, f64::max) > tol {
            lossless = false;
        }
    }
    Ok(LinearFlags {
        reciprocal,
        passive,
        lossless,
    })
}

/// Worst-case Rollett stability report over a grid.
#[derive(Debug, Clone, Copy)]
pub struct StabilityReport {
    /// Worst-case (minimum) K over the grid. `+inf` when every grid point
    /// is unilateral.
    pub k_factor: f64,
    /// Worst-case (maximum) |Delta| over the grid.
    pub delta_mag: f64,
    /// K > 1 and |Delta| < 1 using the worst-case values.
    pub unconditionally_stable: bool,
    /// True if |S12·S21| = 0 at some grid point (K reported as +inf
    /// there).
    pub unilateral: bool,
}

/// Evaluates the Rollett criterion K = (1 - |S11|^2 - |S22|^2 + |D|^2) /
/// (2 |S12 S21|) with D = S11·S22 - S12·S21 at every grid point and
/// reports the worst case.
pub fn stability(net: &NPortNetwork) -> Result<StabilityReport> {
    net.require(Representation::S, "stability")?;
    if net.ports() != 2 {
        return Err(Error::Invalid(format!(
            "stability requires a 2-port, got {}",
            net.ports()
        )));
    }
    let mut k_min = f64::INFINITY;
    let mut delta_max: f64 = 0.0;
    let mut unilateral = false;
    for m in net.matrices() {
        let (s11, s12, s21, s22) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let delta = s11 * s22 - s12 * s21;
        let denom = 2.0 * (s12 * s21).norm();
        let k = if denom == 0.0 {
            unilateral = true;
            f64::INFINITY
        } else {
            (1.0 - s11.norm_sqr() - s22.norm_sqr() + delta.norm_sqr()) / denom
        };
        k_min = k_min.min(k);
        delta_max = delta_max.max(delta.norm());
    }
    Ok(StabilityReport {
        k_factor: k_min,
        delta_mag: delta_max,
        unconditionally_stable: k_min > 1.0 && delta_max < 1.0,
        unilateral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_grid() -> FrequencyGrid {
        make_grid(1e9, 1e9, 1).unwrap()
    }

    fn two_port(m: CMat, repr: Representation) -> NPortNetwork {
        NPortNetwork::new(single_grid(), 50.0, repr, vec![m]).unwrap()
    }

    fn ideal_through() -> NPortNetwork {
        two_port(
            CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            Representation::Abcd,
        )
    }

    fn series_z(z: Complex64) -> NPortNetwork {
        two_port(
            CMat::from_row_slice(2, 2, &[c(1.0, 0.0), z, c(0.0, 0.0), c(1.0, 0.0)]),
            Representation::Abcd,
        )
    }

    #[test]
    fn through_abcd_to_s() {
        // identity ABCD -> S = [[0,1],[1,0]]
        let s = ideal_through().convert(Representation::S).unwrap();
        let s = s.at(0);
        assert_relative_eq!(s[(0, 0)].norm(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(s[(0, 1)].re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(s[(1, 0)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn series_50_ohm_s_params() {
        let s = abcd_to_s(series_z(c(50.0, 0.0)).at(0), 50.0, 1e9).unwrap();
        assert_relative_eq!(s[(0, 0)].re, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(s[(1, 0)].re, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(s[(0, 0)].im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn convert_round_trip_z() {
        let s = abcd_to_s(series_z(c(30.0, 12.0)).at(0), 50.0, 1e9).unwrap();
        // add a shunt path so every conversion is well-conditioned
        let mut m = s.clone();
        m[(0, 0)] += c(0.05, -0.02);
        let net = two_port(m, Representation::S);
        for target in [Representation::Z, Representation::Y, Representation::Abcd] {
            let back = net
                .convert(target)
                .unwrap()
                .convert(Representation::S)
                .unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_relative_eq!(
                        back.at(0)[(i, j)].re,
                        net.at(0)[(i, j)].re,
                        epsilon = 1e-10
                    );
                    assert_relative_eq!(
                        back.at(0)[(i, j)].im,
                        net.at(0)[(i, j)].im,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn cascade_with_through_is_identity() {
        let x = series_z(c(20.0, 5.0)).convert(Representation::S).unwrap();
        let ts = ideal_through().convert(Representation::S).unwrap();
        let y = ts.cascade(&x).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(y.at(0)[(i, j)].re, x.at(0)[(i, j)].re, epsilon = 1e-10);
                assert_relative_eq!(y.at(0)[(i, j)].im, x.at(0)[(i, j)].im, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn matched_attenuator_cascade_adds_db() {
        // matched 6.0206 dB attenuator: S11 = S22 = 0, S21 = 0.5
        let att = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let two = att.cascade(&att).unwrap();
        let s21_db = mag_to_db(two.at(0)[(1, 0)].norm()).unwrap();
        assert_relative_eq!(s21_db, -12.041199826559248, epsilon = 1e-9);
        assert!(two.at(0)[(0, 0)].norm() < 1e-6); // < -100 dB ~ 1e-5
    }

    #[test]
    fn renormalize_noop_and_round_trip() {
        let net = series_z(c(50.0, 0.0)).convert(Representation::S).unwrap();
        let same = net.renormalize(50.0).unwrap();
        assert_relative_eq!(same.at(0)[(0, 0)].re, net.at(0)[(0, 0)].re, epsilon = 1e-14);
        let rt = net.renormalize(75.0).unwrap().renormalize(50.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(
                    rt.at(0)[(i, j)].re,
                    net.at(0)[(i, j)].re,
                    epsilon = 1e-10
                );
                assert_relative_eq!(
                    rt.at(0)[(i, j)].im,
                    net.at(0)[(i, j)].im,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn renormalize_matched_load() {
        // 1-port matched 50-ohm load: S11 = 0 at 50 ohm
        let load = NPortNetwork::new(
            single_grid(),
            50.0,
            Representation::S,
            vec![CMat::from_row_slice(1, 1, &[c(0.0, 0.0)])],
        )
        .unwrap();
        let at25 = load.renormalize(25.0).unwrap();
        // reflection of 50 ohm at 25-ohm reference: (50-25)/(50+25) = 1/3
        assert_relative_eq!(at25.at(0)[(0, 0)].re, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn check_linear_flags() {
        let through = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let f = check_linear(&through, 1e-8).unwrap();
        assert!(f.reciprocal && f.passive && f.lossless);

        let att = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let f = check_linear(&att, 1e-8).unwrap();
        assert!(f.reciprocal && f.passive && !f.lossless);

        let amp = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.01, 0.0), c(8.0, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let f = check_linear(&amp, 1e-8).unwrap();
        assert!(!f.passive);
    }

    #[test]
    fn stability_hand_values() {
        // S = [[0, 0.5], [0.5, 0]]: Delta = -0.25, K = (1 + 0.0625)/(0.5) = 2.125
        // with |S11| = |S22| = 0 -> K = (1 - 0 - 0 + 0.0625)/(2*0.25) = 2.125
        let net = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let r = stability(&net).unwrap();
        assert_relative_eq!(r.k_factor, 2.125, epsilon = 1e-12);
        assert_relative_eq!(r.delta_mag, 0.25, epsilon = 1e-12);
        assert!(r.unconditionally_stable);
        assert!(!r.unilateral);
    }

    #[test]
    fn stability_through_is_boundary() {
        let net = two_port(
            CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
            Representation::S,
        );
        let r = stability(&net).unwrap();
        // Delta = -1, K = (1 - 0 - 0 + 1)/2 = 1: boundary, not stable
        assert_relative_eq!(r.k_factor, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.delta_mag, 1.0, epsilon = 1e-12);
        assert!(!r.unconditionally_stable);
    }

    #[test]
    fn stability_unilateral() {
        let net = two_port(
            CMat::from_row_slice(2, 2, &[c(0.2, 0.0), c(0.0, 0.0), c(3.0, 0.0), c(0.3, 0.0)]),
            Representation::S,
        );
        let r = stability(&net).unwrap();
        assert!(r.unilateral);
        assert!(r.k_factor.is_infinite());
        assert!(r.unconditionally_stable); // |S11|,|S22| < 1, |Delta| = 0.06
    }

    #[test]
    fn abcd_requires_two_ports() {
        let load = NPortNetwork::new(
            single_grid(),
            50.0,
            Representation::S,
            vec![CMat::from_row_slice(1, 1, &[c(0.1, 0.0)])],
        )
        .unwrap();
        assert!(load.convert(Representation::Abcd).is_err());
    }
}
