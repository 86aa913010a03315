//! Passive element models: ideal transmission lines, open/short stubs,
//! lumped RLC one-ports embedded as 2-ports, quarter-wave transformers,
//! microstrip closed forms, and the Wilkinson 2-way divider/combiner.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::network::{abcd_to_s, NPortNetwork, Representation};
use crate::{C0, DEFAULT_Z0};

type CMat = DMatrix<Complex64>;

const NEPER_PER_DB: f64 = 1.0 / 8.685889638065035;

/// Microstrip substrate description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateSpec {
    /// Relative permittivity (>= 1).
    pub eps_r: f64,
    /// Substrate height in meters.
    pub height: f64,
    /// Dielectric loss tangent (>= 0).
    pub tan_delta: f64,
    /// Conductor thickness in meters (carried, unused by the quasi-static
    /// closed forms).
    pub conductor_thickness: f64,
}

impl SubstrateSpec {
    pub fn new(eps_r: f64, height: f64, tan_delta: f64, conductor_thickness: f64) -> Result<Self> {
        if eps_r < 1.0 {
            return Err(Error::Invalid(format!("eps_r {eps_r} < 1")));
        }
        if height <= 0.0 {
            return Err(Error::Invalid(format!("substrate height {height} <= 0")));
        }
        if tan_delta < 0.0 {
            return Err(Error::Invalid(format!("tan_delta {tan_delta} < 0")));
        }
        Ok(Self {
            eps_r,
            height,
            tan_delta,
            conductor_thickness,
        })
    }

    /// Representative GaAs stack: eps_r = 12.9, 100 um height,
    /// tan_delta = 0.001, 3 um metal.
    pub fn gaas() -> Self {
        Self {
            eps_r: 12.9,
            height: 100e-6,
            tan_delta: 0.001,
            conductor_thickness: 3e-6,
        }
    }
}

/// Ideal transmission-line section: characteristic impedance and
/// electrical length in degrees at a reference frequency. Electrical
/// length scales linearly with frequency (non-dispersive model).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TLineSpec {
    /// Characteristic impedance in ohms.
    pub z_c: f64,
    /// Electrical length in degrees at `f_ref`.
    pub electrical_length: f64,
    /// Reference frequency in Hz for the electrical length.
    pub f_ref: f64,
    /// Optional attenuation in dB per millimeter (applied when
    /// `length_m` is also known).
    pub loss_db_per_mm: Option<f64>,
    /// Optional physical length in meters (used only to scale the loss).
    pub length_m: Option<f64>,
}

impl TLineSpec {
    pub fn new(z_c: f64, electrical_length: f64, f_ref: f64) -> Result<Self> {
        if z_c <= 0.0 {
            return Err(Error::Invalid(format!("characteristic impedance {z_c} <= 0")));
        }
        if electrical_length <= 0.0 {
            return Err(Error::Invalid(format!(
                "electrical length {electrical_length} <= 0"
            )));
        }
        if f_ref <= 0.0 {
            return Err(Error::Invalid(format!("reference frequency {f_ref} <= 0")));
        }
        Ok(Self {
            z_c,
            electrical_length,
            f_ref,
            loss_db_per_mm: None,
            length_m: None,
        })
    }

    pub fn with_loss(mut self, loss_db_per_mm: f64, length_m: f64) -> Self {
        self.loss_db_per_mm = Some(loss_db_per_mm);
        self.length_m = Some(length_m);
        self
    }

    /// Electrical length in radians at frequency `f` (linear scaling).
    pub fn theta(&self, f: f64) -> f64 {
        self.electrical_length.to_radians() * f / self.f_ref
    }

    /// Complex propagation gamma*l = alpha + j*theta at `f`. The
    /// attenuation scales with frequency like the electrical length
    /// (attenuation per unit electrical length).
    pub fn gamma_l(&self, f: f64) -> Complex64 {
        let alpha = match (self.loss_db_per_mm, self.length_m) {
            (Some(db_mm), Some(len)) => db_mm * len * 1e3 * NEPER_PER_DB * f / self.f_ref,
            _ => 0.0,
        };
        Complex64::new(alpha, self.theta(f))
    }

    /// ABCD matrix at frequency `f`.
    pub fn abcd(&self, f: f64) -> CMat {
        let gl = self.gamma_l(f);
        let zc = Complex64::new(self.z_c, 0.0);
        let (ch, sh) = (gl.cosh(), gl.sinh());
        CMat::from_row_slice(2, 2, &[ch, zc * sh, sh / zc, ch])
    }
}

/// Microstrip trace geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrostripGeom {
    pub width: f64,
    pub length: f64,
}

impl MicrostripGeom {
    pub fn new(width: f64, length: f64) -> Result<Self> {
        if width <= 0.0 || length <= 0.0 {
            return Err(Error::Invalid(format!(
                "microstrip geometry must be positive (w = {width}, l = {length})"
            )));
        }
        Ok(Self { width, length })
    }
}

/// Wilkinson 2-way divider design values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilkinsonSpec {
    /// System impedance in ohms.
    pub z0: f64,
    /// Center frequency in Hz.
    pub f0: f64,
    /// Branch-line impedance (= sqrt(2)*z0).
    pub branch_z: f64,
    /// Branch electrical length in degrees at f0 (90).
    pub branch_length: f64,
    /// Isolation resistor (= 2*z0).
    pub r_iso: f64,
}

impl WilkinsonSpec {
    pub fn new(z0: f64, f0: f64, branch_z: f64, branch_length: f64, r_iso: f64) -> Result<Self> {
        if z0 <= 0.0 || f0 <= 0.0 {
            return Err(Error::Invalid("Wilkinson z0 and f0 must be > 0".into()));
        }
        if (branch_z - z0 * 2f64.sqrt()).abs() > 1e-9 * z0 {
            return Err(Error::Invalid(format!(
                "branch impedance {branch_z} != sqrt(2)*z0 = {}",
                z0 * 2f64.sqrt()
            )));
        }
        if (r_iso - 2.0 * z0).abs() > 1e-9 * z0 {
            return Err(Error::Invalid(format!(
                "isolation resistor {r_iso} != 2*z0 = {}",
                2.0 * z0
            )));
        }
        Ok(Self {
            z0,
            f0,
            branch_z,
            branch_length,
            r_iso,
        })
    }
}

/// Ideal transmission line as a 2-port, S-parameters at the default
/// 50-ohm reference. ABCD = [[cos t, j Zc sin t], [j sin t / Zc, cos t]]
/// with the electrical length scaled linearly in frequency from f_ref.
pub fn tl_twoport(spec: &TLineSpec, grid: &FrequencyGrid) -> Result<NPortNetwork> {
    let mut data = Vec::with_capacity(grid.len());
    for &f in grid.points() {
        data.push(abcd_to_s(&spec.abcd(f), DEFAULT_Z0, f)?);
    }
    NPortNetwork::new(grid.clone(), DEFAULT_Z0, Representation::S, data)
}

/// Quarter-wave transformer between two real terminations:
/// z_c = sqrt(r_source * r_load), 90 degrees at f0.
pub fn quarter_wave_transformer(r_source: f64, r_load: f64, f0: f64) -> Result<TLineSpec> {
    if r_source <= 0.0 || r_load <= 0.0 {
        return Err(Error::Invalid(format!(
            "quarter-wave terminations must be positive real ({r_source}, {r_load})"
        )));
    }
    TLineSpec::new((r_source * r_load).sqrt(), 90.0, f0)
}

/// Result of [`microstrip_analyze`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrostripAnalysis {
    /// Characteristic impedance in ohms.
    pub z0: f64,
    /// Effective relative permittivity.
    pub eps_eff: f64,
    /// Dielectric loss in dB per millimeter at the analysis frequency.
    pub loss_db_per_mm: f64,
}

/// Quasi-static Hammerstad closed forms for microstrip impedance and
/// effective permittivity, plus the dielectric-loss term. Supported
/// aspect range: 0.1 <= w/h <= 10.
pub fn microstrip_analyze(
    geom: &MicrostripGeom,
    substrate: &SubstrateSpec,
    f: f64,
) -> Result<MicrostripAnalysis> {
    let u = geom.width / substrate.height;
    if !(0.1..=10.0).contains(&u) {
        return Err(Error::Invalid(format!(
            "w/h = {u:.4} outside supported range [0.1, 10]"
        )));
    }
    let er = substrate.eps_r;
    let eps_eff = 0.5 * (er + 1.0) + 0.5 * (er - 1.0) / (1.0 + 12.0 / u).sqrt();
    let z0 = if u <= 1.0 {
        60.0 / eps_eff.sqrt() * (8.0 / u + u / 4.0).ln()
    } else {
        120.0 * std::f64::consts::PI
            / (eps_eff.sqrt() * (u + 1.393 + 0.667 * (u + 1.444).ln()))
    };
    // dielectric loss (Np/m): k0 er (ee - 1) tan_d / (2 sqrt(ee) (er - 1))
    let loss_db_per_mm = if er > 1.0 && substrate.tan_delta > 0.0 {
        let k0 = 2.0 * std::f64::consts::PI * f / C0;
        let alpha = k0 * er * (eps_eff - 1.0) * substrate.tan_delta
            / (2.0 * eps_eff.sqrt() * (er - 1.0));
        alpha / NEPER_PER_DB / 1e3
    } else {
        0.0
    };
    Ok(MicrostripAnalysis {
        z0,
        eps_eff,
        loss_db_per_mm,
    })
}

/// Result of [`microstrip_synthesize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrostripSynthesis {
    /// Trace width in meters.
    pub width: f64,
    /// Effective permittivity at the synthesized width.
    pub eps_eff: f64,
    /// Impedance actually achieved (within 0.01 ohm of the target).
    pub z0_achieved: f64,
}

/// Finds the trace width for a target impedance by bisection on w/h;
/// `analyze(synthesize(z))` is within 0.01 ohm of `z`. Targets outside
/// the achievable range report the achievable interval.
pub fn microstrip_synthesize(
    z0_target: f64,
    substrate: &SubstrateSpec,
    f: f64,
) -> Result<MicrostripSynthesis> {
    let h = substrate.height;
    let z_at = |u: f64| -> Result<MicrostripAnalysis> {
        microstrip_analyze(&MicrostripGeom::new(u * h, 1e-3)?, substrate, f)
    };
    // z0 is strictly decreasing in w/h
    let z_hi = z_at(0.1)?.z0;
    let z_lo = z_at(10.0)?.z0;
    if !(z_lo..=z_hi).contains(&z0_target) {
        return Err(Error::OutOfRange {
            target: z0_target,
            lo: z_lo,
            hi: z_hi,
        });
    }
    let (mut lo, mut hi) = (0.1, 10.0);
    let mut best = z_at(lo)?;
    let mut best_u = lo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let a = z_at(mid)?;
        if (a.z0 - z0_target).abs() < (best.z0 - z0_target).abs() {
            best = a;
            best_u = mid;
        }
        if (a.z0 - z0_target).abs() < 1e-4 {
            break;
        }
        if a.z0 > z0_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(MicrostripSynthesis {
        width: best_u * h,
        eps_eff: best.eps_eff,
        z0_achieved: best.z0,
    })
}

/// Physical length of an electrical length at f0 for a given effective
/// permittivity: length = (deg/360) * c / (f0 * sqrt(eps_eff)).
pub fn electrical_to_physical(electrical_length_deg: f64, f0: f64, eps_eff: f64) -> Result<f64> {
    if eps_eff < 1.0 {
        return Err(Error::Invalid(format!("eps_eff {eps_eff} < 1")));
    }
    if f0 <= 0.0 {
        return Err(Error::Invalid(format!("f0 {f0} <= 0")));
    }
    Ok(electrical_length_deg / 360.0 * C0 / (f0 * eps_eff.sqrt()))
}

/// Termination of a stub.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StubKind {
    Open,
    Short,
}

/// Shunt admittance of a stub at frequency `f`; errors at tan/cot
/// resonances instead of clipping.
pub fn stub_admittance(kind: StubKind, spec: &TLineSpec, f: f64) -> Result<Complex64> {
    let theta = spec.theta(f);
    match kind {
        StubKind::Open => {
            if theta.cos().abs() < 1e-9 {
                return Err(Error::StubResonance {
                    freq_hz: f,
                    theta_deg: theta.to_degrees(),
                });
            }
            Ok(Complex64::new(0.0, theta.tan() / spec.z_c))
        }
        StubKind::Short => {
            if theta.sin().abs() < 1e-9 {
                return Err(Error::StubResonance {
                    freq_hz: f,
                    theta_deg: theta.to_degrees(),
                });
            }
            Ok(Complex64::new(0.0, -1.0 / (theta.tan() * spec.z_c)))
        }
    }
}

/// A stub embedded as a shunt element in a 2-port:
/// short-circuit stub Y = -j cot(t)/z_c, open-circuit stub Y = +j tan(t)/z_c.
pub fn stub_twoport(kind: StubKind, spec: &TLineSpec, grid: &FrequencyGrid) -> Result<NPortNetwork> {
    let mut data = Vec::with_capacity(grid.len());
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for &f in grid.points() {
        let y = stub_admittance(kind, spec, f)?;
        let abcd = CMat::from_row_slice(2, 2, &[one, zero, y, one]);
        data.push(abcd_to_s(&abcd, DEFAULT_Z0, f)?);
    }
    NPortNetwork::new(grid.clone(), DEFAULT_Z0, Representation::S, data)
}

/// Lumped element kind for [`lumped_twoport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LumpedKind {
    Resistor,
    Inductor,
    Capacitor,
}

/// Series or shunt embedding of a lumped one-port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    Series,
    Shunt,
}

/// Lumped R, L, or C embedded series or shunt in a 2-port:
/// Z_R = R, Z_L = j w L, Z_C = 1/(j w C).
pub fn lumped_twoport(
    kind: LumpedKind,
    embedding: Embedding,
    value: f64,
    grid: &FrequencyGrid,
) -> Result<NPortNetwork> {
    if value <= 0.0 {
        return Err(Error::Invalid(format!("element value {value} <= 0")));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut data = Vec::with_capacity(grid.len());
    for &f in grid.points() {
        let w = 2.0 * std::f64::consts::PI * f;
        let z = match kind {
            LumpedKind::Resistor => Complex64::new(value, 0.0),
            LumpedKind::Inductor => Complex64::new(0.0, w * value),
            LumpedKind::Capacitor => Complex64::new(0.0, -1.0 / (w * value)),
        };
        let abcd = match embedding {
            Embedding::Series => CMat::from_row_slice(2, 2, &[one, z, zero, one]),
            Embedding::Shunt => CMat::from_row_slice(2, 2, &[one, zero, one / z, one]),
        };
        data.push(abcd_to_s(&abcd, DEFAULT_Z0, f)?);
    }
    NPortNetwork::new(grid.clone(), DEFAULT_Z0, Representation::S, data)
}

/// Even/odd-mode Wilkinson design: branch lines of sqrt(2)*z0 at 90
/// degrees, isolation resistor 2*z0.
pub fn wilkinson_synthesize(z0: f64, f0: f64) -> Result<WilkinsonSpec> {
    if z0 <= 0.0 || f0 <= 0.0 {
        return Err(Error::Invalid("Wilkinson z0 and f0 must be > 0".into()));
    }
    WilkinsonSpec::new(z0, f0, z0 * 2f64.sqrt(), 90.0, 2.0 * z0)
}

/// Small Y-matrix stamp set used to assemble multiport passives from
/// transmission lines and resistors. Node 0 is ground.
enum YStamp {
    Line { a: usize, b: usize, spec: TLineSpec },
    Res { a: usize, b: usize, ohms: f64 },
}

/// Assembles an N-port by Y-matrix stamping. `ports[k]` is the node of
/// port k+1; non-port nodes are removed by Kron reduction.
fn y_stamped_sparams(
    n_nodes: usize,
    stamps: &[YStamp],
    ports: &[usize],
    z0: f64,
    grid: &FrequencyGrid,
) -> Result<NPortNetwork> {
    let internal: Vec<usize> = (1..=n_nodes).filter(|n| !ports.contains(n)).collect();
    let mut data = Vec::with_capacity(grid.len());
    for &f in grid.points() {
        let mut y = CMat::zeros(n_nodes, n_nodes);
        for s in stamps {
            match s {
                YStamp::Res { a, b, ohms } => {
                    let yv = Complex64::new(1.0 / ohms, 0.0);
                    if *a > 0 {
                        y[(a - 1, a - 1)] += yv;
                    }
                    if *b > 0 {
                        y[(b - 1, b - 1)] += yv;
                    }
                    if *a > 0 && *b > 0 {
                        y[(a - 1, b - 1)] -= yv;
                        y[(b - 1, a - 1)] -= yv;
                    }
                }
                YStamp::Line { a, b, spec } => {
                    let gl = spec.gamma_l(f);
                    let sh = gl.sinh();
                    if sh.norm() < 1e-12 {
                        return Err(Error::Singular {
                            freq_hz: f,
                            context: format!(
                                "branch line is a half-wave multiple (theta = {:.3} deg)",
                                spec.theta(f).to_degrees()
                            ),
                        });
                    }
                    let zc = Complex64::new(spec.z_c, 0.0);
                    let y11 = gl.cosh() / (zc * sh);
                    let y12 = -Complex64::new(1.0, 0.0) / (zc * sh);
                    if *a > 0 {
                        y[(a - 1, a - 1)] += y11;
                    }
                    if *b > 0 {
                        y[(b - 1, b - 1)] += y11;
                    }
                    if *a > 0 && *b > 0 {
                        y[(a - 1, b - 1)] += y12;
                        y[(b - 1, a - 1)] += y12;
                    }
                }
            }
        }
        // Kron reduction: Ypp - Ypi Yii^-1 Yip
        let pick = |rows: &[usize], cols: &[usize], y: &CMat| {
            let mut m = CMat::zeros(rows.len(), cols.len());
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    m[(i, j)] = y[(r - 1, c - 1)];
                }
            }
            m
        };
        let ypp = pick(ports, ports, &y);
        let yp = if internal.is_empty() {
            ypp
        } else {
            let ypi = pick(ports, &internal, &y);
            let yip = pick(&internal, ports, &y);
            let yii = pick(&internal, &internal, &y);
            let yii_inv = yii.try_inverse().ok_or(Error::Singular {
                freq_hz: f,
                context: "internal-node elimination".into(),
            })?;
            &ypp - &ypi * yii_inv * yip
        };
        let eye_p = CMat::identity(ports.len(), ports.len());
        let ipy = &eye_p + &yp * Complex64::new(z0, 0.0);
        let inv = ipy.clone().try_inverse().ok_or(Error::Singular {
            freq_hz: f,
            context: "Y -> S".into(),
        })?;
        data.push((&eye_p - &yp * Complex64::new(z0, 0.0)) * inv);
    }
    NPortNetwork::new(grid.clone(), z0, Representation::S, data)
}

/// 3-port S-parameters of the Wilkinson divider: two branch lines from
/// the common port plus the isolation resistor, assembled by Y-matrix
/// stamping. Port 1 is the common port.
pub fn wilkinson_analyze(spec: &WilkinsonSpec, grid: &FrequencyGrid) -> Result<NPortNetwork> {
    let line = TLineSpec::new(spec.branch_z, spec.branch_length, spec.f0)?;
    let stamps = [
        YStamp::Line { a: 1, b: 2, spec: line },
        YStamp::Line { a: 1, b: 3, spec: line },
        YStamp::Res {
            a: 2,
            b: 3,
            ohms: spec.r_iso,
        },
    ];
    y_stamped_sparams(3, &stamps, &[1, 2, 3], spec.z0, grid)
}

/// 2-port S-parameters of a divider and combiner connected back to back
/// through equal-length paths (used to check the through-like behavior
/// at the design frequency).
pub fn wilkinson_back_to_back(spec: &WilkinsonSpec, grid: &FrequencyGrid) -> Result<NPortNetwork> {
    let line = TLineSpec::new(spec.branch_z, spec.branch_length, spec.f0)?;
    // nodes: 1 = input, 2/3 = split arms, 4 = output
    let stamps = [
        YStamp::Line { a: 1, b: 2, spec: line },
        YStamp::Line { a: 1, b: 3, spec: line },
        YStamp::Res {
            a: 2,
            b: 3,
            ohms: spec.r_iso,
        },
        YStamp::Line { a: 2, b: 4, spec: line },
        YStamp::Line { a: 3, b: 4, spec: line },
        YStamp::Res {
            a: 2,
            b: 3,
            ohms: spec.r_iso,
        },
    ];
    y_stamped_sparams(4, &stamps, &[1, 4], spec.z0, grid)
}
