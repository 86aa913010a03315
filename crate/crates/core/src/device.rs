//! Generic large-signal pHEMT model: a smooth tanh I-V characteristic
//! with analytic derivatives, width/finger scaling, DC-IV sweeps,
//! bias-class selection, and small-signal linearization.
//!
//! The model stands in for a proprietary foundry PDK. The default
//! parameters are representative, not foundry data: `v_pk` and `p1` are
//! calibrated so that the Class-AB (15% of Imax) and Class-A (50% of
//! Imax) selection rules land at v_gs = -0.7 V and -0.2 V at
//! v_ds = 6 V over the standard table range v_gs in [-1.5, 0.5].

use crate::error::{Error, Result};

/// Large-signal FET parameters.
///
/// I_ds = i_pk * (1 + tanh(p1*(v_gs - v_pk))) * tanh(alpha*v_ds)
///        * (1 + lambda_mod*v_ds)
///
/// Junction capacitances are bias-independent (linear C model);
/// breakdown, thermal, and dispersion effects are not modeled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhemtParams {
    /// Current scale in A (drain current at v_gs = v_pk is i_pk in deep
    /// saturation with lambda_mod = 0).
    pub i_pk: f64,
    /// Gate voltage of peak transconductance, V.
    pub v_pk: f64,
    /// tanh steepness, 1/V.
    pub p1: f64,
    /// Knee sharpness, 1/V.
    pub alpha: f64,
    /// Output-conductance slope, 1/V.
    pub lambda_mod: f64,
    /// Gate-source capacitance, F.
    pub c_gs: f64,
    /// Gate-drain capacitance, F.
    pub c_gd: f64,
    /// Drain-source capacitance, F.
    pub c_ds: f64,
    /// Gate resistance, ohm.
    pub r_g: f64,
    /// Drain resistance, ohm.
    pub r_d: f64,
    /// Source resistance, ohm.
    pub r_s: f64,
    /// Total gate width this parameter set describes, m.
    pub unit_width: f64,
    /// Finger count (metadata for scaling bookkeeping).
    pub n_fingers: u32,
}

/// Calibrated v_pk default (see module docs).
pub const DEFAULT_V_PK: f64 = -0.132826794833;
/// Calibrated p1 default (see module docs).
pub const DEFAULT_P1: f64 = 1.649224702669;
/// Standard DC-IV table gate-voltage range used for calibration.
pub const TABLE_VGS_MIN: f64 = -1.5;
/// Upper end of the standard table range; Imax is taken here.
pub const TABLE_VGS_MAX: f64 = 0.5;

impl PhemtParams {
    /// Validates the physical invariants.
    pub fn validate(&self) -> Result<()> {
        if self.i_pk <= 0.0 {
            return Err(Error::Invalid(format!("i_pk {} <= 0", self.i_pk)));
        }
        if self.p1 <= 0.0 {
            return Err(Error::Invalid(format!("p1 {} <= 0", self.p1)));
        }
        if self.alpha <= 0.0 {
            return Err(Error::Invalid(format!("alpha {} <= 0", self.alpha)));
        }
        if self.c_gs < 0.0 || self.c_gd < 0.0 || self.c_ds < 0.0 {
            return Err(Error::Invalid("capacitances must be >= 0".into()));
        }
        if self.r_g < 0.0 || self.r_d < 0.0 || self.r_s < 0.0 {
            return Err(Error::Invalid("terminal resistances must be >= 0".into()));
        }
        if self.unit_width <= 0.0 {
            return Err(Error::Invalid(format!("unit_width {} <= 0", self.unit_width)));
        }
        if self.n_fingers < 1 {
            return Err(Error::Invalid("n_fingers must be >= 1".into()));
        }
        Ok(())
    }

    /// Representative default device: 100 um total gate width (2 fingers
    /// of 50 um), calibrated bias behavior, mmW-capable parasitics.
    pub fn default_100um() -> Self {
        Self {
            i_pk: 0.024,
            v_pk: DEFAULT_V_PK,
            p1: DEFAULT_P1,
            alpha: 1.5,
            lambda_mod: 0.01,
            c_gs: 35e-15,
            c_gd: 4e-15,
            c_ds: 20e-15,
            r_g: 1.5,
            r_d: 1.0,
            r_s: 0.6,
            unit_width: 100e-6,
            n_fingers: 2,
        }
    }
}

/// Drain current of the tanh model. Negative v_ds yields negative
/// current through the odd tanh(alpha*v_ds) term.
pub fn ids(p: &PhemtParams, v_gs: f64, v_ds: f64) -> f64 {
    p.i_pk
        * (1.0 + (p.p1 * (v_gs - p.v_pk)).tanh())
        * (p.alpha * v_ds).tanh()
        * (1.0 + p.lambda_mod * v_ds)
}

/// Analytic partial derivatives (g_m, g_ds) of [`ids`].
pub fn ids_derivatives(p: &PhemtParams, v_gs: f64, v_ds: f64) -> (f64, f64) {
    let tg = (p.p1 * (v_gs - p.v_pk)).tanh();
    let td = (p.alpha * v_ds).tanh();
    let lam = 1.0 + p.lambda_mod * v_ds;
    let sech2_g = 1.0 - tg * tg;
    let sech2_d = 1.0 - td * td;
    let g_m = p.i_pk * p.p1 * sech2_g * td * lam;
    let g_ds = p.i_pk * (1.0 + tg) * (p.alpha * sech2_d * lam + td * p.lambda_mod);
    (g_m, g_ds)
}

/// Scales a parameter set to a new total gate width: i_pk and the
/// capacitances scale with width, the terminal resistances inversely.
pub fn scale(p: &PhemtParams, total_width: f64, n_fingers: u32) -> Result<PhemtParams> {
    if total_width <= 0.0 {
        return Err(Error::Invalid(format!("total width {total_width} <= 0")));
    }
    let k = total_width / p.unit_width;
    let out = PhemtParams {
        i_pk: p.i_pk * k,
        c_gs: p.c_gs * k,
        c_gd: p.c_gd * k,
        c_ds: p.c_ds * k,
        r_g: p.r_g / k,
        r_d: p.r_d / k,
        r_s: p.r_s / k,
        unit_width: total_width,
        n_fingers,
        ..*p
    };
    out.validate()?;
    Ok(out)
}

/// A rectangular DC-IV table: i[(gi, di)] = ids(v_gs[gi], v_ds[di]).
#[derive(Debug, Clone)]
pub struct IvTable {
    pub v_gs: Vec<f64>,
    pub v_ds: Vec<f64>,
    /// Row-major: index = gi * v_ds.len() + di.
    pub i_d: Vec<f64>,
}

impl IvTable {
    pub fn current(&self, gi: usize, di: usize) -> f64 {
        self.i_d[gi * self.v_ds.len() + di]
    }
}

/// Evaluates the model over a v_gs x v_ds grid.
pub fn dc_iv_sweep(p: &PhemtParams, v_gs: &[f64], v_ds: &[f64]) -> Result<IvTable> {
    if v_gs.is_empty() || v_ds.is_empty() {
        return Err(Error::Invalid("DC-IV sweep lists must be non-empty".into()));
    }
    let mut i_d = Vec::with_capacity(v_gs.len() * v_ds.len());
    for &g in v_gs {
        for &d in v_ds {
            i_d.push(ids(p, g, d));
        }
    }
    Ok(IvTable {
        v_gs: v_gs.to_vec(),
        v_ds: v_ds.to_vec(),
        i_d,
    })
}

/// The standard calibration table: v_gs in [-1.5, 0.5] (81 points) at a
/// single v_ds.
pub fn standard_table(p: &PhemtParams, v_ds: f64) -> Result<IvTable> {
    let n = 81;
    let vgs: Vec<f64> = (0..n)
        .map(|i| TABLE_VGS_MIN + (TABLE_VGS_MAX - TABLE_VGS_MIN) * i as f64 / (n - 1) as f64)
        .collect();
    dc_iv_sweep(p, &vgs, &[v_ds])
}

/// Amplifier bias class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmpClass {
    /// Quiescent current at 50% of Imax (load-line midpoint).
    A,
    /// Quiescent current at 15% of Imax.
    Ab,
}

impl AmpClass {
    /// Quiescent-current fraction of Imax that defines the class.
    pub fn current_fraction(&self) -> f64 {
        match self {
            AmpClass::A => 0.50,
            AmpClass::Ab => 0.15,
        }
    }
}

/// DC operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasPoint {
    pub v_gs: f64,
    pub v_ds: f64,
    pub i_d: f64,
    /// p_dc = v_ds * i_d.
    pub p_dc: f64,
}

impl BiasPoint {
    pub fn new(v_gs: f64, v_ds: f64, i_d: f64) -> Result<Self> {
        if i_d < 0.0 {
            return Err(Error::Invalid(format!("bias current {i_d} < 0")));
        }
        Ok(Self {
            v_gs,
            v_ds,
            i_d,
            p_dc: v_ds * i_d,
        })
    }
}

/// Selects the gate bias for a class from an IV table at the requested
/// v_ds (nearest table column). The target current is the class fraction
/// of Imax at that column; the crossing is located on the grid and
/// refined by linear interpolation.
pub fn bias_select(table: &IvTable, class: AmpClass, v_ds: f64) -> Result<BiasPoint> {
    let di = table
        .v_ds
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - v_ds)
                .abs()
                .partial_cmp(&(b.1 - v_ds).abs())
                .unwrap()
        })
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Invalid("empty v_ds axis".into()))?;
    let vds_col = table.v_ds[di];
    let column: Vec<f64> = (0..table.v_gs.len()).map(|gi| table.current(gi, di)).collect();
    let i_max = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(i_max > 0.0) {
        return Err(Error::Invalid(format!(
            "table has no positive current at v_ds = {vds_col}"
        )));
    }
    let target = class.current_fraction() * i_max;
    if target < column[0] || target > *column.last().unwrap() {
        return Err(Error::Invalid(format!(
            "target current {target:.4e} A outside table range [{:.4e}, {:.4e}]",
            column[0],
            column.last().unwrap()
        )));
    }
    // first upward crossing, refined linearly
    for gi in 1..column.len() {
        if column[gi] >= target {
            let (i0, i1) = (column[gi - 1], column[gi]);
            let (g0, g1) = (table.v_gs[gi - 1], table.v_gs[gi]);
            let frac = if i1 > i0 { (target - i0) / (i1 - i0) } else { 0.0 };
            let v_gs = g0 + frac * (g1 - g0);
            return BiasPoint::new(v_gs, vds_col, target);
        }
    }
    Err(Error::Invalid(
        "target current not reached within table range".into(),
    ))
}

/// Small-signal equivalent at a bias point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallSignal {
    pub g_m: f64,
    pub g_ds: f64,
    pub c_gs: f64,
    pub c_gd: f64,
    pub c_ds: f64,
    pub r_g: f64,
    pub r_d: f64,
    pub r_s: f64,
}

/// Analytic linearization of the model at a bias point.
pub fn small_signal(p: &PhemtParams, bias: &BiasPoint) -> SmallSignal {
    let (g_m, g_ds) = ids_derivatives(p, bias.v_gs, bias.v_ds);
    SmallSignal {
        g_m: g_m.max(0.0),
        g_ds: g_ds.max(0.0),
        c_gs: p.c_gs,
        c_gd: p.c_gd,
        c_ds: p.c_ds,
        r_g: p.r_g,
        r_d: p.r_d,
        r_s: p.r_s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dev() -> PhemtParams {
        PhemtParams::default_100um()
    }

    #[test]
    fn zero_vds_gives_zero_current() {
        assert_eq!(ids(&dev(), -0.3, 0.0), 0.0);
        assert_eq!(ids(&dev(), 0.4, 0.0), 0.0);
    }

    #[test]
    fn at_peak_gate_voltage_deep_saturation() {
        let mut p = dev();
        p.lambda_mod = 0.0;
        let i = ids(&p, p.v_pk, 20.0);
        // (1 + tanh(0)) = 1, tanh(alpha*20) ~ 1
        assert_relative_eq!(i, p.i_pk, max_relative = 1e-9);
    }

    #[test]
    fn deep_pinchoff_current_is_tiny() {
        let p = dev();
        let v_gs = p.v_pk - 5.0 / p.p1;
        let i = ids(&p, v_gs, 6.0);
        // 1 + tanh(-5) = 9.08e-5
        assert!(i < 0.01 * p.i_pk, "i = {i}");
        assert!(i > 0.0);
    }

    #[test]
    fn negative_vds_gives_negative_current() {
        let p = dev();
        assert!(ids(&p, -0.2, -1.0) < 0.0);
        assert_relative_eq!(ids(&p, -0.2, -1.0), -ids(&p, -0.2, 1.0) * (1.0 - 0.01) / (1.0 + 0.01));
    }

    #[test]
    fn current_is_bounded() {
        let p = dev();
        for vgs in [-3.0, -1.0, 0.0, 1.0, 5.0] {
            for vds in [0.0, 0.5, 2.0, 6.0, 12.0] {
                let bound = 2.0 * p.i_pk * (1.0 + p.lambda_mod * vds);
                assert!(ids(&p, vgs, vds).abs() <= bound + 1e-15);
            }
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let p = dev();
        let h = 1e-6;
        for gi in 0..20 {
            for di in 0..20 {
                let vgs = -1.4 + 1.8 * gi as f64 / 19.0;
                let vds = 0.5 + 7.5 * di as f64 / 19.0;
                let (gm, gds) = ids_derivatives(&p, vgs, vds);
                let gm_fd = (ids(&p, vgs + h, vds) - ids(&p, vgs - h, vds)) / (2.0 * h);
                let gds_fd = (ids(&p, vgs, vds + h) - ids(&p, vgs, vds - h)) / (2.0 * h);
                let scale_ref = p.i_pk * p.p1; // dominant magnitude
                assert!(
                    (gm - gm_fd).abs() <= 1e-5 * gm_fd.abs().max(1e-9 * scale_ref),
                    "gm mismatch at ({vgs}, {vds}): {gm} vs {gm_fd}"
                );
                assert!(
                    (gds - gds_fd).abs() <= 1e-5 * gds_fd.abs().max(1e-9 * scale_ref),
                    "gds mismatch at ({vgs}, {vds}): {gds} vs {gds_fd}"
                );
            }
        }
    }

    #[test]
    fn width_scaling_homogeneity_is_exact() {
        let p = dev();
        let p2 = scale(&p, 2.0 * p.unit_width, 4).unwrap();
        assert_eq!(p2.i_pk, 2.0 * p.i_pk);
        assert_eq!(p2.r_s, p.r_s / 2.0);
        assert_eq!(p2.c_gs, 2.0 * p.c_gs);
        for vgs in [-0.7, -0.2, 0.3] {
            for vds in [1.0, 6.0] {
                // doubling is an exponent shift: exact in binary fp
                assert_eq!(ids(&p2, vgs, vds), 2.0 * ids(&p, vgs, vds));
            }
        }
        let same = scale(&p, p.unit_width, p.n_fingers).unwrap();
        assert_eq!(same, p);
        assert!(scale(&p, -1e-6, 2).is_err());
    }

    #[test]
    fn iv_sweep_shapes_and_monotonicity() {
        let p = dev();
        let single = dc_iv_sweep(&p, &[-0.7], &[6.0]).unwrap();
        assert_eq!(single.i_d.len(), 1);
        assert_relative_eq!(single.current(0, 0), ids(&p, -0.7, 6.0));

        let zeros = dc_iv_sweep(&p, &[-1.0, 0.0, 0.5], &[0.0]).unwrap();
        assert!(zeros.i_d.iter().all(|&i| i == 0.0));

        let vgs: Vec<f64> = (0..41).map(|i| -1.5 + 2.0 * i as f64 / 40.0).collect();
        let t = dc_iv_sweep(&p, &vgs, &[2.0, 6.0]).unwrap();
        for di in 0..2 {
            for gi in 1..vgs.len() {
                assert!(t.current(gi, di) >= t.current(gi - 1, di));
            }
        }
        assert!(dc_iv_sweep(&p, &[], &[1.0]).is_err());
    }

    #[test]
    fn bias_select_lands_on_paper_points() {
        let p = dev();
        let table = standard_table(&p, 6.0).unwrap();
        let ab = bias_select(&table, AmpClass::Ab, 6.0).unwrap();
        assert!(
            (ab.v_gs - (-0.7)).abs() < 5e-3,
            "class AB v_gs = {}",
            ab.v_gs
        );
        let a = bias_select(&table, AmpClass::A, 6.0).unwrap();
        assert!((a.v_gs - (-0.2)).abs() < 5e-3, "class A v_gs = {}", a.v_gs);
        assert!(ab.i_d < a.i_d);
        assert_relative_eq!(ab.p_dc, ab.v_ds * ab.i_d);
    }

    #[test]
    fn bias_select_exact_on_linear_synthetic_table() {
        // I linear in v_gs: fraction point is exact under interpolation
        let vgs: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let i_d: Vec<f64> = vgs.iter().map(|&g| g).collect(); // Imax = 1.0 at 1.0 V
        let table = IvTable {
            v_gs: vgs,
            v_ds: vec![6.0],
            i_d,
        };
        let a = bias_select(&table, AmpClass::A, 6.0).unwrap();
        assert_relative_eq!(a.v_gs, 0.5, epsilon = 1e-12);
        let ab = bias_select(&table, AmpClass::Ab, 6.0).unwrap();
        assert_relative_eq!(ab.v_gs, 0.15, epsilon = 1e-12);
    }

    #[test]
    fn bias_select_out_of_range() {
        // table that never gets below 40% of Imax: class AB unreachable
        let table = IvTable {
            v_gs: vec![0.0, 1.0],
            v_ds: vec![6.0],
            i_d: vec![0.4, 1.0],
        };
        assert!(bias_select(&table, AmpClass::Ab, 6.0).is_err());
        assert!(bias_select(&table, AmpClass::A, 6.0).is_ok());
    }

    #[test]
    fn small_signal_edges() {
        let p = dev();
        // deep pinch-off: gm ~ 0 (sech^2 tail)
        let bias = BiasPoint::new(p.v_pk - 8.0 / p.p1, 6.0, 0.0).unwrap();
        let ss = small_signal(&p, &bias);
        assert!(ss.g_m < 1e-5 * p.i_pk * p.p1);

        // v_ds = 0: gm = 0, gds = i_pk-scaled alpha term
        let bias0 = BiasPoint::new(-0.2, 0.0, 0.0).unwrap();
        let ss0 = small_signal(&p, &bias0);
        assert_eq!(ss0.g_m, 0.0);
        let expected = p.i_pk * (1.0 + (p.p1 * (-0.2 - p.v_pk)).tanh()) * p.alpha;
        assert_relative_eq!(ss0.g_ds, expected, max_relative = 1e-12);
    }
}
