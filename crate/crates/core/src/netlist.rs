//! Text netlist format: the machine form of a schematic.
//!
//! Line-oriented: `<id> <kind> <nodes...> <key=value...>`, `#` comments,
//! dot directives (`.title`, `.temp`, `.f0`, `.model`, `.include`).
//! Node `0` is ground and must be referenced by at least one element.
//! Values accept scientific notation and SPICE-style suffixes
//! (f p n u m k meg g t).
//!
//! ```text
//! # demo fragment
//! .title RC divider
//! .model drv phemt ipk=24m vpk=-0.133 p1=1.649 alpha=1.5 lambda=0.01
//! p1   PORT in  0  z0=50 num=1
//! r1   R    in  n1 r=50
//! c1   C    n1  0  c=1p
//! m1   FET  n1  n2 0 model=drv
//! vdd  VDC  n2  0  v=6
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::device::PhemtParams;
use crate::error::{Error, Result};

/// One parsed element instance.
#[derive(Debug, Clone)]
pub struct Element {
    pub id: String,
    pub kind: ElementKind,
    pub nodes: Vec<String>,
    /// 1-based source line (0 for programmatically built netlists).
    pub line: usize,
}

/// Structural equality: the source line is a diagnostic, not structure.
impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.kind == other.kind && self.nodes == other.nodes
    }
}

/// Element kinds understood by the analyses.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementKind {
    /// Resistor, ohms.
    Resistor { ohms: f64 },
    /// Capacitor, farads.
    Capacitor { farads: f64 },
    /// Inductor, henries.
    Inductor { henries: f64 },
    /// Ideal transmission line between two nodes (common ground return).
    Tline {
        z0: f64,
        degrees: f64,
        f_ref: f64,
        loss_db_per_mm: Option<f64>,
        length_mm: Option<f64>,
    },
    /// Open-circuited shunt stub at one node.
    OpenStub { z0: f64, degrees: f64, f_ref: f64 },
    /// Short-circuited shunt stub at one node.
    ShortStub { z0: f64, degrees: f64, f_ref: f64 },
    /// DC voltage source (v = 0 doubles as a current probe).
    Vdc { volts: f64 },
    /// DC current source.
    Idc { amps: f64 },
    /// Analysis port: z0 termination; `num = 1` is the RF drive port.
    Port { z0: f64, num: u32 },
    /// FET instance referencing a `.model`; optional width/finger rescale.
    Fet {
        model: String,
        width: Option<f64>,
        n_fingers: Option<u32>,
    },
    /// Cubic conductance i = g1*v + g3*v^3 (test element).
    Cubic { g1: f64, g3: f64 },
}

impl ElementKind {
    /// Expected node count for each kind.
    pub fn node_count(&self) -> usize {
        match self {
            ElementKind::OpenStub { .. } | ElementKind::ShortStub { .. } => 1,
            ElementKind::Fet { .. } => 3,
            _ => 2,
        }
    }

    fn keyword(&self) -> &'static str {
        match self {
            ElementKind::Resistor { .. } => "R",
            ElementKind::Capacitor { .. } => "C",
            ElementKind::Inductor { .. } => "L",
            ElementKind::Tline { .. } => "TL",
            ElementKind::OpenStub { .. } => "OSTUB",
            ElementKind::ShortStub { .. } => "SSTUB",
            ElementKind::Vdc { .. } => "VDC",
            ElementKind::Idc { .. } => "IDC",
            ElementKind::Port { .. } => "PORT",
            ElementKind::Fet { .. } => "FET",
            ElementKind::Cubic { .. } => "CUBIC",
        }
    }
}

/// A parsed, validated netlist.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    pub title: String,
    /// Kelvin; carried as metadata, unused by the models.
    pub temperature: f64,
    /// Optional design frequency used by analyses when the caller gives
    /// none.
    pub f0: Option<f64>,
    pub elements: Vec<Element>,
    pub models: BTreeMap<String, PhemtParams>,
}

impl Default for Netlist {
    fn default() -> Self {
        Self {
            title: String::new(),
            temperature: 300.0,
            f0: None,
            elements: Vec::new(),
            models: BTreeMap::new(),
        }
    }
}

impl Netlist {
    /// All PORT elements in `num` order.
    pub fn ports(&self) -> Vec<&Element> {
        let mut ports: Vec<&Element> = self
            .elements
            .iter()
            .filter(|e| matches!(e.kind, ElementKind::Port { .. }))
            .collect();
        ports.sort_by_key(|e| match e.kind {
            ElementKind::Port { num, .. } => num,
            _ => unreachable!(),
        });
        ports
    }

    /// Checks the HB precondition: exactly one port with num = 1.
    pub fn rf_port(&self) -> Result<&Element> {
        let drives: Vec<&Element> = self
            .elements
            .iter()
            .filter(|e| matches!(e.kind, ElementKind::Port { num: 1, .. }))
            .collect();
        match drives.len() {
            1 => Ok(drives[0]),
            0 => Err(Error::Analysis(
                "netlist has no RF source (port with num=1)".into(),
            )),
            n => Err(Error::Analysis(format!(
                "netlist has {n} RF sources (ports with num=1), exactly one required"
            ))),
        }
    }

    /// Serializes back to the text format (stable ordering: directives,
    /// models by name, elements in definition order).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, ".title {}", self.title);
        }
        let _ = writeln!(out, ".temp {}", fmt_num(self.temperature));
        if let Some(f0) = self.f0 {
            let _ = writeln!(out, ".f0 {}", fmt_num(f0));
        }
        for (name, p) in &self.models {
            let _ = writeln!(
                out,
                ".model {name} phemt ipk={} vpk={} p1={} alpha={} lambda={} cgs={} cgd={} cds={} rg={} rd={} rs={} w={} nf={}",
                fmt_num(p.i_pk), fmt_num(p.v_pk), fmt_num(p.p1), fmt_num(p.alpha),
                fmt_num(p.lambda_mod), fmt_num(p.c_gs), fmt_num(p.c_gd), fmt_num(p.c_ds),
                fmt_num(p.r_g), fmt_num(p.r_d), fmt_num(p.r_s), fmt_num(p.unit_width), p.n_fingers
            );
        }
        for e in &self.elements {
            let nodes = e.nodes.join(" ");
            let kw = e.kind.keyword();
            let params = match &e.kind {
                ElementKind::Resistor { ohms } => format!("r={}", fmt_num(*ohms)),
                ElementKind::Capacitor { farads } => format!("c={}", fmt_num(*farads)),
                ElementKind::Inductor { henries } => format!("l={}", fmt_num(*henries)),
                ElementKind::Tline {
                    z0,
                    degrees,
                    f_ref,
                    loss_db_per_mm,
                    length_mm,
                } => {
                    let mut s = format!(
                        "z0={} deg={} fref={}",
                        fmt_num(*z0),
                        fmt_num(*degrees),
                        fmt_num(*f_ref)
                    );
                    if let Some(l) = loss_db_per_mm {
                        let _ = write!(s, " lossdb={}", fmt_num(*l));
                    }
                    if let Some(l) = length_mm {
                        let _ = write!(s, " lenmm={}", fmt_num(*l));
                    }
                    s
                }
                ElementKind::OpenStub { z0, degrees, f_ref }
                | ElementKind::ShortStub { z0, degrees, f_ref } => format!(
                    "z0={} deg={} fref={}",
                    fmt_num(*z0),
                    fmt_num(*degrees),
                    fmt_num(*f_ref)
                ),
                ElementKind::Vdc { volts } => format!("v={}", fmt_num(*volts)),
                ElementKind::Idc { amps } => format!("i={}", fmt_num(*amps)),
                ElementKind::Port { z0, num } => format!("z0={} num={num}", fmt_num(*z0)),
                ElementKind::Fet {
                    model,
                    width,
                    n_fingers,
                } => {
                    let mut s = format!("model={model}");
                    if let Some(w) = width {
                        let _ = write!(s, " w={}", fmt_num(*w));
                    }
                    if let Some(nf) = n_fingers {
                        let _ = write!(s, " nf={nf}");
                    }
                    s
                }
                ElementKind::Cubic { g1, g3 } => {
                    format!("g1={} g3={}", fmt_num(*g1), fmt_num(*g3))
                }
            };
            let _ = writeln!(out, "{} {} {} {}", e.id, kw, nodes, params);
        }
        out
    }

    /// Structural validation: unique ids, referenced models defined, node
    /// counts per kind, ground referenced somewhere, positive values.
    pub fn validate(&self) -> Result<()> {
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        let mut has_ground = false;
        for e in &self.elements {
            if let Some(&prev) = seen.get(e.id.as_str()) {
                return Err(Error::Netlist {
                    line: e.line,
                    msg: format!("duplicate id '{}' (first defined at line {prev})", e.id),
                });
            }
            seen.insert(&e.id, e.line);
            if e.nodes.len() != e.kind.node_count() {
                return Err(Error::Netlist {
                    line: e.line,
                    msg: format!(
                        "'{}' expects {} nodes, got {}",
                        e.id,
                        e.kind.node_count(),
                        e.nodes.len()
                    ),
                });
            }
            if e.nodes.iter().any(|n| n == "0") {
                has_ground = true;
            }
            let positive = |v: f64, what: &str| -> Result<()> {
                if v <= 0.0 || !v.is_finite() {
                    return Err(Error::Netlist {
                        line: e.line,
                        msg: format!("'{}': {what} must be > 0, got {v}", e.id),
                    });
                }
                Ok(())
            };
            match &e.kind {
                ElementKind::Resistor { ohms } => positive(*ohms, "r")?,
                ElementKind::Capacitor { farads } => positive(*farads, "c")?,
                ElementKind::Inductor { henries } => positive(*henries, "l")?,
                ElementKind::Tline { z0, degrees, f_ref, .. } => {
                    positive(*z0, "z0")?;
                    positive(*degrees, "deg")?;
                    positive(*f_ref, "fref")?;
                }
                ElementKind::OpenStub { z0, degrees, f_ref }
                | ElementKind::ShortStub { z0, degrees, f_ref } => {
                    positive(*z0, "z0")?;
                    positive(*degrees, "deg")?;
                    positive(*f_ref, "fref")?;
                }
                ElementKind::Port { z0, .. } => positive(*z0, "z0")?,
                ElementKind::Fet { model, .. } => {
                    if !self.models.contains_key(model) {
                        return Err(Error::Netlist {
                            line: e.line,
                            msg: format!("'{}' references undefined model '{model}'", e.id),
                        });
                    }
                }
                _ => {}
            }
        }
        if !self.elements.is_empty() && !has_ground {
            return Err(Error::Netlist {
                line: 0,
                msg: "no element references the ground node '0'".into(),
            });
        }
        // port numbers unique
        let mut nums = Vec::new();
        for p in self.ports() {
            if let ElementKind::Port { num, .. } = p.kind {
                if nums.contains(&num) {
                    return Err(Error::Netlist {
                        line: p.line,
                        msg: format!("duplicate port number {num}"),
                    });
                }
                nums.push(num);
            }
        }
        for m in self.models.values() {
            m.validate()?;
        }
        Ok(())
    }
}

fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e6).contains(&a) && v == (v as i64) as f64 {
        format!("{}", v as i64)
    } else {
        let s = format!("{v:e}");
        s
    }
}

/// Parses a numeric token with an optional SPICE-style suffix. The
/// suffix is folded into the decimal exponent before parsing so that
/// `200u` and `200e-6` give bit-identical values.
pub fn parse_value(tok: &str) -> Option<f64> {
    let t = tok.trim().to_ascii_lowercase();
    let (num_part, exp) = if let Some(stripped) = t.strip_suffix("meg") {
        (stripped, 6i32)
    } else if let Some(last) = t.chars().last() {
        match last {
            'f' if !t.ends_with("inf") => (&t[..t.len() - 1], -15),
            'p' => (&t[..t.len() - 1], -12),
            'n' => (&t[..t.len() - 1], -9),
            'u' => (&t[..t.len() - 1], -6),
            'm' => (&t[..t.len() - 1], -3),
            'k' => (&t[..t.len() - 1], 3),
            'g' => (&t[..t.len() - 1], 9),
            't' => (&t[..t.len() - 1], 12),
            _ => (t.as_str(), 0),
        }
    } else {
        (t.as_str(), 0)
    };
    if exp == 0 {
        return num_part.parse::<f64>().ok();
    }
    // a suffixed token must be a plain decimal (no exponent of its own)
    if num_part.is_empty() || num_part.contains('e') {
        return None;
    }
    num_part.parse::<f64>().ok()?; // syntax check
    format!("{num_part}e{exp}").parse::<f64>().ok()
}

struct LineCtx<'a> {
    line: usize,
    toks: Vec<&'a str>,
}

impl<'a> LineCtx<'a> {
    fn kv(&self) -> Result<BTreeMap<String, String>> {
        let mut map = BTreeMap::new();
        for t in &self.toks {
            if let Some((k, v)) = t.split_once('=') {
                map.insert(k.to_ascii_lowercase(), v.to_string());
            }
        }
        Ok(map)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Netlist {
            line: self.line,
            msg: msg.into(),
        }
    }
}

fn get_num(ctx: &LineCtx, kv: &BTreeMap<String, String>, key: &str) -> Result<f64> {
    let raw = kv
        .get(key)
        .ok_or_else(|| ctx.err(format!("missing parameter '{key}'")))?;
    parse_value(raw).ok_or_else(|| ctx.err(format!("bad numeric value '{raw}' for '{key}'")))
}

fn get_num_opt(ctx: &LineCtx, kv: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>> {
    match kv.get(key) {
        None => Ok(None),
        Some(raw) => parse_value(raw)
            .map(Some)
            .ok_or_else(|| ctx.err(format!("bad numeric value '{raw}' for '{key}'"))),
    }
}

/// Parses netlist text. Include directives are resolved relative to
/// `base_dir` when given; without it, `.include` is an error.
pub fn parse_netlist_with_includes(text: &str, base_dir: Option<&Path>) -> Result<Netlist> {
    let mut nl = Netlist::default();
    parse_into(text, base_dir, &mut nl, 0)?;
    nl.validate()?;
    Ok(nl)
}

/// Parses netlist text with no include resolution.
pub fn parse_netlist(text: &str) -> Result<Netlist> {
    parse_netlist_with_includes(text, None)
}

/// Reads and parses a netlist file; `.include` paths resolve relative to
/// the file's directory.
pub fn read_netlist(path: &Path) -> Result<Netlist> {
    let text = std::fs::read_to_string(path)?;
    parse_netlist_with_includes(&text, path.parent())
}

fn parse_into(text: &str, base_dir: Option<&Path>, nl: &mut Netlist, depth: usize) -> Result<()> {
    if depth > 8 {
        return Err(Error::Netlist {
            line: 0,
            msg: "include depth exceeds 8".into(),
        });
    }
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let ctx = LineCtx { line, toks };
        if let Some(directive) = ctx.toks[0].strip_prefix('.') {
            match directive.to_ascii_lowercase().as_str() {
                "title" => nl.title = ctx.toks[1..].join(" "),
                "temp" => {
                    let v = ctx
                        .toks
                        .get(1)
                        .and_then(|t| parse_value(t))
                        .ok_or_else(|| ctx.err("bad .temp value"))?;
                    nl.temperature = v;
                }
                "f0" => {
                    let v = ctx
                        .toks
                        .get(1)
                        .and_then(|t| parse_value(t))
                        .ok_or_else(|| ctx.err("bad .f0 value"))?;
                    nl.f0 = Some(v);
                }
                "model" => parse_model(&ctx, nl)?,
                "include" => {
                    let rel = ctx
                        .toks
                        .get(1)
                        .ok_or_else(|| ctx.err("missing .include path"))?;
                    let dir = base_dir
                        .ok_or_else(|| ctx.err(".include not allowed without a base path"))?;
                    let path = dir.join(rel);
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        ctx.err(format!("cannot read include '{}': {e}", path.display()))
                    })?;
                    parse_into(&text, path.parent(), nl, depth + 1)?;
                }
                other => return Err(ctx.err(format!("unknown directive '.{other}'"))),
            }
            continue;
        }
        if ctx.toks.len() < 2 {
            return Err(ctx.err("expected '<id> <kind> <nodes...> <key=value...>'"));
        }
        let id = ctx.toks[0].to_string();
        let kind_kw = ctx.toks[1].to_ascii_uppercase();
        let rest: Vec<&str> = ctx.toks[2..].to_vec();
        let nodes: Vec<String> = rest
            .iter()
            .take_while(|t| !t.contains('='))
            .map(|s| s.to_string())
            .collect();
        let kv_ctx = LineCtx {
            line,
            toks: rest[nodes.len()..].to_vec(),
        };
        let kv = kv_ctx.kv()?;
        let kind = match kind_kw.as_str() {
            "R" => ElementKind::Resistor {
                ohms: get_num(&kv_ctx, &kv, "r")?,
            },
            "C" => ElementKind::Capacitor {
                farads: get_num(&kv_ctx, &kv, "c")?,
            },
            "L" => ElementKind::Inductor {
                henries: get_num(&kv_ctx, &kv, "l")?,
            },
            "TL" => ElementKind::Tline {
                z0: get_num(&kv_ctx, &kv, "z0")?,
                degrees: get_num(&kv_ctx, &kv, "deg")?,
                f_ref: get_num(&kv_ctx, &kv, "fref")?,
                loss_db_per_mm: get_num_opt(&kv_ctx, &kv, "lossdb")?,
                length_mm: get_num_opt(&kv_ctx, &kv, "lenmm")?,
            },
            "OSTUB" => ElementKind::OpenStub {
                z0: get_num(&kv_ctx, &kv, "z0")?,
                degrees: get_num(&kv_ctx, &kv, "deg")?,
                f_ref: get_num(&kv_ctx, &kv, "fref")?,
            },
            "SSTUB" => ElementKind::ShortStub {
                z0: get_num(&kv_ctx, &kv, "z0")?,
                degrees: get_num(&kv_ctx, &kv, "deg")?,
                f_ref: get_num(&kv_ctx, &kv, "fref")?,
            },
            "VDC" => ElementKind::Vdc {
                volts: get_num(&kv_ctx, &kv, "v")?,
            },
            "IDC" => ElementKind::Idc {
                amps: get_num(&kv_ctx, &kv, "i")?,
            },
            "PORT" => ElementKind::Port {
                z0: get_num(&kv_ctx, &kv, "z0")?,
                num: get_num(&kv_ctx, &kv, "num")? as u32,
            },
            "FET" => ElementKind::Fet {
                model: kv
                    .get("model")
                    .cloned()
                    .ok_or_else(|| kv_ctx.err("FET requires model=<name>"))?,
                width: get_num_opt(&kv_ctx, &kv, "w")?,
                n_fingers: get_num_opt(&kv_ctx, &kv, "nf")?.map(|v| v as u32),
            },
            "CUBIC" => ElementKind::Cubic {
                g1: get_num(&kv_ctx, &kv, "g1")?,
                g3: get_num(&kv_ctx, &kv, "g3")?,
            },
            other => return Err(ctx.err(format!("unknown element kind '{other}'"))),
        };
        nl.elements.push(Element {
            id,
            kind,
            nodes,
            line,
        });
    }
    Ok(())
}

fn parse_model(ctx: &LineCtx, nl: &mut Netlist) -> Result<()> {
    // .model <name> phemt key=value...
    let name = ctx
        .toks
        .get(1)
        .ok_or_else(|| ctx.err("missing model name"))?
        .to_string();
    let family = ctx
        .toks
        .get(2)
        .ok_or_else(|| ctx.err("missing model family"))?;
    if !family.eq_ignore_ascii_case("phemt") {
        return Err(ctx.err(format!("unknown model family '{family}'")));
    }
    if nl.models.contains_key(&name) {
        return Err(ctx.err(format!("duplicate model '{name}'")));
    }
    let kv_ctx = LineCtx {
        line: ctx.line,
        toks: ctx.toks[3..].to_vec(),
    };
    let kv = kv_ctx.kv()?;
    let g = |key: &str, default: f64| -> Result<f64> {
        match kv.get(key) {
            None => Ok(default),
            Some(raw) => parse_value(raw)
                .ok_or_else(|| kv_ctx.err(format!("bad numeric value '{raw}' for '{key}'"))),
        }
    };
    let p = PhemtParams {
        i_pk: get_num(&kv_ctx, &kv, "ipk")?,
        v_pk: get_num(&kv_ctx, &kv, "vpk")?,
        p1: get_num(&kv_ctx, &kv, "p1")?,
        alpha: get_num(&kv_ctx, &kv, "alpha")?,
        lambda_mod: g("lambda", 0.0)?,
        c_gs: g("cgs", 0.0)?,
        c_gd: g("cgd", 0.0)?,
        c_ds: g("cds", 0.0)?,
        r_g: g("rg", 0.0)?,
        r_d: g("rd", 0.0)?,
        r_s: g("rs", 0.0)?,
        unit_width: g("w", 100e-6)?,
        n_fingers: g("nf", 2.0)? as u32,
    };
    p.validate().map_err(|e| ctx.err(e.to_string()))?;
    nl.models.insert(name, p);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_netlist() {
        let nl = parse_netlist("p1 PORT in 0 z0=50 num=1\nr1 R in 0 r=50\n").unwrap();
        assert_eq!(nl.elements.len(), 2);
        assert_eq!(nl.ports().len(), 1);
        assert!(nl.rf_port().is_ok());
    }

    #[test]
    fn value_suffixes() {
        assert_eq!(parse_value("0.5p"), Some(0.5e-12));
        assert_eq!(parse_value("35f"), Some(35e-15));
        assert_eq!(parse_value("2.39u"), Some(2.39e-6));
        assert_eq!(parse_value("6"), Some(6.0));
        assert_eq!(parse_value("90e9"), Some(90e9));
        assert_eq!(parse_value("1meg"), Some(1e6));
        assert_eq!(parse_value("3k"), Some(3e3));
        assert_eq!(parse_value("-0.7"), Some(-0.7));
        assert_eq!(parse_value("abc"), None);
    }

    #[test]
    fn duplicate_id_names_both_lines() {
        let err = parse_netlist("r1 R a 0 r=50\nr1 R b 0 r=25\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("r1"), "{msg}");
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn missing_ground_rejected() {
        let err = parse_netlist("r1 R a b r=50\n").unwrap_err();
        assert!(err.to_string().contains("ground"));
    }

    #[test]
    fn undefined_model_rejected() {
        let err = parse_netlist("m1 FET g d 0 model=nope\n").unwrap_err();
        assert!(err.to_string().contains("nope"));
    }

    #[test]
    fn comments_and_directives() {
        let text = "\
# full example
.title Test Amp   # trailing comment
.temp 300
.f0 90e9
.model d phemt ipk=24m vpk=-0.133 p1=1.65 alpha=1.5
m1 FET g d 0 model=d w=200u nf=4
vg VDC g 0 v=-0.7
vd VDC d 0 v=6
";
        let nl = parse_netlist(text).unwrap();
        assert_eq!(nl.title, "Test Amp");
        assert_eq!(nl.f0, Some(90e9));
        assert_eq!(nl.models.len(), 1);
        assert_eq!(nl.elements.len(), 3);
        match &nl.elements[0].kind {
            ElementKind::Fet { width, n_fingers, .. } => {
                assert_eq!(*width, Some(200e-6));
                assert_eq!(*n_fingers, Some(4));
            }
            _ => panic!("expected FET"),
        }
    }

    #[test]
    fn serialize_parse_round_trip() {
        let text = "\
.title roundtrip
.f0 1e9
.model d phemt ipk=24m vpk=-0.133 p1=1.65 alpha=1.5 lambda=0.01 cgs=35f
p1 PORT in 0 z0=50 num=1
t1 TL in mid z0=70.71 deg=90 fref=1g
s1 OSTUB mid z0=50 deg=30 fref=1g
m1 FET mid d 0 model=d
vd VDC d 0 v=6
p2 PORT d 0 z0=50 num=2
";
        let nl = parse_netlist(text).unwrap();
        let round = parse_netlist(&nl.serialize()).unwrap();
        assert_eq!(nl, round);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_netlist("r1 R a 0 r=50\nc1 C a 0\n").unwrap_err();
        match err {
            Error::Netlist { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
        let err = parse_netlist("x1 WIDGET a 0 v=2\n").unwrap_err();
        assert!(err.to_string().contains("WIDGET"));
    }

    #[test]
    fn wrong_node_count_rejected() {
        let err = parse_netlist("s1 OSTUB a b z0=50 deg=30 fref=1g\n").unwrap_err();
        assert!(err.to_string().contains("expects 1 nodes"));
    }

    #[test]
    fn includes_resolve_models() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("dev.lib"),
            ".model lib_dev phemt ipk=10m vpk=-0.2 p1=2 alpha=1.2\n",
        )
        .unwrap();
        let main = dir.path().join("top.net");
        std::fs::write(
            &main,
            ".include dev.lib\nm1 FET g d 0 model=lib_dev\nv1 VDC d 0 v=6\nvg VDC g 0 v=-0.4\n",
        )
        .unwrap();
        let nl = read_netlist(&main).unwrap();
        assert!(nl.models.contains_key("lib_dev"));
    }

    #[test]
    fn duplicate_port_numbers_rejected() {
        let err = parse_netlist(
            "p1 PORT a 0 z0=50 num=1\np2 PORT b 0 z0=50 num=1\nr1 R a b r=10\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate port number"));
    }
}
