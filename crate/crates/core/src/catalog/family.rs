//! The family over `Q(t)`: `X_t`, its quotient `V_t`, the Cremona chain to
//! `W_t`, the Kummer surface of `JC_t` and the split-Jacobian data.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Catalog, Entry, TangencyData};
use crate::arith::{QuadExt, QuadField, Rational};
use crate::error::Result;
use crate::surface::conic::{tangency_multiplicity, Conic, Line};
use crate::surface::cover::lift_str;
use crate::surface::kummer::{kummer_from_genus2, kummer_sum_map};
use crate::surface::{DoubleCover, EllipticCurveLong, FibrationData, RationalMap};

struct Builder {
    entries: Vec<(String, Entry)>,
    fields: HashMap<String, Arc<QuadField>>,
    surfaces: HashMap<String, Arc<DoubleCover>>,
}

impl Builder {
    fn field(&mut self, name: &str, d: &str) -> Result<()> {
        let f = QuadField::new(name, d.parse()?)?;
        self.fields.insert(name.into(), f.clone());
        self.entries.push((name.into(), Entry::Field(f)));
        Ok(())
    }

    fn f(&self, name: Option<&str>) -> Option<&Arc<QuadField>> {
        name.map(|n| &self.fields[n])
    }

    fn surface(&mut self, name: &str, chart: &[&str], cover: &str, twist: &str, branch: &str, field: Option<&str>) -> Result<()> {
        let s = DoubleCover::parse(name, chart, cover, twist, branch, self.f(field))?;
        self.add_surface(s);
        Ok(())
    }

    fn add_surface(&mut self, s: Arc<DoubleCover>) {
        self.surfaces.insert(s.name().into(), s.clone());
        self.entries.push((s.name().into(), Entry::Surface(s)));
    }

    fn map(&mut self, name: &str, src: &str, tgt: &str, images: &[&str], field: Option<&str>) -> Result<RationalMap> {
        let m = RationalMap::parse(name, &self.surfaces[src], &self.surfaces[tgt], images, self.f(field))?;
        self.entries.push((name.into(), Entry::Map(m.clone())));
        Ok(m)
    }

    fn add_map(&mut self, m: RationalMap) {
        self.entries.push((m.name().into(), Entry::Map(m)));
    }

    fn constant(&mut self, name: &str, value: &str, field: Option<&str>) -> Result<()> {
        let c = lift_str(value, self.f(field))?;
        self.entries.push((name.into(), Entry::Constant(c)));
        Ok(())
    }

    fn constants(&mut self, name: &str, values: &[&str], field: Option<&str>) -> Result<Vec<QuadExt>> {
        let cs = values.iter().map(|v| lift_str(v, self.f(field))).collect::<Result<Vec<_>>>()?;
        self.entries.push((name.into(), Entry::Constants(cs.clone())));
        Ok(cs)
    }

    fn function(&mut self, name: &str, host: &str, expr: &str, field: Option<&str>) -> Result<()> {
        let g = self.surfaces[host].function(expr, self.f(field))?;
        self.entries.push((name.into(), Entry::Function(g)));
        Ok(())
    }

    fn tangency(&mut self, name: &str, line: Option<&str>, conic: &str, vars: (&str, &str), field: Option<&str>) -> Result<()> {
        let f = self.f(field);
        let l = match line {
            Some(l) => Line::from_affine(&lift_str(l, f)?, vars.0, vars.1)?,
            None => Line::at_infinity(),
        };
        let c = Conic::from_affine(&lift_str(conic, f)?, vars.0, vars.1)?;
        let description = format!("line {} against conic {conic} = 0", line.map_or("at infinity".into(), |l| format!("{l} = 0")));
        // constructibility: the conic must be irreducible
        tangency_multiplicity(&l, &c)?;
        self.entries.push((name.into(), Entry::Tangency(Box::new(TangencyData { line: l, conic: c, description }))));
        Ok(())
    }
}

pub(super) fn build(cat: &mut Catalog, t: Option<&Rational>) -> Result<()> {
    let mut b = Builder { entries: Vec::new(), fields: HashMap::new(), surfaces: HashMap::new() };

    // generators: s^2 = -t for the Cremona chain, r^2 = 4 + 4t for the split Jacobian
    b.field("s", "-t")?;
    b.field("r", "4+4*t")?;

    b.surface("X_t", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None)?;
    b.surface("E_t", &["x"], "y", "1", "(x-1)*(x^2-1/(t+1))", None)?;
    b.surface("E_t^(t+1)", &["x"], "y", "t+1", "(x-1)*(x^2-1/(t+1))", None)?;

    // Nikulin involution and its quotient
    let iota = b.map("iota", "X_t", "X_t", &["1/z", "1/x", "-y/(x^2*z^2)"], None)?;
    b.surface("V_t", &["xi1", "xi2"], "eta", "1", "xi1*(xi1+t)*(xi1+xi2+1)*(xi2^2-4*xi1)", None)?;
    b.map("quotient", "X_t", "V_t", &["x/z", "x+1/z", "y*(x*z-1)/z^3"], None)?;

    // elliptic fibration alpha = y/(z(x+tz))
    let x_t = b.surfaces["X_t"].clone();
    let alpha = x_t.function("y/(z*(x+t*z))", None)?;
    let a2 = alpha.mul(&alpha)?;
    let ta2 = a2.scale(&lift_str("t", None)?)?;
    let xi = ta2.div(&x_t.chart_fn(0))?;
    let eta = xi.add(&ta2)?.div(&x_t.chart_fn(1))?;
    let one = x_t.function("1", None)?;
    let zero = x_t.function("0", None)?;
    let curve = EllipticCurveLong::new(one.sub(&a2)?, ta2.clone(), ta2.clone(), zero.clone(), zero.clone());
    let fib = FibrationData { involution: iota, alpha, xi, eta, curve, section: (zero.clone(), zero.clone()) };
    let mut perturbed = fib.clone();
    perturbed.section = (zero, ta2);
    b.entries.push(("fibration".into(), Entry::Fibration(Box::new(fib))));
    b.entries.push(("fibration-perturbed-section".into(), Entry::Fibration(Box::new(perturbed))));

    // branch locus of V_t: four lines and the conic xi2^2 = 4 xi1
    let conic_v = "xi2^2-4*xi1";
    let v = ("xi1", "xi2");
    b.tangency("branch-line-xi1", Some("xi1"), conic_v, v, None)?;
    b.tangency("branch-line-xi1+xi2+1", Some("xi1+xi2+1"), conic_v, v, None)?;
    b.tangency("branch-line-infinity", None, conic_v, v, None)?;
    b.tangency("branch-line-xi1+t", Some("xi1+t"), conic_v, v, None)?;

    // first Cremona transformation
    b.surface(
        "S_1",
        &["xi3", "xi4"],
        "eta1",
        "1",
        "xi3*xi4*(xi3+xi4+1)*(2*xi3^2+2*t*xi4^2+xi3+t*xi4)",
        None,
    )?;
    let c1 = b.map(
        "cremona1",
        "V_t",
        "S_1",
        &[
            "xi1*(xi2+2)/(xi2^2-4*xi1)",
            "(xi2+2*xi1)/(xi2^2-4*xi1)",
            "eta*xi2*(xi2+2)*(2*xi1+xi2)/(xi2^2-4*xi1)^3",
        ],
        None,
    )?;
    // second Cremona transformation, over Q(t)(s)
    b.surface(
        "S_2",
        &["xi5", "xi6"],
        "eta2",
        "t*(t+1)",
        "xi5*xi6*((1+s)*xi5-s*xi6+s^2+s)*((1-s)*xi6+s*xi5+s^2-s)*((2+2*s)*xi5+(2-2*s)*xi6+s^2-1)",
        Some("s"),
    )?;
    let c2 = b.map(
        "cremona2",
        "S_1",
        "S_2",
        &[
            "(s-1)*(xi3^2-s^3*xi4^2+(s^2-s)*xi3*xi4)/(xi3+s^2*xi4)",
            "(s^2+s)*((s-s^2)*xi4^2+(s-1)*xi3*xi4+s*xi4)/(xi3+s^2*xi4)",
            "eta1*(1-s)*(xi3-s*xi4)*((s*t+s)*xi4-(t+1)*xi3-t+s)/(xi3-t*xi4)^2",
        ],
        Some("s"),
    )?;
    b.surface(
        "W_t",
        &["xi7", "xi8"],
        "eta2",
        "t*(t+1)",
        "(xi7^2+t*xi8^2)*(4*xi7-4*t*xi8-t-1)*((xi7-2*t*xi8-t)^2+t*(xi8+1)^2)",
        None,
    )?;
    let lin = b.map("linear78", "S_2", "W_t", &["(xi5+xi6)/2", "(xi5-xi6)/(2*s)", "eta2"], Some("s"))?;
    let phi = c1.then(&c2)?.then(&lin)?.renamed("phi");
    b.add_map(phi.clone());
    b.add_map(phi.conjugate());
    b.constant("phi-form-sum", "1", None)?;

    // W_t in the coordinates xi9, xi10 tangent to xi10^2 = 4 xi9
    let roots = b.constants("b", &["0", "2+2*s", "2-2*s", "-2+2*s", "-2-2*s"], Some("s"))?;
    let lines: Vec<String> = roots.iter().map(|r| format!("(xi9-({0})*xi10+({0})^2)", r.to_ratfunc())).collect();
    b.surface("W_t(xi9,xi10)", &["xi9", "xi10"], "eta2", "2^18*t*(t+1)", &lines.join("*"), Some("s"))?;
    b.constant("W-twist", "2^18*t*(t+1)", None)?;
    b.map(
        "coords910",
        "W_t(xi9,xi10)",
        "W_t",
        &["(xi9-2*s*xi10-4*t+4)/16", "xi10/(8*s)-1/2", "eta2"],
        Some("s"),
    )?;
    b.function("conic-W", "W_t", "4*xi7+4*t*xi8^2-1", None)?;
    b.function("conic-W910", "W_t(xi9,xi10)", "xi10^2-4*xi9", None)?;
    for (i, line) in lines.iter().enumerate() {
        b.tangency(&format!("kummer-line-b{}", i + 1), Some(line), "xi10^2-4*xi9", ("xi9", "xi10"), Some("s"))?;
    }
    b.tangency("kummer-line-infinity", None, "xi10^2-4*xi9", ("xi9", "xi10"), None)?;

    // genus-2 curve and its Kummer surface, untwisted and twisted by -t-1
    b.surface("C_t", &["x"], "y", "1", "x*(x^2-4*x+4+4*t)*(x^2+4*x+4+4*t)", None)?;
    let f_c: crate::arith::Poly = "x*(x^2-4*x+4+4*t)*(x^2+4*x+4+4*t)".parse()?;
    b.add_surface(kummer_from_genus2("Km(JC_t)", &f_c, "x", QuadExt::one(), None)?);
    b.add_surface(kummer_from_genus2("Km(JC_t)^(-t-1)", &f_c, "x", lift_str("-t-1", None)?, None)?);
    let psi = b.map(
        "psi",
        "Km(JC_t)^(-t-1)",
        "W_t",
        &["(xi-2*s*zeta-4*t+4)/16", "zeta/(8*s)-1/2", "eta/(2^9*s)"],
        Some("s"),
    )?;
    b.add_map(psi.conjugate());
    b.map(
        "psi^-1",
        "W_t",
        "Km(JC_t)^(-t-1)",
        &["16*xi7-16*t*xi8-4*t-4", "8*s*xi8+4*s", "2^9*s*eta2"],
        Some("s"),
    )?;
    b.constant("psi-form-factor", "4", None)?;

    // the second involution of C_t and the quotient elliptic curves
    b.map("phi_C", "C_t", "C_t", &["r^2/x", "r^3*y/x^3"], Some("r"))?;
    b.map("tau", "C_t", "C_t", &["x", "-y"], None)?;
    b.surface("F_t", &["xi"], "eta", "1", "-8*r^3*(xi-1)*(xi^2-1/(t+1))", Some("r"))?;
    b.surface("F_t'", &["xi"], "eta", "1", "8*r^3*(xi-1)*(xi^2-1/(t+1))", Some("r"))?;
    let alpha = b.map("alpha", "C_t", "F_t", &["-x/(2*r)-r/(2*x)", "y*(x+r)/x^2"], Some("r"))?;
    let alpha_c = alpha.conjugate();
    b.add_map(alpha_c.clone());
    b.constants("alpha-form", &["r/(8*t+8)", "1/2"], Some("r"))?;
    b.constants("alpha'-form", &["-r/(8*t+8)", "1/2"], Some("r"))?;
    b.constant("d", "r/(8*t+8)", Some("r"))?;

    // Kummer surfaces of F_t x F_t' and of E_t x E_t^(t+1)
    let g = "(x1-1)*(x1^2-1/(t+1))*(x2-1)*(x2^2-1/(t+1))";
    b.surface("Km(F_t x F_t')", &["x1", "x2"], "y", "-1", &format!("64*r^6*{g}"), Some("r"))?;
    let rho = kummer_sum_map("rho", &alpha, &alpha_c, &b.surfaces["Km(JC_t)"], &b.surfaces["Km(F_t x F_t')"])?;
    b.add_map(rho);
    b.surface("U_t", &["x1", "x2"], "y", "-1", g, None)?;
    b.map("ytilde", "Km(F_t x F_t')", "U_t", &["x1", "x2", "y/(8*r^3)"], Some("r"))?;
    b.surface("Km(E_t x E_t^(t+1))", &["x1", "x2"], "y", "t+1", g, None)?;
    b.constant("rho-form", "-1/(16*t+16)^2", None)?;

    for (name, e) in b.entries {
        let e = match t {
            None => e,
            Some(v) => specialize(e, v)?,
        };
        cat.push(&name, e);
    }
    Ok(())
}

fn specialize(e: Entry, v: &Rational) -> Result<Entry> {
    Ok(match e {
        Entry::Field(f) => match QuadExt::specialize_field(&f, "t", v)? {
            Some(g) => Entry::Field(g),
            None => Entry::Constant(f.generator().specialize("t", v)?),
        },
        Entry::Surface(s) => Entry::Surface(s.specialize("t", v)?),
        Entry::Map(m) => Entry::Map(m.specialize("t", v)?),
        Entry::Function(g) => {
            let host = g.host().specialize("t", v)?;
            Entry::Function(g.specialize("t", v, &host)?)
        }
        Entry::Constant(c) => Entry::Constant(c.specialize("t", v)?),
        Entry::Constants(cs) => Entry::Constants(cs.iter().map(|c| c.specialize("t", v)).collect::<Result<_>>()?),
        Entry::Fibration(f) => {
            let involution = f.involution.specialize("t", v)?;
            let host = involution.source().clone();
            let sp = |g: &crate::surface::SurfaceFunction| g.specialize("t", v, &host);
            let c = &f.curve;
            Entry::Fibration(Box::new(FibrationData {
                alpha: sp(&f.alpha)?,
                xi: sp(&f.xi)?,
                eta: sp(&f.eta)?,
                curve: EllipticCurveLong::new(sp(&c.a1)?, sp(&c.a2)?, sp(&c.a3)?, sp(&c.a4)?, sp(&c.a6)?),
                section: (sp(&f.section.0)?, sp(&f.section.1)?),
                involution,
            }))
        }
        Entry::Tangency(td) => {
            let sp = |x: &QuadExt| x.specialize("t", v);
            let line = Line([sp(&td.line.0[0])?, sp(&td.line.0[1])?, sp(&td.line.0[2])?]);
            let mut m = td.conic.0.clone();
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = sp(x)?;
                }
            }
            Entry::Tangency(Box::new(TangencyData { line, conic: Conic(m), description: td.description }))
        }
        other => other,
    })
}
