//! The special fibre `t = -1`: `X_{-1}` as a quotient of `E x E'`, its map to
//! the quartic `Y`, and the Vinberg-model map.
//!
//! Projective identities are stored as expression strings and checked by
//! polynomial reduction in the suite.

use super::{Catalog, Entry};
use crate::arith::rat;
use crate::error::Result;
use crate::surface::DoubleCover;

fn formula(cat: &mut Catalog, name: &str, parts: &[(&str, &str)]) {
    let parts = parts.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    cat.push(name, Entry::Formula(parts));
}

pub(super) fn build(cat: &mut Catalog) -> Result<()> {
    let x = DoubleCover::parse("X_t", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None)?;
    cat.push("X_-1", Entry::Surface(x.specialize("t", &rat(-1))?.renamed("X_-1")));

    // (u : v : w) = (x : z : -1); sigma^2 = uvw(u-w)(v-w)(u-v)
    formula(cat, "X_-1(projective)", &[("sigma", "u*v*w*(u-w)*(v-w)*(u-v)")]);
    formula(cat, "ExE'", &[("t", "s*(s^2-1)"), ("y", "x*(1-x^2)")]);
    formula(
        cat,
        "quotient-ExE'",
        &[
            ("sigma", "x*s*(x*s+1)*(x+s)*t*y"),
            ("u", "x*s^2-x"),
            ("v", "x*s^2+s"),
            ("w", "x*s^2+s*x^2"),
        ],
    );
    // as usually transcribed; makes u - w vanish identically
    formula(
        cat,
        "quotient-ExE'-literal",
        &[
            ("sigma", "x*s*(x*s+1)*(x+s)*t*y"),
            ("u", "x*s^2-x"),
            ("v", "x*s^2+s"),
            ("w", "x*s^2+s^2*x"),
        ],
    );

    formula(cat, "Y", &[("X0^4", "X1*X2*X3*(X1+X2+X3)")]);
    formula(cat, "X_-1->Y", &[("X0", "sigma"), ("X1", "v*w*(v-w)"), ("X2", "-u*w*(u-w)"), ("X3", "u*v*(u-v)")]);

    formula(cat, "E4xE4'", &[("t", "s^4-1"), ("y", "x^4+1")]);
    formula(cat, "vinberg-map", &[("X0", "s*x"), ("X1", "y-1"), ("X2", "1+t"), ("X3", "1-t")]);
    Ok(())
}
