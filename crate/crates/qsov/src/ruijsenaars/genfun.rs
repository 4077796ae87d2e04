use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{dilog, rel, separation_variables, PhasePoint, Report, SeparationData};
use crate::error::Result;

/// `𝓛(ν; x, y) = Li_2(νxy) + Li_2(νx/y) + Li_2(νy/x) + Li_2(ν/(xy))`.
pub fn dilog_sum(nu: f64, x: C64, y: C64) -> C64 {
    [x * y, x / y, y / x, (x * y).inv()].iter().map(|z| dilog(z * nu)).sum()
}

/// `F̃(y_+, y_- | x_+, x_-)`; it does not depend on `y_+` once `x_+ = t^{-1/2} ξ y_+`.
pub fn f_tilde(_yp: C64, ym: C64, xp: C64, xm: C64, t: f64, xi: C64) -> C64 {
    let st = t.sqrt();
    let i = C64::new(0.0, 1.0);
    let w = xp / (xi * st);
    i * (dilog_sum(st, ym, xm) + dilog_sum(st, w, xm) - dilog_sum(t, w, ym)) - i * dilog(xm * xm) - i * dilog((xm * xm).inv())
}

/// The `±` coordinates of a two-particle phase point and its image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlusMinus {
    pub xp: C64,
    pub xm: C64,
    pub yp: C64,
    pub ym: C64,
    pub txp: C64,
    pub txm: C64,
    pub typ: C64,
    pub tym: C64,
}

impl PlusMinus {
    /// `x_+ = √(x_1 x_2)` principal, `x_- = x_1/x_+`, `y_+ = t^{1/2} ξ^{-1} x_+`,
    /// `y_- = y_1/y_+`.
    pub fn new(p: &PhasePoint, s: &SeparationData, t: f64, xi: C64) -> Self {
        let xp = (p.x[0] * p.x[1]).sqrt();
        let yp = xp * t.sqrt() / xi;
        PlusMinus {
            xp,
            xm: p.x[0] / xp,
            yp,
            ym: s.y[0] / yp,
            txp: (p.tx[0] * p.tx[1]).into(),
            txm: (p.tx[0] / p.tx[1]).into(),
            typ: s.ty[0] * s.ty[1],
            tym: s.ty[0] / s.ty[1],
        }
    }
}

/// Derivative system of `F̃`. Residuals are reported modulo `2π` in the real
/// part, the ambiguity of `i ln` on the right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingFunctionReport {
    pub report: Report,
    /// Whether any residual needed the `2π` reduction.
    pub branch_shifted: bool,
}

fn reduce_branch(r: C64) -> (C64, bool) {
    let k = (r.re / (2.0 * PI)).round();
    (C64::new(r.re - 2.0 * PI * k, r.im), k != 0.0)
}

pub fn generating_function_check(p: &PhasePoint, t: f64, xi: C64, h: f64, tol: f64) -> Result<GeneratingFunctionReport> {
    let s = separation_variables(p, t, xi)?;
    let v = PlusMinus::new(p, &s, t, xi);
    let i = C64::new(0.0, 1.0);
    let f = |yp: C64, ym: C64, xp: C64, xm: C64| f_tilde(yp, ym, xp, xm, t, xi);
    let (up, dn) = (h.exp(), (-h).exp());
    let d = |g: &dyn Fn(f64) -> C64| (g(up) - g(dn)) / (2.0 * h);
    let raw = [
        (
            "x+ dF/dx+ = i ln(Tx+/Ty+)",
            d(&|e| f(v.yp, v.ym, v.xp * e, v.xm)) - i * (v.txp / v.typ).ln(),
        ),
        ("x- dF/dx- = i ln Tx-", d(&|e| f(v.yp, v.ym, v.xp, v.xm * e)) - i * v.txm.ln()),
        ("y- dF/dy- = -i ln Ty-", d(&|e| f(v.yp, v.ym * e, v.xp, v.xm)) + i * v.tym.ln()),
        ("y+ dF/dy+ = 0", d(&|e| f(v.yp * e, v.ym, v.xp, v.xm))),
    ];
    let mut report = Report::new(tol);
    report.push("x+ = t^{-1/2} xi y+ with y+^2 = y1 y2", rel(v.yp * v.yp, s.y[0] * s.y[1]));
    let mut branch_shifted = false;
    for (name, r) in raw {
        let (r, shifted) = reduce_branch(r);
        branch_shifted |= shifted;
        report.push(name, r.norm());
    }
    Ok(GeneratingFunctionReport { report, branch_shifted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn derivative_system_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let p = PhasePoint::random(2, &mut rng);
            for xi in [C64::new(0.7, 0.0), C64::new(1.3, 0.2)] {
                let r = generating_function_check(&p, 0.5, xi, 1e-5, 1e-5).unwrap();
                r.report.ensure().unwrap();
            }
        }
    }

    #[test]
    fn branch_reduction() {
        let (r, s) = reduce_branch(C64::new(2.0 * PI + 1e-9, 3e-9));
        assert!(s && r.norm() < 1e-8);
        assert!(!reduce_branch(C64::new(0.1, 0.0)).1);
    }

    #[test]
    fn dilog_sum_symmetries() {
        let (x, y) = (C64::from_polar(1.0, 0.7), C64::new(0.4, 0.3));
        let a = dilog_sum(0.5, x, y);
        assert!((a - dilog_sum(0.5, y, x)).norm() < 1e-14);
        assert!((a - dilog_sum(0.5, x.inv(), y)).norm() < 1e-14);
    }
}
