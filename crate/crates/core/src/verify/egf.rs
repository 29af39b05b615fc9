//! Exponential generating functions, checked after clearing denominators.

use super::{same, CheckError, CheckResultOf, Check, Ctx, Outcome, Suite};
use crate::egfseries::{cross_multiplied_mismatch, TruncatedEgf};
use crate::exactalg::{bind, c, v, MultiPoly, Var};
use crate::families::{family_sequence, oracle, Family, FamilySpec};
use crate::permstats::{perm_distribution, PermClass, PermStat};

fn x() -> MultiPoly {
    v(Var::X)
}
fn y() -> MultiPoly {
    v(Var::Y)
}

fn exp(m: &MultiPoly, order: usize) -> TruncatedEgf {
    TruncatedEgf::exp_linear(m, order)
}

fn seq(f: Family, n_max: usize) -> Result<Vec<MultiPoly>, CheckError> {
    Ok(family_sequence(&FamilySpec::new(f), n_max)?)
}

/// `rhs * den == num` through order `order`.
fn cross(num: TruncatedEgf, den: TruncatedEgf, rhs: TruncatedEgf, order: usize) -> CheckResultOf {
    let failure = cross_multiplied_mismatch(&num, &den, &rhs)?
        .map(|(n, lhs, num)| format!("order {n}: {lhs}  !=  {num}"));
    Ok(Outcome { range: Some([0, order]), failure, note: None })
}

/// `y e^{a x z} - x e^{a y z}`.
fn d_xy(a: &MultiPoly, order: usize) -> Result<TruncatedEgf, CheckError> {
    Ok(exp(&(a * &x()), order).scale(&y()).sub(&exp(&(a * &y()), order).scale(&x()))?)
}

/// `e^{a x z} - x e^{a z}`.
fn d_x(a: &MultiPoly, order: usize) -> Result<TruncatedEgf, CheckError> {
    Ok(exp(&(a * &x()), order).sub(&exp(a, order).scale(&x()))?)
}

fn a_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let a = seq(Family::AXys, n + 1)?;
    let d = d_xy(&c(1), n)?;
    let y_x = &y() - &x();
    let num = exp(&(&y() + &v(Var::S)), n).scale(&y_x.pow(2));
    cross(num, d.mul(&d)?, TruncatedEgf::from_coeffs(a[1..].to_vec()), n)
}

fn d_xys_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let num = exp(&v(Var::S), n).scale(&(&y() - &x()));
    cross(num, d_xy(&c(1), n)?, TruncatedEgf::from_coeffs(seq(Family::DXys, n)?), n)
}

fn atilde_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let num = exp(&y(), n).scale(&(&y() - &x()));
    cross(num, d_xy(&c(1), n)?, TruncatedEgf::from_coeffs(seq(Family::AtildeXy, n)?), n)
}

fn d_b_xq_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let q = v(Var::Q);
    let num = exp(&q, n).scale(&(&c(1) - &x()));
    cross(num, d_x(&(&c(1) + &q), n)?, TruncatedEgf::from_coeffs(seq(Family::DbXq, n)?), n)
}

fn d_nr_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    for r in 1..=3u8 {
        let d = family_sequence(&FamilySpec::with_r(Family::DNr, r), n)?;
        let num = exp(&x().scale_int(r as i64 - 1), n).scale(&(&c(1) - &x()));
        let out = cross(num, d_x(&c(r as i64), n)?, TruncatedEgf::from_coeffs(d), n)?;
        if let Some(f) = out.failure {
            return Ok(Outcome { failure: Some(format!("r = {r}, {f}")), ..out });
        }
    }
    Ok(Outcome { range: Some([0, n]), failure: None, note: Some("r = 1, 2, 3".into()) })
}

/// The `p`-th power identity for `B_n(x,y,s,t,p,q)`, at `p = 1, 2, 3`.
/// Each coefficient has degree at most `n` in `p`, so agreement at `n + 1`
/// integer values would settle the polynomial identity.
fn b_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let b = seq(Family::BXystpq, n)?;
    let q = v(Var::Q);
    let lead = &v(Var::S) + &(&q * &v(Var::T));
    let dq = d_xy(&(&c(1) + &q), n)?;
    for p in 1..=3i64 {
        let bp: Vec<MultiPoly> = b.iter().map(|e| e.substitute(&bind([(Var::P, c(p))]))).collect();
        let num = exp(&lead.scale_int(p), n).scale(&(&y() - &x()).pow(p as u32));
        let out = cross(num, dq.pow(p as u32), TruncatedEgf::from_coeffs(bp), n)?;
        if let Some(f) = out.failure {
            return Ok(Outcome { failure: Some(format!("p = {p}, {f}")), ..out });
        }
    }
    Ok(Outcome { range: Some([0, n]), failure: None, note: Some("p = 1, 2, 3".into()) })
}

fn phi_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let phi = seq(Family::Phi, n)?;
    let one_minus = TruncatedEgf::constant(c(1), n).sub(&TruncatedEgf::from_coeffs(phi))?;
    cross(d_xy(&c(1), n)?, TruncatedEgf::constant(&y() - &x(), n), one_minus, n)
}

fn d_x_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    for f in [Family::DX, Family::PstarX] {
        let out = cross(
            TruncatedEgf::constant(&c(1) - &x(), n),
            d_x(&c(1), n)?,
            TruncatedEgf::from_coeffs(seq(f, n)?),
            n,
        )?;
        if out.failure.is_some() {
            return Ok(out);
        }
    }
    Ok(Outcome { range: Some([0, n]), failure: None, note: None })
}

fn p_x_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let p = seq(Family::PX, n + 1)?;
    let d = d_x(&c(1), n)?;
    let num = exp(&c(1), n).scale(&(&c(1) - &x()).pow(2));
    cross(num, d.mul(&d)?, TruncatedEgf::from_coeffs(p[1..].to_vec()), n)
}

/// Enumerated `C(s, x; z)` at a fixed `s`, through order `n`.
fn c_series_at(s: i64, n: usize, ctx: &Ctx) -> Result<TruncatedEgf, CheckError> {
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let cs = perm_distribution(k, PermClass::CdaFree, &[(PermStat::Fix, Var::S), (PermStat::Exc, Var::X)], &ctx.bounds)?;
        coeffs.push(cs.subs(Var::S, &c(s)));
    }
    Ok(TruncatedEgf::from_coeffs(coeffs))
}

/// `C(s, x/(1+x)^2; (1+x)z)` cleared to `(1+x)^{2n}` per coefficient
/// equals `(1+x)^n` times the series `target`.
fn substituted_c(s: i64, target: &TruncatedEgf, n: usize, ctx: &Ctx) -> Result<Option<String>, CheckError> {
    let one_x = &c(1) + &x();
    let cleared = c_series_at(s, n, ctx)?.substitute_cleared(Var::X, &x(), &one_x.pow(2), |k| k as u32)?;
    for k in 0..=n {
        if let Some(m) = same(cleared.coeff(k), &(target.coeff(k) * &one_x.pow(k as u32))) {
            return Ok(Some(format!("s = {s}, order {k}: {m}")));
        }
    }
    Ok(None)
}

fn stellahedron_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.sym();
    let spec = FamilySpec::new(Family::Stellahedron);
    let b = (0..=n).map(|k| oracle(&spec, k, &ctx.bounds)).collect::<Result<Vec<_>, _>>()?;
    let b = TruncatedEgf::from_coeffs(b);
    if let Some(f) = substituted_c(1, &b, n, ctx)? {
        return Ok(Outcome { range: Some([0, n]), failure: Some(f), note: None });
    }
    let xm1 = &x() - &c(1);
    let den = TruncatedEgf::constant(x(), n).sub(&exp(&xm1, n))?;
    cross(exp(&x(), n).scale(&xm1), den, b, n)
}

fn c_at_zero_egf(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.sym();
    let mut d = Vec::with_capacity(n + 1);
    for k in 0..=n {
        d.push(perm_distribution(k, PermClass::Derangements, &[(PermStat::Exc, Var::X)], &ctx.bounds)?);
    }
    let d = TruncatedEgf::from_coeffs(d);
    if let Some(f) = substituted_c(0, &d, n, ctx)? {
        return Ok(Outcome { range: Some([0, n]), failure: Some(f), note: None });
    }
    cross(TruncatedEgf::constant(&c(1) - &x(), n), d_x(&c(1), n)?, d, n)
}

pub(super) fn checks() -> Vec<Check> {
    let e = Suite::Egf;
    vec![
        Check::new(e, "A_xys", a_egf),
        Check::new(e, "d_xys", d_xys_egf),
        Check::new(e, "Atilde_xy", atilde_egf),
        Check::new(e, "dB_xq", d_b_xq_egf),
        Check::new(e, "d_nr", d_nr_egf),
        Check::new(e, "B_xystpq", b_egf),
        Check::new(e, "Phi", phi_egf),
        Check::new(e, "d_x", d_x_egf),
        Check::new(e, "P_x", p_x_egf),
        Check::new(e, "stellahedron", stellahedron_egf),
        Check::new(e, "C_at_zero", c_at_zero_egf),
    ]
}
