//! Gamma tables against enumeration, basis extraction and the `f+/f-` split.

use std::collections::BTreeMap;

use super::{over, same, Check, CheckResultOf, Ctx, Outcome, Suite};
use crate::exactalg::{bind, c, v, Monomial, MultiPoly, Var};
use crate::families::{
    expand_gamma_basis, f_pm_split, f_pm_tables, family_sequence, gamma_table, gamma_vector, oracle, Family,
    FamilySpec, GammaKind, GammaStyle, GammaTable,
};
use crate::permstats::{perm_distribution, tally_perms, PermClass, PermStat};

fn x() -> MultiPoly {
    v(Var::X)
}

fn row(t: &GammaTable, n: usize) -> BTreeMap<(usize, usize), MultiPoly> {
    t.entries.range((n, 0, 0)..(n + 1, 0, 0)).map(|(&(_, i, j), e)| ((i, j), e.clone())).collect()
}

fn render_row(r: &BTreeMap<(usize, usize), MultiPoly>) -> String {
    let parts: Vec<String> = r.iter().map(|((i, j), e)| format!("({i},{j}):{e}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn same_row(got: &BTreeMap<(usize, usize), MultiPoly>, want: &BTreeMap<(usize, usize), MultiPoly>) -> Option<String> {
    (got != want).then(|| format!("{}  !=  {}", render_row(got), render_row(want)))
}

/// `sum c_{i,j} lead^i w(i) (xy)^j (x+y)^(n-i-2j)` for the given style.
fn build(r: &BTreeMap<(usize, usize), MultiPoly>, n: usize, style: GammaStyle) -> MultiPoly {
    let (xv, yv, q) = (x(), v(Var::Y), v(Var::Q));
    let xy = &xv * &yv;
    let x_plus_y = &xv + &yv;
    let one_q = &c(1) + &q;
    r.iter()
        .map(|(&(i, j), e)| {
            let m = n - i;
            let basis = &xy.pow(j as u32) * &x_plus_y.pow((m - 2 * j) as u32);
            let head = match style {
                GammaStyle::A => (&v(Var::S) + &yv).pow(i as u32).scale_int(1i64 << j),
                GammaStyle::B => &(&v(Var::S) + &(&q * &v(Var::T))).pow(i as u32) * &one_q.pow(m as u32),
            };
            &(e * &head) * &basis
        })
        .sum()
}

/// `sum entry * s^i x^j` over row `n`.
fn generating(t: &GammaTable, n: usize) -> MultiPoly {
    row(t, n)
        .iter()
        .map(|(&(i, j), e)| e.mul_monomial(&Monomial::from_pairs(&[(Var::S, i as u32), (Var::X, j as u32)])))
        .sum()
}

fn simsun_second_kind(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let t = gamma_table(GammaKind::Gamma, hi);
    over(0, hi, |n| {
        let counts = perm_distribution(
            n,
            PermClass::SimsunSecondKind,
            &[(PermStat::Fix, Var::S), (PermStat::Exc, Var::X)],
            &ctx.bounds,
        )?;
        Ok(same(&generating(&t, n), &counts))
    })
}

fn cda_free_cycles(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let t = gamma_table(GammaKind::BOfP, hi);
    over(0, hi, |n| {
        let counts = perm_distribution(
            n,
            PermClass::CdaFree,
            &[(PermStat::Fix, Var::S), (PermStat::Exc, Var::X), (PermStat::Cyc, Var::P)],
            &ctx.bounds,
        )?;
        Ok(same(&generating(&t, n), &counts))
    })
}

/// `b_{n,0,k}(q)` is the cycle polynomial of cda-free derangements with `k`
/// excedances.
fn derangement_slice(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let t = gamma_table(GammaKind::BOfP, hi);
    over(0, hi, |n| {
        let counts = tally_perms(n, &ctx.bounds, |p| {
            (p.stat(PermStat::Fix) == 0 && p.stat(PermStat::Cda) == 0).then(|| {
                Monomial::from_pairs(&[(Var::X, p.stat(PermStat::Exc)), (Var::Q, p.stat(PermStat::Cyc))])
            })
        })?;
        let slice: MultiPoly = row(&t, n)
            .iter()
            .filter(|((i, _), _)| *i == 0)
            .map(|(&(_, j), e)| &e.subs(Var::P, &v(Var::Q)) * &x().pow(j as u32))
            .sum();
        Ok(same(&slice, &counts))
    })
}

fn positivity(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.max_n.max(10);
    let (fp, fm) = f_pm_tables(hi);
    let tables = [gamma_table(GammaKind::Gamma, hi), gamma_table(GammaKind::BOfP, hi), fp, fm];
    let failure = tables.iter().find_map(|t| {
        t.first_negative().map(|((n, i, j), e)| format!("{}({n},{i},{j}) = {e}", t.kind))
    });
    Ok(Outcome { range: Some([0, hi]), failure, note: None })
}

fn expand_a(ctx: &Ctx) -> CheckResultOf {
    let a = family_sequence(&FamilySpec::new(Family::AXys), ctx.max_n + 1)?;
    let t = gamma_table(GammaKind::Gamma, ctx.max_n);
    over(0, ctx.max_n, |n| Ok(same_row(&expand_gamma_basis(&a[n + 1], n, GammaStyle::A)?, &row(&t, n))))
}

fn expand_b(ctx: &Ctx) -> CheckResultOf {
    let b = family_sequence(&FamilySpec::new(Family::BXystpq), ctx.max_n)?;
    let t = gamma_table(GammaKind::BOfP, ctx.max_n);
    over(0, ctx.max_n, |n| Ok(same_row(&expand_gamma_basis(&b[n], n, GammaStyle::B)?, &row(&t, n))))
}

fn round_trip(ctx: &Ctx) -> CheckResultOf {
    let tables = [
        (gamma_table(GammaKind::Gamma, ctx.max_n), GammaStyle::A),
        (gamma_table(GammaKind::BOfP, ctx.max_n), GammaStyle::B),
    ];
    over(0, ctx.max_n, |n| {
        for (t, style) in &tables {
            let r = row(t, n);
            let back = expand_gamma_basis(&build(&r, n, *style), n, *style)?;
            if let Some(m) = same_row(&back, &r) {
                return Ok(Some(format!("{}: {m}", t.kind)));
            }
        }
        Ok(None)
    })
}

fn gamma_row(t: &GammaTable, n: usize, m: usize) -> Vec<MultiPoly> {
    (0..=m / 2).map(|j| t.get(n, 0, j)).collect()
}

fn split_vs_tables(ctx: &Ctx) -> CheckResultOf {
    let d = family_sequence(&FamilySpec::new(Family::DbXq), ctx.max_n)?;
    let (fp, fm) = f_pm_tables(ctx.max_n);
    over(0, ctx.max_n, |n| {
        let (plus, minus) = f_pm_split(&d[n], Var::X, n)?;
        let gp = gamma_vector(&plus, Var::X, n)?;
        if gp != gamma_row(&fp, n, n) {
            return Ok(Some(format!("f+ gamma vector {gp:?}")));
        }
        if n == 0 {
            return Ok(same(&minus, &MultiPoly::zero()));
        }
        let gm = gamma_vector(&minus, Var::X, n - 1)?;
        Ok((gm != gamma_row(&fm, n, n - 1)).then(|| format!("f- gamma vector {gm:?}")))
    })
}

/// The recurrence system for `f+_n(x,q)` and `f-_n(x,q)` written in `x`,
/// checked at every `n + 1 <= max_n`.
fn x_system(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.max_n;
    let fp = family_sequence(&FamilySpec::new(Family::FPlus), hi)?;
    let fm = family_sequence(&FamilySpec::new(Family::FMinus), hi)?;
    let (xv, q) = (x(), v(Var::Q));
    let one_q = &c(1) + &q;
    let diff = &(&one_q * &xv) * &(&c(1) - &xv);
    over(1, hi, |m| {
        let n = m - 1;
        let nn = n as i64;
        let prev = |f: &[MultiPoly]| if n == 0 { MultiPoly::zero() } else { f[n - 1].clone() };
        let shared = |f: &[MultiPoly]| {
            &(&diff * &f[n].partial_derivative(Var::X)) + &(&(&one_q * &xv).scale_int(nn) * &prev(f))
        };
        let plus = &(&(&(&one_q * &xv).scale_int(nn) * &fp[n]) + &shared(&fp)) + &(&xv * &fm[n]);
        let lead = &(&q * &(&c(1) + &xv)) + &(&one_q * &xv).scale_int(nn - 1);
        let minus = &(&(&lead * &fm[n]) + &shared(&fm)) + &(&q * &fp[n]);
        Ok(same(&plus, &fp[m]).or_else(|| same(&minus, &fm[m])))
    })
}

fn split_gamma_positive(ctx: &Ctx) -> CheckResultOf {
    let d = family_sequence(&FamilySpec::new(Family::DbXq), ctx.max_n)?;
    over(0, ctx.max_n, |n| {
        for qv in 0..=3 {
            let dq = d[n].subs(Var::Q, &c(qv));
            let (plus, minus) = f_pm_split(&dq, Var::X, n)?;
            let mut gs = gamma_vector(&plus, Var::X, n)?;
            if n > 0 {
                gs.extend(gamma_vector(&minus, Var::X, n - 1)?);
            }
            if let Some(g) = gs.iter().find(|g| !(g.is_integral() && g.has_nonnegative_coefficients())) {
                return Ok(Some(format!("q = {qv}: gamma coefficient {g}")));
            }
        }
        Ok(None)
    })
}

/// Enumerated `d_{n,r}(x)` equals `f+ + x f-` where `(f+, f-)` splits
/// `x^n d_{n,r}(1/x)`; the split agrees with `f+/f-` at `q = r - 1` and
/// both parts are gamma-positive.
fn colored_two_basis(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.colored();
    let fp = family_sequence(&FamilySpec::new(Family::FPlus), hi)?;
    let fm = family_sequence(&FamilySpec::new(Family::FMinus), hi)?;
    over(0, hi, |n| {
        for r in 1..=3u8 {
            let d = oracle(&FamilySpec::with_r(Family::DNr, r), n, &ctx.bounds)?;
            let (plus, minus) = f_pm_split(&d.reciprocal_in(Var::X, n as u32)?, Var::X, n)?;
            let at_q = bind([(Var::Q, c(r as i64 - 1))]);
            let mismatch = same(&(&plus + &(&x() * &minus)), &d)
                .or_else(|| same(&plus, &fp[n].substitute(&at_q)))
                .or_else(|| same(&minus, &fm[n].substitute(&at_q)));
            if let Some(m) = mismatch {
                return Ok(Some(format!("r = {r}: {m}")));
            }
            let mut gs = gamma_vector(&plus, Var::X, n)?;
            if n > 0 {
                gs.extend(gamma_vector(&minus, Var::X, n - 1)?);
            }
            if gs.iter().any(|g| !g.has_nonnegative_coefficients()) {
                return Ok(Some(format!("r = {r}: negative gamma vector {gs:?}")));
            }
        }
        Ok(None)
    })
}

pub(super) fn checks() -> Vec<Check> {
    let g = Suite::Gamma;
    vec![
        Check::new(g, "simsun_second_kind", simsun_second_kind),
        Check::new(g, "cda_free_cycles", cda_free_cycles),
        Check::new(g, "derangement_slice", derangement_slice),
        Check::new(g, "positivity", positivity),
        Check::new(g, "expand_A", expand_a),
        Check::new(g, "expand_B", expand_b),
        Check::new(g, "round_trip", round_trip),
        Check::new(g, "split_vs_tables", split_vs_tables),
        Check::new(g, "f_pm_x_system", x_system),
        Check::new(g, "split_gamma_positive", split_gamma_positive),
        Check::new(g, "colored_two_basis", colored_two_basis),
    ]
}
