//! Classical expansions, convolutions and recurrences, plus the oracle
//! comparison for every family.

use super::{over, same, Check, CheckResultOf, Ctx, Outcome, Suite};
use crate::egfseries::TruncatedEgf;
use crate::exactalg::{binomial, c, v, Monomial, MultiPoly, Var};
use crate::families::{
    d_b_xq_formula, d_nr_formula, family_sequence, gamma_table, oracle, Family, FamilySpec, GammaKind, Group,
};
use crate::permstats::{
    fixed_set_vs_succession_set, perm_distribution, q_triangle, roselle_checks, s_triangle, signed_distribution,
    tally_perms, w_triangle, Bounds, PermClass, PermStat, SignedClass, SignedStat, StatTriangle,
};

fn x() -> MultiPoly {
    v(Var::X)
}

fn one_x() -> MultiPoly {
    &c(1) + &x()
}

fn seq(f: Family, n_max: usize) -> Result<Vec<MultiPoly>, super::CheckError> {
    Ok(family_sequence(&FamilySpec::new(f), n_max)?)
}

fn binom(n: usize, k: usize) -> MultiPoly {
    MultiPoly::int(binomial(n as u32, k as u32))
}

/// `sum_i weight^i T(n,i) x^i (1+x)^(m-2i)`.
fn triangle_gamma(t: &StatTriangle, n: usize, m: usize, weight: i64) -> MultiPoly {
    t.row(n)
        .into_iter()
        .enumerate()
        .map(|(i, k)| {
            let coeff = MultiPoly::int(k * num_bigint::BigInt::from(weight).pow(i as u32));
            &coeff * &(&x().pow(i as u32) * &one_x().pow((m - 2 * i) as u32))
        })
        .sum()
}

/// Replaces each `x^k` of `p` by `x^k (1+x)^(m-2k)`.
fn to_gamma_basis(p: &MultiPoly, m: usize) -> MultiPoly {
    (0..=m / 2)
        .map(|k| &p.coefficient_in(Var::X, k as u32) * &(&x().pow(k as u32) * &one_x().pow((m - 2 * k) as u32)))
        .sum()
}

fn foata(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let a = seq(Family::AX, hi + 1)?;
    let s = s_triangle(hi, &ctx.bounds)?;
    over(0, hi, |n| Ok(same(&a[n + 1], &triangle_gamma(&s, n, n, 2))))
}

fn stembridge(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let a = seq(Family::AX, hi)?;
    let w = w_triangle(hi, &ctx.bounds)?;
    over(1, hi, |n| Ok(same(&a[n].scale_int(1i64 << (n - 1)), &triangle_gamma(&w, n, n - 1, 4))))
}

/// `A_n(x) = sum_j gamma_{n,j} x^j (1+x)^(n-1-2j)` with `gamma_{n,j}` the
/// number of permutations without double descents and with `j` descents.
fn eulerian_gamma(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let a = seq(Family::AX, hi)?;
    over(1, hi, |n| {
        let g = tally_perms(n, &ctx.bounds, |p| {
            (p.stat(PermStat::Dd) == 0).then(|| Monomial::from_pairs(&[(Var::X, p.stat(PermStat::Des))]))
        })?;
        Ok(same(&a[n], &to_gamma_basis(&g, n - 1)))
    })
}

fn petersen(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let b = seq(Family::BX, hi)?;
    let q = q_triangle(hi, &ctx.bounds)?;
    over(0, hi, |n| Ok(same(&b[n], &triangle_gamma(&q, n, n, 4))))
}

/// `W(n+1, i) = 2^(n-i) S(n, i)`.
fn peaks_vs_simsun(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.max_n.min(ctx.bounds.max_symmetric.saturating_sub(1));
    let w = w_triangle(hi + 1, &ctx.bounds)?;
    let s = s_triangle(hi, &ctx.bounds)?;
    over(0, hi, |n| {
        for i in 0..=n {
            let rhs = s.get(n, i) * (num_bigint::BigInt::from(1) << (n - i));
            if w.get(n + 1, i) != rhs {
                return Ok(Some(format!("i = {i}: W = {}, 2^(n-i) S = {rhs}", w.get(n + 1, i))));
            }
        }
        Ok(None)
    })
}

/// Derangements by `exc` and `cyc` expand in `x^k (1+x)^(n-2k)` with the
/// cycle polynomials of cda-free derangements as coefficients.
fn zeng(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let stats = |p: &crate::permstats::Perm| {
        Monomial::from_pairs(&[(Var::X, p.stat(PermStat::Exc)), (Var::Q, p.stat(PermStat::Cyc))])
    };
    over(0, hi, |n| {
        let lhs = tally_perms(n, &ctx.bounds, |p| (p.stat(PermStat::Fix) == 0).then(|| stats(p)))?;
        let cda_free = tally_perms(n, &ctx.bounds, |p| {
            (p.stat(PermStat::Fix) == 0 && p.stat(PermStat::Cda) == 0).then(|| stats(p))
        })?;
        Ok(same(&lhs, &to_gamma_basis(&cda_free, n)))
    })
}

fn roselle(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let ok = roselle_checks(hi, &ctx.bounds)?;
    Ok(Outcome { range: Some([1, hi]), failure: (!ok).then(|| "succession identities fail".into()), note: None })
}

fn diaconis(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.sym(), |n| {
        Ok((!fixed_set_vs_succession_set(n, &ctx.bounds)?).then(|| "set counts differ".to_string()))
    })
}

fn convolution_atilde(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let a = seq(Family::AXys, n_max + 1)?;
    let at = seq(Family::AtildeXy, n_max)?;
    let d = seq(Family::DXys, n_max)?;
    over(0, n_max, |n| {
        let rhs: MultiPoly = (0..=n).map(|i| &binom(n, i) * &(&at[i] * &d[n - i])).sum();
        Ok(same(&a[n + 1], &rhs))
    })
}

fn convolution_b(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let a = seq(Family::AXys, n_max + 1)?;
    let spec = crate::exactalg::bind([(Var::T, v(Var::Y)), (Var::Q, c(1))]);
    let b: Vec<MultiPoly> = seq(Family::BXystq, n_max)?.iter().map(|p| p.substitute(&spec)).collect();
    over(0, n_max, |n| {
        let rhs: MultiPoly = (0..=n).map(|i| &binom(n, i) * &(&b[i] * &b[n - i])).sum();
        Ok(same(&a[n + 1].scale_int(1i64 << n), &rhs))
    })
}

fn stellahedron(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let b = seq(Family::Stellahedron, n_max)?;
    let a = seq(Family::AX, n_max)?;
    over(0, n_max, |n| {
        let rhs: MultiPoly = (0..=n).map(|i| &binom(n, i) * &(&a[i] * &x().pow((n - i) as u32))).sum();
        Ok(same(&b[n], &rhs))
    })
}

fn family_hi(ctx: &Ctx, group: Group) -> usize {
    match group {
        Group::Symmetric => ctx.sym(),
        Group::Signed => ctx.signed(),
        Group::Colored => ctx.colored(),
        Group::None => ctx.max_n,
    }
}

/// Recurrence values against enumeration for the given specs.
fn against_oracle(ctx: &Ctx, specs: &[FamilySpec]) -> CheckResultOf {
    let hi = specs.iter().map(|s| family_hi(ctx, s.family.group())).min().unwrap_or(ctx.max_n);
    let fast: Vec<Vec<MultiPoly>> =
        specs.iter().map(|s| family_sequence(s, hi)).collect::<Result<_, _>>()?;
    over(0, hi, |n| {
        for (s, f) in specs.iter().zip(&fast) {
            if let Some(m) = same(&f[n], &oracle(s, n, &ctx.bounds)?) {
                return Ok(Some(format!("{s}: {m}")));
            }
        }
        Ok(None)
    })
}

fn coro_recurrences(ctx: &Ctx) -> CheckResultOf {
    let sym = [Family::AX, Family::DX].map(FamilySpec::new);
    let out = against_oracle(ctx, &sym)?;
    if out.failure.is_some() {
        return Ok(out);
    }
    against_oracle(ctx, &[Family::BX, Family::DbX].map(FamilySpec::new))
}

/// `d^B_n(x,q) = sum_i q^i (1+q)^(n-i) sum_j b_{n,i,j} x^j (1+x)^(n-i-2j)`.
fn d_b_gamma(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = seq(Family::DbXq, n_max)?;
    let t = gamma_table(GammaKind::BOfP, n_max).substitute_p(1);
    let q = v(Var::Q);
    let one_q = &c(1) + &q;
    over(0, n_max, |n| {
        let rhs: MultiPoly = t
            .entries
            .range((n, 0, 0)..(n + 1, 0, 0))
            .map(|(&(_, i, j), e)| {
                let m = n - i;
                let w = &(&q.pow(i as u32) * &one_q.pow(m as u32)) * &(&x().pow(j as u32) * &one_x().pow((m - 2 * j) as u32));
                e * &w
            })
            .sum();
        Ok(same(&d[n], &rhs))
    })
}

/// `d^B_n(x, q) = x^n d_{n,q+1}(1/x)` with colored derangements enumerated.
fn colored_reciprocal(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.colored();
    let d = seq(Family::DbXq, hi)?;
    over(0, hi, |n| {
        for q in 0..=2i64 {
            let dr = oracle(&FamilySpec::with_r(Family::DNr, q as u8 + 1), n, &ctx.bounds)?;
            if let Some(m) = same(&d[n].subs(Var::Q, &c(q)), &dr.reciprocal_in(Var::X, n as u32)?) {
                return Ok(Some(format!("q = {q}: {m}")));
            }
        }
        Ok(None)
    })
}

fn signed_derangements(n: usize, bounds: &Bounds) -> Result<MultiPoly, crate::permstats::EnumError> {
    signed_distribution(n, SignedClass::Derangements, &[(SignedStat::Exc, Var::X), (SignedStat::Neg, Var::Q)], bounds)
}

fn double_binomial(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.signed(), |n| Ok(same(&d_b_xq_formula(n), &signed_derangements(n, &ctx.bounds)?)))
}

/// `d^B_{n,i} = d^B_{n,i-1} + d^B_{n-1,i-1}` over derangements with a
/// prescribed negative tail.
fn tail_recurrence(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.signed();
    let tail = |n: usize, i: usize| {
        signed_distribution(n, SignedClass::NegativeTail(i), &[(SignedStat::Exc, Var::X)], &ctx.bounds)
    };
    over(1, hi, |n| {
        for i in 1..=n {
            let rhs = &tail(n, i - 1)? + &tail(n - 1, i - 1)?;
            if let Some(m) = same(&tail(n, i)?, &rhs) {
                return Ok(Some(format!("i = {i}: {m}")));
            }
        }
        Ok(None)
    })
}

fn no_succession_descents(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let d = seq(Family::DX, hi)?;
    let p = seq(Family::PX, hi)?;
    over(1, hi, |n| {
        let des = perm_distribution(n, PermClass::SuccessionFree, &[(PermStat::Des, Var::X)], &ctx.bounds)?;
        Ok(same(&des, &(&d[n] + &d[n - 1])).or_else(|| same(&(&x() * &p[n]), &(&d[n] + &(&x() * &d[n - 1])))))
    })
}

fn desb_wexc(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.signed(), |n| {
        let des = signed_distribution(n, SignedClass::All, &[(SignedStat::DesB, Var::X)], &ctx.bounds)?;
        let wexc = signed_distribution(n, SignedClass::All, &[(SignedStat::Wexc, Var::X)], &ctx.bounds)?;
        Ok(same(&des, &wexc))
    })
}

fn chow_reciprocal(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.signed(), |n| {
        let d = signed_distribution(n, SignedClass::Derangements, &[(SignedStat::Exc, Var::X)], &ctx.bounds)?;
        let dt = signed_distribution(n, SignedClass::Derangements, &[(SignedStat::ExcB, Var::X)], &ctx.bounds)?;
        Ok(same(&d, &dt.reciprocal_in(Var::X, n as u32)?))
    })
}

fn chow_toufik(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.colored(), |n| {
        for r in 1..=3u8 {
            let d = oracle(&FamilySpec::with_r(Family::DNr, r), n, &ctx.bounds)?;
            if let Some(m) = same(&d_nr_formula(n, r), &d) {
                return Ok(Some(format!("r = {r}: {m}")));
            }
        }
        Ok(None)
    })
}

/// `C(s,x;z)^2 = e^{sz} M(s,2x;z)`, both series enumerated.
fn c_squared(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.sym();
    let stats = [(PermStat::Fix, Var::S), (PermStat::Exc, Var::X)];
    let mut cs = Vec::new();
    let mut ms = Vec::new();
    for n in 0..=hi {
        cs.push(perm_distribution(n, PermClass::CdaFree, &stats, &ctx.bounds)?);
        ms.push(perm_distribution(n, PermClass::SimsunSecondKind, &stats, &ctx.bounds)?.subs(Var::X, &x().scale_int(2)));
    }
    let cz = TruncatedEgf::from_coeffs(cs);
    let lhs = cz.mul(&cz)?;
    let rhs = TruncatedEgf::exp_linear(&v(Var::S), hi).mul(&TruncatedEgf::from_coeffs(ms))?;
    let failure = lhs.first_difference(&rhs)?.map(|k| format!("order {k}: {}  !=  {}", lhs.coeff(k), rhs.coeff(k)));
    Ok(Outcome { range: Some([0, hi]), failure, note: None })
}

/// Coefficientwise form of `C(1/2, x; 2z) = b(x; z)`.
fn c_half(ctx: &Ctx) -> CheckResultOf {
    over(0, ctx.sym(), |n| {
        let lhs = tally_perms(n, &ctx.bounds, |p| {
            (p.stat(PermStat::Cda) == 0).then(|| Monomial::from_pairs(&[(Var::X, p.stat(PermStat::Exc)), (Var::S, p.stat(PermStat::Fix))]))
        })?;
        let lhs: MultiPoly = (0..=n)
            .map(|f| lhs.coefficient_in(Var::S, f as u32).scale_int(1i64 << (n - f)))
            .sum();
        let rhs = perm_distribution(n, PermClass::All, &[(PermStat::Lpk, Var::X)], &ctx.bounds)?.subs(Var::X, &x().scale_int(4));
        Ok(same(&lhs, &rhs))
    })
}

fn oracle_checks() -> Vec<Check> {
    Family::ALL
        .iter()
        .map(|&f| {
            Check::new(Suite::Identities, format!("oracle:{f}"), move |ctx: &Ctx| {
                if f == Family::DNr {
                    against_oracle(ctx, &[1, 2, 3].map(|r| FamilySpec::with_r(f, r)))
                } else {
                    against_oracle(ctx, &[FamilySpec::new(f)])
                }
            })
        })
        .collect()
}

pub(super) fn checks() -> Vec<Check> {
    let s = Suite::Identities;
    let mut out = vec![
        Check::new(s, "foata", foata),
        Check::new(s, "stembridge", stembridge),
        Check::new(s, "eulerian_gamma", eulerian_gamma),
        Check::new(s, "petersen", petersen),
        Check::new(s, "peaks_vs_simsun", peaks_vs_simsun),
        Check::new(s, "zeng", zeng),
        Check::new(s, "roselle", roselle),
        Check::new(s, "diaconis", diaconis),
        Check::new(s, "convolution_atilde", convolution_atilde),
        Check::new(s, "convolution_b", convolution_b),
        Check::new(s, "stellahedron", stellahedron),
        Check::new(s, "coro_recurrences", coro_recurrences),
        Check::new(s, "dB_gamma", d_b_gamma),
        Check::new(s, "colored_reciprocal", colored_reciprocal),
        Check::new(s, "double_binomial", double_binomial),
        Check::new(s, "tail_recurrence", tail_recurrence),
        Check::new(s, "no_succession_descents", no_succession_descents),
        Check::new(s, "desB_wexc", desb_wexc),
        Check::new(s, "chow_reciprocal", chow_reciprocal),
        Check::new(s, "chow_toufik", chow_toufik),
        Check::new(s, "C_squared", c_squared),
        Check::new(s, "C_half", c_half),
    ];
    out.extend(oracle_checks());
    out
}
