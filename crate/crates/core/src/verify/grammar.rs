//! Grammar iterates against enumeration, tables and each other.

use super::{over, same, Check, CheckError, CheckResultOf, Ctx, Outcome, Suite};
use crate::egfseries::TruncatedEgf;
use crate::exactalg::{bind, c, parse_poly, rat, v, Bindings, Monomial, MultiPoly, Var};
use crate::families::{family_sequence, gamma_table, oracle, Family, FamilySpec, GammaKind};
use crate::grammarcalc::{change_of_grammar_mismatch, Grammar};

fn grammar(name: &str) -> Grammar {
    Grammar::builtin(name).expect("built-in grammar")
}

fn p(s: &str) -> MultiPoly {
    parse_poly(s).expect("literal")
}

fn lemma_lm(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.max_n.min(ctx.bounds.max_symmetric.saturating_sub(1));
    let d = grammar("G").derivation(&p("L M"), hi);
    let spec = FamilySpec::new(Family::AXys);
    over(0, hi, |n| Ok(same(&d.powers[n], &(&p("L M") * &oracle(&spec, n + 1, &ctx.bounds)?))))
}

fn lemma_bn(ctx: &Ctx) -> CheckResultOf {
    let hi = ctx.signed();
    let d = grammar("G2").derivation(&v(Var::J), hi);
    let spec = FamilySpec::new(Family::BXystpq);
    over(0, hi, |n| Ok(same(&d.powers[n], &(&v(Var::J) * &oracle(&spec, n, &ctx.bounds)?))))
}

fn change(g: &str, h: Grammar, bindings: Bindings, seeds: &[(MultiPoly, MultiPoly)], hi: usize) -> CheckResultOf {
    let failure = change_of_grammar_mismatch(&grammar(g), &h, &bindings, seeds, hi)
        .map(|(n, lhs, rhs)| format!("n = {n}: {lhs}  !=  {rhs}"));
    Ok(Outcome { range: Some([0, hi]), failure, note: None })
}

fn g_to_g1(ctx: &Ctx) -> CheckResultOf {
    let b = bind([(Var::U, p("x y")), (Var::V, p("x + y")), (Var::T, p("s + y")), (Var::I, p("L M"))]);
    change("G", grammar("G1"), b, &[(p("L M"), v(Var::I))], ctx.max_n)
}

fn g2_to_g3(ctx: &Ctx) -> CheckResultOf {
    let b = bind([(Var::LOWER_H, p("s + q t")), (Var::U, p("x y")), (Var::V, p("x + y"))]);
    change("G2", grammar("G3"), b, &[(v(Var::J), v(Var::J))], ctx.max_n)
}

fn g6_to_g7(ctx: &Ctx) -> CheckResultOf {
    let b = bind([(Var::H, p("J y")), (Var::U, p("x y")), (Var::V, p("x + y"))]);
    change("G6", grammar("G7"), b, &[(v(Var::J), v(Var::J))], ctx.max_n)
}

fn g4_at_q_one(ctx: &Ctx) -> CheckResultOf {
    let g4 = grammar("G4").specialize(&bind([(Var::Q, c(1))])).rename(Var::A, Var::I);
    if g4 != grammar("G1") {
        return Ok(Outcome { range: None, failure: Some(format!("{g4:?} differs from G1")), note: None });
    }
    change("G1", g4, Bindings::new(), &[(v(Var::I), v(Var::I))], ctx.max_n)
}

fn g4_to_g5(ctx: &Ctx) -> CheckResultOf {
    let half = MultiPoly::constant(rat(1, 2));
    let g4 = grammar("G4").specialize(&bind([(Var::Q, half)]));
    let b = bind([(Var::A, v(Var::J)), (Var::T, p("2 h"))]);
    change("G5", g4, b, &[(v(Var::J), v(Var::A))], ctx.max_n)
}

/// `Gen_{G4}(a; z) = a (Gen_{G1}(I; z) / I)^q` for `q = 1, 2, 3`.
fn g4_power(ctx: &Ctx) -> CheckResultOf {
    let n = ctx.max_n;
    let i = Monomial::var(Var::I);
    let base: Vec<MultiPoly> = grammar("G1")
        .derivation(&v(Var::I), n)
        .powers
        .iter()
        .map(|e| e.div_monomial(&i).ok_or_else(|| CheckError::Other(format!("{e} lacks a factor I"))))
        .collect::<Result<_, _>>()?;
    let base = TruncatedEgf::from_coeffs(base);
    for q in 1..=3u32 {
        let g4 = grammar("G4").specialize(&bind([(Var::Q, c(q as i64))]));
        let lhs = g4.gen_series(&v(Var::A), n);
        let rhs = base.pow(q).scale(&v(Var::A));
        if let Some(k) = lhs.first_difference(&rhs)? {
            let f = format!("q = {q}, order {k}: {}  !=  {}", lhs.coeff(k), rhs.coeff(k));
            return Ok(Outcome { range: Some([0, n]), failure: Some(f), note: None });
        }
    }
    Ok(Outcome { range: Some([0, n]), failure: None, note: Some("q = 1, 2, 3".into()) })
}

/// `D_{G1}^n(I) = I sum_{i,j} 2^j gamma_{n,i,j} t^i u^j v^(n-i-2j)`.
fn g1_gamma(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = grammar("G1").derivation(&v(Var::I), n_max);
    let t = gamma_table(GammaKind::Gamma, n_max);
    over(0, n_max, |n| {
        let rhs: MultiPoly = t
            .entries
            .range((n, 0, 0)..(n + 1, 0, 0))
            .map(|(&(_, i, j), e)| {
                let m = Monomial::from_pairs(&[
                    (Var::I, 1),
                    (Var::T, i as u32),
                    (Var::U, j as u32),
                    (Var::V, (n - i - 2 * j) as u32),
                ]);
                e.scale_int(1i64 << j).mul_monomial(&m)
            })
            .sum();
        Ok(same(&d.powers[n], &rhs))
    })
}

/// `D_{G3}^n(J) = J sum_{i,j} b_{n,i,j}(p) (1+q)^(n-i) h^i u^j v^(n-i-2j)`.
fn g3_b(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = grammar("G3").derivation(&v(Var::J), n_max);
    let t = gamma_table(GammaKind::BOfP, n_max);
    let one_q = p("1 + q");
    over(0, n_max, |n| {
        let rhs: MultiPoly = t
            .entries
            .range((n, 0, 0)..(n + 1, 0, 0))
            .map(|(&(_, i, j), e)| {
                let m = Monomial::from_pairs(&[
                    (Var::J, 1),
                    (Var::LOWER_H, i as u32),
                    (Var::U, j as u32),
                    (Var::V, (n - i - 2 * j) as u32),
                ]);
                (e * &one_q.pow((n - i) as u32)).mul_monomial(&m)
            })
            .sum();
        Ok(same(&d.powers[n], &rhs))
    })
}

/// `D_{G6}^n(J) = J B_n(x,y,s,y,1,q)`, and at `y = 1, s = 0` this is
/// `J d^B_n(x,q)`.
fn g6_b(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = grammar("G6").derivation(&v(Var::J), n_max);
    let b = family_sequence(&FamilySpec::new(Family::BXystq), n_max)?;
    let db = family_sequence(&FamilySpec::new(Family::DbXq), n_max)?;
    let t_is_y = bind([(Var::T, v(Var::Y))]);
    let slice = bind([(Var::Y, c(1)), (Var::S, c(0))]);
    over(0, n_max, |n| {
        let jb = &v(Var::J) * &b[n].substitute(&t_is_y);
        Ok(same(&d.powers[n], &jb).or_else(|| same(&d.powers[n].substitute(&slice), &(&v(Var::J) * &db[n]))))
    })
}

/// At `s = 0`, `u = x`, `v = 1 + x`, the `J` and `H` parts of `D_{G7}^n(J)`
/// are `f+_n` and `f-_n`.
fn g7_split(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = grammar("G7").derivation(&v(Var::J), n_max);
    let fp = family_sequence(&FamilySpec::new(Family::FPlus), n_max)?;
    let fm = family_sequence(&FamilySpec::new(Family::FMinus), n_max)?;
    let b = bind([(Var::S, c(0)), (Var::U, v(Var::X)), (Var::V, p("1 + x"))]);
    over(0, n_max, |n| {
        let e = d.powers[n].substitute(&b);
        let rest = &(&e - &(&v(Var::J) * &fp[n])) - &(&v(Var::H) * &fm[n]);
        Ok((!rest.is_zero()).then(|| format!("{e} leaves {rest}")))
    })
}

/// `D^n(x) = y Atilde_n(y, x)` for the grammar `x -> xy, y -> xy`.
fn dumont(ctx: &Ctx) -> CheckResultOf {
    let n_max = ctx.max_n;
    let d = grammar("dumont").derivation(&v(Var::X), n_max);
    let a = family_sequence(&FamilySpec::new(Family::AtildeXy), n_max)?;
    let swap = bind([(Var::X, v(Var::Y)), (Var::Y, v(Var::X))]);
    over(1, n_max, |n| Ok(same(&d.powers[n], &(&v(Var::Y) * &a[n].substitute(&swap)))))
}

pub(super) fn checks() -> Vec<Check> {
    let g = Suite::Grammar;
    vec![
        Check::new(g, "lemma_LM", lemma_lm),
        Check::new(g, "lemma_Bn", lemma_bn),
        Check::new(g, "G_to_G1", g_to_g1),
        Check::new(g, "G2_to_G3", g2_to_g3),
        Check::new(g, "G6_to_G7", g6_to_g7),
        Check::new(g, "G4_at_q_one", g4_at_q_one),
        Check::new(g, "G4_to_G5", g4_to_g5),
        Check::new(g, "G4_power", g4_power),
        Check::new(g, "G1_gamma", g1_gamma),
        Check::new(g, "G3_b", g3_b),
        Check::new(g, "G6_B", g6_b),
        Check::new(g, "G7_split", g7_split),
        Check::new(g, "dumont", dumont),
    ]
}
