//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use gammakit::exactalg::parse_poly;
use gammakit::families::{family, Family, FamilySpec};
use gammakit::permstats::Bounds;
use gammakit::verify::{run_check, Status};

type Outcome = Result<String, String>;

/// Runs the named checks at `max_n` and requires each to pass over the
/// expected range.
fn checks(names: &[(&str, usize, [usize; 2])], bounds: Bounds) -> Outcome {
    let mut count = 0;
    for &(name, max_n, range) in names {
        let r = run_check(name, max_n, bounds).ok_or_else(|| format!("no check named {name}"))?;
        if r.status != Status::Pass {
            return Err(format!("{name}: {:?} {} {}", r.status, r.detail, r.counterexample.unwrap_or_default()));
        }
        if r.n_range != Some(range) {
            return Err(format!("{name}: covered {:?}, wanted {range:?}", r.n_range));
        }
        count += 1;
    }
    Ok(format!("{count} checks"))
}

fn listed_polynomials() -> Outcome {
    let lists: [(Family, &[(usize, &str)]); 5] = [
        (
            Family::AXys,
            &[
                (1, "1"),
                (2, "s + y"),
                (3, "(s+y)^2 + 2 x y"),
                (4, "(s+y)^3 + 6 x y (s+y) + 2 x y (x+y)"),
                (5, "(s+y)^4 + 12 x y (s+y)^2 + 8 x y (s+y) (x+y) + 2 x y (x+y)^2 + 16 x^2 y^2"),
            ],
        ),
        (
            Family::BXystpq,
            &[
                (0, "1"),
                (1, "p (s + q t)"),
                (2, "p^2 (s + q t)^2 + p (1+q)^2 x y"),
                (3, "p^3 (s + q t)^3 + 3 p^2 (1+q)^2 (s + q t) x y + p (1+q)^3 x y (x+y)"),
            ],
        ),
        (
            Family::DbXq,
            &[
                (0, "1"),
                (1, "q"),
                (2, "x + 2 q x + q^2 (1+x)"),
                (3, "x (1+x) + 3 q x (2+x) + 3 q^2 x (3+x) + q^3 (1 + 4x + x^2)"),
                (
                    4,
                    "x (1 + 7x + x^2) + 4 q x (2 + 8x + x^2) + 6 q^2 x (4 + 9x + x^2) \
                     + 4 q^3 x (7 + 10x + x^2) + q^4 (1 + 11x + 11x^2 + x^3)",
                ),
            ],
        ),
        (Family::FPlus, &[(1, "0"), (2, "(1 + 2q) x"), (3, "(1 + 3q + 3q^2) (x + x^2)")]),
        (Family::FMinus, &[(1, "q"), (2, "q^2 (1+x)"), (3, "q^3 + (3q + 6q^2 + 4q^3) x + q^3 x^2")]),
    ];
    let mut count = 0;
    for (f, rows) in lists {
        for &(n, text) in rows {
            let want = parse_poly(text).map_err(|e| e.to_string())?.to_string();
            let got = family(&FamilySpec::new(f), n).map_err(|e| e.to_string())?.to_string();
            if got != want {
                return Err(format!("{f} n = {n}: {got} != {want}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} polynomials"))
}

fn master_oracle() -> Outcome {
    let bounds = Bounds { max_symmetric: 7, max_signed: 6, max_colored: 5, max_elements: None };
    let mut names = Vec::new();
    for &f in Family::ALL {
        let hi = match f.group() {
            gammakit::families::Group::Symmetric => 7,
            gammakit::families::Group::Signed => 6,
            gammakit::families::Group::Colored => 5,
            gammakit::families::Group::None => 7,
        };
        names.push((format!("identities:oracle:{f}"), hi));
    }
    let refs: Vec<(&str, usize, [usize; 2])> = names.iter().map(|(n, hi)| (n.as_str(), 7, [0, *hi])).collect();
    checks(&refs, bounds)
}

fn determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_gammakit");
    let mut outputs = Vec::new();
    for threads in [1, 4, 8] {
        let out = Command::new(exe)
            .args(["--threads", &threads.to_string(), "verify", "--suite", "all", "--max-n", "6", "--json"])
            .env_remove("GAMMAKIT_MAX_ELEMENTS")
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("{threads} threads: exit {:?}", out.status.code()));
        }
        outputs.push(out.stdout);
    }
    if outputs.windows(2).all(|w| w[0] == w[1]) {
        Ok(format!("{} identical bytes", outputs[0].len()))
    } else {
        Err("reports differ between thread counts".into())
    }
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn main() {
    let d = Bounds::default();
    let criteria: Vec<Criterion> = vec![
        ("listed polynomials reproduced exactly", Duration::from_secs(1), Box::new(listed_polynomials)),
        ("every family equals its enumeration oracle", Duration::from_secs(600), Box::new(master_oracle)),
        (
            "gamma tables match their combinatorial interpretations",
            Duration::from_secs(300),
            Box::new(move || {
                checks(
                    &[
                        ("gamma:simsun_second_kind", 7, [0, 7]),
                        ("gamma:cda_free_cycles", 7, [0, 7]),
                        ("gamma:derangement_slice", 7, [0, 7]),
                    ],
                    d,
                )
            }),
        ),
        (
            "grammar lemmas and changes of grammar",
            Duration::from_secs(300),
            Box::new(move || {
                checks(
                    &[
                        ("grammar:lemma_LM", 7, [0, 7]),
                        ("grammar:lemma_Bn", 6, [0, 6]),
                        ("grammar:G_to_G1", 5, [0, 5]),
                        ("grammar:G2_to_G3", 5, [0, 5]),
                        ("grammar:G6_to_G7", 5, [0, 5]),
                    ],
                    d,
                )
            }),
        ),
        (
            "EGF identities by cross-multiplication",
            Duration::from_secs(300),
            Box::new(move || {
                checks(
                    &[
                        ("egf:A_xys", 6, [0, 6]),
                        ("egf:d_xys", 6, [0, 6]),
                        ("egf:dB_xq", 6, [0, 6]),
                        ("egf:d_nr", 6, [0, 6]),
                        ("egf:B_xystpq", 6, [0, 6]),
                    ],
                    d,
                )
            }),
        ),
        (
            "C squared and the halved C identity",
            Duration::from_secs(300),
            Box::new(move || checks(&[("identities:C_squared", 7, [0, 7]), ("identities:C_half", 8, [0, 8])], d)),
        ),
        (
            "signed derangement pipeline and worked example",
            Duration::from_secs(300),
            Box::new(move || {
                let names = [
                    "partition",
                    "phi1",
                    "phi2",
                    "phi3",
                    "dniBx",
                    "double_binomial",
                    "phi3_example",
                ]
                .map(|c| format!("bijection:derangement_maps:{c}"));
                let refs: Vec<(&str, usize, [usize; 2])> = names.iter().map(|n| (n.as_str(), 6, [0, 6])).collect();
                checks(&refs, d)
            }),
        ),
        (
            "classical gamma expansions and succession identities",
            Duration::from_secs(300),
            Box::new(move || {
                checks(
                    &[
                        ("identities:eulerian_gamma", 7, [1, 7]),
                        ("identities:stembridge", 7, [1, 7]),
                        ("identities:foata", 7, [0, 7]),
                        ("identities:peaks_vs_simsun", 7, [0, 7]),
                        ("identities:petersen", 7, [0, 7]),
                        ("identities:zeng", 7, [0, 7]),
                        ("identities:roselle", 7, [1, 7]),
                        ("identities:diaconis", 7, [0, 7]),
                    ],
                    d,
                )
            }),
        ),
        (
            "positivity of all tables through n = 10",
            Duration::from_secs(1),
            Box::new(move || checks(&[("gamma:positivity", 10, [0, 10])], d)),
        ),
        ("verify output identical across 1, 4 and 8 threads", Duration::from_secs(600), Box::new(determinism)),
    ];

    let mut failed = 0;
    for (k, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > *budget => Err(format!("{msg}, but took {took:.2?} (budget {budget:?})")),
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {:>2}: PASS  {title} ({msg}, {took:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
