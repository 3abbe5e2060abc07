//! Acceptance suite: one line per criterion, exact equality throughout.
//!
//! Criteria 1 to 7 are proved statements and fail the run. Criteria 8 and 9
//! are conjectural or convention dependent; their verdicts are printed only.

use std::process::ExitCode;

use mckay_core::heisenberg::{expand_named, omega_hat, NamedOperator};
use mckay_core::macdonald::bott_identity_check;
use mckay_core::verify::{random_element, reference_tables};
use mckay_core::{
    adams_conjecture_check, bkr_transport, calibrate_cup, graded_component, nabla_f, op_d, op_e, op_gamma, op_pi,
    parse_terms, partitions_of, rat, Basis, FixedPointWeights, LinOperator, OdotRing, OmegaConvention, Partition,
    Result, SymFunc,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome {
        passed: false,
        detail: format!("error: {e}"),
    })
}

fn rings(max: usize) -> Result<Vec<OdotRing>> {
    (1..=max).map(|n| OdotRing::new(n, None)).collect()
}

fn tables(rings: &[OdotRing]) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut count = 0;
    for cell in reference_tables() {
        count += 1;
        let got = rings[cell.n - 1]
            .table(cell.basis)
            .get(&Partition::new(cell.row.clone()), &Partition::new(cell.col.clone()))
            .clone();
        if got != parse_terms(&cell.value, cell.n)?.convert(cell.basis) {
            bad.push(format!(
                "n={} {} {:?}x{:?}: computed {} published {}",
                cell.n,
                cell.basis.letter(),
                cell.row,
                cell.col,
                got.term_string(),
                cell.value
            ));
        }
    }
    let p4 = SymFunc::p([1, 1, 1, 1].into());
    let s4 = SymFunc::s([1, 1, 1, 1].into());
    let ex_p = rings[3].odot(&p4, &p4)?.term_string() == "24p_{1,1,1,1}-144p_{2,1,1}+72p_{2,2}+240p_{3,1}-240p_4";
    let ex_s = rings[3].odot(&s4, &s4)? == parse_terms("-5s_4+7s_{3,1}-s_{2,2}-9s_{2,1,1}+14s_{1,1,1,1}", 4)?;
    Ok(Outcome {
        passed: bad.is_empty() && ex_p && ex_s && count == 76,
        detail: format!(
            "{} of {count} published cells match, worked examples {}{}{}",
            count - bad.len(),
            ex_p && ex_s,
            if bad.is_empty() { "" } else { "; mismatches: " },
            bad.join("; ")
        ),
    })
}

fn pipeline(rings: &[OdotRing]) -> Result<Outcome> {
    let mut ok = true;
    for r in &rings[..5] {
        let mb = r.macdonald();
        let nabla = nabla_f(&FixedPointWeights::tautological(mb.spec()), mb)?;
        ok &= bkr_transport(&nabla, OmegaConvention::Negate)?.change_basis(Basis::P) == op_e(r.n());
    }
    Ok(Outcome {
        passed: ok,
        detail: "transported tautological weights equal 𝓔 for n ≤ 5".into(),
    })
}

fn identities() -> Outcome {
    let mut failed = Vec::new();
    for n in 1..=6 {
        let (d, e, g, pi) = (op_d(n), op_e(n), op_gamma(n), op_pi(n));
        let nid = LinOperator::identity(n, Basis::P).scale(&rat(n as i64));
        let sign = rat(if n % 2 == 0 { 1 } else { -1 });
        let hd = expand_named(NamedOperator::D, n);
        let he = expand_named(NamedOperator::E, n);
        let checks = [
            ("Π𝓔=𝒟Π", pi.compose(&e) == d.compose(&pi)),
            ("Γ𝓔=𝒟Γ", g.compose(&e) == d.compose(&g)),
            (
                "𝓔₀=𝒟₀=n",
                graded_component(&e, 0) == nid && graded_component(&d, 0) == nid,
            ),
            ("Γ₀=±Π", graded_component(&g, 0) == pi.scale(&sign)),
            (
                "triangular",
                (1..n as i64).all(|k| [&d, &e, &g].iter().all(|op| graded_component(op, -k).matrix.is_zero())),
            ),
            ("fock", hd.matrix_of(n) == d && he.matrix_of(n) == e),
            ("Ω̂(𝒟)=𝓔", omega_hat(&hd) == he),
        ];
        failed.extend(checks.iter().filter(|c| !c.1).map(|c| format!("n={n} {}", c.0)));
    }
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            "all identities hold for n ≤ 6".into()
        } else {
            failed.join(", ")
        },
    }
}

fn macdonald(rings: &[OdotRing]) -> Outcome {
    let mut failed = Vec::new();
    for r in &rings[..5] {
        let mb = r.macdonald();
        let checks = [
            ("eigen", mb.eigen_relation_holds()),
            ("rows", mb.normalization_holds()),
            ("duality", mb.duality_holds()),
            ("positivity", mb.kostka_nonnegative()),
        ];
        failed.extend(checks.iter().filter(|c| !c.1).map(|c| format!("n={} {}", r.n(), c.0)));
    }
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            "eigen, row, duality and positivity checks hold for n ≤ 5".into()
        } else {
            failed.join(", ")
        },
    }
}

fn bott(rings: &[OdotRing]) -> Outcome {
    let bad: Vec<String> = rings[..4]
        .iter()
        .map(|r| bott_identity_check(r.macdonald()))
        .filter(|rep| !rep.holds())
        .map(|rep| format!("n={}: {} mismatches", rep.n, rep.mismatches.len()))
        .collect();
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "exact for n ≤ 4".into()
        } else {
            bad.join(", ")
        },
    }
}

fn ring_axioms(rings: &[OdotRing]) -> Result<Outcome> {
    let mut ok = true;
    for r in &rings[..4] {
        let basis: Vec<SymFunc> = partitions_of(r.n()).into_iter().map(SymFunc::s).collect();
        for x in &basis {
            ok &= r.odot(&r.unit(), x)? == *x;
            for y in &basis {
                let xy = r.odot(x, y)?;
                ok &= xy == r.odot(y, x)?;
                for z in &basis {
                    ok &= r.odot(&xy, z)? == r.odot(x, &r.odot(y, z)?)?;
                }
            }
        }
        ok &= r.age_filtration_holds();
    }
    let r5 = &rings[4];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let (x, y, z) = (
            random_element(&mut rng, 5),
            random_element(&mut rng, 5),
            random_element(&mut rng, 5),
        );
        let xy = r5.odot(&x, &y)?;
        ok &= xy == r5.odot(&y, &x)?;
        ok &= r5.odot(&xy, &z)? == r5.odot(&x, &r5.odot(&y, &z)?)?;
        ok &= r5.odot(&r5.unit(), &x)? == x;
    }
    ok &= r5.age_filtration_holds();
    Ok(Outcome {
        passed: ok,
        detail: "exhaustive for n ≤ 4, 100 seeded triples at n = 5".into(),
    })
}

fn a_independence() -> Result<Outcome> {
    let mut ok = true;
    for n in 1..=3 {
        let base = OdotRing::new(n, Some(n as u32 + 2))?;
        let other = OdotRing::new(n, Some(n as u32 + 3))?;
        ok &= [Basis::P, Basis::S]
            .iter()
            .all(|&b| base.table(b).cells == other.table(b).cells);
    }
    Ok(Outcome {
        passed: ok,
        detail: "tables for A = n+2 and A = n+3 agree for n ≤ 3".into(),
    })
}

fn adams() -> Result<Outcome> {
    let mut verdicts = Vec::new();
    let mut all = true;
    for n in 1..=4 {
        for e in adams_conjecture_check(n, 4, None)?.entries {
            all &= e.equal;
            if !e.equal {
                verdicts.push(format!("NOT-EQUAL at n={n} j={}", e.j));
            }
        }
    }
    Ok(Outcome {
        passed: all,
        detail: if all {
            "EQUAL for every n ≤ 4, j ≤ 4 (ψ⁰ taken as rank n)".into()
        } else {
            verdicts.join(", ")
        },
    })
}

fn calibration() -> Result<Outcome> {
    let rep = calibrate_cup(&[2, 3], &[4])?;
    let detail = match rep.chosen {
        Some(c) => format!(
            "{}: sign {:+}, z exponent {}, part-product exponent {}; {} candidates fit n = 2, 3; n = 4 holds {}",
            rep.status(),
            c.eps,
            c.z_exp,
            c.prod_exp,
            rep.candidates.len(),
            rep.validation.iter().all(|v| v.1)
        ),
        None => "unresolved".into(),
    };
    Ok(Outcome {
        passed: rep.resolved(),
        detail,
    })
}

fn main() -> ExitCode {
    let rings = match rings(5) {
        Ok(r) => r,
        Err(e) => {
            println!("could not build product rings: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results: Vec<(u8, &str, bool, Outcome)> = vec![
        (1, "published tables", true, outcome(tables(&rings))),
        (2, "pipeline equals closed form", true, outcome(pipeline(&rings))),
        (3, "operator identities", true, identities()),
        (4, "Macdonald validation", true, macdonald(&rings)),
        (5, "Bott identity", true, bott(&rings)),
        (6, "ring axioms", true, outcome(ring_axioms(&rings))),
        (7, "A-independence", true, outcome(a_independence())),
        (8, "Adams conjecture", false, outcome(adams())),
        (9, "cup calibration", false, outcome(calibration())),
    ];
    let mut failed = 0;
    for (id, name, hard, o) in &results {
        let verdict = match (o.passed, hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FINDING",
        };
        println!("criterion {id} [{verdict}] {name}: {}", o.detail);
        if *hard && !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of 7 proved criteria pass; criteria 8 and 9 are reported",
        7 - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
