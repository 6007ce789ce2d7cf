//! Acceptance run: one PASS/FAIL line per criterion, with its time budget.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hwz_core::algebra::{BigRat, LaurentN, Poly, RatFunc, Var};
use hwz_core::cumulants::{scaled_cumulant_exact, scaled_cumulant_hurwitz, scaled_cumulant_oracle, Ensemble, TraceMonomial};
use hwz_core::hurwitz::{hurwitz_table, HurwitzQuery, Kind, Route};
use hwz_core::identities::{
    check_binomial_sum, check_covariance_duality, check_duality, check_functional_relation, check_integrality,
    check_oracle_equivalence, check_parity, check_preimages, check_reciprocity, check_recursion, check_schroeder,
    check_weingarten, IdentityReport, IdentityStatus,
};
use hwz_core::mc::{estimate_cumulants, SamplerConfig, Target};
use hwz_core::sym::IntPartition;
use hwz_core::Limits;

type Outcome = Result<Vec<String>, String>;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn(&Limits) -> Outcome,
}

fn part(s: &str) -> IntPartition {
    s.parse().unwrap()
}

fn int(k: i64) -> BigRat {
    BigRat::from_integer(k.into())
}

fn reports(rs: Vec<IdentityReport>) -> Outcome {
    let lines: Vec<String> = rs.iter().map(ToString::to_string).collect();
    if rs.iter().all(IdentityReport::passed) {
        Ok(lines)
    } else {
        Err(lines.join("\n"))
    }
}

fn hurwitz_example(limits: &Limits) -> Outcome {
    let mut notes = Vec::new();
    for (kind, expected) in [(Kind::Monotone, [4u32, 12, 8]), (Kind::Strict, [2, 0, 0])] {
        for route in [Route::Dfs, Route::Fast] {
            let q = HurwitzQuery::new(part("1,1,1"), None, 0, kind).map_err(|e| e.to_string())?;
            let t = hurwitz_table(&q, route, limits).map_err(|e| e.to_string())?;
            let got: Vec<String> = ["3", "2,1", "1,1,1"]
                .iter()
                .map(|nu| t.get(&part(nu)).map(|r| r.summed.to_string()).unwrap_or_default())
                .collect();
            let want: Vec<String> = expected.iter().map(ToString::to_string).collect();
            if got != want {
                return Err(format!("{kind} via {route:?}: got {got:?}, expected {want:?}"));
            }
        }
        notes.push(format!("{kind}: {expected:?} (both routes)"));
    }
    Ok(notes)
}

fn first_moments(limits: &Limits) -> Outcome {
    let c = RatFunc::var_fn(Var::C);
    let one_over_c_minus_1 = RatFunc::shifted_power(Var::C, &int(1), -1);
    let cases = [
        (Ensemble::Wishart, c, LaurentN::monomial(RatFunc::var_fn(Var::Y), -1)),
        (Ensemble::Inverse, one_over_c_minus_1, LaurentN::monomial(RatFunc::var_fn(Var::X).inverse().unwrap(), 1)),
    ];
    let mut notes = Vec::new();
    for (ensemble, leading, exact) in cases {
        let m = TraceMonomial::new(part("1"), ensemble).map_err(|e| e.to_string())?;
        let h = scaled_cumulant_hurwitz(&m, 6, limits).map_err(|e| e.to_string())?;
        let o = scaled_cumulant_oracle(&m, 6, limits).map_err(|e| e.to_string())?;
        let x = scaled_cumulant_exact(&m, limits).map_err(|e| e.to_string())?;
        for (route, s) in [("hurwitz", &h), ("oracle", &o)] {
            if s.coeffs[0] != leading || s.coeffs[1..].iter().any(|f| !f.is_zero()) {
                return Err(format!("{m} via {route}: {:?}", s.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
        }
        if x != exact {
            return Err(format!("{m}: exact moment {x} differs from {leading}"));
        }
        notes.push(format!("{m} = {leading}"));
    }
    Ok(notes)
}

fn inverse_second_moment(limits: &Limits) -> Outcome {
    let m = TraceMonomial::new(part("2"), Ensemble::Inverse).map_err(|e| e.to_string())?;
    let h = scaled_cumulant_hurwitz(&m, 6, limits).map_err(|e| e.to_string())?;
    let at_two = h.eval(&int(2)).map_err(|e| e.to_string())?;
    if at_two.len() != 7 || at_two.iter().any(|v| *v != int(2)) {
        return Err(format!("hurwitz coefficients at c=2: {at_two:?}"));
    }
    // At c = 2 the inner variable x = (c-1)N is N itself.
    let exact = scaled_cumulant_exact(&m, limits).map_err(|e| e.to_string())?;
    let n = RatFunc::var_fn(Var::N);
    let mut closed = RatFunc::zero(Var::N);
    for (k, f) in exact.terms() {
        let term = f.with_var(Var::N).try_mul(&n.pow(k).unwrap()).map_err(|e| e.to_string())?;
        closed = closed.try_add(&term).map_err(|e| e.to_string())?;
    }
    let want = RatFunc::new(Var::N, Poly::from_ints(&[0, 0, 2]), Poly::from_ints(&[-1, 0, 1])).unwrap();
    if closed != want {
        return Err(format!("oracle closed form {closed}, expected {want}"));
    }
    Ok(vec![format!("hurwitz: 2 for g = 0..6; oracle: {closed}")])
}

fn oracle_equivalence(limits: &Limits) -> Outcome {
    reports(vec![check_oracle_equivalence(5, 3, limits)])
}

fn weingarten(limits: &Limits) -> Outcome {
    reports(vec![check_weingarten(6, 6, limits)])
}

fn integrality(limits: &Limits) -> Outcome {
    reports(vec![check_integrality(6, 3, limits), check_parity(6, 3, limits)])
}

fn identities(limits: &Limits) -> Outcome {
    let mut rs = vec![
        check_duality(6, limits),
        check_reciprocity(4, limits),
        check_functional_relation(4, 2, limits),
    ];
    let cov = check_covariance_duality(4, limits);
    if !cov.iter().any(|r| r.status == IdentityStatus::Pass) {
        return Err("no form of the covariance duality was verified".into());
    }
    rs.extend(cov.into_iter().map(|mut r| {
        if r.status == IdentityStatus::Discrepancy {
            let k = r.witnesses.len();
            r.witnesses = vec![format!("{k} permutations differ from the usual form")];
        }
        r
    }));
    rs.push(check_preimages(5, limits));
    rs.push(check_binomial_sum(5, limits));
    rs.push(check_schroeder(6, limits));
    rs.push(check_recursion(7, 4, limits));
    reports(rs)
}

fn monte_carlo(limits: &Limits) -> Outcome {
    let targets = vec![Target::TrW, Target::TrWinv, Target::TrWinv2];
    let cfg = SamplerConfig::from_c(8, &int(2), 100_000, 42, targets).map_err(|e| e.to_string())?;
    let a = estimate_cumulants(&cfg, limits).map_err(|e| e.to_string())?;
    let b = estimate_cumulants(&cfg, limits).map_err(|e| e.to_string())?;
    if a != b {
        return Err("two runs with the same seed differ".into());
    }
    let lines: Vec<String> = a
        .estimates
        .iter()
        .map(|e| {
            format!(
                "{}: {:.5} ± {:.5} vs {} ({:.2} sigma)",
                e.target.name(),
                e.value,
                e.stderr.unwrap_or(f64::NAN),
                e.exact.as_deref().unwrap_or("?"),
                e.sigmas.unwrap_or(f64::NAN)
            )
        })
        .collect();
    if a.within(4.0) {
        Ok(lines)
    } else {
        Err(lines.join("\n"))
    }
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let criteria = [
        Criterion { id: 1, title: "Hurwitz example table for mu = (1,1,1)", budget: Duration::from_secs(1), run: hurwitz_example },
        Criterion { id: 2, title: "E tr W = c and E tr W^-1 = 1/(c-1), both routes", budget: Duration::from_secs(1), run: first_moments },
        Criterion { id: 3, title: "E tr W^-2 at c = 2 is 2N^2/(N^2-1)", budget: Duration::from_secs(5), run: inverse_second_moment },
        Criterion { id: 4, title: "Hurwitz and moment routes agree, n <= 5", budget: Duration::from_secs(600), run: oracle_equivalence },
        Criterion { id: 5, title: "Weingarten suite, n <= 6", budget: Duration::from_secs(120), run: weingarten },
        Criterion { id: 6, title: "Time-delay integrality and N^-1 parity, n <= 6, g <= 3", budget: Duration::from_secs(600), run: integrality },
        Criterion { id: 7, title: "Combinatorial identities", budget: Duration::from_secs(900), run: identities },
        Criterion { id: 8, title: "Monte Carlo at N = 8, c = 2, 1e5 samples", budget: Duration::from_secs(120), run: monte_carlo },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)(&limits);
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let ok = outcome.is_ok() && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{}] {} ({:.2}s, budget {}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        match outcome {
            Ok(notes) => notes.iter().for_each(|n| println!("    {}", n.replace('\n', "\n    "))),
            Err(e) => println!("    {}", e.replace('\n', "\n    ")),
        }
        if !in_time {
            println!("    over budget");
        }
    }
    println!("{failed} of 8 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
