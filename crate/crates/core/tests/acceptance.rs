//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qch_core::cayley::{
    assemble_ch, compare_phi, nc_determinant, omega, qh_coefficients, rho, sigma_shift_direct,
    sigma_shift_transform, sigmas, taus, ugl_coefficients, verify_ch_qh, verify_ch_re,
    verify_ch_ugl, xi, Convention, MatrixPoly, ShiftReading,
};
use qch_core::hecke::HeckeSymmetry;
use qch_core::nc::{
    default_degree_bound, generator_matrix, relations_re, relations_ugl, Algebra, NCPoly,
    RewriteSystem,
};
use qch_core::orbit::{
    c_from_mu, check_re_pr, make_orbit, module_nontrivial, symbolic_mu, verify_ch_lplus,
    verify_projector_family, CubicVariant, OrbitSpec, Triviality,
};
use qch_core::scalar::qcomb::{q_binomial, q_binomial_theorem_check};
use qch_core::scalar::Bindings;
use qch_core::tensor::TensorOp;
use qch_core::Scalar;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn standard(n: usize) -> Result<HeckeSymmetry, String> {
    HeckeSymmetry::standard(n).map_err(e)
}

fn hecke_validation() -> Check {
    for n in 2..=3 {
        let h = standard(n)?;
        let report = h.report();
        ensure(report.passed() && report.even_rank == Some(n), || {
            format!("n={n}: {report}")
        })?;
        // independent restatements
        let r = h.matrix();
        let r12 = r.embed(1, 3).map_err(e)?;
        let r23 = r.embed(2, 3).map_err(e)?;
        let lhs = TensorOp::chain([&r12, &r23, &r12]).map_err(e)?;
        let rhs = TensorOp::chain([&r23, &r12, &r23]).map_err(e)?;
        ensure(lhs == rhs, || format!("n={n}: braid relation fails"))?;
        let square = r.compose(r).map_err(e)?;
        let expected = TensorOp::identity(n, 2).add(&r.scale(h.lambda())).map_err(e)?;
        ensure(square == expected, || format!("n={n}: R^2 != id + lambda R"))?;
        let top = h.antisymmetrizer(n).map_err(e)?;
        let over = h.antisymmetrizer(n + 1).map_err(e)?;
        ensure(top.rank() == 1 && over.is_zero(), || {
            format!("n={n}: antisymmetrizer tower does not end at level {n}")
        })?;
    }
    Ok("standard R for n=2,3: braid, Hecke, rank p=n, closed".into())
}

fn antisymmetrizer_contract() -> Check {
    let mut checked = 0;
    for n in 2..=3 {
        let h = standard(n)?;
        let minus_inv_q = -h.q().inv().map_err(e)?;
        for l in 1..=n + 1 {
            let p = h.antisymmetrizer(l).map_err(e)?;
            ensure(p.compose(&p).map_err(e)? == p, || format!("n={n} l={l}: not idempotent"))?;
            let scaled = p.scale(&minus_inv_q);
            for i in 1..l {
                let ri = h.matrix().embed(i, l).map_err(e)?;
                ensure(ri.compose(&p).map_err(e)? == scaled, || {
                    format!("n={n} l={l}: R_{i} P != -P/q")
                })?;
                ensure(p.compose(&ri).map_err(e)? == scaled, || {
                    format!("n={n} l={l}: P R_{i} != -P/q")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("idempotency and {checked} absorption pairs, l <= n+1, n=2,3"))
}

fn centrality() -> Check {
    for n in 2..=3 {
        let h = standard(n)?;
        let rs = RewriteSystem::complete(&relations_re(&h).map_err(e)?, default_degree_bound(n))
            .map_err(e)?;
        let s = sigmas(&h).map_err(e)?;
        for (k, sk) in s.iter().enumerate().skip(1) {
            for i in 0..n {
                for j in 0..n {
                    let ok = rs.commutes_mod(sk, &NCPoly::generator(i, j)).map_err(e)?;
                    ensure(ok, || format!("n={n}: sigma_{k} does not commute with l{}{}", i + 1, j + 1))?;
                }
            }
        }
    }
    Ok("sigma_k central for all k <= p, n=2,3".into())
}

fn re_cayley_hamilton() -> Check {
    let mut conventions = Vec::new();
    for n in 2..=3 {
        let h = standard(n)?;
        let report = verify_ch_re(&h, default_degree_bound(n)).map_err(e)?;
        ensure(report.passed(), || {
            format!("n={n}: {} nonzero residual entries", report.residual_nonzero_entries.len())
        })?;
        // the free term is sigma_p times the identity
        let s = sigmas(&h).map_err(e)?;
        ensure(report.coefficients[n] == s[n].display_with("l"), || {
            format!("n={n}: free term differs from sigma_p")
        })?;
        conventions.push(format!("n={n} {}", report.convention));
    }
    Ok(format!("zero residual, conventions: {}", conventions.join(", ")))
}

fn two_path_transform() -> Check {
    let mut printed_fails = false;
    for n in 2..=3 {
        let h = standard(n)?;
        let s = sigmas(&h).map_err(e)?;
        for k in 0..=n {
            let direct = sigma_shift_direct(&s, k).map_err(e)?;
            let transformed = sigma_shift_transform(&s, k, ShiftReading::Consistent).map_err(e)?;
            ensure(direct == transformed, || format!("n={n} k={k}: paths differ"))?;
            let printed = sigma_shift_transform(&s, k, ShiftReading::Printed).map_err(e)?;
            printed_fails |= printed != direct;
        }
    }
    Ok(format!(
        "direct shift equals transform for n=2,3, all k (binomials read C(k,r)[p,k]/[p,k-r]; printed order {})",
        if printed_fails { "disagrees" } else { "agrees" }
    ))
}

fn substitute_matrix(m: &MatrixPoly, b: &Bindings) -> Result<MatrixPoly, String> {
    m.try_map(|x| x.substitute(b)).map_err(e)
}

fn two_parameter_cayley_hamilton() -> Check {
    let h = standard(2)?;
    let report = verify_ch_qh(&h, default_degree_bound(2)).map_err(e)?;
    ensure(report.passed(), || {
        format!("{} nonzero residual entries", report.residual_nonzero_entries.len())
    })?;
    let l = generator_matrix(2);
    let qh = assemble_ch(&l, &qh_coefficients(&h).map_err(e)?, Convention::Verbatim).map_err(e)?;
    let re = assemble_ch(&l, &sigmas(&h).map_err(e)?, Convention::Verbatim).map_err(e)?;
    let ugl = assemble_ch(&l, &ugl_coefficients(2).map_err(e)?, Convention::Verbatim).map_err(e)?;
    let no_hbar = Bindings::new().with("hbar", Scalar::zero());
    ensure(substitute_matrix(&qh, &no_hbar)? == re, || "hbar -> 0 differs from the RE identity".into())?;
    let q_one = Bindings::new().with("q", Scalar::one());
    ensure(substitute_matrix(&qh, &q_one)? == ugl, || {
        "q -> 1 differs from the enveloping identity".into()
    })?;
    Ok(format!(
        "n=2 zero residual ({}); hbar->0 gives the RE identity, q->1 the enveloping one",
        report.convention
    ))
}

fn enveloping_cayley_hamilton() -> Check {
    let report = verify_ch_ugl(2, default_degree_bound(2)).map_err(e)?;
    ensure(report.passed(), || {
        format!("{} nonzero residual entries", report.residual_nonzero_entries.len())
    })?;
    let t = taus(2).map_err(e)?;
    let free = &ugl_coefficients(2).map_err(e)?[2];
    ensure(*free == nc_determinant(&t).map_err(e)?, || {
        "free term differs from the noncommutative determinant".into()
    })?;
    let rs = RewriteSystem::complete(&relations_ugl(2), 4).map_err(e)?;
    for (k, tk) in t.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let ok = rs.commutes_mod(tk, &NCPoly::generator(i, j)).map_err(e)?;
                ensure(ok, || format!("tau_{k} not central"))?;
            }
        }
    }
    Ok("n=2 zero residual; free term is the noncommutative determinant; tau_k central".into())
}

/// `[p, k]_q = q^{-k} [p-1, k]_q + q^{p-k} [p-1, k-1]_q`.
fn pascal_holds(p: i64) -> bool {
    let q = Scalar::q();
    (1..p).all(|k| {
        let lhs = q_binomial(p, k).unwrap();
        let rhs = q.pow(-k as i32).unwrap() * q_binomial(p - 1, k).unwrap()
            + q.pow((p - k) as i32).unwrap() * q_binomial(p - 1, k - 1).unwrap();
        lhs == rhs
    })
}

fn coefficient_calculus() -> Check {
    for p in 2..=4 {
        ensure(xi(p, p, 0).map_err(e)?.is_zero(), || format!("xi({p},{p},0) != 0"))?;
        ensure(rho(p, p, 0).map_err(e)?.is_zero(), || format!("rho({p},{p},0) != 0"))?;
    }
    let mut finite = 0;
    for p in 0..=4 {
        for s in 0..=p {
            ensure(omega(p, s, s).map_err(e)?.is_one(), || format!("omega({p},{s},{s}) != 1"))?;
            for k in 0..=s {
                rho(p, s, k).map_err(|err| format!("rho({p},{s},{k}): {err}"))?;
                finite += 1;
            }
        }
    }
    for p in 1..=6 {
        ensure(q_binomial_theorem_check(p as i64), || format!("q-binomial theorem fails at p={p}"))?;
        ensure(pascal_holds(p), || format!("q-Pascal rule fails at p={p}"))?;
    }
    Ok(format!("top xi, rho vanish; omega diagonal 1; {finite} pole-free limits; q-binomial theorem p<=6"))
}

fn phi_adjudication() -> Check {
    let mut limits = Vec::new();
    for p in 1..=4 {
        let v = compare_phi(p).map_err(e)?;
        ensure(v.decisive(), || format!("p={p}: {v:?}"))?;
        limits.push(if v.upper_p_minus_1_matches { "p-1" } else { "p" });
    }
    ensure(limits.windows(2).all(|w| w[0] == w[1]), || format!("unstable verdicts {limits:?}"))?;
    Ok(format!("upper limit {} for p=1..4, extraction inverts", limits[0]))
}

fn orbit_theorem() -> Check {
    let h = standard(2)?;
    let mu = symbolic_mu(2).map_err(e)?;
    let orbit = make_orbit(&h, mu.clone(), Algebra::RE, default_degree_bound(2)).map_err(e)?;
    let report = verify_projector_family(&orbit).map_err(e)?;
    ensure(report.passed(), || format!("{report:?}"))?;

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let rational = make_orbit(
        &h,
        vec![Scalar::integer(1), Scalar::integer(3)],
        Algebra::RE,
        default_degree_bound(2),
    )
    .map_err(e)?;
    let mut tried = 0;
    while tried < 50 {
        let nu = Scalar::ratio(rng.gen_range(-40..=40), rng.gen_range(1..=7));
        if nu == Scalar::integer(1) || nu == Scalar::integer(3) {
            continue;
        }
        for o in [&orbit, &rational] {
            let t = module_nontrivial(o, &nu).map_err(e)?;
            ensure(t == Triviality::Trivial, || format!("nu={nu}: {t:?}"))?;
        }
        tried += 1;
    }
    for o in [&orbit, &rational] {
        for (i, m) in o.mu().iter().enumerate() {
            let t = module_nontrivial(o, m).map_err(e)?;
            ensure(t == Triviality::Nontrivial(i + 1), || format!("nu=mu_{}: {t:?}", i + 1))?;
        }
    }

    let mut c = c_from_mu(&mu).map_err(e)?;
    c[1] = &c[1] + &Scalar::one();
    let perturbed =
        OrbitSpec::with_values(&h, mu, c, Algebra::RE, default_degree_bound(2)).map_err(e)?;
    let control = verify_projector_family(&perturbed).map_err(e)?;
    ensure(!control.orthogonality_failures.is_empty(), || {
        "perturbed c_2 still gives orthogonal projectors".into()
    })?;
    Ok("projectors orthogonal, complete, eigen; 50 random nu trivial, roots nontrivial; perturbed c_2 fails".into())
}

fn derived_bundle() -> Check {
    let h = standard(2)?;
    let bound = default_degree_bound(2);
    let rs = RewriteSystem::complete(&relations_re(&h).map_err(e)?, bound).map_err(e)?;
    ensure(check_re_pr(&h, &rs).map_err(e)?.is_zero(), || "rewritten RE does not vanish".into())?;
    let orbit = make_orbit(&h, symbolic_mu(2).map_err(e)?, Algebra::RE, bound).map_err(e)?;
    let report = verify_ch_lplus(&h, &orbit).map_err(e)?;
    let passing: Vec<CubicVariant> = report
        .variants
        .iter()
        .filter(|v| v.report.passed())
        .map(|v| v.variant)
        .collect();
    ensure(passing.len() == 1, || format!("passing variants {passing:?}"))?;
    ensure(report.re_ch && report.classical_matches_roots, || format!("{report:?}"))?;
    for (q, m1, m2) in [(2, 1, 3), (3, -1, 2)] {
        let special = h
            .specialize(&Bindings::new().with("q", Scalar::integer(q)))
            .map_err(e)?;
        let o = make_orbit(
            &special,
            vec![Scalar::integer(m1), Scalar::integer(m2)],
            Algebra::RE,
            bound,
        )
        .map_err(e)?;
        let r = verify_ch_lplus(&special, &o).map_err(e)?;
        ensure(r.passing == Some(passing[0]), || {
            format!("q={q} mu=({m1},{m2}): passing {:?}", r.passing)
        })?;
    }
    Ok(format!(
        "rewritten RE vanishes; only the {:?} variant vanishes (also at two rational points); q=1 roots match",
        passing[0]
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn flatness() -> Check {
    let mut lines = Vec::new();
    for n in 2..=3 {
        let h = standard(n)?;
        let rs = RewriteSystem::complete(&relations_re(&h).map_err(e)?, default_degree_bound(n))
            .map_err(e)?;
        let counts = rs.normal_word_counts(n, 3);
        let vars = n * n;
        let expected: Vec<usize> = (0..=3).map(|d| binomial(d + vars - 1, d)).collect();
        ensure(counts == expected, || format!("n={n}: {counts:?} vs {expected:?}"))?;
        lines.push(format!("n={n} {counts:?}"));
    }
    Ok(format!("normal word counts {}", lines.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("Hecke validation", hecke_validation),
        ("Antisymmetrizer contract", antisymmetrizer_contract),
        ("Centrality", centrality),
        ("RE Cayley-Hamilton", re_cayley_hamilton),
        ("Two-path sigma transform", two_path_transform),
        ("Two-parameter Cayley-Hamilton", two_parameter_cayley_hamilton),
        ("Enveloping-algebra Cayley-Hamilton", enveloping_cayley_hamilton),
        ("Coefficient calculus", coefficient_calculus),
        ("Generating-function adjudication", phi_adjudication),
        ("Orbit theorem", orbit_theorem),
        ("Derived bundle", derived_bundle),
        ("Flatness proxy", flatness),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
