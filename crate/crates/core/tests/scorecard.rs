//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or overruns its time budget.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use projsym_core::casimir::{casimir_symbol_poly, n_c_poly};
use projsym_core::random::{
    generic_context, random_body, random_coefficient, random_density, random_field,
    random_homogeneous, rng, small_rational,
};
use projsym_core::resonance::{f, resonance_tuples};
use projsym_core::scalar::{int, rat};
use projsym_core::*;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq(lhs: &Poly, rhs: &Poly, what: impl FnOnce() -> String) -> Check {
    ensure(lhs == rhs, || format!("{}: difference {}", what(), lhs - rhs))
}

fn e<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn minus_inv(n: usize) -> ExactScalar {
    rat(-1, (n + 1) as i64)
}

fn sym(ctx: &Context, body: Poly) -> std::result::Result<SymbolPoly, String> {
    e(SymbolPoly::new(body, ctx.clone()))
}

fn poly(s: &str, n: usize) -> Poly {
    parse_poly(s, n).expect("fixture parses")
}

fn criterion_1() -> Check {
    for n in [2usize, 3, 5] {
        let n1 = (n + 1) as i64;
        let mut expected: BTreeMap<ExactScalar, BTreeSet<(usize, usize, usize, usize)>> =
            BTreeMap::new();
        expected.insert(rat(n1 + 2, n1), [(2, 0, 1, 0)].into());
        expected.insert(rat(n1 + 1, n1), [(2, 0, 0, 0)].into());
        expected.insert(int(1), [(2, 1, 1, 0), (2, 1, 0, 0), (1, 0, 0, 0)].into());
        let mut found: BTreeMap<ExactScalar, BTreeSet<_>> = BTreeMap::new();
        for t in e(resonance_tuples(n, 2))? {
            ensure(t.critical, || format!("n={n}: {t:?} not critical"))?;
            found.entry(t.delta.clone()).or_default().insert((t.i, t.p, t.j, t.q));
        }
        ensure(found == expected, || format!("n={n}: {found:?}"))?;
        for delta in expected.keys() {
            let report = e(classify_shift(n, delta, 2))?;
            ensure(report.is_critical(), || format!("n={n}, delta={delta} not critical"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    for n in [2usize, 3] {
        for delta in [int(0), rat(1, 2), rat(7, 3)] {
            let ctx = e(Context::with_shift(n, vec![int(0), int(0)], delta.clone()))?;
            for k in 0..=4 {
                for l in 0..=4 {
                    for q in 0..=k.min(l) {
                        let v = e(hwv(k, l, q, n))?;
                        let g = e(gamma(n, &delta, k + l, q))?;
                        ensure_eq(&casimir_symbol_poly(&v, &ctx), &v.scale(&g), || {
                            format!("n={n} delta={delta} hwv({k},{l},{q})")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    for n in [1usize, 2] {
        let mut r = rng(300 + n as u64);
        for s in 0..20 {
            let weights = vec![small_rational(&mut r), small_rational(&mut r)];
            let ctx = e(Context::new(n, weights, small_rational(&mut r)))?;
            let order = 1 + (s % 3) as u32;
            let body = random_body(&mut r, n, 2, order, 2, 4);
            let op = e(BidiffOp::new(body.clone(), ctx.clone()))?;
            let direct = e(casimir_direct(&op))?.body;
            let split = &casimir_symbol_poly(&body, &ctx) + &n_c_poly(&body, &ctx);
            ensure_eq(&direct, &split, || format!("n={n} sample {s}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let n = 2;
    let basis = e(sl_basis(n))?;
    let mut r = rng(400);
    for w in 0..3 {
        let ctx = e(generic_context(&mut r, n, 2, 3))?;
        for s in 0..10 {
            let order = 1 + (s % 3) as u32;
            let op = e(BidiffOp::new(random_body(&mut r, n, 2, order, 2, 4), ctx.clone()))?;
            let sigma = e(symbol_map(&op))?.symbol;
            for pair in &basis {
                let lhs = e(symbol_map(&e(lie_derivative_operator(&pair.element, &op))?))?.symbol;
                let rhs = e(lie_derivative_symbol(&pair.element, &sigma))?;
                ensure_eq(&lhs.body, &rhs.body, || {
                    format!("weights {w}, sample {s}, field {}", pair.label)
                })?;
            }
        }
    }
    Ok(())
}

/// Every fiber monomial of degree at most 2 over `arity` families.
fn low_degree_monomials(n: usize, arity: usize) -> Vec<Poly> {
    let vars: Vec<Poly> = (0..arity)
        .flat_map(|k| (0..n).map(move |i| (k, i)))
        .map(|(k, i)| Poly::var(n, Family::Fiber(k), i).expect("index in range"))
        .collect();
    let mut out = vec![Poly::one(n)];
    out.extend(vars.iter().cloned());
    for a in 0..vars.len() {
        for b in a..vars.len() {
            out.push(&vars[a] * &vars[b]);
        }
    }
    out
}

fn criterion_5() -> Check {
    for n in [2usize, 3] {
        let mut r = rng(500 + n as u64);
        let coeffs = [poly("1", n), poly("x1", n), poly("x1*x2", n)];
        let monos = low_degree_monomials(n, 2);
        for w in 0..10 {
            let ctx = e(generic_context(&mut r, n, 2, 2))?;
            for c in &coeffs {
                for m in &monos {
                    let p = sym(&ctx, c * m)?;
                    let engine = e(quantize(&p))?.operator;
                    let closed = e(quantize_order2_closed(&p))?;
                    ensure_eq(&engine.body, &closed.body, || {
                        format!("n={n} weights {w}: symbol {}", p.body)
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        let m = minus_inv(n);
        let delta = rat((n + 3) as i64, (n + 1) as i64);
        let grid = [int(0), m.clone(), rat(1, 2), rat(-2, 3)];
        let square = poly("x1*a1^2", n);
        for l1 in &grid {
            for l2 in &grid {
                let ctx = e(Context::with_shift(n, vec![l1.clone(), l2.clone()], delta.clone()))?;
                match quantize(&sym(&ctx, square.clone())?) {
                    Ok(res) if *l1 == m => ensure(
                        res.free_slots.contains(&SpectralLabel::new(1, 0)),
                        || format!("n={n} λ=({l1},{l2}): free slot (1,0) missing"),
                    )?,
                    Ok(_) => failures.push(format!("n={n} λ=({l1},{l2}): x1·α1² quantized")),
                    Err(Error::Obstruction(_)) if *l1 != m => {}
                    Err(err) => failures.push(format!("n={n} λ=({l1},{l2}): x1·α1²: {err}")),
                }
            }
        }
        let mixed = poly("x1*(a1*b2 + a2*b1)", n);
        let mixed_grid = [
            (int(0), int(0)),
            (m.clone(), m.clone()),
            (int(0), m.clone()),
            (m.clone(), int(0)),
            (rat(1, 2), rat(1, 3)),
        ];
        for (l1, l2) in mixed_grid {
            let ctx = e(Context::with_shift(n, vec![l1.clone(), l2.clone()], delta.clone()))?;
            match quantize(&sym(&ctx, mixed.clone())?) {
                Err(Error::Obstruction(_)) => {}
                Err(err) => failures.push(format!("n={n} λ=({l1},{l2}): {err}")),
                Ok(res) => {
                    let g = e(gamma(n, &delta, 2, 0))?;
                    let eigen = e(casimir_direct(&res.operator))?.body == res.operator.body.scale(&g);
                    failures.push(format!(
                        "n={n} λ=({l1},{l2}): x1·(α1β2+α2β1) quantized to {} with free slots {} \
                         (Casimir eigenvector: {eigen})",
                        res.operator.body,
                        res.free_slots.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
                    ));
                }
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn generators(n: usize) -> Vec<Poly> {
    [
        "x1*x2*a1*a2",
        "x1*x2*b1*b2",
        "x1*x2*(a1*b2 + a2*b1)",
        "x1*x2*(a1*b2 - a2*b1)",
        "x1*x2*a1",
        "x1*x2*b1",
        "x1*x2",
    ]
    .iter()
    .map(|s| poly(s, n))
    .collect()
}

fn criterion_7() -> Check {
    for n in [2usize, 3] {
        let m = minus_inv(n);
        let delta = rat((n + 2) as i64, (n + 1) as i64);
        let axis = [int(0), m.clone(), rat(1, 2), rat(-1, 2), rat(2, 3)];
        let admissible: BTreeSet<(ExactScalar, ExactScalar)> =
            [(int(0), m.clone()), (m.clone(), int(0)), (int(0), int(0))].into();
        let gens = generators(n);
        for l1 in &axis {
            for l2 in &axis {
                let ctx = e(Context::with_shift(n, vec![l1.clone(), l2.clone()], delta.clone()))?;
                let mut free = BTreeSet::new();
                let mut ok = true;
                for g in &gens {
                    match quantize(&sym(&ctx, g.clone())?) {
                        Ok(res) => free.extend(res.free_slots),
                        Err(Error::Obstruction(_)) => ok = false,
                        Err(err) => return Err(err.to_string()),
                    }
                }
                let expect = admissible.contains(&(l1.clone(), l2.clone()));
                ensure(ok == expect, || {
                    format!("n={n} λ=({l1},{l2}): succeeded={ok}, expected {expect}")
                })?;
                if ok {
                    ensure(free.contains(&SpectralLabel::new(0, 0)), || {
                        format!("n={n} λ=({l1},{l2}): free slot (0,0) not reported")
                    })?;
                }
            }
        }
        let ctx = e(Context::with_shift(n, vec![int(0), int(0)], delta.clone()))?;
        let basis = e(sl_basis(n))?;
        let s20 = ["a1*a2", "a1^2", "b1*b2", "b2^2", "a1*b2 + a2*b1", "a1*b1"];
        let coeffs = ["x1*x2", "x1^2*x2", "x2^3 + x1"];
        for k in [int(0), int(1), rat(-2, 5)] {
            for c in coeffs {
                for s in s20 {
                    let p = sym(&ctx, &poly(c, n) * &poly(s, n))?;
                    let qp = e(order2_k_family(&p, &k))?;
                    for pair in &basis {
                        let lhs = e(lie_derivative_operator(&pair.element, &qp))?;
                        let moved = e(lie_derivative_symbol(&pair.element, &p))?;
                        let rhs = e(order2_k_family(&moved, &k))?;
                        ensure_eq(&lhs.body, &rhs.body, || {
                            format!("n={n} k={k} symbol {} field {}", p.body, pair.label)
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let n = 2;
    let ctx = e(Context::with_shift(n, vec![int(0), int(0)], int(1)))?;
    let mut r = rng(800);
    for d in 0..=6u32 {
        for s in 0..2 {
            let p = sym(&ctx, random_homogeneous(&mut r, n, 2, d, 2, 3))?;
            let res = quantize(&p).map_err(|err| format!("degree {d} sample {s}: {err}"))?;
            let back = e(symbol_map(&res.operator))?;
            ensure_eq(&back.symbol.body, &p.body, || format!("degree {d} sample {s} round trip"))?;
        }
    }
    let mut fields: Vec<(String, VectorField)> = e(sl_basis(n))?
        .into_iter()
        .map(|p| (p.label.to_string(), p.element))
        .collect();
    for s in 0..10 {
        fields.push((format!("random field {s}"), random_field(&mut r, n, 3, 3)));
    }
    let wedge = poly("a1*b2 - a2*b1", n);
    for s in 0..3 {
        let c = random_coefficient(&mut r, n, 3, 3);
        let p1 = sym(&ctx, &c * &wedge)?;
        let p2 = sym(&ctx, &c * &Poly::alpha(n, s % n))?;
        for (name, x) in &fields {
            let lhs = e(lie_derivative_operator(x, &e(t1(&p1))?))?;
            let rhs = e(t1(&e(lie_derivative_symbol(x, &p1))?))?;
            ensure_eq(&lhs.body, &rhs.body, || format!("T1 sample {s}, {name}"))?;
            let lhs = e(lie_derivative_operator(x, &e(t2(&p2))?))?;
            let rhs = e(t2(&e(lie_derivative_symbol(x, &p2))?))?;
            ensure_eq(&lhs.body, &rhs.body, || format!("T2 sample {s}, {name}"))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    for n in [2usize, 3] {
        ensure(e(f(n, 1))? == int(1), || format!("n={n}: f(1) != 1"))?;
        for i in 2..=12 {
            let (a, b) = (e(f(n, i - 1))?, e(f(n, i))?);
            ensure(b >= a, || format!("n={n}: f({i}) = {b} < f({}) = {a}", i - 1))?;
        }
        for t in e(resonance_tuples(n, 12))?.into_iter().filter(|t| t.critical) {
            let bound = e(f(n, t.i))?;
            ensure(t.delta >= bound, || format!("n={n}: {t:?} below f = {bound}"))?;
            ensure(t.delta >= int(1), || format!("n={n}: critical value {} < 1", t.delta))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let n = 2;
    let d = e(resonant_delta(n, 7, 3, 6, 0))?;
    ensure(d == int(0), || format!("delta_(7,3;6,0) = {d}"))?;
    ensure(!resonance::is_critical_pair(7, 3, 6, 0), || "(7,3;6,0) flagged critical".into())?;
    let report = e(classify_shift(n, &int(0), 7))?;
    ensure(!report.is_critical() && !report.is_generic(), || format!("{:?}", report.class))?;
    let basis = e(sl_basis(n))?;
    let mut r = rng(1000);
    for s in 0..3 {
        let ctx = e(Context::with_shift(
            n,
            vec![small_rational(&mut r), small_rational(&mut r)],
            int(0),
        ))?;
        let degree = [7, 5, 3][s];
        let mut body = random_homogeneous(&mut r, n, 2, degree, 1, 2);
        if s == 0 {
            body += &(&e(hwv(4, 3, 3, n))? * &Poly::x(n, 0));
        }
        let p = sym(&ctx, body)?;
        let q = quantize(&p).map_err(|err| format!("sample {s}: {err}"))?;
        for pair in &basis {
            let lhs = e(lie_derivative_operator(&pair.element, &q.operator))?;
            let moved = e(lie_derivative_symbol(&pair.element, &p))?;
            let rhs = e(quantize(&moved))?.operator;
            ensure_eq(&lhs.body, &rhs.body, || format!("sample {s}, field {}", pair.label))?;
        }
    }
    Ok(())
}

fn criterion_11() -> Check {
    for i in 1..=10usize {
        for j in 0..i.min(11 - i) {
            let d = e(resonant_delta(1, i, 0, j, 0))?;
            let expected = e(one_dimensional_resonances(i, j))?;
            ensure(d == expected, || format!("({i},{j}): {d} vs {expected}"))?;
            ensure(resonance::is_critical_pair(i, 0, j, 0), || format!("({i},{j}) not critical"))?;
            let report = e(classify_shift(1, &d, 2))?;
            ensure(report.is_critical(), || format!("shift {d} not classified critical"))?;
        }
    }
    let mut r = rng(1100);
    for s in 0..5 {
        let ctx = e(generic_context(&mut r, 1, 2, 4))?;
        let p = sym(&ctx, random_body(&mut r, 1, 2, 4, 2, 5))?;
        let q = e(quantize(&p))?;
        ensure(q.unique, || format!("sample {s}: free slots at a generic shift"))?;
        let back = e(symbol_map(&q.operator))?.symbol;
        ensure_eq(&back.body, &p.body, || format!("sample {s} round trip"))?;
        let op = e(BidiffOp::new(random_body(&mut r, 1, 2, 4, 2, 5), ctx.clone()))?;
        let again = e(quantize(&e(symbol_map(&op))?.symbol))?.operator;
        ensure_eq(&again.body, &op.body, || format!("sample {s} operator round trip"))?;
    }
    Ok(())
}

fn criterion_12() -> Check {
    let n = 2;
    let mut r = rng(1200);
    let ctx = e(generic_context(&mut r, n, 2, 2))?;
    let (l1, l2, mu) = (ctx.weight(0).clone(), ctx.weight(1).clone(), ctx.mu().clone());
    let l12 = &l1 + &l2;
    for s in 0..5 {
        let c = random_coefficient(&mut r, n, 3, 3);
        let (i, j) = (s % n, (s + 1) % n);
        let f = random_density(&mut r, n, &l1, 4);
        let g = random_density(&mut r, n, &l2, 4);
        let fg = e(Density::new(&f.value * &g.value, l12.clone()))?;
        let apply1 = |op: &BidiffOp, h: &Density| e(apply_operator(op, std::slice::from_ref(h)));

        let xi = &c * &Poly::alpha(n, i);
        let lhs = e(apply_operator(&e(quantize(&sym(&ctx, xi.clone())?))?.operator, &[f.clone(), g.clone()]))?;
        let q = e(linear_quantize_order2(&xi, &l1, &(&mu - &l2)))?;
        ensure_eq(&lhs.value, &(&apply1(&q, &f)?.value * &g.value), || {
            format!("first order, sample {s}")
        })?;

        let xixj = &c * &(&Poly::alpha(n, i) * &Poly::alpha(n, j));
        let (ta, tb, tab) = e(quantize::tau_maps(&xixj))?;
        let qa = e(linear_quantize_order2(&xixj, &l1, &(&mu - &l2)))?;
        let qb = e(linear_quantize_order2(&xixj, &l2, &(&mu - &l1)))?;
        let qab = e(linear_quantize_order2(&xixj, &l12, &mu))?;
        let on_f = &apply1(&qa, &f)?.value * &g.value;
        let on_g = &f.value * &apply1(&qb, &g)?.value;
        let on_fg = apply1(&qab, &fg)?.value;
        for (name, p) in [("alpha-alpha", &ta), ("beta-beta", &tb), ("mixed", &tab)] {
            let s_p = sym(&ctx, p.clone())?;
            let closed = e(quantize_order2_closed(&s_p))?;
            let engine = e(quantize(&s_p))?.operator;
            ensure_eq(&closed.body, &engine.body, || format!("{name} closed form, sample {s}"))?;
            let lhs = e(apply_operator(&closed, &[f.clone(), g.clone()]))?.value;
            let rhs = match name {
                "alpha-alpha" => on_f.clone(),
                "beta-beta" => on_g.clone(),
                _ => &(&on_fg - &on_f) - &on_g,
            };
            ensure_eq(&lhs, &rhs, || format!("{name} composition, sample {s}"))?;
        }
    }
    Ok(())
}

type Criterion = (usize, &'static str, Duration, fn() -> Check);

const CRITERIA: [Criterion; 12] = [
    (1, "second-order resonances and their pairings", Duration::from_secs(1), criterion_1),
    (2, "eigenvalues of highest weight vectors", Duration::from_secs(10), criterion_2),
    (3, "direct Casimir equals C^t + N_C", Duration::from_secs(30), criterion_3),
    (4, "symbol map commutes with the projective algebra", Duration::from_secs(60), criterion_4),
    (5, "engine agrees with the second-order closed forms", Duration::from_secs(10), criterion_5),
    (6, "obstructions at delta = (n+3)/(n+1)", Duration::from_secs(5), criterion_6),
    (7, "admissible weights and k-family at delta = (n+2)/(n+1)", Duration::from_secs(30), criterion_7),
    (8, "delta = 1 with zero weights, T1 and T2", Duration::from_secs(60), criterion_8),
    (9, "critical values are bounded below by f", Duration::from_secs(30), criterion_9),
    (10, "delta = 0 is resonant but not critical", Duration::from_secs(60), criterion_10),
    (11, "one-dimensional resonances and round trips", Duration::from_secs(10), criterion_11),
    (12, "composition with linear quantizations", Duration::from_secs(10), criterion_12),
];

fn main() -> ExitCode {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, title, budget, run) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(()) if elapsed <= budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (took {:.2?}, budget {:.0?})", elapsed, budget),
            Err(msg) => format!("FAIL: {msg}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {id:>2} [{elapsed:>9.2?}] {title}: {verdict}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
