//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::{all_words, decompose, phase, word_matrix, Gi};
use critgeo::code::{anticommute_clifford, search_exhaustive, search_greedy, Predicate};
use critgeo::curvature::{ricci_tensor, slackness_comparison, OFF_DIAGONAL_TOLERANCE};
use critgeo::metric::{
    binomial, bound_ratio_exact, cumulative_binomial, radicand, theorem_bound, torus_diameter,
    Base, CriticalDiameter, PenaltyMetric,
};
use critgeo::pauli::{
    arnold_kheshin_rhs, bracket, bracket_expansions, cartan_tower, commutes, jordan_wigner,
    product, xtype_component, HermExpansion, MajoranaString, PauliWord,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("runtime {t:.1?} exceeds {limit:?}"))
}

// 1 -------------------------------------------------------------------------

fn pair_matches(n: usize, p: &PauliWord, q: &PauliWord) -> Result<(), String> {
    let (mp, mq) = (word_matrix(p), word_matrix(q));
    let (pq, qp) = (mp.mul(&mq), mq.mul(&mp));
    let bad = || format!("{p} {q}");
    ensure(commutes(p, q).unwrap() == (pq == qp), bad)?;
    let prod = product(p, q).unwrap();
    let (w, c) = decompose(&pq, n).ok_or_else(bad)?;
    ensure(prod.word() == &w && phase(prod.phase_exp()) == c, bad)?;
    let br = bracket(p, q).unwrap();
    let comm = pq.sub(&qp);
    if comm.is_zero() {
        ensure(br.is_zero(), bad)
    } else {
        let (w, c) = decompose(&comm, n).ok_or_else(bad)?;
        let scalar = phase(br.phase_exp()) * Gi(br.coefficient().to_i64().unwrap(), 0);
        ensure(br.word() == &w && scalar == c, bad)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=2 {
        let words = all_words(n);
        for p in &words {
            for q in &words {
                pair_matches(n, p, q)?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let p = PauliWord::from_index(3, rng.random_range(0..64));
        let q = PauliWord::from_index(3, rng.random_range(0..64));
        pair_matches(3, &p, &q)?;
        count += 1;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{count} pairs match dense matrices in {:.2?}",
        start.elapsed()
    ))
}

// 2 -------------------------------------------------------------------------

fn criterion_2() -> Outcome {
    let (p, q): (PauliWord, PauliWord) = ("1XX".parse().unwrap(), "XYX".parse().unwrap());
    let br = bracket(&p, &q).unwrap();
    let two = BigRational::from_integer(BigInt::from(2));
    ensure(br.word().to_string() == "XZ1", || {
        format!("word {}", br.word())
    })?;
    ensure(*br.coefficient() == two, || {
        format!("magnitude {}", br.coefficient())
    })?;
    let e = bracket_expansions(&HermExpansion::word(p), &HermExpansion::word(q)).unwrap();
    ensure(xtype_component(&e).is_empty(), || {
        "X-type component not empty".into()
    })?;
    Ok(format!(
        "[1XX, XYX] = {br}; magnitude 2 on XZ1; X-type part empty"
    ))
}

// 3 -------------------------------------------------------------------------

fn coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num = 0;
    while num == 0 {
        num = rng.random_range(-7i64..=7);
    }
    BigRational::new(BigInt::from(num), BigInt::from(rng.random_range(1i64..=6)))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let bases: Vec<Base> = ["1.5", "2", "4", "7.25"]
        .iter()
        .map(|b| b.parse().unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..1000 {
        let n = 1 + trial % 4;
        let tower = cartan_tower(n, rng.random_range(1..=n)).unwrap();
        let basis = tower.basis();
        let h = HermExpansion::from_terms(
            n,
            (0..rng.random_range(1..=basis.len()))
                .map(|_| {
                    (
                        basis[rng.random_range(0..basis.len())].clone(),
                        coefficient(&mut rng),
                    )
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let k = HermExpansion::from_terms(
            n,
            (0..rng.random_range(1..=5))
                .map(|_| {
                    (
                        PauliWord::from_index(n, rng.random_range(1..1 << (2 * n))),
                        coefficient(&mut rng),
                    )
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let hk = bracket_expansions(&h, &k).unwrap();
        ensure(xtype_component(&hk).is_empty(), || {
            format!("X-type part in [{h}, {k}]")
        })?;
        for b in &bases {
            let rhs = arnold_kheshin_rhs(&h, &k, &PenaltyMetric::new(b.clone(), n)).unwrap();
            ensure(rhs.is_zero(), || {
                format!("rhs {rhs} for H = {h}, K = {k}, b = {b}")
            })?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "1000 samples, N <= 4, b in {{3/2, 2, 4, 29/4}}: exact zeros in {:.2?}",
        start.elapsed()
    ))
}

// 4 -------------------------------------------------------------------------

fn criterion_4() -> Outcome {
    let b = Base::from_integer(4).unwrap();
    let r = radicand(4, 2, &b).unwrap();
    ensure(r == BigRational::from_integer(1600.into()), || {
        format!("radicand {r}")
    })?;
    let e = torus_diameter(4, 2, &b).unwrap().value;
    ensure((e - 40.0 * PI).abs() < 1e-9, || format!("e_2 = {e}"))?;
    Ok(format!("radicand 1600, e_2 = {e:.12} = 40 pi"))
}

// 5 -------------------------------------------------------------------------

/// Largest m with m^2 den <= num, by integer bisection.
fn isqrt_quotient(num: &BigUint, den: &BigUint) -> BigUint {
    let (mut lo, mut hi) = (BigUint::zero(), num / den + 1u32);
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if &mid * &mid * den <= *num {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn criterion_5() -> Outcome {
    let b = Base::from_integer(4).unwrap();
    // sum_{i<=k} binom(4, i) 16^i, from Pascal's row 1 4 6 4 1
    let row = [1u32, 4, 6, 4, 1];
    let r = |k: usize| -> BigUint {
        (1..=k)
            .map(|i| BigUint::from(row[i]) * BigUint::from(16u32).pow(i as u32))
            .sum()
    };
    let mut parts = Vec::new();
    for (k, want) in [(2usize, 42u32), (1, 144)] {
        let oracle = isqrt_quotient(&r(4), &r(k)) * row[k];
        let got = theorem_bound(4, k, &b, &CriticalDiameter::Proxy).unwrap();
        ensure(
            got.bound == BigUint::from(want) && oracle == got.bound,
            || format!("k={k}: got {}, oracle {oracle}, expected {want}", got.bound),
        )?;
        parts.push(format!(
            "k={k}: {} = {} x {}",
            got.bound, got.floor_factor, got.lemma_bound
        ));
    }
    Ok(parts.join("; "))
}

// 6 -------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let binom = binomial(100, 5);
    ensure(binom == BigUint::from(75_287_520u32), || {
        format!("binom {binom}")
    })?;
    let q = bound_ratio_exact(100, 5, &Base::from_integer(4).unwrap()).unwrap() * PI
        / binom.to_f64().unwrap().sqrt();
    ensure((0.98..=1.02).contains(&q), || format!("quality {q}"))?;
    Ok(format!(
        "binom(100,5) = {binom}; ratio * pi / sqrt(binom) = {q:.6}"
    ))
}

// 7 -------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    for n in 2..=60 {
        for k in 2..=n {
            let lhs = cumulative_binomial(k, n).unwrap();
            let rhs = cumulative_binomial(k - 1, n).unwrap() + binomial(n, k);
            ensure(lhs == rhs, || format!("F({k},{n})"))?;
        }
        let all = cumulative_binomial(n, n).unwrap();
        ensure(all == (BigUint::from(1u32) << n) - 1u32, || {
            format!("F({n},{n}) = {all}")
        })?;
    }
    Ok("recurrence holds for 2 <= k <= N <= 60; F(N,N) = 2^N - 1".into())
}

// 8 -------------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 1..=3 {
        let all: Vec<_> = (0..1u64 << (2 * n))
            .map(|v| {
                let m = MajoranaString::from_u64(n, v);
                let jw = jordan_wigner(&m);
                let mat = word_matrix(jw.word()).scale(phase(jw.phase_exp()));
                (m, mat)
            })
            .collect();
        for (x, mx) in &all {
            for (y, my) in &all {
                let anti = mx.mul(my).add(&my.mul(mx)).is_zero();
                ensure(anticommute_clifford(x, y).unwrap() == anti, || {
                    format!("{x} {y}")
                })?;
                pairs += 1;
            }
        }
    }
    let best = |n, p| search_exhaustive(n, p).unwrap()[0].k();
    ensure(best(1, Predicate::Clifford) == 2, || {
        "clifford n=1 optimum is not 2".into()
    })?;
    ensure(best(1, Predicate::Paper) == 1, || {
        "paper n=1 optimum is not 1".into()
    })?;
    for n in 1..=3 {
        for p in [Predicate::Paper, Predicate::Clifford] {
            let opt = best(n, p);
            for seed in 0..10 {
                let g = search_greedy(n, p, seed, 50).unwrap();
                ensure(g.k() <= opt, || {
                    format!("greedy k {} > optimum {opt}", g.k())
                })?;
                ensure(g == search_greedy(n, p, seed, 50).unwrap(), || {
                    format!("seed {seed} not deterministic")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{pairs} JW pairs agree; n=1 optimum clifford 2, paper 1; greedy <= exhaustive, deterministic"))
}

// 9 -------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    for b in [1u32, 2, 4] {
        let base = Base::positive(BigRational::from_integer(b.into())).unwrap();
        let s = ricci_tensor(1, &base).unwrap();
        let want = 2.0 / f64::from(b * b);
        ensure(s.diagonal.iter().all(|v| (v - want).abs() < 1e-9), || {
            format!("N=1 b={b}: {:?}", s.diagonal)
        })?;
    }
    notes.push("N=1: 2/b^2".to_string());
    let one = Base::positive(BigRational::from_integer(1.into())).unwrap();
    for n in 1..=3 {
        let s = ricci_tensor(n, &one).unwrap();
        let want = 4f64.powi(n as i32) / 2.0;
        let spread = s.lambda_max - s.lambda_min;
        ensure(spread < 1e-8 && (s.lambda_min - want).abs() < 1e-8, || {
            format!("b=1 N={n}: {s:?}")
        })?;
    }
    notes.push("b=1 Einstein 2, 8, 32".to_string());
    for n in 1..=3 {
        for b in ["1", "2", "4"] {
            let s = ricci_tensor(n, &Base::parse_positive(b).unwrap()).unwrap();
            let scale = s.diagonal.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            ensure(s.max_off_diagonal <= OFF_DIAGONAL_TOLERANCE * scale, || {
                format!("off-diagonal N={n} b={b}")
            })?;
        }
    }
    notes.push("off-diagonals within 1e-10".into());
    Ok(notes.join("; "))
}

// 10 ------------------------------------------------------------------------

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let b = Base::from_integer(4).unwrap();
    let mags: Vec<f64> = (1..=3)
        .map(|n| ricci_tensor(n, &b).unwrap().lambda_min.abs())
        .collect();
    let values = format!(
        "|lambda_min| at b=4: N=1 {:.6}, N=2 {:.6}, N=3 {:.6}",
        mags[0], mags[1], mags[2]
    );
    within(start, Duration::from_secs(300))?;
    ensure(mags.windows(2).all(|w| w[1] > w[0]), || {
        format!("{values}; not strictly increasing")
    })?;
    Ok(values)
}

// 11 ------------------------------------------------------------------------

fn criterion_11() -> Outcome {
    let b = Base::from_integer(4).unwrap();
    let mut rows = Vec::new();
    for n in [2, 3] {
        for r in slackness_comparison(n, &b, &CriticalDiameter::Proxy, None).unwrap() {
            ensure(
                r.ln_bishop_gromov.is_finite() && r.ln_topological.is_finite(),
                || "non-finite".into(),
            )?;
            ensure(r.ln_bishop_gromov >= 0.0 && r.ln_topological >= 0.0, || {
                "bound below 1".into()
            })?;
            rows.push(format!(
                "N={n} k={}: ln BG {:.3} vs ln top {:.3}",
                r.k, r.ln_bishop_gromov, r.ln_topological
            ));
        }
    }
    Ok(rows.join("; "))
}

// 12 ------------------------------------------------------------------------

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_critgeo"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn field(v: &Value) -> f64 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

fn criterion_12() -> Outcome {
    let cases: [&[&str]; 5] = [
        &["bounds", "--N", "6", "--k", "1..6", "--b", "2.5"],
        &[
            "tower",
            "--N",
            "4",
            "--k",
            "2",
            "--verify-geodesic",
            "--samples",
            "100",
            "--seed",
            "1",
        ],
        &["bracket", "--p", "1XX", "--q", "XYX"],
        &[
            "code-search",
            "--n",
            "3",
            "--method",
            "greedy",
            "--seed",
            "7",
            "--iterations",
            "100",
        ],
        &["ricci", "--N", "2", "--b", "4", "--bg", "--d", "16"],
    ];
    let mut docs = Vec::new();
    for args in cases {
        for fmt in ["json", "csv", "text"] {
            let mut a = args.to_vec();
            a.extend(["--format", fmt]);
            let first = cli(&a)?;
            ensure(first == cli(&a)?, || format!("{a:?} differs between runs"))?;
            if fmt == "json" {
                docs.push(serde_json::from_slice::<Value>(&first).map_err(|e| e.to_string())?);
            }
        }
    }
    // bounds
    let b: Base = "2.5".parse().unwrap();
    for r in docs[0]["results"].as_array().unwrap() {
        let k = r["k"].as_u64().unwrap() as usize;
        let e = torus_diameter(6, k, &b).unwrap().value;
        let t = theorem_bound(6, k, &b, &CriticalDiameter::Proxy).unwrap();
        ensure((field(&r["e_k"]) - e).abs() < 1e-9 * e, || {
            format!("bounds e_{k}")
        })?;
        ensure(r["theorem_bound"] == t.bound.to_string(), || {
            format!("bounds theorem_bound k={k}")
        })?;
    }
    // tower
    let words: Vec<String> = cartan_tower(4, 2)
        .unwrap()
        .basis()
        .iter()
        .map(|w| w.to_string())
        .collect();
    ensure(
        docs[1]["results"][0]["words"] == serde_json::json!(words),
        || "tower words".into(),
    )?;
    ensure(docs[1]["results"][1]["exclusion_passes"] == 100, || {
        "tower exclusion".into()
    })?;
    // bracket
    let br = bracket(&"1XX".parse().unwrap(), &"XYX".parse().unwrap()).unwrap();
    ensure(docs[2]["results"][0]["bracket"] == br.to_string(), || {
        "bracket".into()
    })?;
    // code-search
    let g = search_greedy(3, Predicate::Clifford, 7, 100).unwrap();
    let gens: Vec<String> = g.code.generators().iter().map(|x| x.to_string()).collect();
    ensure(
        docs[3]["results"][0]["generators"] == serde_json::json!(gens),
        || "code-search".into(),
    )?;
    ensure(docs[3]["results"][0]["distance"] == g.distance, || {
        "code-search distance".into()
    })?;
    // ricci
    let s = ricci_tensor(2, &Base::from_integer(4).unwrap()).unwrap();
    let lm = field(&docs[4]["results"][0]["lambda_min"]);
    ensure((lm - s.lambda_min).abs() < 1e-11, || {
        "ricci lambda_min".into()
    })?;
    Ok("5 subcommands x 3 formats byte-identical; JSON fields re-derived from the library".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Pauli oracle equivalence", criterion_1),
        ("bracket example", criterion_2),
        ("totally geodesic towers", criterion_3),
        ("torus diameter anchor", criterion_4),
        ("covering bound anchor", criterion_5),
        ("ratio approximation quality", criterion_6),
        ("cumulative binomial", criterion_7),
        ("code search oracles", criterion_8),
        ("curvature anchors", criterion_9),
        ("Ricci growth", criterion_10),
        ("volume comparison slackness", criterion_11),
        ("CLI determinism", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
