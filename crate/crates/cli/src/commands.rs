use crate::output::{Floats, Record, Report};
use crate::{
    BoundsArgs, BracketArgs, CliError, CodeSearchArgs, KRange, RicciArgs, SearchMethod, TowerArgs,
};
use critgeo::code::{
    search_exhaustive, search_greedy_parallel, CodeSearchResult, Predicate, EXHAUSTIVE_MAX_MODES,
};
use critgeo::curvature::{bishop_gromov_with_lambda, ricci_tensor, slackness_comparison};
use critgeo::metric::{
    covering_report, cumulative_binomial, parse_decimal, Base, CriticalDiameter, PenaltyMetric,
};
use critgeo::pauli::{
    arnold_kheshin_rhs, bracket, bracket_expansions, cartan_tower, commutes, product,
    xtype_component, HermExpansion, PauliWord,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Shards for parallel greedy search; fixed so output never depends on the
/// machine.
const GREEDY_SHARDS: usize = 16;

macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = Record::new();
        $(r.insert($k.to_string(), Value::from($v));)*
        r
    }};
}

fn penalty_base(s: &str) -> Result<Base, CliError> {
    s.parse::<Base>()
        .map_err(|e| CliError::Usage(format!("--b {s}: {e} (metric commands need b > 1)")))
}

fn critical_diameter(d_c: Option<&str>) -> Result<CriticalDiameter, CliError> {
    match d_c {
        None => Ok(CriticalDiameter::Proxy),
        Some(s) => {
            let exact = parse_decimal(s)
                .ok_or_else(|| CliError::Usage(format!("--d-c {s}: not a decimal")))?;
            Ok(CriticalDiameter::given(exact)?)
        }
    }
}

fn expansion_record(e: &HermExpansion) -> Value {
    Value::Object(
        e.iter()
            .map(|(w, c)| (w.to_string(), Value::from(c.to_string())))
            .collect(),
    )
}

// ---------------------------------------------------------------------------

pub fn bounds(args: &BoundsArgs, fl: Floats) -> Result<Report, CliError> {
    let b = penalty_base(&args.b)?;
    let d_c = critical_diameter(args.d_c.as_deref())?;
    let ks = args.k.resolve(args.n_qubits)?;
    let mut report = Report::new(
        "bounds",
        record! {
            "N" => args.n_qubits,
            "k" => args.k.to_string(),
            "b" => args.b.clone(),
            "d_c" => args.d_c.clone().unwrap_or_else(|| "proxy".into()),
            "precision" => fl.precision,
        },
    );
    if args.d_c.is_none() {
        report.warn("d_c not given: using the proxy d_c = e_N");
    }
    let mut overflowed = false;
    for k in ks {
        let r = covering_report(args.n_qubits, k, &b, &d_c)?;
        overflowed |= r.log_domain;
        report.results.push(record! {
            "N" => r.n_qubits,
            "k" => r.k,
            "b" => r.base.to_string(),
            "radicand_k" => r.radicand_k.to_string(),
            "e_k" => fl.fmt(r.e_k),
            "ln_e_k" => fl.fmt(r.ln_e_k),
            "d_c" => fl.fmt(r.d_c),
            "ln_d_c" => fl.fmt(r.ln_d_c),
            "d_c_source" => match &r.d_c_source {
                CriticalDiameter::Proxy => "proxy".to_string(),
                CriticalDiameter::Given(d) => d.to_string(),
            },
            "scale" => fl.fmt(r.scale),
            "trivial_bound" => fl.fmt(r.trivial_bound),
            "lemma_bound" => r.lemma_bound.to_string(),
            "floor_factor" => r.floor_factor.to_string(),
            "theorem_bound" => r.theorem_bound.to_string(),
            "ratio_exact" => fl.fmt(r.ratio_exact),
            "ratio_exact_pi" => fl.fmt(r.ratio_exact_pi),
            "ratio_approx" => fl.fmt(r.ratio_approx),
            "log_domain" => r.log_domain,
            "log_route_rel_err" => fl.fmt(r.log_route_rel_err),
        });
    }
    if overflowed {
        report.warn("some plain floating fields overflowed and are null; use the ln_* fields");
    }
    Ok(report)
}

// ---------------------------------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> PauliWord {
    loop {
        let x: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let z: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let w = PauliWord::from_xz(&x, &z).expect("equal lengths");
        if !w.is_identity() {
            return w;
        }
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.random_range(1i64..=9) * if rng.random() { 1 } else { -1 };
    BigRational::new(BigInt::from(num), BigInt::from(rng.random_range(1i64..=4)))
}

pub fn tower(args: &TowerArgs, fl: Floats) -> Result<Report, CliError> {
    let (n, k) = (args.n_qubits, args.k);
    let t = cartan_tower(n, k)?;
    let mut report = Report::new(
        "tower",
        record! {
            "N" => n,
            "k" => k,
            "verify_geodesic" => args.verify_geodesic,
            "samples" => args.samples,
            "seed" => args.seed,
            "b" => args.b.clone(),
            "precision" => fl.precision,
        },
    );
    report.results.push(record! {
        "N" => n,
        "k" => k,
        "dimension" => t.dimension(),
        "cumulative_binomial" => cumulative_binomial(k, n)?.to_string(),
        "all_commute" => t.all_commute(),
        "x_type_only" => t.basis().iter().all(PauliWord::is_x_type),
        "words" => t.basis().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    if args.verify_geodesic {
        let b = penalty_base(&args.b)?;
        let metric = PenaltyMetric::new(b, n);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let basis = t.basis();
        let (mut excluded, mut rhs_zero) = (0u64, 0u64);
        for _ in 0..args.samples {
            let h = HermExpansion::from_terms(
                n,
                (0..rng.random_range(1..=basis.len().min(4)))
                    .map(|_| {
                        (
                            basis[rng.random_range(0..basis.len())].clone(),
                            random_coefficient(&mut rng),
                        )
                    })
                    .collect::<Vec<_>>(),
            )?;
            let kx = HermExpansion::from_terms(
                n,
                (0..rng.random_range(1..=4))
                    .map(|_| (random_word(&mut rng, n), random_coefficient(&mut rng)))
                    .collect::<Vec<_>>(),
            )?;
            let hk = bracket_expansions(&h, &kx)?;
            excluded += xtype_component(&hk).is_empty() as u64;
            rhs_zero += num_traits::Zero::is_zero(&arnold_kheshin_rhs(&h, &kx, &metric)?) as u64;
        }
        report.results.push(record! {
            "check" => "geodesic",
            "samples" => args.samples,
            "seed" => args.seed,
            "b" => args.b.clone(),
            "exclusion_passes" => excluded,
            "rhs_zero_passes" => rhs_zero,
        });
        if excluded != args.samples || rhs_zero != args.samples {
            report.warn("totally geodesic check failed on some samples");
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------

fn infer_qubits(s: &str) -> Result<usize, CliError> {
    let first = s
        .split(',')
        .next()
        .unwrap_or("")
        .split(':')
        .next()
        .unwrap_or("")
        .trim();
    if first.is_empty() {
        return Err(CliError::Usage(format!(
            "cannot read a Pauli word from {s:?}"
        )));
    }
    Ok(first.chars().count())
}

fn single_word(e: &HermExpansion) -> Option<PauliWord> {
    let mut it = e.iter();
    match (it.next(), it.next()) {
        (Some((w, c)), None) if num_traits::One::is_one(c) => Some(w.clone()),
        _ => None,
    }
}

pub fn bracket_cmd(args: &BracketArgs, fl: Floats) -> Result<Report, CliError> {
    let n = infer_qubits(&args.p)?;
    let p = HermExpansion::parse(n, &args.p)?;
    let q = HermExpansion::parse(n, &args.q)?;
    let b = penalty_base(&args.b)?;
    let mut report = Report::new(
        "bracket",
        record! {
            "p" => args.p.clone(),
            "q" => args.q.clone(),
            "b" => args.b.clone(),
            "precision" => fl.precision,
        },
    );
    let mut r = record! { "N" => n };
    if let (Some(pw), Some(qw)) = (single_word(&p), single_word(&q)) {
        let prod = product(&pw, &qw)?;
        let br = bracket(&pw, &qw)?;
        r.insert("commutes".into(), commutes(&pw, &qw)?.into());
        r.insert("product".into(), prod.to_string().into());
        r.insert("product_word".into(), prod.word().to_string().into());
        r.insert("product_phase_exp".into(), prod.phase_exp().into());
        r.insert("bracket".into(), br.to_string().into());
        r.insert("bracket_word".into(), br.word().to_string().into());
        r.insert("bracket_phase_exp".into(), br.phase_exp().into());
        r.insert(
            "bracket_magnitude".into(),
            br.coefficient().to_string().into(),
        );
    }
    let e = bracket_expansions(&p, &q)?;
    let x = xtype_component(&e);
    let metric = PenaltyMetric::new(b, n);
    r.insert("su_bracket".into(), expansion_record(&e));
    r.insert("xtype_component".into(), expansion_record(&x));
    r.insert("xtype_empty".into(), x.is_empty().into());
    r.insert(
        "arnold_kheshin_rhs".into(),
        arnold_kheshin_rhs(&p, &q, &metric)?.to_string().into(),
    );
    report.results.push(r);
    report.warn("su_bracket is [iP, iQ] on skew-Hermitian elements, coefficients of i*P_K");
    Ok(report)
}

// ---------------------------------------------------------------------------

fn code_record(r: &CodeSearchResult, n: usize) -> Record {
    let rate = r.rate().map(|q| q.to_string()).unwrap_or_default();
    let rate_paper = r.rate_paper().map(|q| q.to_string()).unwrap_or_default();
    record! {
        "n" => n,
        "predicate" => r.predicate.name(),
        "method" => r.method.name(),
        "seed" => r.seed.map(Value::from).unwrap_or(Value::Null),
        "k" => r.k(),
        "distance" => r.distance,
        "rate" => rate,
        "rate_per_mode" => rate_paper,
        "valid" => r.valid,
        "generators" => r.code.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    }
}

pub fn code_search(args: &CodeSearchArgs, fl: Floats) -> Result<Report, CliError> {
    let predicate: Predicate = args.predicate.parse()?;
    let mut report = Report::new(
        "code-search",
        record! {
            "n" => args.n_modes,
            "predicate" => predicate.name(),
            "method" => args.method.name(),
            "seed" => args.seed,
            "iterations" => args.iterations,
            "precision" => fl.precision,
        },
    );
    match args.method {
        SearchMethod::Exhaustive => {
            if args.n_modes > EXHAUSTIVE_MAX_MODES {
                return Err(CliError::Usage(format!(
                    "exhaustive search supports n <= {EXHAUSTIVE_MAX_MODES}; use --method greedy for n = {}",
                    args.n_modes
                )));
            }
            let all = search_exhaustive(args.n_modes, predicate)?;
            report
                .results
                .extend(all.iter().map(|r| code_record(r, args.n_modes)));
        }
        SearchMethod::Greedy => {
            let r = search_greedy_parallel(
                args.n_modes,
                predicate,
                args.seed,
                args.iterations,
                GREEDY_SHARDS,
            )?;
            report.results.push(code_record(&r, args.n_modes));
        }
    }
    if predicate == Predicate::Paper {
        report.warn("paper predicate: parity of w(x) + w(y) - overlap; differs from Clifford anticommutation");
    }
    Ok(report)
}

// ---------------------------------------------------------------------------

pub fn ricci(args: &RicciArgs, fl: Floats) -> Result<Report, CliError> {
    let b = Base::parse_positive(&args.b)
        .map_err(|e| CliError::Usage(format!("--b {}: {e}", args.b)))?;
    let mut report = Report::new(
        "ricci",
        record! {
            "N" => args.n_qubits,
            "b" => args.b.clone(),
            "bg" => args.bg,
            "d" => args.d.map(|d| fl.fmt(d)).unwrap_or(Value::Null),
            "d_c" => args.d_c.clone().unwrap_or_else(|| "proxy".into()),
            "ln_vol_reference" => args.ln_vol_ref.map(|v| fl.fmt(v)).unwrap_or(Value::Null),
            "precision" => fl.precision,
        },
    );
    let s = ricci_tensor(args.n_qubits, &b)?;
    report.results.push(record! {
        "kind" => "spectrum",
        "N" => s.n_qubits,
        "b" => s.base.to_string(),
        "dimension" => s.dimension(),
        "lambda_min" => fl.fmt(s.lambda_min),
        "lambda_max" => fl.fmt(s.lambda_max),
        "max_off_diagonal" => fl.fmt(s.max_off_diagonal),
    });
    for (w, v) in s.words.iter().zip(&s.diagonal) {
        report
            .results
            .push(record! { "kind" => "diagonal", "word" => w.to_string(), "value" => fl.fmt(*v) });
    }
    if args.bg {
        let d = args.d.unwrap_or_else(|| b.to_f64());
        if args.d.is_none() {
            report.warn("--d not given: using d = b");
        }
        let bg = bishop_gromov_with_lambda(args.n_qubits, &b, d, s.lambda_min, args.ln_vol_ref)?;
        if bg.ln_vol_reference_is_default {
            report.warn("ln vol_reference defaults to ln vol(SU(2^N)) under tr(A^dagger B)/2^N");
        }
        report.results.push(record! {
            "kind" => "bishop_gromov",
            "d" => fl.fmt(bg.d),
            "dimension" => bg.dimension,
            "lambda_min" => fl.fmt(bg.lambda_min),
            "kappa" => fl.fmt(bg.kappa),
            "model" => bg.model.name(),
            "ln_vol_reference" => fl.fmt(bg.ln_vol_reference),
            "log_vol_m" => fl.fmt(bg.log_vol_m),
            "log_vol_ball" => fl.fmt(bg.log_vol_ball),
            "log_bound" => fl.fmt(bg.log_bound),
            "log_bound_floored" => fl.fmt(bg.log_bound_floored),
        });
        if b.is_penalty() {
            let d_c = critical_diameter(args.d_c.as_deref())?;
            for row in slackness_comparison(args.n_qubits, &b, &d_c, args.ln_vol_ref)? {
                report.results.push(record! {
                    "kind" => "comparison",
                    "k" => row.k,
                    "d" => fl.fmt(row.d),
                    "ln_bishop_gromov" => fl.fmt(row.ln_bishop_gromov),
                    "ln_topological" => fl.fmt(row.ln_topological),
                    "topological_bound" => row.topological_bound.to_string(),
                    "ln_advantage" => fl.fmt(row.ln_advantage),
                });
            }
        } else {
            report.warn("b <= 1: topological comparison needs b > 1 and was skipped");
        }
    }
    Ok(report)
}

impl KRange {
    pub fn resolve(&self, n: usize) -> Result<Vec<usize>, CliError> {
        let (lo, hi) = (self.lo, self.hi);
        if lo == 0 || hi > n || lo > hi {
            return Err(CliError::Usage(format!(
                "--k {self}: need 1 <= k <= N = {n}"
            )));
        }
        Ok((lo..=hi).collect())
    }
}
