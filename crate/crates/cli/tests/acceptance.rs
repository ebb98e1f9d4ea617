//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde_json::Value;

use quatindex::appcli::{evaluate_formula, hp_characteristic_data, integrality_lattice};
use quatindex::exactalg::{int, rat, GradedPolynomial, Monomial, Rational};
use quatindex::indexengine::{
    alternating_numerator, glmh_specialization, index_formula, index_formula_with,
    salamon_character_identity, solve_universal_equation, specialize_to_chern, todd_top_in_chern,
    EngineConfig, IndexFormula,
};
use quatindex::repweights::{cartan_component_highest_weight, freudenthal_weights, weyl_dimension};
use quatindex::symred::{
    check_weyl_invariance, express_in_generators, express_in_pontryagin, root_vars,
    to_pontryagin_basis, GeneratorBasis, InvariantExpression,
};
use quatindex::Error;

type Outcome = Result<String, String>;

/// Id, name, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

/// Monomial written as `p1^2*q1`, coefficient as `(num, den)`.
type Expected = &'static [(&'static str, i64, i64)];

const DIM8_D0: Expected = &[
    ("p1^2", 7, 1920),
    ("p1*q1", -1, 24),
    ("p2", -1, 480),
    ("q1^2", 1, 12),
];
const DIM8_D1: Expected = &[
    ("p1^2", 209, 1920),
    ("p1*q1", 11, 24),
    ("p2", -167, 480),
    ("q1^2", 25, 12),
];
const DIM12_D0: Expected = &[
    ("p1^3", 31, 241920),
    ("p1^2*q1", -7, 2304),
    ("p1*p2", -11, 60480),
    ("p1*q1^2", 41, 2304),
    ("p2*q1", 1, 576),
    ("p3", 1, 15120),
    ("q1^3", -73, 2304),
];
const DIM12_D1: Expected = &[
    ("p1^3", -1, 6720),
    ("p1^2*q1", -77, 576),
    ("p1*p2", 1, 280),
    ("p1*q1^2", -35, 576),
    ("p2*q1", 7, 18),
    ("p3", -17, 840),
    ("q1^3", -623, 576),
];
const COMBO_11_1: Expected = &[("p1^2", 143, 960), ("p2", -89, 240), ("q1^2", 3, 1)];
const COMBO_50_M2: Expected = &[("p1^2", -17, 480), ("p1*q1", -3, 1), ("p2", 71, 120)];

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_quatindex"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`quatindex {}` exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn label(exps: &Value) -> String {
    let mut parts: Vec<(String, u64)> = exps
        .as_object()
        .map(|o| {
            o.iter()
                .map(|(k, v)| (k.clone(), v.as_u64().unwrap_or(0)))
                .collect()
        })
        .unwrap_or_default();
    parts.retain(|(_, e)| *e > 0);
    parts.sort();
    parts
        .into_iter()
        .map(|(v, e)| if e == 1 { v } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn json_terms(terms: &Value) -> Result<BTreeMap<String, Rational>, String> {
    let mut out = BTreeMap::new();
    for t in terms.as_array().ok_or("terms is not an array")? {
        let num: BigInt = t["coeff"]["num"]
            .as_str()
            .ok_or("missing num")?
            .parse()
            .map_err(|_| "bad num")?;
        let den: BigInt = t["coeff"]["den"]
            .as_str()
            .ok_or("missing den")?
            .parse()
            .map_err(|_| "bad den")?;
        out.insert(label(&t["exps"]), Rational::new(num, den));
    }
    Ok(out)
}

fn expected_map(e: Expected) -> BTreeMap<String, Rational> {
    e.iter()
        .map(|(m, n, d)| (m.to_string(), rat(*n, *d)))
        .collect()
}

fn poly_map(expr: &InvariantExpression) -> BTreeMap<String, Rational> {
    expr.poly()
        .terms()
        .map(|(mono, c)| (mono.display(expr.vars()), c.clone()))
        .collect()
}

fn formula_via_cli(m: usize, k: usize, want: Expected) -> Outcome {
    let out = cli(&[
        "formula",
        "--m",
        &m.to_string(),
        "--k",
        &k.to_string(),
        "--format",
        "json",
    ])?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    if v["dim"] != 4 * m || v["k"] != k {
        return Err(format!("header mismatch: dim {}, k {}", v["dim"], v["k"]));
    }
    let got = json_terms(&v["terms"])?;
    if got != expected_map(want) {
        return Err(format!("D{k} in dim {}: got {got:?}", 4 * m));
    }
    Ok(format!("D{k}: {} coefficients exact", want.len()))
}

fn criterion_1() -> Outcome {
    let a = formula_via_cli(2, 0, DIM8_D0)?;
    let b = formula_via_cli(2, 1, DIM8_D1)?;
    Ok(format!("{a}; {b}"))
}

fn criterion_2() -> Outcome {
    let a = formula_via_cli(3, 0, DIM12_D0)?;
    let b = formula_via_cli(3, 1, DIM12_D1)?;
    Ok(format!("{a}; {b}"))
}

fn hp_values(formulas: &[IndexFormula; 4]) -> Result<Vec<Rational>, String> {
    let hp2 = hp_characteristic_data(2);
    let hp3 = hp_characteristic_data(3);
    formulas
        .iter()
        .map(|f| evaluate_formula(f, if f.m == 2 { &hp2 } else { &hp3 }).map_err(|e| e.to_string()))
        .collect()
}

fn check_hp_values(formulas: &[IndexFormula; 4]) -> Outcome {
    let want = [int(1), int(35), int(-1), int(-63)];
    let got = hp_values(formulas)?;
    if got != want {
        return Err(format!("HP values {got:?}"));
    }
    Ok("HP2: D0 = 1, D1 = 35; HP3: D0 = -1, D1 = -63".into())
}

fn reference_formulas(config: &EngineConfig) -> Result<[IndexFormula; 4], String> {
    let f = |m, k| index_formula_with(m, k, config).map_err(|e| e.to_string());
    Ok([f(2, 0)?, f(2, 1)?, f(3, 0)?, f(3, 1)?])
}

fn criterion_3() -> Outcome {
    let formulas = reference_formulas(&EngineConfig::default())?;
    let start = Instant::now();
    let msg = check_hp_values(&formulas)?;
    let eval_time = start.elapsed();
    if eval_time > Duration::from_secs(1) {
        return Err(format!("evaluation took {eval_time:?}"));
    }
    for (m, k, want) in [(2, 0, "1"), (2, 1, "35"), (3, 0, "-1"), (3, 1, "-63")] {
        let out = cli(&[
            "evaluate",
            "--m",
            &m.to_string(),
            "--k",
            &k.to_string(),
            "--manifold",
            "hp",
        ])?;
        if out.trim() != want {
            return Err(format!("CLI evaluate m={m} k={k} printed {}", out.trim()));
        }
    }
    Ok(format!(
        "{msg} (evaluation {:.1} ms, CLI agrees)",
        eval_time.as_secs_f64() * 1e3
    ))
}

fn criterion_4() -> Outcome {
    let e = |r: quatindex::Result<InvariantExpression>| r.map_err(|e| e.to_string());
    let g2 = e(glmh_specialization(2))?;
    let want: BTreeMap<String, Rational> = [
        ("c2^2".to_string(), rat(1, 80)),
        ("c4".to_string(), rat(-1, 240)),
    ]
    .into();
    if poly_map(&g2) != want {
        return Err(format!("GL(2,H) gives {g2}"));
    }
    let td2 = e(todd_top_in_chern(2))?;
    if g2.poly() != &td2.poly().scale(&int(3)) {
        return Err(format!("GL(2,H) is not 3 td_top(F) = 3 ({td2})"));
    }
    for m in 2..=3usize {
        let g = e(glmh_specialization(m))?;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let td = e(todd_top_in_chern(m))?;
        if g.poly() != &td.poly().scale(&int(sign * (m as i64 + 1))) {
            return Err(format!("m = {m}: {g} vs td_top {td}"));
        }
        let f = index_formula(m, 0).map_err(|e| e.to_string())?;
        let via_p = e(specialize_to_chern(&f))?;
        if via_p != g {
            return Err(format!("m = {m}: general formula at q1 = 0 gives {via_p}"));
        }
    }
    Ok("1/80 c2^2 - 1/240 c4 = 3 td_top(F); (-1)^m (m+1) td_top(F) for m = 2, 3".into())
}

/// Whether `v` is an integer combination of the rows of an upper triangular
/// basis.
fn in_row_lattice(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut rest = v.to_vec();
    for row in rows {
        let Some(col) = row.iter().position(|x| *x != BigInt::from(0)) else {
            continue;
        };
        if &rest[col] % &row[col] != BigInt::from(0) {
            return false;
        }
        let q = &rest[col] / &row[col];
        for (x, r) in rest.iter_mut().zip(row) {
            *x -= &q * r;
        }
    }
    rest.iter().all(|x| *x == BigInt::from(0))
}

fn criterion_5() -> Outcome {
    let fs = [
        index_formula(2, 0).map_err(|e| e.to_string())?,
        index_formula(2, 1).map_err(|e| e.to_string())?,
    ];
    let start = Instant::now();
    let lattice = integrality_lattice(&fs).map_err(|e| e.to_string())?;
    for (a, b, want) in [(11, 1, COMBO_11_1), (50, -2, COMBO_50_M2)] {
        let c = lattice
            .combination(&[BigInt::from(a), BigInt::from(b)])
            .map_err(|e| e.to_string())?;
        if poly_map(&c.residual) != expected_map(want) {
            return Err(format!("({a}, {b}) gives {}", c.residual));
        }
    }
    let lib_time = start.elapsed();
    if lib_time > Duration::from_secs(1) {
        return Err(format!("lattice computation took {lib_time:?}"));
    }

    let out = cli(&["integrality", "--m", "2", "--ks", "0,1", "--format", "json"])?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<BigInt>> = v["hnf"]
        .as_array()
        .ok_or("no hnf rows")?
        .iter()
        .map(|c| {
            c["combo"]
                .as_array()
                .map(|xs| xs.iter().filter_map(|x| x.as_str()?.parse().ok()).collect())
                .unwrap_or_default()
        })
        .collect();
    for combo in [[11, 1], [50, -2]] {
        let combo: Vec<BigInt> = combo.iter().map(|&x| BigInt::from(x)).collect();
        if !in_row_lattice(&rows, &combo) {
            return Err(format!("{combo:?} is not in the emitted lattice {rows:?}"));
        }
    }
    Ok(format!(
        "residuals exact; (11,1) and (50,-2) lie in the lattice of {} emitted rows",
        rows.len()
    ))
}

fn random_round_trips(rng: &mut StdRng, count: usize) -> Result<(), String> {
    for i in 0..count {
        let m = if i % 2 == 0 { 2 } else { 3 };
        let basis = GeneratorBasis::quaternionic(m);
        let gv = basis.generator_vars().clone();
        let nterms = rng.random_range(1..=5);
        let terms: Vec<(Monomial, Rational)> = (0..nterms)
            .map(|_| {
                let e: Vec<u32> = (0..gv.len()).map(|_| rng.random_range(0..=2)).collect();
                let c = rat(rng.random_range(-20..=20), rng.random_range(1..=12));
                (Monomial::from_exponents(&e), c)
            })
            .collect();
        let expr = InvariantExpression::new(GradedPolynomial::from_terms(&gv, terms));
        let expanded = basis.expand(&expr).map_err(|e| e.to_string())?;
        let back = express_in_generators(&expanded, &basis).map_err(|e| e.to_string())?;
        if back != expr {
            return Err(format!("round trip {i} failed: {expr} came back as {back}"));
        }
        let direct = express_in_pontryagin(&expanded, m).map_err(|e| e.to_string())?;
        if direct != to_pontryagin_basis(&expr, m).map_err(|e| e.to_string())? {
            return Err(format!("Pontryagin round trip {i} failed for {expr}"));
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut weights = 0;
    for m in 1..=3usize {
        for k in 0..=2usize {
            for j in 0..2 * m {
                let hw = cartan_component_highest_weight(j, k, m).map_err(|e| e.to_string())?;
                let ws = freudenthal_weights(&hw).map_err(|e| e.to_string())?;
                let dim = weyl_dimension(&hw).map_err(|e| e.to_string())?;
                if ws.dimension() != dim {
                    return Err(format!(
                        "{hw}: Freudenthal {} vs Weyl {dim}",
                        ws.dimension()
                    ));
                }
                weights += 1;
            }
        }
    }

    for m in 2..=3usize {
        let data = hp_characteristic_data(m);
        for k in 0..=2usize {
            let n = alternating_numerator(m, k, 8 * m as u32).map_err(|e| e.to_string())?;
            if !check_weyl_invariance(&n, m) {
                return Err(format!("numerator m={m} k={k} is not Weyl invariant"));
            }
            solve_universal_equation(&n, m).map_err(|e| format!("m={m} k={k}: {e}"))?;
            let f = index_formula(m, k).map_err(|e| e.to_string())?;
            let v = evaluate_formula(&f, &data).map_err(|e| e.to_string())?;
            if !v.is_integer() {
                return Err(format!("ind D{k} on HP{m} = {v}"));
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    random_round_trips(&mut rng, 100)?;

    for m in 1..=3usize {
        if !salamon_character_identity(m, 8 * m as u32) {
            return Err(format!("Lambda_t identity fails for m = {m}"));
        }
    }
    Ok(format!(
        "{weights} highest weights, 6 numerators invariant and divisible, 100 round trips, Lambda_t m = 1..3, HP indices integral"
    ))
}

fn criterion_7() -> Outcome {
    let mut perturbed = 0;
    for k in 0..=1usize {
        let m = 2;
        let cap = 8 * m as u32;
        let n = alternating_numerator(m, k, cap).map_err(|e| e.to_string())?;
        let vars = root_vars(m);
        for a in 0..=cap / 2 {
            for b in 0..=cap / 2 - a {
                for c in 0..=cap / 2 - a - b {
                    let bump = GradedPolynomial::from_terms(
                        &vars,
                        [(Monomial::from_exponents(&[a, b, c]), int(1))],
                    );
                    match solve_universal_equation(&(&n + &bump), m) {
                        Err(Error::NotDivisible { .. }) => perturbed += 1,
                        other => {
                            return Err(format!(
                                "perturbing y1^{a} y2^{b} y^{c} (k={k}) gave {other:?}"
                            ))
                        }
                    }
                }
            }
        }
    }

    let flipped = reference_formulas(&EngineConfig {
        orientation: -1,
        ..EngineConfig::default()
    })?;
    let values = hp_values(&flipped)?;
    if values[0] != int(-1) {
        return Err(format!("flipped orientation gives {} on HP2", values[0]));
    }
    if check_hp_values(&flipped).is_ok() {
        return Err("criterion 3 still passes with the flipped orientation".into());
    }
    Ok(format!(
        "{perturbed} single-coefficient perturbations all NotDivisible; flipped sign gives D0 = -1 on HP2"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (1, "dim-8 formulas", Duration::from_secs(5), criterion_1),
        (2, "dim-12 formulas", Duration::from_secs(60), criterion_2),
        (3, "HP^m indices", Duration::from_secs(60), criterion_3),
        (
            4,
            "GL(m,H) specialization",
            Duration::from_secs(10),
            criterion_4,
        ),
        (
            5,
            "integrality combinations",
            Duration::from_secs(5),
            criterion_5,
        ),
        (6, "property suite", Duration::from_secs(300), criterion_6),
        (
            7,
            "negative controls",
            Duration::from_secs(300),
            criterion_7,
        ),
    ];
    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!(
            "criterion {id} {}: {name} ({:.2} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
