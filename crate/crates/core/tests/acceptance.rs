//! Acceptance suite: each criterion runs in sequence against its own time
//! limit and prints one PASS/FAIL line. The test fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use solvcohom::cli::run;
use solvcohom::cohomology::{
    bott_chern, check_theorem_hypotheses, dolbeault, hodge_kernels, CohomologyTable, HodgeTheory,
};
use solvcohom::linalg::{span_dim, GaussianRational as GR};
use solvcohom::models::{
    build_builtin, build_sawai_yamada, builtin, builtin_names, nakamura_span, Deformation,
    NakamuraSpec, SawaiYamadaSpec, Variant,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("solvcohom").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

/// `h^{k,0}, …, h^{0,k}` for each `k`, rows joined by `;`.
fn layout(t: &CohomologyTable, n: usize) -> String {
    t.rows(n)
        .iter()
        .map(|r| {
            r.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Reads a machine-output table of one theory back into the same layout.
fn machine_layout(output: &str, theory: &str, n: usize) -> Result<String, String> {
    let mut cells = std::collections::BTreeMap::new();
    for line in output.lines().filter(|l| l.starts_with("h[")) {
        let (k, v) = line.split_once(" = ").ok_or(format!("bad line {line}"))?;
        cells.insert(k.to_string(), v.to_string());
    }
    (0..=2 * n)
        .map(|k| {
            (0..=k)
                .rev()
                .filter(|&p| p <= n && k - p <= n)
                .map(|p| {
                    cells
                        .get(&format!("h[{theory}][{p}][{}]", k - p))
                        .cloned()
                        .ok_or(format!("missing {theory} ({p},{})", k - p))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|r| r.join(","))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|rows| rows.join(";"))
}

fn compute_layout(model: &str, t: Option<&str>, theory: &str) -> Result<String, String> {
    let mut args = vec!["compute", model, "--theory", theory, "--output", "machine"];
    if let Some(t) = t {
        args.extend(["--t", t]);
    }
    let (code, out) = cli(&args);
    ensure(code == 0, || format!("{model}: exit {code}: {out}"))?;
    machine_layout(&out, theory, 3)
}

fn same(what: &str, got: String, want: &str) -> Outcome {
    ensure(got == want, || {
        format!("{what}: computed {got}, expected {want}")
    })
}

const NAKAMURA_DOLBEAULT: &str = "1;3,3;3,9,3;1,9,9,1;3,9,3;3,3;1";
const NAKAMURA_BOTT_CHERN: &str = "1;1,1;3,7,3;1,9,9,1;3,11,3;5,5;1";
const CASE1_DOLBEAULT: &str = "1;1,1;1,3,1;1,3,3,1;1,3,1;1,1;1";
const CASE1_BOTT_CHERN: &str = "1;1,1;1,3,1;1,3,3,1;1,3,1;1,1;1";
const CASE2_DOLBEAULT: &str = "1;0,2;2,2,1;0,4,4,0;1,2,2;2,0;1";

fn criterion_1() -> Outcome {
    same(
        "nakamura-B dolbeault",
        compute_layout("nakamura-B", None, "dolbeault")?,
        NAKAMURA_DOLBEAULT,
    )?;
    same(
        "nakamura-C bott-chern",
        compute_layout("nakamura-C", None, "bott-chern")?,
        NAKAMURA_BOTT_CHERN,
    )
}

fn criterion_2() -> Outcome {
    for t in ["1/2", "1/3+1/5i"] {
        same(
            &format!("nakamura-B-case1 at t = {t}"),
            compute_layout("nakamura-B-case1", Some(t), "dolbeault")?,
            CASE1_DOLBEAULT,
        )?;
        same(
            &format!("nakamura-C-case1 at t = {t}"),
            compute_layout("nakamura-C-case1", Some(t), "bott-chern")?,
            CASE1_BOTT_CHERN,
        )?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    same(
        "nakamura-B-case2 at t = 1/2",
        compute_layout("nakamura-B-case2", Some("1/2"), "dolbeault")?,
        CASE2_DOLBEAULT,
    )
}

fn criterion_4() -> Outcome {
    let checks = [
        ("nakamura-C-case1", "1/2", "ddbar-lemma", 0),
        ("nakamura-B-case2", "1/2", "e1-degeneration", 0),
        ("nakamura-C-case1", "0", "ddbar-lemma", 1),
        ("nakamura-B-case2", "0", "e1-degeneration", 1),
    ];
    for (model, t, predicate, want) in checks {
        let (code, out) = cli(&["check", model, "--t", t, "--predicate", predicate]);
        ensure(code == want, || {
            format!("check {model} --t {t} --predicate {predicate}: exit {code}: {out}")
        })?;
    }
    for (family, ts, report, property) in [
        ("nakamura-case1", "0,1/4,1/2", "ddbar-lemma", "ddbar-lemma"),
        ("nakamura-case2", "0,1/2", "e1", "e1-degeneration"),
    ] {
        let (code, out) = cli(&["scan", family, "--t", ts, "--report", report]);
        let flag = format!("summary: {property}: holds for every t ≠ 0 but fails at t = 0");
        ensure(code == 0 && out.contains(&flag), || {
            format!("scan {family}: {out}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let deformed = build_sawai_yamada(&SawaiYamadaSpec::heisenberg(GR::ratio(1, 2)))
        .map_err(|e| e.to_string())?;
    let h = dolbeault(deformed.complex());
    ensure(h.get(1, 0) == 0 && h.get(7, 0) == 0, || {
        format!(
            "t = 1/2: h^(1,0) = {}, h^(7,0) = {}",
            h.get(1, 0),
            h.get(7, 0)
        )
    })?;
    let undeformed =
        build_sawai_yamada(&SawaiYamadaSpec::heisenberg(GR::zero())).map_err(|e| e.to_string())?;
    let h0 = dolbeault(undeformed.complex());
    ensure(h0.get(1, 0) == 7, || {
        format!("t = 0: h^(1,0) = {}", h0.get(1, 0))
    })
}

fn criterion_6() -> Outcome {
    let b = build_builtin("nakamura-B-case1", Some(&GR::ratio(1, 2))).map_err(|e| e.to_string())?;
    let c = b.complex();
    let kernels = hodge_kernels(c, HodgeTheory::Dolbeault);
    let reps = kernels.representatives_at(1, 1);
    let names = c.labels(1, 1);
    let mut all = reps.to_vec();
    for label in ["phi1^phib1", "phi2^phib3", "phi3^phib2"] {
        let i = names
            .iter()
            .position(|n| n == label)
            .ok_or(format!("no basis element {label}"))?;
        let mut e = vec![GR::zero(); names.len()];
        e[i] = GR::one();
        all.push(e);
    }
    ensure(reps.len() == 3 && span_dim(&all) == 3, || {
        format!(
            "ker of the Dolbeault Laplacian at (1,1) has dimension {} and is not the expected span",
            reps.len()
        )
    })?;

    let cm =
        build_builtin("nakamura-C-case1", Some(&GR::ratio(1, 2))).map_err(|e| e.to_string())?;
    let bc = bott_chern(cm.complex());
    let harmonic = hodge_kernels(cm.complex(), HodgeTheory::BottChern);
    for (p, q) in cm.complex().bidegrees() {
        ensure(harmonic.get(p, q) == bc.get(p, q), || {
            format!(
                "Bott-Chern kernel at ({p},{q}): {} vs {}",
                harmonic.get(p, q),
                bc.get(p, q)
            )
        })?;
    }
    same(
        "harmonic Bott-Chern",
        layout(&harmonic, 3),
        CASE1_BOTT_CHERN,
    )
}

fn criterion_7() -> Outcome {
    for name in builtin_names() {
        common::builtin_suite(name).map_err(|e| format!("{name}: {e}"))?;
    }
    for seed in 0..100u64 {
        let n = 1 + (seed % 3) as usize;
        let pieces = 2 + (seed % 7) as usize;
        let (c, expected) = common::disguised_complex(seed, n, pieces);
        common::agrees_with(&c, &expected).map_err(|e| format!("fuzzed complex {seed}: {e}"))?;
        common::property_suite(&c, common::Symmetries::default())
            .map_err(|e| format!("fuzzed complex {seed}: {e}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let t = GR::ratio(1, 2);
    for (name, bott_chern_setting) in [
        ("nakamura-B-case1", false),
        ("nakamura-B-case2", false),
        ("nakamura-C-case1", true),
    ] {
        let spec = builtin(name, Some(&t)).map_err(|e| e.to_string())?;
        let metric = spec
            .metric_indices()
            .map_err(|e| e.to_string())?
            .ok_or("no metric")?;
        let r = check_theorem_hypotheses(&spec.span, &metric);
        let ok = r.dolbeault_setting() && (!bott_chern_setting || r.bott_chern_setting());
        ensure(ok, || format!("{name}: {r}"))?;
    }
    let spec = nakamura_span(&NakamuraSpec::new(Variant::C, Deformation::Case2, t))
        .map_err(|e| e.to_string())?;
    let metric = spec
        .metric_indices()
        .map_err(|e| e.to_string())?
        .ok_or("no metric")?;
    let r = check_theorem_hypotheses(&spec.span, &metric);
    ensure(!r.bott_chern_setting(), || {
        format!("case-2 C span reported closed: {r}")
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            "1 reference dimensions, undeformed",
            Duration::from_secs(5),
            criterion_1,
        ),
        (
            "2 reference dimensions, deformation (1)",
            Duration::from_secs(10),
            criterion_2,
        ),
        (
            "3 reference dimensions, deformation (2)",
            Duration::from_secs(10),
            criterion_3,
        ),
        (
            "4 ddbar-lemma and E1 degeneration are not closed",
            Duration::from_secs(30),
            criterion_4,
        ),
        (
            "5 Sawai-Yamada m = 3",
            Duration::from_secs(300),
            criterion_5,
        ),
        (
            "6 harmonic representatives",
            Duration::from_secs(30),
            criterion_6,
        ),
        ("7 property suite", Duration::from_secs(120), criterion_7),
        ("8 hypothesis checker", Duration::from_secs(30), criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        println!(
            "criterion {name}: {verdict} in {:.2}s",
            elapsed.as_secs_f64()
        );
        if verdict != "PASS" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
