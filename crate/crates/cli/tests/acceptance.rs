//! Acceptance gate: nine end-to-end checks with explicit time budgets.
//!
//! Each test prints one `[acceptance] C<n> ...: PASS` line (visible with
//! `cargo test -- --nocapture`) and fails loudly otherwise. C1-C8 exercise the
//! library; C9 runs the installed binary against golden output files.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use orbitlab::exact::{Domain, Scalar};
use orbitlab::gradedsl2::{
    enumerate_decompositions, is_regular, m_pair, trace_bruteforce, trace_formula,
    GradedDecomposition,
};
use orbitlab::lseries::{
    delta_half_exponent, modular_exponent_ph, partitions_with_last_zero, pole_order_at_one,
    verify_identity, whittaker_value,
};
use orbitlab::orbits::{
    classify, f2_rank_census, is_transpose_stable, representative, transpose_move, transpose_orbit,
};
use orbitlab::symspace::{
    coset_invariants, is_closed, normal_space_dim, rep_nu_block, rep_xpk, swap_normal_dim,
};

fn report(label: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{label} exceeded its budget: {elapsed:?} >= {budget:?}"
    );
    println!("[acceptance] {label}: PASS ({elapsed:.2?})");
}

/// All signatures (p, q) with 1 <= p + q <= total.
fn signatures(total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 1..=total {
        for p in 0..=s {
            out.push((p, s - p));
        }
    }
    out
}

#[test]
fn c1_trace_formula_matches_brute_force_everywhere() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (p, q) in signatures(8) {
        for d in enumerate_decompositions(p, q) {
            let fast = trace_formula(&d);
            let slow = trace_bruteforce(&d).expect("brute-force trace");
            assert_eq!(fast, slow, "trace mismatch at ({p}, {q}) for {d:?}");
            checked += 1;
        }
    }
    assert!(checked > 200, "survey unexpectedly small: {checked}");
    report(
        "C1 closed-form trace equals brute-force trace on every orbit with p+q<=8",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn c2_anchor_orbit_at_6_8() {
    let started = Instant::now();
    let d = GradedDecomposition::from_pairs(&[(8, 1), (2, 1), (1, 1)]);
    let comps = d.components();
    let m_sum: i64 = comps
        .iter()
        .flat_map(|a| comps.iter().map(move |b| m_pair(a.lambda, a.omega, b.lambda, b.omega)))
        .sum();
    assert_eq!(m_sum, -4, "ordered pairing sum");
    assert_eq!(trace_formula(&d), 96, "trace");
    let pair = representative(&d, &Domain::Rational).expect("representative");
    assert_eq!(pair.x().rank(), 6, "rank of x");
    assert_eq!(pair.y().rank(), 5, "rank of y");
    assert!(!is_transpose_stable(&d), "orbit must move under transpose");
    report(
        "C2 anchor orbit at (6,8): pairing sum -4, trace 96, ranks (6,5), transpose-unstable",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn c3_minimal_trace_orbit_is_unique_regular_and_stable_at_q_eq_p_plus_1() {
    let started = Instant::now();
    for p in 1..=6usize {
        let q = p + 1;
        let wanted = (2 * p * (p + 1)) as i64;
        let hits: Vec<GradedDecomposition> = enumerate_decompositions(p, q)
            .into_iter()
            .filter(|d| trace_formula(d) == wanted)
            .collect();
        assert_eq!(hits.len(), 1, "trace {wanted} must single out one orbit at ({p}, {q})");
        let d = &hits[0];
        assert!(is_transpose_stable(d), "transpose stability at ({p}, {q})");
        assert!(
            is_regular(d, p, q).expect("regularity"),
            "regularity at ({p}, {q})"
        );
    }
    report(
        "C3 trace 2p(p+1) picks exactly one orbit for q=p+1, p<=6, and it is regular and stable",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn c4_trace_window_on_balanced_signatures() {
    let started = Instant::now();
    for p in 1..=4usize {
        let lower = (2 * p * p) as i64;
        let upper = (4 * p * p) as i64;
        for d in enumerate_decompositions(p, p) {
            let t = trace_formula(&d);
            assert!(
                lower < t && t <= upper,
                "trace {t} outside ({lower}, {upper}] at p=q={p} for {d:?}"
            );
        }
    }
    report(
        "C4 every trace lies in (2p^2, 4p^2] on balanced signatures p=q<=4",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn c5_f2_census_and_transpose_rule_against_oracles() {
    let started = Instant::now();
    // Exhaustive F_2 census: distinct rank tables match the enumeration count.
    for p in 1..=6usize {
        for q in 1..=6usize {
            if 2 * p * q > 12 {
                continue;
            }
            let census = f2_rank_census(p, q).expect("census");
            assert!(
                census.matches_enumeration,
                "census mismatch at ({p}, {q}): {census:?}"
            );
        }
    }
    // Transpose rule against the matrix-level oracle.
    for (p, q) in signatures(8) {
        for d in enumerate_decompositions(p, q) {
            let predicted = transpose_orbit(&d);
            let pair = representative(&d, &Domain::Rational).expect("representative");
            let observed = classify(&transpose_move(&pair)).expect("classify transpose");
            assert_eq!(predicted, observed, "transpose rule at ({p}, {q}) for {d:?}");
        }
    }
    report(
        "C5 F_2 rank census matches enumeration (2pq<=12); transpose rule matches oracle (p+q<=8)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn c6_coset_representatives_closedness_normal_dims_and_round_trips() {
    let started = Instant::now();
    let rational = Domain::Rational;
    for p in 1..=4usize {
        for q in [p, p + 1] {
            for k in 0..=p {
                let g = rep_xpk(p, q, k, &rational).expect("representative");
                let eye = orbitlab::exact::Matrix::identity(p + q, &rational);
                assert_eq!(g.mul(&g).expect("square"), eye, "involution at ({p},{q},{k})");
                assert!(is_closed(&g, p, q).expect("closedness"), "closed at ({p},{q},{k})");
                let dim = normal_space_dim(&g, p, q).expect("normal dim");
                assert_eq!(
                    dim,
                    swap_normal_dim(p, q, k),
                    "normal dimension formula at ({p},{q},{k})"
                );
            }
        }
    }
    // Block parameters survive the invariant extraction round trip.
    for a in [2i64, -2, 3, -3, 5] {
        let values = vec![Scalar::from_int(a, &rational)];
        let g = rep_nu_block(2, 3, 1, &values, &rational).expect("block representative");
        let inv = coset_invariants(&g, 2, 3).expect("invariants");
        assert_eq!((inv.k, inv.nu), (1, 1), "shape for a={a}");
        assert_eq!(inv.a_values, values, "parameter for a={a}");
    }
    let two_blocks = vec![
        Scalar::from_int(2, &rational),
        Scalar::from_int(-3, &rational),
    ];
    let g = rep_nu_block(3, 3, 0, &two_blocks, &rational).expect("two-block representative");
    let inv = coset_invariants(&g, 3, 3).expect("invariants");
    let mut expected = two_blocks.clone();
    expected.sort_by(Scalar::canonical_cmp);
    assert_eq!((inv.k, inv.nu), (0, 2));
    assert_eq!(inv.a_values, expected);
    report(
        "C6 swap representatives are involutive, closed, match the normal-dim formula; block parameters round-trip",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn c7_series_identity_holds_symbolically() {
    let started = Instant::now();
    for (n, degree) in [(1usize, 8usize), (3, 6), (5, 4)] {
        assert!(
            verify_identity(n, degree).expect("symbolic comparison"),
            "identity fails for n={n} through degree {degree}"
        );
    }
    report(
        "C7 series identity verified symbolically for n=1,3,5 at degrees 8,6,4",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn c8_spherical_values_exponents_and_pole_orders() {
    let started = Instant::now();
    let rational = Domain::Rational;
    let ones: Vec<Scalar> = (0..3).map(|_| Scalar::from_int(1, &rational)).collect();
    // Normalization at the zero coweight.
    let w = whittaker_value(&[0, 0, 0], &ones).expect("normalized value");
    assert_eq!(w.q_exponent, 0);
    assert!(w.coeff.is_one(), "value at zero must be 1");
    // Dominance scan: the value vanishes exactly off the dominant cone.
    for a in 0..5i64 {
        for b in 0..5i64 {
            for c in 0..5i64 {
                let w = whittaker_value(&[a, b, c], &ones).expect("scan value");
                let dominant = a >= b && b >= c;
                assert_eq!(
                    !w.coeff.is_zero(),
                    dominant,
                    "support mismatch at ({a},{b},{c})"
                );
            }
        }
    }
    // The two exponent computations agree wherever both are defined.
    for p in 0..=2usize {
        let n = 2 * p + 1;
        for lambda in partitions_with_last_zero(n, 6) {
            let ph = modular_exponent_ph(&lambda, p).expect("parity-pair exponent");
            let delta = delta_half_exponent(&lambda, n).expect("half-sum exponent");
            assert_eq!(ph, delta, "exponent mismatch at p={p}, {lambda:?}");
        }
    }
    // Pole orders at the three reference points.
    let half = Scalar::parse_entry("1/2", &rational).unwrap();
    let cases: Vec<(Vec<Scalar>, i64)> = vec![
        (ones.clone(), 5),
        (
            vec![
                Scalar::from_int(2, &rational),
                half,
                Scalar::from_int(1, &rational),
            ],
            1,
        ),
        (
            vec![Scalar::cyclotomic_root(3, 1).unwrap(); 3],
            -1,
        ),
    ];
    for (chars, expected) in cases {
        let pole = pole_order_at_one(&chars, 1).expect("pole data");
        assert_eq!(pole.order, expected, "pole order at {chars:?}");
    }
    report(
        "C8 spherical normalization, dominance support, exponent agreement, and pole orders",
        started,
        Duration::from_secs(10),
    );
}

// ---- C9: byte-stable golden outputs across thread counts ----

struct Golden {
    args: &'static [&'static str],
    raise_limits: bool,
    file: &'static str,
}

const GOLDENS: &[Golden] = &[
    Golden {
        args: &["orbits", "1", "2"],
        raise_limits: false,
        file: "orbits_1_2.json",
    },
    Golden {
        args: &["orbits", "6", "8", "--find-trace", "96"],
        raise_limits: true,
        file: "orbits_6_8_trace96.json",
    },
    Golden {
        args: &["orbits", "0", "1"],
        raise_limits: false,
        file: "orbits_0_1.json",
    },
    Golden {
        args: &["classify", "testdata/pair_zero_1_2.json"],
        raise_limits: false,
        file: "classify_zero_1_2.json",
    },
    Golden {
        args: &["classify", "testdata/pair_regular_1_2.json"],
        raise_limits: false,
        file: "classify_regular_1_2.json",
    },
    Golden {
        args: &["classify", "testdata/pair_anchor_6_8.json"],
        raise_limits: true,
        file: "classify_anchor_6_8.json",
    },
    Golden {
        args: &["cosets", "1", "2", "--k", "1"],
        raise_limits: false,
        file: "cosets_1_2_k1.json",
    },
    Golden {
        args: &["cosets", "1", "2", "--k", "0", "--a", "2"],
        raise_limits: false,
        file: "cosets_1_2_a2.json",
    },
    Golden {
        args: &["cosets", "2", "3", "--k", "0"],
        raise_limits: false,
        file: "cosets_2_3_k0.json",
    },
    Golden {
        args: &["lfun", "1", "--verify", "6"],
        raise_limits: false,
        file: "lfun_1_verify6.json",
    },
    Golden {
        args: &["lfun", "1", "--chars", "1,1,1"],
        raise_limits: false,
        file: "lfun_1_chars_ones.json",
    },
    Golden {
        args: &["lfun", "1", "--chars", "zeta:3:1,zeta:3:1,zeta:3:1"],
        raise_limits: false,
        file: "lfun_1_chars_zeta3.json",
    },
];

fn run_binary(golden: &Golden, threads: Option<&str>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitlab"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR"));
    cmd.env_remove("ORBITLAB_LIMITS");
    if golden.raise_limits {
        cmd.env("ORBITLAB_LIMITS", "16");
    }
    cmd.args(golden.args);
    if let Some(t) = threads {
        cmd.args(["--threads", t]);
    }
    let output = cmd.output().expect("binary runs");
    assert!(
        output.status.success(),
        "non-zero exit for {:?} (threads {threads:?}): {}",
        golden.args,
        String::from_utf8_lossy(&output.stderr)
    );
    output.stdout
}

#[test]
fn c9_cli_outputs_match_goldens_across_thread_counts() {
    let started = Instant::now();
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata/golden");
    for golden in GOLDENS {
        let expected = std::fs::read(golden_dir.join(golden.file))
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", golden.file));
        for threads in [None, Some("1"), Some("4")] {
            let stdout = run_binary(golden, threads);
            assert_eq!(
                stdout,
                expected,
                "stdout drifted from {} (threads {threads:?})",
                golden.file
            );
        }
    }
    // --out writes the same bytes to a file instead of stdout.
    let tmp = tempfile::tempdir().expect("tempdir");
    let out_path = tmp.path().join("report.json");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitlab"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR"));
    cmd.env_remove("ORBITLAB_LIMITS");
    cmd.args(["orbits", "1", "2", "--out"]);
    cmd.arg(&out_path);
    let output = cmd.output().expect("binary runs");
    assert!(output.status.success());
    assert!(output.stdout.is_empty(), "--out must silence stdout");
    let written = std::fs::read(&out_path).expect("written report");
    let expected = std::fs::read(golden_dir.join("orbits_1_2.json")).unwrap();
    assert_eq!(written, expected, "--out bytes differ from stdout bytes");
    report(
        "C9 twelve CLI invocations byte-match their goldens across default, 1, and 4 threads",
        started,
        Duration::from_secs(60),
    );
}
