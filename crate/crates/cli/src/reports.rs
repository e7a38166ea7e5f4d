//! Typed report structures for each subcommand: the struct field order fixes
//! the JSON key order, so emitted output is byte-stable.

use serde::Serialize;

use orbitlab::error::{Error, Result};
use orbitlab::exact::{Domain, Scalar};
use orbitlab::gradedsl2::{
    enumerate_decompositions, orbit_dim, trace_bruteforce, trace_formula, GradedDecomposition,
};
use orbitlab::io::{MatrixFile, PairFile};
use orbitlab::lseries::{
    delta_half_exponent, lhs_series, modular_exponent_ph, partitions_with_last_zero,
    pole_order_at_one, rhs_product, whittaker_value, MultiPoly, TruncatedSeries,
};
use orbitlab::orbits::{
    is_nilpotent_pair, rank_invariant, transpose_orbit, OrbitInvariant,
};
use orbitlab::symspace::{
    coset_invariants, coset_invariants_with_hints, is_closed, normal_space_dim, rep_nu_block,
    rep_xpk, swap_normal_dim, tau, CosetInvariant,
};
use orbitlab::par;

// ---- orbits ----

#[derive(Serialize)]
pub struct OrbitRecord {
    pub decomposition: GradedDecomposition,
    pub parity_dims: Vec<[usize; 2]>,
    pub trace: i64,
    pub orbit_dim: usize,
    pub is_regular: bool,
    pub transpose_orbit: GradedDecomposition,
    pub is_transpose_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_bruteforce: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct OrbitsReport {
    pub command: &'static str,
    pub p: usize,
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub find_trace: Option<i64>,
    pub oracle: bool,
    pub orbit_count: usize,
    pub max_orbit_dim: usize,
    pub records: Vec<OrbitRecord>,
    pub pass: bool,
}

pub fn orbits_report(
    p: usize,
    q: usize,
    find_trace: Option<i64>,
    oracle: bool,
) -> Result<OrbitsReport> {
    let all = enumerate_decompositions(p, q);
    let surveyed = par::map_collect(all, |dec| {
        let trace = trace_formula(&dec);
        let dim = orbit_dim(&dec);
        (dec, trace, dim)
    });
    let orbit_count = surveyed.len();
    let max_orbit_dim = surveyed.iter().map(|(_, _, d)| *d).max().unwrap_or(0);
    let mut records = Vec::new();
    let mut pass = true;
    for (dec, trace, dim) in surveyed {
        if let Some(wanted) = find_trace {
            if trace != wanted {
                continue;
            }
        }
        let (bruteforce, oracle_match) = if oracle {
            let b = trace_bruteforce(&dec)?;
            (Some(b), Some(b == trace))
        } else {
            (None, None)
        };
        let record_pass = oracle_match.unwrap_or(true);
        pass &= record_pass;
        let flipped = transpose_orbit(&dec);
        records.push(OrbitRecord {
            parity_dims: dec
                .components()
                .iter()
                .map(|c| {
                    let (d0, d1) = c.dims();
                    [d0, d1]
                })
                .collect(),
            trace,
            orbit_dim: dim,
            is_regular: dim == max_orbit_dim,
            is_transpose_stable: flipped == dec,
            transpose_orbit: flipped,
            trace_bruteforce: bruteforce,
            oracle_match,
            pass: record_pass,
            decomposition: dec,
        });
    }
    Ok(OrbitsReport {
        command: "orbits",
        p,
        q,
        find_trace,
        oracle,
        orbit_count,
        max_orbit_dim,
        records,
        pass,
    })
}

impl OrbitsReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "orbits ({}, {}): {} orbit(s), {} listed, max orbit dimension {}\n",
            self.p,
            self.q,
            self.orbit_count,
            self.records.len(),
            self.max_orbit_dim
        );
        for r in &self.records {
            out.push_str(&format!(
                "  {}  trace={}  dim={}{}{}  -> {}\n",
                decomposition_text(&r.decomposition),
                r.trace,
                r.orbit_dim,
                if r.is_regular { "  regular" } else { "" },
                if r.is_transpose_stable {
                    "  transpose-stable"
                } else {
                    ""
                },
                if r.pass { "ok" } else { "FAIL" },
            ));
        }
        out.push_str(&format!("overall: {}\n", pass_text(self.pass)));
        out
    }
}

// ---- classify ----

#[derive(Serialize)]
pub struct ClassifyReport {
    pub command: &'static str,
    pub input: String,
    pub p: usize,
    pub q: usize,
    pub domain: String,
    pub nilpotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_power: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<GradedDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_tables: Option<OrbitInvariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_y: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transpose_orbit: Option<GradedDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_transpose_stable: Option<bool>,
    pub pass: bool,
}

pub fn classify_report(input: &str, file: &PairFile) -> Result<ClassifyReport> {
    let pair = file.to_pair()?;
    let (p, q) = (pair.p(), pair.q());
    let domain = pair.domain().to_string();
    if !is_nilpotent_pair(&pair) {
        return Ok(ClassifyReport {
            command: "classify",
            input: input.to_string(),
            p,
            q,
            domain,
            nilpotent: false,
            witness_power: Some(p),
            decomposition: None,
            rank_tables: None,
            rank_x: None,
            rank_y: None,
            transpose_orbit: None,
            is_transpose_stable: None,
            pass: false,
        });
    }
    let dec = orbitlab::orbits::classify(&pair)?;
    let flipped = transpose_orbit(&dec);
    Ok(ClassifyReport {
        command: "classify",
        input: input.to_string(),
        p,
        q,
        domain,
        nilpotent: true,
        witness_power: None,
        rank_tables: Some(rank_invariant(&pair)),
        rank_x: Some(pair.x().rank()),
        rank_y: Some(pair.y().rank()),
        is_transpose_stable: Some(flipped == dec),
        transpose_orbit: Some(flipped),
        decomposition: Some(dec),
        pass: true,
    })
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "classify {} ({} x {}, {})\n",
            self.input, self.p, self.q, self.domain
        );
        if !self.nilpotent {
            out.push_str(&format!(
                "  not nilpotent: (xy)^{} != 0\noverall: FAIL\n",
                self.witness_power.unwrap_or(0)
            ));
            return out;
        }
        out.push_str(&format!(
            "  orbit {}\n  rank(x)={} rank(y)={}\n  transpose orbit {}{}\noverall: {}\n",
            decomposition_text(self.decomposition.as_ref().unwrap()),
            self.rank_x.unwrap(),
            self.rank_y.unwrap(),
            decomposition_text(self.transpose_orbit.as_ref().unwrap()),
            if self.is_transpose_stable.unwrap() {
                " (stable)"
            } else {
                " (not stable)"
            },
            pass_text(self.pass),
        ));
        out
    }
}

// ---- cosets ----

#[derive(Serialize)]
pub struct CosetsReport {
    pub command: &'static str,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub a_values: Vec<String>,
    pub field: String,
    pub representative: MatrixFile,
    pub tau: MatrixFile,
    pub closed: bool,
    pub invariant: CosetInvariant,
    pub normal_space_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_normal_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_dim_match: Option<bool>,
    pub pass: bool,
}

pub fn cosets_report(
    p: usize,
    q: usize,
    k: usize,
    a_values: &[Scalar],
    domain: &Domain,
) -> Result<CosetsReport> {
    let g = if a_values.is_empty() {
        rep_xpk(p, q, k, domain)?
    } else {
        rep_nu_block(p, q, k, a_values, domain)?
    };
    let t = tau(&g, p, q)?;
    let closed = is_closed(&g, p, q)?;
    let invariant = match coset_invariants(&g, p, q) {
        Ok(inv) => inv,
        Err(Error::Unsupported { .. }) => coset_invariants_with_hints(&g, p, q, a_values)?,
        Err(e) => return Err(e),
    };
    let normal = normal_space_dim(&g, p, q)?;
    let (expected, dim_match) = if a_values.is_empty() {
        let e = swap_normal_dim(p, q, k);
        (Some(e), Some(e == normal))
    } else {
        (None, None)
    };
    let mut wanted = a_values.to_vec();
    wanted.sort_by(Scalar::canonical_cmp);
    let invariant_matches =
        invariant.k == k && invariant.nu == a_values.len() && invariant.a_values == wanted;
    let pass = closed && invariant_matches && dim_match.unwrap_or(true);
    Ok(CosetsReport {
        command: "cosets",
        p,
        q,
        k,
        a_values: a_values.iter().map(Scalar::entry_string).collect(),
        field: domain.to_string(),
        representative: MatrixFile::from_matrix(&g),
        tau: MatrixFile::from_matrix(&t),
        closed,
        invariant,
        normal_space_dim: normal,
        expected_normal_dim: expected,
        normal_dim_match: dim_match,
        pass,
    })
}

impl CosetsReport {
    pub fn text(&self) -> String {
        format!(
            "cosets ({}, {}) k={} a=[{}] over {}\n  closed: {}\n  invariant: k={} nu={} a=[{}]\n  normal space dim {}{}\noverall: {}\n",
            self.p,
            self.q,
            self.k,
            self.a_values.join(", "),
            self.field,
            self.closed,
            self.invariant.k,
            self.invariant.nu,
            self.invariant
                .a_values
                .iter()
                .map(Scalar::entry_string)
                .collect::<Vec<_>>()
                .join(", "),
            self.normal_space_dim,
            match (self.expected_normal_dim, self.normal_dim_match) {
                (Some(e), Some(m)) =>
                    format!(" (formula {} -> {})", e, if m { "match" } else { "MISMATCH" }),
                _ => String::new(),
            },
            pass_text(self.pass),
        )
    }
}

// ---- lfun ----

#[derive(Serialize)]
pub struct SeriesJson {
    pub truncation: usize,
    pub coeffs: Vec<SeriesCoeff>,
}

#[derive(Serialize)]
pub struct SeriesCoeff {
    pub deg: usize,
    pub poly: String,
}

fn series_json(series: &TruncatedSeries<MultiPoly>) -> SeriesJson {
    SeriesJson {
        truncation: series.truncation(),
        coeffs: series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(deg, poly)| SeriesCoeff {
                deg,
                poly: poly.to_string(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct LfunVerifyReport {
    pub command: &'static str,
    pub p: usize,
    pub n: usize,
    pub mode: &'static str,
    pub truncation: usize,
    pub lhs: SeriesJson,
    pub rhs: SeriesJson,
    pub identity_holds: bool,
    pub pass: bool,
}

pub fn lfun_verify_report(p: usize, truncation: usize) -> Result<LfunVerifyReport> {
    let n = 2 * p + 1;
    let xs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let lhs = lhs_series(&xs, truncation)?;
    let rhs = rhs_product(&xs, truncation)?;
    let identity_holds = lhs == rhs;
    Ok(LfunVerifyReport {
        command: "lfun",
        p,
        n,
        mode: "verify",
        truncation,
        lhs: series_json(&lhs),
        rhs: series_json(&rhs),
        identity_holds,
        pass: identity_holds,
    })
}

impl LfunVerifyReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "series identity, n={} through degree {}\n",
            self.n, self.truncation
        );
        for c in &self.lhs.coeffs {
            out.push_str(&format!("  t^{}: {}\n", c.deg, c.poly));
        }
        out.push_str(&format!(
            "identity holds: {}\noverall: {}\n",
            self.identity_holds,
            pass_text(self.pass)
        ));
        out
    }
}

#[derive(Serialize)]
pub struct WhittakerRow {
    pub lambda: Vec<i64>,
    pub q_exponent: i64,
    pub value: String,
    pub delta_match: bool,
}

#[derive(Serialize)]
pub struct PoleJson {
    pub order: i64,
    pub leading: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_at_one: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

#[derive(Serialize)]
pub struct LfunCharsReport {
    pub command: &'static str,
    pub p: usize,
    pub n: usize,
    pub mode: &'static str,
    pub field: String,
    pub chars: Vec<String>,
    pub truncation: usize,
    pub whittaker: Vec<WhittakerRow>,
    pub pole: PoleJson,
    pub pass: bool,
}

pub fn lfun_chars_report(p: usize, chars: &[Scalar], truncation: usize) -> Result<LfunCharsReport> {
    let n = 2 * p + 1;
    if chars.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} character values for size {n}",
            chars.len()
        )));
    }
    let domain = chars[0].domain();
    let rows = par::map_collect(partitions_with_last_zero(n, truncation), |lambda| {
        let w = whittaker_value(&lambda, chars)?;
        let ph = modular_exponent_ph(&lambda, p)?;
        let delta = delta_half_exponent(&lambda, n)?;
        Ok(WhittakerRow {
            q_exponent: w.q_exponent,
            value: w.coeff.entry_string(),
            delta_match: ph == delta && w.q_exponent == delta,
            lambda,
        })
    });
    let whittaker: Vec<WhittakerRow> = rows.into_iter().collect::<Result<_>>()?;
    let pole = pole_order_at_one(chars, p)?;
    let pass = whittaker.iter().all(|r| r.delta_match);
    let pole = PoleJson {
        order: pole.order,
        leading: pole.leading.entry_string(),
        limit_at_one: match pole.order {
            o if o < 0 => Some("0".to_string()),
            0 => Some(pole.leading.entry_string()),
            _ => None,
        },
        caveat: if pole.order <= 0 {
            Some(
                "no pole at t=1: a trivial product of character values does not by itself \
                 force one; finer input hypotheses decide"
                    .to_string(),
            )
        } else {
            None
        },
    };
    Ok(LfunCharsReport {
        command: "lfun",
        p,
        n,
        mode: "chars",
        field: domain.to_string(),
        chars: chars.iter().map(Scalar::entry_string).collect(),
        truncation,
        whittaker,
        pole,
        pass,
    })
}

impl LfunCharsReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "spherical values, n={} over {} at [{}]\n",
            self.n,
            self.field,
            self.chars.join(", ")
        );
        for r in &self.whittaker {
            out.push_str(&format!(
                "  lambda={:?}  q^{}  value {}  {}\n",
                r.lambda,
                r.q_exponent,
                r.value,
                if r.delta_match { "ok" } else { "DELTA MISMATCH" }
            ));
        }
        out.push_str(&format!(
            "pole order at t=1: {} (leading {})\n",
            self.pole.order, self.pole.leading
        ));
        if let Some(c) = &self.pole.caveat {
            out.push_str(&format!("caveat: {c}\n"));
        }
        out.push_str(&format!("overall: {}\n", pass_text(self.pass)));
        out
    }
}

// ---- shared helpers ----

pub fn decomposition_text(d: &GradedDecomposition) -> String {
    if d.components().is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = d
        .components()
        .iter()
        .map(|c| format!("({},{})", c.lambda, c.omega))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn pass_text(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
