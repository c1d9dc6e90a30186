//! Batch verification suites with deterministic machine-readable reports.
//!
//! Every check in a suite yields one flat record; reports are byte-identical
//! across runs unless timings are requested. Internal errors (capacity,
//! missing entries) surface as `error` records rather than panics so the
//! driver can tell a failed identity from a broken run.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::cybe;
use crate::evalrep;
use crate::ncalg::{e, f, h, Family, NCPoly};
use crate::presentations::{
    self, build_boundary, build_factor, build_y_sl2, check_gf_identities, check_molev_coproduct,
    factor_closed_form_deviations, parametrize_and_limit, verify_hopf, verify_hopf_ideal,
    HopfPresentation, StratumFate, VerifyBounds,
};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

/// One flat verification record.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Pass,
            residual: None,
            info: None,
            wall_ms: None,
        }
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Fail,
            residual: Some(residual.into()),
            info: None,
            wall_ms: None,
        }
    }

    /// Errored (not failed): the message goes into `info` so that residuals
    /// appear exactly on failing records.
    pub fn error(name: impl Into<String>, message: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Error,
            residual: None,
            info: Some(message.into()),
            wall_ms: None,
        }
    }

    pub fn with_info(mut self, info: impl Into<String>) -> CheckRecord {
        self.info = Some(info.into());
        self
    }
}

/// The verification suites exposed by the driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Hopf,
    Limit,
    Cybe,
    Colie,
    Factor,
    Twist,
    Ybe,
    Pqybe,
    Series,
    Gfmodes,
    All,
}

impl SuiteKind {
    pub fn parse(name: &str) -> Option<SuiteKind> {
        Some(match name {
            "hopf" => SuiteKind::Hopf,
            "limit" => SuiteKind::Limit,
            "cybe" => SuiteKind::Cybe,
            "colie" => SuiteKind::Colie,
            "factor" => SuiteKind::Factor,
            "twist" => SuiteKind::Twist,
            "ybe" => SuiteKind::Ybe,
            "pqybe" => SuiteKind::Pqybe,
            "series" => SuiteKind::Series,
            "gfmodes" => SuiteKind::Gfmodes,
            "all" => SuiteKind::All,
            _ => return None,
        })
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteKind::Hopf => "hopf",
            SuiteKind::Limit => "limit",
            SuiteKind::Cybe => "cybe",
            SuiteKind::Colie => "colie",
            SuiteKind::Factor => "factor",
            SuiteKind::Twist => "twist",
            SuiteKind::Ybe => "ybe",
            SuiteKind::Pqybe => "pqybe",
            SuiteKind::Series => "series",
            SuiteKind::Gfmodes => "gfmodes",
            SuiteKind::All => "all",
        };
        f.write_str(s)
    }
}

/// Deliberate corruptions for negative-control runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Corruption {
    /// Zero out a derived table entry before verification.
    Table,
    /// Use a non-invariant quadratic tensor.
    Tensor,
    /// Feed a non-nilpotent matrix to the exponential.
    Exponent,
}

impl Corruption {
    pub fn parse(name: &str) -> Option<Corruption> {
        Some(match name {
            "table" => Corruption::Table,
            "tensor" => Corruption::Tensor,
            "exponent" => Corruption::Exponent,
            _ => return None,
        })
    }
}

/// Suite configuration, echoed into the report.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub max_mode: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrupt: Option<Corruption>,
    pub timings: bool,
}

/// Full report: configuration echo plus one record per check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: SuiteConfig,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errored == 0
    }

    pub fn any_errored(&self) -> bool {
        self.errored > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} (max mode {})\n",
            self.config.suite, self.config.max_mode
        );
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS ",
                CheckStatus::Fail => "FAIL ",
                CheckStatus::Error => "ERROR",
            };
            out.push_str(&format!("{tag} {}", c.name));
            if let Some(r) = &c.residual {
                out.push_str(&format!(" :: {r}"));
            }
            if let Some(i) = &c.info {
                out.push_str(&format!(" [{i}]"));
            }
            if let Some(ms) = c.wall_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} errored\n",
            self.passed, self.failed, self.errored
        ));
        out
    }
}

/// Run one suite and assemble the report.
pub fn run(config: SuiteConfig) -> Report {
    let started = Instant::now();
    let mut checks = match config.suite {
        SuiteKind::Hopf => suite_hopf(config),
        SuiteKind::Limit => suite_limit(config),
        SuiteKind::Cybe => suite_cybe(config),
        SuiteKind::Colie => suite_colie(config),
        SuiteKind::Factor => suite_factor(config),
        SuiteKind::Twist => suite_twist(config),
        SuiteKind::Ybe => suite_ybe(config),
        SuiteKind::Pqybe => suite_pqybe(config),
        SuiteKind::Series => suite_series(config),
        SuiteKind::Gfmodes => suite_gfmodes(config),
        SuiteKind::All => {
            let mut all = Vec::new();
            for kind in [
                SuiteKind::Hopf,
                SuiteKind::Limit,
                SuiteKind::Cybe,
                SuiteKind::Colie,
                SuiteKind::Factor,
                SuiteKind::Twist,
                SuiteKind::Ybe,
                SuiteKind::Pqybe,
                SuiteKind::Series,
                SuiteKind::Gfmodes,
            ] {
                let sub = SuiteConfig {
                    suite: kind,
                    ..config
                };
                all.extend(run(sub).checks);
            }
            all
        }
    };
    if config.timings && config.suite != SuiteKind::All {
        let total = started.elapsed().as_millis();
        if let Some(first) = checks.first_mut() {
            first.wall_ms = Some(total);
        }
    }
    let passed = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Pass)
        .count();
    let failed = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .count();
    let errored = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Error)
        .count();
    Report {
        schema_version: 1,
        tool: "yangian",
        version: env!("CARGO_PKG_VERSION"),
        config,
        passed,
        failed,
        errored,
        checks,
    }
}

fn hopf_to_records(prefix: &str, checks: Vec<presentations::HopfCheck>) -> Vec<CheckRecord> {
    checks
        .into_iter()
        .map(|c| {
            if c.passed {
                CheckRecord::pass(format!("{prefix}: {}", c.name))
            } else {
                CheckRecord::fail(
                    format!("{prefix}: {}", c.name),
                    c.residual.unwrap_or_default(),
                )
            }
        })
        .collect()
}

/// Presentations sized for the requested verification depth: the relation
/// window `max_mode - 1` needs coproducts up to twice that mode.
fn presentation_bound(max_mode: u8) -> u8 {
    (2 * max_mode).max(2)
}

fn suite_hopf(config: SuiteConfig) -> Vec<CheckRecord> {
    let n = presentation_bound(config.max_mode);
    let bounds = VerifyBounds::for_max_mode(config.max_mode);
    let mut records = Vec::new();
    let run_pres = |pres: Result<HopfPresentation, crate::ncalg::AlgError>,
                    label: &str,
                    records: &mut Vec<CheckRecord>| {
        match pres {
            Err(err) => records.push(CheckRecord::error(
                format!("{label}: build"),
                err.to_string(),
            )),
            Ok(mut pres) => {
                if config.corrupt == Some(Corruption::Table) {
                    pres.table.corrupt_entry(e(1), e(0), NCPoly::zero());
                }
                match verify_hopf(&pres, bounds) {
                    Err(err) => records.push(CheckRecord::error(
                        format!("{label}: verification"),
                        err.to_string(),
                    )),
                    Ok(checks) => records.extend(hopf_to_records(label, checks)),
                }
            }
        }
    };
    run_pres(build_y_sl2(n), "y_sl2", &mut records);
    run_pres(build_boundary(n), "boundary", &mut records);
    match build_boundary(n).and_then(|b| build_factor(&b)) {
        Err(err) => records.push(CheckRecord::error("factor: build", err.to_string())),
        Ok(mut factor) => {
            if config.corrupt == Some(Corruption::Table) {
                factor.table.corrupt_entry(h(1), e(0), NCPoly::zero());
            }
            match verify_hopf(&factor, bounds) {
                Err(err) => {
                    records.push(CheckRecord::error("factor: verification", err.to_string()))
                }
                Ok(checks) => records.extend(hopf_to_records("factor", checks)),
            }
        }
    }
    records
}

fn suite_limit(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    match parametrize_and_limit(config.max_mode.max(2)) {
        Err(err) => records.push(CheckRecord::error("limit: transport", err.to_string())),
        Ok(report) => {
            for rel in &report.relations {
                let name = format!("limit: {}", rel.label);
                let strata: Vec<String> = rel
                    .strata
                    .iter()
                    .map(|(ord, (fate, text))| {
                        let tag = match fate {
                            StratumFate::Divergent => "divergent",
                            StratumFate::Finite => "finite",
                            StratumFate::Vanishing => "vanishing",
                        };
                        format!("t^{ord} {tag}: {text}")
                    })
                    .collect();
                let info = format!(
                    "rescale p^{} t^{}, cut {}; {}",
                    rel.p_clear,
                    rel.t_shift,
                    rel.cut,
                    strata.join(" | ")
                );
                records.push(match &rel.failed {
                    Some(reason) => CheckRecord::fail(name, reason.clone()).with_info(info),
                    None => CheckRecord::pass(name).with_info(info),
                });
            }
            let constraint_list: Vec<String> = report
                .resolved_constraints
                .iter()
                .map(|(a, b)| format!("[{a},{b}]"))
                .collect();
            records.push(if report.constraints_are_centrality {
                CheckRecord::pass("limit: resolved constraints are h'-centrality")
                    .with_info(constraint_list.join(", "))
            } else {
                CheckRecord::fail(
                    "limit: resolved constraints are h'-centrality",
                    constraint_list.join(", "),
                )
            });
            records.push(if report.duality_consistent {
                CheckRecord::pass("limit: family-exchange duality closes the relation set")
            } else {
                CheckRecord::fail(
                    "limit: family-exchange duality closes the relation set",
                    "an exchanged relation is not proportional to any member",
                )
            });
        }
    }
    records
}

fn suite_cybe(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let algebras = ["sl2", "borel2", "double", "a", "c"];
    for name in algebras {
        match cybe::builtin(name) {
            Ok(_) => records.push(CheckRecord::pass(format!(
                "cybe: algebra {name} satisfies antisymmetry and Jacobi"
            ))),
            Err(err) => records.push(CheckRecord::fail(
                format!("cybe: algebra {name} satisfies antisymmetry and Jacobi"),
                err.to_string(),
            )),
        }
    }
    let a = match cybe::builtin("a") {
        Ok(a) => a,
        Err(err) => {
            records.push(CheckRecord::error("cybe: build algebra", err.to_string()));
            return records;
        }
    };
    let sl2 = cybe::builtin("sl2").expect("builtin sl2");

    let omega = if config.corrupt == Some(Corruption::Tensor) {
        // Deliberately non-invariant tensor.
        let h = a.index_of("h").unwrap();
        cybe::SpectralTensor::term(vec![h, h], Scalar::one())
    } else {
        cybe::omega_a(&a)
    };
    for (x, name) in a.basis.iter().enumerate().map(|(i, n)| (i, n.clone())) {
        let res = cybe::ad_invariance_residual(&omega, &a, x);
        records.push(if res.is_zero() {
            CheckRecord::pass(format!(
                "cybe: invariance of the boundary tensor under {name}"
            ))
        } else {
            CheckRecord::fail(
                format!("cybe: invariance of the boundary tensor under {name}"),
                res.to_string(),
            )
        });
    }
    let r_a = cybe::over_kernel(&omega);
    let res = cybe::cybe_residual(&r_a, &a);
    records.push(if res.is_zero() {
        CheckRecord::pass("cybe: residual of the boundary rational solution")
    } else {
        CheckRecord::fail(
            "cybe: residual of the boundary rational solution",
            res.to_string(),
        )
    });
    let r_sl2 = cybe::over_kernel(&cybe::casimir_sl2(&sl2));
    let res = cybe::cybe_residual(&r_sl2, &sl2);
    records.push(if res.is_zero() {
        CheckRecord::pass("cybe: residual of the quadratic-invariant solution on sl2")
    } else {
        CheckRecord::fail(
            "cybe: residual of the quadratic-invariant solution on sl2",
            res.to_string(),
        )
    });
    match cybe::parametrized_r_divergence() {
        Err(err) => records.push(CheckRecord::error(
            "cybe: divergence analysis",
            err.to_string(),
        )),
        Ok(report) => {
            records.push(if report.divergent_order == 1 {
                CheckRecord::pass("cybe: transported r-matrix has a single first-order pole in t")
                    .with_info(format!("leading {}", report.divergent_leading))
            } else {
                CheckRecord::fail(
                    "cybe: transported r-matrix has a single first-order pole in t",
                    format!("order {}", report.divergent_order),
                )
            });
            records.push(if report.finite_matches_rational_solution {
                CheckRecord::pass("cybe: finite part equals the boundary rational solution")
            } else {
                CheckRecord::fail(
                    "cybe: finite part equals the boundary rational solution",
                    report.finite.to_string(),
                )
            });
            let vanishing_ok = report
                .vanishing
                .terms()
                .all(|(_, c)| c.divisible_by_param(crate::scalar::ParamId::T, 1));
            records.push(if vanishing_ok {
                CheckRecord::pass("cybe: remaining part vanishes with t")
                    .with_info(report.vanishing.to_string())
            } else {
                CheckRecord::fail(
                    "cybe: remaining part vanishes with t",
                    report.vanishing.to_string(),
                )
            });
        }
    }
    records
}

fn suite_colie(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let n = presentation_bound(config.max_mode);
    let boundary = match build_boundary(n) {
        Ok(b) => b,
        Err(err) => {
            records.push(CheckRecord::error("colie: build boundary", err.to_string()));
            return records;
        }
    };
    let a = cybe::builtin("a").expect("builtin a");
    let r = cybe::rational_boundary_r(&a);
    let (checks, ratio) = cybe::compare_colie(&boundary, &r, &a);
    for c in checks {
        records.push(if c.passed {
            CheckRecord::pass(format!("colie: {}", c.name)).with_info(c.detail)
        } else {
            CheckRecord::fail(format!("colie: {}", c.name), c.detail)
        });
    }
    records.push(match ratio {
        Some(c) => CheckRecord::pass("colie: one global proportionality constant")
            .with_info(format!("constant {c}")),
        None => CheckRecord::fail(
            "colie: one global proportionality constant",
            "mismatching generators",
        ),
    });
    records
}

fn suite_factor(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let n = presentation_bound(config.max_mode);
    let boundary = match build_boundary(n) {
        Ok(b) => b,
        Err(err) => {
            records.push(CheckRecord::error(
                "factor: build boundary",
                err.to_string(),
            ));
            return records;
        }
    };
    let ideal = verify_hopf_ideal(&boundary, &[Family::Hp]);
    records.push(if ideal.is_ideal {
        CheckRecord::pass("factor: h' spans a Hopf ideal")
    } else {
        CheckRecord::fail("factor: h' spans a Hopf ideal", ideal.failures.join("; "))
    });
    // Negative controls on the ideal notion itself.
    let not_ideal = verify_hopf_ideal(&boundary, &[Family::E]);
    records.push(if !not_ideal.is_ideal {
        CheckRecord::pass("factor: e does not span an ideal at the boundary")
    } else {
        CheckRecord::fail(
            "factor: e does not span an ideal at the boundary",
            "unexpectedly closed",
        )
    });
    match build_y_sl2(2) {
        Err(err) => records.push(CheckRecord::error(
            "factor: build comparison",
            err.to_string(),
        )),
        Ok(upstairs) => {
            let not_ideal = verify_hopf_ideal(&upstairs, &[Family::H]);
            records.push(if !not_ideal.is_ideal {
                CheckRecord::pass("factor: h does not span an ideal upstairs")
            } else {
                CheckRecord::fail(
                    "factor: h does not span an ideal upstairs",
                    "unexpectedly closed",
                )
            });
        }
    }
    match build_factor(&boundary) {
        Err(err) => records.push(CheckRecord::error("factor: quotient", err.to_string())),
        Ok(factor) => {
            match factor_closed_form_deviations(&factor, config.max_mode) {
                Err(err) => {
                    records.push(CheckRecord::error("factor: closed form", err.to_string()))
                }
                Ok(devs) => records.push(if devs.is_empty() {
                    CheckRecord::pass("factor: quotient table and coproducts in closed form")
                } else {
                    CheckRecord::fail(
                        "factor: quotient table and coproducts in closed form",
                        devs.join("; "),
                    )
                }),
            }
            // The single nontrivial coproduct.
            let expect = crate::ncalg::TensorPoly::primitive(h(1)).add(
                &crate::ncalg::TensorPoly::pair(&NCPoly::gen(f(0)), &NCPoly::gen(e(0)))
                    .scale(&Scalar::param(crate::scalar::ParamId::P).mul(&Scalar::int(-4))),
            );
            records.push(match factor.coproduct(h(1)) {
                Ok(d) if *d == expect => {
                    CheckRecord::pass("factor: D(h1) = h1 (x) 1 + 1 (x) h1 - 4p f0 (x) e0")
                }
                Ok(d) => CheckRecord::fail(
                    "factor: D(h1) = h1 (x) 1 + 1 (x) h1 - 4p f0 (x) e0",
                    d.to_string(),
                ),
                Err(err) => CheckRecord::error("factor: D(h1)", err.to_string()),
            });
        }
    }
    records
}

fn factor_presentation(config: SuiteConfig) -> Result<HopfPresentation, CheckRecord> {
    let n = presentation_bound(config.max_mode).max(3);
    build_boundary(n)
        .and_then(|b| build_factor(&b))
        .map_err(|err| CheckRecord::error("build factor presentation", err.to_string()))
}

fn matrix_to_records(prefix: &str, checks: Vec<evalrep::MatrixCheck>) -> Vec<CheckRecord> {
    checks
        .into_iter()
        .map(|c| {
            if c.passed {
                CheckRecord::pass(format!("{prefix}: {}", c.name))
            } else {
                CheckRecord::fail(
                    format!("{prefix}: {}", c.name),
                    c.residual.unwrap_or_default(),
                )
            }
        })
        .collect()
}

fn suite_twist(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    if config.corrupt == Some(Corruption::Exponent) {
        let diag = evalrep::MatrixRF::from_rows(&[&[1, 0], &[0, 2]]);
        match evalrep::exp_nilpotent(&diag) {
            Err(err) => records.push(CheckRecord::error(
                "twist: exponential of a non-nilpotent matrix",
                err.to_string(),
            )),
            Ok(_) => records.push(CheckRecord::fail(
                "twist: exponential of a non-nilpotent matrix",
                "silently accepted",
            )),
        }
        return records;
    }
    let factor = match factor_presentation(config) {
        Ok(f) => f,
        Err(rec) => {
            records.push(rec);
            return records;
        }
    };
    match evalrep::twist_check(&factor) {
        Err(err) => records.push(CheckRecord::error("twist: conjugation", err.to_string())),
        Ok(checks) => records.extend(matrix_to_records("twist", checks)),
    }
    records
}

fn suite_ybe(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    if config.corrupt == Some(Corruption::Exponent) {
        let diag = evalrep::MatrixRF::from_rows(&[&[2, 0], &[0, 3]]);
        match evalrep::exp_nilpotent(&diag) {
            Err(err) => records.push(CheckRecord::error(
                "ybe: exponential of a non-nilpotent matrix",
                err.to_string(),
            )),
            Ok(_) => records.push(CheckRecord::fail(
                "ybe: exponential of a non-nilpotent matrix",
                "silently accepted",
            )),
        }
        return records;
    }
    match evalrep::ybe_residual() {
        Err(err) => records.push(CheckRecord::error("ybe: residual", err.to_string())),
        Ok(res) => records.push(if res.is_zero() {
            CheckRecord::pass("ybe: three-leg residual vanishes")
        } else {
            CheckRecord::fail("ybe: three-leg residual vanishes", res.dump())
        }),
    }
    match evalrep::r_matrix_structure_checks() {
        Err(err) => records.push(CheckRecord::error("ybe: structure", err.to_string())),
        Ok(checks) => records.extend(matrix_to_records("ybe", checks)),
    }
    records
}

fn suite_pqybe(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let factor = match factor_presentation(config) {
        Ok(f) => f,
        Err(rec) => {
            records.push(rec);
            return records;
        }
    };
    let max_mode = config.max_mode.min(2);
    for fam in [Family::H, Family::E, Family::F] {
        for mode in 0..=max_mode {
            let g = crate::ncalg::GenId::new(fam, mode);
            match evalrep::pqybe_check(&factor, g) {
                Err(err) => {
                    records.push(CheckRecord::error(format!("pqybe: {g}"), err.to_string()))
                }
                Ok(c) => records.extend(matrix_to_records("pqybe", vec![c])),
            }
        }
    }
    records
}

fn suite_series(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let order = u32::from(config.max_mode).clamp(1, 3);
    match build_y_sl2((order as u8).max(2) + 1) {
        Err(err) => records.push(CheckRecord::error("series: build", err.to_string())),
        Ok(pres) => match check_molev_coproduct(&pres, order) {
            Err(err) => records.push(CheckRecord::error("series: expansion", err.to_string())),
            Ok(checks) => {
                for c in checks {
                    records.push(if c.passed {
                        CheckRecord::pass(format!("series: {}", c.name))
                    } else {
                        CheckRecord::fail(
                            format!("series: {}", c.name),
                            c.residual.unwrap_or_default(),
                        )
                    });
                }
            }
        },
    }
    records
}

fn suite_gfmodes(config: SuiteConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let bi_degree = config.max_mode;
    let n = (bi_degree + 1).max(3);
    let mut run = |pres: Result<HopfPresentation, crate::ncalg::AlgError>, label: &str| match pres {
        Err(err) => records.push(CheckRecord::error(
            format!("gfmodes: build {label}"),
            err.to_string(),
        )),
        Ok(pres) => match check_gf_identities(&pres, bi_degree) {
            Err(err) => records.push(CheckRecord::error(
                format!("gfmodes: {label}"),
                err.to_string(),
            )),
            Ok(checks) => {
                for c in checks {
                    records.push(if c.passed {
                        CheckRecord::pass(format!("gfmodes {label}: {}", c.name))
                    } else {
                        CheckRecord::fail(
                            format!("gfmodes {label}: {}", c.name),
                            c.residual.unwrap_or_default(),
                        )
                    });
                }
            }
        },
    };
    run(build_y_sl2(n), "y_sl2");
    run(build_boundary(n), "boundary");
    run(build_boundary(n).and_then(|b| build_factor(&b)), "factor");
    records
}

/// Deterministic export of one presentation's table and coproducts.
pub fn export_presentation(name: &str, max_mode: u8) -> Result<String, String> {
    let n = presentation_bound(max_mode);
    let pres = match name {
        "y_sl2" => build_y_sl2(n).map_err(|e| e.to_string())?,
        "boundary" => build_boundary(n).map_err(|e| e.to_string())?,
        "factor" => build_boundary(n)
            .and_then(|b| build_factor(&b))
            .map_err(|e| e.to_string())?,
        other => return Err(format!("unknown presentation '{other}'")),
    };
    Ok(pres.dump())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: SuiteKind) -> SuiteConfig {
        SuiteConfig {
            suite,
            max_mode: 2,
            corrupt: None,
            timings: false,
        }
    }

    #[test]
    fn cybe_suite_passes() {
        let report = run(quick(SuiteKind::Cybe));
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn colie_suite_passes() {
        let report = run(quick(SuiteKind::Colie));
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn corrupted_tensor_fails_cybe() {
        let mut config = quick(SuiteKind::Cybe);
        config.corrupt = Some(Corruption::Tensor);
        let report = run(config);
        assert!(!report.all_passed());
        assert!(report.failed > 0);
    }

    #[test]
    fn corrupted_exponent_errors_ybe() {
        let mut config = quick(SuiteKind::Ybe);
        config.corrupt = Some(Corruption::Exponent);
        let report = run(config);
        assert!(report.any_errored());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(quick(SuiteKind::Cybe)).to_json();
        let b = run(quick(SuiteKind::Cybe)).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn export_contains_expected_lines() {
        let text = export_presentation("y_sl2", 2).unwrap();
        assert!(text.contains("[e0, f1] = h1"), "{text}");
        let text = export_presentation("boundary", 2).unwrap();
        assert!(text.contains("[e0, f0] = ((p)/(2))*hp0"), "{text}");
        let text = export_presentation("factor", 2).unwrap();
        assert!(
            text.contains("[e1, f0] = 0") || text.contains("[e0, f0] = 0"),
            "{text}"
        );
        assert!(export_presentation("nope", 2).is_err());
    }
}
