//! Verification grids and report assembly.
//!
//! Each suite expands into independent jobs over `(λ, γ, …)`; jobs run under
//! an [`Exec`] policy and their entries are concatenated in job order, so
//! the report does not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bilateral::{build_bilateral, BilateralRep, OscillatorBackend, WordOperator};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fock::{
    build_fock_rep, build_fock_rep_with, dense_residual, spectrum_closed_form,
    spectrum_gamma_literal, verify_gdoa, Normalization,
};
use crate::params::AlgebraParams;
use crate::realizations::{self, ffz::FfzTable, utsl2::is_degenerate, FfzIndex};
use crate::report::{Candidate, Entry, Margin, VerificationReport};
use crate::symbolic::{
    evaluate_on_state, prove_normal_forms, Letter, NormalForm, ProofStatus, Rewriter, FIELD_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gdoa,
    Spectrum,
    Ffz,
    Classical,
    Utsl2,
    Virasoro,
    EmK,
    CalogeroL2,
    Symbolic,
    CrossBackend,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Gdoa,
        Suite::Spectrum,
        Suite::Ffz,
        Suite::Classical,
        Suite::Utsl2,
        Suite::Virasoro,
        Suite::EmK,
        Suite::CalogeroL2,
        Suite::Symbolic,
        Suite::CrossBackend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gdoa => "gdoa",
            Suite::Spectrum => "spectrum",
            Suite::Ffz => "ffz",
            Suite::Classical => "classical",
            Suite::Utsl2 => "utsl2",
            Suite::Virasoro => "virasoro",
            Suite::EmK => "em-k",
            Suite::CalogeroL2 => "calogero-l2",
            Suite::Symbolic => "symbolic",
            Suite::CrossBackend => "cross-backend",
        }
    }

    pub fn default_lambdas(self) -> Vec<usize> {
        match self {
            Suite::Virasoro | Suite::EmK => vec![2, 3, 4],
            Suite::CalogeroL2 => vec![2],
            Suite::Classical => vec![50, 100, 200],
            _ => vec![2, 3, 4, 5],
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Spectrum | Suite::Virasoro => 1e-10,
            _ => 1e-12,
        }
    }

    /// Parse a list such as `"gdoa"` or `"all"`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|x| x.trim().parse()).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || (s == "calogero" && *x == Suite::CalogeroL2))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidParams(format!(
                    "unknown suite '{s}' (expected one of {}, all)",
                    names.join(", ")
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything that determines a verification run; echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    /// `None` means the per-suite default grid.
    pub lambdas: Option<Vec<usize>>,
    /// Explicit `γ_1 … γ_{λ-1}` as `[re, im]`; `None` means seeded draws.
    pub gamma: Option<Vec<[f64; 2]>>,
    pub draws: usize,
    pub dim: usize,
    pub window: (i64, i64),
    /// `None` means the per-suite default tolerance.
    pub tol: Option<f64>,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_240_601;
/// Scale of the seeded `γ` draws.
pub const DRAW_SCALE: f64 = 0.2;
/// FFZ indices range over `|m_i| ≤ FFZ_BOUND`.
pub const FFZ_BOUND: i64 = 4;
/// Virasoro indices range over `[-VIRASORO_BOUND, VIRASORO_BOUND]`.
pub const VIRASORO_BOUND: i64 = 3;
pub const EM_K_BOUND: i64 = 4;
pub const ADJOINT_POWER_MAX: u32 = 6;
pub const CROSS_BACKEND_WORDS: usize = 100;
pub const CROSS_BACKEND_DEGREE: usize = 6;
/// Relative slack on the cubic Taylor bound of the classical-limit check.
pub const CLASSICAL_SLACK: f64 = 1e-6;

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            lambdas: None,
            gamma: None,
            draws: 3,
            dim: 64,
            window: crate::bilateral::DEFAULT_WINDOW,
            tol: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn for_suite(suite: Suite) -> Self {
        Self {
            suites: vec![suite],
            ..Self::default()
        }
    }

    pub fn tol(&self, suite: Suite) -> f64 {
        self.tol.unwrap_or_else(|| suite.default_tol())
    }

    pub fn lambdas(&self, suite: Suite) -> Vec<usize> {
        match (&self.lambdas, &self.gamma) {
            (Some(l), _) => l.clone(),
            (None, Some(g)) if suite != Suite::Classical => vec![g.len() + 1],
            _ => suite.default_lambdas(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "tol must be positive, got {t}"
                )));
            }
        }
        if self.draws == 0 {
            return Err(Error::InvalidParams("draws must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidParams("no suite selected".into()));
        }
        if let Some(ls) = &self.lambdas {
            if let Some(&l) = ls.iter().find(|&&l| l < 2) {
                return Err(Error::InvalidLambda(l));
            }
        }
        if let Some(g) = &self.gamma {
            let lambda = match &self.lambdas {
                Some(ls) if ls.len() == 1 => ls[0],
                Some(_) => {
                    return Err(Error::InvalidParams(
                        "explicit gamma needs a single lambda".into(),
                    ))
                }
                None => g.len() + 1,
            };
            AlgebraParams::new(lambda, to_complex(g))?;
        }
        let (lo, hi) = self.window;
        build_bilateral(&AlgebraParams::undeformed(2)?, lo, hi)?;
        Ok(())
    }

    /// Parameter sets for one `λ`: the explicit `γ`, or `draws` seeded draws.
    pub fn parameter_sets(&self, lambda: usize) -> Result<Vec<AlgebraParams>> {
        if let Some(g) = &self.gamma {
            return Ok(vec![AlgebraParams::new(lambda, to_complex(g))?]);
        }
        if lambda < 2 {
            return Err(Error::InvalidLambda(lambda));
        }
        let mut rng = self.rng(lambda as u64);
        Ok((0..self.draws)
            .map(|_| AlgebraParams::random_admissible(lambda, &mut rng, DRAW_SCALE))
            .collect())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn to_complex(g: &[[f64; 2]]) -> Vec<Complex64> {
    g.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// Run every configured suite and assemble the report.
pub fn run(config: &RunConfig, exec: Exec) -> Result<VerificationReport> {
    config.validate()?;
    let mut entries = Vec::new();
    for &suite in &config.suites {
        entries.extend(run_suite(suite, config, exec)?);
    }
    Ok(VerificationReport::new(config.clone(), entries))
}

pub fn run_suite(suite: Suite, config: &RunConfig, exec: Exec) -> Result<Vec<Entry>> {
    let tol = config.tol(suite);
    let lambdas = config.lambdas(suite);
    match suite {
        Suite::Gdoa => per_params(config, &lambdas, exec, |p| {
            Ok(verify_gdoa(&build_fock_rep(p, config.dim)?, tol))
        }),
        Suite::Spectrum => spectrum_suite(config, &lambdas, tol, exec),
        Suite::Ffz => ffz_suite(config, &lambdas, tol, exec),
        Suite::Classical => classical_suite(config, &lambdas, exec),
        Suite::Utsl2 => per_params(config, &lambdas, exec, |p| utsl2_job(config, p, tol)),
        Suite::Virasoro => virasoro_suite(config, &lambdas, tol, exec),
        Suite::EmK => per_params(config, &lambdas, exec, |p| {
            let rep = bilateral(config, p)?;
            (-EM_K_BOUND..=EM_K_BOUND)
                .map(|m| realizations::verify_em_k(&rep, m, tol))
                .collect()
        }),
        Suite::CalogeroL2 => calogero_suite(config, &lambdas, tol, exec),
        Suite::Symbolic => symbolic_suite(&lambdas, exec),
        Suite::CrossBackend => cross_backend_suite(config, &lambdas, tol),
    }
}

fn bilateral(config: &RunConfig, params: &AlgebraParams) -> Result<BilateralRep> {
    build_bilateral(params, config.window.0, config.window.1)
}

fn collect(results: Vec<Result<Vec<Entry>>>) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// One job per `(λ, γ)` of the configured grid.
fn per_params<F>(config: &RunConfig, lambdas: &[usize], exec: Exec, job: F) -> Result<Vec<Entry>>
where
    F: Fn(&AlgebraParams) -> Result<Vec<Entry>> + Sync + Send,
{
    let mut sets = Vec::new();
    for &l in lambdas {
        sets.extend(config.parameter_sets(l)?);
    }
    collect(exec.map(&sets, job))
}

fn spectrum_suite(
    config: &RunConfig,
    lambdas: &[usize],
    tol: f64,
    exec: Exec,
) -> Result<Vec<Entry>> {
    let mut sets: Vec<(AlgebraParams, bool)> = Vec::new();
    for &l in lambdas {
        sets.extend(config.parameter_sets(l)?.into_iter().map(|p| (p, false)));
        if l == 2 && config.gamma.is_none() {
            sets.extend([0.1, 0.5, 0.9].map(|r| (AlgebraParams::calogero(r), true)));
        }
    }
    let dim = config.dim;
    collect(exec.map(&sets, |(params, uniform)| {
        let rep = build_fock_rep(params, dim)?;
        let diag = rep.diagonalized_spectrum();
        let top = dim as u64 - 2;
        let closed = spectrum_closed_form(params, top);
        let literal = spectrum_gamma_literal(params, top);
        let mut alpha_res = 0.0f64;
        let mut literal_res = 0.0f64;
        for (level, lit) in closed.iter().zip(&literal) {
            let d = diag[level.n as usize];
            alpha_res = alpha_res.max((level.energy - d).abs());
            literal_res = literal_res.max((lit - d).norm());
        }
        let margin = Margin::new(0, 1);
        let note = format!("normalization={:?}", rep.normalization());
        let mut out = vec![
            Entry::new(
                "spectrum",
                "spectrum_closed_form",
                params,
                vec![dim as i64],
                vec![
                    Candidate::paper("gamma_literal", literal_res),
                    Candidate::derived("alpha_form", alpha_res),
                ],
                tol,
                margin,
            )
            .with_note(note.clone()),
            Entry::new(
                "spectrum",
                "hamiltonian_projector_form",
                params,
                vec![dim as i64],
                vec![Candidate::derived(
                    "alpha_form",
                    dense_residual(&rep.hamiltonian(), &rep.hamiltonian_from_projectors(), 1),
                )],
                tol,
                margin,
            )
            .with_note(note),
        ];
        if *uniform {
            let r = params.gamma_r(1).re;
            let res = (0..=top as usize)
                .map(|n| (diag[n] - (n as f64 + 0.5 + r / 2.0)).abs())
                .fold(0.0, f64::max);
            out.push(Entry::new(
                "spectrum",
                "spectrum_uniform_shift",
                params,
                vec![dim as i64],
                vec![Candidate::derived("half_gamma_shift", res)],
                tol,
                margin,
            ));
        }
        Ok(out)
    }))
}

/// Per-pair `(product, commutator)` residuals and the operators whose
/// margins bound them.
type FfzSweep = (Vec<(f64, f64)>, Vec<WordOperator>);

fn ffz_suite(config: &RunConfig, lambdas: &[usize], tol: f64, exec: Exec) -> Result<Vec<Entry>> {
    let grid = FfzIndex::grid(FFZ_BOUND);
    let mut jobs = Vec::new();
    for &l in lambdas {
        jobs.push((AlgebraParams::undeformed(l)?, config.parameter_sets(l)?));
    }
    collect(exec.map(&jobs, |(zero, draws)| {
        let lambda = zero.lambda();
        let sweep = |params: &AlgebraParams| -> Result<FfzSweep> {
            let rep = bilateral(config, params)?;
            let table = FfzTable::build(&rep, FFZ_BOUND)?;
            let mut res = Vec::with_capacity(grid.len() * grid.len());
            for &m in &grid {
                for &n in &grid {
                    res.push(realizations::ffz::pair_residuals(&table, lambda, m, n)?);
                }
            }
            let ops = grid.iter().map(|&m| table.get(m).clone()).collect();
            Ok((res, ops))
        };
        let (base, base_ops) = sweep(zero)?;
        let mut out = Vec::new();
        for params in std::iter::once(zero).chain(draws) {
            let (res, ops) = if params.is_undeformed() {
                (base.clone(), base_ops.clone())
            } else {
                sweep(params)?
            };
            let pair = |i: usize| {
                let (m, n) = (grid[i / grid.len()], grid[i % grid.len()]);
                format!("worst pair m={m} n={n} over {} pairs", res.len())
            };
            let argmax = |f: fn(&(f64, f64)) -> f64| {
                (0..res.len())
                    .max_by(|&a, &b| f(&res[a]).total_cmp(&f(&res[b])))
                    .unwrap_or(0)
            };
            let margin = Margin::new(2 * FFZ_BOUND as usize, 2 * FFZ_BOUND as usize);
            let ip = argmax(|r| r.0);
            let ic = argmax(|r| r.1);
            out.push(
                Entry::new(
                    "ffz",
                    "ffz_product",
                    params,
                    vec![FFZ_BOUND],
                    vec![Candidate::paper("paper", res[ip].0)],
                    tol,
                    margin,
                )
                .with_note(pair(ip)),
            );
            out.push(
                Entry::new(
                    "ffz",
                    "ffz_commutator",
                    params,
                    vec![FFZ_BOUND],
                    vec![Candidate::paper("paper", res[ic].1)],
                    tol,
                    margin,
                )
                .with_note(pair(ic)),
            );
            if !params.is_undeformed() {
                let res_diff = res
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
                    .fold(0.0, f64::max);
                let op_diff = ops
                    .iter()
                    .zip(&base_ops)
                    .map(|(a, b)| {
                        crate::bilateral::interior_residual(a, b).unwrap_or(f64::INFINITY)
                    })
                    .fold(0.0, f64::max);
                out.push(
                    Entry::new(
                        "ffz",
                        "ffz_gamma_independence",
                        params,
                        vec![FFZ_BOUND],
                        vec![Candidate::derived("gamma_free", res_diff.max(op_diff))],
                        tol,
                        margin,
                    )
                    .with_note("difference to gamma = 0 in generators and residuals"),
                );
            }
        }
        Ok(out)
    }))
}

/// Deviation of `[T_(1,0), T_(0,1)]` from its linearization, normalized by
/// the cubic Taylor bounds `x³/6` and `x³/3`, `x = π/λ`.
fn classical_suite(config: &RunConfig, lambdas: &[usize], exec: Exec) -> Result<Vec<Entry>> {
    let (m, n) = (FfzIndex::new(1, 0), FfzIndex::new(0, 1));
    let devs: Vec<Result<(AlgebraParams, f64)>> = exec.map(lambdas, |&l| {
        let params = AlgebraParams::undeformed(l)?;
        let rep = bilateral(config, &params)?;
        Ok((
            params.clone(),
            realizations::classical_limit_deviation(&rep, m, n)?,
        ))
    });
    let devs = devs.into_iter().collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (params, dev) in &devs {
        let x = std::f64::consts::PI / params.lambda() as f64;
        out.push(
            Entry::new(
                "classical",
                "classical_limit",
                params,
                vec![m.m1, m.m2, n.m1, n.m2],
                vec![
                    Candidate::paper("x3_over_6", dev / (x.powi(3) / 6.0)),
                    Candidate::derived("x3_over_3", dev / (x.powi(3) / 3.0)),
                ],
                1.0 + CLASSICAL_SLACK,
                Margin::new(1, 1),
            )
            .with_note(format!(
                "deviation = {dev:.6e}; residuals are deviation / bound"
            )),
        );
    }
    let mut sorted: Vec<_> = devs.iter().map(|(p, d)| (p.lambda(), *d)).collect();
    sorted.sort_by_key(|x| x.0);
    let growth = sorted
        .windows(2)
        .map(|w| (w[1].1 - w[0].1).max(0.0))
        .fold(0.0, f64::max);
    if sorted.len() > 1 {
        out.push(
            Entry::formal(
                "classical",
                "classical_limit_monotone",
                sorted[0].0,
                sorted.iter().map(|x| x.0 as i64).collect(),
                vec![Candidate::derived("decreasing", growth)],
                0.0,
            )
            .with_note(
                sorted
                    .iter()
                    .map(|(l, d)| format!("lambda={l}: {d:.6e}"))
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
        );
    }
    Ok(out)
}

/// Index pairs tried for the `U_t(sl(2))` realization; degenerate ones are
/// skipped per `λ`.
pub const UTSL2_PAIRS: [(FfzIndex, FfzIndex); 6] = [
    (FfzIndex::new(1, 0), FfzIndex::new(0, 1)),
    (FfzIndex::new(1, 0), FfzIndex::new(0, 2)),
    (FfzIndex::new(1, 1), FfzIndex::new(-1, 1)),
    (FfzIndex::new(2, 1), FfzIndex::new(0, 1)),
    (FfzIndex::new(1, -1), FfzIndex::new(2, 1)),
    (FfzIndex::new(-1, 2), FfzIndex::new(1, 1)),
];

fn utsl2_job(config: &RunConfig, params: &AlgebraParams, tol: f64) -> Result<Vec<Entry>> {
    let rep = bilateral(config, params)?;
    let mut out = Vec::new();
    for (m, n) in UTSL2_PAIRS {
        if is_degenerate(params.lambda(), m, n) {
            continue;
        }
        let real = realizations::utsl2_generators(&rep, m, n)?;
        out.extend(realizations::verify_utsl2(&real, tol)?);
    }
    Ok(out)
}

fn virasoro_suite(
    config: &RunConfig,
    lambdas: &[usize],
    tol: f64,
    exec: Exec,
) -> Result<Vec<Entry>> {
    let mut sets = Vec::new();
    for &l in lambdas {
        if config.gamma.is_none() {
            sets.push(AlgebraParams::undeformed(l)?);
        }
        sets.extend(config.parameter_sets(l)?);
    }
    collect(exec.map(&sets, |params| {
        let rep = bilateral(config, params)?;
        let mut out = Vec::new();
        for m in -VIRASORO_BOUND..=VIRASORO_BOUND {
            for n in -VIRASORO_BOUND..=VIRASORO_BOUND {
                out.push(realizations::verify_virasoro(&rep, m, n, tol)?);
                if params.is_undeformed() {
                    out.push(realizations::verify_witt_limit(&rep, m, n, tol)?);
                }
            }
        }
        Ok(out)
    }))
}

fn calogero_suite(
    config: &RunConfig,
    lambdas: &[usize],
    tol: f64,
    exec: Exec,
) -> Result<Vec<Entry>> {
    if !lambdas.contains(&2) {
        return Err(Error::InvalidParams("calogero-l2 needs lambda = 2".into()));
    }
    let mut sets = config.parameter_sets(2)?;
    if config.gamma.is_none() {
        sets.push(AlgebraParams::calogero(0.7));
    }
    collect(exec.map(&sets, |params| {
        let rep = bilateral(config, params)?;
        let mut out = realizations::verify_commutator_adjoint_pair(&rep, ADJOINT_POWER_MAX, tol)?;
        for m in -VIRASORO_BOUND..=VIRASORO_BOUND {
            for n in -VIRASORO_BOUND..=VIRASORO_BOUND {
                out.push(realizations::calogero::verify_l2_correction(
                    &rep, m, n, tol,
                )?);
                out.push(realizations::calogero::verify_l2_bracket(&rep, m, n, tol)?);
            }
        }
        Ok(out)
    }))
}

/// Residual of a proof status: 0 for exact, the field residual otherwise.
pub fn proof_residual(status: &ProofStatus) -> f64 {
    match status {
        ProofStatus::ExactGroupRing => 0.0,
        ProofStatus::FieldNumeric { max_residual } => *max_residual,
        ProofStatus::Fail { residual, .. } => *residual,
    }
}

/// Text of `f_r^{(m)} = Σ_{s<m} w^{2rs}` in the expression grammar,
/// `-Σ_{s=m}^{-1} w^{2rs}` for negative `m`.
pub fn phase_sum_text(lambda: usize, r: usize, m: i64) -> String {
    let pow = |s: i64| (2 * r as i64 * s).rem_euclid(2 * lambda as i64);
    let (range, sep, lead) = if m >= 0 {
        (0..m, " + ", "")
    } else {
        (m..0, " - ", "-")
    };
    let terms: Vec<String> = range.map(|s| format!("w^{}", pow(s))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        format!("({lead}{})", terms.join(sep))
    }
}

/// `(m + Σ_r f_r^{(m)} g_r K^r)` in the expression grammar.
pub fn adjoint_power_factor_text(lambda: usize, m: u32) -> String {
    let mut s = format!("({m}");
    for r in 1..lambda {
        s.push_str(&format!(
            " + {}*g{r}*K^{r}",
            phase_sum_text(lambda, r, m as i64)
        ));
    }
    s.push(')');
    s
}

/// Symbolic identities as `(identity, λ, indices, [(candidate, kind, lhs, rhs)])`.
pub type SymbolicCase = (
    &'static str,
    usize,
    Vec<i64>,
    Vec<(&'static str, bool, String, String)>,
);

/// The symbolic identity catalogue for the given `λ` values. The boolean
/// marks a derived candidate.
pub fn symbolic_cases(lambdas: &[usize]) -> Vec<SymbolicCase> {
    let mut cases = Vec::new();
    for &l in lambdas {
        let mut rhs = "I".to_string();
        for r in 1..l {
            rhs.push_str(&format!(" + g{r}*K^{r}"));
        }
        cases.push((
            "defining_relation",
            l,
            vec![],
            vec![("paper", false, "[a, ad]".to_string(), rhs)],
        ));
        for m in 1..=ADJOINT_POWER_MAX {
            let lhs = format!("[a, ad^{m}]");
            let factor = adjoint_power_factor_text(l, m);
            cases.push((
                "adjoint_power_commutator",
                l,
                vec![m as i64],
                vec![
                    (
                        "k_left",
                        false,
                        lhs.clone(),
                        format!("{factor}*ad^{}", m - 1),
                    ),
                    ("k_right", true, lhs, format!("ad^{}*{factor}", m - 1)),
                ],
            ));
        }
        // f_r^{(λ)} vanishes only after evaluating the roots of unity
        cases.push((
            "adjoint_power_simplified",
            l,
            vec![l as i64],
            vec![(
                "field",
                true,
                format!("[a, ad^{l}]"),
                format!("{l}*ad^{}", l - 1),
            )],
        ));
        if l <= 4 {
            for m in -1..=3i64 {
                let e = format!("ad^{}*a", m + 1);
                cases.push((
                    "em_k_commutator",
                    l,
                    vec![m],
                    vec![
                        (
                            "m+1",
                            false,
                            format!("[{e}, K]"),
                            format!("(1 - w^{})*{e}*K", (2 * (m + 1)).rem_euclid(2 * l as i64)),
                        ),
                        (
                            "m",
                            true,
                            format!("[{e}, K]"),
                            format!("(1 - w^{})*{e}*K", (2 * m).rem_euclid(2 * l as i64)),
                        ),
                    ],
                ));
            }
        }
        if l <= 3 {
            for m in -1..=2i64 {
                for n in -1..=2i64 {
                    if m + n < -1 {
                        continue;
                    }
                    let e = |k: i64| format!("ad^{}*a", k + 1);
                    let mut derived = format!("({})*{}", n - m, e(m + n));
                    for r in 1..l {
                        let fr = |k: i64| phase_sum_text(l, r, k);
                        derived.push_str(&format!(
                            " + ({} - {})*g{r}*{}*K^{r}",
                            fr(n),
                            fr(m),
                            e(m + n)
                        ));
                    }
                    cases.push((
                        "virasoro_bracket",
                        l,
                        vec![m, n],
                        vec![("C", true, format!("[{}, {}]", e(m), e(n)), derived)],
                    ));
                }
            }
        }
    }
    if lambdas.contains(&2) {
        for m in 1..=ADJOINT_POWER_MAX {
            let lhs = format!("[a, ad^{m}]");
            let c = if m % 2 == 1 { "g1" } else { "0" };
            cases.push((
                "reflection_adjoint_power",
                2,
                vec![m as i64],
                vec![
                    (
                        "k_left",
                        false,
                        lhs.clone(),
                        format!("({m} + {c}*K)*ad^{}", m - 1),
                    ),
                    ("k_right", true, lhs, format!("ad^{}*({m} + {c}*K)", m - 1)),
                ],
            ));
        }
    }
    cases
}

fn symbolic_suite(lambdas: &[usize], exec: Exec) -> Result<Vec<Entry>> {
    let cases = symbolic_cases(lambdas);
    collect(exec.map(&cases, |(identity, lambda, indices, cands)| {
        let mut rw = Rewriter::new(*lambda);
        let mut candidates = Vec::new();
        let mut notes = Vec::new();
        for (name, derived, lhs, rhs) in cands {
            let l = rw.normal_order_expr(&crate::symbolic::parse(lhs, *lambda)?)?;
            let r = rw.normal_order_expr(&crate::symbolic::parse(rhs, *lambda)?)?;
            let status = prove_normal_forms(&l, &r);
            let res = proof_residual(&status);
            notes.push(format!("{name}: {status}"));
            candidates.push(if *derived {
                Candidate::derived(name, res)
            } else {
                Candidate::paper(name, res)
            });
        }
        Ok(vec![Entry::formal(
            "symbolic",
            identity,
            *lambda,
            indices.clone(),
            candidates,
            FIELD_TOL,
        )
        .with_note(notes.join("; "))])
    }))
}

/// Seeded random words over `{a, ad, K}` of length `1..=max_len`.
pub fn random_words(rng: &mut impl Rng, count: usize, max_len: usize) -> Vec<Vec<Letter>> {
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            (0..len)
                .map(|_| match rng.random_range(0..3) {
                    0 => Letter::A,
                    1 => Letter::Ad,
                    _ => Letter::K,
                })
                .collect()
        })
        .collect()
}

pub fn word_text(word: &[Letter]) -> String {
    word.iter()
        .map(|l| match l {
            Letter::A => "a",
            Letter::Ad => "ad",
            Letter::K => "K",
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Matrix action of a letter word on a backend.
pub fn word_operator<B: OscillatorBackend + ?Sized>(rep: &B, word: &[Letter]) -> WordOperator {
    word.iter().fold(rep.identity(), |acc, l| {
        let op = match l {
            Letter::A => rep.annihilation(),
            Letter::Ad => rep.creation(),
            Letter::K => rep.cyclic(),
        };
        &acc * op
    })
}

/// Largest distance between the evaluated normal form and the matrix action
/// over the operator's valid states, relative to `max(1, ‖column‖)`.
///
/// Amplitudes grow like `n^q` for `a^q`, so near the top of a 64-state
/// window an absolute comparison would only measure rounding.
pub fn oracle_residual<B: OscillatorBackend + ?Sized>(
    rep: &B,
    nf: &NormalForm,
    word: &[Letter],
) -> f64 {
    let op = word_operator(rep, word);
    op.valid_states()
        .into_iter()
        .map(|n| {
            let mut diff: std::collections::BTreeMap<i64, Complex64> = Default::default();
            for (s, v) in op.apply(n) {
                *diff.entry(s).or_default() += v;
            }
            for (s, v) in evaluate_on_state(nf, n, rep.params()) {
                *diff.entry(s).or_default() -= v;
            }
            let d = diff.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            d / op.column_norm(n).max(1.0)
        })
        .fold(0.0, f64::max)
}

fn cross_backend_suite(config: &RunConfig, lambdas: &[usize], tol: f64) -> Result<Vec<Entry>> {
    let mut rng = config.rng(u64::MAX);
    let words = random_words(&mut rng, CROSS_BACKEND_WORDS, CROSS_BACKEND_DEGREE);
    let mut backends = Vec::new();
    for &l in lambdas {
        for params in config.parameter_sets(l)? {
            let fock = build_fock_rep_with(&params, config.dim, Normalization::Module)?;
            let bil = bilateral(config, &params)?;
            backends.push((fock, bil));
        }
    }
    let mut rewriters: Vec<Rewriter> = lambdas.iter().map(|&l| Rewriter::new(l)).collect();
    let mut out = Vec::new();
    for (i, word) in words.iter().enumerate() {
        let (fock, bil) = &backends[i % backends.len()];
        let params = bil.params();
        let li = lambdas
            .iter()
            .position(|&l| l == params.lambda())
            .unwrap_or(0);
        let nf = rewriters[li].normal_order_word(word);
        let text = word_text(word);
        let (fmargin, bmargin) = (
            word_operator(fock, word).margin(),
            word_operator(bil, word).margin(),
        );
        out.push(
            Entry::new(
                "cross-backend",
                "normal_form_vs_fock",
                params,
                vec![i as i64],
                vec![Candidate::derived(
                    "symbolic",
                    oracle_residual(fock, &nf, word),
                )],
                tol,
                fmargin.into(),
            )
            .with_note(format!("{text}; relative to column norm")),
        );
        out.push(
            Entry::new(
                "cross-backend",
                "normal_form_vs_bilateral",
                params,
                vec![i as i64],
                vec![Candidate::derived(
                    "symbolic",
                    oracle_residual(bil, &nf, word),
                )],
                tol,
                bmargin.into(),
            )
            .with_note(format!("{text}; relative to column norm")),
        );
    }
    Ok(out)
}
