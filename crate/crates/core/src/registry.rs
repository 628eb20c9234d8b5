//! Named strategies for the Cech decomposition and for the verification
//! checks, selected at run time.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::elements::{self, CoherentElement, ElementError, ElementOracle};
use crate::groups::GroupExpr;
use crate::hall::GradingSequence;
use crate::hilton_milnor::{self, TowerError};
use crate::infinite_sum::{project_level, EpsilonOracle};
use crate::random::{self, WordPool};
use crate::sphere_table::SphereGroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} {name:?}; available: {available}")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechRequest {
    pub n: u32,
    pub grading: GradingSequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechOutcome {
    pub expr: GroupExpr,
    /// One line per summand.
    pub notes: Vec<String>,
    pub trivial_by_connectivity: bool,
}

pub trait Decomposer: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn decompose(&self, request: &CechRequest, table: &SphereGroupTable) -> Result<CechOutcome, RegistryError>;
}

/// Closed form for the earring `E_m`, one summand per Hall weight.
pub struct EarringDecomposer;

impl Decomposer for EarringDecomposer {
    fn name(&self) -> &'static str {
        "earring"
    }

    fn summary(&self) -> &'static str {
        "closed form for the m-dimensional earring, grouped by Hall weight"
    }

    fn decompose(&self, request: &CechRequest, table: &SphereGroupTable) -> Result<CechOutcome, RegistryError> {
        let g = &request.grading;
        if !g.is_constant() {
            return Err(RegistryError::Config(format!(
                "the earring route needs a constant grading, got {g}"
            )));
        }
        let (n, m) = (request.n, g.tail() + 1);
        if n <= g.first() {
            return Ok(trivial());
        }
        let notes = hilton_milnor::earring_summands(n, m, table)
            .into_iter()
            .map(|s| format!("weight {}: pi_{n}(S^{})^N = {}", s.weight, s.sphere, s.group))
            .collect();
        Ok(CechOutcome {
            expr: hilton_milnor::earring_formula(n, m, table),
            notes,
            trivial_by_connectivity: false,
        })
    }
}

/// Height census of `H_{n,infinity}` for an arbitrary grading.
pub struct WedgeDecomposer;

impl Decomposer for WedgeDecomposer {
    fn name(&self) -> &'static str {
        "wedge"
    }

    fn summary(&self) -> &'static str {
        "general shrinking wedge of spheres, grouped by height"
    }

    fn decompose(&self, request: &CechRequest, table: &SphereGroupTable) -> Result<CechOutcome, RegistryError> {
        let report = hilton_milnor::cech_report(request.n, &request.grading, table)?;
        if report.trivial_by_connectivity {
            return Ok(trivial());
        }
        let notes = report
            .classes
            .iter()
            .map(|c| {
                format!(
                    "height {}: {} word(s), pi_{}(S^{}) -> {}",
                    c.height,
                    c.cardinality,
                    request.n,
                    c.height + 1,
                    c.group
                )
            })
            .collect();
        Ok(CechOutcome {
            expr: report.expr,
            notes,
            trivial_by_connectivity: false,
        })
    }
}

fn trivial() -> CechOutcome {
    CechOutcome {
        expr: GroupExpr::Zero,
        notes: Vec::new(),
        trivial_by_connectivity: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRequest {
    pub seed: u64,
    /// Number of random cases when no element is given.
    pub trials: usize,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub levels: u32,
    /// Contents of an element description file.
    pub element: Option<String>,
    pub offset: u32,
    pub m_range: RangeInclusive<u32>,
}

impl Default for VerifyRequest {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            m: None,
            n: None,
            levels: 6,
            element: None,
            offset: 1,
            m_range: 3..=6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub lines: Vec<String>,
}

impl VerifyReport {
    fn new() -> Self {
        Self {
            passed: true,
            lines: Vec::new(),
        }
    }

    fn fail(&mut self, line: String) {
        self.passed = false;
        self.lines.push(line);
    }

    fn finish(mut self, summary: String) -> Self {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        self.lines.push(format!("{verdict}: {summary}"));
        self
    }
}

pub trait Verifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn verify(&self, request: &VerifyRequest, table: &SphereGroupTable) -> Result<VerifyReport, RegistryError>;
}

fn parse_file(request: &VerifyRequest, table: &SphereGroupTable) -> Result<Option<CoherentElement>, RegistryError> {
    match &request.element {
        Some(text) => Ok(Some(elements::parse_element(text, table)?)),
        None => Ok(None),
    }
}

fn require_levels(request: &VerifyRequest, min: u32) -> Result<(), RegistryError> {
    if request.levels < min {
        return Err(RegistryError::Config(format!("--levels must be at least {min}")));
    }
    Ok(())
}

pub struct CoherenceVerifier;

impl Verifier for CoherenceVerifier {
    fn name(&self) -> &'static str {
        "coherence"
    }

    fn summary(&self) -> &'static str {
        "bonding maps carry each level onto the one below"
    }

    fn verify(&self, request: &VerifyRequest, table: &SphereGroupTable) -> Result<VerifyReport, RegistryError> {
        require_levels(request, 2)?;
        let mut report = VerifyReport::new();
        let subjects = match parse_file(request, table)? {
            Some(e) => vec![e],
            None => {
                let m = request.m.unwrap_or(2);
                let n = request.n.unwrap_or(2 * m - 1);
                let pool = WordPool::new(n, m, request.levels, table)?;
                let mut rng = random::seeded(request.seed);
                (0..request.trials)
                    .map(|_| pool.element(&mut rng, table))
                    .collect::<Result<_, _>>()?
            }
        };
        for (idx, e) in subjects.iter().enumerate() {
            if let Err(failure) = elements::check_coherence(e, request.levels)? {
                report.fail(format!("element {idx} ({e}): {failure}"));
            }
        }
        Ok(report.finish(format!("{} element(s), levels 1..={}", subjects.len(), request.levels)))
    }
}

pub struct EdgeVerifier;

impl Verifier for EdgeVerifier {
    fn name(&self) -> &'static str {
        "edge"
    }

    fn summary(&self) -> &'static str {
        "the edge sum F_alpha projects onto the weight-2 family alpha, additively"
    }

    fn verify(&self, request: &VerifyRequest, table: &SphereGroupTable) -> Result<VerifyReport, RegistryError> {
        require_levels(request, 1)?;
        let mut report = VerifyReport::new();
        let (m, cases): (u32, Vec<EpsilonOracle>) = match parse_file(request, table)? {
            Some(e) => match e.oracle() {
                ElementOracle::Weight2Family(eps) => (e.m(), vec![eps.clone()]),
                other => {
                    return Err(RegistryError::Config(format!(
                        "edge verification needs eps lines only, got a {} element",
                        other.kind()
                    )))
                }
            },
            None => {
                let mut rng = random::seeded(request.seed);
                let cases = (0..request.trials)
                    .map(|_| random::epsilon(&mut rng, 10, 6, 3))
                    .collect();
                (request.m.unwrap_or(2), cases)
            }
        };
        if m < 2 {
            return Err(RegistryError::Config("--m must be at least 2".into()));
        }
        let n = 2 * m - 1;
        for (idx, eps) in cases.iter().enumerate() {
            if let Err(mismatch) = elements::verify_edge(eps, m, request.levels, table)? {
                report.fail(format!("eps #{idx} ({eps}): {mismatch}"));
            }
            // F_alpha + F_beta against F_{alpha+beta}, beta the next case
            let beta = &cases[(idx + 1) % cases.len()];
            let lhs = elements::f_alpha(eps, m)?.add(&elements::f_alpha(beta, m)?);
            let rhs = elements::f_alpha(&eps.add(beta), m)?;
            for k in 1..=request.levels {
                let (a, b) = (
                    project_level(&lhs, k, n, table).map_err(ElementError::from)?,
                    project_level(&rhs, k, n, table).map_err(ElementError::from)?,
                );
                if a != b {
                    report.fail(format!("eps #{idx}: additivity fails at level {k}: {a} vs {b}"));
                    break;
                }
            }
        }
        Ok(report.finish(format!(
            "{} epsilon matri(ces), m={m}, levels 1..={}",
            cases.len(),
            request.levels
        )))
    }
}

pub struct ThetaVerifier;

impl Verifier for ThetaVerifier {
    fn name(&self) -> &'static str {
        "theta"
    }

    fn summary(&self) -> &'static str {
        "Theta is additive and agrees with the Hilton coordinates of its input"
    }

    fn verify(&self, request: &VerifyRequest, table: &SphereGroupTable) -> Result<VerifyReport, RegistryError> {
        require_levels(request, 1)?;
        let mut report = VerifyReport::new();
        let pairs: Vec<(CoherentElement, CoherentElement)> = match parse_file(request, table)? {
            Some(e) => vec![(e.clone(), e.clone()), (e.clone(), e.negate())],
            None => {
                let m = request.m.unwrap_or(2);
                let n = request.n.unwrap_or(2 * m);
                let pool = WordPool::new(n, m, request.levels.min(4), table)?;
                let mut rng = random::seeded(request.seed);
                let mut pairs = Vec::new();
                for _ in 0..request.trials {
                    let a = pool.gtuple(&mut rng, 5, 3, table)?;
                    let b = pool.gtuple(&mut rng, 5, 3, table)?;
                    pairs.push((a, b));
                }
                pairs
            }
        };
        for (idx, (a, b)) in pairs.iter().enumerate() {
            if let Err(mismatch) = elements::verify_theta_additive(a, b, request.levels, table)? {
                report.fail(format!("pair #{idx}: {mismatch}"));
            }
            let image = a.add(b)?;
            if !elements::in_kernel_sigma(&image, request.levels)? {
                report.fail(format!("pair #{idx}: Theta image has weight-one coordinates"));
            }
        }
        Ok(report.finish(format!("{} pair(s), levels 1..={}", pairs.len(), request.levels)))
    }
}

pub struct StabilizationVerifier;

impl Verifier for StabilizationVerifier {
    fn name(&self) -> &'static str {
        "stabilize"
    }

    fn summary(&self) -> &'static str {
        "pi_{m+s}(E_m) is independent of m once m >= s + 2"
    }

    fn verify(&self, request: &VerifyRequest, table: &SphereGroupTable) -> Result<VerifyReport, RegistryError> {
        let s = request.offset;
        let r = hilton_milnor::stabilization_report(s, request.m_range.clone(), table);
        let mut report = VerifyReport::new();
        for row in &r.rows {
            let marker = if row.in_stable_range { "" } else { "  (below stable range)" };
            report
                .lines
                .push(format!("m={}: pi_{}(E_{}) = {}{marker}", row.m, row.n, row.m, row.group));
        }
        report.lines.extend(r.warnings.iter().map(|w| format!("warning: {w}")));
        match &r.stable_value {
            Some(v) => report.lines.push(format!("stable: {v}")),
            None => report.fail("not stable over the stable range".into()),
        }
        let (lo, hi) = (request.m_range.start(), request.m_range.end());
        Ok(report.finish(format!("offset s={s}, m in {lo}..={hi}")))
    }
}

/// Strategies by name.
pub struct Registry {
    decomposers: BTreeMap<&'static str, Box<dyn Decomposer>>,
    verifiers: BTreeMap<&'static str, Box<dyn Verifier>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register_decomposer(Box::new(EarringDecomposer));
        r.register_decomposer(Box::new(WedgeDecomposer));
        r.register_verifier(Box::new(CoherenceVerifier));
        r.register_verifier(Box::new(EdgeVerifier));
        r.register_verifier(Box::new(ThetaVerifier));
        r.register_verifier(Box::new(StabilizationVerifier));
        r
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            decomposers: BTreeMap::new(),
            verifiers: BTreeMap::new(),
        }
    }

    pub fn register_decomposer(&mut self, d: Box<dyn Decomposer>) {
        self.decomposers.insert(d.name(), d);
    }

    pub fn register_verifier(&mut self, v: Box<dyn Verifier>) {
        self.verifiers.insert(v.name(), v);
    }

    pub fn decomposer(&self, name: &str) -> Result<&dyn Decomposer, RegistryError> {
        self.decomposers
            .get(name)
            .map(AsRef::as_ref)
            .ok_or_else(|| unknown("decomposition", name, self.decomposers.keys()))
    }

    pub fn verifier(&self, name: &str) -> Result<&dyn Verifier, RegistryError> {
        self.verifiers
            .get(name)
            .map(AsRef::as_ref)
            .ok_or_else(|| unknown("check", name, self.verifiers.keys()))
    }

    pub fn decomposer_names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.decomposers.keys().copied()
    }

    pub fn verifier_names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.verifiers.keys().copied()
    }
}

fn unknown<'a>(kind: &'static str, name: &str, keys: impl Iterator<Item = &'a &'static str>) -> RegistryError {
    RegistryError::Unknown {
        kind,
        name: name.to_string(),
        available: keys.copied().collect::<Vec<_>>().join(", "),
    }
}
