//! Elements of the Cech group `pi_n(E_m)` as coordinate oracles over
//! `H_{n,infinity}`, evaluated one level of the tower at a time.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::groups::{FGAbelianGroup, GroupElement, GroupError, GroupExpr};
use crate::hall::{self, GradingSequence, HallError, HallWord};
use crate::hilton_milnor::{self, LevelCoordinates, TowerError};
use crate::infinite_sum::{
    self, check_coefficient, check_family_entry, project_level, EpsilonOracle, Families,
    InfiniteSumExpr, ProjectionError,
};
use crate::sphere_table::SphereGroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("cannot combine elements of pi_{n1}(E_{m1}) and pi_{n2}(E_{m2})")]
    Ambient { n1: u32, m1: u32, n2: u32, m2: u32 },
    #[error("cannot add a {0} element to a {1} element")]
    Incompatible(&'static str, &'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hall(#[from] HallError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementOracle {
    /// Finitely many nonzero coordinates.
    FiniteSupport(BTreeMap<HallWord, GroupElement>),
    /// `[a_i, a_j] -> eps_{i,j} * gamma` in `pi_{2m-1}(S^{2m-1}) = Z`.
    Weight2Family(EpsilonOracle),
    /// Finite families indexed by minimal letter.
    GTuple(Families),
    /// A finitely supported part plus one structured part. Only produced by
    /// [`CoherentElement::add`].
    Mixed {
        finite: BTreeMap<HallWord, GroupElement>,
        other: Box<ElementOracle>,
    },
}

impl ElementOracle {
    pub fn kind(&self) -> &'static str {
        match self {
            ElementOracle::FiniteSupport(_) => "finite-support",
            ElementOracle::Weight2Family(_) => "weight-2 family",
            ElementOracle::GTuple(_) => "G-tuple",
            ElementOracle::Mixed { other, .. } => other.kind(),
        }
    }
}

/// Split into finite part and structured part.
fn split(o: &ElementOracle) -> (BTreeMap<HallWord, GroupElement>, Option<ElementOracle>) {
    match o {
        ElementOracle::FiniteSupport(map) => (map.clone(), None),
        ElementOracle::Mixed { finite, other } => (finite.clone(), Some((**other).clone())),
        other => (BTreeMap::new(), Some(other.clone())),
    }
}

fn merge_maps(
    a: &BTreeMap<HallWord, GroupElement>,
    b: &BTreeMap<HallWord, GroupElement>,
) -> Result<BTreeMap<HallWord, GroupElement>, GroupError> {
    let mut out = a.clone();
    for (w, f) in b {
        let sum = match out.remove(w) {
            Some(old) => old.add(f)?,
            None => f.clone(),
        };
        if !sum.is_zero() {
            out.insert(w.clone(), sum);
        }
    }
    Ok(out)
}

/// Coordinate stream of one element of the inverse limit.
pub trait LevelOracle {
    fn dimension(&self) -> u32;
    fn grading(&self) -> GradingSequence;
    fn level(&self, k: u32) -> Result<LevelCoordinates, ElementError>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentElement {
    n: u32,
    m: u32,
    oracle: ElementOracle,
}

impl CoherentElement {
    pub fn zero(n: u32, m: u32) -> Self {
        Self {
            n,
            m,
            oracle: ElementOracle::FiniteSupport(BTreeMap::new()),
        }
    }

    pub fn finite_support(
        n: u32,
        m: u32,
        entries: BTreeMap<HallWord, GroupElement>,
        table: &SphereGroupTable,
    ) -> Result<Self, ElementError> {
        let grading = GradingSequence::earring(m)?;
        let mut map = BTreeMap::new();
        for (w, f) in entries {
            if !hall::is_hall(&w, w.max_letter()) {
                return Err(ProjectionError::Shape(format!("{w} is not a Hall word")).into());
            }
            check_coefficient(n, &grading, &w, &f, table)?;
            if !f.is_zero() {
                map.insert(w, f);
            }
        }
        Ok(Self {
            n,
            m,
            oracle: ElementOracle::FiniteSupport(map),
        })
    }

    /// Needs `n = 2m - 1`, the degree where `[a_i, a_j]` has coefficient group `Z`.
    pub fn weight2_family(n: u32, m: u32, epsilon: EpsilonOracle) -> Result<Self, ElementError> {
        GradingSequence::earring(m)?;
        if n != 2 * m - 1 {
            return Err(ProjectionError::Shape(format!(
                "weight-2 families live in pi_{}(E_{m}), not pi_{n}",
                2 * m - 1
            ))
            .into());
        }
        Ok(Self {
            n,
            m,
            oracle: ElementOracle::Weight2Family(epsilon),
        })
    }

    pub fn gtuple(n: u32, m: u32, families: Families, table: &SphereGroupTable) -> Result<Self, ElementError> {
        let grading = GradingSequence::earring(m)?;
        let mut clean = Families::new();
        for (i, family) in families {
            let mut kept = BTreeMap::new();
            for (w, f) in family {
                check_family_entry(n, &grading, i, &w, &f, table)?;
                if !f.is_zero() {
                    kept.insert(w, f);
                }
            }
            if !kept.is_empty() {
                clean.insert(i, kept);
            }
        }
        Ok(Self {
            n,
            m,
            oracle: ElementOracle::GTuple(clean),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn oracle(&self) -> &ElementOracle {
        &self.oracle
    }

    pub fn level(&self, k: u32) -> Result<LevelCoordinates, ElementError> {
        if k == 0 {
            return Err(ProjectionError::Shape("levels start at 1".into()).into());
        }
        self.level_of(&self.oracle, k)
    }

    fn level_of(&self, oracle: &ElementOracle, k: u32) -> Result<LevelCoordinates, ElementError> {
        let mut out = LevelCoordinates::new(k);
        match oracle {
            ElementOracle::FiniteSupport(map) => {
                for (w, f) in map.iter().filter(|(w, _)| w.max_letter() <= k) {
                    out.accumulate(w.clone(), f.clone())?;
                }
            }
            ElementOracle::Weight2Family(epsilon) => {
                let gamma = FGAbelianGroup::integers();
                for (i, j, c) in epsilon.entries_up_to(k) {
                    let w = HallWord::bracket(HallWord::letter(i), HallWord::letter(j));
                    out.accumulate(w, GroupElement::cyclic(&gamma, c)?)?;
                }
            }
            ElementOracle::GTuple(families) => {
                for family in families.range(..=k).map(|(_, f)| f) {
                    for (w, f) in family.iter().filter(|(w, _)| w.max_letter() <= k) {
                        out.accumulate(w.clone(), f.clone())?;
                    }
                }
            }
            ElementOracle::Mixed { finite, other } => {
                let a = self.level_of(&ElementOracle::FiniteSupport(finite.clone()), k)?;
                out = a.add(&self.level_of(other, k)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ElementError> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(ElementError::Ambient {
                n1: self.n,
                m1: self.m,
                n2: other.n,
                m2: other.m,
            });
        }
        let (fa, sa) = split(&self.oracle);
        let (fb, sb) = split(&other.oracle);
        let finite = merge_maps(&fa, &fb)?;
        let structured = match (sa, sb) {
            (None, x) | (x, None) => x,
            (Some(ElementOracle::Weight2Family(a)), Some(ElementOracle::Weight2Family(b))) => {
                Some(ElementOracle::Weight2Family(a.add(&b)))
            }
            (Some(ElementOracle::GTuple(a)), Some(ElementOracle::GTuple(b))) => {
                let mut merged = a;
                for (i, family) in b {
                    let entry = merged.entry(i).or_default();
                    *entry = merge_maps(entry, &family)?;
                    if entry.is_empty() {
                        merged.remove(&i);
                    }
                }
                Some(ElementOracle::GTuple(merged))
            }
            (Some(x), Some(y)) => return Err(ElementError::Incompatible(x.kind(), y.kind())),
        };
        let oracle = match structured {
            None => ElementOracle::FiniteSupport(finite),
            Some(s) if finite.is_empty() => s,
            Some(s) => ElementOracle::Mixed {
                finite,
                other: Box::new(s),
            },
        };
        Ok(Self {
            n: self.n,
            m: self.m,
            oracle,
        })
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            m: self.m,
            oracle: negate_oracle(&self.oracle),
        }
    }
}

fn negate_map(map: &BTreeMap<HallWord, GroupElement>) -> BTreeMap<HallWord, GroupElement> {
    map.iter().map(|(w, f)| (w.clone(), f.negate())).collect()
}

fn negate_oracle(o: &ElementOracle) -> ElementOracle {
    match o {
        ElementOracle::FiniteSupport(map) => ElementOracle::FiniteSupport(negate_map(map)),
        ElementOracle::Weight2Family(e) => ElementOracle::Weight2Family(e.negate()),
        ElementOracle::GTuple(families) => {
            ElementOracle::GTuple(families.iter().map(|(i, f)| (*i, negate_map(f))).collect())
        }
        ElementOracle::Mixed { finite, other } => ElementOracle::Mixed {
            finite: negate_map(finite),
            other: Box::new(negate_oracle(other)),
        },
    }
}

impl LevelOracle for CoherentElement {
    fn dimension(&self) -> u32 {
        self.n
    }

    fn grading(&self) -> GradingSequence {
        GradingSequence::earring(self.m).expect("validated at construction")
    }

    fn level(&self, k: u32) -> Result<LevelCoordinates, ElementError> {
        CoherentElement::level(self, k)
    }
}

impl fmt::Display for CoherentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in pi_{}(E_{})", self.oracle.kind(), self.n, self.m)
    }
}

/// First place where the tower fails to commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceFailure {
    pub k: u32,
    pub word: Option<HallWord>,
    pub message: String,
}

impl fmt::Display for CoherenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Some(w) => write!(f, "k={} word {}: {}", self.k, w, self.message),
            None => write!(f, "k={}: {}", self.k, self.message),
        }
    }
}

/// `Ok(())` iff `p_{k+1,k}(level(k+1)) = level(k)` for all `k < kmax`.
pub fn check_coherence<O: LevelOracle + ?Sized>(
    oracle: &O,
    kmax: u32,
) -> Result<Result<(), CoherenceFailure>, ElementError> {
    let n = oracle.dimension();
    let grading = oracle.grading();
    let mut upper = oracle.level(1)?;
    for k in 1..kmax {
        let lower = upper;
        upper = oracle.level(k + 1)?;
        let bond = hilton_milnor::bonding(n, k, &grading)?;
        let projected = match bond.apply(&upper) {
            Ok(p) => p,
            Err(TowerError::Support(w)) => {
                return Ok(Err(CoherenceFailure {
                    k: k + 1,
                    word: w.parse().ok(),
                    message: "coordinate outside the Hall truncation".into(),
                }))
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(w) = first_difference(&projected, &lower) {
            return Ok(Err(CoherenceFailure {
                k,
                word: Some(w.clone()),
                message: format!(
                    "bonding gives {}, level {k} has {}",
                    show(projected.get(&w)),
                    show(lower.get(&w))
                ),
            }));
        }
    }
    Ok(Ok(()))
}

fn show(f: Option<&GroupElement>) -> String {
    f.map_or_else(|| "0".to_string(), ToString::to_string)
}

fn first_difference(a: &LevelCoordinates, b: &LevelCoordinates) -> Option<HallWord> {
    let mut words: Vec<&HallWord> = a.iter().map(|(w, _)| w).chain(b.iter().map(|(w, _)| w)).collect();
    words.sort();
    words.into_iter().find(|w| a.get(w) != b.get(w)).cloned()
}

/// The splitting `zeta`: weight-one coordinates `a_i -> g_i` in `pi_n(S^m)`.
pub fn zeta(
    n: u32,
    m: u32,
    g: &BTreeMap<u32, GroupElement>,
    table: &SphereGroupTable,
) -> Result<CoherentElement, ElementError> {
    let entries = g.iter().map(|(i, f)| (HallWord::letter(*i), f.clone())).collect();
    CoherentElement::finite_support(n, m, entries, table)
}

/// Weight-one coordinates at level `kmax`, indexed by letter.
pub fn sigma_coords(e: &CoherentElement, kmax: u32) -> Result<BTreeMap<u32, GroupElement>, ElementError> {
    Ok(e
        .level(kmax)?
        .iter()
        .filter_map(|(w, f)| w.as_letter().map(|i| (i, f.clone())))
        .collect())
}

pub fn in_kernel_sigma(e: &CoherentElement, kmax: u32) -> Result<bool, ElementError> {
    for k in 1..=kmax {
        if e.level(k)?.iter().any(|(w, _)| w.weight() == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn f_alpha(epsilon: &EpsilonOracle, m: u32) -> Result<InfiniteSumExpr, ElementError> {
    Ok(InfiniteSumExpr::edge(m, epsilon.clone())?)
}

/// Result of comparing two coordinate streams level by level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMismatch {
    pub k: u32,
    pub expected: LevelCoordinates,
    pub found: LevelCoordinates,
}

impl fmt::Display for LevelMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}: expected {}, found {}", self.k, self.expected, self.found)
    }
}

/// `b_k(F_alpha) = level(alpha, k)` for `k <= kmax`.
pub fn verify_edge(
    epsilon: &EpsilonOracle,
    m: u32,
    kmax: u32,
    table: &SphereGroupTable,
) -> Result<Result<(), LevelMismatch>, ElementError> {
    let n = 2 * m - 1;
    let sum = f_alpha(epsilon, m)?;
    let alpha = CoherentElement::weight2_family(n, m, epsilon.clone())?;
    for k in 1..=kmax {
        let found = project_level(&sum, k, n, table)?;
        let expected = alpha.level(k)?;
        if found != expected {
            return Ok(Err(LevelMismatch { k, expected, found }));
        }
    }
    Ok(Ok(()))
}

pub fn theta(alpha: &CoherentElement, table: &SphereGroupTable) -> Result<InfiniteSumExpr, ElementError> {
    match alpha.oracle() {
        ElementOracle::GTuple(families) => Ok(InfiniteSumExpr::theta(
            alpha.m(),
            alpha.n(),
            families.clone(),
            table,
        )?),
        other => Err(ElementError::Incompatible("G-tuple", other.kind())),
    }
}

/// `Theta(alpha + beta) = Theta(alpha) + Theta(beta)` and `Psi o Theta = phi`
/// at every level `k <= kmax`.
pub fn verify_theta_additive(
    alpha: &CoherentElement,
    beta: &CoherentElement,
    kmax: u32,
    table: &SphereGroupTable,
) -> Result<Result<(), LevelMismatch>, ElementError> {
    let sum = alpha.add(beta)?;
    let n = alpha.n();
    let (ta, tb, tsum) = (theta(alpha, table)?, theta(beta, table)?, theta(&sum, table)?);
    for k in 1..=kmax {
        let whole = project_level(&tsum, k, n, table)?;
        let parts = project_level(&ta, k, n, table)?.add(&project_level(&tb, k, n, table)?)?;
        if whole != parts {
            return Ok(Err(LevelMismatch {
                k,
                expected: parts,
                found: whole,
            }));
        }
        let direct = sum.level(k)?;
        if whole != direct {
            return Ok(Err(LevelMismatch {
                k,
                expected: direct,
                found: whole,
            }));
        }
    }
    Ok(Ok(()))
}

/// The subgroup `G_n(m)` two ways: as `PROD_N` of the per-letter sums and in
/// the regrouped form, with whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupForms {
    pub direct: GroupExpr,
    pub regrouped: GroupExpr,
    pub equal: bool,
}

pub fn g_group_expr(n: u32, m: u32, table: &SphereGroupTable) -> SubgroupForms {
    let weights = 2..=hilton_milnor::max_weight(n, m);
    // M_i has countably many words of each weight j >= 2: [a_i, a_j], ...
    let block = |j: u32| GroupExpr::sum_n(GroupExpr::sphere(n, (m - 1) * j + 1)).resolve(table);
    let direct = GroupExpr::prod_n(GroupExpr::DirectSum(weights.clone().map(block).collect()));
    let regrouped = GroupExpr::DirectSum(weights.map(|j| GroupExpr::prod_n(block(j))).collect()).normalize();
    let equal = direct.distribute_products().normalize() == regrouped;
    SubgroupForms {
        direct,
        regrouped,
        equal,
    }
}

/// Parses an element description:
///
/// ```text
/// element n=3 m=2
/// support [a1,a2] = 1
/// eps 1 2 = 1
/// gtuple 1 [a1,a2] = 1
/// ```
///
/// Group elements are comma-separated integers in the resolved coefficient group.
pub fn parse_element(text: &str, table: &SphereGroupTable) -> Result<CoherentElement, ElementError> {
    let mut header: Option<(u32, u32)> = None;
    let mut support = BTreeMap::new();
    let mut eps = Vec::new();
    let mut families = Families::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ElementError::Parse { line, message };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        if keyword == "element" {
            if header.is_some() {
                return Err(err("duplicate header".into()));
            }
            header = Some(parse_header(rest).map_err(err)?);
            continue;
        }
        let (n, m) = header.ok_or_else(|| err("expected `element n=<n> m=<m>` first".into()))?;
        let grading = GradingSequence::earring(m)?;
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| err(format!("expected `{keyword} ... = <value>`")))?;
        match keyword {
            "support" => {
                let w: HallWord = lhs.trim().parse().map_err(|e: HallError| err(e.to_string()))?;
                let f = parse_value(n, &w, &grading, rhs, table).map_err(err)?;
                if support.insert(w.clone(), f).is_some() {
                    return Err(err(format!("repeated word {w}")));
                }
            }
            "eps" => {
                let ij: Vec<u32> = lhs
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(format!("bad indices {:?}", lhs.trim())))?;
                let [i, j] = ij[..] else {
                    return Err(err("expected `eps <i> <j> = <c>`".into()));
                };
                let c: i64 = rhs.trim().parse().map_err(|_| err(format!("bad integer {:?}", rhs.trim())))?;
                eps.push((i, j, c));
            }
            "gtuple" => {
                let (i, w) = lhs
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("expected `gtuple <i> <word> = <value>`".into()))?;
                let i: u32 = i.parse().map_err(|_| err(format!("bad letter index {i:?}")))?;
                let w: HallWord = w.trim().parse().map_err(|e: HallError| err(e.to_string()))?;
                let f = parse_value(n, &w, &grading, rhs, table).map_err(err)?;
                if families.entry(i).or_default().insert(w.clone(), f).is_some() {
                    return Err(err(format!("repeated word {w} for letter {i}")));
                }
            }
            other => return Err(err(format!("unknown line kind {other:?}"))),
        }
    }
    let (n, m) = header.ok_or(ElementError::Parse {
        line: 0,
        message: "missing `element n=<n> m=<m>` header".into(),
    })?;
    let mut e = CoherentElement::finite_support(n, m, support, table)?;
    if !eps.is_empty() {
        let family = EpsilonOracle::sparse(eps)?;
        e = e.add(&CoherentElement::weight2_family(n, m, family)?)?;
    }
    if !families.is_empty() {
        e = e.add(&CoherentElement::gtuple(n, m, families, table)?)?;
    }
    Ok(e)
}

fn parse_header(rest: &str) -> Result<(u32, u32), String> {
    let mut n = None;
    let mut m = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| format!("bad field {field:?}"))?;
        let value: u32 = value.parse().map_err(|_| format!("bad value in {field:?}"))?;
        match key {
            "n" => n = Some(value),
            "m" => m = Some(value),
            _ => return Err(format!("unknown field {key:?}")),
        }
    }
    match (n, m) {
        (Some(n), Some(m)) if m >= 2 && n >= 1 => Ok((n, m)),
        (Some(_), Some(_)) => Err("need n >= 1 and m >= 2".into()),
        _ => Err("header needs n=<n> and m=<m>".into()),
    }
}

fn parse_value(
    n: u32,
    w: &HallWord,
    grading: &GradingSequence,
    text: &str,
    table: &SphereGroupTable,
) -> Result<GroupElement, String> {
    let q = infinite_sum::sphere_dimension(w, grading);
    let ambient = infinite_sum::resolved(n, q, table).map_err(|e| e.to_string())?;
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad group element {:?}", text.trim()))?;
    GroupElement::new(&ambient, &coords).map_err(|e| e.to_string())
}
