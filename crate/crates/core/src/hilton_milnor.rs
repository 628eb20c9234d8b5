//! Hilton-Milnor decompositions of finite wedges, the bonding maps of the
//! truncation tower, and the Cech groups of the shrinking wedge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{GroupElement, GroupError, GroupExpr};
use crate::hall::{self, Cardinality, GradingSequence, HallError, HallWord};
use crate::sphere_table::SphereGroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coordinates are at level {got}, bonding map expects level {expected}")]
    Level { expected: u32, got: u32 },
    #[error("word {0} is not in the Hall truncation of this level")]
    Support(String),
}

/// Hilton coordinates of one element of `pi_n(X_{<=k})`: the `f_w` with
/// `w` in `H_{n,k}`. Zero coordinates are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCoordinates {
    pub k: u32,
    coords: BTreeMap<HallWord, GroupElement>,
}

impl LevelCoordinates {
    pub fn new(k: u32) -> Self {
        Self {
            k,
            coords: BTreeMap::new(),
        }
    }

    pub fn from_map(k: u32, map: BTreeMap<HallWord, GroupElement>) -> Self {
        let mut out = Self::new(k);
        for (w, f) in map {
            out.insert(w, f);
        }
        out
    }

    /// Adds `f` to the coordinate of `w`.
    pub fn accumulate(&mut self, w: HallWord, f: GroupElement) -> Result<(), GroupError> {
        let sum = match self.coords.remove(&w) {
            Some(old) => old.add(&f)?,
            None => f,
        };
        if !sum.is_zero() {
            self.coords.insert(w, sum);
        }
        Ok(())
    }

    fn insert(&mut self, w: HallWord, f: GroupElement) {
        if !f.is_zero() {
            self.coords.insert(w, f);
        }
    }

    pub fn get(&self, w: &HallWord) -> Option<&GroupElement> {
        self.coords.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HallWord, &GroupElement)> {
        self.coords.iter()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<HallWord, GroupElement> {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        let mut out = self.clone();
        for (w, f) in &other.coords {
            out.accumulate(w.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        Self {
            k: self.k,
            coords: self.coords.iter().map(|(w, f)| (w.clone(), f.negate())).collect(),
        }
    }
}

impl fmt::Display for LevelCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(w, v)| format!("{w} -> {v}")).collect();
        write!(f, "k={}: {{{}}}", self.k, parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeSummand {
    pub word: HallWord,
    pub height: u64,
    pub group: GroupExpr,
}

/// `pi_n(X_{<=k}) = (+)_{w in H_{n,k}} pi_n(S^{h(w)+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeDecomposition {
    pub n: u32,
    pub k: u32,
    pub grading: GradingSequence,
    pub summands: Vec<WedgeSummand>,
    /// Set when `n <= r_1`; the group vanishes and `summands` is empty.
    pub trivial_by_connectivity: bool,
}

impl WedgeDecomposition {
    pub fn total(&self) -> GroupExpr {
        GroupExpr::DirectSum(self.summands.iter().map(|s| s.group.clone()).collect()).normalize()
    }
}

fn sphere_group(n: u32, height: u64, table: &SphereGroupTable) -> GroupExpr {
    let q = u32::try_from(height + 1).expect("sphere dimension fits in u32");
    GroupExpr::sphere(n, q).resolve(table)
}

pub fn decompose_wedge(
    n: u32,
    k: u32,
    grading: &GradingSequence,
    table: &SphereGroupTable,
) -> Result<WedgeDecomposition, TowerError> {
    let mut out = WedgeDecomposition {
        n,
        k,
        grading: grading.clone(),
        summands: Vec::new(),
        trivial_by_connectivity: n <= grading.first(),
    };
    if out.trivial_by_connectivity || k == 0 {
        return Ok(out);
    }
    for word in hall::dimension_truncation(k, n, grading)? {
        let height = word.height(grading);
        out.summands.push(WedgeSummand {
            group: sphere_group(n, height, table),
            word,
            height,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BondAction {
    Keep,
    Kill,
}

/// `p_{k+1,k}` on Hilton coordinates: words using `a_{k+1}` are killed, the
/// rest pass through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondingMap {
    pub n: u32,
    pub k: u32,
    assignment: BTreeMap<HallWord, BondAction>,
}

impl BondingMap {
    pub fn assignment(&self) -> impl Iterator<Item = (&HallWord, BondAction)> {
        self.assignment.iter().map(|(w, a)| (w, *a))
    }

    pub fn action(&self, w: &HallWord) -> Option<BondAction> {
        self.assignment.get(w).copied()
    }

    /// Coordinates at level `k + 1` to coordinates at level `k`.
    pub fn apply(&self, coords: &LevelCoordinates) -> Result<LevelCoordinates, TowerError> {
        if coords.k != self.k + 1 {
            return Err(TowerError::Level {
                expected: self.k + 1,
                got: coords.k,
            });
        }
        let mut out = LevelCoordinates::new(self.k);
        for (w, f) in coords.iter() {
            match self.assignment.get(w) {
                Some(BondAction::Keep) => out.insert(w.clone(), f.clone()),
                Some(BondAction::Kill) => {}
                None => return Err(TowerError::Support(w.to_string())),
            }
        }
        Ok(out)
    }
}

pub fn bonding(n: u32, k: u32, grading: &GradingSequence) -> Result<BondingMap, TowerError> {
    let words = if n <= grading.first() {
        Vec::new()
    } else {
        hall::dimension_truncation(k + 1, n, grading)?
    };
    let assignment = words
        .into_iter()
        .map(|w| {
            let action = if w.contains_letter(k + 1) {
                BondAction::Kill
            } else {
                BondAction::Keep
            };
            (w, action)
        })
        .collect();
    Ok(BondingMap { n, k, assignment })
}

pub fn apply_bonding(b: &BondingMap, coords: &LevelCoordinates) -> Result<LevelCoordinates, TowerError> {
    b.apply(coords)
}

/// Words of `H_{n,upper}` that survive the composite projection to level `lower`.
pub fn surviving_words(
    n: u32,
    upper: u32,
    lower: u32,
    grading: &GradingSequence,
) -> Result<BTreeSet<HallWord>, TowerError> {
    Ok(hall::dimension_truncation(upper, n, grading)?
        .into_iter()
        .filter(|w| w.max_letter() <= lower)
        .collect())
}

/// One height class of `H_{n,infinity}` with its group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightClass {
    pub height: u64,
    pub cardinality: Cardinality,
    pub group: GroupExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CechReport {
    pub expr: GroupExpr,
    pub classes: Vec<HeightClass>,
    pub trivial_by_connectivity: bool,
}

/// General route: product over height classes of `H_{n,infinity}`.
pub fn cech_report(
    n: u32,
    grading: &GradingSequence,
    table: &SphereGroupTable,
) -> Result<CechReport, TowerError> {
    if n <= grading.first() {
        return Ok(CechReport {
            expr: GroupExpr::Zero,
            classes: Vec::new(),
            trivial_by_connectivity: true,
        });
    }
    let mut classes = Vec::new();
    for (height, cardinality) in hall::height_class_census(n, grading)? {
        let base = sphere_group(n, height, table);
        let group = match cardinality {
            Cardinality::Countable => GroupExpr::prod_n(base),
            Cardinality::Finite(c) => GroupExpr::pow(base, c),
        }
        .normalize();
        classes.push(HeightClass {
            height,
            cardinality,
            group,
        });
    }
    let expr = GroupExpr::DirectSum(classes.iter().map(|c| c.group.clone()).collect()).normalize();
    Ok(CechReport {
        expr,
        classes,
        trivial_by_connectivity: false,
    })
}

pub fn cech_decompose(
    n: u32,
    grading: &GradingSequence,
    table: &SphereGroupTable,
) -> Result<GroupExpr, TowerError> {
    Ok(cech_report(n, grading, table)?.expr)
}

/// Largest weight `j` with `(m - 1) j + 1 <= n`.
pub fn max_weight(n: u32, m: u32) -> u32 {
    assert!(m >= 2);
    n.saturating_sub(1) / (m - 1)
}

/// The weight-`j` summand `W_j = (pi_n(S^{(m-1)j+1}))^N`.
pub fn weight_summand(n: u32, m: u32, j: u32, table: &SphereGroupTable) -> GroupExpr {
    assert!(m >= 2 && j >= 1);
    GroupExpr::prod_n(GroupExpr::sphere(n, (m - 1) * j + 1)).resolve(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EarringSummand {
    pub weight: u32,
    pub sphere: u32,
    pub group: GroupExpr,
}

/// Closed form `(+)_{1 <= j <= (n-1)/(m-1)} (pi_n(S^{mj-j+1}))^N`, one entry per weight.
pub fn earring_summands(n: u32, m: u32, table: &SphereGroupTable) -> Vec<EarringSummand> {
    (1..=max_weight(n, m))
        .map(|j| EarringSummand {
            weight: j,
            sphere: m * j - j + 1,
            group: weight_summand(n, m, j, table),
        })
        .collect()
}

pub fn earring_formula(n: u32, m: u32, table: &SphereGroupTable) -> GroupExpr {
    GroupExpr::DirectSum(earring_summands(n, m, table).into_iter().map(|s| s.group).collect())
        .normalize()
}

/// Cech group of the pair `(prod S^m, E_m)` in degree `n + 1`: the summands of weight >= 2.
pub fn relative_cech(n: u32, m: u32, table: &SphereGroupTable) -> GroupExpr {
    GroupExpr::DirectSum(
        (2..=max_weight(n, m))
            .map(|j| weight_summand(n, m, j, table))
            .collect(),
    )
    .normalize()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationRow {
    pub m: u32,
    pub n: u32,
    pub group: GroupExpr,
    pub in_stable_range: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub offset: u32,
    pub rows: Vec<StabilizationRow>,
    /// Common value over the rows with `m >= offset + 2`, if they all agree.
    pub stable_value: Option<GroupExpr>,
    pub warnings: Vec<String>,
}

impl StabilizationReport {
    pub fn is_stable(&self) -> bool {
        self.stable_value.is_some()
    }
}

/// `pi_{m+s}(E_m)` for each `m` in the range, and whether the rows with
/// `m >= s + 2` agree.
pub fn stabilization_report(
    offset: u32,
    m_range: std::ops::RangeInclusive<u32>,
    table: &SphereGroupTable,
) -> StabilizationReport {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for m in m_range.filter(|&m| m >= 2) {
        let n = m + offset;
        let group = earring_formula(n, m, table);
        for (sn, sq) in group.unresolved() {
            warnings.push(format!("m={m}: pi_{sn}(S^{sq}) is not in the table"));
        }
        rows.push(StabilizationRow {
            m,
            n,
            group,
            in_stable_range: m >= offset + 2,
        });
    }
    let stable: Vec<&GroupExpr> = rows
        .iter()
        .filter(|r| r.in_stable_range)
        .map(|r| &r.group)
        .collect();
    let stable_value = match stable.split_first() {
        Some((first, rest))
            if rest.iter().all(|g| g == first) && first.unresolved().is_empty() =>
        {
            Some((*first).clone())
        }
        _ => None,
    };
    StabilizationReport {
        offset,
        rows,
        stable_value,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FGAbelianGroup;

    fn one() -> GradingSequence {
        GradingSequence::constant(1).unwrap()
    }

    fn w(s: &str) -> HallWord {
        s.parse().unwrap()
    }

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::integers()
    }

    fn seed() -> SphereGroupTable {
        SphereGroupTable::seed()
    }

    #[test]
    fn wedge_examples() {
        let d = decompose_wedge(3, 2, &one(), &seed()).unwrap();
        let rendered: Vec<(String, String)> = d
            .summands
            .iter()
            .map(|s| (s.word.to_string(), s.group.render_text()))
            .collect();
        assert_eq!(
            rendered,
            [("a1", "Z"), ("a2", "Z"), ("[a1,a2]", "Z")].map(|(a, b)| (a.to_string(), b.to_string()))
        );

        let d = decompose_wedge(2, 5, &one(), &seed()).unwrap();
        assert_eq!(d.summands.len(), 5);
        assert!(d.summands.iter().all(|s| s.group == GroupExpr::Finite(z())));

        let d = decompose_wedge(4, 2, &one(), &seed()).unwrap();
        let groups: Vec<String> = d.summands.iter().map(|s| s.group.render_text()).collect();
        assert_eq!(groups, ["Z/2", "Z/2", "Z/2", "Z", "Z"]);
        assert_eq!(d.summands[3].word, w("[a1,[a1,a2]]"));
    }

    #[test]
    fn wedge_below_connectivity_is_empty() {
        let g = GradingSequence::constant(2).unwrap();
        let d = decompose_wedge(2, 3, &g, &seed()).unwrap();
        assert!(d.trivial_by_connectivity);
        assert!(d.summands.is_empty());
        assert_eq!(d.total(), GroupExpr::Zero);
    }

    #[test]
    fn bonding_examples() {
        let b = bonding(3, 2, &one()).unwrap();
        let zg = z();
        let e = |c| GroupElement::cyclic(&zg, c).unwrap();
        let lvl = |pairs: &[(&str, i64)]| {
            LevelCoordinates::from_map(3, pairs.iter().map(|(s, c)| (w(s), e(*c))).collect())
        };
        assert!(b.apply(&lvl(&[("[a1,a3]", 5)])).unwrap().is_empty());
        let kept = b.apply(&lvl(&[("[a1,a2]", 5)])).unwrap();
        assert_eq!(kept.get(&w("[a1,a2]")), Some(&e(5)));
        let kept = b.apply(&lvl(&[("a3", 1), ("a1", 2)])).unwrap();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept.get(&w("a1")), Some(&e(2)));

        let err = b.apply(&lvl(&[("[a1,[a1,a2]]", 1)])).unwrap_err();
        assert!(matches!(err, TowerError::Support(_)));
        let err = b.apply(&LevelCoordinates::new(2)).unwrap_err();
        assert!(matches!(err, TowerError::Level { expected: 3, got: 2 }));
    }

    #[test]
    fn cech_examples() {
        assert_eq!(cech_decompose(3, &one(), &seed()).unwrap().render_text(), "Z^N (+) Z^N");
        assert_eq!(cech_decompose(2, &one(), &seed()).unwrap().render_text(), "Z^N");
        let g: GradingSequence = "1,2;3".parse().unwrap();
        assert_eq!(cech_decompose(3, &g, &seed()).unwrap().render_text(), "Z (+) Z");
    }

    #[test]
    fn earring_examples() {
        assert_eq!(
            earring_formula(4, 2, &seed()).render_text(),
            "(Z/2)^N (+) (Z/2)^N (+) Z^N"
        );
        assert_eq!(earring_formula(5, 4, &seed()).render_text(), "(Z/2)^N");
        assert_eq!(earring_formula(2, 3, &seed()), GroupExpr::Zero);
    }

    #[test]
    fn weight_summands() {
        assert_eq!(weight_summand(3, 2, 2, &seed()).render_text(), "Z^N");
        assert_eq!(relative_cech(4, 2, &seed()).render_text(), "(Z/2)^N (+) Z^N");
        assert_eq!(weight_summand(3, 2, 5, &seed()), GroupExpr::Zero);
        let whole = GroupExpr::DirectSum(vec![
            relative_cech(4, 2, &seed()),
            weight_summand(4, 2, 1, &seed()),
        ])
        .normalize();
        assert_eq!(whole, earring_formula(4, 2, &seed()));
    }

    #[test]
    fn stabilization_examples() {
        let r = stabilization_report(1, 3..=6, &seed());
        assert!(r.is_stable());
        assert!(r.rows.iter().all(|row| row.group.render_text() == "(Z/2)^N"));

        let r = stabilization_report(0, 2..=6, &seed());
        assert!(r.rows.iter().all(|row| row.group.render_text() == "Z^N"));
        assert!(r.is_stable());

        let r = stabilization_report(1, 2..=6, &seed());
        assert_eq!(r.rows[0].group.render_text(), "Z^N (+) Z^N");
        assert!(!r.rows[0].in_stable_range);
        assert!(r.is_stable());

        let r = stabilization_report(2, 4..=5, &seed());
        assert!(!r.is_stable());
        assert!(!r.warnings.is_empty());
    }
}
