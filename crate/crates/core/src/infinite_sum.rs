//! Infinite-sum expressions in `pi_n(E_m)` and their images at finite levels
//! of the truncation tower.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::groups::{GroupElement, GroupError};
use crate::hall::{self, GradingSequence, HallError, HallWord};
use crate::hilton_milnor::LevelCoordinates;
use crate::sphere_table::{Lookup, SphereGroupTable};
use crate::whitehead::{self, LieExpr, WhiteheadError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("pi_{n}(S^{q}) is not in the table")]
    Unresolved { n: u32, q: u32 },
    #[error("normalization left the non-Hall term {0}")]
    Residual(String),
    #[error("{0}")]
    Shape(String),
    #[error("coefficient of {word} lies in {found}, expected pi_{n}(S^{q}) = {expected}")]
    Ambient {
        word: String,
        n: u32,
        q: u32,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hall(#[from] HallError),
}

/// The integers `epsilon_{i,j}` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsilonOracle {
    /// Finitely many nonzero entries.
    Sparse(BTreeMap<(u32, u32), i64>),
    /// `value` when `0 < j - i <= width`, zero otherwise.
    Band { width: u32, value: i64 },
    /// Entrywise sum.
    Sum(Vec<EpsilonOracle>),
}

impl EpsilonOracle {
    pub fn zero() -> Self {
        EpsilonOracle::Sparse(BTreeMap::new())
    }

    /// Entries must satisfy `1 <= i < j`; zeros are dropped and repeated
    /// pairs add up.
    pub fn sparse<I>(entries: I) -> Result<Self, ProjectionError>
    where
        I: IntoIterator<Item = (u32, u32, i64)>,
    {
        let mut map = BTreeMap::new();
        for (i, j, c) in entries {
            if i == 0 || i >= j {
                return Err(ProjectionError::Shape(format!(
                    "epsilon entry ({i},{j}) needs 1 <= i < j"
                )));
            }
            *map.entry((i, j)).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(EpsilonOracle::Sparse(map))
    }

    pub fn band(width: u32, value: i64) -> Self {
        EpsilonOracle::Band { width, value }
    }

    pub fn value(&self, i: u32, j: u32) -> i64 {
        if i >= j {
            return 0;
        }
        match self {
            EpsilonOracle::Sparse(map) => map.get(&(i, j)).copied().unwrap_or(0),
            EpsilonOracle::Band { width, value } => {
                if j - i <= *width {
                    *value
                } else {
                    0
                }
            }
            EpsilonOracle::Sum(parts) => parts.iter().map(|p| p.value(i, j)).sum(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (EpsilonOracle::Sparse(a), EpsilonOracle::Sparse(b)) => {
                let mut map = a.clone();
                for (key, c) in b {
                    *map.entry(*key).or_insert(0) += c;
                }
                map.retain(|_, c| *c != 0);
                EpsilonOracle::Sparse(map)
            }
            (EpsilonOracle::Sum(a), EpsilonOracle::Sum(b)) => {
                EpsilonOracle::Sum(a.iter().chain(b).cloned().collect())
            }
            (EpsilonOracle::Sum(a), x) | (x, EpsilonOracle::Sum(a)) => {
                let mut parts = a.clone();
                parts.push(x.clone());
                EpsilonOracle::Sum(parts)
            }
            (a, b) => EpsilonOracle::Sum(vec![a.clone(), b.clone()]),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            EpsilonOracle::Sparse(map) => {
                EpsilonOracle::Sparse(map.iter().map(|(k, c)| (*k, -c)).collect())
            }
            EpsilonOracle::Band { width, value } => EpsilonOracle::Band {
                width: *width,
                value: -value,
            },
            EpsilonOracle::Sum(parts) => EpsilonOracle::Sum(parts.iter().map(Self::negate).collect()),
        }
    }

    /// Nonzero entries with `i < j <= k`.
    pub fn entries_up_to(&self, k: u32) -> Vec<(u32, u32, i64)> {
        let mut out = Vec::new();
        for j in 2..=k {
            for i in 1..j {
                let c = self.value(i, j);
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for EpsilonOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonOracle::Sparse(map) if map.is_empty() => f.write_str("0"),
            EpsilonOracle::Sparse(map) => {
                let parts: Vec<String> = map.iter().map(|((i, j), c)| format!("e{i},{j}={c}")).collect();
                f.write_str(&parts.join(" "))
            }
            EpsilonOracle::Band { width, value } => write!(f, "band(width={width}, value={value})"),
            EpsilonOracle::Sum(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| format!("({p})")).collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// Per minimal letter `i`, a finite family of Hall words `w` with `min(w) = i`
/// and coefficients `f_{i,w}` in `pi_n(S^{h(w)+1})`.
pub type Families = BTreeMap<u32, BTreeMap<HallWord, GroupElement>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfiniteSumExpr {
    /// `F_alpha = sum_i [l_i, sum_{j>i} eps_{i,j} l_j]` in `pi_{2m-1}(E_m)`.
    Edge { m: u32, epsilon: EpsilonOracle },
    /// `sum_i sum_{w in M_i} l_w o f_{i,w}`.
    Theta { m: u32, n: u32, families: Families },
    Sum(Vec<InfiniteSumExpr>),
}

/// Checks that `w` belongs to `M_i` and that `f` lives in the right summand.
pub(crate) fn check_family_entry(
    n: u32,
    grading: &GradingSequence,
    i: u32,
    w: &HallWord,
    f: &GroupElement,
    table: &SphereGroupTable,
) -> Result<(), ProjectionError> {
    if w.weight() < 2 || w.min_letter() != i || !hall::is_hall(w, w.max_letter()) {
        return Err(ProjectionError::Shape(format!(
            "{w} is not a Hall word of weight >= 2 with minimal letter a{i}"
        )));
    }
    check_coefficient(n, grading, w, f, table)
}

/// `w` must lie in `H_{n,infinity}` and `f` in the resolved `pi_n(S^{h(w)+1})`.
pub(crate) fn check_coefficient(
    n: u32,
    grading: &GradingSequence,
    w: &HallWord,
    f: &GroupElement,
    table: &SphereGroupTable,
) -> Result<(), ProjectionError> {
    let q = sphere_dimension(w, grading);
    if q > n {
        return Err(ProjectionError::Shape(format!(
            "{w} has sphere S^{q}, outside H_{{{n},infinity}}"
        )));
    }
    let expected = resolved(n, q, table)?;
    if *f.ambient() != expected {
        return Err(ProjectionError::Ambient {
            word: w.to_string(),
            n,
            q,
            expected: expected.to_string(),
            found: f.ambient().to_string(),
        });
    }
    Ok(())
}

pub(crate) fn sphere_dimension(w: &HallWord, grading: &GradingSequence) -> u32 {
    u32::try_from(w.height(grading) + 1).expect("sphere dimension fits in u32")
}

pub(crate) fn resolved(
    n: u32,
    q: u32,
    table: &SphereGroupTable,
) -> Result<crate::groups::FGAbelianGroup, ProjectionError> {
    match table.lookup(n, q) {
        Lookup::Known(g) => Ok(g),
        Lookup::Unknown => Err(ProjectionError::Unresolved { n, q }),
    }
}

impl InfiniteSumExpr {
    pub fn edge(m: u32, epsilon: EpsilonOracle) -> Result<Self, ProjectionError> {
        if m < 2 {
            return Err(ProjectionError::Shape(format!("edge sum needs m >= 2, got {m}")));
        }
        Ok(InfiniteSumExpr::Edge { m, epsilon })
    }

    pub fn theta(
        m: u32,
        n: u32,
        families: Families,
        table: &SphereGroupTable,
    ) -> Result<Self, ProjectionError> {
        let grading = GradingSequence::earring(m)?;
        for (&i, family) in &families {
            for (w, f) in family {
                check_family_entry(n, &grading, i, w, f, table)?;
            }
        }
        Ok(InfiniteSumExpr::Theta { m, n, families })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut parts = Vec::new();
        for e in [self, other] {
            match e {
                InfiniteSumExpr::Sum(inner) => parts.extend(inner.iter().cloned()),
                x => parts.push(x.clone()),
            }
        }
        InfiniteSumExpr::Sum(parts)
    }
}

/// Image of `e` under `b_k`, in Hilton coordinates of `pi_n(X_{<=k})`.
pub fn project_level(
    e: &InfiniteSumExpr,
    k: u32,
    n: u32,
    table: &SphereGroupTable,
) -> Result<LevelCoordinates, ProjectionError> {
    if k == 0 {
        return Err(ProjectionError::Shape("levels start at 1".into()));
    }
    match e {
        InfiniteSumExpr::Edge { m, epsilon } => project_edge(*m, epsilon, k, n, table),
        InfiniteSumExpr::Theta { m, n: tn, families } => {
            if *tn != n {
                return Err(ProjectionError::Shape(format!(
                    "Theta sum lives in pi_{tn}, projected in pi_{n}"
                )));
            }
            project_theta(*m, n, families, k)
        }
        InfiniteSumExpr::Sum(parts) => {
            let mut out = LevelCoordinates::new(k);
            for p in parts {
                out = out.add(&project_level(p, k, n, table)?)?;
            }
            Ok(out)
        }
    }
}

fn project_edge(
    m: u32,
    epsilon: &EpsilonOracle,
    k: u32,
    n: u32,
    table: &SphereGroupTable,
) -> Result<LevelCoordinates, ProjectionError> {
    if n != 2 * m - 1 {
        return Err(ProjectionError::Shape(format!(
            "edge sum lives in pi_{}, projected in pi_{n}",
            2 * m - 1
        )));
    }
    let grading = GradingSequence::earring(m)?;
    // b_k sends l_j to 0 for j > k; what is left of the i-th term is
    // [a_i, sum_{i<j<=k} eps_{i,j} a_j], and [a_k, 0] for i = k.
    let mut total = whitehead::FormalSum::zero();
    for i in 1..=k {
        let inner: Vec<LieExpr> = (i + 1..=k)
            .map(|j| LieExpr::scale(epsilon.value(i, j), LieExpr::gen(j, m)))
            .collect();
        let inner = if inner.is_empty() {
            LieExpr::Zero
        } else {
            LieExpr::Sum(inner)
        };
        total = total.add(&whitehead::expand(&LieExpr::bracket(LieExpr::gen(i, m), inner))?);
    }
    let reduced = whitehead::hall_normalize(&total, k)?;
    if !reduced.residual.is_zero() {
        return Err(ProjectionError::Residual(reduced.residual.to_string()));
    }
    let mut out = LevelCoordinates::new(k);
    for (w, c) in reduced.hall_coordinates() {
        let q = sphere_dimension(&w, &grading);
        let ambient = resolved(n, q, table)?;
        out.accumulate(w, GroupElement::cyclic(&ambient, c)?)?;
    }
    Ok(out)
}

fn project_theta(m: u32, n: u32, families: &Families, k: u32) -> Result<LevelCoordinates, ProjectionError> {
    let grading = GradingSequence::earring(m)?;
    let mut out = LevelCoordinates::new(k);
    for family in families.values() {
        for (w, f) in family {
            // l_w survives b_k exactly when no letter above k gets replaced by 0
            let survives = (k + 1..=w.max_letter())
                .all(|letter| !whitehead::substitute_zero(w, letter, &grading).is_zero());
            if survives && hall_word_in_truncation(w, &grading, n) {
                out.accumulate(w.clone(), f.clone())?;
            }
        }
    }
    Ok(out)
}

fn hall_word_in_truncation(w: &HallWord, grading: &GradingSequence, n: u32) -> bool {
    sphere_dimension(w, grading) <= n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FGAbelianGroup;

    fn word(s: &str) -> HallWord {
        s.parse().unwrap()
    }

    fn int(c: i64) -> GroupElement {
        GroupElement::cyclic(&FGAbelianGroup::integers(), c).unwrap()
    }

    #[test]
    fn epsilon_values() {
        let e = EpsilonOracle::sparse([(1, 2, 1), (2, 5, -3), (1, 2, 0)]).unwrap();
        assert_eq!(e.value(1, 2), 1);
        assert_eq!(e.value(2, 5), -3);
        assert_eq!(e.value(2, 1), 0);
        assert!(EpsilonOracle::sparse([(2, 2, 1)]).is_err());
        let band = EpsilonOracle::band(1, 1);
        assert_eq!(band.entries_up_to(3), vec![(1, 2, 1), (2, 3, 1)]);
        let s = e.add(&band);
        assert_eq!(s.value(1, 2), 2);
        assert_eq!(s.add(&s.negate()).entries_up_to(6), vec![]);
    }

    #[test]
    fn edge_projection_examples() {
        let t = SphereGroupTable::seed();
        let e = InfiniteSumExpr::edge(2, EpsilonOracle::sparse([(1, 2, 1)]).unwrap()).unwrap();
        let level3 = project_level(&e, 3, 3, &t).unwrap();
        assert_eq!(level3.len(), 1);
        assert_eq!(level3.get(&word("[a1,a2]")), Some(&int(1)));
        let dense = InfiniteSumExpr::edge(2, EpsilonOracle::band(3, 2)).unwrap();
        assert!(project_level(&dense, 1, 3, &t).unwrap().is_empty());
        assert!(project_level(&e, 3, 4, &t).is_err());
    }

    #[test]
    fn theta_projection_examples() {
        let t = SphereGroupTable::seed();
        let families = Families::from([(1, BTreeMap::from([(word("[a1,a2]"), int(1))]))]);
        let e = InfiniteSumExpr::theta(2, 3, families, &t).unwrap();
        assert!(project_level(&e, 1, 3, &t).unwrap().is_empty());
        let level2 = project_level(&e, 2, 3, &t).unwrap();
        assert_eq!(level2.get(&word("[a1,a2]")), Some(&int(1)));

        let wrong_letter = Families::from([(2, BTreeMap::from([(word("[a1,a2]"), int(1))]))]);
        assert!(InfiniteSumExpr::theta(2, 3, wrong_letter, &t).is_err());
        let weight_one = Families::from([(1, BTreeMap::from([(word("a1"), int(1))]))]);
        assert!(InfiniteSumExpr::theta(2, 3, weight_one, &t).is_err());
    }
}
