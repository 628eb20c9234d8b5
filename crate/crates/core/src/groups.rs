//! Finitely generated abelian groups, their elements, and formal group
//! expressions with countable sums, countable products and unresolved
//! sphere-group symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sphere_table::{Lookup, SphereGroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },
    #[error("element of {group} needs {expected} integers, got {got}")]
    ElementArity {
        group: String,
        expected: usize,
        got: usize,
    },
    #[error("cannot parse group {0:?}")]
    Parse(String),
    #[error("malformed machine expression: {0}")]
    Machine(String),
}

/// `Z^rank (+) Z/d1 (+) ... (+) Z/ds` with `d1 | d2 | ... | ds`, all `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    rank: u32,
    torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: u32) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_parts(0, &[order])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    /// Orders `0` and `1` contribute nothing.
    pub fn from_parts(rank: u32, cyclic_orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &t in cyclic_orders.iter().filter(|&&t| t >= 2) {
            for (p, q) in prime_powers(t) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        // largest invariant factor collects the largest power of every prime
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in powers.iter().enumerate() {
                factors[len - 1 - slot] *= q;
            }
        }
        Self { rank, torsion: factors }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of integer coordinates of an element.
    pub fn arity(&self) -> usize {
        self.rank as usize + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        Self::from_parts(self.rank + other.rank, &orders)
    }

    fn is_cyclic(&self) -> bool {
        self.arity() == 1
    }

    /// Rendering as used in table files: `Z^2 + Z/2 + (Z/12)^3`.
    pub fn to_table_string(&self) -> String {
        self.terms().join(" + ")
    }

    fn terms(&self) -> Vec<String> {
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&d| d == t).count();
            if run == 1 {
                terms.push(format!("Z/{t}"));
            } else {
                terms.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        terms
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.terms().join(" (+) "))
    }
}

impl FromStr for FGAbelianGroup {
    type Err = GroupError;

    /// Table grammar: `0` | term (`+` term)*, term ::= `Z` | `Z^a` | `Z/t` | `(Z/t)^a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::trivial());
        }
        if compact.is_empty() {
            return Err(bad());
        }
        let mut rank = 0u32;
        let mut orders = Vec::new();
        let positive = |t: &str, min: u64| -> Result<u64, GroupError> {
            // reject signs and leading '+' that `parse` would accept
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let v: u64 = t.parse().map_err(|_| bad())?;
            if v < min {
                return Err(bad());
            }
            Ok(v)
        };
        for term in compact.split('+') {
            if term == "Z" {
                rank += 1;
            } else if let Some(a) = term.strip_prefix("Z^") {
                rank += u32::try_from(positive(a, 1)?).map_err(|_| bad())?;
            } else if let Some(t) = term.strip_prefix("Z/") {
                orders.push(positive(t, 2)?);
            } else if let Some(rest) = term.strip_prefix("(Z/") {
                let (t, a) = rest.split_once(")^").ok_or_else(bad)?;
                let t = positive(t, 2)?;
                let a = positive(a, 1)?;
                orders.extend(std::iter::repeat_n(t, a as usize));
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_parts(rank, &orders))
    }
}

/// An element of a finitely generated abelian group: integer coordinates on
/// the free part, residues in `[0, d_i)` on the torsion part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    ambient: FGAbelianGroup,
    free: Vec<i64>,
    torsion: Vec<u64>,
}

impl GroupElement {
    pub fn zero(ambient: &FGAbelianGroup) -> Self {
        Self {
            free: vec![0; ambient.rank as usize],
            torsion: vec![0; ambient.torsion.len()],
            ambient: ambient.clone(),
        }
    }

    /// Builds an element from `rank + #torsion` integers; torsion entries are
    /// reduced into range.
    pub fn new(ambient: &FGAbelianGroup, coords: &[i64]) -> Result<Self, GroupError> {
        if coords.len() != ambient.arity() {
            return Err(GroupError::ElementArity {
                group: ambient.to_string(),
                expected: ambient.arity(),
                got: coords.len(),
            });
        }
        let (free, tors) = coords.split_at(ambient.rank as usize);
        let torsion = tors
            .iter()
            .zip(&ambient.torsion)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(Self {
            ambient: ambient.clone(),
            free: free.to_vec(),
            torsion,
        })
    }

    /// The integer `c` viewed in a cyclic group (`Z` or `Z/d`).
    pub fn cyclic(ambient: &FGAbelianGroup, c: i64) -> Result<Self, GroupError> {
        Self::new(ambient, &[c])
    }

    pub fn ambient(&self) -> &FGAbelianGroup {
        &self.ambient
    }

    pub fn coords(&self) -> Vec<i64> {
        self.free
            .iter()
            .copied()
            .chain(self.torsion.iter().map(|&t| t as i64))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&c| c == 0) && self.torsion.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch {
                left: self.ambient.to_string(),
                right: other.ambient.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.ambient.torsion)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        Ok(Self {
            ambient: self.ambient.clone(),
            free,
            torsion,
        })
    }

    pub fn negate(&self) -> Self {
        Self {
            ambient: self.ambient.clone(),
            free: self.free.iter().map(|c| -c).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&self.ambient.torsion)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(
            &self.ambient,
            &self.coords().iter().map(|x| x * c).collect::<Vec<_>>(),
        )
        .expect("same arity")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(i64::to_string).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Formal group expression.
///
/// The derived order (variant order, then fields) is the canonical sort key
/// for direct-sum children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupExpr {
    Zero,
    Finite(FGAbelianGroup),
    /// `pi_n(S^q)` whose value is not known.
    Sphere { n: u32, q: u32 },
    DirectSum(Vec<GroupExpr>),
    /// Finite direct power.
    Pow(Box<GroupExpr>, u64),
    /// Countable direct sum.
    SumN(Box<GroupExpr>),
    /// Countable direct product.
    ProdN(Box<GroupExpr>),
}

impl GroupExpr {
    pub fn finite(g: FGAbelianGroup) -> Self {
        GroupExpr::Finite(g)
    }

    pub fn sphere(n: u32, q: u32) -> Self {
        GroupExpr::Sphere { n, q }
    }

    pub fn pow(e: GroupExpr, c: u64) -> Self {
        GroupExpr::Pow(Box::new(e), c)
    }

    pub fn sum_n(e: GroupExpr) -> Self {
        GroupExpr::SumN(Box::new(e))
    }

    pub fn prod_n(e: GroupExpr) -> Self {
        GroupExpr::ProdN(Box::new(e))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GroupExpr::Zero)
    }

    /// Canonical form: sums flattened and sorted, zeros dropped, trivial
    /// powers collapsed. Idempotent.
    pub fn normalize(&self) -> GroupExpr {
        match self {
            GroupExpr::Zero => GroupExpr::Zero,
            GroupExpr::Finite(g) if g.is_trivial() => GroupExpr::Zero,
            GroupExpr::Finite(_) | GroupExpr::Sphere { .. } => self.clone(),
            GroupExpr::DirectSum(children) => {
                let mut flat = Vec::new();
                for c in children {
                    match c.normalize() {
                        GroupExpr::Zero => {}
                        GroupExpr::DirectSum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort();
                match flat.len() {
                    0 => GroupExpr::Zero,
                    1 => flat.pop().expect("one child"),
                    _ => GroupExpr::DirectSum(flat),
                }
            }
            GroupExpr::Pow(inner, c) => match (inner.normalize(), *c) {
                (_, 0) | (GroupExpr::Zero, _) => GroupExpr::Zero,
                (e, 1) => e,
                (GroupExpr::Pow(e, a), b) => GroupExpr::Pow(e, a * b),
                (e, c) => GroupExpr::Pow(Box::new(e), c),
            },
            GroupExpr::SumN(inner) => match inner.normalize() {
                GroupExpr::Zero => GroupExpr::Zero,
                e => GroupExpr::sum_n(e),
            },
            GroupExpr::ProdN(inner) => match inner.normalize() {
                GroupExpr::Zero => GroupExpr::Zero,
                e => GroupExpr::prod_n(e),
            },
        }
    }

    /// Replaces every sphere symbol whose value is known, then normalizes.
    pub fn resolve(&self, table: &SphereGroupTable) -> GroupExpr {
        self.map_spheres(&|n, q| match table.lookup(n, q) {
            Lookup::Known(g) => GroupExpr::Finite(g),
            Lookup::Unknown => GroupExpr::Sphere { n, q },
        })
        .normalize()
    }

    fn map_spheres(&self, f: &dyn Fn(u32, u32) -> GroupExpr) -> GroupExpr {
        match self {
            GroupExpr::Sphere { n, q } => f(*n, *q),
            GroupExpr::Zero | GroupExpr::Finite(_) => self.clone(),
            GroupExpr::DirectSum(cs) => {
                GroupExpr::DirectSum(cs.iter().map(|c| c.map_spheres(f)).collect())
            }
            GroupExpr::Pow(e, c) => GroupExpr::Pow(Box::new(e.map_spheres(f)), *c),
            GroupExpr::SumN(e) => GroupExpr::sum_n(e.map_spheres(f)),
            GroupExpr::ProdN(e) => GroupExpr::prod_n(e.map_spheres(f)),
        }
    }

    /// Sphere symbols still present.
    pub fn unresolved(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        self.collect_spheres(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_spheres(&self, out: &mut Vec<(u32, u32)>) {
        match self {
            GroupExpr::Sphere { n, q } => out.push((*n, *q)),
            GroupExpr::Zero | GroupExpr::Finite(_) => {}
            GroupExpr::DirectSum(cs) => cs.iter().for_each(|c| c.collect_spheres(out)),
            GroupExpr::Pow(e, _) | GroupExpr::SumN(e) | GroupExpr::ProdN(e) => {
                e.collect_spheres(out)
            }
        }
    }

    /// Pushes countable products through finite direct sums:
    /// `PROD_N (A (+) B) = PROD_N A (+) PROD_N B`. Result is normalized.
    pub fn distribute_products(&self) -> GroupExpr {
        fn go(e: &GroupExpr) -> GroupExpr {
            match e {
                GroupExpr::ProdN(inner) => match go(inner) {
                    GroupExpr::DirectSum(cs) => GroupExpr::DirectSum(
                        cs.into_iter().map(|c| go(&GroupExpr::prod_n(c))).collect(),
                    ),
                    other => GroupExpr::prod_n(other),
                },
                GroupExpr::DirectSum(cs) => GroupExpr::DirectSum(cs.iter().map(go).collect()),
                GroupExpr::Pow(inner, c) => GroupExpr::Pow(Box::new(go(inner)), *c),
                GroupExpr::SumN(inner) => GroupExpr::sum_n(go(inner)),
                other => other.clone(),
            }
        }
        go(&self.normalize()).normalize()
    }

    /// Human-readable rendering, e.g. `(Z/2)^N (+) Z^N` or `PROD_N SUM_N Z/2`.
    pub fn render_text(&self) -> String {
        self.text(false)
    }

    /// `nested` asks for parentheses around anything that is not a single
    /// token.
    fn text(&self, nested: bool) -> String {
        let wrap = |s: String, needed: bool| if needed { format!("({s})") } else { s };
        match self {
            GroupExpr::Zero => "0".into(),
            GroupExpr::Finite(g) => wrap(g.to_string(), nested && !g.is_cyclic()),
            GroupExpr::Sphere { n, q } => format!("pi_{n}(S^{q})"),
            GroupExpr::DirectSum(cs) => wrap(
                cs.iter().map(|c| c.text(true)).collect::<Vec<_>>().join(" (+) "),
                nested,
            ),
            GroupExpr::Pow(e, c) => format!("{}^{c}", e.power_base()),
            GroupExpr::ProdN(e) if matches!(**e, GroupExpr::Finite(_) | GroupExpr::Sphere { .. }) => format!("{}^N", e.power_base()),
            GroupExpr::ProdN(e) => format!("PROD_N {}", e.prefix_operand()),
            GroupExpr::SumN(e) => format!("SUM_N {}", e.prefix_operand()),
        }
    }

    /// Prefix operators chain without parentheses: `PROD_N SUM_N Z/2`.
    fn prefix_operand(&self) -> String {
        match self {
            GroupExpr::SumN(_) | GroupExpr::ProdN(_) => self.text(false),
            _ => self.text(true),
        }
    }

    /// Base of `^c` / `^N`: bare `Z` or a sphere symbol, otherwise parenthesized.
    fn power_base(&self) -> String {
        match self {
            GroupExpr::Finite(g) if *g == FGAbelianGroup::integers() => "Z".into(),
            GroupExpr::Sphere { .. } => self.text(false),
            _ => format!("({})", self.text(false)),
        }
    }

    pub fn to_machine(&self) -> MachineExpr {
        let node = |kind: &str| MachineExpr {
            kind: kind.to_string(),
            ..MachineExpr::default()
        };
        match self {
            GroupExpr::Zero => node("zero"),
            GroupExpr::Finite(g) => MachineExpr {
                rank: Some(g.rank),
                torsion: Some(g.torsion.clone()),
                ..node("finite")
            },
            GroupExpr::Sphere { n, q } => MachineExpr {
                n: Some(*n),
                q: Some(*q),
                ..node("sphere")
            },
            GroupExpr::DirectSum(cs) => MachineExpr {
                children: cs.iter().map(GroupExpr::to_machine).collect(),
                ..node("direct_sum")
            },
            GroupExpr::Pow(e, c) => MachineExpr {
                children: vec![e.to_machine()],
                exponent: Some(*c),
                ..node("pow")
            },
            GroupExpr::SumN(e) => MachineExpr {
                children: vec![e.to_machine()],
                ..node("sum_n")
            },
            GroupExpr::ProdN(e) => MachineExpr {
                children: vec![e.to_machine()],
                ..node("prod_n")
            },
        }
    }

    pub fn render_machine(&self) -> String {
        serde_json::to_string(&self.to_machine()).expect("machine expressions serialize")
    }

    pub fn parse_machine(s: &str) -> Result<GroupExpr, GroupError> {
        let m: MachineExpr =
            serde_json::from_str(s).map_err(|e| GroupError::Machine(e.to_string()))?;
        GroupExpr::try_from(&m)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_machine().serialize(serializer)
    }
}

/// JSON shape of a [`GroupExpr`]: `{kind, children, rank, torsion, n, q, exponent}`.
///
/// `kind` is one of `zero`, `finite`, `sphere`, `direct_sum`, `pow`, `sum_n`,
/// `prod_n`; unused fields are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineExpr {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<MachineExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

impl TryFrom<&MachineExpr> for GroupExpr {
    type Error = GroupError;

    fn try_from(m: &MachineExpr) -> Result<Self, Self::Error> {
        let missing = |field: &str| GroupError::Machine(format!("{} needs {field}", m.kind));
        let only_child = || -> Result<GroupExpr, GroupError> {
            match m.children.as_slice() {
                [c] => GroupExpr::try_from(c),
                _ => Err(GroupError::Machine(format!("{} takes one child", m.kind))),
            }
        };
        Ok(match m.kind.as_str() {
            "zero" => GroupExpr::Zero,
            "finite" => {
                let rank = m.rank.ok_or_else(|| missing("rank"))?;
                let torsion = m.torsion.clone().unwrap_or_default();
                GroupExpr::Finite(FGAbelianGroup::from_parts(rank, &torsion))
            }
            "sphere" => GroupExpr::Sphere {
                n: m.n.ok_or_else(|| missing("n"))?,
                q: m.q.ok_or_else(|| missing("q"))?,
            },
            "direct_sum" => GroupExpr::DirectSum(
                m.children
                    .iter()
                    .map(GroupExpr::try_from)
                    .collect::<Result<_, _>>()?,
            ),
            "pow" => GroupExpr::pow(only_child()?, m.exponent.ok_or_else(|| missing("exponent"))?),
            "sum_n" => GroupExpr::sum_n(only_child()?),
            "prod_n" => GroupExpr::prod_n(only_child()?),
            other => return Err(GroupError::Machine(format!("unknown kind {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroupExpr {
        GroupExpr::Finite(FGAbelianGroup::integers())
    }

    fn z2() -> GroupExpr {
        GroupExpr::Finite(FGAbelianGroup::cyclic(2))
    }

    #[test]
    fn invariant_factors() {
        let g = FGAbelianGroup::from_parts(1, &[2, 3, 4]);
        assert_eq!(g.torsion(), &[2, 12]);
        assert_eq!(FGAbelianGroup::from_parts(0, &[6, 10]).torsion(), &[2, 30]);
        assert_eq!(FGAbelianGroup::from_parts(0, &[1]).torsion(), &[] as &[u64]);
    }

    #[test]
    fn parse_groups() {
        let g: FGAbelianGroup = "Z + Z/12".parse().unwrap();
        assert_eq!((g.rank(), g.torsion()), (1, &[12u64][..]));
        let g: FGAbelianGroup = "Z^2 + (Z/2)^3".parse().unwrap();
        assert_eq!((g.rank(), g.torsion()), (2, &[2u64, 2, 2][..]));
        assert!("0".parse::<FGAbelianGroup>().unwrap().is_trivial());
        for bad in ["", "Z/1", "Z^0", "Q", "Z/-2", "(Z/2)^", "Z/+3"] {
            assert!(bad.parse::<FGAbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn normalize_examples() {
        let e = GroupExpr::DirectSum(vec![GroupExpr::Zero, z()]);
        assert_eq!(e.normalize(), z());
        let e = GroupExpr::DirectSum(vec![
            GroupExpr::sum_n(z2()),
            GroupExpr::Zero,
            GroupExpr::prod_n(z()),
        ]);
        match e.normalize() {
            GroupExpr::DirectSum(cs) => assert_eq!(cs.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(GroupExpr::pow(z(), 1).normalize(), z());
    }

    #[test]
    fn element_arithmetic() {
        let z2g = FGAbelianGroup::cyclic(2);
        let one = GroupElement::cyclic(&z2g, 1).unwrap();
        assert!(one.add(&one).unwrap().is_zero());
        let g = FGAbelianGroup::from_parts(1, &[12]);
        let x = GroupElement::new(&g, &[3, 7]).unwrap();
        let y = GroupElement::new(&g, &[-1, 8]).unwrap();
        assert_eq!(x.add(&y).unwrap().coords(), [2, 3]);
        let z5 = FGAbelianGroup::cyclic(5);
        assert_eq!(GroupElement::cyclic(&z5, 2).unwrap().negate().coords(), [3]);
        let err = one.add(&x).unwrap_err();
        assert!(matches!(err, GroupError::AmbientMismatch { .. }));
        assert!(GroupElement::new(&g, &[1]).is_err());
    }

    #[test]
    fn render_text_shapes() {
        let e = GroupExpr::DirectSum(vec![GroupExpr::prod_n(z()), GroupExpr::prod_n(z())]);
        assert_eq!(e.normalize().render_text(), "Z^N (+) Z^N");
        let e = GroupExpr::DirectSum(vec![
            GroupExpr::prod_n(z()),
            GroupExpr::prod_n(z2()),
            GroupExpr::prod_n(z2()),
        ]);
        assert_eq!(e.normalize().render_text(), "(Z/2)^N (+) (Z/2)^N (+) Z^N");
        let e = GroupExpr::prod_n(GroupExpr::sum_n(z2()));
        assert_eq!(e.render_text(), "PROD_N SUM_N Z/2");
        let g: FGAbelianGroup = "Z + Z/12".parse().unwrap();
        assert_eq!(GroupExpr::prod_n(GroupExpr::Finite(g)).render_text(), "(Z (+) Z/12)^N");
        assert_eq!(GroupExpr::prod_n(GroupExpr::sphere(9, 2)).render_text(), "pi_9(S^2)^N");
        assert_eq!(GroupExpr::pow(z2(), 3).render_text(), "(Z/2)^3");
        assert_eq!(GroupExpr::Zero.render_text(), "0");
    }

    #[test]
    fn distribute_regroups_products() {
        let direct = GroupExpr::prod_n(GroupExpr::DirectSum(vec![
            GroupExpr::sum_n(z()),
            GroupExpr::sum_n(z2()),
        ]));
        let split = GroupExpr::DirectSum(vec![
            GroupExpr::prod_n(GroupExpr::sum_n(z2())),
            GroupExpr::prod_n(GroupExpr::sum_n(z())),
        ]);
        assert_eq!(direct.distribute_products(), split.normalize());
    }

    #[test]
    fn machine_roundtrip_example() {
        let e = GroupExpr::DirectSum(vec![
            GroupExpr::prod_n(GroupExpr::sphere(9, 2)),
            GroupExpr::pow(z2(), 4),
        ])
        .normalize();
        let s = e.render_machine();
        assert_eq!(GroupExpr::parse_machine(&s).unwrap().normalize(), e);
        assert!(GroupExpr::parse_machine(r#"{"kind":"pow","children":[]}"#).is_err());
    }
}
