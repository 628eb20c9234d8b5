//! Integer-linear algebra of Whitehead bracket monomials.
//!
//! Generators `a_i` carry a degree `d_i = r_i + 1 >= 2` and a bracket has
//! degree `deg x + deg y - 1`. The rewriting uses exactly three relations:
//! bilinearity with `[x, 0] = 0`, graded symmetry `[x, y] = (-1)^{pq} [y, x]`,
//! and the graded Jacobi identity
//! `(-1)^{pr}[[x,y],z] + (-1)^{pq}[[y,z],x] + (-1)^{rq}[[z,x],y] = 0`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hall::{GradingSequence, HallWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhiteheadError {
    #[error("generator a{letter} has degree {degree}; degrees must be at least 2")]
    Degree { letter: u32, degree: u32 },
    #[error("graded swap needs a bracket, got generator {0}")]
    NotBracket(String),
    #[error("monomial {0} has weight above 3; only Hall-shaped words are handled there")]
    WeightTooLarge(String),
    #[error("letter a{letter} exceeds the alphabet of {k} letters")]
    LetterOutOfRange { letter: u32, k: u32 },
    #[error("letter a{letter} appears with degrees {first} and {second}")]
    InconsistentDegree { letter: u32, first: u32, second: u32 },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub(crate) fn sign(exponent: u64) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A bracket tree over graded generators.
///
/// The derived order is used only to lay out formal sums deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Gen { letter: u32, degree: u32 },
    Bracket(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn generator(letter: u32, degree: u32) -> Result<Self, WhiteheadError> {
        if degree < 2 {
            return Err(WhiteheadError::Degree { letter, degree });
        }
        Ok(Monomial::Gen { letter, degree })
    }

    pub fn bracket(x: Monomial, y: Monomial) -> Self {
        Monomial::Bracket(Box::new(x), Box::new(y))
    }

    /// Degree of the homotopy group the monomial lives in.
    pub fn degree(&self) -> u32 {
        match self {
            Monomial::Gen { degree, .. } => *degree,
            Monomial::Bracket(x, y) => x.degree() + y.degree() - 1,
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Monomial::Gen { .. } => 1,
            Monomial::Bracket(x, y) => x.weight() + y.weight(),
        }
    }

    pub fn contains_letter(&self, letter: u32) -> bool {
        match self {
            Monomial::Gen { letter: l, .. } => *l == letter,
            Monomial::Bracket(x, y) => x.contains_letter(letter) || y.contains_letter(letter),
        }
    }

    fn for_each_generator(&self, f: &mut dyn FnMut(u32, u32)) {
        match self {
            Monomial::Gen { letter, degree } => f(*letter, *degree),
            Monomial::Bracket(x, y) => {
                x.for_each_generator(f);
                y.for_each_generator(f);
            }
        }
    }

    /// The monomial of a Hall word, with generator degrees `r_i + 1`.
    pub fn from_hall_word(w: &HallWord, grading: &GradingSequence) -> Self {
        match w.children() {
            None => {
                let i = w.as_letter().expect("leaf");
                Monomial::Gen {
                    letter: i,
                    degree: grading.r(i) + 1,
                }
            }
            Some((x, y)) => Monomial::bracket(
                Monomial::from_hall_word(x, grading),
                Monomial::from_hall_word(y, grading),
            ),
        }
    }

    /// Forgets degrees.
    pub fn to_word(&self) -> HallWord {
        match self {
            Monomial::Gen { letter, .. } => HallWord::letter(*letter),
            Monomial::Bracket(x, y) => HallWord::bracket(x.to_word(), y.to_word()),
        }
    }

    fn letter(&self) -> Option<u32> {
        match self {
            Monomial::Gen { letter, .. } => Some(*letter),
            Monomial::Bracket(..) => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Gen { letter, .. } => write!(f, "a{letter}"),
            Monomial::Bracket(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

/// Finitely supported integer combination of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Monomial, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial, c: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> FormalSum {
        let mut out = FormalSum::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// Per-letter degrees, checking that each letter is used with one degree.
    pub fn letter_degrees(&self) -> Result<BTreeMap<u32, u32>, WhiteheadError> {
        let mut degrees: BTreeMap<u32, u32> = BTreeMap::new();
        let mut clash = None;
        for m in self.terms.keys() {
            m.for_each_generator(&mut |letter, degree| {
                let first = *degrees.entry(letter).or_insert(degree);
                if first != degree && clash.is_none() {
                    clash = Some(WhiteheadError::InconsistentDegree {
                        letter,
                        first,
                        second: degree,
                    });
                }
            });
        }
        match clash {
            Some(e) => Err(e),
            None => Ok(degrees),
        }
    }
}

impl FromIterator<(Monomial, i64)> for FormalSum {
    fn from_iter<T: IntoIterator<Item = (Monomial, i64)>>(iter: T) -> Self {
        let mut s = FormalSum::zero();
        for (m, c) in iter {
            s.add_term(m, c);
        }
        s
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = (*c < 0, c.unsigned_abs());
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs != 1 {
                write!(f, "{abs}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Bracket expression whose leaves may be sums, multiples or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieExpr {
    Zero,
    Gen { letter: u32, degree: u32 },
    Scale(i64, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

impl LieExpr {
    pub fn gen(letter: u32, degree: u32) -> Self {
        LieExpr::Gen { letter, degree }
    }

    pub fn scale(c: i64, e: LieExpr) -> Self {
        LieExpr::Scale(c, Box::new(e))
    }

    pub fn bracket(x: LieExpr, y: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(x), Box::new(y))
    }

    /// Parses `a<i>`, `[x,y]`, `3*x`, `x + y`, `x - y`, `-x`, `0` and
    /// parentheses. Generator degrees come from `grading` (`d_i = r_i + 1`).
    pub fn parse(text: &str, grading: &GradingSequence) -> Result<LieExpr, WhiteheadError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            grading,
        };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    grading: &'a GradingSequence,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> WhiteheadError {
        WhiteheadError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), WhiteheadError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64, WhiteheadError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn sum(&mut self) -> Result<LieExpr, WhiteheadError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(LieExpr::scale(-1, self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            LieExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<LieExpr, WhiteheadError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(LieExpr::scale(-1, self.term()?));
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.number()?;
            let c = i64::try_from(c).map_err(|_| self.error("coefficient too large"))?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                return Ok(LieExpr::scale(c, self.atom()?));
            }
            if c == 0 {
                return Ok(LieExpr::Zero);
            }
            return Err(self.error("a bare integer must be 0 or followed by '*'"));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<LieExpr, WhiteheadError> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let i = self.number()?;
                let i = u32::try_from(i)
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| self.error("letters are a1, a2, ..."))?;
                Ok(LieExpr::gen(i, self.grading.r(i) + 1))
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.sum()?;
                self.expect(b',')?;
                let y = self.sum()?;
                self.expect(b']')?;
                Ok(LieExpr::bracket(x, y))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(LieExpr::Zero)
            }
            _ => Err(self.error("expected a letter, bracket or 0")),
        }
    }
}

/// Fully multilinear expansion. Terms with a zero leaf vanish.
pub fn expand(e: &LieExpr) -> Result<FormalSum, WhiteheadError> {
    Ok(match e {
        LieExpr::Zero => FormalSum::zero(),
        LieExpr::Gen { letter, degree } => {
            FormalSum::monomial(Monomial::generator(*letter, *degree)?)
        }
        LieExpr::Scale(c, inner) => expand(inner)?.scale(*c),
        LieExpr::Sum(parts) => {
            let mut out = FormalSum::zero();
            for p in parts {
                out = out.add(&expand(p)?);
            }
            out
        }
        LieExpr::Bracket(x, y) => {
            let (xs, ys) = (expand(x)?, expand(y)?);
            let mut out = FormalSum::zero();
            for (mx, cx) in xs.iter() {
                for (my, cy) in ys.iter() {
                    out.add_term(Monomial::bracket(mx.clone(), my.clone()), cx * cy);
                }
            }
            out
        }
    })
}

/// Replacing the letter `a_i` of `w` by `0`: the word vanishes when it uses `a_i`.
pub fn substitute_zero(w: &HallWord, letter: u32, grading: &GradingSequence) -> FormalSum {
    if w.contains_letter(letter) {
        FormalSum::zero()
    } else {
        FormalSum::monomial(Monomial::from_hall_word(w, grading))
    }
}

/// `[x, y] = (-1)^{deg x * deg y} [y, x]`.
pub fn graded_swap(m: &Monomial) -> Result<(i64, Monomial), WhiteheadError> {
    match m {
        Monomial::Gen { .. } => Err(WhiteheadError::NotBracket(m.to_string())),
        Monomial::Bracket(x, y) => {
            let s = sign(u64::from(x.degree()) * u64::from(y.degree()));
            Ok((s, Monomial::Bracket(y.clone(), x.clone())))
        }
    }
}

/// Output of [`hall_normalize`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HallReduction {
    /// Monomials that are Hall words.
    pub hall: FormalSum,
    /// Monomials containing a Whitehead square `[a_i, a_i]`.
    pub residual: FormalSum,
}

impl HallReduction {
    /// Hall part indexed by Hall word.
    pub fn hall_coordinates(&self) -> BTreeMap<HallWord, i64> {
        self.hall.iter().map(|(m, c)| (m.to_word(), c)).collect()
    }

    /// `hall + residual`, equal to the input modulo the three relations.
    pub fn recombine(&self) -> FormalSum {
        self.hall.add(&self.residual)
    }
}

enum Target {
    Hall(Monomial),
    Residual(Monomial),
}

/// Rewrites a formal sum of weight at most 3 into Hall coordinates plus a
/// residual of unreducible Whitehead-square terms.
pub fn hall_normalize(s: &FormalSum, k: u32) -> Result<HallReduction, WhiteheadError> {
    s.letter_degrees()?;
    let mut out = HallReduction::default();
    for (m, c) in s.iter() {
        if m.weight() > 3 {
            return Err(WhiteheadError::WeightTooLarge(m.to_string()));
        }
        let mut bad = None;
        m.for_each_generator(&mut |letter, degree| {
            if letter > k {
                bad = Some(WhiteheadError::LetterOutOfRange { letter, k });
            } else if degree < 2 {
                bad = Some(WhiteheadError::Degree { letter, degree });
            }
        });
        if let Some(e) = bad {
            return Err(e);
        }
        for (target, coeff) in reduce(m) {
            match target {
                Target::Hall(h) => out.hall.add_term(h, c * coeff),
                Target::Residual(r) => out.residual.add_term(r, c * coeff),
            }
        }
    }
    Ok(out)
}

fn reduce(m: &Monomial) -> Vec<(Target, i64)> {
    match m {
        Monomial::Gen { .. } => vec![(Target::Hall(m.clone()), 1)],
        Monomial::Bracket(x, y) => match (x.letter(), y.letter()) {
            (Some(_), Some(_)) => {
                let (s, pair) = order_pair(x, y);
                match pair {
                    Some(p) => vec![(Target::Hall(p), s)],
                    None => vec![(Target::Residual(m.clone()), 1)],
                }
            }
            (Some(_), None) => reduce_leaf_first(x, y),
            (None, Some(_)) => {
                let (s, swapped) = graded_swap(m).expect("bracket");
                let Monomial::Bracket(u, inner) = swapped else {
                    unreachable!()
                };
                reduce_leaf_first(&u, &inner)
                    .into_iter()
                    .map(|(t, c)| (t, s * c))
                    .collect()
            }
            (None, None) => unreachable!("weight 4 rejected earlier"),
        },
    }
}

/// `[x, y]` on two generators as `sign * [a_lo, a_hi]`, or `None` for a
/// Whitehead square.
fn order_pair(x: &Monomial, y: &Monomial) -> (i64, Option<Monomial>) {
    let (lx, ly) = (x.letter().expect("leaf"), y.letter().expect("leaf"));
    if lx == ly {
        (1, None)
    } else if lx < ly {
        (1, Some(Monomial::bracket(x.clone(), y.clone())))
    } else {
        let s = sign(u64::from(x.degree()) * u64::from(y.degree()));
        (s, Some(Monomial::bracket(y.clone(), x.clone())))
    }
}

/// `[u, [v, w]]` with `u`, `v`, `w` generators.
fn reduce_leaf_first(u: &Monomial, inner: &Monomial) -> Vec<(Target, i64)> {
    let Monomial::Bracket(v, w) = inner else {
        unreachable!("weight-3 inner bracket")
    };
    let (s, pair) = order_pair(v, w);
    let Some(pair) = pair else {
        return vec![(Target::Residual(Monomial::bracket(u.clone(), inner.clone())), 1)];
    };
    let Monomial::Bracket(a, b) = &pair else {
        unreachable!()
    };
    let (lu, la) = (u.letter().expect("leaf"), a.letter().expect("leaf"));
    if la <= lu {
        return vec![(Target::Hall(Monomial::bracket(u.clone(), pair.clone())), s)];
    }
    // u < a < b: Jacobi with (alpha, beta, gamma) = (a, b, u), degrees (p, q, r).
    let (p, q, r) = (
        u64::from(a.degree()),
        u64::from(b.degree()),
        u64::from(u.degree()),
    );
    // [u,[a,b]] = (-1)^{(p+q-1) r} [[a,b],u]
    let top = sign((p + q - 1) * r);
    // [[a,b],u] = -(-1)^{pr} ( (-1)^{pq}[[b,u],a] + (-1)^{rq}[[u,a],b] )
    // [[b,u],a] = (-1)^{(q+r-1)p} (-1)^{qr} [a,[u,b]]
    // [[u,a],b] = (-1)^{(r+p-1)q} [b,[u,a]]
    let c_a = -sign(p * r) * sign(p * q) * sign((q + r - 1) * p) * sign(q * r);
    let c_b = -sign(p * r) * sign(r * q) * sign((r + p - 1) * q);
    let au_b = Monomial::bracket(
        (**a).clone(),
        Monomial::bracket(u.clone(), (**b).clone()),
    );
    let bu_a = Monomial::bracket(
        (**b).clone(),
        Monomial::bracket(u.clone(), (**a).clone()),
    );
    vec![
        (Target::Hall(au_b), s * top * c_a),
        (Target::Hall(bu_a), s * top * c_b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> GradingSequence {
        GradingSequence::constant(1).unwrap()
    }

    fn parse(s: &str) -> FormalSum {
        expand(&LieExpr::parse(s, &g1()).unwrap()).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(parse("[a1, 2*a2 + a3]").to_string(), "2*[a1,a2] + [a1,a3]");
        assert!(parse("[a1, 0]").is_zero());
        assert_eq!(parse("[3*a1, -a2]").to_string(), "-3*[a1,a2]");
        assert!(parse("[a1, a2 - a2]").is_zero());
    }

    #[test]
    fn parse_errors() {
        for bad in ["[a1,a2", "a0", "7", "[a1;a2]", "a1 a2", ""] {
            assert!(LieExpr::parse(bad, &g1()).is_err(), "{bad}");
        }
    }

    #[test]
    fn substitute_zero_examples() {
        let w: HallWord = "[a1,[a1,a2]]".parse().unwrap();
        assert!(substitute_zero(&w, 1, &g1()).is_zero());
        let w: HallWord = "[a1,a2]".parse().unwrap();
        assert_eq!(substitute_zero(&w, 3, &g1()).to_string(), "[a1,a2]");
        let w: HallWord = "a2".parse().unwrap();
        assert!(substitute_zero(&w, 2, &g1()).is_zero());
    }

    #[test]
    fn graded_swap_signs() {
        let m = |i, d| Monomial::generator(i, d).unwrap();
        let (s, swapped) = graded_swap(&Monomial::bracket(m(2, 2), m(1, 2))).unwrap();
        assert_eq!((s, swapped.to_string()), (1, "[a1,a2]".to_string()));
        let (s, _) = graded_swap(&Monomial::bracket(m(2, 3), m(1, 3))).unwrap();
        assert_eq!(s, -1);
        let (s, _) = graded_swap(&Monomial::bracket(m(1, 2), m(2, 3))).unwrap();
        assert_eq!(s, 1);
        assert!(graded_swap(&m(1, 2)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let r = hall_normalize(&parse("[a2,a1]"), 2).unwrap();
        assert_eq!(r.hall.to_string(), "[a1,a2]");
        assert!(r.residual.is_zero());

        let r = hall_normalize(&parse("[a1,[a2,a3]]"), 3).unwrap();
        let coords = r.hall_coordinates();
        let w = |s: &str| s.parse::<HallWord>().unwrap();
        assert_eq!(coords.len(), 2);
        assert_eq!(coords[&w("[a2,[a1,a3]]")], -1);
        assert_eq!(coords[&w("[a3,[a1,a2]]")], -1);
        assert!(r.residual.is_zero());

        let r = hall_normalize(&parse("[a1,a1]"), 1).unwrap();
        assert!(r.hall.is_zero());
        assert_eq!(r.residual.to_string(), "[a1,a1]");
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(
            hall_normalize(&parse("[a1,[a1,[a1,a2]]]"), 2),
            Err(WhiteheadError::WeightTooLarge(_))
        ));
        assert!(matches!(
            hall_normalize(&parse("[a1,a3]"), 2),
            Err(WhiteheadError::LetterOutOfRange { letter: 3, k: 2 })
        ));
        let mixed = FormalSum::monomial(Monomial::generator(1, 2).unwrap())
            .add(&FormalSum::monomial(Monomial::generator(1, 3).unwrap()));
        assert!(matches!(
            hall_normalize(&mixed, 1),
            Err(WhiteheadError::InconsistentDegree { .. })
        ));
    }

    #[test]
    fn normalize_is_idempotent_on_output() {
        let r = hall_normalize(&parse("[[a2,a2],a1] + [a3,[a1,a2]] + [a1,[a3,a2]]"), 3).unwrap();
        let again = hall_normalize(&r.recombine(), 3).unwrap();
        assert_eq!(again, r);
    }
}
