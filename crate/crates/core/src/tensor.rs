//! Independent check for the Whitehead rewriting: embed bracket monomials
//! into the free associative ring on the generators.
//!
//! A generator of Whitehead degree `p` is given tensor degree `p - 1`, and
//!
//! ```text
//! [x, y]  |->  (-1)^p ( x y - (-1)^{(p-1)(q-1)} y x ),   p = deg x, q = deg y.
//! ```
//!
//! Under this map graded symmetry `[x,y] = (-1)^{pq}[y,x]` and the graded
//! Jacobi identity hold identically, so sums that agree modulo those relations
//! have equal images. The converse fails only on 2-torsion phenomena such as
//! `[a, a]` for odd `p`, which the rewriting never touches.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::whitehead::{sign, FormalSum, Monomial};

/// Largest monomial weight the oracle accepts.
pub const MAX_WEIGHT: usize = 4;
/// Largest number of distinct letters the oracle accepts.
pub const MAX_LETTERS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tensor oracle handles weight <= {MAX_WEIGHT}; got {0}")]
    Weight(usize),
    #[error("tensor oracle handles <= {MAX_LETTERS} distinct letters; got {0}")]
    Letters(usize),
}

/// Integer combination of words in the generators.
pub type TensorSum = BTreeMap<Vec<u32>, i64>;

fn accumulate(out: &mut TensorSum, word: Vec<u32>, c: i64) {
    if c == 0 {
        return;
    }
    let v = out.entry(word.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        out.remove(&word);
    }
}

fn embed(m: &Monomial) -> TensorSum {
    match m {
        Monomial::Gen { letter, .. } => BTreeMap::from([(vec![*letter], 1)]),
        Monomial::Bracket(x, y) => {
            let (p, q) = (u64::from(x.degree()), u64::from(y.degree()));
            let pre = sign(p);
            let twist = sign((p - 1) * (q - 1));
            let (ex, ey) = (embed(x), embed(y));
            let mut out = TensorSum::new();
            for (wx, cx) in &ex {
                for (wy, cy) in &ey {
                    let xy: Vec<u32> = wx.iter().chain(wy).copied().collect();
                    let yx: Vec<u32> = wy.iter().chain(wx).copied().collect();
                    accumulate(&mut out, xy, pre * cx * cy);
                    accumulate(&mut out, yx, -pre * twist * cx * cy);
                }
            }
            out
        }
    }
}

/// Image of a formal sum in the free associative ring.
pub fn tensor_oracle(s: &FormalSum) -> Result<TensorSum, OracleError> {
    let mut letters = std::collections::BTreeSet::new();
    for (m, _) in s.iter() {
        if m.weight() > MAX_WEIGHT {
            return Err(OracleError::Weight(m.weight()));
        }
        collect_letters(m, &mut letters);
    }
    if letters.len() > MAX_LETTERS {
        return Err(OracleError::Letters(letters.len()));
    }
    let mut out = TensorSum::new();
    for (m, c) in s.iter() {
        for (w, v) in embed(m) {
            accumulate(&mut out, w, c * v);
        }
    }
    Ok(out)
}

fn collect_letters(m: &Monomial, out: &mut std::collections::BTreeSet<u32>) {
    match m {
        Monomial::Gen { letter, .. } => {
            out.insert(*letter);
        }
        Monomial::Bracket(x, y) => {
            collect_letters(x, out);
            collect_letters(y, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(i: u32, d: u32) -> Monomial {
        Monomial::generator(i, d).unwrap()
    }

    fn br(x: Monomial, y: Monomial) -> Monomial {
        Monomial::bracket(x, y)
    }

    #[test]
    fn degree_two_commutator() {
        // p = q = 2: (-1)^2 (a1 a2 - (-1)^1 a2 a1) = a1 a2 + a2 a1
        let t = tensor_oracle(&FormalSum::monomial(br(gen(1, 2), gen(2, 2)))).unwrap();
        assert_eq!(t, BTreeMap::from([(vec![1, 2], 1), (vec![2, 1], 1)]));
    }

    #[test]
    fn graded_symmetry_holds() {
        for p in 2..=4 {
            for q in 2..=4 {
                let xy = FormalSum::monomial(br(gen(1, p), gen(2, q)));
                let yx = FormalSum::term(br(gen(2, q), gen(1, p)), sign(u64::from(p * q)));
                assert_eq!(tensor_oracle(&xy).unwrap(), tensor_oracle(&yx).unwrap());
            }
        }
    }

    #[test]
    fn jacobi_vanishes() {
        for p in 2..=4u32 {
            for q in 2..=4u32 {
                for r in 2..=4u32 {
                    let (a, b, c) = (gen(1, p), gen(2, q), gen(3, r));
                    let s: FormalSum = [
                        (br(br(a.clone(), b.clone()), c.clone()), sign(u64::from(p * r))),
                        (br(br(b.clone(), c.clone()), a.clone()), sign(u64::from(p * q))),
                        (br(br(c, a), b), sign(u64::from(r * q))),
                    ]
                    .into_iter()
                    .collect();
                    assert!(tensor_oracle(&s).unwrap().is_empty(), "{p} {q} {r}");
                }
            }
        }
    }

    #[test]
    fn limits() {
        let w5 = br(gen(1, 2), br(gen(1, 2), br(gen(1, 2), br(gen(1, 2), gen(2, 2)))));
        assert_eq!(tensor_oracle(&FormalSum::monomial(w5)), Err(OracleError::Weight(5)));
        let s = FormalSum::monomial(br(gen(1, 2), br(gen(2, 2), br(gen(3, 2), gen(4, 2)))));
        assert_eq!(tensor_oracle(&s), Err(OracleError::Letters(4)));
        assert!(tensor_oracle(&FormalSum::zero()).unwrap().is_empty());
    }
}
