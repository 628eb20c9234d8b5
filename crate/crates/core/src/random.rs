//! Seeded generators for property runs. Same seed, same elements.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elements::{CoherentElement, ElementError};
use crate::groups::{FGAbelianGroup, GroupElement};
use crate::hall::{self, GradingSequence, HallWord};
use crate::infinite_sum::{self, EpsilonOracle, Families};
use crate::sphere_table::SphereGroupTable;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse `eps` with at most `max_entries` entries, `i < j <= max_index`,
/// values in `[-bound, bound]`.
pub fn epsilon(rng: &mut SeededRng, max_entries: usize, max_index: u32, bound: i64) -> EpsilonOracle {
    let count = rng.gen_range(0..=max_entries);
    let entries: Vec<(u32, u32, i64)> = (0..count)
        .map(|_| {
            let j = rng.gen_range(2..=max_index);
            let i = rng.gen_range(1..j);
            (i, j, rng.gen_range(-bound..=bound))
        })
        .collect();
    EpsilonOracle::sparse(entries).expect("i < j by construction")
}

pub fn group_element(rng: &mut SeededRng, ambient: &FGAbelianGroup, bound: i64) -> GroupElement {
    let coords: Vec<i64> = (0..ambient.arity()).map(|_| rng.gen_range(-bound..=bound)).collect();
    GroupElement::new(ambient, &coords).expect("arity matches")
}

/// Words of `H_{n,max_letter}` for `E_m` whose coefficient group is known
/// and nontrivial.
#[derive(Debug, Clone)]
pub struct WordPool {
    pub n: u32,
    pub m: u32,
    words: Vec<(HallWord, FGAbelianGroup)>,
}

impl WordPool {
    pub fn new(n: u32, m: u32, max_letter: u32, table: &SphereGroupTable) -> Result<Self, ElementError> {
        let grading = GradingSequence::earring(m)?;
        let words = if n <= grading.first() {
            Vec::new()
        } else {
            hall::dimension_truncation(max_letter, n, &grading)?
        };
        let words = words
            .into_iter()
            .filter_map(|w| {
                let q = infinite_sum::sphere_dimension(&w, &grading);
                let g = table.lookup(n, q).known()?;
                (!g.is_trivial()).then_some((w, g))
            })
            .collect();
        Ok(Self { n, m, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn pick<'a>(
        &'a self,
        rng: &mut SeededRng,
        count: usize,
        keep: impl Fn(&HallWord) -> bool,
    ) -> Vec<&'a (HallWord, FGAbelianGroup)> {
        let eligible: Vec<&(HallWord, FGAbelianGroup)> = self.words.iter().filter(|(w, _)| keep(w)).collect();
        eligible.choose_multiple(rng, count.min(eligible.len())).copied().collect()
    }

    pub fn finite_support(
        &self,
        rng: &mut SeededRng,
        max_terms: usize,
        table: &SphereGroupTable,
    ) -> Result<CoherentElement, ElementError> {
        let count = rng.gen_range(0..=max_terms);
        let entries: BTreeMap<HallWord, GroupElement> = self
            .pick(rng, count, |_| true)
            .into_iter()
            .map(|(w, g)| (w.clone(), group_element(rng, g, 3)))
            .collect();
        CoherentElement::finite_support(self.n, self.m, entries, table)
    }

    /// Families over words of weight `2..=max_weight`.
    pub fn families(&self, rng: &mut SeededRng, max_terms: usize, max_weight: usize) -> Families {
        let count = rng.gen_range(0..=max_terms);
        let mut out = Families::new();
        for (w, g) in self.pick(rng, count, |w| (2..=max_weight).contains(&w.weight())) {
            out.entry(w.min_letter())
                .or_default()
                .insert(w.clone(), group_element(rng, g, 3));
        }
        out
    }

    pub fn gtuple(
        &self,
        rng: &mut SeededRng,
        max_terms: usize,
        max_weight: usize,
        table: &SphereGroupTable,
    ) -> Result<CoherentElement, ElementError> {
        let families = self.families(rng, max_terms, max_weight);
        CoherentElement::gtuple(self.n, self.m, families, table)
    }

    /// One element of a randomly chosen kind. Weight-2 families only occur
    /// when `n = 2m - 1`.
    pub fn element(&self, rng: &mut SeededRng, table: &SphereGroupTable) -> Result<CoherentElement, ElementError> {
        let edge_degree = self.n == 2 * self.m - 1;
        match rng.gen_range(0..3) {
            0 => self.finite_support(rng, 6, table),
            1 if edge_degree => {
                let eps = if rng.gen_bool(0.2) {
                    EpsilonOracle::band(rng.gen_range(1..=3), rng.gen_range(-3..=3))
                } else {
                    epsilon(rng, 10, 8, 3)
                };
                CoherentElement::weight2_family(self.n, self.m, eps)
            }
            _ => self.gtuple(rng, 6, usize::MAX, table),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let t = SphereGroupTable::seed();
        let pool = WordPool::new(4, 2, 4, &t).unwrap();
        let draw = |seed| {
            let mut rng = seeded(seed);
            (0..5).map(|_| pool.element(&mut rng, &t).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_eq!(epsilon(&mut seeded(3), 10, 6, 3), epsilon(&mut seeded(3), 10, 6, 3));
    }

    #[test]
    fn pool_contents() {
        let t = SphereGroupTable::seed();
        // n = 4, m = 2: a_i over Z/2, [a_i,a_j] over Z/2, weight 3 over Z
        let pool = WordPool::new(4, 2, 2, &t).unwrap();
        assert_eq!(pool.len(), 5);
        // pi_5(S^2) is not seeded, so weight-one words drop out
        let pool = WordPool::new(5, 2, 2, &t).unwrap();
        assert!(pool.words.iter().all(|(w, _)| w.weight() > 1));
        assert!(WordPool::new(2, 3, 3, &t).unwrap().is_empty());
    }
}
