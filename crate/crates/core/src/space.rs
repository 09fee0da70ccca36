//! Mixed-radix search spaces built from per-dimension level sets.
//!
//! States are enumerated most-significant dimension first, so index 0 is the
//! all-minimum tuple and index `N - 1` the all-maximum tuple.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered, strictly increasing, nonempty list of admissible values for one
/// coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LevelSet {
    values: Vec<f64>,
}

impl LevelSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidLevels("level set is empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidLevels(format!("non-finite level {bad}")));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLevels(format!(
                "levels must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(LevelSet { values })
    }

    /// `count` equally spaced levels from `min` to `max` inclusive.
    pub fn equidistant(min: f64, max: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidLevels("count must be at least 1".into()));
        }
        if !(min <= max) {
            return Err(Error::InvalidLevels(format!("min {min} exceeds max {max}")));
        }
        if count == 1 {
            if min != max {
                return Err(Error::InvalidLevels(
                    "a single level requires min == max".into(),
                ));
            }
            return Self::new(vec![min]);
        }
        let last = (count - 1) as f64;
        let values = (0..count)
            .map(|i| min + (max - min) * i as f64 / last)
            .collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.values.get(k).copied()
    }

    /// Position of the level closest to `value`.
    pub fn nearest(&self, value: f64) -> usize {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if (v - value).abs() < (self.values[best] - value).abs() {
                best = k;
            }
        }
        best
    }
}

impl TryFrom<Vec<f64>> for LevelSet {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        LevelSet::new(values)
    }
}

impl From<LevelSet> for Vec<f64> {
    fn from(levels: LevelSet) -> Self {
        levels.values
    }
}

/// Cartesian product of level sets with a bijective integer indexing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LevelSet>", into = "Vec<LevelSet>")]
pub struct MixedRadixSpace {
    dims: Vec<LevelSet>,
    cardinality: u64,
}

impl MixedRadixSpace {
    pub fn new(dims: Vec<LevelSet>) -> Result<Self> {
        let cardinality = dims
            .iter()
            .try_fold(1u64, |acc, d| acc.checked_mul(d.len() as u64))
            .ok_or(Error::CardinalityOverflow)?;
        Ok(MixedRadixSpace { dims, cardinality })
    }

    /// One equidistant dimension per `(min, max, count)` triple.
    pub fn equidistant(specs: &[(f64, f64, usize)]) -> Result<Self> {
        let dims = specs
            .iter()
            .map(|&(min, max, count)| LevelSet::equidistant(min, max, count))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    pub fn dims(&self) -> &[LevelSet] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn radices(&self) -> Vec<usize> {
        self.dims.iter().map(LevelSet::len).collect()
    }

    fn check(&self, index: u64) -> Result<()> {
        if index >= self.cardinality {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.cardinality,
            });
        }
        Ok(())
    }

    pub fn index_to_tuple(&self, index: u64) -> Result<Vec<usize>> {
        self.check(index)?;
        let mut digits = vec![0usize; self.dims.len()];
        let mut rest = index;
        for (digit, dim) in digits.iter_mut().zip(&self.dims).rev() {
            let radix = dim.len() as u64;
            *digit = (rest % radix) as usize;
            rest /= radix;
        }
        Ok(digits)
    }

    pub fn tuple_to_index(&self, tuple: &[usize]) -> Result<u64> {
        if tuple.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                expected: self.dims.len(),
                actual: tuple.len(),
            });
        }
        let mut index = 0u64;
        for (&digit, dim) in tuple.iter().zip(&self.dims) {
            if digit >= dim.len() {
                return Err(Error::InvalidTuple(format!(
                    "digit {digit} exceeds radix {}",
                    dim.len()
                )));
            }
            index = index * dim.len() as u64 + digit as u64;
        }
        Ok(index)
    }

    pub fn decode(&self, index: u64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dims.len()];
        self.decode_into(index, &mut out)?;
        Ok(out)
    }

    /// Allocation-free decode for hot loops. `out` must have one slot per
    /// dimension.
    pub fn decode_into(&self, index: u64, out: &mut [f64]) -> Result<()> {
        self.check(index)?;
        if out.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                expected: self.dims.len(),
                actual: out.len(),
            });
        }
        let mut rest = index;
        for (slot, dim) in out.iter_mut().zip(&self.dims).rev() {
            let radix = dim.len() as u64;
            *slot = dim.values()[(rest % radix) as usize];
            rest /= radix;
        }
        Ok(())
    }

    /// Index of the state whose coordinates are nearest to `values`.
    pub fn nearest_index(&self, values: &[f64]) -> Result<u64> {
        if values.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                expected: self.dims.len(),
                actual: values.len(),
            });
        }
        let tuple: Vec<usize> = self
            .dims
            .iter()
            .zip(values)
            .map(|(d, &v)| d.nearest(v))
            .collect();
        self.tuple_to_index(&tuple)
    }

    /// Draws `s` distinct indices uniformly at random.
    pub fn sample_subset<R: Rng + ?Sized>(&self, s: u64, rng: &mut R) -> Result<SubsetSpace> {
        if s == 0 || s > self.cardinality {
            return Err(Error::SubsetSize {
                requested: s,
                available: self.cardinality,
            });
        }
        let n = usize::try_from(self.cardinality).map_err(|_| Error::CardinalityOverflow)?;
        let indices = rand::seq::index::sample(rng, n, s as usize)
            .into_iter()
            .map(|i| i as u64)
            .collect();
        Ok(SubsetSpace {
            parent: self.clone(),
            indices,
        })
    }

    /// A finer space around the state `center`: dimension `i` spans
    /// `[v_i - w_i, v_i + w_i]` clipped to the parent's range, with levels on
    /// the lattice `v_i + k * step_i` so the center value is always present.
    pub fn refine_around(&self, center: u64, spec: &RefinementSpec) -> Result<MixedRadixSpace> {
        let values = self.decode(center)?;
        if spec.half_width.len() != self.rank() || spec.step.len() != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                actual: spec.half_width.len().min(spec.step.len()),
            });
        }
        let mut dims = Vec::with_capacity(self.rank());
        for (i, dim) in self.dims.iter().enumerate() {
            let (width, step) = (spec.half_width[i], spec.step[i]);
            if !(step > 0.0) || !step.is_finite() {
                return Err(Error::InvalidStep(step));
            }
            if !(width >= 0.0) {
                return Err(Error::InvalidLevels(format!("negative half-width {width}")));
            }
            let v = values[i];
            let lo = (v - width).max(dim.min());
            let hi = (v + width).min(dim.max());
            // Snap tolerance keeps lattice points that land a few ulps past the box.
            let eps = 1e-9 * step;
            let k_lo = ((lo - v) / step - eps).ceil() as i64;
            let k_hi = ((hi - v) / step + eps).floor() as i64;
            let levels = (k_lo..=k_hi).map(|k| v + k as f64 * step).collect();
            dims.push(LevelSet::new(levels)?);
        }
        MixedRadixSpace::new(dims)
    }
}

impl TryFrom<Vec<LevelSet>> for MixedRadixSpace {
    type Error = Error;

    fn try_from(dims: Vec<LevelSet>) -> Result<Self> {
        MixedRadixSpace::new(dims)
    }
}

impl From<MixedRadixSpace> for Vec<LevelSet> {
    fn from(space: MixedRadixSpace) -> Self {
        space.dims
    }
}

/// Per-dimension half-widths and steps for [`MixedRadixSpace::refine_around`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementSpec {
    pub half_width: Vec<f64>,
    pub step: Vec<f64>,
}

impl RefinementSpec {
    pub fn uniform(rank: usize, half_width: f64, step: f64) -> Self {
        RefinementSpec {
            half_width: vec![half_width; rank],
            step: vec![step; rank],
        }
    }
}

/// A random selection of distinct states of a parent space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSpace {
    parent: MixedRadixSpace,
    indices: Vec<u64>,
}

impl SubsetSpace {
    pub fn new(parent: MixedRadixSpace, indices: Vec<u64>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(indices.len());
        for &i in &indices {
            if i >= parent.cardinality() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: parent.cardinality(),
                });
            }
            if !seen.insert(i) {
                return Err(Error::InvalidTuple(format!("duplicate subset index {i}")));
            }
        }
        if indices.is_empty() {
            return Err(Error::SubsetSize {
                requested: 0,
                available: parent.cardinality(),
            });
        }
        Ok(SubsetSpace { parent, indices })
    }

    pub fn parent(&self) -> &MixedRadixSpace {
        &self.parent
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn cardinality(&self) -> u64 {
        self.indices.len() as u64
    }
}

/// A finite list of parent-space states that the search methods walk over.
pub trait SearchDomain: Sync {
    fn len(&self) -> u64;

    /// Parent-space index of the `k`-th state of the domain.
    fn state(&self, k: u64) -> u64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl SearchDomain for MixedRadixSpace {
    fn len(&self) -> u64 {
        self.cardinality
    }

    fn state(&self, k: u64) -> u64 {
        k
    }
}

impl SearchDomain for SubsetSpace {
    fn len(&self) -> u64 {
        self.indices.len() as u64
    }

    fn state(&self, k: u64) -> u64 {
        self.indices[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Lexicographic enumeration by nested counting, independent of the
    /// div/mod decoding.
    fn brute_force_tuples(radices: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &r in radices {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..r).map(move |d| {
                        let mut t = prefix.clone();
                        t.push(d);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn example_a_grid_size() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 2.0, 41); 4]).unwrap();
        assert_eq!(space.cardinality(), 2_825_761);
    }

    #[test]
    fn degenerate_dimension() {
        let space = MixedRadixSpace::equidistant(&[(5.0, 5.0, 1)]).unwrap();
        assert_eq!(space.cardinality(), 1);
        assert_eq!(space.decode(0).unwrap(), vec![5.0]);
    }

    #[test]
    fn small_grid_matches_enumeration() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 2), (0.0, 2.0, 3)]).unwrap();
        let tuples = brute_force_tuples(&[2, 3]);
        assert_eq!(space.cardinality(), tuples.len() as u64);
        assert_eq!(space.dims()[0].values(), &[0.0, 1.0]);
        assert_eq!(space.dims()[1].values(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn rejects_bad_equidistant_specs() {
        assert!(LevelSet::equidistant(0.0, 1.0, 0).is_err());
        assert!(LevelSet::equidistant(1.0, 0.0, 3).is_err());
        assert!(LevelSet::equidistant(0.0, 1.0, 1).is_err());
        assert!(LevelSet::new(vec![0.0, 0.0]).is_err());
        assert!(LevelSet::new(vec![]).is_err());
    }

    #[test]
    fn first_and_last_index() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 2), (0.0, 1.0, 3), (0.0, 1.0, 4)])
            .unwrap();
        assert_eq!(space.index_to_tuple(0).unwrap(), vec![0, 0, 0]);
        assert_eq!(space.index_to_tuple(23).unwrap(), vec![1, 2, 3]);
        assert!(space.index_to_tuple(24).is_err());
        assert!(space.decode(24).is_err());
    }

    #[test]
    fn index_17_in_radices_2_3_4() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 2), (0.0, 1.0, 3), (0.0, 1.0, 4)])
            .unwrap();
        let expected = brute_force_tuples(&[2, 3, 4])[17].clone();
        assert_eq!(expected, vec![1, 1, 1]);
        assert_eq!(space.index_to_tuple(17).unwrap(), expected);
    }

    #[test]
    fn decode_matches_enumeration() {
        let space =
            MixedRadixSpace::equidistant(&[(0.0, 2.0, 7), (-1.0, 1.0, 5), (3.0, 4.0, 11)]).unwrap();
        for (i, t) in brute_force_tuples(&space.radices()).into_iter().enumerate() {
            let expected: Vec<f64> = t
                .iter()
                .zip(space.dims())
                .map(|(&d, dim)| dim.values()[d])
                .collect();
            assert_eq!(space.decode(i as u64).unwrap(), expected);
        }
    }

    #[test]
    fn example_a_node_values_decode_exactly() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 2.0, 41); 4]).unwrap();
        let i = space.tuple_to_index(&[19, 10, 4, 1]).unwrap();
        assert_eq!(space.decode(i).unwrap(), vec![0.95, 0.50, 0.20, 0.05]);
        assert_eq!(space.nearest_index(&[0.95, 0.5, 0.2, 0.05]).unwrap(), i);
    }

    #[test]
    fn exhaustive_round_trip() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 10), (0.0, 1.0, 7), (0.0, 1.0, 13)])
            .unwrap();
        for i in 0..space.cardinality() {
            let t = space.index_to_tuple(i).unwrap();
            assert_eq!(space.tuple_to_index(&t).unwrap(), i);
        }
    }

    #[test]
    fn decode_is_injective() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 6), (0.0, 1.0, 5), (0.0, 1.0, 4)])
            .unwrap();
        let mut seen: Vec<Vec<u64>> = (0..space.cardinality())
            .map(|i| space.decode(i).unwrap().iter().map(|v| v.to_bits()).collect())
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len() as u64, space.cardinality());
    }

    #[test]
    fn full_subset_is_permutation() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 10), (0.0, 1.0, 10)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let subset = space.sample_subset(100, &mut rng).unwrap();
        let mut idx = subset.indices().to_vec();
        idx.sort_unstable();
        assert_eq!(idx, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn subset_is_reproducible() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 10), (0.0, 1.0, 10)]).unwrap();
        let a = space
            .sample_subset(10, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        let b = space
            .sample_subset(10, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        assert_eq!(a.indices(), b.indices());
        assert_eq!(a.cardinality(), 10);
        let single = space
            .sample_subset(1, &mut ChaCha8Rng::seed_from_u64(1))
            .unwrap();
        assert_eq!(single.cardinality(), 1);
    }

    #[test]
    fn subset_size_errors() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 4)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(space.sample_subset(0, &mut rng).is_err());
        assert!(space.sample_subset(5, &mut rng).is_err());
        assert!(SubsetSpace::new(space.clone(), vec![1, 1]).is_err());
        assert!(SubsetSpace::new(space, vec![4]).is_err());
    }

    #[test]
    fn zero_width_refinement_is_single_state() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 2.0, 41); 4]).unwrap();
        let center = space.nearest_index(&[0.95, 0.5, 0.2, 0.05]).unwrap();
        let fine = space
            .refine_around(center, &RefinementSpec::uniform(4, 0.0, 0.01))
            .unwrap();
        assert_eq!(fine.cardinality(), 1);
        assert_eq!(fine.decode(0).unwrap(), vec![0.95, 0.5, 0.2, 0.05]);
    }

    #[test]
    fn refinement_clips_at_boundary() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 2.0, 41), (0.0, 2.0, 41)]).unwrap();
        let center = space.nearest_index(&[0.0, 2.0]).unwrap();
        let fine = space
            .refine_around(center, &RefinementSpec::uniform(2, 0.1, 0.01))
            .unwrap();
        let d0 = fine.dims()[0].values();
        let d1 = fine.dims()[1].values();
        assert_eq!(d0.len(), 11);
        assert_eq!(d1.len(), 11);
        assert_eq!(d0[0], 0.0);
        assert_eq!(*d1.last().unwrap(), 2.0);
        assert!(d0.iter().all(|&v| (0.0..=0.1 + 1e-12).contains(&v)));
        assert!(d1.iter().all(|&v| (1.9 - 1e-12..=2.0).contains(&v)));
    }

    #[test]
    fn refinement_rejects_bad_step() {
        let space = MixedRadixSpace::equidistant(&[(0.0, 1.0, 3)]).unwrap();
        assert!(space
            .refine_around(1, &RefinementSpec::uniform(1, 0.1, 0.0))
            .is_err());
        assert!(space
            .refine_around(1, &RefinementSpec::uniform(1, 0.1, -1.0))
            .is_err());
    }

    proptest! {
        #[test]
        fn random_round_trip(radices in prop::collection::vec(1usize..60, 1..8), seed in any::<u64>()) {
            let specs: Vec<_> = radices.iter().map(|&r| (0.0, r as f64, r + 0)).map(|(a, b, r)| {
                if r == 1 { (a, a, 1) } else { (a, b, r) }
            }).collect();
            let space = MixedRadixSpace::equidistant(&specs).unwrap();
            let i = seed % space.cardinality();
            let t = space.index_to_tuple(i).unwrap();
            prop_assert_eq!(space.tuple_to_index(&t).unwrap(), i);
        }

        #[test]
        fn refinement_contains_center(
            center in 0u64..41 * 41,
            width in 0.0f64..0.5,
            step in 0.005f64..0.2,
        ) {
            let space = MixedRadixSpace::equidistant(&[(0.0, 2.0, 41), (0.0, 2.0, 41)]).unwrap();
            let fine = space
                .refine_around(center, &RefinementSpec::uniform(2, width, step))
                .unwrap();
            let product: u64 = fine.radices().iter().map(|&r| r as u64).product();
            prop_assert_eq!(fine.cardinality(), product);
            let c = space.decode(center).unwrap();
            for (dim, v) in fine.dims().iter().zip(&c) {
                prop_assert!(dim.values().contains(v));
                prop_assert!(dim.min() >= 0.0 - 1e-12 && dim.max() <= 2.0 + 1e-12);
            }
        }
    }
}
