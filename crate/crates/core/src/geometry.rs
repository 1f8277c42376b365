//! Atom position sets, Minkowski-sum nesting and positional disorder.
//!
//! Coordinates are stored as phases `θ = k_z·x`, so `θ = 2π` is one
//! transition wavelength. All sets are multisets: coincident atoms are kept
//! as distinct degrees of freedom.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Length unit used by user-facing inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Phase `k_z·x` in radians.
    Phase,
    /// Multiples of the transition wavelength; converted with a factor `2π`.
    Lambda0,
}

impl Units {
    pub fn to_phase(self, value: f64) -> f64 {
        match self {
            Units::Phase => value,
            Units::Lambda0 => value * TAU,
        }
    }

    pub fn from_phase(self, phase: f64) -> f64 {
        match self {
            Units::Phase => phase,
            Units::Lambda0 => phase / TAU,
        }
    }
}

/// Sorted multiset of finite atom phases.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PositionSet {
    positions: Vec<f64>,
}

impl PositionSet {
    /// Builds a set from arbitrary-order coordinates. Duplicates are kept.
    pub fn new(mut positions: Vec<f64>) -> Result<Self> {
        if let Some(bad) = positions.iter().find(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("non-finite position {bad}")));
        }
        positions.sort_by(f64::total_cmp);
        Ok(PositionSet { positions })
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Distance between the outermost atoms (0 for fewer than two atoms).
    pub fn extent(&self) -> f64 {
        match (self.positions.first(), self.positions.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    pub fn translated(&self, shift: f64) -> PositionSet {
        PositionSet {
            positions: self.positions.iter().map(|x| x + shift).collect(),
        }
    }
}

fn check_spacing(d: f64) -> Result<()> {
    if !d.is_finite() || d < 0.0 {
        return Err(Error::invalid(format!("spacing must be finite and >= 0, got {d}")));
    }
    Ok(())
}

/// `{0, d}`. A zero spacing yields a coincident pair.
pub fn dimer_seed(d: f64) -> Result<PositionSet> {
    check_spacing(d)?;
    Ok(PositionSet { positions: vec![0.0, d] })
}

/// `{0, d, 2d, …, (count−1)d}`.
pub fn periodic_seed(count: usize, d: f64) -> Result<PositionSet> {
    if count == 0 {
        return Err(Error::invalid("periodic seed needs at least one atom"));
    }
    check_spacing(d)?;
    Ok(PositionSet {
        positions: (0..count).map(|n| n as f64 * d).collect(),
    })
}

/// Multiset of all pairwise sums `a + b`, sorted; `|A ⊕ B| = |A|·|B|`.
pub fn minkowski_sum(a: &PositionSet, b: &PositionSet) -> Result<PositionSet> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("Minkowski sum of an empty position set"));
    }
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for &y in b.positions() {
        for &x in a.positions() {
            sums.push(x + y);
        }
    }
    PositionSet::new(sums)
}

/// Composite array produced by folding Minkowski sums over a list of seeds.
///
/// Atoms are addressed two ways: the flat index `j` into the sorted
/// composite, and the multi-index `(n₁, …, n_depth)` naming the seed element
/// taken at each level. The block index packs the multi-index with the first
/// seed varying fastest, `k = n₁ + N₁·(n₂ + N₂·(…))`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedArray {
    seeds: Vec<PositionSet>,
    composite: PositionSet,
    atom_of_block: Vec<usize>,
    block_of_atom: Vec<usize>,
}

impl NestedArray {
    pub fn seeds(&self) -> &[PositionSet] {
        &self.seeds
    }

    pub fn composite(&self) -> &PositionSet {
        &self.composite
    }

    pub fn depth(&self) -> usize {
        self.seeds.len()
    }

    pub fn len(&self) -> usize {
        self.composite.len()
    }

    pub fn is_empty(&self) -> bool {
        self.composite.is_empty()
    }

    /// Flat atom index of the block index `k`.
    pub fn atom_of_block(&self, k: usize) -> usize {
        self.atom_of_block[k]
    }

    /// Block index of flat atom `j`.
    pub fn block_of_atom(&self, j: usize) -> usize {
        self.block_of_atom[j]
    }

    /// Flat atom index of a multi-index.
    pub fn flatten(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.seeds.len() {
            return Err(Error::invalid(format!(
                "multi-index has {} levels, array has {}",
                multi.len(),
                self.seeds.len()
            )));
        }
        let mut k = 0;
        for (level, (&n, seed)) in multi.iter().zip(&self.seeds).enumerate().rev() {
            if n >= seed.len() {
                return Err(Error::invalid(format!(
                    "index {n} out of range at level {level} (size {})",
                    seed.len()
                )));
            }
            k = k * seed.len() + n;
        }
        Ok(self.atom_of_block[k])
    }

    /// Multi-index of flat atom `j`.
    pub fn multi_index(&self, j: usize) -> Vec<usize> {
        let mut k = self.block_of_atom[j];
        self.seeds
            .iter()
            .map(|seed| {
                let n = k % seed.len();
                k /= seed.len();
                n
            })
            .collect()
    }
}

/// Left fold of [`minkowski_sum`] over `seeds`, keeping the index map.
pub fn nest(seeds: &[PositionSet]) -> Result<NestedArray> {
    if seeds.is_empty() {
        return Err(Error::invalid("nesting needs at least one seed"));
    }
    if let Some(i) = seeds.iter().position(PositionSet::is_empty) {
        return Err(Error::invalid(format!("seed {i} is empty")));
    }

    // Block order: first seed fastest. Sums accumulate left to right.
    let mut sums: Vec<f64> = seeds[0].positions().to_vec();
    for seed in &seeds[1..] {
        let mut next = Vec::with_capacity(sums.len() * seed.len());
        for &y in seed.positions() {
            next.extend(sums.iter().map(|&x| x + y));
        }
        sums = next;
    }

    let mut order: Vec<usize> = (0..sums.len()).collect();
    order.sort_by(|&p, &q| sums[p].total_cmp(&sums[q]).then(p.cmp(&q)));

    let mut block_of_atom = vec![0; sums.len()];
    let mut atom_of_block = vec![0; sums.len()];
    for (j, &k) in order.iter().enumerate() {
        block_of_atom[j] = k;
        atom_of_block[k] = j;
    }
    let composite = PositionSet {
        positions: order.iter().map(|&k| sums[k]).collect(),
    };

    Ok(NestedArray {
        seeds: seeds.to_vec(),
        composite,
        atom_of_block,
        block_of_atom,
    })
}

/// Uniform positional disorder `x → x + ε·r_d`, `ε ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    strength: f64,
    seed: u64,
    samples: usize,
}

impl DisorderSpec {
    pub fn new(strength: f64, seed: u64, samples: usize) -> Result<Self> {
        if !strength.is_finite() || strength < 0.0 {
            return Err(Error::invalid(format!("disorder strength must be >= 0, got {strength}")));
        }
        if samples == 0 {
            return Err(Error::invalid("disorder sample count must be >= 1"));
        }
        Ok(DisorderSpec { strength, seed, samples })
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Same strength and sample count with a seed derived from `(seed, stream)`.
    pub fn with_substream(&self, stream: u64) -> DisorderSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        DisorderSpec {
            seed: rng.gen(),
            ..*self
        }
    }

    /// The uniform draw `ε ∈ [−1, 1]` for one atom of one realization.
    ///
    /// Counter-based: the ChaCha key is `(seed, realization)` and the stream
    /// is the atom index, so every draw is independent of evaluation order.
    pub fn epsilon(&self, realization: usize, atom: usize) -> f64 {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(realization as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(atom as u64);
        rng.gen_range(-1.0..=1.0)
    }
}

/// Perturbs every atom independently by `ε·r_d`; the result is re-sorted.
pub fn apply_disorder(arr: &PositionSet, spec: &DisorderSpec, realization: usize) -> Result<PositionSet> {
    if realization >= spec.samples {
        return Err(Error::invalid(format!(
            "realization {realization} out of range (M = {})",
            spec.samples
        )));
    }
    if spec.strength == 0.0 {
        return Ok(arr.clone());
    }
    let moved = arr
        .positions()
        .iter()
        .enumerate()
        .map(|(j, &x)| x + spec.epsilon(realization, j) * spec.strength)
        .collect();
    PositionSet::new(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn set(v: &[f64]) -> PositionSet {
        PositionSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimer_examples() {
        assert_eq!(dimer_seed(0.2 * PI).unwrap().positions(), &[0.0, 0.2 * PI]);
        assert_eq!(dimer_seed(0.0).unwrap().positions(), &[0.0, 0.0]);
        assert_eq!(dimer_seed(1.0).unwrap().positions(), &[0.0, 1.0]);
        assert!(dimer_seed(-0.1).is_err());
        assert!(dimer_seed(f64::NAN).is_err());
        assert!(dimer_seed(f64::INFINITY).is_err());
    }

    #[test]
    fn periodic_examples() {
        let p = periodic_seed(5, 0.4 * PI).unwrap();
        let expected: Vec<f64> = [0.0, 0.2, 0.4, 0.6, 0.8].iter().map(|l| Units::Lambda0.to_phase(*l)).collect();
        for (a, b) in p.positions().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(periodic_seed(1, 5.0).unwrap().positions(), &[0.0]);
        assert_eq!(periodic_seed(2, PI).unwrap().positions(), &[0.0, PI]);
        assert!(periodic_seed(0, 1.0).is_err());
    }

    #[test]
    fn minkowski_examples() {
        let (da, db) = (0.3, 1.7);
        let s = minkowski_sum(&dimer_seed(da).unwrap(), &dimer_seed(db).unwrap()).unwrap();
        assert_eq!(s.positions(), &[0.0, da, db, da + db]);

        let x = set(&[0.5, -1.0, 2.0]);
        assert_eq!(minkowski_sum(&set(&[0.0]), &x).unwrap(), x);

        let s = minkowski_sum(&dimer_seed(0.7).unwrap(), &dimer_seed(0.0).unwrap()).unwrap();
        assert_eq!(s.positions(), &[0.0, 0.0, 0.7, 0.7]);

        assert!(minkowski_sum(&PositionSet::default(), &x).is_err());
        assert!(minkowski_sum(&x, &PositionSet::default()).is_err());
    }

    #[test]
    fn nest_index_map_by_enumeration() {
        let arr = nest(&[set(&[0.0, 1.0]), set(&[0.0, 2.0])]).unwrap();
        assert_eq!(arr.composite().positions(), &[0.0, 1.0, 2.0, 3.0]);
        for n in 0..2 {
            for m in 0..2 {
                let j = arr.flatten(&[n, m]).unwrap();
                assert_eq!(j, n + 2 * m);
                assert_eq!(arr.composite().positions()[j], n as f64 + 2.0 * m as f64);
                assert_eq!(arr.multi_index(j), vec![n, m]);
            }
        }
    }

    #[test]
    fn nest_single_and_errors() {
        let x = set(&[0.0, 0.3, 0.9]);
        let arr = nest(std::slice::from_ref(&x)).unwrap();
        assert_eq!(arr.composite(), &x);
        assert!(nest(&[]).is_err());
        assert!(nest(&[x.clone(), PositionSet::default()]).is_err());
        assert!(arr.flatten(&[0, 0]).is_err());
        assert!(arr.flatten(&[3]).is_err());
    }

    #[test]
    fn doubly_nested_dimers_have_eight_atoms() {
        let arr = nest(&[
            dimer_seed(0.2 * PI).unwrap(),
            dimer_seed(1.3).unwrap(),
            dimer_seed(0.02 * PI).unwrap(),
        ])
        .unwrap();
        assert_eq!(arr.len(), 8);
        assert_eq!(arr.depth(), 3);
    }

    #[test]
    fn zero_disorder_is_identity_and_draws_are_deterministic() {
        let x = nest(&[periodic_seed(5, 0.2).unwrap(), dimer_seed(1.1).unwrap()]).unwrap();
        let x = x.composite();
        let clean = DisorderSpec::new(0.0, 9, 3).unwrap();
        assert_eq!(&apply_disorder(x, &clean, 2).unwrap(), x);

        let spec = DisorderSpec::new(0.05, 42, 200).unwrap();
        let a = apply_disorder(x, &spec, 17).unwrap();
        let b = apply_disorder(x, &spec, 17).unwrap();
        assert_eq!(a.positions(), b.positions());
        let c = apply_disorder(x, &spec, 18).unwrap();
        assert_ne!(a.positions(), c.positions());
        assert!(apply_disorder(x, &spec, 200).is_err());
    }

    #[test]
    fn disorder_spec_validation() {
        assert!(DisorderSpec::new(-1e-3, 0, 1).is_err());
        assert!(DisorderSpec::new(0.1, 0, 0).is_err());
        let s = DisorderSpec::new(0.1, 5, 10).unwrap();
        assert_ne!(s.with_substream(0).seed(), s.with_substream(1).seed());
        assert_eq!(s.with_substream(3), s.with_substream(3));
    }

    #[test]
    fn units_round_trip() {
        assert_eq!(Units::Lambda0.to_phase(0.5), PI);
        assert_eq!(Units::Phase.to_phase(0.5), 0.5);
        assert!((Units::Lambda0.from_phase(Units::Lambda0.to_phase(0.37)) - 0.37).abs() < 1e-16);
    }

    fn seed_strategy() -> impl Strategy<Value = PositionSet> {
        prop::collection::vec(-5.0f64..5.0, 1..5).prop_map(|v| PositionSet::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn minkowski_commutes(a in seed_strategy(), b in seed_strategy()) {
            let ab = minkowski_sum(&a, &b).unwrap();
            let ba = minkowski_sum(&b, &a).unwrap();
            prop_assert_eq!(ab.positions(), ba.positions());
        }

        #[test]
        fn nesting_is_associative(a in seed_strategy(), b in seed_strategy(), c in seed_strategy()) {
            let abc = nest(&[a.clone(), b.clone(), c.clone()]).unwrap();
            let ab = nest(&[a, b]).unwrap();
            let ab_c = nest(&[ab.composite().clone(), c]).unwrap();
            prop_assert_eq!(abc.len(), ab_c.len());
            for (x, y) in abc.composite().positions().iter().zip(ab_c.composite().positions()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn cardinality_and_exact_sums(seeds in prop::collection::vec(seed_strategy(), 1..4)) {
            let arr = nest(&seeds).unwrap();
            let expected: usize = seeds.iter().map(PositionSet::len).product();
            prop_assert_eq!(arr.len(), expected);
            for j in 0..arr.len() {
                let multi = arr.multi_index(j);
                prop_assert_eq!(arr.flatten(&multi).unwrap(), j);
                let mut sum = seeds[0].positions()[multi[0]];
                for (seed, &n) in seeds.iter().zip(&multi).skip(1) {
                    sum += seed.positions()[n];
                }
                prop_assert_eq!(arr.composite().positions()[j], sum);
            }
        }

        #[test]
        fn translation_covariance(a in seed_strategy(), b in seed_strategy(), c in -3.0f64..3.0) {
            let base = nest(&[a.clone(), b.clone()]).unwrap();
            let shifted = nest(&[a, b.translated(c)]).unwrap();
            for (x, y) in base.composite().positions().iter().zip(shifted.composite().positions()) {
                prop_assert!((y - (x + c)).abs() <= 1e-12);
            }
        }

        #[test]
        fn disorder_is_bounded(a in seed_strategy(), rd in 0.0f64..1.0, seed in any::<u64>(), r in 0usize..50) {
            let spec = DisorderSpec::new(rd, seed, 50).unwrap();
            let mut orig = a.positions().to_vec();
            let moved: Vec<f64> = orig
                .iter()
                .enumerate()
                .map(|(j, &x)| x + spec.epsilon(r, j) * rd)
                .collect();
            for (x, y) in orig.iter().zip(&moved) {
                prop_assert!((y - x).abs() <= rd);
            }
            let out = apply_disorder(&a, &spec, r).unwrap();
            let mut sorted = moved;
            sorted.sort_by(f64::total_cmp);
            prop_assert_eq!(out.positions(), &sorted[..]);
            orig.sort_by(f64::total_cmp);
            prop_assert_eq!(out.len(), orig.len());
        }
    }
}
