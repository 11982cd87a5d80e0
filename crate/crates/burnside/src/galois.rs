//! Components of the Burnside ring spectrum.
//!
//! The spectrum of the Burnside ring is one copy of Spec Z per subgroup
//! class, glued at closed points: for each prime p dividing the order of
//! the class's Weyl group quotient, the class is identified with its block
//! under the prime-p congruence partition of the classes. This module folds
//! those identifications into connected components by walking the classes
//! from the largest down, maintaining a list of component ranks `L` and the
//! partition `C` of the processed classes into components.
//!
//! Each step glues one class into the picture. A class whose diagonal mark
//! is 1 starts a fresh component of rank 0. Otherwise every prime p of the
//! diagonal ties the class to the existing components meeting its p-block;
//! gluing g distinct points of a tree-like bundle of components with ranks
//! r_1..r_m into one wedge yields rank `g - m + sum r_i`. The Euler
//! characteristic `|L| - sum L` therefore changes by exactly `1 - |P|` per
//! step, which the walk asserts as it goes.
//!
//! Two closed forms cross-check the result: for solvable groups the single
//! component has rank `sum (omega(d_i) - 1)` over the proper classes'
//! diagonals d_i, and for the cyclic group of order N the rank counts, over
//! the proper divisors' exponent vectors beta < alpha, the number of
//! strictly smaller coordinates minus one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::marks::{factorize, prime_divisors, PrimePartition, TableOfMarks};

/// One gluing step of the walk.
#[derive(Clone, Debug)]
pub struct TraceStep {
    /// Class being glued, 0-based.
    pub class_index: usize,
    /// Diagonal mark of that class.
    pub diagonal: u64,
    /// Prime divisors of the diagonal, ascending; empty for fresh
    /// components.
    pub primes: Vec<u64>,
    /// For each prime, the partition block containing the class.
    pub extension_blocks: Vec<(u64, Vec<usize>)>,
    /// Components merged into the class, in discovery order; their contents
    /// are the pre-merge blocks.
    pub merged_blocks: Vec<Vec<usize>>,
    /// Rank of the component created by this step.
    pub new_rank: u64,
    pub chi_before: i64,
    pub chi_after: i64,
    /// Rank list after the step, in walk order.
    pub ranks_after: Vec<u64>,
    /// Component partition after the step, in walk order.
    pub components_after: Vec<Vec<usize>>,
}

/// Connected components of the spectrum: a rank per component, the classes
/// each component contains, the Euler characteristic, and the full walk.
#[derive(Clone, Debug)]
pub struct ComponentInvariant {
    class_count: usize,
    ranks_raw: Vec<u64>,
    components_raw: Vec<Vec<usize>>,
    chi: i64,
    steps: Vec<TraceStep>,
}

impl ComponentInvariant {
    /// Component ranks in canonical descending order; this is the
    /// invariant `L`.
    pub fn ranks(&self) -> Vec<u64> {
        let mut ranks = self.ranks_raw.clone();
        ranks.sort_unstable_by(|a, b| b.cmp(a));
        ranks
    }

    /// Ranks in walk order, paired with [`Self::components_raw`].
    pub fn ranks_raw(&self) -> &[u64] {
        &self.ranks_raw
    }

    /// Components in canonical order: members ascending, components by
    /// least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.ranked_components()
            .into_iter()
            .map(|(_, block)| block)
            .collect()
    }

    /// Components in walk order with unsorted members.
    pub fn components_raw(&self) -> &[Vec<usize>] {
        &self.components_raw
    }

    /// Rank and members per component, components ordered by least member.
    pub fn ranked_components(&self) -> Vec<(u64, Vec<usize>)> {
        let mut pairs: Vec<(u64, Vec<usize>)> = self
            .ranks_raw
            .iter()
            .zip(&self.components_raw)
            .map(|(&rank, block)| {
                let mut block = block.clone();
                block.sort_unstable();
                (rank, block)
            })
            .collect();
        pairs.sort_by_key(|(_, block)| block[0]);
        pairs
    }

    /// Euler characteristic of the gluing graph: `|L| - sum L`.
    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn component_count(&self) -> usize {
        self.ranks_raw.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Gluing steps in walk order; the walk has one record per class below
    /// the whole group.
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }
}

/// `|ranks| - sum(ranks)`.
pub fn chi_of(ranks: &[u64]) -> i64 {
    ranks.len() as i64 - ranks.iter().sum::<u64>() as i64
}

/// Runs the gluing walk over a table of marks. `partitions` must hold one
/// class partition per prime dividing the group order.
pub fn compute_invariant(
    tom: &TableOfMarks,
    partitions: &BTreeMap<u64, PrimePartition>,
) -> Result<ComponentInvariant> {
    let s = tom.size();
    for p in prime_divisors(tom.group_order())? {
        if !partitions.contains_key(&p) {
            return Err(Error::MissingPrimePartition(p));
        }
    }
    for partition in partitions.values() {
        if partition.class_count() != s {
            return Err(Error::InvalidPartition(format!(
                "partition for prime {} covers {} classes, table has {}",
                partition.prime(),
                partition.class_count(),
                s
            )));
        }
    }

    let mut ranks: Vec<u64> = vec![0];
    let mut components: Vec<Vec<usize>> = vec![vec![s - 1]];
    let mut chi: i64 = 1;
    let mut steps: Vec<TraceStep> = Vec::with_capacity(s - 1);

    for k in (0..s - 1).rev() {
        let diagonal = tom.diagonal(k);
        let primes = prime_divisors(diagonal)?;
        let chi_before = chi;
        let (extension_blocks, merged_blocks, new_rank);
        if primes.is_empty() {
            ranks.insert(0, 0);
            components.insert(0, vec![k]);
            chi += 1;
            extension_blocks = Vec::new();
            merged_blocks = Vec::new();
            new_rank = 0;
        } else {
            let mut ext: Vec<(u64, Vec<usize>)> = Vec::with_capacity(primes.len());
            let mut merged: Vec<usize> = Vec::new();
            for &p in &primes {
                let partition = partitions.get(&p).ok_or(Error::MissingPrimePartition(p))?;
                let block = partition.block_containing(k);
                for (j, component) in components.iter().enumerate() {
                    if !merged.contains(&j)
                        && component.iter().any(|c| block.binary_search(c).is_ok())
                    {
                        merged.push(j);
                    }
                }
                ext.push((p, block.to_vec()));
            }
            let rank_sum: u64 = merged.iter().map(|&j| ranks[j]).sum();
            let rank = primes.len() as i64 - merged.len() as i64 + rank_sum as i64;
            if rank < 0 {
                return Err(Error::Invariant(format!(
                    "negative rank {rank} gluing class {k}: {} primes, {} components",
                    primes.len(),
                    merged.len()
                )));
            }
            let mut new_component = vec![k];
            for &j in &merged {
                new_component.extend_from_slice(&components[j]);
            }
            let keep = |j: &usize| !merged.contains(j);
            let kept_ranks: Vec<u64> = (0..ranks.len()).filter(keep).map(|j| ranks[j]).collect();
            let kept_components: Vec<Vec<usize>> = (0..components.len())
                .filter(keep)
                .map(|j| components[j].clone())
                .collect();
            merged_blocks = merged.iter().map(|&j| components[j].clone()).collect();
            ranks = std::iter::once(rank as u64).chain(kept_ranks).collect();
            components = std::iter::once(new_component)
                .chain(kept_components)
                .collect();
            chi += 1 - primes.len() as i64;
            extension_blocks = ext;
            new_rank = rank as u64;
        }
        if chi != chi_of(&ranks) {
            return Err(Error::Invariant(format!(
                "chi {} disagrees with ranks at class {k}",
                chi
            )));
        }
        steps.push(TraceStep {
            class_index: k,
            diagonal,
            primes,
            extension_blocks,
            merged_blocks,
            new_rank,
            chi_before,
            chi_after: chi,
            ranks_after: ranks.clone(),
            components_after: components.clone(),
        });
    }

    if ranks.len() != components.len() {
        return Err(Error::Invariant("rank and component counts differ".into()));
    }
    let mut all: Vec<usize> = components.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != (0..s).collect::<Vec<_>>() {
        return Err(Error::Invariant(
            "components do not partition the classes".into(),
        ));
    }

    Ok(ComponentInvariant {
        class_count: s,
        ranks_raw: ranks,
        components_raw: components,
        chi,
        steps,
    })
}

/// Closed form for solvable groups, where the spectrum is connected: the
/// single component has rank `sum (omega(d) - 1)` over the diagonals d of
/// the proper classes, with omega counting distinct primes.
pub fn solvable_rank(tom: &TableOfMarks) -> Result<i64> {
    let mut total: i64 = 0;
    for i in 0..tom.size() - 1 {
        total += prime_divisors(tom.diagonal(i))?.len() as i64 - 1;
    }
    Ok(total)
}

/// Closed form for the cyclic group of order n: over all exponent vectors
/// beta strictly below the factorization exponents alpha, sum the count of
/// strictly smaller coordinates minus one.
///
/// Beware an off by one for orders with exactly two prime divisors: for
/// n = p^(k+1) q the rank is k + 1, not k. C6 gives 1, C12 gives 2, C18
/// gives 2, and the gluing walk and the solvable rank formula agree.
pub fn cyclic_rank(n: u64) -> Result<u64> {
    let alpha = factorize(n)?;
    if alpha.is_empty() {
        return Ok(0);
    }
    let radix: Vec<u32> = alpha.iter().map(|&(_, e)| e + 1).collect();
    let mut beta = vec![0u32; alpha.len()];
    let mut total: u64 = 0;
    loop {
        let smaller = beta
            .iter()
            .zip(&alpha)
            .filter(|&(&b, &(_, e))| b < e)
            .count() as u64;
        if smaller > 0 {
            // beta != alpha exactly when some coordinate is smaller.
            total += smaller - 1;
        }
        let mut digit = 0;
        loop {
            if digit == beta.len() {
                return Ok(total);
            }
            beta[digit] += 1;
            if beta[digit] < radix[digit] {
                break;
            }
            beta[digit] = 0;
            digit += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marks::cyclic_extensions_marks;

    fn tom(rows: Vec<Vec<u64>>) -> TableOfMarks {
        TableOfMarks::from_rows(None, rows).unwrap()
    }

    fn partitions_of(t: &TableOfMarks) -> BTreeMap<u64, PrimePartition> {
        prime_divisors(t.group_order())
            .unwrap()
            .into_iter()
            .map(|p| (p, cyclic_extensions_marks(t, p).unwrap()))
            .collect()
    }

    fn states(inv: &ComponentInvariant) -> Vec<(Vec<u64>, Vec<Vec<usize>>)> {
        inv.steps()
            .iter()
            .map(|s| (s.ranks_after.clone(), s.components_after.clone()))
            .collect()
    }

    const C6_ROWS: [&[u64]; 4] = [&[6], &[3, 3], &[2, 0, 2], &[1, 1, 1, 1]];
    const S3_ROWS: [&[u64]; 4] = [&[6], &[3, 1], &[2, 0, 2], &[1, 1, 1, 1]];
    const A5_ROWS: [&[u64]; 9] = [
        &[60],
        &[30, 2],
        &[20, 0, 2],
        &[15, 3, 0, 3],
        &[12, 0, 0, 0, 2],
        &[10, 2, 1, 0, 0, 1],
        &[6, 2, 0, 0, 1, 0, 1],
        &[5, 1, 2, 1, 0, 0, 0, 1],
        &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    ];

    fn rows(rows: &[&[u64]]) -> Vec<Vec<u64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn trivial_group() {
        let t = tom(vec![vec![1]]);
        let inv = compute_invariant(&t, &BTreeMap::new()).unwrap();
        assert_eq!(inv.ranks(), vec![0]);
        assert_eq!(inv.components(), vec![vec![0]]);
        assert_eq!(inv.chi(), 1);
        assert!(inv.steps().is_empty());
    }

    #[test]
    fn walkthrough_c6() {
        let t = tom(rows(&C6_ROWS));
        let inv = compute_invariant(&t, &partitions_of(&t)).unwrap();
        assert_eq!(
            states(&inv),
            vec![
                (vec![0], vec![vec![2, 3]]),
                (vec![0], vec![vec![1, 2, 3]]),
                (vec![1], vec![vec![0, 1, 2, 3]]),
            ]
        );
        assert_eq!(inv.ranks(), vec![1]);
        assert_eq!(inv.components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(inv.chi(), 0);
        let last = inv.steps().last().unwrap();
        assert_eq!(last.primes, vec![2, 3]);
        assert_eq!(last.new_rank, 1);
        assert_eq!(last.merged_blocks, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn walkthrough_s3() {
        let t = tom(rows(&S3_ROWS));
        let inv = compute_invariant(&t, &partitions_of(&t)).unwrap();
        assert_eq!(
            states(&inv),
            vec![
                (vec![0], vec![vec![2, 3]]),
                (vec![0, 0], vec![vec![1], vec![2, 3]]),
                (vec![0], vec![vec![0, 1, 2, 3]]),
            ]
        );
        assert_eq!(inv.ranks(), vec![0]);
        assert_eq!(inv.chi(), 1);
        // The middle step isolates the class with diagonal 1.
        let isolated = &inv.steps()[1];
        assert!(isolated.primes.is_empty());
        assert_eq!(isolated.chi_before, 1);
        assert_eq!(isolated.chi_after, 2);
        // The final step glues both components at both primes.
        let last = inv.steps().last().unwrap();
        assert_eq!(last.merged_blocks, vec![vec![1], vec![2, 3]]);
        assert_eq!(last.new_rank, 0);
    }

    #[test]
    fn walkthrough_a5() {
        let t = tom(rows(&A5_ROWS));
        let inv = compute_invariant(&t, &partitions_of(&t)).unwrap();
        assert_eq!(
            states(&inv),
            vec![
                (vec![0, 0], vec![vec![7], vec![8]]),
                (vec![0, 0, 0], vec![vec![6], vec![7], vec![8]]),
                (vec![0, 0, 0, 0], vec![vec![5], vec![6], vec![7], vec![8]]),
                (
                    vec![0, 0, 0, 0],
                    vec![vec![4, 6], vec![5], vec![7], vec![8]]
                ),
                (
                    vec![0, 0, 0, 0],
                    vec![vec![3, 7], vec![4, 6], vec![5], vec![8]]
                ),
                (
                    vec![0, 0, 0, 0],
                    vec![vec![2, 5], vec![3, 7], vec![4, 6], vec![8]]
                ),
                (
                    vec![0, 0, 0, 0],
                    vec![vec![1, 3, 7], vec![2, 5], vec![4, 6], vec![8]]
                ),
                (vec![0, 0], vec![vec![0, 1, 3, 7, 2, 5, 4, 6], vec![8]]),
            ]
        );
        assert_eq!(inv.ranks(), vec![0, 0]);
        assert_eq!(
            inv.components(),
            vec![vec![0, 1, 2, 3, 4, 5, 6, 7], vec![8]]
        );
        assert_eq!(inv.chi(), 2);
        let last = inv.steps().last().unwrap();
        assert_eq!(last.primes, vec![2, 3, 5]);
        assert_eq!(
            last.extension_blocks,
            vec![(2, vec![0, 1, 3]), (3, vec![0, 2]), (5, vec![0, 4])]
        );
        assert_eq!(last.chi_before, 4);
        assert_eq!(last.chi_after, 2);
    }

    #[test]
    fn chi_recurrence_holds_stepwise() {
        let t = tom(rows(&A5_ROWS));
        let inv = compute_invariant(&t, &partitions_of(&t)).unwrap();
        let mut chi = 1i64;
        for step in inv.steps() {
            assert_eq!(step.chi_before, chi);
            chi += 1 - step.primes.len() as i64;
            assert_eq!(step.chi_after, chi);
            assert_eq!(chi, chi_of(&step.ranks_after));
        }
        assert_eq!(chi, inv.chi());
    }

    #[test]
    fn missing_partition_is_reported() {
        let t = tom(rows(&C6_ROWS));
        let mut partitions = partitions_of(&t);
        partitions.remove(&3);
        assert!(matches!(
            compute_invariant(&t, &partitions),
            Err(Error::MissingPrimePartition(3))
        ));
    }

    #[test]
    fn partition_size_mismatch_is_rejected() {
        let t = tom(rows(&C6_ROWS));
        let mut partitions = partitions_of(&t);
        partitions.insert(
            2,
            PrimePartition::from_blocks(2, 3, vec![vec![0, 1, 2]]).unwrap(),
        );
        assert!(matches!(
            compute_invariant(&t, &partitions),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn inconsistent_partition_trips_rank_check() {
        // Two components created by a diagonal-1 class, then a single prime
        // whose block meets both: the wedge count exceeds the prime count.
        let t = tom(vec![vec![4], vec![1, 1], vec![1, 1, 1]]);
        let partitions: BTreeMap<u64, PrimePartition> = [(
            2,
            PrimePartition::from_blocks(2, 3, vec![vec![0, 1, 2]]).unwrap(),
        )]
        .into_iter()
        .collect();
        assert!(matches!(
            compute_invariant(&t, &partitions),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn chi_of_examples() {
        assert_eq!(chi_of(&[]), 0);
        assert_eq!(chi_of(&[0]), 1);
        assert_eq!(chi_of(&[0, 0]), 2);
        assert_eq!(chi_of(&[1]), 0);
        assert_eq!(chi_of(&[6, 0, 0, 0]), -2);
    }

    #[test]
    fn solvable_rank_golden() {
        assert_eq!(solvable_rank(&tom(rows(&C6_ROWS))).unwrap(), 1);
        assert_eq!(solvable_rank(&tom(rows(&S3_ROWS))).unwrap(), 0);
        assert_eq!(solvable_rank(&tom(vec![vec![1]])).unwrap(), 0);
    }

    #[test]
    fn cyclic_rank_golden() {
        assert!(cyclic_rank(0).is_err());
        assert_eq!(cyclic_rank(1).unwrap(), 0);
        for pk in [2, 7, 8, 9, 125, 1024] {
            assert_eq!(cyclic_rank(pk).unwrap(), 0, "n = {pk}");
        }
        assert_eq!(cyclic_rank(6).unwrap(), 1);
        assert_eq!(cyclic_rank(12).unwrap(), 2);
        assert_eq!(cyclic_rank(30).unwrap(), 5);
    }

    #[test]
    fn ranked_components_pair_ranks_with_blocks() {
        let t = tom(rows(&A5_ROWS));
        let inv = compute_invariant(&t, &partitions_of(&t)).unwrap();
        let ranked = inv.ranked_components();
        assert_eq!(
            ranked,
            vec![(0, vec![0, 1, 2, 3, 4, 5, 6, 7]), (0, vec![8])]
        );
    }
}
