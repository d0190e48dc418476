use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{check_size, Partition, PointSet};
use crate::topology::FiniteTopology;
use crate::uniformity::DiagonalBasis;

/// Largest carrier for exhaustive topology enumeration.
pub const MAX_TOPOLOGY_POINTS: usize = 4;
/// Largest carrier for partition-based enumerations and sampling.
pub const MAX_SAMPLED_POINTS: usize = 8;

/// Every topology on `0..n`, `n ≤ 4`, in canonical order.
///
/// Families of subsets are bitmasks indexed by subset. Starting from
/// `{∅, X}`, each reached topology is extended by one more subset and closed
/// under union and intersection until no new family appears. Every topology
/// is reached by adding its own opens one at a time.
pub fn topologies(n: usize) -> Result<Vec<FiniteTopology>> {
    check_size(n)?;
    if n > MAX_TOPOLOGY_POINTS {
        return Err(Error::Enumeration(format!(
            "topologies need n ≤ {MAX_TOPOLOGY_POINTS}, got {n}"
        )));
    }
    let subsets = 1usize << n;
    let start = 1u64 | 1u64 << (subsets - 1);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(family) = queue.pop_front() {
        for s in 0..subsets {
            if family & (1 << s) == 0 {
                let next = close_family(family | 1 << s, subsets);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out: Vec<FiniteTopology> = seen
        .into_iter()
        .map(|family| {
            let opens = (0..subsets)
                .filter(|s| family & (1 << s) != 0)
                .map(|s| PointSet::from_bits(s as u64));
            FiniteTopology::new(n, opens).expect("subsets of the carrier")
        })
        .collect();
    out.sort_by(|a, b| {
        a.opens()
            .len()
            .cmp(&b.opens().len())
            .then_with(|| cmp_families(a.opens(), b.opens()))
    });
    Ok(out)
}

fn cmp_families(a: &[PointSet], b: &[PointSet]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.canonical_cmp(y);
        if c.is_ne() {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

fn close_family(mut family: u64, subsets: usize) -> u64 {
    loop {
        let mut next = family;
        for a in 0..subsets {
            if family & (1 << a) == 0 {
                continue;
            }
            for b in 0..subsets {
                if family & (1 << b) != 0 {
                    next |= 1 << (a | b);
                    next |= 1 << (a & b);
                }
            }
        }
        if next == family {
            return family;
        }
        family = next;
    }
}

/// Every partition of `0..n` via restricted growth strings.
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    check_size(n)?;
    if n > MAX_SAMPLED_POINTS {
        return Err(Error::Enumeration(format!(
            "partitions need n ≤ {MAX_SAMPLED_POINTS}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut labels = alloc::vec![0usize; n];
    grow(&mut labels, 1, 0, &mut out);
    Ok(out)
}

fn grow(labels: &mut [usize], pos: usize, max: usize, out: &mut Vec<Partition>) {
    let n = labels.len();
    if pos == n {
        let mut blocks = alloc::vec![PointSet::EMPTY; max + 1];
        for (x, &l) in labels.iter().enumerate() {
            blocks[l].insert(x);
        }
        out.push(Partition::from_blocks_unchecked(n, blocks));
        return;
    }
    for l in 0..=max + 1 {
        labels[pos] = l;
        grow(labels, pos + 1, max.max(l), out);
    }
}

/// One basis `{D}` per equivalence relation: on a finite carrier every
/// uniformity is generated by its least entourage.
pub fn uniformities(n: usize) -> Result<Vec<DiagonalBasis>> {
    Ok(partitions(n)?
        .iter()
        .map(|p| DiagonalBasis::single(p.to_relation()))
        .collect())
}

/// Every basis of `1..=max_generators` distinct equivalence relations,
/// by size and then lexicographically in partition order.
pub fn equivalence_bases(n: usize, max_generators: usize) -> Result<Vec<DiagonalBasis>> {
    let relations: Vec<_> = partitions(n)?.iter().map(Partition::to_relation).collect();
    let mut out = Vec::new();
    for k in 1..=max_generators.min(relations.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let basis = DiagonalBasis::new(n, idx.iter().map(|&i| relations[i].clone()))?;
            out.push(basis);
            if !next_combination(&mut idx, relations.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let topo: Vec<usize> = (1..=3).map(|n| topologies(n).unwrap().len()).collect();
        assert_eq!(topo, [1, 4, 29]);
        let bell: Vec<usize> = (1..=5).map(|n| partitions(n).unwrap().len()).collect();
        assert_eq!(bell, [1, 2, 5, 15, 52]);
    }

    #[test]
    fn enumerated_topologies_are_valid_and_distinct() {
        let all = topologies(3).unwrap();
        assert!(all.iter().all(FiniteTopology::is_valid));
        for (i, a) in all.iter().enumerate() {
            assert!(all[i + 1..].iter().all(|b| a != b));
        }
        assert_eq!(all[0], FiniteTopology::indiscrete(3));
        assert_eq!(all.last().unwrap(), &FiniteTopology::discrete(3).unwrap());
    }

    #[test]
    fn equivalence_basis_counts() {
        // C(5,1) + C(5,2)
        assert_eq!(equivalence_bases(3, 2).unwrap().len(), 15);
        // C(15,1) + C(15,2) + C(15,3)
        assert_eq!(equivalence_bases(4, 3).unwrap().len(), 575);
    }

    #[test]
    fn limits() {
        assert!(topologies(5).is_err());
        assert!(partitions(9).is_err());
    }
}
