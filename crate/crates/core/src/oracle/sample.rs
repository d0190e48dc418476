//! Seeded random instances. All generators take the RNG by reference so a
//! single seed reproduces a whole sweep.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use crate::finite::{Partition, PointSet, Relation, UnionFind};
use crate::pseudometric::{Distance, Pseudometric};
use crate::uniformity::{Cover, CoverBasis, DiagonalBasis};

pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Partition {
    let k = rng.gen_range(1..=n);
    let mut blocks = alloc::vec![PointSet::EMPTY; k];
    for x in 0..n {
        blocks[rng.gen_range(0..k)].insert(x);
    }
    blocks.retain(|b| !b.is_empty());
    Partition::from_blocks_unchecked(n, blocks)
}

/// `1..=max_generators` random equivalence relations.
pub fn random_equivalence_basis<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_generators: usize,
) -> DiagonalBasis {
    let k = rng.gen_range(1..=max_generators.max(1));
    DiagonalBasis::new(n, (0..k).map(|_| random_partition(rng, n).to_relation()))
        .expect("nonempty basis")
}

/// A valid basis whose generators are mostly not equivalence relations.
///
/// Each generator is a random equivalence `E` plus random extra pairs, so
/// it is reflexive and contains `E`. If the generators alone intersect to
/// something other than an equivalence relation, `E` itself is appended;
/// either way the least entourage is an equivalence contained in every
/// generator, which makes the basis valid.
pub fn random_valid_basis<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DiagonalBasis {
    let core = random_partition(rng, n).to_relation();
    let k = rng.gen_range(1..=3);
    let mut generators: Vec<Relation> = (0..k)
        .map(|_| {
            let mut d = core.clone();
            for _ in 0..rng.gen_range(0..=n) {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                d.insert(x, y);
            }
            d
        })
        .collect();
    let min = generators
        .iter()
        .skip(1)
        .fold(generators[0].clone(), |acc, d| acc.intersection(d).expect("shared carrier"));
    if !min.is_equivalence() {
        generators.push(core);
    }
    DiagonalBasis::new(n, generators).expect("nonempty basis")
}

/// A valid cover basis whose covers mostly overlap.
///
/// Every set of every cover is a union of blocks of a random partition `P`,
/// optionally enlarged by random extra points: either blocks grown in
/// place, or blocks assigned to one or two of several overlapping groups.
/// If the covers alone are not star-refined by their meet, `P` itself is
/// added; its blocks then bound every star, so the basis is valid.
pub fn random_valid_cover_basis<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CoverBasis {
    let p = random_partition(rng, n);
    let blocks = p.blocks();
    let mut covers = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let sets: Vec<PointSet> = if rng.gen_bool(0.5) {
            blocks
                .iter()
                .map(|&b| {
                    let extra: PointSet = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
                    b.union(extra)
                })
                .collect()
        } else {
            let groups = rng.gen_range(1..=blocks.len());
            let mut sets = alloc::vec![PointSet::EMPTY; groups];
            for &b in blocks {
                let g = rng.gen_range(0..groups);
                sets[g] = sets[g].union(b);
                let g = rng.gen_range(0..groups);
                if rng.gen_bool(0.4) {
                    sets[g] = sets[g].union(b);
                }
            }
            sets.retain(|s| !s.is_empty());
            sets
        };
        if let Ok(cover) = Cover::new(n, sets) {
            covers.push(cover);
        }
    }
    if covers.is_empty() {
        covers.push(Cover::from_partition(&p));
    }
    let basis = CoverBasis::new(n, covers.iter().cloned()).expect("nonempty cover basis");
    if basis.is_valid() {
        return basis;
    }
    covers.push(Cover::from_partition(&p));
    CoverBasis::new(n, covers).expect("nonempty cover basis")
}

/// A random non-Archimedean pseudo-metric built as a dendrogram.
///
/// Points start in random zero-distance classes; classes are then merged
/// level by level, and points first joined at a level get that level's
/// value. Level values increase by random positive rationals.
pub fn random_na_pseudometric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Pseudometric {
    let base = random_partition(rng, n);
    let mut uf = UnionFind::new(n);
    for block in base.blocks() {
        let first = block.first().expect("nonempty block");
        for x in *block {
            uf.union(first, x);
        }
    }
    let mut dist = alloc::vec![Distance::zero(); n * n];
    let mut level = Distance::zero();
    loop {
        let classes = uf.classes();
        if classes.len() == 1 {
            break;
        }
        level += Distance::new(rng.gen_range(1..=5), rng.gen_range(1..=4));
        for _ in 0..rng.gen_range(1..classes.len()) {
            let current = uf.classes();
            if current.len() == 1 {
                break;
            }
            let i = rng.gen_range(0..current.len());
            let mut j = rng.gen_range(0..current.len() - 1);
            if j >= i {
                j += 1;
            }
            for x in current[i] {
                for y in current[j] {
                    dist[x * n + y] = level;
                    dist[y * n + x] = level;
                }
            }
            uf.union(current[i].first().unwrap(), current[j].first().unwrap());
        }
    }
    Pseudometric::from_table_unchecked(n, dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            assert!(random_valid_basis(&mut rng, n).is_valid());
            assert!(random_valid_cover_basis(&mut rng, n).is_valid());
            assert!(random_equivalence_basis(&mut rng, n, 3)
                .entourages()
                .iter()
                .all(Relation::is_equivalence));
            let d = random_na_pseudometric(&mut rng, n);
            assert!(Pseudometric::new(n, d.table().to_vec()).is_ok());
            assert!(d.is_non_archimedean());
        }
    }

    #[test]
    fn valid_bases_are_not_all_equivalences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mixed = (0..100)
            .map(|_| random_valid_basis(&mut rng, 5))
            .filter(|b| !b.entourages().iter().all(Relation::is_equivalence))
            .count();
        assert!(mixed > 50);
    }

    #[test]
    fn same_seed_same_instances() {
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..20).map(|_| random_valid_basis(&mut rng, 6)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b: Vec<_> = (0..20).map(|_| random_valid_basis(&mut rng, 6)).collect();
        assert_eq!(a, b);
    }
}
