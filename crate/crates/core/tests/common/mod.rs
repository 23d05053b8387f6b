#![allow(dead_code)]

use polywalk::exactla::Rational;
use polywalk::families::*;
use polywalk::polyhedron::Polyhedron;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20_240_601;

pub fn skew(n: usize, seed: u64) -> Skew {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Skew { matrix: random_unimodular(&mut rng, n), shift: vec![Rational::from(0); n] }
}

pub fn parallelotopes() -> Vec<Polyhedron> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for d in 1..=n {
            out.push(nd_parallelotope(n, d, None).unwrap());
            if n >= 2 {
                out.push(nd_parallelotope(n, d, Some(&skew(n, 100 * n as u64 + d as u64))).unwrap());
            }
        }
    }
    out
}

pub fn transportation_fixtures() -> Vec<Polyhedron> {
    let specs: [(&[u64], &[u64]); 5] =
        [(&[1, 2, 2], &[1, 2, 2]), (&[1, 1], &[1, 1]), (&[2, 1], &[1, 2]), (&[1, 1, 1], &[1, 1, 1]), (&[3, 1], &[2, 1, 1])];
    specs
        .iter()
        .map(|(u, v)| transportation(&TransportationSpec::new(u.to_vec(), v.to_vec())).unwrap())
        .collect()
}

pub fn matroid_fixtures() -> Vec<Polyhedron> {
    vec![
        matroid_polytope(&MatroidSpec::uniform(4, 3).unwrap()).unwrap(),
        matroid_polytope(&MatroidSpec::uniform(3, 2).unwrap()).unwrap(),
        matroid_polytope(&MatroidSpec::uniform(4, 2).unwrap()).unwrap(),
        matroid_polytope(&MatroidSpec::graphic(&[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap()).unwrap(),
    ]
}

pub fn partition_fixtures() -> Vec<Polyhedron> {
    vec![
        partition_bounded(&PartitionSpec::bounded(3, vec![0, 0], vec![3, 3])).unwrap(),
        partition_bounded(&PartitionSpec::bounded(3, vec![1, 0, 0], vec![2, 2, 2])).unwrap(),
        partition_bounded(&PartitionSpec::bounded(4, vec![1, 1], vec![3, 3])).unwrap(),
        partition_bounded(&PartitionSpec::bounded(4, vec![0, 1, 1], vec![2, 2, 2])).unwrap(),
        partition_fixed(&PartitionSpec::fixed(3, vec![1, 2])).unwrap(),
        partition_fixed(&PartitionSpec::fixed(3, vec![1, 1, 1])).unwrap(),
        partition_fixed(&PartitionSpec::fixed(4, vec![2, 2])).unwrap(),
    ]
}

pub fn random_simple() -> Vec<Polyhedron> {
    random_simple_polytopes(24, 4, 10, seed_from_env(SEED))
}

/// Every named fixture: planar examples, the 3D 0/1 example, cubes,
/// transportation, matroid, partition and (n,d)-parallelotope instances.
pub fn battery() -> Vec<Polyhedron> {
    let mut out: Vec<Polyhedron> = [Fig2::A, Fig2::B, Fig2::C, Fig2::D].into_iter().map(fig2).collect();
    out.push(fig3_polytope());
    out.extend((2..=4).map(unit_cube));
    out.extend(transportation_fixtures());
    out.extend(matroid_fixtures());
    out.extend(partition_fixtures());
    out.extend(parallelotopes());
    out
}

pub fn label(p: &Polyhedron) -> String {
    p.name().unwrap_or("unnamed").to_string()
}
