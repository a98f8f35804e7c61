// SPDX-License-Identifier: Apache-2.0

//! Named random streams derived from one seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::comm::BitString;
use crate::gadgets::{weight_bits, IdenticalLayout};
use crate::graph::{BlockPartition, Graph, Partition, Side};

/// ChaCha8 seeded by `seed`, on a stream chosen by hashing `name`.
pub fn named_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let digest = Sha256::digest(name.as_bytes());
    let stream = u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Random DISJ input of `len` bits, redrawn while all-ones.
pub fn random_disj_input<R: Rng + ?Sized>(len: usize, density: f64, rng: &mut R) -> BitString {
    loop {
        let b = BitString::from_bools((0..len).map(|_| rng.random_bool(density)).collect());
        if !b.is_all_ones() {
            return b;
        }
    }
}

/// Uniform weights in `[0, w_bound)` for the `C(k, 2)` clique pairs, packed
/// as an identical-subgraphs input.
pub fn random_clique_weights<R: Rng + ?Sized>(k: usize, w_bound: u64, rng: &mut R) -> BitString {
    let count = IdenticalLayout { k }.pair_count();
    let w: Vec<u64> = (0..count).map(|_| rng.random_range(0..w_bound)).collect();
    BitString::from_batches(&w, weight_bits(w_bound))
}

/// Connected graph: a random recursive tree plus each remaining pair with
/// probability `density`, weights uniform in `[0, w_max]`.
pub fn random_connected_graph<R: Rng + ?Sized>(
    n: usize,
    density: f64,
    w_max: u64,
    rng: &mut R,
) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v, rng.random_range(0..=w_max))
            .expect("fresh tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.random_bool(density) {
                g.add_edge(u, v, rng.random_range(0..=w_max))
                    .expect("fresh edge");
            }
        }
    }
    g
}

/// Uniform two-sided partition with node 0 on A and node `n-1` on B.
pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut sides: Vec<Side> = (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                Side::A
            } else {
                Side::B
            }
        })
        .collect();
    sides[0] = Side::A;
    sides[n - 1] = Side::B;
    Partition::new(sides)
}

/// Uniform assignment to `t` blocks, each block seeded with one node.
pub fn random_blocks<R: Rng + ?Sized>(n: usize, t: usize, rng: &mut R) -> BlockPartition {
    let mut block: Vec<usize> = (0..n).map(|_| rng.random_range(0..t)).collect();
    for (b, slot) in block.iter_mut().take(t).enumerate() {
        *slot = b;
    }
    BlockPartition::new(block, t).expect("every block nonempty")
}
