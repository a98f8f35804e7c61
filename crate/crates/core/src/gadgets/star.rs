// SPDX-License-Identifier: Apache-2.0

//! Weighted star whose spoke weights carry Alice's string to Bob's single node.

use super::{InstanceKind, LowerBoundInstance, Params};
use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, Partition};

/// Bits per spoke weight, `ceil(log2 n)`.
pub fn star_batch_width(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// Nodes `a_0..a_{n-3}` are the spokes, `n-2` is the hub `a`, `n-1` is `b`.
pub fn build_apsp_star(n: usize, x: &BitString) -> Result<LowerBoundInstance> {
    if n < 3 {
        return Err(Error::ParameterTooSmall {
            name: "n",
            value: n,
            min: 3,
        });
    }
    let width = star_batch_width(n);
    let expected = (n - 2) * width;
    if x.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            got: x.len(),
        });
    }
    let weights = x.batches(width)?;
    let mut labels: Vec<String> = (0..n - 2).map(|i| format!("a[{i}]")).collect();
    labels.push("a".into());
    labels.push("b".into());
    let mut g = Graph::with_labels(labels);
    let (hub, b) = (n - 2, n - 1);
    for (i, &w) in weights.iter().enumerate() {
        g.add_edge(i, hub, w)?;
    }
    g.add_edge(hub, b, 0)?;
    Ok(LowerBoundInstance {
        kind: InstanceKind::ApspStar,
        partition: Partition::from_a_side(n, 0..n - 1),
        graph: g,
        params: Params {
            k: n,
            c: None,
            n,
            w_max: (1u64 << width) - 1,
            w_bound: None,
        },
        x: Some(x.clone()),
        y: None,
    })
}

/// Recovers Alice's string from `b`'s row of distances.
pub fn decode_star_row(n: usize, row_of_b: &[Distance]) -> Option<BitString> {
    let width = star_batch_width(n);
    let weights = row_of_b[..n - 2]
        .iter()
        .map(|d| d.finite())
        .collect::<Option<Vec<u64>>>()?;
    if weights.iter().any(|&w| w >> width != 0) {
        return None;
    }
    Some(BitString::from_batches(&weights, width))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_node_star() {
        let x = BitString::from_bits_str("0110").unwrap();
        let inst = build_apsp_star(4, &x).unwrap();
        assert_eq!(inst.graph.weight(0, 2), Some(1));
        assert_eq!(inst.graph.weight(1, 2), Some(2));
        assert_eq!(inst.graph.weight(2, 3), Some(0));
        assert_eq!(inst.cut().len(), 1);
        assert!(build_apsp_star(4, &BitString::zeros(3)).is_err());
    }

    #[test]
    fn batch_width() {
        assert_eq!(star_batch_width(4), 2);
        assert_eq!(star_batch_width(8), 3);
        assert_eq!(star_batch_width(9), 4);
    }
}
