// SPDX-License-Identifier: Apache-2.0

//! Batch checks of the construction lemmas: generator, exact oracle and
//! communication function on many `(x, y)` pairs.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::comm::{disj, eq, BitString};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gadgets::{
    build_approx_coloring, build_coloring3_with_fault, build_mvc_with_fault, build_weighted_cycle,
    construct_3coloring, construct_mvc_cover, cycle_input_edge_count, decode_star_row,
    extend_coloring_c, mvc_cover_size, BuildFault, CycleLayout, InstanceKind, LowerBoundInstance,
};
use crate::oracles::{
    check_identical, chromatic_number, cycles_with_weight, is_c_colorable, min_vc_size,
    verify_coloring, verify_vertex_cover, Bounded,
};
use crate::rng::named_rng;

/// Largest `k^2` for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_BITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Sampling {
    Exhaustive,
    /// `count` pairs whose bits are set independently with probability
    /// `density`.
    Sample {
        count: usize,
        seed: u64,
        density: f64,
    },
    /// Every pair of strings with at most `max_ones` set bits.
    Sparse {
        max_ones: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSpec {
    pub kind: InstanceKind,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<BuildFault>,
}

impl LemmaSpec {
    pub fn new(kind: InstanceKind, k: usize) -> Self {
        LemmaSpec {
            kind,
            k,
            c: None,
            fault: None,
        }
    }

    pub fn with_c(mut self, c: usize) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_fault(mut self, fault: BuildFault) -> Self {
        self.fault = Some(fault);
        self
    }

    fn c(&self) -> Result<usize> {
        self.c
            .ok_or(Error::Parse(format!("{} needs --c", self.kind)))
    }

    /// Whether `(x, y)` yields a valid instance for this family.
    fn admissible(&self, x: &BitString, y: &BitString) -> bool {
        let both_zero = x.is_all_zeros() && y.is_all_zeros();
        !x.is_all_ones() && !y.is_all_ones() && !(self.kind == InstanceKind::Cycle8 && both_zero)
    }

    pub fn build(&self, x: &BitString, y: &BitString) -> Result<LowerBoundInstance> {
        match self.kind {
            InstanceKind::Mvc => build_mvc_with_fault(self.k, x, y, self.fault),
            InstanceKind::Coloring3 => build_coloring3_with_fault(self.k, x, y, self.fault),
            InstanceKind::ColoringC => extend_coloring_c(
                &build_coloring3_with_fault(self.k, x, y, self.fault)?,
                self.c()?,
            ),
            InstanceKind::ColoringApprox => build_approx_coloring(self.k, self.c()?, x, y),
            InstanceKind::Cycle8 => build_weighted_cycle(self.k, x, y),
            other => Err(Error::WrongKind {
                expected: "a DISJ family (mvc, col3, colc, colapprox, cycle8)",
                got: other.name(),
            }),
        }
    }
}

/// The input pairs of a sweep, in canonical order.
pub fn lemma_pairs(spec: &LemmaSpec, sampling: Sampling) -> Result<Vec<(BitString, BitString)>> {
    let bits = spec.k * spec.k;
    let strings: Vec<BitString> = match sampling {
        Sampling::Exhaustive => {
            if bits > MAX_EXHAUSTIVE_BITS {
                return Err(Error::Parse(format!(
                    "exhaustive sweep over {bits}-bit strings is too large"
                )));
            }
            (0..1u64 << bits)
                .map(|v| BitString::from_uint(v, bits))
                .collect()
        }
        Sampling::Sparse { max_ones } => sparse_strings(bits, max_ones),
        Sampling::Sample {
            count,
            seed,
            density,
        } => {
            let mut rng = named_rng(seed, "lemma-pairs");
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let mut draw =
                    || BitString::from_bools((0..bits).map(|_| rng.random_bool(density)).collect());
                let (x, y) = (draw(), draw());
                if spec.admissible(&x, &y) {
                    out.push((x, y));
                }
            }
            return Ok(out);
        }
    };
    let mut out = Vec::new();
    for x in &strings {
        for y in &strings {
            if spec.admissible(x, y) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// Strings of length `len` with at most `max_ones` ones, by popcount then
/// lexicographically by positions.
fn sparse_strings(len: usize, max_ones: usize) -> Vec<BitString> {
    fn rec(len: usize, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<BitString>) {
        if left == 0 {
            let mut b = BitString::zeros(len);
            for &i in cur.iter() {
                b.set(i, true);
            }
            out.push(b);
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(len, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for ones in 0..=max_ones.min(len) {
        rec(len, 0, ones, &mut Vec::new(), &mut out);
    }
    out
}

/// Oracle verdict on one instance next to the communication function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Whether the graph predicate holds: cover of size `M`, `c`-colorable,
    /// 8-cycle of weight `2k^3`, `chi = 3c`, identical cliques, or the star
    /// row decoding to `x`.
    pub predicate: bool,
    /// Minimum cover size or chromatic number when the oracle reports one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    /// Cover nodes, coloring, or cycle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// Result of checking the explicit witness from the construction proof.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_ok: Option<bool>,
    /// `f(x, y)`: DISJ, or EQ for identical subgraphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_value: Option<bool>,
    pub matches_lemma: bool,
}

/// Runs the exact oracle for `inst.kind` and compares with `f(x, y)`.
pub fn evaluate(inst: &LowerBoundInstance) -> Result<Verdict> {
    let g = &inst.graph;
    let k = inst.params.k;
    let missing = || Error::Parse("instance has no x/y inputs".into());
    let x = inst.x.as_ref().ok_or_else(missing)?;
    if inst.kind == InstanceKind::ApspStar {
        let row = crate::graph::sssp(g, g.n() - 1);
        let ok = decode_star_row(g.n(), &row).as_ref() == Some(x);
        return Ok(Verdict {
            predicate: ok,
            value: None,
            witness: None,
            witness_ok: None,
            f_value: None,
            matches_lemma: ok,
        });
    }
    let y = inst.y.as_ref().ok_or_else(missing)?;
    if inst.kind == InstanceKind::Identical {
        let same = check_identical(inst)?;
        let f = eq(x, y)?;
        return Ok(Verdict {
            predicate: same,
            value: None,
            witness: None,
            witness_ok: None,
            f_value: Some(f),
            matches_lemma: same == f,
        });
    }
    let d = disj(x, y)?;
    let shared = (0..k * k)
        .find(|&l| x.get(l) && y.get(l))
        .map(|l| (l / k, l % k));
    let c_param = || {
        inst.params
            .c
            .ok_or_else(|| Error::Parse(format!("{} instance has no c", inst.kind)))
    };
    let (predicate, value, witness, witness_ok, extra) = match inst.kind {
        InstanceKind::Mvc => {
            let m = mvc_cover_size(k);
            let best = min_vc_size(g, m + 1);
            let witness_ok = match shared {
                Some((i, j)) => {
                    let cover = construct_mvc_cover(inst, i, j)?;
                    Some(cover.len() == m && verify_vertex_cover(g, &cover))
                }
                None => None,
            };
            let pred = best.value().is_some_and(|v| v <= m);
            (
                pred,
                best.value(),
                best.witness().map(<[usize]>::to_vec),
                witness_ok,
                true,
            )
        }
        InstanceKind::Coloring3 | InstanceKind::ColoringC => {
            let coloring = is_c_colorable(g, c_param()?);
            let witness_ok = match (inst.kind, shared) {
                (InstanceKind::Coloring3, Some((i, j))) => {
                    Some(verify_coloring(g, &construct_3coloring(inst, i, j)?)?)
                }
                _ => None,
            };
            (coloring.is_some(), None, coloring, witness_ok, true)
        }
        InstanceKind::ColoringApprox => {
            let c = c_param()?;
            let chi = chromatic_number(g, 3 * c);
            let witness_ok = match &chi {
                Bounded::Exact { witness, .. } => Some(verify_coloring(g, witness)?),
                Bounded::Exceeds => None,
            };
            // chi = 3c when DISJ is false, chi > 3c (reported as None) otherwise.
            let exact_3c = chi.value() == Some(3 * c);
            let at_least = chi.value().is_none_or(|v| v >= 3 * c);
            (
                exact_3c,
                chi.value(),
                chi.witness().map(<[usize]>::to_vec),
                witness_ok,
                at_least,
            )
        }
        InstanceKind::Cycle8 => {
            let layout = CycleLayout { k };
            let cycles = cycles_with_weight(g, 8, layout.target_weight());
            let two_inputs = cycles
                .iter()
                .all(|c| cycle_input_edge_count(&layout, c) == 2);
            (
                !cycles.is_empty(),
                None,
                cycles.into_iter().next(),
                None,
                two_inputs,
            )
        }
        InstanceKind::Identical | InstanceKind::ApspStar => unreachable!("handled above"),
    };
    Ok(Verdict {
        predicate,
        value,
        witness,
        witness_ok,
        f_value: Some(d),
        matches_lemma: predicate == !d && extra && witness_ok != Some(false),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub x: BitString,
    pub y: BitString,
    pub disj: bool,
    pub predicate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_ok: Option<bool>,
    pub holds: bool,
}

/// Builds the instance for `(x, y)` and checks the lemma's equivalence.
pub fn check_pair(spec: &LemmaSpec, x: &BitString, y: &BitString) -> Result<PairOutcome> {
    let v = evaluate(&spec.build(x, y)?)?;
    Ok(PairOutcome {
        x: x.clone(),
        y: y.clone(),
        disj: v.f_value.unwrap_or(false),
        predicate: v.predicate,
        measure: v.value,
        witness_ok: v.witness_ok,
        holds: v.matches_lemma,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSummary {
    pub spec: LemmaSpec,
    pub pairs: usize,
    pub disj_true: usize,
    pub disj_false: usize,
    pub failures: Vec<PairOutcome>,
}

impl LemmaSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All outcomes of a sweep, in pair order.
pub fn sweep(spec: &LemmaSpec, sampling: Sampling, exec: Exec) -> Result<Vec<PairOutcome>> {
    let pairs = lemma_pairs(spec, sampling)?;
    exec.map(&pairs, |(x, y)| check_pair(spec, x, y))
        .into_iter()
        .collect()
}

pub fn summarize(spec: &LemmaSpec, outcomes: &[PairOutcome]) -> LemmaSummary {
    LemmaSummary {
        spec: *spec,
        pairs: outcomes.len(),
        disj_true: outcomes.iter().filter(|o| o.disj).count(),
        disj_false: outcomes.iter().filter(|o| !o.disj).count(),
        failures: outcomes.iter().filter(|o| !o.holds).cloned().collect(),
    }
}
