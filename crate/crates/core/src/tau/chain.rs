use crate::exact::{SeriesError, SeriesRing};

use super::{tau_step, classify, Qfe, TauCase, TauError, TauRelation};

/// Why a chain cannot be extended further.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainEnd {
    /// The last node's components ran out of coefficients.
    Exhausted(SeriesError),
    /// The next node would be the zero series.
    ZeroSolution,
}

/// Successive images `F_0 -> F_1 -> ...` under the transformation, with the
/// relation linking each node to the next. Extended lazily and kept.
#[derive(Debug, Clone)]
pub struct TauChain<S> {
    nodes: Vec<Qfe<S>>,
    relations: Vec<TauRelation>,
    /// `shifts[i]`: total index shift from node 0 to node `i`.
    shifts: Vec<usize>,
    end: Option<ChainEnd>,
}

/// Structural signature of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct NodeShape {
    pub d: usize,
    pub k: usize,
    pub case: TauCase,
}

/// A repeating tail of the chain fingerprint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChainPeriod {
    /// Nodes before the periodic part starts.
    pub head: usize,
    /// Period in nodes, counting normalization steps.
    pub nodes: usize,
    /// Period counting only the index-shifting steps.
    pub shift_steps: usize,
    /// Total index shift accumulated over one period.
    pub index_shift: usize,
}

impl<S: SeriesRing> TauChain<S> {
    pub fn new(root: Qfe<S>) -> Self {
        Self {
            nodes: vec![root],
            relations: Vec::new(),
            shifts: vec![0],
            end: None,
        }
    }

    pub fn nodes(&self) -> &[Qfe<S>] {
        &self.nodes
    }

    pub fn relations(&self) -> &[TauRelation] {
        &self.relations
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn end(&self) -> Option<&ChainEnd> {
        self.end.as_ref()
    }

    pub fn is_exhausted(&self) -> bool {
        self.end.is_some()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total index shift reached by the last node.
    pub fn total_shift(&self) -> usize {
        *self.shifts.last().expect("chain has a root")
    }

    /// Appends one node. Returns `false` once the chain has ended.
    pub fn extend_one(&mut self) -> Result<bool, TauError> {
        if self.end.is_some() {
            return Ok(false);
        }
        let last = self.nodes.last().expect("chain has a root");
        match tau_step(last) {
            Ok((next, rel)) => {
                debug_assert!(rel.is_consistent(last.d));
                let shift = self.total_shift() + rel.index_shift;
                self.nodes.push(next);
                self.relations.push(rel);
                self.shifts.push(shift);
                Ok(true)
            }
            Err(TauError::ZeroSolution) => {
                self.end = Some(ChainEnd::ZeroSolution);
                Ok(false)
            }
            Err(TauError::Series(e)) => {
                self.end = Some(ChainEnd::Exhausted(e));
                Ok(false)
            }
            Err(e) => Err(e),
        }
    }

    /// Extends until the total shift exceeds `target` or the chain ends.
    pub fn extend_past_shift(&mut self, target: usize) -> Result<(), TauError> {
        while self.total_shift() <= target {
            if !self.extend_one()? {
                break;
            }
        }
        Ok(())
    }

    /// Extends to at least `n` nodes or until the chain ends.
    pub fn extend_to_len(&mut self, n: usize) -> Result<(), TauError> {
        while self.nodes.len() < n {
            if !self.extend_one()? {
                break;
            }
        }
        Ok(())
    }

    /// `(d, k, case)` per node that has an outgoing relation.
    pub fn fingerprint(&self) -> Vec<NodeShape> {
        self.nodes
            .iter()
            .zip(&self.relations)
            .map(|(q, rel)| NodeShape {
                d: q.d,
                k: q.k,
                case: rel.case,
            })
            .collect()
    }

    /// Shape of the last node, which has no outgoing relation yet.
    pub fn last_shape(&self) -> NodeShape {
        let q = self.nodes.last().expect("chain has a root");
        NodeShape {
            d: q.d,
            k: q.k,
            case: classify(q),
        }
    }

    /// Smallest structural period of the fingerprint; see [`detect_chain_period`].
    pub fn period(&self, min_repeats: usize) -> Option<ChainPeriod> {
        detect_chain_period(&self.fingerprint(), &self.shifts, min_repeats)
    }
}

/// The smallest `q` for which the fingerprint is `q`-periodic from an offset
/// no longer than one period, with at least `min_repeats` full periods in
/// the periodic part. Bounding the offset keeps a long run of identical
/// shapes at the end of a short chain from passing as the period.
pub fn detect_chain_period(
    shape: &[NodeShape],
    shifts: &[usize],
    min_repeats: usize,
) -> Option<ChainPeriod> {
    let n = shape.len();
    let min_repeats = min_repeats.max(2);
    for q in 1..=n / min_repeats {
        // first index from which shape[i] == shape[i + q] holds to the end
        let mut head = n - q;
        while head > 0 && shape[head - 1] == shape[head - 1 + q] {
            head -= 1;
        }
        if head <= q && n - head >= min_repeats * q {
            let shift_steps = shape[head..head + q]
                .iter()
                .filter(|s| s.case != TauCase::Normalize)
                .count();
            return Some(ChainPeriod {
                head,
                nodes: q,
                shift_steps,
                index_shift: shifts[head + q] - shifts[head],
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: usize, k: usize, case: TauCase) -> NodeShape {
        NodeShape { d, k, case }
    }

    #[test]
    fn constant_chain_has_period_one() {
        let shape = vec![s(0, 2, TauCase::ShiftKGe2); 6];
        let shifts: Vec<usize> = (0..=6).collect();
        let p = detect_chain_period(&shape, &shifts, 3).unwrap();
        assert_eq!((p.head, p.nodes, p.index_shift), (0, 1, 1));
    }

    #[test]
    fn head_then_period_two() {
        let a = s(0, 6, TauCase::ShiftKGe2);
        let b = s(1, 2, TauCase::Normalize);
        let c = s(1, 2, TauCase::ShiftKGe2);
        let shape = vec![a, b, c, b, c, b, c, b, c];
        let shifts = vec![0, 1, 1, 3, 3, 5, 5, 7, 7, 9];
        let p = detect_chain_period(&shape, &shifts, 3).unwrap();
        assert_eq!(p.head, 1);
        assert_eq!(p.nodes, 2);
        assert_eq!(p.shift_steps, 1);
        assert_eq!(p.index_shift, 2);
    }

    #[test]
    fn aperiodic() {
        let shape: Vec<_> = (0..5).map(|d| s(d, 2, TauCase::ShiftKGe2)).collect();
        let shifts: Vec<usize> = (0..=5).collect();
        assert_eq!(detect_chain_period(&shape, &shifts, 2), None);
    }
}
