use std::collections::HashSet;

use super::{vertices_of, Mask, SimplicialComplex, SimplicialError};

pub const DEFAULT_SHELL_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    /// A shelling order of the facets.
    Shellable(Vec<Vec<usize>>),
    NotShellable,
    /// More facets than the search cap; no verdict was reached.
    Undecided { facets: usize, cap: usize },
}

impl ShellingVerdict {
    pub fn is_shellable(&self) -> Option<bool> {
        match self {
            ShellingVerdict::Shellable(_) => Some(true),
            ShellingVerdict::NotShellable => Some(false),
            ShellingVerdict::Undecided { .. } => None,
        }
    }
}

pub fn is_shellable(k: &SimplicialComplex) -> Result<ShellingVerdict, SimplicialError> {
    is_shellable_with_cap(k, DEFAULT_SHELL_CAP)
}

/// Exhaustive search for a shelling of a pure complex.
///
/// Whether facet `F` may follow a set `P` of earlier facets depends only on
/// the set, so failed sets are memoized; the search is over subsets.
pub fn is_shellable_with_cap(k: &SimplicialComplex, cap: usize) -> Result<ShellingVerdict, SimplicialError> {
    if !k.is_pure() {
        let sizes = k.facet_masks().iter().map(|m| m.count_ones() as usize).collect();
        return Err(SimplicialError::NotPure { sizes });
    }
    let facets = k.facet_masks();
    if facets.len() > cap || facets.len() > 63 {
        return Ok(ShellingVerdict::Undecided { facets: facets.len(), cap });
    }
    let mut search = Search { facets, dead: HashSet::new(), order: Vec::new() };
    if search.extend(0) {
        let witness = search.order.iter().map(|&i| vertices_of(facets[i])).collect();
        Ok(ShellingVerdict::Shellable(witness))
    } else {
        Ok(ShellingVerdict::NotShellable)
    }
}

struct Search<'a> {
    facets: &'a [Mask],
    dead: HashSet<u64>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Codimension-one faces of `facets[f]` already covered by the facets in `used`,
    /// or `None` if `facets[f] ∩ (∪ used)` is not pure of codimension one.
    fn ridges_into(&self, f: usize, used: u64) -> Option<usize> {
        let face = self.facets[f];
        let size = face.count_ones();
        let meets: Vec<Mask> = (0..self.facets.len())
            .filter(|&j| used & (1 << j) != 0)
            .map(|j| self.facets[j] & face)
            .collect();
        if meets.is_empty() {
            return Some(0);
        }
        let ridges: HashSet<Mask> = meets.iter().copied().filter(|m| m.count_ones() + 1 == size).collect();
        let pure = meets.iter().all(|&m| ridges.iter().any(|&r| r & m == m));
        pure.then_some(ridges.len())
    }

    fn extend(&mut self, used: u64) -> bool {
        let n = self.facets.len();
        if used.count_ones() as usize == n {
            return true;
        }
        if self.dead.contains(&used) {
            return false;
        }
        let mut candidates: Vec<(usize, usize)> = (0..n)
            .filter(|&f| used & (1 << f) == 0)
            .filter_map(|f| self.ridges_into(f, used).map(|r| (f, r)))
            .collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (f, _) in candidates {
            self.order.push(f);
            if self.extend(used | (1 << f)) {
                return true;
            }
            self.order.pop();
        }
        self.dead.insert(used);
        false
    }
}

/// Checks a proposed shelling order directly against the definition.
pub fn is_shelling_order(order: &[Vec<usize>]) -> bool {
    let masks: Vec<Mask> = order.iter().map(|f| super::mask_of(f)).collect();
    (1..masks.len()).all(|k| {
        let face = masks[k];
        let size = face.count_ones();
        let meets: Vec<Mask> = masks[..k].iter().map(|&m| m & face).collect();
        meets.iter().all(|&m| meets.iter().any(|&r| r.count_ones() + 1 == size && r & m == m))
    })
}
