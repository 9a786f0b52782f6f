use std::collections::BTreeSet;
use std::fmt::Debug;

use crate::error::{Error, Result};

/// `V_n = B_n \ (B_0 ∪ ... ∪ B_{n-1})`, dropping empty sets; each result is
/// tagged with the index of the set it came from.
pub fn disjointify_indexed<T: Ord + Clone + Debug>(
    sets: &[BTreeSet<T>],
    ground: &BTreeSet<T>,
) -> Result<Vec<(usize, BTreeSet<T>)>> {
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        if let Some(x) = set.iter().find(|x| !ground.contains(x)) {
            return Err(Error::domain(format!("set {i} contains {x:?} outside the ground set")));
        }
        let fresh: BTreeSet<T> = set.difference(&seen).cloned().collect();
        if !fresh.is_empty() {
            seen.extend(fresh.iter().cloned());
            out.push((i, fresh));
        }
    }
    if let Some(x) = ground.iter().find(|x| !seen.contains(x)) {
        return Err(Error::domain(format!("the sets do not cover {x:?}")));
    }
    Ok(out)
}

/// Disjoint refinement of an ordered cover of `ground`.
pub fn disjointify<T: Ord + Clone + Debug>(
    sets: &[BTreeSet<T>],
    ground: &BTreeSet<T>,
) -> Result<Vec<BTreeSet<T>>> {
    Ok(disjointify_indexed(sets, ground)?
        .into_iter()
        .map(|(_, v)| v)
        .collect())
}
