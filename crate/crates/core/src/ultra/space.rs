use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Symmetric table of rational distances with a zero diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceTable {
    ids: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

/// JSON form shared by finite spaces and distance tables:
/// `{"points": [ids], "dist": [[i, j, "p/q"], ...]}` with `i`, `j` indices
/// into `points`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteSpaceJson {
    pub points: Vec<String>,
    pub dist: Vec<(usize, usize, Rational)>,
}

fn check_ids(ids: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::domain(format!("duplicate point id {id:?}")));
        }
    }
    Ok(())
}

impl DistanceTable {
    pub fn new(ids: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self> {
        check_ids(&ids)?;
        let n = ids.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::domain(format!("distance table must be {n}x{n}")));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::domain(format!("d({0}, {0}) must be 0", ids[i])));
            }
            for j in 0..i {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::domain(format!(
                        "d({}, {}) is not symmetric",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        Ok(DistanceTable { ids, dist })
    }

    /// Builds a table from unordered pairs; every off-diagonal pair must be
    /// given, repeats must agree.
    pub fn from_pairs(ids: Vec<String>, pairs: &[(usize, usize, Rational)]) -> Result<Self> {
        let n = ids.len();
        let mut cells: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for (i, j, v) in pairs {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::domain(format!("pair ({i}, {j}) out of range for {n} points")));
            }
            for (a, b) in [(i, j), (j, i)] {
                match &cells[a][b] {
                    Some(old) if old != v => {
                        return Err(Error::domain(format!(
                            "conflicting distances {old} and {v} for ({i}, {j})"
                        )))
                    }
                    _ => cells[a][b] = Some(v.clone()),
                }
            }
        }
        let mut dist = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                match cells[i][j].take() {
                    Some(v) => dist[i][j] = v,
                    None if i == j => {}
                    None => {
                        return Err(Error::domain(format!(
                            "missing distance between {:?} and {:?}",
                            ids[i], ids[j]
                        )))
                    }
                }
            }
        }
        Self::new(ids, dist)
    }

    pub fn from_json(json: &FiniteSpaceJson) -> Result<Self> {
        Self::from_pairs(json.points.clone(), &json.dist)
    }

    pub fn to_json(&self) -> FiniteSpaceJson {
        let n = self.len();
        let dist = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.dist[i][j].clone()))
            .collect();
        FiniteSpaceJson {
            points: self.ids.clone(),
            dist,
        }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    /// Distinct off-diagonal values, ascending.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let n = self.len();
        let set: BTreeSet<&Rational> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| &self.dist[i][j])
            .collect();
        set.into_iter().cloned().collect()
    }
}

/// A finite metric space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSpace(DistanceTable);

impl FiniteSpace {
    pub fn new(table: DistanceTable) -> Result<Self> {
        let n = table.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && !table.get(i, j).is_positive() {
                    return Err(Error::domain(format!(
                        "distinct points {:?} and {:?} must have positive distance",
                        table.ids[i], table.ids[j]
                    )));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table.get(x, z) > &(table.get(x, y) + table.get(y, z)) {
                        return Err(Error::domain(format!(
                            "triangle inequality fails for ({:?}, {:?}, {:?})",
                            table.ids[x], table.ids[y], table.ids[z]
                        )));
                    }
                }
            }
        }
        Ok(FiniteSpace(table))
    }

    pub fn from_json(json: &FiniteSpaceJson) -> Result<Self> {
        Self::new(DistanceTable::from_json(json)?)
    }

    pub fn table(&self) -> &DistanceTable {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        self.0.ids()
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    /// Open ball `{y : d(x, y) < r}`.
    pub fn ball(&self, x: usize, r: &Rational) -> BTreeSet<usize> {
        (0..self.len()).filter(|&y| self.dist(x, y) < r).collect()
    }

    pub fn diameter(&self, block: &[usize]) -> Rational {
        let mut best = Rational::zero();
        for (k, &a) in block.iter().enumerate() {
            for &b in &block[k + 1..] {
                if self.dist(a, b) > &best {
                    best = self.dist(a, b).clone();
                }
            }
        }
        best
    }
}

/// A finite sequence of partitions of a point set, each refining the one
/// before. Blocks are sorted, and the blocks of a level are ordered by their
/// smallest member (points are ordered by their position in `ids`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverSequence {
    ids: Vec<String>,
    levels: Vec<Vec<Vec<usize>>>,
}

/// `{"points": [ids], "levels": [[[ids]]]}`. `points` fixes the point order;
/// when absent, points are ordered by first appearance in level 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoverSequenceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    pub levels: Vec<Vec<Vec<String>>>,
}

impl CoverSequence {
    pub fn new(ids: Vec<String>, levels: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        check_ids(&ids)?;
        let n = ids.len();
        if levels.is_empty() {
            return Err(Error::domain("a cover sequence needs at least one level"));
        }
        let mut normalized = Vec::with_capacity(levels.len());
        for (i, level) in levels.into_iter().enumerate() {
            let mut owner = vec![None; n];
            let mut blocks = Vec::with_capacity(level.len());
            for (b, mut block) in level.into_iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::domain(format!("level {i} has an empty block")));
                }
                block.sort_unstable();
                for &x in &block {
                    if x >= n {
                        return Err(Error::domain(format!("level {i} names unknown point {x}")));
                    }
                    if owner[x].replace(b).is_some() {
                        return Err(Error::domain(format!(
                            "level {i} is not disjoint: {:?} appears twice",
                            ids[x]
                        )));
                    }
                }
                blocks.push(block);
            }
            if let Some(x) = owner.iter().position(Option::is_none) {
                return Err(Error::domain(format!("level {i} does not cover {:?}", ids[x])));
            }
            blocks.sort_by_key(|b| b[0]);
            normalized.push(blocks);
        }
        let seq = CoverSequence {
            ids,
            levels: normalized,
        };
        for i in 1..seq.levels.len() {
            let coarse = seq.block_index(i - 1);
            for block in &seq.levels[i] {
                if block.iter().any(|&x| coarse[x] != coarse[block[0]]) {
                    return Err(Error::domain(format!(
                        "level {i} does not refine level {}",
                        i - 1
                    )));
                }
            }
        }
        Ok(seq)
    }

    pub fn from_json(json: &CoverSequenceJson) -> Result<Self> {
        let ids = match &json.points {
            Some(points) => points.clone(),
            None => {
                let mut ids: Vec<String> = Vec::new();
                let mut seen = BTreeSet::new();
                for id in json.levels.first().into_iter().flatten().flatten() {
                    if seen.insert(id) {
                        ids.push(id.clone());
                    }
                }
                ids
            }
        };
        let position: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let levels = json
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|block| {
                        block
                            .iter()
                            .map(|id| {
                                position.get(id.as_str()).copied().ok_or_else(|| {
                                    Error::parse(id.clone(), "unknown point id in cover sequence")
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::new(ids, levels)
    }

    pub fn to_json(&self) -> CoverSequenceJson {
        let levels = self
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|block| block.iter().map(|&x| self.ids[x].clone()).collect())
                    .collect()
            })
            .collect();
        CoverSequenceJson {
            points: Some(self.ids.clone()),
            levels,
        }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn levels(&self) -> &[Vec<Vec<usize>>] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// For each point, the index of its block at `level`.
    pub fn block_index(&self, level: usize) -> Vec<usize> {
        let mut index = vec![0; self.ids.len()];
        for (b, block) in self.levels[level].iter().enumerate() {
            for &x in block {
                index[x] = b;
            }
        }
        index
    }

    /// Checks `diam(U) <= 2^-(i+1)` for every block `U` of level `i`, naming
    /// the first offending block.
    pub fn check_diameters(&self, space: &FiniteSpace) -> std::result::Result<(), String> {
        if space.ids() != self.ids() {
            return Err("cover sequence and space list different points".into());
        }
        for (i, level) in self.levels.iter().enumerate() {
            let bound = Rational::pow2_neg(i as u32 + 1);
            for block in level {
                let diam = space.diameter(block);
                if diam > bound {
                    let names: Vec<&str> = block.iter().map(|&x| self.ids[x].as_str()).collect();
                    return Err(format!(
                        "level {i} block {names:?} has diameter {diam} > {bound}"
                    ));
                }
            }
        }
        Ok(())
    }
}
