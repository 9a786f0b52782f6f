use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::disjoint::disjointify;
use super::space::{CoverSequence, DistanceTable, FiniteSpace};
use crate::baire::BairePrefix;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Shrinking, refining partitions with `diam <= 2^-(i+1)` at level `i`.
///
/// Level `n + 1` disjointifies `{N(x, 2^-(n+3)) ∩ U}` over points `x` (outer)
/// and blocks `U` of level `n` (inner). Level 0 follows the same rule with
/// `n = -1`, i.e. balls of radius 1/4; unit balls would not respect the
/// level-0 diameter bound.
pub fn build_cover_sequence(space: &FiniteSpace, depth: usize) -> Result<CoverSequence> {
    if depth == 0 {
        return Err(Error::domain("depth must be positive"));
    }
    let n = space.len();
    let ground: BTreeSet<usize> = (0..n).collect();
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(depth);
    let mut previous: Vec<BTreeSet<usize>> = vec![ground.clone()];
    for i in 0..depth {
        let radius = Rational::pow2_neg(i as u32 + 2);
        let balls: Vec<BTreeSet<usize>> = (0..n).map(|x| space.ball(x, &radius)).collect();
        let family: Vec<BTreeSet<usize>> = balls
            .iter()
            .flat_map(|ball| previous.iter().map(move |u| ball & u))
            .filter(|w| !w.is_empty())
            .collect();
        let level = disjointify(&family, &ground)?;
        levels.push(level.iter().map(|b| b.iter().copied().collect()).collect());
        previous = level;
    }
    CoverSequence::new(space.ids().to_vec(), levels)
}

/// `ρ(x, y) = 1/(k+1)` with `k` the first level separating `x` and `y`.
pub fn ultrametric_from_covers(seq: &CoverSequence) -> Result<DistanceTable> {
    let n = seq.ids().len();
    let index: Vec<Vec<usize>> = (0..seq.depth()).map(|i| seq.block_index(i)).collect();
    let mut dist = vec![vec![Rational::zero(); n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let k = index
                .iter()
                .position(|blocks| blocks[x] != blocks[y])
                .ok_or_else(|| {
                    Error::InsufficientDepth(seq.ids()[x].clone(), seq.ids()[y].clone())
                })?;
            let v = Rational::new(1, k as u64 + 1).expect("positive");
            dist[x][y] = v.clone();
            dist[y][x] = v;
        }
    }
    DistanceTable::new(seq.ids().to_vec(), dist)
}

/// `f_x(i)` = index of the level-`i` block containing `x`, for every point
/// in `seq.ids()` order. Blocks are numbered by smallest member.
pub fn sierpinski_embed(seq: &CoverSequence) -> Vec<BairePrefix> {
    let index: Vec<Vec<usize>> = (0..seq.depth()).map(|i| seq.block_index(i)).collect();
    (0..seq.ids().len())
        .map(|x| {
            let entries = index.iter().map(|blocks| BigUint::from(blocks[x])).collect();
            BairePrefix::new(entries, None).expect("no tail")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ultra::space::FiniteSpaceJson;

    fn ids(names: &str) -> Vec<String> {
        names.chars().map(String::from).collect()
    }

    fn space(names: &str, pairs: &[(usize, usize, &str)]) -> FiniteSpace {
        let json = FiniteSpaceJson {
            points: ids(names),
            dist: pairs.iter().map(|(i, j, v)| (*i, *j, v.parse().unwrap())).collect(),
        };
        FiniteSpace::from_json(&json).unwrap()
    }

    fn show(seq: &CoverSequence) -> Vec<String> {
        seq.levels()
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|b| b.iter().map(|&x| seq.ids()[x].as_str()).collect::<String>())
                    .collect::<Vec<_>>()
                    .join("|")
            })
            .collect()
    }

    fn seq(names: &str, levels: &[&[&[usize]]]) -> CoverSequence {
        CoverSequence::new(
            ids(names),
            levels
                .iter()
                .map(|l| l.iter().map(|b| b.to_vec()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn build_three_points() {
        let s = space("abc", &[(0, 1, "1/8"), (0, 2, "1"), (1, 2, "1")]);
        let covers = build_cover_sequence(&s, 2).unwrap();
        assert_eq!(show(&covers), ["ab|c", "a|b|c"]);
        covers.check_diameters(&s).unwrap();
    }

    #[test]
    fn build_keeps_close_pairs_until_their_level() {
        // d(a,b) = 1/20 is below the ball radius 2^-(i+2) until i = 3.
        let s = space("abc", &[(0, 1, "1/20"), (0, 2, "1/3"), (1, 2, "1/3")]);
        let covers = build_cover_sequence(&s, 5).unwrap();
        assert_eq!(show(&covers), ["ab|c", "ab|c", "ab|c", "a|b|c", "a|b|c"]);
        covers.check_diameters(&s).unwrap();
    }

    #[test]
    fn build_degenerate_spaces() {
        let one = space("a", &[]);
        assert_eq!(show(&build_cover_sequence(&one, 3).unwrap()), ["a", "a", "a"]);
        let far = space("abc", &[(0, 1, "1"), (0, 2, "2"), (1, 2, "3/2")]);
        assert_eq!(show(&build_cover_sequence(&far, 3).unwrap()), ["a|b|c"; 3]);
        assert!(build_cover_sequence(&far, 0).is_err());
    }

    #[test]
    fn ultrametric_examples() {
        let t = ultrametric_from_covers(&seq("abc", &[&[&[0, 1], &[2]], &[&[0], &[1], &[2]]])).unwrap();
        assert_eq!(t.get(0, 1).to_string(), "1/2");
        assert_eq!(t.get(0, 2).to_string(), "1");
        assert_eq!(t.get(1, 2).to_string(), "1");

        let t = ultrametric_from_covers(&seq("abc", &[&[&[0], &[1], &[2]]])).unwrap();
        assert!(t.distinct_values() == ["1".parse::<Rational>().unwrap()]);

        let t = ultrametric_from_covers(&seq(
            "abc",
            &[&[&[0, 1, 2]], &[&[0, 1], &[2]], &[&[0], &[1], &[2]]],
        ))
        .unwrap();
        assert_eq!(t.get(0, 1).to_string(), "1/3");
        assert_eq!(t.get(0, 2).to_string(), "1/2");
        assert_eq!(t.get(2, 1).to_string(), "1/2");
    }

    #[test]
    fn ultrametric_needs_separation() {
        let err = ultrametric_from_covers(&seq("abc", &[&[&[0, 1], &[2]]])).unwrap_err();
        assert_eq!(err, Error::InsufficientDepth("a".into(), "b".into()));
    }

    #[test]
    fn embedding_examples() {
        let show = |s: &CoverSequence| -> Vec<String> {
            sierpinski_embed(s).iter().map(ToString::to_string).collect()
        };
        assert_eq!(
            show(&seq("abc", &[&[&[0, 1], &[2]], &[&[0], &[1], &[2]]])),
            ["(0,0)", "(0,1)", "(1,2)"]
        );
        assert_eq!(show(&seq("ab", &[&[&[0], &[1]]])), ["(0)", "(1)"]);
        assert_eq!(show(&seq("a", &[&[&[0]], &[&[0]], &[&[0]]])), ["(0,0,0)"]);
    }
}
