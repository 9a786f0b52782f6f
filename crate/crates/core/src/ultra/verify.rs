use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::space::{CoverSequence, DistanceTable};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::PropertyCheck;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UltrametricReport {
    /// `d(x,z) <= max{d(x,y), d(y,z)}` for all triples.
    pub strong_triangle: PropertyCheck,
    /// Every triangle has two equal sides that are at least the third.
    pub isosceles: PropertyCheck,
}

impl UltrametricReport {
    pub fn passed(&self) -> bool {
        self.strong_triangle.passed && self.isosceles.passed
    }
}

pub fn verify_ultrametric(table: &DistanceTable) -> UltrametricReport {
    let n = table.len();
    let ids = table.ids();
    let mut strong_triangle = PropertyCheck::new();
    let mut isosceles = PropertyCheck::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, yz, xz) = (table.get(x, y), table.get(y, z), table.get(x, z));
                strong_triangle.record(xz <= xy.max(yz), || {
                    format!(
                        "d({0},{2}) = {xz} > max(d({0},{1}) = {xy}, d({1},{2}) = {yz})",
                        ids[x], ids[y], ids[z]
                    )
                });
                if x < y && y < z {
                    let mut sides = [xy, yz, xz];
                    sides.sort();
                    isosceles.record(sides[1] == sides[2], || {
                        format!(
                            "triangle ({}, {}, {}) has sides {}, {}, {}",
                            ids[x], ids[y], ids[z], sides[0], sides[1], sides[2]
                        )
                    });
                }
            }
        }
    }
    UltrametricReport {
        strong_triangle,
        isosceles,
    }
}

/// Radii that realize every distinct ball of the table: each occurring
/// distance, midpoints between consecutive ones, one below the smallest and
/// one above the largest.
pub fn ball_radii(table: &DistanceTable) -> Vec<Rational> {
    let values = table.distinct_values();
    let (Some(first), Some(last)) = (values.first(), values.last()) else {
        return vec![Rational::one()];
    };
    let half = Rational::new(1, 2).expect("positive");
    let mut radii = vec![first * &half];
    for pair in values.windows(2) {
        radii.push(pair[0].clone());
        radii.push(pair[0].midpoint(&pair[1]));
    }
    radii.push(last.clone());
    radii.push(last + Rational::one());
    radii
}

fn ball_set(table: &DistanceTable, x: usize, r: &Rational, closed: bool) -> FixedBitSet {
    let n = table.len();
    let mut set = FixedBitSet::with_capacity(n);
    for y in 0..n {
        let d = table.get(x, y);
        if d < r || (closed && d == r) {
            set.insert(y);
        }
    }
    set
}

fn names(table: &DistanceTable, set: &FixedBitSet) -> String {
    let members: Vec<&str> = set.ones().map(|i| table.ids()[i].as_str()).collect();
    format!("{{{}}}", members.join(","))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BallReport {
    /// The table is an ultrametric; the other checks only run if it is.
    pub precondition: PropertyCheck,
    /// Intersecting balls with `r <= s` nest: `N(x,r) ⊆ N(y,s)`.
    pub nested: PropertyCheck,
    /// Intersecting balls of one radius coincide.
    pub equal_radius: PropertyCheck,
    /// Every member of a ball is a center of it.
    pub every_point_center: PropertyCheck,
    /// `x ∈ S(y,r)` implies `N(x,r) ⊆ S(y,r)`.
    pub closed_ball_absorbs: PropertyCheck,
    /// The complement of an `r`-ball is a union of `r`-balls, so unions of
    /// equal-radius balls are clopen.
    pub unions_clopen: PropertyCheck,
}

impl BallReport {
    pub fn passed(&self) -> bool {
        [
            &self.precondition,
            &self.nested,
            &self.equal_radius,
            &self.every_point_center,
            &self.closed_ball_absorbs,
            &self.unions_clopen,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

/// Checks the ball geometry of an ultrametric over every ball with a radius
/// from [`ball_radii`].
pub fn verify_ball_properties(table: &DistanceTable) -> BallReport {
    let ultra = verify_ultrametric(table);
    if !ultra.strong_triangle.passed {
        let why = format!("not evaluated: not an ultrametric ({})", ultra.strong_triangle.counterexample);
        return BallReport {
            precondition: ultra.strong_triangle,
            nested: PropertyCheck::skipped(why.clone()),
            equal_radius: PropertyCheck::skipped(why.clone()),
            every_point_center: PropertyCheck::skipped(why.clone()),
            closed_ball_absorbs: PropertyCheck::skipped(why.clone()),
            unions_clopen: PropertyCheck::skipped(why),
        };
    }

    let n = table.len();
    let ids = table.ids();
    let radii = ball_radii(table);
    let open: Vec<Vec<FixedBitSet>> = radii
        .iter()
        .map(|r| (0..n).map(|x| ball_set(table, x, r, false)).collect())
        .collect();
    let closed: Vec<Vec<FixedBitSet>> = radii
        .iter()
        .map(|r| (0..n).map(|x| ball_set(table, x, r, true)).collect())
        .collect();

    let mut nested = PropertyCheck::new();
    let mut equal_radius = PropertyCheck::new();
    for (ri, r) in radii.iter().enumerate() {
        for (si, s) in radii.iter().enumerate().skip(ri) {
            for x in 0..n {
                for y in 0..n {
                    let (a, b) = (&open[ri][x], &open[si][y]);
                    if a.is_disjoint(b) {
                        continue;
                    }
                    nested.record(a.is_subset(b), || {
                        format!(
                            "N({}, {r}) = {} meets N({}, {s}) = {} without nesting",
                            ids[x],
                            names(table, a),
                            ids[y],
                            names(table, b)
                        )
                    });
                    if ri == si {
                        equal_radius.record(a == b, || {
                            format!("N({}, {r}) and N({}, {r}) meet but differ", ids[x], ids[y])
                        });
                    }
                }
            }
        }
    }

    let mut every_point_center = PropertyCheck::new();
    let mut closed_ball_absorbs = PropertyCheck::new();
    let mut unions_clopen = PropertyCheck::new();
    for (ri, r) in radii.iter().enumerate() {
        for x in 0..n {
            let ball = &open[ri][x];
            for y in ball.ones() {
                every_point_center.record(open[ri][y] == *ball, || {
                    format!("{} lies in N({}, {r}) but is not its center", ids[y], ids[x])
                });
            }
            let sphere = &closed[ri][x];
            for y in sphere.ones() {
                closed_ball_absorbs.record(open[ri][y].is_subset(sphere), || {
                    format!("N({}, {r}) escapes S({}, {r})", ids[y], ids[x])
                });
            }
            let mut outside = FixedBitSet::with_capacity(n);
            for y in (0..n).filter(|&y| !ball.contains(y)) {
                outside.union_with(&open[ri][y]);
            }
            let mut complement = ball.clone();
            complement.toggle_range(..);
            unions_clopen.record(outside == complement, || {
                format!(
                    "complement of N({}, {r}) is not a union of radius-{r} balls",
                    ids[x]
                )
            });
        }
    }

    BallReport {
        precondition: ultra.strong_triangle,
        nested,
        equal_radius,
        every_point_center,
        closed_ball_absorbs,
        unions_clopen,
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BaseEqualityReport {
    pub passed: bool,
    /// Distinct balls over all centers and radii.
    pub balls: usize,
    /// Distinct sets among all cover blocks plus the whole space.
    pub cover_sets: usize,
    /// Balls that are neither a cover block nor the whole space.
    pub only_balls: Vec<Vec<String>>,
    /// Cover blocks (or the whole space) that are not balls.
    pub only_covers: Vec<Vec<String>>,
}

/// Compares the balls of `table` with the union of all levels of `seq`
/// together with the whole space, as families of sets.
pub fn verify_base_equality(seq: &CoverSequence, table: &DistanceTable) -> Result<BaseEqualityReport> {
    if seq.ids() != table.ids() {
        return Err(Error::domain("cover sequence and table list different points"));
    }
    let n = table.len();
    let balls: BTreeSet<Vec<usize>> = ball_radii(table)
        .iter()
        .flat_map(|r| (0..n).map(move |x| ball_set(table, x, r, false).ones().collect()))
        .collect();
    let mut covers: BTreeSet<Vec<usize>> = seq.levels().iter().flatten().cloned().collect();
    covers.insert((0..n).collect());

    let named = |sets: Vec<&Vec<usize>>| -> Vec<Vec<String>> {
        sets.into_iter()
            .map(|s| s.iter().map(|&x| table.ids()[x].clone()).collect())
            .collect()
    };
    let only_balls = named(balls.difference(&covers).collect());
    let only_covers = named(covers.difference(&balls).collect());
    Ok(BaseEqualityReport {
        passed: only_balls.is_empty() && only_covers.is_empty(),
        balls: balls.len(),
        cover_sets: covers.len(),
        only_balls,
        only_covers,
    })
}
