//! Newton polygons over a discretely valued field and the cycle structure
//! of tame inertia they predict.
//!
//! Valuations are supplied directly as rationals (or `None` for a zero
//! coefficient); nothing here computes in a Laurent-series field.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("a Newton polygon needs at least two points with finite valuation")]
    TooFewPoints,
    #[error("exponents must be strictly increasing")]
    UnsortedExponents,
}

/// Points `(i, v(a_i))`; `None` marks a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedPoints {
    points: Vec<(u64, Option<Rational64>)>,
}

impl ValuedPoints {
    pub fn new(points: Vec<(u64, Option<Rational64>)>) -> Result<Self, NewtonError> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(NewtonError::UnsortedExponents);
        }
        if points.iter().filter(|(_, v)| v.is_some()).count() < 2 {
            return Err(NewtonError::TooFewPoints);
        }
        Ok(ValuedPoints { points })
    }

    /// Convenience for integer valuations, all finite.
    pub fn from_integers(points: &[(u64, i64)]) -> Result<Self, NewtonError> {
        Self::new(
            points
                .iter()
                .map(|&(i, v)| (i, Some(Rational64::from_integer(v))))
                .collect(),
        )
    }

    pub fn finite(&self) -> impl Iterator<Item = (u64, Rational64)> + '_ {
        self.points.iter().filter_map(|&(i, v)| v.map(|v| (i, v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "ser_ratio")]
    pub slope: Rational64,
    pub run: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Lower convex hull as segments of strictly increasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub start: u64,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_run(&self) -> u64 {
        self.segments.iter().map(|s| s.run).sum()
    }

    /// Height of the polygon at abscissa `x` (must lie within its span).
    pub fn height_at(&self, x: u64, start_height: Rational64) -> Option<Rational64> {
        if x < self.start {
            return None;
        }
        let mut h = start_height;
        let mut pos = self.start;
        for s in &self.segments {
            if x <= pos + s.run {
                return Some(h + s.slope * Rational64::from_integer((x - pos) as i64));
            }
            h += s.slope * Rational64::from_integer(s.run as i64);
            pos += s.run;
        }
        None
    }
}

fn cross(o: (i64, Rational64), a: (i64, Rational64), b: (i64, Rational64)) -> Rational64 {
    let ax = Rational64::from_integer(a.0 - o.0);
    let bx = Rational64::from_integer(b.0 - o.0);
    ax * (b.1 - o.1) - (a.1 - o.1) * bx
}

/// Lower convex hull of the finite points. Collinear points are absorbed
/// into a single segment.
pub fn lower_hull(points: &ValuedPoints) -> NewtonPolygon {
    let pts: Vec<(i64, Rational64)> = points.finite().map(|(i, v)| (i as i64, v)).collect();
    let mut hull: Vec<(i64, Rational64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let n = hull.len();
            // drop the middle point unless the turn is strictly counter-clockwise
            if cross(hull[n - 2], hull[n - 1], pt) <= Rational64::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let run = (w[1].0 - w[0].0) as u64;
            Segment {
                slope: (w[1].1 - w[0].1) / Rational64::from_integer(run as i64),
                run,
            }
        })
        .collect();
    NewtonPolygon {
        start: pts[0].0 as u64,
        segments,
    }
}

/// Cycle structure of a generator of tame inertia read off a polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleDeduction {
    /// Sloped segments give `run / e` cycles of length `e` each, where
    /// `e` is the slope's reduced denominator; flat segments are left
    /// unconstrained.
    Tame {
        cycles: Vec<u64>,
        unconstrained_run: u64,
    },
    /// Some segment has ramification index divisible by p; no deduction.
    Wild,
}

pub fn tame_cycle_pattern(np: &NewtonPolygon, p: u64) -> CycleDeduction {
    let mut cycles = Vec::new();
    let mut flat = 0;
    for s in &np.segments {
        if s.slope.is_zero() {
            flat += s.run;
            continue;
        }
        let e = s.slope.denom().abs() as u64;
        if p != 0 && e % p == 0 {
            return CycleDeduction::Wild;
        }
        assert!(s.run % e == 0, "segment run divisible by its ramification index");
        cycles.extend(std::iter::repeat(e).take((s.run / e) as usize));
    }
    cycles.sort_unstable();
    CycleDeduction::Tame {
        cycles,
        unconstrained_run: flat,
    }
}

/// Polygon of `x^n + t^{-1} x^m + 1` over K((t)): points (0,0), (m,-1), (n,0).
pub fn trinomial_specialization_polygon(n: u64, m: u64) -> NewtonPolygon {
    let pts = ValuedPoints::from_integers(&[(0, 0), (m, -1), (n, 0)]).expect("three points");
    lower_hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn single_segment_from_01_to_q0() {
        let np = lower_hull(&ValuedPoints::from_integers(&[(0, 1), (4, 0)]).unwrap());
        assert_eq!(np.segments, vec![Segment { slope: r(-1, 4), run: 4 }]);
    }

    #[test]
    fn two_segment_trinomial_polygon() {
        let np = trinomial_specialization_polygon(11, 3);
        assert_eq!(
            np.segments,
            vec![Segment { slope: r(-1, 3), run: 3 }, Segment { slope: r(1, 8), run: 8 }]
        );
        assert_eq!(
            tame_cycle_pattern(&np, 7),
            CycleDeduction::Tame { cycles: vec![3, 8], unconstrained_run: 0 }
        );
    }

    #[test]
    fn flat_hull() {
        let np = lower_hull(&ValuedPoints::from_integers(&[(0, 0), (5, 0)]).unwrap());
        assert_eq!(np.segments, vec![Segment { slope: r(0, 1), run: 5 }]);
        assert_eq!(
            tame_cycle_pattern(&np, 3),
            CycleDeduction::Tame { cycles: vec![], unconstrained_run: 5 }
        );
    }

    #[test]
    fn cyclic_and_wild() {
        let np = lower_hull(&ValuedPoints::from_integers(&[(0, 1), (5, 0)]).unwrap());
        assert_eq!(
            tame_cycle_pattern(&np, 2),
            CycleDeduction::Tame { cycles: vec![5], unconstrained_run: 0 }
        );
        let wild = lower_hull(&ValuedPoints::from_integers(&[(0, 1), (3, 0)]).unwrap());
        assert_eq!(tame_cycle_pattern(&wild, 3), CycleDeduction::Wild);
        // x^n + t x^m + t^2 with p | m
        let q = lower_hull(&ValuedPoints::from_integers(&[(0, 2), (3, 1), (8, 0)]).unwrap());
        assert_eq!(q.segments[0].slope, r(-1, 3));
        assert_eq!(tame_cycle_pattern(&q, 3), CycleDeduction::Wild);
    }

    #[test]
    fn collinear_and_infinite_points() {
        let pts = ValuedPoints::new(vec![
            (0, Some(r(2, 1))),
            (1, None),
            (2, Some(r(1, 1))),
            (4, Some(r(0, 1))),
            (6, Some(r(5, 1))),
        ])
        .unwrap();
        let np = lower_hull(&pts);
        assert_eq!(
            np.segments,
            vec![Segment { slope: r(-1, 2), run: 4 }, Segment { slope: r(5, 2), run: 2 }]
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            ValuedPoints::from_integers(&[(0, 1)]).unwrap_err(),
            NewtonError::TooFewPoints
        );
        assert_eq!(
            ValuedPoints::new(vec![(0, Some(r(1, 1))), (3, None)]).unwrap_err(),
            NewtonError::TooFewPoints
        );
        assert_eq!(
            ValuedPoints::from_integers(&[(2, 1), (1, 0)]).unwrap_err(),
            NewtonError::UnsortedExponents
        );
    }

    fn arb_points() -> impl Strategy<Value = Vec<(u64, i64)>> {
        prop::collection::btree_map(0u64..40, -6i64..6, 2..12)
            .prop_map(|m| m.into_iter().collect())
    }

    proptest! {
        #[test]
        fn hull_is_convex_and_below_points(pts in arb_points()) {
            let vp = ValuedPoints::from_integers(&pts).unwrap();
            let np = lower_hull(&vp);
            let first = pts[0];
            let last = pts[pts.len() - 1];
            prop_assert_eq!(np.total_run(), last.0 - first.0);
            for w in np.segments.windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
            }
            let h0 = Rational64::from_integer(first.1);
            for &(i, v) in &pts {
                prop_assert!(np.height_at(i, h0).unwrap() <= Rational64::from_integer(v));
            }
            prop_assert_eq!(np.height_at(last.0, h0).unwrap(), Rational64::from_integer(last.1));
        }

        #[test]
        fn union_hull_never_above(a in arb_points(), b in arb_points()) {
            let mut merged: std::collections::BTreeMap<u64, i64> = a.iter().copied().collect();
            for &(i, v) in &b {
                let e = merged.entry(i).or_insert(v);
                *e = (*e).min(v);
            }
            let u: Vec<(u64, i64)> = merged.into_iter().collect();
            let nu = lower_hull(&ValuedPoints::from_integers(&u).unwrap());
            let hu = Rational64::from_integer(u[0].1);
            for pts in [&a, &b] {
                let np = lower_hull(&ValuedPoints::from_integers(pts).unwrap());
                let h0 = Rational64::from_integer(pts[0].1);
                for x in pts[0].0..=pts[pts.len() - 1].0 {
                    prop_assert!(nu.height_at(x, hu).unwrap() <= np.height_at(x, h0).unwrap());
                }
            }
        }

        #[test]
        fn tame_runs_divisible(pts in arb_points(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let np = lower_hull(&ValuedPoints::from_integers(&pts).unwrap());
            if let CycleDeduction::Tame { cycles, unconstrained_run } = tame_cycle_pattern(&np, p) {
                prop_assert_eq!(cycles.iter().sum::<u64>() + unconstrained_run, np.total_run());
                prop_assert!(cycles.iter().all(|c| c % p != 0));
            }
        }
    }
}
