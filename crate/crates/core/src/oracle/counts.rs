//! Counts over all pointed maps with a marked edge, for comparison with the
//! generating functions.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::classical::solve_classical;
use crate::series::Q;

use super::distance::{oriented_distances, DistanceLabeling};
use super::map::{enumerate_maps, EulerianMap};
use super::slice::{cut_slice, Side, Slice, SliceDart};
use super::OracleError;

/// Every `(map, origin)` with `F = f` whose root edge is short, with the
/// height `k` of the slice it defines.
pub fn marked_configurations(
    f: usize,
) -> Result<Vec<(EulerianMap, DistanceLabeling, usize)>, OracleError> {
    let mut out = Vec::new();
    for m in enumerate_maps(f)? {
        for o in 0..m.vertex_count() {
            let dist = oriented_distances(&m, o)?;
            let (t, h) = dist.edge_type(&m, 0);
            if h == t + 1 {
                out.push((m.clone(), dist, h));
            }
        }
    }
    Ok(out)
}

/// All slices with `f` white faces.
pub fn all_slices(f: usize) -> Result<Vec<Slice>, OracleError> {
    marked_configurations(f)?
        .iter()
        .map(|(m, d, _)| cut_slice(m, d, 0))
        .collect()
}

/// Number of pointed maps with `f` white faces and a marked edge of type
/// `(k-1,k)`: the coefficient `[g^f] G_k`.
pub fn count_two_point(f: usize, k: usize) -> Result<u64, OracleError> {
    Ok(marked_configurations(f)?
        .iter()
        .filter(|c| c.2 == k)
        .count() as u64)
}

/// Hull perimeter counts: `p ↦` number of maps counted by `[g^f] G_k`
/// with `ℒ(d) = 2p`. At `d = 1` every map has `ℒ = 0`.
pub fn count_hull(f: usize, k: usize, d: usize) -> Result<BTreeMap<usize, u64>, OracleError> {
    if d == 0 || d >= k {
        return Err(OracleError::Precondition(format!(
            "hull at d = {d} needs 1 ≤ d ≤ k-1 = {}",
            k.saturating_sub(1)
        )));
    }
    let mut table = BTreeMap::new();
    for (m, dist, h) in marked_configurations(f)? {
        if h != k {
            continue;
        }
        let p = if d == 1 {
            0
        } else {
            cut_slice(&m, &dist, 0)?.dividing_line(d)?.p()
        };
        *table.entry(p).or_insert(0) += 1;
    }
    Ok(table)
}

/// Which long edge the white face right of the base carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SplitCase {
    /// Long edge ending at the origin of the base.
    A,
    /// Long edge starting at the endpoint of the base.
    B,
}

/// Outcome of splitting one slice: its height and, for both parts, their
/// height and number of white faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplitRecord {
    pub case: SplitCase,
    pub height: usize,
    pub h1: usize,
    pub h2: usize,
    pub f1: usize,
    pub f2: usize,
}

fn on_left(s: &Slice, v: usize) -> bool {
    matches!(s.vertex(v).side, Side::Left | Side::Apex | Side::Endpoint)
}

fn on_right(s: &Slice, v: usize) -> bool {
    matches!(s.vertex(v).side, Side::Right | Side::Apex)
}

/// Splits a slice at the black face behind the white face right of its base.
pub fn split_slice(s: &Slice) -> Result<SplitRecord, OracleError> {
    let fail = |m: &str| OracleError::Invariant(m.into());
    let base = s.edge(s.base()).clone();
    let wface = base.right.ok_or_else(|| fail("base without white face"))?;
    let dist = |v: usize| s.vertex(v).dist;
    let long = *s
        .face(wface)
        .iter()
        .find(|&&e| dist(s.edge(e).tail) == dist(s.edge(e).head) + 2)
        .ok_or_else(|| fail("white face without long edge"))?;
    let le = s.edge(long).clone();
    let case = if le.head == base.tail {
        SplitCase::A
    } else if le.tail == base.head {
        SplitCase::B
    } else {
        return Err(fail("long edge touches neither end of the base"));
    };
    let bface = le.left.ok_or_else(|| fail("long edge on the outer face"))?;
    let bedges = s.face(bface);
    let e2 = *bedges
        .iter()
        .find(|&&e| e != long && s.edge(e).tail == le.head)
        .ok_or_else(|| fail("black face"))?;
    let e3 = *bedges
        .iter()
        .find(|&&e| e != long && s.edge(e).head == le.tail)
        .ok_or_else(|| fail("black face"))?;
    let z = s.edge(e2).head;
    if s.edge(e3).tail != z {
        return Err(fail("black face is not a triangle"));
    }
    let dz = dist(z);
    // the sweep from z→w reaches the white face before any backward edge:
    // part 1 closes off against it and the cut runs up the left boundary
    let wedges = s.face(wface);
    let start = SliceDart {
        edge: e3,
        at_tail: true,
    };
    let closes = s.edge(e3).right == Some(wface)
        || s.clockwise_after(start)
            .find(|sd| {
                wedges.contains(&sd.edge) || (!sd.at_tail && dist(s.edge(sd.edge).tail) + 1 == dz)
            })
            .is_some_and(|sd| wedges.contains(&sd.edge));
    let (path, cut) = if closes {
        if z != s.endpoint() {
            return Err(fail(
                "cut closes off against the white face away from the endpoint",
            ));
        }
        let left = s.left_boundary().to_vec();
        let edges = (0..dz).map(|j| s.left_edge(j)).collect();
        (left, edges)
    } else {
        s.leftmost_backward_from(start)?
    };
    let merge = |on: &dyn Fn(usize) -> bool, boundary: &[usize]| -> Result<usize, OracleError> {
        let j = (0..=dz).rev().find(|&j| on(path[j])).unwrap_or(0);
        if (0..=j).any(|i| path[i] != boundary[i]) {
            return Err(fail("cut path leaves a boundary it has joined"));
        }
        Ok(j)
    };
    let j1 = merge(&|v| on_left(s, v), s.left_boundary())?;
    let j2 = merge(&|v| on_right(s, v), s.right_boundary())?;
    if j1 > 0 && j2 > 0 {
        return Err(fail("cut path meets both boundaries"));
    }
    let barrier: HashSet<usize> = cut.iter().copied().collect();
    let excluded = [wface, bface];
    let part1 = s.flood(s.edge(e3).right, &barrier, &excluded);
    // a cut leaving z along x0→z leaves part 2 a single edge
    let part2 = if cut.first() == Some(&e2) {
        Default::default()
    } else {
        s.flood(s.edge(e2).right, &barrier, &excluded)
    };
    if part1.intersection(&part2).next().is_some()
        || part1.len() + part2.len() + 2 != s.face_count()
    {
        return Err(fail("cut does not split the slice in two"));
    }
    let whites =
        |p: &std::collections::BTreeSet<usize>| p.iter().filter(|&&f| s.is_white(f)).count();
    let rec = SplitRecord {
        case,
        height: s.height(),
        h1: dz + 1 - j1,
        h2: dz - j2,
        f1: whites(&part1),
        f2: whites(&part2),
    };
    let expected = match case {
        SplitCase::A => (rec.h1 - 1).max(rec.h2),
        SplitCase::B => rec.h1.max(rec.h2 + 1),
    };
    if expected != rec.height {
        return Err(fail("part heights inconsistent with the slice height"));
    }
    Ok(rec)
}

/// Result of splitting every slice with at most `F_max` white faces.
#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub f_max: usize,
    pub slices: usize,
    pub case_a: usize,
    pub case_b: usize,
    pub failures: Vec<String>,
    /// Count identity `[g^F](R_k - 1) = [g^F] g R_k (R_{k+1} + R_{k-1})`
    /// checked on the split slices, as `(F, k, slices, split)`.
    pub identity: Vec<(usize, usize, u64, u64)>,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.identity.iter().all(|r| r.2 == r.3)
    }
}

fn to_u64(q: &Q) -> u64 {
    let n: BigInt = q.to_integer();
    u64::try_from(n).expect("small count")
}

/// Splits every slice with `1 ≤ F ≤ f_max` and checks the multiset
/// bijection: the number of slices of each case with parts of heights
/// `(h1, h2)` and sizes `(f1, f2)` equals `N(h1,f1) N(h2,f2)`, where
/// `N(h,f)` counts `h`-slices with `f` white faces.
pub fn verify_slice_split(f_max: usize) -> Result<SplitReport, OracleError> {
    let kmax = 2 * f_max + 4;
    let table = solve_classical(kmax, f_max).map_err(|e| OracleError::Invariant(e.to_string()))?;
    let coeff = |k: usize, f: usize| -> u64 {
        if k == 0 {
            return 0;
        }
        to_u64(table.r(k).expect("in table").coeff(f))
    };
    // N(h, f): h-slices with f white faces, the single edge included at h = 1
    let slices_of = |h: usize, f: usize| -> u64 {
        if f == 0 {
            return (h == 1) as u64;
        }
        coeff(h, f) - coeff(h - 1, f)
    };
    let mut observed: BTreeMap<SplitRecord, u64> = BTreeMap::new();
    let mut report = SplitReport {
        f_max,
        slices: 0,
        case_a: 0,
        case_b: 0,
        failures: Vec::new(),
        identity: Vec::new(),
    };
    for f in 1..=f_max {
        for s in all_slices(f)? {
            report.slices += 1;
            match split_slice(&s) {
                Ok(r) => {
                    match r.case {
                        SplitCase::A => report.case_a += 1,
                        SplitCase::B => report.case_b += 1,
                    }
                    *observed.entry(r).or_insert(0) += 1;
                }
                Err(e) => report
                    .failures
                    .push(format!("F={f} height={}: {e}", s.height())),
            }
        }
    }
    let mut expected: BTreeMap<SplitRecord, u64> = BTreeMap::new();
    for f1 in 0..f_max {
        for f2 in 0..f_max - f1 {
            for h1 in 1..=kmax {
                for h2 in 1..=kmax {
                    let c = slices_of(h1, f1) * slices_of(h2, f2);
                    if c == 0 {
                        continue;
                    }
                    for case in [SplitCase::A, SplitCase::B] {
                        let height = match case {
                            SplitCase::A => (h1 - 1).max(h2),
                            SplitCase::B => h1.max(h2 + 1),
                        };
                        expected.insert(
                            SplitRecord {
                                case,
                                height,
                                h1,
                                h2,
                                f1,
                                f2,
                            },
                            c,
                        );
                    }
                }
            }
        }
    }
    for (key, &want) in &expected {
        let got = observed.get(key).copied().unwrap_or(0);
        if got != want {
            report
                .failures
                .push(format!("{key:?}: {got} slices, expected {want}"));
        }
    }
    for key in observed.keys().filter(|k| !expected.contains_key(k)) {
        report.failures.push(format!("unexpected split {key:?}"));
    }
    for f in 1..=f_max {
        for k in 1..=f_max + 1 {
            let slices = coeff(k, f);
            let split: u64 = observed
                .iter()
                .filter(|(r, _)| r.f1 + r.f2 + 1 == f)
                .filter(|(r, _)| match r.case {
                    SplitCase::A => r.h1 <= k + 1 && r.h2 <= k,
                    SplitCase::B => r.h1 <= k && r.h2 < k,
                })
                .map(|(_, &c)| c)
                .sum();
            report.identity.push((f, k, slices, split));
        }
    }
    Ok(report)
}

/// Sanity value used by the counting tests: the classical `[g^f] R_k`.
pub fn classical_slice_count(k: usize, f: usize) -> u64 {
    let table = solve_classical(k.max(1), f).expect("classical table");
    if k == 0 {
        return 0;
    }
    let r = table.r(k).expect("in table");
    if f > r.order() {
        return 0;
    }
    to_u64(r.coeff(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_small() {
        assert_eq!(count_two_point(1, 1).unwrap(), 1);
        assert_eq!(count_two_point(1, 2).unwrap(), 1);
        assert_eq!(count_two_point(1, 3).unwrap(), 0);
    }

    #[test]
    fn two_point_matches_classical() {
        for f in 1..=3 {
            for k in 1..=6 {
                let want = classical_slice_count(k, f) - classical_slice_count(k - 1, f);
                assert_eq!(count_two_point(f, k).unwrap(), want, "F={f} k={k}");
            }
        }
    }

    #[test]
    fn slice_split() {
        let r = verify_slice_split(5).unwrap();
        assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn hull_matches_kernel_series() {
        let engine = crate::hull::HullSeriesEngine::new(8, 4).unwrap();
        for (k, d) in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)] {
            let h = engine.h_iterated(k, d).unwrap();
            for f in 1..=4 {
                let want = crate::hull::perimeter_counts(&h, f);
                let got = count_hull(f, k, d).unwrap();
                for (p, w) in want.iter().enumerate() {
                    assert_eq!(
                        Q::from_integer((*got.get(&p).unwrap_or(&0)).into()),
                        *w,
                        "k={k} d={d} F={f} p={p}: {got:?} vs {want:?}"
                    );
                }
                assert!(got.keys().all(|&p| p < want.len() || got[&p] == 0));
            }
        }
    }

    #[test]
    fn perimeters_are_even_and_positive() {
        for (p, _) in count_hull(3, 3, 2).unwrap() {
            assert!(p >= 1);
        }
        assert_eq!(
            count_hull(2, 2, 1)
                .unwrap()
                .keys()
                .copied()
                .collect::<Vec<_>>(),
            vec![0]
        );
    }
}
