//! Oriented distances from an origin vertex.

use std::collections::VecDeque;

use super::map::EulerianMap;
use super::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceLabeling {
    pub origin: usize,
    pub dist: Vec<usize>,
}

/// Breadth-first search along oriented edges.
pub fn oriented_distances(m: &EulerianMap, origin: usize) -> Result<DistanceLabeling, OracleError> {
    let nv = m.vertex_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in 0..m.edge_count() {
        out[m.tail(e)].push(m.head(e));
    }
    let mut dist = vec![usize::MAX; nv];
    dist[origin] = 0;
    let mut queue = VecDeque::from([origin]);
    while let Some(v) = queue.pop_front() {
        for &u in &out[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(OracleError::Unreachable(v));
    }
    Ok(DistanceLabeling { origin, dist })
}

impl DistanceLabeling {
    /// `(d(tail), d(head))`.
    pub fn edge_type(&self, m: &EulerianMap, e: usize) -> (usize, usize) {
        (self.dist[m.tail(e)], self.dist[m.head(e)])
    }

    /// Type `(ℓ+2, ℓ)`.
    pub fn is_long(&self, m: &EulerianMap, e: usize) -> bool {
        let (t, h) = self.edge_type(m, e);
        t == h + 2
    }

    pub fn long_edges(&self, m: &EulerianMap) -> Vec<usize> {
        (0..m.edge_count())
            .filter(|&e| self.is_long(m, e))
            .collect()
    }

    /// Type `ℓ` of a face: the smallest distance among its vertices.
    pub fn face_type(&self, m: &EulerianMap, face: &[usize; 3]) -> usize {
        face.iter().map(|&e| self.dist[m.tail(e)]).min().unwrap()
    }

    /// Checks the local distance structure:
    /// every edge is short `(ℓ,ℓ+1)` or long `(ℓ+2,ℓ)`, `d ≡ colour` mod 3,
    /// every face has exactly one long edge, a long edge separates faces of
    /// the same type, there are `F` long edges, and erasing them leaves
    /// only quadrangles.
    pub fn check_invariants(&self, m: &EulerianMap) -> Result<(), OracleError> {
        let fail = |msg: String| Err(OracleError::Invariant(msg));
        for e in 0..m.edge_count() {
            let (t, h) = self.edge_type(m, e);
            if h != t + 1 && t != h + 2 {
                return fail(format!("edge {e} has type ({t},{h})"));
            }
        }
        let white = m.white_faces();
        let black = m.black_faces();
        for face in white.iter().chain(black.iter()) {
            let longs = face.iter().filter(|&&e| self.is_long(m, e)).count();
            if longs != 1 {
                return fail(format!("face {face:?} has {longs} long edges"));
            }
        }
        let wf = m.white_face_of();
        let bf = m.black_face_of();
        let longs = self.long_edges(m);
        if longs.len() != m.white_face_count() {
            return fail(format!(
                "{} long edges for F = {}",
                longs.len(),
                m.white_face_count()
            ));
        }
        for &e in &longs {
            let tw = self.face_type(m, &white[wf[e]]);
            let tb = self.face_type(m, &black[bf[e]]);
            if tw != tb {
                return fail(format!("long edge {e} separates types {tw} and {tb}"));
            }
            // merged face: the two faces minus the shared long edge
            let merged: Vec<usize> = white[wf[e]]
                .iter()
                .chain(black[bf[e]].iter())
                .copied()
                .filter(|&f| f != e)
                .collect();
            if merged.len() != 4 {
                return fail(format!(
                    "erasing long edge {e} leaves a face of degree {}",
                    merged.len()
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::map::enumerate_maps;

    #[test]
    fn triangle_distances() {
        let m = &enumerate_maps(1).unwrap()[0];
        let o = m.tail(0);
        let d = oriented_distances(m, o).unwrap();
        let mut v: Vec<usize> = d.dist.clone();
        v.sort();
        assert_eq!(v, vec![0, 1, 2]);
        assert_eq!(d.dist[m.head(0)], 1);
    }

    #[test]
    fn invariants_on_small_maps() {
        for f in 1..=3 {
            for m in enumerate_maps(f).unwrap() {
                for o in 0..m.vertex_count() {
                    oriented_distances(&m, o)
                        .unwrap()
                        .check_invariants(&m)
                        .unwrap();
                }
            }
        }
    }
}
