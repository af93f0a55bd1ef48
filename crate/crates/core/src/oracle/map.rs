//! Rooted planar Eulerian triangulations as pairs of face permutations.
//!
//! Edges are `0..3F`, each oriented with its black face on the left. `w(e)`
//! is the edge following `e` around its white face and `b(e)` the edge
//! following it around its black face, so `head(e) = tail(w(e)) = tail(b(e))`.
//! Edge 0 is the root.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use super::OracleError;

/// Largest number of white faces accepted by the generators.
pub const F_MAX: usize = 5;

/// A half-edge: `edge` seen from its tail or from its head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub at_tail: bool,
}

impl Dart {
    pub fn tail(edge: usize) -> Self {
        Dart {
            edge,
            at_tail: true,
        }
    }

    pub fn head(edge: usize) -> Self {
        Dart {
            edge,
            at_tail: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianMap {
    w: Vec<usize>,
    b: Vec<usize>,
    winv: Vec<usize>,
    binv: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
    vertex_count: usize,
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

fn all_triangles(p: &[usize]) -> bool {
    (0..p.len()).all(|e| p[e] != e && p[p[p[e]]] == e)
}

fn cycles(n: usize, next: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if id[s] != usize::MAX {
            continue;
        }
        let mut e = s;
        while id[e] == usize::MAX {
            id[e] = count;
            e = next(e);
        }
        count += 1;
    }
    (id, count)
}

impl EulerianMap {
    /// Builds a map from its two face permutations, checking that both
    /// consist of 3-cycles, that the map is connected and that it is planar.
    pub fn from_permutations(w: Vec<usize>, b: Vec<usize>) -> Result<Self, OracleError> {
        let n = w.len();
        if n == 0 || !n.is_multiple_of(3) || b.len() != n {
            return Err(OracleError::Invariant(format!(
                "edge count {n} is not a positive multiple of 3"
            )));
        }
        if !is_permutation(&w) || !is_permutation(&b) || !all_triangles(&w) || !all_triangles(&b) {
            return Err(OracleError::Invariant(
                "face permutations must consist of 3-cycles".into(),
            ));
        }
        let m = Self::build(w, b);
        if !m.is_connected() {
            return Err(OracleError::Invariant("map is not connected".into()));
        }
        if !m.is_planar() {
            return Err(OracleError::Invariant(format!(
                "genus > 0: {} vertices for F = {}",
                m.vertex_count,
                n / 3
            )));
        }
        m.check_colouring()?;
        Ok(m)
    }

    fn build(w: Vec<usize>, b: Vec<usize>) -> Self {
        let n = w.len();
        let winv = inverse(&w);
        let binv = inverse(&b);
        // incoming edges around a vertex: e -> b⁻¹(w(e))
        let (head, vertex_count) = cycles(n, |e| binv[w[e]]);
        let tail = (0..n).map(|e| head[binv[e]]).collect();
        EulerianMap {
            w,
            b,
            winv,
            binv,
            head,
            tail,
            vertex_count,
        }
    }

    pub fn w(&self, e: usize) -> usize {
        self.w[e]
    }

    pub fn b(&self, e: usize) -> usize {
        self.b[e]
    }

    pub fn w_inv(&self, e: usize) -> usize {
        self.winv[e]
    }

    pub fn b_inv(&self, e: usize) -> usize {
        self.binv[e]
    }

    pub fn edge_count(&self) -> usize {
        self.w.len()
    }

    /// Number of white faces, equal to the number of black faces.
    pub fn white_face_count(&self) -> usize {
        self.w.len() / 3
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        if d.at_tail {
            self.tail[d.edge]
        } else {
            self.head[d.edge]
        }
    }

    /// `V = F + 2`, i.e. genus zero.
    pub fn is_planar(&self) -> bool {
        self.vertex_count == self.white_face_count() + 2
    }

    fn is_connected(&self) -> bool {
        let n = self.w.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(e) = queue.pop_front() {
            for f in [self.w[e], self.b[e], self.winv[e], self.binv[e]] {
                if !seen[f] {
                    seen[f] = true;
                    count += 1;
                    queue.push_back(f);
                }
            }
        }
        count == n
    }

    /// Vertex colours in `Z/3` increasing by one along every edge.
    fn check_colouring(&self) -> Result<(), OracleError> {
        let mut colour = vec![usize::MAX; self.vertex_count];
        colour[self.tail[0]] = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for e in 0..self.w.len() {
                let (t, h) = (self.tail[e], self.head[e]);
                if colour[t] != usize::MAX && colour[h] == usize::MAX {
                    colour[h] = (colour[t] + 1) % 3;
                    changed = true;
                } else if colour[h] != usize::MAX && colour[t] == usize::MAX {
                    colour[t] = (colour[h] + 2) % 3;
                    changed = true;
                }
            }
        }
        for e in 0..self.w.len() {
            if colour[self.head[e]] != (colour[self.tail[e]] + 1) % 3 {
                return Err(OracleError::Invariant(format!(
                    "edge {e} breaks the cyclic vertex colouring"
                )));
            }
        }
        Ok(())
    }

    /// Next dart counterclockwise around its vertex.
    pub fn ccw(&self, d: Dart) -> Dart {
        if d.at_tail {
            Dart::head(self.binv[d.edge])
        } else {
            Dart::tail(self.w[d.edge])
        }
    }

    /// Next dart clockwise around its vertex.
    pub fn cw(&self, d: Dart) -> Dart {
        if d.at_tail {
            Dart::head(self.winv[d.edge])
        } else {
            Dart::tail(self.b[d.edge])
        }
    }

    /// Darts around the vertex of `start`, counterclockwise from `start`.
    pub fn rotation_from(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.ccw(start);
        while d != start {
            out.push(d);
            d = self.ccw(d);
        }
        out
    }

    /// White faces as edge triples `(e, w(e), w²(e))`.
    pub fn white_faces(&self) -> Vec<[usize; 3]> {
        let (id, count) = cycles(self.w.len(), |e| self.w[e]);
        face_lists(&id, count, |e| self.w[e])
    }

    /// Black faces as edge triples `(e, b(e), b²(e))`.
    pub fn black_faces(&self) -> Vec<[usize; 3]> {
        let (id, count) = cycles(self.b.len(), |e| self.b[e]);
        face_lists(&id, count, |e| self.b[e])
    }

    pub fn white_face_of(&self) -> Vec<usize> {
        cycles(self.w.len(), |e| self.w[e]).0
    }

    pub fn black_face_of(&self) -> Vec<usize> {
        cycles(self.b.len(), |e| self.b[e]).0
    }

    /// Relabels edges in breadth-first order from `root`, visiting `w(e)`
    /// then `b(e)`. Two rooted maps are isomorphic iff their relabelings agree.
    pub fn rerooted(&self, root: usize) -> EulerianMap {
        let n = self.w.len();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root] = 0;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let e = order[i];
            for f in [self.w[e], self.b[e]] {
                if label[f] == usize::MAX {
                    label[f] = order.len();
                    order.push(f);
                }
            }
            i += 1;
        }
        let w = order.iter().map(|&e| label[self.w[e]]).collect();
        let b = order.iter().map(|&e| label[self.b[e]]).collect();
        Self::build(w, b)
    }

    /// The canonical code of the map rooted at `root`.
    pub fn canonical_code(&self, root: usize) -> Vec<usize> {
        let m = self.rerooted(root);
        m.w.iter().chain(m.b.iter()).copied().collect()
    }

    /// One-line record `E=..; alpha=..; sigma=..; root=..; colors=..`.
    ///
    /// Dart `2e` is the tail half of edge `e` and `2e+1` its head half;
    /// `sigma` turns counterclockwise around vertices. Faces are the orbits of
    /// `sigma∘alpha` listed by smallest dart, with colour `1` for black.
    pub fn to_record(&self) -> String {
        let n = self.w.len();
        let alpha: Vec<usize> = (0..2 * n).map(|d| d ^ 1).collect();
        let sigma: Vec<usize> = (0..2 * n)
            .map(|d| {
                if d % 2 == 0 {
                    2 * self.binv[d / 2] + 1
                } else {
                    2 * self.w[d / 2]
                }
            })
            .collect();
        let (face, count) = cycles(2 * n, |d| sigma[alpha[d]]);
        let mut colours = vec!['0'; count];
        for d in 0..2 * n {
            if d % 2 == 1 {
                colours[face[d]] = '1';
            }
        }
        let join = |p: &[usize]| {
            p.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        let _ = write!(
            s,
            "E={n}; alpha=[{}]; sigma=[{}]; root=0; colors={}",
            join(&alpha),
            join(&sigma),
            colours.into_iter().collect::<String>()
        );
        s
    }
}

fn face_lists(id: &[usize], count: usize, next: impl Fn(usize) -> usize) -> Vec<[usize; 3]> {
    let mut out = vec![[usize::MAX; 3]; count];
    for e in 0..id.len() {
        if out[id[e]][0] == usize::MAX {
            out[id[e]] = [e, next(e), next(next(e))];
        }
    }
    out
}

fn check_range(f: usize) -> Result<(), OracleError> {
    if f == 0 || f > F_MAX {
        return Err(OracleError::OutOfRange { f, max: F_MAX });
    }
    Ok(())
}

struct Partial {
    n: usize,
    perm: [Vec<usize>; 2],
    inv: [Vec<usize>; 2],
    next_label: usize,
}

const UNSET: usize = usize::MAX;

impl Partial {
    /// Whether `perm[s][e] = f` keeps every cycle of length three.
    fn admissible(&self, s: usize, e: usize, f: usize) -> bool {
        let p = &self.perm[s];
        let ip = &self.inv[s];
        if f < self.n && ip[f] != UNSET {
            return false;
        }
        let mut back = 1;
        let mut c = e;
        while ip[c] != UNSET {
            c = ip[c];
            back += 1;
        }
        if f == self.next_label {
            return back < 3;
        }
        let mut fwd = 1;
        let mut c = f;
        while c != e && p[c] != UNSET {
            c = p[c];
            fwd += 1;
        }
        if c == e {
            return fwd == 3;
        }
        back + fwd <= 3
    }

    fn set(&mut self, s: usize, e: usize, f: usize) {
        self.perm[s][e] = f;
        self.inv[s][f] = e;
    }

    fn unset(&mut self, s: usize, e: usize, f: usize) {
        self.perm[s][e] = UNSET;
        self.inv[s][f] = UNSET;
    }
}

fn search(st: &mut Partial, e: usize, out: &mut Vec<EulerianMap>) {
    if e == st.n {
        let m = EulerianMap::build(st.perm[0].clone(), st.perm[1].clone());
        if m.is_planar() {
            out.push(m);
        }
        return;
    }
    if e >= st.next_label {
        return;
    }
    let s = if st.perm[0][e] == UNSET {
        0
    } else if st.perm[1][e] == UNSET {
        1
    } else {
        return search(st, e + 1, out);
    };
    let top = st.next_label.min(st.n - 1);
    for f in 0..=top {
        if f == st.next_label && st.next_label >= st.n {
            break;
        }
        if !st.admissible(s, e, f) {
            continue;
        }
        let fresh = f == st.next_label;
        if fresh {
            st.next_label += 1;
        }
        st.set(s, e, f);
        search(st, e, out);
        st.unset(s, e, f);
        if fresh {
            st.next_label -= 1;
        }
    }
}

/// All rooted planar Eulerian triangulations with `f` white faces, each
/// exactly once, in canonical labeling.
///
/// Edges are labeled in the order in which a breadth-first traversal from
/// the root discovers them, so each search leaf is a distinct rooted map.
pub fn enumerate_maps(f: usize) -> Result<Vec<EulerianMap>, OracleError> {
    check_range(f)?;
    let n = 3 * f;
    let mut st = Partial {
        n,
        perm: [vec![UNSET; n], vec![UNSET; n]],
        inv: [vec![UNSET; n], vec![UNSET; n]],
        next_label: 1,
    };
    let mut out = Vec::new();
    search(&mut st, 0, &mut out);
    Ok(out)
}

fn for_each_triangle_perm(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
        let Some(a) = used.iter().position(|u| !u) else {
            visit(p);
            return;
        };
        used[a] = true;
        let n = used.len();
        for b in 0..n {
            if used[b] {
                continue;
            }
            used[b] = true;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                used[c] = true;
                p[a] = b;
                p[b] = c;
                p[c] = a;
                rec(p, used, visit);
                used[c] = false;
            }
            used[b] = false;
        }
        used[a] = false;
    }
    rec(&mut vec![0; n], &mut vec![false; n], visit);
}

/// Canonical codes of all rooted maps with `f` white faces, found by fixing
/// the white faces to `(0 1 2)(3 4 5)…`, trying every black-face permutation
/// and deduplicating over all choices of root.
pub fn rooted_codes_by_relabeling(f: usize) -> Result<BTreeSet<Vec<usize>>, OracleError> {
    check_range(f)?;
    if f > 4 {
        return Err(OracleError::OutOfRange { f, max: 4 });
    }
    let n = 3 * f;
    let w: Vec<usize> = (0..n).map(|e| 3 * (e / 3) + (e + 1) % 3).collect();
    let mut codes = BTreeSet::new();
    for_each_triangle_perm(n, &mut |b| {
        let m = EulerianMap::build(w.clone(), b.to_vec());
        if m.is_planar() && m.is_connected() {
            for r in 0..n {
                codes.insert(m.canonical_code(r));
            }
        }
    });
    Ok(codes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let maps = enumerate_maps(1).unwrap();
        assert_eq!(maps.len(), 1);
        let m = &maps[0];
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(
            m.to_record(),
            "E=3; alpha=[1,0,3,2,5,4]; sigma=[5,2,1,4,3,0]; root=0; colors=01"
        );
    }

    #[test]
    fn rooted_counts() {
        let counts: Vec<usize> = (1..=4).map(|f| enumerate_maps(f).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 12, 56]);
    }

    #[test]
    fn generators_agree() {
        for f in 1..=3 {
            let a: BTreeSet<Vec<usize>> = enumerate_maps(f)
                .unwrap()
                .iter()
                .map(|m| m.canonical_code(0))
                .collect();
            assert_eq!(a, rooted_codes_by_relabeling(f).unwrap(), "F = {f}");
        }
    }

    #[test]
    fn generated_maps_are_valid() {
        for f in 1..=3 {
            for m in enumerate_maps(f).unwrap() {
                let w = (0..m.edge_count()).map(|e| m.w(e)).collect();
                let b = (0..m.edge_count()).map(|e| m.b(e)).collect();
                assert!(EulerianMap::from_permutations(w, b).is_ok());
            }
        }
    }

    #[test]
    fn rotation_is_consistent() {
        for m in enumerate_maps(3).unwrap() {
            for e in 0..m.edge_count() {
                for d in [Dart::tail(e), Dart::head(e)] {
                    assert_eq!(m.cw(m.ccw(d)), d);
                    assert_eq!(m.vertex_of(m.ccw(d)), m.vertex_of(d));
                }
            }
        }
    }
}
