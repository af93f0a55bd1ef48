//! `k`-slices: a pointed map with a marked edge of type `(k-1,k)` cut open
//! along the leftmost backward shortest path from the endpoint of the
//! marked edge to the origin, and dividing lines drawn inside them.
//!
//! "Leftmost" means the first admissible dart met when turning clockwise
//! around the current vertex from the dart we arrived by. Cutting along such
//! a path makes the right boundary the unique shortest path to the base,
//! which [`Slice::check_properties`] verifies.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::distance::DistanceLabeling;
use super::map::{Dart, EulerianMap};
use super::OracleError;

/// Where a slice vertex sits relative to the outer face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    Apex,
    Endpoint,
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceDart {
    pub edge: usize,
    pub at_tail: bool,
}

#[derive(Clone, Debug)]
pub struct SliceVertex {
    pub orig: usize,
    pub dist: usize,
    pub side: Side,
    rot: Vec<SliceDart>,
}

/// An edge of the slice with its black face on the left and white face on
/// the right; `None` is the outer face.
#[derive(Clone, Debug)]
pub struct SliceEdge {
    pub orig: usize,
    pub tail: usize,
    pub head: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// A cut-open map. Faces `0..F` are white and `F..2F` black.
#[derive(Clone, Debug)]
pub struct Slice {
    source: EulerianMap,
    root: usize,
    height: usize,
    white: usize,
    vertices: Vec<SliceVertex>,
    edges: Vec<SliceEdge>,
    faces: Vec<Vec<usize>>,
    pos: Vec<[usize; 2]>,
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
}

/// The marked edge followed by leftmost backward edges down to the origin.
/// Entry `i` of the result goes from distance `k-1-i` to `k-i`.
pub fn leftmost_backward_path(
    m: &EulerianMap,
    dist: &DistanceLabeling,
    root: usize,
) -> Result<Vec<usize>, OracleError> {
    let (t, h) = dist.edge_type(m, root);
    if h != t + 1 {
        return Err(OracleError::Precondition(format!(
            "marked edge has type ({t},{h})"
        )));
    }
    let mut path = vec![root];
    let mut arrival = Dart::tail(root);
    loop {
        let u = m.vertex_of(arrival);
        if dist.dist[u] == 0 {
            return Ok(path);
        }
        let mut d = m.cw(arrival);
        while d != arrival && !(!d.at_tail && dist.dist[m.tail(d.edge)] + 1 == dist.dist[u]) {
            d = m.cw(d);
        }
        if d == arrival {
            return Err(OracleError::Invariant(format!(
                "no backward edge at vertex {u}"
            )));
        }
        path.push(d.edge);
        arrival = Dart::tail(d.edge);
    }
}

/// A dividing line at distance `d`: `x0 → y0` on the right boundary, then
/// two-step paths `y_m → x_{m+1} ← y_{m+1}` until the left boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividingLine {
    pub d: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub edges: Vec<usize>,
}

impl DividingLine {
    /// Number of two-step paths.
    pub fn p(&self) -> usize {
        self.y.len() - 1
    }

    /// `ℒ(d) = 2p`.
    pub fn perimeter(&self) -> usize {
        2 * self.p()
    }
}

/// Cuts the map pointed at `origin` along the leftmost backward shortest
/// path from the endpoint of `root`.
pub fn cut_slice(
    m: &EulerianMap,
    dist: &DistanceLabeling,
    root: usize,
) -> Result<Slice, OracleError> {
    let path = leftmost_backward_path(m, dist, root)?;
    let k = path.len();
    let n = m.edge_count();
    let nf = m.white_face_count();
    // up[j] goes from level j to j+1
    let up: Vec<usize> = (0..k).map(|j| path[k - 1 - j]).collect();
    let mut level_of = vec![None; n];
    for (j, &e) in up.iter().enumerate() {
        level_of[e] = Some(j);
    }
    let black_copy = |e: usize| n + level_of[e].expect("path edge");
    let map_dart = |d: Dart| SliceDart {
        edge: d.edge,
        at_tail: d.at_tail,
    };
    let black_dart = |d: Dart| SliceDart {
        edge: black_copy(d.edge),
        at_tail: d.at_tail,
    };

    let mut path_vertex = vec![None; m.vertex_count()];
    path_vertex[m.tail(up[0])] = Some(0);
    for (j, &e) in up.iter().enumerate() {
        path_vertex[m.head(e)] = Some(j + 1);
    }

    let mut vertices = Vec::new();
    let mut left = vec![usize::MAX; k + 1];
    let mut right = vec![usize::MAX; k];
    let mut seen = vec![false; m.vertex_count()];
    let push = |orig: usize, side: Side, rot: Vec<SliceDart>, vs: &mut Vec<SliceVertex>| {
        vs.push(SliceVertex {
            orig,
            dist: dist.dist[orig],
            side,
            rot,
        });
        vs.len() - 1
    };
    for e in 0..n {
        for d in [Dart::tail(e), Dart::head(e)] {
            let v = m.vertex_of(d);
            if seen[v] {
                continue;
            }
            seen[v] = true;
            match path_vertex[v] {
                None => {
                    let rot = m.rotation_from(d).into_iter().map(map_dart).collect();
                    push(v, Side::Interior, rot, &mut vertices);
                }
                Some(0) => {
                    let bt = Dart::tail(up[0]);
                    let rot = m.rotation_from(bt);
                    let mut r = vec![black_dart(bt)];
                    r.extend(rot[1..].iter().map(|&d| map_dart(d)));
                    r.push(map_dart(bt));
                    let id = push(v, Side::Apex, r, &mut vertices);
                    left[0] = id;
                    right[0] = id;
                }
                Some(j) if j == k => {
                    let a = Dart::head(up[k - 1]);
                    let rot = m.rotation_from(a);
                    let mut r = vec![map_dart(a)];
                    r.extend(rot[1..].iter().map(|&d| map_dart(d)));
                    r.push(black_dart(a));
                    left[k] = push(v, Side::Endpoint, r, &mut vertices);
                }
                Some(j) => {
                    let a = Dart::head(up[j - 1]);
                    let bt = Dart::tail(up[j]);
                    let rot = m.rotation_from(bt);
                    let ia = rot
                        .iter()
                        .position(|&d| d == a)
                        .expect("incoming path dart");
                    let mut l = vec![black_dart(bt)];
                    l.extend(rot[1..ia].iter().map(|&d| map_dart(d)));
                    l.push(black_dart(a));
                    let mut r = vec![map_dart(a)];
                    r.extend(rot[ia + 1..].iter().map(|&d| map_dart(d)));
                    r.push(map_dart(bt));
                    left[j] = push(v, Side::Left, l, &mut vertices);
                    right[j] = push(v, Side::Right, r, &mut vertices);
                }
            }
        }
    }

    let wf = m.white_face_of();
    let bf = m.black_face_of();
    let mut edges: Vec<SliceEdge> = (0..n + k)
        .map(|e| {
            let orig = if e < n { e } else { up[e - n] };
            let (left, right) = match (e < n, level_of[orig]) {
                (true, None) => (Some(nf + bf[orig]), Some(wf[orig])),
                (true, Some(_)) => (None, Some(wf[orig])),
                (false, _) => (Some(nf + bf[orig]), None),
            };
            SliceEdge {
                orig,
                tail: usize::MAX,
                head: usize::MAX,
                left,
                right,
            }
        })
        .collect();
    let mut pos = vec![[usize::MAX; 2]; n + k];
    for (vi, v) in vertices.iter().enumerate() {
        for (i, sd) in v.rot.iter().enumerate() {
            if sd.at_tail {
                edges[sd.edge].tail = vi;
            } else {
                edges[sd.edge].head = vi;
            }
            pos[sd.edge][sd.at_tail as usize] = i;
        }
    }
    if edges
        .iter()
        .any(|e| e.tail == usize::MAX || e.head == usize::MAX)
    {
        return Err(OracleError::Invariant("slice edge without endpoint".into()));
    }
    let mut faces: Vec<Vec<usize>> = m.white_faces().iter().map(|f| f.to_vec()).collect();
    faces.extend(m.black_faces().iter().map(|f| {
        f.iter()
            .map(|&e| {
                if level_of[e].is_some() {
                    black_copy(e)
                } else {
                    e
                }
            })
            .collect()
    }));
    let s = Slice {
        source: m.clone(),
        root,
        height: k,
        white: nf,
        vertices,
        edges,
        faces,
        pos,
        left,
        right,
        up,
    };
    s.check_distances()?;
    Ok(s)
}

impl Slice {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn white_face_count(&self) -> usize {
        self.white
    }

    pub fn vertex(&self, v: usize) -> &SliceVertex {
        &self.vertices[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, e: usize) -> &SliceEdge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges of an inner face.
    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_white(&self, f: usize) -> bool {
        f < self.white
    }

    pub fn apex(&self) -> usize {
        self.left[0]
    }

    pub fn endpoint(&self) -> usize {
        self.left[self.height]
    }

    /// The base, marked edge of the original map.
    pub fn base(&self) -> usize {
        self.root
    }

    /// Left-boundary vertices by distance `0..=k`.
    pub fn left_boundary(&self) -> &[usize] {
        &self.left
    }

    /// Left-boundary edge from distance `j` to `j+1`.
    pub fn left_edge(&self, j: usize) -> usize {
        self.source.edge_count() + j
    }

    /// Right-boundary vertices by distance `0..=k-1`.
    pub fn right_boundary(&self) -> &[usize] {
        &self.right
    }

    /// Length of the outer face.
    pub fn outer_degree(&self) -> usize {
        self.edges
            .iter()
            .map(|e| e.left.is_none() as usize + e.right.is_none() as usize)
            .sum()
    }

    fn dist(&self, v: usize) -> usize {
        self.vertices[v].dist
    }

    fn dart_vertex(&self, d: SliceDart) -> usize {
        if d.at_tail {
            self.edges[d.edge].tail
        } else {
            self.edges[d.edge].head
        }
    }

    /// Darts clockwise around the vertex of `from`, excluding `from`.
    pub(crate) fn clockwise_after(&self, from: SliceDart) -> impl Iterator<Item = SliceDart> + '_ {
        let rot = &self.vertices[self.dart_vertex(from)].rot;
        let i = self.pos[from.edge][from.at_tail as usize];
        let len = rot.len();
        (1..len).map(move |s| rot[(i + len - s) % len])
    }

    fn check_distances(&self) -> Result<(), OracleError> {
        let mut d = vec![usize::MAX; self.vertices.len()];
        d[self.apex()] = 0;
        let mut queue = VecDeque::from([self.apex()]);
        while let Some(v) = queue.pop_front() {
            for sd in &self.vertices[v].rot {
                if sd.at_tail {
                    let h = self.edges[sd.edge].head;
                    if d[h] == usize::MAX {
                        d[h] = d[v] + 1;
                        queue.push_back(h);
                    }
                }
            }
        }
        for (v, sv) in self.vertices.iter().enumerate() {
            if d[v] != sv.dist {
                return Err(OracleError::Invariant(format!(
                    "slice distance {} differs from map distance {}",
                    d[v], sv.dist
                )));
            }
        }
        Ok(())
    }

    /// Number of shortest oriented paths from the apex to `target`.
    pub fn shortest_path_count(&self, target: usize) -> u64 {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| self.dist(v));
        let mut count = vec![0u64; self.vertices.len()];
        count[self.apex()] = 1;
        for v in order {
            if v == self.apex() {
                continue;
            }
            count[v] = self.vertices[v]
                .rot
                .iter()
                .filter(|sd| !sd.at_tail)
                .map(|sd| self.edges[sd.edge].tail)
                .filter(|&t| self.dist(t) + 1 == self.dist(v))
                .map(|t| count[t])
                .sum();
        }
        count[target]
    }

    /// The slice properties: outer face of degree `2k` bounded by the base,
    /// a left boundary of black-sided edges and a right boundary of
    /// white-sided edges; triangular inner faces; the left boundary is a
    /// shortest path and the right boundary the unique one to the base.
    pub fn check_properties(&self) -> Result<(), OracleError> {
        let fail = |s: String| Err(OracleError::Invariant(s));
        let k = self.height;
        if self.outer_degree() != 2 * k {
            return fail(format!(
                "outer degree {} for height {k}",
                self.outer_degree()
            ));
        }
        let mut boundary = BTreeSet::new();
        for &v in self.left.iter().chain(self.right.iter()) {
            boundary.insert(v);
        }
        if boundary.len() != 2 * k {
            return fail("outer boundary is not simple".into());
        }
        for j in 0..k {
            let e = &self.edges[self.edges.len() - k + j];
            if e.tail != self.left[j] || e.head != self.left[j + 1] || e.right.is_some() {
                return fail(format!("left boundary edge {j} is malformed"));
            }
        }
        for j in 0..k {
            let e = &self.edges[self.up[j]];
            let head = if j + 1 == k {
                self.endpoint()
            } else {
                self.right[j + 1]
            };
            if e.tail != self.right[j] || e.head != head || e.left.is_some() {
                return fail(format!("right boundary edge {j} is malformed"));
            }
        }
        if self.faces.iter().any(|f| f.len() != 3) {
            return fail("inner face of degree other than 3".into());
        }
        if self.dist(self.endpoint()) != k {
            return fail("left boundary is not a shortest path".into());
        }
        let x0 = self.right[k - 1];
        let paths = self.shortest_path_count(x0);
        if paths != 1 {
            return fail(format!("{paths} shortest paths from the apex to the base"));
        }
        Ok(())
    }

    /// Glues the left boundary back onto the right boundary and the base.
    pub fn reglue(&self) -> Result<EulerianMap, OracleError> {
        let n = self.source.edge_count();
        let orig = |d: SliceDart| Dart {
            edge: self.edges[d.edge].orig,
            at_tail: d.at_tail,
        };
        let mut rotations: Vec<Vec<Dart>> = Vec::new();
        let k = self.height;
        for (vi, v) in self.vertices.iter().enumerate() {
            match v.side {
                Side::Interior => rotations.push(v.rot.iter().map(|&d| orig(d)).collect()),
                Side::Apex | Side::Endpoint => {
                    rotations.push(v.rot[..v.rot.len() - 1].iter().map(|&d| orig(d)).collect())
                }
                Side::Left => {
                    let j = self
                        .left
                        .iter()
                        .position(|&u| u == vi)
                        .expect("left vertex");
                    let r = &self.vertices[self.right[j]].rot;
                    let mut all: Vec<Dart> =
                        v.rot[..v.rot.len() - 1].iter().map(|&d| orig(d)).collect();
                    all.extend(r[..r.len() - 1].iter().map(|&d| orig(d)));
                    rotations.push(all);
                }
                Side::Right => {}
            }
        }
        let mut w = vec![usize::MAX; n];
        let mut b = vec![usize::MAX; n];
        for rot in &rotations {
            for i in 0..rot.len() {
                let (d, next) = (rot[i], rot[(i + 1) % rot.len()]);
                match (d.at_tail, next.at_tail) {
                    (false, true) => w[d.edge] = next.edge,
                    (true, false) => b[next.edge] = d.edge,
                    _ => return Err(OracleError::Invariant("rotation does not alternate".into())),
                }
            }
        }
        if w.contains(&usize::MAX) || b.contains(&usize::MAX) || k == 0 {
            return Err(OracleError::Invariant(
                "regluing left a dangling edge".into(),
            ));
        }
        EulerianMap::from_permutations(w, b)
    }

    /// Whether regluing reproduces the source map up to rooted isomorphism.
    pub fn reglue_matches_source(&self) -> Result<bool, OracleError> {
        Ok(self.reglue()?.canonical_code(self.root) == self.source.canonical_code(self.root))
    }

    /// The dividing line at distance `d`, for `2 ≤ d ≤ k-1`.
    pub fn dividing_line(&self, d: usize) -> Result<DividingLine, OracleError> {
        let k = self.height;
        if d < 2 || d + 1 > k {
            return Err(OracleError::Precondition(format!(
                "dividing line at d = {d} in a {k}-slice"
            )));
        }
        let first = self.up[d - 1];
        let target = self.left[d - 1];
        let mut line = DividingLine {
            d,
            x: vec![self.right[d]],
            y: vec![self.right[d - 1]],
            edges: vec![first],
        };
        let mut arrival = SliceDart {
            edge: first,
            at_tail: true,
        };
        while *line.y.last().unwrap() != target {
            if line.edges.len() > self.edges.len() {
                return Err(OracleError::Invariant(
                    "dividing line does not terminate".into(),
                ));
            }
            let (xm, ym) = (*line.x.last().unwrap(), *line.y.last().unwrap());
            let step = self
                .clockwise_after(arrival)
                .filter(|sd| sd.at_tail)
                .find_map(|sd| {
                    let xv = self.edges[sd.edge].head;
                    if self.dist(xv) != d || xv == xm {
                        return None;
                    }
                    self.clockwise_after(SliceDart {
                        edge: sd.edge,
                        at_tail: false,
                    })
                    .filter(|s2| !s2.at_tail)
                    .find(|s2| {
                        let yv = self.edges[s2.edge].tail;
                        self.dist(yv) + 1 == d && yv != ym
                    })
                    .map(|s2| (sd.edge, xv, s2.edge, self.edges[s2.edge].tail))
                });
            let Some((e1, xv, e2, yv)) = step else {
                return Err(OracleError::Invariant(format!(
                    "dividing line stuck after {} steps",
                    line.p()
                )));
            };
            line.edges.push(e1);
            line.edges.push(e2);
            line.x.push(xv);
            line.y.push(yv);
            arrival = SliceDart {
                edge: e2,
                at_tail: true,
            };
        }
        Ok(line)
    }

    /// Faces reachable from `seed` without crossing `barrier` or entering
    /// `excluded`.
    pub fn flood(
        &self,
        seed: Option<usize>,
        barrier: &HashSet<usize>,
        excluded: &[usize],
    ) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let Some(seed) = seed else { return seen };
        if excluded.contains(&seed) {
            return seen;
        }
        seen.insert(seed);
        let mut stack = vec![seed];
        while let Some(f) = stack.pop() {
            for &e in &self.faces[f] {
                if barrier.contains(&e) {
                    continue;
                }
                let se = &self.edges[e];
                let other = if se.left == Some(f) {
                    se.right
                } else {
                    se.left
                };
                if let Some(g) = other {
                    if !excluded.contains(&g) && seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen
    }

    fn incident_faces(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[v].rot.iter().flat_map(move |sd| {
            let e = &self.edges[sd.edge];
            e.left.into_iter().chain(e.right)
        })
    }

    /// Checks that the line is simple, that vertices strictly below it are
    /// at distance at least `d`, and the two non-crossing constraints: no edge
    /// strictly below links two line vertices, and no vertex strictly below
    /// is adjacent to two distinct `y` vertices.
    pub fn check_dividing_line(&self, line: &DividingLine) -> Result<(), OracleError> {
        let fail = |s: String| Err(OracleError::Invariant(s));
        let on_line: BTreeSet<usize> = line.x.iter().chain(line.y.iter()).copied().collect();
        if on_line.len() != line.x.len() + line.y.len() {
            return fail("dividing line is not simple".into());
        }
        let barrier: HashSet<usize> = line.edges.iter().copied().collect();
        let lower = self.flood(self.edges[self.root].right, &barrier, &[]);
        if self.incident_faces(self.apex()).any(|f| lower.contains(&f)) {
            return fail("apex touches the lower part".into());
        }
        let strictly_lower =
            |v: usize| !on_line.contains(&v) && self.incident_faces(v).all(|f| lower.contains(&f));
        if !strictly_lower(self.endpoint()) {
            return fail("endpoint of the base is not below the line".into());
        }
        let ys: BTreeSet<usize> = line.y.iter().copied().collect();
        for v in 0..self.vertices.len() {
            if !strictly_lower(v) {
                continue;
            }
            if self.dist(v) < line.d {
                return fail(format!(
                    "vertex below the line at distance {}",
                    self.dist(v)
                ));
            }
            // a shared neighbour at distance d would give a second two-step
            // path; long edges up to d+1 do not
            if self.dist(v) != line.d {
                continue;
            }
            let adjacent: BTreeSet<usize> = self.vertices[v]
                .rot
                .iter()
                .map(|sd| {
                    if sd.at_tail {
                        self.edges[sd.edge].head
                    } else {
                        self.edges[sd.edge].tail
                    }
                })
                .filter(|u| ys.contains(u))
                .collect();
            if adjacent.len() > 1 {
                return fail("two y vertices share a neighbour below the line".into());
            }
        }
        for (e, se) in self.edges.iter().enumerate() {
            if barrier.contains(&e) || !on_line.contains(&se.tail) || !on_line.contains(&se.head) {
                continue;
            }
            if se
                .left
                .into_iter()
                .chain(se.right)
                .all(|f| lower.contains(&f))
            {
                return fail(format!("edge {e} below the line links two line vertices"));
            }
        }
        Ok(())
    }

    /// Leftmost backward shortest path starting at the vertex of `start`,
    /// scanning clockwise from `start`. Returns vertices indexed by distance
    /// and the edges used.
    pub fn leftmost_backward_from(
        &self,
        start: SliceDart,
    ) -> Result<(Vec<usize>, Vec<usize>), OracleError> {
        let z = self.dart_vertex(start);
        let mut vs = vec![z];
        let mut es = Vec::new();
        let mut arrival = start;
        loop {
            let u = *vs.last().unwrap();
            if self.dist(u) == 0 {
                break;
            }
            let next = self
                .clockwise_after(arrival)
                .find(|sd| !sd.at_tail && self.dist(self.edges[sd.edge].tail) + 1 == self.dist(u))
                .ok_or_else(|| {
                    OracleError::Invariant(format!("no backward edge at slice vertex {u}"))
                })?;
            es.push(next.edge);
            vs.push(self.edges[next.edge].tail);
            arrival = SliceDart {
                edge: next.edge,
                at_tail: true,
            };
        }
        vs.reverse();
        Ok((vs, es))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::distance::oriented_distances;
    use crate::oracle::map::enumerate_maps;

    fn all_slices(f: usize) -> Vec<Slice> {
        let mut out = Vec::new();
        for m in enumerate_maps(f).unwrap() {
            for o in 0..m.vertex_count() {
                let dist = oriented_distances(&m, o).unwrap();
                let (t, h) = dist.edge_type(&m, 0);
                if h == t + 1 {
                    out.push(cut_slice(&m, &dist, 0).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn triangle_two_slice() {
        let s = all_slices(1).into_iter().find(|s| s.height() == 2).unwrap();
        assert_eq!(s.outer_degree(), 4);
    }

    #[test]
    fn slice_properties_and_reglue() {
        for f in 1..=4 {
            for s in all_slices(f) {
                s.check_properties().unwrap();
                assert!(s.reglue_matches_source().unwrap());
            }
        }
    }

    #[test]
    fn one_slices_are_bundles() {
        for s in all_slices(3).into_iter().filter(|s| s.height() == 1) {
            let e = s.edge(s.base());
            assert_eq!((e.tail, e.head), (s.apex(), s.endpoint()));
            assert_eq!(s.outer_degree(), 2);
        }
    }

    #[test]
    fn dividing_lines_are_valid() {
        for f in 1..=4 {
            for s in all_slices(f) {
                for d in 2..s.height() {
                    let line = s.dividing_line(d).unwrap();
                    s.check_dividing_line(&line).unwrap();
                }
            }
        }
    }
}
