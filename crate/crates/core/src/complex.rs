//! The triangulation data structure on P²: vertices, undirected edges and
//! triangular faces, each face carrying a distinguishing plane plus the fixed
//! representative triple (spherical copy) that plane separates.
//!
//! No globally consistent half-edge orientation can exist on a non-orientable
//! surface, so the structure is an unoriented edge–face incidence: faces store
//! vertex triples, edges store their (at most two) incident faces.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, FlipObstruction};
use crate::kernel::{
    barycentric_signs, distinguishing_plane_for, join, positive_rep, DistinguishingPlane,
    ProjectivePoint,
};
use crate::scalar::{det3_sign, triple_neg, Mode, Triple, TripleKey};
use crate::smap::{classify, Classification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

/// Unordered vertex pair, normalized so the smaller id comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey(pub VertexId, pub VertexId);

impl EdgeKey {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            EdgeKey(a, b)
        } else {
            EdgeKey(b, a)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

#[derive(Clone, Debug)]
pub struct VertexRecord {
    pub point: ProjectivePoint,
    pub is_pseudo: bool,
    alive: bool,
}

#[derive(Clone, Debug)]
pub struct FaceRecord {
    pub vertices: [VertexId; 3],
    /// Representatives in R³ selecting the face's spherical copy; always on
    /// the strictly positive side of `plane`.
    pub reps: [Triple; 3],
    pub plane: DistinguishingPlane,
    /// denominator-cleared copies of `reps` for the walk's sign tests
    fast: FastReps,
    alive: bool,
}

/// Precomputed representative rows for cheap sign tests along a walk.
#[derive(Clone, Debug)]
enum FastReps {
    Int(Box<[[num_bigint::BigInt; 3]; 3]>),
    F64([[f64; 3]; 3], f64),
}

impl FastReps {
    fn build(reps: &[Triple; 3], mode: Mode) -> FastReps {
        match mode {
            Mode::Exact => FastReps::Int(Box::new([
                crate::scalar::int_row(&reps[0]),
                crate::scalar::int_row(&reps[1]),
                crate::scalar::int_row(&reps[2]),
            ])),
            Mode::Float { tol } => FastReps::F64(
                [
                    crate::scalar::triple_to_f64(&reps[0]),
                    crate::scalar::triple_to_f64(&reps[1]),
                    crate::scalar::triple_to_f64(&reps[2]),
                ],
                tol,
            ),
        }
    }

    /// Sign of `q · rep_k`.
    fn dot_sign(&self, k: usize, q: &FastQuery) -> i8 {
        match (self, q) {
            (FastReps::Int(rows), FastQuery::Int(qr)) => {
                let r = &rows[k];
                let small = r.iter().chain(qr.iter()).all(|v| v.bits() <= 62);
                if small {
                    use num_traits::ToPrimitive;
                    let d: i128 = (0..3)
                        .map(|i| r[i].to_i128().unwrap() * qr[i].to_i128().unwrap())
                        .sum();
                    d.signum() as i8
                } else {
                    let d = &r[0] * &qr[0] + &r[1] * &qr[1] + &r[2] * &qr[2];
                    match d.sign() {
                        num_bigint::Sign::Minus => -1,
                        num_bigint::Sign::NoSign => 0,
                        num_bigint::Sign::Plus => 1,
                    }
                }
            }
            (FastReps::F64(rows, tol), FastQuery::F64(qf)) => {
                let r = &rows[k];
                let v = r[0] * qf[0] + r[1] * qf[1] + r[2] * qf[2];
                let mag =
                    (r[0] * qf[0]).abs() + (r[1] * qf[1]).abs() + (r[2] * qf[2]).abs();
                crate::scalar::float_sign(v, mag, *tol)
            }
            _ => panic!("mixed arithmetic modes in walk"),
        }
    }

    /// Barycentric coefficient signs of `q` in the representative basis.
    fn membership_signs(&self, q: &FastQuery) -> Option<[i8; 3]> {
        match (self, q) {
            (FastReps::Int(rows), FastQuery::Int(qr)) => {
                let det = crate::scalar::det3_sign_int(&rows[0], &rows[1], &rows[2]);
                if det == 0 {
                    return None;
                }
                let x = crate::scalar::det3_sign_int(qr, &rows[1], &rows[2]) * det;
                let y = crate::scalar::det3_sign_int(&rows[0], qr, &rows[2]) * det;
                let z = crate::scalar::det3_sign_int(&rows[0], &rows[1], qr) * det;
                Some([x, y, z])
            }
            (FastReps::F64(rows, tol), FastQuery::F64(qf)) => {
                let (det, mag) = crate::scalar::f64_det3(rows[0], rows[1], rows[2]);
                let ds = crate::scalar::float_sign(det, mag, *tol);
                if ds == 0 {
                    return None;
                }
                let sign_of = |a, b, c| {
                    let (v, m) = crate::scalar::f64_det3(a, b, c);
                    crate::scalar::float_sign(v, m, *tol)
                };
                Some([
                    sign_of(*qf, rows[1], rows[2]) * ds,
                    sign_of(rows[0], *qf, rows[2]) * ds,
                    sign_of(rows[0], rows[1], *qf) * ds,
                ])
            }
            _ => panic!("mixed arithmetic modes in walk"),
        }
    }
}

#[derive(Clone, Debug)]
enum FastQuery {
    Int([num_bigint::BigInt; 3]),
    F64([f64; 3]),
}

impl FastQuery {
    fn build(t: &Triple, mode: Mode) -> FastQuery {
        match mode {
            Mode::Exact => FastQuery::Int(crate::scalar::int_row(t)),
            Mode::Float { .. } => FastQuery::F64(crate::scalar::triple_to_f64(t)),
        }
    }
}

impl FaceRecord {
    pub fn edge(&self, k: usize) -> EdgeKey {
        EdgeKey::new(self.vertices[k], self.vertices[(k + 1) % 3])
    }

    pub fn edge_index(&self, e: EdgeKey) -> Option<usize> {
        (0..3).find(|&k| self.edge(k) == e)
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn rep_of(&self, v: VertexId) -> Option<&Triple> {
        self.vertex_index(v).map(|i| &self.reps[i])
    }

    /// The vertex opposite the given edge.
    pub fn apex(&self, e: EdgeKey) -> Option<VertexId> {
        self.vertices.iter().copied().find(|&v| !e.contains(v))
    }
}

#[derive(Clone, Debug, Default)]
pub struct EdgeRecord {
    pub faces: Vec<FaceId>,
}

/// Status a walk terminated with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkOutcome {
    Found(FaceId),
    OnEdge(EdgeKey),
    OnVertex(VertexId),
}

/// Trace of a point-location walk: faces visited by the final attempt (each
/// consecutive pair adjacent) and how many times the walk restarted from a
/// different start vertex.
#[derive(Clone, Debug)]
pub struct WalkTrace {
    pub visited: Vec<FaceId>,
    pub restarts: usize,
    pub outcome: WalkOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationLevel {
    Off,
    Fast,
    Full,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub euler: i64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    mode: Mode,
    vertices: Vec<VertexRecord>,
    faces: Vec<FaceRecord>,
    edges: BTreeMap<EdgeKey, EdgeRecord>,
    vertex_faces: Vec<BTreeSet<FaceId>>,
    point_index: BTreeMap<TripleKey, VertexId>,
}

impl Triangulation {
    pub fn new(mode: Mode) -> Self {
        Triangulation {
            mode,
            vertices: Vec::new(),
            faces: Vec::new(),
            edges: BTreeMap::new(),
            vertex_faces: Vec::new(),
            point_index: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn add_vertex(&mut self, point: ProjectivePoint, is_pseudo: bool) -> Result<VertexId, Error> {
        let key = point.key();
        if let Some(existing) = self.point_index.get(&key) {
            return Err(Error::Internal(format!(
                "duplicate vertex: {existing:?} already holds this point"
            )));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(VertexRecord {
            point,
            is_pseudo,
            alive: true,
        });
        self.vertex_faces.push(BTreeSet::new());
        self.point_index.insert(key, id);
        Ok(id)
    }

    pub fn vertex(&self, v: VertexId) -> &VertexRecord {
        &self.vertices[v.0 as usize]
    }

    pub fn face(&self, f: FaceId) -> &FaceRecord {
        &self.faces[f.0 as usize]
    }

    pub fn edge(&self, e: EdgeKey) -> Option<&EdgeRecord> {
        self.edges.get(&e)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.alive)
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive)
            .map(|(i, _)| FaceId(i as u32))
    }

    pub fn edge_keys(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.edges.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.alive).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().filter(|f| f.alive).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn faces_of_vertex(&self, v: VertexId) -> &BTreeSet<FaceId> {
        &self.vertex_faces[v.0 as usize]
    }

    pub fn find_vertex(&self, p: &ProjectivePoint) -> Option<VertexId> {
        self.point_index.get(&p.key()).copied()
    }

    /// The face across edge `k` of `f`, if the edge has two faces.
    pub fn neighbor(&self, f: FaceId, k: usize) -> Option<FaceId> {
        let e = self.face(f).edge(k);
        self.edges
            .get(&e)?
            .faces
            .iter()
            .copied()
            .find(|&g| g != f)
    }

    /// Insert a face given its vertex ids and a consistent representative
    /// triple; the distinguishing plane is solved from the representatives.
    pub fn add_face(&mut self, vertices: [VertexId; 3], reps: [Triple; 3]) -> Result<FaceId, Error> {
        let plane = distinguishing_plane_for(&reps, self.mode)?;
        self.add_face_with_plane(vertices, reps, plane)
    }

    pub fn add_face_with_plane(
        &mut self,
        vertices: [VertexId; 3],
        reps: [Triple; 3],
        plane: DistinguishingPlane,
    ) -> Result<FaceId, Error> {
        if vertices[0] == vertices[1] || vertices[1] == vertices[2] || vertices[0] == vertices[2] {
            return Err(Error::Internal("face with repeated vertex".into()));
        }
        if !plane.separates(&reps) {
            return Err(Error::Internal(
                "face plane does not strictly separate its representatives".into(),
            ));
        }
        let id = FaceId(self.faces.len() as u32);
        // an edge may hold at most two faces, and no duplicate triple
        for k in 0..3 {
            let e = EdgeKey::new(vertices[k], vertices[(k + 1) % 3]);
            if let Some(rec) = self.edges.get(&e) {
                if rec.faces.len() >= 2 {
                    return Err(Error::Internal(format!("edge {e:?} already has two faces")));
                }
                for &g in &rec.faces {
                    let mut vs = self.face(g).vertices;
                    let mut ws = vertices;
                    vs.sort();
                    ws.sort();
                    if vs == ws {
                        return Err(Error::Internal("duplicate face triple".into()));
                    }
                }
            }
        }
        for k in 0..3 {
            let e = EdgeKey::new(vertices[k], vertices[(k + 1) % 3]);
            self.edges.entry(e).or_default().faces.push(id);
        }
        for &v in &vertices {
            self.vertex_faces[v.0 as usize].insert(id);
        }
        let fast = FastReps::build(&reps, self.mode);
        self.faces.push(FaceRecord {
            vertices,
            reps,
            plane,
            fast,
            alive: true,
        });
        Ok(id)
    }

    pub fn remove_face(&mut self, f: FaceId) {
        let vertices = self.face(f).vertices;
        for k in 0..3 {
            let e = EdgeKey::new(vertices[k], vertices[(k + 1) % 3]);
            if let Some(rec) = self.edges.get_mut(&e) {
                rec.faces.retain(|&g| g != f);
                if rec.faces.is_empty() {
                    self.edges.remove(&e);
                }
            }
        }
        for &v in &vertices {
            self.vertex_faces[v.0 as usize].remove(&f);
        }
        self.faces[f.0 as usize].alive = false;
    }

    fn remove_vertex(&mut self, v: VertexId) -> Result<(), Error> {
        if !self.vertex_faces[v.0 as usize].is_empty() {
            return Err(Error::Internal("removing vertex with incident faces".into()));
        }
        let key = self.vertices[v.0 as usize].point.key();
        self.point_index.remove(&key);
        self.vertices[v.0 as usize].alive = false;
        Ok(())
    }

    /// Remove a vertex all of whose faces are already gone.
    pub fn remove_isolated_vertex(&mut self, v: VertexId) -> Result<(), Error> {
        self.remove_vertex(v)
    }

    /// Classify `p` against face `f` using the face's plane.
    pub fn classify_face(&self, f: FaceId, p: &ProjectivePoint) -> Result<Classification, Error> {
        let rec = self.face(f);
        let [a, b, c] = rec.vertices;
        classify(
            &self.vertex(a).point,
            &self.vertex(b).point,
            &self.vertex(c).point,
            p,
            &rec.plane,
        )
    }

    // ---- mutations ------------------------------------------------------

    /// Split face `f` at an interior point: replace it by the three triangles
    /// joining `p` to the face's edges. All children inherit `f`'s plane.
    pub fn split_face(&mut self, f: FaceId, p: ProjectivePoint) -> Result<[FaceId; 3], Error> {
        if self.classify_face(f, &p)? != Classification::Inside {
            return Err(Error::NotInterior);
        }
        let rec = self.face(f).clone();
        let p_rep = positive_rep(&p, &rec.plane)
            .ok_or_else(|| Error::Internal("interior point on face plane".into()))?;
        let pv = self.add_vertex(p, false)?;
        self.remove_face(f);
        let [a, b, c] = rec.vertices;
        let [ra, rb, rc] = rec.reps.clone();
        let f0 = self.add_face_with_plane(
            [a, pv, b],
            [ra.clone(), p_rep.clone(), rb.clone()],
            rec.plane.clone(),
        )?;
        let f1 = self.add_face_with_plane(
            [b, pv, c],
            [rb, p_rep.clone(), rc.clone()],
            rec.plane.clone(),
        )?;
        let f2 = self.add_face_with_plane([c, pv, a], [rc, p_rep, ra], rec.plane.clone())?;
        Ok([f0, f1, f2])
    }

    /// Split edge `e` at a point strictly between its endpoints: both incident
    /// faces split in two, children inherit their parent's plane.
    ///
    /// The two incident faces share the edge arc through jointly ± aligned
    /// representatives, so their on-edge classifications are identical in
    /// exact arithmetic; accepting either keeps float mode from rejecting a
    /// point that rounds differently through the two faces' tests.
    pub fn split_edge(&mut self, e: EdgeKey, p: ProjectivePoint) -> Result<[FaceId; 4], Error> {
        let rec = self.edges.get(&e).ok_or(Error::NotOnEdge)?;
        if rec.faces.len() != 2 {
            return Err(Error::NotOnEdge);
        }
        let (fa, fb) = (rec.faces[0], rec.faces[1]);
        let mut on_edge = false;
        for f in [fa, fb] {
            let k = self
                .face(f)
                .edge_index(e)
                .ok_or_else(|| Error::Internal("edge not on its face".into()))?;
            if self.classify_face(f, &p)? == Classification::OnEdge(k) {
                on_edge = true;
                break;
            }
        }
        if !on_edge {
            return Err(Error::NotOnEdge);
        }
        debug_assert!(
            !self.mode.is_exact()
                || [fa, fb].iter().all(|&f| {
                    let k = self.face(f).edge_index(e).unwrap();
                    matches!(self.classify_face(f, &p), Ok(Classification::OnEdge(kk)) if kk == k)
                }),
            "exact on-edge classifications must agree across the shared edge"
        );
        let rec_a = self.face(fa).clone();
        let rec_b = self.face(fb).clone();
        let pv = self.add_vertex(p.clone(), false)?;
        self.remove_face(fa);
        self.remove_face(fb);
        let mut out = Vec::with_capacity(4);
        for rec in [rec_a, rec_b] {
            let p_rep = positive_rep(&p, &rec.plane)
                .ok_or_else(|| Error::Internal("edge point on face plane".into()))?;
            let u = rec
                .apex(e)
                .ok_or_else(|| Error::Internal("face has no apex for edge".into()))?;
            let ru = rec.rep_of(u).unwrap().clone();
            let ra = rec.rep_of(e.0).unwrap().clone();
            let rb = rec.rep_of(e.1).unwrap().clone();
            out.push(self.add_face_with_plane(
                [e.0, pv, u],
                [ra, p_rep.clone(), ru.clone()],
                rec.plane.clone(),
            )?);
            out.push(self.add_face_with_plane(
                [pv, e.1, u],
                [p_rep, rb, ru],
                rec.plane.clone(),
            )?);
        }
        Ok([out[0], out[1], out[2], out[3]])
    }

    /// Diagonal flip: replace edge `e` shared by two faces with the opposite
    /// diagonal of their quadrilateral, provided the result stays a simple
    /// graph and the two new triangles tile exactly the old pair.
    pub fn flip_edge(&mut self, e: EdgeKey) -> Result<EdgeKey, Error> {
        let rec = self
            .edges
            .get(&e)
            .ok_or(Error::NotFlippable(FlipObstruction::Geometry))?;
        if rec.faces.len() != 2 {
            return Err(Error::NotFlippable(FlipObstruction::Geometry));
        }
        let (fa, fb) = (rec.faces[0], rec.faces[1]);
        let u = self.face(fa).apex(e).unwrap();
        let w = self.face(fb).apex(e).unwrap();
        if u == w {
            return Err(Error::Internal("two faces with identical triples".into()));
        }
        if self.edges.contains_key(&EdgeKey::new(u, w)) {
            return Err(Error::NotFlippable(FlipObstruction::NonSimple));
        }
        let rec_a = self.face(fa).clone();
        let rec_b = self.face(fb).clone();
        let ra = rec_a.rep_of(e.0).unwrap().clone();
        let rb = rec_a.rep_of(e.1).unwrap().clone();
        let ru = rec_a.rep_of(u).unwrap().clone();
        let rw = lift_across(&rec_b, e, &ra, &rb)?
            .ok_or(Error::NotFlippable(FlipObstruction::Geometry))?;
        // Writing one shared endpoint in the basis of the other three, the
        // flip is admissible exactly when the quadrilateral is strictly convex
        // at the new diagonal: negative on the opposite endpoint, positive on
        // the apexes.
        let signs = barycentric_signs(&[ra.clone(), ru.clone(), rw.clone()], &rb, self.mode)
            .ok_or(Error::NotFlippable(FlipObstruction::Geometry))?;
        if !(signs[0] < 0 && signs[1] > 0 && signs[2] > 0) {
            return Err(Error::NotFlippable(FlipObstruction::Geometry));
        }
        let plane_a = distinguishing_plane_for(&[ru.clone(), rw.clone(), ra.clone()], self.mode)?;
        let plane_b = distinguishing_plane_for(&[ru.clone(), rw.clone(), rb.clone()], self.mode)?;
        self.remove_face(fa);
        self.remove_face(fb);
        self.add_face_with_plane([u, w, e.0], [ru.clone(), rw.clone(), ra], plane_a)?;
        self.add_face_with_plane([u, w, e.1], [ru, rw, rb], plane_b)?;
        Ok(EdgeKey::new(u, w))
    }

    /// Replace a pseudo-vertex by a real point interior to its star: delete
    /// the pseudo-point and its spokes, join `p` to the star's boundary cycle.
    pub fn replace_pseudo_star(
        &mut self,
        v: VertexId,
        p: ProjectivePoint,
    ) -> Result<VertexId, Error> {
        if !self.vertex(v).is_pseudo || !self.vertex(v).alive {
            return Err(Error::NotPseudo);
        }
        let p_is_v = self.vertex(v).point == p;
        if !p_is_v && self.find_vertex(&p).is_some() {
            return Err(Error::NotInRegion);
        }
        let (ring, link) = self.star_ring(v)?;
        // anchor: the ring face containing p (interior, on a spoke, or at v)
        let mut anchor = None;
        for (i, &f) in ring.iter().enumerate() {
            match self.classify_face(f, &p)? {
                Classification::Inside => {
                    anchor = Some(i);
                    break;
                }
                Classification::OnEdge(k) => {
                    if self.face(f).edge(k).contains(v) {
                        anchor = Some(i);
                        break;
                    } else {
                        return Err(Error::NotInRegion);
                    }
                }
                Classification::OnVertex(idx) => {
                    if self.face(f).vertices[idx] == v {
                        anchor = Some(i);
                        break;
                    } else {
                        return Err(Error::NotInRegion);
                    }
                }
                Classification::Outside => {}
            }
        }
        let anchor = anchor.ok_or(Error::NotInRegion)?;
        // lift the whole fan consistently, starting from the anchor's copy
        let k = ring.len();
        let mut sigma = vec![0i8; k];
        sigma[anchor] = 1;
        for step in 1..k {
            let i = (anchor + step) % k;
            let prev = (anchor + step - 1) % k;
            // faces i and prev share the spoke (v, link[i])
            let shared = link[i];
            let rv_prev = signed_rep(self.face(ring[prev]).rep_of(v).unwrap(), sigma[prev]);
            let rl_prev = signed_rep(self.face(ring[prev]).rep_of(shared).unwrap(), sigma[prev]);
            let rv_cur = self.face(ring[i]).rep_of(v).unwrap().clone();
            let rl_cur = self.face(ring[i]).rep_of(shared).unwrap().clone();
            sigma[i] = if rv_cur == rv_prev && rl_cur == rl_prev {
                1
            } else if triple_neg(&rv_cur) == rv_prev && triple_neg(&rl_cur) == rl_prev {
                -1
            } else {
                return Err(Error::Internal("inconsistent star lift".into()));
            };
        }
        // closing consistency: the fan must return to the anchor's copy
        {
            let i = anchor;
            let prev = (anchor + k - 1) % k;
            let shared = link[i];
            let rv_prev = signed_rep(self.face(ring[prev]).rep_of(v).unwrap(), sigma[prev]);
            let rl_prev = signed_rep(self.face(ring[prev]).rep_of(shared).unwrap(), sigma[prev]);
            let rv_cur = signed_rep(self.face(ring[i]).rep_of(v).unwrap(), sigma[i]);
            let rl_cur = signed_rep(self.face(ring[i]).rep_of(shared).unwrap(), sigma[i]);
            if rv_cur != rv_prev || rl_cur != rl_prev {
                return Err(Error::Internal("star lift does not close".into()));
            }
        }
        let anchor_plane = match sigma[anchor] {
            1 => self.face(ring[anchor]).plane.clone(),
            _ => unreachable!(),
        };
        let p_rep = positive_rep(&p, &anchor_plane).ok_or(Error::NotInRegion)?;
        // build replacement faces before mutating anything
        let mut new_faces = Vec::with_capacity(k);
        for (i, &f) in ring.iter().enumerate() {
            let li = link[i];
            let lj = link[(i + 1) % k];
            let rli = signed_rep(self.face(f).rep_of(li).unwrap(), sigma[i]);
            let rlj = signed_rep(self.face(f).rep_of(lj).unwrap(), sigma[i]);
            if det3_sign(&p_rep, &rli, &rlj, self.mode) == 0 {
                return Err(Error::DegenerateTriangle);
            }
            let reps = [p_rep.clone(), rli, rlj];
            let plane = distinguishing_plane_for(&reps, self.mode)?;
            new_faces.push(([li, lj], reps, plane));
        }
        for &f in &ring {
            self.remove_face(f);
        }
        self.remove_vertex(v)?;
        let pv = self.add_vertex(p, false)?;
        for ([li, lj], reps, plane) in new_faces {
            self.add_face_with_plane([pv, li, lj], reps, plane)?;
        }
        Ok(pv)
    }

    /// Faces around `v` in cyclic order, with `link[i]` the boundary vertex
    /// shared by faces `i-1` and `i`.
    pub fn star_ring(&self, v: VertexId) -> Result<(Vec<FaceId>, Vec<VertexId>), Error> {
        let star = self.faces_of_vertex(v);
        let k = star.len();
        if k < 3 {
            return Err(Error::Internal("vertex star smaller than 3 faces".into()));
        }
        let first = *star.iter().next().unwrap();
        let f0 = self.face(first);
        let others: Vec<VertexId> = f0.vertices.iter().copied().filter(|&x| x != v).collect();
        let (enter, mut exit) = (others[0], others[1]);
        let mut ring = vec![first];
        let mut link = vec![enter];
        let mut cur = first;
        while ring.len() < k {
            let e = EdgeKey::new(v, exit);
            let next = self
                .edges
                .get(&e)
                .and_then(|rec| rec.faces.iter().copied().find(|&g| g != cur))
                .ok_or_else(|| Error::Internal("open star around vertex".into()))?;
            link.push(exit);
            let nf = self.face(next);
            let nxt_exit = nf
                .vertices
                .iter()
                .copied()
                .find(|&x| x != v && x != exit)
                .ok_or_else(|| Error::Internal("degenerate star face".into()))?;
            ring.push(next);
            cur = next;
            exit = nxt_exit;
        }
        // the ring must close back to the first face
        let e = EdgeKey::new(v, exit);
        let closes = self
            .edges
            .get(&e)
            .map(|rec| rec.faces.contains(&first))
            .unwrap_or(false);
        if !closes || exit != link[0] {
            return Err(Error::Internal("vertex link is not a single cycle".into()));
        }
        Ok((ring, link))
    }

    // ---- point location --------------------------------------------------

    /// Locate `p` by walking along the line joining a start vertex to `p`.
    /// Degenerate alignments (the line passing through a vertex or along an
    /// edge) restart the walk from the next vertex, round-robin, with a budget
    /// of one restart per vertex.
    pub fn locate(&self, p: &ProjectivePoint, start: VertexId) -> Result<WalkTrace, Error> {
        if let Some(v) = self.find_vertex(p) {
            return Ok(WalkTrace {
                visited: Vec::new(),
                restarts: 0,
                outcome: WalkOutcome::OnVertex(v),
            });
        }
        let vertex_ids: Vec<VertexId> = self.vertex_ids().collect();
        if vertex_ids.is_empty() {
            return Err(Error::WalkStuck { restarts: 0 });
        }
        let budget = vertex_ids.len();
        let start_pos = vertex_ids.iter().position(|&v| v == start).unwrap_or(0);
        for attempt in 0..=budget {
            let s = vertex_ids[(start_pos + attempt) % vertex_ids.len()];
            if let Some(outcome_and_trace) = self.walk_attempt(p, s) {
                let (outcome, visited) = outcome_and_trace;
                return Ok(WalkTrace {
                    visited,
                    restarts: attempt,
                    outcome,
                });
            }
        }
        Err(Error::WalkStuck { restarts: budget })
    }

    /// One walk attempt; `None` signals a degenerate alignment needing a restart.
    ///
    /// All decisions are sign tests against the faces' representative copies:
    /// the walk line crosses the open arc between two representatives exactly
    /// when they lie strictly on opposite sides of the line's plane, and the
    /// query's containment is the coefficient-sign solve in the face basis
    /// (the same rule as the cone oracle, which classify() provably matches).
    fn walk_attempt(&self, p: &ProjectivePoint, start: VertexId) -> Option<(WalkOutcome, Vec<FaceId>)> {
        let sp = &self.vertex(start).point;
        let line = match join(sp, p) {
            Ok(l) => l,
            // p equivalent to start at the tolerance: report the vertex hit
            Err(_) => return Some((WalkOutcome::OnVertex(start), Vec::new())),
        };
        let lq = FastQuery::build(line.coeffs(), self.mode);
        let pq = FastQuery::build(p.coords(), self.mode);
        // direct hit among the faces around the start vertex
        for &f in self.faces_of_vertex(start) {
            if let Some(outcome) = self.membership_outcome(f, &pq) {
                return Some((outcome, vec![f]));
            }
        }
        // pick the first face whose opposite edge is properly crossed by the line
        let mut cursor: Option<(FaceId, EdgeKey)> = None;
        for &f in self.faces_of_vertex(start) {
            let rec = self.face(f);
            let opp_idx = (0..3).find(|&k| !rec.edge(k).contains(start))?;
            let (i, j) = (opp_idx, (opp_idx + 1) % 3);
            let si = rec.fast.dot_sign(i, &lq);
            let sj = rec.fast.dot_sign(j, &lq);
            if si == 0 || sj == 0 {
                return None;
            }
            if si != sj {
                let e = rec.edge(opp_idx);
                cursor = Some((self.neighbor(f, opp_idx)?, e));
                break;
            }
        }
        let (mut cur, mut entry) = cursor?;
        let mut visited = vec![cur];
        let max_steps = 2 * self.face_count() + 8;
        for _ in 0..max_steps {
            if let Some(outcome) = self.membership_outcome(cur, &pq) {
                return Some((outcome, visited));
            }
            let rec = self.face(cur);
            let s = [
                rec.fast.dot_sign(0, &lq),
                rec.fast.dot_sign(1, &lq),
                rec.fast.dot_sign(2, &lq),
            ];
            if s.contains(&0) {
                return None;
            }
            let mut exit = None;
            for k in 0..3 {
                let e = rec.edge(k);
                if e == entry {
                    continue;
                }
                if s[k] != s[(k + 1) % 3] {
                    if exit.is_some() {
                        return None;
                    }
                    exit = Some((k, e));
                }
            }
            let (k, e) = exit?;
            cur = self.neighbor(cur, k)?;
            entry = e;
            visited.push(cur);
        }
        None
    }

    /// Containment outcome of the query against one face, or `None` when the
    /// query is outside. Equivalent to `classify_face` by the oracle
    /// equivalence of the in-triangle test.
    fn membership_outcome(&self, f: FaceId, pq: &FastQuery) -> Option<WalkOutcome> {
        let rec = self.face(f);
        let signs = rec.fast.membership_signs(pq)?;
        match crate::smap::coefficient_signs_classification(signs[0], signs[1], signs[2]) {
            Classification::Inside => Some(WalkOutcome::Found(f)),
            Classification::OnEdge(k) => Some(WalkOutcome::OnEdge(rec.edge(k))),
            Classification::OnVertex(i) => Some(WalkOutcome::OnVertex(rec.vertices[i])),
            Classification::Outside => None,
        }
    }

    // ---- validation ------------------------------------------------------

    /// Cheap structural check used after each mutation in debug builds:
    /// every edge has two faces and the Euler characteristic is 1.
    pub fn fast_check(&self) -> bool {
        self.edges.values().all(|rec| rec.faces.len() == 2) && self.euler_characteristic() == 1
    }

    pub fn validate(&self, level: ValidationLevel, tiling_samples: usize, seed: u64) -> ValidationReport {
        let mut checks = Vec::new();
        if level != ValidationLevel::Off {
            checks.push(self.check_simple());
            checks.push(self.check_edge_degrees());
            checks.push(self.check_vertex_links());
            checks.push(self.check_euler());
            checks.push(self.check_planes());
        }
        if level == ValidationLevel::Full {
            checks.push(self.check_tiling(tiling_samples, seed));
        }
        ValidationReport {
            checks,
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            face_count: self.face_count(),
            euler: self.euler_characteristic(),
        }
    }

    fn check_simple(&self) -> CheckResult {
        let mut details = Vec::new();
        let mut seen = BTreeSet::new();
        for f in self.face_ids() {
            let mut vs = self.face(f).vertices;
            if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
                details.push(format!("face {f:?} repeats a vertex"));
            }
            vs.sort();
            if !seen.insert(vs) {
                details.push(format!("face {f:?} duplicates another face's triple"));
            }
            for &v in &self.face(f).vertices {
                if !self.vertices[v.0 as usize].alive {
                    details.push(format!("face {f:?} references dead vertex {v:?}"));
                }
            }
        }
        for (e, rec) in &self.edges {
            if e.0 == e.1 {
                details.push(format!("self-loop edge {e:?}"));
            }
            for &f in &rec.faces {
                if self.face(f).edge_index(*e).is_none() {
                    details.push(format!("edge {e:?} lists face {f:?} not containing it"));
                }
            }
        }
        CheckResult {
            name: "simple-complex",
            passed: details.is_empty(),
            details,
        }
    }

    fn check_edge_degrees(&self) -> CheckResult {
        let details: Vec<String> = self
            .edges
            .iter()
            .filter(|(_, rec)| rec.faces.len() != 2)
            .map(|(e, rec)| format!("edge {e:?} has {} incident faces", rec.faces.len()))
            .collect();
        CheckResult {
            name: "edge-degree-2",
            passed: details.is_empty(),
            details,
        }
    }

    fn check_vertex_links(&self) -> CheckResult {
        let mut details = Vec::new();
        for v in self.vertex_ids() {
            if let Err(e) = self.star_ring(v) {
                details.push(format!("vertex {v:?}: {e}"));
            }
        }
        CheckResult {
            name: "vertex-links-single-cycle",
            passed: details.is_empty(),
            details,
        }
    }

    fn check_euler(&self) -> CheckResult {
        let chi = self.euler_characteristic();
        CheckResult {
            name: "euler-characteristic-1",
            passed: chi == 1,
            details: if chi == 1 {
                Vec::new()
            } else {
                vec![format!("V - E + F = {chi}")]
            },
        }
    }

    fn check_planes(&self) -> CheckResult {
        let mut details = Vec::new();
        for f in self.face_ids() {
            let rec = self.face(f);
            if !rec.plane.separates(&rec.reps) {
                details.push(format!("face {f:?} plane does not separate its copy"));
            }
            for (i, &v) in rec.vertices.iter().enumerate() {
                let canon = self.vertex(v).point.coords().clone();
                if rec.reps[i] != canon && rec.reps[i] != triple_neg(&canon) {
                    details.push(format!(
                        "face {f:?} representative {i} is not ± the vertex point"
                    ));
                }
            }
        }
        CheckResult {
            name: "plane-separation",
            passed: details.is_empty(),
            details,
        }
    }

    fn check_tiling(&self, samples: usize, seed: u64) -> CheckResult {
        let report = crate::oracle::sample_tiling(self, samples, seed);
        let mut details = Vec::new();
        if !report.passed() {
            for (dir, hits) in report.violations.iter().take(5) {
                details.push(format!("direction {dir:?} lies in {hits} face interiors"));
            }
        }
        CheckResult {
            name: "sphere-tiling-sampled",
            passed: report.passed(),
            details,
        }
    }
}

fn signed_rep(t: &Triple, sigma: i8) -> Triple {
    if sigma >= 0 {
        t.clone()
    } else {
        triple_neg(t)
    }
}

/// Representative of the apex of `other` (the face across `e`), lifted so its
/// copy shares the representatives `ra`, `rb` of the edge endpoints.
/// Returns `Ok(None)` if the stored copies are not ± aligned (corrupt store).
fn lift_across(
    other: &FaceRecord,
    e: EdgeKey,
    ra: &Triple,
    rb: &Triple,
) -> Result<Option<Triple>, Error> {
    let oa = other
        .rep_of(e.0)
        .ok_or_else(|| Error::Internal("edge endpoint missing from face".into()))?;
    let ob = other
        .rep_of(e.1)
        .ok_or_else(|| Error::Internal("edge endpoint missing from face".into()))?;
    let apex = other
        .apex(e)
        .ok_or_else(|| Error::Internal("face has no apex".into()))?;
    let rw = other.rep_of(apex).unwrap();
    if oa == ra && ob == rb {
        Ok(Some(rw.clone()))
    } else if triple_neg(oa) == *ra && triple_neg(ob) == *rb {
        Ok(Some(triple_neg(rw)))
    } else {
        Ok(None)
    }
}
