//! Seed machinery: finding six points in general position, building the
//! 7-vertex initial triangulation over a quadrangulation's complete
//! quadrilateral (three pseudo-points), selecting a canonical set, and
//! eliminating all pseudo-points to produce the 6-vertex base triangulation.

use std::collections::BTreeMap;

use crate::complex::{FaceId, Triangulation, VertexId, WalkOutcome};
use crate::error::Error;
use crate::kernel::{barycentric_signs, collinear, join, meet, ProjectivePoint};
use crate::scalar::{triple_neg, Mode, Triple};

/// Indices (into the caller's point list) of six points, no three collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSet {
    pub indices: [usize; 6],
}

/// A quadrangulation plus two extras lying in different regions of the
/// initial triangulation the quad induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSet {
    pub quad: [usize; 4],
    pub extras: [usize; 2],
}

/// Result of [`build_initial`]: the triangulation plus the ids of the four
/// real and three pseudo vertices.
#[derive(Clone, Debug)]
pub struct InitialBuild {
    pub tri: Triangulation,
    pub quad: [VertexId; 4],
    /// pseudo-points: 12∩34, 13∩24, 14∩23 in that order
    pub pseudos: [VertexId; 3],
}

impl InitialBuild {
    /// Faces grouped by the pseudo-point they are incident to.
    pub fn region_map(&self) -> BTreeMap<VertexId, Vec<FaceId>> {
        let mut map = BTreeMap::new();
        for &ps in &self.pseudos {
            let faces: Vec<FaceId> = self.tri.faces_of_vertex(ps).iter().copied().collect();
            map.insert(ps, faces);
        }
        map
    }

    /// The pseudo-point whose region contains `p`, or `None` when `p` lies on
    /// the 1-skeleton or at a vertex.
    pub fn region_of(&self, p: &ProjectivePoint) -> Option<VertexId> {
        let trace = self.tri.locate(p, self.quad[0]).ok()?;
        match trace.outcome {
            WalkOutcome::Found(f) => self
                .tri
                .face(f)
                .vertices
                .iter()
                .copied()
                .find(|&v| self.tri.vertex(v).is_pseudo),
            _ => None,
        }
    }
}

/// Output of [`build_canonical`]: pseudo-free triangulation plus the map
/// from the six canonical input indices to their vertex ids.
#[derive(Clone, Debug)]
pub struct CanonicalBuild {
    pub tri: Triangulation,
    pub vertex_of_input: BTreeMap<usize, VertexId>,
}

/// Greedy seed search iterated over all starting points. For each start, grow
/// a set by adding any point not collinear with two members; succeed once six
/// are collected.
pub fn find_seed_exhaustive(points: &[ProjectivePoint]) -> Result<SeedSet, Error> {
    let n = points.len();
    if n < 6 {
        return Err(Error::NoSeed(format!(
            "only {n} distinct points; six are required"
        )));
    }
    for start in 0..n {
        let mut chosen = vec![start];
        for j in 0..n {
            if chosen.len() == 6 {
                break;
            }
            if chosen.contains(&j) {
                continue;
            }
            let mut ok = true;
            'pairs: for a in 0..chosen.len() {
                for b in (a + 1)..chosen.len() {
                    if collinear(&points[chosen[a]], &points[chosen[b]], &points[j]) {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok {
                chosen.push(j);
            }
        }
        if chosen.len() == 6 {
            let mut indices = [0usize; 6];
            indices.copy_from_slice(&chosen);
            return Ok(SeedSet { indices });
        }
    }
    Err(Error::NoSeed(
        "greedy growth failed from every starting point; no known method finds a \
         general-position six-point subset in all cases"
            .into(),
    ))
}

/// Line-cover seed strategy: pick two points and delete everything else on
/// their line L; pick two more, delete everything on their line M and on the
/// two cross lines N, T; pick the final two. Linear time when the minimum
/// line cover exceeds four; the resulting set is verified for general
/// position and rejected if the procedure's gaps let a collinearity through.
pub fn find_seed_linecover(points: &[ProjectivePoint]) -> Result<SeedSet, Error> {
    let n = points.len();
    if n < 6 {
        return Err(Error::NoSeed(format!(
            "only {n} distinct points; six are required"
        )));
    }
    let mut alive = vec![true; n];
    let mut cursor = 0usize;
    let mut take = |alive: &mut Vec<bool>| -> Option<usize> {
        while cursor < n {
            if alive[cursor] {
                let got = cursor;
                alive[got] = false;
                cursor += 1;
                return Some(got);
            }
            cursor += 1;
        }
        None
    };
    let exhausted = || Error::NoSeed("line-cover strategy exhausted the point set".into());

    let p1 = take(&mut alive).ok_or_else(exhausted)?;
    let p2 = take(&mut alive).ok_or_else(exhausted)?;
    let line_l = join(&points[p1], &points[p2]).map_err(|_| exhausted())?;
    delete_on_line(points, &mut alive, &line_l);

    let p3 = take(&mut alive).ok_or_else(exhausted)?;
    let p4 = take(&mut alive).ok_or_else(exhausted)?;
    let line_m = join(&points[p3], &points[p4]).map_err(|_| exhausted())?;
    let line_n = join(&points[p1], &points[p3]).map_err(|_| exhausted())?;
    let line_t = join(&points[p2], &points[p4]).map_err(|_| exhausted())?;
    delete_on_line(points, &mut alive, &line_m);
    delete_on_line(points, &mut alive, &line_n);
    delete_on_line(points, &mut alive, &line_t);

    let p5 = take(&mut alive).ok_or_else(exhausted)?;
    let p6 = take(&mut alive).ok_or_else(exhausted)?;

    let indices = [p1, p2, p3, p4, p5, p6];
    for a in 0..6 {
        for b in (a + 1)..6 {
            for c in (b + 1)..6 {
                if collinear(&points[indices[a]], &points[indices[b]], &points[indices[c]]) {
                    return Err(Error::NoSeed(
                        "line-cover strategy produced a set with three collinear points".into(),
                    ));
                }
            }
        }
    }
    Ok(SeedSet { indices })
}

fn delete_on_line(points: &[ProjectivePoint], alive: &mut [bool], line: &crate::kernel::ProjectiveLine) {
    for (i, p) in points.iter().enumerate() {
        if alive[i] && crate::kernel::incident(p, line) {
            alive[i] = false;
        }
    }
}

/// Build the initial triangulation over a quadrangulation: the six lines of
/// the complete quadrilateral meet in three pseudo-points, and the twelve
/// arrangement cells are triangles, each incident to exactly one pseudo-point.
pub fn build_initial(points: &[ProjectivePoint; 4], mode: Mode) -> Result<InitialBuild, Error> {
    for a in 0..4 {
        for b in (a + 1)..4 {
            for c in (b + 1)..4 {
                if collinear(&points[a], &points[b], &points[c]) {
                    return Err(Error::DegenerateQuad);
                }
            }
        }
    }
    let line = |i: usize, j: usize| join(&points[i], &points[j]).map_err(|_| Error::DegenerateQuad);
    let pseudo_p = meet(&line(0, 1)?, &line(2, 3)?).map_err(|_| Error::DegenerateQuad)?;
    let pseudo_q = meet(&line(0, 2)?, &line(1, 3)?).map_err(|_| Error::DegenerateQuad)?;
    let pseudo_r = meet(&line(0, 3)?, &line(1, 2)?).map_err(|_| Error::DegenerateQuad)?;

    let mut tri = Triangulation::new(mode);
    let mut quad = [VertexId(0); 4];
    for (i, p) in points.iter().enumerate() {
        quad[i] = tri
            .add_vertex(p.clone(), false)
            .map_err(|_| Error::DegenerateQuad)?;
    }
    let mut pseudos = [VertexId(0); 3];
    for (i, p) in [pseudo_p, pseudo_q, pseudo_r].into_iter().enumerate() {
        pseudos[i] = tri
            .add_vertex(p, true)
            .map_err(|_| Error::DegenerateQuad)?;
    }
    let [v1, v2, v3, v4] = quad;
    let [pp, qq, rr] = pseudos;
    // Fixed combinatorics of the complete quadrilateral: each pseudo-point's
    // link avoids the two quad edges whose lines pass through it.
    let face_table: [[VertexId; 3]; 12] = [
        [pp, v1, v3],
        [pp, v1, v4],
        [pp, v2, v4],
        [pp, v2, v3],
        [qq, v1, v2],
        [qq, v2, v3],
        [qq, v3, v4],
        [qq, v1, v4],
        [rr, v1, v2],
        [rr, v1, v3],
        [rr, v3, v4],
        [rr, v2, v4],
    ];
    let all_ids = [v1, v2, v3, v4, pp, qq, rr];
    for verts in face_table {
        let reps = select_face_copy(&tri, verts, &all_ids)?;
        tri.add_face(verts, reps)?;
    }
    debug_assert!(tri.fast_check());
    Ok(InitialBuild { tri, quad, pseudos })
}

/// Choose which spherical copy a combinatorial face denotes: among the four
/// sign patterns over the vertices' canonical representatives (first vertex
/// fixed positive), exactly one spans a cone whose closed double cone contains
/// none of the other four vertex directions.
fn select_face_copy(
    tri: &Triangulation,
    verts: [VertexId; 3],
    all: &[VertexId; 7],
) -> Result<[Triple; 3], Error> {
    let base: Vec<Triple> = verts
        .iter()
        .map(|&v| tri.vertex(v).point.coords().clone())
        .collect();
    let others: Vec<Triple> = all
        .iter()
        .filter(|v| !verts.contains(v))
        .map(|&v| tri.vertex(v).point.coords().clone())
        .collect();
    let mode = tri.mode();
    let mut found: Option<[Triple; 3]> = None;
    for eps in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let frame = [
            base[0].clone(),
            signed(&base[1], eps.0),
            signed(&base[2], eps.1),
        ];
        let mut clean = true;
        for other in &others {
            match barycentric_signs(&frame, other, mode) {
                None => return Err(Error::DegenerateQuad),
                Some(s) => {
                    let nonneg = s.iter().all(|&v| v >= 0);
                    let nonpos = s.iter().all(|&v| v <= 0);
                    if nonneg || nonpos {
                        clean = false;
                        break;
                    }
                }
            }
        }
        if clean {
            if found.is_some() {
                return Err(Error::Internal(
                    "ambiguous spherical copy for initial face".into(),
                ));
            }
            found = Some(frame);
        }
    }
    found.ok_or_else(|| Error::Internal("no admissible spherical copy for initial face".into()))
}

fn signed(t: &Triple, s: i8) -> Triple {
    if s >= 0 {
        t.clone()
    } else {
        triple_neg(t)
    }
}

/// Enumerate the fifteen 4-subsets of the seed in lexicographic order and
/// return the first whose two leftover points land in regions of distinct
/// pseudo-points. Guaranteed to succeed for a valid seed.
pub fn find_canonical(
    points: &[ProjectivePoint],
    seed: &SeedSet,
    mode: Mode,
) -> Result<CanonicalSet, Error> {
    for s0 in 0..6 {
        for s1 in (s0 + 1)..6 {
            for s2 in (s1 + 1)..6 {
                for s3 in (s2 + 1)..6 {
                    let quad_slots = [s0, s1, s2, s3];
                    let extra_slots: Vec<usize> =
                        (0..6).filter(|k| !quad_slots.contains(k)).collect();
                    let quad = [
                        seed.indices[s0],
                        seed.indices[s1],
                        seed.indices[s2],
                        seed.indices[s3],
                    ];
                    let extras = [seed.indices[extra_slots[0]], seed.indices[extra_slots[1]]];
                    let quad_points = [
                        points[quad[0]].clone(),
                        points[quad[1]].clone(),
                        points[quad[2]].clone(),
                        points[quad[3]].clone(),
                    ];
                    let init = build_initial(&quad_points, mode)?;
                    let r0 = init.region_of(&points[extras[0]]);
                    let r1 = init.region_of(&points[extras[1]]);
                    if let (Some(a), Some(b)) = (r0, r1) {
                        if a != b {
                            return Ok(CanonicalSet { quad, extras });
                        }
                    }
                }
            }
        }
    }
    Err(Error::Internal(
        "no canonical set among the seed's 4-subsets despite general position".into(),
    ))
}

/// How many input points lie on one line, maximized over lines spanned by
/// pairs from a fixed prefix of the input. A line holding all but two points
/// misses at most two prefix points, so sampling pairs from any 40-point
/// prefix finds it exactly.
pub fn max_collinear_count(points: &[ProjectivePoint]) -> usize {
    let n = points.len();
    if n < 3 {
        return n;
    }
    let prefix = n.min(40);
    let mut best = 2;
    for i in 0..prefix {
        for j in (i + 1)..prefix {
            let Ok(line) = join(&points[i], &points[j]) else {
                continue;
            };
            let count = points
                .iter()
                .filter(|p| crate::kernel::incident(p, &line))
                .count();
            best = best.max(count);
        }
    }
    best
}

/// Result of the bounded direct canonical-set search.
#[derive(Clone, Debug, Default)]
pub struct CandidateSearch {
    pub candidates: Vec<CanonicalSet>,
    /// whether any non-degenerate quadrangulation was seen at all
    pub saw_quad: bool,
}

/// Bounded lexicographic search for canonical sets over the whole point set,
/// used when no general-position seed exists: a quadrangulation with two
/// leftover points in different regions suffices to attempt the construction
/// even when the six points are not in general position. Returns candidates
/// in enumeration order, at most `max_candidates`, examining at most
/// `subset_budget` 4-subsets.
pub fn canonical_candidates(
    points: &[ProjectivePoint],
    mode: Mode,
    subset_budget: usize,
    max_candidates: usize,
) -> CandidateSearch {
    const PAIRS_PER_QUAD: usize = 8;
    let n = points.len();
    let mut examined = 0usize;
    let mut out = CandidateSearch::default();
    'outer: for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    examined += 1;
                    if examined > subset_budget || out.candidates.len() >= max_candidates {
                        break 'outer;
                    }
                    let quad_idx = [a, b, c, d];
                    let quad_points = [
                        points[a].clone(),
                        points[b].clone(),
                        points[c].clone(),
                        points[d].clone(),
                    ];
                    let init = match build_initial(&quad_points, mode) {
                        Ok(i) => i,
                        Err(_) => continue,
                    };
                    out.saw_quad = true;
                    let mut located: Vec<(usize, VertexId)> = Vec::new();
                    for (i, p) in points.iter().enumerate() {
                        if quad_idx.contains(&i) {
                            continue;
                        }
                        if let Some(region) = init.region_of(p) {
                            located.push((i, region));
                        }
                    }
                    let mut emitted = 0usize;
                    'pairs: for x in 0..located.len() {
                        for y in (x + 1)..located.len() {
                            if located[x].1 != located[y].1 {
                                out.candidates.push(CanonicalSet {
                                    quad: quad_idx,
                                    extras: [located[x].0, located[y].0],
                                });
                                emitted += 1;
                                if emitted >= PAIRS_PER_QUAD
                                    || out.candidates.len() >= max_candidates
                                {
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Construct the pseudo-point-free 6-vertex triangulation from a canonical
/// set: build the initial triangulation, replace the two pseudo-points whose
/// regions hold the extras, flip one of the two candidate diagonals to join
/// the extras, then delete the last pseudo-point and re-insert the flipped
/// edge across its region.
pub fn build_canonical(
    points: &[ProjectivePoint],
    cs: &CanonicalSet,
    mode: Mode,
) -> Result<CanonicalBuild, Error> {
    let quad_points = [
        points[cs.quad[0]].clone(),
        points[cs.quad[1]].clone(),
        points[cs.quad[2]].clone(),
        points[cs.quad[3]].clone(),
    ];
    let init = build_initial(&quad_points, mode)?;
    let region0 = init
        .region_of(&points[cs.extras[0]])
        .ok_or(Error::NotInRegion)?;
    let region1 = init
        .region_of(&points[cs.extras[1]])
        .ok_or(Error::NotInRegion)?;
    if region0 == region1 {
        return Err(Error::Internal("canonical extras share a region".into()));
    }
    let mut tri = init.tri;
    let v5 = tri.replace_pseudo_star(region0, points[cs.extras[0]].clone())?;
    let v6 = tri.replace_pseudo_star(region1, points[cs.extras[1]].clone())?;
    let leftover = init
        .pseudos
        .iter()
        .copied()
        .find(|&ps| ps != region0 && ps != region1)
        .expect("three pseudo-points");

    // The two candidate diagonals are the quad edges whose incident faces
    // are apexed by the two new vertices; their lines meet at the leftover
    // pseudo-point.
    let mut candidates = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let e = crate::complex::EdgeKey::new(init.quad[i], init.quad[j]);
            if let Some(rec) = tri.edge(e) {
                if rec.faces.len() == 2 {
                    let mut apexes: Vec<VertexId> = rec
                        .faces
                        .iter()
                        .map(|&f| tri.face(f).apex(e).unwrap())
                        .collect();
                    apexes.sort();
                    let mut want = [v5, v6];
                    want.sort();
                    if apexes == want {
                        candidates.push(e);
                    }
                }
            }
        }
    }
    candidates.sort();
    if candidates.is_empty() {
        return Err(Error::Internal(
            "no candidate diagonal between the two inserted extras".into(),
        ));
    }
    let mut flipped = None;
    for &e in &candidates {
        match tri.flip_edge(e) {
            Ok(_) => {
                flipped = Some(e);
                break;
            }
            Err(Error::NotFlippable(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    let chord = flipped.ok_or(Error::CollinearObstruction)?;

    // Delete the leftover pseudo-point and triangulate its quadrilateral
    // region with the chord: the chord's line passes through the pseudo-point,
    // so the two chord triangles tile the region exactly.
    let (ring, link) = tri.star_ring(leftover)?;
    if ring.len() != 4 {
        return Err(Error::Internal(format!(
            "leftover pseudo-point has a {}-face star",
            ring.len()
        )));
    }
    let pos_a = link
        .iter()
        .position(|&v| v == chord.0)
        .ok_or_else(|| Error::Internal("chord endpoint missing from region boundary".into()))?;
    let pos_b = link
        .iter()
        .position(|&v| v == chord.1)
        .ok_or_else(|| Error::Internal("chord endpoint missing from region boundary".into()))?;
    if (pos_a + 2) % 4 != pos_b {
        return Err(Error::Internal(
            "chord endpoints adjacent on the region boundary".into(),
        ));
    }
    // consistent lift of the 4-face fan
    let lifted = lift_fan(&tri, &ring, &link, leftover)?;
    let m = link[(pos_a + 1) % 4];
    let w = link[(pos_a + 3) % 4];
    let (ra, rm, rb, rw) = (
        lifted[pos_a].clone(),
        lifted[(pos_a + 1) % 4].clone(),
        lifted[pos_b].clone(),
        lifted[(pos_a + 3) % 4].clone(),
    );
    let face1 = ([chord.0, m, chord.1], [ra.clone(), rm, rb.clone()]);
    let face2 = ([chord.0, chord.1, w], [ra, rb, rw]);
    for f in &ring {
        tri.remove_face(*f);
    }
    // the leftover pseudo-point's spokes died with its faces
    tri.remove_isolated_vertex(leftover)?;
    tri.add_face(face1.0, face1.1)?;
    tri.add_face(face2.0, face2.1)?;

    if tri.vertex_count() != 6 || tri.edge_count() != 15 || tri.face_count() != 10 {
        return Err(Error::Internal(format!(
            "canonical build produced V={} E={} F={}",
            tri.vertex_count(),
            tri.edge_count(),
            tri.face_count()
        )));
    }
    debug_assert!(tri.fast_check());

    let mut vertex_of_input = BTreeMap::new();
    for (i, &idx) in cs.quad.iter().enumerate() {
        vertex_of_input.insert(idx, init.quad[i]);
    }
    vertex_of_input.insert(cs.extras[0], v5);
    vertex_of_input.insert(cs.extras[1], v6);
    Ok(CanonicalBuild { tri, vertex_of_input })
}

/// Consistent lift of a closed fan around `center`: representatives of the
/// link vertices shared between consecutive faces.
fn lift_fan(
    tri: &Triangulation,
    ring: &[FaceId],
    link: &[VertexId],
    center: VertexId,
) -> Result<Vec<Triple>, Error> {
    let k = ring.len();
    let mut sigma = vec![0i8; k];
    sigma[0] = 1;
    for i in 1..k {
        let shared = link[i];
        let prev = i - 1;
        let rv_prev = signed(tri.face(ring[prev]).rep_of(center).unwrap(), sigma[prev]);
        let rl_prev = signed(tri.face(ring[prev]).rep_of(shared).unwrap(), sigma[prev]);
        let rv_cur = tri.face(ring[i]).rep_of(center).unwrap().clone();
        let rl_cur = tri.face(ring[i]).rep_of(shared).unwrap().clone();
        sigma[i] = if rv_cur == rv_prev && rl_cur == rl_prev {
            1
        } else if triple_neg(&rv_cur) == rv_prev && triple_neg(&rl_cur) == rl_prev {
            -1
        } else {
            return Err(Error::Internal("inconsistent fan lift".into()));
        };
    }
    Ok((0..k)
        .map(|i| signed(tri.face(ring[i]).rep_of(link[i]).unwrap(), sigma[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ValidationLevel;

    const M: Mode = Mode::Exact;

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::from_ints(x, y, z, M).unwrap()
    }

    fn frame_quad() -> [ProjectivePoint; 4] {
        [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)]
    }

    #[test]
    fn initial_pseudo_points_are_diagonal_points() {
        let init = build_initial(&frame_quad(), M).unwrap();
        let expect = [pt(1, 1, 0), pt(1, 0, 1), pt(0, 1, 1)];
        for (i, &ps) in init.pseudos.iter().enumerate() {
            assert_eq!(init.tri.vertex(ps).point, expect[i], "pseudo {i}");
            assert!(init.tri.vertex(ps).is_pseudo);
        }
    }

    #[test]
    fn initial_counts_and_validation() {
        let init = build_initial(&frame_quad(), M).unwrap();
        assert_eq!(init.tri.vertex_count(), 7);
        assert_eq!(init.tri.edge_count(), 18);
        assert_eq!(init.tri.face_count(), 12);
        assert_eq!(init.tri.euler_characteristic(), 1);
        let report = init.tri.validate(ValidationLevel::Full, 2000, 7);
        assert!(report.passed(), "failures: {:?}", report.failures());
    }

    #[test]
    fn initial_regions_partition_and_share_boundary() {
        let init = build_initial(&frame_quad(), M).unwrap();
        let regions = init.region_map();
        assert_eq!(regions.len(), 3);
        let mut total = 0;
        for faces in regions.values() {
            assert_eq!(faces.len(), 4);
            total += faces.len();
            // boundary vertex set of each region is the full quad
            let mut boundary: Vec<VertexId> = faces
                .iter()
                .flat_map(|&f| init.tri.face(f).vertices)
                .filter(|v| !init.tri.vertex(*v).is_pseudo)
                .collect();
            boundary.sort();
            boundary.dedup();
            assert_eq!(boundary, init.quad.to_vec());
        }
        assert_eq!(total, 12);
    }

    #[test]
    fn degenerate_quad_rejected() {
        let quad = [pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(0, 0, 1)];
        assert!(matches!(
            build_initial(&quad, M),
            Err(Error::DegenerateQuad)
        ));
    }

    #[test]
    fn exhaustive_seed_on_frame_plus_extras() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 4),
            pt(3, 1, 5),
        ];
        let seed = find_seed_exhaustive(&pts).unwrap();
        assert_eq!(seed.indices, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn exhaustive_seed_rejects_near_pencil() {
        // n-1 points on one line plus one off it: every 4-subset has 3 collinear
        let mut pts: Vec<ProjectivePoint> = (0..7).map(|i| pt(i, 1, 0)).collect();
        pts.push(pt(0, 0, 1));
        assert!(matches!(
            find_seed_exhaustive(&pts),
            Err(Error::NoSeed(_))
        ));
    }

    #[test]
    fn linecover_seed_on_exactly_six() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 4),
            pt(4, 2, 1),
        ];
        let seed = find_seed_linecover(&pts).unwrap();
        assert_eq!(seed.indices, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn linecover_seed_on_spread_points() {
        let pts = vec![
            pt(1, 0, 1),
            pt(0, 1, 1),
            pt(3, 1, 1),
            pt(1, 3, 1),
            pt(5, 9, 7),
            pt(6, 2, 11),
            pt(7, 13, 3),
            pt(10, 3, 1),
        ];
        let seed = find_seed_linecover(&pts).unwrap();
        let chosen: Vec<&ProjectivePoint> = seed.indices.iter().map(|&i| &pts[i]).collect();
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    assert!(!collinear(chosen[a], chosen[b], chosen[c]));
                }
            }
        }
    }

    #[test]
    fn canonical_set_on_frame_with_spread_extras() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 4),
            pt(4, 2, 1),
        ];
        let seed = SeedSet {
            indices: [0, 1, 2, 3, 4, 5],
        };
        let cs = find_canonical(&pts, &seed, M).unwrap();
        assert_eq!(cs.quad, [0, 1, 2, 3]);
        assert_eq!(cs.extras, [4, 5]);
    }

    #[test]
    fn canonical_build_is_k6() {
        let pts = vec![
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 4),
            pt(4, 2, 1),
        ];
        let cs = CanonicalSet {
            quad: [0, 1, 2, 3],
            extras: [4, 5],
        };
        let built = build_canonical(&pts, &cs, M).unwrap();
        assert_eq!(built.tri.vertex_count(), 6);
        assert_eq!(built.tri.edge_count(), 15);
        assert_eq!(built.tri.face_count(), 10);
        // K6: every vertex pair adjacent
        let ids: Vec<VertexId> = built.tri.vertex_ids().collect();
        for i in 0..6 {
            for j in (i + 1)..6 {
                let e = crate::complex::EdgeKey::new(ids[i], ids[j]);
                assert!(built.tri.edge(e).is_some(), "missing edge {e:?}");
            }
        }
        let report = built.tri.validate(ValidationLevel::Full, 2000, 11);
        assert!(report.passed(), "failures: {:?}", report.failures());
    }
}
