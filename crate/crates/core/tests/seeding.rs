//! Seed-search behavior on structured point sets: strategy failures, greedy
//! start dependence, canonical-set rotation, and the flip step of the
//! pseudo-point elimination.

use projtri::complex::EdgeKey;
use projtri::error::Error;
use projtri::kernel::{collinear, ProjectivePoint};
use projtri::oracle::brute_force_general_position;
use projtri::scalar::Mode;
use projtri::seed::{
    build_initial, find_canonical, find_seed_exhaustive, find_seed_linecover, SeedSet,
};
use projtri::smap::Classification;

const M: Mode = Mode::Exact;

fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
    ProjectivePoint::from_ints(x, y, z, M).unwrap()
}

#[test]
fn linecover_fails_on_three_line_cover() {
    // alternating picks put lines N = join(1,3) and T = join(2,4) on the two
    // axes, wiping both; the third line (through the first picks) dies with L
    let mut pts = Vec::new();
    // a-points on x = 0, b-points on y = 0, interleaved
    let a = [(0i64, 1i64), (0, 2), (0, 3), (0, 5)];
    let b = [(1i64, 0i64), (2, 0), (3, 0), (5, 0)];
    for i in 0..4 {
        pts.push(pt(a[i].0, a[i].1, 1));
        pts.push(pt(b[i].0, b[i].1, 1));
    }
    // c-points on the line through the first two picks
    let first = pts[0].clone();
    let second = pts[1].clone();
    let line = projtri::kernel::join(&first, &second).unwrap();
    for t in [3i64, 7] {
        // parametrize rational points on that line via its two known points:
        // p = first * t + second  (componentwise in any fixed representatives)
        let f = first.coords();
        let s = second.coords();
        let c = [
            f[0].mul(&projtri::scalar::Scalar::int(t, M)).add(&s[0]),
            f[1].mul(&projtri::scalar::Scalar::int(t, M)).add(&s[1]),
            f[2].mul(&projtri::scalar::Scalar::int(t, M)).add(&s[2]),
        ];
        let p = ProjectivePoint::new(c, M).unwrap();
        assert!(projtri::kernel::incident(&p, &line));
        pts.push(p);
    }
    assert!(matches!(
        find_seed_linecover(&pts),
        Err(Error::NoSeed(_))
    ));
}

#[test]
fn greedy_seed_depends_on_the_starting_point() {
    // from starts 0..3 the greedy growth stalls; start 4 succeeds
    let pts = vec![
        pt(3, 0, 1),
        pt(1, -2, 1),
        pt(-3, 0, 1),
        pt(0, 3, 1),
        pt(2, -1, 1),
        pt(-3, -2, 1),
        pt(3, -2, 1),
        pt(-2, -2, 1),
    ];
    let seed = find_seed_exhaustive(&pts).unwrap();
    assert_eq!(seed.indices[0], 4, "first workable start is point 4");
    for a in 0..6 {
        for b in (a + 1)..6 {
            for c in (b + 1)..6 {
                assert!(!collinear(
                    &pts[seed.indices[a]],
                    &pts[seed.indices[b]],
                    &pts[seed.indices[c]]
                ));
            }
        }
    }
    // the brute-force oracle agrees a general-position 6-subset exists
    assert!(!brute_force_general_position(&pts).unwrap().is_empty());
}

#[test]
fn near_pencil_has_no_seed_by_both_strategies() {
    // n-1 points on one line: by the contrapositive of the 4-subset fact,
    // every 4-subset already has 3 collinear points
    let mut pts: Vec<ProjectivePoint> = (1..8).map(|i| pt(i, 1, 0)).collect();
    pts.push(pt(0, 0, 1));
    assert!(brute_force_general_position(&pts).unwrap().is_empty());
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            for c in (b + 1)..pts.len() {
                for d in (c + 1)..pts.len() {
                    let quad = [a, b, c, d];
                    let some_collinear = (0..4).any(|i| {
                        (0..4).any(|j| {
                            (0..4).any(|k| {
                                i < j
                                    && j < k
                                    && collinear(&pts[quad[i]], &pts[quad[j]], &pts[quad[k]])
                            })
                        })
                    });
                    assert!(some_collinear, "4-subset {quad:?} is in general position");
                }
            }
        }
    }
    assert!(matches!(find_seed_exhaustive(&pts), Err(Error::NoSeed(_))));
    assert!(matches!(find_seed_linecover(&pts), Err(Error::NoSeed(_))));
}

#[test]
fn near_pencil_forcing_on_grid_point_sets() {
    // over every 8-point subset of a small grid universe with one long line:
    // if every 4-subset has 3 collinear points and not all 8 are collinear,
    // then some 7 are collinear (the premise needs a 7-point line to be
    // satisfiable at all, so the universe provides one)
    let mut grid: Vec<(i64, i64)> = (0..7).map(|x| (x, 0)).collect();
    grid.extend([(0, 1), (1, 2), (3, 1)]);
    let det = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    };
    let mut subset = [0usize; 8];
    fn rec(
        grid: &[(i64, i64)],
        subset: &mut [usize; 8],
        depth: usize,
        start: usize,
        check: &mut impl FnMut(&[usize; 8]),
    ) {
        if depth == 8 {
            check(subset);
            return;
        }
        for v in start..grid.len() {
            subset[depth] = v;
            rec(grid, subset, depth + 1, v + 1, check);
        }
    }
    let mut tested = 0usize;
    rec(&grid, &mut subset, 0, 0, &mut |s: &[usize; 8]| {
        let p: Vec<(i64, i64)> = s.iter().map(|&i| grid[i]).collect();
        // premise: every 4-subset has 3 collinear
        for a in 0..8 {
            for b in (a + 1)..8 {
                for c in (b + 1)..8 {
                    for d in (c + 1)..8 {
                        let q = [p[a], p[b], p[c], p[d]];
                        let ok = det(q[0], q[1], q[2]) == 0
                            || det(q[0], q[1], q[3]) == 0
                            || det(q[0], q[2], q[3]) == 0
                            || det(q[1], q[2], q[3]) == 0;
                        if !ok {
                            return;
                        }
                    }
                }
            }
        }
        // exclusion: all 8 collinear
        let all_coll = (2..8).all(|k| det(p[0], p[1], p[k]) == 0);
        if all_coll {
            return;
        }
        tested += 1;
        // conclusion: some 7 collinear
        let some_seven = (0..8).any(|omit| {
            let rest: Vec<(i64, i64)> = (0..8).filter(|&i| i != omit).map(|i| p[i]).collect();
            (2..7).all(|k| det(rest[0], rest[1], rest[k]) == 0)
        });
        assert!(some_seven, "counterexample: {p:?}");
    });
    assert!(tested > 0, "the premise should be satisfiable on the grid");
}

#[test]
fn canonical_rotates_to_another_subset_when_extras_share_a_region() {
    // both extras of the frame quad land in one region, so the first subset
    // is rejected and a rotated quadrangulation is chosen instead
    let pts = vec![
        pt(1, 0, 0),
        pt(0, 1, 0),
        pt(0, 0, 1),
        pt(1, 1, 1),
        pt(-7, 3, 8),
        pt(-7, 4, 9),
    ];
    let quad = [
        pts[0].clone(),
        pts[1].clone(),
        pts[2].clone(),
        pts[3].clone(),
    ];
    let init = build_initial(&quad, M).unwrap();
    let r0 = init.region_of(&pts[4]).unwrap();
    let r1 = init.region_of(&pts[5]).unwrap();
    assert_eq!(r0, r1, "the extras share a region by construction");

    let seed = SeedSet {
        indices: [0, 1, 2, 3, 4, 5],
    };
    let cs = find_canonical(&pts, &seed, M).unwrap();
    assert_ne!(cs.quad, [0, 1, 2, 3], "a different 4-subset is selected");
    let built = projtri::seed::build_canonical(&pts, &cs, M).unwrap();
    assert_eq!(built.tri.vertex_count(), 6);
}

#[test]
fn one_of_the_two_candidate_diagonals_flips() {
    // the flip step of the pseudo-point elimination, exercised directly:
    // after the two star replacements, the two quad edges whose faces are
    // apexed by the new vertices are the flip candidates, and one succeeds
    let pts = vec![
        pt(1, 0, 0),
        pt(0, 1, 0),
        pt(0, 0, 1),
        pt(1, 1, 1),
        pt(1, 2, 4),
        pt(4, 2, 1),
    ];
    let quad = [
        pts[0].clone(),
        pts[1].clone(),
        pts[2].clone(),
        pts[3].clone(),
    ];
    let init = build_initial(&quad, M).unwrap();
    let r0 = init.region_of(&pts[4]).unwrap();
    let r1 = init.region_of(&pts[5]).unwrap();
    assert_ne!(r0, r1);
    let mut tri = init.tri;
    let v5 = tri.replace_pseudo_star(r0, pts[4].clone()).unwrap();
    let v6 = tri.replace_pseudo_star(r1, pts[5].clone()).unwrap();
    let mut candidates = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let e = EdgeKey::new(init.quad[i], init.quad[j]);
            if let Some(rec) = tri.edge(e) {
                let mut apexes: Vec<_> = rec
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
    assert_eq!(candidates.len(), 2, "exactly two candidate diagonals");
    let mut flipped = 0;
    for &e in &candidates {
        let mut work = tri.clone();
        if work.flip_edge(e).is_ok() {
            flipped += 1;
            // the flip created the edge joining the two new vertices
            assert!(work.edge(EdgeKey::new(v5, v6)).is_some());
        }
    }
    assert!(flipped >= 1, "at least one of the two diagonals flips");
}

#[test]
fn region_location_on_known_cells() {
    // locating a point placed in a known region of the initial triangulation
    // returns a face incident to that region's pseudo-point
    let quad = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)];
    let init = build_initial(&quad, M).unwrap();
    // (4,2,1): x > y > z > 0 lies in the region of the pseudo-point on the
    // lines through the first two and last two quad points
    let p = pt(4, 2, 1);
    let region = init.region_of(&p).unwrap();
    assert_eq!(region, init.pseudos[0]);
    // verified against the cone oracle: the found face's cone contains it
    let trace = init.tri.locate(&p, init.quad[0]).unwrap();
    let f = match trace.outcome {
        projtri::complex::WalkOutcome::Found(f) => f,
        other => panic!("{other:?}"),
    };
    let rec = init.tri.face(f);
    let q = projtri::oracle::ConeQuery {
        frame: rec.reps.clone(),
        dir: p.coords().clone(),
    };
    assert_eq!(
        projtri::oracle::oracle_cone_membership(&q).unwrap(),
        Classification::Inside
    );
    assert!(rec.vertices.contains(&init.pseudos[0]));
}
