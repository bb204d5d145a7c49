//! End-to-end acceptance checks; prints one PASS/FAIL line per criterion.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ccp_core::generators::*;
use ccp_core::intersect::{is_embedded, self_intersections};
use ccp_core::metrics::{defects, descartes_residual};
use ccp_core::surgery::{connect_sum, drill, DrillSpec, FaceCorrespondence};
use ccp_core::{Polyhedron, ToleranceSet, P3};
use nalgebra::{Rotation3, Unit, Vector3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gen<E: std::fmt::Display>(r: Result<Polyhedron, E>) -> Result<Polyhedron, String> {
    r.map_err(|e| e.to_string())
}

fn counts(p: &Polyhedron) -> (usize, usize, usize) {
    (p.num_vertices(), p.num_edges(), p.num_faces())
}

fn constant_at(p: &Polyhedron, value: f64, tol: f64, what: &str) -> Check {
    let d = defects(p).map_err(|e| e.to_string())?;
    let worst = d.iter().map(|x| (x - value).abs()).fold(0.0, f64::max);
    ensure!(worst < tol, "{what}: defect off by {worst:e} from {value}");
    Ok(())
}

fn topology(p: &Polyhedron, orientable: bool, genus: u32, what: &str) -> Check {
    let c = p.classify().map_err(|e| e.to_string())?;
    ensure!(
        c.orientable == orientable && c.genus == genus,
        "{what}: got {c:?}"
    );
    Ok(())
}

fn flat_torus() -> Check {
    let t = gen_flat_torus9();
    ensure!(t.num_vertices() == 9, "vertices {}", t.num_vertices());
    ensure!(
        t.euler_characteristic() == 0,
        "chi {}",
        t.euler_characteristic()
    );
    topology(&t, true, 1, "torus")?;
    constant_at(&t, 0.0, 1e-9, "torus")?;
    ensure!(is_embedded(&t), "torus self-intersects");
    let len = |a: usize, b: usize| (t.vertices()[a] - t.vertices()[b]).norm();
    let c = |x: f64| (x * PI).cos();
    let forms = [
        ((0, 2), (3.0 - 2f64.sqrt()).sqrt()),
        ((0, 5), (3.0 + 2.0 * c(1.0 / 12.0)).sqrt()),
        ((2, 5), 3f64.sqrt()),
        ((0, 1), (2.25 - 2.0 * c(1.0 / 8.0)).sqrt()),
        ((1, 3), (2.25 + 2.0 * c(11.0 / 24.0)).sqrt()),
        ((0, 3), 3f64.sqrt()),
    ];
    for ((a, b), want) in forms {
        ensure!(t.edge_between(a, b).is_some(), "{a}-{b} is not an edge");
        ensure!(
            (len(a, b) - want).abs() < 1e-12,
            "|{a}{b}| = {} vs {want}",
            len(a, b)
        );
    }
    Ok(())
}

fn p2_24() -> Check {
    let mut rng = StdRng::seed_from_u64(24);
    let s3 = 3f64.sqrt();
    let mut params = vec![P2_24_DEFAULT];
    while params.len() < 101 {
        let b = rng.random_range(0.0..1.0 / s3);
        let c = rng.random_range(0.0..b.min(1.0 / (4.0 * s3)));
        if c > 0.0 {
            params.push((b, c));
        }
    }
    for (b, c) in params {
        let p = gen(gen_p2_24(b, c))?;
        ensure!(
            counts(&p) == (24, 44, 18),
            "b={b} c={c}: counts {:?}",
            counts(&p)
        );
        constant_at(&p, -PI / 6.0, 1e-9, &format!("b={b} c={c}"))?;
        ensure!(is_embedded(&p), "b={b} c={c}: self-intersects");
    }
    Ok(())
}

fn drilled_orientable() -> Check {
    for g in 3..=6u32 {
        let p = gen(gen_orientable(g))?;
        ensure!(
            p.num_vertices() == 24 * (g as usize - 1),
            "g={g}: {} vertices",
            p.num_vertices()
        );
        topology(&p, true, g, &format!("g={g}"))?;
        constant_at(&p, -PI / 6.0, 1e-6, &format!("g={g}"))?;
        ensure!(is_embedded(&p), "g={g}: self-intersects");
    }
    Ok(())
}

fn small_nonorientable() -> Check {
    let cases = [
        (
            "Q1_6",
            Ok(gen_tetrahemihexahedron()),
            PI / 3.0,
            (6, 12, 7),
            1,
        ),
        ("Q2_9", gen_q2_9(), 0.0, (9, 21, 12), 2),
        ("Q3_18", gen_q3_18(), -PI / 9.0, (18, 42, 23), 3),
        (
            "Q4_12",
            gen_cubohemioctahedron(),
            -PI / 3.0,
            (12, 24, 10),
            4,
        ),
    ];
    for (name, p, defect, want, genus) in cases {
        let p = gen(p)?;
        ensure!(counts(&p) == want, "{name}: counts {:?}", counts(&p));
        constant_at(&p, defect, 1e-9, name)?;
        topology(&p, false, genus, name)?;
        ensure!(!is_embedded(&p), "{name} has no self-intersection");
    }
    Ok(())
}

fn drilled_nonorientable() -> Check {
    for n in 1..=2usize {
        let odd = 2 * n as u32 + 3;
        let p = gen(gen_nonorientable(odd, false))?;
        ensure!(
            p.num_vertices() == 18 + 36 * n,
            "g={odd}: {} vertices",
            p.num_vertices()
        );
        topology(&p, false, odd, &format!("g={odd}"))?;
        constant_at(&p, -PI / 9.0, 1e-6, &format!("g={odd}"))?;
        let even = odd + 1;
        let p = gen(gen_nonorientable(even, false))?;
        ensure!(
            p.num_vertices() == 12 + 12 * n,
            "g={even}: {} vertices",
            p.num_vertices()
        );
        topology(&p, false, even, &format!("g={even}"))?;
        constant_at(&p, -PI / 3.0, 1e-6, &format!("g={even}"))?;
    }
    Ok(())
}

fn solver() -> Check {
    let expected: [(u32, [f64; 4]); 2] = [
        (7, [3.94799, 6.93234, 9.83752, 8.30361]),
        (8, [3.99386, 7.21534, 11.01272, 13.64880]),
    ];
    for (g, want) in expected {
        let p = solve_block_params(g, 2.0, 1e-12).map_err(|e| e.to_string())?;
        let got: Vec<f64> = p
            .blocks
            .iter()
            .map(|b| b.1)
            .chain(p.terminal.map(|t| t.1))
            .collect();
        ensure!(got.len() == 4, "g={g}: {} parameters", got.len());
        for (x, y) in got.iter().zip(want) {
            ensure!((x - y).abs() < 1e-4, "g={g}: {got:?} vs {want:?}");
        }
    }
    Ok(())
}

fn minimal_meshes() -> Check {
    for g in 1..=8u32 {
        let p = gen(gen_minimal(g))?;
        let gu = g as usize;
        ensure!(
            counts(&p) == (2 * gu + 4, 11 * gu + 4, 7 * gu + 2),
            "g={g}: counts {:?}",
            counts(&p)
        );
        topology(&p, true, g, &format!("g={g}"))?;
        let want = -(2.0 * g as f64 - 2.0) * PI / (g as f64 + 2.0);
        constant_at(&p, want, 1e-6, &format!("g={g}"))?;
        if g >= 2 {
            ensure!(!is_embedded(&p), "g={g} has no self-intersection");
        }
    }
    Ok(())
}

fn window_and_drum_families() -> Check {
    let orientable = [
        (AppendixFamily::V8g, 2..=6u32, 8, 16, 6, 2),
        (AppendixFamily::V6g, 5..=10, 6, 13, 5, 2),
    ];
    for (fam, range, v, e, f, f0) in orientable {
        for g in range {
            let p = gen(gen_appendix_orientable(g, fam))?;
            let gu = g as usize;
            ensure!(
                counts(&p) == (v * gu, e * gu, f * gu + f0),
                "{} g={g}: {:?}",
                fam.id(),
                counts(&p)
            );
            let gf = g as f64;
            let printed = match fam {
                AppendixFamily::V8g => PI * (1.0 - gf) / (2.0 * gf),
                _ => 2.0 * PI * (1.0 - gf) / (3.0 * gf),
            };
            constant_at(&p, printed, 1e-9, &format!("{} g={g}", fam.id()))?;
            topology(&p, true, g, fam.id())?;
            ensure!(is_embedded(&p), "{} g={g} self-intersects", fam.id());
        }
    }
    for g in 4..=6u32 {
        let p = gen(gen_appendix_orientable(g, AppendixFamily::V7gm7))?;
        let gu = g as usize;
        ensure!(
            counts(&p) == (7 * gu - 7, 18 * gu - 18, 9 * gu - 9),
            "v7gm7 g={g}: {:?}",
            counts(&p)
        );
        constant_at(&p, -4.0 * PI / 7.0, 1e-9, &format!("v7gm7 g={g}"))?;
        topology(&p, true, g, "v7gm7")?;
        ensure!(is_embedded(&p), "v7gm7 g={g} self-intersects");
    }
    for g in [3u32, 5, 7, 9, 11] {
        let p = gen(gen_n5g_odd(g))?;
        let gu = g as usize;
        ensure!(
            counts(&p) == (5 * gu, 13 * gu, 7 * gu + 2),
            "n5g g={g}: {:?}",
            counts(&p)
        );
        let gf = g as f64;
        constant_at(
            &p,
            (4.0 - 2.0 * gf) * PI / (5.0 * gf),
            1e-9,
            &format!("n5g g={g}"),
        )?;
        topology(&p, false, g, "n5g")?;
    }
    Ok(())
}

/// Everything the generators can produce for genus up to 12.
fn all_meshes() -> Vec<(String, Polyhedron)> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let genera: Vec<Option<u32>> = match fam.fixed_genus() {
            Some(_) => vec![None],
            None => (0..=12).map(Some).collect(),
        };
        for g in genera {
            for fewest in [false, true] {
                let req = FamilyRequest {
                    prefer_fewest: fewest,
                    ..FamilyRequest::new(fam, g)
                };
                if let Ok(p) = generate(&req) {
                    out.push((format!("{fam} g={g:?} fewest={fewest}"), p));
                }
            }
        }
    }
    out
}

fn properties() -> Check {
    let tol = ToleranceSet::default();
    let meshes = all_meshes();
    ensure!(meshes.len() > 60, "only {} meshes generated", meshes.len());
    for (name, p) in &meshes {
        let r = descartes_residual(p);
        ensure!(r < 1e-8, "{name}: Descartes residual {r:e}");
    }

    let q3 = gen(gen_q3_18())?;
    let q3_spec = DrillSpec::new(find(&q3, &[0, 3, 6])?, find(&q3, &[1, 2, 4, 5, 7, 8])?, 18);
    let drills = [
        (
            gen(gen_p2_24(P2_24_DEFAULT.0, P2_24_DEFAULT.1))?,
            DrillSpec::new(0, 1, 12),
        ),
        (q3, q3_spec),
        (
            gen(gen_cubohemioctahedron())?,
            DrillSpec::new(4, 5, 6).pass_through(),
        ),
    ];
    for (p, spec) in drills {
        let q = drill(&p, &spec, &tol).map_err(|e| e.to_string())?;
        ensure!(
            q.num_vertices() == p.num_vertices() + 2 * spec.n,
            "drill added {} vertices",
            q.num_vertices() - p.num_vertices()
        );
        ensure!(
            q.euler_characteristic() == p.euler_characteristic() - 2,
            "drill changed chi by {}",
            q.euler_characteristic() - p.euler_characteristic()
        );
        let d = defects(&q).map_err(|e| e.to_string())?;
        let want = -2.0 * PI / spec.n as f64;
        for (i, x) in d.iter().enumerate().skip(p.num_vertices()) {
            ensure!(
                (x - want).abs() < 1e-9,
                "new vertex {i}: defect {x} vs {want}"
            );
        }
    }

    let tetra = gen_tetrahedron();
    let f0 = tetra.faces()[0].clone();
    let pairs = f0.iter().map(|&v| (v, v)).collect();
    let doubled = connect_sum(
        &tetra,
        &tetra,
        &FaceCorrespondence::explicit(0, 0, pairs),
        &tol,
    )
    .map_err(|e| e.to_string())?;
    let chi_r = gen_tetrahemihexahedron().euler_characteristic();
    let chi_s = gen(gen_s_base())?.euler_characteristic();
    let sums = [
        (
            "T # T",
            doubled.euler_characteristic(),
            2 * tetra.euler_characteristic() - 2,
        ),
        (
            "R # R",
            gen(gen_q2_9())?.euler_characteristic(),
            2 * chi_r - 2,
        ),
        (
            "S # 3R",
            gen(gen_q3_18())?.euler_characteristic(),
            chi_s + 3 * chi_r - 6,
        ),
    ];
    for (name, got, want) in sums {
        ensure!(got == want, "{name}: chi {got} vs {want}");
    }

    let mut rng = StdRng::seed_from_u64(9);
    for (name, p) in meshes.iter().step_by(5) {
        let before = defects(p).map_err(|e| e.to_string())?;
        let axis = Unit::new_normalize(Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            1.0,
        ));
        let rot = Rotation3::from_axis_angle(&axis, rng.random_range(0.0..2.0 * PI));
        let shift = Vector3::new(
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
        );
        let scale = rng.random_range(0.1..10.0);
        let flip = rng.random_bool(0.5);
        let moved = p
            .map_points(
                |x: &P3| {
                    let mut y = rot * (x * scale) + shift;
                    if flip {
                        y.x = -y.x;
                    }
                    y
                },
                &tol,
            )
            .map_err(|e| format!("{name}: {e}"))?;
        let after = defects(&moved).map_err(|e| e.to_string())?;
        for (a, b) in before.iter().zip(&after) {
            ensure!((a - b).abs() < 1e-9, "{name}: defect moved from {a} to {b}");
        }
    }
    Ok(())
}

fn find(p: &Polyhedron, verts: &[usize]) -> Result<usize, String> {
    let mut want = verts.to_vec();
    want.sort_unstable();
    p.faces()
        .iter()
        .position(|f| {
            let mut h = f.clone();
            h.sort_unstable();
            h == want
        })
        .ok_or_else(|| format!("no face {verts:?}"))
}

fn hemi() -> Check {
    let p = gen(gen_rhombihexahedron())?;
    ensure!(
        p.num_vertices() == 24,
        "rhombihexahedron: {} vertices",
        p.num_vertices()
    );
    let chi = p.euler_characteristic();
    let derived = 2.0 * PI * chi as f64 / 24.0;
    ensure!((derived + PI / 2.0).abs() < 1e-12, "chi {chi}");
    constant_at(&p, derived, 1e-9, "rhombihexahedron")?;
    topology(&p, false, 8, "rhombihexahedron")?;

    let p = gen(gen_small_dodecahemidodecahedron())?;
    ensure!(
        p.num_vertices() == 30,
        "small dodecahemidodecahedron: {} vertices",
        p.num_vertices()
    );
    let chi = p.euler_characteristic();
    let derived = 2.0 * PI * chi as f64 / 30.0;
    ensure!((derived + 4.0 * PI / 5.0).abs() < 1e-12, "chi {chi}");
    constant_at(&p, derived, 1e-9, "small dodecahemidodecahedron")?;
    topology(&p, false, 14, "small dodecahemidodecahedron")?;
    Ok(())
}

fn intersection_timing() -> Check {
    let mut largest: Option<(String, Polyhedron)> = None;
    for fam in Family::ALL {
        for fewest in [false, true] {
            let req = FamilyRequest {
                prefer_fewest: fewest,
                ..FamilyRequest::new(fam, Some(10))
            };
            if let Ok(p) = generate(&req) {
                if largest
                    .as_ref()
                    .map_or(true, |(_, q)| p.num_faces() > q.num_faces())
                {
                    largest = Some((fam.to_string(), p));
                }
            }
        }
    }
    let (name, p) = largest.ok_or("no genus-10 mesh")?;
    let start = Instant::now();
    let w = self_intersections(&p);
    let took = start.elapsed();
    println!(
        "      {name} g=10: {} faces, {} witnesses, {:.3} s",
        p.num_faces(),
        w.len(),
        took.as_secs_f64()
    );
    ensure!(took < Duration::from_secs(10), "{name}: {took:?}");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1  flat torus", flat_torus),
        ("2  P2_24 over admissible (b, c)", p2_24),
        ("3  drilled orientable family g = 3..6", drilled_orientable),
        ("4  Q1_6, Q2_9, Q3_18, Q4_12", small_nonorientable),
        ("5  drilled non-orientable n = 1, 2", drilled_nonorientable),
        ("6  minimal family solver", solver),
        ("7  minimal family meshes g = 1..8", minimal_meshes),
        ("8  window and drum families", window_and_drum_families),
        ("9  property suite", properties),
        ("10 uniform hemi-polyhedra", hemi),
        ("T  self-intersection under 10 s", intersection_timing),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({:.2} s)", start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}: {e}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
