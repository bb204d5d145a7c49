//! One-call certificate: topology, defect constancy, Descartes check,
//! planarity, flat edges and self-intersection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::P3;
use crate::intersect::{self_intersections, IntersectionWitness};
use crate::metrics::{self, DefectProfile};
use crate::poly::{Metadata, Polyhedron, Side, TopologyClass, VertexId};
use crate::tolerance::ToleranceSet;

/// Bound on |Σδ − 2πχ|; the identity holds to rounding for any mesh.
pub const DESCARTES_TOLERANCE: f64 = 1e-8;

/// Witnesses kept in a report.
pub const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CcpEmbedded,
    CcpImmersed,
    NotCcp,
    InvalidMesh,
}

impl Verdict {
    pub fn is_ccp(self) -> bool {
        matches!(self, Verdict::CcpEmbedded | Verdict::CcpImmersed)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CcpEmbedded => "ccp_embedded",
            Verdict::CcpImmersed => "ccp_immersed",
            Verdict::NotCcp => "not_ccp",
            Verdict::InvalidMesh => "invalid_mesh",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SelfIntersection {
    Embedded,
    Intersecting {
        count: usize,
        witnesses: Vec<IntersectionWitness>,
    },
}

impl SelfIntersection {
    pub fn is_embedded(&self) -> bool {
        matches!(self, SelfIntersection::Embedded)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

/// Measured values against the claims stored in the mesh metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedComparison {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_genus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_orientable: Option<bool>,
    pub genus_match: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_profile: Option<DefectProfile>,
    /// Mean defect as a multiple of π when it is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_pi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descartes_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_planarity_residual: Option<f64>,
    #[serde(default)]
    pub planar: bool,
    /// Non-seam edges with dihedral angle π.
    #[serde(default)]
    pub dihedral_violations: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_intersection: Option<SelfIntersection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedComparison>,
    pub tolerances: ToleranceSet,
}

impl VerificationReport {
    fn invalid(error: String, tolerances: ToleranceSet) -> Self {
        VerificationReport {
            verdict: Verdict::InvalidMesh,
            error: Some(error),
            counts: None,
            topology: None,
            defect_profile: None,
            defect_pi: None,
            descartes_residual: None,
            max_planarity_residual: None,
            planar: false,
            dihedral_violations: Vec::new(),
            self_intersection: None,
            expected: None,
            tolerances,
        }
    }
}

/// Verify a built mesh. The defect tolerance is widened with the number of
/// surgery steps recorded in the metadata.
pub fn verify(p: &Polyhedron, tol: &ToleranceSet) -> VerificationReport {
    let tol = tol.with_defect(tol.defect_for_depth(p.metadata.surgeries));
    let topology = match p.classify() {
        Ok(t) => t,
        Err(e) => return VerificationReport::invalid(e.to_string(), tol),
    };
    let profile = match metrics::defect_profile(p, tol.defect) {
        Ok(d) => d,
        Err(e) => return VerificationReport::invalid(e.to_string(), tol),
    };
    let descartes = metrics::descartes_residual(p);
    let planarity = p.max_planarity_residual();
    let scale = p
        .vertices()
        .iter()
        .map(|v| v.coords.amax())
        .fold(1.0f64, f64::max);
    let planar = planarity <= tol.planarity * scale;
    let seams: BTreeSet<[VertexId; 2]> = p
        .metadata
        .seams
        .iter()
        .map(|s| [s[0].min(s[1]), s[0].max(s[1])])
        .collect();
    let dihedral_violations: Vec<[VertexId; 2]> = metrics::flat_edges(p, tol.angle)
        .into_iter()
        .map(|e| p.edges()[e].v)
        .filter(|v| !seams.contains(v))
        .collect();
    let witnesses = self_intersections(p);
    let self_intersection = if witnesses.is_empty() {
        SelfIntersection::Embedded
    } else {
        SelfIntersection::Intersecting {
            count: witnesses.len(),
            witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
        }
    };
    let m = &p.metadata;
    let expected = (m.expected_defect.is_some() || m.genus.is_some() || m.orientable.is_some())
        .then(|| ExpectedComparison {
            expected_defect: m.expected_defect,
            defect_delta: m.expected_defect.map(|d| profile.mean - d),
            expected_genus: m.genus,
            expected_orientable: m.orientable,
            genus_match: m.genus.map_or(true, |g| g == topology.genus)
                && m.orientable.map_or(true, |o| o == topology.orientable),
        });
    let ccp = profile.is_constant
        && descartes < DESCARTES_TOLERANCE
        && planar
        && dihedral_violations.is_empty();
    let verdict = match (ccp, self_intersection.is_embedded()) {
        (false, _) => Verdict::NotCcp,
        (true, true) => Verdict::CcpEmbedded,
        (true, false) => Verdict::CcpImmersed,
    };
    VerificationReport {
        verdict,
        error: None,
        counts: Some(Counts {
            vertices: p.num_vertices(),
            edges: p.num_edges(),
            faces: p.num_faces(),
        }),
        topology: Some(topology),
        defect_pi: Some(metrics::format_pi(profile.mean)),
        defect_profile: Some(profile),
        descartes_residual: Some(descartes),
        max_planarity_residual: Some(planarity),
        planar,
        dihedral_violations,
        self_intersection: Some(self_intersection),
        expected,
        tolerances: tol,
    }
}

/// Validate raw input and verify it. Only combinatorial and degeneracy
/// failures give `invalid_mesh`; non-planar faces and flat edges are
/// reported as `not_ccp`.
pub fn verify_raw(
    vertices: Vec<P3>,
    faces: Vec<Vec<VertexId>>,
    links: Option<&[[Side; 2]]>,
    metadata: Metadata,
    tol: &ToleranceSet,
) -> VerificationReport {
    let structural = ToleranceSet {
        planarity: f64::INFINITY,
        angle: -1.0,
        ..*tol
    };
    match Polyhedron::from_parts(vertices, faces, links, metadata, &structural) {
        Ok(p) => verify(&p, tol),
        Err(e) => VerificationReport::invalid(e.to_string(), *tol),
    }
}

fn short(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = &self.error {
            writeln!(f, "invalid mesh: {e}")?;
            return write!(f, "verdict: {}", self.verdict.as_str());
        }
        if let Some(c) = self.counts {
            writeln!(
                f,
                "vertices {}  edges {}  faces {}",
                c.vertices, c.edges, c.faces
            )?;
        }
        if let Some(t) = self.topology {
            let kind = if t.orientable {
                "orientable"
            } else {
                "non-orientable"
            };
            writeln!(
                f,
                "topology: {kind}, genus {}, chi {}",
                t.genus, t.euler_characteristic
            )?;
        }
        if let (Some(d), Some(pi)) = (&self.defect_profile, &self.defect_pi) {
            writeln!(f, "defect = {} (= {pi})", short(d.mean))?;
            writeln!(
                f,
                "defect spread {:.3e} (tolerance {:.0e}), {}",
                d.max_abs_deviation,
                d.tolerance,
                if d.is_constant {
                    "constant"
                } else {
                    "not constant"
                }
            )?;
        }
        if let Some(r) = self.descartes_residual {
            writeln!(f, "descartes residual {r:.3e}")?;
        }
        if let Some(r) = self.max_planarity_residual {
            writeln!(
                f,
                "planarity residual {r:.3e}{}",
                if self.planar {
                    ""
                } else {
                    " (non-planar face)"
                }
            )?;
        }
        if !self.dihedral_violations.is_empty() {
            writeln!(f, "flat edges: {:?}", self.dihedral_violations)?;
        }
        match &self.self_intersection {
            Some(SelfIntersection::Embedded) => writeln!(f, "embedded: yes")?,
            Some(SelfIntersection::Intersecting { count, witnesses }) => {
                writeln!(f, "embedded: no, {count} intersecting face pairs")?;
                for w in witnesses {
                    writeln!(
                        f,
                        "  faces {} and {} at ({:.6}, {:.6}, {:.6})",
                        w.faces.0, w.faces.1, w.point[0], w.point[1], w.point[2]
                    )?;
                }
            }
            None => {}
        }
        if let Some(x) = &self.expected {
            if let Some(delta) = x.defect_delta {
                writeln!(
                    f,
                    "expected defect {}, delta {delta:.3e}",
                    metrics::format_pi(x.expected_defect.unwrap())
                )?;
            }
            writeln!(
                f,
                "metadata genus {}",
                if x.genus_match {
                    "matches"
                } else {
                    "DOES NOT match"
                }
            )?;
        }
        write!(f, "verdict: {}", self.verdict.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_orientable, gen_q2_9, gen_tetrahedron};
    use std::f64::consts::PI;

    #[test]
    fn klein_bottle_is_immersed() {
        let r = verify(&gen_q2_9().unwrap(), &ToleranceSet::default());
        assert_eq!(r.verdict, Verdict::CcpImmersed);
        assert!(r.defect_profile.as_ref().unwrap().mean.abs() < 1e-9);
        let t = r.topology.unwrap();
        assert!(!t.orientable);
        assert_eq!(t.genus, 2);
        assert!(r.to_string().contains("defect = 0 (= 0·π)"));
        assert!(r.expected.unwrap().genus_match);
    }

    #[test]
    fn drilled_genus_four_is_embedded() {
        let p = gen_orientable(4).unwrap();
        let r = verify(&p, &ToleranceSet::default());
        assert_eq!(r.verdict, Verdict::CcpEmbedded);
        assert_eq!(r.defect_pi.as_deref(), Some("-π/6"));
        assert!((r.defect_profile.unwrap().mean + PI / 6.0).abs() < 1e-6);
        assert_eq!(r.tolerances.defect, 2e-6);
    }

    #[test]
    fn perturbed_vertex_is_not_ccp() {
        let p = gen_tetrahedron();
        let mut v = p.vertices().to_vec();
        v[0].x += 0.05;
        let r = verify_raw(
            v,
            p.faces().to_vec(),
            None,
            Metadata::default(),
            &ToleranceSet::default(),
        );
        assert_eq!(r.verdict, Verdict::NotCcp);
    }

    #[test]
    fn non_planar_face_is_not_ccp() {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(P3::new(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        let f = vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ];
        v[7].z += 0.1;
        let r = verify_raw(v, f, None, Metadata::default(), &ToleranceSet::default());
        assert_eq!(r.verdict, Verdict::NotCcp);
        assert!(!r.planar);
    }

    #[test]
    fn broken_topology_is_invalid() {
        let p = gen_tetrahedron();
        let mut f = p.faces().to_vec();
        f.pop();
        let r = verify_raw(
            p.vertices().to_vec(),
            f,
            None,
            Metadata::default(),
            &ToleranceSet::default(),
        );
        assert_eq!(r.verdict, Verdict::InvalidMesh);
        assert!(r.error.is_some());
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify(&gen_q2_9().unwrap(), &ToleranceSet::default());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"verdict\":\"ccp_immersed\""));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(verify(&gen_q2_9().unwrap(), &ToleranceSet::default()), r);
    }
}
