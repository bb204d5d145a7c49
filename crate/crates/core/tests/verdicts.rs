use ccp_core::generators::{catalog, generate, Family, FamilyRequest};
use ccp_core::io::{from_json, to_json};
use ccp_core::verify::{verify, Verdict};
use ccp_core::ToleranceSet;

#[test]
fn verdicts_follow_the_catalog() {
    let tol = ToleranceSet::default();
    for entry in catalog() {
        let fam: Family = entry.id.parse().unwrap();
        let genera: Vec<Option<u32>> = match fam.fixed_genus() {
            Some(_) => vec![None],
            None => (0..=9).map(Some).collect(),
        };
        let mut produced = 0;
        for (g, fewest) in genera.iter().flat_map(|&g| [(g, false), (g, true)]) {
            let req = FamilyRequest {
                prefer_fewest: fewest,
                ..FamilyRequest::new(fam, g)
            };
            let Ok(p) = generate(&req) else { continue };
            produced += 1;
            let r = verify(&p, &tol);
            let want = match (entry.ccp, entry.embedded) {
                (false, _) => Verdict::NotCcp,
                (true, true) => Verdict::CcpEmbedded,
                (true, false) => Verdict::CcpImmersed,
            };
            assert_eq!(r.verdict, want, "{} g={g:?} fewest={fewest}", entry.id);
            let x = r.expected.unwrap();
            assert!(x.genus_match, "{} g={g:?}", entry.id);
            if entry.ccp {
                assert!(x.defect_delta.unwrap().abs() < 1e-6);
            }
        }
        assert!(produced > 0, "{}", entry.id);
    }
}

#[test]
fn verification_is_stable_under_serialisation() {
    let tol = ToleranceSet::default();
    for g in [2u32, 5] {
        let p = generate(&FamilyRequest::new(Family::Minimal, Some(g))).unwrap();
        let q = from_json(&to_json(&p), &tol).unwrap();
        assert_eq!(verify(&p, &tol), verify(&q, &tol));
    }
}
