use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Tetrahedron,
    FlatTorus9,
    P2_24,
    Orientable,
    Thh,
    RBlock,
    Q2_9,
    SBase,
    Q3_18,
    Cho,
    Rhh,
    Sdhd,
    Nonorientable,
    V8g,
    V6g,
    V7gm7,
    N5g,
    TBlock,
    Minimal,
}

impl Family {
    pub const ALL: [Family; 19] = [
        Family::Tetrahedron,
        Family::FlatTorus9,
        Family::P2_24,
        Family::Orientable,
        Family::Thh,
        Family::RBlock,
        Family::Q2_9,
        Family::SBase,
        Family::Q3_18,
        Family::Cho,
        Family::Rhh,
        Family::Sdhd,
        Family::Nonorientable,
        Family::V8g,
        Family::V6g,
        Family::V7gm7,
        Family::N5g,
        Family::TBlock,
        Family::Minimal,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Tetrahedron => "tetrahedron",
            Family::FlatTorus9 => "flat-torus-9",
            Family::P2_24 => "p2-24",
            Family::Orientable => "orientable",
            Family::Thh => "thh",
            Family::RBlock => "r-block",
            Family::Q2_9 => "q2-9",
            Family::SBase => "s-base",
            Family::Q3_18 => "q3-18",
            Family::Cho => "cho",
            Family::Rhh => "rhh",
            Family::Sdhd => "sdhd",
            Family::Nonorientable => "nonorientable",
            Family::V8g => "v8g",
            Family::V6g => "v6g",
            Family::V7gm7 => "v7gm7",
            Family::N5g => "n5g",
            Family::TBlock => "t-block",
            Family::Minimal => "minimal",
        }
    }

    /// Genus of single-shape families.
    pub fn fixed_genus(self) -> Option<u32> {
        match self {
            Family::Tetrahedron | Family::SBase => Some(0),
            Family::FlatTorus9 | Family::Thh | Family::RBlock | Family::TBlock => Some(1),
            Family::P2_24 | Family::Q2_9 => Some(2),
            Family::Q3_18 => Some(3),
            Family::Cho => Some(4),
            Family::Rhh => Some(8),
            Family::Sdhd => Some(14),
            _ => None,
        }
    }

    /// Named parameters with their defaults.
    pub fn params(self) -> Vec<(&'static str, f64)> {
        match self {
            Family::P2_24 => vec![("b", 0.25), ("c", 1.0 / 32.0)],
            Family::RBlock => vec![("r", 0.5), ("h", 0.5 * (3.0 * (1.0 + 3f64.sqrt())).sqrt())],
            Family::TBlock => vec![("l", 2.0), ("d", 2.0)],
            Family::Minimal => vec![("l1", 2.0)],
            _ => vec![],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.id() == s)
            .ok_or_else(|| GeneratorError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRequest {
    pub family: Family,
    pub genus: Option<u32>,
    pub params: BTreeMap<String, f64>,
    pub prefer_fewest: bool,
}

impl FamilyRequest {
    pub fn new(family: Family, genus: Option<u32>) -> Self {
        FamilyRequest {
            family,
            genus,
            params: BTreeMap::new(),
            prefer_fewest: false,
        }
    }

    fn param(&self, name: &str) -> f64 {
        self.params.get(name).copied().unwrap_or_else(|| {
            self.family
                .params()
                .iter()
                .find(|(n, _)| *n == name)
                .map(|p| p.1)
                .expect("declared parameter")
        })
    }
}

pub fn generate(req: &FamilyRequest) -> Result<Polyhedron, GeneratorError> {
    let fam = req.family;
    for key in req.params.keys() {
        if !fam.params().iter().any(|(n, _)| n == key) {
            return Err(GeneratorError::BadParameters(format!(
                "{fam} has no parameter {key}"
            )));
        }
    }
    let out_of_range = |g: u32| GeneratorError::GenusOutOfRange {
        family: fam.id().into(),
        genus: g,
    };
    if let (Some(fixed), Some(g)) = (fam.fixed_genus(), req.genus) {
        if fixed != g {
            return Err(out_of_range(g));
        }
    }
    let genus = || {
        req.genus
            .ok_or_else(|| GeneratorError::BadParameters(format!("{fam} needs --genus")))
    };
    match fam {
        Family::Tetrahedron => Ok(gen_tetrahedron()),
        Family::FlatTorus9 => Ok(gen_flat_torus9()),
        Family::P2_24 => gen_p2_24(req.param("b"), req.param("c")),
        Family::Orientable if req.prefer_fewest => gen_orientable_fewest(genus()?),
        Family::Orientable => gen_orientable(genus()?),
        Family::Thh => Ok(gen_tetrahemihexahedron()),
        Family::RBlock => gen_r_block(req.param("r"), req.param("h")),
        Family::Q2_9 => gen_q2_9(),
        Family::SBase => gen_s_base(),
        Family::Q3_18 => gen_q3_18(),
        Family::Cho => gen_cubohemioctahedron(),
        Family::Rhh => gen_rhombihexahedron(),
        Family::Sdhd => gen_small_dodecahemidodecahedron(),
        Family::Nonorientable => gen_nonorientable(genus()?, req.prefer_fewest),
        Family::V8g => gen_appendix_orientable(genus()?, AppendixFamily::V8g),
        Family::V6g => gen_appendix_orientable(genus()?, AppendixFamily::V6g),
        Family::V7gm7 => gen_appendix_orientable(genus()?, AppendixFamily::V7gm7),
        Family::N5g => gen_n5g_odd(genus()?),
        Family::TBlock => gen_t_block(req.param("l"), req.param("d")),
        Family::Minimal => {
            let g = genus()?;
            if g == 0 {
                return Err(out_of_range(g));
            }
            gen_minimal_with(g, req.param("l1"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub orientable: bool,
    /// False for building blocks whose defect is not constant.
    pub ccp: bool,
    pub embedded: bool,
    pub genus: &'static str,
    pub vertices: &'static str,
    pub description: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    let e = |id, orientable, embedded, genus, vertices, description| CatalogEntry {
        id,
        orientable,
        ccp: id != "r-block",
        embedded,
        genus,
        vertices,
        description,
    };
    vec![
        e("tetrahedron", true, true, "0", "4", "regular tetrahedron"),
        e(
            "flat-torus-9",
            true,
            true,
            "1",
            "9",
            "flat torus, three-fold symmetric",
        ),
        e(
            "p2-24",
            true,
            true,
            "2",
            "24",
            "modified cube P²₂₄ (params b, c)",
        ),
        e(
            "orientable",
            true,
            true,
            "g >= 0",
            "4, 9, 24(g-1)",
            "P²₂₄ drilled g-2 times; --prefer-fewest uses 8g / 7g-7 / 6g",
        ),
        e(
            "v8g",
            true,
            true,
            "g >= 2",
            "8g",
            "rotational window family",
        ),
        e(
            "v7gm7",
            true,
            true,
            "4..6",
            "7g-7",
            "rotational window family",
        ),
        e(
            "v6g",
            true,
            true,
            "g >= 5",
            "6g",
            "rotational window family",
        ),
        e(
            "t-block",
            true,
            false,
            "1",
            "6",
            "T(l, d) block (params l, d)",
        ),
        e(
            "minimal",
            true,
            false,
            "g >= 1",
            "2g+4",
            "chain of solved T blocks (param l1)",
        ),
        e("thh", false, false, "1", "6", "tetrahemihexahedron Q¹₆"),
        e(
            "r-block",
            false,
            false,
            "1",
            "6",
            "gluing block R(r, h), defect not constant",
        ),
        e("q2-9", false, false, "2", "9", "flat Klein bottle R # R"),
        e("s-base", true, true, "0", "9", "hexagon-triangle base S"),
        e("q3-18", false, false, "3", "18", "S # 3R"),
        e("cho", false, false, "4", "12", "cubohemioctahedron Q⁴₁₂"),
        e("rhh", false, false, "8", "24", "rhombihexahedron"),
        e(
            "sdhd",
            false,
            false,
            "14",
            "30",
            "small dodecahemidodecahedron",
        ),
        e(
            "n5g",
            false,
            false,
            "3, 5, 7, 9, 11",
            "5g",
            "drum with g R blocks",
        ),
        e(
            "nonorientable",
            false,
            false,
            "g >= 1",
            "18+36n / 12+12n; fewest: 6, 9, 5g, 7g-14, 6g-12, 30, 4g-8",
            "Q³₁₈ or cubohemioctahedron drilled; --prefer-fewest picks the fewest known vertices",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
        for e in catalog() {
            assert!(e.id.parse::<Family>().is_ok(), "{}", e.id);
        }
        assert_eq!(catalog().len(), Family::ALL.len());
    }

    #[test]
    fn requests() {
        let mut r = FamilyRequest::new(Family::Tetrahedron, Some(1));
        assert!(matches!(
            generate(&r),
            Err(GeneratorError::GenusOutOfRange { .. })
        ));
        r.genus = None;
        assert_eq!(generate(&r).unwrap().num_vertices(), 4);
        let mut r = FamilyRequest::new(Family::P2_24, None);
        r.params.insert("z".into(), 1.0);
        assert!(matches!(
            generate(&r),
            Err(GeneratorError::BadParameters(_))
        ));
        assert!(generate(&FamilyRequest::new(Family::Minimal, None)).is_err());
        let r = FamilyRequest::new(Family::RBlock, None);
        let p = generate(&r).unwrap();
        assert_eq!(p.num_vertices(), 6);
    }
}
