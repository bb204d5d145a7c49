use std::fmt::Write;

use super::IoError;
use crate::geom::P3;
use crate::poly::{Polyhedron, VertexId};

/// Wavefront OBJ with polygon faces kept as they are (1-based indices).
pub fn to_obj(p: &Polyhedron) -> String {
    let mut s = String::new();
    if let Some(f) = &p.metadata.family {
        let _ = writeln!(s, "# family {f}");
    }
    for v in p.vertices() {
        let _ = writeln!(s, "v {} {} {}", v.x, v.y, v.z);
    }
    for f in p.faces() {
        s.push('f');
        for &i in f {
            let _ = write!(s, " {}", i + 1);
        }
        s.push('\n');
    }
    s
}

/// Vertices and faces of an OBJ file. Texture and normal references and
/// every other statement are ignored; negative indices count from the end.
pub fn parse_obj(text: &str) -> Result<(Vec<P3>, Vec<Vec<VertexId>>), IoError> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let err = |msg: String| IoError::Obj { line: ln + 1, msg };
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("v") => {
                let c: Vec<f64> = tok
                    .take(3)
                    .map(|t| t.parse::<f64>().map_err(|e| err(format!("{t}: {e}"))))
                    .collect::<Result<_, _>>()?;
                if c.len() != 3 {
                    return Err(err("vertex needs three coordinates".into()));
                }
                vertices.push(P3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let mut face = Vec::new();
                for t in tok {
                    let head = t.split('/').next().unwrap_or("");
                    let i: i64 = head.parse().map_err(|_| err(format!("bad index {t}")))?;
                    let idx = if i > 0 {
                        i - 1
                    } else if i < 0 {
                        vertices.len() as i64 + i
                    } else {
                        return Err(err("index 0".into()));
                    };
                    if idx < 0 {
                        return Err(err(format!("index {i} before first vertex")));
                    }
                    face.push(idx as usize);
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_tetrahemihexahedron;

    #[test]
    fn thh_lines() {
        let s = to_obj(&gen_tetrahemihexahedron());
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 7);
    }

    #[test]
    fn round_trip() {
        let p = gen_tetrahemihexahedron();
        let (v, f) = parse_obj(&to_obj(&p)).unwrap();
        assert_eq!(f, p.faces());
        assert_eq!(v, p.vertices());
    }

    #[test]
    fn slashes_and_negative_indices() {
        let (v, f) = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 -1//1\n").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(f, vec![vec![0, 1, 2]]);
        assert!(parse_obj("v 0 0\n").is_err());
        assert!(parse_obj("f 0 1 2\n").is_err());
    }
}
