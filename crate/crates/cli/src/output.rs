//! Deterministic CSV/OBJ writing.

use srcurv::Point;
use std::io::Write;

/// Fixed 17-significant-digit scientific formatting; identical invocations
/// produce byte-identical files.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Writes `content` to `path`, with `-` meaning standard output.
pub fn write_out(path: &str, content: &str, out: &mut dyn Write) -> std::io::Result<()> {
    if path == "-" {
        out.write_all(content.as_bytes())
    } else {
        std::fs::write(path, content)
    }
}

/// Triangle mesh accumulated as OBJ text: `v x y z` lines then 1-based
/// `f i j k` faces.
pub struct ObjMesh {
    vertices: Vec<Point>,
    faces: Vec<[usize; 3]>,
}

impl ObjMesh {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            faces: Vec::new(),
        }
    }

    pub fn vertex(&mut self, p: Point) -> usize {
        self.vertices.push(p);
        self.vertices.len() // 1-based
    }

    /// Counterclockwise triangle; when `orient` is given the winding is
    /// flipped so the Euclidean face normal points along it.
    pub fn triangle(&mut self, mut tri: [usize; 3], orient: Option<[f64; 3]>) {
        if let Some(dir) = orient {
            let [a, b, c] = [
                self.vertices[tri[0] - 1],
                self.vertices[tri[1] - 1],
                self.vertices[tri[2] - 1],
            ];
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let n = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            if n[0] * dir[0] + n[1] * dir[1] + n[2] * dir[2] < 0.0 {
                tri.swap(1, 2);
            }
        }
        self.faces.push(tri);
    }

    pub fn quad(&mut self, q: [usize; 4], orient: Option<[f64; 3]>) {
        self.triangle([q[0], q[1], q[2]], orient);
        self.triangle([q[0], q[2], q[3]], orient);
    }

    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("v {} {} {}\n", num(v[0]), num(v[1]), num(v[2])));
        }
        for f in &self.faces {
            s.push_str(&format!("f {} {} {}\n", f[0], f[1], f[2]));
        }
        s
    }
}
