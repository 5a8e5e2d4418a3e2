//! Regular 2-dimensional cell complexes given by boundary walks.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("edge {0} lies in {1} faces")]
    EdgeValence(usize, usize),
    #[error("face {0}: boundary walk is not closed")]
    OpenWalk(usize),
    #[error("face {0}: edge {1} does not join the listed vertices")]
    BadEdge(usize, usize),
    #[error("complex is not orientable")]
    NotOrientable,
    #[error("orientation is not coherent along edge {0}")]
    Incoherent(usize),
}

/// Face boundary as a cyclic walk `v_0 e_0 v_1 e_1 ... v_{k-1} e_{k-1}`
/// where `e_i` joins `v_i` and `v_{i+1 mod k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same cell traversed the other way.
    pub fn reversed(&self) -> Face {
        let k = self.len();
        let vertices = (0..k).map(|i| self.vertices[(k - i) % k]).collect();
        let edges = (0..k).map(|i| self.edges[(2 * k - 1 - i) % k]).collect();
        Face { vertices, edges }
    }

    /// Corners `(vertex, edge to next vertex, edge from previous vertex)`.
    pub fn corners(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.len();
        (0..k).map(move |i| (self.vertices[i], self.edges[i], self.edges[(i + k - 1) % k]))
    }

    fn directed_edges(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        let k = self.len();
        (0..k).map(move |i| (self.edges[i], (self.vertices[i], self.vertices[(i + 1) % k])))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplexData {
    pub vertex_names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub edge_names: Vec<String>,
    pub faces: Vec<Face>,
    pub face_names: Vec<String>,
}

impl CellComplexData {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertex_names.len(), self.edges.len(), self.faces.len())
    }

    pub fn euler(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// Closed walks and every edge in exactly two faces.
    pub fn validate(&self) -> Result<(), CellError> {
        let mut valence = vec![0; self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            if f.vertices.len() != f.edges.len() || f.is_empty() {
                return Err(CellError::OpenWalk(fi));
            }
            for (e, (a, b)) in f.directed_edges() {
                let (x, y) = self.edges[e];
                if !((x, y) == (a, b) || (x, y) == (b, a)) {
                    return Err(CellError::BadEdge(fi, e));
                }
                valence[e] += 1;
            }
        }
        if let Some((e, &n)) = valence.iter().enumerate().find(|(_, &n)| n != 2) {
            return Err(CellError::EdgeValence(e, n));
        }
        Ok(())
    }

    /// Every edge is traversed in opposite directions by its two faces.
    pub fn check_coherent(&self) -> Result<(), CellError> {
        let mut seen: HashMap<usize, (usize, usize)> = HashMap::new();
        for f in &self.faces {
            for (e, dir) in f.directed_edges() {
                if let Some(&d) = seen.get(&e) {
                    if d == dir {
                        return Err(CellError::Incoherent(e));
                    }
                } else {
                    seen.insert(e, dir);
                }
            }
        }
        Ok(())
    }

    /// Keeps the first face's direction and flips the others to match.
    pub fn orient(&mut self) -> Result<(), CellError> {
        let n = self.faces.len();
        let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for &e in &f.edges {
                by_edge[e].push(fi);
            }
        }
        let mut done = vec![false; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            done[start] = true;
            queue.push_back(start);
            while let Some(fi) = queue.pop_front() {
                let dirs: Vec<(usize, (usize, usize))> = self.faces[fi].directed_edges().collect();
                for (e, dir) in dirs {
                    for &g in &by_edge[e] {
                        if g == fi || done[g] {
                            continue;
                        }
                        let same = self.faces[g]
                            .directed_edges()
                            .any(|(e2, d2)| e2 == e && d2 == dir);
                        if same {
                            self.faces[g] = self.faces[g].reversed();
                        }
                        done[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        self.check_coherent().map_err(|_| CellError::NotOrientable)
    }

    /// The complex with every face traversed backwards.
    pub fn reversed(&self) -> CellComplexData {
        let mut c = self.clone();
        c.faces = c.faces.iter().map(Face::reversed).collect();
        c
    }

    /// Faces containing each vertex.
    pub fn vertex_star(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].vertices.contains(&v))
            .collect()
    }
}

/// The 7-vertex triangulation of the torus (all 21 edges, 14 triangles).
pub fn torus_simplicial_complex() -> CellComplexData {
    const TRIANGLES: [[usize; 3]; 14] = [
        [5, 3, 1],
        [0, 1, 3],
        [3, 5, 4],
        [1, 2, 5],
        [0, 5, 2],
        [5, 0, 6],
        [6, 4, 5],
        [3, 6, 0],
        [1, 0, 4],
        [2, 1, 6],
        [4, 2, 3],
        [4, 6, 1],
        [6, 3, 2],
        [2, 4, 0],
    ];
    let mut edges = Vec::new();
    let mut edge_names = Vec::new();
    let mut index = HashMap::new();
    for a in 0..7 {
        for b in a + 1..7 {
            index.insert((a, b), edges.len());
            edges.push((a, b));
            edge_names.push(format!("e{a}{b}"));
        }
    }
    let faces = TRIANGLES
        .iter()
        .map(|t| Face {
            vertices: t.to_vec(),
            edges: (0..3)
                .map(|i| {
                    let (a, b) = (t[i], t[(i + 1) % 3]);
                    index[&(a.min(b), a.max(b))]
                })
                .collect(),
        })
        .collect();
    let mut c = CellComplexData {
        vertex_names: (0..7).map(|i| format!("v{i}")).collect(),
        edges,
        edge_names,
        faces,
        face_names: TRIANGLES
            .iter()
            .map(|t| format!("f{}{}{}", t[0], t[1], t[2]))
            .collect(),
    };
    c.orient().expect("the 7-vertex torus is orientable");
    c
}

/// The 4-vertex square torus: a 2x2 grid with opposite sides identified.
pub fn torus_cubical_complex() -> CellComplexData {
    // horizontal edges h, vertical edges v; the letter after the row or
    // column index tells the two parallel copies apart
    let edges = vec![
        (0, 1), // h0a
        (1, 0), // h0b
        (2, 3), // h1a
        (3, 2), // h1b
        (0, 2), // v0a
        (2, 0), // v0b
        (1, 3), // v1a
        (3, 1), // v1b
    ];
    let edge_names = ["h0a", "h0b", "h1a", "h1b", "v0a", "v0b", "v1a", "v1b"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let sq = |vs: [usize; 4], es: [usize; 4]| Face {
        vertices: vs.to_vec(),
        edges: es.to_vec(),
    };
    let faces = vec![
        sq([0, 1, 3, 2], [0, 6, 2, 4]),
        sq([1, 0, 2, 3], [1, 4, 3, 6]),
        sq([2, 3, 1, 0], [2, 7, 0, 5]),
        sq([3, 2, 0, 1], [3, 5, 1, 7]),
    ];
    let mut c = CellComplexData {
        vertex_names: (0..4).map(|i| format!("v{i}")).collect(),
        edges,
        edge_names,
        faces,
        face_names: (1..=4).map(|i| format!("s{i}")).collect(),
    };
    c.orient().expect("the square torus is orientable");
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_counts_and_validity() {
        let c = torus_simplicial_complex();
        assert_eq!(c.counts(), (7, 21, 14));
        assert_eq!(c.euler(), 0);
        c.validate().unwrap();
        c.check_coherent().unwrap();
        // K7: every pair is an edge
        for a in 0..7 {
            for b in a + 1..7 {
                assert!(c.edges.contains(&(a, b)));
            }
        }
        for v in 0..7 {
            assert_eq!(c.vertex_star(v).len(), 6);
        }
    }

    #[test]
    fn cubical_counts_and_validity() {
        let c = torus_cubical_complex();
        assert_eq!(c.counts(), (4, 8, 4));
        assert_eq!(c.euler(), 0);
        c.validate().unwrap();
        c.check_coherent().unwrap();
    }

    #[test]
    fn reversal_stays_coherent() {
        let c = torus_simplicial_complex().reversed();
        c.validate().unwrap();
        c.check_coherent().unwrap();
    }

    #[test]
    fn broken_complex_is_rejected() {
        let mut c = torus_simplicial_complex();
        c.faces.pop();
        assert!(matches!(c.validate(), Err(CellError::EdgeValence(_, 1))));
    }
}
