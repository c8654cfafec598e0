//! Plane embeddings given by rotation systems, and face tracing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// A face as a closed walk. `vertices[i] -> vertices[i + 1]` are its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
}

impl Face {
    /// Face size `d(f)`: number of darts on the boundary walk.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

/// A graph with a per-vertex cyclic order of neighbors.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Face>,
    // dart (u, position of v in rotation[u]) -> face id
    dart_face: Vec<Vec<usize>>,
}

impl PlaneGraph {
    /// Validates the rotation system and traces its faces. Connected inputs
    /// must satisfy Euler's formula, i.e. the rotation must be planar.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotation lines for {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is not a permutation of its neighbors"
                )));
            }
        }
        let (faces, dart_face) = trace_faces(&graph, &rotation)?;
        let pg = PlaneGraph {
            graph,
            rotation,
            faces,
            dart_face,
        };
        if pg.graph.is_connected() && pg.graph.m() > 0 {
            let euler = pg.graph.n() as i64 - pg.graph.m() as i64 + pg.faces.len() as i64;
            if euler != 2 {
                return Err(Error::InvalidRotation(format!(
                    "V - E + F = {euler}, rotation is not planar"
                )));
            }
        }
        Ok(pg)
    }

    /// Rotation from straight-line coordinates: neighbors sorted
    /// counterclockwise by angle.
    pub fn from_coordinates(graph: Graph, coords: &[(f64, f64)]) -> Result<Self> {
        let rotation = (0..graph.n())
            .map(|v| {
                let (x0, y0) = coords[v];
                let mut nb = graph.neighbors(v).to_vec();
                nb.sort_by(|&a, &b| {
                    let ta = (coords[a].1 - y0).atan2(coords[a].0 - x0);
                    let tb = (coords[b].1 - y0).atan2(coords[b].0 - x0);
                    ta.partial_cmp(&tb).unwrap()
                });
                nb
            })
            .collect();
        PlaneGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> usize {
        let pos = self.rotation[u].iter().position(|&w| w == v).expect("dart must be an edge");
        self.dart_face[u][pos]
    }
}

fn trace_faces(graph: &Graph, rotation: &[Vec<usize>]) -> Result<(Vec<Face>, Vec<Vec<usize>>)> {
    let position = |v: usize, w: usize| rotation[v].iter().position(|&x| x == w);
    let mut dart_face: Vec<Vec<usize>> = rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    let total_darts = 2 * graph.m();
    for u in 0..graph.n() {
        for i in 0..rotation[u].len() {
            if dart_face[u][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut ai) = (u, i);
            loop {
                if dart_face[a][ai] != usize::MAX {
                    if (a, ai) == (u, i) {
                        break;
                    }
                    return Err(Error::InvalidRotation(format!(
                        "face walk from dart {u}->{} does not close",
                        rotation[u][i]
                    )));
                }
                if walk.len() > total_darts {
                    return Err(Error::InvalidRotation("face walk does not close".into()));
                }
                dart_face[a][ai] = id;
                walk.push(a);
                let b = rotation[a][ai];
                let back = position(b, a).ok_or_else(|| {
                    Error::InvalidRotation(format!("edge {a}-{b} missing from rotation at {b}"))
                })?;
                let next = (back + 1) % rotation[b].len();
                a = b;
                ai = next;
            }
            faces.push(Face { vertices: walk });
        }
    }
    Ok((faces, dart_face))
}

/// Cycle `C_n` embedded as a polygon.
pub fn cycle_embedding(n: usize) -> PlaneGraph {
    let rotation = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    PlaneGraph::new(graph::cycle(n), rotation).unwrap()
}

/// Hexagonal prism drawn as two concentric hexagons.
pub fn hexagonal_prism_embedding() -> PlaneGraph {
    let coords: Vec<(f64, f64)> = (0..12)
        .map(|i| {
            let r = if i < 6 { 2.0 } else { 1.0 };
            let t = std::f64::consts::TAU * (i % 6) as f64 / 6.0;
            (r * t.cos(), r * t.sin())
        })
        .collect();
    PlaneGraph::from_coordinates(graph::hexagonal_prism(), &coords).unwrap()
}

/// A random stacked triangulation on `n >= 3` vertices: start from a
/// triangle and repeatedly place a vertex at the centroid of a random
/// bounded face.
pub fn stacked_triangulation(n: usize, seed: u64) -> PlaneGraph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = graph::cycle(3);
    let mut coords = vec![(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)];
    let mut faces = vec![[0usize, 1, 2]];
    while g.n() < n {
        let f = faces.swap_remove(rng.gen_range(0..faces.len()));
        let w = g.add_vertex();
        let cx = f.iter().map(|&v| coords[v].0).sum::<f64>() / 3.0;
        let cy = f.iter().map(|&v| coords[v].1).sum::<f64>() / 3.0;
        coords.push((cx, cy));
        for &v in &f {
            g.add_edge(v, w).unwrap();
        }
        faces.extend([[f[0], f[1], w], [f[1], f[2], w], [f[2], f[0], w]]);
    }
    PlaneGraph::from_coordinates(g, &coords).unwrap()
}
