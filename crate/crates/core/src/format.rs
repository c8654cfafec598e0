//! Plain-text graph files.
//!
//! ```text
//! n m
//! u v        (m lines, 0-based)
//! rotation   (optional)
//! w w w      (n lines: cyclic neighbor order of vertex i)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plane::PlaneGraph;

#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: Graph,
    pub rotation: Option<Vec<Vec<usize>>>,
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected a nonnegative integer, got {tok:?}"),
            })
        })
        .collect()
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n m`".into(),
        })?;
        let head = numbers(header, hl)?;
        let [n, m] = head[..] else {
            return Err(Error::Parse {
                line: hl,
                msg: "header must be `n m`".into(),
            });
        };

        let mut graph = Graph::empty(n);
        for _ in 0..m {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: hl,
                msg: format!("expected {m} edge lines"),
            })?;
            let [u, v] = numbers(line, ln)?[..] else {
                return Err(Error::Parse {
                    line: ln,
                    msg: "edge line must be `u v`".into(),
                });
            };
            graph.add_edge(u, v).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
        }

        let rotation = match lines.next() {
            None => None,
            Some((_, "rotation")) => {
                let mut rot = Vec::with_capacity(n);
                for v in 0..n {
                    // An isolated vertex has an empty rotation line, which the
                    // blank-line filter swallows; accept a short block for that.
                    if graph.degree(v) == 0 {
                        rot.push(Vec::new());
                        continue;
                    }
                    let (ln, line) = lines.next().ok_or(Error::Parse {
                        line: hl,
                        msg: format!("rotation block needs {n} lines"),
                    })?;
                    let order = numbers(line, ln)?;
                    if let Some(&w) = order.iter().find(|&&w| w >= n) {
                        return Err(Error::Parse {
                            line: ln,
                            msg: format!("vertex {w} out of range"),
                        });
                    }
                    rot.push(order);
                }
                Some(rot)
            }
            Some((ln, other)) => {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("unexpected line {other:?}"),
                })
            }
        };
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln,
                msg: "trailing content".into(),
            });
        }
        Ok(GraphFile { graph, rotation })
    }

    /// Requires a rotation block.
    pub fn into_plane(self) -> Result<PlaneGraph> {
        let rotation = self
            .rotation
            .ok_or_else(|| Error::InvalidRotation("graph file has no rotation block".into()))?;
        PlaneGraph::new(self.graph, rotation)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.graph.n(), self.graph.m());
        for (u, v) in self.graph.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        if let Some(rot) = &self.rotation {
            out.push_str("rotation\n");
            for order in rot {
                let line: Vec<String> = order.iter().map(usize::to_string).collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
        }
        out
    }
}

impl From<&PlaneGraph> for GraphFile {
    fn from(pg: &PlaneGraph) -> Self {
        GraphFile {
            graph: pg.graph().clone(),
            rotation: Some(pg.rotation().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane;

    #[test]
    fn round_trip() {
        let pg = plane::hexagonal_prism_embedding();
        let text = GraphFile::from(&pg).render();
        let back = GraphFile::parse(&text).unwrap().into_plane().unwrap();
        assert_eq!(back.graph(), pg.graph());
        assert_eq!(back.rotation(), pg.rotation());
    }

    #[test]
    fn plain_graph() {
        let f = GraphFile::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(f.graph.m(), 2);
        assert!(f.rotation.is_none());
    }

    #[test]
    fn rejects_duplicates_and_range() {
        assert!(GraphFile::parse("3 2\n0 1\n1 0\n").is_err());
        assert!(GraphFile::parse("3 1\n0 3\n").is_err());
        assert!(GraphFile::parse("3 1\n0 x\n").is_err());
        assert!(GraphFile::parse("3 2\n0 1\n").is_err());
        assert!(GraphFile::parse("2 1\n0 1\nrotation\n1\n5\n").is_err());
    }
}
