//! Graph corpora: exhaustive small connected graphs, directories, seeded
//! random graphs.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::read_graph;
use crate::iso::are_isomorphic_small;

/// Largest order for which [`labeled_connected`] is offered.
pub const LABELED_LIMIT: usize = 6;

/// Every connected graph on vertex set `0..n` (labeled), in increasing
/// order of the edge bitmask over `K_n`'s canonical edge order.
pub fn labeled_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > LABELED_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "labeled corpus order",
            actual: n,
            limit: LABELED_LIMIT,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p);
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}

/// One representative per isomorphism class, first labeled occurrence
/// wins; sorted by (order, size) and then by that occurrence.
pub fn connected_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in labeled_connected(n)? {
        let mut seen = false;
        for r in reps.iter().filter(|r| r.size() == g.size() && r.degree_sequence() == g.degree_sequence()) {
            if are_isomorphic_small(r, &g)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(g);
        }
    }
    reps.sort_by_key(|g| g.size());
    Ok(reps)
}

/// Connected graphs up to isomorphism on 1..=max_n vertices.
pub fn builtin(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_up_to_iso(n)?);
    }
    Ok(out)
}

/// Labeled connected graphs on 1..=max_n vertices.
pub fn builtin_labeled(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(labeled_connected(n)?);
    }
    Ok(out)
}

/// Reads every regular file in `dir`, sorted by file name.
pub fn from_dir(dir: &Path) -> Result<Vec<(String, Graph)>> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Corpus(format!("{}: {e}", dir.display())))?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            read_graph(&p)
                .map(|g| (name.clone(), g))
                .map_err(|e| Error::Corpus(format!("{name}: {e}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub count: usize,
    pub order: usize,
    pub edge_probability: f64,
}

/// Seeded connected random graphs: a random spanning tree plus each
/// remaining pair independently with `edge_probability`.
pub fn random_connected(spec: &RandomSpec) -> Result<Vec<Graph>> {
    if spec.order == 0 || !(0.0..=1.0).contains(&spec.edge_probability) {
        return Err(Error::InvalidParameter("order must be positive and probability in [0,1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.order;
    (0..spec.count)
        .map(|_| {
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
            for a in 0..n {
                for b in a + 1..n {
                    if !edges.contains(&(a, b)) && rng.gen_bool(spec.edge_probability) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::from_edges(n, edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| labeled_connected(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert_eq!(builtin(5).unwrap().len(), 31);
    }

    #[test]
    fn random_is_seeded() {
        let spec = RandomSpec {
            seed: 7,
            count: 5,
            order: 6,
            edge_probability: 0.3,
        };
        let a = random_connected(&spec).unwrap();
        let b = random_connected(&spec).unwrap();
        assert_eq!(a.iter().map(|g| g.edges().to_vec()).collect::<Vec<_>>(), b.iter().map(|g| g.edges().to_vec()).collect::<Vec<_>>());
        assert!(a.iter().all(|g| g.is_connected()));
    }
}
