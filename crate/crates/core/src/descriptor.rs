//! Short graph descriptors.
//!
//! - `K3`, `P4`, `C6`, `S3`: complete graph, path, cycle, star;
//! - `complete:3`, `path:4`, ...: the same, spelled out;
//! - `cartesian(A,B)`, `strong(A,B)`, `direct(A,B)`, `lex(A,B)`: products;
//! - anything else is read as a graph file.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::io::read_graph;
use crate::product::{product, ProductKind};

pub fn parse_descriptor(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::InvalidParameter("empty graph descriptor".into()));
    }
    if Path::new(t).is_file() {
        return read_graph(Path::new(t));
    }
    if let Some(g) = named(t)? {
        return Ok(g);
    }
    if let (Some(open), true) = (t.find('('), t.ends_with(')')) {
        let kind: ProductKind = t[..open].trim().parse()?;
        let inner = &t[open + 1..t.len() - 1];
        let split = top_level_comma(inner)
            .ok_or_else(|| Error::InvalidParameter(format!("product descriptor {t:?} needs two arguments")))?;
        let g = parse_descriptor(&inner[..split])?;
        let h = parse_descriptor(&inner[split + 1..])?;
        return Ok(product(&g, &h, kind).graph);
    }
    Err(Error::InvalidParameter(format!("not a graph descriptor or readable file: {t:?}")))
}

fn named(t: &str) -> Result<Option<Graph>> {
    let (family, n) = match t.split_once(':') {
        Some((f, n)) => (f, n),
        None => {
            let split = t.find(|c: char| c.is_ascii_digit()).unwrap_or(t.len());
            if split != 1 {
                return Ok(None);
            }
            t.split_at(1)
        }
    };
    let Ok(family) = family.parse::<Family>() else {
        return Ok(None);
    };
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad order in descriptor {t:?}")))?;
    Graph::build_named(family, n).map(Some)
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
