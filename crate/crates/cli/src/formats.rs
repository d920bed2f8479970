//! Graph serialization: graph6, dot, and a versioned JSON document.

use ringline_core::graph::Graph;
use serde::{Deserialize, Serialize};

/// graph6: `n` in 6-bit bytes (+63), then the upper adjacency triangle in
/// column order, packed six bits per byte, each byte offset by 63.
pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        assert!(n <= 258_047, "graph6 long form limit");
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut bits: u8 = 0;
    let mut filled: u8 = 0;
    for j in 1..n {
        for i in 0..j {
            bits = (bits << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + bits);
                bits = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (bits << (6 - filled)));
    }
    out
}

pub fn from_graph6(bytes: &[u8]) -> Result<Graph, String> {
    let bytes: Vec<u8> = bytes
        .iter()
        .copied()
        .filter(|&b| !b.is_ascii_whitespace())
        .collect();
    if bytes.is_empty() {
        return Err("empty input".into());
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err("truncated vertex count".into());
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let mut g = Graph::new(n);
    let mut filled = 0u8;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if filled == 0 {
                if pos >= bytes.len() {
                    return Err("truncated edge bits".into());
                }
                current = bytes[pos].checked_sub(63).ok_or("byte below offset")?;
                pos += 1;
                filled = 6;
            }
            if current >> 5 & 1 == 1 {
                g.add_edge(i, j);
            }
            current <<= 1;
            filled -= 1;
        }
    }
    Ok(g)
}

/// dot: one node statement per vertex (with its label) and one undirected
/// edge statement per edge, in canonical order.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph distant {\n");
    for v in 0..g.n() {
        let label = match g.labels() {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        };
        out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("  {i} -- {j};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
pub struct GraphDoc {
    pub version: u32,
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<(u32, u32)>,
}

pub fn to_json(g: &Graph) -> String {
    let labels = match g.labels() {
        Some(labels) => labels.to_vec(),
        None => (0..g.n()).map(|v| v.to_string()).collect(),
    };
    let doc = GraphDoc {
        version: 1,
        n: g.n(),
        labels,
        edges: g.edges(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Graph, String> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if doc.version != 1 {
        return Err(format!("unsupported document version {}", doc.version));
    }
    if doc.labels.len() != doc.n {
        return Err("label count does not match vertex count".into());
    }
    let mut g = Graph::new(doc.n);
    for &(i, j) in &doc.edges {
        if i >= j || j as usize >= doc.n {
            return Err(format!("bad edge ({i},{j})"));
        }
        g.add_edge(i as usize, j as usize);
    }
    g.set_labels(doc.labels);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringline_core::graph::complete_graph;

    #[test]
    fn k3_is_bw() {
        assert_eq!(to_graph6(&complete_graph(3)), b"Bw");
    }

    #[test]
    fn graph6_round_trip() {
        let mut g = Graph::new(70); // exercises the long form
        for i in 0..69 {
            g.add_edge(i, i + 1);
        }
        g.add_edge(0, 69);
        let bytes = to_graph6(&g);
        assert_eq!(bytes[0], 126);
        let back = from_graph6(&bytes).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_round_trip() {
        let mut g = complete_graph(4);
        g.set_labels((0..4).map(|i| format!("v{i}")).collect());
        let doc = to_json(&g);
        let back = from_json(&doc).unwrap();
        assert_eq!(back, g);
    }
}
