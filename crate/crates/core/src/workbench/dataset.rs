//! Multiplex edge-list ingestion and the canonical duplex file format.
//!
//! One edge per line: `layer_id source target [weight]`. Weights are parsed
//! and dropped, `#` starts a comment, labels are opaque strings. The
//! directives `#@node <label>` and `#@layer <id>` declare a node or a layer so
//! that isolated nodes and empty layers survive a round trip; other tools
//! read them as comments.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::duplex::DuplexNetwork;
use crate::error::{Error, Result};
use crate::graph::{DirectedLayer, Layer};

const NODE_DIRECTIVE: &str = "#@node";
const LAYER_DIRECTIVE: &str = "#@layer";

/// `(directive, Some(arg))` for a well-formed directive line, `(directive, None)`
/// when the argument count is wrong, `None` for anything else.
fn directive(line: &str) -> Option<(&'static str, Option<&str>)> {
    for d in [NODE_DIRECTIVE, LAYER_DIRECTIVE] {
        if let Some(rest) = line.strip_prefix(d) {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let mut it = rest.split_whitespace();
                return Some(match (it.next(), it.next()) {
                    (Some(arg), None) => (d, Some(arg)),
                    _ => (d, None),
                });
            }
        }
    }
    None
}

/// All layers of a parsed file, with labels mapped to ids in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct MultiplexDataset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    declared: Vec<usize>,
    layer_order: Vec<String>,
    layers: HashMap<String, Vec<(usize, usize)>>,
}

impl MultiplexDataset {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    fn declare_layer(&mut self, id: &str) {
        if !self.layers.contains_key(id) {
            self.layer_order.push(id.to_string());
            self.layers.insert(id.to_string(), Vec::new());
        }
    }

    pub fn parse(text: &str, path: &Path) -> Result<MultiplexDataset> {
        let mut ds = MultiplexDataset::default();
        let err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = raw.trim();
            if let Some((directive, arg)) = directive(trimmed) {
                let arg = arg.ok_or_else(|| err(line_no, format!("{directive} takes exactly one argument")))?;
                if directive == NODE_DIRECTIVE {
                    let id = ds.intern(arg);
                    ds.declared.push(id);
                } else {
                    ds.declare_layer(arg);
                }
                continue;
            }
            let content = trimmed.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !(3..=4).contains(&tokens.len()) {
                return Err(err(
                    line_no,
                    format!("expected `layer source target [weight]`, found {} fields", tokens.len()),
                ));
            }
            if let Some(w) = tokens.get(3) {
                w.parse::<f64>()
                    .map_err(|_| err(line_no, format!("weight `{w}` is not a number")))?;
            }
            let u = ds.intern(tokens[1]);
            let v = ds.intern(tokens[2]);
            ds.declare_layer(tokens[0]);
            ds.layers.get_mut(tokens[0]).expect("declared").push((u, v));
        }
        Ok(ds)
    }

    pub fn read(path: &Path) -> Result<MultiplexDataset> {
        let text = fs::read_to_string(path)?;
        MultiplexDataset::parse(&text, path)
    }

    /// Layer ids in order of first appearance.
    pub fn layer_ids(&self) -> &[String] {
        &self.layer_order
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    /// Duplex on the union of nodes seen in the two layers (plus declared
    /// nodes). Nodes absent from a layer are isolated there.
    pub fn select(&self, layer_a: &str, layer_b: &str) -> Result<SelectedDuplex> {
        let ea = self.layers.get(layer_a).ok_or_else(|| Error::UnknownLayer(layer_a.to_string()))?;
        let eb = self.layers.get(layer_b).ok_or_else(|| Error::UnknownLayer(layer_b.to_string()))?;
        let mut keep = vec![false; self.labels.len()];
        for &v in &self.declared {
            keep[v] = true;
        }
        for &(u, v) in ea.iter().chain(eb) {
            keep[u] = true;
            keep[v] = true;
        }
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (old, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[old] = labels.len();
            labels.push(self.labels[old].clone());
        }
        if labels.is_empty() {
            return Err(Error::EmptySelection(format!("layers `{layer_a}` and `{layer_b}` have no nodes")));
        }
        let n = labels.len();
        let map = |edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
            edges.iter().map(|&(u, v)| (remap[u], remap[v])).collect()
        };
        let l1 = DirectedLayer::new(n, map(ea))?;
        let l2 = DirectedLayer::new(n, map(eb))?;
        Ok(SelectedDuplex {
            net: DuplexNetwork::new(l1, l2)?,
            labels,
            layer_ids: (layer_a.to_string(), layer_b.to_string()),
        })
    }
}

/// A harmonized layer pair ready for analysis.
#[derive(Debug, Clone)]
pub struct SelectedDuplex {
    pub net: DuplexNetwork,
    /// External label of each dense node id.
    pub labels: Vec<String>,
    pub layer_ids: (String, String),
}

/// Reads `path` and selects the two layers.
pub fn ingest_multiplex(path: &Path, layer_a: &str, layer_b: &str) -> Result<SelectedDuplex> {
    MultiplexDataset::read(path)?.select(layer_a, layer_b)
}

/// Writes `net` with layer ids `1` and `2`, declaring every node first so a
/// re-ingest reproduces the same ids.
pub fn write_canonical<W: Write>(net: &DuplexNetwork, labels: Option<&[String]>, mut out: W) -> Result<()> {
    let label = |v: usize| labels.map_or_else(|| v.to_string(), |l| l[v].clone());
    for layer in Layer::BOTH {
        writeln!(out, "{LAYER_DIRECTIVE} {}", layer.number())?;
    }
    for v in 0..net.node_count() {
        writeln!(out, "{NODE_DIRECTIVE} {}", label(v))?;
    }
    for layer in Layer::BOTH {
        for &(u, v) in net.layer(layer).edges() {
            writeln!(out, "{} {} {}", layer.number(), label(u), label(v))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_canonical_file(net: &DuplexNetwork, labels: Option<&[String]>, path: &Path) -> Result<()> {
    let file = fs::File::create(path)?;
    write_canonical(net, labels, std::io::BufWriter::new(file))
}

/// Per-layer size figures under both degree conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerStats {
    pub edges: usize,
    pub collapsed_duplicates: usize,
    /// Nodes with at least one edge in this layer.
    pub present_nodes: usize,
    /// `2|E| / present_nodes`.
    pub avg_degree_present: f64,
    /// `2|E| / n` over the harmonized node set.
    pub avg_degree_union: f64,
}

pub fn layer_stats(net: &DuplexNetwork, layer: Layer) -> LayerStats {
    let l = net.layer(layer);
    let present = l.present_node_count();
    LayerStats {
        edges: l.edge_count(),
        collapsed_duplicates: l.collapsed_duplicates(),
        present_nodes: present,
        avg_degree_present: if present == 0 { 0.0 } else { 2.0 * l.edge_count() as f64 / present as f64 },
        avg_degree_union: l.average_degree(),
    }
}

/// Where a duplex came from, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Source {
    File { path: PathBuf, layers: (String, String) },
    Generated(crate::netgen::GenSpec),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MultiplexDataset> {
        MultiplexDataset::parse(text, Path::new("mem.txt"))
    }

    #[test]
    fn disjoint_layers_union_their_nodes() {
        let ds = parse("a x y\na y z\nb p q 0.5\n").unwrap();
        let sel = ds.select("a", "b").unwrap();
        assert_eq!(sel.net.node_count(), 5);
        assert_eq!(sel.labels, vec!["x", "y", "z", "p", "q"]);
    }

    #[test]
    fn comments_blank_lines_and_weights() {
        let ds = parse("# header\n\n1 a b 2.5 # trailing\n2 b a\n").unwrap();
        assert_eq!(ds.layer_ids(), &["1".to_string(), "2".to_string()]);
        let sel = ds.select("1", "2").unwrap();
        assert!(sel.net.layer(Layer::One).has_edge(0, 1));
        assert!(sel.net.layer(Layer::Two).has_edge(1, 0));
    }

    #[test]
    fn malformed_line_reports_its_number() {
        let err = parse("1 a b\n1 a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("1 a b x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn unknown_layer_and_empty_selection() {
        let ds = parse("1 a b\n").unwrap();
        assert!(matches!(ds.select("1", "9"), Err(Error::UnknownLayer(id)) if id == "9"));
        assert!(matches!(
            MultiplexDataset::default().select("1", "1"),
            Err(Error::UnknownLayer(_))
        ));
        let empty = parse("#@layer 1\n#@layer 2\n").unwrap();
        assert!(matches!(empty.select("1", "2"), Err(Error::EmptySelection(_))));
    }

    #[test]
    fn unselected_layers_do_not_add_nodes() {
        let ds = parse("1 a b\n2 b c\n3 d e\n").unwrap();
        assert_eq!(ds.select("1", "2").unwrap().net.node_count(), 3);
    }

    #[test]
    fn canonical_round_trip_keeps_isolated_nodes() {
        for net in [
            DuplexNetwork::from_edges(5, [(0, 1), (1, 1)], [(3, 2)]).unwrap(),
            DuplexNetwork::from_edges(3, [], []).unwrap(),
        ] {
            let mut buf = Vec::new();
            write_canonical(&net, None, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let back = parse(&text).unwrap().select("1", "2").unwrap();
            assert_eq!(back.net, net);
        }
    }

    #[test]
    fn duplicate_edges_are_counted() {
        let sel = parse("1 a b\n1 a b\n2 a b\n").unwrap().select("1", "2").unwrap();
        let stats = layer_stats(&sel.net, Layer::One);
        assert_eq!(stats.edges, 1);
        assert_eq!(stats.collapsed_duplicates, 1);
    }
}
