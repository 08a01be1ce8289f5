//! Sliced diagrams: links and embedded graphs in Morse position, with the
//! textual and JSON interchange formats.
//!
//! A diagram is a word of [`Slice`]s read bottom to top. Strand positions
//! are 0-based from the left. Validation traces the word, splitting strands
//! into *edges* — maximal strand runs between vertex ports — and recording
//! each vertex's incident edges in counterclockwise rotation order.
//!
//! Text format, one slice per line (`#` starts a comment):
//!
//! ```text
//! cup 0
//! cross+ 0
//! vertex 0 in=2 out=0 id=v
//! ```
//!
//! JSON format:
//!
//! ```json
//! {"format": "spinnet-diagram/1", "kind": "link",
//!  "slices": [{"op": "cup", "at": 0}, {"op": "cap", "at": 0}],
//!  "colors": {"0": 2}}
//! ```
//!
//! The optional `colors` object assigns a color to each edge, keyed by edge
//! index; edges are numbered in order of first appearance, bottom to top.

use super::CrossingSign;
use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Slice {
    Cup { at: usize },
    Cap { at: usize },
    Cross { at: usize, sign: CrossingSign },
    Vertex { at: usize, n_in: usize, n_out: usize, id: Option<String> },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DiagramKind {
    Link,
    Graph,
}

/// A graph vertex discovered while tracing the slice word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexInfo {
    pub slice: usize,
    pub id: Option<String>,
    /// Incident edge ids in counterclockwise rotation order: inputs left to
    /// right, then outputs right to left.
    pub edges_ccw: Vec<usize>,
}

/// A crossing between two strand edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramCrossing {
    pub slice: usize,
    pub sign: CrossingSign,
    pub left: usize,
    pub right: usize,
}

/// A validated closed sliced diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlicedDiagram {
    kind: DiagramKind,
    slices: Vec<Slice>,
    embedded_colors: Option<BTreeMap<usize, u32>>,
    num_edges: usize,
    vertices: Vec<VertexInfo>,
    crossings: Vec<DiagramCrossing>,
    free_loops: Vec<usize>,
    cup_edges: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            let (keep, drop) = if ri < rj { (ri, rj) } else { (rj, ri) };
            self.parent[drop] = keep;
        }
    }
}

impl SlicedDiagram {
    /// Validate a slice word: every position in range, every strand closed.
    pub fn new(kind: DiagramKind, slices: Vec<Slice>) -> Result<Self> {
        Self::with_colors(kind, slices, None)
    }

    pub fn with_colors(
        kind: DiagramKind,
        slices: Vec<Slice>,
        embedded_colors: Option<BTreeMap<usize, u32>>,
    ) -> Result<Self> {
        let bad = |i: usize, msg: String| Error::InvalidDiagram(format!("slice {i}: {msg}"));
        let mut uf = UnionFind { parent: Vec::new() };
        let mut strands: Vec<usize> = Vec::new();
        let mut vertices: Vec<VertexInfo> = Vec::new();
        let mut crossings: Vec<DiagramCrossing> = Vec::new();
        let mut cup_edges: Vec<usize> = Vec::new();
        // Instances incident to some vertex port.
        let mut port_instances: Vec<usize> = Vec::new();
        for (i, slice) in slices.iter().enumerate() {
            let width = strands.len();
            match *slice {
                Slice::Cup { at } => {
                    if at > width {
                        return Err(bad(i, format!("cup at {at} with width {width}")));
                    }
                    let s1 = uf.make();
                    let s2 = uf.make();
                    uf.union(s1, s2);
                    cup_edges.push(s1);
                    strands.insert(at, s1);
                    strands.insert(at + 1, s2);
                }
                Slice::Cap { at } => {
                    if at + 1 >= width {
                        return Err(bad(i, format!("cap at {at} with width {width}")));
                    }
                    uf.union(strands[at], strands[at + 1]);
                    strands.remove(at);
                    strands.remove(at);
                }
                Slice::Cross { at, sign } => {
                    if at + 1 >= width {
                        return Err(bad(i, format!("crossing at {at} with width {width}")));
                    }
                    crossings.push(DiagramCrossing {
                        slice: i,
                        sign,
                        left: strands[at],
                        right: strands[at + 1],
                    });
                    strands.swap(at, at + 1);
                }
                Slice::Vertex { at, n_in, n_out, ref id } => {
                    if kind == DiagramKind::Link {
                        return Err(bad(i, "vertex slice in a link diagram".into()));
                    }
                    if at + n_in > width {
                        return Err(bad(
                            i,
                            format!("vertex consuming {n_in} strands at {at} of {width}"),
                        ));
                    }
                    let mut edges_ccw = Vec::with_capacity(n_in + n_out);
                    for k in 0..n_in {
                        let inst = strands[at + k];
                        edges_ccw.push(inst);
                        port_instances.push(inst);
                    }
                    let mut created = Vec::with_capacity(n_out);
                    for _ in 0..n_out {
                        let inst = uf.make();
                        created.push(inst);
                        port_instances.push(inst);
                    }
                    // Outputs enter the rotation right to left.
                    for &inst in created.iter().rev() {
                        edges_ccw.push(inst);
                    }
                    for _ in 0..n_in {
                        strands.remove(at);
                    }
                    for (k, &inst) in created.iter().enumerate() {
                        strands.insert(at + k, inst);
                    }
                    vertices.push(VertexInfo { slice: i, id: id.clone(), edges_ccw });
                }
            }
        }
        if !strands.is_empty() {
            return Err(Error::InvalidDiagram(format!(
                "diagram leaves {} strands open",
                strands.len()
            )));
        }

        // Compact edge ids by first-instance order.
        let n_inst = uf.parent.len();
        let mut edge_id = vec![usize::MAX; n_inst];
        let mut num_edges = 0usize;
        for inst in 0..n_inst {
            let root = uf.find(inst);
            if edge_id[root] == usize::MAX {
                edge_id[root] = num_edges;
                num_edges += 1;
            }
            edge_id[inst] = edge_id[root];
        }
        let mut has_port = vec![false; num_edges];
        for inst in port_instances {
            has_port[edge_id[inst]] = true;
        }
        for v in &mut vertices {
            for e in &mut v.edges_ccw {
                *e = edge_id[*e];
            }
        }
        for c in &mut crossings {
            c.left = edge_id[c.left];
            c.right = edge_id[c.right];
        }
        for e in &mut cup_edges {
            *e = edge_id[*e];
        }
        let free_loops = (0..num_edges).filter(|&e| !has_port[e]).collect();
        if let Some(colors) = &embedded_colors {
            for &e in colors.keys() {
                if e >= num_edges {
                    return Err(Error::InvalidDiagram(format!(
                        "color given for edge {e}, but the diagram has {num_edges} edges"
                    )));
                }
            }
        }
        Ok(SlicedDiagram {
            kind,
            slices,
            embedded_colors,
            num_edges,
            vertices,
            crossings,
            free_loops,
            cup_edges,
        })
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn crossings(&self) -> &[DiagramCrossing] {
        &self.crossings
    }

    /// Edges that touch no vertex: the closed strand components.
    pub fn free_loops(&self) -> &[usize] {
        &self.free_loops
    }

    /// The edge each cup slice belongs to, in slice order (both strands of a
    /// cup always trace to the same edge or loop).
    pub fn cup_edges(&self) -> &[usize] {
        &self.cup_edges
    }

    pub fn embedded_colors(&self) -> Option<&BTreeMap<usize, u32>> {
        self.embedded_colors.as_ref()
    }

    /// Parse either format, sniffing JSON by a leading `{`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut slices = Vec::new();
        for (lineno, raw) in input.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| {
                Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1))
            };
            let mut words = line.split_whitespace();
            let op = words.next().unwrap();
            let at: usize = words
                .next()
                .ok_or_else(|| err("missing position"))?
                .parse()
                .map_err(|_| err("bad position"))?;
            let slice = match op {
                "cup" => Slice::Cup { at },
                "cap" => Slice::Cap { at },
                "cross+" => Slice::Cross { at, sign: CrossingSign::Pos },
                "cross-" => Slice::Cross { at, sign: CrossingSign::Neg },
                "vertex" => {
                    let mut n_in = None;
                    let mut n_out = None;
                    let mut id = None;
                    for word in words.by_ref() {
                        if let Some(v) = word.strip_prefix("in=") {
                            n_in = Some(v.parse().map_err(|_| err("bad in="))?);
                        } else if let Some(v) = word.strip_prefix("out=") {
                            n_out = Some(v.parse().map_err(|_| err("bad out="))?);
                        } else if let Some(v) = word.strip_prefix("id=") {
                            id = Some(v.to_string());
                        } else {
                            return Err(err("unknown vertex field"));
                        }
                    }
                    Slice::Vertex {
                        at,
                        n_in: n_in.ok_or_else(|| err("vertex missing in="))?,
                        n_out: n_out.ok_or_else(|| err("vertex missing out="))?,
                        id,
                    }
                }
                _ => return Err(err("unknown slice")),
            };
            if words.next().is_some() && op != "vertex" {
                return Err(err("trailing input"));
            }
            slices.push(slice);
        }
        let kind = if slices.iter().any(|s| matches!(s, Slice::Vertex { .. })) {
            DiagramKind::Graph
        } else {
            DiagramKind::Link
        };
        Self::new(kind, slices)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for slice in &self.slices {
            match slice {
                Slice::Cup { at } => out.push_str(&format!("cup {at}\n")),
                Slice::Cap { at } => out.push_str(&format!("cap {at}\n")),
                Slice::Cross { at, sign } => {
                    let s = if *sign == CrossingSign::Pos { "+" } else { "-" };
                    out.push_str(&format!("cross{s} {at}\n"));
                }
                Slice::Vertex { at, n_in, n_out, id } => {
                    out.push_str(&format!("vertex {at} in={n_in} out={n_out}"));
                    if let Some(id) = id {
                        out.push_str(&format!(" id={id}"));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn parse_json(input: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(input).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let err = |msg: String| Error::Parse(msg);
        let format = v["format"].as_str().unwrap_or("");
        if format != "spinnet-diagram/1" {
            return Err(err(format!(
                "unsupported format {:?}, expected \"spinnet-diagram/1\"",
                v["format"]
            )));
        }
        let kind = match v["kind"].as_str() {
            Some("link") => DiagramKind::Link,
            Some("graph") => DiagramKind::Graph,
            other => return Err(err(format!("bad kind {other:?}"))),
        };
        let raw_slices = v["slices"]
            .as_array()
            .ok_or_else(|| err("missing slices array".into()))?;
        let mut slices = Vec::with_capacity(raw_slices.len());
        for (i, s) in raw_slices.iter().enumerate() {
            let op = s["op"]
                .as_str()
                .ok_or_else(|| err(format!("slice {i}: missing op")))?;
            let at = s["at"]
                .as_u64()
                .ok_or_else(|| err(format!("slice {i}: missing at")))? as usize;
            let slice = match op {
                "cup" => Slice::Cup { at },
                "cap" => Slice::Cap { at },
                "cross+" => Slice::Cross { at, sign: CrossingSign::Pos },
                "cross-" => Slice::Cross { at, sign: CrossingSign::Neg },
                "vertex" => Slice::Vertex {
                    at,
                    n_in: s["in"]
                        .as_u64()
                        .ok_or_else(|| err(format!("slice {i}: vertex missing in")))?
                        as usize,
                    n_out: s["out"]
                        .as_u64()
                        .ok_or_else(|| err(format!("slice {i}: vertex missing out")))?
                        as usize,
                    id: s["id"].as_str().map(|x| x.to_string()),
                },
                _ => return Err(err(format!("slice {i}: unknown op {op:?}"))),
            };
            slices.push(slice);
        }
        let colors = match &v["colors"] {
            Value::Null => None,
            Value::Object(map) => {
                let mut out = BTreeMap::new();
                for (k, val) in map {
                    let e: usize = k
                        .parse()
                        .map_err(|_| err(format!("bad edge index {k:?} in colors")))?;
                    let c = val
                        .as_u64()
                        .ok_or_else(|| err(format!("bad color for edge {k}")))?;
                    out.insert(e, c as u32);
                }
                Some(out)
            }
            _ => return Err(err("colors must be an object".into())),
        };
        Self::with_colors(kind, slices, colors)
    }

    pub fn to_json(&self) -> Value {
        let slices: Vec<Value> = self
            .slices
            .iter()
            .map(|s| match s {
                Slice::Cup { at } => json!({"op": "cup", "at": at}),
                Slice::Cap { at } => json!({"op": "cap", "at": at}),
                Slice::Cross { at, sign } => {
                    let op = if *sign == CrossingSign::Pos { "cross+" } else { "cross-" };
                    json!({"op": op, "at": at})
                }
                Slice::Vertex { at, n_in, n_out, id } => match id {
                    Some(id) => {
                        json!({"op": "vertex", "at": at, "in": n_in, "out": n_out, "id": id})
                    }
                    None => json!({"op": "vertex", "at": at, "in": n_in, "out": n_out}),
                },
            })
            .collect();
        let kind = match self.kind {
            DiagramKind::Link => "link",
            DiagramKind::Graph => "graph",
        };
        let mut obj = json!({
            "format": "spinnet-diagram/1",
            "kind": kind,
            "slices": slices,
        });
        if let Some(colors) = &self.embedded_colors {
            let map: serde_json::Map<String, Value> = colors
                .iter()
                .map(|(e, c)| (e.to_string(), json!(c)))
                .collect();
            obj["colors"] = Value::Object(map);
        }
        obj
    }

    /// The mirror image: every crossing sign flipped, everything else (kind,
    /// colors, vertices) unchanged. Edge numbering is identical, so a color
    /// map carries over directly.
    pub fn mirror(&self) -> SlicedDiagram {
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                Slice::Cross { at, sign } => Slice::Cross { at, sign: sign.flipped() },
                ref other => other.clone(),
            })
            .collect();
        Self::with_colors(self.kind, slices, self.embedded_colors.clone())
            .expect("mirroring preserves validity")
    }

    /// The diagram with every vertex smoothed away: 2-valent vertices become
    /// plain strand, 0/other valences are rejected. Used to compare a
    /// vertex-decorated cycle diagram with its underlying link.
    pub fn strip_vertices(&self) -> Result<SlicedDiagram> {
        let mut out = Vec::new();
        for (i, s) in self.slices.iter().enumerate() {
            match *s {
                Slice::Vertex { at, n_in, n_out, .. } => match (n_in, n_out) {
                    (1, 1) => {}
                    (2, 0) => out.push(Slice::Cap { at }),
                    (0, 2) => out.push(Slice::Cup { at }),
                    _ => {
                        return Err(Error::InvalidDiagram(format!(
                            "slice {i}: cannot strip a {n_in}-in/{n_out}-out vertex"
                        )))
                    }
                },
                ref s => out.push(s.clone()),
            }
        }
        SlicedDiagram::new(DiagramKind::Link, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_round_trip() {
        let d = SlicedDiagram::parse_text("cup 0\ncap 0\n").unwrap();
        assert_eq!(d.kind(), DiagramKind::Link);
        assert_eq!(d.num_edges(), 1);
        assert_eq!(d.free_loops(), &[0]);
        assert_eq!(d.to_text(), "cup 0\ncap 0\n");
        let j = d.to_json();
        let d2 = SlicedDiagram::from_json(&j).unwrap();
        assert_eq!(d2.to_text(), d.to_text());
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = SlicedDiagram::parse_text("# the unknot\n\ncup 0 # open\ncap 0\n").unwrap();
        assert_eq!(d.num_edges(), 1);
    }

    #[test]
    fn trefoil_shape() {
        // Two-bridge plat: side-by-side cups, three half-twists in the
        // middle pair, matching caps.
        let text = "cup 0\ncup 2\ncross+ 1\ncross+ 1\ncross+ 1\ncap 0\ncap 0\n";
        let d = SlicedDiagram::parse_text(text).unwrap();
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.num_edges(), 1, "a knot is one closed strand");
    }

    #[test]
    fn vertex_trace_and_rotation() {
        // Two trivalent vertices joined by three edges: the theta graph.
        let text = "vertex 0 in=0 out=3 id=u\nvertex 0 in=3 out=0 id=v\n";
        let d = SlicedDiagram::parse_text(text).unwrap();
        assert_eq!(d.kind(), DiagramKind::Graph);
        assert_eq!(d.num_edges(), 3);
        let u = &d.vertices()[0];
        let v = &d.vertices()[1];
        assert_eq!(u.id.as_deref(), Some("u"));
        // u creates edges 0,1,2 left to right; its rotation lists them
        // right to left. v consumes them left to right.
        assert_eq!(u.edges_ccw, vec![2, 1, 0]);
        assert_eq!(v.edges_ccw, vec![0, 1, 2]);
    }

    #[test]
    fn open_diagram_rejected() {
        assert!(matches!(
            SlicedDiagram::parse_text("cup 0\n"),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn bad_position_rejected() {
        assert!(matches!(
            SlicedDiagram::parse_text("cap 0\n"),
            Err(Error::InvalidDiagram(_))
        ));
        assert!(matches!(
            SlicedDiagram::parse_text("cup 5\n"),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn parse_errors_are_parse_errors() {
        assert!(matches!(
            SlicedDiagram::parse_text("knot 0\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            SlicedDiagram::parse_text("cup x\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(SlicedDiagram::parse_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            SlicedDiagram::parse_json("{\"format\": \"other\"}"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn json_colors_round_trip() {
        let input = r#"{"format": "spinnet-diagram/1", "kind": "link",
            "slices": [{"op": "cup", "at": 0}, {"op": "cap", "at": 0}],
            "colors": {"0": 3}}"#;
        let d = SlicedDiagram::parse_json(input).unwrap();
        assert_eq!(d.embedded_colors().unwrap()[&0], 3);
        let j = d.to_json();
        assert_eq!(j["colors"]["0"], 3);
        let text = serde_json::to_string(&j).unwrap();
        let d2 = SlicedDiagram::parse_json(&text).unwrap();
        assert_eq!(d2.embedded_colors(), d.embedded_colors());
    }

    #[test]
    fn color_for_missing_edge_rejected() {
        let input = r#"{"format": "spinnet-diagram/1", "kind": "link",
            "slices": [{"op": "cup", "at": 0}, {"op": "cap", "at": 0}],
            "colors": {"7": 1}}"#;
        assert!(matches!(
            SlicedDiagram::parse_json(input),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn strip_two_valent_vertices() {
        let text = "vertex 0 in=0 out=2 id=a\ncross+ 0\ncross+ 0\nvertex 0 in=2 out=0 id=b\n";
        let d = SlicedDiagram::parse_text(text).unwrap();
        let stripped = d.strip_vertices().unwrap();
        assert_eq!(stripped.kind(), DiagramKind::Link);
        assert_eq!(stripped.crossings().len(), 2);
        assert!(stripped.vertices().is_empty());
    }

    #[test]
    fn vertex_in_link_kind_rejected() {
        let input = r#"{"format": "spinnet-diagram/1", "kind": "link",
            "slices": [{"op": "vertex", "at": 0, "in": 0, "out": 0}]}"#;
        assert!(matches!(
            SlicedDiagram::parse_json(input),
            Err(Error::InvalidDiagram(_))
        ));
    }
}
