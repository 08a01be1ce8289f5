//! Colored networks in sliced form.
//!
//! A [`ColoredNetwork`] is a closed planar-with-crossings picture built from
//! cables — bundles of strands that carry a color (the strand count) — read
//! bottom to top as a word of [`NetSlice`]s. Validation traces the word once,
//! partitioning cable segments into *edges* (maximal cable runs through cups,
//! caps, and crossings), recording every trivalent node with its legs in
//! counterclockwise rotation order, and checking that colors agree wherever
//! two cable ends are joined.

use super::CrossingSign;
use crate::error::{Error, Result};

/// One horizontal slice of a colored network, acting at cable position `at`
/// (cables indexed left to right).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NetSlice {
    /// Create a bent cable: two new cable ends of the given color at
    /// positions `at`, `at+1`, joined below.
    Cup { at: usize, color: u32 },
    /// Join the cables at `at`, `at+1`; their colors must agree.
    Cap { at: usize },
    /// Cross cable `at` over (or under) cable `at+1`.
    Cross { at: usize, sign: CrossingSign },
    /// A trivalent node consuming `n_in` cables at `at..at+n_in` and
    /// creating `3 − n_in` cables with the given colors, left to right.
    Node { at: usize, n_in: u8, out_colors: Vec<u32> },
    /// Create a color-0 cable (an endpoint of a deleted-scalar strand).
    StubStart { at: usize },
    /// Terminate a color-0 cable.
    StubEnd { at: usize },
}

/// Where one end of an edge lands.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EdgeEnd {
    /// At a node, occupying the given rotation slot.
    Node { node: usize, slot: u8 },
    /// At a stub (only color-0 edges).
    Stub,
}

#[derive(Clone, Debug)]
pub struct EdgeInfo {
    pub color: u32,
    /// Exactly two ends, or none for a free loop.
    pub ends: Vec<EdgeEnd>,
}

/// A trivalent node. `edges` and `colors` list the three legs in
/// counterclockwise rotation order: inputs left to right, then outputs
/// right to left.
#[derive(Clone, Debug)]
pub struct NodeInfo {
    pub slice: usize,
    pub colors: [u32; 3],
    pub edges: [usize; 3],
}

/// A cable crossing: `left` crosses over `right` reading the slice word
/// upward (`left` is the cable at position `at` below the crossing).
#[derive(Clone, Debug)]
pub struct CrossingInfo {
    pub slice: usize,
    pub sign: CrossingSign,
    pub left: usize,
    pub right: usize,
}

/// A validated closed colored network.
#[derive(Clone, Debug)]
pub struct ColoredNetwork {
    slices: Vec<NetSlice>,
    edges: Vec<EdgeInfo>,
    nodes: Vec<NodeInfo>,
    crossings: Vec<CrossingInfo>,
    /// Edge ids created by each slice, in output order.
    created: Vec<Vec<usize>>,
}

/// Union-find over cable instances created during the trace.
struct Classes {
    parent: Vec<usize>,
    color: Vec<u32>,
}

impl Classes {
    fn make(&mut self, color: u32) -> usize {
        self.parent.push(self.parent.len());
        self.color.push(color);
        self.parent.len() - 1
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) -> std::result::Result<usize, (u32, u32)> {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return Ok(ri);
        }
        let (ci, cj) = (self.color[ri], self.color[rj]);
        if ci != cj {
            return Err((ci, cj));
        }
        // Keep the older root so edge numbering follows creation order.
        let (keep, drop) = if ri < rj { (ri, rj) } else { (rj, ri) };
        self.parent[drop] = keep;
        Ok(keep)
    }
}

impl ColoredNetwork {
    /// Validate a slice word and build the network.
    pub fn new(slices: Vec<NetSlice>) -> Result<Self> {
        let bad = |i: usize, msg: String| Error::InvalidDiagram(format!("slice {i}: {msg}"));
        let mut classes = Classes { parent: Vec::new(), color: Vec::new() };
        // Instance id of each currently open cable, left to right.
        let mut cables: Vec<usize> = Vec::new();
        let mut nodes: Vec<NodeInfo> = Vec::new();
        let mut crossings: Vec<CrossingInfo> = Vec::new();
        // Ends accumulate per instance-root; resolved to classes at the end.
        let mut ends: Vec<(usize, EdgeEnd)> = Vec::new();
        let mut created: Vec<Vec<usize>> = Vec::with_capacity(slices.len());

        for (i, slice) in slices.iter().enumerate() {
            let width = cables.len();
            let mut created_here: Vec<usize> = Vec::new();
            match *slice {
                NetSlice::Cup { at, color } => {
                    if at > width {
                        return Err(bad(i, format!("cup at {at} with only {width} cables")));
                    }
                    let inst = classes.make(color);
                    let inst2 = classes.make(color);
                    classes.union(inst, inst2).expect("same color");
                    cables.insert(at, inst);
                    cables.insert(at + 1, inst2);
                    created_here.push(inst);
                }
                NetSlice::Cap { at } => {
                    if at + 1 >= width {
                        return Err(bad(i, format!("cap at {at} with only {width} cables")));
                    }
                    let (a, b) = (cables[at], cables[at + 1]);
                    classes.union(a, b).map_err(|(ca, cb)| {
                        bad(i, format!("cap joining colors {ca} and {cb}"))
                    })?;
                    cables.remove(at);
                    cables.remove(at);
                }
                NetSlice::Cross { at, sign } => {
                    if at + 1 >= width {
                        return Err(bad(i, format!("crossing at {at} with only {width} cables")));
                    }
                    crossings.push(CrossingInfo {
                        slice: i,
                        sign,
                        left: cables[at],
                        right: cables[at + 1],
                    });
                    cables.swap(at, at + 1);
                }
                NetSlice::Node { at, n_in, ref out_colors } => {
                    let n_in = n_in as usize;
                    let n_out = out_colors.len();
                    if n_in + n_out != 3 {
                        return Err(bad(i, format!("node with {n_in} in + {n_out} out legs")));
                    }
                    if at + n_in > width {
                        return Err(bad(
                            i,
                            format!("node consuming {n_in} cables at {at} of {width}"),
                        ));
                    }
                    let node_id = nodes.len();
                    let mut colors = [0u32; 3];
                    let mut edges = [usize::MAX; 3];
                    for k in 0..n_in {
                        let inst = cables[at + k];
                        let root = classes.find(inst);
                        colors[k] = classes.color[root];
                        edges[k] = inst;
                        ends.push((inst, EdgeEnd::Node { node: node_id, slot: k as u8 }));
                    }
                    for (k, &color) in out_colors.iter().enumerate() {
                        let inst = classes.make(color);
                        let slot = n_in + (n_out - 1 - k);
                        colors[slot] = color;
                        edges[slot] = inst;
                        ends.push((inst, EdgeEnd::Node { node: node_id, slot: slot as u8 }));
                        created_here.push(inst);
                    }
                    for _ in 0..n_in {
                        cables.remove(at);
                    }
                    for (k, &inst) in created_here.iter().enumerate() {
                        cables.insert(at + k, inst);
                    }
                    nodes.push(NodeInfo { slice: i, colors, edges });
                }
                NetSlice::StubStart { at } => {
                    if at > width {
                        return Err(bad(i, format!("stub at {at} with only {width} cables")));
                    }
                    let inst = classes.make(0);
                    ends.push((inst, EdgeEnd::Stub));
                    cables.insert(at, inst);
                    created_here.push(inst);
                }
                NetSlice::StubEnd { at } => {
                    if at >= width {
                        return Err(bad(i, format!("stub at {at} with only {width} cables")));
                    }
                    let inst = cables[at];
                    let root = classes.find(inst);
                    if classes.color[root] != 0 {
                        return Err(bad(
                            i,
                            format!("stub terminating a color-{} cable", classes.color[root]),
                        ));
                    }
                    ends.push((inst, EdgeEnd::Stub));
                    cables.remove(at);
                }
            }
            created.push(created_here);
        }
        if !cables.is_empty() {
            return Err(Error::InvalidDiagram(format!(
                "network leaves {} cables open",
                cables.len()
            )));
        }

        // Compact edge ids in order of first instance creation.
        let n_inst = classes.parent.len();
        let mut edge_id = vec![usize::MAX; n_inst];
        let mut edges_out: Vec<EdgeInfo> = Vec::new();
        for inst in 0..n_inst {
            let root = classes.find(inst);
            if edge_id[root] == usize::MAX {
                edge_id[root] = edges_out.len();
                edges_out.push(EdgeInfo { color: classes.color[root], ends: Vec::new() });
            }
            edge_id[inst] = edge_id[root];
        }
        for (inst, end) in ends {
            edges_out[edge_id[inst]].ends.push(end);
        }
        for (e, info) in edges_out.iter().enumerate() {
            if !info.ends.is_empty() && info.ends.len() != 2 {
                return Err(Error::Internal(format!(
                    "edge {e} with {} ends",
                    info.ends.len()
                )));
            }
        }
        let remap = |v: usize| edge_id[v];
        for node in &mut nodes {
            for e in &mut node.edges {
                *e = remap(*e);
            }
        }
        for c in &mut crossings {
            c.left = remap(c.left);
            c.right = remap(c.right);
        }
        let created = created
            .into_iter()
            .map(|v| v.into_iter().map(remap).collect())
            .collect();

        Ok(ColoredNetwork { slices, edges: edges_out, nodes, crossings, created })
    }

    pub fn slices(&self) -> &[NetSlice] {
        &self.slices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_color(&self, e: usize) -> u32 {
        self.edges[e].color
    }

    pub fn edge(&self, e: usize) -> &EdgeInfo {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeInfo] {
        &self.edges
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    pub fn crossings(&self) -> &[CrossingInfo] {
        &self.crossings
    }

    /// Edge ids created by slice `i`, in the slice's output order.
    pub fn created_edges(&self, i: usize) -> &[usize] {
        &self.created[i]
    }

    /// Edges with no endpoints: closed cable loops.
    pub fn free_loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].ends.is_empty())
    }

    /// The same word with every edge recolored via `color_of` (indexed by
    /// edge id), revalidated.
    pub fn recolored(&self, color_of: &[u32]) -> Result<ColoredNetwork> {
        let mut slices = self.slices.clone();
        for (i, slice) in slices.iter_mut().enumerate() {
            match slice {
                NetSlice::Cup { color, .. } => {
                    *color = color_of[self.created[i][0]];
                }
                NetSlice::Node { out_colors, .. } => {
                    for (k, c) in out_colors.iter_mut().enumerate() {
                        *c = color_of[self.created[i][k]];
                    }
                }
                _ => {}
            }
        }
        ColoredNetwork::new(slices)
    }

    /// Replace every crossing with a fusion channel: crossing `k` of cables
    /// `(a, b)` becomes a node `a, b → channels[k]` followed by a node
    /// `channels[k] → b, a`. The result is crossing-free.
    pub fn fused(&self, channels: &[u32]) -> Result<ColoredNetwork> {
        assert_eq!(channels.len(), self.crossings.len());
        let mut out: Vec<NetSlice> = Vec::with_capacity(self.slices.len() + channels.len());
        let mut k = 0;
        for slice in &self.slices {
            match *slice {
                NetSlice::Cross { at, .. } => {
                    let info = &self.crossings[k];
                    let (a, b) = (self.edges[info.left].color, self.edges[info.right].color);
                    out.push(NetSlice::Node { at, n_in: 2, out_colors: vec![channels[k]] });
                    out.push(NetSlice::Node { at, n_in: 1, out_colors: vec![b, a] });
                    k += 1;
                }
                ref s => out.push(s.clone()),
            }
        }
        ColoredNetwork::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A single closed loop of the given color.
    pub(crate) fn loop_net(color: u32) -> ColoredNetwork {
        ColoredNetwork::new(vec![NetSlice::Cup { at: 0, color }, NetSlice::Cap { at: 0 }])
            .unwrap()
    }

    #[test]
    fn loop_is_one_edge_no_nodes() {
        let net = loop_net(3);
        assert_eq!(net.num_edges(), 1);
        assert_eq!(net.edge_color(0), 3);
        assert!(net.nodes().is_empty());
        assert_eq!(net.free_loops().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn theta_word_traces() {
        // Bend an a-cable, split one leg into (b, c), refuse with the other.
        let net = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 2 },
            NetSlice::Node { at: 1, n_in: 1, out_colors: vec![1, 1] },
            NetSlice::Node { at: 0, n_in: 2, out_colors: vec![1] },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        assert_eq!(net.num_edges(), 3);
        assert_eq!(net.nodes().len(), 2);
        assert_eq!(net.free_loops().count(), 0);
        // Every edge runs between the two nodes.
        for e in net.edges() {
            assert_eq!(e.ends.len(), 2);
        }
    }

    #[test]
    fn cap_color_mismatch_rejected() {
        let err = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cup { at: 1, color: 2 },
            NetSlice::Cap { at: 0 },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
    }

    #[test]
    fn open_network_rejected() {
        let err =
            ColoredNetwork::new(vec![NetSlice::Cup { at: 0, color: 1 }]).unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
    }

    #[test]
    fn crossing_records_cable_colors() {
        let net = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cup { at: 1, color: 2 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 1 },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        assert_eq!(net.crossings().len(), 2);
        let c0 = &net.crossings()[0];
        assert_eq!(net.edge_color(c0.left), 1);
        assert_eq!(net.edge_color(c0.right), 2);
        // After the swap the second crossing sees them reversed.
        let c1 = &net.crossings()[1];
        assert_eq!(net.edge_color(c1.left), 2);
        assert_eq!(net.edge_color(c1.right), 1);
    }

    #[test]
    fn stub_must_be_color_zero() {
        let err = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::StubEnd { at: 0 },
            NetSlice::StubEnd { at: 0 },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
        let ok = ColoredNetwork::new(vec![
            NetSlice::StubStart { at: 0 },
            NetSlice::StubEnd { at: 0 },
        ])
        .unwrap();
        assert_eq!(ok.num_edges(), 1);
        assert_eq!(ok.edge_color(0), 0);
    }

    #[test]
    fn fusion_replaces_crossings() {
        let net = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cup { at: 1, color: 1 },
            NetSlice::Cross { at: 1, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 1 },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        let fused = net.fused(&[2]).unwrap();
        assert!(fused.crossings().is_empty());
        assert_eq!(fused.nodes().len(), 2);
        let triples: Vec<_> = fused.nodes().iter().map(|n| {
            let mut c = n.colors;
            c.sort();
            c
        }).collect();
        assert_eq!(triples, vec![[1, 1, 2], [1, 1, 2]]);
    }
}
