//! Fast evaluation of colored networks.
//!
//! [`eval_planar`] evaluates a crossing-free network by graph rewriting on
//! its underlying trivalent map: color-0 edges are deleted, free loops become
//! `Δ` factors, bigons contract by `θ/Δ`, and everything else reduces through
//! the six-j move on a minimal face. Components are memoized on a canonical
//! form of their rotation system, so families of closely related networks
//! share work.
//!
//! [`eval_single`] removes crossings first, expanding each cable crossing
//! into its fusion channels `Σ_f λ·(Δ_f/θ)` and handing the resulting planar
//! networks to [`eval_planar`]. [`eval_pair`] is the balanced value
//! `s · bar(s)` — the second SU(2) factor evaluates the same picture at
//! `A⁻¹`, which is exactly the bar of the first factor.
//!
//! Soundness of the rewrite rules that return zero outright:
//!
//! * *tadpole* — an edge looping from a node to itself forces the third leg
//!   into `Hom(0, c)` through a projector, which vanishes for `c > 0`
//!   (`c = 0` never reaches here: zero edges are already deleted);
//! * *bridge* — cutting a closed network at a bridge of color `c > 0`
//!   exhibits each side as an element of `Hom(0, c)` through the bridge's
//!   projector, again zero. A face walk meets both darts of an edge exactly
//!   when the edge is a bridge, which is how they are found.

use super::net::EdgeEnd;
use super::{ColoredNetwork, CrossingSign};
use crate::error::{Error, Result};
use crate::qpoly::RatFunc;
use crate::recoupling::{
    admissible, admissible_range, delta, lambda, six_j, theta, Caches,
};
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    Node { node: usize, slot: u8 },
    Stub,
}

#[derive(Clone, Debug)]
struct Edge {
    color: u32,
    ends: [End; 2],
}

/// Working representation: a trivalent map with colored edges. Deleted
/// entries stay as `None`; edge ids are never reused, so a stale leg id in a
/// node simply points at a dead edge.
#[derive(Clone, Debug, Default)]
struct Net {
    nodes: Vec<Option<[usize; 3]>>,
    edges: Vec<Option<Edge>>,
}

impl Net {
    fn from_network(net: &ColoredNetwork) -> (Net, RatFunc) {
        let mut factor = RatFunc::one();
        let mut edges = Vec::with_capacity(net.num_edges());
        for info in net.edges() {
            if info.ends.is_empty() {
                // A free cable loop.
                factor = &factor * &delta(info.color);
                edges.push(None);
                continue;
            }
            let conv = |e: &EdgeEnd| match *e {
                EdgeEnd::Node { node, slot } => End::Node { node, slot },
                EdgeEnd::Stub => End::Stub,
            };
            edges.push(Some(Edge {
                color: info.color,
                ends: [conv(&info.ends[0]), conv(&info.ends[1])],
            }));
        }
        let nodes = net.nodes().iter().map(|n| Some(n.edges)).collect();
        (Net { nodes, edges }, factor)
    }

    fn edge(&self, e: usize) -> &Edge {
        self.edges[e].as_ref().expect("live edge")
    }

    fn other_end(&self, e: usize, node: usize, slot: u8) -> End {
        let ends = self.edge(e).ends;
        if ends[0] == (End::Node { node, slot }) {
            ends[1]
        } else {
            debug_assert_eq!(ends[1], End::Node { node, slot });
            ends[0]
        }
    }

    fn repoint(&mut self, end: End, new_edge: usize) {
        if let End::Node { node, slot } = end {
            self.nodes[node].as_mut().expect("live node")[slot as usize] = new_edge;
        }
    }

    fn set_end(&mut self, e: usize, from: End, to: End) {
        let edge = self.edges[e].as_mut().expect("live edge");
        if edge.ends[0] == from {
            edge.ends[0] = to;
        } else {
            debug_assert_eq!(edge.ends[1], from);
            edge.ends[1] = to;
        }
    }

    /// Delete every color-0 edge and re-normalize nodes to trivalence,
    /// collecting `Δ` factors for any loops this closes up.
    fn r0_fixpoint(&mut self) -> Result<RatFunc> {
        let mut factor = RatFunc::one();
        loop {
            if let Some(e) = (0..self.edges.len())
                .find(|&e| self.edges[e].as_ref().is_some_and(|x| x.color == 0))
            {
                self.edges[e] = None;
                continue;
            }
            let deficient = (0..self.nodes.len()).find(|&n| {
                self.nodes[n].is_some_and(|legs| {
                    legs.iter().any(|&e| self.edges[e].is_none())
                })
            });
            let Some(n) = deficient else { break };
            let legs = self.nodes[n].unwrap();
            let alive: Vec<(u8, usize)> = (0..3u8)
                .filter(|&s| self.edges[legs[s as usize]].is_some())
                .map(|s| (s, legs[s as usize]))
                .collect();
            match alive.len() {
                2 => {
                    let (s1, x) = alive[0];
                    let (s2, y) = alive[1];
                    if x == y {
                        factor = &factor * &delta(self.edge(x).color);
                        self.edges[x] = None;
                        self.nodes[n] = None;
                    } else {
                        debug_assert_eq!(self.edge(x).color, self.edge(y).color);
                        let xo = self.other_end(x, n, s1);
                        let yo = self.other_end(y, n, s2);
                        debug_assert_ne!(xo, End::Node { node: n, slot: s2 });
                        self.edges[y] = None;
                        self.nodes[n] = None;
                        let color = self.edge(x).color;
                        self.edges[x] = Some(Edge { color, ends: [xo, yo] });
                        self.repoint(yo, x);
                    }
                }
                0 => {
                    self.nodes[n] = None;
                }
                k => {
                    return Err(Error::Internal(format!(
                        "node left with {k} legs during zero-edge removal"
                    )))
                }
            }
        }
        Ok(factor)
    }

    fn live_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&n| self.nodes[n].is_some())
    }

    /// Split into connected components (all edges have node ends here).
    fn components(&self) -> Vec<Net> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in self.live_nodes() {
            if seen[start] {
                continue;
            }
            let mut node_ids: Vec<usize> = vec![start];
            seen[start] = true;
            let mut qi = 0;
            while qi < node_ids.len() {
                let n = node_ids[qi];
                qi += 1;
                for &e in self.nodes[n].as_ref().unwrap() {
                    for end in self.edge(e).ends {
                        if let End::Node { node, .. } = end {
                            if !seen[node] {
                                seen[node] = true;
                                node_ids.push(node);
                            }
                        }
                    }
                }
            }
            // Renumber into a compact component.
            let mut node_map = vec![usize::MAX; self.nodes.len()];
            for (i, &n) in node_ids.iter().enumerate() {
                node_map[n] = i;
            }
            let mut edge_map = vec![usize::MAX; self.edges.len()];
            let mut comp = Net::default();
            for &n in &node_ids {
                let legs = self.nodes[n].unwrap();
                let mut new_legs = [0usize; 3];
                for (s, &e) in legs.iter().enumerate() {
                    if edge_map[e] == usize::MAX {
                        edge_map[e] = comp.edges.len();
                        let old = self.edge(e);
                        let conv = |end: End| match end {
                            End::Node { node, slot } => {
                                End::Node { node: node_map[node], slot }
                            }
                            End::Stub => End::Stub,
                        };
                        comp.edges.push(Some(Edge {
                            color: old.color,
                            ends: [conv(old.ends[0]), conv(old.ends[1])],
                        }));
                    }
                    new_legs[s] = edge_map[e];
                }
                comp.nodes.push(Some(new_legs));
            }
            out.push(comp);
        }
        out
    }

    /// Faces of the rotation system, each a list of darts `2e` / `2e+1`.
    /// Dart `2e` runs from `ends[0]` to `ends[1]`.
    fn faces(&self) -> Vec<Vec<usize>> {
        let dart_head = |d: usize| -> (usize, u8) {
            let e = d / 2;
            let end = self.edge(e).ends[1 - (d % 2)];
            match end {
                End::Node { node, slot } => (node, slot),
                End::Stub => unreachable!("stub survived zero-edge removal"),
            }
        };
        let next_dart = |d: usize| -> usize {
            let (n, s) = dart_head(d);
            let s2 = ((s + 2) % 3) as usize;
            let e2 = self.nodes[n].unwrap()[s2];
            if self.edge(e2).ends[0] == (End::Node { node: n, slot: s2 as u8 }) {
                2 * e2
            } else {
                2 * e2 + 1
            }
        };
        let mut faces = Vec::new();
        let mut seen = vec![false; 2 * self.edges.len()];
        for e in 0..self.edges.len() {
            if self.edges[e].is_none() {
                continue;
            }
            for d0 in [2 * e, 2 * e + 1] {
                if seen[d0] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = d0;
                loop {
                    seen[d] = true;
                    face.push(d);
                    d = next_dart(d);
                    if d == d0 {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Canonical encoding of the colored rotation system, invariant under
    /// renumbering. Minimum over all starting legs of a breadth-first
    /// rotation-respecting traversal code.
    fn canonical_key(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for n0 in self.live_nodes() {
            for s0 in 0..3u8 {
                let code = self.encode_from(n0, s0);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn encode_from(&self, n0: usize, s0: u8) -> Vec<u32> {
        let mut visit = vec![usize::MAX; self.nodes.len()];
        let mut base = vec![0u8; self.nodes.len()];
        let mut order = vec![n0];
        visit[n0] = 0;
        base[n0] = s0;
        let mut code = Vec::new();
        let mut qi = 0;
        while qi < order.len() {
            let n = order[qi];
            qi += 1;
            let legs = self.nodes[n].unwrap();
            for k in 0..3u8 {
                let s = (base[n] + k) % 3;
                let e = legs[s as usize];
                code.push(self.edge(e).color);
                match self.other_end(e, n, s) {
                    End::Node { node, slot } => {
                        if visit[node] == usize::MAX {
                            visit[node] = order.len();
                            base[node] = slot;
                            order.push(node);
                            code.push(u32::MAX);
                            code.push(u32::MAX);
                        } else {
                            code.push(visit[node] as u32);
                            code.push(u32::from((slot + 3 - base[node]) % 3));
                        }
                    }
                    End::Stub => unreachable!("stub survived zero-edge removal"),
                }
            }
        }
        code
    }
}

/// Evaluate a crossing-free colored network (single-factor value) by graph
/// rewriting. Networks with crossings are rejected; use [`eval_single`].
pub fn eval_planar(caches: &Caches, net: &ColoredNetwork) -> Result<RatFunc> {
    if !net.crossings().is_empty() {
        return Err(Error::InvalidDiagram(
            "planar evaluation of a network with crossings".into(),
        ));
    }
    for node in net.nodes() {
        if !admissible(node.colors[0], node.colors[1], node.colors[2]) {
            return Ok(RatFunc::zero());
        }
    }
    let (mut work, factor) = Net::from_network(net);
    let rest = reduce(caches, &mut work, 0)?;
    Ok(&factor * &rest)
}

const MAX_REWRITE_DEPTH: usize = 4096;

fn reduce(caches: &Caches, net: &mut Net, depth: usize) -> Result<RatFunc> {
    if depth > MAX_REWRITE_DEPTH {
        return Err(Error::Internal("rewrite recursion too deep".into()));
    }
    let mut factor = net.r0_fixpoint()?;
    for comp in net.components() {
        if factor.is_zero() {
            return Ok(RatFunc::zero());
        }
        factor = &factor * &eval_component(caches, comp, depth)?;
    }
    Ok(factor)
}

fn eval_component(caches: &Caches, net: Net, depth: usize) -> Result<RatFunc> {
    let key = net.canonical_key();
    if let Some(v) = caches.planar_memo.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = eval_component_uncached(caches, net, depth)?;
    caches
        .planar_memo
        .write()
        .unwrap()
        .insert(key, value.clone());
    Ok(value)
}

fn eval_component_uncached(caches: &Caches, mut net: Net, depth: usize) -> Result<RatFunc> {
    // Tadpole: an edge from a node to itself.
    for e in 0..net.edges.len() {
        let Some(edge) = &net.edges[e] else { continue };
        if let [End::Node { node: u, .. }, End::Node { node: v, .. }] = edge.ends {
            if u == v {
                return Ok(RatFunc::zero());
            }
        }
    }
    let faces = net.faces();
    // Bridge: both darts of an edge on one face.
    for face in &faces {
        let mut edges_seen = std::collections::HashSet::new();
        for &d in face {
            if !edges_seen.insert(d / 2) {
                return Ok(RatFunc::zero());
            }
        }
    }
    // Bigon: contract by θ/Δ.
    if let Some(face) = faces.iter().find(|f| f.len() == 2) {
        let e1 = face[0] / 2;
        let e2 = face[1] / 2;
        let (u, su, v, sv) = match net.edge(e1).ends {
            [End::Node { node: u, slot: su }, End::Node { node: v, slot: sv }] => (u, su, v, sv),
            _ => unreachable!(),
        };
        let a = net.edge(e1).color;
        let b = net.edge(e2).color;
        // Third legs at u and v.
        let third = |net: &Net, n: usize| -> (u8, usize) {
            let legs = net.nodes[n].unwrap();
            (0..3u8)
                .map(|s| (s, legs[s as usize]))
                .find(|&(_, e)| e != e1 && e != e2)
                .expect("third leg of a bigon node")
        };
        let (gsu, gu) = third(&net, u);
        let (gsv, gv) = third(&net, v);
        let cu = net.edge(gu).color;
        let cv = net.edge(gv).color;
        if cu != cv {
            return Ok(RatFunc::zero());
        }
        let scale = &theta(caches, a, b, cu) / &delta(cu);
        let _ = (su, sv);
        if gu == gv {
            // The whole component is a theta network.
            return Ok(&scale * &delta(cu));
        }
        let guo = net.other_end(gu, u, gsu);
        let gvo = net.other_end(gv, v, gsv);
        net.edges[e1] = None;
        net.edges[e2] = None;
        net.edges[gv] = None;
        net.nodes[u] = None;
        net.nodes[v] = None;
        net.edges[gu] = Some(Edge { color: cu, ends: [guo, gvo] });
        net.repoint(gvo, gu);
        return Ok(&scale * &reduce(caches, &mut net, depth + 1)?);
    }
    // Six-j move on the smallest face.
    let face = faces
        .iter()
        .min_by_key(|f| (f.len(), f.iter().map(|&d| d / 2).min().unwrap()))
        .expect("connected component has a face");
    let e = face.iter().map(|&d| d / 2).min().unwrap();
    let (u, su, v, sv) = match net.edge(e).ends {
        [End::Node { node: u, slot: su }, End::Node { node: v, slot: sv }] => (u, su, v, sv),
        _ => unreachable!(),
    };
    let leg = |net: &Net, n: usize, s: u8| net.nodes[n].unwrap()[s as usize];
    let ea = leg(&net, u, (su + 1) % 3);
    let eb = leg(&net, u, (su + 2) % 3);
    let ec = leg(&net, v, (sv + 1) % 3);
    let ed = leg(&net, v, (sv + 2) % 3);
    let (a, b) = (net.edge(ea).color, net.edge(eb).color);
    let (c, d) = (net.edge(ec).color, net.edge(ed).color);
    let ecol = net.edge(e).color;
    let mut total = RatFunc::zero();
    for f in admissible_range(a, d) {
        if !admissible(b, c, f) {
            continue;
        }
        let coeff = six_j(caches, a, b, ecol, c, d, f);
        if coeff.is_zero() {
            continue;
        }
        let mut branch = net.clone();
        branch.edges[e] = None;
        branch.nodes[u] = None;
        branch.nodes[v] = None;
        let w = branch.nodes.len();
        let x = w + 1;
        let ef = branch.edges.len();
        branch.edges.push(Some(Edge {
            color: f,
            ends: [End::Node { node: w, slot: 0 }, End::Node { node: x, slot: 0 }],
        }));
        branch.nodes.push(Some([ef, ed, ea]));
        branch.nodes.push(Some([ef, eb, ec]));
        // Re-point the four outer legs. When a leg ran between u and v it
        // shows up twice, once from each side, so each end is moved
        // individually.
        let from_u1 = End::Node { node: u, slot: (su + 1) % 3 };
        let from_u2 = End::Node { node: u, slot: (su + 2) % 3 };
        let from_v1 = End::Node { node: v, slot: (sv + 1) % 3 };
        let from_v2 = End::Node { node: v, slot: (sv + 2) % 3 };
        branch.set_end(ea, from_u1, End::Node { node: w, slot: 2 });
        branch.set_end(eb, from_u2, End::Node { node: x, slot: 1 });
        branch.set_end(ec, from_v1, End::Node { node: x, slot: 2 });
        branch.set_end(ed, from_v2, End::Node { node: w, slot: 1 });
        total += &(&coeff * &reduce(caches, &mut branch, depth + 1)?);
    }
    Ok(total)
}

/// Single-factor value of a colored network, crossings allowed: each cable
/// crossing expands into fusion channels
/// `σ(a,b) = Σ_f λ(a,b,f) · (Δ_f/θ(a,b,f)) · (fuse → split swapped)`, with
/// `bar(λ)` for negative crossings, and every resulting planar network goes
/// through [`eval_planar`]. Branches are evaluated in parallel; exact
/// arithmetic makes the sum independent of evaluation order.
/// Which deformation parameter a single-factor evaluation runs at.
///
/// `A` reads positive crossings with weight `λ` and negative ones with
/// `bar(λ)`; `AInverse` swaps the two, which is how the second factor of a
/// balanced pair reads the same picture. Planar values are bar-invariant, so
/// the two orientations of any network are each other's bar — a property the
/// tests check rather than assume, since the two routes really do run with
/// different crossing weights.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FactorOrientation {
    A,
    AInverse,
}

pub fn eval_single_oriented(
    caches: &Caches,
    net: &ColoredNetwork,
    orientation: FactorOrientation,
) -> Result<RatFunc> {
    if net.crossings().is_empty() {
        return eval_planar(caches, net);
    }
    let ranges: Vec<Vec<u32>> = net
        .crossings()
        .iter()
        .map(|c| {
            admissible_range(net.edge_color(c.left), net.edge_color(c.right)).collect()
        })
        .collect();
    let mut assignments: Vec<Vec<u32>> = vec![Vec::new()];
    for range in &ranges {
        let mut next = Vec::with_capacity(assignments.len() * range.len());
        for partial in &assignments {
            for &f in range {
                let mut ext = partial.clone();
                ext.push(f);
                next.push(ext);
            }
        }
        assignments = next;
    }
    let terms: Result<Vec<RatFunc>> = assignments
        .par_iter()
        .map(|channels| {
            let mut coeff = RatFunc::one();
            for (k, cr) in net.crossings().iter().enumerate() {
                let (a, b) = (net.edge_color(cr.left), net.edge_color(cr.right));
                let f = channels[k];
                let positive_weight = (cr.sign == CrossingSign::Pos)
                    == (orientation == FactorOrientation::A);
                let l = if positive_weight {
                    lambda(a, b, f)
                } else {
                    lambda(a, b, f).bar()
                };
                coeff = &coeff * &(&l * &(&delta(f) / &theta(caches, a, b, f)));
            }
            if coeff.is_zero() {
                return Ok(RatFunc::zero());
            }
            let planar = net.fused(channels)?;
            Ok(&coeff * &eval_planar(caches, &planar)?)
        })
        .collect();
    let mut total = RatFunc::zero();
    for t in terms? {
        total += &t;
    }
    Ok(total)
}

/// Single-factor value at the standard orientation
/// ([`FactorOrientation::A`]).
pub fn eval_single(caches: &Caches, net: &ColoredNetwork) -> Result<RatFunc> {
    eval_single_oriented(caches, net, FactorOrientation::A)
}

/// Balanced pair value `s · bar(s)`: both SU(2) factors carry the same
/// picture, the second at `A⁻¹`. The bar shortcut for the second factor is
/// justified by the orientation equivariance property and is tested against
/// the explicit [`FactorOrientation::AInverse`] route.
pub fn eval_pair(caches: &Caches, net: &ColoredNetwork) -> Result<RatFunc> {
    let s = eval_single(caches, net)?;
    Ok(&s * &s.bar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::NetSlice;
    use crate::qpoly::LaurentPoly;
    use crate::recoupling::tet;
    use crate::tl::{oracle_evaluate, JwCache, DEFAULT_ORACLE_BUDGET};

    fn oracle(net: &ColoredNetwork) -> RatFunc {
        let jw = JwCache::new();
        oracle_evaluate(&jw, net, DEFAULT_ORACLE_BUDGET).unwrap()
    }

    fn loop_net(color: u32) -> ColoredNetwork {
        ColoredNetwork::new(vec![NetSlice::Cup { at: 0, color }, NetSlice::Cap { at: 0 }])
            .unwrap()
    }

    fn theta_net(a: u32, b: u32, c: u32) -> ColoredNetwork {
        ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: a },
            NetSlice::Node { at: 1, n_in: 1, out_colors: vec![b, c] },
            NetSlice::Node { at: 0, n_in: 2, out_colors: vec![c] },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap()
    }

    fn tet_net(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> ColoredNetwork {
        ColoredNetwork::new(vec![
            NetSlice::Node { at: 0, n_in: 0, out_colors: vec![a, b, f] },
            NetSlice::Node { at: 0, n_in: 1, out_colors: vec![d, e] },
            NetSlice::Node { at: 1, n_in: 2, out_colors: vec![c] },
            NetSlice::Node { at: 0, n_in: 3, out_colors: vec![] },
        ])
        .unwrap()
    }

    #[test]
    fn planar_loop_and_theta() {
        let caches = Caches::new();
        for n in 0..5u32 {
            assert_eq!(eval_planar(&caches, &loop_net(n)).unwrap(), delta(n));
        }
        for (a, b, c) in [(1u32, 1, 2), (2, 2, 2), (1, 2, 3), (3, 3, 2)] {
            assert_eq!(
                eval_planar(&caches, &theta_net(a, b, c)).unwrap(),
                theta(&caches, a, b, c),
                "θ({a},{b},{c})"
            );
        }
    }

    #[test]
    fn planar_inadmissible_is_zero() {
        let caches = Caches::new();
        assert!(eval_planar(&caches, &theta_net(1, 1, 1)).unwrap().is_zero());
        assert!(eval_planar(&caches, &theta_net(1, 1, 4)).unwrap().is_zero());
    }

    #[test]
    fn planar_tet_exercises_six_j_move() {
        let caches = Caches::new();
        for (a, b, e, c, d, f) in [
            (1u32, 1, 2, 1, 1, 2),
            (2, 2, 2, 2, 2, 2),
            (1, 2, 1, 2, 1, 1),
            (2, 1, 1, 1, 2, 3),
            (2, 2, 0, 2, 2, 2),
        ] {
            assert_eq!(
                eval_planar(&caches, &tet_net(a, b, e, c, d, f)).unwrap(),
                tet(&caches, a, b, e, c, d, f),
                "tet({a},{b},{e},{c},{d},{f})"
            );
        }
    }

    #[test]
    fn planar_zero_edges_splice() {
        let caches = Caches::new();
        // Theta with one zero edge is a loop: θ(a,a,0) network = Δ_a.
        assert_eq!(
            eval_planar(&caches, &theta_net(2, 2, 0)).unwrap(),
            delta(2)
        );
        // A lone zero loop is 1.
        assert!(eval_planar(&caches, &loop_net(0)).unwrap().is_one());
        // Stub pair: a zero edge with two endpoints.
        let net = ColoredNetwork::new(vec![
            NetSlice::StubStart { at: 0 },
            NetSlice::StubEnd { at: 0 },
        ])
        .unwrap();
        assert!(eval_planar(&caches, &net).unwrap().is_one());
    }

    #[test]
    fn planar_matches_oracle_on_prism() {
        // Triangular prism: an a-triangle and a b-triangle joined by three
        // rungs of color r. Square faces force a six-j cascade rather than a
        // single bigon chain.
        let w = |a: u32, b: u32, r: u32| {
            ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: r },
                NetSlice::Node { at: 0, n_in: 1, out_colors: vec![a, a] },
                NetSlice::Node { at: 2, n_in: 1, out_colors: vec![b, b] },
                NetSlice::Node { at: 1, n_in: 1, out_colors: vec![a, r] },
                NetSlice::Node { at: 0, n_in: 2, out_colors: vec![r] },
                NetSlice::Node { at: 1, n_in: 2, out_colors: vec![b] },
                NetSlice::Node { at: 0, n_in: 2, out_colors: vec![b] },
                NetSlice::Cap { at: 0 },
            ])
        };
        for (a, b, r) in [(1u32, 1u32, 2u32), (2, 1, 2), (2, 2, 2)] {
            let net = w(a, b, r).unwrap();
            assert_eq!(net.nodes().len(), 6);
            assert_eq!(net.num_edges(), 9);
            let caches = Caches::new();
            assert_eq!(
                eval_planar(&caches, &net).unwrap(),
                oracle(&net),
                "prism({a},{b},{r})"
            );
        }
    }

    #[test]
    fn single_curl_value() {
        let caches = Caches::new();
        // cup, σ⁺, cap: the closed curl, −A⁻³·δ.
        let net = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        let v = eval_single(&caches, &net).unwrap();
        assert_eq!(v, oracle(&net));
        let expect = RatFunc::from_poly(
            &LaurentPoly::monomial(-3, num::BigRational::from(num::BigInt::from(-1)))
                * &crate::qpoly::delta_loop(),
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn single_matches_oracle_on_colored_hopf() {
        let caches = Caches::new();
        for (p, q) in [(1u32, 1u32), (1, 2), (2, 2)] {
            let net = ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: p },
                NetSlice::Cup { at: 1, color: q },
                NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                NetSlice::Cap { at: 1 },
                NetSlice::Cap { at: 0 },
            ])
            .unwrap();
            assert_eq!(
                eval_single(&caches, &net).unwrap(),
                oracle(&net),
                "hopf({p},{q})"
            );
        }
    }

    #[test]
    fn single_matches_oracle_on_twisted_theta() {
        let caches = Caches::new();
        // Theta with a crossing inserted between the two middle cables.
        for sign in [CrossingSign::Pos, CrossingSign::Neg] {
            let net = ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: 2 },
                NetSlice::Node { at: 1, n_in: 1, out_colors: vec![1, 1] },
                NetSlice::Cross { at: 1, sign },
                NetSlice::Node { at: 0, n_in: 2, out_colors: vec![1] },
                NetSlice::Cap { at: 0 },
            ])
            .unwrap();
            assert_eq!(eval_single(&caches, &net).unwrap(), oracle(&net), "{sign:?}");
        }
    }

    #[test]
    fn pair_is_bar_square() {
        let caches = Caches::new();
        let net = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        let s = eval_single(&caches, &net).unwrap();
        assert_eq!(eval_pair(&caches, &net).unwrap(), &s * &s.bar());
    }

    #[test]
    fn orientation_is_bar_equivariant() {
        // The A⁻¹ orientation runs a genuinely different sum (every crossing
        // weight barred); the result must be the bar of the A value, and
        // planar values must not move at all.
        let caches = Caches::new();
        let curl = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 1 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        let hopf = ColoredNetwork::new(vec![
            NetSlice::Cup { at: 0, color: 2 },
            NetSlice::Cup { at: 1, color: 1 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Neg },
            NetSlice::Cross { at: 0, sign: CrossingSign::Neg },
            NetSlice::Cap { at: 1 },
            NetSlice::Cap { at: 0 },
        ])
        .unwrap();
        for net in [&curl, &hopf] {
            let a = eval_single_oriented(&caches, net, FactorOrientation::A).unwrap();
            let ainv = eval_single_oriented(&caches, net, FactorOrientation::AInverse).unwrap();
            assert_eq!(ainv, a.bar());
            assert!(!a.is_zero());
        }
        let planar = theta_net(1, 1, 2);
        let a = eval_single_oriented(&caches, &planar, FactorOrientation::A).unwrap();
        let ainv = eval_single_oriented(&caches, &planar, FactorOrientation::AInverse).unwrap();
        assert_eq!(a, ainv);
        assert_eq!(a, a.bar(), "planar values are bar-invariant");
    }
}
