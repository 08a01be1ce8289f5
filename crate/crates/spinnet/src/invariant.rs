//! Embedded-graph invariants, an independent Kauffman bracket, and diagram
//! surgery (disjoint union, wedge at a vertex).
//!
//! The graph invariant labels every edge of a closed graph diagram with a
//! balanced color, substitutes each graph vertex by its generalized
//! tree-vertex expansion, and sums the balanced pair values of the resulting
//! closed colored networks, weighted by the expansion coefficients.
//!
//! The Kauffman bracket here is a plain skein recursion on raw slice words.
//! It deliberately shares no code with the network evaluators — no
//! recoupling, no fusion channels, its own loop counting — so that the
//! product identity relating the bracket of an underlying link to the graph
//! invariant is a comparison of two independent computation routes.

use crate::diagram::{
    eval_pair, CrossingSign, DiagramKind, NetSlice, Slice, SlicedDiagram,
};
use crate::error::{Error, Result};
use crate::qpoly::{delta_loop, LaurentPoly, RatFunc};
use crate::recoupling::Caches;
use crate::tl::{oracle_evaluate, DEFAULT_ORACLE_BUDGET};
use crate::vertices::{n_vertex, shift_word, NVertexExpansion, TreeShape, VertexSpec, VertexTerm};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// A finite multigraph. Vertices are `0..num_vertices`; each edge stores its
/// two endpoints, a loop repeating its vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbstractGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl AbstractGraph {
    /// Valence of each vertex; loops count twice.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0usize; self.num_vertices];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        val
    }

    /// True iff every valence is even. An isolated vertex is Eulerian.
    pub fn is_eulerian(&self) -> bool {
        self.valences().iter().all(|v| v % 2 == 0)
    }

    /// Connected components; isolated vertices count as their own.
    pub fn num_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..self.num_vertices)
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }
}

/// Extract the abstract graph of a closed graph-kind diagram: vertices are
/// the vertex slices in order, edges the traced strand runs between vertex
/// ports. A closed strand that touches no vertex has no endpoints and is
/// rejected — add an explicit 2-valent vertex to keep such a loop in a
/// graph diagram.
pub fn underlying_graph(d: &SlicedDiagram) -> Result<AbstractGraph> {
    if d.kind() != DiagramKind::Graph {
        return Err(Error::InvalidDiagram(
            "underlying graph requested for a link diagram".into(),
        ));
    }
    if let Some(&e) = d.free_loops().first() {
        return Err(Error::InvalidDiagram(format!(
            "edge {e} is a closed loop touching no vertex; graph edges need endpoints"
        )));
    }
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); d.num_edges()];
    for (vi, v) in d.vertices().iter().enumerate() {
        for &e in &v.edges_ccw {
            incidence[e].push(vi);
        }
    }
    let mut edges = Vec::with_capacity(d.num_edges());
    for (e, ends) in incidence.into_iter().enumerate() {
        match ends.as_slice() {
            [a, b] => edges.push((*a, *b)),
            other => {
                return Err(Error::Internal(format!(
                    "edge {e} traced to {} vertex ports",
                    other.len()
                )))
            }
        }
    }
    Ok(AbstractGraph { num_vertices: d.vertices().len(), edges })
}

/// A closed graph diagram together with its abstract graph and an optional
/// total edge coloring (adopted from the diagram's embedded colors).
#[derive(Clone, Debug)]
pub struct EmbeddedGraphDiagram {
    pub diagram: SlicedDiagram,
    pub graph: AbstractGraph,
    pub coloring: Option<BTreeMap<usize, u32>>,
}

impl EmbeddedGraphDiagram {
    pub fn new(diagram: SlicedDiagram) -> Result<Self> {
        let graph = underlying_graph(&diagram)?;
        let coloring = diagram.embedded_colors().cloned();
        if let Some(c) = &coloring {
            for e in 0..diagram.num_edges() {
                if !c.contains_key(&e) {
                    return Err(Error::InvalidDiagram(format!(
                        "coloring is partial: edge {e} has no color"
                    )));
                }
            }
        }
        Ok(EmbeddedGraphDiagram { diagram, graph, coloring })
    }

    /// Number of graph vertices (the exponent in the bracket product
    /// identity).
    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices
    }
}

/// Which evaluator the invariant pipeline hands its closed networks to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Engine {
    /// Six-j rewriting with crossing fusion.
    Fast,
    /// Brute-force Temperley–Lieb expansion of every cable and projector.
    Oracle,
}

/// Evaluate one closed colored network as a balanced pair under the chosen
/// engine.
fn pair_value(caches: &Caches, net: &crate::diagram::ColoredNetwork, engine: Engine) -> Result<RatFunc> {
    match engine {
        Engine::Fast => eval_pair(caches, net),
        Engine::Oracle => {
            let s = oracle_evaluate(&caches.jw, net, DEFAULT_ORACLE_BUDGET)?;
            Ok(&s * &s.bar())
        }
    }
}

/// The leaves of a vertex's substitution tree, left to right: the incident
/// edges read off the stored rotation so that bending the first `n_in`
/// leaves down onto the incoming strands reproduces the embedding's cyclic
/// order (inputs reversed, then outputs in creation order).
fn substitution_leaves(edges_ccw: &[usize], n_in: usize) -> Vec<usize> {
    let mut leaves: Vec<usize> = edges_ccw[..n_in].iter().rev().copied().collect();
    leaves.extend(edges_ccw[n_in..].iter().rev().copied());
    leaves
}

/// Per-vertex expansion data for the invariant sum.
struct VertexSite {
    slice: usize,
    expansion: NVertexExpansion,
}

/// Lower a graph diagram to one closed colored network, substituting vertex
/// `v` by the open tree word `terms[v].word`. The tree is grafted above the
/// vertex's position with its first `n_in` leaves bent down onto the
/// incoming cables.
fn lower(
    d: &SlicedDiagram,
    color_of: &impl Fn(usize) -> u32,
    sites: &[VertexSite],
    terms: &[&VertexTerm],
) -> Result<crate::diagram::ColoredNetwork> {
    let mut word: Vec<NetSlice> = Vec::with_capacity(d.slices().len() * 2);
    let mut cup_no = 0usize;
    let mut site_no = 0usize;
    for (i, slice) in d.slices().iter().enumerate() {
        match *slice {
            Slice::Cup { at } => {
                word.push(NetSlice::Cup { at, color: color_of(d.cup_edges()[cup_no]) });
                cup_no += 1;
            }
            Slice::Cap { at } => word.push(NetSlice::Cap { at }),
            Slice::Cross { at, sign } => word.push(NetSlice::Cross { at, sign }),
            Slice::Vertex { at, n_in, .. } => {
                let site = &sites[site_no];
                debug_assert_eq!(site.slice, i);
                word.extend(shift_word(&terms[site_no].word, at + n_in));
                for t in 0..n_in {
                    word.push(NetSlice::Cap { at: at + n_in - 1 - t });
                }
                site_no += 1;
            }
        }
    }
    crate::diagram::ColoredNetwork::new(word)
}

/// The invariant sum shared by the uniform and colored entry points.
fn invariant_sum(
    caches: &Caches,
    d: &EmbeddedGraphDiagram,
    color_of: impl Fn(usize) -> u32 + Sync,
    engine: Engine,
) -> Result<RatFunc> {
    let mut sites = Vec::with_capacity(d.diagram.vertices().len());
    for v in d.diagram.vertices() {
        let (n_in, _n_out) = match d.diagram.slices()[v.slice] {
            Slice::Vertex { n_in, n_out, .. } => (n_in, n_out),
            _ => return Err(Error::Internal("vertex record points at a non-vertex".into())),
        };
        let n = v.edges_ccw.len();
        let expansion = if n == 0 {
            // An isolated vertex contributes the scalar 1: a single empty
            // term, nothing grafted.
            NVertexExpansion {
                spec: VertexSpec::new(Vec::new()),
                terms: vec![VertexTerm {
                    labels: Vec::new(),
                    coeff: RatFunc::one(),
                    word: Vec::new(),
                }],
            }
        } else {
            let leaves = substitution_leaves(&v.edges_ccw, n_in);
            let colors: Vec<u32> = leaves.iter().map(|&e| color_of(e)).collect();
            n_vertex(caches, &VertexSpec::new(colors), &TreeShape::caterpillar(n))?
        };
        if expansion.terms.is_empty() {
            // No admissible labeling at this vertex: the invariant vanishes.
            return Ok(RatFunc::zero());
        }
        sites.push(VertexSite { slice: v.slice, expansion });
    }

    // Mixed-radix enumeration of one term choice per vertex.
    let radices: Vec<usize> = sites.iter().map(|s| s.expansion.terms.len()).collect();
    let total: usize = radices.iter().product::<usize>().max(1);
    let values: Result<Vec<RatFunc>> = (0..total)
        .into_par_iter()
        .map(|mut combo| {
            let mut terms: Vec<&VertexTerm> = Vec::with_capacity(sites.len());
            let mut coeff = RatFunc::one();
            for (site, &radix) in sites.iter().zip(&radices) {
                let t = &site.expansion.terms[combo % radix];
                combo /= radix;
                coeff = &coeff * &t.coeff;
                terms.push(t);
            }
            let net = lower(&d.diagram, &color_of, &sites, &terms)?;
            Ok(&coeff * &pair_value(caches, &net, engine)?)
        })
        .collect();
    let mut totalv = RatFunc::zero();
    for v in values? {
        totalv += &v;
    }
    Ok(totalv)
}

/// The graph invariant with every edge labeled by the balanced color `j`.
pub fn g_invariant(caches: &Caches, d: &EmbeddedGraphDiagram, j: u32) -> Result<RatFunc> {
    g_invariant_engine(caches, d, j, Engine::Fast)
}

pub fn g_invariant_engine(
    caches: &Caches,
    d: &EmbeddedGraphDiagram,
    j: u32,
    engine: Engine,
) -> Result<RatFunc> {
    invariant_sum(caches, d, |_| j, engine)
}

/// The graph invariant with the diagram's own per-edge coloring.
pub fn g_invariant_colored(caches: &Caches, d: &EmbeddedGraphDiagram) -> Result<RatFunc> {
    g_invariant_colored_engine(caches, d, Engine::Fast)
}

pub fn g_invariant_colored_engine(
    caches: &Caches,
    d: &EmbeddedGraphDiagram,
    engine: Engine,
) -> Result<RatFunc> {
    let coloring = d.coloring.as_ref().ok_or_else(|| {
        Error::InvalidDiagram("colored invariant requires a per-edge coloring".into())
    })?;
    invariant_sum(caches, d, |e| coloring[&e], engine)
}

/// Balanced pair value of a link diagram (no graph vertices) with every
/// edge colored by `color_of`.
pub fn link_pair_value(
    caches: &Caches,
    d: &SlicedDiagram,
    color_of: impl Fn(usize) -> u32 + Sync,
    engine: Engine,
) -> Result<RatFunc> {
    if !d.vertices().is_empty() {
        return Err(Error::InvalidDiagram(
            "link evaluation of a diagram with graph vertices".into(),
        ));
    }
    let net = lower(d, &color_of, &[], &[])?;
    pair_value(caches, &net, engine)
}

/// Kauffman bracket of a closed link diagram by skein recursion on the raw
/// slice word. Each crossing opens into its two smoothings — the identity
/// with weight `A` (resp. `A⁻¹` for a negative crossing) and the turn-back
/// hook with the reciprocal weight — and a crossing-free word contributes
/// `δ^{loops}`. Conventions: the empty diagram is 1, an unknot is `δ`.
pub fn bracket(d: &SlicedDiagram) -> Result<LaurentPoly> {
    if !d.vertices().is_empty() {
        return Err(Error::InvalidDiagram(
            "bracket of a diagram with graph vertices; strip them first".into(),
        ));
    }
    let mut memo: HashMap<Vec<Slice>, LaurentPoly> = HashMap::new();
    Ok(skein(d.slices().to_vec(), &mut memo))
}

fn skein(word: Vec<Slice>, memo: &mut HashMap<Vec<Slice>, LaurentPoly>) -> LaurentPoly {
    if let Some(v) = memo.get(&word) {
        return v.clone();
    }
    let value = match word
        .iter()
        .position(|s| matches!(s, Slice::Cross { .. }))
    {
        None => delta_loop().pow(count_loops(&word)),
        Some(i) => {
            let Slice::Cross { at, sign } = word[i] else { unreachable!() };
            let mut identity = word.clone();
            identity.remove(i);
            let mut hook = word.clone();
            hook.splice(i..=i, [Slice::Cap { at }, Slice::Cup { at }]);
            let (e_id, e_hook) = match sign {
                CrossingSign::Pos => (1, -1),
                CrossingSign::Neg => (-1, 1),
            };
            let one = num::BigRational::from_integer(1.into());
            &(&LaurentPoly::monomial(e_id, one.clone()) * &skein(identity, memo))
                + &(&LaurentPoly::monomial(e_hook, one) * &skein(hook, memo))
        }
    };
    memo.insert(word, value.clone());
    value
}

/// Closed-loop count of a crossing-free word of cups and caps, by its own
/// tiny union-find (independent of the network machinery).
fn count_loops(word: &[Slice]) -> u32 {
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    let mut row: Vec<usize> = Vec::new();
    for s in word {
        match *s {
            Slice::Cup { at } => {
                let n = parent.len();
                parent.push(n);
                row.insert(at, n);
                row.insert(at + 1, n);
            }
            Slice::Cap { at } => {
                let (a, b) = (row[at], row[at + 1]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
                row.remove(at);
                row.remove(at);
            }
            _ => unreachable!("crossing-free word"),
        }
    }
    debug_assert!(row.is_empty());
    let mut loops = 0u32;
    for i in 0..parent.len() {
        if find(&mut parent, i) == i {
            loops += 1;
        }
    }
    loops
}

/// Sum of crossing signs.
pub fn writhe(d: &SlicedDiagram) -> i64 {
    d.crossings()
        .iter()
        .map(|c| if c.sign == CrossingSign::Pos { 1 } else { -1 })
        .sum()
}

/// The bracket-based Jones polynomial of a closed link diagram, in the
/// variable `A`. Unnormalized, this is the framed value `⟨L⟩` with
/// `⟨unknot⟩ = δ`; normalized, it is `(−A³)^{−w} ⟨L⟩ / δ`, which removes
/// both the framing and the base unknot value.
pub fn jones(d: &SlicedDiagram, normalized: bool) -> Result<LaurentPoly> {
    let b = bracket(d)?;
    if !normalized {
        return Ok(b);
    }
    if d.slices().is_empty() {
        return Err(Error::InvalidDiagram(
            "normalized value of the empty diagram".into(),
        ));
    }
    let ratio = RatFunc::new(b, delta_loop()).expect("δ is a nonzero polynomial");
    let reduced = ratio.as_poly().ok_or_else(|| {
        Error::Internal("bracket of a nonempty closed diagram is divisible by δ".into())
    })?;
    let w = writhe(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(&LaurentPoly::monomial(-3 * w, num::BigRational::from_integer(sign.into())) * reduced)
}

/// Shift every slice's position right by `by`.
fn shift_slices(word: &[Slice], by: usize) -> Vec<Slice> {
    word.iter()
        .map(|s| match *s {
            Slice::Cup { at } => Slice::Cup { at: at + by },
            Slice::Cap { at } => Slice::Cap { at: at + by },
            Slice::Cross { at, sign } => Slice::Cross { at: at + by, sign },
            Slice::Vertex { at, n_in, n_out, ref id } => {
                Slice::Vertex { at: at + by, n_in, n_out, id: id.clone() }
            }
        })
        .collect()
}

/// Merge the edge colorings of two diagrams being combined, shifting the
/// second diagram's edge indices.
fn merge_colors(
    d1: &SlicedDiagram,
    d2: &SlicedDiagram,
) -> Option<BTreeMap<usize, u32>> {
    match (d1.embedded_colors(), d2.embedded_colors()) {
        (None, None) => None,
        (c1, c2) => {
            let mut out = c1.cloned().unwrap_or_default();
            if let Some(c2) = c2 {
                for (&e, &c) in c2 {
                    out.insert(e + d1.num_edges(), c);
                }
            }
            Some(out)
        }
    }
}

/// Side-by-side union: the second diagram's slice word runs after (and
/// therefore beside) the first. Edges renumber with the second diagram's
/// offset by the first's edge count; colorings merge accordingly.
pub fn disjoint_union(d1: &SlicedDiagram, d2: &SlicedDiagram) -> Result<SlicedDiagram> {
    let mut slices = d1.slices().to_vec();
    slices.extend(d2.slices().iter().cloned());
    let kind = if d1.kind() == DiagramKind::Graph || d2.kind() == DiagramKind::Graph {
        DiagramKind::Graph
    } else {
        DiagramKind::Link
    };
    SlicedDiagram::with_colors(kind, slices, merge_colors(d1, d2))
}

/// Wedge two graph diagrams at a vertex of each: the two vertices fuse into
/// one whose rotation is the first vertex's ports followed by the second's,
/// and everything else stays in disjoint half-planes — the merged vertex is
/// a topological cutpoint by construction.
///
/// Each chosen vertex must be its diagram's final slice (a sink consuming
/// the whole remaining row). Any vertex can be put in that position when
/// the diagram is drawn, but this function does not search for the isotopy.
pub fn wedge_at_vertex(
    d1: &SlicedDiagram,
    d2: &SlicedDiagram,
    v1: usize,
    v2: usize,
) -> Result<SlicedDiagram> {
    let sink = |d: &SlicedDiagram, v: usize| -> Result<usize> {
        let info = d
            .vertices()
            .get(v)
            .ok_or_else(|| Error::InvalidDiagram(format!("no vertex {v}")))?;
        match d.slices()[info.slice] {
            Slice::Vertex { n_out: 0, n_in, .. } if info.slice + 1 == d.slices().len() => {
                Ok(n_in)
            }
            _ => Err(Error::InvalidDiagram(format!(
                "vertex {v} is not the terminal sink slice; redraw the diagram with it last"
            ))),
        }
    };
    let n1 = sink(d1, v1)?;
    let n2 = sink(d2, v2)?;
    let id = match (&d1.vertices()[v1].id, &d2.vertices()[v2].id) {
        (Some(a), Some(b)) => Some(format!("{a}+{b}")),
        _ => None,
    };
    let mut slices = d1.slices()[..d1.slices().len() - 1].to_vec();
    slices.extend(shift_slices(&d2.slices()[..d2.slices().len() - 1], n1));
    slices.push(Slice::Vertex { at: 0, n_in: n1 + n2, n_out: 0, id });
    SlicedDiagram::with_colors(DiagramKind::Graph, slices, merge_colors(d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::eval_single;
    use crate::qpoly::delta_loop;
    use crate::recoupling::{delta, theta};

    fn graph(text: &str) -> EmbeddedGraphDiagram {
        EmbeddedGraphDiagram::new(SlicedDiagram::parse_text(text).unwrap()).unwrap()
    }

    /// Unknotted cycle through one 2-valent vertex, drawn with the vertex as
    /// the terminal sink.
    const VERTEX_UNKNOT: &str = "cup 0\nvertex 0 in=2 out=0\n";

    /// Trefoil (closure of three positive half-twists) with one 2-valent
    /// vertex on the strand.
    const VERTEX_TREFOIL: &str =
        "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";

    /// Figure-eight knot (braid closure) with one 2-valent vertex.
    const VERTEX_FIGURE_EIGHT: &str = "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\nvertex 0 in=1 out=1\ncap 2\ncap 1\ncap 0\n";

    /// The theta graph: two 3-valent vertices joined by three edges.
    const THETA: &str = "vertex 0 in=0 out=3\nvertex 0 in=3 out=0\n";

    #[test]
    fn underlying_graph_shapes() {
        let theta = graph(THETA);
        assert_eq!(theta.graph.num_vertices, 2);
        assert_eq!(theta.graph.edges.len(), 3);
        assert_eq!(theta.graph.valences(), vec![3, 3]);
        assert!(!theta.graph.is_eulerian());
        assert_eq!(theta.graph.num_components(), 1);

        let cycle = graph(VERTEX_UNKNOT);
        assert_eq!(cycle.graph.valences(), vec![2]);
        assert!(cycle.graph.is_eulerian());

        let isolated = graph("vertex 0 in=0 out=0\n");
        assert!(isolated.graph.is_eulerian());
        assert_eq!(isolated.graph.num_components(), 1);

        let two = graph("cup 0\nvertex 0 in=2 out=0\ncup 0\nvertex 0 in=2 out=0\n");
        assert_eq!(two.graph.num_components(), 2);

        // A vertexless loop is not a graph edge.
        let free = SlicedDiagram::new(
            DiagramKind::Graph,
            vec![Slice::Cup { at: 0 }, Slice::Cap { at: 0 }],
        )
        .unwrap();
        assert!(matches!(
            underlying_graph(&free),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn invariant_of_vertex_unknot_is_delta() {
        let caches = Caches::new();
        let d = graph(VERTEX_UNKNOT);
        for j in 0..4u32 {
            assert_eq!(g_invariant(&caches, &d, j).unwrap(), delta(j), "j={j}");
        }
    }

    #[test]
    fn eulerian_vanishing_on_odd_valences() {
        let caches = Caches::new();
        let theta = graph(THETA);
        for j in [1u32, 3] {
            assert!(g_invariant(&caches, &theta, j).unwrap().is_zero(), "j={j}");
        }
        // Even labels do not vanish: the theta graph supports them.
        assert!(!g_invariant(&caches, &theta, 2).unwrap().is_zero());
    }

    #[test]
    fn color_zero_gives_one() {
        let caches = Caches::new();
        for text in [VERTEX_UNKNOT, THETA, VERTEX_TREFOIL] {
            assert!(g_invariant(&caches, &graph(text), 0).unwrap().is_one());
        }
    }

    #[test]
    fn colored_invariant_matches_hand_built_theta() {
        let caches = Caches::new();
        // Color the theta's three edges (1, 1, 2).
        let text = r#"{"format": "spinnet-diagram/1", "kind": "graph",
            "slices": [{"op": "vertex", "at": 0, "in": 0, "out": 3},
                       {"op": "vertex", "at": 0, "in": 3, "out": 0}],
            "colors": {"0": 1, "1": 1, "2": 2}}"#;
        let d = EmbeddedGraphDiagram::new(SlicedDiagram::parse_json(text).unwrap()).unwrap();
        let got = g_invariant_colored(&caches, &d).unwrap();
        // Each 3-vertex is normalized by 1/θ(1,1,2); the doubled theta
        // network evaluates to θ·bar(θ).
        let th = theta(&caches, 1, 1, 2);
        let want = &(&(&RatFunc::one() / &th) * &(&RatFunc::one() / &th)) * &(&th * &th.bar());
        assert_eq!(got, want);
        assert!(got.is_one(), "normalized theta closes to 1");
        // Uniform coloring agrees with the uniform entry point.
        let uni = r#"{"format": "spinnet-diagram/1", "kind": "graph",
            "slices": [{"op": "vertex", "at": 0, "in": 0, "out": 3},
                       {"op": "vertex", "at": 0, "in": 3, "out": 0}],
            "colors": {"0": 2, "1": 2, "2": 2}}"#;
        let du = EmbeddedGraphDiagram::new(SlicedDiagram::parse_json(uni).unwrap()).unwrap();
        assert_eq!(
            g_invariant_colored(&caches, &du).unwrap(),
            g_invariant(&caches, &du, 2).unwrap()
        );
    }

    #[test]
    fn colored_two_vertex_cycle_mismatch_vanishes() {
        let caches = Caches::new();
        // A cycle through two 2-valent vertices, edges colored 1 and 2.
        let text = r#"{"format": "spinnet-diagram/1", "kind": "graph",
            "slices": [{"op": "cup", "at": 0}, {"op": "vertex", "at": 0, "in": 1, "out": 1},
                       {"op": "vertex", "at": 1, "in": 1, "out": 1}, {"op": "cap", "at": 0}],
            "colors": {"0": 1, "1": 2}}"#;
        let d = EmbeddedGraphDiagram::new(SlicedDiagram::parse_json(text).unwrap()).unwrap();
        assert!(g_invariant_colored(&caches, &d).unwrap().is_zero());
    }

    #[test]
    fn bracket_base_cases_and_curl() {
        let unknot = SlicedDiagram::parse_text("cup 0\ncap 0\n").unwrap();
        assert_eq!(bracket(&unknot).unwrap(), delta_loop());
        let empty = SlicedDiagram::parse_text("").unwrap();
        assert!(bracket(&empty).unwrap().is_one());
        // A crossing plat-closed by the cup below and the cap above is a
        // kink of topological writhe −1 (the two strands pass through it in
        // opposite vertical directions), so it contributes −A⁻³.
        let curl = SlicedDiagram::parse_text("cup 0\ncross+ 0\ncap 0\n").unwrap();
        let kink =
            LaurentPoly::monomial(-3, num::BigRational::from_integer((-1).into()));
        assert_eq!(bracket(&curl).unwrap(), &kink * &delta_loop());
        // In trace position (a one-strand Markov stabilization) the same
        // sign attribute is a writhe +1 kink contributing −A³.
        let stab = SlicedDiagram::parse_text("cup 0\ncup 0\ncross+ 1\ncap 2\ncap 0\n").unwrap();
        let kink_pos =
            LaurentPoly::monomial(3, num::BigRational::from_integer((-1).into()));
        assert_eq!(bracket(&stab).unwrap(), &kink_pos * &delta_loop());
    }

    #[test]
    fn bracket_agrees_with_fusion_route_on_knots() {
        // Two fully independent computations of the same scalar: skein
        // recursion on the slice word versus crossing fusion plus six-j
        // rewriting on the color-1 network.
        let caches = Caches::new();
        for text in [
            "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n",
            "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n",
            "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\ncap 2\ncap 1\ncap 0\n",
        ] {
            let d = SlicedDiagram::parse_text(text).unwrap();
            let via_skein = RatFunc::from_poly(bracket(&d).unwrap());
            let via_fusion =
                link_pair_single_factor(&caches, &d).unwrap();
            assert_eq!(via_skein, via_fusion, "{text:?}");
        }
    }

    /// Single-factor value of a link diagram colored 1, via the fusion
    /// engine — a test-only helper for route comparison.
    fn link_pair_single_factor(caches: &Caches, d: &SlicedDiagram) -> Result<RatFunc> {
        let net = lower(d, &|_| 1, &[], &[])?;
        eval_single(caches, &net)
    }

    #[test]
    fn normalized_jones_of_figure_eight_is_symmetric() {
        let d = SlicedDiagram::parse_text(
            "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\ncap 2\ncap 1\ncap 0\n",
        )
        .unwrap();
        assert_eq!(writhe(&d), 0);
        let v = jones(&d, true).unwrap();
        // A⁸ − A⁴ + 1 − A⁻⁴ + A⁻⁸.
        let mut want = LaurentPoly::zero();
        for (e, c) in [(8i64, 1i64), (4, -1), (0, 1), (-4, -1), (-8, 1)] {
            want += &LaurentPoly::monomial(e, num::BigRational::from_integer(c.into()));
        }
        assert_eq!(v, want);
        assert_eq!(v.bar(), v);
        // The mirror has the same normalized value (amphichiral diagram pair).
        assert_eq!(jones(&d.mirror(), true).unwrap(), want);
    }

    #[test]
    fn normalized_jones_of_trefoil_and_mirror() {
        let d = SlicedDiagram::parse_text(
            "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n",
        )
        .unwrap();
        let v = jones(&d, true).unwrap();
        // A⁻⁴ + A⁻¹² − A⁻¹⁶ for this chirality; the mirror is the bar.
        let mut want = LaurentPoly::zero();
        for (e, c) in [(-16i64, -1i64), (-12, 1), (-4, 1)] {
            want += &LaurentPoly::monomial(e, num::BigRational::from_integer(c.into()));
        }
        assert_eq!(v, want);
        assert_eq!(jones(&d.mirror(), true).unwrap(), v.bar());
    }

    #[test]
    fn mirror_invariance_of_graph_invariant() {
        let caches = Caches::new();
        let two_vertex_trefoil = "cup 0\ncup 1\ncross+ 0\nvertex 0 in=1 out=1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";
        for text in [VERTEX_TREFOIL, two_vertex_trefoil, VERTEX_FIGURE_EIGHT] {
            let d = graph(text);
            let m = EmbeddedGraphDiagram::new(d.diagram.mirror()).unwrap();
            for j in [1u32, 2] {
                let gd = g_invariant(&caches, &d, j).unwrap();
                let gm = g_invariant(&caches, &m, j).unwrap();
                assert_eq!(gd, gm, "{text:?} at j={j}");
                assert_eq!(gd.bar(), gd, "values are bar-invariant");
            }
        }
    }

    #[test]
    fn bracket_product_identity_on_decorated_cycles() {
        let caches = Caches::new();
        let decorated_hopf = "cup 0\ncup 1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\nvertex 1 in=1 out=1\ncap 1\ncap 0\n";
        let three_vertex_unknot =
            "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
        for text in [VERTEX_UNKNOT, VERTEX_TREFOIL, decorated_hopf, three_vertex_unknot] {
            let d = graph(text);
            let g1 = g_invariant(&caches, &d, 1).unwrap();
            let link = d.diagram.strip_vertices().unwrap();
            let b = bracket(&link).unwrap();
            let rhs = RatFunc::from_poly(&b * &b.bar());
            let lhs = &g1 * &delta(1).powi(d.num_vertices() as i64).unwrap();
            assert_eq!(lhs, rhs, "{text:?}");
        }
    }

    #[test]
    fn invariant_is_framing_robust() {
        let caches = Caches::new();
        let curled = graph("cup 0\ncross+ 0\nvertex 0 in=2 out=0\n");
        let flat = graph(VERTEX_UNKNOT);
        for j in [1u32, 2] {
            assert_eq!(
                g_invariant(&caches, &curled, j).unwrap(),
                g_invariant(&caches, &flat, j).unwrap(),
                "j={j}"
            );
        }
    }

    #[test]
    fn multiplicative_under_disjoint_union() {
        let caches = Caches::new();
        let pairs = [
            (VERTEX_UNKNOT, VERTEX_UNKNOT),
            (VERTEX_UNKNOT, THETA),
            (VERTEX_TREFOIL, VERTEX_UNKNOT),
            (THETA, THETA),
        ];
        for (a, b) in pairs {
            let da = graph(a);
            let db = graph(b);
            let du = EmbeddedGraphDiagram::new(
                disjoint_union(&da.diagram, &db.diagram).unwrap(),
            )
            .unwrap();
            for j in [1u32, 2] {
                let prod = &g_invariant(&caches, &da, j).unwrap()
                    * &g_invariant(&caches, &db, j).unwrap();
                assert_eq!(g_invariant(&caches, &du, j).unwrap(), prod, "{a:?}⊔{b:?} j={j}");
            }
        }
        // Union with the empty diagram is the identity.
        let d = graph(VERTEX_UNKNOT);
        let empty = SlicedDiagram::parse_text("").unwrap();
        let u = disjoint_union(&d.diagram, &empty).unwrap();
        assert_eq!(u.slices(), d.diagram.slices());
        assert_eq!(u.kind(), DiagramKind::Graph);
    }

    #[test]
    fn wedge_equals_split_product() {
        let caches = Caches::new();
        let d1 = graph(VERTEX_UNKNOT);
        let d2 = graph("cup 0\ncross+ 0\nvertex 0 in=2 out=0\n");
        let w = wedge_at_vertex(&d1.diagram, &d2.diagram, 0, 0).unwrap();
        let wd = EmbeddedGraphDiagram::new(w).unwrap();
        assert_eq!(wd.graph.num_vertices, 1);
        assert_eq!(wd.graph.valences(), vec![4]);
        let ud = EmbeddedGraphDiagram::new(
            disjoint_union(&d1.diagram, &d2.diagram).unwrap(),
        )
        .unwrap();
        for j in [1u32, 2] {
            let prod =
                &g_invariant(&caches, &d1, j).unwrap() * &g_invariant(&caches, &d2, j).unwrap();
            assert_eq!(g_invariant(&caches, &wd, j).unwrap(), prod, "wedge j={j}");
            assert_eq!(g_invariant(&caches, &ud, j).unwrap(), prod, "union j={j}");
        }
        // Errors: bad ids and non-terminal vertices.
        assert!(wedge_at_vertex(&d1.diagram, &d2.diagram, 5, 0).is_err());
        let mid = graph("cup 0\nvertex 0 in=1 out=1\ncap 0\n");
        assert!(wedge_at_vertex(&mid.diagram, &d2.diagram, 0, 0).is_err());
    }

    #[test]
    fn oracle_engine_agrees_on_small_graphs() {
        let caches = Caches::new();
        for (text, j) in [(VERTEX_UNKNOT, 1u32), (VERTEX_UNKNOT, 2), (THETA, 1), (THETA, 2)] {
            let d = graph(text);
            assert_eq!(
                g_invariant_engine(&caches, &d, j, Engine::Oracle).unwrap(),
                g_invariant(&caches, &d, j).unwrap(),
                "{text:?} j={j}"
            );
        }
    }
}
