//! Intertwiner vertices over internal trees.
//!
//! An `n`-valent vertex with boundary colors `j_0 … j_{n−1}` lives in the
//! invariant space `Hom(0, j_0 ⊗ … ⊗ j_{n−1})`. A basis for that space comes
//! from picking a planar fusion tree: fuse adjacent legs pairwise down to a
//! closure, labeling the internal edges admissibly. Different trees give
//! different bases, related by six-j moves.
//!
//! The *generalized vertex* built here is a balanced-pair object: both
//! SU(2) factors carry the same tree diagram with the **same** internal
//! labels, summed once with the bar-invariant coefficient
//! `Π_internal Δ / Π_nodes θ` (for four legs, the classical
//! `Σ_i Δ_i/(θθ)` two-channel vertex; a 2-vertex is `(1/Δ_j)·cup`, a
//! 1-vertex the color-0 stub). An [`NVertexExpansion`] stores the
//! single-factor tree words with that shared coefficient; pair evaluations
//! combine a term's word into both factors before squaring through the bar.
//!
//! As a map of paired representations the vertex is independent of the tree
//! used to write it down, is preserved by turning legs around the bottom,
//! and absorbs braidings and curls on its legs — the six-j orthogonality
//! collapses the two factors' independent relabelings back onto the
//! diagonal. Those are exactly the properties the tests probe, using
//! independently labeled bra trees in the two factors.

use crate::diagram::{eval_single, ColoredNetwork, NetSlice};
use crate::error::{Error, Result};
use crate::qpoly::RatFunc;
use crate::recoupling::{admissible_range, delta, theta, Caches};

/// Boundary colors of a vertex, left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSpec {
    pub colors: Vec<u32>,
}

impl VertexSpec {
    pub fn new(colors: Vec<u32>) -> Self {
        VertexSpec { colors }
    }

    pub fn arity(&self) -> usize {
        self.colors.len()
    }
}

/// A planar fusion tree on `n` ordered legs, described top-down: starting
/// from the row of `n` legs, `fusions[k]` gives the position of the adjacent
/// pair fused at step `k` (the pair at `p, p+1` of the current row). After
/// `n − 2` fusions two cables remain and close into each other.
///
/// `n = 1` takes an empty fusion list and denotes the stub tree (only color
/// 0 closes); `n = 2` is the plain bent cable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeShape {
    n: usize,
    fusions: Vec<usize>,
}

impl TreeShape {
    pub fn new(n: usize, fusions: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDiagram("vertex with no legs".into()));
        }
        let expected = n.saturating_sub(2);
        if fusions.len() != expected {
            return Err(Error::InvalidDiagram(format!(
                "{n}-leg tree needs {expected} fusions, got {}",
                fusions.len()
            )));
        }
        for (k, &p) in fusions.iter().enumerate() {
            let width = n - k;
            if p + 1 >= width {
                return Err(Error::InvalidDiagram(format!(
                    "fusion {k} at {p} with row width {width}"
                )));
            }
        }
        Ok(TreeShape { n, fusions })
    }

    /// The left comb: always fuse the leftmost pair.
    pub fn caterpillar(n: usize) -> TreeShape {
        TreeShape { n, fusions: vec![0; n.saturating_sub(2)] }
    }

    /// Every fusion sequence on `n` legs. Distinct sequences may describe
    /// the same abstract tree; as a spanning family for pairing checks that
    /// redundancy is harmless.
    pub fn all(n: usize) -> Vec<TreeShape> {
        fn go(n: usize, acc: &mut Vec<usize>, out: &mut Vec<TreeShape>) {
            let k = acc.len();
            if k == n - 2 {
                out.push(TreeShape { n, fusions: acc.clone() });
                return;
            }
            for p in 0..n - k - 1 {
                acc.push(p);
                go(n, acc, out);
                acc.pop();
            }
        }
        if n < 2 {
            return vec![TreeShape { n, fusions: Vec::new() }];
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn fusions(&self) -> &[usize] {
        &self.fusions
    }
}

/// One basis element of the invariant space: a shape plus internal labels —
/// one color per fusion step, the last ones constrained by the closure.
#[derive(Clone, Debug)]
pub struct TreeBasisElement {
    pub spec: VertexSpec,
    pub shape: TreeShape,
    /// Color of each fusion output, in fusion order.
    pub labels: Vec<u32>,
    /// Open slice word creating the `n` boundary cables, left to right.
    pub word: Vec<NetSlice>,
    /// `⟨T,l | T,l⟩`: the tree glued to its own flip. Closed form
    /// `Π_nodes θ / Π_internal Δ` (with the two degenerate arities handled
    /// directly).
    pub norm: RatFunc,
}

/// What a fused cable in the top-down simulation came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RowCable {
    Leg(usize),
    Fused(usize),
}

/// Enumerate all labeled tree basis elements for the given boundary colors
/// and shape, in lexicographic label order.
pub fn tree_basis(caches: &Caches, spec: &VertexSpec, shape: &TreeShape) -> Result<Vec<TreeBasisElement>> {
    if shape.n != spec.arity() {
        return Err(Error::InvalidDiagram(format!(
            "tree on {} legs against {} boundary colors",
            shape.n,
            spec.arity()
        )));
    }
    let n = shape.n;
    if n == 1 {
        if spec.colors[0] != 0 {
            return Ok(Vec::new());
        }
        return Ok(vec![TreeBasisElement {
            spec: spec.clone(),
            shape: shape.clone(),
            labels: Vec::new(),
            word: vec![NetSlice::StubStart { at: 0 }],
            norm: RatFunc::one(),
        }]);
    }
    if n == 2 {
        if spec.colors[0] != spec.colors[1] {
            return Ok(Vec::new());
        }
        let j = spec.colors[0];
        return Ok(vec![TreeBasisElement {
            spec: spec.clone(),
            shape: shape.clone(),
            labels: Vec::new(),
            word: vec![NetSlice::Cup { at: 0, color: j }],
            norm: delta(j),
        }]);
    }

    let mut out = Vec::new();
    // Depth-first over fusion output colors.
    struct Frame {
        row: Vec<(u32, RowCable)>,
        labels: Vec<u32>,
    }
    let mut stack = vec![Frame {
        row: spec
            .colors
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, RowCable::Leg(i)))
            .collect(),
        labels: Vec::new(),
    }];
    while let Some(frame) = stack.pop() {
        let k = frame.labels.len();
        if k == n - 2 {
            debug_assert_eq!(frame.row.len(), 2);
            if frame.row[0].0 != frame.row[1].0 {
                continue;
            }
            out.push(build_element(caches, spec, shape, &frame.labels));
            continue;
        }
        let p = shape.fusions[k];
        let (ca, _) = frame.row[p];
        let (cb, _) = frame.row[p + 1];
        // Push in reverse so labels come out lexicographically.
        for f in admissible_range(ca, cb).collect::<Vec<_>>().into_iter().rev() {
            let mut row = frame.row.clone();
            row[p] = (f, RowCable::Fused(k));
            row.remove(p + 1);
            let mut labels = frame.labels.clone();
            labels.push(f);
            stack.push(Frame { row, labels });
        }
    }
    Ok(out)
}

/// Build the word and norm for one labeling (arity ≥ 3).
fn build_element(
    caches: &Caches,
    spec: &VertexSpec,
    shape: &TreeShape,
    labels: &[u32],
) -> TreeBasisElement {
    let n = shape.n;
    // Re-run the top-down simulation to collect node triples, split data,
    // and the closure row.
    let mut row: Vec<(u32, RowCable)> = spec
        .colors
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, RowCable::Leg(i)))
        .collect();
    let mut node_theta = RatFunc::one();
    // For the bottom-up word: fusion k read upward is a split of the cable
    // at position p into colors (left, right).
    let mut splits: Vec<(usize, u32, u32)> = Vec::with_capacity(n - 2);
    for (k, &p) in shape.fusions.iter().enumerate() {
        let (ca, _) = row[p];
        let (cb, _) = row[p + 1];
        let f = labels[k];
        node_theta = &node_theta * &theta(caches, ca, cb, f);
        splits.push((p, ca, cb));
        row[p] = (f, RowCable::Fused(k));
        row.remove(p + 1);
    }
    debug_assert_eq!(row.len(), 2);
    debug_assert_eq!(row[0].0, row[1].0);
    let closure_color = row[0].0;
    // Internal edges: fusion outputs, except that the closure merges its two
    // cables into one edge — skip one fused participant (if the closure
    // touches a leg instead, the fused cable joins that leg's edge and is
    // not internal either).
    let mut skip: Option<usize> = None;
    for &(_, cable) in &[row[0], row[1]] {
        if let RowCable::Fused(k) = cable {
            skip = Some(k);
            break;
        }
    }
    let mut internal_delta = RatFunc::one();
    for (k, &f) in labels.iter().enumerate() {
        if Some(k) != skip {
            internal_delta = &internal_delta * &delta(f);
        }
    }
    let norm = &node_theta / &internal_delta;
    // Bottom-up word: open the closure, then undo fusions as splits.
    let mut word = vec![NetSlice::Cup { at: 0, color: closure_color }];
    for &(p, ca, cb) in splits.iter().rev() {
        word.push(NetSlice::Node { at: p, n_in: 1, out_colors: vec![ca, cb] });
    }
    TreeBasisElement {
        spec: spec.clone(),
        shape: shape.clone(),
        labels: labels.to_vec(),
        word,
        norm,
    }
}

/// One term of a vertex expansion: an open tree word with its weight.
#[derive(Clone, Debug)]
pub struct VertexTerm {
    pub labels: Vec<u32>,
    pub coeff: RatFunc,
    pub word: Vec<NetSlice>,
}

/// A vertex written in some tree, as a weighted sum of labeled tree words.
/// Read as a balanced-pair object — each term's word placed in both SU(2)
/// factors, the coefficient applied once — the operator it represents is
/// independent of the tree.
#[derive(Clone, Debug)]
pub struct NVertexExpansion {
    pub spec: VertexSpec,
    pub terms: Vec<VertexTerm>,
}

/// The generalized vertex on the given boundary colors, expanded in `shape`:
/// `Σ_l (1/⟨T,l|T,l⟩) |T,l⟩`. In a single factor it pairs to 1 against every
/// labeling of its own tree; the tree-independent object is the balanced
/// pair, probed by [`probe_balanced`].
pub fn n_vertex(caches: &Caches, spec: &VertexSpec, shape: &TreeShape) -> Result<NVertexExpansion> {
    let basis = tree_basis(caches, spec, shape)?;
    let terms = basis
        .into_iter()
        .map(|b| VertexTerm {
            labels: b.labels,
            coeff: &RatFunc::one() / &b.norm,
            word: b.word,
        })
        .collect();
    Ok(NVertexExpansion { spec: spec.clone(), terms })
}

/// The 4-valent vertex `Σ_i Δ_i/(θ(a,b,i) θ(c,d,i)) |i⟩` in the left-comb
/// tree — the classical two-channel form.
pub fn bc_four_vertex(caches: &Caches, colors: [u32; 4]) -> Result<NVertexExpansion> {
    n_vertex(caches, &VertexSpec::new(colors.to_vec()), &TreeShape::caterpillar(4))
}

/// Vertically flip an open slice word: a diagram creating cables `0 → X`
/// becomes one consuming them `X → 0`. Cups become caps (and vice versa,
/// remembering colors from a forward trace), nodes swap inputs and outputs,
/// crossing signs are preserved (a crossing is its own transpose).
pub fn flip_open_word(word: &[NetSlice]) -> Result<Vec<NetSlice>> {
    let bad = |i: usize, msg: &str| Error::InvalidDiagram(format!("slice {i}: {msg}"));
    let mut row: Vec<u32> = Vec::new();
    let mut flipped: Vec<NetSlice> = Vec::with_capacity(word.len());
    for (i, slice) in word.iter().enumerate() {
        match *slice {
            NetSlice::Cup { at, color } => {
                if at > row.len() {
                    return Err(bad(i, "cup out of range"));
                }
                row.insert(at, color);
                row.insert(at + 1, color);
                flipped.push(NetSlice::Cap { at });
            }
            NetSlice::Cap { at } => {
                if at + 1 >= row.len() {
                    return Err(bad(i, "cap out of range"));
                }
                if row[at] != row[at + 1] {
                    return Err(bad(i, "cap joining different colors"));
                }
                let color = row[at];
                row.remove(at);
                row.remove(at);
                flipped.push(NetSlice::Cup { at, color });
            }
            NetSlice::Cross { at, sign } => {
                if at + 1 >= row.len() {
                    return Err(bad(i, "crossing out of range"));
                }
                row.swap(at, at + 1);
                flipped.push(NetSlice::Cross { at, sign });
            }
            NetSlice::Node { at, n_in, ref out_colors } => {
                let n_in = n_in as usize;
                if at + n_in > row.len() {
                    return Err(bad(i, "node out of range"));
                }
                let in_colors: Vec<u32> = row[at..at + n_in].to_vec();
                for _ in 0..n_in {
                    row.remove(at);
                }
                for (k, &c) in out_colors.iter().enumerate() {
                    row.insert(at + k, c);
                }
                flipped.push(NetSlice::Node {
                    at,
                    n_in: out_colors.len() as u8,
                    out_colors: in_colors,
                });
            }
            NetSlice::StubStart { at } => {
                if at > row.len() {
                    return Err(bad(i, "stub out of range"));
                }
                row.insert(at, 0);
                flipped.push(NetSlice::StubEnd { at });
            }
            NetSlice::StubEnd { at } => {
                if at >= row.len() {
                    return Err(bad(i, "stub out of range"));
                }
                if row[at] != 0 {
                    return Err(bad(i, "stub ending a colored cable"));
                }
                row.remove(at);
                flipped.push(NetSlice::StubStart { at });
            }
        }
    }
    flipped.reverse();
    Ok(flipped)
}

/// Close one open word against the flip of another: `a` on the bottom,
/// `flip(b)` on top. Both must create the same boundary colors.
pub fn pair_words(a: &[NetSlice], b: &[NetSlice]) -> Result<ColoredNetwork> {
    let mut slices = a.to_vec();
    slices.extend(flip_open_word(b)?);
    ColoredNetwork::new(slices)
}

/// Pair a vertex expansion against one tree basis element in a single SU(2)
/// factor. Against the expansion's own tree this is 1 for every labeling
/// (the coefficients are reciprocal norms and the tree Gram form is
/// diagonal); across trees the single-factor value is basis-dependent and
/// the balanced probe below is the meaningful comparison.
pub fn pair_against(
    caches: &Caches,
    vertex: &NVertexExpansion,
    basis: &TreeBasisElement,
) -> Result<RatFunc> {
    let mut total = RatFunc::zero();
    for term in &vertex.terms {
        let net = pair_words(&term.word, &basis.word)?;
        total += &(&term.coeff * &eval_single(caches, &net)?);
    }
    Ok(total)
}

/// Balanced probe of a vertex: close the two SU(2) factors against
/// *independently* labeled tree elements — `bra1` in the first factor,
/// `bra2` in the second — summing once over the vertex's internal labels:
///
/// `Σ_l c_l · ⟨bra1 | T, l⟩ · bar(⟨bra2 | T, l⟩)`.
///
/// Probe elements span each factor's invariant space, so the full matrix
/// over a probe basis pins the vertex as a map of paired representations.
/// Tree independence, turning invariance, and the leg-extension identity
/// are equalities of these matrices.
pub fn probe_balanced(
    caches: &Caches,
    vertex: &NVertexExpansion,
    bra1: &TreeBasisElement,
    bra2: &TreeBasisElement,
) -> Result<RatFunc> {
    let mut total = RatFunc::zero();
    for term in &vertex.terms {
        let s1 = eval_single(caches, &pair_words(&term.word, &bra1.word)?)?;
        if s1.is_zero() {
            continue;
        }
        let s2 = eval_single(caches, &pair_words(&term.word, &bra2.word)?)?;
        total += &(&term.coeff * &(&s1 * &s2.bar()));
    }
    Ok(total)
}

/// Shift every slice position right by `by` (for running an open word inside
/// a wider row).
pub fn shift_word(word: &[NetSlice], by: usize) -> Vec<NetSlice> {
    word.iter()
        .map(|s| match *s {
            NetSlice::Cup { at, color } => NetSlice::Cup { at: at + by, color },
            NetSlice::Cap { at } => NetSlice::Cap { at: at + by },
            NetSlice::Cross { at, sign } => NetSlice::Cross { at: at + by, sign },
            NetSlice::Node { at, n_in, ref out_colors } => {
                NetSlice::Node { at: at + by, n_in, out_colors: out_colors.clone() }
            }
            NetSlice::StubStart { at } => NetSlice::StubStart { at: at + by },
            NetSlice::StubEnd { at } => NetSlice::StubEnd { at: at + by },
        })
        .collect()
}

/// Turn a vertex: `turns = +1` carries the leftmost leg around the bottom to
/// the right end (boundary `(c_0, …, c_{n−1}) → (c_1, …, c_{n−1}, c_0)`),
/// `−1` the other way. As a balanced pair operator the generalized vertex is
/// invariant under turning: the turned expansion and the vertex built
/// directly on the rotated boundary have equal probe matrices.
pub fn rotate(vertex: &NVertexExpansion, turns: i64) -> NVertexExpansion {
    let mut out = vertex.clone();
    let n = out.spec.arity();
    if n < 2 || turns == 0 {
        return out;
    }
    for _ in 0..turns.unsigned_abs() {
        let colors = out.spec.colors.clone();
        if turns > 0 {
            let c0 = colors[0];
            for term in &mut out.terms {
                let mut word = vec![NetSlice::Cup { at: 0, color: c0 }];
                word.extend(shift_word(&term.word, 1));
                word.push(NetSlice::Cap { at: 0 });
                term.word = word;
            }
            out.spec.colors.rotate_left(1);
        } else {
            let clast = colors[n - 1];
            for term in &mut out.terms {
                let mut word = vec![NetSlice::Cup { at: 0, color: clast }];
                word.extend(shift_word(&term.word, 1));
                word.push(NetSlice::Cap { at: n });
                term.word = word;
            }
            out.spec.colors.rotate_right(1);
        }
    }
    out
}

/// Grow a vertex by one leg: split boundary position `leg` into the pair
/// `(i, j)` through a summed channel,
///
/// `w' = Σ_r (Δ_r / θ(i,j,r)) · [ w_n(…, r, …) with a node r → (i, j) grafted ]`.
///
/// `others` are the `n − 1` fixed boundary colors; the channel `r` is
/// inserted at position `leg ≤ others.len()` and ranges over the admissible
/// colors for `(i, j)`. As a balanced pair operator the result equals the
/// generalized `(n+1)`-vertex on the extended boundary — the channel sum is
/// a resolution of the identity on `i ⊗ j`.
pub fn extend(
    caches: &Caches,
    others: &[u32],
    leg: usize,
    shape: &TreeShape,
    i: u32,
    j: u32,
) -> Result<NVertexExpansion> {
    let n = others.len() + 1;
    if leg > others.len() {
        return Err(Error::InvalidDiagram(format!(
            "extend at position {leg} of {} boundary colors",
            others.len()
        )));
    }
    if shape.arity() != n {
        return Err(Error::InvalidDiagram(format!(
            "extension over a {}-leg tree needs arity {n}",
            shape.arity()
        )));
    }
    let mut colors: Vec<u32> = others.to_vec();
    colors.splice(leg..leg, [i, j]);
    let mut terms = Vec::new();
    for r in admissible_range(i, j) {
        let mut base_colors = others.to_vec();
        base_colors.insert(leg, r);
        let base = n_vertex(caches, &VertexSpec::new(base_colors), shape)?;
        let scale = &delta(r) / &theta(caches, i, j, r);
        for t in base.terms {
            let mut word = t.word;
            word.push(NetSlice::Node { at: leg, n_in: 1, out_colors: vec![i, j] });
            let mut labels = t.labels;
            labels.push(r);
            terms.push(VertexTerm { labels, coeff: &t.coeff * &scale, word });
        }
    }
    Ok(NVertexExpansion { spec: VertexSpec::new(colors), terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{eval_planar, CrossingSign};
    use crate::recoupling::twist;

    fn ones(n: usize) -> VertexSpec {
        VertexSpec::new(vec![1; n])
    }

    #[test]
    fn basis_pairing_is_diagonal() {
        let caches = Caches::new();
        let spec = ones(4);
        for shape in TreeShape::all(4) {
            let basis = tree_basis(&caches, &spec, &shape).unwrap();
            assert_eq!(basis.len(), 2, "two channels for four unit legs");
            for x in &basis {
                for y in &basis {
                    let v = eval_planar(&caches, &pair_words(&x.word, &y.word).unwrap()).unwrap();
                    if x.labels == y.labels {
                        assert_eq!(v, x.norm, "diagonal pairing is the norm");
                    } else {
                        assert!(v.is_zero(), "off-diagonal pairing vanishes");
                    }
                }
            }
        }
    }

    #[test]
    fn norm_closed_form_matches_glued_evaluation() {
        let caches = Caches::new();
        for spec in [
            VertexSpec::new(vec![0]),
            VertexSpec::new(vec![2, 2]),
            VertexSpec::new(vec![1, 2, 1]),
            VertexSpec::new(vec![1, 1, 2, 2]),
            VertexSpec::new(vec![2, 1, 1, 2, 2]),
        ] {
            for shape in TreeShape::all(spec.arity()) {
                for b in tree_basis(&caches, &spec, &shape).unwrap() {
                    let glued = pair_words(&b.word, &b.word).unwrap();
                    assert_eq!(
                        eval_planar(&caches, &glued).unwrap(),
                        b.norm,
                        "norm of {:?} labels {:?}",
                        shape,
                        b.labels
                    );
                }
            }
        }
    }

    #[test]
    fn vertex_pairs_to_one_in_its_own_tree() {
        let caches = Caches::new();
        let spec = VertexSpec::new(vec![1, 1, 2, 2]);
        for shape in TreeShape::all(4) {
            let w = n_vertex(&caches, &spec, &shape).unwrap();
            assert!(!w.terms.is_empty());
            for b in tree_basis(&caches, &spec, &shape).unwrap() {
                let v = pair_against(&caches, &w, &b).unwrap();
                assert!(v.is_one(), "pairing against {:?}/{:?} gave {v}", shape, b.labels);
            }
        }
    }

    #[test]
    fn tree_independence_on_five_legs() {
        let caches = Caches::new();
        let spec = VertexSpec::new(vec![1, 1, 1, 1, 2]);
        let shape_a = TreeShape::new(5, vec![0, 0, 0]).unwrap();
        let shape_b = TreeShape::new(5, vec![2, 1, 0]).unwrap();
        let wa = n_vertex(&caches, &spec, &shape_a).unwrap();
        let wb = n_vertex(&caches, &spec, &shape_b).unwrap();
        assert_ne!(wa.terms.len(), 0);
        // The two expansions describe the same balanced pair operator: all
        // probes with independently labeled bra trees from a third shape
        // agree. The probes span each factor, so the matrix pins the map.
        let shape_c = TreeShape::new(5, vec![1, 1, 0]).unwrap();
        let probes = tree_basis(&caches, &spec, &shape_c).unwrap();
        assert!(probes.len() > 1);
        let mut nonzero = 0usize;
        for b1 in &probes {
            for b2 in &probes {
                let va = probe_balanced(&caches, &wa, b1, b2).unwrap();
                let vb = probe_balanced(&caches, &wb, b1, b2).unwrap();
                assert_eq!(va, vb, "probe {:?} / {:?}", b1.labels, b2.labels);
                if !va.is_zero() {
                    nonzero += 1;
                }
            }
        }
        assert!(nonzero > 0, "probe matrix must not vanish identically");
    }

    #[test]
    fn turning_preserves_the_vertex() {
        let caches = Caches::new();
        let spec = VertexSpec::new(vec![1, 2, 2, 1]);
        let w = n_vertex(&caches, &spec, &TreeShape::caterpillar(4)).unwrap();
        for turns in [1i64, -1, 2] {
            let turned = rotate(&w, turns);
            let mut rotated_colors = spec.colors.clone();
            if turns > 0 {
                rotated_colors.rotate_left(turns as usize);
            } else {
                rotated_colors.rotate_right((-turns) as usize);
            }
            assert_eq!(turned.spec.colors, rotated_colors);
            // The turned expansion equals the vertex built directly on the
            // rotated boundary, as a balanced pair operator.
            let direct = n_vertex(&caches, &turned.spec, &TreeShape::caterpillar(4)).unwrap();
            let probes = tree_basis(&caches, &turned.spec, &TreeShape::caterpillar(4)).unwrap();
            assert!(!probes.is_empty());
            for b1 in &probes {
                for b2 in &probes {
                    assert_eq!(
                        probe_balanced(&caches, &turned, b1, b2).unwrap(),
                        probe_balanced(&caches, &direct, b1, b2).unwrap(),
                        "turn {turns}, probe {:?} / {:?}",
                        b1.labels,
                        b2.labels
                    );
                }
            }
        }
    }

    #[test]
    fn extension_builds_the_bigger_vertex() {
        let caches = Caches::new();
        // Split the last position of a 3-leg boundary [1, 2, ·] into (1, 2).
        let w4 = extend(&caches, &[1, 2], 2, &TreeShape::caterpillar(3), 1, 2).unwrap();
        assert_eq!(w4.spec.colors, vec![1, 2, 1, 2]);
        // As a balanced pair operator the extension equals the 4-vertex
        // built directly: equal probe matrices over every 4-leg shape.
        let direct = n_vertex(&caches, &w4.spec, &TreeShape::caterpillar(4)).unwrap();
        for shape in TreeShape::all(4) {
            let probes = tree_basis(&caches, &w4.spec, &shape).unwrap();
            for b1 in &probes {
                for b2 in &probes {
                    assert_eq!(
                        probe_balanced(&caches, &w4, b1, b2).unwrap(),
                        probe_balanced(&caches, &direct, b1, b2).unwrap(),
                        "{:?}: {:?} / {:?}",
                        shape,
                        b1.labels,
                        b2.labels
                    );
                }
            }
        }
        // Degenerate base: the 1-leg stub vertex extends to the bent cable.
        let w2 = extend(&caches, &[], 0, &TreeShape::new(1, vec![]).unwrap(), 2, 2).unwrap();
        assert_eq!(w2.spec.colors, vec![2, 2]);
        let two_shape = TreeShape::new(2, vec![]).unwrap();
        let direct2 = n_vertex(&caches, &w2.spec, &two_shape).unwrap();
        let b2 = tree_basis(&caches, &w2.spec, &two_shape).unwrap();
        assert_eq!(b2.len(), 1);
        let got = probe_balanced(&caches, &w2, &b2[0], &b2[0]).unwrap();
        let want = probe_balanced(&caches, &direct2, &b2[0], &b2[0]).unwrap();
        assert_eq!(got, want);
        assert!(!got.is_zero());
    }

    #[test]
    fn pair_value_absorbs_braiding_and_curl() {
        let caches = Caches::new();
        let spec = ones(4);
        let w = bc_four_vertex(&caches, [1, 1, 1, 1]).unwrap();
        let basis = tree_basis(&caches, &spec, &TreeShape::caterpillar(4)).unwrap();
        assert_eq!(basis.len(), 2);
        // Paired value with a slice word `mid` inserted between the vertex
        // and the closing bra trees: the *same* internal label runs through
        // both SU(2) factors, with the coefficient applied once (it is
        // bar-invariant). Independent bra labelings probe the full operator.
        let paired = |mid: &[NetSlice], b1: &TreeBasisElement, b2: &TreeBasisElement| -> RatFunc {
            let mut total = RatFunc::zero();
            for term in &w.terms {
                let factor = |bra: &TreeBasisElement| {
                    let mut slices = term.word.clone();
                    slices.extend_from_slice(mid);
                    slices.extend(flip_open_word(&bra.word).unwrap());
                    eval_single(&caches, &ColoredNetwork::new(slices).unwrap()).unwrap()
                };
                total += &(&term.coeff * &(&factor(b1) * &factor(b2).bar()));
            }
            total
        };
        // Curl on the first leg.
        let curl = [
            NetSlice::Cup { at: 1, color: 1 },
            NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
            NetSlice::Cap { at: 1 },
        ];
        for b1 in &basis {
            for b2 in &basis {
                let plain = paired(&[], b1, b2);
                if b1.labels == b2.labels {
                    // Diagonal probe: c_l · norm · bar(norm), nonzero.
                    assert!(!plain.is_zero());
                } else {
                    assert!(plain.is_zero(), "tree pairing is diagonal");
                }
                // Braiding any adjacent pair of legs is absorbed: λ·bar(λ)
                // cancels channel by channel once the tree is re-expanded,
                // so even cross-tree braids leave every probe unchanged.
                for at in [0usize, 1, 2] {
                    for sign in [CrossingSign::Pos, CrossingSign::Neg] {
                        let braid = [NetSlice::Cross { at, sign }];
                        assert_eq!(
                            paired(&braid, b1, b2),
                            plain,
                            "braiding legs {at},{} ({sign:?}) probe {:?}/{:?}",
                            at + 1,
                            b1.labels,
                            b2.labels
                        );
                    }
                }
                assert_eq!(paired(&curl, b1, b2), plain, "paired vertex absorbs a curl");
            }
        }
        // The single factor picks up exactly the twist phase under a curl:
        // curling leg 0 multiplies each diagonal term by twist(1).
        let b = &basis[0];
        let single = |mid: &[NetSlice]| -> RatFunc {
            let mut total = RatFunc::zero();
            for term in &w.terms {
                let mut slices = term.word.clone();
                slices.extend_from_slice(mid);
                slices.extend(flip_open_word(&b.word).unwrap());
                let net = ColoredNetwork::new(slices).unwrap();
                total += &(&term.coeff * &eval_single(&caches, &net).unwrap());
            }
            total
        };
        assert_eq!(single(&curl), &twist(1) * &single(&[]));
    }

    #[test]
    fn pairing_a_crossed_word_closes_cleanly() {
        let word = vec![
            NetSlice::Cup { at: 0, color: 2 },
            NetSlice::Node { at: 1, n_in: 1, out_colors: vec![1, 1] },
            NetSlice::Cross { at: 1, sign: CrossingSign::Neg },
        ];
        let net = pair_words(&word, &word).unwrap();
        assert_eq!(net.crossings().len(), 2);
        assert_eq!(net.nodes().len(), 2);
    }
}
