//! The Temperley–Lieb category on planar matchings, Jones–Wenzl projectors,
//! and the brute-force network oracle.
//!
//! A [`Matching`] is a perfect non-crossing pairing of `n_in` bottom points
//! and `n_out` top points of a rectangle; a [`TlMorphism`] is a formal linear
//! combination of matchings with [`RatFunc`] coefficients. Composition glues
//! rectangles and trades each closed loop for a factor of `δ = −A² − A⁻²`.
//!
//! [`oracle_evaluate`] expands a colored network into nothing but elementary
//! cups, caps, crossings, and Jones–Wenzl projectors, then contracts the
//! whole picture strand by strand. It is deliberately naive — no recoupling
//! identities, no rewriting — so it serves as an independent referee for the
//! closed formulas in [`crate::recoupling`] and the fast evaluators in
//! [`crate::diagram`]. Work is metered: every pairwise matching glue counts
//! against a budget, and exceeding it is an error rather than a silent stall.

use crate::diagram::{ColoredNetwork, CrossingSign, NetSlice};
use crate::error::{Error, Result};
use crate::qpoly::{delta_loop, quantum_int, LaurentPoly, RatFunc};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// A perfect planar matching of `n_in` bottom and `n_out` top boundary
/// points. Points are indexed `0..n_in` along the bottom (left to right)
/// followed by `n_in..n_in+n_out` along the top (left to right).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matching {
    n_in: u32,
    n_out: u32,
    partner: Vec<u32>,
}

impl Matching {
    pub fn identity(n: u32) -> Self {
        let partner = (0..n).map(|i| i + n).chain(0..n).collect();
        Matching { n_in: n, n_out: n, partner }
    }

    pub fn n_in(&self) -> u32 {
        self.n_in
    }

    pub fn n_out(&self) -> u32 {
        self.n_out
    }

    pub fn partner_of(&self, p: u32) -> u32 {
        self.partner[p as usize]
    }

    fn check(&self) {
        let n = self.partner.len();
        debug_assert_eq!(n as u32, self.n_in + self.n_out);
        debug_assert!((0..n).all(|p| {
            let q = self.partner[p] as usize;
            q != p && self.partner[q] == p as u32
        }));
        debug_assert!(self.is_planar());
    }

    /// Non-crossing test: walk the boundary circle (bottom left→right, then
    /// top right→left) and match like balanced parentheses.
    pub fn is_planar(&self) -> bool {
        let total = self.n_in + self.n_out;
        // Circular position of each point.
        let circ = |p: u32| -> u32 {
            if p < self.n_in {
                p
            } else {
                self.n_in + (self.n_out - 1 - (p - self.n_in))
            }
        };
        let mut point_at = vec![0u32; total as usize];
        for p in 0..total {
            point_at[circ(p) as usize] = p;
        }
        let mut stack: Vec<u32> = Vec::new();
        for pos in 0..total {
            let p = point_at[pos as usize];
            let q = self.partner[p as usize];
            if circ(q) > pos {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Glue `self: a→b` under `other: b→c`; returns the composite matching
    /// and the number of closed loops formed in the middle.
    fn glue(&self, other: &Matching) -> (Matching, u32) {
        assert_eq!(self.n_out, other.n_in, "composition width mismatch");
        let a = self.n_in;
        let b = self.n_out;
        let c = other.n_out;
        // Outer point i of the result: bottom i<a ↦ self point i;
        // top j ↦ other point b+j.
        let mut partner = vec![u32::MAX; (a + c) as usize];
        let mut mid_seen = vec![false; b as usize];
        let trace_from = |start_outer: u32, mid_seen: &mut Vec<bool>| -> u32 {
            // Returns the outer endpoint (in result indexing).
            let (mut in_self, mut point) = if start_outer < a {
                (true, start_outer)
            } else {
                (false, b + (start_outer - a))
            };
            loop {
                if in_self {
                    let q = self.partner[point as usize];
                    if q < a {
                        return q; // bottom endpoint
                    }
                    let k = q - a;
                    mid_seen[k as usize] = true;
                    in_self = false;
                    point = k;
                } else {
                    let q = other.partner[point as usize];
                    if q >= b {
                        return a + (q - b); // top endpoint
                    }
                    mid_seen[q as usize] = true;
                    in_self = true;
                    point = a + q;
                }
            }
        };
        for start in 0..(a + c) {
            if partner[start as usize] != u32::MAX {
                continue;
            }
            let end = trace_from(start, &mut mid_seen);
            partner[start as usize] = end;
            partner[end as usize] = start;
        }
        // Remaining middle points lie on closed loops.
        let mut loops = 0u32;
        for k in 0..b {
            if mid_seen[k as usize] {
                continue;
            }
            loops += 1;
            // Walk the loop: alternate self/other pairings.
            let mut in_self = true;
            let mut point = k;
            loop {
                mid_seen[point as usize] = true;
                let q = if in_self {
                    self.partner[(a + point) as usize] - a
                } else {
                    other.partner[point as usize]
                };
                in_self = !in_self;
                point = q;
                if point == k && in_self {
                    break;
                }
            }
        }
        let m = Matching { n_in: a, n_out: c, partner };
        m.check();
        (m, loops)
    }

    fn tensor(&self, other: &Matching) -> Matching {
        let a1 = self.n_in;
        let b1 = self.n_out;
        let a2 = other.n_in;
        let b2 = other.n_out;
        let map1 = |p: u32| if p < a1 { p } else { a1 + a2 + (p - a1) };
        let map2 = |p: u32| if p < a2 { a1 + p } else { a1 + a2 + b1 + (p - a2) };
        let mut partner = vec![0u32; (a1 + a2 + b1 + b2) as usize];
        for p in 0..(a1 + b1) {
            partner[map1(p) as usize] = map1(self.partner[p as usize]);
        }
        for p in 0..(a2 + b2) {
            partner[map2(p) as usize] = map2(other.partner[p as usize]);
        }
        let m = Matching { n_in: a1 + a2, n_out: b1 + b2, partner };
        m.check();
        m
    }
}

/// A formal `RatFunc`-linear combination of planar matchings `n_in → n_out`.
/// Terms with zero coefficient are never stored, and the term map is ordered,
/// so equality, hashing, and iteration order are all canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TlMorphism {
    n_in: u32,
    n_out: u32,
    terms: BTreeMap<Matching, RatFunc>,
}

/// Work meter for brute-force evaluation: one unit per pairwise matching
/// glue. [`Budget::spend`] fails once the budget is exhausted.
#[derive(Debug, Clone)]
pub struct Budget {
    pub spent: u64,
    pub budget: u64,
}

/// Default elementary-composition budget for [`oracle_evaluate`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

impl Budget {
    pub fn new(budget: u64) -> Self {
        Budget { spent: 0, budget }
    }

    fn spend(&mut self, units: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(units);
        if self.spent > self.budget {
            Err(Error::BudgetExceeded { spent: self.spent, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

impl TlMorphism {
    pub fn zero(n_in: u32, n_out: u32) -> Self {
        TlMorphism { n_in, n_out, terms: BTreeMap::new() }
    }

    pub fn identity(n: u32) -> Self {
        let mut t = Self::zero(n, n);
        t.add_term(Matching::identity(n), RatFunc::one());
        t
    }

    /// `w → w+2`: insert a nested pair opening at strand position `pos`.
    pub fn cup(w: u32, pos: u32) -> Self {
        assert!(pos <= w);
        let mut partner = vec![0u32; (w + w + 2) as usize];
        let top = |j: u32| w + j;
        for i in 0..w {
            let j = if i < pos { i } else { i + 2 };
            partner[i as usize] = top(j);
            partner[top(j) as usize] = i;
        }
        partner[top(pos) as usize] = top(pos + 1);
        partner[top(pos + 1) as usize] = top(pos);
        let m = Matching { n_in: w, n_out: w + 2, partner };
        m.check();
        let mut t = Self::zero(w, w + 2);
        t.add_term(m, RatFunc::one());
        t
    }

    /// `w+2 → w`: join adjacent strands `pos, pos+1`.
    pub fn cap(w: u32, pos: u32) -> Self {
        assert!(pos <= w);
        let mut partner = vec![0u32; (w + w + 2) as usize];
        let top = |j: u32| w + 2 + j;
        for j in 0..w {
            let i = if j < pos { j } else { j + 2 };
            partner[i as usize] = top(j);
            partner[top(j) as usize] = i;
        }
        partner[pos as usize] = pos + 1;
        partner[(pos + 1) as usize] = pos;
        let m = Matching { n_in: w + 2, n_out: w, partner };
        m.check();
        let mut t = Self::zero(w + 2, w);
        t.add_term(m, RatFunc::one());
        t
    }

    /// The hook `e_pos` on `w` strands: cap then cup at the same position.
    pub fn hook(w: u32, pos: u32) -> Self {
        assert!(pos + 2 <= w);
        Self::cap(w - 2, pos).then(&Self::cup(w - 2, pos))
    }

    /// Kauffman crossing on `w` strands at position `pos`:
    /// `σ⁺ = A·id + A⁻¹·e`, `σ⁻` its bar.
    pub fn crossing(w: u32, pos: u32, sign: CrossingSign) -> Self {
        let (c_id, c_hook) = match sign {
            CrossingSign::Pos => (LaurentPoly::var_pow(1), LaurentPoly::var_pow(-1)),
            CrossingSign::Neg => (LaurentPoly::var_pow(-1), LaurentPoly::var_pow(1)),
        };
        let mut t = Self::identity(w).scaled(&RatFunc::from_poly(c_id));
        t.add_assign(&Self::hook(w, pos).scaled(&RatFunc::from_poly(c_hook)));
        t
    }

    pub fn n_in(&self) -> u32 {
        self.n_in
    }

    pub fn n_out(&self) -> u32 {
        self.n_out
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Matching, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!((m.n_in, m.n_out), (self.n_in, self.n_out));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TlMorphism) {
        assert_eq!((self.n_in, self.n_out), (other.n_in, other.n_out));
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &RatFunc) -> TlMorphism {
        let mut t = Self::zero(self.n_in, self.n_out);
        if c.is_zero() {
            return t;
        }
        for (m, k) in &self.terms {
            t.terms.insert(m.clone(), k * c);
        }
        t
    }

    /// `self` then `other` (diagrams stacked bottom-up), with δ per loop.
    pub fn then(&self, other: &TlMorphism) -> TlMorphism {
        let mut budget = Budget::new(u64::MAX);
        self.then_budgeted(other, &mut budget).expect("unlimited budget")
    }

    /// Budget-metered composition: one unit per term pair.
    pub fn then_budgeted(&self, other: &TlMorphism, budget: &mut Budget) -> Result<TlMorphism> {
        assert_eq!(
            self.n_out, other.n_in,
            "composition width mismatch: {} vs {}",
            self.n_out, other.n_in
        );
        let mut out = Self::zero(self.n_in, other.n_out);
        let delta = delta_loop();
        let mut delta_pows: Vec<RatFunc> = vec![RatFunc::one()];
        for (m1, c1) in &self.terms {
            budget.spend(other.terms.len() as u64)?;
            for (m2, c2) in &other.terms {
                let (m, loops) = m1.glue(m2);
                while delta_pows.len() <= loops as usize {
                    let next = RatFunc::from_poly(
                        delta.pow(delta_pows.len() as u32),
                    );
                    delta_pows.push(next);
                }
                let coeff = &(c1 * c2) * &delta_pows[loops as usize];
                out.add_term(m, coeff);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &TlMorphism) -> TlMorphism {
        let mut out = Self::zero(self.n_in + other.n_in, self.n_out + other.n_out);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.tensor(m2), c1 * c2);
            }
        }
        out
    }

    /// Coefficient-wise bar involution `A ↦ A⁻¹` (matchings untouched).
    pub fn bar(&self) -> TlMorphism {
        TlMorphism {
            n_in: self.n_in,
            n_out: self.n_out,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.bar())).collect(),
        }
    }

    /// Markov trace of an `n → n` morphism: close each strand around to the
    /// right and count loops.
    pub fn markov_trace(&self) -> RatFunc {
        assert_eq!(self.n_in, self.n_out);
        let n = self.n_in;
        let delta = delta_loop();
        let mut total = RatFunc::zero();
        for (m, c) in &self.terms {
            let mut seen = vec![false; (2 * n) as usize];
            let mut loops = 0u32;
            for start in 0..(2 * n) {
                if seen[start as usize] {
                    continue;
                }
                loops += 1;
                let mut p = start;
                loop {
                    seen[p as usize] = true;
                    let q = m.partner[p as usize];
                    seen[q as usize] = true;
                    // Closure arc: bottom i ↔ top i.
                    let r = if q < n { q + n } else { q - n };
                    p = r;
                    if p == start {
                        break;
                    }
                }
            }
            total += &(c * &RatFunc::from_poly(delta.pow(loops)));
        }
        total
    }

    /// The scalar of a `0 → 0` morphism.
    pub fn scalar(&self) -> RatFunc {
        assert_eq!((self.n_in, self.n_out), (0, 0));
        match self.terms.iter().next() {
            None => RatFunc::zero(),
            Some((_, c)) => c.clone(),
        }
    }
}

/// Shared memo for Jones–Wenzl projectors.
#[derive(Default)]
pub struct JwCache {
    map: RwLock<HashMap<u32, Arc<TlMorphism>>>,
}

impl JwCache {
    pub fn new() -> Self {
        Self::default()
    }
}

/// The Jones–Wenzl projector `P_n: n → n`, by the Wenzl recursion
/// `P_n = P_{n−1}⊗1 + ([n−1]/[n]) · (P_{n−1}⊗1) e_{n−1} (P_{n−1}⊗1)`.
///
/// `P_n` is the unique idempotent killed by every cap and cup; its closure
/// is `Δ_n = (−1)ⁿ[n+1]`.
pub fn jones_wenzl(cache: &JwCache, n: u32) -> Arc<TlMorphism> {
    if let Some(p) = cache.map.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let result = if n == 0 {
        Arc::new(TlMorphism::identity(0))
    } else if n == 1 {
        Arc::new(TlMorphism::identity(1))
    } else {
        let prev = jones_wenzl(cache, n - 1);
        let wide = prev.tensor(&TlMorphism::identity(1));
        let coeff = RatFunc::new(quantum_int(n - 1), quantum_int(n))
            .expect("[n] is nonzero");
        let hooked = wide
            .then(&TlMorphism::hook(n, n - 2))
            .then(&wide)
            .scaled(&coeff);
        let mut p = wide;
        p.add_assign(&hooked);
        Arc::new(p)
    };
    cache
        .map
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&result));
    result
}

/// `id_left ⊗ m ⊗ id_right`.
fn padded(m: &TlMorphism, left: u32, right: u32) -> TlMorphism {
    let mut out = TlMorphism::identity(left).tensor(m);
    if right > 0 {
        out = out.tensor(&TlMorphism::identity(right));
    }
    out
}

/// Brute-force evaluation of a closed colored network: every cable of color
/// `c` becomes `c` parallel strands through a Jones–Wenzl projector (one
/// projector per network edge), every node becomes nested caps/cups splitting
/// the strands three ways, and every cable crossing becomes the full grid of
/// elementary Kauffman crossings. The result is the single-factor value
/// `s(A)`; the balanced pair value is `s · bar(s)`.
///
/// Inadmissible node triples make the value exactly zero (the projector on
/// one leg is killed by the forced turn-back), short-circuited here.
///
/// Fails with [`Error::BudgetExceeded`] once `budget` pairwise matching
/// compositions have been performed.
pub fn oracle_evaluate(jw: &JwCache, net: &ColoredNetwork, budget: u64) -> Result<RatFunc> {
    let mut meter = Budget::new(budget);
    let value = oracle_run(jw, net, &mut meter)?;
    Ok(value)
}

fn oracle_run(jw: &JwCache, net: &ColoredNetwork, meter: &mut Budget) -> Result<RatFunc> {
    for node in net.nodes() {
        if !crate::recoupling::admissible(node.colors[0], node.colors[1], node.colors[2]) {
            return Ok(RatFunc::zero());
        }
    }

    // Running state: the whole picture so far, as a morphism 0 → width.
    let mut state = TlMorphism::identity(0);
    // Strand widths of the currently open cables, left to right.
    let mut widths: Vec<u32> = Vec::new();
    // One Jones–Wenzl projector per network edge, inserted on the first
    // cable that materializes the edge.
    let mut edge_projected = vec![false; net.num_edges()];

    let apply = |state: &mut TlMorphism, gen: &TlMorphism, meter: &mut Budget| -> Result<()> {
        *state = state.then_budgeted(gen, meter)?;
        Ok(())
    };

    for (idx, slice) in net.slices().iter().enumerate() {
        let created = net.created_edges(idx);
        match *slice {
            NetSlice::Cup { at, .. } => {
                let edge = created[0];
                let w = net.edge_color(edge);
                let s: u32 = widths[..at].iter().sum();
                let total: u32 = widths.iter().sum();
                for k in 0..w {
                    apply(&mut state, &TlMorphism::cup(total + 2 * k, s + k), meter)?;
                }
                widths.insert(at, w);
                widths.insert(at + 1, w);
                if w > 0 && !edge_projected[edge] {
                    edge_projected[edge] = true;
                    let total: u32 = widths.iter().sum();
                    let p = jones_wenzl(jw, w);
                    apply(&mut state, &padded(&p, s, total - s - w), meter)?;
                }
            }
            NetSlice::Cap { at } => {
                let w = widths[at];
                assert_eq!(w, widths[at + 1], "cap joining unequal cable widths");
                let s: u32 = widths[..at].iter().sum();
                let total: u32 = widths.iter().sum();
                for k in 0..w {
                    apply(
                        &mut state,
                        &TlMorphism::cap(total - 2 * k - 2, s + w - 1 - k),
                        meter,
                    )?;
                }
                widths.remove(at);
                widths.remove(at);
            }
            NetSlice::Cross { at, sign } => {
                let wa = widths[at];
                let wb = widths[at + 1];
                let s: u32 = widths[..at].iter().sum();
                let total: u32 = widths.iter().sum();
                for i in 0..wa {
                    for j in 0..wb {
                        apply(
                            &mut state,
                            &TlMorphism::crossing(total, s + wa - 1 - i + j, sign),
                            meter,
                        )?;
                    }
                }
                widths.swap(at, at + 1);
            }
            NetSlice::Node { at, n_in, .. } => {
                let n_in = n_in as usize;
                let s: u32 = widths[..at].iter().sum();
                // Gather the three leg colors in node convention: inputs
                // left→right, then outputs left→right.
                let ins: Vec<u32> = widths[at..at + n_in].to_vec();
                let outs: Vec<u32> = created.iter().map(|&e| net.edge_color(e)).collect();
                let legs: Vec<u32> = ins.iter().chain(outs.iter()).copied().collect();
                debug_assert_eq!(legs.len(), 3);
                let total: u32 = widths.iter().sum();
                match n_in {
                    3 => {
                        let (a, b, c) = (legs[0], legs[1], legs[2]);
                        let m = (a + b - c) / 2;
                        let n = (b + c - a) / 2;
                        let p = (c + a - b) / 2;
                        let mut t = total;
                        for k in 0..m {
                            apply(&mut state, &TlMorphism::cap(t - 2, s + a - 1 - k), meter)?;
                            t -= 2;
                        }
                        for k in 0..n {
                            apply(&mut state, &TlMorphism::cap(t - 2, s + p + n - 1 - k), meter)?;
                            t -= 2;
                        }
                        for k in 0..p {
                            apply(&mut state, &TlMorphism::cap(t - 2, s + p - 1 - k), meter)?;
                            t -= 2;
                        }
                    }
                    2 => {
                        let (a, b, c) = (legs[0], legs[1], legs[2]);
                        let m = (a + b - c) / 2;
                        let mut t = total;
                        for k in 0..m {
                            apply(&mut state, &TlMorphism::cap(t - 2, s + a - 1 - k), meter)?;
                            t -= 2;
                        }
                    }
                    1 => {
                        let (c, a, b) = (legs[0], legs[1], legs[2]);
                        let m = (a + b - c) / 2;
                        let p = (c + a - b) / 2;
                        for k in 0..m {
                            apply(&mut state, &TlMorphism::cup(total + 2 * k, s + p + k), meter)?;
                        }
                    }
                    0 => {
                        let (a, b, c) = (legs[0], legs[1], legs[2]);
                        let m = (a + b - c) / 2;
                        let n = (b + c - a) / 2;
                        let p = (c + a - b) / 2;
                        let mut t = total;
                        for k in 0..p {
                            apply(&mut state, &TlMorphism::cup(t, s + k), meter)?;
                            t += 2;
                        }
                        for k in 0..m {
                            apply(&mut state, &TlMorphism::cup(t, s + p + k), meter)?;
                            t += 2;
                        }
                        for k in 0..n {
                            apply(&mut state, &TlMorphism::cup(t, s + p + 2 * m + k), meter)?;
                            t += 2;
                        }
                    }
                    _ => unreachable!("node valence is three"),
                }
                // Replace consumed cable widths by the created ones.
                for _ in 0..n_in {
                    widths.remove(at);
                }
                for (k, &w) in outs.iter().enumerate() {
                    widths.insert(at + k, w);
                }
                // Projectors on freshly created edges.
                for (k, &edge) in created.iter().enumerate() {
                    let w = net.edge_color(edge);
                    if w == 0 || edge_projected[edge] {
                        continue;
                    }
                    edge_projected[edge] = true;
                    let before: u32 = widths[..at + k].iter().sum();
                    let after: u32 = widths[at + k + 1..].iter().sum();
                    let p = jones_wenzl(jw, w);
                    apply(&mut state, &padded(&p, before, after), meter)?;
                }
            }
            NetSlice::StubStart { at } => {
                widths.insert(at, 0);
            }
            NetSlice::StubEnd { at } => {
                assert_eq!(widths[at], 0, "stub terminating a colored cable");
                widths.remove(at);
            }
        }
    }

    assert!(widths.is_empty(), "network left open cables");
    Ok(state.scalar())
}
