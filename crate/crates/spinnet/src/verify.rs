//! Deterministic self-check suites behind the CLI `verify` subcommand.
//!
//! Each suite runs a fixed list of named checks and reports one
//! [`CheckResult`] per check. Every enumeration order is fixed, the one
//! randomized generator uses a hard-coded seed, and all arithmetic is exact,
//! so a suite's output is byte-identical across runs and thread counts.
//!
//! `max_label` uniformly caps every label loop. Each check also has its own
//! built-in ceiling — the full range of the check — so a small cap gives a
//! quick smoke pass and a large cap saturates at the intended ladder:
//!
//! * `tl` — the oracle ladder: closed forms (`Δ`, `θ`, `Tet`, six-j) against
//!   the brute-force Temperley–Lieb evaluator. Ceilings 6/4/3/2.
//! * `recoupling` — the identity suite: θ symmetry (≤ 6), six-j
//!   orthogonality (≤ 4), the pentagon (≤ 3), bar-invariance, twist and
//!   braiding-phase relations (≤ 8).
//! * `vertices` — turning, tree independence, braiding/curl absorption, and
//!   leg extension, all probed as balanced-pair matrices (≤ 2).
//! * `invariants` — evaluator-vs-oracle corpora (≥ 50 planar and ≥ 10
//!   crossing networks at the default cap), Reidemeister move pairs, and the
//!   graph-invariant propositions: Eulerian vanishing, mirror invariance,
//!   the bracket product identity, multiplicativity, framing robustness.

use crate::diagram::{
    eval_pair, eval_planar, eval_single, eval_single_oriented, ColoredNetwork, CrossingSign,
    FactorOrientation, NetSlice, SlicedDiagram,
};
use crate::invariant::{
    bracket, disjoint_union, g_invariant, wedge_at_vertex, EmbeddedGraphDiagram,
};
use crate::qpoly::{delta_loop, quantum_int, LaurentPoly, RatFunc};
use crate::recoupling::{
    admissible, admissible_range, delta, delta_poly, lambda, six_j, tet, theta, twist, Caches,
};
use crate::tl::{jones_wenzl, oracle_evaluate, JwCache, DEFAULT_ORACLE_BUDGET};
use crate::vertices::{
    bc_four_vertex, extend, n_vertex, pair_against, probe_balanced, rotate, tree_basis,
    NVertexExpansion, TreeShape, VertexSpec, VertexTerm,
};
use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A verification suite name, as accepted by `verify --suite`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Suite {
    Qpoly,
    Tl,
    Recoupling,
    Vertices,
    Invariants,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "qpoly" => Suite::Qpoly,
            "tl" => Suite::Tl,
            "recoupling" => Suite::Recoupling,
            "vertices" => Suite::Vertices,
            "invariants" => Suite::Invariants,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qpoly => "qpoly",
            Suite::Tl => "tl",
            Suite::Recoupling => "recoupling",
            Suite::Vertices => "vertices",
            Suite::Invariants => "invariants",
            Suite::All => "all",
        }
    }
}

/// Outcome of one named check: how many cases ran and, on failure, what the
/// first offending case was.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

/// Run one suite (or all of them) with every label loop capped at
/// `max_label` and each check's own ceiling.
pub fn run_suite(suite: Suite, max_label: u32) -> Vec<CheckResult> {
    match suite {
        Suite::Qpoly => suite_qpoly(max_label),
        Suite::Tl => suite_tl(max_label),
        Suite::Recoupling => suite_recoupling(max_label),
        Suite::Vertices => suite_vertices(max_label),
        Suite::Invariants => suite_invariants(max_label),
        Suite::All => {
            let mut out = suite_qpoly(max_label);
            out.extend(suite_tl(max_label));
            out.extend(suite_recoupling(max_label));
            out.extend(suite_vertices(max_label));
            out.extend(suite_invariants(max_label));
            out
        }
    }
}

/// Run a single check by suite and name; `None` if no such check.
pub fn run_named(suite: Suite, name: &str, max_label: u32) -> Option<CheckResult> {
    run_suite(suite, max_label).into_iter().find(|r| r.name == name)
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

/// Fixed-format report, one line per check plus a summary line.
pub fn render_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        if r.passed {
            out.push_str(&format!("ok   {}::{} ({} cases)\n", r.suite, r.name, r.cases));
        } else {
            out.push_str(&format!(
                "FAIL {}::{} ({} cases) — {}\n",
                r.suite, r.name, r.cases, r.detail
            ));
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!(
        "{} checks, {} failed\n",
        results.len(),
        failed
    ));
    out
}

struct Checker {
    suite: &'static str,
    results: Vec<CheckResult>,
}

impl Checker {
    fn new(suite: &'static str) -> Self {
        Checker { suite, results: Vec::new() }
    }

    /// Run one check; the body counts cases and reports the first failure.
    fn run(&mut self, name: &'static str, body: impl FnOnce(&mut usize) -> Result<(), String>) {
        let mut cases = 0usize;
        let outcome = body(&mut cases);
        self.results.push(CheckResult {
            suite: self.suite,
            name,
            cases,
            passed: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
        });
    }
}

fn expect_rf(cases: &mut usize, got: &RatFunc, want: &RatFunc, what: &str) -> Result<(), String> {
    *cases += 1;
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: {} ≠ {}", got.to_text(), want.to_text()))
    }
}

fn expect_poly(
    cases: &mut usize,
    got: &LaurentPoly,
    want: &LaurentPoly,
    what: &str,
) -> Result<(), String> {
    *cases += 1;
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: {} ≠ {}", got.to_text(), want.to_text()))
    }
}

// ---------------------------------------------------------------------------
// qpoly
// ---------------------------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let exp = rng.gen_range(-6i64..=6);
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=9);
        p += &LaurentPoly::monomial(exp, BigRational::new(BigInt::from(num), BigInt::from(den)));
    }
    p
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> LaurentPoly {
    loop {
        let p = random_poly(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn suite_qpoly(max_label: u32) -> Vec<CheckResult> {
    let mut c = Checker::new("qpoly");

    c.run("bar-involution-and-ring-maps", |cases| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_FFEE);
        for _ in 0..40 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            expect_poly(cases, &p.bar().bar(), &p, "bar is an involution")?;
            expect_poly(cases, &(&p * &q).bar(), &(&p.bar() * &q.bar()), "bar(pq)")?;
            expect_poly(cases, &(&p + &q).bar(), &(&p.bar() + &q.bar()), "bar(p+q)")?;
        }
        Ok(())
    });

    c.run("quantum-integer-recurrence", |cases| {
        let hi = 16.min(4 * max_label.max(1) + 8);
        for n in 1..hi {
            let lhs = quantum_int(n + 1);
            let rhs = &(&quantum_int(2) * &quantum_int(n)) - &quantum_int(n - 1);
            expect_poly(cases, &lhs, &rhs, &format!("[{}] recurrence", n + 1))?;
            expect_poly(cases, &quantum_int(n).bar(), &quantum_int(n), "[n] bar-invariant")?;
        }
        Ok(())
    });

    c.run("rational-canonical-cancellation", |cases| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0DD_BA11);
        for _ in 0..25 {
            let p = random_nonzero(&mut rng);
            let q = random_nonzero(&mut rng);
            let r = random_nonzero(&mut rng);
            let plain = RatFunc::new(p.clone(), q.clone()).expect("nonzero");
            let padded = RatFunc::new(&p * &r, &q * &r).expect("nonzero");
            expect_rf(cases, &padded, &plain, "common factors cancel")?;
            let x = RatFunc::new(p, q).expect("nonzero");
            let prod = &x * &x.inv().expect("nonzero");
            expect_rf(cases, &prod, &RatFunc::one(), "x · x⁻¹")?;
        }
        Ok(())
    });

    c.run("loop-value-and-quantum-dimension", |cases| {
        let own = delta_loop();
        let mut want = LaurentPoly::zero();
        want -= &LaurentPoly::var_pow(2);
        want -= &LaurentPoly::var_pow(-2);
        expect_poly(cases, &own, &want, "δ = −A² − A⁻²")?;
        let hi = 10.min(4 * max_label.max(1) + 4);
        for n in 0..=hi {
            let dim = delta_poly(n);
            let signed = if n % 2 == 0 {
                quantum_int(n + 1)
            } else {
                -&quantum_int(n + 1)
            };
            expect_poly(cases, &dim, &signed, &format!("Δ_{n} = (−1)^{n}[{}]", n + 1))?;
        }
        Ok(())
    });

    c.results
}

// ---------------------------------------------------------------------------
// tl — the oracle ladder
// ---------------------------------------------------------------------------

fn loop_net(color: u32) -> ColoredNetwork {
    ColoredNetwork::new(vec![NetSlice::Cup { at: 0, color }, NetSlice::Cap { at: 0 }])
        .expect("valid loop")
}

fn theta_net(a: u32, b: u32, c: u32) -> ColoredNetwork {
    ColoredNetwork::new(vec![
        NetSlice::Cup { at: 0, color: a },
        NetSlice::Node { at: 1, n_in: 1, out_colors: vec![b, c] },
        NetSlice::Node { at: 0, n_in: 2, out_colors: vec![c] },
        NetSlice::Cap { at: 0 },
    ])
    .expect("valid theta")
}

/// Tetrahedron with vertex triples {a,b,f}, {a,d,e}, {b,c,e}, {c,d,f}.
fn tet_net(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> ColoredNetwork {
    ColoredNetwork::new(vec![
        NetSlice::Node { at: 0, n_in: 0, out_colors: vec![a, b, f] },
        NetSlice::Node { at: 0, n_in: 1, out_colors: vec![d, e] },
        NetSlice::Node { at: 1, n_in: 2, out_colors: vec![c] },
        NetSlice::Node { at: 0, n_in: 3, out_colors: vec![] },
    ])
    .expect("valid tetrahedron")
}

fn oracle(jw: &JwCache, net: &ColoredNetwork) -> Result<RatFunc, String> {
    oracle_evaluate(jw, net, DEFAULT_ORACLE_BUDGET).map_err(|e| format!("oracle: {e}"))
}

fn suite_tl(max_label: u32) -> Vec<CheckResult> {
    let mut c = Checker::new("tl");
    let jw = JwCache::new();
    let caches = Caches::new();

    c.run("jones-wenzl-closure-is-delta", |cases| {
        let hi = 6.min(3 * max_label);
        for n in 0..=hi {
            let closed = jones_wenzl(&jw, n).markov_trace();
            expect_rf(cases, &closed, &delta(n), &format!("closure of P_{n}"))?;
        }
        Ok(())
    });

    c.run("theta-closed-form-vs-oracle", |cases| {
        let hi = 4.min(2 * max_label);
        for a in 0..=hi {
            for b in a..=hi {
                for cc in b..=hi {
                    if !admissible(a, b, cc) {
                        continue;
                    }
                    let o = oracle(&jw, &theta_net(a, b, cc))?;
                    expect_rf(cases, &theta(&caches, a, b, cc), &o, &format!("θ({a},{b},{cc})"))?;
                }
            }
        }
        Ok(())
    });

    c.run("tet-closed-form-vs-oracle", |cases| {
        let hi = 3.min(max_label);
        for a in 0..=hi {
            for b in 0..=hi {
                for e in 0..=hi {
                    for cc in 0..=hi {
                        for d in 0..=hi {
                            for f in 0..=hi {
                                if !(admissible(a, d, e)
                                    && admissible(b, cc, e)
                                    && admissible(a, b, f)
                                    && admissible(cc, d, f))
                                {
                                    continue;
                                }
                                let o = oracle(&jw, &tet_net(a, b, e, cc, d, f))?;
                                expect_rf(
                                    cases,
                                    &tet(&caches, a, b, e, cc, d, f),
                                    &o,
                                    &format!("tet({a},{b},{e},{cc},{d},{f})"),
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });

    c.run("six-j-defined-by-oracle-pairings", |cases| {
        // The recoupling coefficient is the glued H-against-I tetrahedron
        // over the I-tree pairing norm; recompute every ingredient with the
        // brute-force evaluator.
        let hi = 2.min(max_label);
        for a in 0..=hi {
            for b in 0..=hi {
                for e in admissible_range(a, b) {
                    for cc in 0..=hi {
                        for d in 0..=hi {
                            if !admissible(e, cc, d) {
                                continue;
                            }
                            for f in admissible_range(b, cc) {
                                if !admissible(a, d, f) {
                                    continue;
                                }
                                let glued = oracle(&jw, &tet_net(a, d, e, cc, b, f))?;
                                let norm = &oracle(&jw, &theta_net(a, d, f))?
                                    * &oracle(&jw, &theta_net(b, cc, f))?;
                                let dim = oracle(&jw, &loop_net(f))?;
                                let from_oracle = &(&glued * &dim) / &norm;
                                expect_rf(
                                    cases,
                                    &six_j(&caches, a, b, e, cc, d, f),
                                    &from_oracle,
                                    &format!("six-j({a},{b},{e};{cc},{d},{f})"),
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });

    c.results
}

// ---------------------------------------------------------------------------
// recoupling — the identity suite
// ---------------------------------------------------------------------------

fn suite_recoupling(max_label: u32) -> Vec<CheckResult> {
    let mut c = Checker::new("recoupling");
    let caches = Caches::new();

    c.run("theta-permutation-symmetry", |cases| {
        let hi = 6.min(3 * max_label);
        for a in 0..=hi {
            for b in 0..=hi {
                for cc in 0..=hi {
                    if !admissible(a, b, cc) {
                        continue;
                    }
                    let base = theta(&caches, a, b, cc);
                    for (x, y, z) in
                        [(a, cc, b), (b, a, cc), (b, cc, a), (cc, a, b), (cc, b, a)]
                    {
                        expect_rf(
                            cases,
                            &theta(&caches, x, y, z),
                            &base,
                            &format!("θ({x},{y},{z}) vs θ({a},{b},{cc})"),
                        )?;
                    }
                    expect_rf(cases, &base.bar(), &base, &format!("θ({a},{b},{cc}) bar"))?;
                }
            }
        }
        Ok(())
    });

    c.run("six-j-orthogonality", |cases| {
        // Changing basis H→I and back is the identity.
        let hi = 4.min(max_label + 1);
        for a in 0..=hi {
            for b in 0..=hi {
                for cc in 0..=hi {
                    for d in 0..=hi {
                        let es: Vec<u32> = admissible_range(a, b)
                            .filter(|&e| admissible(e, cc, d))
                            .collect();
                        for &e in &es {
                            for &ep in &es {
                                let mut sum = RatFunc::zero();
                                for f in admissible_range(b, cc) {
                                    if !admissible(a, d, f) {
                                        continue;
                                    }
                                    let fwd = six_j(&caches, a, b, e, cc, d, f);
                                    let glued_back = tet(&caches, a, d, ep, cc, b, f);
                                    let back = &(&glued_back * &delta(ep))
                                        / &(&theta(&caches, a, b, ep)
                                            * &theta(&caches, cc, d, ep));
                                    sum += &(&fwd * &back);
                                }
                                let want =
                                    if e == ep { RatFunc::one() } else { RatFunc::zero() };
                                expect_rf(
                                    cases,
                                    &sum,
                                    &want,
                                    &format!("orthogonality ({a},{b},{cc},{d}) e={e} e'={ep}"),
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });

    c.run("pentagon", |cases| {
        // Biedenharn–Elliott: two recoupling routes between the same trees.
        let hi = 3.min(max_label);
        for a in 0..=hi {
            for b in 0..=hi {
                for cc in 0..=hi {
                    for d in 0..=hi {
                        for g in 0..=hi {
                            for e in admissible_range(a, b) {
                                for f in admissible_range(e, cc) {
                                    if !admissible(f, d, g) {
                                        continue;
                                    }
                                    for x in admissible_range(cc, d) {
                                        for y in admissible_range(b, x) {
                                            if !admissible(a, y, g) {
                                                continue;
                                            }
                                            let lhs = &six_j(&caches, e, cc, f, d, g, x)
                                                * &six_j(&caches, a, b, e, x, g, y);
                                            let mut rhs = RatFunc::zero();
                                            for t in admissible_range(b, cc) {
                                                rhs += &(&(&six_j(&caches, a, b, e, cc, f, t)
                                                    * &six_j(&caches, a, t, f, d, g, y))
                                                    * &six_j(&caches, b, cc, t, d, y, x));
                                            }
                                            expect_rf(
                                                cases,
                                                &lhs,
                                                &rhs,
                                                &format!(
                                                    "pentagon ({a},{b},{cc},{d};{g}) e={e} f={f} x={x} y={y}"
                                                ),
                                            )?;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });

    c.run("bar-invariance-of-closed-forms", |cases| {
        let dhi = 8.min(4 * max_label);
        for n in 0..=dhi {
            let v = delta(n);
            expect_rf(cases, &v.bar(), &v, &format!("Δ_{n}"))?;
        }
        let thi = 3.min(max_label);
        for a in 0..=thi {
            for b in 0..=thi {
                for e in 0..=thi {
                    for cc in 0..=thi {
                        for d in 0..=thi {
                            for f in 0..=thi {
                                let v = tet(&caches, a, b, e, cc, d, f);
                                if v.is_zero() {
                                    continue;
                                }
                                expect_rf(
                                    cases,
                                    &v.bar(),
                                    &v,
                                    &format!("tet({a},{b},{e},{cc},{d},{f})"),
                                )?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });

    c.run("twist-and-braiding-phases", |cases| {
        let hi = 8.min(4 * max_label);
        for n in 0..=hi {
            let t = twist(n);
            let prod = &t * &t.bar();
            expect_rf(cases, &prod, &RatFunc::one(), &format!("twist({n})·bar"))?;
        }
        let lhi = 4.min(2 * max_label);
        for a in 0..=lhi {
            for b in 0..=lhi {
                for cc in admissible_range(a, b) {
                    let l = lambda(a, b, cc);
                    let unit = &l * &l.bar();
                    expect_rf(cases, &unit, &RatFunc::one(), &format!("λ({a},{b},{cc})·bar"))?;
                    let lhs = &l * &l;
                    let rhs = &twist(cc) / &(&twist(a) * &twist(b));
                    expect_rf(cases, &lhs, &rhs, &format!("λ²({a},{b},{cc})"))?;
                }
            }
        }
        Ok(())
    });

    c.results
}

// ---------------------------------------------------------------------------
// vertices — turning, tree independence, absorption, extension
// ---------------------------------------------------------------------------

/// All color tuples of the given length with entries ≤ `hi`, lexicographic.
fn color_tuples(len: usize, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for c in 0..=hi {
                let mut t2 = t.clone();
                t2.push(c);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Compare two expansions on the same boundary as balanced-pair operators:
/// equal probe matrices over the given bra elements.
fn probes_match(
    caches: &Caches,
    left: &NVertexExpansion,
    right: &NVertexExpansion,
    probes: &[crate::vertices::TreeBasisElement],
    cases: &mut usize,
    what: &str,
) -> Result<(), String> {
    for b1 in probes {
        for b2 in probes {
            let l = probe_balanced(caches, left, b1, b2)
                .map_err(|e| format!("{what}: {e}"))?;
            let r = probe_balanced(caches, right, b1, b2)
                .map_err(|e| format!("{what}: {e}"))?;
            expect_rf(
                cases,
                &l,
                &r,
                &format!("{what} probe {:?}/{:?}", b1.labels, b2.labels),
            )?;
        }
    }
    Ok(())
}

fn suite_vertices(max_label: u32) -> Vec<CheckResult> {
    let mut c = Checker::new("vertices");
    let caches = Caches::new();
    let hi = 2.min(max_label);

    c.run("four-vertex-turning", |cases| {
        // The 4-vertex equals its quarter-turned form, probed over the
        // bases of every 4-leg dual tree.
        for colors in color_tuples(4, hi) {
            let spec = [colors[0], colors[1], colors[2], colors[3]];
            let v = bc_four_vertex(&caches, spec).map_err(|e| e.to_string())?;
            if v.terms.is_empty() {
                continue;
            }
            for turns in [1i64, -1] {
                let turned = rotate(&v, turns);
                let direct = n_vertex(
                    &caches,
                    &VertexSpec::new(turned.spec.colors.clone()),
                    &TreeShape::caterpillar(4),
                )
                .map_err(|e| e.to_string())?;
                let mut probes = Vec::new();
                for shape in TreeShape::all(4) {
                    probes.extend(
                        tree_basis(&caches, &VertexSpec::new(turned.spec.colors.clone()), &shape)
                            .map_err(|e| e.to_string())?,
                    );
                }
                probes_match(
                    &caches,
                    &turned,
                    &direct,
                    &probes,
                    cases,
                    &format!("turning {spec:?} by {turns}"),
                )?;
            }
        }
        Ok(())
    });

    c.run("five-vertex-tree-independence", |cases| {
        let comb = TreeShape::caterpillar(5);
        let bush = TreeShape::new(5, vec![2, 1, 0]).expect("valid shape");
        let probe_shape = TreeShape::new(5, vec![1, 0, 0]).expect("valid shape");
        for colors in color_tuples(5, hi) {
            let spec = VertexSpec::new(colors.clone());
            let in_comb = n_vertex(&caches, &spec, &comb).map_err(|e| e.to_string())?;
            if in_comb.terms.is_empty() {
                continue;
            }
            let in_bush = n_vertex(&caches, &spec, &bush).map_err(|e| e.to_string())?;
            let probes = tree_basis(&caches, &spec, &probe_shape).map_err(|e| e.to_string())?;
            probes_match(
                &caches,
                &in_comb,
                &in_bush,
                &probes,
                cases,
                &format!("tree independence {colors:?}"),
            )?;
        }
        Ok(())
    });

    c.run("braiding-moves-a-leg", |cases| {
        // Braiding adjacent legs i, i+1 (either sign) turns the vertex into
        // the vertex on the transposed boundary, as a balanced operator.
        for n in [3usize, 4] {
            for colors in color_tuples(n, hi) {
                let spec = VertexSpec::new(colors.clone());
                let v = n_vertex(&caches, &spec, &TreeShape::caterpillar(n))
                    .map_err(|e| e.to_string())?;
                if v.terms.is_empty() {
                    continue;
                }
                for i in 0..n - 1 {
                    let mut swapped = colors.clone();
                    swapped.swap(i, i + 1);
                    for sign in [CrossingSign::Pos, CrossingSign::Neg] {
                        let braided = NVertexExpansion {
                            spec: VertexSpec::new(swapped.clone()),
                            terms: v
                                .terms
                                .iter()
                                .map(|t| {
                                    let mut word = t.word.clone();
                                    word.push(NetSlice::Cross { at: i, sign });
                                    VertexTerm {
                                        labels: t.labels.clone(),
                                        coeff: t.coeff.clone(),
                                        word,
                                    }
                                })
                                .collect(),
                        };
                        let direct = n_vertex(
                            &caches,
                            &VertexSpec::new(swapped.clone()),
                            &TreeShape::caterpillar(n),
                        )
                        .map_err(|e| e.to_string())?;
                        let probes =
                            tree_basis(&caches, &VertexSpec::new(swapped.clone()), &TreeShape::caterpillar(n))
                                .map_err(|e| e.to_string())?;
                        probes_match(
                            &caches,
                            &braided,
                            &direct,
                            &probes,
                            cases,
                            &format!("braid {colors:?} at {i} {sign:?}"),
                        )?;
                    }
                }
            }
        }
        Ok(())
    });

    c.run("curl-absorption", |cases| {
        // A curl on any leg (either sign) leaves the balanced operator
        // unchanged: the twist phases of the two factors cancel.
        for n in [3usize, 4] {
            for colors in color_tuples(n, hi) {
                let spec = VertexSpec::new(colors.clone());
                let v = n_vertex(&caches, &spec, &TreeShape::caterpillar(n))
                    .map_err(|e| e.to_string())?;
                if v.terms.is_empty() {
                    continue;
                }
                let probes = tree_basis(&caches, &spec, &TreeShape::caterpillar(n))
                    .map_err(|e| e.to_string())?;
                for i in 0..n {
                    for sign in [CrossingSign::Pos, CrossingSign::Neg] {
                        let curled = NVertexExpansion {
                            spec: spec.clone(),
                            terms: v
                                .terms
                                .iter()
                                .map(|t| {
                                    let mut word = t.word.clone();
                                    word.push(NetSlice::Cup { at: i + 1, color: colors[i] });
                                    word.push(NetSlice::Cross { at: i, sign });
                                    word.push(NetSlice::Cap { at: i + 1 });
                                    VertexTerm {
                                        labels: t.labels.clone(),
                                        coeff: t.coeff.clone(),
                                        word,
                                    }
                                })
                                .collect(),
                        };
                        probes_match(
                            &caches,
                            &curled,
                            &v,
                            &probes,
                            cases,
                            &format!("curl {colors:?} leg {i} {sign:?}"),
                        )?;
                    }
                }
            }
        }
        Ok(())
    });

    c.run("leg-extension", |cases| {
        // Splitting a boundary leg through a summed channel grows an
        // n-vertex into the direct (n+1)-vertex.
        let others_list: [&[u32]; 6] =
            [&[1, 1, 1], &[1, 2, 1], &[2, 2, 2], &[0, 1, 1], &[2, 1, 1], &[2, 0, 2]];
        let splits = [(1u32, 1u32), (2, 1), (2, 2)];
        for others in others_list {
            let others: Vec<u32> = others.iter().map(|&x| x.min(hi.max(1))).collect();
            for leg in [0usize, 2] {
                for (i, j) in splits {
                    let (i, j) = (i.min(hi.max(1)), j.min(hi.max(1)));
                    let grown = extend(&caches, &others, leg, &TreeShape::caterpillar(4), i, j)
                        .map_err(|e| e.to_string())?;
                    let mut full = others.clone();
                    full.splice(leg..leg, [i, j]);
                    let spec = VertexSpec::new(full);
                    let direct = n_vertex(&caches, &spec, &TreeShape::caterpillar(5))
                        .map_err(|e| e.to_string())?;
                    if direct.terms.is_empty() {
                        continue;
                    }
                    let probes = tree_basis(&caches, &spec, &TreeShape::caterpillar(5))
                        .map_err(|e| e.to_string())?;
                    probes_match(
                        &caches,
                        &grown,
                        &direct,
                        &probes,
                        cases,
                        &format!("extend {others:?} at {leg} into ({i},{j})"),
                    )?;
                }
            }
        }
        // Degenerate arities: growing the 1-leg vertex gives the 2-vertex.
        for j in 1..=hi.max(1) {
            let grown = extend(&caches, &[], 0, &TreeShape::caterpillar(1), j, j)
                .map_err(|e| e.to_string())?;
            let spec = VertexSpec::new(vec![j, j]);
            let direct =
                n_vertex(&caches, &spec, &TreeShape::caterpillar(2)).map_err(|e| e.to_string())?;
            let probes =
                tree_basis(&caches, &spec, &TreeShape::caterpillar(2)).map_err(|e| e.to_string())?;
            probes_match(&caches, &grown, &direct, &probes, cases, &format!("extend ∅ into ({j},{j})"))?;
        }
        Ok(())
    });

    c.run("low-arity-conventions", |cases| {
        // 0 legs: scalar 1 (no expansion needed); 1 leg: a color-0 stub
        // only; 2 legs: the cup weighted by 1/Δ.
        *cases += 1;
        let one_leg = n_vertex(&caches, &VertexSpec::new(vec![0]), &TreeShape::caterpillar(1))
            .map_err(|e| e.to_string())?;
        if one_leg.terms.len() != 1 || !one_leg.terms[0].coeff.is_one() {
            return Err("1-vertex on color 0 is a single unit-weight stub".into());
        }
        for j in 1..=hi.max(1) {
            *cases += 1;
            let v = n_vertex(&caches, &VertexSpec::new(vec![j]), &TreeShape::caterpillar(1))
                .map_err(|e| e.to_string())?;
            if !v.terms.is_empty() {
                return Err(format!("1-vertex on color {j} must vanish"));
            }
            let two = n_vertex(&caches, &VertexSpec::new(vec![j, j]), &TreeShape::caterpillar(2))
                .map_err(|e| e.to_string())?;
            let want = &RatFunc::one() / &delta(j);
            expect_rf(
                cases,
                &two.terms[0].coeff,
                &want,
                &format!("2-vertex coefficient at color {j}"),
            )?;
        }
        Ok(())
    });

    c.run("self-pairing-normalization", |cases| {
        // In a single factor the vertex pairs to 1 against every labeling
        // of its own tree.
        for colors in [vec![1u32, 1, 2], vec![2, 2, 2, 2], vec![1, 2, 2, 1]] {
            let colors: Vec<u32> = colors.into_iter().map(|x| x.min(hi.max(1))).collect();
            let spec = VertexSpec::new(colors.clone());
            let shape = TreeShape::caterpillar(spec.arity());
            let v = n_vertex(&caches, &spec, &shape).map_err(|e| e.to_string())?;
            for b in tree_basis(&caches, &spec, &shape).map_err(|e| e.to_string())? {
                let p = pair_against(&caches, &v, &b).map_err(|e| e.to_string())?;
                expect_rf(
                    cases,
                    &p,
                    &RatFunc::one(),
                    &format!("self-pairing {colors:?} labels {:?}", b.labels),
                )?;
            }
        }
        Ok(())
    });

    c.results
}

// ---------------------------------------------------------------------------
// invariants — evaluators vs oracle, and the graph-invariant propositions
// ---------------------------------------------------------------------------

/// Closed cycle through one 2-valent vertex.
const VERTEX_UNKNOT: &str = "cup 0\nvertex 0 in=2 out=0\n";
const VERTEX_UNKNOT_2: &str = "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
const VERTEX_UNKNOT_3: &str =
    "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
/// Curl added on the cycle above (framing change only).
const VERTEX_UNKNOT_CURL_POS: &str = "cup 0\ncross+ 0\nvertex 0 in=2 out=0\n";
const VERTEX_UNKNOT_CURL_NEG: &str = "cup 0\ncross- 0\nvertex 0 in=2 out=0\n";
/// Trefoil braid closure with one / two 2-valent vertices on the strand.
const VERTEX_TREFOIL: &str =
    "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";
const VERTEX_TREFOIL_2: &str = "cup 0\ncup 1\ncross+ 0\nvertex 0 in=1 out=1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";
/// Hopf link as two cycles, one or two vertices per component.
const DECORATED_HOPF: &str = "cup 0\ncup 1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\nvertex 1 in=1 out=1\ncap 1\ncap 0\n";
const DECORATED_HOPF_3: &str = "cup 0\ncup 1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\nvertex 0 in=1 out=1\nvertex 1 in=1 out=1\ncap 1\ncap 0\n";
/// Figure-eight braid closure with one 2-valent vertex.
const VERTEX_FIGURE_EIGHT: &str = "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\nvertex 0 in=1 out=1\ncap 2\ncap 1\ncap 0\n";
/// Theta graph (two trivalent vertices), plain and with an extra 2-valent
/// vertex on one edge.
const THETA: &str = "vertex 0 in=0 out=3\nvertex 0 in=3 out=0\n";
const THETA_DECORATED: &str = "vertex 0 in=0 out=3\nvertex 1 in=1 out=1\nvertex 0 in=3 out=0\n";

fn graph_diagram(text: &str) -> Result<EmbeddedGraphDiagram, String> {
    EmbeddedGraphDiagram::new(SlicedDiagram::parse_text(text).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())
}

fn suite_invariants(max_label: u32) -> Vec<CheckResult> {
    let mut c = Checker::new("invariants");
    let caches = Caches::new();
    let jw = JwCache::new();
    let hi = 2.min(max_label);

    c.run("planar-corpus-vs-oracle", |cases| {
        // Closed crossing-free networks: loops, thetas, tetrahedra, and
        // glued pairs of labeled trees on up to four legs. Both the planar
        // rewriter and the crossing evaluator must match the brute force.
        let mut nets: Vec<(String, ColoredNetwork)> = Vec::new();
        for color in 0..=3.min(max_label + 1) {
            nets.push((format!("loop {color}"), loop_net(color)));
        }
        let thi = 3.min(max_label + 1);
        for a in 0..=thi {
            for b in a..=thi {
                for cc in b..=thi {
                    if admissible(a, b, cc) {
                        nets.push((format!("theta {a},{b},{cc}"), theta_net(a, b, cc)));
                    }
                }
            }
        }
        for (a, b, e, cc, d, f) in [
            (1u32, 1, 2, 1, 1, 2),
            (1, 1, 0, 1, 1, 2),
            (2, 2, 2, 2, 2, 2),
            (1, 2, 1, 2, 1, 2),
            (2, 1, 1, 1, 2, 1),
            (2, 2, 0, 2, 2, 2),
        ] {
            if admissible(a, d, e) && admissible(b, cc, e) && admissible(a, b, f)
                && admissible(cc, d, f)
                && [a, b, e, cc, d, f].iter().all(|&x| x <= max_label + 1)
            {
                nets.push((format!("tet {a},{b},{e},{cc},{d},{f}"), tet_net(a, b, e, cc, d, f)));
            }
        }
        for n in [3usize, 4] {
            let shapes = TreeShape::all(n);
            let ket_shape = TreeShape::caterpillar(n);
            let bra_shape = shapes.last().expect("nonempty").clone();
            for colors in color_tuples(n, hi) {
                let spec = VertexSpec::new(colors.clone());
                let kets = tree_basis(&caches, &spec, &ket_shape).map_err(|e| e.to_string())?;
                let bras = tree_basis(&caches, &spec, &bra_shape).map_err(|e| e.to_string())?;
                for ket in &kets {
                    for bra in &bras {
                        let net = crate::vertices::pair_words(&ket.word, &bra.word)
                            .map_err(|e| e.to_string())?;
                        nets.push((
                            format!("pair {colors:?} {:?}|{:?}", ket.labels, bra.labels),
                            net,
                        ));
                    }
                }
            }
        }
        if max_label >= 2 && nets.len() < 50 {
            return Err(format!("planar corpus too small: {} networks", nets.len()));
        }
        for (name, net) in &nets {
            *cases += 1;
            let o = oracle(&jw, net)?;
            let p = eval_planar(&caches, net).map_err(|e| e.to_string())?;
            if p != o {
                return Err(format!("{name}: planar {} ≠ oracle {}", p.to_text(), o.to_text()));
            }
            let s = eval_single(&caches, net).map_err(|e| e.to_string())?;
            if s != o {
                return Err(format!("{name}: single {} ≠ oracle {}", s.to_text(), o.to_text()));
            }
        }
        Ok(())
    });

    c.run("crossing-corpus-vs-oracle", |cases| {
        // Networks with up to four crossings; checks the fusion evaluator,
        // its bar-equivariance, and the balanced pair rule against brute
        // force.
        let mut nets: Vec<(String, ColoredNetwork)> = Vec::new();
        let lo = 1u32;
        for a in lo..=hi.max(1) {
            for sign in [CrossingSign::Pos, CrossingSign::Neg] {
                nets.push((
                    format!("curl {a} {sign:?}"),
                    ColoredNetwork::new(vec![
                        NetSlice::Cup { at: 0, color: a },
                        NetSlice::Cross { at: 0, sign },
                        NetSlice::Cap { at: 0 },
                    ])
                    .expect("valid curl"),
                ));
            }
            for b in lo..=hi.max(1) {
                nets.push((
                    format!("hopf {a},{b}"),
                    ColoredNetwork::new(vec![
                        NetSlice::Cup { at: 0, color: a },
                        NetSlice::Cup { at: 1, color: b },
                        NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                        NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                        NetSlice::Cap { at: 1 },
                        NetSlice::Cap { at: 0 },
                    ])
                    .expect("valid hopf"),
                ));
            }
            nets.push((
                format!("trefoil {a}"),
                ColoredNetwork::new(vec![
                    NetSlice::Cup { at: 0, color: a },
                    NetSlice::Cup { at: 1, color: a },
                    NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                    NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                    NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                    NetSlice::Cap { at: 1 },
                    NetSlice::Cap { at: 0 },
                ])
                .expect("valid trefoil"),
            ));
        }
        for sign in [CrossingSign::Pos, CrossingSign::Neg] {
            nets.push((
                format!("twisted theta {sign:?}"),
                ColoredNetwork::new(vec![
                    NetSlice::Cup { at: 0, color: 2.min(hi.max(1) * 2) },
                    NetSlice::Node { at: 1, n_in: 1, out_colors: vec![1, 1] },
                    NetSlice::Cross { at: 1, sign },
                    NetSlice::Node { at: 0, n_in: 2, out_colors: vec![1] },
                    NetSlice::Cap { at: 0 },
                ])
                .expect("valid twisted theta"),
            ));
        }
        nets.push((
            "figure-eight 1".into(),
            ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: 1 },
                NetSlice::Cup { at: 1, color: 1 },
                NetSlice::Cup { at: 2, color: 1 },
                NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                NetSlice::Cross { at: 1, sign: CrossingSign::Neg },
                NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                NetSlice::Cross { at: 1, sign: CrossingSign::Neg },
                NetSlice::Cap { at: 2 },
                NetSlice::Cap { at: 1 },
                NetSlice::Cap { at: 0 },
            ])
            .expect("valid figure-eight"),
        ));
        if max_label >= 2 && nets.len() < 10 {
            return Err(format!("crossing corpus too small: {} networks", nets.len()));
        }
        for (name, net) in &nets {
            *cases += 1;
            let o = oracle(&jw, net)?;
            let s = eval_single(&caches, net).map_err(|e| e.to_string())?;
            if s != o {
                return Err(format!("{name}: single {} ≠ oracle {}", s.to_text(), o.to_text()));
            }
            let sb = eval_single_oriented(&caches, net, FactorOrientation::AInverse)
                .map_err(|e| e.to_string())?;
            if sb != s.bar() {
                return Err(format!("{name}: reversed orientation is not the bar"));
            }
            let p = eval_pair(&caches, net).map_err(|e| e.to_string())?;
            if p != &s * &s.bar() {
                return Err(format!("{name}: pair value is not s·bar(s)"));
            }
        }
        Ok(())
    });

    c.run("reidemeister-move-pairs", |cases| {
        // Five hand-built diagram pairs related by a single R-II or R-III
        // move; the fusion evaluator must not see the difference.
        let mut pairs: Vec<(String, ColoredNetwork, ColoredNetwork)> = Vec::new();
        for (a, b) in [(1u32, 1u32), (1, 2), (2, 2)] {
            let wiggled = ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: a },
                NetSlice::Cup { at: 1, color: b },
                NetSlice::Cross { at: 0, sign: CrossingSign::Pos },
                NetSlice::Cross { at: 0, sign: CrossingSign::Neg },
                NetSlice::Cap { at: 1 },
                NetSlice::Cap { at: 0 },
            ])
            .expect("valid R-II word");
            let flat = ColoredNetwork::new(vec![
                NetSlice::Cup { at: 0, color: a },
                NetSlice::Cup { at: 1, color: b },
                NetSlice::Cap { at: 1 },
                NetSlice::Cap { at: 0 },
            ])
            .expect("valid nested loops");
            pairs.push((format!("R-II {a},{b}"), wiggled, flat));
        }
        for a in [1u32, 2] {
            let braid = |word: &[usize]| {
                let mut slices = vec![
                    NetSlice::Cup { at: 0, color: a },
                    NetSlice::Cup { at: 1, color: a },
                    NetSlice::Cup { at: 2, color: a },
                ];
                for &at in word {
                    slices.push(NetSlice::Cross { at, sign: CrossingSign::Pos });
                }
                slices.push(NetSlice::Cap { at: 2 });
                slices.push(NetSlice::Cap { at: 1 });
                slices.push(NetSlice::Cap { at: 0 });
                ColoredNetwork::new(slices).expect("valid braid closure")
            };
            pairs.push((format!("R-III {a}"), braid(&[0, 1, 0]), braid(&[1, 0, 1])));
        }
        for (name, left, right) in &pairs {
            let l = eval_single(&caches, left).map_err(|e| e.to_string())?;
            let r = eval_single(&caches, right).map_err(|e| e.to_string())?;
            expect_rf(cases, &l, &r, name)?;
        }
        Ok(())
    });

    c.run("eulerian-vanishing", |cases| {
        // Odd-valence vertices kill the uniform invariant at odd colors.
        for text in [THETA, THETA_DECORATED] {
            let d = graph_diagram(text)?;
            for j in [1u32, 3] {
                if j > 3.min(2 * max_label.max(1) - 1) {
                    continue;
                }
                let g = g_invariant(&caches, &d, j).map_err(|e| e.to_string())?;
                *cases += 1;
                if !g.is_zero() {
                    return Err(format!("odd-valence graph at j={j}: {}", g.to_text()));
                }
            }
        }
        // Control: the theta graph does support even colors.
        let d = graph_diagram(THETA)?;
        *cases += 1;
        if g_invariant(&caches, &d, 2.min(hi.max(1) * 2)).map_err(|e| e.to_string())?.is_zero() {
            return Err("theta graph vanished at an even color".into());
        }
        Ok(())
    });

    c.run("mirror-invariance", |cases| {
        for text in [VERTEX_TREFOIL, VERTEX_TREFOIL_2, VERTEX_FIGURE_EIGHT] {
            let d = graph_diagram(text)?;
            let m = EmbeddedGraphDiagram::new(d.diagram.mirror()).map_err(|e| e.to_string())?;
            for j in 1..=hi.max(1) {
                let gd = g_invariant(&caches, &d, j).map_err(|e| e.to_string())?;
                let gm = g_invariant(&caches, &m, j).map_err(|e| e.to_string())?;
                expect_rf(cases, &gm, &gd, &format!("mirror at j={j}"))?;
                expect_rf(cases, &gd.bar(), &gd, &format!("bar-invariance at j={j}"))?;
            }
        }
        Ok(())
    });

    c.run("bracket-product-identity", |cases| {
        // For disjoint unions of decorated cycles, the color-1 invariant
        // times Δ₁ per vertex equals the bracket of the underlying link
        // times its bar — with the bracket from the independent skein
        // recursion.
        for text in [
            VERTEX_UNKNOT,
            VERTEX_UNKNOT_2,
            VERTEX_UNKNOT_3,
            VERTEX_TREFOIL,
            VERTEX_TREFOIL_2,
            DECORATED_HOPF,
            DECORATED_HOPF_3,
        ] {
            if max_label < 1 {
                continue;
            }
            let d = graph_diagram(text)?;
            let g1 = g_invariant(&caches, &d, 1).map_err(|e| e.to_string())?;
            let link = d.diagram.strip_vertices().map_err(|e| e.to_string())?;
            let b = bracket(&link).map_err(|e| e.to_string())?;
            let rhs = RatFunc::from_poly(&b * &b.bar());
            let lhs = &g1
                * &delta(1)
                    .powi(d.num_vertices() as i64)
                    .expect("Δ₁ is nonzero");
            expect_rf(cases, &lhs, &rhs, "bracket product")?;
        }
        Ok(())
    });

    c.run("multiplicativity-union-and-wedge", |cases| {
        let pairs = [
            (VERTEX_UNKNOT, VERTEX_UNKNOT),
            (VERTEX_UNKNOT, THETA),
            (VERTEX_TREFOIL, VERTEX_UNKNOT),
            (THETA, THETA),
        ];
        for (a, b) in pairs {
            let da = graph_diagram(a)?;
            let db = graph_diagram(b)?;
            let union = EmbeddedGraphDiagram::new(
                disjoint_union(&da.diagram, &db.diagram).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            for j in 1..=hi.max(1) {
                let prod = &g_invariant(&caches, &da, j).map_err(|e| e.to_string())?
                    * &g_invariant(&caches, &db, j).map_err(|e| e.to_string())?;
                let got = g_invariant(&caches, &union, j).map_err(|e| e.to_string())?;
                expect_rf(cases, &got, &prod, &format!("union at j={j}"))?;
            }
        }
        // Wedges: fuse the terminal vertices; same product.
        let wedges = [
            (VERTEX_UNKNOT, VERTEX_UNKNOT, 0usize, 0usize),
            (VERTEX_UNKNOT, THETA, 0, 1),
        ];
        for (a, b, v1, v2) in wedges {
            let da = graph_diagram(a)?;
            let db = graph_diagram(b)?;
            let w = EmbeddedGraphDiagram::new(
                wedge_at_vertex(&da.diagram, &db.diagram, v1, v2).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            for j in 1..=hi.max(1) {
                let prod = &g_invariant(&caches, &da, j).map_err(|e| e.to_string())?
                    * &g_invariant(&caches, &db, j).map_err(|e| e.to_string())?;
                let got = g_invariant(&caches, &w, j).map_err(|e| e.to_string())?;
                expect_rf(cases, &got, &prod, &format!("wedge at j={j}"))?;
            }
        }
        Ok(())
    });

    c.run("framing-robustness", |cases| {
        let flat = graph_diagram(VERTEX_UNKNOT)?;
        for text in [VERTEX_UNKNOT_CURL_POS, VERTEX_UNKNOT_CURL_NEG] {
            let curled = graph_diagram(text)?;
            for j in 1..=hi.max(1) {
                let a = g_invariant(&caches, &curled, j).map_err(|e| e.to_string())?;
                let b = g_invariant(&caches, &flat, j).map_err(|e| e.to_string())?;
                expect_rf(cases, &a, &b, &format!("curl at j={j}"))?;
            }
        }
        Ok(())
    });

    c.results
}
