//! Closed-form recoupling data: loop values, theta and tetrahedral network
//! evaluations, six-j change-of-basis coefficients, braiding phases, and
//! twists.
//!
//! Everything here is the single-factor (one SU(2) deformation) value; the
//! balanced theory squares these through the bar involution at evaluation
//! time. Every closed form in this module is validated against the
//! brute-force strand expansion of the corresponding network — see the tests
//! here and the `verify` suites.
//!
//! Conventions: labels are strand counts. A triple `(a, b, c)` is admissible
//! when `a + b + c` is even and the triangle inequalities hold; inadmissible
//! queries return zero rather than erroring, matching how the quantities
//! enter network sums.

use crate::qpoly::{quantum_factorial, quantum_int, LaurentPoly, RatFunc};
use crate::tl::JwCache;
use num::{BigInt, BigRational};
use std::collections::HashMap;
use std::sync::RwLock;

/// Shared memo tables. One of these is threaded through every evaluation;
/// all maps are guarded independently, so concurrent branch evaluations can
/// read and publish results freely.
#[derive(Default)]
pub struct Caches {
    pub jw: JwCache,
    theta: RwLock<HashMap<[u32; 3], RatFunc>>,
    tet: RwLock<HashMap<[u32; 6], RatFunc>>,
    sixj: RwLock<HashMap<[u32; 6], RatFunc>>,
    pub(crate) planar_memo: RwLock<HashMap<Vec<u32>, RatFunc>>,
}

impl Caches {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Triangle inequalities plus parity.
pub fn admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a + b >= c && b + c >= a && c + a >= b
}

/// The admissible middle labels for a pair: `|a−b|, |a−b|+2, …, a+b`.
pub fn admissible_range(a: u32, b: u32) -> impl Iterator<Item = u32> {
    let lo = a.abs_diff(b);
    (lo..=a + b).step_by(2)
}

fn sign(k: u32) -> BigRational {
    BigRational::from(BigInt::from(if k.is_multiple_of(2) { 1 } else { -1 }))
}

/// Loop value `Δ_n = (−1)ⁿ [n+1]` as a polynomial.
pub fn delta_poly(n: u32) -> LaurentPoly {
    quantum_int(n + 1).scaled(&sign(n))
}

/// Loop value `Δ_n = (−1)ⁿ [n+1]`: a color-n cable closed into a circle.
pub fn delta(n: u32) -> RatFunc {
    RatFunc::from_poly(delta_poly(n))
}

/// Theta network: two nodes joined by edges `a, b, c`. Zero when
/// inadmissible.
pub fn theta(caches: &Caches, a: u32, b: u32, c: u32) -> RatFunc {
    let mut key = [a, b, c];
    key.sort_unstable();
    if let Some(v) = caches.theta.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = theta_uncached(key[0], key[1], key[2]);
    caches.theta.write().unwrap().insert(key, v.clone());
    v
}

fn theta_uncached(a: u32, b: u32, c: u32) -> RatFunc {
    if !admissible(a, b, c) {
        return RatFunc::zero();
    }
    let m = (a + b - c) / 2;
    let n = (b + c - a) / 2;
    let p = (c + a - b) / 2;
    let num = quantum_factorial(m + n + p + 1)
        .scaled(&sign(m + n + p));
    let num = &(&num * &quantum_factorial(m)) * &(&quantum_factorial(n) * &quantum_factorial(p));
    let den = &(&quantum_factorial(m + n) * &quantum_factorial(n + p))
        * &quantum_factorial(p + m);
    RatFunc::new(num, den).expect("nonzero factorial denominator")
}

/// Tetrahedral network with vertex triples `(a,d,e)`, `(b,c,e)`, `(a,b,f)`,
/// `(c,d,f)`. Zero when any triple is inadmissible.
pub fn tet(caches: &Caches, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> RatFunc {
    let key = [a, b, e, c, d, f];
    if let Some(v) = caches.tet.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = tet_uncached(a, b, e, c, d, f);
    caches.tet.write().unwrap().insert(key, v.clone());
    v
}

fn tet_uncached(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> RatFunc {
    if !(admissible(a, d, e) && admissible(b, c, e) && admissible(a, b, f) && admissible(c, d, f))
    {
        return RatFunc::zero();
    }
    let half = |x: u32| x / 2;
    let a_i = [half(a + d + e), half(b + c + e), half(a + b + f), half(c + d + f)];
    let b_j = [half(b + d + e + f), half(a + c + e + f), half(a + b + c + d)];
    let s_lo = *a_i.iter().max().unwrap();
    let s_hi = *b_j.iter().min().unwrap();
    debug_assert!(s_lo <= s_hi, "admissible tetrahedron has a nonempty sum");
    let mut interior = LaurentPoly::one();
    for &bj in &b_j {
        for &ai in &a_i {
            interior = &interior * &quantum_factorial(bj - ai);
        }
    }
    let mut edge_fact = LaurentPoly::one();
    for &x in &[a, b, c, d, e, f] {
        edge_fact = &edge_fact * &quantum_factorial(x);
    }
    let mut total = RatFunc::zero();
    for s in s_lo..=s_hi {
        let num = quantum_factorial(s + 1).scaled(&sign(s));
        let mut den = LaurentPoly::one();
        for &ai in &a_i {
            den = &den * &quantum_factorial(s - ai);
        }
        for &bj in &b_j {
            den = &den * &quantum_factorial(bj - s);
        }
        total += &RatFunc::new(num, den).expect("nonzero factorial denominator");
    }
    &RatFunc::new(interior, edge_fact).expect("nonzero factorial denominator") * &total
}

/// Recoupling coefficient: the change of basis from the tree fusing
/// `(a,b)→e, (e,c)→d` to the tree fusing `(b,c)→f, (a,f)→d`:
///
/// `H_e = Σ_f six_j(a,b,e,c,d,f) · I_f`.
///
/// Computed by gluing `H_e` against the dual `I_f` tree — a tetrahedron with
/// vertex triples `{a,b,e}, {c,d,e}, {a,d,f}, {b,c,f}` — and dividing by the
/// pairing normalization `θ(a,d,f)·θ(b,c,f)/Δ_f`.
pub fn six_j(caches: &Caches, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> RatFunc {
    let key = [a, b, e, c, d, f];
    if let Some(v) = caches.sixj.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = if admissible(a, d, f) && admissible(b, c, f) {
        let glued = tet(caches, a, d, e, c, b, f);
        let norm = &theta(caches, a, d, f) * &theta(caches, b, c, f);
        &(&glued * &delta(f)) / &norm
    } else {
        RatFunc::zero()
    };
    caches.sixj.write().unwrap().insert(key, v.clone());
    v
}

/// Braiding phase: a positive crossing of cables `a`, `b` projected onto the
/// fusion channel `c` acts by
/// `λ(a,b,c) = (−1)^{(a+b−c)/2} · A^{(c(c+2) − a(a+2) − b(b+2))/2}`.
/// The negative crossing uses the bar. Zero when inadmissible.
pub fn lambda(a: u32, b: u32, c: u32) -> RatFunc {
    if !admissible(a, b, c) {
        return RatFunc::zero();
    }
    let q = |x: u32| i64::from(x) * (i64::from(x) + 2);
    let exp = (q(c) - q(a) - q(b)) / 2;
    RatFunc::from_poly(LaurentPoly::monomial(exp, sign((a + b - c) / 2)))
}

/// Framing twist of a color-n cable: a full positive curl contributes
/// `(−1)ⁿ A^{n(n+2)}`.
pub fn twist(n: u32) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::monomial(
        i64::from(n) * (i64::from(n) + 2),
        sign(n),
    ))
}
