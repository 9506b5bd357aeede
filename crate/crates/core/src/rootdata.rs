//! Exact sl3 root-system arithmetic: weights in Dynkin-label coordinates,
//! coweights, the bilinear forms induced by the normalised Killing form, the
//! twelve root-system automorphisms, Casimir eigenvalues and conformal
//! weights.
//!
//! Everything here is a pure function over immutable exact rationals; no
//! floating point enters this module.

use num_rational::Rational64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = Rational64;

/// Convenience constructor for a reduced rational.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// A finite sl3 weight, stored by its two Dynkin labels ⟨λ,h¹⟩, ⟨λ,h²⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub d1: Rat,
    pub d2: Rat,
}

impl Weight {
    pub fn new(d1: Rat, d2: Rat) -> Self {
        Weight { d1, d2 }
    }

    pub fn from_ints(d1: i64, d2: i64) -> Self {
        Weight::new(Rat::from_integer(d1), Rat::from_integer(d2))
    }

    pub fn zero() -> Self {
        Weight::from_ints(0, 0)
    }

    /// Coordinates (t₁, t₂) in the simple-root basis, solved through the
    /// inverse Cartan matrix A⁻¹ = (1/3)[[2,1],[1,2]].
    pub fn root_coords(&self) -> (Rat, Rat) {
        let three = Rat::from_integer(3);
        (
            (self.d1 * 2 + self.d2) / three,
            (self.d1 + self.d2 * 2) / three,
        )
    }

    /// True iff both Dynkin labels are nonnegative integers.
    pub fn is_dominant_integral(&self) -> bool {
        is_natural(self.d1) && is_natural(self.d2)
    }

    pub fn scale(&self, c: Rat) -> Weight {
        Weight::new(self.d1 * c, self.d2 * c)
    }
}

/// Membership of a rational in ℕ, tested exactly.
pub fn is_natural(r: Rat) -> bool {
    r.is_integer() && !r.numer().is_negative()
}

/// Membership of a rational in ℤ.
pub fn is_integer(r: Rat) -> bool {
    r.is_integer()
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.d1, -self.d2)
    }
}

impl Mul<Rat> for Weight {
    type Output = Weight;
    fn mul(self, c: Rat) -> Weight {
        self.scale(c)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Fundamental weight ω₁ = (1,0).
pub fn omega1() -> Weight {
    Weight::from_ints(1, 0)
}

/// Fundamental weight ω₂ = (0,1).
pub fn omega2() -> Weight {
    Weight::from_ints(0, 1)
}

/// ω₃ = ω₂ − ω₁, the companion of the third unit coweight.
pub fn omega3() -> Weight {
    Weight::from_ints(-1, 1)
}

/// Weyl vector ρ = ω₁ + ω₂ = (1,1).
pub fn rho() -> Weight {
    Weight::from_ints(1, 1)
}

/// Simple root α₁ = (2,−1).
pub fn alpha1() -> Weight {
    Weight::from_ints(2, -1)
}

/// Simple root α₂ = (−1,2).
pub fn alpha2() -> Weight {
    Weight::from_ints(-1, 2)
}

/// Highest root α₃ = α₁ + α₂ = (1,1).
pub fn alpha3() -> Weight {
    Weight::from_ints(1, 1)
}

/// An element of the coweight lattice P∨, in the basis {ω₁∨, ω₂∨} dual to
/// the simple roots.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default,
)]
pub struct Coweight {
    pub c1: i64,
    pub c2: i64,
}

impl Coweight {
    pub fn new(c1: i64, c2: i64) -> Self {
        Coweight { c1, c2 }
    }

    pub fn zero() -> Self {
        Coweight::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c1 == 0 && self.c2 == 0
    }

    /// κ(ξ,−) ∈ h*, which in Dynkin labels is simply (c₁, c₂).
    pub fn dual_weight(&self) -> Weight {
        Weight::from_ints(self.c1, self.c2)
    }

    /// ℓ¹ norm of the coordinates, the leading key of the label order.
    pub fn norm1(&self) -> i64 {
        self.c1.abs() + self.c2.abs()
    }
}

impl Add for Coweight {
    type Output = Coweight;
    fn add(self, rhs: Coweight) -> Coweight {
        Coweight::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Coweight {
    type Output = Coweight;
    fn sub(self, rhs: Coweight) -> Coweight {
        Coweight::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight::new(-self.c1, -self.c2)
    }
}

impl Mul<i64> for Coweight {
    type Output = Coweight;
    fn mul(self, n: i64) -> Coweight {
        Coweight::new(self.c1 * n, self.c2 * n)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c1, self.c2)
    }
}

/// Fundamental coweight ω₁∨.
pub fn comega1() -> Coweight {
    Coweight::new(1, 0)
}

/// Fundamental coweight ω₂∨.
pub fn comega2() -> Coweight {
    Coweight::new(0, 1)
}

/// ω₃∨ = ω₂∨ − ω₁∨.
pub fn comega3() -> Coweight {
    Coweight::new(-1, 1)
}

/// The six unit coweights ±ω₁∨, ±ω₂∨, ±ω₃∨ (the hexagon of minimal
/// spectral-flow steps).
pub fn unit_coweights() -> [Coweight; 6] {
    [
        comega1(),
        comega2(),
        comega3(),
        -comega1(),
        -comega2(),
        -comega3(),
    ]
}

/// Pairing ⟨λ, ξ⟩ of a weight with a coweight, normalised by ⟨αᵢ,ωⱼ∨⟩ = δᵢⱼ.
pub fn pairing(lambda: Weight, xi: Coweight) -> Rat {
    let (t1, t2) = lambda.root_coords();
    t1 * Rat::from_integer(xi.c1) + t2 * Rat::from_integer(xi.c2)
}

/// Bilinear form (λ, μ) on h* induced by the Killing form; the Gram matrix in
/// the fundamental-weight basis is the inverse Cartan matrix.
pub fn killing_dual(lambda: Weight, mu: Weight) -> Rat {
    let (t1, t2) = lambda.root_coords();
    t1 * mu.d1 + t2 * mu.d2
}

/// κ(ξ, ξ') on the coweight lattice; same Gram matrix as `killing_dual`.
pub fn killing_coweight(xi: Coweight, eta: Coweight) -> Rat {
    let n = 2 * xi.c1 * eta.c1 + xi.c1 * eta.c2 + xi.c2 * eta.c1 + 2 * xi.c2 * eta.c2;
    rat(n, 3)
}

/// The six reduced Weyl-group words, with w₃ = w₁w₂w₁ = w₂w₁w₂ fixed as the
/// spelling of the longest element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeylWord {
    E,
    W1,
    W2,
    W12,
    W21,
    W3,
}

impl WeylWord {
    pub const ALL: [WeylWord; 6] = [
        WeylWord::E,
        WeylWord::W1,
        WeylWord::W2,
        WeylWord::W12,
        WeylWord::W21,
        WeylWord::W3,
    ];

    fn index(self) -> usize {
        match self {
            WeylWord::E => 0,
            WeylWord::W1 => 1,
            WeylWord::W2 => 2,
            WeylWord::W12 => 3,
            WeylWord::W21 => 4,
            WeylWord::W3 => 5,
        }
    }

    /// Integer matrix of the action on Dynkin labels (row-major).
    fn matrix(self) -> [[i64; 2]; 2] {
        // w1: (a,b) ↦ (−a, a+b);  w2: (a,b) ↦ (a+b, −b);  products follow.
        match self {
            WeylWord::E => [[1, 0], [0, 1]],
            WeylWord::W1 => [[-1, 0], [1, 1]],
            WeylWord::W2 => [[1, 1], [0, -1]],
            WeylWord::W12 => mat_mul([[-1, 0], [1, 1]], [[1, 1], [0, -1]]),
            WeylWord::W21 => mat_mul([[1, 1], [0, -1]], [[-1, 0], [1, 1]]),
            WeylWord::W3 => [[0, -1], [-1, 0]],
        }
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// An element of the 12-element automorphism group D₆ of the sl3 root
/// system, stored as a Weyl word composed with an optional Dynkin flip which
/// acts first: g = weyl ∘ dᵉ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct D6Element {
    pub weyl: WeylWord,
    pub dynkin: bool,
}

const DYNKIN_MAT: [[i64; 2]; 2] = [[0, 1], [1, 0]];

impl D6Element {
    pub const fn new(weyl: WeylWord, dynkin: bool) -> Self {
        D6Element { weyl, dynkin }
    }

    pub fn identity() -> Self {
        D6Element::new(WeylWord::E, false)
    }

    pub fn w1() -> Self {
        D6Element::new(WeylWord::W1, false)
    }

    pub fn w2() -> Self {
        D6Element::new(WeylWord::W2, false)
    }

    pub fn w3() -> Self {
        D6Element::new(WeylWord::W3, false)
    }

    pub fn w12() -> Self {
        D6Element::new(WeylWord::W12, false)
    }

    pub fn w21() -> Self {
        D6Element::new(WeylWord::W21, false)
    }

    pub fn dynkin_flip() -> Self {
        D6Element::new(WeylWord::E, true)
    }

    /// Conjugation c = d·w₃ = w₃·d, acting as −1 on h and h*.
    pub fn conjugation() -> Self {
        D6Element::new(WeylWord::W3, true)
    }

    pub fn all() -> Vec<D6Element> {
        let mut out = Vec::with_capacity(12);
        for &d in &[false, true] {
            for w in WeylWord::ALL {
                out.push(D6Element::new(w, d));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.weyl == WeylWord::E && !self.dynkin
    }

    /// Position in the fixed 12-element enumeration used by the label order:
    /// the six Weyl words first, then their Dynkin-flipped companions.
    pub fn index(&self) -> usize {
        self.weyl.index() + if self.dynkin { 6 } else { 0 }
    }

    fn matrix(&self) -> [[i64; 2]; 2] {
        if self.dynkin {
            mat_mul(self.weyl.matrix(), DYNKIN_MAT)
        } else {
            self.weyl.matrix()
        }
    }

    /// Unshifted action on a weight.
    pub fn apply(&self, lambda: Weight) -> Weight {
        let m = self.matrix();
        Weight::new(
            lambda.d1 * m[0][0] + lambda.d2 * m[0][1],
            lambda.d1 * m[1][0] + lambda.d2 * m[1][1],
        )
    }

    /// Shifted action g·λ = g(λ+ρ) − ρ.
    pub fn apply_shifted(&self, lambda: Weight) -> Weight {
        self.apply(lambda + rho()) - rho()
    }

    /// Action on a coweight; the matrices coincide with the weight action in
    /// these bases.
    pub fn apply_coweight(&self, xi: Coweight) -> Coweight {
        let m = self.matrix();
        Coweight::new(
            xi.c1 * m[0][0] + xi.c2 * m[0][1],
            xi.c1 * m[1][0] + xi.c2 * m[1][1],
        )
    }

    pub fn inverse(&self) -> D6Element {
        for g in D6Element::all() {
            if d6_compose(*self, g).is_identity() {
                return g;
            }
        }
        unreachable!("every D6 element has an inverse")
    }
}

impl fmt::Display for D6Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // c = w3·d gets its own name; otherwise print the weyl word then d.
        if self.dynkin && self.weyl == WeylWord::W3 {
            return write!(f, "c");
        }
        let weyl = match self.weyl {
            WeylWord::E => "",
            WeylWord::W1 => "w1",
            WeylWord::W2 => "w2",
            WeylWord::W12 => "w1 w2",
            WeylWord::W21 => "w2 w1",
            WeylWord::W3 => "w3",
        };
        match (weyl.is_empty(), self.dynkin) {
            (true, false) => write!(f, "e"),
            (true, true) => write!(f, "d"),
            (false, false) => write!(f, "{weyl}"),
            (false, true) => write!(f, "{weyl} d"),
        }
    }
}

/// Group product g·h in D₆, identified through the faithful matrix action
/// and returned in canonical spelling.
pub fn d6_compose(g: D6Element, h: D6Element) -> D6Element {
    let m = mat_mul(g.matrix(), h.matrix());
    // d anti-commutes with nothing here: parity of dynkin flags is preserved.
    let dynkin = g.dynkin ^ h.dynkin;
    for w in WeylWord::ALL {
        let cand = D6Element::new(w, dynkin);
        if cand.matrix() == m {
            return cand;
        }
    }
    unreachable!("matrix of a D6 product is the matrix of a D6 element")
}

/// Admissible-level data k = −3 + u/v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    u: i64,
    v: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LevelError {
    #[error("u must be at least 2, got {0}")]
    UTooSmall(i64),
    #[error("v must be at least 1, got {0}")]
    VTooSmall(i64),
    #[error("u and v must be coprime, got gcd({0},{1}) > 1")]
    NotCoprime(i64, i64),
}

impl Level {
    pub fn new(u: i64, v: i64) -> Result<Level, LevelError> {
        if u < 2 {
            return Err(LevelError::UTooSmall(u));
        }
        if v < 1 {
            return Err(LevelError::VTooSmall(v));
        }
        if num_integer::gcd(u, v) != 1 {
            return Err(LevelError::NotCoprime(u, v));
        }
        Ok(Level { u, v })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    /// The level k = −3 + u/v.
    pub fn k(&self) -> Rat {
        rat(self.u, self.v) - Rat::from_integer(3)
    }

    /// k + 3 = u/v, the shifted level entering denominators.
    pub fn k_shifted(&self) -> Rat {
        rat(self.u, self.v)
    }

    pub fn is_m32(&self) -> bool {
        self.u == 3 && self.v == 2
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.u, self.v)
    }
}

/// Eigenvalues of the quadratic and cubic Casimirs on a highest-weight
/// vector of weight λ, frozen from the one-time derivation that drops every
/// term with a rightmost raising operator.
pub fn casimir_eigenvalues(lambda: Weight) -> (Rat, Rat) {
    let (a, b) = (lambda.d1, lambda.d2);
    let s = a + b;
    let quadratic = (a * a + b * b + s * s) / Rat::from_integer(3) + s * 2;
    let three = Rat::from_integer(3);
    let cubic = (a + b * 2 + three) * (a * 2 + b + three) * (a - b);
    (quadratic, cubic)
}

/// Conformal weight Δ_λ = (λ, λ+2ρ) / (2(k+3)) of the ground states.
pub fn conformal_weight(lambda: Weight, lvl: Level) -> Rat {
    killing_dual(lambda, lambda + rho().scale(Rat::from_integer(2))) / (lvl.k_shifted() * 2)
}

/// Central charge c = 8k/(k+3).
pub fn central_charge(lvl: Level) -> Rat {
    lvl.k() * 8 / lvl.k_shifted()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn pairing_duality() {
        // ⟨αᵢ, ωⱼ∨⟩ = δᵢⱼ
        assert_eq!(pairing(alpha1(), comega1()), Rat::one());
        assert_eq!(pairing(alpha1(), comega2()), Rat::zero());
        assert_eq!(pairing(alpha2(), comega1()), Rat::zero());
        assert_eq!(pairing(alpha2(), comega2()), Rat::one());
        assert_eq!(pairing(omega1(), comega1()), rat(2, 3));
        assert_eq!(pairing(rho(), comega1() + comega2()), Rat::from_integer(2));
    }

    #[test]
    fn killing_values() {
        assert_eq!(killing_dual(alpha1(), alpha1()), Rat::from_integer(2));
        assert_eq!(killing_dual(alpha1(), alpha2()), Rat::from_integer(-1));
        assert_eq!(killing_dual(omega1(), omega2()), rat(1, 3));
        assert_eq!(killing_dual(rho(), rho()), Rat::from_integer(2));
        assert_eq!(killing_coweight(comega2(), comega2()), rat(2, 3));
        assert_eq!(killing_coweight(comega1(), comega2()), rat(1, 3));
        let diff = comega1() - comega2();
        assert_eq!(killing_coweight(diff, diff), rat(2, 3));
    }

    #[test]
    fn d6_relations() {
        let e = D6Element::identity();
        let w1 = D6Element::w1();
        let w2 = D6Element::w2();
        let d = D6Element::dynkin_flip();
        let c = D6Element::conjugation();
        assert_eq!(d6_compose(w1, w1), e);
        assert_eq!(d6_compose(w2, w2), e);
        assert_eq!(d6_compose(d, d), e);
        // d·w1 = w2·d
        assert_eq!(d6_compose(d, w1), d6_compose(w2, d));
        // d·w3 = c
        assert_eq!(d6_compose(d, D6Element::w3()), c);
        // w3 = w1 w2 w1 = w2 w1 w2
        let w3a = d6_compose(d6_compose(w1, w2), w1);
        let w3b = d6_compose(d6_compose(w2, w1), w2);
        assert_eq!(w3a, D6Element::w3());
        assert_eq!(w3b, D6Element::w3());
        // c is central
        for g in D6Element::all() {
            assert_eq!(d6_compose(c, g), d6_compose(g, c));
        }
    }

    #[test]
    fn d6_group_axioms_exhaustive() {
        let all = D6Element::all();
        assert_eq!(all.len(), 12);
        let e = D6Element::identity();
        for &g in &all {
            assert_eq!(d6_compose(e, g), g);
            assert_eq!(d6_compose(g, e), g);
            assert_eq!(d6_compose(g, g.inverse()), e);
            for &h in &all {
                for &k in &all {
                    assert_eq!(
                        d6_compose(d6_compose(g, h), k),
                        d6_compose(g, d6_compose(h, k))
                    );
                }
            }
        }
    }

    #[test]
    fn d6_actions() {
        let lam = Weight::new(rat(-3, 2), Rat::zero());
        // w₁·(−3/2 ω₁) = −ρ/2 under the shifted action
        assert_eq!(
            D6Element::w1().apply_shifted(lam),
            Weight::new(rat(-1, 2), rat(-1, 2))
        );
        // conjugation acts as −1 unshifted
        let mu = Weight::new(rat(5, 7), rat(-2, 3));
        assert_eq!(D6Element::conjugation().apply(mu), -mu);
        // d swaps Dynkin labels
        assert_eq!(
            D6Element::dynkin_flip().apply(mu),
            Weight::new(mu.d2, mu.d1)
        );
    }

    fn rat_strategy() -> impl Strategy<Value = Rat> {
        (-24i64..24, 1i64..8).prop_map(|(n, d)| rat(n, d))
    }

    fn weight_strategy() -> impl Strategy<Value = Weight> {
        (rat_strategy(), rat_strategy()).prop_map(|(a, b)| Weight::new(a, b))
    }

    proptest! {
        #[test]
        fn action_is_group_action(lam in weight_strategy()) {
            for g in D6Element::all() {
                for h in D6Element::all() {
                    prop_assert_eq!(
                        d6_compose(g, h).apply(lam),
                        g.apply(h.apply(lam))
                    );
                    prop_assert_eq!(
                        d6_compose(g, h).apply_shifted(lam),
                        g.apply_shifted(h.apply_shifted(lam))
                    );
                }
            }
        }

        #[test]
        fn shifted_weyl_preserves_casimirs(lam in weight_strategy()) {
            let (q, c) = casimir_eigenvalues(lam);
            for w in [D6Element::w1(), D6Element::w2(), D6Element::w12(),
                      D6Element::w21(), D6Element::w3()] {
                let (qw, cw) = casimir_eigenvalues(w.apply_shifted(lam));
                prop_assert_eq!(q, qw);
                prop_assert_eq!(c, cw);
            }
        }

        #[test]
        fn shifted_conjugation_flips_cubic(lam in weight_strategy()) {
            let (q, c) = casimir_eigenvalues(lam);
            let (qc, cc) = casimir_eigenvalues(
                D6Element::conjugation().apply_shifted(lam));
            prop_assert_eq!(q, qc);
            prop_assert_eq!(c, -cc);
        }

        #[test]
        fn shifted_weyl_preserves_conformal_weight(lam in weight_strategy()) {
            // Δ depends on λ through (λ+ρ, λ+ρ), which is W-invariant.
            let lvl = Level::new(3, 2).unwrap();
            let base = conformal_weight(lam, lvl);
            for w in WeylWord::ALL {
                let g = D6Element::new(w, false);
                prop_assert_eq!(conformal_weight(g.apply_shifted(lam), lvl), base);
            }
        }

        #[test]
        fn killing_is_weyl_invariant(a in weight_strategy(), b in weight_strategy()) {
            for g in D6Element::all() {
                prop_assert_eq!(killing_dual(g.apply(a), g.apply(b)), killing_dual(a, b));
            }
        }
    }

    // One-time symbolic derivation of the Casimir eigenvalues: apply the
    // displayed generators to a highest-weight vector, where any word ending
    // in a raising operator annihilates it and Cartan factors evaluate.
    mod casimir_oracle {
        use super::*;

        #[derive(Clone, Copy)]
        #[allow(dead_code)]
        enum Op {
            E(u8),
            F(u8),
        }

        // coefficient · Π(linear forms in h¹,h²) · operator word
        struct Term {
            coeff: Rat,
            linear: Vec<(i64, i64, i64)>, // a·h¹ + b·h² + c
            word: Vec<Op>,
        }

        fn eval(terms: &[Term], lam: Weight) -> Rat {
            let mut total = Rat::zero();
            'terms: for t in terms {
                // rightmost operator acts first on the highest-weight vector
                if let Some(last) = t.word.last() {
                    match last {
                        Op::E(_) => continue 'terms, // annihilated
                        Op::F(_) => panic!("oracle term with lowering operator rightmost"),
                    }
                }
                let mut val = t.coeff;
                for &(a, b, c) in &t.linear {
                    val *= lam.d1 * a + lam.d2 * b + Rat::from_integer(c);
                }
                total += val;
            }
            total
        }

        fn quadratic_terms() -> Vec<Term> {
            let third = rat(1, 3);
            let mut v = vec![];
            for h in [(1, 0, 0), (0, 1, 0), (1, 1, 0)] {
                v.push(Term {
                    coeff: third,
                    linear: vec![h, h],
                    word: vec![],
                });
                v.push(Term {
                    coeff: Rat::one(),
                    linear: vec![h],
                    word: vec![],
                });
            }
            for i in 1..=3u8 {
                v.push(Term {
                    coeff: Rat::from_integer(2),
                    linear: vec![],
                    word: vec![Op::F(i), Op::E(i)],
                });
            }
            v
        }

        fn cubic_terms() -> Vec<Term> {
            let p = (1, 2, 3);
            let q = (2, 1, 3);
            let r = (1, -1, 0);
            vec![
                Term {
                    coeff: Rat::one(),
                    linear: vec![p, q, r],
                    word: vec![],
                },
                Term {
                    coeff: Rat::from_integer(9),
                    linear: vec![p],
                    word: vec![Op::F(1), Op::E(1)],
                },
                Term {
                    coeff: Rat::from_integer(-9),
                    linear: vec![q],
                    word: vec![Op::F(2), Op::E(2)],
                },
                Term {
                    coeff: Rat::from_integer(9),
                    linear: vec![r],
                    word: vec![Op::F(3), Op::E(3)],
                },
                Term {
                    coeff: Rat::from_integer(27),
                    linear: vec![],
                    word: vec![Op::F(1), Op::F(2), Op::E(3)],
                },
                Term {
                    coeff: Rat::from_integer(27),
                    linear: vec![],
                    word: vec![Op::F(3), Op::E(1), Op::E(2)],
                },
            ]
        }

        #[test]
        fn frozen_polynomials_match_symbolic_application() {
            let quad = quadratic_terms();
            let cub = cubic_terms();
            for n1 in -6..=6 {
                for n2 in -6..=6 {
                    for den in [1, 2, 3] {
                        let lam = Weight::new(rat(n1, den), rat(n2, den));
                        let (q, c) = casimir_eigenvalues(lam);
                        assert_eq!(q, eval(&quad, lam), "quadratic at {lam}");
                        assert_eq!(c, eval(&cub, lam), "cubic at {lam}");
                    }
                }
            }
        }

        #[test]
        fn oracle_values() {
            // trivial module
            assert_eq!(
                casimir_eigenvalues(Weight::zero()),
                (Rat::zero(), Rat::zero())
            );
            // fundamental: symbolic application gives (8/3, 20)
            let f = Weight::from_ints(1, 0);
            assert_eq!(eval(&quadratic_terms(), f), rat(8, 3));
            assert_eq!(eval(&cubic_terms(), f), Rat::from_integer(20));
            assert_eq!(casimir_eigenvalues(f), (rat(8, 3), Rat::from_integer(20)));
            // cubic vanishes on the symmetric line
            for a in [rat(1, 2), rat(-7, 3), Rat::from_integer(4)] {
                let lam = Weight::new(a, a);
                assert_eq!(casimir_eigenvalues(lam).1, Rat::zero());
            }
        }
    }

    #[test]
    fn conformal_weights_at_32() {
        let lvl = Level::new(3, 2).unwrap();
        assert_eq!(conformal_weight(Weight::zero(), lvl), Rat::zero());
        assert_eq!(
            conformal_weight(Weight::new(rat(-3, 2), Rat::zero()), lvl),
            rat(-1, 2)
        );
        assert_eq!(
            conformal_weight(Weight::new(rat(-1, 2), rat(-1, 2)), lvl),
            rat(-1, 2)
        );
    }

    #[test]
    fn central_charges() {
        assert_eq!(
            central_charge(Level::new(3, 2).unwrap()),
            Rat::from_integer(-8)
        );
        assert_eq!(central_charge(Level::new(3, 1).unwrap()), Rat::zero());
        assert_eq!(
            central_charge(Level::new(4, 3).unwrap()),
            Rat::from_integer(-10)
        );
    }

    #[test]
    fn level_validation() {
        assert!(Level::new(3, 2).is_ok());
        assert_eq!(Level::new(1, 2), Err(LevelError::UTooSmall(1)));
        assert_eq!(Level::new(4, 0), Err(LevelError::VTooSmall(0)));
        assert_eq!(Level::new(4, 2), Err(LevelError::NotCoprime(4, 2)));
    }
}
