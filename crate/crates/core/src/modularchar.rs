//! Characters and modular data of the M(3,2) standard modules: the η⁻⁴
//! q-series, standard characters as (prefactor, comb) records, exact
//! S-matrix entries for standard, semirelaxed and highest-weight classes,
//! delta-reduced unitarity, and the modular action on coordinates.
//!
//! Construction is guarded: relaxed characters are linearly dependent at
//! every admissible level with v > 1 other than (3,2), so modular data is
//! refused elsewhere.
//!
//! Only the S-transform is tabulated for standard characters; the
//! T-transform exists solely as the coordinate map in `modular_action`, and
//! no standard T-matrix is provided.

use crate::modlabel::CosetQ;
use crate::rootdata::{
    comega1, comega2, comega3, killing_coweight, pairing, rat, rho, Coweight, D6Element, Level,
    Rat, Weight,
};
use crate::torusfourier::{ConeSeries, FourierPoly, PhaseAngle, PhaseSum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::f64::consts::{PI, TAU};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScopeError {
    #[error(
        "relaxed characters are linearly dependent at M({u},{v}); \
         standard modular data exists only for M(3,2)"
    )]
    LinearlyDependentCharacters { u: i64, v: i64 },
    #[error("M({u},1) is rational with integrable spectrum; its modular data is classical and not computed here")]
    IntegrableLevel { u: i64 },
}

/// Guard implementing the scope boundary: modular/S-matrix machinery exists
/// only at (3,2).
pub fn ensure_m32(lvl: Level) -> Result<(), ScopeError> {
    if lvl.is_m32() {
        Ok(())
    } else if lvl.v() == 1 {
        Err(ScopeError::IntegrableLevel { u: lvl.u() })
    } else {
        Err(ScopeError::LinearlyDependentCharacters {
            u: lvl.u(),
            v: lvl.v(),
        })
    }
}

// ---------------------------------------------------------------------------
// q-series
// ---------------------------------------------------------------------------

/// A truncated q-series q^{leading} Σ_n c_n qⁿ with exact integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub leading_exponent: Rat,
    pub coefficients: Vec<BigInt>,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * (", self.leading_exponent)?;
        for (n, c) in self.coefficients.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} q")?,
                _ => write!(f, "{c} q^{n}")?,
            }
        }
        write!(f, " + ...)")
    }
}

/// Coefficients of the Euler product Π(1−qⁿ) via the pentagonal-number
/// expansion Σ_k (−1)^k q^{k(3k∓1)/2}.
fn euler_function(order: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    let mut k = 0i64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > order as i64 {
            break;
        }
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        coeffs[g1 as usize] += &sign;
        let g2 = k * (3 * k + 1) / 2;
        if k != 0 && g2 <= order as i64 {
            coeffs[g2 as usize] += &sign;
        }
        k += 1;
    }
    coeffs
}

fn series_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Invert a power series with unit constant term.
fn series_invert(a: &[BigInt], order: usize) -> Vec<BigInt> {
    assert!(a[0].is_one());
    let mut out = vec![BigInt::zero(); order + 1];
    out[0] = BigInt::one();
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for j in 1..=n.min(a.len() - 1) {
            acc += &a[j] * &out[n - j];
        }
        out[n] = -acc;
    }
    out
}

/// η(q)⁻⁴ = q^{−1/6} Σ p₄(n) qⁿ, computed by inverting the fourth power of
/// the pentagonal expansion of the Euler function.
pub fn eta_inv_fourth(order: usize) -> QSeries {
    assert!(order <= 10_000, "q-series order capped at 10^4");
    let e = euler_function(order);
    let e2 = series_mul(&e, &e, order);
    let e4 = series_mul(&e2, &e2, order);
    QSeries {
        leading_exponent: rat(-1, 6),
        coefficients: series_invert(&e4, order),
    }
}

/// Numeric Dedekind eta on the upper half-plane.
pub fn eta_numeric(tau: Complex64) -> Complex64 {
    let q = (Complex64::i() * TAU * tau).exp();
    let mut prod = Complex64::one();
    let mut qn = Complex64::one();
    for _ in 1..=64 {
        qn *= q;
        prod *= Complex64::one() - qn;
    }
    (Complex64::i() * TAU * tau / 24.0).exp() * prod
}

// ---------------------------------------------------------------------------
// standard characters
// ---------------------------------------------------------------------------

/// The character of σ^ξ R[μ] at (3,2), stored as its defining data: the
/// prefactor phases and the Dirac comb δ(ζ + τξ − P∨).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardCharacter {
    pub flow: Coweight,
    pub coset: CosetQ,
}

impl StandardCharacter {
    pub fn new(flow: Coweight, coset: CosetQ, lvl: Level) -> Result<Self, ScopeError> {
        ensure_m32(lvl)?;
        Ok(StandardCharacter { flow, coset })
    }

    /// Prefactor e^{−3πiθ} e^{−3πiκ(ξ,ζ+τξ/2)} e^{2πi⟨μ,ζ+τξ⟩} / η(τ)⁴ at a
    /// complex coweight-coordinate point ζ.
    pub fn prefactor_numeric(
        &self,
        theta: Complex64,
        zeta: (Complex64, Complex64),
        tau: Complex64,
    ) -> Complex64 {
        let xi = self.flow;
        let zeta_shift = (
            zeta.0 + tau * xi.c1 as f64 / 2.0,
            zeta.1 + tau * xi.c2 as f64 / 2.0,
        );
        let kappa_term = kappa_complex((xi.c1 as f64).into(), (xi.c2 as f64).into(), zeta_shift);
        let full_zeta = (zeta.0 + tau * xi.c1 as f64, zeta.1 + tau * xi.c2 as f64);
        let mu_term = pairing_complex(self.coset.rep(), full_zeta);
        let i = Complex64::i();
        let eta4 = eta_numeric(tau).powu(4);
        (-3.0 * PI * i * theta - 3.0 * PI * i * kappa_term + TAU * i * mu_term).exp() / eta4
    }

    /// Coefficient of the comb at the lattice point ξ_test: zero off the
    /// coweight lattice, otherwise the prefactor at ζ = ξ_test − τξ.
    pub fn pairing_numeric(
        &self,
        test_frequency: (Rat, Rat),
        theta: Complex64,
        tau: Complex64,
    ) -> Complex64 {
        if !test_frequency.0.is_integer() || !test_frequency.1.is_integer() {
            return Complex64::zero();
        }
        let t1 = test_frequency.0.to_integer() as f64;
        let t2 = test_frequency.1.to_integer() as f64;
        let zeta = (
            Complex64::from(t1) - tau * self.flow.c1 as f64,
            Complex64::from(t2) - tau * self.flow.c2 as f64,
        );
        self.prefactor_numeric(theta, zeta, tau)
    }
}

fn kappa_complex(a: Complex64, b: Complex64, z: (Complex64, Complex64)) -> Complex64 {
    (2.0 * a * z.0 + a * z.1 + b * z.0 + 2.0 * b * z.1) / 3.0
}

fn pairing_complex(w: Weight, z: (Complex64, Complex64)) -> Complex64 {
    let (t1, t2) = w.root_coords();
    let f = |r: Rat| *r.numer() as f64 / *r.denom() as f64;
    z.0 * f(t1) + z.1 * f(t2)
}

// ---------------------------------------------------------------------------
// S-matrix entries
// ---------------------------------------------------------------------------

/// An exact S-matrix entry: a finite sum of cone-completed rational
/// functions of the torus parameter μ'.  Standard entries have trivial
/// denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMatrixEntry {
    pub terms: Vec<ConeSeries>,
}

impl SMatrixEntry {
    pub fn expand(&self, order: u32) -> Result<FourierPoly, crate::torusfourier::ConeError> {
        let mut out = FourierPoly::zero();
        for t in &self.terms {
            out = out + crate::torusfourier::cone_expand(t, order)?;
        }
        Ok(out)
    }

    /// Numeric value at a concrete torus point μ'.
    pub fn eval_numeric(&self, mu_prime: Weight) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.numerator.eval_numeric(mu_prime) / t.denominator.eval_numeric(mu_prime))
            .sum()
    }
}

/// Exact standard S-matrix value S[(ξ,μ);(ξ',μ')] for concrete cosets.
pub fn standard_s_value(xi: Coweight, mu: Weight, xi2: Coweight, mu2: Weight) -> PhaseAngle {
    PhaseAngle::new(
        killing_coweight(xi, xi2) * rat(3, 2) - pairing(mu, xi2) - pairing(mu2, xi),
    )
}

/// Standard S-matrix entry with the μ'-dependence kept symbolic: a single
/// torus character of frequency −ξ.
pub fn standard_s_entry(xi: Coweight, mu: CosetQ, xi2: Coweight) -> SMatrixEntry {
    let phase = PhaseAngle::new(killing_coweight(xi, xi2) * rat(3, 2) - pairing(mu.rep(), xi2));
    SMatrixEntry {
        terms: vec![ConeSeries::ray(
            FourierPoly::term(-xi, PhaseSum::from_phase(phase)),
            FourierPoly::one(),
            -comega2(),
        )],
    }
}

/// The 7-term vacuum S-matrix denominator
/// 2(1 + cos 2π⟨μ',ω₁∨⟩ + cos 2π⟨μ',ω₂∨⟩ + cos 2π⟨μ',ω₁∨−ω₂∨⟩).
pub fn vacuum_denominator() -> FourierPoly {
    let mut p = FourierPoly::constant(2);
    for u in [comega1(), comega2(), comega1() - comega2()] {
        p.add_term(u, PhaseSum::one());
        p.add_term(-u, PhaseSum::one());
    }
    p
}

/// Default completion cone for highest-weight entries: spanned by −ω₂∨ and
/// ω₃∨ = ω₂∨ − ω₁∨.
pub fn default_hw_cone() -> (Coweight, Coweight) {
    (-comega2(), comega3())
}

/// Semirelaxed S-matrix entry for the g-twist of S[μ], as a geometric-series
/// completion of  S[(ξ,g(μ));(ξ',μ')] / (1 + e^{2πi⟨μ',g(ω₂∨)⟩}).
///
/// The half-angle prefactor of the closed form has been cleared into the
/// denominator, keeping all frequencies in the coweight lattice.
pub fn semi_relaxed_s_entry(
    xi: Coweight,
    xi2: Coweight,
    mu: Weight,
    g: D6Element,
    cone_dir: Coweight,
) -> SMatrixEntry {
    let gm = g.apply(mu);
    let phase = PhaseAngle::new(killing_coweight(xi, xi2) * rat(3, 2) - pairing(gm, xi2));
    let den = FourierPoly::one()
        + FourierPoly::term(g.apply_coweight(comega2()), PhaseSum::one());
    SMatrixEntry {
        terms: vec![ConeSeries::ray(
            FourierPoly::term(-xi, PhaseSum::from_phase(phase)),
            den,
            cone_dir,
        )],
    }
}

/// The four highest-weight classes of M(3,2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwClass {
    Vacuum,
    MinusThreeHalfOmega1,
    MinusThreeHalfOmega2,
    MinusRhoHalf,
}

impl HwClass {
    pub fn weight(&self) -> Weight {
        match self {
            HwClass::Vacuum => Weight::zero(),
            HwClass::MinusThreeHalfOmega1 => Weight::new(rat(-3, 2), Rat::zero()),
            HwClass::MinusThreeHalfOmega2 => Weight::new(Rat::zero(), rat(-3, 2)),
            HwClass::MinusRhoHalf => rho().scale(rat(-1, 2)),
        }
    }

    pub fn of_weight(w: Weight) -> Option<HwClass> {
        [
            HwClass::Vacuum,
            HwClass::MinusThreeHalfOmega1,
            HwClass::MinusThreeHalfOmega2,
            HwClass::MinusRhoHalf,
        ]
        .into_iter()
        .find(|c| c.weight() == w)
    }
}

fn hw_vacuum_family_term(xi_shifted: Coweight, xi2: Coweight, sign: i64) -> ConeSeries {
    // e^{2πi(3κ(ξ+ω₁∨,ξ')/2 − ⟨μ',ξ+ω₁∨⟩)} / vacuum denominator, with the
    // flow already shifted so that ξ_shifted = ξ + ω₁∨.
    let phase = PhaseAngle::new(killing_coweight(xi_shifted, xi2) * rat(3, 2));
    ConeSeries::new(
        FourierPoly::term(-xi_shifted, PhaseSum::scaled_phase(phase, sign)),
        vacuum_denominator(),
        default_hw_cone(),
    )
}

/// Highest-weight S-matrix entry for σ^ξ of one of the four (3,2) classes.
///
/// The −3/2·ω₁ class carries the closed form; the vacuum and −3/2·ω₂
/// classes are its spectral flows, and −ρ/2 resolves through a semirelaxed
/// entry minus a flowed vacuum entry.
pub fn hw_s_entry(xi: Coweight, class: HwClass, xi2: Coweight) -> SMatrixEntry {
    match class {
        HwClass::MinusThreeHalfOmega1 => SMatrixEntry {
            terms: vec![hw_vacuum_family_term(xi + comega1(), xi2, 1)],
        },
        HwClass::Vacuum => SMatrixEntry {
            terms: vec![hw_vacuum_family_term(xi, xi2, 1)],
        },
        HwClass::MinusThreeHalfOmega2 => SMatrixEntry {
            terms: vec![hw_vacuum_family_term(xi + comega2(), xi2, 1)],
        },
        HwClass::MinusRhoHalf => {
            let mut semi = semi_relaxed_s_entry(
                xi,
                xi2,
                rho().scale(rat(-1, 2)),
                D6Element::identity(),
                -comega2(),
            );
            semi.terms
                .push(hw_vacuum_family_term(xi + comega3(), xi2, -1));
            semi
        }
    }
}

// ---------------------------------------------------------------------------
// delta-reduced S-matrix identities
// ---------------------------------------------------------------------------

/// Result of a delta-reduced pairing of standard S-matrix rows: either zero
/// or a symbolic coset delta δ([a·μ + b·μ' + shift]) with a > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaReduced {
    Zero,
    CosetDelta {
        mu_coeff: i64,
        mu2_coeff: i64,
        shift: CosetQ,
    },
}

fn normalised_delta(mu_coeff: i64, mu2_coeff: i64, shift: Weight) -> DeltaReduced {
    // δ is even on the torus, so normalise the leading coefficient positive
    let flip = mu_coeff < 0 || (mu_coeff == 0 && mu2_coeff < 0);
    let s = if flip { -1 } else { 1 };
    DeltaReduced::CosetDelta {
        mu_coeff: s * mu_coeff,
        mu2_coeff: s * mu2_coeff,
        shift: CosetQ::new(shift.scale(Rat::from_integer(s))),
    }
}

/// Σ_{ξ''} ∫ S[(ξ,μ);(ξ'',μ'')] conj S[(ξ'',μ'');(ξ',μ')] dμ'' with μ, μ'
/// symbolic, reduced exactly through torus integration and the dual comb.
pub fn unitarity_pairing(xi: Coweight, xi2: Coweight) -> DeltaReduced {
    // total μ''-frequency of the product is ξ' − ξ; integration kills it
    // unless it vanishes
    let mu2_freq = xi2 - xi;
    let probe = FourierPoly::term(mu2_freq, PhaseSum::one());
    if crate::torusfourier::integrate_torus(&probe).is_zero() {
        return DeltaReduced::Zero;
    }
    // remaining ξ''-sum of e^{2πi⟨(3/2)(ξ−ξ')* − μ + μ', ξ''⟩} is a comb
    // forcing the argument into the root lattice
    let shift = (xi - xi2).dual_weight().scale(rat(3, 2));
    normalised_delta(-1, 1, shift)
}

/// Same pairing without conjugation: S² picks out the conjugation
/// permutation δ_{ξ,−ξ'} δ([μ+μ']).
pub fn s_squared_pairing(xi: Coweight, xi2: Coweight) -> DeltaReduced {
    let mu2_freq = -(xi + xi2);
    let probe = FourierPoly::term(mu2_freq, PhaseSum::one());
    if crate::torusfourier::integrate_torus(&probe).is_zero() {
        return DeltaReduced::Zero;
    }
    let shift = (xi + xi2).dual_weight().scale(rat(3, 2));
    normalised_delta(-1, -1, shift)
}

/// Exact verification of unitarity over a square window of flows.
pub fn verify_unitarity(window: i64) -> bool {
    for a in -window..=window {
        for b in -window..=window {
            for c in -window..=window {
                for d in -window..=window {
                    let xi = Coweight::new(a, b);
                    let xi2 = Coweight::new(c, d);
                    let got = unitarity_pairing(xi, xi2);
                    let expect = if xi == xi2 {
                        DeltaReduced::CosetDelta {
                            mu_coeff: 1,
                            mu2_coeff: -1,
                            shift: CosetQ::new(Weight::zero()),
                        }
                    } else {
                        DeltaReduced::Zero
                    };
                    if got != expect {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Exact verification of S² = conjugation over a square window of flows.
pub fn verify_s_squared(window: i64) -> bool {
    for a in -window..=window {
        for b in -window..=window {
            for c in -window..=window {
                for d in -window..=window {
                    let xi = Coweight::new(a, b);
                    let xi2 = Coweight::new(c, d);
                    let got = s_squared_pairing(xi, xi2);
                    let expect = if xi2 == -xi {
                        DeltaReduced::CosetDelta {
                            mu_coeff: 1,
                            mu2_coeff: 1,
                            shift: CosetQ::new(Weight::zero()),
                        }
                    } else {
                        DeltaReduced::Zero
                    };
                    if got != expect {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// modular coordinate action
// ---------------------------------------------------------------------------

/// A point (θ, ζ, τ) in the character coordinates, ζ in complex coweight
/// coordinates and τ in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterPoint {
    pub theta: Complex64,
    pub zeta: (Complex64, Complex64),
    pub tau: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularOp {
    S,
    T,
}

/// The proposed modular action on coordinates, with the principal branch of
/// the argument.
pub fn modular_action(op: ModularOp, pt: &CharacterPoint) -> CharacterPoint {
    match op {
        ModularOp::S => {
            let kzz = kappa_complex(pt.zeta.0, pt.zeta.1, pt.zeta);
            let arg_tau = pt.tau.arg();
            let arg_m1 = PI;
            CharacterPoint {
                theta: pt.theta - kzz / (2.0 * pt.tau) - (2.0 * arg_tau - arg_m1) / (3.0 * PI),
                zeta: (pt.zeta.0 / pt.tau, pt.zeta.1 / pt.tau),
                tau: -1.0 / pt.tau,
            }
        }
        ModularOp::T => CharacterPoint {
            theta: pt.theta - Complex64::from(PI / (9.0 * PI)),
            zeta: pt.zeta,
            tau: pt.tau + 1.0,
        },
    }
}

fn point_distance(a: &CharacterPoint, b: &CharacterPoint) -> f64 {
    (a.theta - b.theta).norm()
        + (a.zeta.0 - b.zeta.0).norm()
        + (a.zeta.1 - b.zeta.1).norm()
        + (a.tau - b.tau).norm()
}

/// Numeric check of S⁴ = 1 and (ST)³ = S² at a sample point.
pub fn verify_modular_relations(pt: &CharacterPoint, tol: f64) -> bool {
    let s = |p: &CharacterPoint| modular_action(ModularOp::S, p);
    let t = |p: &CharacterPoint| modular_action(ModularOp::T, p);
    let s4 = s(&s(&s(&s(pt))));
    if point_distance(&s4, pt) > tol {
        return false;
    }
    let st = |p: &CharacterPoint| s(&t(p));
    let st3 = st(&st(&st(pt)));
    let s2 = s(&s(pt));
    point_distance(&st3, &s2) < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{alpha1, unit_coweights};
    use num_traits::ToPrimitive;
    use crate::torusfourier::NUMERIC_TOLERANCE;

    #[test]
    fn scope_guard() {
        assert!(ensure_m32(Level::new(3, 2).unwrap()).is_ok());
        assert_eq!(
            ensure_m32(Level::new(4, 3).unwrap()),
            Err(ScopeError::LinearlyDependentCharacters { u: 4, v: 3 })
        );
        assert_eq!(
            ensure_m32(Level::new(5, 1).unwrap()),
            Err(ScopeError::IntegrableLevel { u: 5 })
        );
    }

    #[test]
    fn eta_inverse_fourth_leading_coefficients() {
        let s = eta_inv_fourth(4);
        assert_eq!(s.leading_exponent, rat(-1, 6));
        let expect: Vec<i64> = vec![1, 4, 14, 40, 105];
        let got: Vec<i64> = s.coefficients.iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn standard_entry_values() {
        let zero = CosetQ::new(Weight::zero());
        // all exponents vanish
        let e = standard_s_entry(Coweight::zero(), zero, Coweight::zero());
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].numerator, FourierPoly::one());
        // ξ=ω₁∨, ξ'=ω₂∨, μ=μ'=0 → e^{2πi(3/2·1/3)} = −1
        let v = standard_s_value(comega1(), Weight::zero(), comega2(), Weight::zero());
        assert_eq!(v, PhaseAngle::new(rat(1, 2)));
        assert!((PhaseSum::from_phase(v).eval() + Complex64::one()).norm() < 1e-14);
    }

    #[test]
    fn standard_entry_symmetry() {
        let pts = [
            (Weight::new(rat(1, 4), rat(2, 5)), Weight::new(rat(3, 7), Rat::zero())),
            (Weight::new(rat(-1, 3), rat(1, 2)), Weight::new(rat(2, 9), rat(1, 8))),
        ];
        for (mu, mu2) in pts {
            for xi in unit_coweights() {
                for xi2 in unit_coweights() {
                    assert_eq!(
                        standard_s_value(xi, mu, xi2, mu2),
                        standard_s_value(xi2, mu2, xi, mu)
                    );
                }
            }
        }
    }

    #[test]
    fn vacuum_entry_at_origin_is_one_eighth() {
        let e = hw_s_entry(Coweight::zero(), HwClass::Vacuum, Coweight::zero());
        let v = e.eval_numeric(Weight::zero());
        assert!((v - Complex64::from(0.125)).norm() < 1e-14);
        // numerator of the −3/2ω₁ entry at ξ=−ω₁∨ reduces to 1
        let base = hw_s_entry(-comega1(), HwClass::MinusThreeHalfOmega1, comega2());
        assert_eq!(base.terms[0].numerator, FourierPoly::one());
        assert_eq!(base.terms[0].denominator, vacuum_denominator());
        // cosine evenness of the denominator
        let mu = Weight::new(rat(1, 5), rat(2, 7));
        let d1 = vacuum_denominator().eval_numeric(mu);
        let d2 = vacuum_denominator().eval_numeric(-mu);
        assert!((d1 - d2).norm() < 1e-12);
    }

    // term-by-term S-transform of the semirelaxed resolution, for comparison
    // against the geometric-series completion: each resolution term
    // σ^{m·ω₂∨} R[ν] contributes its standard entry, a character of
    // frequency −(ξ+mω₂∨) with phase 3κ(ξ+mω₂∨,ξ')/2 − ⟨ν,ξ'⟩.
    fn semi_termwise(
        xi: Coweight,
        xi2: Coweight,
        mu: Weight,
        terms: usize,
        positive_side: bool,
    ) -> FourierPoly {
        let mut out = FourierPoly::zero();
        let half_a1 = alpha1().scale(rat(1, 2));
        let mut push = |m: i64, nu: Weight, sign: i64| {
            let flow = xi + comega2() * m;
            let phase =
                PhaseAngle::new(killing_coweight(flow, xi2) * rat(3, 2) - pairing(nu, xi2));
            out.add_term(-flow, PhaseSum::scaled_phase(phase, sign));
        };
        for n in 0..terms as i64 {
            if positive_side {
                // Σ_{n≥1} [σ^{(2n−1)ω₂∨}R[μ+α₁/2] − σ^{2nω₂∨}R[μ]]
                push(2 * n + 1, mu + half_a1, 1);
                push(2 * n + 2, mu, -1);
            } else {
                // Σ_{n≥0} [σ^{−2nω₂∨}R[μ] − σ^{−(2n+1)ω₂∨}R[μ−α₁/2]]
                push(-2 * n, mu, 1);
                push(-(2 * n + 1), mu - half_a1, -1);
            }
        }
        out
    }

    #[test]
    fn semi_relaxed_expansion_matches_termwise_sums() {
        let fam = crate::admissible::m32_relaxed_base();
        let mu = fam + alpha1().scale(rat(1, 3));
        let xi = Coweight::zero();
        for xi2 in [Coweight::zero(), comega1(), comega2() - comega1()] {
            // completion along −ω₂∨: frequencies grow along +ω₂∨
            let entry = semi_relaxed_s_entry(xi, xi2, mu, D6Element::identity(), -comega2());
            // y = e^{⟨μ',ω₂∨⟩} has grade 4 in this cone
            let order = 4 * 11;
            let expansion = entry.expand(order).unwrap();
            let termwise = semi_termwise(xi, xi2, mu, 6, false);
            for m in 0..=10i64 {
                let f = -(xi - comega2() * m);
                assert_eq!(
                    expansion.coefficient(f),
                    termwise.coefficient(f),
                    "coefficient at step {m} for xi2 {xi2}"
                );
            }
        }
    }

    #[test]
    fn semi_relaxed_opposite_cone_matches_other_resolution() {
        let fam = crate::admissible::m32_relaxed_base();
        let mu = fam + alpha1().scale(rat(2, 5));
        let xi = Coweight::zero();
        for xi2 in [Coweight::zero(), comega2()] {
            let entry = semi_relaxed_s_entry(xi, xi2, mu, D6Element::identity(), comega2());
            let order = 4 * 11;
            let expansion = entry.expand(order).unwrap();
            let termwise = semi_termwise(xi, xi2, mu, 6, true);
            for m in 1..=10i64 {
                let f = -(xi + comega2() * m);
                assert_eq!(
                    expansion.coefficient(f),
                    termwise.coefficient(f),
                    "coefficient at step −{m} for xi2 {xi2}"
                );
            }
        }
    }

    #[test]
    fn unitarity_and_s_squared() {
        assert!(verify_unitarity(2));
        assert!(verify_s_squared(2));
        // spot-check the delta data
        assert_eq!(
            unitarity_pairing(comega1(), comega1()),
            DeltaReduced::CosetDelta {
                mu_coeff: 1,
                mu2_coeff: -1,
                shift: CosetQ::new(Weight::zero())
            }
        );
        assert_eq!(unitarity_pairing(comega1(), comega2()), DeltaReduced::Zero);
        assert_eq!(
            s_squared_pairing(comega1(), -comega1()),
            DeltaReduced::CosetDelta {
                mu_coeff: 1,
                mu2_coeff: 1,
                shift: CosetQ::new(Weight::zero())
            }
        );
    }

    #[test]
    fn modular_relations_hold_numerically() {
        let mut state = 11u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        for _ in 0..20 {
            let pt = CharacterPoint {
                theta: Complex64::new(next(), next()),
                zeta: (
                    Complex64::new(next(), next()),
                    Complex64::new(next(), next()),
                ),
                tau: Complex64::new(next(), 0.6 + next().abs()),
            };
            assert!(verify_modular_relations(&pt, NUMERIC_TOLERANCE));
        }
        // T shifts τ by one and θ by −1/9
        let pt = CharacterPoint {
            theta: Complex64::zero(),
            zeta: (Complex64::zero(), Complex64::zero()),
            tau: Complex64::new(0.3, 1.1),
        };
        let t = modular_action(ModularOp::T, &pt);
        assert!((t.tau - (pt.tau + 1.0)).norm() < 1e-15);
        assert!((t.theta - Complex64::from(-1.0 / 9.0)).norm() < 1e-15);
    }

    #[test]
    fn flow_covariance_of_standard_characters() {
        let lvl = Level::new(3, 2).unwrap();
        let mut state = 5u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        let coset = CosetQ::new(Weight::new(rat(1, 4), rat(1, 5)));
        for _ in 0..20 {
            let xi = Coweight::new((next() * 4.0) as i64, (next() * 4.0) as i64);
            let delta = Coweight::new((next() * 4.0) as i64, (next() * 4.0) as i64);
            let theta = Complex64::new(next(), next());
            let tau = Complex64::new(next(), 0.8 + next().abs());
            let test = (Rat::from_integer((next() * 3.0) as i64), Rat::from_integer((next() * 3.0) as i64));
            let flowed = StandardCharacter::new(xi + delta, coset, lvl).unwrap();
            let base = StandardCharacter::new(xi, coset, lvl).unwrap();
            let lhs = flowed.pairing_numeric(test, theta, tau);
            // ch σ^δ M (θ,ζ,τ) = ch M (θ+κ(ζ,δ)+κ(δ,δ)τ/2, ζ+τδ, τ)
            let zeta = (
                Complex64::from(*test.0.numer() as f64) - tau * (xi.c1 + delta.c1) as f64,
                Complex64::from(*test.1.numer() as f64) - tau * (xi.c2 + delta.c2) as f64,
            );
            let dz = (Complex64::from(delta.c1 as f64), Complex64::from(delta.c2 as f64));
            let kzd = kappa_complex(zeta.0, zeta.1, dz);
            let kdd = kappa_complex(dz.0, dz.1, dz);
            let theta2 = theta + kzd + kdd * tau / 2.0;
            let zeta2 = (zeta.0 + tau * dz.0, zeta.1 + tau * dz.1);
            let rhs = base.prefactor_numeric(theta2, zeta2, tau);
            assert!(
                (lhs - rhs).norm() < NUMERIC_TOLERANCE,
                "flow covariance failed: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn off_lattice_pairing_vanishes() {
        let lvl = Level::new(3, 2).unwrap();
        let ch = StandardCharacter::new(Coweight::zero(), CosetQ::new(Weight::zero()), lvl).unwrap();
        let v = ch.pairing_numeric(
            (rat(1, 2), Rat::zero()),
            Complex64::zero(),
            Complex64::new(0.0, 1.0),
        );
        assert_eq!(v, Complex64::zero());
    }

    #[test]
    fn pairing_value_at_origin() {
        // ξ=0, test 0: e^{−3πiθ} η(τ)⁻⁴ e^{2πi⟨μ,0⟩}
        let lvl = Level::new(3, 2).unwrap();
        let coset = CosetQ::new(Weight::new(rat(1, 4), rat(1, 5)));
        let ch = StandardCharacter::new(Coweight::zero(), coset, lvl).unwrap();
        let theta = Complex64::new(0.21, -0.11);
        let tau = Complex64::new(0.13, 1.4);
        let got = ch.pairing_numeric((Rat::zero(), Rat::zero()), theta, tau);
        let expect =
            (-3.0 * PI * Complex64::i() * theta).exp() / eta_numeric(tau).powu(4);
        assert!((got - expect).norm() < 1e-12);
    }
}
