//! Exact algebra of finite Fourier sums on the torus h*ℝ/Q with
//! coweight-lattice frequencies and rational-angle phase coefficients.
//!
//! Phase coefficients live in the group ring ℤ[ℚ/ℤ]; zero-testing reduces a
//! sum modulo the cyclotomic polynomial of the common angle denominator, so
//! every identity downstream (torus integration, Dirac-comb reduction, the
//! Verlinde delta pipeline) is decided exactly.

use crate::rootdata::{killing_coweight, pairing, Coweight, Rat, Weight};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Default numeric tolerance for the floating cross-checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-10;
/// Default truncation radius (coweight coordinates) for numeric sums.
pub const TRUNCATION_RADIUS: i64 = 6;
/// Default grid refinement for the finite Dirac-comb verification.
pub const COMB_GRID: i64 = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("leading denominator term is not unique in the cone order")]
    AmbiguousLeadingTerm,
    #[error("leading denominator coefficient is not a root of unity")]
    NonInvertibleLeadingTerm,
    #[error("denominator is zero")]
    ZeroDenominator,
}

/// e^{2πi·angle} with the angle kept exactly, reduced into [0,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseAngle(Rat);

impl PhaseAngle {
    pub fn new(angle: Rat) -> PhaseAngle {
        PhaseAngle(angle - angle.floor())
    }

    pub fn zero() -> PhaseAngle {
        PhaseAngle(Rat::zero())
    }

    pub fn angle(&self) -> Rat {
        self.0
    }

    pub fn eval(&self) -> Complex64 {
        let theta = TAU * to_f64(self.0);
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Add for PhaseAngle {
    type Output = PhaseAngle;
    fn add(self, rhs: PhaseAngle) -> PhaseAngle {
        PhaseAngle::new(self.0 + rhs.0)
    }
}

impl Neg for PhaseAngle {
    type Output = PhaseAngle;
    fn neg(self) -> PhaseAngle {
        PhaseAngle::new(-self.0)
    }
}

fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// An integer combination of roots of unity, held in the canonical reduced
/// form modulo the cyclotomic polynomial of the common denominator.
///
/// Reduced forms over different cyclotomic fields may present the same value
/// differently, so equality subtracts and tests for zero, which is exact.
#[derive(Debug, Clone, Default)]
pub struct PhaseSum {
    terms: BTreeMap<Rat, i64>,
}

impl PhaseSum {
    pub fn zero() -> PhaseSum {
        PhaseSum::default()
    }

    pub fn one() -> PhaseSum {
        PhaseSum::from_phase(PhaseAngle::zero())
    }

    pub fn from_phase(p: PhaseAngle) -> PhaseSum {
        let mut terms = BTreeMap::new();
        terms.insert(p.angle(), 1);
        PhaseSum { terms }.reduced()
    }

    pub fn from_integer(n: i64) -> PhaseSum {
        let mut terms = BTreeMap::new();
        if n != 0 {
            terms.insert(Rat::zero(), n);
        }
        PhaseSum { terms }
    }

    pub fn scaled_phase(p: PhaseAngle, coeff: i64) -> PhaseSum {
        PhaseSum::from_phase(p).scaled(coeff)
    }

    pub fn scaled(&self, c: i64) -> PhaseSum {
        let mut terms = BTreeMap::new();
        if c != 0 {
            for (a, m) in &self.terms {
                terms.insert(*a, m * c);
            }
        }
        PhaseSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (PhaseAngle, i64)> + '_ {
        self.terms.iter().map(|(a, m)| (PhaseAngle(*a), *m))
    }

    pub fn eval(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, m)| PhaseAngle(*a).eval() * (*m as f64))
            .sum()
    }

    /// Recognise the sum as ±(a root of unity), the invertible elements the
    /// cone expansion can divide by.
    pub fn as_root_of_unity(&self) -> Option<(i64, PhaseAngle)> {
        if self.is_zero() {
            return None;
        }
        let n = self.denominator_lcm();
        for k in 0..n {
            let cand = PhaseAngle::new(Rat::new(k, n));
            for sign in [1i64, -1] {
                if (self.clone() - PhaseSum::scaled_phase(cand, sign)).is_zero() {
                    return Some((sign, cand));
                }
            }
        }
        None
    }

    fn denominator_lcm(&self) -> i64 {
        self.terms
            .keys()
            .fold(1i64, |acc, a| num_integer::lcm(acc, *a.denom()))
    }

    fn reduced(self) -> PhaseSum {
        if self.terms.is_empty() {
            return self;
        }
        let n = self.denominator_lcm();
        if n == 1 {
            let c = self.terms.get(&Rat::zero()).copied().unwrap_or(0);
            return PhaseSum::from_integer(c);
        }
        let mut coeffs = vec![0i64; n as usize];
        for (a, m) in &self.terms {
            let k = a.numer() * (n / a.denom());
            coeffs[k as usize] += m;
        }
        let rem = poly_mod(&coeffs, &cyclotomic(n));
        let mut terms = BTreeMap::new();
        for (k, c) in rem.iter().enumerate() {
            if *c != 0 {
                terms.insert(Rat::new(k as i64, n), *c);
            }
        }
        PhaseSum { terms }
    }
}

impl PartialEq for PhaseSum {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for PhaseSum {}

impl Add for PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: PhaseSum) -> PhaseSum {
        let mut terms = self.terms;
        for (a, m) in rhs.terms {
            let e = terms.entry(a).or_insert(0);
            *e += m;
            if *e == 0 {
                terms.remove(&a);
            }
        }
        PhaseSum { terms }.reduced()
    }
}

impl Sub for PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: PhaseSum) -> PhaseSum {
        self + rhs.neg()
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        self.scaled(-1)
    }
}

impl Mul for PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: PhaseSum) -> PhaseSum {
        let mut terms: BTreeMap<Rat, i64> = BTreeMap::new();
        for (a, m) in &self.terms {
            for (b, n) in &rhs.terms {
                let angle = PhaseAngle::new(*a + *b).angle();
                let e = terms.entry(angle).or_insert(0);
                *e += m * n;
                if *e == 0 {
                    terms.remove(&angle);
                }
            }
        }
        PhaseSum { terms }.reduced()
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if *m < 0 { "-" } else { "+" })?;
            } else if *m < 0 {
                write!(f, "-")?;
            }
            let c = m.abs();
            if a.is_zero() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "e({a})")?;
            } else {
                write!(f, "{c}*e({a})")?;
            }
        }
        Ok(())
    }
}

/// n-th cyclotomic polynomial coefficients, low degree first.
fn cyclotomic(n: i64) -> Vec<i64> {
    // Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d, computed by exact division.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|c| *c == 0), "division was not exact");
    quot
}

fn poly_mod(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[shift + j] -= c * dj;
            }
        }
        rem.pop();
    }
    rem
}

/// A finite Fourier sum Σ_ξ c_ξ e^{2πi⟨μ,ξ⟩} on the torus h*ℝ/Q, with
/// coweight frequencies and PhaseSum coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FourierPoly {
    terms: BTreeMap<Coweight, PhaseSum>,
}

impl FourierPoly {
    pub fn zero() -> FourierPoly {
        FourierPoly::default()
    }

    pub fn one() -> FourierPoly {
        FourierPoly::term(Coweight::zero(), PhaseSum::one())
    }

    pub fn term(freq: Coweight, coeff: PhaseSum) -> FourierPoly {
        let mut p = FourierPoly::zero();
        p.add_term(freq, coeff);
        p
    }

    pub fn constant(n: i64) -> FourierPoly {
        FourierPoly::term(Coweight::zero(), PhaseSum::from_integer(n))
    }

    pub fn add_term(&mut self, freq: Coweight, coeff: PhaseSum) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(freq).or_insert_with(PhaseSum::zero);
        let new = slot.clone() + coeff;
        if new.is_zero() {
            self.terms.remove(&freq);
        } else {
            *slot = new;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Coweight, &PhaseSum)> {
        self.terms.iter().map(|(f, c)| (*f, c))
    }

    pub fn coefficient(&self, freq: Coweight) -> PhaseSum {
        self.terms.get(&freq).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, c: &PhaseSum) -> FourierPoly {
        let mut out = FourierPoly::zero();
        for (f, s) in &self.terms {
            out.add_term(*f, s.clone() * c.clone());
        }
        out
    }

    /// Multiply by the single torus character e^{2πi⟨μ,ξ⟩}.
    pub fn freq_shifted(&self, xi: Coweight) -> FourierPoly {
        let mut out = FourierPoly::zero();
        for (f, s) in &self.terms {
            out.add_term(*f + xi, s.clone());
        }
        out
    }

    /// Numeric evaluation at a weight μ.
    pub fn eval_numeric(&self, mu: Weight) -> Complex64 {
        self.terms
            .iter()
            .map(|(f, c)| PhaseAngle::new(pairing(mu, *f)).eval() * c.eval())
            .sum()
    }
}

impl Add for FourierPoly {
    type Output = FourierPoly;
    fn add(self, rhs: FourierPoly) -> FourierPoly {
        let mut out = self;
        for (f, c) in rhs.terms {
            out.add_term(f, c);
        }
        out
    }
}

impl Sub for FourierPoly {
    type Output = FourierPoly;
    fn sub(self, rhs: FourierPoly) -> FourierPoly {
        let mut out = self;
        for (f, c) in rhs.terms {
            out.add_term(f, c.neg());
        }
        out
    }
}

impl Neg for FourierPoly {
    type Output = FourierPoly;
    fn neg(self) -> FourierPoly {
        FourierPoly::zero() - self
    }
}

impl Mul for FourierPoly {
    type Output = FourierPoly;
    fn mul(self, rhs: FourierPoly) -> FourierPoly {
        let mut out = FourierPoly::zero();
        for (f, c) in &self.terms {
            for (g, d) in &rhs.terms {
                out.add_term(*f + *g, c.clone() * d.clone());
            }
        }
        out
    }
}

impl fmt::Display for FourierPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (fr, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*x{fr}")?;
        }
        Ok(())
    }
}

/// Integration over the torus h*ℝ/Q with unit total measure: picks out the
/// coefficient at frequency zero.
pub fn integrate_torus(p: &FourierPoly) -> PhaseSum {
    p.coefficient(Coweight::zero())
}

/// The two lattices whose character sums reduce to Dirac combs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Root,
    Coweight,
}

/// Symbolic lattice sum Σ_{l∈L} e^{2πi⟨l,ζ⟩}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSum(pub LatticeKind);

/// Formal Dirac comb Σ_{γ∈L} δ(ζ−γ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaComb(pub LatticeKind);

/// A lattice character sum is a Dirac comb on the dual lattice.
pub fn comb_reduce(s: LatticeSum) -> DeltaComb {
    match s.0 {
        LatticeKind::Root => DeltaComb(LatticeKind::Coweight),
        LatticeKind::Coweight => DeltaComb(LatticeKind::Root),
    }
}

/// Finite verification of the comb identity: over ℤ²/nℤ² the truncated
/// root-lattice character sum at grid points ζ ∈ (1/n)P∨ equals n² exactly
/// on the coweight lattice and 0 elsewhere.
pub fn verify_comb_identity(n: i64, tol: f64) -> bool {
    for m1 in 0..n {
        for m2 in 0..n {
            // ⟨aα₁+bα₂, (m1ω₁∨+m2ω₂∨)/n⟩ = (a m1 + b m2)/n
            let mut sum = Complex64::zero();
            for a in -(n / 2)..(n - n / 2) {
                for b in -(n / 2)..(n - n / 2) {
                    sum += PhaseAngle::new(Rat::new(a * m1 + b * m2, n)).eval();
                }
            }
            let expected = if m1 == 0 && m2 == 0 {
                Complex64::new((n * n) as f64, 0.0)
            } else {
                Complex64::zero()
            };
            if (sum - expected).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// A rational function of torus characters, tagged with the cone that fixes
/// its geometric-series completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSeries {
    pub numerator: FourierPoly,
    pub denominator: FourierPoly,
    pub cone: (Coweight, Coweight),
}

impl ConeSeries {
    pub fn new(
        numerator: FourierPoly,
        denominator: FourierPoly,
        cone: (Coweight, Coweight),
    ) -> ConeSeries {
        ConeSeries {
            numerator,
            denominator,
            cone,
        }
    }

    pub fn ray(numerator: FourierPoly, denominator: FourierPoly, dir: Coweight) -> ConeSeries {
        ConeSeries::new(numerator, denominator, (dir, dir))
    }
}

/// Integer grade of a frequency in the growth order opposite the completion
/// cone: frequencies of the expansion increase along −(u+v).
fn cone_grade(xi: Coweight, cone: (Coweight, Coweight)) -> i64 {
    let w = -(cone.0 + cone.1);
    let g = killing_coweight(xi, w) * 3;
    debug_assert!(g.is_integer());
    g.to_integer()
}

/// Partial sum of the cone-directed geometric expansion of a ConeSeries,
/// keeping every term whose grade exceeds the leading one by at most
/// `order`.  Earlier coefficients are stable as the order grows.
pub fn cone_expand(s: &ConeSeries, order: u32) -> Result<FourierPoly, ConeError> {
    if s.denominator.is_zero() {
        return Err(ConeError::ZeroDenominator);
    }
    let grades: Vec<(Coweight, i64)> = s
        .denominator
        .terms()
        .map(|(f, _)| (f, cone_grade(f, s.cone)))
        .collect();
    let min_grade = grades.iter().map(|(_, g)| *g).min().unwrap();
    let leading: Vec<Coweight> = grades
        .iter()
        .filter(|(_, g)| *g == min_grade)
        .map(|(f, _)| *f)
        .collect();
    if leading.len() != 1 {
        return Err(ConeError::AmbiguousLeadingTerm);
    }
    let xi0 = leading[0];
    let c0 = s.denominator.coefficient(xi0);
    let (sign, angle) = c0
        .as_root_of_unity()
        .ok_or(ConeError::NonInvertibleLeadingTerm)?;
    let c0_inv = PhaseSum::scaled_phase(-angle, sign);
    // r = den·c₀⁻¹·e^{−ξ₀} − 1 has strictly positive grades
    let normalised = s
        .denominator
        .scaled(&c0_inv)
        .freq_shifted(-xi0);
    let r = normalised - FourierPoly::one();
    let truncate = |p: FourierPoly, limit: i64| -> FourierPoly {
        let mut out = FourierPoly::zero();
        for (f, c) in p.terms() {
            if cone_grade(f, s.cone) <= limit {
                out.add_term(f, c.clone());
            }
        }
        out
    };
    let limit = order as i64;
    let mut series = FourierPoly::one();
    let mut power = FourierPoly::one();
    loop {
        power = truncate(power * r.clone().neg(), limit);
        if power.is_zero() {
            break;
        }
        series = series + power.clone();
    }
    // 1/den = e^{−ξ₀}·c₀⁻¹·series
    let inv = series.scaled(&c0_inv).freq_shifted(-xi0);
    Ok(s.numerator.clone() * inv)
}
