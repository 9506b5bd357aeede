//! Labels for isomorphism classes of irreducible weight M(u,v)-modules.
//!
//! A label is a core (highest-weight, semirelaxed or relaxed family datum)
//! together with a D₆ twist and a spectral-flow coweight, read as
//! σ^flow ∘ twist ∘ core.  Labels related by the identification rules (Weyl
//! absorption, Dynkin rewriting, positive-energy spectral-flow
//! identifications) name the same module; `canonicalize` closes a label's
//! identification orbit by breadth-first search and returns its minimum
//! under a fixed total order, so canonical labels compare by `==`.

use crate::admissible::{admissible_index, classify, singular_locus, AdmWeight};
use crate::rootdata::{
    comega1, comega2, d6_compose, is_natural, killing_coweight, pairing, rat, Coweight, D6Element,
    Level, Rat, Weight,
};
use num_traits::{One, Zero};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

const ORBIT_CAP: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("weight {0} is not admissible at {1}")]
    NotAdmissible(String, String),
    #[error("weight {0} does not parametrise a semirelaxed family at {1}")]
    NotSemiFamily(String, String),
    #[error("weight {0} does not parametrise a relaxed family at {1}")]
    NotRelaxedFamily(String, String),
    #[error("coset representative {0} does not lie on the family line of {1}")]
    NotOnFamilyLine(String, String),
    #[error("degenerate parameter {0}: the module is reducible, decompose it with degen")]
    DegenerateParameter(String),
    #[error("cannot parse label: {0}")]
    Parse(String),
}

/// A coset of the root lattice Q in h*, held by its unique representative
/// with first Dynkin label in [0,1) and second in [0,3), obtained by
/// reduction against the Hermite basis {(1,1),(0,3)} of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetQ {
    rep: Weight,
}

impl CosetQ {
    pub fn new(mu: Weight) -> CosetQ {
        let f = mu.d1.floor();
        let shifted = Weight::new(mu.d1 - f, mu.d2 - f);
        let g = (shifted.d2 / 3).floor();
        CosetQ {
            rep: Weight::new(shifted.d1, shifted.d2 - g * Rat::from_integer(3)),
        }
    }

    pub fn rep(&self) -> Weight {
        self.rep
    }

    pub fn map(&self, g: D6Element) -> CosetQ {
        CosetQ::new(g.apply(self.rep))
    }

    pub fn shift(&self, w: Weight) -> CosetQ {
        CosetQ::new(self.rep + w)
    }

    pub fn neg(&self) -> CosetQ {
        CosetQ::new(-self.rep)
    }
}

impl fmt::Display for CosetQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.rep.d1, self.rep.d2)
    }
}

/// Family core of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Core {
    /// Irreducible highest-weight module of the given admissible weight.
    Hw(Weight),
    /// Semirelaxed family member: family base λ ∈ Σ¹ and coset parameter
    /// t ∈ [0,1) along α₁, naming [λ + tα₁] ∈ (λ+ℂα₁)/ℤα₁.
    Semi { family: Weight, t: Rat },
    /// Relaxed family member: family base λ ∈ R² and a Q-coset.
    Rel { family: Weight, coset: CosetQ },
}

impl Core {
    fn key(&self) -> (u8, [Rat; 4]) {
        let z = Rat::zero();
        match self {
            Core::Hw(w) => (0, [w.d1, w.d2, z, z]),
            Core::Semi { family, t } => (1, [family.d1, family.d2, *t, z]),
            Core::Rel { family, coset } => {
                (2, [family.d1, family.d2, coset.rep().d1, coset.rep().d2])
            }
        }
    }
}

/// A module label σ^flow · twist · core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleLabel {
    pub flow: Coweight,
    pub twist: D6Element,
    pub core: Core,
}

fn order_key(m: &ModuleLabel) -> (i64, i64, i64, usize, (u8, [Rat; 4])) {
    (
        m.flow.norm1(),
        m.flow.c1,
        m.flow.c2,
        m.twist.index(),
        m.core.key(),
    )
}

impl PartialOrd for ModuleLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModuleLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        order_key(self).cmp(&order_key(other))
    }
}

/// The canonical (orbit-minimal) spelling of a label; equality of canonical
/// labels is isomorphism of the modules they name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(ModuleLabel);

impl CanonicalLabel {
    pub fn label(&self) -> &ModuleLabel {
        &self.0
    }

    pub fn into_label(self) -> ModuleLabel {
        self.0
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ModuleLabel {
    pub fn from_core(core: Core) -> ModuleLabel {
        ModuleLabel {
            flow: Coweight::zero(),
            twist: D6Element::identity(),
            core,
        }
    }

    /// Validated highest-weight label.
    pub fn hw(weight: Weight, lvl: Level) -> Result<ModuleLabel, LabelError> {
        let idx = admissible_index(lvl)
            .map_err(|_| LabelError::NotAdmissible(weight.to_string(), lvl.to_string()))?;
        if !idx.contains_key(&weight) {
            return Err(LabelError::NotAdmissible(
                weight.to_string(),
                lvl.to_string(),
            ));
        }
        Ok(ModuleLabel::from_core(Core::Hw(weight)))
    }

    /// Validated semirelaxed label from a family base and a coset parameter.
    pub fn semi(family: Weight, t: Rat, lvl: Level) -> Result<ModuleLabel, LabelError> {
        let adm = family_data(family, lvl)?;
        if !classify(&adm, lvl).in_sigma1 {
            return Err(LabelError::NotSemiFamily(
                family.to_string(),
                lvl.to_string(),
            ));
        }
        let t = frac_mod1(t);
        for bad in semi_degenerate_ts(family) {
            if t == bad {
                return Err(LabelError::DegenerateParameter(format!(
                    "S[{t}] on family {family}"
                )));
            }
        }
        Ok(ModuleLabel::from_core(Core::Semi { family, t }))
    }

    /// Validated semirelaxed label from a representative weight μ of the
    /// coset [μ] ∈ (λ+ℂα₁)/ℤα₁.
    pub fn semi_from_weight(
        family: Weight,
        mu: Weight,
        lvl: Level,
    ) -> Result<ModuleLabel, LabelError> {
        let t = alpha1_line_coord(family, mu)
            .ok_or_else(|| LabelError::NotOnFamilyLine(mu.to_string(), family.to_string()))?;
        ModuleLabel::semi(family, t, lvl)
    }

    /// Validated relaxed label.
    pub fn rel(family: Weight, coset: CosetQ, lvl: Level) -> Result<ModuleLabel, LabelError> {
        let adm = family_data(family, lvl)?;
        if !classify(&adm, lvl).in_r2 {
            return Err(LabelError::NotRelaxedFamily(
                family.to_string(),
                lvl.to_string(),
            ));
        }
        let sing = singular_locus(&adm, lvl).expect("family is in R2");
        if !sing.curves_through(coset.rep()).is_empty() {
            return Err(LabelError::DegenerateParameter(format!(
                "R{coset} on family {family}"
            )));
        }
        Ok(ModuleLabel::from_core(Core::Rel { family, coset }))
    }

    /// Twist by g: composes onto the twist after commuting past the flow.
    pub fn twisted(&self, g: D6Element) -> ModuleLabel {
        ModuleLabel {
            flow: g.apply_coweight(self.flow),
            twist: d6_compose(g, self.twist),
            core: self.core,
        }
    }

    /// Apply the spectral flow σ^ξ.
    pub fn flowed(&self, xi: Coweight) -> ModuleLabel {
        ModuleLabel {
            flow: self.flow + xi,
            twist: self.twist,
            core: self.core,
        }
    }
}

/// Free-function forms of the label operations.
pub fn twist(g: D6Element, m: &ModuleLabel) -> ModuleLabel {
    m.twisted(g)
}

pub fn flow_apply(xi: Coweight, m: &ModuleLabel) -> ModuleLabel {
    m.flowed(xi)
}

fn family_data(family: Weight, lvl: Level) -> Result<AdmWeight, LabelError> {
    let idx = admissible_index(lvl)
        .map_err(|_| LabelError::NotAdmissible(family.to_string(), lvl.to_string()))?;
    idx.get(&family)
        .copied()
        .ok_or_else(|| LabelError::NotAdmissible(family.to_string(), lvl.to_string()))
}

fn frac_mod1(t: Rat) -> Rat {
    t - t.floor()
}

/// Coset parameters of the two reducible members of the family of λ:
/// [λ] itself (t = 0) and [w₁·λ] (t = −(λ₁+1) mod 1).
pub fn semi_degenerate_ts(family: Weight) -> [Rat; 2] {
    [Rat::zero(), frac_mod1(-(family.d1 + Rat::one()))]
}

/// Solve μ = λ + tα₁ for t, if μ lies on the line λ + ℚα₁.
pub fn alpha1_line_coord(family: Weight, mu: Weight) -> Option<Rat> {
    let delta = mu - family;
    let t = -delta.d2;
    if delta.d1 == t * 2 {
        Some(t)
    } else {
        None
    }
}

/// Affine Dynkin triple (λ₀, λ₁, λ₂) of a finite weight at a level.
fn affine_triple(w: Weight, lvl: Level) -> [Rat; 3] {
    [lvl.k() - w.d1 - w.d2, w.d1, w.d2]
}

fn fin(t: [Rat; 3]) -> Weight {
    Weight::new(t[1], t[2])
}

fn cyc_a(t: [Rat; 3]) -> [Rat; 3] {
    [t[2], t[0], t[1]]
}

fn cyc_b(t: [Rat; 3]) -> [Rat; 3] {
    [t[1], t[2], t[0]]
}

/// Positive-energy spectral-flow identifications σ^δ(core) ≅ h(core'),
/// emitted for the given core when their integrality conditions hold.
fn flow_idents_from(core: &Core, lvl: Level) -> Vec<(Coweight, D6Element, Core)> {
    let mut out = vec![];
    let u1 = comega1();
    let u2 = comega2();
    match core {
        Core::Hw(w) => {
            let t = affine_triple(*w, lvl);
            let dom = is_natural(w.d1) && is_natural(w.d2);
            if dom {
                out.push((u1, D6Element::identity(), Core::Hw(fin(cyc_a(t)))));
                out.push((u2, D6Element::identity(), Core::Hw(fin(cyc_b(t)))));
            }
            if is_natural(w.d1) {
                out.push((u1 - u2, D6Element::w2(), Core::Hw(fin(cyc_b(t)))));
            }
            if is_natural(w.d2) {
                out.push((u2 - u1, D6Element::w1(), Core::Hw(fin(cyc_a(t)))));
            }
            out.push((-u1, D6Element::w12(), Core::Hw(fin(cyc_b(t)))));
            out.push((-u2, D6Element::w21(), Core::Hw(fin(cyc_a(t)))));
        }
        Core::Semi { family, t } => {
            let tr = affine_triple(*family, lvl);
            let family2 = Weight::new(tr[1], tr[0]);
            let t2 = frac_mod1(-family.d1 - *t);
            out.push((
                -u2,
                D6Element::conjugation(),
                Core::Semi {
                    family: family2,
                    t: t2,
                },
            ));
        }
        Core::Rel { .. } => {}
    }
    out
}

/// Reversed identifications: σ^δ(core') ≅ h(core) for preimages core'.
fn flow_idents_to(core: &Core, lvl: Level) -> Vec<(Coweight, D6Element, Core)> {
    let mut out = vec![];
    let u1 = comega1();
    let u2 = comega2();
    if let Core::Hw(w) = core {
        let t = affine_triple(*w, lvl);
        // invert each cyclic permutation; conditions hold on the preimage
        let pre_a = fin(cyc_b(t)); // cyc_a(pre_a) = t
        let pre_b = fin(cyc_a(t)); // cyc_b(pre_b) = t
        if pre_a.is_dominant_integral() {
            out.push((u1, D6Element::identity(), Core::Hw(pre_a)));
        }
        if pre_b.is_dominant_integral() {
            out.push((u2, D6Element::identity(), Core::Hw(pre_b)));
        }
        if is_natural(pre_b.d1) {
            out.push((u1 - u2, D6Element::w2(), Core::Hw(pre_b)));
        }
        if is_natural(pre_a.d2) {
            out.push((u2 - u1, D6Element::w1(), Core::Hw(pre_a)));
        }
        out.push((-u1, D6Element::w12(), Core::Hw(pre_b)));
        out.push((-u2, D6Element::w21(), Core::Hw(pre_a)));
    }
    // the semirelaxed identification is involutive, so `flow_idents_from`
    // already walks it in both directions
    out
}

fn neighbors(m: &ModuleLabel, lvl: Level) -> Vec<ModuleLabel> {
    let mut out = vec![];
    let g = m.twist;
    match &m.core {
        Core::Hw(w) => {
            if is_natural(w.d1) {
                out.push(ModuleLabel {
                    twist: d6_compose(g, D6Element::w1()),
                    ..*m
                });
            }
            if is_natural(w.d2) {
                out.push(ModuleLabel {
                    twist: d6_compose(g, D6Element::w2()),
                    ..*m
                });
            }
            out.push(ModuleLabel {
                twist: d6_compose(g, D6Element::dynkin_flip()),
                core: Core::Hw(D6Element::dynkin_flip().apply(*w)),
                ..*m
            });
        }
        Core::Semi { family, t } => {
            out.push(ModuleLabel {
                twist: d6_compose(g, D6Element::w1()),
                core: Core::Semi {
                    family: *family,
                    t: frac_mod1(-family.d1 - *t),
                },
                ..*m
            });
        }
        Core::Rel { family, coset } => {
            for w in [D6Element::w1(), D6Element::w2()] {
                out.push(ModuleLabel {
                    twist: d6_compose(g, w),
                    core: Core::Rel {
                        family: *family,
                        coset: coset.map(w),
                    },
                    ..*m
                });
            }
            // d-rewrite into the R² representative of the flipped family
            let cw2 = d6_compose(D6Element::conjugation(), D6Element::w2());
            out.push(ModuleLabel {
                twist: d6_compose(g, D6Element::dynkin_flip()),
                core: Core::Rel {
                    family: cw2.apply_shifted(*family),
                    coset: coset.map(D6Element::dynkin_flip()),
                },
                ..*m
            });
        }
    }
    for (delta, h, c1) in flow_idents_from(&m.core, lvl) {
        out.push(ModuleLabel {
            flow: m.flow - g.apply_coweight(delta),
            twist: d6_compose(g, h),
            core: c1,
        });
    }
    for (delta, h, c0) in flow_idents_to(&m.core, lvl) {
        let gh = d6_compose(g, h.inverse());
        out.push(ModuleLabel {
            flow: m.flow + gh.apply_coweight(delta),
            twist: gh,
            core: c0,
        });
    }
    out
}

/// The full identification orbit of a label: every spelling reachable from
/// it by the rewrite moves, sorted by the label order.  Only meaningful for
/// v ≥ 2, where orbits are finite.
///
/// Panics if the orbit exceeds the internal cap, which indicates a rewrite
/// bug rather than a legitimate input.
pub fn identification_orbit(m: &ModuleLabel, lvl: Level) -> Vec<ModuleLabel> {
    assert!(lvl.v() >= 2, "identification orbits are finite only for v >= 2");
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*m);
    queue.push_back(*m);
    while let Some(cur) = queue.pop_front() {
        for n in neighbors(&cur, lvl) {
            if seen.insert(n) {
                if seen.len() > ORBIT_CAP {
                    panic!("identification orbit exceeded {ORBIT_CAP} labels: rewrite bug");
                }
                queue.push_back(n);
            }
        }
    }
    seen.into_iter().collect()
}

/// Close the identification orbit of a label and return its minimum under
/// the fixed total order.
pub fn canonicalize(m: &ModuleLabel, lvl: Level) -> CanonicalLabel {
    if lvl.v() == 1 {
        return canonicalize_integrable(m, lvl);
    }
    let orbit = identification_orbit(m, lvl);
    CanonicalLabel(orbit[0])
}

/// At v = 1 every admissible weight is dominant and spectral flow acts on
/// highest-weight labels by cycling affine Dynkin labels, so the flow is
/// absorbed in closed form before minimising over the finite twist orbit.
fn canonicalize_integrable(m: &ModuleLabel, lvl: Level) -> CanonicalLabel {
    let Core::Hw(w) = m.core else {
        panic!("only highest-weight modules exist at v = 1");
    };
    // g·Hw(w) ≅ Hw(d^ε w) since every Weyl twist absorbs
    let w = if m.twist.dynkin {
        D6Element::dynkin_flip().apply(w)
    } else {
        w
    };
    let mut t = affine_triple(w, lvl);
    let m3 = (m.flow.c1 + 2 * m.flow.c2).rem_euclid(3);
    for _ in 0..m3 {
        t = cyc_a(t);
    }
    let cand1 = fin(t);
    let cand2 = D6Element::dynkin_flip().apply(cand1);
    let best = cand1.min(cand2);
    CanonicalLabel(ModuleLabel::from_core(Core::Hw(best)))
}

/// Hexagonal norm of a coweight: the minimal number of unit spectral-flow
/// steps reaching ξ.
pub fn hex_norm(xi: Coweight) -> i64 {
    (xi.c1.abs() + xi.c2.abs() + (xi.c1 + xi.c2).abs()) / 2
}

/// The one or two unit coweights spanning the sector containing ξ ≠ 0.
fn support_units(xi: Coweight) -> Vec<Coweight> {
    let (a, b) = (xi.c1, xi.c2);
    let mut dirs = vec![];
    let mut push = |c: Coweight, coeff: i64| {
        if coeff > 0 {
            dirs.push(c);
        }
    };
    let u1 = comega1();
    let u2 = comega2();
    let u3 = Coweight::new(-1, 1);
    if a >= 0 && b >= 0 {
        push(u1, a);
        push(u2, b);
    } else if a <= 0 && b >= 0 {
        if a + b >= 0 {
            push(u3, -a);
            push(u2, a + b);
        } else {
            push(u3, b);
            push(-u1, -a - b);
        }
    } else if a >= 0 && b <= 0 {
        if a + b >= 0 {
            push(u1, a + b);
            push(-u3, -b);
        } else {
            push(-u3, a);
            push(-u2, -a - b);
        }
    } else {
        push(-u1, -a);
        push(-u2, -b);
    }
    dirs
}

/// Identify σ^ξ applied to an untwisted, unflowed label with a
/// positive-energy label when the iterated identifications permit it;
/// `None` means the flowed module is not positive-energy.
pub fn positive_energy_flow_image(
    m: &ModuleLabel,
    xi: Coweight,
    lvl: Level,
) -> Option<CanonicalLabel> {
    debug_assert!(m.flow.is_zero() && m.twist.is_identity());
    let (g, core) = pe_reduce(xi, &m.core, lvl)?;
    Some(canonicalize(
        &ModuleLabel {
            flow: Coweight::zero(),
            twist: g,
            core,
        },
        lvl,
    ))
}

fn pe_reduce(xi: Coweight, core: &Core, lvl: Level) -> Option<(D6Element, Core)> {
    if xi.is_zero() {
        return Some((D6Element::identity(), *core));
    }
    for delta in support_units(xi) {
        let step = flow_idents_from(core, lvl)
            .into_iter()
            .find(|(d, _, _)| *d == delta);
        if let Some((_, h, c1)) = step {
            let rest = h.inverse().apply_coweight(xi - delta);
            if let Some((g, c2)) = pe_reduce(rest, &c1, lvl) {
                return Some((d6_compose(h, g), c2));
            }
        }
    }
    None
}

/// Weight and conformal-weight shift of a vector under spectral flow:
/// (ν, Δ) ↦ (ν + kξ*, Δ + ⟨ν,ξ⟩ + κ(ξ,ξ)k/2).
pub fn flowed_weight_shift(nu: Weight, delta: Rat, xi: Coweight, lvl: Level) -> (Weight, Rat) {
    let k = lvl.k();
    (
        nu + xi.dual_weight().scale(k),
        delta + pairing(nu, xi) + killing_coweight(xi, xi) * k / 2,
    )
}

// ---------------------------------------------------------------------------
// label grammar
// ---------------------------------------------------------------------------

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.flow.is_zero() {
            write!(f, "sf({},{})*", self.flow.c1, self.flow.c2)?;
        }
        if !self.twist.is_identity() {
            write!(f, "{} ", self.twist)?;
        }
        let default_family = crate::admissible::m32_relaxed_base();
        match &self.core {
            Core::Hw(w) => write!(f, "H({},{})", w.d1, w.d2),
            Core::Semi { family, t } => {
                if *family == default_family {
                    write!(f, "S[{t}]")
                } else {
                    write!(f, "S({},{})[{t}]", family.d1, family.d2)
                }
            }
            Core::Rel { family, coset } => {
                if *family == default_family {
                    write!(f, "R{coset}")
                } else {
                    write!(f, "R({},{}){}", family.d1, family.d2, coset)
                }
            }
        }
    }
}

struct Scanner<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a str) -> Self {
        Scanner { input, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), LabelError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(LabelError::Parse(format!(
                "expected '{tok}' at '{}'",
                self.rest()
            )))
        }
    }

    fn rational(&mut self) -> Result<Rat, LabelError> {
        let start = self.pos;
        self.eat("-");
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let numer: i64 = self.input[start..self.pos]
            .parse()
            .map_err(|_| LabelError::Parse(format!("expected number at '{}'", self.rest())))?;
        let mut denom = 1i64;
        if self.eat("/") {
            let dstart = self.pos;
            while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            denom = self.input[dstart..self.pos]
                .parse()
                .map_err(|_| LabelError::Parse("expected denominator".into()))?;
            if denom == 0 {
                return Err(LabelError::Parse("zero denominator".into()));
            }
        }
        Ok(rat(numer, denom))
    }

    fn integer(&mut self) -> Result<i64, LabelError> {
        let r = self.rational()?;
        if !r.is_integer() {
            return Err(LabelError::Parse("expected an integer".into()));
        }
        Ok(*r.numer())
    }

    fn pair(&mut self) -> Result<(Rat, Rat), LabelError> {
        self.expect("(")?;
        self.skip_ws();
        let a = self.rational()?;
        self.skip_ws();
        self.expect(",")?;
        self.skip_ws();
        let b = self.rational()?;
        self.skip_ws();
        self.expect(")")?;
        Ok((a, b))
    }
}

/// A parsed label: either an irreducible module label or a reducible
/// (degenerate-parameter) family member, which `degen` can expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsedLabel {
    Irreducible(ModuleLabel),
    Degenerate {
        flow: Coweight,
        twist: D6Element,
        core: Core,
    },
}

/// Parse a label, classifying reducible parameters instead of rejecting
/// them.
pub fn parse_label_class(input: &str, lvl: Level) -> Result<ParsedLabel, LabelError> {
    match parse_label(input, lvl) {
        Ok(m) => Ok(ParsedLabel::Irreducible(m)),
        Err(LabelError::DegenerateParameter(_)) => {
            let (flow, twist, core) = parse_label_parts(input, lvl)?;
            Ok(ParsedLabel::Degenerate { flow, twist, core })
        }
        Err(e) => Err(e),
    }
}

fn parse_label_parts(
    input: &str,
    lvl: Level,
) -> Result<(Coweight, D6Element, Core), LabelError> {
    // re-scan without the irreducibility check, still validating families
    let mut sc = Scanner::new(input.trim());
    let mut flow = Coweight::zero();
    sc.skip_ws();
    if sc.eat("sf") {
        sc.expect("(")?;
        sc.skip_ws();
        let c1 = sc.integer()?;
        sc.skip_ws();
        sc.expect(",")?;
        sc.skip_ws();
        let c2 = sc.integer()?;
        sc.skip_ws();
        sc.expect(")")?;
        sc.expect("*")?;
        flow = Coweight::new(c1, c2);
    }
    let mut twist = D6Element::identity();
    loop {
        sc.skip_ws();
        let g = if sc.eat("w1") {
            D6Element::w1()
        } else if sc.eat("w2") {
            D6Element::w2()
        } else if sc.eat("w3") {
            D6Element::w3()
        } else if sc.rest().starts_with('d') {
            sc.pos += 1;
            D6Element::dynkin_flip()
        } else if sc.rest().starts_with('c') {
            sc.pos += 1;
            D6Element::conjugation()
        } else {
            break;
        };
        twist = d6_compose(twist, g);
    }
    sc.skip_ws();
    let default_family = crate::admissible::m32_relaxed_base();
    let core = if sc.eat("S") {
        let family = if sc.rest().starts_with('(') {
            let (a, b) = sc.pair()?;
            Weight::new(a, b)
        } else {
            default_family
        };
        let adm = family_data(family, lvl)?;
        if !crate::admissible::classify(&adm, lvl).in_sigma1 {
            return Err(LabelError::NotSemiFamily(
                family.to_string(),
                lvl.to_string(),
            ));
        }
        sc.expect("[")?;
        sc.skip_ws();
        let t = sc.rational()?;
        sc.skip_ws();
        sc.expect("]")?;
        Core::Semi {
            family,
            t: frac_mod1(t),
        }
    } else if sc.eat("R") {
        let family = if sc.rest().starts_with('(') {
            let (a, b) = sc.pair()?;
            Weight::new(a, b)
        } else {
            default_family
        };
        let adm = family_data(family, lvl)?;
        if !crate::admissible::classify(&adm, lvl).in_r2 {
            return Err(LabelError::NotRelaxedFamily(
                family.to_string(),
                lvl.to_string(),
            ));
        }
        sc.expect("[")?;
        sc.skip_ws();
        let x = sc.rational()?;
        sc.skip_ws();
        sc.expect(",")?;
        sc.skip_ws();
        let y = sc.rational()?;
        sc.skip_ws();
        sc.expect("]")?;
        Core::Rel {
            family,
            coset: CosetQ::new(Weight::new(x, y)),
        }
    } else {
        return Err(LabelError::Parse(
            "only S and R labels can carry degenerate parameters".into(),
        ));
    };
    Ok((flow, twist, core))
}

/// Parse a label in the grammar
/// `[sf(c1,c2)*] [w1|w2|w3|d|c ...] H(a,b) | S[(a,b)][t] | R[(a,b)][x,y]`.
pub fn parse_label(input: &str, lvl: Level) -> Result<ModuleLabel, LabelError> {
    let mut sc = Scanner::new(input.trim());
    let mut flow = Coweight::zero();
    sc.skip_ws();
    if sc.eat("sf") {
        sc.expect("(")?;
        sc.skip_ws();
        let c1 = sc.integer()?;
        sc.skip_ws();
        sc.expect(",")?;
        sc.skip_ws();
        let c2 = sc.integer()?;
        sc.skip_ws();
        sc.expect(")")?;
        sc.expect("*")?;
        flow = Coweight::new(c1, c2);
    }
    let mut twist = D6Element::identity();
    loop {
        sc.skip_ws();
        let g = if sc.eat("w1") {
            D6Element::w1()
        } else if sc.eat("w2") {
            D6Element::w2()
        } else if sc.eat("w3") {
            D6Element::w3()
        } else if sc.rest().starts_with('d') {
            sc.pos += 1;
            D6Element::dynkin_flip()
        } else if sc.rest().starts_with('c') {
            sc.pos += 1;
            D6Element::conjugation()
        } else {
            break;
        };
        twist = d6_compose(twist, g);
    }
    sc.skip_ws();
    let default_family = crate::admissible::m32_relaxed_base();
    let base = if sc.eat("H") {
        let (a, b) = sc.pair()?;
        ModuleLabel::hw(Weight::new(a, b), lvl)?
    } else if sc.eat("S") {
        let family = if sc.rest().starts_with('(') {
            let (a, b) = sc.pair()?;
            Weight::new(a, b)
        } else {
            default_family
        };
        sc.expect("[")?;
        sc.skip_ws();
        let t = sc.rational()?;
        sc.skip_ws();
        sc.expect("]")?;
        ModuleLabel::semi(family, t, lvl)?
    } else if sc.eat("R") {
        let family = if sc.rest().starts_with('(') {
            let (a, b) = sc.pair()?;
            Weight::new(a, b)
        } else {
            default_family
        };
        sc.expect("[")?;
        sc.skip_ws();
        let x = sc.rational()?;
        sc.skip_ws();
        sc.expect(",")?;
        sc.skip_ws();
        let y = sc.rational()?;
        sc.skip_ws();
        sc.expect("]")?;
        ModuleLabel::rel(family, CosetQ::new(Weight::new(x, y)), lvl)?
    } else {
        return Err(LabelError::Parse(format!(
            "expected core H/S/R at '{}'",
            sc.rest()
        )));
    };
    sc.skip_ws();
    if !sc.rest().is_empty() {
        return Err(LabelError::Parse(format!("trailing input '{}'", sc.rest())));
    }
    Ok(base.twisted(twist).flowed(flow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::m32_relaxed_base;
    use crate::rootdata::WeylWord;
    use proptest::prelude::*;

    fn m32() -> Level {
        Level::new(3, 2).unwrap()
    }

    fn hw0() -> ModuleLabel {
        ModuleLabel::hw(Weight::zero(), m32()).unwrap()
    }

    fn hw(a: i64, b: i64, den: i64) -> ModuleLabel {
        ModuleLabel::hw(Weight::new(rat(a, den), rat(b, den)), m32()).unwrap()
    }

    fn canon(m: &ModuleLabel) -> CanonicalLabel {
        canonicalize(m, m32())
    }

    #[test]
    fn twist_commutes_past_flow() {
        let m = hw0().flowed(comega2());
        let t = m.twisted(D6Element::w1());
        // w1(ω₂∨) = ω₂∨
        assert_eq!(t.flow, comega2());
        assert_eq!(t.twist, D6Element::w1());
        assert_eq!(hw0().twisted(D6Element::identity()), hw0());
    }

    #[test]
    fn flow_composition() {
        let m = hw0().flowed(-comega1()).flowed(comega1());
        assert_eq!(m, hw0());
    }

    #[test]
    fn dynkin_twist_of_hw() {
        let m = hw(-3, 0, 2).twisted(D6Element::dynkin_flip());
        assert_eq!(canon(&m), canon(&hw(0, -3, 2)));
    }

    #[test]
    fn w_identifications_at_32() {
        // w₂ absorbs into H(−3/2,0); w₁ absorbs into H(0,−3/2); W fixes H(0,0)
        assert_eq!(
            canon(&hw(-3, 0, 2).twisted(D6Element::w2())),
            canon(&hw(-3, 0, 2))
        );
        assert_eq!(
            canon(&hw(0, -3, 2).twisted(D6Element::w1())),
            canon(&hw(0, -3, 2))
        );
        for w in WeylWord::ALL {
            let g = D6Element::new(w, false);
            assert_eq!(canon(&hw0().twisted(g)), canon(&hw0()));
        }
        // but w₁ does not absorb into H(−3/2,0)
        assert_ne!(
            canon(&hw(-3, 0, 2).twisted(D6Element::w1())),
            canon(&hw(-3, 0, 2))
        );
    }

    #[test]
    fn rel_twist_moves_coset() {
        let lvl = m32();
        let fam = m32_relaxed_base();
        let c = CosetQ::new(Weight::new(rat(1, 4), rat(1, 5)));
        let m = ModuleLabel::rel(fam, c, lvl).unwrap();
        for w in WeylWord::ALL {
            let g = D6Element::new(w, false);
            let lhs = canon(&m.twisted(g));
            let rhs = canon(&ModuleLabel::rel(fam, c.map(g), lvl).unwrap());
            assert_eq!(lhs, rhs);
        }
        // d-twist lands back in the family with a flipped coset
        let lhs = canon(&m.twisted(D6Element::dynkin_flip()));
        let rhs = canon(&ModuleLabel::rel(fam, c.map(D6Element::dynkin_flip()), lvl).unwrap());
        assert_eq!(lhs, rhs);
        // conjugation negates the coset
        let lhs = canon(&m.twisted(D6Element::conjugation()));
        let rhs = canon(&ModuleLabel::rel(fam, c.neg(), lvl).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn semi_self_identification() {
        let lvl = m32();
        let fam = m32_relaxed_base();
        for t in [rat(1, 3), rat(2, 5), rat(7, 8)] {
            let m = ModuleLabel::semi(fam, t, lvl).unwrap();
            let w1t = frac_mod1(-fam.d1 - t);
            let rhs = ModuleLabel::semi(fam, w1t, lvl).unwrap();
            assert_eq!(canon(&m.twisted(D6Element::w1())), canon(&rhs));
        }
    }

    #[test]
    fn heptagon_of_the_vacuum() {
        let lvl = m32();
        let expected: Vec<(Coweight, ModuleLabel)> = vec![
            (comega1(), hw(-3, 0, 2)),
            (comega2(), hw(0, -3, 2)),
            (Coweight::new(-1, 1), hw(-3, 0, 2).twisted(D6Element::w1())),
            (Coweight::new(1, -1), hw(0, -3, 2).twisted(D6Element::w2())),
            (-comega1(), hw(0, -3, 2).twisted(D6Element::w12())),
            (-comega2(), hw(-3, 0, 2).twisted(D6Element::w21())),
        ];
        for (xi, target) in expected {
            let flowed = canon(&hw0().flowed(xi));
            assert_eq!(flowed, canon(&target), "flow {xi}");
            // and the same via the positive-energy reduction
            let img = positive_energy_flow_image(&hw0(), xi, lvl).unwrap();
            assert_eq!(img, canon(&target), "pe image {xi}");
        }
        // one step beyond the heptagon is not positive-energy
        for xi in [
            Coweight::new(2, 0),
            Coweight::new(0, 2),
            Coweight::new(1, 1),
            Coweight::new(-2, 1),
        ] {
            assert!(positive_energy_flow_image(&hw0(), xi, lvl).is_none());
        }
    }

    #[test]
    fn rho_half_triangle() {
        let lvl = m32();
        let m = hw(-1, -1, 2);
        // σ^{−ω₁∨} H(−ρ/2) ≅ w₁w₂ H(−ρ/2)
        let img = positive_energy_flow_image(&m, -comega1(), lvl).unwrap();
        assert_eq!(img, canon(&m.twisted(D6Element::w12())));
        let img = positive_energy_flow_image(&m, -comega2(), lvl).unwrap();
        assert_eq!(img, canon(&m.twisted(D6Element::w21())));
        // positive flows of H(−ρ/2) leave the positive-energy set
        assert!(positive_energy_flow_image(&m, comega1(), lvl).is_none());
        assert!(positive_energy_flow_image(&m, comega2(), lvl).is_none());
    }

    #[test]
    fn semi_flow_identification() {
        let lvl = m32();
        let fam = m32_relaxed_base();
        let m = ModuleLabel::semi(fam, rat(1, 3), lvl).unwrap();
        // σ^{−ω₂∨} S[t] is positive-energy, a conjugated semirelaxed
        let img = positive_energy_flow_image(&m, -comega2(), lvl).unwrap();
        let expect = ModuleLabel::semi(fam, frac_mod1(-fam.d1 - rat(1, 3)), lvl)
            .unwrap()
            .twisted(D6Element::conjugation());
        assert_eq!(img, canon(&expect));
        // all other nontrivial flows are not
        assert!(positive_energy_flow_image(&m, comega2(), lvl).is_none());
        assert!(positive_energy_flow_image(&m, -comega2() - comega2(), lvl).is_none());
        assert!(positive_energy_flow_image(&m, comega1(), lvl).is_none());
    }

    #[test]
    fn relaxed_flows_never_positive_energy() {
        let lvl = m32();
        let m = ModuleLabel::rel(
            m32_relaxed_base(),
            CosetQ::new(Weight::new(rat(1, 4), Rat::zero())),
            lvl,
        )
        .unwrap();
        for xi in crate::rootdata::unit_coweights() {
            assert!(positive_energy_flow_image(&m, xi, lvl).is_none());
        }
        assert!(positive_energy_flow_image(&m, Coweight::zero(), lvl).is_some());
    }

    #[test]
    fn degenerate_parameters_rejected() {
        let lvl = m32();
        let fam = m32_relaxed_base();
        assert!(matches!(
            ModuleLabel::semi(fam, Rat::zero(), lvl),
            Err(LabelError::DegenerateParameter(_))
        ));
        assert!(matches!(
            ModuleLabel::semi(fam, rat(1, 2), lvl),
            Err(LabelError::DegenerateParameter(_))
        ));
        assert!(matches!(
            ModuleLabel::rel(fam, CosetQ::new(fam), lvl),
            Err(LabelError::DegenerateParameter(_))
        ));
        // [−ρ/2] is singular
        assert!(matches!(
            ModuleLabel::rel(fam, CosetQ::new(Weight::new(rat(-1, 2), rat(-1, 2))), lvl),
            Err(LabelError::DegenerateParameter(_))
        ));
        // a typical coset is accepted
        assert!(
            ModuleLabel::rel(fam, CosetQ::new(Weight::new(rat(1, 4), Rat::zero())), lvl).is_ok()
        );
    }

    #[test]
    fn flowed_weight_shift_examples() {
        let lvl = m32();
        let nu = Weight::new(rat(2, 3), rat(-1, 5));
        let d = rat(7, 4);
        assert_eq!(flowed_weight_shift(nu, d, Coweight::zero(), lvl), (nu, d));
        let (n1, d1) = flowed_weight_shift(nu, d, comega2(), lvl);
        let (n2, d2) = flowed_weight_shift(n1, d1, -comega2(), lvl);
        assert_eq!((n2, d2), (nu, d));
        // explicit value at the vacuum
        let (n, dd) = flowed_weight_shift(Weight::zero(), Rat::zero(), comega2(), lvl);
        assert_eq!(n, Weight::new(Rat::zero(), rat(-3, 2)));
        assert_eq!(dd, rat(-1, 2));
    }

    #[test]
    fn integrable_level_canonicalization() {
        let lvl = Level::new(4, 1).unwrap();
        let w = Weight::from_ints(1, 0);
        let m = ModuleLabel::hw(w, lvl).unwrap();
        // flows cycle the affine labels
        let c1 = canonicalize(&m.flowed(comega1()), lvl);
        assert_eq!(
            c1,
            canonicalize(&ModuleLabel::hw(Weight::from_ints(0, 1), lvl).unwrap(), lvl)
        );
        // flow by a coroot-lattice vector returns home
        let c3 = canonicalize(&m.flowed(Coweight::new(3, 0)), lvl);
        assert_eq!(c3, canonicalize(&m, lvl));
        // twists absorb entirely
        for g in D6Element::all() {
            let expect = if g.dynkin {
                ModuleLabel::hw(Weight::from_ints(0, 1), lvl).unwrap()
            } else {
                m
            };
            assert_eq!(canonicalize(&m.twisted(g), lvl), canonicalize(&expect, lvl));
        }
    }

    fn arb_core() -> impl Strategy<Value = Core> {
        let fam = m32_relaxed_base();
        prop_oneof![
            prop_oneof![
                Just(Weight::zero()),
                Just(Weight::new(rat(-3, 2), Rat::zero())),
                Just(Weight::new(Rat::zero(), rat(-3, 2))),
                Just(Weight::new(rat(-1, 2), rat(-1, 2))),
            ]
            .prop_map(Core::Hw),
            (1i64..12)
                .prop_filter("nondegenerate", |n| *n != 6)
                .prop_map(move |n| Core::Semi {
                    family: fam,
                    t: rat(n, 12),
                }),
            (0i64..12, 0i64..12)
                .prop_map(move |(a, b)| (rat(a, 5), rat(b, 5)))
                .prop_filter("typical", move |(a, b)| {
                    ModuleLabel::rel(fam, CosetQ::new(Weight::new(*a, *b)), m32()).is_ok()
                })
                .prop_map(move |(a, b)| Core::Rel {
                    family: fam,
                    coset: CosetQ::new(Weight::new(a, b)),
                }),
        ]
    }

    fn arb_label() -> impl Strategy<Value = ModuleLabel> {
        (arb_core(), -2i64..=2, -2i64..=2, 0usize..12).prop_map(|(core, a, b, ti)| ModuleLabel {
            flow: Coweight::new(a, b),
            twist: D6Element::all()[ti],
            core,
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonicalize_idempotent_and_rewrite_invariant(m in arb_label()) {
            let lvl = m32();
            let c = canonicalize(&m, lvl);
            prop_assert_eq!(canonicalize(c.label(), lvl), c);
            for n in neighbors(&m, lvl) {
                prop_assert_eq!(canonicalize(&n, lvl), c);
            }
        }

        #[test]
        fn action_compatibility(m in arb_label(), gi in 0usize..12, hi in 0usize..12) {
            let lvl = m32();
            let g = D6Element::all()[gi];
            let h = D6Element::all()[hi];
            let lhs = canonicalize(&m.twisted(h).twisted(g), lvl);
            let rhs = canonicalize(&m.twisted(d6_compose(g, h)), lvl);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn grammar_round_trip(m in arb_label()) {
            let lvl = m32();
            let c = canonicalize(&m, lvl);
            let printed = c.label().to_string();
            let parsed = parse_label(&printed, lvl).unwrap();
            prop_assert_eq!(&parsed, c.label());
        }
    }

    #[test]
    fn parse_examples() {
        let lvl = m32();
        let m = parse_label("sf(0,-1)*c w1 S[1/3]", lvl).unwrap();
        assert_eq!(m.flow, Coweight::new(0, -1));
        assert_eq!(
            m.twist,
            d6_compose(D6Element::conjugation(), D6Element::w1())
        );
        assert!(matches!(m.core, Core::Semi { .. }));
        assert!(parse_label("H(0,0)", lvl).is_ok());
        assert!(parse_label("R[1/4,0]", lvl).is_ok());
        assert!(parse_label("S[1/2]", lvl).is_err()); // degenerate
        assert!(parse_label("H(1,1)", lvl).is_err()); // not admissible at (3,2)
        assert!(parse_label("X[1]", lvl).is_err());
    }
}
