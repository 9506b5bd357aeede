//! The Grothendieck fusion ring of M(3,2) on canonical irreducible labels.
//!
//! `fuse` implements the closed rules, dispatching on the factor kinds
//! after reducing twists and flows through the equivariances.  An
//! independent route, `fuse_by_resolution`, expands an atypical factor into
//! its standard resolution, fuses the period-2 tail term by term and
//! telescopes the result symbolically; the two must agree, which is the
//! consistency harness for every rule transcription.
//!
//! The ring computed here is the conjectural one defined by the standard
//! Verlinde formula; the harness checks its internal consistency, not its
//! interpretation as genuine fusion.

use crate::degen::{gr_rel, gr_semi, DegenError, GrClass};
use crate::modlabel::{
    alpha1_line_coord, canonicalize, identification_orbit, CanonicalLabel, Core, CosetQ,
    LabelError, ModuleLabel,
};
use crate::modularchar::ScopeError;
use crate::rootdata::{
    alpha1, alpha2, alpha3, comega1, comega2, comega3, omega1, omega2, omega3, rat,
    rho, Coweight, D6Element, Level, Rat, Weight, WeylWord,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Degen(#[from] DegenError),
    #[error("resolution tail does not terminate: {0}")]
    NonTerminatingTail(String),
    #[error("resolution requires an atypical factor")]
    NoAtypicalFactor,
    #[error("internal: no normal spelling in the identification orbit of {0}")]
    NoNormalSpelling(String),
}

/// Twist class of a semirelaxed factor after absorbing w₁, c and d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiTwist {
    E,
    W2,
    W12,
}

impl SemiTwist {
    fn element(self) -> D6Element {
        match self {
            SemiTwist::E => D6Element::identity(),
            SemiTwist::W2 => D6Element::w2(),
            SemiTwist::W12 => D6Element::w12(),
        }
    }
}

/// Normal form of a fusion factor: a flow applied to one of the four core
/// shapes of the (3,2) spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// L(0) and its twist absorptions.
    Vacuum,
    /// c^conj of L(−ρ/2).
    RhoHalf { conj: bool },
    /// twist·S[t] on the family line.
    Semi { twist: SemiTwist, t: Rat },
    /// R[coset].
    Rel { coset: CosetQ },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub flow: Coweight,
    pub kind: Kind,
}

fn kind_rank(k: &Kind) -> u8 {
    match k {
        Kind::Vacuum => 0,
        Kind::RhoHalf { .. } => 1,
        Kind::Semi { .. } => 2,
        Kind::Rel { .. } => 3,
    }
}

fn m32_family() -> Weight {
    crate::admissible::m32_relaxed_base()
}

fn rho_half() -> Weight {
    rho().scale(rat(-1, 2))
}

/// Re-spell a canonical label as a flow applied to one of the four core
/// shapes, by scanning its identification orbit.
pub fn to_factor(c: &CanonicalLabel, lvl: Level) -> Result<Factor, FusionError> {
    for m in identification_orbit(c.label(), lvl) {
        match m.core {
            Core::Hw(w) if w == Weight::zero() => {
                // every D6 twist absorbs into the vacuum
                return Ok(Factor {
                    flow: m.flow,
                    kind: Kind::Vacuum,
                });
            }
            Core::Hw(w) if w == rho_half() => {
                let conj = match m.twist.weyl {
                    WeylWord::E => false,
                    WeylWord::W3 => true,
                    _ => continue,
                };
                return Ok(Factor {
                    flow: m.flow,
                    kind: Kind::RhoHalf { conj },
                });
            }
            Core::Semi { family, t } if family == m32_family() && !m.twist.dynkin => {
                let twist = match m.twist.weyl {
                    WeylWord::E => SemiTwist::E,
                    WeylWord::W2 => SemiTwist::W2,
                    WeylWord::W12 => SemiTwist::W12,
                    _ => continue,
                };
                return Ok(Factor {
                    flow: m.flow,
                    kind: Kind::Semi { twist, t },
                });
            }
            Core::Rel { family, coset }
                if family == m32_family() && m.twist.is_identity() =>
            {
                return Ok(Factor {
                    flow: m.flow,
                    kind: Kind::Rel { coset },
                });
            }
            _ => continue,
        }
    }
    Err(FusionError::NoNormalSpelling(c.to_string()))
}

/// Canonical label of a factor kind at flow zero.
fn kind_label(kind: &Kind, lvl: Level) -> Result<CanonicalLabel, FusionError> {
    let m = match kind {
        Kind::Vacuum => ModuleLabel::hw(Weight::zero(), lvl)?,
        Kind::RhoHalf { conj } => {
            let base = ModuleLabel::hw(rho_half(), lvl)?;
            if *conj {
                base.twisted(D6Element::conjugation())
            } else {
                base
            }
        }
        Kind::Semi { twist, t } => ModuleLabel::semi(m32_family(), *t, lvl)?.twisted(twist.element()),
        Kind::Rel { coset } => ModuleLabel::rel(m32_family(), *coset, lvl)?,
    };
    Ok(canonicalize(&m, lvl))
}

fn semi_point(t: Rat) -> Weight {
    m32_family() + alpha1().scale(t)
}

/// Grothendieck image of a weight on the semirelaxed family line,
/// expanding degenerate parameters.
fn gr_semi_point(nu: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let t = alpha1_line_coord(m32_family(), nu).ok_or_else(|| {
        FusionError::Label(LabelError::NotOnFamilyLine(
            nu.to_string(),
            m32_family().to_string(),
        ))
    })?;
    Ok(gr_semi(m32_family(), t, lvl)?)
}

fn gr_rel_point(nu: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    Ok(gr_rel(m32_family(), CosetQ::new(nu), lvl)?)
}

// ---------------------------------------------------------------------------
// closed rules
// ---------------------------------------------------------------------------

/// Gr R[μ] ⊠ Gr R[μ'].
fn rule_rr(mu: Weight, mu2: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let base = mu + mu2;
    let mut out = gr_rel_point(base, lvl)?.scaled(2);
    for (u, w) in unit_pairs() {
        let shifted = base + w.scale(rat(3, 2));
        out.add_class(&gr_rel_point(shifted, lvl)?.flowed(u, lvl));
        out.add_class(&gr_rel_point(shifted, lvl)?.flowed(-u, lvl));
    }
    Ok(out)
}

fn unit_pairs() -> [(Coweight, Weight); 3] {
    [
        (comega1(), omega1()),
        (comega2(), omega2()),
        (comega3(), omega3()),
    ]
}

/// Gr S[μ] ⊠ Gr R[μ'].
fn rule_sr(mu: Weight, mu2: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let base = mu + mu2;
    let mut out = gr_rel_point(base, lvl)?;
    for (u, w) in unit_pairs() {
        out.add_class(&gr_rel_point(base + w.scale(rat(3, 2)), lvl)?.flowed(u, lvl));
    }
    Ok(out)
}

/// Gr S[μ] ⊠ Gr S[μ'] (both untwisted).
fn rule_ss(mu: Weight, mu2: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let base = mu + mu2;
    let mut out = gr_semi_point(base + omega1().scale(rat(3, 2)), lvl)?.flowed(comega1(), lvl);
    out.add_class(&gr_rel_point(base + omega2().scale(rat(3, 2)), lvl)?.flowed(comega2(), lvl));
    out.add_class(&gr_semi_point(base + omega3().scale(rat(3, 2)), lvl)?.flowed(comega3(), lvl));
    Ok(out)
}

/// Gr S[μ] ⊠ Gr w₂S[μ'] and Gr S[μ] ⊠ Gr w₁w₂S[μ'].
fn rule_ss_twisted(
    mu: Weight,
    twist: SemiTwist,
    mu2: Weight,
    lvl: Level,
) -> Result<GrClass, FusionError> {
    let transformed = twist.element().apply(mu2);
    let base = mu + transformed;
    let (u, w) = match twist {
        SemiTwist::W2 => (comega1(), omega1()),
        SemiTwist::W12 => (comega3(), omega3()),
        SemiTwist::E => unreachable!("untwisted pairs use rule_ss"),
    };
    let mut out = gr_rel_point(base, lvl)?;
    out.add_class(&gr_rel_point(base + w.scale(rat(3, 2)), lvl)?.flowed(u, lvl));
    Ok(out)
}

/// Gr L(−ρ/2) ⊠ Gr S[μ'].
fn rule_ls(mu2: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let mut out =
        gr_semi_point(mu2 + alpha1().scale(rat(1, 2)), lvl)?.flowed(comega1(), lvl);
    out.add_class(&gr_rel_point(mu2 + alpha2().scale(rat(1, 2)), lvl)?.flowed(comega2(), lvl));
    Ok(out)
}

/// Gr L(−ρ/2) ⊠ Gr R[μ'].
fn rule_lr(mu2: Weight, lvl: Level) -> Result<GrClass, FusionError> {
    let mut out = gr_rel_point(mu2 + alpha3().scale(rat(1, 2)), lvl)?;
    out.add_class(
        &gr_rel_point(mu2 + alpha1().scale(rat(1, 2)), lvl)?.flowed(comega1(), lvl),
    );
    out.add_class(
        &gr_rel_point(mu2 + alpha2().scale(rat(1, 2)), lvl)?.flowed(comega2(), lvl),
    );
    Ok(out)
}

/// Gr L(−ρ/2) ⊠ Gr L(−ρ/2).
fn rule_ll(lvl: Level) -> Result<GrClass, FusionError> {
    let vac = kind_label(&Kind::Vacuum, lvl)?;
    let mut out = GrClass::of(vac);
    out.add_class(&GrClass::of(vac).flowed(comega1() * 2, lvl));
    out.add_class(&GrClass::of(vac).flowed(comega2() * 2, lvl));
    let conj = kind_label(&Kind::RhoHalf { conj: true }, lvl)?;
    out.add_class(
        &GrClass::of(conj)
            .flowed(comega1() + comega2(), lvl)
            .scaled(2),
    );
    Ok(out)
}

/// Gr L(−ρ/2) ⊠ Gr cL(−ρ/2).
fn rule_ll_conj(lvl: Level) -> Result<GrClass, FusionError> {
    let mut out = gr_rel_point(Weight::zero(), lvl)?;
    out.add_class(&GrClass::of(kind_label(&Kind::Vacuum, lvl)?));
    Ok(out)
}

fn fuse_cores(a: &Kind, b: &Kind, lvl: Level) -> Result<GrClass, FusionError> {
    // commutativity: order by rank
    let (a, b) = if kind_rank(a) <= kind_rank(b) {
        (a, b)
    } else {
        (b, a)
    };
    match (a, b) {
        (Kind::Vacuum, other) => Ok(GrClass::of(kind_label(other, lvl)?)),
        (Kind::RhoHalf { conj: true }, other) => {
            // fuse(cL, Y) = c·fuse(L, cY)
            let c = D6Element::conjugation();
            let other_label = kind_label(other, lvl)?;
            let flipped = canonicalize(&other_label.label().twisted(c), lvl);
            Ok(fuse_pair(
                &kind_label(&Kind::RhoHalf { conj: false }, lvl)?,
                &flipped,
                lvl,
            )?
            .twisted(c, lvl))
        }
        (Kind::RhoHalf { conj: false }, Kind::RhoHalf { conj }) => {
            if *conj {
                rule_ll_conj(lvl)
            } else {
                rule_ll(lvl)
            }
        }
        (Kind::RhoHalf { conj: false }, Kind::Semi { twist, t }) => match twist {
            SemiTwist::E => rule_ls(semi_point(*t), lvl),
            SemiTwist::W2 => {
                // fuse(L, w₂S[ν]) = w₂ σ^{ω₁∨} c σ^{−ω₂∨} fuse(L, S[−ν−3ω₂/2])
                let nu = semi_point(*t);
                let reflected = -nu - omega2().scale(rat(3, 2));
                let t2 = alpha1_line_coord(m32_family(), reflected).expect("on the family line");
                let inner = fuse_cores(
                    &Kind::RhoHalf { conj: false },
                    &Kind::Semi {
                        twist: SemiTwist::E,
                        t: t2 - t2.floor(),
                    },
                    lvl,
                )?;
                Ok(inner
                    .flowed(-comega2(), lvl)
                    .twisted(D6Element::conjugation(), lvl)
                    .flowed(comega1(), lvl)
                    .twisted(D6Element::w2(), lvl))
            }
            SemiTwist::W12 => {
                // fuse(L, w₁w₂S[ν]) = w₁w₂ σ^{−ω₂∨} fuse(L, S[ν])
                let inner = fuse_cores(
                    &Kind::RhoHalf { conj: false },
                    &Kind::Semi {
                        twist: SemiTwist::E,
                        t: *t,
                    },
                    lvl,
                )?;
                Ok(inner.flowed(-comega2(), lvl).twisted(D6Element::w12(), lvl))
            }
        },
        (Kind::RhoHalf { conj: false }, Kind::Rel { coset }) => rule_lr(coset.rep(), lvl),
        (Kind::Semi { twist, t }, Kind::Semi { twist: tw2, t: t2 }) => {
            match (twist, tw2) {
                (SemiTwist::E, SemiTwist::E) => rule_ss(semi_point(*t), semi_point(*t2), lvl),
                (SemiTwist::E, tw) => rule_ss_twisted(semi_point(*t), *tw, semi_point(*t2), lvl),
                (tw, other_tw) => {
                    // plainify the first factor: fuse(ωS[x], h S[y]) = ω fuse(S[x], ω⁻¹h S[y])
                    let w = tw.element();
                    let second = kind_label(
                        &Kind::Semi {
                            twist: *other_tw,
                            t: *t2,
                        },
                        lvl,
                    )?;
                    let retwisted = canonicalize(&second.label().twisted(w.inverse()), lvl);
                    let first = kind_label(
                        &Kind::Semi {
                            twist: SemiTwist::E,
                            t: *t,
                        },
                        lvl,
                    )?;
                    Ok(fuse_pair(&first, &retwisted, lvl)?.twisted(w, lvl))
                }
            }
        }
        (Kind::Semi { twist, t }, Kind::Rel { coset }) => {
            // any semirelaxed twist absorbs into the relaxed coset
            let w = twist.element();
            let moved = coset.map(w.inverse());
            Ok(rule_sr(semi_point(*t), moved.rep(), lvl)?.twisted(w, lvl))
        }
        (Kind::Rel { coset }, Kind::Rel { coset: coset2 }) => {
            rule_rr(coset.rep(), coset2.rep(), lvl)
        }
        _ => unreachable!("rank ordering covers all pairs"),
    }
}

/// Grothendieck fusion of two irreducible canonical labels.
pub fn fuse_pair(
    a: &CanonicalLabel,
    b: &CanonicalLabel,
    lvl: Level,
) -> Result<GrClass, FusionError> {
    crate::modularchar::ensure_m32(lvl)?;
    let fa = to_factor(a, lvl)?;
    let fb = to_factor(b, lvl)?;
    let total = fa.flow + fb.flow;
    Ok(fuse_cores(&fa.kind, &fb.kind, lvl)?.flowed(total, lvl))
}

/// Bilinear extension of the fusion product to Grothendieck classes.
pub fn fuse(a: &GrClass, b: &GrClass, lvl: Level) -> Result<GrClass, FusionError> {
    let mut out = GrClass::zero();
    for (la, ma) in a.iter() {
        for (lb, mb) in b.iter() {
            out.add_class(&fuse_pair(la, lb, lvl)?.scaled(ma * mb));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// resolutions and the telescoping engine
// ---------------------------------------------------------------------------

/// Period-2 standard resolution tail: for n ≥ 0 the terms
/// +σ^{start+2n·dir} R[even]  and  −σ^{start+(2n+1)·dir} R[odd].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tail {
    pub start: Coweight,
    pub direction: Coweight,
    pub even: Weight,
    pub odd: Weight,
}

/// A Grothendieck expansion into standard classes: a finite head plus an
/// optional period-2 tail.
#[derive(Debug, Clone, PartialEq)]
pub struct GrExpansion {
    pub head: GrClass,
    pub tail: Option<Tail>,
}

/// Expand a canonical label into its standard resolution shape.
///
/// Typical labels are their own expansion; semirelaxed labels get the
/// period-2 alternating tail; c^ε L(−ρ/2) resolves through the degenerate
/// semirelaxed coset minus a flowed vacuum; flowed vacua stay atomic.
pub fn gr_expand(c: &CanonicalLabel, lvl: Level) -> Result<GrExpansion, FusionError> {
    let f = to_factor(c, lvl)?;
    match f.kind {
        Kind::Vacuum | Kind::Rel { .. } => Ok(GrExpansion {
            head: GrClass::of(*c),
            tail: None,
        }),
        Kind::Semi { twist, t } => {
            let w = twist.element();
            let nu = semi_point(t);
            Ok(GrExpansion {
                head: GrClass::zero(),
                tail: Some(Tail {
                    start: f.flow,
                    direction: -w.apply_coweight(comega2()),
                    even: w.apply(nu),
                    odd: w.apply(nu - alpha1().scale(rat(1, 2))),
                }),
            })
        }
        Kind::RhoHalf { conj } => {
            // Gr L(−ρ/2) = Gr S[−ρ/2] − Gr σ^{ω₃∨} L(0); conjugation flips
            // the tail direction and negates the labels
            let g = if conj {
                D6Element::conjugation()
            } else {
                D6Element::identity()
            };
            let mut head = GrClass::zero();
            head.add(
                canonicalize(
                    &ModuleLabel::hw(Weight::zero(), lvl)?
                        .twisted(g)
                        .flowed(f.flow + g.apply_coweight(comega3())),
                    lvl,
                ),
                -1,
            );
            let base = rho_half();
            Ok(GrExpansion {
                head,
                tail: Some(Tail {
                    start: f.flow,
                    direction: -g.apply_coweight(comega2()),
                    even: g.apply(base),
                    odd: g.apply(base - alpha1().scale(rat(1, 2))),
                }),
            })
        }
    }
}

/// Formal integer combination of standard labels σ^flow R[coset].
type FormalStd = BTreeMap<(Coweight, CosetQ), i64>;

fn formal_add(map: &mut FormalStd, key: (Coweight, CosetQ), c: i64) {
    let e = map.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&key);
    }
}

/// Fuse a single standard symbol σ^flow R[x] with a factor, producing
/// standard symbols (every closed rule with a relaxed input stays in the
/// standard span).
fn fuse_std_symbol(
    flow: Coweight,
    x: Weight,
    fb: &Factor,
    _lvl: Level,
) -> Result<FormalStd, FusionError> {
    let mut out = FormalStd::new();
    let total = flow + fb.flow;
    let mut push = |f: Coweight, w: Weight, c: i64| {
        formal_add(&mut out, (f + total, CosetQ::new(w)), c);
    };
    match &fb.kind {
        Kind::Vacuum => push(Coweight::zero(), x, 1),
        Kind::Rel { coset } => {
            let base = x + coset.rep();
            push(Coweight::zero(), base, 2);
            for (u, w) in unit_pairs() {
                let s = base + w.scale(rat(3, 2));
                push(u, s, 1);
                push(-u, s, 1);
            }
        }
        Kind::Semi { twist, t } => {
            let w = twist.element();
            let nu = w.apply(semi_point(*t));
            let base = x + nu;
            push(Coweight::zero(), base, 1);
            for (u, om) in unit_pairs() {
                push(w.apply_coweight(u), base + w.apply(om.scale(rat(3, 2))), 1);
            }
        }
        Kind::RhoHalf { conj } => {
            // fuse(R[x], c^e L) = c^e · grfrLR(c^e x)
            let sgn = if *conj { -1 } else { 1 };
            let y = x.scale(Rat::from_integer(sgn));
            let outs = [
                (Coweight::zero(), y + alpha3().scale(rat(1, 2))),
                (comega1(), y + alpha1().scale(rat(1, 2))),
                (comega2(), y + alpha2().scale(rat(1, 2))),
            ];
            for (u, wt) in outs {
                push(u * sgn, wt.scale(Rat::from_integer(sgn)), 1);
            }
        }
    }
    Ok(out)
}

fn dot(a: Coweight, b: Coweight) -> i64 {
    a.c1 * b.c1 + a.c2 * b.c2
}

/// Sum Σ_{n≥0} shift^{2n·dir}(t0) in the dir-ray completion: finite classes
/// telescope into partial sums, residual constant runs are recognised as
/// semirelaxed tails.
fn telescope(t0: FormalStd, dir: Coweight, lvl: Level) -> Result<GrClass, FusionError> {
    let step = dir * 2;
    let step_norm = dot(step, step);
    // group the symbols by (coset, flow mod step)
    let mut classes: BTreeMap<(CosetQ, Coweight), BTreeMap<i64, i64>> = BTreeMap::new();
    for ((flow, coset), c) in t0 {
        let m = dot(flow, step).div_euclid(step_norm);
        let base = flow - step * m;
        classes.entry((coset, base)).or_default().insert(m, c);
    }
    let mut out = GrClass::zero();
    // constant runs: coeff · Σ_{j≥0} σ^{start + j·step} R[coset]
    let mut runs: Vec<(CosetQ, Coweight, i64)> = vec![];
    for ((coset, base), coeffs) in classes {
        let lo = *coeffs.keys().next().unwrap();
        let hi = *coeffs.keys().last().unwrap();
        // position p receives the prefix sum Σ_{m≤p} c_m, constant past hi
        let mut acc = 0i64;
        for m in lo..hi {
            acc += coeffs.get(&m).copied().unwrap_or(0);
            if acc != 0 {
                out.add_class(
                    &gr_rel(m32_family(), coset, lvl)?
                        .flowed(base + step * m, lvl)
                        .scaled(acc),
                );
            }
        }
        let total = acc + coeffs.get(&hi).copied().unwrap_or(0);
        if total != 0 {
            runs.push((coset, base + step * hi, total));
        }
    }
    // pair runs into semirelaxed tails: +c at (x, F) pairs with −c at
    // (x − ω(α₁)/2, F + dir) to form c·Gr(σ^F ω S[·])
    let omega = D6Element::all()
        .into_iter()
        .find(|g| g.apply_coweight(comega2()) == -dir)
        .expect("some D6 element maps ω₂∨ onto the tail direction");
    let half_step = omega.apply(alpha1()).scale(rat(1, 2));
    while let Some(idx) = runs.iter().position(|(_, _, c)| *c > 0) {
        let (coset, start, c) = runs.remove(idx);
        let partner_coset = CosetQ::new(coset.rep() - half_step);
        let pos = runs
            .iter()
            .position(|(k, f, cc)| *k == partner_coset && *f == start + dir && *cc < 0);
        let Some(pos) = pos else {
            return Err(FusionError::NonTerminatingTail(format!(
                "unpaired run at flow {start}, coset {coset}"
            )));
        };
        let take = c.min(-runs[pos].2);
        runs[pos].2 += take;
        if runs[pos].2 == 0 {
            runs.remove(pos);
        }
        if take < c {
            runs.push((coset, start, c - take));
        }
        // recognise the pair as σ^{start} ω S[ν] with [ω(ν)] = coset
        let y = omega.inverse().apply(coset.rep());
        let n = crate::rootdata::pairing(y - m32_family(), comega2());
        if !n.is_integer() {
            return Err(FusionError::NonTerminatingTail(format!(
                "run coset {coset} is not on a semirelaxed line"
            )));
        }
        let nu = y - alpha2().scale(n);
        let t = alpha1_line_coord(m32_family(), nu)
            .expect("adjusted representative lies on the family line");
        out.add_class(
            &gr_semi(m32_family(), t, lvl)?
                .twisted(omega, lvl)
                .flowed(start, lvl)
                .scaled(take),
        );
    }
    if !runs.is_empty() {
        return Err(FusionError::NonTerminatingTail(format!(
            "{} negative runs left unpaired",
            runs.len()
        )));
    }
    Ok(out)
}

/// Independent computation of an atypical fusion product through the
/// standard resolution and symbolic telescoping.
pub fn fuse_by_resolution(
    a: &CanonicalLabel,
    b: &CanonicalLabel,
    lvl: Level,
) -> Result<GrClass, FusionError> {
    crate::modularchar::ensure_m32(lvl)?;
    let fa = to_factor(a, lvl)?;
    let fb = to_factor(b, lvl)?;
    // expand the lower-rank (more atypical) factor
    let (expand_me, partner, partner_factor) = match (kind_rank(&fa.kind), kind_rank(&fb.kind)) {
        (3, 3) | (0, 0) => return Err(FusionError::NoAtypicalFactor),
        (ra, rb) if ra <= rb => (a, b, fb),
        _ => (b, a, fa),
    };
    let expansion = gr_expand(expand_me, lvl)?;
    if expansion.tail.is_none() {
        return Err(FusionError::NoAtypicalFactor);
    }
    let tail = expansion.tail.unwrap();
    // T0 = fuse(even term, partner) − fuse(odd term, partner)
    let mut t0 = FormalStd::new();
    for ((f, k), c) in fuse_std_symbol(tail.start, tail.even, &partner_factor, lvl)? {
        formal_add(&mut t0, (f, k), c);
    }
    for ((f, k), c) in fuse_std_symbol(tail.start + tail.direction, tail.odd, &partner_factor, lvl)? {
        formal_add(&mut t0, (f, k), -c);
    }
    let mut out = telescope(t0, tail.direction, lvl)?;
    // head contributions fuse through the closed rules
    for (label, mult) in expansion.head.iter() {
        out.add_class(&fuse_pair(label, partner, lvl)?.scaled(mult));
    }
    Ok(out)
}

/// The one-dimensional representation of the fusion ring: R ↦ 8, S ↦ 4,
/// L(−ρ/2) ↦ 3, vacuum ↦ 1, constant on twist and flow orbits.
pub fn dimension_rep(a: &GrClass, lvl: Level) -> Result<i64, FusionError> {
    let mut total = 0i64;
    for (label, mult) in a.iter() {
        let f = to_factor(label, lvl)?;
        let d = match f.kind {
            Kind::Vacuum => 1,
            Kind::RhoHalf { .. } => 3,
            Kind::Semi { .. } => 4,
            Kind::Rel { .. } => 8,
        };
        total += mult * d;
    }
    Ok(total)
}
