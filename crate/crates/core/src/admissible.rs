//! Enumeration and classification of the admissible weights of M(u,v).
//!
//! An admissible weight is stored by its type (planar or w₁-reflected), an
//! integral triple of naturals summing to u−3 and a fractional triple of
//! naturals summing to v−1; the Dynkin labels are reconstructed from these.
//! Classification produces the semirelaxed set Σ¹, the relaxed sets R¹, R²,
//! R³, the finite-dimensional-top flags and the nilpotent-orbit tags.

use crate::rootdata::{
    alpha1, alpha2, alpha3, comega1, comega2, is_integer, is_natural, pairing, rat, D6Element,
    Level, Rat, Weight,
};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

/// Planar (w = 1) or reflected (w = w₁) parametrisation of an admissible
/// weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdmType {
    Planar,
    Reflected,
}

/// An admissible weight together with its defining data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmWeight {
    pub weight: Weight,
    pub adm_type: AdmType,
    /// (λᴵ₀, λᴵ₁, λᴵ₂), naturals summing to u−3.
    pub integral: [i64; 3],
    /// (λᶠ₀, λᶠ₁, λᶠ₂), naturals summing to v−1; reflected type has λᶠ₁ ≥ 1.
    pub fractional: [i64; 3],
}

/// Nilpotent-orbit tag attached to an admissible weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    Zero,
    Minimal,
    Principal,
}

/// Membership flags for the classification subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassTag {
    pub in_adm: bool,
    pub in_sigma1: bool,
    pub in_r1: bool,
    pub in_r2: bool,
    pub in_r3: bool,
    pub fdim_top: bool,
    pub orbit: Orbit,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdmissibleError {
    #[error("level with u = {0} is not admissible (u >= 3 required)")]
    NotAdmissible(i64),
    #[error("weight is not in the R2 subset at this level")]
    NotRelaxedParametrising,
}

/// Closed-form counts (|Adm|, #finite-dim tops, |Σ¹|, |R²|).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub adm: i64,
    pub fdim_top: i64,
    pub sigma1: i64,
    pub r2: i64,
}

impl AdmWeight {
    /// Affine Dynkin label λ₀ (the finite labels live in `weight`).
    pub fn affine_label0(&self, lvl: Level) -> Rat {
        lvl.k() - self.weight.d1 - self.weight.d2
    }
}

fn triples_summing_to(total: i64) -> Vec<[i64; 3]> {
    let mut out = vec![];
    if total < 0 {
        return out;
    }
    for a in 0..=total {
        for b in 0..=(total - a) {
            out.push([a, b, total - a - b]);
        }
    }
    out
}

fn planar_weight(lvl: Level, integral: [i64; 3], fractional: [i64; 3]) -> Weight {
    let t = lvl.k_shifted();
    Weight::new(
        Rat::from_integer(integral[1]) - t * fractional[1],
        Rat::from_integer(integral[2]) - t * fractional[2],
    )
}

fn reflected_weight(lvl: Level, integral: [i64; 3], fractional: [i64; 3]) -> Weight {
    let t = lvl.k_shifted();
    let (u, v) = (lvl.u(), lvl.v());
    Weight::new(
        Rat::from_integer(u - 2 - integral[1]) - t * (v - fractional[1]),
        Rat::from_integer(u - 2 - integral[0]) - t * (v - 1 - fractional[0]),
    )
}

/// All admissible weights of M(u,v), planar before reflected, each in
/// lexicographic order of (integral, fractional) triples.
pub fn enumerate_admissible(lvl: Level) -> Result<Vec<AdmWeight>, AdmissibleError> {
    if lvl.u() < 3 {
        return Err(AdmissibleError::NotAdmissible(lvl.u()));
    }
    let integrals = triples_summing_to(lvl.u() - 3);
    let fractionals = triples_summing_to(lvl.v() - 1);
    let mut out = vec![];
    for &i in &integrals {
        for &f in &fractionals {
            out.push(AdmWeight {
                weight: planar_weight(lvl, i, f),
                adm_type: AdmType::Planar,
                integral: i,
                fractional: f,
            });
        }
    }
    for &i in &integrals {
        for &f in &fractionals {
            if f[1] == 0 {
                continue;
            }
            out.push(AdmWeight {
                weight: reflected_weight(lvl, i, f),
                adm_type: AdmType::Reflected,
                integral: i,
                fractional: f,
            });
        }
    }
    Ok(out)
}

/// Classification of a single admissible weight.
pub fn classify(adm: &AdmWeight, _lvl: Level) -> ClassTag {
    let f = adm.fractional;
    let (in_sigma1, in_r1, in_r2, in_r3, fdim_top) = match adm.adm_type {
        AdmType::Planar => (
            f[1] != 0,
            f[1] == 0 && f[2] != 0,
            f[1] != 0 && f[2] == 0,
            false,
            f[1] == 0 && f[2] == 0,
        ),
        AdmType::Reflected => (false, false, false, f[2] == 0, false),
    };
    let relaxed = in_r1 || in_r2 || in_r3;
    // Semirelaxed-or-Dynkin-twisted-semirelaxed membership: planar weights
    // with some nonzero fractional finite label, or any reflected weight.
    let semi_or_twist = match adm.adm_type {
        AdmType::Planar => f[1] != 0 || f[2] != 0,
        AdmType::Reflected => true,
    };
    let orbit = if relaxed {
        Orbit::Minimal
    } else if semi_or_twist {
        Orbit::Principal
    } else {
        Orbit::Zero
    };
    ClassTag {
        in_adm: true,
        in_sigma1,
        in_r1,
        in_r2,
        in_r3,
        fdim_top,
        orbit,
    }
}

/// Closed count formulas, checked against brute enumeration by the tests.
pub fn counts(lvl: Level) -> Counts {
    let (u, v) = (lvl.u(), lvl.v());
    let base = (u - 1) * (u - 2) / 2;
    Counts {
        adm: base * v * v,
        fdim_top: base,
        sigma1: base * v * (v - 1) / 2,
        r2: base * (v - 1),
    }
}

/// A coset curve [basepoint + ℂ·α_dir] in h*/Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingCurve {
    pub basepoint: Weight,
    /// Simple-root index 1, 2 or 3 (3 = highest root).
    pub direction: u8,
}

impl SingCurve {
    pub fn direction_root(&self) -> Weight {
        match self.direction {
            1 => alpha1(),
            2 => alpha2(),
            3 => alpha3(),
            _ => unreachable!("direction index is 1, 2 or 3"),
        }
    }

    /// Exact membership of [mu] in the curve, decided by pairing the offset
    /// with a coweight functional that kills the direction and maps the root
    /// lattice onto ℤ.
    pub fn contains(&self, mu: Weight) -> bool {
        let delta = mu - self.basepoint;
        let functional = match self.direction {
            1 => comega2(),
            2 => comega1(),
            3 => comega1() - comega2(),
            _ => unreachable!(),
        };
        is_integer(pairing(delta, functional))
    }
}

/// The three singular curves attached to a weight of R².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularLocus {
    pub curves: [SingCurve; 3],
}

impl SingularLocus {
    /// Indices (1-based) of the curves containing [mu].
    pub fn curves_through(&self, mu: Weight) -> Vec<u8> {
        (0..3u8)
            .filter(|&i| self.curves[i as usize].contains(mu))
            .map(|i| i + 1)
            .collect()
    }
}

/// Singular locus of the relaxed family attached to λ ∈ R²: the curves
/// [λ+ℂα₁], [w₁·λ+ℂα₂] and [λ+ℂα₃].
pub fn singular_locus(adm: &AdmWeight, lvl: Level) -> Result<SingularLocus, AdmissibleError> {
    if !classify(adm, lvl).in_r2 {
        return Err(AdmissibleError::NotRelaxedParametrising);
    }
    let lam = adm.weight;
    let w1_shifted = D6Element::w1().apply_shifted(lam);
    Ok(SingularLocus {
        curves: [
            SingCurve {
                basepoint: lam,
                direction: 1,
            },
            SingCurve {
                basepoint: w1_shifted,
                direction: 2,
            },
            SingCurve {
                basepoint: lam,
                direction: 3,
            },
        ],
    })
}

/// Boundedness criterion for the highest-weight sl3-module of weight λ.
pub fn bounded_hw_test(lambda: Weight) -> bool {
    let n1 = is_natural(lambda.d1);
    let n2 = is_natural(lambda.d2);
    let sum = lambda.d1 + lambda.d2;
    (n1 && !n2)
        || (!n1 && n2)
        || (!n1 && !n2 && is_integer(sum) && sum >= Rat::from_integer(-1))
}

/// Lookup table from Dynkin labels to admissible data at a level.
pub fn admissible_index(lvl: Level) -> Result<BTreeMap<Weight, AdmWeight>, AdmissibleError> {
    let mut map = BTreeMap::new();
    for adm in enumerate_admissible(lvl)? {
        map.insert(adm.weight, adm);
    }
    Ok(map)
}

/// The unique R² weight of M(3,2), λ = −(3/2)ω₁.
pub fn m32_relaxed_base() -> Weight {
    Weight::new(rat(-3, 2), Rat::zero())
}
