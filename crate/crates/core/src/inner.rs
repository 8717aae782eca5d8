//! Translations, inner mappings and automorphism checks.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{LoopError, Result};
use crate::perm::Perm;
use crate::table::{Element, LoopTable};

/// Default element cap for [`group_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// `L_a: x ↦ a·x`.
pub fn left_translation(l: &LoopTable, a: Element) -> Perm {
    let mut images = vec![0];
    images.extend_from_slice(l.row(a));
    Perm::from_padded_unchecked(images)
}

/// `R_a: x ↦ x·a`.
pub fn right_translation(l: &LoopTable, a: Element) -> Perm {
    let mut images = vec![0];
    images.extend(l.elements().map(|x| l.mul(x, a)));
    Perm::from_padded_unchecked(images)
}

/// `ℓ_{x,y}: z ↦ (xy)\(x(yz))`.
pub fn inner_l(l: &LoopTable, x: Element, y: Element) -> Perm {
    let xy = l.mul(x, y);
    pointwise(l, |z| l.ldiv(xy, l.mul(x, l.mul(y, z))))
}

/// `r_{x,y}: z ↦ ((zx)y)/(xy)`.
pub fn inner_r(l: &LoopTable, x: Element, y: Element) -> Perm {
    let xy = l.mul(x, y);
    pointwise(l, |z| l.rdiv(l.mul(l.mul(z, x), y), xy))
}

/// `T_x: z ↦ x\(zx)`.
pub fn inner_t(l: &LoopTable, x: Element) -> Perm {
    pointwise(l, |z| l.ldiv(x, l.mul(z, x)))
}

fn pointwise(l: &LoopTable, f: impl Fn(Element) -> Element) -> Perm {
    let mut images = vec![0];
    images.extend(l.elements().map(f));
    Perm::from_padded_unchecked(images)
}

/// Generator of `Inn(Q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InnerGenerator {
    L(Element, Element),
    R(Element, Element),
    T(Element),
}

impl InnerGenerator {
    pub fn to_perm(self, l: &LoopTable) -> Perm {
        match self {
            InnerGenerator::L(x, y) => inner_l(l, x, y),
            InnerGenerator::R(x, y) => inner_r(l, x, y),
            InnerGenerator::T(x) => inner_t(l, x),
        }
    }
}

impl fmt::Display for InnerGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerGenerator::L(x, y) => write!(f, "l_{{{x},{y}}}"),
            InnerGenerator::R(x, y) => write!(f, "r_{{{x},{y}}}"),
            InnerGenerator::T(x) => write!(f, "T_{x}"),
        }
    }
}

/// All `ℓ_{x,y}`, `r_{x,y}` and `T_x` in a fixed order.
pub fn inner_generators(l: &LoopTable) -> Vec<InnerGenerator> {
    let mut gens = Vec::new();
    for x in l.elements() {
        for y in l.elements() {
            gens.push(InnerGenerator::L(x, y));
        }
    }
    for x in l.elements() {
        for y in l.elements() {
            gens.push(InnerGenerator::R(x, y));
        }
    }
    gens.extend(l.elements().map(InnerGenerator::T));
    gens
}

pub fn is_automorphism(l: &LoopTable, sigma: &Perm) -> bool {
    sigma.degree() == l.order()
        && l.elements().all(|x| {
            l.elements()
                .all(|y| sigma.apply(l.mul(x, y)) == l.mul(sigma.apply(x), sigma.apply(y)))
        })
}

/// First inner generator (in [`inner_generators`] order) that is not an
/// automorphism, restricted to the `ℓ` family when `left_only`.
pub fn non_automorphic_witness(l: &LoopTable, left_only: bool) -> Option<InnerGenerator> {
    let gens: Vec<InnerGenerator> = inner_generators(l)
        .into_iter()
        .filter(|g| !left_only || matches!(g, InnerGenerator::L(..)))
        .collect();
    gens.par_iter()
        .find_first(|g| !is_automorphism(l, &g.to_perm(l)))
        .copied()
}

pub fn is_automorphic(l: &LoopTable) -> bool {
    non_automorphic_witness(l, false).is_none()
}

pub fn is_left_automorphic(l: &LoopTable) -> bool {
    non_automorphic_witness(l, true).is_none()
}

/// For Moufang loops: `ℓ_{x,y}` is an automorphism iff `r_{x,y}` is, for every pair.
pub fn moufang_l_iff_r_check(l: &LoopTable) -> Result<bool> {
    if !l.is_moufang() {
        return Err(LoopError::Precondition(format!(
            "{} is not Moufang",
            l.display_name()
        )));
    }
    let pairs: Vec<(Element, Element)> = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| (x, y)))
        .collect();
    Ok(pairs.par_iter().all(|&(x, y)| {
        is_automorphism(l, &inner_l(l, x, y)) == is_automorphism(l, &inner_r(l, x, y))
    }))
}

/// A permutation group given by generators, with its element list when the
/// closure finished under the cap.
#[derive(Debug, Clone)]
pub struct PermGroupHandle {
    pub generators: Vec<Perm>,
    pub elements: Option<Vec<Perm>>,
    pub order: Option<usize>,
    pub capped: bool,
}

/// Breadth-first closure of `gens` under composition. Stops with
/// `capped = true` once more than `cap` elements have been found.
pub fn group_closure(gens: &[Perm], cap: usize) -> PermGroupHandle {
    assert!(cap >= 1, "cap must be positive");
    let degree = gens.first().map_or(0, Perm::degree);
    assert!(
        gens.iter().all(|g| g.degree() == degree),
        "generators of different degree"
    );
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return PermGroupHandle {
                        generators: gens.to_vec(),
                        elements: None,
                        order: None,
                        capped: true,
                    };
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    PermGroupHandle {
        generators: gens.to_vec(),
        order: Some(elements.len()),
        elements: Some(elements),
        capped: false,
    }
}

/// Explicit `Inn(Q)` from its generators (deduplicated).
pub fn inner_mapping_group(l: &LoopTable, cap: usize) -> PermGroupHandle {
    let mut gens: Vec<Perm> = inner_generators(l)
        .into_iter()
        .map(|g| g.to_perm(l))
        .filter(|p| !p.is_identity())
        .collect();
    gens.sort();
    gens.dedup();
    group_closure(&gens, cap)
}
