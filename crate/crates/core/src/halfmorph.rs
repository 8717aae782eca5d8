//! Half-isomorphisms: bijections `τ` with `τ(xy) ∈ {τ(x)τ(y), τ(y)τ(x)}`.
//!
//! A half-isomorphism is *trivial* when it is an isomorphism or an
//! anti-isomorphism. This module verifies and classifies such maps,
//! enumerates every half-automorphism of a loop by pruned backtracking, and
//! drives the check that finite automorphic Moufang loops have only trivial
//! half-automorphisms.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::inner;
use crate::perm::Perm;
use crate::subloops::{self, Quotient};
use crate::table::{Element, LoopTable};

#[derive(Clone)]
pub struct HalfMap {
    domain: Arc<LoopTable>,
    codomain: Arc<LoopTable>,
    perm: Perm,
}

/// Both candidate values for one pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLaw {
    pub x: Element,
    pub y: Element,
    /// `τ(x·y)`
    pub image: Element,
    /// `τ(x)·τ(y)`
    pub hom: Element,
    /// `τ(y)·τ(x)`
    pub anti: Element,
}

impl PairLaw {
    pub fn hom_holds(&self) -> bool {
        self.image == self.hom
    }

    pub fn anti_holds(&self) -> bool {
        self.image == self.anti
    }

    pub fn hom_only(&self) -> bool {
        self.hom_holds() && !self.anti_holds()
    }

    pub fn anti_only(&self) -> bool {
        self.anti_holds() && !self.hom_holds()
    }
}

impl HalfMap {
    pub fn new(domain: Arc<LoopTable>, codomain: Arc<LoopTable>, perm: Perm) -> Result<Self> {
        if domain.order() != codomain.order() || perm.degree() != domain.order() {
            return Err(LoopError::DegreeMismatch {
                left: domain.order(),
                right: perm.degree().max(codomain.order()),
            });
        }
        let map = HalfMap {
            domain,
            codomain,
            perm,
        };
        if let Some(bad) = map.first_violation() {
            return Err(LoopError::HalfProperty {
                x: bad.x,
                y: bad.y,
                image: bad.image,
                hom: bad.hom,
                anti: bad.anti,
            });
        }
        debug_assert_eq!(map.apply(1), 1);
        Ok(map)
    }

    /// A half-automorphism candidate of `l`.
    pub fn on(l: &Arc<LoopTable>, perm: Perm) -> Result<Self> {
        Self::new(Arc::clone(l), Arc::clone(l), perm)
    }

    pub fn identity(l: &Arc<LoopTable>) -> Self {
        Self::on(l, Perm::identity(l.order())).expect("identity is a half-automorphism")
    }

    pub fn domain(&self) -> &Arc<LoopTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<LoopTable> {
        &self.codomain
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_endomorphic(&self) -> bool {
        Arc::ptr_eq(&self.domain, &self.codomain) || self.domain == self.codomain
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.perm.apply(x)
    }

    pub fn pair(&self, x: Element, y: Element) -> PairLaw {
        let (a, b) = (self.apply(x), self.apply(y));
        PairLaw {
            x,
            y,
            image: self.apply(self.domain.mul(x, y)),
            hom: self.codomain.mul(a, b),
            anti: self.codomain.mul(b, a),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = PairLaw> + '_ {
        self.domain
            .elements()
            .flat_map(move |x| self.domain.elements().map(move |y| self.pair(x, y)))
    }

    fn first_violation(&self) -> Option<PairLaw> {
        self.pairs().find(|p| !p.hom_holds() && !p.anti_holds())
    }

    pub fn classify(&self) -> HalfClass {
        let mut class = HalfClass {
            kind: HalfKind::Both,
            hom_pairs: 0,
            anti_pairs: 0,
            witness_hom: None,
            witness_anti: None,
        };
        for p in self.pairs() {
            class.hom_pairs += usize::from(p.hom_holds());
            class.anti_pairs += usize::from(p.anti_holds());
            if p.hom_only() && class.witness_hom.is_none() {
                class.witness_hom = Some((p.x, p.y));
            }
            if p.anti_only() && class.witness_anti.is_none() {
                class.witness_anti = Some((p.x, p.y));
            }
        }
        class.kind = match (class.witness_hom, class.witness_anti) {
            (None, None) => HalfKind::Both,
            (Some(_), None) => HalfKind::Isomorphism,
            (None, Some(_)) => HalfKind::AntiIsomorphism,
            (Some(_), Some(_)) => HalfKind::ProperHalf,
        };
        class
    }

    /// Checks `τ((uv)u) = (τ(u)τ(v))τ(u)` and `τ(u(vu)) = τ(u)(τ(v)τ(u))`
    /// over all pairs, and separately the variant with final factor `τ(v)`.
    pub fn semi_isomorphism(&self) -> SemiIsoReport {
        let (d, c) = (&*self.domain, &*self.codomain);
        let mut report = SemiIsoReport {
            holds: true,
            variant_holds: true,
            first_violation: None,
        };
        for u in d.elements() {
            for v in d.elements() {
                let (a, b) = (self.apply(u), self.apply(v));
                let left = self.apply(d.mul(d.mul(u, v), u));
                let right = self.apply(d.mul(u, d.mul(v, u)));
                let ok = left == c.mul(c.mul(a, b), a) && right == c.mul(a, c.mul(b, a));
                if !ok {
                    report.holds = false;
                    report.first_violation.get_or_insert((u, v));
                }
                if left != c.mul(c.mul(a, b), b) {
                    report.variant_holds = false;
                }
            }
        }
        report
    }

    pub fn is_semi_isomorphism(&self) -> bool {
        self.semi_isomorphism().holds
    }

    /// All `(x, y, z)` with `[x,y] ≠ 1`, `[x,z] ≠ 1`, `(x, y)` hom-only and
    /// `(x, z)` anti-only, in lexicographic order. Commutators are taken in
    /// the domain; they are bracket-independent when the domain is Moufang.
    pub fn find_gg_triples(&self) -> Vec<GgTriple> {
        let d = &*self.domain;
        let mut out = Vec::new();
        for x in d.elements() {
            let laws: Vec<PairLaw> = d.elements().map(|y| self.pair(x, y)).collect();
            let ys: Vec<Element> = laws
                .iter()
                .filter(|p| p.hom_only() && d.commutator(x, p.y) != 1)
                .map(|p| p.y)
                .collect();
            if ys.is_empty() {
                continue;
            }
            let zs: Vec<Element> = laws
                .iter()
                .filter(|p| p.anti_only() && d.commutator(x, p.y) != 1)
                .map(|p| p.y)
                .collect();
            for &y in &ys {
                for &z in &zs {
                    out.push(GgTriple { x, y, z });
                }
            }
        }
        out
    }

    /// `D(L, τ) = {g : ∃h, τ(gh) = τ(h)τ(g) ≠ τ(g)τ(h)}`.
    pub fn d_set(&self) -> Result<BTreeSet<Element>> {
        self.require_endomorphic("d_set")?;
        Ok(self
            .domain
            .elements()
            .filter(|&g| self.domain.elements().any(|h| self.pair(g, h).anti_only()))
            .collect())
    }

    fn require_endomorphic(&self, what: &str) -> Result<()> {
        if self.is_endomorphic() {
            Ok(())
        } else {
            Err(LoopError::Precondition(format!(
                "{what} needs domain = codomain"
            )))
        }
    }

    pub fn inverse(&self) -> Result<HalfMap> {
        HalfMap::new(
            Arc::clone(&self.codomain),
            Arc::clone(&self.domain),
            self.perm.inverse(),
        )
        .map_err(|e| LoopError::Internal(format!("inverse of a half-map failed: {e}")))
    }

    /// `x ↦ τ(x)⁻¹`, inverses taken in the codomain.
    pub fn compose_with_inversion(&self) -> Result<InversionComposite> {
        let c = &*self.codomain;
        if !c.has_two_sided_inverses() {
            return Err(LoopError::Precondition(format!(
                "{} lacks two-sided inverses",
                c.display_name()
            )));
        }
        let mut images = vec![0];
        images.extend(
            self.domain
                .elements()
                .map(|x| c.right_inverse(self.apply(x))),
        );
        let perm = Perm::from_padded_unchecked(images);
        let d = &*self.domain;
        let is_homomorphism = d.elements().all(|x| {
            d.elements()
                .all(|y| perm.apply(d.mul(x, y)) == c.mul(perm.apply(x), perm.apply(y)))
        });
        Ok(InversionComposite {
            perm,
            is_homomorphism,
        })
    }

    /// Coset map `xA ↦ τ(x)B` between precomputed quotients.
    pub fn induced_perm(&self, qd: &Quotient, qc: &Quotient) -> Result<Perm> {
        let mut images = Vec::with_capacity(qd.cosets.len());
        for coset in &qd.cosets {
            let target = qc.project(self.apply(coset[0]));
            if let Some(&x) = coset.iter().find(|&&x| qc.project(self.apply(x)) != target) {
                return Err(LoopError::InducedMap(format!(
                    "{} and {x} share a coset but land in cosets {target} and {}",
                    coset[0],
                    qc.project(self.apply(x))
                )));
            }
            images.push(target);
        }
        Perm::from_images(&images)
            .map_err(|_| LoopError::InducedMap("induced map is not a bijection".into()))
    }

    /// The map induced on `L/(L,L,L) → L'/(L',L',L')`.
    pub fn induced_on_quotient(&self) -> Result<InducedMap> {
        let (d, c) = (&*self.domain, &*self.codomain);
        let a = subloops::associator_subloop(d);
        let b = subloops::associator_subloop(c);
        let image = self.perm.image_of(a.elements());
        if image != b.elements() {
            return Err(LoopError::InducedMap(format!(
                "τ maps the associator subloop {:?} to {:?}, not {:?}",
                a.elements(),
                image,
                b.elements()
            )));
        }
        let qd = subloops::quotient(d, &a)?;
        let qc = subloops::quotient(c, &b)?;
        let perm = self.induced_perm(&qd, &qc)?;
        let map = HalfMap::new(Arc::new(qd.table.clone()), Arc::new(qc.table.clone()), perm)?;
        Ok(InducedMap {
            map,
            domain_quotient: qd,
            codomain_quotient: qc,
        })
    }

    /// Whether `τ` carries `(L,L,L)`, `N(L)`, `C(L)` and `[L,L]` of the
    /// domain onto the corresponding subloops of the codomain.
    pub fn preserves_derived_subloops(&self) -> Result<bool> {
        let (d, c) = (&*self.domain, &*self.codomain);
        let pairs = [
            (
                subloops::associator_subloop(d).elements().to_vec(),
                subloops::associator_subloop(c).elements().to_vec(),
            ),
            (
                subloops::nucleus(d)?.elements().to_vec(),
                subloops::nucleus(c)?.elements().to_vec(),
            ),
            (
                subloops::center(d)?.elements().to_vec(),
                subloops::center(c)?.elements().to_vec(),
            ),
            (
                subloops::commutator_subloop(d).elements().to_vec(),
                subloops::commutator_subloop(c).elements().to_vec(),
            ),
        ];
        Ok(pairs
            .iter()
            .all(|(from, to)| self.perm.image_of(from) == *to))
    }

    /// Pairs `(d, g)` with `d ∈ [L,L]`, `g ∈ D(L,τ)` and `[d, g] ∉ C(L)`.
    pub fn commutator_d_set_violations(&self) -> Result<Vec<(Element, Element)>> {
        let d_set = self.d_set()?;
        let l = &*self.domain;
        let derived = subloops::commutator_subloop(l);
        let center = subloops::center(l)?;
        let mut out = Vec::new();
        for &d in derived.elements() {
            for &g in &d_set {
                if !center.contains(l.commutator(d, g)) {
                    out.push((d, g));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HalfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.perm.fmt(f)
    }
}

impl fmt::Debug for HalfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HalfMap({} -> {}: {})",
            self.domain.display_name(),
            self.codomain.display_name(),
            self.perm
        )
    }
}

impl PartialEq for HalfMap {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.domain == other.domain && self.codomain == other.codomain
    }
}

/// Checked construction from the images of `1..=n`.
pub fn make_half_map(
    domain: Arc<LoopTable>,
    codomain: Arc<LoopTable>,
    images: &[Element],
) -> Result<HalfMap> {
    let n = domain.order();
    if images.len() != n {
        return Err(LoopError::DegreeMismatch {
            left: n,
            right: images.len(),
        });
    }
    HalfMap::new(domain, codomain, Perm::from_images(images)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HalfKind {
    Isomorphism,
    AntiIsomorphism,
    /// Both laws hold on every pair.
    Both,
    /// Neither law holds globally.
    ProperHalf,
}

impl fmt::Display for HalfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalfKind::Isomorphism => "Isomorphism",
            HalfKind::AntiIsomorphism => "AntiIsomorphism",
            HalfKind::Both => "Both",
            HalfKind::ProperHalf => "ProperHalf",
        })
    }
}

/// Pairwise census of a half-map. Witnesses are the lexicographically
/// least hom-only and anti-only pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfClass {
    pub kind: HalfKind,
    pub hom_pairs: usize,
    pub anti_pairs: usize,
    pub witness_hom: Option<(Element, Element)>,
    pub witness_anti: Option<(Element, Element)>,
}

impl HalfClass {
    pub fn is_trivial(&self) -> bool {
        self.kind != HalfKind::ProperHalf
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiIsoReport {
    /// Both bracketings of `τ(uvu) = τ(u)τ(v)τ(u)` hold for all pairs.
    pub holds: bool,
    /// `τ((uv)u) = (τ(u)τ(v))τ(v)` holds for all pairs.
    pub variant_holds: bool,
    pub first_violation: Option<(Element, Element)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GgTriple {
    pub x: Element,
    pub y: Element,
    pub z: Element,
}

#[derive(Debug, Clone)]
pub struct InversionComposite {
    pub perm: Perm,
    pub is_homomorphism: bool,
}

#[derive(Debug, Clone)]
pub struct InducedMap {
    pub map: HalfMap,
    pub domain_quotient: Quotient,
    pub codomain_quotient: Quotient,
}

/// Result of [`enumerate_half_automorphisms`]. `complete` is false when the
/// search stopped at the limit.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub maps: Vec<HalfMap>,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HalfCensus {
    pub total: usize,
    pub iso: usize,
    pub anti: usize,
    pub both: usize,
    pub proper: usize,
}

impl Enumeration {
    pub fn census(&self) -> HalfCensus {
        let mut c = HalfCensus::default();
        for m in &self.maps {
            c.total += 1;
            match m.classify().kind {
                HalfKind::Isomorphism => c.iso += 1,
                HalfKind::AntiIsomorphism => c.anti += 1,
                HalfKind::Both => c.both += 1,
                HalfKind::ProperHalf => c.proper += 1,
            }
        }
        c
    }

    pub fn perms(&self) -> Vec<Perm> {
        self.maps.iter().map(|m| m.perm.clone()).collect()
    }
}

struct Search<'a> {
    l: &'a LoopTable,
    /// image of each element, 0 while unassigned
    img: Vec<Element>,
    /// preimage of each value, 0 while unused
    pre: Vec<Element>,
    limit: Option<usize>,
    found: Vec<Perm>,
}

impl<'a> Search<'a> {
    fn new(l: &'a LoopTable, limit: Option<usize>) -> Self {
        let n = l.order();
        let mut img = vec![0; n + 1];
        let mut pre = vec![0; n + 1];
        img[1] = 1;
        pre[1] = 1;
        Search {
            l,
            img,
            pre,
            limit,
            found: Vec::new(),
        }
    }

    fn full(&self) -> bool {
        self.limit.is_some_and(|lim| self.found.len() >= lim)
    }

    /// Elements `1..=k` carry images. Checks the pair `(x, y)`, both assigned.
    #[inline]
    fn pair_ok(&self, x: Element, y: Element, k: Element) -> bool {
        let l = self.l;
        let xy = l.mul(x, y);
        let (a, b) = (self.img[x], self.img[y]);
        let c1 = l.mul(a, b);
        let c2 = l.mul(b, a);
        if xy <= k {
            let t = self.img[xy];
            t == c1 || t == c2
        } else {
            self.pre[c1] == 0 || self.pre[c2] == 0
        }
    }

    /// Constraints touched by assigning an image to `k`.
    fn consistent(&self, k: Element) -> bool {
        let l = self.l;
        for y in 1..=k {
            if !self.pair_ok(k, y, k) || !self.pair_ok(y, k, k) {
                return false;
            }
        }
        for x in 1..k {
            let y = l.ldiv(x, k);
            if y <= k && !self.pair_ok(x, y, k) {
                return false;
            }
        }
        // pairs whose candidate products now include the newly used value
        let v = self.img[k];
        for x in 1..=k {
            let b = l.ldiv(self.img[x], v);
            let y = self.pre[b];
            if y != 0 && (!self.pair_ok(x, y, k) || !self.pair_ok(y, x, k)) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, k: Element) {
        let n = self.l.order();
        if k > n {
            self.found
                .push(Perm::from_padded_unchecked(self.img.clone()));
            return;
        }
        for v in 2..=n {
            if self.full() {
                return;
            }
            if self.pre[v] != 0 {
                continue;
            }
            self.assign(k, v);
            if self.consistent(k) {
                self.run(k + 1);
            }
            self.unassign(k, v);
        }
    }

    fn assign(&mut self, k: Element, v: Element) {
        self.img[k] = v;
        self.pre[v] = k;
    }

    fn unassign(&mut self, k: Element, v: Element) {
        self.img[k] = 0;
        self.pre[v] = 0;
    }
}

/// Every half-automorphism of `l`, sorted lexicographically by images.
/// Elements are assigned in ascending order; a partial assignment is cut as
/// soon as an assigned pair `(x, y)` has `τ(xy)` outside
/// `{τ(x)τ(y), τ(y)τ(x)}`, or, with `xy` still unassigned, both candidates
/// are already taken. With a `limit` the search runs sequentially and
/// returns the lexicographically first maps.
pub fn enumerate_half_automorphisms(l: &Arc<LoopTable>, limit: Option<usize>) -> Enumeration {
    let n = l.order();
    let perms: Vec<Perm> = if n <= 2 || limit.is_some() {
        let mut s = Search::new(l, limit);
        s.run(2);
        s.found
    } else {
        (2..=n)
            .into_par_iter()
            .map(|v| {
                let mut s = Search::new(l, None);
                s.assign(2, v);
                if s.consistent(2) {
                    s.run(3);
                }
                s.found
            })
            .collect::<Vec<_>>()
            .concat()
    };
    let complete = limit.is_none_or(|lim| perms.len() < lim);
    let mut maps: Vec<HalfMap> = perms
        .into_iter()
        .map(|p| HalfMap::on(l, p).expect("search emits only half-automorphisms"))
        .collect();
    maps.sort_by(|a, b| a.perm.cmp(&b.perm));
    Enumeration { maps, complete }
}

/// Whether a complete enumeration is closed under composition and inverses.
pub fn half_maps_form_group_check(enumeration: &Enumeration) -> Result<bool> {
    if !enumeration.complete {
        return Err(LoopError::Precondition("enumeration hit its limit".into()));
    }
    let set: HashSet<Perm> = enumeration.perms().into_iter().collect();
    let Some(first) = enumeration.maps.first() else {
        return Ok(false);
    };
    let degree = first.perm.degree();
    if !set.contains(&Perm::identity(degree)) || set.iter().any(|p| !set.contains(&p.inverse())) {
        return Ok(false);
    }
    // Grow a generating set T ⊆ S; S is a group iff ⟨T⟩ never leaves S and
    // finally covers it.
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    let mut sorted: Vec<&Perm> = set.iter().collect();
    sorted.sort();
    for p in sorted {
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let closure = inner::group_closure(&gens, set.len());
        let Some(elements) = closure.elements else {
            return Ok(false);
        };
        if elements.iter().any(|q| !set.contains(q)) {
            return Ok(false);
        }
        span = elements.into_iter().collect();
    }
    Ok(span.len() == set.len())
}

/// Outcome of the main-theorem driver on one loop.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub name: String,
    pub order: usize,
    pub is_moufang: bool,
    pub is_automorphic: bool,
    pub census: HalfCensus,
    pub complete: bool,
    /// Least proper half-automorphism in cycle notation, if any.
    pub proper_witness: Option<String>,
}

impl TheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.is_moufang && self.is_automorphic
    }
}

/// Enumerates all half-automorphisms and, when `l` is automorphic Moufang,
/// fails if any of them is proper.
pub fn verify_main_theorem(l: &Arc<LoopTable>) -> Result<TheoremReport> {
    let is_moufang = l.is_moufang();
    let is_automorphic = inner::is_automorphic(l);
    let enumeration = enumerate_half_automorphisms(l, None);
    let census = enumeration.census();
    let proper_witness = enumeration
        .maps
        .iter()
        .find(|m| m.classify().kind == HalfKind::ProperHalf)
        .map(ToString::to_string);
    let report = TheoremReport {
        name: l.display_name(),
        order: l.order(),
        is_moufang,
        is_automorphic,
        census,
        complete: enumeration.complete,
        proper_witness,
    };
    if report.hypotheses_hold() {
        if let Some(map) = &report.proper_witness {
            return Err(LoopError::TheoremViolation {
                name: report.name,
                map: map.clone(),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(t: LoopTable) -> Arc<LoopTable> {
        Arc::new(t)
    }

    #[test]
    fn identity_is_isomorphism_or_both() {
        let s3 = arc(catalog::make_symmetric3());
        assert_eq!(
            HalfMap::identity(&s3).classify().kind,
            HalfKind::Isomorphism
        );
        let z3 = arc(catalog::make_cyclic(3));
        let c = HalfMap::identity(&z3).classify();
        assert_eq!(c.kind, HalfKind::Both);
        assert!(c.is_trivial());
        assert_eq!(c.hom_pairs, 9);
    }

    #[test]
    fn violation_reports_values() {
        let z4 = arc(catalog::make_cyclic(4));
        match make_half_map(z4.clone(), z4.clone(), &[1, 3, 2, 4]) {
            Err(LoopError::HalfProperty {
                x,
                y,
                image,
                hom,
                anti,
            }) => {
                // 2·2 = 3 but τ(2)τ(2) = 3·3 = 1
                assert_eq!((x, y, image, hom, anti), (2, 2, 2, 1, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            make_half_map(z4.clone(), z4, &[1, 2, 3]),
            Err(LoopError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn s3_inversion_is_anti() {
        let s3 = arc(catalog::make_symmetric3());
        let images: Vec<Element> = s3.elements().map(|x| s3.right_inverse(x)).collect();
        let tau = make_half_map(s3.clone(), s3.clone(), &images).unwrap();
        assert_eq!(tau.classify().kind, HalfKind::AntiIsomorphism);
        let c = tau.compose_with_inversion().unwrap();
        assert!(c.is_homomorphism && c.perm.is_identity());
        assert!(tau.find_gg_triples().is_empty());
    }

    #[test]
    fn enumeration_small() {
        let z1 = arc(catalog::make_cyclic(1));
        let e = enumerate_half_automorphisms(&z1, None);
        assert_eq!(e.maps.len(), 1);
        assert!(e.complete);
        let z4 = arc(catalog::make_cyclic(4));
        let e = enumerate_half_automorphisms(&z4, None);
        assert_eq!(e.maps.len(), 2);
        assert!(half_maps_form_group_check(&e).unwrap());
        let limited = enumerate_half_automorphisms(&z4, Some(1));
        assert!(!limited.complete);
        assert_eq!(limited.maps[0], e.maps[0]);
        assert!(half_maps_form_group_check(&limited).is_err());
    }

    #[test]
    fn non_group_set_is_detected() {
        let z5 = arc(catalog::make_cyclic(5));
        let all = enumerate_half_automorphisms(&z5, None);
        assert_eq!(all.maps.len(), 4);
        let partial = Enumeration {
            maps: all.maps[..3].to_vec(),
            complete: true,
        };
        assert!(!half_maps_form_group_check(&partial).unwrap());
    }

    #[test]
    fn theorem_driver_on_s3() {
        let s3 = arc(catalog::make_symmetric3());
        let r = verify_main_theorem(&s3).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.census.proper, 0);
        assert_eq!(r.census.total, 12);
    }
}
