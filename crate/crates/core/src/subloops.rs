//! Subloop generation, the derived subloops (commutator and associator
//! subloops, nuclei, commutant, center), normality, quotients, Sylow and
//! Hall subloops, and commutative nilpotency.

use std::collections::{BTreeSet, HashSet};

use crate::error::{LoopError, Result};
use crate::table::{Element, LoopTable};

/// Cap on candidate subloops examined by the Sylow fallback search.
pub const SYLOW_SEARCH_CAP: usize = 100_000;

/// A subset of a loop closed under `·`, `\` and `/`.
#[derive(Debug, Clone)]
pub struct Subloop<'a> {
    parent: &'a LoopTable,
    elements: Vec<Element>,
    generators: Vec<Element>,
    is_group: bool,
}

impl PartialEq for Subloop<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.elements == other.elements
    }
}

impl<'a> Subloop<'a> {
    /// Wraps a set that is claimed to be closed; the claim is re-checked.
    pub fn from_set(parent: &'a LoopTable, set: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut elements: Vec<Element> = set.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| parent.check(x).is_err()) {
            return Err(LoopError::Internal("subloop element out of range".into()));
        }
        if !is_closed(parent, &elements) {
            return Err(LoopError::Internal(format!(
                "set {:?} is not closed in {}",
                elements,
                parent.display_name()
            )));
        }
        let is_group = parent.associative_on(&elements);
        Ok(Subloop {
            parent,
            generators: elements.clone(),
            elements,
            is_group,
        })
    }

    pub fn whole(parent: &'a LoopTable) -> Self {
        Self::from_set(parent, parent.elements()).expect("whole loop is closed")
    }

    pub fn trivial(parent: &'a LoopTable) -> Self {
        Self::from_set(parent, [1]).expect("identity is closed")
    }

    pub fn parent(&self) -> &'a LoopTable {
        self.parent
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn is_trivial(&self) -> bool {
        self.elements == [1]
    }

    pub fn is_subset_of(&self, other: &Subloop<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        is_normal(self.parent, self)
    }

    /// The subloop as a loop in its own right, labelled by position in the
    /// sorted element list. Returns the table and the parent label of each
    /// new label (index 0 unused).
    pub fn to_table(&self) -> (LoopTable, Vec<Element>) {
        let k = self.order();
        let mut index = vec![0; self.parent.order() + 1];
        for (i, &x) in self.elements.iter().enumerate() {
            index[x] = i + 1;
        }
        let rows: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&x| {
                self.elements
                    .iter()
                    .map(|&y| index[self.parent.mul(x, y)])
                    .collect()
            })
            .collect();
        let table = LoopTable::from_rows(&rows)
            .expect("closed subset containing 1 is a loop")
            .with_name(format!("{}<{} elements>", self.parent.display_name(), k));
        let mut labels = vec![0];
        labels.extend_from_slice(&self.elements);
        (table, labels)
    }
}

/// Independent closure re-check under `·`, `\` and `/`.
pub fn is_closed(l: &LoopTable, set: &[Element]) -> bool {
    let mut member = vec![false; l.order() + 1];
    for &x in set {
        member[x] = true;
    }
    member[1]
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| member[l.mul(a, b)] && member[l.ldiv(a, b)] && member[l.rdiv(a, b)])
        })
}

/// Least subloop containing `seed`.
pub fn generate_subloop<'a>(l: &'a LoopTable, seed: &[Element]) -> Subloop<'a> {
    let mut member = vec![false; l.order() + 1];
    let mut elements = Vec::new();
    let push = |x: Element, member: &mut Vec<bool>, elements: &mut Vec<Element>| {
        if !member[x] {
            member[x] = true;
            elements.push(x);
        }
    };
    push(1, &mut member, &mut elements);
    for &s in seed {
        push(s, &mut member, &mut elements);
    }
    // Every pair (a, b) is combined once, when the later of the two is processed.
    let mut done = 0;
    while done < elements.len() {
        let a = elements[done];
        let mut i = 0;
        while i <= done {
            let b = elements[i];
            for v in [
                l.mul(a, b),
                l.mul(b, a),
                l.ldiv(a, b),
                l.ldiv(b, a),
                l.rdiv(a, b),
                l.rdiv(b, a),
            ] {
                push(v, &mut member, &mut elements);
            }
            i += 1;
        }
        done += 1;
    }
    elements.sort_unstable();
    let is_group = l.associative_on(&elements);
    let mut generators = seed.to_vec();
    generators.sort_unstable();
    generators.dedup();
    Subloop {
        parent: l,
        elements,
        generators,
        is_group,
    }
}

/// `[Q, Q]`, generated by all commutators.
pub fn commutator_subloop(l: &LoopTable) -> Subloop<'_> {
    let values: BTreeSet<Element> = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| l.commutator(x, y)))
        .collect();
    generate_subloop(l, &values.into_iter().collect::<Vec<_>>())
}

/// `(Q, Q, Q)`, generated by all associators.
pub fn associator_subloop(l: &LoopTable) -> Subloop<'_> {
    let mut values = BTreeSet::new();
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                values.insert(l.associator(x, y, z));
            }
        }
    }
    generate_subloop(l, &values.into_iter().collect::<Vec<_>>())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Left,
    Middle,
    Right,
}

fn nucleus_set(l: &LoopTable, slot: Slot) -> Vec<Element> {
    l.elements()
        .filter(|&x| {
            l.elements().all(|a| {
                l.elements().all(|b| {
                    let (p, q, r) = match slot {
                        Slot::Left => (x, a, b),
                        Slot::Middle => (a, x, b),
                        Slot::Right => (a, b, x),
                    };
                    l.mul(l.mul(p, q), r) == l.mul(p, l.mul(q, r))
                })
            })
        })
        .collect()
}

/// `N_λ(Q) = {x : (x, a, b) = 1 ∀a, b}`.
pub fn nucleus_left(l: &LoopTable) -> Result<Subloop<'_>> {
    Subloop::from_set(l, nucleus_set(l, Slot::Left))
}

/// `N_μ(Q) = {x : (a, x, b) = 1 ∀a, b}`.
pub fn nucleus_middle(l: &LoopTable) -> Result<Subloop<'_>> {
    Subloop::from_set(l, nucleus_set(l, Slot::Middle))
}

/// `N_ρ(Q) = {x : (a, b, x) = 1 ∀a, b}`.
pub fn nucleus_right(l: &LoopTable) -> Result<Subloop<'_>> {
    Subloop::from_set(l, nucleus_set(l, Slot::Right))
}

/// `N(Q) = N_λ ∩ N_μ ∩ N_ρ`.
pub fn nucleus(l: &LoopTable) -> Result<Subloop<'_>> {
    let left = nucleus_set(l, Slot::Left);
    let middle = nucleus_set(l, Slot::Middle);
    let right = nucleus_set(l, Slot::Right);
    Subloop::from_set(
        l,
        left.into_iter()
            .filter(|x| middle.contains(x) && right.contains(x)),
    )
}

/// Elements commuting with everything; not necessarily closed in general loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutant {
    pub elements: Vec<Element>,
    pub closed: bool,
}

pub fn commutant(l: &LoopTable) -> Commutant {
    let elements: Vec<Element> = l
        .elements()
        .filter(|&x| l.elements().all(|a| l.mul(x, a) == l.mul(a, x)))
        .collect();
    let closed = is_closed(l, &elements);
    Commutant { elements, closed }
}

/// `C(Q) = Z(Q) ∩ N(Q)`.
pub fn center(l: &LoopTable) -> Result<Subloop<'_>> {
    let z = commutant(l);
    let n = nucleus(l)?;
    Subloop::from_set(l, z.elements.into_iter().filter(|&x| n.contains(x)))
}

/// Invariance under every `ℓ_{x,y}`, `r_{x,y}` and `T_x`.
pub fn is_normal(l: &LoopTable, h: &Subloop<'_>) -> bool {
    let mut member = vec![false; l.order() + 1];
    for &x in h.elements() {
        member[x] = true;
    }
    let hs = h.elements();
    l.elements().all(|x| {
        hs.iter().all(|&z| member[l.ldiv(x, l.mul(z, x))])
            && l.elements().all(|y| {
                let xy = l.mul(x, y);
                hs.iter().all(|&z| {
                    member[l.ldiv(xy, l.mul(x, l.mul(y, z)))]
                        && member[l.rdiv(l.mul(l.mul(z, x), y), xy)]
                })
            })
    })
}

/// Quotient loop with its projection and cosets.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: LoopTable,
    /// `projection[x]` is the coset label of `x` (index 0 unused).
    pub projection: Vec<Element>,
    /// Cosets ordered by least representative; coset `1` is the kernel.
    pub cosets: Vec<Vec<Element>>,
}

impl Quotient {
    pub fn project(&self, x: Element) -> Element {
        self.projection[x]
    }

    /// Exhaustive check that the projection is a surjective homomorphism
    /// with the given kernel.
    pub fn verify(&self, l: &LoopTable, kernel: &Subloop<'_>) -> bool {
        let hom = l.elements().all(|x| {
            l.elements().all(|y| {
                self.project(l.mul(x, y)) == self.table.mul(self.project(x), self.project(y))
            })
        });
        let onto: HashSet<Element> = l.elements().map(|x| self.project(x)).collect();
        let ker: Vec<Element> = l.elements().filter(|&x| self.project(x) == 1).collect();
        hom && onto.len() == self.table.order() && ker == kernel.elements()
    }
}

pub fn quotient(l: &LoopTable, h: &Subloop<'_>) -> Result<Quotient> {
    if !is_normal(l, h) {
        return Err(LoopError::NotNormal(format!(
            "{:?} in {}",
            h.elements(),
            l.display_name()
        )));
    }
    let n = l.order();
    let mut projection = vec![0; n + 1];
    let mut cosets: Vec<Vec<Element>> = Vec::new();
    for x in l.elements() {
        if projection[x] != 0 {
            continue;
        }
        let label = cosets.len() + 1;
        let mut coset: Vec<Element> = h.elements().iter().map(|&k| l.mul(x, k)).collect();
        coset.sort_unstable();
        for &c in &coset {
            if projection[c] != 0 {
                return Err(LoopError::CosetConflict(format!(
                    "{c} lies in coset {} and in {x}H",
                    projection[c]
                )));
            }
            projection[c] = label;
        }
        cosets.push(coset);
    }
    let m = cosets.len();
    let mut rows = vec![vec![0; m]; m];
    for x in l.elements() {
        for y in l.elements() {
            let (a, b) = (projection[x], projection[y]);
            let v = projection[l.mul(x, y)];
            let cell = &mut rows[a - 1][b - 1];
            if *cell == 0 {
                *cell = v;
            } else if *cell != v {
                return Err(LoopError::CosetConflict(format!(
                    "cosets {a}·{b}: representatives give {} and {v} (witness {x}·{y})",
                    *cell
                )));
            }
        }
    }
    let table = LoopTable::from_rows(&rows)?.with_name(format!(
        "{}/<{} elements>",
        l.display_name(),
        h.order()
    ));
    let q = Quotient {
        table,
        projection,
        cosets,
    };
    if !q.verify(l, h) {
        return Err(LoopError::Internal(
            "quotient projection is not a homomorphism".into(),
        ));
    }
    Ok(q)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && prime_factors(p) == [p]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

fn is_power_of(mut k: usize, p: usize) -> bool {
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// Outcome of a Sylow search: the largest `p`-subloop found and whether its
/// order equals the full `p`-part of `|L|`.
#[derive(Debug, Clone)]
pub struct SylowSearch<'a> {
    pub prime: usize,
    pub target_order: usize,
    pub best: Subloop<'a>,
    pub exact: bool,
    pub candidates_examined: usize,
}

impl<'a> SylowSearch<'a> {
    pub fn sylow(&self) -> Option<&Subloop<'a>> {
        self.exact.then_some(&self.best)
    }
}

/// Elements whose left order is a power of `p` (the identity included).
pub fn p_elements(l: &LoopTable, p: usize) -> Vec<Element> {
    l.elements()
        .filter(|&x| {
            let o = l.element_order(x);
            o.order > 0 && is_power_of(o.order, p)
        })
        .collect()
}

pub fn sylow_subloop(l: &LoopTable, p: usize) -> Result<SylowSearch<'_>> {
    if !is_prime(p) {
        return Err(LoopError::Precondition(format!("{p} is not prime")));
    }
    let target = p_part(l.order(), p);
    let pel = p_elements(l, p);
    let is_p_subloop = |h: &Subloop<'_>| {
        is_power_of(h.order(), p) && h.elements().iter().all(|x| pel.binary_search(x).is_ok())
    };

    let all = generate_subloop(l, &pel);
    if all.order() == target && is_p_subloop(&all) {
        return Ok(SylowSearch {
            prime: p,
            target_order: target,
            best: all,
            exact: true,
            candidates_examined: 1,
        });
    }

    let mut best = Subloop::trivial(l);
    let mut examined = 1;
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    let nontrivial: Vec<Element> = pel.iter().copied().filter(|&x| x != 1).collect();
    'search: for i in 0..nontrivial.len() {
        for j in i..nontrivial.len() {
            for k in j..nontrivial.len() {
                if examined >= SYLOW_SEARCH_CAP {
                    break 'search;
                }
                let seed = [nontrivial[i], nontrivial[j], nontrivial[k]];
                let h = generate_subloop(l, &seed);
                examined += 1;
                if !seen.insert(h.elements().to_vec()) {
                    continue;
                }
                if is_p_subloop(&h) && h.order() > best.order() {
                    best = h;
                    if best.order() == target {
                        break 'search;
                    }
                }
            }
        }
    }
    let exact = best.order() == target;
    Ok(SylowSearch {
        prime: p,
        target_order: target,
        best,
        exact,
        candidates_examined: examined,
    })
}

/// Outcome of the Hall `3'`-subgroup computation.
#[derive(Debug, Clone)]
pub struct HallSearch<'a> {
    pub closure: Subloop<'a>,
    pub target_order: usize,
    pub in_nucleus: bool,
}

impl<'a> HallSearch<'a> {
    pub fn hall(&self) -> Option<&Subloop<'a>> {
        (self.closure.order() == self.target_order && self.in_nucleus).then_some(&self.closure)
    }
}

/// Closure of all elements of order coprime to 3.
pub fn hall_3prime_subgroup(l: &LoopTable) -> Result<HallSearch<'_>> {
    let coprime: Vec<Element> = l
        .elements()
        .filter(|&x| {
            let o = l.element_order(x).order;
            o > 0 && !o.is_multiple_of(3)
        })
        .collect();
    let closure = generate_subloop(l, &coprime);
    let target_order = l.order() / p_part(l.order(), 3);
    let n = nucleus(l)?;
    let in_nucleus = closure.is_subset_of(&n);
    Ok(HallSearch {
        closure,
        target_order,
        in_nucleus,
    })
}

/// `L = A × B` internally: trivial intersection, unique factorization
/// `x = a·b`, elements of `A` commute and associate with those of `B`, and
/// both factors normal.
pub fn is_direct_product(l: &LoopTable, a: &Subloop<'_>, b: &Subloop<'_>) -> bool {
    if a.elements().iter().any(|&x| x != 1 && b.contains(x)) {
        return false;
    }
    let mut hits = vec![0usize; l.order() + 1];
    for &x in a.elements() {
        for &y in b.elements() {
            hits[l.mul(x, y)] += 1;
        }
    }
    if l.elements().any(|x| hits[x] != 1) {
        return false;
    }
    let commute = a
        .elements()
        .iter()
        .all(|&x| b.elements().iter().all(|&y| l.mul(x, y) == l.mul(y, x)));
    if !commute {
        return false;
    }
    let associate = a.elements().iter().all(|&x| {
        b.elements().iter().all(|&y| {
            l.elements().all(|z| {
                l.associator(x, y, z) == 1
                    && l.associator(x, z, y) == 1
                    && l.associator(z, x, y) == 1
                    && l.associator(y, x, z) == 1
                    && l.associator(y, z, x) == 1
                    && l.associator(z, y, x) == 1
            })
        })
    });
    associate && is_normal(l, a) && is_normal(l, b)
}

/// Least `k` with `V_k = {1}`, where `V_1` is the set of all commutators and
/// `V_{k+1} = {[v, q] : v ∈ V_k, q ∈ L}`; `None` when the sets cycle
/// without reaching `{1}`.
pub fn commutative_nilpotency_class(l: &LoopTable) -> Option<usize> {
    let mut current: BTreeSet<Element> = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| l.commutator(x, y)))
        .collect();
    let mut history: HashSet<BTreeSet<Element>> = HashSet::new();
    let mut k = 1;
    loop {
        if current.len() == 1 && current.contains(&1) {
            return Some(k);
        }
        if !history.insert(current.clone()) {
            return None;
        }
        current = current
            .iter()
            .flat_map(|&v| l.elements().map(move |q| l.commutator(v, q)))
            .collect();
        k += 1;
    }
}
