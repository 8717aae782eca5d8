//! Finite loops stored as Cayley tables.
//!
//! Elements are labelled `1..=n` and the identity is always element `1` in a
//! constructed [`LoopTable`]. Cells are stored in an `(n + 1) x (n + 1)` grid
//! so labels index the storage directly; row and column `0` are padding.

use std::fmt;

use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::subloops;

/// Element label, `1..=n`.
pub type Element = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct LoopTable {
    order: usize,
    mul: Vec<Element>,
    ldiv: Vec<Element>,
    rdiv: Vec<Element>,
    name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NotSquare,
    OutOfRange,
    RowRepeat,
    ColumnRepeat,
    NoIdentity,
}

/// One failed loop axiom with the `(row, column)` cells that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub cells: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_quasigroup: bool,
    pub has_identity: bool,
    pub identity_index: Option<Element>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_loop(&self) -> bool {
        self.is_quasigroup && self.has_identity
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quasigroup: {}, identity: {}",
            self.is_quasigroup,
            match self.identity_index {
                Some(e) => e.to_string(),
                None => "none".into(),
            }
        )?;
        for v in &self.violations {
            let cells: Vec<String> = v.cells.iter().map(|(r, c)| format!("({r},{c})")).collect();
            write!(f, "; {:?} at {}", v.kind, cells.join(" "))?;
        }
        Ok(())
    }
}

/// Checks the loop axioms on a raw table of 1-based labels.
pub fn validate(raw: &[Vec<usize>]) -> ValidationReport {
    let n = raw.len();
    let mut violations = Vec::new();

    let bad_rows: Vec<(usize, usize)> = raw
        .iter()
        .enumerate()
        .filter(|(_, row)| row.len() != n)
        .map(|(i, row)| (i + 1, row.len()))
        .collect();
    if n == 0 || !bad_rows.is_empty() {
        violations.push(Violation {
            kind: ViolationKind::NotSquare,
            cells: bad_rows,
        });
        return ValidationReport {
            is_quasigroup: false,
            has_identity: false,
            identity_index: None,
            violations,
        };
    }

    let mut out_of_range = Vec::new();
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v == 0 || v > n {
                out_of_range.push((i + 1, j + 1));
            }
        }
    }
    if !out_of_range.is_empty() {
        violations.push(Violation {
            kind: ViolationKind::OutOfRange,
            cells: out_of_range,
        });
        return ValidationReport {
            is_quasigroup: false,
            has_identity: false,
            identity_index: None,
            violations,
        };
    }

    // A repeated value is witnessed by the cell of its second occurrence.
    let mut row_repeats = Vec::new();
    let mut col_repeats = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let mut seen_row = vec![false; n + 1];
        let mut seen_col = vec![false; n + 1];
        for j in 0..n {
            let r = raw[i][j];
            if std::mem::replace(&mut seen_row[r], true) {
                row_repeats.push((i + 1, j + 1));
            }
            let c = raw[j][i];
            if std::mem::replace(&mut seen_col[c], true) {
                col_repeats.push((j + 1, i + 1));
            }
        }
    }
    let is_quasigroup = row_repeats.is_empty() && col_repeats.is_empty();
    if !row_repeats.is_empty() {
        violations.push(Violation {
            kind: ViolationKind::RowRepeat,
            cells: row_repeats,
        });
    }
    if !col_repeats.is_empty() {
        violations.push(Violation {
            kind: ViolationKind::ColumnRepeat,
            cells: col_repeats,
        });
    }

    let identity_index = (0..n)
        .find(|&e| (0..n).all(|x| raw[e][x] == x + 1 && raw[x][e] == x + 1))
        .map(|e| e + 1);
    if identity_index.is_none() {
        violations.push(Violation {
            kind: ViolationKind::NoIdentity,
            cells: Vec::new(),
        });
    }

    ValidationReport {
        is_quasigroup,
        has_identity: identity_index.is_some(),
        identity_index,
        violations,
    }
}

/// Left-power order of an element; `ambiguous` is set when right powers
/// reach the identity at a different exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementOrder {
    pub order: usize,
    pub ambiguous: bool,
}

/// Outcome of the three Moufang identities over all triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoufangReport {
    /// `((xy)x)z = x(y(xz))`
    pub left: bool,
    /// `((xy)z)y = x(y(zy))`
    pub right: bool,
    /// `(xy)(zx) = (x(yz))x`
    pub middle: bool,
}

impl MoufangReport {
    pub fn is_moufang(&self) -> bool {
        self.left && self.right && self.middle
    }

    pub fn flags_agree(&self) -> bool {
        self.left == self.right && self.right == self.middle
    }
}

impl LoopTable {
    /// Builds a loop from rows of 1-based labels. The identity must be `1`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let report = validate(rows);
        if !report.is_loop() {
            return Err(LoopError::NotALoop(report));
        }
        match report.identity_index {
            Some(1) => Ok(Self::from_valid_rows(rows)),
            Some(e) => Err(LoopError::IdentityNotOne { identity: e }),
            None => unreachable!(),
        }
    }

    /// Like [`from_rows`](Self::from_rows) but swaps labels `1` and `e`
    /// when the identity sits at `e`.
    pub fn from_rows_normalized(rows: &[Vec<usize>]) -> Result<Self> {
        let report = validate(rows);
        if !report.is_loop() {
            return Err(LoopError::NotALoop(report));
        }
        let e = report.identity_index.expect("loop has identity");
        if e == 1 {
            return Ok(Self::from_valid_rows(rows));
        }
        let swap = |v: usize| {
            if v == 1 {
                e
            } else if v == e {
                1
            } else {
                v
            }
        };
        let n = rows.len();
        let relabelled: Vec<Vec<usize>> = (1..=n)
            .map(|x| {
                (1..=n)
                    .map(|y| swap(rows[swap(x) - 1][swap(y) - 1]))
                    .collect()
            })
            .collect();
        Self::from_rows(&relabelled)
    }

    /// Builds a loop from a multiplication rule on labels.
    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (1..=order)
            .map(|x| (1..=order).map(|y| f(x, y)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    fn from_valid_rows(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        let w = n + 1;
        let mut mul = vec![0; w * w];
        let mut ldiv = vec![0; w * w];
        let mut rdiv = vec![0; w * w];
        for x in 1..=n {
            for y in 1..=n {
                let z = rows[x - 1][y - 1];
                mul[x * w + y] = z;
                ldiv[x * w + z] = y;
                rdiv[z * w + y] = x;
            }
        }
        LoopTable {
            order: n,
            mul,
            ldiv,
            rdiv,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("loop of order {}", self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<Element> {
        1..=self.order
    }

    pub fn check(&self, x: Element) -> Result<()> {
        if x == 0 || x > self.order {
            Err(LoopError::OutOfRange {
                element: x,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        debug_assert!(x >= 1 && x <= self.order && y >= 1 && y <= self.order);
        self.mul[x * (self.order + 1) + y]
    }

    /// `x \ y`, the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        debug_assert!(x >= 1 && x <= self.order && y >= 1 && y <= self.order);
        self.ldiv[x * (self.order + 1) + y]
    }

    /// `y / x`, the unique `z` with `z·x = y`.
    #[inline]
    pub fn rdiv(&self, y: Element, x: Element) -> Element {
        debug_assert!(x >= 1 && x <= self.order && y >= 1 && y <= self.order);
        self.rdiv[y * (self.order + 1) + x]
    }

    pub fn try_mul(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_ldiv(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.ldiv(x, y))
    }

    pub fn try_rdiv(&self, y: Element, x: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.rdiv(y, x))
    }

    /// Row `x` of the table, i.e. `x·1, …, x·n`.
    pub fn row(&self, x: Element) -> &[Element] {
        let w = self.order + 1;
        &self.mul[x * w + 1..(x + 1) * w]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.elements().map(|x| self.row(x).to_vec()).collect()
    }

    /// The `a` with `a·x = 1`.
    pub fn left_inverse(&self, x: Element) -> Element {
        self.rdiv(1, x)
    }

    /// The `b` with `x·b = 1`.
    pub fn right_inverse(&self, x: Element) -> Element {
        self.ldiv(x, 1)
    }

    pub fn has_two_sided_inverses(&self) -> bool {
        self.elements()
            .all(|x| self.left_inverse(x) == self.right_inverse(x))
    }

    pub fn element_order(&self, x: Element) -> ElementOrder {
        let cycle = |step: &dyn Fn(Element) -> Element| {
            let mut p = x;
            for k in 1..=self.order {
                if p == 1 {
                    return k;
                }
                p = step(p);
            }
            0
        };
        let left = cycle(&|p| self.mul(x, p));
        let right = cycle(&|p| self.mul(p, x));
        ElementOrder {
            order: left,
            ambiguous: left == 0 || left != right,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| (x..=self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        self.associative_on(&self.elements().collect::<Vec<_>>())
    }

    /// Associativity restricted to triples from `set`.
    pub fn associative_on(&self, set: &[Element]) -> bool {
        set.iter().all(|&x| {
            set.iter().all(|&y| {
                let xy = self.mul(x, y);
                set.iter()
                    .all(|&z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_flexible(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .all(|y| self.mul(self.mul(x, y), x) == self.mul(x, self.mul(y, x)))
        })
    }

    /// Every two-generated subloop is a group.
    pub fn is_diassociative(&self) -> bool {
        let mut checked = std::collections::HashSet::new();
        for x in self.elements() {
            for y in x..=self.order {
                let h = subloops::generate_subloop(self, &[x, y]);
                if checked.insert(h.elements().to_vec()) && !h.is_group() {
                    return false;
                }
            }
        }
        true
    }

    pub fn moufang(&self) -> MoufangReport {
        let mut report = MoufangReport {
            left: true,
            right: true,
            middle: true,
        };
        let m = |a, b| self.mul(a, b);
        for x in self.elements() {
            for y in self.elements() {
                let xy = m(x, y);
                let xyx = m(xy, x);
                for z in self.elements() {
                    if report.left && m(xyx, z) != m(x, m(y, m(x, z))) {
                        report.left = false;
                    }
                    if report.right && m(m(xy, z), y) != m(x, m(y, m(z, y))) {
                        report.right = false;
                    }
                    if report.middle && m(xy, m(z, x)) != m(m(x, m(y, z)), x) {
                        report.middle = false;
                    }
                }
            }
        }
        report
    }

    pub fn is_moufang(&self) -> bool {
        self.moufang().is_moufang()
    }

    /// `[x, y] = ((x⁻¹y⁻¹)x)y` with `x⁻¹ = x\1`. Bracketing is irrelevant when
    /// `⟨x, y⟩` is a group; otherwise this is the left-normed value.
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        let xi = self.right_inverse(x);
        let yi = self.right_inverse(y);
        self.mul(self.mul(self.mul(xi, yi), x), y)
    }

    /// `(x, y, z) = (x(yz)) \ ((xy)z)`.
    pub fn associator(&self, x: Element, y: Element, z: Element) -> Element {
        let right = self.mul(x, self.mul(y, z));
        let left = self.mul(self.mul(x, y), z);
        self.ldiv(right, left)
    }

    /// Transports the table along a bijection `sigma` of labels, given as
    /// images of `1..=n` (index 0 unused): the new product satisfies
    /// `sigma(x)·sigma(y) = sigma(x·y)`.
    pub fn transported(&self, sigma: &[Element]) -> Result<Self> {
        let n = self.order;
        let mut rows = vec![vec![0; n]; n];
        for x in self.elements() {
            for y in self.elements() {
                rows[sigma[x] - 1][sigma[y] - 1] = sigma[self.mul(x, y)];
            }
        }
        let mut t = Self::from_rows(&rows)?;
        t.name = self.name.clone();
        Ok(t)
    }
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoopTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("rows", &self.rows())
            .finish()
    }
}
