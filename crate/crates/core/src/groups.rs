//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..order` with the identity at index 0.
//! Permutation groups index their elements in lexicographic order of the
//! one-line notation, and multiply with the "apply the right factor first"
//! convention: `(a * b)(i) = a(b(i))`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element inside a [`FiniteGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    Malformed(String),
    #[error("group axiom violated ({axiom}) at {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },
    #[error("elements belong to different groups ({0} vs {1})")]
    Mismatch(String, String),
    #[error("cannot parse group spec `{spec}` at position {position}: {reason}")]
    Parse {
        spec: String,
        position: usize,
        reason: String,
    },
    #[error("i/o error reading group table: {0}")]
    Io(String),
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    names: Vec<String>,
    label: String,
}

impl FiniteGroup {
    /// Builds a group from a row-major table and validates every axiom.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Malformed("order must be positive".into()));
        }
        if order > u16::MAX as usize {
            return Err(GroupError::Malformed(format!("order {order} too large")));
        }
        if table.len() != order * order {
            return Err(GroupError::Malformed(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().position(|&x| x >= order) {
            return Err(GroupError::Malformed(format!(
                "entry ({}, {}) = {} is out of range",
                bad / order,
                bad % order,
                table[bad]
            )));
        }
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(GroupError::Malformed(format!(
                    "{} element names for order {order}",
                    n.len()
                )))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let table: Vec<Elem> = table.into_iter().map(|x| Elem(x as u16)).collect();
        let at = |a: usize, b: usize| table[a * order + b].index();

        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::AxiomViolation {
                    axiom: "identity",
                    witness: format!("element 0 is not a two-sided identity for {a}"),
                });
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverses.push(Elem(b as u16)),
                _ => {
                    return Err(GroupError::AxiomViolation {
                        axiom: "inverse",
                        witness: format!("element {a} has no two-sided inverse"),
                    })
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::AxiomViolation {
                            axiom: "associativity",
                            witness: format!("(a, b, c) = ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            inverses,
            names,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order as u16).map(Elem)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.index()]
    }

    /// `h g h⁻¹`
    #[inline]
    pub fn conj(&self, h: Elem, g: Elem) -> Elem {
        self.mul(self.mul(h, g), self.inv(h))
    }

    /// Ordered product of a sequence; the empty product is the identity.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(Elem::IDENTITY, |acc, x| self.mul(acc, x))
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.index() < self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g.index()] {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|h| self.conj(h, g)).collect();
            class.sort();
            class.dedup();
            for x in &class {
                seen[x.index()] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, g: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| self.mul(b, g) == self.mul(g, b))
            .collect()
    }

    /// Borrowed handle pairing an index with this group.
    pub fn element(&self, a: Elem) -> GroupElement<'_> {
        assert!(self.contains(a), "element {a} outside group of order {}", self.order);
        GroupElement { group: self, elem: a }
    }

    /// Row-major copy of the multiplication table.
    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|e| e.index()).collect()
    }

    /// Serializes in the table-file format accepted by [`FiniteGroup::parse_table`].
    pub fn to_table_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.table[a * self.order + b].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the table-file format: the order on the first line, then one
    /// whitespace-separated row per element.
    pub fn parse_table(label: &str, text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let order: usize = lines
            .next()
            .ok_or_else(|| GroupError::Malformed("empty table file".into()))?
            .parse()
            .map_err(|e| GroupError::Malformed(format!("line 1: bad order: {e}")))?;
        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| GroupError::Malformed(format!("missing row {row}")))?;
            let entries: Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse::<usize>).collect();
            let entries = entries
                .map_err(|e| GroupError::Malformed(format!("row {row}: {e}")))?;
            if entries.len() != order {
                return Err(GroupError::Malformed(format!(
                    "row {row} has {} entries, expected {order}",
                    entries.len()
                )));
            }
            table.extend(entries);
        }
        if lines.next().is_some() {
            return Err(GroupError::Malformed("trailing rows after table".into()));
        }
        Self::from_table(label, order, table, None)
    }

    pub fn from_table_file(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(e.to_string()))?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "table".into());
        Self::parse_table(&label, &text)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs positive order");
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        Self::from_table(format!("C{n}"), n, table, None).expect("cyclic table is a group")
    }

    /// The symmetric group on `n` letters; elements are ordered
    /// lexicographically by one-line notation.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric group S{n} outside supported range 1..=6");
        let perms = all_permutations(n);
        Self::from_permutations(format!("S{n}"), perms)
    }

    /// The dihedral group of order `2n`, elements `r^k s^f` ordered by
    /// `(f, k)`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "dihedral group needs n > 0");
        let idx = |k: usize, f: usize| f * n + k;
        let mut table = vec![0; 4 * n * n];
        let mut names = Vec::with_capacity(2 * n);
        for f in 0..2 {
            for k in 0..n {
                names.push(match (k, f) {
                    (0, 0) => "e".to_string(),
                    (k, 0) => format!("r{k}"),
                    (0, _) => "s".to_string(),
                    (k, _) => format!("r{k}s"),
                });
            }
        }
        for f in 0..2 {
            for a in 0..n {
                for g in 0..2 {
                    for b in 0..n {
                        // r^a s^f r^b s^g = r^{a ± b} s^{f+g}
                        let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                        table[idx(a, f) * 2 * n + idx(b, g)] = idx(k, (f + g) % 2);
                    }
                }
            }
        }
        Self::from_table(format!("D{n}"), 2 * n, table, Some(names))
            .expect("dihedral table is a group")
    }

    /// Direct product with pairs `(a, b)` indexed `a * |rhs| + b`.
    pub fn direct_product(lhs: &FiniteGroup, rhs: &FiniteGroup) -> Self {
        let (m, n) = (lhs.order, rhs.order);
        let mut table = Vec::with_capacity(m * m * n * n);
        for a1 in 0..m {
            for b1 in 0..n {
                for a2 in 0..m {
                    for b2 in 0..n {
                        let a = lhs.mul(Elem(a1 as u16), Elem(a2 as u16)).index();
                        let b = rhs.mul(Elem(b1 as u16), Elem(b2 as u16)).index();
                        table.push(a * n + b);
                    }
                }
            }
        }
        let names = (0..m)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", lhs.names[a], rhs.names[b]))
            .collect();
        Self::from_table(
            format!("{}x{}", lhs.label, rhs.label),
            m * n,
            table,
            Some(names),
        )
        .expect("direct product of groups is a group")
    }

    fn from_permutations(label: String, perms: Vec<Vec<usize>>) -> Self {
        let n = perms.len();
        let index_of = |p: &[usize]| {
            perms
                .binary_search_by(|q| q.as_slice().cmp(p))
                .expect("closed under composition")
        };
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = b.iter().map(|&i| a[i]).collect();
                table.push(index_of(&ab));
            }
        }
        let names = perms
            .iter()
            .map(|p| {
                let digits: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
                format!("[{}]", digits.join(","))
            })
            .collect();
        Self::from_table(label, n, table, Some(names)).expect("permutation table is a group")
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    // lexicographic successor
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
    out
}

/// Index plus a borrowed group, for callers that want mismatch checking.
#[derive(Clone, Copy, Debug)]
pub struct GroupElement<'g> {
    group: &'g FiniteGroup,
    elem: Elem,
}

impl<'g> GroupElement<'g> {
    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    fn same_group(&self, other: &GroupElement<'_>) -> Result<(), GroupError> {
        if std::ptr::eq(self.group, other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(GroupError::Mismatch(
                self.group.label.clone(),
                other.group.label.clone(),
            ))
        }
    }

    pub fn product(&self, other: &GroupElement<'_>) -> Result<GroupElement<'g>, GroupError> {
        self.same_group(other)?;
        Ok(self.group.element(self.group.mul(self.elem, other.elem)))
    }

    /// `self · g · self⁻¹`
    pub fn conjugate(&self, g: &GroupElement<'_>) -> Result<GroupElement<'g>, GroupError> {
        self.same_group(g)?;
        Ok(self.group.element(self.group.conj(self.elem, g.elem)))
    }

    pub fn inverse(&self) -> GroupElement<'g> {
        self.group.element(self.group.inv(self.elem))
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other).is_ok() && self.elem == other.elem
    }
}

impl fmt::Display for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.group.name(self.elem))
    }
}

/// Parsed group descriptor: `C<n>`, `S<n>`, `D<n>`, `<spec>x<spec>`, or a
/// table file path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    TableFile(String),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => Ok(FiniteGroup::cyclic(*n)),
            GroupSpec::Symmetric(n) => Ok(FiniteGroup::symmetric(*n)),
            GroupSpec::Dihedral(n) => Ok(FiniteGroup::dihedral(*n)),
            GroupSpec::Product(a, b) => Ok(FiniteGroup::direct_product(&a.build()?, &b.build()?)),
            GroupSpec::TableFile(path) => FiniteGroup::from_table_file(Path::new(path)),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let spec = s.trim();
        if let Some(path) = spec.strip_prefix("file:") {
            return Ok(GroupSpec::TableFile(path.to_string()));
        }
        if spec.contains('/') || spec.ends_with(".txt") || spec.ends_with(".tbl") {
            return Ok(GroupSpec::TableFile(spec.to_string()));
        }
        let mut factors = Vec::new();
        let mut offset = 0;
        for part in spec.split('x') {
            factors.push(parse_factor(s, part, offset)?);
            offset += part.len() + 1;
        }
        let mut iter = factors.into_iter();
        let first = iter.next().expect("split yields at least one part");
        Ok(iter.fold(first, |acc, f| GroupSpec::Product(Box::new(acc), Box::new(f))))
    }
}

fn parse_factor(full: &str, part: &str, offset: usize) -> Result<GroupSpec, GroupError> {
    let err = |position: usize, reason: &str| GroupError::Parse {
        spec: full.to_string(),
        position,
        reason: reason.to_string(),
    };
    let mut chars = part.chars();
    let family = chars.next().ok_or_else(|| err(offset, "empty factor"))?;
    let digits = chars.as_str();
    let n: usize = digits
        .parse()
        .map_err(|_| err(offset + 1, "expected a positive integer"))?;
    if n == 0 {
        return Err(err(offset + 1, "size must be positive"));
    }
    match family {
        'C' | 'Z' => Ok(GroupSpec::Cyclic(n)),
        'S' if n <= 6 => Ok(GroupSpec::Symmetric(n)),
        'S' => Err(err(offset + 1, "symmetric groups are supported up to S6")),
        'D' => Ok(GroupSpec::Dihedral(n)),
        _ => Err(err(offset, "unknown family (expected C, S or D)")),
    }
}

/// Convenience: parse and build in one step.
pub fn make_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    spec.parse::<GroupSpec>()?.build()
}
