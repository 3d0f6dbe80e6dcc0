//! Finite racks: operation tables, axiom checks, standard families, orbits
//! and automorphisms.
//!
//! Elements of a rack of size `n` are the integers `0..n`. The table stores
//! `a^b` at row `a`, column `b`.

use std::fmt;

use thiserror::Error;

/// Rack element.
pub type Element = usize;

/// Default ceiling on rack size for the exhaustive automorphism search.
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("rack size must be positive")]
    EmptyRack,
    #[error("entry {value} at row {row}, column {col} is out of range for a rack of size {size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("table is not a rack: {0}")]
    Axioms(Violation),
    #[error("automorphism search limited to racks of size {limit}, got {size}")]
    SearchTooLarge { size: usize, limit: usize },
    #[error("permutation {0:?} is not a bijection of the rack elements")]
    NotAPermutation(Vec<Element>),
}

/// A square operation table that has passed syntax and range checks but not
/// necessarily the rack axioms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    size: usize,
    entries: Vec<Element>,
}

impl OperationTable {
    pub fn new(size: usize, entries: Vec<Element>) -> Result<Self, RackError> {
        if size == 0 {
            return Err(RackError::EmptyRack);
        }
        if entries.len() != size * size {
            return Err(RackError::Syntax {
                line: 0,
                message: format!(
                    "expected {} entries for a rack of size {size}, got {}",
                    size * size,
                    entries.len()
                ),
            });
        }
        if let Some(i) = entries.iter().position(|&v| v >= size) {
            return Err(RackError::OutOfRange {
                row: i / size,
                col: i % size,
                value: entries[i],
                size,
            });
        }
        Ok(Self { size, entries })
    }

    pub fn from_fn(
        size: usize,
        f: impl Fn(Element, Element) -> Element,
    ) -> Result<Self, RackError> {
        let entries = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Self::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a^b`.
    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.entries[a * self.size + b]
    }

    pub fn row(&self, a: Element) -> &[Element] {
        &self.entries[a * self.size..(a + 1) * self.size]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }
}

/// A single failed axiom instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `a ↦ a^column` sends two elements to `value`.
    ColumnNotBijective { column: Element, value: Element },
    /// `(a^b)^c != (a^c)^(b^c)`.
    RackIdentity { a: Element, b: Element, c: Element },
    /// `a^a != a`.
    NotIdempotent { a: Element },
    /// `(a^b)^b != a`.
    NotInvolutory { a: Element, b: Element },
}

impl Violation {
    pub fn breaks_rack(&self) -> bool {
        matches!(
            self,
            Violation::ColumnNotBijective { .. } | Violation::RackIdentity { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ColumnNotBijective { column, value } => write!(
                f,
                "column {column} is not a bijection: value {value} is hit twice"
            ),
            Violation::RackIdentity { a, b, c } => write!(
                f,
                "rack identity fails for (a,b,c) = ({a},{b},{c}): (a^b)^c != (a^c)^(b^c)"
            ),
            Violation::NotIdempotent { a } => write!(f, "{a}^{a} != {a}"),
            Violation::NotInvolutory { a, b } => write!(f, "({a}^{b})^{b} != {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_involutory: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn first_rack_violation(&self) -> Option<Violation> {
        self.violations.iter().copied().find(Violation::breaks_rack)
    }
}

/// Exhaustive O(n³) check of the rack, quandle and involutory axioms.
pub fn validate_axioms(table: &OperationTable) -> AxiomReport {
    let n = table.size();
    let mut violations = Vec::new();

    for b in 0..n {
        let mut hit = vec![false; n];
        for a in 0..n {
            let v = table.op(a, b);
            if std::mem::replace(&mut hit[v], true) {
                violations.push(Violation::ColumnNotBijective {
                    column: b,
                    value: v,
                });
                break;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table.op(a, b);
            for c in 0..n {
                if table.op(ab, c) != table.op(table.op(a, c), table.op(b, c)) {
                    violations.push(Violation::RackIdentity { a, b, c });
                }
            }
        }
    }
    let is_rack = violations.is_empty();

    let mut is_quandle = is_rack;
    for a in 0..n {
        if table.op(a, a) != a {
            is_quandle = false;
            violations.push(Violation::NotIdempotent { a });
        }
    }
    let mut is_involutory = is_rack;
    for a in 0..n {
        for b in 0..n {
            if table.op(table.op(a, b), b) != a {
                is_involutory = false;
                violations.push(Violation::NotInvolutory { a, b });
            }
        }
    }

    AxiomReport {
        is_rack,
        is_quandle,
        is_involutory,
        violations,
    }
}

/// Parses the rack file format: `#` comments, a size line, then one row of
/// `n` integers per element. Syntax and range only; no axiom checks.
pub fn parse_table(text: &str) -> Result<OperationTable, RackError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (size_line, size_text) = lines.next().ok_or(RackError::Syntax {
        line: 0,
        message: "missing rack size".into(),
    })?;
    let size: usize = size_text.parse().map_err(|_| RackError::Syntax {
        line: size_line,
        message: format!("expected rack size, found {size_text:?}"),
    })?;
    if size == 0 {
        return Err(RackError::EmptyRack);
    }

    let mut entries = Vec::with_capacity(size * size);
    for row in 0..size {
        let (line, text) = lines.next().ok_or(RackError::Syntax {
            line: 0,
            message: format!("expected {size} rows, found {row}"),
        })?;
        let values = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| RackError::Syntax {
                    line,
                    message: format!("not a non-negative integer: {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != size {
            return Err(RackError::Syntax {
                line,
                message: format!("expected {size} entries, found {}", values.len()),
            });
        }
        for (col, &value) in values.iter().enumerate() {
            if value >= size {
                return Err(RackError::OutOfRange {
                    row,
                    col,
                    value,
                    size,
                });
            }
        }
        entries.extend(values);
    }
    if let Some((line, _)) = lines.next() {
        return Err(RackError::Syntax {
            line,
            message: "unexpected content after the last row".into(),
        });
    }
    OperationTable::new(size, entries)
}

/// Parses and validates a rack file.
pub fn parse_rack(text: &str) -> Result<FiniteRack, RackError> {
    FiniteRack::from_table(parse_table(text)?)
}

/// A validated finite rack.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteRack {
    table: OperationTable,
    // inverse[a * n + b] = c with c^b = a
    inverse: Vec<Element>,
    name: Option<String>,
}

impl FiniteRack {
    pub fn from_table(table: OperationTable) -> Result<Self, RackError> {
        let report = validate_axioms(&table);
        if let Some(v) = report.first_rack_violation() {
            return Err(RackError::Axioms(v));
        }
        let n = table.size();
        let mut inverse = vec![0; n * n];
        for b in 0..n {
            for c in 0..n {
                inverse[table.op(c, b) * n + b] = c;
            }
        }
        Ok(Self {
            table,
            inverse,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn table(&self) -> &OperationTable {
        &self.table
    }

    /// `a^b`.
    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.table.op(a, b)
    }

    /// The unique `c` with `c^b = a`.
    #[inline]
    pub fn inverse_op(&self, a: Element, b: Element) -> Element {
        self.inverse[a * self.size() + b]
    }

    pub fn axioms(&self) -> AxiomReport {
        validate_axioms(&self.table)
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size()
    }

    /// Serializes to the rack file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# {name}\n"));
        }
        out.push_str(&format!("{}\n", self.size()));
        for a in self.elements() {
            let row: Vec<String> = self.table.row(a).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `a^b = (2b - a) mod n`.
pub fn dihedral_rack(n: usize) -> Result<FiniteRack, RackError> {
    let table = OperationTable::from_fn(n, |a, b| (2 * b + n - a) % n.max(1))?;
    Ok(FiniteRack::from_table(table)?.with_name(format!("dihedral:{n}")))
}

/// `a^b = a`.
pub fn trivial_rack(n: usize) -> Result<FiniteRack, RackError> {
    let table = OperationTable::from_fn(n, |a, _| a)?;
    Ok(FiniteRack::from_table(table)?.with_name(format!("trivial:{n}")))
}

/// The three-colour rack `{0,1,2}` with `a^b = 2b - a mod 3`.
pub fn three_colour_rack() -> FiniteRack {
    dihedral_rack(3).expect("dihedral rack of order 3")
}

/// The unique `c` with `c^b = a`.
pub fn inverse_operate(rack: &FiniteRack, a: Element, b: Element) -> Element {
    rack.inverse_op(a, b)
}

/// Orbits under the operator group generated by the maps `a ↦ a^b`, each
/// sorted, listed by smallest element.
pub fn orbits(rack: &FiniteRack) -> Vec<Vec<Element>> {
    let n = rack.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in 0..n {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, rack.op(a, b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<Element>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for a in 0..n {
        let r = find(&mut parent, a);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(a);
    }
    groups
}

/// A permutation of rack elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RackPermutation {
    perm: Vec<Element>,
}

impl RackPermutation {
    pub fn new(perm: Vec<Element>) -> Result<Self, RackError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(RackError::NotAPermutation(perm));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b` on `n` elements.
    pub fn transposition(n: usize, a: Element, b: Element) -> Self {
        let mut perm: Vec<Element> = (0..n).collect();
        perm.swap(a, b);
        Self { perm }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    #[inline]
    pub fn apply(&self, a: Element) -> Element {
        self.perm[a]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.perm
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    pub fn is_automorphism_of(&self, rack: &FiniteRack) -> bool {
        self.perm.len() == rack.size()
            && rack.elements().all(|a| {
                rack.elements()
                    .all(|b| self.apply(rack.op(a, b)) == rack.op(self.apply(a), self.apply(b)))
            })
    }
}

impl fmt::Display for RackPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn automorphisms(rack: &FiniteRack) -> Result<Vec<RackPermutation>, RackError> {
    automorphisms_with_limit(rack, DEFAULT_AUTOMORPHISM_LIMIT)
}

/// All automorphisms in lexicographic order, by depth-first extension of
/// partial maps that respect the operation on already-assigned pairs.
pub fn automorphisms_with_limit(
    rack: &FiniteRack,
    limit: usize,
) -> Result<Vec<RackPermutation>, RackError> {
    let n = rack.size();
    if n > limit {
        return Err(RackError::SearchTooLarge { size: n, limit });
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_partial(rack, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend_partial(
    rack: &FiniteRack,
    image: &mut Vec<Element>,
    used: &mut [bool],
    out: &mut Vec<RackPermutation>,
) {
    let n = rack.size();
    let k = image.len();
    if k == n {
        out.push(RackPermutation {
            perm: image.clone(),
        });
        return;
    }
    for candidate in 0..n {
        if used[candidate] {
            continue;
        }
        image.push(candidate);
        let consistent = (0..=k).all(|a| {
            (0..=k).all(|b| {
                let ab = rack.op(a, b);
                ab > k || image[ab] == rack.op(image[a], image[b])
            })
        });
        if consistent {
            used[candidate] = true;
            extend_partial(rack, image, used, out);
            used[candidate] = false;
        }
        image.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_automorphisms(rack: &FiniteRack) -> Vec<Vec<usize>> {
        let n = rack.size();
        let mut all = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's algorithm, sorted afterwards
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                if k.is_multiple_of(2) {
                    p.swap(i, k - 1);
                } else {
                    p.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, &mut all);
        let mut autos: Vec<Vec<usize>> = all
            .into_iter()
            .filter(|p| (0..n).all(|a| (0..n).all(|b| p[rack.op(a, b)] == rack.op(p[a], p[b]))))
            .collect();
        autos.sort();
        autos.dedup();
        autos
    }

    #[test]
    fn parses_three_colour_rack() {
        let r = parse_rack("3\n0 2 1\n2 1 0\n1 0 2\n").unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r.op(a, b), (2 * b + 3 - a) % 3);
            }
        }
        assert_eq!(r.table(), three_colour_rack().table());
    }

    #[test]
    fn parses_one_point_rack_with_comments_and_crlf() {
        let r = parse_rack("# the point\r\n1\r\n0\r\n").unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.op(0, 0), 0);
    }

    #[test]
    fn two_element_flip_table_is_a_rack_but_not_a_quandle() {
        // 0^b = 1, 1^b = 0; brute force every triple independently
        let t = parse_table("2\n1 1\n0 0\n").unwrap();
        let op = |a: usize, _b: usize| 1 - a;
        let identity_holds = (0..2)
            .all(|a| (0..2).all(|b| (0..2).all(|c| op(op(a, b), c) == op(op(a, c), op(b, c)))));
        assert!(identity_holds);
        let report = validate_axioms(&t);
        assert!(report.is_rack);
        assert!(!report.is_quandle);
        assert!(report.is_involutory);
        assert!(parse_rack("2\n1 1\n0 0\n").is_ok());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_table(""), Err(RackError::Syntax { .. })));
        assert!(matches!(parse_table("0\n"), Err(RackError::EmptyRack)));
        assert!(matches!(
            parse_table("2\n0 1\n"),
            Err(RackError::Syntax { .. })
        ));
        assert!(matches!(
            parse_table("2\n0 1 1\n1 0\n"),
            Err(RackError::Syntax { .. })
        ));
        assert!(matches!(
            parse_table("2\n0 x\n1 0\n"),
            Err(RackError::Syntax { .. })
        ));
        assert!(matches!(
            parse_table("2\n0 2\n1 0\n"),
            Err(RackError::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_table("1\n0\n0\n"),
            Err(RackError::Syntax { .. })
        ));
    }

    #[test]
    fn rejects_non_rack_with_offending_triple() {
        // column 0 sends both elements to 0
        let err = parse_rack("2\n0 0\n0 1\n").unwrap_err();
        assert!(matches!(
            err,
            RackError::Axioms(Violation::ColumnNotBijective {
                column: 0,
                value: 0
            })
        ));
        // columns are bijections but the identity fails: a^b = a + b mod 3
        let err = parse_rack("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            RackError::Axioms(Violation::RackIdentity { .. })
        ));
    }

    #[test]
    fn axiom_reports_for_standard_families() {
        for r in [
            three_colour_rack(),
            trivial_rack(1).unwrap(),
            trivial_rack(5).unwrap(),
            dihedral_rack(4).unwrap(),
        ] {
            let rep = r.axioms();
            assert!(
                rep.is_rack && rep.is_quandle && rep.is_involutory,
                "{:?}",
                r.name()
            );
            assert!(rep.violations.is_empty());
        }
        let t7 = trivial_rack(7).unwrap();
        assert!(t7.axioms().is_rack);
    }

    #[test]
    fn dihedral_tables() {
        let d1 = dihedral_rack(1).unwrap();
        assert_eq!(d1.table(), trivial_rack(1).unwrap().table());
        let d5 = dihedral_rack(5).unwrap();
        assert_eq!(d5.op(1, 3), 0);
        assert!(matches!(dihedral_rack(0), Err(RackError::EmptyRack)));
        assert!(matches!(trivial_rack(0), Err(RackError::EmptyRack)));
    }

    #[test]
    fn trivial_rack_rows() {
        let t2 = trivial_rack(2).unwrap();
        assert_eq!(t2.table().row(0), &[0, 0]);
        assert_eq!(t2.table().row(1), &[1, 1]);
    }

    #[test]
    fn inverse_operation() {
        let t = three_colour_rack();
        assert_eq!(inverse_operate(&t, 0, 1), 2);
        assert_eq!(t.op(2, 1), 0);
        let triv = trivial_rack(4).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(inverse_operate(&triv, a, b), a);
            }
        }
        // a non-involutory rack: cyclic shift a^b = a + 1 mod 3
        let shift = FiniteRack::from_table(OperationTable::from_fn(3, |a, _| (a + 1) % 3).unwrap())
            .unwrap();
        assert!(!shift.axioms().is_involutory);
        assert_eq!(inverse_operate(&shift, 0, 0), 2);
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(orbits(&three_colour_rack()), vec![vec![0, 1, 2]]);
        assert_eq!(
            orbits(&trivial_rack(3).unwrap()),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            orbits(&dihedral_rack(4).unwrap()),
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn automorphisms_match_brute_force() {
        let t = three_colour_rack();
        let autos = automorphisms(&t).unwrap();
        assert_eq!(autos.len(), 6);
        for r in [
            three_colour_rack(),
            trivial_rack(2).unwrap(),
            dihedral_rack(4).unwrap(),
            dihedral_rack(5).unwrap(),
            trivial_rack(3).unwrap(),
        ] {
            let got: Vec<Vec<usize>> = automorphisms(&r)
                .unwrap()
                .iter()
                .map(|p| p.as_slice().to_vec())
                .collect();
            assert_eq!(got, brute_force_automorphisms(&r), "{:?}", r.name());
        }
        assert_eq!(automorphisms(&trivial_rack(2).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn automorphism_guard() {
        let big = trivial_rack(9).unwrap();
        assert!(matches!(
            automorphisms(&big),
            Err(RackError::SearchTooLarge { size: 9, limit: 8 })
        ));
        assert_eq!(
            automorphisms_with_limit(&dihedral_rack(9).unwrap(), 9)
                .unwrap()
                .len(),
            54
        );
    }

    #[test]
    fn permutation_validation() {
        assert!(RackPermutation::new(vec![0, 0, 1]).is_err());
        assert!(RackPermutation::new(vec![0, 3, 1]).is_err());
        let p = RackPermutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&p.inverse()), RackPermutation::identity(3));
    }

    #[test]
    fn text_round_trip() {
        let d = dihedral_rack(5).unwrap();
        let back = parse_rack(&d.to_text()).unwrap();
        assert_eq!(back.table(), d.table());
    }
}
