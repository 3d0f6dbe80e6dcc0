//! Cubes and integer chains of the rack space `BR` and the extended rack
//! space `B_R R`.
//!
//! An `n`-cube of `BR` is an `n`-tuple of rack elements. An `n`-cube of
//! `B_R R` is an `(n+1)`-tuple `(x0, x1, .., xn)` where `x0` is the region
//! coordinate: it is acted on by the `eps = 1` faces but is never itself a
//! face direction.
//!
//! Faces, for `1 <= i <= n` over the face-direction positions `x1..xn`:
//!
//! ```text
//! d_i^0 (x1, .., xn) = (x1, .., x{i-1}, x{i+1}, .., xn)
//! d_i^1 (x1, .., xn) = (x1^xi, .., x{i-1}^xi, x{i+1}, .., xn)
//! ```
//!
//! and the boundary is `d = sum_i (-1)^i (d_i^1 - d_i^0)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::rack::{Element, FiniteRack, RackPermutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("face index {index} out of range for a cube of dimension {dim}")]
    FaceIndex { index: usize, dim: usize },
    #[error("cube {cube} has {len} entries, expected {expected}")]
    CubeLength {
        cube: Cube,
        len: usize,
        expected: usize,
    },
    #[error("cube {cube} has an entry outside a rack of size {size}")]
    EntryOutOfRange { cube: Cube, size: usize },
    #[error("chains live in different spaces: {0}")]
    Mismatch(String),
    #[error("the boundary of a 0-chain is undefined")]
    ZeroDimensional,
    #[error("permutation is not an automorphism of the chain's rack")]
    NotAutomorphism,
    #[error("orientation reversal needs a 3-chain of the rack space, got a {dim}-chain of {kind}")]
    ReversalShape { dim: usize, kind: SpaceKind },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// `BR`: `n`-cubes are `R^n`.
    RackSpace,
    /// `B_R R`: `n`-cubes are `R^(n+1)`, position 0 is the region label.
    ExtendedRackSpace,
}

impl SpaceKind {
    /// Tuple length of an `n`-cube.
    pub fn tuple_len(self, dim: usize) -> usize {
        match self {
            SpaceKind::RackSpace => dim,
            SpaceKind::ExtendedRackSpace => dim + 1,
        }
    }

    fn offset(self) -> usize {
        match self {
            SpaceKind::RackSpace => 0,
            SpaceKind::ExtendedRackSpace => 1,
        }
    }

    /// Tag used in chain files.
    pub fn tag(self) -> &'static str {
        match self {
            SpaceKind::RackSpace => "BR",
            SpaceKind::ExtendedRackSpace => "BRR",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "BR" => Some(SpaceKind::RackSpace),
            "BRR" => Some(SpaceKind::ExtendedRackSpace),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A tuple of rack elements. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube(Vec<Element>);

impl Cube {
    pub fn new(entries: Vec<Element>) -> Self {
        Cube(entries)
    }

    pub fn entries(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position in the lexicographic enumeration of tuples over `size` symbols.
    pub fn index(&self, size: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * size + x)
    }

    pub fn from_index(mut index: usize, len: usize, size: usize) -> Self {
        let mut entries = vec![0; len];
        for slot in entries.iter_mut().rev() {
            *slot = index % size;
            index /= size;
        }
        Cube(entries)
    }
}

impl From<Vec<Element>> for Cube {
    fn from(v: Vec<Element>) -> Self {
        Cube(v)
    }
}

impl<const N: usize> From<[Element; N]> for Cube {
    fn from(v: [Element; N]) -> Self {
        Cube(v.to_vec())
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Number of `n`-cubes of the given space.
pub fn cube_count(rack_size: usize, dim: usize, kind: SpaceKind) -> usize {
    rack_size.pow(kind.tuple_len(dim) as u32)
}

/// All `n`-cubes in lexicographic order.
pub fn cubes(rack_size: usize, dim: usize, kind: SpaceKind) -> impl Iterator<Item = Cube> {
    let len = kind.tuple_len(dim);
    (0..cube_count(rack_size, dim, kind)).map(move |i| Cube::from_index(i, len, rack_size))
}

/// The face `d_i^eps` of `cube`, with `i` in `1..=dim`.
pub fn face(
    rack: &FiniteRack,
    cube: &Cube,
    index: usize,
    eps: bool,
    kind: SpaceKind,
) -> Result<Cube, ChainError> {
    let len = cube.len();
    let dim = len
        .checked_sub(kind.offset())
        .ok_or(ChainError::FaceIndex { index, dim: 0 })?;
    if index == 0 || index > dim {
        return Err(ChainError::FaceIndex { index, dim });
    }
    Ok(face_unchecked(
        rack,
        cube.entries(),
        index - 1 + kind.offset(),
        eps,
    ))
}

fn face_unchecked(rack: &FiniteRack, x: &[Element], pos: usize, eps: bool) -> Cube {
    let mut out = Vec::with_capacity(x.len() - 1);
    if eps {
        let xi = x[pos];
        out.extend(x[..pos].iter().map(|&y| rack.op(y, xi)));
    } else {
        out.extend_from_slice(&x[..pos]);
    }
    out.extend_from_slice(&x[pos + 1..]);
    Cube(out)
}

/// Signed faces of a cube: `(-1)^i` on `d_i^1` and `-(-1)^i` on `d_i^0`.
fn signed_faces(rack: &FiniteRack, cube: &Cube, kind: SpaceKind) -> Vec<(Cube, i64)> {
    let off = kind.offset();
    let dim = cube.len() - off;
    let mut out = Vec::with_capacity(2 * dim);
    for i in 1..=dim {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push((
            face_unchecked(rack, cube.entries(), i - 1 + off, true),
            sign,
        ));
        out.push((
            face_unchecked(rack, cube.entries(), i - 1 + off, false),
            -sign,
        ));
    }
    out
}

/// The boundary map `d_n : C_n -> C_{n-1}` with a column per `n`-cube and a
/// row per `(n-1)`-cube, both in lexicographic order.
pub fn boundary_matrix(rack: &FiniteRack, dim: usize, kind: SpaceKind) -> IntMatrix {
    let k = rack.size();
    let cols = cube_count(k, dim, kind);
    if dim == 0 {
        return IntMatrix::zeros(0, cols);
    }
    let rows = cube_count(k, dim - 1, kind);
    let mut dense = vec![0i64; rows * cols];
    for (col, cube) in cubes(k, dim, kind).enumerate() {
        for (f, s) in signed_faces(rack, &cube, kind) {
            dense[f.index(k) * cols + col] += s;
        }
    }
    IntMatrix::from_i64(rows, cols, &dense)
}

/// A finitely supported integer combination of cubes of one dimension in one
/// space over one rack. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    rack: Arc<FiniteRack>,
    kind: SpaceKind,
    dim: usize,
    terms: BTreeMap<Cube, i64>,
}

impl Chain {
    pub fn zero(rack: Arc<FiniteRack>, kind: SpaceKind, dim: usize) -> Self {
        Chain {
            rack,
            kind,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a chain from `(coefficient, cube)` terms; repeated cubes are summed.
    pub fn from_terms<I, C>(
        rack: Arc<FiniteRack>,
        kind: SpaceKind,
        dim: usize,
        terms: I,
    ) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<Cube>,
    {
        let mut chain = Chain::zero(rack, kind, dim);
        for (coef, cube) in terms {
            chain.add_term(cube.into(), coef)?;
        }
        Ok(chain)
    }

    pub fn add_term(&mut self, cube: Cube, coef: i64) -> Result<(), ChainError> {
        let expected = self.kind.tuple_len(self.dim);
        if cube.len() != expected {
            return Err(ChainError::CubeLength {
                len: cube.len(),
                cube,
                expected,
            });
        }
        if cube.entries().iter().any(|&x| x >= self.rack.size()) {
            return Err(ChainError::EntryOutOfRange {
                cube,
                size: self.rack.size(),
            });
        }
        self.add_unchecked(cube, coef);
        Ok(())
    }

    fn add_unchecked(&mut self, cube: Cube, coef: i64) {
        if coef == 0 {
            return;
        }
        let entry = self.terms.entry(cube);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
    }

    pub fn rack(&self) -> &Arc<FiniteRack> {
        &self.rack
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn coefficient(&self, cube: &Cube) -> i64 {
        self.terms.get(cube).copied().unwrap_or(0)
    }

    /// Terms in lexicographic cube order.
    pub fn terms(&self) -> impl Iterator<Item = (&Cube, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    fn check_compatible(&self, other: &Chain) -> Result<(), ChainError> {
        if self.kind != other.kind || self.dim != other.dim {
            return Err(ChainError::Mismatch(format!(
                "{}-chain of {} vs {}-chain of {}",
                self.dim, self.kind, other.dim, other.kind
            )));
        }
        if !Arc::ptr_eq(&self.rack, &other.rack) && self.rack.table() != other.rack.table() {
            return Err(ChainError::Mismatch("different racks".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, k) in other.terms() {
            out.add_unchecked(c.clone(), k);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: i64) -> Chain {
        let mut out = Chain::zero(self.rack.clone(), self.kind, self.dim);
        if factor != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(c, &k)| (c.clone(), k * factor))
                .collect();
        }
        out
    }

    pub fn negated(&self) -> Chain {
        self.scaled(-1)
    }

    /// Coefficient vector indexed by the lexicographic cube enumeration.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let k = self.rack.size();
        let mut v = vec![BigInt::from(0); cube_count(k, self.dim, self.kind)];
        for (c, coef) in self.terms() {
            v[c.index(k)] = BigInt::from(coef);
        }
        v
    }

    /// Serializes to the chain file format.
    pub fn to_text(&self, rack_name: &str) -> String {
        let mut out = format!("chain {} {} {}\n", self.kind.tag(), rack_name, self.dim);
        for (cube, k) in self.terms() {
            out.push_str(&k.to_string());
            for x in cube.entries() {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Chain {
    /// `-(012) + 2(121)` style, or `0` for the zero chain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (cube, k)) in self.terms().enumerate() {
            let sign = if k < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                f.write_str(" ")?;
            }
            let mag = k.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{cube}")?;
            } else {
                write!(f, "{sign}{mag}{cube}")?;
            }
        }
        Ok(())
    }
}

/// Linear extension of the cube boundary.
pub fn boundary_of_chain(chain: &Chain) -> Result<Chain, ChainError> {
    if chain.dim == 0 {
        return Err(ChainError::ZeroDimensional);
    }
    let mut out = Chain::zero(chain.rack.clone(), chain.kind, chain.dim - 1);
    for (cube, k) in chain.terms() {
        for (f, s) in signed_faces(&chain.rack, cube, chain.kind) {
            out.add_unchecked(f, s * k);
        }
    }
    Ok(out)
}

/// Zero-dimensional chains are cycles; otherwise the boundary must vanish.
pub fn is_cycle(chain: &Chain) -> bool {
    chain.dim == 0
        || boundary_of_chain(chain)
            .map(|b| b.is_zero())
            .unwrap_or(false)
}

/// Applies an automorphism to every entry of every cube (region coordinate
/// included).
pub fn permute_chain(sigma: &RackPermutation, chain: &Chain) -> Result<Chain, ChainError> {
    if !sigma.is_automorphism_of(&chain.rack) {
        return Err(ChainError::NotAutomorphism);
    }
    let mut out = Chain::zero(chain.rack.clone(), chain.kind, chain.dim);
    for (cube, k) in chain.terms() {
        let image = cube.entries().iter().map(|&x| sigma.apply(x)).collect();
        out.add_unchecked(Cube(image), k);
    }
    Ok(out)
}

/// Orientation reversal of a triple-point chain:
/// `k (a,b,c) ↦ -k ((a^b)^c, b^c, c)`.
pub fn reverse_orientation_3(chain: &Chain) -> Result<Chain, ChainError> {
    if chain.dim != 3 || chain.kind != SpaceKind::RackSpace {
        return Err(ChainError::ReversalShape {
            dim: chain.dim,
            kind: chain.kind,
        });
    }
    let r = &chain.rack;
    let mut out = Chain::zero(r.clone(), chain.kind, 3);
    for (cube, k) in chain.terms() {
        let [a, b, c] = [cube.0[0], cube.0[1], cube.0[2]];
        out.add_unchecked(Cube(vec![r.op(r.op(a, b), c), r.op(b, c), c]), -k);
    }
    Ok(out)
}

/// Image under the projection to the one-point rack space: the coefficient sum.
pub fn collapse_to_point(chain: &Chain) -> i64 {
    chain.terms().map(|(_, k)| k).sum()
}

/// Header of a chain file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHeader {
    pub kind: SpaceKind,
    pub rack_name: String,
    pub dim: usize,
}

/// Parses only the header line of a chain file.
pub fn parse_chain_header(text: &str) -> Result<ChainHeader, ChainError> {
    let (line, header) = content_lines(text).next().ok_or(ChainError::Syntax {
        line: 0,
        message: "missing chain header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let bad = |message: String| ChainError::Syntax { line, message };
    if toks.len() != 4 || toks[0] != "chain" {
        return Err(bad(format!(
            "expected \"chain <BR|BRR> <rack> <dim>\", found {header:?}"
        )));
    }
    let kind = SpaceKind::from_tag(toks[1])
        .ok_or_else(|| bad(format!("unknown space kind {:?}", toks[1])))?;
    let dim = toks[3]
        .parse()
        .map_err(|_| bad(format!("bad dimension {:?}", toks[3])))?;
    Ok(ChainHeader {
        kind,
        rack_name: toks[2].to_string(),
        dim,
    })
}

/// Parses a chain file against an already resolved rack.
pub fn parse_chain(text: &str, rack: Arc<FiniteRack>) -> Result<(ChainHeader, Chain), ChainError> {
    let header = parse_chain_header(text)?;
    let mut chain = Chain::zero(rack, header.kind, header.dim);
    let expected = header.kind.tuple_len(header.dim);
    for (line, body) in content_lines(text).skip(1) {
        let nums = body
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| ChainError::Syntax {
                    line,
                    message: format!("not an integer: {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if nums.len() != expected + 1 {
            return Err(ChainError::Syntax {
                line,
                message: format!(
                    "expected a coefficient and {expected} entries, found {} numbers",
                    nums.len()
                ),
            });
        }
        if nums[1..].iter().any(|&x| x < 0) {
            return Err(ChainError::Syntax {
                line,
                message: "cube entries must be non-negative".into(),
            });
        }
        let cube = Cube(nums[1..].iter().map(|&x| x as usize).collect());
        chain.add_term(cube, nums[0])?;
    }
    Ok((header, chain))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::{dihedral_rack, three_colour_rack, trivial_rack};

    fn t() -> Arc<FiniteRack> {
        Arc::new(three_colour_rack())
    }

    #[test]
    fn face_formula() {
        let r = three_colour_rack();
        let x = Cube::from([0, 1, 2]);
        assert_eq!(
            face(&r, &x, 2, true, SpaceKind::RackSpace).unwrap(),
            Cube::from([2, 2])
        );
        assert_eq!(
            face(&r, &x, 3, true, SpaceKind::RackSpace).unwrap(),
            Cube::from([r.op(0, 2), r.op(1, 2)])
        );
        assert_eq!(
            face(&r, &x, 1, false, SpaceKind::RackSpace).unwrap(),
            Cube::from([1, 2])
        );
        assert_eq!(
            face(&r, &Cube::from([1]), 1, false, SpaceKind::RackSpace).unwrap(),
            Cube::new(vec![])
        );
        assert!(matches!(
            face(&r, &x, 4, false, SpaceKind::RackSpace),
            Err(ChainError::FaceIndex { index: 4, dim: 3 })
        ));
        assert!(face(&r, &x, 0, false, SpaceKind::RackSpace).is_err());
    }

    #[test]
    fn extended_faces_shift_index_and_act_on_region() {
        let r = three_colour_rack();
        let x = Cube::from([1, 0, 2]);
        // d_2 in B_R R is d_3 in BR on the full tuple
        assert_eq!(
            face(&r, &x, 2, true, SpaceKind::ExtendedRackSpace).unwrap(),
            Cube::from([r.op(1, 2), r.op(0, 2)])
        );
        assert_eq!(
            face(&r, &x, 1, false, SpaceKind::ExtendedRackSpace).unwrap(),
            Cube::from([1, 2])
        );
        assert!(face(&r, &x, 3, true, SpaceKind::ExtendedRackSpace).is_err());
    }

    #[test]
    fn one_dimensional_boundary_vanishes() {
        let m = boundary_matrix(&three_colour_rack(), 1, SpaceKind::RackSpace);
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert!(m.is_zero());
    }

    #[test]
    fn two_dimensional_column_by_hand() {
        // d(0,1) = -[(1) - (1)] + [(0^1) - (0)] = (2) - (0)
        let m = boundary_matrix(&three_colour_rack(), 2, SpaceKind::RackSpace);
        let col = Cube::from([0, 1]).index(3);
        let got: Vec<i64> = (0..3).map(|row| m.get_i64(row, col)).collect();
        assert_eq!(got, vec![-1, 0, 1]);
    }

    #[test]
    fn one_point_rack_has_zero_boundaries() {
        let p = trivial_rack(1).unwrap();
        for n in 1..=5 {
            assert!(boundary_matrix(&p, n, SpaceKind::RackSpace).is_zero());
        }
        let c = Chain::from_terms(Arc::new(p), SpaceKind::RackSpace, 3, [(1, [0, 0, 0])]).unwrap();
        assert!(boundary_of_chain(&c).unwrap().is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_small() {
        for r in [three_colour_rack(), dihedral_rack(4).unwrap()] {
            for kind in [SpaceKind::RackSpace, SpaceKind::ExtendedRackSpace] {
                for n in 2..=3 {
                    let prod = boundary_matrix(&r, n - 1, kind).mul(&boundary_matrix(&r, n, kind));
                    assert!(prod.is_zero(), "{:?} {kind} n={n}", r.name());
                }
            }
        }
    }

    #[test]
    fn single_square_is_not_a_cycle() {
        let c = Chain::from_terms(t(), SpaceKind::RackSpace, 2, [(1, [0, 1])]).unwrap();
        assert!(!is_cycle(&c));
        assert!(is_cycle(&Chain::zero(t(), SpaceKind::RackSpace, 2)));
    }

    #[test]
    fn chain_arithmetic_drops_zero_terms() {
        let a =
            Chain::from_terms(t(), SpaceKind::RackSpace, 2, [(2, [0, 1]), (1, [1, 1])]).unwrap();
        let b = Chain::from_terms(t(), SpaceKind::RackSpace, 2, [(-2, [0, 1])]).unwrap();
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&Cube::from([1, 1])), 1);
        let other_dim = Chain::zero(t(), SpaceKind::RackSpace, 3);
        assert!(matches!(
            a.try_add(&other_dim),
            Err(ChainError::Mismatch(_))
        ));
        let other_rack = Chain::zero(Arc::new(trivial_rack(3).unwrap()), SpaceKind::RackSpace, 2);
        assert!(a.try_add(&other_rack).is_err());
    }

    #[test]
    fn term_validation() {
        assert!(matches!(
            Chain::from_terms(t(), SpaceKind::RackSpace, 2, [(1, [0, 1, 2])]),
            Err(ChainError::CubeLength { .. })
        ));
        assert!(matches!(
            Chain::from_terms(t(), SpaceKind::RackSpace, 2, [(1, [0, 3])]),
            Err(ChainError::EntryOutOfRange { .. })
        ));
        assert!(Chain::from_terms(t(), SpaceKind::ExtendedRackSpace, 2, [(1, [0, 1, 2])]).is_ok());
    }

    #[test]
    fn zero_dimensional_boundary_is_an_error() {
        let c = Chain::zero(t(), SpaceKind::RackSpace, 0);
        assert_eq!(boundary_of_chain(&c), Err(ChainError::ZeroDimensional));
        assert!(is_cycle(&c));
    }

    #[test]
    fn reversal_shape_checks() {
        let c = Chain::zero(t(), SpaceKind::RackSpace, 2);
        assert!(reverse_orientation_3(&c).is_err());
        let e = Chain::zero(t(), SpaceKind::ExtendedRackSpace, 3);
        assert!(reverse_orientation_3(&e).is_err());
        let z = Chain::zero(t(), SpaceKind::RackSpace, 3);
        assert!(reverse_orientation_3(&z).unwrap().is_zero());
    }

    #[test]
    fn permutation_must_be_an_automorphism() {
        let d4 = Arc::new(dihedral_rack(4).unwrap());
        let c = Chain::from_terms(d4, SpaceKind::RackSpace, 1, [(1, [1])]).unwrap();
        // swapping 0 and 1 mixes the two orbits of the dihedral rack of order 4
        let sigma = RackPermutation::transposition(4, 0, 1);
        assert_eq!(permute_chain(&sigma, &c), Err(ChainError::NotAutomorphism));
        let id = RackPermutation::identity(4);
        assert_eq!(permute_chain(&id, &c).unwrap(), c);
    }

    #[test]
    fn chain_file_round_trip_and_errors() {
        let c = Chain::from_terms(
            t(),
            SpaceKind::RackSpace,
            3,
            [(-1, [0, 1, 2]), (2, [1, 2, 1])],
        )
        .unwrap();
        let text = c.to_text("dihedral:3");
        let (h, back) = parse_chain(&text, t()).unwrap();
        assert_eq!(h.rack_name, "dihedral:3");
        assert_eq!(back, c);
        assert!(parse_chain("chain XX t 3\n", t()).is_err());
        assert!(parse_chain("chain BR t 2\n1 0 1 2\n", t()).is_err());
        assert!(parse_chain("chain BR t 2\n1 0 -1\n", t()).is_err());
        assert!(parse_chain("# only a comment\n", t()).is_err());
    }

    #[test]
    fn display_form() {
        let c = Chain::from_terms(
            t(),
            SpaceKind::RackSpace,
            3,
            [(-1, [0, 1, 2]), (2, [1, 2, 1])],
        )
        .unwrap();
        assert_eq!(c.to_string(), "-(012) +2(121)");
        assert_eq!(Chain::zero(t(), SpaceKind::RackSpace, 1).to_string(), "0");
    }

    #[test]
    fn cube_indexing_is_lexicographic() {
        let all: Vec<Cube> = cubes(3, 2, SpaceKind::RackSpace).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(c.index(3), i);
        }
        assert_eq!(cubes(2, 0, SpaceKind::RackSpace).count(), 1);
        assert_eq!(cubes(2, 0, SpaceKind::ExtendedRackSpace).count(), 2);
    }
}
