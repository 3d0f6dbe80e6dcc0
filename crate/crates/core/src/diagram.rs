//! Oriented link diagrams as crossing data, rack colourings and their
//! canonical cycles.
//!
//! A crossing is `sign under_in over under_out` over arc ids, plus an
//! optional list of the four surrounding regions `q0 q1 q2 q3`. `q0` is the
//! quadrant whose label `c` enters the cube `(c, x, b)`; the rest follow
//! counterclockwise. With `x` the under label entering the cube (incoming at
//! a positive crossing, outgoing at a negative one) and `b` the over label:
//!
//! ```text
//! positive:  q1 = c^b   q2 = (c^x)^b   q3 = c^x
//! negative:  q1 = c^x   q2 = (c^x)^b   q3 = c^b
//! ```
//!
//! Region 0 is the base region.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::certificate::Certificate;
use crate::cubical::{is_cycle, Chain, Cube, SpaceKind};
use crate::fixtures;
use crate::homology::{
    class_of_cycle, homology, HomologyClass, HomologyError, HomologyPresentation,
};
use crate::rack::{three_colour_rack, Element, FiniteRack, RackPermutation};

pub const BASE_REGION: usize = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("crossing {crossing}: arc {arc} out of range (arc count {arc_count})")]
    ArcOutOfRange {
        crossing: usize,
        arc: usize,
        arc_count: usize,
    },
    #[error("crossing {crossing}: region {region} out of range (region count {region_count})")]
    RegionOutOfRange {
        crossing: usize,
        region: usize,
        region_count: usize,
    },
    #[error("arc {arc} enters {ins} crossings and leaves {outs}")]
    Dangling { arc: usize, ins: usize, outs: usize },
    #[error("region data on some crossings but not on all")]
    PartialQuadrants,
    #[error("crossings list regions but the header gives no region count")]
    MissingRegionCount,
    #[error("diagram has no region data")]
    NoRegionData,
    #[error("labelling has {got} {what} labels, expected {expected}")]
    LabelCount {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("label {label} outside a rack of size {size}")]
    LabelOutOfRange { label: Element, size: usize },
    #[error("labelling violates the rule at crossing {0}")]
    InvalidLabelling(usize),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    pub under_in: usize,
    pub over: usize,
    pub under_out: usize,
    pub quadrants: Option<[usize; 4]>,
}

impl Crossing {
    /// The under arc whose label enters the cube.
    pub fn cube_under_arc(&self) -> usize {
        match self.sign {
            Sign::Positive => self.under_in,
            Sign::Negative => self.under_out,
        }
    }

    fn arcs_ok(&self, rack: &FiniteRack, arcs: &[Element]) -> bool {
        let b = arcs[self.over];
        match self.sign {
            Sign::Positive => arcs[self.under_out] == rack.op(arcs[self.under_in], b),
            Sign::Negative => arcs[self.under_in] == rack.op(arcs[self.under_out], b),
        }
    }

    fn regions_ok(&self, rack: &FiniteRack, arcs: &[Element], regions: &[Element]) -> bool {
        let Some(q) = self.quadrants else {
            return true;
        };
        let (x, b) = (arcs[self.cube_under_arc()], arcs[self.over]);
        let c = regions[q[0]];
        let cx = rack.op(c, x);
        let expected = match self.sign {
            Sign::Positive => [rack.op(c, b), rack.op(cx, b), cx],
            Sign::Negative => [cx, rack.op(cx, b), rack.op(c, b)],
        };
        (1..4).all(|i| regions[q[i]] == expected[i - 1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    arc_count: usize,
    region_count: Option<usize>,
    crossings: Vec<Crossing>,
}

impl LinkDiagram {
    pub fn new(
        arc_count: usize,
        region_count: Option<usize>,
        crossings: Vec<Crossing>,
    ) -> Result<Self, DiagramError> {
        let mut ins = vec![0; arc_count];
        let mut outs = vec![0; arc_count];
        for (i, c) in crossings.iter().enumerate() {
            for arc in [c.under_in, c.over, c.under_out] {
                if arc >= arc_count {
                    return Err(DiagramError::ArcOutOfRange {
                        crossing: i,
                        arc,
                        arc_count,
                    });
                }
            }
            ins[c.under_out] += 1;
            outs[c.under_in] += 1;
            if let Some(q) = c.quadrants {
                let region_count = region_count.ok_or(DiagramError::MissingRegionCount)?;
                if let Some(&region) = q.iter().find(|&&r| r >= region_count) {
                    return Err(DiagramError::RegionOutOfRange {
                        crossing: i,
                        region,
                        region_count,
                    });
                }
            }
        }
        // an arc begins at one undercrossing and ends at the next; a closed
        // component without undercrossings is a single arc touching neither
        for arc in 0..arc_count {
            if ins[arc] != outs[arc] || ins[arc] > 1 {
                return Err(DiagramError::Dangling {
                    arc,
                    ins: ins[arc],
                    outs: outs[arc],
                });
            }
        }
        let with = crossings.iter().filter(|c| c.quadrants.is_some()).count();
        if with != 0 && with != crossings.len() {
            return Err(DiagramError::PartialQuadrants);
        }
        Ok(LinkDiagram {
            arc_count,
            region_count,
            crossings,
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn region_count(&self) -> Option<usize> {
        self.region_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn has_regions(&self) -> bool {
        self.region_count.is_some() && self.crossings.iter().all(|c| c.quadrants.is_some())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("diagram {}", self.arc_count);
        if let Some(r) = self.region_count {
            out.push_str(&format!(" {r}"));
        }
        out.push('\n');
        for c in &self.crossings {
            out.push_str(&format!(
                "x {} {} {} {}",
                c.sign, c.under_in, c.over, c.under_out
            ));
            if let Some(q) = c.quadrants {
                out.push_str(&format!(" {} {} {} {}", q[0], q[1], q[2], q[3]));
            }
            out.push('\n');
        }
        out
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn number(line: usize, tok: &str) -> Result<usize, DiagramError> {
    tok.parse().map_err(|_| DiagramError::Syntax {
        line,
        message: format!("expected a non-negative integer, found {tok:?}"),
    })
}

pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(DiagramError::Syntax {
        line: 1,
        message: "empty diagram file".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.first() != Some(&"diagram") || !(2..=3).contains(&head.len()) {
        return Err(DiagramError::Syntax {
            line: hline,
            message: "expected \"diagram <arcs> [<regions>]\"".into(),
        });
    }
    let arc_count = number(hline, head[1])?;
    let region_count = head.get(2).map(|t| number(hline, t)).transpose()?;

    let mut crossings = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] != "x" || !(toks.len() == 5 || toks.len() == 9) {
            return Err(DiagramError::Syntax {
                line,
                message: "expected \"x <+|-> <under_in> <over> <under_out> [<q0> <q1> <q2> <q3>]\""
                    .into(),
            });
        }
        let sign = match toks[1] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => {
                return Err(DiagramError::Syntax {
                    line,
                    message: format!("crossing sign must be + or -, found {other:?}"),
                })
            }
        };
        let quadrants = if toks.len() == 9 {
            Some([
                number(line, toks[5])?,
                number(line, toks[6])?,
                number(line, toks[7])?,
                number(line, toks[8])?,
            ])
        } else {
            None
        };
        crossings.push(Crossing {
            sign,
            under_in: number(line, toks[2])?,
            over: number(line, toks[3])?,
            under_out: number(line, toks[4])?,
            quadrants,
        });
    }
    LinkDiagram::new(arc_count, region_count, crossings)
}

/// Arc labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    pub arcs: Vec<Element>,
}

/// Arc and region labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedLabelling {
    pub arcs: Vec<Element>,
    pub regions: Vec<Element>,
}

impl Labelling {
    pub fn permuted(&self, sigma: &RackPermutation) -> Labelling {
        Labelling {
            arcs: self.arcs.iter().map(|&a| sigma.apply(a)).collect(),
        }
    }
}

impl ExtendedLabelling {
    pub fn base_label(&self) -> Element {
        self.regions[BASE_REGION]
    }

    pub fn plain(&self) -> Labelling {
        Labelling {
            arcs: self.arcs.clone(),
        }
    }

    pub fn permuted(&self, sigma: &RackPermutation) -> ExtendedLabelling {
        ExtendedLabelling {
            arcs: self.arcs.iter().map(|&a| sigma.apply(a)).collect(),
            regions: self.regions.iter().map(|&a| sigma.apply(a)).collect(),
        }
    }
}

fn join(xs: &[Element]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arcs: {}", join(&self.arcs))
    }
}

impl fmt::Display for ExtendedLabelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arcs: {}; regions: {}",
            join(&self.arcs),
            join(&self.regions)
        )
    }
}

/// Contents of a label file: `arcs: ..` and optionally `regions: ..`, on
/// separate lines or joined by `;`, with an optional leading `label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelFile {
    pub arcs: Vec<Element>,
    pub regions: Option<Vec<Element>>,
}

impl LabelFile {
    pub fn labelling(&self) -> Labelling {
        Labelling {
            arcs: self.arcs.clone(),
        }
    }

    pub fn extended(&self) -> Option<ExtendedLabelling> {
        self.regions.as_ref().map(|r| ExtendedLabelling {
            arcs: self.arcs.clone(),
            regions: r.clone(),
        })
    }
}

pub fn parse_labels(text: &str) -> Result<LabelFile, DiagramError> {
    let mut arcs = None;
    let mut regions = None;
    for (line, l) in content_lines(text) {
        let l = l.strip_prefix("label").unwrap_or(l);
        for part in l.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, values) = part.split_once(':').ok_or(DiagramError::Syntax {
                line,
                message: format!("expected \"arcs: ..\" or \"regions: ..\", found {part:?}"),
            })?;
            let values = values
                .split_whitespace()
                .map(|t| number(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            let slot = match key.trim() {
                "arcs" => &mut arcs,
                "regions" => &mut regions,
                other => {
                    return Err(DiagramError::Syntax {
                        line,
                        message: format!("unknown label key {other:?}"),
                    })
                }
            };
            if slot.replace(values).is_some() {
                return Err(DiagramError::Syntax {
                    line,
                    message: format!("{} given twice", key.trim()),
                });
            }
        }
    }
    Ok(LabelFile {
        arcs: arcs.ok_or(DiagramError::Syntax {
            line: 1,
            message: "missing arcs".into(),
        })?,
        regions,
    })
}

fn check_range(labels: &[Element], rack: &FiniteRack) -> Result<(), DiagramError> {
    match labels.iter().find(|&&l| l >= rack.size()) {
        Some(&label) => Err(DiagramError::LabelOutOfRange {
            label,
            size: rack.size(),
        }),
        None => Ok(()),
    }
}

pub fn check_labelling(
    diagram: &LinkDiagram,
    rack: &FiniteRack,
    labelling: &Labelling,
) -> Result<(), DiagramError> {
    if labelling.arcs.len() != diagram.arc_count {
        return Err(DiagramError::LabelCount {
            what: "arc",
            got: labelling.arcs.len(),
            expected: diagram.arc_count,
        });
    }
    check_range(&labelling.arcs, rack)?;
    match diagram
        .crossings
        .iter()
        .position(|c| !c.arcs_ok(rack, &labelling.arcs))
    {
        Some(i) => Err(DiagramError::InvalidLabelling(i)),
        None => Ok(()),
    }
}

pub fn check_extended_labelling(
    diagram: &LinkDiagram,
    rack: &FiniteRack,
    labelling: &ExtendedLabelling,
) -> Result<(), DiagramError> {
    let regions = diagram.region_count.ok_or(DiagramError::NoRegionData)?;
    check_labelling(diagram, rack, &labelling.plain())?;
    if labelling.regions.len() != regions {
        return Err(DiagramError::LabelCount {
            what: "region",
            got: labelling.regions.len(),
            expected: regions,
        });
    }
    check_range(&labelling.regions, rack)?;
    match diagram
        .crossings
        .iter()
        .position(|c| !c.regions_ok(rack, &labelling.arcs, &labelling.regions))
    {
        Some(i) => Err(DiagramError::InvalidLabelling(i)),
        None => Ok(()),
    }
}

/// Depth-first search over `arcs ++ regions` in lexicographic order. Each
/// crossing is checked as soon as its last variable is assigned.
fn search(diagram: &LinkDiagram, rack: &FiniteRack, with_regions: bool) -> Vec<Vec<Element>> {
    let arcs = diagram.arc_count;
    let total = arcs
        + if with_regions {
            diagram.region_count.unwrap_or(0)
        } else {
            0
        };
    let mut checks: Vec<Vec<(usize, bool)>> = vec![Vec::new(); total];
    for (i, c) in diagram.crossings.iter().enumerate() {
        let last_arc = c.under_in.max(c.over).max(c.under_out);
        checks[last_arc].push((i, false));
        if let (true, Some(q)) = (with_regions, c.quadrants) {
            let last = arcs + q.iter().copied().max().unwrap_or(0);
            checks[last.max(last_arc)].push((i, true));
        }
    }

    let k = rack.size();
    let mut out = Vec::new();
    if total == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut vals = vec![0; total];
    let mut depth = 0;
    let mut next = vec![0; total];
    loop {
        if next[depth] == k {
            next[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        vals[depth] = next[depth];
        next[depth] += 1;
        let ok = checks[depth].iter().all(|&(i, regions)| {
            let c = &diagram.crossings[i];
            if regions {
                c.regions_ok(rack, &vals[..arcs], &vals[arcs..])
            } else {
                c.arcs_ok(rack, &vals[..arcs])
            }
        });
        if !ok {
            continue;
        }
        if depth + 1 == total {
            out.push(vals.clone());
        } else {
            depth += 1;
        }
    }
    out
}

pub fn enumerate_colorings(diagram: &LinkDiagram, rack: &FiniteRack) -> Vec<Labelling> {
    search(diagram, rack, false)
        .into_iter()
        .map(|arcs| Labelling { arcs })
        .collect()
}

pub fn enumerate_extended_colorings(
    diagram: &LinkDiagram,
    rack: &FiniteRack,
) -> Result<Vec<ExtendedLabelling>, DiagramError> {
    if !diagram.has_regions() {
        return Err(DiagramError::NoRegionData);
    }
    let arcs = diagram.arc_count;
    Ok(search(diagram, rack, true)
        .into_iter()
        .map(|mut v| {
            let regions = v.split_off(arcs);
            ExtendedLabelling { arcs: v, regions }
        })
        .collect())
}

/// `sum sign * (x, b)` over crossings.
pub fn canonical_cycle(
    diagram: &LinkDiagram,
    labelling: &Labelling,
    rack: &Arc<FiniteRack>,
) -> Result<Chain, DiagramError> {
    check_labelling(diagram, rack, labelling)?;
    let a = &labelling.arcs;
    let terms = diagram.crossings.iter().map(|c| {
        (
            c.sign.value(),
            Cube::new(vec![a[c.cube_under_arc()], a[c.over]]),
        )
    });
    Ok(
        Chain::from_terms(rack.clone(), SpaceKind::RackSpace, 2, terms)
            .expect("labels were range checked"),
    )
}

/// `sum sign * (c, x, b)` over crossings, `c` the label of `q0`.
pub fn extended_canonical_cycle(
    diagram: &LinkDiagram,
    labelling: &ExtendedLabelling,
    rack: &Arc<FiniteRack>,
) -> Result<Chain, DiagramError> {
    if !diagram.has_regions() {
        return Err(DiagramError::NoRegionData);
    }
    check_extended_labelling(diagram, rack, labelling)?;
    let (a, r) = (&labelling.arcs, &labelling.regions);
    let terms = diagram.crossings.iter().map(|c| {
        let q0 = c.quadrants.expect("checked by has_regions")[0];
        (
            c.sign.value(),
            Cube::new(vec![r[q0], a[c.cube_under_arc()], a[c.over]]),
        )
    });
    Ok(
        Chain::from_terms(rack.clone(), SpaceKind::ExtendedRackSpace, 2, terms)
            .expect("labels were range checked"),
    )
}

type ClassKey = (Vec<BigInt>, Vec<BigInt>);

/// The set of classes of canonical cycles over all labellings, with the
/// writhe.
#[derive(Debug, Clone)]
pub struct KnotInvariant {
    pub presentation: Arc<HomologyPresentation>,
    pub classes: Vec<HomologyClass>,
    pub writhe: i64,
}

impl KnotInvariant {
    pub fn contains(&self, class: &HomologyClass) -> bool {
        self.classes
            .iter()
            .any(|c| c.equals(class).unwrap_or(false))
    }

    /// Same class set and writhe.
    pub fn same_as(&self, other: &KnotInvariant) -> bool {
        self.writhe == other.writhe
            && self.classes.len() == other.classes.len()
            && self.classes.iter().all(|c| other.contains(c))
    }
}

impl fmt::Display for KnotInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.presentation)?;
        writeln!(f, "writhe: {}", self.writhe)?;
        for c in &self.classes {
            writeln!(f, "class: {c}")?;
        }
        Ok(())
    }
}

/// Canonical classes in `H_2` of `BR` (plain) or `B_R R` (extended).
pub fn knot_invariant(
    diagram: &LinkDiagram,
    rack: &Arc<FiniteRack>,
    kind: SpaceKind,
) -> Result<KnotInvariant, DiagramError> {
    let presentation = Arc::new(homology(rack, 2, kind)?);
    knot_invariant_in(diagram, &presentation)
}

pub fn knot_invariant_in(
    diagram: &LinkDiagram,
    presentation: &Arc<HomologyPresentation>,
) -> Result<KnotInvariant, DiagramError> {
    let rack = presentation.rack();
    let cycles = match presentation.kind() {
        SpaceKind::RackSpace => enumerate_colorings(diagram, rack)
            .iter()
            .map(|l| canonical_cycle(diagram, l, rack))
            .collect::<Result<Vec<_>, _>>()?,
        SpaceKind::ExtendedRackSpace => enumerate_extended_colorings(diagram, rack)?
            .iter()
            .map(|l| extended_canonical_cycle(diagram, l, rack))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let mut keyed: Vec<(ClassKey, HomologyClass)> = cycles
        .iter()
        .map(|z| {
            class_of_cycle(presentation, z)
                .map(|c| ((c.free_coords().to_vec(), c.torsion_coords().to_vec()), c))
        })
        .collect::<Result<_, _>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(KnotInvariant {
        presentation: presentation.clone(),
        classes: keyed.into_iter().map(|(_, c)| c).collect(),
        writhe: diagram.writhe(),
    })
}

/// One side of the chirality argument: a diagram with region data and an
/// extended labelling of it.
pub struct LabelledDiagram<'a> {
    pub diagram: &'a LinkDiagram,
    pub labelling: &'a ExtendedLabelling,
}

/// Chirality of the trefoil over the bundled zero-writhe fixtures and their
/// labels, in the three-colour rack.
pub fn chirality_certificate() -> Certificate {
    chirality_certificate_over(Arc::new(three_colour_rack()))
}

pub fn chirality_certificate_over(rack: Arc<FiniteRack>) -> Certificate {
    let (rd, rl) = fixtures::trefoil_right();
    let (ld, ll) = fixtures::trefoil_left();
    let (rl, ll) = (
        rl.extended().expect("bundled labels have regions"),
        ll.extended().expect("bundled labels have regions"),
    );
    chirality_certificate_for(
        &rack,
        LabelledDiagram {
            diagram: &rd,
            labelling: &rl,
        },
        LabelledDiagram {
            diagram: &ld,
            labelling: &ll,
        },
    )
}

/// Runs: the group `H_2(B_R R)`, validity of both labellings and their
/// cycles `B` and `B'`, that `[B]` generates a torsion summand, that
/// `B = -B'` with `[B'] != [B]`, and that the two invariant sets differ at
/// equal writhe.
pub fn chirality_certificate_for(
    rack: &Arc<FiniteRack>,
    right: LabelledDiagram<'_>,
    left: LabelledDiagram<'_>,
) -> Certificate {
    let mut cert = Certificate::new("trefoil is chiral");
    let h = match homology(rack, 2, SpaceKind::ExtendedRackSpace) {
        Ok(h) => Arc::new(h),
        Err(e) => {
            cert.record("homology", false, e.to_string());
            return cert;
        }
    };
    cert.record("homology", true, format!("H_2 = {h}"));

    let b = extended_canonical_cycle(right.diagram, right.labelling, rack);
    let b_prime = extended_canonical_cycle(left.diagram, left.labelling, rack);
    let (b, b_prime) = match (b, b_prime) {
        (Ok(b), Ok(bp)) => (b, bp),
        (b, bp) => {
            let why: Vec<String> = [("right", b.err()), ("left", bp.err())]
                .into_iter()
                .filter_map(|(side, e)| e.map(|e| format!("{side}: {e}")))
                .collect();
            cert.record("labelling", false, why.join("; "));
            return cert;
        }
    };
    cert.record(
        "labelling",
        true,
        "both labellings satisfy the crossing rules",
    );

    let cycles = is_cycle(&b) && is_cycle(&b_prime);
    if !cert.record("cycle", cycles, format!("B = {b}; B' = {b_prime}")) {
        return cert;
    }

    let class = class_of_cycle(&h, &b).expect("checked to be a cycle");
    let generator = class.is_torsion()
        && (0..h.torsion_factors().len()).any(|i| class.generates_torsion_summand(i));
    if !cert.record(
        "generator",
        generator,
        format!("[B] = {class}, generates a torsion summand: {generator}"),
    ) {
        return cert;
    }

    let mirror_chain = b.try_add(&b_prime).map(|s| s.is_zero()).unwrap_or(false);
    let class_prime = class_of_cycle(&h, &b_prime).expect("checked to be a cycle");
    let ok = mirror_chain
        && class_prime.equals(&class.negate()).unwrap_or(false)
        && !class_prime.equals(&class).unwrap_or(true);
    if !cert.record(
        "mirror",
        ok,
        format!("B + B' = 0: {mirror_chain}, [B'] = {class_prime}"),
    ) {
        return cert;
    }

    let invariants = knot_invariant_in(right.diagram, &h)
        .and_then(|r| knot_invariant_in(left.diagram, &h).map(|l| (r, l)));
    match invariants {
        Ok((r, l)) => {
            let ok = r.writhe == l.writhe
                && !r.same_as(&l)
                && r.contains(&class)
                && l.contains(&class_prime);
            let show = |k: &KnotInvariant| {
                k.classes
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            cert.record(
                "invariant",
                ok,
                format!(
                    "writhe {} and {}; right {{{}}}; left {{{}}}",
                    r.writhe,
                    l.writhe,
                    show(&r),
                    show(&l)
                ),
            );
        }
        Err(e) => {
            cert.record("invariant", false, e.to_string());
        }
    }
    cert
}
