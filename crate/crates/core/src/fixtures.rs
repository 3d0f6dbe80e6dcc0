//! Bundled diagrams and labellings.

use crate::diagram::{parse_diagram, parse_labels, LabelFile, LinkDiagram};

pub const TREFOIL_RIGHT_ZERO_WRITHE: &str =
    include_str!("../fixtures/trefoil_right_zero_writhe.dgm");
pub const TREFOIL_RIGHT_ZERO_WRITHE_LABELS: &str =
    include_str!("../fixtures/trefoil_right_zero_writhe.lbl");
pub const TREFOIL_LEFT_ZERO_WRITHE: &str = include_str!("../fixtures/trefoil_left_zero_writhe.dgm");
pub const TREFOIL_LEFT_ZERO_WRITHE_LABELS: &str =
    include_str!("../fixtures/trefoil_left_zero_writhe.lbl");
pub const TREFOIL_STANDARD: &str = include_str!("../fixtures/trefoil_standard.dgm");
pub const UNKNOT_KINK: &str = include_str!("../fixtures/unknot_kink.dgm");
pub const UNKNOT: &str = include_str!("../fixtures/unknot.dgm");

fn diagram(text: &str) -> LinkDiagram {
    parse_diagram(text).expect("bundled diagram parses")
}

fn labels(text: &str) -> LabelFile {
    parse_labels(text).expect("bundled labels parse")
}

pub fn trefoil_right() -> (LinkDiagram, LabelFile) {
    (
        diagram(TREFOIL_RIGHT_ZERO_WRITHE),
        labels(TREFOIL_RIGHT_ZERO_WRITHE_LABELS),
    )
}

pub fn trefoil_left() -> (LinkDiagram, LabelFile) {
    (
        diagram(TREFOIL_LEFT_ZERO_WRITHE),
        labels(TREFOIL_LEFT_ZERO_WRITHE_LABELS),
    )
}

pub fn trefoil_standard() -> LinkDiagram {
    diagram(TREFOIL_STANDARD)
}

pub fn unknot_kink() -> LinkDiagram {
    diagram(UNKNOT_KINK)
}

pub fn unknot() -> LinkDiagram {
    diagram(UNKNOT)
}

/// Name and diagram of every bundled fixture.
pub fn corpus() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("trefoil_right_zero_writhe", trefoil_right().0),
        ("trefoil_left_zero_writhe", trefoil_left().0),
        ("trefoil_standard", trefoil_standard()),
        ("unknot_kink", unknot_kink()),
        ("unknot", unknot()),
    ]
}
