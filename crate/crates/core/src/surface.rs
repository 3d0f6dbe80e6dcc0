//! Triple-point 3-cycles of surface diagrams in the rack space.

use std::sync::Arc;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::cubical::{
    is_cycle, permute_chain, reverse_orientation_3, Chain, ChainError, SpaceKind,
};
use crate::homology::{
    class_of_cycle, homology, HomologyClass, HomologyError, HomologyPresentation,
};
use crate::rack::{automorphisms, three_colour_rack, FiniteRack};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("triple-point chains are 3-chains of the rack space, got a {dim}-chain of {kind}")]
    Shape { dim: usize, kind: SpaceKind },
    #[error("triple-point chain is not a cycle")]
    NotACycle,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// One signed cube `(a, b, c)` per triple point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePointChain {
    chain: Chain,
    provenance: String,
}

impl TriplePointChain {
    pub fn new(chain: Chain, provenance: impl Into<String>) -> Result<Self, SurfaceError> {
        if chain.dim() != 3 || chain.kind() != SpaceKind::RackSpace {
            return Err(SurfaceError::Shape {
                dim: chain.dim(),
                kind: chain.kind(),
            });
        }
        if !is_cycle(&chain) {
            return Err(SurfaceError::NotACycle);
        }
        Ok(TriplePointChain {
            chain,
            provenance: provenance.into(),
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

pub const TWIST_SPUN_TREFOIL: &str = "twist-spun-trefoil";

const TWIST_SPUN_TREFOIL_TERMS: [(i64, [usize; 3]); 12] = [
    (-1, [0, 1, 2]),
    (-1, [2, 0, 2]),
    (-1, [1, 2, 2]),
    (1, [1, 2, 1]),
    (1, [1, 0, 2]),
    (1, [1, 1, 0]),
    (-1, [0, 2, 1]),
    (-1, [1, 0, 1]),
    (-1, [2, 1, 1]),
    (1, [2, 1, 2]),
    (1, [2, 0, 1]),
    (1, [2, 2, 0]),
];

/// The triple-point chain of the 2-twist-spun trefoil as a chain over any
/// rack with at least three elements (not necessarily a cycle there).
pub fn twist_spun_trefoil_chain(rack: Arc<FiniteRack>) -> Result<Chain, ChainError> {
    Chain::from_terms(rack, SpaceKind::RackSpace, 3, TWIST_SPUN_TREFOIL_TERMS)
}

/// The 2-twist-spun trefoil's triple points labelled in the three-colour rack.
pub fn twist_spun_trefoil_cycle() -> TriplePointChain {
    let chain = twist_spun_trefoil_chain(Arc::new(three_colour_rack()))
        .expect("terms fit the three-colour rack");
    TriplePointChain::new(chain, "2-twist-spun trefoil, three-colour labelling")
        .expect("the built-in chain is a cycle")
}

pub fn reversed_cycle(tc: &TriplePointChain) -> Result<TriplePointChain, SurfaceError> {
    let chain = reverse_orientation_3(&tc.chain)?;
    TriplePointChain::new(chain, format!("{}, reversed", tc.provenance))
}

/// Class of the chain in `H_3(BR)`.
pub fn surface_invariant(tc: &TriplePointChain) -> Result<HomologyClass, SurfaceError> {
    let h = Arc::new(homology(tc.chain.rack(), 3, SpaceKind::RackSpace)?);
    surface_invariant_in(&h, tc)
}

pub fn surface_invariant_in(
    presentation: &Arc<HomologyPresentation>,
    tc: &TriplePointChain,
) -> Result<HomologyClass, SurfaceError> {
    Ok(class_of_cycle(presentation, &tc.chain)?)
}

/// Non-reversibility of the 2-twist-spun trefoil over the built-in cycle.
pub fn nonreversibility_certificate() -> Certificate {
    let c = twist_spun_trefoil_cycle();
    nonreversibility_certificate_for(c.chain())
}

/// The same argument over the built-in labels read in `rack`.
pub fn nonreversibility_certificate_over(rack: Arc<FiniteRack>) -> Certificate {
    match twist_spun_trefoil_chain(rack) {
        Ok(chain) => nonreversibility_certificate_for(&chain),
        Err(e) => {
            let mut cert = Certificate::new("2-twist-spun trefoil is not reversible");
            cert.record("cycle", false, e.to_string());
            cert
        }
    }
}

/// Runs, for a triple-point chain `c`: the group `H_3`, the cycle check, the
/// torsion generator check, invariance of the class under every rack
/// automorphism, and `class(c') = -class(c) != class(c)` for the reversal.
pub fn nonreversibility_certificate_for(c: &Chain) -> Certificate {
    let mut cert = Certificate::new("2-twist-spun trefoil is not reversible");
    let rack = c.rack().clone();

    let h = match homology(&rack, 3, SpaceKind::RackSpace) {
        Ok(h) => Arc::new(h),
        Err(e) => {
            cert.record("homology", false, e.to_string());
            return cert;
        }
    };
    cert.record("homology", true, format!("H_3 = {h}"));

    let cycle_ok = c.dim() == 3 && c.kind() == SpaceKind::RackSpace && is_cycle(c);
    if !cert.record("cycle", cycle_ok, format!("C = {c}")) {
        return cert;
    }

    let class = class_of_cycle(&h, c).expect("checked to be a cycle");
    let generator = class.is_torsion()
        && (0..h.torsion_factors().len()).any(|i| class.generates_torsion_summand(i));
    if !cert.record(
        "generator",
        generator,
        format!("[C] = {class}, generates a torsion summand: {generator}"),
    ) {
        return cert;
    }

    let auts = match automorphisms(&rack) {
        Ok(a) => a,
        Err(e) => {
            cert.record("invariance", false, e.to_string());
            return cert;
        }
    };
    let mut broken = None;
    for sigma in &auts {
        let moved = permute_chain(sigma, c).expect("automorphism");
        let same = class_of_cycle(&h, &moved)
            .and_then(|m| m.equals(&class))
            .unwrap_or(false);
        if !same {
            broken = Some(sigma.clone());
            break;
        }
    }
    let detail = match &broken {
        None => format!("[sC] = [C] for all {} automorphisms s", auts.len()),
        Some(s) => format!("class moves under {s}"),
    };
    if !cert.record("invariance", broken.is_none(), detail) {
        return cert;
    }

    let reversed = match reverse_orientation_3(c) {
        Ok(r) => r,
        Err(e) => {
            cert.record("reversal", false, e.to_string());
            return cert;
        }
    };
    let sum_zero = c.try_add(&reversed).map(|s| s.is_zero()).unwrap_or(false);
    let rev_class = class_of_cycle(&h, &reversed);
    let ok = match &rev_class {
        Ok(rc) => {
            sum_zero
                && rc.equals(&class.negate()).unwrap_or(false)
                && !rc.equals(&class).unwrap_or(true)
        }
        Err(_) => false,
    };
    let detail = match rev_class {
        Ok(rc) => format!("C' = {reversed}, C + C' = 0: {sum_zero}, [C'] = {rc}"),
        Err(e) => format!("C' = {reversed}: {e}"),
    };
    cert.record("reversal", ok, detail);
    cert
}
