//! Integer homology of rack spaces with coordinates for cycle classes.
//!
//! For `H_n = ker d_n / im d_{n+1}`, write `U d_n V = D` with rank `r`.
//! The last `m - r` columns of `V` span the kernel, and a cycle `z` has
//! kernel coordinates `y = (V^-1 z)[r..]`. The image of `d_{n+1}` in those
//! coordinates is `A = (V^-1 d_{n+1})[r..]`, and `U2 A V2 = D2` splits the
//! quotient. Class coordinates are the rows of `U2 * V^-1[r..]` applied to
//! `z`: rows with `d_i > 1` are torsion coordinates mod `d_i`, rows past the
//! rank of `A` are free coordinates, rows with `d_i = 1` are dropped.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cubical::{boundary_matrix, cube_count, is_cycle, Chain, SpaceKind};
use crate::matrix::IntMatrix;
use crate::rack::FiniteRack;
use crate::snf::smith_normal_form;

pub const DEFAULT_MAX_CUBES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{cubes} cubes in dimension {dim} exceed the limit of {limit}")]
    TooLarge {
        dim: usize,
        cubes: usize,
        limit: usize,
    },
    #[error("not a cycle")]
    NotACycle,
    #[error("presentation mismatch: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Largest admissible number of `(n+1)`-cubes.
    pub max_cubes: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            max_cubes: DEFAULT_MAX_CUBES,
        }
    }
}

/// `H_n` of `BR` or `B_R R` as `Z^r + Z_d1 + .. + Z_dk`, with the data needed
/// to read off class coordinates.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    rack: Arc<FiniteRack>,
    dim: usize,
    kind: SpaceKind,
    torsion: Vec<BigInt>,
    torsion_rows: IntMatrix,
    free_rows: IntMatrix,
    kernel_rank: usize,
    image_rank: usize,
}

impl HomologyPresentation {
    pub fn rack(&self) -> &Arc<FiniteRack> {
        &self.rack
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.rows()
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Rank of `ker d_n`.
    pub fn kernel_rank(&self) -> usize {
        self.kernel_rank
    }

    /// Rank of `im d_{n+1}`.
    pub fn image_rank(&self) -> usize {
        self.image_rank
    }

    /// Same group, ignoring the rack, dimension and space.
    pub fn same_group(&self, other: &HomologyPresentation) -> bool {
        self.free_rank() == other.free_rank() && self.torsion == other.torsion
    }

    fn matches(&self, other: &HomologyPresentation) -> bool {
        self.dim == other.dim && self.kind == other.kind && self.rack.table() == other.rack.table()
    }

    pub fn zero_class(self: &Arc<Self>) -> HomologyClass {
        HomologyClass {
            presentation: self.clone(),
            free: vec![BigInt::zero(); self.free_rank()],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }
}

impl fmt::Display for HomologyPresentation {
    /// `Z^1 + Z_3`; the trivial group prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(format!("Z^{}", self.free_rank()));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn homology(
    rack: &Arc<FiniteRack>,
    dim: usize,
    kind: SpaceKind,
) -> Result<HomologyPresentation, HomologyError> {
    homology_with(rack, dim, kind, &HomologyOptions::default())
}

pub fn homology_with(
    rack: &Arc<FiniteRack>,
    dim: usize,
    kind: SpaceKind,
    options: &HomologyOptions,
) -> Result<HomologyPresentation, HomologyError> {
    let cubes = cube_count(rack.size(), dim + 1, kind);
    if cubes > options.max_cubes {
        return Err(HomologyError::TooLarge {
            dim: dim + 1,
            cubes,
            limit: options.max_cubes,
        });
    }

    let d_n = if dim == 0 {
        IntMatrix::zeros(0, cube_count(rack.size(), 0, kind))
    } else {
        boundary_matrix(rack, dim, kind)
    };
    let d_up = boundary_matrix(rack, dim + 1, kind);

    let outer = smith_normal_form(&d_n);
    let r = outer.rank;
    let m = d_n.cols();
    let to_kernel = outer.v_inv.row_block(r, m);
    let a = to_kernel.mul(&d_up);

    let inner = smith_normal_form(&a);
    let projection = inner.u.mul(&to_kernel);

    let mut torsion = Vec::new();
    let mut torsion_idx = Vec::new();
    for i in 0..inner.rank {
        let d = inner.d.get(i, i);
        if !d.is_one() {
            torsion.push(d.clone());
            torsion_idx.push(i);
        }
    }
    let mut torsion_rows = IntMatrix::zeros(torsion_idx.len(), m);
    for (k, &i) in torsion_idx.iter().enumerate() {
        for c in 0..m {
            torsion_rows.set(k, c, projection.get(i, c).clone());
        }
    }

    Ok(HomologyPresentation {
        rack: rack.clone(),
        dim,
        kind,
        torsion,
        torsion_rows,
        free_rows: projection.row_block(inner.rank, m - r),
        kernel_rank: m - r,
        image_rank: inner.rank,
    })
}

/// Coordinates of a homology class: free coordinates in `Z`, torsion
/// coordinates reduced into `[0, d_i)`.
#[derive(Debug, Clone)]
pub struct HomologyClass {
    presentation: Arc<HomologyPresentation>,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl HomologyClass {
    pub fn presentation(&self) -> &Arc<HomologyPresentation> {
        &self.presentation
    }

    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    /// True when no free coordinate is set.
    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    /// Whether the `i`-th torsion coordinate is a unit mod `d_i`.
    pub fn generates_torsion_summand(&self, i: usize) -> bool {
        match (self.torsion.get(i), self.presentation.torsion.get(i)) {
            (Some(t), Some(d)) => t.gcd(d).is_one(),
            _ => false,
        }
    }

    fn check_same(&self, other: &HomologyClass) -> Result<(), HomologyError> {
        if Arc::ptr_eq(&self.presentation, &other.presentation)
            || self.presentation.matches(&other.presentation)
        {
            Ok(())
        } else {
            Err(HomologyError::Mismatch(
                "classes belong to different homology groups".into(),
            ))
        }
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass, HomologyError> {
        self.check_same(other)?;
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a + b)
            .collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.presentation.torsion)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        Ok(HomologyClass {
            presentation: self.presentation.clone(),
            free,
            torsion,
        })
    }

    pub fn negate(&self) -> HomologyClass {
        HomologyClass {
            presentation: self.presentation.clone(),
            free: self.free.iter().map(|a| -a).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&self.presentation.torsion)
                .map(|(a, d)| (-a).mod_floor(d))
                .collect(),
        }
    }

    pub fn equals(&self, other: &HomologyClass) -> Result<bool, HomologyError> {
        self.check_same(other)?;
        Ok(self.free == other.free && self.torsion == other.torsion)
    }
}

impl fmt::Display for HomologyClass {
    /// `(free: 0; torsion: 1 mod 3)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        let torsion: Vec<String> = self
            .torsion
            .iter()
            .zip(&self.presentation.torsion)
            .map(|(t, d)| format!("{t} mod {d}"))
            .collect();
        write!(
            f,
            "(free: {}; torsion: {})",
            free.join(", "),
            torsion.join(", ")
        )
    }
}

pub fn classes_equal(a: &HomologyClass, b: &HomologyClass) -> Result<bool, HomologyError> {
    a.equals(b)
}

pub fn class_of_cycle(
    presentation: &Arc<HomologyPresentation>,
    z: &Chain,
) -> Result<HomologyClass, HomologyError> {
    let p = presentation;
    if z.dim() != p.dim || z.kind() != p.kind || z.rack().table() != p.rack.table() {
        return Err(HomologyError::Mismatch(format!(
            "{}-chain of {} does not live where H_{} of {} does",
            z.dim(),
            z.kind(),
            p.dim,
            p.kind
        )));
    }
    if !is_cycle(z) {
        return Err(HomologyError::NotACycle);
    }
    let v = z.to_vector();
    let free = p.free_rows.mul_vec(&v);
    let torsion = p
        .torsion_rows
        .mul_vec(&v)
        .into_iter()
        .zip(&p.torsion)
        .map(|(t, d)| t.mod_floor(d))
        .collect();
    Ok(HomologyClass {
        presentation: p.clone(),
        free,
        torsion,
    })
}

type CacheKey = (Vec<usize>, usize, SpaceKind);
type CacheSlot = Arc<OnceLock<Result<Arc<HomologyPresentation>, HomologyError>>>;

/// Presentations keyed by rack table, dimension and space. Each key is built
/// at most once even under concurrent lookups.
#[derive(Default)]
pub struct PresentationCache {
    options: HomologyOptions,
    slots: Mutex<HashMap<CacheKey, CacheSlot>>,
}

impl PresentationCache {
    pub fn new(options: HomologyOptions) -> Self {
        PresentationCache {
            options,
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(
        &self,
        rack: &Arc<FiniteRack>,
        dim: usize,
        kind: SpaceKind,
    ) -> Result<Arc<HomologyPresentation>, HomologyError> {
        let key = (rack.table().entries().to_vec(), dim, kind);
        let slot = {
            let mut slots = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            slots.entry(key).or_default().clone()
        };
        slot.get_or_init(|| homology_with(rack, dim, kind, &self.options).map(Arc::new))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.slots.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
