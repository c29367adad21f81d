//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundVerdict;
use crate::geom::{Hull, Polygon};
use crate::rational::{self, Rational};
use crate::toric::{AreaIdentity, TwelveCheck};
use crate::unimodular::DualVector;
use crate::width::{LatticeWidth, LatticeWidthData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HollowClass {
    /// Lattice width one.
    WidthOne,
    /// Equivalent to `2 * Δ₂`.
    TwiceStandardTriangle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(with = "rational::serde_str")]
    pub area: Rational,
    pub interior: u64,
    pub boundary: Option<u64>,
    /// Smallest `l` with `l * P` integral, as a decimal string.
    pub denominator: String,
    pub vertices: usize,
    pub lattice_width: LatticeWidth,
    pub width_data: Vec<LatticeWidthData>,
    pub symmetric_lwd: Option<DualVector>,
    pub n_smooth: Option<u64>,
    pub interior_hull: Option<Hull>,
    pub hollow_class: Option<HollowClass>,
    pub twelve: Option<TwelveCheck>,
    pub delta_multiple: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub polygon: Polygon,
    /// Canonical representative of the unimodular class; lattice polygons only.
    pub canonical: Option<Polygon>,
    pub invariants: Invariants,
    pub verdicts: Vec<BoundVerdict>,
    pub identity: Option<AreaIdentity>,
    /// Failed checks. Empty exactly when every applicable check passed.
    pub anomalies: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty()
    }

    pub fn sharp_bounds(&self) -> impl Iterator<Item = &BoundVerdict> {
        self.verdicts.iter().filter(|v| v.applicable && v.sharp)
    }

    pub fn verdict(&self, name: &str) -> Option<&BoundVerdict> {
        self.verdicts.iter().find(|v| v.bound_name == name)
    }
}
