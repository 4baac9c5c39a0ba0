//! The JSON fan format.
//!
//! ```json
//! {
//!   "format": 1,
//!   "name": "p2",
//!   "lattice": { "rank": 2, "torsion": [] },
//!   "rays": [ { "free": [1, 0], "torsion": [] }, ... ],
//!   "max_cones": [ [0, 1], [1, 2], [2, 0] ]
//! }
//! ```
//!
//! Ray indices in `max_cones` are 0-based. An open substack is described by
//! listing only the cones that remain.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use toric_k0::stackyfan::{Lattice, LatticePoint, StackyFan};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub format: u32,
    pub name: String,
    pub lattice: LatticeSpec,
    pub rays: Vec<RaySpec>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySpec {
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

impl FanFile {
    /// Parses and schema-checks a fan file.
    pub fn parse(text: &str) -> Result<FanFile, CliError> {
        let file: FanFile = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        file.check_schema()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan files serialize")
    }

    fn check_schema(&self) -> Result<(), CliError> {
        if self.format != FORMAT_VERSION {
            return Err(CliError::Schema(format!("unsupported format {}, expected {FORMAT_VERSION}", self.format)));
        }
        let (d, t) = (self.lattice.rank, self.lattice.torsion.len());
        for (i, r) in self.rays.iter().enumerate() {
            if r.free.len() != d {
                return Err(CliError::Schema(format!("ray {i}: {} free coordinates, lattice rank is {d}", r.free.len())));
            }
            if r.torsion.len() != t {
                return Err(CliError::Schema(format!("ray {i}: {} torsion residues, lattice has {t} invariants", r.torsion.len())));
            }
        }
        Ok(())
    }

    pub fn to_fan(&self) -> Result<StackyFan, CliError> {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let lattice = Lattice::new(self.lattice.rank, big(&self.lattice.torsion)).map_err(|e| CliError::Schema(e.to_string()))?;
        let rays = self.rays.iter().map(|r| LatticePoint::new(big(&r.free), big(&r.torsion))).collect();
        StackyFan::new(lattice, rays, self.max_cones.clone()).map_err(|e| CliError::Schema(e.to_string()))
    }

    /// Writes `fan` back in file form. Fails only on coordinates beyond `i64`.
    pub fn from_fan(name: &str, fan: &StackyFan) -> Option<FanFile> {
        let small = |v: &[BigInt]| v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>();
        let lattice = LatticeSpec { rank: fan.lattice().free_rank(), torsion: small(fan.lattice().torsion_invariants())? };
        let rays = fan
            .rays()
            .iter()
            .map(|r| Some(RaySpec { free: small(&r.free)?, torsion: small(&r.torsion)? }))
            .collect::<Option<Vec<_>>>()?;
        Some(FanFile { format: FORMAT_VERSION, name: name.to_string(), lattice, rays, max_cones: fan.max_cones().to_vec() })
    }
}
