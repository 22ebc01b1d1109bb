//! JSON document schemas. Parsing is strict: unknown fields are rejected
//! and every document carries an explicit `format_version`.

use lipext::{DecompositionClaim, Direction64, Norm64, Point64, Space64, VerifyReport};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    /// Number of nodes besides the basepoint; `dist` has side `n + 1`.
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
}

impl SpaceDoc {
    pub fn from_space(space: &Space64) -> Self {
        Self {
            n: space.n(),
            dist: space.matrix().to_vec(),
        }
    }

    pub fn to_space(&self) -> Result<Space64, String> {
        if self.dist.len() != self.n + 1 {
            return Err(format!(
                "space.n = {} does not match a {}-row distance matrix",
                self.n,
                self.dist.len()
            ));
        }
        Space64::new(self.dist.clone()).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormDoc {
    pub dim: usize,
    pub p: f64,
}

impl NormDoc {
    pub fn from_norm(norm: &Norm64) -> Self {
        Self {
            dim: norm.dim(),
            p: norm.p(),
        }
    }

    pub fn to_norm(&self) -> Result<Norm64, String> {
        Norm64::new(self.dim, self.p).map_err(|e| e.to_string())
    }
}

/// A problem instance: metric space, target norm, and one point.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format_version: u32,
    pub space: SpaceDoc,
    pub norm: NormDoc,
    pub point: Vec<Vec<f64>>,
    /// Ball radius for `validate`; all other commands require 1.
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
}

impl InstanceDocument {
    pub fn to_parts(&self) -> Result<(Space64, Norm64, Point64), String> {
        let space = self.space.to_space()?;
        let norm = self.norm.to_norm()?;
        let point = Point64::new(self.point.clone()).map_err(|e| e.to_string())?;
        point
            .check_shape(&space, &norm)
            .map_err(|e| e.to_string())?;
        Ok((space, norm, point))
    }
}

/// `validate` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipDocument {
    pub format_version: u32,
    pub member: bool,
    pub lipschitz_constant: f64,
    /// Pair attaining the constant, lexicographically first.
    pub worst_pair: (usize, usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutDoc {
    pub nodes: Vec<usize>,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Extreme,
    NotExtreme,
}

/// `check-extreme` output. `parent` accompanies `extreme`, `cut`
/// accompanies `not_extreme`; `oracle` reports the exhaustive cross-check
/// when requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub format_version: u32,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleVerdict {
    Agree,
    Disagree,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub weight: f64,
    pub t: Vec<f64>,
    pub point: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntryDoc {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl ReportEntryDoc {
    pub fn from_report(report: &VerifyReport) -> Vec<Self> {
        report
            .entries
            .iter()
            .map(|e| Self {
                name: e.name.to_string(),
                ok: e.ok,
                detail: e.detail.clone(),
            })
            .collect()
    }
}

/// `decompose` output and the decomposition half of a `verify` call; the
/// instance it refers to travels separately. `verified` records whether a
/// verification ran and passed at emission time; `verify` recomputes
/// everything and ignores the stored flag and report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub format_version: u32,
    pub direction: Vec<f64>,
    pub k: usize,
    pub atoms: Vec<AtomDoc>,
    pub reconstruction_error: f64,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Vec<ReportEntryDoc>>,
}

impl DecompositionDocument {
    /// Joins the stored atoms with an instance's point into the claim the
    /// verifier checks.
    pub fn to_claim(&self, original: Point64) -> Result<DecompositionClaim<f64>, String> {
        if self.k != self.atoms.len() {
            return Err(format!(
                "k = {} does not match {} atoms",
                self.k,
                self.atoms.len()
            ));
        }
        let mut weights = Vec::with_capacity(self.atoms.len());
        let mut ts = Vec::with_capacity(self.atoms.len());
        let mut points = Vec::with_capacity(self.atoms.len());
        for atom in &self.atoms {
            weights.push(atom.weight);
            ts.push(atom.t.clone());
            points.push(Point64::new(atom.point.clone()).map_err(|e| e.to_string())?);
        }
        Ok(DecompositionClaim {
            original,
            direction: self.direction.clone(),
            weights,
            ts,
            points,
        })
    }
}

/// `verify` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDocument {
    pub format_version: u32,
    pub ok: bool,
    pub report: Vec<ReportEntryDoc>,
}

/// Structured error, emitted on stdout in JSON mode; the exit code
/// distinguishes the failure class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub format_version: u32,
    pub error: String,
}

/// Checks the version stamp of a parsed document.
pub fn check_version(found: u32) -> Result<(), String> {
    if found != FORMAT_VERSION {
        return Err(format!(
            "unsupported format_version {found}, expected {FORMAT_VERSION}"
        ));
    }
    Ok(())
}

/// Normalizes a direction argument: a bare integer picks a standard basis
/// vector, a comma-separated list is scaled to unit norm.
pub fn parse_direction(arg: Option<&str>, norm: &Norm64) -> Result<Direction64, String> {
    let arg = match arg {
        None => return Direction64::basis(0, norm.dim()).map_err(|e| e.to_string()),
        Some(s) => s.trim(),
    };
    if let Ok(index) = arg.parse::<usize>() {
        return Direction64::basis(index, norm.dim()).map_err(|e| e.to_string());
    }
    let coords = arg
        .split(',')
        .map(|part| part.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| format!("bad direction component: {e}"))?;
    Direction64::normalized(coords, norm).map_err(|e| e.to_string())
}
