//! Structured report emission. Field order is fixed by declaration and
//! there are no timestamps, so a campaign re-run with the same seed
//! produces byte-identical files.

use serde::Serialize;

use kummerlab::kummer::VerificationReport;
use kummerlab::ratfield::GaloisContext;

use crate::instance::InstanceFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InstanceEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub p: u64,
    pub l: u32,
    pub field: String,
    pub zeta: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub instance: InstanceEcho,
    pub basis: Vec<String>,
    pub jordan_type_module: Vec<u64>,
    /// absent only if the Galois-side action failed its nilpotency check
    pub jordan_type_galois: Option<Vec<u64>>,
    pub checks: Vec<CheckJson>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub fn echo(inst: &InstanceFile, ctx: &GaloisContext) -> InstanceEcho {
    InstanceEcho {
        label: inst.label.clone(),
        p: inst.p,
        l: inst.l,
        field: inst.field.render(),
        zeta: ctx.field().render(ctx.zeta()),
        generators: inst.generators.clone(),
    }
}

pub fn from_verification(
    inst: &InstanceFile,
    ctx: &GaloisContext,
    v: &VerificationReport,
) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        instance: echo(inst, ctx),
        basis: v.basis.clone(),
        jordan_type_module: v.jordan_type_module.parts().to_vec(),
        jordan_type_galois: v.jordan_type_galois.as_ref().map(|t| t.parts().to_vec()),
        checks: v
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                pass: c.pass,
                witness: c.witness.clone(),
            })
            .collect(),
        verdict: v.verdict,
        seed: inst.seed,
    }
}

/// One line per instance inside a campaign file.
#[derive(Debug, Serialize)]
pub struct CampaignEntry {
    pub index: usize,
    pub seed: u64,
    pub generators: Vec<String>,
    pub jordan_type_module: Vec<u64>,
    pub jordan_type_galois: Option<Vec<u64>>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CampaignConfig {
    pub count: usize,
    pub p: u64,
    pub l: u32,
    pub field: String,
    pub max_gens: usize,
    pub max_deg: usize,
    pub seed: u64,
    /// how instances are drawn, recorded for reproducibility
    pub distribution: String,
}

#[derive(Debug, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub results: Vec<CampaignEntry>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
