//! File formats: JSON schemas for moments, parameters, reports, and
//! solutions, plus CSV export of grid distributions.
//!
//! Complex numbers are `[re, im]` pairs and a matrix is an array of rows.
//! Parsing goes through serde; emission is hand-rolled so that identical
//! inputs produce byte-identical output: fixed field order and every float
//! printed with 17 significant digits (`{:.16e}`), which round-trips f64
//! exactly.

use serde::Deserialize;

use crate::error::Error;
use crate::extension::{make_constant_param, make_polynomial_param, ExtensionParam};
use crate::isometry::ShiftIsometry;
use crate::linalg::{CMatrix, C64};
use crate::moments::{validate_moments, MomentSequence, SolvabilityReport};
use crate::solutions::{
    Atom, DiscreteSolution, GridDistribution, SolutionData, VerificationReport,
};

// ---------------------------------------------------------------------------
// parsing

type RawMatrix = Vec<Vec<[f64; 2]>>;

fn raw_to_matrix(raw: &RawMatrix) -> CMatrix {
    let rows = raw.len();
    let cols = raw.iter().map(|r| r.len()).max().unwrap_or(0);
    CMatrix::from_fn(rows, cols, |i, j| {
        raw[i]
            .get(j)
            .map(|&[re, im]| C64::new(re, im))
            .unwrap_or_else(|| C64::new(f64::NAN, f64::NAN))
    })
}

#[derive(Deserialize)]
struct MomentsFile {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    #[serde(rename = "S")]
    s: Vec<RawMatrix>,
}

/// Parses and validates a moment file.
pub fn parse_moments(text: &str) -> Result<MomentSequence, Error> {
    let file: MomentsFile = serde_json::from_str(text)?;
    let raw = file.s.iter().map(raw_to_matrix).collect();
    validate_moments(file.n, file.d, raw)
}

#[derive(Deserialize)]
struct ParamFile {
    kind: String,
    coeffs: Vec<RawMatrix>,
}

/// Parses a parameter file and validates it against the isometry's defect
/// spaces. Matrices are read in the deterministic defect bases carried by
/// the isometry.
pub fn parse_param(text: &str, iso: &ShiftIsometry) -> Result<ExtensionParam, Error> {
    let file: ParamFile = serde_json::from_str(text)?;
    let coeffs: Vec<CMatrix> = file.coeffs.iter().map(raw_to_matrix).collect();
    match file.kind.as_str() {
        "constant" => {
            let c = coeffs
                .into_iter()
                .next()
                .unwrap_or_else(|| CMatrix::zeros(iso.defect_dim(), iso.defect_dim()));
            make_constant_param(iso, c)
        }
        "polynomial" => make_polynomial_param(iso, coeffs),
        other => Err(Error::UnknownParamKind(other.to_string())),
    }
}

#[derive(Deserialize)]
struct SolutionFile {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    atoms: Vec<AtomEntry>,
    #[serde(default)]
    r: f64,
    #[serde(default)]
    thetas: Vec<f64>,
    #[serde(default)]
    cumulative: Vec<RawMatrix>,
}

#[derive(Deserialize)]
struct AtomEntry {
    theta: f64,
    weight: RawMatrix,
}

/// Parses a solution file of either kind.
pub fn parse_solution(text: &str) -> Result<SolutionData, Error> {
    let file: SolutionFile = serde_json::from_str(text)?;
    match file.kind.as_str() {
        "atomic" => {
            let atoms: Vec<Atom> = file
                .atoms
                .iter()
                .map(|a| Atom {
                    theta: a.theta,
                    weight: raw_to_matrix(&a.weight),
                })
                .collect();
            let mat_dim = atoms.first().map(|a| a.weight.nrows()).unwrap_or(0);
            Ok(SolutionData::Atomic(DiscreteSolution { mat_dim, atoms }))
        }
        "grid" => {
            let cumulative: Vec<CMatrix> = file.cumulative.iter().map(raw_to_matrix).collect();
            let mat_dim = cumulative.first().map(|m| m.nrows()).unwrap_or(0);
            Ok(SolutionData::Grid(GridDistribution {
                mat_dim,
                radius: file.r,
                thetas: file.thetas,
                cumulative,
            }))
        }
        other => Err(Error::UnknownSolutionType(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// deterministic emission

/// 17 significant digits; round-trips every finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(z: C64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn fmt_matrix(m: &CMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let cells: Vec<String> = (0..m.ncols()).map(|j| fmt_complex(m[(i, j)])).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn fmt_matrices(ms: &[CMatrix]) -> String {
    let items: Vec<String> = ms.iter().map(fmt_matrix).collect();
    format!("[{}]", items.join(","))
}

/// Moment file content for the given sequence.
pub fn moments_json(m: &MomentSequence) -> String {
    format!(
        "{{\"N\":{},\"d\":{},\"S\":{}}}",
        m.mat_dim,
        m.order,
        fmt_matrices(&m.moments)
    )
}

/// Parameter file content.
pub fn param_json(kind: &str, coeffs: &[CMatrix]) -> String {
    format!("{{\"kind\":\"{kind}\",\"coeffs\":{}}}", fmt_matrices(coeffs))
}

pub fn report_json(r: &SolvabilityReport) -> String {
    format!(
        "{{\"solvable\":{},\"min_eigenvalue\":{},\"rank\":{},\"tolerance\":{}}}",
        r.solvable,
        fmt_f64(r.min_eigenvalue),
        r.rank,
        fmt_f64(r.tolerance_used)
    )
}

pub fn verification_json(v: &VerificationReport) -> String {
    let residuals: Vec<String> = v.residuals.iter().map(|&x| fmt_f64(x)).collect();
    format!(
        "{{\"residuals\":[{}],\"max_residual\":{},\"tolerance\":{},\"pass\":{}}}",
        residuals.join(","),
        fmt_f64(v.max_residual),
        fmt_f64(v.tolerance),
        v.pass
    )
}

/// Atomic solution, optionally with an embedded verification report.
pub fn atomic_solution_json(s: &DiscreteSolution, v: Option<&VerificationReport>) -> String {
    let atoms: Vec<String> = s
        .atoms
        .iter()
        .map(|a| {
            format!(
                "{{\"theta\":{},\"weight\":{}}}",
                fmt_f64(a.theta),
                fmt_matrix(&a.weight)
            )
        })
        .collect();
    match v {
        Some(v) => format!(
            "{{\"type\":\"atomic\",\"atoms\":[{}],\"verification\":{}}}",
            atoms.join(","),
            verification_json(v)
        ),
        None => format!("{{\"type\":\"atomic\",\"atoms\":[{}]}}", atoms.join(",")),
    }
}

pub fn grid_solution_json(g: &GridDistribution) -> String {
    let thetas: Vec<String> = g.thetas.iter().map(|&x| fmt_f64(x)).collect();
    format!(
        "{{\"type\":\"grid\",\"r\":{},\"thetas\":[{}],\"cumulative\":{}}}",
        fmt_f64(g.radius),
        thetas.join(","),
        fmt_matrices(&g.cumulative)
    )
}

/// Extended moments with the consistency flag for the truncated range.
pub fn extended_moments_json(
    mat_dim: usize,
    order: usize,
    moments: &[CMatrix],
    consistent: bool,
) -> String {
    format!(
        "{{\"N\":{},\"d\":{},\"nmax\":{},\"C\":{},\"consistent\":{}}}",
        mat_dim,
        order,
        moments.len().saturating_sub(1),
        fmt_matrices(moments),
        consistent
    )
}

/// Debug dump of the coordinate matrix, handy for golden tests.
pub fn coords_json(space: &crate::gram::CoordinateSpace) -> String {
    format!(
        "{{\"dim\":{},\"X\":{}}}",
        space.dim,
        fmt_matrix(&space.coords)
    )
}

pub fn resolvent_json(zeta: C64, f: &CMatrix) -> String {
    format!(
        "{{\"zeta\":{},\"F\":{}}}",
        fmt_complex(zeta),
        fmt_matrix(f)
    )
}

/// CSV export: `theta`, real trace of the cumulative, then each entry as a
/// `re`/`im` column pair in row-major order.
pub fn grid_csv(g: &GridDistribution) -> String {
    let n = g.mat_dim;
    let mut header = String::from("theta,trace");
    for i in 0..n {
        for j in 0..n {
            header.push_str(&format!(",m{i}{j}_re,m{i}{j}_im"));
        }
    }
    let mut out = header;
    out.push('\n');
    for (theta, m) in g.thetas.iter().zip(g.cumulative.iter()) {
        let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
        out.push_str(&fmt_f64(*theta));
        out.push(',');
        out.push_str(&fmt_f64(trace));
        for i in 0..n {
            for j in 0..n {
                out.push(',');
                out.push_str(&fmt_f64(m[(i, j)].re));
                out.push(',');
                out.push_str(&fmt_f64(m[(i, j)].im));
            }
        }
        out.push('\n');
    }
    out
}
