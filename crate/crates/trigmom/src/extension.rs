//! Contraction parameters, extension operators, and generalized resolvents.
//!
//! An extension parameter is an analytic contraction-valued function from
//! the domain defect to the range defect; together with the shift isometry
//! it determines a generalized resolvent, and through it one solution of
//! the moment problem. Constant unitary parameters give the canonical
//! atomic solutions; everything else is reached through the resolvent.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::error::Error;
use crate::isometry::ShiftIsometry;
use crate::linalg::{identity, max_abs, spectral_norm, CMatrix, C64};

/// Number of probe points used to test contractivity on a circle.
const PROBE_POINTS: usize = 512;
/// Probe circle radius, just inside the unit disk.
const PROBE_RADIUS: f64 = 1.0 - 1e-6;
/// Slack allowed on the largest singular value.
const CONTRACTION_SLACK: f64 = 1e-10;

/// Evaluation rule of a parameter.
pub enum ParamValues {
    /// A single constant matrix.
    Constant(CMatrix),
    /// Matrix polynomial `C_0 + zeta C_1 + ... + zeta^M C_M`.
    Polynomial(Vec<CMatrix>),
    /// Opaque analytic sampler; must be pure per the evaluation contract.
    Sampler(Arc<dyn Fn(C64) -> CMatrix + Send + Sync>),
}

impl std::fmt::Debug for ParamValues {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValues::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            ParamValues::Polynomial(cs) => f.debug_tuple("Polynomial").field(cs).finish(),
            ParamValues::Sampler(_) => f.write_str("Sampler(..)"),
        }
    }
}

/// A validated contraction parameter in the fixed defect bases.
///
/// Matrices are square of size `delta` (the common defect dimension) and
/// expressed in the deterministic defect bases carried by the isometry.
/// Contractivity of non-constant parameters is checked by sampling singular
/// values on a circle just inside the disk; by the maximum principle this
/// is a sound rejection test but can accept near-violators between probes.
#[derive(Debug)]
pub struct ExtensionParam {
    values: ParamValues,
    delta: usize,
    unitary: bool,
}

impl ExtensionParam {
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// True for constant parameters whose matrix is unitary; those generate
    /// the canonical atomic solutions.
    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn kind_name(&self) -> &'static str {
        match self.values {
            ParamValues::Constant(_) => "constant",
            ParamValues::Polynomial(_) => "polynomial",
            ParamValues::Sampler(_) => "sampler",
        }
    }

    pub fn values(&self) -> &ParamValues {
        &self.values
    }

    /// Value of the parameter at `zeta` (Horner evaluation for polynomials).
    pub fn eval(&self, zeta: C64) -> CMatrix {
        match &self.values {
            ParamValues::Constant(c) => c.clone(),
            ParamValues::Polynomial(coeffs) => {
                let mut acc = CMatrix::zeros(self.delta, self.delta);
                for c in coeffs.iter().rev() {
                    acc = acc * zeta + c;
                }
                acc
            }
            ParamValues::Sampler(f) => f(zeta),
        }
    }
}

fn check_shape(iso: &ShiftIsometry, c: &CMatrix) -> Result<usize, Error> {
    let delta = iso.defect_dim();
    if c.nrows() != delta || c.ncols() != delta {
        return Err(Error::DefectMismatch {
            expected: delta,
            got: c.nrows().max(c.ncols()),
        });
    }
    Ok(delta)
}

/// Wraps a constant matrix as a parameter, verifying it is a contraction.
pub fn make_constant_param(iso: &ShiftIsometry, c: CMatrix) -> Result<ExtensionParam, Error> {
    let delta = check_shape(iso, &c)?;
    let sigma = spectral_norm(&c);
    if sigma > 1.0 + CONTRACTION_SLACK {
        return Err(Error::NotContraction { sigma, zeta: None });
    }
    let unitary = max_abs(&(c.adjoint() * &c - identity(delta))) <= 1e-10;
    Ok(ExtensionParam {
        values: ParamValues::Constant(c),
        delta,
        unitary,
    })
}

/// Wraps polynomial coefficients as a parameter; contractivity is verified
/// on the probe circle and the first offending point is reported.
pub fn make_polynomial_param(
    iso: &ShiftIsometry,
    coeffs: Vec<CMatrix>,
) -> Result<ExtensionParam, Error> {
    if coeffs.is_empty() {
        return Err(Error::Knob {
            name: "coeffs",
            message: "polynomial parameter needs at least one coefficient".to_string(),
        });
    }
    let mut delta = 0;
    for c in &coeffs {
        delta = check_shape(iso, c)?;
    }
    let param = ExtensionParam {
        values: ParamValues::Polynomial(coeffs),
        delta,
        unitary: false,
    };
    probe_contractivity(&param)?;
    Ok(param)
}

/// Wraps an opaque evaluation hook; the same probing contract applies.
pub fn make_sampler_param(
    iso: &ShiftIsometry,
    hook: Arc<dyn Fn(C64) -> CMatrix + Send + Sync>,
) -> Result<ExtensionParam, Error> {
    let delta = iso.defect_dim();
    let sample = hook(C64::new(0.0, 0.0));
    check_shape(iso, &sample)?;
    let param = ExtensionParam {
        values: ParamValues::Sampler(hook),
        delta,
        unitary: false,
    };
    probe_contractivity(&param)?;
    Ok(param)
}

fn probe_contractivity(param: &ExtensionParam) -> Result<(), Error> {
    if param.delta == 0 {
        return Ok(());
    }
    for g in 0..PROBE_POINTS {
        let zeta = C64::from_polar(PROBE_RADIUS, TAU * g as f64 / PROBE_POINTS as f64);
        let sigma = spectral_norm(&param.eval(zeta));
        if sigma > 1.0 + CONTRACTION_SLACK {
            return Err(Error::NotContraction {
                sigma,
                zeta: Some(zeta),
            });
        }
    }
    Ok(())
}

/// The extension operator `A P_domain + J_range Phi(zeta) J_domain^H`.
///
/// It contracts the whole space and is unitary exactly when the parameter
/// value is unitary at `zeta`.
pub fn extension_operator(iso: &ShiftIsometry, param: &ExtensionParam, zeta: C64) -> CMatrix {
    let r = iso.space.dim;
    if r == 0 {
        return CMatrix::zeros(0, 0);
    }
    let shift_part = &iso.mat * iso.domain.projector();
    let phi = param.eval(zeta);
    shift_part + &iso.defect_range.basis * phi * iso.defect_domain.basis.adjoint()
}

/// Value of a generalized resolvent: the matrix of inner products
/// `F[k, j] = inner(R_zeta x_k, x_j)` over the first `N` generators.
#[derive(Debug, Clone)]
pub struct ResolventValue {
    pub zeta: C64,
    pub mat: CMatrix,
}

/// First-window corner of the Gram data, `corner[k, j] = inner(x_k, x_j)`;
/// equals `S_0` up to the factorization tolerance.
pub fn gram_corner(iso: &ShiftIsometry) -> CMatrix {
    let n = iso.space.mat_dim;
    let window = iso.space.coords.columns(0, n);
    (window.adjoint() * window).transpose()
}

/// Generalized resolvent inside the disk: solves
/// `(I - zeta T(zeta)) w_k = x_k` and assembles the inner products.
pub fn generalized_resolvent(
    iso: &ShiftIsometry,
    param: &ExtensionParam,
    zeta: C64,
) -> Result<ResolventValue, Error> {
    if zeta.norm() >= 1.0 {
        return Err(Error::ZetaOutOfRange {
            zeta,
            constraint: "inside-disk resolvent needs |zeta| < 1",
        });
    }
    let n = iso.space.mat_dim;
    let r = iso.space.dim;
    if r == 0 {
        return Ok(ResolventValue {
            zeta,
            mat: CMatrix::zeros(n, n),
        });
    }
    let t = extension_operator(iso, param, zeta);
    let lhs = identity(r) - t * zeta;
    let window = iso.space.coords.columns(0, n).into_owned();
    let solved = lhs
        .lu()
        .solve(&window)
        .ok_or_else(|| Error::Internal("resolvent system was singular".to_string()))?;
    // F[k, j] = x_j^H w_k
    let mat = (window.adjoint() * solved).transpose();
    Ok(ResolventValue { zeta, mat })
}

/// Generalized resolvent outside the disk, through the symmetry that sends
/// the value at `1/conj(zeta)` to `corner - F^H`.
pub fn resolvent_outside_disk(
    iso: &ShiftIsometry,
    param: &ExtensionParam,
    zeta: C64,
) -> Result<ResolventValue, Error> {
    if zeta.norm() <= 1.0 {
        return Err(Error::ZetaOutOfRange {
            zeta,
            constraint: "outside-disk resolvent needs |zeta| > 1",
        });
    }
    let mirror = C64::new(1.0, 0.0) / zeta.conj();
    let inner_value = generalized_resolvent(iso, param, mirror)?;
    let mat = gram_corner(iso) - inner_value.mat.adjoint();
    Ok(ResolventValue { zeta, mat })
}

/// Resolvent at any admissible `zeta` (anywhere off the unit circle).
pub fn resolvent(
    iso: &ShiftIsometry,
    param: &ExtensionParam,
    zeta: C64,
) -> Result<ResolventValue, Error> {
    if zeta.norm() < 1.0 {
        generalized_resolvent(iso, param, zeta)
    } else if zeta.norm() > 1.0 {
        resolvent_outside_disk(iso, param, zeta)
    } else {
        Err(Error::ZetaOutOfRange {
            zeta,
            constraint: "the resolvent is undefined on |zeta| = 1",
        })
    }
}

/// Taylor moments of the selected solution, by discrete contour integration
/// of the resolvent on the circle of radius `rho`.
///
/// The first `d + 1` outputs reproduce the input moments for every
/// admissible parameter; later ones are the extended moments of the chosen
/// solution. The integrand is analytic on the closed disk of radius `rho`,
/// so the trapezoid rule converges geometrically in the grid size, while
/// the `rho^{-n}` factor caps how far the expansion stays well conditioned.
pub fn taylor_moments(
    iso: &ShiftIsometry,
    param: &ExtensionParam,
    n_max: usize,
    rho: f64,
    grid: usize,
) -> Result<Vec<CMatrix>, Error> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Knob {
            name: "rho",
            message: format!("need 0 < rho < 1, got {rho}"),
        });
    }
    if !grid.is_power_of_two() || grid < 4 * (n_max + 1) {
        return Err(Error::Knob {
            name: "grid",
            message: format!("need a power of two >= {}, got {grid}", 4 * (n_max + 1)),
        });
    }
    let n = iso.space.mat_dim;
    let samples: Vec<CMatrix> = (0..grid)
        .map(|g| {
            let zeta = C64::from_polar(rho, TAU * g as f64 / grid as f64);
            generalized_resolvent(iso, param, zeta).map(|rv| rv.mat)
        })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(n_max + 1);
    for order in 0..=n_max {
        let mut acc = CMatrix::zeros(n, n);
        for (g, sample) in samples.iter().enumerate() {
            let phase = C64::from_polar(1.0, -TAU * (g * order) as f64 / grid as f64);
            acc += sample * phase;
        }
        let scale = rho.powi(-(order as i32)) / grid as f64;
        out.push(acc * C64::new(scale, 0.0));
    }
    Ok(out)
}
