use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::linalg::{cholesky_succeeds, project_psd, symmetric_eigen, Matrix};
use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial};
use crate::rational::to_f64;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 20_000;
/// Largest unreduced basis `C(n+d, d)` the oracle accepts.
pub const MAX_BASIS: usize = 200;
/// Consecutive stagnant iterations before declaring likely infeasibility.
pub const STALL_WINDOW: usize = 200;
/// Relative change in the inter-set distance that counts as stagnant.
const STALL_REL: f64 = 1e-6;

/// Positions `(row, col)` of the Gram matrix whose monomials multiply to `γ`,
/// with the coefficient `f_γ` they must sum to.
#[derive(Debug, Clone)]
pub struct Group {
    pub gamma: Exponent,
    pub target: f64,
    pub cells: Vec<(usize, usize)>,
}

/// Affine-PSD feasibility instance: find `Q ⪰ 0` with
/// `Σ_{α+β=γ} Q_{αβ} = f_γ` for every `γ`.
#[derive(Debug, Clone)]
pub struct GramProblem {
    pub basis: Vec<Exponent>,
    pub groups: Vec<Group>,
    /// Coefficients of `f` no basis pair can produce.
    pub unreachable: Vec<(Exponent, f64)>,
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl GramProblem {
    pub fn new(f: &Polynomial) -> Result<Self> {
        let n = f.nvars();
        let d = f.half_degree();
        let full = binomial(n + d as usize, d as usize);
        if full > MAX_BASIS {
            return Err(Error::BasisTooLarge {
                size: full,
                limit: MAX_BASIS,
            });
        }
        let basis = reduced_basis(f);

        let mut cells: BTreeMap<Exponent, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                cells.entry(a.add(b)).or_default().push((i, j));
            }
        }
        let unreachable = f
            .terms()
            .filter(|(g, _)| !cells.contains_key(g))
            .map(|(g, c)| (g.clone(), to_f64(c)))
            .collect();
        let groups = cells
            .into_iter()
            .map(|(gamma, cells)| Group {
                target: to_f64(&f.coeff(&gamma)),
                gamma,
                cells,
            })
            .collect();
        Ok(GramProblem {
            basis,
            groups,
            unreachable,
        })
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// Minimum-norm correction onto the affine set: each group's residual is
    /// spread evenly over its cells.
    pub fn project_affine(&self, q: &mut Matrix) {
        for g in &self.groups {
            let sum: f64 = g.cells.iter().map(|&c| q[c]).sum();
            let delta = (g.target - sum) / g.cells.len() as f64;
            for &c in &g.cells {
                q[c] += delta;
            }
        }
    }

    /// `max_γ |f_γ - Σ_{α+β=γ} Q_{αβ}|`, unreachable terms included.
    pub fn residual(&self, q: &Matrix) -> f64 {
        let groups = self.groups.iter().map(|g| {
            let sum: f64 = g.cells.iter().map(|&c| q[c]).sum();
            (g.target - sum).abs()
        });
        groups
            .chain(self.unreachable.iter().map(|(_, c)| c.abs()))
            .fold(0.0, f64::max)
    }
}

/// Basis exponents `α` with `2α` inside the coordinate bounding box and the
/// total-degree slab of `f`'s support (both contain the Newton polytope).
fn reduced_basis(f: &Polynomial) -> Vec<Exponent> {
    let n = f.nvars();
    if f.is_zero() {
        return Vec::new();
    }
    let mut lo = vec![u32::MAX; n];
    let mut hi = vec![0u32; n];
    let (mut dlo, mut dhi) = (u32::MAX, 0u32);
    for (a, _) in f.terms() {
        for (i, &e) in a.entries().iter().enumerate() {
            lo[i] = lo[i].min(e);
            hi[i] = hi[i].max(e);
        }
        dlo = dlo.min(a.degree());
        dhi = dhi.max(a.degree());
    }
    Exponent::all_up_to(n, f.half_degree())
        .into_iter()
        .filter(|a| {
            let deg = 2 * a.degree();
            deg >= dlo
                && deg <= dhi
                && a.entries()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| 2 * e >= lo[i] && 2 * e <= hi[i])
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    CertifiedSos,
    LikelyNotSos,
    Inconclusive,
}

impl OracleStatus {
    /// Process exit code used by the `certify` command.
    pub fn exit_code(self) -> i32 {
        match self {
            OracleStatus::CertifiedSos => 0,
            OracleStatus::LikelyNotSos => 2,
            OracleStatus::Inconclusive => 3,
        }
    }
}

/// A PSD Gram matrix on a monomial basis.
#[derive(Debug, Clone, Serialize)]
pub struct GramCertificate {
    pub basis: Vec<Exponent>,
    #[serde(serialize_with = "matrix_rows")]
    pub matrix: Matrix,
}

fn matrix_rows<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleVerdict {
    pub status: OracleStatus,
    /// Affine residual of the returned (or last PSD) iterate.
    pub residual: f64,
    /// Smallest eigenvalue of the returned Gram matrix; for uncertified
    /// verdicts, of the last point handed to the PSD projection.
    pub min_eig: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramCertificate>,
}

impl OracleVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == OracleStatus::CertifiedSos
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Something that can certify SOS membership.
pub trait SosOracle {
    fn certify(&self, f: &Polynomial) -> Result<OracleVerdict>;
}

/// Dykstra alternating projections between the Gram affine set and the PSD
/// cone.
#[derive(Debug, Clone, Copy)]
pub struct GramOracle {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GramOracle {
    fn default() -> Self {
        GramOracle {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl SosOracle for GramOracle {
    fn certify(&self, f: &Polynomial) -> Result<OracleVerdict> {
        certify(f, self.max_iter, self.tol)
    }
}

/// Searches for `Q ⪰ 0` reproducing `f`.
///
/// Returns `certified-sos` once an iterate is PSD with affine residual below
/// `tol`, `likely-not-sos` when the distance between the two sets stays above
/// `10·tol` without moving for [`STALL_WINDOW`] iterations, and
/// `inconclusive` when `max_iter` runs out first.
pub fn certify(f: &Polynomial, max_iter: usize, tol: f64) -> Result<OracleVerdict> {
    let problem = GramProblem::new(f)?;
    if !problem.unreachable.is_empty() {
        let residual = problem
            .unreachable
            .iter()
            .fold(0.0, |m: f64, (_, c)| m.max(c.abs()));
        return Ok(OracleVerdict {
            status: OracleStatus::LikelyNotSos,
            residual,
            min_eig: 0.0,
            iterations: 0,
            gram: None,
        });
    }
    let n = problem.size();
    if n == 0 {
        return certified(&problem, Matrix::zeros(0), 0);
    }

    let mut x = Matrix::zeros(n);
    problem.project_affine(&mut x);
    let mut p = Matrix::zeros(n);
    let mut q = Matrix::zeros(n);
    let mut prev_dist = f64::INFINITY;
    let mut stalled = 0usize;
    let mut last_residual = f64::INFINITY;
    let mut last_min_eig = f64::NEG_INFINITY;

    for iter in 1..=max_iter {
        let mut y = x.add(&p);
        problem.project_affine(&mut y);
        p = x.add(&p).sub(&y);

        if cholesky_succeeds(&y) && problem.residual(&y) < tol {
            return certified(&problem, y, iter);
        }

        let z = y.add(&q);
        let (x_next, eig) = project_psd(&z)?;
        q = z.sub(&x_next);

        let residual = problem.residual(&x_next);
        last_residual = residual;
        last_min_eig = eig.min_value();
        if residual < tol {
            return certified(&problem, x_next, iter);
        }

        let dist = y.sub(&x_next).frobenius();
        if dist > 10.0 * tol && (dist - prev_dist).abs() <= STALL_REL * dist {
            stalled += 1;
            if stalled >= STALL_WINDOW {
                return Ok(OracleVerdict {
                    status: OracleStatus::LikelyNotSos,
                    residual,
                    min_eig: last_min_eig,
                    iterations: iter,
                    gram: None,
                });
            }
        } else {
            stalled = 0;
        }
        prev_dist = dist;
        x = x_next;
    }
    Ok(OracleVerdict {
        status: OracleStatus::Inconclusive,
        residual: last_residual,
        min_eig: last_min_eig,
        iterations: max_iter,
        gram: None,
    })
}

fn certified(problem: &GramProblem, gram: Matrix, iterations: usize) -> Result<OracleVerdict> {
    let min_eig = symmetric_eigen(&gram)?.min_value();
    Ok(OracleVerdict {
        status: OracleStatus::CertifiedSos,
        residual: problem.residual(&gram),
        min_eig,
        iterations,
        gram: Some(GramCertificate {
            basis: problem.basis.clone(),
            matrix: gram,
        }),
    })
}
