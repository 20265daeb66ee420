//! Matrix factorizations of hypersurface equations.
//!
//! A pair (phi, psi) of square polynomial matrices with
//! phi psi = psi phi = f I presents a maximal Cohen-Macaulay module (the
//! cokernel of phi) over S/(f). Verification, specialization, unit-pivot
//! reduction over a localization, and the doubling construction that adds
//! y^2 + z^2 to the equation all stay at the matrix-presentation level;
//! cokernels are never materialized.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Poly};

/// A verified matrix factorization: `phi * psi = psi * phi = f * I`.
/// `units` names the variables declared invertible (deformation parameters
/// over a localized base).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MFPair {
    pub phi: PolyMatrix,
    pub psi: PolyMatrix,
    pub f: Poly,
    #[serde(default)]
    pub units: BTreeSet<String>,
}

impl MFPair {
    /// Builds a pair and checks both product identities exactly.
    pub fn new(phi: PolyMatrix, psi: PolyMatrix, f: Poly, units: BTreeSet<String>) -> Result<Self> {
        let check = verify_mf(&phi, &psi, &f)?;
        if let Some(failure) = check.failure {
            return Err(Error::NotFactorization {
                details: failure.to_string(),
            });
        }
        Ok(MFPair { phi, psi, f, units })
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }
}

/// Where a product identity first fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MfFailure {
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
    pub found: Poly,
    pub expected: Poly,
}

impl std::fmt::Display for MfFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}[{},{}] = {} but expected {}",
            self.product, self.row, self.col, self.found, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MfCheck {
    pub ok: bool,
    pub failure: Option<MfFailure>,
}

/// Checks phi psi = psi phi = f I exactly, reporting the first offending
/// entry on failure. Size mismatches are errors, not failures.
pub fn verify_mf(phi: &PolyMatrix, psi: &PolyMatrix, f: &Poly) -> Result<MfCheck> {
    if !phi.is_square() || !psi.is_square() || phi.rows() != psi.rows() {
        return Err(Error::SizeMismatch {
            details: format!(
                "expected square matrices of equal size, got {}x{} and {}x{}",
                phi.rows(),
                phi.cols(),
                psi.rows(),
                psi.cols()
            ),
        });
    }
    let n = phi.rows();
    for (name, prod) in [("phi*psi", phi.mul(psi)?), ("psi*phi", psi.mul(phi)?)] {
        for r in 0..n {
            for c in 0..n {
                let expected = if r == c { f.clone() } else { Poly::zero() };
                if *prod.at(r, c) != expected {
                    return Ok(MfCheck {
                        ok: false,
                        failure: Some(MfFailure {
                            product: name,
                            row: r,
                            col: c,
                            found: prod.at(r, c).clone(),
                            expected,
                        }),
                    });
                }
            }
        }
    }
    Ok(MfCheck { ok: true, failure: None })
}

/// True when the polynomial is a single term `c * (monomial in unit vars)`
/// with c != 0 - i.e. syntactically invertible once `units` are inverted.
fn is_unit_entry(p: &Poly, units: &BTreeSet<String>) -> bool {
    match p.as_single_term() {
        Some((mono, coeff)) => !coeff.is_zero() && mono.keys().all(|v| units.contains(v)),
        None => false,
    }
}

/// Repeatedly pivots on a unit entry and deletes its row and column. Each
/// pivot step is an elementary row transformation over the localization, so
/// the cokernel is preserved up to free summands; the fixed point is returned
/// when no unit entry remains (possibly the 0x0 matrix: free cokernel).
pub fn unit_reduce(matrix: &PolyMatrix, units: &BTreeSet<String>) -> PolyMatrix {
    let mut m = matrix.clone();
    loop {
        let pivot = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| is_unit_entry(m.at(r, c), units));
        let Some((pr, pc)) = pivot else {
            return m;
        };
        let (pivot_mono, pivot_coeff) = {
            let (mono, coeff) = m.at(pr, pc).as_single_term().expect("unit entry");
            (mono.clone(), coeff.clone())
        };
        let inv_coeff = pivot_coeff.recip();
        let inv_mono: Monomial = pivot_mono.iter().map(|(v, e)| (v.clone(), -e)).collect();
        // clear the pivot column in every other row
        let mut next = m.clone();
        for r in 0..m.rows() {
            if r == pr || m.at(r, pc).is_zero() {
                continue;
            }
            let factor = m.at(r, pc).mul_term(&inv_coeff, &inv_mono);
            for c in 0..m.cols() {
                *next.at_mut(r, c) = next.at(r, c) - &(&factor * m.at(pr, c));
            }
        }
        m = next.minor(pr, pc);
    }
}

/// Factors `p` as `coeff * unit_monomial * core` with the unit monomial the
/// common power of unit variables across all terms and `core` normalized to
/// leading coefficient one. Lets tests compare reduction outputs "up to a
/// unit".
pub fn strip_unit_factor(p: &Poly, units: &BTreeSet<String>) -> Option<(GaussRational, Monomial, Poly)> {
    if p.is_zero() {
        return None;
    }
    let mut common: Monomial = Monomial::new();
    for v in units {
        let exps: Vec<i64> = p
            .terms()
            .map(|(mono, _)| mono.get(v).copied().unwrap_or(0))
            .collect();
        let min = exps.into_iter().min().unwrap();
        if min != 0 {
            common.insert(v.clone(), min);
        }
    }
    let inv_common: Monomial = common.iter().map(|(v, e)| (v.clone(), -e)).collect();
    let shifted = p.mul_term(&GaussRational::one(), &inv_common);
    let lead = shifted.leading_term().expect("nonzero polynomial").1.clone();
    let core = shifted.mul_term(&lead.recip(), &Monomial::new());
    Some((lead, common, core))
}

/// The doubling construction: from a factorization of f over the base ring,
/// a factorization of f + y^2 + z^2 of twice the size, with blocks built
/// from u = y + i z and v = y - i z (u v = y^2 + z^2). Fresh variables are
/// required.
pub fn knorrer_double(mf: &MFPair, y: &str, z: &str) -> Result<MFPair> {
    if y == z {
        return Err(Error::VariableCollision { var: y.to_string() });
    }
    let mut used = mf.phi.variables();
    used.extend(mf.psi.variables());
    used.extend(mf.f.variables());
    for var in [y, z] {
        if used.contains(var) {
            return Err(Error::VariableCollision { var: var.to_string() });
        }
    }
    let s = mf.size();
    let i_unit = Poly::constant(GaussRational::i());
    let u = &Poly::var(y) + &(&i_unit * &Poly::var(z));
    let v = &Poly::var(y) - &(&i_unit * &Poly::var(z));
    let id = PolyMatrix::identity(s);
    let u_id = id.scalar_mul(&u);
    let v_id = id.scalar_mul(&v);
    let neg = |m: &PolyMatrix| m.scalar_mul(&Poly::int(-1));

    let phi2 = PolyMatrix::from_blocks(&mf.phi, &u_id, &neg(&v_id), &mf.psi)?;
    let psi2 = PolyMatrix::from_blocks(&mf.psi, &neg(&u_id), &v_id, &mf.phi)?;
    let f2 = &(&mf.f + &Poly::var(y).pow(2)) + &Poly::var(z).pow(2);
    MFPair::new(phi2, psi2, f2, mf.units.clone())
}

/// Fixtures: factorizations of x^2 over k[[x, y]] and the one-parameter
/// deformation family over k[t]_(t), plus monomial factorizations of x^(n+1).
pub mod fixtures {
    use super::*;

    /// phi = [[x, y^2], [0, x]], psi = [[x, -y^2], [0, x]], f = x^2.
    /// coker(phi) is the ideal (x, y^2) of k[[x, y]]/(x^2), an
    /// indecomposable non-free module.
    pub fn x2_pair() -> MFPair {
        MFPair::new(
            PolyMatrix::parse_rows(&[&["x", "y^2"], &["0", "x"]]).unwrap(),
            PolyMatrix::parse_rows(&[&["x", "-y^2"], &["0", "x"]]).unwrap(),
            "x^2".parse().unwrap(),
            BTreeSet::new(),
        )
        .expect("fixture verifies")
    }

    /// The deformation [[x+ty, y^2], [-t^2, x-ty]] of `x2_pair` over the base
    /// with parameter t: at t = 0 it restricts to the undeformed pair, and
    /// with t inverted the cokernel becomes free of rank one.
    pub fn x2_deformed_pair() -> MFPair {
        MFPair::new(
            PolyMatrix::parse_rows(&[&["x+t*y", "y^2"], &["-t^2", "x-t*y"]]).unwrap(),
            PolyMatrix::parse_rows(&[&["x-t*y", "-y^2"], &["t^2", "x+t*y"]]).unwrap(),
            "x^2".parse().unwrap(),
            ["t".to_string()].into_iter().collect(),
        )
        .expect("fixture verifies")
    }

    /// The 1x1 factorization x^j * x^(n+1-j) of x^(n+1).
    pub fn monomial_pair(n: u64, j: u64) -> MFPair {
        assert!(j <= n + 1);
        let pow = |e: u64| -> PolyMatrix {
            PolyMatrix::from_rows(vec![vec![Poly::var("x").pow(e as i64)]]).unwrap()
        };
        MFPair::new(
            pow(j),
            pow(n + 1 - j),
            Poly::var("x").pow((n + 1) as i64),
            BTreeSet::new(),
        )
        .expect("monomials factor x^(n+1)")
    }
}
