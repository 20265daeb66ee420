//! Matrices of exact polynomials.
//!
//! JSON form: an array of rows, each row an array of polynomial strings.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch {
                details: format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, data.len()),
            });
        }
        Ok(PolyMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch {
                details: "ragged rows".into(),
            });
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses a matrix from rows of polynomial strings.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let mut out = Vec::new();
        for row in rows {
            let mut parsed = Vec::new();
            for s in *row {
                parsed.push(s.parse()?);
            }
            out.push(parsed);
        }
        PolyMatrix::from_rows(out)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Poly::zero(); n * n];
        for k in 0..n {
            data[k * n + k] = Poly::one();
        }
        PolyMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.data[r * self.cols + c]
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise substitution of one variable.
    pub fn substitute(&self, var: &str, value: &Poly) -> Self {
        self.map(|p| p.substitute(var, value))
    }

    pub fn scalar_mul(&self, s: &Poly) -> Self {
        self.map(|p| p * s)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch {
                details: format!("{}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        let mut data = vec![Poly::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * rhs.at(k, c));
                }
                data[r * rhs.cols + c] = acc;
            }
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// 2x2 block assembly: [[a, b], [c, d]] with square blocks of one size.
    pub fn from_blocks(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> Result<PolyMatrix> {
        let s = a.rows;
        for m in [a, b, c, d] {
            if m.rows != s || m.cols != s {
                return Err(Error::SizeMismatch {
                    details: "blocks must be square and equal-sized".into(),
                });
            }
        }
        let n = 2 * s;
        let mut data = vec![Poly::zero(); n * n];
        for r in 0..s {
            for col in 0..s {
                data[r * n + col] = a.at(r, col).clone();
                data[r * n + s + col] = b.at(r, col).clone();
                data[(s + r) * n + col] = c.at(r, col).clone();
                data[(s + r) * n + s + col] = d.at(r, col).clone();
            }
        }
        Ok(PolyMatrix { rows: n, cols: n, data })
    }

    /// Exact determinant by cofactor expansion; intended for the small
    /// matrices that arise here.
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::SizeMismatch {
                details: "determinant of a non-square matrix".into(),
            });
        }
        Ok(det_rec(self))
    }

    /// Removes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> PolyMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for rr in 0..self.rows {
            if rr == r {
                continue;
            }
            for cc in 0..self.cols {
                if cc == c {
                    continue;
                }
                data.push(self.at(rr, cc).clone());
            }
        }
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn variables(&self) -> std::collections::BTreeSet<String> {
        self.data.iter().flat_map(|p| p.variables()).collect()
    }
}

fn det_rec(m: &PolyMatrix) -> Poly {
    match m.rows() {
        0 => Poly::one(),
        1 => m.at(0, 0).clone(),
        n => {
            let mut acc = Poly::zero();
            for c in 0..n {
                if m.at(0, c).is_zero() {
                    continue;
                }
                let cofactor = &det_rec(&m.minor(0, c))
                    * &Poly::constant(GaussRational::from_int(if c % 2 == 0 { 1 } else { -1 }));
                acc = &acc + &(m.at(0, c) * &cofactor);
            }
            acc
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                out.push(s.parse::<Poly>().map_err(serde::de::Error::custom)?);
            }
            parsed.push(out);
        }
        PolyMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_identity() {
        let a = PolyMatrix::parse_rows(&[&["x", "y^2"], &["0", "x"]]).unwrap();
        let id = PolyMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let b = PolyMatrix::parse_rows(&[&["x", "-y^2"], &["0", "x"]]).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, id.scalar_mul(&"x^2".parse().unwrap()));
    }

    #[test]
    fn substitution_commutes_with_product() {
        let a = PolyMatrix::parse_rows(&[&["x+t*y", "y^2"], &["-t^2", "x-t*y"]]).unwrap();
        let b = PolyMatrix::parse_rows(&[&["x-t*y", "-y^2"], &["t^2", "x+t*y"]]).unwrap();
        let t1 = Poly::int(7);
        let lhs = a.mul(&b).unwrap().substitute("t", &t1);
        let rhs = a.substitute("t", &t1).mul(&b.substitute("t", &t1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_small() {
        let a = PolyMatrix::parse_rows(&[&["x+t*y", "y^2"], &["-t^2", "x-t*y"]]).unwrap();
        let det = a.determinant().unwrap();
        assert_eq!(det, "x^2-t^2*y^2+t^2*y^2".parse().unwrap());
        assert_eq!(det, "x^2".parse().unwrap());
    }

    #[test]
    fn serde_wire_format() {
        let a = PolyMatrix::parse_rows(&[&["x", "y^2"], &["0", "x"]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["x","y^2"],["0","x"]]"#);
        let back: PolyMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PolyMatrix>(r#"[["x"],["0","x"]]"#).is_err());
    }
}
