//! Affine Cartan data for types A_n^(1) (n >= 1) and B_n^(1) (n >= 3), plus
//! arithmetic in the weight lattice spanned by the fundamental weights
//! Lambda_0, ..., Lambda_n and the null root delta.
//!
//! Everything downstream consumes the type through three views: the Cartan
//! matrix entries `c(i, j)`, the offset bits `o(i, j)` that fix which column a
//! neighbor variable is read from, and the simple roots written in the
//! (Lambda, delta) basis.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::CrystalError;

/// The two untwisted affine families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
}

/// An affine type: family plus rank `n`. The Dynkin index set is {0, ..., n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineType {
    family: Family,
    rank: usize,
}

impl AffineType {
    /// Family A needs n >= 1, family B needs n >= 3.
    pub fn new(family: Family, rank: usize) -> Result<Self, CrystalError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
        };
        if !ok {
            return Err(CrystalError::UnsupportedType(format!(
                "{}{} is out of range (A needs n >= 1, B needs n >= 3)",
                match family {
                    Family::A => "A",
                    Family::B => "B",
                },
                rank
            )));
        }
        Ok(AffineType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The rank `n`; indices run over 0..=n.
    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::B => "B",
        };
        write!(f, "{}{}", fam, self.rank)
    }
}

impl FromStr for AffineType {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || CrystalError::UnsupportedType(format!("unrecognized type {:?}", s));
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('B') | Some('b') => Family::B,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        AffineType::new(fam, rank)
    }
}

/// Cartan matrix and column offsets for one affine type.
///
/// Row convention: `c(i, j)` is the entry C_ij with C_ii = 2, so the pairing
/// of the coroot h_i with the simple root alpha_j is C_ij. For family B the
/// 0 and 1 nodes both attach to node 2, and the tail pair is C_{n-1,n} = -1,
/// C_{n,n-1} = -2.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    ty: AffineType,
    c: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(ty: AffineType) -> Self {
        let n = ty.rank();
        let m = n + 1;
        let mut c = vec![vec![0i64; m]; m];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        match ty.family() {
            Family::A => {
                if n == 1 {
                    c[0][1] = -2;
                    c[1][0] = -2;
                } else {
                    for i in 0..m {
                        let j = (i + 1) % m;
                        c[i][j] = -1;
                        c[j][i] = -1;
                    }
                }
            }
            Family::B => {
                c[0][2] = -1;
                c[2][0] = -1;
                c[1][2] = -1;
                c[2][1] = -1;
                for i in 2..n - 1 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[n - 1][n] = -1;
                c[n][n - 1] = -2;
            }
        }
        CartanDatum { ty, c }
    }

    pub fn affine_type(&self) -> AffineType {
        self.ty
    }

    pub fn n(&self) -> usize {
        self.ty.rank()
    }

    /// Number of Dynkin indices, n + 1.
    pub fn index_count(&self) -> usize {
        self.ty.rank() + 1
    }

    /// Cartan matrix entry C_ij.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    /// Column offset o(j, i) used when the variable A_{i,k} pulls in the
    /// neighbor row j: the factor is Y_{j, k + o(j, i)}^{C_ji}.
    ///
    /// Exactly one of o(i, j), o(j, i) is 1 for each connected pair. Smaller
    /// index gets the 1, except the type A wrap-around pair (0, n), where
    /// o(0, n) = 0 and o(n, 0) = 1 (for n = 1 that pair is the whole graph).
    pub fn o(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && self.c(i, j) != 0);
        let n = self.n();
        if self.ty.family() == Family::A {
            if (i, j) == (0, n) {
                return 0;
            }
            if (i, j) == (n, 0) {
                return 1;
            }
        }
        usize::from(i < j)
    }

    /// The simple root alpha_j in the (Lambda, delta) basis:
    /// alpha_j = sum_i C_ij Lambda_i + [j == 0] delta.
    pub fn simple_root(&self, j: usize) -> WeightVector {
        let m = self.index_count();
        let lambda = (0..m).map(|i| self.c(i, j)).collect();
        WeightVector {
            lambda,
            dcoef: i64::from(j == 0),
        }
    }

    /// Coefficients d_j with delta = sum_j d_j alpha_j.
    /// Family A: all ones. Family B: (1, 1, 2, ..., 2).
    pub fn delta_in_roots(&self) -> Vec<i64> {
        let m = self.index_count();
        match self.ty.family() {
            Family::A => vec![1; m],
            Family::B => {
                let mut d = vec![2; m];
                d[0] = 1;
                d[1] = 1;
                d
            }
        }
    }
}

/// An element of the weight lattice, written as
/// `sum_i lambda[i] Lambda_i + dcoef delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    pub lambda: Vec<i64>,
    #[serde(rename = "delta")]
    pub dcoef: i64,
}

impl WeightVector {
    pub fn zero(index_count: usize) -> Self {
        WeightVector {
            lambda: vec![0; index_count],
            dcoef: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dcoef == 0 && self.lambda.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        assert_eq!(self.lambda.len(), other.lambda.len());
        WeightVector {
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(a, b)| a + b)
                .collect(),
            dcoef: self.dcoef + other.dcoef,
        }
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeightVector {
        self.scaled(-1)
    }

    pub fn scaled(&self, c: i64) -> WeightVector {
        WeightVector {
            lambda: self.lambda.iter().map(|a| c * a).collect(),
            dcoef: c * self.dcoef,
        }
    }
}

impl fmt::Display for WeightVector {
    /// Signed sum over the nonzero coordinates, e.g. `-Λ0 - Λ1 + Λ2 - δ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        for (i, &a) in self.lambda.iter().enumerate() {
            if a != 0 {
                terms.push((a, format!("Λ{}", i)));
            }
        }
        if self.dcoef != 0 {
            terms.push((self.dcoef, "δ".to_string()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (coef, sym)) in terms.iter().enumerate() {
            if pos == 0 {
                if *coef < 0 {
                    write!(f, "-")?;
                }
            } else if *coef < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = coef.abs();
            if a != 1 {
                write!(f, "{}", a)?;
            }
            write!(f, "{}", sym)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> CartanDatum {
        CartanDatum::new(s.parse().unwrap())
    }

    #[test]
    fn type_parsing() {
        assert_eq!("A1".parse::<AffineType>().unwrap().to_string(), "A1");
        assert_eq!("b4".parse::<AffineType>().unwrap().to_string(), "B4");
        assert!("B2".parse::<AffineType>().is_err());
        assert!("A0".parse::<AffineType>().is_err());
        assert!("C3".parse::<AffineType>().is_err());
        assert!("A".parse::<AffineType>().is_err());
    }

    #[test]
    fn cartan_rows_a() {
        let d = datum("A1");
        assert_eq!(d.c(0, 1), -2);
        assert_eq!(d.c(1, 0), -2);

        let d = datum("A2");
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 2 } else { -1 };
                assert_eq!(d.c(i, j), expect);
            }
        }

        let d = datum("A4");
        assert_eq!(d.c(0, 4), -1);
        assert_eq!(d.c(0, 2), 0);
        assert_eq!(d.c(3, 2), -1);
    }

    #[test]
    fn cartan_rows_b() {
        let d = datum("B3");
        let expect = [
            [2, 0, -1, 0],
            [0, 2, -1, 0],
            [-1, -1, 2, -1],
            [0, 0, -2, 2],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.c(i, j), expect[i][j], "entry ({}, {})", i, j);
            }
        }

        let d = datum("B4");
        assert_eq!(d.c(2, 3), -1);
        assert_eq!(d.c(3, 2), -1);
        assert_eq!(d.c(3, 4), -1);
        assert_eq!(d.c(4, 3), -2);
        assert_eq!(d.c(0, 1), 0);
    }

    #[test]
    fn offsets_split_each_edge() {
        for s in ["A1", "A2", "A3", "A4", "B3", "B4", "B5"] {
            let d = datum(s);
            let m = d.index_count();
            for i in 0..m {
                for j in 0..m {
                    if i != j && d.c(i, j) != 0 {
                        assert_eq!(d.o(i, j) + d.o(j, i), 1, "{} pair ({}, {})", s, i, j);
                    }
                }
            }
        }
        let d = datum("A3");
        assert_eq!(d.o(0, 3), 0);
        assert_eq!(d.o(3, 0), 1);
        assert_eq!(d.o(0, 1), 1);
        let d = datum("A1");
        assert_eq!(d.o(0, 1), 0);
        assert_eq!(d.o(1, 0), 1);
    }

    #[test]
    fn delta_decomposes_into_simple_roots() {
        for s in ["A1", "A2", "A3", "A4", "A5", "B3", "B4", "B5"] {
            let d = datum(s);
            let coeffs = d.delta_in_roots();
            let mut acc = WeightVector::zero(d.index_count());
            for (j, &dj) in coeffs.iter().enumerate() {
                let root = d.simple_root(j);
                for _ in 0..dj {
                    acc = acc.add(&root);
                }
            }
            assert!(acc.lambda.iter().all(|&x| x == 0), "{}: {:?}", s, acc);
            assert_eq!(acc.dcoef, 1, "{}", s);
        }
    }

    #[test]
    fn weight_display() {
        let w = WeightVector {
            lambda: vec![-1, -1, 1, 0],
            dcoef: -1,
        };
        assert_eq!(w.to_string(), "-Λ0 - Λ1 + Λ2 - δ");
        let w = WeightVector {
            lambda: vec![0, 2, 0],
            dcoef: -1,
        };
        assert_eq!(w.to_string(), "2Λ1 - δ");
        assert_eq!(WeightVector::zero(3).to_string(), "0");
        let w = WeightVector {
            lambda: vec![0, 0],
            dcoef: -1,
        };
        assert_eq!(w.to_string(), "-δ");
    }
}
