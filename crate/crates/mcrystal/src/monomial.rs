//! Modified Nakajima monomials and the crystal operators acting on them.
//!
//! A monomial is a finite product of commuting variables Y_{i,k} with integer
//! exponents, i a Dynkin index and k >= 0 a column. The crystal structure
//! comes in two variants that share phi, kf and ke but differ in eps and in
//! when f returns Null: the infinity crystal grown from 𝟏, and the
//! highest-weight crystal grown from the dominant monomial prod Y_{i,0}^{p_i}.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cartan::{CartanDatum, WeightVector};
use crate::CrystalError;

/// Which crystal structure the operators follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrystalVariant {
    ModifiedInfinity,
    HighestWeight,
}

fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("monomial exponent overflow")
}

/// A Laurent monomial in the Y_{i,k}, stored as a canonical sparse map with
/// no zero exponents. The empty map is the identity 𝟏.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: BTreeMap<(usize, usize), i64>,
}

impl Monomial {
    /// The identity monomial 𝟏.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), i64)>,
    {
        let mut exps: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for ((i, k), e) in entries {
            let slot = exps.entry((i, k)).or_insert(0);
            *slot = add_exp(*slot, e);
        }
        exps.retain(|_, e| *e != 0);
        Monomial { exps }
    }

    /// The single variable Y_{i,k}.
    pub fn y(i: usize, k: usize) -> Self {
        Monomial::from_exps([((i, k), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of Y_{i,k}, zero when absent.
    pub fn exp(&self, i: usize, k: usize) -> i64 {
        self.exps.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.exps.iter().map(|(&ik, &e)| (ik, e))
    }

    /// Largest row index appearing, or None for 𝟏.
    pub fn max_row(&self) -> Option<usize> {
        self.exps.keys().map(|&(i, _)| i).max()
    }

    /// Largest column with a nonzero exponent in row i; 0 for an empty row.
    pub fn row_support(&self, i: usize) -> usize {
        self.exps
            .keys()
            .filter(|&&(r, _)| r == i)
            .map(|&(_, k)| k)
            .max()
            .unwrap_or(0)
    }

    /// Largest column with any nonzero exponent; 0 for 𝟏.
    pub fn support_bound(&self) -> usize {
        self.exps.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.iter().chain(other.iter()))
    }

    pub fn inv(&self) -> Monomial {
        Monomial::from_exps(self.iter().map(|(ik, e)| (ik, -e)))
    }

    /// Raise every exponent to the power e (formal monomial power).
    pub fn pow(&self, e: i64) -> Monomial {
        Monomial::from_exps(self.iter().map(|(ik, x)| {
            (ik, x.checked_mul(e).expect("monomial exponent overflow"))
        }))
    }

    /// Partial sums S_k = sum_{j=0..=k} y_{i,j} for k = 0 ..= row support.
    fn prefix_sums(&self, i: usize) -> Vec<i64> {
        let top = self.row_support(i);
        let mut sums = Vec::with_capacity(top + 1);
        let mut acc = 0i64;
        for k in 0..=top {
            acc = add_exp(acc, self.exp(i, k));
            sums.push(acc);
        }
        sums
    }
}

impl fmt::Display for Monomial {
    /// Canonical text form: `Y(i,k)` factors in (i, k) order with `^e` for
    /// exponents other than 1, or `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for ((i, k), e) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "Y({},{})", i, k)?;
            if e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let bad = |tok: &str, why: &str| {
            CrystalError::Parse(format!("bad monomial term {:?}: {}", tok, why))
        };
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let rest = tok
                .strip_prefix("Y(")
                .ok_or_else(|| bad(tok, "expected Y(i,k)"))?;
            let close = rest
                .find(')')
                .ok_or_else(|| bad(tok, "missing closing parenthesis"))?;
            let (inside, tail) = rest.split_at(close);
            let tail = &tail[1..];
            let (si, sk) = inside
                .split_once(',')
                .ok_or_else(|| bad(tok, "expected two comma-separated indices"))?;
            let i: usize = si.trim().parse().map_err(|_| bad(tok, "bad row index"))?;
            let k: usize = sk.trim().parse().map_err(|_| bad(tok, "bad column index"))?;
            let e: i64 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(|| bad(tok, "expected ^exponent after )"))?
                    .parse()
                    .map_err(|_| bad(tok, "bad exponent"))?
            };
            entries.push(((i, k), e));
        }
        if entries.is_empty() {
            return Err(CrystalError::Parse("empty monomial text".to_string()));
        }
        Ok(Monomial::from_exps(entries))
    }
}

/// The variable A_{i,k} = Y_{i,k} Y_{i,k+1} prod_{j != i} Y_{j,k+o(j,i)}^{C_ji}.
pub fn a_variable(d: &CartanDatum, i: usize, k: usize) -> Monomial {
    let mut entries = vec![((i, k), 1), ((i, k + 1), 1)];
    for j in 0..d.index_count() {
        if j != i && d.c(j, i) != 0 {
            entries.push(((j, k + d.o(j, i)), d.c(j, i)));
        }
    }
    Monomial::from_exps(entries)
}

/// Classical weight wt(M) = sum y_{i,k} Lambda_i, with no delta part.
pub fn classical_weight(d: &CartanDatum, m: &Monomial) -> WeightVector {
    let mut w = WeightVector::zero(d.index_count());
    for ((i, _), e) in m.iter() {
        w.lambda[i] = add_exp(w.lambda[i], e);
    }
    w
}

/// Coroot pairing <h_i, wt(M)>. Since <h_i, Lambda_j> is 1 exactly when
/// i = j, this is the row-i exponent sum.
pub fn pairing(_d: &CartanDatum, i: usize, m: &Monomial) -> i64 {
    m.prefix_sums(i).last().copied().expect("nonempty range")
}

/// phi_i(M): the largest partial sum of row i over columns 0 ..= support.
/// Can be negative; phi_i(𝟏) = 0.
pub fn phi(m: &Monomial, i: usize) -> i64 {
    *m.prefix_sums(i).iter().max().expect("nonempty range")
}

/// Smallest column where row i's partial sums attain phi_i.
pub fn kf(m: &Monomial, i: usize) -> usize {
    let sums = m.prefix_sums(i);
    let top = *sums.iter().max().expect("nonempty range");
    sums.iter().position(|&s| s == top).expect("max is attained")
}

/// Largest column (within the support range) where the partial sums attain
/// phi_i; beyond the support the sums are constant, so this is well defined.
pub fn ke(m: &Monomial, i: usize) -> usize {
    let sums = m.prefix_sums(i);
    let top = *sums.iter().max().expect("nonempty range");
    sums.iter().rposition(|&s| s == top).expect("max is attained")
}

/// eps_i(M). ModifiedInfinity: phi_i - <h_i, wt>. HighestWeight: the largest
/// negated tail sum, with the empty tail included, hence always >= 0.
pub fn eps(d: &CartanDatum, m: &Monomial, i: usize, v: CrystalVariant) -> i64 {
    let total: i64 = m.prefix_sums(i).last().copied().expect("nonempty range");
    match v {
        CrystalVariant::ModifiedInfinity => phi(m, i) - pairing(d, i, m),
        CrystalVariant::HighestWeight => phi(m, i).max(0) - total,
    }
}

/// f_i: multiply by A_{i,kf}^{-1}. Never Null in the infinity variant; Null
/// in the highest-weight variant exactly when phi_i(M) = 0.
pub fn apply_f(d: &CartanDatum, v: CrystalVariant, m: &Monomial, i: usize) -> Option<Monomial> {
    if v == CrystalVariant::HighestWeight && phi(m, i) == 0 {
        return None;
    }
    Some(a_variable(d, i, kf(m, i)).inv().mul(m))
}

/// e_i: Null when eps_i(M) = 0, else multiply by A_{i,ke}.
pub fn apply_e(d: &CartanDatum, v: CrystalVariant, m: &Monomial, i: usize) -> Option<Monomial> {
    if eps(d, m, i, v) == 0 {
        return None;
    }
    Some(a_variable(d, i, ke(m, i)).mul(m))
}

/// Apply a word of operator indices in the order written: the first index
/// acts first. Null propagates.
pub fn apply_word(
    d: &CartanDatum,
    v: CrystalVariant,
    start: &Monomial,
    word: &[usize],
) -> Option<Monomial> {
    let mut m = start.clone();
    for &i in word {
        m = apply_f(d, v, &m, i)?;
    }
    Some(m)
}

/// The dominant monomial H_lambda = prod_i Y_{i,0}^{p_i} for
/// lambda = sum p_i Lambda_i.
pub fn h_lambda(p: &[i64]) -> Monomial {
    assert!(p.iter().all(|&x| x >= 0), "lambda must be dominant");
    Monomial::from_exps(p.iter().enumerate().map(|(i, &x)| ((i, 0), x)))
}

/// Strip the dominant part: M in the highest-weight crystal corresponds to
/// H_lambda^{-1} M in the infinity crystal.
pub fn embed_lambda(m: &Monomial, p: &[i64]) -> Monomial {
    h_lambda(p).inv().mul(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::AffineType;

    fn datum(s: &str) -> CartanDatum {
        CartanDatum::new(s.parse::<AffineType>().unwrap())
    }

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "1",
            "Y(0,0)^-3 Y(0,1)^-2 Y(0,2)^-1 Y(1,1)^5 Y(1,2)",
            "Y(0,0)^-1 Y(0,1) Y(1,1) Y(1,2)^-1",
            "Y(1,0)^2",
        ] {
            assert_eq!(mono(s).to_string(), s);
        }
        assert_eq!(mono("Y(0,0)^2 Y(0,0)^-2"), Monomial::one());
        assert!("Y(0,0".parse::<Monomial>().is_err());
        assert!("Y(0)".parse::<Monomial>().is_err());
        assert!("Y(0,0)^".parse::<Monomial>().is_err());
        assert!("Z(0,0)".parse::<Monomial>().is_err());
        assert!("".parse::<Monomial>().is_err());
    }

    #[test]
    fn multiplication_and_inverse() {
        let m = mono("Y(0,0)^-1 Y(1,1)^3");
        assert_eq!(m.mul(&Monomial::one()), m);
        assert_eq!(m.mul(&m.inv()), Monomial::one());
        assert_eq!(m.pow(2), mono("Y(0,0)^-2 Y(1,1)^6"));
        assert_eq!(m.pow(0), Monomial::one());
    }

    #[test]
    fn a_variables_match_known_expansions() {
        let d = datum("A1");
        assert_eq!(a_variable(&d, 0, 2), mono("Y(0,2) Y(0,3) Y(1,3)^-2"));
        assert_eq!(a_variable(&d, 1, 2), mono("Y(1,2) Y(1,3) Y(0,2)^-2"));

        let d = datum("A2");
        assert_eq!(a_variable(&d, 1, 0), mono("Y(1,0) Y(1,1) Y(0,1)^-1 Y(2,0)^-1"));
        assert_eq!(a_variable(&d, 0, 1), mono("Y(0,1) Y(0,2) Y(1,1)^-1 Y(2,2)^-1"));
        assert_eq!(a_variable(&d, 2, 0), mono("Y(2,0) Y(2,1) Y(1,1)^-1 Y(0,0)^-1"));

        let d = datum("B3");
        assert_eq!(a_variable(&d, 0, 1), mono("Y(0,1) Y(0,2) Y(2,1)^-1"));
        assert_eq!(a_variable(&d, 1, 0), mono("Y(1,0) Y(1,1) Y(2,0)^-1"));
        assert_eq!(
            a_variable(&d, 2, 0),
            mono("Y(2,0) Y(2,1) Y(0,1)^-1 Y(1,1)^-1 Y(3,0)^-2")
        );
        assert_eq!(a_variable(&d, 3, 1), mono("Y(3,1) Y(3,2) Y(2,2)^-1"));
    }

    #[test]
    fn example_monomial_from_a_product() {
        // A_{1,1}^{-1} A_{0,0}^{-1} in type A1.
        let d = datum("A1");
        let m = a_variable(&d, 1, 1)
            .inv()
            .mul(&a_variable(&d, 0, 0).inv());
        assert_eq!(m, mono("Y(0,0)^-1 Y(0,1) Y(1,1) Y(1,2)^-1"));
    }

    #[test]
    fn statistics_on_the_small_example() {
        let d = datum("A1");
        let m = mono("Y(0,0)^-1 Y(0,1) Y(1,1) Y(1,2)^-1");
        assert_eq!(phi(&m, 1), 1);
        assert_eq!(phi(&m, 0), 0);
        assert_eq!(kf(&m, 1), 1);
        assert_eq!(ke(&m, 1), 1);
        assert_eq!(phi(&Monomial::one(), 0), 0);
        assert_eq!(kf(&Monomial::one(), 1), 0);
        assert_eq!(ke(&Monomial::one(), 1), 0);
        assert_eq!(eps(&d, &Monomial::one(), 0, CrystalVariant::ModifiedInfinity), 0);
    }

    #[test]
    fn phi_can_go_negative_in_the_infinity_variant() {
        let d = datum("A1");
        let m = apply_f(&d, CrystalVariant::ModifiedInfinity, &Monomial::one(), 0).unwrap();
        assert_eq!(m, mono("Y(0,0)^-1 Y(0,1)^-1 Y(1,1)^2"));
        assert_eq!(phi(&m, 0), -1);
        assert_eq!(kf(&m, 0), 0);
    }

    #[test]
    fn infinity_words_match_known_monomials() {
        let d = datum("A1");
        let v = CrystalVariant::ModifiedInfinity;
        let m = apply_word(&d, v, &Monomial::one(), &[0, 1, 0, 0, 0]).unwrap();
        assert_eq!(m, mono("Y(0,0)^-3 Y(0,1)^-2 Y(0,2)^-1 Y(1,1)^5 Y(1,2)"));

        let m = apply_word(&d, v, &Monomial::one(), &[0, 1, 1, 0]).unwrap();
        assert_eq!(m, mono("Y(0,0)^-1 Y(0,1)^2 Y(0,2)^-1"));

        let m = apply_word(&d, v, &Monomial::one(), &[]).unwrap();
        assert!(m.is_one());

        // Example 2.6: f1 f0 1, written in application order.
        let m = apply_word(&d, v, &Monomial::one(), &[0, 1]).unwrap();
        assert_eq!(m, mono("Y(0,0)^-1 Y(0,1) Y(1,1) Y(1,2)^-1"));

        let d = datum("B3");
        let m = apply_word(&d, v, &Monomial::one(), &[3, 2, 1, 0]).unwrap();
        assert_eq!(m, mono("Y(0,3)^-1 Y(1,3)^-1 Y(2,2) Y(3,0)^-1 Y(3,1)"));
    }

    #[test]
    fn highest_weight_variant() {
        let d = datum("A2");
        let v = CrystalVariant::HighestWeight;
        let h = h_lambda(&[0, 2, 0]);
        assert_eq!(h, mono("Y(1,0)^2"));
        for i in 0..3 {
            assert_eq!(eps(&d, &h, i, v), 0, "eps_{} at the top", i);
            assert!(apply_e(&d, v, &h, i).is_none());
        }
        // f2 and f0 die at the top, f1 does not.
        assert!(apply_f(&d, v, &h, 2).is_none());
        assert!(apply_f(&d, v, &h, 0).is_none());
        assert!(apply_f(&d, v, &h, 1).is_some());

        let m = apply_word(&d, v, &h, &[1, 0, 2]).unwrap();
        assert_eq!(m, mono("Y(1,0) Y(1,3) Y(2,0) Y(2,3)^-1"));
        assert_eq!(embed_lambda(&m, &[0, 2, 0]), mono("Y(1,0)^-1 Y(1,3) Y(2,0) Y(2,3)^-1"));
    }

    #[test]
    fn e_undoes_f() {
        for s in ["A1", "A2", "B3"] {
            let d = datum(s);
            let v = CrystalVariant::ModifiedInfinity;
            let mut m = Monomial::one();
            for &i in &[0, 1, 0, 1, 0] {
                let next = apply_f(&d, v, &m, i).unwrap();
                assert_eq!(apply_e(&d, v, &next, i).as_ref(), Some(&m), "{}", s);
                m = next;
            }
        }
    }
}
