//! Extraction of the delta coefficient D(M): write M as a product
//! prod A_{i,k}^{a_{i,k}} 𝟏 and sum the 0-row of the exponent table.
//!
//! Three routes produce the table, one per type family: a two-row recursion
//! for A1, a column-by-column cyclic-difference solve for An with n >= 2, and
//! a forward recursion for Bn. A1 and B3 additionally have closed-form
//! entry formulas used to cross-check the recursions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{AffineType, CartanDatum, Family, WeightVector};
use crate::monomial::{a_variable, classical_weight, embed_lambda, Monomial};
use crate::CrystalError;

/// Sparse exponent table {(i, k) -> a_{i,k}} with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ATable {
    entries: BTreeMap<(usize, usize), i64>,
}

#[derive(Serialize, Deserialize)]
struct ATableEntry {
    i: usize,
    k: usize,
    a: i64,
}

impl ATable {
    pub fn new() -> Self {
        ATable::default()
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), i64)>,
    {
        let mut map = BTreeMap::new();
        for ((i, k), a) in entries {
            if a != 0 {
                map.insert((i, k), a);
            }
        }
        ATable { entries: map }
    }

    pub fn get(&self, i: usize, k: usize) -> i64 {
        self.entries.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&ik, &a)| (ik, a))
    }

    /// Largest column present, or None when empty.
    pub fn max_col(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, k)| k).max()
    }

    /// Sum of row i; the delta coefficient is the sum of row 0.
    pub fn row_sum(&self, i: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(&(r, _), _)| r == i)
            .map(|(_, &a)| a)
            .sum()
    }

    /// JSON form: array of {"i", "k", "a"} objects sorted by (k, i).
    pub fn to_json(&self) -> String {
        let mut rows: Vec<ATableEntry> = self
            .iter()
            .map(|((i, k), a)| ATableEntry { i, k, a })
            .collect();
        rows.sort_by_key(|e| (e.k, e.i));
        serde_json::to_string(&rows).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, CrystalError> {
        let rows: Vec<ATableEntry> = serde_json::from_str(text)
            .map_err(|e| CrystalError::Parse(format!("bad exponent-table JSON: {}", e)))?;
        Ok(ATable::from_entries(
            rows.into_iter().map(|e| ((e.i, e.k), e.a)),
        ))
    }
}

impl fmt::Display for ATable {
    /// One `a(i,k) = v` line per entry, sorted by (k, i).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty table)");
        }
        let mut rows: Vec<((usize, usize), i64)> = self.iter().collect();
        rows.sort_by_key(|&((i, k), _)| (k, i));
        let mut first = true;
        for ((i, k), a) in rows {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "a({},{}) = {}", i, k, a)?;
        }
        Ok(())
    }
}

/// Evaluate prod A_{i,k}^{a_{i,k}} as a monomial.
pub fn expand_a_product(d: &CartanDatum, t: &ATable) -> Monomial {
    let mut m = Monomial::one();
    for ((i, k), a) in t.iter() {
        m = m.mul(&a_variable(d, i, k).pow(a));
    }
    m
}

fn not_in_crystal(d: &CartanDatum, m: &Monomial, why: &str) -> CrystalError {
    CrystalError::NotInCrystal(format!("{} is not in the {} crystal: {}", m, d.affine_type(), why))
}

fn check_rows(d: &CartanDatum, m: &Monomial) -> Result<(), CrystalError> {
    match m.max_row() {
        Some(r) if r > d.n() => Err(not_in_crystal(
            d,
            m,
            &format!("row index {} exceeds the rank", r),
        )),
        _ => Ok(()),
    }
}

fn reconstruction_check(
    d: &CartanDatum,
    m: &Monomial,
    t: ATable,
) -> Result<ATable, CrystalError> {
    if expand_a_product(d, &t) == *m {
        Ok(t)
    } else {
        Err(not_in_crystal(d, m, "no valid exponent table reconstructs it"))
    }
}

/// Type A1 table via the two-row recursion
/// a_{1,0} = y_{1,0}; a_{0,0} = y_{0,0} + 2 a_{1,0};
/// a_{1,k} = y_{1,k} + 2 a_{0,k-1} - a_{1,k-1};
/// a_{0,k} = y_{0,k} + 2 a_{1,k} - a_{0,k-1}.
pub fn a1_recursion(m: &Monomial) -> Result<ATable, CrystalError> {
    let d = CartanDatum::new(AffineType::new(Family::A, 1).expect("valid type"));
    check_rows(&d, m)?;
    let top = m.support_bound() + 1;
    let mut a0 = vec![0i64; top + 1];
    let mut a1 = vec![0i64; top + 1];
    for k in 0..=top {
        if k == 0 {
            a1[0] = m.exp(1, 0);
            a0[0] = m.exp(0, 0) + 2 * a1[0];
        } else {
            a1[k] = m.exp(1, k) + 2 * a0[k - 1] - a1[k - 1];
            a0[k] = m.exp(0, k) + 2 * a1[k] - a0[k - 1];
        }
    }
    let t = ATable::from_entries(
        (0..=top).flat_map(|k| [((0, k), a0[k]), ((1, k), a1[k])]),
    );
    reconstruction_check(&d, m, t)
}

/// Closed-form A1 table entry.
pub fn a1_closed(m: &Monomial, i: usize, k: usize) -> i64 {
    let ki = k as i64;
    match i {
        0 => (0..=k)
            .map(|j| {
                let ji = j as i64;
                (2 * ji + 1) * m.exp(0, k - j) + (2 * ji + 2) * m.exp(1, k - j)
            })
            .sum(),
        1 => {
            let mut acc = (2 * ki + 1) * m.exp(1, 0);
            for j in 0..k {
                let ji = j as i64;
                acc += (2 * ji + 1) * m.exp(1, k - j) + (2 * ji + 2) * m.exp(0, k - j - 1);
            }
            acc
        }
        _ => panic!("type A1 has rows 0 and 1 only"),
    }
}

/// Delta coefficient in type A1, directly from the closed form.
pub fn d_a1(m: &Monomial) -> i64 {
    (0..=m.support_bound()).map(|k| a1_closed(m, 0, k)).sum()
}

/// Particular solution of a_i - a_{i-1} = c_i on the cycle of length |c|,
/// normalized to a_0 = 0. Solvable iff the c_i sum to zero; every other
/// solution is this one plus a constant shift.
pub fn solve_cyclic_differences(c: &[i64]) -> Result<Vec<i64>, CrystalError> {
    if c.iter().sum::<i64>() != 0 {
        return Err(CrystalError::InconsistentSystem(format!(
            "cyclic differences {:?} sum to {}, not 0",
            c,
            c.iter().sum::<i64>()
        )));
    }
    let mut a = vec![0i64; c.len()];
    for i in 1..c.len() {
        a[i] = a[i - 1] + c[i];
    }
    Ok(a)
}

/// Type An (n >= 2) table: solve each column's cyclic-difference system
/// c_i = a_{i,k} - a_{i-1,k} = sum_l y_{i+l, k-l} (rows mod n+1), then pin
/// the free shift. The top column is pushed up against zero; every lower
/// column takes the largest shift keeping a_{i,k} <= min(0, a_{i-1,k+1}).
pub fn an_algorithm(d: &CartanDatum, m: &Monomial) -> Result<ATable, CrystalError> {
    assert!(d.affine_type().family() == Family::A && d.n() >= 2);
    check_rows(d, m)?;
    let rows = d.index_count();
    let bound = m.support_bound();
    if m.is_one() || bound == 0 {
        // Only 𝟏 expands with no columns at all; anything else fails below.
        return reconstruction_check(d, m, ATable::new());
    }
    let top = bound - 1;
    let mut cols: Vec<Vec<i64>> = vec![Vec::new(); top + 1];
    for k in (0..=top).rev() {
        let c: Vec<i64> = (0..rows)
            .map(|i| (0..=k).map(|l| m.exp((i + l) % rows, k - l)).sum())
            .collect();
        let mut col = solve_cyclic_differences(&c)
            .map_err(|_| not_in_crystal(d, m, &format!("column {} system is unsolvable", k)))?;
        let t = if k == top {
            -col.iter().max().copied().expect("nonempty column")
        } else {
            (0..rows)
                .map(|i| cols[k + 1][(i + rows - 1) % rows].min(0) - col[i])
                .min()
                .expect("nonempty column")
        };
        for v in col.iter_mut() {
            *v += t;
        }
        cols[k] = col;
    }
    let t = ATable::from_entries(
        cols.iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().enumerate().map(move |(i, &a)| ((i, k), a))),
    );
    reconstruction_check(d, m, t)
}

/// Type Bn (n >= 3) table via the forward column recursion. Columns are
/// produced for increasing k until one is entirely zero with no monomial
/// support remaining; a column surviving past support + n + 1 means no
/// finite table exists.
pub fn bn_recursion(d: &CartanDatum, m: &Monomial) -> Result<ATable, CrystalError> {
    assert!(d.affine_type().family() == Family::B);
    check_rows(d, m)?;
    let n = d.n();
    let bound = m.support_bound();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut prev = vec![0i64; n + 1];
    let mut k = 0usize;
    loop {
        let mut col = vec![0i64; n + 1];
        col[0] = m.exp(0, k) + prev[2] - prev[0];
        col[1] = m.exp(1, k) + prev[2] - prev[1];
        col[2] = m.exp(2, k) + col[0] + col[1] + prev[3] - prev[2];
        for i in 3..n {
            col[i] = m.exp(i, k) + col[i - 1] + prev[i + 1] - prev[i];
        }
        col[n] = m.exp(n, k) + 2 * col[n - 1] - prev[n];
        let done = col.iter().all(|&v| v == 0) && k >= bound;
        cols.push(col.clone());
        if done {
            break;
        }
        if k > bound + n + 1 {
            return Err(not_in_crystal(d, m, "the column recursion does not terminate"));
        }
        prev = col;
        k += 1;
    }
    while cols.last().is_some_and(|c| c.iter().all(|&v| v == 0)) {
        cols.pop();
    }
    let t = ATable::from_entries(
        cols.iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().enumerate().map(move |(i, &a)| ((i, k), a))),
    );
    reconstruction_check(d, m, t)
}

/// Closed-form B3 table entry a_{i,m}; floors are integer floors, so
/// floor((k-1)/2) at k = 0 is -1.
pub fn b3_closed(m: &Monomial, i: usize, col: usize) -> i64 {
    let f = |x: i64| x.div_euclid(2);
    (0..=col as i64)
        .map(|k| {
            let y = |row: usize| m.exp(row, col - k as usize);
            let (c0, c1, c2, c3) = match i {
                0 => (2 * f(k) - f(k - 1), f(k + 1), k, f(k)),
                1 => (f(k + 1), 2 * f(k) - f(k - 1), k, f(k)),
                2 => (k + 1, k + 1, 2 * k + 1, k),
                3 => (2 * f(k + 2), 2 * f(k + 2), 2 * k + 2, 2 * f(k) + 1),
                _ => panic!("type B3 has rows 0 through 3 only"),
            };
            c0 * y(0) + c1 * y(1) + c2 * y(2) + c3 * y(3)
        })
        .sum()
}

/// Delta coefficient in type B3, directly from the closed form.
pub fn d_b3(m: &Monomial) -> i64 {
    (0..=m.support_bound()).map(|col| b3_closed(m, 0, col)).sum()
}

/// The exponent table of M, by the route matching the type.
pub fn a_table(d: &CartanDatum, m: &Monomial) -> Result<ATable, CrystalError> {
    match (d.affine_type().family(), d.n()) {
        (Family::A, 1) => a1_recursion(m),
        (Family::A, _) => an_algorithm(d, m),
        (Family::B, _) => bn_recursion(d, m),
    }
}

/// D(M): the delta coefficient of the weight of M in the infinity crystal,
/// the sum of the 0-row of its exponent table.
pub fn delta_coefficient(d: &CartanDatum, m: &Monomial) -> Result<i64, CrystalError> {
    Ok(a_table(d, m)?.row_sum(0))
}

/// Full affine weight of M in the infinity crystal: classical part plus
/// D(M) delta.
pub fn wt_affine(d: &CartanDatum, m: &Monomial) -> Result<WeightVector, CrystalError> {
    let mut w = classical_weight(d, m);
    w.dcoef = delta_coefficient(d, m)?;
    Ok(w)
}

/// Full affine weight of M in the highest-weight crystal of lambda: the
/// classical part reads off M itself, the delta part comes from the
/// stripped monomial H_lambda^{-1} M.
pub fn wt_lambda(
    d: &CartanDatum,
    m: &Monomial,
    p: &[i64],
) -> Result<WeightVector, CrystalError> {
    let mut w = classical_weight(d, m);
    w.dcoef = delta_coefficient(d, &embed_lambda(m, p))?;
    Ok(w)
}
