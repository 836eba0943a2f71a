//! Generalized Young walls for type An: colored boards, properness, removal
//! of full-color column sets (delta removal), signature-rule crystal
//! operators, and the map psi onto modified Nakajima monomials.
//!
//! A wall is a bottom-up list of row lengths on a left-infinite board. The
//! box in row r (0-indexed from the bottom) and column c (1-indexed from the
//! right) carries color (r - c + 1) mod (n+1), so the bottom-right box is
//! colored 0 and colors increase going up and decrease going left.

use std::fmt;

use crate::cartan::{CartanDatum, Family, WeightVector};
use crate::delta::{expand_a_product, ATable};
use crate::monomial::Monomial;
use crate::CrystalError;

/// A generalized Young wall: `rows[r]` boxes in row r, counted from the
/// bottom. Canonical form has no trailing zero rows (interior zero rows are
/// meaningful and kept).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wall {
    n: usize,
    rows: Vec<usize>,
}

/// Sign of one signature entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One surviving signature entity: a removable box (minus) or an admissible
/// slot (plus) at the given board position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigEntry {
    pub sign: Sign,
    pub row: usize,
    pub col: usize,
}

/// An i-signature after cancellation: minuses followed by pluses, ordered
/// left to right on the board (decreasing column, ties bottom to top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    entries: Vec<SigEntry>,
}

impl Signature {
    pub fn entries(&self) -> &[SigEntry] {
        &self.entries
    }

    /// Number of minuses; equals eps_i of the wall.
    pub fn minus_count(&self) -> usize {
        self.entries.iter().filter(|e| e.sign == Sign::Minus).count()
    }

    /// The board-leftmost surviving plus, where f_i acts.
    pub fn first_plus(&self) -> Option<SigEntry> {
        self.entries.iter().copied().find(|e| e.sign == Sign::Plus)
    }

    /// The board-rightmost surviving minus, where e_i acts.
    pub fn last_minus(&self) -> Option<SigEntry> {
        self.entries
            .iter()
            .rev()
            .copied()
            .find(|e| e.sign == Sign::Minus)
    }
}

impl Wall {
    pub fn new(n: usize, mut rows: Vec<usize>) -> Wall {
        assert!(n >= 1, "walls need rank n >= 1");
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Wall { n, rows }
    }

    pub fn empty(n: usize) -> Wall {
        Wall::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of rows up to the top nonzero one.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Length of row r; rows beyond the stored ones are empty.
    pub fn row_len(&self, r: usize) -> usize {
        self.rows.get(r).copied().unwrap_or(0)
    }

    /// Color of the box (or site) in row r, column c >= 1.
    pub fn color(&self, r: usize, c: usize) -> usize {
        let m = (self.n + 1) as i64;
        (r as i64 - c as i64 + 1).rem_euclid(m) as usize
    }

    /// Rows a full period apart must weakly decrease in length going up.
    pub fn is_proper(&self) -> bool {
        let period = self.n + 1;
        (period..self.rows.len()).all(|r| self.rows[r] <= self.rows[r - period])
    }

    /// Counts a_{i,k} = number of i-colored boxes in column k (k >= 1).
    pub fn column_counts(&self) -> ATable {
        let mut entries = Vec::new();
        for (r, &len) in self.rows.iter().enumerate() {
            for c in 1..=len {
                entries.push(((self.color(r, c), c), 1));
            }
        }
        let mut acc = std::collections::BTreeMap::new();
        for (ik, v) in entries {
            *acc.entry(ik).or_insert(0i64) += v;
        }
        ATable::from_entries(acc)
    }

    /// Total number of boxes of each color.
    pub fn box_counts(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.n + 1];
        for (r, &len) in self.rows.iter().enumerate() {
            for c in 1..=len {
                counts[self.color(r, c)] += 1;
            }
        }
        counts
    }

    /// wt(Y) = -sum_i k_i alpha_i over the box counts k_i.
    pub fn weight(&self, d: &CartanDatum) -> WeightVector {
        assert_eq!(d.n(), self.n, "rank mismatch");
        assert_eq!(d.affine_type().family(), Family::A, "walls are type A only");
        let counts = self.box_counts();
        let mut w = WeightVector::zero(d.index_count());
        for (i, &k) in counts.iter().enumerate() {
            w = w.add(&d.simple_root(i).scaled(-k));
        }
        w
    }

    /// Column k holds a removable delta when every color has strictly more
    /// boxes there than the next color up has in column k+1:
    /// a_{i-1,k+1} < a_{i,k} for all i.
    pub fn has_removable_delta(&self, k: usize) -> bool {
        assert!(k >= 1, "columns are 1-indexed");
        let counts = self.column_counts();
        (0..=self.n).all(|i| {
            let prev = (i + self.n) % (self.n + 1);
            counts.get(prev, k + 1) < counts.get(i, k)
        })
    }

    /// Remove one box of each color from column k: among the rows ending in
    /// column k, the topmost row of each color loses its leftmost box. The
    /// topmost choice is the one that keeps the wall proper, since rows of a
    /// color class weakly shorten upward.
    pub fn remove_delta(&self, k: usize) -> Result<Wall, CrystalError> {
        if !self.has_removable_delta(k) {
            return Err(CrystalError::InvalidOperation(format!(
                "wall {} has no removable delta in column {}",
                self, k
            )));
        }
        let mut rows = self.rows.clone();
        for color in 0..=self.n {
            let target = (0..self.rows.len())
                .rev()
                .find(|&r| self.rows[r] == k && self.color(r, k) == color)
                .expect("removability provides a row ending in column k of each color");
            rows[target] -= 1;
        }
        let out = Wall::new(self.n, rows);
        assert!(out.is_proper(), "delta removal broke properness on {}", self);
        Ok(out)
    }

    /// True when no column admits a delta removal.
    pub fn is_reduced(&self) -> bool {
        let widest = self.rows.iter().copied().max().unwrap_or(0);
        (1..=widest).all(|k| !self.has_removable_delta(k))
    }

    /// Remove deltas, lowest column first, until none remains.
    pub fn reduce(&self) -> Wall {
        let mut w = self.clone();
        loop {
            let widest = w.rows.iter().copied().max().unwrap_or(0);
            match (1..=widest).find(|&k| w.has_removable_delta(k)) {
                Some(k) => w = w.remove_delta(k).expect("column is removable"),
                None => return w,
            }
        }
    }

    /// The i-signature. Every row r up to one color period above the support
    /// contributes a minus at its leftmost box if that box is i-colored, and
    /// a plus at the site left of it (column 1 for an empty row) if that
    /// site is i-colored. Entities are ordered left to right then bottom to
    /// top, and (+,-) pairs cancel to a minuses-then-pluses normal form.
    pub fn signature(&self, i: usize) -> Signature {
        assert!(i <= self.n, "color out of range");
        let top = self.height() + self.n;
        let mut raw: Vec<SigEntry> = Vec::new();
        for r in 0..=top {
            let len = self.row_len(r);
            if len > 0 && self.color(r, len) == i {
                raw.push(SigEntry {
                    sign: Sign::Minus,
                    row: r,
                    col: len,
                });
            }
            if self.color(r, len + 1) == i {
                raw.push(SigEntry {
                    sign: Sign::Plus,
                    row: r,
                    col: len + 1,
                });
            }
        }
        raw.sort_by(|a, b| b.col.cmp(&a.col).then(a.row.cmp(&b.row)));
        let mut entries: Vec<SigEntry> = Vec::new();
        for e in raw {
            if e.sign == Sign::Minus && entries.last().is_some_and(|p| p.sign == Sign::Plus) {
                entries.pop();
            } else {
                entries.push(e);
            }
        }
        Signature { entries }
    }

    /// f_i: add an i-box at the leftmost surviving plus. Total: a fresh row
    /// of every color always sits within one period above the support.
    pub fn apply_f(&self, i: usize) -> Wall {
        let slot = self
            .signature(i)
            .first_plus()
            .expect("a plus always survives at the top fresh rows");
        let mut rows = self.rows.clone();
        if slot.row >= rows.len() {
            rows.resize(slot.row + 1, 0);
        }
        rows[slot.row] += 1;
        debug_assert_eq!(rows[slot.row], slot.col);
        let out = Wall::new(self.n, rows);
        assert!(
            out.is_proper(),
            "f_{} broke properness: {} -> {}",
            i,
            self,
            out
        );
        out
    }

    /// e_i: remove the box at the rightmost surviving minus, if any.
    pub fn apply_e(&self, i: usize) -> Option<Wall> {
        let spot = self.signature(i).last_minus()?;
        let mut rows = self.rows.clone();
        rows[spot.row] -= 1;
        Some(Wall::new(self.n, rows))
    }

    /// Exponent table of psi: A_{i,k} appears with exponent -a_{i,k+1}.
    pub fn psi_table(&self) -> ATable {
        ATable::from_entries(
            self.column_counts()
                .iter()
                .map(|((i, k), count)| ((i, k - 1), -count)),
        )
    }

    /// psi(Y) = prod A_{i,k}^{-a_{i,k+1}} as a monomial.
    pub fn psi(&self, d: &CartanDatum) -> Monomial {
        assert_eq!(d.n(), self.n, "rank mismatch");
        expand_a_product(d, &self.psi_table())
    }

    /// Rebuild the wall whose column color-counts are exactly `counts`
    /// (keys (i, k) with k >= 1). Within each residue class of rows the
    /// lengths are forced; the result is checked against the input.
    pub fn from_column_counts(n: usize, counts: &ATable) -> Result<Wall, CrystalError> {
        for ((i, k), count) in counts.iter() {
            if i > n || k == 0 || count < 0 {
                return Err(CrystalError::Parse(format!(
                    "count table entry ({}, {}) = {} is not a box count",
                    i, k, count
                )));
            }
        }
        let widest = counts.max_col().unwrap_or(0);
        let mut rows: Vec<usize> = Vec::new();
        let probe = Wall::empty(n);
        for class in 0..=n {
            for j in 0.. {
                let len = (1..=widest)
                    .filter(|&k| counts.get(probe.color(class, k), k) > j)
                    .count();
                if len == 0 {
                    break;
                }
                let r = class + j as usize * (n + 1);
                if rows.len() <= r {
                    rows.resize(r + 1, 0);
                }
                rows[r] = len;
            }
        }
        let wall = Wall::new(n, rows);
        if wall.column_counts() != *counts {
            return Err(CrystalError::NotInCrystal(format!(
                "no generalized Young wall has those column counts (nearest is {})",
                wall
            )));
        }
        Ok(wall)
    }

    pub fn parse(n: usize, text: &str) -> Result<Wall, CrystalError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Wall::empty(n));
        }
        let rows = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| CrystalError::Parse(format!("bad row length {:?}", tok)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Wall::new(n, rows))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "rows": self.rows })
    }

    /// ASCII picture, top row first, each box showing its color digit.
    pub fn render(&self) -> String {
        if self.rows.is_empty() {
            return "(empty wall)".to_string();
        }
        let widest = *self.rows.iter().max().expect("nonempty");
        let mut out = String::new();
        for r in (0..self.rows.len()).rev() {
            let len = self.rows[r];
            out.push_str(&"   ".repeat(widest - len));
            for c in (1..=len).rev() {
                out.push_str(&format!("[{}]", self.color(r, c)));
            }
            out.push('\n');
        }
        out.pop();
        out
    }
}

impl fmt::Display for Wall {
    /// Comma-separated row lengths bottom-up; `0` for the empty wall.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}
