use super::ConstructionError;
use crate::certify::certify_three_ev_tournament;
use crate::graph::OrientedGraph;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A `±1` matrix `A` of order `n` with `A A^T = nI` and `A + A^T = 2I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewHadamard {
    n: usize,
    entries: Vec<i8>,
}

fn check(n: usize, e: &[i8]) -> Result<(), String> {
    if e.len() != n * n {
        return Err(format!("expected {} entries, got {}", n * n, e.len()));
    }
    if let Some(pos) = e.iter().position(|&x| x != 1 && x != -1) {
        return Err(format!("entry ({}, {}) is not ±1", pos / n, pos % n));
    }
    for i in 0..n {
        for j in 0..n {
            let sym = e[i * n + j] as i64 + e[j * n + i] as i64;
            if sym != if i == j { 2 } else { 0 } {
                return Err(format!("A + A^T is not 2I at ({i}, {j})"));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let dot: i64 = (0..n)
                .map(|k| e[i * n + k] as i64 * e[j * n + k] as i64)
                .sum();
            if dot != if i == j { n as i64 } else { 0 } {
                return Err(format!("A A^T is not nI at ({i}, {j})"));
            }
        }
    }
    Ok(())
}

impl SkewHadamard {
    /// Validates both defining identities in integer arithmetic.
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self, ConstructionError> {
        check(n, &entries).map_err(ConstructionError::InvalidHadamard)?;
        Ok(SkewHadamard { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// `D A D` with `D = diag(A[0][j])`: the first row becomes all ones, the
    /// first column `(1, -1, ..., -1)`, and skewness is kept.
    pub fn normalized(&self) -> SkewHadamard {
        let n = self.n;
        let d: Vec<i8> = (0..n).map(|j| self.get(0, j)).collect();
        let entries = (0..n * n)
            .map(|p| d[p / n] * self.entries[p] * d[p % n])
            .collect();
        SkewHadamard { n, entries }
    }

    /// One row per line, `+` for 1 and `-` for -1.
    pub fn to_rows(&self) -> Vec<String> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().map(|&x| if x == 1 { '+' } else { '-' }).collect())
            .collect()
    }

    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, ConstructionError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref().trim();
            if row.chars().count() != n {
                return Err(ConstructionError::InvalidHadamard(format!(
                    "row {i} has length {}, expected {n}",
                    row.chars().count()
                )));
            }
            for c in row.chars() {
                entries.push(match c {
                    '+' => 1,
                    '-' => -1,
                    _ => {
                        return Err(ConstructionError::InvalidHadamard(format!(
                            "unexpected character {c:?} in row {i}"
                        )))
                    }
                });
            }
        }
        SkewHadamard::new(n, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.to_rows().join("\n");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ConstructionError> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        SkewHadamard::from_rows(&rows)
    }
}

impl Serialize for SkewHadamard {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SkewHadamard {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(de)?;
        SkewHadamard::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Order `q + 1` matrix `I + [[0, j^T], [-j, Q]]` where `Q[i][j]` is the
/// quadratic character of `j - i` in `F_q`.
pub fn paley_skew_hadamard(q: u64) -> Result<SkewHadamard, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime(q));
    }
    if q % 4 != 3 {
        return Err(ConstructionError::NotThreeModFour(q));
    }
    if q > 4093 {
        return Err(ConstructionError::InvalidParameter(format!(
            "q = {q} is larger than supported (4093)"
        )));
    }
    let q = q as usize;
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let chi = |x: usize| -> i8 {
        if x == 0 {
            0
        } else if residue[x] {
            1
        } else {
            -1
        }
    };
    let n = q + 1;
    let mut e = vec![0i8; n * n];
    for j in 1..n {
        e[j] = 1;
        e[j * n] = -1;
    }
    for i in 0..q {
        for j in 0..q {
            e[(i + 1) * n + j + 1] = chi((j + q - i) % q);
        }
    }
    for i in 0..n {
        e[i * n + i] += 1;
    }
    SkewHadamard::new(n, e)
}

/// Normalizes `A`, deletes the first row and column to get `B`, and puts
/// `u -> v` exactly when `(B - I)[u][v] = 1`.
pub fn tournament_from_skew_hadamard(a: &SkewHadamard) -> OrientedGraph {
    let a = a.normalized();
    let m = a.order().saturating_sub(1);
    let arcs = (0..m)
        .flat_map(|u| (0..m).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && a.get(u + 1, v + 1) == 1);
    OrientedGraph::new(m, arcs).expect("skew core gives one arc per pair")
}

/// Borders the tournament's `±1` matrix `B` with a column of `-1`s and a
/// row of `1`s: `A = [[1, j^T], [-j, B]]`.
///
/// Requires a regular tournament whose spectrum matches the three value
/// formula; for the directed triangle the formula collapses to two values,
/// which is accepted.
pub fn skew_hadamard_from_tournament(t: &OrientedGraph) -> Result<SkewHadamard, ConstructionError> {
    if !t.is_tournament() {
        return Err(ConstructionError::Tournament("input is not a tournament".into()));
    }
    if !t.is_regular() {
        return Err(ConstructionError::Tournament("tournament is not regular".into()));
    }
    let report = certify_three_ev_tournament(t)?;
    if !report.matches_formula {
        return Err(ConstructionError::Tournament(format!(
            "spectrum has {} distinct eigenvalues and does not match the three value formula",
            report.distinct
        )));
    }
    let m = t.n();
    let n = m + 1;
    let mut e = vec![0i8; n * n];
    e[0] = 1;
    for j in 1..n {
        e[j] = 1;
        e[j * n] = -1;
    }
    for u in 0..m {
        e[(u + 1) * n + u + 1] = 1;
    }
    for &(u, v) in t.arcs() {
        e[(u + 1) * n + v + 1] = 1;
        e[(v + 1) * n + u + 1] = -1;
    }
    SkewHadamard::new(n, e)
}
