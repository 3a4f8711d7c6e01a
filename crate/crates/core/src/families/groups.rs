//! Finite groups and their conjugacy-class hypergroups.
//!
//! Groups are plain multiplication tables. Conjugacy classes are found by
//! orbit enumeration under inner automorphisms; the class hypergroup has
//! structure constants
//! `p(C_i, C_j)({C_k}) = #{(g,h) in C_i x C_j : gh in C_k} / (|C_i| |C_j|)`.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use crate::table::{default_tolerance, HypergroupTable, RawHypergroup};

/// A finite group as a validated multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    size: usize,
    /// `table[g * size + h] = g h`.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    name: String,
}

impl GroupTable {
    /// Validates a raw multiplication table: Latin square, identity,
    /// inverses, associativity.
    pub fn new(size: usize, table: Vec<usize>, name: impl Into<String>) -> Result<Self> {
        Self::build(size, table, None, name, true)
    }

    /// Same as [`new`](Self::new) but trusts associativity (used by the
    /// builtin constructors, whose tables come from genuine compositions).
    fn new_trusted(
        size: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        name: impl Into<String>,
    ) -> Result<Self> {
        Self::build(size, table, labels, name, false)
    }

    fn build(
        size: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        name: impl Into<String>,
        check_associativity: bool,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if table.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        for &v in &table {
            if v >= size {
                return Err(Error::NotAGroup(format!("entry {v} out of range")));
            }
        }
        // Latin square.
        for g in 0..size {
            let mut row_seen = vec![false; size];
            let mut col_seen = vec![false; size];
            for h in 0..size {
                let r = table[g * size + h];
                let c = table[h * size + g];
                if row_seen[r] || col_seen[c] {
                    return Err(Error::NotAGroup(format!(
                        "row/column {g} repeats a product; not a Latin square"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        // Two-sided identity.
        let identity = (0..size)
            .find(|&e| (0..size).all(|g| table[e * size + g] == g && table[g * size + e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        if check_associativity {
            for a in 0..size {
                for b in 0..size {
                    let ab = table[a * size + b];
                    for c in 0..size {
                        if table[ab * size + c] != table[a * size + table[b * size + c]] {
                            return Err(Error::NotAGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        // Inverses.
        let mut inverses = vec![0usize; size];
        for g in 0..size {
            let inv = (0..size)
                .find(|&h| table[g * size + h] == identity && table[h * size + g] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))?;
            inverses[g] = inv;
        }
        let labels = labels.unwrap_or_else(|| (0..size).map(|g| format!("g{g}")).collect());
        Ok(Self {
            size,
            table,
            identity,
            inverses,
            labels,
            name: name.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.size + h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|g| (g..self.size).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Conjugacy classes by orbit enumeration, each sorted, ordered by their
    /// smallest member (so the identity class comes first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.size];
        let mut classes = Vec::new();
        for g in 0..self.size {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.size)
                .map(|h| self.mul(self.mul(h, g), self.inverse(h)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                assigned[x] = true;
            }
            classes.push(class);
        }
        classes
    }
}

/// Hypergroup of conjugacy classes. Classes are indexed in the order returned
/// by [`GroupTable::conjugacy_classes`]; involution maps a class to the class
/// of inverses; the Haar weights come out as `|C| / |G|`.
pub fn conjugacy_hypergroup<T: Real>(group: &GroupTable) -> Result<HypergroupTable<T>> {
    let classes = group.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0usize; group.size()];
    for (i, class) in classes.iter().enumerate() {
        for &g in class {
            class_of[g] = i;
        }
    }

    let identity = class_of[group.identity()];
    let involution: Vec<usize> = (0..k)
        .map(|i| class_of[group.inverse(classes[i][0])])
        .collect();
    let mut raw = RawHypergroup::new(
        k,
        identity,
        involution,
        format!("conjugacy({})", group.name()),
    )?;

    for i in 0..k {
        for j in i..k {
            let mut counts = vec![0usize; k];
            for &g in &classes[i] {
                for &h in &classes[j] {
                    counts[class_of[group.mul(g, h)]] += 1;
                }
            }
            let denom = real::<T>((classes[i].len() * classes[j].len()) as f64);
            let row: Vec<(usize, T)> = counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(z, &c)| (z, real::<T>(c as f64) / denom))
                .collect();
            raw.set_symmetric_row(i, j, row)?;
        }
    }
    raw.validate(default_tolerance())
}

fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("Z_0 is empty".into()));
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    let labels = (0..n).map(|a| format!("r{a}")).collect();
    GroupTable::new_trusted(n, table, Some(labels), format!("Z{n}"))
}

fn dihedral(n: usize) -> Result<GroupTable> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(
            "dihedral order parameter must be at least 2".into(),
        ));
    }
    // Element (a, b) = r^a s^b, index a + b*n; (a1,b1)(a2,b2) =
    // (a1 + (-1)^{b1} a2, b1 xor b2).
    let size = 2 * n;
    let idx = |a: usize, b: usize| a + b * n;
    let mut table = vec![0usize; size * size];
    for a1 in 0..n {
        for b1 in 0..2 {
            for a2 in 0..n {
                for b2 in 0..2 {
                    let a = if b1 == 0 {
                        (a1 + a2) % n
                    } else {
                        (a1 + n - a2 % n) % n
                    };
                    table[idx(a1, b1) * size + idx(a2, b2)] = idx(a, b1 ^ b2);
                }
            }
        }
    }
    let labels = (0..size)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            if b == 0 {
                format!("r{a}")
            } else {
                format!("r{a}s")
            }
        })
        .collect();
    GroupTable::new_trusted(size, table, Some(labels), format!("D{n}"))
}

fn quaternion() -> Result<GroupTable> {
    // Elements: 1, -1, i, -i, j, -j, k, -k as (axis, sign) with
    // axis in {1, i, j, k}.
    const AXES: usize = 4;
    // mul_axis[a][b] = (axis, sign) of the product of unit axes.
    let mul_axis = [
        [(0, 1i32), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let index = |axis: usize, sign: i32| axis * 2 + usize::from(sign < 0);
    let size = 2 * AXES;
    let mut table = vec![0usize; size * size];
    for a in 0..AXES {
        for sa in [1i32, -1] {
            for b in 0..AXES {
                for sb in [1i32, -1] {
                    let (axis, s) = mul_axis[a][b];
                    table[index(a, sa) * size + index(b, sb)] = index(axis, s * sa * sb);
                }
            }
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    GroupTable::new_trusted(
        size,
        table,
        Some(names.iter().map(|s| s.to_string()).collect()),
        "Q8",
    )
}

/// All permutations of `{0..n-1}` in lexicographic order (identity first).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn parity(perm: &[usize]) -> bool {
    // true = even
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn permutation_group(perms: Vec<Vec<usize>>, name: String) -> Result<GroupTable> {
    let size = perms.len();
    let mut index = std::collections::HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let degree = perms[0].len();
    let mut table = vec![0usize; size * size];
    let mut composed = vec![0usize; degree];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // (p q)(x) = p(q(x))
            for x in 0..degree {
                composed[x] = p[q[x]];
            }
            table[i * size + j] = *index
                .get(&composed)
                .ok_or_else(|| Error::NotAGroup("composition left the set".into()))?;
        }
    }
    let labels = perms.iter().map(|p| format!("{p:?}")).collect();
    GroupTable::new_trusted(size, table, Some(labels), name)
}

fn symmetric(n: usize) -> Result<GroupTable> {
    if !(1..=6).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!(
            "symmetric group supported for 1 <= n <= 6 (got {n})"
        )));
    }
    permutation_group(permutations(n), format!("S{n}"))
}

fn alternating(n: usize) -> Result<GroupTable> {
    if !(1..=5).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!(
            "alternating group supported for 1 <= n <= 5 (got {n})"
        )));
    }
    let perms: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| parity(p)).collect();
    permutation_group(perms, format!("A{n}"))
}

/// Builds a named group: `Z_n`, `D_n` (n >= 2), `S_n` (n <= 6), `A_n`
/// (n <= 5), `Q8`. Underscores are optional and names are case-insensitive.
pub fn builtin_group(name: &str) -> Result<GroupTable> {
    let cleaned: String = name
        .trim()
        .chars()
        .filter(|c| *c != '_' && *c != '-')
        .collect::<String>()
        .to_ascii_uppercase();
    if cleaned == "Q8" {
        return quaternion();
    }
    let (family, digits) = cleaned.split_at(1);
    let n: usize = digits
        .parse()
        .map_err(|_| Error::UnknownGroup(name.to_string()))?;
    match family {
        "Z" | "C" => cyclic(n),
        "D" => dihedral(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}
