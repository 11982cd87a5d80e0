//! Tables of marks and their prime congruence partitions.
//!
//! The mark of a subgroup class pair (i, j) counts the fixed points of a
//! subgroup from class j acting on the coset space of a subgroup from class
//! i. With classes in canonical order the table is lower triangular, the
//! first column holds the coset space sizes, the diagonal the orders of the
//! quotients of normalizers, and the last row is all ones.
//!
//! For a prime p, two subgroup classes are linked when their full mark
//! columns agree entrywise mod p. The resulting partition of the classes
//! equals the transitive closure of the relation "one class has a normal
//! extension of index p lying in the other", which this module also computes
//! directly from the subgroups as an independent cross-check.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::ClassTable;

/// A validated lower-triangular table of marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableOfMarks {
    name: Option<String>,
    rows: Vec<Vec<u64>>,
}

impl TableOfMarks {
    /// Wraps raw rows after checking the structural invariants of a table
    /// of marks.
    pub fn from_rows(name: Option<String>, rows: Vec<Vec<u64>>) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidTom(msg));
        if rows.is_empty() {
            return fail("no rows".into());
        }
        let s = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return fail(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                ));
            }
        }
        let order = rows[0][0];
        for (i, row) in rows.iter().enumerate() {
            if row[i] == 0 {
                return fail(format!("zero diagonal entry in row {}", i + 1));
            }
            if i > 0 && row[0] > rows[i - 1][0] {
                return fail(format!("column 1 increases at row {}", i + 1));
            }
            if row[0] == 0 || !order.is_multiple_of(row[0]) {
                return fail(format!(
                    "row {} index {} does not divide the group order {}",
                    i + 1,
                    row[0],
                    order
                ));
            }
            if row[0] % row[i] != 0 {
                return fail(format!(
                    "diagonal entry {} of row {} does not divide the index {}",
                    row[i],
                    i + 1,
                    row[0]
                ));
            }
            for (j, &mark) in row.iter().enumerate() {
                if mark > row[0] {
                    return fail(format!(
                        "mark {} at row {}, column {} exceeds the index {}",
                        mark,
                        i + 1,
                        j + 1,
                        row[0]
                    ));
                }
            }
        }
        if rows[s - 1].iter().any(|&m| m != 1) {
            return fail("last row must be all ones".into());
        }
        Ok(Self { name, rows })
    }

    /// Number of subgroup classes.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// The group order, i.e. the top left entry.
    pub fn group_order(&self) -> u64 {
        self.rows[0][0]
    }

    /// Mark at (i, j); zero above the diagonal.
    pub fn mark(&self, i: usize, j: usize) -> u64 {
        if j <= i {
            self.rows[i][j]
        } else {
            0
        }
    }

    pub fn diagonal(&self, i: usize) -> u64 {
        self.rows[i][i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(self, name: Option<String>) -> Self {
        Self { name, ..self }
    }
}

/// Computes the table of marks from a class table: the mark (i, j) is the
/// number of conjugates of class j inside a class i representative, scaled
/// by normalizer over subgroup order.
pub fn table_of_marks(classes: &ClassTable) -> Result<TableOfMarks> {
    let list = classes.classes();
    let mut rows = Vec::with_capacity(list.len());
    for (i, target) in list.iter().enumerate() {
        let mut row = Vec::with_capacity(i + 1);
        for source in &list[..=i] {
            let contained = source
                .conjugates()
                .iter()
                .filter(|c| c.is_subset_of(target.representative()))
                .count() as u64;
            let scaled = contained * source.normalizer_order();
            if !scaled.is_multiple_of(target.order()) {
                return Err(Error::Invariant(format!(
                    "mark {scaled}/{} is not integral",
                    target.order()
                )));
            }
            row.push(scaled / target.order());
        }
        rows.push(row);
    }
    TableOfMarks::from_rows(None, rows)
}

/// A partition of the subgroup classes attached to one prime, with blocks
/// in canonical order (members ascending, blocks by least member).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePartition {
    prime: u64,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl PrimePartition {
    /// Builds a partition of `0..class_count`, validating shape and
    /// canonicalizing the order of blocks and members.
    pub fn from_blocks(prime: u64, class_count: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; class_count];
        let mut seen = vec![false; class_count];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            block.sort_unstable();
            for &class in &block {
                if class >= class_count {
                    return Err(Error::InvalidPartition(format!(
                        "class {class} out of range for {class_count} classes"
                    )));
                }
                if seen[class] {
                    return Err(Error::InvalidPartition(format!(
                        "class {class} appears twice"
                    )));
                }
                seen[class] = true;
            }
            canonical.push(block);
        }
        canonical.sort_by_key(|block| block.first().copied());
        for (bi, block) in canonical.iter().enumerate() {
            for &class in block {
                block_of[class] = bi;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "class {missing} not covered"
            )));
        }
        Ok(Self {
            prime,
            blocks: canonical,
            block_of,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn class_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The block containing a class, as an ascending slice.
    pub fn block_containing(&self, class: usize) -> &[usize] {
        &self.blocks[self.block_of[class]]
    }
}

/// Links classes whose whole mark columns are congruent mod p.
pub fn cyclic_extensions_marks(tom: &TableOfMarks, p: u64) -> Result<PrimePartition> {
    ensure_prime(p)?;
    let s = tom.size();
    let mut residue_groups: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for j in 0..s {
        let column: Vec<u64> = (0..s).map(|i| tom.mark(i, j) % p).collect();
        residue_groups.entry(column).or_default().push(j);
    }
    PrimePartition::from_blocks(p, s, residue_groups.into_values().collect())
}

/// Links classes related by a normal extension of index p, transitively.
/// Independent of the mark columns: works directly on the subgroups.
pub fn cyclic_extensions_structural(
    group: &FiniteGroup,
    classes: &ClassTable,
    p: u64,
) -> Result<PrimePartition> {
    ensure_prime(p)?;
    let list = classes.classes();
    let s = list.len();
    let mut dsu = Dsu::new(s);
    for j in 0..s {
        let sub = list[j].representative();
        let extended_order = list[j].order() * p;
        for (i, class) in list.iter().enumerate() {
            if class.order() != extended_order {
                continue;
            }
            if class
                .conjugates()
                .iter()
                .any(|big| sub.is_subset_of(big) && is_normal_in(group, sub, big))
            {
                dsu.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for class in 0..s {
        groups.entry(dsu.find(class)).or_default().push(class);
    }
    PrimePartition::from_blocks(p, s, groups.into_values().collect())
}

fn is_normal_in(
    group: &FiniteGroup,
    sub: &crate::group::ElementSet,
    big: &crate::group::ElementSet,
) -> bool {
    big.iter()
        .filter(|x| !sub.contains(*x))
        .all(|x| sub.iter().all(|y| sub.contains(group.conjugate(y, x))))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in ascending order; errors on zero.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    factorize(n).map(|f| f.into_iter().map(|(p, _)| p).collect())
}

/// Prime factorization as (prime, exponent) pairs in ascending prime order;
/// errors on zero.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let mut n = n;
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut exp = 0;
            while n.is_multiple_of(p) {
                n /= p;
                exp += 1;
            }
            factors.push((p, exp));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(factors)
}
