//! Concrete finite permutation groups.
//!
//! A [`FiniteGroup`] is generated from a set of permutations by closure and
//! stores its elements in lexicographic order of their image arrays (so the
//! identity is always element 0), together with a full multiplication table
//! and inverse table. Element ids are indices into that order, which makes
//! subgroups cheap bit sets ([`ElementSet`]).
//!
//! [`make_group`] builds the standard families: cyclic, symmetric,
//! alternating, dihedral, the quaternion group of order 8, `SL(2, p)` for
//! small primes acting on the nonzero vectors of its natural module, direct
//! products, and groups read from generator files.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::perm::{parse_generator_file, Permutation};

/// Default bound on the order of a generated group.
pub const DEFAULT_ORDER_CAP: u64 = 1000;

/// Largest order cap that can be configured.
pub const MAX_ORDER_CAP: u64 = 5040;

/// A validated bound on group orders, between 1 and [`MAX_ORDER_CAP`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCap(u64);

impl OrderCap {
    pub fn new(cap: u64) -> Result<Self> {
        if cap == 0 || cap > MAX_ORDER_CAP {
            return Err(Error::InvalidCap(cap));
        }
        Ok(Self(cap))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl Default for OrderCap {
    fn default() -> Self {
        Self(DEFAULT_ORDER_CAP)
    }
}

/// A set of element ids of one group, stored as a bit vector.
///
/// The ordering sorts by membership lists read as ascending sequences: the
/// set containing the smallest element not shared by both comes first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Box<[u64]>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn from_ids<I: IntoIterator<Item = u16>>(universe: usize, ids: I) -> Self {
        let mut set = Self::new(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, id: u16) -> bool {
        let id = id as usize;
        debug_assert!(id < self.universe);
        self.words[id / 64] & (1 << (id % 64)) != 0
    }

    /// Inserts an id; returns true if it was new.
    pub fn insert(&mut self, id: u16) -> bool {
        let idx = id as usize;
        debug_assert!(idx < self.universe);
        let word = &mut self.words[idx / 64];
        let bit = 1 << (idx % 64);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some((wi * 64) as u16 + bit as u16)
            })
        })
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            if a != b {
                let low = (a ^ b).trailing_zeros();
                // Owning the smallest differing element sorts first.
                return if a & (1 << low) != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite permutation group with precomputed multiplication and inverse
/// tables. Element 0 is the identity.
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u16>,
    generators: Vec<u16>,
    inverse: Vec<u16>,
    table: Vec<u16>,
}

impl FiniteGroup {
    /// Generates the closure of the given permutations, failing once the
    /// element count would exceed the cap.
    pub fn generate(gens: &[Permutation], cap: OrderCap) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let degree = gens[0].degree();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut distinct_gens: Vec<Permutation> = Vec::new();
        for g in gens {
            if !distinct_gens.contains(g) {
                distinct_gens.push(g.clone());
            }
        }
        let bfs_gens: Vec<Permutation> = distinct_gens
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();

        // Breadth-first closure from the identity under right multiplication,
        // remembering for each new element x the pair (y, g) with x = y * g.
        let identity = Permutation::identity(degree);
        let mut elems = vec![identity.clone()];
        let mut pos: HashMap<Permutation, usize> = HashMap::new();
        pos.insert(identity, 0);
        let mut edge: Vec<(usize, usize)> = vec![(0, 0)];
        let mut head = 0;
        while head < elems.len() {
            for (gi, g) in bfs_gens.iter().enumerate() {
                let prod = elems[head].compose(g)?;
                if !pos.contains_key(&prod) {
                    if elems.len() as u64 >= cap.get() {
                        return Err(Error::GenerationCapExceeded { cap: cap.get() });
                    }
                    pos.insert(prod.clone(), elems.len());
                    edge.push((head, gi));
                    elems.push(prod);
                }
            }
            head += 1;
        }

        let n = elems.len();
        let mut sorted: Vec<Permutation> = elems.clone();
        sorted.sort_unstable();
        let index: HashMap<Permutation, u16> = sorted
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u16))
            .collect();
        if !sorted[0].is_identity() {
            return Err(Error::Invariant("identity is not the first element".into()));
        }
        let new_id: Vec<u16> = elems.iter().map(|p| index[p]).collect();

        let generators = distinct_gens.iter().map(|g| index[g]).collect();
        let inverse: Vec<u16> = sorted.iter().map(|p| index[&p.inverse()]).collect();

        // Right multiplication tables for the generators seed the full table:
        // with x = y * g, column x is column y followed by the lookup for g.
        let gen_rmul: Vec<Vec<u16>> = bfs_gens
            .iter()
            .map(|g| {
                sorted
                    .iter()
                    .map(|p| Ok(index[&p.compose(g)?]))
                    .collect::<Result<Vec<u16>>>()
            })
            .collect::<Result<_>>()?;
        let mut table = vec![0u16; n * n];
        for (bfs_id, &(parent, gi)) in edge.iter().enumerate() {
            let x = new_id[bfs_id] as usize;
            if bfs_id == 0 {
                for a in 0..n {
                    table[a * n + x] = a as u16;
                }
            } else {
                let y = new_id[parent] as usize;
                let rmul = &gen_rmul[gi];
                for a in 0..n {
                    table[a * n + x] = rmul[table[a * n + y] as usize];
                }
            }
        }

        Ok(Self {
            degree,
            elements: sorted,
            index,
            generators,
            inverse,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Elements in lexicographic order of their image arrays.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: u16) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, perm: &Permutation) -> Option<u16> {
        self.index.get(perm).copied()
    }

    /// Ids of the defining generators.
    pub fn generators(&self) -> &[u16] {
        &self.generators
    }

    pub fn identity_id(&self) -> u16 {
        0
    }

    /// Product a * b, with b acting first.
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    /// Conjugate `by^-1 * x * by`.
    pub fn conjugate(&self, x: u16, by: u16) -> u16 {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn element_order(&self, a: u16) -> u64 {
        let mut x = a;
        let mut ord = 1;
        while x != 0 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// The cyclic subgroup generated by one element.
    pub fn cyclic_subgroup(&self, a: u16) -> ElementSet {
        let mut set = ElementSet::new(self.order());
        set.insert(0);
        let mut x = a;
        while x != 0 {
            set.insert(x);
            x = self.mul(x, a);
        }
        set
    }

    /// The subgroup generated by the given element ids.
    pub fn generated_subgroup(&self, gens: &[u16]) -> ElementSet {
        let mut set = ElementSet::new(self.order());
        set.insert(0);
        let mut stack = vec![0u16];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// The commutator subgroup of a subgroup given by its element set.
    pub fn derived_subgroup_of(&self, subgroup: &ElementSet) -> ElementSet {
        let members: Vec<u16> = subgroup.iter().collect();
        let mut commutators = ElementSet::new(self.order());
        for &a in &members {
            let ia = self.inv(a);
            for &b in &members {
                let c = self.mul(self.mul(self.mul(ia, self.inv(b)), a), b);
                commutators.insert(c);
            }
        }
        let gens: Vec<u16> = commutators.iter().collect();
        self.generated_subgroup(&gens)
    }

    pub fn derived_subgroup(&self) -> ElementSet {
        self.derived_subgroup_of(&ElementSet::from_ids(self.order(), 0..self.order() as u16))
    }

    /// Whether the derived series reaches the trivial subgroup.
    pub fn is_solvable(&self) -> bool {
        let mut current = ElementSet::from_ids(self.order(), 0..self.order() as u16);
        loop {
            let next = self.derived_subgroup_of(&current);
            if next.count() == 1 {
                return true;
            }
            if next == current {
                return false;
            }
            current = next;
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

/// Description of a group to construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// Cyclic group of order n.
    Cyclic(u64),
    /// Symmetric group on n points.
    Symmetric(u64),
    /// Alternating group on n points.
    Alternating(u64),
    /// Dihedral group of the given (even) order.
    DihedralOfOrder(u64),
    /// Quaternion group of order 8.
    Quaternion8,
    /// SL(2, p) for p in {2, 3, 5, 7}, acting on the nonzero vectors of F_p^2.
    SpecialLinear2(u64),
    /// Direct product of the factors, acting on disjoint point sets.
    Product(Vec<GroupSpec>),
    /// Group generated by the permutations listed in a file.
    GeneratorFile(PathBuf),
}

impl GroupSpec {
    /// Checks parameter constraints that the type cannot express.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            GroupSpec::Cyclic(0) => bad("cyclic order must be at least 1".into()),
            GroupSpec::Symmetric(0) | GroupSpec::Alternating(0) => {
                bad("degree must be at least 1".into())
            }
            GroupSpec::DihedralOfOrder(n) if *n < 2 || n % 2 != 0 => bad(format!(
                "dihedral order must be even and at least 2, got {n}"
            )),
            GroupSpec::SpecialLinear2(p) if ![2, 3, 5, 7].contains(p) => {
                bad(format!("SL2 parameter must be one of 2, 3, 5, 7, got {p}"))
            }
            GroupSpec::Product(factors) if factors.is_empty() => {
                bad("a product needs at least one factor".into())
            }
            GroupSpec::Product(factors) => factors.iter().try_for_each(GroupSpec::validate),
            _ => Ok(()),
        }
    }

    /// Group order when it is known without generating; `None` for
    /// generator files.
    pub fn known_order(&self) -> Option<u128> {
        match *self {
            GroupSpec::Cyclic(n) => Some(n as u128),
            GroupSpec::Symmetric(n) => Some(factorial(n)),
            GroupSpec::Alternating(n) if n <= 2 => Some(1),
            GroupSpec::Alternating(n) => Some(factorial(n) / 2),
            GroupSpec::DihedralOfOrder(n) => Some(n as u128),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::SpecialLinear2(p) => {
                let p = p as u128;
                Some(p * (p - 1) * (p + 1))
            }
            GroupSpec::Product(ref factors) => factors
                .iter()
                .map(GroupSpec::known_order)
                .try_fold(1u128, |acc, o| Some(acc.saturating_mul(o?))),
            GroupSpec::GeneratorFile(_) => None,
        }
    }
}

fn factorial(n: u64) -> u128 {
    (2..=n as u128).fold(1u128, u128::saturating_mul)
}

fn cycle_perm(degree: usize) -> Permutation {
    let images = (0..degree).map(|i| ((i + 1) % degree) as u16).collect();
    Permutation::from_images(images).expect("valid cycle")
}

fn transposition(degree: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<u16> = (0..degree as u16).collect();
    images.swap(a, b);
    Permutation::from_images(images).expect("valid transposition")
}

fn generators_for(spec: &GroupSpec) -> Result<Vec<Permutation>> {
    match *spec {
        GroupSpec::Cyclic(n) => {
            let n = n as usize;
            Ok(vec![if n == 1 {
                Permutation::identity(1)
            } else {
                cycle_perm(n)
            }])
        }
        GroupSpec::Symmetric(n) => {
            let n = n as usize;
            Ok(match n {
                1 => vec![Permutation::identity(1)],
                2 => vec![transposition(2, 0, 1)],
                _ => vec![transposition(n, 0, 1), cycle_perm(n)],
            })
        }
        GroupSpec::Alternating(n) => {
            let n = n as usize;
            if n <= 2 {
                return Ok(vec![Permutation::identity(n.max(1))]);
            }
            let three_cycle = {
                let mut images: Vec<u16> = (0..n as u16).collect();
                images[0] = 1;
                images[1] = 2;
                images[2] = 0;
                Permutation::from_images(images).expect("valid 3-cycle")
            };
            if n == 3 {
                return Ok(vec![three_cycle]);
            }
            // The long cycle must be even: use the full n-cycle for odd n and
            // an (n-1)-cycle fixing the first point for even n.
            let long = if n % 2 == 1 {
                cycle_perm(n)
            } else {
                let images: Vec<u16> = std::iter::once(0)
                    .chain((2..n as u16).chain(std::iter::once(1)))
                    .collect();
                Permutation::from_images(images).expect("valid long cycle")
            };
            Ok(vec![three_cycle, long])
        }
        GroupSpec::DihedralOfOrder(n) => {
            let m = (n / 2) as usize;
            Ok(match m {
                1 => vec![transposition(2, 0, 1)],
                2 => vec![transposition(4, 0, 1), transposition(4, 2, 3)],
                _ => {
                    let reflection =
                        Permutation::from_images((0..m).map(|i| (m - 1 - i) as u16).collect())
                            .expect("valid reflection");
                    vec![cycle_perm(m), reflection]
                }
            })
        }
        GroupSpec::Quaternion8 => Ok(vec![
            Permutation::parse("(1,2,3,4)(5,6,7,8)")?,
            Permutation::parse("(1,5,3,7)(2,8,4,6)")?,
        ]),
        GroupSpec::SpecialLinear2(p) => Ok(sl2_generators(p as usize)),
        GroupSpec::Product(ref factors) => {
            let parts: Vec<(usize, Vec<Permutation>)> = factors
                .iter()
                .map(|f| Ok((spec_degree(f)?, generators_for(f)?)))
                .collect::<Result<_>>()?;
            let total: usize = parts.iter().map(|(d, _)| d).sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            for (d, factor_gens) in parts {
                for g in factor_gens {
                    let images = (0..total)
                        .map(|x| {
                            if x >= offset && x < offset + d {
                                (offset + g.apply(x - offset)) as u16
                            } else {
                                x as u16
                            }
                        })
                        .collect();
                    gens.push(Permutation::from_images(images)?);
                }
                offset += d;
            }
            Ok(gens)
        }
        GroupSpec::GeneratorFile(ref path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let gens = parse_generator_file(&text)?;
            if gens.is_empty() {
                return Err(Error::EmptyGenerators);
            }
            Ok(gens)
        }
    }
}

fn spec_degree(spec: &GroupSpec) -> Result<usize> {
    Ok(generators_for(spec)?[0].degree())
}

/// Generators of SL(2, p) acting on the p^2 - 1 nonzero column vectors of
/// F_p^2: the two elementary matrices with a single off-diagonal 1.
fn sl2_generators(p: usize) -> Vec<Permutation> {
    let idx = |x: usize, y: usize| (x * p + y - 1) as u16;
    let action = |a: usize, b: usize, c: usize, d: usize| {
        let images = (0..p * p - 1)
            .map(|i| {
                let (x, y) = ((i + 1) / p, (i + 1) % p);
                idx((a * x + b * y) % p, (c * x + d * y) % p)
            })
            .collect();
        Permutation::from_images(images).expect("linear maps permute nonzero vectors")
    };
    vec![action(1, 1, 0, 1), action(1, 0, 1, 1)]
}

/// Builds the group described by a spec, capping the order.
pub fn make_group(spec: &GroupSpec, cap: OrderCap) -> Result<FiniteGroup> {
    spec.validate()?;
    if let Some(order) = spec.known_order() {
        if order > cap.get() as u128 {
            return Err(Error::OrderCapExceeded {
                order: u64::try_from(order).unwrap_or(u64::MAX),
                cap: cap.get(),
            });
        }
    }
    let gens = generators_for(spec)?;
    let group = FiniteGroup::generate(&gens, cap)?;
    if let Some(order) = spec.known_order() {
        if group.order() as u128 != order {
            return Err(Error::Invariant(format!(
                "expected order {order}, generated {}",
                group.order()
            )));
        }
    }
    Ok(group)
}
