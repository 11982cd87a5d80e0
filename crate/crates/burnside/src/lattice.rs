//! Subgroup lattices and conjugacy classes of subgroups.
//!
//! Subgroups are enumerated by breadth-first join closure: every cyclic
//! subgroup is a seed, and known subgroups are repeatedly joined with cyclic
//! subgroups until nothing new appears. Joining with cyclic subgroups of
//! prime power order suffices: any chain of joins that builds a subgroup
//! from its cyclic parts can be reordered to add one prime power generator
//! at a time.
//!
//! Conjugacy classes of subgroups are orbits of the conjugation action,
//! found by closing each subgroup under conjugation by the group
//! generators. Classes are sorted by subgroup order with ties broken by the
//! lexicographically smallest member of the class, so the trivial subgroup
//! is class 0 and the whole group is the last class.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    representative: ElementSet,
    order: u64,
    conjugates: Vec<ElementSet>,
    normalizer_order: u64,
    weyl_order: u64,
}

impl SubgroupClass {
    /// The lexicographically smallest conjugate.
    pub fn representative(&self) -> &ElementSet {
        &self.representative
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// All conjugates, sorted.
    pub fn conjugates(&self) -> &[ElementSet] {
        &self.conjugates
    }

    pub fn normalizer_order(&self) -> u64 {
        self.normalizer_order
    }

    /// Order of the quotient of the normalizer by the subgroup.
    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }
}

/// The conjugacy classes of subgroups of one group, in canonical order.
#[derive(Clone, Debug)]
pub struct ClassTable {
    classes: Vec<SubgroupClass>,
    group_order: u64,
    subgroup_count: usize,
}

impl ClassTable {
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Total number of subgroups over all classes.
    pub fn subgroup_count(&self) -> usize {
        self.subgroup_count
    }
}

/// All subgroups of the group, sorted lexicographically by member list.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<ElementSet> {
    let order = group.order();
    // Distinct cyclic subgroups, each with one generating element.
    let mut cyclic: Vec<(ElementSet, u16)> = Vec::new();
    let mut seen_cyclic: HashSet<ElementSet> = HashSet::new();
    for a in 0..order as u16 {
        let set = group.cyclic_subgroup(a);
        if seen_cyclic.insert(set.clone()) {
            cyclic.push((set, a));
        }
    }
    let prime_power: Vec<(ElementSet, u16)> = cyclic
        .iter()
        .filter(|(set, _)| is_prime_power(set.count() as u64))
        .cloned()
        .collect();

    let mut known: HashSet<ElementSet> = HashSet::new();
    let mut queue: VecDeque<(ElementSet, Vec<u16>)> = VecDeque::new();
    for (set, gen) in &cyclic {
        if known.insert(set.clone()) {
            queue.push_back((set.clone(), vec![*gen]));
        }
    }
    while let Some((subgroup, gens)) = queue.pop_front() {
        for (seed, seed_gen) in &prime_power {
            if seed.is_subset_of(&subgroup) {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(*seed_gen);
            let joined = group.generated_subgroup(&joined_gens);
            if known.insert(joined.clone()) {
                queue.push_back((joined, joined_gens));
            }
        }
    }

    let mut subgroups: Vec<ElementSet> = known.into_iter().collect();
    subgroups.sort_unstable();
    subgroups
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 0;
    for candidate in 2.. {
        if candidate * candidate > n {
            break;
        }
        if n.is_multiple_of(candidate) {
            p = candidate;
            break;
        }
    }
    if p == 0 {
        return true;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn conjugate_subgroup(group: &FiniteGroup, subgroup: &ElementSet, by: u16) -> ElementSet {
    let mut image = ElementSet::new(group.order());
    for x in subgroup.iter() {
        image.insert(group.conjugate(x, by));
    }
    image
}

/// Groups the subgroups into conjugacy classes and orders them canonically.
pub fn conjugacy_classes(group: &FiniteGroup) -> Result<ClassTable> {
    let subgroups = all_subgroups(group);
    let group_order = group.order() as u64;
    let mut assigned: HashSet<ElementSet> = HashSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for subgroup in &subgroups {
        if assigned.contains(subgroup) {
            continue;
        }
        // Orbit of the conjugation action, closed under the group generators.
        let mut orbit: HashSet<ElementSet> = HashSet::new();
        orbit.insert(subgroup.clone());
        let mut queue = vec![subgroup.clone()];
        while let Some(current) = queue.pop() {
            for &g in group.generators() {
                let image = conjugate_subgroup(group, &current, g);
                if orbit.insert(image.clone()) {
                    queue.push(image);
                }
            }
        }
        let mut conjugates: Vec<ElementSet> = orbit.into_iter().collect();
        conjugates.sort_unstable();
        for c in &conjugates {
            assigned.insert(c.clone());
        }
        let count = conjugates.len() as u64;
        if !group_order.is_multiple_of(count) {
            return Err(Error::Invariant(format!(
                "class size {count} does not divide the group order {group_order}"
            )));
        }
        let order = subgroup.count() as u64;
        let normalizer_order = group_order / count;
        if !normalizer_order.is_multiple_of(order) {
            return Err(Error::Invariant(format!(
                "normalizer order {normalizer_order} not divisible by subgroup order {order}"
            )));
        }
        // The first unassigned subgroup in lexicographic order is the least
        // member of its class.
        classes.push(SubgroupClass {
            representative: conjugates[0].clone(),
            order,
            conjugates,
            normalizer_order,
            weyl_order: normalizer_order / order,
        });
    }
    classes.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.representative.cmp(&b.representative))
    });

    let table = ClassTable {
        classes,
        group_order,
        subgroup_count: subgroups.len(),
    };
    validate_class_table(&table)?;
    Ok(table)
}

fn validate_class_table(table: &ClassTable) -> Result<()> {
    let classes = table.classes();
    let fail = |msg: String| Err(Error::Invariant(msg));
    let Some(first) = classes.first() else {
        return fail("no subgroup classes".into());
    };
    if first.order != 1 || first.conjugates.len() != 1 {
        return fail("first class is not the trivial subgroup".into());
    }
    let last = classes.last().expect("nonempty");
    if last.order != table.group_order || last.conjugates.len() != 1 {
        return fail("last class is not the whole group".into());
    }
    let total: usize = classes.iter().map(|c| c.conjugates.len()).sum();
    if total != table.subgroup_count {
        return fail("class sizes do not sum to the subgroup count".into());
    }
    for c in classes {
        if c.normalizer_order * c.conjugates.len() as u64 != table.group_order {
            return fail("normalizer order inconsistent with class size".into());
        }
        if c.weyl_order * c.order != c.normalizer_order {
            return fail("weyl order inconsistent with normalizer".into());
        }
    }
    Ok(())
}

/// Whether some conjugate of class `j` is contained in the representative
/// of class `i`.
pub fn is_subconjugate(table: &ClassTable, j: usize, i: usize) -> bool {
    let target = table.classes()[i].representative();
    table.classes()[j]
        .conjugates()
        .iter()
        .any(|c| c.is_subset_of(target))
}
