//! End-to-end analyses tying the stages together.
//!
//! [`analyze_group`] runs a built group through subgroup enumeration, the
//! table of marks, the prime partitions and the gluing walk. The partitions
//! are computed both from mark column congruences and independently from
//! normal extensions of the subgroups; a disagreement is reported as an
//! error rather than silently picking one. [`analyze_table`] starts from a
//! bare table of marks, where only the congruence method is available.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::galois::{compute_invariant, ComponentInvariant};
use crate::group::FiniteGroup;
use crate::lattice::{conjugacy_classes, ClassTable};
use crate::marks::{
    cyclic_extensions_marks, cyclic_extensions_structural, prime_divisors, table_of_marks,
    PrimePartition, TableOfMarks,
};

/// Partition method note when both methods ran and agreed.
pub const METHOD_CROSS_CHECKED: &str =
    "mark column congruence, cross-checked against normal extensions";

/// Partition method note when only the table of marks is available.
pub const METHOD_MARKS_ONLY: &str = "mark column congruence";

/// Everything computed for one group.
pub struct GroupAnalysis {
    pub name: String,
    pub group: FiniteGroup,
    pub classes: ClassTable,
    pub tom: TableOfMarks,
    pub partitions: BTreeMap<u64, PrimePartition>,
    pub invariant: ComponentInvariant,
}

/// Everything computable from a bare table of marks.
pub struct TableAnalysis {
    pub tom: TableOfMarks,
    pub partitions: BTreeMap<u64, PrimePartition>,
    pub invariant: ComponentInvariant,
}

/// The mark column congruence partitions for every prime dividing the
/// group order.
pub fn marks_partitions(tom: &TableOfMarks) -> Result<BTreeMap<u64, PrimePartition>> {
    prime_divisors(tom.group_order())?
        .into_iter()
        .map(|p| Ok((p, cyclic_extensions_marks(tom, p)?)))
        .collect()
}

/// Full analysis of a built group, with the two partition methods compared
/// at every prime.
pub fn analyze_group(name: &str, group: FiniteGroup) -> Result<GroupAnalysis> {
    let classes = conjugacy_classes(&group)?;
    let tom = table_of_marks(&classes)?.with_name(Some(name.to_owned()));
    let partitions = marks_partitions(&tom)?;
    for (&p, by_marks) in &partitions {
        let structural = cyclic_extensions_structural(&group, &classes, p)?;
        if by_marks != &structural {
            return Err(Error::Invariant(format!(
                "partition methods disagree for {name} at prime {p}"
            )));
        }
    }
    let invariant = compute_invariant(&tom, &partitions)?;
    Ok(GroupAnalysis {
        name: name.to_owned(),
        group,
        classes,
        tom,
        partitions,
        invariant,
    })
}

/// Analysis of a table of marks without its group.
pub fn analyze_table(tom: TableOfMarks) -> Result<TableAnalysis> {
    let partitions = marks_partitions(&tom)?;
    let invariant = compute_invariant(&tom, &partitions)?;
    Ok(TableAnalysis {
        tom,
        partitions,
        invariant,
    })
}
