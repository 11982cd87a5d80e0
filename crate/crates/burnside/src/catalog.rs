//! The built-in group catalog used by self tests.
//!
//! One entry per built-in group up to a given order bound: all cyclic and
//! dihedral groups, the symmetric and alternating groups, the quaternion
//! group, SL(2, p) for p in {3, 5, 7}, and a fixed list of abelian
//! products. Families are deduplicated against each other: entries that
//! would repeat an isomorphism type under a different name (D2, S2, A3,
//! SL2_2, coprime cyclic products) are left out.

use crate::group::GroupSpec;

/// A named catalog entry with its order known up front.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub order: u64,
}

fn entry(spec: GroupSpec) -> CatalogEntry {
    let order = spec.known_order().expect("catalog orders are closed-form");
    CatalogEntry {
        name: spec.to_string(),
        spec,
        order: u64::try_from(order).expect("catalog orders fit u64"),
    }
}

/// All built-in groups of order at most `max_order`, sorted by order and
/// then name.
pub fn builtin_catalog(max_order: u64) -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for n in 1..=max_order {
        entries.push(entry(GroupSpec::Cyclic(n)));
    }
    for n in (4..=max_order).step_by(2) {
        entries.push(entry(GroupSpec::DihedralOfOrder(n)));
    }
    for n in 3.. {
        let spec = GroupSpec::Symmetric(n);
        if spec.known_order().expect("closed form") > max_order as u128 {
            break;
        }
        entries.push(entry(spec));
    }
    for n in 4.. {
        let spec = GroupSpec::Alternating(n);
        if spec.known_order().expect("closed form") > max_order as u128 {
            break;
        }
        entries.push(entry(spec));
    }
    entries.push(entry(GroupSpec::Quaternion8));
    for p in [3, 5, 7] {
        entries.push(entry(GroupSpec::SpecialLinear2(p)));
    }
    let products: [&[u64]; 12] = [
        &[2, 2],
        &[2, 4],
        &[2, 2, 2],
        &[3, 3],
        &[2, 6],
        &[4, 4],
        &[2, 8],
        &[3, 6],
        &[2, 10],
        &[5, 5],
        &[3, 9],
        &[6, 6],
    ];
    for factors in products {
        entries.push(entry(GroupSpec::Product(
            factors.iter().map(|&n| GroupSpec::Cyclic(n)).collect(),
        )));
    }
    entries.retain(|e| e.order <= max_order);
    entries.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    entries
}
