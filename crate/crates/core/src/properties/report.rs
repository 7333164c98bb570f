use serde::Serialize;

use super::{
    classify_rank2, classify_rank3, difference_singleton, irredundancy_violation, l1_violation,
    l2_violation, strong_irredundancy_violation, Witness,
};
use crate::lattice::{dacey_violation, lattice_cap_from_env, ClosureLattice};
use crate::metric::{diameter, is_connected, Distance};
use crate::space::OrthoSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "MATCHING_2ABPHI")]
    Matching,
    #[serde(rename = "WINDMILL_3ABPHI")]
    Windmill,
    #[serde(rename = "OTHER")]
    Other,
}

/// Everything this crate can say about one space.
///
/// `dacey` and `mo_index` need the closure lattice; when it exceeds the cap
/// they are left `None` and `lattice_capped` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub rank: usize,
    pub connected: bool,
    /// `None` for the one-point space.
    pub diameter: Option<Distance>,
    pub l1: bool,
    pub l2: bool,
    pub linear: bool,
    pub irredundant: bool,
    pub strongly_irredundant: bool,
    pub irreducible: bool,
    pub dacey: Option<bool>,
    pub mo_index: Option<usize>,
    pub lattice_capped: bool,
    pub classification: Classification,
    pub witnesses: Vec<Witness>,
}

pub fn full_report(space: &OrthoSpace) -> PropertyReport {
    full_report_with_cap(space, lattice_cap_from_env())
}

pub fn full_report_with_cap(space: &OrthoSpace, cap: usize) -> PropertyReport {
    let l1 = l1_violation(space);
    let l2 = l2_violation(space);
    let irr = irredundancy_violation(space);
    let strong = strong_irredundancy_violation(space);
    let (dacey, mo_index, capped, dacey_witness) =
        match ClosureLattice::of_space_with_cap(space, cap) {
            Ok(lattice) => {
                let v = dacey_violation(space, &lattice);
                (Some(v.is_none()), lattice.match_mo(), false, v)
            }
            Err(_) => (None, None, true, None),
        };
    let classification = if classify_rank2(space).is_some() {
        Classification::Matching
    } else if classify_rank3(space).is_some() {
        Classification::Windmill
    } else {
        Classification::Other
    };
    let mut witnesses: Vec<Witness> = [l1, l2, irr, strong].into_iter().flatten().collect();
    if let Some(v) = dacey_witness {
        witnesses.push(Witness::DaceyFail {
            closed: v.closed,
            maximal: v.maximal,
        });
    }
    witnesses.extend(difference_singleton(space));
    PropertyReport {
        n: space.n(),
        rank: space.rank(),
        connected: is_connected(space),
        diameter: diameter(space).ok(),
        l1: l1.is_none(),
        l2: l2.is_none(),
        linear: l1.is_none() && l2.is_none(),
        irredundant: irr.is_none(),
        strongly_irredundant: strong.is_none(),
        irreducible: space.is_irreducible(),
        dacey,
        mo_index,
        lattice_capped: capped,
        classification,
        witnesses,
    }
}
