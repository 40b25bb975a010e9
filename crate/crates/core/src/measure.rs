//! Chermak-Delgado measures `m_G(H) = |H|·|C_G(H)|`, the set of values they
//! take, and the subgroups of maximum measure.

use serde::Serialize;

use crate::arith::tau;
use crate::error::{Error, Result};
use crate::group::{Group, GroupHash};
use crate::lattice::{self, Subgroup, SubgroupLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureRecord {
    pub subgroup_index: usize,
    pub h_size: u64,
    pub centralizer_size: u64,
    pub measure: u64,
}

/// One row per conjugacy class of subgroups; measures are constant on
/// classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub h_order: u64,
    pub class_size: usize,
    pub centralizer_order: u64,
    pub measure: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub group_hash: GroupHash,
    pub order: u64,
    pub center_order: u64,
    pub records: Vec<MeasureRecord>,
    pub classes: Vec<ClassRow>,
    /// Distinct measures, strictly increasing.
    pub im: Vec<u64>,
    pub im_count: usize,
    pub max_measure: u64,
    pub cd_members: Vec<usize>,
}

impl SpectrumReport {
    pub fn min_measure(&self) -> u64 {
        self.im[0]
    }

    pub fn measure_of(&self, subgroup_index: usize) -> u64 {
        self.records[subgroup_index].measure
    }
}

fn checked_measure(h: usize, c: usize) -> Result<u64> {
    (h as u64)
        .checked_mul(c as u64)
        .ok_or_else(|| Error::InvalidState(format!("measure {h}·{c} overflows")))
}

/// `|H|·|C_G(H)|`.
pub fn measure(g: &Group, h: &Subgroup) -> u64 {
    checked_measure(h.size(), lattice::centralizer_order(g, h)).expect("measure fits in u64")
}

/// Measures of every subgroup in the lattice, with the derived spectrum.
pub fn spectrum(g: &Group, lattice: &SubgroupLattice) -> Result<SpectrumReport> {
    if lattice.parent() != g.hash() {
        return Err(Error::InvalidParameter("lattice belongs to a different group".into()));
    }
    let mut records = Vec::with_capacity(lattice.len());
    for (i, h) in lattice.subgroups().iter().enumerate() {
        let c = lattice::centralizer_order(g, h);
        records.push(MeasureRecord {
            subgroup_index: i,
            h_size: h.size() as u64,
            centralizer_size: c as u64,
            measure: checked_measure(h.size(), c)?,
        });
    }
    let mut im: Vec<u64> = records.iter().map(|r| r.measure).collect();
    im.sort_unstable();
    im.dedup();
    let max_measure = *im.last().expect("lattice contains the trivial subgroup");
    let cd_members = records
        .iter()
        .filter(|r| r.measure == max_measure)
        .map(|r| r.subgroup_index)
        .collect();
    let classes = lattice
        .classes()
        .iter()
        .map(|class| {
            let r = records[class[0]];
            ClassRow {
                h_order: r.h_size,
                class_size: class.len(),
                centralizer_order: r.centralizer_size,
                measure: r.measure,
            }
        })
        .collect();
    let center_order = records[lattice.whole_index()].centralizer_size;
    Ok(SpectrumReport {
        group_hash: g.hash(),
        order: g.order() as u64,
        center_order,
        records,
        classes,
        im_count: im.len(),
        im,
        max_measure,
        cd_members,
    })
}

/// Subgroups attaining the maximum measure.
pub fn cd_lattice(lattice: &SubgroupLattice, report: &SpectrumReport) -> Vec<Subgroup> {
    report
        .cd_members
        .iter()
        .map(|&i| lattice.get(i).clone())
        .collect()
}

/// `(τ(n)-1)(τ(n)-2)/2 + τ(m)` for a group of order `n` with center of
/// order `m`.
pub fn center_divisor_bound(n: u64, m: u64) -> u64 {
    let t = tau(n);
    (t - 1) * t.saturating_sub(2) / 2 + tau(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub bound: u64,
    pub holds: bool,
}

pub fn measure_bound_section4(report: &SpectrumReport) -> BoundCheck {
    let bound = center_divisor_bound(report.order, report.center_order);
    BoundCheck {
        bound,
        holds: report.im_count as u64 <= bound,
    }
}
