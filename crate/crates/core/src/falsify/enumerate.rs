//! Canonical enumeration of every topology, ideal, and self-map on a small
//! labeled ground set.
//!
//! Topologies are generated through their specialization preorders (a finite
//! topology is exactly an Alexandrov topology, so topologies on `n` labeled
//! points biject with preorders on them) and then sorted by family mask, so
//! the order is canonical regardless of how they were produced. An
//! independent brute-force route that filters every candidate family through
//! the validator lives in [`topologies_by_family_filter`] and is compared
//! against the primary route in tests; it is feasible up to `n = 4`.

use crate::ideal::Ideal;
use crate::topology::{GroundSet, SelfMap, SetFamily, Topology};

use super::FalsifyError;

/// Largest ground size the enumerators accept. Counts grow as 1, 4, 29,
/// 355, 6942 labeled topologies for n = 1..=5.
pub const MAX_ENUM_POINTS: usize = 5;

fn check_size(n: usize) -> Result<(), FalsifyError> {
    if n == 0 || n > MAX_ENUM_POINTS {
        return Err(FalsifyError::SizeTooLarge(n));
    }
    Ok(())
}

/// Every topology on the `n`-point ground set `a, b, ...`, exactly once, in
/// canonical (family-mask ascending) order.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Topology>, FalsifyError> {
    check_size(n)?;
    let ground = GroundSet::letters(n);
    // rows[i] = bit mask of the minimal neighborhood of point i
    let mut rows = vec![0u32; n];
    let mut out = Vec::new();
    collect_preorders(&ground, &mut rows, 0, &mut out);
    out.sort_by_key(|t| t.opens().family_mask());
    Ok(out)
}

fn collect_preorders(ground: &GroundSet, rows: &mut Vec<u32>, i: usize, out: &mut Vec<Topology>) {
    let n = ground.len();
    if i == n {
        if is_transitive(rows) {
            out.push(upsets_topology(ground, rows));
        }
        return;
    }
    let selfbit = 1u32 << i;
    for extra in 0..(1u32 << n) {
        if extra & selfbit != 0 {
            continue; // reflexive bit handled below
        }
        rows[i] = extra | selfbit;
        collect_preorders(ground, rows, i + 1, out);
    }
    rows[i] = 0;
}

/// `j in rows[i]` must imply `rows[j] ⊆ rows[i]`.
fn is_transitive(rows: &[u32]) -> bool {
    for &ri in rows {
        let mut rest = ri;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rows[j] & !ri != 0 {
                return false;
            }
        }
    }
    true
}

/// The open sets of the Alexandrov topology of a preorder: subsets closed
/// under each point's minimal neighborhood.
fn upsets_topology(ground: &GroundSet, rows: &[u32]) -> Topology {
    let n = ground.len();
    let mut members = Vec::new();
    'subs: for bits in 0..(1u32 << n) {
        let mut rest = bits;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rows[i] & !bits != 0 {
                continue 'subs;
            }
        }
        members.push(ground.subset_from_bits(bits));
    }
    let opens = SetFamily::new(members);
    Topology::validate(ground.clone(), opens).expect("up-set family is a topology")
}

/// One ideal `P(M)` per subset `M` of the ground set, in ascending order of
/// `M`'s bits: `2^n` ideals, of which `2^n - 1` are proper.
pub fn enumerate_ideals(n: usize) -> Result<Vec<Ideal>, FalsifyError> {
    check_size(n)?;
    let ground = GroundSet::letters(n);
    Ok(ground
        .subsets()
        .map(|m| Ideal::power_set_of(ground.clone(), m))
        .collect())
}

/// All `n^n` self-maps in image-tuple (lexicographic) order, optionally
/// filtered to the maps continuous for the given topology.
pub fn enumerate_selfmaps(
    n: usize,
    topology: Option<&Topology>,
    continuous_only: bool,
) -> Result<Vec<SelfMap>, FalsifyError> {
    check_size(n)?;
    let ground = match topology {
        Some(t) => t.ground().clone(),
        None => GroundSet::letters(n),
    };
    assert_eq!(ground.len(), n);
    let mut out = Vec::new();
    let mut images = vec![0usize; n];
    loop {
        let f = SelfMap::new(ground.clone(), images.clone()).unwrap();
        let keep = match (continuous_only, topology) {
            (true, Some(t)) => t.is_continuous(&f).holds,
            _ => true,
        };
        if keep {
            out.push(f);
        }
        // increment the image tuple like a base-n counter
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            images[pos] += 1;
            if images[pos] < n {
                break;
            }
            images[pos] = 0;
        }
    }
}

/// Independent brute-force route: filter every one of the `2^(2^n)` candidate
/// families through the topology validator. Feasible for `n <= 4`; the
/// canonical order (family mask ascending) falls out of the scan order.
pub fn topologies_by_family_filter(n: usize) -> Result<Vec<Topology>, FalsifyError> {
    check_size(n)?;
    if n > 4 {
        return Err(FalsifyError::SizeTooLarge(n));
    }
    let ground = GroundSet::letters(n);
    let subset_count = 1usize << n;
    let mut out = Vec::new();
    for family_mask in 0u64..(1u64 << subset_count) {
        let members: Vec<_> = (0..subset_count)
            .filter(|&i| family_mask & (1 << i) != 0)
            .map(|i| ground.subset_from_bits(i as u32))
            .collect();
        if let Ok(t) = Topology::validate(ground.clone(), SetFamily::new(members)) {
            out.push(t);
        }
    }
    Ok(out)
}
