//! Definition-literal mirrors of the primary operators, for differential
//! testing. Nothing here calls the primary closure/interior/scan code or the
//! cached iterate tables: closures are per-point neighborhood scans, ideal
//! membership is a linear scan of the member list, star-opens are filtered
//! against the basis criterion pointwise, and iterates are re-stepped from
//! the raw map. Slow and proud of it.

use crate::density::DensityStatus;
use crate::dynamics::{DynError, TransitivityKind, Verdict};
use crate::genopen::OpenKind;
use crate::ideal::Ideal;
use crate::model::Model;
use crate::topology::{SetFamily, Subset, Topology};

fn in_ideal(i: &Ideal, s: Subset) -> bool {
    i.members().iter().any(|m| m == s)
}

fn closure(t: &Topology, a: Subset) -> Subset {
    let g = t.ground();
    let mut bits = 0u32;
    'points: for x in 0..g.len() {
        for o in t.opens().iter() {
            if o.contains(x) && !o.meets(a) {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    g.subset_from_bits(bits)
}

fn interior(t: &Topology, a: Subset) -> Subset {
    let g = t.ground();
    let mut bits = 0u32;
    for x in 0..g.len() {
        if t.opens().iter().any(|o| o.contains(x) && o.is_subset_of(a)) {
            bits |= 1 << x;
        }
    }
    g.subset_from_bits(bits)
}

fn k_open(t: &Topology, kind: OpenKind, a: Subset) -> bool {
    match kind {
        OpenKind::Open => t.opens().iter().any(|o| o == a),
        OpenKind::Semi => a.is_subset_of(closure(t, interior(t, a))),
        OpenKind::Pre => a.is_subset_of(interior(t, closure(t, a))),
        OpenKind::B => a.is_subset_of(closure(t, interior(t, a)).union(interior(t, closure(t, a)))),
        OpenKind::Beta => a.is_subset_of(closure(t, interior(t, closure(t, a)))),
    }
}

fn k_family(t: &Topology, kind: OpenKind) -> SetFamily {
    t.ground().subsets().filter(|&a| k_open(t, kind, a)).collect()
}

pub fn local_function(t: &Topology, i: &Ideal, a: Subset) -> Subset {
    let g = t.ground();
    let mut bits = 0u32;
    'points: for x in 0..g.len() {
        for u in t.opens().iter() {
            if u.contains(x) && in_ideal(i, u.intersect(a)) {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    g.subset_from_bits(bits)
}

pub fn density_status(t: &Topology, i: &Ideal, a: Subset) -> DensityStatus {
    let dense = t.opens().iter().all(|o| o.is_empty() || o.meets(a));
    let i_dense = t
        .opens()
        .iter()
        .all(|o| o.is_empty() || !in_ideal(i, o.intersect(a)));
    // Star-dense iff `a` meets every nonempty basis element `O ∖ I₁` of the
    // star topology (every nonempty star-open contains a nonempty basis
    // element, and basis elements are star-open).
    let mut star_dense = true;
    'basis: for o in t.opens().iter() {
        for m in i.members().iter() {
            let b = o.minus(m);
            if !b.is_empty() && !b.meets(a) {
                star_dense = false;
                break 'basis;
            }
        }
    }
    let nowhere_dense = interior(t, closure(t, a)).is_empty();
    DensityStatus { dense, i_dense, star_dense, nowhere_dense }
}

/// Distinct positive iterate image tables, re-stepped from the raw map.
fn iterates(model: &Model) -> Vec<Vec<usize>> {
    let f = model.map();
    let n = model.ground().len();
    let first: Vec<usize> = (0..n).map(|x| f.apply(x)).collect();
    let mut tables = vec![first];
    loop {
        let last = tables.last().unwrap();
        let next: Vec<usize> = last.iter().map(|&y| f.apply(y)).collect();
        if tables.contains(&next) {
            return tables;
        }
        tables.push(next);
    }
}

fn image(table: &[usize], g: &crate::topology::GroundSet, s: Subset) -> Subset {
    let mut bits = 0u32;
    for x in s.iter() {
        bits |= 1 << table[x];
    }
    g.subset_from_bits(bits)
}

pub fn check_transitive(model: &Model, kind: TransitivityKind) -> Result<Verdict, DynError> {
    if kind.ideal_graded && in_ideal(model.ideal(), model.ground().full_set()) {
        return Err(DynError::ImproperIdeal);
    }
    let fam = k_family(model.topology(), kind.base);
    let tables = iterates(model);
    let g = model.ground();
    for u in fam.iter() {
        if u.is_empty() {
            continue;
        }
        for v in fam.iter() {
            if v.is_empty() {
                continue;
            }
            let mut ok = false;
            for tbl in &tables {
                let overlap = image(tbl, g, u).intersect(v);
                let pass = if kind.ideal_graded {
                    !in_ideal(model.ideal(), overlap)
                } else {
                    !overlap.is_empty()
                };
                if pass {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(Verdict {
                    holds: false,
                    witness: Some(crate::dynamics::PairWitness {
                        u,
                        v,
                        n_range: (1, tables.len() as u32),
                    }),
                });
            }
        }
    }
    Ok(Verdict { holds: true, witness: None })
}

pub fn nonwandering_set(model: &Model, kind: TransitivityKind) -> Result<Subset, DynError> {
    if kind.ideal_graded && in_ideal(model.ideal(), model.ground().full_set()) {
        return Err(DynError::ImproperIdeal);
    }
    let fam = k_family(model.topology(), kind.base);
    let tables = iterates(model);
    let g = model.ground();
    let mut bits = 0u32;
    'points: for x in 0..g.len() {
        for m in fam.iter() {
            if !m.contains(x) {
                continue;
            }
            let mut returns = false;
            for tbl in &tables {
                let overlap = image(tbl, g, m).intersect(m);
                let pass = if kind.ideal_graded {
                    !in_ideal(model.ideal(), overlap)
                } else {
                    !overlap.is_empty()
                };
                if pass {
                    returns = true;
                    break;
                }
            }
            if !returns {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    Ok(g.subset_from_bits(bits))
}
