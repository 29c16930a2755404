//! Generalized open families (semi, pre, b, beta) and their closure
//! operators.
//!
//! Each family is computed by filtering every subset of the ground set
//! against its defining containment formula, so the cost is `O(2^n)` — exact
//! and fine at the sizes this crate enumerates. Kind-closed sets are always
//! derived by complementation, never stored separately.

use crate::topology::{SetFamily, Subset, Topology};

/// Which notion of "open" a hierarchy query quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpenKind {
    Open,
    /// `A ⊆ Cl(Int(A))`
    Semi,
    /// `A ⊆ Int(Cl(A))`
    Pre,
    /// `A ⊆ Cl(Int(A)) ∪ Int(Cl(A))`
    B,
    /// `A ⊆ Cl(Int(Cl(A)))`
    Beta,
}

impl OpenKind {
    pub const ALL: [OpenKind; 5] =
        [OpenKind::Open, OpenKind::Semi, OpenKind::Pre, OpenKind::B, OpenKind::Beta];

    /// The four generalized kinds, without plain `Open`.
    pub const GENERALIZED: [OpenKind; 4] =
        [OpenKind::Semi, OpenKind::Pre, OpenKind::B, OpenKind::Beta];

    pub fn name(self) -> &'static str {
        match self {
            OpenKind::Open => "open",
            OpenKind::Semi => "semi",
            OpenKind::Pre => "pre",
            OpenKind::B => "b",
            OpenKind::Beta => "beta",
        }
    }

    pub fn parse(s: &str) -> Option<OpenKind> {
        match s {
            "open" => Some(OpenKind::Open),
            "semi" => Some(OpenKind::Semi),
            "pre" => Some(OpenKind::Pre),
            "b" => Some(OpenKind::B),
            "beta" => Some(OpenKind::Beta),
            _ => None,
        }
    }
}

/// Does `a` satisfy the defining formula of the kind?
pub fn is_k_open(t: &Topology, kind: OpenKind, a: Subset) -> bool {
    match kind {
        OpenKind::Open => t.is_open(a),
        OpenKind::Semi => a.is_subset_of(t.closure(t.interior(a))),
        OpenKind::Pre => a.is_subset_of(t.interior(t.closure(a))),
        OpenKind::B => {
            let ci = t.closure(t.interior(a));
            let ic = t.interior(t.closure(a));
            a.is_subset_of(ci.union(ic))
        }
        OpenKind::Beta => a.is_subset_of(t.closure(t.interior(t.closure(a)))),
    }
}

/// The exact family of kind-open sets, canonical order. `Open` returns the
/// topology's own opens.
pub fn k_opens(t: &Topology, kind: OpenKind) -> SetFamily {
    if kind == OpenKind::Open {
        return t.opens().clone();
    }
    t.ground()
        .subsets()
        .filter(|&a| is_k_open(t, kind, a))
        .collect()
}

/// Smallest kind-closed superset of `a`: the intersection of all complements
/// of kind-open sets that contain `a`. Every kind's open family is closed
/// under arbitrary unions, so this intersection is itself kind-closed.
pub fn k_closure(t: &Topology, kind: OpenKind, a: Subset) -> Subset {
    k_closure_over(&k_opens(t, kind), a)
}

/// Kind-closure against an already-computed kind-open family: the complement
/// of the union of the family members disjoint from `a`.
pub fn k_closure_over(family: &SetFamily, a: Subset) -> Subset {
    let mut escape = a.minus(a);
    for o in family.iter() {
        if !o.meets(a) {
            escape = escape.union(o);
        }
    }
    escape.complement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{GroundSet, SetFamily, Topology};

    /// X = {a b c d}, opens {a} {c} {a c} {a c d}.
    fn space_ncf11() -> Topology {
        let g = GroundSet::letters(4);
        let fam = SetFamily::new(vec![
            g.empty_set(),
            g.subset_of_points([0]),
            g.subset_of_points([2]),
            g.subset_of_points([0, 2]),
            g.subset_of_points([0, 2, 3]),
            g.full_set(),
        ]);
        Topology::validate(g, fam).unwrap()
    }

    #[test]
    fn semi_opens_of_the_four_point_space() {
        let t = space_ncf11();
        let g = t.ground().clone();
        let so = k_opens(&t, OpenKind::Semi);
        let expect: SetFamily = [
            vec![],
            vec![0],
            vec![2],
            vec![0, 2],
            vec![0, 1],
            vec![0, 3],
            vec![1, 2],
            vec![2, 3],
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
            vec![0, 1, 2, 3],
        ]
        .into_iter()
        .map(|pts| g.subset_of_points(pts))
        .collect();
        assert_eq!(so, expect);
        assert_eq!(so.len(), 13);
    }

    #[test]
    fn b_opens_of_the_indiscrete_pair() {
        let t = Topology::indiscrete(GroundSet::letters(2));
        assert_eq!(k_opens(&t, OpenKind::B).len(), 4);
        // and semi-opens collapse to {∅, X}
        assert_eq!(k_opens(&t, OpenKind::Semi).len(), 2);
    }

    #[test]
    fn every_kind_is_everything_on_a_discrete_space() {
        let t = Topology::discrete(GroundSet::letters(3));
        for kind in OpenKind::ALL {
            assert_eq!(k_opens(&t, kind).len(), 8);
        }
    }

    #[test]
    fn inclusion_chains_hold_on_the_four_point_space() {
        let t = space_ncf11();
        let so = k_opens(&t, OpenKind::Semi);
        let po = k_opens(&t, OpenKind::Pre);
        let bo = k_opens(&t, OpenKind::B);
        let beta = k_opens(&t, OpenKind::Beta);
        for o in t.opens().iter() {
            assert!(so.contains(o) && po.contains(o));
        }
        for s in so.iter() {
            assert!(bo.contains(s));
        }
        for s in po.iter() {
            assert!(bo.contains(s));
        }
        for s in bo.iter() {
            assert!(beta.contains(s));
        }
    }

    #[test]
    fn k_closure_basics() {
        let t = space_ncf11();
        let g = t.ground().clone();
        for kind in OpenKind::ALL {
            assert_eq!(k_closure(&t, kind, g.full_set()), g.full_set());
        }
        let disc = Topology::discrete(GroundSet::letters(3));
        let s = disc.ground().subset_of_points([1]);
        for kind in OpenKind::ALL {
            assert_eq!(k_closure(&disc, kind, s), s);
        }
        // scl({a}) on the four-point space: {a} is itself semi-closed
        let a = g.subset_of_points([0]);
        let scl = k_closure(&t, OpenKind::Semi, a);
        assert!(a.is_subset_of(scl));
        assert_eq!(scl, a);
        // k-closure never exceeds the ordinary closure
        for sub in g.subsets() {
            for kind in OpenKind::ALL {
                let kc = k_closure(&t, kind, sub);
                assert!(sub.is_subset_of(kc));
                assert!(kc.is_subset_of(t.closure(sub)));
            }
        }
    }

    #[test]
    fn open_kind_closure_equals_topological_closure() {
        let t = space_ncf11();
        for sub in t.ground().subsets() {
            assert_eq!(k_closure(&t, OpenKind::Open, sub), t.closure(sub));
        }
    }

    #[test]
    fn members_recheck_their_formula() {
        let t = space_ncf11();
        for kind in OpenKind::ALL {
            for s in k_opens(&t, kind).iter() {
                assert!(is_k_open(&t, kind, s));
            }
        }
    }
}
