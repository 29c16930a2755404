//! The three density predicates (dense, ideal-dense, star-dense) plus
//! nowhere-density, with their definitional equivalences cross-asserted in
//! debug builds. The release path computes each flag by its cheapest route;
//! the debug asserts exist because equivalent formulations drifting apart is
//! the main failure mode in this corner of the theory.

use crate::ideal::{cl_star, local_function, Ideal};
use crate::topology::{Subset, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityStatus {
    /// `Cl(A) = X`
    pub dense: bool,
    /// `A* = X`
    pub i_dense: bool,
    /// `Cl*(A) = X`
    pub star_dense: bool,
    /// `Int(Cl(A)) = ∅`
    pub nowhere_dense: bool,
}

pub fn density_status(t: &Topology, i: &Ideal, a: Subset) -> DensityStatus {
    let dense = t.closure(a).is_full();
    let i_dense = local_function(t, i, a).is_full();
    let star_dense = cl_star(t, i, a).is_full();
    let nowhere_dense = t.interior(t.closure(a)).is_empty();

    #[cfg(debug_assertions)]
    {
        assert_eq!(dense, t.opens().nonempty().all(|o| o.meets(a)));
        assert_eq!(
            i_dense,
            t.opens().nonempty().all(|o| !i.contains(o.intersect(a)))
        );
        assert_eq!(i_dense, crate::ideal::psi(t, i, a.complement()).is_empty());
        // generating the star topology per call is costly; cross-check it on
        // small grounds only (larger ones are covered by the oracle tests)
        if t.ground().len() <= 3 {
            let star = crate::ideal::star_topology(t, i);
            assert_eq!(star_dense, star.opens().nonempty().all(|o| o.meets(a)));
            assert_eq!(star_dense, star.closure(a).is_full());
        }
    }

    DensityStatus { dense, i_dense, star_dense, nowhere_dense }
}

/// Single-flag fast path: `A* = X`, no cross-asserts. The falsify suite
/// calls this once per candidate model, where the full status would be
/// wasted work.
pub fn is_i_dense(t: &Topology, i: &Ideal, a: Subset) -> bool {
    local_function(t, i, a).is_full()
}

/// Single-flag fast path: `Cl*(A) = X`.
pub fn is_star_dense(t: &Topology, i: &Ideal, a: Subset) -> bool {
    cl_star(t, i, a).is_full()
}

/// Decision with an optional witness subset, used by whole-space scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanVerdict {
    pub holds: bool,
    pub witness: Option<Subset>,
}

/// Is every dense subset ideal-dense? The witness is the first (canonical
/// order) dense-but-not-ideal-dense subset. Equivalent to the ideal being
/// completely codense, which the falsify suite checks on every enumerated
/// model.
pub fn dense_iff_i_dense_scan(t: &Topology, i: &Ideal) -> ScanVerdict {
    for a in t.ground().subsets() {
        if t.closure(a).is_full() && !is_i_dense(t, i, a) {
            return ScanVerdict { holds: false, witness: Some(a) };
        }
    }
    ScanVerdict { holds: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{GroundSet, SetFamily};

    fn remark_model() -> (Topology, Ideal) {
        let g = GroundSet::letters(4);
        let fam = SetFamily::new(vec![g.empty_set(), g.subset_of_points([0, 2, 3]), g.full_set()]);
        let t = Topology::validate(g.clone(), fam).unwrap();
        let i = Ideal::power_set_of(g, t.ground().subset_of_points([0, 2]));
        (t, i)
    }

    #[test]
    fn the_remark_subset_is_dense_but_not_ideal_dense() {
        let (t, i) = remark_model();
        let a = t.ground().subset_of_points([0, 1, 2]);
        let st = density_status(&t, &i, a);
        assert!(st.dense);
        assert!(!st.i_dense);
        // computed from the definition: {d} is a basic star-open missing A
        assert!(!st.star_dense);
        assert!(!st.nowhere_dense);
    }

    #[test]
    fn orbit_of_the_two_point_collapse_model_is_ideal_dense() {
        // X = {a b}, opens {a}, ideal P({b}): the set {a b} has A* = X
        let g = GroundSet::letters(2);
        let fam = SetFamily::new(vec![g.empty_set(), g.subset_of_points([0]), g.full_set()]);
        let t = Topology::validate(g.clone(), fam).unwrap();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([1]));
        let st = density_status(&t, &i, g.full_set());
        assert!(st.dense && st.i_dense && st.star_dense);
        // even the singleton {a} is ideal-dense here
        assert!(density_status(&t, &i, g.subset_of_points([0])).i_dense);
    }

    #[test]
    fn full_set_density_tracks_codensity() {
        let (t, i) = remark_model();
        let st = density_status(&t, &i, t.ground().full_set());
        assert!(st.dense && st.star_dense);
        // X is ideal-dense exactly when the ideal is codense, true here
        assert!(st.i_dense);
    }

    #[test]
    fn scan_on_the_remark_model_finds_a_witness() {
        let (t, i) = remark_model();
        let v = dense_iff_i_dense_scan(&t, &i);
        assert!(!v.holds);
        // first dense-but-not-ideal-dense subset in canonical order is {a}
        assert_eq!(v.witness, Some(t.ground().subset_of_points([0])));
        // the corpus witness {a b c} is also dense but not ideal-dense
        let st = density_status(&t, &i, t.ground().subset_of_points([0, 1, 2]));
        assert!(st.dense && !st.i_dense);
    }

    #[test]
    fn scan_holds_for_the_trivial_ideal() {
        let (t, _) = remark_model();
        let i = Ideal::trivial(t.ground().clone());
        assert!(dense_iff_i_dense_scan(&t, &i).holds);

        let disc = crate::topology::Topology::discrete(GroundSet::letters(2));
        let i = Ideal::trivial(disc.ground().clone());
        assert!(dense_iff_i_dense_scan(&disc, &i).holds);
    }

    #[test]
    fn density_chain_on_the_remark_model() {
        let (t, i) = remark_model();
        for a in t.ground().subsets() {
            let st = density_status(&t, &i, a);
            if st.i_dense {
                assert!(st.star_dense);
            }
            if st.star_dense {
                assert!(st.dense);
            }
            if st.nowhere_dense {
                assert!(!st.dense);
            }
        }
    }
}
