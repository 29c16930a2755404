//! Ideals on finite ground sets and the ideal-topological operators: the
//! local function, its dual psi, the star closure/interior, the star
//! topology, the ideal-open family, ideal classification, and
//! pushforward/pullback along a self-map.
//!
//! On a finite ground set an ideal is always the power set of the union of
//! its members, so the type is constructed from generators and saturated.
//! Improper ideals (containing the whole space) are allowed here because the
//! operator algebra still makes sense for them; dynamics-level checkers
//! reject them.

use crate::genopen::{k_opens, OpenKind};
use crate::topology::{GroundSet, SelfMap, SetFamily, Subset, Topology};

/// An ideal: a family of subsets closed under subsets and finite unions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    ground: GroundSet,
    members: SetFamily,
    union: Subset,
    proper: bool,
}

impl Ideal {
    /// Smallest ideal containing the generators: the power set of their
    /// union. The member list is materialized, so keep generator unions small
    /// (the size is `2^|union|`).
    pub fn from_generators(ground: GroundSet, generators: &SetFamily) -> Ideal {
        let mut union = ground.empty_set();
        for g in generators.iter() {
            assert_eq!(g.universe(), ground.len(), "generator does not fit ground");
            union = union.union(g);
        }
        Ideal::power_set_of(ground, union)
    }

    /// The ideal `P(m)` of all subsets of `m`.
    pub fn power_set_of(ground: GroundSet, m: Subset) -> Ideal {
        assert_eq!(m.universe(), ground.len());
        let mut members = Vec::with_capacity(1usize << m.card());
        // enumerate submasks of m.bits() in ascending order
        let full = m.bits();
        let mut sub = 0u32;
        loop {
            members.push(ground.subset_from_bits(sub));
            if sub == full {
                break;
            }
            sub = (sub | !full).wrapping_add(1) & full;
        }
        let proper = !m.is_full();
        Ideal { ground, members: SetFamily::new(members), union: m, proper }
    }

    /// The minimal ideal `{∅}`.
    pub fn trivial(ground: GroundSet) -> Ideal {
        let m = ground.empty_set();
        Ideal::power_set_of(ground, m)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &SetFamily {
        &self.members
    }

    /// Union of all members; the ideal is exactly its power set.
    pub fn union_set(&self) -> Subset {
        self.union
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_trivial(&self) -> bool {
        self.union.is_empty()
    }

    /// Membership. Because the ideal is `P(union)`, this is a subset test.
    pub fn contains(&self, s: Subset) -> bool {
        debug_assert_eq!(self.members.contains(s), s.is_subset_of(self.union));
        s.is_subset_of(self.union)
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal[P({})]", self.ground.render(self.union))
    }
}

/// Classification flags for an ideal on a topological space.
///
/// `hayashi_samuel` is an alias of `codense` (a space whose ideal is codense
/// is called a Hayashi-Samuel space).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealClassification {
    pub codense: bool,
    pub completely_codense: bool,
    pub compatible: bool,
    pub hayashi_samuel: bool,
}

/// Kuratowski's local function `A*`: the points whose every open
/// neighborhood meets `a` in a set outside the ideal.
///
/// Computed by the definition, as a per-point scan over the open
/// neighborhoods; an independent definition-literal mirror lives in the
/// falsify module for differential testing.
pub fn local_function(t: &Topology, i: &Ideal, a: Subset) -> Subset {
    let ground = t.ground();
    let mut bits = 0u32;
    'points: for x in 0..ground.len() {
        for u in t.opens().iter() {
            if u.contains(x) && i.contains(u.intersect(a)) {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    ground.subset_from_bits(bits)
}

/// The complement-dual of the local function: `ψ(A) = X ∖ (X ∖ A)*`.
/// Always computed through that identity so the two can never drift.
pub fn psi(t: &Topology, i: &Ideal, a: Subset) -> Subset {
    local_function(t, i, a.complement()).complement()
}

/// `Cl*(A) = A ∪ A*`.
pub fn cl_star(t: &Topology, i: &Ideal, a: Subset) -> Subset {
    a.union(local_function(t, i, a))
}

/// The star closure and star interior of `a`.
///
/// `cl_star` is `A ∪ A*`, which coincides with the closure of `a` in the
/// star topology; `int_star` is the interior of `a` in the star topology,
/// which coincides with `A ∩ ψ(A)`. Both coincidences are asserted in debug
/// builds.
pub fn star_operators(t: &Topology, i: &Ideal, a: Subset) -> (Subset, Subset) {
    let cl = cl_star(t, i, a);
    let star = star_topology(t, i);
    let int = star.interior(a);
    debug_assert_eq!(cl, star.closure(a));
    debug_assert_eq!(int, a.intersect(psi(t, i, a)));
    (cl, int)
}

/// The star topology `τ*(I)`: generated by the basis `{O ∖ I₁ : O ∈ τ, I₁ ∈ I}`.
/// It refines `τ`.
pub fn star_topology(t: &Topology, i: &Ideal) -> Topology {
    let mut basis = Vec::new();
    for o in t.opens().iter() {
        for m in i.members().iter() {
            basis.push(o.minus(m));
        }
    }
    let star = Topology::generate(t.ground().clone(), &SetFamily::new(basis));
    debug_assert!(t.opens().iter().all(|o| star.is_open(o)));
    star
}

/// The ideal-open sets: all `A` with `A ⊆ Int(A*)` (interior in `τ`).
pub fn i_opens(t: &Topology, i: &Ideal) -> SetFamily {
    t.ground()
        .subsets()
        .filter(|&a| a.is_subset_of(t.interior(local_function(t, i, a))))
        .collect()
}

// Above this many points the definitional compatibility scan (over all 2^n
// subsets) is skipped in favor of the structural fact that a power-set ideal
// is compatible with every topology on a finite ground set.
const COMPAT_SCAN_LIMIT: usize = 12;

/// Definitional compatibility check: whenever every point of `A` has an open
/// neighborhood meeting `A` inside the ideal, `A` itself is in the ideal.
/// Exponential in the number of points.
pub fn compatible_by_definition(t: &Topology, i: &Ideal) -> bool {
    for a in t.ground().subsets() {
        let mut all_points_small = true;
        'points: for x in a.iter() {
            for o in t.opens().iter() {
                if o.contains(x) && i.contains(o.intersect(a)) {
                    continue 'points;
                }
            }
            all_points_small = false;
            break;
        }
        if all_points_small && !i.contains(a) {
            return false;
        }
    }
    true
}

/// Classify the ideal against the topology.
pub fn classify(t: &Topology, i: &Ideal) -> IdealClassification {
    let codense = t.opens().nonempty().all(|o| !i.contains(o));
    let completely_codense = k_opens(t, OpenKind::Pre)
        .nonempty()
        .all(|p| !i.contains(p));
    // Cross-check: completely codense iff every member is nowhere dense;
    // since members are the subsets of the union, that is a single test.
    debug_assert_eq!(
        completely_codense,
        t.interior(t.closure(i.union_set())).is_empty()
    );
    let compatible = if t.ground().len() <= COMPAT_SCAN_LIMIT {
        compatible_by_definition(t, i)
    } else {
        true
    };
    IdealClassification {
        codense,
        completely_codense,
        compatible,
        hayashi_samuel: codense,
    }
}

/// Image ideal `f(I) = {f(S) : S ∈ I}`, which equals `P(f(∪I))`.
pub fn pushforward(f: &SelfMap, i: &Ideal) -> Ideal {
    let out = Ideal::power_set_of(f.ground().clone(), f.image(i.union_set()));
    debug_assert_eq!(
        out.members(),
        &i.members().iter().map(|s| f.image(s)).collect::<SetFamily>()
    );
    out
}

/// Preimage ideal `f^←(I) = {A : A ⊆ f⁻¹(S) for some S ∈ I}`, which equals
/// `P(f⁻¹(∪I))`.
pub fn pullback(f: &SelfMap, i: &Ideal) -> Ideal {
    Ideal::power_set_of(f.ground().clone(), f.preimage(i.union_set()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::GroundSet;

    fn ground4() -> GroundSet {
        GroundSet::letters(4)
    }

    /// opens {a} {c} {a c} {a c d} over {a b c d}
    fn example_space() -> Topology {
        let g = ground4();
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

    /// opens {a c d} only, over {a b c d}
    fn remark_space() -> Topology {
        let g = ground4();
        let fam = SetFamily::new(vec![g.empty_set(), g.subset_of_points([0, 2, 3]), g.full_set()]);
        Topology::validate(g, fam).unwrap()
    }

    #[test]
    fn generators_saturate_to_a_power_set() {
        let g = ground4();
        let gens = SetFamily::new(vec![g.subset_of_points([0, 2])]);
        let i = Ideal::from_generators(g.clone(), &gens);
        let expect: SetFamily = [vec![], vec![0], vec![2], vec![0, 2]]
            .into_iter()
            .map(|p| g.subset_of_points(p))
            .collect();
        assert_eq!(*i.members(), expect);
        assert!(i.is_proper());

        let trivial = Ideal::from_generators(g.clone(), &SetFamily::empty());
        assert_eq!(trivial.members().len(), 1);
        assert!(trivial.is_trivial());

        let g2 = GroundSet::letters(2);
        let gens = SetFamily::new(vec![g2.subset_of_points([0]), g2.subset_of_points([1])]);
        let improper = Ideal::from_generators(g2.clone(), &gens);
        assert!(!improper.is_proper());
        assert_eq!(improper.members().len(), 4);
    }

    #[test]
    fn trivial_ideal_makes_the_local_function_the_closure() {
        let t = example_space();
        let i = Ideal::trivial(t.ground().clone());
        for a in t.ground().subsets() {
            assert_eq!(local_function(&t, &i, a), t.closure(a));
            assert_eq!(psi(&t, &i, a), t.interior(a));
        }
    }

    #[test]
    fn local_function_on_the_remark_space() {
        let t = remark_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        let a = g.subset_of_points([0, 1, 2]);
        assert_eq!(local_function(&t, &i, a), g.subset_of_points([1]));
        let (cl, int) = star_operators(&t, &i, a);
        assert_eq!(cl, g.subset_of_points([0, 1, 2]));
        assert_eq!(int, g.empty_set());
    }

    #[test]
    fn local_function_of_a_small_ideal_member() {
        let t = example_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        assert_eq!(local_function(&t, &i, g.subset_of_points([0])), g.empty_set());
    }

    #[test]
    fn psi_of_the_example_model() {
        let t = example_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        assert_eq!(psi(&t, &i, g.subset_of_points([1, 3])), g.full_set());
        let trivial = Ideal::trivial(g.clone());
        assert_eq!(psi(&t, &trivial, g.full_set()), g.full_set());
    }

    #[test]
    fn star_closure_of_the_empty_set_is_empty() {
        let t = example_space();
        let i = Ideal::power_set_of(t.ground().clone(), t.ground().subset_of_points([0, 2]));
        assert_eq!(cl_star(&t, &i, t.ground().empty_set()), t.ground().empty_set());
    }

    #[test]
    fn star_topology_of_the_example_with_pd() {
        let t = example_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([3]));
        let star = star_topology(&t, &i);
        let expect: SetFamily = [
            vec![],
            vec![0],
            vec![2],
            vec![0, 2],
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 1, 2, 3],
        ]
        .into_iter()
        .map(|p| g.subset_of_points(p))
        .collect();
        assert_eq!(*star.opens(), expect);
    }

    #[test]
    fn star_topology_degenerate_ideals() {
        let t = example_space();
        let g = t.ground().clone();
        assert_eq!(star_topology(&t, &Ideal::trivial(g.clone())), t);
        let improper = Ideal::power_set_of(g.clone(), g.full_set());
        assert_eq!(star_topology(&t, &improper), Topology::discrete(g));
    }

    #[test]
    fn i_open_family_of_the_example_model() {
        let t = example_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        let io = i_opens(&t, &i);
        // {a}* = ∅ so {a} is excluded; in fact only ∅ survives here
        assert!(!io.contains(g.subset_of_points([0])));
        assert_eq!(io, SetFamily::new(vec![g.empty_set()]));
    }

    #[test]
    fn i_opens_with_trivial_ideal_are_the_preopens() {
        let t = example_space();
        let i = Ideal::trivial(t.ground().clone());
        assert_eq!(i_opens(&t, &i), k_opens(&t, OpenKind::Pre));
    }

    #[test]
    fn classification_of_the_remark_model() {
        let t = remark_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        let c = classify(&t, &i);
        assert!(c.codense && c.hayashi_samuel);
        assert!(!c.completely_codense);
        assert!(c.compatible);
    }

    #[test]
    fn classification_of_the_example_model() {
        let t = example_space();
        let i = Ideal::power_set_of(t.ground().clone(), t.ground().subset_of_points([0, 2]));
        let c = classify(&t, &i);
        assert!(!c.codense);
    }

    #[test]
    fn pushforward_and_pullback() {
        let g = ground4();
        let swap = SelfMap::new(g.clone(), vec![2, 1, 0, 3]).unwrap();
        let pac = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        assert_eq!(pushforward(&swap, &pac), pac);

        let trivial = Ideal::trivial(g.clone());
        assert_eq!(pushforward(&swap, &trivial), trivial);
        assert_eq!(pullback(&swap, &trivial), trivial);

        let pd = Ideal::power_set_of(g.clone(), g.subset_of_points([3]));
        assert_eq!(pullback(&swap, &pd), pd);

        let const_a = SelfMap::constant(g.clone(), 0);
        let pushed = pushforward(&const_a, &pac);
        assert_eq!(pushed.union_set(), g.subset_of_points([0]));
        let pulled = pullback(&const_a, &Ideal::power_set_of(g.clone(), g.subset_of_points([0])));
        assert!(!pulled.is_proper());
        assert_eq!(pulled.union_set(), g.full_set());
    }

    #[test]
    fn local_function_algebra_on_the_example_model() {
        let t = example_space();
        let g = t.ground().clone();
        let i = Ideal::power_set_of(g.clone(), g.subset_of_points([0, 2]));
        for a in g.subsets() {
            let star = local_function(&t, &i, a);
            assert!(star.is_subset_of(t.closure(a)));
            for b in g.subsets() {
                let ab = local_function(&t, &i, a.union(b));
                assert_eq!(ab, star.union(local_function(&t, &i, b)));
            }
        }
    }

    #[test]
    fn compatibility_scan_agrees_with_the_structural_fact() {
        for n in 1..=3 {
            let g = GroundSet::letters(n);
            let t = Topology::indiscrete(g.clone());
            for m in g.subsets() {
                let i = Ideal::power_set_of(g.clone(), m);
                assert!(compatible_by_definition(&t, &i));
            }
        }
    }
}
