//! Dynamics on finite models: orbits, iterate horizons, every transitivity
//! variant, non-wandering sets, transitive points, invariance, and forward /
//! backward orbit unions.
//!
//! Quantifier conventions, fixed once here and used everywhere:
//!
//! * "for every pair ... there exists a positive integer n" is read with `n`
//!   depending on the pair, and `n` ranges over `1..=p+q` where `(p, q)` is
//!   the map's iterate horizon — exact, not a heuristic bound;
//! * non-wandering points quantify over the open sets containing the point
//!   (the basis formulation makes open neighborhoods sufficient);
//! * a failing scan reports the first failing pair in canonical subset
//!   order, so witnesses are deterministic.

use thiserror::Error;

use crate::density::{density_status, DensityStatus};
use crate::genopen::{k_opens, OpenKind};
use crate::ideal::Ideal;
use crate::model::Model;
use crate::topology::{SelfMap, SetFamily, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynError {
    #[error("ideal-graded query needs a proper ideal (the ideal contains the whole space)")]
    ImproperIdeal,
    #[error("map is not continuous and strict continuity was requested")]
    DiscontinuousMap,
    #[error("point index {0} is out of range")]
    UnknownPoint(usize),
}

/// A model together with the continuity policy. In strict mode construction
/// fails on a discontinuous map; the default is to proceed (several worked
/// examples in the literature never use continuity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSystem {
    model: Model,
    strict_continuity: bool,
}

impl DynamicalSystem {
    pub fn new(model: Model) -> DynamicalSystem {
        DynamicalSystem { model, strict_continuity: false }
    }

    pub fn new_strict(model: Model) -> Result<DynamicalSystem, DynError> {
        if !model.topology().is_continuous(model.map()).holds {
            return Err(DynError::DiscontinuousMap);
        }
        Ok(DynamicalSystem { model, strict_continuity: true })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn into_model(self) -> Model {
        self.model
    }

    pub fn strict_continuity(&self) -> bool {
        self.strict_continuity
    }
}

/// Which notion of transitivity / non-wandering to decide: the kind of open
/// sets quantified over, and whether the overlap test is plain nonemptiness
/// or lying outside the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransitivityKind {
    pub base: OpenKind,
    pub ideal_graded: bool,
}

impl TransitivityKind {
    pub fn plain(base: OpenKind) -> Self {
        TransitivityKind { base, ideal_graded: false }
    }

    pub fn ideal(base: OpenKind) -> Self {
        TransitivityKind { base, ideal_graded: true }
    }

    /// Names like `transitive`, `i-transitive`, `semi-i-transitive`.
    pub fn parse(s: &str) -> Option<Self> {
        let rest = s.strip_suffix("-transitive").or_else(|| {
            if s == "transitive" { Some("") } else { None }
        })?;
        let (base, graded) = match rest.strip_suffix("-i").or_else(|| {
            if rest == "i" { Some("") } else { None }
        }) {
            Some(prefix) => (prefix, true),
            None => (rest, false),
        };
        let kind = if base.is_empty() { OpenKind::Open } else { OpenKind::parse(base)? };
        Some(TransitivityKind { base: kind, ideal_graded: graded })
    }

    pub fn name(&self) -> String {
        let base = match self.base {
            OpenKind::Open => "",
            k => k.name(),
        };
        match (base.is_empty(), self.ideal_graded) {
            (true, false) => "transitive".into(),
            (true, true) => "i-transitive".into(),
            (false, false) => format!("{base}-transitive"),
            (false, true) => format!("{base}-i-transitive"),
        }
    }
}

/// Decision plus a deterministic witness for pair scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<PairWitness>,
}

/// The first failing ordered pair, with the exponent range that was scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub u: Subset,
    pub v: Subset,
    pub n_range: (u32, u32),
}

/// The orbit of a point: the iterate sequence up to its first repetition
/// (starting at the point itself), and its support set.
pub fn orbit(sys: &DynamicalSystem, x: usize) -> Result<(Vec<usize>, Subset), DynError> {
    let ground = sys.model().ground();
    if x >= ground.len() {
        return Err(DynError::UnknownPoint(x));
    }
    let f = sys.model().map();
    let mut seen = ground.empty_set();
    let mut seq = Vec::new();
    let mut cur = x;
    while !seen.contains(cur) {
        seq.push(cur);
        seen = seen.union(ground.singleton(cur));
        cur = f.apply(cur);
    }
    Ok((seq, seen))
}

/// Preperiod, period, and the distinct positive iterates of a map. Any
/// existential over positive exponents reduces to membership in `1..=p+q`.
pub fn iterate_horizon(f: &SelfMap) -> (u32, u32, Vec<SelfMap>) {
    (f.preperiod(), f.period(), f.distinct_iterates())
}

fn overlap_ok(i: &Ideal, graded: bool, s: Subset) -> bool {
    if graded { !i.contains(s) } else { !s.is_empty() }
}

/// Scan every ordered pair of nonempty sets drawn from `family` for a
/// positive exponent making the overlap test pass. Used by transitivity and
/// reused by the falsify targets with explicit families.
pub fn pair_scan(model: &Model, family: &SetFamily, graded: bool) -> Verdict {
    let f = model.map();
    let i = model.ideal();
    let h = f.horizon();
    for u in family.nonempty() {
        for v in family.nonempty() {
            let ok = (1..=h).any(|n| overlap_ok(i, graded, f.image_iter(u, n).intersect(v)));
            if !ok {
                debug_assert!((1..=h).all(|n| {
                    let s = f.image_iter(u, n).intersect(v);
                    if graded { i.contains(s) } else { s.is_empty() }
                }));
                return Verdict {
                    holds: false,
                    witness: Some(PairWitness { u, v, n_range: (1, h) }),
                };
            }
        }
    }
    Verdict { holds: true, witness: None }
}

/// Decide transitivity of the given kind. For ideal-graded kinds the model's
/// ideal must be proper.
pub fn check_transitive(
    sys: &DynamicalSystem,
    kind: TransitivityKind,
) -> Result<Verdict, DynError> {
    let model = sys.model();
    if kind.ideal_graded && !model.ideal().is_proper() {
        return Err(DynError::ImproperIdeal);
    }
    let family = k_opens(model.topology(), kind.base);
    Ok(pair_scan(model, &family, kind.ideal_graded))
}

/// The set of non-wandering points for the given kind: points `x` such that
/// every nonempty kind-open set containing `x` returns to meet itself under
/// some positive iterate (outside the ideal, for graded kinds).
pub fn nonwandering_set(sys: &DynamicalSystem, kind: TransitivityKind) -> Result<Subset, DynError> {
    let model = sys.model();
    if kind.ideal_graded && !model.ideal().is_proper() {
        return Err(DynError::ImproperIdeal);
    }
    let ground = model.ground();
    let f = model.map();
    let i = model.ideal();
    let h = f.horizon();
    let family = k_opens(model.topology(), kind.base);
    let mut bits = 0u32;
    'points: for x in 0..ground.len() {
        for m in family.iter() {
            if !m.contains(x) {
                continue;
            }
            let returns =
                (1..=h).any(|n| overlap_ok(i, kind.ideal_graded, f.image_iter(m, n).intersect(m)));
            if !returns {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    Ok(ground.subset_from_bits(bits))
}

/// Density grading for transitive-point queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitDensity {
    Dense,
    IDense,
    StarDense,
}

impl OrbitDensity {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dense" => Some(OrbitDensity::Dense),
            "i-dense" | "i_dense" => Some(OrbitDensity::IDense),
            "star-dense" | "star_dense" => Some(OrbitDensity::StarDense),
            _ => None,
        }
    }

    fn pick(self, st: DensityStatus) -> bool {
        match self {
            OrbitDensity::Dense => st.dense,
            OrbitDensity::IDense => st.i_dense,
            OrbitDensity::StarDense => st.star_dense,
        }
    }
}

/// Points whose orbit set satisfies the selected density predicate.
pub fn transitive_points(
    sys: &DynamicalSystem,
    graded: OrbitDensity,
) -> Result<Subset, DynError> {
    let model = sys.model();
    if graded != OrbitDensity::Dense && !model.ideal().is_proper() {
        return Err(DynError::ImproperIdeal);
    }
    let ground = model.ground();
    let mut bits = 0u32;
    for x in 0..ground.len() {
        let (_, orb) = orbit(sys, x)?;
        let st = density_status(model.topology(), model.ideal(), orb);
        if graded.pick(st) {
            bits |= 1 << x;
        }
    }
    Ok(ground.subset_from_bits(bits))
}

/// `f(A) ⊆ A`.
pub fn is_invariant(f: &SelfMap, a: Subset) -> bool {
    f.image(a).is_subset_of(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Exact union of `f^n(U)` (or `f^{-n}(U)`) over `n = 0..=p+q`; the union
/// stabilizes at the horizon.
pub fn forward_union(sys: &DynamicalSystem, u: Subset, direction: Direction) -> Subset {
    let f = sys.model().map();
    let h = f.horizon();
    let mut acc = u;
    for n in 1..=h {
        acc = acc.union(match direction {
            Direction::Forward => f.image_iter(u, n),
            Direction::Backward => f.preimage_iter(u, n),
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Model;
    use crate::topology::GroundSet;

    fn sys(text: &str) -> DynamicalSystem {
        DynamicalSystem::new(Model::parse(text).unwrap())
    }

    const EX_4_1: &str =
        "points: a b c d\nopens: {a} {c} {a c} {a c d}\nideal: {a c}\nmap: a>c b>b c>a d>d\n";
    const EX_4_0_1: &str =
        "points: a b c d\nopens: {a} {c} {a c} {a c d}\nideal: {d}\nmap: a>c b>b c>a d>d\n";
    const EX_5_1: &str =
        "points: a b c\nopens: {a} {b} {a b}\nideal: {c}\nmap: a>b b>a c>c\n";
    const EX_5_2: &str =
        "points: a b c\nopens: {a} {b} {a b}\nideal: {a b}\nmap: a>b b>a c>c\n";
    const EX_5_6: &str = "points: a b\nopens: {a}\nideal: {b}\nmap: a>a b>a\n";

    #[test]
    fn the_example_model_is_transitive_but_not_ideal_transitive() {
        let s = sys(EX_4_1);
        let plain = check_transitive(&s, TransitivityKind::plain(OpenKind::Open)).unwrap();
        assert!(plain.holds);
        let graded = check_transitive(&s, TransitivityKind::ideal(OpenKind::Open)).unwrap();
        assert!(!graded.holds);
        let w = graded.witness.unwrap();
        let g = s.model().ground();
        assert_eq!((w.u, w.v), (g.subset_of_points([0]), g.subset_of_points([0])));
        assert_eq!(w.n_range, (1, 2));
    }

    #[test]
    fn shrinking_the_ideal_restores_ideal_transitivity() {
        let s = sys(EX_4_0_1);
        assert!(check_transitive(&s, TransitivityKind::ideal(OpenKind::Open)).unwrap().holds);
    }

    #[test]
    fn identity_on_a_discrete_pair_is_not_transitive() {
        let s = sys("points: a b\nopens: {a} {b}\nideal: trivial\nmap: a>a b>b\n");
        let v = check_transitive(&s, TransitivityKind::plain(OpenKind::Open)).unwrap();
        assert!(!v.holds);
        let g = s.model().ground();
        let w = v.witness.unwrap();
        assert_eq!((w.u, w.v), (g.subset_of_points([0]), g.subset_of_points([1])));
    }

    #[test]
    fn indiscrete_identity_separates_semi_from_b() {
        let s = sys("points: a b\nopens:\nideal: {a}\nmap: a>a b>b\n");
        assert!(check_transitive(&s, TransitivityKind::ideal(OpenKind::Semi)).unwrap().holds);
        let v = check_transitive(&s, TransitivityKind::ideal(OpenKind::B)).unwrap();
        assert!(!v.holds);
        let g = s.model().ground();
        let w = v.witness.unwrap();
        assert_eq!((w.u, w.v), (g.subset_of_points([0]), g.subset_of_points([0])));
    }

    #[test]
    fn improper_ideal_is_rejected_for_graded_queries() {
        let s = sys("points: a b\nopens: {a}\nideal: {a b}\nmap: a>a b>b\n");
        assert_eq!(
            check_transitive(&s, TransitivityKind::ideal(OpenKind::Open)),
            Err(DynError::ImproperIdeal)
        );
        assert!(check_transitive(&s, TransitivityKind::plain(OpenKind::Open)).is_ok());
    }

    #[test]
    fn nonwandering_sets_of_the_three_point_models() {
        let g = GroundSet::letters(3);
        let s1 = sys(EX_5_1);
        let omega_i = nonwandering_set(&s1, TransitivityKind::ideal(OpenKind::Open)).unwrap();
        assert!(omega_i.contains(0)); // a
        assert_eq!(omega_i, g.full_set());

        let s2 = sys(EX_5_2);
        let omega = nonwandering_set(&s2, TransitivityKind::plain(OpenKind::Open)).unwrap();
        assert!(omega.contains(0));
        assert_eq!(omega, g.full_set());
        let omega_i = nonwandering_set(&s2, TransitivityKind::ideal(OpenKind::Open)).unwrap();
        assert!(!omega_i.contains(0));
        assert_eq!(omega_i, g.subset_of_points([2]));
    }

    #[test]
    fn identity_makes_every_point_nonwandering() {
        let s = sys("points: a b c\nopens: {a} {b} {a b}\nideal: trivial\nmap: a>a b>b c>c\n");
        let omega = nonwandering_set(&s, TransitivityKind::plain(OpenKind::Open)).unwrap();
        assert_eq!(omega, s.model().ground().full_set());
    }

    #[test]
    fn orbits_of_the_collapse_model() {
        let s = sys(EX_5_6);
        let (seq, set) = orbit(&s, 1).unwrap();
        assert_eq!(seq, vec![1, 0]);
        assert_eq!(set, s.model().ground().full_set());
        let (seq, set) = orbit(&s, 0).unwrap();
        assert_eq!(seq, vec![0]);
        assert_eq!(set, s.model().ground().subset_of_points([0]));
        assert!(orbit(&s, 9).is_err());
    }

    #[test]
    fn three_cycle_orbit_covers_the_cycle() {
        let s = sys("points: a b c\nopens:\nideal: trivial\nmap: a>b b>c c>a\n");
        let (_, set) = orbit(&s, 0).unwrap();
        assert_eq!(set, s.model().ground().full_set());
    }

    #[test]
    fn ideal_dense_orbit_points_of_the_collapse_model() {
        let s = sys(EX_5_6);
        let tp = transitive_points(&s, OrbitDensity::IDense).unwrap();
        assert!(tp.contains(1)); // orbit of b is {a b}
        assert!(tp.contains(0)); // {a}* = X under P({b})
    }

    #[test]
    fn discrete_identity_has_no_dense_orbits() {
        let s = sys("points: a b\nopens: {a} {b}\nideal: trivial\nmap: a>a b>b\n");
        let tp = transitive_points(&s, OrbitDensity::Dense).unwrap();
        assert!(tp.is_empty());
    }

    #[test]
    fn invariance_of_subsets_under_the_swap() {
        let g = GroundSet::letters(4);
        let f = SelfMap::new(g.clone(), vec![2, 1, 0, 3]).unwrap();
        assert!(is_invariant(&f, g.subset_of_points([0, 2])));
        assert!(is_invariant(&f, g.full_set()));
        assert!(!is_invariant(&f, g.subset_of_points([0])));
    }

    #[test]
    fn forward_and_backward_unions() {
        let s = sys(EX_4_1);
        let g = s.model().ground();
        assert_eq!(
            forward_union(&s, g.subset_of_points([0]), Direction::Forward),
            g.subset_of_points([0, 2])
        );
        assert_eq!(forward_union(&s, g.full_set(), Direction::Forward), g.full_set());
        assert_eq!(forward_union(&s, g.full_set(), Direction::Backward), g.full_set());

        let c = sys("points: a b\nopens: {a}\nideal: trivial\nmap: a>a b>a\n");
        let gc = c.model().ground();
        assert_eq!(
            forward_union(&c, gc.subset_of_points([1]), Direction::Forward),
            gc.full_set()
        );
    }

    #[test]
    fn strict_mode_rejects_discontinuous_maps() {
        // {a} open, preimage of {a} under a>b b>a is {b}: not open
        let m = Model::parse("points: a b\nopens: {a}\nideal: trivial\nmap: a>b b>a\n").unwrap();
        assert_eq!(DynamicalSystem::new_strict(m.clone()), Err(DynError::DiscontinuousMap));
        assert!(DynamicalSystem::new_strict(
            Model::parse("points: a b\nopens: {a}\nideal: trivial\nmap: a>a b>b\n").unwrap()
        )
        .is_ok());
        let _ = DynamicalSystem::new(m); // warn-mode always constructs
    }

    #[test]
    fn kind_names_round_trip() {
        for base in OpenKind::ALL {
            for graded in [false, true] {
                let k = TransitivityKind { base, ideal_graded: graded };
                assert_eq!(TransitivityKind::parse(&k.name()), Some(k));
            }
        }
        assert_eq!(
            TransitivityKind::parse("i-transitive"),
            Some(TransitivityKind::ideal(OpenKind::Open))
        );
        assert_eq!(TransitivityKind::parse("bogus"), None);
    }

    #[test]
    fn trivial_ideal_collapses_graded_to_plain() {
        let s = sys("points: a b c\nopens: {a} {b} {a b}\nideal: trivial\nmap: a>b b>a c>c\n");
        for base in OpenKind::ALL {
            let plain = check_transitive(&s, TransitivityKind::plain(base)).unwrap();
            let graded = check_transitive(&s, TransitivityKind::ideal(base)).unwrap();
            assert_eq!(plain, graded);
            let op = nonwandering_set(&s, TransitivityKind::plain(base)).unwrap();
            let og = nonwandering_set(&s, TransitivityKind::ideal(base)).unwrap();
            assert_eq!(op, og);
        }
    }
}
