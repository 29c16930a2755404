//! Ground sets, subsets, set families, finite topologies, and self-maps.
//!
//! Everything here is exact. A [`Subset`] is one machine word of bits indexed
//! by point position in its [`GroundSet`] (at most 32 points), a [`Topology`]
//! stores its open sets extensionally, and a [`SelfMap`] caches its distinct
//! positive iterates so that "there exists a positive integer n" questions
//! reduce to a finite scan. All types are immutable after construction and
//! safe to share across threads.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Hard cap on ground-set size so a subset fits one `u32`.
pub const MAX_POINTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("a ground set needs between 1 and {MAX_POINTS} points, got {0}")]
    BadGroundSize(usize),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("point index {0} is out of range for this ground set")]
    UnknownPoint(usize),
    #[error("a subset in the family does not fit the ground set")]
    ForeignSubset,
    #[error("the family does not contain the empty set")]
    MissingEmpty,
    #[error("the family does not contain the full set")]
    MissingFull,
    #[error("family is not closed under union: {0} \u{222a} {1} is missing")]
    NotUnionClosed(Subset, Subset),
    #[error("family is not closed under intersection: {0} \u{2229} {1} is missing")]
    NotIntersectionClosed(Subset, Subset),
    #[error("map must assign an image to every point; point index {0} is unassigned")]
    MapNotTotal(usize),
    #[error("map image index {0} is out of range")]
    MapImageOutOfRange(usize),
}

/// An ordered set of distinct point labels. Label position fixes the bit
/// position used by every [`Subset`] over this ground set.
///
/// Cheap to clone (the label table is shared).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    inner: Arc<Vec<String>>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self, TopologyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_POINTS {
            return Err(TopologyError::BadGroundSize(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(TopologyError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { inner: Arc::new(labels) })
    }

    /// Ground set `a, b, c, ...` of the given size. Handy for enumeration.
    pub fn letters(n: usize) -> Self {
        assert!((1..=26).contains(&n), "letters() supports 1..=26 points");
        let labels: Vec<String> = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        GroundSet { inner: Arc::new(labels) }
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction enforces >= 1 point
    }

    pub fn labels(&self) -> &[String] {
        &self.inner
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.iter().position(|l| l == label)
    }

    pub fn empty_set(&self) -> Subset {
        Subset { bits: 0, universe: self.len() as u8 }
    }

    pub fn full_set(&self) -> Subset {
        Subset { bits: mask(self.len()), universe: self.len() as u8 }
    }

    pub fn singleton(&self, i: usize) -> Subset {
        assert!(i < self.len());
        Subset { bits: 1 << i, universe: self.len() as u8 }
    }

    pub fn subset_from_bits(&self, bits: u32) -> Subset {
        assert_eq!(bits & !mask(self.len()), 0, "bits beyond ground-set size");
        Subset { bits, universe: self.len() as u8 }
    }

    pub fn subset_of_points<I: IntoIterator<Item = usize>>(&self, points: I) -> Subset {
        let mut bits = 0u32;
        for p in points {
            assert!(p < self.len());
            bits |= 1 << p;
        }
        self.subset_from_bits(bits)
    }

    /// All `2^n` subsets in canonical (numeric) order. Exponential; meant for
    /// small ground sets.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.len() as u8;
        (0..=mask(self.len())).map(move |bits| Subset { bits, universe: n })
    }

    /// Render a subset with this ground set's labels, e.g. `{a c}`.
    pub fn render(&self, s: Subset) -> String {
        debug_assert_eq!(s.universe as usize, self.len());
        let names: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(" "))
    }

    /// Render a family as space-separated set literals.
    pub fn render_family(&self, f: &SetFamily) -> String {
        let parts: Vec<String> = f.iter().map(|s| self.render(s)).collect();
        parts.join(" ")
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet({})", self.inner.join(" "))
    }
}

fn mask(n: usize) -> u32 {
    if n >= 32 { u32::MAX } else { (1u32 << n) - 1 }
}

/// A subset of a ground set, as a bit vector. Orderable by numeric bit value,
/// which is the canonical order used everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u32,
    universe: u8,
}

impl Subset {
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Size of the ground set this subset lives over.
    pub fn universe(self) -> usize {
        self.universe as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.universe as usize)
    }

    pub fn card(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(self, point: usize) -> bool {
        point < self.universe as usize && self.bits & (1 << point) != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset { bits: self.bits | other.bits, universe: self.universe }
    }

    pub fn intersect(self, other: Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset { bits: self.bits & other.bits, universe: self.universe }
    }

    pub fn minus(self, other: Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset { bits: self.bits & !other.bits, universe: self.universe }
    }

    pub fn complement(self) -> Subset {
        Subset {
            bits: !self.bits & mask(self.universe as usize),
            universe: self.universe,
        }
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.bits & !other.bits == 0
    }

    pub fn meets(self, other: Subset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.bits & other.bits != 0
    }

    /// Point indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.universe as usize).filter(move |i| bits & (1 << i) != 0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({self})")
    }
}

impl fmt::Display for Subset {
    /// Label-free rendering by point index, e.g. `{0 2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// A duplicate-free collection of subsets kept in canonical (numeric) order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SetFamily {
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(mut members: Vec<Subset>) -> Self {
        members.sort();
        members.dedup();
        SetFamily { members }
    }

    pub fn empty() -> Self {
        SetFamily { members: Vec::new() }
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    /// Members other than the empty set, in canonical order.
    pub fn nonempty(&self) -> impl Iterator<Item = Subset> + '_ {
        self.iter().filter(|s| !s.is_empty())
    }

    /// Packed mask with bit `s.bits()` set per member. Only meaningful for
    /// ground sets of at most 6 points (64 possible subsets).
    pub fn family_mask(&self) -> u64 {
        debug_assert!(self.members.iter().all(|s| s.bits < 64));
        self.members.iter().fold(0u64, |m, s| m | (1u64 << s.bits))
    }
}

impl FromIterator<Subset> for SetFamily {
    fn from_iter<T: IntoIterator<Item = Subset>>(iter: T) -> Self {
        SetFamily::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|s| s.to_string()).collect();
        write!(f, "SetFamily[{}]", parts.join(" "))
    }
}

/// A validated finite topology: the ground set plus the full extensional
/// family of open sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    ground: GroundSet,
    opens: SetFamily,
}

impl Topology {
    /// Check the axioms and wrap the family. The error carries the violating
    /// pair when union/intersection closure fails.
    pub fn validate(ground: GroundSet, family: SetFamily) -> Result<Self, TopologyError> {
        let full = ground.full_set();
        for s in family.iter() {
            if s.universe() != ground.len() {
                return Err(TopologyError::ForeignSubset);
            }
        }
        if !family.contains(ground.empty_set()) {
            return Err(TopologyError::MissingEmpty);
        }
        if !family.contains(full) {
            return Err(TopologyError::MissingFull);
        }
        let members = family.members();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !family.contains(a.union(b)) {
                    return Err(TopologyError::NotUnionClosed(a, b));
                }
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !family.contains(a.intersect(b)) {
                    return Err(TopologyError::NotIntersectionClosed(a, b));
                }
            }
        }
        Ok(Topology { ground, opens: family })
    }

    /// Smallest topology containing the given subbasis: close under pairwise
    /// intersection and union to a fixpoint, with the empty and full set
    /// adjoined. Idempotent on a topology.
    pub fn generate(ground: GroundSet, subbasis: &SetFamily) -> Self {
        let mut current: Vec<Subset> = Vec::new();
        current.push(ground.empty_set());
        current.push(ground.full_set());
        for s in subbasis.iter() {
            assert_eq!(s.universe(), ground.len(), "subbasis set does not fit ground");
            current.push(s);
        }
        current.sort();
        current.dedup();
        loop {
            let mut next = current.clone();
            for (i, &a) in current.iter().enumerate() {
                for &b in &current[i + 1..] {
                    next.push(a.union(b));
                    next.push(a.intersect(b));
                }
            }
            next.sort();
            next.dedup();
            if next.len() == current.len() {
                break;
            }
            current = next;
        }
        let t = Topology { ground, opens: SetFamily::new(current) };
        debug_assert!(Topology::validate(t.ground.clone(), t.opens.clone()).is_ok());
        t
    }

    pub fn discrete(ground: GroundSet) -> Self {
        let opens = ground.subsets().collect();
        Topology { ground, opens }
    }

    pub fn indiscrete(ground: GroundSet) -> Self {
        let opens = SetFamily::new(vec![ground.empty_set(), ground.full_set()]);
        Topology { ground, opens }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(s)
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.opens.contains(s.complement())
    }

    /// All closed sets, canonical order.
    pub fn closed_sets(&self) -> SetFamily {
        self.opens.iter().map(Subset::complement).collect()
    }

    /// Smallest closed superset: the intersection of all closed supersets.
    pub fn closure(&self, a: Subset) -> Subset {
        let mut acc = self.ground.full_set();
        for o in self.opens.iter() {
            let c = o.complement();
            if a.is_subset_of(c) {
                acc = acc.intersect(c);
            }
        }
        acc
    }

    /// Largest open subset: the union of all opens contained in `a`.
    pub fn interior(&self, a: Subset) -> Subset {
        let mut acc = self.ground.empty_set();
        for o in self.opens.iter() {
            if o.is_subset_of(a) {
                acc = acc.union(o);
            }
        }
        acc
    }

    /// The open sets containing the given point.
    pub fn neighborhoods(&self, point: usize) -> Result<SetFamily, TopologyError> {
        if point >= self.ground.len() {
            return Err(TopologyError::UnknownPoint(point));
        }
        Ok(self.opens.iter().filter(|o| o.contains(point)).collect())
    }

    /// Intersection of all opens containing the point: the smallest open
    /// neighborhood, which exists because the space is finite.
    pub fn minimal_neighborhood(&self, point: usize) -> Subset {
        assert!(point < self.ground.len());
        let mut acc = self.ground.full_set();
        for o in self.opens.iter() {
            if o.contains(point) {
                acc = acc.intersect(o);
            }
        }
        acc
    }

    /// Opens `O` with `O = Int(Cl(O))`.
    pub fn regular_opens(&self) -> SetFamily {
        self.opens
            .iter()
            .filter(|&o| self.interior(self.closure(o)) == o)
            .collect()
    }

    /// Preimage of every open is open. The witness is the first violating
    /// open in canonical order.
    pub fn is_continuous(&self, f: &SelfMap) -> MapVerdict {
        for o in self.opens.iter() {
            if !self.is_open(f.preimage(o)) {
                return MapVerdict { holds: false, violating: Some(o) };
            }
        }
        MapVerdict { holds: true, violating: None }
    }

    /// Image of every open is open.
    pub fn is_open_map(&self, f: &SelfMap) -> MapVerdict {
        for o in self.opens.iter() {
            if !self.is_open(f.image(o)) {
                return MapVerdict { holds: false, violating: Some(o) };
            }
        }
        MapVerdict { holds: true, violating: None }
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Topology[{}]", self.ground.render_family(&self.opens))
    }
}

/// Decision plus optional violating open, for continuity / open-map checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapVerdict {
    pub holds: bool,
    pub violating: Option<Subset>,
}

/// A total map from a ground set to itself, with its eventually-periodic
/// iterate structure computed at construction: the distinct positive iterates
/// are `f^1 .. f^(p+q)` with `f^(p+q+1) = f^(p+1)`.
#[derive(Clone)]
pub struct SelfMap {
    ground: GroundSet,
    images: Vec<u8>,
    preperiod: u32,
    period: u32,
    /// Image tables of `f^1 .. f^(p+q)`.
    powers: Vec<Vec<u8>>,
}

impl SelfMap {
    pub fn new(ground: GroundSet, images: Vec<usize>) -> Result<Self, TopologyError> {
        let n = ground.len();
        if images.len() != n {
            // report the first unassigned point
            return Err(TopologyError::MapNotTotal(images.len().min(n)));
        }
        for &y in &images {
            if y >= n {
                return Err(TopologyError::MapImageOutOfRange(y));
            }
        }
        let images: Vec<u8> = images.into_iter().map(|y| y as u8).collect();
        let (preperiod, period, powers) = iterate_structure(&images);
        Ok(SelfMap { ground, images, preperiod, period, powers })
    }

    pub fn identity(ground: GroundSet) -> Self {
        let n = ground.len();
        SelfMap::new(ground, (0..n).collect()).unwrap()
    }

    pub fn constant(ground: GroundSet, target: usize) -> Self {
        let n = ground.len();
        SelfMap::new(ground, vec![target; n]).unwrap()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Preperiod `p` of the iterate sequence `f, f^2, ...`.
    pub fn preperiod(&self) -> u32 {
        self.preperiod
    }

    /// Period `q` of the iterate sequence.
    pub fn period(&self) -> u32 {
        self.period
    }

    /// `p + q`: every existential over positive exponents only needs `1..=horizon`.
    pub fn horizon(&self) -> u32 {
        self.preperiod + self.period
    }

    /// The distinct positive iterates `f^1 .. f^(p+q)` as maps.
    pub fn distinct_iterates(&self) -> Vec<SelfMap> {
        self.powers
            .iter()
            .map(|tbl| {
                let images: Vec<usize> = tbl.iter().map(|&y| y as usize).collect();
                SelfMap::new(self.ground.clone(), images).unwrap()
            })
            .collect()
    }

    /// `f(s)`.
    pub fn image(&self, s: Subset) -> Subset {
        self.image_table(&self.images, s)
    }

    /// `f^n(s)` for `n >= 0`; exponents past the horizon are folded into the
    /// periodic part.
    pub fn image_iter(&self, s: Subset, n: u32) -> Subset {
        if n == 0 {
            return s;
        }
        let n = self.normalize_exponent(n);
        self.image_table(&self.powers[(n - 1) as usize], s)
    }

    /// `f^{-1}(s)`.
    pub fn preimage(&self, s: Subset) -> Subset {
        self.preimage_table(&self.images, s)
    }

    /// `f^{-n}(s)` for `n >= 0`.
    pub fn preimage_iter(&self, s: Subset, n: u32) -> Subset {
        if n == 0 {
            return s;
        }
        let n = self.normalize_exponent(n);
        self.preimage_table(&self.powers[(n - 1) as usize], s)
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &SelfMap) -> SelfMap {
        assert_eq!(self.ground, other.ground);
        let images: Vec<usize> = other
            .images
            .iter()
            .map(|&y| self.images[y as usize] as usize)
            .collect();
        SelfMap::new(self.ground.clone(), images).unwrap()
    }

    fn normalize_exponent(&self, n: u32) -> u32 {
        debug_assert!(n >= 1);
        let h = self.horizon();
        if n <= h {
            n
        } else {
            self.preperiod + 1 + (n - self.preperiod - 1) % self.period
        }
    }

    fn image_table(&self, tbl: &[u8], s: Subset) -> Subset {
        let mut bits = 0u32;
        for x in s.iter() {
            bits |= 1 << tbl[x];
        }
        self.ground.subset_from_bits(bits)
    }

    fn preimage_table(&self, tbl: &[u8], s: Subset) -> Subset {
        let mut bits = 0u32;
        for (x, &y) in tbl.iter().enumerate() {
            if s.contains(y as usize) {
                bits |= 1 << x;
            }
        }
        self.ground.subset_from_bits(bits)
    }
}

/// Step `f, f^2, ...` until an image table repeats; returns `(p, q, tables)`.
fn iterate_structure(images: &[u8]) -> (u32, u32, Vec<Vec<u8>>) {
    let mut powers: Vec<Vec<u8>> = vec![images.to_vec()];
    loop {
        let last = powers.last().unwrap();
        let next: Vec<u8> = last.iter().map(|&y| images[y as usize]).collect();
        if let Some(j) = powers.iter().position(|p| *p == next) {
            // next = f^(k) equals f^(j+1): preperiod j, period k - j - 1 + 1
            let k = powers.len() as u32 + 1;
            let j = j as u32 + 1;
            let preperiod = j - 1;
            let period = k - j;
            powers.truncate((preperiod + period) as usize);
            return (preperiod, period, powers);
        }
        powers.push(next);
    }
}

impl PartialEq for SelfMap {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.images == other.images
    }
}

impl Eq for SelfMap {}

impl std::hash::Hash for SelfMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.ground.len())
            .map(|i| format!("{}>{}", self.ground.label(i), self.ground.label(self.apply(i))))
            .collect();
        write!(f, "SelfMap[{}]", parts.join(" "))
    }
}
