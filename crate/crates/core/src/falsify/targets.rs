//! The theorem registry: each target is a hypothesis and a conclusion over a
//! single model, both computable from the primary operators. Sound targets
//! are expected to hold on every finite model; suspect targets (converse
//! directions whose published proofs have gaps) are never asserted — the
//! suite records their outcome with a minimal witness instead.
//!
//! The evaluation context memoizes per-model tables (closures, local
//! functions, kind-open families) because the suite visits millions of
//! models; the tables are memos of the primary operators, not alternative
//! implementations.

use std::cell::OnceCell;

use crate::density::{dense_iff_i_dense_scan, density_status};
use crate::dynamics::{
    forward_union, is_invariant, pair_scan, Direction, DynamicalSystem, Verdict,
};
use crate::genopen::{is_k_open, k_closure_over, k_opens, OpenKind};
use crate::ideal::{classify, compatible_by_definition, IdealClassification};
use crate::model::Model;
use crate::topology::{SetFamily, Subset, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetStatus {
    /// Must hold on every finite model; a violation fails the suite.
    Sound,
    /// Outcome is an empirical artifact of the run, reported with witnesses.
    Suspect,
}

pub struct TheoremTarget {
    pub id: &'static str,
    pub summary: &'static str,
    pub status: TargetStatus,
    pub hypothesis: fn(&Ctx) -> bool,
    pub conclusion: fn(&Ctx) -> Result<(), String>,
}

fn kind_index(kind: OpenKind) -> usize {
    match kind {
        OpenKind::Open => 0,
        OpenKind::Semi => 1,
        OpenKind::Pre => 2,
        OpenKind::B => 3,
        OpenKind::Beta => 4,
    }
}

/// Per-model evaluation context with lazy memos of the primary operators.
pub struct Ctx {
    sys: DynamicalSystem,
    class: OnceCell<IdealClassification>,
    continuous: OnceCell<bool>,
    open_map: OnceCell<bool>,
    closure_table: OnceCell<Vec<Subset>>,
    local_table: OnceCell<Vec<Subset>>,
    k_families: [OnceCell<SetFamily>; 5],
    k_plain: [OnceCell<Verdict>; 5],
    k_graded: [OnceCell<Option<Verdict>>; 5],
    omega_plain: [OnceCell<Subset>; 5],
    omega_graded: [OnceCell<Subset>; 5],
    star: OnceCell<Topology>,
}

impl Ctx {
    pub fn new(model: Model) -> Ctx {
        Ctx {
            sys: DynamicalSystem::new(model),
            class: OnceCell::new(),
            continuous: OnceCell::new(),
            open_map: OnceCell::new(),
            closure_table: OnceCell::new(),
            local_table: OnceCell::new(),
            k_families: [const { OnceCell::new() }; 5],
            k_plain: [const { OnceCell::new() }; 5],
            k_graded: [const { OnceCell::new() }; 5],
            omega_plain: [const { OnceCell::new() }; 5],
            omega_graded: [const { OnceCell::new() }; 5],
            star: OnceCell::new(),
        }
    }

    pub fn model(&self) -> &Model {
        self.sys.model()
    }

    pub fn system(&self) -> &DynamicalSystem {
        &self.sys
    }

    pub fn into_model(self) -> Model {
        self.sys.into_model()
    }

    fn t(&self) -> &Topology {
        self.model().topology()
    }

    pub fn class(&self) -> IdealClassification {
        *self
            .class
            .get_or_init(|| classify(self.t(), self.model().ideal()))
    }

    pub fn transitive(&self) -> bool {
        self.k_transitive_plain(OpenKind::Open).holds
    }

    /// `None` when the ideal is improper (the notion is undefined there).
    pub fn i_transitive(&self) -> Option<bool> {
        self.k_transitive_graded(OpenKind::Open).map(|v| v.holds)
    }

    fn k_transitive_plain(&self, kind: OpenKind) -> Verdict {
        *self.k_plain[kind_index(kind)]
            .get_or_init(|| pair_scan(self.model(), self.k_family(kind), false))
    }

    fn k_transitive_graded(&self, kind: OpenKind) -> Option<Verdict> {
        *self.k_graded[kind_index(kind)].get_or_init(|| {
            if !self.model().ideal().is_proper() {
                return None;
            }
            Some(pair_scan(self.model(), self.k_family(kind), true))
        })
    }

    fn omega(&self, kind: OpenKind, graded: bool) -> Subset {
        let cell = if graded {
            &self.omega_graded[kind_index(kind)]
        } else {
            &self.omega_plain[kind_index(kind)]
        };
        *cell.get_or_init(|| omega_over(self, self.k_family(kind), graded))
    }

    pub fn continuous(&self) -> bool {
        *self
            .continuous
            .get_or_init(|| self.t().is_continuous(self.model().map()).holds)
    }

    pub fn open_map(&self) -> bool {
        *self
            .open_map
            .get_or_init(|| self.t().is_open_map(self.model().map()).holds)
    }

    /// Memo of `Topology::closure` over every subset.
    fn closure_of(&self, a: Subset) -> Subset {
        let table = self.closure_table.get_or_init(|| {
            self.model()
                .ground()
                .subsets()
                .map(|s| self.t().closure(s))
                .collect()
        });
        table[a.bits() as usize]
    }

    fn interior_of(&self, a: Subset) -> Subset {
        self.closure_of(a.complement()).complement()
    }

    /// Memo of `ideal::local_function` over every subset.
    fn local_of(&self, a: Subset) -> Subset {
        let table = self.local_table.get_or_init(|| {
            self.model()
                .ground()
                .subsets()
                .map(|s| crate::ideal::local_function(self.t(), self.model().ideal(), s))
                .collect()
        });
        table[a.bits() as usize]
    }

    fn psi_of(&self, a: Subset) -> Subset {
        self.local_of(a.complement()).complement()
    }

    fn cl_star_of(&self, a: Subset) -> Subset {
        a.union(self.local_of(a))
    }

    fn dense(&self, a: Subset) -> bool {
        self.closure_of(a).is_full()
    }

    fn i_dense(&self, a: Subset) -> bool {
        self.local_of(a).is_full()
    }

    fn star_dense(&self, a: Subset) -> bool {
        self.cl_star_of(a).is_full()
    }

    /// Memo of `genopen::k_opens` (cross-checked against the module route by
    /// the ALG_GENOPEN target).
    fn k_family(&self, kind: OpenKind) -> &SetFamily {
        self.k_families[kind_index(kind)].get_or_init(|| {
            if kind == OpenKind::Open {
                return self.t().opens().clone();
            }
            self.model()
                .ground()
                .subsets()
                .filter(|&a| match kind {
                    OpenKind::Open => unreachable!(),
                    OpenKind::Semi => a.is_subset_of(self.closure_of(self.interior_of(a))),
                    OpenKind::Pre => a.is_subset_of(self.interior_of(self.closure_of(a))),
                    OpenKind::B => {
                        let ci = self.closure_of(self.interior_of(a));
                        let ic = self.interior_of(self.closure_of(a));
                        a.is_subset_of(ci.union(ic))
                    }
                    OpenKind::Beta => {
                        a.is_subset_of(self.closure_of(self.interior_of(self.closure_of(a))))
                    }
                })
                .collect()
        })
    }

    fn star_topology(&self) -> &Topology {
        self.star
            .get_or_init(|| crate::ideal::star_topology(self.t(), self.model().ideal()))
    }

    fn set(&self, s: Subset) -> String {
        self.model().ground().render(s)
    }
}

fn always(_: &Ctx) -> bool {
    true
}

/// Hypothesis for map-independent algebra targets: run once per
/// (topology, ideal) pair, on the identity map, instead of redundantly for
/// every one of the `n^n` maps sharing that pair.
fn identity_map_only(ctx: &Ctx) -> bool {
    let f = ctx.model().map();
    (0..ctx.model().ground().len()).all(|x| f.apply(x) == x)
}

fn proper(ctx: &Ctx) -> bool {
    ctx.model().ideal().is_proper()
}

fn ideal_transitive(ctx: &Ctx) -> bool {
    ctx.i_transitive() == Some(true)
}

/// `∀ ordered pairs (A, B) of nonempty members ∃ n ≥ 1: wrap(f^n(A)) ∩ B ≠ ∅`.
fn pair_scan_with(
    ctx: &Ctx,
    family: &SetFamily,
    wrap: impl Fn(Subset) -> Subset,
) -> bool {
    let f = ctx.model().map();
    let h = f.horizon();
    for u in family.nonempty() {
        for v in family.nonempty() {
            if !(1..=h).any(|n| wrap(f.image_iter(u, n)).meets(v)) {
                return false;
            }
        }
    }
    true
}

/// Per-point return test over a family, with a wrapper applied to the image.
fn returns_at(ctx: &Ctx, family: &SetFamily, x: usize, wrap: impl Fn(Subset) -> Subset) -> bool {
    let f = ctx.model().map();
    let h = f.horizon();
    family
        .nonempty()
        .filter(|m| m.contains(x))
        .all(|m| (1..=h).any(|n| wrap(f.image_iter(m, n)).meets(m)))
}

/// Non-wandering set over an explicit family, graded or plain.
fn omega_over(ctx: &Ctx, family: &SetFamily, graded: bool) -> Subset {
    let f = ctx.model().map();
    let i = ctx.model().ideal();
    let g = ctx.model().ground();
    let h = f.horizon();
    let mut bits = 0u32;
    'points: for x in 0..g.len() {
        for m in family.nonempty() {
            if !m.contains(x) {
                continue;
            }
            let returns = (1..=h).any(|n| {
                let s = f.image_iter(m, n).intersect(m);
                if graded { !i.contains(s) } else { !s.is_empty() }
            });
            if !returns {
                continue 'points;
            }
        }
        bits |= 1 << x;
    }
    g.subset_from_bits(bits)
}

/// Memoized kind-closure table over a family.
fn closure_table_over(ctx: &Ctx, family: &SetFamily) -> Vec<Subset> {
    ctx.model()
        .ground()
        .subsets()
        .map(|a| k_closure_over(family, a))
        .collect()
}

/// All bases of the topology when the ground set is tiny, otherwise the
/// minimal basis and the full family (quantifying over every basis is
/// exponential in the number of opens).
fn bases(t: &Topology) -> Vec<SetFamily> {
    let nonempty: Vec<Subset> = t.opens().nonempty().collect();
    let is_basis = |members: &[Subset]| -> bool {
        t.opens().nonempty().all(|o| {
            o.iter()
                .all(|x| members.iter().any(|b| b.contains(x) && b.is_subset_of(o)))
        })
    };
    if t.ground().len() <= 3 {
        let mut out = Vec::new();
        for mask in 0u32..(1 << nonempty.len()) {
            let members: Vec<Subset> = nonempty
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &s)| s)
                .collect();
            if is_basis(&members) {
                out.push(SetFamily::new(members));
            }
        }
        out
    } else {
        let minimal: Vec<Subset> = (0..t.ground().len())
            .map(|x| t.minimal_neighborhood(x))
            .collect();
        debug_assert!(is_basis(&minimal));
        vec![SetFamily::new(minimal), SetFamily::new(nonempty)]
    }
}

fn l3_1(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let route_i = ctx.transitive();
    let route_ii = pair_scan_with(ctx, t.opens(), |s| ctx.closure_of(s));
    if route_i != route_ii {
        return Err(format!("plain pair test {route_i} but closure-pair test {route_ii}"));
    }
    for basis in bases(t) {
        let route_iii = pair_scan_with(ctx, &basis, |s| s);
        if route_i != route_iii {
            return Err(format!(
                "plain pair test {route_i} but basic-pair test {route_iii} on basis {}",
                ctx.model().ground().render_family(&basis)
            ));
        }
    }
    Ok(())
}

fn l3_2(ctx: &Ctx) -> Result<(), String> {
    for kind in OpenKind::GENERALIZED {
        let fam = ctx.k_family(kind);
        let kcl = closure_table_over(ctx, fam);
        let route_i = ctx.k_transitive_plain(kind).holds;
        let route_ii = pair_scan_with(ctx, fam, |s| kcl[s.bits() as usize]);
        if route_i != route_ii {
            return Err(format!(
                "{}-transitive {route_i} but {}-closure route {route_ii}",
                kind.name(),
                kind.name()
            ));
        }
    }
    Ok(())
}

fn l3_3(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let base = bases(t);
    let omega = ctx.omega(OpenKind::Open, false);
    for x in 0..ctx.model().ground().len() {
        let route_i = omega.contains(x);
        let route_ii = returns_at(ctx, t.opens(), x, |s| ctx.closure_of(s));
        if route_i != route_ii {
            return Err(format!(
                "point {}: plain return {route_i} vs closure return {route_ii}",
                ctx.model().ground().label(x)
            ));
        }
        for basis in &base {
            let route_iii = returns_at(ctx, basis, x, |s| s);
            if route_i != route_iii {
                return Err(format!(
                    "point {}: plain return {route_i} vs basic return {route_iii}",
                    ctx.model().ground().label(x)
                ));
            }
        }
    }
    Ok(())
}

fn l3_4(ctx: &Ctx) -> Result<(), String> {
    for kind in OpenKind::GENERALIZED {
        let fam = ctx.k_family(kind);
        let kcl = closure_table_over(ctx, fam);
        let omega = ctx.omega(kind, false);
        for x in 0..ctx.model().ground().len() {
            let route_i = omega.contains(x);
            let route_ii = returns_at(ctx, fam, x, |s| kcl[s.bits() as usize]);
            if route_i != route_ii {
                return Err(format!(
                    "point {}, kind {}: plain return {route_i} vs kind-closure return {route_ii}",
                    ctx.model().ground().label(x),
                    kind.name()
                ));
            }
        }
    }
    Ok(())
}

fn hyp_t4_1(ctx: &Ctx) -> bool {
    ctx.class().codense && ctx.open_map() && ctx.transitive()
}

fn t4_1(ctx: &Ctx) -> Result<(), String> {
    if ctx.i_transitive() == Some(true) {
        Ok(())
    } else {
        Err("open transitive map over a codense ideal failed to be ideal-transitive".into())
    }
}

fn t4_7(ctx: &Ctx) -> Result<(), String> {
    if ctx.class().codense {
        Ok(())
    } else {
        Err("ideal-transitive but the ideal is not codense".into())
    }
}

fn union_density(ctx: &Ctx, direction: Direction) -> Result<(), String> {
    for u in ctx.t().opens().nonempty() {
        let w = forward_union(&ctx.sys, u, direction);
        if !ctx.i_dense(w) || !ctx.star_dense(w) {
            return Err(format!(
                "orbit union of U={} is {} (ideal-dense={}, star-dense={})",
                ctx.set(u),
                ctx.set(w),
                ctx.i_dense(w),
                ctx.star_dense(w)
            ));
        }
    }
    Ok(())
}

fn t4_2(ctx: &Ctx) -> Result<(), String> {
    union_density(ctx, Direction::Forward)
}

fn hyp_t4_4(ctx: &Ctx) -> bool {
    ideal_transitive(ctx) && ctx.continuous()
}

fn t4_4(ctx: &Ctx) -> Result<(), String> {
    union_density(ctx, Direction::Backward)
}

fn t4_5_closed(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let f = ctx.model().map();
    for a in ctx.model().ground().subsets() {
        if !t.is_closed(a) || !is_invariant(f, a.complement()) || a.is_full() {
            continue;
        }
        let p = ctx.psi_of(ctx.local_of(a));
        if !p.is_empty() {
            return Err(format!(
                "A={} is closed with invariant complement, yet psi(A*)={} is nonempty",
                ctx.set(a),
                ctx.set(p)
            ));
        }
    }
    Ok(())
}

fn fixed_open_density(ctx: &Ctx, exact: bool, need_star: bool) -> Result<(), String> {
    let f = ctx.model().map();
    for u in ctx.t().opens().nonempty() {
        let fixed = if exact { f.image(u) == u } else { is_invariant(f, u) };
        if !fixed {
            continue;
        }
        if !ctx.i_dense(u) || (need_star && !ctx.star_dense(u)) {
            return Err(format!(
                "U={} is open and {} but not ideal-dense",
                ctx.set(u),
                if exact { "fixed" } else { "invariant" }
            ));
        }
    }
    Ok(())
}

fn t4_6_fwd(ctx: &Ctx) -> Result<(), String> {
    fixed_open_density(ctx, true, true)
}

fn cor4_1(ctx: &Ctx) -> Result<(), String> {
    fixed_open_density(ctx, false, true)
}

fn t4_8a(ctx: &Ctx) -> Result<(), String> {
    for a in ctx.model().ground().subsets() {
        let s = a.minus(ctx.local_of(a)).complement();
        if !ctx.i_dense(s) || !ctx.star_dense(s) {
            return Err(format!(
                "X \\ (A \\ A*) = {} is not ideal-dense for A={}",
                ctx.set(s),
                ctx.set(a)
            ));
        }
    }
    Ok(())
}

fn t4_8b(ctx: &Ctx) -> Result<(), String> {
    for a in ctx.model().ground().subsets() {
        let s = ctx.psi_of(a).minus(a).complement();
        if !ctx.i_dense(s) {
            return Err(format!(
                "X \\ (psi(A) \\ A) = {} is not ideal-dense for A={}",
                ctx.set(s),
                ctx.set(a)
            ));
        }
    }
    Ok(())
}

fn t4_8_2(ctx: &Ctx) -> Result<(), String> {
    for a in ctx.model().ground().subsets() {
        let lhs = ctx.local_of(a).complement();
        let rhs = ctx.local_of(a.complement());
        if !lhs.is_subset_of(rhs) {
            return Err(format!(
                "X \\ A* = {} is not inside (X \\ A)* = {} for A={}",
                ctx.set(lhs),
                ctx.set(rhs),
                ctx.set(a)
            ));
        }
    }
    Ok(())
}

fn t_io(ctx: &Ctx) -> Result<(), String> {
    for o in ctx.t().opens().iter() {
        if !o.is_subset_of(ctx.interior_of(ctx.local_of(o))) {
            return Err(format!("open {} is not ideal-open", ctx.set(o)));
        }
    }
    Ok(())
}

fn t4_8_1_equiv(ctx: &Ctx) -> Result<(), String> {
    let g = ctx.model().ground();
    let a = ctx.class().codense;
    let b = ctx.psi_of(g.empty_set()).is_empty();
    let c = ctx.local_of(g.full_set()).is_full();
    let d = ctx
        .t()
        .opens()
        .iter()
        .all(|o| o.is_subset_of(ctx.local_of(o)));
    let e = ctx
        .model()
        .ideal()
        .members()
        .iter()
        .all(|m| ctx.psi_of(m).is_empty());
    if a != b || a != c || a != d || a != e {
        return Err(format!(
            "codense formulations disagree: tau-test={a} psi(empty)={b} X=X*={c} opens-grow={d} psi-of-members={e}"
        ));
    }
    Ok(())
}

fn compat_equiv(ctx: &Ctx) -> Result<(), String> {
    let i = ctx.model().ideal();
    let by_def = compatible_by_definition(ctx.t(), i);
    let by_residue = ctx
        .model()
        .ground()
        .subsets()
        .all(|a| i.contains(a.minus(ctx.local_of(a))));
    if !by_def || !by_residue || !ctx.class().compatible {
        return Err(format!(
            "compatibility routes disagree or fail: definition={by_def} residue={by_residue}"
        ));
    }
    Ok(())
}

fn dense_eq_cc(ctx: &Ctx) -> Result<(), String> {
    let v = dense_iff_i_dense_scan(ctx.t(), ctx.model().ideal());
    let cc = ctx.class().completely_codense;
    if v.holds != cc {
        return Err(format!(
            "every-dense-is-ideal-dense={} but completely-codense={} (witness {})",
            v.holds,
            cc,
            v.witness.map(|w| ctx.set(w)).unwrap_or_default()
        ));
    }
    Ok(())
}

fn density_chain(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let i = ctx.model().ideal();
    for a in ctx.model().ground().subsets() {
        // the full status cross-checks all routes in debug builds
        let st = if ctx.model().ground().len() <= 3 {
            density_status(t, i, a)
        } else {
            crate::density::DensityStatus {
                dense: ctx.dense(a),
                i_dense: ctx.i_dense(a),
                star_dense: ctx.star_dense(a),
                nowhere_dense: ctx.interior_of(ctx.closure_of(a)).is_empty(),
            }
        };
        if (st.i_dense && !st.star_dense)
            || (st.star_dense && !st.dense)
            || (st.nowhere_dense && st.dense)
        {
            return Err(format!("density chain broken at A={}: {st:?}", ctx.set(a)));
        }
    }
    Ok(())
}

fn k_chain(ctx: &Ctx) -> Result<(), String> {
    let verdict = |base: OpenKind, graded: bool| -> bool {
        if graded {
            ctx.k_transitive_graded(base).map(|v| v.holds).unwrap_or(false)
        } else {
            ctx.k_transitive_plain(base).holds
        }
    };
    let gradings: &[bool] = if proper(ctx) { &[false, true] } else { &[false] };
    for &graded in gradings {
        let beta = verdict(OpenKind::Beta, graded);
        let b = verdict(OpenKind::B, graded);
        let semi = verdict(OpenKind::Semi, graded);
        let pre = verdict(OpenKind::Pre, graded);
        let open = verdict(OpenKind::Open, graded);
        let chain_ok =
            (!beta || b) && (!b || semi) && (!b || pre) && (!semi || open) && (!pre || open);
        if !chain_ok {
            return Err(format!(
                "hierarchy chain broken (graded={graded}): beta={beta} b={b} semi={semi} pre={pre} open={open}"
            ));
        }
        if graded && open && !ctx.transitive() {
            return Err("ideal-transitive but not plainly transitive".into());
        }
    }
    Ok(())
}

fn hyp_trivial(ctx: &Ctx) -> bool {
    ctx.model().ideal().is_trivial()
}

fn trivial_degen(ctx: &Ctx) -> Result<(), String> {
    for base in OpenKind::ALL {
        let plain = ctx.k_transitive_plain(base);
        let graded = ctx.k_transitive_graded(base).expect("trivial ideal is proper");
        if plain != graded {
            return Err(format!("transitivity differs from plain for kind {}", base.name()));
        }
        if ctx.omega(base, false) != ctx.omega(base, true) {
            return Err(format!("non-wandering set differs for kind {}", base.name()));
        }
    }
    for a in ctx.model().ground().subsets() {
        let (d, i, s) = (ctx.dense(a), ctx.i_dense(a), ctx.star_dense(a));
        if d != i || d != s {
            return Err(format!("density predicates split on A={}", ctx.set(a)));
        }
    }
    Ok(())
}

fn hyp_t5_nw(ctx: &Ctx) -> bool {
    proper(ctx) && ctx.class().codense && ctx.open_map()
}

fn t5_nw_open(ctx: &Ctx) -> Result<(), String> {
    let omega = ctx.omega(OpenKind::Open, false);
    let omega_i = ctx.omega(OpenKind::Open, true);
    if !omega.is_subset_of(omega_i) {
        return Err(format!(
            "non-wandering {} escapes ideal-non-wandering {}",
            ctx.set(omega),
            ctx.set(omega_i)
        ));
    }
    Ok(())
}

fn omega_sub(ctx: &Ctx) -> Result<(), String> {
    for base in OpenKind::ALL {
        if !ctx.omega(base, true).is_subset_of(ctx.omega(base, false)) {
            return Err(format!(
                "kind {}: ideal-non-wandering set is not inside the plain one",
                base.name()
            ));
        }
    }
    let i = ctx.model().ideal();
    let omega_i = ctx.omega(OpenKind::Open, true);
    for x in omega_i.iter() {
        for o in ctx.t().opens().iter() {
            if o.contains(x) && i.contains(o) {
                return Err(format!(
                    "ideal-non-wandering point {} has an open neighborhood inside the ideal",
                    ctx.model().ground().label(x)
                ));
            }
        }
    }
    Ok(())
}

/// Finite instantiation of the compact-Hausdorff propositions: a finite
/// Hausdorff space is discrete and a completely codense ideal on it is
/// trivial, so the hypotheses collapse to "discrete, trivial ideal".
fn hyp_degenerate(ctx: &Ctx) -> bool {
    hyp_trivial(ctx) && ctx.t().opens().len() == 1usize << ctx.model().ground().len()
}

fn has_i_dense_orbit(ctx: &Ctx) -> bool {
    let sys = &ctx.sys;
    (0..ctx.model().ground().len()).any(|x| {
        let (_, orb) = crate::dynamics::orbit(sys, x).unwrap();
        ctx.i_dense(orb)
    })
}

fn p5_02(ctx: &Ctx) -> Result<(), String> {
    if ideal_transitive(ctx) && !has_i_dense_orbit(ctx) {
        return Err("ideal-transitive on a discrete space but no ideal-dense orbit".into());
    }
    Ok(())
}

fn p5_04(ctx: &Ctx) -> Result<(), String> {
    let lhs = ideal_transitive(ctx);
    let omega_i = ctx.omega(OpenKind::Open, true);
    let rhs = omega_i.is_full() && has_i_dense_orbit(ctx);
    if lhs != rhs {
        return Err(format!(
            "ideal-transitive={lhs} but (full ideal-non-wandering set and ideal-dense orbit)={rhs}"
        ));
    }
    Ok(())
}

fn alg_kuratowski(ctx: &Ctx) -> Result<(), String> {
    let g = ctx.model().ground();
    if !ctx.cl_star_of(g.empty_set()).is_empty() {
        return Err("Cl* of the empty set is nonempty".into());
    }
    for a in g.subsets() {
        let ca = ctx.cl_star_of(a);
        if !a.is_subset_of(ca) {
            return Err(format!("Cl* is not extensive at {}", ctx.set(a)));
        }
        if ctx.cl_star_of(ca) != ca {
            return Err(format!("Cl* is not idempotent at {}", ctx.set(a)));
        }
        for b in g.subsets() {
            if ctx.cl_star_of(a.union(b)) != ca.union(ctx.cl_star_of(b)) {
                return Err(format!(
                    "Cl* is not union-distributive at {} and {}",
                    ctx.set(a),
                    ctx.set(b)
                ));
            }
        }
    }
    Ok(())
}

fn alg_local(ctx: &Ctx) -> Result<(), String> {
    let g = ctx.model().ground();
    for a in g.subsets() {
        let sa = ctx.local_of(a);
        if !sa.is_subset_of(ctx.closure_of(a)) {
            return Err(format!("A* escapes Cl(A) at {}", ctx.set(a)));
        }
        for b in g.subsets() {
            if a.is_subset_of(b) && !sa.is_subset_of(ctx.local_of(b)) {
                return Err(format!(
                    "local function not monotone at {} <= {}",
                    ctx.set(a),
                    ctx.set(b)
                ));
            }
            if ctx.local_of(a.union(b)) != sa.union(ctx.local_of(b)) {
                return Err(format!(
                    "(A u B)* != A* u B* at {} and {}",
                    ctx.set(a),
                    ctx.set(b)
                ));
            }
        }
    }
    Ok(())
}

fn alg_psi(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let i = ctx.model().ideal();
    for a in ctx.model().ground().subsets() {
        let p = crate::ideal::psi(t, i, a);
        if p != ctx.psi_of(a) {
            return Err(format!("psi identity broken at {}", ctx.set(a)));
        }
        if !t.is_open(p) {
            return Err(format!("psi({}) = {} is not open", ctx.set(a), ctx.set(p)));
        }
        if i.is_trivial() && p != ctx.interior_of(a) {
            return Err(format!("psi != Int under the trivial ideal at {}", ctx.set(a)));
        }
    }
    Ok(())
}

fn alg_star(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let star = ctx.star_topology();
    for o in t.opens().iter() {
        if !star.is_open(o) {
            return Err(format!("tau is not refined by tau*: {} lost", ctx.set(o)));
        }
    }
    if Topology::validate(star.ground().clone(), star.opens().clone()).is_err() {
        return Err("star topology fails the axioms".into());
    }
    for a in ctx.model().ground().subsets() {
        let cl = ctx.cl_star_of(a);
        if cl != star.closure(a) {
            return Err(format!(
                "Cl* disagrees with closure in the star topology at {}",
                ctx.set(a)
            ));
        }
        if star.interior(a) != a.intersect(ctx.psi_of(a)) {
            return Err(format!(
                "Int* disagrees with A n psi(A) at {}",
                ctx.set(a)
            ));
        }
        if star.is_closed(a) != (cl == a) {
            return Err(format!(
                "star-closed sets are not the Cl* fixpoints at {}",
                ctx.set(a)
            ));
        }
    }
    Ok(())
}

fn alg_duality(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    let g = ctx.model().ground();
    for a in g.subsets() {
        if t.interior(a) != ctx.interior_of(a) {
            return Err(format!("Int/Cl duality broken at {}", ctx.set(a)));
        }
        let ca = ctx.closure_of(a);
        if !a.is_subset_of(ca) || ctx.closure_of(ca) != ca {
            return Err(format!("closure not extensive/idempotent at {}", ctx.set(a)));
        }
        for b in g.subsets() {
            if ctx.closure_of(a.union(b)) != ca.union(ctx.closure_of(b)) {
                return Err(format!(
                    "closure not additive at {} and {}",
                    ctx.set(a),
                    ctx.set(b)
                ));
            }
        }
    }
    let regen = Topology::generate(g.clone(), t.opens());
    if regen != *t {
        return Err("regenerating the topology from its own opens changed it".into());
    }
    Ok(())
}

fn alg_ideal(ctx: &Ctx) -> Result<(), String> {
    let i = ctx.model().ideal();
    let g = ctx.model().ground();
    let expected: SetFamily = g
        .subsets()
        .filter(|s| s.is_subset_of(i.union_set()))
        .collect();
    if *i.members() != expected {
        return Err("ideal members are not the power set of their union".into());
    }
    if !i.contains(i.union_set()) {
        return Err("union of all members escapes the ideal".into());
    }
    if i.is_proper() == i.union_set().is_full() {
        return Err("proper flag disagrees with the union set".into());
    }
    let f = ctx.model().map();
    let pushed = crate::ideal::pushforward(f, i);
    if pushed.union_set() != f.image(i.union_set()) {
        return Err("pushforward is not the power set of the image of the union".into());
    }
    Ok(())
}

fn alg_genopen(ctx: &Ctx) -> Result<(), String> {
    let t = ctx.t();
    // the context memo must match the module route exactly
    for kind in OpenKind::ALL {
        if *ctx.k_family(kind) != k_opens(t, kind) {
            return Err(format!("memoized {}-open family diverges", kind.name()));
        }
    }
    let so = ctx.k_family(OpenKind::Semi);
    let po = ctx.k_family(OpenKind::Pre);
    let bo = ctx.k_family(OpenKind::B);
    let beta = ctx.k_family(OpenKind::Beta);
    for o in t.opens().iter() {
        if !so.contains(o) || !po.contains(o) {
            return Err(format!("open {} missing from SO or PO", ctx.set(o)));
        }
    }
    for s in so.iter().chain(po.iter()) {
        if !bo.contains(s) {
            return Err(format!("{} escapes BO", ctx.set(s)));
        }
    }
    for s in bo.iter() {
        if !beta.contains(s) {
            return Err(format!("{} escapes betaO", ctx.set(s)));
        }
    }
    for kind in OpenKind::ALL {
        for s in ctx.k_family(kind).iter() {
            if !is_k_open(t, kind, s) {
                return Err(format!("{} fails its own {}-open formula", ctx.set(s), kind.name()));
            }
        }
        let kcl = closure_table_over(ctx, ctx.k_family(kind));
        for a in ctx.model().ground().subsets() {
            let kc = kcl[a.bits() as usize];
            if !a.is_subset_of(kc)
                || kcl[kc.bits() as usize] != kc
                || !kc.is_subset_of(ctx.closure_of(a))
            {
                return Err(format!("{}-closure misbehaves at {}", kind.name(), ctx.set(a)));
            }
            if kind == OpenKind::Open && kc != ctx.closure_of(a) {
                return Err(format!("open-kind closure differs from closure at {}", ctx.set(a)));
            }
        }
    }
    let io = crate::ideal::i_opens(t, ctx.model().ideal());
    if !io.contains(ctx.model().ground().empty_set()) {
        return Err("empty set is not ideal-open".into());
    }
    Ok(())
}

// --- suspect targets: converse directions with gap-ridden published proofs ---

fn hyp_forward_unions_dense(ctx: &Ctx) -> bool {
    proper(ctx)
        && ctx
            .t()
            .opens()
            .nonempty()
            .all(|u| ctx.i_dense(forward_union(&ctx.sys, u, Direction::Forward)))
}

fn t4_3_conv(ctx: &Ctx) -> Result<(), String> {
    if ideal_transitive(ctx) {
        Ok(())
    } else {
        let v = ctx.k_transitive_graded(OpenKind::Open).expect("hypothesis requires proper");
        let w = v.witness.unwrap();
        Err(format!(
            "all forward orbit unions are ideal-dense, yet not ideal-transitive: pair U={} V={}",
            ctx.set(w.u),
            ctx.set(w.v)
        ))
    }
}

fn hyp_backward_unions_dense(ctx: &Ctx) -> bool {
    proper(ctx)
        && ctx
            .t()
            .opens()
            .nonempty()
            .all(|u| ctx.i_dense(forward_union(&ctx.sys, u, Direction::Backward)))
}

fn t4_5_fk(ctx: &Ctx) -> Result<(), String> {
    let f = ctx.model().map();
    let i = ctx.model().ideal();
    let opens = ctx.t().opens();
    let h = f.horizon();
    for k in 1..=h {
        let pushed_union = f.image_iter(i.union_set(), k);
        let ok = opens.nonempty().all(|u| {
            opens.nonempty().all(|v| {
                (1..=h).any(|n| !f.image_iter(u, n).intersect(v).is_subset_of(pushed_union))
            })
        });
        if ok {
            return Ok(());
        }
    }
    Err(format!(
        "no exponent k in 1..={h} makes the map transitive modulo the pushed-forward ideal"
    ))
}

fn hyp_fixed_opens_i_dense(ctx: &Ctx) -> bool {
    proper(ctx)
        && ctx.t().opens().iter().all(|u| {
            ctx.model().map().image(u) != u || u.is_empty() || ctx.i_dense(u)
        })
}

fn t4_6_2to1(ctx: &Ctx) -> Result<(), String> {
    if ideal_transitive(ctx) {
        Ok(())
    } else {
        Err("every fixed open is empty or ideal-dense, yet not ideal-transitive".into())
    }
}

fn hyp_fixed_opens_star_dense(ctx: &Ctx) -> bool {
    proper(ctx)
        && ctx.t().opens().iter().all(|u| {
            ctx.model().map().image(u) != u || u.is_empty() || ctx.star_dense(u)
        })
}

fn t4_6_3to1(ctx: &Ctx) -> Result<(), String> {
    if ideal_transitive(ctx) {
        Ok(())
    } else {
        Err("every fixed open is empty or star-dense, yet not ideal-transitive".into())
    }
}

pub const REGISTRY: &[TheoremTarget] = &[
    TheoremTarget {
        id: "L3_1",
        summary: "plain transitivity == closure-pair test == basic-pair test, for every basis",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: l3_1,
    },
    TheoremTarget {
        id: "L3_2",
        summary: "K-transitivity == K-closure-pair test for semi/pre/b/beta",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: l3_2,
    },
    TheoremTarget {
        id: "L3_3",
        summary: "non-wandering == closure return test == basic return test",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: l3_3,
    },
    TheoremTarget {
        id: "L3_4",
        summary: "K-non-wandering == K-closure return test for semi/pre/b/beta",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: l3_4,
    },
    TheoremTarget {
        id: "T4_1",
        summary: "codense ideal + open transitive map => ideal-transitive",
        status: TargetStatus::Sound,
        hypothesis: hyp_t4_1,
        conclusion: t4_1,
    },
    TheoremTarget {
        id: "T4_2",
        summary: "ideal-transitive => forward orbit unions of opens are ideal-dense and star-dense",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_2,
    },
    TheoremTarget {
        id: "T4_4",
        summary: "ideal-transitive + continuous => backward orbit unions are ideal-dense and star-dense",
        status: TargetStatus::Sound,
        hypothesis: hyp_t4_4,
        conclusion: t4_4,
    },
    TheoremTarget {
        id: "T4_5_CLOSED",
        summary: "ideal-transitive: closed A with invariant complement has A=X or psi(A*)=empty",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_5_closed,
    },
    TheoremTarget {
        id: "T4_6_FWD",
        summary: "ideal-transitive: fixed opens are empty or ideal-dense (and star-dense)",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_6_fwd,
    },
    TheoremTarget {
        id: "COR4_1",
        summary: "ideal-transitive: invariant opens are empty or ideal-dense",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: cor4_1,
    },
    TheoremTarget {
        id: "T4_7",
        summary: "ideal-transitive => the ideal is codense",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_7,
    },
    TheoremTarget {
        id: "T4_8A",
        summary: "ideal-transitive => X \\ (A \\ A*) is ideal-dense for every A",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_8a,
    },
    TheoremTarget {
        id: "T4_8B",
        summary: "ideal-transitive => X \\ (psi(A) \\ A) is ideal-dense for every A",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_8b,
    },
    TheoremTarget {
        id: "T4_8_2",
        summary: "ideal-transitive => X \\ A* is contained in (X \\ A)*",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t4_8_2,
    },
    TheoremTarget {
        id: "T_IO",
        summary: "ideal-transitive => every open is ideal-open",
        status: TargetStatus::Sound,
        hypothesis: ideal_transitive,
        conclusion: t_io,
    },
    TheoremTarget {
        id: "T4_8_1_EQUIV",
        summary: "five codense formulations coincide",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: t4_8_1_equiv,
    },
    TheoremTarget {
        id: "COMPAT_EQUIV",
        summary: "compatibility holds on finite models and matches the residue criterion",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: compat_equiv,
    },
    TheoremTarget {
        id: "DENSE_EQ_CC",
        summary: "every dense set ideal-dense <=> completely codense",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: dense_eq_cc,
    },
    TheoremTarget {
        id: "DENSITY_CHAIN",
        summary: "ideal-dense => star-dense => dense; nowhere-dense excludes dense",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: density_chain,
    },
    TheoremTarget {
        id: "K_CHAIN",
        summary: "beta => b => semi/pre => open transitivity, plain and graded",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: k_chain,
    },
    TheoremTarget {
        id: "TRIVIAL_DEGEN",
        summary: "with the trivial ideal, graded notions coincide with plain ones",
        status: TargetStatus::Sound,
        hypothesis: hyp_trivial,
        conclusion: trivial_degen,
    },
    TheoremTarget {
        id: "T5_NW_OPEN",
        summary: "codense ideal + open map => non-wandering points are ideal-non-wandering",
        status: TargetStatus::Sound,
        hypothesis: hyp_t5_nw,
        conclusion: t5_nw_open,
    },
    TheoremTarget {
        id: "OMEGA_SUB",
        summary: "ideal-non-wandering implies non-wandering; no neighborhood of such a point is small",
        status: TargetStatus::Sound,
        hypothesis: proper,
        conclusion: omega_sub,
    },
    TheoremTarget {
        id: "P5_02",
        summary: "finite instantiation: discrete + trivial ideal + ideal-transitive => ideal-dense orbit",
        status: TargetStatus::Sound,
        hypothesis: hyp_degenerate,
        conclusion: p5_02,
    },
    TheoremTarget {
        id: "P5_04",
        summary: "finite instantiation: ideal-transitive <=> full ideal-non-wandering set + ideal-dense orbit",
        status: TargetStatus::Sound,
        hypothesis: hyp_degenerate,
        conclusion: p5_04,
    },
    TheoremTarget {
        id: "ALG_KURATOWSKI",
        summary: "Cl* satisfies the Kuratowski closure axioms",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_kuratowski,
    },
    TheoremTarget {
        id: "ALG_LOCAL",
        summary: "A* stays inside Cl(A), is monotone, and distributes over unions",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_local,
    },
    TheoremTarget {
        id: "ALG_PSI",
        summary: "psi is the open complement-dual of the local function",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_psi,
    },
    TheoremTarget {
        id: "ALG_STAR",
        summary: "tau* refines tau, passes the axioms, and matches Cl*/Int*",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_star,
    },
    TheoremTarget {
        id: "ALG_DUALITY",
        summary: "Int/Cl duality and the closure axioms for the base topology",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_duality,
    },
    TheoremTarget {
        id: "ALG_IDEAL",
        summary: "ideals are power sets of their union, additively closed, with a correct proper flag",
        status: TargetStatus::Sound,
        hypothesis: always,
        conclusion: alg_ideal,
    },
    TheoremTarget {
        id: "ALG_GENOPEN",
        summary: "generalized-open inclusion chains and kind-closure algebra",
        status: TargetStatus::Sound,
        hypothesis: identity_map_only,
        conclusion: alg_genopen,
    },
    TheoremTarget {
        id: "T4_3_CONV",
        summary: "all forward orbit unions ideal-dense => ideal-transitive (converse direction)",
        status: TargetStatus::Suspect,
        hypothesis: hyp_forward_unions_dense,
        conclusion: t4_3_conv,
    },
    TheoremTarget {
        id: "T4_5_FK",
        summary: "all backward orbit unions ideal-dense => transitive modulo some pushed-forward ideal",
        status: TargetStatus::Suspect,
        hypothesis: hyp_backward_unions_dense,
        conclusion: t4_5_fk,
    },
    TheoremTarget {
        id: "T4_6_2TO1",
        summary: "fixed opens empty-or-ideal-dense => ideal-transitive (converse direction)",
        status: TargetStatus::Suspect,
        hypothesis: hyp_fixed_opens_i_dense,
        conclusion: t4_6_2to1,
    },
    TheoremTarget {
        id: "T4_6_3TO1",
        summary: "fixed opens empty-or-star-dense => ideal-transitive (converse direction)",
        status: TargetStatus::Suspect,
        hypothesis: hyp_fixed_opens_star_dense,
        conclusion: t4_6_3to1,
    },
];

pub fn sound_targets() -> impl Iterator<Item = &'static TheoremTarget> {
    REGISTRY.iter().filter(|t| t.status == TargetStatus::Sound)
}

pub fn suspect_targets() -> impl Iterator<Item = &'static TheoremTarget> {
    REGISTRY.iter().filter(|t| t.status == TargetStatus::Suspect)
}

pub fn target_by_id(id: &str) -> Option<&'static TheoremTarget> {
    REGISTRY.iter().find(|t| t.id == id)
}
