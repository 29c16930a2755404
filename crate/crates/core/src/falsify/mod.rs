//! Exhaustive enumeration of small models, definition-literal oracles, and
//! the theorem verification / counterexample-mining suite.
//!
//! Determinism contract: enumeration order is canonical (topologies by
//! family mask, ideals by union-set bits, maps by image tuple), instance
//! checks are independent and may run on a worker pool, and reports merge by
//! canonical instance index — so suite output is byte-identical across runs
//! and across worker counts. Random model generation is seeded ChaCha8 with
//! the seed recorded in the report consumer, never wall-clock entropy.

mod enumerate;
pub mod oracle;
mod targets;

pub use enumerate::{
    enumerate_ideals, enumerate_selfmaps, enumerate_topologies, topologies_by_family_filter,
    MAX_ENUM_POINTS,
};
pub use targets::{
    sound_targets, suspect_targets, target_by_id, Ctx, TargetStatus, TheoremTarget, REGISTRY,
};

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::ideal::Ideal;
use crate::model::Model;
use crate::topology::{GroundSet, SelfMap, SetFamily, Topology};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FalsifyError {
    #[error("ground size {0} is outside the supported enumeration range 1..=5")]
    SizeTooLarge(usize),
    #[error("unknown predicate flag `{0}`")]
    UnknownFlag(String),
}

/// Which models a suite or mining run ranges over: every (topology, ideal,
/// self-map) triple on ground sets of size `1..=max_points`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelSpace {
    pub max_points: usize,
    /// Keep only maps continuous for their topology.
    pub continuous_only: bool,
    /// Skip the improper ideal `P(X)`.
    pub proper_ideals_only: bool,
}

impl ModelSpace {
    pub fn up_to(max_points: usize) -> ModelSpace {
        ModelSpace { max_points, continuous_only: false, proper_ideals_only: false }
    }
}

/// Outcome of one target over a whole model space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetOutcome {
    pub id: &'static str,
    pub status: TargetStatus,
    /// Models on which the hypothesis held.
    pub applicable: u64,
    /// Models on which the conclusion then failed.
    pub violations: u64,
    /// First violation in canonical enumeration order, if any.
    pub first_witness: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Canonical (size, topology, ideal, map) index of the model.
    pub instance: (usize, usize, usize, usize),
    pub model: String,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub space: ModelSpace,
    pub include_suspect: bool,
    /// Models visited.
    pub instances: u64,
    /// One entry per target, in registry order.
    pub outcomes: Vec<TargetOutcome>,
    /// Wall-clock time; excluded from the canonical rendering.
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn sound_violations(&self) -> u64 {
        self.outcomes
            .iter()
            .filter(|o| o.status == TargetStatus::Sound)
            .map(|o| o.violations)
            .sum()
    }

    /// Deterministic rendering: byte-identical across runs and worker counts.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite max_points={} continuous_only={} proper_ideals_only={} include_suspect={} instances={}",
            self.space.max_points,
            self.space.continuous_only,
            self.space.proper_ideals_only,
            self.include_suspect,
            self.instances
        );
        for o in &self.outcomes {
            let status = match o.status {
                TargetStatus::Sound => "sound",
                TargetStatus::Suspect => "suspect",
            };
            let _ = write!(
                out,
                "{:<14} {:<8} applicable={:<8} violations={}",
                o.id, status, o.applicable, o.violations
            );
            match &o.first_witness {
                Some(v) => {
                    let _ = writeln!(out, " first: [{}] {}", v.model, v.witness);
                }
                None => {
                    let _ = writeln!(out);
                }
            }
        }
        out
    }
}

/// Run the given targets over every model in the space. Parallel over
/// topologies; results merge by canonical instance index.
type TargetRow = (usize, u64, u64, Option<Violation>);

pub fn run_suite(space: ModelSpace, targets: &[&TheoremTarget]) -> Result<SuiteReport, FalsifyError> {
    if space.max_points == 0 || space.max_points > MAX_ENUM_POINTS {
        return Err(FalsifyError::SizeTooLarge(space.max_points));
    }
    let start = Instant::now();
    let mut instances = 0u64;
    let mut per_target: Vec<TargetOutcome> = targets
        .iter()
        .map(|t| TargetOutcome {
            id: t.id,
            status: t.status,
            applicable: 0,
            violations: 0,
            first_witness: None,
        })
        .collect();

    for n in 1..=space.max_points {
        let topologies = enumerate_topologies(n)?;
        let ideals = enumerate_ideals(n)?;
        let maps = enumerate_selfmaps(n, None, false)?;

        let chunks: Vec<(u64, Vec<TargetRow>)> = topologies
            .par_iter()
            .enumerate()
            .map(|(ti, topology)| {
                let mut counted = 0u64;
                // (applicable, violations, first witness) per target
                let mut local: Vec<(u64, u64, Option<Violation>)> =
                    vec![(0, 0, None); targets.len()];
                let continuous: Vec<&SelfMap> = maps
                    .iter()
                    .filter(|f| !space.continuous_only || topology.is_continuous(f).holds)
                    .collect();
                for (ii, ideal) in ideals.iter().enumerate() {
                    if space.proper_ideals_only && !ideal.is_proper() {
                        continue;
                    }
                    for (fi, f) in continuous.iter().copied().enumerate() {
                        counted += 1;
                        let model =
                            Model::new(topology.clone(), ideal.clone(), (*f).clone());
                        let ctx = Ctx::new(model);
                        for (k, target) in targets.iter().enumerate() {
                            if !(target.hypothesis)(&ctx) {
                                continue;
                            }
                            local[k].0 += 1;
                            if let Err(witness) = (target.conclusion)(&ctx) {
                                local[k].1 += 1;
                                if local[k].2.is_none() {
                                    local[k].2 = Some(Violation {
                                        instance: (n, ti, ii, fi),
                                        model: ctx.model().to_compact(),
                                        witness,
                                    });
                                }
                            }
                        }
                    }
                }
                let rows: Vec<TargetRow> = local
                    .into_iter()
                    .enumerate()
                    .map(|(k, (a, v, w))| (k, a, v, w))
                    .collect();
                (counted, rows)
            })
            .collect();

        for (counted, rows) in chunks {
            instances += counted;
            for (k, applicable, violations, witness) in rows {
                let slot = &mut per_target[k];
                slot.applicable += applicable;
                slot.violations += violations;
                if let Some(w) = witness {
                    match &slot.first_witness {
                        Some(existing) if existing.instance <= w.instance => {}
                        _ => slot.first_witness = Some(w),
                    }
                }
            }
        }
    }

    Ok(SuiteReport {
        space,
        include_suspect: targets.iter().any(|t| t.status == TargetStatus::Suspect),
        instances,
        outcomes: per_target,
        elapsed: start.elapsed(),
    })
}

/// Run the sound and optionally the suspect targets.
pub fn run_registry_suite(
    space: ModelSpace,
    include_suspect: bool,
) -> Result<SuiteReport, FalsifyError> {
    let targets: Vec<&TheoremTarget> = REGISTRY
        .iter()
        .filter(|t| include_suspect || t.status == TargetStatus::Sound)
        .collect();
    run_suite(space, &targets)
}

/// Run targets over an explicit model list (e.g. a single corpus model).
pub fn run_suite_on_models(models: &[Model], targets: &[&TheoremTarget]) -> SuiteReport {
    let start = Instant::now();
    let mut outcomes: Vec<TargetOutcome> = targets
        .iter()
        .map(|t| TargetOutcome {
            id: t.id,
            status: t.status,
            applicable: 0,
            violations: 0,
            first_witness: None,
        })
        .collect();
    for (mi, model) in models.iter().enumerate() {
        let ctx = Ctx::new(model.clone());
        for (k, target) in targets.iter().enumerate() {
            if !(target.hypothesis)(&ctx) {
                continue;
            }
            outcomes[k].applicable += 1;
            if let Err(witness) = (target.conclusion)(&ctx) {
                outcomes[k].violations += 1;
                if outcomes[k].first_witness.is_none() {
                    outcomes[k].first_witness = Some(Violation {
                        instance: (model.ground().len(), mi, 0, 0),
                        model: model.to_compact(),
                        witness,
                    });
                }
            }
        }
    }
    SuiteReport {
        space: ModelSpace::up_to(0),
        include_suspect: targets.iter().any(|t| t.status == TargetStatus::Suspect),
        instances: models.len() as u64,
        outcomes,
        elapsed: start.elapsed(),
    }
}

/// The named model predicates the miner understands.
pub const MINE_FLAGS: &[&str] = &[
    "transitive",
    "i_transitive",
    "semi_transitive",
    "pre_transitive",
    "b_transitive",
    "beta_transitive",
    "semi_i_transitive",
    "pre_i_transitive",
    "b_i_transitive",
    "beta_i_transitive",
    "codense",
    "completely_codense",
    "dense_eq_idense",
    "omega_gap",
    "continuous",
    "open_map",
    "trivial_ideal",
    "has_dense_orbit",
    "has_i_dense_orbit",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinePredicate {
    /// (flag, expected value) conjuncts.
    terms: Vec<(String, bool)>,
}

impl MinePredicate {
    /// Parse a conjunction like `transitive & !i_transitive` (whitespace,
    /// `&`, and `,` all separate terms; `!` or `not ` negates).
    pub fn parse(text: &str) -> Result<MinePredicate, FalsifyError> {
        let mut terms = Vec::new();
        for raw in text.split(|c: char| c.is_whitespace() || c == '&' || c == ',') {
            let mut term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let mut expected = true;
            while let Some(rest) = term.strip_prefix('!') {
                expected = !expected;
                term = rest.trim();
            }
            if !MINE_FLAGS.contains(&term) {
                return Err(FalsifyError::UnknownFlag(term.to_string()));
            }
            terms.push((term.to_string(), expected));
        }
        Ok(MinePredicate { terms })
    }

    pub fn eval(&self, ctx: &Ctx) -> bool {
        self.terms.iter().all(|(flag, expected)| {
            eval_flag(ctx, flag).map(|v| v == *expected).unwrap_or(false)
        })
    }
}

fn graded_kind(ctx: &Ctx, base: crate::genopen::OpenKind, graded: bool) -> Option<bool> {
    let kind = if graded {
        crate::dynamics::TransitivityKind::ideal(base)
    } else {
        crate::dynamics::TransitivityKind::plain(base)
    };
    crate::dynamics::check_transitive(sys_of(ctx), kind).ok().map(|v| v.holds)
}

fn sys_of(ctx: &Ctx) -> &crate::dynamics::DynamicalSystem {
    ctx.system()
}

/// `None` means the flag is undefined for this model (e.g. graded notions
/// over an improper ideal), which makes any conjunct containing it false.
fn eval_flag(ctx: &Ctx, flag: &str) -> Option<bool> {
    use crate::genopen::OpenKind::*;
    match flag {
        "transitive" => Some(ctx.transitive()),
        "i_transitive" => ctx.i_transitive(),
        "semi_transitive" => graded_kind(ctx, Semi, false),
        "pre_transitive" => graded_kind(ctx, Pre, false),
        "b_transitive" => graded_kind(ctx, B, false),
        "beta_transitive" => graded_kind(ctx, Beta, false),
        "semi_i_transitive" => graded_kind(ctx, Semi, true),
        "pre_i_transitive" => graded_kind(ctx, Pre, true),
        "b_i_transitive" => graded_kind(ctx, B, true),
        "beta_i_transitive" => graded_kind(ctx, Beta, true),
        "codense" => Some(ctx.class().codense),
        "completely_codense" => Some(ctx.class().completely_codense),
        "dense_eq_idense" => Some(
            crate::density::dense_iff_i_dense_scan(
                ctx.model().topology(),
                ctx.model().ideal(),
            )
            .holds,
        ),
        "omega_gap" => {
            let plain = crate::dynamics::nonwandering_set(
                sys_of(ctx),
                crate::dynamics::TransitivityKind::plain(Open),
            )
            .ok()?;
            let graded = crate::dynamics::nonwandering_set(
                sys_of(ctx),
                crate::dynamics::TransitivityKind::ideal(Open),
            )
            .ok()?;
            Some(plain != graded)
        }
        "continuous" => Some(ctx.continuous()),
        "open_map" => Some(ctx.open_map()),
        "trivial_ideal" => Some(ctx.model().ideal().is_trivial()),
        "has_dense_orbit" => crate::dynamics::transitive_points(
            sys_of(ctx),
            crate::dynamics::OrbitDensity::Dense,
        )
        .ok()
        .map(|s| !s.is_empty()),
        "has_i_dense_orbit" => crate::dynamics::transitive_points(
            sys_of(ctx),
            crate::dynamics::OrbitDensity::IDense,
        )
        .ok()
        .map(|s| !s.is_empty()),
        _ => None,
    }
}

/// All models (or the first `limit`) in the space satisfying the predicate,
/// canonical order.
pub fn mine(
    space: ModelSpace,
    predicate: &MinePredicate,
    limit: Option<usize>,
) -> Result<Vec<Model>, FalsifyError> {
    if space.max_points == 0 || space.max_points > MAX_ENUM_POINTS {
        return Err(FalsifyError::SizeTooLarge(space.max_points));
    }
    let mut out = Vec::new();
    'sizes: for n in 1..=space.max_points {
        let topologies = enumerate_topologies(n)?;
        let ideals = enumerate_ideals(n)?;
        let maps = enumerate_selfmaps(n, None, false)?;
        let hits: Vec<Vec<Model>> = topologies
            .par_iter()
            .map(|topology| {
                let mut found = Vec::new();
                for ideal in &ideals {
                    if space.proper_ideals_only && !ideal.is_proper() {
                        continue;
                    }
                    for f in &maps {
                        if space.continuous_only && !topology.is_continuous(f).holds {
                            continue;
                        }
                        let model = Model::new(topology.clone(), ideal.clone(), f.clone());
                        let ctx = Ctx::new(model);
                        if predicate.eval(&ctx) {
                            found.push(ctx.into_model());
                        }
                    }
                }
                found
            })
            .collect();
        for group in hits {
            for m in group {
                out.push(m);
                if let Some(k) = limit {
                    if out.len() >= k {
                        break 'sizes;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Compare the primary implementations against the definition-literal
/// oracles on one model: local function and the density flags on every
/// subset, transitivity and non-wandering for the given kind combinations
/// (errors included — both sides must reject improper ideals alike).
pub fn differential_compare(
    model: &Model,
    combos: &[crate::dynamics::TransitivityKind],
) -> Result<(), String> {
    let t = model.topology();
    let i = model.ideal();
    let sys = crate::dynamics::DynamicalSystem::new(model.clone());
    for a in model.ground().subsets() {
        let prim = crate::ideal::local_function(t, i, a);
        let orac = oracle::local_function(t, i, a);
        if prim != orac {
            return Err(format!(
                "local function differs at {}: primary {} oracle {}",
                model.ground().render(a),
                model.ground().render(prim),
                model.ground().render(orac)
            ));
        }
        let prim = crate::density::density_status(t, i, a);
        let orac = oracle::density_status(t, i, a);
        if prim != orac {
            return Err(format!(
                "density status differs at {}: primary {:?} oracle {:?}",
                model.ground().render(a),
                prim,
                orac
            ));
        }
    }
    for &kind in combos {
        let prim = crate::dynamics::check_transitive(&sys, kind);
        let orac = oracle::check_transitive(model, kind);
        if prim != orac {
            return Err(format!(
                "transitivity ({}) differs: primary {prim:?} oracle {orac:?}",
                kind.name()
            ));
        }
        let prim = crate::dynamics::nonwandering_set(&sys, kind);
        let orac = oracle::nonwandering_set(model, kind);
        if prim != orac {
            return Err(format!(
                "non-wandering set ({}) differs: primary {prim:?} oracle {orac:?}",
                kind.name()
            ));
        }
    }
    Ok(())
}

/// Deterministic pseudo-random models for differential testing: a seeded
/// ChaCha8 stream drives a random subbasis, a random ideal union set, and a
/// random image tuple.
pub fn random_models(n: usize, count: usize, seed: u64) -> Vec<Model> {
    assert!((1..=MAX_ENUM_POINTS).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = GroundSet::letters(n);
    let full = (1u32 << n) - 1;
    (0..count)
        .map(|_| {
            let k = rng.gen_range(0..=3usize);
            let subbasis: SetFamily = (0..k)
                .map(|_| ground.subset_from_bits(rng.gen_range(0..=full)))
                .collect();
            let topology = Topology::generate(ground.clone(), &subbasis);
            let ideal = Ideal::power_set_of(ground.clone(), ground.subset_from_bits(rng.gen_range(0..=full)));
            let images: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let map = SelfMap::new(ground.clone(), images).unwrap();
            Model::new(topology, ideal, map)
        })
        .collect()
}
