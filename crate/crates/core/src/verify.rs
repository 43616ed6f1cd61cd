//! Cross-checks of the state models: the ladder operators on 𝒮-states, the
//! exterior algebra, the spinor ideal and dense Jordan-Wigner matrices.

use std::fmt;

use crate::dense::{check_modes, embed_state, jw_ladder_matrix, state_from_dense, DenseOperator};
use crate::error::Result;
use crate::grassmann::{self, GrassmannForm};
use crate::ladder::{annihilate, create, Ladder};
use crate::sample;
use crate::scalar::C64;
use crate::spinor::{self, vacuum_projector};
use crate::sq::{inner_product, BasisState, IndexSet, SState};

/// Tolerance used for every comparison in [`compare_models`].
pub const MODEL_TOLERANCE: f64 = 1e-12;

/// Random states drawn by [`compare_models`] on top of the basis kets.
pub const DEFAULT_RANDOM_STATES: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelCheck {
    pub name: &'static str,
    pub max_deviation: f64,
    pub cases: usize,
}

impl ModelCheck {
    fn new(name: &'static str) -> Self {
        ModelCheck {
            name,
            max_deviation: 0.0,
            cases: 0,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        if deviation.is_nan() {
            self.max_deviation = f64::INFINITY;
        } else {
            self.max_deviation = self.max_deviation.max(deviation);
        }
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= MODEL_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelReport {
    pub modes: usize,
    pub seed: u64,
    pub basis_states: usize,
    pub random_states: usize,
    pub checks: Vec<ModelCheck>,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ModelCheck::passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "models m={} seed={} basis={} random={} tolerance={:e}",
            self.modes, self.seed, self.basis_states, self.random_states, MODEL_TOLERANCE
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<28} cases={:<6} max_dev={:.3e} {}",
                c.name,
                c.cases,
                c.max_deviation,
                if c.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        writeln!(
            f,
            "overall max_dev={:.3e} {}",
            self.max_deviation(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn diff(a: &SState, b: &SState) -> f64 {
    a.max_abs_diff(b).unwrap_or(f64::INFINITY)
}

fn via_grassmann(kind: Ladder, j: usize, psi: &SState) -> Result<SState> {
    let set = psi.index_set();
    let w = grassmann::grassmann_ladder(&set.labels()[j], kind, &grassmann::from_sstate(psi))?;
    grassmann::to_sstate(&w, set)
}

fn via_spinor(kind: Ladder, j: usize, psi: &SState) -> Result<SState> {
    let x = spinor::ladder_action(
        &psi.index_set().labels()[j],
        kind,
        &spinor::from_sstate(psi)?,
    )?;
    spinor::to_sstate(&x)
}

fn via_dense(op: &DenseOperator, psi: &SState) -> Result<SState> {
    state_from_dense(&op.apply(&embed_state(psi)?), psi.index_set())
}

/// Runs every basis ket of `m` modes and `random_states` seeded random
/// states through all four models and reports the largest disagreement per
/// check.
pub fn compare_models(m: usize, seed: u64, random_states: usize) -> Result<ModelReport> {
    check_modes(m)?;
    let set = IndexSet::numbered(m)?;
    let mut rng = sample::seeded(seed);

    let mut states: Vec<SState> = set
        .masks()
        .map(|mask| SState::basis(&BasisState::from_mask(&set, mask)))
        .collect::<Result<_>>()?;
    let basis_states = states.len();
    states.extend((0..random_states).map(|_| sample::state(&mut rng, &set)));

    let annihilators: Vec<DenseOperator> = (0..m)
        .map(|a| jw_ladder_matrix(a, m))
        .collect::<Result<_>>()?;
    let creators: Vec<DenseOperator> = annihilators.iter().map(|a| a.adjoint()).collect();

    let mut round_grassmann = ModelCheck::new("round-trip grassmann");
    let mut round_spinor = ModelCheck::new("round-trip spinor");
    let mut create_grassmann = ModelCheck::new("create ladder/grassmann");
    let mut create_spinor = ModelCheck::new("create ladder/spinor");
    let mut create_dense = ModelCheck::new("create ladder/dense");
    let mut annihilate_grassmann = ModelCheck::new("annihilate ladder/grassmann");
    let mut annihilate_spinor = ModelCheck::new("annihilate ladder/spinor");
    let mut annihilate_dense = ModelCheck::new("annihilate ladder/dense");
    let mut inner_grassmann = ModelCheck::new("inner ladder/grassmann");
    let mut inner_spinor = ModelCheck::new("inner ladder/spinor");
    let mut inner_dense = ModelCheck::new("inner ladder/dense");
    let mut vacuum_scalar = ModelCheck::new("vacuum scalar part");

    // exact: the vacuum coefficients are products of 1/2 and i
    let sc = vacuum_projector(&set)?.scalar_part();
    vacuum_scalar.record(if sc == C64::new(0.5f64.powi(m as i32), 0.0) {
        0.0
    } else {
        f64::INFINITY
    });

    for (k, psi) in states.iter().enumerate() {
        let form: GrassmannForm = grassmann::from_sstate(psi);
        round_grassmann.record(diff(&grassmann::to_sstate(&form, &set)?, psi));
        let ideal = spinor::from_sstate(psi)?;
        round_spinor.record(diff(&spinor::to_sstate(&ideal)?, psi));

        for (j, label) in set.labels().iter().enumerate() {
            let up = create(label, psi)?;
            create_grassmann.record(diff(&via_grassmann(Ladder::Create, j, psi)?, &up));
            create_spinor.record(diff(&via_spinor(Ladder::Create, j, psi)?, &up));
            create_dense.record(diff(&via_dense(&creators[j], psi)?, &up));

            let down = annihilate(label, psi)?;
            annihilate_grassmann.record(diff(&via_grassmann(Ladder::Annihilate, j, psi)?, &down));
            annihilate_spinor.record(diff(&via_spinor(Ladder::Annihilate, j, psi)?, &down));
            annihilate_dense.record(diff(&via_dense(&annihilators[j], psi)?, &down));
        }

        // pair each state with the next one, wrapping around
        let phi = &states[(k + 1) % states.len()];
        let reference = inner_product(psi, phi)?;
        let g = grassmann::grassmann_inner(&form, &grassmann::from_sstate(phi))?;
        inner_grassmann.record((g - reference).norm());
        let s = spinor::ideal_inner(&ideal, &spinor::from_sstate(phi)?)?;
        inner_spinor.record((s - reference).norm());
        let d = embed_state(psi)?.inner(&embed_state(phi)?);
        inner_dense.record((d - reference).norm());
    }

    Ok(ModelReport {
        modes: m,
        seed,
        basis_states,
        random_states,
        checks: vec![
            round_grassmann,
            round_spinor,
            create_grassmann,
            create_spinor,
            create_dense,
            annihilate_grassmann,
            annihilate_spinor,
            annihilate_dense,
            inner_grassmann,
            inner_spinor,
            inner_dense,
            vacuum_scalar,
        ],
    })
}
