//! Order-free fermionic ladder operators on [`SState`]s.
//!
//! The sign picked up by `a_i` or `a_i†` is `(-1)^#L`, where `#L` counts the
//! occupied modes written before `i`. It is always read off the canonical
//! representative, which makes the operators well defined on equivalence
//! classes of orderings.

use std::fmt;

use crate::error::Result;
use crate::scalar::ONE;
use crate::sq::{canonicalize, BasisState, IndexLabel, IndexSet, SState, Sign};

/// Absolute tolerance for CAR amplitude deviations.
pub const CAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// A ladder operator bound to one mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub kind: Ladder,
    pub index: IndexLabel,
}

impl LadderOp {
    pub fn create(index: IndexLabel) -> Self {
        LadderOp {
            kind: Ladder::Create,
            index,
        }
    }

    pub fn annihilate(index: IndexLabel) -> Self {
        LadderOp {
            kind: Ladder::Annihilate,
            index,
        }
    }

    pub fn apply(&self, psi: &SState) -> Result<SState> {
        match self.kind {
            Ladder::Create => create(&self.index, psi),
            Ladder::Annihilate => annihilate(&self.index, psi),
        }
    }
}

pub(crate) fn prefix_sign(mask: u64, position: usize) -> Sign {
    let below = mask & ((1u64 << position) - 1);
    Sign::from_parity(below.count_ones() as usize)
}

/// `(-1)^#L` for mode `i` of a (possibly unordered) ket.
pub fn sign_prefix(term: &BasisState, i: &IndexLabel) -> Result<Sign> {
    let (canonical, _) = canonicalize(term)?;
    let set = canonical.index_set();
    let p = set.require(i)?;
    let (mask, _) = canonical.mask_in(&set)?;
    Ok(prefix_sign(mask, p))
}

fn ladder_with(i: &IndexLabel, kind: Ladder, psi: &SState, signed: bool) -> Result<SState> {
    let p = psi.index_set().require(i)?;
    let bit = 1u64 << p;
    Ok(psi.map_terms(|m, c| {
        let occupied = m & bit != 0;
        let allowed = match kind {
            Ladder::Create => !occupied,
            Ladder::Annihilate => occupied,
        };
        if !allowed {
            return None;
        }
        let sign = if signed {
            prefix_sign(m, p)
        } else {
            Sign::Plus
        };
        Some((m ^ bit, sign * c))
    }))
}

/// `a_i†`: fills an empty mode with sign `(-1)^#L`; an occupied mode gives zero.
pub fn create(i: &IndexLabel, psi: &SState) -> Result<SState> {
    ladder_with(i, Ladder::Create, psi, true)
}

/// `a_i`: empties an occupied mode with sign `(-1)^#L`; an empty mode gives zero.
pub fn annihilate(i: &IndexLabel, psi: &SState) -> Result<SState> {
    ladder_with(i, Ladder::Annihilate, psi, true)
}

/// Per-qubit ladder operators without the exchange sign. They satisfy the
/// exclusion rule on each site but commute across sites.
pub fn local_ladder(i: &IndexLabel, kind: Ladder, psi: &SState) -> Result<SState> {
    ladder_with(i, kind, psi, false)
}

/// `n_i = a_i† a_i`.
pub fn number(i: &IndexLabel, psi: &SState) -> Result<SState> {
    let p = psi.index_set().require(i)?;
    Ok(psi.map_terms(|m, c| (m >> p & 1 == 1).then_some((m, c))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarRelation {
    /// `{a_i, a_j} = 0`
    AnnihilateAnnihilate,
    /// `{a_i†, a_j†} = 0`
    CreateCreate,
    /// `{a_i, a_j†} = δ_ij`
    AnnihilateCreate,
}

impl fmt::Display for CarRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CarRelation::AnnihilateAnnihilate => "{a_i, a_j} = 0",
            CarRelation::CreateCreate => "{a_i+, a_j+} = 0",
            CarRelation::AnnihilateCreate => "{a_i, a_j+} = delta_ij",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub relation: CarRelation,
    /// Largest amplitude deviation over all pairs and basis kets.
    pub max_deviation: f64,
    /// `(pair, basis ket)` cases whose result differed from the expected
    /// ket by more than [`CAR_TOLERANCE`] (a sign error counts here).
    pub failures: usize,
    pub cases: usize,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarReport {
    pub modes: usize,
    pub relations: Vec<RelationCheck>,
}

impl CarReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationCheck::passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| r.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for CarReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(
                f,
                "{} {:<24} m={} cases={} failures={} max_deviation={:.3e}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.relation.to_string(),
                self.modes,
                r.cases,
                r.failures,
                r.max_deviation
            )?;
        }
        Ok(())
    }
}

/// Checks the canonical anticommutation relations for [`create`] and
/// [`annihilate`] by applying both operator orderings to every basis ket.
pub fn verify_car(index_set: &IndexSet) -> CarReport {
    verify_car_with(index_set, |kind, i, psi| match kind {
        Ladder::Create => create(i, psi),
        Ladder::Annihilate => annihilate(i, psi),
    })
}

/// Same exhaustive check for any ladder family, e.g. [`local_ladder`].
pub fn verify_car_with<F>(index_set: &IndexSet, op: F) -> CarReport
where
    F: Fn(Ladder, &IndexLabel, &SState) -> Result<SState>,
{
    let relations = [
        (
            CarRelation::AnnihilateAnnihilate,
            Ladder::Annihilate,
            Ladder::Annihilate,
        ),
        (CarRelation::CreateCreate, Ladder::Create, Ladder::Create),
        (
            CarRelation::AnnihilateCreate,
            Ladder::Annihilate,
            Ladder::Create,
        ),
    ];
    let labels = index_set.labels();
    let relations = relations
        .into_iter()
        .map(|(relation, first, second)| {
            let mut check = RelationCheck {
                relation,
                max_deviation: 0.0,
                failures: 0,
                cases: 0,
            };
            for mask in index_set.masks() {
                let ket = SState::from_masks(index_set.clone(), [(mask, ONE)]);
                for (ia, i) in labels.iter().enumerate() {
                    for (ja, j) in labels.iter().enumerate() {
                        let expected = if relation == CarRelation::AnnihilateCreate && ia == ja {
                            ket.clone()
                        } else {
                            SState::zero(index_set.clone())
                        };
                        let deviation = anticommutator(&op, first, i, second, j, &ket)
                            .and_then(|ac| ac.max_abs_diff(&expected))
                            .unwrap_or(f64::INFINITY);
                        check.cases += 1;
                        check.max_deviation = check.max_deviation.max(deviation);
                        if deviation > CAR_TOLERANCE {
                            check.failures += 1;
                        }
                    }
                }
            }
            check
        })
        .collect();
    CarReport {
        modes: index_set.len(),
        relations,
    }
}

fn anticommutator<F>(
    op: &F,
    first: Ladder,
    i: &IndexLabel,
    second: Ladder,
    j: &IndexLabel,
    psi: &SState,
) -> Result<SState>
where
    F: Fn(Ladder, &IndexLabel, &SState) -> Result<SState>,
{
    let ij = op(first, i, &op(second, j, psi)?)?;
    let ji = op(second, j, &op(first, i, psi)?)?;
    ij.add(&ji)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C64;
    use crate::sq::{inner_product, occupation};

    fn ket(pairs: &[(&str, u8)]) -> SState {
        SState::basis(&BasisState::from_pairs(pairs).unwrap()).unwrap()
    }

    fn label(s: &str) -> IndexLabel {
        IndexLabel::new(s).unwrap()
    }

    #[test]
    fn sign_prefix_examples() {
        let b = label("b");
        let c = label("c");
        let t = |p: &[(&str, u8)]| BasisState::from_pairs(p).unwrap();
        assert_eq!(
            sign_prefix(&t(&[("a", 0), ("b", 0)]), &b).unwrap(),
            Sign::Plus
        );
        assert_eq!(
            sign_prefix(&t(&[("a", 1), ("b", 0)]), &b).unwrap(),
            Sign::Minus
        );
        assert_eq!(
            sign_prefix(&t(&[("a", 1), ("b", 1), ("c", 0)]), &c).unwrap(),
            Sign::Plus
        );
        // written order does not matter
        assert_eq!(
            sign_prefix(&t(&[("b", 0), ("a", 1)]), &b).unwrap(),
            Sign::Minus
        );
        assert!(sign_prefix(&t(&[("a", 1)]), &b).is_err());
    }

    #[test]
    fn create_examples() {
        let b = label("b");
        assert_eq!(
            create(&b, &ket(&[("a", 0), ("b", 0)])).unwrap(),
            ket(&[("a", 0), ("b", 1)])
        );
        assert_eq!(
            create(&b, &ket(&[("a", 1), ("b", 0)])).unwrap(),
            ket(&[("a", 1), ("b", 1)]).scale(-ONE)
        );
        assert!(create(&label("a"), &ket(&[("a", 1)])).unwrap().is_zero());
    }

    #[test]
    fn annihilate_examples() {
        assert_eq!(
            annihilate(&label("a"), &ket(&[("a", 1), ("b", 1)])).unwrap(),
            ket(&[("a", 0), ("b", 1)])
        );
        assert_eq!(
            annihilate(&label("b"), &ket(&[("a", 1), ("b", 1)])).unwrap(),
            ket(&[("a", 1), ("b", 0)]).scale(-ONE)
        );
        assert!(annihilate(&label("a"), &ket(&[("a", 0)]))
            .unwrap()
            .is_zero());
        assert!(annihilate(&label("z"), &ket(&[("a", 0)])).is_err());
    }

    #[test]
    fn create_then_read_occupation() {
        let out = create(&label("a"), &ket(&[("a", 0)])).unwrap();
        let (term, _) = out.terms().next().unwrap();
        assert!(occupation(&term, &label("a")).unwrap());
    }

    #[test]
    fn input_order_does_not_change_results() {
        // the same ket written in two orders differs by a sign only
        let canonical = ket(&[("a", 1), ("b", 0), ("c", 1)]);
        let written = ket(&[("c", 1), ("b", 0), ("a", 1)]);
        assert_eq!(written, canonical.scale(-ONE));
        for l in ["a", "b", "c"] {
            let l = label(l);
            assert_eq!(
                create(&l, &written).unwrap(),
                create(&l, &canonical).unwrap().scale(-ONE)
            );
        }
    }

    #[test]
    fn local_ladder_has_no_sign() {
        assert_eq!(
            local_ladder(&label("b"), Ladder::Create, &ket(&[("a", 1), ("b", 0)])).unwrap(),
            ket(&[("a", 1), ("b", 1)])
        );
        assert!(local_ladder(&label("a"), Ladder::Create, &ket(&[("a", 1)]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn local_ladder_commutes_across_sites() {
        let set = IndexSet::from_strs(&["a", "b"]).unwrap();
        let (a, b) = (label("a"), label("b"));
        for mask in set.masks() {
            let psi = SState::from_masks(set.clone(), [(mask, ONE)]);
            let ab = local_ladder(
                &a,
                Ladder::Annihilate,
                &local_ladder(&b, Ladder::Annihilate, &psi).unwrap(),
            )
            .unwrap();
            let ba = local_ladder(
                &b,
                Ladder::Annihilate,
                &local_ladder(&a, Ladder::Annihilate, &psi).unwrap(),
            )
            .unwrap();
            assert_eq!(ab, ba);
        }
    }

    #[test]
    fn car_holds_small() {
        for m in 1..=3 {
            let report = verify_car(&IndexSet::numbered(m).unwrap());
            assert!(report.passed(), "{report}");
            assert_eq!(report.max_deviation(), 0.0);
        }
        let report = verify_car(&IndexSet::numbered(3).unwrap());
        assert!(report.relations.iter().all(|r| r.cases == 8 * 9));
    }

    #[test]
    fn car_detects_local_operators() {
        let set = IndexSet::numbered(2).unwrap();
        let report = verify_car_with(&set, |k, i, psi| local_ladder(i, k, psi));
        assert!(!report.passed());
        let aa = &report.relations[0];
        assert_eq!(aa.relation, CarRelation::AnnihilateAnnihilate);
        assert!(aa.failures > 0);
    }

    #[test]
    fn number_is_create_after_annihilate() {
        let set = IndexSet::from_strs(&["a", "b", "c"]).unwrap();
        for mask in set.masks() {
            let psi = SState::from_masks(set.clone(), [(mask, ONE)]);
            for l in set.labels() {
                let lhs = number(l, &psi).unwrap();
                let rhs = create(l, &annihilate(l, &psi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn create_and_annihilate_are_adjoint() {
        let set = IndexSet::from_strs(&["a", "b", "c"]).unwrap();
        let psi = SState::from_masks(
            set.clone(),
            set.masks()
                .map(|m| (m, C64::new(m as f64 * 0.1 + 0.3, 1.0 - m as f64 * 0.2))),
        );
        let phi = SState::from_masks(
            set.clone(),
            set.masks()
                .map(|m| (m, C64::new(0.5 - m as f64 * 0.05, m as f64 * 0.3))),
        );
        for l in set.labels() {
            let lhs = inner_product(&create(l, &psi).unwrap(), &phi).unwrap();
            let rhs = inner_product(&psi, &annihilate(l, &phi).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }
}
