use crate::error::{Error, Result};
use crate::ladder::prefix_sign;
use crate::scalar::{C64, I};
use crate::sq::SState;

use super::{CliffordElement, GeneratorSet};

/// Applies one generator of a doubled set (position `g`: mode `g / 2`,
/// primed when odd) to a basis ket.
///
/// `e_a` flips the mode with factor `±_a i`; `e'_a` empties an occupied mode
/// with `±_a` and fills an empty one with `-±_a`.
fn generator_on_ket(g: usize, mask: u64) -> (u64, C64) {
    let p = g / 2;
    let sign = prefix_sign(mask, p);
    let occupied = mask >> p & 1 == 1;
    let coef = if g.is_multiple_of(2) {
        sign * I
    } else if occupied {
        sign.to_complex()
    } else {
        (-sign).to_complex()
    };
    (mask ^ (1 << p), coef)
}

/// Acts with a Clifford element on a state. The element must live over the
/// doubled index set of the state.
pub fn act_on_state(x: &CliffordElement, psi: &SState) -> Result<SState> {
    let expected = GeneratorSet::doubled(psi.index_set())?;
    if *x.generators() != expected {
        return Err(Error::GeneratorSetMismatch);
    }
    let mut out = Vec::with_capacity(x.len() * psi.len());
    for (blade, c) in x.terms() {
        // rightmost generator acts first
        let gens: Vec<usize> = blade.positions().collect();
        for (mask, amp) in psi.mask_terms() {
            let mut mask = mask;
            let mut coef = c * amp;
            for &g in gens.iter().rev() {
                let (m, f) = generator_on_ket(g, mask);
                mask = m;
                coef *= f;
            }
            out.push((mask, coef));
        }
    }
    SState::from_mask_amplitudes(psi.index_set().clone(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{to_ladder, GeneratorLabel};
    use crate::ladder::{annihilate, create};
    use crate::scalar::ONE;
    use crate::sq::{BasisState, IndexLabel, IndexSet};

    #[test]
    fn ladder_elements_act_like_ladder_operators() {
        let set = IndexSet::from_strs(&["a", "b", "c"]).unwrap();
        let gens = GeneratorSet::doubled(&set).unwrap();
        for l in set.labels() {
            let (a, a_dag) = to_ladder(&gens, l).unwrap();
            for mask in set.masks() {
                let psi = SState::from_mask_amplitudes(set.clone(), [(mask, ONE)]).unwrap();
                assert_eq!(
                    act_on_state(&a, &psi).unwrap(),
                    annihilate(l, &psi).unwrap()
                );
                assert_eq!(
                    act_on_state(&a_dag, &psi).unwrap(),
                    create(l, &psi).unwrap()
                );
            }
        }
    }

    #[test]
    fn generator_action_examples() {
        // e_b on ⟦1a 0b⟧ gives ±_b i ⟦1a 1b⟧ with ±_b = -1
        let psi = SState::basis(&BasisState::from_pairs(&[("a", 1), ("b", 0)]).unwrap()).unwrap();
        let gens = GeneratorSet::doubled(psi.index_set()).unwrap();
        let b = IndexLabel::new("b").unwrap();
        let eb = CliffordElement::generator(&gens, &GeneratorLabel::plain(b.clone())).unwrap();
        let out = act_on_state(&eb, &psi).unwrap();
        assert_eq!(out.amplitude_of_mask(0b11), -I);
        let epb = CliffordElement::generator(&gens, &GeneratorLabel::primed(b)).unwrap();
        let out = act_on_state(&epb, &psi).unwrap();
        assert_eq!(out.amplitude_of_mask(0b11), ONE);
    }

    #[test]
    fn action_is_a_representation() {
        let set = IndexSet::from_strs(&["a", "b"]).unwrap();
        let gens = GeneratorSet::doubled(&set).unwrap();
        let psi = SState::from_mask_amplitudes(
            set.clone(),
            set.masks()
                .map(|m| (m, C64::new(1.0 + m as f64, -0.5 * m as f64))),
        )
        .unwrap();
        for x in gens.blades() {
            for y in gens.blades() {
                let ex = CliffordElement::from_terms(&gens, [(x, ONE)]);
                let ey = CliffordElement::from_terms(&gens, [(y, ONE)]);
                let lhs = act_on_state(&(&ex * &ey), &psi).unwrap();
                let rhs = act_on_state(&ex, &act_on_state(&ey, &psi).unwrap()).unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn wrong_generator_set() {
        let set = IndexSet::from_strs(&["a"]).unwrap();
        let other = GeneratorSet::doubled(&IndexSet::from_strs(&["b"]).unwrap()).unwrap();
        let psi = SState::zero(set);
        assert_eq!(
            act_on_state(&CliffordElement::identity(&other), &psi),
            Err(Error::GeneratorSetMismatch)
        );
    }
}
