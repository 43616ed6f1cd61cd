use crate::error::{Error, Result};
use crate::scalar::{i_pow, C64, DROP_TOLERANCE};
use crate::sq::IndexLabel;

use super::{sigma, CliffordElement, GeneratorLabel, GeneratorSet};

/// The power series stops once a term's coefficient mass falls below this.
pub const EXP_TERM_CUTOFF: f64 = 1e-16;

/// Allowed deviation of `q0² + q1² + q2² + q3²` from one.
pub const QUATERNION_TOLERANCE: f64 = 1e-12;

const MAX_SERIES_TERMS: u32 = 64;

/// `exp(x)` by scaling and squaring: scale by `2^-k` until the coefficient
/// mass is at most 0.5, sum the Taylor series, square `k` times.
pub fn exp(x: &CliffordElement) -> CliffordElement {
    let gens = x.generators();
    let mut k = 0u32;
    let mut scaled_norm = x.norm1();
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        k += 1;
    }
    let factor = 0.5f64.powi(k as i32);
    let y =
        CliffordElement::from_terms_pruned(gens, x.terms().map(|(b, c)| (b, c * factor)), false);

    let mut sum = CliffordElement::identity(gens);
    let mut term = CliffordElement::identity(gens);
    for n in 1..=MAX_SERIES_TERMS {
        let inv = 1.0 / f64::from(n);
        let product = term.multiply_pruned(&y, false).expect("same generator set");
        term = CliffordElement::from_terms_pruned(
            gens,
            product.terms().map(|(b, c)| (b, c * inv)),
            false,
        );
        if term.is_zero() {
            break;
        }
        sum = CliffordElement::from_terms_pruned(gens, sum.terms().chain(term.terms()), false);
        if term.norm1() < EXP_TERM_CUTOFF {
            break;
        }
    }
    for _ in 0..k {
        sum = sum
            .multiply_pruned(&sum, false)
            .expect("same generator set");
    }
    CliffordElement::from_terms(gens, sum.terms())
}

/// `i^(σ(l)+1)`, the multiplier that makes `exp(-mult · h · τ)` unitary for
/// real `h` of grade `l`.
pub fn gate_multiplier(grade: usize) -> C64 {
    i_pow(sigma(grade) as i64 + 1)
}

/// `u(τ) = exp(-i_l h τ)` for real `h` of grade `l`. Mixed grades are
/// accepted when they share the multiplier `i_l`.
pub fn exponential_gate(h: &CliffordElement, tau: f64) -> Result<CliffordElement> {
    let grades = h.grades();
    if let Some(&first) = grades.first() {
        if let Some(&second) = grades.iter().find(|&&g| sigma(g) != sigma(first)) {
            return Err(Error::NonHomogeneous { first, second });
        }
    }
    if let Some((b, c)) = h.terms().find(|(_, c)| c.im.abs() > DROP_TOLERANCE) {
        return Err(Error::InvalidArgument(format!(
            "gate exponent needs real coefficients, blade {:#b} has {c}",
            b.0
        )));
    }
    let multiplier = gate_multiplier(grades.first().copied().unwrap_or(0));
    Ok(exp(&h.scale(-multiplier * tau)))
}

/// `(e_j, e'_j, e_j e'_j)` for one index.
fn quaternion_units(gens: &GeneratorSet, index: &IndexLabel) -> Result<[CliffordElement; 3]> {
    let e = CliffordElement::generator(gens, &GeneratorLabel::plain(index.clone()))
        .map_err(|_| Error::UnknownIndex(index.clone()))?;
    let ep = CliffordElement::generator(gens, &GeneratorLabel::primed(index.clone()))
        .map_err(|_| Error::UnknownIndex(index.clone()))?;
    let eep = &e * &ep;
    Ok([e, ep, eep])
}

/// `exp(h1 e_j + h2 e'_j + h3 e_j e'_j)` through the power series.
pub fn one_gate(gens: &GeneratorSet, index: &IndexLabel, h: [f64; 3]) -> Result<CliffordElement> {
    let units = quaternion_units(gens, index)?;
    let x = units
        .iter()
        .zip(h)
        .fold(CliffordElement::zero(gens), |acc, (u, hk)| {
            &acc + &u.scale(C64::new(hk, 0.0))
        });
    Ok(exp(&x))
}

/// Closed form of the one-gate: the three units square to `-1` and
/// anticommute, so `exp(X) = cos|h| + X sin|h| / |h|`.
pub fn one_gate_quaternion(h: [f64; 3]) -> [f64; 4] {
    let theta = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
    if theta == 0.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let s = theta.sin() / theta;
    [theta.cos(), h[0] * s, h[1] * s, h[2] * s]
}

/// `q0 + q1 e_j + q2 e'_j + q3 e_j e'_j` with `Σ q² = 1`.
pub fn quaternion_gate(
    gens: &GeneratorSet,
    index: &IndexLabel,
    q: [f64; 4],
) -> Result<CliffordElement> {
    let norm: f64 = q.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > QUATERNION_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "quaternion coefficients must have unit norm, got {norm}"
        )));
    }
    let units = quaternion_units(gens, index)?;
    Ok(units.iter().zip(&q[1..]).fold(
        CliffordElement::scalar(gens, C64::new(q[0], 0.0)),
        |acc, (u, &qk)| &acc + &u.scale(C64::new(qk, 0.0)),
    ))
}

/// The supported gate parametrizations.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    /// `exp(h1 e_j + h2 e'_j + h3 e_j e'_j)`
    OneGate { index: IndexLabel, h: [f64; 3] },
    /// `q0 + q1 e_j + q2 e'_j + q3 e_j e'_j`
    Quaternion { index: IndexLabel, q: [f64; 4] },
    /// `exp(-i_l h τ)`
    Exponential { h: CliffordElement, tau: f64 },
}

impl GateSpec {
    pub fn to_element(&self, gens: &GeneratorSet) -> Result<CliffordElement> {
        match self {
            GateSpec::OneGate { index, h } => one_gate(gens, index, *h),
            GateSpec::Quaternion { index, q } => quaternion_gate(gens, index, *q),
            GateSpec::Exponential { h, tau } => {
                if h.generators() != gens {
                    return Err(Error::GeneratorSetMismatch);
                }
                exponential_gate(h, *tau)
            }
        }
    }
}

/// `u† u - 1`, largest coefficient.
pub fn unitarity_defect(u: &CliffordElement) -> f64 {
    let id = CliffordElement::identity(u.generators());
    (&u.conjugate() * u)
        .max_abs_diff(&id)
        .expect("same generator set")
}

#[cfg(test)]
mod tests {
    use super::super::Blade;
    use super::*;
    use crate::scalar::ONE;
    use crate::sq::IndexSet;

    fn gens(m: usize) -> GeneratorSet {
        GeneratorSet::doubled(&IndexSet::numbered(m).unwrap()).unwrap()
    }

    fn label(s: &str) -> IndexLabel {
        IndexLabel::new(s).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let g = gens(2);
        let h = CliffordElement::product_of(
            &g,
            &[
                GeneratorLabel::plain(label("0")),
                GeneratorLabel::primed(label("1")),
            ],
        )
        .unwrap();
        assert_eq!(
            exponential_gate(&h, 0.0).unwrap(),
            CliffordElement::identity(&g)
        );
    }

    #[test]
    fn exp_of_generator_is_rotation() {
        // e² = -1 so exp(θ e) = cos θ + e sin θ
        let g = gens(1);
        let theta = 1.3;
        let e = CliffordElement::generator(&g, &GeneratorLabel::plain(label("0"))).unwrap();
        let u = exp(&e.scale(C64::new(theta, 0.0)));
        assert!((u.scalar_part() - C64::new(theta.cos(), 0.0)).norm() < 1e-14);
        assert!((u.coefficient(Blade(1)) - C64::new(theta.sin(), 0.0)).norm() < 1e-14);
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn multiplier_table() {
        // -i_l over l mod 4: -i, 1, 1, -i
        let expected = [C64::new(0.0, -1.0), ONE, ONE, C64::new(0.0, -1.0)];
        for (l, want) in expected.iter().enumerate() {
            assert_eq!(-gate_multiplier(l), *want);
            assert_eq!(gate_multiplier(l + 4), gate_multiplier(l));
        }
    }

    #[test]
    fn gates_are_unitary() {
        let g = gens(2);
        let blades = [Blade(0b0001), Blade(0b0110), Blade(0b0111), Blade(0b1111)];
        for b in blades {
            let h = CliffordElement::from_terms(&g, [(b, C64::new(0.8, 0.0))]);
            let u = exponential_gate(&h, 1.7).unwrap();
            assert!(unitarity_defect(&u) < 1e-10, "grade {}", b.grade());
        }
    }

    #[test]
    fn incompatible_grades_are_rejected() {
        let g = gens(2);
        let h = CliffordElement::from_terms(&g, [(Blade(0b1), ONE), (Blade(0b111), ONE)]);
        assert_eq!(
            exponential_gate(&h, 1.0),
            Err(Error::NonHomogeneous {
                first: 1,
                second: 3
            })
        );
        // grades 1 and 2 share the multiplier
        let h = CliffordElement::from_terms(&g, [(Blade(0b1), ONE), (Blade(0b11), ONE)]);
        assert!(exponential_gate(&h, 1.0).is_ok());
        let h = CliffordElement::from_terms(&g, [(Blade(0b1), C64::new(0.0, 1.0))]);
        assert!(matches!(
            exponential_gate(&h, 1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn one_gate_series_matches_closed_form() {
        let g = gens(2);
        let j = label("1");
        for h in [[0.3, -1.2, 0.7], [0.0, 0.0, 0.0], [2.5, 1.0, -3.0]] {
            let series = one_gate(&g, &j, h).unwrap();
            let q = one_gate_quaternion(h);
            assert!((q.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            let closed = quaternion_gate(&g, &j, q).unwrap();
            assert!(series.max_abs_diff(&closed).unwrap() < 1e-12, "{h:?}");
        }
    }

    #[test]
    fn quaternion_norm_is_enforced() {
        let g = gens(1);
        assert!(quaternion_gate(&g, &label("0"), [1.0, 0.1, 0.0, 0.0]).is_err());
        assert!(quaternion_gate(&g, &label("x"), [1.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn gate_spec_variants() {
        let g = gens(1);
        let j = label("0");
        let a = GateSpec::OneGate {
            index: j.clone(),
            h: [0.1, 0.2, 0.3],
        }
        .to_element(&g)
        .unwrap();
        let b = GateSpec::Quaternion {
            index: j,
            q: one_gate_quaternion([0.1, 0.2, 0.3]),
        }
        .to_element(&g)
        .unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        let h = CliffordElement::identity(&gens(2));
        assert_eq!(
            GateSpec::Exponential { h, tau: 1.0 }.to_element(&g),
            Err(Error::GeneratorSetMismatch)
        );
    }
}
