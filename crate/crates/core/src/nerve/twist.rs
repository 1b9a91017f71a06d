use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{DeltaSet, NerveError};
use crate::abelian::field::{FieldMatrix, PrimeField, VectorCohomology};
use crate::abelian::IntMatrix;

/// An element of `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    fn from_bit(bit: bool) -> Sign {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bit(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A `{±1}`-valued function on the 1-cells of a Δ-set, indexed like the 1-cells.
/// It is a twist when `η(d_2 σ) · η(d_0 σ) = η(d_1 σ)` on every 2-cell `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistCocycle {
    values: Vec<Sign>,
}

impl TwistCocycle {
    pub fn new(values: Vec<Sign>) -> Self {
        TwistCocycle { values }
    }

    /// The all-(+1) twist.
    pub fn trivial(complex: &DeltaSet) -> Self {
        TwistCocycle {
            values: vec![Sign::Plus; complex.cell_count(1)],
        }
    }

    /// Every 1-cell set to the same sign.
    pub fn constant(complex: &DeltaSet, sign: Sign) -> Self {
        TwistCocycle {
            values: vec![sign; complex.cell_count(1)],
        }
    }

    /// Builds from an edge-id → ±1 assignment; every 1-cell must be assigned and no
    /// unknown ids may appear. Does not check the cocycle law.
    pub fn from_assignment(
        complex: &DeltaSet,
        assignment: &BTreeMap<String, i64>,
    ) -> Result<Self, NerveError> {
        for (id, v) in assignment {
            if complex.index_of(1, id).is_none() {
                return Err(NerveError::UnknownEdge(id.clone()));
            }
            if Sign::from_int(*v).is_none() {
                return Err(NerveError::InvalidSign {
                    edge: id.clone(),
                    value: *v,
                });
            }
        }
        let values = complex
            .ids(1)
            .iter()
            .map(|id| {
                assignment
                    .get(id)
                    .and_then(|&v| Sign::from_int(v))
                    .ok_or_else(|| NerveError::MissingEdgeValue(id.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwistCocycle { values })
    }

    pub fn to_assignment(&self, complex: &DeltaSet) -> BTreeMap<String, i64> {
        complex
            .ids(1)
            .iter()
            .zip(&self.values)
            .map(|(id, s)| (id.clone(), s.to_int()))
            .collect()
    }

    pub fn value(&self, edge: usize) -> Sign {
        self.values[edge]
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_all_plus(&self) -> bool {
        self.values.iter().all(|&s| s == Sign::Plus)
    }

    /// `η'(e) = s(source e) · η(e) · s(target e)`, where source is `d_1 e` and target `d_0 e`.
    /// Changes the representative, never the class.
    pub fn gauge_transform(&self, complex: &DeltaSet, gauge: &[Sign]) -> TwistCocycle {
        assert_eq!(
            gauge.len(),
            complex.cell_count(0),
            "gauge needs one sign per vertex"
        );
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(e, &s)| {
                let f = complex.faces(1, e);
                gauge[f[1]] * s * gauge[f[0]]
            })
            .collect();
        TwistCocycle { values }
    }

    /// Pointwise product, the group law on twists.
    pub fn product(&self, other: &TwistCocycle) -> TwistCocycle {
        assert_eq!(self.len(), other.len(), "twists on different complexes");
        TwistCocycle {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a * b)
                .collect(),
        }
    }
}

/// True iff `η` assigns a sign to every 1-cell and satisfies the cocycle law.
pub fn validate_twist(complex: &DeltaSet, twist: &TwistCocycle) -> Result<bool, NerveError> {
    if twist.len() != complex.cell_count(1) {
        let missing = complex
            .ids(1)
            .get(twist.len())
            .cloned()
            .unwrap_or_else(|| format!("#{}", complex.cell_count(1)));
        return Err(NerveError::MissingEdgeValue(missing));
    }
    Ok(first_cocycle_violation(complex, twist).is_none())
}

/// The first 2-cell on which the cocycle law fails, if any.
pub fn first_cocycle_violation(complex: &DeltaSet, twist: &TwistCocycle) -> Option<usize> {
    (0..complex.cell_count(2)).find(|&t| {
        let f = complex.faces(2, t);
        twist.value(f[2]) * twist.value(f[0]) != twist.value(f[1])
    })
}

/// Untwisted coboundaries `δ_0`, `δ_1` with mod-2 incidence counts.
fn mod2_coboundaries(complex: &DeltaSet) -> (IntMatrix, IntMatrix) {
    let (v, e, t) = (
        complex.cell_count(0),
        complex.cell_count(1),
        complex.cell_count(2),
    );
    let mut d0 = IntMatrix::zeros(e, v);
    for edge in 0..e {
        for &f in complex.faces(1, edge) {
            *d0.get_mut(edge, f) += 1;
        }
    }
    let mut d1 = IntMatrix::zeros(t, e);
    for tri in 0..t {
        for &f in complex.faces(2, tri) {
            *d1.get_mut(tri, f) += 1;
        }
    }
    (d1, d0)
}

fn twist_bits(twist: &TwistCocycle) -> Vec<u64> {
    twist
        .values()
        .iter()
        .map(|s| u64::from(s.is_minus()))
        .collect()
}

/// One representative per class of `H^1(K; Z/2)`, the trivial class first. There are
/// `2^dim` of them, obtained from all sums of a basis of classes.
pub fn twist_classes_mod2(complex: &DeltaSet) -> Vec<TwistCocycle> {
    let f2 = PrimeField::new(2).expect("2 is prime");
    let (d1, d0) = mod2_coboundaries(complex);
    let h1 = VectorCohomology::new(f2, &d1, &d0).expect("mod-2 incidence matrices form a complex");
    let basis = h1.basis();
    let edges = complex.cell_count(1);
    assert!(basis.len() < 32, "too many twist classes to enumerate");
    (0u64..(1u64 << basis.len()))
        .map(|mask| {
            let mut bits = vec![false; edges];
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (e, &x) in b.iter().enumerate() {
                        bits[e] ^= x == 1;
                    }
                }
            }
            TwistCocycle::new(bits.into_iter().map(Sign::from_bit).collect())
        })
        .collect()
}

/// A vertex gauge `s` with `from.gauge_transform(s) == to`, found by solving
/// `δ_0 s = from · to` over 𝔽₂; `None` if the twists are not cohomologous.
pub fn gauge_between(
    complex: &DeltaSet,
    from: &TwistCocycle,
    to: &TwistCocycle,
) -> Option<Vec<Sign>> {
    let f2 = PrimeField::new(2).expect("2 is prime");
    let (_, d0) = mod2_coboundaries(complex);
    let diff = twist_bits(&from.product(to));
    FieldMatrix::from_int(&f2, &d0)
        .solve(&f2, &diff)
        .map(|s| s.into_iter().map(|b| Sign::from_bit(b == 1)).collect())
}

pub fn are_cohomologous(complex: &DeltaSet, a: &TwistCocycle, b: &TwistCocycle) -> bool {
    gauge_between(complex, a, b).is_some()
}

/// Dimension of `H^1(K; Z/2)`.
pub fn mod2_first_betti(complex: &DeltaSet) -> usize {
    let f2 = PrimeField::new(2).expect("2 is prime");
    let (d1, d0) = mod2_coboundaries(complex);
    crate::abelian::field::cohomology_dimension(&f2, &d1, &d0)
}

/// Converts a sign to the integer used in cochain matrices.
pub(crate) fn sign_value(s: Sign) -> BigInt {
    BigInt::from(s.to_int())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::builders;

    #[test]
    fn trivial_twist_is_valid() {
        for k in [builders::point(), builders::rp2(), builders::sphere2()] {
            assert!(validate_twist(&k, &TwistCocycle::trivial(&k)).unwrap());
        }
    }

    #[test]
    fn circle_minus_ones_is_valid_and_nontrivial() {
        let c = builders::circle_nerve(3);
        let eta = TwistCocycle::constant(&c, Sign::Minus);
        assert!(validate_twist(&c, &eta).unwrap());
        let classes = twist_classes_mod2(&c);
        assert_eq!(classes.len(), 2);
        assert!(classes[0].is_all_plus());
        assert!(are_cohomologous(&c, &classes[1], &eta));
        assert!(!are_cohomologous(&c, &classes[0], &eta));
    }

    #[test]
    fn single_flipped_edge_breaks_the_law_on_rp2() {
        let k = builders::rp2();
        let mut values = vec![Sign::Plus; k.cell_count(1)];
        values[0] = Sign::Minus;
        let eta = TwistCocycle::new(values);
        assert!(!validate_twist(&k, &eta).unwrap());
    }

    #[test]
    fn missing_edge_value() {
        let c = builders::circle_nerve(3);
        let short = TwistCocycle::new(vec![Sign::Plus; 2]);
        assert!(matches!(
            validate_twist(&c, &short),
            Err(NerveError::MissingEdgeValue(_))
        ));
        let mut partial = BTreeMap::new();
        partial.insert(c.id(1, 0).to_string(), -1);
        assert!(matches!(
            TwistCocycle::from_assignment(&c, &partial),
            Err(NerveError::MissingEdgeValue(_))
        ));
    }

    #[test]
    fn class_counts() {
        assert_eq!(twist_classes_mod2(&builders::point()).len(), 1);
        assert_eq!(twist_classes_mod2(&builders::sphere2()).len(), 1);
        assert_eq!(twist_classes_mod2(&builders::rp2()).len(), 2);
        assert_eq!(twist_classes_mod2(&builders::rp3()).len(), 2);
        assert_eq!(twist_classes_mod2(&builders::annulus3()).len(), 2);
    }

    #[test]
    fn gauge_transform_stays_in_class() {
        let k = builders::rp2();
        let w1 = twist_classes_mod2(&k).pop().unwrap();
        let gauge: Vec<Sign> = (0..k.cell_count(0))
            .map(|v| if v % 2 == 0 { Sign::Minus } else { Sign::Plus })
            .collect();
        let moved = w1.gauge_transform(&k, &gauge);
        assert!(validate_twist(&k, &moved).unwrap());
        assert!(are_cohomologous(&k, &w1, &moved));
        let back = gauge_between(&k, &w1, &moved).unwrap();
        assert_eq!(w1.gauge_transform(&k, &back), moved);
    }
}
