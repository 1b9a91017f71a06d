use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{coboundary_matrices, CochainComplex, CochainError, CoefficientRing};
use crate::abelian::field::{FieldMatrix, Rationals, VectorCohomology};
use crate::abelian::{
    exactness_check, smith_normal_form, FgAbGroup, GroupHom, IntMatrix, IntegralComplex,
};
use crate::nerve::{DeltaSet, TwistCocycle};

/// The connecting map `β : H^k(R/Z_η) → H^{k+1}(Z_η)` on the finite part of its source.
///
/// The divisible part `(R/Z)^{b_k}` is the image of `H^k(R_η)` and is killed by `β`, so
/// only the finite summand carries information. Its generators are the fractional
/// cocycles `x_i = V⁻¹ e_i / s_i` from the Smith form `δ_k = U S V`, one per invariant
/// factor `s_i > 1`; then `δ x_i = U e_i` is an honest integer cocycle.
#[derive(Clone, Debug)]
pub struct Bockstein {
    degree: usize,
    hom: GroupHom,
    lifts: Vec<Vec<BigRational>>,
}

impl Bockstein {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `β` restricted to the finite summand, in canonical generators.
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &FgAbGroup {
        self.hom.source()
    }

    pub fn target(&self) -> &FgAbGroup {
        self.hom.target()
    }

    /// Fractional cochains representing the source generators.
    pub fn lifts(&self) -> &[Vec<BigRational>] {
        &self.lifts
    }

    /// True iff `im β` is exactly the torsion subgroup of `H^{k+1}(Z_η)`.
    pub fn image_is_torsion(&self) -> Result<bool, CochainError> {
        Ok(exactness_check(&self.hom, &free_projection(self.target()))?)
    }
}

/// The quotient `G → G / Tor G`, using that free generators come first.
pub fn free_projection(group: &FgAbGroup) -> GroupHom {
    let r = group.free_rank();
    let mut m = IntMatrix::zeros(r, group.generator_count());
    for i in 0..r {
        m.set(i, i, BigInt::one());
    }
    GroupHom::new(group.clone(), FgAbGroup::free(r), m)
        .expect("projection onto the free part is well defined")
}

/// Computes `β` in degree `k` for `(K, η)`.
pub fn bockstein(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    k: usize,
) -> Result<Bockstein, CochainError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    bockstein_of(&c, k)
}

pub fn bockstein_of(c: &CochainComplex, k: usize) -> Result<Bockstein, CochainError> {
    let d = c.differential(k);
    let snf = smith_normal_form(&d);
    let target = c.integral_group(k + 1)?;
    let mut lifts = Vec::new();
    let mut orders = Vec::new();
    let mut columns = Vec::new();
    for (i, s) in snf.nonzero_diagonal().into_iter().enumerate() {
        if s.is_one() {
            continue;
        }
        let x: Vec<BigRational> = snf
            .v_inverse()
            .col(i)
            .into_iter()
            .map(|v| BigRational::new(v, s.clone()))
            .collect();
        columns.push(class_of_coboundary(c, k, &x)?);
        lifts.push(x);
        orders.push(s);
    }
    let source = FgAbGroup::from_orders(0, orders);
    let matrix = IntMatrix::from_columns(target.generator_count(), &columns);
    let hom = GroupHom::new(source, target, matrix)?;
    Ok(Bockstein {
        degree: k,
        hom,
        lifts,
    })
}

/// Class of `δx` in `H^{k+1}(Z_η)` for a rational cochain `x` whose coboundary is
/// integral. Fails with `LiftFailure` otherwise.
pub fn class_of_coboundary(
    c: &CochainComplex,
    k: usize,
    x: &[BigRational],
) -> Result<Vec<BigInt>, CochainError> {
    let d = c.differential(k);
    if x.len() != d.cols() {
        return Err(CochainError::LiftFailure { degree: k });
    }
    let dx: Vec<BigRational> = (0..d.rows())
        .map(|r| {
            d.row(r)
                .iter()
                .zip(x)
                .fold(BigRational::zero(), |acc, (a, b)| {
                    acc + BigRational::from_integer(a.clone()) * b
                })
        })
        .collect();
    if dx.iter().any(|v| !v.is_integer()) {
        return Err(CochainError::LiftFailure { degree: k });
    }
    let integral: Vec<BigInt> = dx.into_iter().map(|v| v.to_integer()).collect();
    Ok(c.presentation(k + 1)?.classify(&integral)?)
}

/// The coefficient map `j : H^k(Z_η) → H^k(Q_η)`, with target the lattice `j(H^k(Z_η))`
/// written in a basis of its own. The rational side is computed independently over Q.
pub fn rationalization(c: &CochainComplex, k: usize) -> Result<GroupHom, CochainError> {
    let source = c.integral_group(k)?;
    if k >= c.complex().degree_count() {
        return Ok(GroupHom::zero(source, FgAbGroup::trivial()));
    }
    let q = Rationals;
    let hq = VectorCohomology::new(q, &c.differential(k), &c.incoming(k))?;
    let presentation = c.presentation(k)?;
    let columns = presentation
        .generators()
        .iter()
        .map(|g| {
            let v: Vec<BigRational> = g
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            hq.classify(&v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let j = FieldMatrix::from_columns(&q, hq.dimension(), &columns);

    // Clear denominators, then read coordinates in a lattice basis off the Smith form.
    let mut denom = BigInt::one();
    for r in 0..j.rows() {
        for col in 0..j.cols() {
            denom = denom.lcm(j.get(r, col).denom());
        }
    }
    let mut scaled = IntMatrix::zeros(j.rows(), j.cols());
    for r in 0..j.rows() {
        for col in 0..j.cols() {
            scaled.set(
                r,
                col,
                (j.get(r, col) * BigRational::from_integer(denom.clone())).to_integer(),
            );
        }
    }
    let snf = smith_normal_form(&scaled);
    let rank = snf.rank();
    let matrix = snf.v().row_range(0, rank);
    Ok(GroupHom::new(source, FgAbGroup::free(rank), matrix)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::exactness_detail;
    use crate::nerve::{builders, twist_classes_mod2, Sign};

    #[test]
    fn twisted_circle_bockstein_is_an_isomorphism() {
        let k = builders::annulus3();
        let eta = TwistCocycle::constant(&k, Sign::Minus);
        let b = bockstein(&k, &eta, 0).unwrap();
        assert_eq!(b.source().to_string(), "Z/2");
        assert_eq!(b.target().to_string(), "Z/2");
        assert!(b.hom().is_injective() && b.hom().is_surjective());
        assert!(b.image_is_torsion().unwrap());
    }

    #[test]
    fn rationalization_kills_torsion() {
        let k = builders::circle_nerve(3);
        let c = coboundary_matrices(
            &k,
            &TwistCocycle::constant(&k, Sign::Minus),
            CoefficientRing::Integer,
        )
        .unwrap();
        let j = rationalization(&c, 1).unwrap();
        assert!(j.target().is_trivial());
        let b = bockstein_of(&c, 0).unwrap();
        assert!(exactness_detail(b.hom(), &j).unwrap().exact);
    }

    #[test]
    fn rp2_w1_top_degree() {
        // H^2(Z_w1) = Z, no torsion: β from degree 1 has trivial source.
        let k = builders::rp2();
        let w1 = twist_classes_mod2(&k).pop().unwrap();
        let c = coboundary_matrices(&k, &w1, CoefficientRing::Integer).unwrap();
        let b = bockstein_of(&c, 1).unwrap();
        assert!(b.source().is_trivial());
        let j = rationalization(&c, 2).unwrap();
        assert_eq!(j.target(), &FgAbGroup::free(1));
        assert!(j.is_injective() && j.is_surjective());
    }

    #[test]
    fn untwisted_rp2_torsion_in_top_degree() {
        let k = builders::rp2();
        let c =
            coboundary_matrices(&k, &TwistCocycle::trivial(&k), CoefficientRing::Integer).unwrap();
        let b = bockstein_of(&c, 1).unwrap();
        assert_eq!(b.source().to_string(), "Z/2");
        assert!(b.image_is_torsion().unwrap());
        assert!(b.hom().is_injective());
    }

    #[test]
    fn non_integral_coboundary_is_a_lift_failure() {
        let k = builders::circle_nerve(3);
        let c =
            coboundary_matrices(&k, &TwistCocycle::trivial(&k), CoefficientRing::Integer).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let x = vec![half, BigRational::zero(), BigRational::zero()];
        assert_eq!(
            class_of_coboundary(&c, 0, &x).unwrap_err(),
            CochainError::LiftFailure { degree: 0 }
        );
    }
}
