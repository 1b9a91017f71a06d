//! Twisted Deligne cohomology in normal form. The computable part comes from the
//! integral and `R/Z` cochain computations; the space of twisted forms modulo exact ones
//! is carried as an opaque `Forms(k)` token.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{exactness_detail, FgAbGroup};
use crate::cochain::{
    bockstein_of, coboundary_matrices, free_projection, rationalization, CochainComplex,
    CochainError, CoefficientRing, DivisibleDescriptor,
};
use crate::nerve::{DeltaSet, TwistCocycle};
use crate::verify::{all_passed, Check};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeligneError {
    #[error("k = 0 is the Deligne group itself; use the group computation")]
    ZeroDegreeRequest,
    #[error("the diamond needs n >= 1")]
    DiamondDegreeZero,
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// Twisted `k`-forms modulo covariantly exact ones. Never carries numeric content.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormsSummand {
    pub degree: usize,
}

impl fmt::Display for FormsSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forms({})", self.degree)
    }
}

/// `Ĥ^n ≅ H^n(Z_η) ⊕ Forms(n-1)`, split because the forms quotient is divisible.
/// Equality ignores the provenance notes.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct DeligneDescriptor {
    pub degree: usize,
    pub topological: FgAbGroup,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub forms: Option<FormsSummand>,
    #[serde(default)]
    pub provenance: Vec<String>,
}

impl PartialEq for DeligneDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.topological == other.topological
            && self.forms == other.forms
    }
}

impl fmt::Display for DeligneDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.topological.is_trivial(), self.forms) {
            (_, None) => write!(f, "{}", self.topological),
            (true, Some(forms)) => write!(f, "{forms}"),
            (false, Some(forms)) => write!(f, "{} (+) {forms}", self.topological),
        }
    }
}

/// `Ĥ^n(K; η)`.
pub fn deligne_group(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    n: usize,
) -> Result<DeligneDescriptor, DeligneError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    descriptor_of(&c, n)
}

pub fn descriptor_of(c: &CochainComplex, n: usize) -> Result<DeligneDescriptor, DeligneError> {
    let topological = c.integral_group(n)?;
    let mut provenance = Vec::new();
    let forms = if n == 0 {
        provenance.push(
            "degree 0: the complex is the local system alone, so the group is H^0(Z_twisted)"
                .to_string(),
        );
        if !c.twist().is_all_plus() {
            let untwisted = coboundary_matrices(
                c.complex(),
                &TwistCocycle::trivial(c.complex()),
                CoefficientRing::Integer,
            )?
            .integral_group(0)?;
            if untwisted != topological {
                provenance.push(format!(
                    "twisted value {topological} reported; the untwisted local system would give {untwisted}"
                ));
            }
        }
        None
    } else {
        provenance.push(format!(
            "0 -> Forms({}) -> H^{n}_D -> H^{n}(Z_twisted) -> 0, split",
            n - 1
        ));
        Some(FormsSummand { degree: n - 1 })
    };
    Ok(DeligneDescriptor {
        degree: n,
        topological,
        forms,
        provenance,
    })
}

/// Cohomology of the twisted Deligne complex in sheaf degree `k ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheafValue {
    Integral(FgAbGroup),
    Divisible(DivisibleDescriptor),
}

impl fmt::Display for SheafValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafValue::Integral(g) => write!(f, "{g}"),
            SheafValue::Divisible(d) => write!(f, "{d}"),
        }
    }
}

/// `H^{n+k}(Z_η)` for `k > 0`, `H^{n+k-1}(R/Z_η)` for `k < 0`; zero outside `[0, dim K]`.
pub fn deligne_sheaf_cohomology(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    n: usize,
    k: i64,
) -> Result<SheafValue, DeligneError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    let total = n as i64 + k;
    let in_range = |d: i64| d >= 0 && d <= complex.dimension() as i64;
    match k {
        0 => Err(DeligneError::ZeroDegreeRequest),
        k if k > 0 => Ok(SheafValue::Integral(if in_range(total) {
            c.integral_group(total as usize)?
        } else {
            FgAbGroup::trivial()
        })),
        _ => Ok(SheafValue::Divisible(if in_range(total - 1) {
            c.circle_model((total - 1) as usize)?
        } else {
            DivisibleDescriptor::trivial()
        })),
    }
}

/// The computable corners of the degree-`n` diamond and the checks relating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondReport {
    pub degree: usize,
    /// `dim_Q H^{n-1}(Q_η)`.
    pub rational_below: usize,
    /// `H^{n-1}(R/Z_η)`.
    pub circle_below: DivisibleDescriptor,
    /// `H^n(Z_η)`.
    pub integral: FgAbGroup,
    /// `dim_Q H^n(Q_η)`.
    pub rational: usize,
    pub descriptor: DeligneDescriptor,
    /// Image of `β : H^{n-1}(R/Z_η) → H^n(Z_η)`.
    pub bockstein_image: FgAbGroup,
    /// Rank of `j ∘ I : Ĥ^n → H^n(Q_η)`.
    pub rationalization_rank: usize,
    pub checks: Vec<Check>,
}

impl DiamondReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

pub fn diamond(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    n: usize,
) -> Result<DiamondReport, DeligneError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    diamond_of(&c, n)
}

pub fn diamond_of(c: &CochainComplex, n: usize) -> Result<DiamondReport, DeligneError> {
    if n == 0 {
        return Err(DeligneError::DiamondDegreeZero);
    }
    let rational_below = c.rational_dimension(n - 1);
    let circle_below = c.circle_model(n - 1)?;
    let integral = c.integral_group(n)?;
    let rational = c.rational_dimension(n);
    let descriptor = descriptor_of(c, n)?;
    let beta = bockstein_of(c, n - 1)?;
    let j = rationalization(c, n)?;
    let d = Some(n);

    let mut checks = vec![
        Check::equal(
            "topological part equals H^n(Z_twisted)",
            d,
            &descriptor.topological,
            &integral,
        ),
        Check::equal(
            "rank H^n(Z_twisted) = dim H^n(Q_twisted)",
            d,
            integral.free_rank(),
            rational,
        ),
        Check::equal(
            "torus rank of H^{n-1}(R/Z_twisted) = dim H^{n-1}(Q_twisted)",
            d,
            circle_below.torus_rank,
            rational_below,
        ),
        Check::equal(
            "source of bockstein = finite part of H^{n-1}(R/Z_twisted)",
            d,
            beta.source(),
            &circle_below.torsion,
        ),
        Check::with(
            "bockstein injective on the finite part",
            d,
            beta.hom().is_injective(),
            beta.hom().kernel(),
            FgAbGroup::trivial(),
        ),
    ];
    let torsion =
        exactness_detail(beta.hom(), &free_projection(&integral)).map_err(CochainError::from)?;
    checks.push(Check::with(
        "image of bockstein = torsion of H^n(Z_twisted)",
        d,
        torsion.exact,
        &torsion.image,
        &torsion.kernel,
    ));
    let bottom = exactness_detail(beta.hom(), &j).map_err(CochainError::from)?;
    checks.push(Check::with(
        "exact at H^n(Z_twisted): im bockstein = ker j",
        d,
        bottom.exact,
        &bottom.image,
        &bottom.kernel,
    ));
    let rationalization_rank = j.target().free_rank();
    checks.push(Check::equal(
        "rank of j composed with I = dim H^n(Q_twisted)",
        d,
        rationalization_rank,
        rational,
    ));

    Ok(DiamondReport {
        degree: n,
        rational_below,
        circle_below,
        integral,
        rational,
        descriptor,
        bockstein_image: torsion.image,
        rationalization_rank,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::{builders, twist_classes_mod2, Sign};

    fn w1(k: &DeltaSet) -> TwistCocycle {
        twist_classes_mod2(k).pop().unwrap()
    }

    #[test]
    fn descriptors_render_in_normal_form() {
        let a = builders::annulus3();
        let mobius = TwistCocycle::constant(&a, Sign::Minus);
        assert_eq!(
            deligne_group(&a, &mobius, 1).unwrap().to_string(),
            "Z/2 (+) Forms(0)"
        );
        let rp2 = builders::rp2();
        assert_eq!(
            deligne_group(&rp2, &w1(&rp2), 2).unwrap().to_string(),
            "Z (+) Forms(1)"
        );
        let rp3 = builders::rp3();
        assert_eq!(
            deligne_group(&rp3, &w1(&rp3), 3).unwrap().to_string(),
            "Z/2 (+) Forms(2)"
        );
        assert_eq!(
            deligne_group(&rp3, &w1(&rp3), 1).unwrap().to_string(),
            "Z/2 (+) Forms(0)"
        );
        let p = builders::point();
        assert_eq!(
            deligne_group(&p, &TwistCocycle::trivial(&p), 0)
                .unwrap()
                .to_string(),
            "Z"
        );
        assert_eq!(
            deligne_group(&p, &TwistCocycle::trivial(&p), 2)
                .unwrap()
                .to_string(),
            "Forms(1)"
        );
    }

    #[test]
    fn degree_zero_notes_the_untwisted_value() {
        let a = builders::annulus3();
        let d = deligne_group(&a, &TwistCocycle::constant(&a, Sign::Minus), 0).unwrap();
        assert!(d.topological.is_trivial() && d.forms.is_none());
        assert!(d
            .provenance
            .iter()
            .any(|p| p.contains("untwisted local system would give Z")));
    }

    #[test]
    fn equality_ignores_provenance() {
        let p = builders::point();
        let a = deligne_group(&p, &TwistCocycle::trivial(&p), 1).unwrap();
        let mut b = a.clone();
        b.provenance.clear();
        assert_eq!(a, b);
    }

    #[test]
    fn sheaf_branches() {
        let rp2 = builders::rp2();
        let eta = w1(&rp2);
        assert_eq!(
            deligne_sheaf_cohomology(&rp2, &eta, 1, 1)
                .unwrap()
                .to_string(),
            "Z"
        );
        assert_eq!(
            deligne_sheaf_cohomology(&rp2, &eta, 2, 1)
                .unwrap()
                .to_string(),
            "0"
        );
        assert_eq!(
            deligne_sheaf_cohomology(&rp2, &eta, 2, -1)
                .unwrap()
                .to_string(),
            "Z/2"
        );
        let c = builders::circle_nerve(3);
        let m = TwistCocycle::constant(&c, Sign::Minus);
        assert_eq!(
            deligne_sheaf_cohomology(&c, &m, 1, -1).unwrap(),
            SheafValue::Divisible(DivisibleDescriptor::trivial())
        );
        assert_eq!(
            deligne_sheaf_cohomology(&c, &m, 2, -1).unwrap().to_string(),
            "Z/2"
        );
        assert_eq!(
            deligne_sheaf_cohomology(&c, &m, 1, 0).unwrap_err(),
            DeligneError::ZeroDegreeRequest
        );
    }

    #[test]
    fn diamonds_pass_on_the_model_spaces() {
        for k in [
            builders::point(),
            builders::circle_nerve(3),
            builders::rp2(),
            builders::rp3(),
        ] {
            for eta in twist_classes_mod2(&k) {
                for n in 1..=3 {
                    let r = diamond(&k, &eta, n).unwrap();
                    assert!(r.passed(), "{:?}", r.checks);
                }
            }
        }
    }

    #[test]
    fn twisted_circle_bottom_row() {
        let c = builders::circle_nerve(3);
        let r = diamond(&c, &TwistCocycle::constant(&c, Sign::Minus), 1).unwrap();
        assert_eq!(r.circle_below.to_string(), "Z/2");
        assert_eq!(r.integral.to_string(), "Z/2");
        assert_eq!(r.bockstein_image.to_string(), "Z/2");
        assert_eq!(r.rationalization_rank, 0);
    }
}
