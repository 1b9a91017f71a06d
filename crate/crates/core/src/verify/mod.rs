//! Executable checks: Mayer–Vietoris exactness, the diamond relations, reduction to the
//! untwisted theory for the trivial twist, and brute-force cross-checks.

mod check;
mod mv;

pub use check::{all_passed, Check};
pub use mv::{check_mv, MvDecomposition, MvReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::field::{cohomology_dimension, PrimeField, Rationals};
use crate::abelian::{AbelianError, FgAbGroup, IntMatrix, IntegralComplex, MatrixComplex};
use crate::cochain::{
    coboundary_matrices, standard_coboundaries, CochainComplex, CochainError, CoefficientRing,
    CohomologyValue, DivisibleDescriptor,
};
use crate::deligne::{diamond_of, DeligneError, DiamondReport};
use crate::nerve::{DeltaSet, Sign, TwistCocycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("U and V do not cover the complex")]
    NotACover,
    #[error("Mayer-Vietoris is checked over z, q and fp:P only, not {0}")]
    UnsupportedRing(CoefficientRing),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Deligne(#[from] DeligneError),
}

/// Rings exercised by the harness.
pub const HARNESS_RINGS: [CoefficientRing; 5] = [
    CoefficientRing::Integer,
    CoefficientRing::Rational,
    CoefficientRing::Prime(2),
    CoefficientRing::Prime(3),
    CoefficientRing::Prime(5),
];

/// Primes used for universal-coefficient bookkeeping.
pub const ORACLE_PRIMES: [u64; 3] = [2, 3, 5];

/// Number of random gauge transforms tried by [`oracle_suite`].
pub const GAUGE_TRIALS: usize = 10;

/// A list of checks with an aggregate verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Diamond checks in degree `n ≥ 1`, including the Bockstein image property.
pub fn check_diamond(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    n: usize,
) -> Result<DiamondReport, VerifyError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    Ok(diamond_of(&c, n)?)
}

fn standard_complex(complex: &DeltaSet) -> Result<MatrixComplex, VerifyError> {
    Ok(MatrixComplex::new(standard_coboundaries(complex))?)
}

fn standard_group(std: &MatrixComplex, k: usize) -> Result<FgAbGroup, VerifyError> {
    if k > std.top_degree() {
        return Ok(FgAbGroup::trivial());
    }
    Ok(std.presentation(k)?.group().clone())
}

fn standard_value(
    std: &MatrixComplex,
    ring: CoefficientRing,
    k: usize,
) -> Result<CohomologyValue, VerifyError> {
    let dim = |k: usize, field_dim: &dyn Fn(&IntMatrix, &IntMatrix) -> usize| {
        if k > std.top_degree() {
            0
        } else {
            field_dim(&std.differential(k), &std.incoming(k))
        }
    };
    Ok(match ring {
        CoefficientRing::Integer => CohomologyValue::Group(standard_group(std, k)?),
        CoefficientRing::Rational => CohomologyValue::Dimension {
            ring,
            dimension: dim(k, &|a, b| cohomology_dimension(&Rationals, a, b)),
        },
        CoefficientRing::Prime(p) => {
            let f = PrimeField::new(p)?;
            CohomologyValue::Dimension {
                ring,
                dimension: dim(k, &|a, b| cohomology_dimension(&f, a, b)),
            }
        }
        CoefficientRing::CircleModel => CohomologyValue::Divisible(DivisibleDescriptor::new(
            dim(k, &|a, b| cohomology_dimension(&Rationals, a, b)),
            standard_group(std, k + 1)?.torsion(),
        )),
    })
}

/// For the all-(+1) twist, every group over every ring matches the untwisted
/// simplicial computation in degrees `0..=n_max`.
pub fn check_trivial_twist(complex: &DeltaSet, n_max: usize) -> Result<CheckReport, VerifyError> {
    let std = standard_complex(complex)?;
    let trivial = TwistCocycle::trivial(complex);
    let mut checks = Vec::new();
    for ring in HARNESS_RINGS
        .into_iter()
        .chain([CoefficientRing::CircleModel])
    {
        let c = coboundary_matrices(complex, &trivial, ring)?;
        for k in 0..=n_max {
            checks.push(Check::equal(
                format!("trivial twist over {ring} equals untwisted"),
                Some(k),
                c.cohomology(k)?,
                standard_value(&std, ring, k)?,
            ));
        }
    }
    Ok(CheckReport { checks })
}

fn alternating_sum(values: impl IntoIterator<Item = usize>) -> i64 {
    values
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Everything the gauge-invariance check compares, rendered degree by degree.
fn fingerprint(c: &CochainComplex) -> Result<Vec<String>, VerifyError> {
    let mut out = Vec::new();
    for k in 0..c.complex().degree_count() {
        let mut parts = vec![
            c.integral_group(k)?.to_string(),
            c.rational_dimension(k).to_string(),
        ];
        for p in ORACLE_PRIMES {
            parts.push(c.prime_dimension(p, k)?.to_string());
        }
        parts.push(c.circle_model(k)?.to_string());
        out.push(parts.join(" | "));
    }
    Ok(out)
}

/// Independent cross-checks of one `(K, η)`:
/// `F_p` dimensions against universal coefficients, Euler characteristic,
/// `rank H^k(Z_η) = dim H^k(Q_η)`, `δ² = 0`, and invariance under random gauges.
pub fn oracle_suite(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    let degrees = complex.degree_count();
    let mut checks = Vec::new();

    for k in 1..degrees {
        let product = &c.differentials()[k] * &c.differentials()[k - 1];
        checks.push(Check::with(
            "delta squared is zero",
            Some(k - 1),
            product.is_zero(),
            product.max_abs_entry(),
            0,
        ));
    }

    let groups = (0..=degrees)
        .map(|k| c.integral_group(k))
        .collect::<Result<Vec<_>, _>>()?;
    for p in ORACLE_PRIMES {
        for k in 0..degrees {
            let predicted = groups[k].free_rank() + groups[k].p_rank(p) + groups[k + 1].p_rank(p);
            checks.push(Check::equal(
                format!("dim over F{p} = rank + {p}-rank of H^k + {p}-rank of H^(k+1)"),
                Some(k),
                c.prime_dimension(p, k)?,
                predicted,
            ));
        }
    }

    for (k, g) in groups.iter().enumerate().take(degrees) {
        checks.push(Check::equal(
            "rank H^k(Z_twisted) = dim H^k(Q_twisted)",
            Some(k),
            g.free_rank(),
            c.rational_dimension(k),
        ));
    }

    let rational_dims: Vec<usize> = (0..degrees).map(|k| c.rational_dimension(k)).collect();
    checks.push(Check::equal(
        "Euler characteristic of Q_twisted cohomology = cell count",
        None,
        alternating_sum(rational_dims),
        alternating_sum(complex.cell_counts()),
    ));

    let reference = fingerprint(&c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..GAUGE_TRIALS {
        let gauge: Vec<Sign> = (0..complex.cell_count(0))
            .map(|_| {
                if rng.gen::<bool>() {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        let moved = twist.gauge_transform(complex, &gauge);
        let moved_c = coboundary_matrices(complex, &moved, CoefficientRing::Integer)?;
        checks.push(Check::equal(
            format!("gauge transform {trial} leaves all groups unchanged"),
            None,
            fingerprint(&moved_c)?.join("; "),
            reference.join("; "),
        ));
    }
    Ok(CheckReport { checks })
}

/// Mayer–Vietoris report for one decomposition and ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledMv {
    pub decomposition: String,
    pub report: MvReport,
}

/// Every harness section for one `(K, η)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub mv: Vec<LabelledMv>,
    pub diamond: Vec<DiamondReport>,
    pub trivial: Option<CheckReport>,
    pub oracle: Option<CheckReport>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.mv.iter().all(|m| m.report.passed())
            && self.diamond.iter().all(DiamondReport::passed)
            && self.trivial.as_ref().is_none_or(CheckReport::passed)
            && self.oracle.as_ref().is_none_or(CheckReport::passed)
    }
}

/// Closed star of each vertex against the rest, over every harness ring.
pub fn mv_over_star_splits(
    complex: &DeltaSet,
    twist: &TwistCocycle,
) -> Result<Vec<LabelledMv>, VerifyError> {
    let mut out = Vec::new();
    for v in 0..complex.cell_count(0) {
        let m = MvDecomposition::star_split(complex, v)?;
        for ring in HARNESS_RINGS {
            out.push(LabelledMv {
                decomposition: format!("star of {} | rest", complex.id(0, v)),
                report: check_mv(&m, twist, ring)?,
            });
        }
    }
    Ok(out)
}

/// Degrees checked by the diamond section.
pub const DIAMOND_DEGREES: std::ops::RangeInclusive<usize> = 1..=3;

pub fn diamonds(
    complex: &DeltaSet,
    twist: &TwistCocycle,
) -> Result<Vec<DiamondReport>, VerifyError> {
    let c = coboundary_matrices(complex, twist, CoefficientRing::Integer)?;
    DIAMOND_DEGREES.map(|n| Ok(diamond_of(&c, n)?)).collect()
}

/// All sections. The trivial-twist section covers degrees up to the dimension.
pub fn verify_all(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    seed: u64,
) -> Result<HarnessReport, VerifyError> {
    Ok(HarnessReport {
        mv: mv_over_star_splits(complex, twist)?,
        diamond: diamonds(complex, twist)?,
        trivial: Some(check_trivial_twist(complex, complex.dimension())?),
        oracle: Some(oracle_suite(complex, twist, seed)?),
    })
}
