use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CochainError;
use crate::abelian::field::{cohomology_dimension, is_prime, PrimeField, Rationals};
use crate::abelian::{
    render_free, AbelianError, CohomologyPresentation, FgAbGroup, IntMatrix, IntegralComplex,
};
use crate::nerve::{sign_value, validate_twist, DeltaSet, TwistCocycle};

/// Coefficients for twisted cochains. All four use the same integer differentials; the
/// field cases reduce them, the circle model combines the integral and rational answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CoefficientRing {
    /// The local system `Z_η`.
    Integer,
    /// `Q_η`, standing in for the flat real line bundle.
    Rational,
    /// `F_p` twisted by `η`.
    Prime(u64),
    /// `R/Z` twisted by `η`: reported as a divisible part plus torsion.
    CircleModel,
}

impl CoefficientRing {
    pub fn is_field(self) -> bool {
        matches!(self, CoefficientRing::Rational | CoefficientRing::Prime(_))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integer => write!(f, "z"),
            CoefficientRing::Rational => write!(f, "q"),
            CoefficientRing::Prime(p) => write!(f, "fp:{p}"),
            CoefficientRing::CircleModel => write!(f, "rz"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = CochainError;

    fn from_str(s: &str) -> Result<Self, CochainError> {
        match s {
            "z" => Ok(CoefficientRing::Integer),
            "q" => Ok(CoefficientRing::Rational),
            "rz" => Ok(CoefficientRing::CircleModel),
            _ => {
                let p: u64 = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| CochainError::UnknownRing(s.to_string()))?;
                if is_prime(p) {
                    Ok(CoefficientRing::Prime(p))
                } else {
                    Err(CochainError::Abelian(AbelianError::NotPrime(p)))
                }
            }
        }
    }
}

impl From<CoefficientRing> for String {
    fn from(r: CoefficientRing) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for CoefficientRing {
    type Error = CochainError;

    fn try_from(s: String) -> Result<Self, CochainError> {
        s.parse()
    }
}

/// A coefficient ring together with the twist it is transported along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    ring: CoefficientRing,
    twist: TwistCocycle,
}

impl CoefficientSystem {
    pub fn new(ring: CoefficientRing, twist: TwistCocycle) -> Result<Self, CochainError> {
        if let CoefficientRing::Prime(p) = ring {
            PrimeField::new(p)?;
        }
        Ok(CoefficientSystem { ring, twist })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn twist(&self) -> &TwistCocycle {
        &self.twist
    }
}

/// The `η`-twisted cochain complex of a Δ-set:
///
/// `(δ a)(σ) = η(e₀₁ σ) · a(d₀ σ) + Σ_{i ≥ 1} (-1)^i a(d_i σ)`,
///
/// with `e₀₁ σ` the edge through vertices 0 and 1 of `σ`. Values of a cochain on a cell
/// live in the fibre over the cell's vertex 0, so only the `d₀` face needs transport.
///
/// Differentials are stored as integer matrices for every ring; field computations
/// reduce them. Integral generator bases are computed once per degree and kept.
#[derive(Debug)]
pub struct CochainComplex {
    complex: DeltaSet,
    system: CoefficientSystem,
    differentials: Vec<IntMatrix>,
    presentations: Vec<OnceLock<CohomologyPresentation>>,
}

/// Builds the twisted complex, checking the twist and `δ² = 0`.
pub fn coboundary_matrices(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    ring: CoefficientRing,
) -> Result<CochainComplex, CochainError> {
    if !validate_twist(complex, twist)? {
        return Err(CochainError::TwistInvalid);
    }
    let system = CoefficientSystem::new(ring, twist.clone())?;
    let top = complex.degree_count();
    let mut differentials = Vec::with_capacity(top);
    for k in 0..top {
        differentials.push(twisted_differential(complex, twist, k));
    }
    for k in 1..differentials.len() {
        if !(&differentials[k] * &differentials[k - 1]).is_zero() {
            return Err(CochainError::InternalDeltaSquaredNonzero { degree: k - 1 });
        }
    }
    Ok(CochainComplex {
        complex: complex.clone(),
        system,
        presentations: (0..top).map(|_| OnceLock::new()).collect(),
        differentials,
    })
}

fn twisted_differential(complex: &DeltaSet, twist: &TwistCocycle, k: usize) -> IntMatrix {
    let rows = complex.cell_count(k + 1);
    let cols = complex.cell_count(k);
    let mut d = IntMatrix::zeros(rows, cols);
    for sigma in 0..rows {
        let faces = complex.faces(k + 1, sigma);
        let transport = sign_value(twist.value(complex.leading_edge(k + 1, sigma)));
        *d.get_mut(sigma, faces[0]) += transport;
        for (i, &f) in faces.iter().enumerate().skip(1) {
            if i % 2 == 0 {
                *d.get_mut(sigma, f) += BigInt::one();
            } else {
                *d.get_mut(sigma, f) -= BigInt::one();
            }
        }
    }
    d
}

/// The untwisted simplicial coboundaries `Σ (-1)^i a(d_i σ)`, built without reference
/// to any twist.
pub fn standard_coboundaries(complex: &DeltaSet) -> Vec<IntMatrix> {
    (0..complex.degree_count())
        .map(|k| {
            let rows = complex.cell_count(k + 1);
            let mut d = IntMatrix::zeros(rows, complex.cell_count(k));
            for sigma in 0..rows {
                for (i, &f) in complex.faces(k + 1, sigma).iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *d.get_mut(sigma, f) += sign;
                }
            }
            d
        })
        .collect()
}

impl CochainComplex {
    pub fn complex(&self) -> &DeltaSet {
        &self.complex
    }

    pub fn twist(&self) -> &TwistCocycle {
        self.system.twist()
    }

    pub fn ring(&self) -> CoefficientRing {
        self.system.ring()
    }

    pub fn top_degree(&self) -> usize {
        self.complex.dimension()
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    /// `H^k(Z_η)`; zero above the top degree.
    pub fn integral_group(&self, k: usize) -> Result<FgAbGroup, CochainError> {
        if k >= self.complex.degree_count() {
            return Ok(FgAbGroup::trivial());
        }
        Ok(self.presentation(k)?.group().clone())
    }

    pub fn rational_dimension(&self, k: usize) -> usize {
        if k >= self.complex.degree_count() {
            return 0;
        }
        cohomology_dimension(&Rationals, &self.differential(k), &self.incoming(k))
    }

    pub fn prime_dimension(&self, p: u64, k: usize) -> Result<usize, CochainError> {
        let field = PrimeField::new(p)?;
        if k >= self.complex.degree_count() {
            return Ok(0);
        }
        Ok(cohomology_dimension(
            &field,
            &self.differential(k),
            &self.incoming(k),
        ))
    }

    /// Cohomology in degree `k` over this complex's own ring.
    pub fn cohomology(&self, k: usize) -> Result<CohomologyValue, CochainError> {
        Ok(match self.ring() {
            CoefficientRing::Integer => CohomologyValue::Group(self.integral_group(k)?),
            CoefficientRing::Rational => CohomologyValue::Dimension {
                ring: CoefficientRing::Rational,
                dimension: self.rational_dimension(k),
            },
            CoefficientRing::Prime(p) => CohomologyValue::Dimension {
                ring: CoefficientRing::Prime(p),
                dimension: self.prime_dimension(p, k)?,
            },
            CoefficientRing::CircleModel => CohomologyValue::Divisible(self.circle_model(k)?),
        })
    }

    /// `H^k(R/Z_η) ≅ (R/Z)^{b_k} ⊕ Tor H^{k+1}(Z_η)`.
    pub fn circle_model(&self, k: usize) -> Result<DivisibleDescriptor, CochainError> {
        Ok(DivisibleDescriptor::new(
            self.rational_dimension(k),
            self.integral_group(k + 1)?.torsion(),
        ))
    }

    /// `Σ (-1)^k (number of k-cells)`.
    pub fn cellular_euler_characteristic(&self) -> i64 {
        self.complex
            .cell_counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// `Σ (-1)^k dim_Q H^k(Q_η)`.
    pub fn rational_euler_characteristic(&self) -> i64 {
        (0..self.complex.degree_count())
            .map(|k| {
                let b = self.rational_dimension(k) as i64;
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }
}

impl IntegralComplex for CochainComplex {
    fn cochain_rank(&self, k: usize) -> usize {
        self.complex.cell_count(k)
    }

    fn differential(&self, k: usize) -> IntMatrix {
        match self.differentials.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.cochain_rank(k + 1), self.cochain_rank(k)),
        }
    }

    fn presentation(&self, k: usize) -> Result<&CohomologyPresentation, AbelianError> {
        let cell = self
            .presentations
            .get(k)
            .ok_or(AbelianError::DegreeOutOfRange(k))?;
        if let Some(p) = cell.get() {
            return Ok(p);
        }
        let p = CohomologyPresentation::new(&self.differential(k), &self.incoming(k))?;
        Ok(cell.get_or_init(|| p))
    }
}

/// `(R/Z)^torus_rank ⊕ torsion`, the normal form of a twisted `R/Z` cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisibleDescriptor {
    pub torus_rank: usize,
    pub torsion: FgAbGroup,
}

impl DivisibleDescriptor {
    /// # Panics
    /// If `torsion` has free rank.
    pub fn new(torus_rank: usize, torsion: FgAbGroup) -> Self {
        assert!(torsion.is_finite(), "torsion part must be finite");
        DivisibleDescriptor {
            torus_rank,
            torsion,
        }
    }

    pub fn trivial() -> Self {
        DivisibleDescriptor::new(0, FgAbGroup::trivial())
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.torsion.is_trivial()
    }
}

fn render_torus(rank: usize) -> Option<String> {
    match rank {
        0 => None,
        1 => Some("R/Z".to_string()),
        r => Some(format!("(R/Z)^{r}")),
    }
}

impl fmt::Display for DivisibleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.torsion.is_trivial() {
            parts.push(self.torsion.to_string());
        }
        parts.extend(render_torus(self.torus_rank));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// A cohomology answer in the shape natural to its ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomologyValue {
    Group(FgAbGroup),
    Dimension {
        ring: CoefficientRing,
        dimension: usize,
    },
    Divisible(DivisibleDescriptor),
}

impl fmt::Display for CohomologyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyValue::Group(g) => write!(f, "{g}"),
            CohomologyValue::Divisible(d) => write!(f, "{d}"),
            CohomologyValue::Dimension { ring, dimension } => {
                let symbol = match ring {
                    CoefficientRing::Prime(p) => format!("F{p}"),
                    _ => "Q".to_string(),
                };
                match render_free(&symbol, *dimension) {
                    Some(s) => write!(f, "{s}"),
                    None => write!(f, "0"),
                }
            }
        }
    }
}

/// `H^k` of `(K, η)` over `ring`. Degrees above the dimension give zero.
pub fn twisted_cohomology(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    ring: CoefficientRing,
    k: usize,
) -> Result<CohomologyValue, CochainError> {
    coboundary_matrices(complex, twist, ring)?.cohomology(k)
}

/// `H^k(R/Z_η)` as torus rank plus torsion.
pub fn rz_cohomology(
    complex: &DeltaSet,
    twist: &TwistCocycle,
    k: usize,
) -> Result<DivisibleDescriptor, CochainError> {
    coboundary_matrices(complex, twist, CoefficientRing::CircleModel)?.circle_model(k)
}
