use std::sync::OnceLock;

use super::group::{CohomologyPresentation, GroupHom};
use super::matrix::IntMatrix;
use super::AbelianError;

/// A bounded cochain complex of free abelian groups `C^0 → C^1 → ... → C^top`.
///
/// Implementors record one [`CohomologyPresentation`] per degree, so generator
/// bases stay fixed for the lifetime of the complex.
pub trait IntegralComplex {
    /// Rank of `C^k`; zero above the top degree.
    fn cochain_rank(&self, k: usize) -> usize;

    /// `δ_k : C^k → C^{k+1}` as a `rank(k+1) × rank(k)` matrix.
    fn differential(&self, k: usize) -> IntMatrix;

    fn presentation(&self, k: usize) -> Result<&CohomologyPresentation, AbelianError>;

    /// `δ_{k-1}`, with `δ_{-1}` the zero map from the zero group.
    fn incoming(&self, k: usize) -> IntMatrix {
        match k {
            0 => IntMatrix::zeros(self.cochain_rank(0), 0),
            _ => self.differential(k - 1),
        }
    }
}

/// A complex given directly by its differentials.
#[derive(Debug)]
pub struct MatrixComplex {
    differentials: Vec<IntMatrix>,
    ranks: Vec<usize>,
    presentations: Vec<OnceLock<CohomologyPresentation>>,
}

impl MatrixComplex {
    /// `differentials[k]` is `δ_k`. Consecutive shapes must chain and compose to zero.
    pub fn new(differentials: Vec<IntMatrix>) -> Result<Self, AbelianError> {
        if differentials.is_empty() {
            return Err(AbelianError::EmptyComplex);
        }
        let mut ranks: Vec<usize> = differentials.iter().map(IntMatrix::cols).collect();
        ranks.push(differentials.last().map(IntMatrix::rows).unwrap_or(0));
        for w in differentials.windows(2) {
            if w[0].rows() != w[1].cols() {
                return Err(AbelianError::DimensionMismatch {
                    expected: (w[0].rows(), w[0].rows()),
                    found: (w[1].cols(), w[1].cols()),
                });
            }
            if !(&w[1] * &w[0]).is_zero() {
                return Err(AbelianError::CompositionNotZero);
            }
        }
        let presentations = (0..ranks.len()).map(|_| OnceLock::new()).collect();
        Ok(MatrixComplex {
            differentials,
            ranks,
            presentations,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }
}

impl IntegralComplex for MatrixComplex {
    fn cochain_rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    fn differential(&self, k: usize) -> IntMatrix {
        match self.differentials.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.cochain_rank(k + 1), self.cochain_rank(k)),
        }
    }

    fn presentation(&self, k: usize) -> Result<&CohomologyPresentation, AbelianError> {
        if let Some(p) = self.presentations.get(k).and_then(OnceLock::get) {
            return Ok(p);
        }
        let p = CohomologyPresentation::new(&self.differential(k), &self.incoming(k))?;
        match self.presentations.get(k) {
            Some(cell) => Ok(cell.get_or_init(|| p)),
            None => Err(AbelianError::DegreeOutOfRange(k)),
        }
    }
}

/// A degreewise family of integer matrices `f^k : C^k_source → C^k_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    components: Vec<IntMatrix>,
}

impl CochainMap {
    pub fn new(components: Vec<IntMatrix>) -> Self {
        CochainMap { components }
    }

    pub fn identity<C: IntegralComplex + ?Sized>(complex: &C, top: usize) -> Self {
        CochainMap {
            components: (0..=top)
                .map(|k| IntMatrix::identity(complex.cochain_rank(k)))
                .collect(),
        }
    }

    pub fn component(&self, k: usize) -> Option<&IntMatrix> {
        self.components.get(k)
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }
}

/// The homomorphism `H^k(source) → H^k(target)` induced by a cochain map, in the recorded
/// generator bases of both complexes. Commutation with the differentials is checked in
/// degrees `k-1`, `k` and `k+1` where components exist.
pub fn induced_map<S, T>(
    f: &CochainMap,
    source: &S,
    target: &T,
    k: usize,
) -> Result<GroupHom, AbelianError>
where
    S: IntegralComplex + ?Sized,
    T: IntegralComplex + ?Sized,
{
    let fk = f
        .component(k)
        .ok_or(AbelianError::NotAChainMap { degree: k })?;
    for j in k.saturating_sub(1)..=k + 1 {
        let (Some(fj), Some(fj1)) = (f.component(j), f.component(j + 1)) else {
            continue;
        };
        check_shape(fj, source, target, j)?;
        check_shape(fj1, source, target, j + 1)?;
        let left = &target.differential(j) * fj;
        let right = fj1 * &source.differential(j);
        if left != right {
            return Err(AbelianError::NotAChainMap { degree: j });
        }
    }
    check_shape(fk, source, target, k)?;
    source.presentation(k)?.map_to(target.presentation(k)?, fk)
}

fn check_shape<S, T>(m: &IntMatrix, source: &S, target: &T, k: usize) -> Result<(), AbelianError>
where
    S: IntegralComplex + ?Sized,
    T: IntegralComplex + ?Sized,
{
    let expected = (target.cochain_rank(k), source.cochain_rank(k));
    if (m.rows(), m.cols()) != expected {
        return Err(AbelianError::DimensionMismatch {
            expected,
            found: (m.rows(), m.cols()),
        });
    }
    Ok(())
}
