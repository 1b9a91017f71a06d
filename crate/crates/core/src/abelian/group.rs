use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use super::AbelianError;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` in invariant-factor
/// normal form: every `d_i ≥ 2` and `d_i | d_{i+1}`. Two values are isomorphic iff equal.
///
/// Generators are ordered free ones first, then one torsion generator per invariant
/// factor; [`GroupHom`] matrices use this order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(0, [BigInt::from(order)])
    }

    /// Normalizes `Z^free ⊕ ⊕ Z/o_i` for arbitrary orders. Order 0 means a free summand,
    /// order ±1 is dropped, negative orders are taken by absolute value.
    pub fn from_orders(free: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free;
        let mut finite: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        FgAbGroup {
            free_rank,
            invariant_factors: invariant_factors_of(finite),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// The torsion subgroup as a group in its own right.
    pub fn torsion(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned();
        FgAbGroup::from_orders(self.free_rank + other.free_rank, orders)
    }

    /// Total number of generators in the canonical generating set.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Order of generator `i`; `None` for a free generator.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        if i < self.free_rank {
            None
        } else {
            Some(&self.invariant_factors[i - self.free_rank])
        }
    }

    /// Number of invariant factors divisible by `p`: the `p`-rank of the torsion.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|d| d.is_multiple_of(&p))
            .count()
    }

    /// Relation matrix: generators × torsion generators, one column `d_i e_i` per factor.
    pub(crate) fn relation_matrix(&self) -> IntMatrix {
        let n = self.generator_count();
        let t = self.invariant_factors.len();
        let mut m = IntMatrix::zeros(n, t);
        for (j, d) in self.invariant_factors.iter().enumerate() {
            m.set(self.free_rank + j, j, d.clone());
        }
        m
    }

    /// Reduces a coordinate vector: torsion coordinates into `[0, d)`.
    pub(crate) fn reduce(&self, coords: &mut [BigInt]) {
        for (j, d) in self.invariant_factors.iter().enumerate() {
            let c = &mut coords[self.free_rank + j];
            *c = c.mod_floor(d);
        }
    }

    /// Canonical text form, e.g. `Z^2 (+) Z/2 (+) Z/4`, or `0`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Converts a multiset of finite cyclic orders into the invariant-factor chain.
fn invariant_factors_of(orders: Vec<BigInt>) -> Vec<BigInt> {
    if orders.is_empty() {
        return orders;
    }
    let n = orders.len();
    let d = smith_normal_form(&IntMatrix::diagonal(n, n, &orders));
    d.nonzero_diagonal()
        .into_iter()
        .filter(|v| !v.is_one())
        .collect()
}

pub(crate) fn render_free(symbol: &str, rank: usize) -> Option<String> {
    match rank {
        0 => None,
        1 => Some(symbol.to_string()),
        r => Some(format!("{symbol}^{r}")),
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        parts.extend(render_free("Z", self.free_rank));
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    invariant_factors: Vec<String>,
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupRepr {
            free_rank: self.free_rank,
            invariant_factors: self
                .invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(deserializer)?;
        let mut orders = Vec::with_capacity(repr.invariant_factors.len());
        for s in &repr.invariant_factors {
            let d: BigInt = s
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad invariant factor {s:?}")))?;
            orders.push(d);
        }
        let group = FgAbGroup::from_orders(repr.free_rank, orders.iter().cloned());
        if group.invariant_factors != orders {
            return Err(serde::de::Error::custom(
                "invariant factors must be >= 2 and form a divisibility chain",
            ));
        }
        Ok(group)
    }
}

/// A homomorphism between groups in normal form. Column `j` holds the image of source
/// generator `j` in target generator coordinates, torsion coordinates reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        mut matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(AbelianError::DimensionMismatch {
                expected: (target.generator_count(), source.generator_count()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        for j in 0..matrix.cols() {
            let mut col = matrix.col(j);
            target.reduce(&mut col);
            if let Some(d) = source.generator_order(j) {
                let scaled: Vec<BigInt> = col.iter().map(|c| c * d).collect();
                if !target.is_zero_element(&scaled) {
                    return Err(AbelianError::TorsionViolation { generator: j });
                }
            }
            for (i, c) in col.into_iter().enumerate() {
                matrix.set(i, j, c);
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.generator_count(), source.generator_count());
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.generator_count());
        GroupHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        if self.target != other.source {
            return Err(AbelianError::IncompatibleMaps);
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            &other.matrix * &self.matrix,
        )
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.col(j)))
    }

    /// The image as an abstract group.
    pub fn image(&self) -> FgAbGroup {
        let relations = self.target.relation_matrix();
        lattice_quotient(&self.matrix.hconcat(&relations), &relations)
    }

    /// The kernel as an abstract group.
    pub fn kernel(&self) -> FgAbGroup {
        let kernel = self.kernel_lattice();
        lattice_quotient(&kernel, &self.source.relation_matrix())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.target
    }

    /// Generators (as columns) of `{x ∈ Z^n : f(x) = 0 in the target}`, where `n` is the
    /// source generator count. Contains the source relation lattice.
    fn kernel_lattice(&self) -> IntMatrix {
        let n = self.source.generator_count();
        let stacked = self.matrix.hconcat(&self.target.relation_matrix());
        let kernel = smith_normal_form(&stacked).kernel_basis();
        let projected = kernel.row_range(0, n);
        projected.hconcat(&self.source.relation_matrix())
    }
}

impl FgAbGroup {
    fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        coords
            .iter()
            .enumerate()
            .all(|(i, c)| match self.generator_order(i) {
                None => c.is_zero(),
                Some(d) => c.is_multiple_of(d),
            })
    }
}

/// `span(lattice) / span(sub)` as a group; requires `span(sub) ⊆ span(lattice)`.
pub(crate) fn lattice_quotient(lattice: &IntMatrix, sub: &IntMatrix) -> FgAbGroup {
    let d = smith_normal_form(lattice);
    let r = d.rank();
    // Basis of the lattice: columns of U · diag(s) restricted to the first r columns.
    // Coordinates of a lattice vector v in that basis: (U⁻¹ v)_i / s_i.
    let w = d.u_inverse() * sub;
    let diag = d.nonzero_diagonal();
    let mut coords = IntMatrix::zeros(r, sub.cols());
    for i in 0..r {
        for j in 0..sub.cols() {
            let (q, rem) = w.get(i, j).div_rem(&diag[i]);
            debug_assert!(rem.is_zero(), "sublattice not contained in lattice");
            coords.set(i, j, q);
        }
    }
    let rel = smith_normal_form(&coords);
    let mut orders = rel.nonzero_diagonal();
    orders.extend(std::iter::repeat_n(BigInt::zero(), r - rel.rank()));
    FgAbGroup::from_orders(0, orders)
}

/// Outcome of comparing `im f` with `ker g` inside `f.target()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessOutcome {
    pub exact: bool,
    pub image: FgAbGroup,
    pub kernel: FgAbGroup,
}

/// True iff `im f = ker g`. Fails with `CompositionNotZero` if `g ∘ f ≠ 0`.
pub fn exactness_check(f: &GroupHom, g: &GroupHom) -> Result<bool, AbelianError> {
    exactness_detail(f, g).map(|o| o.exact)
}

/// As [`exactness_check`], also reporting the image and kernel groups.
pub fn exactness_detail(f: &GroupHom, g: &GroupHom) -> Result<ExactnessOutcome, AbelianError> {
    let composite = f.then(g)?;
    if !composite.is_zero() {
        return Err(AbelianError::CompositionNotZero);
    }
    let middle = f.target();
    let relations = middle.relation_matrix();
    let image_lattice = f.matrix.hconcat(&relations);
    let kernel_lattice = g.kernel_lattice();

    // im f ⊆ ker g holds since g ∘ f = 0; test the reverse inclusion generator by generator.
    let image_snf = smith_normal_form(&image_lattice);
    let exact =
        (0..kernel_lattice.cols()).all(|j| image_snf.solve(&kernel_lattice.col(j)).is_some());
    Ok(ExactnessOutcome {
        exact,
        image: lattice_quotient(&image_lattice, &relations),
        kernel: lattice_quotient(&kernel_lattice, &relations),
    })
}

/// The group `ker(d_out) / im(d_in)` together with explicit generator cocycles and a
/// coordinate map. The generator order matches [`FgAbGroup`]'s canonical order.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    group: FgAbGroup,
    generators: Vec<Vec<BigInt>>,
    coordinates: IntMatrix,
    d_out: IntMatrix,
}

impl CohomologyPresentation {
    pub fn new(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<Self, AbelianError> {
        if d_out.cols() != d_in.rows() {
            return Err(AbelianError::DimensionMismatch {
                expected: (d_out.cols(), d_in.cols()),
                found: (d_in.rows(), d_in.cols()),
            });
        }
        if !(d_out * d_in).is_zero() {
            return Err(AbelianError::CompositionNotZero);
        }
        let n = d_out.cols();
        let out = smith_normal_form(d_out);
        let kernel = out.kernel_basis();
        let to_kernel = out.kernel_coordinates();
        let z = kernel.cols();

        // im(d_in) in kernel coordinates, then diagonalize the relations.
        let relations = &to_kernel * d_in;
        let rel = smith_normal_form(&relations);
        let diag = rel.nonzero_diagonal();
        let basis = &kernel * rel.u();
        let coords = rel.u_inverse() * &to_kernel;

        let free: Vec<usize> = (rel.rank()..z).collect();
        let torsion: Vec<usize> = (0..rel.rank()).filter(|&i| !diag[i].is_one()).collect();
        let order: Vec<usize> = free.iter().chain(&torsion).copied().collect();

        let mut generators = Vec::with_capacity(order.len());
        let mut coordinates = IntMatrix::zeros(order.len(), n);
        for (slot, &i) in order.iter().enumerate() {
            let mut g = basis.col(i);
            let mut row: Vec<BigInt> = coords.row(i).to_vec();
            // Deterministic sign: first nonzero entry of each generator is positive.
            if g.iter()
                .find(|v| !v.is_zero())
                .is_some_and(Signed::is_negative)
            {
                g.iter_mut().for_each(|v| *v = -std::mem::take(v));
                row.iter_mut().for_each(|v| *v = -std::mem::take(v));
            }
            for (c, v) in row.into_iter().enumerate() {
                coordinates.set(slot, c, v);
            }
            generators.push(g);
        }
        let group = FgAbGroup::from_orders(free.len(), torsion.iter().map(|&i| diag[i].clone()));
        debug_assert_eq!(group.generator_count(), generators.len());
        Ok(CohomologyPresentation {
            group,
            generators,
            coordinates,
            d_out: d_out.clone(),
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// Representative cocycles, one per canonical generator.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn cochain_len(&self) -> usize {
        self.coordinates.cols()
    }

    pub fn is_cocycle(&self, cochain: &[BigInt]) -> bool {
        self.d_out.apply(cochain).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of a cocycle, torsion entries reduced.
    pub fn classify(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        if !self.is_cocycle(cocycle) {
            return Err(AbelianError::NotACocycle);
        }
        let mut c = self.coordinates.apply(cocycle);
        self.group.reduce(&mut c);
        Ok(c)
    }

    /// Homomorphism induced on classes by a cochain-level map sending cocycles of
    /// `self` to cocycles of `target`.
    pub fn map_to(
        &self,
        target: &CohomologyPresentation,
        cochain_map: &IntMatrix,
    ) -> Result<GroupHom, AbelianError> {
        if cochain_map.cols() != self.cochain_len() || cochain_map.rows() != target.cochain_len() {
            return Err(AbelianError::DimensionMismatch {
                expected: (target.cochain_len(), self.cochain_len()),
                found: (cochain_map.rows(), cochain_map.cols()),
            });
        }
        let columns = self
            .generators
            .iter()
            .map(|g| target.classify(&cochain_map.apply(g)))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = IntMatrix::from_columns(target.group.generator_count(), &columns);
        GroupHom::new(self.group.clone(), target.group.clone(), matrix)
    }
}

/// `ker(d_out) / im(d_in)` in normal form.
pub fn cohomology_at(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<FgAbGroup, AbelianError> {
    CohomologyPresentation::new(d_out, d_in).map(|p| p.group)
}
