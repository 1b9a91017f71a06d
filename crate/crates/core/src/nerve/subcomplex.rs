use std::collections::BTreeSet;

use super::{DeltaSet, NerveError, TwistCocycle};

/// A face-closed selection of cells of a parent Δ-set. Selected indices are kept sorted,
/// which fixes the cell order of [`restrict`]ed complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComplex {
    parent_counts: Vec<usize>,
    selected: Vec<Vec<usize>>,
}

impl SubComplex {
    /// Selection by index; fails with `NotFaceClosed` if a face of a selected cell is missing.
    pub fn from_indices(parent: &DeltaSet, selected: Vec<Vec<usize>>) -> Result<Self, NerveError> {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); parent.degree_count()];
        for (k, cells) in selected.into_iter().enumerate() {
            for c in cells {
                if k >= parent.degree_count() || c >= parent.cell_count(k) {
                    return Err(NerveError::ParentMismatch);
                }
                sets[k].insert(c);
            }
        }
        for k in 1..sets.len() {
            for &c in &sets[k] {
                if let Some(&f) = parent.faces(k, c).iter().find(|f| !sets[k - 1].contains(f)) {
                    return Err(NerveError::NotFaceClosed {
                        degree: k,
                        cell: parent.id(k, c).to_string(),
                        missing_face: parent.id(k - 1, f).to_string(),
                    });
                }
            }
        }
        Ok(SubComplex {
            parent_counts: parent.cell_counts(),
            selected: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Selection by cell id.
    pub fn from_ids(parent: &DeltaSet, ids: &[Vec<&str>]) -> Result<Self, NerveError> {
        let selected = ids
            .iter()
            .enumerate()
            .map(|(k, cells)| {
                cells
                    .iter()
                    .map(|id| {
                        parent
                            .index_of(k, id)
                            .ok_or_else(|| NerveError::BrokenFaceReference {
                                degree: k,
                                cell: id.to_string(),
                                face: id.to_string(),
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SubComplex::from_indices(parent, selected)
    }

    /// Smallest subcomplex containing the given `(degree, index)` cells.
    pub fn closure(parent: &DeltaSet, seeds: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); parent.degree_count()];
        for (k, c) in seeds {
            sets[k].insert(c);
        }
        for k in (1..sets.len()).rev() {
            let faces: Vec<usize> = sets[k]
                .iter()
                .flat_map(|&c| parent.faces(k, c).iter().copied())
                .collect();
            sets[k - 1].extend(faces);
        }
        SubComplex {
            parent_counts: parent.cell_counts(),
            selected: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn full(parent: &DeltaSet) -> Self {
        SubComplex {
            parent_counts: parent.cell_counts(),
            selected: parent
                .cell_counts()
                .into_iter()
                .map(|n| (0..n).collect())
                .collect(),
        }
    }

    pub fn empty(parent: &DeltaSet) -> Self {
        SubComplex {
            parent_counts: parent.cell_counts(),
            selected: vec![Vec::new(); parent.degree_count()],
        }
    }

    /// Closure of all cells having `vertex` among their vertices.
    pub fn closed_star(parent: &DeltaSet, vertex: usize) -> Self {
        SubComplex::closure(
            parent,
            cells_where(parent, |k, c| parent.vertices(k, c).contains(&vertex)),
        )
    }

    /// Closure of all cells not having `vertex` among their vertices.
    pub fn closed_complement_of_star(parent: &DeltaSet, vertex: usize) -> Self {
        SubComplex::closure(
            parent,
            cells_where(parent, |k, c| !parent.vertices(k, c).contains(&vertex)),
        )
    }

    pub fn selected(&self, k: usize) -> &[usize] {
        self.selected.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, k: usize, c: usize) -> bool {
        self.selected(k).binary_search(&c).is_ok()
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.selected(k).len()
    }

    pub fn parent_counts(&self) -> &[usize] {
        &self.parent_counts
    }

    pub fn belongs_to(&self, parent: &DeltaSet) -> bool {
        self.parent_counts == parent.cell_counts()
    }

    pub fn intersection(&self, other: &SubComplex) -> SubComplex {
        assert_eq!(self.parent_counts, other.parent_counts, "different parents");
        let selected = self
            .selected
            .iter()
            .zip(&other.selected)
            .map(|(a, b)| {
                a.iter()
                    .filter(|c| b.binary_search(c).is_ok())
                    .copied()
                    .collect()
            })
            .collect();
        SubComplex {
            parent_counts: self.parent_counts.clone(),
            selected,
        }
    }

    pub fn union(&self, other: &SubComplex) -> SubComplex {
        assert_eq!(self.parent_counts, other.parent_counts, "different parents");
        let selected = self
            .selected
            .iter()
            .zip(&other.selected)
            .map(|(a, b)| {
                let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
                s.into_iter().collect()
            })
            .collect();
        SubComplex {
            parent_counts: self.parent_counts.clone(),
            selected,
        }
    }

    pub fn is_full(&self) -> bool {
        self.selected
            .iter()
            .zip(&self.parent_counts)
            .all(|(s, &n)| s.len() == n)
    }
}

fn cells_where(parent: &DeltaSet, pred: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    (0..parent.degree_count())
        .flat_map(|k| (0..parent.cell_count(k)).map(move |c| (k, c)))
        .filter(|&(k, c)| pred(k, c))
        .collect()
}

/// The sub-Δ-set on the selected cells (ids kept, order of the parent) with the twist
/// restricted to surviving 1-cells. Trailing empty degrees are dropped.
pub fn restrict(
    parent: &DeltaSet,
    sub: &SubComplex,
    twist: &TwistCocycle,
) -> Result<(DeltaSet, TwistCocycle), NerveError> {
    if !sub.belongs_to(parent) || twist.len() != parent.cell_count(1) {
        return Err(NerveError::ParentMismatch);
    }
    // Re-check closure: a SubComplex built for another parent with equal counts could slip through.
    let checked = SubComplex::from_indices(parent, sub.selected.clone())?;
    let mut top = checked.selected.len();
    while top > 1 && checked.selected[top - 1].is_empty() {
        top -= 1;
    }
    let mut ids = Vec::with_capacity(top);
    let mut faces = Vec::with_capacity(top);
    for k in 0..top {
        let cells = checked.selected(k);
        ids.push(cells.iter().map(|&c| parent.id(k, c).to_string()).collect());
        faces.push(
            cells
                .iter()
                .map(|&c| {
                    if k == 0 {
                        return Vec::new();
                    }
                    let lower = checked.selected(k - 1);
                    parent
                        .faces(k, c)
                        .iter()
                        .map(|f| lower.binary_search(f).expect("face-closed"))
                        .collect()
                })
                .collect(),
        );
    }
    let restricted = DeltaSet::from_indices(ids, faces)?;
    let values = checked
        .selected(1)
        .iter()
        .map(|&e| twist.value(e))
        .collect();
    Ok((restricted, TwistCocycle::new(values)))
}
