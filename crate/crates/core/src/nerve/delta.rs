use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::NerveError;

/// A cell as supplied by a caller: identifier plus face identifiers `d_0, ..., d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<String>,
}

impl CellSpec {
    pub fn vertex(id: impl Into<String>) -> Self {
        CellSpec {
            id: id.into(),
            faces: Vec::new(),
        }
    }

    pub fn new(id: impl Into<String>, faces: &[&str]) -> Self {
        CellSpec {
            id: id.into(),
            faces: faces.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// A finite semi-simplicial set. Cells are numbered per degree in insertion order;
/// `faces(k, c)[i]` is the index of the `(k-1)`-cell `d_i c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    ids: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<String, usize>>,
}

/// Result of a successful [`DeltaSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub cell_counts: Vec<usize>,
}

impl DeltaSet {
    /// Resolves identifiers and validates. `cells[k]` lists the `k`-cells.
    pub fn from_cells(cells: Vec<Vec<CellSpec>>) -> Result<Self, NerveError> {
        let mut ids: Vec<Vec<String>> = Vec::with_capacity(cells.len());
        let mut lookup: Vec<HashMap<String, usize>> = Vec::with_capacity(cells.len());
        for (k, degree) in cells.iter().enumerate() {
            let mut map = HashMap::with_capacity(degree.len());
            for (c, cell) in degree.iter().enumerate() {
                if map.insert(cell.id.clone(), c).is_some() {
                    return Err(NerveError::DuplicateCell {
                        degree: k,
                        cell: cell.id.clone(),
                    });
                }
            }
            ids.push(degree.iter().map(|c| c.id.clone()).collect());
            lookup.push(map);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(cells.len());
        for (k, degree) in cells.iter().enumerate() {
            let mut per_degree = Vec::with_capacity(degree.len());
            for cell in degree {
                if k == 0 {
                    if !cell.faces.is_empty() {
                        return Err(NerveError::WrongFaceCount {
                            degree: 0,
                            cell: cell.id.clone(),
                            expected: 0,
                            found: cell.faces.len(),
                        });
                    }
                    per_degree.push(Vec::new());
                    continue;
                }
                let resolved = cell
                    .faces
                    .iter()
                    .map(|f| {
                        lookup[k - 1].get(f).copied().ok_or_else(|| {
                            NerveError::BrokenFaceReference {
                                degree: k,
                                cell: cell.id.clone(),
                                face: f.clone(),
                            }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                per_degree.push(resolved);
            }
            faces.push(per_degree);
        }
        let set = DeltaSet { ids, faces, lookup };
        set.validate()?;
        Ok(set)
    }

    /// Builds from index-level data and validates.
    pub fn from_indices(
        ids: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, NerveError> {
        if ids.len() != faces.len() {
            return Err(NerveError::MalformedDegrees);
        }
        let mut lookup = Vec::with_capacity(ids.len());
        for (k, degree) in ids.iter().enumerate() {
            let mut map = HashMap::with_capacity(degree.len());
            for (c, id) in degree.iter().enumerate() {
                if map.insert(id.clone(), c).is_some() {
                    return Err(NerveError::DuplicateCell {
                        degree: k,
                        cell: id.clone(),
                    });
                }
            }
            lookup.push(map);
        }
        let set = DeltaSet { ids, faces, lookup };
        set.validate()?;
        Ok(set)
    }

    /// The ordered simplicial complex generated by `facets`: vertices are sorted, faces
    /// delete one vertex. Cell ids are vertex labels joined by `-`.
    pub fn from_simplices(facets: &[Vec<usize>]) -> Result<Self, NerveError> {
        let mut by_degree: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut verts = facet.clone();
            verts.sort_unstable();
            verts.dedup();
            if verts.is_empty() {
                continue;
            }
            let n = verts.len();
            for mask in 1u64..(1u64 << n) {
                let subset: Vec<usize> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| verts[i])
                    .collect();
                let k = subset.len() - 1;
                if by_degree.len() <= k {
                    by_degree.resize_with(k + 1, BTreeSet::new);
                }
                by_degree[k].insert(subset);
            }
        }
        if by_degree.is_empty() {
            by_degree.push(BTreeSet::new());
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_degree
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let index: Vec<HashMap<&Vec<usize>, usize>> = simplices
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let ids = simplices
            .iter()
            .map(|d| {
                d.iter()
                    .map(|s| {
                        s.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join("-")
                    })
                    .collect()
            })
            .collect();
        let faces = simplices
            .iter()
            .enumerate()
            .map(|(k, d)| {
                d.iter()
                    .map(|s| {
                        if k == 0 {
                            return Vec::new();
                        }
                        (0..s.len())
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                index[k - 1][&f]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        DeltaSet::from_indices(ids, faces)
    }

    /// Checks reference integrity, face counts and the simplicial identities
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<ValidationReport, NerveError> {
        for (k, degree) in self.faces.iter().enumerate() {
            if degree.len() != self.ids[k].len() {
                return Err(NerveError::MalformedDegrees);
            }
            for (c, faces) in degree.iter().enumerate() {
                let expected = if k == 0 { 0 } else { k + 1 };
                if faces.len() != expected {
                    return Err(NerveError::WrongFaceCount {
                        degree: k,
                        cell: self.ids[k][c].clone(),
                        expected,
                        found: faces.len(),
                    });
                }
                if let Some(&bad) = faces
                    .iter()
                    .find(|&&f| k == 0 || f >= self.ids[k - 1].len())
                {
                    return Err(NerveError::BrokenFaceReference {
                        degree: k,
                        cell: self.ids[k][c].clone(),
                        face: format!("#{bad}"),
                    });
                }
            }
        }
        for k in 2..self.faces.len() {
            for (c, faces) in self.faces[k].iter().enumerate() {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = self.faces[k - 1][faces[j]][i];
                        let rhs = self.faces[k - 1][faces[i]][j - 1];
                        if lhs != rhs {
                            return Err(NerveError::SimplicialIdentityViolation {
                                degree: k,
                                cell: self.ids[k][c].clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(ValidationReport {
            cell_counts: self.cell_counts(),
        })
    }

    /// Top degree. A complex with only vertices (or none) has dimension 0.
    pub fn dimension(&self) -> usize {
        self.ids.len().saturating_sub(1)
    }

    /// Number of stored degrees (`dimension + 1`, or 0 for the empty complex).
    pub fn degree_count(&self) -> usize {
        self.ids.len()
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.ids.get(k).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.ids.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.ids.iter().map(Vec::len).sum()
    }

    pub fn id(&self, k: usize, c: usize) -> &str {
        &self.ids[k][c]
    }

    pub fn ids(&self, k: usize) -> &[String] {
        self.ids.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, k: usize, id: &str) -> Option<usize> {
        self.lookup.get(k)?.get(id).copied()
    }

    /// Face indices `d_0 c, ..., d_k c`; empty for vertices.
    pub fn faces(&self, k: usize, c: usize) -> &[usize] {
        &self.faces[k][c]
    }

    /// The cells by identifier, inverse to [`from_cells`](Self::from_cells).
    pub fn to_cells(&self) -> Vec<Vec<CellSpec>> {
        (0..self.degree_count())
            .map(|k| {
                (0..self.cell_count(k))
                    .map(|c| CellSpec {
                        id: self.id(k, c).to_string(),
                        faces: self
                            .faces(k, c)
                            .iter()
                            .map(|&f| self.id(k - 1, f).to_string())
                            .collect(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Vertex `i` of a `k`-cell, obtained by deleting every other vertex.
    pub fn vertex(&self, k: usize, c: usize, i: usize) -> usize {
        assert!(i <= k, "vertex index out of range");
        let (mut cur, mut deg, mut pos) = (c, k, i);
        while deg > 0 {
            if pos < deg {
                cur = self.faces[deg][cur][deg];
            } else {
                cur = self.faces[deg][cur][0];
                pos -= 1;
            }
            deg -= 1;
        }
        cur
    }

    pub fn vertices(&self, k: usize, c: usize) -> Vec<usize> {
        (0..=k).map(|i| self.vertex(k, c, i)).collect()
    }

    /// The 1-cell spanned by vertices 0 and 1 of a `k`-cell (`k ≥ 1`): `d_2 d_3 ... d_k c`.
    pub fn leading_edge(&self, k: usize, c: usize) -> usize {
        assert!(k >= 1, "vertices have no edges");
        let mut cur = c;
        for deg in (2..=k).rev() {
            cur = self.faces[deg][cur][deg];
        }
        cur
    }
}
