//! Δ-sets for the model spaces: contractible patches, circle nerves, the three-patch
//! annulus cover, the 2-sphere and real projective 2- and 3-space.

use std::collections::HashMap;

use super::{CellSpec, DeltaSet};

/// A single vertex.
pub fn point() -> DeltaSet {
    DeltaSet::from_cells(vec![vec![CellSpec::vertex("0")]]).expect("point is valid")
}

/// Nerve of a cover of the circle by `m ≥ 3` arcs, consecutive arcs overlapping once and
/// no triple overlaps. Vertices `0..m`; edges `i-(i+1)` and the closing edge `0-(m-1)`.
///
/// # Panics
/// If `m < 3`.
pub fn circle_nerve(m: usize) -> DeltaSet {
    assert!(m >= 3, "a circle nerve needs at least three patches");
    let mut edges: Vec<Vec<usize>> = (0..m - 1).map(|i| vec![i, i + 1]).collect();
    edges.push(vec![0, m - 1]);
    DeltaSet::from_simplices(&edges).expect("circle nerve is valid")
}

/// The three-set cover `U, V, W` of the punctured plane: three pairwise overlaps, no
/// triple overlap. Patches are ordered `U < V < W`.
pub fn annulus3() -> DeltaSet {
    DeltaSet::from_cells(vec![
        vec![
            CellSpec::vertex("U"),
            CellSpec::vertex("V"),
            CellSpec::vertex("W"),
        ],
        vec![
            CellSpec::new("UV", &["V", "U"]),
            CellSpec::new("UW", &["W", "U"]),
            CellSpec::new("VW", &["W", "V"]),
        ],
    ])
    .expect("annulus cover is valid")
}

/// Boundary of the tetrahedron.
pub fn sphere2() -> DeltaSet {
    DeltaSet::from_simplices(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .expect("tetrahedron boundary is valid")
}

/// The six-vertex projective plane, derived as the antipodal quotient of the icosahedron.
pub fn rp2() -> DeltaSet {
    DeltaSet::from_simplices(&rp2_facets()).expect("antipodal quotient of the icosahedron is valid")
}

/// Real projective 3-space as the antipodal quotient of the boundary of the 4-dimensional
/// cross-polytope. See [`projective_space`].
pub fn rp3() -> DeltaSet {
    projective_space(3)
}

/// Triangles of the antipodal quotient of the icosahedron, on vertices `0..6`.
pub fn rp2_facets() -> Vec<Vec<usize>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts: Vec<[f64; 3]> = Vec::with_capacity(12);
    for &a in &[1.0, -1.0] {
        for &b in &[phi, -phi] {
            pts.push([0.0, a, b]);
            pts.push([a, b, 0.0]);
            pts.push([b, 0.0, a]);
        }
    }
    let dist2 = |p: &[f64; 3], q: &[f64; 3]| (0..3).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>();
    // Edge length 2: squared distance 4; the next distance class is about 7.24.
    let adjacent = |i: usize, j: usize| (dist2(&pts[i], &pts[j]) - 4.0).abs() < 1e-9;
    let antipode: Vec<usize> = (0..12)
        .map(|i| {
            let neg = [-pts[i][0], -pts[i][1], -pts[i][2]];
            (0..12)
                .find(|&j| dist2(&pts[j], &neg) < 1e-9)
                .expect("icosahedron is centrally symmetric")
        })
        .collect();

    let mut class: HashMap<usize, usize> = HashMap::new();
    let mut next = 0;
    for i in 0..12 {
        if !class.contains_key(&i) {
            class.insert(i, next);
            class.insert(antipode[i], next);
            next += 1;
        }
    }

    let mut facets: Vec<Vec<usize>> = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    let mut f = vec![class[&i], class[&j], class[&k]];
                    f.sort_unstable();
                    assert!(
                        f[0] != f[1] && f[1] != f[2],
                        "quotient must stay simplicial"
                    );
                    if !facets.contains(&f) {
                        facets.push(f);
                    }
                }
            }
        }
    }
    facets.sort();
    assert_eq!(
        facets.len(),
        10,
        "icosahedron has 20 faces in 10 antipodal pairs"
    );
    facets
}

/// Coordinate indices with a sign per index (`true` = minus).
type SignedSet = (Vec<usize>, Vec<bool>);

/// `RP^n` as a Δ-set: the boundary of the `(n+1)`-dimensional cross-polytope has one
/// `k`-simplex `{s_i e_i : i ∈ I}` per index set `|I| = k+1` and sign vector `s`. Vertices
/// are ordered by coordinate index, which the antipodal map preserves, so the quotient by
/// `s ↦ -s` is again a Δ-set. Each class is stored with its first sign positive.
///
/// Cell counts are `C(n+1, k+1) · 2^k`; cell ids list the indices with their signs,
/// e.g. `0+2-3+`.
pub fn projective_space(n: usize) -> DeltaSet {
    let coords = n + 1;
    let mut ids: Vec<Vec<String>> = Vec::with_capacity(coords);
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(coords);
    let mut index: Vec<HashMap<SignedSet, usize>> = Vec::with_capacity(coords);
    for k in 0..=n {
        let mut cells: Vec<SignedSet> = Vec::new();
        for set in subsets_of_size(coords, k + 1) {
            // sign vectors with the first entry positive; `true` = minus
            for mask in 0u64..(1u64 << k) {
                let mut signs = vec![false];
                signs.extend((0..k).map(|b| mask >> b & 1 == 1));
                cells.push((set.clone(), signs));
            }
        }
        let mut map = HashMap::with_capacity(cells.len());
        let mut degree_ids = Vec::with_capacity(cells.len());
        let mut degree_faces = Vec::with_capacity(cells.len());
        for (c, (set, signs)) in cells.iter().enumerate() {
            degree_ids.push(
                set.iter()
                    .zip(signs)
                    .map(|(i, &m)| format!("{i}{}", if m { '-' } else { '+' }))
                    .collect::<String>(),
            );
            if k > 0 {
                degree_faces.push(
                    (0..=k)
                        .map(|j| {
                            let mut fs = set.clone();
                            let mut fsg = signs.clone();
                            fs.remove(j);
                            fsg.remove(j);
                            if fsg[0] {
                                fsg.iter_mut().for_each(|b| *b = !*b);
                            }
                            index[k - 1][&(fs, fsg)]
                        })
                        .collect(),
                );
            } else {
                degree_faces.push(Vec::new());
            }
            map.insert((set.clone(), signs.clone()), c);
        }
        ids.push(degree_ids);
        faces.push(degree_faces);
        index.push(map);
    }
    DeltaSet::from_indices(ids, faces).expect("cross-polytope quotient is a valid Δ-set")
}

/// All `size`-element subsets of `0..n`, each sorted, in lexicographic order.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u64..(1u64 << n))
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Names accepted by [`by_name`].
pub const BUILDER_NAMES: &[&str] = &["point", "circle:M", "annulus3", "rp2", "rp3", "sphere2"];

/// Looks up a builder by its command-line name (`circle:M` takes the patch count).
pub fn by_name(name: &str) -> Option<DeltaSet> {
    match name {
        "point" => Some(point()),
        "annulus3" => Some(annulus3()),
        "rp2" => Some(rp2()),
        "rp3" => Some(rp3()),
        "sphere2" => Some(sphere2()),
        _ => {
            let m: usize = name.strip_prefix("circle:")?.parse().ok()?;
            (m >= 3).then(|| circle_nerve(m))
        }
    }
}
