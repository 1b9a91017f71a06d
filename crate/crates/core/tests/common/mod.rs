#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use twisted_deligne::nerve::{twist_classes_mod2, DeltaSet, Sign, TwistCocycle};

/// A random simplicial complex on at most six vertices, facets of dimension 1 to 3.
pub fn random_complex<R: Rng>(rng: &mut R) -> DeltaSet {
    let n = rng.gen_range(3..=6);
    let facet_count = rng.gen_range(1..=6);
    let facets: Vec<Vec<usize>> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(2..=4.min(n));
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(rng);
            verts.truncate(size);
            verts
        })
        .collect();
    DeltaSet::from_simplices(&facets).expect("closure of random facets is a valid complex")
}

/// A random twist: a random class, moved by a random gauge.
pub fn random_twist<R: Rng>(rng: &mut R, k: &DeltaSet) -> TwistCocycle {
    let classes = twist_classes_mod2(k);
    let class = classes
        .choose(rng)
        .expect("the trivial class always exists")
        .clone();
    class.gauge_transform(k, &random_gauge(rng, k))
}

pub fn random_gauge<R: Rng>(rng: &mut R, k: &DeltaSet) -> Vec<Sign> {
    (0..k.cell_count(0))
        .map(|_| {
            if rng.gen::<bool>() {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect()
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}
