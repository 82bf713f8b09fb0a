#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use quotcrit::bcomplex::{e1_total, FaceReport};
use quotcrit::builders::{cylinder, interval, mobius, polygon, square, triangle, triangle_space};
use quotcrit::corners::{product, subdivide, CornerModel};
use quotcrit::gf2::{quotient_dim, Gf2Matrix};
use quotcrit::scomplex::{
    cohomology_dims, connecting_matrix, pair_cohomology, restriction_matrix, SimplicialComplex, Subcomplex,
};
use quotcrit::syzygy::{analyze_model, restriction_monotonicity_check, ModelAnalysis};

/// Small generators of the random corpus.
#[derive(Clone, Debug)]
pub enum Spec {
    Interval,
    Triangle,
    Polygon(usize),
    Cylinder(usize),
    Mobius(usize),
    Product(Box<Spec>, Box<Spec>),
    Subdivided(Box<Spec>),
}

impl Spec {
    pub fn build(&self) -> CornerModel {
        match self {
            Spec::Interval => interval(),
            Spec::Triangle => triangle(),
            Spec::Polygon(k) => polygon(*k).unwrap(),
            Spec::Cylinder(m) => cylinder(*m).unwrap(),
            Spec::Mobius(m) => mobius(*m).unwrap(),
            Spec::Product(a, b) => product(&a.build(), &b.build()),
            Spec::Subdivided(a) => subdivide(&a.build()),
        }
    }
}

fn base() -> impl Strategy<Value = Spec> {
    prop_oneof![
        Just(Spec::Interval),
        Just(Spec::Triangle),
        (3usize..8).prop_map(Spec::Polygon),
        (3usize..8).prop_map(Spec::Cylinder),
        (5usize..9).prop_map(Spec::Mobius),
    ]
}

pub const MAX_SIMPLICES: usize = 300;

/// Polygons, strips, their products and subdivisions, at most 300 simplices.
pub fn corpus() -> impl Strategy<Value = (Spec, CornerModel)> {
    let small = prop_oneof![
        Just(Spec::Interval),
        Just(Spec::Triangle),
        (3usize..5).prop_map(Spec::Polygon),
        Just(Spec::Cylinder(3)),
        Just(Spec::Mobius(5)),
    ];
    prop_oneof![
        3 => base(),
        2 => (small.clone(), small.clone()).prop_map(|(a, b)| Spec::Product(Box::new(a), Box::new(b))),
        1 => small.prop_map(|a| Spec::Subdivided(Box::new(a))),
    ]
    .prop_map(|s| {
        let m = s.build();
        (s, m)
    })
    .prop_filter("too many simplices", |(_, m)| m.complex().total_count() <= MAX_SIMPLICES)
}

pub fn shipped_models() -> Vec<(String, CornerModel)> {
    let mut out = vec![
        ("interval".to_string(), interval()),
        ("triangle".to_string(), triangle()),
        ("square".to_string(), square()),
    ];
    for k in 5..=7 {
        out.push((format!("polygon k={k}"), polygon(k).unwrap()));
    }
    for m in 3..=8 {
        out.push((format!("cylinder m={m}"), cylinder(m).unwrap()));
    }
    for m in 5..=9 {
        out.push((format!("mobius m={m}"), mobius(m).unwrap()));
    }
    out.push(("triangle-space m=6".to_string(), triangle_space(6).unwrap()));
    out
}

/// Rank by enumerating the row span: `|span| = 2^rank`.
pub fn rank_oracle(m: &Gf2Matrix) -> usize {
    let rows = m.to_u8_rows();
    let mut span = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut v = vec![0u8; m.cols()];
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in v.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

/// Nullity by counting solutions of `Mx = 0`.
pub fn nullity_oracle(m: &Gf2Matrix) -> usize {
    let rows = m.to_u8_rows();
    let count = (0u32..(1 << m.cols()))
        .filter(|x| rows.iter().all(|r| r.iter().enumerate().filter(|(j, &b)| b == 1 && x >> j & 1 == 1).count() % 2 == 0))
        .count();
    count.trailing_zeros() as usize
}

pub fn matrix_strategy(max: usize) -> impl Strategy<Value = Gf2Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
            .prop_map(move |rows| Gf2Matrix::from_rows(c, &rows).unwrap())
    })
}

pub fn analyze(model: &CornerModel) -> ModelAnalysis {
    analyze_model(model).expect("corpus models are nice")
}

/// Face reports without ids, sorted; component suffixes are dropped so that
/// a relabelling of components compares equal.
pub fn report_key(reports: &[FaceReport]) -> Vec<(usize, String, Vec<Vec<usize>>, usize)> {
    let mut out: Vec<_> = reports
        .iter()
        .map(|r| {
            let base = r.name.split('#').next().unwrap_or("").to_string();
            (r.rank, base, r.h.clone(), r.obstruction)
        })
        .collect();
    out.sort();
    out
}

pub fn check_d1_structure(a: &ModelAnalysis) -> Result<(), String> {
    let covering = a.lattice.covering_pairs();
    for page in &a.pages {
        if !page.d1_squares_to_zero() {
            return Err(format!("d1 ∘ d1 ≠ 0 on {}", page.name));
        }
        if !page.blocks_vanish_off(|x, y| covering.contains(&(x, y))) {
            return Err(format!("nonzero block off covering pairs on {}", page.name));
        }
    }
    Ok(())
}

pub fn check_euler(a: &ModelAnalysis) -> Result<(), String> {
    for (page, face) in a.pages.iter().zip(&a.lattice.faces) {
        let chi = face.cells.euler_characteristic();
        if page.euler_characteristic() != chi {
            return Err(format!("{}: E1 Euler {} vs χ {}", face.name, page.euler_characteristic(), chi));
        }
    }
    Ok(())
}

pub fn check_subquotients(model: &CornerModel, a: &ModelAnalysis) -> Result<(), String> {
    let complex = model.complex();
    let empty = Subcomplex::empty(complex);
    for ((face, page), r) in a.lattice.faces.iter().zip(&a.pages).zip(&a.syzygy.per_face) {
        let h = cohomology_dims(&pair_cohomology(complex, &face.cells, &empty));
        for k in 0..=model.m() + 1 {
            let abs = h.get(k).copied().unwrap_or(0);
            let (mid, top) = (r.total(k), e1_total(page, k));
            if !(abs <= mid && mid <= top) {
                return Err(format!("{} degree {k}: {abs} <= {mid} <= {top} fails", face.name));
            }
        }
    }
    Ok(())
}

pub fn check_restrictions(model: &CornerModel, a: &ModelAnalysis) -> Result<(), String> {
    let rows = restriction_monotonicity_check(model, a).map_err(|e| e.to_string())?;
    match rows.iter().find(|r| r.violation) {
        Some(r) => Err(format!("restriction to {} has order {}", r.name, r.order)),
        None => Ok(()),
    }
}

pub fn check_subdivision(model: &CornerModel, a: &ModelAnalysis) -> Result<(), String> {
    let b = analyze(&subdivide(model));
    if report_key(&a.syzygy.per_face) != report_key(&b.syzygy.per_face) {
        return Err("reports change under subdivision".into());
    }
    Ok(())
}

/// A random complex with a random triple `C ⊆ B ⊆ A = K`.
#[derive(Clone, Debug)]
pub struct Triple {
    pub complex: SimplicialComplex,
    pub b: Subcomplex,
    pub c: Subcomplex,
}

pub fn triple_strategy() -> impl Strategy<Value = Triple> {
    let simplex = proptest::collection::btree_set(0u32..7, 1..=4).prop_map(|s| s.into_iter().collect::<Vec<_>>());
    (proptest::collection::vec(simplex, 1..8), any::<u64>()).prop_map(|(tops, seed)| {
        use rand::{Rng, SeedableRng};
        let complex = SimplicialComplex::build(&tops).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cells: Vec<_> = complex.cells().collect();
        let pick = |rng: &mut rand_chacha::ChaCha8Rng, p: f64| {
            Subcomplex::closure_of(&complex, cells.iter().copied().filter(|_| rng.gen_bool(p)).collect::<Vec<_>>())
        };
        let c = pick(&mut rng, 0.15);
        let b = c.union(&pick(&mut rng, 0.3));
        Triple { complex, b, c }
    })
}

/// Exactness of `… → H^k(K,B) → H^k(K,C) → H^k(B,C) → H^{k+1}(K,B) → …`.
pub fn check_les(t: &Triple) -> Result<(), String> {
    let k_full = Subcomplex::full(&t.complex);
    let top = t.complex.num_dims();
    let mut seq: Vec<Gf2Matrix> = Vec::new();
    for k in 0..=top {
        let j = restriction_matrix(&t.complex, &t.b, &k_full, &t.c, k).map_err(|e| e.to_string())?;
        let i = restriction_matrix(&t.complex, &t.c, &t.b, &t.c, k).map_err(|e| e.to_string())?;
        let d = connecting_matrix(&t.complex, &t.b, &t.c, k).map_err(|e| e.to_string())?;
        seq.extend([j, i, d]);
    }
    // the first term has nothing coming in
    let mut incoming = Gf2Matrix::zeros(seq[0].cols(), 0);
    for (pos, out) in seq.iter().enumerate() {
        let h = quotient_dim(&incoming, out).map_err(|e| format!("position {pos}: {e}"))?;
        if h != 0 {
            return Err(format!("not exact at position {pos}"));
        }
        incoming = out.clone();
    }
    Ok(())
}

pub fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}
