//! Relative cohomology and connecting maps of simplicial pairs.

use quotcrit::scomplex::{cohomology_dims, connecting_matrix, pair_cohomology, SimplicialComplex, Subcomplex};

fn main() {
    // a triangulated annulus and its two boundary circles
    let m = 3u32;
    let mut tris = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        tris.push(vec![i, j, m + i]);
        tris.push(vec![j, m + i, m + j]);
    }
    let annulus = SimplicialComplex::build(&tris).unwrap();
    let inner: Vec<Vec<u32>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    let outer: Vec<Vec<u32>> = (0..m).map(|i| vec![m + i, m + (i + 1) % m]).collect();
    let boundary = Subcomplex::generated(&annulus, &[inner, outer].concat()).unwrap();
    let empty = Subcomplex::empty(&annulus);
    let full = Subcomplex::full(&annulus);

    println!("H*(A)       = {:?}", cohomology_dims(&pair_cohomology(&annulus, &full, &empty)));
    println!("H*(dA)      = {:?}", cohomology_dims(&pair_cohomology(&annulus, &boundary, &empty)));
    println!("H*(A, dA)   = {:?}", cohomology_dims(&pair_cohomology(&annulus, &full, &boundary)));
    for k in 0..2 {
        let d = connecting_matrix(&annulus, &boundary, &empty, k).unwrap();
        println!("delta: H^{k}(dA) -> H^{}(A, dA) = {:?}", k + 1, d.to_u8_rows());
    }
}
