//! Builds the configuration space of triangles with sides at most one and
//! runs the quotient criterion on it.

use std::time::Instant;

use quotcrit::builders::triangle_space;
use quotcrit::scomplex::{cohomology_dims, pair_cohomology, Subcomplex};
use quotcrit::syzygy::analyze_model;

fn main() {
    let start = Instant::now();
    let model = triangle_space(6).expect("m = 6 is supported");
    let complex = model.complex();
    println!(
        "built in {:?}: {} vertices, simplex counts {:?}",
        start.elapsed(),
        complex.count(0),
        (0..complex.num_dims()).map(|k| complex.count(k)).collect::<Vec<_>>()
    );

    let boundary = model.topological_boundary();
    let empty = Subcomplex::empty(complex);
    let full = Subcomplex::full(complex);
    println!("H*(dM)     = {:?}", cohomology_dims(&pair_cohomology(complex, &boundary, &empty)));
    println!("H*(M, dM)  = {:?}", cohomology_dims(&pair_cohomology(complex, &full, &boundary)));

    let analysis = analyze_model(&model).expect("the model is nice");
    for (face, dims) in analysis.lattice.faces.iter().zip(&analysis.face_dims) {
        println!("{:<12} rank {}  H*(Q, dQ) = {:?}", face.name, face.rank, dims);
    }
    for r in &analysis.syzygy.per_face {
        if r.obstruction > 0 {
            println!("{} has h = {:?}, m = {}", r.name, r.h, r.obstruction);
        }
    }
    println!("{}", analysis.syzygy.order.verdict());
    println!("total {:?}", start.elapsed());
}
