//! Exact vertex enumeration and face counts over Q(sqrt 3).

use quotcrit::builders::{mgon_halfspaces, Polytope};

fn main() {
    let hs = mgon_halfspaces(6).unwrap();
    let poly = Polytope::new(hs).unwrap();
    println!("{} vertices", poly.vertices.len());
    for v in poly.vertices.iter().take(4) {
        let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("  ({})", coords.join(", "));
    }
    for (d, faces) in &poly.faces {
        println!("{} faces of dimension {d}", faces.len());
    }
    println!("{} boundary tetrahedra in the pulling triangulation", poly.boundary_simplices().len());
    // coning the boundary from the interior point 0 adds one vertex
    let model = quotcrit::builders::triangle_space(6).unwrap();
    println!("simplex counts of the cone: {:?}", (0..model.complex().num_dims()).map(|k| model.complex().count(k)).collect::<Vec<_>>());
}
