//! Faces of a manifold with corners, restriction to a face, and products.

use quotcrit::builders::{interval, triangle};
use quotcrit::corners::{check_nice, face_lattice, product, restrict, validate};

fn main() {
    let disc = triangle();
    assert!(validate(&disc).is_empty());
    let lattice = face_lattice(&disc).unwrap();
    check_nice(&lattice).unwrap();
    for f in &lattice.faces {
        let below: Vec<&str> = f.contains.iter().map(|&q| lattice.faces[q].name.as_str()).collect();
        println!("{:<6} rank {} codim {} cells {:?} contains {:?}", f.name, f.rank, f.codim, f.cells.counts(), below);
    }

    let edge = lattice.by_name("F1").unwrap().id;
    let sub = restrict(&disc, &lattice, edge).unwrap();
    println!("F1 as a model: n = {}, facets {:?}", sub.n(), sub.facets().iter().map(|f| &f.0).collect::<Vec<_>>());

    let prism = product(&disc, &interval());
    let lat = face_lattice(&prism).unwrap();
    check_nice(&lat).unwrap();
    println!("triangle x interval: n = {}, {} faces", prism.n(), lat.faces.len());
}
