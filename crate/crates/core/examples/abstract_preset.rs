//! Running the criterion on hand-entered face data instead of a triangulation.

use quotcrit::bcomplex::from_abstract;
use quotcrit::builders::triangle_space_abstract;
use quotcrit::syzygy::{abstract_restriction_check, syzygy_order};

fn main() {
    let data = triangle_space_abstract();
    println!("{}", serde_json::to_string_pretty(&data).unwrap());
    let analysis = from_abstract(&data).unwrap();
    for r in &analysis.reports {
        println!("{:<12} rank {}  h = {:?}  m = {}", r.name, r.rank, r.h, r.obstruction);
    }
    let m = analysis.lattice.names.iter().position(|n| n == "M").unwrap();
    println!("d1 on H^1(Q) -> H^2(F): {:?}", analysis.pages[m].d1[1][0].to_u8_rows());
    println!("{}", syzygy_order(&analysis.reports, data.n).order.verdict());
    for row in abstract_restriction_check(&data).unwrap() {
        println!("restricted to {}: order {}", row.name, row.order);
    }
}
