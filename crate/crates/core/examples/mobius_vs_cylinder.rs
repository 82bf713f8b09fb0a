//! A reflection on the torus versus the Klein bottle: the orbit spaces are a
//! cylinder and a Moebius strip, and only the first action is formal.

use quotcrit::builders::{cylinder, mobius};
use quotcrit::syzygy::{analyze_model, formality};

fn main() {
    for (name, model) in [("cylinder", cylinder(4).unwrap()), ("mobius", mobius(5).unwrap())] {
        let a = analyze_model(&model).unwrap();
        let m = a.lattice.by_name("M").unwrap().id;
        let page = &a.pages[m];
        for q in 0..page.rows {
            println!("{name}: H^{q}(dM) -> H^{}(M, dM) = {:?}", q + 1, page.d1[0][q].to_u8_rows());
        }
        println!("{name}: {} (formal: {})", a.syzygy.order.verdict(), formality(&a.syzygy));
    }
}
