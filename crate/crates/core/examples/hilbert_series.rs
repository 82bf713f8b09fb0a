//! Hilbert series of the cohomology of the Atiyah-Bredon complex.

use quotcrit::builders::{square, triangle_space};
use quotcrit::syzygy::{ab_hilbert_series, analyze_model};

fn main() {
    for (name, model) in [("square", square()), ("triangle space", triangle_space(6).unwrap())] {
        let a = analyze_model(&model).unwrap();
        for i in 0..=model.n() {
            let hs = ab_hilbert_series(&a.syzygy.per_face, model.n(), i, 8);
            println!("{name}, H^{i}(AB): {hs}  ->  {:?}", hs.coefficients);
        }
    }
}
