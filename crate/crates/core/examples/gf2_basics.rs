//! Bit-packed linear algebra over GF(2).

use quotcrit::gf2::{quotient_dim, BitRow, EchelonBasis, Gf2Matrix};

fn main() {
    // the pair-sum map (a, b, c) -> (a + b, a + c, b + c)
    let m = Gf2Matrix::from_rows(3, &[[1u8, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap();
    println!("rank = {}", m.rank());
    let (rref, pivots) = m.row_reduce();
    println!("rref = {:?}, pivots {:?}", rref.to_u8_rows(), pivots);
    println!("kernel basis = {:?}", m.kernel_basis().to_u8_rows());

    // homology of k --[1 1 1]^T--> k^3 --m--> k^3
    let diag = Gf2Matrix::from_rows(1, &[[1u8], [1], [1]]).unwrap();
    println!("ker m / im diag has dimension {}", quotient_dim(&diag, &m).unwrap());

    // coordinates modulo a subspace
    let mut basis = EchelonBasis::new(3, 2);
    basis.insert(&BitRow::from_bits([true, true, false]), BitRow::from_bits([true, false]));
    basis.insert(&BitRow::from_bits([false, true, true]), BitRow::from_bits([false, true]));
    let v = BitRow::from_bits([true, false, true]);
    println!("(1, 0, 1) = {:?} in the basis", basis.solve(&v).map(|c| c.to_bits()));
}
