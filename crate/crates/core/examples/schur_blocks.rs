//! Block inversion through the Schur complement.

use ncrat::matrix::{assemble_blocks, relative_deviation, schur_block_inverse, RectMatrix};
use ncrat::{Complex64, ComplexMatrix, DEFAULT_TOL};

fn main() {
    let entry = |i: usize, j: usize, s: f64| Complex64::new(((i * 7 + j * 3) as f64 * s).sin(), ((i + 2 * j) as f64 * s).cos());
    let a = ComplexMatrix::from_fn(3, |i, j| entry(i, j, 0.7) + if i == j { Complex64::new(4.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    let b = RectMatrix::from_fn(3, 2, |i, j| entry(i, j, 1.3));
    let c = RectMatrix::from_fn(2, 3, |i, j| entry(i, j, 0.4));
    let d = ComplexMatrix::from_fn(2, |i, j| entry(i, j, 2.1) + if i == j { Complex64::new(3.0, 0.0) } else { Complex64::new(0.0, 0.0) });

    let m = assemble_blocks(&a, &b, &c, &d).unwrap();
    let inv = schur_block_inverse(&a, &b, &c, &d, DEFAULT_TOL).unwrap();
    let direct = m.invert(DEFAULT_TOL).unwrap();
    let residual = relative_deviation(&inv.mul(&m).unwrap(), &ComplexMatrix::identity(5)).unwrap();
    println!("||inv * M - I|| (relative)      = {residual:.3e}");
    println!("block vs direct inverse         = {:.3e}", relative_deviation(&inv, &direct.inverse).unwrap());
    println!("reciprocal condition of M       = {:.3e}", direct.reciprocal_condition);

    // A singular complement is reported as such.
    let id = ComplexMatrix::identity(3);
    let eye = RectMatrix::from_fn(3, 3, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    match schur_block_inverse(&id, &eye, &eye, &ComplexMatrix::identity(3), DEFAULT_TOL) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("[[I, I], [I, I]] through the complement: {e}"),
    }
}
