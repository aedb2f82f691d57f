//! Exact building blocks: polynomial text format, Lagrange diagonalization,
//! real root isolation and ranks over Q and modulo primes.

use hyperwron::exact_algebra::{
    format_poly, format_vector, lagrange_diagonalize, matrix_rank, parse_poly, real_roots_isolated, rvec, ExactMatrix,
    RankMode, UnivariatePoly,
};

fn main() -> hyperwron::Result<()> {
    let q = parse_poly("poly m=3 deg=2\n1/1 [2,0,0]\n4/1 [1,1,0]\n1/1 [0,2,0]\n-1/2 [0,0,2]\n")?;
    print!("{}", format_poly(&q));
    let d = lagrange_diagonalize(&q)?;
    println!("signature {:?}, negative direction {:?}", d.signature(), d.negative_witness().map(|x| format_vector(&x)));

    let f = UnivariatePoly::from_ints(&[-6, 11, -6, 1]);
    let roots: Vec<String> = real_roots_isolated(&f)?.iter().map(|(a, b)| format!("({a}, {b}]")).collect();
    println!("roots of (t-1)(t-2)(t-3) isolated in {}", roots.join(" "));

    let m = ExactMatrix::from_dense(&[rvec(&[1, 2, 3]), rvec(&[2, 4, 6]), rvec(&[1, 0, 1])]);
    println!(
        "rank exact {}, modular {}",
        matrix_rank(&m, &RankMode::Exact)?.rank,
        matrix_rank(&m, &RankMode::ModularSeeded(1))?.rank
    );
    Ok(())
}
