//! Dimension counts: where do nonnegative forms outnumber hyperwrons and
//! degree-restricted hyperzouts?

use hyperwron::dimension_gate::{
    bezoutian_gate, binom_ratio_lemma_check, closed_form_g, format_rows, format_table, g_binomial, gate_grid,
    non_hyperwron_region, restricted_hyperzout_bound, unsettled_case, wronskian_gate, GateKind, TableFormat,
};
use hyperwron::exact_algebra::{int, Rational};

fn main() -> hyperwron::Result<()> {
    let ms: Vec<u64> = (3..=8).collect();
    let ys: Vec<u64> = (2..=5).collect();
    print!("{}", format_table(&gate_grid(GateKind::Wronskian, &ms, &ys), TableFormat::Aligned));
    print!("{}", format_rows(&wronskian_gate(4, 4)));
    for (m, y) in [(4, 3), (5, 2), (6, 2)] {
        println!("({m},{y}) region {} unsettled {}", non_hyperwron_region(m, y), unsettled_case(m, y));
    }

    // the closed forms agree with the binomial expression
    for y in 2..=8u64 {
        for k in (1..=y / 2).filter(|k| y % k == 0) {
            let closed = closed_form_g(4, &int(k as i64), &int(y as i64))?;
            assert_eq!(closed, Rational::from_integer(g_binomial(4, k, y)));
        }
    }
    println!("g(5, y/2, y) at y = 2: {}", closed_form_g(5, &int(1), &int(2))?);

    let bound = restricted_hyperzout_bound(2);
    let first = (3..=bound + 1).find(|&m| bezoutian_gate(m, 2).verdict());
    println!("hyperzout gate, 2y = 4: first true at m = {first:?}, guaranteed past {bound}");
    println!("binomial ratio check (2,5,3,7): {}", binom_ratio_lemma_check(2, 5, 3, 7)?);
    Ok(())
}
