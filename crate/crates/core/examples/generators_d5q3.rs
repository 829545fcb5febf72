//! The generator sets Omega and Omega-bar for (q, d) = (3, 5), with their
//! subspace colors and the PSL membership check.

use isocayley::forge::{build_omega, expected_group_order, psl_check, symmetrize_report, GenParams, PslStatus};

fn main() -> isocayley::Result<()> {
    for s in [1, 2] {
        let params = GenParams::new(3, 5, s)?;
        let omega = build_omega(&params)?;
        let in_psl = omega
            .generators()
            .iter()
            .filter(|g| psl_check(params.field(), &g.proj) == PslStatus::InPsl)
            .count();
        println!(
            "s={s}: gamma={} |Omega|={} (in PSL: {in_psl}), colors {:?}",
            params.gamma(),
            omega.len(),
            &omega.color_counts()[1..]
        );
        let (bar, coincidences) = symmetrize_report(&omega)?;
        println!(
            "  |Omega-bar|={} inverse-closed={} coincidences={}",
            bar.len(),
            bar.is_inverse_closed(),
            coincidences.len()
        );
        println!("  hash {}", bar.hash());
        if s == 1 {
            println!("  expected group order {}", expected_group_order(&params));
            println!("  first generator:");
            for row in omega.get(0).mat.rows() {
                println!("    {row:?}");
            }
        }
    }
    Ok(())
}
