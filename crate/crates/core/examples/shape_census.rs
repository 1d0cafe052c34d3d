//! Counts distinct shapes per level, symbolically and by clustering walks.

use std::collections::HashSet;

use sfcurve::curve::all_single_base;
use sfcurve::structure::geometric::shape_signature;
use sfcurve::structure::{count_shapes, hierarchical_shape_counts, shape_group};

fn main() -> sfcurve::Result<()> {
    println!("k  curves  formula  groups  walks");
    for k in 2..=5 {
        let all = all_single_base(k);
        let groups: HashSet<_> = all.iter().map(shape_group).collect::<Result<_, _>>()?;
        let walks: HashSet<_> = all.iter().map(shape_signature).collect::<Result<_, _>>()?;
        println!(
            "{k}  {:<6}  {:<7}  {:<6}  {}",
            all.len(),
            count_shapes(k),
            groups.len(),
            walks.len()
        );
    }

    println!("\nper level-2 group at k = 5:");
    for g in hierarchical_shape_counts(5)? {
        println!(
            "  group {} h_g {} shapes {:>2}  hilbert paths {:?}  beta-omega paths {:?}",
            g.group, g.h_g, g.shapes, g.hilbert_paths, g.beta_omega_paths
        );
    }
    Ok(())
}
