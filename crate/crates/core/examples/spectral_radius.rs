//! Spectral radii with certified residuals, strict comparison, and the
//! eigenvector box check on a hub family.

use spexlab::constructions::{construct, FamilySpec, PathPartition};
use spexlab::spectral::{check_eigenvector_box, compare_spectral_radii, spectral_radius, HubStyle};
use spexlab::Graph;

fn main() -> spexlab::Result<()> {
    for n in [10usize, 100, 1000] {
        let w = construct(&FamilySpec::Wheel { n })?;
        let e = spectral_radius(&w, 1e-10)?;
        println!(
            "wheel n={n}: rho={:.12} 1+sqrt(n)={:.12} residual={:.1e} iterations={}",
            e.rho,
            1.0 + (n as f64).sqrt(),
            e.residual,
            e.iterations
        );
    }

    // K1 v H_OP(7,3) against the forest with its longest path split once
    let spec: FamilySpec = "k1hop:t=2,l=5,n=300".parse()?;
    let a = construct(&spec)?;
    let h = spec.partition()?.expect("hub family");
    let mut parts = h.parts().to_vec();
    parts[0] -= 1;
    parts.push(1);
    let sibling = PathPartition::new(parts)?;
    let b = Graph::join(&Graph::empty(1)?, &sibling.to_graph()?)?;
    let c = compare_spectral_radii(&a, &b, 1e-10)?;
    println!(
        "K1 v H_OP(7,3) vs the split forest ({} vs {} paths): {:?} (gap {:.3e}, residuals {:.1e})",
        h.parts().len(),
        sibling.parts().len(),
        c.verdict,
        c.gap,
        c.residual_sum
    );

    let r = check_eigenvector_box(&a, HubStyle::Hub1)?;
    println!("hub-1 box at n=300: worst excursion {:.3e}, pass={}", r.lhs, r.pass);
    Ok(())
}
