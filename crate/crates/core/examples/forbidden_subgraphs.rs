//! Cycle, bouquet and matching detection, with the two bouquet readings
//! side by side.

use spexlab::constructions::{construct, FamilySpec};
use spexlab::forbidden::{contains_bouquet_with, matching_number, BouquetReading, ForbiddenSpec};

fn main() -> spexlab::Result<()> {
    let wheel = construct(&"wheel:n=9".parse::<FamilySpec>()?)?;
    for spec in ["C5", "C8", "B2x3", "B3x4", "M4", "M5"] {
        let f: ForbiddenSpec = spec.parse()?;
        let d = f.detect(&wheel)?;
        println!("W9 contains {spec}: {} {:?}", d.found, d.witness);
    }
    println!("matching number of W9: {}", matching_number(&wheel));

    // the two readings of the bouquet diverge on K2-hub families
    let g = construct(&"k2hp:t=2,l=4,n=12".parse::<FamilySpec>()?)?;
    for reading in [BouquetReading::HubOnly, BouquetReading::EdgeDisjoint] {
        let d = contains_bouquet_with(&g, 2, 4, reading)?;
        println!("K2 v H_P(2,2), B_(2,4) under {reading:?}: {}", d.found);
    }
    Ok(())
}
