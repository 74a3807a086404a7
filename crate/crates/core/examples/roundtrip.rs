//! The three equivalent conditions at points that are and are not exposed.

use nsg::cli::parse_space_file;
use nsg::constructions::equivalence_roundtrip;
use nsg::{Backend, Space, ToleranceConfig, Vector};

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("spaces");
    for (file, x) in [
        ("stadium.json", [1.0, 1.0]),
        ("stadium.json", [0.0, 2.0]),
        ("parabolic.json", [1.0, 1.0]),
        ("linf2.json", [1.0, 1.0]),
        ("linf2.json", [1.0, 0.0]),
    ] {
        let space = Space::build(parse_space_file(&dir.join(file))?, Backend::Float)?;
        let r = equivalence_roundtrip(&space, &Vector::from(x), &tol)?;
        println!(
            "{file:15} x0 = {x:?}: exposed {}, basis {}, operator {}{}",
            r.condition_1_exposed.holds,
            r.condition_2_basis.holds,
            r.condition_3_operator.holds,
            r.obstruction.map(|o| format!(" ({o})")).unwrap_or_default()
        );
    }
    Ok(())
}
