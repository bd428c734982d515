//! Regenerates the shipped presentation fixtures from the builders.
//!
//! Run from the workspace root: `cargo run -p grasscoh --example dump_fixtures`

use std::fs;

use grasscoh::presentations::{g2n_oriented, oriented3_pattern, stiefel, w21, Presentation};

fn main() {
    let out = |name: &str, p: Presentation| {
        let path = format!("crates/core/fixtures/presentations/{name}.pres");
        fs::write(&path, p.to_text()).unwrap();
        println!("wrote {path}");
    };
    out("thm22_odd_n5", g2n_oriented(5).unwrap());
    out("thm22_mod4_n8", g2n_oriented(8).unwrap());
    out("thm22_mod2_n6", g2n_oriented(6).unwrap());
    out("thm25_even_n8", w21(8).unwrap());
    out("thm25_odd_n7", w21(7).unwrap());
    out("thmb_n8", oriented3_pattern(8).unwrap());
    out("thmb_n13", oriented3_pattern(13).unwrap());
    out("v3n_k3_n9", stiefel(3, 9).unwrap());
}
