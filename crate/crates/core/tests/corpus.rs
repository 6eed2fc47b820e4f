//! Every JSON input in `tests/data` survives a parse / serialize / parse round trip.

use std::path::PathBuf;

use eqtrace::algebra::{AlgebraSpec, MorphismSpec};
use eqtrace::bg::ActionSpec;
use eqtrace::groups::{GModuleSpec, GroupSpec};
use eqtrace::rootdata::RootDatumSpec;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn read(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn round_trip<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(name: &str) -> T {
    let a: T = serde_json::from_str(&read(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    let text = serde_json::to_string(&a).unwrap();
    let b: T = serde_json::from_str(&text).unwrap();
    assert_eq!(a, b, "{name}");
    a
}

#[test]
fn corpus_round_trips() {
    for name in ["dual_numbers.json", "dual_numbers_reordered.json", "truncated_cubic.json", "a3_path.json"] {
        round_trip::<AlgebraSpec>(name).build().unwrap();
    }
    for name in ["z2.json", "s3.json", "s4.json"] {
        round_trip::<GroupSpec>(name).build().unwrap();
    }
    round_trip::<MorphismSpec>("double_x.json");
    round_trip::<ActionSpec>("negate_x.json");
    round_trip::<GModuleSpec>("sign_module.json");
    round_trip::<GModuleSpec>("trivial_z_s3.json");
    round_trip::<RootDatumSpec>("datum_gl2.json").build().unwrap();
}

#[test]
fn layout_does_not_matter() {
    let a: AlgebraSpec = serde_json::from_str(&read("dual_numbers.json")).unwrap();
    let b: AlgebraSpec = serde_json::from_str(&read("dual_numbers_reordered.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn malformed_entry_is_rejected() {
    assert!(serde_json::from_str::<AlgebraSpec>(&read("bad_vertex.json")).is_err());
}
