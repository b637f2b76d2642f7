//! Loading a system from the JSON file format and driving the command
//! line interface in-process.

use noether::cli::{run, SystemFile};
use noether::engine::triviality_classify;

const BURGERS: &str = include_str!("systems/burgers.json");

fn main() {
    let file = SystemFile::from_json(BURGERS).unwrap();
    let entry = file.load(None).unwrap();
    let sys = &entry.system;
    let law = entry.law("mass").unwrap();
    println!("{}: mass law valid {}", entry.name, law.is_valid(sys));
    println!(
        "classification {:?}",
        triviality_classify(law, sys).unwrap().classification
    );

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/systems/burgers.json");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        ["noether", "--system", path, "cl-from-symmetry", "galilean"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
}
