//! Drive the command-line interface in-process and print its JSON reports.
//!
//! ```bash
//! cargo run --example command_line
//! ```

use treelie::cli::run_with;
use treelie::TreeDiagram;

fn main() {
    let dir = std::env::temp_dir().join("treelie-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a3.json");
    let tree = TreeDiagram::chain(&[1, 2]).unwrap();
    std::fs::write(&path, serde_json::to_string(&tree.to_spec()).unwrap()).unwrap();
    let p = path.to_str().unwrap();

    let runs: [&[&str]; 4] = [
        &["ideals", p, "--direction", "up", "--count-only"],
        &["bch", "--k", "3"],
        &["solve-first", p, "--f", "x3", "--t", "1", "--x", "0,0,0", "--emit-eta"],
        &["ideals", p, "--direction", "sideways"],
    ];
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("treelie").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ treelie {}  (exit {code})", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
