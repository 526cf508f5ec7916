//! Drives the command-line front end in-process on the bundled data.

use std::path::Path;

fn run(args: &[&str]) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = exotic::cli::run(
        std::iter::once("exotic").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    println!("$ exotic {} (exit {code})", args.join(" "));
    print!(
        "{}{}",
        String::from_utf8_lossy(&out),
        String::from_utf8_lossy(&err)
    );
}

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let file = |name: &str| data.join(name).to_string_lossy().into_owned();
    run(&["graph", "ramanujam", "--file", &file("ramanujam.json")]);
    run(&[
        "lnd",
        "flow",
        "--ring",
        "C3",
        "--images",
        &file("nagata.json"),
        "--t",
        "1",
    ]);
    run(&["group", "triangle", "--k", "2", "--l", "3", "--s", "5"]);
    run(&["group", "abel", "--file", &file("braid3.json")]);
    run(&[
        "smith",
        "sequences",
        "--complex",
        &file("disc3.json"),
        "--action",
        &file("rotation3.json"),
    ]);
    run(&["family", "--sweep", &file("sweep.json")]);
}
