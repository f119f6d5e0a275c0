//! The text formats: canonical serialization, parsing, and map documents.
//!
//! Run with: cargo run -p hdts --example text_format

use hdts::builders::{cube, generator, GeneratorName};
use hdts::textio::{parse_map, parse_tsys, serialize_map, serialize_tsys};
use hdts::Label;

fn main() {
    let x = Label::new("x");
    let y = Label::new("y");
    let square = cube(&[x.clone(), y.clone()]);
    let doc = serialize_tsys(&square);
    println!("canonical document for the square:\n{doc}");

    let (back, warnings) = parse_tsys(&doc).unwrap();
    println!("round-trip is the identity: {}", back == square);
    println!("warnings: {warnings:?}");

    // Duplicates parse with a warning under set semantics.
    let noisy = "hdts 1\nstate a\nstate b\naction u x\ntrans a u b\ntrans a u b # again\n";
    let (ts, warnings) = parse_tsys(noisy).unwrap();
    println!(
        "\nduplicate line collapses: {} transition(s), warning: {}",
        ts.transitions().len(),
        warnings[0]
    );

    // Maps serialize with the paths of their endpoint documents and parse
    // back through a resolver.
    let c0 = generator(GeneratorName::C0, std::slice::from_ref(&x)).unwrap();
    let map_doc = serialize_map(&c0, "edge.hdts", "double.hdts");
    println!("\nmap document:\n{map_doc}");
    let dom = c0.domain().clone();
    let cod = c0.codomain().clone();
    let (parsed, _) = parse_map(&map_doc, |path| {
        Ok(if path == "edge.hdts" {
            dom.clone()
        } else {
            cod.clone()
        })
    })
    .unwrap();
    println!("map round-trip is the identity: {}", parsed == c0);
}
