//! Expands encodings into base sequences and shows the per-base code sequences.
//!
//! Usage: `cargo run --example expand -- "R^90|11" "IR|12"`

use sfcurve::curve::{code_sequence_for_base, expand, integer_rep, CurveEncoding};

fn main() -> sfcurve::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec![
            "R^90|11".to_string(),
            "B^270|1221".to_string(),
            "IR|12".to_string(),
        ]
    } else {
        args
    };
    for s in inputs {
        let e = CurveEncoding::parse(&s)?;
        let seq = expand(&e)?;
        println!("{e}: level {}, {} points", e.level(), seq.len());
        if seq.len() <= 64 {
            println!("  bases: {}", seq.symbols());
        }
        let rep = integer_rep(&e.codes);
        println!("  codes as integer: {} (level {})", rep.delta, rep.level);
        for i in 1..=e.seed.len() {
            let c = code_sequence_for_base(&e, i)?;
            println!(
                "  seed base {i} ({}) expands with {}",
                e.seed.bases()[i - 1],
                c
            );
        }
    }
    Ok(())
}
