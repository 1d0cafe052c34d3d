//! Prints the 18 base-state expansion rules derived from the grammar.

use sfcurve::grammar::{corner_tuple, rule_table};

fn main() {
    println!("{:<6} {:<28} {:<24} corners", "rule", "bases", "cells");
    for u in rule_table().units() {
        let bases: Vec<String> = u.bases.iter().map(|b| b.to_string()).collect();
        let cells: Vec<String> = u.cells.iter().map(|(x, y)| format!("({x},{y})")).collect();
        let c = corner_tuple(&u);
        println!(
            "{:<6} {:<28} {:<24} ({},{})",
            format!("{}{}", u.source, u.code),
            bases.join(" "),
            cells.join(" "),
            c.entry,
            c.exit
        );
    }
}
