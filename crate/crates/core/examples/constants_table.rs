//! Prints every lower- and upper-bound constant and checks the exact
//! identities between them.
//!
//!     cargo run --example constants_table

use l2disc::constants::{format_table, self_test};
use l2disc::gamma_maximize;

fn main() {
    self_test().expect("constant identities");
    let (y, gamma) = gamma_maximize();
    println!("maximiser y* = {y}, gamma = {gamma}\n");
    print!("{}", format_table(6));
}
