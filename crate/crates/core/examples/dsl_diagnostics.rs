//! Every syntax and name error in a file is reported with its location.

use bmlab::dsl::{parse, parse_program, pretty};

const BROKEN: &str = "\
obj A B
map f : A B
conn(f) >= -3
P = frob(f, f)
map g : A -> Missing
";

fn main() {
    match parse("broken.bm", BROKEN) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(errors) => {
            for e in errors {
                println!("{e}");
            }
        }
    }

    // once the syntax is fixed, name errors are reported
    let names = "obj A\nmap f : A -> B\nconn(h) >= 1\n";
    for e in parse("names.bm", names).unwrap_err() {
        println!("{e}");
    }

    // the canonical text form parses back to the same statements
    let ok = "obj A B\nmap f:A->B  # comment\nP=pushout(f,f)\nconn(f)>=1\n";
    let program = parse_program("ok.bm", ok).expect("valid program");
    print!("{}", pretty(&program.statements));
}
