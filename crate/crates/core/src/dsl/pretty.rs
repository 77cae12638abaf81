use crate::conn::Statement;

/// Canonical text for one statement, without a trailing newline.
pub fn pretty_statement(s: &Statement) -> String {
    match s {
        Statement::Objects(names) => format!("obj {}", names.join(" ")),
        Statement::Map { name, dom, cod } => format!("map {name} : {dom} -> {cod}"),
        Statement::Define { name, ctor, args } => {
            let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            format!("{name} = {}({})", ctor.keyword(), args.join(", "))
        }
        Statement::Conn { map, n } => format!("conn({map}) >= {n}"),
        Statement::Trunc { map, n } => format!("trunc({map}) <= {n}"),
        Statement::NonIso { map } => format!("noniso({map})"),
    }
}

/// Canonical text for a program, one statement per line.
pub fn pretty(statements: &[Statement]) -> String {
    statements.iter().map(|s| pretty_statement(s) + "\n").collect()
}
