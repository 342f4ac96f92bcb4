//! Parse expressions, inspect them and print them back.
//!
//! cargo run --example parse_and_print -- "(x + y)^-1 * x'"

use ncrat::parse;

fn main() {
    let inputs: Vec<String> = match std::env::args().skip(1).collect::<Vec<_>>() {
        args if !args.is_empty() => args,
        _ => ["x1 + x2*x1", "(x + y)^-1", "y^-1 * (x^-1 + y^-1)^-1 * x^-1 - (x + y)^-1", "x2' * (3 - 2i*x1)", "x1 + * x2"]
            .map(String::from)
            .to_vec(),
    };
    for text in inputs {
        match parse(&text) {
            Ok(e) => {
                let inv = e.inventory();
                println!("{text}");
                println!("  printed:   {e}");
                println!("  level:     {}", e.level());
                println!("  variables: {} (adjoints: {:?})", inv.num_variables, inv.uses_adjoint);
                println!("  nodes:     {}", e.size());
                assert_eq!(parse(&e.pretty_print()).as_ref(), Ok(&e));
            }
            Err(err) => println!("{}", ncrat::cli::render_parse_error(&text, &err)),
        }
    }
}
