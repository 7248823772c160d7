use qreduce_cli::{emit, parse_args, run, CliError};

fn real_main() -> i32 {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Help(text)) => {
            println!("{text}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    match run(&config) {
        Ok(record) => {
            let rendered = emit(&record, config.format);
            match &config.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &rendered) {
                        eprintln!("error: cannot write {path}: {e}");
                        return 3;
                    }
                }
                None => print!("{rendered}"),
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn main() {
    std::process::exit(real_main());
}
