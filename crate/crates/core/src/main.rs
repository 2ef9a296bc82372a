use std::io::Write;

use poskit::cli;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let as_json = cli::wants_json(&argv);
    let result = cli::run(&argv, &mut std::io::stdin().lock());

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if as_json {
        let _ = writeln!(out, "{}", result.to_json());
    } else {
        if !result.text.is_empty() {
            let _ = writeln!(out, "{}", result.text);
        }
        if result.status != poskit::Status::Ok {
            eprintln!("{}: {}", result.status.as_str(), result.message);
        } else if result.payload == Some(serde_json::Value::Bool(false))
            && !result.message.is_empty()
        {
            // explain negative answers
            eprintln!("{}", result.message);
        }
    }
    std::process::exit(result.exit_code());
}
