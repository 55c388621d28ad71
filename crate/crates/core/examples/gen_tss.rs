//! Prints catalog surfaces as TSS JSON documents.
//!
//! ```text
//! cargo run -p tsspic --example gen_tss -- torus-parallel 4 > torus-2k-parallel.json
//! ```

use std::process::ExitCode;

use tsspic::catalog;
use tsspic::rational::parse_rational;

const USAGE: &str = "usage: gen_tss <sphere-equator | cyl1 | cyl2 | genus2-separating> [period]
       gen_tss <torus-parallel | cylinder-chain> <n> [period]";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(kind) = args.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    };
    let counted = matches!(kind.as_str(), "torus-parallel" | "cylinder-chain");
    let n = if counted {
        match args.get(1).and_then(|s| s.parse::<usize>().ok()) {
            Some(n) => n,
            None => {
                eprintln!("{USAGE}");
                return ExitCode::from(2);
            }
        }
    } else {
        0
    };
    let period_arg = args.get(if counted { 2 } else { 1 });
    let period = match period_arg.map(|s| parse_rational(s)) {
        Some(Ok(p)) => Some(p),
        Some(Err(e)) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        None => None,
    };
    let two_pi = || period.clone().unwrap_or_else(catalog::two_pi_approx);
    let surface = match kind.as_str() {
        "sphere-equator" => catalog::sphere_equator(two_pi()),
        "cyl1" => catalog::cylinder_one_curve(two_pi()),
        "cyl2" => {
            let p = period.clone().unwrap_or_else(catalog::pi_approx);
            catalog::cylinder_two_curves(p.clone(), p)
        }
        "genus2-separating" => catalog::genus2_separating(two_pi()),
        "torus-parallel" if n >= 2 && n % 2 == 0 => catalog::torus_parallel(n, two_pi()),
        "cylinder-chain" if n >= 1 => catalog::cylinder_chain(n, two_pi()),
        _ => {
            eprintln!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    let value: serde_json::Value = serde_json::from_str(&surface.to_json()).expect("valid json");
    println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
    ExitCode::SUCCESS
}
