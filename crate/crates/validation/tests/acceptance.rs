use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut failed = 0;
    for criterion in lcsq_validation::criteria() {
        let start = Instant::now();
        let v = criterion();
        println!("{v} [{:.1}s]", start.elapsed().as_secs_f64());
        if !v.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} failing");
        ExitCode::FAILURE
    }
}
