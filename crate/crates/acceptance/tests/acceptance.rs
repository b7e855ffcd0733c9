//! Runs every acceptance criterion and prints one line per criterion.

fn main() {
    let outcomes = tricat_acceptance::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
