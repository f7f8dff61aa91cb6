use qcorr_cli::suite;

fn main() {
    let results = suite::run_all(false);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.number).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", results.len(), suite::CRITERIA);
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
