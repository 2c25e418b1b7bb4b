//! Acceptance criteria, one line per criterion.
//!
//! Criteria 1-9 run once on a single-threaded pool and once on a
//! four-threaded pool with a cleared memo; criterion 10 compares the two
//! serialized reports byte for byte.

use std::process::ExitCode;

use rgc_core::enumerate::clear_memo;
use rgc_core::verify::{check_ids, run_checks, CheckResult, Suite};

fn run_in_pool(threads: usize) -> Vec<CheckResult> {
    clear_memo();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| {
        run_checks(&check_ids(Suite::Acceptance), &mut |id, t| eprintln!("  [{threads} thread(s)] {id} {t:.2?}"))
            .expect("known check ids")
    })
}

fn main() -> ExitCode {
    let serial = run_in_pool(1);
    let parallel = run_in_pool(4);
    let mut all_passed = true;

    for c in &serial {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status} {} {}: {}", c.id, c.description, c.detail);
        all_passed &= c.passed;
    }

    let a = serde_json::to_string(&serial).expect("serializable");
    let b = serde_json::to_string(&parallel).expect("serializable");
    let same = a == b;
    let status = if same { "PASS" } else { "FAIL" };
    println!("{status} ACC-10 reports of criteria 1-9 are byte-identical on 1 and 4 threads ({} bytes)", a.len());
    all_passed &= same;

    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
