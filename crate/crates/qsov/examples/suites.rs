use qsov::verify::{run_suite, Suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig::default();
    for s in Suite::EACH {
        let r = run_suite(s, &cfg).unwrap();
        println!("{s}: {} cases, {} failed, {} ms", r.cases.len(), r.failures().count(), r.elapsed_ms);
        for c in r.failures().take(8) {
            println!("  {} {:?} {:?}", c.id, c.residual, c.witness);
        }
    }
}
