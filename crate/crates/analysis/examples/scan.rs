//! Dev harness: sweep random linear AUSOs through the certificate and print
//! every failing assertion. Usage: scan [n..] [count]

use std::collections::BTreeMap;
use std::sync::Arc;

use dcp_analysis::assemble_certificate;
use dcp_core::orientation::random_generic_orientation;
use dcp_core::polytope::{build_dual_cyclic, realize_dual_cyclic};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let count: u64 = args
        .last()
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let ns: Vec<u16> = if args.len() > 1 {
        args[..args.len() - 1]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect()
    } else {
        vec![9, 13, 17, 25]
    };
    let mut fail_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0;
    let mut passed = 0;
    for &n in &ns {
        let graph = Arc::new(build_dual_cyclic(n).unwrap());
        let real = realize_dual_cyclic(&graph).unwrap();
        for seed in 0..count {
            total += 1;
            let (o, _) = random_generic_orientation(&graph, &real, seed).unwrap();
            match assemble_certificate(&o) {
                Ok(cert) => {
                    // bound soundness: exact expectation from every start is
                    // below the certificate bound
                    let all = dcp_core::pivot::random_edge_all_starts(&o).unwrap();
                    let max = all.iter().max().unwrap();
                    use num_traits::ToPrimitive;
                    let max_f = max.to_f64().unwrap();
                    if max_f > cert.bound as f64 {
                        *fail_histogram.entry("BOUND VIOLATION".into()).or_default() += 1;
                        eprintln!("n={n} seed={seed} max E {max_f} > bound {}", cert.bound);
                    }
                    if cert.pass() {
                        passed += 1;
                    } else {
                        for a in cert.checks.failures() {
                            let key = normalize(&a.name);
                            *fail_histogram.entry(key).or_default() += 1;
                            if fail_histogram.len() < 40 {
                                eprintln!(
                                    "n={n} seed={seed} case2={} FAILED {}: {}",
                                    cert.case2,
                                    a.name,
                                    a.witness.as_deref().unwrap_or("")
                                );
                            }
                        }
                    }
                }
                Err(e) => {
                    *fail_histogram.entry(format!("ERROR {e}")).or_default() += 1;
                    eprintln!("n={n} seed={seed} ERROR {e}");
                }
            }
        }
    }
    println!("passed {passed}/{total}");
    for (k, v) in &fail_histogram {
        println!("{v:6}  {k}");
    }
}

fn normalize(name: &str) -> String {
    // strip bracketed indices so the histogram groups by assertion family
    match name.find('[') {
        Some(i) => name[..i].to_string(),
        None => name.to_string(),
    }
}
