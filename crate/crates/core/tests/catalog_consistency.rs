//! Every catalog equation that passes the symbolic test also vanishes
//! numerically.

use polylog_core::catalog::{build, verify_fourlog_numeric, verify_numeric, NumericOptions, NAMES};
use polylog_core::numeric::PrecisionPolicy;
use polylog_core::proof::proof_report;
use polylog_core::symbol::{kernel_test, KernelTestConfig};

#[test]
fn symbolic_pass_implies_numeric_pass() {
    let policy = PrecisionPolicy::new(40).unwrap();
    let opts = NumericOptions::new(4, 5, 25);
    let mut symbolic_passes = 0;
    for name in NAMES {
        let eq = build(name).unwrap();
        let (symbolic, numeric) = match eq.binding {
            Some(b) => (proof_report(b.n).unwrap().all_pass(), verify_fourlog_numeric(b.n, &opts, &policy).unwrap()),
            None => {
                let k = kernel_test(&eq.sum, &KernelTestConfig::new(eq.weight, 4, 3, 5)).unwrap();
                (k.passed, verify_numeric(&eq, &opts, &policy).unwrap())
            }
        };
        if symbolic {
            symbolic_passes += 1;
            assert!(numeric.passed, "{name}: symbolic pass but numeric max {}", numeric.max_abs);
        }
        // Entries flagged as equations must pass both.
        if eq.is_equation && name != "gamma21-rhs" {
            assert!(symbolic && numeric.passed, "{name}");
        }
    }
    assert!(symbolic_passes >= 10);
}
