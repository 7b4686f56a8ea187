//! The selftest must notice a corrupted boundary map. Kept in its own test
//! binary because the fault switch is process-wide.

use srreg_core::harness::{all_passed, selftest, HarnessConfig};
use srreg_core::homology::fault_injection_enabled;

#[test]
fn selftest_detects_injected_fault_and_recovers() {
    let cfg = HarnessConfig::default();
    assert!(all_passed(&selftest(&cfg, false)));

    let faulty = selftest(&cfg, true);
    let failed: Vec<_> = faulty.iter().filter(|r| !r.passed()).collect();
    assert!(!failed.is_empty(), "fault went unnoticed");
    for r in &failed {
        let payload = r.payload.as_ref().expect("failures carry a payload");
        assert_eq!(payload["seed"], serde_json::json!(cfg.seed));
        assert!(payload.get("field").is_some());
    }

    assert!(!fault_injection_enabled(), "fault flag must be restored");
    assert!(all_passed(&selftest(&cfg, false)));
}
