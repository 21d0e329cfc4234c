#![no_main]

use g2tab::branching::BranchTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = BranchTable::from_json(s) {
        assert_eq!(BranchTable::from_json(&t.to_json()), Ok(t.clone()));
        let _ = t.get(0, 0);
        let _ = t.dimension_sum();
    }
});
