#![no_main]

use g2tab::tableau::Tableau;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = Tableau::from_json(s) {
        let again = Tableau::from_json(&t.to_json()).expect("own output parses");
        assert_eq!(again, t);
        let _ = t.is_g2();
        let _ = t.weight();
    }
});
