#![no_main]

use g2tab::relations::CertificateRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rec) = CertificateRecord::from_json(s) {
        let json = rec.to_json();
        assert_eq!(CertificateRecord::from_json(&json).expect("own output parses"), rec);
        let _ = rec.holds();
    }
});
