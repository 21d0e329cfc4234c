#![no_main]

use g2tab::config::{OutputFormat, ScalarChoice};
use g2tab::relations::RelationFamily;
use g2tab::tableau::{Shape, TableauFilter};
use g2tab::weights::Entry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(shape) = s.parse::<Shape>() {
        assert!(shape.q() <= shape.p());
        assert_eq!(format!("{},{}", shape.p(), shape.q()).parse::<Shape>(), Ok(shape));
    }
    if let Ok(e) = s.parse::<Entry>() {
        assert_eq!(e.symbol().parse::<Entry>(), Ok(e));
    }
    if let Ok(ScalarChoice::Prime(p)) = s.parse::<ScalarChoice>() {
        assert!(p > 1 << 30);
    }
    let _ = s.parse::<RelationFamily>();
    let _ = s.parse::<TableauFilter>();
    let _ = s.parse::<OutputFormat>();
});
