#![no_main]

use g2tab::tableau::Tableau;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = Tableau::from_csv_line(line) {
        assert_eq!(Tableau::from_csv_line(&t.to_csv_line()).as_ref(), Ok(&t));
        if t.shape().boxes() <= g2tab::tableau::MAX_INDEXABLE_BOXES {
            let i = t.canonical_index();
            assert_eq!(Tableau::from_canonical_index(t.shape(), i), Ok(t));
        }
    }
});
