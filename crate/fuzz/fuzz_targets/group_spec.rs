#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = f2g::parse_group_spec(text) {
        // Anything accepted must be a valid group table.
        let rows = g.rows();
        assert!(f2g::GroupTable::from_table(&rows, Some(g.labels().to_vec())).is_ok());
        assert!(g.order().is_power_of_two() && g.order() <= f2g::group::MAX_ORDER);
    }
});
