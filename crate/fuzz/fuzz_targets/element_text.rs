#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;

use f2g::group::make_quaternion;
use f2g::GroupAlgebra;

fn algebra() -> &'static GroupAlgebra {
    static ALG: OnceLock<GroupAlgebra> = OnceLock::new();
    ALG.get_or_init(|| GroupAlgebra::new(Arc::new(make_quaternion(16).unwrap())))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alg = algebra();
    if let Ok(x) = alg.parse(text) {
        let rendered = alg.render(&x);
        assert_eq!(alg.parse(&rendered).unwrap(), x, "{rendered}");
    }
});
