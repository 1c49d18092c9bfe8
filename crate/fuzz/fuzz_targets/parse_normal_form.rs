#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| qbbw::fuzzing::parse_normal_form_text(data));
