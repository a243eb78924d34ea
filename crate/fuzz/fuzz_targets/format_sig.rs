// Copyright 2026 The sg-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sg_lab::io::{format_sig, round_sig};

fuzz_target!(|bits: u64| {
    let x = f64::from_bits(bits);
    if !x.is_finite() {
        return;
    }
    let text = format_sig(x);
    let parsed: f64 = text.parse().expect("plain decimal");
    assert_eq!(parsed, round_sig(x));
    assert_eq!(format_sig(parsed), text);
    assert!(!text.contains('e'));
});
