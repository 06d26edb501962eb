//! The checked-in files under `fixtures/` must match what the serializers
//! produce for the built-in fixtures. Run with `UPDATE_FIXTURES=1` to
//! rewrite them.

use std::fs;
use std::path::PathBuf;

use rsc_core::fixtures::{named_choice_functions, named_structures};
use rsc_core::{parse_choice_function, serialize_choice_function, ChoiceFormat, RSStructure};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn check(name: &str, expected: &str) {
    let path = dir().join(name);
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        fs::create_dir_all(dir()).unwrap();
        fs::write(&path, expected).unwrap();
    }
    let found = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(found, expected, "{} is stale", path.display());
}

#[test]
fn choice_function_files_match() {
    for (name, cf) in named_choice_functions() {
        for (format, ext) in [(ChoiceFormat::Json, "json"), (ChoiceFormat::Csv, "csv")] {
            let text = serialize_choice_function(&cf, format).unwrap();
            check(&format!("{name}.{ext}"), &text);
            assert_eq!(parse_choice_function(text.as_bytes(), format).unwrap(), cf);
        }
    }
}

#[test]
fn structure_files_match() {
    for (name, s) in named_structures() {
        let text = s.to_json().unwrap();
        check(&format!("{name}.structure.json"), &text);
        assert_eq!(RSStructure::from_json(text.as_bytes()).unwrap().evaluate(), s.evaluate());
    }
}
