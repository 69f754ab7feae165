use std::fs;

mod support;

use support::golden_dir;

/// Every invocation in `cases.list` must reproduce its `.out` file byte for
/// byte. Set `VUCERT_BLESS=1` to rewrite the expected files.
#[test]
fn golden_corpus() {
    let run = support::replay(std::env::var_os("VUCERT_BLESS").is_some());
    let (count, failures) = (run.cases, run.failures);
    assert!(count >= 40, "corpus shrank to {count} cases");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = golden_dir();
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "out") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let code: i32 = text.lines().find_map(|l| l.strip_prefix("exit: ")).unwrap().parse().unwrap();
        let (stdout, stderr) = text.split_once("--- stdout\n").unwrap().1.split_once("--- stderr\n").unwrap();
        if name.starts_with("error_") {
            assert_eq!(code, 2, "{name}");
            assert!(stdout.is_empty(), "{name}");
            assert_eq!(stderr.lines().count(), 1, "{name}: one-line diagnostic");
        } else {
            assert!(code == 0 || code == 1, "{name}");
            assert!(stderr.is_empty(), "{name}");
        }
        if name.contains("json") {
            let docs: Vec<&str> = stdout.lines().collect();
            assert_eq!(docs.len(), 1, "{name}: exactly one JSON document");
            serde_json::from_str::<serde_json::Value>(docs[0]).unwrap();
        }
    }
}
