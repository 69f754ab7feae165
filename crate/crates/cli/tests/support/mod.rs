//! Replays the golden corpus in `tests/golden`.

use std::fs;
use std::path::{Path, PathBuf};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs one invocation and renders it in the `.out` layout. `@reps/` in the
/// arguments expands to the fixture directory and is folded back in stderr.
pub fn render(name: &str, args: &str) -> String {
    let reps = golden_dir().join("reps");
    let mut argv = vec!["vucert".to_string()];
    argv.extend(args.split_whitespace().map(|a| match a.strip_prefix("@reps/") {
        Some(file) => reps.join(file).to_string_lossy().into_owned(),
        None => a.to_string(),
    }));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = vucert_cli::run(argv, &mut out, &mut err);
    let err = String::from_utf8(err).unwrap().replace(&*reps.to_string_lossy(), "@reps");
    format!(
        "# {name}\nargs: {args}\nexit: {code}\n--- stdout\n{}--- stderr\n{err}",
        String::from_utf8(out).unwrap()
    )
}

pub struct Replay {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Compares every case in `cases.list` with its `.out` file, or rewrites the
/// files when `bless` is set.
pub fn replay(bless: bool) -> Replay {
    let dir = golden_dir();
    let list = fs::read_to_string(dir.join("cases.list")).unwrap();
    let mut failures = Vec::new();
    let mut cases = 0;
    for line in list.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (name, args) = line.split_once('|').expect("name | args");
        let (name, args) = (name.trim(), args.trim());
        let actual = render(name, args);
        let path = dir.join(format!("{name}.out"));
        cases += 1;
        if bless {
            fs::write(&path, &actual).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == actual => {}
            Ok(expected) => failures.push(format!("{name}: expected\n{expected}\ngot\n{actual}")),
            Err(_) => failures.push(format!("{name}: missing {}", path.display())),
        }
    }
    Replay { cases, failures }
}
