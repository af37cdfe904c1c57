mod common;

use common::{cli_dir, dirac, fixture_text, fixtures, golden};

#[test]
fn shipped_fixtures_match_builders() {
    for (name, spec) in fixtures() {
        golden(&cli_dir().join("fixtures").join(name), &fixture_text(&spec));
    }
}

#[test]
fn shipped_fixtures_validate() {
    for (name, _) in fixtures() {
        let path = format!("fixtures/{name}");
        let mut args = vec!["validate", path.as_str()];
        let triple;
        if let Some(stem) = name.strip_suffix(".rob.json") {
            let base = stem.rsplit_once('-').unwrap().0;
            triple = format!("fixtures/{base}.dmt.json");
            args.extend(["--triple", triple.as_str()]);
        }
        let run = dirac(&args);
        let want = if name == "E4.dmt.json" { 1 } else { 0 };
        assert_eq!(run.code, want, "{name}:\n{}{}", run.stdout, run.stderr);
    }
}
